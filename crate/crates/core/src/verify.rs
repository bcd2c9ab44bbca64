//! Cross-checks of the state sum against homomorphism counts and character
//! data, and random Pachner walks testing triangulation independence.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{group_algebra, BasedAlgebra};
use crate::grouptheory::{irrep_data, FiniteGroup};
use crate::surface::{PachnerWalk, Triangulation};
use crate::tqft::{invariant_direct, mednykh_lhs, mednykh_rhs};
use crate::{Limits, Rational};

/// `n/d` with the denominator always written, so values re-parse exactly.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational_string(r)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped(_) => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub group_spec: String,
    pub surface_spec: String,
    pub chi: i64,
    pub orientable: bool,
    #[serde(serialize_with = "ser_opt_rational")]
    pub lhs: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub rhs: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub direct: Option<Rational>,
    pub status: Status,
}

/// Whether contraction joins the comparison when not asked for explicitly:
/// groups of order at most 8 on surfaces with `|χ| ≤ 1`.
pub fn direct_by_default(g: &FiniteGroup, t: &Triangulation) -> bool {
    g.order() <= 8 && t.euler_characteristic().abs() <= 1
}

/// Compares the character side, the homomorphism side and, optionally, the
/// contracted state sum of the group algebra. Cap violations and
/// unrecognized surfaces produce `Skipped`.
pub fn verify_mednykh(
    g: &FiniteGroup,
    group_spec: &str,
    t: &Triangulation,
    surface_spec: &str,
    with_direct: bool,
    limits: &Limits,
) -> VerificationReport {
    let chi = t.euler_characteristic();
    let orientable = t.is_orientable();
    let mut skipped: Vec<String> = Vec::new();

    let lhs = irrep_data(g)
        .map(|irreps| mednykh_lhs(&irreps, chi, orientable))
        .map_err(|e| skipped.push(format!("character side: {e}")))
        .ok();
    let rhs = mednykh_rhs(g, t, limits)
        .map_err(|e| skipped.push(format!("homomorphism side: {e}")))
        .ok();
    let direct = if !with_direct {
        None
    } else if g.order() > limits.max_dim {
        skipped.push(format!("contraction: dimension {} exceeds the cap of {}", g.order(), limits.max_dim));
        None
    } else {
        invariant_direct(&group_algebra(g), t)
            .map_err(|e| skipped.push(format!("contraction: {e}")))
            .ok()
    };

    let computed: Vec<&Rational> = [&lhs, &rhs, &direct].into_iter().flatten().collect();
    let status = if !skipped.is_empty() {
        Status::Skipped(skipped.join("; "))
    } else if computed.windows(2).all(|w| w[0] == w[1]) {
        Status::Pass
    } else {
        Status::Fail
    };
    VerificationReport {
        group_spec: group_spec.to_string(),
        surface_spec: surface_spec.to_string(),
        chi,
        orientable,
        lhs,
        rhs,
        direct,
        status,
    }
}

/// One grid cell: a parsed group and surface with their spec strings.
pub struct GridEntry<'a> {
    pub group: &'a FiniteGroup,
    pub group_spec: &'a str,
    pub surface: &'a Triangulation,
    pub surface_spec: &'a str,
    /// `None` follows [`direct_by_default`].
    pub with_direct: Option<bool>,
}

/// Verifies every entry, possibly in parallel; reports keep input order.
pub fn verify_grid(entries: &[GridEntry<'_>], limits: &Limits) -> Vec<VerificationReport> {
    entries
        .par_iter()
        .map(|e| {
            let direct = e.with_direct.unwrap_or_else(|| direct_by_default(e.group, e.surface));
            verify_mednykh(e.group, e.group_spec, e.surface, e.surface_spec, direct, limits)
        })
        .collect()
}

/// Aligned-column text table of reports.
pub fn report_table(reports: &[VerificationReport]) -> String {
    let show = |r: &Option<Rational>| r.as_ref().map_or_else(|| "-".to_string(), |v| v.to_string());
    let mut rows = vec![[
        "group".to_string(),
        "surface".to_string(),
        "chi".to_string(),
        "orientable".to_string(),
        "lhs".to_string(),
        "rhs".to_string(),
        "direct".to_string(),
        "status".to_string(),
    ]];
    for r in reports {
        let status = match &r.status {
            Status::Skipped(why) => format!("SKIP ({why})"),
            s => s.label().to_string(),
        };
        rows.push([
            r.group_spec.clone(),
            r.surface_spec.clone(),
            r.chi.to_string(),
            if r.orientable { "yes" } else { "no" }.to_string(),
            show(&r.lhs),
            show(&r.rhs),
            show(&r.direct),
            status,
        ]);
    }
    let widths: Vec<usize> = (0..8).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (cell, w))| if c == 7 { cell.clone() } else { format!("{cell:<w$}") })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status")]
pub enum FuzzOutcome {
    Pass {
        #[serde(serialize_with = "ser_rational")]
        value: Rational,
    },
    Fail {
        walk: usize,
        step: usize,
        #[serde(serialize_with = "ser_opt_rational")]
        expected: Option<Rational>,
        #[serde(serialize_with = "ser_opt_rational")]
        found: Option<Rational>,
        reason: String,
        /// `.tri` text of the triangulation that disagrees.
        counterexample: String,
    },
}

impl FuzzOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, FuzzOutcome::Pass { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub algebra_spec: String,
    pub surface_spec: String,
    pub walks: usize,
    pub steps: usize,
    pub seed: u64,
    #[serde(flatten)]
    pub outcome: FuzzOutcome,
}

/// Evaluates the state sum at every triangulation along `walks` random
/// Pachner walks of `steps` moves; walk `i` uses seed `seed + i`. Passes iff
/// every value equals the value on the starting triangulation. An
/// evaluation error on the start is reported as a failure at walk 0, step 0.
pub fn pachner_fuzz(
    algebra: &BasedAlgebra,
    algebra_spec: &str,
    start: &Triangulation,
    surface_spec: &str,
    walks: usize,
    steps: usize,
    seed: u64,
) -> FuzzReport {
    let report = |outcome| FuzzReport {
        algebra_spec: algebra_spec.to_string(),
        surface_spec: surface_spec.to_string(),
        walks,
        steps,
        seed,
        outcome,
    };
    let expected = match invariant_direct(algebra, start) {
        Ok(v) => v,
        Err(e) => {
            return report(FuzzOutcome::Fail {
                walk: 0,
                step: 0,
                expected: None,
                found: None,
                reason: e.to_string(),
                counterexample: start.serialize(),
            })
        }
    };
    let failures: Vec<Option<FuzzOutcome>> = (0..walks)
        .into_par_iter()
        .map(|w| {
            let walk = PachnerWalk::new(start, seed.wrapping_add(w as u64)).take(steps);
            for (i, t) in walk.enumerate() {
                let fail = |found, reason: String| FuzzOutcome::Fail {
                    walk: w,
                    step: i + 1,
                    expected: Some(expected.clone()),
                    found,
                    reason,
                    counterexample: t.serialize(),
                };
                match invariant_direct(algebra, &t) {
                    Ok(v) if v == expected => {}
                    Ok(v) => return Some(fail(Some(v), "value changed along the walk".into())),
                    Err(e) => return Some(fail(None, e.to_string())),
                }
            }
            None
        })
        .collect();
    match failures.into_iter().flatten().next() {
        Some(f) => report(f),
        None => report(FuzzOutcome::Pass { value: expected }),
    }
}
