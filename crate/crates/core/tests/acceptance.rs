//! Acceptance criteria 1-10. Runs without the libtest harness so that one
//! PASS/FAIL line per criterion is always printed; exits nonzero on any FAIL.
//!
//! Every comparison is an exact rational or integer equality.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lattice_tqft::algebra::{group_algebra, matrix_algebra, swap_algebra, tensor_product, BasedAlgebra, StarKind};
use lattice_tqft::grouptheory::{
    catalog, conjugacy_classes, hom_count_nonorientable, hom_count_orientable, irrep_data, labeling_count,
    FiniteGroup,
};
use lattice_tqft::surface::{
    nonorientable_surface, orientable_genus_surface, Orientability, OrientationAssignment, Triangulation,
};
use lattice_tqft::tqft::{invariant_direct, mednykh_lhs, mednykh_rhs};
use lattice_tqft::verify::{pachner_fuzz, FuzzOutcome};
use lattice_tqft::{Limits, Rational};
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `base^exp` by repeated multiplication, kept apart from the library's power helper.
fn pow(base: i64, exp: i64) -> Rational {
    let b = q(base, 1);
    let mut acc = q(1, 1);
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    if exp < 0 {
        q(1, 1) / acc
    } else {
        acc
    }
}

/// The six fan surfaces with their names and the Euler characteristic and
/// orientability expected from the construction (2 - 2g, 2 - k).
fn fans() -> Vec<(&'static str, Triangulation, i64, bool)> {
    vec![
        ("sphere", orientable_genus_surface(0), 2, true),
        ("torus", orientable_genus_surface(1), 0, true),
        ("genus-2", orientable_genus_surface(2), -2, true),
        ("RP2", nonorientable_surface(1).unwrap(), 1, false),
        ("Klein", nonorientable_surface(2).unwrap(), 0, false),
        ("crosscap-3", nonorientable_surface(3).unwrap(), -1, false),
    ]
}

fn group(name: &str) -> FiniteGroup {
    catalog(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for n in 1..=3i64 {
        let alg = matrix_algebra(n as usize, StarKind::Transpose).map_err(|e| e.to_string())?;
        for (name, t, chi, _) in fans() {
            let start = Instant::now();
            let value = invariant_direct(&alg, &t).map_err(|e| format!("M{n} on {name}: {e}"))?;
            let took = start.elapsed();
            slowest = slowest.max(took);
            ensure(value == pow(n, chi), || format!("M{n} on {name}: got {value}, want {}", pow(n, chi)))?;
            ensure(took < Duration::from_secs(1), || format!("M{n} on {name}: took {took:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} equalities I(M_n) = n^chi, slowest {slowest:.2?}"))
}

fn criterion_2() -> Outcome {
    let alg = swap_algebra();
    for (name, t, _, orientable) in fans() {
        let value = invariant_direct(&alg, &t).map_err(|e| format!("{name}: {e}"))?;
        let want = if orientable { q(2, 1) } else { q(0, 1) };
        ensure(value == want, || format!("{name}: got {value}, want {want}"))?;
    }
    Ok("swap algebra gives 2 on orientable fans, 0 on non-orientable fans".into())
}

fn criterion_3() -> Outcome {
    let alg = matrix_algebra(2, StarKind::Anti).map_err(|e| e.to_string())?;
    // Values stated for sphere, torus, genus-2, RP2, Klein, crosscap-3.
    let stated = [q(4, 1), q(1, 1), q(1, 4), q(-2, 1), q(1, 1), q(-1, 2)];
    for ((name, t, chi, _), want) in fans().into_iter().zip(stated) {
        let value = invariant_direct(&alg, &t).map_err(|e| format!("{name}: {e}"))?;
        ensure(value == want, || format!("{name}: got {value}, want {want}"))?;
        ensure(want == pow(-2, chi), || format!("{name}: stated value disagrees with (-2)^chi"))?;
    }
    Ok("M2 with antisymmetric star gives 4, 1, 1/4, -2, 1, -1/2".into())
}

const MEDNYKH_GROUPS: [&str; 9] = ["C2", "C3", "C4", "C6", "prod(C2,C2)", "S3", "D4", "Q8", "A4"];

fn mednykh_case(name: &str, t: &Triangulation) -> Result<(Rational, Rational), String> {
    let g = group(name);
    let irreps = irrep_data(&g).map_err(|e| format!("{name}: {e}"))?;
    let lhs = mednykh_lhs(&irreps, t.euler_characteristic(), t.is_orientable());
    let rhs = mednykh_rhs(&g, t, &Limits::default()).map_err(|e| format!("{name}: {e}"))?;
    Ok((lhs, rhs))
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for name in MEDNYKH_GROUPS {
        for genus in 0..=2 {
            let (lhs, rhs) = mednykh_case(name, &orientable_genus_surface(genus))?;
            ensure(lhs == rhs, || format!("{name} genus {genus}: {lhs} != {rhs}"))?;
            count += 1;
        }
    }
    let spots = [("S3", 1, q(3, 1)), ("C2", 2, q(2, 1))];
    for (name, genus, want) in spots {
        let (lhs, rhs) = mednykh_case(name, &orientable_genus_surface(genus))?;
        ensure(lhs == want && rhs == want, || format!("{name} genus {genus}: {lhs}, {rhs}, want {want}"))?;
    }
    Ok(format!("{count} orientable identities; (S3, torus) = 3, (C2, genus 2) = 2"))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for name in MEDNYKH_GROUPS {
        for k in 1..=3 {
            let (lhs, rhs) = mednykh_case(name, &nonorientable_surface(k).unwrap())?;
            ensure(lhs == rhs, || format!("{name} crosscaps {k}: {lhs} != {rhs}"))?;
            count += 1;
        }
    }
    let spots = [("S3", 1, q(4, 1)), ("Q8", 1, q(2, 1)), ("C4", 2, q(2, 1))];
    for (name, k, want) in spots {
        let (lhs, rhs) = mednykh_case(name, &nonorientable_surface(k).unwrap())?;
        ensure(lhs == want && rhs == want, || format!("{name} crosscaps {k}: {lhs}, {rhs}, want {want}"))?;
    }
    // The spot groups exercise the indicator branches they are meant to.
    let q8 = irrep_data(&group("Q8")).map_err(|e| e.to_string())?;
    ensure(q8.entries().iter().any(|&(_, fs)| fs == -1), || "Q8 has no quaternionic irrep".into())?;
    let c4 = irrep_data(&group("C4")).map_err(|e| e.to_string())?;
    ensure(c4.entries().iter().any(|&(_, fs)| fs == 0), || "C4 has no complex irrep".into())?;
    Ok(format!("{count} non-orientable identities; (S3, RP2) = 4, (Q8, RP2) = 2, (C4, Klein) = 2"))
}

fn criterion_6() -> Outcome {
    let surfaces = [
        ("RP2", nonorientable_surface(1).unwrap()),
        ("torus", orientable_genus_surface(1)),
        ("Klein", nonorientable_surface(2).unwrap()),
    ];
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for name in ["C2", "C3", "C4", "S3", "Q8", "D4"] {
        let alg = group_algebra(&group(name));
        for (sname, t) in &surfaces {
            let start = Instant::now();
            let direct = invariant_direct(&alg, t).map_err(|e| format!("{name} on {sname}: {e}"))?;
            let took = start.elapsed();
            slowest = slowest.max(took);
            let (lhs, rhs) = mednykh_case(name, t)?;
            ensure(direct == lhs && lhs == rhs, || {
                format!("{name} on {sname}: direct {direct}, lhs {lhs}, rhs {rhs}")
            })?;
            ensure(took < Duration::from_secs(30), || format!("{name} on {sname}: took {took:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} three-way agreements, slowest contraction {slowest:.2?}"))
}

fn criterion_7() -> Outcome {
    let surfaces = [
        ("RP2", nonorientable_surface(1).unwrap(), false, 1),
        ("torus", orientable_genus_surface(1), true, 1),
        ("Klein", nonorientable_surface(2).unwrap(), false, 2),
    ];
    let lim = Limits::default();
    for name in ["C2", "C3", "S3"] {
        let g = group(name);
        for (sname, t, orientable, n) in &surfaces {
            let assignment = match t.orientability() {
                Orientability::Orientable(a) => a,
                Orientability::Nonorientable => OrientationAssignment::all_positive(t.face_count()),
            };
            let labelings = labeling_count(&g, t, &assignment, &lim).map_err(|e| e.to_string())?;
            let homs = if *orientable {
                hom_count_orientable(&g, *n, &lim)
            } else {
                hom_count_nonorientable(&g, *n, &lim)
            }
            .map_err(|e| e.to_string())?;
            let want = BigUint::from(g.order()).pow(t.vertex_count() as u32 - 1) * homs;
            ensure(BigUint::from(labelings) == want, || {
                format!("{name} on {sname}: {labelings} labelings, want {want}")
            })?;
        }
    }
    let rp2 = nonorientable_surface(1).unwrap();
    let s3_rp2 = labeling_count(&group("S3"), &rp2, &OrientationAssignment::all_positive(2), &lim)
        .map_err(|e| e.to_string())?;
    ensure(s3_rp2 == 24, || format!("(S3, RP2) gave {s3_rp2}, want 24"))?;
    Ok("labelings = #G^(V-1) * #Hom for 9 cases; (S3, RP2) = 24".into())
}

fn criterion_8() -> Outcome {
    let algebras: Vec<(&str, BasedAlgebra)> = vec![
        ("matrix:1", matrix_algebra(1, StarKind::Transpose).unwrap()),
        ("matrix:2", matrix_algebra(2, StarKind::Transpose).unwrap()),
        ("matrix:3", matrix_algebra(3, StarKind::Transpose).unwrap()),
        ("swap", swap_algebra()),
        ("matrix:2:anti", matrix_algebra(2, StarKind::Anti).unwrap()),
        ("group:S3", group_algebra(&group("S3"))),
    ];
    let (walks, steps) = (5, 30);
    let mut suites = 0;
    for (spec, alg) in &algebras {
        for (name, t, _, _) in fans() {
            let report = pachner_fuzz(alg, spec, &t, name, walks, steps, 1);
            if let FuzzOutcome::Fail {
                walk,
                step,
                reason,
                counterexample,
                ..
            } = &report.outcome
            {
                return Err(format!("{spec} on {name}: walk {walk} step {step}: {reason}\n{counterexample}"));
            }
            suites += 1;
        }
    }
    Ok(format!("{suites} fuzz suites of {walks} walks x {steps} steps, every visited triangulation checked"))
}

/// Catalog groups of order at most 24.
fn small_catalog() -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    names.extend((1..=24).map(|n| format!("C{n}")));
    names.extend((1..=12).map(|n| format!("D{n}")));
    names.extend((1..=4).map(|n| format!("S{n}")));
    names.extend((1..=4).map(|n| format!("A{n}")));
    names.push("Q8".into());
    for p in [
        "prod(C2,C2)",
        "prod(C2,C4)",
        "prod(C2,C6)",
        "prod(C3,C3)",
        "prod(C2,prod(C2,C2))",
        "prod(C2,S3)",
        "prod(C3,S3)",
        "prod(C2,Q8)",
        "prod(C2,D4)",
        "prod(C2,A4)",
        "prod(C4,S3)",
        "prod(C3,Q8)",
        "prod(C2,prod(C2,C6))",
    ] {
        names.push(p.into());
    }
    names
}

fn criterion_9() -> Outcome {
    let names = small_catalog();
    for name in &names {
        let g = group(name);
        let n = g.order();
        let irreps = irrep_data(&g).map_err(|e| format!("{name}: {e}"))?;
        let entries = irreps.entries();
        let sum_sq: usize = entries.iter().map(|(d, _)| d * d).sum();
        ensure(sum_sq == n, || format!("{name}: sum of d^2 is {sum_sq}, order {n}"))?;
        let classes = conjugacy_classes(&g).len();
        ensure(entries.len() == classes, || format!("{name}: {} irreps, {classes} classes", entries.len()))?;
        // Independent oracles: commuting pairs = classes * |G|, and
        // sum of nu * d = number of square roots of the identity.
        let commuting = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| g.mul(a, b) == g.mul(b, a)).count();
        ensure(commuting == classes * n, || format!("{name}: class count disagrees with commuting pairs"))?;
        let roots = (0..n).filter(|&x| g.mul(x, x) == g.identity()).count() as i64;
        let twisted: i64 = entries.iter().map(|&(d, fs)| fs as i64 * d as i64).sum();
        ensure(twisted == roots, || format!("{name}: sum nu*d = {twisted}, square roots of e = {roots}"))?;
    }
    let q8 = irrep_data(&group("Q8")).map_err(|e| e.to_string())?;
    ensure(q8.entries().iter().filter(|&&e| e == (2, -1)).count() == 1, || format!("Q8 entries {:?}", q8.entries()))?;
    ensure(q8.entries().iter().filter(|&&(_, fs)| fs == -1).count() == 1, || "Q8 has extra quaternionic entries".into())?;
    let d4 = irrep_data(&group("D4")).map_err(|e| e.to_string())?;
    ensure(d4.entries() == [(2, 1), (1, 1), (1, 1), (1, 1), (1, 1)], || format!("D4 entries {:?}", d4.entries()))?;
    Ok(format!("{} groups of order <= 24; Q8 has one (2, -1), D4 is (2, +1) and four (1, +1)", names.len()))
}

fn criterion_10() -> Outcome {
    let mut algebras: Vec<(String, BasedAlgebra)> = vec![
        ("matrix:1".into(), matrix_algebra(1, StarKind::Transpose).unwrap()),
        ("matrix:2".into(), matrix_algebra(2, StarKind::Transpose).unwrap()),
        ("matrix:3".into(), matrix_algebra(3, StarKind::Transpose).unwrap()),
        ("swap".into(), swap_algebra()),
        ("matrix:2:anti".into(), matrix_algebra(2, StarKind::Anti).unwrap()),
    ];
    for name in ["C2", "C3", "C4", "C6", "prod(C2,C2)", "S3", "D4", "Q8", "A4"] {
        algebras.push((format!("group:{name}"), group_algebra(&group(name))));
    }
    let m4_anti = tensor_product(
        &matrix_algebra(2, StarKind::Transpose).unwrap(),
        &matrix_algebra(2, StarKind::Anti).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    algebras.push(("tensor(matrix:2:transpose,matrix:2:anti)".into(), m4_anti.clone()));
    for (spec, alg) in &algebras {
        alg.check_axioms().map_err(|e| format!("{spec}: {e}"))?;
        alg.check_star_axioms().map_err(|e| format!("{spec}: {e}"))?;
    }
    // M4 with antisymmetric star: dimension 16 and invariant (n/2)^chi (-2)^chi = (-4)^chi.
    ensure(m4_anti.dim() == 16, || format!("M4^anti has dimension {}", m4_anti.dim()))?;
    for (name, t, chi, _) in fans().into_iter().take(5) {
        let value = invariant_direct(&m4_anti, &t).map_err(|e| e.to_string())?;
        ensure(value == pow(-4, chi), || format!("M4^anti on {name}: {value}, want {}", pow(-4, chi)))?;
    }
    Ok(format!("associativity, unit and star axioms hold for {} algebras; M4^anti realized", algebras.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("matrix algebras give n^chi", criterion_1),
        ("swap algebra counts orientations", criterion_2),
        ("antisymmetric M2 gives (-2)^chi", criterion_3),
        ("character sum = Hom count, orientable", criterion_4),
        ("character sum = Hom count, non-orientable", criterion_5),
        ("contraction agrees with both sides", criterion_6),
        ("consistent labelings biject with Homs", criterion_7),
        ("invariance under random Pachner walks", criterion_8),
        ("character data of small groups", criterion_9),
        ("algebra and star axioms", criterion_10),
    ];
    let mut failed = 0;
    let total = Instant::now();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {title}: {detail} [{took:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {title}: {why} [{took:.1?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1?}",
        criteria.len() - failed,
        total.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
