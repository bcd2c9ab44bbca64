//! Command-line driver.
//!
//! Exit codes: 0 on success or a passing check, 1 when a verification or
//! fuzz run fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use crate::algebra::{
    direct_sum, group_algebra, matrix_algebra, swap_algebra, tensor_product, AlgebraError, BasedAlgebra, Block,
    StarKind, StructuredAlgebra,
};
use crate::grouptheory::{
    conjugacy_classes, hom_count_nonorientable, hom_count_orientable, irrep_data, parse_group_spec, split_top_level,
    GroupError,
};
use crate::surface::{nonorientable_surface, orientable_genus_surface, tetrahedron, SurfaceError, Triangulation};
use crate::tqft::{classify_surface, invariant_direct, invariant_structured, SurfaceType, TqftError};
use crate::verify::{pachner_fuzz, rational_string, report_table, verify_grid, FuzzOutcome, GridEntry, Status};
use crate::Limits;

#[derive(Debug, Parser)]
#[command(name = "lattice-tqft", version, about = "Exact lattice TQFT invariants of triangulated surfaces")]
pub struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group order to construct.
    #[arg(long, global = true, default_value_t = Limits::default().max_order)]
    max_order: usize,
    /// Budget for brute-force enumeration steps.
    #[arg(long, global = true, default_value_t = Limits::default().max_work)]
    max_work: u64,
    /// Largest algebra dimension to contract.
    #[arg(long, global = true, default_value_t = Limits::default().max_dim)]
    max_dim: usize,
    /// Worker threads for grids and fuzzing (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

/// One surface: `--surface SPEC`, `--genus G` or `--crosscaps K`.
#[derive(Debug, Args)]
struct SurfaceArg {
    /// sphere, torus, rp2, klein, tetrahedron, genus:G, crosscaps:K or a .tri path.
    #[arg(long, conflicts_with_all = ["genus", "crosscaps"])]
    surface: Option<String>,
    /// Orientable fan surface of this genus.
    #[arg(long, conflicts_with = "crosscaps")]
    genus: Option<usize>,
    /// Non-orientable fan surface with this many crosscaps.
    #[arg(long)]
    crosscaps: Option<usize>,
}

impl SurfaceArg {
    fn spec(&self) -> Result<String, CliError> {
        match (&self.surface, self.genus, self.crosscaps) {
            (Some(s), _, _) => Ok(s.clone()),
            (None, Some(g), _) => Ok(format!("genus:{g}")),
            (None, None, Some(k)) => Ok(format!("crosscaps:{k}")),
            _ => Err(CliError::Usage("one of --surface, --genus or --crosscaps is required".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a surface triangulation, optionally retriangulated by Pachner moves.
    Surface {
        #[command(flatten)]
        surface: SurfaceArg,
        /// Apply this many random Pachner moves.
        #[arg(long, default_value_t = 0)]
        walk: usize,
        /// Seed for the walk.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the .tri file here instead of printing it.
        #[arg(long)]
        out: Option<String>,
    },
    /// Evaluate the invariant of an algebra on a surface.
    Invariant {
        /// group:G, matrix:N[:transpose|:anti|:none], swap, sum(A,B), tensor(A,B).
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        surface: SurfaceArg,
        /// Use the closed form for the algebra's star-block decomposition.
        #[arg(long)]
        structured: bool,
    },
    /// Compare character data, homomorphism counts and contraction.
    Verify {
        /// Group spec; repeat with --grid.
        #[arg(long = "group", required = true)]
        groups: Vec<String>,
        /// Surface spec; repeat with --grid.
        #[arg(long = "surface", conflicts_with_all = ["genus", "crosscaps"])]
        surfaces: Vec<String>,
        /// Orientable fan surface of this genus.
        #[arg(long, conflicts_with = "crosscaps")]
        genus: Option<usize>,
        /// Non-orientable fan surface with this many crosscaps.
        #[arg(long)]
        crosscaps: Option<usize>,
        /// Verify every group on every surface.
        #[arg(long)]
        grid: bool,
        /// Always include contraction.
        #[arg(long, conflicts_with = "no_direct")]
        direct: bool,
        /// Never include contraction.
        #[arg(long)]
        no_direct: bool,
    },
    /// Check invariance along random Pachner walks.
    Fuzz {
        /// Algebra spec, as for `invariant`.
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        surface: SurfaceArg,
        /// Independent walks; walk i uses seed + i.
        #[arg(long, default_value_t = 5)]
        walks: usize,
        /// Pachner moves per walk.
        #[arg(long, default_value_t = 30)]
        steps: usize,
        /// Seed of the first walk.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Irreducible dimensions and Frobenius–Schur indicators of a group.
    Chartable {
        /// Cn, Dn (order 2n), Sn, An, Q8, prod(G,H), perm:DEG:GEN;GEN;... or table:PATH.
        #[arg(long)]
        group: String,
    },
    /// Count homomorphisms from a surface group to a group.
    Homcount {
        /// Group spec, as for `chartable`.
        #[arg(long)]
        group: String,
        #[command(flatten)]
        surface: SurfaceArg,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tqft(#[from] TqftError),
    #[error("cannot write `{path}`: {message}")]
    Io { path: String, message: String },
}

/// Surfaces by name, or a `.tri` file.
pub fn parse_surface_spec(spec: &str) -> Result<Triangulation, CliError> {
    let spec = spec.trim();
    let number = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| CliError::Input(format!("bad surface spec `{spec}`")))
    };
    match spec {
        "sphere" => Ok(orientable_genus_surface(0)),
        "torus" => Ok(orientable_genus_surface(1)),
        "rp2" => Ok(nonorientable_surface(1)?),
        "klein" => Ok(nonorientable_surface(2)?),
        "tetrahedron" => Ok(tetrahedron()),
        _ => {
            if let Some(g) = spec.strip_prefix("genus:") {
                Ok(orientable_genus_surface(number(g)?))
            } else if let Some(k) = spec.strip_prefix("crosscaps:") {
                Ok(nonorientable_surface(number(k)?)?)
            } else {
                let text = std::fs::read_to_string(spec)
                    .map_err(|e| CliError::Input(format!("cannot read surface `{spec}`: {e}")))?;
                Ok(Triangulation::parse(&text)?)
            }
        }
    }
}

/// Algebras: `group:G`, `matrix:N[:transpose|:anti|:none]` (transpose by
/// default), `swap`, `sum(A,B)`, `tensor(A,B)`.
pub fn parse_algebra_spec(spec: &str, limits: &Limits) -> Result<BasedAlgebra, CliError> {
    let spec = spec.trim();
    let algebra = if let Some(inner) = spec.strip_prefix("sum(").and_then(|s| s.strip_suffix(')')) {
        let (a, b) = split_pair(spec, inner)?;
        direct_sum(&parse_algebra_spec(a, limits)?, &parse_algebra_spec(b, limits)?)?
    } else if let Some(inner) = spec.strip_prefix("tensor(").and_then(|s| s.strip_suffix(')')) {
        let (a, b) = split_pair(spec, inner)?;
        tensor_product(&parse_algebra_spec(a, limits)?, &parse_algebra_spec(b, limits)?)?
    } else if let Some(g) = spec.strip_prefix("group:") {
        group_algebra(&parse_group_spec(g, limits)?)
    } else if let Some(rest) = spec.strip_prefix("matrix:") {
        let (n, star) = parse_matrix(spec, rest)?;
        if n * n > limits.max_dim {
            return Err(CliError::Input(format!("dimension {} exceeds the cap of {}", n * n, limits.max_dim)));
        }
        matrix_algebra(n, star)?
    } else if spec == "swap" {
        swap_algebra()
    } else {
        return Err(CliError::Input(format!("unknown algebra spec `{spec}`")));
    };
    if algebra.dim() > limits.max_dim {
        return Err(CliError::Input(format!(
            "dimension {} exceeds the cap of {}",
            algebra.dim(),
            limits.max_dim
        )));
    }
    Ok(algebra)
}

fn split_pair<'a>(spec: &str, inner: &'a str) -> Result<(&'a str, &'a str), CliError> {
    split_top_level(inner).ok_or_else(|| CliError::Input(format!("expected two arguments in `{spec}`")))
}

fn parse_matrix(spec: &str, rest: &str) -> Result<(usize, StarKind), CliError> {
    let (n, star) = rest.split_once(':').unwrap_or((rest, "transpose"));
    let n: usize = n
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("bad matrix size in `{spec}`")))?;
    let star = match star {
        "transpose" => StarKind::Transpose,
        "anti" => StarKind::Anti,
        "none" => StarKind::None,
        other => return Err(CliError::Input(format!("unknown star `{other}` in `{spec}`"))),
    };
    Ok((n, star))
}

/// Star-block decomposition of an algebra spec, where one is known.
pub fn parse_structured_spec(spec: &str, limits: &Limits) -> Result<StructuredAlgebra, CliError> {
    let spec = spec.trim();
    let blocks = if let Some(inner) = spec.strip_prefix("sum(").and_then(|s| s.strip_suffix(')')) {
        let (a, b) = split_pair(spec, inner)?;
        let mut blocks = parse_structured_spec(a, limits)?.blocks().to_vec();
        blocks.extend_from_slice(parse_structured_spec(b, limits)?.blocks());
        blocks
    } else if let Some(inner) = spec.strip_prefix("tensor(").and_then(|s| s.strip_suffix(')')) {
        let (a, b) = split_pair(spec, inner)?;
        let a = parse_structured_spec(a, limits)?;
        let b = parse_structured_spec(b, limits)?;
        let mut blocks = Vec::new();
        for &x in a.blocks() {
            for &y in b.blocks() {
                blocks.extend(block_product(x, y));
            }
        }
        blocks
    } else if let Some(g) = spec.strip_prefix("group:") {
        return Ok(StructuredAlgebra::from_irreps(&irrep_data(&parse_group_spec(g, limits)?)?));
    } else if let Some(rest) = spec.strip_prefix("matrix:") {
        match parse_matrix(spec, rest)? {
            (n, StarKind::Transpose) => vec![Block::Plain(n)],
            (2, StarKind::Anti) => vec![Block::Anti(2)],
            (n, StarKind::Anti) => return Err(AlgebraError::UnsupportedStar { n }.into()),
            (_, StarKind::None) => {
                return Err(CliError::Input(format!("`{spec}` has no star, so no block decomposition")))
            }
        }
    } else if spec == "swap" {
        vec![Block::Swap(1)]
    } else {
        return Err(CliError::Input(format!("unknown algebra spec `{spec}`")));
    };
    Ok(StructuredAlgebra::new(blocks)?)
}

/// Blocks of the tensor product of two blocks.
fn block_product(x: Block, y: Block) -> Vec<Block> {
    use Block::*;
    match (x, y) {
        (Plain(n), Plain(m)) | (Anti(n), Anti(m)) => vec![Plain(n * m)],
        (Plain(n), Anti(m)) | (Anti(n), Plain(m)) => vec![Anti(n * m)],
        (Plain(n) | Anti(n), Swap(m)) | (Swap(n), Plain(m) | Anti(m)) => vec![Swap(n * m)],
        (Swap(n), Swap(m)) => vec![Swap(n * m), Swap(n * m)],
    }
}

fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })
}

fn surface_json(t: &Triangulation) -> serde_json::Value {
    json!({
        "faces": t.face_count(),
        "edges": t.edge_count(),
        "vertices": t.vertex_count(),
        "chi": t.euler_characteristic(),
        "orientable": t.is_orientable(),
        "connected": t.is_connected(),
    })
}

fn surface_summary(t: &Triangulation) -> String {
    format!(
        "F={} E={} V={} chi={} {}",
        t.face_count(),
        t.edge_count(),
        t.vertex_count(),
        t.euler_characteristic(),
        if t.is_orientable() { "orientable" } else { "non-orientable" }
    )
}

/// Runs one command, writing results to `out`. Returns the exit code.
fn execute(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let g = &cli.global;
    let limits = Limits {
        max_order: g.max_order,
        max_work: g.max_work,
        max_dim: g.max_dim,
    };
    let mut emit = |text: String| {
        // Nothing useful can be done if stdout is gone.
        let _ = writeln!(out, "{text}");
    };
    match &cli.command {
        Command::Surface {
            surface,
            walk,
            seed,
            out: path,
        } => {
            let spec = surface.spec()?;
            let mut t = parse_surface_spec(&spec)?;
            if *walk > 0 {
                t = crate::surface::random_pachner_walk(&t, *walk, *seed);
            }
            let text = t.serialize();
            if let Some(path) = path {
                write_file(path, &text)?;
            }
            if g.json {
                let mut v = surface_json(&t);
                v["spec"] = json!(spec);
                if path.is_none() {
                    v["tri"] = json!(text);
                }
                emit(v.to_string());
            } else if let Some(path) = path {
                emit(format!("{path}: {}", surface_summary(&t)));
            } else {
                emit(text.trim_end().to_string());
            }
            Ok(0)
        }
        Command::Invariant {
            algebra,
            surface,
            structured,
        } => {
            let spec = surface.spec()?;
            let t = parse_surface_spec(&spec)?;
            let value = if *structured {
                invariant_structured(&parse_structured_spec(algebra, &limits)?, &t)
            } else {
                invariant_direct(&parse_algebra_spec(algebra, &limits)?, &t)?
            };
            if g.json {
                emit(
                    json!({
                        "algebra": algebra,
                        "surface": spec,
                        "chi": t.euler_characteristic(),
                        "orientable": t.is_orientable(),
                        "method": if *structured { "structured" } else { "direct" },
                        "value": rational_string(&value),
                    })
                    .to_string(),
                );
            } else {
                emit(value.to_string());
            }
            Ok(0)
        }
        Command::Verify {
            groups,
            surfaces,
            genus,
            crosscaps,
            grid,
            direct,
            no_direct,
        } => {
            let mut surface_specs = surfaces.clone();
            if let Some(gn) = genus {
                surface_specs.push(format!("genus:{gn}"));
            }
            if let Some(k) = crosscaps {
                surface_specs.push(format!("crosscaps:{k}"));
            }
            if surface_specs.is_empty() {
                return Err(CliError::Usage("verify needs --surface, --genus or --crosscaps".into()));
            }
            if !grid && (groups.len() > 1 || surface_specs.len() > 1) {
                return Err(CliError::Usage("several groups or surfaces need --grid".into()));
            }
            let parsed_groups = groups
                .iter()
                .map(|s| parse_group_spec(s, &limits))
                .collect::<Result<Vec<_>, _>>()?;
            let parsed_surfaces = surface_specs
                .iter()
                .map(|s| parse_surface_spec(s))
                .collect::<Result<Vec<_>, _>>()?;
            let with_direct = match (direct, no_direct) {
                (true, _) => Some(true),
                (_, true) => Some(false),
                _ => None,
            };
            let mut entries = Vec::new();
            for (group, group_spec) in parsed_groups.iter().zip(groups) {
                for (surface, surface_spec) in parsed_surfaces.iter().zip(&surface_specs) {
                    entries.push(GridEntry {
                        group,
                        group_spec,
                        surface,
                        surface_spec,
                        with_direct,
                    });
                }
            }
            let reports = verify_grid(&entries, &limits);
            if g.json {
                emit(serde_json::to_string(&reports).expect("reports serialize"));
            } else {
                emit(report_table(&reports).trim_end().to_string());
            }
            Ok(if reports.iter().any(|r| r.status == Status::Fail) { 1 } else { 0 })
        }
        Command::Fuzz {
            algebra,
            surface,
            walks,
            steps,
            seed,
        } => {
            let spec = surface.spec()?;
            let t = parse_surface_spec(&spec)?;
            let a = parse_algebra_spec(algebra, &limits)?;
            let report = pachner_fuzz(&a, algebra, &t, &spec, *walks, *steps, *seed);
            if g.json {
                emit(serde_json::to_string(&report).expect("report serializes"));
            } else {
                match &report.outcome {
                    FuzzOutcome::Pass { value } => emit(format!(
                        "PASS {algebra} on {spec}: {walks} walks x {steps} steps (seed {seed}), value {value}"
                    )),
                    FuzzOutcome::Fail {
                        walk,
                        step,
                        expected,
                        found,
                        reason,
                        counterexample,
                    } => {
                        let show = |v: &Option<crate::Rational>| v.as_ref().map_or("-".to_string(), |v| v.to_string());
                        emit(format!(
                            "FAIL {algebra} on {spec}: walk {walk} step {step}: {reason} (expected {}, found {})",
                            show(expected),
                            show(found)
                        ));
                        emit(counterexample.trim_end().to_string());
                    }
                }
            }
            Ok(if report.outcome.is_pass() { 0 } else { 1 })
        }
        Command::Chartable { group } => {
            let grp = parse_group_spec(group, &limits)?;
            let irreps = irrep_data(&grp)?;
            let classes = conjugacy_classes(&grp);
            if g.json {
                let rows: Vec<_> = irreps
                    .entries()
                    .iter()
                    .map(|&(d, fs)| json!({"dimension": d, "indicator": fs}))
                    .collect();
                emit(
                    json!({
                        "group": group,
                        "order": grp.order(),
                        "classes": classes.len(),
                        "irreps": rows,
                    })
                    .to_string(),
                );
            } else {
                emit(format!("# {group}: order {}, {} classes", grp.order(), classes.len()));
                emit("d  nu".to_string());
                for &(d, fs) in irreps.entries() {
                    emit(format!("{d:<2} {fs:+}"));
                }
            }
            Ok(0)
        }
        Command::Homcount { group, surface } => {
            let spec = surface.spec()?;
            let grp = parse_group_spec(group, &limits)?;
            let t = parse_surface_spec(&spec)?;
            let count = match classify_surface(&t)? {
                SurfaceType::Genus(genus) => hom_count_orientable(&grp, genus, &limits)?,
                SurfaceType::Crosscaps(k) => hom_count_nonorientable(&grp, k, &limits)?,
            };
            if g.json {
                emit(json!({"group": group, "surface": spec, "count": count.to_string()}).to_string());
            } else {
                emit(count.to_string());
            }
            Ok(0)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.global.threads {
        builder = builder.num_threads(n);
    }
    let result = match builder.build() {
        Ok(pool) => pool.install(|| execute(&cli, out)),
        Err(e) => Err(CliError::Input(format!("cannot start worker threads: {e}"))),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("lattice-tqft").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn algebra_specs() {
        let lim = Limits::default();
        assert_eq!(parse_algebra_spec("matrix:2", &lim).unwrap().dim(), 4);
        assert!(parse_algebra_spec("matrix:2", &lim).unwrap().has_star());
        assert!(!parse_algebra_spec("matrix:2:none", &lim).unwrap().has_star());
        assert_eq!(parse_algebra_spec("sum(swap,group:prod(C2,C3))", &lim).unwrap().dim(), 8);
        assert_eq!(parse_algebra_spec("tensor(matrix:2,matrix:2:anti)", &lim).unwrap().dim(), 16);
        assert!(matches!(
            parse_algebra_spec("matrix:3:anti", &lim),
            Err(CliError::Algebra(AlgebraError::UnsupportedStar { n: 3 }))
        ));
        assert!(parse_algebra_spec("sum(swap)", &lim).is_err());
        assert!(parse_algebra_spec("matrix:0", &lim).is_err());
        let small = Limits { max_dim: 8, ..lim };
        assert!(parse_algebra_spec("matrix:3", &small).is_err());
    }

    #[test]
    fn structured_specs_match_direct() {
        let lim = Limits::default();
        let specs = ["sum(swap,matrix:2:anti)", "tensor(matrix:2:anti,matrix:2:anti)", "tensor(swap,swap)", "group:Q8"];
        for spec in specs {
            let s = parse_structured_spec(spec, &lim).unwrap();
            let a = parse_algebra_spec(spec, &lim).unwrap();
            assert_eq!(s.dim(), a.dim(), "{spec}");
            for t in [orientable_genus_surface(1), nonorientable_surface(1).unwrap()] {
                assert_eq!(invariant_structured(&s, &t), invariant_direct(&a, &t).unwrap(), "{spec}");
            }
        }
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, err) = run_args(&["invariant", "--algebra", "swap"]);
        assert_eq!(code, 2);
        assert!(err.contains("--surface"));
        let (code, _, err) = run_args(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.to_lowercase().contains("usage"));
        let (code, _, _) = run_args(&["chartable", "--group", "S3", "--bogus"]);
        assert_eq!(code, 2);
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }

    #[test]
    fn chartable_and_homcount() {
        let (code, out, _) = run_args(&["chartable", "--group", "Q8"]);
        assert_eq!(code, 0);
        assert!(out.contains("2  -1"));
        let (code, out, _) = run_args(&["homcount", "--group", "S3", "--genus", "1"]);
        assert_eq!((code, out.trim()), (0, "18"));
        let (code, out, _) = run_args(&["--json", "homcount", "--group", "S3", "--surface", "rp2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], "4");
        let (code, _, err) = run_args(&["homcount", "--group", "S3", "--genus", "3", "--max-work", "100"]);
        assert_eq!(code, 2);
        assert!(err.contains("exceeds"));
    }

    #[test]
    fn verify_single_and_grid() {
        let (code, out, _) = run_args(&["verify", "--group", "S3", "--genus", "1", "--direct"]);
        assert_eq!(code, 0);
        assert!(out.contains("PASS"));
        let (code, out, _) = run_args(&[
            "--json", "verify", "--grid", "--group", "C2", "--group", "prod(C2,C2)", "--surface", "torus", "--surface", "klein",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert_eq!(v[1]["group_spec"], "C2");
        assert_eq!(v[1]["surface_spec"], "klein");
        let (code, _, _) = run_args(&["verify", "--group", "C2", "--group", "C3", "--surface", "torus"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn fuzz_command() {
        let (code, out, _) = run_args(&["fuzz", "--algebra", "swap", "--crosscaps", "2", "--walks", "2", "--steps", "5"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("PASS"));
        let (code, out, _) = run_args(&["fuzz", "--algebra", "matrix:2:none", "--surface", "rp2", "--walks", "1", "--steps", "2"]);
        assert_eq!(code, 1);
        assert!(out.contains("tri-v1") || out.contains("FAIL"));
    }
}
