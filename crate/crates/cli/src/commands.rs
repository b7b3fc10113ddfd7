use std::path::Path;

use glk::algebra::StructureAlgebra;
use glk::centroid::{
    central_closure, centroid_field, extended_central_closure_pair, jordan_centroid, lie_centroid,
    verify_centroid_iso, verify_closure_iso,
};
use glk::exactmath::field::parse_field;
use glk::freelie::LiePoly;
use glk::io;
use glk::jordan::{JordanPair, PairIdeal};
use glk::par::default_budget;
use glk::pi::{self, IdentityOptions, SearchOutcome};
use glk::radical::{
    kostrikin_radical, mccrimmon_radical, verify_radical_correspondence, RadicalMode, RadicalOptions,
};
use glk::sign::Sign;
use glk::tkk::{associated_pair, tkk_construct, verify_jordan_3graded};
use glk::{Exec, FieldSpec, Matrix, Subspace};
use serde_json::{json, Value};

use crate::{CatalogCmd, CheckCmd, Cli, Command, ModeArgs, ModeKind, PiCmd, Target, TkkCmd, VerifyKind};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: String, source: glk::Error },
    #[error(transparent)]
    Glk(#[from] glk::Error),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Outcome {
    pub text: String,
    pub report: Value,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn with_path<T>(path: &Path, r: glk::Result<T>) -> Result<T> {
    r.map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

fn load_algebra(path: &Path) -> Result<StructureAlgebra> {
    let src = read(path)?;
    with_path(path, io::parse_algebra(&src))
}

fn load_pair(path: &Path) -> Result<JordanPair> {
    let src = read(path)?;
    with_path(path, io::parse_pair(&src))
}

fn load_poly(path: &Path) -> Result<LiePoly> {
    let src = read(path)?;
    with_path(path, io::parse_poly_file(&src))
}

fn exec(cli: &Cli) -> Exec {
    if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.field().format_vector(m.row(i))).collect()
}

fn subspace_basis(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| s.field().format_vector(v)).collect()
}

fn grading_dims(a: &StructureAlgebra) -> Value {
    match a.grading() {
        Some(_) => json!(a.grading_dims()),
        None => Value::Null,
    }
}

fn dims(d: [usize; 2]) -> String {
    format!("({}, {})", d[0], d[1])
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let ex = exec(cli);
    match &cli.command {
        Command::Algebra { cmd: CheckCmd::Check { file } } => algebra_check(file),
        Command::Pair { cmd: CheckCmd::Check { file } } => pair_check(file),
        Command::Tkk { cmd } => tkk(cmd),
        Command::Pi { cmd } => pi_cmd(cmd, ex),
        Command::Centroid(t) => centroid(t),
        Command::Closure { target, output } => closure(target, output.as_deref()),
        Command::Radical { lie, pair, mode } => radical(lie.as_deref(), pair.as_deref(), mode, ex),
        Command::Verify { check, pair, mode } => verify(*check, pair, mode, ex),
        Command::Catalog {
            what,
            field,
            restrict,
            output,
        } => catalog(what, field, *restrict, output.as_deref()),
    }
}

fn algebra_check(file: &Path) -> Result<Outcome> {
    let a = load_algebra(file)?;
    let lie = a.verify_lie();
    let grading = a.grading().map(|_| a.verify_grading());
    let jordan = if a.is_three_graded() && lie.ok {
        Some(verify_jordan_3graded(&a)?)
    } else {
        None
    };
    let mut text = format!(
        "lie: {}, grading: {}",
        ok(lie.ok),
        grading.as_ref().map_or("none", |g| ok(g.ok))
    );
    if !lie.ok {
        text.push_str(&format!(
            " ({} antisymmetry and {} Jacobi violations)",
            lie.antisymmetry.len(),
            lie.jacobi.len()
        ));
    }
    Ok(Outcome {
        text,
        report: json!({
            "command": "algebra check",
            "field": a.field().to_string(),
            "dim": a.dim(),
            "grading_dims": grading_dims(&a),
            "lie": lie,
            "grading": grading,
            "jordan_3graded": jordan,
            "method": "exhaustive over basis tuples",
        }),
    })
}

fn pair_check(file: &Path) -> Result<Outcome> {
    let v = load_pair(file)?;
    let r = v.verify();
    Ok(Outcome {
        text: format!("pair: {}, dims {}", ok(r.ok), dims(v.dims())),
        report: json!({
            "command": "pair check",
            "field": v.field().to_string(),
            "dims": v.dims(),
            "axioms": r,
            "method": "exhaustive over basis tuples",
        }),
    })
}

fn tkk(cmd: &TkkCmd) -> Result<Outcome> {
    match cmd {
        TkkCmd::Build { pair, output } => {
            let v = load_pair(pair)?;
            let t = tkk_construct(&v)?;
            let lie = t.algebra.verify_lie();
            let grading = t.algebra.verify_grading();
            let jordan = verify_jordan_3graded(&t.algebra)?;
            write(output, &io::write_algebra(&t.algebra))?;
            Ok(Outcome {
                text: format!(
                    "tkk: dim {}, grading {:?}, lie: {}, jordan 3-graded: {}; wrote {}",
                    t.algebra.dim(),
                    t.algebra.grading_dims(),
                    ok(lie.ok),
                    ok(jordan.ok),
                    output.display()
                ),
                report: json!({
                    "command": "tkk build",
                    "dim": t.algebra.dim(),
                    "grading_dims": t.algebra.grading_dims(),
                    "lie": lie,
                    "grading": grading,
                    "jordan_3graded": jordan,
                    "output": output.display().to_string(),
                }),
            })
        }
        TkkCmd::Pair { file, output } => {
            let a = load_algebra(file)?;
            let v = associated_pair(&a)?;
            write(output, &io::write_pair(&v))?;
            let r = v.verify();
            Ok(Outcome {
                text: format!("pair: dims {}, axioms: {}; wrote {}", dims(v.dims()), ok(r.ok), output.display()),
                report: json!({
                    "command": "tkk pair",
                    "dims": v.dims(),
                    "axioms": r,
                    "output": output.display().to_string(),
                }),
            })
        }
    }
}

fn identity_options(budget: Option<u128>, randomized: Option<(u64, usize)>, ex: Exec) -> IdentityOptions {
    IdentityOptions {
        mode: match randomized {
            Some((seed, trials)) => pi::Mode::Randomized { seed, trials },
            None => pi::Mode::Exhaustive,
        },
        budget: budget.unwrap_or_else(default_budget),
        exec: ex,
    }
}

fn pi_cmd(cmd: &PiCmd, ex: Exec) -> Result<Outcome> {
    match cmd {
        PiCmd::Test {
            poly,
            algebra,
            randomized,
            seed,
            trials,
            budget,
        } => {
            let f = load_poly(poly)?;
            let a = load_algebra(algebra)?;
            let opts = identity_options(*budget, randomized.then_some((*seed, *trials)), ex);
            let r = pi::is_identity_with(&f, &a, &opts)?;
            let text = match &r.witness {
                None if r.identity => "identity".to_string(),
                None => "not an identity".to_string(),
                Some(w) => {
                    let vars: Vec<String> = w
                        .variables
                        .iter()
                        .map(|nv| format!("{}=({})", nv.var, nv.coords.join(",")))
                        .collect();
                    format!("not an identity; witness {}; value ({})", vars.join(" "), w.value.join(","))
                }
            };
            let mut report = json!({ "command": "pi test" });
            report["result"] = serde_json::to_value(&r).expect("serializable");
            Ok(Outcome { text, report })
        }
        PiCmd::Essential { poly, max_pq, budget } => {
            let f = load_poly(poly)?;
            let opts = identity_options(*budget, None, ex);
            let r = pi::essentiality(&f, *max_pq, &opts)?;
            let bound = max_pq.unwrap_or_else(|| pi::default_max_pq(&f));
            let text = match &r.search {
                Some(SearchOutcome::Found { p, q }) => format!("essential; witness p={p} q={q}"),
                Some(SearchOutcome::NotEssential) => "not essential".to_string(),
                Some(SearchOutcome::BoundExhausted { max_pq }) => {
                    format!("essential; no witness with p+q <= {max_pq}")
                }
                None => format!("essential: {}", r.essential),
            };
            let mut report = json!({ "command": "pi essential", "max_pq": bound });
            report["result"] = serde_json::to_value(&r).expect("serializable");
            Ok(Outcome { text, report })
        }
        PiCmd::Induce { poly, output } => {
            let f = load_poly(poly)?;
            let g = pi::induced_jordan_identity(&f);
            write(output, &io::write_pair_poly(&g.plus, &g.minus))?;
            Ok(Outcome {
                text: format!(
                    "deg f = {}, deg g = {}, degree contract: {}; wrote {}",
                    g.degree_f,
                    g.degree_g,
                    ok(g.degree_contract),
                    output.display()
                ),
                report: json!({
                    "command": "pi induce",
                    "result": g,
                    "output": output.display().to_string(),
                }),
            })
        }
    }
}

fn field_verdict(basis: &[Matrix], base: &FieldSpec) -> (String, Value) {
    match centroid_field(basis, base, None) {
        Ok(cf) => {
            let s = cf.field.to_string();
            (format!("field {s}"), json!({ "is_field": true, "field": s, "degree": cf.degree() }))
        }
        Err(e) => (format!("not a field ({e})"), json!({ "is_field": false, "reason": e.to_string() })),
    }
}

fn centroid(t: &Target) -> Result<Outcome> {
    if let Some(path) = &t.pair {
        let v = load_pair(path)?;
        let c = jordan_centroid(&v);
        let basis: Vec<Matrix> = c
            .algebra
            .basis
            .iter()
            .map(|g| {
                let (a, b) = (g.plus.rows(), g.minus.rows());
                let mut m = Matrix::zeros(v.field(), a + b, a + b);
                for i in 0..a {
                    for j in 0..a {
                        m.set(i, j, g.plus.get(i, j).clone());
                    }
                }
                for i in 0..b {
                    for j in 0..b {
                        m.set(a + i, a + j, g.minus.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        let (verdict, field) = field_verdict(&basis, v.field());
        let maps: Vec<Value> = c
            .algebra
            .basis
            .iter()
            .map(|g| json!({ "plus": matrix_rows(&g.plus), "minus": matrix_rows(&g.minus) }))
            .collect();
        return Ok(Outcome {
            text: format!("jordan centroid: dim {}, {verdict}", c.algebra.dim()),
            report: json!({
                "command": "centroid --pair",
                "dim": c.algebra.dim(),
                "basis": maps,
                "condition_b": c.condition_b,
                "field": field,
                "method": "linear solve of (a), (c); (b) checked on basis and pairwise sums",
            }),
        });
    }
    let path = t.file.as_ref().expect("clap enforces a target");
    let a = load_algebra(path)?;
    let c = lie_centroid(&a);
    let (verdict, field) = field_verdict(&c.basis, a.field());
    Ok(Outcome {
        text: format!("centroid: dim {}, {verdict}", c.dim()),
        report: json!({
            "command": "centroid",
            "dim": c.dim(),
            "basis": c.basis.iter().map(matrix_rows).collect::<Vec<_>>(),
            "field": field,
            "method": "commutant of ad by linear solve",
        }),
    })
}

fn closure(t: &Target, output: Option<&Path>) -> Result<Outcome> {
    if let Some(path) = &t.pair {
        let v = load_pair(path)?;
        let c = extended_central_closure_pair(&v)?;
        let r = c.pair.verify();
        if let Some(o) = output {
            write(o, &io::write_pair(&c.pair))?;
        }
        return Ok(Outcome {
            text: format!("closure: dims {} over {}, axioms: {}", dims(c.pair.dims()), c.gamma.field, ok(r.ok)),
            report: json!({
                "command": "closure --pair",
                "field": c.gamma.field.to_string(),
                "dims": c.pair.dims(),
                "axioms": r,
                "output": output.map(|o| o.display().to_string()),
            }),
        });
    }
    let path = t.file.as_ref().expect("clap enforces a target");
    let a = load_algebra(path)?;
    let c = central_closure(&a)?;
    let lie = c.algebra.verify_lie();
    if let Some(o) = output {
        write(o, &io::write_algebra(&c.algebra))?;
    }
    Ok(Outcome {
        text: format!(
            "closure: dim {} over {}, lie: {}",
            c.algebra.dim(),
            c.algebra.field(),
            ok(lie.ok)
        ),
        report: json!({
            "command": "closure",
            "field": c.algebra.field().to_string(),
            "dim": c.algebra.dim(),
            "grading_dims": grading_dims(&c.algebra),
            "lie": lie,
            "output": output.map(|o| o.display().to_string()),
        }),
    })
}

fn radical_options(m: &ModeArgs, ex: Exec) -> RadicalOptions {
    let mode = match m.mode {
        ModeKind::Enumerate => RadicalMode::Enumerate {
            budget: m.budget.unwrap_or_else(default_budget),
        },
        ModeKind::Witness => RadicalMode::Witness {
            seed: m.seed,
            trials: m.trials,
        },
        ModeKind::Structural => RadicalMode::Structural,
    };
    RadicalOptions { mode, exec: ex }
}

fn pair_ideal_json(i: &PairIdeal) -> Value {
    json!({ "plus": subspace_basis(&i.plus), "minus": subspace_basis(&i.minus) })
}

fn radical(lie: Option<&Path>, pair: Option<&Path>, m: &ModeArgs, ex: Exec) -> Result<Outcome> {
    let opts = radical_options(m, ex);
    if let Some(path) = pair {
        let v = load_pair(path)?;
        let r = mccrimmon_radical(&v, &opts)?;
        let qualifier = if r.mode.is_exact() { "" } else { " (lower bound)" };
        return Ok(Outcome {
            text: format!(
                "mccrimmon radical: dims {} of {}{qualifier}, {} saturation step(s)",
                dims(r.radical.dims().into()),
                dims(v.dims()),
                r.saturation_steps
            ),
            report: json!({
                "command": "radical --pair",
                "dims": r.radical.dims(),
                "basis": pair_ideal_json(&r.radical),
                "mode": r.mode,
                "exact": r.mode.is_exact(),
                "saturation_steps": r.saturation_steps,
            }),
        });
    }
    let path = lie.expect("clap enforces a target");
    let a = load_algebra(path)?;
    let r = kostrikin_radical(&a, &opts)?;
    let qualifier = if r.mode.is_exact() { "" } else { " (lower bound)" };
    Ok(Outcome {
        text: format!(
            "kostrikin radical: dim {} of {}{qualifier}, {} saturation step(s)",
            r.radical.dim(),
            a.dim(),
            r.saturation_steps
        ),
        report: json!({
            "command": "radical --lie",
            "dim": r.radical.dim(),
            "basis": subspace_basis(&r.radical),
            "graded": a.grading().map(|_| a.is_graded_subspace(&r.radical)),
            "mode": r.mode,
            "exact": r.mode.is_exact(),
            "saturation_steps": r.saturation_steps,
        }),
    })
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn verify(check: VerifyKind, pair: &Path, m: &ModeArgs, ex: Exec) -> Result<Outcome> {
    let v = load_pair(pair)?;
    match check {
        VerifyKind::CentroidIso => {
            let r = verify_centroid_iso(&v)?;
            let both = r.psi_upsilon_identity && r.upsilon_psi_identity;
            Ok(Outcome {
                text: format!(
                    "{} dim={}, psi∘upsilon={}",
                    pass(r.pass),
                    r.lie_dim,
                    if both { "id" } else { "not id" }
                ),
                report: json!({ "command": "verify centroid-iso", "result": r }),
            })
        }
        VerifyKind::ClosureIso => {
            let r = verify_closure_iso(&v)?;
            Ok(Outcome {
                text: format!("{} dim={} over {}", pass(r.pass), r.closure_dim, r.field),
                report: json!({ "command": "verify closure-iso", "result": r }),
            })
        }
        VerifyKind::RadicalCorr => {
            let r = verify_radical_correspondence(&v, &radical_options(m, ex))?;
            Ok(Outcome {
                text: format!(
                    "{} K(L) dim={} vs anti-image of I(Mc(V)) dim={}",
                    pass(r.pass),
                    r.kostrikin_dim,
                    r.predicted_dim
                ),
                report: json!({ "command": "verify radical-corr", "result": r }),
            })
        }
    }
}

enum Built {
    Algebra(StructureAlgebra),
    Pair(JordanPair),
}

fn catalog(what: &CatalogCmd, field: &str, restrict: bool, output: Option<&Path>) -> Result<Outcome> {
    let f = parse_field(field).map_err(|m| CliError::Usage(format!("--field: {m}")))?;
    let built = match what {
        CatalogCmd::Rect { p, q } => Built::Pair(JordanPair::rectangular(&f, *p, *q)?),
        CatalogCmd::Zero { m, n } => Built::Pair(JordanPair::zero_pair(&f, *m, *n)),
        CatalogCmd::Bilinear { n } => Built::Pair(JordanPair::bilinear_form(&f, &Matrix::identity(&f, *n))?),
        CatalogCmd::Skew { n } => Built::Pair(JordanPair::skew(&f, *n)?),
        CatalogCmd::Sum { a, b } => Built::Pair(load_pair(a)?.direct_sum(&load_pair(b)?)?),
        CatalogCmd::Sl { p, q } => Built::Algebra(pi::sl_graded(*p, *q, &f)?),
        CatalogCmd::Sl2 => Built::Algebra(StructureAlgebra::sl2(&f)),
        CatalogCmd::Heisenberg => Built::Algebra(StructureAlgebra::heisenberg(&f)),
    };
    let built = match (built, restrict) {
        (Built::Algebra(a), true) => Built::Algebra(a.restrict_scalars()?),
        (Built::Pair(v), true) => Built::Pair(v.restrict_scalars()?),
        (b, false) => b,
    };
    let (content, summary, report) = match &built {
        Built::Algebra(a) => (
            io::write_algebra(a),
            format!("algebra: dim {} over {}", a.dim(), a.field()),
            json!({ "command": "catalog", "kind": "algebra", "dim": a.dim(), "field": a.field().to_string() }),
        ),
        Built::Pair(v) => (
            io::write_pair(v),
            format!("pair: dims {} over {}", dims(v.dims()), v.field()),
            json!({ "command": "catalog", "kind": "pair", "dims": [v.dim(Sign::Plus), v.dim(Sign::Minus)], "field": v.field().to_string() }),
        ),
    };
    let text = match output {
        Some(o) => {
            write(o, &content)?;
            format!("{summary}; wrote {}", o.display())
        }
        None => content.trim_end().to_string(),
    };
    Ok(Outcome { text, report })
}
