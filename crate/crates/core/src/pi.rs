//! Polynomial identities of graded Lie algebras and Jordan pairs, and
//! essentiality through the block-graded special linear algebras.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::matrix::{axpy, is_zero_vec, unit_vector};
use crate::exactmath::{FieldSpec, Matrix, Scalar, Vector};
use crate::freelie::{pi_special, AssocPoly, LiePoly, Var};
use crate::jordan::JordanPair;
use crate::par::{default_budget, Exec};
use crate::sign::Sign;
use crate::tkk::tkk_construct;

/// Index of `e_ij` (`i != j`) in the basis of [`sl_graded`].
fn offdiag_index(n: usize, i: usize, j: usize) -> usize {
    i * (n - 1) + if j > i { j - 1 } else { j }
}

/// Coordinates of a trace-zero `(p+q) x (p+q)` matrix in the basis of
/// [`sl_graded`].
pub fn sl_coordinates(p: usize, q: usize, m: &Matrix) -> Result<Vector> {
    let n = p + q;
    let f = m.field();
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension(format!("expected a {n}x{n} matrix")));
    }
    if !m.trace().is_zero() {
        return Err(Error::Dimension("matrix is not trace-free".into()));
    }
    let mut out = vec![f.zero(); n * n - 1];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out[offdiag_index(n, i, j)] = m.get(i, j).clone();
            }
        }
    }
    // diag(d) = sum c_k (e_kk - e_{k+1,k+1}) with c_k = d_0 + ... + d_k
    let mut acc = f.zero();
    for k in 0..n - 1 {
        acc = f.add(&acc, m.get(k, k));
        out[n * (n - 1) + k] = acc.clone();
    }
    Ok(out)
}

/// The matrix of basis vector `b` of [`sl_graded`].
pub fn sl_basis_matrix(p: usize, q: usize, field: &FieldSpec, b: usize) -> Matrix {
    let n = p + q;
    let mut m = Matrix::zeros(field, n, n);
    if b < n * (n - 1) {
        let i = b / (n - 1);
        let r = b % (n - 1);
        let j = if r >= i { r + 1 } else { r };
        m.set(i, j, field.one());
    } else {
        let k = b - n * (n - 1);
        m.set(k, k, field.one());
        m.set(k + 1, k + 1, field.from_i64(-1));
    }
    m
}

/// `sl(p+q)` on the basis `e_ij` (`i != j`, lexicographic) followed by
/// `e_ii - e_{i+1,i+1}`, graded `+1` on the upper right `p x q` block and
/// `-1` on the lower left block.
pub fn sl_graded(p: usize, q: usize, field: &FieldSpec) -> Result<StructureAlgebra> {
    if p == 0 || q == 0 {
        return Err(Error::Dimension("sl_graded needs p, q >= 1".into()));
    }
    let n = p + q;
    let dim = n * n - 1;
    let mats: Vec<Matrix> = (0..dim).map(|b| sl_basis_matrix(p, q, field, b)).collect();
    let mut a = StructureAlgebra::new(field, dim);
    for i in 0..dim {
        for j in i + 1..dim {
            let c = mats[i].mul(&mats[j]).sub(&mats[j].mul(&mats[i]));
            a.set_bracket(i, j, &sl_coordinates(p, q, &c)?);
        }
    }
    let grading = (0..dim)
        .map(|b| {
            if b >= n * (n - 1) {
                return 0;
            }
            let i = b / (n - 1);
            let r = b % (n - 1);
            let j = if r >= i { r + 1 } else { r };
            match (i < p, j < p) {
                (true, false) => 1,
                (false, true) => -1,
                _ => 0,
            }
        })
        .collect();
    a.with_grading(grading)
}

/// Set when the characteristic divides `p + q` (then `sl(p+q)` has a center).
pub fn sl_graded_warning(p: usize, q: usize, field: &FieldSpec) -> Option<String> {
    let c = field.characteristic();
    (c != 0 && (p + q) as u64 % c == 0).then(|| format!("characteristic {c} divides p+q = {}", p + q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Method {
    /// Every tuple of graded basis vectors.
    Exhaustive { tuples: u128, budget: u128 },
    Randomized { seed: u64, trials: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Randomized { seed: u64, trials: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct IdentityOptions {
    pub mode: Mode,
    pub budget: u128,
    pub exec: Exec,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions {
            mode: Mode::Exhaustive,
            budget: default_budget(),
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedVector {
    pub var: String,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub variables: Vec<NamedVector>,
    pub value: Vec<String>,
    #[serde(skip)]
    pub assignment: BTreeMap<Var, Vector>,
    #[serde(skip)]
    pub value_vector: Vector,
}

impl Witness {
    fn new(field: &FieldSpec, assignment: BTreeMap<Var, Vector>, value: Vector) -> Self {
        Witness {
            variables: assignment
                .iter()
                .map(|(v, x)| NamedVector {
                    var: v.to_string(),
                    coords: field.format_vector(x),
                })
                .collect(),
            value: field.format_vector(&value),
            assignment,
            value_vector: value,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub polynomial: LiePoly,
    /// The polynomial the exhaustive search ran on.
    pub tested: LiePoly,
    pub multilinearized: bool,
    pub algebra: String,
    pub identity: bool,
    pub method: Method,
    /// An assignment of the input polynomial with nonzero value.
    pub witness: Option<Witness>,
    pub caveat: Option<String>,
}

fn wing_bases(l: &StructureAlgebra) -> Result<[Vec<usize>; 2]> {
    if l.grading().is_none() {
        return Err(Error::GradingMismatch("identity testing needs a graded algebra".into()));
    }
    Ok([l.component(1), l.component(-1)])
}

fn zero_values(l: &StructureAlgebra, f: &LiePoly, mut a: BTreeMap<Var, Vector>) -> BTreeMap<Var, Vector> {
    for v in f.variables() {
        a.entry(v).or_insert_with(|| vec![l.field().zero(); l.dim()]);
    }
    a
}

fn value(l: &StructureAlgebra, f: &LiePoly, a: &BTreeMap<Var, Vector>) -> Vector {
    f.eval_unchecked(l, &zero_values(l, f, a.clone()))
        .expect("coefficients were checked against the field")
}

/// Exhaustive search on a multilinear polynomial, one support class at a
/// time in order of increasing size, so that a nonzero class value is a
/// nonzero value of the whole polynomial.
fn exhaustive(
    f: &LiePoly,
    l: &StructureAlgebra,
    budget: u128,
    exec: Exec,
) -> Result<(u128, Option<BTreeMap<Var, Vector>>)> {
    let wings = wing_bases(l)?;
    let classes = f.split_by_support();
    let count = |vars: &[Var]| {
        vars.iter()
            .try_fold(1u128, |acc, v| acc.checked_mul(wings[v.sign.idx()].len() as u128))
            .unwrap_or(u128::MAX)
    };
    let needed = classes
        .iter()
        .map(|(vars, _)| count(&vars.iter().copied().collect::<Vec<_>>()))
        .fold(0u128, |a, b| a.saturating_add(b));
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let n = l.dim();
    let field = l.field();
    for (vars, g) in &classes {
        let vars: Vec<Var> = vars.iter().copied().collect();
        let total = count(&vars);
        let hit = exec.find_first_u128(total, |mut idx| {
            let mut a = BTreeMap::new();
            for v in &vars {
                let w = &wings[v.sign.idx()];
                let k = (idx % w.len() as u128) as usize;
                idx /= w.len() as u128;
                a.insert(*v, unit_vector(field, n, w[k]));
            }
            let val = g.eval_unchecked(l, &a).expect("coefficients were checked against the field");
            (!is_zero_vec(&val)).then_some(a)
        });
        if let Some((_, a)) = hit {
            return Ok((needed, Some(a)));
        }
    }
    Ok((needed, None))
}

/// Pulls a witness of the multilinearization back through the
/// linearization steps: if `f(v+w) - f(v) - f(w)` is nonzero somewhere, so
/// is one of the three terms.
fn lift_witness(
    original: &LiePoly,
    steps: &[(Var, Var)],
    l: &StructureAlgebra,
    mut a: BTreeMap<Var, Vector>,
) -> Option<BTreeMap<Var, Vector>> {
    let f = l.field();
    let mut chain = vec![original.clone()];
    for (v, _) in steps {
        let next = chain.last().unwrap().linearize(*v);
        chain.push(next);
    }
    let zero = vec![f.zero(); l.dim()];
    for k in (0..steps.len()).rev() {
        let (v, w) = steps[k];
        let target = &chain[k];
        let av = a.get(&v).cloned().unwrap_or_else(|| zero.clone());
        let aw = a.remove(&w).unwrap_or_else(|| zero.clone());
        let mut sum = av.clone();
        axpy(f, &mut sum, &f.one(), &aw);
        let mut found = None;
        for choice in [sum, av, aw] {
            let mut b = a.clone();
            b.insert(v, choice);
            if !is_zero_vec(&value(l, target, &b)) {
                found = Some(b);
                break;
            }
        }
        a = found?;
    }
    Some(a)
}

fn random_element(l: &StructureAlgebra, idx: &[usize], rng: &mut ChaCha8Rng) -> Vector {
    let f = l.field();
    let mut out = vec![f.zero(); l.dim()];
    for &i in idx {
        out[i] = f.random(rng, 10);
    }
    out
}

pub fn is_identity(f: &LiePoly, l: &StructureAlgebra) -> Result<IdentityReport> {
    is_identity_with(f, l, &IdentityOptions::default())
}

pub fn is_identity_with(f: &LiePoly, l: &StructureAlgebra, opts: &IdentityOptions) -> Result<IdentityReport> {
    let field = l.field();
    for (c, _) in f.terms() {
        field.from_rational(c)?;
    }
    let wings = wing_bases(l)?;
    let algebra = format!("dim {} over {}", l.dim(), field);
    match opts.mode {
        Mode::Exhaustive => {
            let multilinear = f.is_multilinear();
            let (tested, steps) = f.multilinearize_traced();
            let (needed, hit) = exhaustive(&tested, l, opts.budget, opts.exec)?;
            let witness = match hit {
                Some(a) => {
                    let a = lift_witness(f, &steps, l, a)
                        .ok_or_else(|| Error::Internal("witness lost while undoing linearization".into()))?;
                    let val = value(l, f, &a);
                    if is_zero_vec(&val) {
                        return Err(Error::Internal("witness re-evaluates to zero".into()));
                    }
                    Some(Witness::new(field, a, val))
                }
                None => None,
            };
            Ok(IdentityReport {
                polynomial: f.clone(),
                identity: witness.is_none(),
                caveat: (!multilinear && witness.is_none())
                    .then(|| "identity verdict holds for the multilinearization".to_string()),
                tested,
                multilinearized: !multilinear,
                algebra,
                method: Method::Exhaustive {
                    tuples: needed,
                    budget: opts.budget,
                },
                witness,
            })
        }
        Mode::Randomized { seed, trials } => {
            let vars: Vec<Var> = f.variables().into_iter().collect();
            let hit = opts.exec.find_first(trials, |t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t as u64);
                let a: BTreeMap<Var, Vector> = vars
                    .iter()
                    .map(|v| (*v, random_element(l, &wings[v.sign.idx()], &mut rng)))
                    .collect();
                let val = value(l, f, &a);
                (!is_zero_vec(&val)).then_some((a, val))
            });
            Ok(IdentityReport {
                polynomial: f.clone(),
                tested: f.clone(),
                multilinearized: false,
                algebra,
                identity: hit.is_none(),
                method: Method::Randomized { seed, trials },
                caveat: hit
                    .is_none()
                    .then(|| format!("no nonzero value in {trials} random trials; not a proof")),
                witness: hit.map(|(_, (a, val))| Witness::new(field, a, val)),
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SearchOutcome {
    Found { p: usize, q: usize },
    /// The image in the free special algebra vanishes and no pair was found.
    NotEssential,
    /// Nonzero image but no witness with `p + q <= max_pq`.
    BoundExhausted { max_pq: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct EssentialityReport {
    pub polynomial: LiePoly,
    pub pi_image: AssocPoly,
    pub essential: bool,
    pub leading_degree: usize,
    pub leading_word: Option<String>,
    pub monic: bool,
    pub witness: Option<(usize, usize)>,
    pub search: Option<SearchOutcome>,
}

/// Essential exactly when the image in the free special algebra is nonzero.
pub fn is_essential(f: &LiePoly) -> EssentialityReport {
    let pi_image = pi_special(f);
    let leading_word = pi_image.leading().map(|(w, _)| {
        let parts: Vec<String> = w.iter().map(|v| v.to_string()).collect();
        parts.join(" ")
    });
    EssentialityReport {
        polynomial: f.clone(),
        essential: !pi_image.is_zero(),
        leading_degree: pi_image.degree(),
        leading_word,
        monic: pi_image.is_monic(),
        pi_image,
        witness: None,
        search: None,
    }
}

/// Default bound on `p + q`: one more than the degree.
pub fn default_max_pq(f: &LiePoly) -> usize {
    f.degree() + 1
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSearch {
    pub outcome: SearchOutcome,
    pub scanned: Vec<(usize, usize)>,
    /// The non-identity report on the witness algebra.
    pub report: Option<IdentityReport>,
}

/// Scans `(p, q)` with `p + q` increasing and `p <= q` for a block-graded
/// `sl(p+q)` on which `f` is not an identity.
pub fn essential_witness_search(f: &LiePoly, max_pq: usize, opts: &IdentityOptions) -> Result<WitnessSearch> {
    let q_field = FieldSpec::rationals();
    let essential = !pi_special(f).is_zero();
    let mut scanned = Vec::new();
    for s in 2..=max_pq {
        for p in 1..=s / 2 {
            let q = s - p;
            scanned.push((p, q));
            let l = sl_graded(p, q, &q_field)?;
            let mut r = is_identity_with(f, &l, opts)?;
            if !r.identity {
                if !essential {
                    return Err(Error::Internal(format!(
                        "witness sl({p}+{q}) found for a polynomial with zero special image"
                    )));
                }
                r.algebra = format!("sl_graded({p},{q})");
                return Ok(WitnessSearch {
                    outcome: SearchOutcome::Found { p, q },
                    scanned,
                    report: Some(r),
                });
            }
        }
    }
    Ok(WitnessSearch {
        outcome: if essential {
            SearchOutcome::BoundExhausted { max_pq }
        } else {
            SearchOutcome::NotEssential
        },
        scanned,
        report: None,
    })
}

/// [`is_essential`] with the witness search filled in.
pub fn essentiality(f: &LiePoly, max_pq: Option<usize>, opts: &IdentityOptions) -> Result<EssentialityReport> {
    let mut r = is_essential(f);
    let s = essential_witness_search(f, max_pq.unwrap_or_else(|| default_max_pq(f)), opts)?;
    if let SearchOutcome::Found { p, q } = s.outcome {
        r.witness = Some((p, q));
    }
    r.search = Some(s.outcome);
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedIdentity {
    pub plus: LiePoly,
    pub minus: LiePoly,
    pub degree_f: usize,
    pub degree_g: usize,
    /// Even degree goes up by one, odd degree is kept.
    pub degree_contract: bool,
}

/// `(f_1 + [f_0, y+], f_-1 + [f_0, y-])` with `y` fresh for `f`.
pub fn induced_jordan_identity(f: &LiePoly) -> InducedIdentity {
    let f0 = f.component(0);
    let lower = |s: Sign| f0.bracket(&LiePoly::var(f.fresh_var(s)));
    let plus = f.component(1).add(&lower(Sign::Plus));
    let minus = f.component(-1).add(&lower(Sign::Minus));
    let degree_f = f.degree();
    let degree_g = plus.degree().max(minus.degree());
    let expected = if degree_f == 0 {
        0
    } else if degree_f % 2 == 0 {
        degree_f + 1
    } else {
        degree_f
    };
    InducedIdentity {
        degree_contract: degree_g == expected,
        plus,
        minus,
        degree_f,
        degree_g,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairIdentityReport {
    pub identity: bool,
    pub plus: IdentityReport,
    pub minus: IdentityReport,
}

/// Evaluates `(g+, g-)` on a Jordan pair through the brackets of its TKK
/// algebra.
pub fn jordan_is_identity(g: (&LiePoly, &LiePoly), v: &JordanPair, opts: &IdentityOptions) -> Result<PairIdentityReport> {
    for (p, w) in [(g.0, 1), (g.1, -1)] {
        if !p.is_zero() && p.homogeneous_weight() != Some(w) {
            return Err(Error::NotWingHomogeneous(format!("{p} is not of sign-degree {w}")));
        }
    }
    let l = tkk_construct(v)?.algebra;
    let label = format!("TKK of a ({}, {}) pair over {}", v.dim(Sign::Plus), v.dim(Sign::Minus), v.field());
    let mut plus = is_identity_with(g.0, &l, opts)?;
    let mut minus = is_identity_with(g.1, &l, opts)?;
    plus.algebra = label.clone();
    minus.algebra = label;
    Ok(PairIdentityReport {
        identity: plus.identity && minus.identity,
        plus,
        minus,
    })
}

/// Block embedding `sl_graded(p, q) -> sl_graded(p2, q2)` of a vector.
pub fn embed_sl(p: usize, q: usize, p2: usize, q2: usize, x: &[Scalar], field: &FieldSpec) -> Result<Vector> {
    if p2 < p || q2 < q {
        return Err(Error::Dimension("target blocks must be at least as large".into()));
    }
    let n = p + q;
    let map = |i: usize| if i < p { i } else { p2 + (i - p) };
    let mut m = Matrix::zeros(field, p2 + q2, p2 + q2);
    for (b, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let bm = sl_basis_matrix(p, q, field, b);
        for i in 0..n {
            for j in 0..n {
                let e = bm.get(i, j);
                if !e.is_zero() {
                    let cur = m.get(map(i), map(j)).clone();
                    m.set(map(i), map(j), field.add(&cur, &field.mul(c, e)));
                }
            }
        }
    }
    sl_coordinates(p2, q2, &m)
}
