//! Absolute zero divisors, sandwiches, the McCrimmon and Kostrikin radicals
//! and their correspondence through `TKK`.
//!
//! Both conditions are quadratic in the unknown element, so they are decided
//! one of three ways: exhaustive enumeration over a small finite field
//! (exact), testing seeded candidates (lower bounds), or a structural
//! certificate. Radicals are built by saturation and always returned as
//! subspaces of the input, not of an intermediate quotient.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Quotient, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::matrix::unit_vector;
use crate::exactmath::{FieldSpec, Scalar, Subspace, Vector};
use crate::jordan::{JordanPair, PairIdeal};
use crate::par::{default_budget, Exec};
use crate::sign::Sign;
use crate::tkk::{associated_pair, tkk_construct, verify_jordan_3graded};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalMode {
    /// Every element of a finite field space, up to `budget` of them.
    Enumerate { budget: u128 },
    /// Basis vectors and `trials` seeded sparse combinations.
    Witness { seed: u64, trials: usize },
    /// Killing-form and zero-product certificates.
    Structural,
}

impl RadicalMode {
    pub fn enumerate() -> Self {
        RadicalMode::Enumerate {
            budget: default_budget(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RadicalOptions {
    pub mode: RadicalMode,
    pub exec: Exec,
}

impl RadicalOptions {
    pub fn new(mode: RadicalMode) -> Self {
        RadicalOptions {
            mode,
            exec: Exec::default(),
        }
    }
}

/// How a result was obtained, embedded in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModeLabel {
    Enumerate { field: String, bound: u128 },
    Witness { seeds: Vec<u64>, trials: usize, lower_bound: bool },
    Structural { certificate: String },
}

impl ModeLabel {
    pub fn is_exact(&self) -> bool {
        !matches!(self, ModeLabel::Witness { .. })
    }
}

#[derive(Clone, Debug)]
pub struct Witnesses {
    /// Nonzero witnesses; in enumerate mode one per line through the
    /// origin (first nonzero coordinate 1), and every multiple qualifies.
    pub elements: Vec<Vector>,
    pub mode: ModeLabel,
}

#[derive(Clone, Debug)]
pub struct RadicalReport<R> {
    pub radical: R,
    pub mode: ModeLabel,
    pub saturation_steps: usize,
}

/// Homogeneous quadratic forms `sum c x_a x_b` over `a <= b`; the element
/// qualifies when all of them vanish.
struct Quadratic {
    n: usize,
    forms: Vec<Vec<(usize, usize, Scalar)>>,
}

impl Quadratic {
    fn from_dense(f: &FieldSpec, n: usize, dense: Vec<Vec<Vec<Scalar>>>) -> Self {
        // dense[r][a][b] is the coefficient of x_a x_b in form r
        let forms = dense
            .into_iter()
            .map(|row| {
                let mut out = Vec::new();
                for a in 0..n {
                    for b in a..n {
                        let c = if a == b {
                            row[a][a].clone()
                        } else {
                            f.add(&row[a][b], &row[b][a])
                        };
                        if !c.is_zero() {
                            out.push((a, b, c));
                        }
                    }
                }
                out
            })
            .filter(|r| !r.is_empty())
            .collect();
        Quadratic { n, forms }
    }

    fn vanishes(&self, f: &FieldSpec, x: &[Scalar]) -> bool {
        self.forms.iter().all(|form| {
            let mut acc = f.zero();
            for (a, b, c) in form {
                if !x[*a].is_zero() && !x[*b].is_zero() {
                    acc = f.add(&acc, &f.mul(c, &f.mul(&x[*a], &x[*b])));
                }
            }
            acc.is_zero()
        })
    }

    fn residues(&self) -> Vec<Vec<(usize, usize, u64)>> {
        self.forms
            .iter()
            .map(|form| {
                form.iter()
                    .map(|(a, b, c)| match c {
                        Scalar::Residue(r) => (*a, *b, *r),
                        _ => unreachable!("prime field scalars are residues"),
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// `(ad z)^2 = 0`, as the forms `[z, [z, b_j]]_k`.
fn sandwich_system(l: &StructureAlgebra) -> Quadratic {
    let f = l.field();
    let n = l.dim();
    let mut dense = vec![vec![vec![f.zero(); n]; n]; n * n];
    for j in 0..n {
        for b in 0..n {
            let inner = l.bracket_basis_vec(b, j);
            for a in 0..n {
                let v = l.bracket_with_basis(a, &inner);
                for (k, c) in v.into_iter().enumerate() {
                    dense[j * n + k][a][b] = c;
                }
            }
        }
    }
    Quadratic::from_dense(f, n, dense)
}

/// `{x, b_j, x} = 0` for all `j`.
fn zero_divisor_system(v: &JordanPair, s: Sign) -> Quadratic {
    let f = v.field();
    let (ns, no) = (v.dim(s), v.dim(s.opposite()));
    let mut dense = vec![vec![vec![f.zero(); ns]; ns]; no * ns];
    for j in 0..no {
        for a in 0..ns {
            for b in 0..ns {
                for (l, c) in v.triple_basis(s, a, j, b) {
                    dense[j * ns + l][a][b] = c.clone();
                }
            }
        }
    }
    Quadratic::from_dense(f, ns, dense)
}

fn saturating_pow(q: u128, n: usize) -> u128 {
    (0..n).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX)
}

/// Exhaustive search over projective representatives.
fn enumerate_zeros(f: &FieldSpec, sys: &Quadratic, budget: u128, exec: Exec) -> Result<Vec<Vector>> {
    let q = f
        .order()
        .ok_or_else(|| Error::Unsupported("enumeration needs a finite field".into()))?;
    let n = sys.n;
    let needed = saturating_pow(q, n);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // block p: pivot at p, q^(n-1-p) choices for the tail
    let blocks: Vec<u128> = (0..n).map(|p| saturating_pow(q, n - 1 - p)).collect();
    let total: u128 = blocks.iter().sum();
    let decode = |mut idx: u128| -> Vec<u128> {
        let mut digits = vec![0u128; n];
        for (p, &size) in blocks.iter().enumerate() {
            if idx < size {
                digits[p] = 1;
                for d in digits[p + 1..].iter_mut() {
                    *d = idx % q;
                    idx /= q;
                }
                break;
            }
            idx -= size;
        }
        digits
    };
    let to_vec = |digits: &[u128]| -> Vector { digits.iter().map(|&d| f.element(d)).collect() };
    // residues below 2^31 keep every product inside u64
    if let Some(p) = f.order().filter(|&o| f.degree() == 1 && o < 1 << 31).map(|o| o as u64) {
        let forms = sys.residues();
        return Ok(exec.filter_map_u128(total, |idx| {
            let digits = decode(idx);
            let ok = forms.iter().all(|form| {
                let mut acc = 0u64;
                for &(a, b, c) in form {
                    let (xa, xb) = (digits[a] as u64, digits[b] as u64);
                    if xa != 0 && xb != 0 {
                        acc = (acc + c * (xa * xb % p)) % p;
                    }
                }
                acc == 0
            });
            ok.then(|| to_vec(&digits))
        }));
    }
    Ok(exec.filter_map_u128(total, |idx| {
        let x = to_vec(&decode(idx));
        sys.vanishes(f, &x).then_some(x)
    }))
}

fn witness_candidates(f: &FieldSpec, n: usize, seed: u64, trials: usize) -> Vec<Vector> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vector> = (0..n).map(|i| unit_vector(f, n, i)).collect();
    for _ in 0..trials {
        let v: Vector = (0..n)
            .map(|_| if rng.gen_bool(0.5) { f.random(&mut rng, 2) } else { f.zero() })
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    out
}

fn search(f: &FieldSpec, sys: &Quadratic, opts: &RadicalOptions) -> Result<(Vec<Vector>, ModeLabel)> {
    match opts.mode {
        RadicalMode::Enumerate { budget } => Ok((
            enumerate_zeros(f, sys, budget, opts.exec)?,
            ModeLabel::Enumerate {
                field: f.to_string(),
                bound: budget,
            },
        )),
        RadicalMode::Witness { seed, trials } => {
            let cands = witness_candidates(f, sys.n, seed, trials);
            let hits = opts
                .exec
                .map(cands.len(), |i| sys.vanishes(f, &cands[i]).then(|| cands[i].clone()))
                .into_iter()
                .flatten()
                .collect();
            Ok((
                hits,
                ModeLabel::Witness {
                    seeds: vec![seed],
                    trials,
                    lower_bound: true,
                },
            ))
        }
        RadicalMode::Structural => Err(Error::Internal("structural mode has no element search".into())),
    }
}

/// Certificate for "no nonzero sandwich" or "every element a sandwich".
fn lie_certificate(l: &StructureAlgebra) -> Result<(bool, String)> {
    if l.is_abelian() {
        return Ok((true, "abelian: ad vanishes identically".into()));
    }
    if l.field().characteristic() == 0 && l.killing_form().rank() == l.dim() {
        return Ok((false, "Killing form nondegenerate in characteristic 0".into()));
    }
    Err(Error::Undecided(
        "no structural certificate applies; use enumerate or witness mode".into(),
    ))
}

fn pair_certificate(v: &JordanPair) -> Result<(bool, String)> {
    if v.is_zero_pair() {
        return Ok((true, "zero pair: every quadratic operator vanishes".into()));
    }
    let t = tkk_construct(v)?;
    if v.field().characteristic() == 0 && t.algebra.killing_form().rank() == t.algebra.dim() {
        return Ok((false, "Killing form of TKK(V) nondegenerate in characteristic 0".into()));
    }
    Err(Error::Undecided(
        "no structural certificate applies; use enumerate or witness mode".into(),
    ))
}

/// Elements `z` with `(ad z)^2 = 0`.
pub fn sandwich_elements(l: &StructureAlgebra, opts: &RadicalOptions) -> Result<Witnesses> {
    let f = l.field();
    if opts.mode == RadicalMode::Structural {
        let (all, certificate) = lie_certificate(l)?;
        let elements = if all {
            (0..l.dim()).map(|i| unit_vector(f, l.dim(), i)).collect()
        } else {
            Vec::new()
        };
        return Ok(Witnesses {
            elements,
            mode: ModeLabel::Structural { certificate },
        });
    }
    let (elements, mode) = search(f, &sandwich_system(l), opts)?;
    Ok(Witnesses { elements, mode })
}

/// Elements `x` of `V^s` with `Q_x = 0`.
pub fn absolute_zero_divisors(v: &JordanPair, s: Sign, opts: &RadicalOptions) -> Result<Witnesses> {
    let f = v.field();
    if opts.mode == RadicalMode::Structural {
        let (all, certificate) = pair_certificate(v)?;
        let elements = if all {
            (0..v.dim(s)).map(|i| unit_vector(f, v.dim(s), i)).collect()
        } else {
            Vec::new()
        };
        return Ok(Witnesses {
            elements,
            mode: ModeLabel::Structural { certificate },
        });
    }
    let (elements, mode) = search(f, &zero_divisor_system(v, s), opts)?;
    Ok(Witnesses { elements, mode })
}

fn ungraded(l: &StructureAlgebra) -> StructureAlgebra {
    let mut out = l.clone();
    out.set_grading(None);
    out
}

/// Saturation by ideals generated by sandwiches.
pub fn kostrikin_radical(l: &StructureAlgebra, opts: &RadicalOptions) -> Result<RadicalReport<Subspace>> {
    let f = l.field();
    let n = l.dim();
    if opts.mode == RadicalMode::Structural {
        let (all, certificate) = lie_certificate(l)?;
        return Ok(RadicalReport {
            radical: if all { Subspace::full(f, n) } else { Subspace::zero(f, n) },
            mode: ModeLabel::Structural { certificate },
            saturation_steps: usize::from(all && n > 0),
        });
    }
    // Gradedness of the radical is checked by callers, not assumed here.
    let base = ungraded(l);
    let mut current = Subspace::zero(f, n);
    let mut steps = 0;
    loop {
        let q = base.quotient_by_ideal(&current)?;
        let w = sandwich_elements(&q.algebra, opts)?;
        if w.elements.is_empty() || q.algebra.dim() == 0 {
            return Ok(RadicalReport {
                radical: current,
                mode: w.mode,
                saturation_steps: steps,
            });
        }
        let j = q.algebra.ideal_generated_by(&w.elements);
        current = q.preimage(&j);
        steps += 1;
    }
}

/// `V / I` with the quotient basis given by the non-pivot coordinates of `I`.
#[derive(Clone, Debug)]
pub struct PairQuotient {
    pub pair: JordanPair,
    pub complement: [Vec<usize>; 2],
    ideal: PairIdeal,
}

impl PairQuotient {
    pub fn project(&self, s: Sign, v: &[Scalar]) -> Vector {
        let r = self.ideal.part(s).reduce(v);
        self.complement[s.idx()].iter().map(|&c| r[c].clone()).collect()
    }

    pub fn lift(&self, s: Sign, v: &[Scalar]) -> Vector {
        let part = self.ideal.part(s);
        let mut out = vec![part.field().zero(); part.ambient()];
        for (a, &c) in self.complement[s.idx()].iter().enumerate() {
            out[c] = v[a].clone();
        }
        out
    }

    pub fn preimage(&self, j: &PairIdeal) -> PairIdeal {
        let up = |s: Sign| {
            let part = self.ideal.part(s);
            let lifted: Vec<Vector> = j.part(s).basis().iter().map(|v| self.lift(s, v)).collect();
            part.sum(&Subspace::span(part.field(), part.ambient(), lifted))
        };
        PairIdeal {
            plus: up(Sign::Plus),
            minus: up(Sign::Minus),
        }
    }

    pub fn ideal(&self) -> &PairIdeal {
        &self.ideal
    }
}

pub fn pair_quotient(v: &JordanPair, i: &PairIdeal) -> Result<PairQuotient> {
    if i.plus.ambient() != v.dim(Sign::Plus) || i.minus.ambient() != v.dim(Sign::Minus) {
        return Err(Error::Dimension("ideal lives in a different pair".into()));
    }
    if !v.is_ideal(i) {
        return Err(Error::NotAnIdeal("subspace pair is not closed under triple products".into()));
    }
    let f = v.field();
    let complement = [i.plus.complement_indices(), i.minus.complement_indices()];
    let mut q = PairQuotient {
        pair: JordanPair::new(f, complement[0].len(), complement[1].len()),
        complement,
        ideal: i.clone(),
    };
    let mut pair = q.pair.clone();
    for s in Sign::BOTH {
        let o = s.opposite();
        let (cs, co) = (&q.complement[s.idx()], &q.complement[o.idx()]);
        for (a, &ia) in cs.iter().enumerate() {
            for (b, &ib) in co.iter().enumerate() {
                for (c, &ic) in cs.iter().enumerate() {
                    let t = v.triple_basis_vec(s, ia, ib, ic);
                    pair.set_triple(s, a, b, c, &q.project(s, &t));
                }
            }
        }
    }
    q.pair = pair;
    Ok(q)
}

/// Saturation by pair ideals generated by absolute zero divisors.
pub fn mccrimmon_radical(v: &JordanPair, opts: &RadicalOptions) -> Result<RadicalReport<PairIdeal>> {
    if opts.mode == RadicalMode::Structural {
        let (all, certificate) = pair_certificate(v)?;
        return Ok(RadicalReport {
            radical: if all { PairIdeal::whole(v) } else { PairIdeal::zero(v) },
            mode: ModeLabel::Structural { certificate },
            saturation_steps: usize::from(all && v.dims() != [0, 0]),
        });
    }
    let mut current = PairIdeal::zero(v);
    let mut steps = 0;
    loop {
        let q = pair_quotient(v, &current)?;
        let plus = absolute_zero_divisors(&q.pair, Sign::Plus, opts)?;
        let minus = absolute_zero_divisors(&q.pair, Sign::Minus, opts)?;
        if plus.elements.is_empty() && minus.elements.is_empty() {
            return Ok(RadicalReport {
                radical: current,
                mode: plus.mode,
                saturation_steps: steps,
            });
        }
        let j = q.pair.ideal_generated(&plus.elements, &minus.elements);
        current = q.preimage(&j);
        steps += 1;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalCorrespondence {
    pub tkk_dim: usize,
    pub kostrikin_dim: usize,
    pub mccrimmon_dims: (usize, usize),
    pub predicted_dim: usize,
    /// `K(L)` equals the anti-image of `I(Mc(V))`.
    pub equal: bool,
    pub graded: bool,
    pub quotient_jordan_3graded: bool,
    pub quotient_pair_nondegenerate: bool,
    pub mode: ModeLabel,
    pub pass: bool,
    #[serde(skip)]
    pub kostrikin: Subspace,
    #[serde(skip)]
    pub predicted: Subspace,
}

/// Computes `K(TKK(V))` and the anti-image of the lift of `Mc(V)` and
/// compares them; also checks that `L/K(L)` is Jordan 3-graded with a
/// nondegenerate associated pair.
pub fn verify_radical_correspondence(v: &JordanPair, opts: &RadicalOptions) -> Result<RadicalCorrespondence> {
    let t = tkk_construct(v)?;
    let l = &t.algebra;
    let k = kostrikin_radical(l, opts)?;
    let mc = mccrimmon_radical(v, opts)?;
    let lifted = t.lift_ideal(&mc.radical)?;
    let predicted = l.anti_image(&lifted);
    let equal = predicted == k.radical;
    let graded = l.is_graded_subspace(&k.radical);
    let (jordan, nondegenerate) = if graded {
        let q = l.quotient_by_ideal(&k.radical)?;
        if q.algebra.dim() == 0 {
            (true, true)
        } else {
            let j = verify_jordan_3graded(&q.algebra)?.ok;
            let nd = j && {
                let w = associated_pair(&q.algebra)?;
                let r = mccrimmon_radical(&w, opts)?;
                r.radical.is_zero()
            };
            (j, nd)
        }
    } else {
        (false, false)
    };
    Ok(RadicalCorrespondence {
        tkk_dim: l.dim(),
        kostrikin_dim: k.radical.dim(),
        mccrimmon_dims: mc.radical.dims(),
        predicted_dim: predicted.dim(),
        equal,
        graded,
        quotient_jordan_3graded: jordan,
        quotient_pair_nondegenerate: nondegenerate,
        mode: k.mode,
        pass: equal && graded && jordan && nondegenerate,
        kostrikin: k.radical,
        predicted,
    })
}

#[derive(Clone, Debug)]
pub struct NondegenerateQuotient {
    pub quotient: Quotient,
    pub radical: RadicalReport<Subspace>,
    /// The quotient has no sandwiches in the same mode.
    pub certified: bool,
}

/// `L / K(L)`, graded when `K(L)` is.
pub fn nondegenerate_quotient(l: &StructureAlgebra, opts: &RadicalOptions) -> Result<NondegenerateQuotient> {
    let k = kostrikin_radical(l, opts)?;
    let quotient = if l.is_graded_subspace(&k.radical) {
        l.quotient_by_ideal(&k.radical)?
    } else {
        ungraded(l).quotient_by_ideal(&k.radical)?
    };
    let certified = quotient.algebra.dim() == 0 || sandwich_elements(&quotient.algebra, opts)?.elements.is_empty();
    Ok(NondegenerateQuotient {
        quotient,
        radical: k,
        certified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StronglyPrimeReport {
    /// No two nonzero ideals generated by quotient basis vectors have zero
    /// product.
    pub prime: bool,
    pub nondegenerate: bool,
    pub mode: ModeLabel,
}

impl StronglyPrimeReport {
    pub fn holds(&self) -> bool {
        self.prime && self.nondegenerate
    }
}

/// Checks a supplied ideal `P` for strong primeness of `V / P`.
pub fn check_strongly_prime(v: &JordanPair, p: &PairIdeal, opts: &RadicalOptions) -> Result<StronglyPrimeReport> {
    let q = pair_quotient(v, p)?;
    let w = &q.pair;
    let nonzero = w.dims() != [0, 0];
    let mut gens = Vec::new();
    for s in Sign::BOTH {
        for i in 0..w.dim(s) {
            let e = unit_vector(w.field(), w.dim(s), i);
            gens.push(match s {
                Sign::Plus => w.ideal_generated(&[e], &[]),
                Sign::Minus => w.ideal_generated(&[], &[e]),
            });
        }
    }
    let prime = nonzero
        && gens
            .iter()
            .all(|a| gens.iter().all(|b| !w.ideal_product(a, b).is_zero()));
    let r = mccrimmon_radical(w, opts)?;
    Ok(StronglyPrimeReport {
        prime,
        nondegenerate: nonzero && r.radical.is_zero(),
        mode: r.mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Matrix;

    fn f5() -> FieldSpec {
        FieldSpec::prime_field(5).unwrap()
    }

    fn enumerate() -> RadicalOptions {
        RadicalOptions::new(RadicalMode::Enumerate { budget: 10_000_000 })
    }

    fn mixed() -> JordanPair {
        JordanPair::rectangular(&f5(), 1, 1)
            .unwrap()
            .direct_sum(&JordanPair::zero_pair(&f5(), 1, 1))
            .unwrap()
    }

    /// Brute force over every vector, without projective reduction.
    fn naive_zero_divisors(v: &JordanPair, s: Sign) -> usize {
        let f = v.field();
        let (ns, no) = (v.dim(s), v.dim(s.opposite()));
        (0..5u128.pow(ns as u32))
            .filter(|&idx| {
                let x: Vector = (0..ns).map(|a| f.element(idx / 5u128.pow(a as u32) % 5)).collect();
                (0..no).all(|j| v.apply_q(s, &x, &unit_vector(f, no, j)).iter().all(Scalar::is_zero))
            })
            .count()
    }

    #[test]
    fn zero_divisor_examples() {
        let z = JordanPair::zero_pair(&f5(), 2, 1);
        assert_eq!(absolute_zero_divisors(&z, Sign::Plus, &enumerate()).unwrap().elements.len(), 6);
        let r = JordanPair::rectangular(&f5(), 1, 2).unwrap();
        for s in Sign::BOTH {
            assert!(absolute_zero_divisors(&r, s, &enumerate()).unwrap().elements.is_empty());
            assert_eq!(naive_zero_divisors(&r, s), 1);
        }
        let m = mixed();
        let w = absolute_zero_divisors(&m, Sign::Plus, &enumerate()).unwrap();
        assert_eq!(w.elements, vec![vec![f5().zero(), f5().one()]]);
        assert_eq!(naive_zero_divisors(&m, Sign::Plus), 5);
    }

    #[test]
    fn budget_is_enforced() {
        let r = JordanPair::rectangular(&f5(), 2, 2).unwrap();
        let opts = RadicalOptions::new(RadicalMode::Enumerate { budget: 100 });
        assert_eq!(
            absolute_zero_divisors(&r, Sign::Plus, &opts).unwrap_err(),
            Error::BudgetExceeded { needed: 625, budget: 100 }
        );
        let q = JordanPair::rectangular(&FieldSpec::rationals(), 1, 1).unwrap();
        assert!(absolute_zero_divisors(&q, Sign::Plus, &enumerate()).is_err());
    }

    #[test]
    fn sandwich_examples() {
        let ab = StructureAlgebra::new(&f5(), 2);
        let k = kostrikin_radical(&ab, &enumerate()).unwrap();
        assert!(k.radical.is_full());
        let s = StructureAlgebra::sl2(&f5());
        assert!(sandwich_elements(&s, &enumerate()).unwrap().elements.is_empty());
        assert!(kostrikin_radical(&s, &enumerate()).unwrap().radical.is_zero());
        let q = StructureAlgebra::sl2(&FieldSpec::rationals());
        let k = kostrikin_radical(&q, &RadicalOptions::new(RadicalMode::Structural)).unwrap();
        assert!(k.radical.is_zero());
        assert!(matches!(k.mode, ModeLabel::Structural { .. }));
        let h = StructureAlgebra::heisenberg(&FieldSpec::rationals());
        assert!(kostrikin_radical(&h, &RadicalOptions::new(RadicalMode::Structural)).is_err());
        // z is a sandwich, and so are x and y: ad(x)^2 sends y to [x, z] = 0
        let w = kostrikin_radical(&h, &RadicalOptions::new(RadicalMode::Witness { seed: 1, trials: 10 })).unwrap();
        assert!(w.radical.is_full());
        assert!(!w.mode.is_exact());
    }

    #[test]
    fn mccrimmon_examples() {
        let z = JordanPair::zero_pair(&f5(), 1, 1);
        let r = mccrimmon_radical(&z, &enumerate()).unwrap();
        assert_eq!((r.radical, r.saturation_steps), (PairIdeal::whole(&z), 1));
        let rect = JordanPair::rectangular(&f5(), 1, 2).unwrap();
        assert!(mccrimmon_radical(&rect, &enumerate()).unwrap().radical.is_zero());
        let m = mixed();
        let r = mccrimmon_radical(&m, &enumerate()).unwrap();
        assert_eq!(r.saturation_steps, 1);
        let zero_summand = PairIdeal {
            plus: Subspace::coordinate(&f5(), 2, [1]),
            minus: Subspace::coordinate(&f5(), 2, [1]),
        };
        assert_eq!(r.radical, zero_summand);
        // fixed point
        let q = pair_quotient(&m, &r.radical).unwrap();
        assert!(mccrimmon_radical(&q.pair, &enumerate()).unwrap().radical.is_zero());
        assert_eq!(q.pair, JordanPair::rectangular(&f5(), 1, 1).unwrap());
    }

    #[test]
    fn mccrimmon_of_direct_sum() {
        let a = JordanPair::rectangular(&f5(), 1, 2).unwrap();
        let b = JordanPair::zero_pair(&f5(), 1, 1);
        let r = mccrimmon_radical(&a.direct_sum(&b).unwrap(), &enumerate()).unwrap().radical;
        assert_eq!(r.plus, Subspace::coordinate(&f5(), 3, [2]));
        assert_eq!(r.minus, Subspace::coordinate(&f5(), 3, [2]));
    }

    #[test]
    fn correspondence() {
        for (v, k) in [
            (JordanPair::rectangular(&f5(), 1, 2).unwrap(), 0),
            (JordanPair::zero_pair(&f5(), 1, 1), 2),
            (mixed(), 2),
        ] {
            let r = verify_radical_correspondence(&v, &enumerate()).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.kostrikin_dim, k);
        }
    }

    #[test]
    fn quotients() {
        let t = tkk_construct(&mixed()).unwrap();
        let nq = nondegenerate_quotient(&t.algebra, &enumerate()).unwrap();
        assert!(nq.certified);
        let target = tkk_construct(&JordanPair::rectangular(&f5(), 1, 1).unwrap()).unwrap();
        assert_eq!(nq.quotient.algebra.dim(), 3);
        assert_eq!(nq.quotient.algebra.grading_dims(), target.algebra.grading_dims());
        // basis order survives: e, h, f of the rectangular summand
        let id: Vec<Vector> = (0..3).map(|i| unit_vector(&f5(), 3, i)).collect();
        assert!(nq.quotient.algebra.is_homomorphism(&target.algebra, &id));
        let ab = nondegenerate_quotient(&StructureAlgebra::new(&f5(), 3), &enumerate()).unwrap();
        assert_eq!(ab.quotient.algebra.dim(), 0);
    }

    #[test]
    fn strongly_prime() {
        let m = mixed();
        let zero_summand = mccrimmon_radical(&m, &enumerate()).unwrap().radical;
        assert!(check_strongly_prime(&m, &zero_summand, &enumerate()).unwrap().holds());
        assert!(!check_strongly_prime(&m, &PairIdeal::zero(&m), &enumerate()).unwrap().holds());
        let b = JordanPair::bilinear_form(&f5(), &Matrix::identity(&f5(), 3)).unwrap();
        assert!(check_strongly_prime(&b, &PairIdeal::zero(&b), &enumerate()).unwrap().holds());
    }

    #[test]
    fn strategies_agree() {
        let t = tkk_construct(&JordanPair::rectangular(&f5(), 1, 2).unwrap()).unwrap();
        let mut a = enumerate();
        a.exec = Exec::Sequential;
        let mut b = enumerate();
        b.exec = Exec::Parallel;
        let sa = sandwich_elements(&t.algebra, &a).unwrap().elements;
        assert_eq!(sa, sandwich_elements(&t.algebra, &b).unwrap().elements);
        assert!(sa.is_empty());
        let m = tkk_construct(&mixed()).unwrap();
        let sa = sandwich_elements(&m.algebra, &a).unwrap().elements;
        assert_eq!(sa, sandwich_elements(&m.algebra, &b).unwrap().elements);
        assert_eq!(sa.len(), 6);
    }
}
