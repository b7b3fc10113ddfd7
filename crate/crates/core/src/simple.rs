//! Simplicity certificates.
//!
//! Phase 1 works over the given field: the ideal generated by every basis
//! vector and by pseudorandom vectors must be everything, and `[a, a] = a`.
//! Phase 2 runs Norton's irreducibility test on the adjoint module, over the
//! field itself when it is finite and otherwise over a reduction modulo a
//! prime `p` that does not divide any structure-constant denominator. For a
//! p-integral lattice, irreducibility of the reduction rules out proper
//! ideals upstairs (an ideal meets the lattice in a saturated sublattice of
//! the same rank, whose reduction would be invariant).

use num_bigint::BigInt;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{spin, StructureAlgebra};
use crate::exactmath::field::{is_prime_u64, FieldKind};
use crate::exactmath::matrix::kernel_of_rows;
use crate::exactmath::{poly, FieldSpec, Matrix, Scalar, Subspace, Vector};

#[derive(Clone, Debug)]
pub struct SimplicityConfig {
    /// Extra pseudorandom seeds for phase 1.
    pub random_seeds: usize,
    pub seed: u64,
    /// Smallest reduction prime tried for infinite fields.
    pub prime_start: u64,
    pub max_primes: usize,
    /// Random enveloping-algebra elements tried per module.
    pub trials: usize,
}

impl Default for SimplicityConfig {
    fn default() -> Self {
        SimplicityConfig {
            random_seeds: 8,
            seed: 0x5eed,
            prime_start: 1009,
            max_primes: 6,
            trials: 40,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    /// `ideal` is a proper ideal over the input field (for abelian algebras
    /// of dimension 1 it is the derived algebra, which is zero).
    NotSimple { ideal: Subspace, reason: String },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityReport {
    pub verdict: String,
    pub phase1_ran: bool,
    pub phase1_passed: bool,
    pub phase2_ran: bool,
    /// Field over which Norton's test ran.
    pub phase2_field: Option<String>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub result: Simplicity,
}

impl SimplicityReport {
    pub fn is_simple(&self) -> bool {
        self.result == Simplicity::Simple
    }
}

enum Norton {
    Irreducible,
    Reducible(Subspace),
    Undecided,
}

pub fn is_simple(a: &StructureAlgebra) -> SimplicityReport {
    is_simple_with(a, &SimplicityConfig::default())
}

pub fn is_simple_with(a: &StructureAlgebra, cfg: &SimplicityConfig) -> SimplicityReport {
    let f = a.field().clone();
    let n = a.dim();
    let mut report = SimplicityReport {
        verdict: String::new(),
        phase1_ran: true,
        phase1_passed: false,
        phase2_ran: false,
        phase2_field: None,
        notes: Vec::new(),
        result: Simplicity::Inconclusive {
            reason: String::new(),
        },
    };
    let finish = |mut r: SimplicityReport, res: Simplicity| {
        r.verdict = match &res {
            Simplicity::Simple => "simple".into(),
            Simplicity::NotSimple { ideal, .. } => format!("not simple (ideal of dimension {})", ideal.dim()),
            Simplicity::Inconclusive { reason } => format!("inconclusive: {reason}"),
        };
        r.result = res;
        r
    };
    if n == 0 {
        return finish(
            report,
            Simplicity::Inconclusive {
                reason: "zero algebra".into(),
            },
        );
    }
    let derived = a.derived_algebra();
    if !derived.is_full() {
        return finish(
            report,
            Simplicity::NotSimple {
                ideal: derived,
                reason: "[a,a] is a proper ideal".into(),
            },
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seeds: Vec<Vector> = (0..n).map(|i| crate::exactmath::matrix::unit_vector(&f, n, i)).collect();
    for _ in 0..cfg.random_seeds {
        seeds.push((0..n).map(|_| f.random(&mut rng, 5)).collect());
    }
    for s in &seeds {
        if crate::exactmath::matrix::is_zero_vec(s) {
            continue;
        }
        let id = a.ideal_generated_by(std::slice::from_ref(s));
        if !id.is_full() {
            return finish(
                report,
                Simplicity::NotSimple {
                    ideal: id,
                    reason: "ideal generated by a single vector is proper".into(),
                },
            );
        }
    }
    report.phase1_passed = true;
    report.notes.push(format!("phase 1: {} seed vectors generate the whole algebra", seeds.len()));

    if f.is_finite() {
        report.phase2_ran = true;
        report.phase2_field = Some(f.to_string());
        let gens: Vec<Matrix> = (0..n).map(|i| a.ad_basis(i)).collect();
        return match norton(&f, &gens, cfg.trials, &mut rng) {
            Norton::Irreducible => finish(report, Simplicity::Simple),
            Norton::Reducible(s) => {
                debug_assert!(a.is_ideal(&s));
                finish(
                    report,
                    Simplicity::NotSimple {
                        ideal: s,
                        reason: "invariant subspace of the adjoint module".into(),
                    },
                )
            }
            Norton::Undecided => finish(
                report,
                Simplicity::Inconclusive {
                    reason: format!("Norton test undecided after {} trials", cfg.trials),
                },
            ),
        };
    }

    let mut denoms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (_, c) in a.bracket_basis(i, j) {
                f.denominators(c, &mut denoms);
            }
        }
    }
    field_denominators(&f, &mut denoms);
    let mut lcm = BigInt::from(1);
    for d in &denoms {
        lcm = lcm.lcm(d);
    }
    let mut tried = 0;
    let mut p = cfg.prime_start.max(5);
    while tried < cfg.max_primes && p < (1 << 31) {
        if !is_prime_u64(p) || (&lcm % BigInt::from(p)) == BigInt::from(0) {
            p += 1;
            continue;
        }
        let Some(target) = reduce_field(&f, p) else {
            report.notes.push(format!("p = {p}: field does not stay a field"));
            p += 1;
            tried += 1;
            continue;
        };
        tried += 1;
        let reduced = a.map_scalars(&target, |c| f.reduce_scalar(&target, c));
        let Ok(reduced) = reduced else {
            p += 1;
            continue;
        };
        report.phase2_ran = true;
        let gens: Vec<Matrix> = (0..n).map(|i| reduced.ad_basis(i)).collect();
        match norton(&target, &gens, cfg.trials, &mut rng) {
            Norton::Irreducible => {
                report.phase2_field = Some(target.to_string());
                report
                    .notes
                    .push(format!("phase 2: adjoint module irreducible over the reduction modulo {p}"));
                return finish(report, Simplicity::Simple);
            }
            Norton::Reducible(_) => report
                .notes
                .push(format!("p = {p}: reduction reducible (not a certificate upstairs)")),
            Norton::Undecided => report.notes.push(format!("p = {p}: Norton test undecided")),
        }
        p += 1;
    }
    finish(
        report,
        Simplicity::Inconclusive {
            reason: format!("no decisive reduction among {tried} primes"),
        },
    )
}

fn field_denominators(f: &FieldSpec, out: &mut Vec<BigInt>) {
    if let (Some(b), Some(m)) = (f.base(), f.minpoly()) {
        for c in m {
            b.denominators(c, out);
        }
        field_denominators(b, out);
    }
}

/// The tower over F_p matching a tower over Q, when every reduced minimal
/// polynomial stays irreducible.
pub(crate) fn reduce_field(f: &FieldSpec, p: u64) -> Option<FieldSpec> {
    match f.kind() {
        FieldKind::Rationals => Some(FieldSpec::prime_unchecked(p)),
        FieldKind::Prime(_) => None,
        FieldKind::Extension(_) => {
            let base = f.base().unwrap();
            let tb = reduce_field(base, p)?;
            let m: Vec<Scalar> = f
                .minpoly()
                .unwrap()
                .iter()
                .map(|c| base.reduce_scalar(&tb, c))
                .collect::<Result<_, _>>()
                .ok()?;
            if poly::is_irreducible(&tb, &m).ok()? {
                Some(FieldSpec::extension_unchecked(&tb, m))
            } else {
                None
            }
        }
    }
}

fn transpose_all(gens: &[Matrix]) -> Vec<Matrix> {
    gens.iter().map(Matrix::transpose).collect()
}

fn module_spin(f: &FieldSpec, gens: &[Matrix], v: Vector) -> Subspace {
    let n = v.len();
    spin(f, n, vec![v], |i, w| gens[i].mul_vec(w), gens.len())
}

/// Norton's irreducibility test for the module generated by `gens` over a
/// finite field.
fn norton(f: &FieldSpec, gens: &[Matrix], trials: usize, rng: &mut ChaCha8Rng) -> Norton {
    let n = gens[0].rows();
    let q = f.order().expect("finite field required");
    let gens_t = transpose_all(gens);
    let combo = |rng: &mut ChaCha8Rng| {
        let mut m = Matrix::zeros(f, n, n);
        for g in gens {
            m = m.add(&g.scale(&f.random(rng, 0)));
        }
        m
    };
    for _ in 0..trials {
        let theta = combo(rng).add(&combo(rng).mul(&combo(rng)));
        let chi = theta.charpoly();
        let Some(phi) = poly::smallest_irreducible_factor(f, &chi, q, rng) else {
            continue;
        };
        let d = poly::degree(&phi).unwrap();
        let phi_theta = theta.eval_poly(&phi);
        let ker = phi_theta.kernel();
        let Some(v) = ker.basis().first().cloned() else {
            continue;
        };
        let s = module_spin(f, gens, v);
        if !s.is_full() {
            return Norton::Reducible(s);
        }
        let ker_t = phi_theta.transpose().kernel();
        let w = ker_t.basis()[0].clone();
        let t = module_spin(f, &gens_t, w);
        if !t.is_full() {
            // The annihilator of an invariant subspace of the dual.
            let ann = kernel_of_rows(f, n, t.basis().to_vec());
            return Norton::Reducible(ann);
        }
        if ker.dim() == d {
            return Norton::Irreducible;
        }
    }
    Norton::Undecided
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_simple_over_q_and_f5() {
        let r = is_simple(&StructureAlgebra::sl2(&FieldSpec::rationals()));
        assert!(r.is_simple(), "{:?}", r);
        assert!(r.phase1_passed && r.phase2_ran);
        let f5 = FieldSpec::prime_field(5).unwrap();
        assert!(is_simple(&StructureAlgebra::sl2(&f5)).is_simple());
    }

    #[test]
    fn abelian_and_sums_not_simple() {
        let q = FieldSpec::rationals();
        let r = is_simple(&StructureAlgebra::new(&q, 2));
        assert!(matches!(r.result, Simplicity::NotSimple { .. }));
        let s = StructureAlgebra::sl2(&q);
        let ss = s.direct_sum(&s).unwrap();
        match is_simple(&ss).result {
            Simplicity::NotSimple { ideal, .. } => {
                assert_eq!(ideal.dim(), 3);
                assert!(ss.is_ideal(&ideal));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sum_over_finite_field_caught_by_norton() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let s = StructureAlgebra::sl2(&f7);
        let ss = s.direct_sum(&s).unwrap();
        assert!(matches!(is_simple(&ss).result, Simplicity::NotSimple { .. }));
    }

    #[test]
    fn gaussian_sl2_over_q_is_simple_not_central() {
        // sl(2, Q(i)) as a 6-dimensional Q-algebra: basis (e, h, f, ie, ih, if).
        let q = FieldSpec::rationals();
        let base = StructureAlgebra::sl2(&q);
        let mut a = StructureAlgebra::new(&q, 6);
        for i in 0..3 {
            for j in 0..3 {
                for (k, c) in base.bracket_basis(i, j) {
                    // [x, y] = z, [ix, y] = [x, iy] = iz, [ix, iy] = -z
                    a.add_structure_constant(i, j, *k, c);
                    a.add_structure_constant(i + 3, j, k + 3, c);
                    a.add_structure_constant(i, j + 3, k + 3, c);
                    a.add_structure_constant(i + 3, j + 3, *k, &q.neg(c));
                }
            }
        }
        assert!(a.verify_lie().ok);
        assert!(is_simple(&a).is_simple());
    }
}
