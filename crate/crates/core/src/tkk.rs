//! The Tits-Kantor-Koecher construction `V+ + IDer V + V-`, the associated
//! pair of a 3-graded algebra, and the graded ideal correspondences.

use serde::Serialize;

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::matrix::{is_zero_vec, kernel_of_rows, unit_vector, Echelon};
use crate::exactmath::{Coordinates, FieldSpec, Matrix, Scalar, Subspace, Vector};
use crate::jordan::{JordanPair, PairIdeal};
use crate::sign::Sign;

/// `TKK(V)` with basis `V+` (in order), then the degree-zero basis, then `V-`.
#[derive(Clone, Debug)]
pub struct TkkAlgebra {
    pub algebra: StructureAlgebra,
    pub pair: JordanPair,
    /// Degree-zero basis as pairs `(d+, d-)` of operators on `V+`, `V-`.
    pub derivations: Vec<(Matrix, Matrix)>,
}

fn flatten(d: &(Matrix, Matrix)) -> Vector {
    let mut v = Vec::new();
    for m in [&d.0, &d.1] {
        for i in 0..m.rows() {
            v.extend_from_slice(m.row(i));
        }
    }
    v
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b).sub(&b.mul(a))
}

impl TkkAlgebra {
    pub fn n_plus(&self) -> usize {
        self.pair.dim(Sign::Plus)
    }
    pub fn n_minus(&self) -> usize {
        self.pair.dim(Sign::Minus)
    }
    pub fn n_zero(&self) -> usize {
        self.derivations.len()
    }

    pub fn field(&self) -> &FieldSpec {
        self.pair.field()
    }

    /// Algebra index of basis vector `i` of `V^s`.
    pub fn index(&self, s: Sign, i: usize) -> usize {
        match s {
            Sign::Plus => i,
            Sign::Minus => self.n_plus() + self.n_zero() + i,
        }
    }

    pub fn embed(&self, s: Sign, v: &[Scalar]) -> Vector {
        let mut out = vec![self.field().zero(); self.algebra.dim()];
        for (i, c) in v.iter().enumerate() {
            out[self.index(s, i)] = c.clone();
        }
        out
    }

    /// Component of `x` in `V^s`.
    pub fn project(&self, s: Sign, x: &[Scalar]) -> Vector {
        (0..self.pair.dim(s)).map(|i| x[self.index(s, i)].clone()).collect()
    }

    pub fn wing(&self, s: Sign) -> Subspace {
        Subspace::coordinate(self.field(), self.algebra.dim(), (0..self.pair.dim(s)).map(|i| self.index(s, i)))
    }

    /// `V+ + V-` inside the algebra.
    pub fn wings(&self) -> Subspace {
        self.wing(Sign::Plus).sum(&self.wing(Sign::Minus))
    }

    /// Projection of a subspace of the algebra onto `V+` and `V-`.
    pub fn pi(&self, i: &Subspace) -> PairIdeal {
        let f = self.field();
        PairIdeal {
            plus: Subspace::span(f, self.n_plus(), i.basis().iter().map(|v| self.project(Sign::Plus, v)).collect::<Vec<_>>()),
            minus: Subspace::span(f, self.n_minus(), i.basis().iter().map(|v| self.project(Sign::Minus, v)).collect::<Vec<_>>()),
        }
    }

    /// `I(U) = U+ + ([U+, V-] + [V+, U-]) + U-`, verified to be an ideal.
    pub fn lift_ideal(&self, u: &PairIdeal) -> Result<Subspace> {
        let f = self.field().clone();
        let mut e = Echelon::new(&f, self.algebra.dim());
        for v in u.plus.basis() {
            e.insert(self.embed(Sign::Plus, v));
        }
        for v in u.minus.basis() {
            e.insert(self.embed(Sign::Minus, v));
        }
        for v in u.plus.basis() {
            let x = self.embed(Sign::Plus, v);
            for j in 0..self.n_minus() {
                e.insert(self.algebra.bracket(&x, &unit_vector(&f, self.algebra.dim(), self.index(Sign::Minus, j))));
            }
        }
        for v in u.minus.basis() {
            let y = self.embed(Sign::Minus, v);
            for i in 0..self.n_plus() {
                e.insert(self.algebra.bracket(&unit_vector(&f, self.algebra.dim(), self.index(Sign::Plus, i)), &y));
            }
        }
        let s = e.into_subspace();
        if !self.algebra.is_ideal(&s) {
            return Err(Error::NotAnIdeal("lifted subspace is not bracket-closed (input is not a pair ideal)".into()));
        }
        Ok(s)
    }

    /// `I~ = I(V * (pi+(I), pi-(I)))` together with its certified properties.
    pub fn tilde_ideal(&self, i: &Subspace) -> Result<TildeIdeal> {
        if !self.algebra.is_ideal(i) {
            return Err(Error::NotAnIdeal("tilde construction needs an ideal".into()));
        }
        let p = self.pi(i);
        let w = self.pair.v_star(&p);
        let tilde = self.lift_ideal(&w)?;
        let contained = i.contains_subspace(&tilde);
        let meet = tilde.intersection(&self.wings());
        let w_embedded = Subspace::span(
            self.field(),
            self.algebra.dim(),
            w.plus
                .basis()
                .iter()
                .map(|v| self.embed(Sign::Plus, v))
                .chain(w.minus.basis().iter().map(|v| self.embed(Sign::Minus, v)))
                .collect::<Vec<_>>(),
        );
        let pt = self.pi(&tilde);
        let pi_embedded = Subspace::span(
            self.field(),
            self.algebra.dim(),
            pt.plus
                .basis()
                .iter()
                .map(|v| self.embed(Sign::Plus, v))
                .chain(pt.minus.basis().iter().map(|v| self.embed(Sign::Minus, v)))
                .collect::<Vec<_>>(),
        );
        Ok(TildeIdeal {
            contained_in_input: contained,
            meets_wings_in_product: meet == w_embedded,
            meets_wings_in_projection: meet == pi_embedded,
            product: w,
            ideal: tilde,
        })
    }

    /// For an ideal `I`: `I cap V` lies in `pi(I)`, and triple products of
    /// `pi(I)` land in `I cap V`.
    pub fn check_pi_containment(&self, i: &Subspace) -> bool {
        let p = self.pi(i);
        let meet = i.intersection(&self.wings());
        for v in meet.basis() {
            for s in Sign::BOTH {
                if !p.part(s).contains(&self.project(s, v)) {
                    return false;
                }
            }
        }
        for s in Sign::BOTH {
            let o = s.opposite();
            for x in p.part(s).basis() {
                for y in p.part(o).basis() {
                    for z in p.part(s).basis() {
                        let t = self.pair.triple(s, x, y, z);
                        if !i.contains(&self.embed(s, &t)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct TildeIdeal {
    pub ideal: Subspace,
    /// `V * (pi+(I), pi-(I))`
    pub product: PairIdeal,
    pub contained_in_input: bool,
    pub meets_wings_in_product: bool,
    pub meets_wings_in_projection: bool,
}

impl TildeIdeal {
    pub fn certified(&self) -> bool {
        self.contained_in_input && self.meets_wings_in_product && self.meets_wings_in_projection
    }
}

/// Inner derivation `delta(x, y) = (D(x,y), -D(y,x))`.
pub fn delta(v: &JordanPair, x: &[Scalar], y: &[Scalar]) -> (Matrix, Matrix) {
    let f = v.field();
    (
        v.d_operator(Sign::Plus, x, y),
        v.d_operator(Sign::Minus, y, x).scale(&f.from_i64(-1)),
    )
}

/// Basis of the derivation algebra `Der V` as flattened `(d+, d-)`.
pub fn derivation_algebra(v: &JordanPair) -> Vec<(Matrix, Matrix)> {
    let f = v.field();
    let [np, nm] = v.dims();
    let unknowns = np * np + nm * nm;
    // Variable index of entry (r, c) of d^s.
    let var = |s: Sign, r: usize, c: usize| match s {
        Sign::Plus => r * np + c,
        Sign::Minus => np * np + r * nm + c,
    };
    let mut rows = Vec::new();
    for s in Sign::BOTH {
        let o = s.opposite();
        let (ns, no) = (v.dim(s), v.dim(o));
        for i in 0..ns {
            for j in 0..no {
                for k in 0..ns {
                    // d{b_i,b_j,b_k} - {d b_i, b_j, b_k} - {b_i, d b_j, b_k} - {b_i, b_j, d b_k} = 0
                    let mut eq = vec![vec![f.zero(); unknowns]; ns];
                    for (l, c) in v.triple_basis(s, i, j, k) {
                        for r in 0..ns {
                            let x = var(s, r, *l);
                            eq[r][x] = f.add(&eq[r][x], c);
                        }
                    }
                    for a in 0..ns {
                        for (l, c) in v.triple_basis(s, a, j, k) {
                            let x = var(s, a, i);
                            eq[*l][x] = f.sub(&eq[*l][x], c);
                        }
                        for (l, c) in v.triple_basis(s, i, j, a) {
                            let x = var(s, a, k);
                            eq[*l][x] = f.sub(&eq[*l][x], c);
                        }
                    }
                    for b in 0..no {
                        for (l, c) in v.triple_basis(s, i, b, k) {
                            let x = var(o, b, j);
                            eq[*l][x] = f.sub(&eq[*l][x], c);
                        }
                    }
                    rows.extend(eq);
                }
            }
        }
    }
    let ker = kernel_of_rows(f, unknowns, rows);
    ker.basis()
        .iter()
        .map(|w| {
            let dp = Matrix::from_rows(f, np, w[..np * np].chunks(np.max(1)).map(|c| c.to_vec()).collect());
            let dm = Matrix::from_rows(f, nm, w[np * np..].chunks(nm.max(1)).map(|c| c.to_vec()).collect());
            (
                if np == 0 { Matrix::zeros(f, 0, 0) } else { dp },
                if nm == 0 { Matrix::zeros(f, 0, 0) } else { dm },
            )
        })
        .collect()
}

pub fn tkk_construct(v: &JordanPair) -> Result<TkkAlgebra> {
    let report = v.verify();
    if !report.ok {
        return Err(Error::PairAxiomsFail(format!(
            "{} outer-symmetry and {} operator-identity violations",
            report.outer_symmetry.len(),
            report.operator_identity.len()
        )));
    }
    let f = v.field().clone();
    let [np, nm] = v.dims();
    let flat_len = np * np + nm * nm;

    // Degree-zero basis: inner derivations in lexicographic discovery order,
    // then commutators until the span is closed.
    let mut ech = Echelon::new(&f, flat_len);
    let mut basis: Vec<(Matrix, Matrix)> = Vec::new();
    for i in 0..np {
        for j in 0..nm {
            let d = delta(v, &unit_vector(&f, np, i), &unit_vector(&f, nm, j));
            if ech.insert(flatten(&d)) {
                basis.push(d);
            }
        }
    }
    let mut checked = 0;
    while checked < basis.len() {
        let a = basis[checked].clone();
        for b in 0..=checked {
            let c = (commutator(&a.0, &basis[b].0), commutator(&a.1, &basis[b].1));
            if ech.insert(flatten(&c)) {
                basis.push(c);
            }
        }
        checked += 1;
    }
    let flat: Vec<Vector> = basis.iter().map(flatten).collect();
    let coords = Coordinates::new(&f, flat_len, &flat).ok_or_else(|| Error::Internal("dependent degree-zero basis".into()))?;
    let zero_span = ech.into_subspace();

    // [Der V, span] must stay inside the span.
    for d in derivation_algebra(v) {
        for b in &basis {
            let c = (commutator(&d.0, &b.0), commutator(&d.1, &b.1));
            if !zero_span.contains(&flatten(&c)) {
                return Err(Error::DerivationClosure(
                    "a derivation does not normalize the span of inner derivations".into(),
                ));
            }
        }
    }

    let n0 = basis.len();
    let dim = np + n0 + nm;
    let zidx = |a: usize| np + a;
    let midx = |j: usize| np + n0 + j;
    let mut alg = StructureAlgebra::new(&f, dim);
    let lift_zero = |c: &[Scalar]| {
        let mut out = vec![f.zero(); dim];
        for (a, x) in c.iter().enumerate() {
            out[zidx(a)] = x.clone();
        }
        out
    };
    for i in 0..np {
        for j in 0..nm {
            let d = delta(v, &unit_vector(&f, np, i), &unit_vector(&f, nm, j));
            let c = coords.coords(&flatten(&d)).ok_or_else(|| Error::Internal("inner derivation outside span".into()))?;
            alg.set_bracket(i, midx(j), &lift_zero(&c));
        }
    }
    for (a, (dp, dm)) in basis.iter().enumerate() {
        for i in 0..np {
            let mut out = vec![f.zero(); dim];
            for r in 0..np {
                out[r] = dp.get(r, i).clone();
            }
            alg.set_bracket(zidx(a), i, &out);
        }
        for j in 0..nm {
            let mut out = vec![f.zero(); dim];
            for r in 0..nm {
                out[midx(r)] = dm.get(r, j).clone();
            }
            alg.set_bracket(zidx(a), midx(j), &out);
        }
        for b in a + 1..n0 {
            let c = (commutator(dp, &basis[b].0), commutator(dm, &basis[b].1));
            let co = coords
                .coords(&flatten(&c))
                .ok_or_else(|| Error::Internal("degree-zero span not closed".into()))?;
            alg.set_bracket(zidx(a), zidx(b), &lift_zero(&co));
        }
    }
    let grading = (0..dim)
        .map(|k| if k < np { 1 } else if k < np + n0 { 0 } else { -1 })
        .collect();
    let alg = alg.with_grading(grading)?;
    Ok(TkkAlgebra {
        algebra: alg,
        pair: v.clone(),
        derivations: basis,
    })
}

/// The pair `(L_1, L_-1)` with `{x, y, z} = [[x, y], z]`; bases are the
/// degree-1 and degree-(-1) basis vectors in index order.
pub fn associated_pair(l: &StructureAlgebra) -> Result<JordanPair> {
    if !l.is_three_graded() {
        return Err(Error::NotThreeGraded("needs a grading with support in {-1,0,1}".into()));
    }
    let f = l.field();
    let n = l.dim();
    let comps = [l.component(1), l.component(-1)];
    let mut v = JordanPair::new(f, comps[0].len(), comps[1].len());
    for s in Sign::BOTH {
        let (cs, co) = (&comps[s.idx()], &comps[s.opposite().idx()]);
        for (i, &bi) in cs.iter().enumerate() {
            for (j, &bj) in co.iter().enumerate() {
                let xy = l.bracket_basis_vec(bi, bj);
                if is_zero_vec(&xy) {
                    continue;
                }
                for (k, &bk) in cs.iter().enumerate() {
                    let t = l.bracket(&xy, &unit_vector(f, n, bk));
                    let coords: Vector = cs.iter().map(|&c| t[c].clone()).collect();
                    v.set_triple(s, i, j, k, &coords);
                }
            }
        }
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct JordanGradedReport {
    pub ok: bool,
    /// A degree-zero basis vector outside `[L_1, L_-1]`.
    pub witness: Option<usize>,
    pub span_dim: usize,
    pub degree_zero_dim: usize,
}

pub fn verify_jordan_3graded(l: &StructureAlgebra) -> Result<JordanGradedReport> {
    if !l.is_three_graded() {
        return Err(Error::NotThreeGraded("needs a grading with support in {-1,0,1}".into()));
    }
    let span = l.bracket_spaces(&l.component_space(1), &l.component_space(-1));
    let zero = l.component(0);
    let witness = zero.iter().copied().find(|&k| !span.contains(&unit_vector(l.field(), l.dim(), k)));
    Ok(JordanGradedReport {
        ok: witness.is_none(),
        witness,
        span_dim: span.dim(),
        degree_zero_dim: zero.len(),
    })
}

/// `C_V = {x in L_0 : [x, L_1] = 0 = [x, L_-1]}` for a Jordan 3-graded algebra.
pub fn c_v(l: &StructureAlgebra) -> Result<Subspace> {
    let rep = verify_jordan_3graded(l)?;
    if !rep.ok {
        return Err(Error::NotThreeGraded("not Jordan 3-graded: [L_1, L_-1] misses part of L_0".into()));
    }
    let f = l.field();
    let n = l.dim();
    let zero = l.component(0);
    let wings: Vec<usize> = l.component(1).into_iter().chain(l.component(-1)).collect();
    let mut rows = Vec::new();
    for &w in &wings {
        for k in 0..n {
            let mut r = vec![f.zero(); zero.len()];
            for (a, &z) in zero.iter().enumerate() {
                r[a] = l.structure_constant(z, w, k);
            }
            rows.push(r);
        }
    }
    let ker = kernel_of_rows(f, zero.len(), rows);
    let cv = Subspace::span(
        f,
        n,
        ker.basis()
            .iter()
            .map(|c| {
                let mut v = vec![f.zero(); n];
                for (a, &z) in zero.iter().enumerate() {
                    v[z] = c[a].clone();
                }
                v
            })
            .collect::<Vec<_>>(),
    );
    debug_assert_eq!(cv, l.center().intersection(&l.component_space(0)));
    Ok(cv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn zero_pair_tkk_is_abelian() {
        let t = tkk_construct(&JordanPair::zero_pair(&q(), 1, 1)).unwrap();
        assert_eq!(t.algebra.dim(), 2);
        assert!(t.algebra.is_abelian());
    }

    #[test]
    fn rect_1_1_is_sl2() {
        let f = q();
        let t = tkk_construct(&JordanPair::rectangular(&f, 1, 1).unwrap()).unwrap();
        // e = embed+(1), h = delta(1,1), f = embed-(1): [e,f] = h, [h,e] = 2e, [h,f] = -2f.
        assert_eq!(t.algebra, StructureAlgebra::sl2(&f));
    }

    #[test]
    fn rect_1_2_dimensions() {
        let f = q();
        let t = tkk_construct(&JordanPair::rectangular(&f, 1, 2).unwrap()).unwrap();
        assert_eq!(t.algebra.dim(), 8);
        assert_eq!(t.algebra.grading_dims(), (2, 4, 2));
        assert!(t.algebra.verify_lie().ok);
        assert!(t.algebra.killing_form().inverse().is_some());
        assert!(verify_jordan_3graded(&t.algebra).unwrap().ok);
        assert_eq!(associated_pair(&t.algebra).unwrap(), t.pair);
    }

    #[test]
    fn q_from_brackets() {
        let f = q();
        let v = JordanPair::bilinear_form(&f, &Matrix::identity(&f, 3)).unwrap();
        let t = tkk_construct(&v).unwrap();
        assert_eq!(t.algebra.dim(), 10);
        let half = f.inv(&f.from_i64(2)).unwrap();
        for s in Sign::BOTH {
            let o = s.opposite();
            for i in 0..3 {
                for j in 0..3 {
                    let x = t.embed(s, &unit_vector(&f, 3, i));
                    let y = t.embed(o, &unit_vector(&f, 3, j));
                    let lhs: Vector = t.algebra.bracket(&t.algebra.bracket(&x, &y), &x).iter().map(|c| f.mul(c, &half)).collect();
                    let rhs = t.embed(s, &v.apply_q(s, &unit_vector(&f, 3, i), &unit_vector(&f, 3, j)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn sl2_associated_pair() {
        let f = q();
        let v = associated_pair(&StructureAlgebra::sl2(&f)).unwrap();
        assert_eq!(v.triple_basis_vec(Sign::Plus, 0, 0, 0), vec![f.from_i64(2)]);
        let ab = StructureAlgebra::new(&f, 3).with_grading(vec![1, 0, -1]).unwrap();
        assert!(associated_pair(&ab).unwrap().is_zero_pair());
    }

    #[test]
    fn not_jordan_graded_with_extra_center() {
        let f = q();
        let s = StructureAlgebra::sl2(&f);
        let line = StructureAlgebra::new(&f, 1).with_grading(vec![0]).unwrap();
        let sum = s.direct_sum(&line).unwrap();
        let r = verify_jordan_3graded(&sum).unwrap();
        assert!(!r.ok);
        assert_eq!(r.witness, Some(3));
    }

    #[test]
    fn heisenberg_central_extension() {
        let f = q();
        let h = StructureAlgebra::heisenberg(&f);
        let cv = c_v(&h).unwrap();
        assert_eq!(cv, Subspace::coordinate(&f, 3, [2]));
        let quo = h.quotient_by_ideal(&cv).unwrap().algebra;
        let t = tkk_construct(&JordanPair::zero_pair(&f, 1, 1)).unwrap();
        assert_eq!(quo.dim(), t.algebra.dim());
        assert!(quo.is_abelian() && t.algebra.is_abelian());
        let t12 = tkk_construct(&JordanPair::rectangular(&f, 1, 2).unwrap()).unwrap();
        assert!(c_v(&t12.algebra).unwrap().is_zero());
    }

    #[test]
    fn ideal_lifts_and_tilde() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let v = JordanPair::rectangular(&f5, 1, 1)
            .unwrap()
            .direct_sum(&JordanPair::zero_pair(&f5, 1, 1))
            .unwrap();
        let t = tkk_construct(&v).unwrap();
        assert_eq!(t.algebra.dim(), 5);
        let whole = t.lift_ideal(&PairIdeal::whole(&v)).unwrap();
        assert!(whole.is_full());
        assert!(t.lift_ideal(&PairIdeal::zero(&v)).unwrap().is_zero());
        let rect = v.ideal_generated(&[unit_vector(&f5, 2, 0)], &[]);
        let lifted = t.lift_ideal(&rect).unwrap();
        assert_eq!(lifted.dim(), 3);
        let til = t.tilde_ideal(&Subspace::full(&f5, 5)).unwrap();
        assert!(til.certified());
        assert_eq!(til.ideal, lifted);
        let center = t.algebra.center();
        assert_eq!(center.dim(), 2);
        let tc = t.tilde_ideal(&center).unwrap();
        assert!(tc.certified());
        assert!(tc.ideal.is_zero());
        for i in [&whole, &lifted, &center] {
            assert!(t.check_pi_containment(i));
        }
    }
}
