//! Finite-dimensional Jordan pairs in the trilinear presentation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::matrix::{is_zero_vec, unit_vector, Echelon};
use crate::exactmath::{FieldSpec, Matrix, Scalar, Subspace, Vector};
use crate::par::Exec;
use crate::sign::Sign;

/// A Jordan pair `(V+, V-)` with products `{x, y, z}` for `x, z` in `V^s`
/// and `y` in `V^-s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanPair {
    field: FieldSpec,
    dims: [usize; 2],
    /// `triples[s][(i * n_opp + j) * n_s + k]`: sparse `{b_i, b_j, b_k}`.
    triples: [Vec<Vec<(usize, Scalar)>>; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIdeal {
    pub plus: Subspace,
    pub minus: Subspace,
}

impl PairIdeal {
    pub fn part(&self, s: Sign) -> &Subspace {
        match s {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn zero(v: &JordanPair) -> Self {
        PairIdeal {
            plus: Subspace::zero(&v.field, v.dims[0]),
            minus: Subspace::zero(&v.field, v.dims[1]),
        }
    }

    pub fn whole(v: &JordanPair) -> Self {
        PairIdeal {
            plus: Subspace::full(&v.field, v.dims[0]),
            minus: Subspace::full(&v.field, v.dims[1]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.plus.dim(), self.minus.dim())
    }

    pub fn contains(&self, other: &PairIdeal) -> bool {
        self.plus.contains_subspace(&other.plus) && self.minus.contains_subspace(&other.minus)
    }

    pub fn intersection(&self, other: &PairIdeal) -> PairIdeal {
        PairIdeal {
            plus: self.plus.intersection(&other.plus),
            minus: self.minus.intersection(&other.minus),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub ok: bool,
    /// `(sign, i, j, k)` with `{b_i, b_j, b_k} != {b_k, b_j, b_i}`.
    pub outer_symmetry: Vec<(Sign, usize, usize, usize)>,
    /// `(sign, x, y, u, v)` failing the derivation identity for `D`.
    pub operator_identity: Vec<(Sign, usize, usize, usize, usize)>,
}

impl JordanPair {
    /// The zero pair.
    pub fn new(field: &FieldSpec, n_plus: usize, n_minus: usize) -> Self {
        let dims = [n_plus, n_minus];
        JordanPair {
            field: field.clone(),
            dims,
            triples: [
                vec![Vec::new(); n_plus * n_minus * n_plus],
                vec![Vec::new(); n_minus * n_plus * n_minus],
            ],
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dims(&self) -> [usize; 2] {
        self.dims
    }

    pub fn dim(&self, s: Sign) -> usize {
        self.dims[s.idx()]
    }

    fn index(&self, s: Sign, i: usize, j: usize, k: usize) -> usize {
        let ns = self.dim(s);
        let no = self.dim(s.opposite());
        (i * no + j) * ns + k
    }

    pub fn triple_basis(&self, s: Sign, i: usize, j: usize, k: usize) -> &[(usize, Scalar)] {
        &self.triples[s.idx()][self.index(s, i, j, k)]
    }

    pub fn triple_basis_vec(&self, s: Sign, i: usize, j: usize, k: usize) -> Vector {
        let mut v = vec![self.field.zero(); self.dim(s)];
        for (l, c) in self.triple_basis(s, i, j, k) {
            v[*l] = c.clone();
        }
        v
    }

    /// Sets `{b_i, b_j, b_k}` in sign `s` (no symmetrization).
    pub fn set_triple(&mut self, s: Sign, i: usize, j: usize, k: usize, value: &[Scalar]) {
        let idx = self.index(s, i, j, k);
        self.triples[s.idx()][idx] = value
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l, c.clone()))
            .collect();
    }

    /// Adds `c b_l` to `{b_i, b_j, b_k}` in sign `s`.
    pub fn add_triple_constant(&mut self, s: Sign, i: usize, j: usize, k: usize, l: usize, c: &Scalar) {
        let idx = self.index(s, i, j, k);
        let f = self.field.clone();
        let entry = &mut self.triples[s.idx()][idx];
        match entry.binary_search_by_key(&l, |(ll, _)| *ll) {
            Ok(pos) => {
                let v = f.add(&entry[pos].1, c);
                if v.is_zero() {
                    entry.remove(pos);
                } else {
                    entry[pos].1 = v;
                }
            }
            Err(pos) => {
                if !c.is_zero() {
                    entry.insert(pos, (l, c.clone()));
                }
            }
        }
    }

    pub fn is_zero_pair(&self) -> bool {
        self.triples.iter().all(|t| t.iter().all(Vec::is_empty))
    }

    /// `{x, y, z}` with `x, z` in `V^s`.
    pub fn triple(&self, s: Sign, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim(s)];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = f.mul(xi, yj);
                for (k, zk) in z.iter().enumerate() {
                    if zk.is_zero() {
                        continue;
                    }
                    let entries = self.triple_basis(s, i, j, k);
                    if entries.is_empty() {
                        continue;
                    }
                    let c = f.mul(&xy, zk);
                    for (l, t) in entries {
                        out[*l] = f.add(&out[*l], &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    /// `Q_x y = 1/2 {x, y, x}`.
    pub fn apply_q(&self, s: Sign, x: &[Scalar], y: &[Scalar]) -> Vector {
        let half = self.field.inv(&self.field.from_i64(2)).unwrap();
        self.triple(s, x, y, x).iter().map(|c| self.field.mul(c, &half)).collect()
    }

    /// Matrix of `D(x, y) = {x, y, .}` on `V^s`.
    pub fn d_operator(&self, s: Sign, x: &[Scalar], y: &[Scalar]) -> Matrix {
        let n = self.dim(s);
        let cols: Vec<Vector> = (0..n).map(|k| self.triple(s, x, y, &unit_vector(&self.field, n, k))).collect();
        Matrix::from_columns(&self.field, n, &cols)
    }

    fn d_basis(&self, s: Sign, i: usize, j: usize) -> Matrix {
        let n = self.dim(s);
        let mut m = Matrix::zeros(&self.field, n, n);
        for k in 0..n {
            for (l, c) in self.triple_basis(s, i, j, k) {
                m.set(*l, k, c.clone());
            }
        }
        m
    }

    /// Matrix of `Q_x` as a map `V^-s -> V^s`.
    pub fn q_operator(&self, s: Sign, x: &[Scalar]) -> Matrix {
        let no = self.dim(s.opposite());
        let cols: Vec<Vector> = (0..no).map(|j| self.apply_q(s, x, &unit_vector(&self.field, no, j))).collect();
        Matrix::from_columns(&self.field, self.dim(s), &cols)
    }

    pub fn verify(&self) -> PairReport {
        self.verify_with(Exec::default())
    }

    pub fn verify_with(&self, exec: Exec) -> PairReport {
        let f = &self.field;
        let mut outer = Vec::new();
        for s in Sign::BOTH {
            let (ns, no) = (self.dim(s), self.dim(s.opposite()));
            for i in 0..ns {
                for j in 0..no {
                    for k in i + 1..ns {
                        if self.triple_basis(s, i, j, k) != self.triple_basis(s, k, j, i) {
                            outer.push((s, i, j, k));
                        }
                    }
                }
            }
        }
        let mut ops = Vec::new();
        for s in Sign::BOTH {
            let o = s.opposite();
            let (ns, no) = (self.dim(s), self.dim(o));
            let d: Vec<Matrix> = (0..ns * no).map(|t| self.d_basis(s, t / no, t % no)).collect();
            let bad = exec.map(ns * no, |xy| {
                let (x, y) = (xy / no, xy % no);
                let mut found = Vec::new();
                for u in 0..ns {
                    for v in 0..no {
                        let lhs = d[xy].mul(&d[u * no + v]).sub(&d[u * no + v].mul(&d[xy]));
                        let mut rhs = Matrix::zeros(f, ns, ns);
                        for (l, c) in self.triple_basis(s, x, y, u) {
                            rhs = rhs.add(&d[l * no + v].scale(c));
                        }
                        for (m, c) in self.triple_basis(o, y, x, v) {
                            rhs = rhs.sub(&d[u * no + m].scale(c));
                        }
                        if lhs != rhs {
                            found.push((s, x, y, u, v));
                        }
                    }
                }
                found
            });
            ops.extend(bad.into_iter().flatten());
        }
        PairReport {
            ok: outer.is_empty() && ops.is_empty(),
            outer_symmetry: outer,
            operator_identity: ops,
        }
    }

    pub fn is_ideal(&self, i: &PairIdeal) -> bool {
        let f = &self.field;
        for s in Sign::BOTH {
            let o = s.opposite();
            let (ns, no) = (self.dim(s), self.dim(o));
            for w in i.part(s).basis() {
                for a in 0..ns {
                    for b in 0..no {
                        let ea = unit_vector(f, ns, a);
                        let eb = unit_vector(f, no, b);
                        if !i.part(s).contains(&self.triple(s, &ea, &eb, w)) {
                            return false;
                        }
                    }
                }
            }
            for w in i.part(o).basis() {
                for a in 0..ns {
                    for c in a..ns {
                        let ea = unit_vector(f, ns, a);
                        let ec = unit_vector(f, ns, c);
                        if !i.part(s).contains(&self.triple(s, &ea, w, &ec)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The smallest pair ideal containing the seeds.
    pub fn ideal_generated(&self, plus: &[Vector], minus: &[Vector]) -> PairIdeal {
        let f = &self.field;
        let mut ech = [Echelon::new(f, self.dims[0]), Echelon::new(f, self.dims[1])];
        let mut work: Vec<(Sign, Vector)> = Vec::new();
        for (s, seeds) in [(Sign::Plus, plus), (Sign::Minus, minus)] {
            for v in seeds {
                if ech[s.idx()].insert(v.clone()) {
                    work.push((s, v.clone()));
                }
            }
        }
        while let Some((s, w)) = work.pop() {
            let o = s.opposite();
            let (ns, no) = (self.dim(s), self.dim(o));
            // {V^s, V^o, w} in V^s
            for a in 0..ns {
                for b in 0..no {
                    let r = self.triple(s, &unit_vector(f, ns, a), &unit_vector(f, no, b), &w);
                    if !is_zero_vec(&r) && ech[s.idx()].insert(r.clone()) {
                        work.push((s, r));
                    }
                }
            }
            // {V^o, w, V^o} in V^o
            for a in 0..no {
                for c in a..no {
                    let r = self.triple(o, &unit_vector(f, no, a), &w, &unit_vector(f, no, c));
                    if !is_zero_vec(&r) && ech[o.idx()].insert(r.clone()) {
                        work.push((o, r));
                    }
                }
            }
        }
        let [p, m] = ech;
        PairIdeal {
            plus: p.into_subspace(),
            minus: m.into_subspace(),
        }
    }

    pub fn ideal_generated_by(&self, seed: &PairIdeal) -> PairIdeal {
        self.ideal_generated(seed.plus.basis(), seed.minus.basis())
    }

    /// Span of all `Q_a b` and linearizations `{a, b, a'}` for `a, a'` in `A`
    /// (a subspace of `V^s`) and `b` in `B` (a subspace of `V^-s`).
    pub fn q_span(&self, s: Sign, a: &Subspace, b: &Subspace) -> Subspace {
        let mut e = Echelon::new(&self.field, self.dim(s));
        let ab = a.basis();
        for i in 0..ab.len() {
            for k in i..ab.len() {
                for y in b.basis() {
                    e.insert(self.triple(s, &ab[i], y, &ab[k]));
                }
            }
        }
        e.into_subspace()
    }

    /// `K * I = (Q_{K+} I- + Q_{V+} Q_{K-} I+, Q_{K-} I+ + Q_{V-} Q_{K+} I-)`,
    /// closed up to a pair ideal.
    pub fn ideal_product(&self, k: &PairIdeal, i: &PairIdeal) -> PairIdeal {
        let mut seeds: [Vec<Vector>; 2] = [Vec::new(), Vec::new()];
        for s in Sign::BOTH {
            let o = s.opposite();
            let direct = self.q_span(s, k.part(s), i.part(o));
            let inner = self.q_span(o, k.part(o), i.part(s));
            let full = Subspace::full(&self.field, self.dim(s));
            let outer = self.q_span(s, &full, &inner);
            seeds[s.idx()] = direct.sum(&outer).basis().to_vec();
        }
        self.ideal_generated(&seeds[0], &seeds[1])
    }

    /// `V * I = (Q_{V+} I-, Q_{V-} I+)`.
    pub fn v_star(&self, i: &PairIdeal) -> PairIdeal {
        let full = PairIdeal::whole(self);
        let p = self.q_span(Sign::Plus, &full.plus, &i.minus);
        let m = self.q_span(Sign::Minus, &full.minus, &i.plus);
        self.ideal_generated(p.basis(), m.basis())
    }

    /// Finite essentiality test: the ideal meets the ideal generated by
    /// every basis vector and by `extra_seeds` pseudorandom vectors.
    pub fn is_essential(&self, i: &PairIdeal, extra_seeds: usize, seed: u64) -> EssentialityCheck {
        use rand::SeedableRng;
        let f = &self.field;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut seeds: Vec<(Sign, Vector)> = Vec::new();
        for s in Sign::BOTH {
            for a in 0..self.dim(s) {
                seeds.push((s, unit_vector(f, self.dim(s), a)));
            }
        }
        for t in 0..extra_seeds {
            let s = if t % 2 == 0 { Sign::Plus } else { Sign::Minus };
            if self.dim(s) == 0 {
                continue;
            }
            seeds.push((s, (0..self.dim(s)).map(|_| f.random(&mut rng, 5)).collect()));
        }
        let mut failing = None;
        for (idx, (s, v)) in seeds.iter().enumerate() {
            if is_zero_vec(v) {
                continue;
            }
            let g = match s {
                Sign::Plus => self.ideal_generated(std::slice::from_ref(v), &[]),
                Sign::Minus => self.ideal_generated(&[], std::slice::from_ref(v)),
            };
            if g.is_zero() {
                continue;
            }
            if g.intersection(i).is_zero() {
                failing = Some(idx);
                break;
            }
        }
        EssentialityCheck {
            essential: failing.is_none(),
            seeds: seeds.len(),
            failing_seed: failing.map(|k| (seeds[k].0, seeds[k].1.iter().map(|c| f.format_scalar(c)).collect())),
        }
    }

    /// Structure constants mapped into another field.
    pub fn map_scalars(&self, target: &FieldSpec, m: impl Fn(&Scalar) -> Result<Scalar>) -> Result<JordanPair> {
        let mut out = JordanPair::new(target, self.dims[0], self.dims[1]);
        for s in 0..2 {
            for (idx, entries) in self.triples[s].iter().enumerate() {
                let mut mapped = Vec::new();
                for (l, c) in entries {
                    let v = m(c)?;
                    if !v.is_zero() {
                        mapped.push((*l, v));
                    }
                }
                out.triples[s][idx] = mapped;
            }
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &JordanPair) -> Result<JordanPair> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        let dims = [self.dims[0] + other.dims[0], self.dims[1] + other.dims[1]];
        let mut out = JordanPair::new(&self.field, dims[0], dims[1]);
        for s in Sign::BOTH {
            let o = s.opposite();
            for (src, off_s, off_o) in [(self, 0, 0), (other, self.dim(s), self.dim(o))] {
                for i in 0..src.dim(s) {
                    for j in 0..src.dim(o) {
                        for k in 0..src.dim(s) {
                            let t: Vec<(usize, Scalar)> = src
                                .triple_basis(s, i, j, k)
                                .iter()
                                .map(|(l, c)| (l + off_s, c.clone()))
                                .collect();
                            let idx = out.index(s, i + off_s, j + off_o, k + off_s);
                            out.triples[s.idx()][idx] = t;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The pair over the base field of an extension `K/F`, with basis
    /// `b_i t^r` (index `i * [K:F] + r`).
    pub fn restrict_scalars(&self) -> Result<JordanPair> {
        let base = self
            .field
            .base()
            .ok_or_else(|| Error::InvalidField(format!("{} is not an extension field", self.field)))?
            .clone();
        let f = &self.field;
        let d = f.degree();
        let t = f.generator().unwrap();
        let pows: Vec<Scalar> = (0..3 * d).map(|m| f.pow(&t, m as u128)).collect();
        let mut out = JordanPair::new(&base, self.dims[0] * d, self.dims[1] * d);
        for s in Sign::BOTH {
            let o = s.opposite();
            for i in 0..self.dim(s) {
                for j in 0..self.dim(o) {
                    for k in 0..self.dim(s) {
                        for (l, c) in self.triple_basis(s, i, j, k) {
                            for r1 in 0..d {
                                for r2 in 0..d {
                                    for r3 in 0..d {
                                        let v = f.mul(c, &pows[r1 + r2 + r3]);
                                        for (r, co) in f.coeffs(&v).iter().enumerate() {
                                            out.add_triple_constant(
                                                s,
                                                i * d + r1,
                                                j * d + r2,
                                                k * d + r3,
                                                l * d + r,
                                                co,
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(M_{p,q}, M_{q,p})` with `{x, y, z} = xyz + zyx`. Basis: matrix
    /// units in row-major order.
    pub fn rectangular(field: &FieldSpec, p: usize, q: usize) -> Result<JordanPair> {
        if p == 0 || q == 0 {
            return Err(Error::Dimension("rectangular pair needs p, q >= 1".into()));
        }
        let mut v = JordanPair::new(field, p * q, q * p);
        let one = field.one();
        for (s, rows, cols) in [(Sign::Plus, p, q), (Sign::Minus, q, p)] {
            let xs = |a: usize, b: usize| a * cols + b;
            let ys = |a: usize, b: usize| a * rows + b;
            // x = e_ab, y = e_cd, z = e_gh: xyz = [b=c][d=g] e_ah, zyx = [h=c][d=a] e_gb
            for a in 0..rows {
                for b in 0..cols {
                    for d in 0..rows {
                        for h in 0..cols {
                            v.add_triple_constant(s, xs(a, b), ys(b, d), xs(d, h), xs(a, h), &one);
                            v.add_triple_constant(s, xs(d, h), ys(b, d), xs(a, b), xs(a, h), &one);
                        }
                    }
                }
            }
        }
        Ok(v)
    }

    /// `(F^n, F^n)` with `{x, y, z} = b(x,y) z + b(z,y) x - b(x,z) y` for a
    /// symmetric Gram matrix `b`.
    pub fn bilinear_form(field: &FieldSpec, gram: &Matrix) -> Result<JordanPair> {
        let n = gram.rows();
        if gram.cols() != n || *gram != gram.transpose() {
            return Err(Error::Dimension("Gram matrix must be square and symmetric".into()));
        }
        let mut v = JordanPair::new(field, n, n);
        for s in Sign::BOTH {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        v.add_triple_constant(s, i, j, k, k, gram.get(i, j));
                        v.add_triple_constant(s, i, j, k, i, gram.get(k, j));
                        v.add_triple_constant(s, i, j, k, j, &field.neg(gram.get(i, k)));
                    }
                }
            }
        }
        Ok(v)
    }

    pub fn zero_pair(field: &FieldSpec, m: usize, n: usize) -> JordanPair {
        JordanPair::new(field, m, n)
    }

    /// Alternating `n x n` matrices in both signs, `{x, y, z} = xyz + zyx`.
    /// Basis `e_ab - e_ba`, `a < b`, lexicographic.
    pub fn skew(field: &FieldSpec, n: usize) -> Result<JordanPair> {
        if n < 2 {
            return Err(Error::Dimension("skew pair needs n >= 2".into()));
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let m = pairs.len();
        let to_mat = |i: usize| {
            let (a, b) = pairs[i];
            let mut mat = Matrix::zeros(field, n, n);
            mat.set(a, b, field.one());
            mat.set(b, a, field.from_i64(-1));
            mat
        };
        let mats: Vec<Matrix> = (0..m).map(to_mat).collect();
        let mut v = JordanPair::new(field, m, m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let r = mats[i].mul(&mats[j]).mul(&mats[k]).add(&mats[k].mul(&mats[j]).mul(&mats[i]));
                    let coords: Vector = pairs.iter().map(|&(a, b)| r.get(a, b).clone()).collect();
                    for s in Sign::BOTH {
                        v.set_triple(s, i, j, k, &coords);
                    }
                }
            }
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialityCheck {
    pub essential: bool,
    pub seeds: usize,
    pub failing_seed: Option<(Sign, Vec<String>)>,
}
