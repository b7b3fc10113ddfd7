//! Finite-dimensional Lie algebras given by structure constants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::matrix::{axpy, is_zero_vec, kernel_of_rows, unit_vector, Echelon};
use crate::exactmath::{FieldSpec, Matrix, Scalar, Subspace, Vector};
use crate::par::Exec;

/// Sparse structure constants: `table[i * dim + j]` lists the nonzero
/// `(k, c)` with `[b_i, b_j] = sum c b_k`, sorted by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    field: FieldSpec,
    dim: usize,
    table: Vec<Vec<(usize, Scalar)>>,
    grading: Option<Vec<i32>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub ok: bool,
    /// Pairs `(i, j)` with `[b_i, b_j] != -[b_j, b_i]` (or `[b_i, b_i] != 0`).
    pub antisymmetry: Vec<(usize, usize)>,
    /// Triples failing the Jacobi identity.
    pub jacobi: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub ok: bool,
    /// `(i, j, k)` with a nonzero `c_ij^k` but `deg k != deg i + deg j`.
    pub violations: Vec<(usize, usize, usize)>,
    pub missing_grading: bool,
}

/// A quotient `L / I` with its coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: StructureAlgebra,
    /// Original basis indices whose images form the quotient basis.
    pub complement: Vec<usize>,
    ideal: Subspace,
}

impl Quotient {
    /// Image of an element of the original algebra.
    pub fn project(&self, v: &[Scalar]) -> Vector {
        let r = self.ideal.reduce(v);
        self.complement.iter().map(|&c| r[c].clone()).collect()
    }

    /// The section sending quotient basis vector `a` to `b_{complement[a]}`.
    pub fn lift(&self, v: &[Scalar]) -> Vector {
        let f = self.ideal.field();
        let mut out = vec![f.zero(); self.ideal.ambient()];
        for (a, &c) in self.complement.iter().enumerate() {
            out[c] = v[a].clone();
        }
        out
    }

    /// Preimage of a subspace of the quotient.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        let lifted = s.basis().iter().map(|v| self.lift(v)).collect::<Vec<_>>();
        self.ideal
            .sum(&Subspace::span(self.ideal.field(), self.ideal.ambient(), lifted))
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    /// Checks that the projection is a homomorphism on every basis pair.
    pub fn projection_is_homomorphism(&self, parent: &StructureAlgebra) -> bool {
        let n = parent.dim();
        let f = parent.field();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = self.project(&parent.bracket_basis_vec(i, j));
                let pi = self.project(&unit_vector(f, n, i));
                let pj = self.project(&unit_vector(f, n, j));
                lhs == self.algebra.bracket(&pi, &pj)
            })
        })
    }
}

impl StructureAlgebra {
    /// The abelian algebra of the given dimension.
    pub fn new(field: &FieldSpec, dim: usize) -> Self {
        StructureAlgebra {
            field: field.clone(),
            dim,
            table: vec![Vec::new(); dim * dim],
            grading: None,
        }
    }

    pub fn with_grading(mut self, grading: Vec<i32>) -> Result<Self> {
        if grading.len() != self.dim {
            return Err(Error::Dimension(format!(
                "grading has {} entries for dimension {}",
                grading.len(),
                self.dim
            )));
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn set_grading(&mut self, grading: Option<Vec<i32>>) {
        self.grading = grading;
    }

    /// Sets `[b_i, b_j]` and `[b_j, b_i] = -[b_i, b_j]`.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: &[Scalar]) {
        let neg: Vector = value.iter().map(|c| self.field.neg(c)).collect();
        self.set_bracket_raw(i, j, value);
        self.set_bracket_raw(j, i, &neg);
    }

    /// Sets only the `(i, j)` entry; used by parsers that must preserve
    /// whatever the input says so that verification can flag it.
    pub fn set_bracket_raw(&mut self, i: usize, j: usize, value: &[Scalar]) {
        self.table[i * self.dim + j] = value
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
    }

    /// Adds `c b_k` to `[b_i, b_j]` only.
    pub fn add_structure_constant(&mut self, i: usize, j: usize, k: usize, c: &Scalar) {
        let entry = &mut self.table[i * self.dim + j];
        match entry.binary_search_by_key(&k, |(kk, _)| *kk) {
            Ok(pos) => {
                let v = self.field.add(&entry[pos].1, c);
                if v.is_zero() {
                    entry.remove(pos);
                } else {
                    entry[pos].1 = v;
                }
            }
            Err(pos) => {
                if !c.is_zero() {
                    entry.insert(pos, (k, c.clone()));
                }
            }
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn grading(&self) -> Option<&[i32]> {
        self.grading.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket_basis_vec(&self, i: usize, j: usize) -> Vector {
        let mut v = vec![self.field.zero(); self.dim];
        for (k, c) in self.bracket_basis(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.bracket_basis(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let entries = self.bracket_basis(i, j);
                if entries.is_empty() {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, s) in entries {
                    out[*k] = f.add(&out[*k], &f.mul(&c, s));
                }
            }
        }
        out
    }

    /// `[b_i, y]`
    pub fn bracket_with_basis(&self, i: usize, y: &[Scalar]) -> Vector {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (k, s) in self.bracket_basis(i, j) {
                out[*k] = f.add(&out[*k], &f.mul(yj, s));
            }
        }
        out
    }

    /// Matrix of `ad x` acting on column vectors.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.bracket(x, &unit_vector(&self.field, self.dim, j)))
            .collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.bracket_basis(i, j) {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    pub fn verify_lie(&self) -> LieReport {
        self.verify_lie_with(Exec::default())
    }

    pub fn verify_lie_with(&self, exec: Exec) -> LieReport {
        let n = self.dim;
        let f = &self.field;
        let mut antisymmetry = Vec::new();
        for i in 0..n {
            if !self.bracket_basis(i, i).is_empty() {
                antisymmetry.push((i, i));
            }
            for j in i + 1..n {
                let a = self.bracket_basis_vec(i, j);
                let b = self.bracket_basis_vec(j, i);
                if !is_zero_vec(&crate::exactmath::matrix::vec_add(f, &a, &b)) {
                    antisymmetry.push((i, j));
                }
            }
        }
        let per_i = exec.map(n, |i| {
            let mut bad = Vec::new();
            for j in i + 1..n {
                let bij = self.bracket_basis_vec(i, j);
                for k in j + 1..n {
                    let t1 = self.bracket(&bij, &unit_vector(f, n, k));
                    let bjk = self.bracket_basis_vec(j, k);
                    let t2 = self.bracket(&bjk, &unit_vector(f, n, i));
                    let bki = self.bracket_basis_vec(k, i);
                    let t3 = self.bracket(&bki, &unit_vector(f, n, j));
                    let mut s = t1;
                    axpy(f, &mut s, &f.one(), &t2);
                    axpy(f, &mut s, &f.one(), &t3);
                    if !is_zero_vec(&s) {
                        bad.push((i, j, k));
                    }
                }
            }
            bad
        });
        let jacobi: Vec<_> = per_i.into_iter().flatten().collect();
        LieReport {
            ok: antisymmetry.is_empty() && jacobi.is_empty(),
            antisymmetry,
            jacobi,
        }
    }

    pub fn verify_grading(&self) -> GradingReport {
        let Some(g) = &self.grading else {
            return GradingReport {
                ok: false,
                violations: Vec::new(),
                missing_grading: true,
            };
        };
        let n = self.dim;
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in self.bracket_basis(i, j) {
                    if g[*k] != g[i] + g[j] {
                        violations.push((i, j, *k));
                    }
                }
            }
        }
        GradingReport {
            ok: violations.is_empty(),
            violations,
            missing_grading: false,
        }
    }

    /// Graded with all degrees in {-1, 0, 1}.
    pub fn is_three_graded(&self) -> bool {
        self.grading
            .as_ref()
            .is_some_and(|g| g.iter().all(|d| (-1..=1).contains(d)))
            && self.verify_grading().ok
    }

    /// Basis indices of degree `d` (empty when ungraded).
    pub fn component(&self, d: i32) -> Vec<usize> {
        match &self.grading {
            Some(g) => (0..self.dim).filter(|&i| g[i] == d).collect(),
            None => Vec::new(),
        }
    }

    pub fn component_space(&self, d: i32) -> Subspace {
        Subspace::coordinate(&self.field, self.dim, self.component(d))
    }

    /// `(dim L_1, dim L_0, dim L_-1)`.
    pub fn grading_dims(&self) -> (usize, usize, usize) {
        (
            self.component(1).len(),
            self.component(0).len(),
            self.component(-1).len(),
        )
    }

    /// Whether every vector of the subspace splits into homogeneous parts
    /// inside it; for a reduced echelon basis this means every row is
    /// homogeneous.
    pub fn is_graded_subspace(&self, s: &Subspace) -> bool {
        let Some(g) = &self.grading else { return true };
        s.basis().iter().all(|v| {
            let mut degs = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| g[i]);
            let first = degs.next();
            degs.all(|d| Some(d) == first)
        })
    }

    /// Homogeneous component of a vector.
    pub fn homogeneous_part(&self, v: &[Scalar], d: i32) -> Vector {
        let g = self.grading.as_ref().expect("graded algebra required");
        v.iter()
            .enumerate()
            .map(|(i, c)| if g[i] == d { c.clone() } else { self.field.zero() })
            .collect()
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        (0..self.dim).all(|i| s.basis().iter().all(|v| s.contains(&self.bracket_with_basis(i, v))))
    }

    /// The smallest ideal containing `seed`.
    pub fn ideal_generated(&self, seed: &Subspace) -> Subspace {
        self.spin(seed.basis().to_vec(), |i, v| self.bracket_with_basis(i, v), self.dim)
    }

    pub fn ideal_generated_by(&self, vecs: &[Vector]) -> Subspace {
        self.spin(vecs.to_vec(), |i, v| self.bracket_with_basis(i, v), self.dim)
    }

    /// Closure of the span of `seed` under the operators `op(i, .)`,
    /// `i < count`.
    pub(crate) fn spin(
        &self,
        seed: Vec<Vector>,
        op: impl Fn(usize, &[Scalar]) -> Vector,
        count: usize,
    ) -> Subspace {
        spin(&self.field, self.dim, seed, op, count)
    }

    /// `[a, a]`
    pub fn derived_algebra(&self) -> Subspace {
        let mut e = Echelon::new(&self.field, self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if !self.bracket_basis(i, j).is_empty() {
                    e.insert(self.bracket_basis_vec(i, j));
                }
            }
        }
        e.into_subspace()
    }

    /// `[A, B]` for subspaces.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut e = Echelon::new(&self.field, self.dim);
        for x in a.basis() {
            for y in b.basis() {
                e.insert(self.bracket(x, y));
            }
        }
        e.into_subspace()
    }

    pub fn quotient_by_ideal(&self, ideal: &Subspace) -> Result<Quotient> {
        if ideal.ambient() != self.dim {
            return Err(Error::Dimension("ideal lives in a different space".into()));
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal("subspace is not bracket-closed against the algebra".into()));
        }
        let graded = self.grading.is_some();
        if graded && !self.is_graded_subspace(ideal) {
            return Err(Error::IdealNotGraded);
        }
        let complement = ideal.complement_indices();
        let m = complement.len();
        let mut q = StructureAlgebra::new(&self.field, m);
        let quotient_stub = Quotient {
            algebra: StructureAlgebra::new(&self.field, 0),
            complement: complement.clone(),
            ideal: ideal.clone(),
        };
        for a in 0..m {
            for b in 0..m {
                let v = self.bracket_basis_vec(complement[a], complement[b]);
                q.set_bracket_raw(a, b, &quotient_stub.project(&v));
            }
        }
        if let Some(g) = &self.grading {
            q.grading = Some(complement.iter().map(|&c| g[c]).collect());
        }
        Ok(Quotient {
            algebra: q,
            complement,
            ideal: ideal.clone(),
        })
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // [x, b_j] = sum_i x_i c_ij^k
        let rows = (0..n).flat_map(move |j| {
            (0..n).map(move |k| (0..n).map(|i| self.structure_constant(i, j, k)).collect::<Vector>())
        });
        kernel_of_rows(&self.field, n, rows)
    }

    /// `{x : [x, s] = 0}`
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim;
        let mut rows = Vec::new();
        for u in s.basis() {
            // column i is [b_i, u]
            let cols: Vec<Vector> = (0..n).map(|i| self.bracket_with_basis(i, u)).collect();
            for k in 0..n {
                rows.push(cols.iter().map(|c| c[k].clone()).collect::<Vector>());
            }
        }
        kernel_of_rows(&self.field, n, rows)
    }

    /// `{x : [x, L] is contained in ideal}`
    pub fn anti_image(&self, ideal: &Subspace) -> Subspace {
        let n = self.dim;
        let comp = ideal.complement_indices();
        let mut rows = Vec::new();
        for j in 0..n {
            let cols: Vec<Vector> = (0..n)
                .map(|i| ideal.reduce(&self.bracket_basis_vec(i, j)))
                .collect();
            for &k in &comp {
                rows.push(cols.iter().map(|c| c[k].clone()).collect::<Vector>());
            }
        }
        kernel_of_rows(&self.field, n, rows)
    }

    pub fn killing_form(&self) -> Matrix {
        let n = self.dim;
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut k = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in i..n {
                let t = ads[i].mul(&ads[j]).trace();
                k.set(i, j, t.clone());
                k.set(j, i, t);
            }
        }
        k
    }

    pub fn direct_sum(&self, other: &StructureAlgebra) -> Result<StructureAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        let (n, m) = (self.dim, other.dim);
        let mut s = StructureAlgebra::new(&self.field, n + m);
        for i in 0..n {
            for j in 0..n {
                s.table[i * (n + m) + j] = self.bracket_basis(i, j).to_vec();
            }
        }
        for i in 0..m {
            for j in 0..m {
                s.table[(n + i) * (n + m) + n + j] = other
                    .bracket_basis(i, j)
                    .iter()
                    .map(|(k, c)| (k + n, c.clone()))
                    .collect();
            }
        }
        if let (Some(a), Some(b)) = (&self.grading, &other.grading) {
            s.grading = Some(a.iter().chain(b).copied().collect());
        }
        Ok(s)
    }

    /// Restriction of a subalgebra `s` (closed under bracket) to its own
    /// echelon basis, with the grading kept when the basis is homogeneous.
    pub fn subalgebra(&self, s: &Subspace) -> Result<StructureAlgebra> {
        let b = s.basis();
        let m = b.len();
        let mut out = StructureAlgebra::new(&self.field, m);
        for a in 0..m {
            for c in 0..m {
                let v = self.bracket(&b[a], &b[c]);
                let coords = s
                    .coords(&v)
                    .ok_or_else(|| Error::Internal("subspace is not a subalgebra".into()))?;
                out.set_bracket_raw(a, c, &coords);
            }
        }
        if let Some(g) = &self.grading {
            if self.is_graded_subspace(s) {
                out.grading = Some(
                    b.iter()
                        .map(|v| g[v.iter().position(|c| !c.is_zero()).unwrap()])
                        .collect(),
                );
            }
        }
        Ok(out)
    }

    /// The same structure constants mapped into another field.
    pub fn map_scalars(
        &self,
        target: &FieldSpec,
        f: impl Fn(&Scalar) -> Result<Scalar>,
    ) -> Result<StructureAlgebra> {
        let mut out = StructureAlgebra::new(target, self.dim);
        for (idx, entries) in self.table.iter().enumerate() {
            let mut mapped = Vec::new();
            for (k, c) in entries {
                let v = f(c)?;
                if !v.is_zero() {
                    mapped.push((*k, v));
                }
            }
            out.table[idx] = mapped;
        }
        out.grading = self.grading.clone();
        Ok(out)
    }

    /// The algebra over the base field of an extension `K/F`, with basis
    /// `b_i t^r` at index `i * [K:F] + r`.
    pub fn restrict_scalars(&self) -> Result<StructureAlgebra> {
        let base = self
            .field
            .base()
            .ok_or_else(|| Error::InvalidField(format!("{} is not an extension field", self.field)))?
            .clone();
        let f = &self.field;
        let d = f.degree();
        let t = f.generator().unwrap();
        let pows: Vec<Scalar> = (0..2 * d).map(|m| f.pow(&t, m as u128)).collect();
        let mut out = StructureAlgebra::new(&base, self.dim * d);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.bracket_basis(i, j) {
                    for r1 in 0..d {
                        for r2 in 0..d {
                            let v = f.mul(c, &pows[r1 + r2]);
                            for (r, co) in f.coeffs(&v).iter().enumerate() {
                                out.add_structure_constant(i * d + r1, j * d + r2, k * d + r, co);
                            }
                        }
                    }
                }
            }
        }
        out.grading = self
            .grading
            .as_ref()
            .map(|g| g.iter().flat_map(|&x| std::iter::repeat(x).take(d)).collect());
        Ok(out)
    }

    /// Structure-constant equality after the basis change `phi`, given as
    /// images of basis vectors of `self` in `other`.
    pub fn is_homomorphism(&self, other: &StructureAlgebra, phi: &[Vector]) -> bool {
        let n = self.dim;
        let image = |v: &[Scalar]| {
            let mut out = vec![other.field.zero(); other.dim];
            for (i, c) in v.iter().enumerate() {
                axpy(&other.field, &mut out, c, &phi[i]);
            }
            out
        };
        (0..n).all(|i| {
            (i + 1..n).all(|j| image(&self.bracket_basis_vec(i, j)) == other.bracket(&phi[i], &phi[j]))
        })
    }

    /// `sl(2)` on the basis `(e, h, f)` with `[h,e] = 2e`, `[h,f] = -2f`,
    /// `[e,f] = h`, graded `(1, 0, -1)`.
    pub fn sl2(field: &FieldSpec) -> StructureAlgebra {
        let mut a = StructureAlgebra::new(field, 3);
        let v = |c: [i64; 3]| c.iter().map(|&x| field.from_i64(x)).collect::<Vector>();
        a.set_bracket(1, 0, &v([2, 0, 0]));
        a.set_bracket(1, 2, &v([0, 0, -2]));
        a.set_bracket(0, 2, &v([0, 1, 0]));
        a.grading = Some(vec![1, 0, -1]);
        a
    }

    /// Heisenberg algebra `[x, y] = z`, graded `(1, -1, 0)`.
    pub fn heisenberg(field: &FieldSpec) -> StructureAlgebra {
        let mut a = StructureAlgebra::new(field, 3);
        a.set_bracket(0, 1, &unit_vector(field, 3, 2));
        a.grading = Some(vec![1, -1, 0]);
        a
    }
}

/// Closure of a span under a family of linear operators.
pub(crate) fn spin(
    field: &FieldSpec,
    dim: usize,
    seed: Vec<Vector>,
    op: impl Fn(usize, &[Scalar]) -> Vector,
    count: usize,
) -> Subspace {
    let mut e = Echelon::new(field, dim);
    let mut work = Vec::new();
    for v in seed {
        if e.insert(v.clone()) {
            work.push(v);
        }
    }
    while let Some(v) = work.pop() {
        if e.dim() == dim {
            break;
        }
        for i in 0..count {
            let w = op(i, &v);
            if !is_zero_vec(&w) && e.insert(w.clone()) {
                work.push(w);
            }
        }
    }
    e.into_subspace()
}
