//! Dense exact matrices and subspaces in reduced row-echelon form.

use super::field::{FieldSpec, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: &FieldSpec, cols: usize, rows: Vec<Vector>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            field: field.clone(),
            rows: n,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: &FieldSpec, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(field: &FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Nonzero entries as `(row, col, value)` triples.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| dot(f, self.row(i), v))
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(&FieldSpec, &Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| op(&self.field, a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| self.field.mul(a, c)).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut e = Echelon::new(&self.field, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        let pivots = e.pivots.clone();
        let mut rows = e.rows;
        while rows.len() < self.rows {
            rows.push(vec![self.field.zero(); self.cols]);
        }
        (Matrix::from_rows(&self.field, self.cols, rows), pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_space().dim()
    }

    pub fn row_space(&self) -> Subspace {
        let mut e = Echelon::new(&self.field, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.into_subspace()
    }

    /// Null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Subspace {
        kernel_of_rows(&self.field, self.cols, (0..self.rows).map(|i| self.row(i).to_vec()))
    }

    /// A particular solution of `M x = b` with free variables set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side dimension mismatch");
        let mut e = Echelon::new(&self.field, self.cols + 1);
        for i in 0..self.rows {
            let mut r = self.row(i).to_vec();
            r.push(b[i].clone());
            e.insert(r);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in e.rows.iter().zip(&e.pivots) {
            if p == self.cols {
                return None;
            }
            x[p] = r[self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut e = Echelon::new(f, 2 * n);
        for i in 0..n {
            let mut r = self.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            e.insert(r);
        }
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        let rows = e.rows.into_iter().take(n).map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows(f, n, rows))
    }
}

impl Matrix {
    /// Characteristic polynomial `det(x I - M)`, monic, low degree first.
    /// Computed through a Hessenberg form.
    pub fn charpoly(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let f = self.field.clone();
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                for c in 0..n {
                    h.data.swap(i * n + c, m * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let pivot_inv = f.inv(h.get(m, m - 1)).unwrap();
            for j in m + 1..n {
                let u = f.mul(h.get(j, m - 1), &pivot_inv);
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let t = f.mul(&u, h.get(m, c));
                    let v = f.sub(h.get(j, c), &t);
                    h.set(j, c, v);
                }
                for r in 0..n {
                    let t = f.mul(&u, h.get(r, j));
                    let v = f.add(h.get(r, m), &t);
                    h.set(r, m, v);
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_i h_im (prod_{j=i+1}^m h_{j,j-1}) p_{i-1}, one-based.
        let hh = |a: usize, b: usize| h.get(a - 1, b - 1).clone();
        let mut ps: Vec<Vec<Scalar>> = vec![vec![f.one()]];
        for m in 1..=n {
            let lin = vec![f.neg(&hh(m, m)), f.one()];
            let mut pm = super::poly::mul(&f, &lin, &ps[m - 1]);
            let mut prod = f.one();
            for i in (1..m).rev() {
                prod = f.mul(&prod, &hh(i + 1, i));
                if prod.is_zero() {
                    break;
                }
                let c = f.mul(&hh(i, m), &prod);
                let term = super::poly::scale(&f, &ps[i - 1], &c);
                pm = super::poly::sub(&f, &pm, &term);
            }
            ps.push(super::poly::trimmed(pm));
        }
        ps.pop().unwrap()
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &[Scalar]) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for c in p.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

pub fn dot(f: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = f.add(&acc, &f.mul(x, y));
        }
    }
    acc
}

pub fn vec_add(f: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vec_sub(f: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn vec_scale(f: &FieldSpec, a: &[Scalar], c: &Scalar) -> Vector {
    a.iter().map(|x| f.mul(x, c)).collect()
}

/// `a += c * b`
pub fn axpy(f: &FieldSpec, a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = f.add(x, &f.mul(c, y));
        }
    }
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn unit_vector(f: &FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// Kernel of the matrix with the given rows, streamed so that tall systems
/// never need to be stored.
pub fn kernel_of_rows<I: IntoIterator<Item = Vector>>(f: &FieldSpec, cols: usize, rows: I) -> Subspace {
    let mut e = Echelon::new(f, cols);
    for r in rows {
        e.insert(r);
        if e.rows.len() == cols {
            break;
        }
    }
    e.kernel()
}

/// Incremental reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &FieldSpec, cols: usize) -> Self {
        Echelon {
            field: field.clone(),
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        let f = &self.field;
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = f.neg(&v[p]);
                axpy(f, &mut v, &c, r);
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.cols, "vector dimension mismatch");
        let f = self.field.clone();
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = f.inv(&v[p]).unwrap();
        let v = vec_scale(&f, &v, &inv);
        for r in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let c = f.neg(&r[p]);
                axpy(&f, r, &c, &v);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, v);
        true
    }

    pub fn kernel(&self) -> Subspace {
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = f.neg(&r[free]);
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, basis)
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            field: self.field,
            ambient: self.cols,
            rows: self.rows,
            pivots: self.pivots,
        }
    }
}

/// Coordinates with respect to a fixed list of linearly independent
/// vectors (not necessarily echelonized).
#[derive(Clone, Debug)]
pub struct Coordinates {
    n: usize,
    m: usize,
    ech: Echelon,
}

impl Coordinates {
    /// `None` when the vectors are dependent.
    pub fn new(field: &FieldSpec, n: usize, basis: &[Vector]) -> Option<Self> {
        let m = basis.len();
        let mut ech = Echelon::new(field, n + m);
        for (k, b) in basis.iter().enumerate() {
            let mut r = b.clone();
            r.extend((0..m).map(|j| if j == k { field.one() } else { field.zero() }));
            ech.insert(r);
        }
        if ech.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some(Coordinates { n, m, ech })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// Coefficients `c` with `w = sum c_k basis_k`, or `None` if `w` is
    /// outside the span.
    pub fn coords(&self, w: &[Scalar]) -> Option<Vector> {
        let f = &self.ech.field;
        let mut r = w.to_vec();
        r.extend((0..self.m).map(|_| f.zero()));
        let red = self.ech.reduce(r);
        if !is_zero_vec(&red[..self.n]) {
            return None;
        }
        Some(red[self.n..].iter().map(|c| f.neg(c)).collect())
    }
}

/// A subspace of `F^ambient`, stored as its unique reduced row-echelon basis.
/// Equality of values is therefore equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &FieldSpec, ambient: usize) -> Self {
        Echelon::new(field, ambient).into_subspace()
    }

    pub fn full(field: &FieldSpec, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            rows: (0..ambient).map(|i| unit_vector(field, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = Vector>>(field: &FieldSpec, ambient: usize, vecs: I) -> Self {
        let mut e = Echelon::new(field, ambient);
        for v in vecs {
            e.insert(v);
        }
        e.into_subspace()
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(field: &FieldSpec, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(field, ambient, indices.into_iter().map(|i| unit_vector(field, ambient, i)))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn echelon(&self) -> Echelon {
        Echelon {
            field: self.field.clone(),
            cols: self.ambient,
            rows: self.rows.clone(),
            pivots: self.pivots.clone(),
        }
    }

    /// Residue of `v` modulo the subspace (zero exactly when `v` lies in it).
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        self.echelon_ref_reduce(v.to_vec())
    }

    fn echelon_ref_reduce(&self, mut v: Vector) -> Vector {
        let f = &self.field;
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = f.neg(&v[p]);
                axpy(f, &mut v, &c, r);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` with respect to [`Subspace::basis`].
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
        } else {
            None
        }
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut e = self.echelon();
        for v in &other.rows {
            e.insert(v.clone());
        }
        e.into_subspace()
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let f = &self.field;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(f, self.ambient);
        }
        // Solve sum_i s_i u_i = sum_j t_j w_j, i.e. kernel of the column stack.
        let rows = (0..self.ambient).map(|k| {
            let mut r: Vector = self.rows.iter().map(|u| u[k].clone()).collect();
            r.extend(other.rows.iter().map(|w| f.neg(&w[k])));
            r
        });
        let ker = kernel_of_rows(f, a + b, rows);
        let vecs = ker.rows.iter().map(|c| {
            let mut v = vec![f.zero(); self.ambient];
            for (i, u) in self.rows.iter().enumerate() {
                axpy(f, &mut v, &c[i], u);
            }
            v
        });
        Subspace::span(f, self.ambient, vecs.collect::<Vec<_>>())
    }

    /// Indices of standard basis vectors spanning a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Image under a linear map given on vectors.
    pub fn map(&self, target_dim: usize, f: impl Fn(&[Scalar]) -> Vector) -> Subspace {
        Subspace::span(&self.field, target_dim, self.rows.iter().map(|v| f(v)).collect::<Vec<_>>())
    }
}
