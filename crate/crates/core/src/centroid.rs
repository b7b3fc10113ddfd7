//! Centroids of Lie algebras and Jordan pairs, the correspondence between
//! the centroid of `TKK(V)` and that of `V`, and central closures.
//!
//! Everything here is the finite-dimensional case where maps are defined on
//! the whole algebra (resp. pair). For the prime catalog inputs every
//! essential ideal is the whole object, so these centroids coincide with the
//! extended ones.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::matrix::{is_zero_vec, kernel_of_rows, unit_vector, Echelon};
use crate::exactmath::{poly, Coordinates, FieldSpec, Matrix, Scalar, Subspace, Vector};
use crate::jordan::JordanPair;
use crate::sign::Sign;
use crate::tkk::{tkk_construct, verify_jordan_3graded};

fn flatten(m: &Matrix) -> Vector {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

fn unflatten(f: &FieldSpec, n: usize, v: &[Scalar]) -> Matrix {
    if n == 0 {
        return Matrix::zeros(f, 0, 0);
    }
    Matrix::from_rows(f, n, v.chunks(n).map(|c| c.to_vec()).collect())
}

/// A commutative algebra of operators given by a basis (identity first) and
/// its multiplication table in that basis.
#[derive(Clone, Debug)]
pub struct OperatorAlgebra<T> {
    pub basis: Vec<T>,
    /// `table[i][j]` holds the coordinates of `basis[i] * basis[j]`.
    pub table: Vec<Vec<Vector>>,
}

impl<T> OperatorAlgebra<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub type LieCentroid = OperatorAlgebra<Matrix>;

/// `(g+, g-)` acting on `V+` and `V-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMap {
    pub plus: Matrix,
    pub minus: Matrix,
}

impl PairMap {
    pub fn identity(v: &JordanPair) -> Self {
        PairMap {
            plus: Matrix::identity(v.field(), v.dim(Sign::Plus)),
            minus: Matrix::identity(v.field(), v.dim(Sign::Minus)),
        }
    }

    pub fn part(&self, s: Sign) -> &Matrix {
        match s {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn compose(&self, other: &PairMap) -> PairMap {
        PairMap {
            plus: self.plus.mul(&other.plus),
            minus: self.minus.mul(&other.minus),
        }
    }

    pub fn add(&self, other: &PairMap) -> PairMap {
        PairMap {
            plus: self.plus.add(&other.plus),
            minus: self.minus.add(&other.minus),
        }
    }

    fn flatten(&self) -> Vector {
        let mut v = flatten(&self.plus);
        v.extend(flatten(&self.minus));
        v
    }

    /// `diag(g+, g-)` on `V+ + V-`.
    fn block(&self) -> Matrix {
        let f = self.plus.field();
        let (a, b) = (self.plus.rows(), self.minus.rows());
        let mut m = Matrix::zeros(f, a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                m.set(i, j, self.plus.get(i, j).clone());
            }
        }
        for i in 0..b {
            for j in 0..b {
                m.set(a + i, a + j, self.minus.get(i, j).clone());
            }
        }
        m
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionB {
    /// (b) holds on the whole returned span.
    pub holds: bool,
    /// (b) restricted the linear solution space.
    pub filtered: bool,
    pub diagnostic: Option<String>,
}

#[derive(Clone, Debug)]
pub struct JordanCentroid {
    pub algebra: OperatorAlgebra<PairMap>,
    pub condition_b: ConditionB,
}

fn with_identity_first(f: &FieldSpec, len: usize, identity: Vector, kernel: &Subspace) -> Vec<Vector> {
    let mut e = Echelon::new(f, len);
    let mut out = Vec::new();
    for v in std::iter::once(identity).chain(kernel.basis().iter().cloned()) {
        if e.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

fn table_of<T>(f: &FieldSpec, flat: &[Vector], basis: &[T], mul: impl Fn(&T, &T) -> Vector) -> Result<Vec<Vec<Vector>>> {
    let len = flat.first().map_or(0, Vec::len);
    let c = Coordinates::new(f, len, flat).ok_or_else(|| Error::Internal("dependent centroid basis".into()))?;
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    c.coords(&mul(a, b))
                        .ok_or_else(|| Error::Internal("centroid not closed under composition".into()))
                })
                .collect()
        })
        .collect()
}

/// The commutant of `ad L`: all `T` with `T ad(b) = ad(b) T`.
pub fn lie_centroid(l: &StructureAlgebra) -> LieCentroid {
    let f = l.field();
    let n = l.dim();
    let ads: Vec<Matrix> = (0..n).map(|k| l.ad_basis(k)).collect();
    // (T A - A T)_{rc} = sum_m t_{rm} A_{mc} - A_{rm} t_{mc}
    let mut rows = Vec::new();
    for a in &ads {
        for r in 0..n {
            for c in 0..n {
                let mut eq = vec![f.zero(); n * n];
                for m in 0..n {
                    let x = a.get(m, c);
                    if !x.is_zero() {
                        eq[r * n + m] = f.add(&eq[r * n + m], x);
                    }
                    let y = a.get(r, m);
                    if !y.is_zero() {
                        eq[m * n + c] = f.sub(&eq[m * n + c], y);
                    }
                }
                if !is_zero_vec(&eq) {
                    rows.push(eq);
                }
            }
        }
    }
    let ker = kernel_of_rows(f, n * n, rows);
    let flat = with_identity_first(f, n * n, flatten(&Matrix::identity(f, n)), &ker);
    let basis: Vec<Matrix> = flat.iter().map(|v| unflatten(f, n, v)).collect();
    let table = if n == 0 {
        Vec::new()
    } else {
        table_of(f, &flat, &basis, |a, b| flatten(&a.mul(b))).expect("the commutant is an algebra")
    };
    OperatorAlgebra { basis, table }
}

/// Rows of the linear conditions (a) and (c) on `(g+, g-)`.
fn pair_linear_conditions(v: &JordanPair) -> Vec<Vector> {
    let f = v.field();
    let [np, nm] = v.dims();
    let unknowns = np * np + nm * nm;
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
                    // (a): g{b_i, b_j, b_k} = {b_i, g b_j, b_k}
                    // (c): g{b_i, b_j, b_k} = {g b_i, b_j, b_k}
                    let mut lhs = vec![vec![f.zero(); unknowns]; ns];
                    for (l, c) in v.triple_basis(s, i, j, k) {
                        for r in 0..ns {
                            let x = var(s, r, *l);
                            lhs[r][x] = f.add(&lhs[r][x], c);
                        }
                    }
                    let mut a = lhs.clone();
                    for m in 0..no {
                        for (l, c) in v.triple_basis(s, i, m, k) {
                            let x = var(o, m, j);
                            a[*l][x] = f.sub(&a[*l][x], c);
                        }
                    }
                    let mut cc = lhs;
                    for m in 0..ns {
                        for (l, c) in v.triple_basis(s, m, j, k) {
                            let x = var(s, m, i);
                            cc[*l][x] = f.sub(&cc[*l][x], c);
                        }
                    }
                    rows.extend(a.into_iter().chain(cc).filter(|r| !is_zero_vec(r)));
                }
            }
        }
    }
    rows
}

fn pair_map_from(v: &JordanPair, w: &[Scalar]) -> PairMap {
    let f = v.field();
    let [np, _] = v.dims();
    PairMap {
        plus: unflatten(f, np, &w[..np * np]),
        minus: unflatten(f, v.dim(Sign::Minus), &w[np * np..]),
    }
}

/// (a) and (c) on basis tuples.
pub fn satisfies_linear_conditions(v: &JordanPair, g: &PairMap) -> bool {
    let w = g.flatten();
    let f = v.field();
    pair_linear_conditions(v).iter().all(|r| {
        r.iter()
            .zip(&w)
            .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            .is_zero()
    })
}

/// Polar form of (b): `g^2 {y, x, z} = {g y, x, g z}` on basis vectors.
fn condition_b_polar(v: &JordanPair, g: &PairMap, h: &PairMap) -> bool {
    let f = v.field();
    Sign::BOTH.iter().all(|&s| {
        let o = s.opposite();
        let (gs, hs) = (g.part(s), h.part(s));
        let gh = gs.mul(hs).add(&hs.mul(gs));
        (0..v.dim(s)).all(|i| {
            (0..v.dim(o)).all(|j| {
                (0..v.dim(s)).all(|k| {
                    let y = unit_vector(f, v.dim(s), i);
                    let x = unit_vector(f, v.dim(o), j);
                    let z = unit_vector(f, v.dim(s), k);
                    let lhs = gh.mul_vec(&v.triple(s, &y, &x, &z));
                    let a = v.triple(s, &gs.mul_vec(&y), &x, &hs.mul_vec(&z));
                    let b = v.triple(s, &hs.mul_vec(&y), &x, &gs.mul_vec(&z));
                    let rhs: Vector = a.iter().zip(&b).map(|(p, q)| f.add(p, q)).collect();
                    lhs == rhs
                })
            })
        })
    })
}

/// Condition (b) for a single map.
pub fn satisfies_condition_b(v: &JordanPair, g: &PairMap) -> bool {
    condition_b_polar(v, g, g)
}

/// Solves (a) and (c), then checks the quadratic condition (b) on the
/// solution basis and on all pairwise sums, which decides it on the span.
pub fn jordan_centroid(v: &JordanPair) -> JordanCentroid {
    let f = v.field();
    let [np, nm] = v.dims();
    let unknowns = np * np + nm * nm;
    let ker = kernel_of_rows(f, unknowns, pair_linear_conditions(v));
    let flat = with_identity_first(f, unknowns, PairMap::identity(v).flatten(), &ker);
    let maps: Vec<PairMap> = flat.iter().map(|w| pair_map_from(v, w)).collect();
    let ok_single: Vec<bool> = maps.iter().map(|g| satisfies_condition_b(v, g)).collect();
    let all_pairs = |idx: &[usize]| {
        idx.iter()
            .enumerate()
            .all(|(a, &i)| idx[a + 1..].iter().all(|&j| condition_b_polar(v, &maps[i], &maps[j])))
    };
    let everything: Vec<usize> = (0..maps.len()).collect();
    let (keep, condition_b) = if ok_single.iter().all(|&b| b) && all_pairs(&everything) {
        (
            everything,
            ConditionB {
                holds: true,
                filtered: false,
                diagnostic: None,
            },
        )
    } else {
        let good: Vec<usize> = (0..maps.len()).filter(|&i| ok_single[i]).collect();
        if all_pairs(&good) {
            (
                good,
                ConditionB {
                    holds: true,
                    filtered: true,
                    diagnostic: Some("condition (b) cut the linear solution space".into()),
                },
            )
        } else {
            (
                everything,
                ConditionB {
                    holds: false,
                    filtered: false,
                    diagnostic: Some("condition (b) has a non-linear solution locus".into()),
                },
            )
        }
    };
    let flat: Vec<Vector> = keep.iter().map(|&i| flat[i].clone()).collect();
    let basis: Vec<PairMap> = keep.iter().map(|&i| maps[i].clone()).collect();
    let table = if unknowns == 0 {
        Vec::new()
    } else {
        table_of(f, &flat, &basis, |a, b| a.compose(b).flatten()).unwrap_or_default()
    };
    JordanCentroid {
        algebra: OperatorAlgebra { basis, table },
        condition_b,
    }
}

/// Restriction of a centroid element to the wings, after discarding the
/// blocks that change degree.
pub fn psi(l: &StructureAlgebra, t: &Matrix) -> Result<PairMap> {
    let g = l
        .grading()
        .ok_or_else(|| Error::NotThreeGraded("psi needs a graded algebra".into()))?;
    if !l.is_three_graded() {
        return Err(Error::NotThreeGraded("psi needs a 3-grading".into()));
    }
    let f = l.field();
    let n = l.dim();
    let mut t0 = t.clone();
    for r in 0..n {
        for c in 0..n {
            if g[r] != g[c] {
                t0.set(r, c, f.zero());
            }
        }
    }
    if !(0..n).all(|k| {
        let a = l.ad_basis(k);
        t0.mul(&a) == a.mul(&t0)
    }) {
        return Err(Error::MixedGrades);
    }
    let restrict = |idx: &[usize]| {
        let mut m = Matrix::zeros(f, idx.len(), idx.len());
        for (a, &r) in idx.iter().enumerate() {
            for (b, &c) in idx.iter().enumerate() {
                m.set(a, b, t0.get(r, c).clone());
            }
        }
        m
    };
    let out = PairMap {
        plus: restrict(&l.component(1)),
        minus: restrict(&l.component(-1)),
    };
    Ok(out)
}

/// The centroid element of a Jordan 3-graded `L` acting as `g` on the wings
/// and by `[u+, v-] -> [g+ u+, v-]` on degree zero.
pub fn upsilon(l: &StructureAlgebra, g: &PairMap) -> Result<Matrix> {
    let rep = verify_jordan_3graded(l)?;
    if !rep.ok {
        return Err(Error::NotThreeGraded("degree zero is not spanned by [L_1, L_-1]".into()));
    }
    let f = l.field();
    let n = l.dim();
    let (plus, zero, minus) = (l.component(1), l.component(0), l.component(-1));
    if g.plus.rows() != plus.len() || g.minus.rows() != minus.len() {
        return Err(Error::Dimension("map does not match the wing dimensions".into()));
    }
    let embed = |idx: &[usize], x: &[Scalar]| {
        let mut out = vec![f.zero(); n];
        for (a, &i) in idx.iter().enumerate() {
            out[i] = x[a].clone();
        }
        out
    };
    // Spanning brackets of degree zero with their prescribed images.
    let mut spans = Vec::new();
    for (a, &i) in plus.iter().enumerate() {
        let gi = embed(&plus, &g.plus.column(a));
        for &j in &minus {
            let ej = unit_vector(f, n, j);
            spans.push((l.bracket(&unit_vector(f, n, i), &ej), l.bracket(&gi, &ej)));
        }
    }
    let mut ech = Echelon::new(f, n);
    let mut chosen = Vec::new();
    for (s, t) in &spans {
        if ech.insert(s.clone()) {
            chosen.push((s.clone(), t.clone()));
        }
    }
    let src: Vec<Vector> = chosen.iter().map(|c| c.0.clone()).collect();
    let coords = Coordinates::new(f, n, &src).ok_or_else(|| Error::Internal("dependent spanning set".into()))?;
    let image_of = |x: &[Scalar]| -> Option<Vector> {
        let c = coords.coords(x)?;
        let mut out = vec![f.zero(); n];
        for (k, ck) in c.iter().enumerate() {
            for (o, t) in out.iter_mut().zip(&chosen[k].1) {
                *o = f.add(o, &f.mul(ck, t));
            }
        }
        Some(out)
    };
    for (s, t) in &spans {
        if image_of(s).as_ref() != Some(t) {
            return Err(Error::ExtensionIllDefined(
                "a linear relation among degree-zero brackets is not respected".into(),
            ));
        }
    }
    let mut m = Matrix::zeros(f, n, n);
    for (a, &i) in plus.iter().enumerate() {
        for (b, &r) in plus.iter().enumerate() {
            m.set(r, i, g.plus.get(b, a).clone());
        }
    }
    for (a, &i) in minus.iter().enumerate() {
        for (b, &r) in minus.iter().enumerate() {
            m.set(r, i, g.minus.get(b, a).clone());
        }
    }
    for &z in &zero {
        let img = image_of(&unit_vector(f, n, z))
            .ok_or_else(|| Error::Internal("degree-zero basis vector outside the bracket span".into()))?;
        for (r, c) in img.into_iter().enumerate() {
            m.set(r, z, c);
        }
    }
    if !(0..n).all(|k| {
        let a = l.ad_basis(k);
        m.mul(&a) == a.mul(&m)
    }) {
        return Err(Error::ExtensionIllDefined("extension does not commute with ad".into()));
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct CentroidIsoReport {
    pub lie_dim: usize,
    pub jordan_dim: usize,
    pub psi_additive: bool,
    pub psi_multiplicative: bool,
    pub upsilon_additive: bool,
    pub psi_upsilon_identity: bool,
    pub upsilon_psi_identity: bool,
    pub condition_b: ConditionB,
    pub pass: bool,
}

/// Compares the centroid of `TKK(v)` with that of `v` through psi and
/// upsilon on the computed bases.
pub fn verify_centroid_iso(v: &JordanPair) -> Result<CentroidIsoReport> {
    let t = tkk_construct(v)?;
    let l = &t.algebra;
    let lc = lie_centroid(l);
    let jc = jordan_centroid(v);
    let psis: Vec<PairMap> = lc.basis.iter().map(|m| psi(l, m)).collect::<Result<_>>()?;
    let ups: Vec<Matrix> = jc.algebra.basis.iter().map(|g| upsilon(l, g)).collect::<Result<_>>()?;
    let k = lc.dim();
    let mut psi_add = true;
    let mut psi_mul = true;
    let mut ups_add = true;
    for i in 0..k {
        for j in 0..k {
            let sum = psi(l, &lc.basis[i].add(&lc.basis[j]))?;
            psi_add &= sum == psis[i].add(&psis[j]);
            psi_mul &= psi(l, &lc.basis[i].mul(&lc.basis[j]))? == psis[i].compose(&psis[j]);
        }
    }
    let jd = jc.algebra.dim();
    for i in 0..jd {
        for j in 0..jd {
            ups_add &= upsilon(l, &jc.algebra.basis[i].add(&jc.algebra.basis[j]))? == ups[i].add(&ups[j]);
        }
    }
    let psi_ups = jc.algebra.basis.iter().zip(&ups).all(|(g, u)| psi(l, u).ok().as_ref() == Some(g));
    let ups_psi = lc.basis.iter().zip(&psis).all(|(m, p)| upsilon(l, p).ok().as_ref() == Some(m));
    let pass = k == jd && psi_add && psi_mul && ups_add && psi_ups && ups_psi && jc.condition_b.holds;
    Ok(CentroidIsoReport {
        lie_dim: k,
        jordan_dim: jd,
        psi_additive: psi_add,
        psi_multiplicative: psi_mul,
        upsilon_additive: ups_add,
        psi_upsilon_identity: psi_ups,
        upsilon_psi_identity: ups_psi,
        condition_b: jc.condition_b,
        pass,
    })
}

/// The centroid as a field `F[t]/(m)` with `t` acting as `generator`.
#[derive(Clone, Debug)]
pub struct CentroidField {
    pub generator: Matrix,
    pub minpoly: Vec<Scalar>,
    pub field: FieldSpec,
}

impl CentroidField {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// Minimal polynomial of a square matrix over its field, monic, low-first.
pub fn minimal_polynomial(m: &Matrix) -> Vec<Scalar> {
    let f = m.field();
    let n = m.rows();
    let mut powers = vec![flatten(&Matrix::identity(f, n))];
    let mut ech = Echelon::new(f, n * n);
    ech.insert(powers[0].clone());
    let mut cur = Matrix::identity(f, n);
    loop {
        cur = cur.mul(m);
        let fl = flatten(&cur);
        if !ech.insert(fl.clone()) {
            let c = Coordinates::new(f, n * n, &powers).unwrap().coords(&fl).unwrap();
            let mut out: Vec<Scalar> = c.iter().map(|x| f.neg(x)).collect();
            out.push(f.one());
            return out;
        }
        powers.push(fl);
    }
}

/// Recognizes a commutative operator algebra (identity first) as a field and
/// picks a primitive element, trying `preferred` first.
pub fn centroid_field(basis: &[Matrix], base: &FieldSpec, preferred: Option<&Matrix>) -> Result<CentroidField> {
    let k = basis.len();
    if k == 0 || basis[0].rows() == 0 {
        return Err(Error::CentroidNotField("the centroid of the zero object is zero".into()));
    }
    for a in basis {
        for b in basis {
            if a.mul(b) != b.mul(a) {
                return Err(Error::CentroidNotField("centroid is not commutative".into()));
            }
        }
    }
    if k == 1 {
        let n = basis[0].rows();
        return Ok(CentroidField {
            generator: Matrix::identity(base, n),
            minpoly: vec![base.from_i64(-1), base.one()],
            field: base.clone(),
        });
    }
    let mut candidates: Vec<Matrix> = preferred.into_iter().cloned().collect();
    candidates.extend(basis[1..].iter().cloned());
    let mut rng = ChaCha8Rng::seed_from_u64(0xce27);
    for _ in 0..16 {
        let mut m = basis[0].scale(&base.zero());
        for b in basis {
            m = m.add(&b.scale(&base.random(&mut rng, 5)));
        }
        candidates.push(m);
    }
    for theta in candidates {
        let mp = minimal_polynomial(&theta);
        if mp.len() - 1 == 1 {
            continue;
        }
        if !poly::is_irreducible(base, &mp)? {
            return Err(Error::CentroidNotField(format!(
                "an element has a reducible minimal polynomial of degree {}",
                mp.len() - 1
            )));
        }
        if mp.len() - 1 == k {
            let field = FieldSpec::extension(base, mp.clone())?;
            return Ok(CentroidField {
                generator: theta,
                minpoly: mp,
                field,
            });
        }
    }
    Err(Error::Undecided("no primitive element of the centroid found".into()))
}

/// Coordinates over `F[theta]` of vectors in a space with a chosen
/// `F[theta]`-basis.
#[derive(Clone, Debug)]
pub struct Rebasing {
    pub gamma: CentroidField,
    /// The `F[theta]`-basis, as vectors of the original space.
    pub basis: Vec<Vector>,
    coords: Coordinates,
}

impl Rebasing {
    /// Greedy choice among unit vectors, in index order.
    fn new(gamma: &CentroidField, theta: &Matrix) -> Result<Rebasing> {
        let base = theta.field();
        let n = theta.rows();
        let k = gamma.degree();
        let mut ech = Echelon::new(base, n);
        let mut basis = Vec::new();
        let mut spanning = Vec::new();
        for i in 0..n {
            let u = unit_vector(base, n, i);
            if ech.reduce(u.clone()).iter().all(Scalar::is_zero) {
                continue;
            }
            let mut x = u.clone();
            for _ in 0..k {
                if !ech.insert(x.clone()) {
                    return Err(Error::Internal("centroid orbit is not free".into()));
                }
                spanning.push(x.clone());
                x = theta.mul_vec(&x);
            }
            basis.push(u);
        }
        let coords = Coordinates::new(base, n, &spanning).ok_or_else(|| Error::Internal("rebasing failed".into()))?;
        Ok(Rebasing {
            gamma: gamma.clone(),
            basis,
            coords,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` over the centroid field.
    pub fn to_closure(&self, x: &[Scalar]) -> Result<Vector> {
        let k = self.gamma.degree();
        let c = self
            .coords
            .coords(x)
            .ok_or_else(|| Error::Internal("vector outside the rebased space".into()))?;
        c.chunks(k)
            .map(|w| {
                if k == 1 {
                    Ok(w[0].clone())
                } else {
                    self.gamma.field.from_coeffs(w)
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct CentralClosure {
    pub algebra: StructureAlgebra,
    pub rebasing: Rebasing,
}

fn grade_preserving(m: &Matrix, g: &[i32]) -> bool {
    m.entries().all(|(r, c, x)| x.is_zero() || g[r] == g[c])
}

/// `L` as an algebra over its centroid, which must be a field.
pub fn central_closure(l: &StructureAlgebra) -> Result<CentralClosure> {
    central_closure_with(l, None)
}

pub fn central_closure_with(l: &StructureAlgebra, preferred: Option<&Matrix>) -> Result<CentralClosure> {
    let c = lie_centroid(l);
    let gamma = centroid_field(&c.basis, l.field(), preferred)?;
    let theta = gamma.generator.clone();
    let rb = Rebasing::new(&gamma, &theta)?;
    let m = rb.dim();
    let mut out = StructureAlgebra::new(&gamma.field, m);
    for a in 0..m {
        for b in a + 1..m {
            let v = rb.to_closure(&l.bracket(&rb.basis[a], &rb.basis[b]))?;
            out.set_bracket(a, b, &v);
        }
        let ta = theta.mul_vec(&rb.basis[a]);
        for b in 0..m {
            let lhs = rb.to_closure(&l.bracket(&ta, &rb.basis[b]))?;
            let rhs = rb.to_closure(&theta.mul_vec(&l.bracket(&rb.basis[a], &rb.basis[b])))?;
            if lhs != rhs {
                return Err(Error::Internal("bracket is not bilinear over the centroid".into()));
            }
        }
    }
    if let Some(g) = l.grading() {
        if grade_preserving(&theta, g) {
            let grading = rb
                .basis
                .iter()
                .map(|u| g[u.iter().position(|x| !x.is_zero()).unwrap()])
                .collect();
            out = out.with_grading(grading)?;
        }
    }
    Ok(CentralClosure {
        algebra: out,
        rebasing: rb,
    })
}

#[derive(Clone, Debug)]
pub struct PairClosure {
    pub pair: JordanPair,
    pub gamma: CentroidField,
    pub plus: Rebasing,
    pub minus: Rebasing,
}

impl PairClosure {
    pub fn rebasing(&self, s: Sign) -> &Rebasing {
        match s {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }
}

/// `V` as a pair over its centroid, which must be a field.
pub fn extended_central_closure_pair(v: &JordanPair) -> Result<PairClosure> {
    extended_central_closure_pair_with(v, None)
}

pub fn extended_central_closure_pair_with(v: &JordanPair, preferred: Option<&PairMap>) -> Result<PairClosure> {
    let jc = jordan_centroid(v);
    if !jc.condition_b.holds {
        return Err(Error::CentroidNotField(
            jc.condition_b.diagnostic.unwrap_or_else(|| "condition (b) fails".into()),
        ));
    }
    let blocks: Vec<Matrix> = jc.algebra.basis.iter().map(PairMap::block).collect();
    let pref = preferred.map(PairMap::block);
    let gamma = centroid_field(&blocks, v.field(), pref.as_ref())?;
    let np = v.dim(Sign::Plus);
    let split = |m: &Matrix, s: Sign| {
        let (off, len) = match s {
            Sign::Plus => (0, np),
            Sign::Minus => (np, v.dim(Sign::Minus)),
        };
        let mut out = Matrix::zeros(v.field(), len, len);
        for i in 0..len {
            for j in 0..len {
                out.set(i, j, m.get(off + i, off + j).clone());
            }
        }
        out
    };
    let thetas = [split(&gamma.generator, Sign::Plus), split(&gamma.generator, Sign::Minus)];
    let plus = Rebasing::new(&gamma, &thetas[0])?;
    let minus = Rebasing::new(&gamma, &thetas[1])?;
    let rbs = [&plus, &minus];
    let mut out = JordanPair::new(&gamma.field, plus.dim(), minus.dim());
    for s in Sign::BOTH {
        let (rs, ro) = (rbs[s.idx()], rbs[s.opposite().idx()]);
        for i in 0..rs.dim() {
            for j in 0..ro.dim() {
                for k in 0..rs.dim() {
                    let t = v.triple(s, &rs.basis[i], &ro.basis[j], &rs.basis[k]);
                    out.set_triple(s, i, j, k, &rs.to_closure(&t)?);
                }
            }
        }
    }
    Ok(PairClosure {
        pair: out,
        gamma,
        plus,
        minus,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureIsoReport {
    pub field: String,
    pub closure_dim: usize,
    pub tkk_dim: usize,
    pub closure_grading: (usize, usize, usize),
    pub tkk_grading: (usize, usize, usize),
    pub same_field: bool,
    pub graded: bool,
    pub bijective: bool,
    pub homomorphism: bool,
    pub pass: bool,
    #[serde(skip)]
    pub map: Vec<Vector>,
}

/// Builds the central closure of `TKK(v)` and `TKK` of the closure of `v`
/// over the same field, and checks the map that is the identity on the
/// wings and `[x, y] -> [x, y]` on degree zero.
pub fn verify_closure_iso(v: &JordanPair) -> Result<ClosureIsoReport> {
    let t = tkk_construct(v)?;
    let lc = central_closure(&t.algebra)?;
    let theta = lc.rebasing.gamma.generator.clone();
    let g = psi(&t.algebra, &theta)?;
    let pc = extended_central_closure_pair_with(v, Some(&g))?;
    let same_field = pc.gamma.field == lc.rebasing.gamma.field;
    let c = &lc.algebra;
    let gam = c.field().clone();
    let t2 = tkk_construct(&pc.pair.map_scalars(&gam, |x| Ok(x.clone()))?)?;
    let n = c.dim();
    let grading = c
        .grading()
        .ok_or_else(|| Error::Internal("closure of a graded algebra lost its grading".into()))?
        .to_vec();
    // Wing basis vectors of the closure, in order, and their partners in t2.
    let mut wing_image: Vec<Option<Vector>> = vec![None; n];
    for s in Sign::BOTH {
        let idx: Vec<usize> = (0..n).filter(|&a| grading[a] == s.degree()).collect();
        if idx.len() != pc.rebasing(s).dim() {
            return Err(Error::Internal("wing dimensions differ between the closures".into()));
        }
        for (r, &a) in idx.iter().enumerate() {
            wing_image[a] = Some(t2.embed(s, &unit_vector(&gam, idx.len(), r)));
        }
    }
    let plus: Vec<usize> = (0..n).filter(|&a| grading[a] == 1).collect();
    let minus: Vec<usize> = (0..n).filter(|&a| grading[a] == -1).collect();
    let mut brackets = Vec::new();
    let mut targets = Vec::new();
    for &a in &plus {
        for &b in &minus {
            brackets.push(c.bracket_basis_vec(a, b));
            targets.push(t2.algebra.bracket(wing_image[a].as_ref().unwrap(), wing_image[b].as_ref().unwrap()));
        }
    }
    let mut ech = Echelon::new(&gam, n);
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for (s, d) in brackets.iter().zip(&targets) {
        if ech.insert(s.clone()) {
            src.push(s.clone());
            dst.push(d.clone());
        }
    }
    let coords = Coordinates::new(&gam, n, &src).ok_or_else(|| Error::Internal("dependent brackets".into()))?;
    let mut map = Vec::with_capacity(n);
    for a in 0..n {
        if let Some(w) = &wing_image[a] {
            map.push(w.clone());
            continue;
        }
        let cf = coords
            .coords(&unit_vector(&gam, n, a))
            .ok_or_else(|| Error::NotThreeGraded("closure is not Jordan 3-graded".into()))?;
        let mut img = vec![gam.zero(); t2.algebra.dim()];
        for (k, ck) in cf.iter().enumerate() {
            for (o, d) in img.iter_mut().zip(&dst[k]) {
                *o = gam.add(o, &gam.mul(ck, d));
            }
        }
        map.push(img);
    }
    let graded = map
        .iter()
        .enumerate()
        .all(|(a, img)| t2.algebra.homogeneous_part(img, grading[a]) == *img);
    let bijective = n == t2.algebra.dim() && Matrix::from_columns(&gam, n, &map).rank() == n;
    let homomorphism = c.is_homomorphism(&t2.algebra, &map);
    let pass = same_field && graded && bijective && homomorphism && c.verify_lie().ok && t2.algebra.verify_lie().ok;
    Ok(ClosureIsoReport {
        field: gam.to_string(),
        closure_dim: n,
        tkk_dim: t2.algebra.dim(),
        closure_grading: c.grading_dims(),
        tkk_grading: t2.algebra.grading_dims(),
        same_field,
        graded,
        bijective,
        homomorphism,
        pass,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn gauss() -> FieldSpec {
        FieldSpec::extension(&q(), vec![q().one(), q().zero(), q().one()]).unwrap()
    }

    #[test]
    fn lie_centroid_examples() {
        let f = q();
        assert_eq!(lie_centroid(&StructureAlgebra::new(&f, 2)).dim(), 4);
        let c = lie_centroid(&StructureAlgebra::sl2(&f));
        assert_eq!(c.dim(), 1);
        assert_eq!(c.basis[0], Matrix::identity(&f, 3));
        let gl = StructureAlgebra::sl2(&gauss()).restrict_scalars().unwrap();
        let c = lie_centroid(&gl);
        assert_eq!(c.dim(), 2);
        // the non-identity element squares to -1
        let t = &c.basis[1];
        let sq = t.mul(t);
        let coords = &c.table[1][1];
        assert_eq!(sq, c.basis[0].scale(&coords[0]).add(&t.scale(&coords[1])));
        let mp = minimal_polynomial(t);
        assert_eq!(mp.len(), 3);
        assert!(poly::is_irreducible(&f, &mp).unwrap());
        for a in &c.basis {
            for k in 0..gl.dim() {
                let ad = gl.ad_basis(k);
                assert_eq!(a.mul(&ad), ad.mul(a));
            }
        }
    }

    #[test]
    fn jordan_centroid_examples() {
        let f = q();
        let r = jordan_centroid(&JordanPair::rectangular(&f, 1, 1).unwrap());
        assert_eq!(r.algebra.dim(), 1);
        assert!(r.condition_b.holds);
        let z = jordan_centroid(&JordanPair::zero_pair(&f, 1, 2));
        assert_eq!(z.algebra.dim(), 1 + 4);
        let g = JordanPair::rectangular(&gauss(), 1, 1).unwrap().restrict_scalars().unwrap();
        let c = jordan_centroid(&g);
        assert_eq!(c.algebra.dim(), 2);
        for m in &c.algebra.basis {
            assert!(satisfies_linear_conditions(&g, m) && satisfies_condition_b(&g, m));
        }
    }

    #[test]
    fn zero_pair_centroid_is_everything() {
        // every triple product vanishes, so all three conditions are vacuous
        let z = jordan_centroid(&JordanPair::zero_pair(&q(), 2, 2));
        assert!(z.condition_b.holds);
        assert_eq!(z.algebra.dim(), 8);
    }

    #[test]
    fn psi_upsilon_roundtrip() {
        for v in [
            JordanPair::rectangular(&q(), 1, 1).unwrap(),
            JordanPair::rectangular(&gauss(), 1, 1).unwrap().restrict_scalars().unwrap(),
            JordanPair::bilinear_form(&q(), &Matrix::identity(&q(), 3)).unwrap(),
        ] {
            let r = verify_centroid_iso(&v).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let t = tkk_construct(&JordanPair::rectangular(&q(), 1, 2).unwrap()).unwrap();
        let id = Matrix::identity(&q(), t.algebra.dim());
        assert_eq!(psi(&t.algebra, &id).unwrap(), PairMap::identity(&t.pair));
        assert_eq!(upsilon(&t.algebra, &PairMap::identity(&t.pair)).unwrap(), id);
    }

    #[test]
    fn mixed_grade_element_rejected() {
        // the diagonal part does not commute with ad
        let f = q();
        let l = StructureAlgebra::sl2(&f);
        let mut t = Matrix::identity(&f, 3);
        t.set(0, 0, f.from_i64(2));
        assert_eq!(psi(&l, &t), Err(Error::MixedGrades));
    }

    #[test]
    fn closures() {
        let f = q();
        let s = StructureAlgebra::sl2(&f);
        let c = central_closure(&s).unwrap();
        assert_eq!(c.algebra, s);
        let gs = StructureAlgebra::sl2(&gauss()).restrict_scalars().unwrap();
        let c = central_closure(&gs).unwrap();
        assert_eq!(c.algebra.dim(), 3);
        assert_eq!(c.algebra.field().degree(), 2);
        assert!(c.algebra.verify_lie().ok);
        assert_eq!(c.algebra.grading_dims(), (1, 1, 1));
        assert!(matches!(central_closure(&StructureAlgebra::new(&f, 2)), Err(Error::CentroidNotField(_))));
        let sum = s.direct_sum(&s).unwrap();
        assert!(matches!(central_closure(&sum), Err(Error::CentroidNotField(_))));
    }

    #[test]
    fn pair_closures() {
        let f = q();
        let r = JordanPair::rectangular(&f, 1, 2).unwrap();
        assert_eq!(extended_central_closure_pair(&r).unwrap().pair, r);
        let g = JordanPair::rectangular(&gauss(), 1, 1).unwrap().restrict_scalars().unwrap();
        let c = extended_central_closure_pair(&g).unwrap();
        assert_eq!(c.pair.dims(), [1, 1]);
        assert!(c.pair.verify().ok);
        assert!(extended_central_closure_pair(&JordanPair::zero_pair(&f, 1, 1)).is_err());
    }

    #[test]
    fn closure_isomorphisms() {
        let f = q();
        let r = verify_closure_iso(&JordanPair::rectangular(&f, 1, 1).unwrap()).unwrap();
        assert!(r.pass);
        assert_eq!(r.closure_dim, 3);
        let g = JordanPair::rectangular(&gauss(), 1, 1).unwrap().restrict_scalars().unwrap();
        let r = verify_closure_iso(&g).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.closure_dim, r.tkk_dim), (3, 3));
        let sqrt2 = FieldSpec::extension(&f, vec![f.from_i64(-2), f.zero(), f.one()]).unwrap();
        let h = JordanPair::rectangular(&sqrt2, 1, 2).unwrap().restrict_scalars().unwrap();
        let r = verify_closure_iso(&h).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.closure_dim, r.tkk_dim), (8, 8));
    }
}
