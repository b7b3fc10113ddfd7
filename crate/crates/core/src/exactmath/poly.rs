//! Dense univariate polynomials over a [`FieldSpec`], stored low degree
//! first with no trailing zeros (the zero polynomial is the empty vector).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{is_prime_u64, FieldKind, FieldSpec, Scalar};
use crate::error::{Error, Result};

pub fn trimmed(mut p: Vec<Scalar>) -> Vec<Scalar> {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(p: &[Scalar]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(f: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trimmed(out)
}

pub fn sub(f: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trimmed(out)
}

pub fn scale(f: &FieldSpec, a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    if c.is_zero() {
        return Vec::new();
    }
    trimmed(a.iter().map(|x| f.mul(x, c)).collect())
}

/// Product without trimming (callers may rely on the full length).
pub fn mul(f: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let t = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &t);
        }
    }
    out
}

/// Euclidean division: returns `(q, r)` with `a = q b + r`, `deg r < deg b`.
pub fn divrem(f: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let b = trimmed(b.to_vec());
    let db = degree(&b).expect("polynomial division by zero");
    let lead_inv = f.inv(&b[db]).unwrap();
    let mut r = trimmed(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let t = f.mul(&c, bc);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        q[shift] = c;
        r = trimmed(r);
    }
    (trimmed(q), r)
}

pub fn rem(f: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    divrem(f, a, b).1
}

pub fn monic(f: &FieldSpec, a: &[Scalar]) -> Vec<Scalar> {
    match a.last() {
        Some(l) => {
            let li = f.inv(l).unwrap();
            scale(f, a, &li)
        }
        None => Vec::new(),
    }
}

/// Monic greatest common divisor.
pub fn gcd(f: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut a = trimmed(a.to_vec());
    let mut b = trimmed(b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Extended Euclid: `(g, u, v)` with `u a + v b = g`; `g` is not normalized.
pub fn xgcd(
    f: &FieldSpec,
    a: &[Scalar],
    b: &[Scalar],
) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
    let (mut r0, mut r1) = (trimmed(a.to_vec()), trimmed(b.to_vec()));
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

pub fn eval(f: &FieldSpec, p: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = f.zero();
    for c in p.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn derivative(f: &FieldSpec, p: &[Scalar]) -> Vec<Scalar> {
    trimmed(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect(),
    )
}

/// `base^e mod m`.
pub fn powmod(f: &FieldSpec, base: &[Scalar], mut e: u128, m: &[Scalar]) -> Vec<Scalar> {
    let mut acc = rem(f, &[f.one()], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    acc
}

fn x_poly(f: &FieldSpec) -> Vec<Scalar> {
    vec![f.zero(), f.one()]
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility over the field.
///
/// Decided exactly over finite fields (Rabin's test) and over Q in degree
/// at most 3 (rational roots). Higher degree over Q is decided when a
/// rational root exists, when the polynomial stays irreducible modulo a
/// prime, or when factor-degree patterns modulo several primes exclude
/// every proper factor degree; otherwise [`Error::Undecided`].
pub fn is_irreducible(f: &FieldSpec, p: &[Scalar]) -> Result<bool> {
    let p = trimmed(p.to_vec());
    let n = match degree(&p) {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    if let Some(q) = f.order() {
        return Ok(rabin(f, &p, q, n));
    }
    match f.kind() {
        FieldKind::Rationals => rational_irreducible(f, &p, n),
        _ => Err(Error::Unsupported(format!(
            "irreducibility over the number field {f}"
        ))),
    }
}

fn rabin(f: &FieldSpec, p: &[Scalar], q: u128, n: usize) -> bool {
    let p = monic(f, p);
    let x = x_poly(f);
    // frob[k] = x^(q^k) mod p
    let mut frob = vec![rem(f, &x, &p)];
    for k in 1..=n {
        let next = powmod(f, &frob[k - 1], q, &p);
        frob.push(next);
    }
    if sub(f, &frob[n], &rem(f, &x, &p)).iter().any(|c| !c.is_zero()) {
        return false;
    }
    for r in prime_factors(n) {
        let h = sub(f, &frob[n / r], &x);
        if degree(&gcd(f, &h, &p)) != Some(0) {
            return false;
        }
    }
    true
}

/// Integer coefficients (primitive) of a rational polynomial.
pub(crate) fn integer_coeffs(p: &[Scalar]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p {
        if let Scalar::Rational(q) = c {
            lcm = lcm.lcm(q.denom());
        }
    }
    let mut out: Vec<BigInt> = p
        .iter()
        .map(|c| match c {
            Scalar::Rational(q) => q.numer() * (&lcm / q.denom()),
            _ => unreachable!("rational polynomial expected"),
        })
        .collect();
    let mut g = BigInt::zero();
    for c in &out {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in out.iter_mut() {
            *c = &*c / &g;
        }
    }
    out
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(vec![BigInt::zero()]);
    }
    let small = n.to_u64()?;
    if small > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a rational polynomial, or `None` when the coefficient
/// sizes make the candidate enumeration impractical.
pub(crate) fn rational_roots(f: &FieldSpec, p: &[Scalar]) -> Option<Vec<BigRational>> {
    let z = integer_coeffs(p);
    let mut roots = Vec::new();
    let mut lo = 0;
    while lo < z.len() && z[lo].is_zero() {
        lo += 1;
    }
    if lo > 0 {
        roots.push(BigRational::zero());
    }
    let a0 = &z[lo];
    let an = z.last().unwrap();
    let num = divisors(a0)?;
    let den = divisors(an)?;
    for a in &num {
        for b in &den {
            for s in [1i32, -1] {
                let cand = BigRational::new(a * BigInt::from(s), b.clone());
                if roots.contains(&cand) {
                    continue;
                }
                if eval(f, p, &Scalar::Rational(cand.clone())).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}

fn rational_irreducible(f: &FieldSpec, p: &[Scalar], n: usize) -> Result<bool> {
    // A repeated factor is visible through the derivative in characteristic 0.
    if degree(&gcd(f, p, &derivative(f, p))) != Some(0) {
        return Ok(false);
    }
    match rational_roots(f, p) {
        Some(r) if !r.is_empty() => return Ok(false),
        Some(_) if n <= 3 => return Ok(true),
        Some(_) => {}
        None if n <= 3 => {
            return Err(Error::Undecided(format!(
                "coefficients too large for the rational root test: {}",
                f.poly_to_string(p)
            )))
        }
        None => {}
    }
    // Possible degrees of a factor over Q, intersected across primes.
    let z = integer_coeffs(p);
    let mut allowed: Vec<bool> = vec![true; n + 1];
    let mut tried = 0;
    let mut prime = 5u64;
    while tried < 40 && prime < 2000 {
        if is_prime_u64(prime) {
            let fp = FieldSpec::prime_unchecked(prime);
            let bp = BigInt::from(prime);
            if !z.last().unwrap().mod_floor(&bp).is_zero() {
                let red: Vec<Scalar> = z.iter().map(|c| fp.from_bigint(c)).collect();
                let red = trimmed(red);
                if degree(&gcd(&fp, &red, &derivative(&fp, &red))) == Some(0) {
                    tried += 1;
                    let degs = distinct_degree_pattern(&fp, &red, prime as u128);
                    let sums = subset_sums(&degs, n);
                    for d in 1..n {
                        allowed[d] &= sums[d];
                    }
                    if (1..n).all(|d| !allowed[d]) {
                        return Ok(true);
                    }
                }
            }
        }
        prime += 2;
    }
    Err(Error::Undecided(format!(
        "degree-{n} polynomial {} over Q",
        f.poly_to_string(p)
    )))
}

/// Multiset of irreducible factor degrees of a squarefree polynomial over
/// a finite field of order `q`.
pub(crate) fn distinct_degree_pattern(f: &FieldSpec, p: &[Scalar], q: u128) -> Vec<usize> {
    let mut rest = monic(f, p);
    let x = x_poly(f);
    let mut h = rem(f, &x, &rest);
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(dr) = degree(&rest) {
        if dr == 0 {
            break;
        }
        d += 1;
        if 2 * d > dr {
            out.push(dr);
            break;
        }
        h = powmod(f, &h, q, &rest);
        let g = gcd(f, &sub(f, &h, &x), &rest);
        let dg = degree(&g).unwrap_or(0);
        for _ in 0..dg / d {
            out.push(d);
        }
        if dg > 0 {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
        }
    }
    out
}

/// An irreducible factor of least degree of `p` over a finite field of
/// odd order `q` (distinct-degree search, then Cantor-Zassenhaus splitting).
pub fn smallest_irreducible_factor<R: rand::Rng + ?Sized>(
    f: &FieldSpec,
    p: &[Scalar],
    q: u128,
    rng: &mut R,
) -> Option<Vec<Scalar>> {
    let p = monic(f, &trimmed(p.to_vec()));
    let n = degree(&p)?;
    if n == 0 {
        return None;
    }
    let x = x_poly(f);
    let mut h = rem(f, &x, &p);
    let mut g = None;
    for d in 1..=n {
        h = powmod(f, &h, q, &p);
        let gd = gcd(f, &sub(f, &h, &x), &p);
        if degree(&gd).unwrap_or(0) > 0 {
            g = Some((d, gd));
            break;
        }
    }
    let (d, mut g) = g?;
    while degree(&g).unwrap() > d {
        let dg = degree(&g).unwrap();
        let a: Vec<Scalar> = trimmed((0..dg).map(|_| f.random(rng, 0)).collect());
        if a.is_empty() {
            continue;
        }
        // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
        let mut frob = rem(f, &a, &g);
        let mut norm = frob.clone();
        for _ in 1..d {
            frob = powmod(f, &frob, q, &g);
            norm = rem(f, &mul(f, &norm, &frob), &g);
        }
        let b = powmod(f, &norm, (q - 1) / 2, &g);
        let split = gcd(f, &sub(f, &b, &[f.one()]), &g);
        let ds = degree(&split).unwrap_or(0);
        if ds > 0 && ds < dg {
            let other = divrem(f, &g, &split).0;
            g = if ds <= dg - ds { split } else { monic(f, &other) };
        }
    }
    Some(g)
}

fn subset_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut s = vec![false; n + 1];
    s[0] = true;
    for &d in degs {
        for t in (d..=n).rev() {
            if s[t - d] {
                s[t] = true;
            }
        }
    }
    s
}
