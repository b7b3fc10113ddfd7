//! Exact fields: the rationals, prime fields F_p (p >= 5) and towers of
//! simple algebraic extensions `base[t]/(m(t))`.
//!
//! Elements are plain [`Scalar`] values in canonical form; every operation
//! goes through the [`FieldSpec`] that owns them.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use super::poly;
use crate::error::{Error, Result};

/// A field element in canonical form.
///
/// Rationals are reduced fractions, residues lie in `[0, p)`, and extension
/// elements are coefficient vectors of length exactly `deg(minpoly)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
    Poly(Vec<Scalar>),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => *r == 0,
            Scalar::Poly(c) => c.iter().all(Scalar::is_zero),
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    base: FieldSpec,
    /// Monic, low degree first; `minpoly.len() == degree + 1`.
    minpoly: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    Extension(Arc<ExtensionField>),
}

/// Description of an exact field together with its arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec {
            kind: FieldKind::Rationals,
        }
    }

    /// F_p for a prime p >= 5.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p < 5 {
            return Err(Error::InvalidField(format!(
                "prime field F_{p} rejected: characteristic must be 0 or >= 5"
            )));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("prime {p} too large (limit 2^32)")));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Self::prime_unchecked(p))
    }

    /// Small-characteristic prime fields for internal modular tests only.
    pub(crate) fn prime_unchecked(p: u64) -> Self {
        FieldSpec {
            kind: FieldKind::Prime(p),
        }
    }

    /// `base[t]/(minpoly)`; the minimal polynomial must be monic, of degree
    /// at least 2, and irreducible over `base`.
    pub fn extension(base: &FieldSpec, minpoly: Vec<Scalar>) -> Result<Self> {
        let minpoly = minpoly
            .into_iter()
            .map(|c| base.normalize(c))
            .collect::<Result<Vec<_>>>()?;
        let minpoly = poly::trimmed(minpoly);
        if minpoly.len() < 3 {
            return Err(Error::InvalidField(
                "extension minpoly must have degree >= 2".into(),
            ));
        }
        if !base.is_one(minpoly.last().unwrap()) {
            return Err(Error::InvalidField("extension minpoly must be monic".into()));
        }
        if !poly::is_irreducible(base, &minpoly)? {
            return Err(Error::ReducibleMinpoly(base.poly_to_string(&minpoly)));
        }
        Ok(Self::extension_unchecked(base, minpoly))
    }

    pub(crate) fn extension_unchecked(base: &FieldSpec, minpoly: Vec<Scalar>) -> Self {
        FieldSpec {
            kind: FieldKind::Extension(Arc::new(ExtensionField {
                base: base.clone(),
                minpoly,
            })),
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    /// The base field of an extension.
    pub fn base(&self) -> Option<&FieldSpec> {
        match &self.kind {
            FieldKind::Extension(e) => Some(&e.base),
            _ => None,
        }
    }

    pub fn minpoly(&self) -> Option<&[Scalar]> {
        match &self.kind {
            FieldKind::Extension(e) => Some(&e.minpoly),
            _ => None,
        }
    }

    /// Degree over the immediate base field (1 for prime fields and Q).
    pub fn degree(&self) -> usize {
        match &self.kind {
            FieldKind::Extension(e) => e.minpoly.len() - 1,
            _ => 1,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &self.kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension(e) => e.base.characteristic(),
        }
    }

    /// Number of elements, `None` for infinite fields (or sizes beyond u128).
    pub fn order(&self) -> Option<u128> {
        match &self.kind {
            FieldKind::Rationals => None,
            FieldKind::Prime(p) => Some(*p as u128),
            FieldKind::Extension(e) => {
                let q = e.base.order()?;
                let mut acc: u128 = 1;
                for _ in 0..self.degree() {
                    acc = acc.checked_mul(q)?;
                }
                Some(acc)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// The prime subfield at the bottom of the tower.
    pub fn prime_subfield(&self) -> FieldSpec {
        match &self.kind {
            FieldKind::Extension(e) => e.base.prime_subfield(),
            _ => self.clone(),
        }
    }

    pub fn zero(&self) -> Scalar {
        match &self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::zero()),
            FieldKind::Prime(_) => Scalar::Residue(0),
            FieldKind::Extension(e) => Scalar::Poly(vec![e.base.zero(); self.degree()]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match &self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Residue(r.to_u64().unwrap())
            }
            FieldKind::Extension(e) => {
                let mut c = vec![e.base.zero(); self.degree()];
                c[0] = e.base.from_bigint(n);
                Scalar::Poly(c)
            }
        }
    }

    /// Image of a rational number; fails when the denominator vanishes in
    /// positive characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        match self.inv(&den) {
            Some(d) => Ok(self.mul(&num, &d)),
            None => Err(Error::NotRepresentable {
                value: q.to_string(),
                field: self.to_string(),
            }),
        }
    }

    /// Embeds an element of the base field into this extension.
    pub fn from_base(&self, b: &Scalar) -> Scalar {
        match &self.kind {
            FieldKind::Extension(e) => {
                let mut c = vec![e.base.zero(); self.degree()];
                c[0] = b.clone();
                Scalar::Poly(c)
            }
            _ => b.clone(),
        }
    }

    /// The adjoined root `t` of an extension.
    pub fn generator(&self) -> Option<Scalar> {
        match &self.kind {
            FieldKind::Extension(e) => {
                let mut c = vec![e.base.zero(); self.degree()];
                if c.len() > 1 {
                    c[1] = e.base.one();
                    Some(Scalar::Poly(c))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Builds an extension element from base coefficients (low degree first),
    /// reducing modulo the minimal polynomial.
    pub fn from_coeffs(&self, coeffs: &[Scalar]) -> Result<Scalar> {
        match &self.kind {
            FieldKind::Extension(e) => {
                let c = coeffs
                    .iter()
                    .map(|x| e.base.normalize(x.clone()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Scalar::Poly(self.reduce_mod_minpoly(e, c)))
            }
            _ => Err(Error::InvalidField(format!(
                "coefficient vector given for non-extension field {self}"
            ))),
        }
    }

    pub fn coeffs<'a>(&self, a: &'a Scalar) -> &'a [Scalar] {
        match a {
            Scalar::Poly(c) => c,
            _ => std::slice::from_ref(a),
        }
    }

    /// Checks that `a` is a canonical element of this field, converting
    /// compatible representations (rationals into extensions, and so on).
    pub fn normalize(&self, a: Scalar) -> Result<Scalar> {
        match (&self.kind, a) {
            (FieldKind::Rationals, Scalar::Rational(q)) => Ok(Scalar::Rational(q)),
            (FieldKind::Prime(p), Scalar::Residue(r)) => Ok(Scalar::Residue(r % p)),
            (FieldKind::Prime(_), Scalar::Rational(q)) => self.from_rational(&q),
            (FieldKind::Extension(e), Scalar::Poly(c)) => {
                let c = c
                    .into_iter()
                    .map(|x| e.base.normalize(x))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Scalar::Poly(self.reduce_mod_minpoly(e, c)))
            }
            (FieldKind::Extension(e), other) => {
                let b = e.base.normalize(other)?;
                Ok(self.from_base(&b))
            }
            (_, other) => Err(Error::NotRepresentable {
                value: format!("{other:?}"),
                field: self.to_string(),
            }),
        }
    }

    fn reduce_mod_minpoly(&self, e: &ExtensionField, mut c: Vec<Scalar>) -> Vec<Scalar> {
        let n = e.minpoly.len() - 1;
        let base = &e.base;
        while c.len() > n {
            let top = c.pop().unwrap();
            if !top.is_zero() {
                let shift = c.len() - n;
                for i in 0..n {
                    let t = base.mul(&top, &e.minpoly[i]);
                    c[shift + i] = base.sub(&c[shift + i], &t);
                }
            }
        }
        while c.len() < n {
            c.push(base.zero());
        }
        c
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.kind, a, b) {
            (FieldKind::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (FieldKind::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (FieldKind::Extension(e), Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(
                x.iter().zip(y).map(|(u, v)| e.base.add(u, v)).collect(),
            ),
            _ => panic!("scalar {a:?} or {b:?} does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (&self.kind, a) {
            (FieldKind::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldKind::Prime(p), Scalar::Residue(x)) => {
                Scalar::Residue(if *x == 0 { 0 } else { p - x })
            }
            (FieldKind::Extension(e), Scalar::Poly(x)) => {
                Scalar::Poly(x.iter().map(|u| e.base.neg(u)).collect())
            }
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.kind, a, b) {
            (FieldKind::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (FieldKind::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (FieldKind::Extension(e), Scalar::Poly(x), Scalar::Poly(y)) => {
                if a.is_zero() || b.is_zero() {
                    return self.zero();
                }
                let prod = poly::mul(&e.base, x, y);
                Scalar::Poly(self.reduce_mod_minpoly(e, prod))
            }
            _ => panic!("scalar {a:?} or {b:?} does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match (&self.kind, a) {
            (FieldKind::Rationals, Scalar::Rational(x)) => Some(Scalar::Rational(x.recip())),
            (FieldKind::Prime(p), Scalar::Residue(x)) => {
                Some(Scalar::Residue(pow_mod_u64(*x, p - 2, *p)))
            }
            (FieldKind::Extension(e), Scalar::Poly(x)) => {
                // u*x + v*m = g with g a nonzero constant since m is irreducible.
                let (g, u, _) = poly::xgcd(&e.base, &poly::trimmed(x.clone()), &e.minpoly);
                debug_assert_eq!(g.len(), 1);
                let gi = e.base.inv(&g[0])?;
                let u = poly::scale(&e.base, &u, &gi);
                Some(Scalar::Poly(self.reduce_mod_minpoly(e, u)))
            }
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    /// `a / b`; panics on division by zero.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, &inv)
    }

    pub fn pow(&self, a: &Scalar, mut e: u128) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Enumerates a finite field: index in `[0, order)` to element, mixed radix
    /// over the prime subfield.
    pub fn element(&self, mut index: u128) -> Scalar {
        match &self.kind {
            FieldKind::Rationals => self.from_i64(index as i64),
            FieldKind::Prime(p) => Scalar::Residue((index % *p as u128) as u64),
            FieldKind::Extension(e) => {
                let q = e.base.order().expect("element() requires a finite field");
                let mut c = Vec::with_capacity(self.degree());
                for _ in 0..self.degree() {
                    c.push(e.base.element(index % q));
                    index /= q;
                }
                Scalar::Poly(c)
            }
        }
    }

    /// A pseudorandom element: uniform for finite fields, a small integer
    /// combination (|coefficients| <= `bound`) otherwise.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        match &self.kind {
            FieldKind::Rationals => self.from_i64(rng.gen_range(-bound..=bound)),
            FieldKind::Prime(p) => Scalar::Residue(rng.gen_range(0..*p)),
            FieldKind::Extension(e) => {
                Scalar::Poly((0..self.degree()).map(|_| e.base.random(rng, bound)).collect())
            }
        }
    }

    /// Denominators of a rational (or rational-coefficient extension) element.
    pub fn denominators(&self, a: &Scalar, out: &mut Vec<BigInt>) {
        match a {
            Scalar::Rational(q) => {
                if !q.denom().is_one() {
                    out.push(q.denom().clone());
                }
            }
            Scalar::Residue(_) => {}
            Scalar::Poly(c) => {
                if let Some(b) = self.base() {
                    for x in c {
                        b.denominators(x, out);
                    }
                }
            }
        }
    }

    /// Image under the reduction map of Q (or an extension tower over Q)
    /// into the corresponding tower over F_p.
    pub fn reduce_scalar(&self, target: &FieldSpec, a: &Scalar) -> Result<Scalar> {
        match (&self.kind, a) {
            (FieldKind::Rationals, Scalar::Rational(q)) => target.from_rational(q),
            (FieldKind::Prime(_), Scalar::Residue(_)) => Ok(a.clone()),
            (FieldKind::Extension(e), Scalar::Poly(c)) => {
                let tb = target
                    .base()
                    .ok_or_else(|| Error::FieldMismatch("reduction target is not an extension".into()))?;
                let cs = c
                    .iter()
                    .map(|x| e.base.reduce_scalar(tb, x))
                    .collect::<Result<Vec<_>>>()?;
                target.from_coeffs(&cs)
            }
            _ => Err(Error::FieldMismatch(format!("cannot reduce {a:?}"))),
        }
    }

    pub fn format_scalar(&self, a: &Scalar) -> String {
        match (&self.kind, a) {
            (FieldKind::Rationals, Scalar::Rational(q)) => q.to_string(),
            (FieldKind::Prime(_), Scalar::Residue(r)) => r.to_string(),
            (FieldKind::Extension(e), Scalar::Poly(c)) => {
                let parts: Vec<String> = c.iter().map(|x| e.base.format_scalar(x)).collect();
                format!("[{}]", parts.join(","))
            }
            _ => format!("{a:?}"),
        }
    }

    pub fn format_vector(&self, v: &[Scalar]) -> Vec<String> {
        v.iter().map(|a| self.format_scalar(a)).collect()
    }

    /// Parses the text form produced by [`FieldSpec::format_scalar`]. Plain
    /// base-field scalars are accepted for extensions and embedded.
    pub fn parse_scalar(&self, s: &str) -> std::result::Result<Scalar, String> {
        let s = s.trim();
        match &self.kind {
            FieldKind::Rationals | FieldKind::Prime(_) => {
                let q = parse_rational(s)?;
                self.from_rational(&q).map_err(|e| e.to_string())
            }
            FieldKind::Extension(e) => {
                if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                    let parts = split_top_level(inner);
                    if parts.len() > self.degree() {
                        return Err(format!(
                            "extension element has {} coefficients, degree is {}",
                            parts.len(),
                            self.degree()
                        ));
                    }
                    let cs = parts
                        .iter()
                        .map(|p| e.base.parse_scalar(p))
                        .collect::<std::result::Result<Vec<_>, _>>()?;
                    self.from_coeffs(&cs).map_err(|e| e.to_string())
                } else {
                    let b = e.base.parse_scalar(s)?;
                    Ok(self.from_base(&b))
                }
            }
        }
    }

    pub(crate) fn poly_to_string(&self, p: &[Scalar]) -> String {
        let parts: Vec<String> = p.iter().map(|x| self.format_scalar(x)).collect();
        format!("[{}]", parts.join(","))
    }
}

pub(crate) fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad integer '{n}'"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad integer '{d}'"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

/// Splits on commas that are not nested inside brackets or parentheses.
pub(crate) fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' | '(' => {
                depth += 1;
                cur.push(ch);
            }
            ']' | ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() || !parts.is_empty() {
        parts.push(cur.trim().to_string());
    }
    parts
}

pub(crate) fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let m128 = m as u128;
    let mut b128 = b as u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    b = acc as u64;
    b
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "Fp {p}"),
            FieldKind::Extension(e) => {
                let base = match e.base.kind {
                    FieldKind::Rationals => e.base.to_string(),
                    _ => format!("({})", e.base),
                };
                write!(f, "ext {} {}", base, e.base.poly_to_string(&e.minpoly))
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `Q`, `Fp P`, or `ext BASE [c0,...,cn]` where BASE is `Q` or a
/// parenthesised field.
pub fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    let s = s.trim();
    if s == "Q" {
        return Ok(FieldSpec::rationals());
    }
    if let Some(rest) = s.strip_prefix("Fp") {
        let p: u64 = rest.trim().parse().map_err(|_| format!("bad prime '{}'", rest.trim()))?;
        return FieldSpec::prime_field(p).map_err(|e| e.to_string());
    }
    if let Some(rest) = s.strip_prefix("ext") {
        let rest = rest.trim();
        let (base, poly_text) = if let Some(inner) = rest.strip_prefix('(') {
            let close = matching_paren(inner).ok_or("unbalanced parenthesis in base field")?;
            (parse_field(&inner[..close])?, inner[close + 1..].trim())
        } else {
            let (b, p) = rest.split_once(char::is_whitespace).ok_or("missing minpoly")?;
            (parse_field(b)?, p.trim())
        };
        let inner = poly_text
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or("minpoly must be a [c0,...,cn] coefficient list")?;
        let coeffs = split_top_level(inner)
            .iter()
            .map(|c| base.parse_scalar(c))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        return FieldSpec::extension(&base, coeffs).map_err(|e| e.to_string());
    }
    Err(format!("unknown field '{s}'"))
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        FieldSpec::rationals().from_i64(n)
    }

    #[test]
    fn gaussian_rationals_square_to_minus_one() {
        let f = FieldSpec::extension(&FieldSpec::rationals(), vec![q(1), q(0), q(1)]).unwrap();
        let t = f.generator().unwrap();
        assert_eq!(f.mul(&t, &t), f.from_i64(-1));
    }

    #[test]
    fn sqrt_two() {
        let f = FieldSpec::extension(&FieldSpec::rationals(), vec![q(-2), q(0), q(1)]).unwrap();
        let t = f.generator().unwrap();
        assert_eq!(f.mul(&t, &t), f.from_i64(2));
        let ti = f.inv(&t).unwrap();
        assert!(f.is_one(&f.mul(&t, &ti)));
    }

    #[test]
    fn reducible_minpoly_rejected() {
        let err = FieldSpec::extension(&FieldSpec::rationals(), vec![q(-1), q(0), q(1)]).unwrap_err();
        assert!(matches!(err, Error::ReducibleMinpoly(_)));
    }

    #[test]
    fn small_characteristic_rejected() {
        assert!(FieldSpec::prime_field(2).is_err());
        assert!(FieldSpec::prime_field(3).is_err());
        assert!(FieldSpec::prime_field(9).is_err());
        assert!(FieldSpec::prime_field(5).is_ok());
    }

    #[test]
    fn non_monic_and_linear_minpolys_rejected() {
        let r = FieldSpec::rationals();
        assert!(FieldSpec::extension(&r, vec![q(1), q(0), q(2)]).is_err());
        assert!(FieldSpec::extension(&r, vec![q(1), q(1)]).is_err());
    }

    #[test]
    fn f25_as_tower() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        // t^2 - 2 is irreducible mod 5 (2 is a non-residue).
        let f25 = FieldSpec::extension(&f5, vec![f5.from_i64(-2), f5.zero(), f5.one()]).unwrap();
        assert_eq!(f25.order(), Some(25));
        let mut nonzero = 0;
        for i in 1..25 {
            let a = f25.element(i);
            let ai = f25.inv(&a).unwrap();
            assert!(f25.is_one(&f25.mul(&a, &ai)));
            nonzero += 1;
        }
        assert_eq!(nonzero, 24);
        // -1 is a square mod 5, so t^2 + 1 splits.
        assert!(FieldSpec::extension(&f5, vec![f5.one(), f5.zero(), f5.one()]).is_err());
    }

    #[test]
    fn field_text_round_trip() {
        for text in ["Q", "Fp 7", "ext Q [1,0,1]", "ext (Fp 5) [3,0,1]"] {
            let f = parse_field(text).unwrap();
            assert_eq!(f.to_string(), text);
        }
        let nested = parse_field("ext (ext Q [-2,0,1]) [[-3],[0],[1]]");
        // t^2 - 3 over Q(sqrt 2) is irreducible but not decidable over a number-field base.
        assert!(nested.is_err());
    }

    #[test]
    fn scalar_text_round_trip() {
        let f = parse_field("ext Q [1,0,1]").unwrap();
        let a = f.parse_scalar("[1/2,-3]").unwrap();
        assert_eq!(f.format_scalar(&a), "[1/2,-3]");
        assert_eq!(f.parse_scalar("5").unwrap(), f.from_i64(5));
    }
}
