use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{LiePoly, Tree, Var};

pub type Word = Vec<Var>;

fn alternating(w: &[Var]) -> bool {
    w.windows(2).all(|p| p[0].sign != p[1].sign)
}

/// Combination of sign-alternating words in the free associative algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssocPoly {
    terms: BTreeMap<Word, BigRational>,
}

impl AssocPoly {
    pub fn zero() -> Self {
        AssocPoly::default()
    }

    /// A single word; non-alternating words give zero.
    pub fn word(c: BigRational, w: Word) -> Self {
        let mut p = AssocPoly::zero();
        p.add_word(c, w);
        p
    }

    fn add_word(&mut self, c: BigRational, w: Word) {
        if c.is_zero() || !alternating(&w) {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[Var]) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AssocPoly) -> AssocPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(c.clone(), w.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> AssocPoly {
        let mut out = AssocPoly::zero();
        for (w, d) in &self.terms {
            out.add_word(d * c, w.clone());
        }
        out
    }

    pub fn sub(&self, other: &AssocPoly) -> AssocPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Concatenation product, dropping words that stop alternating.
    pub fn mul(&self, other: &AssocPoly) -> AssocPoly {
        let mut out = AssocPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let (Some(x), Some(y)) = (a.last(), b.first()) {
                    if x.sign == y.sign {
                        continue;
                    }
                }
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_word(ca * cb, w);
            }
        }
        out
    }

    pub fn commutator(&self, other: &AssocPoly) -> AssocPoly {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Greatest word by length, then lexicographically on `(index, sign)`
    /// with `+` before `-`.
    pub fn leading(&self) -> Option<(&Word, &BigRational)> {
        self.terms.iter().max_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)))
    }

    /// The leading coefficient is `1` or `-1`.
    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.abs().is_one())
    }
}

impl fmt::Display for AssocPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            let a = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let parts: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for AssocPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn expand(t: &Tree) -> AssocPoly {
    match t {
        Tree::Leaf(v) => AssocPoly::word(BigRational::one(), vec![*v]),
        Tree::Bracket(a, b) => expand(a).commutator(&expand(b)),
    }
}

/// Image in the free special 3-graded algebra: brackets become commutators
/// and non-alternating words vanish.
pub fn pi_special(f: &LiePoly) -> AssocPoly {
    let mut out = AssocPoly::zero();
    for (c, t) in f.terms() {
        out = out.add(&expand(t).scale(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LiePoly {
        s.parse().unwrap()
    }

    fn one() -> BigRational {
        BigRational::one()
    }

    /// Commutator expansion into all words, without truncation, then the
    /// alternating filter applied at the end.
    fn naive(t: &Tree) -> BTreeMap<Word, i64> {
        match t {
            Tree::Leaf(v) => [(vec![*v], 1)].into(),
            Tree::Bracket(a, b) => {
                let (ea, eb) = (naive(a), naive(b));
                let mut out: BTreeMap<Word, i64> = BTreeMap::new();
                for (wa, ca) in &ea {
                    for (wb, cb) in &eb {
                        let mut w = wa.clone();
                        w.extend(wb);
                        *out.entry(w).or_default() += ca * cb;
                        let mut w = wb.clone();
                        w.extend(wa);
                        *out.entry(w).or_default() -= ca * cb;
                    }
                }
                out
            }
        }
    }

    fn naive_pi(f: &LiePoly) -> AssocPoly {
        let mut out = AssocPoly::zero();
        for (c, t) in f.terms() {
            for (w, k) in naive(t) {
                out = out.add(&AssocPoly::word(c * BigRational::from_integer(k.into()), w));
            }
        }
        out
    }

    #[test]
    fn small_images() {
        let (x1, x2, y1) = (Var::plus(1), Var::plus(2), Var::minus(1));
        assert!(pi_special(&p("[x1+, x2+]")).is_zero());
        let g = pi_special(&p("[x1+, x1-]"));
        assert_eq!(g, AssocPoly::word(one(), vec![x1, y1]).sub(&AssocPoly::word(one(), vec![y1, x1])));
        assert_eq!((g.degree(), g.is_monic()), (2, true));
        // x1 y1 x2 - y1 x1 x2 - x2 x1 y1 + x2 y1 x1, two of which alternate.
        let h = pi_special(&p("[[x1+, x1-], x2+]"));
        let expect = AssocPoly::word(one(), vec![x1, y1, x2]).add(&AssocPoly::word(one(), vec![x2, y1, x1]));
        assert_eq!(h, expect);
        assert_eq!(h, naive_pi(&p("[[x1+, x1-], x2+]")));
    }

    #[test]
    fn alternating_sum_vanishes() {
        assert!(pi_special(&p("[[x1+, x1-], x2+] - [[x2+, x1-], x1+]")).is_zero());
        let g = pi_special(&p("[[x1+, x1-], [x2+, x2-]] - [[x2+, x1-], [x1+, x2-]]"));
        assert!(!g.is_zero());
    }

    fn arb_tree() -> impl Strategy<Value = Tree> {
        let leaf = (1u32..4, any::<bool>())
            .prop_map(|(i, s)| Tree::Leaf(Var::new(i, if s { crate::sign::Sign::Plus } else { crate::sign::Sign::Minus })));
        leaf.prop_recursive(3, 8, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| Tree::bracket(a, b)))
    }

    proptest! {
        #[test]
        fn truncated_expansion_matches_naive(a in arb_tree(), b in arb_tree()) {
            let f = LiePoly::from_tree(one(), a.clone()).add(&LiePoly::from_tree(BigRational::from_integer(3.into()), b.clone()));
            prop_assert_eq!(pi_special(&f), naive_pi(&f));
        }

        #[test]
        fn bracket_compatible(a in arb_tree(), b in arb_tree()) {
            let (fa, fb) = (LiePoly::from_tree(one(), a), LiePoly::from_tree(one(), b));
            let lhs = pi_special(&fa.bracket(&fb));
            // Inadmissible brackets are dropped on the Lie side; their images
            // are words of sign-degree outside {-1, 0, 1}, so none alternate.
            prop_assert_eq!(lhs, pi_special(&fa).commutator(&pi_special(&fb)));
        }
    }
}
