//! Polynomials in the free 3-graded Lie algebra on signed variables.
//!
//! A polynomial is a rational combination of bracket trees. Trees whose
//! sign-degree (or that of any subtree) leaves `{-1, 0, 1}` are dropped on
//! construction; no other rewriting is done, so syntactic zero is weaker
//! than zero in the free algebra.

mod assoc;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::matrix::vec_scale;
use crate::exactmath::Vector;
use crate::sign::Sign;

pub use assoc::{pi_special, AssocPoly, Word};

/// The variable `x_index^sign`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Var {
    pub index: u32,
    pub sign: Sign,
}

impl Var {
    pub fn new(index: u32, sign: Sign) -> Self {
        Var { index, sign }
    }
    pub fn plus(index: u32) -> Self {
        Var::new(index, Sign::Plus)
    }
    pub fn minus(index: u32) -> Self {
        Var::new(index, Sign::Minus)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.index, self.sign.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(Var),
    Bracket(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn bracket(a: Tree, b: Tree) -> Tree {
        Tree::Bracket(Box::new(a), Box::new(b))
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    /// Sum of leaf signs.
    pub fn weight(&self) -> i32 {
        match self {
            Tree::Leaf(v) => v.sign.degree(),
            Tree::Bracket(a, b) => a.weight() + b.weight(),
        }
    }

    fn admissible(&self) -> bool {
        match self {
            Tree::Leaf(_) => true,
            Tree::Bracket(a, b) => self.weight().abs() <= 1 && a.admissible() && b.admissible(),
        }
    }

    pub fn leaves(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Var>) {
        match self {
            Tree::Leaf(v) => out.push(*v),
            Tree::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn occurrences(&self, v: Var) -> usize {
        match self {
            Tree::Leaf(w) => usize::from(*w == v),
            Tree::Bracket(a, b) => a.occurrences(v) + b.occurrences(v),
        }
    }

    /// Every tree obtained by replacing each occurrence of `v` by one of
    /// `choices`.
    fn substitutions(&self, v: Var, choices: &[Var]) -> Vec<Tree> {
        match self {
            Tree::Leaf(w) if *w == v => choices.iter().map(|c| Tree::Leaf(*c)).collect(),
            Tree::Leaf(_) => vec![self.clone()],
            Tree::Bracket(a, b) => {
                let sa = a.substitutions(v, choices);
                let sb = b.substitutions(v, choices);
                let mut out = Vec::with_capacity(sa.len() * sb.len());
                for x in &sa {
                    for y in &sb {
                        out.push(Tree::bracket(x.clone(), y.clone()));
                    }
                }
                out
            }
        }
    }

    fn eval(&self, l: &StructureAlgebra, values: &BTreeMap<Var, Vector>) -> Vector {
        match self {
            Tree::Leaf(v) => values[v].clone(),
            Tree::Bracket(a, b) => l.bracket(&a.eval(l, values), &b.eval(l, values)),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(v) => write!(f, "{v}"),
            Tree::Bracket(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// A rational combination of admissible bracket trees, with like trees merged.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiePoly {
    terms: BTreeMap<Tree, BigRational>,
}

impl LiePoly {
    pub fn zero() -> Self {
        LiePoly::default()
    }

    pub fn var(v: Var) -> Self {
        LiePoly::from_tree(BigRational::one(), Tree::Leaf(v))
    }

    pub fn from_tree(c: BigRational, t: Tree) -> Self {
        let mut p = LiePoly::zero();
        p.add_term(c, t);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, Tree)>) -> Self {
        let mut p = LiePoly::zero();
        for (c, t) in terms {
            p.add_term(c, t);
        }
        p
    }

    fn add_term(&mut self, c: BigRational, t: Tree) {
        if c.is_zero() || !t.admissible() {
            return;
        }
        let e = self.terms.entry(t).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &Tree)> {
        self.terms.iter().map(|(t, c)| (c, t))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LiePoly) -> LiePoly {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(c.clone(), t.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> LiePoly {
        LiePoly::from_terms(self.terms.iter().map(|(t, d)| (d * c, t.clone())))
    }

    pub fn sub(&self, other: &LiePoly) -> LiePoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn bracket(&self, other: &LiePoly) -> LiePoly {
        let mut out = LiePoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(ca * cb, Tree::bracket(a.clone(), b.clone()));
            }
        }
        out
    }

    /// Maximal tree degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Tree::degree).max().unwrap_or(0)
    }

    /// The part of sign-degree `w`.
    pub fn component(&self, w: i32) -> LiePoly {
        LiePoly {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.weight() == w)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Some(w)` when every term has sign-degree `w`.
    pub fn homogeneous_weight(&self) -> Option<i32> {
        let ws: BTreeSet<i32> = self.terms.keys().map(Tree::weight).collect();
        if ws.len() == 1 {
            ws.into_iter().next()
        } else {
            None
        }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(Tree::leaves).collect()
    }

    /// Each variable occurs at most once in each term.
    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|t| {
            let l = t.leaves();
            l.iter().collect::<BTreeSet<_>>().len() == l.len()
        })
    }

    /// Smallest unused index for the given sign.
    pub fn fresh_var(&self, sign: Sign) -> Var {
        let used: BTreeSet<u32> = self.variables().iter().filter(|v| v.sign == sign).map(|v| v.index).collect();
        let index = (1..).find(|i| !used.contains(i)).unwrap();
        Var::new(index, sign)
    }

    /// Replaces `v` by `v + w` throughout.
    fn substitute_sum(&self, v: Var, w: Var) -> LiePoly {
        let mut out = LiePoly::zero();
        for (t, c) in &self.terms {
            for s in t.substitutions(v, &[v, w]) {
                out.add_term(c.clone(), s);
            }
        }
        out
    }

    fn rename(&self, v: Var, w: Var) -> LiePoly {
        let mut out = LiePoly::zero();
        for (t, c) in &self.terms {
            for s in t.substitutions(v, &[w]) {
                out.add_term(c.clone(), s);
            }
        }
        out
    }

    /// One linearization step `f(v -> v + w) - f(v) - f(v -> w)` with `w` fresh.
    pub fn linearize(&self, v: Var) -> LiePoly {
        let w = self.fresh_var(v.sign);
        self.substitute_sum(v, w).sub(self).sub(&self.rename(v, w))
    }

    /// Linearize every variable occurring more than once in some term, until
    /// the result is multilinear.
    pub fn multilinearize(&self) -> LiePoly {
        self.multilinearize_traced().0
    }

    /// [`LiePoly::multilinearize`] together with the steps `(v, w)` taken, in
    /// order, where `w` is the fresh copy of `v`.
    pub fn multilinearize_traced(&self) -> (LiePoly, Vec<(Var, Var)>) {
        let mut f = self.clone();
        let mut steps = Vec::new();
        loop {
            let repeated = f
                .terms
                .keys()
                .flat_map(|t| {
                    let l = t.leaves();
                    l.iter().copied().filter(|v| t.occurrences(*v) > 1).collect::<Vec<_>>()
                })
                .min();
            match repeated {
                Some(v) => {
                    steps.push((v, f.fresh_var(v.sign)));
                    f = f.linearize(v);
                }
                None => return (f, steps),
            }
        }
    }

    /// `[f0, y]` with `y` a fresh variable of sign `s`.
    pub fn lower_to_grade(&self, s: Sign) -> Result<LiePoly> {
        if self.terms.keys().any(|t| t.weight() != 0) {
            return Err(Error::NotDegreeZero);
        }
        let y = self.fresh_var(s);
        Ok(self.bracket(&LiePoly::var(y)))
    }

    /// Groups terms by the set of variables they use.
    pub fn split_by_support(&self) -> Vec<(BTreeSet<Var>, LiePoly)> {
        let mut groups: BTreeMap<Vec<Var>, LiePoly> = BTreeMap::new();
        for (t, c) in &self.terms {
            let key: Vec<Var> = t.leaves().into_iter().collect::<BTreeSet<_>>().into_iter().collect();
            groups.entry(key).or_default().add_term(c.clone(), t.clone());
        }
        let mut out: Vec<_> = groups.into_iter().map(|(k, p)| (k.into_iter().collect::<BTreeSet<_>>(), p)).collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Evaluation in a graded algebra; unassigned variables evaluate to 0.
    pub fn eval(&self, l: &StructureAlgebra, assignment: &BTreeMap<Var, Vector>) -> Result<Vector> {
        let f = l.field();
        if l.grading().is_none() {
            return Err(Error::GradingMismatch("evaluation needs a graded algebra".into()));
        }
        for (v, x) in assignment {
            if x.len() != l.dim() {
                return Err(Error::Dimension(format!("value of {v} has length {} in dimension {}", x.len(), l.dim())));
            }
            if l.homogeneous_part(x, v.sign.degree()) != *x {
                return Err(Error::GradingMismatch(format!("value of {v} is not in degree {}", v.sign.degree())));
            }
        }
        let mut values = assignment.clone();
        for v in self.variables() {
            values.entry(v).or_insert_with(|| vec![f.zero(); l.dim()]);
        }
        self.eval_unchecked(l, &values)
    }

    pub(crate) fn eval_unchecked(&self, l: &StructureAlgebra, values: &BTreeMap<Var, Vector>) -> Result<Vector> {
        let f = l.field();
        let mut out = vec![f.zero(); l.dim()];
        for (t, c) in &self.terms {
            let cs = f.from_rational(c)?;
            let v = t.eval(l, values);
            out = out.iter().zip(vec_scale(f, &v, &cs)).map(|(a, b)| f.add(a, &b)).collect();
        }
        Ok(out)
    }
}

pub fn eval_hom(f: &LiePoly, assignment: &BTreeMap<Var, Vector>, l: &StructureAlgebra) -> Result<Vector> {
    f.eval(l, assignment)
}

pub fn multilinearize(f: &LiePoly) -> LiePoly {
    f.multilinearize()
}

pub fn lower_to_grade(f0: &LiePoly, s: Sign) -> Result<LiePoly> {
    f0.lower_to_grade(s)
}

pub(crate) fn is_integer(c: &BigRational) -> bool {
    c.denom() == &BigInt::one()
}

impl fmt::Display for LiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !a.is_one() {
                if is_integer(&a) {
                    write!(f, "{}*", a.numer())?;
                } else {
                    write!(f, "{}/{}*", a.numer(), a.denom())?;
                }
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for LiePoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_poly(s)
    }
}

impl Serialize for LiePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
