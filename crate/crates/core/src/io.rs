//! Line-oriented text formats for algebras, pairs and polynomials.
//!
//! Every writer emits a `format` tag first; readers accept files without
//! one. `#` starts a comment line. Indices are 0-based.
//!
//! ```text
//! format glk-algebra 1
//! field Q
//! dim 3
//! grading 1 0 -1
//! bracket 0 2 1 1      # [b0, b2] has coefficient 1 on b1
//! ```
//!
//! Pair files use `dims N+ N-` and `triple S i j k l c` with `S` one of
//! `+`, `-`, meaning `{b_i, b_j, b_k}` has coefficient `c` on `b_l` in `V^S`.

use std::collections::BTreeMap;

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::field::parse_field;
use crate::exactmath::{FieldSpec, Scalar};
use crate::freelie::LiePoly;
use crate::jordan::JordanPair;
use crate::sign::Sign;

pub const ALGEBRA_TAG: &str = "glk-algebra 1";
pub const PAIR_TAG: &str = "glk-pair 1";
pub const POLY_TAG: &str = "glk-poly 1";
pub const PAIR_POLY_TAG: &str = "glk-pair-poly 1";

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A significant line: number, keyword, column of the remainder, remainder.
struct Line<'a> {
    no: usize,
    keyword: &'a str,
    rest_col: usize,
    rest: &'a str,
}

impl Line<'_> {
    fn fields(&self, n: usize) -> Result<Vec<&str>> {
        let parts: Vec<&str> = self.rest.split_whitespace().collect();
        if parts.len() < n {
            return Err(err(self.no, self.rest_col, format!("'{}' needs {n} arguments", self.keyword)));
        }
        Ok(parts)
    }

    fn usize_at(&self, parts: &[&str], i: usize) -> Result<usize> {
        parts[i].parse().map_err(|_| self.error_at(parts, i, format!("expected an index, found '{}'", parts[i])))
    }

    fn column_of(&self, parts: &[&str], i: usize) -> usize {
        let offset = parts[i].as_ptr() as usize - self.rest.as_ptr() as usize;
        self.rest_col + self.rest[..offset].chars().count()
    }

    fn error_at(&self, parts: &[&str], i: usize, message: String) -> Error {
        err(self.no, self.column_of(parts, i), message)
    }

    /// Everything after the first `n` fields, as one scalar.
    fn scalar_after(&self, parts: &[&str], n: usize, f: &FieldSpec) -> Result<Scalar> {
        if parts.len() <= n {
            return Err(err(self.no, self.rest_col + self.rest.chars().count(), "missing coefficient"));
        }
        let text = parts[n..].join("");
        f.parse_scalar(&text).map_err(|m| self.error_at(parts, n, m))
    }
}

fn significant_lines(src: &str) -> impl Iterator<Item = Line<'_>> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            return None;
        }
        let (keyword, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (trimmed.trim_end(), ""),
        };
        let offset = if rest.is_empty() {
            content.trim_end().len()
        } else {
            rest.as_ptr() as usize - raw.as_ptr() as usize
        };
        Some(Line {
            no: i + 1,
            keyword,
            rest_col: raw[..offset].chars().count() + 1,
            rest,
        })
    })
}

fn check_tag(l: &Line<'_>, tag: &str) -> Result<()> {
    if l.rest.split_whitespace().collect::<Vec<_>>().join(" ") != tag {
        return Err(err(l.no, l.rest_col, format!("expected format '{tag}', found '{}'", l.rest.trim())));
    }
    Ok(())
}

fn field_line(l: &Line<'_>) -> Result<FieldSpec> {
    parse_field(l.rest).map_err(|m| err(l.no, l.rest_col, m))
}

pub fn parse_algebra(src: &str) -> Result<StructureAlgebra> {
    let mut field = None;
    let mut dim = None;
    let mut grading = None;
    let mut consts: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    let mut last = 0;
    for l in significant_lines(src) {
        last = l.no;
        match l.keyword {
            "format" => check_tag(&l, ALGEBRA_TAG)?,
            "field" => field = Some(field_line(&l)?),
            "dim" => {
                let p = l.fields(1)?;
                dim = Some(l.usize_at(&p, 0)?);
            }
            "grading" => {
                let p = l.fields(0)?;
                let g = p
                    .iter()
                    .enumerate()
                    .map(|(i, s)| s.parse::<i32>().map_err(|_| l.error_at(&p, i, format!("bad degree '{s}'"))))
                    .collect::<Result<Vec<_>>>()?;
                grading = Some((l.no, g));
            }
            "bracket" => {
                let f = field.as_ref().ok_or_else(|| err(l.no, 1, "'bracket' before 'field'"))?;
                let n = dim.ok_or_else(|| err(l.no, 1, "'bracket' before 'dim'"))?;
                let p = l.fields(4)?;
                let (i, j, k) = (l.usize_at(&p, 0)?, l.usize_at(&p, 1)?, l.usize_at(&p, 2)?);
                for (pos, x) in [(0, i), (1, j), (2, k)] {
                    if x >= n {
                        return Err(l.error_at(&p, pos, format!("index {x} out of range for dim {n}")));
                    }
                }
                let c = l.scalar_after(&p, 3, f)?;
                let e = consts.entry((i, j, k)).or_insert_with(|| f.zero());
                *e = f.add(e, &c);
            }
            other => return Err(err(l.no, 1, format!("unknown keyword '{other}'"))),
        }
    }
    let f = field.ok_or_else(|| err(last.max(1), 1, "missing 'field' line"))?;
    let n = dim.ok_or_else(|| err(last.max(1), 1, "missing 'dim' line"))?;
    // A pair given in one order only is completed by antisymmetry; a pair
    // given in both orders is stored as written so that verification can
    // flag any inconsistency.
    let given: std::collections::BTreeSet<(usize, usize)> = consts.keys().map(|&(i, j, _)| (i, j)).collect();
    let mut a = StructureAlgebra::new(&f, n);
    for (&(i, j, k), c) in &consts {
        a.add_structure_constant(i, j, k, c);
        if i != j && !given.contains(&(j, i)) {
            a.add_structure_constant(j, i, k, &f.neg(c));
        }
    }
    if let Some((no, g)) = grading {
        if g.len() != n {
            return Err(err(no, 1, format!("grading has {} entries, dim is {n}", g.len())));
        }
        a = a.with_grading(g).map_err(|e| err(no, 1, e.to_string()))?;
    }
    Ok(a)
}

pub fn write_algebra(a: &StructureAlgebra) -> String {
    let f = a.field();
    let mut out = format!("format {ALGEBRA_TAG}\nfield {f}\ndim {}\n", a.dim());
    if let Some(g) = a.grading() {
        let parts: Vec<String> = g.iter().map(i32::to_string).collect();
        out.push_str(&format!("grading {}\n", parts.join(" ")));
    }
    let n = a.dim();
    let antisymmetric = (0..n).all(|i| {
        a.bracket_basis(i, i).is_empty()
            && (0..n).all(|j| {
                let neg: Vec<Scalar> = a.bracket_basis_vec(j, i).iter().map(|c| f.neg(c)).collect();
                a.bracket_basis_vec(i, j) == neg
            })
    });
    for i in 0..n {
        let from = if antisymmetric { i + 1 } else { 0 };
        for j in from..n {
            let mut terms: Vec<_> = a.bracket_basis(i, j).to_vec();
            terms.sort_by_key(|t| t.0);
            for (k, c) in terms {
                out.push_str(&format!("bracket {i} {j} {k} {}\n", f.format_scalar(&c)));
            }
        }
    }
    out
}

fn parse_sign(l: &Line<'_>, p: &[&str], i: usize) -> Result<Sign> {
    match p[i] {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        s => Err(l.error_at(p, i, format!("expected '+' or '-', found '{s}'"))),
    }
}

pub fn parse_pair(src: &str) -> Result<JordanPair> {
    let mut field = None;
    let mut dims: Option<[usize; 2]> = None;
    let mut consts: BTreeMap<(usize, usize, usize, usize, usize), Scalar> = BTreeMap::new();
    let mut last = 0;
    for l in significant_lines(src) {
        last = l.no;
        match l.keyword {
            "format" => check_tag(&l, PAIR_TAG)?,
            "field" => field = Some(field_line(&l)?),
            "dims" => {
                let p = l.fields(2)?;
                dims = Some([l.usize_at(&p, 0)?, l.usize_at(&p, 1)?]);
            }
            "triple" => {
                let f = field.as_ref().ok_or_else(|| err(l.no, 1, "'triple' before 'field'"))?;
                let d = dims.ok_or_else(|| err(l.no, 1, "'triple' before 'dims'"))?;
                let p = l.fields(6)?;
                let s = parse_sign(&l, &p, 0)?;
                let o = s.opposite();
                let idx = [
                    (l.usize_at(&p, 1)?, d[s.idx()]),
                    (l.usize_at(&p, 2)?, d[o.idx()]),
                    (l.usize_at(&p, 3)?, d[s.idx()]),
                    (l.usize_at(&p, 4)?, d[s.idx()]),
                ];
                for (pos, (x, bound)) in idx.iter().enumerate() {
                    if x >= bound {
                        return Err(l.error_at(&p, pos + 1, format!("index {x} out of range (dim {bound})")));
                    }
                }
                let c = l.scalar_after(&p, 5, f)?;
                let e = consts
                    .entry((s.idx(), idx[0].0, idx[1].0, idx[2].0, idx[3].0))
                    .or_insert_with(|| f.zero());
                *e = f.add(e, &c);
            }
            other => return Err(err(l.no, 1, format!("unknown keyword '{other}'"))),
        }
    }
    let f = field.ok_or_else(|| err(last.max(1), 1, "missing 'field' line"))?;
    let d = dims.ok_or_else(|| err(last.max(1), 1, "missing 'dims' line"))?;
    let mut v = JordanPair::new(&f, d[0], d[1]);
    for ((s, i, j, k, l), c) in &consts {
        let s = if *s == 0 { Sign::Plus } else { Sign::Minus };
        v.add_triple_constant(s, *i, *j, *k, *l, c);
    }
    Ok(v)
}

pub fn write_pair(v: &JordanPair) -> String {
    let f = v.field();
    let [np, nm] = v.dims();
    let mut out = format!("format {PAIR_TAG}\nfield {f}\ndims {np} {nm}\n");
    for s in Sign::BOTH {
        let o = s.opposite();
        for i in 0..v.dim(s) {
            for j in 0..v.dim(o) {
                for k in 0..v.dim(s) {
                    let mut terms = v.triple_basis(s, i, j, k).to_vec();
                    terms.sort_by_key(|t| t.0);
                    for (l, c) in terms {
                        out.push_str(&format!(
                            "triple {} {i} {j} {k} {l} {}\n",
                            s.symbol(),
                            f.format_scalar(&c)
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Blanks out comments and the format line, keeping line numbers.
fn poly_body(src: &str, tag: &str) -> Result<String> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if let Some(rest) = content.trim_start().strip_prefix("format") {
            if rest.split_whitespace().collect::<Vec<_>>().join(" ") != tag {
                return Err(err(i + 1, 1, format!("expected format '{tag}'")));
            }
            out.push(String::new());
        } else {
            out.push(content.to_string());
        }
    }
    Ok(out.join("\n"))
}

pub fn parse_poly_file(src: &str) -> Result<LiePoly> {
    poly_body(src, POLY_TAG)?.parse()
}

pub fn write_poly(f: &LiePoly) -> String {
    format!("format {POLY_TAG}\n{f}\n")
}

/// Parses `plus <poly>` and `minus <poly>` lines.
pub fn parse_pair_poly_file(src: &str) -> Result<(LiePoly, LiePoly)> {
    let mut parts: [Option<LiePoly>; 2] = [None, None];
    for l in significant_lines(src) {
        let slot = match l.keyword {
            "format" => {
                check_tag(&l, PAIR_POLY_TAG)?;
                continue;
            }
            "plus" => 0,
            "minus" => 1,
            other => return Err(err(l.no, 1, format!("unknown keyword '{other}'"))),
        };
        let p: LiePoly = l.rest.parse().map_err(|e| match e {
            Error::Parse { column, message, .. } => err(l.no, l.rest_col + column - 1, message),
            e => e,
        })?;
        parts[slot] = Some(p);
    }
    let [p, m] = parts;
    match (p, m) {
        (Some(p), Some(m)) => Ok((p, m)),
        _ => Err(err(1, 1, "need both 'plus' and 'minus' lines")),
    }
}

pub fn write_pair_poly(plus: &LiePoly, minus: &LiePoly) -> String {
    format!("format {PAIR_POLY_TAG}\nplus {plus}\nminus {minus}\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Matrix;
    use crate::tkk::tkk_construct;

    fn gauss() -> FieldSpec {
        let q = FieldSpec::rationals();
        FieldSpec::extension(&q, vec![q.one(), q.zero(), q.one()]).unwrap()
    }

    #[test]
    fn algebra_roundtrip() {
        let q = FieldSpec::rationals();
        for a in [
            StructureAlgebra::sl2(&q),
            StructureAlgebra::heisenberg(&FieldSpec::prime_field(7).unwrap()),
            StructureAlgebra::sl2(&gauss()),
            tkk_construct(&JordanPair::rectangular(&q, 1, 2).unwrap()).unwrap().algebra,
        ] {
            let text = write_algebra(&a);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back, a);
            assert_eq!(write_algebra(&back), text);
        }
    }

    #[test]
    fn algebra_reader_details() {
        let src = "# sl2\nfield Q\ndim 3\nbracket 2 0 1 -1   # written backwards\nbracket 1 0 0 2\nbracket 1 2 2 -2\n";
        let a = parse_algebra(src).unwrap();
        let mut b = StructureAlgebra::sl2(&FieldSpec::rationals());
        b.set_grading(None);
        assert_eq!(a, b);
        match parse_algebra("field Q\ndim 2\nbracket 0 5 1 1\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 11)),
            other => panic!("{other:?}"),
        }
        let broken = parse_algebra("field Q\ndim 2\nbracket 0 1 1 1\nbracket 1 0 1 1\n").unwrap();
        assert!(!broken.verify_lie().ok);
        assert_eq!(parse_algebra(&write_algebra(&broken)).unwrap(), broken);
        assert!(!parse_algebra("field Q\ndim 1\nbracket 0 0 0 1\n").unwrap().verify_lie().ok);
        assert!(matches!(parse_algebra("field Q\ndim 2\ngrading 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_algebra("format glk-algebra 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_algebra("field R\n"), Err(Error::Parse { line: 1, column: 7, .. })));
    }

    #[test]
    fn pair_roundtrip() {
        let q = FieldSpec::rationals();
        for v in [
            JordanPair::rectangular(&q, 2, 1).unwrap(),
            JordanPair::bilinear_form(&q, &Matrix::identity(&q, 3)).unwrap(),
            JordanPair::rectangular(&gauss(), 1, 1).unwrap(),
            JordanPair::zero_pair(&FieldSpec::prime_field(5).unwrap(), 1, 1),
        ] {
            let text = write_pair(&v);
            let back = parse_pair(&text).unwrap();
            assert_eq!(back, v);
            assert_eq!(write_pair(&back), text);
        }
        assert!(matches!(
            parse_pair("field Q\ndims 1 1\ntriple * 0 0 0 0 1\n"),
            Err(Error::Parse { line: 3, column: 8, .. })
        ));
    }

    #[test]
    fn poly_files() {
        let f: LiePoly = "[[x1+, x1-], [x2+, x2-]] - 1/2*[[x2+, x1-], [x1+, x2-]]".parse().unwrap();
        assert_eq!(parse_poly_file(&write_poly(&f)).unwrap(), f);
        match parse_poly_file("# comment\n[x1+,\n  x2]\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 5)),
            other => panic!("{other:?}"),
        }
        let g: LiePoly = "[[x1+, x1-], x2+]".parse().unwrap();
        let h: LiePoly = "[[x1-, x1+], x2-]".parse().unwrap();
        assert_eq!(parse_pair_poly_file(&write_pair_poly(&g, &h)).unwrap(), (g, h));
        match parse_pair_poly_file("plus [x1+, y]\nminus x1-\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 12)),
            other => panic!("{other:?}"),
        }
    }
}
