//! Expressions in the dual generators: `[K,P]-2P`, `P*P`, `K^3M - 2^3M`,
//! `1_U` (or `U`) for the unit. Hats, tildes and `\left`/`\right` are
//! accepted and ignored.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::functional::{DualContext, DualFunctional};
use crate::algebra::latex::{normalize, NcPoly};
use crate::algebra::Generator;
use crate::error::{Error, Result};
use crate::scalar::{q, Q};

/// Exponent placeholders that may appear in identity statements.
pub const EXPONENT_SYMBOLS: [&str; 2] = ["\\kappa", "\\ell"];

struct Parser {
    src: String,
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        Error::parse(&self.src, format!("{msg} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars()
            .enumerate()
            .all(|(i, c)| self.chars.get(self.pos + i) == Some(&c))
    }

    fn integer(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn sum(&mut self) -> Result<NcPoly> {
        let mut out = NcPoly::new();
        let mut first = true;
        loop {
            let sign = if self.eat('+') {
                q(1)
            } else if self.eat('-') {
                q(-1)
            } else if first {
                q(1)
            } else {
                break;
            };
            first = false;
            add_into(&mut out, &self.term()?, &sign);
        }
        Ok(out)
    }

    /// `c^e` prefix, then factors joined by optional `*`.
    fn term(&mut self) -> Result<NcPoly> {
        let mut acc: NcPoly = [(Vec::new(), Q::one())].into();
        let mut any = false;
        if !self.starts_with("1_U") {
            if let Some(n) = self.integer() {
                let mut c = q(n as i64);
                if self.eat('^') {
                    let e = self
                        .integer()
                        .ok_or_else(|| self.err("expected exponent"))?;
                    c = num_traits::pow(c, e as usize);
                }
                acc = scale(&acc, &c);
                any = true;
            }
        }
        loop {
            match self.factor()? {
                Some(f) => {
                    acc = mul(&acc, &f);
                    any = true;
                }
                None if any && self.eat('*') => continue,
                None => break,
            }
        }
        if !any {
            return Err(self.err("expected a term"));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Option<NcPoly>> {
        let base: NcPoly = if self.starts_with("1_U") {
            self.pos += 3;
            [(Vec::new(), Q::one())].into()
        } else {
            match self.peek() {
                Some('U') => {
                    self.pos += 1;
                    [(Vec::new(), Q::one())].into()
                }
                Some('(') => {
                    self.pos += 1;
                    let inner = self.sum()?;
                    if !self.eat(')') {
                        return Err(self.err("unbalanced parenthesis"));
                    }
                    inner
                }
                Some('[') => {
                    self.pos += 1;
                    let a = self.sum()?;
                    if !self.eat(',') {
                        return Err(self.err("expected ',' in commutator"));
                    }
                    let b = self.sum()?;
                    if !self.eat(']') {
                        return Err(self.err("unbalanced bracket"));
                    }
                    let mut c = mul(&a, &b);
                    add_into(&mut c, &mul(&b, &a), &q(-1));
                    c
                }
                Some(c) if c.is_ascii_uppercase() => {
                    let g =
                        Generator::from_char(c).map_err(|_| self.err("unknown dual generator"))?;
                    self.pos += 1;
                    [(vec![g], Q::one())].into()
                }
                _ => return Ok(None),
            }
        };
        if self.eat('^') {
            let e = self
                .integer()
                .ok_or_else(|| self.err("expected exponent"))?;
            let mut p: NcPoly = [(Vec::new(), Q::one())].into();
            for _ in 0..e {
                p = mul(&p, &base);
            }
            return Ok(Some(p));
        }
        Ok(Some(base))
    }
}

fn add_into(out: &mut NcPoly, p: &NcPoly, s: &Q) {
    for (w, c) in p {
        let e = out.entry(w.clone()).or_insert_with(Q::zero);
        *e = e.clone() + c.clone() * s.clone();
        if e.is_zero() {
            out.remove(w);
        }
    }
}

fn scale(p: &NcPoly, s: &Q) -> NcPoly {
    let mut out = NcPoly::new();
    add_into(&mut out, p, s);
    out
}

fn mul(a: &NcPoly, b: &NcPoly) -> NcPoly {
    let mut out = NcPoly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            add_into(
                &mut out,
                &[(w, Q::one())].into(),
                &(ca.clone() * cb.clone()),
            );
        }
    }
    out
}

/// Parses one side of an identity into a noncommutative polynomial in the
/// dual generators; the empty word stands for `1_U`.
pub fn parse_dual_expr(s: &str) -> Result<NcPoly> {
    let src = normalize(s);
    if src.contains('\\') {
        return Err(Error::parse(s, "unresolved macro"));
    }
    let mut p = Parser {
        chars: src.chars().collect(),
        src,
        pos: 0,
    };
    let out = p.sum()?;
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// One equation `lhs = rhs`, both sides already parsed.
#[derive(Clone, Debug)]
pub struct DualIdentity {
    pub label: String,
    pub lhs: NcPoly,
    pub rhs: NcPoly,
}

/// `A = B = … = Z` becomes `A = Z`, `B = Z`, …; a bare expression means
/// `expr = 0`. Exponent symbols are substituted with `1..=max_exponent`.
pub fn expand_statement(stmt: &str, max_exponent: u32) -> Result<Vec<DualIdentity>> {
    let base = normalize(stmt);
    let symbols: Vec<&str> = EXPONENT_SYMBOLS
        .iter()
        .copied()
        .filter(|s| base.contains(s))
        .collect();
    let mut assignments: Vec<Vec<(&str, u32)>> = vec![Vec::new()];
    for s in &symbols {
        assignments = assignments
            .into_iter()
            .flat_map(|a| {
                (1..=max_exponent).map(move |v| {
                    let mut a = a.clone();
                    a.push((s, v));
                    a
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for a in assignments {
        let mut text = base.clone();
        for (s, v) in &a {
            text = text.replace(s, &v.to_string());
        }
        let parts: Vec<&str> = text.split('=').collect();
        if parts.len() == 1 {
            out.push(DualIdentity {
                label: format!("{text} = 0"),
                lhs: parse_dual_expr(&text)?,
                rhs: NcPoly::new(),
            });
            continue;
        }
        let last = parts[parts.len() - 1];
        let rhs = parse_dual_expr(last)?;
        for p in &parts[..parts.len() - 1] {
            out.push(DualIdentity {
                label: format!("{p} = {last}"),
                lhs: parse_dual_expr(p)?,
                rhs: rhs.clone(),
            });
        }
    }
    Ok(out)
}

/// Evaluates polynomials in the dual generators, caching monomials.
pub struct Evaluator<'a> {
    ctx: &'a DualContext,
    cache: HashMap<Vec<Generator>, DualFunctional>,
}

impl<'a> Evaluator<'a> {
    pub fn new(ctx: &'a DualContext) -> Self {
        let mut cache = HashMap::new();
        cache.insert(Vec::new(), ctx.unit().clone());
        Evaluator { ctx, cache }
    }

    pub fn monomial(&mut self, w: &[Generator]) -> DualFunctional {
        if let Some(f) = self.cache.get(w) {
            return f.clone();
        }
        let (last, prefix) = w.split_last().expect("empty word is cached");
        let p = self.monomial(prefix);
        let f = self.ctx.product(&p, &self.ctx.generator(*last));
        self.cache.insert(w.to_vec(), f.clone());
        f
    }

    pub fn eval(&mut self, p: &NcPoly) -> DualFunctional {
        let mut acc = DualFunctional::zero(self.ctx.len());
        for (w, c) in p {
            let m = self.monomial(w);
            acc = acc.combine(&Q::one(), &m, c);
        }
        acc
    }

    /// `lhs − rhs` as a functional.
    pub fn difference(&mut self, id: &DualIdentity) -> DualFunctional {
        let mut d = id.lhs.clone();
        add_into(&mut d, &id.rhs, &q(-1));
        self.eval(&d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator as G;

    #[test]
    fn commutator_and_coefficients() {
        let p = parse_dual_expr("[K,P]-2P").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[&vec![G::K, G::P]], q(1));
        assert_eq!(p[&vec![G::P, G::K]], q(-1));
        assert_eq!(p[&vec![G::P]], q(-2));
    }

    #[test]
    fn powers_and_units() {
        let p = parse_dual_expr("K^3M-2^3M").unwrap();
        assert_eq!(p[&vec![G::K, G::K, G::K, G::M]], q(1));
        assert_eq!(p[&vec![G::M]], q(-8));
        let u = parse_dual_expr("2\\hat{K} + 1_U - U").unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(
            parse_dual_expr("P*P").unwrap(),
            parse_dual_expr("P^2").unwrap()
        );
    }

    #[test]
    fn latex_statement() {
        let ids =
            expand_statement("\\left[\\hat{K}^\\kappa ,\\hat{L}^\\ell \\right] = 0", 3).unwrap();
        assert_eq!(ids.len(), 9);
        assert_eq!(ids[0].label, "[K^1,L^1] = 0");
        let chain = expand_statement("\\tilde{P}^2 = \\tilde{Q}^2 = \\tilde{S}^2 = 0", 3).unwrap();
        assert_eq!(chain.len(), 3);
        assert!(chain.iter().all(|i| i.rhs.is_empty()));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_dual_expr("K+").is_err());
        assert!(parse_dual_expr("[K,P").is_err());
        assert!(parse_dual_expr("X").is_err());
        assert!(parse_dual_expr("\\alpha K").is_err());
    }
}
