//! Reader for the small LaTeX dialect used by the transcribed fixtures:
//! relation chains such as `\tilde{k}\tilde{m} = \tilde{m}\tilde{k} = 0` or
//! `r(k-n) = (k-n)r = 0`, and tensor sums such as
//! `2\hat{k}\otimes\hat{k} - 2\hat{m}\otimes\hat{n}`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use regex::Regex;

use super::generator::{monomial_index, Generator};
use crate::error::{Error, Result};
use crate::scalar::{q, Q};

/// Noncommutative polynomial as word → coefficient.
pub type NcPoly = BTreeMap<Vec<Generator>, Q>;

fn decorations() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\\(?:tilde|hat)\s*\{\s*([A-Za-z])\s*\}").unwrap())
}

/// Strips hats, tildes and spacing macros; `\otimes` becomes `⊗`.
pub fn normalize(s: &str) -> String {
    let s = decorations().replace_all(s, "$1");
    let mut s = s
        .replace("\\otimes", "⊗")
        .replace("\\left", "")
        .replace("\\right", "");
    for sp in ["\\,", "\\;", "\\!", "\\ ", "~"] {
        s = s.replace(sp, "");
    }
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(self.src, format!("{msg} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<Q> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Some(q(s.parse().ok()?))
    }

    fn sum(&mut self) -> Result<NcPoly> {
        let mut out = NcPoly::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    q(1)
                }
                Some('-') => {
                    self.pos += 1;
                    q(-1)
                }
                _ if first => q(1),
                _ => break,
            };
            first = false;
            let t = self.term()?;
            add_into(&mut out, &t, &sign);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<NcPoly> {
        let coeff = self.number();
        let mut acc: NcPoly = [(Vec::new(), coeff.clone().unwrap_or_else(Q::one))].into();
        let mut factors = 0;
        while let Some(f) = self.factor()? {
            acc = mul(&acc, &f);
            factors += 1;
        }
        if factors == 0 && coeff.is_none() {
            return Err(self.err("expected a term"));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Option<NcPoly>> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err("unbalanced parenthesis"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_lowercase() => {
                let g = Generator::from_char(c).map_err(|_| self.err("unknown generator"))?;
                self.pos += 1;
                [(vec![g], Q::one())].into()
            }
            _ => return Ok(None),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number().ok_or_else(|| self.err("expected exponent"))?;
            let n: usize = e
                .to_integer()
                .try_into()
                .map_err(|_| self.err("bad exponent"))?;
            let mut p: NcPoly = [(Vec::new(), Q::one())].into();
            for _ in 0..n {
                p = mul(&p, &base);
            }
            return Ok(Some(p));
        }
        Ok(Some(base))
    }

    fn done(&self) -> bool {
        self.pos == self.chars.len()
    }
}

fn add_into(out: &mut NcPoly, p: &NcPoly, scale: &Q) {
    for (w, c) in p {
        let e = out.entry(w.clone()).or_insert_with(Q::zero);
        *e = e.clone() + c.clone() * scale.clone();
        if e.is_zero() {
            out.remove(w);
        }
    }
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

pub fn parse_poly(s: &str) -> Result<NcPoly> {
    let n = normalize(s);
    let mut p = Parser::new(&n);
    let out = p.sum()?;
    if !p.done() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

fn deg2_vector(p: &NcPoly, src: &str) -> Result<Vec<Q>> {
    let mut v = vec![Q::zero(); 81];
    for (w, c) in p {
        match w[..] {
            [a, b] => v[monomial_index(a, b)] = c.clone(),
            _ => return Err(Error::parse(src, "not a homogeneous quadratic relation")),
        }
    }
    Ok(v)
}

/// A chain `A = B = C` yields the relations `A−B` and `B−C`.
pub fn parse_relation_chain(stmt: &str) -> Result<Vec<Vec<Q>>> {
    let parts: Vec<NcPoly> = stmt.split('=').map(parse_poly).collect::<Result<_>>()?;
    if parts.len() < 2 {
        return Err(Error::parse(stmt, "expected at least one '='"));
    }
    let mut out = Vec::new();
    for w in parts.windows(2) {
        let mut d = w[0].clone();
        add_into(&mut d, &w[1], &q(-1));
        if !d.is_empty() {
            out.push(deg2_vector(&d, stmt)?);
        }
    }
    Ok(out)
}

/// Reads `Σ c·x⊗y`. Each term must be exactly one generator on each side,
/// so a dropped operator or a garbled symbol is a parse error.
pub fn parse_tensor_sum(s: &str) -> Result<Vec<(Q, Generator, Generator)>> {
    let n = normalize(s);
    let chars: Vec<char> = n.chars().collect();
    let mut terms = Vec::new();
    let mut i = 0;
    let err = |m: &str| Error::parse(s, m.to_string());
    while i < chars.len() {
        let mut sign = q(1);
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = q(-1);
            }
            i += 1;
        } else if !terms.is_empty() {
            return Err(err("missing operator between terms"));
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let coeff = if start == i {
            Q::one()
        } else {
            let d: String = chars[start..i].iter().collect();
            q(d.parse().map_err(|_| err("bad coefficient"))?)
        };
        let end = chars[i..]
            .iter()
            .position(|&c| c == '+' || c == '-')
            .map_or(chars.len(), |p| i + p);
        let body: String = chars[i..end].iter().collect();
        let (l, r) = body
            .split_once('⊗')
            .ok_or_else(|| err("term without tensor sign"))?;
        let a: Generator = l.parse().map_err(|_| err("malformed left factor"))?;
        let b: Generator = r.parse().map_err(|_| err("malformed right factor"))?;
        terms.push((sign * coeff, a, b));
        i = end;
    }
    if terms.is_empty() {
        return Err(err("empty tensor sum"));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::relations::relation_from_terms;
    use Generator as G;

    #[test]
    fn normalizes_decorations() {
        assert_eq!(normalize("\\tilde{k}\\,\\hat{l} r"), "klr");
        assert_eq!(normalize("\\tilde{p}\\otimes r"), "p⊗r");
    }

    #[test]
    fn square_relation() {
        let v = parse_relation_chain("k^2 = n^2").unwrap();
        assert_eq!(
            v,
            vec![relation_from_terms(&[
                (q(1), G::K, G::K),
                (q(-1), G::N, G::N)
            ])]
        );
    }

    #[test]
    fn bracketed_relation() {
        let v = parse_relation_chain("r(k-n) = (k-n)r = 0").unwrap();
        assert_eq!(v.len(), 2);
        let want = relation_from_terms(&[(q(1), G::R, G::K), (q(-1), G::R, G::N)]);
        // first link is r(k-n) - (k-n)r, second is (k-n)r
        let second = relation_from_terms(&[(q(1), G::K, G::R), (q(-1), G::N, G::R)]);
        assert_eq!(v[1], second);
        let sum: Vec<Q> = v[0]
            .iter()
            .zip(&v[1])
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        assert_eq!(sum, want);
    }

    #[test]
    fn monomial_chain() {
        let v = parse_relation_chain("\\tilde{p}^2 = \\tilde{t}^2= 0").unwrap();
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn rejects_inhomogeneous() {
        assert!(parse_relation_chain("k = n").is_err());
        assert!(parse_relation_chain("kk").is_err());
    }

    #[test]
    fn tensor_sums() {
        let t = parse_tensor_sum(
            "2\\hat{k}\\otimes\\hat{k} - 2\\hat{m}\\otimes\\hat{n} + \\tilde{p}\\otimes\\tilde{q}",
        )
        .unwrap();
        assert_eq!(
            t,
            vec![(q(2), G::K, G::K), (q(-2), G::M, G::N), (q(1), G::P, G::Q)]
        );
        assert!(parse_tensor_sum("m\\otimes k \\tilde{p}\\otimes\\tilde{s}").is_err());
        assert!(parse_tensor_sum("mo\\times p + t\\otimes r").is_err());
    }
}
