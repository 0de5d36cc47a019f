//! Comparison of the derived normal words with a displayed basis made of
//! lines like `k̂^κ l̂^ℓ r^τ p̃, and all permutations of (k̂ l̂ r)`.

use regex::Regex;
use serde::Serialize;

use super::quotient::{word_text, GradedQuotient};
use crate::algebra::latex::normalize;
use crate::algebra::Generator;
use crate::error::{Error, Result};
use crate::fixtures::{BasisDisplayFixture, DiffItem};

const BLOCK: &str = "k^\\kappal^\\ellr^\\tau";
const PERMUTATIONS: &str = "andallpermutationsof(klr)";

/// Regex for one display line, or an error when the line is malformed.
pub fn display_line_pattern(raw: &str) -> Result<String> {
    let n = normalize(raw);
    let core = n
        .strip_suffix(PERMUTATIONS)
        .map(|c| c.trim_end_matches(','))
        .unwrap_or(&n);
    let (pre, post, block) = match core.split_once(BLOCK) {
        Some((a, b)) => (a, b, n.ends_with(PERMUTATIONS)),
        None => (core, "", false),
    };
    let valid = |s: &str| {
        s.chars()
            .all(|c| Generator::from_char(c).is_ok() && c.is_ascii_lowercase())
    };
    if !valid(pre) || !valid(post) {
        return Err(Error::parse(raw, "not a word pattern"));
    }
    if core.contains(BLOCK) && !block {
        return Err(Error::parse(raw, "block without permutation clause"));
    }
    Ok(if core.contains(BLOCK) {
        format!("^{pre}[klr]*{post}$")
    } else {
        format!("^{pre}$")
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisplayLineReport {
    pub line: usize,
    pub pattern: String,
    /// Normal words matching the line.
    pub normal: usize,
    /// Words matching the line that reduce in the quotient.
    pub not_normal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisDisplayReport {
    pub degree: usize,
    pub lines: Vec<DisplayLineReport>,
    /// Normal words no line accounts for.
    pub uncovered: Vec<String>,
    /// Lines whose display could not be read as stated.
    pub diff: Vec<DiffItem>,
}

/// Every word of degree `d`, in word order.
fn all_words(d: usize) -> impl Iterator<Item = Vec<Generator>> {
    let by_rank = Generator::by_rank();
    (0..9usize.pow(d as u32)).map(move |mut c| {
        let mut w = vec![Generator::R; d];
        for s in w.iter_mut().rev() {
            *s = by_rank[c % 9];
            c /= 9;
        }
        w
    })
}

/// Matches words up to `degree` against each line's fixture pattern.
pub fn compare_basis_display(
    q: &GradedQuotient,
    fx: &BasisDisplayFixture,
    degree: usize,
) -> Result<BasisDisplayReport> {
    let degree = degree.min(q.max_degree());
    let mut diff = Vec::new();
    let mut regexes = Vec::new();
    for (i, line) in fx.lines.iter().enumerate() {
        let item = format!("line {}", i + 1);
        match display_line_pattern(&line.raw) {
            Ok(p) if p == line.pattern => {}
            Ok(p) => diff.push(DiffItem {
                item,
                detail: format!("display reads as {p}, fixture pattern is {}", line.pattern),
            }),
            Err(e) => diff.push(DiffItem {
                item,
                detail: format!("{e}; using {}", line.pattern),
            }),
        }
        regexes.push(
            Regex::new(&line.pattern).map_err(|e| Error::parse(&line.pattern, e.to_string()))?,
        );
    }
    let text = |w: &[Generator]| w.iter().map(|g| g.name()).collect::<String>();
    let mut lines: Vec<DisplayLineReport> = fx
        .lines
        .iter()
        .enumerate()
        .map(|(i, l)| DisplayLineReport {
            line: i + 1,
            pattern: l.pattern.clone(),
            normal: 0,
            not_normal: Vec::new(),
        })
        .collect();
    let mut uncovered = Vec::new();
    for d in 0..=degree {
        for w in all_words(d) {
            let t = text(&w);
            let normal = q.index_of(&w).is_some();
            let mut covered = false;
            for (re, rep) in regexes.iter().zip(lines.iter_mut()) {
                if re.is_match(&t) {
                    covered = true;
                    if normal {
                        rep.normal += 1;
                    } else {
                        rep.not_normal.push(word_text(&w));
                    }
                }
            }
            if normal && !covered {
                uncovered.push(word_text(&w));
            }
        }
    }
    Ok(BasisDisplayReport {
        degree,
        lines,
        uncovered,
        diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_display_lines() {
        let p = display_line_pattern(
            "\\hat{k}^\\kappa \\hat{l}^\\ell r^\\tau \\tilde{p}, and all permutations of (\\hat{k}\\hat{l}r)",
        )
        .unwrap();
        assert_eq!(p, "^[klr]*p$");
        let s = display_line_pattern(
            "\\tilde{s}\\hat{k}^\\kappa \\hat{l}^\\ell r^\\tau , and all permutations of (\\hat{k}\\hat{l}r)",
        )
        .unwrap();
        assert_eq!(s, "^s[klr]*$");
        assert_eq!(display_line_pattern("\\hat{m}").unwrap(), "^m$");
        assert!(display_line_pattern(
            "\\hat{k}\\hat{l}r)\\tilde{q}, and all permutations of (\\hat{k}\\hat{l}r)"
        )
        .is_err());
    }
}
