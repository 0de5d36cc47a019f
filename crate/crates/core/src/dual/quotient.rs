use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::{BasisLabel, Generator, QuadraticRelationSet};
use crate::bialgebra::{CoproductTable, CounitVector};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBuilder, SparseVec};
use crate::scalar::Q;

/// Highest supported truncation; 9⁵ words is the ceiling.
pub const MAX_TRUNCATION: usize = 5;

pub type Word = Vec<Generator>;

/// `(coeff, left, right)` over global normal-word indices.
pub type TensorTerms = Vec<(Q, usize, usize)>;

pub fn word_text(w: &[Generator]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|g| g.name()).collect()
}

pub fn parse_word(s: &str) -> Result<Word> {
    if s == "1" {
        return Ok(Vec::new());
    }
    s.chars().map(Generator::from_char).collect()
}

/// Column of a word in the degree-`d` space: base-9 digits in letter rank,
/// so column order is the lexicographic word order.
fn code(w: &[Generator]) -> usize {
    w.iter().fold(0, |acc, g| 9 * acc + g.rank() as usize)
}

fn decode(mut c: usize, d: usize) -> Word {
    let by_rank = Generator::by_rank();
    let mut w = vec![Generator::R; d];
    for slot in w.iter_mut().rev() {
        *slot = by_rank[c % 9];
        c /= 9;
    }
    w
}

#[derive(Clone, Debug)]
struct Degree {
    /// Normal words in column order.
    words: Vec<Word>,
    /// Column → local normal index, or `None` for pivot (leading) words.
    local: Vec<Option<u32>>,
    /// Pivot column → its image as `(local normal index, coeff)`.
    reduce: HashMap<usize, Vec<(usize, Q)>>,
}

/// `T(V)/⟨R⟩` truncated at degree `L`, with a lexicographic normal-word
/// basis per degree.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    relations: QuadraticRelationSet,
    degrees: Vec<Degree>,
    offsets: Vec<usize>,
}

impl GradedQuotient {
    pub fn new(relations: QuadraticRelationSet, max_degree: usize) -> Result<Self> {
        if max_degree > MAX_TRUNCATION {
            return Err(Error::TruncationTooLarge(max_degree));
        }
        // relation vectors re-indexed by column code
        let rels: Vec<SparseVec> = relations
            .vectors()
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| {
                        let (a, b) = crate::algebra::monomial_of(i);
                        (code(&[a, b]), c.clone())
                    })
                    .collect()
            })
            .collect();
        let mut degrees = Vec::with_capacity(max_degree + 1);
        let mut offsets = Vec::with_capacity(max_degree + 2);
        offsets.push(0);
        for d in 0..=max_degree {
            let size = 9usize.pow(d as u32);
            let mut builder = EchelonBuilder::new(size);
            if d >= 2 {
                for i in 0..=d - 2 {
                    let j = d - 2 - i;
                    let (left, right) = (9usize.pow(i as u32), 9usize.pow(j as u32));
                    for pre in 0..left {
                        for suf in 0..right {
                            for r in &rels {
                                let v = r
                                    .iter()
                                    .map(|(&c, x)| ((pre * 81 + c) * right + suf, x.clone()))
                                    .collect();
                                builder.insert(v);
                            }
                        }
                    }
                }
            }
            let mut words = Vec::new();
            let mut local = vec![None; size];
            for (c, slot) in local.iter_mut().enumerate() {
                if !builder.is_pivot(c) {
                    *slot = Some(words.len() as u32);
                    words.push(decode(c, d));
                }
            }
            let mut reduce = HashMap::new();
            for c in (0..size).filter(|&c| builder.is_pivot(c)) {
                let row = builder.pivot_row(c).expect("pivot row");
                // c = -Σ x·(free column)
                let image = row
                    .iter()
                    .filter(|(&f, _)| f != c)
                    .map(|(&f, x)| (local[f].expect("free column") as usize, -x.clone()))
                    .collect();
                reduce.insert(c, image);
            }
            offsets.push(offsets[d] + words.len());
            degrees.push(Degree {
                words,
                local,
                reduce,
            });
        }
        Ok(GradedQuotient {
            relations,
            degrees,
            offsets,
        })
    }

    pub fn relations(&self) -> &QuadraticRelationSet {
        &self.relations
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn basis(&self, degree: usize) -> &[Word] {
        &self.degrees[degree].words
    }

    /// Total number of normal words of degree ≤ L.
    pub fn len(&self) -> usize {
        *self.offsets.last().expect("offsets")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Normal word with global index `i`.
    pub fn word(&self, i: usize) -> &Word {
        let d = self.degree_of(i);
        &self.degrees[d].words[i - self.offsets[d]]
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.offsets.partition_point(|&o| o <= i) - 1
    }

    pub fn offset(&self, degree: usize) -> usize {
        self.offsets[degree]
    }

    pub fn index_of(&self, w: &[Generator]) -> Option<usize> {
        let d = w.len();
        let deg = self.degrees.get(d)?;
        deg.local[code(w)].map(|l| self.offsets[d] + l as usize)
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.max_degree() {
            return Err(Error::Degree {
                degree: d,
                max: self.max_degree(),
            });
        }
        Ok(())
    }

    /// Image of a word as `(global normal index, coeff)`; empty when the
    /// word lies in the ideal.
    pub fn normal_form(&self, w: &[Generator]) -> Result<Vec<(usize, Q)>> {
        self.check_degree(w.len())?;
        let d = w.len();
        let deg = &self.degrees[d];
        let c = code(w);
        Ok(match deg.local[c] {
            Some(l) => vec![(self.offsets[d] + l as usize, Q::one())],
            None => deg.reduce[&c]
                .iter()
                .map(|(l, x)| (self.offsets[d] + l, x.clone()))
                .collect(),
        })
    }

    /// `nf(u·v)` for global normal indices.
    pub fn multiply(&self, u: usize, v: usize) -> Result<Vec<(usize, Q)>> {
        let mut w = self.word(u).clone();
        w.extend_from_slice(self.word(v));
        self.normal_form(&w)
    }

    /// `ε` on a word: product of letter values.
    pub fn counit(&self, w: &[Generator], eps: &CounitVector) -> Q {
        w.iter().fold(Q::one(), |acc, g| acc * eps.of(*g).clone())
    }
}

/// Coproducts of every normal word, built letter by letter with both
/// tensor factors normalized after each step.
#[derive(Clone, Debug)]
pub struct CoproductCache {
    terms: Vec<TensorTerms>,
}

impl CoproductCache {
    pub fn new(q: &GradedQuotient, table: &CoproductTable) -> Result<Self> {
        if table.basis() != q.relations().basis() {
            return Err(Error::Basis {
                expected: q.relations().basis().to_string(),
                found: table.basis().to_string(),
            });
        }
        let letters: Vec<Vec<(Q, Generator, Generator)>> =
            Generator::all().map(|g| table.terms(g)).collect();
        let mut terms: Vec<TensorTerms> = Vec::with_capacity(q.len());
        for i in 0..q.len() {
            let w = q.word(i);
            let t = match w.split_last() {
                None => vec![(Q::one(), 0, 0)],
                Some((last, prefix)) => {
                    let base = match q.index_of(prefix) {
                        Some(p) => terms[p].clone(),
                        None => expand(q, &letters, prefix)?,
                    };
                    extend(q, &base, &letters[last.index()])?
                }
            };
            terms.push(t);
        }
        Ok(CoproductCache { terms })
    }

    pub fn of(&self, i: usize) -> &TensorTerms {
        &self.terms[i]
    }
}

fn expand(
    q: &GradedQuotient,
    letters: &[Vec<(Q, Generator, Generator)>],
    w: &[Generator],
) -> Result<TensorTerms> {
    let mut acc = vec![(Q::one(), 0, 0)];
    for g in w {
        acc = extend(q, &acc, &letters[g.index()])?;
    }
    Ok(acc)
}

/// `Σ c·(a⊗b)·δ(g)` with both factors normalized.
fn extend(
    q: &GradedQuotient,
    base: &TensorTerms,
    letter: &[(Q, Generator, Generator)],
) -> Result<TensorTerms> {
    let mut out: HashMap<(usize, usize), Q> = HashMap::new();
    for (c, a, b) in base {
        for (d, x, y) in letter {
            let mut wa = q.word(*a).clone();
            wa.push(*x);
            let mut wb = q.word(*b).clone();
            wb.push(*y);
            let na = q.normal_form(&wa)?;
            if na.is_empty() {
                continue;
            }
            let nb = q.normal_form(&wb)?;
            for (ia, ca) in &na {
                for (ib, cb) in &nb {
                    let e = out.entry((*ia, *ib)).or_insert_with(Q::zero);
                    *e = e.clone() + c.clone() * d.clone() * ca.clone() * cb.clone();
                }
            }
        }
    }
    let mut v: TensorTerms = out
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((a, b), c)| (c, a, b))
        .collect();
    v.sort_by_key(|&(_, a, b)| (a, b));
    Ok(v)
}

/// Quotient in the hat generators, from a tilde relation set.
pub fn hat_quotient(
    tilde_relations: &QuadraticRelationSet,
    max_degree: usize,
) -> Result<GradedQuotient> {
    if tilde_relations.basis() != BasisLabel::Tilde {
        return Err(Error::Basis {
            expected: "tilde".into(),
            found: tilde_relations.basis().to_string(),
        });
    }
    let rel =
        crate::algebra::change_basis_deg2(tilde_relations, &crate::algebra::hat(), BasisLabel::Hat);
    GradedQuotient::new(rel, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::relation_from_terms;
    use crate::scalar::q;
    use Generator as G;

    fn toy() -> GradedQuotient {
        // pp = 0 and kl = lk
        let rel = QuadraticRelationSet::from_vectors(
            BasisLabel::Hat,
            vec![
                relation_from_terms(&[(q(1), G::P, G::P)]),
                relation_from_terms(&[(q(1), G::K, G::L), (q(-1), G::L, G::K)]),
            ],
        );
        GradedQuotient::new(rel, 3).unwrap()
    }

    #[test]
    fn codes_are_lexicographic() {
        assert_eq!(code(&[G::R]), 0);
        assert_eq!(code(&[G::K, G::R]), 9);
        assert_eq!(decode(code(&[G::T, G::K, G::M]), 3), vec![G::T, G::K, G::M]);
    }

    #[test]
    fn dimensions() {
        let t = toy();
        assert_eq!(t.basis(0).len(), 1);
        assert_eq!(t.basis(1).len(), 9);
        assert_eq!(t.basis(2).len(), 79);
        assert!(t.normal_form(&[G::P, G::P]).unwrap().is_empty());
        assert!(t.normal_form(&[G::K, G::P, G::P]).unwrap().is_empty());
    }

    #[test]
    fn binomial_reduces_to_larger_word() {
        let t = toy();
        // kl < lk, so kl is the pivot and rewrites to lk
        let nf = t.normal_form(&[G::K, G::L]).unwrap();
        assert_eq!(nf, vec![(t.index_of(&[G::L, G::K]).unwrap(), q(1))]);
        assert!(t.index_of(&[G::K, G::L]).is_none());
    }

    #[test]
    fn global_indices_round_trip() {
        let t = toy();
        for i in 0..t.len() {
            assert_eq!(t.index_of(t.word(i)), Some(i));
        }
        assert_eq!(t.degree_of(0), 0);
        assert_eq!(t.degree_of(1), 1);
        assert_eq!(t.degree_of(10), 2);
    }

    #[test]
    fn guards() {
        let rel = QuadraticRelationSet::empty(BasisLabel::Hat);
        assert!(matches!(
            GradedQuotient::new(rel.clone(), 6),
            Err(Error::TruncationTooLarge(6))
        ));
        let t = GradedQuotient::new(rel, 1).unwrap();
        assert!(t.normal_form(&[G::K, G::K]).is_err());
        assert_eq!(t.normal_form(&[]).unwrap(), vec![(0, q(1))]);
    }
}
