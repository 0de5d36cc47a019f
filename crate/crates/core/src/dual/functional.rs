use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::quotient::{word_text, CoproductCache, GradedQuotient};
use crate::algebra::{BasisLabel, Generator, QuadraticRelationSet};
use crate::bialgebra::{CoproductTable, CounitVector};
use crate::error::{Error, Result};
use crate::scalar::{fmt_q_short, Q};

/// A linear functional given by its values on the normal words of the
/// truncation, in global index order.
#[derive(Clone, Debug, PartialEq)]
pub struct DualFunctional {
    values: Vec<Q>,
}

impl DualFunctional {
    pub fn zero(len: usize) -> Self {
        DualFunctional {
            values: vec![Q::zero(); len],
        }
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn at(&self, i: usize) -> &Q {
        &self.values[i]
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &Q, other: &Self, b: &Q) -> Self {
        DualFunctional {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a.clone() * x.clone() + b.clone() * y.clone())
                .collect(),
        }
    }

    pub fn scale(&self, a: &Q) -> Self {
        DualFunctional {
            values: self.values.iter().map(|x| a.clone() * x.clone()).collect(),
        }
    }

    /// First normal word (in degree, then word order) with a nonzero value.
    pub fn first_nonzero(&self) -> Option<(usize, &Q)> {
        self.values.iter().enumerate().find(|(_, x)| !x.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }
}

/// A failing pair `(u, v)` for `X(uv) = X(u)ε(v) + ε(u)X(v)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimitivityWitness {
    pub left: String,
    pub right: String,
    pub value: String,
    pub expected: String,
}

/// Everything needed to evaluate dual functionals on a truncated quotient.
#[derive(Clone, Debug)]
pub struct DualContext {
    quotient: GradedQuotient,
    coproducts: CoproductCache,
    counit: CounitVector,
    unit: DualFunctional,
}

impl DualContext {
    pub fn new(
        quotient: GradedQuotient,
        table: &CoproductTable,
        counit: CounitVector,
    ) -> Result<Self> {
        if counit.basis != quotient.relations().basis() {
            return Err(Error::Basis {
                expected: quotient.relations().basis().to_string(),
                found: counit.basis.to_string(),
            });
        }
        let coproducts = CoproductCache::new(&quotient, table)?;
        let unit = DualFunctional {
            values: (0..quotient.len())
                .map(|i| quotient.counit(quotient.word(i), &counit))
                .collect(),
        };
        Ok(DualContext {
            quotient,
            coproducts,
            counit,
            unit,
        })
    }

    /// The hat-basis quotient of the given relations with `δ(T) = T⊗T`.
    pub fn hat(relations: QuadraticRelationSet, max_degree: usize) -> Result<Self> {
        let q = GradedQuotient::new(relations, max_degree)?;
        Self::new(
            q,
            &CoproductTable::in_basis(BasisLabel::Hat),
            CounitVector::in_basis(BasisLabel::Hat),
        )
    }

    pub fn quotient(&self) -> &GradedQuotient {
        &self.quotient
    }

    pub fn coproducts(&self) -> &CoproductCache {
        &self.coproducts
    }

    pub fn counit(&self) -> &CounitVector {
        &self.counit
    }

    pub fn len(&self) -> usize {
        self.quotient.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotient.is_empty()
    }

    /// `1_U`, which is `ε` on words.
    pub fn unit(&self) -> &DualFunctional {
        &self.unit
    }

    /// `⟨Z, w⟩ = ε(∂w/∂z)`: sum over occurrences of `z` of `ε` of the word
    /// with that occurrence deleted.
    pub fn generator(&self, z: Generator) -> DualFunctional {
        let q = &self.quotient;
        let values = (0..q.len())
            .map(|i| {
                let w = q.word(i);
                w.iter()
                    .enumerate()
                    .filter(|(_, g)| **g == z)
                    .fold(Q::zero(), |acc, (pos, _)| {
                        let mut rest = w.clone();
                        rest.remove(pos);
                        acc + q.counit(&rest, &self.counit)
                    })
            })
            .collect();
        DualFunctional { values }
    }

    /// `⟨X, w⟩` for an arbitrary word, by linear extension through its
    /// normal form.
    pub fn pair(&self, x: &DualFunctional, w: &[Generator]) -> Result<Q> {
        Ok(self
            .quotient
            .normal_form(w)?
            .iter()
            .fold(Q::zero(), |acc, (i, c)| {
                acc + c.clone() * x.values[*i].clone()
            }))
    }

    /// Convolution `(XY)(w) = Σ X(w₁)Y(w₂)`.
    pub fn product(&self, x: &DualFunctional, y: &DualFunctional) -> DualFunctional {
        let values = (0..self.len())
            .into_par_iter()
            .map(|i| {
                self.coproducts
                    .of(i)
                    .iter()
                    .fold(Q::zero(), |acc, (c, a, b)| {
                        let (xa, yb) = (&x.values[*a], &y.values[*b]);
                        if xa.is_zero() || yb.is_zero() {
                            acc
                        } else {
                            acc + c.clone() * xa.clone() * yb.clone()
                        }
                    })
            })
            .collect();
        DualFunctional { values }
    }

    pub fn power(&self, x: &DualFunctional, n: u32) -> DualFunctional {
        (0..n).fold(self.unit.clone(), |acc, _| self.product(&acc, x))
    }

    pub fn word_text(&self, i: usize) -> String {
        word_text(self.quotient.word(i))
    }

    /// Checks `X(nf(uv)) = X(u)ε(v) + ε(u)X(v)` over normal `u, v` with
    /// `|u| + |v| ≤ L`; returns the first failing pair.
    pub fn check_primitivity(&self, x: &DualFunctional) -> Result<Option<PrimitivityWitness>> {
        let q = &self.quotient;
        let l = q.max_degree();
        for u in 0..q.len() {
            let du = q.degree_of(u);
            for v in 0..q.offset(l - du + 1) {
                let lhs = q.multiply(u, v)?.iter().fold(Q::zero(), |acc, (i, c)| {
                    acc + c.clone() * x.values[*i].clone()
                });
                let rhs = x.values[u].clone() * self.unit.values[v].clone()
                    + self.unit.values[u].clone() * x.values[v].clone();
                if lhs != rhs {
                    return Ok(Some(PrimitivityWitness {
                        left: self.word_text(u),
                        right: self.word_text(v),
                        value: fmt_q_short(&lhs),
                        expected: fmt_q_short(&rhs),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// `nf(u·v) = nf(nf(u)·nf(v))` on all words whose concatenation fits,
    /// with `u, v` ranging over every word of the given degrees.
    pub fn check_multiplicativity(&self, max_total: usize) -> Result<Option<String>> {
        let q = &self.quotient;
        let all = |d: usize| -> Vec<Vec<Generator>> {
            (0..9usize.pow(d as u32))
                .map(|mut c| {
                    let mut w = vec![Generator::R; d];
                    for s in w.iter_mut().rev() {
                        *s = Generator::from_index(c % 9).expect("index");
                        c /= 9;
                    }
                    w
                })
                .collect()
        };
        for du in 0..=max_total {
            for dv in 0..=max_total - du {
                for u in all(du) {
                    let nu = q.normal_form(&u)?;
                    for v in all(dv) {
                        let mut uv = u.clone();
                        uv.extend_from_slice(&v);
                        let direct = q.normal_form(&uv)?;
                        let nv = q.normal_form(&v)?;
                        let mut acc = DualFunctional::zero(q.len());
                        for (a, ca) in &nu {
                            for (b, cb) in &nv {
                                for (i, c) in q.multiply(*a, *b)? {
                                    acc.values[i] =
                                        acc.values[i].clone() + ca.clone() * cb.clone() * c;
                                }
                            }
                        }
                        let mut want = DualFunctional::zero(q.len());
                        for (i, c) in direct {
                            want.values[i] = want.values[i].clone() + c;
                        }
                        if acc != want {
                            return Ok(Some(format!("{}·{}", word_text(&u), word_text(&v))));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// `(δ⊗id)δ(w) = (id⊗δ)δ(w)` for normal words up to `max_degree`.
    pub fn check_coassociativity(&self, max_degree: usize) -> Option<String> {
        use std::collections::BTreeMap;
        let q = &self.quotient;
        let end = q.offset(max_degree.min(q.max_degree()) + 1);
        (0..end).find_map(|i| {
            let mut left: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
            let mut right = left.clone();
            for (c, a, b) in self.coproducts.of(i) {
                for (d, x, y) in self.coproducts.of(*a) {
                    let e = left.entry((*x, *y, *b)).or_insert_with(Q::zero);
                    *e = e.clone() + c.clone() * d.clone();
                }
                for (d, x, y) in self.coproducts.of(*b) {
                    let e = right.entry((*a, *x, *y)).or_insert_with(Q::zero);
                    *e = e.clone() + c.clone() * d.clone();
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            (left != right).then(|| self.word_text(i))
        })
    }

    /// `(ε⊗id)δ(w) = w = (id⊗ε)δ(w)` for every normal word.
    pub fn check_counit_laws(&self) -> Option<String> {
        (0..self.len()).find_map(|i| {
            let mut left = DualFunctional::zero(self.len());
            let mut right = DualFunctional::zero(self.len());
            for (c, a, b) in self.coproducts.of(i) {
                left.values[*b] =
                    left.values[*b].clone() + c.clone() * self.unit.values[*a].clone();
                right.values[*a] =
                    right.values[*a].clone() + c.clone() * self.unit.values[*b].clone();
            }
            let mut want = DualFunctional::zero(self.len());
            want.values[i] = Q::one();
            (left != want || right != want).then(|| self.word_text(i))
        })
    }

    /// `(XY)Z = X(YZ)` over all triples of the nine generator duals.
    pub fn check_associativity(&self) -> Option<String> {
        let gens: Vec<DualFunctional> = Generator::all().map(|g| self.generator(g)).collect();
        let pairs: Vec<Vec<DualFunctional>> = gens
            .iter()
            .map(|x| gens.iter().map(|y| self.product(x, y)).collect())
            .collect();
        let triples: Vec<(usize, usize, usize)> = (0..9)
            .flat_map(|a| (0..9).flat_map(move |b| (0..9).map(move |c| (a, b, c))))
            .collect();
        triples.into_par_iter().find_map_first(|(a, b, c)| {
            let left = self.product(&pairs[a][b], &gens[c]);
            let right = self.product(&gens[a], &pairs[b][c]);
            (left != right).then(|| {
                let n = |i: usize| {
                    Generator::from_index(i)
                        .expect("index")
                        .name()
                        .to_ascii_uppercase()
                };
                format!("({}{}){}", n(a), n(b), n(c))
            })
        })
    }

    /// `1_U·X = X = X·1_U` for the nine generator duals.
    pub fn check_unit(&self) -> Option<String> {
        Generator::all().find_map(|g| {
            let x = self.generator(g);
            (self.product(&self.unit, &x) != x || self.product(&x, &self.unit) != x)
                .then(|| g.name().to_ascii_uppercase().to_string())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{half, q};
    use Generator as G;

    fn free(l: usize) -> DualContext {
        DualContext::hat(QuadraticRelationSet::empty(BasisLabel::Hat), l).unwrap()
    }

    #[test]
    fn pairing_by_deletion() {
        let c = free(2);
        let k = c.generator(G::K);
        assert_eq!(c.pair(&k, &[G::K]).unwrap(), q(1));
        assert_eq!(c.pair(&k, &[G::K, G::K]).unwrap(), q(1));
        assert_eq!(c.pair(&k, &[G::K, G::L]).unwrap(), half());
        assert_eq!(c.pair(&c.generator(G::M), &[G::K]).unwrap(), q(0));
        assert_eq!(c.pair(c.unit(), &[]).unwrap(), q(1));
    }

    #[test]
    fn free_algebra_is_a_bialgebra() {
        let c = free(3);
        assert_eq!(c.check_coassociativity(3), None);
        assert_eq!(c.check_counit_laws(), None);
        assert_eq!(c.check_unit(), None);
    }

    #[test]
    fn square_of_primitive_is_not_primitive() {
        let c = free(2);
        let k = c.generator(G::K);
        assert_eq!(c.check_primitivity(&k).unwrap(), None);
        let kk = c.product(&k, &k);
        assert!(c.check_primitivity(&kk).unwrap().is_some());
        // at u = v = k
        let lhs = c.pair(&kk, &[G::K, G::K]).unwrap();
        let rhs = c.pair(&kk, &[G::K]).unwrap() * half() * q(2);
        assert_ne!(lhs, rhs);
    }
}
