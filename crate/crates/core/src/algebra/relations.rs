use num_traits::Zero;
use serde_json::{json, Value};

use super::basis_change::GeneratorBasisChange;
use super::generator::{monomial_index, monomial_of, BasisLabel, Generator};
use crate::error::{Error, Result};
use crate::linalg::{rref_rows, subspace_equal, Subspace};
use crate::scalar::{fmt_q, parse_q, Q};

/// A relation ideal's degree-2 part, as a subspace of the 81 ordered
/// monomials `gₐg_b` (coordinate `9a+b`).
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticRelationSet {
    basis: BasisLabel,
    subspace: Subspace,
}

impl QuadraticRelationSet {
    pub fn from_vectors(basis: BasisLabel, vectors: Vec<Vec<Q>>) -> Self {
        QuadraticRelationSet {
            basis,
            subspace: rref_rows(vectors, 81),
        }
    }

    pub fn from_subspace(basis: BasisLabel, subspace: Subspace) -> Result<Self> {
        if subspace.ambient_dim() != 81 {
            return Err(Error::Ambient {
                left: subspace.ambient_dim(),
                right: 81,
            });
        }
        Ok(QuadraticRelationSet { basis, subspace })
    }

    pub fn empty(basis: BasisLabel) -> Self {
        QuadraticRelationSet {
            basis,
            subspace: Subspace::zero(81),
        }
    }

    pub fn basis(&self) -> BasisLabel {
        self.basis
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        self.subspace.basis()
    }

    /// Canonical equality; refuses to compare across generator bases.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.same_basis(other)?;
        subspace_equal(&self.subspace, &other.subspace)
    }

    fn same_basis(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::Basis {
                expected: self.basis.to_string(),
                found: other.basis.to_string(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.subspace.contains(v)
    }

    /// Is the monomial `ab` zero in the algebra?
    pub fn kills_monomial(&self, a: Generator, b: Generator) -> bool {
        let mut v = vec![Q::zero(); 81];
        v[monomial_index(a, b)] = Q::from_integer(1.into());
        self.contains(&v)
    }

    /// 81-bit table of monomials lying in the span, bit `9a+b`.
    pub fn zero_monomials(&self) -> u128 {
        (0..81)
            .filter(|&i| {
                let (a, b) = monomial_of(i);
                self.kills_monomial(a, b)
            })
            .fold(0u128, |acc, i| acc | (1u128 << i))
    }

    /// True when every basis vector is a single monomial.
    pub fn is_monomial(&self) -> bool {
        self.vectors()
            .iter()
            .all(|v| v.iter().filter(|x| !x.is_zero()).count() == 1)
    }

    /// `{"basis": .., "relations": [[["1/1","p","t"], ...], ...]}`.
    pub fn to_json(&self) -> Value {
        let rels: Vec<Value> = self.vectors().iter().map(|v| vector_json(v)).collect();
        json!({ "basis": self.basis.as_str(), "relations": rels })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::parse(v.to_string(), m.to_string());
        let basis: BasisLabel = v["basis"]
            .as_str()
            .ok_or_else(|| bad("missing basis"))?
            .parse()?;
        let rels = v["relations"]
            .as_array()
            .ok_or_else(|| bad("missing relations"))?;
        let mut vectors = Vec::with_capacity(rels.len());
        for r in rels {
            let terms = r.as_array().ok_or_else(|| bad("relation must be a list"))?;
            let mut parsed = Vec::with_capacity(terms.len());
            for t in terms {
                match t.as_array().map(Vec::as_slice) {
                    Some([c, a, b]) => {
                        let c = parse_q(c.as_str().ok_or_else(|| bad("coefficient"))?)?;
                        let a: Generator = a.as_str().ok_or_else(|| bad("generator"))?.parse()?;
                        let b: Generator = b.as_str().ok_or_else(|| bad("generator"))?.parse()?;
                        parsed.push((c, a, b));
                    }
                    _ => return Err(bad("term must be [coeff, gen, gen]")),
                }
            }
            vectors.push(relation_from_terms(&parsed));
        }
        Ok(Self::from_vectors(basis, vectors))
    }
}

/// Dense vector from `(coeff, left, right)` triples; repeated monomials add.
pub fn relation_from_terms(terms: &[(Q, Generator, Generator)]) -> Vec<Q> {
    let mut v = vec![Q::zero(); 81];
    for (c, a, b) in terms {
        let i = monomial_index(*a, *b);
        v[i] = v[i].clone() + c.clone();
    }
    v
}

pub fn vector_terms(v: &[Q]) -> Vec<(Q, Generator, Generator)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let (a, b) = monomial_of(i);
            (c.clone(), a, b)
        })
        .collect()
}

pub fn vector_json(v: &[Q]) -> Value {
    Value::Array(
        vector_terms(v)
            .into_iter()
            .map(|(c, a, b)| json!([fmt_q(&c), a.to_string(), b.to_string()]))
            .collect(),
    )
}

/// Human form such as `k k - n n`.
pub fn vector_text(v: &[Q]) -> String {
    let mut s = String::new();
    for (i, (c, a, b)) in vector_terms(v).into_iter().enumerate() {
        let neg = c < Q::zero();
        let mag = if neg { -c } else { c };
        if i > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        if mag != Q::from_integer(1.into()) {
            s.push_str(&crate::scalar::fmt_q_short(&mag));
        }
        s.push(a.name());
        s.push(b.name());
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Rewrites every relation in the new generators and re-canonicalizes.
pub fn change_basis_deg2(
    rel: &QuadraticRelationSet,
    g: &GeneratorBasisChange,
    to: BasisLabel,
) -> QuadraticRelationSet {
    let vecs = rel.vectors().iter().map(|v| g.apply_deg2(v)).collect();
    QuadraticRelationSet::from_vectors(to, vecs)
}

/// Evaluates `Σ c·ε(gₐ)ε(g_b)` for a degree-2 vector.
pub fn counit_on_deg2(v: &[Q], eps: &[Q; 9]) -> Q {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Q::zero(), |acc, (i, c)| {
            acc + c.clone() * eps[i / 9].clone() * eps[i % 9].clone()
        })
}
