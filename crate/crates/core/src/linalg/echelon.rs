use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::scalar::Q;

pub type SparseVec = BTreeMap<usize, Q>;

/// Row space in reduced row-echelon form. Two subspaces are equal iff
/// their canonical forms are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut it = self.pivots.iter().peekable();
        (0..self.ambient_dim)
            .filter(|c| {
                if it.peek() == Some(&c) {
                    it.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Reduces `v` against the basis; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = o.clone() - f.clone() * r.clone();
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    /// Checks the canonical-form invariants.
    pub fn is_rref(&self) -> bool {
        if self.basis.len() != self.pivots.len() {
            return false;
        }
        if self.pivots.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for (i, (row, &p)) in self.basis.iter().zip(&self.pivots).enumerate() {
            if row.len() != self.ambient_dim || !row[p].is_one() {
                return false;
            }
            if row[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            for (j, other) in self.basis.iter().enumerate() {
                if j != i && !other[p].is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Dense Gauss-Jordan with leftmost-pivot, first-nonzero-row selection.
pub fn rref(m: &ExactMatrix) -> Subspace {
    rref_rows(m.row_vecs(), m.cols())
}

pub fn rref_rows(mut rows: Vec<Vec<Q>>, ambient_dim: usize) -> Subspace {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ambient_dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Subspace {
        ambient_dim,
        basis: rows,
        pivots,
    }
}

/// Incremental sparse echelon form. Rows are kept fully reduced, so the
/// result is the same canonical RREF whatever the insertion order.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ambient_dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonBuilder {
    pub fn new(ambient_dim: usize) -> Self {
        EchelonBuilder {
            ambient_dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        // Pivot columns only ever get cleared, never refilled by a later
        // row (rows are reduced), so one ascending pass suffices.
        let pivots: Vec<usize> = v
            .keys()
            .copied()
            .filter(|c| self.rows.contains_key(c))
            .collect();
        for p in pivots {
            let Some(f) = v.get(&p).cloned() else {
                continue;
            };
            for (&c, x) in &self.rows[&p] {
                let e = v.entry(c).or_insert_with(Q::zero);
                *e = e.clone() - f.clone() * x.clone();
                if e.is_zero() {
                    v.remove(&c);
                }
            }
        }
        v
    }

    /// Inserts a vector; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = Q::one() / lead.clone();
        let v: SparseVec = v.into_iter().map(|(c, x)| (c, x * inv.clone())).collect();
        for row in self.rows.values_mut() {
            let Some(f) = row.get(&p).cloned() else {
                continue;
            };
            for (&c, x) in &v {
                let e = row.entry(c).or_insert_with(Q::zero);
                *e = e.clone() - f.clone() * x.clone();
                if e.is_zero() {
                    row.remove(&c);
                }
            }
        }
        self.rows.insert(p, v);
        true
    }

    pub fn insert_dense(&mut self, v: &[Q]) -> bool {
        self.insert(to_sparse(v))
    }

    pub fn pivot_row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn into_subspace(self) -> Subspace {
        let n = self.ambient_dim;
        let mut basis = Vec::with_capacity(self.rows.len());
        let mut pivots = Vec::with_capacity(self.rows.len());
        for (p, row) in self.rows {
            let mut dense = vec![Q::zero(); n];
            for (c, x) in row {
                dense[c] = x;
            }
            basis.push(dense);
            pivots.push(p);
        }
        Subspace {
            ambient_dim: n,
            basis,
            pivots,
        }
    }
}

pub fn to_sparse(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Second, independent strategy: sparse incremental elimination with the
/// input rows in a seeded random order.
pub fn rref_shuffled(rows: &[Vec<Q>], ambient_dim: usize, seed: u64) -> Subspace {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut b = EchelonBuilder::new(ambient_dim);
    for i in order {
        b.insert_dense(&rows[i]);
    }
    b.into_subspace()
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::Ambient {
            left: a.ambient_dim,
            right: b.ambient_dim,
        });
    }
    Ok(a == b)
}

/// Linear map onto `M / R`, rows indexed by the free (non-pivot) columns.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    free: Vec<usize>,
    matrix: ExactMatrix,
}

impl QuotientMap {
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.free.len()
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        (0..self.matrix.rows())
            .map(|i| {
                self.matrix
                    .row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

pub fn quotient_projection(rel: &Subspace) -> QuotientMap {
    let free = rel.free_columns();
    let n = rel.ambient_dim;
    let mut m = ExactMatrix::zeros(free.len(), n);
    for (fi, &f) in free.iter().enumerate() {
        m[(fi, f)] = Q::one();
        for (row, &p) in rel.basis.iter().zip(&rel.pivots) {
            if !row[f].is_zero() {
                m[(fi, p)] = -row[f].clone();
            }
        }
    }
    QuotientMap { free, matrix: m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn zero_matrix_has_dimension_zero() {
        assert_eq!(rref(&ExactMatrix::zeros(3, 3)).dim(), 0);
    }

    #[test]
    fn stacked_identity_has_full_rank() {
        let mut rows = ExactMatrix::identity(9).row_vecs();
        rows.extend(ExactMatrix::identity(9).row_vecs());
        let s = rref_rows(rows, 9);
        assert_eq!(s.dim(), 9);
        assert!(s.is_rref());
    }

    #[test]
    fn scaling_invariance() {
        let a = rref_rows(vec![v(&[1, 1, 0])], 3);
        let b = rref_rows(vec![v(&[2, 2, 0])], 3);
        assert!(subspace_equal(&a, &b).unwrap());
        assert!(subspace_equal(&a, &Subspace::zero(4)).is_err());
    }

    #[test]
    fn both_strategies_agree() {
        let rows = vec![
            v(&[0, 2, 4, 1]),
            v(&[1, 1, 0, 0]),
            v(&[1, 3, 4, 1]),
            v(&[0, 0, 0, 3]),
        ];
        let a = rref_rows(rows.clone(), 4);
        for seed in 0..10 {
            assert_eq!(a, rref_shuffled(&rows, 4, seed));
        }
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn projection_kills_relations() {
        let rel = rref_rows(vec![v(&[1, -1, 0, 0]), v(&[0, 0, 1, 2])], 4);
        let qm = quotient_projection(&rel);
        assert_eq!(qm.rank() + rel.dim(), 4);
        for b in rel.basis() {
            assert!(qm.apply(b).iter().all(Zero::is_zero));
        }
        assert_eq!(qm.apply(&v(&[1, 0, 0, 0])), v(&[1, 0]));
    }

    #[test]
    fn projection_by_zero_is_identity() {
        let qm = quotient_projection(&Subspace::zero(5));
        assert!(qm.matrix().is_identity());
    }
}
