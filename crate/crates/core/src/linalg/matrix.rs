use std::ops::{Index, IndexMut};

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Q};

/// Dense row-major matrix. The scalar kind is fixed by the type parameter,
/// so exact and float entries can never share one matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ExactMatrix = Matrix<Q>;
pub type FloatMatrix = Matrix<f64>;

/// Tensor-site pair an operator on two sites is embedded into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    S12,
    S23,
    S13,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = out[(i, j)].clone() + a.clone() * b.clone();
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Kronecker product; block (i,j) is `self[i][j] * other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (other.rows, other.cols);
        Self::from_fn(self.rows * r, self.cols * c, |i, j| {
            let a = &self[(i / r, j / c)];
            if a.is_zero() {
                T::zero()
            } else {
                a.clone() * other[(i % r, j % c)].clone()
            }
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// The flip on two `n`-dimensional sites: `P[(i,j)][(k,l)] = δ_il δ_jk`.
pub fn permutation_p<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n * n, n * n, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        if i == l && j == k {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// Embeds a two-site operator into three sites of dimension `n`.
pub fn embed_site<T: Scalar>(a: &Matrix<T>, slot: Slot, n: usize) -> Result<Matrix<T>> {
    let nn = n * n;
    if a.rows != nn || a.cols != nn {
        return Err(Error::Dimension(format!(
            "embed_site expects {nn}x{nn}, got {}x{}",
            a.rows, a.cols
        )));
    }
    let id = Matrix::<T>::identity(n);
    Ok(match slot {
        Slot::S12 => a.kron(&id),
        Slot::S23 => id.kron(a),
        Slot::S13 => {
            let ip = id.kron(&permutation_p(n));
            ip.mul(&a.kron(&id))?.mul(&ip)?
        }
    })
}

/// Second construction of the 13 embedding, `(P⊗I)(I⊗a)(P⊗I)`.
pub fn embed_site13_alt<T: Scalar>(a: &Matrix<T>, n: usize) -> Result<Matrix<T>> {
    let id = Matrix::<T>::identity(n);
    let pi = permutation_p::<T>(n).kron(&id);
    pi.mul(&id.kron(a))?.mul(&pi)
}

impl FloatMatrix {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.data,
        })
    }
}

impl ExactMatrix {
    pub fn to_f64(&self) -> FloatMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(crate::scalar::to_f64).collect(),
        }
    }

    /// `{"rows","cols","entries":[[num,den],...]}` with entries row-major.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .data
            .iter()
            .map(|x| json!([int_json(x.numer()), int_json(x.denom())]))
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let x = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                    a[(r, j)] = x;
                    let y = inv[(r, j)].clone() - f.clone() * inv[(col, j)].clone();
                    inv[(r, j)] = y;
                }
            }
        }
        debug_assert!(a.is_identity());
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }
}

fn int_json(x: &num_bigint::BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn qm(rows: &[&[i64]]) -> ExactMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i3 = ExactMatrix::identity(3);
        assert!(i3.kron(&i3).is_identity());
    }

    #[test]
    fn kron_with_swap_permutes_blocks() {
        let x = qm(&[&[0, 1], &[1, 0]]);
        let k = x.kron(&ExactMatrix::identity(2));
        let expect = qm(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(k, expect);
    }

    #[test]
    fn permutation_is_involution() {
        assert_eq!(permutation_p::<Q>(1), ExactMatrix::identity(1));
        for n in 2..=3 {
            let p = permutation_p::<Q>(n);
            assert!(p.mul(&p).unwrap().is_identity());
        }
    }

    #[test]
    fn embed_rejects_wrong_size() {
        assert!(embed_site(&ExactMatrix::identity(4), Slot::S12, 3).is_err());
    }

    #[test]
    fn embed_identity() {
        for s in [Slot::S12, Slot::S23, Slot::S13] {
            assert!(embed_site(&ExactMatrix::identity(9), s, 3)
                .unwrap()
                .is_identity());
        }
    }

    #[test]
    fn flip_embedded_at_13_exchanges_outer_sites() {
        let p = permutation_p::<Q>(3);
        let e = embed_site(&p, Slot::S13, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let src = 9 * i + 3 * j + k;
                    let dst = 9 * k + 3 * j + i;
                    for row in 0..27 {
                        let want = if row == dst { q(1) } else { q(0) };
                        assert_eq!(e[(row, src)], want);
                    }
                }
            }
        }
    }

    #[test]
    fn slot12_and_slot23_do_not_commute_generically() {
        let a = ExactMatrix::from_fn(9, 9, |i, j| q(((i * 7 + j * 3) % 5) as i64 - 2));
        let x = embed_site(&a, Slot::S12, 3).unwrap();
        let y = embed_site(&a, Slot::S23, 3).unwrap();
        assert_ne!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let a = qm(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn exact_json_shape() {
        let v = qm(&[&[1]]).to_json();
        assert_eq!(v["entries"][0], json!([1, 1]));
    }
}
