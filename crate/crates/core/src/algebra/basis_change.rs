use num_traits::{One, Zero};

use super::generator::{BasisLabel, Generator};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::scalar::{q, Q};

/// Invertible linear substitution of generators. Row `a` expresses the old
/// generator `a` in the new generators: `old_a = Σₓ S[a][x]·new_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorBasisChange {
    matrix: ExactMatrix,
    inverse: ExactMatrix,
}

impl GeneratorBasisChange {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        if matrix.rows() != 9 || matrix.cols() != 9 {
            return Err(Error::Dimension("basis change must be 9x9".into()));
        }
        let inverse = matrix.inverse()?;
        Ok(GeneratorBasisChange { matrix, inverse })
    }

    pub fn identity() -> Self {
        GeneratorBasisChange {
            matrix: ExactMatrix::identity(9),
            inverse: ExactMatrix::identity(9),
        }
    }

    /// Builds a change from `old = Σ c·new` rows; unspecified generators map
    /// to themselves.
    pub fn from_rows(rows: &[(Generator, &[(i64, Generator)])]) -> Result<Self> {
        let mut m = ExactMatrix::identity(9);
        for (old, terms) in rows {
            for x in 0..9 {
                m[(old.index(), x)] = Q::zero();
            }
            for (c, new) in terms.iter() {
                m[(old.index(), new.index())] = q(*c);
            }
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &ExactMatrix {
        &self.inverse
    }

    pub fn inverse(&self) -> Self {
        GeneratorBasisChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// First `self`, then `next`: old → mid → new.
    pub fn then(&self, next: &Self) -> Self {
        GeneratorBasisChange {
            matrix: self.matrix.mul(&next.matrix).expect("9x9"),
            inverse: next.inverse.mul(&self.inverse).expect("9x9"),
        }
    }

    /// Rewrites a degree-2 coefficient vector in the new generators.
    pub fn apply_deg2(&self, v: &[Q]) -> Vec<Q> {
        let s = &self.matrix;
        let mut out = vec![Q::zero(); 81];
        for (ab, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = (ab / 9, ab % 9);
            for x in 0..9 {
                let sx = &s[(a, x)];
                if sx.is_zero() {
                    continue;
                }
                for y in 0..9 {
                    let sy = &s[(b, y)];
                    if sy.is_zero() {
                        continue;
                    }
                    let t = &mut out[9 * x + y];
                    *t = t.clone() + c.clone() * sx.clone() * sy.clone();
                }
            }
        }
        out
    }

    /// Rewrites a degree-1 coefficient vector in the new generators.
    pub fn apply_deg1(&self, v: &[Q]) -> Vec<Q> {
        (0..9)
            .map(|x| {
                (0..9).fold(Q::zero(), |acc, a| {
                    acc + v[a].clone() * self.matrix[(a, x)].clone()
                })
            })
            .collect()
    }

    /// New generator `x` as a combination of old ones.
    pub fn new_in_old(&self, x: Generator) -> Vec<Q> {
        self.inverse.row(x.index()).to_vec()
    }

    /// Old generator `a` as a combination of new ones.
    pub fn old_in_new(&self, a: Generator) -> Vec<Q> {
        self.matrix.row(a.index()).to_vec()
    }

    pub fn is_signed_permutation(&self) -> bool {
        (0..9).all(|i| {
            let row = self.matrix.row(i);
            row.iter().filter(|x| !x.is_zero()).count() == 1
                && row
                    .iter()
                    .all(|x| x.is_zero() || x.is_one() || (-x.clone()).is_one())
        })
    }
}

/// The half-sum/half-difference change to the tilde generators:
/// `k = k̃+ñ, n = k̃−ñ, l = l̃+m̃, m = l̃−m̃, p = p̃+t̃, t = p̃−t̃, q = q̃+s̃, s = q̃−s̃`.
pub fn tilde() -> GeneratorBasisChange {
    use Generator as G;
    GeneratorBasisChange::from_rows(&[
        (G::K, &[(1, G::K), (1, G::N)]),
        (G::N, &[(1, G::K), (-1, G::N)]),
        (G::L, &[(1, G::L), (1, G::M)]),
        (G::M, &[(1, G::L), (-1, G::M)]),
        (G::P, &[(1, G::P), (1, G::T)]),
        (G::T, &[(1, G::P), (-1, G::T)]),
        (G::Q, &[(1, G::Q), (1, G::S)]),
        (G::S, &[(1, G::Q), (-1, G::S)]),
    ])
    .expect("tilde change is invertible")
}

/// Tilde → hat on the diagonal block, as used throughout:
/// `k̃ = k̂+l̂, l̃ = k̂−l̂, m̃ = m̂+n̂, ñ = n̂−m̂`.
///
/// This is the unique {−1,0,1} substitution that reproduces the hat
/// coproduct table (up to one sign) and keeps `M̂N̂ = −2K̂` on generators.
/// The `m̃ = m̂−n̂, ñ = m̂+n̂` variant is [`hat_as_displayed`].
pub fn hat() -> GeneratorBasisChange {
    use Generator as G;
    GeneratorBasisChange::from_rows(&[
        (G::K, &[(1, G::K), (1, G::L)]),
        (G::L, &[(1, G::K), (-1, G::L)]),
        (G::M, &[(1, G::M), (1, G::N)]),
        (G::N, &[(-1, G::M), (1, G::N)]),
    ])
    .expect("hat change is invertible")
}

pub fn hat_as_displayed() -> GeneratorBasisChange {
    use Generator as G;
    GeneratorBasisChange::from_rows(&[
        (G::K, &[(1, G::K), (1, G::L)]),
        (G::L, &[(1, G::K), (-1, G::L)]),
        (G::M, &[(1, G::M), (-1, G::N)]),
        (G::N, &[(1, G::M), (1, G::N)]),
    ])
    .expect("hat change is invertible")
}

/// Original → given basis.
pub fn from_original(to: BasisLabel) -> GeneratorBasisChange {
    match to {
        BasisLabel::Original => GeneratorBasisChange::identity(),
        BasisLabel::Tilde => tilde(),
        BasisLabel::Hat => tilde().then(&hat()),
    }
}

/// Signed generator exchange. Each `(x, y, sign)` substitutes
/// `x = sign·y'` and `y = sign·x'`; the pairs must be disjoint.
pub fn generator_exchange(swaps: &[(Generator, Generator, i64)]) -> Result<GeneratorBasisChange> {
    let mut seen = [false; 9];
    let mut m = ExactMatrix::identity(9);
    for &(x, y, s) in swaps {
        for g in [x, y] {
            if seen[g.index()] {
                return Err(Error::OverlappingExchange);
            }
            seen[g.index()] = true;
        }
        if x == y {
            return Err(Error::OverlappingExchange);
        }
        m[(x.index(), x.index())] = Q::zero();
        m[(y.index(), y.index())] = Q::zero();
        m[(x.index(), y.index())] = q(s);
        m[(y.index(), x.index())] = q(s);
    }
    GeneratorBasisChange::new(m)
}

/// Signed permutation `old_a = signs[a]·new_{perm[a]}`.
pub fn signed_permutation(perm: &[usize; 9], signs: &[i64; 9]) -> Result<GeneratorBasisChange> {
    let mut m = ExactMatrix::zeros(9, 9);
    for a in 0..9 {
        m[(a, perm[a])] = q(signs[a]);
    }
    GeneratorBasisChange::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::half;

    #[test]
    fn tilde_inverse_has_half_entries() {
        let inv = tilde().inverse_matrix().clone();
        for x in inv.entries() {
            assert!(x.is_zero() || *x == half() || *x == -half() || x.is_one());
        }
        assert!(tilde().matrix().mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn composition_matches_direct_product() {
        let c = tilde().then(&hat());
        assert_eq!(c.matrix(), &tilde().matrix().mul(hat().matrix()).unwrap());
        assert!(c.matrix().mul(c.inverse_matrix()).unwrap().is_identity());
    }

    #[test]
    fn exchange_rules() {
        use Generator as G;
        assert!(generator_exchange(&[]).unwrap().matrix().is_identity());
        assert!(matches!(
            generator_exchange(&[(G::P, G::Q, 1), (G::Q, G::S, 1)]),
            Err(Error::OverlappingExchange)
        ));
        let g = generator_exchange(&[(G::P, G::S, 1), (G::Q, G::T, 1)]).unwrap();
        assert!(g.is_signed_permutation());
        assert_eq!(g.matrix()[(G::P.index(), G::S.index())], q(1));
    }

    #[test]
    fn deg2_round_trip() {
        let t = tilde();
        let v: Vec<Q> = (0..81).map(|i| q((i % 7) as i64 - 3)).collect();
        assert_eq!(t.inverse().apply_deg2(&t.apply_deg2(&v)), v);
    }
}
