//! The 9×9 baxterized braid family, its R-matrix and the eight constant
//! specializations.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    embed_site, embed_site13_alt, permutation_p, ExactMatrix, FloatMatrix, Matrix, Slot,
};
use crate::scalar::{half, q, Scalar, Q};

/// Signs of `a₋/a₊`, `b₋/b₊`, `c₋/c₊` for a constant solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SignCase {
    pub eps_a: i8,
    pub eps_b: i8,
    pub eps_c: i8,
}

impl SignCase {
    pub const fn new(eps_a: i8, eps_b: i8, eps_c: i8) -> Self {
        SignCase {
            eps_a,
            eps_b,
            eps_c,
        }
    }

    /// The eight cases in their customary order.
    pub const ALL: [SignCase; 8] = [
        SignCase::new(1, 1, 1),
        SignCase::new(-1, 1, 1),
        SignCase::new(1, -1, 1),
        SignCase::new(1, 1, -1),
        SignCase::new(1, -1, -1),
        SignCase::new(-1, 1, -1),
        SignCase::new(-1, -1, 1),
        SignCase::new(-1, -1, -1),
    ];

    pub fn label(&self) -> String {
        [self.eps_a, self.eps_b, self.eps_c]
            .iter()
            .map(|&e| if e > 0 { '+' } else { '-' })
            .collect()
    }

    /// File-name friendly label: `+-+` becomes `pmp`.
    pub fn slug(&self) -> String {
        self.label()
            .chars()
            .map(|c| if c == '+' { 'p' } else { 'm' })
            .collect()
    }
}

impl fmt::Display for SignCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for SignCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs: Vec<i8> = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::SignCase(s.to_string())),
            })
            .collect::<Result<_>>()?;
        match signs[..] {
            [a, b, c] => Ok(SignCase::new(a, b, c)),
            _ => Err(Error::SignCase(s.to_string())),
        }
    }
}

impl TryFrom<String> for SignCase {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SignCase> for String {
    fn from(c: SignCase) -> String {
        c.label()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BraidParams {
    pub m11_plus: f64,
    pub m11_minus: f64,
    pub m21_plus: f64,
    pub m21_minus: f64,
    pub m22_plus: f64,
    pub m22_minus: f64,
}

impl BraidParams {
    /// Uniform sample with every exponent in `[-bound, bound]`.
    pub fn sample<R: Rng>(rng: &mut R, bound: f64) -> Self {
        let mut g = || rng.gen_range(-bound..=bound);
        BraidParams {
            m11_plus: g(),
            m11_minus: g(),
            m21_plus: g(),
            m21_minus: g(),
            m22_plus: g(),
            m22_minus: g(),
        }
    }

    fn validate(&self) -> Result<()> {
        let all = [
            self.m11_plus,
            self.m11_minus,
            self.m21_plus,
            self.m21_minus,
            self.m22_plus,
            self.m22_minus,
        ];
        if all.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::Domain("non-finite braid parameter".into()))
        }
    }
}

/// Places the six channel values on the fixed sparsity pattern; the centre
/// entry is 1.
pub fn rhat_pattern<T: Scalar>(a: (T, T), b: (T, T), c: (T, T)) -> Matrix<T> {
    let (ap, am) = a;
    let (bp, bm) = b;
    let (cp, cm) = c;
    let mut m = Matrix::zeros(9, 9);
    for (i, j, v) in [
        (0, 0, ap.clone()),
        (0, 8, am.clone()),
        (1, 1, bp.clone()),
        (1, 7, bm.clone()),
        (2, 2, ap.clone()),
        (2, 6, am.clone()),
        (3, 3, cp.clone()),
        (3, 5, cm.clone()),
        (4, 4, T::one()),
        (5, 3, cm),
        (5, 5, cp),
        (6, 2, am.clone()),
        (6, 6, ap.clone()),
        (7, 1, bm),
        (7, 7, bp),
        (8, 0, am),
        (8, 8, ap),
    ] {
        m[(i, j)] = v;
    }
    m
}

fn channel(plus: f64, minus: f64, theta: f64) -> Result<(f64, f64)> {
    let (x, y) = ((plus * theta).exp(), (minus * theta).exp());
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!(
            "exponential overflow at m={plus}/{minus}, theta={theta}"
        )));
    }
    Ok((0.5 * (x + y), 0.5 * (x - y)))
}

pub fn build_rhat(p: &BraidParams, theta: f64) -> Result<FloatMatrix> {
    p.validate()?;
    if !theta.is_finite() {
        return Err(Error::Domain("non-finite theta".into()));
    }
    Ok(rhat_pattern(
        channel(p.m11_plus, p.m11_minus, theta)?,
        channel(p.m21_plus, p.m21_minus, theta)?,
        channel(p.m22_plus, p.m22_minus, theta)?,
    ))
}

/// `R = P·R̂`.
pub fn build_r<T: Scalar>(rhat: &Matrix<T>) -> Result<Matrix<T>> {
    if rhat.rows() != 9 || rhat.cols() != 9 {
        return Err(Error::Dimension(format!(
            "expected 9x9, got {}x{}",
            rhat.rows(),
            rhat.cols()
        )));
    }
    permutation_p::<T>(3).mul(rhat)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantRhat {
    pub case: SignCase,
    pub matrix: ExactMatrix,
}

pub fn build_constant_rhat(case: SignCase) -> ConstantRhat {
    let h = half();
    let ch = |e: i8| (h.clone(), h.clone() * q(e as i64));
    ConstantRhat {
        case,
        matrix: rhat_pattern(ch(case.eps_a), ch(case.eps_b), ch(case.eps_c)),
    }
}

/// Braid residual for an arbitrary triple, so corrupted matrices can be fed in.
pub fn braid_residual(r1: &FloatMatrix, r2: &FloatMatrix, r3: &FloatMatrix) -> Result<f64> {
    // R̂₁₂(θ)R̂₂₃(θ+θ′)R̂₁₂(θ′) − R̂₂₃(θ′)R̂₁₂(θ+θ′)R̂₂₃(θ)
    let lhs = embed_site(r1, Slot::S12, 3)?
        .mul(&embed_site(r2, Slot::S23, 3)?)?
        .mul(&embed_site(r3, Slot::S12, 3)?)?;
    let rhs = embed_site(r3, Slot::S23, 3)?
        .mul(&embed_site(r2, Slot::S12, 3)?)?
        .mul(&embed_site(r1, Slot::S23, 3)?)?;
    lhs.max_abs_diff(&rhs)
}

/// Max-abs residual of the spectral braid equation.
pub fn check_braid_baxterized(p: &BraidParams, theta: f64, theta2: f64) -> Result<f64> {
    braid_residual(
        &build_rhat(p, theta)?,
        &build_rhat(p, theta + theta2)?,
        &build_rhat(p, theta2)?,
    )
}

/// Which construction of the 13 embedding to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embed13 {
    Conjugated,
    Alternative,
}

fn e13(a: &FloatMatrix, how: Embed13) -> Result<FloatMatrix> {
    match how {
        Embed13::Conjugated => embed_site(a, Slot::S13, 3),
        Embed13::Alternative => embed_site13_alt(a, 3),
    }
}

/// Max-abs residual of `R₁₂(θ)R₁₃(θ+θ′)R₂₃(θ′) − R₂₃(θ′)R₁₃(θ+θ′)R₁₂(θ)`.
pub fn check_ybe_baxterized(p: &BraidParams, theta: f64, theta2: f64, how: Embed13) -> Result<f64> {
    let r1 = build_r(&build_rhat(p, theta)?)?;
    let r2 = build_r(&build_rhat(p, theta + theta2)?)?;
    let r3 = build_r(&build_rhat(p, theta2)?)?;
    let lhs = embed_site(&r1, Slot::S12, 3)?
        .mul(&e13(&r2, how)?)?
        .mul(&embed_site(&r3, Slot::S23, 3)?)?;
    let rhs = embed_site(&r3, Slot::S23, 3)?
        .mul(&e13(&r2, how)?)?
        .mul(&embed_site(&r1, Slot::S12, 3)?)?;
    lhs.max_abs_diff(&rhs)
}

/// `‖R̂(θ)R̂(−θ) − I‖∞`.
pub fn inverse_residual(p: &BraidParams, theta: f64) -> Result<f64> {
    let prod = build_rhat(p, theta)?.mul(&build_rhat(p, -theta)?)?;
    prod.max_abs_diff(&FloatMatrix::identity(9))
}

/// Exact constant YBE `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂` with `R = P·R̂`.
pub fn check_constant_ybe_matrix(rhat: &ExactMatrix) -> Result<bool> {
    let r = build_r(rhat)?;
    let r12 = embed_site(&r, Slot::S12, 3)?;
    let r13 = embed_site(&r, Slot::S13, 3)?;
    let r23 = embed_site(&r, Slot::S23, 3)?;
    Ok(r12.mul(&r13)?.mul(&r23)? == r23.mul(&r13)?.mul(&r12)?)
}

pub fn check_constant_ybe(case: SignCase) -> bool {
    check_constant_ybe_matrix(&build_constant_rhat(case).matrix).expect("constant matrices are 9x9")
}

/// Exact constant braid relation `R̂₁₂R̂₂₃R̂₁₂ = R̂₂₃R̂₁₂R̂₂₃`.
pub fn check_constant_braid_matrix(rhat: &ExactMatrix) -> Result<bool> {
    let a = embed_site(rhat, Slot::S12, 3)?;
    let b = embed_site(rhat, Slot::S23, 3)?;
    Ok(a.mul(&b)?.mul(&a)? == b.mul(&a)?.mul(&b)?)
}

/// Finite stand-in for the limit `m⁻ → −∞`: every minus exponent is set
/// to `minus`, and each channel is rescaled by `e^{−m⁺θ}`.
pub fn constant_limit_proxy(plus: [f64; 3], minus: f64, theta: f64) -> Result<FloatMatrix> {
    let ch = |mp: f64| -> Result<(f64, f64)> {
        let (a, b) = channel(mp, minus, theta)?;
        let s = (-mp * theta).exp();
        Ok((a * s, b * s))
    };
    Ok(rhat_pattern(ch(plus[0])?, ch(plus[1])?, ch(plus[2])?))
}

pub fn exact_entry(case: SignCase, i: usize, j: usize) -> Q {
    build_constant_rhat(case).matrix[(i, j)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params() -> BraidParams {
        BraidParams {
            m11_plus: 0.3,
            m11_minus: -1.1,
            m21_plus: 1.7,
            m21_minus: 0.2,
            m22_plus: -0.6,
            m22_minus: 1.4,
        }
    }

    #[test]
    fn sign_case_parsing() {
        assert_eq!("+-+".parse::<SignCase>().unwrap(), SignCase::new(1, -1, 1));
        assert!("++".parse::<SignCase>().is_err());
        assert!("+x+".parse::<SignCase>().is_err());
        assert!("++++".parse::<SignCase>().is_err());
        for c in SignCase::ALL {
            assert_eq!(c.label().parse::<SignCase>().unwrap(), c);
        }
        assert_eq!(SignCase::new(-1, 1, -1).slug(), "mpm");
    }

    #[test]
    fn regular_at_zero() {
        assert!(build_rhat(&params(), 0.0).unwrap().is_identity());
    }

    #[test]
    fn top_right_corner_is_a_minus() {
        let p = params();
        let th = 0.7;
        let m = build_rhat(&p, th).unwrap();
        let am = 0.5 * ((p.m11_plus * th).exp() - (p.m11_minus * th).exp());
        assert_eq!(m[(0, 8)], am);
    }

    #[test]
    fn r_of_identity_is_flip() {
        assert_eq!(
            build_r(&ExactMatrix::identity(9)).unwrap(),
            permutation_p(3)
        );
    }

    #[test]
    fn r_rows_follow_pattern() {
        let r = build_r(&build_constant_rhat(SignCase::ALL[0]).matrix).unwrap();
        for j in 0..9 {
            assert_eq!(r[(4, j)], if j == 4 { q(1) } else { q(0) });
        }
        let f = build_r(&build_rhat(&params(), 0.4).unwrap()).unwrap();
        let rh = build_rhat(&params(), 0.4).unwrap();
        assert_eq!(f[(1, 3)], rh[(3, 3)]);
        assert_eq!(f[(1, 5)], rh[(3, 5)]);
    }

    #[test]
    fn constant_entries() {
        let ppp = SignCase::ALL[0];
        assert_eq!(exact_entry(ppp, 0, 0), half());
        assert_eq!(exact_entry(ppp, 0, 8), half());
        let mpp = SignCase::ALL[1];
        assert_eq!(exact_entry(mpp, 0, 8), qr(-1, 2));
        assert_eq!(exact_entry(mpp, 1, 7), half());
        for c in SignCase::ALL {
            assert_eq!(exact_entry(c, 4, 4), q(1));
        }
    }

    #[test]
    fn zero_spectral_parameters_give_zero_residual() {
        assert_eq!(check_braid_baxterized(&params(), 0.0, 0.0).unwrap(), 0.0);
        assert_eq!(
            check_ybe_baxterized(&params(), 0.0, 0.0, Embed13::Conjugated).unwrap(),
            0.0
        );
    }

    #[test]
    fn both_13_embeddings_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let p = BraidParams::sample(&mut rng, 2.0);
            let a = check_ybe_baxterized(&p, 0.3, -0.9, Embed13::Conjugated).unwrap();
            let b = check_ybe_baxterized(&p, 0.3, -0.9, Embed13::Alternative).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn overflow_is_a_domain_error() {
        let mut p = params();
        p.m11_plus = 1e3;
        assert!(matches!(build_rhat(&p, 1e3), Err(Error::Domain(_))));
        p.m11_plus = f64::NAN;
        assert!(build_rhat(&p, 0.1).is_err());
    }

    #[test]
    fn identity_passes_constant_ybe() {
        assert!(check_constant_ybe_matrix(&ExactMatrix::identity(9)).unwrap());
    }

    #[test]
    fn limit_proxy_approaches_constant_case() {
        let m = constant_limit_proxy([0.5, -0.3, 1.2], -40.0, 1.0).unwrap();
        let exact = build_constant_rhat(SignCase::ALL[0]).matrix.to_f64();
        assert!(m.max_abs_diff(&exact).unwrap() < 1e-10);
    }
}
