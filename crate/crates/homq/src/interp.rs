//! Polynomial interpolation machinery: truncation-order selection,
//! Newton-identity inverse power sums, truncated Taylor evaluation of the
//! log of a normalized polynomial, and the truncation error bound.

use num_complex::Complex64;

use crate::error::{HomqError, Result};

const NORMALIZATION_TOL: f64 = 1e-12;

/// Leading coefficients `a_0..a_M` of a normalized polynomial (`a_0 = 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientPrefix {
    coeffs: Vec<Complex64>,
}

impl CoefficientPrefix {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        let a0 = *coeffs.first().ok_or(HomqError::NotNormalized {
            a0: Complex64::new(0.0, 0.0),
        })?;
        if (a0 - 1.0).norm() > NORMALIZATION_TOL {
            return Err(HomqError::NotNormalized { a0 });
        }
        Ok(CoefficientPrefix { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Highest coefficient index held, i.e. `M`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Inverse power sums `p_1..p_M` of the roots of a normalized polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSums {
    sums: Vec<Complex64>,
}

impl PowerSums {
    pub fn new(sums: Vec<Complex64>) -> Self {
        PowerSums { sums }
    }

    pub fn zeros(order: usize) -> Self {
        PowerSums {
            sums: vec![Complex64::new(0.0, 0.0); order],
        }
    }

    /// `p_j` for `j` in `1..=order()`.
    pub fn sums(&self) -> &[Complex64] {
        &self.sums
    }

    pub fn order(&self) -> usize {
        self.sums.len()
    }

    pub fn add_assign(&mut self, other: &PowerSums) {
        debug_assert_eq!(self.sums.len(), other.sums.len());
        for (a, b) in self.sums.iter_mut().zip(&other.sums) {
            *a += b;
        }
    }
}

/// Truncation order selected for a given target accuracy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationPlan {
    pub epsilon: f64,
    /// `|t| / delta`: evaluation point over the zero-free radius.
    pub ratio: f64,
    pub n_roots: usize,
    pub order: usize,
}

/// Order `M = max(1, ceil((1 - ratio)^-1 * ln(n/epsilon)))` guaranteeing an
/// additive epsilon bound on the truncated log series.
pub fn truncation_order(n_roots: usize, epsilon: f64, ratio: f64) -> Result<TruncationPlan> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(HomqError::EpsilonOutOfRange { epsilon });
    }
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(HomqError::RatioOutOfRange { ratio });
    }
    assert!(n_roots >= 1, "n_roots must be positive");
    let raw = (1.0 - ratio).recip() * (n_roots as f64 / epsilon).ln();
    let order = (raw.ceil() as usize).max(1);
    Ok(TruncationPlan {
        epsilon,
        ratio,
        n_roots,
        order,
    })
}

/// Inverse power sums `p_1..p_M` via Newton's identities,
/// `p_k = -k a_k - sum_{j=1}^{k-1} p_j a_{k-j}`, with `M = c.order()`.
///
/// `p_j` depends only on `a_1..a_j`, so a truncated prefix yields exact
/// sums up to its own order.
pub fn newton_power_sums(c: &CoefficientPrefix) -> PowerSums {
    newton_power_sums_to(c, c.order())
}

/// As [`newton_power_sums`], extended to `order` by treating missing
/// coefficients as zero (valid when the polynomial truly ends at `c`).
pub fn newton_power_sums_to(c: &CoefficientPrefix, order: usize) -> PowerSums {
    let a = c.coeffs();
    let zero = Complex64::new(0.0, 0.0);
    let coeff = |k: usize| if k < a.len() { a[k] } else { zero };
    let mut p = Vec::with_capacity(order);
    for k in 1..=order {
        let mut s = -(k as f64) * coeff(k);
        for j in 1..k {
            s -= p[j - 1] * coeff(k - j);
        }
        p.push(s);
    }
    PowerSums::new(p)
}

/// Truncated Taylor expansion of `log p` at `t`:
/// `-sum_{j=1}^M p_j t^j / j` (the `log a_0` term vanishes under `a_0 = 1`).
pub fn taylor_log_truncated(p: &PowerSums, t: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut tj = Complex64::new(1.0, 0.0);
    for (j, &pj) in p.sums().iter().enumerate() {
        tj *= t;
        acc -= pj * tj / (j as f64 + 1.0);
    }
    acc
}

/// Tail bound `n * ratio^(M+1) / ((M+1)(1 - ratio))` on the truncated
/// log series, valid when all roots lie outside the disc defining `ratio`.
pub fn truncation_error_bound(n_roots: usize, order: usize, ratio: f64) -> Result<f64> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(HomqError::RatioOutOfRange { ratio });
    }
    let m1 = order as f64 + 1.0;
    Ok(n_roots as f64 * ratio.powf(m1) / (m1 * (1.0 - ratio)))
}
