//! Coefficient bounds for the class Σ(θ, λ, γ).
//!
//! With Λ = cos θ · (1 + γ(1 − 2λ)), the bound sequence is
//!
//! ```text
//! A_1     = Λ(1 − 2λ) / ((1 − λ) φ_1)
//! A_{n+1} = 2Λ / ((n + 2)(1 − λ) φ_{n+1}) · [1 − 2λ + Σ_{k=1}^{n} φ_k (1 − λ + kλ) A_k]
//! ```
//!
//! and telescoping the recursion gives the closed product
//!
//! ```text
//! A_n = Λ(1 − 2λ) / ((1 − λ)^n φ_n) · Π_{k=1}^{n−1} [(k + 1)(1 − λ) + 2(1 − λ + kλ)Λ] / (k + 2).
//! ```
//!
//! Both are computed independently so they can be cross-checked. The
//! weights enter through |φ_n|, which is φ_n whenever all Γ(αn + β) > 0.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::{apply_operator, LaurentSeries, TaylorSeries};
use crate::special::{ln_phi, phi, WrightParams};

/// Above this many terms the closed product is accumulated in log space.
pub const LOG_SPACE_THRESHOLD: usize = 50;

/// Relative slack allowed when comparing |a_n| against A_n.
pub const BOUND_REL_SLACK: f64 = 1e-12;

/// Class parameters (θ, λ, γ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassParams {
    theta: f64,
    lambda: f64,
    gamma: f64,
    relaxed: bool,
}

impl ClassParams {
    /// Requires |θ| < π/2, 0 ≤ λ < 1/2 and γ > 1.
    pub fn new(theta: f64, lambda: f64, gamma: f64) -> Result<Self> {
        Self::validate(theta, lambda, gamma, false)
    }

    /// As [`ClassParams::new`] but only asks for γ > 0; Λ stays positive there.
    pub fn relaxed(theta: f64, lambda: f64, gamma: f64) -> Result<Self> {
        Self::validate(theta, lambda, gamma, true)
    }

    fn validate(theta: f64, lambda: f64, gamma: f64, relaxed: bool) -> Result<Self> {
        if !theta.is_finite() || theta.abs() >= FRAC_PI_2 {
            return Err(Error::param(
                "theta",
                format!("must satisfy |theta| < pi/2, got {theta}"),
            ));
        }
        if !lambda.is_finite() || !(0.0..0.5).contains(&lambda) {
            return Err(Error::param(
                "lambda",
                format!("must satisfy 0 <= lambda < 1/2, got {lambda}"),
            ));
        }
        let floor = if relaxed { 0.0 } else { 1.0 };
        if !gamma.is_finite() || gamma <= floor {
            let hint = if relaxed {
                ""
            } else {
                " (use the relaxed mode for 0 < gamma <= 1)"
            };
            return Err(Error::param(
                "gamma",
                format!("must satisfy gamma > {floor}, got {gamma}{hint}"),
            ));
        }
        Ok(Self {
            theta,
            lambda,
            gamma,
            relaxed,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    /// Λ = cos θ (1 + γ(1 − 2λ)).
    pub fn big_lambda(&self) -> f64 {
        self.theta.cos() * (1.0 + self.gamma * (1.0 - 2.0 * self.lambda))
    }

    /// 1 − 2λ.
    pub fn one_minus_two_lambda(&self) -> f64 {
        1.0 - 2.0 * self.lambda
    }

    /// κ = cos θ (1/(1 − 2λ) + γ), minus the denominator of the Carathéodory transform.
    pub fn kappa(&self) -> f64 {
        self.theta.cos() * (1.0 / self.one_minus_two_lambda() + self.gamma)
    }

    /// γ cos θ − i sin θ / (1 − 2λ).
    pub fn shift(&self) -> Complex64 {
        Complex64::new(
            self.gamma * self.theta.cos(),
            -self.theta.sin() / self.one_minus_two_lambda(),
        )
    }

    /// e^{iθ}.
    pub fn rotation(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    /// Factor [(n + 1)(1 − λ) + 2(1 − λ + nλ)Λ] / ((n + 2)(1 − λ)) with A_{n+1}/A_n = factor · φ_n/φ_{n+1}.
    pub fn ratio_factor(&self, n: usize) -> f64 {
        let (l, big) = (self.lambda, self.big_lambda());
        let n = n as f64;
        ((n + 1.0) * (1.0 - l) + 2.0 * (1.0 - l + n * l) * big) / ((n + 2.0) * (1.0 - l))
    }
}

/// How a [`BoundSequence`] was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMethod {
    Recursive,
    ClosedForm,
}

/// A_1 … A_N for one parameter tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSequence {
    pub values: Vec<f64>,
    pub params: ClassParams,
    pub wright: WrightParams,
    pub method: BoundMethod,
}

impl BoundSequence {
    /// A_n for 1 ≤ n ≤ N.
    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_n_max(n_max: usize) -> Result<()> {
    if n_max == 0 {
        return Err(Error::param("n_max", "need at least one term"));
    }
    Ok(())
}

/// A_n from the defining recursion, with the bracketed partial sum kept as a running total.
pub fn bound_sequence_recursive(
    cp: &ClassParams,
    wp: &WrightParams,
    n_max: usize,
) -> Result<BoundSequence> {
    check_n_max(n_max)?;
    let l = cp.lambda();
    let big = cp.big_lambda();
    let phis = (1..=n_max)
        .map(|n| phi(wp, n).map(f64::abs))
        .collect::<Result<Vec<_>>>()?;

    let mut values = Vec::with_capacity(n_max);
    let a1 = cp.one_minus_two_lambda() * big / ((1.0 - l) * phis[0]);
    if !a1.is_finite() {
        return Err(Error::Overflow { index: 1 });
    }
    values.push(a1);
    let mut bracket = cp.one_minus_two_lambda() + phis[0] * a1;
    for (n, &phi_next) in phis.iter().enumerate().skip(1) {
        let next = 2.0 * big / ((n as f64 + 2.0) * (1.0 - l) * phi_next) * bracket;
        if !next.is_finite() {
            return Err(Error::Overflow { index: n + 1 });
        }
        values.push(next);
        bracket += phi_next * (1.0 - l + (n + 1) as f64 * l) * next;
    }
    Ok(BoundSequence {
        values,
        params: *cp,
        wright: *wp,
        method: BoundMethod::Recursive,
    })
}

/// A_n from the closed product (log space when `n_max` exceeds [`LOG_SPACE_THRESHOLD`]).
pub fn bound_sequence_closed(
    cp: &ClassParams,
    wp: &WrightParams,
    n_max: usize,
) -> Result<BoundSequence> {
    check_n_max(n_max)?;
    let l = cp.lambda();
    let big = cp.big_lambda();
    let prefactor = big * cp.one_minus_two_lambda();
    let factor = |k: usize| {
        let k = k as f64;
        ((k + 1.0) * (1.0 - l) + 2.0 * (1.0 - l + k * l) * big) / (k + 2.0)
    };

    let mut values = Vec::with_capacity(n_max);
    if n_max > LOG_SPACE_THRESHOLD {
        let ln_pre = prefactor.ln();
        let ln_one_minus = (1.0 - l).ln();
        let mut ln_product = 0.0;
        for n in 1..=n_max {
            if n >= 2 {
                ln_product += factor(n - 1).ln();
            }
            let (ln_abs_phi, _) = ln_phi(wp, n)?;
            let value = (ln_pre - n as f64 * ln_one_minus - ln_abs_phi + ln_product).exp();
            if !value.is_finite() {
                return Err(Error::Overflow { index: n });
            }
            values.push(value);
        }
    } else {
        let mut product = 1.0;
        let mut power = 1.0;
        for n in 1..=n_max {
            if n >= 2 {
                product *= factor(n - 1);
            }
            power *= 1.0 - l;
            let value = prefactor / (power * phi(wp, n)?.abs()) * product;
            if !value.is_finite() {
                return Err(Error::Overflow { index: n });
            }
            values.push(value);
        }
    }
    Ok(BoundSequence {
        values,
        params: *cp,
        wright: *wp,
        method: BoundMethod::ClosedForm,
    })
}

/// One index of a coefficient-bound comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRecord {
    pub n: usize,
    pub abs_coeff: f64,
    pub bound: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub records: Vec<BoundRecord>,
}

impl BoundReport {
    pub fn all_satisfied(&self) -> bool {
        self.records.iter().all(|r| r.satisfied)
    }

    pub fn first_violation(&self) -> Option<&BoundRecord> {
        self.records.iter().find(|r| !r.satisfied)
    }
}

/// Compares |a_n| with A_n for every stored coefficient of `f`.
///
/// A violated bound certifies that `f` is not in Σ(θ, λ, γ).
pub fn coefficient_bound_check(
    f: &LaurentSeries,
    cp: &ClassParams,
    wp: &WrightParams,
) -> Result<BoundReport> {
    if !f.is_normalized() {
        return Err(Error::param("f", "principal part must be exactly 1"));
    }
    if f.truncation() == 0 {
        return Ok(BoundReport {
            records: Vec::new(),
        });
    }
    let bounds = bound_sequence_closed(cp, wp, f.truncation())?;
    let records = f
        .coeffs()
        .iter()
        .zip(&bounds.values)
        .enumerate()
        .map(|(i, (a, &bound))| {
            let abs_coeff = a.norm();
            BoundRecord {
                n: i + 1,
                abs_coeff,
                bound,
                satisfied: abs_coeff <= bound * (1.0 + BOUND_REL_SLACK),
            }
        })
        .collect();
    Ok(BoundReport { records })
}

/// LHS − RHS of `e^{iθ} z H' = ((1 − λ)H + λ z H') (γ cos θ − i sin θ/(1 − 2λ) − κ τ)` at one power of z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerResidual {
    pub power: i64,
    pub residual: Complex64,
}

fn check_tau(tau: &TaylorSeries) -> Result<()> {
    if (tau.coeff(0) - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::param(
            "tau",
            "tau must be normalized with tau(0) = 1",
        ));
    }
    Ok(())
}

/// Multiplies out both sides of the defining relation as truncated series
/// (H = W_{α,β} f) and returns the residual at each power z^{−1}, z^0, z^1, …
/// that both truncations determine.
pub fn series_identity_oracle(
    f: &LaurentSeries,
    tau: &TaylorSeries,
    cp: &ClassParams,
    wp: &WrightParams,
) -> Result<Vec<PowerResidual>> {
    check_tau(tau)?;
    let h = apply_operator(wp, f)?;
    let lhs = h.z_derivative().shifted().scaled(cp.rotation());
    let mix = h.lambda_mix(cp.lambda()).shifted();
    let bracket = tau
        .scaled(Complex64::new(-cp.kappa(), 0.0))
        .shift(cp.shift());
    let rhs = mix.mul(&bracket);
    Ok(lhs
        .coeffs()
        .iter()
        .zip(rhs.coeffs())
        .enumerate()
        .map(|(k, (l, r))| PowerResidual {
            power: k as i64 - 1,
            residual: l - r,
        })
        .collect())
}

/// Residuals of the coefficient-extraction identities at power z^n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionResidual {
    pub n: usize,
    /// Identity with the right-hand side carrying the extra factor e^{−iθ} for n ≥ 2.
    pub printed: Complex64,
    /// Identity obtained by matching z^n directly:
    /// e^{iθ}(n + 1)(1 − λ)φ_n a_n = −Λ[(1 − 2λ)τ_{n+1} + Σ_{k=1}^{n−1} φ_k(1 − λ + kλ) a_k τ_{n−k}].
    pub direct: Complex64,
}

/// Evaluates both extraction identities for every n with a_n and τ_{n+1} available.
pub fn extraction_residuals(
    f: &LaurentSeries,
    tau: &TaylorSeries,
    cp: &ClassParams,
    wp: &WrightParams,
) -> Result<Vec<ExtractionResidual>> {
    check_tau(tau)?;
    let l = cp.lambda();
    let big = cp.big_lambda();
    let rot = cp.rotation();
    let n_max = f.truncation().min(tau.order().saturating_sub(1));
    let weighted = (1..=n_max)
        .map(|k| Ok(f.coeffs()[k - 1] * phi(wp, k)?))
        .collect::<Result<Vec<Complex64>>>()?;

    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let lhs = rot * ((n + 1) as f64 * (1.0 - l)) * weighted[n - 1];
        let convolution: Complex64 = (1..n)
            .map(|k| weighted[k - 1] * (1.0 - l + k as f64 * l) * tau.coeff(n - k))
            .sum();
        let inner = (1.0 - 2.0 * l) * tau.coeff(n + 1) + convolution;
        let direct = lhs + big * inner;
        let printed = if n == 1 {
            direct
        } else {
            lhs + rot.conj() * big * inner
        };
        out.push(ExtractionResidual { n, printed, direct });
    }
    Ok(out)
}
