//! Truncated series of the shape `c/z + Σ_{n=1}^{N} a_n z^n` and plain
//! truncated power series, with the coefficient operations used by the
//! class machinery.
//!
//! Binary operations truncate to the shorter operand: coefficients past the
//! stored truncation are unknown, not zero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::{phi, WrightParams};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn all_finite(values: &[Complex64]) -> bool {
    values.iter().all(|c| c.re.is_finite() && c.im.is_finite())
}

/// A truncated meromorphic series `principal/z + Σ_{n=1}^{N} a_n z^n`.
///
/// Functions of the class Σ carry `principal == 1`. A truncation of zero
/// (no stored tail) represents the pure pole `principal/z`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    principal: Complex64,
    coeffs: Vec<Complex64>,
}

impl LaurentSeries {
    pub fn new(principal: Complex64, coeffs: Vec<Complex64>) -> Result<Self> {
        if !all_finite(&coeffs) || !all_finite(&[principal]) {
            return Err(Error::param("coeffs", "series coefficients must be finite"));
        }
        Ok(Self { principal, coeffs })
    }

    /// `1/z + Σ a_n z^n` with `coeffs[n-1] = a_n`.
    pub fn normalized(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(ONE, coeffs)
    }

    /// The function `1/z`.
    pub fn pole() -> Self {
        Self {
            principal: ONE,
            coeffs: Vec::new(),
        }
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(principal: f64, coeffs: &[f64]) -> Result<Self> {
        Self::new(
            Complex64::new(principal, 0.0),
            coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        )
    }

    pub fn principal(&self) -> Complex64 {
        self.principal
    }

    /// `a_1 … a_N`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_n` for 1 ≤ n ≤ N.
    pub fn coeff(&self, n: usize) -> Option<Complex64> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i).copied())
    }

    pub fn is_normalized(&self) -> bool {
        self.principal == ONE
    }

    /// Keeps the first `n` tail coefficients.
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            principal: self.principal,
            coeffs: self.coeffs.iter().take(n).copied().collect(),
        }
    }

    /// Coefficientwise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        Self {
            principal: self.principal * other.principal,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Multiplies coefficient `n` by `weight(n)`, principal part by `weight_principal`.
    fn map_indexed(
        &self,
        weight_principal: Complex64,
        weight: impl Fn(usize) -> Complex64,
    ) -> Self {
        Self {
            principal: self.principal * weight_principal,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a * weight(i + 1))
                .collect(),
        }
    }

    /// `c · self`.
    pub fn scaled(&self, c: Complex64) -> Self {
        self.map_indexed(c, |_| c)
    }

    /// Termwise sum, truncated to the shorter operand.
    pub fn add(&self, other: &Self) -> Self {
        Self {
            principal: self.principal + other.principal,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `z f'(z) = −principal/z + Σ n a_n z^n`.
    pub fn z_derivative(&self) -> Self {
        self.map_indexed(-ONE, |n| Complex64::new(n as f64, 0.0))
    }

    /// `(1 − λ) f + λ z f'`: principal `(1 − 2λ)·principal`, coefficients `(1 − λ + nλ) a_n`.
    pub fn lambda_mix(&self, lambda: f64) -> Self {
        self.map_indexed(Complex64::new(1.0 - 2.0 * lambda, 0.0), |n| {
            Complex64::new(1.0 - lambda + n as f64 * lambda, 0.0)
        })
    }

    /// `z² f''(z) + 2 z f'(z) = 2 principal/z + Σ n(n+1) a_n z^n`.
    ///
    /// Divided by z this is `z f'' + 2 f'`, the numerator of the convexity ratio.
    pub fn convexity_numerator(&self) -> Self {
        self.map_indexed(Complex64::new(0.0, 0.0), |n| {
            Complex64::new((n * (n + 1)) as f64, 0.0)
        })
    }

    /// Evaluates the truncated series at a point of the punctured unit disk.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::Domain { z });
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let tail = self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a) * z;
        self.principal / z + tail
    }

    /// `z·f(z)` as a power series `principal + 0·z + a_1 z² + …` (length N + 2).
    pub fn shifted(&self) -> TaylorSeries {
        let mut c = Vec::with_capacity(self.coeffs.len() + 2);
        c.push(self.principal);
        c.push(ZERO);
        c.extend_from_slice(&self.coeffs);
        TaylorSeries { coeffs: c }
    }
}

/// `1/z + Σ_{n=1}^{N} φ_n z^n`: Hadamard product with it applies W_{α,β}.
pub fn wright_kernel(params: &WrightParams, n_max: usize) -> Result<LaurentSeries> {
    let coeffs = (1..=n_max)
        .map(|n| phi(params, n).map(|p| Complex64::new(p, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    LaurentSeries::normalized(coeffs)
}

/// `W_{α,β} f = 1/z + Σ φ_n a_n z^n` (principal part preserved).
pub fn apply_operator(params: &WrightParams, f: &LaurentSeries) -> Result<LaurentSeries> {
    let mut coeffs = Vec::with_capacity(f.truncation());
    for (i, a) in f.coeffs.iter().enumerate() {
        coeffs.push(a * phi(params, i + 1)?);
    }
    LaurentSeries::new(f.principal, coeffs)
}

/// A truncated power series `c_0 + c_1 z + … + c_N z^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
}

impl TaylorSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::param("coeffs", "a power series needs at least c_0"));
        }
        if !all_finite(&coeffs) {
            return Err(Error::param("coeffs", "series coefficients must be finite"));
        }
        Ok(Self { coeffs })
    }

    /// The constant `c` to order N.
    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut coeffs = vec![ZERO; order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// A polynomial padded with zeros (or cut) to order N.
    pub fn from_polynomial(coeffs: &[Complex64], order: usize) -> Self {
        let mut c: Vec<_> = coeffs.iter().take(order + 1).copied().collect();
        c.resize(order + 1, ZERO);
        Self { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    /// Highest stored power N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Adds a constant to c_0.
    pub fn shift(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Cauchy product truncated to the shorter order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * other.coeffs[k - j]).sum())
            .collect();
        Self { coeffs }
    }

    /// `self / other` by forward substitution; needs `other.c_0 ≠ 0`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let d0 = other.coeffs[0];
        if d0.norm() == 0.0 {
            return Err(Error::Division { z: ZERO });
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut q: Vec<Complex64> = Vec::with_capacity(n);
        for k in 0..n {
            let acc: Complex64 = (1..=k).map(|j| other.coeffs[j] * q[k - j]).sum();
            q.push((self.coeffs[k] - acc) / d0);
        }
        Self::new(q)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
    }
}
