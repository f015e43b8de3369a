//! The class Σ(θ, λ, γ) through its Carathéodory transform.
//!
//! For H = W_{α,β} f write R(z) = z H'(z) / ((1 − λ) H(z) + λ z H'(z)). Then
//!
//! ```text
//! τ(z) = [e^{iθ} R(z) − γ cos θ + i sin θ/(1 − 2λ)] / [−cos θ (1/(1 − 2λ) + γ)]
//! ```
//!
//! and f ∈ Σ(θ, λ, γ) exactly when τ has positive real part on the disk.
//! τ(0) = 1 for every normalized f. Membership here is always a statement
//! about a finite sample grid.
//!
//! The representation direction runs the other way: a Schwarz function w
//! fixes τ = (1 + w)/(1 − w), hence R = A(w), hence z H'/H, and H follows
//! from a coefficient recurrence.

use num_complex::Complex64;
use rand::Rng;

use crate::bounds::ClassParams;
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::laurent::{apply_operator, wright_kernel, LaurentSeries, TaylorSeries};
use crate::special::{phi, WrightParams};

/// Half-width of the undecided band around Re τ = 0.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Modulus below which the convolution expression counts as vanishing.
pub const VANISHING_TOL: f64 = 1e-9;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Analytic w on the unit disk with w(0) = 0 and |w| < 1.
///
/// Only polynomials are supported; |w| < 1 is guaranteed through Σ|c_k| < 1.
#[derive(Debug, Clone, PartialEq)]
pub enum SchwarzFunction {
    Monomial {
        c: Complex64,
        power: usize,
    },
    /// Coefficients c_1 … c_m of z … z^m.
    Polynomial(Vec<Complex64>),
}

impl SchwarzFunction {
    pub fn monomial(c: Complex64, power: usize) -> Result<Self> {
        if power == 0 {
            return Err(Error::param(
                "power",
                "a Schwarz function has no constant term",
            ));
        }
        let w = Self::Monomial { c, power };
        w.validate()?;
        Ok(w)
    }

    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        let w = Self::Polynomial(coeffs);
        w.validate()?;
        Ok(w)
    }

    /// w ≡ 0.
    pub fn zero() -> Self {
        Self::Polynomial(Vec::new())
    }

    fn validate(&self) -> Result<()> {
        let finite = self
            .terms()
            .all(|(_, c)| c.re.is_finite() && c.im.is_finite());
        if !finite {
            return Err(Error::param("schwarz", "coefficients must be finite"));
        }
        let mass = self.mass();
        if mass >= 1.0 {
            return Err(Error::param(
                "schwarz",
                format!("sum of |c_k| must be < 1 to guarantee |w| < 1, got {mass}"),
            ));
        }
        Ok(())
    }

    /// (power, coefficient) pairs.
    pub fn terms(&self) -> Box<dyn Iterator<Item = (usize, Complex64)> + '_> {
        match self {
            Self::Monomial { c, power } => Box::new(std::iter::once((*power, *c))),
            Self::Polynomial(cs) => Box::new(cs.iter().enumerate().map(|(i, &c)| (i + 1, c))),
        }
    }

    /// Σ|c_k|, an upper bound for sup |w| on the disk.
    pub fn mass(&self) -> f64 {
        self.terms().map(|(_, c)| c.norm()).sum()
    }

    /// Coefficient of z¹. Functions of Σ force τ'(0) = 0, which needs this to vanish.
    pub fn linear_coeff(&self) -> Complex64 {
        self.terms().filter(|&(p, _)| p == 1).map(|(_, c)| c).sum()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms().map(|(p, c)| c * z.powu(p as u32)).sum()
    }

    /// Taylor coefficients up to `order`.
    pub fn taylor(&self, order: usize) -> TaylorSeries {
        let mut coeffs = vec![ZERO; order + 1];
        for (p, c) in self.terms() {
            if p <= order {
                coeffs[p] += c;
            }
        }
        TaylorSeries::from_polynomial(&coeffs, order)
    }

    /// Random polynomial with powers 2…`max_degree`, Σ|c_k| drawn uniformly from
    /// [0.05, `max_mass`] and spread over the terms with random phases.
    pub fn random_admissible<R: Rng + ?Sized>(
        rng: &mut R,
        max_degree: usize,
        max_mass: f64,
    ) -> Result<Self> {
        if max_degree < 2 || !(max_mass > 0.05 && max_mass < 1.0) {
            return Err(Error::param(
                "schwarz",
                "need max_degree >= 2 and 0.05 < max_mass < 1",
            ));
        }
        let degree = rng.gen_range(2..=max_degree);
        let mass = rng.gen_range(0.05..=max_mass);
        let raw: Vec<f64> = (2..=degree).map(|_| rng.gen_range(0.0..1.0)).collect();
        let total: f64 = raw.iter().sum::<f64>().max(f64::MIN_POSITIVE);
        let mut coeffs = vec![ZERO];
        for share in raw {
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            coeffs.push(Complex64::from_polar(mass * share / total, phase));
        }
        Self::polynomial(coeffs)
    }
}

/// (1 + w)/(1 − w) as a truncated power series.
pub fn caratheodory_series(w: &SchwarzFunction, order: usize) -> Result<TaylorSeries> {
    let ws = w.taylor(order);
    ws.shift(ONE).div(&ws.scaled(-ONE).shift(ONE))
}

/// R(z) and τ(z) for one function, with the operator series built once.
#[derive(Debug, Clone)]
pub struct TauTransform {
    params: ClassParams,
    numerator: LaurentSeries,
    denominator: LaurentSeries,
}

impl TauTransform {
    pub fn new(f: &LaurentSeries, cp: &ClassParams, wp: &WrightParams) -> Result<Self> {
        let h = apply_operator(wp, f)?;
        Ok(Self {
            params: *cp,
            numerator: h.z_derivative(),
            denominator: h.lambda_mix(cp.lambda()),
        })
    }

    /// R(z) = z H' / ((1 − λ) H + λ z H').
    pub fn ratio(&self, z: Complex64) -> Result<Complex64> {
        let den = self.denominator.eval(z)?;
        let num = self.numerator.eval(z)?;
        let r = num / den;
        if den.norm() == 0.0 || !(r.re.is_finite() && r.im.is_finite()) {
            return Err(Error::Division { z });
        }
        Ok(r)
    }

    pub fn tau(&self, z: Complex64) -> Result<Complex64> {
        Ok(tau_from_ratio(&self.params, self.ratio(z)?))
    }
}

fn tau_from_ratio(cp: &ClassParams, r: Complex64) -> Complex64 {
    (cp.rotation() * r - cp.shift()) / (-cp.kappa())
}

/// τ(z) for `f` at one point of the punctured disk.
pub fn tau_transform(
    f: &LaurentSeries,
    cp: &ClassParams,
    wp: &WrightParams,
    z: Complex64,
) -> Result<Complex64> {
    TauTransform::new(f, cp, wp)?.tau(z)
}

/// R(z) = z H' / ((1 − λ) H + λ z H') with H = W_{α,β} f.
pub fn operator_ratio(
    f: &LaurentSeries,
    cp: &ClassParams,
    wp: &WrightParams,
    z: Complex64,
) -> Result<Complex64> {
    TauTransform::new(f, cp, wp)?.ratio(z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Member,
    NotMember,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Member => "Member",
            Verdict::NotMember => "NotMember",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauSample {
    pub z: Complex64,
    /// `None` where the denominator of R vanished.
    pub re_tau: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub min_re_tau: f64,
    pub argmin_z: Complex64,
    pub grid: GridSpec,
    pub verdict: Verdict,
    pub samples: Vec<TauSample>,
    /// Why the verdict is inconclusive, when it is for a reason other than the band.
    pub diagnostic: Option<String>,
}

/// Samples Re τ over `grid`.
///
/// Any sample below −[`MEMBERSHIP_TOL`] certifies non-membership. Otherwise the
/// function is a member on the grid if the minimum clears +[`MEMBERSHIP_TOL`]
/// and no sample hit a vanishing denominator.
pub fn membership_check(
    f: &LaurentSeries,
    cp: &ClassParams,
    wp: &WrightParams,
    grid: &GridSpec,
) -> Result<MembershipReport> {
    grid.validate()?;
    let transform = TauTransform::new(f, cp, wp)?;
    let mut samples = Vec::with_capacity(grid.len());
    let mut singular = Vec::new();
    let mut min_re_tau = f64::INFINITY;
    let mut argmin_z = ZERO;
    for z in grid.points() {
        match transform.ratio(z) {
            Ok(r) => {
                let re = tau_from_ratio(cp, r).re;
                if re < min_re_tau {
                    min_re_tau = re;
                    argmin_z = z;
                }
                samples.push(TauSample {
                    z,
                    re_tau: Some(re),
                });
            }
            Err(Error::Division { z }) => {
                singular.push(z);
                samples.push(TauSample { z, re_tau: None });
            }
            Err(e) => return Err(e),
        }
    }
    let (verdict, diagnostic) = if min_re_tau < -MEMBERSHIP_TOL {
        (Verdict::NotMember, None)
    } else if !singular.is_empty() {
        (
            Verdict::Inconclusive,
            Some(format!(
                "denominator vanished at {} grid point(s), first at z = {}",
                singular.len(),
                singular[0]
            )),
        )
    } else if min_re_tau > MEMBERSHIP_TOL {
        (Verdict::Member, None)
    } else {
        (Verdict::Inconclusive, None)
    };
    Ok(MembershipReport {
        min_re_tau,
        argmin_z,
        grid: *grid,
        verdict,
        samples,
        diagnostic,
    })
}

/// A(t) = e^{−iθ}[γ cos θ − i sin θ/(1 − 2λ) − cos θ (1/(1 − 2λ) + γ) (1 + w(t))/(1 − w(t))].
///
/// This is the value R takes when τ = (1 + w)/(1 − w); A(0) = −1/(1 − 2λ).
pub fn a_of_t(cp: &ClassParams, w: &SchwarzFunction, t: Complex64) -> Result<Complex64> {
    if t.norm() >= 1.0 {
        return Err(Error::Domain { z: t });
    }
    let wt = w.eval(t);
    // The bracket at w = 0 equals −e^{iθ}/(1 − 2λ); splitting it off keeps A(0) exact.
    let p_minus_one = 2.0 * wt / (ONE - wt);
    Ok(-1.0 / cp.one_minus_two_lambda() - cp.rotation().conj() * cp.kappa() * p_minus_one)
}

/// (1 − λ)A(t)/(1 − λA(t)) + 1, the bracket under the representation integral.
pub fn representation_integrand(
    cp: &ClassParams,
    w: &SchwarzFunction,
    t: Complex64,
) -> Result<Complex64> {
    let a = a_of_t(cp, w, t)?;
    let l = cp.lambda();
    let den = ONE - l * a;
    if den.norm() == 0.0 {
        return Err(Error::Division { z: t });
    }
    Ok((1.0 - l) * a / den + 1.0)
}

/// Series of G = z H'/H = (1 − λ)A/(1 − λA) up to `order`.
fn log_derivative_series(
    cp: &ClassParams,
    w: &SchwarzFunction,
    order: usize,
) -> Result<TaylorSeries> {
    let p = caratheodory_series(w, order)?;
    let a = p
        .scaled(Complex64::new(-cp.kappa(), 0.0))
        .shift(cp.shift())
        .scaled(cp.rotation().conj());
    let l = cp.lambda();
    a.scaled(Complex64::new(1.0 - l, 0.0))
        .div(&a.scaled(Complex64::new(-l, 0.0)).shift(ONE))
}

/// Coefficient of z¹ in z H'/H. H can only be free of a constant term (so
/// that f ∈ Σ) when this vanishes, which happens exactly when w'(0) = 0.
pub fn constant_term_obstruction(cp: &ClassParams, w: &SchwarzFunction) -> Result<Complex64> {
    Ok(log_derivative_series(cp, w, 1)?.coeff(1))
}

/// Rejects w for which 1 − λA(t) vanishes somewhere in the disk.
///
/// 1 − λA = 0 exactly where w(t) = w* for the constant w* computed below, so
/// the zeros are counted by the winding number of w − w* along |t| = 1.
fn check_denominator(cp: &ClassParams, w: &SchwarzFunction) -> Result<()> {
    let l = cp.lambda();
    if l == 0.0 {
        return Ok(());
    }
    let p_star = (cp.shift() - cp.rotation() / l) / cp.kappa();
    let w_star = (p_star - ONE) / (p_star + ONE);
    let reach = w_star.norm();
    if reach.is_nan() || reach >= w.mass() {
        return Ok(());
    }
    let degree = w.terms().map(|(p, _)| p).max().unwrap_or(1);
    let samples = 1024 * degree;
    let mut winding = 0.0;
    let mut previous = w.eval(ONE) - w_star;
    for k in 1..=samples {
        let t = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / samples as f64);
        let current = w.eval(t) - w_star;
        if current.norm() < 1e-9 {
            return Err(Error::Singular(format!(
                "1 - lambda*A(t) vanishes on |t| = 1 near t = {t}"
            )));
        }
        winding += (current / previous).arg();
        previous = current;
    }
    let zeros = (winding / std::f64::consts::TAU).round();
    if zeros != 0.0 {
        return Err(Error::Singular(format!(
            "1 - lambda*A(t) has {zeros} zero(s) in the unit disk (w(t) = {w_star})"
        )));
    }
    Ok(())
}

/// Builds f ∈ Σ whose transform is τ = (1 + w)/(1 − w), to `n_max` coefficients.
///
/// With H = 1/z + Σ h_n z^n and z H'/H = G = Σ g_n z^n (g_0 = −1), matching
/// z^n for n ≥ 1 gives
///
/// ```text
/// (n + 1) h_n = g_{n+1} + Σ_{k=1}^{n−1} g_{n−k} h_k
/// ```
///
/// and a_n = h_n / φ_n. The z^0 equation additionally asks for g_1 = 0; when
/// w has a linear term that equation is left unmatched (see
/// [`constant_term_obstruction`]) and the round trip through τ is only exact
/// for admissible w.
pub fn schwarz_generate(
    cp: &ClassParams,
    wp: &WrightParams,
    w: &SchwarzFunction,
    n_max: usize,
) -> Result<LaurentSeries> {
    check_denominator(cp, w)?;
    let g = log_derivative_series(cp, w, n_max + 1)?;
    let g0 = g.coeff(0);
    if (g0 + ONE).norm() > 1e-10 {
        return Err(Error::Singular(format!(
            "log-derivative constant term {g0} != -1"
        )));
    }
    let mut h: Vec<Complex64> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let conv: Complex64 = (1..n).map(|k| g.coeff(n - k) * h[k - 1]).sum();
        h.push((g.coeff(n + 1) + conv) / (n as f64 + 1.0));
    }
    let mut coeffs = Vec::with_capacity(n_max);
    for (i, hn) in h.into_iter().enumerate() {
        let a = hn / phi(wp, i + 1)?;
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::Overflow { index: i + 1 });
        }
        coeffs.push(a);
    }
    LaurentSeries::normalized(coeffs)
}

/// C(η) = −γ cos θ (1 − 2λ)(1 − η) + i sin θ (1 − η) + (1 + η) cos θ (1 + γ(1 − 2λ)).
pub fn kernel_weight(cp: &ClassParams, eta: Complex64) -> Complex64 {
    let one_minus = ONE - eta;
    let (sin, cos) = cp.theta().sin_cos();
    -cp.gamma() * cos * cp.one_minus_two_lambda() * one_minus
        + Complex64::new(0.0, sin) * one_minus
        + (ONE + eta) * cp.big_lambda()
}

/// Convolution kernel K with f ∗ K = e^{−iθ}(1 − 2λ)(1 − η) κ · ((1 − λ)H + λzH') · ((1 + η)/(1 − η) − τ).
///
/// K = (1 − 2λ)(1 − η)(−1/z + Σ nφ_n z^n) + e^{−iθ}C(η)((1 − 2λ)/z + Σ (1 − λ + λn)φ_n z^n).
pub fn convolution_kernel(
    cp: &ClassParams,
    wp: &WrightParams,
    eta: Complex64,
    n_max: usize,
) -> Result<LaurentSeries> {
    if (eta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::param(
            "eta",
            format!("|eta| must be 1, got {}", eta.norm()),
        ));
    }
    if (eta - ONE).norm() <= 1e-12 {
        return Err(Error::param("eta", "eta = 1 is excluded"));
    }
    let base = wright_kernel(wp, n_max)?;
    let first = base
        .z_derivative()
        .scaled(cp.one_minus_two_lambda() * (ONE - eta));
    let second = base
        .lambda_mix(cp.lambda())
        .scaled(cp.rotation().conj() * kernel_weight(cp, eta));
    Ok(first.add(&second))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub min_modulus: f64,
    pub argmin_z: Complex64,
    pub argmin_eta: Complex64,
    pub eta_count: usize,
    /// True when the minimum fell below [`VANISHING_TOL`], certifying f ∉ Σ(θ, λ, γ).
    pub vanishes: bool,
}

/// Minimum of |(f ∗ K_η)(z)| over η = e^{2πij/eta_count}, j = 1 … eta_count − 1, and the z-grid.
pub fn convolution_scan(
    f: &LaurentSeries,
    cp: &ClassParams,
    wp: &WrightParams,
    eta_count: usize,
    grid: &GridSpec,
) -> Result<ScanReport> {
    if eta_count < 8 {
        return Err(Error::param(
            "eta_count",
            format!("need at least 8 eta samples, got {eta_count}"),
        ));
    }
    grid.validate()?;
    let points = grid.points();
    let mut best = (f64::INFINITY, ZERO, ZERO);
    for j in 1..eta_count {
        let eta = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / eta_count as f64);
        let conv = f.hadamard(&convolution_kernel(cp, wp, eta, f.truncation())?);
        for &z in &points {
            let m = conv.eval(z)?.norm();
            if m < best.0 {
                best = (m, z, eta);
            }
        }
    }
    Ok(ScanReport {
        min_modulus: best.0,
        argmin_z: best.1,
        argmin_eta: best.2,
        eta_count,
        vanishes: best.0 < VANISHING_TOL,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficiencyReport {
    /// max over the grid of |R(z) + 1|.
    pub max_lhs: f64,
    pub argmax_z: Complex64,
    /// (1 + γ) cos θ.
    pub corollary_bound: f64,
    pub holds: bool,
}

/// Checks |R(z) + 1| ≤ (1 + γ) cos θ on the grid, a sufficient condition for membership.
pub fn sufficiency_predicate(
    f: &LaurentSeries,
    cp: &ClassParams,
    wp: &WrightParams,
    grid: &GridSpec,
) -> Result<SufficiencyReport> {
    grid.validate()?;
    let transform = TauTransform::new(f, cp, wp)?;
    let mut max_lhs = 0.0;
    let mut argmax_z = ZERO;
    for z in grid.points() {
        let v = (transform.ratio(z)? + ONE).norm();
        if v > max_lhs {
            max_lhs = v;
            argmax_z = z;
        }
    }
    let corollary_bound = (1.0 + cp.gamma()) * cp.theta().cos();
    Ok(SufficiencyReport {
        max_lhs,
        argmax_z,
        corollary_bound,
        holds: max_lhs <= corollary_bound,
    })
}

/// Side condition cos θ ≤ (ε − 1)/(1 + γ) of the ε-form of the sufficiency test.
///
/// The right side is negative for ε < 1 and cos θ > 0 for admissible θ, so
/// this never holds; it is exposed for reference only.
pub fn epsilon_side_condition(cp: &ClassParams, epsilon: f64) -> bool {
    cp.theta().cos() <= (epsilon - 1.0) / (1.0 + cp.gamma())
}
