//! Radii of meromorphic starlikeness and convexity of order ρ.
//!
//! A function H = 1/z + Σ b_n z^n is starlike of order ρ on |z| < r whenever
//!
//! ```text
//! Σ m_n(ρ) |b_n| r^{n+1} ≤ 1,   m_n = (n + 2 − ρ)/(1 − ρ)
//! ```
//!
//! and convex of order ρ whenever the same holds with n·m_n. With b_n = φ_n a_n
//! and |a_n| ≤ A_n the weights φ_n A_n give a radius valid for the whole class.
//! These are sufficient conditions, so the radii are lower bounds.

use num_complex::Complex64;

use crate::bounds::ClassParams;
use crate::error::{Error, Result};
use crate::grid::polar_points;
use crate::laurent::LaurentSeries;

/// Radius returned when the constraint never reaches 1 inside the disk.
pub const UNCONSTRAINED_RADIUS: f64 = 1.0 - 1e-9;

/// Smallest accepted bisection tolerance.
pub const MIN_TOL: f64 = 1e-12;

/// Relative slack when comparing a sampled modulus against 1 − ρ.
pub const PREDICATE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusKind {
    Starlike,
    Convex,
}

impl RadiusKind {
    /// m_n(ρ) for starlikeness, n·m_n(ρ) for convexity.
    pub fn multiplier(self, n: usize, rho: f64) -> f64 {
        let n = n as f64;
        let star = (n + 2.0 - rho) / (1.0 - rho);
        match self {
            RadiusKind::Starlike => star,
            RadiusKind::Convex => n * star,
        }
    }
}

impl std::fmt::Display for RadiusKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RadiusKind::Starlike => "star",
            RadiusKind::Convex => "convex",
        })
    }
}

/// Coefficient weights w_n entering the constraint sum.
#[derive(Debug, Clone, PartialEq)]
pub enum Weights {
    /// Explicit w_1, w_2, …; indices past the end count as zero.
    Fixed(Vec<f64>),
    /// φ_n A_n for the class with these parameters (independent of α, β).
    ClassBounds(ClassParams),
}

impl Weights {
    /// A single unit weight at index `n`.
    pub fn single(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n", "indices start at 1"));
        }
        let mut w = vec![0.0; n];
        w[n - 1] = 1.0;
        Ok(Weights::Fixed(w))
    }

    /// w_1 … w_{n_max}, zero padded.
    pub fn values(&self, n_max: usize) -> Vec<f64> {
        match self {
            Weights::Fixed(w) => (0..n_max)
                .map(|i| w.get(i).copied().unwrap_or(0.0))
                .collect(),
            Weights::ClassBounds(cp) => class_weights(cp, n_max),
        }
    }

    /// Largest index that can carry a nonzero weight, if finite.
    fn support(&self) -> Option<usize> {
        match self {
            Weights::Fixed(w) => Some(w.len()),
            Weights::ClassBounds(_) => None,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Weights::Fixed(w) = self {
            if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::param(
                    "weights",
                    "weights must be finite and nonnegative",
                ));
            }
            if !w.iter().any(|&v| v > 0.0) {
                return Err(Error::param("weights", "need at least one positive weight"));
            }
        }
        Ok(())
    }
}

/// φ_n A_n = Λ(1 − 2λ)/(1 − λ)^n · Π_{k=1}^{n−1} [(k + 1)(1 − λ) + 2(1 − λ + kλ)Λ]/(k + 2),
/// accumulated in log space; entries past the f64 range are +∞.
pub fn class_weights(cp: &ClassParams, n_max: usize) -> Vec<f64> {
    let l = cp.lambda();
    let big = cp.big_lambda();
    let ln_pre = (big * cp.one_minus_two_lambda()).ln();
    let ln_one_minus = (1.0 - l).ln();
    let mut ln_product = 0.0;
    (1..=n_max)
        .map(|n| {
            if n >= 2 {
                let k = (n - 1) as f64;
                ln_product +=
                    (((k + 1.0) * (1.0 - l) + 2.0 * (1.0 - l + k * l) * big) / (k + 2.0)).ln();
            }
            (ln_pre - n as f64 * ln_one_minus + ln_product).exp()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusQuery {
    pub rho: f64,
    pub kind: RadiusKind,
    pub weights: Weights,
    pub n_max: usize,
    pub tol: f64,
}

impl RadiusQuery {
    pub fn new(
        rho: f64,
        kind: RadiusKind,
        weights: Weights,
        n_max: usize,
        tol: f64,
    ) -> Result<Self> {
        let q = Self {
            rho,
            kind,
            weights,
            n_max,
            tol,
        };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.rho) {
            return Err(Error::param(
                "rho",
                format!("must satisfy 0 <= rho < 1, got {}", self.rho),
            ));
        }
        if self.n_max == 0 {
            return Err(Error::param("n_max", "need at least one term"));
        }
        if !(self.tol >= MIN_TOL && self.tol < 1.0) {
            return Err(Error::param(
                "tol",
                format!("must lie in [{MIN_TOL}, 1), got {}", self.tol),
            ));
        }
        self.weights.validate()
    }
}

/// Disagreement between the radius at n_max and at 2·n_max terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationWarning {
    pub at_n_max: f64,
    pub at_double: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusResult {
    pub radius: f64,
    pub bracket: (f64, f64),
    pub truncation_used: usize,
    /// Constraint sum at `radius`.
    pub residual: f64,
    /// The constraint stays ≤ 1 up to [`UNCONSTRAINED_RADIUS`].
    pub unconstrained: bool,
    pub truncation_warning: Option<TruncationWarning>,
}

fn sum_with(kind: RadiusKind, rho: f64, weights: &[f64], r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let mut power = r;
    let mut total = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        power *= r;
        if w > 0.0 {
            total += kind.multiplier(i + 1, rho) * w * power;
        }
    }
    if total.is_nan() {
        f64::INFINITY
    } else {
        total
    }
}

/// Σ_{n=1}^{n_max} m_n w_n r^{n+1}; overflowing sums come back as +∞.
pub fn constraint_sum(q: &RadiusQuery, r: f64) -> f64 {
    sum_with(q.kind, q.rho, &q.weights.values(q.n_max), r)
}

fn bisect(kind: RadiusKind, rho: f64, weights: &[f64], tol: f64, n_used: usize) -> RadiusResult {
    let sum = |r| sum_with(kind, rho, weights, r);
    if sum(UNCONSTRAINED_RADIUS) <= 1.0 {
        return RadiusResult {
            radius: UNCONSTRAINED_RADIUS,
            bracket: (UNCONSTRAINED_RADIUS, 1.0),
            truncation_used: n_used,
            residual: sum(UNCONSTRAINED_RADIUS),
            unconstrained: true,
            truncation_warning: None,
        };
    }
    let (mut lo, mut hi) = (0.0, UNCONSTRAINED_RADIUS);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if sum(mid) <= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RadiusResult {
        radius: lo,
        bracket: (lo, hi),
        truncation_used: n_used,
        residual: sum(lo),
        unconstrained: false,
        truncation_warning: None,
    }
}

/// Largest r (to within `tol`, from below) with constraint_sum ≤ 1.
///
/// Unless the weights have finite support inside n_max, the query is re-solved
/// with 2·n_max terms and a [`TruncationWarning`] is attached when the two
/// radii differ by more than 10·tol.
pub fn solve_radius(q: &RadiusQuery) -> Result<RadiusResult> {
    q.validate()?;
    let values = q.weights.values(q.n_max);
    if !values.iter().any(|&w| w > 0.0) {
        return Err(Error::param("weights", "no positive weight within n_max"));
    }
    let mut result = bisect(q.kind, q.rho, &values, q.tol, q.n_max);
    let complete = q.weights.support().is_some_and(|s| s <= q.n_max);
    if !complete {
        let double = bisect(
            q.kind,
            q.rho,
            &q.weights.values(2 * q.n_max),
            q.tol,
            2 * q.n_max,
        );
        if (double.radius - result.radius).abs() > 10.0 * q.tol {
            result.truncation_warning = Some(TruncationWarning {
                at_n_max: result.radius,
                at_double: double.radius,
            });
        }
    }
    Ok(result)
}

/// r = m_n(ρ)^{−1/(n+1)}, the radius for a single unit weight at index n.
pub fn extremal_radius(kind: RadiusKind, rho: f64, n: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::param(
            "rho",
            format!("must satisfy 0 <= rho < 1, got {rho}"),
        ));
    }
    if n == 0 {
        return Err(Error::param("n", "indices start at 1"));
    }
    Ok(kind.multiplier(n, rho).powf(-1.0 / (n as f64 + 1.0)))
}

/// (ρ, r) pairs of [`extremal_radius`] over `rho_samples`.
pub fn extremal_curve(kind: RadiusKind, rho_samples: &[f64], n: usize) -> Result<Vec<(f64, f64)>> {
    rho_samples
        .iter()
        .map(|&rho| Ok((rho, extremal_radius(kind, rho, n)?)))
        .collect()
}

/// Outcome of sampling a sufficient condition on the closed disk |z| ≤ r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredicateReport {
    /// The modulus bound held at every sample.
    pub holds: bool,
    pub max_modulus: f64,
    /// Point of largest modulus; the failing point when `holds` is false.
    pub witness: Complex64,
    /// The defining real-part condition held at every sample.
    pub defining_holds: bool,
    /// Smallest sampled value of the defining real part.
    pub min_defining: f64,
    pub defining_witness: Complex64,
}

fn disk_points(r: f64, radii: usize, angles: usize) -> Result<Vec<Complex64>> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::param(
            "r",
            format!("must satisfy 0 < r < 1, got {r}"),
        ));
    }
    if radii == 0 || angles == 0 {
        return Err(Error::param(
            "grid",
            "need at least one radius and one angle",
        ));
    }
    let rs: Vec<f64> = (1..=radii).map(|k| r * k as f64 / radii as f64).collect();
    Ok(polar_points(&rs, angles))
}

fn check_rho(rho: f64) -> Result<()> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::param(
            "rho",
            format!("must satisfy 0 <= rho < 1, got {rho}"),
        ));
    }
    Ok(())
}

/// Samples `shifted(z)` = q(z) + c and `defining(z)` on the disk.
fn sample_predicate(
    rho: f64,
    points: &[Complex64],
    mut ratio: impl FnMut(Complex64) -> Result<Complex64>,
    offset: f64,
) -> Result<PredicateReport> {
    let bound = (1.0 - rho) * (1.0 + PREDICATE_SLACK);
    let mut max_modulus = 0.0;
    let mut witness = points[0];
    let mut min_defining = f64::INFINITY;
    let mut defining_witness = points[0];
    for &z in points {
        let q = ratio(z)?;
        let m = (q + offset).norm();
        if m > max_modulus {
            max_modulus = m;
            witness = z;
        }
        let d = -q.re;
        if d < min_defining {
            min_defining = d;
            defining_witness = z;
        }
    }
    Ok(PredicateReport {
        holds: max_modulus <= bound,
        max_modulus,
        witness,
        defining_holds: min_defining > rho,
        min_defining,
        defining_witness,
    })
}

fn quotient(num: Complex64, den: Complex64, z: Complex64) -> Result<Complex64> {
    let q = num / den;
    if den.norm() == 0.0 || !(q.re.is_finite() && q.im.is_finite()) {
        return Err(Error::Division { z });
    }
    Ok(q)
}

/// Samples |zH'/H + 1| ≤ 1 − ρ and −Re(zH'/H) > ρ on a polar grid of the disk
/// |z| ≤ r with `radii` equally spaced circles.
pub fn starlike_predicate(
    h: &LaurentSeries,
    rho: f64,
    r: f64,
    radii: usize,
    angles: usize,
) -> Result<PredicateReport> {
    check_rho(rho)?;
    let points = disk_points(r, radii, angles)?;
    let dh = h.z_derivative();
    sample_predicate(rho, &points, |z| quotient(dh.eval(z)?, h.eval(z)?, z), 1.0)
}

/// Samples |zH''/H' + 2| ≤ 1 − ρ and −Re(1 + zH''/H') > ρ on the same grid.
pub fn convex_predicate(
    h: &LaurentSeries,
    rho: f64,
    r: f64,
    radii: usize,
    angles: usize,
) -> Result<PredicateReport> {
    check_rho(rho)?;
    let points = disk_points(r, radii, angles)?;
    let dh = h.z_derivative();
    let num = h.convexity_numerator();
    // zH''/H' + 2 = z(zH'' + 2H') / (zH'); report 1 + zH''/H' = that − 1.
    sample_predicate(
        rho,
        &points,
        |z| Ok(quotient(num.eval(z)?, dh.eval(z)?, z)? - 1.0),
        1.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(kind: RadiusKind, rho: f64, n: usize) -> RadiusQuery {
        RadiusQuery::new(rho, kind, Weights::single(n).unwrap(), 50, 1e-9).unwrap()
    }

    #[test]
    fn constraint_sum_examples() {
        let q = query(RadiusKind::Starlike, 0.0, 1);
        assert!((constraint_sum(&q, 0.4) - 3.0 * 0.16).abs() < 1e-15);
        assert_eq!(constraint_sum(&q, 0.0), 0.0);
        let q = query(RadiusKind::Convex, 0.0, 2);
        assert!((constraint_sum(&q, 0.3) - 8.0 * 0.027).abs() < 1e-15);
    }

    #[test]
    fn single_weight_radii() {
        let r = solve_radius(&query(RadiusKind::Starlike, 0.0, 1)).unwrap();
        assert!((r.radius - 1.0 / 3f64.sqrt()).abs() < 1e-9);
        assert!(r.radius <= 1.0 / 3f64.sqrt());
        assert!(r.bracket.1 - r.bracket.0 <= 1e-9);
        assert!((r.residual - 1.0).abs() < 1e-8);
        assert!(r.truncation_warning.is_none() && !r.unconstrained);

        let r = solve_radius(&query(RadiusKind::Convex, 0.0, 2)).unwrap();
        assert!((r.radius - 0.5).abs() < 1e-9);

        let r = solve_radius(&query(RadiusKind::Starlike, 0.5, 1)).unwrap();
        assert!((r.radius - (0.5f64 / 2.5).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn unconstrained_when_weights_are_small() {
        let q = RadiusQuery::new(
            0.0,
            RadiusKind::Starlike,
            Weights::Fixed(vec![0.1]),
            10,
            1e-9,
        )
        .unwrap();
        let r = solve_radius(&q).unwrap();
        assert!(r.unconstrained);
        assert_eq!(r.radius, UNCONSTRAINED_RADIUS);
    }

    #[test]
    fn query_validation() {
        let w = Weights::single(1).unwrap();
        assert!(RadiusQuery::new(1.0, RadiusKind::Starlike, w.clone(), 10, 1e-9).is_err());
        assert!(RadiusQuery::new(0.0, RadiusKind::Starlike, w.clone(), 10, 1e-13).is_err());
        assert!(RadiusQuery::new(0.0, RadiusKind::Starlike, w, 0, 1e-9).is_err());
        assert!(RadiusQuery::new(
            0.0,
            RadiusKind::Starlike,
            Weights::Fixed(vec![0.0]),
            10,
            1e-9
        )
        .is_err());
        assert!(RadiusQuery::new(
            0.0,
            RadiusKind::Starlike,
            Weights::Fixed(vec![-1.0]),
            10,
            1e-9
        )
        .is_err());
    }

    #[test]
    fn class_weights_match_bound_sequence() {
        use crate::bounds::bound_sequence_closed;
        use crate::special::{phi, WrightParams};
        let cp = ClassParams::new(0.4, 0.3, 2.5).unwrap();
        let wp = WrightParams::new(0.5, 1.5).unwrap();
        let bounds = bound_sequence_closed(&cp, &wp, 20).unwrap();
        for (n, w) in class_weights(&cp, 20).iter().enumerate() {
            let expected = bounds.values[n] * phi(&wp, n + 1).unwrap();
            assert!(((w - expected) / expected).abs() < 1e-12);
        }
    }

    #[test]
    fn class_radius_is_stable_under_doubling() {
        let cp = ClassParams::new(0.0, 0.0, 2.0).unwrap();
        let q = RadiusQuery::new(
            0.0,
            RadiusKind::Starlike,
            Weights::ClassBounds(cp),
            50,
            1e-9,
        )
        .unwrap();
        let r = solve_radius(&q).unwrap();
        assert!(r.truncation_warning.is_none());
        assert!(r.radius > 0.0 && r.radius < 0.6);
    }

    #[test]
    fn truncation_warning_raised_for_slow_tails() {
        // Weights 0.3/n² leave a heavy tail past n_max = 5.
        let w: Vec<f64> = (1..=200).map(|n| 0.3 / (n * n) as f64).collect();
        let q = RadiusQuery::new(0.0, RadiusKind::Starlike, Weights::Fixed(w), 5, 1e-9).unwrap();
        let r = solve_radius(&q).unwrap();
        let warning = r.truncation_warning.expect("warning");
        assert!(warning.at_double < warning.at_n_max);
    }

    #[test]
    fn extremal_curve_values() {
        let c = extremal_curve(RadiusKind::Starlike, &[0.0, 0.5, 0.999999], 1).unwrap();
        assert!((c[0].1 - 0.5773502691896258).abs() < 1e-15);
        assert!((c[1].1 - (0.5f64 / 2.5).sqrt()).abs() < 1e-15);
        assert!(c[2].1 < 1e-2);
        assert!((extremal_radius(RadiusKind::Convex, 0.0, 2).unwrap() - 0.5).abs() < 1e-15);
        assert!(extremal_radius(RadiusKind::Convex, 1.0, 2).is_err());
    }

    #[test]
    fn predicates_on_pole() {
        let h = LaurentSeries::pole();
        for rho in [0.0, 0.5, 0.99] {
            let s = starlike_predicate(&h, rho, 0.9, 8, 32).unwrap();
            assert!(s.holds && s.max_modulus < 1e-15 && s.defining_holds);
            let c = convex_predicate(&h, rho, 0.9, 8, 32).unwrap();
            assert!(c.holds && c.max_modulus < 1e-15 && c.defining_holds);
        }
    }

    #[test]
    fn starlike_predicate_on_quadratic_perturbation() {
        // zH'/H + 1 = 2z²/(1 + z²); on |z| = r the modulus peaks at z² = −r².
        let h = LaurentSeries::from_real(1.0, &[1.0]).unwrap();
        let r = 1.0 / 3f64.sqrt();
        let s = starlike_predicate(&h, 0.0, r, 16, 64).unwrap();
        assert!(s.holds);
        assert!((s.max_modulus - 1.0).abs() < 1e-12);

        let s = starlike_predicate(&h, 0.0, 0.9, 16, 64).unwrap();
        assert!(!s.holds);
        assert!((s.max_modulus - 1.62 / 0.19).abs() < 1e-9);
        assert!(s.witness.re.abs() < 1e-12 && (s.witness.im.abs() - 0.9).abs() < 1e-12);
    }

    #[test]
    fn convex_predicate_cases() {
        let h = LaurentSeries::from_real(1.0, &[0.0, 1.0]).unwrap();
        let c = convex_predicate(&h, 0.0, 0.5, 16, 64).unwrap();
        assert!(c.holds);
        let c = convex_predicate(&h, 0.999, 0.5, 16, 64).unwrap();
        assert!(!c.holds);
    }
}
