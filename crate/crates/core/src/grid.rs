//! Polar sample grids on the punctured unit disk.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_RADII: usize = 16;
pub const DEFAULT_ANGLES: usize = 64;
pub const DEFAULT_MIN_RADIUS: f64 = 0.05;
pub const DEFAULT_MAX_RADIUS: f64 = 0.95;
pub const MIN_RADII: usize = 8;
pub const MIN_ANGLES: usize = 32;

/// Log-spaced radii in [min_radius, max_radius] times uniformly spaced angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub radii: usize,
    pub angles: usize,
    pub min_radius: f64,
    pub max_radius: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            radii: DEFAULT_RADII,
            angles: DEFAULT_ANGLES,
            min_radius: DEFAULT_MIN_RADIUS,
            max_radius: DEFAULT_MAX_RADIUS,
        }
    }
}

impl GridSpec {
    pub fn new(radii: usize, angles: usize, max_radius: f64) -> Result<Self> {
        let spec = Self {
            radii,
            angles,
            max_radius,
            ..Self::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.radii < MIN_RADII {
            return Err(Error::param(
                "radii",
                format!("need at least {MIN_RADII} radii, got {}", self.radii),
            ));
        }
        if self.angles < MIN_ANGLES {
            return Err(Error::param(
                "angles",
                format!("need at least {MIN_ANGLES} angles, got {}", self.angles),
            ));
        }
        if !(self.min_radius > 0.0 && self.min_radius < self.max_radius && self.max_radius < 1.0) {
            return Err(Error::param(
                "max_radius",
                format!(
                    "need 0 < {} < max_radius < 1, got max_radius = {}",
                    self.min_radius, self.max_radius
                ),
            ));
        }
        Ok(())
    }

    pub fn radius_values(&self) -> Vec<f64> {
        let ratio = self.max_radius / self.min_radius;
        let steps = (self.radii - 1) as f64;
        (0..self.radii)
            .map(|i| {
                if i + 1 == self.radii {
                    self.max_radius
                } else {
                    self.min_radius * ratio.powf(i as f64 / steps)
                }
            })
            .collect()
    }

    pub fn points(&self) -> Vec<Complex64> {
        polar_points(&self.radius_values(), self.angles)
    }

    pub fn len(&self) -> usize {
        self.radii * self.angles
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `radii×angles@[min,max]`, the form echoed into output headers.
    pub fn describe(&self) -> String {
        format!(
            "{}x{}@[{},{}]",
            self.radii, self.angles, self.min_radius, self.max_radius
        )
    }
}

/// Radius-major list of `r·e^{2πik/angles}`.
pub fn polar_points(radii: &[f64], angles: usize) -> Vec<Complex64> {
    radii
        .iter()
        .flat_map(|&r| {
            (0..angles).map(move |k| Complex64::from_polar(r, TAU * k as f64 / angles as f64))
        })
        .collect()
}
