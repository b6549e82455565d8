//! Compactly supported bump profiles and their Fourier transforms.
//!
//! The profile is a product of one-dimensional mollifiers
//! `phi(t) = exp(-1/(1 - t^2))` with per-axis half-width `a = R / sqrt(D)`, so the
//! support cube lies inside the closed ball of radius `R` around the center.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub const PROFILE_KIND: &str = "mollifier-product";

const PANELS: usize = 1024;

pub fn bump(t: f64) -> f64 {
    if t.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - t * t)).exp()
    }
}

/// Trapezoid nodes on the positive half of [-1, 1]; the integrand and all its
/// derivatives vanish at the endpoints, so the rule converges faster than any power.
fn half_nodes() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let h = 2.0 / PANELS as f64;
        (0..=PANELS / 2)
            .map(|j| {
                let t = j as f64 * h;
                let w = if j == 0 { h } else { 2.0 * h };
                (t, w * bump(t))
            })
            .collect()
    })
}

/// `int phi(t) e^{-i z t} dt` for real `z`.
pub fn bump_hat(z: f64) -> f64 {
    half_nodes().iter().map(|&(t, w)| w * (z * t).cos()).sum()
}

/// Analytic continuation of [`bump_hat`] to complex `z`.
pub fn bump_hat_complex(z: Complex64) -> Complex64 {
    half_nodes().iter().map(|&(t, w)| (z * t).cos() * w).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BumpProfile {
    #[serde(rename = "R")]
    pub radius: Rational,
    pub center: Vec<Rational>,
    pub kind: String,
}

impl BumpProfile {
    pub fn new(radius: Rational, dim: usize) -> Result<Self> {
        if radius.signum() <= 0 {
            return Err(Error::Config(format!("profile radius must be positive, got {}", radius)));
        }
        Ok(BumpProfile { radius, center: vec![Rational::zero(); dim], kind: PROFILE_KIND.to_string() })
    }

    pub fn with_center(mut self, center: Vec<Rational>) -> Result<Self> {
        if center.len() != self.center.len() {
            return Err(Error::Config("center has the wrong dimension".into()));
        }
        self.center = center;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn is_centered(&self) -> bool {
        self.center.iter().all(|c| c.is_zero())
    }

    pub fn half_width(&self) -> f64 {
        self.radius.to_f64() / (self.dim() as f64).sqrt()
    }

    /// Same radius and kind in another dimension, centered.
    pub fn reinstantiate(&self, dim: usize) -> Self {
        BumpProfile { radius: self.radius.clone(), center: vec![Rational::zero(); dim], kind: self.kind.clone() }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let a = self.half_width();
        x.iter().zip(&self.center).map(|(xi, c)| bump((xi - c.to_f64()) / a)).product()
    }

    /// Unitary Minkowski transform `(2 pi)^{-D/2} int e^{-i p.x} f(x) dx`, `p.x = -p0 x0 + p.x`.
    pub fn fourier(&self, p: &[f64]) -> Complex64 {
        let a = self.half_width();
        let norm = (2.0 * PI).powf(-(self.dim() as f64) / 2.0);
        let mut mag = norm;
        let mut phase = 0.0;
        for (mu, (pm, c)) in p.iter().zip(&self.center).enumerate() {
            mag *= a * bump_hat(a * pm);
            let s = if mu == 0 { -1.0 } else { 1.0 };
            phase += s * pm * c.to_f64();
        }
        Complex64::from_polar(1.0, -phase) * mag
    }

    pub fn fourier_complex(&self, p: &[Complex64]) -> Complex64 {
        let a = self.half_width();
        let norm = (2.0 * PI).powf(-(self.dim() as f64) / 2.0);
        let mut acc = Complex64::new(norm, 0.0);
        let mut phase = Complex64::new(0.0, 0.0);
        for (mu, (pm, c)) in p.iter().zip(&self.center).enumerate() {
            acc *= bump_hat_complex(pm * a) * a;
            let s = if mu == 0 { -1.0 } else { 1.0 };
            phase += pm * (s * c.to_f64());
        }
        acc * (-Complex64::i() * phase).exp()
    }
}
