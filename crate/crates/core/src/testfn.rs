//! Test functions with compact spacetime support whose Fourier transforms
//! satisfy the Virasoro constraints on every mass shell.
//!
//! A test function is `F^(p) = f^(p) * body(p)` where `f` is a bump profile and
//! `body` is a Fock vector with polynomial coefficients: a DDF state computed
//! symbolically in `p`, multiplied by the smallest power of `p^0 + p^{d-1}`
//! that clears its denominators. Multiplying a Fourier transform by a
//! polynomial is a differential operator in position space, so the support
//! does not grow.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::ddf::{shell_of_level, DdfOperators, Letter};
use crate::error::{Error, Result};
use crate::fiber::{virasoro_apply, Momentum};
use crate::fock::{FockVector, ModelParams, Monomial};
use crate::poly::{Poly, PolyTermJson};
use crate::profile::{bump_hat, BumpProfile};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    pub params: ModelParams,
    pub kappa: Rational,
    pub profile: BumpProfile,
    pub gamma: usize,
    pub body: FockVector<Poly>,
}

/// DDF state of `word` with symbolic momentum; coefficients may contain `lc^{-1}`.
pub fn symbolic_ddf_state(params: &ModelParams, word: &[Letter], kappa: &Rational) -> FockVector<Poly> {
    let d = params.d;
    let k0 = Poly::constant(kappa.clone()) * Poly::inv_lc();
    let ops = DdfOperators::with_k0(params, &Poly::momentum(d), k0);
    ops.ddf_state(word)
}

pub fn make_testfunction(params: &ModelParams, word: &[Letter], profile: BumpProfile, kappa: &Rational) -> Result<TestFunction> {
    if profile.dim() != params.d {
        return Err(Error::Config(format!("profile dimension {} != d = {}", profile.dim(), params.d)));
    }
    for l in word {
        if l.dir == 0 || l.dir >= params.d - 1 || l.mode == 0 {
            return Err(Error::Config(format!("word letter {:?} is not a transverse creator", l)));
        }
    }
    let state = symbolic_ddf_state(params, word, kappa);
    let gamma = state.iter().map(|(_, c)| c.max_inv_power()).max().unwrap_or(0);
    let body = state.map(|c| c.times_lc_power(gamma, params.d));
    Ok(TestFunction { params: params.clone(), kappa: kappa.clone(), profile, gamma, body })
}

impl TestFunction {
    /// A test function with an arbitrary polynomial body.
    pub fn from_body(params: &ModelParams, body: FockVector<Poly>, profile: BumpProfile) -> Result<Self> {
        if profile.dim() != params.d {
            return Err(Error::Config("profile dimension mismatch".into()));
        }
        Ok(TestFunction { params: params.clone(), kappa: Rational::one(), profile, gamma: 0, body })
    }

    pub fn sum(&self, other: &TestFunction) -> Result<TestFunction> {
        if self.profile != other.profile || self.params != other.params {
            return Err(Error::Config("summands must share profile and model".into()));
        }
        Ok(TestFunction {
            params: self.params.clone(),
            kappa: self.kappa.clone(),
            profile: self.profile.clone(),
            gamma: self.gamma.max(other.gamma),
            body: self.body.add(&other.body),
        })
    }

    pub fn scaled(&self, c: &Rational) -> TestFunction {
        let mut t = self.clone();
        t.body = self.body.scale(&Poly::constant(c.clone()));
        t
    }

    pub fn levels(&self) -> Vec<usize> {
        self.body.levels()
    }

    /// Body at an exact momentum.
    pub fn body_at(&self, p: &Momentum<Rational>) -> FockVector<Rational> {
        FockVector::from_terms(self.body.iter().map(|(m, c)| (m.clone(), c.eval(p))))
    }

    pub fn body_at_f64(&self, p: &[f64]) -> Vec<(Monomial, f64)> {
        self.body.iter().map(|(m, c)| (m.clone(), c.eval_f64(p))).filter(|(_, x)| *x != 0.0).collect()
    }

    pub fn to_json(&self) -> TestFunctionJson {
        let body = self
            .body
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| BodyTermJson { poly: c.to_json(), fock: m.to_pairs() })
            .collect();
        TestFunctionJson {
            d: self.params.d,
            b: self.params.b.clone(),
            kappa: self.kappa.clone(),
            profile: self.profile.clone(),
            gamma: self.gamma,
            body,
        }
    }

    pub fn from_json(j: &TestFunctionJson) -> Result<Self> {
        let params = ModelParams::new(j.d, j.b.clone())?;
        let mut body = FockVector::zero();
        for t in &j.body {
            body.add_term(Monomial::from_pairs(&t.fock, j.d)?, Poly::from_json(&t.poly));
        }
        Ok(TestFunction { params, kappa: j.kappa.clone(), profile: j.profile.clone(), gamma: j.gamma, body })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyTermJson {
    pub poly: Vec<PolyTermJson>,
    pub fock: Vec<[i64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunctionJson {
    pub d: usize,
    pub b: Rational,
    pub kappa: Rational,
    pub profile: BumpProfile,
    pub gamma: usize,
    pub body: Vec<BodyTermJson>,
}

/// Sign `(-1)^(number of spatial factors)` of the spatial reflection on a monomial.
fn reflection_sign(m: &Monomial) -> bool {
    m.factors().iter().filter(|o| o.dir != 0).count() % 2 == 1
}

/// `F + C F(-x)` in momentum space: `body(p0, p) + C1 body(p0, -p)`, where `C1`
/// reflects the spatial oscillators. Requires a centered profile.
pub fn realify(tf: &TestFunction) -> Result<TestFunction> {
    if !tf.profile.is_centered() {
        return Err(Error::Unsupported("realify needs a profile centered at the origin".into()));
    }
    let mut body = tf.body.clone();
    for (m, c) in tf.body.iter() {
        let f = c.flip_spatial();
        body.add_term(m.clone(), if reflection_sign(m) { -f } else { f });
    }
    Ok(TestFunction { body, ..tf.clone() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleCheck {
    pub momentum: Vec<Rational>,
    pub shell: Rational,
    pub level: usize,
    /// Term counts of `L_m body(p)` for `m = 0..=level`.
    pub residual_terms: Vec<usize>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointwiseReport {
    pub checks: Vec<SampleCheck>,
    /// Samples that lie on no shell carried by the body.
    pub rejected: usize,
    pub pass: bool,
}

/// Checks `L_m P_r body(p) = 0` for `0 <= m <= level` at exact on-shell samples.
pub fn verify_constraints_pointwise(tf: &TestFunction, samples: &[Momentum<Rational>]) -> PointwiseReport {
    let mut checks = Vec::new();
    let mut rejected = 0;
    for p in samples {
        let sq = p.square();
        let mut matched = false;
        for level in tf.levels() {
            let r = shell_of_level(level, &tf.params);
            if !(&sq + &r).is_zero() {
                continue;
            }
            matched = true;
            let v = tf.body_at(p).level_component(level);
            let residual_terms: Vec<usize> =
                (0..=level as i64).map(|m| virasoro_apply(m, p, &v, &tf.params).len()).collect();
            let pass = residual_terms.iter().all(|&t| t == 0);
            checks.push(SampleCheck { momentum: p.0.clone(), shell: r, level, residual_terms, pass });
        }
        if !matched {
            rejected += 1;
        }
    }
    let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
    PointwiseReport { checks, rejected, pass }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportReport {
    pub declared_radius: Rational,
    pub outside_fraction: f64,
    pub worst_axis: usize,
    pub worst_order: usize,
    pub grid: usize,
    pub tol: f64,
    pub pass: bool,
}

/// L2 fraction of `d^e/dx^e phi_a` lying outside `|x| <= declared`, reconstructed
/// from the transform on an FFT grid.
fn outside_fraction_1d(a: f64, declared: f64, order: usize, n: usize) -> Result<f64> {
    let half = 3.0 * a.max(declared);
    let dx = 2.0 * half / n as f64;
    if a / dx < 8.0 {
        return Err(Error::Resolution(format!(
            "bump half-width {:.3e} spans only {:.1} grid steps; need at least 8",
            a,
            a / dx
        )));
    }
    let mut buf: Vec<Complex64> = (0..n)
        .map(|k| {
            let kk = if k < n / 2 { k as f64 } else { k as f64 - n as f64 };
            let p = std::f64::consts::PI * kk / half;
            let g = a * bump_hat(a * p);
            let deriv = Complex64::new(0.0, p).powu(order as u32);
            deriv * g * Complex64::from_polar(1.0, -p * half) / (2.0 * half)
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let (mut inside, mut outside) = (0.0, 0.0);
    for (j, v) in buf.iter().enumerate() {
        let x = -half + j as f64 * dx;
        if x.abs() > declared {
            outside += v.norm_sqr();
        } else {
            inside += v.norm_sqr();
        }
    }
    Ok(outside / (inside + outside))
}

/// Checks numerically that the position-space test function vanishes outside
/// the ball of the declared radius, axis by axis for every derivative order
/// the body produces.
pub fn verify_support(tf: &TestFunction, declared_radius: &Rational, grid: usize, tol: f64) -> Result<SupportReport> {
    let dim = tf.profile.dim();
    let a = tf.profile.half_width();
    let declared = declared_radius.to_f64() / (dim as f64).sqrt();
    let mut worst = (0.0f64, 0usize, 0usize);
    for axis in 0..dim {
        let mut orders: BTreeSet<usize> = BTreeSet::from([0]);
        for (_, c) in tf.body.iter() {
            for (m, _) in c.terms() {
                orders.insert(m.exp_of(axis) as usize);
            }
        }
        for &e in &orders {
            let f = outside_fraction_1d(a, declared, e, grid)?;
            if f > worst.0 {
                worst = (f, axis, e);
            }
        }
    }
    Ok(SupportReport {
        declared_radius: declared_radius.clone(),
        outside_fraction: worst.0,
        worst_axis: worst.1,
        worst_order: worst.2,
        grid,
        tol,
        pass: worst.0 < tol,
    })
}
