//! Second-quantized field smeared with test functions, evaluated numerically
//! in a reduced spacetime.
//!
//! One-particle vectors live on the positive-energy mass shells
//! `p^0 = omega_r(p) = sqrt(|p|^2 + r)`, `r >= 0`, with invariant measure
//! `d^q p / (2 omega)`. The quadrature covers `q = dq` spatial directions mapped
//! to the full momentum as `(omega, p_1, 0, .., 0, p_2)` (`dq = 2`) or
//! `(omega, 0, .., 0, p)` (`dq = 1`). Those momenta are on shell in the full
//! spacetime, so the Fock-space bodies are evaluated exactly as built. The
//! bump profile is re-instantiated in the `1 + dq` reduced dimensions with the
//! same radius.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ddf::shell_of_level;
use crate::error::{Error, Result};
use crate::fock::{Monomial, ModelParams};
use crate::poly::Poly;
use crate::profile::{bump_hat_complex, BumpProfile};
use crate::rational::Rational;
use crate::spectrum::onshell_integer_momenta;
use crate::testfn::{verify_constraints_pointwise, PointwiseReport, TestFunction};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub dq: usize,
    pub radial: usize,
    pub angular: usize,
    /// Momentum cutoff in units of the inverse bump half-width.
    pub cutoff: f64,
}

impl QuadratureSpec {
    pub fn polar(n: usize) -> Self {
        QuadratureSpec { dq: 2, radial: n, angular: n, cutoff: 60.0 }
    }

    pub fn line(n: usize) -> Self {
        QuadratureSpec { dq: 1, radial: n, angular: 1, cutoff: 60.0 }
    }

    fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.dq) {
            return Err(Error::Config(format!("reduced spatial dimension must be 1 or 2, got {}", self.dq)));
        }
        if self.radial < 4 || (self.dq == 2 && self.angular < 4) {
            return Err(Error::Config("quadrature grid too small".into()));
        }
        Ok(())
    }
}

fn gl(n: usize) -> GaussLegendre {
    GaussLegendre::new(NonZeroUsize::new(n).expect("positive node count"))
}

/// Node on a shell: reduced momentum `[omega, p..]` and weight including `1/(2 omega)`.
#[derive(Debug, Clone)]
struct ShellNode {
    reduced: Vec<f64>,
    weight: f64,
}

fn shell_nodes(spec: &QuadratureSpec, r: f64, half_width: f64) -> Vec<ShellNode> {
    let pmax = spec.cutoff / half_width;
    let rule = gl(spec.radial);
    let mut out = Vec::new();
    match spec.dq {
        1 => {
            for (lo, hi) in [(-pmax, 0.0), (0.0, pmax)] {
                for (x, w) in rule.iter() {
                    let p = 0.5 * ((hi - lo) * x + hi + lo);
                    let om = (p * p + r).sqrt();
                    out.push(ShellNode { reduced: vec![om, p], weight: 0.5 * (hi - lo) * w / (2.0 * om) });
                }
            }
        }
        _ => {
            let dth = 2.0 * PI / spec.angular as f64;
            for (x, w) in rule.iter() {
                let rho = 0.5 * pmax * (x + 1.0);
                let om = (rho * rho + r).sqrt();
                let wr = 0.5 * pmax * w * rho / (2.0 * om);
                for j in 0..spec.angular {
                    let th = j as f64 * dth;
                    out.push(ShellNode { reduced: vec![om, rho * th.cos(), rho * th.sin()], weight: wr * dth });
                }
            }
        }
    }
    out
}

fn full_momentum(reduced: &[f64], d: usize) -> Vec<f64> {
    let mut p = vec![0.0; d];
    p[0] = reduced[0];
    match reduced.len() {
        2 => p[d - 1] = reduced[1],
        _ => {
            p[1] = reduced[1];
            p[d - 1] = reduced[2];
        }
    }
    p
}

fn minkowski_dot(p: &[f64], a: &[f64]) -> f64 {
    -p[0] * a[0] + p[1..].iter().zip(&a[1..]).map(|(x, y)| x * y).sum::<f64>()
}

/// `Pi F`: a test function restricted to the positive-energy shells `r >= 0` of
/// levels `<= n_max`, translated by `shift` and scaled.
#[derive(Debug, Clone)]
pub struct SmearedState {
    pub tf: TestFunction,
    pub reduced: BumpProfile,
    pub dq: usize,
    pub shift: Vec<f64>,
    pub scale: Complex64,
    pub n_max: usize,
}

pub fn project_pi(tf: &TestFunction, n_max: usize, dq: usize) -> Result<SmearedState> {
    if !tf.profile.is_centered() {
        return Err(Error::Unsupported("field layer expects a centered profile; use a shift instead".into()));
    }
    if tf.params.d < 3 && dq == 2 {
        return Err(Error::Config("dq = 2 needs d >= 3".into()));
    }
    Ok(SmearedState {
        tf: tf.clone(),
        reduced: tf.profile.reinstantiate(1 + dq),
        dq,
        shift: vec![0.0; 1 + dq],
        scale: Complex64::new(1.0, 0.0),
        n_max,
    })
}

impl SmearedState {
    pub fn translated(&self, a: &[f64]) -> Result<Self> {
        if a.len() != 1 + self.dq {
            return Err(Error::Config(format!("translation must have {} components", 1 + self.dq)));
        }
        let mut s = self.clone();
        for (x, y) in s.shift.iter_mut().zip(a) {
            *x += y;
        }
        Ok(s)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut s = self.clone();
        s.scale *= c;
        s
    }

    /// Levels kept by the projection, with their shells.
    pub fn shells(&self) -> Vec<(usize, Rational)> {
        self.tf
            .levels()
            .into_iter()
            .filter(|&l| l <= self.n_max)
            .map(|l| (l, shell_of_level(l, &self.tf.params)))
            .filter(|(_, r)| r.signum() >= 0)
            .collect()
    }

    fn amplitude(&self, reduced: &[f64]) -> Complex64 {
        let phase = minkowski_dot(reduced, &self.shift);
        self.scale * self.reduced.fourier(reduced) * Complex64::from_polar(1.0, -phase)
    }

    pub fn radius(&self) -> f64 {
        self.reduced.radius.to_f64()
    }

    pub fn half_width(&self) -> f64 {
        self.reduced.half_width()
    }
}

struct PairTerm<'a> {
    f: Option<&'a Poly>,
    g: Option<&'a Poly>,
    norm: f64,
}

fn pair_terms<'a>(f: &'a SmearedState, g: &'a SmearedState, level: usize, positive: bool) -> Vec<PairTerm<'a>> {
    let mut map: BTreeMap<&Monomial, (Option<&Poly>, Option<&Poly>)> = BTreeMap::new();
    for (m, c) in f.tf.body.iter().filter(|(m, _)| m.level() == level) {
        map.entry(m).or_default().0 = Some(c);
    }
    for (m, c) in g.tf.body.iter().filter(|(m, _)| m.level() == level) {
        map.entry(m).or_default().1 = Some(c);
    }
    map.into_iter()
        .filter(|(_, (a, b))| a.is_some() && b.is_some())
        .map(|(m, (a, b))| {
            let n = m.self_inner().to_f64();
            PairTerm { f: a, g: b, norm: if positive { n.abs() } else { n } }
        })
        .collect()
}

fn check_pair(f: &SmearedState, g: &SmearedState) -> Result<()> {
    if f.dq != g.dq || f.tf.params != g.tf.params {
        return Err(Error::Config("states live in different reduced spacetimes or models".into()));
    }
    Ok(())
}

/// `<Pi F, Pi G>` (indefinite) or `(Pi F, Pi G)_+` (positive).
pub fn one_particle_product(f: &SmearedState, g: &SmearedState, spec: &QuadratureSpec, positive: bool) -> Result<Complex64> {
    spec.validate()?;
    check_pair(f, g)?;
    if spec.dq != f.dq {
        return Err(Error::Config("quadrature and states disagree on dq".into()));
    }
    let d = f.tf.params.d;
    let a = f.half_width().min(g.half_width());
    let mut total = Complex64::new(0.0, 0.0);
    let g_levels: Vec<usize> = g.shells().iter().map(|s| s.0).collect();
    for (level, r) in f.shells() {
        if !g_levels.contains(&level) {
            continue;
        }
        let terms = pair_terms(f, g, level, positive);
        if terms.is_empty() {
            continue;
        }
        for node in shell_nodes(spec, r.to_f64(), a) {
            let p = full_momentum(&node.reduced, d);
            let dot: f64 = terms
                .iter()
                .map(|t| t.norm * t.f.map_or(0.0, |x| x.eval_f64(&p)) * t.g.map_or(0.0, |x| x.eval_f64(&p)))
                .sum();
            if dot == 0.0 {
                continue;
            }
            total += f.amplitude(&node.reduced).conj() * g.amplitude(&node.reduced) * (node.weight * dot);
        }
    }
    Ok(total * (2.0 * PI))
}

/// Rescales so that the positive product is one.
pub fn normalized(f: &SmearedState, spec: &QuadratureSpec) -> Result<SmearedState> {
    let n = one_particle_product(f, f, spec, true)?.re;
    if n <= 0.0 || !n.is_finite() {
        return Err(Error::Config("state has zero norm on the kept shells".into()));
    }
    Ok(f.scaled(Complex64::new(1.0 / n.sqrt(), 0.0)))
}

/// `[Phi(F), Phi(G)] = i Im <Pi F, Pi G>`.
pub fn commutator_kernel(f: &SmearedState, g: &SmearedState, spec: &QuadratureSpec) -> Result<Complex64> {
    let ip = one_particle_product(f, g, spec, false)?;
    Ok(Complex64::new(0.0, ip.im))
}

/// Supports of `F` and `G` translated by `a` are spacelike separated.
pub fn spacelike_separated(rf: f64, rg: f64, a: &[f64]) -> bool {
    let spatial: f64 = a[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
    spatial > rf + rg + a[0].abs()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalityReport {
    pub separation: Vec<f64>,
    pub spacelike: bool,
    pub kernel_re: f64,
    pub kernel_im: f64,
    pub tol: f64,
    pub grid: [usize; 2],
    pub levels: Vec<usize>,
    pub pass: bool,
}

/// Kernel between `F` and `G` translated by `a`, without any causal precondition.
pub fn translated_kernel(f: &SmearedState, g: &SmearedState, a: &[f64], spec: &QuadratureSpec) -> Result<Complex64> {
    commutator_kernel(f, &g.translated(a)?, spec)
}

/// Kernel between `F` and `G` translated by a spacelike `a`; passes below `tol`.
pub fn locality_check(f: &SmearedState, g: &SmearedState, a: &[f64], spec: &QuadratureSpec, tol: f64) -> Result<LocalityReport> {
    if a.len() != 1 + f.dq {
        return Err(Error::Config(format!("translation must have {} components", 1 + f.dq)));
    }
    if !spacelike_separated(f.radius(), g.radius(), a) {
        return Err(Error::Config(format!(
            "separation {:?} is not spacelike for radii {} and {}",
            a,
            f.radius(),
            g.radius()
        )));
    }
    let k = translated_kernel(f, g, a, spec)?;
    let mut levels: Vec<usize> = f.shells().into_iter().map(|s| s.0).collect();
    levels.sort_unstable();
    Ok(LocalityReport {
        separation: a.to_vec(),
        spacelike: true,
        kernel_re: k.re,
        kernel_im: k.im,
        tol,
        grid: [spec.radial, spec.angular],
        levels,
        pass: k.norm() < tol,
    })
}

/// `-<F, E G>` from the retarded-minus-advanced propagator, computed by
/// integrating the energy along `R + i eps` and `R - i eps`. Only `dq = 1`.
pub fn propagator_pairing(f: &SmearedState, g: &SmearedState, spatial_nodes: usize, energy_nodes: usize) -> Result<Complex64> {
    check_pair(f, g)?;
    if f.dq != 1 {
        return Err(Error::Unsupported("contour pairing is implemented for dq = 1".into()));
    }
    if f.shift.iter().any(|x| *x != 0.0) || f.scale.im != 0.0 {
        return Err(Error::Unsupported("contour pairing needs an untranslated real-scaled first argument".into()));
    }
    let d = f.tf.params.d;
    let a = f.half_width().min(g.half_width());
    let pmax = 60.0 / a;
    let eps = 1.0 / a;
    let pr: Vec<(f64, f64)> = gl(spatial_nodes).iter().map(|(x, w)| (pmax * x, pmax * w)).collect();
    let er: Vec<(f64, f64)> = gl(energy_nodes).iter().map(|(y, v)| (pmax * y, pmax * v)).collect();
    let terms: Vec<(f64, Vec<PairTerm>)> = f
        .shells()
        .iter()
        .map(|(l, r)| (r.to_f64(), pair_terms(f, g, *l, false)))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    // separable transforms of the centered reduced profiles, one axis at a time
    let axis = |s: &SmearedState, z: Complex64| bump_hat_complex(z * s.half_width()) * s.half_width();
    let fp: Vec<Complex64> = pr.iter().map(|(p, _)| axis(f, Complex64::new(*p, 0.0))).collect();
    let gp: Vec<Complex64> = pr.iter().map(|(p, _)| axis(g, Complex64::new(*p, 0.0))).collect();
    let norm = f.scale * g.scale / (4.0 * PI * PI);
    let mut total = Complex64::new(0.0, 0.0);
    let mut full = vec![Complex64::new(0.0, 0.0); d];
    for sign in [1.0, -1.0] {
        for (y, wz) in &er {
            let z = Complex64::new(*y, sign * eps);
            let fz = axis(f, z);
            let gz = axis(g, z) * (Complex64::i() * z * g.shift[0]).exp();
            full[0] = z;
            for (k, (p, wp)) in pr.iter().enumerate() {
                full[d - 1] = Complex64::new(*p, 0.0);
                let mut acc = Complex64::new(0.0, 0.0);
                for (r, ts) in &terms {
                    let dot: Complex64 = ts
                        .iter()
                        .map(|t| {
                            t.f.map_or(Complex64::new(0.0, 0.0), |q| q.eval_complex(&full))
                                * t.g.map_or(Complex64::new(0.0, 0.0), |q| q.eval_complex(&full))
                                * t.norm
                        })
                        .sum();
                    acc += dot / (-z * z + p * p + r);
                }
                let gg = gz * gp[k] * Complex64::from_polar(1.0, -p * g.shift[1]);
                total += fz * fp[k] * gg * acc * (sign * wz * wp);
            }
        }
    }
    total *= norm;
    Ok(-0.5 * total)
}

/// Symmetric-product Fock vector over a pool of one-particle states.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MultiParticleVector {
    pub terms: BTreeMap<Vec<usize>, Complex64>,
}

impl MultiParticleVector {
    pub fn vacuum() -> Self {
        let mut v = Self::default();
        v.terms.insert(Vec::new(), Complex64::new(1.0, 0.0));
        v
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: Complex64) {
        *self.terms.entry(idx).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub fn add_scaled(&mut self, o: &Self, c: Complex64) {
        for (k, v) in &o.terms {
            self.add_term(k.clone(), v * c);
        }
    }
}

/// One-particle states with their indefinite and positive Gram matrices.
#[derive(Debug, Clone)]
pub struct OneParticlePool {
    pub states: Vec<SmearedState>,
    pub gram: Vec<Vec<Complex64>>,
    pub gram_pos: Vec<Vec<Complex64>>,
}

impl OneParticlePool {
    pub fn new(states: Vec<SmearedState>, spec: &QuadratureSpec) -> Result<Self> {
        let n = states.len();
        let mut gram = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        let mut gram_pos = gram.clone();
        for i in 0..n {
            for j in i..n {
                let x = one_particle_product(&states[i], &states[j], spec, false)?;
                let y = one_particle_product(&states[i], &states[j], spec, true)?;
                gram[i][j] = x;
                gram[j][i] = x.conj();
                gram_pos[i][j] = y;
                gram_pos[j][i] = y.conj();
            }
        }
        Ok(OneParticlePool { states, gram, gram_pos })
    }

    pub fn creation(&self, k: usize, v: &MultiParticleVector) -> MultiParticleVector {
        let mut out = MultiParticleVector::default();
        for (idx, c) in &v.terms {
            let mut j = idx.clone();
            let pos = j.partition_point(|x| *x <= k);
            j.insert(pos, k);
            out.add_term(j, *c);
        }
        out
    }

    /// `a(phi_k)`, antilinear in `phi_k`.
    pub fn annihilation(&self, k: usize, v: &MultiParticleVector) -> MultiParticleVector {
        let mut out = MultiParticleVector::default();
        for (idx, c) in &v.terms {
            for t in 0..idx.len() {
                let mut rest = idx.clone();
                let i = rest.remove(t);
                out.add_term(rest, c * self.gram[k][i]);
            }
        }
        out
    }

    /// `Phi(F_k) = (a(F_k) + a^dagger(F_k)) / sqrt 2`.
    pub fn field(&self, k: usize, v: &MultiParticleVector) -> MultiParticleVector {
        let mut out = self.creation(k, v);
        out.add_scaled(&self.annihilation(k, v), Complex64::new(1.0, 0.0));
        let mut s = MultiParticleVector::default();
        s.add_scaled(&out, Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        s
    }

    fn permanent(m: &[Vec<Complex64>], a: &[usize], b: &[usize]) -> Complex64 {
        if a.is_empty() {
            return Complex64::new(1.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (t, &j) in b.iter().enumerate() {
            let mut rest = b.to_vec();
            rest.remove(t);
            acc += m[a[0]][j] * Self::permanent(m, &a[1..], &rest);
        }
        acc
    }

    fn product(&self, m: &[Vec<Complex64>], u: &MultiParticleVector, v: &MultiParticleVector) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, x) in &u.terms {
            for (b, y) in &v.terms {
                if a.len() == b.len() {
                    acc += x.conj() * y * Self::permanent(m, a, b);
                }
            }
        }
        acc
    }

    pub fn inner(&self, u: &MultiParticleVector, v: &MultiParticleVector) -> Complex64 {
        self.product(&self.gram, u, v)
    }

    pub fn inner_positive(&self, u: &MultiParticleVector, v: &MultiParticleVector) -> Complex64 {
        self.product(&self.gram_pos, u, v)
    }

    /// `<psi', Phi(F_k) psi>`.
    pub fn field_matrix_element(&self, k: usize, psi: &MultiParticleVector, psi2: &MultiParticleVector) -> Complex64 {
        self.inner(psi2, &self.field(k, psi))
    }

    /// Relative positive-norm residual of `[Phi(F_i), Phi(F_j)] psi - kernel psi`.
    pub fn commutator_residual(&self, i: usize, j: usize, psi: &MultiParticleVector) -> (Complex64, f64) {
        let kernel = Complex64::new(0.0, self.gram[i][j].im);
        let mut r = self.field(i, &self.field(j, psi));
        r.add_scaled(&self.field(j, &self.field(i, psi)), Complex64::new(-1.0, 0.0));
        r.add_scaled(psi, -kernel);
        let num = self.inner_positive(&r, &r).re.max(0.0).sqrt();
        let den = kernel.norm() * self.inner_positive(psi, psi).re.max(0.0).sqrt();
        (kernel, if den > 0.0 { num / den } else { num })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldEquationReport {
    pub levels: Vec<usize>,
    pub nonzero_terms: usize,
    pub pass: bool,
}

/// `Pi (-box + M^2) F = 0`: each level component times `p^2 + r` vanishes
/// identically on its shell (exact polynomial reduction).
pub fn field_equation_check(tf: &TestFunction) -> FieldEquationReport {
    let params: &ModelParams = &tf.params;
    let d = params.d;
    let mut sq = -(Poly::var(0) * Poly::var(0));
    for i in 1..d {
        sq = sq + Poly::var(i) * Poly::var(i);
    }
    let mut nonzero = 0;
    let levels = tf.levels();
    for &level in &levels {
        let r = shell_of_level(level, params);
        let factor = sq.clone() + Poly::constant(r.clone());
        for (_, c) in tf.body.iter().filter(|(m, _)| m.level() == level) {
            nonzero += (c.clone() * factor.clone()).reduce_on_shell(&r, d).len();
        }
    }
    FieldEquationReport { levels, nonzero_terms: nonzero, pass: nonzero == 0 }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuptaBleulerReport {
    /// Levels with `r >= 0`; the others are removed by the projection.
    pub levels: Vec<usize>,
    pub samples: PointwiseReport,
    pub pass: bool,
}

/// `L_m Pi F = 0` for `0 <= m <= level` at `per_shell` exact integer samples on
/// every kept shell.
pub fn gupta_bleuler_check(tf: &TestFunction, n_max: usize, per_shell: usize) -> Result<GuptaBleulerReport> {
    let d = tf.params.d;
    let mut levels = Vec::new();
    let mut momenta = Vec::new();
    for level in tf.levels().into_iter().filter(|&l| l <= n_max) {
        let r = shell_of_level(level, &tf.params);
        if r.signum() < 0 {
            continue;
        }
        if !r.is_integer() {
            return Err(Error::Unsupported(format!("shell {} has no integer samples", r)));
        }
        let r_int = r.numer().to_string().parse::<i64>().map_err(|e| Error::Config(e.to_string()))?;
        let found = onshell_integer_momenta(r_int, d, per_shell, 8 + r_int.abs());
        if found.len() < per_shell {
            return Err(Error::Config(format!("only {} samples found on shell {}", found.len(), r)));
        }
        levels.push(level);
        momenta.extend(found);
    }
    let samples = verify_constraints_pointwise(tf, &momenta);
    let pass = levels.is_empty() || samples.pass;
    Ok(GuptaBleulerReport { levels, samples, pass })
}
