//! Transverse spectrum-generating operators on a momentum fiber.
//!
//! All operators are built from the light-like vector `k = k0 (1, 0, .., 0, -1)`
//! with `k0 = kappa / (p^0 + p^{d-1})`, so that `k . p = -kappa`. Since `k` has
//! no transverse components and `k^0 + k^{d-1} = 0`, the operators are
//! unchanged when `p` is shifted along `k`; they map the fiber over `p` into the
//! fiber over `p - n k` as far as the Virasoro generators are concerned:
//! `L_m(p - n k) A_n = A_n L_m(p)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fiber::{virasoro_apply, Momentum};
use crate::fock::{apply_oscillator, inner_indefinite, level_basis, FockVector, ModelParams};
use crate::rational::Rational;
use crate::scalar::{Field, Scalar};

/// One factor `A^dir_{-mode}` of a creation word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub dir: usize,
    pub mode: usize,
}

/// Word `A^{i1}_{-n1} ... A^{ik}_{-nk}`, applied right to left to the vacuum.
pub type Word = Vec<Letter>;

pub fn word_level(w: &[Letter]) -> usize {
    w.iter().map(|l| l.mode).sum()
}

/// Partitions of `n` as (part, multiplicity) lists.
fn partitions(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            for mult in 1..=rest / part {
                cur.push((part, mult));
                rec(rest - part * mult, part - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// DDF machinery at a fixed momentum.
#[derive(Debug, Clone)]
pub struct DdfOperators<K> {
    pub params: ModelParams,
    pub p: Momentum<K>,
    pub k0: K,
    /// Extra terms added to every truncated sum; results must not change.
    pub slack: usize,
}

impl<K: Field> DdfOperators<K> {
    pub fn new(params: &ModelParams, p: &Momentum<K>, kappa: &Rational) -> Result<Self> {
        let lc = p.light_cone_plus();
        let inv = lc
            .inv()
            .ok_or_else(|| Error::Unsupported("p^0 + p^{d-1} = 0: light-cone frame undefined".into()))?;
        Ok(Self::with_k0(params, p, K::from_rational(kappa).mul_ref(&inv)))
    }
}

impl<K: Scalar> DdfOperators<K> {
    pub fn with_k0(params: &ModelParams, p: &Momentum<K>, k0: K) -> Self {
        DdfOperators { params: params.clone(), p: p.clone(), k0, slack: 0 }
    }

    fn last(&self) -> usize {
        self.params.d - 1
    }

    /// `alpha^0_j + alpha^{d-1}_j`; for `j = 0` the momentum combination.
    fn beta(&self, j: i64, v: &FockVector<K>) -> FockVector<K> {
        if j == 0 {
            return v.scale(&self.p.light_cone_plus());
        }
        let mut r = apply_oscillator(0, j, v);
        r.add_scaled(&apply_oscillator(self.last(), j, v), &K::one());
        r
    }

    /// `U_n(s k) v`, or its adjoint `U_n(s k)^dagger v` which uses creators.
    pub fn u_op_apply(&self, n: usize, s: i64, dagger: bool, v: &FockVector<K>) -> FockVector<K> {
        if n == 0 {
            return v.clone();
        }
        if !dagger && n > v.max_level() + self.slack {
            return FockVector::zero();
        }
        // k . alpha_j = -s k0 (alpha^0_j + alpha^{d-1}_j)
        let unit = self.k0.scale_int(-s);
        let mut out = FockVector::zero();
        for part in partitions(n) {
            let mut denom: i64 = 1;
            let mut q = 0;
            let mut w = v.clone();
            for &(j, mult) in &part {
                denom *= factorial(mult) * (j as i64).pow(mult as u32);
                q += mult;
                for _ in 0..mult {
                    w = self.beta(if dagger { -(j as i64) } else { j as i64 }, &w);
                }
                if w.is_zero() {
                    break;
                }
            }
            if w.is_zero() {
                continue;
            }
            let mut c = K::from_rational(&Rational::new(1, denom));
            for _ in 0..q {
                c = c.mul_ref(&unit);
            }
            out.add_scaled(&w, &c);
        }
        out
    }

    /// `V_n(s k) = sum_q U_{q-n}(-s k)^dagger U_q(s k)`.
    pub fn v_scalar_apply(&self, n: i64, s: i64, v: &FockVector<K>) -> FockVector<K> {
        let top = (v.max_level() + self.slack) as i64;
        let mut out = FockVector::zero();
        for q in 0..=top {
            if q - n < 0 {
                continue;
            }
            let w = self.u_op_apply(q as usize, s, false, v);
            if w.is_zero() {
                continue;
            }
            out.add_scaled(&self.u_op_apply((q - n) as usize, -s, true, &w), &K::one());
        }
        out
    }

    /// `V^mu_n(s k) = sum_{q>0} [alpha^mu_{-q} V_{n+q} + V_{n-q} alpha^mu_q] + p^mu V_n`.
    pub fn v_vector_apply(&self, mu: usize, n: i64, s: i64, v: &FockVector<K>) -> FockVector<K> {
        let top = (v.max_level() + self.slack) as i64;
        let mut out = FockVector::zero();
        for q in 1..=(top - n).max(0) {
            let w = self.v_scalar_apply(n + q, s, v);
            if !w.is_zero() {
                out.add_scaled(&apply_oscillator(mu, -q, &w), &K::one());
            }
        }
        for q in 1..=top {
            let w = apply_oscillator(mu, q, v);
            if !w.is_zero() {
                out.add_scaled(&self.v_scalar_apply(n - q, s, &w), &K::one());
            }
        }
        if !self.p.0[mu].is_zero() {
            out.add_scaled(&self.v_scalar_apply(n, s, v), &self.p.0[mu]);
        }
        out
    }

    /// `A^i_n v = V^i_n(n k) v`.
    pub fn ddf_apply(&self, i: usize, n: i64, v: &FockVector<K>) -> FockVector<K> {
        if n == 0 {
            return v.scale(&self.p.0[i]);
        }
        self.v_vector_apply(i, n, n, v)
    }

    /// `A^{i1}_{-n1} ... A^{ik}_{-nk} Omega`.
    pub fn ddf_state(&self, word: &[Letter]) -> FockVector<K> {
        let mut v = FockVector::vacuum();
        for l in word.iter().rev() {
            v = self.ddf_apply(l.dir, -(l.mode as i64), &v);
        }
        v
    }
}

/// Keeps the monomials on the shell `r = 2 (level - b)`.
pub fn mass_project<K: Scalar>(v: &FockVector<K>, r: &Rational, params: &ModelParams) -> FockVector<K> {
    FockVector::from_terms(
        v.iter()
            .filter(|(m, _)| {
                &Rational::from_int(2) * &(&Rational::from_int(m.level() as i64) - &params.b) == *r
            })
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// Shell label of a level: `r = 2 (n - b)`.
pub fn shell_of_level(level: usize, params: &ModelParams) -> Rational {
    &Rational::from_int(2) * &(&Rational::from_int(level as i64) - &params.b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub word: Word,
    pub level: usize,
    /// Term counts of `L_m psi` for `m = 1..=level+1`.
    pub residual_terms: Vec<usize>,
    /// Whether `L_0 psi = (p^2/2 - b + level) psi`.
    pub l0_ok: bool,
    pub pass: bool,
}

pub fn constraint_report<K: Field>(ops: &DdfOperators<K>, word: &[Letter]) -> ConstraintReport {
    let psi = ops.ddf_state(word);
    let level = word_level(word);
    let residual_terms: Vec<usize> =
        (1..=level as i64 + 1).map(|m| virasoro_apply(m, &ops.p, &psi, &ops.params).len()).collect();
    let ev = K::from_rational(&Rational::new(1, 2)).mul_ref(&ops.p.square()) - K::from_rational(&ops.params.b)
        + K::from_int(level as i64);
    let l0 = virasoro_apply(0, &ops.p, &psi, &ops.params);
    let l0_ok = l0 == psi.scale(&ev);
    let pass = l0_ok && residual_terms.iter().all(|&t| t == 0);
    ConstraintReport { word: word.to_vec(), level, residual_terms, l0_ok, pass }
}

/// `L_m(p - n k) A^i_n(p) v - A^i_n(p) L_m(p) v`.
pub fn intertwining_residual<K: Field>(
    ops: &DdfOperators<K>,
    m: i64,
    i: usize,
    n: i64,
    v: &FockVector<K>,
) -> FockVector<K> {
    let mut shifted = ops.p.clone();
    let last = ops.params.d - 1;
    let nk = ops.k0.scale_int(n);
    shifted.0[0] = shifted.0[0].clone() - nk.clone();
    shifted.0[last] = shifted.0[last].clone() + nk;
    let lhs = virasoro_apply(m, &shifted, &ops.ddf_apply(i, n, v), &ops.params);
    let rhs = ops.ddf_apply(i, n, &virasoro_apply(m, &ops.p, v, &ops.params));
    lhs.sub(&rhs)
}

/// `[L_m(p), A^i_n(p)] v` with both operators at the same momentum.
pub fn fiberwise_commutator<K: Field>(
    ops: &DdfOperators<K>,
    m: i64,
    i: usize,
    n: i64,
    v: &FockVector<K>,
) -> FockVector<K> {
    let lhs = virasoro_apply(m, &ops.p, &ops.ddf_apply(i, n, v), &ops.params);
    lhs.sub(&ops.ddf_apply(i, n, &virasoro_apply(m, &ops.p, v, &ops.params)))
}

/// `[A^i_n, A^j_m] v - n delta_ij delta_{n+m} v`.
pub fn oscillator_residual<K: Field>(ops: &DdfOperators<K>, i: usize, n: i64, j: usize, m: i64, v: &FockVector<K>) -> FockVector<K> {
    let mut r = ops.ddf_apply(i, n, &ops.ddf_apply(j, m, v));
    r.add_scaled(&ops.ddf_apply(j, m, &ops.ddf_apply(i, n, v)), &(-K::one()));
    if i == j && n + m == 0 {
        r.add_scaled(v, &K::from_int(-n));
    }
    r
}

/// `[L_0(p), A^i_n(p)] v + n A^i_n(p) v`.
pub fn grading_residual<K: Field>(ops: &DdfOperators<K>, i: usize, n: i64, v: &FockVector<K>) -> FockVector<K> {
    let mut r = fiberwise_commutator(ops, 0, i, n, v);
    r.add_scaled(&ops.ddf_apply(i, n, v), &K::from_int(n));
    r
}

/// `<A^i_n phi, psi> - <phi, A^i_{-n} psi>` in the indefinite product.
pub fn adjoint_residual<K: Field>(ops: &DdfOperators<K>, i: usize, n: i64, phi: &FockVector<K>, psi: &FockVector<K>) -> K {
    inner_indefinite(&ops.ddf_apply(i, n, phi), psi) - inner_indefinite(phi, &ops.ddf_apply(i, -n, psi))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub relation: String,
    pub momentum: Vec<Rational>,
    pub checked: usize,
    /// Largest number of surviving terms in any residual.
    pub max_residual_terms: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DdfSuiteReport {
    pub kappa: Rational,
    pub directions: Vec<usize>,
    pub max_level: usize,
    pub max_mode: i64,
    pub probes: Vec<ProbeResult>,
    pub max_nonzero_residual: String,
    pub pass: bool,
}

/// Name of the probe comparing `L_m` and `A^i_n` at one and the same momentum.
pub const LITERAL_COMMUTATOR: &str = "virasoro_commutator_same_fiber";

/// Exact check of the DDF relations on all basis probes of level `<= max_level`
/// with `|n|, |m| <= max_mode`. The Virasoro relation for `m != 0` is checked in
/// its intertwining form; with `literal` the same-fiber commutator is reported
/// too and counts toward the verdict.
pub fn ddf_suite(
    params: &ModelParams,
    momenta: &[Momentum<Rational>],
    kappa: &Rational,
    max_level: usize,
    max_mode: i64,
    directions: &[usize],
    literal: bool,
) -> Result<DdfSuiteReport> {
    if momenta.is_empty() {
        return Err(Error::Config("no probe momenta".into()));
    }
    if let Some(bad) = directions.iter().find(|&&i| i == 0 || i + 1 >= params.d) {
        return Err(Error::Config(format!("direction {} is not transverse", bad)));
    }
    let by_level: Vec<Vec<FockVector<Rational>>> =
        (0..=max_level).map(|l| level_basis(params.d, l).into_iter().map(FockVector::basis).collect()).collect();
    let probes: Vec<&FockVector<Rational>> = by_level.iter().flatten().collect();
    let modes: Vec<i64> = (-max_mode..=max_mode).collect();
    let mut out = Vec::new();
    for p in momenta {
        let ops = DdfOperators::new(params, p, kappa)?;
        let mut record = |relation: &str, sizes: Vec<usize>| {
            let worst = sizes.iter().copied().max().unwrap_or(0);
            out.push(ProbeResult {
                relation: relation.to_string(),
                momentum: p.0.clone(),
                checked: sizes.len(),
                max_residual_terms: worst,
                pass: worst == 0,
            });
        };
        let mut sizes = Vec::new();
        for &i in directions {
            for &j in directions {
                for &n in &modes {
                    for &m in &modes {
                        sizes.extend(probes.iter().map(|v| oscillator_residual(&ops, i, n, j, m, v).len()));
                    }
                }
            }
        }
        record("oscillator_commutator", sizes);
        let mut sizes = Vec::new();
        for &i in directions {
            for &m in modes.iter().filter(|m| **m != 0) {
                for &n in &modes {
                    sizes.extend(probes.iter().map(|v| intertwining_residual(&ops, m, i, n, v).len()));
                }
            }
        }
        record("virasoro_intertwining", sizes);
        if literal {
            let mut sizes = Vec::new();
            for &i in directions {
                for &m in modes.iter().filter(|m| **m != 0) {
                    for &n in &modes {
                        sizes.extend(probes.iter().map(|v| fiberwise_commutator(&ops, m, i, n, v).len()));
                    }
                }
            }
            record(LITERAL_COMMUTATOR, sizes);
        }
        let mut sizes = Vec::new();
        for &i in directions {
            for &n in &modes {
                sizes.extend(probes.iter().map(|v| grading_residual(&ops, i, n, v).len()));
            }
        }
        record("grading", sizes);
        let vac = FockVector::vacuum();
        let sizes = directions
            .iter()
            .flat_map(|&i| (1..=max_mode).map(move |n| (i, n)))
            .map(|(i, n)| ops.ddf_apply(i, n, &vac).len())
            .collect();
        record("vacuum_annihilation", sizes);
        let mut sizes = Vec::new();
        for &i in directions {
            sizes.extend(probes.iter().map(|v| ops.ddf_apply(i, 0, v).sub(&v.scale(&p.0[i])).len()));
        }
        record("zero_mode", sizes);
        let mut sizes = Vec::new();
        for &i in directions {
            for &n in &modes {
                let lowered: Vec<Vec<FockVector<Rational>>> =
                    by_level.iter().map(|vs| vs.iter().map(|v| ops.ddf_apply(i, n, v)).collect()).collect();
                let raised: Vec<Vec<FockVector<Rational>>> =
                    by_level.iter().map(|vs| vs.iter().map(|v| ops.ddf_apply(i, -n, v)).collect()).collect();
                for (lf, phis) in by_level.iter().enumerate() {
                    let lp = lf as i64 - n;
                    if lp < 0 || lp > max_level as i64 {
                        continue;
                    }
                    let psis = &by_level[lp as usize];
                    for (a, phi) in phis.iter().enumerate() {
                        for (c, psi) in psis.iter().enumerate() {
                            let lhs = inner_indefinite(&lowered[lf][a], psi);
                            let rhs = inner_indefinite(phi, &raised[lp as usize][c]);
                            sizes.push(usize::from(lhs != rhs));
                        }
                    }
                }
            }
        }
        record("adjoint", sizes);
    }
    let worst = out.iter().map(|r| r.max_residual_terms).max().unwrap_or(0);
    let pass = out.iter().all(|r| r.pass);
    Ok(DdfSuiteReport {
        kappa: kappa.clone(),
        directions: directions.to_vec(),
        max_level,
        max_mode,
        probes: out,
        max_nonzero_residual: worst.to_string(),
        pass,
    })
}

/// Default normalization candidates, in search order.
pub fn default_kappa_set() -> Vec<Rational> {
    vec![Rational::one(), Rational::new(1, 2), Rational::from_int(2)]
}

/// First `kappa` for which the intertwining relation holds exactly on every
/// basis probe of level `<= max_level`, for `m, n in [-2, 2] \ {0}` and the
/// first transverse direction, at all given momenta.
pub fn calibrate_normalization<K: Field>(
    params: &ModelParams,
    momenta: &[Momentum<K>],
    candidates: &[Rational],
    max_level: usize,
) -> Result<Rational> {
    if params.d < 3 {
        return Err(Error::Calibration("no transverse direction for d < 3".into()));
    }
    let probes: Vec<FockVector<K>> =
        (0..=max_level).flat_map(|l| level_basis(params.d, l)).map(FockVector::basis).collect();
    let mut dump = Vec::new();
    'cand: for kappa in candidates {
        for (t, p) in momenta.iter().enumerate() {
            let ops = DdfOperators::new(params, p, kappa)?;
            for v in &probes {
                for m in [-2i64, -1, 1, 2] {
                    for n in [-2i64, -1, 1, 2] {
                        let r = intertwining_residual(&ops, m, 1, n, v);
                        if !r.is_zero() {
                            let probe = v.iter().next().map(|(mono, _)| format!("{:?}", mono.to_pairs())).unwrap_or_default();
                            dump.push(format!(
                                "kappa {}: momentum #{} m={} n={} probe {} leaves {} terms",
                                kappa,
                                t,
                                m,
                                n,
                                probe,
                                r.len()
                            ));
                            continue 'cand;
                        }
                    }
                }
            }
        }
        return Ok(kappa.clone());
    }
    Err(Error::Calibration(format!("no normalization satisfies the intertwining relation; {}", dump.join("; "))))
}
