//! Physical and null subspaces of a mass level, Gram signatures, and the
//! no-ghost scan.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::ddf::{word_level, DdfOperators, Letter, Word};
use crate::error::{Error, Result};
use crate::fiber::{virasoro_apply, Momentum};
use crate::fock::{inner_indefinite, level_basis, FockVector, ModelParams, Monomial};
use crate::linalg::{self, bareiss_rank, hermitian_signature, integer_rows, kernel, Matrix};
use crate::rational::Rational;
use crate::scalar::{Coefficient, Field, RealSign, Scalar};

/// Shell label `r = 2 (level - b)`.
pub fn level_shell(level: usize, params: &ModelParams) -> Rational {
    &Rational::from_int(2) * &(&Rational::from_int(level as i64) - &params.b)
}

/// Lexicographically largest non-increasing list of at most `slots` positive
/// integers whose squares sum to `t`, using as few entries as possible.
fn fewest_squares(t: u64, slots: usize) -> Option<Vec<u64>> {
    fn rec(t: u64, max: u64, left: usize, cur: &mut Vec<u64>) -> bool {
        if t == 0 {
            return true;
        }
        if left == 0 {
            return false;
        }
        let mut a = (t as f64).sqrt() as u64 + 1;
        while a * a > t {
            a -= 1;
        }
        let mut a = a.min(max);
        while a >= 1 {
            cur.push(a);
            if rec(t - a * a, a, left - 1, cur) {
                return true;
            }
            cur.pop();
            a -= 1;
        }
        false
    }
    for k in 0..=slots {
        let mut cur = Vec::new();
        if rec(t, u64::MAX, k, &mut cur) {
            return Some(cur);
        }
    }
    None
}

fn squarefree_split(n: u64) -> (u64, u64) {
    // n = c^2 s, s squarefree
    let mut c = 1;
    let mut s = 1;
    let mut m = n;
    let mut f = 2;
    while f * f <= m {
        let mut e = 0;
        while m % f == 0 {
            m /= f;
            e += 1;
        }
        for _ in 0..e / 2 {
            c *= f;
        }
        if e % 2 == 1 {
            s *= f;
        }
        f += 1;
    }
    (c, s * m)
}

/// On-shell momentum with `p^2 + r = 0` and `p^0 + p^{d-1} != 0`.
///
/// Integer search first: smallest `p^0 >= 1` (hence smallest Euclidean norm,
/// since `|p|^2 = 2 (p^0)^2 - r`), spatial part the lexicographically largest
/// decomposition into fewest squares, placed on directions `d-1, 1, 2, ...`.
/// Falls back to `p = (sqrt(c^2 + r), 0, .., 0, c)` in Q(sqrt s).
pub fn find_onshell_momentum(r: &Rational, d: usize, bound: u64) -> Result<Momentum<Coefficient>> {
    if d < 2 {
        return Err(Error::Config("dimension must be at least 2".into()));
    }
    let place = |p0: u64, parts: &[u64]| -> Momentum<Coefficient> {
        let mut v = vec![Coefficient::zero(); d];
        v[0] = Coefficient::from_int(p0 as i64);
        let order: Vec<usize> = std::iter::once(d - 1).chain(1..d - 1).collect();
        for (a, &dir) in parts.iter().zip(&order) {
            v[dir] = Coefficient::from_int(*a as i64);
        }
        Momentum(v)
    };
    if r.is_integer() {
        let ri = r.numer().to_i64().ok_or_else(|| Error::Config("shell label too large".into()))?;
        for p0 in 1..=bound {
            let t = (p0 * p0) as i64 - ri;
            if t < 0 {
                continue;
            }
            if let Some(parts) = fewest_squares(t as u64, d - 1) {
                return Ok(place(p0, &parts));
            }
        }
    }
    // p^0 = sqrt(c^2 + r) with the momentum along d-1
    for c in 1..=bound.max(1) as i64 {
        let e = &Rational::from_int(c * c) + r;
        if e.signum() <= 0 {
            continue;
        }
        let mut v = vec![Coefficient::zero(); d];
        v[d - 1] = Coefficient::from_int(c);
        v[0] = match e.sqrt_exact() {
            Some(q) => Coefficient::real(q),
            None => {
                // sqrt(n/m) = sqrt(n m) / m
                let nm = (e.numer() * e.denom()).to_u64().ok_or_else(|| Error::Config("radicand too large".into()))?;
                let (cc, s) = squarefree_split(nm);
                let den = e.denom().to_i64().expect("small denominator");
                Coefficient::sqrt_of(s, Rational::new(cc as i64, den))
            }
        };
        return Ok(Momentum(v));
    }
    Err(Error::Config(format!("no on-shell momentum found for r = {}", r)))
}

/// Distinct integer momenta on the shell `r`, ordered by `p^0` then spatial part.
pub fn onshell_integer_momenta(r: i64, d: usize, count: usize, max_p0: i64) -> Vec<Momentum<Rational>> {
    let mut out = Vec::new();
    let spatial = d - 1;
    for p0 in 1..=max_p0 {
        let t = p0 * p0 - r;
        if t < 0 {
            continue;
        }
        // enumerate spatial vectors with entries in [-p0, p0] supported on the first three slots and the last
        let slots: Vec<usize> = if spatial >= 4 { vec![d - 1, 1, 2, 3] } else { (1..d).collect() };
        let n = slots.len();
        let range = 2 * p0 + 1;
        let total = (range as u64).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut v = vec![0i64; d];
            let mut s = 0;
            for &dir in &slots {
                v[dir] = (c % range as u64) as i64 - p0;
                c /= range as u64;
                s += v[dir] * v[dir];
            }
            if s != t || p0 + v[d - 1] == 0 {
                continue;
            }
            v[0] = p0;
            out.push(Momentum::from_ints(&v));
            if out.len() == count {
                return out;
            }
        }
    }
    out
}

fn check_shell<K: Field>(level: usize, p: &Momentum<K>, params: &ModelParams) -> Result<()> {
    let r = level_shell(level, params);
    let lhs = p.square() + K::from_rational(&r);
    if !lhs.is_zero() {
        return Err(Error::OffShell(format!("p^2 + {} != 0 at level {}", r, level)));
    }
    Ok(())
}

/// Matrix of `L_1 .. L_level` from the level basis into lower levels.
fn constraint_matrix<K: Field>(level: usize, p: &Momentum<K>, params: &ModelParams, basis: &[Monomial]) -> Matrix<K> {
    let mut rows: Matrix<K> = Vec::new();
    for m in 1..=level {
        let target = level_basis(params.d, level - m);
        let idx: rustc_hash::FxHashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut block = vec![vec![K::zero(); basis.len()]; target.len()];
        for (j, mon) in basis.iter().enumerate() {
            let img = virasoro_apply(m as i64, p, &FockVector::basis(mon.clone()), params);
            for (t, c) in img.iter() {
                block[idx[t]][j] = c.clone();
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
    }
    rows
}

fn to_vectors<K: Field>(basis: &[Monomial], coords: Vec<Vec<K>>) -> Vec<FockVector<K>> {
    coords
        .into_iter()
        .map(|x| FockVector::from_terms(basis.iter().cloned().zip(x)))
        .collect()
}

/// Basis of `{psi at level : L_m psi = 0, m > 0}` at an on-shell momentum.
pub fn physical_subspace<K: Field>(level: usize, p: &Momentum<K>, params: &ModelParams) -> Result<Vec<FockVector<K>>> {
    check_shell(level, p, params)?;
    let basis = level_basis(params.d, level);
    let a = constraint_matrix(level, p, params, &basis);
    Ok(to_vectors(&basis, kernel(&a, basis.len())))
}

/// Dimension of the physical subspace by fraction-free integer elimination,
/// available when the momentum is rational.
pub fn physical_dimension_integer(level: usize, p: &Momentum<Rational>, params: &ModelParams) -> Result<usize> {
    check_shell(level, p, params)?;
    let basis = level_basis(params.d, level);
    let a = constraint_matrix(level, p, params, &basis);
    let ints: Matrix<BigInt> = integer_rows(&a);
    Ok(basis.len() - bareiss_rank(&ints))
}

pub fn gram_matrix<K: Scalar>(vs: &[FockVector<K>]) -> Matrix<K> {
    let n = vs.len();
    let mut g = vec![vec![K::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let x = inner_indefinite(&vs[i], &vs[j]);
            g[j][i] = x.conj();
            g[i][j] = x;
        }
    }
    g
}

/// Null vectors of the indefinite product inside `span(physical)`.
pub fn spurious_subspace<K: Field>(physical: &[FockVector<K>]) -> Vec<FockVector<K>> {
    let g = gram_matrix(physical);
    kernel(&g, physical.len())
        .into_iter()
        .map(|x| {
            let mut v = FockVector::zero();
            for (c, phi) in x.iter().zip(physical) {
                if !c.is_zero() {
                    v.add_scaled(phi, c);
                }
            }
            v
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

fn coordinate_rank<K: Field>(vs: &[FockVector<K>]) -> usize {
    let mut mons: Vec<Monomial> = vs.iter().flat_map(|v| v.iter().map(|(m, _)| m.clone())).collect();
    mons.sort();
    mons.dedup();
    let a: Matrix<K> = vs.iter().map(|v| mons.iter().map(|m| v.coeff(m)).collect()).collect();
    linalg::rank(&a)
}

/// Inertia of the indefinite product on `span(vs)`; the vectors must be independent.
pub fn gram_signature<K: Field + RealSign>(vs: &[FockVector<K>]) -> Result<Signature> {
    if coordinate_rank(vs) != vs.len() {
        return Err(Error::Config("gram_signature needs linearly independent vectors".into()));
    }
    let (n_plus, n_minus, n_zero) = hermitian_signature(&gram_matrix(vs));
    Ok(Signature { n_plus, n_minus, n_zero })
}

/// One row of the no-ghost scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSpectrum {
    pub d: usize,
    pub b: Rational,
    pub level: usize,
    pub r: Rational,
    pub dim_total: usize,
    pub dim_physical: usize,
    pub dim_spurious: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    pub elapsed_ms: u128,
}

impl LevelSpectrum {
    pub const CSV_HEADER: &'static str = "d,b,level,r,dim_total,dim_physical,dim_spurious,n_plus,n_minus,n_zero,elapsed_ms";

    pub fn csv_row(&self, with_timing: bool) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.d,
            self.b,
            self.level,
            self.r,
            self.dim_total,
            self.dim_physical,
            self.dim_spurious,
            self.n_plus,
            self.n_minus,
            self.n_zero,
            if with_timing { self.elapsed_ms.to_string() } else { String::new() }
        )
    }

    /// No negative-norm physical states and every null physical state spurious.
    pub fn ghost_free(&self) -> bool {
        self.n_minus == 0 && self.n_zero == self.dim_spurious
    }
}

fn level_spectrum_in<K: Field + RealSign>(level: usize, p: &Momentum<K>, params: &ModelParams) -> Result<LevelSpectrum> {
    let t = Instant::now();
    let phys = physical_subspace(level, p, params)?;
    let spur = spurious_subspace(&phys);
    let (n_plus, n_minus, n_zero) = hermitian_signature(&gram_matrix(&phys));
    Ok(LevelSpectrum {
        d: params.d,
        b: params.b.clone(),
        level,
        r: level_shell(level, params),
        dim_total: level_basis(params.d, level).len(),
        dim_physical: phys.len(),
        dim_spurious: spur.len(),
        n_plus,
        n_minus,
        n_zero,
        elapsed_ms: t.elapsed().as_millis(),
    })
}

fn as_rational_momentum(p: &Momentum<Coefficient>) -> Option<Momentum<Rational>> {
    p.0.iter().map(|c| c.as_rational()).collect::<Option<Vec<_>>>().map(Momentum)
}

/// Spectrum of one level at the canonical on-shell momentum.
pub fn level_spectrum(level: usize, params: &ModelParams) -> Result<LevelSpectrum> {
    let r = level_shell(level, params);
    let p = find_onshell_momentum(&r, params.d, 64)?;
    match as_rational_momentum(&p) {
        Some(q) => level_spectrum_in(level, &q, params),
        None => level_spectrum_in(level, &p, params),
    }
}

pub fn noghost_scan(dims: &[usize], b: &Rational, max_level: usize) -> Result<Vec<LevelSpectrum>> {
    let mut rows = Vec::new();
    for &d in dims {
        let params = ModelParams::new(d, b.clone())?;
        for level in 0..=max_level {
            rows.push(level_spectrum(level, &params)?);
        }
    }
    Ok(rows)
}

/// All creation words of a total level with transverse directions, in
/// canonical order (letters sorted by mode then direction, descending).
pub fn transverse_words(level: usize, params: &ModelParams) -> Vec<Word> {
    let letters: Vec<Letter> = (1..=level)
        .flat_map(|mode| params.transverse().map(move |dir| Letter { dir, mode }))
        .collect();
    let mut out = Vec::new();
    fn rec(letters: &[Letter], start: usize, rest: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if rest == 0 {
            let mut w = cur.clone();
            w.reverse();
            out.push(w);
            return;
        }
        for i in start..letters.len() {
            if letters[i].mode <= rest {
                cur.push(letters[i]);
                rec(letters, i, rest - letters[i].mode, cur, out);
                cur.pop();
            }
        }
    }
    rec(&letters, 0, level, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DdfSpanReport {
    pub level: usize,
    pub words: usize,
    pub dim_physical: usize,
    pub dim_spurious: usize,
    pub ddf_rank: usize,
    pub joint_rank: usize,
    pub ddf_signature: Signature,
    pub pass: bool,
}

/// Checks that DDF states of the level are independent, positive, physical,
/// and together with the spurious states span the physical subspace.
pub fn ddf_span_check<K: Field + RealSign>(
    level: usize,
    p: &Momentum<K>,
    params: &ModelParams,
    kappa: &Rational,
) -> Result<DdfSpanReport> {
    let phys = physical_subspace(level, p, params)?;
    let spur = spurious_subspace(&phys);
    let ops = DdfOperators::new(params, p, kappa)?;
    let words = transverse_words(level, params);
    let states: Vec<FockVector<K>> = words.iter().map(|w| ops.ddf_state(w)).collect();
    debug_assert!(words.iter().all(|w| word_level(w) == level));
    let all_physical = states
        .iter()
        .all(|s| (1..=level as i64).all(|m| virasoro_apply(m, p, s, params).is_zero()));
    let ddf_rank = coordinate_rank(&states);
    let mut joint = states.clone();
    joint.extend(spur.iter().cloned());
    let joint_rank = coordinate_rank(&joint);
    let (n_plus, n_minus, n_zero) = hermitian_signature(&gram_matrix(&states));
    let sig = Signature { n_plus, n_minus, n_zero };
    let pass = all_physical
        && ddf_rank == words.len()
        && joint_rank == phys.len()
        && joint_rank == ddf_rank + spur.len()
        && sig.n_plus == words.len();
    Ok(DdfSpanReport {
        level,
        words: words.len(),
        dim_physical: phys.len(),
        dim_spurious: spur.len(),
        ddf_rank,
        joint_rank,
        ddf_signature: sig,
        pass,
    })
}
