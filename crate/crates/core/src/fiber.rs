//! Virasoro generators, mass operator and Lorentz action on a momentum fiber.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{eta, level_basis, FockVector, ModelParams, Monomial, Osc};
use crate::linalg;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Contravariant momentum components `p^0 .. p^{d-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Momentum<K>(pub Vec<K>);

impl<K: Scalar> Momentum<K> {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Minkowski square `-p0^2 + sum p_i^2`.
    pub fn square(&self) -> K {
        let mut acc = K::zero();
        for (mu, x) in self.0.iter().enumerate() {
            let t = x.mul_ref(x);
            acc = if mu == 0 { acc - t } else { acc + t };
        }
        acc
    }

    pub fn dot(&self, other: &Self) -> K {
        let mut acc = K::zero();
        for (mu, (x, y)) in self.0.iter().zip(&other.0).enumerate() {
            let t = x.mul_ref(y);
            acc = if mu == 0 { acc - t } else { acc + t };
        }
        acc
    }

    /// Light-cone combination `p^0 + p^{d-1}`.
    pub fn light_cone_plus(&self) -> K {
        self.0[0].add_ref(&self.0[self.0.len() - 1])
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> Momentum<L> {
        Momentum(self.0.iter().map(f).collect())
    }
}

impl Momentum<Rational> {
    pub fn from_ints(v: &[i64]) -> Self {
        Momentum(v.iter().map(|x| Rational::from_int(*x)).collect())
    }
}

fn half<K: Scalar>() -> K {
    K::from_rational(&Rational::new(1, 2))
}

/// `L_m(p) v` with `L_m = 1/2 sum_n :alpha_{m-n} . alpha_n: - b delta_{m,0}` and `alpha_0 = p`.
pub fn virasoro_apply<K: Scalar>(m: i64, p: &Momentum<K>, v: &FockVector<K>, params: &ModelParams) -> FockVector<K> {
    let d = params.d;
    debug_assert_eq!(p.dim(), d);
    let mut out = FockVector::zero();
    if m == 0 {
        let base = half::<K>() * p.square() - K::from_rational(&params.b);
        for (mon, c) in v.iter() {
            let f = base.add_ref(&K::from_int(mon.level() as i64));
            out.add_term(mon.clone(), c.mul_ref(&f));
        }
        return out;
    }
    let halfk = half::<K>();
    let start = if m >= 0 { (m + 1) / 2 } else { m / 2 };
    let mut acc: FxHashMap<Monomial, K> = FxHashMap::default();
    let mut push = |mon: Monomial, c: K| {
        if c.is_zero() {
            return;
        }
        match acc.entry(mon) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                *e.get_mut() = s;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    };
    for (mon, c) in v.iter() {
        let top = mon.max_mode() as i64;
        let mut b = start;
        while b <= top.max(0) {
            let a = m - b;
            let weighted = if a == b { c.mul_ref(&halfk) } else { c.clone() };
            if b > 0 {
                let f = mon.factors();
                let mut i = 0;
                while i < f.len() {
                    let o = f[i];
                    let mut j = i;
                    while j < f.len() && f[j] == o {
                        j += 1;
                    }
                    if o.mode as i64 == b {
                        let k = (j - i) as i64;
                        let dir = o.dir as usize;
                        let (rest, _) = mon.without(o).expect("factor present");
                        let cb = weighted.scale_int(b * k);
                        if a > 0 {
                            let oa = Osc::new(a as usize, dir);
                            if let Some((rest2, k2)) = rest.without(oa) {
                                push(rest2, cb.scale_int(a * eta(dir) * k2 as i64));
                            }
                        } else if a == 0 {
                            push(rest, cb.mul_ref(&p.0[dir]));
                        } else {
                            push(rest.with(Osc::new((-a) as usize, dir)), cb);
                        }
                    }
                    i = j;
                }
            } else if b == 0 {
                // a = m < 0
                for dir in 0..d {
                    if p.0[dir].is_zero() {
                        continue;
                    }
                    let t = weighted.mul_ref(&p.0[dir]).scale_int(eta(dir));
                    push(mon.with(Osc::new((-a) as usize, dir)), t);
                }
            } else {
                for dir in 0..d {
                    let t = weighted.scale_int(eta(dir));
                    push(mon.with(Osc::new((-a) as usize, dir)).with(Osc::new((-b) as usize, dir)), t);
                }
            }
            b += 1;
        }
    }
    for (mon, c) in acc {
        out.add_term(mon, c);
    }
    out
}

/// Central term `d m (m^2 - 1)/12 + 2 b m`.
pub fn central_term(m: i64, params: &ModelParams) -> Rational {
    let d = Rational::from_int(params.d as i64);
    let a = &(&d * &Rational::from_int(m * (m * m - 1))) / &Rational::from_int(12);
    &a + &(&params.b * &Rational::from_int(2 * m))
}

/// `[L_m, L_n] v - (m - n) L_{m+n} v - central(m) delta_{m+n,0} v`.
pub fn virasoro_bracket_residual<K: Scalar>(
    m: i64,
    n: i64,
    p: &Momentum<K>,
    v: &FockVector<K>,
    params: &ModelParams,
) -> FockVector<K> {
    let ln = virasoro_apply(n, p, v, params);
    let lm = virasoro_apply(m, p, v, params);
    bracket_from_parts(m, n, p, v, &lm, &ln, &virasoro_apply(m + n, p, v, params), params)
}

#[allow(clippy::too_many_arguments)]
fn bracket_from_parts<K: Scalar>(
    m: i64,
    n: i64,
    p: &Momentum<K>,
    v: &FockVector<K>,
    lm: &FockVector<K>,
    ln: &FockVector<K>,
    lmn: &FockVector<K>,
    params: &ModelParams,
) -> FockVector<K> {
    let mut r = virasoro_apply(m, p, ln, params);
    r.add_scaled(&virasoro_apply(n, p, lm, params), &(-K::one()));
    r.add_scaled(lmn, &K::from_int(-(m - n)));
    if m + n == 0 {
        r.add_scaled(v, &(-K::from_rational(&central_term(m, params))));
    }
    r
}

/// One row of a bracket scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketRow {
    pub d: usize,
    pub b: Rational,
    pub m: i64,
    pub n: i64,
    pub level: usize,
    pub max_residual_terms: usize,
    pub pass: bool,
}

/// Scans all pairs `m < n` in `[-max_mn, max_mn]` over the full basis of each
/// level `<= max_level`, at every given momentum.
pub fn virasoro_scan<K: Scalar>(
    params: &ModelParams,
    momenta: &[Momentum<K>],
    max_mn: i64,
    max_level: usize,
) -> Vec<BracketRow> {
    let pairs: Vec<(i64, i64)> =
        (-max_mn..=max_mn).flat_map(|m| ((m + 1)..=max_mn).map(move |n| (m, n))).collect();
    let mut rows = Vec::new();
    for level in 0..=max_level {
        let basis = level_basis(params.d, level);
        let mut worst = vec![0usize; pairs.len()];
        for p in momenta {
            for mon in &basis {
                let v = FockVector::<K>::basis(mon.clone());
                let single: FxHashMap<i64, FockVector<K>> =
                    (-2 * max_mn..=2 * max_mn).map(|k| (k, virasoro_apply(k, p, &v, params))).collect();
                for (idx, &(m, n)) in pairs.iter().enumerate() {
                    let r = bracket_from_parts(m, n, p, &v, &single[&m], &single[&n], &single[&(m + n)], params);
                    worst[idx] = worst[idx].max(r.len());
                }
            }
        }
        for (idx, &(m, n)) in pairs.iter().enumerate() {
            rows.push(BracketRow {
                d: params.d,
                b: params.b.clone(),
                m,
                n,
                level,
                max_residual_terms: worst[idx],
                pass: worst[idx] == 0,
            });
        }
    }
    rows
}

/// `M^2 = 2 (N - b)`, diagonal on monomials.
pub fn mass_square_apply<K: Scalar>(v: &FockVector<K>, params: &ModelParams) -> FockVector<K> {
    FockVector::from_terms(v.iter().map(|(m, c)| {
        let f = &Rational::from_int(2) * &(&Rational::from_int(m.level() as i64) - &params.b);
        (m.clone(), c.mul_ref(&K::from_rational(&f)))
    }))
}

/// Rational Lorentz transformation, rows indexed by the upper index.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzMatrix {
    pub m: Vec<Vec<Rational>>,
}

impl LorentzMatrix {
    pub fn identity(d: usize) -> Self {
        LorentzMatrix {
            m: (0..d).map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    /// Cayley transform `(I - X)^{-1}(I + X)` of `X = eta S`, `S` antisymmetric.
    pub fn cayley(s: &[Vec<Rational>]) -> Result<Self> {
        let d = s.len();
        for i in 0..d {
            if s[i].len() != d {
                return Err(Error::Config("generator must be square".into()));
            }
            for j in 0..d {
                if s[i][j] != -s[j][i].clone() {
                    return Err(Error::Config("generator must be antisymmetric".into()));
                }
            }
        }
        let x: Vec<Vec<Rational>> =
            (0..d).map(|i| (0..d).map(|j| &Rational::from_int(eta(i)) * &s[i][j]).collect()).collect();
        let id = Self::identity(d).m;
        let minus: Vec<Vec<Rational>> = (0..d).map(|i| (0..d).map(|j| &id[i][j] - &x[i][j]).collect()).collect();
        let plus: Vec<Vec<Rational>> = (0..d).map(|i| (0..d).map(|j| &id[i][j] + &x[i][j]).collect()).collect();
        let inv = linalg::inverse(&minus).ok_or_else(|| Error::Config("Cayley transform is singular".into()))?;
        let m = linalg::matmul(&inv, &plus);
        let l = LorentzMatrix { m };
        debug_assert!(l.is_lorentz());
        Ok(l)
    }

    /// Boost with rapidity given by `tanh(y/2) = t` in the (0, k) plane.
    pub fn boost(d: usize, axis: usize, t: Rational) -> Result<Self> {
        let mut s = vec![vec![Rational::zero(); d]; d];
        s[0][axis] = t.clone();
        s[axis][0] = -t;
        Self::cayley(&s)
    }

    pub fn is_lorentz(&self) -> bool {
        let d = self.dim();
        for r in 0..d {
            for c in 0..d {
                let mut acc = Rational::zero();
                for mu in 0..d {
                    acc += &(&(&self.m[mu][r] * &self.m[mu][c]) * &Rational::from_int(eta(mu)));
                }
                let expect = if r == c { Rational::from_int(eta(r)) } else { Rational::zero() };
                if acc != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse via `eta L^T eta`.
    pub fn inverse(&self) -> Self {
        let d = self.dim();
        LorentzMatrix {
            m: (0..d)
                .map(|i| (0..d).map(|j| &self.m[j][i] * &Rational::from_int(eta(i) * eta(j))).collect())
                .collect(),
        }
    }

    pub fn apply_momentum<K: Scalar>(&self, p: &Momentum<K>) -> Momentum<K> {
        let d = self.dim();
        Momentum(
            (0..d)
                .map(|i| {
                    let mut acc = K::zero();
                    for j in 0..d {
                        if !self.m[i][j].is_zero() {
                            acc = acc + K::from_rational(&self.m[i][j]).mul_ref(&p.0[j]);
                        }
                    }
                    acc
                })
                .collect(),
        )
    }
}

/// Maps a vector in the fiber over `p` to the fiber over `L p`, intertwining
/// `L_m(p)` with `L_m(L p)`.
pub fn lorentz_apply<K: Scalar>(
    l: &LorentzMatrix,
    p: &Momentum<K>,
    v: &FockVector<K>,
) -> (Momentum<K>, FockVector<K>) {
    let inv = l.inverse();
    let d = l.dim();
    let mut out = FockVector::zero();
    for (mon, c) in v.iter() {
        let mut partial: Vec<(Vec<Osc>, K)> = vec![(Vec::new(), c.clone())];
        for o in mon.factors() {
            let mut next = Vec::with_capacity(partial.len() * d);
            for (fs, x) in &partial {
                for nu in 0..d {
                    let e = &inv.m[o.dir as usize][nu];
                    if e.is_zero() {
                        continue;
                    }
                    let mut f2 = fs.clone();
                    f2.push(Osc::new(o.mode as usize, nu));
                    next.push((f2, x.mul_ref(&K::from_rational(e))));
                }
            }
            partial = next;
        }
        for (fs, x) in partial {
            out.add_term(Monomial::from_factors(fs), x);
        }
    }
    (l.apply_momentum(p), out)
}
