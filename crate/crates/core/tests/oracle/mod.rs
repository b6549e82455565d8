//! Slow reference implementations used to cross-check the library.
//!
//! States are maps from sorted creator lists `(mode, dir)` to big rationals.
//! Annihilators are moved to the right one commutator at a time, the Virasoro
//! generators are summed as normal-ordered bilinears over a generous mode
//! window, and the DDF operators are assembled literally from sums over
//! compositions.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use string_ddf::fock::{FockVector, Monomial, Osc};
use string_ddf::Rational;

pub type Q = BigRational;
pub type Key = Vec<(i64, usize)>;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct St(pub BTreeMap<Key, Q>);

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

impl St {
    pub fn vacuum() -> St {
        let mut s = St::default();
        s.0.insert(Vec::new(), Q::one());
        s
    }

    pub fn add(&mut self, k: Key, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn axpy(&mut self, o: &St, c: &Q) {
        for (k, v) in &o.0 {
            self.add(k.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> St {
        let mut s = St::default();
        s.axpy(self, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn level(k: &Key) -> i64 {
        k.iter().map(|f| f.0).sum()
    }

    pub fn max_level(&self) -> i64 {
        self.0.keys().map(St::level).max().unwrap_or(0)
    }
}

pub fn to_big(r: &Rational) -> Q {
    r.to_big()
}

pub fn from_lib(v: &FockVector<Rational>) -> St {
    let mut s = St::default();
    for (m, c) in v.iter() {
        let mut k: Key = m.to_pairs().iter().map(|p| (-p[0], p[1] as usize)).collect();
        k.sort();
        s.add(k, to_big(c));
    }
    s
}

pub fn to_lib(s: &St) -> FockVector<Rational> {
    let mut v = FockVector::zero();
    for (k, c) in &s.0 {
        let m = Monomial::from_factors(k.iter().map(|&(mode, dir)| Osc::new(mode as usize, dir)).collect());
        v.add_term(m, Rational::from_big(c.clone()));
    }
    v
}

pub fn eta(mu: usize) -> i64 {
    if mu == 0 {
        -1
    } else {
        1
    }
}

fn insert(k: &Key, f: (i64, usize)) -> Key {
    let mut out = k.clone();
    let pos = out.partition_point(|x| *x <= f);
    out.insert(pos, f);
    out
}

/// `alpha^mu_m` with `m > 0` on a single creator list, commuting through one factor at a time.
fn lower(mu: usize, m: i64, k: &[(i64, usize)]) -> St {
    let mut out = St::default();
    if k.is_empty() {
        return out;
    }
    let first = k[0];
    let rest: Key = k[1..].to_vec();
    if first == (m, mu) {
        out.add(rest.clone(), q(m * eta(mu)));
    }
    for (kk, c) in lower(mu, m, &rest).0 {
        out.add(insert(&kk, first), c);
    }
    out
}

#[derive(Debug, Clone)]
pub struct Model {
    pub d: usize,
    pub b: Q,
    pub p: Vec<Q>,
}

impl Model {
    pub fn alpha(&self, mu: usize, m: i64, v: &St) -> St {
        let mut out = St::default();
        for (k, c) in &v.0 {
            if m < 0 {
                out.add(insert(k, (-m, mu)), c.clone());
            } else if m == 0 {
                out.add(k.clone(), c * &self.p[mu]);
            } else {
                out.axpy(&lower(mu, m, k), c);
            }
        }
        out
    }

    pub fn p_square(&self) -> Q {
        (0..self.d).map(|mu| q(eta(mu)) * &self.p[mu] * &self.p[mu]).fold(Q::zero(), |a, b| a + b)
    }

    /// `L_m = 1/2 sum_k :alpha_{m-k} . alpha_k: - b delta_{m,0}`.
    pub fn virasoro(&self, m: i64, v: &St) -> St {
        let window = v.max_level() + m.abs() + 2;
        let mut out = St::default();
        let half = qr(1, 2);
        for k in -window..=window {
            let (x, y) = (m - k, k);
            let (first, second) = if x >= y { (x, y) } else { (y, x) };
            for mu in 0..self.d {
                let w = self.alpha(mu, second, &self.alpha(mu, first, v));
                out.axpy(&w, &(&half * q(eta(mu))));
            }
        }
        if m == 0 {
            out.axpy(v, &(-self.b.clone()));
        }
        out
    }

    /// `<u, v>` by moving the creators of `u` onto `v` as annihilators.
    pub fn inner(&self, u: &St, v: &St) -> Q {
        let mut acc = Q::zero();
        for (k, c) in &u.0 {
            let mut w = v.clone();
            for &(mode, dir) in k.iter() {
                w = self.alpha(dir, mode, &w);
            }
            acc += c * w.0.get(&Vec::new()).cloned().unwrap_or_else(Q::zero);
        }
        acc
    }

    /// `s k . alpha_j` with `k = k0 (1, 0, .., 0, -1)`.
    fn k_alpha(&self, k0: &Q, s: i64, j: i64, v: &St) -> St {
        let mut kv = vec![Q::zero(); self.d];
        kv[0] = k0 * q(s);
        kv[self.d - 1] = -(k0 * q(s));
        let mut out = St::default();
        for mu in 0..self.d {
            if kv[mu].is_zero() {
                continue;
            }
            out.axpy(&self.alpha(mu, j, v), &(&kv[mu] * q(eta(mu))));
        }
        out
    }

    /// `U_n(s k)` or its adjoint, summed over ordered compositions of `n`.
    pub fn u_op(&self, n: i64, k0: &Q, s: i64, dagger: bool, v: &St) -> St {
        if n < 0 {
            return St::default();
        }
        if n == 0 {
            return v.clone();
        }
        let mut out = St::default();
        for comp in compositions(n) {
            let qn = comp.len() as i64;
            let mut coeff = Q::one() / q(factorial(qn));
            let mut w = v.clone();
            for &part in comp.iter().rev() {
                coeff /= q(part);
                w = self.k_alpha(k0, s, if dagger { -part } else { part }, &w);
            }
            out.axpy(&w, &coeff);
        }
        out
    }

    /// `V_n(k) = sum_p U_{p-n}(-k)^dagger U_p(k)`.
    pub fn v_scalar(&self, n: i64, k0: &Q, v: &St) -> St {
        let mut out = St::default();
        // U_p(k) v vanishes beyond the level of v; one extra term checks that
        let top = v.max_level() + 1;
        for p in 0..=top {
            if p - n < 0 {
                continue;
            }
            let w = self.u_op(p, k0, 1, false, v);
            if w.is_zero() {
                continue;
            }
            out.axpy(&self.u_op(p - n, k0, -1, true, &w), &Q::one());
        }
        out
    }

    /// `A^i_n = V^i_n(n k)` and `A^i_0 = p^i`, with `k0 = kappa / (p^0 + p^{d-1})`.
    pub fn ddf(&self, i: usize, n: i64, kappa: &Q, v: &St) -> St {
        if n == 0 {
            return v.scaled(&self.p[i]);
        }
        let lc = &self.p[0] + &self.p[self.d - 1];
        let k0 = kappa / lc * q(n);
        let mut out = St::default();
        let top = v.max_level() + n.abs() + 1;
        for qq in 1..=top {
            let w = self.v_scalar(n + qq, &k0, v);
            out.axpy(&self.alpha(i, -qq, &w), &Q::one());
            let w = self.alpha(i, qq, v);
            out.axpy(&self.v_scalar(n - qq, &k0, &w), &Q::one());
        }
        out.axpy(&self.v_scalar(n, &k0, v), &self.p[i]);
        out
    }
}

pub fn factorial(n: i64) -> i64 {
    (1..=n).product()
}

pub fn compositions(n: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Coefficients of `prod_n (1 - q^n)^{-colors}` up to `q^max`.
pub fn colored_partitions(colors: usize, max: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); max + 1];
    c[0] = BigInt::one();
    for _ in 0..colors {
        for part in 1..=max {
            for t in part..=max {
                let add = c[t - part].clone();
                c[t] += add;
            }
        }
    }
    c
}

pub fn is_nonnegative(x: &Q) -> bool {
    !x.is_negative()
}
