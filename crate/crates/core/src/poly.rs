//! Sparse multivariate polynomials in the momentum components with rational
//! coefficients, extended by negative powers of `lc = p^0 + p^{d-1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::fiber::Momentum;
use crate::rational::Rational;
use crate::scalar::{Field, Scalar};

/// `prod p_var^exp * lc^{-inv}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PolyMono {
    pub exps: SmallVec<[(u16, u16); 4]>,
    pub inv: u16,
}

impl PolyMono {
    fn mul(&self, o: &PolyMono) -> PolyMono {
        let mut out: SmallVec<[(u16, u16); 4]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < o.exps.len() {
            if j == o.exps.len() || (i < self.exps.len() && self.exps[i].0 < o.exps[j].0) {
                out.push(self.exps[i]);
                i += 1;
            } else if i == self.exps.len() || o.exps[j].0 < self.exps[i].0 {
                out.push(o.exps[j]);
                j += 1;
            } else {
                out.push((self.exps[i].0, self.exps[i].1 + o.exps[j].1));
                i += 1;
                j += 1;
            }
        }
        PolyMono { exps: out, inv: self.inv + o.inv }
    }

    pub fn exp_of(&self, var: usize) -> u16 {
        self.exps.iter().find(|e| e.0 as usize == var).map_or(0, |e| e.1)
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|e| e.1 as usize).sum()
    }

    fn spatial_degree(&self) -> usize {
        self.exps.iter().filter(|e| e.0 != 0).map(|e| e.1 as usize).sum()
    }
}

impl fmt::Debug for PolyMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, e) in &self.exps {
            write!(f, "p{}^{} ", v, e)?;
        }
        if self.inv > 0 {
            write!(f, "lc^-{}", self.inv)?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<PolyMono, Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{}*{:?}", c, m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Poly {
    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::default();
        p.add_term(PolyMono::default(), c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = Poly::default();
        let mut exps = SmallVec::new();
        exps.push((i as u16, 1));
        p.add_term(PolyMono { exps, inv: 0 }, Rational::one());
        p
    }

    /// `lc^{-1}`.
    pub fn inv_lc() -> Self {
        let mut p = Poly::default();
        p.terms.insert(PolyMono { exps: SmallVec::new(), inv: 1 }, Rational::one());
        p
    }

    /// `p^0 + p^{d-1}`.
    pub fn lc(d: usize) -> Self {
        Poly::var(0) + Poly::var(d - 1)
    }

    pub fn momentum(d: usize) -> Momentum<Poly> {
        Momentum((0..d).map(Poly::var).collect())
    }

    fn add_term(&mut self, m: PolyMono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PolyMono, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_inv_power(&self) -> usize {
        self.terms.keys().map(|m| m.inv as usize).max().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Largest exponent of one variable.
    pub fn max_exp(&self, var: usize) -> usize {
        self.terms.keys().map(|m| m.exp_of(var) as usize).max().unwrap_or(0)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::constant(Rational::one());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// `lc^g * self`, expanded. Requires `g >= max_inv_power`.
    pub fn times_lc_power(&self, g: usize, d: usize) -> Self {
        assert!(g >= self.max_inv_power(), "lc power too small to clear denominators");
        let lc = Poly::lc(d);
        let pows: Vec<Poly> = (0..=g).map(|k| lc.pow(k)).collect();
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let plain = PolyMono { exps: m.exps.clone(), inv: 0 };
            let single = Poly { terms: BTreeMap::from([(plain, c.clone())]) };
            out = out + single * pows[g - m.inv as usize].clone();
        }
        out
    }

    /// Substitutes `p^i -> -p^i` for every spatial direction.
    pub fn flip_spatial(&self) -> Self {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            assert_eq!(m.inv, 0, "flip of lc^-1 is not a polynomial substitution");
            let c = if m.spatial_degree() % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term(m.clone(), c);
        }
        out
    }

    /// Normal form modulo `p^2 + r`, eliminating `(p^0)^2 = sum_i (p^i)^2 + r`.
    pub fn reduce_on_shell(&self, r: &Rational, d: usize) -> Self {
        let mut sub = Poly::constant(r.clone());
        for i in 1..d {
            sub = sub + Poly::var(i) * Poly::var(i);
        }
        let mut out = Poly::default();
        let mut work: Vec<(PolyMono, Rational)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = work.pop() {
            let e0 = m.exp_of(0);
            if e0 < 2 {
                out.add_term(m, c);
                continue;
            }
            let mut rest = m.clone();
            for e in rest.exps.iter_mut() {
                if e.0 == 0 {
                    e.1 -= 2;
                }
            }
            rest.exps.retain(|e| e.1 > 0);
            let single = Poly { terms: BTreeMap::from([(rest, c)]) };
            for (m2, c2) in (single * sub.clone()).terms {
                work.push((m2, c2));
            }
        }
        out
    }

    pub fn eval<K: Field>(&self, p: &Momentum<K>) -> K {
        let lc = p.light_cone_plus();
        let inv = if self.max_inv_power() > 0 { lc.inv() } else { None };
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = K::from_rational(c);
            for &(v, e) in &m.exps {
                for _ in 0..e {
                    t = t.mul_ref(&p.0[v as usize]);
                }
            }
            for _ in 0..m.inv {
                t = t.mul_ref(inv.as_ref().expect("lc^-1 at a point with p^0 + p^{d-1} = 0"));
            }
            acc = acc + t;
        }
        acc
    }

    /// Evaluation at complex momentum; `lc^{-1}` terms are not allowed.
    pub fn eval_complex(&self, p: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            assert_eq!(m.inv, 0);
            let mut t = Complex64::new(c.to_f64(), 0.0);
            for &(v, e) in &m.exps {
                t *= p[v as usize].powu(e as u32);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, p: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            assert_eq!(m.inv, 0);
            let mut t = c.to_f64();
            for &(v, e) in &m.exps {
                t *= p[v as usize].powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    pub fn to_json(&self) -> Vec<PolyTermJson> {
        self.terms
            .iter()
            .map(|(m, c)| PolyTermJson {
                coeff: c.clone(),
                exps: m.exps.iter().map(|&(v, e)| [v as usize, e as usize]).collect(),
                inv_lc: m.inv as usize,
            })
            .collect()
    }

    pub fn from_json(t: &[PolyTermJson]) -> Self {
        let mut p = Poly::default();
        for term in t {
            let mut exps: Vec<(u16, u16)> = term.exps.iter().map(|[v, e]| (*v as u16, *e as u16)).collect();
            exps.sort();
            p.add_term(PolyMono { exps: exps.into_iter().collect(), inv: term.inv_lc as u16 }, term.coeff.clone());
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub coeff: Rational,
    pub exps: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "is_zero_usize")]
    pub inv_lc: usize,
}

fn is_zero_usize(x: &usize) -> bool {
    *x == 0
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, o: Poly) -> Poly {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        self + (-o)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m.mul(m2), c * c2);
            }
        }
        out
    }
}

impl Scalar for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(r: &Rational) -> Self {
        Poly::constant(r.clone())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.terms.len() == 1 {
            if let Some((m, c)) = self.terms.iter().next() {
                if m.exps.is_empty() && m.inv == 0 {
                    if c.is_one() {
                        return other.clone();
                    }
                    let mut out = other.clone();
                    for v in out.terms.values_mut() {
                        *v = &*v * c;
                    }
                    return out;
                }
            }
        }
        self.clone() * other.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn lc_power_clears_inverse() {
        let d = 4;
        let x = Poly::var(1) * Poly::inv_lc() + Poly::var(2);
        let y = x.times_lc_power(1, d);
        assert_eq!(y.max_inv_power(), 0);
        let p = Momentum(vec![q(3), q(1), q(-2), q(2)]);
        assert_eq!(y.eval(&p), &x.eval(&p) * &q(5));
    }

    #[test]
    fn shell_reduction() {
        let d = 3;
        let r = q(2);
        // (p^2 + r) * p0 reduces to zero
        let sq = -(Poly::var(0) * Poly::var(0)) + Poly::var(1) * Poly::var(1) + Poly::var(2) * Poly::var(2);
        let f = (sq + Poly::constant(r.clone())) * Poly::var(0) * Poly::var(1);
        assert!(f.reduce_on_shell(&r, d).is_empty());
        let g = Poly::var(0) * Poly::var(0);
        assert!(!g.reduce_on_shell(&r, d).is_empty());
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-4i64..5, 0u16..3, 0u16..3, 0u16..3), 0..5).prop_map(|t| {
            let mut p = Poly::default();
            for (c, a, b, e) in t {
                let mut exps = SmallVec::new();
                for (v, x) in [(0u16, a), (1, b), (2, e)] {
                    if x > 0 {
                        exps.push((v, x));
                    }
                }
                p.add_term(PolyMono { exps, inv: 0 }, q(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), x in -5i64..6, y in -5i64..6, z in -5i64..6) {
            let p = Momentum(vec![q(x), q(y), q(z)]);
            prop_assert_eq!((a.clone() * b.clone()).eval(&p), &a.eval(&p) * &b.eval(&p));
            prop_assert_eq!((a.clone() + b.clone()).eval(&p), &a.eval(&p) + &b.eval(&p));
            let f = a.eval_f64(&[x as f64, y as f64, z as f64]);
            prop_assert!((f - a.eval(&p).to_f64()).abs() < 1e-9 * (1.0 + f.abs()));
        }

        #[test]
        fn flip_matches_substitution(a in arb_poly(), x in -5i64..6, y in -5i64..6, z in -5i64..6) {
            let p = Momentum(vec![q(x), q(y), q(z)]);
            let m = Momentum(vec![q(x), q(-y), q(-z)]);
            prop_assert_eq!(a.flip_spatial().eval(&p), a.eval(&m));
        }

        #[test]
        fn reduction_agrees_on_shell(a in arb_poly(), y in -4i64..5, z in -4i64..5) {
            // points on p0^2 = p1^2 + p2^2 + r with r = 0: Pythagorean-free check via r = p0^2 - p1^2 - p2^2
            let x = y.abs() + z.abs() + 1;
            let r = q(x * x - y * y - z * z);
            let p = Momentum(vec![q(x), q(y), q(z)]);
            prop_assert_eq!(a.reduce_on_shell(&r, 3).eval(&p), a.eval(&p));
        }

        #[test]
        fn json_roundtrip(a in arb_poly()) {
            prop_assert_eq!(Poly::from_json(&a.to_json()), a);
        }
    }
}
