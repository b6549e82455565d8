//! Oscillator Fock space over a single momentum fiber.
//!
//! A basis vector is a normal-ordered monomial of creation operators
//! `alpha^dir_{-mode}` acting on the vacuum. Annihilators act on a monomial in
//! closed form: all creation operators commute, so `alpha^dir_mode` removes one
//! matching factor and multiplies by `mode * eta(dir) * multiplicity`.

use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::{Coefficient, Scalar};

/// Spacetime dimension and normal-ordering intercept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelParams {
    pub d: usize,
    pub b: Rational,
}

impl ModelParams {
    pub fn new(d: usize, b: Rational) -> Result<Self> {
        if d < 2 {
            return Err(Error::Config(format!("dimension must be at least 2, got {}", d)));
        }
        Ok(ModelParams { d, b })
    }

    pub fn eta(&self, dir: usize) -> i64 {
        eta(dir)
    }

    /// Transverse directions 1..d-2.
    pub fn transverse(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.d - 2
    }

    pub fn longitudinal(&self) -> usize {
        self.d - 1
    }
}

#[inline]
pub fn eta(dir: usize) -> i64 {
    if dir == 0 {
        -1
    } else {
        1
    }
}

/// One creation operator `alpha^dir_{-mode}`, `mode >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Osc {
    pub mode: u16,
    pub dir: u16,
}

impl Osc {
    pub fn new(mode: usize, dir: usize) -> Self {
        Osc { mode: mode as u16, dir: dir as u16 }
    }
}

/// Sorted multiset of creation operators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub SmallVec<[Osc; 6]>);

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn from_factors(mut f: Vec<Osc>) -> Self {
        f.sort();
        Monomial(f.into_iter().collect())
    }

    pub fn factors(&self) -> &[Osc] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.iter().map(|o| o.mode as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_mode(&self) -> usize {
        self.0.last().map_or(0, |o| o.mode as usize)
    }

    pub fn count(&self, o: Osc) -> usize {
        self.0.iter().filter(|x| **x == o).count()
    }

    pub fn count_dir(&self, dir: usize) -> usize {
        self.0.iter().filter(|x| x.dir as usize == dir).count()
    }

    pub fn with(&self, o: Osc) -> Self {
        let mut v = self.0.clone();
        let pos = v.partition_point(|x| *x <= o);
        v.insert(pos, o);
        Monomial(v)
    }

    /// Removes one copy of `o`, returning the multiplicity it had.
    pub fn without(&self, o: Osc) -> Option<(Self, usize)> {
        let start = self.0.partition_point(|x| *x < o);
        let end = self.0.partition_point(|x| *x <= o);
        if start == end {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(start);
        Some((Monomial(v), end - start))
    }

    /// `<M, M>` in the indefinite product: prod over distinct factors of (mode * eta)^k k!.
    pub fn self_inner(&self) -> Rational {
        let mut acc = Rational::one();
        let f = &self.0;
        let mut i = 0;
        while i < f.len() {
            let mut j = i;
            while j < f.len() && f[j] == f[i] {
                j += 1;
            }
            let k = (j - i) as i64;
            let base = f[i].mode as i64 * eta(f[i].dir as usize);
            let mut term: i128 = 1;
            for t in 1..=k {
                term = term * base as i128 * t as i128;
            }
            acc = &acc * &Rational::from_big(num_rational::BigRational::from_integer(term.into()));
            i = j;
        }
        acc
    }

    pub fn j_sign(&self) -> i64 {
        if self.count_dir(0) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// JSON form: list of `[-mode, dir]` pairs.
    pub fn to_pairs(&self) -> Vec<[i64; 2]> {
        self.0.iter().map(|o| [-(o.mode as i64), o.dir as i64]).collect()
    }

    pub fn from_pairs(p: &[[i64; 2]], d: usize) -> Result<Self> {
        let mut f = Vec::with_capacity(p.len());
        for [m, dir] in p {
            if *m >= 0 || *dir < 0 || *dir as usize >= d {
                return Err(Error::Config(format!("invalid oscillator [{}, {}]", m, dir)));
            }
            f.push(Osc::new((-m) as usize, *dir as usize));
        }
        Ok(Monomial::from_factors(f))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "Ω");
        }
        for o in &self.0 {
            write!(f, "a{}_{} ", o.dir, -(o.mode as i64))?;
        }
        write!(f, "Ω")
    }
}

/// All monomials of the given level in `d` directions, sorted.
pub fn level_basis(d: usize, level: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur: Vec<Osc> = Vec::new();
    fn rec(d: usize, rest: usize, min: Osc, cur: &mut Vec<Osc>, out: &mut Vec<Monomial>) {
        if rest == 0 {
            out.push(Monomial(cur.iter().copied().collect()));
            return;
        }
        for mode in (min.mode as usize)..=rest {
            let dstart = if mode == min.mode as usize { min.dir as usize } else { 0 };
            for dir in dstart..d {
                let o = Osc::new(mode, dir);
                cur.push(o);
                rec(d, rest - mode, o, cur, out);
                cur.pop();
            }
        }
    }
    rec(d, level, Osc::new(1, 0), &mut cur, &mut out);
    out.sort();
    out
}

/// Coefficients of prod_{n >= 1} (1 - q^n)^{-d} up to q^max.
pub fn level_dimensions(d: usize, max: usize) -> Vec<u128> {
    let mut c = vec![0u128; max + 1];
    c[0] = 1;
    for n in 1..=max {
        for _ in 0..d {
            for k in n..=max {
                c[k] += c[k - n];
            }
        }
    }
    c
}

/// A vector in one momentum fiber: finite linear combination of monomials.
#[derive(Clone, PartialEq)]
pub struct FockVector<K> {
    terms: FxHashMap<Monomial, K>,
}

impl<K: Scalar> Default for FockVector<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Scalar> fmt::Debug for FockVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.sorted_terms()).finish()
    }
}

impl<K: Scalar> FockVector<K> {
    pub fn zero() -> Self {
        FockVector { terms: FxHashMap::default() }
    }

    pub fn vacuum() -> Self {
        Self::basis(Monomial::vacuum())
    }

    pub fn basis(m: Monomial) -> Self {
        let mut v = Self::zero();
        v.terms.insert(m, K::one());
        v
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut v = Self::zero();
        for (m, c) in it {
            v.add_term(m, c);
        }
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn sorted_terms(&self) -> Vec<(&Monomial, &K)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (a.0.level(), a.0).cmp(&(b.0.level(), b.0)));
        v
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FockVector { terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul_ref(c))).collect() }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &K) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x.mul_ref(c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &K::one());
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &(-K::one()));
        r
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> FockVector<L> {
        FockVector::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Levels present in the vector.
    pub fn levels(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.terms.keys().map(|m| m.level()).collect();
        l.sort_unstable();
        l.dedup();
        l
    }

    pub fn max_level(&self) -> usize {
        self.terms.keys().map(|m| m.level()).max().unwrap_or(0)
    }

    pub fn level_component(&self, level: usize) -> Self {
        FockVector {
            terms: self.terms.iter().filter(|(m, _)| m.level() == level).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn max_dir(&self) -> usize {
        self.terms.keys().flat_map(|m| m.0.iter().map(|o| o.dir as usize)).max().unwrap_or(0)
    }
}

/// `alpha^dir_mode` acting on `v`; `mode < 0` creates, `mode > 0` annihilates.
/// The zero mode is momentum and is handled by the fiber layer.
pub fn apply_oscillator<K: Scalar>(dir: usize, mode: i64, v: &FockVector<K>) -> FockVector<K> {
    assert!(mode != 0, "zero mode acts as momentum on a fiber");
    let mut out = FockVector::zero();
    if mode < 0 {
        let o = Osc::new((-mode) as usize, dir);
        for (m, c) in v.iter() {
            out.add_term(m.with(o), c.clone());
        }
    } else {
        let o = Osc::new(mode as usize, dir);
        let base = mode * eta(dir);
        for (m, c) in v.iter() {
            if let Some((rest, k)) = m.without(o) {
                out.add_term(rest, c.scale_int(base * k as i64));
            }
        }
    }
    out
}

/// The fundamental symmetry: sign (-1)^(number of timelike factors).
pub fn j_involution<K: Scalar>(v: &FockVector<K>) -> FockVector<K> {
    FockVector::from_terms(v.iter().map(|(m, c)| (m.clone(), if m.j_sign() < 0 { -c.clone() } else { c.clone() })))
}

/// Indefinite product, antilinear in the first slot.
pub fn inner_indefinite<K: Scalar>(u: &FockVector<K>, v: &FockVector<K>) -> K {
    let (small, large, flip) = if u.len() <= v.len() { (u, v, false) } else { (v, u, true) };
    let mut acc = K::zero();
    for (m, a) in small.iter() {
        if let Some(b) = large.terms.get(m) {
            let n = K::from_rational(&m.self_inner());
            let t = if flip { b.conj().mul_ref(a) } else { a.conj().mul_ref(b) };
            acc = acc + t * n;
        }
    }
    acc
}

/// Positive definite product `<u, J v>`.
pub fn inner_positive<K: Scalar>(u: &FockVector<K>, v: &FockVector<K>) -> K {
    inner_indefinite(u, &j_involution(v))
}

/// One term of the JSON dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<[i64; 2]>,
    pub re: Rational,
    pub im: Rational,
    pub rad: Rational,
    pub irad: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockJson {
    pub terms: Vec<TermJson>,
    pub s: u64,
}

impl FockVector<Coefficient> {
    pub fn to_json(&self) -> FockJson {
        let mut s = 0;
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                if c.s != 0 {
                    s = c.s;
                }
                TermJson {
                    monomial: m.to_pairs(),
                    re: c.re.clone(),
                    im: c.im.clone(),
                    rad: c.rad.clone(),
                    irad: c.irad.clone(),
                }
            })
            .collect();
        FockJson { terms, s }
    }

    pub fn from_json(j: &FockJson, d: usize) -> Result<Self> {
        let mut v = FockVector::zero();
        for t in &j.terms {
            let m = Monomial::from_pairs(&t.monomial, d)?;
            let has_rad = !t.rad.is_zero() || !t.irad.is_zero();
            let c = Coefficient {
                re: t.re.clone(),
                im: t.im.clone(),
                rad: t.rad.clone(),
                irad: t.irad.clone(),
                s: if has_rad { j.s } else { 0 },
            };
            v.add_term(m, c);
        }
        Ok(v)
    }
}

pub fn to_coefficients(v: &FockVector<Rational>) -> FockVector<Coefficient> {
    v.map(|r| Coefficient::real(r.clone()))
}
