//! Exact dense linear algebra: reduced row echelon form, kernels, ranks and
//! signatures of Hermitian forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::Rational;
use crate::scalar::{Field, RealSign, Scalar};

pub type Matrix<K> = Vec<Vec<K>>;

pub fn matmul<K: Scalar>(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![K::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] = out[i][j].add_ref(&a[i][t].mul_ref(&b[t][j]));
                }
            }
        }
    }
    out
}

/// In-place reduction to reduced row echelon form. Returns pivot columns.
pub fn rref<K: Field>(a: &mut Matrix<K>) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, pr);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            if !a[r][j].is_zero() {
                a[r][j] = a[r][j].mul_ref(&inv);
            }
        }
        let prow = a[r].clone();
        let nz: Vec<usize> = (c..cols).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] = row[j].clone() - f.mul_ref(&prow[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<K: Field>(a: &Matrix<K>) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` for a `rows x cols` matrix.
pub fn kernel<K: Field>(a: &Matrix<K>, cols: usize) -> Vec<Vec<K>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![K::zero(); cols];
        x[free] = K::one();
        for (r, &pc) in pivots.iter().enumerate() {
            if !m[r][free].is_zero() {
                x[pc] = -m[r][free].clone();
            }
        }
        out.push(x);
    }
    out
}

pub fn inverse<K: Field>(a: &Matrix<K>) -> Option<Matrix<K>> {
    let n = a.len();
    let mut aug: Matrix<K> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { K::one() } else { K::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
pub fn bareiss_rank(a: &Matrix<BigInt>) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Clears denominators row by row, producing an integer matrix of equal rank.
pub fn integer_rows(a: &Matrix<Rational>) -> Matrix<BigInt> {
    a.iter()
        .map(|row| {
            let mut l = BigInt::one();
            for x in row {
                let d = x.denom();
                l = num_integer::Integer::lcm(&l, &d);
            }
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Inertia `(n_plus, n_minus, n_zero)` of a Hermitian matrix, by congruence.
pub fn hermitian_signature<K: Field + RealSign>(g: &Matrix<K>) -> (usize, usize, usize) {
    let mut m = g.clone();
    let n = m.len();
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut plus, mut minus) = (0, 0);
    while !alive.is_empty() {
        let piv = alive.iter().copied().find(|&i| !m[i][i].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                let pair = alive
                    .iter()
                    .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !m[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // e_i <- e_i + t e_j with t = conj(G_ij) gives diagonal 2|G_ij|^2
                let t = m[i][j].conj();
                let tc = t.conj();
                for k in 0..n {
                    let v = m[i][k].add_ref(&tc.mul_ref(&m[j][k]));
                    m[i][k] = v;
                }
                for k in 0..n {
                    let v = m[k][i].add_ref(&t.mul_ref(&m[k][j]));
                    m[k][i] = v;
                }
                i
            }
        };
        let d = m[piv][piv].clone();
        match d.real_sign().expect("Hermitian diagonal must be real") {
            1 => plus += 1,
            -1 => minus += 1,
            _ => unreachable!("pivot is nonzero"),
        }
        let dinv = d.inv().expect("nonzero pivot");
        alive.retain(|&x| x != piv);
        for &i in &alive {
            if m[i][piv].is_zero() {
                continue;
            }
            let f = m[i][piv].mul_ref(&dinv);
            for &k in &alive {
                if !m[piv][k].is_zero() {
                    let v = m[i][k].clone() - f.mul_ref(&m[piv][k]);
                    m[i][k] = v;
                }
            }
        }
        for &i in &alive {
            m[i][piv] = K::zero();
            m[piv][i] = K::zero();
        }
    }
    (plus, minus, n - plus - minus)
}
