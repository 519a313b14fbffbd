//! Seeded generators and independent oracles shared by the integration
//! tests. Oracles here use plain `num` arithmetic, never the crate's own
//! elimination or SNF routines.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cohnloc::algebra::{parse_element, IntMatrix, Lattice, Matrix, Ring, Scalar, Word};
use cohnloc::complexes::{ChainComplex, ChainMap};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn z(n: i64) -> Scalar {
    Scalar::from_i64(Ring::Integers, n)
}

pub fn zm(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(Ring::Integers, rows)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(Ring::Integers, rows, cols, |_, _| z(rng.gen_range(-bound..=bound)))
}

fn to_int(m: &Matrix) -> IntMatrix {
    IntMatrix::from_matrix(m).expect("integer matrix")
}

/// A complex over Z with `len` differentials: each new differential is a
/// random combination of a kernel basis of the previous one.
pub fn random_complex(rng: &mut impl Rng, max_rank: usize, len: usize, bound: i64) -> ChainComplex {
    let lo = rng.gen_range(-1..=1);
    let ranks: Vec<usize> = (0..=len).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut diffs: Vec<Matrix> = Vec::new();
    for i in 0..len {
        let d = if i == 0 {
            int_matrix(rng, ranks[0], ranks[1], bound)
        } else {
            let kernel = Lattice::kernel(&to_int(&diffs[i - 1]));
            let k = kernel.basis().cols();
            let coeffs = int_matrix(rng, k, ranks[i + 1], bound);
            kernel.basis().to_matrix().mul(&coeffs).expect("shapes")
        };
        diffs.push(d);
    }
    ChainComplex::new(Ring::Integers, lo, ranks, diffs).expect("d^2 = 0 by construction")
}

/// A random chain map: an integer point of the kernel of the commutation
/// system `d^D_n f_n = f_{n-1} d^C_n`.
pub fn random_chain_map(rng: &mut impl Rng, c: &ChainComplex, d: &ChainComplex, bound: i64) -> ChainMap {
    let supports: Vec<(i64, i64)> = [c.support(), d.support()].into_iter().flatten().collect();
    if supports.is_empty() {
        return ChainMap::zero(c, d);
    }
    let lo = supports.iter().map(|s| s.0).min().unwrap();
    let hi = supports.iter().map(|s| s.1).max().unwrap();
    let mut offsets = BTreeMap::new();
    let mut nvars = 0;
    for n in lo..=hi {
        offsets.insert(n, nvars);
        nvars += d.rank(n) * c.rank(n);
    }
    let var = |n: i64, i: usize, j: usize| offsets[&n] + i * c.rank(n) + j;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for n in lo + 1..=hi {
        let (dd, dc) = (d.d(n), c.d(n));
        for i in 0..d.rank(n - 1) {
            for j in 0..c.rank(n) {
                let mut row = vec![BigInt::zero(); nvars];
                for k in 0..d.rank(n) {
                    row[var(n, k, j)] += dd.get(i, k).as_bigint().unwrap();
                }
                for k in 0..c.rank(n - 1) {
                    row[var(n - 1, i, k)] -= dc.get(k, j).as_bigint().unwrap();
                }
                rows.push(row);
            }
        }
    }
    let system = IntMatrix::from_fn(rows.len(), nvars, |r, v| rows[r][v].clone());
    let kernel = Lattice::kernel(&system);
    let basis = kernel.basis();
    let mut x = vec![BigInt::zero(); nvars];
    for col in 0..basis.cols() {
        let t = BigInt::from(rng.gen_range(-bound..=bound));
        for (v, b) in basis.column(col).iter().enumerate() {
            x[v] += &t * b;
        }
    }
    ChainMap::from_fn(c.clone(), d.clone(), |n| {
        if n < lo || n > hi {
            return Matrix::zeros(Ring::Integers, d.rank(n), c.rank(n));
        }
        Matrix::from_fn(Ring::Integers, d.rank(n), c.rank(n), |i, j| {
            Scalar::from_bigint(Ring::Integers, &x[var(n, i, j)])
        })
    })
    .expect("kernel points commute with the differentials")
}

/// A square integer matrix with nonzero determinant.
pub fn random_injective(rng: &mut impl Rng, max_n: usize, bound: i64) -> Matrix {
    loop {
        let n = rng.gen_range(1..=max_n);
        let m = int_matrix(rng, n, n, bound);
        if !bareiss_det(&rows_of(&m)).is_zero() {
            return m;
        }
    }
}

/// A random product of elementary integer matrices (determinant ±1).
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> Matrix {
    let mut m = Matrix::identity(Ring::Integers, n);
    for _ in 0..steps {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let t = rng.gen_range(-2..=2);
        let mut e = Matrix::identity(Ring::Integers, n);
        e.set(i, j, z(t));
        m = m.mul(&e).unwrap();
    }
    if rng.gen_bool(0.5) {
        let mut flip = Matrix::identity(Ring::Integers, n);
        flip.set(0, 0, z(-1));
        m = m.mul(&flip).unwrap();
    }
    m
}

pub fn rows_of(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).as_bigint().unwrap().clone()).collect()).collect()
}

/// Fraction-free determinant.
pub fn bareiss_det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Rank over Q by naive elimination.
pub fn rank_q(a: &[Vec<BigRational>]) -> usize {
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in c..cols {
                    let t = &f * &m[rank][k];
                    m[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rational_rows(m: &Matrix) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_rational().unwrap()).collect()).collect()
}

/// Betti numbers over Q by ranks: `b_n = rank C_n − rank d_n − rank d_{n+1}`.
pub fn betti_q(c: &ChainComplex) -> Vec<usize> {
    let ranks: Vec<usize> = c.diffs().iter().map(|d| rank_q(&rational_rows(d))).collect();
    (0..c.ranks().len())
        .map(|i| {
            let below = if i > 0 { ranks[i - 1] } else { 0 };
            let above = ranks.get(i).copied().unwrap_or(0);
            c.ranks()[i] - below - above
        })
        .collect()
}

/// Noncommutative power series over Q, keyed by words (letter indices).
pub type Series = BTreeMap<Vec<usize>, BigRational>;

pub fn series_of(x: &Scalar) -> Series {
    match x.as_free() {
        Some(p) => p.terms().map(|(w, c)| (w.letters().to_vec(), c.to_rational().unwrap())).collect(),
        None => {
            let c = x.to_rational().unwrap();
            if c.is_zero() {
                Series::new()
            } else {
                Series::from([(Vec::new(), c)])
            }
        }
    }
}

pub fn series_add(a: &Series, b: &Series) -> Series {
    let mut out = a.clone();
    for (w, c) in b {
        let e = out.entry(w.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            out.remove(w);
        }
    }
    out
}

pub fn series_mul(a: &Series, b: &Series, max_len: usize) -> Series {
    let mut out = Series::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() > max_len {
                continue;
            }
            let w: Vec<usize> = u.iter().chain(v).copied().collect();
            let e = out.entry(w.clone()).or_insert_with(BigRational::zero);
            *e += x * y;
            if e.is_zero() {
                out.remove(&w);
            }
        }
    }
    out
}

fn series_scale(a: &Series, c: &BigRational) -> Series {
    if c.is_zero() {
        return Series::new();
    }
    a.iter().map(|(w, x)| (w.clone(), x * c)).collect()
}

type SeriesMatrix = Vec<Vec<Series>>;

fn smat_mul(a: &SeriesMatrix, b: &SeriesMatrix, max_len: usize) -> SeriesMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Series::new(), |acc, k| series_add(&acc, &series_mul(&row[k], &b[k][j], max_len))))
                .collect()
        })
        .collect()
}

fn rational_inverse(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("invertible constant part");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for k in 0..2 * n {
            m[c][k] = &m[c][k] * &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..2 * n {
                    let t = &f * &m[c][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Series of `f s⁻¹ g` up to word length `max_len` by the fixed point
/// `Y = I + A Y` with `s = s_0 (I − A)`.
pub fn triple_series(f: &Matrix, s: &Matrix, g: &Matrix, max_len: usize) -> Series {
    let n = s.rows();
    if n == 0 {
        return Series::new();
    }
    let sm: SeriesMatrix = (0..n).map(|i| (0..n).map(|j| series_of(s.get(i, j))).collect()).collect();
    let s0: Vec<Vec<BigRational>> =
        sm.iter().map(|r| r.iter().map(|x| x.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero)).collect()).collect();
    let s0_inv = rational_inverse(&s0);
    let s0_inv_series: SeriesMatrix = s0_inv
        .iter()
        .map(|r| r.iter().map(|c| if c.is_zero() { Series::new() } else { Series::from([(Vec::new(), c.clone())]) }).collect())
        .collect();
    let identity: SeriesMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Series::from([(Vec::new(), BigRational::one())]) } else { Series::new() }).collect())
        .collect();
    // A = I − s_0⁻¹ s
    let prod = smat_mul(&s0_inv_series, &sm, max_len);
    let a: SeriesMatrix = (0..n)
        .map(|i| (0..n).map(|j| series_add(&identity[i][j], &series_scale(&prod[i][j], &-BigRational::one()))).collect())
        .collect();
    let mut y = identity.clone();
    for _ in 0..=max_len {
        let ay = smat_mul(&a, &y, max_len);
        y = (0..n).map(|i| (0..n).map(|j| series_add(&identity[i][j], &ay[i][j])).collect()).collect();
    }
    let inv = smat_mul(&y, &s0_inv_series, max_len);
    let fm: SeriesMatrix = vec![(0..n).map(|j| series_of(f.get(0, j))).collect()];
    let gm: SeriesMatrix = (0..n).map(|i| vec![series_of(g.get(i, 0))]).collect();
    smat_mul(&smat_mul(&fm, &inv, max_len), &gm, max_len)[0][0].clone()
}

pub fn word(letters: &[usize]) -> Word {
    letters.iter().fold(Word::empty(), |w, &x| w.concat(&Word::letter(x)))
}

pub fn words_up_to(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..alphabet).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// A random polynomial of degree ≤ `deg` in `vars` variables with small
/// integer coefficients, in the element grammar.
pub fn random_poly_text(rng: &mut impl Rng, vars: usize, deg: usize, constant: Option<i64>) -> String {
    let mut terms = Vec::new();
    let c0 = constant.unwrap_or_else(|| rng.gen_range(-2..=2));
    terms.push(format!("{c0}"));
    for d in 1..=deg {
        for _ in 0..rng.gen_range(0..=2) {
            let c = rng.gen_range(-2..=2);
            if c == 0 {
                continue;
            }
            let w: Vec<String> = (0..d).map(|_| format!("x{}", rng.gen_range(1..=vars))).collect();
            terms.push(format!("{c}*{}", w.join("*")));
        }
    }
    terms.join(" + ").replace("+ -", "- ")
}

pub fn poly(ring: Ring, text: &str) -> Scalar {
    parse_element(ring, text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn is_unit_abs(n: &BigInt) -> bool {
    n.abs().is_one()
}
