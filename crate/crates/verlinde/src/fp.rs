//! Dense linear algebra over a prime field F_p with p ≤ 251.
//!
//! Entries are stored as `u8`, always reduced mod p. Products accumulate in
//! `u64`, so a single reduction at the end of each inner product suffices
//! (250·250·K stays far below 2^64 for any feasible K).

use rayon::prelude::*;
use thiserror::Error;

/// Largest prime that fits the `u8` entry representation.
pub const MAX_PRIME: u16 = 251;

/// Matrix products / eliminations above this work-estimate run on rayon.
const PAR_THRESHOLD: usize = 1 << 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FpError {
    #[error("modulus {0} is not prime")]
    NotPrime(u16),
    #[error("modulus {0} exceeds the configured maximum {MAX_PRIME}")]
    TooLarge(u16),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u16, u16),
}

pub fn is_prime(n: u16) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    let n = n as u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validate that `p` is a prime our representation supports.
pub fn validate_prime(p: u16) -> Result<(), FpError> {
    if p > MAX_PRIME {
        return Err(FpError::TooLarge(p));
    }
    if !is_prime(p) {
        return Err(FpError::NotPrime(p));
    }
    Ok(())
}

#[inline]
pub fn fp_add(a: u8, b: u8, p: u16) -> u8 {
    ((a as u16 + b as u16) % p) as u8
}

#[inline]
pub fn fp_sub(a: u8, b: u8, p: u16) -> u8 {
    ((a as u16 + p - b as u16) % p) as u8
}

#[inline]
pub fn fp_neg(a: u8, p: u16) -> u8 {
    if a == 0 {
        0
    } else {
        (p - a as u16) as u8
    }
}

#[inline]
pub fn fp_mul(a: u8, b: u8, p: u16) -> u8 {
    ((a as u32 * b as u32) % p as u32) as u8
}

/// Modular inverse by Fermat's little theorem. Panics on 0 (library bug).
pub fn fp_inv(a: u8, p: u16) -> u8 {
    assert!(a != 0, "inverse of 0 in F_{p}");
    fp_pow(a, p as u64 - 2, p)
}

pub fn fp_pow(a: u8, mut e: u64, p: u16) -> u8 {
    let mut base = a as u32;
    let mut acc = 1u32;
    let p = p as u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u8
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u16,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Result of Gauss–Jordan elimination: the reduced row-echelon form and the
/// pivot columns, in ascending order. Pivoting is deterministic (first
/// nonzero entry scanning down), so identical inputs give identical output.
#[derive(Clone, PartialEq, Eq)]
pub struct Rref {
    pub mat: FpMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl FpMatrix {
    /// Zero matrix. Panics on an unsupported modulus: every public entry
    /// point validates p before matrices exist, so this is an internal bug.
    pub fn zero(p: u16, rows: usize, cols: usize) -> Self {
        assert!(validate_prime(p).is_ok(), "unsupported modulus {p}");
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn try_new(p: u16, rows: usize, cols: usize) -> Result<Self, FpError> {
        validate_prime(p)?;
        Ok(Self::zero(p, rows, cols))
    }

    pub fn identity(p: u16, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(p: u16, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Self::zero(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = (f(i, j) % p as u64) as u8;
            }
        }
        m
    }

    pub fn from_rows_u64(p: u16, rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        Self::from_fn(p, r, c, |i, j| rows[i][j])
    }

    /// Build from column vectors (entries already reduced).
    pub fn from_cols(p: u16, rows: usize, cols: &[Vec<u8>]) -> Self {
        let mut m = Self::zero(p, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v % p as u8;
            }
        }
        m
    }

    pub fn p(&self) -> u16 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = (v % self.p as u64) as u8;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u8::from(i == j)))
    }

    fn assert_same_shape(&self, other: &Self) {
        assert_eq!(self.p, other.p, "moduli differ");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fp_add(a, b, p))
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fp_sub(a, b, p))
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        let data = self.data.iter().map(|&a| fp_neg(a, p)).collect();
        FpMatrix { data, ..*self }
    }

    pub fn scale(&self, c: u8) -> Self {
        let p = self.p;
        let c = c % p as u8;
        let data = self.data.iter().map(|&a| fp_mul(a, c, p)).collect();
        FpMatrix { data, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "moduli differ");
        assert_eq!(
            self.cols, other.rows,
            "product shape mismatch: {}x{} · {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let p = self.p as u64;
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = FpMatrix::zero(self.p, m, n);
        if m == 0 || n == 0 {
            return out;
        }
        let work = m.saturating_mul(k).saturating_mul(n);
        let row_product = |i: usize, out_row: &mut [u8]| {
            let mut acc = vec![0u64; n];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a != 0 {
                    let a = a as u64;
                    let brow = &other.data[l * n..(l + 1) * n];
                    for (accj, &b) in acc.iter_mut().zip(brow) {
                        *accj += a * b as u64;
                    }
                }
            }
            for (o, &v) in out_row.iter_mut().zip(&acc) {
                *o = (v % p) as u8;
            }
        };
        if work >= PAR_THRESHOLD {
            out.data
                .par_chunks_mut(n)
                .enumerate()
                .for_each(|(i, out_row)| row_product(i, out_row));
        } else {
            for (i, out_row) in out.data.chunks_mut(n).enumerate() {
                row_product(i, out_row);
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let s: u64 = row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u8
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = FpMatrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "moduli differ");
        let (ra, ca, rb, cb) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = FpMatrix::zero(self.p, ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..ca {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.data[(i * rb + k) * (ca * cb) + (j * cb + l)] = fp_mul(a, b, self.p);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "moduli differ");
        let mut out = FpMatrix::zero(self.p, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.get(i, j);
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.data[(self.rows + i) * out.cols + (self.cols + j)] = other.get(i, j);
            }
        }
        out
    }

    pub fn trace(&self) -> u8 {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        let s: u64 = (0..self.rows).map(|i| self.get(i, i) as u64).sum();
        (s % self.p as u64) as u8
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols, "power of non-square matrix");
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "moduli differ");
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        let cols = self.cols + other.cols;
        let mut out = FpMatrix::zero(self.p, self.rows, cols);
        for i in 0..self.rows {
            out.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            out.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(other.row(i));
        }
        out
    }

    /// Vertical concatenation [self; other].
    pub fn vcat(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "moduli differ");
        assert_eq!(self.cols, other.cols, "vcat column mismatch");
        let mut out = FpMatrix::zero(self.p, self.rows + other.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        out
    }

    pub fn hcat_all(p: u16, rows: usize, parts: &[FpMatrix]) -> Self {
        let mut out = FpMatrix::zero(p, rows, 0);
        for part in parts {
            out = out.hcat(part);
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of range");
        let mut out = FpMatrix::zero(self.p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j);
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut out = FpMatrix::zero(self.p, self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.data[i * idx.len() + jj] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut out = FpMatrix::zero(self.p, idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            out.data[ii * self.cols..(ii + 1) * self.cols].copy_from_slice(self.row(i));
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (top, bottom) = self.data.split_at_mut(hi * c);
        top[lo * c..(lo + 1) * c].swap_with_slice(&mut bottom[..c]);
    }

    /// Reduced row-echelon form with deterministic pivoting.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let p = self.p;
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = fp_inv(m.get(r, c), p);
            if inv != 1 {
                for j in c..cols {
                    let v = m.get(r, j);
                    m.data[r * cols + j] = fp_mul(v, inv, p);
                }
            }
            // Split borrows: copy the pivot row once, then eliminate.
            let prow: Vec<u8> = m.row(r)[c..].to_vec();
            let work = rows * (cols - c);
            let eliminate = |i: usize, row_i: &mut [u8]| {
                let f = row_i[c];
                if i == r || f == 0 {
                    return;
                }
                let fneg = (p - f as u16) as u32;
                for (j, &pv) in prow.iter().enumerate() {
                    if pv != 0 {
                        let cur = row_i[c + j] as u32;
                        row_i[c + j] = ((cur + fneg * pv as u32) % p as u32) as u8;
                    }
                }
            };
            if work >= PAR_THRESHOLD {
                m.data
                    .par_chunks_mut(cols)
                    .enumerate()
                    .for_each(|(i, row_i)| eliminate(i, row_i));
            } else {
                for (i, row_i) in m.data.chunks_mut(cols).enumerate() {
                    eliminate(i, row_i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// Basis of the right null space, as matrix columns; deterministic.
    pub fn kernel(&self) -> FpMatrix {
        let Rref { mat, pivots } = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FpMatrix::zero(p, self.cols, free.len());
        for (jj, &fc) in free.iter().enumerate() {
            out.set(fc, jj, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let v = mat.get(r, fc);
                if v != 0 {
                    out.set(pc, jj, (p - v as u16) as u64);
                }
            }
        }
        out
    }

    /// Basis of the left null space, as matrix rows.
    pub fn left_kernel(&self) -> FpMatrix {
        self.transpose().kernel().transpose()
    }

    /// Solve self · X = rhs exactly; None if inconsistent.
    pub fn solve(&self, rhs: &Self) -> Option<FpMatrix> {
        assert_eq!(self.p, rhs.p, "moduli differ");
        assert_eq!(self.rows, rhs.rows, "solve row mismatch");
        let aug = self.hcat(rhs);
        let Rref { mat, pivots } = aug.rref();
        // Any pivot in the rhs block means inconsistency.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FpMatrix::zero(self.p, self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.data[pc * rhs.cols + j] = mat.get(r, self.cols + j);
            }
        }
        Some(x)
    }

    /// Solve X · self = rhs exactly; None if inconsistent.
    pub fn solve_left(&self, rhs: &Self) -> Option<FpMatrix> {
        self.transpose()
            .solve(&rhs.transpose())
            .map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&FpMatrix::identity(self.p, self.rows))?;
        // solve() finds some preimage; for square full-rank systems it is
        // the unique two-sided inverse. Reject rank-deficient input.
        if self.mul(&x).is_identity() {
            Some(x)
        } else {
            None
        }
    }

    /// Columns of `self` at the pivot positions: a basis of the column space.
    pub fn column_space_basis(&self) -> FpMatrix {
        let piv = self.pivot_columns();
        self.select_columns(&piv)
    }

    /// Entry-consuming iterator in row-major order (for serialization).
    pub fn entries(&self) -> impl Iterator<Item = u8> + '_ {
        self.data.iter().copied()
    }
}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {} [", self.rows, self.cols, self.p)?;
        for i in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        if self.rows > 12 {
            writeln!(f, "  ... ({} more rows)", self.rows - 12)?;
        }
        write!(f, "]")
    }
}

/// Deterministic counter-based generator for property suites: no global
/// randomness, the counter is part of the report so runs are reproducible.
#[derive(Clone, Debug)]
pub struct CounterRng {
    state: u64,
    pub counter: u64,
}

impl CounterRng {
    pub fn new(counter: u64) -> Self {
        CounterRng {
            state: counter.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0xD1B5_4A32_D192_ED03),
            counter,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        // splitmix64 step
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    pub fn fp(&mut self, p: u16) -> u8 {
        (self.next_u64() % p as u64) as u8
    }

    pub fn matrix(&mut self, p: u16, rows: usize, cols: usize) -> FpMatrix {
        let mut m = FpMatrix::zero(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = self.fp(p);
                m.set(i, j, v as u64);
            }
        }
        m
    }

    /// Deterministic invertible matrix: retry counter-seeded samples.
    pub fn invertible(&mut self, p: u16, n: usize) -> FpMatrix {
        loop {
            let m = self.matrix(p, n, n);
            if m.rank() == n {
                return m;
            }
        }
    }
}
