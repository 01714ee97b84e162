//! Linear algebra over the field with two elements.
//!
//! [`F2Vector`]/[`F2Matrix`] are general bit-packed types used by the solvers;
//! [`BitMatrix`] is a compact square matrix of dimension at most 8 used as a
//! group element (GL(Y), Sp(V), ...).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        self.words.iter().zip(&other.words).fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones()) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Compact hex encoding (little-endian words), used in certificates.
    pub fn to_hex(&self) -> String {
        self.words.iter().map(|w| format!("{:016x}", w)).collect::<Vec<_>>().join("")
    }

    pub fn from_hex(len: usize, hex: &str) -> Option<Self> {
        let nwords = len.div_ceil(64);
        if hex.len() != nwords * 16 {
            return None;
        }
        let mut words = Vec::with_capacity(nwords);
        for k in 0..nwords {
            words.push(u64::from_str_radix(&hex[k * 16..(k + 1) * 16], 16).ok()?);
        }
        Some(F2Vector { len, words })
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "F2[{}]", s)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<F2Vector>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, data: vec![F2Vector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<F2Vector>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        F2Matrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| F2Vector::from_bits(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &F2Vector {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.data[i].set(j, v)
    }

    pub fn mul_vec(&self, x: &F2Vector) -> Result<F2Vector> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!("{}x{} matrix times vector of length {}", self.rows, self.cols, x.len())));
        }
        let mut y = F2Vector::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.dot(x) {
                y.set(i, true);
            }
        }
        Ok(y)
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in self.data[i].ones() {
                out.data[i].xor_assign(&other.data[k]);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.data[i].ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut e = F2Eliminator::new(self.cols);
        for r in &self.data {
            e.insert(r.clone(), false);
        }
        e.rank()
    }
}

/// Solve `M·x = rhs` over F2.
///
/// Returns a particular solution (free variables set to zero) when the system is
/// consistent, together with a basis of `ker M`. Pivots are chosen lowest column first.
pub fn solve_f2(m: &F2Matrix, rhs: &F2Vector) -> Result<(Option<F2Vector>, Vec<F2Vector>)> {
    if rhs.len() != m.rows() {
        return Err(Error::Dimension(format!("{} rows but right-hand side of length {}", m.rows(), rhs.len())));
    }
    let mut e = F2Eliminator::new(m.cols());
    let mut consistent = true;
    for i in 0..m.rows() {
        if e.insert(m.row(i).clone(), rhs.get(i)) == Insert::Inconsistent {
            consistent = false;
        }
    }
    let x = if consistent { Some(e.particular_solution()) } else { None };
    Ok((x, e.nullspace()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The equation added a new pivot.
    Pivot,
    /// The equation was a consequence of earlier ones.
    Redundant,
    /// The equation reduced to `0 = 1`.
    Inconsistent,
}

/// Incremental Gaussian elimination over F2 for `row·x = rhs` equations.
///
/// Each stored row has a distinct pivot (its lowest set bit). Every stored row also
/// carries a provenance bitset over the *inserted* equations, so an inconsistency
/// can be traced back to a small set of input equations.
#[derive(Clone, Debug)]
pub struct F2Eliminator {
    ncols: usize,
    rows: Vec<(F2Vector, bool, Vec<u64>)>,
    pivot_of_col: Vec<Option<usize>>,
    track: bool,
    inserted: usize,
}

impl F2Eliminator {
    pub fn new(ncols: usize) -> Self {
        F2Eliminator { ncols, rows: Vec::new(), pivot_of_col: vec![None; ncols], track: false, inserted: 0 }
    }

    /// Like [`F2Eliminator::new`] but tracks which inserted equations combine into each row.
    pub fn with_provenance(ncols: usize, max_equations: usize) -> Self {
        let mut e = Self::new(ncols);
        e.track = true;
        e.inserted = 0;
        e.rows.reserve(ncols.min(max_equations));
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &mut F2Vector, rhs: &mut bool, prov: &mut Vec<u64>) {
        while let Some(p) = row.first_one() {
            match self.pivot_of_col[p] {
                Some(k) => {
                    let (r, b, pv) = &self.rows[k];
                    row.xor_assign(r);
                    *rhs ^= *b;
                    if self.track {
                        if prov.len() < pv.len() {
                            prov.resize(pv.len(), 0);
                        }
                        for (a, b) in prov.iter_mut().zip(pv) {
                            *a ^= b;
                        }
                    }
                }
                None => return,
            }
        }
    }

    /// Insert one equation. With provenance tracking, returns the provenance of a
    /// contradiction via [`F2Eliminator::insert_traced`].
    pub fn insert(&mut self, row: F2Vector, rhs: bool) -> Insert {
        self.insert_traced(row, rhs).0
    }

    /// Insert and, on inconsistency, return the indices (in insertion order) of the
    /// equations whose sum is `0 = 1`.
    pub fn insert_traced(&mut self, mut row: F2Vector, mut rhs: bool) -> (Insert, Option<Vec<usize>>) {
        assert_eq!(row.len(), self.ncols);
        let slot = self.inserted;
        self.inserted += 1;
        let mut prov = Vec::new();
        if self.track {
            prov = vec![0u64; (slot / 64) + 1];
            prov[slot / 64] |= 1 << (slot % 64);
        }
        self.reduce(&mut row, &mut rhs, &mut prov);
        match row.first_one() {
            Some(p) => {
                self.pivot_of_col[p] = Some(self.rows.len());
                self.rows.push((row, rhs, prov));
                (Insert::Pivot, None)
            }
            None if rhs => {
                let trace = if self.track {
                    let mut ids = Vec::new();
                    for (wi, &w) in prov.iter().enumerate() {
                        let mut w = w;
                        while w != 0 {
                            ids.push(wi * 64 + w.trailing_zeros() as usize);
                            w &= w - 1;
                        }
                    }
                    Some(ids)
                } else {
                    None
                };
                (Insert::Inconsistent, trace)
            }
            None => (Insert::Redundant, None),
        }
    }

    /// Solution with all free variables zero (back substitution in decreasing pivot order).
    pub fn particular_solution(&self) -> F2Vector {
        self.solve_with_free(&F2Vector::zeros(self.ncols))
    }

    fn solve_with_free(&self, free: &F2Vector) -> F2Vector {
        let mut x = free.clone();
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(self.rows[k].0.first_one().unwrap()));
        for k in order {
            let (r, b, _) = &self.rows[k];
            let p = r.first_one().unwrap();
            x.set(p, false);
            let v = *b ^ r.dot(&x);
            x.set(p, v);
        }
        x
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_of_col[c].is_none()).collect()
    }

    /// Basis of the solution space of the homogeneous system, one vector per free column.
    pub fn nullspace(&self) -> Vec<F2Vector> {
        let mut homogeneous = self.clone();
        for row in homogeneous.rows.iter_mut() {
            row.1 = false;
        }
        self.free_columns()
            .into_iter()
            .map(|f| homogeneous.solve_with_free(&F2Vector::unit(self.ncols, f)))
            .collect()
    }
}

/// A square matrix over F2 of dimension at most 8, packed one byte per row.
///
/// Acts on column vectors packed into a `u8` (bit `j` is coordinate `j`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitMatrix {
    dim: u8,
    bits: u64,
}

impl BitMatrix {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 8, "BitMatrix dimension {dim} > 8");
        BitMatrix { dim: dim as u8, bits: 0 }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(dim: usize, rows: &[u8]) -> Self {
        let mut m = Self::zero(dim);
        for (i, &r) in rows.iter().enumerate() {
            m.bits |= (r as u64) << (8 * i);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn raw(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn row(&self, i: usize) -> u8 {
        (self.bits >> (8 * i)) as u8
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.row(i) >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let bit = 1u64 << (8 * i + j);
        if v {
            self.bits |= bit;
        } else {
            self.bits &= !bit;
        }
    }

    #[inline]
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = 0u64;
        for i in 0..self.dim as usize {
            let mut r = self.row(i);
            let mut acc = 0u8;
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                acc ^= other.row(j);
                r &= r - 1;
            }
            out |= (acc as u64) << (8 * i);
        }
        BitMatrix { dim: self.dim, bits: out }
    }

    #[inline]
    pub fn apply(&self, v: u8) -> u8 {
        let mut out = 0u8;
        for i in 0..self.dim as usize {
            out |= (((self.row(i) & v).count_ones() & 1) as u8) << i;
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        BitMatrix { dim: self.dim, bits: self.bits ^ other.bits }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zero(self.dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.dim();
        let mut a: Vec<u8> = (0..n).map(|i| self.row(i)).collect();
        let mut b: Vec<u8> = (0..n).map(|i| 1u8 << i).collect();
        for c in 0..n {
            let p = (c..n).find(|&r| (a[r] >> c) & 1 == 1)?;
            a.swap(c, p);
            b.swap(c, p);
            for r in 0..n {
                if r != c && (a[r] >> c) & 1 == 1 {
                    a[r] ^= a[c];
                    b[r] ^= b[c];
                }
            }
        }
        Some(BitMatrix::from_rows(n, &b))
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Block extraction for a `2n×2n` matrix: `(top-left, top-right, bottom-left, bottom-right)`.
    pub fn blocks(&self) -> (BitMatrix, BitMatrix, BitMatrix, BitMatrix) {
        let n = self.dim() / 2;
        let mut out = [BitMatrix::zero(n); 4];
        for i in 0..2 * n {
            for j in 0..2 * n {
                if self.get(i, j) {
                    out[2 * (i / n) + j / n].set(i % n, j % n, true);
                }
            }
        }
        (out[0], out[1], out[2], out[3])
    }

    pub fn from_blocks(a: &BitMatrix, b: &BitMatrix, c: &BitMatrix, d: &BitMatrix) -> BitMatrix {
        let n = a.dim();
        let mut m = BitMatrix::zero(2 * n);
        for (k, blk) in [a, b, c, d].iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    if blk.get(i, j) {
                        m.set(i + n * (k / 2), j + n * (k % 2), true);
                    }
                }
            }
        }
        m
    }

    /// Row-wise bit string, e.g. `[10|01]`.
    pub fn to_text(&self) -> String {
        let rows: Vec<String> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect();
        format!("[{}]", rows.join("|"))
    }

    pub fn parse(text: &str) -> Option<BitMatrix> {
        let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?;
        let rows: Vec<&str> = inner.split('|').collect();
        let n = rows.len();
        if n > 8 {
            return None;
        }
        let mut m = BitMatrix::zero(n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return None;
            }
            for (j, ch) in r.chars().enumerate() {
                match ch {
                    '1' => m.set(i, j, true),
                    '0' => {}
                    _ => return None,
                }
            }
        }
        Some(m)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
