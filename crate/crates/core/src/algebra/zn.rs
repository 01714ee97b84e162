//! Linear algebra over Z/N for arbitrary N, including zero divisors.
//!
//! Everything reduces to the Howell form of a matrix: an echelon form over Z/N in
//! which, for every j, the rows with zeros in the first j columns span all row
//! combinations with that property. Kernels, particular solutions, lexicographically
//! least solutions and inconsistency certificates all read off it directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZnVector {
    pub modulus: u32,
    pub entries: Vec<u32>,
}

impl ZnVector {
    pub fn new(modulus: u32, entries: Vec<i64>) -> Self {
        let m = modulus as i64;
        ZnVector { modulus, entries: entries.into_iter().map(|e| e.rem_euclid(m) as u32).collect() }
    }

    pub fn zeros(modulus: u32, len: usize) -> Self {
        ZnVector { modulus, entries: vec![0; len] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &ZnVector) -> ZnVector {
        let n = self.modulus as u64;
        ZnVector {
            modulus: self.modulus,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| ((a as u64 + b as u64) % n) as u32).collect(),
        }
    }

    pub fn scale(&self, t: u32) -> ZnVector {
        let n = self.modulus as u64;
        ZnVector { modulus: self.modulus, entries: self.entries.iter().map(|&a| ((a as u64 * t as u64) % n) as u32).collect() }
    }

    pub fn dot(&self, other: &[u32]) -> u32 {
        let n = self.modulus as u64;
        (self.entries.iter().zip(other).map(|(&a, &b)| (a as u64 * b as u64) % n).sum::<u64>() % n) as u32
    }
}

/// `M·x mod N` for a row-major matrix.
pub fn mat_vec(m: &[Vec<u32>], x: &[u32], n: u32) -> Vec<u32> {
    let n = n as u64;
    m.iter().map(|row| (row.iter().zip(x).map(|(&a, &b)| a as u64 * b as u64 % n).sum::<u64>() % n) as u32).collect()
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A unit `u` of Z/N with `a·u ≡ gcd(a, N)`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    let g = gcd(a, n);
    let (a1, n1) = (a / g, n / g);
    let u0 = if n1 == 1 {
        0
    } else {
        let (_, x, _) = ext_gcd(a1 as i64, n1 as i64);
        x.rem_euclid(n1 as i64) as u64
    };
    let mut u = u0;
    while gcd(u, n) != 1 {
        u += n1;
    }
    u % n
}

/// Howell form of `rows` over Z/N, pivoting only in the first `pivot_cols` columns.
///
/// Returns the reduced rows (all-zero rows dropped) and the pivot column of each of the
/// leading pivot rows. Rows after the pivot rows vanish on the first `pivot_cols` columns
/// and span every row combination with that property.
pub fn howell_form(rows: Vec<Vec<u32>>, pivot_cols: usize, n: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let nn = n as u64;
    let mut rows: Vec<Vec<u64>> =
        rows.into_iter().map(|r| r.into_iter().map(|e| e as u64 % nn).collect()).collect();
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..pivot_cols {
        if r >= rows.len() {
            break;
        }
        for s in r + 1..rows.len() {
            let b = rows[s][c];
            if b == 0 {
                continue;
            }
            let a = rows[r][c];
            if a == 0 {
                rows.swap(r, s);
                continue;
            }
            let (g, p, q) = ext_gcd(a as i64, b as i64);
            let (p, q) = (p.rem_euclid(nn as i64) as u64, q.rem_euclid(nn as i64) as u64);
            let (bg, ag) = ((b as i64 / g) as u64 % nn, (a as i64 / g) as u64 % nn);
            for j in c..width {
                let (x, y) = (rows[r][j], rows[s][j]);
                rows[r][j] = (p * x + q * y) % nn;
                rows[s][j] = (bg * x + (nn - ag) * y) % nn;
            }
        }
        let a = rows[r][c];
        if a == 0 {
            continue;
        }
        let u = normalizing_unit(a, nn);
        for j in c..width {
            rows[r][j] = rows[r][j] * u % nn;
        }
        let g = rows[r][c];
        for t in 0..r {
            let q = rows[t][c] / g;
            if q != 0 {
                for j in c..width {
                    rows[t][j] = (rows[t][j] + (nn - q) * rows[r][j] % nn) % nn;
                }
            }
        }
        let ann: Vec<u64> = rows[r].iter().map(|&e| e * (nn / g) % nn).collect();
        if ann.iter().any(|&e| e != 0) {
            rows.push(ann);
        }
        pivots.push(c);
        r += 1;
    }
    // Reduce the trailing rows, which may still need their own echelon structure in the
    // carried columns only for the caller's purposes; here we only drop zeros.
    let out: Vec<Vec<u32>> = rows
        .into_iter()
        .filter(|row| row.iter().any(|&e| e != 0))
        .map(|row| row.into_iter().map(|e| e as u32).collect())
        .collect();
    (out, pivots)
}

/// Reduce `x` to the lexicographically least element of `x + span(gens)` (first
/// coordinate most significant).
pub fn lex_min(x: &[u32], gens: &[Vec<u32>], n: u32) -> Vec<u32> {
    let k = x.len();
    let (h, pivots) = howell_form(gens.to_vec(), k, n);
    let nn = n as u64;
    let mut x: Vec<u64> = x.iter().map(|&e| e as u64).collect();
    for (row, &c) in h.iter().zip(&pivots) {
        let d = row[c] as u64;
        let t = x[c] / d;
        if t != 0 {
            for j in c..k {
                x[j] = (x[j] + (nn - t) * row[j] as u64 % nn) % nn;
            }
        }
    }
    x.into_iter().map(|e| e as u32).collect()
}

/// Solution of `M·x ≡ rhs (mod N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZnSolution {
    /// Lexicographically least solution, if any.
    pub solution: Option<ZnVector>,
    /// Generators of the kernel of `M`.
    pub kernel: Vec<ZnVector>,
}

fn check_shape(m: &[Vec<u32>], rhs_len: usize, cols: usize) -> Result<()> {
    if m.len() != rhs_len {
        return Err(Error::Dimension(format!("{} equations but right-hand side of length {}", m.len(), rhs_len)));
    }
    if let Some(r) = m.iter().find(|r| r.len() != cols) {
        return Err(Error::Dimension(format!("ragged matrix: row of length {} vs {}", r.len(), cols)));
    }
    Ok(())
}

/// Solve `M·x ≡ rhs (mod N)` where `M` has `cols` columns.
pub fn solve_zn(m: &[Vec<u32>], cols: usize, rhs: &ZnVector) -> Result<ZnSolution> {
    let n = rhs.modulus;
    if n == 0 {
        return Err(Error::Contract("modulus must be positive".into()));
    }
    check_shape(m, rhs.len(), cols)?;
    let rows_m = m.len();
    let nn = n as u64;
    // Row j of [Mᵀ | I] is (M·e_j, e_j); row operations keep the shape (M·x, x).
    let t: Vec<Vec<u32>> = (0..cols)
        .map(|j| {
            let mut row: Vec<u32> = m.iter().map(|r| r[j] % n).collect();
            row.extend((0..cols).map(|i| (i == j) as u32));
            row
        })
        .collect();
    let (h, pivots) = howell_form(t, rows_m, n);
    let npiv = pivots.len();
    let kernel: Vec<ZnVector> =
        h[npiv..].iter().map(|row| ZnVector { modulus: n, entries: row[rows_m..].to_vec() }).collect();

    let mut b: Vec<u64> = rhs.entries.iter().map(|&e| e as u64 % nn).collect();
    let mut x = vec![0u64; cols];
    let mut consistent = true;
    let mut next_pivot = 0usize;
    for c in 0..rows_m {
        if b[c] == 0 {
            if next_pivot < npiv && pivots[next_pivot] == c {
                next_pivot += 1;
            }
            continue;
        }
        if next_pivot < npiv && pivots[next_pivot] == c {
            let row = &h[next_pivot];
            let d = row[c] as u64;
            next_pivot += 1;
            if !b[c].is_multiple_of(d) {
                consistent = false;
                break;
            }
            let t = b[c] / d;
            for j in c..rows_m {
                b[j] = (b[j] + (nn - t) * row[j] as u64 % nn) % nn;
            }
            for j in 0..cols {
                x[j] = (x[j] + t * row[rows_m + j] as u64) % nn;
            }
        } else {
            consistent = false;
            break;
        }
    }
    let solution = if consistent {
        let x: Vec<u32> = x.into_iter().map(|e| e as u32).collect();
        let gens: Vec<Vec<u32>> = kernel.iter().map(|k| k.entries.clone()).collect();
        Some(ZnVector { modulus: n, entries: lex_min(&x, &gens, n) })
    } else {
        None
    };
    Ok(ZnSolution { solution, kernel })
}

/// For an inconsistent system, a vector `y` with `y·M ≡ 0` and `y·rhs ≢ 0`.
pub fn inconsistency_certificate(m: &[Vec<u32>], cols: usize, rhs: &ZnVector) -> Result<Option<ZnVector>> {
    let n = rhs.modulus;
    check_shape(m, rhs.len(), cols)?;
    let rows = m.len();
    let aug: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<u32> = r.iter().map(|&e| e % n).collect();
            row.push(rhs.entries[i] % n);
            row.extend((0..rows).map(|j| (i == j) as u32));
            row
        })
        .collect();
    let (h, pivots) = howell_form(aug, cols, n);
    Ok(h[pivots.len()..]
        .iter()
        .find(|row| row[cols] != 0)
        .map(|row| ZnVector { modulus: n, entries: row[cols + 1..].to_vec() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn forced_zero_divisor() {
        let s = solve_zn(&[vec![2]], 1, &ZnVector::new(4, vec![2])).unwrap();
        let x = s.solution.unwrap();
        assert!(x.entries == vec![1] || x.entries == vec![3]);
        assert_eq!(x.entries, vec![1]);
        assert_eq!(s.kernel.len(), 1);
        assert_eq!(s.kernel[0].entries, vec![2]);
    }

    #[test]
    fn unsolvable_half() {
        let m = [vec![2]];
        let rhs = ZnVector::new(4, vec![1]);
        assert!(solve_zn(&m, 1, &rhs).unwrap().solution.is_none());
        let y = inconsistency_certificate(&m, 1, &rhs).unwrap().unwrap();
        assert_eq!(mat_vec(&[vec![2]], &y.entries, 4), vec![0]);
        assert_ne!(y.dot(&rhs.entries), 0);
    }

    #[test]
    fn identity_mod_four() {
        let s = solve_zn(&[vec![1, 0], vec![0, 1]], 2, &ZnVector::new(4, vec![3, 2])).unwrap();
        assert_eq!(s.solution.unwrap().entries, vec![3, 2]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(solve_zn(&[vec![1, 0]], 2, &ZnVector::new(4, vec![1, 1])), Err(Error::Dimension(_))));
        assert!(solve_zn(&[vec![1]], 2, &ZnVector::new(4, vec![1])).is_err());
    }

    fn span_size(gens: &[ZnVector], n: u32, k: usize) -> usize {
        let mut seen = std::collections::HashSet::new();
        seen.insert(vec![0u32; k]);
        let mut frontier = vec![vec![0u32; k]];
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w: Vec<u32> = v.iter().zip(&g.entries).map(|(a, b)| (a + b) % n).collect();
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn random_systems_against_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &n in &[4u32, 6, 8, 9, 2] {
            for _ in 0..60 {
                let k = 4;
                let m: Vec<Vec<u32>> = (0..4).map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect()).collect();
                let rhs = ZnVector { modulus: n, entries: (0..4).map(|_| rng.gen_range(0..n)).collect() };
                let s = solve_zn(&m, k, &rhs).unwrap();
                let mut best: Option<Vec<u32>> = None;
                let mut kernel = 0;
                let total = (n as usize).pow(k as u32);
                for code in 0..total {
                    let mut c = code;
                    let x: Vec<u32> = (0..k)
                        .map(|_| {
                            let d = (c % n as usize) as u32;
                            c /= n as usize;
                            d
                        })
                        .collect();
                    let y = mat_vec(&m, &x, n);
                    if y == rhs.entries && best.as_ref().is_none_or(|b| x < *b) {
                        best = Some(x.clone());
                    }
                    if y.iter().all(|&e| e == 0) {
                        kernel += 1;
                    }
                }
                for g in &s.kernel {
                    assert!(mat_vec(&m, &g.entries, n).iter().all(|&e| e == 0));
                }
                assert_eq!(span_size(&s.kernel, n, k), kernel, "kernel size mod {n}");
                assert_eq!(s.solution.as_ref().map(|x| x.entries.clone()), best);
                if s.solution.is_none() {
                    let y = inconsistency_certificate(&m, k, &rhs).unwrap().expect("certificate");
                    for j in 0..k {
                        let col: Vec<u32> = m.iter().map(|r| r[j]).collect();
                        assert_eq!(y.dot(&col), 0);
                    }
                    assert_ne!(y.dot(&rhs.entries), 0);
                }
            }
        }
    }
}
