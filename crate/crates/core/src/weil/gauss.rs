//! Gaussian integers and square matrices over them, compared up to a nonzero scalar.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Gauss {
    pub re: i64,
    pub im: i64,
}

impl Gauss {
    pub const ZERO: Gauss = Gauss { re: 0, im: 0 };
    pub const ONE: Gauss = Gauss { re: 1, im: 0 };

    /// `i^k`.
    pub fn unit(k: u32) -> Gauss {
        [Gauss { re: 1, im: 0 }, Gauss { re: 0, im: 1 }, Gauss { re: -1, im: 0 }, Gauss { re: 0, im: -1 }][(k % 4) as usize]
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn conj(self) -> Gauss {
        Gauss { re: self.re, im: -self.im }
    }

    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    /// Inverse of a unit `±1, ±i`.
    pub fn unit_inverse(self) -> Option<Gauss> {
        (self.norm() == 1).then(|| self.conj())
    }
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, o: Gauss) -> Gauss {
        Gauss { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, o: Gauss) -> Gauss {
        Gauss { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -self.re, im: -self.im }
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, o: Gauss) -> Gauss {
        Gauss { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (r, 0) => write!(f, "{r}"),
            (0, i) => write!(f, "{i}i"),
            (r, i) if i < 0 => write!(f, "{r}{i}i"),
            (r, i) => write!(f, "{r}+{i}i"),
        }
    }
}

/// A square matrix over `Z[i]`, read as an operator up to scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub dim: usize,
    pub entries: Vec<Gauss>,
}

impl Operator {
    pub fn zero(dim: usize) -> Self {
        Operator { dim, entries: vec![Gauss::ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Gauss::ONE;
        }
        m
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        Operator { dim, entries: rows.iter().flat_map(|r| r.iter().map(|&x| Gauss { re: x, im: 0 })).collect() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Gauss {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Gauss) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn mul(&self, o: &Operator) -> Operator {
        let n = self.dim;
        let mut out = Operator::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] = out.entries[i * n + j] + a * b;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Gauss) -> Operator {
        Operator { dim: self.dim, entries: self.entries.iter().map(|&x| x * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// `self = c·other` for some nonzero `c`.
    pub fn proportional(&self, other: &Operator) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let Some(a) = self.entries.iter().position(|x| !x.is_zero()) else { return false };
        let (sa, oa) = (self.entries[a], other.entries[a]);
        if oa.is_zero() {
            return false;
        }
        self.entries.iter().zip(&other.entries).all(|(&s, &o)| s * oa == o * sa)
    }

    /// Determinant by fraction-free elimination over `Q(i)`, returned as a Gaussian rational
    /// `(numerator, denominator)`; only its vanishing is used.
    pub fn determinant_is_zero(&self) -> bool {
        // Elimination with Gaussian-rational pivots, kept as integers by cross-multiplying.
        let n = self.dim;
        let mut m: Vec<Vec<Gauss>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return true };
            m.swap(c, p);
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let (a, b) = (m[c][c], m[r][c]);
                for j in c..n {
                    m[r][j] = m[r][j] * a - m[c][j] * b;
                }
                // Keep entries small: divide out a common rational content.
                let g = m[r][c..].iter().fold(0i64, |acc, x| gcd(gcd(acc, x.re.abs()), x.im.abs()));
                if g > 1 {
                    for x in m[r][c..].iter_mut() {
                        *x = Gauss { re: x.re / g, im: x.im / g };
                    }
                }
            }
        }
        false
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Solve `L_t·X = X·R_t` for all pairs, where every `L_t`, `R_t` is monomial with unit
/// entries. Each scalar equation then links two unknowns by a unit ratio, so the solution
/// space is found by propagating ratios over connected components. Returns the solution
/// space dimension and, when it is 1, a solution with entries in `{0, ±1, ±i}`.
pub fn solve_monomial_intertwiner(dim: usize, pairs: &[(Operator, Operator)]) -> Result<(usize, Option<Operator>), String> {
    let idx = |i: usize, j: usize| i * dim + j;
    let unknowns = dim * dim;
    let mut adj: Vec<Vec<(usize, Gauss)>> = vec![Vec::new(); unknowns];
    let mut forced_zero = vec![false; unknowns];
    for (l, r) in pairs {
        let row_of = |m: &Operator, i: usize| -> Result<(usize, Gauss), String> {
            let mut it = (0..dim).filter(|&k| !m.get(i, k).is_zero());
            let k = it.next().ok_or("singular monomial factor")?;
            if it.next().is_some() {
                return Err("factor is not monomial".into());
            }
            Ok((k, m.get(i, k)))
        };
        let col_of = |m: &Operator, j: usize| -> Result<(usize, Gauss), String> {
            let mut it = (0..dim).filter(|&k| !m.get(k, j).is_zero());
            let k = it.next().ok_or("singular monomial factor")?;
            if it.next().is_some() {
                return Err("factor is not monomial".into());
            }
            Ok((k, m.get(k, j)))
        };
        for i in 0..dim {
            let (k, a) = row_of(l, i)?;
            for j in 0..dim {
                // (L X)_{ij} = a·X_{kj};  (X R)_{ij} = b·X_{i m}.
                let (m, b) = col_of(r, j)?;
                let (p, q) = (idx(k, j), idx(i, m));
                let ua = a.unit_inverse().ok_or("non-unit entry")?;
                // X_p = (b / a)·X_q
                let ratio = b * ua;
                if p == q {
                    if ratio != Gauss::ONE {
                        forced_zero[p] = true;
                    }
                } else {
                    adj[q].push((p, ratio));
                    adj[p].push((q, ratio.unit_inverse().ok_or("non-unit entry")?));
                }
            }
        }
    }
    let mut value: Vec<Option<Gauss>> = vec![None; unknowns];
    let mut comps: Vec<(Vec<usize>, bool)> = Vec::new();
    for start in 0..unknowns {
        if value[start].is_some() {
            continue;
        }
        value[start] = Some(Gauss::ONE);
        let mut members = vec![start];
        let mut stack = vec![start];
        let mut ok = true;
        while let Some(q) = stack.pop() {
            let vq = value[q].unwrap();
            if forced_zero[q] {
                ok = false;
            }
            for &(p, ratio) in &adj[q] {
                let vp = ratio * vq;
                match value[p] {
                    None => {
                        value[p] = Some(vp);
                        members.push(p);
                        stack.push(p);
                    }
                    Some(existing) if existing != vp => ok = false,
                    _ => {}
                }
            }
        }
        comps.push((members, ok));
    }
    let live: Vec<&(Vec<usize>, bool)> = comps.iter().filter(|c| c.1).collect();
    if live.len() != 1 {
        return Ok((live.len(), None));
    }
    let mut x = Operator::zero(dim);
    for &p in &live[0].0 {
        x.entries[p] = value[p].unwrap();
    }
    Ok((1, Some(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportionality_and_determinant() {
        let h = Operator::from_rows(&[&[1, 1], &[1, -1]]);
        assert!(h.proportional(&h.scale(Gauss::unit(1))));
        assert!(!h.proportional(&Operator::identity(2)));
        assert!(!h.determinant_is_zero());
        assert!(Operator::from_rows(&[&[1, 1], &[1, 1]]).determinant_is_zero());
    }

    #[test]
    fn commutant_of_a_swap() {
        // X commuting with [[0,1],[1,0]] is a·I + b·swap: dimension 2.
        let s = Operator::from_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(solve_monomial_intertwiner(2, &[(s.clone(), s)]).unwrap().0, 2);
    }
}
