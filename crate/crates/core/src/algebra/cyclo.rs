//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are coefficient vectors over the power basis `1, ζ, …, ζ^{φ(N)-1}`
//! reduced modulo the N-th cyclotomic polynomial. Field data (the polynomial and
//! the reductions of `ζ^k`, `k < N`) is cached per conductor.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::root::RootOfUnity;

struct CycloField {
    degree: usize,
    /// `powers[k]` is `ζ^k` in the power basis, for `0 <= k < N`.
    powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both given low-degree first; den monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut q = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn field(n: u32) -> Arc<CycloField> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return f.clone();
    }
    let phi = cyclotomic_poly(n);
    let degree = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[degree - 1];
        let mut next = vec![0i64; degree];
        for j in (1..degree).rev() {
            next[j] = cur[j - 1];
        }
        if degree == 1 {
            next[0] = 0;
        }
        for (j, coeff) in next.iter_mut().enumerate() {
            *coeff -= top * phi[j];
        }
        cur = next;
    }
    let f = Arc::new(CycloField { degree, powers });
    cache.lock().unwrap().insert(n, f.clone());
    f
}

/// An element of `Q(ζ_N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycloNumber {
    pub fn zero(conductor: u32) -> Self {
        let d = field(conductor).degree;
        CycloNumber { conductor, coeffs: vec![BigRational::zero(); d] }
    }

    pub fn from_integer(conductor: u32, value: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(conductor: u32, value: BigRational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = value;
        z
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_integer(conductor, 1)
    }

    /// `ζ_N^k`.
    pub fn zeta_power(conductor: u32, k: i64) -> Self {
        let f = field(conductor);
        let k = k.rem_euclid(conductor as i64) as usize;
        CycloNumber {
            conductor,
            coeffs: f.powers[k].iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }

    /// Embed a root of unity whose order divides `conductor`.
    pub fn from_root(conductor: u32, r: &RootOfUnity) -> Self {
        let r = r.at_order(conductor);
        Self::zeta_power(conductor, r.exponent() as i64)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.conductor, other.conductor, "mixed cyclotomic conductors");
    }

    /// Re-express in `Q(ζ_M)` for a multiple `M` of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.conductor), "conductor {} does not divide {}", self.conductor, m);
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as i64;
        let mut out = Self::zero(m);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out + Self::zeta_power(m, j as i64 * step).scale(c);
            }
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        CycloNumber { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.conductor);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out + Self::zeta_power(self.conductor, -(j as i64)).scale(c);
            }
        }
        out
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.coeffs.len();
        // columns: self * ζ^j
        let cols: Vec<CycloNumber> =
            (0..d).map(|j| self * &Self::zeta_power(self.conductor, j as i64)).collect();
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coeffs[r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        let x = solve_rational(&mut m, d)?;
        Some(CycloNumber { conductor: self.conductor, coeffs: x })
    }

    /// If the value is a root of unity, return it (as an element of `μ_{lcm(2,N)}`).
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        let n = self.conductor.lcm(&2);
        let lifted = self.lift(n);
        (0..n).find(|&k| Self::zeta_power(n, k as i64) == lifted).map(|k| RootOfUnity::new(n, k as i64))
    }

    /// Exact integer value when the element is rational and integral.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().any(|c| !c.is_zero()) || !self.coeffs[0].is_integer() {
            return None;
        }
        Some(self.coeffs[0].to_integer())
    }

    /// Nonzero rational multiple test: returns `s` with `self = s·other`.
    pub fn ratio(&self, other: &Self) -> Option<Self> {
        self.check_same(other);
        let inv = other.inverse()?;
        Some(self * &inv)
    }
}

fn solve_rational(m: &mut [Vec<BigRational>], n: usize) -> Option<Vec<BigRational>> {
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, pv) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *v = &*v - &(&f * pv);
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}

impl Add for CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same(rhs);
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same(rhs);
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> Self {
        CycloNumber { conductor: self.conductor, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same(rhs);
        let f = field(self.conductor);
        let n = self.conductor as usize;
        let d = f.degree;
        let mut acc = vec![BigRational::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                for (k, &p) in f.powers[(i + j) % n].iter().enumerate() {
                    if p != 0 {
                        acc[k] += &prod * BigRational::from_integer(p.into());
                    }
                }
            }
        }
        CycloNumber { conductor: self.conductor, coeffs: acc }
    }
}

impl Mul for CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match j {
                0 => write!(f, "{}", a)?,
                _ if a.is_one() => write!(f, "z{}^{}", self.conductor, j)?,
                _ => write!(f, "{}*z{}^{}", a, self.conductor, j)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycloNumber::zeta_power(4, 1);
        assert_eq!(&i * &i, CycloNumber::from_integer(4, -1));
        assert_eq!(i.conj(), CycloNumber::zeta_power(4, 3));
    }

    #[test]
    fn root_embedding_is_multiplicative() {
        for n in 1..=16u32 {
            for a in 0..n {
                for b in 0..n {
                    let ra = RootOfUnity::new(n, a as i64);
                    let rb = RootOfUnity::new(n, b as i64);
                    let lhs = CycloNumber::from_root(n, &ra.mul(&rb));
                    let rhs = &CycloNumber::from_root(n, &ra) * &CycloNumber::from_root(n, &rb);
                    assert_eq!(lhs, rhs, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for n in 2..=12u32 {
            let mut s = CycloNumber::zero(n);
            for k in 0..n {
                s = s + CycloNumber::zeta_power(n, k as i64);
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn inverse_and_lift() {
        let x = CycloNumber::from_integer(8, 2) + CycloNumber::zeta_power(8, 1);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        let y = CycloNumber::zeta_power(4, 1).lift(8);
        assert_eq!(y, CycloNumber::zeta_power(8, 2));
        assert!(CycloNumber::zero(5).inverse().is_none());
    }

    #[test]
    fn root_detection() {
        let x = -CycloNumber::zeta_power(3, 1);
        let r = x.as_root_of_unity().unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(CycloNumber::from_root(6, &r), x.lift(6));
        assert!(CycloNumber::from_integer(4, 2).as_root_of_unity().is_none());
    }
}
