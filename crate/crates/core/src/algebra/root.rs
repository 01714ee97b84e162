use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A root of unity `exp(2πi·exponent/order)`, stored additively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    order: u32,
    exponent: u32,
}

impl RootOfUnity {
    pub fn new(order: u32, exponent: i64) -> Self {
        assert!(order > 0, "root of unity of order 0");
        let exponent = exponent.rem_euclid(order as i64) as u32;
        RootOfUnity { order, exponent }
    }

    pub fn one(order: u32) -> Self {
        Self::new(order, 0)
    }

    /// `i` as a fourth root of unity.
    pub fn i() -> Self {
        Self::new(4, 1)
    }

    pub fn minus_one() -> Self {
        Self::new(2, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    /// Re-express at a multiple `n` of the current order.
    pub fn at_order(&self, n: u32) -> Self {
        assert!(n.is_multiple_of(self.order), "order {} does not divide {}", self.order, n);
        Self::new(n, (self.exponent as i64) * (n / self.order) as i64)
    }

    /// The multiplicative order of the value (not the storage order).
    pub fn multiplicative_order(&self) -> u32 {
        self.order / self.order.gcd(&self.exponent)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order.lcm(&other.order);
        let a = self.at_order(n);
        let b = other.at_order(n);
        Self::new(n, a.exponent as i64 + b.exponent as i64)
    }

    pub fn inv(&self) -> Self {
        Self::new(self.order, -(self.exponent as i64))
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(self.order, (self.exponent as i64) * k)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}^{}", self.order, self.exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_lcm_order() {
        let a = RootOfUnity::new(4, 7);
        assert_eq!(a.exponent(), 3);
        let b = RootOfUnity::new(6, 1);
        let c = a.mul(&b);
        assert_eq!(c.order(), 12);
        assert_eq!(c.exponent(), (9 + 2));
    }

    #[test]
    fn group_laws_exhaustive_small_orders() {
        for n1 in 1..=8u32 {
            for n2 in 1..=8u32 {
                for e1 in 0..n1 {
                    for e2 in 0..n2 {
                        let x = RootOfUnity::new(n1, e1 as i64);
                        let y = RootOfUnity::new(n2, e2 as i64);
                        assert_eq!(x.mul(&y), y.mul(&x));
                        assert!(x.mul(&x.inv()).is_one());
                        let z = RootOfUnity::new(3, 1);
                        assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_order() {
        assert_eq!(RootOfUnity::new(4, 2).multiplicative_order(), 2);
        assert_eq!(RootOfUnity::new(12, 8).multiplicative_order(), 3);
        assert_eq!(RootOfUnity::one(5).multiplicative_order(), 1);
    }
}
