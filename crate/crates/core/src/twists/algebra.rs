//! Elements of `C[A]` and `C[A]⊗C[A]` for a finite abelian group `A`, and the dictionary
//! between twists and 2-cocycles on `A∨`.
//!
//! Characters are indexed by `A` through the dot pairing. The idempotent attached to `χ`
//! is `E_χ = |A|⁻¹ Σ_a χ(a)⁻¹ a`, normalized so that `ψ(E_χ) = δ_{χψ}`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::CycloNumber;
use crate::cohomology::{Coeff, Cochain2};
use crate::error::{Error, Result};
use crate::groups::AbelianGroup;

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn inv_order(a: &AbelianGroup) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(a.order() as u64))
}

/// An element of `C[A]` with coefficients in `Q(ζ_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub group: AbelianGroup,
    pub coeffs: Vec<CycloNumber>,
}

impl GroupAlgebraElement {
    pub fn zero(group: AbelianGroup, conductor: u32) -> Self {
        let n = group.order();
        GroupAlgebraElement { group, coeffs: vec![CycloNumber::zero(conductor); n] }
    }

    pub fn basis(group: AbelianGroup, conductor: u32, a: usize) -> Self {
        let mut e = Self::zero(group, conductor);
        e.coeffs[a] = CycloNumber::one(conductor);
        e
    }

    pub fn conductor(&self) -> u32 {
        self.coeffs[0].conductor()
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect();
        GroupAlgebraElement { group: self.group.clone(), coeffs }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.group.clone(), self.conductor());
        for (a, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in other.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let ab = self.group.add(a, b);
                out.coeffs[ab] = &out.coeffs[ab] + &(x * y);
            }
        }
        out
    }

    /// The idempotent `E_χ` for the character indexed by `x`.
    pub fn idempotent(group: AbelianGroup, conductor: u32, x: usize) -> Self {
        let n = group.exponent();
        let m = lcm(conductor, n);
        let scale = inv_order(&group);
        let coeffs = (0..group.order())
            .map(|a| CycloNumber::zeta_power(m, -((group.dot(x, a) * (m / n)) as i64)).scale(&scale))
            .collect();
        GroupAlgebraElement { group, coeffs }
    }

    /// Values `χ_x(self)` for every character.
    pub fn fourier(&self) -> Vec<CycloNumber> {
        let a = &self.group;
        let n = a.exponent();
        let m = lcm(self.conductor(), n);
        let coeffs: Vec<CycloNumber> = self.coeffs.iter().map(|c| c.lift(m)).collect();
        (0..a.order())
            .map(|x| {
                coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(CycloNumber::zero(m), |acc, (b, c)| {
                    acc + c * &CycloNumber::zeta_power(m, (a.dot(x, b) * (m / n)) as i64)
                })
            })
            .collect()
    }

    /// Inverse of [`fourier`](Self::fourier).
    pub fn from_fourier(group: AbelianGroup, values: &[CycloNumber]) -> Self {
        let n = group.exponent();
        let m = lcm(values[0].conductor(), n);
        let scale = inv_order(&group);
        let values: Vec<CycloNumber> = values.iter().map(|v| v.lift(m)).collect();
        let coeffs = (0..group.order())
            .map(|b| {
                values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .fold(CycloNumber::zero(m), |acc, (x, v)| acc + v * &CycloNumber::zeta_power(m, -((group.dot(x, b) * (m / n)) as i64)))
                    .scale(&scale)
            })
            .collect();
        GroupAlgebraElement { group, coeffs }
    }
}

/// An element of `C[A]⊗C[A]`, stored as coefficients of `a⊗b` (row-major in `(a,b)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistTensor {
    pub group: AbelianGroup,
    pub coeffs: Vec<CycloNumber>,
}

/// One-dimensional discrete Fourier transform along an axis of a square table.
fn transform(a: &AbelianGroup, table: &[CycloNumber], m: u32, sign: i64, axis: usize) -> Vec<CycloNumber> {
    let size = a.order();
    let n = a.exponent();
    let at = |p: usize, q: usize| if axis == 0 { p * size + q } else { q * size + p };
    let mut out = vec![CycloNumber::zero(m); size * size];
    for q in 0..size {
        for x in 0..size {
            let mut acc = CycloNumber::zero(m);
            for p in 0..size {
                let c = &table[at(p, q)];
                if !c.is_zero() {
                    acc = acc + c * &CycloNumber::zeta_power(m, sign * (a.dot(x, p) * (m / n)) as i64);
                }
            }
            out[at(x, q)] = acc;
        }
    }
    out
}

impl TwistTensor {
    pub fn one(group: AbelianGroup, conductor: u32) -> Self {
        let n = group.order();
        let mut coeffs = vec![CycloNumber::zero(conductor); n * n];
        coeffs[0] = CycloNumber::one(conductor);
        TwistTensor { group, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.coeffs[0].conductor()
    }

    pub fn get(&self, a: usize, b: usize) -> &CycloNumber {
        &self.coeffs[a * self.group.order() + b]
    }

    /// Product in `C[A]⊗C[A]`.
    pub fn mul(&self, other: &Self) -> Self {
        let size = self.group.order();
        let mut coeffs = vec![CycloNumber::zero(self.conductor()); size * size];
        for (i, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in other.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let a = self.group.add(i / size, j / size);
                let b = self.group.add(i % size, j % size);
                coeffs[a * size + b] = &coeffs[a * size + b] + &(x * y);
            }
        }
        TwistTensor { group: self.group.clone(), coeffs }
    }

    /// The table `(χ_x⊗χ_y)(J)`.
    pub fn evaluate(&self) -> Vec<CycloNumber> {
        let m = lcm(self.conductor(), self.group.exponent());
        let lifted: Vec<CycloNumber> = self.coeffs.iter().map(|c| c.lift(m)).collect();
        let t = transform(&self.group, &lifted, m, 1, 0);
        transform(&self.group, &t, m, 1, 1)
    }
}

/// `J = Σ J̃(χ,ψ) E_χ⊗E_ψ`.
pub fn cocycle_to_twist(a: &AbelianGroup, j: &Cochain2) -> Result<TwistTensor> {
    let Coeff::Mu(nj) = j.coeff else {
        return Err(Error::Contract("expected a μ_N-valued cocycle".into()));
    };
    if j.size != a.order() {
        return Err(Error::Dimension("cocycle and group sizes differ".into()));
    }
    if j.get(0, 0) != 0 {
        return Err(Error::Contract("cocycle is not normalized: J(0,0) ≠ 1".into()));
    }
    let m = lcm(nj, a.exponent());
    let values: Vec<CycloNumber> = j.values.iter().map(|&v| CycloNumber::zeta_power(m, (v as u32 * (m / nj)) as i64)).collect();
    let t = transform(a, &values, m, -1, 0);
    let t = transform(a, &t, m, -1, 1);
    let scale = inv_order(a) * inv_order(a);
    Ok(TwistTensor { group: a.clone(), coeffs: t.iter().map(|c| c.scale(&scale)).collect() })
}

/// `J̃(χ,ψ) = (χ⊗ψ)(J)`, as exponents of `ζ_M` with `M = lcm(2, conductor)`.
pub fn twist_to_cocycle(t: &TwistTensor) -> Result<Cochain2> {
    let values = t.evaluate();
    let m = lcm(values[0].conductor(), 2);
    let mut out = Vec::with_capacity(values.len());
    for (idx, v) in values.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::Contract(format!("tensor is singular at character pair {}", idx)));
        }
        let r = v.as_root_of_unity().ok_or_else(|| Error::Contract(format!("value at character pair {idx} is not a root of unity")))?;
        out.push((r.at_order(m).exponent()) as usize);
    }
    Ok(Cochain2 { size: t.group.order(), coeff: Coeff::Mu(m), values: out })
}

/// Dense cap for the triple-tensor check.
pub const TWIST_AXIOM_CAP: usize = 16;

/// Check `(Δ⊗I)(J)(J⊗1) = (I⊗Δ)(J)(1⊗J)` and `(ε⊗I)(J) = (I⊗ε)(J) = 1`.
///
/// On failure returns the first coordinate `a⊗b⊗c` (or `a` for the counit) that differs.
pub fn verify_twist_axioms(t: &TwistTensor) -> Result<std::result::Result<(), Vec<usize>>> {
    let a = &t.group;
    let size = a.order();
    if size > TWIST_AXIOM_CAP {
        return Err(Error::TooLarge { what: "twist axiom check".into(), count: size as u64, cap: TWIST_AXIOM_CAP as u64 });
    }
    let m = t.conductor();
    let nz: Vec<(usize, usize, &CycloNumber)> =
        t.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i / size, i % size, c)).collect();
    let idx = |x: usize, y: usize, z: usize| (x * size + y) * size + z;
    let mut lhs = vec![CycloNumber::zero(m); size * size * size];
    let mut rhs = lhs.clone();
    for &(p, q, x) in &nz {
        for &(r, s, y) in &nz {
            let prod = x * y;
            // (Δ⊗I)(p⊗q) = p⊗p⊗q times r⊗s⊗1
            let i = idx(a.add(p, r), a.add(p, s), q);
            lhs[i] = &lhs[i] + &prod;
            // (I⊗Δ)(p⊗q) = p⊗q⊗q times 1⊗r⊗s
            let i = idx(p, a.add(q, r), a.add(q, s));
            rhs[i] = &rhs[i] + &prod;
        }
    }
    if let Some(i) = (0..lhs.len()).find(|&i| lhs[i] != rhs[i]) {
        return Ok(Err(vec![i / (size * size), (i / size) % size, i % size]));
    }
    for b in 0..size {
        let expect = if b == 0 { CycloNumber::one(m) } else { CycloNumber::zero(m) };
        let left = (0..size).fold(CycloNumber::zero(m), |acc, p| acc + t.get(p, b).clone());
        let right = (0..size).fold(CycloNumber::zero(m), |acc, q| acc + t.get(b, q).clone());
        if left != expect || right != expect {
            return Ok(Err(vec![b]));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{d1, is_cocycle2, Cochain1};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fourier_is_an_algebra_map() {
        let a = AbelianGroup::new(vec![2, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rand_elem = |rng: &mut ChaCha8Rng| GroupAlgebraElement {
            group: a.clone(),
            coeffs: (0..6).map(|_| CycloNumber::from_integer(6, rng.gen_range(-3..4))).collect(),
        };
        let (x, y) = (rand_elem(&mut rng), rand_elem(&mut rng));
        let (fx, fy, fxy) = (x.fourier(), y.fourier(), x.mul(&y).fourier());
        for k in 0..6 {
            assert_eq!(&fx[k] * &fy[k], fxy[k]);
        }
        assert_eq!(GroupAlgebraElement::from_fourier(a.clone(), &fx), x);
        for chi in 0..6 {
            let e = GroupAlgebraElement::idempotent(a.clone(), 6, chi).fourier();
            for psi in 0..6 {
                assert_eq!(e[psi], CycloNumber::from_integer(6, (psi == chi) as i64));
            }
        }
    }

    #[test]
    fn trivial_cocycle_gives_unit_twist() {
        let a = AbelianGroup::elementary(2, 2);
        let t = cocycle_to_twist(&a, &Cochain2::trivial(4, Coeff::Mu(2))).unwrap();
        assert_eq!(t, TwistTensor::one(a, 2));
    }

    #[test]
    fn z2_twist_by_hand() {
        // J̃(1,1) = −1: J = 1⊗1 − 2 E₁⊗E₁ with E₁ = (1 − g)/2, so
        // J = ½(1⊗1 + 1⊗g + g⊗1 − g⊗g).
        let a = AbelianGroup::elementary(2, 1);
        let j = Cochain2::from_fn(2, Coeff::Mu(2), |x, y| x * y);
        let t = cocycle_to_twist(&a, &j).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let expect = [1, 1, 1, -1].map(|s| CycloNumber::from_integer(2, s).scale(&half));
        assert_eq!(t.coeffs, expect.to_vec());
        assert_eq!(twist_to_cocycle(&t).unwrap(), j);
    }

    #[test]
    fn dictionary_round_trip_and_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = AbelianGroup::elementary(2, 2);
        for _ in 0..10 {
            // Random cocycle: a bicharacter times a coboundary.
            let bits: u32 = rng.gen_range(0..16);
            let bich = Cochain2::from_fn(4, Coeff::Mu(4), |x, y| {
                let m = [[bits & 1, (bits >> 1) & 1], [(bits >> 2) & 1, (bits >> 3) & 1]];
                2 * (0..2).map(|i| (0..2).map(|k| ((x >> i) & 1) as u32 * ((y >> k) & 1) as u32 * m[i][k]).sum::<u32>()).sum::<u32>() as usize % 4
            });
            let mut zs: Vec<usize> = (0..4).map(|_| rng.gen_range(0..4)).collect();
            zs[0] = 0;
            let j = bich.add(&d1(&a, &Cochain1 { coeff: Coeff::Mu(4), values: zs })).unwrap();
            let t = cocycle_to_twist(&a, &j).unwrap();
            assert_eq!(twist_to_cocycle(&t).unwrap(), j);
            assert!(verify_twist_axioms(&t).unwrap().is_ok());
        }
        // A normalized table that is not a cocycle.
        let mut bad = Cochain2::trivial(4, Coeff::Mu(4));
        bad.values[4 + 2] = 1;
        assert!(is_cocycle2(&a, &bad).is_err());
        let t = cocycle_to_twist(&a, &bad).unwrap();
        assert!(verify_twist_axioms(&t).unwrap().is_err());
        assert!(verify_twist_axioms(&TwistTensor::one(a, 4)).unwrap().is_ok());
    }
}
