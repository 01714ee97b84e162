//! Twists of group algebras of abelian groups and their 2-cocycles.

pub mod algebra;
pub mod standard;

pub use algebra::{cocycle_to_twist, twist_to_cocycle, verify_twist_axioms, GroupAlgebraElement, TwistTensor};
pub use standard::{standard_symplectic_twist, StandardTwist};

use crate::algebra::halve;
use crate::cohomology::{skew_of_cocycle, split_symmetric, Coeff, Cochain2};
use crate::error::{Error, Result};
use crate::groups::AbelianGroup;

pub use crate::cohomology::gauge;

/// `R(x,y) = J̃(x,y) / J̃(y,x)`.
pub fn rmatrix(j: &Cochain2) -> Cochain2 {
    skew_of_cocycle(j)
}

/// For `|A|` odd, the cocycle `J̃′(x,y) = R(x/2, y)`, which has the same R-matrix as `J̃`
/// and differs from it by a symmetric cocycle. Both facts are checked.
pub fn odd_reduction(a: &AbelianGroup, j: &Cochain2) -> Result<Cochain2> {
    if a.order().is_multiple_of(2) {
        return Err(Error::EvenOrder(a.order() as u32));
    }
    let r = rmatrix(j);
    let halves: Vec<usize> = (0..a.order()).map(|x| halve(a.moduli(), &a.coords(x)).map(|c| a.index(&c))).collect::<Result<_>>()?;
    let jp = Cochain2::from_fn(a.order(), j.coeff.clone(), |x, y| r.get(halves[x], y));
    if rmatrix(&jp) != r {
        return Err(Error::Internal("odd reduction changed the R-matrix".into()));
    }
    let quotient = j.add(&jp.neg())?;
    split_symmetric(a, &quotient)?;
    Ok(jp)
}

/// The bicharacter `(x,y) ↦ ζ_N^{Σ M_ij x_i y_j N/gcd(n_i,n_j)}`, entries reduced
/// modulo `gcd(n_i, n_j)`.
pub fn bicharacter(a: &AbelianGroup, m: &[Vec<u32>]) -> Cochain2 {
    let n = a.exponent();
    Cochain2::from_fn(a.order(), Coeff::Mu(n), |x, y| {
        let (cx, cy) = (a.coords(x), a.coords(y));
        let mut s = 0u64;
        for i in 0..a.rank() {
            for k in 0..a.rank() {
                let g = a.gcd_moduli(i, k);
                s += cx[i] as u64 * cy[k] as u64 * (m[i][k] % g) as u64 * (n / g) as u64;
            }
        }
        (s % n as u64) as usize
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{is_cocycle2, Cochain1};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symmetric_cocycles_have_trivial_rmatrix() {
        let a = AbelianGroup::new(vec![2, 4]).unwrap();
        let j = bicharacter(&a, &[vec![1, 1], vec![1, 3]]);
        assert!(is_cocycle2(&a, &j).is_ok());
        assert!(rmatrix(&j).is_trivial());
        let jp = odd_reduction(&AbelianGroup::new(vec![3]).unwrap(), &Cochain2::from_fn(3, Coeff::Mu(3), |x, y| x * y % 3)).unwrap();
        assert!(jp.is_trivial());
    }

    #[test]
    fn rank_two_rmatrix() {
        // J((a,b),(c,d)) = (−1)^{ad} gives R = (−1)^{ad+bc}.
        let a = AbelianGroup::elementary(2, 2);
        let j = Cochain2::from_fn(4, Coeff::Mu(2), |x, y| (x & 1) * (y >> 1));
        let r = rmatrix(&j);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(r.get(x, y), ((x & 1) * (y >> 1) + (x >> 1) * (y & 1)) % 2);
            }
        }
        let _ = a;
    }

    #[test]
    fn gauge_preserves_rmatrix() {
        let a = AbelianGroup::elementary(2, 4);
        let j = Cochain2::from_fn(16, Coeff::Mu(2), |x, y| ((x & 3) & (y >> 2)).count_ones() as usize % 2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let mut xs: Vec<usize> = (0..16).map(|_| rng.gen_range(0..4)).collect();
            xs[0] = 0;
            let g = gauge(&a, &j, &Cochain1 { coeff: Coeff::Mu(4), values: xs }).unwrap();
            let lifted = crate::cohomology::split::lift2(&rmatrix(&j), 4).unwrap();
            assert_eq!(rmatrix(&g), lifted);
        }
    }

    #[test]
    fn odd_reduction_on_z3_squared() {
        let a = AbelianGroup::new(vec![3, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let m: Vec<Vec<u32>> = (0..2).map(|_| (0..2).map(|_| rng.gen_range(0..3)).collect()).collect();
            let j = bicharacter(&a, &m);
            let jp = odd_reduction(&a, &j).unwrap();
            assert_eq!(rmatrix(&jp), rmatrix(&j));
        }
        assert!(matches!(odd_reduction(&AbelianGroup::elementary(2, 2), &Cochain2::trivial(4, Coeff::Mu(2))), Err(Error::EvenOrder(4))));
    }
}
