//! Move between 2-cocycles on an abelian group and twists in its group algebra, and
//! reduce an odd-order twist to one of the form `R(x/2, y)`.

use isocat::cohomology::{d1, Coeff, Cochain1, Cochain2};
use isocat::groups::AbelianGroup;
use isocat::twists::{bicharacter, cocycle_to_twist, odd_reduction, rmatrix, twist_to_cocycle, verify_twist_axioms};

fn main() -> isocat::Result<()> {
    let a = AbelianGroup::elementary(2, 2);
    let j = Cochain2::from_fn(4, Coeff::Mu(2), |x, y| (x & 1) * (y >> 1));
    let t = cocycle_to_twist(&a, &j)?;
    println!("twist axioms hold: {}", verify_twist_axioms(&t)?.is_ok());
    let back = twist_to_cocycle(&t)?;
    let Coeff::Mu(m) = back.coeff else { unreachable!() };
    // `back` is in exponents of ζ_m, `j` in exponents of −1.
    println!("round trip recovers the table: {}", back.values.iter().zip(&j.values).all(|(&b, &v)| 2 * b == v * m as usize));
    let mut bad = Cochain2::trivial(4, Coeff::Mu(4));
    bad.values[6] = 1;
    println!("a non-cocycle fails at {:?}", verify_twist_axioms(&cocycle_to_twist(&a, &bad)?)?.err());

    let b = AbelianGroup::new(vec![3, 9])?;
    let jb = bicharacter(&b, &[vec![1, 2], vec![0, 4]]);
    let jb = jb.add(&d1(&b, &Cochain1 { coeff: Coeff::Mu(9), values: (0..27).map(|x| x * x % 9).collect() }))?;
    let reduced = odd_reduction(&b, &jb)?;
    println!("odd reduction keeps the R-matrix: {}", rmatrix(&reduced) == rmatrix(&jb));
    Ok(())
}
