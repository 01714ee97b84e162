//! Certify that the affine pseudosymplectic twist is nontrivial for n = 3, and show why
//! the same argument is inconclusive for n = 2.

use isocat::isocategorical::{build_aps, verify_nonzero};

fn main() -> isocat::Result<()> {
    for n in [2, 3] {
        let cert = verify_nonzero(n)?;
        println!("n = {n}: {:?}", cert.verdict);
        for s in &cert.steps {
            println!("    {:<28} {:?}", s.name, s.status);
        }
        println!("    Hom_L(U, Y) dimension {} ({} unknowns)", cert.hom_dimension, cert.hom_unknowns);
    }
    let aps = build_aps(1)?;
    println!("n = 1: |APs| = {}, class of b decided directly: {:?}", aps.order(), aps.decide_triviality()?.is_coboundary());
    Ok(())
}
