//! Decide whether 2-cocycles are coboundaries, with a splitting or an inconsistency
//! certificate as witness.

use std::sync::Arc;

use isocat::cohomology::{coboundary_solve, verify_certificate, Coeff, Cochain2, Module, Triviality, SOLVER_CAP};
use isocat::groups::{build_group, AbelianGroup, GroupSpec, TableGroup};

fn main() -> isocat::Result<()> {
    let (k, _) = TableGroup::from_group(&build_group(&GroupSpec::Cyclic(4))?, 100)?;
    let z2 = Arc::new(Module::trivial(AbelianGroup::new(vec![2])?));
    let carry = Cochain2::from_fn(4, Coeff::Module(z2.clone()), |x, y| usize::from(x + y >= 4));
    match coboundary_solve(&k, &carry, SOLVER_CAP)? {
        Triviality::Nontrivial(cert) => {
            println!("carry cocycle is nontrivial; certificate uses {} equations", cert.combination.len());
            println!("certificate replays: {}", verify_certificate(&k, &carry, &cert)?);
        }
        other => println!("unexpected: {:?}", other.is_coboundary()),
    }
    let cob = Cochain2::from_fn(4, Coeff::Module(z2), |x, y| (usize::from(x == 1) + usize::from(y == 1) + usize::from((x + y) % 4 == 1)) % 2);
    if let Triviality::Coboundary(z) = coboundary_solve(&k, &cob, SOLVER_CAP)? {
        println!("coboundary split by {:?}", z.values);
    }
    Ok(())
}
