//! Enumerate the matrix groups over F2 by generator closure and compare with their
//! order formulas.

use std::time::Instant;

use isocat::groups::sympl::{gl_order, sp_elements, sp_order};
use isocat::groups::{build_group, enumerate, GroupSpec};

fn main() -> isocat::Result<()> {
    for n in 1..=3 {
        let t = Instant::now();
        let count = sp_elements(n)?.len();
        println!("|Sp({},2)| = {count} (formula {}), {:.2?}", 2 * n, sp_order(n as u32), t.elapsed());
    }
    for n in 1..=3 {
        let count = enumerate(&build_group(&GroupSpec::Gl(n))?, 1_000_000)?.len();
        println!("|GL({n},2)| = {count} (formula {})", gl_order(n as u32));
    }
    let p3 = enumerate(&build_group(&GroupSpec::P(3))?, 1_000_000)?.len();
    println!("|P(3)| = {p3}");
    Ok(())
}
