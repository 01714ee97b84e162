//! Recover `b̃(g,h)` from the Weil representation and compare it with the cocycle
//! computed from the splittings `z(g)`.

use isocat::algebra::BitMatrix;
use isocat::weil::{crosscheck_run, rho, WeilContext};

fn main() -> isocat::Result<()> {
    println!("rho(y) = {}", rho(0b01, 1)?);
    println!("rho(y*) = {}", rho(0b10, 1)?);
    let ctx = WeilContext::new(1)?;
    let swap = BitMatrix::from_rows(2, &[0b10, 0b01]);
    println!("A(swap) = {}", ctx.weil_operator(&swap)?);
    for (n, pairs) in [(1, 50), (2, 100), (3, 25)] {
        let r = crosscheck_run(n, pairs, 1)?;
        println!("n = {n}: {}/{} pairs agree", r.agree, r.pairs);
    }
    Ok(())
}
