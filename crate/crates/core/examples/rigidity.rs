//! Rigidity certificates for a few small groups.
//!
//! Run with `cargo run --example rigidity`.

use isocat::groups::table::TABLE_CAP;
use isocat::groups::{build_group, GroupSpec, TableGroup};
use isocat::isocategorical::rigidity_certificate;

fn main() -> isocat::Result<()> {
    for name in ["quaternion8", "dihedral8", "cyclic 15", "dihedral 14", "asp 1"] {
        let spec = GroupSpec::parse_builtin(name)?;
        let (g, _) = TableGroup::from_group(&build_group(&spec)?, TABLE_CAP)?;
        let report = rigidity_certificate(&g)?;
        println!(
            "{:<12} order {:>3}  {:?} ({:?}), {} candidate pair(s)",
            spec.name(),
            report.order,
            report.verdict,
            report.reason,
            report.candidates.len()
        );
        for c in &report.candidates {
            println!("    |A| = {}, form #{}, b trivial: {:?}, G_b ≅ G: {}", c.a_order, c.r_index, c.b_trivial, c.gb_isomorphic);
        }
    }
    Ok(())
}
