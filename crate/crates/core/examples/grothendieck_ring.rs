//! The dihedral and quaternion groups of order 8 have the same fusion rules but are not
//! isomorphic.

use isocat::groups::table::TABLE_CAP;
use isocat::groups::{build_group, tables_isomorphic, GroupSpec, TableGroup};
use isocat::isocategorical::{character_table, fusion_compare};

fn main() -> isocat::Result<()> {
    let (d8, _) = TableGroup::from_group(&build_group(&GroupSpec::Dihedral(4))?, TABLE_CAP)?;
    let (q8, _) = TableGroup::from_group(&build_group(&GroupSpec::Quaternion8)?, TABLE_CAP)?;
    let (td, tq) = (character_table(&d8)?, character_table(&q8)?);
    println!("D8 degrees {:?}, fusion hash {}", td.degrees, td.fusion_hash());
    println!("Q8 degrees {:?}, fusion hash {}", tq.degrees, tq.fusion_hash());
    println!("fusion-preserving bijection: {:?}", fusion_compare(&td, &tq));
    println!("isomorphic: {}", tables_isomorphic(&d8, &q8).is_some());
    let (gl, _) = TableGroup::from_group(&build_group(&GroupSpec::Gl(3))?, TABLE_CAP)?;
    println!("GL(3,2) degrees {:?}", character_table(&gl)?.degrees);
    Ok(())
}
