//! Build the twisted groups `G_b` of the dihedral group of order 8 by hand: pick each
//! normal Klein subgroup, find its invariant symplectic forms, and twist.

use isocat::groups::table::TABLE_CAP;
use isocat::groups::{build_group, invariant_skew_isos, tables_isomorphic, GroupSpec, TableGroup};
use isocat::isocategorical::build_gb;

fn main() -> isocat::Result<()> {
    let (g, _) = TableGroup::from_group(&build_group(&GroupSpec::Dihedral(4))?, TABLE_CAP)?;
    for a in g.normal_abelian_subgroups(|n| n == 4, 100)? {
        let forms = invariant_skew_isos(&g, &a, 1 << 16)?;
        let labels: Vec<&str> = a.members.iter().map(|&x| g.label(x)).collect();
        println!("A = {{{}}}: {} invariant form(s)", labels.join(", "), forms.forms.len());
        for r in &forms.forms {
            let gb = build_gb(&g, &a, r)?;
            let t = gb.to_table()?;
            let orders = t.element_orders();
            let involutions = orders.iter().filter(|&&o| o == 2).count();
            println!(
                "    b trivial: {:?}; G_b has {} involutions; isomorphic to G: {}",
                gb.triviality.as_ref().and_then(|t| t.is_coboundary()),
                involutions,
                tables_isomorphic(&t, &g).is_some()
            );
        }
    }
    Ok(())
}
