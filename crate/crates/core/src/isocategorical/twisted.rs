//! The twisted group `G_b`: the set of `G` with `γ₁ * γ₂ = b̃(γ̄₁, γ̄₂)·γ₁γ₂`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{cocycle_of_form, tau_map, Cochain2, Module, Triviality};
use crate::error::{Error, Result};
use crate::groups::table::Quotient;
use crate::groups::{AbelianSubgroup, Group, Pairing, Subgroup, TableGroup};

/// Largest number of triples checked exhaustively for associativity.
pub const EXHAUSTIVE_TRIPLES: u64 = 100_000_000;

#[derive(Clone, Debug)]
pub struct TwistedGroup {
    pub base: TableGroup,
    pub a: AbelianSubgroup,
    pub quotient: Quotient,
    /// `b̃` on `K = G/A`, valued in `A`.
    pub btilde: Cochain2,
    pub triviality: Option<Triviality>,
}

impl TwistedGroup {
    pub fn order(&self) -> usize {
        self.base.order()
    }

    /// `γ₁ * γ₂`.
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let (kx, ky) = (self.quotient.coset_of[x as usize], self.quotient.coset_of[y as usize]);
        let b = self.btilde.get(kx as usize, ky as usize);
        self.base.m(self.a.to_parent[b], self.base.m(x, y))
    }

    /// Multiplication table of `G_b`, generated by the generators of `G` together with a
    /// basis of `A`.
    pub fn to_table(&self) -> Result<TableGroup> {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                table.push(self.mul(x, y));
            }
        }
        let mut gens: Vec<u32> = self.base.generator_indices().to_vec();
        gens.extend((0..self.a.group.rank()).map(|i| self.a.to_parent[self.a.group.unit(i)]));
        gens.retain(|&g| g != 0);
        gens.dedup();
        let labels = self.base.labels().to_vec();
        TableGroup::from_table(format!("{}_b", self.base.name()), n, table, gens, labels)
    }

    /// Associativity of `*`: over all triples when `|G|³ ≤ 10⁸`; otherwise over all
    /// triples of coset representatives (the cocycle identity) plus `samples` random triples.
    pub fn check_associative(&self, samples: usize, seed: u64) -> Result<()> {
        let n = self.order() as u32;
        let check = |x: u32, y: u32, z: u32| {
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                Err(Error::Internal(format!("* is not associative at ({x}, {y}, {z})")))
            } else {
                Ok(())
            }
        };
        let all: Vec<u32> = (0..n).collect();
        let exhaustive = (n as u64).pow(3) <= EXHAUSTIVE_TRIPLES;
        let pool = if exhaustive { &all } else { &self.quotient.reps };
        if (pool.len() as u64).pow(3) <= EXHAUSTIVE_TRIPLES {
            for &x in pool {
                for &y in pool {
                    for &z in pool {
                        check(x, y, z)?;
                    }
                }
            }
        }
        if !exhaustive {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }
}

/// The action of `K = G/A` on `A` by conjugation through the coset section.
pub fn conjugation_module(g: &TableGroup, a: &AbelianSubgroup, q: &Quotient) -> Result<Arc<Module>> {
    let action = q.reps.iter().map(|&r| a.conjugation(g, r)).collect::<Result<Vec<_>>>()?;
    let module = Module { group: a.group.clone(), action: Some(action) };
    module.check(&q.group)?;
    Ok(Arc::new(module))
}

/// Build `G_b` for a normal abelian `A` and an invariant form `R` on `A∨`.
pub fn build_gb(g: &TableGroup, a: &Subgroup, r: &Pairing) -> Result<TwistedGroup> {
    if !a.normal || !a.abelian {
        return Err(Error::Contract("A must be normal and abelian".into()));
    }
    let sub = AbelianSubgroup::decompose(g, a)?;
    if sub.group != r.group {
        return Err(Error::Contract("form is defined on a different decomposition of A".into()));
    }
    let q = g.quotient(a)?;
    let module = conjugation_module(g, &sub, &q)?;
    let j = cocycle_of_form(r)?;
    let tau = tau_map(&q.group, &module, &j)?;
    let tg = TwistedGroup { base: g.clone(), a: sub, quotient: q, btilde: tau.btilde, triviality: tau.triviality };
    tg.check_associative(10_000, 0)?;
    Ok(tg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::table::TABLE_CAP;
    use crate::groups::{build_group, invariant_skew_isos, tables_isomorphic, GroupSpec};

    fn table(spec: &str) -> TableGroup {
        TableGroup::from_group(&build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap(), TABLE_CAP).unwrap().0
    }

    #[test]
    fn dihedral_klein_twist_is_dihedral() {
        let g = table("dihedral8");
        let mut seen = 0;
        for s in g.normal_abelian_subgroups(|n| n == 4, 100).unwrap() {
            for r in invariant_skew_isos(&g, &s, 1 << 16).unwrap().forms {
                let tg = build_gb(&g, &s, &r).unwrap();
                let t = tg.to_table().unwrap();
                assert!(t.is_associative());
                assert!(tables_isomorphic(&t, &g).is_some());
                // Same extension data: cosets multiply as in K.
                for x in 0..8u32 {
                    for y in 0..8u32 {
                        let q = &tg.quotient;
                        assert_eq!(q.coset_of[tg.mul(x, y) as usize], q.coset_of[g.m(x, y) as usize]);
                    }
                }
                seen += 1;
            }
        }
        // D8 has two normal Klein four-subgroups, each with one invariant form.
        assert_eq!(seen, 2);
    }

    #[test]
    fn asp1_twist_is_a_group_of_the_same_order() {
        let g = table("asp(1)");
        let s = g.normal_abelian_subgroups(|n| n == 4, 1000).unwrap();
        let v = s.iter().find(|s| !invariant_skew_isos(&g, s, 1 << 16).unwrap().forms.is_empty()).unwrap();
        let r = invariant_skew_isos(&g, v, 1 << 16).unwrap().forms[0].clone();
        let tg = build_gb(&g, v, &r).unwrap();
        let t = tg.to_table().unwrap();
        assert_eq!(t.order(), 24);
        assert!(t.is_associative());
    }
}
