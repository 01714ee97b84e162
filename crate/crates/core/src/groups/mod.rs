//! Finite group oracles, enumeration, subgroup machinery and isomorphism testing.

pub mod abelian;
pub mod builtin;
pub mod forms;
pub mod iso;
pub mod perm;
pub mod sympl;
pub mod table;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

pub use abelian::{AbelianGroup, AbelianSubgroup};
pub use builtin::{build_group, AnyGroup, GroupElement, GroupSpec};
pub use forms::{invariant_skew_isos, Pairing};
pub use iso::{is_isomorphic, tables_isomorphic, Isomorphism};

pub use perm::Perm;
pub use table::{Subgroup, TableGroup};

/// Default enumeration cap for generic groups.
pub const DEFAULT_ENUM_CAP: usize = 100_000;

/// A finite group given by its operations and a generating set.
pub trait Group: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;

    fn name(&self) -> String {
        "group".to_string()
    }

    fn format_elem(&self, e: &Self::Elem) -> String {
        format!("{:?}", e)
    }

    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn element_order(&self, a: &Self::Elem) -> u64 {
        let id = self.identity();
        let mut x = a.clone();
        let mut k = 1;
        while x != id {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }

    fn conj(&self, g: &Self::Elem, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(g, a), &self.inv(g))
    }
}

/// Closure of the generators under right multiplication, in breadth-first order with a
/// fixed generator order. The identity comes first.
pub fn enumerate<G: Group>(g: &G, cap: usize) -> Result<Vec<G::Elem>> {
    let gens = g.generators();
    let mut seen: HashMap<G::Elem, ()> = HashMap::new();
    let id = g.identity();
    seen.insert(id.clone(), ());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for s in &gens {
            let y = g.mul(&x, s);
            if !seen.contains_key(&y) {
                if out.len() >= cap {
                    return Err(Error::TooLarge { what: format!("enumeration of {}", g.name()), count: out.len() as u64, cap: cap as u64 });
                }
                seen.insert(y.clone(), ());
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// Multiset of element orders.
pub fn order_statistics<G: Group>(g: &G, cap: usize) -> Result<BTreeMap<u64, u64>> {
    let elems = enumerate(g, cap)?;
    let mut stats = BTreeMap::new();
    for e in &elems {
        *stats.entry(g.element_order(e)).or_insert(0) += 1;
    }
    Ok(stats)
}

/// Check associativity, identity and inverse laws: exhaustively when `|G|³` is within
/// `exhaustive_limit` triples, otherwise on `samples` random triples.
pub fn check_group_axioms<G: Group>(g: &G, elems: &[G::Elem], exhaustive_limit: u64, samples: usize, seed: u64) -> Result<()> {
    use rand::{Rng, SeedableRng};
    let id = g.identity();
    for x in elems {
        if g.mul(x, &id) != *x || g.mul(&id, x) != *x {
            return Err(Error::Internal(format!("identity law fails at {}", g.format_elem(x))));
        }
        if g.mul(x, &g.inv(x)) != id {
            return Err(Error::Internal(format!("inverse law fails at {}", g.format_elem(x))));
        }
    }
    let n = elems.len() as u64;
    let check = |a: &G::Elem, b: &G::Elem, c: &G::Elem| -> Result<()> {
        if g.mul(&g.mul(a, b), c) != g.mul(a, &g.mul(b, c)) {
            return Err(Error::Internal(format!(
                "associativity fails at ({}, {}, {})",
                g.format_elem(a),
                g.format_elem(b),
                g.format_elem(c)
            )));
        }
        Ok(())
    };
    if n.saturating_pow(3) <= exhaustive_limit {
        for a in elems {
            for b in elems {
                for c in elems {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = &elems[rng.gen_range(0..elems.len())];
            let b = &elems[rng.gen_range(0..elems.len())];
            let c = &elems[rng.gen_range(0..elems.len())];
            check(a, b, c)?;
        }
    }
    Ok(())
}
