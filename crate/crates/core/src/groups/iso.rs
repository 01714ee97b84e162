//! Isomorphism testing by backtracking over generator images.
//!
//! Candidate images are filtered by element order and conjugacy-class size. The first
//! generator is only mapped to class representatives (composing with an inner
//! automorphism of the target changes nothing). Every partial assignment is checked to
//! extend to an injective homomorphism on the subgroup generated so far.

use std::collections::BTreeMap;

use serde::Serialize;

use super::table::{TableGroup, TABLE_CAP};
use super::Group;
use crate::error::Result;

/// A verified isomorphism between two table groups.
#[derive(Clone, Debug, Serialize)]
pub struct Isomorphism {
    /// Image of every element of the source, by index.
    pub map: Vec<u32>,
    /// Source generating sequence used by the search and the chosen images.
    pub generator_images: Vec<(u32, u32)>,
}

impl Isomorphism {
    pub fn verify(&self, g1: &TableGroup, g2: &TableGroup) -> bool {
        let n = g1.order();
        if g2.order() != n || self.map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in &self.map {
            if y as usize >= n || std::mem::replace(&mut hit[y as usize], true) {
                return false;
            }
        }
        (0..n as u32).all(|a| (0..n as u32).all(|b| self.map[g1.m(a, b) as usize] == g2.m(self.map[a as usize], self.map[b as usize])))
    }

    pub fn inverse(&self) -> Isomorphism {
        let mut inv = vec![0u32; self.map.len()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b as usize] = a as u32;
        }
        Isomorphism { generator_images: Vec::new(), map: inv }
    }
}

struct Profile {
    orders: Vec<u32>,
    class_size: Vec<u32>,
    class_of: Vec<u32>,
    classes: Vec<Vec<u32>>,
}

fn profile(g: &TableGroup) -> Profile {
    let orders = g.element_orders();
    let (classes, class_of) = g.conjugacy_classes();
    let class_size = class_of.iter().map(|&c| classes[c as usize].len() as u32).collect();
    Profile { orders, class_size, class_of, classes }
}

fn invariant_histogram(p: &Profile) -> BTreeMap<(u32, u32), usize> {
    let mut h = BTreeMap::new();
    for (o, c) in p.orders.iter().zip(&p.class_size) {
        *h.entry((*o, *c)).or_insert(0) += 1;
    }
    h
}

/// Greedy generating sequence: repeatedly add an element of largest order outside the
/// current subgroup.
fn generating_sequence(g: &TableGroup, orders: &[u32]) -> Vec<u32> {
    let mut by_order: Vec<u32> = (0..g.order() as u32).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(orders[x as usize]), x));
    let mut gens = Vec::new();
    let mut current = g.subgroup_generated(&[]);
    while current.order() < g.order() {
        let x = *by_order.iter().find(|&&x| !current.contains(x)).unwrap();
        gens.push(x);
        current = g.subgroup_generated(&gens);
    }
    gens
}

/// Extend generator images to the subgroup they generate; `None` unless the extension is
/// a well-defined injective homomorphism.
fn extend(g1: &TableGroup, g2: &TableGroup, gens: &[u32], imgs: &[u32]) -> Option<Vec<u32>> {
    let n = g1.order();
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; g2.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (s, t) in gens.iter().zip(imgs) {
            let y = g1.m(x, *s);
            let fy = g2.m(map[x as usize], *t);
            if map[y as usize] == u32::MAX {
                if used[fy as usize] {
                    return None;
                }
                used[fy as usize] = true;
                map[y as usize] = fy;
                queue.push(y);
            } else if map[y as usize] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Decide whether two table groups are isomorphic; returns a verified isomorphism.
pub fn tables_isomorphic(g1: &TableGroup, g2: &TableGroup) -> Option<Isomorphism> {
    if g1.order() != g2.order() || g1.is_abelian() != g2.is_abelian() {
        return None;
    }
    let (p1, p2) = (profile(g1), profile(g2));
    if invariant_histogram(&p1) != invariant_histogram(&p2) || p1.classes.len() != p2.classes.len() {
        return None;
    }
    let gens = generating_sequence(g1, &p1.orders);
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .enumerate()
        .map(|(depth, &s)| {
            (0..g2.order() as u32)
                .filter(|&t| p2.orders[t as usize] == p1.orders[s as usize] && p2.class_size[t as usize] == p1.class_size[s as usize])
                .filter(|&t| depth > 0 || p2.classes[p2.class_of[t as usize] as usize][0] == t)
                .collect()
        })
        .collect();
    let mut imgs = Vec::new();
    fn search(g1: &TableGroup, g2: &TableGroup, gens: &[u32], cands: &[Vec<u32>], imgs: &mut Vec<u32>) -> Option<Vec<u32>> {
        let depth = imgs.len();
        if depth == gens.len() {
            return extend(g1, g2, gens, imgs);
        }
        for &t in &cands[depth] {
            imgs.push(t);
            if extend(g1, g2, &gens[..=depth], imgs).is_some() {
                if let Some(m) = search(g1, g2, gens, cands, imgs) {
                    return Some(m);
                }
            }
            imgs.pop();
        }
        None
    }
    let map = search(g1, g2, &gens, &candidates, &mut imgs)?;
    let iso = Isomorphism { generator_images: gens.iter().copied().zip(imgs).collect(), map };
    debug_assert!(iso.verify(g1, g2));
    Some(iso)
}

/// Isomorphism test for arbitrary group oracles, via their multiplication tables.
pub fn is_isomorphic<G1: Group, G2: Group>(g1: &G1, g2: &G2, cap: usize) -> Result<Option<Isomorphism>> {
    let cap = cap.min(TABLE_CAP);
    let (t1, _) = TableGroup::from_group(g1, cap)?;
    let (t2, _) = TableGroup::from_group(g2, cap)?;
    Ok(tables_isomorphic(&t1, &t2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, GroupSpec, DEFAULT_ENUM_CAP};

    fn g(s: &str) -> crate::groups::AnyGroup {
        build_group(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    #[test]
    fn dihedral_vs_quaternion() {
        assert!(is_isomorphic(&g("dihedral8"), &g("quaternion8"), DEFAULT_ENUM_CAP).unwrap().is_none());
    }

    #[test]
    fn self_isomorphism() {
        for s in ["dihedral8", "quaternion8", "sp(1)", "cyclic(12)", "gl(3)"] {
            let (t, _) = TableGroup::from_group(&g(s), TABLE_CAP).unwrap();
            let iso = tables_isomorphic(&t, &t).unwrap();
            assert!(iso.verify(&t, &t));
        }
    }

    #[test]
    fn exponent_differs() {
        assert!(is_isomorphic(&g("cyclic(4)"), &g("elementary_abelian(2,2)"), DEFAULT_ENUM_CAP).unwrap().is_none());
    }

    #[test]
    fn different_presentations() {
        // S3 three ways.
        let s3 = GroupSpec::parse_file("gen: (1,2,3)\ngen: (1,2)").unwrap();
        let a = build_group(&s3).unwrap();
        let iso = is_isomorphic(&a, &g("sp(1)"), DEFAULT_ENUM_CAP).unwrap().unwrap();
        let (t1, _) = TableGroup::from_group(&a, TABLE_CAP).unwrap();
        let (t2, _) = TableGroup::from_group(&g("sp(1)"), TABLE_CAP).unwrap();
        assert!(iso.verify(&t1, &t2));
        assert!(iso.inverse().verify(&t2, &t1));
        assert!(is_isomorphic(&g("dihedral(6)"), &a, DEFAULT_ENUM_CAP).unwrap().is_some());
        // Z/6 is not S3.
        assert!(is_isomorphic(&g("cyclic(6)"), &a, DEFAULT_ENUM_CAP).unwrap().is_none());
        // D8 on 4 points.
        let d8 = build_group(&GroupSpec::parse_file("gen: (1,2,3,4)\ngen: (1,3)").unwrap()).unwrap();
        assert!(is_isomorphic(&d8, &g("dihedral8"), DEFAULT_ENUM_CAP).unwrap().is_some());
    }
}
