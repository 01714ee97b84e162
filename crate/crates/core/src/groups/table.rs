//! Groups given by a full multiplication table, with subgroup and quotient machinery.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{enumerate, Group};
use crate::error::{Error, Result};

/// Largest group for which a multiplication table is built.
pub const TABLE_CAP: usize = 4096;

/// A finite group on `0..n` with `0` the identity.
#[derive(Clone, Debug)]
pub struct TableGroup {
    name: String,
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    gens: Vec<u32>,
    labels: Vec<String>,
}

impl TableGroup {
    /// Enumerate `g` and tabulate it. Also returns the elements in index order.
    pub fn from_group<G: Group>(g: &G, cap: usize) -> Result<(TableGroup, Vec<G::Elem>)> {
        let cap = cap.min(TABLE_CAP);
        let elems = enumerate(g, cap)?;
        let index: HashMap<G::Elem, u32> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i as u32)).collect();
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                table[i * n + j] = index[&g.mul(a, b)];
            }
        }
        let inverse = elems.iter().map(|a| index[&g.inv(a)]).collect();
        let gens = g.generators().iter().map(|s| index[s]).collect();
        let labels = elems.iter().map(|e| g.format_elem(e)).collect();
        Ok((TableGroup { name: g.name(), n, table, inverse, gens, labels }, elems))
    }

    /// Build from an explicit table; validates closure, identity at 0 and inverses.
    pub fn from_table(name: String, n: usize, table: Vec<u32>, gens: Vec<u32>, labels: Vec<String>) -> Result<TableGroup> {
        if table.len() != n * n || labels.len() != n {
            return Err(Error::Dimension(format!("table of size {} for order {}", table.len(), n)));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(Error::Contract("table entry out of range".into()));
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::Contract("element 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverse[a] = b as u32;
                    break;
                }
            }
            if inverse[a] == u32::MAX {
                return Err(Error::Contract(format!("element {a} has no inverse")));
            }
        }
        Ok(TableGroup { name, n, table, inverse, gens, labels })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn i(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn label(&self, a: u32) -> &str {
        &self.labels[a as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.gens
    }

    pub fn set_name(&mut self, name: String) {
        self.name = name;
    }

    pub fn element_orders(&self) -> Vec<u32> {
        (0..self.n as u32)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = self.m(x, a);
                    k += 1;
                }
                k
            })
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.gens;
        gens.iter().all(|&a| gens.iter().all(|&b| self.m(a, b) == self.m(b, a)))
    }

    /// Associativity on all triples.
    pub fn is_associative(&self) -> bool {
        let n = self.n as u32;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.m(self.m(a, b), c) == self.m(a, self.m(b, c)))))
    }

    /// Conjugacy classes ordered by least element, and the class index of every element.
    pub fn conjugacy_classes(&self) -> (Vec<Vec<u32>>, Vec<u32>) {
        let mut class_of = vec![u32::MAX; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n as u32 {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let mut members = BTreeSet::new();
            for g in 0..self.n as u32 {
                members.insert(self.m(self.m(g, x), self.i(g)));
            }
            let id = classes.len() as u32;
            for &y in &members {
                class_of[y as usize] = id;
            }
            classes.push(members.into_iter().collect());
        }
        (classes, class_of)
    }

    pub fn subgroup_generated(&self, gens: &[u32]) -> Subgroup {
        let mut mask = vec![false; self.n];
        mask[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &s in gens {
                let y = self.m(x, s) as usize;
                if !mask[y] {
                    mask[y] = true;
                    members.push(y as u32);
                }
            }
        }
        self.subgroup_from_mask(mask)
    }

    /// Wrap a membership mask; fails if it is not closed under products.
    pub fn subgroup(&self, members: &[u32]) -> Result<Subgroup> {
        let mut mask = vec![false; self.n];
        for &m in members {
            *mask.get_mut(m as usize).ok_or_else(|| Error::Contract(format!("element {m} out of range")))? = true;
        }
        if !mask[0] {
            return Err(Error::Contract("subset does not contain the identity".into()));
        }
        for &a in members {
            for &b in members {
                if !mask[self.m(a, b) as usize] {
                    return Err(Error::Contract("subset is not closed under multiplication".into()));
                }
            }
        }
        Ok(self.subgroup_from_mask(mask))
    }

    fn subgroup_from_mask(&self, mask: Vec<bool>) -> Subgroup {
        let members: Vec<u32> = (0..self.n as u32).filter(|&x| mask[x as usize]).collect();
        let abelian = members.iter().all(|&a| members.iter().all(|&b| self.m(a, b) == self.m(b, a)));
        let normal = members
            .iter()
            .all(|&a| self.gens.iter().all(|&g| mask[self.m(self.m(g, a), self.i(g)) as usize]));
        Subgroup { members, mask, normal, abelian }
    }

    fn normal_closure(&self, x: u32) -> Subgroup {
        let conj: BTreeSet<u32> = (0..self.n as u32).map(|g| self.m(self.m(g, x), self.i(g))).collect();
        let gens: Vec<u32> = conj.into_iter().collect();
        self.subgroup_generated(&gens)
    }

    /// All normal abelian subgroups whose order passes `keep`, ordered by (order, members).
    ///
    /// Built from abelian normal closures of single elements, closed under products.
    /// `cap` bounds the number of normal abelian subgroups explored.
    pub fn normal_abelian_subgroups(&self, keep: impl Fn(usize) -> bool, cap: usize) -> Result<Vec<Subgroup>> {
        let mut found: HashMap<Vec<u32>, Subgroup> = HashMap::new();
        let mut queue: Vec<Subgroup> = Vec::new();
        for x in 0..self.n as u32 {
            let s = self.normal_closure(x);
            if s.abelian && !found.contains_key(&s.members) {
                found.insert(s.members.clone(), s.clone());
                queue.push(s);
            }
        }
        let atoms: Vec<Subgroup> = queue.clone();
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head].clone();
            head += 1;
            for b in &atoms {
                if b.members.iter().all(|x| a.mask[*x as usize]) {
                    continue;
                }
                if !a.members.iter().all(|&x| b.members.iter().all(|&y| self.m(x, y) == self.m(y, x))) {
                    continue;
                }
                let mut mask = vec![false; self.n];
                for &x in &a.members {
                    for &y in &b.members {
                        mask[self.m(x, y) as usize] = true;
                    }
                }
                let s = self.subgroup_from_mask(mask);
                if !found.contains_key(&s.members) {
                    if found.len() >= cap {
                        return Err(Error::TooLarge {
                            what: "normal abelian subgroup search".into(),
                            count: found.len() as u64,
                            cap: cap as u64,
                        });
                    }
                    found.insert(s.members.clone(), s.clone());
                    queue.push(s);
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_values().filter(|s| keep(s.order())).collect();
        out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        Ok(out)
    }

    /// `G/A` for a normal subgroup `A`, with lexicographically least coset representatives.
    pub fn quotient(&self, a: &Subgroup) -> Result<Quotient> {
        if !a.normal {
            return Err(Error::Contract("quotient by a non-normal subgroup".into()));
        }
        let mut coset_of = vec![u32::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &x in &a.members {
                coset_of[self.m(g, x) as usize] = id;
            }
        }
        let k = reps.len();
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = coset_of[self.m(reps[i], reps[j]) as usize];
            }
        }
        let mut gens: Vec<u32> = self.gens.iter().map(|&g| coset_of[g as usize]).filter(|&c| c != 0).collect();
        gens.dedup();
        let labels = reps.iter().map(|&r| format!("{}·A", self.label(r))).collect();
        let group = TableGroup::from_table(format!("{}/A", self.name), k, table, gens, labels)?;
        Ok(Quotient { group, reps, coset_of })
    }
}

impl Group for TableGroup {
    type Elem = u32;
    fn identity(&self) -> u32 {
        0
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.m(*a, *b)
    }
    fn inv(&self, a: &u32) -> u32 {
        self.i(*a)
    }
    fn generators(&self) -> Vec<u32> {
        self.gens.clone()
    }
    fn name(&self) -> String {
        self.name.clone()
    }
    fn format_elem(&self, e: &u32) -> String {
        self.labels[*e as usize].clone()
    }
}

/// A subgroup of a [`TableGroup`], with membership mask and structural flags.
#[derive(Clone, Debug, Serialize)]
pub struct Subgroup {
    pub members: Vec<u32>,
    #[serde(skip)]
    pub mask: Vec<bool>,
    pub normal: bool,
    pub abelian: bool,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.mask.get(x as usize).copied().unwrap_or(false)
    }
}

/// A quotient `K = G/A` with its coset section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: TableGroup,
    /// Representative in `G` of each coset, the least index in the coset.
    pub reps: Vec<u32>,
    /// Coset index of every element of `G`.
    pub coset_of: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, GroupSpec};

    fn table(spec: &str) -> TableGroup {
        TableGroup::from_group(&build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap(), TABLE_CAP).unwrap().0
    }

    fn power_of_four(n: usize) -> bool {
        n > 1 && n.is_power_of_two() && n.trailing_zeros().is_multiple_of(2)
    }

    #[test]
    fn quaternion_normal_abelian_of_order_four() {
        let g = table("quaternion8");
        let subs = g.normal_abelian_subgroups(power_of_four, 10_000).unwrap();
        assert_eq!(subs.len(), 3);
        let orders = g.element_orders();
        for s in &subs {
            assert!(s.normal && s.abelian);
            assert!(s.members.iter().any(|&x| orders[x as usize] == 4), "cyclic");
        }
    }

    #[test]
    fn dihedral_normal_abelian_of_order_four() {
        let g = table("dihedral8");
        let subs = g.normal_abelian_subgroups(power_of_four, 10_000).unwrap();
        assert_eq!(subs.len(), 3);
        let orders = g.element_orders();
        let cyclic = subs.iter().filter(|s| s.members.iter().any(|&x| orders[x as usize] == 4)).count();
        assert_eq!(cyclic, 1);
    }

    #[test]
    fn odd_cyclic_has_none() {
        assert!(table("cyclic(7)").normal_abelian_subgroups(power_of_four, 10_000).unwrap().is_empty());
    }

    #[test]
    fn exhaustive_against_subset_search() {
        // Every normal abelian subgroup of D8 by brute force over all 2^8 subsets.
        let g = table("dihedral8");
        let mut brute = 0;
        for mask in 0u32..256 {
            let members: Vec<u32> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
            if let Ok(s) = g.subgroup(&members) {
                if s.normal && s.abelian {
                    brute += 1;
                }
            }
        }
        assert_eq!(g.normal_abelian_subgroups(|_| true, 10_000).unwrap().len(), brute);
    }

    #[test]
    fn quotient_of_dihedral_by_center() {
        let g = table("dihedral8");
        let center = g.subgroup(&(0..8).filter(|&x| (0..8).all(|y| g.m(x, y) == g.m(y, x))).collect::<Vec<_>>()).unwrap();
        assert_eq!(center.order(), 2);
        let q = g.quotient(&center).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.is_abelian());
        assert!(q.group.is_associative());
        for (c, &r) in q.reps.iter().enumerate() {
            assert_eq!(q.coset_of[r as usize], c as u32);
            assert!((0..r).all(|x| q.coset_of[x as usize] != c as u32), "least representative");
        }
    }

    #[test]
    fn classes_of_dihedral() {
        let (classes, _) = table("dihedral8").conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }
}
