//! Finite abelian groups with a fixed cyclic decomposition, and the dot duality
//! `χ_x(y) = ζ_N^{Σ x_i y_i (N/n_i)}`, `N = exp(A)`, that identifies `A` with its dual.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::table::{Subgroup, TableGroup};
use crate::error::{Error, Result};

/// `Z/n_1 × … × Z/n_k`; elements are indexed in mixed radix, coordinate 0 least significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    moduli: Vec<u32>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u32>) -> Result<Self> {
        if moduli.iter().any(|&m| m < 2) {
            return Err(Error::Contract(format!("cyclic factors must have order >= 2: {moduli:?}")));
        }
        Ok(AbelianGroup { moduli })
    }

    pub fn trivial() -> Self {
        AbelianGroup { moduli: vec![] }
    }

    pub fn elementary(p: u32, rank: usize) -> Self {
        AbelianGroup { moduli: vec![p; rank] }
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    pub fn exponent(&self) -> u32 {
        self.moduli.iter().fold(1, |acc, &m| acc / gcd(acc, m) * m)
    }

    pub fn is_elementary_two(&self) -> bool {
        self.moduli.iter().all(|&m| m == 2)
    }

    pub fn coords(&self, mut idx: usize) -> Vec<u32> {
        self.moduli
            .iter()
            .map(|&m| {
                let c = (idx % m as usize) as u32;
                idx /= m as usize;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[u32]) -> usize {
        let mut idx = 0usize;
        for (c, &m) in coords.iter().zip(&self.moduli).rev() {
            idx = idx * m as usize + (*c % m) as usize;
        }
        idx
    }

    pub fn unit(&self, i: usize) -> usize {
        self.moduli[..i].iter().map(|&m| m as usize).product()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.is_elementary_two() {
            return a ^ b;
        }
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<u32> = x.iter().zip(&y).zip(&self.moduli).map(|((a, b), m)| (a + b) % m).collect();
        self.index(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        if self.is_elementary_two() {
            return a;
        }
        let x = self.coords(a);
        let s: Vec<u32> = x.iter().zip(&self.moduli).map(|(a, m)| (m - a) % m).collect();
        self.index(&s)
    }

    pub fn scale(&self, a: usize, k: i64) -> usize {
        let x = self.coords(a);
        let s: Vec<u32> = x
            .iter()
            .zip(&self.moduli)
            .map(|(&a, &m)| ((a as i64 * k).rem_euclid(m as i64)) as u32)
            .collect();
        self.index(&s)
    }

    /// Exponent mod `exp(A)` of the dot pairing `χ_x(y)`.
    pub fn dot(&self, x: usize, y: usize) -> u32 {
        let n = self.exponent() as u64;
        let (a, b) = (self.coords(x), self.coords(y));
        (a.iter()
            .zip(&b)
            .zip(&self.moduli)
            .map(|((&p, &q), &m)| p as u64 * q as u64 * (n / m as u64))
            .sum::<u64>()
            % n) as u32
    }

    /// The permutation of dot indices induced on `A∨` by an automorphism `f` of `A`:
    /// `x ↦ x'` with `χ_{x'} = χ_x ∘ f⁻¹`. `f_inv` lists `f⁻¹` on all indices.
    pub fn dual_action(&self, f_inv: &[usize]) -> Vec<usize> {
        let n = self.exponent() as u64;
        let k = self.rank();
        let cols: Vec<Vec<u32>> = (0..k).map(|i| self.coords(f_inv[self.unit(i)])).collect();
        (0..self.order())
            .map(|x| {
                let xc = self.coords(x);
                let img: Vec<u32> = (0..k)
                    .map(|i| {
                        let s: u64 = (0..k).map(|j| xc[j] as u64 * cols[i][j] as u64 * (n / self.moduli[j] as u64)).sum::<u64>() % n;
                        let step = n / self.moduli[i] as u64;
                        debug_assert_eq!(s % step, 0);
                        ((s / step) % self.moduli[i] as u64) as u32
                    })
                    .collect();
                self.index(&img)
            })
            .collect()
    }

    pub fn gcd_moduli(&self, i: usize, j: usize) -> u32 {
        gcd(self.moduli[i], self.moduli[j])
    }
}

/// An abelian subgroup of a [`TableGroup`] with a chosen cyclic decomposition.
#[derive(Clone, Debug)]
pub struct AbelianSubgroup {
    pub group: AbelianGroup,
    /// Table element for each index of `group`.
    pub to_parent: Vec<u32>,
    pub from_parent: HashMap<u32, usize>,
}

impl AbelianSubgroup {
    /// Use the given parent elements as a basis with the given orders.
    pub fn with_basis(g: &TableGroup, basis: &[u32]) -> Result<Self> {
        let orders = g.element_orders();
        let moduli: Vec<u32> = basis.iter().map(|&b| orders[b as usize]).collect();
        let group = AbelianGroup::new(moduli)?;
        let mut to_parent = Vec::with_capacity(group.order());
        for idx in 0..group.order() {
            let c = group.coords(idx);
            let mut x = 0u32;
            for (i, &ci) in c.iter().enumerate() {
                for _ in 0..ci {
                    x = g.m(x, basis[i]);
                }
            }
            to_parent.push(x);
        }
        let from_parent: HashMap<u32, usize> = to_parent.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        if from_parent.len() != to_parent.len() {
            return Err(Error::Contract("basis elements are not independent".into()));
        }
        Ok(AbelianSubgroup { group, to_parent, from_parent })
    }

    /// Decompose an abelian subgroup as a direct sum of cyclic groups of prime-power order.
    pub fn decompose(g: &TableGroup, s: &Subgroup) -> Result<Self> {
        if !s.abelian {
            return Err(Error::Contract("subgroup is not abelian".into()));
        }
        let orders = g.element_orders();
        let mut primes: Vec<u32> = Vec::new();
        let mut m = s.order() as u32;
        let mut p = 2;
        while m > 1 {
            if m.is_multiple_of(p) {
                primes.push(p);
                while m.is_multiple_of(p) {
                    m /= p;
                }
            }
            p += 1;
        }
        let mut basis = Vec::new();
        for &p in &primes {
            let part: Vec<u32> = s.members.iter().copied().filter(|&x| is_power_of(orders[x as usize], p)).collect();
            let found = decompose_p_part(g, &part, &orders).ok_or_else(|| Error::Internal("abelian decomposition failed".into()))?;
            basis.extend(found);
        }
        Self::with_basis(g, &basis)
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Conjugation by a parent element, as a permutation of indices.
    pub fn conjugation(&self, g: &TableGroup, x: u32) -> Result<Vec<usize>> {
        let xi = g.i(x);
        self.to_parent
            .iter()
            .map(|&a| {
                let c = g.m(g.m(x, a), xi);
                self.from_parent.get(&c).copied().ok_or_else(|| Error::Contract("subgroup is not normal".into()))
            })
            .collect()
    }
}

fn is_power_of(mut n: u32, p: u32) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn decompose_p_part(g: &TableGroup, part: &[u32], orders: &[u32]) -> Option<Vec<u32>> {
    let target = part.len();
    let mut sorted = part.to_vec();
    sorted.sort_by_key(|&x| (std::cmp::Reverse(orders[x as usize]), x));
    fn dfs(g: &TableGroup, sorted: &[u32], orders: &[u32], target: usize, span: &mut Vec<u32>, basis: &mut Vec<u32>) -> bool {
        if span.len() == target {
            return true;
        }
        let in_span: std::collections::HashSet<u32> = span.iter().copied().collect();
        let admissible: Vec<u32> = sorted
            .iter()
            .copied()
            .filter(|&x| {
                let mut y = x;
                while y != 0 {
                    if in_span.contains(&y) {
                        return false;
                    }
                    y = g.m(y, x);
                }
                true
            })
            .collect();
        let Some(&first) = admissible.first() else { return false };
        let top = orders[first as usize];
        for &x in admissible.iter().take_while(|&&x| orders[x as usize] == top) {
            let saved = span.clone();
            let mut next = Vec::with_capacity(span.len() * top as usize);
            let mut power = 0u32;
            for _ in 0..top {
                for &s in span.iter() {
                    next.push(g.m(s, power));
                }
                power = g.m(power, x);
            }
            *span = next;
            basis.push(x);
            if dfs(g, sorted, orders, target, span, basis) {
                return true;
            }
            basis.pop();
            *span = saved;
        }
        false
    }
    let mut span = vec![0u32];
    let mut basis = Vec::new();
    if dfs(g, &sorted, orders, target, &mut span, &mut basis) {
        Some(basis)
    } else {
        None
    }
}
