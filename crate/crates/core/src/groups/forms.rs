//! Bicharacters on finite abelian groups and the search for invariant alternating
//! nondegenerate ones.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::abelian::{AbelianGroup, AbelianSubgroup};
use super::table::{Subgroup, TableGroup};
use crate::algebra::{solve_zn, F2Matrix, ZnVector};
use crate::error::{Error, Result};

/// `R(x,y) = ζ_N^{Σ_ij x_i y_j M_ij}` with `N = exp(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pairing {
    pub group: AbelianGroup,
    pub matrix: Vec<Vec<u32>>,
}

impl Pairing {
    pub fn new(group: AbelianGroup, matrix: Vec<Vec<u32>>) -> Result<Self> {
        let k = group.rank();
        let n = group.exponent();
        if matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
            return Err(Error::Dimension(format!("pairing matrix must be {k}x{k}")));
        }
        for i in 0..k {
            for j in 0..k {
                if !(matrix[i][j] as u64 * group.gcd_moduli(i, j) as u64).is_multiple_of(n as u64) {
                    return Err(Error::Contract(format!("entry ({i},{j}) is not bilinear on the given moduli")));
                }
            }
        }
        let matrix = matrix.into_iter().map(|r| r.into_iter().map(|e| e % n).collect()).collect();
        Ok(Pairing { group, matrix })
    }

    pub fn conductor(&self) -> u32 {
        self.group.exponent()
    }

    /// Exponent of `R(x,y)` modulo the conductor.
    pub fn eval(&self, x: usize, y: usize) -> u32 {
        let n = self.conductor() as u64;
        let (a, b) = (self.group.coords(x), self.group.coords(y));
        let mut s = 0u64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                s += ai as u64 * bj as u64 * self.matrix[i][j] as u64;
            }
        }
        (s % n) as u32
    }

    pub fn is_alternating(&self) -> std::result::Result<(), usize> {
        (0..self.group.order()).find(|&x| self.eval(x, x) != 0).map_or(Ok(()), Err)
    }

    /// `Ok` or a nonzero vector in the radical.
    pub fn is_nondegenerate(&self) -> std::result::Result<(), usize> {
        let k = self.group.rank();
        (1..self.group.order())
            .find(|&x| (0..k).all(|j| self.eval(x, self.group.unit(j)) == 0))
            .map_or(Ok(()), Err)
    }

    /// Gram matrix over F2 for an elementary abelian 2-group.
    pub fn gram_f2(&self) -> Option<F2Matrix> {
        if !self.group.is_elementary_two() {
            return None;
        }
        let k = self.group.rank();
        let mut m = F2Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.matrix[i][j] % 2 == 1);
            }
        }
        Some(m)
    }

    /// `R(f x, f y)` for a permutation `f` of indices given by images of all indices.
    pub fn pullback(&self, f: &[usize]) -> Pairing {
        let g = &self.group;
        let k = g.rank();
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| self.eval(f[g.unit(i)], f[g.unit(j)])).collect())
            .collect();
        Pairing { group: g.clone(), matrix }
    }
}

/// The result of [`invariant_skew_isos`]: `A` with its decomposition and the forms on
/// `A∨ ≅ A` (dot duality) that are alternating, nondegenerate and `G`-invariant.
#[derive(Clone, Debug)]
pub struct InvariantForms {
    pub subgroup: AbelianSubgroup,
    /// Dual action on dot indices for every element of `G`.
    pub dual_actions: Vec<Vec<usize>>,
    pub forms: Vec<Pairing>,
}

/// Enumerate the `G`-invariant alternating nondegenerate pairings on `A∨`.
///
/// Invariance under the generators is a homogeneous linear system over `Z/exp(A)` in the
/// strictly upper-triangular entries of the pairing matrix; its solution group is
/// enumerated (at most `cap` elements) and filtered for nondegeneracy.
pub fn invariant_skew_isos(g: &TableGroup, a: &Subgroup, cap: usize) -> Result<InvariantForms> {
    if !a.normal || !a.abelian {
        return Err(Error::Contract("A must be normal and abelian".into()));
    }
    let sub = AbelianSubgroup::decompose(g, a)?;
    let dual_actions: Vec<Vec<usize>> = (0..g.order() as u32)
        .map(|x| sub.conjugation(g, g.i(x)).map(|f_inv| sub.group.dual_action(&f_inv)))
        .collect::<Result<_>>()?;
    let ag = &sub.group;
    let k = ag.rank();
    let n = ag.exponent();
    let vars: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (v, &(i, j)) in vars.iter().enumerate() {
        let mut r = vec![0u32; vars.len()];
        r[v] = ag.gcd_moduli(i, j) % n;
        rows.push(r);
    }
    for &s in g.generator_indices() {
        let d = &dual_actions[s as usize];
        let imgs: Vec<Vec<u32>> = (0..k).map(|i| ag.coords(d[ag.unit(i)])).collect();
        for &(i, j) in &vars {
            let mut r = vec![0u32; vars.len()];
            for (v, &(a, b)) in vars.iter().enumerate() {
                let c = imgs[i][a] as i64 * imgs[j][b] as i64 - imgs[i][b] as i64 * imgs[j][a] as i64;
                r[v] = c.rem_euclid(n as i64) as u32;
            }
            let pos = vars.iter().position(|&p| p == (i, j)).unwrap();
            r[pos] = (r[pos] + n - 1) % n;
            rows.push(r);
        }
    }
    let sol = solve_zn(&rows, vars.len(), &ZnVector::zeros(n, rows.len()))?;
    let mut span: BTreeSet<Vec<u32>> = BTreeSet::new();
    span.insert(vec![0; vars.len()]);
    let mut frontier = vec![vec![0u32; vars.len()]];
    while let Some(x) = frontier.pop() {
        for gen in &sol.kernel {
            let y: Vec<u32> = x.iter().zip(&gen.entries).map(|(a, b)| (a + b) % n).collect();
            if span.insert(y.clone()) {
                if span.len() > cap {
                    return Err(Error::TooLarge { what: "invariant form enumeration".into(), count: span.len() as u64, cap: cap as u64 });
                }
                frontier.push(y);
            }
        }
    }
    let mut forms = Vec::new();
    for t in span {
        let mut m = vec![vec![0u32; k]; k];
        for (v, &(i, j)) in vars.iter().enumerate() {
            m[i][j] = t[v];
            m[j][i] = (n - t[v]) % n;
        }
        let p = Pairing::new(ag.clone(), m)?;
        if p.is_nondegenerate().is_ok() {
            forms.push(p);
        }
    }
    Ok(InvariantForms { subgroup: sub, dual_actions, forms })
}
