//! Deciding whether a module-valued 2-cocycle is a coboundary.
//!
//! Unknowns are the coordinates of `c₁(g) ∈ A`. Only the equations
//! `c₁(g) + g·c₁(s) − c₁(gs) = c(g,s)` with `s` a generator are used for solving: for a
//! 2-cocycle they imply the equations for all pairs (induct on word length of the second
//! argument), so an inconsistency among them proves nontriviality. Any solution is
//! re-verified on every pair.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::f2::Insert;
use crate::algebra::zn::{inconsistency_certificate, solve_zn};
use crate::algebra::{F2Eliminator, F2Vector, ZnVector};
use crate::error::{Error, Result};
use crate::groups::TableGroup;

use super::cochain::{d1, is_cocycle2, Coeff, Cochain1, Cochain2, Module};

/// Default cap on the number of scalar unknowns.
pub const SOLVER_CAP: usize = 200_000;

/// Largest unknown count handled by the dense Z/N path.
pub const DENSE_ZN_CAP: usize = 4_000;

/// One scalar equation: the pair `(g, s)` and the coordinate of `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationId {
    pub g: usize,
    pub s: usize,
    pub component: usize,
}

/// Proof that a system is inconsistent: a combination of equations whose left-hand sides
/// cancel while the right-hand sides do not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub modulus: u32,
    pub combination: Vec<(EquationId, u32)>,
}

#[derive(Clone, Debug)]
pub enum Triviality {
    /// `d1 c₁ = c`.
    Coboundary(Cochain1),
    Nontrivial(Certificate),
    Undecided(String),
}

impl Triviality {
    pub fn is_coboundary(&self) -> Option<bool> {
        match self {
            Triviality::Coboundary(_) => Some(true),
            Triviality::Nontrivial(_) => Some(false),
            Triviality::Undecided(_) => None,
        }
    }
}

fn module_of(c: &Cochain2) -> Result<Arc<Module>> {
    match &c.coeff {
        Coeff::Module(m) => Ok(m.clone()),
        Coeff::Mu(_) => Err(Error::Contract("coboundary_solve needs module coefficients".into())),
    }
}

/// Coefficients of one scalar equation over `Z/N`, with all components scaled into `Z/N`
/// (`N = exp(A)`): a Z/n_i equation is multiplied by `N/n_i`.
fn equation(k: &TableGroup, m: &Module, c: &Cochain2, id: EquationId, mats: &[Vec<Vec<u32>>]) -> (Vec<(usize, u32)>, u32) {
    let a = &m.group;
    let r = a.rank();
    let n = a.exponent();
    let i = id.component;
    let scale = n / a.moduli()[i];
    let gs = k.m(id.g as u32, id.s as u32) as usize;
    let mut terms: Vec<(usize, u32)> = Vec::with_capacity(r + 2);
    terms.push((id.g * r + i, scale % n));
    for j in 0..r {
        let t = mats[id.g][i][j];
        if t != 0 {
            terms.push((id.s * r + j, (t * scale) % n));
        }
    }
    terms.push((gs * r + i, (n - scale % n) % n));
    let rhs = (a.coords(c.get(id.g, id.s))[i] * scale) % n;
    (terms, rhs)
}

fn dense_row(terms: &[(usize, u32)], len: usize, n: u32) -> Vec<u32> {
    let mut row = vec![0u32; len];
    for &(v, coef) in terms {
        row[v] = (row[v] + coef) % n;
    }
    row
}

fn equation_ids(k: &TableGroup, r: usize, all_pairs: bool) -> Vec<EquationId> {
    let seconds: Vec<usize> = if all_pairs { (0..k.order()).collect() } else { k.generator_indices().iter().map(|&s| s as usize).collect() };
    let mut ids = Vec::new();
    for g in 0..k.order() {
        for &s in &seconds {
            for component in 0..r {
                ids.push(EquationId { g, s, component });
            }
        }
    }
    ids
}

/// Decide whether `c` is a coboundary on the table group `k`.
pub fn coboundary_solve(k: &TableGroup, c: &Cochain2, cap: usize) -> Result<Triviality> {
    let m = module_of(c)?;
    if c.size != k.order() {
        return Err(Error::Dimension("cochain and group sizes differ".into()));
    }
    let r = m.group.rank();
    let unknowns = k.order() * r;
    if unknowns > cap {
        return Ok(Triviality::Undecided(format!("{unknowns} unknowns exceed the solver cap {cap}")));
    }
    if r == 0 {
        return Ok(Triviality::Coboundary(Cochain1::constant(k.order(), c.coeff.clone(), 0)));
    }
    if k.order() <= 512 {
        if let Err((x, y, z)) = is_cocycle2(k, c) {
            return Err(Error::NotCocycle { x, y, z });
        }
    }
    let mats: Vec<Vec<Vec<u32>>> = (0..k.order()).map(|g| m.matrix(g)).collect();
    for all_pairs in [false, true] {
        let ids = equation_ids(k, r, all_pairs);
        let outcome = if m.group.is_elementary_two() {
            solve_f2_system(k, &m, c, &ids, &mats, unknowns)
        } else {
            if unknowns > DENSE_ZN_CAP {
                return Ok(Triviality::Undecided(format!("{unknowns} unknowns exceed the dense Z/N limit {DENSE_ZN_CAP}")));
            }
            solve_zn_system(k, &m, c, &ids, &mats, unknowns)?
        };
        match outcome {
            Err(cert) => return Ok(Triviality::Nontrivial(cert)),
            Ok(x) => {
                let c1 = Cochain1 {
                    coeff: c.coeff.clone(),
                    values: (0..k.order()).map(|g| m.group.index(&x[g * r..(g + 1) * r])).collect(),
                };
                if d1(k, &c1) == *c {
                    return Ok(Triviality::Coboundary(c1));
                }
            }
        }
    }
    Err(Error::Internal("full coboundary system solved but the solution does not verify".into()))
}

type Outcome = std::result::Result<Vec<u32>, Certificate>;

fn solve_f2_system(k: &TableGroup, m: &Module, c: &Cochain2, ids: &[EquationId], mats: &[Vec<Vec<u32>>], unknowns: usize) -> Outcome {
    let row_of = |id: EquationId| {
        let (terms, rhs) = equation(k, m, c, id, mats);
        let mut v = F2Vector::zeros(unknowns);
        for (var, coef) in terms {
            if coef % 2 == 1 {
                v.flip(var);
            }
        }
        (v, rhs % 2 == 1)
    };
    let mut elim = F2Eliminator::new(unknowns);
    let mut pivots: Vec<EquationId> = Vec::new();
    for &id in ids {
        let (row, rhs) = row_of(id);
        match elim.insert(row, rhs) {
            Insert::Pivot => pivots.push(id),
            Insert::Redundant => {}
            Insert::Inconsistent => {
                // Replay the pivots and the failing equation with provenance tracking.
                let mut small = F2Eliminator::with_provenance(unknowns, pivots.len() + 1);
                let mut order = pivots.clone();
                order.push(id);
                for (slot, &e) in order.iter().enumerate() {
                    let (row, rhs) = row_of(e);
                    if let (Insert::Inconsistent, Some(trace)) = small.insert_traced(row, rhs) {
                        let _ = slot;
                        return Err(Certificate { modulus: 2, combination: trace.into_iter().map(|t| (order[t], 1)).collect() });
                    }
                }
                unreachable!("replaying pivot equations must reproduce the inconsistency");
            }
        }
    }
    let x = elim.particular_solution();
    Ok((0..unknowns).map(|i| x.get(i) as u32).collect())
}

fn solve_zn_system(k: &TableGroup, m: &Module, c: &Cochain2, ids: &[EquationId], mats: &[Vec<Vec<u32>>], unknowns: usize) -> Result<Outcome> {
    let n = m.group.exponent();
    let mut rows = Vec::with_capacity(ids.len());
    let mut rhs = Vec::with_capacity(ids.len());
    for &id in ids {
        let (terms, b) = equation(k, m, c, id, mats);
        rows.push(dense_row(&terms, unknowns, n));
        rhs.push(b as i64);
    }
    let rhs = ZnVector::new(n, rhs);
    let sol = solve_zn(&rows, unknowns, &rhs)?;
    match sol.solution {
        Some(x) => {
            let moduli = m.group.moduli();
            let r = m.group.rank();
            Ok(Ok(x.entries.iter().enumerate().map(|(v, &e)| e % moduli[v % r]).collect()))
        }
        None => {
            let y = inconsistency_certificate(&rows, unknowns, &rhs)?.ok_or_else(|| Error::Internal("inconsistent system without certificate".into()))?;
            let combination = ids.iter().zip(&y.entries).filter(|(_, &w)| w != 0).map(|(&id, &w)| (id, w)).collect();
            Ok(Err(Certificate { modulus: n, combination }))
        }
    }
}

/// Re-check a nontriviality certificate against the cochain without any solving.
pub fn verify_certificate(k: &TableGroup, c: &Cochain2, cert: &Certificate) -> Result<bool> {
    let m = module_of(c)?;
    let n = m.group.exponent();
    if cert.modulus != n {
        return Ok(false);
    }
    let unknowns = k.order() * m.group.rank();
    let mats: Vec<Vec<Vec<u32>>> = (0..k.order()).map(|g| m.matrix(g)).collect();
    let gens: Vec<usize> = k.generator_indices().iter().map(|&s| s as usize).collect();
    let mut lhs = vec![0u64; unknowns];
    let mut rhs = 0u64;
    for &(id, w) in &cert.combination {
        if id.g >= k.order() || id.s >= k.order() || id.component >= m.group.rank() {
            return Ok(false);
        }
        let _ = &gens;
        let (terms, b) = equation(k, &m, c, id, &mats);
        for (v, coef) in terms {
            lhs[v] = (lhs[v] + coef as u64 * w as u64) % n as u64;
        }
        rhs = (rhs + b as u64 * w as u64) % n as u64;
    }
    Ok(lhs.iter().all(|&x| x == 0) && rhs != 0)
}
