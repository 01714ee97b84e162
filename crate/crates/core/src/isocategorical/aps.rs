//! The affine pseudosymplectic group `APs(V)`: `Sp(V) ⋉ V` with its multiplication twisted
//! by `b̃`, evaluated lazily from the standard twist.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::BitMatrix;
use crate::cohomology::{coboundary_solve, Coeff, Cochain2, Module, Triviality, SOLVER_CAP};
use crate::error::{Error, Result};
use crate::groups::sympl::{sp_elements, sp_generators};
use crate::groups::table::TABLE_CAP;
use crate::groups::{Group, GroupElement, TableGroup};
use crate::twists::{standard_symplectic_twist, StandardTwist};

/// `APs(V)` for `dim V = 2n`.
pub struct Aps {
    pub n: usize,
    pub twist: Arc<StandardTwist>,
}

/// Construct `APs(V)`, `1 ≤ n ≤ 3`.
pub fn build_aps(n: usize) -> Result<Aps> {
    if !(1..=3).contains(&n) {
        return Err(Error::Contract(format!("APs(V) is supported for 1 <= n <= 3, got {n}")));
    }
    Ok(Aps { n, twist: Arc::new(standard_symplectic_twist(n)?) })
}

fn parts(e: &GroupElement) -> (BitMatrix, u8) {
    match e {
        GroupElement::Affine(g, v) => (*g, *v),
        other => panic!("not an affine element: {other}"),
    }
}

impl Aps {
    pub fn order(&self) -> u64 {
        crate::groups::sympl::sp_order(self.n as u32) << (2 * self.n)
    }

    /// `b̃(g,h) ∈ V`.
    pub fn btilde(&self, g: &BitMatrix, h: &BitMatrix) -> Result<u8> {
        self.twist.btilde(g, h)
    }

    /// `(g₁,v₁) * (g₂,v₂) = (g₁g₂, b̃(g₁,g₂) + v₁ + g₁v₂)`.
    pub fn mul_checked(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let ((g1, v1), (g2, v2)) = (parts(a), parts(b));
        let bt = self.btilde(&g1, &g2)?;
        Ok(GroupElement::Affine(g1.mul(&g2), bt ^ v1 ^ g1.apply(v2)))
    }

    /// Check `b̃(g,h) + b̃(gh,k) = g·b̃(h,k) + b̃(g,hk)` on random triples of `Sp(V)`;
    /// returns the number of triples checked.
    pub fn check_cocycle_identity(&self, samples: usize, seed: u64) -> Result<usize> {
        let sp = sp_elements(self.n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (g, h, k) = (sp[rng.gen_range(0..sp.len())], sp[rng.gen_range(0..sp.len())], sp[rng.gen_range(0..sp.len())]);
            let left = self.btilde(&g, &h)? ^ self.btilde(&g.mul(&h), &k)?;
            let right = g.apply(self.btilde(&h, &k)?) ^ self.btilde(&g, &h.mul(&k))?;
            if left != right {
                return Err(Error::Internal(format!("b̃ fails the cocycle identity at ({}, {}, {})", g.to_text(), h.to_text(), k.to_text())));
            }
        }
        Ok(samples)
    }

    /// `b̃` as a table on `Sp(V)` with values in `V`, for `n ≤ 2`.
    pub fn btilde_table(&self) -> Result<(TableGroup, Cochain2)> {
        if self.n > 2 {
            return Err(Error::TooLarge { what: "b̃ table on Sp(V)".into(), count: crate::groups::sympl::sp_order(self.n as u32), cap: 720 });
        }
        let sp = crate::groups::builtin::MatrixGroup::new(format!("sp({})", self.n), 2 * self.n, sp_generators(self.n));
        let (k, elems) = TableGroup::from_group(&sp, TABLE_CAP)?;
        let action = elems.iter().map(|g| self.twist.act(g)).collect();
        let module = Arc::new(Module { group: self.twist.group.clone(), action: Some(action) });
        let mut values = Vec::with_capacity(elems.len() * elems.len());
        for g in &elems {
            for h in &elems {
                values.push(self.btilde(g, h)? as usize);
            }
        }
        Ok((k, Cochain2 { size: elems.len(), coeff: Coeff::Module(module), values }))
    }

    /// Decide whether the class of `b̃` in `H²(Sp(V), V)` vanishes (`n ≤ 2`).
    pub fn decide_triviality(&self) -> Result<Triviality> {
        let (k, c) = self.btilde_table()?;
        coboundary_solve(&k, &c, SOLVER_CAP)
    }
}

impl Group for Aps {
    type Elem = GroupElement;

    fn identity(&self) -> GroupElement {
        GroupElement::Affine(BitMatrix::identity(2 * self.n), 0)
    }

    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.mul_checked(a, b).expect("splittings exist for every element of Sp(V)")
    }

    fn inv(&self, a: &GroupElement) -> GroupElement {
        let (g, v) = parts(a);
        let gi = g.inverse().expect("invertible");
        let bt = self.btilde(&g, &gi).expect("splittings exist for every element of Sp(V)");
        GroupElement::Affine(gi, gi.apply(bt ^ v))
    }

    fn generators(&self) -> Vec<GroupElement> {
        let mut gens: Vec<GroupElement> = sp_generators(self.n).into_iter().map(|s| GroupElement::Affine(s, 0)).collect();
        gens.extend((0..2 * self.n).map(|i| GroupElement::Affine(BitMatrix::identity(2 * self.n), 1 << i)));
        gens
    }

    fn name(&self) -> String {
        format!("aps({})", self.n)
    }

    fn format_elem(&self, e: &GroupElement) -> String {
        e.to_string()
    }
}
