//! The standard twist on `V = Y ⊕ Y*` over F2 and its splittings `z(g)`.
//!
//! In dot coordinates the twist is `J(x,x') = (−1)^{f_x·y_{x'}}`. For `g = u·l ∈ P` the
//! splitting of `J^g − J` has the closed form `z(ul)(x) = i^{q_u(f_x)}` with
//! `q_u(y) = yᵀuy` computed over the integers from 0/1 lifts, modulo 4. Outside `P` the
//! splitting is solved for and cached.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra::BitMatrix;
use crate::cohomology::split::{lift1, split_symmetric_unchecked};
use crate::cohomology::{Coeff, Cochain1, Cochain2, TauContext};
use crate::error::{Error, Result};
use crate::groups::sympl::{decompose_p, f_part, join, l_act_u, y_part};
use crate::groups::AbelianGroup;

/// `yᵀuy` over the integers, modulo 4.
pub fn quadratic(u: &BitMatrix, y: u8) -> u32 {
    let n = u.dim();
    let mut s = 0u32;
    for m in 0..n {
        if (y >> m) & 1 == 0 {
            continue;
        }
        if u.get(m, m) {
            s += 1;
        }
        for j in m + 1..n {
            if (y >> j) & 1 == 1 && u.get(m, j) {
                s += 2;
            }
        }
    }
    s % 4
}

/// `χ(u,u′)` as a vector of `Y*`: component `j` is `u_jj·u′_jj`.
pub fn chi(u: &BitMatrix, u2: &BitMatrix) -> u8 {
    (0..u.dim()).filter(|&j| u.get(j, j) && u2.get(j, j)).fold(0u8, |acc, j| acc | (1 << j))
}

/// The correction `κ(l,u)(y) = ½[q_{l·u}(y) − q_u(l⁻¹y)] mod 2`, as a vector of `Y*`.
pub fn kappa(l: &BitMatrix, u: &BitMatrix) -> u8 {
    let lu = l_act_u(l, u);
    let linv = l.inverse().expect("invertible");
    let mut out = 0u8;
    for j in 0..l.dim() {
        let y = 1u8 << j;
        let d = (quadratic(&lu, y) + 4 - quadratic(u, linv.apply(y))) % 4;
        debug_assert_eq!(d % 2, 0);
        if d == 2 {
            out |= 1 << j;
        }
    }
    out
}

/// The twist data for one `n`, with the cache of solved splittings.
pub struct StandardTwist {
    pub n: usize,
    pub group: AbelianGroup,
    pub j: Cochain2,
    memo: RwLock<HashMap<BitMatrix, Arc<Cochain1>>>,
}

/// Build the standard twist on `F₂^{2n}`.
pub fn standard_symplectic_twist(n: usize) -> Result<StandardTwist> {
    if !(1..=4).contains(&n) {
        return Err(Error::Contract(format!("standard twist supported for 1 <= n <= 4, got {n}")));
    }
    let group = AbelianGroup::elementary(2, 2 * n);
    let j = Cochain2::from_fn(group.order(), Coeff::Mu(2), |x, y| (f_part(n, x as u8) & y_part(n, y as u8)).count_ones() as usize % 2);
    Ok(StandardTwist { n, group, j, memo: RwLock::new(HashMap::new()) })
}

impl StandardTwist {
    fn ctx(&self) -> TauContext<'_> {
        TauContext::new(&self.group, &self.j).expect("consistent by construction")
    }

    /// `v ↦ g·v` on indices of `V`.
    pub fn act(&self, g: &BitMatrix) -> Vec<usize> {
        (0..self.group.order()).map(|v| g.apply(v as u8) as usize).collect()
    }

    /// `x ↦ g⁻¹·x` on character indices.
    pub fn pull(&self, g: &BitMatrix) -> Vec<usize> {
        self.ctx().pull(&self.act(g))
    }

    /// The closed-form splitting for `u·l ∈ P` (it does not depend on `l`).
    pub fn z_closed(&self, u: &BitMatrix) -> Cochain1 {
        let values = (0..self.group.order()).map(|x| quadratic(u, f_part(self.n, x as u8)) as usize).collect();
        Cochain1 { coeff: Coeff::Mu(4), values }
    }

    /// `z(g)` at conductor 4: closed form on `P`, solved and cached elsewhere.
    pub fn z(&self, g: &BitMatrix) -> Result<Arc<Cochain1>> {
        if let Some((u, _)) = decompose_p(g) {
            return Ok(Arc::new(self.z_closed(&u)));
        }
        if let Some(z) = self.memo.read().expect("z cache poisoned").get(g) {
            return Ok(z.clone());
        }
        let ctx = self.ctx();
        let z = split_symmetric_unchecked(&self.group, &ctx.defect(&ctx.pull(&self.act(g))))?;
        let z = Arc::new(lift1(&z, 4)?);
        self.memo.write().expect("z cache poisoned").entry(*g).or_insert_with(|| z.clone());
        Ok(z)
    }

    /// Number of cached solved splittings.
    pub fn cached(&self) -> usize {
        self.memo.read().expect("z cache poisoned").len()
    }

    /// `b̃(g,h) = z(gh) − z(g) − z(h)^g` as a vector of `V`.
    pub fn btilde(&self, g: &BitMatrix, h: &BitMatrix) -> Result<u8> {
        let (zg, zh, zgh) = (self.z(g)?, self.z(h)?, self.z(&g.mul(h))?);
        Ok(self.ctx().btilde(&zg, &zh, &zgh, &self.pull(g))? as u8)
    }

    /// The cocycle on `P` with values in `Y*`, in the form that equals the z-quotient:
    /// `β̃(u₁l₁,u₂l₂) = χ(u₁, l₁·u₂) + κ(l₁,u₂)`. Returns the `Y*` component.
    pub fn beta(&self, g: &BitMatrix, h: &BitMatrix) -> Option<u8> {
        let (u1, l1) = decompose_p(g)?;
        let (u2, _) = decompose_p(h)?;
        Some(chi(&u1, &l_act_u(&l1, &u2)) ^ kappa(&l1, &u2))
    }

    /// The closed form `χ(u₁, l₁u₂l₁⁻¹)` without the `κ` correction.
    pub fn beta_uncorrected(&self, g: &BitMatrix, h: &BitMatrix) -> Option<u8> {
        let (u1, l1) = decompose_p(g)?;
        let (u2, _) = decompose_p(h)?;
        Some(chi(&u1, &l_act_u(&l1, &u2)))
    }

    /// Embed `f ∈ Y*` into `V`.
    pub fn embed_dual(&self, f: u8) -> u8 {
        join(self.n, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{d1, split::lift2};
    use crate::groups::sympl::{embed_l, gl_generators, p_element, sp_elements, sp_generators, u_basis, u_elementary};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p_generators(n: usize) -> Vec<BitMatrix> {
        let mut out: Vec<BitMatrix> = u_basis(n).iter().map(|u| p_element(u, &BitMatrix::identity(n))).collect();
        out.extend(gl_generators(n).iter().map(embed_l));
        out
    }

    #[test]
    fn closed_form_splits_the_defect_on_p_generators() {
        for n in 1..=3 {
            let t = standard_symplectic_twist(n).unwrap();
            let ctx = t.ctx();
            for g in p_generators(n) {
                let d = ctx.defect(&t.pull(&g));
                assert_eq!(d1(&t.group, &t.z(&g).unwrap()), lift2(&d, 4).unwrap(), "n={n}, g={}", g.to_text());
            }
        }
    }

    #[test]
    fn closed_form_values() {
        // n = 1, u = [1]: the point with f-coordinate 1 has value i.
        let t = standard_symplectic_twist(1).unwrap();
        let z = t.z_closed(&u_elementary(1, 1, 1));
        assert_eq!(z.get(join(1, 0, 1) as usize), 1);
        assert_eq!(z.get(join(1, 1, 0) as usize), 0);
        // n = 3, u = u^(11): value 1 wherever the first f-coordinate vanishes.
        let t3 = standard_symplectic_twist(3).unwrap();
        let z = t3.z_closed(&u_elementary(3, 1, 1));
        for x in 0..64u8 {
            if f_part(3, x) & 1 == 0 {
                assert_eq!(z.get(x as usize), 0);
            }
        }
        // Pure l elements: z ≡ 1.
        for l in gl_generators(3) {
            assert!(t3.z(&embed_l(&l)).unwrap().values.iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn solved_splittings_verify_and_are_cached() {
        let t = standard_symplectic_twist(2).unwrap();
        let ctx = t.ctx();
        for g in sp_generators(2) {
            let z = t.z(&g).unwrap();
            assert_eq!(z.get(0), 0);
            assert_eq!(d1(&t.group, &z), lift2(&ctx.defect(&t.pull(&g)), 4).unwrap());
        }
        let before = t.cached();
        for g in sp_generators(2) {
            t.z(&g).unwrap();
        }
        assert_eq!(t.cached(), before);
    }

    #[test]
    fn btilde_on_p_matches_corrected_beta() {
        let t = standard_symplectic_twist(2).unwrap();
        let p: Vec<BitMatrix> = sp_elements(2).unwrap().iter().filter(|g| decompose_p(g).is_some()).copied().collect();
        assert_eq!(p.len(), 8 * 6);
        for g in &p {
            for h in &p {
                assert_eq!(t.btilde(g, h).unwrap(), t.embed_dual(t.beta(g, h).unwrap()));
            }
        }
        let t3 = standard_symplectic_twist(3).unwrap();
        let p3: Vec<BitMatrix> = sp_elements(3).unwrap().iter().filter(|g| decompose_p(g).is_some()).copied().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..300 {
            let (g, h) = (p3[rng.gen_range(0..p3.len())], p3[rng.gen_range(0..p3.len())]);
            assert_eq!(t3.btilde(&g, &h).unwrap(), t3.embed_dual(t3.beta(&g, &h).unwrap()));
        }
    }

    #[test]
    fn correction_vanishes_on_u() {
        let t = standard_symplectic_twist(3).unwrap();
        let id = BitMatrix::identity(3);
        for u1 in u_basis(3) {
            for u2 in u_basis(3) {
                let (g, h) = (p_element(&u1, &id), p_element(&u2, &id));
                assert_eq!(t.beta(&g, &h), t.beta_uncorrected(&g, &h));
            }
        }
    }
}
