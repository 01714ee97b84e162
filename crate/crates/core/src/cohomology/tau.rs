//! The τ map: from a K-invariant class `J` on `A∨` to a class `b̃` in `H²(K, A)`.
//!
//! Characters of `A` are indexed by `A` itself through the dot pairing. For each `g`,
//! `z(g)` splits the symmetric cocycle `J^g − J`, and
//! `b̃(g,h) = z(gh) − z(g) − z(h)^g` is a character of `A∨`, i.e. an element of `A`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, TableGroup};

use super::coboundary::{coboundary_solve, Triviality, SOLVER_CAP};
use super::cochain::{is_cocycle2, Coeff, Cochain1, Cochain2, Module};
use super::split::{lift1, split_symmetric_unchecked};

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Evaluates `z(g)` and `b̃(g,h)` for a fixed `J`, given the action of group elements on `A`.
/// Works without a table of `K`, so it serves large groups evaluated pointwise.
pub struct TauContext<'a> {
    a: &'a AbelianGroup,
    j: &'a Cochain2,
    n: u32,
}

impl<'a> TauContext<'a> {
    pub fn new(a: &'a AbelianGroup, j: &'a Cochain2) -> Result<Self> {
        let Coeff::Mu(n) = j.coeff else {
            return Err(Error::Contract("J must be μ_N-valued".into()));
        };
        if j.size != a.order() {
            return Err(Error::Dimension("J and A have different sizes".into()));
        }
        Ok(TauContext { a, j, n })
    }

    /// The permutation `x ↦ g⁻¹·x` on character indices, from the permutation `a ↦ g·a` of `A`.
    pub fn pull(&self, act_g: &[usize]) -> Vec<usize> {
        // χ_x ∘ g is the character g⁻¹·χ_x.
        self.a.dual_action(act_g)
    }

    /// `J^g − J` where `J^g(x,y) = J(g⁻¹x, g⁻¹y)`.
    pub fn defect(&self, pull: &[usize]) -> Cochain2 {
        let c = &self.j.coeff;
        Cochain2::from_fn(self.j.size, c.clone(), |x, y| c.sub(self.j.get(pull[x], pull[y]), self.j.get(x, y)))
    }

    /// A splitting of `J^g − J`; rejects a non-symmetric defect.
    pub fn z(&self, pull: &[usize]) -> Result<Cochain1> {
        let d = self.defect(pull);
        if let Some((x, y)) = d.asymmetry() {
            return Err(Error::NotInvariant(format!(
                "J^g/J is not symmetric at ({}, {}) for g acting by {:?}",
                x,
                y,
                pull.iter().take(8).collect::<Vec<_>>()
            )));
        }
        split_symmetric_unchecked(self.a, &d)
    }

    /// `b̃(g,h)` as an element of `A`, given `z(g)`, `z(h)`, `z(gh)` and the pullback of `g`.
    pub fn btilde(&self, zg: &Cochain1, zh: &Cochain1, zgh: &Cochain1, pull_g: &[usize]) -> Result<usize> {
        let m = [zg, zh, zgh].iter().fold(self.n, |acc, z| match z.coeff {
            Coeff::Mu(k) => lcm(acc, k),
            _ => acc,
        });
        let (zg, zh, zgh) = (lift1(zg, m)?, lift1(zh, m)?, lift1(zgh, m)?);
        let mm = m as usize;
        let values: Vec<usize> = (0..self.a.order()).map(|x| (zgh.get(x) + 2 * mm - zg.get(x) - zh.get(pull_g[x])) % mm).collect();
        character_to_element(self.a, &values, m).ok_or_else(|| Error::Internal("b̃(g,h) is not a character of A∨".into()))
    }
}

/// The element `a ∈ A` with `values[x] = ⟨x, a⟩` (as exponents of `ζ_M`), if any.
pub fn character_to_element(a: &AbelianGroup, values: &[usize], m: u32) -> Option<usize> {
    let n = a.exponent();
    if !m.is_multiple_of(n) || values.len() != a.order() {
        return None;
    }
    let mut coords = Vec::with_capacity(a.rank());
    for (i, &ni) in a.moduli().iter().enumerate() {
        let step = (m / ni) as usize;
        let v = values[a.unit(i)];
        if !v.is_multiple_of(step) {
            return None;
        }
        coords.push((v / step) as u32);
    }
    let elem = a.index(&coords);
    let scale = (m / n) as usize;
    (0..a.order()).all(|x| values[x] == a.dot(x, elem) as usize * scale).then_some(elem)
}

/// Output of [`tau_map`].
#[derive(Clone, Debug)]
pub struct TauResult {
    /// `z(g)` for each element of `K`, all at a common conductor.
    pub z: Vec<Cochain1>,
    /// `b̃` with values in `A` (module coefficients).
    pub btilde: Cochain2,
    /// Whether `b̃` is a coboundary, when the solver could decide it.
    pub triviality: Option<Triviality>,
}

/// Run τ on a table group `k` acting on `A` (the module), for the μ_N cocycle `J` on `A∨`.
pub fn tau_map(k: &TableGroup, module: &Arc<Module>, j: &Cochain2) -> Result<TauResult> {
    tau_map_with(k, module, j, true)
}

/// [`tau_map`] with the triviality decision optional.
pub fn tau_map_with(k: &TableGroup, module: &Arc<Module>, j: &Cochain2, decide: bool) -> Result<TauResult> {
    let a = &module.group;
    let ctx = TauContext::new(a, j)?;
    if a.order() <= 256 {
        if let Err((x, y, z)) = is_cocycle2(a, j) {
            return Err(Error::NotCocycle { x, y, z });
        }
    }
    let size = k.order();
    let acts: Vec<Vec<usize>> = (0..size).map(|g| (0..a.order()).map(|x| module.act(g, x)).collect()).collect();
    let pulls: Vec<Vec<usize>> = acts.iter().map(|act| ctx.pull(act)).collect();
    let mut z = Vec::with_capacity(size);
    for g in 0..size {
        let zg = ctx.z(&pulls[g]).map_err(|e| match e {
            Error::NotInvariant(_) => Error::NotInvariant(format!("J^g/J is not symmetric for g = {}", k.label(g as u32))),
            other => other,
        })?;
        z.push(zg);
    }
    let m = z.iter().fold(ctx.n, |acc, c| match c.coeff {
        Coeff::Mu(k) => lcm(acc, k),
        _ => acc,
    });
    let z: Vec<Cochain1> = z.iter().map(|c| lift1(c, m)).collect::<Result<_>>()?;
    let coeff = Coeff::Module(module.clone());
    let mut values = Vec::with_capacity(size * size);
    for g in 0..size {
        for h in 0..size {
            let gh = k.m(g as u32, h as u32) as usize;
            values.push(ctx.btilde(&z[g], &z[h], &z[gh], &pulls[g])?);
        }
    }
    let btilde = Cochain2 { size, coeff, values };
    if let Err((x, y, w)) = is_cocycle2(k, &btilde) {
        return Err(Error::Internal(format!("b̃ fails the cocycle identity at ({x}, {y}, {w})")));
    }
    let triviality = if decide && size * a.rank() <= SOLVER_CAP { Some(coboundary_solve(k, &btilde, SOLVER_CAP)?) } else { None };
    Ok(TauResult { z, btilde, triviality })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cochain::d1;
    use crate::cohomology::split::gauge;
    use crate::groups::table::TABLE_CAP;
    use crate::groups::{build_group, GroupSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// `Sp(2n,2)` as a table acting on `V = F₂^{2n}`.
    fn sp_module(n: u8) -> (TableGroup, Arc<Module>) {
        let g = build_group(&format!("sp({n})").parse::<GroupSpec>().unwrap()).unwrap();
        let (k, elems) = TableGroup::from_group(&g, TABLE_CAP).unwrap();
        let a = AbelianGroup::elementary(2, 2 * n as usize);
        let action = elems
            .iter()
            .map(|e| match e {
                crate::groups::GroupElement::Matrix(m) => (0..a.order()).map(|v| m.apply(v as u8) as usize).collect(),
                _ => unreachable!(),
            })
            .collect();
        (k, Arc::new(Module { group: a, action: Some(action) }))
    }

    /// `J(x,x') = (−1)^{f_x·y_x'}` with `y` in the low bits.
    fn standard_j(n: usize) -> Cochain2 {
        let mask = (1usize << n) - 1;
        Cochain2::from_fn(1 << (2 * n), Coeff::Mu(2), |x, y| ((x >> n) & y & mask).count_ones() as usize % 2)
    }

    #[test]
    fn trivial_group_gives_trivial_btilde() {
        let k = TableGroup::from_group(&build_group(&"cyclic(1)".parse::<GroupSpec>().unwrap()).unwrap(), TABLE_CAP).unwrap().0;
        let a = AbelianGroup::elementary(2, 2);
        let module = Arc::new(Module { group: a, action: None });
        let t = tau_map(&k, &module, &standard_j(1)).unwrap();
        assert!(t.btilde.is_trivial());
    }

    #[test]
    fn character_extraction_round_trip() {
        let a = AbelianGroup::new(vec![3, 9]).unwrap();
        for e in 0..a.order() {
            let values: Vec<usize> = (0..a.order()).map(|x| a.dot(x, e) as usize * 2).collect();
            assert_eq!(character_to_element(&a, &values, 18), Some(e));
        }
        let mut bad: Vec<usize> = (0..a.order()).map(|x| a.dot(x, 4) as usize).collect();
        bad[5] += 1;
        assert_eq!(character_to_element(&a, &bad, 9), None);
    }

    #[test]
    fn sp_btilde_is_a_cocycle_and_splittings_verify() {
        let (k, module) = sp_module(1);
        let j = standard_j(1);
        let t = tau_map(&k, &module, &j).unwrap();
        let ctx = TauContext::new(&module.group, &j).unwrap();
        for g in 0..k.order() {
            let act: Vec<usize> = (0..4).map(|x| module.act(g, x)).collect();
            let d = ctx.defect(&ctx.pull(&act));
            let m = match t.z[g].coeff {
                Coeff::Mu(m) => m,
                _ => unreachable!(),
            };
            assert_eq!(d1(&module.group, &t.z[g]), crate::cohomology::split::lift2(&d, m).unwrap());
        }
        assert!(t.triviality.is_some());
    }

    #[test]
    fn gauge_changes_btilde_by_a_coboundary() {
        let (k, module) = sp_module(1);
        let a = module.group.clone();
        let j = standard_j(1);
        let base = tau_map_with(&k, &module, &j, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let mut xs: Vec<usize> = (0..a.order()).map(|_| rng.gen_range(0..4)).collect();
            xs[0] = 0;
            let jx = gauge(&a, &j, &Cochain1 { coeff: Coeff::Mu(4), values: xs }).unwrap();
            let other = tau_map_with(&k, &module, &jx, false).unwrap();
            let diff = other.btilde.add(&base.btilde.neg()).unwrap();
            assert!(coboundary_solve(&k, &diff, SOLVER_CAP).unwrap().is_coboundary().unwrap());
        }
    }

    #[test]
    fn tau_is_additive_up_to_coboundary() {
        let (k, module) = sp_module(1);
        let j1 = standard_j(1);
        // Transposed cocycle: another invariant class representative.
        let j2 = Cochain2::from_fn(4, Coeff::Mu(2), |x, y| j1.get(y, x));
        let sum = j1.add(&j2).unwrap();
        let (t1, t2, ts) = (
            tau_map_with(&k, &module, &j1, false).unwrap(),
            tau_map_with(&k, &module, &j2, false).unwrap(),
            tau_map_with(&k, &module, &sum, false).unwrap(),
        );
        let diff = ts.btilde.add(&t1.btilde.add(&t2.btilde).unwrap().neg()).unwrap();
        assert!(coboundary_solve(&k, &diff, SOLVER_CAP).unwrap().is_coboundary().unwrap());
    }

    #[test]
    fn non_invariant_class_is_rejected() {
        // Z/2 swapping the two coordinates of (Z/2)^2 fixes the symplectic form, but acting
        // on (Z/4)? Use Z/2 acting by x ↦ x on Z/3 × Z/3 with a form that is not invariant
        // under negation of one coordinate.
        let k = TableGroup::from_group(&build_group(&"cyclic(2)".parse::<GroupSpec>().unwrap()).unwrap(), TABLE_CAP).unwrap().0;
        let a = AbelianGroup::new(vec![3, 3]).unwrap();
        let flip: Vec<usize> = (0..9).map(|x| {
            let c = a.coords(x);
            a.index(&[(3 - c[0]) % 3, c[1]])
        }).collect();
        let module = Arc::new(Module { group: a.clone(), action: Some(vec![(0..9).collect(), flip]) });
        let j = Cochain2::from_fn(9, Coeff::Mu(3), |x, y| (a.coords(x)[0] * a.coords(y)[1]) as usize % 3);
        assert!(matches!(tau_map(&k, &module, &j), Err(Error::NotInvariant(_))));
    }
}
