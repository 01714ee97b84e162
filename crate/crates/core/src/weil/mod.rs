//! The Weil representation of the Heisenberg group over F2, used as an independent
//! oracle for `b̃`.
//!
//! Vectors of `V` use the coordinates of [`crate::groups::sympl`]: `v = (y, f)`.
//! `H = Fun(Y, C)` has the basis of delta functions indexed by `x ∈ Y`.
//! `ρ(y)` shifts (`(ρ(y)φ)(x) = φ(x+y)`), `ρ(f)` multiplies by `(−1)^{f(x)}`, and
//! `ρ(y,f) = ρ(f)ρ(y)`. Then `ρ(v₁)ρ(v₂) = ρ(v₁+v₂)·(−1)^{f₂(y₁)}` exactly.
//!
//! A point `v ∈ V` stands for the character `χ_v = (−1)^{⟨v,·⟩}`. Its dot index in
//! `A∨` is `Ωv`, where `Ω` swaps `y` and `f`. Under that identification the cocycle above
//! is the standard twist, and `z(g)` is read at `Ωv`.

mod gauss;
mod ps;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::BitMatrix;
use crate::error::{Error, Result};
use crate::groups::sympl::{f_part, join, pairing, preserves_pairing, sp_generators, y_part};
use crate::groups::Group;
use crate::twists::{standard_symplectic_twist, StandardTwist};

pub use gauss::{solve_monomial_intertwiner, Gauss, Operator as ProjectiveOperator};
pub use ps::{ps_compose, ps_lift, ps_member};

/// Largest `n` handled here (8×8 operators).
pub const WEIL_MAX_N: usize = 3;

fn check_n(n: usize) -> Result<()> {
    if !(1..=WEIL_MAX_N).contains(&n) {
        return Err(Error::Contract(format!("Weil representation supported for 1 <= n <= {WEIL_MAX_N}, got {n}")));
    }
    Ok(())
}

/// `Ω(y,f) = (f,y)`: a point of `V` to the dot index of its character.
#[inline]
pub fn omega(n: usize, v: u8) -> u8 {
    join(n, f_part(n, v), y_part(n, v))
}

/// The Heisenberg cocycle as a bit: `J(v₁,v₂) = f₂(y₁)`.
#[inline]
pub fn heisenberg_cocycle(n: usize, v1: u8, v2: u8) -> u8 {
    ((f_part(n, v2) & y_part(n, v1)).count_ones() & 1) as u8
}

/// An element `(v, c)` of the Heisenberg group; `sign` is `c = (−1)^sign`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HeisenbergElement {
    pub v: u8,
    pub sign: u8,
}

/// The extension of `V` by `±1` through the cocycle `J`.
#[derive(Clone, Debug)]
pub struct Heisenberg {
    pub n: usize,
}

pub fn heisenberg(n: usize) -> Result<Heisenberg> {
    check_n(n)?;
    Ok(Heisenberg { n })
}

impl Heisenberg {
    pub fn order(&self) -> usize {
        1 << (2 * self.n + 1)
    }

    pub fn elements(&self) -> Vec<HeisenbergElement> {
        (0..1u16 << (2 * self.n)).flat_map(|v| [0, 1].map(|sign| HeisenbergElement { v: v as u8, sign })).collect()
    }

    pub fn center(&self) -> Vec<HeisenbergElement> {
        let all = self.elements();
        all.iter().copied().filter(|a| all.iter().all(|b| self.mul(a, b) == self.mul(b, a))).collect()
    }
}

impl Group for Heisenberg {
    type Elem = HeisenbergElement;

    fn identity(&self) -> HeisenbergElement {
        HeisenbergElement { v: 0, sign: 0 }
    }

    fn mul(&self, a: &HeisenbergElement, b: &HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement { v: a.v ^ b.v, sign: a.sign ^ b.sign ^ heisenberg_cocycle(self.n, a.v, b.v) }
    }

    fn inv(&self, a: &HeisenbergElement) -> HeisenbergElement {
        // (v,c)(v,c') = (0, cc'J(v,v)).
        HeisenbergElement { v: a.v, sign: a.sign ^ heisenberg_cocycle(self.n, a.v, a.v) }
    }

    fn generators(&self) -> Vec<HeisenbergElement> {
        (0..2 * self.n).map(|i| HeisenbergElement { v: 1 << i, sign: 0 }).collect()
    }

    fn name(&self) -> String {
        format!("heisenberg({})", self.n)
    }
}

/// `ρ(v)` as an exact matrix: entry `(x, x+y)` is `(−1)^{f(x)}`.
pub fn rho(v: u8, n: usize) -> Result<ProjectiveOperator> {
    check_n(n)?;
    if (v as u16) >> (2 * n) != 0 {
        return Err(Error::Dimension(format!("vector {v:#x} is outside F2^{}", 2 * n)));
    }
    Ok(rho_unchecked(v, n))
}

fn rho_unchecked(v: u8, n: usize) -> ProjectiveOperator {
    let dim = 1usize << n;
    let (y, f) = (y_part(n, v) as usize, f_part(n, v) as usize);
    let mut m = ProjectiveOperator::zero(dim);
    for x in 0..dim {
        let s = ((f & x).count_ones() & 1) * 2;
        m.set(x, x ^ y, Gauss::unit(s));
    }
    m
}

/// `c·ρ(v)` for a Heisenberg element.
pub fn rho_heisenberg(n: usize, e: &HeisenbergElement) -> ProjectiveOperator {
    rho_unchecked(e.v, n).scale(Gauss::unit(2 * e.sign as u32))
}

/// `T_{χ_v}`: the operator with `ρ(w)T = Tρ(w)χ_v(w)` for every basis vector `w`, unique
/// up to scalar and proportional to `ρ(v)`.
pub fn t_chi(v: u8, n: usize) -> Result<ProjectiveOperator> {
    check_n(n)?;
    let pairs: Vec<_> = (0..2 * n)
        .map(|i| {
            let w = 1u8 << i;
            let r = rho_unchecked(w, n);
            let chi = if pairing(n, v, w) { 2 } else { 0 };
            (r.clone(), r.scale(Gauss::unit(chi)))
        })
        .collect();
    let (dim, sol) = solve_monomial_intertwiner(1 << n, &pairs).map_err(Error::Internal)?;
    let t = sol.ok_or_else(|| Error::Internal(format!("T_chi for v={v:#x}: solution space has dimension {dim}")))?;
    if !t.proportional(&rho_unchecked(v, n)) {
        return Err(Error::Internal(format!("T_chi for v={v:#x} is not proportional to rho(v)")));
    }
    Ok(t)
}

/// Computes `A(g)` from the splittings of the standard twist.
pub struct WeilContext {
    pub n: usize,
    pub twist: Arc<StandardTwist>,
}

impl WeilContext {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(WeilContext { n, twist: Arc::new(standard_symplectic_twist(n)?) })
    }

    pub fn with_twist(twist: Arc<StandardTwist>) -> Result<Self> {
        check_n(twist.n)?;
        Ok(WeilContext { n: twist.n, twist })
    }

    /// `ρ̃^g(v) = ρ(g⁻¹v)·z(g)(Ωv)`.
    pub fn rho_tilde(&self, g: &BitMatrix, v: u8) -> Result<ProjectiveOperator> {
        let n = self.n;
        let ginv = g.inverse().ok_or_else(|| Error::Contract("g is not invertible".into()))?;
        let z = self.twist.z(g)?;
        Ok(rho_unchecked(ginv.apply(v), n).scale(Gauss::unit(z.get(omega(n, v) as usize) as u32)))
    }

    /// `A(g)` with `A(g)ρ̃^g(v) = ρ(v)A(g)`, verified unique up to scalar and invertible.
    pub fn weil_operator(&self, g: &BitMatrix) -> Result<ProjectiveOperator> {
        let n = self.n;
        if g.dim() != 2 * n || !preserves_pairing(n, g) {
            return Err(Error::Contract(format!("g is not in Sp({}, 2)", 2 * n)));
        }
        let pairs = (0..2 * n)
            .map(|i| Ok((rho_unchecked(1 << i, n), self.rho_tilde(g, 1 << i)?)))
            .collect::<Result<Vec<_>>>()?;
        let (dim, sol) = solve_monomial_intertwiner(1 << n, &pairs).map_err(Error::Internal)?;
        let a = sol.ok_or_else(|| {
            Error::Internal(format!("intertwiner space for g={g:?} has dimension {dim}; z(g) does not split the defect"))
        })?;
        if a.determinant_is_zero() {
            return Err(Error::Internal(format!("A(g) is singular for g={g:?}")));
        }
        Ok(a)
    }

    /// The unique `v` with `A(gh) ∝ T_{χ_v}A(g)A(h)`.
    pub fn crosscheck_btilde(&self, g: &BitMatrix, h: &BitMatrix) -> Result<u8> {
        let (ag, ah, agh) = (self.weil_operator(g)?, self.weil_operator(h)?, self.weil_operator(&g.mul(h))?);
        let prod = ag.mul(&ah);
        let hits: Vec<u8> = (0..1u16 << (2 * self.n))
            .map(|v| v as u8)
            .filter(|&v| agh.proportional(&rho_unchecked(v, self.n).mul(&prod)))
            .collect();
        match hits.as_slice() {
            [v] => Ok(*v),
            [] => Err(Error::Internal("no T_chi relates A(gh) to A(g)A(h)".into())),
            _ => Err(Error::Internal(format!("ambiguous T_chi candidates {hits:?}"))),
        }
    }
}

/// One compared pair in a crosscheck run.
#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckRecord {
    pub g: u64,
    pub h: u64,
    pub weil: u8,
    pub cohomology: u8,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub n: usize,
    pub pairs: usize,
    pub agree: usize,
    pub mismatches: Vec<CrosscheckRecord>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.agree == self.pairs
    }
}

/// A random element of `Sp(2n,2)` as a product of `len` transvection generators.
pub fn random_sp_element<R: Rng>(n: usize, len: usize, rng: &mut R) -> BitMatrix {
    let gens = sp_generators(n);
    let mut g = BitMatrix::identity(2 * n);
    for _ in 0..len {
        g = g.mul(&gens[rng.gen_range(0..gens.len())]);
    }
    g
}

/// Compare the Weil-side `v` with `b̃(g,h)` from the cohomology side on `pairs` seeded
/// random pairs.
pub fn crosscheck_run(n: usize, pairs: usize, seed: u64) -> Result<CrosscheckReport> {
    let ctx = WeilContext::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agree = 0;
    let mut mismatches = Vec::new();
    for _ in 0..pairs {
        let g = random_sp_element(n, 40, &mut rng);
        let h = random_sp_element(n, 40, &mut rng);
        let weil = ctx.crosscheck_btilde(&g, &h)?;
        let cohomology = ctx.twist.btilde(&g, &h)?;
        if weil == cohomology {
            agree += 1;
        } else {
            mismatches.push(CrosscheckRecord { g: g.raw(), h: h.raw(), weil, cohomology });
        }
    }
    Ok(CrosscheckReport { n, pairs, agree, mismatches })
}
