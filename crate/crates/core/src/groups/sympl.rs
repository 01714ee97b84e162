//! Coordinates on `V = Y ⊕ Y*` over F2 and the matrix groups acting on it.
//!
//! A vector of `V` is a `u8`: bits `0..n` hold `y ∈ Y`, bits `n..2n` hold `f ∈ Y*`.
//! The symplectic pairing is `⟨(y₁,f₁),(y₂,f₂)⟩ = f₂(y₁) + f₁(y₂)`.

use std::sync::{Arc, OnceLock};

use crate::algebra::BitMatrix;
use crate::error::{Error, Result};

use super::enumerate;

#[inline]
pub fn y_part(n: usize, v: u8) -> u8 {
    v & ((1u16 << n) - 1) as u8
}

#[inline]
pub fn f_part(n: usize, v: u8) -> u8 {
    v >> n
}

#[inline]
pub fn join(n: usize, y: u8, f: u8) -> u8 {
    y | (f << n)
}

/// The symplectic pairing as a bit.
#[inline]
pub fn pairing(n: usize, v: u8, w: u8) -> bool {
    ((f_part(n, w) & y_part(n, v)).count_ones() + (f_part(n, v) & y_part(n, w)).count_ones()) & 1 == 1
}

/// `x ↦ x + ⟨x, v⟩ v`.
pub fn transvection(n: usize, v: u8) -> BitMatrix {
    let mut m = BitMatrix::zero(2 * n);
    for k in 0..2 * n {
        let e = 1u8 << k;
        let img = if pairing(n, e, v) { e ^ v } else { e };
        for i in 0..2 * n {
            if (img >> i) & 1 == 1 {
                m.set(i, k, true);
            }
        }
    }
    m
}

pub fn preserves_pairing(n: usize, g: &BitMatrix) -> bool {
    (0..2 * n).all(|i| (0..2 * n).all(|j| pairing(n, g.apply(1 << i), g.apply(1 << j)) == pairing(n, 1 << i, 1 << j)))
}

/// Transvection generators of `Sp(2n,2)`: `T_{y_i}`, `T_{f_i}` and `T_{y_i + y_{i+1}}`.
pub fn sp_generators(n: usize) -> Vec<BitMatrix> {
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(transvection(n, join(n, 1 << i, 0)));
        gens.push(transvection(n, join(n, 0, 1 << i)));
    }
    for i in 0..n.saturating_sub(1) {
        gens.push(transvection(n, join(n, (1 << i) | (1 << (i + 1)), 0)));
    }
    gens
}

/// Elementary generators `1 + E_{i,i+1}`, `1 + E_{i+1,i}` of `GL(n,2)`.
pub fn gl_generators(n: usize) -> Vec<BitMatrix> {
    if n == 1 {
        return vec![BitMatrix::identity(1)];
    }
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        let mut a = BitMatrix::identity(n);
        a.set(i, i + 1, true);
        gens.push(a);
        let mut b = BitMatrix::identity(n);
        b.set(i + 1, i, true);
        gens.push(b);
    }
    gens
}

/// The symmetric matrices `u^(ij) = E_ij + E_ji` (`i<j`) and `u^(ii) = E_ii`, a basis of `S²Y*`.
pub fn u_basis(n: usize) -> Vec<BitMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut u = BitMatrix::zero(n);
            u.set(i, j, true);
            u.set(j, i, true);
            out.push(u);
        }
    }
    out
}

/// `u^(ij)` with 1-based indices.
pub fn u_elementary(n: usize, i: usize, j: usize) -> BitMatrix {
    let mut u = BitMatrix::zero(n);
    u.set(i - 1, j - 1, true);
    u.set(j - 1, i - 1, true);
    u
}

/// `l ∈ GL(Y)` acting on `V` as `(y,f) ↦ (l y, l^{-T} f)`.
pub fn embed_l(l: &BitMatrix) -> BitMatrix {
    let n = l.dim();
    let lit = l.inverse().expect("invertible").transpose();
    BitMatrix::from_blocks(l, &BitMatrix::zero(n), &BitMatrix::zero(n), &lit)
}

/// `u ∈ S²Y*` acting on `V` as `(y,f) ↦ (y, f + u y)`.
pub fn embed_u(u: &BitMatrix) -> BitMatrix {
    let n = u.dim();
    BitMatrix::from_blocks(&BitMatrix::identity(n), &BitMatrix::zero(n), u, &BitMatrix::identity(n))
}

/// The element `u·l` of `P = L ⋉ U`.
pub fn p_element(u: &BitMatrix, l: &BitMatrix) -> BitMatrix {
    embed_u(u).mul(&embed_l(l))
}

/// Split `g ∈ P` as `u·l`; `None` if `g` does not stabilize `Y* ⊂ V`.
pub fn decompose_p(g: &BitMatrix) -> Option<(BitMatrix, BitMatrix)> {
    let (l, b, c, _) = g.blocks();
    if b.raw() != 0 {
        return None;
    }
    let linv = l.inverse()?;
    let u = c.mul(&linv);
    if !u.is_symmetric() || p_element(&u, &l) != *g {
        return None;
    }
    Some((u, l))
}

/// `l·u = l^{-T} u l^{-1}`, the conjugation action of `L` on `U`.
pub fn l_act_u(l: &BitMatrix, u: &BitMatrix) -> BitMatrix {
    let linv = l.inverse().expect("invertible");
    linv.transpose().mul(u).mul(&linv)
}

pub fn gl_order(n: u32) -> u64 {
    (0..n).map(|i| (1u64 << n) - (1u64 << i)).product()
}

pub fn sp_order(n: u32) -> u64 {
    (1u64 << (n * n)) * (1..=n).map(|i| (1u64 << (2 * i)) - 1).product::<u64>()
}

/// Enumeration of `Sp(2n,2)`, `n ≤ 3`, computed once per process.
pub fn sp_elements(n: usize) -> Result<Arc<Vec<BitMatrix>>> {
    static CACHE: [OnceLock<Arc<Vec<BitMatrix>>>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    if !(1..=3).contains(&n) {
        return Err(Error::Contract(format!("Sp(2n,2) enumeration supported for 1 <= n <= 3, got {n}")));
    }
    if let Some(v) = CACHE[n].get() {
        return Ok(v.clone());
    }
    let g = super::builtin::MatrixGroup::new(format!("sp({n})"), 2 * n, sp_generators(n));
    let elems = Arc::new(enumerate(&g, 2_000_000)?);
    Ok(CACHE[n].get_or_init(|| elems).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transvections_are_symplectic() {
        for n in 1..=3 {
            for g in sp_generators(n) {
                assert!(preserves_pairing(n, &g));
            }
        }
    }

    #[test]
    fn p_action_formulas() {
        for n in 1..=3 {
            for u in u_basis(n) {
                let g = embed_u(&u);
                assert!(preserves_pairing(n, &g));
                for v in 0..(1u16 << (2 * n)) {
                    let v = v as u8;
                    let (y, f) = (y_part(n, v), f_part(n, v));
                    assert_eq!(g.apply(v), join(n, y, f ^ u.apply(y)));
                }
            }
            for l in gl_generators(n) {
                let g = embed_l(&l);
                assert!(preserves_pairing(n, &g));
                let lit = l.inverse().unwrap().transpose();
                for v in 0..(1u16 << (2 * n)) {
                    let v = v as u8;
                    assert_eq!(g.apply(v), join(n, l.apply(y_part(n, v)), lit.apply(f_part(n, v))));
                }
                for u in u_basis(n) {
                    let p = p_element(&u, &l);
                    assert_eq!(decompose_p(&p), Some((u, l)));
                    let conj = embed_l(&l).mul(&embed_u(&u)).mul(&embed_l(&l.inverse().unwrap()));
                    assert_eq!(conj, embed_u(&l_act_u(&l, &u)));
                }
            }
        }
    }

    #[test]
    fn order_formulas() {
        assert_eq!(gl_order(3), 168);
        assert_eq!(sp_order(1), 6);
        assert_eq!(sp_order(2), 720);
        assert_eq!(sp_order(3), 1_451_520);
    }
}
