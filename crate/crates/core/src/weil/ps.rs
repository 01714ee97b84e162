//! Membership in the pseudosymplectic group: pairs `(g, Q)` with
//! `Q(x+y) − Q(x) − Q(y) = J(gx,gy) − J(x,y)`, everything read as exponents of `−1`.

use crate::algebra::BitMatrix;

use super::heisenberg_cocycle;

fn defect(n: usize, g: &BitMatrix, x: u8, y: u8) -> u8 {
    heisenberg_cocycle(n, g.apply(x), g.apply(y)) ^ heisenberg_cocycle(n, x, y)
}

/// Whether `(g, Q)` satisfies the defining identity for all `x, y ∈ V`. `q` is a table
/// over `V` of bits.
pub fn ps_member(n: usize, g: &BitMatrix, q: &[u8]) -> bool {
    let size = 1usize << (2 * n);
    if g.dim() != 2 * n || q.len() != size || !g.is_invertible() {
        return false;
    }
    (0..size).all(|x| {
        (0..size).all(|y| (q[x ^ y] ^ q[x] ^ q[y]) & 1 == defect(n, g, x as u8, y as u8))
    })
}

/// Some `Q` with `(g, Q)` a member, if one exists: `Q` is fixed on a basis at zero and
/// extended by the identity, then checked.
pub fn ps_lift(n: usize, g: &BitMatrix) -> Option<Vec<u8>> {
    let size = 1usize << (2 * n);
    let mut q = vec![0u8; size];
    for x in 1..size {
        let low = x & x.wrapping_neg();
        let rest = x ^ low;
        q[x] = q[rest] ^ q[low] ^ defect(n, g, rest as u8, low as u8);
    }
    ps_member(n, g, &q).then_some(q)
}

/// `(g,Q)(g′,Q′) = (gg′, x ↦ Q(g′x) + Q′(x))`.
pub fn ps_compose(n: usize, (g, q): (&BitMatrix, &[u8]), (g2, q2): (&BitMatrix, &[u8])) -> (BitMatrix, Vec<u8>) {
    let size = 1usize << (2 * n);
    let q3 = (0..size).map(|x| q[g2.apply(x as u8) as usize] ^ q2[x]).collect();
    (g.mul(g2), q3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::sympl::{sp_elements, transvection};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// All members `(g, Q)` with `g ∈ Sp`: one lift shifted by every linear functional.
    fn members(n: usize) -> Vec<(BitMatrix, Vec<u8>)> {
        let size = 1usize << (2 * n);
        let mut out = Vec::new();
        for g in sp_elements(n).unwrap().iter() {
            if let Some(q) = ps_lift(n, g) {
                for lin in 0..size {
                    let q2: Vec<u8> = (0..size).map(|x| q[x] ^ ((lin & x).count_ones() & 1) as u8).collect();
                    out.push((*g, q2));
                }
            }
        }
        out
    }

    #[test]
    fn trivial_and_failing_cases() {
        assert!(ps_member(1, &BitMatrix::identity(2), &[0; 4]));
        // T_y moves (y,0) to (y,y*), changing J(x,x), so no Q exists for it.
        let t = transvection(1, 0b01);
        assert!(!ps_member(1, &t, &[0; 4]));
        assert!(ps_lift(1, &t).is_none());
        // The swap preserves J(x,x) = y*(y) and lifts.
        assert!(ps_lift(1, &BitMatrix::from_rows(2, &[0b10, 0b01])).is_some());
        assert!(!ps_member(1, &BitMatrix::identity(2), &[0, 1, 0, 0]));
    }

    #[test]
    fn lift_exists_exactly_on_the_orthogonal_group() {
        for n in 1..=2 {
            for g in sp_elements(n).unwrap().iter() {
                let preserves = (0..1u8 << (2 * n)).all(|x| heisenberg_cocycle(n, g.apply(x), g.apply(x)) == heisenberg_cocycle(n, x, x));
                assert_eq!(ps_lift(n, g).is_some(), preserves);
            }
        }
    }

    #[test]
    fn composition_is_closed() {
        let m1 = members(1);
        assert_eq!(m1.len(), 2 * 4);
        for a in &m1 {
            for b in &m1 {
                let (g, q) = ps_compose(1, (&a.0, &a.1), (&b.0, &b.1));
                assert!(ps_member(1, &g, &q));
            }
        }
        let m2 = members(2);
        assert_eq!(m2.len(), 72 * 16);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..3000 {
            let (a, b) = (&m2[rng.gen_range(0..m2.len())], &m2[rng.gen_range(0..m2.len())]);
            let (g, q) = ps_compose(2, (&a.0, &a.1), (&b.0, &b.1));
            assert!(ps_member(2, &g, &q));
        }
    }
}
