//! Symplectic bases of alternating forms over F2, and halving in odd-order groups.

use super::f2::{F2Matrix, F2Vector};
use crate::error::{Error, Result};

fn pair(gram: &F2Matrix, x: &F2Vector, y: &F2Vector) -> bool {
    gram.mul_vec(y).expect("square gram matrix").dot(x)
}

/// Symplectic basis `(e_1..e_m, f_1..f_m)` for the form `R(x,y) = (-1)^{xᵀ B y}` with Gram
/// matrix `B`: `R(e_i,f_j) = (-1)^{δ_ij}` and `R(e_i,e_j) = R(f_i,f_j) = 1`.
///
/// Deterministic: the first remaining vector is paired with the first remaining vector it
/// pairs nontrivially with, and the rest is projected onto their orthogonal complement.
pub fn symplectic_basis(gram: &F2Matrix) -> Result<Vec<F2Vector>> {
    let k = gram.rows();
    if gram.cols() != k {
        return Err(Error::Dimension(format!("gram matrix {}x{}", k, gram.cols())));
    }
    for i in 0..k {
        let e = F2Vector::unit(k, i);
        if pair(gram, &e, &e) {
            return Err(Error::NotAlternating { witness: e.to_bits().into_iter().map(u32::from).collect() });
        }
        for j in i + 1..k {
            if gram.get(i, j) != gram.get(j, i) {
                let mut w = F2Vector::unit(k, i);
                w.set(j, true);
                return Err(Error::NotAlternating { witness: w.to_bits().into_iter().map(u32::from).collect() });
            }
        }
    }
    let mut rest: Vec<F2Vector> = (0..k).map(|i| F2Vector::unit(k, i)).collect();
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    while !rest.is_empty() {
        let e = rest.remove(0);
        let Some(pos) = rest.iter().position(|w| pair(gram, &e, w)) else {
            return Err(Error::Degenerate { witness: e.to_bits().into_iter().map(u32::from).collect() });
        };
        let f = rest.remove(pos);
        for w in rest.iter_mut() {
            let (we, wf) = (pair(gram, w, &e), pair(gram, w, &f));
            if wf {
                w.xor_assign(&e);
            }
            if we {
                w.xor_assign(&f);
            }
        }
        es.push(e);
        fs.push(f);
    }
    es.extend(fs);
    Ok(es)
}

/// The unique `y` with `2y = x` in `Z/n_1 × … × Z/n_k`, all `n_i` odd.
pub fn halve(moduli: &[u32], x: &[u32]) -> Result<Vec<u32>> {
    if moduli.len() != x.len() {
        return Err(Error::Dimension(format!("{} moduli, {} coordinates", moduli.len(), x.len())));
    }
    moduli
        .iter()
        .zip(x)
        .map(|(&n, &v)| {
            if n % 2 == 0 {
                Err(Error::EvenOrder(n))
            } else {
                Ok(((v as u64 % n as u64) * (n as u64).div_ceil(2) % n as u64) as u32)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard(m: usize) -> F2Matrix {
        let mut g = F2Matrix::zeros(2 * m, 2 * m);
        for i in 0..m {
            g.set(i, m + i, true);
            g.set(m + i, i, true);
        }
        g
    }

    fn assert_symplectic(gram: &F2Matrix, basis: &[F2Vector]) {
        let m = basis.len() / 2;
        for i in 0..2 * m {
            for j in 0..2 * m {
                let expected = (i < m && j == i + m) || (j < m && i == j + m);
                assert_eq!(pair(gram, &basis[i], &basis[j]), expected, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn rank_two() {
        let g = standard(1);
        let b = symplectic_basis(&g).unwrap();
        assert_eq!(b[0].to_bits(), vec![1, 0]);
        assert_eq!(b[1].to_bits(), vec![0, 1]);
        assert_symplectic(&g, &b);
    }

    #[test]
    fn rank_four_and_scrambled() {
        let g = standard(2);
        let b = symplectic_basis(&g).unwrap();
        assert_eq!(b.len(), 4);
        assert_symplectic(&g, &b);
        // A form whose first basis vector pairs with the last one only.
        let g2 = F2Matrix::from_bits(&[&[0, 1, 1, 1], &[1, 0, 0, 1], &[1, 0, 0, 0], &[1, 1, 0, 0]]);
        assert_symplectic(&g2, &symplectic_basis(&g2).unwrap());
    }

    #[test]
    fn rejects_non_alternating() {
        let g = F2Matrix::from_bits(&[&[1, 1], &[1, 0]]);
        match symplectic_basis(&g) {
            Err(Error::NotAlternating { witness }) => assert_eq!(witness, vec![1, 0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_degenerate() {
        let g = F2Matrix::from_bits(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert!(matches!(symplectic_basis(&g), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn halving() {
        assert_eq!(halve(&[3], &[1]).unwrap(), vec![2]);
        assert_eq!(halve(&[5], &[3]).unwrap(), vec![4]);
        assert!(matches!(halve(&[4], &[2]), Err(Error::EvenOrder(4))));
        for n in [3u32, 5, 9, 15] {
            for x in 0..n {
                let y = halve(&[n], &[x]).unwrap()[0];
                assert_eq!((2 * y) % n, x);
            }
        }
    }
}
