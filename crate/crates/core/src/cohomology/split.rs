//! Splitting symmetric 2-cocycles, skew forms of cocycles, and cocycles realizing a form.

use crate::algebra::{symplectic_basis, F2Matrix, F2Vector};
use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, Pairing};

use super::cochain::{d1, is_cocycle2, Coeff, Cochain1, Cochain2};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mu_conductor(c: &Cochain2) -> Result<u32> {
    match c.coeff {
        Coeff::Mu(n) => Ok(n),
        _ => Err(Error::Contract("expected μ_N-valued cochain".into())),
    }
}

/// Minimal `w ∈ [0, M)` with `k·w ≡ r (mod M)`.
fn min_solution(k: u64, r: u64, m: u64) -> Option<u64> {
    let g = gcd(k % m, m);
    let g = if g == 0 { m } else { g };
    if !r.is_multiple_of(g) {
        return None;
    }
    let (k1, m1) = ((k / g) % (m / g), m / g);
    if m1 == 1 {
        return Some(0);
    }
    // Inverse of k1 modulo m1 by search over the small cyclic group.
    let inv = (1..m1).find(|&u| (k1 * u) % m1 == 1)?;
    Some(((r / g) % m1) * inv % m1)
}

/// Propagate a splitting along the cyclic factors; `None` if none exists at conductor `m`.
/// The result is the lexicographically least solution of the linear system.
fn split_at(a: &AbelianGroup, j: &[u64], m: u64) -> Option<Vec<usize>> {
    let size = a.order();
    let at = |x: usize, y: usize| j[x * size + y];
    let mut z = vec![0u64; size];
    z[0] = (m - at(0, 0) % m) % m;
    let mut span = 1usize;
    for (i, &ni) in a.moduli().iter().enumerate() {
        debug_assert_eq!(a.unit(i), span);
        let ni = ni as usize;
        let e = span;
        let mut rhs = (m - at(0, 0) % m) % m;
        for t in 1..ni {
            rhs = (rhs + m - at(t * e, e) % m) % m;
        }
        let w = min_solution(ni as u64, rhs, m)?;
        z[e] = w;
        for t in 1..ni - 1 {
            z[(t + 1) * e] = (z[t * e] + w + at(t * e, e)) % m;
        }
        for x in 1..span {
            for t in 1..ni {
                z[x + t * e] = (z[x] + z[t * e] + at(x, t * e)) % m;
            }
        }
        span *= ni;
    }
    for x in 0..size {
        for y in 0..size {
            if (z[a.add(x, y)] + 2 * m - z[x] - z[y]) % m != at(x, y) % m {
                return None;
            }
        }
    }
    Some(z.into_iter().map(|v| v as usize).collect())
}

/// Conductors tried by [`split_symmetric`]: `N`, `2N`, `N·exp(Γ)`.
pub fn escalation(n: u32, a: &AbelianGroup) -> Vec<u32> {
    let mut tried = vec![n, 2 * n, n * a.exponent()];
    tried.dedup();
    let mut seen = Vec::new();
    tried.retain(|c| if seen.contains(c) { false } else { seen.push(*c); true });
    tried
}

/// A 1-cochain `z` with `d1 z = J`, for a symmetric 2-cocycle `J` on an abelian group.
///
/// Values may live at a larger conductor than `J` (see [`escalation`]); the result is the
/// lexicographically least solution at the first conductor where one exists.
pub fn split_symmetric(a: &AbelianGroup, j: &Cochain2) -> Result<Cochain1> {
    if let Some((x, y)) = j.asymmetry() {
        return Err(Error::NotSymmetric { x, y });
    }
    if let Err((x, y, z)) = is_cocycle2(a, j) {
        return Err(Error::NotCocycle { x, y, z });
    }
    split_symmetric_unchecked(a, j)
}

/// [`split_symmetric`] without the cubic cocycle check; symmetry is still checked and
/// the result is still verified by `d1`.
pub fn split_symmetric_unchecked(a: &AbelianGroup, j: &Cochain2) -> Result<Cochain1> {
    let n = mu_conductor(j)?;
    if j.size != a.order() {
        return Err(Error::Dimension("cochain and group sizes differ".into()));
    }
    if let Some((x, y)) = j.asymmetry() {
        return Err(Error::NotSymmetric { x, y });
    }
    let tried = escalation(n, a);
    for &m in &tried {
        let scale = (m / n) as u64;
        let scaled: Vec<u64> = j.values.iter().map(|&v| v as u64 * scale).collect();
        if let Some(z) = split_at(a, &scaled, m as u64) {
            let z = Cochain1 { coeff: Coeff::Mu(m), values: z };
            debug_assert_eq!(d1(a, &z).values, scaled.iter().map(|&v| v as usize).collect::<Vec<_>>());
            return Ok(z);
        }
    }
    Err(Error::NoSplitting { tried })
}

/// Re-express a μ_N cochain at conductor `m` (a multiple of `N`).
pub fn lift2(c: &Cochain2, m: u32) -> Result<Cochain2> {
    let n = mu_conductor(c)?;
    if !m.is_multiple_of(n) {
        return Err(Error::Contract(format!("conductor {m} is not a multiple of {n}")));
    }
    Ok(Cochain2 { size: c.size, coeff: Coeff::Mu(m), values: c.values.iter().map(|&v| v * (m / n) as usize).collect() })
}

pub fn lift1(c: &Cochain1, m: u32) -> Result<Cochain1> {
    let n = match c.coeff {
        Coeff::Mu(n) => n,
        _ => return Err(Error::Contract("expected μ_N-valued cochain".into())),
    };
    if !m.is_multiple_of(n) {
        return Err(Error::Contract(format!("conductor {m} is not a multiple of {n}")));
    }
    Ok(Cochain1 { coeff: Coeff::Mu(m), values: c.values.iter().map(|&v| v * (m / n) as usize).collect() })
}

/// `R(x,y) = J(x,y) / J(y,x)`.
pub fn skew_of_cocycle(j: &Cochain2) -> Cochain2 {
    let c = &j.coeff;
    Cochain2::from_fn(j.size, c.clone(), |x, y| c.sub(j.get(x, y), j.get(y, x)))
}

/// The pairing as a table at its own conductor.
pub fn pairing_table(r: &Pairing) -> Cochain2 {
    let n = r.group.order();
    Cochain2::from_fn(n, Coeff::Mu(r.conductor()), |x, y| r.eval(x, y) as usize)
}

/// A bicharacter `J` with `J(x,y)/J(y,x) = R(x,y)`.
///
/// On elementary abelian 2-groups `J` pairs the `e`-coordinates with the `f`-coordinates
/// of a symplectic basis of `R`; otherwise `J` is the strictly upper-triangular part of
/// `R` in the cyclic decomposition.
pub fn cocycle_of_form(r: &Pairing) -> Result<Cochain2> {
    let a = &r.group;
    if let Err(x) = r.is_alternating() {
        return Err(Error::NotAlternating { witness: a.coords(x) });
    }
    if let Err(x) = r.is_nondegenerate() {
        return Err(Error::Degenerate { witness: a.coords(x) });
    }
    let n = r.conductor();
    let size = a.order();
    if let Some(gram) = r.gram_f2() {
        let k = a.rank();
        let basis = symplectic_basis(&gram)?;
        let m = k / 2;
        // Coordinates in the symplectic basis: solve B c = x with B's columns the basis.
        let mut bmat = F2Matrix::zeros(k, k);
        for (col, b) in basis.iter().enumerate() {
            for row in b.ones() {
                bmat.set(row, col, true);
            }
        }
        let coords: Vec<F2Vector> = (0..size)
            .map(|x| {
                let xv = F2Vector::from_bits(&a.coords(x).iter().map(|&c| c as u8).collect::<Vec<_>>());
                crate::algebra::solve_f2(&bmat, &xv).expect("square").0.expect("basis spans")
            })
            .collect();
        return Ok(Cochain2::from_fn(size, Coeff::Mu(2), |x, y| {
            (0..m).filter(|&i| coords[x].get(i) && coords[y].get(m + i)).count() % 2
        }));
    }
    let k = a.rank();
    Ok(Cochain2::from_fn(size, Coeff::Mu(n), |x, y| {
        let (cx, cy) = (a.coords(x), a.coords(y));
        let mut s = 0u64;
        for i in 0..k {
            for jj in i + 1..k {
                s += cx[i] as u64 * cy[jj] as u64 * r.matrix[i][jj] as u64;
            }
        }
        (s % n as u64) as usize
    }))
}

/// `J^x = J · d1(x)` for a 1-cochain with `x(0) = 1`.
pub fn gauge(a: &AbelianGroup, j: &Cochain2, x: &Cochain1) -> Result<Cochain2> {
    if x.get(0) != 0 {
        return Err(Error::Contract("gauge cochain must satisfy x(0) = 1".into()));
    }
    let nj = mu_conductor(j)?;
    let nx = match x.coeff {
        Coeff::Mu(n) => n,
        _ => return Err(Error::Contract("expected μ_N-valued cochain".into())),
    };
    let m = (nj as u64 * nx as u64 / gcd(nj as u64, nx as u64)) as u32;
    lift2(j, m)?.add(&d1(a, &lift1(x, m)?))
}

/// `J^g(x,y) = J(π x, π y)` for an index permutation `π` (the dual action of `g⁻¹`).
pub fn pullback(j: &Cochain2, perm: &[usize]) -> Cochain2 {
    Cochain2::from_fn(j.size, j.coeff.clone(), |x, y| j.get(perm[x], perm[y]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{solve_zn, ZnVector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cochain1(rng: &mut ChaCha8Rng, size: usize, n: u32) -> Cochain1 {
        let mut values: Vec<usize> = (0..size).map(|_| rng.gen_range(0..n as usize)).collect();
        values[0] = 0;
        Cochain1 { coeff: Coeff::Mu(n), values }
    }

    #[test]
    fn trivial_splits_trivially() {
        let a = AbelianGroup::elementary(2, 2);
        let z = split_symmetric(&a, &Cochain2::trivial(4, Coeff::Mu(2))).unwrap();
        assert!(z.values.iter().all(|&v| v == 0));
    }

    #[test]
    fn round_trip_random_coboundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for moduli in [vec![2, 2], vec![2; 6], vec![3, 9], vec![4, 2], vec![2; 3]] {
            let a = AbelianGroup::new(moduli).unwrap();
            for _ in 0..100 / 5 {
                let w = random_cochain1(&mut rng, a.order(), 4 * a.exponent());
                let j = d1(&a, &w);
                let z = split_symmetric(&a, &j).unwrap();
                let dz = d1(&a, &z);
                let Coeff::Mu(m) = z.coeff else { unreachable!() };
                assert_eq!(dz, lift2(&j, m).unwrap());
            }
        }
    }

    #[test]
    fn escalates_from_mu2_to_mu4() {
        // J(1,1) = −1 on Z/2: no μ_2 splitting, z(1) = i works.
        let a = AbelianGroup::elementary(2, 1);
        let j = Cochain2::from_fn(2, Coeff::Mu(2), |x, y| x * y);
        // Exhaustive: no μ_2-valued z.
        for v in 0..2 {
            let z = Cochain1 { coeff: Coeff::Mu(2), values: vec![0, v] };
            assert_ne!(d1(&a, &z), j);
        }
        let z = split_symmetric(&a, &j).unwrap();
        assert_eq!(z.coeff, Coeff::Mu(4));
        assert_eq!(z.values, vec![0, 1]);
    }

    #[test]
    fn rejects_asymmetric_and_non_cocycles() {
        let a = AbelianGroup::elementary(2, 2);
        let j = Cochain2::from_fn(4, Coeff::Mu(2), |x, y| (x & 1) * ((y >> 1) & 1));
        assert!(matches!(split_symmetric(&a, &j), Err(Error::NotSymmetric { .. })));
        let bad = Cochain2::from_fn(4, Coeff::Mu(2), |x, y| (x == 1 && y == 1) as usize);
        assert!(matches!(split_symmetric(&a, &bad), Err(Error::NotCocycle { .. })));
    }

    #[test]
    fn propagation_is_the_lexicographically_least_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for moduli in [vec![2, 2], vec![4], vec![3, 3], vec![2, 4]] {
            let a = AbelianGroup::new(moduli).unwrap();
            let size = a.order();
            for _ in 0..10 {
                let m = 2 * a.exponent();
                let w = random_cochain1(&mut rng, size, m);
                let j = d1(&a, &w);
                let z = split_symmetric(&a, &j).unwrap();
                let Coeff::Mu(mz) = z.coeff else { unreachable!() };
                assert_eq!(mz, m, "first conductor suffices for a genuine coboundary");
                let mut rows = Vec::new();
                let mut rhs = Vec::new();
                for x in 0..size {
                    for y in 0..size {
                        let mut r = vec![0u32; size];
                        r[a.add(x, y)] += 1;
                        r[x] = (r[x] + m - 1) % m;
                        r[y] = (r[y] + m - 1) % m;
                        rows.push(r);
                        rhs.push(j.get(x, y) as i64);
                    }
                }
                let sol = solve_zn(&rows, size, &ZnVector::new(m, rhs)).unwrap().solution.unwrap();
                assert_eq!(sol.entries.iter().map(|&v| v as usize).collect::<Vec<_>>(), z.values);
            }
        }
    }

    #[test]
    fn skew_examples() {
        let a = AbelianGroup::elementary(2, 2);
        // J((a,b),(c,d)) = (−1)^{ad}: index = a + 2b.
        let j = Cochain2::from_fn(4, Coeff::Mu(2), |x, y| (x & 1) * (y >> 1));
        let r = skew_of_cocycle(&j);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(r.get(x, y), ((x & 1) * (y >> 1) + (x >> 1) * (y & 1)) % 2);
            }
        }
        let sym = Cochain2::from_fn(4, Coeff::Mu(2), |x, y| x & y & 1);
        assert!(skew_of_cocycle(&sym).is_trivial());
        assert!(is_cocycle2(&a, &j).is_ok());
    }

    #[test]
    fn cocycle_of_standard_rank_two_form() {
        let a = AbelianGroup::elementary(2, 2);
        let r = Pairing::new(a.clone(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        let j = cocycle_of_form(&r).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(j.get(x, y), (x & 1) * (y >> 1));
            }
        }
        let trivial = Pairing::new(AbelianGroup::trivial(), vec![]).unwrap();
        assert!(cocycle_of_form(&trivial).unwrap().is_trivial());
    }

    #[test]
    fn cocycle_of_form_round_trip() {
        let cases = vec![
            Pairing::new(AbelianGroup::elementary(2, 4), vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1], vec![1, 0, 0, 1], vec![0, 1, 1, 0]]),
            Pairing::new(AbelianGroup::elementary(2, 4), vec![vec![0, 1, 1, 1], vec![1, 0, 0, 1], vec![1, 0, 0, 0], vec![1, 1, 0, 0]]),
            Pairing::new(AbelianGroup::new(vec![4, 4]).unwrap(), vec![vec![0, 1], vec![3, 0]]),
            Pairing::new(AbelianGroup::new(vec![3, 9]).unwrap(), vec![vec![0, 3], vec![6, 0]]),
        ];
        for r in cases {
            let r = r.unwrap();
            let a = r.group.clone();
            match cocycle_of_form(&r) {
                Ok(j) => {
                    assert!(is_cocycle2(&a, &j).is_ok());
                    let skew = skew_of_cocycle(&j);
                    let Coeff::Mu(m) = j.coeff else { unreachable!() };
                    assert_eq!(lift2(&pairing_table(&r), m).unwrap(), skew);
                }
                Err(Error::Degenerate { .. }) => assert!(r.is_nondegenerate().is_err()),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn gauge_preserves_skew_and_trivializes_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = AbelianGroup::elementary(2, 2);
        let j = Cochain2::from_fn(4, Coeff::Mu(4), |x, y| 2 * ((x & 1) * (y >> 1)));
        for _ in 0..20 {
            let x = random_cochain1(&mut rng, 4, 4);
            let g = gauge(&a, &j, &x).unwrap();
            assert_eq!(skew_of_cocycle(&g), skew_of_cocycle(&j));
        }
        let unit = Cochain1 { coeff: Coeff::Mu(4), values: vec![0; 4] };
        assert_eq!(gauge(&a, &j, &unit).unwrap(), j);
        let sym = d1(&a, &random_cochain1(&mut rng, 4, 4));
        let z = split_symmetric(&a, &sym).unwrap();
        let zinv = Cochain1 { coeff: z.coeff.clone(), values: z.values.iter().map(|&v| z.coeff.neg(v)).collect() };
        assert!(gauge(&a, &sym, &zinv).unwrap().is_trivial());
        let bad = Cochain1 { coeff: Coeff::Mu(4), values: vec![1, 0, 0, 0] };
        assert!(gauge(&a, &j, &bad).is_err());
    }
}
