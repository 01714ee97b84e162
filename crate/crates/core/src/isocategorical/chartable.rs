//! Character tables by Dixon's method: class-algebra eigenvectors modulo a prime
//! `p ≡ 1 (mod exp G)`, lifted to exact cyclotomic values through eigenvalue multiplicities.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::CycloNumber;
use crate::error::{Error, Result};
use crate::groups::TableGroup;

/// Largest group order accepted.
pub const CHARTABLE_CAP: usize = 512;

/// Class counts up to which orthogonality is checked in exact arithmetic.
const EXACT_ORTHOGONALITY_CLASSES: usize = 40;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > bound`.
fn choose_prime(e: u64, bound: u64) -> Result<u64> {
    let mut p = (bound / e + 1) * e + 1;
    while p < (1u64 << 31) {
        if is_prime(p) {
            return Ok(p);
        }
        p += e;
    }
    Err(Error::Internal(format!("no prime ≡ 1 mod {e} below 2^31")))
}

/// A primitive `e`-th root of unity modulo `p`.
fn root_of_unity(e: u64, p: u64) -> u64 {
    let factors: Vec<u64> = (2..=e).filter(|&q| e.is_multiple_of(q) && is_prime(q)).collect();
    for g in 2..p {
        let z = pow_mod(g, (p - 1) / e, p);
        if factors.iter().all(|&q| pow_mod(z, e / q, p) != 1) {
            return z;
        }
    }
    unreachable!("F_p^× is cyclic of order divisible by e")
}

/// Row-reduce in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot_row = rows[r].clone();
                for (v, pv) in rows[i].iter_mut().zip(&pivot_row) {
                    *v = (*v + p - f * pv % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Left nullspace basis of a square matrix over F_p: vectors `c` with `c·m = 0`.
fn left_nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = m.len();
    // Solve mᵀ cᵀ = 0.
    let mut t: Vec<Vec<u64>> = (0..d).map(|j| (0..d).map(|i| m[i][j]).collect()).collect();
    let pivots = rref(&mut t, p);
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; d];
            v[f] = 1;
            for (row, &pc) in t.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial of `a` over F_p via Hessenberg reduction; coefficients low first.
fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else { continue };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = inv_mod(h[k + 1][k], p);
        for i in k + 2..n {
            if h[i][k] == 0 {
                continue;
            }
            let f = h[i][k] * inv % p;
            for j in 0..n {
                h[i][j] = (h[i][j] + p - f * h[k + 1][j] % p) % p;
            }
            for row in h.iter_mut() {
                row[k + 1] = (row[k + 1] + f * row[i]) % p;
            }
        }
    }
    // polys[m] = charpoly of the leading m×m block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mut next = vec![0u64; m + 1];
        // (x − h[m-1][m-1]) · polys[m-1]
        for (i, &c) in polys[m - 1].iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = (next[i] + p - c * h[m - 1][m - 1] % p) % p;
        }
        let mut prod = 1u64;
        for i in (0..m - 1).rev() {
            prod = prod * h[i + 1][i] % p;
            let coef = prod * h[i][m - 1] % p;
            for (j, &c) in polys[i].iter().enumerate() {
                next[j] = (next[j] + p - coef * c % p) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub size: usize,
    pub order: u32,
    #[serde(skip)]
    pub representative: u32,
}

/// Irreducible characters of a finite group.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: String,
    pub order: usize,
    pub classes: Vec<ClassInfo>,
    pub class_of: Vec<u32>,
    /// `characters[i][k]` is `χ_i` on class `k`, in `Q(ζ_e)`.
    pub characters: Vec<Vec<CycloNumber>>,
    pub degrees: Vec<u64>,
    pub exponent: u32,
    pub prime: u64,
    /// Values modulo `prime`, same layout as `characters`.
    pub modular: Vec<Vec<u64>>,
    /// `fusion[(i·r + j)·r + k] = N_ij^k`.
    pub fusion: Vec<u64>,
}

#[derive(Serialize)]
struct TableSummary<'a> {
    group: &'a str,
    classes: &'a [ClassInfo],
    degrees: &'a [u64],
    fusion_hash: String,
}

impl CharacterTable {
    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn fusion_coefficient(&self, i: usize, j: usize, k: usize) -> u64 {
        let r = self.rank();
        self.fusion[(i * r + j) * r + k]
    }

    /// SHA-256 of the sorted multiset of `(d_i, d_j, d_k, N_ij^k)` with `N > 0`;
    /// independent of the order of the characters.
    pub fn fusion_hash(&self) -> String {
        let r = self.rank();
        let mut tuples = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let n = self.fusion_coefficient(i, j, k);
                    if n > 0 {
                        tuples.push((self.degrees[i], self.degrees[j], self.degrees[k], n));
                    }
                }
            }
        }
        tuples.sort_unstable();
        let mut sorted_degrees = self.degrees.clone();
        sorted_degrees.sort_unstable();
        let text = format!("{:?}|{:?}", sorted_degrees, tuples);
        format!("{:x}", Sha256::digest(text.as_bytes()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableSummary { group: &self.group, classes: &self.classes, degrees: &self.degrees, fusion_hash: self.fusion_hash() })
            .expect("plain data")
    }
}

/// Compute the character table of `g`.
pub fn character_table(g: &TableGroup) -> Result<CharacterTable> {
    let order = g.order();
    if order > CHARTABLE_CAP {
        return Err(Error::TooLarge { what: "character table".into(), count: order as u64, cap: CHARTABLE_CAP as u64 });
    }
    let (classes, class_of) = g.conjugacy_classes();
    let r = classes.len();
    let elem_orders = g.element_orders();
    let e = elem_orders.iter().fold(1u64, |acc, &o| acc / gcd(acc, o as u64) * o as u64);
    let p = choose_prime(e, 2 * order as u64 + 1)?;
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let inv_class: Vec<usize> = classes.iter().map(|c| class_of[g.i(c[0]) as usize] as usize).collect();

    // a[i][j][k] = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}.
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (k, ck) in classes.iter().enumerate() {
        let z = ck[0];
        for x in 0..order as u32 {
            let i = class_of[x as usize] as usize;
            let j = class_of[g.m(g.i(x), z) as usize] as usize;
            a[i][j][k] += 1;
        }
    }

    // Split F_p^r into common eigenspaces of the class matrices M_i, (M_i)_{jk} = a_ijk.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| (i == j) as u64).collect()).collect()];
    for (i, ai) in a.iter().enumerate().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let mut basis = space;
            let pivots = rref(&mut basis, p);
            let d = basis.len();
            // T b_j expressed in the basis through pivot coordinates.
            let images: Vec<Vec<u64>> = basis.iter().map(|b| (0..r).map(|row| (0..r).map(|c| ai[row][c] * b[c] % p).sum::<u64>() % p).collect()).collect();
            let amat: Vec<Vec<u64>> = images.iter().map(|v| pivots.iter().map(|&pc| v[pc]).collect()).collect();
            let poly = charpoly(&amat, p);
            let mut found = 0;
            for lambda in 0..p {
                let val = poly.iter().rev().fold(0u64, |acc, &c| (acc * lambda + c) % p);
                if val != 0 {
                    continue;
                }
                let shifted: Vec<Vec<u64>> = (0..d).map(|x| (0..d).map(|y| (amat[x][y] + if x == y { p - lambda } else { 0 }) % p).collect()).collect();
                let cs = left_nullspace(&shifted, p);
                let sub: Vec<Vec<u64>> = cs.iter().map(|c| (0..r).map(|col| (0..d).map(|t| c[t] * basis[t][col] % p).sum::<u64>() % p).collect()).collect();
                found += sub.len();
                next.push(sub);
            }
            if found != d {
                return Err(Error::Internal(format!("class matrix {i} is not diagonalizable modulo {p}")));
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::Internal("class algebra did not split into one-dimensional eigenspaces".into()));
    }

    let order_mod = order as u64 % p;
    let mut modular = Vec::with_capacity(r);
    let mut degrees = Vec::with_capacity(r);
    for space in &spaces {
        let w0 = &space[0];
        let inv0 = inv_mod(w0[0], p);
        let w: Vec<u64> = w0.iter().map(|&x| x * inv0 % p).collect();
        // d² Σ_k ω_k ω_{k*} / h_k = |G|.
        let s = (0..r).map(|k| w[k] * w[inv_class[k]] % p * inv_mod(sizes[k] % p, p) % p).sum::<u64>() % p;
        let d2 = order_mod * inv_mod(s, p) % p;
        let d = (1..=(order as f64).sqrt() as u64 + 1)
            .find(|&d| d * d % p == d2 && (order as u64).is_multiple_of(d))
            .ok_or_else(|| Error::Internal("no integral degree".into()))?;
        degrees.push(d);
        modular.push((0..r).map(|k| w[k] * d % p * inv_mod(sizes[k] % p, p) % p).collect::<Vec<u64>>());
    }
    // Order characters by degree, trivial character first.
    let mut idx: Vec<usize> = (0..r).collect();
    idx.sort_by_key(|&i| (degrees[i], modular[i].iter().any(|&v| v != 1), modular[i].clone()));
    let degrees: Vec<u64> = idx.iter().map(|&i| degrees[i]).collect();
    let modular: Vec<Vec<u64>> = idx.iter().map(|&i| modular[i].clone()).collect();

    // Lift to Q(ζ_e) through eigenvalue multiplicities.
    let zeta = root_of_unity(e, p);
    let mut characters = Vec::with_capacity(r);
    for row in &modular {
        let mut vals = Vec::with_capacity(r);
        for (k, cls) in classes.iter().enumerate() {
            let x = cls[0];
            let o = elem_orders[x as usize] as u64;
            let zo = pow_mod(zeta, e / o, p);
            let mut powers = Vec::with_capacity(o as usize);
            let mut y = 0u32;
            for _ in 0..o {
                powers.push(row[class_of[y as usize] as usize]);
                y = g.m(y, x);
            }
            let inv_o = inv_mod(o % p, p);
            let mut value = CycloNumber::zero(e as u32);
            for t in 0..o {
                let m = (0..o).map(|j| powers[j as usize] * pow_mod(zo, (o - (j * t) % o) % o, p) % p).sum::<u64>() % p * inv_o % p;
                if m > order as u64 {
                    return Err(Error::Internal(format!("eigenvalue multiplicity out of range on class {k}")));
                }
                if m > 0 {
                    value = value + CycloNumber::zeta_power(e as u32, (t * (e / o)) as i64).scale(&num_rational::BigRational::from_integer((m as i64).into()));
                }
            }
            vals.push(value);
        }
        characters.push(vals);
    }

    // Fusion coefficients modulo p (p > 2|G| bounds them uniquely).
    let inv_order = inv_mod(order_mod, p);
    let mut fusion = vec![0u64; r * r * r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let s = (0..r)
                    .map(|c| sizes[c] % p * modular[i][c] % p * modular[j][c] % p * modular[k][inv_class[c]] % p)
                    .sum::<u64>()
                    % p
                    * inv_order
                    % p;
                fusion[(i * r + j) * r + k] = s;
            }
        }
    }
    let table = CharacterTable {
        group: crate::groups::Group::name(g),
        order,
        classes: classes.iter().map(|c| ClassInfo { size: c.len(), order: elem_orders[c[0] as usize], representative: c[0] }).collect(),
        class_of,
        characters,
        degrees,
        exponent: e as u32,
        prime: p,
        modular,
        fusion,
    };
    validate(&table)?;
    Ok(table)
}

/// Degree sum, orthogonality and integrality checks.
fn validate(t: &CharacterTable) -> Result<()> {
    let r = t.rank();
    if t.degrees.iter().map(|d| d * d).sum::<u64>() != t.order as u64 {
        return Err(Error::Internal("sum of squared degrees differs from |G|".into()));
    }
    for i in 0..r {
        for j in 0..r {
            let expect: u64 = (0..r).map(|k| t.fusion_coefficient(i, j, k) * t.degrees[k]).sum();
            if expect != t.degrees[i] * t.degrees[j] {
                return Err(Error::Internal(format!("fusion coefficients of ({i},{j}) do not decompose the degree product")));
            }
        }
    }
    if r <= EXACT_ORTHOGONALITY_CLASSES {
        let e = t.exponent;
        let order = num_rational::BigRational::from_integer((t.order as i64).into());
        let conj: Vec<Vec<CycloNumber>> = t.characters.iter().map(|row| row.iter().map(|v| v.conj()).collect()).collect();
        for i in 0..r {
            for j in 0..r {
                let mut s = CycloNumber::zero(e);
                for k in 0..r {
                    let h = num_rational::BigRational::from_integer((t.classes[k].size as i64).into());
                    s = s + (&t.characters[i][k] * &conj[j][k]).scale(&h);
                }
                let expect = if i == j { CycloNumber::from_rational(e, order.clone()) } else { CycloNumber::zero(e) };
                if s != expect {
                    return Err(Error::Internal(format!("rows {i} and {j} are not orthogonal")));
                }
            }
        }
        for k in 0..r {
            for l in 0..r {
                let mut s = CycloNumber::zero(e);
                for i in 0..r {
                    s = s + &t.characters[i][k] * &conj[i][l];
                }
                let expect = if k == l { CycloNumber::from_integer(e, (t.order / t.classes[k].size) as i64) } else { CycloNumber::zero(e) };
                if s != expect {
                    return Err(Error::Internal(format!("columns {k} and {l} are not orthogonal")));
                }
            }
        }
    }
    Ok(())
}

/// Search for a bijection of irreducible characters preserving degrees and all fusion
/// coefficients. Returns `perm` with `χ_i ↦ χ'_{perm[i]}`.
pub fn fusion_compare(t1: &CharacterTable, t2: &CharacterTable) -> Option<Vec<usize>> {
    let r = t1.rank();
    if r != t2.rank() || t1.order != t2.order {
        return None;
    }
    let (mut d1, mut d2) = (t1.degrees.clone(), t2.degrees.clone());
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return None;
    }
    fn consistent(t1: &CharacterTable, t2: &CharacterTable, perm: &[usize]) -> bool {
        let m = perm.len();
        let last = m - 1;
        for a in 0..m {
            for b in 0..m {
                if a != last && b != last {
                    // Triples not involving the newest index were checked earlier; only
                    // (a, b, last) is new among those with a, b old.
                    if t1.fusion_coefficient(a, b, last) != t2.fusion_coefficient(perm[a], perm[b], perm[last]) {
                        return false;
                    }
                    continue;
                }
                for c in 0..m {
                    if t1.fusion_coefficient(a, b, c) != t2.fusion_coefficient(perm[a], perm[b], perm[c]) {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn search(t1: &CharacterTable, t2: &CharacterTable, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = perm.len();
        if i == t1.rank() {
            return true;
        }
        for j in 0..t2.rank() {
            if used[j] || t2.degrees[j] != t1.degrees[i] || (i == 0) != (j == 0) {
                continue;
            }
            perm.push(j);
            used[j] = true;
            if consistent(t1, t2, perm) && search(t1, t2, perm, used) {
                return true;
            }
            perm.pop();
            used[j] = false;
        }
        false
    }
    let mut perm = Vec::with_capacity(r);
    let mut used = vec![false; r];
    search(t1, t2, &mut perm, &mut used).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::table::TABLE_CAP;
    use crate::groups::{build_group, GroupSpec};

    fn table(spec: &str) -> TableGroup {
        TableGroup::from_group(&build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap(), TABLE_CAP).unwrap().0
    }

    #[test]
    fn charpoly_of_companion() {
        // Trace 3, determinant −5 ≡ 2: x² − 3x + 2 over F_7.
        let p = 7;
        let m = vec![vec![0, 1], vec![5, 3]];
        assert_eq!(charpoly(&m, p), vec![2, 4, 1]);
    }

    #[test]
    fn small_tables() {
        let s3 = character_table(&table("sp(1)")).unwrap();
        assert_eq!(s3.degrees, vec![1, 1, 2]);
        let c5 = character_table(&table("cyclic(5)")).unwrap();
        assert_eq!(c5.degrees, vec![1; 5]);
        let gl3 = character_table(&table("gl(3)")).unwrap();
        assert_eq!(gl3.degrees, vec![1, 3, 3, 6, 7, 8]);
    }

    #[test]
    fn d8_and_q8_share_the_ring() {
        let d8 = character_table(&table("dihedral8")).unwrap();
        let q8 = character_table(&table("quaternion8")).unwrap();
        assert_eq!(d8.degrees, vec![1, 1, 1, 1, 2]);
        assert_eq!(q8.degrees, vec![1, 1, 1, 1, 2]);
        assert!(fusion_compare(&d8, &q8).is_some());
        assert_eq!(d8.fusion_hash(), q8.fusion_hash());
        assert_eq!(fusion_compare(&d8, &d8), Some((0..5).collect()));
        let e8 = character_table(&table("elementary_abelian(2,3)")).unwrap();
        assert!(fusion_compare(&d8, &e8).is_none());
    }
}
