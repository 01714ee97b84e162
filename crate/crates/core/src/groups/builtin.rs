//! Built-in group families and the group-spec file format.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::perm::Perm;
use super::sympl;
use super::Group;
use crate::algebra::BitMatrix;
use crate::error::{Error, Result};

/// A group description understood by [`build_group`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupSpec {
    Cyclic(u32),
    ElementaryAbelian(u32, u32),
    /// Dihedral group of order `2m`.
    Dihedral(u32),
    Quaternion8,
    Gl(usize),
    Sp(usize),
    U(usize),
    P(usize),
    Asp(usize),
    Permutation(Vec<Perm>),
}

impl GroupSpec {
    pub fn name(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("cyclic({n})"),
            GroupSpec::ElementaryAbelian(p, k) => format!("elementary_abelian({p},{k})"),
            GroupSpec::Dihedral(4) => "dihedral8".into(),
            GroupSpec::Dihedral(m) => format!("dihedral({})", 2 * m),
            GroupSpec::Quaternion8 => "quaternion8".into(),
            GroupSpec::Gl(n) => format!("gl({n})"),
            GroupSpec::Sp(n) => format!("sp({n})"),
            GroupSpec::U(n) => format!("u({n})"),
            GroupSpec::P(n) => format!("p({n})"),
            GroupSpec::Asp(n) => format!("asp({n})"),
            GroupSpec::Permutation(gens) => {
                let g: Vec<String> = gens.iter().map(|p| p.to_string()).collect();
                format!("perm<{}>", g.join(", "))
            }
        }
    }

    /// Parse a builtin name such as `cyclic(15)`, `cyclic 15`, `dihedral8`,
    /// `dihedral(10)` (order 10), `elementary_abelian(2,3)` or `sp(2)`.
    pub fn parse_builtin(text: &str) -> Result<GroupSpec> {
        let t = text.trim();
        let (name, args) = match t.find(|c: char| c == '(' || c.is_whitespace()) {
            Some(i) => (&t[..i], t[i..].trim().trim_start_matches('(').trim_end_matches(')')),
            None => (t, ""),
        };
        let nums: Vec<u32> = args
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| Error::InvalidSpec(format!("bad parameter {s:?} in {text:?}"))))
            .collect::<Result<_>>()?;
        let one = |what: &str| -> Result<u32> {
            match nums.as_slice() {
                [n] => Ok(*n),
                _ => Err(Error::InvalidSpec(format!("{what} takes one parameter: {text:?}"))),
            }
        };
        let small = |what: &str, lo: u32, hi: u32| -> Result<usize> {
            let n = one(what)?;
            if n < lo || n > hi {
                return Err(Error::InvalidSpec(format!("{what}({n}) out of range {lo}..={hi}")));
            }
            Ok(n as usize)
        };
        let spec = match name {
            "cyclic" => {
                let n = one("cyclic")?;
                if n == 0 {
                    return Err(Error::InvalidSpec("cyclic(0)".into()));
                }
                GroupSpec::Cyclic(n)
            }
            "elementary_abelian" => match nums.as_slice() {
                [p, k] if *p >= 2 && *k >= 1 && is_prime(*p) => GroupSpec::ElementaryAbelian(*p, *k),
                _ => return Err(Error::InvalidSpec(format!("elementary_abelian(p,k) needs prime p and k >= 1: {text:?}"))),
            },
            "dihedral8" if nums.is_empty() => GroupSpec::Dihedral(4),
            "dihedral" => {
                let order = one("dihedral")?;
                if order < 2 || order % 2 != 0 {
                    return Err(Error::InvalidSpec(format!("dihedral order must be even and >= 2, got {order}")));
                }
                GroupSpec::Dihedral(order / 2)
            }
            "quaternion8" if nums.is_empty() => GroupSpec::Quaternion8,
            "gl" => GroupSpec::Gl(small("gl", 1, 8)?),
            "sp" => GroupSpec::Sp(small("sp", 1, 4)?),
            "u" => GroupSpec::U(small("u", 1, 4)?),
            "p" => GroupSpec::P(small("p", 1, 4)?),
            "asp" => GroupSpec::Asp(small("asp", 1, 3)?),
            _ => return Err(Error::InvalidSpec(format!("unknown builtin {text:?}"))),
        };
        Ok(spec)
    }

    /// Parse a group spec file: either `builtin: <name> <params>` or `gen: <cycles>` lines.
    pub fn parse_file(text: &str) -> Result<GroupSpec> {
        let mut gens = Vec::new();
        let mut builtin = None;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("builtin:") {
                if builtin.is_some() || !gens.is_empty() {
                    return Err(Error::InvalidSpec("builtin must be the only entry".into()));
                }
                builtin = Some(GroupSpec::parse_builtin(rest)?);
            } else if let Some(rest) = line.strip_prefix("gen:") {
                if builtin.is_some() {
                    return Err(Error::InvalidSpec("builtin must be the only entry".into()));
                }
                gens.push(Perm::parse_cycles(rest, 0)?);
            } else {
                return Err(Error::InvalidSpec(format!("unrecognized line {line:?}")));
            }
        }
        if let Some(b) = builtin {
            return Ok(b);
        }
        if gens.is_empty() {
            return Err(Error::InvalidSpec("no generators".into()));
        }
        let degree = gens.iter().map(|g| g.degree()).max().unwrap_or(1);
        let gens = gens
            .into_iter()
            .map(|g| {
                let mut img = g.0;
                img.extend(img.len() as u32..degree as u32);
                Perm(img)
            })
            .collect();
        Ok(GroupSpec::Permutation(gens))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse_builtin(s)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Elements of the built-in families.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupElement {
    /// Coordinates in `Z/n_1 × … × Z/n_k`.
    Vector(Vec<u32>),
    /// `r^a s^b` in a dihedral or dicyclic group.
    Pair(u32, u32),
    Matrix(BitMatrix),
    /// `(g, v)` in `Sp(V) ⋉ V`.
    Affine(BitMatrix, u8),
    Perm(Perm),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Vector(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", s.join(","))
            }
            GroupElement::Pair(a, b) => write!(f, "r^{a}s^{b}"),
            GroupElement::Matrix(m) => write!(f, "{}", m.to_text()),
            GroupElement::Affine(m, v) => write!(f, "{}+{:08b}", m.to_text(), v),
            GroupElement::Perm(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A group of `dim × dim` matrices over F2 (`dim ≤ 8`) given by generators.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    name: String,
    dim: usize,
    gens: Vec<BitMatrix>,
}

impl MatrixGroup {
    pub fn new(name: String, dim: usize, gens: Vec<BitMatrix>) -> Self {
        MatrixGroup { name, dim, gens }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl Group for MatrixGroup {
    type Elem = BitMatrix;
    fn identity(&self) -> BitMatrix {
        BitMatrix::identity(self.dim)
    }
    fn mul(&self, a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
        a.mul(b)
    }
    fn inv(&self, a: &BitMatrix) -> BitMatrix {
        a.inverse().expect("group elements are invertible")
    }
    fn generators(&self) -> Vec<BitMatrix> {
        self.gens.clone()
    }
    fn name(&self) -> String {
        self.name.clone()
    }
    fn format_elem(&self, e: &BitMatrix) -> String {
        e.to_text()
    }
}

#[derive(Clone, Debug)]
enum Family {
    Abelian(Vec<u32>),
    Dihedral(u32),
    Dicyclic,
    Matrix(usize),
    Affine(usize),
    Perm(usize),
}

/// Any built-in group, as produced by [`build_group`].
#[derive(Clone, Debug)]
pub struct AnyGroup {
    spec: GroupSpec,
    family: Family,
    gens: Vec<GroupElement>,
}

impl AnyGroup {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
}

/// Build the group oracle for a spec.
pub fn build_group(spec: &GroupSpec) -> Result<AnyGroup> {
    let unit = |len: usize, i: usize| GroupElement::Vector((0..len).map(|j| (i == j) as u32).collect());
    let (family, gens) = match spec {
        GroupSpec::Cyclic(n) => (Family::Abelian(vec![*n]), vec![GroupElement::Vector(vec![1 % *n.max(&1)])]),
        GroupSpec::ElementaryAbelian(p, k) => {
            let k = *k as usize;
            (Family::Abelian(vec![*p; k]), (0..k).map(|i| unit(k, i)).collect())
        }
        GroupSpec::Dihedral(m) => (Family::Dihedral(*m), vec![GroupElement::Pair(1 % m, 0), GroupElement::Pair(0, 1)]),
        GroupSpec::Quaternion8 => (Family::Dicyclic, vec![GroupElement::Pair(1, 0), GroupElement::Pair(0, 1)]),
        GroupSpec::Gl(n) => (Family::Matrix(*n), sympl::gl_generators(*n).into_iter().map(GroupElement::Matrix).collect()),
        GroupSpec::Sp(n) => (Family::Matrix(2 * n), sympl::sp_generators(*n).into_iter().map(GroupElement::Matrix).collect()),
        GroupSpec::U(n) => {
            (Family::Matrix(2 * n), sympl::u_basis(*n).iter().map(|u| GroupElement::Matrix(sympl::embed_u(u))).collect())
        }
        GroupSpec::P(n) => {
            let mut g: Vec<GroupElement> =
                sympl::gl_generators(*n).iter().map(|l| GroupElement::Matrix(sympl::embed_l(l))).collect();
            g.extend(sympl::u_basis(*n).iter().map(|u| GroupElement::Matrix(sympl::embed_u(u))));
            (Family::Matrix(2 * n), g)
        }
        GroupSpec::Asp(n) => {
            let mut g: Vec<GroupElement> =
                sympl::sp_generators(*n).into_iter().map(|s| GroupElement::Affine(s, 0)).collect();
            g.push(GroupElement::Affine(BitMatrix::identity(2 * n), 1));
            (Family::Affine(*n), g)
        }
        GroupSpec::Permutation(ps) => {
            let degree = ps.first().map_or(0, |p| p.degree());
            if ps.iter().any(|p| p.degree() != degree) {
                return Err(Error::InvalidSpec("generators act on different degrees".into()));
            }
            (Family::Perm(degree), ps.iter().cloned().map(GroupElement::Perm).collect())
        }
    };
    Ok(AnyGroup { spec: spec.clone(), family, gens })
}

impl Group for AnyGroup {
    type Elem = GroupElement;

    fn identity(&self) -> GroupElement {
        match &self.family {
            Family::Abelian(m) => GroupElement::Vector(vec![0; m.len()]),
            Family::Dihedral(_) | Family::Dicyclic => GroupElement::Pair(0, 0),
            Family::Matrix(d) => GroupElement::Matrix(BitMatrix::identity(*d)),
            Family::Affine(n) => GroupElement::Affine(BitMatrix::identity(2 * n), 0),
            Family::Perm(d) => GroupElement::Perm(Perm::identity(*d)),
        }
    }

    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        use GroupElement::*;
        match (&self.family, a, b) {
            (Family::Abelian(m), Vector(x), Vector(y)) => {
                Vector(x.iter().zip(y).zip(m).map(|((a, b), n)| (a + b) % n).collect())
            }
            (Family::Dihedral(m), Pair(a1, b1), Pair(a2, b2)) => {
                let a = if *b1 == 0 { a1 + a2 } else { a1 + m - a2 };
                Pair(a % m, b1 ^ b2)
            }
            (Family::Dicyclic, Pair(a1, b1), Pair(a2, b2)) => {
                let a = if *b1 == 0 { a1 + a2 } else { a1 + 4 - a2 } + 2 * b1 * b2;
                Pair(a % 4, b1 ^ b2)
            }
            (Family::Matrix(_), Matrix(x), Matrix(y)) => Matrix(x.mul(y)),
            (Family::Affine(_), Affine(g1, v1), Affine(g2, v2)) => Affine(g1.mul(g2), v1 ^ g1.apply(*v2)),
            (Family::Perm(_), Perm(x), Perm(y)) => Perm(x.mul(y)),
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    fn inv(&self, a: &GroupElement) -> GroupElement {
        use GroupElement::*;
        match (&self.family, a) {
            (Family::Abelian(m), Vector(x)) => Vector(x.iter().zip(m).map(|(a, n)| (n - a) % n).collect()),
            (Family::Dihedral(_) | Family::Dicyclic, _) => {
                let k = self.element_order(a);
                self.pow(a, k - 1)
            }
            (Family::Matrix(_), Matrix(x)) => Matrix(x.inverse().expect("invertible")),
            (Family::Affine(_), Affine(g, v)) => {
                let gi = g.inverse().expect("invertible");
                let w = gi.apply(*v);
                Affine(gi, w)
            }
            (Family::Perm(_), Perm(x)) => Perm(x.inv()),
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    fn generators(&self) -> Vec<GroupElement> {
        self.gens.clone()
    }

    fn name(&self) -> String {
        self.spec.name()
    }

    fn format_elem(&self, e: &GroupElement) -> String {
        e.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{check_group_axioms, enumerate, order_statistics, DEFAULT_ENUM_CAP};
    use std::collections::BTreeMap;

    fn order(spec: &str) -> usize {
        let g = build_group(&spec.parse().unwrap()).unwrap();
        enumerate(&g, 2_000_000).unwrap().len()
    }

    #[test]
    fn small_orders() {
        assert_eq!(order("cyclic(7)"), 7);
        assert_eq!(order("cyclic(1)"), 1);
        assert_eq!(order("elementary_abelian(2,3)"), 8);
        assert_eq!(order("dihedral8"), 8);
        assert_eq!(order("dihedral(6)"), 6);
        assert_eq!(order("dihedral(2)"), 2);
        assert_eq!(order("quaternion8"), 8);
        assert_eq!(order("sp(1)"), 6);
        assert_eq!(order("gl(3)"), 168);
        assert_eq!(order("u(3)"), 64);
        assert_eq!(order("asp(1)"), 24);
    }

    #[test]
    fn matrix_family_orders() {
        assert_eq!(order("sp(2)"), 720);
        assert_eq!(order("p(3)"), 10752);
        assert_eq!(order("p(2)"), 48);
    }

    #[test]
    fn order_statistics_examples() {
        let stats = |s: &str| order_statistics(&build_group(&s.parse().unwrap()).unwrap(), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(stats("quaternion8"), BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
        assert_eq!(stats("dihedral8"), BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
        assert_eq!(stats("elementary_abelian(2,3)"), BTreeMap::from([(1, 1), (2, 7)]));
    }

    #[test]
    fn axioms_for_builtins() {
        for s in ["cyclic(12)", "elementary_abelian(3,2)", "dihedral8", "dihedral(18)", "quaternion8", "sp(1)", "gl(3)", "u(2)", "p(2)", "asp(1)", "sp(2)", "asp(2)"] {
            let g = build_group(&s.parse().unwrap()).unwrap();
            let e = enumerate(&g, DEFAULT_ENUM_CAP).unwrap();
            check_group_axioms(&g, &e, 2_000_000, 10_000, 1).unwrap();
        }
    }

    #[test]
    fn sp_elements_preserve_pairing() {
        let g = build_group(&GroupSpec::Sp(2)).unwrap();
        for e in enumerate(&g, 1000).unwrap() {
            let GroupElement::Matrix(m) = e else { unreachable!() };
            assert!(sympl::preserves_pairing(2, &m));
        }
    }

    #[test]
    fn spec_file_parsing() {
        let s = GroupSpec::parse_file("# comment\n\ngen: (1,2,3)\ngen: (1,2)\n").unwrap();
        assert_eq!(enumerate(&build_group(&s).unwrap(), 100).unwrap().len(), 6);
        assert_eq!(GroupSpec::parse_file("builtin: cyclic 5").unwrap(), GroupSpec::Cyclic(5));
        assert!(GroupSpec::parse_file("gen: (1,2\n").is_err());
        assert!(GroupSpec::parse_file("").is_err());
        assert!(GroupSpec::parse_builtin("torus(3)").is_err());
        assert!(GroupSpec::parse_builtin("elementary_abelian(4,2)").is_err());
    }
}
