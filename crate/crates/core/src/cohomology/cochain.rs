//! Cochains with values in μ_N (trivial action) or in an abelian group with an action.
//!
//! Sign conventions: for μ_N on an abelian group, `(d1 z)(x,y) = z(x+y) − z(x) − z(y)`;
//! for a module, `(d1 c)(g,h) = c(g) + g·c(h) − c(gh)`. The cocycle condition is the
//! same under either sign.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, TableGroup};

/// A finite group on indices `0..size` with `0` the identity.
pub trait Domain {
    fn size(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> usize;
    fn label(&self, a: usize) -> String {
        a.to_string()
    }
}

impl Domain for AbelianGroup {
    fn size(&self) -> usize {
        self.order()
    }
    fn op(&self, a: usize, b: usize) -> usize {
        self.add(a, b)
    }
    fn label(&self, a: usize) -> String {
        let c: Vec<String> = self.coords(a).iter().map(|x| x.to_string()).collect();
        format!("[{}]", c.join(","))
    }
}

impl Domain for TableGroup {
    fn size(&self) -> usize {
        self.order()
    }
    fn op(&self, a: usize, b: usize) -> usize {
        self.m(a as u32, b as u32) as usize
    }
    fn label(&self, a: usize) -> String {
        TableGroup::label(self, a as u32).to_string()
    }
}

/// An abelian group `A` with an action of a domain group, by index permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub group: AbelianGroup,
    /// `action[g][a]` is the index of `g·a`; `None` means trivial action.
    pub action: Option<Vec<Vec<usize>>>,
}

impl Module {
    pub fn trivial(group: AbelianGroup) -> Self {
        Module { group, action: None }
    }

    #[inline]
    pub fn act(&self, g: usize, a: usize) -> usize {
        match &self.action {
            None => a,
            Some(t) => t[g][a],
        }
    }

    /// Matrix of `g` on coordinates: column `j` is `g·e_j`.
    pub fn matrix(&self, g: usize) -> Vec<Vec<u32>> {
        let a = &self.group;
        let cols: Vec<Vec<u32>> = (0..a.rank()).map(|j| a.coords(self.act(g, a.unit(j)))).collect();
        (0..a.rank()).map(|i| (0..a.rank()).map(|j| cols[j][i]).collect()).collect()
    }

    /// Check the action axioms on a domain: identity acts trivially, products compose,
    /// and each element acts additively.
    pub fn check<D: Domain>(&self, dom: &D) -> Result<()> {
        let Some(t) = &self.action else { return Ok(()) };
        if t.len() != dom.size() {
            return Err(Error::Dimension(format!("action given for {} elements, domain has {}", t.len(), dom.size())));
        }
        let n = self.group.order();
        if (0..n).any(|a| t[0][a] != a) {
            return Err(Error::Contract("identity does not act trivially".into()));
        }
        for g in 0..dom.size() {
            for j in 0..self.group.rank() {
                let e = self.group.unit(j);
                for a in 0..n {
                    if t[g][self.group.add(a, e)] != self.group.add(t[g][a], t[g][e]) {
                        return Err(Error::Contract(format!("element {} does not act additively", dom.label(g))));
                    }
                }
            }
            for h in 0..dom.size() {
                let gh = dom.op(g, h);
                if (0..n).any(|a| t[gh][a] != t[g][t[h][a]]) {
                    return Err(Error::Contract(format!("action is not compatible with the product at ({}, {})", dom.label(g), dom.label(h))));
                }
            }
        }
        Ok(())
    }
}

/// Coefficients of a cochain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    /// Exponents of `ζ_N`, trivial action.
    Mu(u32),
    Module(Arc<Module>),
}

impl Coeff {
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match self {
            Coeff::Mu(n) => (a + b) % *n as usize,
            Coeff::Module(m) => m.group.add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        match self {
            Coeff::Mu(n) => (*n as usize - a % *n as usize) % *n as usize,
            Coeff::Module(m) => m.group.neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn act(&self, g: usize, a: usize) -> usize {
        match self {
            Coeff::Mu(_) => a,
            Coeff::Module(m) => m.act(g, a),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Coeff::Mu(n) => *n as usize,
            Coeff::Module(m) => m.group.order(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Coeff::Mu(n) => format!("mu{n}"),
            Coeff::Module(m) => {
                let s: Vec<String> = m.group.moduli().iter().map(|x| x.to_string()).collect();
                format!("Z[{}]", s.join(","))
            }
        }
    }

    fn label(&self, v: usize) -> String {
        match self {
            Coeff::Mu(_) => v.to_string(),
            Coeff::Module(m) => m.group.label(v),
        }
    }
}

/// A 1-cochain `Γ → M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain1 {
    pub coeff: Coeff,
    pub values: Vec<usize>,
}

impl Cochain1 {
    pub fn constant(size: usize, coeff: Coeff, v: usize) -> Self {
        Cochain1 { coeff, values: vec![v; size] }
    }

    pub fn get(&self, x: usize) -> usize {
        self.values[x]
    }
}

/// A 2-cochain `Γ × Γ → M`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    pub size: usize,
    pub coeff: Coeff,
    pub values: Vec<usize>,
}

impl Cochain2 {
    pub fn trivial(size: usize, coeff: Coeff) -> Self {
        Cochain2 { size, coeff, values: vec![0; size * size] }
    }

    pub fn from_fn(size: usize, coeff: Coeff, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut values = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                values.push(f(x, y));
            }
        }
        Cochain2 { size, coeff, values }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.values[x * self.size + y]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Pointwise sum (product of multiplicative values).
    pub fn add(&self, other: &Cochain2) -> Result<Cochain2> {
        if self.size != other.size || self.coeff != other.coeff {
            return Err(Error::Dimension("cochains over different domains or coefficients".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| self.coeff.add(a, b)).collect();
        Ok(Cochain2 { size: self.size, coeff: self.coeff.clone(), values })
    }

    pub fn neg(&self) -> Cochain2 {
        Cochain2 { size: self.size, coeff: self.coeff.clone(), values: self.values.iter().map(|&a| self.coeff.neg(a)).collect() }
    }

    /// First pair `(x,y)` with `c(x,y) ≠ c(y,x)`.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.size).flat_map(|x| (x + 1..self.size).map(move |y| (x, y))).find(|&(x, y)| self.get(x, y) != self.get(y, x))
    }

    /// Dump in the text format `cocycle2 <group> <coeff> <N>` followed by `x y -> value` lines.
    pub fn dump<D: Domain>(&self, dom: &D, group_name: &str) -> String {
        let n = match &self.coeff {
            Coeff::Mu(n) => *n,
            Coeff::Module(m) => m.group.exponent(),
        };
        let mut s = format!("cocycle2 {} {} {}\n", group_name.replace(' ', "_"), self.coeff.name(), n);
        for x in 0..self.size {
            for y in 0..self.size {
                let _ = writeln!(s, "{} {} -> {}", dom.label(x), dom.label(y), self.coeff.label(self.get(x, y)));
            }
        }
        s
    }
}

/// Parse the dump format written by [`Cochain2::dump`]. Element labels are looked up in
/// `dom`. A `Z[...]` header yields a module with trivial action, since the dump does not
/// record the action. Returns the group name from the header and the cochain.
pub fn parse_dump<D: Domain>(text: &str, dom: &D) -> Result<(String, Cochain2)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty cocycle dump".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [tag, name, coeff, modulus] = parts[..] else {
        return Err(Error::Parse(format!("bad header {header:?}")));
    };
    if tag != "cocycle2" {
        return Err(Error::Parse(format!("expected cocycle2 header, got {tag:?}")));
    }
    let modulus: u32 = modulus.parse().map_err(|_| Error::Parse(format!("bad modulus {modulus:?}")))?;
    let coeff = if let Some(n) = coeff.strip_prefix("mu") {
        let n: u32 = n.parse().map_err(|_| Error::Parse(format!("bad coefficient {coeff:?}")))?;
        if n != modulus || n == 0 {
            return Err(Error::Parse(format!("coefficient {coeff} disagrees with modulus {modulus}")));
        }
        Coeff::Mu(n)
    } else if let Some(inner) = coeff.strip_prefix("Z[").and_then(|c| c.strip_suffix(']')) {
        let moduli = inner
            .split(',')
            .map(|x| x.parse::<u32>().map_err(|_| Error::Parse(format!("bad modulus list {inner:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Coeff::Module(Arc::new(Module::trivial(AbelianGroup::new(moduli)?)))
    } else {
        return Err(Error::Parse(format!("unknown coefficient {coeff:?}")));
    };
    let size = dom.size();
    let index: std::collections::HashMap<String, usize> = (0..size).map(|x| (dom.label(x), x)).collect();
    let lookup = |l: &str| index.get(l).copied().ok_or_else(|| Error::Parse(format!("unknown element {l:?}")));
    let mut values = vec![None; size * size];
    for line in lines {
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::Parse(format!("missing '->' in {line:?}")))?;
        let args: Vec<&str> = lhs.split_whitespace().collect();
        let [x, y] = args[..] else {
            return Err(Error::Parse(format!("expected two elements in {line:?}")));
        };
        let (x, y) = (lookup(x)?, lookup(y)?);
        let rhs = rhs.trim();
        let v = match &coeff {
            Coeff::Mu(n) => rhs.parse::<u32>().ok().filter(|v| v < n).map(|v| v as usize),
            Coeff::Module(m) => rhs
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .and_then(|r| r.split(',').map(|c| c.parse::<u32>().ok()).collect::<Option<Vec<_>>>())
                .filter(|c| c.len() == m.group.rank() && c.iter().zip(m.group.moduli()).all(|(a, b)| a < b))
                .map(|c| m.group.index(&c)),
        }
        .ok_or_else(|| Error::Parse(format!("bad value {rhs:?}")))?;
        if values[x * size + y].replace(v).is_some() {
            return Err(Error::Parse(format!("duplicate entry for ({}, {})", dom.label(x), dom.label(y))));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Parse(format!("missing entry for ({}, {})", dom.label(i / size), dom.label(i % size)))))
        .collect::<Result<Vec<_>>>()?;
    Ok((name.to_string(), Cochain2 { size, coeff, values }))
}

/// `d1 z` with the sign convention of the coefficient type (see module docs).
pub fn d1<D: Domain>(dom: &D, z: &Cochain1) -> Cochain2 {
    let c = &z.coeff;
    Cochain2::from_fn(dom.size(), c.clone(), |g, h| {
        let gh = dom.op(g, h);
        match c {
            Coeff::Mu(_) => c.sub(c.sub(z.get(gh), z.get(g)), z.get(h)),
            Coeff::Module(_) => c.sub(c.add(z.get(g), c.act(g, z.get(h))), z.get(gh)),
        }
    })
}

/// `(d2 c)(g,h,k) = g·c(h,k) − c(gh,k) + c(g,hk) − c(g,h)`.
#[inline]
pub fn d2_at<D: Domain>(dom: &D, c: &Cochain2, g: usize, h: usize, k: usize) -> usize {
    let co = &c.coeff;
    let a = co.add(co.act(g, c.get(h, k)), c.get(g, dom.op(h, k)));
    let b = co.add(c.get(dom.op(g, h), k), c.get(g, h));
    co.sub(a, b)
}

/// The full `d2 c` table, indexed `(g·n + h)·n + k`.
pub fn d2<D: Domain>(dom: &D, c: &Cochain2) -> Vec<usize> {
    let n = dom.size();
    let mut out = Vec::with_capacity(n * n * n);
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                out.push(d2_at(dom, c, g, h, k));
            }
        }
    }
    out
}

/// `Ok` if `c` is a 2-cocycle, else the first failing triple.
pub fn is_cocycle2<D: Domain>(dom: &D, c: &Cochain2) -> std::result::Result<(), (usize, usize, usize)> {
    let n = dom.size();
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                if d2_at(dom, c, g, h, k) != 0 {
                    return Err((g, h, k));
                }
            }
        }
    }
    Ok(())
}

/// Restriction of `c` to the subgroup with the given members (listed in the order that
/// defines the indices of `sub`). `sub` must be the subgroup's own table.
pub fn restrict<D: Domain>(dom: &D, c: &Cochain2, members: &[usize], sub: &TableGroup) -> Result<Cochain2> {
    if sub.order() != members.len() {
        return Err(Error::Dimension("subgroup table and member list disagree".into()));
    }
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            if members[sub.m(i as u32, j as u32) as usize] != dom.op(a, b) {
                return Err(Error::Contract("members do not form a subgroup with the given table".into()));
            }
        }
    }
    let coeff = match &c.coeff {
        Coeff::Module(m) => match &m.action {
            Some(t) => Coeff::Module(Arc::new(Module { group: m.group.clone(), action: Some(members.iter().map(|&g| t[g].clone()).collect()) })),
            None => c.coeff.clone(),
        },
        other => other.clone(),
    };
    Ok(Cochain2::from_fn(members.len(), coeff, |x, y| c.get(members[x], members[y])))
}

/// Push a module-valued cochain along a homomorphism `φ: A → A′` given on all indices.
/// `φ` must commute with the actions; the first violation is reported.
pub fn push_coeffs<D: Domain>(dom: &D, c: &Cochain2, phi: &[usize], target: Arc<Module>) -> Result<Cochain2> {
    let Coeff::Module(src) = &c.coeff else {
        return Err(Error::Contract("push_coeffs needs module coefficients".into()));
    };
    let (a, b) = (&src.group, &target.group);
    if phi.len() != a.order() {
        return Err(Error::Dimension("map must be given on every element".into()));
    }
    for x in 0..a.order() {
        for j in 0..a.rank() {
            let e = a.unit(j);
            if phi[a.add(x, e)] != b.add(phi[x], phi[e]) {
                return Err(Error::Contract(format!("map is not additive at {}", a.label(x))));
            }
        }
    }
    for g in 0..dom.size() {
        for j in 0..a.rank() {
            let e = a.unit(j);
            if phi[src.act(g, e)] != target.act(g, phi[e]) {
                return Err(Error::Contract(format!("map is not equivariant for {}", dom.label(g))));
            }
        }
    }
    Ok(Cochain2 { size: c.size, coeff: Coeff::Module(target), values: c.values.iter().map(|&v| phi[v]).collect() })
}
