//! Permutations on `{0, …, d-1}` with 1-based cycle notation for input and output.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation stored by images. Products apply the left factor first:
/// `(a·b)(x) = b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize).ok_or_else(|| Error::InvalidSpec(format!("image {} out of range", i + 1)))?;
            if *slot {
                return Err(Error::InvalidSpec(format!("image {} repeated", i + 1)));
            }
            *slot = true;
        }
        Ok(Perm(images))
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Perm(out)
    }

    /// Parse cycle notation such as `(1,2,3)(4,5)` or `(1 2 3)`; points are 1-based.
    /// `degree` pads the permutation; the largest mentioned point wins if bigger.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = text.trim();
        if rest == "()" || rest.is_empty() {
            return Ok(Perm::identity(degree));
        }
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let pts: Vec<u32> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<u32>() {
                    Ok(0) => Err(Error::Parse("points are 1-based".into())),
                    Ok(p) => Ok(p - 1),
                    Err(_) => Err(Error::Parse(format!("bad point {s:?}"))),
                })
                .collect::<Result<_>>()?;
            cycles.push(pts);
            rest = open[close + 1..].trim_start();
        }
        let max = cycles.iter().flatten().map(|&p| p as usize + 1).max().unwrap_or(0);
        let d = degree.max(max);
        let mut img: Vec<u32> = (0..d as u32).collect();
        let mut touched = vec![false; d];
        for c in &cycles {
            for (k, &p) in c.iter().enumerate() {
                if touched[p as usize] {
                    return Err(Error::InvalidSpec(format!("point {} appears twice in {text:?}", p + 1)));
                }
                touched[p as usize] = true;
                img[p as usize] = c[(k + 1) % c.len()];
            }
        }
        Perm::from_images(img)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut c = vec![start as u32];
            seen[start] = true;
            let mut x = self.0[start] as usize;
            while x != start {
                seen[x] = true;
                c.push(x as u32);
                x = self.0[x] as usize;
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let body: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles("(1,2,3)(4,5)", 0).unwrap();
        assert_eq!(p.degree(), 5);
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        assert_eq!(Perm::parse_cycles("(1 2 3)", 3).unwrap(), Perm::parse_cycles("(1,2,3)", 0).unwrap());
        assert!(p.mul(&p.inv()) == Perm::identity(5));
        assert!(Perm::parse_cycles("(1,1)", 0).is_err());
        assert!(Perm::parse_cycles("(0,1)", 0).is_err());
        assert!(Perm::parse_cycles("1,2", 0).is_err());
    }

    #[test]
    fn left_factor_applies_first() {
        let a = Perm::parse_cycles("(1,2)", 3).unwrap();
        let b = Perm::parse_cycles("(2,3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.mul(&b).0[0], 2);
    }
}
