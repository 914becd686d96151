//! Permutations of `{1..n}`, enumerated permutation groups and Cayley tables.
//!
//! Points are stored 0-based; every text format and every `Display` is 1-based.
//! Composition follows function notation: `a.compose(&b)` is `a ∘ b`, i.e.
//! apply `b` first.

mod group;
mod table;

use std::fmt;

use crate::error::{Error, Result};

pub use group::{
    anti_isomorphism_to_centralizer, centralizer_brute_force, centralizer_in_symmetric, group_closure, PermGroup,
    SigmaMap, MAX_GROUP_ORDER,
};
pub use table::{
    find_isomorphism, is_hall_cocyclic, quotient, regular_representation, CayleyTable, Quotient, RegularRep,
    MAX_ISOMORPHISM_ORDER,
};

/// A bijection of `{0..n-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidPerm(format!("{images:?} is not a bijection of 0..{n}")));
            }
        }
        Ok(Perm { images })
    }

    /// From 1-based images, as in the one-line text format.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPerm("points are numbered from 1".into()));
        }
        Self::from_images(images.iter().map(|&x| x as u32 - 1).collect())
    }

    /// From 1-based disjoint (or composable, applied right to left) cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Perm::identity(n);
        for cycle in cycles.iter().rev() {
            let mut c = Perm::identity(n);
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x == 0 || y == 0 || x > n || y > n {
                    return Err(Error::InvalidPerm(format!("point out of range 1..{n} in cycle {cycle:?}")));
                }
                c.images[x - 1] = (y - 1) as u32;
            }
            let c = Perm::from_images(c.images)?;
            p = c.compose(&p);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Nontrivial cycles, 1-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }

    pub fn pow(&self, e: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }

    /// One-line notation `[2,3,1]`.
    pub fn to_one_line(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses cycle notation `(1 2 3)(4 5)` (the identity is `()`) or the
    /// one-line list `[2,3,1,5,4]`.
    pub fn parse(text: &str, degree: usize) -> Result<Perm> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('[') {
            let inner =
                inner.strip_suffix(']').ok_or_else(|| Error::Parse(format!("unterminated image list '{t}'")))?;
            let images = split_numbers(inner)?;
            if images.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, got: images.len() });
            }
            return Perm::from_one_based(&images);
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in '{t}'")))?;
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("unbalanced cycle in '{t}'")))?;
            let points = split_numbers(&body[..close])?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = body[close + 1..].trim_start();
        }
        let mut seen = std::collections::HashSet::new();
        for &x in cycles.iter().flatten() {
            if !seen.insert(x) {
                return Err(Error::InvalidPerm(format!("point {x} repeated in '{t}'")));
            }
        }
        Perm::from_cycles(degree, &cycles)
    }
}

fn split_numbers(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|w| !w.is_empty())
        .map(|w| w.parse::<usize>().map_err(|_| Error::Parse(format!("bad point '{w}'"))))
        .collect()
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
