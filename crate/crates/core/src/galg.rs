//! The group algebra `F_q[G]` and its one- and two-sided ideals.
//!
//! Elements are coefficient vectors indexed by the element order of the
//! underlying [`PermGroup`]. Ideals are subspaces in reduced echelon form,
//! closed under multiplication by the group's generators on the declared side.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::linalg::Echelon;
use crate::perm::{CayleyTable, Perm, PermGroup};

/// Side of a group action on the algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    #[default]
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("side must be left or right, got '{s}'"))),
        }
    }
}

/// Which multiplications a subspace is closed under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealKind {
    Left,
    Right,
    TwoSided,
    Subspace,
}

impl IdealKind {
    fn sides(self) -> &'static [Side] {
        match self {
            IdealKind::Left => &[Side::Left],
            IdealKind::Right => &[Side::Right],
            IdealKind::TwoSided => &[Side::Left, Side::Right],
            IdealKind::Subspace => &[],
        }
    }

    /// True when an ideal of kind `self` is also of kind `other`.
    pub fn implies(self, other: IdealKind) -> bool {
        self == other || self == IdealKind::TwoSided || other == IdealKind::Subspace
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdealKind::Left => "left",
            IdealKind::Right => "right",
            IdealKind::TwoSided => "two-sided",
            IdealKind::Subspace => "subspace",
        })
    }
}

impl FromStr for IdealKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(IdealKind::Left),
            "right" => Ok(IdealKind::Right),
            "two-sided" => Ok(IdealKind::TwoSided),
            "subspace" => Ok(IdealKind::Subspace),
            _ => Err(Error::Parse(format!("unknown ideal side '{s}'"))),
        }
    }
}

impl From<Side> for IdealKind {
    fn from(s: Side) -> Self {
        match s {
            Side::Left => IdealKind::Left,
            Side::Right => IdealKind::Right,
        }
    }
}

/// An element `Σ c_g g`; `coeffs[j]` belongs to group element `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GAElem {
    pub coeffs: Vec<u32>,
}

impl GAElem {
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }
}

/// Text form: `c*j` terms joined by `+`, e.g. `1*0 + 2*3`; `0` for zero.
impl fmt::Display for GAElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, c)| format!("{c}*{j}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// A subspace of `F_q[G]` with the multiplications it is known to be closed under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    pub basis: Echelon,
    pub kind: IdealKind,
}

impl IdealBasis {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        self.basis.rows()
    }
}

/// Outcome of checking that an ideal is constant on the orbits of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetProfile {
    /// Orbits (`Ng` for the left action, `gN` for the right), each ascending,
    /// ordered by least element.
    Constant(Vec<Vec<usize>>),
    Violated(Violation),
}

/// `n · row ≠ row` (or `row · n`), first differing at `position`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Index of `n` in `G`.
    pub element: usize,
    pub row: usize,
    pub position: usize,
}

#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    group: Arc<PermGroup>,
    field: Arc<Field>,
    table: CayleyTable,
    generator_indices: Vec<usize>,
}

impl GroupAlgebra {
    pub fn new(group: Arc<PermGroup>, field: Arc<Field>) -> Self {
        let table = CayleyTable::from_group(&group);
        let generator_indices = group.generators().iter().map(|g| group.index_of(g).unwrap()).collect();
        GroupAlgebra { group, field, table, generator_indices }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> GAElem {
        GAElem { coeffs: vec![0; self.dim()] }
    }

    /// The basis element for group element `g`.
    pub fn unit(&self, g: usize) -> GAElem {
        let mut x = self.zero();
        x.coeffs[g] = 1;
        x
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<GAElem> {
        if coeffs.len() != self.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), got: coeffs.len() });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| !self.field.contains(c)) {
            return Err(Error::InvalidArgument(format!("{c} is not in {}", self.field.spec())));
        }
        Ok(GAElem { coeffs })
    }

    pub fn index_of(&self, p: &Perm) -> Result<usize> {
        self.group.index_of(p).ok_or_else(|| Error::NotInGroup(p.to_string()))
    }

    /// `g·x` (left) or `x·g` (right). For the left product the coefficient
    /// of `h` is that of `g⁻¹h` in `x`.
    pub fn mul_elem(&self, g: usize, x: &GAElem, side: Side) -> Result<GAElem> {
        if g >= self.dim() {
            return Err(Error::NotInGroup(format!("element index {g}")));
        }
        Ok(self.mul_elem_unchecked(g, &x.coeffs, side))
    }

    fn mul_elem_unchecked(&self, g: usize, x: &[u32], side: Side) -> GAElem {
        let mut out = vec![0; x.len()];
        for (h, &c) in x.iter().enumerate() {
            let target = match side {
                Side::Left => self.table.mul(g, h),
                Side::Right => self.table.mul(h, g),
            };
            out[target] = c;
        }
        GAElem { coeffs: out }
    }

    pub fn add(&self, x: &GAElem, y: &GAElem) -> GAElem {
        GAElem { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(&a, &b)| self.field.add(a, b)).collect() }
    }

    /// Full algebra product `x·y`.
    pub fn mul(&self, x: &GAElem, y: &GAElem) -> GAElem {
        let mut out = vec![0; self.dim()];
        for (a, &cx) in x.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (b, &cy) in y.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
                let t = self.table.mul(a, b);
                out[t] = self.field.add(out[t], self.field.mul(cx, cy));
            }
        }
        GAElem { coeffs: out }
    }

    fn check_subgroup(&self, n: &PermGroup) -> Result<()> {
        if !n.is_subgroup_of(&self.group) {
            return Err(Error::NotSubgroup("N is not a subgroup of G".into()));
        }
        Ok(())
    }

    /// `N_Σ = Σ_{n ∈ N} n`.
    pub fn subgroup_sum(&self, n: &PermGroup) -> Result<GAElem> {
        self.check_subgroup(n)?;
        let mut x = self.zero();
        for e in n.elements() {
            x.coeffs[self.group.index_of(e).unwrap()] = 1;
        }
        Ok(x)
    }

    /// Row space of `rows` with its kind detected.
    pub fn subspace<I>(&self, rows: I) -> IdealBasis
    where
        I: IntoIterator,
        I::Item: AsRef<[u32]>,
    {
        let basis = Echelon::from_rows(&self.field, self.dim(), rows);
        let kind = self.classify(&basis);
        IdealBasis { basis, kind }
    }

    pub fn classify(&self, basis: &Echelon) -> IdealKind {
        match (self.is_ideal(basis, IdealKind::Left), self.is_ideal(basis, IdealKind::Right)) {
            (true, true) => IdealKind::TwoSided,
            (true, false) => IdealKind::Left,
            (false, true) => IdealKind::Right,
            (false, false) => IdealKind::Subspace,
        }
    }

    /// Smallest subspace containing `gens` closed under the multiplications of `kind`.
    pub fn ideal_generated(&self, gens: &[GAElem], kind: IdealKind) -> IdealBasis {
        let mut basis = Echelon::empty(self.dim());
        let mut queue = Vec::new();
        for g in gens {
            if basis.insert(&self.field, &g.coeffs) {
                queue.push(g.coeffs.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for &side in kind.sides() {
                for &g in &self.generator_indices {
                    let w = self.mul_elem_unchecked(g, &v, side).coeffs;
                    if basis.insert(&self.field, &w) {
                        queue.push(w);
                    }
                }
            }
        }
        IdealBasis { basis, kind }
    }

    /// Closure under the group's generators on the sides of `kind`.
    pub fn is_ideal(&self, basis: &Echelon, kind: IdealKind) -> bool {
        self.closed_under(basis, kind, &self.generator_indices)
    }

    /// Closure checked against every group element.
    pub fn is_ideal_exhaustive(&self, basis: &Echelon, kind: IdealKind) -> bool {
        let all: Vec<usize> = (0..self.dim()).collect();
        self.closed_under(basis, kind, &all)
    }

    fn closed_under(&self, basis: &Echelon, kind: IdealKind, elems: &[usize]) -> bool {
        kind.sides().iter().all(|&side| {
            elems.iter().all(|&g| {
                basis.rows().iter().all(|r| basis.contains(&self.field, &self.mul_elem_unchecked(g, r, side).coeffs))
            })
        })
    }

    /// `n·b = b` (or `b·n = b`) for every generator `n` of `N` and basis row `b`.
    pub fn acts_trivially(&self, n: &PermGroup, basis: &Echelon, side: Side) -> Result<bool> {
        self.check_subgroup(n)?;
        Ok(self.first_violation(n.generators(), basis, side).is_none())
    }

    fn first_violation(&self, elems: &[Perm], basis: &Echelon, side: Side) -> Option<Violation> {
        for p in elems {
            let g = self.group.index_of(p).unwrap();
            for (r, row) in basis.rows().iter().enumerate() {
                let moved = self.mul_elem_unchecked(g, row, side).coeffs;
                if let Some(position) = moved.iter().zip(row).position(|(a, b)| a != b) {
                    return Some(Violation { element: g, row: r, position });
                }
            }
        }
        None
    }

    /// The `N`-orbits of `G` on which every element of the ideal is
    /// constant, or the first generator of `N` that moves a basis row.
    pub fn coset_constancy_profile(&self, basis: &Echelon, n: &PermGroup, side: Side) -> Result<CosetProfile> {
        self.check_subgroup(n)?;
        if let Some(v) = self.first_violation(n.generators(), basis, side) {
            return Ok(CosetProfile::Violated(v));
        }
        let m = self.dim();
        let members: Vec<usize> = n.elements().iter().map(|e| self.group.index_of(e).unwrap()).collect();
        let mut assigned = vec![false; m];
        let mut blocks = Vec::new();
        for h in 0..m {
            if assigned[h] {
                continue;
            }
            let mut block: Vec<usize> = members
                .iter()
                .map(|&x| match side {
                    Side::Left => self.table.mul(x, h),
                    Side::Right => self.table.mul(h, x),
                })
                .collect();
            block.sort_unstable();
            for &b in &block {
                assigned[b] = true;
            }
            blocks.push(block);
        }
        Ok(CosetProfile::Constant(blocks))
    }
}

/// Parses the `c*j + ...` text form against an algebra of dimension `dim`.
pub fn parse_element(text: &str, field: &Field, dim: usize) -> Result<GAElem> {
    let mut coeffs = vec![0; dim];
    let t = text.trim();
    if t == "0" {
        return Ok(GAElem { coeffs });
    }
    for term in t.split('+') {
        let (c, j) = term
            .trim()
            .split_once('*')
            .ok_or_else(|| Error::Parse(format!("term '{}' is not coeff*index", term.trim())))?;
        let c: u32 = c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient '{c}'")))?;
        let j: usize = j.trim().parse().map_err(|_| Error::Parse(format!("bad element index '{j}'")))?;
        if j >= dim || !field.contains(c) {
            return Err(Error::Parse(format!("term '{}' out of range", term.trim())));
        }
        coeffs[j] = field.add(coeffs[j], c);
    }
    Ok(GAElem { coeffs })
}
