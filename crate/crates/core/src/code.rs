//! Linear codes over `F_q` in canonical reduced echelon form.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::galg::{GroupAlgebra, IdealBasis};
use crate::linalg::Echelon;
use crate::par::{self, Exec};
use crate::perm::{Perm, PermGroup};

/// Largest number of codewords enumerated for weight computations.
pub const MAX_CODEWORDS: u64 = 1_000_000;
/// Longest code whose full permutation automorphism group is enumerated.
pub const MAX_PAUT_LENGTH: usize = 8;
/// Longest code accepted by the equivalence search.
pub const MAX_EQUIVALENCE_LENGTH: usize = 10;
/// Codeword count up to which per-coordinate weight profiles prune searches.
const PROFILE_CODEWORDS: u64 = 1 << 16;

/// A subspace of `F_q^n`. Equality is equality of canonical generator matrices.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Arc<Field>,
    n: usize,
    basis: Echelon,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.basis == other.basis
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Canonical basis of the row space of `rows`.
    pub fn from_rows<I>(field: Arc<Field>, n: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: AsRef<[u32]>,
    {
        let mut basis = Echelon::empty(n);
        for r in rows {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: r.len() });
            }
            if let Some(&c) = r.iter().find(|&&c| !field.contains(c)) {
                return Err(Error::InvalidArgument(format!("{c} is not an element of {}", field.spec())));
            }
            basis.insert(&field, r);
        }
        Ok(LinearCode { field, n, basis })
    }

    pub fn from_echelon(field: Arc<Field>, basis: Echelon) -> Self {
        LinearCode { n: basis.ncols(), field, basis }
    }

    pub fn zero(field: Arc<Field>, n: usize) -> Self {
        LinearCode { field, n, basis: Echelon::empty(n) }
    }

    pub fn full(field: Arc<Field>, n: usize) -> Self {
        let rows: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect();
        Self::from_rows(field, n, rows).unwrap()
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    /// Rows of the canonical generator matrix.
    pub fn rows(&self) -> &[Vec<u32>] {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Echelon {
        &self.basis
    }

    /// `q^k`, if it fits in a `u64`.
    pub fn codeword_count(&self) -> Option<u64> {
        (self.field.order() as u64).checked_pow(self.dim() as u32)
    }

    fn check_cap(&self, cap: u64) -> Result<u64> {
        match self.codeword_count() {
            Some(c) if c <= cap => Ok(c),
            c => Err(Error::CapExceeded { what: "codewords", value: c.unwrap_or(u64::MAX), cap }),
        }
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        word.len() == self.n && self.basis.contains(&self.field, word)
    }

    /// `other ⊆ self`.
    pub fn contains_code(&self, other: &LinearCode) -> bool {
        other.n == self.n && self.basis.contains_all(&self.field, &other.basis)
    }

    /// Folds every codeword, split into independent chunks over the
    /// leading message coordinates.
    fn fold_codewords<A, I, F, C>(&self, cap: u64, exec: Exec, init: I, visit: F, combine: C) -> Result<A>
    where
        A: Send,
        I: Fn() -> A + Send + Sync,
        F: Fn(&mut A, &[u32]) + Send + Sync,
        C: Fn(A, A) -> A,
    {
        self.check_cap(cap)?;
        let q = self.field.order() as u64;
        let k = self.dim();
        let (mut depth, mut tasks) = (0, 1u64);
        while depth < k && tasks < 256 {
            tasks *= q;
            depth += 1;
        }
        let parts = par::map(exec, (0..tasks).collect(), |prefix| {
            let mut bufs = vec![vec![0u32; self.n]; k + 1];
            let mut x = prefix;
            for j in 0..depth {
                let lambda = (x % q) as u32;
                x /= q;
                let (cur, rest) = bufs.split_at_mut(j + 1);
                self.add_scaled(&cur[j], lambda, j, &mut rest[0]);
            }
            let mut acc = init();
            self.walk(depth, &mut bufs, &mut acc, &visit);
            acc
        });
        let mut it = parts.into_iter();
        let first = it.next().unwrap_or_else(init);
        Ok(it.fold(first, combine))
    }

    fn add_scaled(&self, src: &[u32], lambda: u32, row: usize, dst: &mut [u32]) {
        let r = &self.basis.rows()[row];
        for ((d, &s), &c) in dst.iter_mut().zip(src).zip(r) {
            *d = if c == 0 { s } else { self.field.add(s, self.field.mul(lambda, c)) };
        }
    }

    fn walk<A>(&self, level: usize, bufs: &mut [Vec<u32>], acc: &mut A, visit: &impl Fn(&mut A, &[u32])) {
        if level == self.dim() {
            visit(acc, &bufs[level]);
            return;
        }
        for lambda in 0..self.field.order() {
            {
                let (cur, rest) = bufs.split_at_mut(level + 1);
                self.add_scaled(&cur[level], lambda, level, &mut rest[0]);
            }
            self.walk(level + 1, bufs, acc, visit);
        }
    }

    /// `hist[w]` = number of codewords of Hamming weight `w`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        self.weight_distribution_with(MAX_CODEWORDS, Exec::default())
    }

    pub fn weight_distribution_with(&self, cap: u64, exec: Exec) -> Result<Vec<u64>> {
        let n = self.n;
        self.fold_codewords(
            cap,
            exec,
            || vec![0u64; n + 1],
            |h, w| h[w.iter().filter(|&&c| c != 0).count()] += 1,
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
    }

    /// Every codeword, in enumeration order.
    pub fn codewords(&self) -> Result<Vec<Vec<u32>>> {
        self.fold_codewords(
            MAX_CODEWORDS,
            Exec::Sequential,
            Vec::new,
            |v, w| v.push(w.to_vec()),
            |mut a, b| {
                a.extend(b);
                a
            },
        )
    }

    /// `w(C)`, the least weight of a nonzero codeword.
    pub fn min_weight(&self) -> Result<usize> {
        if self.dim() == 0 {
            return Err(Error::ZeroCode);
        }
        let hist = self.weight_distribution()?;
        Ok((1..=self.n).find(|&w| hist[w] > 0).expect("nonzero code has a nonzero word"))
    }

    /// Every codeword weight is a multiple of `delta`.
    pub fn is_divisible(&self, delta: usize) -> Result<bool> {
        if delta < 2 {
            return Err(Error::InvalidArgument(format!("divisor must exceed 1, got {delta}")));
        }
        let hist = self.weight_distribution()?;
        Ok(hist.iter().enumerate().all(|(w, &c)| c == 0 || w % delta == 0))
    }

    /// `σ(C)`, where `σ` sends coordinate `i` to `σ(i)`.
    pub fn apply_perm(&self, sigma: &Perm) -> Result<LinearCode> {
        if sigma.degree() != self.n {
            return Err(Error::DegreeMismatch { expected: self.n, got: sigma.degree() });
        }
        let rows: Vec<Vec<u32>> = self.rows().iter().map(|r| permute_word(sigma, r)).collect();
        Ok(LinearCode {
            field: Arc::clone(&self.field),
            n: self.n,
            basis: Echelon::from_rows(&self.field, self.n, rows),
        })
    }

    /// `σ(C) = C`; false for a permutation of the wrong degree.
    pub fn paut_contains(&self, sigma: &Perm) -> bool {
        sigma.degree() == self.n
            && self.rows().iter().all(|r| self.basis.contains(&self.field, &permute_word(sigma, r)))
    }

    /// For each coordinate, the weight histogram of codewords nonzero there.
    fn coordinate_profiles(&self, exec: Exec) -> Vec<Vec<u64>> {
        let n = self.n;
        let zero_cols: Vec<Vec<u64>> = (0..n).map(|i| vec![self.rows().iter().all(|r| r[i] == 0) as u64]).collect();
        if self.codeword_count().is_none_or(|c| c > PROFILE_CODEWORDS) {
            return zero_cols;
        }
        let flat = self
            .fold_codewords(
                PROFILE_CODEWORDS,
                exec,
                || vec![0u64; n * (n + 1)],
                |acc, w| {
                    let wt = w.iter().filter(|&&c| c != 0).count();
                    for (i, &c) in w.iter().enumerate() {
                        if c != 0 {
                            acc[i * (n + 1) + wt] += 1;
                        }
                    }
                },
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
            .expect("under the profile cap");
        flat.chunks(n + 1).map(|c| c.to_vec()).collect()
    }

    fn puncture(&self, coords: impl Iterator<Item = usize> + Clone) -> Echelon {
        let m = coords.clone().count();
        let rows: Vec<Vec<u32>> = self.rows().iter().map(|r| coords.clone().map(|i| r[i]).collect()).collect();
        Echelon::from_rows(&self.field, m, rows)
    }
}

pub(crate) fn permute_word(sigma: &Perm, word: &[u32]) -> Vec<u32> {
    let mut out = vec![0; word.len()];
    for (i, &c) in word.iter().enumerate() {
        out[sigma.apply(i)] = c;
    }
    out
}

/// Backtracking search for `σ` with `σ(c1) = c2`, assigning `σ(0), σ(1), ..`
/// in turn. A partial assignment survives only when the punctured codes on
/// the assigned coordinates and their images agree.
struct EquivalenceSearch<'a> {
    c1: &'a LinearCode,
    c2: &'a LinearCode,
    allowed: Vec<Vec<usize>>,
}

impl<'a> EquivalenceSearch<'a> {
    fn new(c1: &'a LinearCode, c2: &'a LinearCode, exec: Exec) -> Self {
        let p1 = c1.coordinate_profiles(exec);
        let p2 = if std::ptr::eq(c1, c2) { p1.clone() } else { c2.coordinate_profiles(exec) };
        let allowed = p1.iter().map(|a| (0..c2.n).filter(|&j| p2[j] == *a).collect()).collect();
        EquivalenceSearch { c1, c2, allowed }
    }

    fn consistent(&self, images: &[usize]) -> bool {
        let d = images.len();
        self.c1.puncture(0..d) == self.c2.puncture(images.iter().copied())
    }

    fn dfs(&self, images: &mut Vec<usize>, used: &mut [bool], first_only: bool, out: &mut Vec<Perm>) {
        if images.len() == self.c1.n {
            let sigma = Perm::from_images(images.iter().map(|&x| x as u32).collect()).unwrap();
            if self.c1.apply_perm(&sigma).is_ok_and(|c| c == *self.c2) {
                out.push(sigma);
            }
            return;
        }
        let i = images.len();
        for &j in &self.allowed[i] {
            if used[j] {
                continue;
            }
            images.push(j);
            used[j] = true;
            if self.consistent(images) {
                self.dfs(images, used, first_only, out);
            }
            used[j] = false;
            images.pop();
            if first_only && !out.is_empty() {
                return;
            }
        }
    }

    fn subtree(&self, first: usize, first_only: bool) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut used = vec![false; self.c1.n];
        let mut images = vec![first];
        used[first] = true;
        if self.consistent(&images) {
            self.dfs(&mut images, &mut used, first_only, &mut out);
        }
        out
    }

    fn all(&self, exec: Exec) -> Vec<Perm> {
        if self.c1.n == 0 {
            return vec![Perm::identity(0)];
        }
        par::map(exec, self.allowed[0].clone(), |first| self.subtree(first, false)).into_iter().flatten().collect()
    }

    fn first(&self, exec: Exec) -> Option<Perm> {
        if self.c1.n == 0 {
            return Some(Perm::identity(0));
        }
        par::find_map_first(exec, self.allowed[0].clone(), |first| self.subtree(first, true).into_iter().next())
    }
}

/// `PAut(C) = {σ ∈ S_n : σ(C) = C}` for `n ≤ 8`.
pub fn paut_enumerate(code: &LinearCode) -> Result<PermGroup> {
    paut_enumerate_with(code, Exec::default())
}

pub fn paut_enumerate_with(code: &LinearCode, exec: Exec) -> Result<PermGroup> {
    if code.n > MAX_PAUT_LENGTH {
        return Err(Error::CapExceeded { what: "PAut length", value: code.n as u64, cap: MAX_PAUT_LENGTH as u64 });
    }
    let autos = EquivalenceSearch::new(code, code, exec).all(exec);
    PermGroup::from_elements(&autos, code.n)
}

/// Some `σ` with `σ(c1) = c2`, or `None`. Codes of different dimension or
/// weight distribution are rejected before searching.
pub fn perm_equivalent(c1: &LinearCode, c2: &LinearCode) -> Result<Option<Perm>> {
    perm_equivalent_with(c1, c2, Exec::default())
}

pub fn perm_equivalent_with(c1: &LinearCode, c2: &LinearCode, exec: Exec) -> Result<Option<Perm>> {
    if c1.field != c2.field {
        return Err(Error::FieldMismatch(c1.field.spec().to_string(), c2.field.spec().to_string()));
    }
    if c1.n != c2.n {
        return Err(Error::LengthMismatch { expected: c1.n, got: c2.n });
    }
    if c1.n > MAX_EQUIVALENCE_LENGTH {
        return Err(Error::CapExceeded {
            what: "equivalence length",
            value: c1.n as u64,
            cap: MAX_EQUIVALENCE_LENGTH as u64,
        });
    }
    if c1.dim() != c2.dim() {
        return Ok(None);
    }
    if c1.codeword_count().is_some_and(|c| c <= MAX_CODEWORDS)
        && c1.weight_distribution_with(MAX_CODEWORDS, exec)? != c2.weight_distribution_with(MAX_CODEWORDS, exec)?
    {
        return Ok(None);
    }
    Ok(EquivalenceSearch::new(c1, c2, exec).first(exec))
}

/// A bijection `φ` from coordinates to group elements: `phi[i]` is the
/// element index of `φ(e_i)`.
#[derive(Clone, Debug)]
pub struct CoordBijection {
    group: Arc<PermGroup>,
    phi: Vec<usize>,
}

impl CoordBijection {
    pub fn new(group: Arc<PermGroup>, phi: Vec<usize>) -> Result<Self> {
        let n = group.order();
        if phi.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: phi.len() });
        }
        let mut hit = vec![false; n];
        for &x in &phi {
            if x >= n || std::mem::replace(&mut hit[x], true) {
                return Err(Error::InvalidArgument("φ is not a bijection onto the group".into()));
            }
        }
        Ok(CoordBijection { group, phi })
    }

    /// `phi[i] = i` in the group's element order.
    pub fn identity(group: Arc<PermGroup>) -> Self {
        let phi = (0..group.order()).collect();
        CoordBijection { group, phi }
    }

    /// For a regular group: coordinate `i` goes to the unique `g` with
    /// `g(i0) = i`, so that left multiplication is the natural action.
    pub fn regular(group: Arc<PermGroup>, i0: usize) -> Result<Self> {
        if !group.is_regular() {
            return Err(Error::NotRegular);
        }
        if i0 >= group.degree() {
            return Err(Error::InvalidArgument(format!("base point {} out of range", i0 + 1)));
        }
        let mut phi = vec![0; group.degree()];
        for (j, g) in group.elements().iter().enumerate() {
            phi[g.apply(i0)] = j;
        }
        Ok(CoordBijection { group, phi })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    /// `inverse()[g]` is the coordinate sent to element `g`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.phi.len()];
        for (i, &g) in self.phi.iter().enumerate() {
            inv[g] = i;
        }
        inv
    }
}

fn check_bridge(alg: &GroupAlgebra, phi: &CoordBijection, field: &Field) -> Result<()> {
    if *alg.group() != *phi.group() {
        return Err(Error::InvalidArgument("φ and the algebra use different groups".into()));
    }
    if **alg.field() != *field {
        return Err(Error::FieldMismatch(alg.field().spec().to_string(), field.spec().to_string()));
    }
    Ok(())
}

/// `~φ(C)` with its ideal kind detected.
pub fn code_to_algebra(code: &LinearCode, phi: &CoordBijection, alg: &GroupAlgebra) -> Result<IdealBasis> {
    if code.n != phi.phi.len() {
        return Err(Error::LengthMismatch { expected: phi.phi.len(), got: code.n });
    }
    check_bridge(alg, phi, &code.field)?;
    let rows: Vec<Vec<u32>> = code
        .rows()
        .iter()
        .map(|r| {
            let mut v = vec![0; r.len()];
            for (i, &c) in r.iter().enumerate() {
                v[phi.phi[i]] = c;
            }
            v
        })
        .collect();
    Ok(alg.subspace(rows))
}

/// `~φ⁻¹(I)`.
pub fn algebra_to_code(ideal: &IdealBasis, phi: &CoordBijection, alg: &GroupAlgebra) -> Result<LinearCode> {
    check_bridge(alg, phi, alg.field())?;
    if ideal.basis.ncols() != phi.phi.len() {
        return Err(Error::LengthMismatch { expected: phi.phi.len(), got: ideal.basis.ncols() });
    }
    let rows: Vec<Vec<u32>> = ideal.rows().iter().map(|v| phi.phi.iter().map(|&g| v[g]).collect()).collect();
    LinearCode::from_rows(Arc::clone(alg.field()), phi.phi.len(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: &str) -> Arc<Field> {
        Field::parse(q).unwrap()
    }

    fn code(q: &str, rows: &[&[u32]]) -> LinearCode {
        let n = rows.first().map_or(0, |r| r.len());
        LinearCode::from_rows(f(q), n, rows).unwrap()
    }

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let c = code("2", &[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.rows(), &[vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(code("2", &[&[1, 1], &[1, 1]]).dim(), 1);
        assert_eq!(code("2", &[&[0, 0, 0]]).dim(), 0);
        assert!(LinearCode::from_rows(f("2"), 3, [[1, 1]]).is_err());
        assert!(LinearCode::from_rows(f("2"), 2, [[1, 2]]).is_err());
    }

    #[test]
    fn weights() {
        let rep = code("3", &[&[1, 1, 1, 1]]);
        assert_eq!(rep.min_weight().unwrap(), 4);
        assert_eq!(rep.weight_distribution().unwrap(), vec![1, 0, 0, 0, 2]);
        assert_eq!(LinearCode::full(f("5"), 3).min_weight().unwrap(), 1);
        let c = code("2", &[&[1, 1, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1]]);
        assert_eq!(c.min_weight().unwrap(), 3);
        assert!(c.is_divisible(3).unwrap());
        assert!(code("2", &[&[1, 1, 1, 1]]).is_divisible(2).unwrap());
        assert!(!LinearCode::full(f("2"), 2).is_divisible(2).unwrap());
        assert_eq!(LinearCode::zero(f("2"), 3).min_weight().unwrap_err(), Error::ZeroCode);
        let big = LinearCode::full(f("2"), 21);
        assert!(matches!(big.min_weight(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn weight_modes_agree() {
        let c = code("3", &[&[1, 0, 0, 2, 1, 1, 0], &[0, 1, 0, 1, 1, 2, 2], &[0, 0, 1, 1, 0, 1, 2]]);
        assert_eq!(
            c.weight_distribution_with(MAX_CODEWORDS, Exec::Sequential).unwrap(),
            c.weight_distribution_with(MAX_CODEWORDS, Exec::Parallel).unwrap()
        );
        assert_eq!(c.weight_distribution().unwrap().iter().sum::<u64>(), 27);
    }

    #[test]
    fn permutation_action() {
        let rep2 = code("3", &[&[1, 1]]);
        assert_eq!(rep2.apply_perm(&p("(1 2)", 2)).unwrap(), rep2);
        let c = code("2", &[&[1, 1, 0, 0]]);
        assert_eq!(c.apply_perm(&p("(1 4)", 4)).unwrap(), code("2", &[&[0, 1, 0, 1]]));
        assert_eq!(c.apply_perm(&Perm::identity(4)).unwrap(), c);
        assert!(c.apply_perm(&Perm::identity(3)).is_err());
    }

    #[test]
    fn paut_membership() {
        let c = code("2", &[&[1, 0, 0], &[0, 1, 1]]);
        assert!(c.paut_contains(&Perm::identity(3)));
        assert!(!c.paut_contains(&p("(1 2)", 3)));
        assert!(c.paut_contains(&p("(2 3)", 3)));
        assert!(LinearCode::full(f("2"), 3).paut_contains(&p("(1 3 2)", 3)));
    }

    #[test]
    fn paut_examples() {
        for t in 1..=5 {
            let rep = LinearCode::from_rows(f("2"), t, [vec![1; t]]).unwrap();
            let fact: usize = (1..=t).product();
            assert_eq!(paut_enumerate(&rep).unwrap().order(), fact);
            assert_eq!(paut_enumerate(&LinearCode::full(f("3"), t)).unwrap().order(), fact);
        }
        let rr = code("2", &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert_eq!(paut_enumerate(&rr).unwrap().order(), 8);
        assert!(paut_enumerate(&LinearCode::full(f("2"), 9)).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let c = code("2", &[&[1, 1, 0]]);
        let d = code("2", &[&[0, 1, 1]]);
        assert!(perm_equivalent(&c, &c).unwrap().is_some());
        let sigma = perm_equivalent(&c, &d).unwrap().unwrap();
        assert_eq!(c.apply_perm(&sigma).unwrap(), d);
        let rr = code("2", &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert_eq!(perm_equivalent(&rr, &LinearCode::full(f("2"), 4)).unwrap(), None);
        let e = code("2", &[&[1, 1, 1, 0]]);
        assert_eq!(perm_equivalent(&code("2", &[&[1, 1, 0, 0]]), &e).unwrap(), None);
    }
}
