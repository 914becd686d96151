use std::collections::HashMap;

use super::{gcd, Perm};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Largest group that will be enumerated.
pub const MAX_GROUP_ORDER: usize = 5040;

/// Largest degree for which centralizers of non-regular groups are found by
/// sweeping all of `S_n`.
pub const MAX_BRUTE_FORCE_DEGREE: usize = 8;

/// A permutation group with every element enumerated.
///
/// The element order is the breadth-first order in which [`group_closure`]
/// discovers elements from the stored generators; index 0 is the identity.
/// All coefficient vectors and bijections refer to this order.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// Points whose images separate all elements.
    base: Vec<usize>,
    base_index: HashMap<Vec<u32>, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.order() == other.order() && self.elements.iter().all(|e| other.contains(e))
    }
}

impl Eq for PermGroup {}

pub fn group_closure(generators: &[Perm], degree: usize) -> Result<PermGroup> {
    PermGroup::closure(generators.to_vec(), degree)
}

impl PermGroup {
    pub fn closure(generators: Vec<Perm>, degree: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, got: g.degree() });
            }
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut i = 0;
        while i < elements.len() {
            for g in &generators {
                let p = g.compose(&elements[i]);
                if !index.contains_key(&p) {
                    if elements.len() == MAX_GROUP_ORDER {
                        return Err(Error::CapExceeded {
                            what: "group order",
                            value: MAX_GROUP_ORDER as u64 + 1,
                            cap: MAX_GROUP_ORDER as u64,
                        });
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            i += 1;
        }
        let (base, base_index) = separating_base(&elements, degree);
        Ok(PermGroup { degree, generators, elements, index, base, base_index })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::closure(Vec::new(), degree).expect("trivial group")
    }

    /// The group formed by `elements`, with generators picked greedily in
    /// the given order. Fails when the elements are not closed.
    pub fn from_elements(elements: &[Perm], degree: usize) -> Result<Self> {
        let mut group = Self::trivial(degree);
        for e in elements {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, got: e.degree() });
            }
            if !group.contains(e) {
                let mut gens = group.generators.clone();
                gens.push(e.clone());
                group = Self::closure(gens, degree)?;
            }
        }
        let distinct: std::collections::HashSet<&Perm> = elements.iter().collect();
        if group.order() != distinct.len().max(1) {
            return Err(Error::NotSubgroup(format!(
                "{} permutations generate a group of order {}",
                distinct.len(),
                group.order()
            )));
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        let (a, b) = (&self.elements[i], &self.elements[j]);
        let key: Vec<u32> = self.base.iter().map(|&x| a.images()[b.apply(x)]).collect();
        self.base_index[&key]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.elements[i].order()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Index of an element generating the whole group, if cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&i| self.element_order(i) == self.order())
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Order equals degree, the action is transitive and no nonidentity
    /// element fixes a point.
    pub fn is_regular(&self) -> bool {
        self.order() == self.degree
            && self.is_transitive()
            && self.elements[1..].iter().all(|e| (0..self.degree).all(|x| e.apply(x) != x))
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.generators.iter().all(|x| g.contains(x))
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && g.generators.iter().all(|x| {
                let xi = x.inverse();
                self.generators.iter().all(|n| self.contains(&x.compose(n).compose(&xi)))
            })
    }

    /// The subgroup generated by `extra` together with this group's generators.
    pub fn extend(&self, extra: &[Perm]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().filter(|p| !self.contains(p)).cloned());
        PermGroup::closure(gens, self.degree)
    }

    /// Subgroup generated by a subset of this group's elements (by index).
    pub fn subgroup(&self, element_indices: &[usize]) -> Result<PermGroup> {
        let gens: Vec<Perm> = element_indices.iter().map(|&i| self.elements[i].clone()).collect();
        PermGroup::closure(gens, self.degree)
    }

    /// `G'`, the normal closure of the commutators of the generators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut gens = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = commutator(a, b);
                if !c.is_identity() {
                    gens.push(c);
                }
            }
        }
        let mut n = PermGroup::closure(gens, self.degree).expect("subgroup of an enumerated group");
        loop {
            let mut extra = Vec::new();
            for x in &self.generators {
                let xi = x.inverse();
                for c in n.generators() {
                    let conj = x.compose(c).compose(&xi);
                    if !n.contains(&conj) && !extra.contains(&conj) {
                        extra.push(conj);
                    }
                }
            }
            if extra.is_empty() {
                return n;
            }
            n = n.extend(&extra).expect("subgroup of an enumerated group");
        }
    }

    pub fn center(&self) -> PermGroup {
        let elems: Vec<Perm> =
            self.elements.iter().filter(|e| self.generators.iter().all(|g| g.commutes_with(e))).cloned().collect();
        PermGroup::from_elements(&elems, self.degree).expect("center is a subgroup")
    }

    /// The set `AB = {ab}` for subgroups `A`, `B`, as element indices.
    pub fn product_set(&self, a: &PermGroup, b: &PermGroup) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        for x in a.elements() {
            for y in b.elements() {
                if let Some(i) = self.index_of(&x.compose(y)) {
                    seen[i] = true;
                }
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    /// Cyclic `A`, `B` of coprime orders with `AB = G`. Nontrivial splits are
    /// preferred, smallest `|A|` first; a cyclic group with no such split
    /// returns `(G, 1)`.
    pub fn find_coprime_cyclic_decomposition(&self) -> Option<(PermGroup, PermGroup)> {
        let n = self.order();
        for d in 2..n {
            if !n.is_multiple_of(d) || gcd(d, n / d) != 1 {
                continue;
            }
            let a = (0..n).find(|&i| self.element_order(i) == d);
            let b = (0..n).find(|&i| self.element_order(i) == n / d);
            if let (Some(a), Some(b)) = (a, b) {
                let ga = self.subgroup(&[a]).ok()?;
                let gb = self.subgroup(&[b]).ok()?;
                if self.product_set(&ga, &gb).len() == n {
                    return Some((ga, gb));
                }
            }
        }
        self.cyclic_generator()
            .map(|g| (self.subgroup(&[g]).expect("cyclic subgroup"), PermGroup::trivial(self.degree)))
    }
}

pub(crate) fn commutator(a: &Perm, b: &Perm) -> Perm {
    a.inverse().compose(&b.inverse()).compose(a).compose(b)
}

fn separating_base(elements: &[Perm], degree: usize) -> (Vec<usize>, HashMap<Vec<u32>, usize>) {
    let mut base = Vec::new();
    let mut classes = 1;
    for x in 0..degree {
        if classes == elements.len() {
            break;
        }
        let mut trial = base.clone();
        trial.push(x);
        let distinct: std::collections::HashSet<Vec<u32>> =
            elements.iter().map(|e| trial.iter().map(|&b| e.images()[b]).collect()).collect();
        if distinct.len() > classes {
            classes = distinct.len();
            base = trial;
        }
    }
    let index = elements.iter().enumerate().map(|(i, e)| (base.iter().map(|&b| e.images()[b]).collect(), i)).collect();
    (base, index)
}

/// The map `h ↦ σ_h` of a regular group onto its centralizer in `S_n`.
#[derive(Clone, Debug)]
pub struct SigmaMap {
    /// Base point, 0-based.
    pub i0: usize,
    /// `images[j]` is `σ_h` for `h` the element with index `j`.
    pub images: Vec<Perm>,
}

impl SigmaMap {
    pub fn sigma(&self, element: usize) -> &Perm {
        &self.images[element]
    }
}

/// For regular `H` and base point `i0` (0-based), the anti-isomorphism
/// `σ_h(i) = ψ⁻¹(i)(h(i0))` with `ψ(g) = g(i0)`.
pub fn anti_isomorphism_to_centralizer(h: &PermGroup, i0: usize) -> Result<SigmaMap> {
    if !h.is_regular() {
        return Err(Error::NotRegular);
    }
    if i0 >= h.degree() {
        return Err(Error::InvalidArgument(format!("base point {} out of range", i0 + 1)));
    }
    let n = h.degree();
    let mut psi_inv = vec![0usize; n];
    for (j, g) in h.elements().iter().enumerate() {
        psi_inv[g.apply(i0)] = j;
    }
    let images = h
        .elements()
        .iter()
        .map(|x| {
            let target = x.apply(i0);
            let imgs = (0..n).map(|i| h.element(psi_inv[i]).apply(target) as u32).collect();
            Perm::from_images(imgs).expect("σ_h is a bijection")
        })
        .collect();
    Ok(SigmaMap { i0, images })
}

/// `C_{S_n}(G)`: the image of the anti-isomorphism for regular `G` (base
/// point 1), otherwise a sweep over `S_n` for degree at most 8.
pub fn centralizer_in_symmetric(g: &PermGroup) -> Result<PermGroup> {
    if g.is_regular() {
        let sigma = anti_isomorphism_to_centralizer(g, 0)?;
        let gens: Vec<Perm> = g.generators().iter().map(|x| sigma.sigma(g.index_of(x).unwrap()).clone()).collect();
        return PermGroup::closure(gens, g.degree());
    }
    if g.degree() > MAX_BRUTE_FORCE_DEGREE {
        return Err(Error::NotRegular);
    }
    centralizer_brute_force(g, Exec::default())
}

/// Every element of `S_n` commuting with the generators of `g`.
pub fn centralizer_brute_force(g: &PermGroup, exec: Exec) -> Result<PermGroup> {
    let n = g.degree();
    if n > MAX_BRUTE_FORCE_DEGREE {
        return Err(Error::CapExceeded {
            what: "brute-force degree",
            value: n as u64,
            cap: MAX_BRUTE_FORCE_DEGREE as u64,
        });
    }
    if n == 0 {
        return Ok(PermGroup::trivial(0));
    }
    let gens = g.generators();
    let chunks = par::map(exec, (0..n).collect(), |first| {
        let mut found = Vec::new();
        par::for_each_perm_with_first(n, first, |images| {
            let commutes =
                gens.iter().all(|x| (0..n).all(|i| images[x.apply(i)] as usize == x.apply(images[i] as usize)));
            if commutes {
                found.push(Perm::from_images(images.to_vec()).unwrap());
            }
        });
        found
    });
    let all: Vec<Perm> = chunks.into_iter().flatten().collect();
    PermGroup::from_elements(&all, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    fn grp(gens: &[&str], n: usize) -> PermGroup {
        group_closure(&gens.iter().map(|s| p(s, n)).collect::<Vec<_>>(), n).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(grp(&["(1 2 3)"], 3).order(), 3);
        assert_eq!(grp(&["(1 2)", "(1 2 3)"], 3).order(), 6);
        assert_eq!(grp(&["(1 3)(2 4)", "(1 2)(3 4)"], 4).order(), 4);
        assert!(grp(&[], 3).element(0).is_identity());
    }

    #[test]
    fn closure_respects_cap() {
        let err = grp_err(&["(1 2)", "(1 2 3 4 5 6 7 8)"], 8);
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    fn grp_err(gens: &[&str], n: usize) -> Error {
        group_closure(&gens.iter().map(|s| p(s, n)).collect::<Vec<_>>(), n).unwrap_err()
    }

    #[test]
    fn regularity_examples() {
        assert!(grp(&["(1 2 3)"], 3).is_regular());
        assert!(!grp(&["(1 2)", "(1 2 3)"], 3).is_regular());
        assert!(grp(&["(1 2)(3 4)", "(1 3)(2 4)"], 4).is_regular());
        assert!(!grp(&["(1 2)"], 3).is_regular());
        assert!(PermGroup::trivial(1).is_regular());
    }

    #[test]
    fn sigma_is_identity_on_abelian_groups() {
        let g = grp(&["(1 2 3)"], 3);
        let sigma = anti_isomorphism_to_centralizer(&g, 0).unwrap();
        for (i, e) in g.elements().iter().enumerate() {
            assert_eq!(sigma.sigma(i), e);
        }
        let t = PermGroup::trivial(1);
        assert!(anti_isomorphism_to_centralizer(&t, 0).unwrap().sigma(0).is_identity());
        assert_eq!(anti_isomorphism_to_centralizer(&grp(&["(1 2)"], 3), 0).unwrap_err(), Error::NotRegular);
    }

    #[test]
    fn centralizer_examples() {
        let g = grp(&["(1 2 3)"], 3);
        assert_eq!(centralizer_in_symmetric(&g).unwrap(), g);
        let t = PermGroup::trivial(2);
        assert_eq!(centralizer_in_symmetric(&t).unwrap().order(), 2);
        // non-regular, degree 4: C(<(1 2)>) = <(1 2), (3 4)>
        let h = grp(&["(1 2)"], 4);
        assert_eq!(centralizer_in_symmetric(&h).unwrap().order(), 4);
        let big = grp(&["(1 2)"], 9);
        assert_eq!(centralizer_in_symmetric(&big).unwrap_err(), Error::NotRegular);
    }

    #[test]
    fn derived_and_center() {
        let s3 = grp(&["(1 2)", "(1 2 3)"], 3);
        assert_eq!(s3.derived_subgroup().order(), 3);
        assert!(s3.center().is_trivial());
        let v4 = grp(&["(1 2)(3 4)", "(1 3)(2 4)"], 4);
        assert!(v4.derived_subgroup().is_trivial());
        assert_eq!(v4.center(), v4);
        let s4 = grp(&["(1 2)", "(1 2 3 4)"], 4);
        assert_eq!(s4.derived_subgroup().order(), 12);
    }

    #[test]
    fn derived_subgroup_matches_all_commutators() {
        let s4 = grp(&["(1 2)", "(1 2 3 4)"], 4);
        let mut comms = Vec::new();
        for a in s4.elements() {
            for b in s4.elements() {
                comms.push(commutator(a, b));
            }
        }
        let brute = group_closure(&comms, 4).unwrap();
        assert_eq!(brute, s4.derived_subgroup());
    }

    #[test]
    fn coprime_cyclic_decompositions() {
        let c6 = grp(&["(1 2 3 4 5 6)"], 6);
        let (a, b) = c6.find_coprime_cyclic_decomposition().unwrap();
        assert_eq!((a.order(), b.order()), (2, 3));
        let c4 = grp(&["(1 2 3 4)"], 4);
        let (a, b) = c4.find_coprime_cyclic_decomposition().unwrap();
        assert_eq!((a.order(), b.order()), (4, 1));
        let v4 = grp(&["(1 2)(3 4)", "(1 3)(2 4)"], 4);
        assert!(v4.find_coprime_cyclic_decomposition().is_none());
    }

    #[test]
    fn mul_matches_composition() {
        let s4 = grp(&["(1 2)", "(1 2 3 4)"], 4);
        for i in 0..s4.order() {
            for j in 0..s4.order() {
                assert_eq!(s4.element(s4.mul(i, j)), &s4.element(i).compose(s4.element(j)));
            }
            assert!(s4.element(s4.mul(i, s4.inv(i))).is_identity());
        }
    }
}
