use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{gcd, Perm, PermGroup};
use crate::error::{Error, Result};

/// Largest order accepted by [`find_isomorphism`].
pub const MAX_ISOMORPHISM_ORDER: usize = 24;

const EXHAUSTIVE_ASSOCIATIVITY_ORDER: usize = 64;
const SAMPLED_TRIPLES: usize = 10_000;

/// Multiplication table of an abstract finite group on `{0..m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<u32>,
}

impl CayleyTable {
    /// Validates the Latin square property, a two-sided identity and
    /// associativity (exhaustive up to order 64, sampled above).
    pub fn new(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidTable(format!("expected {}x{} entries", order, order)));
        }
        for r in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for c in 0..order {
                let x = table[r * order + c] as usize;
                let y = table[c * order + r] as usize;
                if x >= order
                    || y >= order
                    || std::mem::replace(&mut row[x], true)
                    || std::mem::replace(&mut col[y], true)
                {
                    return Err(Error::InvalidTable(format!("row or column {r} is not a permutation")));
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        let mul = |a: usize, b: usize| table[a * order + b] as usize;
        let assoc = |a, b, c| mul(mul(a, b), c) == mul(a, mul(b, c));
        if order <= EXHAUSTIVE_ASSOCIATIVITY_ORDER {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidTable(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order));
                if !assoc(a, b, c) {
                    return Err(Error::InvalidTable(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
        let inverses = (0..order).map(|a| (0..order).find(|&b| mul(a, b) == identity).unwrap() as u32).collect();
        Ok(CayleyTable { order, table, identity, inverses })
    }

    /// Builds a table from a closed product rule on `0..order`.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(f(a, b) as u32);
            }
        }
        Self::new(order, table)
    }

    /// Table of an enumerated permutation group in its element order.
    pub fn from_group(g: &PermGroup) -> Self {
        let m = g.order();
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                table.push(g.mul(a, b) as u32);
            }
        }
        let inverses = (0..m).map(|a| g.inv(a) as u32).collect();
        CayleyTable { order: m, table, identity: 0, inverses }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, a| super::lcm(acc, self.element_order(a)))
    }

    /// Greedy generating set, smallest indices first.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        for a in 0..self.order {
            if span[a] {
                continue;
            }
            gens.push(a);
            span = self.closure(&gens);
        }
        gens
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !span[y] {
                    span[y] = true;
                    stack.push(y);
                }
            }
        }
        span
    }

    /// Order of the commutator subgroup, by closure of all commutators.
    pub fn derived_order(&self) -> usize {
        let mut comms = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms).iter().filter(|&&x| x).count()
    }

    pub fn center_order(&self) -> usize {
        (0..self.order).filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a))).count()
    }
}

/// A left-regular embedding of an abstract group.
#[derive(Clone, Debug)]
pub struct RegularRep {
    pub group: PermGroup,
    /// `to_group[a]` is the index in `group` of the permutation `x ↦ a·x`.
    pub to_group: Vec<usize>,
}

/// Embeds `t` into `S_|t|` by `a ↦ (x ↦ a·x)`, where table element `x` is
/// point `x + 1`.
pub fn regular_representation(t: &CayleyTable) -> Result<RegularRep> {
    let m = t.order();
    if m > super::MAX_GROUP_ORDER {
        return Err(Error::CapExceeded { what: "group order", value: m as u64, cap: super::MAX_GROUP_ORDER as u64 });
    }
    let lambda =
        |a: usize| Perm::from_images((0..m).map(|x| t.mul(a, x) as u32).collect()).expect("row of a Latin square");
    let gens = t.generators().into_iter().map(lambda).collect();
    let group = PermGroup::closure(gens, m)?;
    let to_group = (0..m).map(|a| group.index_of(&lambda(a)).expect("closure contains every translation")).collect();
    Ok(RegularRep { group, to_group })
}

/// `G/N` on left cosets.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub table: CayleyTable,
    /// Coset index of each element of `G`.
    pub projection: Vec<usize>,
    /// Elements of each coset, ascending.
    pub cosets: Vec<Vec<usize>>,
}

/// Cosets are numbered by their least element index, so the identity coset is 0.
pub fn quotient(g: &PermGroup, n: &PermGroup) -> Result<Quotient> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("N is not a subgroup of G".into()));
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("N is not normal in G".into()));
    }
    let m = g.order();
    let mut projection = vec![usize::MAX; m];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..m {
        if projection[x] != usize::MAX {
            continue;
        }
        let c = cosets.len();
        let mut members: Vec<usize> =
            n.elements().iter().map(|y| g.index_of(&g.element(x).compose(y)).expect("coset inside G")).collect();
        members.sort_unstable();
        for &y in &members {
            projection[y] = c;
        }
        cosets.push(members);
    }
    let k = cosets.len();
    let table = CayleyTable::from_fn(k, |a, b| projection[g.mul(cosets[a][0], cosets[b][0])])?;
    Ok(Quotient { table, projection, cosets })
}

/// A multiplication-preserving bijection `t1 → t2`, by backtracking over
/// generator images.
pub fn find_isomorphism(t1: &CayleyTable, t2: &CayleyTable) -> Result<Option<Vec<usize>>> {
    if t1.order() != t2.order() {
        return Err(Error::InvalidArgument(format!("orders differ: {} vs {}", t1.order(), t2.order())));
    }
    if t1.order() > MAX_ISOMORPHISM_ORDER {
        return Err(Error::CapExceeded {
            what: "isomorphism search order",
            value: t1.order() as u64,
            cap: MAX_ISOMORPHISM_ORDER as u64,
        });
    }
    let gens = t1.generators();
    let orders2: Vec<usize> = (0..t2.order()).map(|a| t2.element_order(a)).collect();
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&g| (0..t2.order()).filter(|&b| orders2[b] == t1.element_order(g)).collect()).collect();
    let mut chosen = Vec::with_capacity(gens.len());
    Ok(search_images(t1, t2, &gens, &candidates, &mut chosen))
}

fn search_images(
    t1: &CayleyTable,
    t2: &CayleyTable,
    gens: &[usize],
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == gens.len() {
        return extend_to_isomorphism(t1, t2, gens, chosen);
    }
    for &c in &candidates[chosen.len()] {
        chosen.push(c);
        if let Some(map) = search_images(t1, t2, gens, candidates, chosen) {
            return Some(map);
        }
        chosen.pop();
    }
    None
}

fn extend_to_isomorphism(t1: &CayleyTable, t2: &CayleyTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let m = t1.order();
    let mut map = vec![usize::MAX; m];
    map[t1.identity()] = t2.identity();
    let mut stack = vec![t1.identity()];
    while let Some(x) = stack.pop() {
        for (&g, &h) in gens.iter().zip(images) {
            let (y, fy) = (t1.mul(x, g), t2.mul(map[x], h));
            if map[y] == usize::MAX {
                map[y] = fy;
                stack.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    let mut hit = vec![false; m];
    for &y in &map {
        if y == usize::MAX || std::mem::replace(&mut hit[y], true) {
            return None;
        }
    }
    let hom = (0..m).all(|a| (0..m).all(|b| map[t1.mul(a, b)] == t2.mul(map[a], map[b])));
    hom.then_some(map)
}

/// `N` is normal, nontrivial, `gcd(|N|, [G:N]) = 1` and `G/N` is cyclic.
pub fn is_hall_cocyclic(g: &PermGroup, n: &PermGroup) -> Result<bool> {
    let q = quotient(g, n)?;
    if n.is_trivial() {
        return Ok(false);
    }
    Ok(gcd(n.order(), q.table.order()) == 1 && q.table.is_cyclic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::group_closure;

    fn cyclic(m: usize) -> CayleyTable {
        CayleyTable::from_fn(m, |a, b| (a + b) % m).unwrap()
    }

    fn product(a: &CayleyTable, b: &CayleyTable) -> CayleyTable {
        let m = b.order();
        CayleyTable::from_fn(a.order() * m, |x, y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m)).unwrap()
    }

    fn s3() -> PermGroup {
        let gens = [Perm::parse("(1 2)", 3).unwrap(), Perm::parse("(1 2 3)", 3).unwrap()];
        group_closure(&gens, 3).unwrap()
    }

    #[test]
    fn table_validation() {
        assert!(CayleyTable::new(2, vec![0, 1, 1, 1]).is_err());
        assert!(CayleyTable::new(2, vec![1, 0, 0, 1]).is_ok());
        // Latin square with identity but not associative (order 5 loop)
        let loop5 = vec![0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0];
        assert!(matches!(CayleyTable::new(5, loop5), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn regular_representations() {
        let r2 = regular_representation(&cyclic(2)).unwrap();
        assert_eq!(r2.group.generators(), &[Perm::parse("(1 2)", 2).unwrap()]);
        let r6 = regular_representation(&cyclic(6)).unwrap();
        assert_eq!(r6.group.element(r6.to_group[1]).to_string(), "(1 2 3 4 5 6)");
        assert!(r6.group.is_regular());
        let rs3 = regular_representation(&CayleyTable::from_group(&s3())).unwrap();
        assert!(rs3.group.is_regular());
        assert_eq!(rs3.group.order(), 6);
    }

    #[test]
    fn quotient_examples() {
        let g = s3();
        let q = quotient(&g, &g).unwrap();
        assert_eq!(q.table.order(), 1);
        let d = g.derived_subgroup();
        let q = quotient(&g, &d).unwrap();
        assert_eq!(q.table.order(), 2);
        assert!(q.table.is_cyclic());
        let not_normal = group_closure(&[Perm::parse("(1 2)", 3).unwrap()], 3).unwrap();
        assert!(matches!(quotient(&g, &not_normal), Err(Error::NotNormal(_))));
        let outside = group_closure(&[Perm::parse("(1 2)", 3).unwrap()], 3).unwrap();
        let c3 = group_closure(&[Perm::parse("(1 2 3)", 3).unwrap()], 3).unwrap();
        assert!(matches!(quotient(&c3, &outside), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn isomorphism_examples() {
        let c6 = cyclic(6);
        let c2c3 = product(&cyclic(2), &cyclic(3));
        let map = find_isomorphism(&c6, &c2c3).unwrap().unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(map[c6.mul(a, b)], c2c3.mul(map[a], map[b]));
            }
        }
        let v4 = product(&cyclic(2), &cyclic(2));
        assert_eq!(find_isomorphism(&cyclic(4), &v4).unwrap(), None);
        let id = find_isomorphism(&v4, &v4).unwrap().unwrap();
        assert_eq!(id.len(), 4);
        assert!(find_isomorphism(&cyclic(4), &cyclic(5)).is_err());
        assert!(find_isomorphism(&cyclic(25), &cyclic(25)).is_err());
    }

    #[test]
    fn hall_cocyclic_examples() {
        let g = regular_representation(&CayleyTable::from_group(&s3())).unwrap().group;
        assert!(is_hall_cocyclic(&g, &g.derived_subgroup()).unwrap());
        let c6 = regular_representation(&cyclic(6)).unwrap().group;
        let c3 = c6.subgroup(&[c6.index_of(&c6.generators()[0].pow(2)).unwrap()]).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(is_hall_cocyclic(&c6, &c3).unwrap());
    }
}
