//! Helpers shared by the integration tests. Everything here is computed
//! directly from definitions, without the library's search routines.
#![allow(dead_code)]

use std::sync::Arc;

use groupcode::constructions::{build_cyclic, build_dihedral, direct_product};
use groupcode::ffield::Field;
use groupcode::perm::{regular_representation, CayleyTable, Perm, PermGroup};

pub fn field(spec: &str) -> Arc<Field> {
    Field::parse(spec).unwrap()
}

/// All of `S_n` in lexicographic order of one-line notation.
pub fn symmetric(n: usize) -> Vec<Perm> {
    let mut cur: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![Perm::from_images(cur.clone()).unwrap()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm::from_images(cur.clone()).unwrap());
    }
}

pub fn regular(t: &CayleyTable) -> Arc<PermGroup> {
    Arc::new(regular_representation(t).unwrap().group)
}

/// Every group of order at most 7 and a few of order 8, in their regular
/// representations, plus `S_4` on 4 points.
pub fn small_groups() -> Vec<(String, Arc<PermGroup>)> {
    let mut out: Vec<(String, Arc<PermGroup>)> =
        (1..=8).map(|m| (format!("C{m}"), regular(&build_cyclic(m).unwrap()))).collect();
    let c2 = build_cyclic(2).unwrap();
    out.push(("C2xC2".into(), regular(&direct_product(&c2, &c2).unwrap())));
    out.push(("C2xC4".into(), regular(&direct_product(&c2, &build_cyclic(4).unwrap()).unwrap())));
    out.push(("S3".into(), regular(&build_dihedral(3).unwrap())));
    out.push(("D8".into(), regular(&build_dihedral(4).unwrap())));
    let s4 = vec![Perm::parse("(1 2)", 4).unwrap(), Perm::parse("(1 2 3 4)", 4).unwrap()];
    out.push(("S4".into(), Arc::new(PermGroup::closure(s4, 4).unwrap())));
    out
}

/// `⟨[x, y] : x, y ∈ G⟩` by closing the set of commutators under products.
pub fn commutator_subgroup(g: &PermGroup) -> Vec<Perm> {
    let mut set: Vec<Perm> = vec![Perm::identity(g.degree())];
    for x in g.elements() {
        for y in g.elements() {
            let c = x.inverse().compose(&y.inverse()).compose(x).compose(y);
            if !set.contains(&c) {
                set.push(c);
            }
        }
    }
    let mut i = 0;
    while i < set.len() {
        for j in 0..set.len() {
            let p = set[i].compose(&set[j]);
            if !set.contains(&p) {
                set.push(p);
            }
        }
        i += 1;
    }
    set
}

/// Every vector of `F_q^n` orthogonal to all of `rows`.
pub fn orthogonal_vectors(f: &Field, n: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let q = f.order();
    let total = (q as usize).pow(n as u32);
    (0..total)
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = (x % q as usize) as u32;
                    x /= q as usize;
                    d
                })
                .collect::<Vec<u32>>()
        })
        .filter(|v| rows.iter().all(|r| r.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))) == 0))
        .collect()
}

pub fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&c| c != 0).count()
}
