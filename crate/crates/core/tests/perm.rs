mod common;

use common::{commutator_subgroup, small_groups, symmetric};
use groupcode::constructions::GroupSpec;
use groupcode::perm::{
    anti_isomorphism_to_centralizer, centralizer_brute_force, centralizer_in_symmetric, quotient,
    regular_representation, Perm, PermGroup,
};
use groupcode::Exec;
use proptest::prelude::*;

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn composition_is_a_group_law((a, b, c) in (1usize..=9).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n), perm_strategy(n)))) {
        let n = a.degree();
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        for i in 0..n {
            prop_assert_eq!(a.compose(&b).apply(i), a.apply(b.apply(i)));
        }
        prop_assert_eq!(a.pow(a.order()), Perm::identity(n));
        prop_assert_eq!(Perm::parse(&a.to_string(), n).unwrap(), a.clone());
        prop_assert_eq!(Perm::parse(&a.to_one_line(), n).unwrap(), a);
    }

    #[test]
    fn regular_representations_are_regular(spec in prop::sample::select(vec![
        "cyclic:1", "cyclic:9", "dihedral:5", "dihedral:6", "gpqm:2,3", "gpqm:3,7", "gpqm:2,5,4",
        "product:cyclic:2xdihedral:3", "product:cyclic:3xcyclic:3xcyclic:2", "prescribed:4,3", "prescribed:3,7",
    ])) {
        let table = spec.parse::<GroupSpec>().unwrap().table().unwrap();
        let rep = regular_representation(&table).unwrap();
        prop_assert!(rep.group.is_regular());
        prop_assert_eq!(rep.group.order(), table.order());
        for a in 0..table.order() {
            for b in 0..table.order() {
                prop_assert_eq!(rep.group.mul(rep.to_group[a], rep.to_group[b]), rep.to_group[table.mul(a, b)]);
            }
        }
    }
}

#[test]
fn anti_isomorphism_onto_the_centralizer() {
    for (name, h) in small_groups().into_iter().filter(|(_, g)| g.is_regular()) {
        let n = h.degree();
        let centralizer = centralizer_brute_force(&h, Exec::Sequential).unwrap();
        for i0 in 0..n {
            let sigma = anti_isomorphism_to_centralizer(&h, i0).unwrap();
            for g in 0..n {
                for k in 0..n {
                    let gk = h.mul(g, k);
                    assert_eq!(*sigma.sigma(gk), sigma.sigma(k).compose(sigma.sigma(g)), "{name}: σ_gh = σ_h σ_g");
                }
                assert!(h.elements().iter().all(|x| x.commutes_with(sigma.sigma(g))), "{name}");
            }
            let mut images = sigma.images.clone();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), h.order(), "{name}: σ injective");
            assert!(images.iter().all(|p| centralizer.contains(p)), "{name}");
            assert_eq!(centralizer.order(), h.order(), "{name}");
            for z in h.center().elements() {
                assert_eq!(sigma.sigma(h.index_of(z).unwrap()), z, "{name}: σ fixes the centre");
            }
        }
    }
}

#[test]
fn centralizers_agree_with_the_sweep() {
    for (name, g) in small_groups() {
        let via_sigma = centralizer_in_symmetric(&g).unwrap();
        let swept: Vec<&Perm> = symmetric(g.degree())
            .iter()
            .filter(|p| g.generators().iter().all(|x| x.commutes_with(p)))
            .map(|p| via_sigma.index_of(p).map(|i| via_sigma.element(i)).expect("sweep element in centralizer"))
            .collect();
        assert_eq!(swept.len(), via_sigma.order(), "{name}");
        for mode in [Exec::Sequential, Exec::Parallel] {
            let brute = centralizer_brute_force(&g, mode).unwrap();
            assert_eq!(brute.order(), via_sigma.order(), "{name}");
            assert!(brute.elements().iter().all(|p| via_sigma.contains(p)), "{name}");
        }
    }
}

fn normal_subgroups(g: &PermGroup) -> Vec<PermGroup> {
    let mut out = vec![PermGroup::trivial(g.degree()), g.derived_subgroup(), g.center()];
    for i in 0..g.order() {
        let c = g.subgroup(&[i]).unwrap();
        if c.is_normal_in(g) {
            out.push(c);
        }
    }
    out.push(g.subgroup(&(0..g.order()).collect::<Vec<_>>()).unwrap());
    out
}

#[test]
fn quotients_are_surjective_homomorphisms() {
    for (name, g) in small_groups() {
        for n in normal_subgroups(&g) {
            let q = quotient(&g, &n).unwrap();
            assert_eq!(q.table.order() * n.order(), g.order(), "{name}");
            let mut hit = vec![false; q.table.order()];
            for x in 0..g.order() {
                hit[q.projection[x]] = true;
                assert_eq!(q.projection[x] == 0, n.contains(g.element(x)), "{name}: kernel is N");
                for y in 0..g.order() {
                    assert_eq!(q.projection[g.mul(x, y)], q.table.mul(q.projection[x], q.projection[y]), "{name}");
                }
            }
            assert!(hit.iter().all(|&h| h), "{name}: surjective");
        }
    }
}

#[test]
fn derived_subgroups_are_normal_with_abelian_quotient() {
    for (name, g) in small_groups() {
        let d = g.derived_subgroup();
        let mut oracle = commutator_subgroup(&g);
        oracle.sort();
        let mut got = d.elements().to_vec();
        got.sort();
        assert_eq!(got, oracle, "{name}");
        assert!(d.is_normal_in(&g), "{name}");
        assert!(quotient(&g, &d).unwrap().table.is_abelian(), "{name}");
    }
}

#[test]
fn quotients_by_non_normal_subgroups_fail() {
    let s3 = common::regular(&groupcode::constructions::build_dihedral(3).unwrap());
    let involution = (0..6).find(|&i| s3.element_order(i) == 2).unwrap();
    assert!(quotient(&s3, &s3.subgroup(&[involution]).unwrap()).is_err());
}
