use super::*;
use crate::constructions::{build_dihedral, build_gpqm, repsum_abelian_generators};

fn f2() -> Arc<Field> {
    Field::parse("2").unwrap()
}

fn regular(t: &CayleyTable) -> Arc<PermGroup> {
    Arc::new(regular_representation(t).unwrap().group)
}

fn s3() -> Arc<PermGroup> {
    regular(&build_dihedral(3).unwrap())
}

/// The code of `F_2[G]·(G')_Σ` under `phi`.
fn derived_sum_code(phi: &CoordBijection) -> LinearCode {
    let g = phi.group();
    let alg = GroupAlgebra::new(Arc::clone(g), f2());
    let sum = alg.subgroup_sum(&g.derived_subgroup()).unwrap();
    let ideal = alg.ideal_generated(&[sum], IdealKind::TwoSided);
    algebra_to_code(&ideal, phi, &alg).unwrap()
}

fn cyclic_part(g: &PermGroup, order: usize) -> PermGroup {
    let x = (0..g.order()).find(|&i| g.element_order(i) == order).unwrap();
    g.subgroup(&[x]).unwrap()
}

fn assert_replays(w: &Witness) {
    let r = replay(w);
    assert!(r.all_hold(), "{}", r);
    assert_eq!(Witness::from_json(&w.to_json()).unwrap(), *w);
}

#[test]
fn left_group_codes() {
    let g = s3();
    let w = certify_left_group_code(&LinearCode::full(f2(), 6), &g).unwrap();
    assert_eq!(w.claim("regular(G)"), Some(true));
    assert_replays(&w);

    let not_regular = PermGroup::closure(vec![Perm::parse("(1 2)", 3).unwrap()], 3).unwrap();
    let err = certify_left_group_code(&LinearCode::full(f2(), 3), &not_regular).unwrap_err();
    assert!(matches!(err, CertifyError::Verification { .. }));
    assert!(err.to_string().contains("not a regular"));
    assert_eq!(err.report().unwrap().claim("regular(G)"), Some(false));
}

#[test]
fn two_sided_group_codes() {
    let g = s3();
    let phi = CoordBijection::regular(Arc::clone(&g), 0).unwrap();
    let c = derived_sum_code(&phi);
    assert_eq!(c.dim(), 2);
    assert_replays(&certify_group_code(&c, &g).unwrap());
    assert_replays(&certify_group_code(&LinearCode::full(f2(), 6), &g).unwrap());

    let alg = GroupAlgebra::new(Arc::clone(&g), f2());
    let one_sided = (1u32..64)
        .map(|bits| (0..6).map(|j| (bits >> j) & 1).collect::<Vec<u32>>())
        .map(|v| alg.ideal_generated(&[alg.element(v).unwrap()], IdealKind::Left))
        .find(|i| alg.classify(&i.basis) == IdealKind::Left)
        .expect("F_2[S_3] has a left ideal that is not two-sided");
    let c = algebra_to_code(&one_sided, &phi, &alg).unwrap();
    assert_replays(&certify_left_group_code(&c, &g).unwrap());
    let err = certify_group_code(&c, &g).unwrap_err();
    assert!(err.to_string().contains("centralizer"), "{err}");
    assert!(replay(err.report().unwrap()).agrees());
}

#[test]
fn abelian_and_cyclic_decompositions() {
    let g = s3();
    let phi = CoordBijection::regular(Arc::clone(&g), 0).unwrap();
    let c = derived_sum_code(&phi);
    let (three, two) = (cyclic_part(&g, 3), cyclic_part(&g, 2));

    let w = abelianize_code(&c, &g, &three, &two, 0).unwrap();
    assert_eq!(w.claim("order(K,6)"), Some(true));
    assert_replays(&w);
    let w = cyclicize_code(&c, &g, &two, &three, 0).unwrap();
    assert_eq!(w.claim("element_order(K,k,6)"), Some(true));
    assert_replays(&w);

    let err = abelianize_code(&c, &g, &three, &three, 0).unwrap_err();
    assert!(matches!(err, CertifyError::Precondition { .. }));

    let c6 = regular(&build_cyclic(6).unwrap());
    let full = LinearCode::full(f2(), 6);
    let w = abelianize_code(&full, &c6, &c6, &PermGroup::trivial(6), 2).unwrap();
    assert_replays(&w);

    let (p1, p2, klein) = repsum_abelian_generators(2, 2).unwrap();
    let a = PermGroup::closure(vec![p1], 4).unwrap();
    let b = PermGroup::closure(vec![p2], 4).unwrap();
    let err = cyclicize_code(&LinearCode::full(f2(), 4), &klein, &a, &b, 0).unwrap_err();
    assert!(err.to_string().contains("coprime"), "{err}");
}

#[test]
fn divisibility() {
    let g = s3();
    let phi = CoordBijection::identity(Arc::clone(&g));
    let c = derived_sum_code(&phi);
    let w = certify_divisibility(&c, &phi, Side::Left).unwrap();
    assert_eq!(w.params.t, Some(3));
    assert_eq!(w.artifacts.partitions["P"].len(), 2);
    assert_replays(&w);
    assert_replays(&certify_divisibility(&c, &phi, Side::Right).unwrap());

    let c6 = regular(&build_cyclic(6).unwrap());
    let err = certify_divisibility(&LinearCode::full(f2(), 6), &CoordBijection::identity(c6), Side::Left).unwrap_err();
    assert!(err.to_string().contains("G' trivial"), "{err}");

    let err = certify_divisibility(&LinearCode::full(f2(), 6), &phi, Side::Left).unwrap_err();
    assert!(err.to_string().contains("does not act trivially"), "{err}");
}

#[test]
fn embeddings() {
    let g = s3();
    let phi = CoordBijection::identity(Arc::clone(&g));
    let e = rep_sum_embedding(&derived_sum_code(&phi), &phi, Side::Left).unwrap();
    assert_eq!((e.s, e.t), (2, 3));
    assert_replays(&e.witness);

    let g21 = regular(&build_gpqm(3, 7, 2).unwrap());
    let phi = CoordBijection::regular(Arc::clone(&g21), 0).unwrap();
    let e = rep_sum_embedding(&derived_sum_code(&phi), &phi, Side::Left).unwrap();
    assert_eq!((e.s, e.t), (3, 7));
    assert_eq!(e.pi.degree(), 21);
    assert_replays(&e.witness);

    let c4 = regular(&build_cyclic(4).unwrap());
    let err = rep_sum_embedding(&LinearCode::full(f2(), 4), &CoordBijection::identity(c4), Side::Left).unwrap_err();
    assert!(err.to_string().contains("G' trivial"), "{err}");
}

#[test]
fn ideal_transfers() {
    let g = s3();
    let alg = GroupAlgebra::new(Arc::clone(&g), f2());
    let d = g.derived_subgroup();
    let ideal = alg.ideal_generated(&[alg.subgroup_sum(&d).unwrap()], IdealKind::TwoSided);

    let trivial = PermGroup::trivial(6);
    let id: Vec<usize> = (0..6).collect();
    let t = transfer_ideal(&alg, &ideal, &trivial, &g, &trivial, &id, Side::Left).unwrap();
    assert_eq!(t.ideal, ideal);
    assert_eq!(t.beta, id);

    let c6 = regular(&build_cyclic(6).unwrap());
    let k = cyclic_part(&c6, 3);
    let t = transfer_ideal(&alg, &ideal, &d, &c6, &k, &[0, 1], Side::Left).unwrap();
    assert_eq!(t.ideal.dim(), 2);
    assert_eq!(t.ideal.kind, IdealKind::TwoSided);
    assert_replays(&t.witness);

    let k2 = cyclic_part(&c6, 2);
    let err = transfer_ideal(&alg, &ideal, &d, &c6, &k2, &[0, 1], Side::Left).unwrap_err();
    assert!(matches!(err, CertifyError::Precondition { .. }));
    let err = transfer_ideal(&alg, &ideal, &d, &c6, &k, &[0, 0], Side::Left).unwrap_err();
    assert!(err.to_string().contains("iso"), "{err}");
}

#[test]
fn abelian_witnesses() {
    let g = s3();
    let phi = CoordBijection::identity(Arc::clone(&g));
    let w = trivial_action_to_abelian_witness(&derived_sum_code(&phi), &phi, Side::Left).unwrap();
    assert_eq!(w.claim("abelian(H)"), Some(true));
    assert_replays(&w);

    let c6 = regular(&build_cyclic(6).unwrap());
    let w = trivial_action_to_abelian_witness(&LinearCode::full(f2(), 6), &CoordBijection::identity(c6), Side::Left)
        .unwrap();
    assert_replays(&w);

    let err = trivial_action_to_abelian_witness(&LinearCode::full(f2(), 6), &phi, Side::Right).unwrap_err();
    assert!(err.to_string().contains("does not act trivially"), "{err}");
    let report = err.report().unwrap();
    assert!(report.claims.iter().any(|c| c.name.starts_with("moves(") && c.holds));
    let r = replay(report);
    assert!(r.agrees() && !r.all_hold());
}

#[test]
fn hall_witnesses() {
    let g = s3();
    let phi = CoordBijection::regular(Arc::clone(&g), 0).unwrap();
    let w = hall_cocyclic_to_cyclic(&derived_sum_code(&phi), &phi, Side::Left).unwrap();
    assert_eq!(w.claim("element_order(H,h,6)"), Some(true));
    assert_replays(&w);

    let d8 = regular(&build_dihedral(4).unwrap());
    let phi8 = CoordBijection::regular(Arc::clone(&d8), 0).unwrap();
    let err = hall_cocyclic_to_cyclic(&derived_sum_code(&phi8), &phi8, Side::Left).unwrap_err();
    assert!(err.to_string().contains("not Hall"), "{err}");

    let c4 = regular(&build_cyclic(4).unwrap());
    let w = hall_cocyclic_to_cyclic(&LinearCode::full(f2(), 4), &CoordBijection::identity(c4), Side::Left).unwrap();
    assert_eq!(w.params.notes.len(), 2);
    assert_replays(&w);
}

#[test]
fn rep_sums_from_derived_subgroups() {
    let r = repsum_from_derived(&build_dihedral(3).unwrap(), f2()).unwrap();
    assert_eq!(r.code, rep_sum_code(2, 3, f2()).unwrap());
    assert_eq!(r.witness.claim("ideal(I,two-sided)"), Some(true));
    assert_replays(&r.witness);

    let r = repsum_from_derived(&build_gpqm(3, 7, 2).unwrap(), f2()).unwrap();
    assert_eq!(r.code.len(), 21);
    assert_replays(&r.witness);

    let r = repsum_from_derived(&build_cyclic(4).unwrap(), f2()).unwrap();
    assert_eq!(r.code, LinearCode::full(f2(), 4));
    assert_replays(&r.witness);
}

#[test]
fn witnesses_are_deterministic() {
    let a = repsum_from_derived(&build_dihedral(3).unwrap(), f2()).unwrap().witness.to_json();
    let b = repsum_from_derived(&build_dihedral(3).unwrap(), f2()).unwrap().witness.to_json();
    assert_eq!(a, b);
}
