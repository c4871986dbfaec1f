use std::sync::Arc;

use catmate_core::adjunction::{verify_adjunction, Adjunction};
use catmate_core::cat::{Budget, FinCat};
use catmate_core::derived::*;
use catmate_core::enumerate::{enumerate_functors, enumerate_nats};
use catmate_core::error::CatError;
use catmate_core::fixtures;
use catmate_core::functor::{Functor, NatTrans};
use catmate_core::localization::{localize, LocalizationResult, RelCat};
use catmate_core::mates::MateSquare;

fn bud() -> Budget {
    Budget::default()
}

fn loc_of(rc: &RelCat) -> Arc<LocalizationResult> {
    Arc::new(localize(rc, 16))
}

fn arrow_ids() -> RelCat {
    RelCat::minimal(fixtures::arrow())
}

/// `id: RelArrow -> Arrow` left adjoint to `id`; derived to `const 0 -| H`.
fn collapse() -> DerivedAdjunction {
    let ret = validate_retraction(fixtures::rel_arrow_left_retraction()).unwrap();
    let a = fixtures::arrow();
    let ld = loc_of(&arrow_ids());
    let id = Functor::identity(&a);
    let cf = derive_via_retraction(&id, &ret, Some(&ld)).unwrap();
    let cg = homotopical_cert(&id, &ld, &ret.loc, false).unwrap();
    derived_adjunction(&Adjunction::identity(&a), &cf, &cg, bud()).unwrap()
}

/// `id: Arrow -> RelArrow` left adjoint to `id`; derived to `H -| const 1`.
fn expand() -> DerivedAdjunction {
    let ret = validate_retraction(fixtures::rel_arrow_right_retraction()).unwrap();
    let a = fixtures::arrow();
    let lc = loc_of(&arrow_ids());
    let id = Functor::identity(&a);
    let cf = homotopical_cert(&id, &lc, &ret.loc, true).unwrap();
    let cg = derive_via_retraction(&id, &ret, Some(&lc)).unwrap();
    derived_adjunction(&Adjunction::identity(&a), &cf, &cg, bud()).unwrap()
}

#[test]
fn rel_arrow_cert_has_exactly_one_factorization_per_candidate() {
    let ret = validate_retraction(fixtures::rel_arrow_left_retraction()).unwrap();
    let a = fixtures::arrow();
    let cert = derive_via_retraction(&Functor::identity(&a), &ret, None).unwrap();
    // oracle: functors WalkingIso -> Arrow invert everything, so they are constant
    let xs = enumerate_functors(&cert.derived.src, &a, bud()).unwrap();
    assert_eq!(xs.len(), 2);
    for x in &xs {
        let up = enumerate_nats(x, &cert.derived, bud()).unwrap();
        let down = enumerate_nats(&x.after(cert.h()).unwrap(), &Functor::identity(&a), bud()).unwrap();
        assert_eq!(up.len(), down.len());
    }
    let rep = verify_kan(&cert, None, bud()).unwrap();
    assert!(rep.universal && rep.passed());
    assert_eq!(rep.candidates, 2);
}

#[test]
fn every_single_component_corruption_is_detected() {
    let ret = validate_retraction(fixtures::rel_arrow_left_retraction()).unwrap();
    let a = fixtures::arrow();
    let cert = derive_via_retraction(&Functor::identity(&a), &ret, None).unwrap();
    let mut tried = 0;
    for c in a.objects() {
        for m in a.morphisms().filter(|&m| m != cert.cell.comp[c]) {
            let mut bad = cert.clone();
            bad.cell.comp[c] = m;
            let rep = verify_kan(&bad, None, bud()).unwrap();
            assert!(!rep.universal, "component {c} -> {m} went unnoticed");
            assert!(rep.witness.is_some());
            tried += 1;
        }
    }
    assert_eq!(tried, 4);
}

#[test]
fn kan_property_rejects_a_non_universal_natural_cell() {
    // const 0 with the identity at 0 and i at 1 is the right answer; using
    // const 0 but the cell of the identity functor on the trivial retraction is not
    let rc = RelCat::minimal(fixtures::arrow());
    let a = rc.cat.clone();
    let l = loc_of(&rc);
    let c0 = Functor::constant(&a, &a, 0);
    let id = Functor::identity(&a);
    let cell = fixtures::poset_nat(&c0, &id).unwrap();
    let cert = DerivedFunctorCert {
        base: id,
        derived: c0,
        cell,
        kind: DerivedKind::Left,
        absolute: Absoluteness::Unchecked,
        src: l,
        tgt: None,
    };
    let rep = verify_kan(&cert, None, bud()).unwrap();
    assert!(!rep.universal);
    assert!(rep.witness.unwrap().contains("does not factor"));
}

#[test]
fn right_retraction_derives_to_constant_one() {
    let ret = validate_retraction(fixtures::rel_arrow_right_retraction()).unwrap();
    let a = fixtures::arrow();
    let cert = derive_via_retraction(&Functor::identity(&a), &ret, None).unwrap();
    assert_eq!(cert.kind, DerivedKind::Right);
    assert_eq!(cert.derived.obj, vec![1, 1]);
    assert!(verify_kan(&cert, None, bud()).unwrap().passed());
    assert!(ret.equivalence_check().unwrap());
}

#[test]
fn derived_transformations_compose() {
    let ret = validate_retraction(fixtures::rel_arrow_left_retraction()).unwrap();
    let a = fixtures::arrow();
    let (c0, id, c1) = (Functor::constant(&a, &a, 0), Functor::identity(&a), Functor::constant(&a, &a, 1));
    let certs: Vec<DerivedFunctorCert> =
        [&c0, &id, &c1].iter().map(|f| derive_via_retraction(f, &ret, None).unwrap()).collect();
    let sigma = fixtures::poset_nat(&c0, &id).unwrap();
    let tau = fixtures::poset_nat(&id, &c1).unwrap();
    let ls = derived_nat(&sigma, &certs[0], &certs[1]).unwrap();
    let lt = derived_nat(&tau, &certs[1], &certs[2]).unwrap();
    let lts = derived_nat(&tau.after(&sigma).unwrap(), &certs[0], &certs[2]).unwrap();
    assert_eq!(lts, lt.after(&ls).unwrap());
    for (k, c) in certs.iter().enumerate() {
        assert!(derived_nat(&NatTrans::identity(&[&c0, &id, &c1][k].clone()), c, c).unwrap().is_identity());
    }
}

#[test]
fn whiskering_commutes_with_deriving() {
    let ret = validate_retraction(fixtures::rel_arrow_left_retraction()).unwrap();
    let a = fixtures::arrow();
    let ch = fixtures::chain2();
    let y = Functor::from_object_map(&a, &ch, vec![0, 2]).unwrap();
    let (c0, id) = (Functor::constant(&a, &a, 0), Functor::identity(&a));
    let sigma = fixtures::poset_nat(&c0, &id).unwrap();
    let (ca, cb) = (derive_via_retraction(&c0, &ret, None).unwrap(), derive_via_retraction(&id, &ret, None).unwrap());
    let (ya, yb) = (ca.whisker(&y).unwrap(), cb.whisker(&y).unwrap());
    assert!(verify_kan(&yb, Some(&[]), bud()).unwrap().universal);
    let lhs = derived_nat(&NatTrans::whisker_left(&y, &sigma).unwrap(), &ya, &yb).unwrap();
    let rhs = NatTrans::whisker_left(&y, &derived_nat(&sigma, &ca, &cb).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn derived_adjunctions_solve_uniquely() {
    for d in [collapse(), expand()] {
        assert_eq!((d.unit_solutions, d.counit_solutions), (1, 1));
        assert!(d.adjunction.hom_bijective());
        assert!(matches!(d.left.absolute, Absoluteness::Certified { .. }));
        assert!(matches!(d.right.absolute, Absoluteness::Certified { .. }));
    }
    let c = collapse();
    assert_eq!(c.adjunction.left.obj, vec![0, 0]);
    let e = expand();
    assert_eq!(e.adjunction.right.obj, vec![1, 1]);
}

#[test]
fn galois_with_isos_derives_to_itself() {
    let (a, ch) = (fixtures::arrow(), fixtures::chain2());
    let f = fixtures::galois_left(&a, &ch);
    let g = fixtures::galois_right(&ch, &a);
    let eta = fixtures::poset_nat(&Functor::identity(&a), &g.after(&f).unwrap()).unwrap();
    let eps = fixtures::poset_nat(&f.after(&g).unwrap(), &Functor::identity(&ch)).unwrap();
    let adj = verify_adjunction(f.clone(), g.clone(), eta, eps).unwrap();
    let (la, lc) = (loc_of(&RelCat::minimal(a)), loc_of(&RelCat::minimal(ch)));
    let cf = homotopical_cert(&f, &la, &lc, true).unwrap();
    let cg = homotopical_cert(&g, &lc, &la, false).unwrap();
    let d = derived_adjunction(&adj, &cf, &cg, bud()).unwrap();
    assert_eq!(d.adjunction.left.mor, adj.left.mor);
    assert_eq!(d.adjunction.right.mor, adj.right.mor);
    assert_eq!(d.adjunction.unit.comp, adj.unit.comp);
    assert_eq!(d.adjunction.counit.comp, adj.counit.comp);
}

#[test]
fn left_derived_from_right_adjoint_matches_retraction_cert() {
    let c = collapse();
    let adj = Adjunction::identity(&fixtures::arrow());
    let cert = derive_left_from_right_adjoint(&adj, &c.right).unwrap();
    assert!(verify_kan(&cert, None, bud()).unwrap().passed());
    let theta = compare_certs(&cert, &c.left).unwrap().expect("certs agree up to unique iso");
    assert!(theta.is_iso());
}

#[test]
fn underived_identity_has_no_left_adjoint() {
    let sq = fixtures::square();
    let w = sq.mor_id("w").unwrap();
    let (plain, rel) = (RelCat::minimal(sq.clone()), RelCat::new("RelSquare", sq.clone(), [w]));
    let (lp, lr) = (loc_of(&plain), loc_of(&rel));
    let id = Functor::identity(&sq);
    let cg = homotopical_cert(&id, &lp, &lr, false).unwrap();
    let err = derive_left_from_right_adjoint(&Adjunction::identity(&sq), &cg).unwrap_err();
    assert!(matches!(err, CatError::NoLeftAdjoint(_)));
}

#[test]
fn composition_of_left_and_right_sides_agree() {
    let pairs = [(collapse(), expand()), (expand(), collapse()), (collapse(), collapse_then_homotopical())];
    let mut verdicts = Vec::new();
    for (inner, outer) in &pairs {
        let (l, r) = adjoint_composition(inner, outer, bud()).unwrap();
        assert_eq!(l.composes, r.composes);
        verdicts.push(l.composes);
    }
    assert_eq!(verdicts, [true, false, true]);
}

/// Identity adjunction on Arrow with no weak equivalences.
fn collapse_then_homotopical() -> DerivedAdjunction {
    let a = fixtures::arrow();
    let l = loc_of(&arrow_ids());
    let id = Functor::identity(&a);
    let cf = homotopical_cert(&id, &l, &l, true).unwrap();
    let cg = homotopical_cert(&id, &l, &l, false).unwrap();
    derived_adjunction(&Adjunction::identity(&a), &cf, &cg, bud()).unwrap()
}

#[test]
fn homotopical_outer_functor_composes() {
    let c = collapse();
    let h = collapse_then_homotopical();
    let v = composes_check(&c.left, &h.left, Some(&c.left), Some(&[]), bud()).unwrap();
    assert!(v.composes);
    assert_eq!(v.agrees_with_given, Some(true));
}

#[test]
fn nested_retractions_compose() {
    // F = id: RelArrow -> RelArrow sends C_0 = {0} into D_0 = {0}
    let ret = validate_retraction(fixtures::rel_arrow_left_retraction()).unwrap();
    let a = fixtures::arrow();
    let id = Functor::identity(&a);
    let first = derive_via_retraction(&id, &ret, Some(&ret.loc)).unwrap();
    let second = derive_via_retraction(&id, &ret, Some(&ret.loc)).unwrap();
    assert!(composes_check(&first, &second, None, Some(&[]), bud()).unwrap().composes);
}

#[test]
fn derived_mates_of_conjugate_identities() {
    let c = collapse();
    let adj = Adjunction::identity(&fixtures::arrow());
    let a = fixtures::arrow();
    let sq = MateSquare::new(adj.clone(), adj, Functor::identity(&a), Functor::identity(&a))
        .unwrap()
        .with_sigma(NatTrans::identity(&Functor::identity(&a)))
        .unwrap();
    let v = derived_mate_check(&sq, &c, &c, bud()).unwrap();
    assert!(v.verdict.mates);
    assert!(v.l_sigma.is_iso() && v.r_tau.is_iso());
}

#[test]
fn derived_mates_of_homotopical_square() {
    let h = collapse_then_homotopical();
    let a = fixtures::arrow();
    let adj = Adjunction::identity(&a);
    let c1 = Functor::constant(&a, &a, 1);
    let sq =
        MateSquare::new(adj.clone(), adj, c1.clone(), c1.clone()).unwrap().with_sigma(NatTrans::identity(&c1)).unwrap();
    let v = derived_mate_check(&sq, &h, &h, bud()).unwrap();
    assert!(v.verdict.mates);
    assert_eq!(v.l_sigma.comp, sq.sigma.unwrap().comp);
}

#[test]
fn composition_hypothesis_failure_is_reported() {
    let c = collapse();
    let a = fixtures::arrow();
    let adj = Adjunction::identity(&a);
    let c1 = Functor::constant(&a, &a, 1);
    let sq =
        MateSquare::new(adj.clone(), adj, c1.clone(), c1.clone()).unwrap().with_sigma(NatTrans::identity(&c1)).unwrap();
    let err = derived_mate_check(&sq, &c, &c, bud()).unwrap_err();
    assert!(matches!(err, CatError::CompositionHypothesisFailed(_)));
}

#[test]
fn pointwise_lift_over_span() {
    let ret = validate_retraction(fixtures::rel_arrow_left_retraction()).unwrap();
    let span = fixtures::span();
    let (lift, fc) = lift_retraction_pointwise(&ret, &span, bud()).unwrap();
    assert_eq!(fc.cat.n_obj(), 5);
    assert_eq!(lift.sub_cat.n_obj(), 1);
    assert!(lift.equivalence_check().unwrap());
    let triv = DeformationRetraction::trivial(&ret.data.rc, Side::Left).unwrap();
    let (tl, _) = lift_retraction_pointwise(&triv, &span, bud()).unwrap();
    assert_eq!(tl.data.sub.len(), fc.cat.n_obj());
    assert!(tl.data.q.iter().all(|&m| tl.data.rc.cat.is_identity(m)));
}

#[test]
fn q_must_commute_with_q_components() {
    let g = fixtures::cyclic("C3", 3);
    let rc = RelCat::maximal(g.clone());
    let mut data = RetractionData::trivial(&rc, Side::Left);
    let s = g.mor_id("s").unwrap();
    let s2 = g.mor_id("s2").unwrap();
    data.q_mor[s] = s2;
    data.q_mor[s2] = s;
    data.q = vec![g.id(0)];
    assert!(matches!(validate_retraction(data), Err(CatError::SquareFailure { .. })));
}

#[test]
fn derived_functor_of_diagrams_is_pointwise() {
    let ret = validate_retraction(fixtures::rel_arrow_left_retraction()).unwrap();
    let a = fixtures::arrow();
    let span = fixtures::span();
    let id = Functor::identity(&a);
    let cert = derive_via_retraction(&id, &ret, None).unwrap();
    let (lift, fc) = lift_retraction_pointwise(&ret, &span, bud()).unwrap();
    let id_i = Functor::identity(&fc.cat);
    let lifted = derive_via_retraction(&id_i, &lift, None).unwrap();
    let lf_h = cert.derived.after(cert.h()).unwrap();
    let hi = lifted.h();
    for x in fc.cat.objects() {
        let diag = &fc.objs[x];
        let expect = fc.obj_of(&lf_h.after(diag).unwrap()).unwrap();
        assert_eq!(lifted.derived.obj[hi.obj[x]], expect);
        let lam: Vec<_> = diag.obj.iter().map(|&o| cert.cell.comp[o]).collect();
        assert_eq!(fc.comps[lifted.cell.comp[x]], lam);
    }
    for m in fc.cat.morphisms() {
        let comps: Vec<_> = fc.comps[m].iter().map(|&u| lf_h.mor[u]).collect();
        assert_eq!(fc.comps[lifted.derived.mor[hi.mor[m]]], comps);
    }
}

#[test]
fn plain_kan_on_probe_subset_is_partial() {
    let ret = validate_retraction(fixtures::rel_arrow_left_retraction()).unwrap();
    let cert = derive_via_retraction(&Functor::identity(&fixtures::arrow()), &ret, None).unwrap();
    let probes: Vec<Arc<FinCat>> = vec![fixtures::one()];
    let rep = verify_kan(&cert, Some(&probes), bud()).unwrap();
    assert_eq!(rep.absolute, Absoluteness::Partial { probes: vec!["One".into()] });
}

/// `P` with an idempotent weak equivalence `e` and `p: P -> B`, `p e = p`.
fn idempotent_cat() -> Arc<FinCat> {
    let morphisms =
        vec![("id_P".to_string(), 0, 0), ("e".to_string(), 0, 0), ("p".to_string(), 0, 1), ("id_B".to_string(), 1, 1)];
    let table = |g: usize, f: usize| match (g, f) {
        (0, x) | (x, 0) if x != 3 => Some(x),
        (1, 1) => Some(1),
        (2, 1) => Some(2),
        (3, x) | (x, 3) => Some(x),
        _ => None,
    };
    Arc::new(FinCat::build("Idem", vec!["P".into(), "B".into()], morphisms, vec![0, 3], table).unwrap())
}

#[test]
fn q_functorial_only_after_localizing_does_not_lift() {
    let c = idempotent_cat();
    c.check_laws().unwrap();
    let rc = RelCat::new("RelIdem", c.clone(), [1, 2]);
    // Q(id_P) = e, so Q is not a functor, but H_0 Q is
    let data = RetractionData {
        rc,
        side: Side::Left,
        sub: vec![0],
        q_obj: vec![0, 0],
        q_mor: vec![1, 1, 0, 0],
        q: vec![1, 2],
    };
    let ret = validate_retraction(data).unwrap();
    assert!(ret.equivalence_check().unwrap());
    let err = lift_retraction_pointwise(&ret, &fixtures::arrow(), bud()).unwrap_err();
    assert!(matches!(err, CatError::QNotFunctorial(_)));
}
