//! Localizations against the brute-force oracle in `support/oracle.rs`.

#[path = "support/oracle.rs"]
mod oracle;

use std::sync::Arc;

use catmate_core::cat::{FinCat, Mor};
use catmate_core::fixtures;
use catmate_core::functor::Functor;
use catmate_core::localization::{localize, RelCat};
use oracle::{agrees, Oracle};
use proptest::prelude::*;

fn hom_sizes(c: &FinCat) -> Vec<usize> {
    c.objects().flat_map(|a| c.objects().map(move |b| (a, b))).map(|(a, b)| c.hom(a, b).len()).collect()
}

#[test]
fn rel_arrow_matches_frozen_oracle() {
    let rc = fixtures::rel_arrow();
    let res = localize(&rc, 4);
    let loc = res.exact().expect("exact at bound 4");
    assert_eq!((loc.ho.n_obj(), loc.ho.n_mor()), (2, 4));
    assert_eq!(hom_sizes(&loc.ho), vec![1, 1, 1, 1]);
    let mut o = Oracle::build(&rc, 4);
    agrees(loc, &mut o).unwrap();
}

#[test]
fn localizing_a_group_at_everything_changes_nothing() {
    let g1 = fixtures::g1();
    let rc = RelCat::maximal(g1.clone());
    let res = localize(&rc, 8);
    let loc = res.exact().unwrap();
    assert!(*loc.ho == *g1);
    assert!(loc.h == Functor::identity(&g1) || loc.h.inverse().is_some());
    assert_eq!(loc.h.obj, vec![0]);
    assert_eq!(loc.h.mor, g1.morphisms().collect::<Vec<_>>());
}

#[test]
fn square_with_one_weak_equivalence() {
    let sq = fixtures::square();
    let rc = RelCat::new("RelSquare", sq.clone(), [sq.mor_id("w").unwrap()]);
    let res = localize(&rc, 12);
    let loc = res.exact().unwrap();
    // 01 and 11 become isomorphic; nothing else changes
    assert_eq!(loc.ho.n_mor(), 11);
    agrees(loc, &mut Oracle::build(&rc, 5)).unwrap();
}

#[test]
fn bound_one_is_undecided_on_rel_arrow() {
    assert!(!localize(&fixtures::rel_arrow(), 1).is_exact());
}

/// Preorder on three objects from a random relation, closed transitively.
fn preorder(bits: u8) -> Arc<FinCat> {
    let names = ["a", "b", "c"];
    let mut rel = [[false; 3]; 3];
    let mut k = 0;
    for (x, row) in rel.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            if x != y {
                *cell = bits >> k & 1 == 1;
                k += 1;
            }
        }
    }
    for z in 0..3 {
        for x in 0..3 {
            for y in 0..3 {
                if x != y && rel[x][z] && rel[z][y] {
                    rel[x][y] = true;
                }
            }
        }
    }
    let labels: Vec<String> = (0..3).flat_map(|x| (0..3).map(move |y| format!("{}{}", names[x], names[y]))).collect();
    let mut arrows = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            if x != y && rel[x][y] {
                arrows.push((labels[3 * x + y].as_str(), names[x], names[y]));
            }
        }
    }
    Arc::new(fixtures::poset("P", &names, &arrows))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn preorder_localizations_match_oracle(bits in 0u8..64, wbits in any::<u16>()) {
        let c = preorder(bits);
        let ws: Vec<Mor> = c.morphisms().filter(|&m| wbits >> m & 1 == 1).collect();
        let rc = RelCat::new("R", c.clone(), ws);
        let res = localize(&rc, 16);
        let loc = res.exact().expect("preorders localize exactly");
        let mut o = Oracle::build(&rc, 4);
        prop_assert!(agrees(loc, &mut o).is_ok(), "{:?}", agrees(loc, &mut o));
    }

    #[test]
    fn localization_functor_inverts_weak_equivalences(bits in 0u8..64, wbits in any::<u16>()) {
        let c = preorder(bits);
        let ws: Vec<Mor> = c.morphisms().filter(|&m| wbits >> m & 1 == 1).collect();
        let rc = RelCat::new("R", c.clone(), ws);
        let res = localize(&rc, 16);
        let loc = res.exact().unwrap();
        for m in c.morphisms().filter(|&m| rc.weq[m]) {
            prop_assert!(loc.ho.is_iso(loc.h.mor[m]));
        }
        prop_assert_eq!(loc.h.obj.len(), c.n_obj());
    }
}

#[test]
fn cyclic_groups_with_partial_weak_equivalences() {
    for n in [2, 3, 4] {
        let g = fixtures::cyclic("Z", n);
        let rc = RelCat::minimal(g.clone());
        let loc = localize(&rc, 8);
        let loc = loc.exact().unwrap();
        assert_eq!(loc.ho.n_mor(), n);
        agrees(loc, &mut Oracle::build(&rc, 3)).unwrap();
    }
}
