use std::time::Instant;

use proptest::prelude::*;
use relhom_core::axioms::{check_axiom, recheck, AxiomId, Outcome, Status, Universe};
use relhom_core::eclass::{forgetful_split_preimage, member, EClass};
use relhom_core::finab::FinAb;
use relhom_core::fingrp::{bundled_groups, FinGrp};
use relhom_core::pset::PSet;
use relhom_core::tablecat::enumerate_categories;
use relhom_core::PointedCategory;

fn all_hold<C: PointedCategory>(cat: &C, class: &EClass<C>, bound: usize) {
    let t = Instant::now();
    let u = Universe::new(cat, class, bound).unwrap();
    for a in AxiomId::ALL {
        let v = u.check(a).unwrap();
        assert_eq!(v.status, Status::HoldsUpToBound, "{} {a}: {:?}", cat.backend(), v.witness);
    }
    eprintln!("{} {} <= {bound}: {:?}", cat.backend(), class.label(), t.elapsed());
}

#[test]
fn regular_epis_of_abelian_groups() {
    all_hold(&FinAb, &EClass::RegularEpi, 8);
}

#[test]
fn regular_epis_of_groups() {
    all_hold(&FinGrp, &EClass::RegularEpi, 12);
}

#[test]
fn isomorphisms_on_every_backend() {
    all_hold(&FinAb, &EClass::Iso, 8);
    all_hold(&FinGrp, &EClass::Iso, 12);
    all_hold(&PSet, &EClass::Iso, 4);
    for cat in enumerate_categories(6).unwrap() {
        all_hold(&cat, &EClass::Iso, 0);
    }
}

#[test]
fn forgetful_preimage_is_the_regular_epis() {
    let class = forgetful_split_preimage();
    let groups = bundled_groups();
    let mut compared = 0;
    for a in &groups {
        for b in &groups {
            for f in FinGrp.homs(a, b).unwrap() {
                let lhs = member(&FinGrp, &class, &f).unwrap();
                let rhs = member(&FinGrp, &EClass::RegularEpi, &f).unwrap();
                assert_eq!(lhs, rhs, "{}", FinGrp.show(&f));
                compared += 1;
            }
        }
    }
    assert!(compared > 1000);
}

#[test]
fn split_epis_of_pointed_sets_are_not_regular_enough() {
    let v = check_axiom(&PSet, &EClass::SplitEpi, AxiomId::ShortFive, 3).unwrap();
    assert_eq!(v.status, Status::Fails);
    let arrows: Vec<_> = v.witness.unwrap().arrows.into_iter().map(|p| p.1).collect();
    assert!(matches!(recheck(&PSet, &EClass::SplitEpi, AxiomId::ShortFive, &arrows).unwrap(), Outcome::Fails(_)));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    /// Any reported witness re-checks to a failure in isolation, and raising
    /// the bound never changes the least witness.
    #[test]
    fn witnesses_recheck(axiom in prop::sample::select(AxiomId::ALL.to_vec()), bound in 2usize..4) {
        let v = check_axiom(&PSet, &EClass::All, axiom, bound).unwrap();
        if let Some(w) = &v.witness {
            let arrows: Vec<_> = w.arrows.iter().map(|p| p.1.clone()).collect();
            prop_assert!(matches!(recheck(&PSet, &EClass::All, axiom, &arrows).unwrap(), Outcome::Fails(_)));
            let wider = check_axiom(&PSet, &EClass::All, axiom, bound + 1).unwrap();
            prop_assert_eq!(wider.witness.as_ref(), Some(w));
        }
    }
}
