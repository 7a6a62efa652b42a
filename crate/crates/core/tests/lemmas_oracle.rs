mod common;

use common::oracle;
use proptest::prelude::*;
use relhom_core::concrete::Concrete;
use relhom_core::eclass::EClass;
use relhom_core::finab::{enumerate_homs, objects_up_to, FinAb};
use relhom_core::fingrp::{bundled_groups, FinGrp};
use relhom_core::gen;
use relhom_core::lemmas::{is_e_exact_at, snake, three_by_three, Direction, SequenceSpec, SnakeMode};
use relhom_core::pset::{PSet, PSetObject};
use relhom_core::PointedCategory;

fn seed() -> u64 {
    gen::seed_from_env(2024).unwrap()
}

#[test]
fn random_snakes_agree_with_element_chase() {
    let mut rng = gen::rng(seed());
    for i in 0..200 {
        let s = gen::random_snake(&mut rng, 16).unwrap();
        assert!(oracle::snake_valid(&s), "instance {i} is not valid");
        let r = snake(&FinAb, &s, &EClass::RegularEpi, SnakeMode::Homological)
            .unwrap_or_else(|e| panic!("instance {i}: {e}"));
        let engine: Vec<bool> = r.nodes.iter().map(|n| n.check.holds).collect();
        assert_eq!(engine, oracle::snake_exactness(&s).to_vec(), "instance {i}");
        assert!(r.exact_everywhere(), "instance {i}");

        let kw = FinAb.kernel(&s.w).unwrap().incl;
        let cu = FinAb.cokernel(&s.u).unwrap().proj;
        assert!(oracle::is_kernel_inclusion(&kw, &s.w));
        for k in 0..r.d.dom.order() {
            let chased = FinAb.apply(&cu, oracle::chase(&s, FinAb.apply(&kw, k)));
            assert_eq!(FinAb.apply(&r.d, k), chased, "instance {i}, element {k}");
        }
        // the six-term verdicts match plain exactness of the same arrows
        let arrows = &r.six_term.arrows;
        for j in 1..arrows.len() {
            assert_eq!(r.nodes[j - 1].check.holds, oracle::exact_at(&arrows[j - 1], &arrows[j]));
        }
        // in the homological setting the side conditions come for free
        assert!(r.side_conditions.all_hold(), "instance {i}: {:?}", r.side_conditions.failures());
    }
}

#[test]
fn connecting_morphism_is_unique() {
    let mut rng = gen::rng(seed() ^ 0x5eed);
    for _ in 0..30 {
        let s = gen::random_snake(&mut rng, 16).unwrap();
        let r = snake(&FinAb, &s, &EClass::RegularEpi, SnakeMode::Homological).unwrap();
        let target = FinAb.compose_raw(&FinAb.cokernel(&s.u).unwrap().proj, &r.phi);
        let n = enumerate_homs(&r.d.dom, &r.d.cod, 16)
            .unwrap()
            .iter()
            .filter(|h| FinAb.compose_raw(h, &r.pi2) == target)
            .count();
        assert_eq!(n, 1);
    }
}

#[test]
fn random_grids_agree_with_element_chase() {
    let mut rng = gen::rng(seed());
    let (mut exact, mut inexact) = (0, 0);
    for i in 0..100 {
        let g = gen::random_grid(&mut rng, 16).unwrap();
        let r = three_by_three(&FinAb, &g, &EClass::RegularEpi, Direction::Both)
            .unwrap_or_else(|e| panic!("grid {i}: {e}"));
        let (first, last) = oracle::grid_rows(&g);
        assert_eq!((r.first_row.holds, r.last_row.holds), (first, last), "grid {i}");
        assert_eq!(first, last, "grid {i}: oracle contradicts the lemma");
        assert!(r.holds);
        assert_eq!(r.pairing_in_e.holds, oracle::grid_pairing_onto(&g), "grid {i}");
        if oracle::image(&g.g).len() == g.g.cod.order() {
            assert!(r.pairing_in_e.holds, "grid {i}: g is onto but <v',g'> is not in E");
        }
        if first {
            exact += 1;
        } else {
            inexact += 1;
        }
    }
    assert!(exact > 0 && inexact > 0, "{exact} exact, {inexact} inexact");
}

fn elementwise_exact<C: Concrete>(cat: &C, f: &C::Mor, g: &C::Mor) -> bool {
    let mut image: Vec<usize> = cat.element_map(f);
    image.sort();
    image.dedup();
    let kernel: Vec<usize> = (0..cat.order(&cat.dom(g))).filter(|&x| cat.apply(g, x) == 0).collect();
    image == kernel
}

fn pick<T: Clone>(xs: &[T], i: usize) -> T {
    xs[i % xs.len()].clone()
}

fn check_pair<C: Concrete>(cat: &C, objs: &[C::Obj], idx: [usize; 5]) -> Result<(), TestCaseError> {
    let (a, b, c) = (pick(objs, idx[0]), pick(objs, idx[1]), pick(objs, idx[2]));
    let f = pick(&cat.homs(&a, &b).unwrap(), idx[3]);
    let g = pick(&cat.homs(&b, &c).unwrap(), idx[4]);
    let seq = SequenceSpec::new(vec![f.clone(), g.clone()]);
    let v = is_e_exact_at(cat, &seq, 1, &EClass::RegularEpi).unwrap();
    prop_assert_eq!(v.check.holds, elementwise_exact(cat, &f, &g));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn exactness_matches_elements_in_abelian_groups(idx in any::<[usize; 5]>()) {
        check_pair(&FinAb, &objects_up_to(8), idx)?;
    }

    #[test]
    fn exactness_matches_elements_in_groups(idx in any::<[usize; 5]>()) {
        let groups: Vec<_> = bundled_groups().into_iter().filter(|g| g.order() <= 8).collect();
        check_pair(&FinGrp, &groups, idx)?;
    }

    #[test]
    fn exactness_matches_elements_in_pointed_sets(idx in any::<[usize; 5]>()) {
        let objs: Vec<_> = (1..=4).map(|n| PSetObject::new(n).unwrap()).collect();
        check_pair(&PSet, &objs, idx)?;
    }
}
