use std::time::Instant;

use relhom_core::axioms::{AxiomId, Universe};
use relhom_core::eclass::EClass;
use relhom_core::finab::FinAb;
use relhom_core::fingrp::FinGrp;
use relhom_core::PointedCategory;

fn main() {
    let bound: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    if std::env::args().nth(2).as_deref() == Some("fingrp") {
        run(&FinGrp, bound);
    } else {
        run(&FinAb, bound);
    }
}

fn run<C: PointedCategory>(cat: &C, bound: usize) {
    let t = Instant::now();
    let class = EClass::RegularEpi;
    let u = Universe::new(cat, &class, bound).unwrap();
    println!("universe {:?}", t.elapsed());
    for a in AxiomId::ALL {
        let t = Instant::now();
        let v = u.check(a).unwrap();
        println!("{a}: {:?} {} instances {:?}", v.status, v.instances_checked, t.elapsed());
    }
}
