//! Seeded random generators of valid lemma instances over finite abelian
//! groups. Instances are built from random subgroups and quotients, so every
//! object has order at most the requested bound.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{induced_cokernel_map, is_zero, PointedCategory, Square};
use crate::concrete::Concrete;
use crate::error::{CatError, Result};
use crate::finab::{enumerate_homs, objects_up_to, FinAb, FinAbMorphism, FinAbObject};
use crate::lemmas::{GridInput, SnakeInput};

/// Environment variable holding the generator seed.
pub const SEED_ENV: &str = "RELHOM_SEED";

/// Seed from `RELHOM_SEED`, or `default` when unset.
pub fn seed_from_env(default: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CatError::input(format!("{SEED_ENV}={s:?} is not an unsigned integer"))),
        Err(_) => Ok(default),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const ATTEMPTS: usize = 1000;

fn object(rng: &mut ChaCha8Rng, max_order: usize) -> FinAbObject {
    objects_up_to(max_order).choose(rng).cloned().expect("zero object always listed")
}

fn hom(rng: &mut ChaCha8Rng, a: &FinAbObject, b: &FinAbObject) -> Result<FinAbMorphism> {
    let homs = enumerate_homs(a, b, a.order().max(b.order()))?;
    Ok(homs.choose(rng).cloned().expect("zero map always listed"))
}

fn missing(what: &str) -> CatError {
    CatError::Inconsistency(format!("generator: {what}"))
}

/// A random short exact `0 -> A' -f'-> B' -g'-> C' -> 0` with `|B'| <= max_order`.
fn short_exact(rng: &mut ChaCha8Rng, max_order: usize) -> Result<(FinAbMorphism, FinAbMorphism)> {
    let b = object(rng, max_order);
    let x = object(rng, max_order);
    let h = hom(rng, &x, &b)?;
    let g = FinAb.cokernel(&h)?.proj;
    let f = FinAb.kernel(&g)?.incl;
    Ok((f, g))
}

/// A random snake grid whose hypotheses hold for `E = RegularEpi`.
pub fn random_snake(rng: &mut ChaCha8Rng, max_order: usize) -> Result<SnakeInput<FinAbMorphism>> {
    for _ in 0..ATTEMPTS {
        let (f2, g2) = short_exact(rng, max_order)?;
        let (a, b) = (object(rng, max_order), object(rng, max_order));
        let f = hom(rng, &a, &b)?;
        let g = FinAb.cokernel(&f)?.proj;
        let v = hom(rng, &b, &FinAb.cod(&f2))?;
        let vf = FinAb.compose_raw(&v, &f);
        if !is_zero(&FinAb, &FinAb.compose_raw(&g2, &vf)) {
            continue;
        }
        let u = FinAb.lift_raw(&f2, &vf).ok_or_else(|| missing("v∘f does not lift through f'"))?;
        let w = FinAb
            .factor_raw(&g, &FinAb.compose_raw(&g2, &v))
            .ok_or_else(|| missing("g'∘v does not factor through g"))?;
        return Ok(SnakeInput { f, g, f2, g2, u, v, w });
    }
    Err(CatError::budget(format!("no snake instance found in {ATTEMPTS} attempts")))
}

/// A random 3×3 grid with exact columns and middle row. The first row is
/// exact only some of the time: `A` may be a proper subgroup of `A' ∩ B` and
/// `C` may be larger than `g'(B)`.
pub fn random_grid(rng: &mut ChaCha8Rng, max_order: usize) -> Result<GridInput<FinAbMorphism>> {
    let (f2, g2) = short_exact(rng, max_order)?;
    let b2 = FinAb.cod(&f2);
    let y = object(rng, max_order);
    let (_, v) = FinAb.image(&hom(rng, &y, &b2)?);

    let p = FinAb.pullback(&f2, &v)?;
    let t = if rng.gen_bool(0.5) {
        FinAb.identity(&p.obj)
    } else {
        let x = object(rng, max_order);
        FinAb.image(&hom(rng, &x, &p.obj)?).1
    };
    let u = FinAb.compose_raw(&p.p1, &t);
    let f = FinAb.compose_raw(&p.p2, &t);

    let g2v = FinAb.compose_raw(&g2, &v);
    let w = if rng.gen_bool(0.5) {
        FinAb.image(&g2v).1
    } else {
        let z = object(rng, max_order);
        let s = hom(rng, &z, &FinAb.cod(&g2))?;
        FinAb.image(&FinAb.copair(&g2v, &s)?.1).1
    };
    let g = FinAb.lift_raw(&w, &g2v).ok_or_else(|| missing("g'∘v does not lift through w"))?;

    let u2 = FinAb.cokernel(&u)?.proj;
    let v2 = FinAb.cokernel(&v)?.proj;
    let w2 = FinAb.cokernel(&w)?.proj;
    let f3 = induced_cokernel_map(&FinAb, &Square::new(f.clone(), f2.clone(), u.clone(), v.clone()))?;
    let g3 = induced_cokernel_map(&FinAb, &Square::new(g.clone(), g2.clone(), v.clone(), w.clone()))?;
    Ok(GridInput { f, g, f2, g2, f3, g3, u, u2, v, v2, w, w2 })
}
