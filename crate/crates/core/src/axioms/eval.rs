//! Evaluation of a single configuration of each axiom. Every evaluator
//! re-verifies the premises it relies on, so a witness can be re-checked in
//! isolation.

use std::collections::HashMap;

use super::{AxiomId, Outcome};
use crate::category::{compose, PointedCategory};
use crate::eclass::{member, EClass};
use crate::error::{CatError, Result};

pub(crate) struct Ctx<'a, C: PointedCategory> {
    pub cat: &'a C,
    pub class: &'a EClass<C>,
    pub cache: Option<&'a HashMap<C::Mor, bool>>,
    pub kernels: Option<&'a HashMap<C::Mor, C::Mor>>,
}

impl<C: PointedCategory> Ctx<'_, C> {
    pub fn member(&self, f: &C::Mor) -> Result<bool> {
        if let Some(&hit) = self.cache.and_then(|c| c.get(f)) {
            return Ok(hit);
        }
        member(self.cat, self.class, f)
    }

    pub fn kernel(&self, f: &C::Mor) -> Result<C::Mor> {
        if let Some(k) = self.kernels.and_then(|c| c.get(f)) {
            return Ok(k.clone());
        }
        Ok(self.cat.kernel(f)?.incl)
    }
}

/// Names of the arrows a configuration of `axiom` consists of.
pub fn arrow_names(axiom: AxiomId) -> &'static [&'static str] {
    use AxiomId::*;
    match axiom {
        PullbackStable => &["f", "g"],
        NormalEpi | RegularEpi | CokerKer => &["f"],
        ShortFive | KernelComparison => &["f", "f'", "w"],
        Composition | RightCancel => &["f", "g"],
        Factorization => &["m", "e"],
        Hofmann => &["f", "w", "v", "f'"],
        KernelFactor => &["e1", "e2", "f"],
    }
}

macro_rules! premise {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Ok(Outcome::Premise(format!($($msg)*)));
        }
    };
}

/// Evaluates one configuration; missing limits become `Skipped`.
pub(crate) fn evaluate<C: PointedCategory>(ctx: &Ctx<'_, C>, axiom: AxiomId, cfg: &[C::Mor]) -> Result<Outcome> {
    if cfg.len() != arrow_names(axiom).len() {
        return Err(CatError::input(format!(
            "axiom {} takes {} arrows, got {}",
            axiom.id(),
            arrow_names(axiom).len(),
            cfg.len()
        )));
    }
    match evaluate_inner(ctx, axiom, cfg) {
        Err(CatError::NoLimit(what)) => Ok(Outcome::Skipped(format!("no {what}"))),
        other => other,
    }
}

fn evaluate_inner<C: PointedCategory>(ctx: &Ctx<'_, C>, axiom: AxiomId, cfg: &[C::Mor]) -> Result<Outcome> {
    let cat = ctx.cat;
    let show = |f: &C::Mor| cat.show(f);
    use AxiomId::*;
    match axiom {
        PullbackStable => {
            let (f, g) = (&cfg[0], &cfg[1]);
            premise!(cat.cod(f) == cat.cod(g), "f and g have different codomains");
            premise!(ctx.member(f)?, "f is not in E");
            for pb in cat.all_pullbacks(f, g)? {
                if !ctx.member(&pb.p2)? {
                    return Ok(Outcome::Fails(format!(
                        "the pullback of f along g, {}, is not in E",
                        show(&pb.p2)
                    )));
                }
            }
            Ok(Outcome::Holds)
        }
        NormalEpi => {
            let f = &cfg[0];
            premise!(ctx.member(f)?, "f is not in E");
            if !cat.is_normal_epi(f)? {
                return Ok(Outcome::Fails(format!("f = {} is in E but is not a normal epimorphism", show(f))));
            }
            Ok(Outcome::Holds)
        }
        RegularEpi => {
            let f = &cfg[0];
            premise!(ctx.member(f)?, "f is not in E");
            if !cat.is_regular_epi(f)? {
                return Ok(Outcome::Fails(format!("f = {} is in E but is not a regular epimorphism", show(f))));
            }
            Ok(Outcome::Holds)
        }
        CokerKer => {
            let f = &cfg[0];
            premise!(ctx.member(f)?, "f is not in E");
            let k = ctx.kernel(f)?;
            for q in cat.all_cokernels(&k)? {
                if ctx.member(&q)? {
                    return Ok(Outcome::Holds);
                }
            }
            Ok(Outcome::Fails(format!(
                "no cokernel of ker(f) = {} is in E",
                show(&k)
            )))
        }
        ShortFive | KernelComparison => {
            let (f, f2, w) = (&cfg[0], &cfg[1], &cfg[2]);
            premise!(
                cat.cod(f) == cat.cod(f2) && cat.dom(w) == cat.dom(f) && cat.cod(w) == cat.dom(f2),
                "arrows do not form the short-five shape"
            );
            premise!(compose(cat, f2, w)? == *f, "f'∘w != f");
            premise!(ctx.member(f)? && ctx.member(f2)?, "f or f' is not in E");
            if axiom == ShortFive {
                let k = ctx.kernel(f)?;
                let k2 = ctx.kernel(f2)?;
                let wk = cat.compose_raw(w, &k);
                let t = cat
                    .lift_raw(&k2, &wk)
                    .ok_or_else(|| CatError::Inconsistency("w∘ker f does not lift through ker f'".into()))?;
                premise!(cat.is_iso(&t), "w∘ker(f) is not a kernel of f'");
                if !cat.is_iso(w) {
                    return Ok(Outcome::Fails(format!("w = {} is not an isomorphism", show(w))));
                }
                return Ok(Outcome::Holds);
            }
            if ctx.member(w)? {
                return Ok(Outcome::Holds);
            }
            for k in cat.all_kernels(f)? {
                let wk = cat.compose_raw(w, &k);
                for k2 in cat.all_kernels(f2)? {
                    let u = cat
                        .lift_raw(&k2, &wk)
                        .ok_or_else(|| CatError::Inconsistency("w∘ker f does not lift through ker f'".into()))?;
                    if ctx.member(&u)? {
                        return Ok(Outcome::Fails(format!(
                            "with k = {}, k' = {}, the induced u = {} is in E but w = {} is not",
                            show(&k),
                            show(&k2),
                            show(&u),
                            show(w)
                        )));
                    }
                }
            }
            Ok(Outcome::Holds)
        }
        Composition | RightCancel => {
            let (f, g) = (&cfg[0], &cfg[1]);
            premise!(cat.cod(f) == cat.dom(g), "f and g are not composable");
            premise!(ctx.member(f)?, "f is not in E");
            let gf = cat.compose_raw(g, f);
            if axiom == Composition {
                premise!(ctx.member(g)?, "g is not in E");
                if !ctx.member(&gf)? {
                    return Ok(Outcome::Fails(format!("g∘f = {} is not in E", show(&gf))));
                }
            } else {
                premise!(ctx.member(&gf)?, "g∘f is not in E");
                if !ctx.member(g)? {
                    return Ok(Outcome::Fails(format!("g = {} is not in E although f and g∘f are", show(g))));
                }
            }
            Ok(Outcome::Holds)
        }
        Factorization => {
            let (m, e) = (&cfg[0], &cfg[1]);
            premise!(cat.cod(m) == cat.dom(e), "m and e are not composable");
            premise!(cat.is_mono(m), "m is not a monomorphism");
            premise!(ctx.member(e)?, "e is not in E");
            let f = cat.compose_raw(e, m);
            for (e2, _) in cat.mono_factorizations(&f)? {
                if ctx.member(&e2)? {
                    return Ok(Outcome::Holds);
                }
            }
            Ok(Outcome::Fails(format!(
                "e∘m = {} has no factorization m'∘e' with m' mono and e' in E",
                show(&f)
            )))
        }
        Hofmann => {
            let (f, w, v, f2) = (&cfg[0], &cfg[1], &cfg[2], &cfg[3]);
            premise!(
                cat.dom(w) == cat.dom(f) && cat.dom(v) == cat.cod(f) && cat.dom(f2) == cat.cod(w) && cat.cod(f2) == cat.cod(v),
                "arrows do not form a square"
            );
            premise!(compose(cat, v, f)? == compose(cat, f2, w)?, "v∘f != f'∘w");
            premise!(ctx.member(f)? && ctx.member(f2)?, "f or f' is not in E");
            premise!(cat.is_mono(w), "w is not a monomorphism");
            premise!(cat.is_normal_mono(v)?, "v is not a normal monomorphism");
            let k2 = ctx.kernel(f2)?;
            premise!(cat.lift_raw(w, &k2).is_some(), "ker(f') does not factor through w");
            if !cat.is_normal_mono(w)? {
                return Ok(Outcome::Fails(format!("w = {} is not a normal monomorphism", show(w))));
            }
            Ok(Outcome::Holds)
        }
        KernelFactor => {
            let (e1, e2, f) = (&cfg[0], &cfg[1], &cfg[2]);
            premise!(
                cat.cod(e1) == cat.cod(e2) && cat.dom(f) == cat.dom(e1) && cat.cod(f) == cat.dom(e2),
                "arrows do not form a triangle"
            );
            premise!(compose(cat, e2, f)? == *e1, "e2∘f != e1");
            premise!(ctx.member(e1)? && ctx.member(e2)?, "e1 or e2 is not in E");
            let k1 = ctx.kernel(e1)?;
            let k2 = ctx.kernel(e2)?;
            let t = cat
                .lift_raw(&k2, &cat.compose_raw(f, &k1))
                .ok_or_else(|| CatError::Inconsistency("f∘ker e1 does not lift through ker e2".into()))?;
            premise!(cat.is_iso(&t), "the induced Ker(e1) -> Ker(e2) is not an isomorphism");
            for (e, _) in cat.mono_factorizations(f)? {
                if ctx.member(&e)? {
                    return Ok(Outcome::Holds);
                }
            }
            Ok(Outcome::Fails(format!(
                "f = {} has no factorization m∘e with m mono and e in E",
                show(f)
            )))
        }
    }
}
