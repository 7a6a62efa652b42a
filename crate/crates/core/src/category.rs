//! The pointed-category contract every backend implements, plus the generic
//! constructions (kernel pairs, pairings into pullbacks, lifts, induced maps)
//! that the axiom checkers and the lemma engines are written against.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{CatError, Result};

/// A kernel `incl: obj -> dom(f)` of some arrow `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelData<O, M> {
    pub obj: O,
    pub incl: M,
}

/// A cokernel `proj: cod(f) -> obj` of some arrow `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelData<O, M> {
    pub obj: O,
    pub proj: M,
}

/// Pullback of the cospan `left: X -> Z <- Y :right`, with `p1: obj -> X` and
/// `p2: obj -> Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackData<O, M> {
    pub obj: O,
    pub p1: M,
    pub p2: M,
    pub left: M,
    pub right: M,
}

pub type Kernel<C> = KernelData<<C as PointedCategory>::Obj, <C as PointedCategory>::Mor>;
pub type Cokernel<C> = CokernelData<<C as PointedCategory>::Obj, <C as PointedCategory>::Mor>;
pub type Pullback<C> = PullbackData<<C as PointedCategory>::Obj, <C as PointedCategory>::Mor>;

/// A finite pointed category with (possibly partial) finite limits and cokernels.
///
/// All operations are pure. The `*_raw` methods skip precondition checks; use
/// the free functions in this module for the checked versions.
pub trait PointedCategory: Sync {
    type Obj: Clone + Eq + Hash + Debug + Send + Sync;
    type Mor: Clone + Eq + Hash + Debug + Send + Sync;

    /// Short backend tag (`finab`, `fingrp`, `pset`, `tablecat`).
    fn backend(&self) -> &'static str;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    fn zero_object(&self) -> Self::Obj;
    fn zero_morphism(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;

    /// `g ∘ f`; callers guarantee `cod(f) = dom(g)`.
    fn compose_raw(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    fn kernel(&self, f: &Self::Mor) -> Result<Kernel<Self>>;
    fn cokernel(&self, f: &Self::Mor) -> Result<Cokernel<Self>>;
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Pullback<Self>>;

    /// Every arrow `a -> b`, in the backend's deterministic order.
    fn homs(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>>;

    /// The bounded object universe used by the axiom checkers.
    fn objects_up_to(&self, bound: usize) -> Result<Vec<Self::Obj>>;

    /// Weight of an object in witness ordering (element count for the
    /// concrete backends).
    fn object_size(&self, a: &Self::Obj) -> usize;

    fn is_mono(&self, f: &Self::Mor) -> bool;
    fn is_epi(&self, f: &Self::Mor) -> bool;
    fn is_iso(&self, f: &Self::Mor) -> bool;

    /// The `h` with `m ∘ h = f`, when it exists. `m` is assumed mono.
    fn lift_raw(&self, m: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;

    /// The `h` with `h ∘ e = f`, when it exists. `e` is assumed epi.
    fn factor_raw(&self, e: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;

    /// The `t` with `p1 ∘ t = u` and `p2 ∘ t = v`, when it exists.
    fn pair_raw(&self, pb: &Pullback<Self>, u: &Self::Mor, v: &Self::Mor) -> Option<Self::Mor> {
        let src = self.dom(u);
        self.homs(&src, &pb.obj).ok()?.into_iter().find(|t| {
            self.compose_raw(&pb.p1, t) == *u && self.compose_raw(&pb.p2, t) == *v
        })
    }

    /// Regular epi: `f` is the coequalizer of its own kernel pair.
    fn is_regular_epi(&self, f: &Self::Mor) -> Result<bool>;

    /// Normal epi: the comparison `Coker(ker f) -> cod(f)` is an isomorphism.
    fn is_normal_epi(&self, f: &Self::Mor) -> Result<bool> {
        let k = self.kernel(f)?;
        let q = self.cokernel(&k.incl)?;
        Ok(match self.factor_raw(&q.proj, f) {
            Some(h) => self.is_iso(&h),
            None => false,
        })
    }

    /// Normal mono: `m` is (isomorphic to) the kernel of its cokernel.
    fn is_normal_mono(&self, m: &Self::Mor) -> Result<bool> {
        if !self.is_mono(m) {
            return Ok(false);
        }
        let c = self.cokernel(m)?;
        let k = self.kernel(&c.proj)?;
        Ok(match self.lift_raw(&k.incl, m) {
            Some(theta) => self.is_iso(&theta),
            None => false,
        })
    }

    /// A right inverse of `f`, found by exhaustive section search.
    fn split_section(&self, f: &Self::Mor) -> Result<Option<Self::Mor>> {
        let (a, b) = (self.dom(f), self.cod(f));
        let id = self.identity(&b);
        Ok(self
            .homs(&b, &a)?
            .into_iter()
            .find(|s| self.compose_raw(f, s) == id))
    }

    /// Factorizations `f = m ∘ e` with `m` mono, up to isomorphism of the
    /// middle object. Concrete backends return the image factorization only.
    fn mono_factorizations(&self, f: &Self::Mor) -> Result<Vec<(Self::Mor, Self::Mor)>>;

    /// Every kernel of `f` the backend distinguishes. Concrete backends
    /// return just the canonical one.
    fn all_kernels(&self, f: &Self::Mor) -> Result<Vec<Self::Mor>> {
        Ok(vec![self.kernel(f)?.incl])
    }

    fn all_cokernels(&self, f: &Self::Mor) -> Result<Vec<Self::Mor>> {
        Ok(vec![self.cokernel(f)?.proj])
    }

    fn all_pullbacks(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Vec<Pullback<Self>>> {
        Ok(vec![self.pullback(f, g)?])
    }

    fn show(&self, f: &Self::Mor) -> String {
        format!("{f:?}")
    }

    fn show_obj(&self, a: &Self::Obj) -> String {
        format!("{a:?}")
    }
}

pub fn is_zero<C: PointedCategory + ?Sized>(cat: &C, f: &C::Mor) -> bool {
    *f == cat.zero_morphism(&cat.dom(f), &cat.cod(f))
}

/// `g ∘ f`, checking that the arrows are composable.
pub fn compose<C: PointedCategory + ?Sized>(cat: &C, g: &C::Mor, f: &C::Mor) -> Result<C::Mor> {
    let (cod, dom) = (cat.cod(f), cat.dom(g));
    if cod != dom {
        return Err(CatError::Composability {
            f: cat.show(f),
            g: cat.show(g),
            cod: cat.show_obj(&cod),
            dom: cat.show_obj(&dom),
        });
    }
    Ok(cat.compose_raw(g, f))
}

/// Composite of a path given in traversal order: `[f, g, h]` is `h ∘ g ∘ f`.
pub fn compose_path<C: PointedCategory + ?Sized>(cat: &C, path: &[&C::Mor]) -> Result<C::Mor> {
    let mut it = path.iter();
    let first = it
        .next()
        .ok_or_else(|| CatError::input("empty composition path"))?;
    let mut acc = (*first).clone();
    for next in it {
        acc = compose(cat, next, &acc)?;
    }
    Ok(acc)
}

/// Pullback of `f` with itself; projections `r1 = p1`, `r2 = p2`.
pub fn kernel_pair<C: PointedCategory + ?Sized>(cat: &C, f: &C::Mor) -> Result<Pullback<C>> {
    cat.pullback(f, f)
}

/// The unique `t` into the pullback with `p1 ∘ t = u` and `p2 ∘ t = v`.
pub fn pair_into_pullback<C: PointedCategory + ?Sized>(
    cat: &C,
    u: &C::Mor,
    v: &C::Mor,
    pb: &Pullback<C>,
) -> Result<C::Mor> {
    if cat.dom(u) != cat.dom(v) {
        return Err(CatError::input("pairing: arrows have different domains"));
    }
    let lu = compose(cat, &pb.left, u)?;
    let rv = compose(cat, &pb.right, v)?;
    if lu != rv {
        return Err(CatError::hypothesis(format!(
            "pairing square does not commute: {} != {}",
            cat.show(&lu),
            cat.show(&rv)
        )));
    }
    cat.pair_raw(pb, u, v).ok_or_else(|| {
        CatError::Inconsistency("commuting cone has no mediating arrow into pullback".into())
    })
}

/// The unique `h` with `m ∘ h = f`, or `None` when `f` does not factor
/// through `m`. Errors when `m` is not a monomorphism.
pub fn lift_through_mono<C: PointedCategory + ?Sized>(
    cat: &C,
    m: &C::Mor,
    f: &C::Mor,
) -> Result<Option<C::Mor>> {
    if cat.cod(m) != cat.cod(f) {
        return Err(CatError::input("lift: codomains differ"));
    }
    if !cat.is_mono(m) {
        return Err(CatError::NotMono(cat.show(m)));
    }
    Ok(cat.lift_raw(m, f))
}

/// The unique `h` with `h ∘ e = f`, or `None`. Before factoring, checks
/// that `f` coequalizes the kernel pair of `e` (when that kernel pair exists).
pub fn factor_through_epi<C: PointedCategory + ?Sized>(
    cat: &C,
    e: &C::Mor,
    f: &C::Mor,
) -> Result<Option<C::Mor>> {
    if cat.dom(e) != cat.dom(f) {
        return Err(CatError::input("factor: domains differ"));
    }
    if !cat.is_epi(e) {
        return Err(CatError::NotEpi(cat.show(e)));
    }
    match kernel_pair(cat, e) {
        Ok(kp) => {
            if cat.compose_raw(f, &kp.p1) != cat.compose_raw(f, &kp.p2) {
                return Ok(None);
            }
        }
        Err(err) if err.is_missing_limit() => {}
        Err(err) => return Err(err),
    }
    Ok(cat.factor_raw(e, f))
}

/// Decided predicates of a single arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismProfile<M> {
    pub is_mono: bool,
    pub is_epi: bool,
    /// `None` when the section search could not be completed.
    pub is_split_epi: Option<bool>,
    pub is_regular_epi: bool,
    pub is_normal_epi: bool,
    pub is_iso: bool,
    pub is_normal_mono: bool,
    pub section: Option<M>,
}

pub fn classify<C: PointedCategory + ?Sized>(
    cat: &C,
    f: &C::Mor,
) -> Result<MorphismProfile<C::Mor>> {
    let (is_split_epi, section) = match cat.split_section(f) {
        Ok(s) => (Some(s.is_some()), s),
        Err(CatError::Budget(_)) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(MorphismProfile {
        is_mono: cat.is_mono(f),
        is_epi: cat.is_epi(f),
        is_split_epi,
        is_regular_epi: cat.is_regular_epi(f)?,
        is_normal_epi: cat.is_normal_epi(f)?,
        is_iso: cat.is_iso(f),
        is_normal_mono: cat.is_normal_mono(f)?,
        section,
    })
}

/// A commutative square
/// ```text
///   A --top--> B
///   |left      |right
///   v          v
///   A' -bot--> B'
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square<M> {
    pub top: M,
    pub bottom: M,
    pub left: M,
    pub right: M,
}

impl<M> Square<M> {
    pub fn new(top: M, bottom: M, left: M, right: M) -> Self {
        Square {
            top,
            bottom,
            left,
            right,
        }
    }
}

pub fn square_commutes<C: PointedCategory + ?Sized>(cat: &C, sq: &Square<C::Mor>) -> Result<bool> {
    Ok(compose(cat, &sq.right, &sq.top)? == compose(cat, &sq.bottom, &sq.left)?)
}

fn require_square<C: PointedCategory + ?Sized>(cat: &C, sq: &Square<C::Mor>) -> Result<()> {
    if !square_commutes(cat, sq)? {
        return Err(CatError::hypothesis(
            "square does not commute: right∘top != bottom∘left",
        ));
    }
    Ok(())
}

/// `Ker(left) -> Ker(right)`, the restriction of `top`.
pub fn induced_kernel_map<C: PointedCategory + ?Sized>(
    cat: &C,
    sq: &Square<C::Mor>,
) -> Result<C::Mor> {
    require_square(cat, sq)?;
    let ku = cat.kernel(&sq.left)?;
    let kv = cat.kernel(&sq.right)?;
    let through = cat.compose_raw(&sq.top, &ku.incl);
    cat.lift_raw(&kv.incl, &through)
        .ok_or_else(|| CatError::Inconsistency("kernel restriction does not lift".into()))
}

/// `Coker(left) -> Coker(right)`, induced by `bottom`.
pub fn induced_cokernel_map<C: PointedCategory + ?Sized>(
    cat: &C,
    sq: &Square<C::Mor>,
) -> Result<C::Mor> {
    require_square(cat, sq)?;
    let cu = cat.cokernel(&sq.left)?;
    let cv = cat.cokernel(&sq.right)?;
    let through = cat.compose_raw(&cv.proj, &sq.bottom);
    cat.factor_raw(&cu.proj, &through)
        .ok_or_else(|| CatError::Inconsistency("cokernel map does not factor".into()))
}

/// A finite labelled diagram with asserted commutativity equations. Paths are
/// arrow names in traversal order.
#[derive(Debug, Clone, Default)]
pub struct Diagram<M> {
    pub arrows: Vec<(String, M)>,
    pub equations: Vec<(Vec<String>, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagramVerdict {
    Holds,
    Fails { index: usize, equation: String },
}

fn path_label(path: &[String]) -> String {
    path.iter().rev().cloned().collect::<Vec<_>>().join("∘")
}

pub fn diagram_commutes<C: PointedCategory + ?Sized>(
    cat: &C,
    d: &Diagram<C::Mor>,
) -> Result<DiagramVerdict> {
    let names: HashMap<&str, &C::Mor> = d.arrows.iter().map(|(n, m)| (n.as_str(), m)).collect();
    let resolve = |path: &[String]| -> Result<C::Mor> {
        let arrows = path
            .iter()
            .map(|n| {
                names
                    .get(n.as_str())
                    .copied()
                    .ok_or_else(|| CatError::input(format!("unknown arrow `{n}` in equation")))
            })
            .collect::<Result<Vec<_>>>()?;
        compose_path(cat, &arrows)
    };
    for (index, (lhs, rhs)) in d.equations.iter().enumerate() {
        let (l, r) = (resolve(lhs)?, resolve(rhs)?);
        if cat.dom(&l) != cat.dom(&r) || cat.cod(&l) != cat.cod(&r) {
            return Err(CatError::input(format!(
                "equation {} relates non-parallel composites",
                index
            )));
        }
        if l != r {
            return Ok(DiagramVerdict::Fails {
                index,
                equation: format!("{} = {}", path_label(lhs), path_label(rhs)),
            });
        }
    }
    Ok(DiagramVerdict::Holds)
}
