//! Element-level machinery shared by the backends whose objects have
//! underlying finite sets (`finab`, `fingrp`, `pset`). Elements are indices
//! `0..order`, with index 0 the basepoint / identity.

use std::collections::HashMap;

use crate::category::{PointedCategory, Pullback};
use crate::error::Result;

pub trait Concrete: PointedCategory {
    fn order(&self, a: &Self::Obj) -> usize;

    fn apply(&self, f: &Self::Mor, x: usize) -> usize;

    /// Builds the arrow with the given element map. The caller guarantees the
    /// map is a structure-preserving map `dom -> cod`.
    fn from_map_unchecked(&self, dom: &Self::Obj, cod: &Self::Obj, map: &[usize]) -> Self::Mor;

    /// Image subobject of `f` with its inclusion into `cod(f)`.
    fn image(&self, f: &Self::Mor) -> (Self::Obj, Self::Mor);

    fn element_map(&self, f: &Self::Mor) -> Vec<usize> {
        let n = self.order(&self.dom(f));
        (0..n).map(|x| self.apply(f, x)).collect()
    }
}

pub fn is_injective<C: Concrete + ?Sized>(cat: &C, f: &C::Mor) -> bool {
    let mut seen = vec![false; cat.order(&cat.cod(f))];
    for y in cat.element_map(f) {
        if std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    true
}

pub fn is_surjective<C: Concrete + ?Sized>(cat: &C, f: &C::Mor) -> bool {
    let mut seen = vec![false; cat.order(&cat.cod(f))];
    for y in cat.element_map(f) {
        seen[y] = true;
    }
    seen.into_iter().all(|b| b)
}

pub fn lift<C: Concrete + ?Sized>(cat: &C, m: &C::Mor, f: &C::Mor) -> Option<C::Mor> {
    let mut preimage = vec![usize::MAX; cat.order(&cat.cod(m))];
    for (x, y) in cat.element_map(m).into_iter().enumerate() {
        if preimage[y] == usize::MAX {
            preimage[y] = x;
        }
    }
    let map = cat
        .element_map(f)
        .into_iter()
        .map(|y| match preimage[y] {
            usize::MAX => None,
            x => Some(x),
        })
        .collect::<Option<Vec<_>>>()?;
    Some(cat.from_map_unchecked(&cat.dom(f), &cat.dom(m), &map))
}

pub fn factor<C: Concrete + ?Sized>(cat: &C, e: &C::Mor, f: &C::Mor) -> Option<C::Mor> {
    let mut map = vec![usize::MAX; cat.order(&cat.cod(e))];
    for (ex, fx) in cat.element_map(e).into_iter().zip(cat.element_map(f)) {
        if map[ex] == usize::MAX {
            map[ex] = fx;
        } else if map[ex] != fx {
            return None;
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(cat.from_map_unchecked(&cat.cod(e), &cat.cod(f), &map))
}

pub fn pair<C: Concrete + ?Sized>(
    cat: &C,
    pb: &Pullback<C>,
    u: &C::Mor,
    v: &C::Mor,
) -> Option<C::Mor> {
    let index: HashMap<(usize, usize), usize> = cat
        .element_map(&pb.p1)
        .into_iter()
        .zip(cat.element_map(&pb.p2))
        .enumerate()
        .map(|(p, xy)| (xy, p))
        .collect();
    let map = cat
        .element_map(u)
        .into_iter()
        .zip(cat.element_map(v))
        .map(|xy| index.get(&xy).copied())
        .collect::<Option<Vec<_>>>()?;
    Some(cat.from_map_unchecked(&cat.dom(u), &pb.obj, &map))
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// `f` is the coequalizer of its kernel pair, computed elementwise: the
/// equivalence relation generated by the kernel pair must coincide with the
/// fibres of `f`, and `f` must reach every element of its codomain.
pub fn is_coequalizer_of_kernel_pair<C: Concrete + ?Sized>(cat: &C, f: &C::Mor) -> Result<bool> {
    if !is_surjective(cat, f) {
        return Ok(false);
    }
    let kp = cat.pullback(f, f)?;
    let n = cat.order(&cat.dom(f));
    let mut parent: Vec<usize> = (0..n).collect();
    for (a, b) in cat
        .element_map(&kp.p1)
        .into_iter()
        .zip(cat.element_map(&kp.p2))
    {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let fmap = cat.element_map(f);
    let mut class_image: HashMap<usize, usize> = HashMap::new();
    let mut image_class: HashMap<usize, usize> = HashMap::new();
    for (x, &fx) in fmap.iter().enumerate() {
        let r = find(&mut parent, x);
        if *class_image.entry(r).or_insert(fx) != fx || *image_class.entry(fx).or_insert(r) != r {
            return Ok(false);
        }
    }
    Ok(image_class.len() == cat.order(&cat.cod(f)))
}

pub fn image_factorization<C: Concrete + ?Sized>(
    cat: &C,
    f: &C::Mor,
) -> Vec<(C::Mor, C::Mor)> {
    let (_, incl) = cat.image(f);
    let e = lift(cat, &incl, f).expect("every arrow lifts through its image");
    vec![(e, incl)]
}
