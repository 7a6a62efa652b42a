//! Element-chase oracle for finite abelian groups. Works only with element
//! maps and coordinate arithmetic, never with the engine's kernels,
//! cokernels or pullbacks.

#![allow(dead_code)]

use std::collections::BTreeSet;

use relhom_core::concrete::Concrete;
use relhom_core::finab::{FinAb, FinAbMorphism, FinAbObject};
use relhom_core::lemmas::{GridInput, SnakeInput};
use relhom_core::PointedCategory;

type Set = BTreeSet<usize>;

pub fn add(a: &FinAbObject, x: usize, y: usize) -> usize {
    let (cx, cy) = (a.decode(x), a.decode(y));
    let sum: Vec<u64> = cx.iter().zip(&cy).zip(a.factors()).map(|((p, q), d)| (p + q) % d).collect();
    a.encode(&sum)
}

pub fn neg(a: &FinAbObject, x: usize) -> usize {
    let c: Vec<u64> = a.decode(x).iter().zip(a.factors()).map(|(p, d)| (d - p) % d).collect();
    a.encode(&c)
}

fn all(a: &FinAbObject) -> Set {
    (0..a.order()).collect()
}

pub fn apply(f: &FinAbMorphism, x: usize) -> usize {
    FinAb.apply(f, x)
}

pub fn kernel(f: &FinAbMorphism) -> Set {
    all(&f.dom).into_iter().filter(|&x| apply(f, x) == 0).collect()
}

pub fn image_of(f: &FinAbMorphism, s: &Set) -> Set {
    s.iter().map(|&x| apply(f, x)).collect()
}

pub fn image(f: &FinAbMorphism) -> Set {
    image_of(f, &all(&f.dom))
}

/// `s + t` inside `a`.
fn sum(a: &FinAbObject, s: &Set, t: &Set) -> Set {
    s.iter().flat_map(|&x| t.iter().map(move |&y| add(a, x, y))).collect()
}

/// Plain exactness `image(f) = kernel(g)`.
pub fn exact_at(f: &FinAbMorphism, g: &FinAbMorphism) -> bool {
    image(f) == kernel(g)
}

/// A preimage of `y` under `f`, if any.
fn preimage(f: &FinAbMorphism, y: usize) -> Option<usize> {
    (0..f.dom.order()).find(|&x| apply(f, x) == y)
}

/// `δ(c)` for `c ∈ Ker(w)`, as an element of `A'` (defined modulo `u(A)`).
pub fn chase(s: &SnakeInput<FinAbMorphism>, c: usize) -> usize {
    let b = preimage(&s.g, c).expect("g is onto");
    preimage(&s.f2, apply(&s.v, b)).expect("v(b) lies in the image of f'")
}

/// Exactness of the six-term sequence at Ker(v), Ker(w), Coker(u), Coker(v),
/// decided by element chasing.
pub fn snake_exactness(s: &SnakeInput<FinAbMorphism>) -> [bool; 4] {
    let (a2, b2) = (s.f2.dom.clone(), s.f2.cod.clone());
    let (ku, kv, kw) = (kernel(&s.u), kernel(&s.v), kernel(&s.w));
    let (ua, vb, wc) = (image(&s.u), image(&s.v), image(&s.w));
    let at_kv = image_of(&s.f, &ku) == kv.intersection(&kernel(&s.g)).copied().collect();
    let at_kw = image_of(&s.g, &kv) == kw.iter().copied().filter(|&c| ua.contains(&chase(s, c))).collect();
    let deltas: Set = kw.iter().map(|&c| chase(s, c)).collect();
    let at_cu = sum(&a2, &deltas, &ua) == all(&a2).into_iter().filter(|&x| vb.contains(&apply(&s.f2, x))).collect();
    let at_cv = sum(&b2, &image(&s.f2), &vb) == all(&b2).into_iter().filter(|&y| wc.contains(&apply(&s.g2, y))).collect();
    [at_kv, at_kw, at_cu, at_cv]
}

/// `0 -> A -f-> B -g-> C -> 0` exact, elementwise.
pub fn short_exact(f: &FinAbMorphism, g: &FinAbMorphism) -> bool {
    kernel(f).len() == 1 && image(f) == kernel(g) && image(g).len() == g.cod.order()
}

pub fn grid_rows(s: &GridInput<FinAbMorphism>) -> (bool, bool) {
    (short_exact(&s.f, &s.g), short_exact(&s.f3, &s.g3))
}

/// The snake hypotheses, elementwise: commuting grid, exact rows as drawn.
pub fn snake_valid(s: &SnakeInput<FinAbMorphism>) -> bool {
    let comm = |p: &FinAbMorphism, q: &FinAbMorphism, r: &FinAbMorphism, t: &FinAbMorphism| {
        (0..q.dom.order()).all(|x| apply(p, apply(q, x)) == apply(r, apply(t, x)))
    };
    comm(&s.f2, &s.u, &s.v, &s.f)
        && comm(&s.g2, &s.v, &s.w, &s.g)
        && exact_at(&s.f, &s.g)
        && image(&s.g).len() == s.g.cod.order()
        && kernel(&s.f2).len() == 1
        && exact_at(&s.f2, &s.g2)
}

pub fn subtract(a: &FinAbObject, x: usize, y: usize) -> usize {
    add(a, x, neg(a, y))
}

/// Sanity for the engine's kernel object of `w`: its inclusion is injective
/// with image `Ker(w)`.
pub fn is_kernel_inclusion(k: &FinAbMorphism, w: &FinAbMorphism) -> bool {
    kernel(k).len() == 1 && image(k) == kernel(w) && FinAb.cod(k) == FinAb.dom(w)
}

/// `<v', g'>: B' -> B'' ×_{C''} C'` is onto, counted elementwise.
pub fn grid_pairing_onto(s: &GridInput<FinAbMorphism>) -> bool {
    let hit: BTreeSet<(usize, usize)> = (0..s.v2.dom.order()).map(|b| (apply(&s.v2, b), apply(&s.g2, b))).collect();
    let pullback = (0..s.g3.dom.order())
        .flat_map(|b| (0..s.w2.dom.order()).map(move |c| (b, c)))
        .filter(|&(b, c)| apply(&s.g3, b) == apply(&s.w2, c))
        .count();
    hit.len() == pullback
}
