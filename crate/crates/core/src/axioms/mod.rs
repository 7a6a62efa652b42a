//! Bounded checkers for the relative homological axioms and the four
//! auxiliary conditions, least-witness search and single-instance checks.
//!
//! Axiom ids (`a`–`g` and four named conditions):
//!
//! | id | statement |
//! |----|-----------|
//! | `a` | E is stable under pullback |
//! | `b` | every arrow of E is a normal epi |
//! | `c` | E-short-five lemma |
//! | `d` | E is closed under composition |
//! | `e` | `f ∈ E` and `gf ∈ E` give `g ∈ E` |
//! | `f` | `f = em` with `e ∈ E`, `m` mono, refactors as `m'e'` with `e' ∈ E`, `m'` mono |
//! | `g` | kernel comparison: `f, f', u ∈ E` give `w ∈ E` |
//! | `regular` | every arrow of E is a regular epi |
//! | `cokerker` | `f ∈ E` gives `coker(ker f) ∈ E` |
//! | `hofmann` | relative Hofmann axiom |
//! | `kerfactor` | `Ker e1 ≅ Ker e2` along `f` gives `f = me` with `e ∈ E`, `m` mono |

mod eval;
pub mod theorems;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::category::PointedCategory;
use crate::eclass::{member, EClass};
use crate::error::{CatError, Result};

pub use eval::arrow_names;
use eval::{evaluate, Ctx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomId {
    PullbackStable,
    NormalEpi,
    ShortFive,
    Composition,
    RightCancel,
    Factorization,
    KernelComparison,
    RegularEpi,
    CokerKer,
    Hofmann,
    KernelFactor,
}

impl AxiomId {
    pub const ALL: [AxiomId; 11] = [
        AxiomId::PullbackStable,
        AxiomId::NormalEpi,
        AxiomId::ShortFive,
        AxiomId::Composition,
        AxiomId::RightCancel,
        AxiomId::Factorization,
        AxiomId::KernelComparison,
        AxiomId::RegularEpi,
        AxiomId::CokerKer,
        AxiomId::Hofmann,
        AxiomId::KernelFactor,
    ];

    pub fn id(self) -> &'static str {
        match self {
            AxiomId::PullbackStable => "a",
            AxiomId::NormalEpi => "b",
            AxiomId::ShortFive => "c",
            AxiomId::Composition => "d",
            AxiomId::RightCancel => "e",
            AxiomId::Factorization => "f",
            AxiomId::KernelComparison => "g",
            AxiomId::RegularEpi => "regular",
            AxiomId::CokerKer => "cokerker",
            AxiomId::Hofmann => "hofmann",
            AxiomId::KernelFactor => "kerfactor",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            AxiomId::PullbackStable => "E is pullback stable",
            AxiomId::NormalEpi => "every morphism in E is a normal epimorphism",
            AxiomId::ShortFive => "E-short-five lemma",
            AxiomId::Composition => "E is closed under composition",
            AxiomId::RightCancel => "f in E and gf in E imply g in E",
            AxiomId::Factorization => "(E-epi after mono) refactors as (mono after E)",
            AxiomId::KernelComparison => "kernel comparison: f, f', u in E imply w in E",
            AxiomId::RegularEpi => "every morphism in E is a regular epimorphism",
            AxiomId::CokerKer => "f in E implies coker(ker f) in E",
            AxiomId::Hofmann => "relative Hofmann axiom",
            AxiomId::KernelFactor => "equal kernels give an (E, mono) factorization",
        }
    }

    /// Parses `all` or a comma-separated list of ids.
    pub fn parse_list(s: &str) -> Result<Vec<AxiomId>> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        s.split(',').map(|t| t.trim().parse()).collect()
    }
}

impl FromStr for AxiomId {
    type Err = CatError;

    fn from_str(s: &str) -> Result<Self> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| CatError::input(format!("unknown axiom id `{s}`")))
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    HoldsUpToBound,
    Fails,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::HoldsUpToBound => "holds-up-to-bound",
            Status::Fails => "fails",
            Status::Inapplicable => "inapplicable",
        })
    }
}

/// Result of one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails(String),
    /// A limit or cokernel the configuration needs does not exist.
    Skipped(String),
    /// The configuration does not satisfy the axiom's hypotheses.
    Premise(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<M> {
    pub arrows: Vec<(String, M)>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<M> {
    pub axiom: AxiomId,
    pub status: Status,
    pub witness: Option<Witness<M>>,
    /// Configurations evaluated. Configurations whose conclusion holds
    /// outright (Hofmann squares with `w` already a normal mono) are not
    /// enumerated and not counted.
    pub instances_checked: u64,
    pub skipped: u64,
    pub bound: String,
}

struct HomSet<M> {
    arrows: Vec<M>,
    in_e: Vec<bool>,
    mono: Vec<bool>,
}

/// The objects up to a size bound with their hom-sets and E-membership,
/// computed once and shared by every axiom check.
pub struct Universe<'a, C: PointedCategory> {
    cat: &'a C,
    class: &'a EClass<C>,
    objects: Vec<C::Obj>,
    sizes: Vec<usize>,
    homs: Vec<Vec<HomSet<C::Mor>>>,
    membership: HashMap<C::Mor, bool>,
    /// Position of every arrow in its hom-set listing.
    position: HashMap<C::Mor, usize>,
    kernels: OnceLock<HashMap<C::Mor, C::Mor>>,
    normal_monos: OnceLock<Result<Vec<Vec<Vec<bool>>>>>,
    bound: String,
}

type Key = (usize, Vec<usize>, Vec<usize>, usize);

struct Tally<M> {
    checked: u64,
    skipped: u64,
    failure: Option<(Key, Witness<M>)>,
}

impl<M> Tally<M> {
    fn empty() -> Self {
        Tally {
            checked: 0,
            skipped: 0,
            failure: None,
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.failure = match (self.failure, other.failure) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }
}

impl<'a, C: PointedCategory> Universe<'a, C> {
    pub fn new(cat: &'a C, class: &'a EClass<C>, max_size: usize) -> Result<Self> {
        let objects = cat.objects_up_to(max_size)?;
        let n = objects.len();
        let sizes = objects.iter().map(|o| cat.object_size(o)).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let sets: Vec<HomSet<C::Mor>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let arrows = cat.homs(&objects[i], &objects[j])?;
                let in_e = arrows.iter().map(|f| member(cat, class, f)).collect::<Result<Vec<_>>>()?;
                let mono = arrows.iter().map(|f| cat.is_mono(f)).collect();
                Ok(HomSet { arrows, in_e, mono })
            })
            .collect::<Result<_>>()?;
        let mut membership = HashMap::new();
        let mut position = HashMap::new();
        for s in &sets {
            for (i, (f, &b)) in s.arrows.iter().zip(&s.in_e).enumerate() {
                membership.insert(f.clone(), b);
                position.insert(f.clone(), i);
            }
        }
        let mut it = sets.into_iter();
        let homs = (0..n).map(|_| it.by_ref().take(n).collect()).collect();
        let bound = if cat.backend() == "tablecat" {
            format!("all {n} objects")
        } else {
            format!("objects of size <= {max_size} ({n} objects)")
        };
        Ok(Universe {
            cat,
            class,
            objects,
            sizes,
            homs,
            membership,
            position,
            kernels: OnceLock::new(),
            normal_monos: OnceLock::new(),
            bound,
        })
    }

    pub fn objects(&self) -> &[C::Obj] {
        &self.objects
    }

    pub fn bound(&self) -> &str {
        &self.bound
    }

    fn ctx(&self) -> Ctx<'_, C> {
        Ctx {
            cat: self.cat,
            class: self.class,
            cache: Some(&self.membership),
            kernels: Some(self.kernels()),
        }
    }

    /// Kernel inclusions of the arrows in E (those that have one).
    fn kernels(&self) -> &HashMap<C::Mor, C::Mor> {
        self.kernels.get_or_init(|| {
            let e: Vec<&C::Mor> = self.membership.iter().filter(|p| *p.1).map(|p| p.0).collect();
            e.into_par_iter()
                .filter_map(|f| self.cat.kernel(f).ok().map(|k| (f.clone(), k.incl)))
                .collect()
        })
    }

    fn in_e(&self, f: &C::Mor) -> bool {
        self.membership.get(f).copied().unwrap_or(false)
    }

    fn pos(&self, f: &C::Mor) -> usize {
        self.position[f]
    }

    fn normal_monos(&self) -> Result<&Vec<Vec<Vec<bool>>>> {
        self.normal_monos
            .get_or_init(|| {
                self.homs
                    .par_iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| s.arrows.iter().map(|f| self.cat.is_normal_mono(f)).collect())
                            .collect()
                    })
                    .collect()
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn e_arrows(&self, i: usize, j: usize) -> impl Iterator<Item = &C::Mor> {
        let s = &self.homs[i][j];
        s.arrows.iter().zip(&s.in_e).filter(|p| *p.1).map(|p| p.0)
    }

    fn mono_arrows(&self, i: usize, j: usize) -> impl Iterator<Item = &C::Mor> {
        let s = &self.homs[i][j];
        s.arrows.iter().zip(&s.mono).filter(|p| *p.1).map(|p| p.0)
    }

    fn all_arrows(&self, i: usize, j: usize) -> impl Iterator<Item = &C::Mor> {
        self.homs[i][j].arrows.iter()
    }

    /// Candidate configurations for one tuple of universe objects, in
    /// enumeration order. Cheap premises are filtered here; `evaluate`
    /// re-checks all of them.
    fn configurations(&self, axiom: AxiomId, t: &[usize]) -> Result<Vec<Vec<C::Mor>>> {
        use AxiomId::*;
        let cat = self.cat;
        let mut out = vec![];
        match axiom {
            // tuple (A, B, C): f: A -> B in E, g: C -> B
            PullbackStable => {
                for f in self.e_arrows(t[0], t[1]) {
                    for g in self.all_arrows(t[2], t[1]) {
                        out.push(vec![f.clone(), g.clone()]);
                    }
                }
            }
            // tuple (A, B)
            NormalEpi | RegularEpi | CokerKer => {
                for f in self.e_arrows(t[0], t[1]) {
                    out.push(vec![f.clone()]);
                }
            }
            // tuple (B, A', A): f: A -> B, f': A' -> B, w: A -> A'; f = f'∘w
            ShortFive | KernelComparison => {
                let (b, a2, a) = (t[0], t[1], t[2]);
                let mut keyed = vec![];
                for f2 in self.e_arrows(a2, b) {
                    for w in self.all_arrows(a, a2) {
                        let f = cat.compose_raw(f2, w);
                        if self.in_e(&f) {
                            keyed.push(([self.pos(&f), self.pos(f2), self.pos(w)], vec![f, f2.clone(), w.clone()]));
                        }
                    }
                }
                return Ok(sorted(keyed));
            }
            // tuple (A, B, C): f: A -> B in E, g: B -> C
            Composition | RightCancel => {
                for f in self.e_arrows(t[0], t[1]) {
                    for g in self.all_arrows(t[1], t[2]) {
                        out.push(vec![f.clone(), g.clone()]);
                    }
                }
            }
            // tuple (X, Y, Z): m: X -> Y mono, e: Y -> Z in E
            Factorization => {
                for m in self.mono_arrows(t[0], t[1]) {
                    for e in self.e_arrows(t[1], t[2]) {
                        out.push(vec![m.clone(), e.clone()]);
                    }
                }
            }
            // tuple (A, B, A', B'): f: A -> B, w: A -> A', v: B -> B', f': A' -> B'.
            // Squares whose w is already a normal mono hold outright and are
            // not enumerated; f is determined by v∘f = f'∘w since v is mono.
            Hofmann => {
                let (a, b, a2, b2) = (t[0], t[1], t[2], t[3]);
                let nm = self.normal_monos()?;
                let vs: Vec<&C::Mor> = self.homs[b][b2]
                    .arrows
                    .iter()
                    .zip(&nm[b][b2])
                    .filter(|p| *p.1)
                    .map(|p| p.0)
                    .collect();
                if vs.is_empty() {
                    return Ok(out);
                }
                let kernels = self.kernels();
                let mut keyed = vec![];
                for (w, _) in self.homs[a][a2].arrows.iter().zip(&nm[a][a2]).filter(|p| !*p.1) {
                    if !cat.is_mono(w) {
                        continue;
                    }
                    for f2 in self.e_arrows(a2, b2) {
                        match kernels.get(f2) {
                            Some(k2) if cat.lift_raw(w, k2).is_none() => continue,
                            _ => {}
                        }
                        let f2w = cat.compose_raw(f2, w);
                        for v in &vs {
                            let Some(f) = cat.lift_raw(v, &f2w) else { continue };
                            if self.in_e(&f) {
                                let key = [self.pos(&f), self.pos(w), self.pos(v), self.pos(f2)];
                                keyed.push((key, vec![f, w.clone(), (*v).clone(), f2.clone()]));
                            }
                        }
                    }
                }
                return Ok(sorted(keyed));
            }
            // tuple (A, B, C): e1: A -> C, e2: B -> C, f: A -> B; e1 = e2∘f
            KernelFactor => {
                let (a, b, c) = (t[0], t[1], t[2]);
                let mut keyed = vec![];
                for e2 in self.e_arrows(b, c) {
                    for f in self.all_arrows(a, b) {
                        let e1 = cat.compose_raw(e2, f);
                        if self.in_e(&e1) {
                            keyed.push(([self.pos(&e1), self.pos(e2), self.pos(f)], vec![e1, e2.clone(), f.clone()]));
                        }
                    }
                }
                return Ok(sorted(keyed));
            }
        }
        Ok(out)
    }

    fn arity(axiom: AxiomId) -> usize {
        use AxiomId::*;
        match axiom {
            NormalEpi | RegularEpi | CokerKer => 2,
            Hofmann => 4,
            _ => 3,
        }
    }

    /// Runs every configuration of `axiom` over the universe. The reported
    /// witness is the least failing configuration by (total object size,
    /// object sizes in configuration order, object indices, position).
    pub fn check(&self, axiom: AxiomId) -> Result<Verdict<C::Mor>> {
        let n = self.objects.len();
        let k = Self::arity(axiom);
        let tuples: Vec<Vec<usize>> = (0..n.pow(k as u32))
            .map(|mut code| {
                let mut t = vec![0; k];
                for slot in t.iter_mut().rev() {
                    *slot = code % n;
                    code /= n;
                }
                t
            })
            .collect();
        let ctx = self.ctx();
        let names = arrow_names(axiom);
        let tally = tuples
            .par_iter()
            .map(|t| -> Result<Tally<C::Mor>> {
                let mut tally = Tally::empty();
                for (pos, cfg) in self.configurations(axiom, t)?.into_iter().enumerate() {
                    match evaluate(&ctx, axiom, &cfg)? {
                        Outcome::Holds => tally.checked += 1,
                        Outcome::Fails(reason) => {
                            tally.checked += 1;
                            if tally.failure.is_none() {
                                let sizes: Vec<usize> = t.iter().map(|&i| self.sizes[i]).collect();
                                let key = (sizes.iter().sum(), sizes, t.clone(), pos);
                                let arrows = names.iter().map(|s| s.to_string()).zip(cfg).collect();
                                tally.failure = Some((key, Witness { arrows, reason }));
                            }
                        }
                        Outcome::Skipped(_) => tally.skipped += 1,
                        Outcome::Premise(_) => {}
                    }
                }
                Ok(tally)
            })
            .try_reduce(Tally::empty, |a, b| Ok(a.merge(b)))?;
        let status = if tally.failure.is_some() {
            Status::Fails
        } else if tally.checked == 0 && tally.skipped > 0 {
            Status::Inapplicable
        } else {
            Status::HoldsUpToBound
        };
        Ok(Verdict {
            axiom,
            status,
            witness: tally.failure.map(|f| f.1),
            instances_checked: tally.checked,
            skipped: tally.skipped,
            bound: self.bound.clone(),
        })
    }
}

/// Configurations ordered by their arrows' positions in the hom-set listings.
fn sorted<K: Ord, M>(mut keyed: Vec<(K, Vec<M>)>) -> Vec<Vec<M>> {
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    keyed.into_iter().map(|p| p.1).collect()
}

pub fn check_axiom<C: PointedCategory>(cat: &C, class: &EClass<C>, axiom: AxiomId, max_size: usize) -> Result<Verdict<C::Mor>> {
    Universe::new(cat, class, max_size)?.check(axiom)
}

pub fn search_counterexample<C: PointedCategory>(
    cat: &C,
    class: &EClass<C>,
    axiom: AxiomId,
    max_size: usize,
) -> Result<Option<Witness<C::Mor>>> {
    Ok(check_axiom(cat, class, axiom, max_size)?.witness)
}

/// Re-evaluates one configuration in isolation (no shared caches).
pub fn recheck<C: PointedCategory>(cat: &C, class: &EClass<C>, axiom: AxiomId, arrows: &[C::Mor]) -> Result<Outcome> {
    let ctx = Ctx {
        cat,
        class,
        cache: None,
        kernels: None,
    };
    evaluate(&ctx, axiom, arrows)
}

/// Single short-five diagram `K -k-> A -f-> B` over `K -k'-> A' -f'-> B`
/// with `w: A -> A'`. Errors name the first premise that fails; otherwise
/// returns whether `w` is an isomorphism.
pub fn check_short_five_instance<C: PointedCategory>(
    cat: &C,
    class: &EClass<C>,
    k: &C::Mor,
    f: &C::Mor,
    k2: &C::Mor,
    f2: &C::Mor,
    w: &C::Mor,
) -> Result<bool> {
    use crate::category::compose;
    let fail = |msg: &str| Err(CatError::hypothesis(msg.to_string()));
    if cat.dom(k) != cat.dom(k2) {
        return fail("k and k' have different domains");
    }
    if compose(cat, w, k)? != *k2 {
        return fail("w∘k != k'");
    }
    if compose(cat, f2, w)? != *f {
        return fail("f'∘w != f");
    }
    for (kk, ff, label) in [(k, f, "k is not a kernel of f"), (k2, f2, "k' is not a kernel of f'")] {
        let canon = cat.kernel(ff)?.incl;
        let is_kernel = cat.is_mono(kk)
            && crate::category::is_zero(cat, &compose(cat, ff, kk)?)
            && cat.lift_raw(&canon, kk).is_some_and(|t| cat.is_iso(&t));
        if !is_kernel {
            return fail(label);
        }
    }
    if !member(cat, class, f)? {
        return fail("f is not in E");
    }
    if !member(cat, class, f2)? {
        return fail("f' is not in E");
    }
    Ok(cat.is_iso(w))
}
