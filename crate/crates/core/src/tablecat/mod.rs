//! Explicitly tabulated finite pointed categories. Objects and arrows are
//! indices; `comp[g][f]` is `g ∘ f` whenever `cod f = dom g`.
//!
//! Limits are found by exhaustive cone search and cached. Cokernels are
//! kernels in the opposite category, which is built alongside.

mod enumerate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::category::{Cokernel, Kernel, PointedCategory, Pullback, PullbackData};
use crate::error::{CatError, Result};

pub use enumerate::{canonical_encoding, enumerate_categories, MAX_ENUM_MORPHISMS};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// The raw tables. `validate` decides whether they form a pointed category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableData {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identities: Vec<usize>,
    pub comp: Vec<Vec<Option<usize>>>,
    /// Designated zero object; `None` means "least zero object, if any".
    pub zero: Option<usize>,
}

/// A diagram shape for limit search: `nodes[i]` is an object and each edge
/// `(i, j, arrow)` requires `arrow ∘ leg_i = leg_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LimitShape {
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCone {
    pub apex: usize,
    pub legs: Vec<usize>,
}

pub struct TableCategory {
    data: TableData,
    zero: usize,
    homs: Vec<Vec<Vec<usize>>>,
    zero_arrows: Vec<Vec<usize>>,
    op: Option<Box<TableCategory>>,
    limits: Mutex<HashMap<LimitShape, Vec<LimitCone>>>,
}

impl Clone for TableCategory {
    fn clone(&self) -> Self {
        Self::build(self.data.clone(), self.op.is_some()).expect("already validated")
    }
}

impl fmt::Debug for TableCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TableCategory({} objects, {} arrows)",
            self.data.objects.len(),
            self.data.arrows.len()
        )
    }
}

impl PartialEq for TableCategory {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

/// Checks the tables, returning the zero object used. Errors name the first
/// violation found.
pub fn validate(d: &TableData) -> Result<usize> {
    let (n, m) = (d.objects.len(), d.arrows.len());
    if n == 0 {
        return Err(CatError::input("category has no objects"));
    }
    for a in &d.arrows {
        if a.dom >= n || a.cod >= n {
            return Err(CatError::input(format!("arrow {} has an unknown endpoint", a.name)));
        }
    }
    if d.identities.len() != n {
        return Err(CatError::input("identity table does not cover every object"));
    }
    for (x, &i) in d.identities.iter().enumerate() {
        if i >= m || d.arrows[i].dom != x || d.arrows[i].cod != x {
            return Err(CatError::input(format!("identity of {} is not an endo-arrow on it", d.objects[x])));
        }
    }
    if d.comp.len() != m || d.comp.iter().any(|row| row.len() != m) {
        return Err(CatError::input("composition table is not square in the arrows"));
    }
    let name = |i: usize| d.arrows[i].name.as_str();
    for g in 0..m {
        for f in 0..m {
            let composable = d.arrows[f].cod == d.arrows[g].dom;
            match (composable, d.comp[g][f]) {
                (true, None) => {
                    return Err(CatError::input(format!("composite {}∘{} is missing", name(g), name(f))))
                }
                (false, Some(_)) => {
                    return Err(CatError::input(format!(
                        "composite {}∘{} given for non-composable arrows",
                        name(g),
                        name(f)
                    )))
                }
                (true, Some(h)) => {
                    if h >= m || d.arrows[h].dom != d.arrows[f].dom || d.arrows[h].cod != d.arrows[g].cod {
                        return Err(CatError::input(format!(
                            "composite {}∘{} has the wrong type",
                            name(g),
                            name(f)
                        )));
                    }
                }
                (false, None) => {}
            }
        }
    }
    for f in 0..m {
        let (a, b) = (d.arrows[f].dom, d.arrows[f].cod);
        if d.comp[f][d.identities[a]] != Some(f) || d.comp[d.identities[b]][f] != Some(f) {
            return Err(CatError::input(format!("identity law fails for {}", name(f))));
        }
    }
    for f in 0..m {
        for g in 0..m {
            let Some(gf) = d.comp[g][f] else { continue };
            for h in 0..m {
                let Some(hg) = d.comp[h][g] else { continue };
                if d.comp[h][gf] != d.comp[hg][f] {
                    return Err(CatError::input(format!(
                        "associativity fails for ({}, {}, {})",
                        name(h),
                        name(g),
                        name(f)
                    )));
                }
            }
        }
    }
    let mut hom_count = vec![vec![0usize; n]; n];
    for a in &d.arrows {
        hom_count[a.dom][a.cod] += 1;
    }
    let is_zero = |z: usize| (0..n).all(|x| hom_count[z][x] == 1 && hom_count[x][z] == 1);
    match d.zero {
        Some(z) if z < n && is_zero(z) => Ok(z),
        Some(z) if z < n => Err(CatError::input(format!(
            "no zero object: {} is not both initial and terminal",
            d.objects[z]
        ))),
        Some(_) => Err(CatError::input("no zero object: designated index out of range")),
        None => (0..n).find(|&z| is_zero(z)).ok_or_else(|| CatError::input("no zero object")),
    }
}

impl TableCategory {
    pub fn new(data: TableData) -> Result<Self> {
        Self::build(data, true)
    }

    fn build(data: TableData, with_op: bool) -> Result<Self> {
        let zero = validate(&data)?;
        let n = data.objects.len();
        let mut homs = vec![vec![vec![]; n]; n];
        for (i, a) in data.arrows.iter().enumerate() {
            homs[a.dom][a.cod].push(i);
        }
        let zero_arrows = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let to = homs[a][zero][0];
                        let from = homs[zero][b][0];
                        data.comp[from][to].expect("validated")
                    })
                    .collect()
            })
            .collect();
        let op = with_op.then(|| Box::new(Self::build(data.opposite(), false).expect("dual of a valid table")));
        Ok(TableCategory {
            data,
            zero,
            homs,
            zero_arrows,
            op,
            limits: Mutex::new(HashMap::new()),
        })
    }

    pub fn data(&self) -> &TableData {
        &self.data
    }

    pub fn object_count(&self) -> usize {
        self.data.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.data.arrows.len()
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.data.arrows[f]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.data.arrows.iter().position(|a| a.name == name)
    }

    pub fn object_by_name(&self, name: &str) -> Option<usize> {
        self.data.objects.iter().position(|o| o == name)
    }

    #[inline]
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.data.comp[g][f]
    }

    fn c(&self, g: usize, f: usize) -> usize {
        self.data.comp[g][f].expect("composable")
    }

    /// Every cone over `shape` with apex `apex`, legs in lexicographic order.
    pub fn cones(&self, shape: &LimitShape, apex: usize) -> Vec<Vec<usize>> {
        let k = shape.nodes.len();
        let mut out = vec![];
        let mut legs = vec![usize::MAX; k];
        self.cone_rec(shape, apex, 0, &mut legs, &mut out);
        out
    }

    fn cone_rec(&self, shape: &LimitShape, apex: usize, i: usize, legs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == legs.len() {
            out.push(legs.clone());
            return;
        }
        for &x in &self.homs[apex][shape.nodes[i]] {
            legs[i] = x;
            let ok = shape.edges.iter().all(|&(s, t, a)| {
                s.max(t) > i || self.c(a, legs[s]) == legs[t]
            });
            if ok {
                self.cone_rec(shape, apex, i + 1, legs, out);
            }
        }
    }

    /// All limit cones of `shape`, ordered by apex index then legs.
    pub fn find_all_limits(&self, shape: &LimitShape) -> Vec<LimitCone> {
        if let Some(hit) = self.limits.lock().expect("cache lock").get(shape) {
            return hit.clone();
        }
        let n = self.object_count();
        let all_cones: Vec<Vec<Vec<usize>>> = (0..n).map(|x| self.cones(shape, x)).collect();
        let mut found = vec![];
        for l in 0..n {
            for legs in &all_cones[l] {
                let universal = (0..n).all(|x| {
                    all_cones[x].iter().all(|cone| {
                        self.homs[x][l]
                            .iter()
                            .filter(|&&t| legs.iter().zip(cone).all(|(&leg, &c)| self.c(leg, t) == c))
                            .count()
                            == 1
                    })
                });
                if universal {
                    found.push(LimitCone {
                        apex: l,
                        legs: legs.clone(),
                    });
                }
            }
        }
        self.limits
            .lock()
            .expect("cache lock")
            .insert(shape.clone(), found.clone());
        found
    }

    pub fn find_limit(&self, shape: &LimitShape) -> Option<LimitCone> {
        self.find_all_limits(shape).into_iter().next()
    }

    fn kernel_shape(&self, f: usize) -> LimitShape {
        let a = &self.data.arrows[f];
        LimitShape {
            nodes: vec![a.dom, a.cod],
            edges: vec![(0, 1, f), (0, 1, self.zero_arrows[a.dom][a.cod])],
        }
    }

    fn kernel_cones(&self, f: usize) -> Vec<LimitCone> {
        self.find_all_limits(&self.kernel_shape(f))
    }

    fn cokernel_cones(&self, f: usize) -> Vec<LimitCone> {
        self.op.as_ref().expect("opposite is built").kernel_cones(f)
    }

    /// The table rendered as a serializable document.
    pub fn to_spec(&self) -> TableSpec {
        let d = &self.data;
        let name = |i: usize| d.arrows[i].name.clone();
        let mut compose = vec![];
        for g in 0..d.arrows.len() {
            for f in 0..d.arrows.len() {
                if let Some(h) = d.comp[g][f] {
                    if d.identities.contains(&f) || d.identities.contains(&g) {
                        continue;
                    }
                    compose.push([name(g), name(f), name(h)]);
                }
            }
        }
        TableSpec {
            objects: d.objects.clone(),
            zero: Some(d.objects[self.zero].clone()),
            arrows: d
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    dom: d.objects[a.dom].clone(),
                    cod: d.objects[a.cod].clone(),
                })
                .collect(),
            identities: d
                .identities
                .iter()
                .enumerate()
                .map(|(x, &i)| (d.objects[x].clone(), name(i)))
                .collect(),
            compose,
        }
    }
}

impl TableData {
    fn opposite(&self) -> TableData {
        let m = self.arrows.len();
        TableData {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    dom: a.cod,
                    cod: a.dom,
                })
                .collect(),
            identities: self.identities.clone(),
            comp: (0..m).map(|g| (0..m).map(|f| self.comp[f][g]).collect()).collect(),
            zero: self.zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// File form of a table category. Composites with an identity may be
/// omitted; every other composite must be listed as `[g, f, g∘f]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    pub arrows: Vec<ArrowSpec>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

impl TableSpec {
    pub fn build(&self) -> Result<TableCategory> {
        let obj = |s: &str| {
            self.objects
                .iter()
                .position(|o| o == s)
                .ok_or_else(|| CatError::input(format!("unknown object {s}")))
        };
        let mut arrows = vec![];
        for a in &self.arrows {
            if arrows.iter().any(|b: &Arrow| b.name == a.name) {
                return Err(CatError::input(format!("duplicate arrow name {}", a.name)));
            }
            arrows.push(Arrow {
                name: a.name.clone(),
                dom: obj(&a.dom)?,
                cod: obj(&a.cod)?,
            });
        }
        let arrow = |s: &str| {
            arrows
                .iter()
                .position(|a| a.name == s)
                .ok_or_else(|| CatError::input(format!("unknown arrow {s}")))
        };
        let mut identities = vec![usize::MAX; self.objects.len()];
        for (o, i) in &self.identities {
            identities[obj(o)?] = arrow(i)?;
        }
        if let Some(x) = identities.iter().position(|&i| i == usize::MAX) {
            return Err(CatError::input(format!("object {} has no identity", self.objects[x])));
        }
        let m = arrows.len();
        let mut comp = vec![vec![None; m]; m];
        for f in 0..m {
            comp[identities[arrows[f].cod]][f] = Some(f);
            comp[f][identities[arrows[f].dom]] = Some(f);
        }
        for [g, f, h] in &self.compose {
            let (g, f, h) = (arrow(g)?, arrow(f)?, arrow(h)?);
            match comp[g][f] {
                Some(prev) if prev != h => {
                    return Err(CatError::input(format!(
                        "conflicting composites for {}∘{}",
                        arrows[g].name, arrows[f].name
                    )))
                }
                _ => comp[g][f] = Some(h),
            }
        }
        let zero = self.zero.as_deref().map(obj).transpose()?;
        TableCategory::new(TableData {
            objects: self.objects.clone(),
            arrows,
            identities,
            comp,
            zero,
        })
    }
}

impl PointedCategory for TableCategory {
    type Obj = usize;
    type Mor = usize;

    fn backend(&self) -> &'static str {
        "tablecat"
    }

    fn dom(&self, f: &usize) -> usize {
        self.data.arrows[*f].dom
    }

    fn cod(&self, f: &usize) -> usize {
        self.data.arrows[*f].cod
    }

    fn identity(&self, a: &usize) -> usize {
        self.data.identities[*a]
    }

    fn zero_object(&self) -> usize {
        self.zero
    }

    fn zero_morphism(&self, a: &usize, b: &usize) -> usize {
        self.zero_arrows[*a][*b]
    }

    fn compose_raw(&self, g: &usize, f: &usize) -> usize {
        self.c(*g, *f)
    }

    fn kernel(&self, f: &usize) -> Result<Kernel<Self>> {
        let cone = self
            .kernel_cones(*f)
            .into_iter()
            .next()
            .ok_or_else(|| CatError::NoLimit(format!("kernel of {}", self.data.arrows[*f].name)))?;
        Ok(Kernel::<Self> {
            obj: cone.apex,
            incl: cone.legs[0],
        })
    }

    fn cokernel(&self, f: &usize) -> Result<Cokernel<Self>> {
        let cone = self
            .cokernel_cones(*f)
            .into_iter()
            .next()
            .ok_or_else(|| CatError::NoLimit(format!("cokernel of {}", self.data.arrows[*f].name)))?;
        Ok(Cokernel::<Self> {
            obj: cone.apex,
            proj: cone.legs[0],
        })
    }

    fn pullback(&self, f: &usize, g: &usize) -> Result<Pullback<Self>> {
        Ok(self.all_pullbacks(f, g)?.swap_remove(0))
    }

    fn all_pullbacks(&self, f: &usize, g: &usize) -> Result<Vec<Pullback<Self>>> {
        let (fa, ga) = (&self.data.arrows[*f], &self.data.arrows[*g]);
        if fa.cod != ga.cod {
            return Err(CatError::input("pullback legs have different codomains"));
        }
        let shape = LimitShape {
            nodes: vec![fa.dom, ga.dom, fa.cod],
            edges: vec![(0, 2, *f), (1, 2, *g)],
        };
        let cones = self.find_all_limits(&shape);
        if cones.is_empty() {
            return Err(CatError::NoLimit(format!("pullback of ({}, {})", fa.name, ga.name)));
        }
        Ok(cones
            .into_iter()
            .map(|cone| PullbackData {
                obj: cone.apex,
                p1: cone.legs[0],
                p2: cone.legs[1],
                left: *f,
                right: *g,
            })
            .collect())
    }

    fn homs(&self, a: &usize, b: &usize) -> Result<Vec<usize>> {
        Ok(self.homs[*a][*b].clone())
    }

    fn objects_up_to(&self, _bound: usize) -> Result<Vec<usize>> {
        Ok((0..self.object_count()).collect())
    }

    fn object_size(&self, _a: &usize) -> usize {
        1
    }

    fn is_mono(&self, f: &usize) -> bool {
        let a = self.dom(f);
        (0..self.object_count()).all(|x| {
            let hs = &self.homs[x][a];
            let mut images: Vec<usize> = hs.iter().map(|&g| self.c(*f, g)).collect();
            images.sort_unstable();
            images.dedup();
            images.len() == hs.len()
        })
    }

    fn is_epi(&self, f: &usize) -> bool {
        let b = self.cod(f);
        (0..self.object_count()).all(|y| {
            let hs = &self.homs[b][y];
            let mut images: Vec<usize> = hs.iter().map(|&g| self.c(g, *f)).collect();
            images.sort_unstable();
            images.dedup();
            images.len() == hs.len()
        })
    }

    fn is_iso(&self, f: &usize) -> bool {
        let (a, b) = (self.dom(f), self.cod(f));
        self.homs[b][a]
            .iter()
            .any(|&g| self.c(g, *f) == self.identity(&a) && self.c(*f, g) == self.identity(&b))
    }

    fn lift_raw(&self, m: &usize, f: &usize) -> Option<usize> {
        self.homs[self.dom(f)][self.dom(m)]
            .iter()
            .copied()
            .find(|&t| self.c(*m, t) == *f)
    }

    fn factor_raw(&self, e: &usize, f: &usize) -> Option<usize> {
        self.homs[self.cod(e)][self.cod(f)]
            .iter()
            .copied()
            .find(|&t| self.c(t, *e) == *f)
    }

    /// Coequalizer of some parallel pair into `dom f`.
    fn is_regular_epi(&self, f: &usize) -> Result<bool> {
        let (a, b) = (self.dom(f), self.cod(f));
        for x in 0..self.object_count() {
            let hs = &self.homs[x][a];
            for &g in hs {
                for &h in hs {
                    if self.c(*f, g) == self.c(*f, h) && self.is_coequalizer(*f, g, h, a, b) {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    /// Cokernel of some arrow into `dom f`.
    fn is_normal_epi(&self, f: &usize) -> Result<bool> {
        let (a, b) = (self.dom(f), self.cod(f));
        for x in 0..self.object_count() {
            for &g in &self.homs[x][a] {
                let z = self.zero_arrows[x][a];
                if self.c(*f, g) == self.c(*f, z) && self.is_coequalizer(*f, g, z, a, b) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Kernel of some arrow out of `cod m`.
    fn is_normal_mono(&self, m: &usize) -> Result<bool> {
        let (k, a) = (self.dom(m), self.cod(m));
        for y in 0..self.object_count() {
            for &g in &self.homs[a][y] {
                if self.c(g, *m) != self.zero_arrows[k][y] {
                    continue;
                }
                let universal = (0..self.object_count()).all(|x| {
                    self.homs[x][a]
                        .iter()
                        .filter(|&&t| self.c(g, t) == self.zero_arrows[x][y])
                        .all(|&t| self.homs[x][k].iter().filter(|&&s| self.c(*m, s) == t).count() == 1)
                });
                if universal {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn mono_factorizations(&self, f: &usize) -> Result<Vec<(usize, usize)>> {
        let (a, b) = (self.dom(f), self.cod(f));
        let mut out = vec![];
        for x in 0..self.object_count() {
            for &m in &self.homs[x][b] {
                if !self.is_mono(&m) {
                    continue;
                }
                for &e in &self.homs[a][x] {
                    if self.c(m, e) == *f {
                        out.push((e, m));
                    }
                }
            }
        }
        Ok(out)
    }

    fn all_kernels(&self, f: &usize) -> Result<Vec<usize>> {
        let ks: Vec<usize> = self.kernel_cones(*f).into_iter().map(|c| c.legs[0]).collect();
        if ks.is_empty() {
            return Err(CatError::NoLimit(format!("kernel of {}", self.data.arrows[*f].name)));
        }
        Ok(ks)
    }

    fn all_cokernels(&self, f: &usize) -> Result<Vec<usize>> {
        let cs: Vec<usize> = self.cokernel_cones(*f).into_iter().map(|c| c.legs[0]).collect();
        if cs.is_empty() {
            return Err(CatError::NoLimit(format!("cokernel of {}", self.data.arrows[*f].name)));
        }
        Ok(cs)
    }

    fn show(&self, f: &usize) -> String {
        self.data.arrows[*f].name.clone()
    }

    fn show_obj(&self, a: &usize) -> String {
        self.data.objects[*a].clone()
    }
}

impl TableCategory {
    /// `f: a -> b` coequalizes `(g, h)` universally.
    fn is_coequalizer(&self, f: usize, g: usize, h: usize, a: usize, b: usize) -> bool {
        (0..self.object_count()).all(|y| {
            self.homs[a][y]
                .iter()
                .filter(|&&k| self.c(k, g) == self.c(k, h))
                .all(|&k| self.homs[b][y].iter().filter(|&&t| self.c(t, f) == k).count() == 1)
        })
    }
}

#[cfg(test)]
mod tests;
