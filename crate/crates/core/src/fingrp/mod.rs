//! Finite groups given by multiplication tables (identity at index 0) and
//! their homomorphisms as element maps.

mod library;

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::category::{Cokernel, Kernel, PointedCategory, Pullback, PullbackData};
use crate::concrete::{self, Concrete};
use crate::error::{CatError, Result};

pub use library::{bundled_groups, group_by_name, parse_group_file};

struct GroupData {
    table: Vec<Vec<u32>>,
    inv: Vec<u32>,
    fingerprint: u64,
    name: Option<String>,
    generators: OnceLock<Vec<usize>>,
}

/// A finite group; equality is equality of multiplication tables.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.fingerprint == other.0.fingerprint && self.0.table == other.0.table)
    }
}

impl Eq for Group {}

impl Hash for Group {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.fingerprint.hash(state);
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "G{}#{:04x}", self.order(), self.0.fingerprint & 0xffff),
        }
    }
}

fn fingerprint(table: &[Vec<u32>]) -> u64 {
    // FNV-1a over the table
    let mut h: u64 = 0xcbf29ce484222325;
    for row in table {
        for &x in row {
            h ^= x as u64 + 1;
            h = h.wrapping_mul(0x100000001b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl Group {
    /// Validates closure, identity at 0, inverses and associativity.
    pub fn from_table(table: Vec<Vec<u32>>) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(CatError::input("group table is empty"));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(CatError::input(format!("row {a} has length {} (expected {n})", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x as usize >= n) {
                return Err(CatError::input(format!("entry {x} in row {a} is out of range")));
            }
        }
        for a in 0..n {
            if table[0][a] as usize != a || table[a][0] as usize != a {
                return Err(CatError::input("index 0 is not the identity"));
            }
            if !(0..n).any(|b| table[a][b] == 0 && table[b][a] == 0) {
                return Err(CatError::input(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b] as usize;
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c] as usize] {
                        return Err(CatError::input(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Self::from_table_unchecked(table, None))
    }

    pub(crate) fn from_table_unchecked(table: Vec<Vec<u32>>, name: Option<String>) -> Group {
        let n = table.len();
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("inverse exists") as u32)
            .collect();
        Group(Arc::new(GroupData {
            fingerprint: fingerprint(&table),
            table,
            inv,
            name,
            generators: OnceLock::new(),
        }))
    }

    pub fn trivial() -> Group {
        group_by_name("Z1").expect("bundled")
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.0.table.len()
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.0.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a][b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `s`, as a sorted index set.
    pub fn generated_subgroup(&self, s: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in s {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Greedy generating set: repeatedly add the least element not yet generated.
    pub fn generators(&self) -> &[usize] {
        self.0.generators.get_or_init(|| {
            let mut gens = vec![];
            let mut member = vec![false; self.order()];
            member[0] = true;
            for x in 0..self.order() {
                if !member[x] {
                    gens.push(x);
                    for y in self.generated_subgroup(&gens) {
                        member[y] = true;
                    }
                }
            }
            gens
        })
    }

    pub fn is_normal(&self, n: &[usize]) -> bool {
        let set: BTreeSet<usize> = n.iter().copied().collect();
        (0..self.order()).all(|g| {
            n.iter()
                .all(|&x| set.contains(&self.mul(self.mul(g, x), self.inv(g))))
        })
    }

    /// Least normal subgroup containing `s`, as a sorted index set.
    pub fn normal_closure(&self, s: &[usize]) -> Vec<usize> {
        let mut current = self.generated_subgroup(s);
        loop {
            let set: BTreeSet<usize> = current.iter().copied().collect();
            let extra: Vec<usize> = (0..self.order())
                .flat_map(|g| current.iter().map(move |&x| (g, x)))
                .map(|(g, x)| self.mul(self.mul(g, x), self.inv(g)))
                .filter(|c| !set.contains(c))
                .collect();
            if extra.is_empty() {
                return current;
            }
            let mut gens = current.clone();
            gens.extend(extra);
            current = self.generated_subgroup(&gens);
        }
    }

    /// The subgroup on a sorted element set containing 0, with the induced
    /// table (elements renumbered in ascending order) and its inclusion map.
    pub fn subgroup(&self, elems: &[usize]) -> (Group, Vec<usize>) {
        let mut pos = vec![u32::MAX; self.order()];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i as u32;
        }
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[self.mul(a, b)]).collect())
            .collect();
        (Group::from_table_unchecked(table, None), elems.to_vec())
    }

    /// Coset group `G/N`, cosets indexed by least representative in
    /// ascending order, with the projection.
    pub fn quotient(&self, n: &[usize]) -> Result<(Group, Vec<usize>)> {
        if !self.is_normal(n) {
            return Err(CatError::input("quotient by a subgroup that is not normal"));
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = vec![];
        for g in 0..self.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &x in n {
                coset_of[self.mul(g, x)] = id;
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)] as u32).collect())
            .collect();
        Ok((Group::from_table_unchecked(table, None), coset_of))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrpMorphism {
    pub dom: Group,
    pub cod: Group,
    map: Vec<u32>,
}

impl fmt::Debug for GrpMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {:?} -> {:?}", self.map, self.dom, self.cod)
    }
}

impl GrpMorphism {
    /// Validates that `map` is a homomorphism.
    pub fn new(dom: Group, cod: Group, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.order() {
            return Err(CatError::input(format!(
                "map has length {} but the domain has order {}",
                map.len(),
                dom.order()
            )));
        }
        if map.iter().any(|&y| y >= cod.order()) {
            return Err(CatError::input("map value out of range"));
        }
        for a in 0..dom.order() {
            for b in 0..dom.order() {
                if map[dom.mul(a, b)] != cod.mul(map[a], map[b]) {
                    return Err(CatError::input(format!(
                        "map is not a homomorphism at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Self::unchecked(dom, cod, &map))
    }

    fn unchecked(dom: Group, cod: Group, map: &[usize]) -> Self {
        GrpMorphism {
            dom,
            cod,
            map: map.iter().map(|&x| x as u32).collect(),
        }
    }

    pub fn map(&self) -> Vec<usize> {
        self.map.iter().map(|&x| x as usize).collect()
    }

    #[inline]
    pub fn at(&self, x: usize) -> usize {
        self.map[x] as usize
    }
}

/// `{(a, b) : f(a) = g(b)}` in lexicographic order, with the induced table.
pub fn fiber_product(f: &GrpMorphism, g: &GrpMorphism) -> Result<(Group, Vec<(usize, usize)>)> {
    if f.cod != g.cod {
        return Err(CatError::input("fiber product legs have different codomains"));
    }
    let (na, nb) = (f.dom.order(), g.dom.order());
    let mut index = vec![u32::MAX; na * nb];
    let mut pairs = vec![];
    for a in 0..na {
        for b in 0..nb {
            if f.at(a) == g.at(b) {
                index[a * nb + b] = pairs.len() as u32;
                pairs.push((a, b));
            }
        }
    }
    let table = pairs
        .iter()
        .map(|&(a1, b1)| {
            pairs
                .iter()
                .map(|&(a2, b2)| index[f.dom.mul(a1, a2) * nb + g.dom.mul(b1, b2)])
                .collect()
        })
        .collect();
    Ok((Group::from_table_unchecked(table, None), pairs))
}

/// Every homomorphism `dom -> cod`, ordered lexicographically by the images
/// of the greedy generators of `dom`.
pub fn enumerate_homs(dom: &Group, cod: &Group) -> Vec<GrpMorphism> {
    let gens = dom.generators().to_vec();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let k = dom.element_order(g);
            (0..cod.order())
                .filter(|&h| k % cod.element_order(h) == 0)
                .collect()
        })
        .collect();
    let mut out = vec![];
    let mut images = vec![0usize; gens.len()];
    fn extend(
        dom: &Group,
        cod: &Group,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; dom.order()];
        map[0] = 0;
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (g, &h) in gens.iter().zip(images) {
                let y = dom.mul(x, *g);
                let val = cod.mul(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = val;
                    queue.push(y);
                } else if map[y] != val {
                    return None;
                }
            }
            i += 1;
        }
        Some(map)
    }
    fn rec(
        depth: usize,
        dom: &Group,
        cod: &Group,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        out: &mut Vec<GrpMorphism>,
    ) {
        if depth == gens.len() {
            let map = extend(dom, cod, gens, images).expect("checked at each depth");
            out.push(GrpMorphism::unchecked(dom.clone(), cod.clone(), &map));
            return;
        }
        for &h in &candidates[depth] {
            images[depth] = h;
            if extend(dom, cod, &gens[..=depth], &images[..=depth]).is_some() {
                rec(depth + 1, dom, cod, gens, candidates, images, out);
            }
        }
    }
    rec(0, dom, cod, &gens, &candidates, &mut images, &mut out);
    out
}

/// The category of finite groups over the bundled library.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinGrp;

impl FinGrp {
    pub fn mor(&self, dom: &Group, cod: &Group, map: Vec<usize>) -> Result<GrpMorphism> {
        GrpMorphism::new(dom.clone(), cod.clone(), map)
    }
}

impl PointedCategory for FinGrp {
    type Obj = Group;
    type Mor = GrpMorphism;

    fn backend(&self) -> &'static str {
        "fingrp"
    }

    fn dom(&self, f: &GrpMorphism) -> Group {
        f.dom.clone()
    }

    fn cod(&self, f: &GrpMorphism) -> Group {
        f.cod.clone()
    }

    fn identity(&self, a: &Group) -> GrpMorphism {
        GrpMorphism::unchecked(a.clone(), a.clone(), &(0..a.order()).collect::<Vec<_>>())
    }

    fn zero_object(&self) -> Group {
        Group::trivial()
    }

    fn zero_morphism(&self, a: &Group, b: &Group) -> GrpMorphism {
        GrpMorphism::unchecked(a.clone(), b.clone(), &vec![0; a.order()])
    }

    fn compose_raw(&self, g: &GrpMorphism, f: &GrpMorphism) -> GrpMorphism {
        GrpMorphism {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            map: f.map.iter().map(|&x| g.map[x as usize]).collect(),
        }
    }

    fn kernel(&self, f: &GrpMorphism) -> Result<Kernel<Self>> {
        let elems: Vec<usize> = (0..f.dom.order()).filter(|&x| f.at(x) == 0).collect();
        let (obj, incl) = f.dom.subgroup(&elems);
        Ok(Kernel::<Self> {
            incl: GrpMorphism::unchecked(obj.clone(), f.dom.clone(), &incl),
            obj,
        })
    }

    fn cokernel(&self, f: &GrpMorphism) -> Result<Cokernel<Self>> {
        let image: Vec<usize> = f.map();
        let n = f.cod.normal_closure(&image);
        let (obj, proj) = f.cod.quotient(&n)?;
        Ok(Cokernel::<Self> {
            proj: GrpMorphism::unchecked(f.cod.clone(), obj.clone(), &proj),
            obj,
        })
    }

    fn pullback(&self, f: &GrpMorphism, g: &GrpMorphism) -> Result<Pullback<Self>> {
        let (obj, pairs) = fiber_product(f, g)?;
        let p1: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let p2: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        Ok(PullbackData {
            p1: GrpMorphism::unchecked(obj.clone(), f.dom.clone(), &p1),
            p2: GrpMorphism::unchecked(obj.clone(), g.dom.clone(), &p2),
            obj,
            left: f.clone(),
            right: g.clone(),
        })
    }

    fn homs(&self, a: &Group, b: &Group) -> Result<Vec<GrpMorphism>> {
        Ok(enumerate_homs(a, b))
    }

    fn objects_up_to(&self, bound: usize) -> Result<Vec<Group>> {
        Ok(bundled_groups()
            .into_iter()
            .filter(|g| g.order() <= bound)
            .collect())
    }

    fn object_size(&self, a: &Group) -> usize {
        a.order()
    }

    fn is_mono(&self, f: &GrpMorphism) -> bool {
        concrete::is_injective(self, f)
    }

    fn is_epi(&self, f: &GrpMorphism) -> bool {
        concrete::is_surjective(self, f)
    }

    fn is_iso(&self, f: &GrpMorphism) -> bool {
        f.dom.order() == f.cod.order() && concrete::is_injective(self, f)
    }

    fn lift_raw(&self, m: &GrpMorphism, f: &GrpMorphism) -> Option<GrpMorphism> {
        concrete::lift(self, m, f)
    }

    fn factor_raw(&self, e: &GrpMorphism, f: &GrpMorphism) -> Option<GrpMorphism> {
        concrete::factor(self, e, f)
    }

    fn pair_raw(&self, pb: &Pullback<Self>, u: &GrpMorphism, v: &GrpMorphism) -> Option<GrpMorphism> {
        concrete::pair(self, pb, u, v)
    }

    fn is_regular_epi(&self, f: &GrpMorphism) -> Result<bool> {
        concrete::is_coequalizer_of_kernel_pair(self, f)
    }

    fn mono_factorizations(&self, f: &GrpMorphism) -> Result<Vec<(GrpMorphism, GrpMorphism)>> {
        Ok(concrete::image_factorization(self, f))
    }
}

impl Concrete for FinGrp {
    fn order(&self, a: &Group) -> usize {
        a.order()
    }

    fn apply(&self, f: &GrpMorphism, x: usize) -> usize {
        f.at(x)
    }

    fn element_map(&self, f: &GrpMorphism) -> Vec<usize> {
        f.map()
    }

    fn from_map_unchecked(&self, dom: &Group, cod: &Group, map: &[usize]) -> GrpMorphism {
        GrpMorphism::unchecked(dom.clone(), cod.clone(), map)
    }

    fn image(&self, f: &GrpMorphism) -> (Group, GrpMorphism) {
        let mut elems = f.map();
        elems.sort_unstable();
        elems.dedup();
        let (obj, incl) = f.cod.subgroup(&elems);
        let m = GrpMorphism::unchecked(obj.clone(), f.cod.clone(), &incl);
        (obj, m)
    }
}
