//! Enumeration of small pointed categories up to isomorphism.
//!
//! Object 0 is the designated zero. Each hom-set is laid out as: the zero
//! arrow, then (on endo hom-sets of non-zero objects) the identity, then the
//! free arrows. Composites involving a zero arrow or an identity are forced;
//! the remaining ones are found by backtracking with partial associativity
//! pruning. Isomorphic tables are merged by a canonical encoding, the
//! lexicographically least over relabelings of objects and free arrows.

use std::collections::BTreeMap;

use super::{Arrow, TableCategory, TableData};
use crate::error::{CatError, Result};

/// Largest arrow count `enumerate_categories` accepts.
pub const MAX_ENUM_MORPHISMS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Zero,
    Identity,
    Free,
}

#[derive(Debug, Clone)]
struct Layout {
    n: usize,
    h: Vec<Vec<usize>>,
    // index of (a, b, local)
    index: Vec<Vec<Vec<usize>>>,
    arrows: Vec<(usize, usize, Kind)>,
}

impl Layout {
    fn new(h: Vec<Vec<usize>>) -> Layout {
        let n = h.len();
        let mut index = vec![vec![vec![]; n]; n];
        let mut arrows = vec![];
        for a in 0..n {
            for b in 0..n {
                for l in 0..h[a][b] {
                    let kind = match (l, a == b) {
                        (0, true) if h[a][a] == 1 => Kind::Identity,
                        (0, _) => Kind::Zero,
                        (1, true) => Kind::Identity,
                        _ => Kind::Free,
                    };
                    index[a][b].push(arrows.len());
                    arrows.push((a, b, kind));
                }
            }
        }
        Layout { n, h, index, arrows }
    }

    fn base(&self, a: usize, b: usize) -> usize {
        if a == b && self.h[a][a] >= 2 {
            2
        } else {
            1
        }
    }

    fn zero(&self, a: usize, b: usize) -> usize {
        self.index[a][b][0]
    }

    fn forced(&self, g: usize, f: usize) -> Option<usize> {
        let (a, _, fk) = self.arrows[f];
        let (_, c, gk) = self.arrows[g];
        match (fk, gk) {
            (Kind::Identity, _) => Some(g),
            (_, Kind::Identity) => Some(f),
            (Kind::Zero, _) | (_, Kind::Zero) => Some(self.zero(a, c)),
            _ => None,
        }
    }
}

fn assoc_ok(layout: &Layout, comp: &[Vec<Option<usize>>]) -> bool {
    let m = layout.arrows.len();
    for f in 0..m {
        for g in 0..m {
            let Some(gf) = comp[g][f] else { continue };
            for h in 0..m {
                if layout.arrows[h].0 != layout.arrows[g].1 {
                    continue;
                }
                let (Some(hg), Some(l)) = (comp[h][g], comp[h][gf]) else { continue };
                if let Some(r) = comp[hg][f] {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn complete_tables(layout: &Layout) -> Vec<Vec<Vec<Option<usize>>>> {
    let m = layout.arrows.len();
    let mut comp = vec![vec![None; m]; m];
    let mut free = vec![];
    for g in 0..m {
        for f in 0..m {
            if layout.arrows[f].1 != layout.arrows[g].0 {
                continue;
            }
            match layout.forced(g, f) {
                Some(h) => comp[g][f] = Some(h),
                None => free.push((g, f)),
            }
        }
    }
    let mut out = vec![];
    fn rec(
        i: usize,
        layout: &Layout,
        free: &[(usize, usize)],
        comp: &mut Vec<Vec<Option<usize>>>,
        out: &mut Vec<Vec<Vec<Option<usize>>>>,
    ) {
        if i == free.len() {
            out.push(comp.clone());
            return;
        }
        let (g, f) = free[i];
        let (a, c) = (layout.arrows[f].0, layout.arrows[g].1);
        for &h in &layout.index[a][c] {
            comp[g][f] = Some(h);
            if assoc_ok(layout, comp) {
                rec(i + 1, layout, free, comp, out);
            }
        }
        comp[g][f] = None;
    }
    rec(0, layout, &free, &mut comp, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn is_zero_object(h: &[Vec<usize>], z: usize) -> bool {
    (0..h.len()).all(|x| h[z][x] == 1 && h[x][z] == 1)
}

/// Relabels through `obj` (new -> old) and the free-arrow permutations
/// (new local -> old local, per old hom-set); returns the new layout and the
/// old-to-new arrow map.
fn relabel(layout: &Layout, obj: &[usize], free: &BTreeMap<(usize, usize), Vec<usize>>) -> (Layout, Vec<usize>) {
    let n = layout.n;
    let h: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| layout.h[obj[i]][obj[j]]).collect()).collect();
    let new = Layout::new(h);
    let mut old_to_new = vec![0; layout.arrows.len()];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (obj[i], obj[j]);
            let base = layout.base(a, b);
            for l in 0..layout.h[a][b] {
                let old_l = if l < base { l } else { base + free[&(a, b)][l - base] };
                old_to_new[layout.index[a][b][old_l]] = new.index[i][j][l];
            }
        }
    }
    (new, old_to_new)
}

fn encode(layout: &Layout, comp: &[Vec<Option<usize>>]) -> Vec<u8> {
    let mut code: Vec<u8> = layout.h.iter().flatten().map(|&x| x as u8).collect();
    for row in comp {
        for c in row.iter().flatten() {
            code.push(*c as u8);
        }
    }
    code
}

fn canonical(layout: &Layout, comp: &[Vec<Option<usize>>]) -> (Vec<u8>, Layout, Vec<Vec<Option<usize>>>) {
    let n = layout.n;
    let m = layout.arrows.len();
    let mut best: Option<(Vec<u8>, Layout, Vec<Vec<Option<usize>>>)> = None;
    for obj in permutations(n) {
        if !is_zero_object(&layout.h, obj[0]) {
            continue;
        }
        // every combination of free-arrow permutations per hom-set
        let sets: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| (a, b, layout.h[a][b] - layout.base(a, b)))
            .collect();
        let choices: Vec<Vec<Vec<usize>>> = sets.iter().map(|&(_, _, k)| permutations(k)).collect();
        let mut pick = vec![0usize; sets.len()];
        loop {
            let free: BTreeMap<(usize, usize), Vec<usize>> = sets
                .iter()
                .zip(&pick)
                .zip(&choices)
                .map(|((&(a, b, _), &p), ch)| ((a, b), ch[p].clone()))
                .collect();
            let (new, map) = relabel(layout, &obj, &free);
            let mut new_comp = vec![vec![None; m]; m];
            for g in 0..m {
                for f in 0..m {
                    if let Some(h) = comp[g][f] {
                        new_comp[map[g]][map[f]] = Some(map[h]);
                    }
                }
            }
            let code = encode(&new, &new_comp);
            if best.as_ref().map_or(true, |b| code < b.0) {
                best = Some((code, new, new_comp));
            }
            let mut i = 0;
            loop {
                if i == pick.len() {
                    break;
                }
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
    }
    best.expect("identity relabeling is admissible")
}

/// Canonical encoding of a valid table category (with zero object 0 of the
/// layout convention not required: the table is re-laid-out first).
pub fn canonical_encoding(cat: &TableCategory) -> Vec<u8> {
    use crate::category::PointedCategory;
    let n = cat.object_count();
    // put the category's zero first, keep the rest in order
    let z = cat.zero_object();
    let order: Vec<usize> = std::iter::once(z).chain((0..n).filter(|&x| x != z)).collect();
    let h: Vec<Vec<usize>> = order
        .iter()
        .map(|&a| order.iter().map(|&b| cat.homs(&a, &b).expect("total").len()).collect())
        .collect();
    let layout = Layout::new(h);
    // map each arrow of the category to a layout slot with matching kind
    let mut to_layout = vec![usize::MAX; cat.arrow_count()];
    for (i, &a) in order.iter().enumerate() {
        for (j, &b) in order.iter().enumerate() {
            let zero = cat.zero_morphism(&a, &b);
            let id = (a == b).then(|| cat.identity(&a));
            let slots = &layout.index[i][j];
            let mut next_free = layout.base(i, j);
            for f in cat.homs(&a, &b).expect("total") {
                to_layout[f] = if Some(f) == id {
                    slots[if layout.base(i, j) == 2 { 1 } else { 0 }]
                } else if f == zero {
                    slots[0]
                } else {
                    next_free += 1;
                    slots[next_free - 1]
                };
            }
        }
    }
    let m = cat.arrow_count();
    let mut comp = vec![vec![None; m]; m];
    for g in 0..m {
        for f in 0..m {
            if let Some(h) = cat.comp(g, f) {
                comp[to_layout[g]][to_layout[f]] = Some(to_layout[h]);
            }
        }
    }
    canonical(&layout, &comp).0
}

fn hom_matrices(max: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![];
    let mut n = 1;
    while n * n <= max {
        // cells that may exceed 1: pairs of objects other than 0
        let cells: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
        let mut h = vec![vec![1usize; n]; n];
        fn rec(
            i: usize,
            cells: &[(usize, usize)],
            h: &mut Vec<Vec<usize>>,
            budget: usize,
            out: &mut Vec<Vec<Vec<usize>>>,
        ) {
            if i == cells.len() {
                let n = h.len();
                // an object whose identity is its zero endomorphism is a zero object
                let ok = (1..n).all(|a| h[a][a] >= 2 || is_zero_object(h, a));
                if ok {
                    out.push(h.clone());
                }
                return;
            }
            let (a, b) = cells[i];
            for k in 1..=1 + budget {
                h[a][b] = k;
                rec(i + 1, cells, h, budget - (k - 1), out);
            }
            h[a][b] = 1;
        }
        rec(0, &cells, &mut h, max - n * n, &mut out);
        n += 1;
    }
    out
}

fn names(layout: &Layout) -> (Vec<String>, Vec<String>) {
    let obj_name = |a: usize| {
        if a == 0 {
            "0".to_string()
        } else {
            char::from(b'A' + (a as u8 - 1)).to_string()
        }
    };
    let objects = (0..layout.n).map(obj_name).collect();
    let mut free = 0;
    let arrows = layout
        .arrows
        .iter()
        .map(|&(a, b, kind)| match kind {
            Kind::Identity => format!("1_{}", obj_name(a)),
            Kind::Zero => format!("0_{}{}", obj_name(a), obj_name(b)),
            Kind::Free => {
                free += 1;
                format!("e{free}")
            }
        })
        .collect();
    (objects, arrows)
}

/// Every pointed category with at most `max_morphisms` arrows, up to
/// isomorphism, ordered by arrow count then canonical encoding.
pub fn enumerate_categories(max_morphisms: usize) -> Result<Vec<TableCategory>> {
    if max_morphisms > MAX_ENUM_MORPHISMS {
        return Err(CatError::budget(format!(
            "enumeration is limited to {MAX_ENUM_MORPHISMS} morphisms (asked for {max_morphisms})"
        )));
    }
    let mut found: BTreeMap<(usize, Vec<u8>), (Layout, Vec<Vec<Option<usize>>>)> = BTreeMap::new();
    for h in hom_matrices(max_morphisms) {
        let layout = Layout::new(h);
        for comp in complete_tables(&layout) {
            let (code, new, new_comp) = canonical(&layout, &comp);
            found.entry((layout.arrows.len(), code)).or_insert((new, new_comp));
        }
    }
    found
        .into_values()
        .map(|(layout, comp)| {
            let (objects, arrow_names) = names(&layout);
            let arrows = layout
                .arrows
                .iter()
                .zip(arrow_names)
                .map(|(&(dom, cod, _), name)| Arrow { name, dom, cod })
                .collect();
            let identities = (0..layout.n)
                .map(|a| layout.index[a][a][layout.base(a, a) - 1])
                .collect();
            TableCategory::new(TableData {
                objects,
                arrows,
                identities,
                comp,
                zero: Some(0),
            })
        })
        .collect()
}
