//! Finite pointed sets. Objects are sizes `n >= 1` with basepoint 0; arrows
//! are basepoint-preserving maps.

use std::fmt;

use crate::category::{Cokernel, Kernel, PointedCategory, Pullback, PullbackData};
use crate::concrete::{self, Concrete};
use crate::error::{CatError, Result};

const HOM_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PSetObject(usize);

impl PSetObject {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(CatError::input("a pointed set has at least one element"));
        }
        Ok(PSetObject(size))
    }

    pub fn size(self) -> usize {
        self.0
    }
}

impl fmt::Display for PSetObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{*")?;
        for i in 1..self.0 {
            write!(f, ",{i}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PSetMorphism {
    pub dom: PSetObject,
    pub cod: PSetObject,
    map: Vec<usize>,
}

impl PSetMorphism {
    pub fn new(dom: PSetObject, cod: PSetObject, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.0 {
            return Err(CatError::input(format!(
                "map has length {} but the domain has size {}",
                map.len(),
                dom.0
            )));
        }
        if map[0] != 0 {
            return Err(CatError::input("map does not preserve the basepoint"));
        }
        if let Some(&y) = map.iter().find(|&&y| y >= cod.0) {
            return Err(CatError::input(format!("map value {y} out of range")));
        }
        Ok(PSetMorphism { dom, cod, map })
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

/// Normal-epi test by the element criterion: surjective, and injective away
/// from the preimage of the basepoint.
pub fn is_normal_epi_elementwise(f: &PSetMorphism) -> bool {
    let mut hit = vec![0usize; f.cod.0];
    for &y in &f.map {
        hit[y] += 1;
    }
    hit[0] >= 1 && hit[1..].iter().all(|&c| c == 1)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PSet;

impl PSet {
    pub fn obj(&self, size: usize) -> Result<PSetObject> {
        PSetObject::new(size)
    }

    pub fn mor(&self, dom: usize, cod: usize, map: Vec<usize>) -> Result<PSetMorphism> {
        PSetMorphism::new(PSetObject::new(dom)?, PSetObject::new(cod)?, map)
    }
}

impl PointedCategory for PSet {
    type Obj = PSetObject;
    type Mor = PSetMorphism;

    fn backend(&self) -> &'static str {
        "pset"
    }

    fn dom(&self, f: &PSetMorphism) -> PSetObject {
        f.dom
    }

    fn cod(&self, f: &PSetMorphism) -> PSetObject {
        f.cod
    }

    fn identity(&self, a: &PSetObject) -> PSetMorphism {
        PSetMorphism {
            dom: *a,
            cod: *a,
            map: (0..a.0).collect(),
        }
    }

    fn zero_object(&self) -> PSetObject {
        PSetObject(1)
    }

    fn zero_morphism(&self, a: &PSetObject, b: &PSetObject) -> PSetMorphism {
        PSetMorphism {
            dom: *a,
            cod: *b,
            map: vec![0; a.0],
        }
    }

    fn compose_raw(&self, g: &PSetMorphism, f: &PSetMorphism) -> PSetMorphism {
        PSetMorphism {
            dom: f.dom,
            cod: g.cod,
            map: f.map.iter().map(|&x| g.map[x]).collect(),
        }
    }

    fn kernel(&self, f: &PSetMorphism) -> Result<Kernel<Self>> {
        let incl: Vec<usize> = (0..f.dom.0).filter(|&x| f.map[x] == 0).collect();
        let obj = PSetObject(incl.len());
        Ok(Kernel::<Self> {
            obj,
            incl: PSetMorphism {
                dom: obj,
                cod: f.dom,
                map: incl,
            },
        })
    }

    fn cokernel(&self, f: &PSetMorphism) -> Result<Cokernel<Self>> {
        let mut in_image = vec![false; f.cod.0];
        for &y in &f.map {
            in_image[y] = true;
        }
        let mut next = 1;
        let proj: Vec<usize> = in_image
            .iter()
            .map(|&hit| {
                if hit {
                    0
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        let obj = PSetObject(next);
        Ok(Cokernel::<Self> {
            obj,
            proj: PSetMorphism {
                dom: f.cod,
                cod: obj,
                map: proj,
            },
        })
    }

    fn pullback(&self, f: &PSetMorphism, g: &PSetMorphism) -> Result<Pullback<Self>> {
        if f.cod != g.cod {
            return Err(CatError::input("pullback legs have different codomains"));
        }
        let pairs: Vec<(usize, usize)> = (0..f.dom.0)
            .flat_map(|a| (0..g.dom.0).map(move |b| (a, b)))
            .filter(|&(a, b)| f.map[a] == g.map[b])
            .collect();
        let obj = PSetObject(pairs.len());
        Ok(PullbackData {
            obj,
            p1: PSetMorphism {
                dom: obj,
                cod: f.dom,
                map: pairs.iter().map(|p| p.0).collect(),
            },
            p2: PSetMorphism {
                dom: obj,
                cod: g.dom,
                map: pairs.iter().map(|p| p.1).collect(),
            },
            left: f.clone(),
            right: g.clone(),
        })
    }

    /// Maps in lexicographic order of the value list.
    fn homs(&self, a: &PSetObject, b: &PSetObject) -> Result<Vec<PSetMorphism>> {
        let count = (b.0 as u128).checked_pow(a.0 as u32 - 1);
        if count.map_or(true, |c| c > HOM_LIMIT as u128) {
            return Err(CatError::budget(format!(
                "hom-set {a} -> {b} exceeds {HOM_LIMIT} arrows"
            )));
        }
        let mut out = Vec::with_capacity(count.unwrap() as usize);
        let mut map = vec![0; a.0];
        loop {
            out.push(PSetMorphism {
                dom: *a,
                cod: *b,
                map: map.clone(),
            });
            // odometer, last position fastest
            let mut i = a.0 - 1;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                map[i] += 1;
                if map[i] < b.0 {
                    break;
                }
                map[i] = 0;
                i -= 1;
            }
        }
    }

    fn objects_up_to(&self, bound: usize) -> Result<Vec<PSetObject>> {
        Ok((1..=bound).map(PSetObject).collect())
    }

    fn object_size(&self, a: &PSetObject) -> usize {
        a.0
    }

    fn is_mono(&self, f: &PSetMorphism) -> bool {
        concrete::is_injective(self, f)
    }

    fn is_epi(&self, f: &PSetMorphism) -> bool {
        concrete::is_surjective(self, f)
    }

    fn is_iso(&self, f: &PSetMorphism) -> bool {
        f.dom == f.cod && concrete::is_injective(self, f)
    }

    fn lift_raw(&self, m: &PSetMorphism, f: &PSetMorphism) -> Option<PSetMorphism> {
        concrete::lift(self, m, f)
    }

    fn factor_raw(&self, e: &PSetMorphism, f: &PSetMorphism) -> Option<PSetMorphism> {
        concrete::factor(self, e, f)
    }

    fn pair_raw(&self, pb: &Pullback<Self>, u: &PSetMorphism, v: &PSetMorphism) -> Option<PSetMorphism> {
        concrete::pair(self, pb, u, v)
    }

    fn is_regular_epi(&self, f: &PSetMorphism) -> Result<bool> {
        concrete::is_coequalizer_of_kernel_pair(self, f)
    }

    /// A section of a surjection: each element goes to its least preimage.
    fn split_section(&self, f: &PSetMorphism) -> Result<Option<PSetMorphism>> {
        let mut s = vec![usize::MAX; f.cod.0];
        for (x, &y) in f.map.iter().enumerate().rev() {
            s[y] = x;
        }
        if s.contains(&usize::MAX) {
            return Ok(None);
        }
        Ok(Some(PSetMorphism {
            dom: f.cod,
            cod: f.dom,
            map: s,
        }))
    }

    fn mono_factorizations(&self, f: &PSetMorphism) -> Result<Vec<(PSetMorphism, PSetMorphism)>> {
        Ok(concrete::image_factorization(self, f))
    }

    fn show(&self, f: &PSetMorphism) -> String {
        let names = |i: usize| if i == 0 { "*".to_string() } else { i.to_string() };
        let pairs: Vec<String> = f
            .map
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", names(x), names(y)))
            .collect();
        format!("{} -> {} [{}]", f.dom, f.cod, pairs.join(", "))
    }

    fn show_obj(&self, a: &PSetObject) -> String {
        a.to_string()
    }
}

impl Concrete for PSet {
    fn order(&self, a: &PSetObject) -> usize {
        a.0
    }

    fn apply(&self, f: &PSetMorphism, x: usize) -> usize {
        f.map[x]
    }

    fn element_map(&self, f: &PSetMorphism) -> Vec<usize> {
        f.map.clone()
    }

    fn from_map_unchecked(&self, dom: &PSetObject, cod: &PSetObject, map: &[usize]) -> PSetMorphism {
        PSetMorphism {
            dom: *dom,
            cod: *cod,
            map: map.to_vec(),
        }
    }

    fn image(&self, f: &PSetMorphism) -> (PSetObject, PSetMorphism) {
        let mut elems = f.map.clone();
        elems.sort_unstable();
        elems.dedup();
        let obj = PSetObject(elems.len());
        (
            obj,
            PSetMorphism {
                dom: obj,
                cod: f.cod,
                map: elems,
            },
        )
    }
}
