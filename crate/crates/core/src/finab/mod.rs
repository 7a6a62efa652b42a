//! Finite abelian groups presented by invariant factors, with homomorphisms
//! as reduced integer matrices. Kernels, cokernels and pullbacks go through
//! Smith normal form; everything else is elementwise.

pub mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::category::{Cokernel, Kernel, PointedCategory, Pullback, PullbackData};
use crate::concrete::{self, Concrete};
use crate::error::{CatError, Result};
use snf::{integer_kernel, smith_normal_form, IntMatrix};

/// Default bound on group order for element enumeration.
pub const ELEMENT_BOUND: usize = 64;
/// Default bound on group order for hom enumeration.
pub const HOM_BOUND: usize = 16;
/// Hard cap on the size of a single hom-set listing.
const HOM_LIMIT: u128 = 1 << 20;

/// `Z/d1 ⊕ … ⊕ Z/dk` with `d1 | d2 | … | dk`, every `di ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinAbObject {
    factors: Vec<u64>,
}

impl FinAbObject {
    pub fn zero() -> Self {
        FinAbObject { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(if n == 1 { vec![] } else { vec![n] }).expect("n >= 1")
    }

    /// Validates a canonical invariant-factor list.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&d| d < 2) {
            return Err(CatError::input(format!(
                "invariant factor {bad} must be at least 2"
            )));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(CatError::input(format!(
                "invariant factors must form a divisibility chain: {} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(FinAbObject { factors })
    }

    /// Normalizes `Z/n1 ⊕ … ⊕ Z/nk` (arbitrary positive orders) to canonical
    /// form, returning the isomorphism from the raw sum.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<(FinAbObject, Vec<Vec<u64>>)> {
        if orders.contains(&0) {
            return Err(CatError::input("cyclic orders must be positive"));
        }
        // iso raw -> canonical is the inverse of the inclusion of the full subgroup
        let gens: Vec<Vec<BigInt>> = (0..orders.len())
            .map(|j| {
                (0..orders.len())
                    .map(|i| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let (obj, _incl, to_sub) = subgroup_presentation(&gens, orders);
        // `to_sub` expresses generator j of the raw sum in canonical coordinates
        Ok((obj, to_sub))
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Coordinates of element `x` (lexicographic, first factor most significant).
    pub fn decode(&self, mut x: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for (i, &d) in self.factors.iter().enumerate().rev() {
            out[i] = (x as u64) % d;
            x /= d as usize;
        }
        out
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + (c % d) as usize)
    }

    /// All elements in lexicographic order, bounded by `bound` on the order.
    pub fn enumerate_elements(&self, bound: usize) -> Result<Vec<Vec<u64>>> {
        if self.order() > bound {
            return Err(CatError::budget(format!(
                "group of order {} exceeds element bound {bound}",
                self.order()
            )));
        }
        Ok((0..self.order()).map(|x| self.decode(x)).collect())
    }
}

impl fmt::Display for FinAbObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// A homomorphism; `matrix[i][j]` is the `i`-th codomain coordinate of the
/// image of the `j`-th domain generator, reduced into `[0, cod_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbMorphism {
    pub dom: FinAbObject,
    pub cod: FinAbObject,
    matrix: Vec<Vec<u64>>,
}

impl FinAbMorphism {
    pub fn new(dom: FinAbObject, cod: FinAbObject, matrix: Vec<Vec<u64>>) -> Result<Self> {
        if !hom_well_defined(&matrix, &dom, &cod)? {
            return Err(CatError::input(format!(
                "matrix {matrix:?} is not a homomorphism {dom} -> {cod}"
            )));
        }
        Ok(Self::reduced(dom, cod, matrix))
    }

    fn reduced(dom: FinAbObject, cod: FinAbObject, mut matrix: Vec<Vec<u64>>) -> Self {
        for (row, &c) in matrix.iter_mut().zip(&cod.factors) {
            for x in row.iter_mut() {
                *x %= c;
            }
        }
        FinAbMorphism { dom, cod, matrix }
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply_coords(&self, x: &[u64]) -> Vec<u64> {
        self.matrix
            .iter()
            .zip(&self.cod.factors)
            .map(|(row, &c)| {
                row.iter()
                    .zip(x)
                    .fold(0u128, |acc, (&m, &xi)| (acc + m as u128 * xi as u128) % c as u128)
                    as u64
            })
            .collect()
    }
}

impl fmt::Display for FinAbMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {} -> {}", self.matrix, self.dom, self.cod)
    }
}

/// `d_j · M[i][j] ≡ 0 (mod c_i)` for every entry.
pub fn hom_well_defined(m: &[Vec<u64>], dom: &FinAbObject, cod: &FinAbObject) -> Result<bool> {
    if m.len() != cod.rank() || m.iter().any(|row| row.len() != dom.rank()) {
        return Err(CatError::input(format!(
            "matrix shape does not match {} -> {} (expected {}x{})",
            dom,
            cod,
            cod.rank(),
            dom.rank()
        )));
    }
    Ok(m.iter().zip(&cod.factors).all(|(row, &c)| {
        row.iter()
            .zip(&dom.factors)
            .all(|(&x, &d)| (x as u128 * d as u128) % c as u128 == 0)
    }))
}

/// Every homomorphism `dom -> cod` in lexicographic (row-major) matrix order.
pub fn enumerate_homs(dom: &FinAbObject, cod: &FinAbObject, bound: usize) -> Result<Vec<FinAbMorphism>> {
    if dom.order() > bound || cod.order() > bound {
        return Err(CatError::budget(format!(
            "hom enumeration {dom} -> {cod} exceeds order bound {bound}"
        )));
    }
    all_homs(dom, cod)
}

fn all_homs(dom: &FinAbObject, cod: &FinAbObject) -> Result<Vec<FinAbMorphism>> {
    // entry (i, j) ranges over multiples of c_i / gcd(c_i, d_j)
    let mut choices: Vec<(u64, u64)> = vec![];
    let mut total: u128 = 1;
    for &c in &cod.factors {
        for &d in &dom.factors {
            let g = c.gcd(&d);
            choices.push((c / g, g));
            total *= g as u128;
        }
    }
    if total > HOM_LIMIT {
        return Err(CatError::budget(format!(
            "hom-set {dom} -> {cod} has {total} elements"
        )));
    }
    let (rows, cols) = (cod.rank(), dom.rank());
    let mut out = Vec::with_capacity(total as usize);
    let mut counter = vec![0u64; choices.len()];
    loop {
        let matrix = (0..rows)
            .map(|i| (0..cols).map(|j| counter[i * cols + j] * choices[i * cols + j].0).collect())
            .collect();
        out.push(FinAbMorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            matrix,
        });
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < choices[pos].1 {
                break;
            }
            counter[pos] = 0;
        }
    }
}

/// All canonical objects of order at most `bound`, ordered by (order, factors).
pub fn objects_up_to(bound: usize) -> Vec<FinAbObject> {
    fn extend(prefix: &mut Vec<u64>, order: u64, bound: u64, out: &mut Vec<FinAbObject>) {
        out.push(FinAbObject {
            factors: prefix.clone(),
        });
        let start = prefix.last().copied().unwrap_or(2);
        let mut d = start;
        while order * d <= bound {
            if prefix.last().map_or(true, |&last| d % last == 0) {
                prefix.push(d);
                extend(prefix, order * d, bound, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = vec![];
    extend(&mut vec![], 1, bound.max(1) as u64, &mut out);
    out.sort_by(|a, b| (a.order(), &a.factors).cmp(&(b.order(), &b.factors)));
    out
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn small(x: &BigInt, modulus: u64) -> u64 {
    x.mod_floor(&big(modulus)).to_u64().expect("reduced value fits")
}

/// Presents the subgroup of `Z/n1 ⊕ … ⊕ Z/nk` generated by the columns
/// `gens`. Returns the canonical object, the inclusion matrix into the
/// ambient sum, and the matrix sending generator `j` to its canonical
/// coordinates.
fn subgroup_presentation(
    gens: &[Vec<BigInt>],
    ambient: &[u64],
) -> (FinAbObject, Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let n = ambient.len();
    let k = gens.len();
    if k == 0 {
        return (FinAbObject::zero(), vec![vec![]; n], vec![]);
    }
    // relations on Z^k: z with G z ≡ 0 mod ambient
    let big_n: IntMatrix = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = gens.iter().map(|g| g[i].clone()).collect();
            row.extend((0..n).map(|j| if i == j { big(ambient[i]) } else { BigInt::zero() }));
            row
        })
        .collect();
    let rel_full = integer_kernel(&big_n, k + n);
    let rel: IntMatrix = (0..k)
        .map(|i| rel_full.iter().map(|col| col[i].clone()).collect())
        .collect();
    let s = smith_normal_form(&rel);
    let diag = s.diagonal();
    let mut factors = vec![];
    let mut kept = vec![];
    for (i, d) in diag.iter().enumerate() {
        if !d.is_one() {
            assert!(!d.is_zero(), "subgroup of a finite group is finite");
            factors.push(d.to_u64().expect("factor fits"));
            kept.push(i);
        }
    }
    assert_eq!(diag.len(), k, "relation lattice has full rank");
    // inclusion: canonical generator i ↦ G · U⁻¹ e_i
    let incl: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            kept.iter()
                .map(|&i| {
                    let v: BigInt = (0..k).map(|l| &gens[l][r] * &s.u_inv[l][i]).sum();
                    small(&v, ambient[r])
                })
                .collect()
        })
        .collect();
    // generator j ↦ U e_j in canonical coordinates
    let coords: Vec<Vec<u64>> = kept
        .iter()
        .zip(&factors)
        .map(|(&i, &d)| (0..k).map(|j| small(&s.u[i][j], d)).collect())
        .collect();
    (FinAbObject { factors }, incl, coords)
}

/// x-generators of `{x ∈ Z^n : M x ∈ diag(c) Z^m}`.
fn preimage_of_zero(m: &[Vec<BigInt>], n: usize, c: &[u64]) -> Vec<Vec<BigInt>> {
    if c.is_empty() {
        return (0..n)
            .map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
    }
    let rows: IntMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..c.len()).map(|j| if i == j { big(c[i]) } else { BigInt::zero() }));
            r
        })
        .collect();
    integer_kernel(&rows, n + c.len())
        .into_iter()
        .map(|col| col[..n].to_vec())
        .collect()
}

fn to_big(m: &[Vec<u64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| big(x)).collect()).collect()
}

fn columns(m: &[Vec<u64>], cols: usize) -> Vec<Vec<BigInt>> {
    (0..cols).map(|j| m.iter().map(|r| big(r[j])).collect()).collect()
}

/// The category of finite abelian groups.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinAb;

impl FinAb {
    pub fn mor(&self, dom: &FinAbObject, cod: &FinAbObject, matrix: Vec<Vec<u64>>) -> Result<FinAbMorphism> {
        FinAbMorphism::new(dom.clone(), cod.clone(), matrix)
    }

    /// The raw (non-canonical) sum presentation is only used internally.
    fn kernel_on(&self, m: &[Vec<u64>], dom_orders: &[u64], cod: &FinAbObject) -> (FinAbObject, Vec<Vec<u64>>) {
        let gens_cols = preimage_of_zero(&to_big(m), dom_orders.len(), &cod.factors);
        let (obj, incl, _) = subgroup_presentation(&gens_cols, dom_orders);
        (obj, incl)
    }

    /// `a ⊕ b` in canonical form, with its injections and projections.
    pub fn biproduct(&self, a: &FinAbObject, b: &FinAbObject) -> Biproduct {
        let raw: Vec<u64> = a.factors.iter().chain(&b.factors).copied().collect();
        let n = raw.len();
        let gens: Vec<Vec<BigInt>> = (0..n)
            .map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let (obj, incl, coords) = subgroup_presentation(&gens, &raw);
        let ra = a.rank();
        let cols = |lo: usize, hi: usize| -> Vec<Vec<u64>> { coords.iter().map(|r| r[lo..hi].to_vec()).collect() };
        let rows = |lo: usize, hi: usize| -> Vec<Vec<u64>> { incl[lo..hi].to_vec() };
        Biproduct {
            i1: FinAbMorphism::reduced(a.clone(), obj.clone(), cols(0, ra)),
            i2: FinAbMorphism::reduced(b.clone(), obj.clone(), cols(ra, n)),
            p1: FinAbMorphism::reduced(obj.clone(), a.clone(), rows(0, ra)),
            p2: FinAbMorphism::reduced(obj.clone(), b.clone(), rows(ra, n)),
            obj,
        }
    }

    /// Pointwise sum of parallel arrows.
    pub fn add(&self, f: &FinAbMorphism, g: &FinAbMorphism) -> Result<FinAbMorphism> {
        if f.dom != g.dom || f.cod != g.cod {
            return Err(CatError::input(format!("cannot add non-parallel arrows {f} and {g}")));
        }
        let matrix = f
            .matrix
            .iter()
            .zip(&g.matrix)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
            .collect();
        Ok(FinAbMorphism::reduced(f.dom.clone(), f.cod.clone(), matrix))
    }

    /// `[f, g]: dom f ⊕ dom g -> cod`.
    pub fn copair(&self, f: &FinAbMorphism, g: &FinAbMorphism) -> Result<(Biproduct, FinAbMorphism)> {
        if f.cod != g.cod {
            return Err(CatError::input(format!("copairing needs a common codomain: {f} and {g}")));
        }
        let s = self.biproduct(&f.dom, &g.dom);
        let h = self.add(&self.compose_raw(f, &s.p1), &self.compose_raw(g, &s.p2))?;
        Ok((s, h))
    }
}

/// A biproduct `obj = a ⊕ b`: `p1∘i1 = 1`, `p2∘i2 = 1`, `i1∘p1 + i2∘p2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biproduct {
    pub obj: FinAbObject,
    pub i1: FinAbMorphism,
    pub i2: FinAbMorphism,
    pub p1: FinAbMorphism,
    pub p2: FinAbMorphism,
}

impl PointedCategory for FinAb {
    type Obj = FinAbObject;
    type Mor = FinAbMorphism;

    fn backend(&self) -> &'static str {
        "finab"
    }

    fn dom(&self, f: &FinAbMorphism) -> FinAbObject {
        f.dom.clone()
    }

    fn cod(&self, f: &FinAbMorphism) -> FinAbObject {
        f.cod.clone()
    }

    fn identity(&self, a: &FinAbObject) -> FinAbMorphism {
        let n = a.rank();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        FinAbMorphism {
            dom: a.clone(),
            cod: a.clone(),
            matrix,
        }
    }

    fn zero_object(&self) -> FinAbObject {
        FinAbObject::zero()
    }

    fn zero_morphism(&self, a: &FinAbObject, b: &FinAbObject) -> FinAbMorphism {
        FinAbMorphism {
            dom: a.clone(),
            cod: b.clone(),
            matrix: vec![vec![0; a.rank()]; b.rank()],
        }
    }

    fn compose_raw(&self, g: &FinAbMorphism, f: &FinAbMorphism) -> FinAbMorphism {
        let inner = f.cod.rank();
        let matrix = g
            .matrix
            .iter()
            .zip(&g.cod.factors)
            .map(|(row, &c)| {
                (0..f.dom.rank())
                    .map(|j| {
                        (0..inner).fold(0u128, |acc, k| {
                            (acc + row[k] as u128 * f.matrix[k][j] as u128) % c as u128
                        }) as u64
                    })
                    .collect()
            })
            .collect();
        FinAbMorphism {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            matrix,
        }
    }

    fn kernel(&self, f: &FinAbMorphism) -> Result<Kernel<Self>> {
        let (obj, incl) = self.kernel_on(&f.matrix, &f.dom.factors, &f.cod);
        Ok(Kernel::<Self> {
            incl: FinAbMorphism::reduced(obj.clone(), f.dom.clone(), incl),
            obj,
        })
    }

    fn cokernel(&self, f: &FinAbMorphism) -> Result<Cokernel<Self>> {
        let c = &f.cod.factors;
        let m = c.len();
        if m == 0 {
            return Ok(Cokernel::<Self> {
                obj: FinAbObject::zero(),
                proj: self.zero_morphism(&f.cod, &FinAbObject::zero()),
            });
        }
        let rel: IntMatrix = (0..m)
            .map(|i| {
                let mut row: Vec<BigInt> = f.matrix[i].iter().map(|&x| big(x)).collect();
                row.extend((0..m).map(|j| if i == j { big(c[i]) } else { BigInt::zero() }));
                row
            })
            .collect();
        let s = smith_normal_form(&rel);
        let mut factors = vec![];
        let mut proj = vec![];
        for (i, d) in s.diagonal().iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let d = d.to_u64().expect("factor fits");
            factors.push(d);
            proj.push((0..m).map(|j| small(&s.u[i][j], d)).collect());
        }
        let obj = FinAbObject { factors };
        Ok(Cokernel::<Self> {
            proj: FinAbMorphism::reduced(f.cod.clone(), obj.clone(), proj),
            obj,
        })
    }

    fn pullback(&self, f: &FinAbMorphism, g: &FinAbMorphism) -> Result<Pullback<Self>> {
        if f.cod != g.cod {
            return Err(CatError::input("pullback legs have different codomains"));
        }
        let c = &f.cod.factors;
        // kernel of (f, -g) on the raw sum dom f ⊕ dom g
        let combined: Vec<Vec<u64>> = (0..c.len())
            .map(|i| {
                let mut row = f.matrix[i].clone();
                row.extend(g.matrix[i].iter().map(|&x| (c[i] - x % c[i]) % c[i]));
                row
            })
            .collect();
        let mut raw = f.dom.factors.clone();
        raw.extend(&g.dom.factors);
        let (obj, incl) = self.kernel_on(&combined, &raw, &f.cod);
        let split = f.dom.rank();
        let p1 = FinAbMorphism::reduced(obj.clone(), f.dom.clone(), incl[..split].to_vec());
        let p2 = FinAbMorphism::reduced(obj.clone(), g.dom.clone(), incl[split..].to_vec());
        Ok(PullbackData {
            obj,
            p1,
            p2,
            left: f.clone(),
            right: g.clone(),
        })
    }

    fn homs(&self, a: &FinAbObject, b: &FinAbObject) -> Result<Vec<FinAbMorphism>> {
        all_homs(a, b)
    }

    fn objects_up_to(&self, bound: usize) -> Result<Vec<FinAbObject>> {
        Ok(objects_up_to(bound))
    }

    fn object_size(&self, a: &FinAbObject) -> usize {
        a.order()
    }

    fn is_mono(&self, f: &FinAbMorphism) -> bool {
        concrete::is_injective(self, f)
    }

    fn is_epi(&self, f: &FinAbMorphism) -> bool {
        concrete::is_surjective(self, f)
    }

    fn is_iso(&self, f: &FinAbMorphism) -> bool {
        f.dom.order() == f.cod.order() && concrete::is_injective(self, f)
    }

    fn lift_raw(&self, m: &FinAbMorphism, f: &FinAbMorphism) -> Option<FinAbMorphism> {
        concrete::lift(self, m, f)
    }

    fn factor_raw(&self, e: &FinAbMorphism, f: &FinAbMorphism) -> Option<FinAbMorphism> {
        concrete::factor(self, e, f)
    }

    fn pair_raw(&self, pb: &Pullback<Self>, u: &FinAbMorphism, v: &FinAbMorphism) -> Option<FinAbMorphism> {
        concrete::pair(self, pb, u, v)
    }

    fn is_regular_epi(&self, f: &FinAbMorphism) -> Result<bool> {
        concrete::is_coequalizer_of_kernel_pair(self, f)
    }

    fn mono_factorizations(&self, f: &FinAbMorphism) -> Result<Vec<(FinAbMorphism, FinAbMorphism)>> {
        Ok(concrete::image_factorization(self, f))
    }

    fn show(&self, f: &FinAbMorphism) -> String {
        f.to_string()
    }

    fn show_obj(&self, a: &FinAbObject) -> String {
        a.to_string()
    }
}

impl Concrete for FinAb {
    fn order(&self, a: &FinAbObject) -> usize {
        a.order()
    }

    fn apply(&self, f: &FinAbMorphism, x: usize) -> usize {
        f.cod.encode(&f.apply_coords(&f.dom.decode(x)))
    }

    fn from_map_unchecked(&self, dom: &FinAbObject, cod: &FinAbObject, map: &[usize]) -> FinAbMorphism {
        let cols: Vec<Vec<u64>> = (0..dom.rank())
            .map(|j| {
                let mut e = vec![0; dom.rank()];
                e[j] = 1;
                cod.decode(map[dom.encode(&e)])
            })
            .collect();
        let matrix = (0..cod.rank())
            .map(|i| cols.iter().map(|col| col[i]).collect())
            .collect();
        FinAbMorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            matrix,
        }
    }

    fn image(&self, f: &FinAbMorphism) -> (FinAbObject, FinAbMorphism) {
        let (obj, incl, _) = subgroup_presentation(&columns(&f.matrix, f.dom.rank()), &f.cod.factors);
        let m = FinAbMorphism::reduced(obj.clone(), f.cod.clone(), incl);
        (obj, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{classify, compose, factor_through_epi, is_zero, lift_through_mono};

    fn z(n: u64) -> FinAbObject {
        FinAbObject::cyclic(n)
    }

    fn hom(d: u64, c: u64, x: u64) -> FinAbMorphism {
        FinAb.mor(&z(d), &z(c), vec![vec![x]]).unwrap()
    }

    /// Oracle: the element set of a subgroup, from a morphism's element map.
    fn image_set(f: &FinAbMorphism) -> Vec<usize> {
        let mut v = FinAb.element_map(f);
        v.sort();
        v.dedup();
        v
    }

    #[test]
    fn biproduct_identities() {
        for (a, b) in [(z(2), z(3)), (z(2), z(4)), (FinAbObject::zero(), z(5)), (z(4), z(9))] {
            let s = FinAb.biproduct(&a, &b);
            assert_eq!(s.obj.order(), a.order() * b.order());
            assert_eq!(FinAb.compose_raw(&s.p1, &s.i1), FinAb.identity(&a));
            assert_eq!(FinAb.compose_raw(&s.p2, &s.i2), FinAb.identity(&b));
            assert!(is_zero(&FinAb, &FinAb.compose_raw(&s.p2, &s.i1)));
            let sum = FinAb
                .add(&FinAb.compose_raw(&s.i1, &s.p1), &FinAb.compose_raw(&s.i2, &s.p2))
                .unwrap();
            assert_eq!(sum, FinAb.identity(&s.obj));
        }
        let (_, h) = FinAb.copair(&hom(2, 4, 2), &hom(4, 4, 1)).unwrap();
        assert_eq!(image_set(&h).len(), 4);
    }

    #[test]
    fn well_definedness_congruence() {
        assert!(hom_well_defined(&[vec![1]], &z(4), &z(2)).unwrap());
        assert!(!hom_well_defined(&[vec![1]], &z(2), &z(4)).unwrap());
        assert!(hom_well_defined(&[vec![0]], &z(2), &z(4)).unwrap());
        assert!(hom_well_defined(&[vec![1, 0]], &z(2), &z(4)).is_err());
    }

    #[test]
    fn hom_counts_match_congruence_count() {
        assert_eq!(enumerate_homs(&z(2), &z(2), HOM_BOUND).unwrap().len(), 2);
        assert_eq!(enumerate_homs(&z(4), &z(2), HOM_BOUND).unwrap().len(), 2);
        // brute force: count matrices satisfying the congruence
        let v4 = FinAbObject::new(vec![2, 2]).unwrap();
        let target = FinAbObject::new(vec![2, 4]).unwrap();
        let mut brute = 0;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..4 {
                    for d in 0..4 {
                        if hom_well_defined(&[vec![a, b], vec![c, d]], &v4, &target).unwrap() {
                            brute += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(enumerate_homs(&v4, &target, HOM_BOUND).unwrap().len(), brute);
        assert!(enumerate_homs(&z(32), &z(2), HOM_BOUND).is_err());
    }

    #[test]
    fn elements_in_lex_order() {
        let v4 = FinAbObject::new(vec![2, 2]).unwrap();
        assert_eq!(
            v4.enumerate_elements(ELEMENT_BOUND).unwrap(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn composition_example() {
        let mod2 = hom(4, 2, 1);
        let times2 = hom(2, 4, 2);
        let c = compose(&FinAb, &mod2, &times2).unwrap();
        assert_eq!(c, FinAb.zero_morphism(&z(2), &z(2)));
        assert!(compose(&FinAb, &times2, &times2).is_err());
    }

    #[test]
    fn kernel_and_cokernel_examples() {
        let k = FinAb.kernel(&hom(4, 2, 1)).unwrap();
        assert_eq!(k.obj, z(2));
        assert_eq!(image_set(&k.incl), vec![0, 2]);
        let c = FinAb.cokernel(&hom(2, 4, 2)).unwrap();
        assert_eq!(c.obj, z(2));
        assert_eq!(c.proj, hom(4, 2, 1));
        let id = FinAb.identity(&z(6));
        assert_eq!(FinAb.kernel(&id).unwrap().obj, FinAbObject::zero());
        assert_eq!(FinAb.cokernel(&id).unwrap().obj, FinAbObject::zero());
        let zero = FinAb.zero_morphism(&z(6), &z(3));
        let k = FinAb.kernel(&zero).unwrap();
        assert_eq!(k.obj, z(6));
        assert!(FinAb.is_iso(&k.incl));
    }

    #[test]
    fn pullback_examples() {
        let mod2 = hom(4, 2, 1);
        let pb = FinAb.pullback(&mod2, &mod2).unwrap();
        assert_eq!(pb.obj.order(), 8);
        // the apex enumerates exactly {(a, b) : a ≡ b mod 2}
        let pairs: Vec<(usize, usize)> = FinAb
            .element_map(&pb.p1)
            .into_iter()
            .zip(FinAb.element_map(&pb.p2))
            .collect();
        let mut sorted = pairs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
        assert!(pairs.iter().all(|&(a, b)| a % 2 == b % 2));

        let pb = FinAb.pullback(&mod2, &FinAb.identity(&z(2))).unwrap();
        assert!(FinAb.is_iso(&pb.p1));

        let to0 = FinAb.zero_morphism(&z(3), &FinAbObject::zero());
        let to0b = FinAb.zero_morphism(&z(2), &FinAbObject::zero());
        let pb = FinAb.pullback(&to0, &to0b).unwrap();
        assert_eq!(pb.obj, z(6));
    }

    #[test]
    fn lifts_and_factorizations() {
        let times2 = hom(2, 4, 2);
        let mod2 = hom(4, 2, 1);
        assert_eq!(
            lift_through_mono(&FinAb, &times2, &times2).unwrap(),
            Some(FinAb.identity(&z(2)))
        );
        let zero = FinAb.zero_morphism(&z(3), &z(4));
        assert_eq!(
            lift_through_mono(&FinAb, &times2, &zero).unwrap(),
            Some(FinAb.zero_morphism(&z(3), &z(2)))
        );
        assert_eq!(lift_through_mono(&FinAb, &times2, &FinAb.identity(&z(4))).unwrap(), None);
        assert!(lift_through_mono(&FinAb, &mod2, &mod2).is_err());
        assert_eq!(
            factor_through_epi(&FinAb, &mod2, &mod2).unwrap(),
            Some(FinAb.identity(&z(2)))
        );
        assert_eq!(factor_through_epi(&FinAb, &mod2, &FinAb.identity(&z(4))).unwrap(), None);
    }

    #[test]
    fn canonical_normalization() {
        let (obj, iso) = FinAbObject::from_cyclic_orders(&[2, 3]).unwrap();
        assert_eq!(obj, z(6));
        assert_eq!(iso.len(), 1);
        let (obj, _) = FinAbObject::from_cyclic_orders(&[4, 2, 1]).unwrap();
        assert_eq!(obj.factors(), &[2, 4]);
        assert!(FinAbObject::new(vec![4, 2]).is_err());
        assert!(FinAbObject::new(vec![1]).is_err());
    }

    #[test]
    fn objects_universe() {
        let objs = objects_up_to(8);
        let names: Vec<String> = objs.iter().map(|o| o.to_string()).collect();
        assert_eq!(
            names,
            ["0", "Z/2", "Z/3", "Z/2+Z/2", "Z/4", "Z/5", "Z/6", "Z/7", "Z/2+Z/2+Z/2", "Z/2+Z/4", "Z/8"]
        );
    }

    #[test]
    fn surjections_are_normal_epis() {
        for a in objects_up_to(8) {
            for b in objects_up_to(8) {
                for f in FinAb.homs(&a, &b).unwrap() {
                    let p = classify(&FinAb, &f).unwrap();
                    let surj = concrete::is_surjective(&FinAb, &f);
                    assert_eq!(p.is_epi, surj);
                    assert_eq!(p.is_regular_epi, surj);
                    assert_eq!(p.is_normal_epi, surj);
                    assert_eq!(p.is_split_epi.is_some(), true);
                    // |dom| = |Ker| · |Im|
                    let k = FinAb.kernel(&f).unwrap();
                    assert_eq!(a.order(), k.obj.order() * image_set(&f).len());
                }
            }
        }
    }
}
