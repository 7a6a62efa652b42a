//! Distinguished classes `E` of morphisms with decidable membership.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::category::{compose, PointedCategory};
use crate::concrete;
use crate::error::{CatError, Result};
use crate::finab::FinAb;
use crate::fingrp::{FinGrp, Group, GrpMorphism};
use crate::pset::{PSet, PSetMorphism, PSetObject};
use crate::tablecat::TableCategory;

/// Membership test for plugin classes. Must be pure.
pub type PredicateFn<C> =
    Arc<dyn Fn(&C, &<C as PointedCategory>::Mor) -> Result<bool> + Send + Sync>;

/// `f ↦ F(f) ∈ E′` for some functor `F` out of `C`.
pub trait TargetMembership<C: PointedCategory>: Send + Sync {
    fn member(&self, f: &C::Mor) -> Result<bool>;
    fn label(&self) -> String;
}

pub enum EClass<C: PointedCategory> {
    Iso,
    SplitEpi,
    RegularEpi,
    NormalEpi,
    All,
    Explicit {
        label: String,
        arrows: HashSet<C::Mor>,
    },
    Predicate {
        name: String,
        test: PredicateFn<C>,
    },
    Intersection(Box<EClass<C>>, Box<EClass<C>>),
    Preimage(Arc<dyn TargetMembership<C>>),
}

impl<C: PointedCategory> Clone for EClass<C> {
    fn clone(&self) -> Self {
        match self {
            EClass::Iso => EClass::Iso,
            EClass::SplitEpi => EClass::SplitEpi,
            EClass::RegularEpi => EClass::RegularEpi,
            EClass::NormalEpi => EClass::NormalEpi,
            EClass::All => EClass::All,
            EClass::Explicit { label, arrows } => EClass::Explicit {
                label: label.clone(),
                arrows: arrows.clone(),
            },
            EClass::Predicate { name, test } => EClass::Predicate {
                name: name.clone(),
                test: test.clone(),
            },
            EClass::Intersection(a, b) => EClass::Intersection(a.clone(), b.clone()),
            EClass::Preimage(t) => EClass::Preimage(t.clone()),
        }
    }
}

impl<C: PointedCategory> fmt::Debug for EClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl<C: PointedCategory> EClass<C> {
    /// Parses the builtin selectors `iso`, `split_epi`, `regular_epi`,
    /// `normal_epi` and `all`.
    pub fn builtin(selector: &str) -> Option<Self> {
        Some(match selector {
            "iso" => EClass::Iso,
            "split_epi" => EClass::SplitEpi,
            "regular_epi" => EClass::RegularEpi,
            "normal_epi" => EClass::NormalEpi,
            "all" => EClass::All,
            _ => return None,
        })
    }

    pub fn is_builtin(&self) -> bool {
        matches!(
            self,
            EClass::Iso | EClass::SplitEpi | EClass::RegularEpi | EClass::NormalEpi | EClass::All
        )
    }

    pub fn label(&self) -> String {
        match self {
            EClass::Iso => "iso".into(),
            EClass::SplitEpi => "split_epi".into(),
            EClass::RegularEpi => "regular_epi".into(),
            EClass::NormalEpi => "normal_epi".into(),
            EClass::All => "all".into(),
            EClass::Explicit { label, .. } => format!("explicit:{label}"),
            EClass::Predicate { name, .. } => format!("predicate:{name}"),
            EClass::Intersection(a, b) => format!("({} ∩ {})", a.label(), b.label()),
            EClass::Preimage(t) => t.label(),
        }
    }

    pub fn intersect(self, other: EClass<C>) -> EClass<C> {
        EClass::Intersection(Box::new(self), Box::new(other))
    }
}

pub fn member<C: PointedCategory>(cat: &C, e: &EClass<C>, f: &C::Mor) -> Result<bool> {
    match e {
        EClass::Iso => Ok(cat.is_iso(f)),
        EClass::SplitEpi => Ok(cat.split_section(f)?.is_some()),
        EClass::RegularEpi => cat.is_regular_epi(f),
        EClass::NormalEpi => cat.is_normal_epi(f),
        EClass::All => Ok(true),
        EClass::Explicit { arrows, .. } => Ok(arrows.contains(f)),
        EClass::Predicate { name, test } => test(cat, f).map_err(|err| match err {
            CatError::Plugin { .. } => err,
            other => CatError::Plugin {
                name: name.clone(),
                message: other.to_string(),
            },
        }),
        EClass::Intersection(a, b) => Ok(member(cat, a, f)? && member(cat, b, f)?),
        EClass::Preimage(t) => t.member(f),
    }
}

/// A functor between two pointed categories.
pub trait Functor<S: PointedCategory, T: PointedCategory>: Send + Sync {
    fn name(&self) -> String;
    fn map_obj(&self, a: &S::Obj) -> T::Obj;
    fn map_mor(&self, f: &S::Mor) -> T::Mor;
}

/// Checks identities and composition on every hom-set among `objects`, and
/// that pullbacks of cospans among them are carried to pullbacks.
pub fn validate_functor<S, T, F>(src: &S, tgt: &T, functor: &F, objects: &[S::Obj]) -> Result<()>
where
    S: PointedCategory,
    T: PointedCategory,
    F: Functor<S, T> + ?Sized,
{
    for a in objects {
        if functor.map_mor(&src.identity(a)) != tgt.identity(&functor.map_obj(a)) {
            return Err(CatError::input(format!(
                "functor {} does not preserve the identity of {}",
                functor.name(),
                src.show_obj(a)
            )));
        }
    }
    for a in objects {
        for b in objects {
            let fs = src.homs(a, b)?;
            for f in &fs {
                let (fa, fb) = (functor.map_obj(a), functor.map_obj(b));
                let ff = functor.map_mor(f);
                if tgt.dom(&ff) != fa || tgt.cod(&ff) != fb {
                    return Err(CatError::input(format!(
                        "functor {} sends {} to an arrow of the wrong type",
                        functor.name(),
                        src.show(f)
                    )));
                }
                for c in objects {
                    for g in src.homs(b, c)? {
                        let lhs = functor.map_mor(&compose(src, &g, f)?);
                        let rhs = compose(tgt, &functor.map_mor(&g), &ff)?;
                        if lhs != rhs {
                            return Err(CatError::input(format!(
                                "functor {} does not preserve the composite {}∘{}",
                                functor.name(),
                                src.show(&g),
                                src.show(f)
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// True when `F` carries the pullback of every cospan among `objects` to a
/// pullback (the comparison into the target pullback is an isomorphism).
pub fn preserves_pullbacks<S, T, F>(src: &S, tgt: &T, functor: &F, objects: &[S::Obj]) -> Result<bool>
where
    S: PointedCategory,
    T: PointedCategory,
    F: Functor<S, T> + ?Sized,
{
    for z in objects {
        for x in objects {
            for f in src.homs(x, z)? {
                for y in objects {
                    for g in src.homs(y, z)? {
                        let pb = src.pullback(&f, &g)?;
                        let tpb = tgt.pullback(&functor.map_mor(&f), &functor.map_mor(&g))?;
                        let cmp = tgt.pair_raw(&tpb, &functor.map_mor(&pb.p1), &functor.map_mor(&pb.p2));
                        if !cmp.is_some_and(|c| tgt.is_iso(&c)) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

struct PreimageMembership<S: PointedCategory, T: PointedCategory, F> {
    functor: Arc<F>,
    target_cat: T,
    target_class: EClass<T>,
    _src: std::marker::PhantomData<fn() -> S>,
}

impl<S, T, F> TargetMembership<S> for PreimageMembership<S, T, F>
where
    S: PointedCategory,
    T: PointedCategory + Send,
    F: Functor<S, T>,
{
    fn member(&self, f: &S::Mor) -> Result<bool> {
        member(&self.target_cat, &self.target_class, &self.functor.map_mor(f))
    }

    fn label(&self) -> String {
        format!("{}^-1({})", self.functor.name(), self.target_class.label())
    }
}

/// `E ∩ F⁻¹(E′)`.
pub fn preimage_class<S, T, F>(functor: Arc<F>, source_class: EClass<S>, target_cat: T, target_class: EClass<T>) -> EClass<S>
where
    S: PointedCategory + 'static,
    T: PointedCategory + Send + 'static,
    F: Functor<S, T> + 'static,
{
    let pre = PreimageMembership {
        functor,
        target_cat,
        target_class,
        _src: std::marker::PhantomData,
    };
    source_class.intersect(EClass::Preimage(Arc::new(pre)))
}

/// Underlying pointed set of a finite group, based at the identity.
#[derive(Debug, Clone, Copy, Default)]
pub struct Forgetful;

impl Functor<FinGrp, PSet> for Forgetful {
    fn name(&self) -> String {
        "forget".into()
    }

    fn map_obj(&self, a: &Group) -> PSetObject {
        PSetObject::new(a.order()).expect("groups are nonempty")
    }

    fn map_mor(&self, f: &GrpMorphism) -> PSetMorphism {
        PSetMorphism::new(self.map_obj(&f.dom), self.map_obj(&f.cod), f.map()).expect("homomorphisms fix the identity")
    }
}

/// The builtin preimage class `RegularEpi ∩ U⁻¹(SplitEpi)` for the forgetful
/// functor `U: FinGrp -> PSet`.
pub fn forgetful_split_preimage() -> EClass<FinGrp> {
    preimage_class(Arc::new(Forgetful), EClass::RegularEpi, PSet, EClass::SplitEpi)
}

/// Identity functor on any category, mostly for tests.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityFunctor;

impl<C: PointedCategory> Functor<C, C> for IdentityFunctor {
    fn name(&self) -> String {
        "id".into()
    }

    fn map_obj(&self, a: &C::Obj) -> C::Obj {
        a.clone()
    }

    fn map_mor(&self, f: &C::Mor) -> C::Mor {
        f.clone()
    }
}

/// A functor between table categories given by index maps.
#[derive(Debug, Clone)]
pub struct TableFunctor {
    pub name: String,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl Functor<TableCategory, TableCategory> for TableFunctor {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn map_obj(&self, a: &usize) -> usize {
        self.obj_map[*a]
    }

    fn map_mor(&self, f: &usize) -> usize {
        self.mor_map[*f]
    }
}

/// Surjections of finite abelian groups whose kernel order is prime to `p`.
pub fn finab_coprime_kernel(p: u64) -> EClass<FinAb> {
    EClass::Predicate {
        name: format!("coprime_kernel_{p}"),
        test: Arc::new(move |cat: &FinAb, f| {
            if !concrete::is_surjective(cat, f) {
                return Ok(false);
            }
            let k = cat.kernel(f)?.obj.order() as u64;
            Ok(num_integer::gcd(k, p) == 1)
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassCheck {
    Holds,
    MissingIso(String),
}

/// Checks that `e` contains every isomorphism among `objects`. Builtin kinds
/// pass by construction.
pub fn validate_class<C: PointedCategory>(cat: &C, e: &EClass<C>, objects: &[C::Obj]) -> Result<ClassCheck> {
    if e.is_builtin() {
        return Ok(ClassCheck::Holds);
    }
    for a in objects {
        for b in objects {
            for f in cat.homs(a, b)? {
                if cat.is_iso(&f) && !member(cat, e, &f)? {
                    return Ok(ClassCheck::MissingIso(cat.show(&f)));
                }
            }
        }
    }
    Ok(ClassCheck::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finab::{FinAbObject, objects_up_to};
    use crate::fingrp::bundled_groups;
    use crate::tablecat::enumerate_categories;

    #[test]
    fn builtin_examples() {
        let z4 = FinAbObject::cyclic(4);
        let id = FinAb.identity(&z4);
        for sel in ["iso", "split_epi", "regular_epi", "normal_epi", "all"] {
            let e = EClass::<FinAb>::builtin(sel).unwrap();
            assert!(member(&FinAb, &e, &id).unwrap());
            assert_eq!(e.label(), sel);
        }
        let collapse = PSet.mor(3, 2, vec![0, 1, 1]).unwrap();
        assert!(!member(&PSet, &EClass::NormalEpi, &collapse).unwrap());
        assert!(member(&PSet, &EClass::RegularEpi, &collapse).unwrap());
        assert!(member(&PSet, &EClass::All, &collapse).unwrap());
    }

    #[test]
    fn isos_belong_to_every_builtin() {
        for a in objects_up_to(8) {
            for b in objects_up_to(8) {
                for f in FinAb.homs(&a, &b).unwrap() {
                    if member(&FinAb, &EClass::Iso, &f).unwrap() {
                        for sel in ["split_epi", "regular_epi", "normal_epi", "all"] {
                            assert!(member(&FinAb, &EClass::builtin(sel).unwrap(), &f).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn intersection_is_conjunction() {
        let e = EClass::<PSet>::SplitEpi.intersect(EClass::NormalEpi);
        for a in 1..=3 {
            for b in 1..=3 {
                for f in PSet.homs(&PSetObject::new(a).unwrap(), &PSetObject::new(b).unwrap()).unwrap() {
                    let both = member(&PSet, &EClass::SplitEpi, &f).unwrap() && member(&PSet, &EClass::NormalEpi, &f).unwrap();
                    assert_eq!(member(&PSet, &e, &f).unwrap(), both);
                }
            }
        }
    }

    #[test]
    fn identity_preimage_of_all_is_the_source_class() {
        let e = preimage_class(Arc::new(IdentityFunctor), EClass::<PSet>::NormalEpi, PSet, EClass::All);
        for f in PSet.homs(&PSetObject::new(3).unwrap(), &PSetObject::new(2).unwrap()).unwrap() {
            assert_eq!(member(&PSet, &e, &f).unwrap(), member(&PSet, &EClass::NormalEpi, &f).unwrap());
        }
    }

    #[test]
    fn forgetful_functor_is_valid_and_preserves_pullbacks() {
        let small: Vec<Group> = bundled_groups().into_iter().filter(|g| g.order() <= 4).collect();
        validate_functor(&FinGrp, &PSet, &Forgetful, &small).unwrap();
        assert!(preserves_pullbacks(&FinGrp, &PSet, &Forgetful, &small).unwrap());
    }

    #[test]
    fn forgetful_preimage_examples() {
        let e = forgetful_split_preimage();
        let s3 = crate::fingrp::group_by_name("S3").unwrap();
        let z2 = crate::fingrp::group_by_name("Z2").unwrap();
        let sign = FinGrp.mor(&s3, &z2, vec![0, 0, 0, 1, 1, 1]).unwrap();
        assert!(member(&FinGrp, &e, &sign).unwrap());
        let (sub, incl) = s3.subgroup(&[0, 3]);
        let incl = FinGrp.mor(&sub, &s3, incl).unwrap();
        assert!(!member(&FinGrp, &e, &incl).unwrap());
    }

    #[test]
    fn coprime_kernel_plugin() {
        let e = finab_coprime_kernel(2);
        let z6 = FinAbObject::cyclic(6);
        let z3 = FinAbObject::cyclic(3);
        let z2 = FinAbObject::cyclic(2);
        // Z/6 -> Z/3 has kernel of order 2
        assert!(!member(&FinAb, &e, &FinAb.mor(&z6, &z3, vec![vec![1]]).unwrap()).unwrap());
        // Z/6 -> Z/2 has kernel of order 3
        assert!(member(&FinAb, &e, &FinAb.mor(&z6, &z2, vec![vec![1]]).unwrap()).unwrap());
        assert_eq!(validate_class(&FinAb, &e, &objects_up_to(6)).unwrap(), ClassCheck::Holds);
    }

    #[test]
    fn plugin_errors_carry_the_name() {
        let e: EClass<PSet> = EClass::Predicate {
            name: "broken".into(),
            test: Arc::new(|_, _| Err(CatError::input("boom"))),
        };
        let f = PSet.identity(&PSetObject::new(1).unwrap());
        match member(&PSet, &e, &f) {
            Err(CatError::Plugin { name, .. }) => assert_eq!(name, "broken"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn explicit_class_validation() {
        let cats = enumerate_categories(5).unwrap();
        let c = &cats[cats.len() - 1];
        let all: HashSet<usize> = (0..c.arrow_count()).collect();
        let objs: Vec<usize> = (0..c.object_count()).collect();
        let full = EClass::Explicit { label: "all".into(), arrows: all.clone() };
        assert_eq!(validate_class(c, &full, &objs).unwrap(), ClassCheck::Holds);
        let id = c.identity(&1);
        let mut missing = all;
        missing.remove(&id);
        let e = EClass::Explicit { label: "partial".into(), arrows: missing };
        assert_eq!(validate_class(c, &e, &objs).unwrap(), ClassCheck::MissingIso(c.show(&id)));
        assert_eq!(validate_class(c, &EClass::Iso, &objs).unwrap(), ClassCheck::Holds);
    }
}
