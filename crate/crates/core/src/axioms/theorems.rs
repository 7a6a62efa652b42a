//! Empirical verification of the implications between the axioms over a
//! corpus of (category, class) pairs.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{AxiomId, Status, Universe};
use crate::category::PointedCategory;
use crate::eclass::EClass;
use crate::error::{CatError, Result};
use crate::tablecat::{enumerate_categories, TableCategory};

use AxiomId::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Theorem {
    /// b ⇒ regular ∧ cokerker
    NormalImpliesRegularCokerKer,
    /// a ∧ c ∧ regular ∧ cokerker ⇒ b
    RegularCokerKerImpliesNormal,
    /// a ∧ c ⇒ hofmann
    ShortFiveImpliesHofmann,
    /// c ⇒ kerfactor
    ShortFiveImpliesKerFactor,
    /// b ∧ hofmann ∧ kerfactor ⇒ c
    HofmannKerFactorImpliesShortFive,
    /// {a,b,c,d,e} ⇔ {a,c,d,e,regular,cokerker} ⇔ {a,b,d,e,hofmann,kerfactor}
    WeakCharacterizations,
    /// b ∧ g ⇒ c
    KernelComparisonImpliesShortFive,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::NormalImpliesRegularCokerKer,
        Theorem::RegularCokerKerImpliesNormal,
        Theorem::ShortFiveImpliesHofmann,
        Theorem::ShortFiveImpliesKerFactor,
        Theorem::HofmannKerFactorImpliesShortFive,
        Theorem::WeakCharacterizations,
        Theorem::KernelComparisonImpliesShortFive,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::NormalImpliesRegularCokerKer => "normal-implies-regular-cokerker",
            Theorem::RegularCokerKerImpliesNormal => "regular-cokerker-implies-normal",
            Theorem::ShortFiveImpliesHofmann => "short-five-implies-hofmann",
            Theorem::ShortFiveImpliesKerFactor => "short-five-implies-kerfactor",
            Theorem::HofmannKerFactorImpliesShortFive => "hofmann-kerfactor-implies-short-five",
            Theorem::WeakCharacterizations => "weak-characterizations",
            Theorem::KernelComparisonImpliesShortFive => "kernel-comparison-implies-short-five",
        }
    }

    /// `(antecedent, consequent)` for the plain implications.
    pub fn implication(self) -> Option<(&'static [AxiomId], &'static [AxiomId])> {
        Some(match self {
            Theorem::NormalImpliesRegularCokerKer => (&[NormalEpi], &[RegularEpi, CokerKer]),
            Theorem::RegularCokerKerImpliesNormal => {
                (&[PullbackStable, ShortFive, RegularEpi, CokerKer], &[NormalEpi])
            }
            Theorem::ShortFiveImpliesHofmann => (&[PullbackStable, ShortFive], &[Hofmann]),
            Theorem::ShortFiveImpliesKerFactor => (&[ShortFive], &[KernelFactor]),
            Theorem::HofmannKerFactorImpliesShortFive => (&[NormalEpi, Hofmann, KernelFactor], &[ShortFive]),
            Theorem::KernelComparisonImpliesShortFive => (&[NormalEpi, KernelComparison], &[ShortFive]),
            Theorem::WeakCharacterizations => return None,
        })
    }

    pub fn statement(self) -> String {
        let ids = |xs: &[AxiomId]| xs.iter().map(|a| a.id()).collect::<Vec<_>>().join(" ∧ ");
        match self.implication() {
            Some((ante, cons)) => format!("{} ⇒ {}", ids(ante), ids(cons)),
            None => WEAK_SETS
                .iter()
                .map(|s| format!("{{{}}}", s.iter().map(|a| a.id()).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(" ⇔ "),
        }
    }
}

impl FromStr for Theorem {
    type Err = CatError;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| CatError::input(format!("unknown theorem id `{s}`")))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

const WEAK_SETS: [&[AxiomId]; 3] = [
    &[PullbackStable, NormalEpi, ShortFive, Composition, RightCancel],
    &[PullbackStable, ShortFive, Composition, RightCancel, RegularEpi, CokerKer],
    &[PullbackStable, NormalEpi, Composition, RightCancel, Hofmann, KernelFactor],
];

/// Status of every axiom for one corpus entry.
pub type Profile = BTreeMap<AxiomId, Status>;

pub fn profile<C: PointedCategory>(u: &Universe<'_, C>) -> Result<Profile> {
    AxiomId::ALL
        .iter()
        .map(|&a| Ok((a, u.check(a)?.status)))
        .collect()
}

fn holds(p: &Profile, set: &[AxiomId]) -> bool {
    set.iter().all(|a| p[a] != Status::Fails)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationTally {
    pub theorem: Theorem,
    pub statement: String,
    pub entries: usize,
    pub antecedent_held: usize,
    pub consequent_held: usize,
    pub violations: Vec<String>,
}

/// Checks one theorem against precomputed profiles. For the plain
/// implications `consequent_held` counts entries where both sides hold; for
/// the three-way equivalence `antecedent_held` counts entries where any of
/// the three sets holds and `consequent_held` those where all do.
pub fn verify_implication(profiles: &[(String, Profile)], theorem: Theorem) -> ImplicationTally {
    let mut tally = ImplicationTally {
        theorem,
        statement: theorem.statement(),
        entries: profiles.len(),
        antecedent_held: 0,
        consequent_held: 0,
        violations: vec![],
    };
    for (label, p) in profiles {
        match theorem.implication() {
            Some((ante, cons)) => {
                if !holds(p, ante) {
                    continue;
                }
                tally.antecedent_held += 1;
                if holds(p, cons) {
                    tally.consequent_held += 1;
                } else {
                    let failed: Vec<&str> = cons.iter().filter(|a| p[a] == Status::Fails).map(|a| a.id()).collect();
                    tally.violations.push(format!("{label}: consequent fails ({})", failed.join(", ")));
                }
            }
            None => {
                let flags: Vec<bool> = WEAK_SETS.iter().map(|s| holds(p, s)).collect();
                if flags.iter().any(|&b| b) {
                    tally.antecedent_held += 1;
                }
                if flags.iter().all(|&b| b) {
                    tally.consequent_held += 1;
                } else if flags.iter().any(|&b| b) {
                    tally.violations.push(format!("{label}: set flags {flags:?}"));
                }
            }
        }
    }
    tally
}

/// True when every cospan has a pullback and every arrow a cokernel.
pub fn has_finite_limits_and_cokernels(cat: &TableCategory) -> bool {
    let m = cat.arrow_count();
    (0..m).all(|f| cat.cokernel(&f).is_ok() && cat.kernel(&f).is_ok())
        && (0..m).all(|f| (0..m).all(|g| cat.cod(&f) != cat.cod(&g) || cat.pullback(&f, &g).is_ok()))
}

/// Every subset of arrows containing all isomorphisms.
pub fn explicit_classes(cat: &TableCategory) -> Vec<(String, HashSet<usize>)> {
    let m = cat.arrow_count();
    let isos: Vec<usize> = (0..m).filter(|f| cat.is_iso(f)).collect();
    let rest: Vec<usize> = (0..m).filter(|f| !cat.is_iso(f)).collect();
    (0u64..1 << rest.len())
        .map(|mask| {
            let mut set: HashSet<usize> = isos.iter().copied().collect();
            let mut names: Vec<String> = vec![];
            for (i, &f) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    set.insert(f);
                    names.push(cat.show(&f));
                }
            }
            let label = if names.is_empty() {
                "isos".to_string()
            } else {
                format!("isos+{}", names.join("+"))
            };
            (label, set)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub max_morphisms: usize,
    pub categories: usize,
    /// Categories with all pullbacks, kernels and cokernels (informational).
    pub categories_with_limits: usize,
    pub entries: usize,
    pub tallies: Vec<ImplicationTally>,
}

impl CorpusReport {
    pub fn violations(&self) -> usize {
        self.tallies.iter().map(|t| t.violations.len()).sum()
    }
}

/// Profiles of every enumerated category paired with every valid explicit
/// class. Categories are not filtered by limit existence: configurations
/// needing a missing limit are skipped inside each axiom check. A finite
/// category with finite products is a preorder, so requiring all limits would
/// leave only the trivial category. Also returns the number of categories
/// and how many of them do have all pullbacks, kernels and cokernels.
pub fn tablecat_profiles(max_morphisms: usize) -> Result<(usize, usize, Vec<(String, Profile)>)> {
    let cats = enumerate_categories(max_morphisms)?;
    let complete = cats.iter().filter(|c| has_finite_limits_and_cokernels(c)).count();
    let jobs: Vec<(usize, &TableCategory, String, HashSet<usize>)> = cats
        .iter()
        .enumerate()
        .flat_map(|(i, c)| explicit_classes(c).into_iter().map(move |(l, s)| (i, c, l, s)))
        .collect();
    let profiles = jobs
        .into_par_iter()
        .map(|(i, c, label, set)| {
            let class = EClass::Explicit { label: label.clone(), arrows: set };
            let u = Universe::new(c, &class, 0)?;
            Ok((format!("category {i} / {label}"), profile(&u)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((cats.len(), complete, profiles))
}

pub fn verify_tablecat_corpus(max_morphisms: usize) -> Result<CorpusReport> {
    let (categories, with_limits, profiles) = tablecat_profiles(max_morphisms)?;
    Ok(CorpusReport {
        max_morphisms,
        categories,
        categories_with_limits: with_limits,
        entries: profiles.len(),
        tallies: Theorem::ALL.iter().map(|&t| verify_implication(&profiles, t)).collect(),
    })
}
