use super::*;
use crate::category::{classify, PointedCategory};

fn spec(json: &str) -> TableSpec {
    serde_json::from_str(json).unwrap()
}

pub(crate) fn idempotent_monoid() -> TableCategory {
    spec(
        r#"{"objects":["0","A"],"zero":"0",
            "arrows":[{"name":"1_0","dom":"0","cod":"0"},{"name":"z","dom":"0","cod":"A"},
                      {"name":"t","dom":"A","cod":"0"},{"name":"1_A","dom":"A","cod":"A"},
                      {"name":"0_A","dom":"A","cod":"A"},{"name":"e","dom":"A","cod":"A"}],
            "identities":{"0":"1_0","A":"1_A"},
            "compose":[["z","t","0_A"],["t","z","1_0"],["t","0_A","t"],["0_A","z","z"],
                       ["0_A","0_A","0_A"],["e","e","e"],["e","0_A","0_A"],["0_A","e","0_A"],
                       ["t","e","t"],["e","z","z"]]}"#,
    )
    .build()
    .unwrap()
}

/// Brute-force isomorphism test: every arrow bijection that preserves
/// hom-set shape and composition.
fn isomorphic(c: &TableCategory, d: &TableCategory) -> bool {
    let (n, m) = (c.object_count(), c.arrow_count());
    if n != d.object_count() || m != d.arrow_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        let mut obj = vec![usize::MAX; n];
        let mut ok = true;
        for f in 0..m {
            let (a, b) = (c.arrow(f), d.arrow(perm[f]));
            for (x, y) in [(a.dom, b.dom), (a.cod, b.cod)] {
                if obj[x] == usize::MAX {
                    obj[x] = y;
                } else if obj[x] != y {
                    ok = false;
                }
            }
        }
        ok = ok
            && (0..m).all(|g| {
                (0..m).all(|f| match c.comp(g, f) {
                    Some(h) => d.comp(perm[g], perm[f]) == Some(perm[h]),
                    None => d.comp(perm[g], perm[f]).is_none(),
                })
            });
        if ok {
            return true;
        }
        // next lexicographic permutation
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return false;
        };
        let j = (i + 1..m).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

#[test]
fn trivial_category_is_the_only_one_arrow_category() {
    let cats = enumerate_categories(1).unwrap();
    assert_eq!(cats.len(), 1);
    assert_eq!(cats[0].object_count(), 1);
    assert_eq!(cats[0].arrow_count(), 1);
}

#[test]
fn missing_zero_object_is_reported() {
    let err = spec(
        r#"{"objects":["A"],"arrows":[{"name":"1","dom":"A","cod":"A"},{"name":"e","dom":"A","cod":"A"}],
            "identities":{"A":"1"},"compose":[["e","e","e"]]}"#,
    )
    .build()
    .unwrap_err();
    assert!(err.to_string().contains("no zero object"), "{err}");
}

#[test]
fn broken_associativity_names_the_triple() {
    let text = include_str!("../../data/tables/broken_assoc.json");
    let err = serde_json::from_str::<TableSpec>(text).unwrap().build().unwrap_err();
    let msg = err.to_string();
    // (e∘z)∘t = z∘t = 0_A but e∘(z∘t) = e∘0_A = e
    assert!(msg.contains("associativity fails for (e, z, t)"), "{msg}");
}

#[test]
fn enumeration_is_valid_and_duplicate_free() {
    let cats = enumerate_categories(6).unwrap();
    for (i, c) in cats.iter().enumerate() {
        validate(c.data()).unwrap();
        for d in &cats[..i] {
            assert!(!isomorphic(c, d), "duplicate categories {i}");
        }
        assert_eq!(canonical_encoding(c), canonical_encoding(&c.clone()));
    }
    // every canonical code is distinct
    let mut codes: Vec<Vec<u8>> = cats.iter().map(canonical_encoding).collect();
    codes.sort();
    codes.dedup();
    assert_eq!(codes.len(), cats.len());
}

#[test]
fn enumeration_is_complete_for_one_endo_monoid() {
    // With a zero object and one further object A whose endo-monoid has three
    // elements {1, e, 0}, e∘e ∈ {0, e, 1} gives three categories.
    let six: Vec<_> = enumerate_categories(6)
        .unwrap()
        .into_iter()
        .filter(|c| c.arrow_count() == 6)
        .collect();
    assert_eq!(six.len(), 3);
    assert!(six.iter().any(|c| isomorphic(c, &idempotent_monoid())));
}

#[test]
fn enumeration_order_is_deterministic() {
    let a: Vec<_> = enumerate_categories(7).unwrap().iter().map(canonical_encoding).collect();
    let b: Vec<_> = enumerate_categories(7).unwrap().iter().map(canonical_encoding).collect();
    assert_eq!(a, b);
    assert!(matches!(enumerate_categories(MAX_ENUM_MORPHISMS + 1), Err(CatError::Budget(_))));
}

#[test]
fn limit_of_empty_shape_is_the_zero_object() {
    for c in enumerate_categories(6).unwrap() {
        let l = c.find_limit(&LimitShape { nodes: vec![], edges: vec![] }).unwrap();
        assert_eq!(l.apex, c.zero_object());
    }
}

#[test]
fn missing_pullback_is_none() {
    let c = idempotent_monoid();
    let e = c.arrow_by_name("e").unwrap();
    assert!(c.pullback(&e, &e).unwrap_err().is_missing_limit());
}

#[test]
fn pullback_along_identity() {
    for c in enumerate_categories(7).unwrap() {
        for f in 0..c.arrow_count() {
            let id = c.identity(&c.cod(&f));
            let pb = c.pullback(&f, &id).unwrap();
            assert!(c.is_iso(&pb.p1));
        }
    }
}

/// Oracle: universality of kernel cones checked directly.
#[test]
fn kernels_are_universal() {
    for c in enumerate_categories(7).unwrap() {
        for f in 0..c.arrow_count() {
            let Ok(ks) = c.all_kernels(&f) else { continue };
            let (a, b) = (c.dom(&f), c.cod(&f));
            for k in ks {
                assert_eq!(c.comp(f, k), Some(c.zero_morphism(&c.dom(&k), &b)));
                for x in 0..c.object_count() {
                    for t in c.homs(&x, &a).unwrap() {
                        if c.comp(f, t) != Some(c.zero_morphism(&x, &b)) {
                            continue;
                        }
                        let n = c.homs(&x, &c.dom(&k)).unwrap().into_iter().filter(|&s| c.comp(k, s) == Some(t)).count();
                        assert_eq!(n, 1);
                    }
                }
            }
        }
    }
}

#[test]
fn isos_are_every_kind_of_epi() {
    for c in enumerate_categories(7).unwrap() {
        for f in 0..c.arrow_count() {
            let p = classify(&c, &f).unwrap();
            if p.is_iso {
                assert!(p.is_mono && p.is_epi && p.is_regular_epi && p.is_normal_epi && p.is_normal_mono);
                assert_eq!(p.is_split_epi, Some(true));
            }
            if p.is_normal_epi {
                assert!(p.is_regular_epi && p.is_epi);
            }
        }
    }
}

#[test]
fn spec_round_trip() {
    for c in enumerate_categories(6).unwrap() {
        let text = serde_json::to_string(&c.to_spec()).unwrap();
        let back = serde_json::from_str::<TableSpec>(&text).unwrap().build().unwrap();
        assert_eq!(back, c);
    }
}
