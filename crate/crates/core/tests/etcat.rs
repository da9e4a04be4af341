use std::collections::BTreeSet;

use truss_core::etcat::{
    compose_et, factorization_poset, fiber_over_map, fiber_over_ordinal, forget_to_delta, hom_et,
    validate_et_morphism, EtMorphism, EtObject, Kind,
};
use truss_core::ordinal::{compose_delta, enumerate_delta_maps, DeltaMap, Ordinal};

fn r(i: usize, n: usize) -> EtObject {
    EtObject::regular(i, n).unwrap()
}

fn s(i: usize, n: usize) -> EtObject {
    EtObject::singular(i, n).unwrap()
}

fn d(values: &[usize], dst: usize) -> DeltaMap {
    DeltaMap::new(Ordinal(values.len() - 1), Ordinal(dst), values.to_vec()).unwrap()
}

fn objects(max: usize) -> Vec<EtObject> {
    let mut out = Vec::new();
    for n in 0..=max {
        for i in 0..=n {
            out.push(r(i, n));
        }
        for i in 0..n {
            out.push(s(i, n));
        }
    }
    out
}

/// Every sequence in `{0..=m}^(n+1)`, monotone or not, in lexicographic order.
fn sequences(n: usize, m: usize) -> Vec<Vec<usize>> {
    let total = (m + 1).pow(n as u32 + 1);
    (0..total)
        .map(|mut code| {
            let mut v = vec![0; n + 1];
            for slot in v.iter_mut().rev() {
                *slot = code % (m + 1);
                code /= m + 1;
            }
            v
        })
        .collect()
}

/// Hom-sets read directly off the defining inequalities.
fn brute_hom(x: &EtObject, y: &EtObject) -> Vec<Vec<usize>> {
    let (n, m) = (x.ambient().0, y.ambient().0);
    let (i, j) = (x.index(), y.index());
    sequences(n, m)
        .into_iter()
        .filter(|f| f.windows(2).all(|w| w[0] <= w[1]))
        .filter(|f| match (x.kind(), y.kind()) {
            (Kind::Regular, Kind::Regular) => f[i] == j,
            (Kind::Singular, Kind::Singular) => f[i] <= j && j < f[i + 1],
            (Kind::Singular, Kind::Regular) => f[i] <= j && j <= f[i + 1],
            (Kind::Regular, Kind::Singular) => false,
        })
        .collect()
}

#[test]
fn hom_sets_match_brute_force() {
    for x in objects(3) {
        for y in objects(3) {
            let got: Vec<Vec<usize>> = hom_et(&x, &y).iter().map(|f| f.underlying().values().to_vec()).collect();
            assert_eq!(got, brute_hom(&x, &y), "{x} -> {y}");
        }
    }
}

#[test]
fn hom_spot_values() {
    assert_eq!(hom_et(&s(0, 1), &r(1, 2)).len(), 4);
    assert_eq!(hom_et(&s(0, 2), &s(1, 2)).len(), 2);
    assert_eq!(hom_et(&r(0, 0), &r(0, 0)).len(), 1);
    for x in objects(3).into_iter().filter(EtObject::is_regular) {
        for y in objects(3).into_iter().filter(EtObject::is_singular) {
            assert!(hom_et(&x, &y).is_empty());
        }
    }
}

#[test]
fn validation_examples() {
    assert!(validate_et_morphism(&r(0, 1), &r(1, 1), &d(&[1, 1], 1)).unwrap());
    assert!(!validate_et_morphism(&r(0, 1), &r(1, 1), &d(&[0, 1], 1)).unwrap());
    assert!(validate_et_morphism(&s(0, 1), &s(0, 1), &d(&[0, 1], 1)).unwrap());
    assert!(!validate_et_morphism(&s(0, 1), &s(0, 1), &d(&[0, 0], 1)).unwrap());
    for alpha in enumerate_delta_maps(Ordinal(2), Ordinal(2)) {
        assert!(!validate_et_morphism(&r(0, 2), &s(0, 2), &alpha).unwrap());
    }
    assert!(validate_et_morphism(&r(0, 1), &r(0, 2), &d(&[0, 1], 1)).is_err());
}

#[test]
fn composition_example() {
    let f = EtMorphism::new(s(0, 1), s(0, 2), d(&[0, 2], 2)).unwrap();
    let g = EtMorphism::new(s(0, 2), r(1, 2), DeltaMap::identity(Ordinal(2))).unwrap();
    let h = compose_et(&f, &g).unwrap();
    assert_eq!((h.src(), h.dst()), (&s(0, 1), &r(1, 2)));
    assert_eq!(h.underlying(), &d(&[0, 2], 2));
}

#[test]
fn identities_and_associativity() {
    let objs = objects(2);
    for x in &objs {
        let id = EtMorphism::identity(*x);
        for y in &objs {
            for f in hom_et(x, y) {
                assert_eq!(compose_et(&id, &f).unwrap(), f);
                assert_eq!(compose_et(&f, &EtMorphism::identity(*y)).unwrap(), f);
            }
        }
    }
    for x in &objs {
        for y in &objs {
            let xy = hom_et(x, y);
            if xy.is_empty() {
                continue;
            }
            for z in &objs {
                let yz = hom_et(y, z);
                for w in &objs {
                    let zw = hom_et(z, w);
                    for f in &xy {
                        for g in &yz {
                            let fg = compose_et(f, g).unwrap();
                            assert!(validate_et_morphism(x, z, fg.underlying()).unwrap());
                            for h in &zw {
                                let left = compose_et(&fg, h).unwrap();
                                let right = compose_et(f, &compose_et(g, h).unwrap()).unwrap();
                                assert_eq!(left, right);
                                assert_eq!(
                                    forget_to_delta(&left),
                                    compose_delta(&compose_delta(f.underlying(), g.underlying()).unwrap(), h.underlying()).unwrap()
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn forgetful_functor_on_identities() {
    assert_eq!(forget_to_delta(&EtMorphism::identity(s(1, 3))), DeltaMap::identity(Ordinal(3)));
    assert_eq!(forget_to_delta(&EtMorphism::identity(r(0, 0))), DeltaMap::identity(Ordinal(0)));
}

#[test]
fn fiber_shapes() {
    for n in 0..=5 {
        let f = fiber_over_ordinal(Ordinal(n));
        assert_eq!(f.len(), 2 * n + 1);
        let covers: BTreeSet<(EtObject, EtObject)> = f.covering_relations().into_iter().map(|(a, b)| (a.1, b.1)).collect();
        let expected: BTreeSet<(EtObject, EtObject)> =
            (0..n).flat_map(|i| [(s(i, n), r(i, n)), (s(i, n), r(i + 1, n))]).collect();
        assert_eq!(covers, expected);
    }
    assert_eq!(fiber_over_ordinal(Ordinal(0)).objects(), &[(0, r(0, 0))]);
}

fn cross(alpha: &DeltaMap) -> BTreeSet<(EtObject, EtObject)> {
    fiber_over_map(alpha).cross_relations().into_iter().collect()
}

fn cross_covers(alpha: &DeltaMap) -> BTreeSet<(EtObject, EtObject)> {
    fiber_over_map(alpha)
        .covering_relations()
        .into_iter()
        .filter(|(a, b)| a.0 != b.0)
        .map(|(a, b)| (a.1, b.1))
        .collect()
}

#[test]
fn outer_face_embeds_a_span() {
    let alpha = d(&[1, 2], 2);
    let drawn: BTreeSet<_> = [(r(0, 1), r(1, 2)), (s(0, 1), s(1, 2)), (r(1, 1), r(2, 2))].into();
    assert_eq!(cross_covers(&alpha), drawn);
    let mut all = drawn.clone();
    all.extend([(s(0, 1), r(1, 2)), (s(0, 1), r(2, 2))]);
    assert_eq!(cross(&alpha), all);
}

#[test]
fn degeneracy_merges_regular_levels() {
    let alpha = d(&[0, 0], 0);
    let drawn: BTreeSet<_> = [(r(0, 1), r(0, 0)), (r(1, 1), r(0, 0))].into();
    assert_eq!(cross_covers(&alpha), drawn);
    let mut all = drawn.clone();
    all.insert((s(0, 1), r(0, 0)));
    assert_eq!(cross(&alpha), all);
    assert_eq!(fiber_over_map(&alpha).len(), 4);
}

#[test]
fn inner_face_splits_a_singular_level() {
    let alpha = d(&[0, 2], 2);
    let drawn: BTreeSet<_> = [
        (r(0, 1), r(0, 2)),
        (s(0, 1), s(0, 2)),
        (s(0, 1), s(1, 2)),
        (r(1, 1), r(2, 2)),
    ]
    .into();
    assert_eq!(cross_covers(&alpha), drawn);
    let mut all = drawn.clone();
    all.extend([(s(0, 1), r(0, 2)), (s(0, 1), r(1, 2)), (s(0, 1), r(2, 2))]);
    assert_eq!(cross(&alpha), all);
}

#[test]
fn identity_fiber_is_doubled() {
    let alpha = DeltaMap::identity(Ordinal(1));
    let expected: BTreeSet<_> = [
        (r(0, 1), r(0, 1)),
        (r(1, 1), r(1, 1)),
        (s(0, 1), s(0, 1)),
        (s(0, 1), r(0, 1)),
        (s(0, 1), r(1, 1)),
    ]
    .into();
    assert_eq!(cross(&alpha), expected);
}

#[test]
fn fiber_over_map_is_a_poset() {
    for n in 0..=3 {
        for m in 0..=3 {
            for alpha in enumerate_delta_maps(Ordinal(n), Ordinal(m)) {
                fiber_over_map(&alpha).poset().check_partial_order().unwrap();
            }
        }
    }
}

/// Middle objects by direct search, and connectivity by flood fill over
/// the comparability graph.
fn brute_factorizations(x: &EtObject, z: &EtObject, alpha: &DeltaMap, beta: &DeltaMap) -> (usize, bool) {
    let mid = alpha.dst().0;
    let holds = |a: &EtObject, b: &EtObject, f: &[usize]| brute_hom(a, b).iter().any(|g| g == f);
    let ys: Vec<EtObject> = objects(mid)
        .into_iter()
        .filter(|y| y.ambient().0 == mid)
        .filter(|y| holds(x, y, alpha.values()) && holds(y, z, beta.values()))
        .collect();
    if ys.is_empty() {
        return (0, false);
    }
    let id: Vec<usize> = (0..=mid).collect();
    let mut seen = vec![false; ys.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        for b in 0..ys.len() {
            if !seen[b] && (holds(&ys[a], &ys[b], &id) || holds(&ys[b], &ys[a], &id)) {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    (ys.len(), seen.iter().all(|&v| v))
}

#[test]
fn factorization_posets_match_brute_force() {
    let objs = objects(2);
    for x in &objs {
        for z in &objs {
            for mid in 0..=2 {
                for alpha in enumerate_delta_maps(x.ambient(), Ordinal(mid)) {
                    for beta in enumerate_delta_maps(Ordinal(mid), z.ambient()) {
                        let gamma = compose_delta(&alpha, &beta).unwrap();
                        let Ok(h) = EtMorphism::new(*x, *z, gamma) else { continue };
                        let fp = factorization_poset(x, z, &h, &alpha, &beta).unwrap();
                        let (count, connected) = brute_factorizations(x, z, &alpha, &beta);
                        assert_eq!(fp.len(), count);
                        assert!(count > 0, "{x} -> {z} over {alpha} ; {beta}");
                        assert!(connected && fp.is_connected());
                    }
                }
            }
        }
    }
}

#[test]
fn factorization_trivial_and_bad_input() {
    let id = DeltaMap::identity(Ordinal(0));
    let h = EtMorphism::identity(r(0, 0));
    let fp = factorization_poset(&r(0, 0), &r(0, 0), &h, &id, &id).unwrap();
    assert_eq!(fp.objects(), &[(0, r(0, 0))]);
    let h = EtMorphism::new(s(0, 1), r(0, 0), d(&[0, 0], 0)).unwrap();
    assert!(factorization_poset(&s(0, 1), &r(0, 0), &h, &DeltaMap::identity(Ordinal(1)), &id).is_err());
}

#[test]
fn object_literals_round_trip() {
    for x in objects(3) {
        assert_eq!(x.to_string().parse::<EtObject>().unwrap(), x);
    }
    assert!("r3@2".parse::<EtObject>().is_err());
    assert!("s2@2".parse::<EtObject>().is_err());
    assert!("q0@1".parse::<EtObject>().is_err());
}
