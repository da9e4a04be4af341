use std::sync::Arc;

use truss_core::bundle::{DeltaDiagram, LabelCategory, Labeling};
use truss_core::enumerate::{depth1_bordisms, for_each_skeleton, thin_labelings};
use truss_core::ordinal::{enumerate_delta_maps, DeltaMap, Ordinal};
use truss_core::poset::FinPoset;
use truss_core::tower::{
    compose_bordisms, compose_bordisms_audited, constant_bordism, constant_inclusion, identity_bordism, pack,
    restrict_bordism, unpack, Bordism, PackedTower, TowerSkeleton, TrussTower,
};
use truss_core::Error;

fn terminal() -> Arc<LabelCategory> {
    Arc::new(LabelCategory::terminal())
}

fn over_arrow(alpha: &DeltaMap) -> TowerSkeleton {
    let arrow = Arc::new(FinPoset::arrow());
    let d = DeltaDiagram::new(arrow.clone(), vec![alpha.src(), alpha.dst()], vec![alpha.clone()]).unwrap();
    TowerSkeleton::from_diagrams(arrow, vec![d]).unwrap()
}

/// Singular elements labelled `0`, regular ones `1`, in the chain `0 < 1`.
fn by_kind(s: TowerSkeleton, c: &Arc<LabelCategory>) -> TrussTower {
    let total = s.total(s.depth() - 1);
    let objects = total.entries().iter().map(|(_, o)| usize::from(o.is_regular())).collect();
    let l = Labeling::from_objects(c.clone(), s.top(), objects).unwrap();
    TrussTower::new(s, l).unwrap()
}

#[test]
fn restrictions_of_a_degeneracy_bordism() {
    let b = Bordism::new(TrussTower::constant_labels(over_arrow(&DeltaMap::terminal(Ordinal(1))), terminal(), 0).unwrap()).unwrap();
    assert_eq!(restrict_bordism(&b, 0).unwrap(), constant_inclusion(&[Ordinal(1)], terminal(), 0).unwrap());
    assert_eq!(restrict_bordism(&b, 1).unwrap(), constant_inclusion(&[Ordinal(0)], terminal(), 0).unwrap());
    assert!(restrict_bordism(&b, 2).is_err());
}

#[test]
fn identity_bordisms() {
    let point = constant_inclusion(&[], terminal(), 0).unwrap();
    let id = identity_bordism(&point).unwrap();
    assert_eq!(id.depth(), 0);
    assert_eq!(id.tower().top().len(), 2);

    let t = constant_inclusion(&[Ordinal(2)], terminal(), 0).unwrap();
    let id = identity_bordism(&t).unwrap();
    assert_eq!(id.tower().diagram(0).arrow(0, 1), Some(&DeltaMap::identity(Ordinal(2))));
    assert_eq!((id.source().unwrap(), id.target().unwrap()), (t.clone(), t.clone()));
    assert_eq!(compose_bordisms(&id, &id).unwrap(), id);
}

#[test]
fn identities_compose_to_identities() {
    let chain = FinPoset::chain(1);
    let c = Arc::new(LabelCategory::from_poset(&chain));
    let point = Arc::new(FinPoset::point());
    for (depth, max) in [(1, 2), (2, 1)] {
        for_each_skeleton(&point, depth, max, |s| {
            for l in thin_labelings(s.top(), &c, &chain).unwrap() {
                let t = TrussTower::new(s.clone(), l).unwrap();
                let id = identity_bordism(&t).unwrap();
                let (composite, audit) = compose_bordisms_audited(&id, &id).unwrap();
                assert!(audit.all_agree());
                assert_eq!(composite, id);
            }
        });
    }
}

#[test]
fn degeneracy_then_face_with_labels() {
    let chain = FinPoset::chain(1);
    let c = Arc::new(LabelCategory::from_poset(&chain));
    let deg = DeltaMap::new(Ordinal(2), Ordinal(1), vec![0, 0, 1]).unwrap();
    let face = DeltaMap::new(Ordinal(1), Ordinal(2), vec![0, 2]).unwrap();
    let b1 = Bordism::new(by_kind(over_arrow(&deg), &c)).unwrap();
    let b2 = Bordism::new(by_kind(over_arrow(&face), &c)).unwrap();
    let (composite, audit) = compose_bordisms_audited(&b1, &b2).unwrap();
    assert!(audit.all_agree());
    assert!(audit.crossing_relations > 0);
    let expected = DeltaMap::new(Ordinal(2), Ordinal(2), vec![0, 0, 2]).unwrap();
    assert_eq!(composite.tower().diagram(0).arrow(0, 1), Some(&expected));
    assert_eq!(composite, Bordism::new(by_kind(over_arrow(&expected), &c)).unwrap());
    // every crossing relation runs from a lower to an upper label
    let top = composite.tower().top();
    let labels = composite.tower().labels();
    for (k, &(a, b)) in top.covers().iter().enumerate() {
        let m = &c.morphisms()[labels.relation(k)];
        assert_eq!((m.src, m.dst), (labels.object(a), labels.object(b)));
    }
}

#[test]
fn mismatched_boundaries_rejected() {
    let b1 = constant_bordism(&[DeltaMap::identity(Ordinal(1))], terminal(), 0).unwrap();
    let b2 = constant_bordism(&[DeltaMap::identity(Ordinal(2))], terminal(), 0).unwrap();
    assert!(matches!(compose_bordisms(&b1, &b2), Err(Error::Composition(_))));
}

#[test]
fn constant_inclusion_examples() {
    let chain = FinPoset::chain(1);
    let c = Arc::new(LabelCategory::from_poset(&chain));
    let t = constant_inclusion(&[Ordinal(2)], c.clone(), 1).unwrap();
    assert_eq!(t.top().len(), 5);
    assert!(t.labels().objects().iter().all(|&o| o == 1));

    let alpha = DeltaMap::new(Ordinal(1), Ordinal(2), vec![0, 2]).unwrap();
    let up = c.morphism_index("0->1").unwrap();
    let b = constant_bordism(std::slice::from_ref(&alpha), c.clone(), up).unwrap();
    assert_eq!(b.tower().diagram(0).arrow(0, 1), Some(&alpha));
    assert_eq!(b.source().unwrap(), constant_inclusion(&[Ordinal(1)], c.clone(), 0).unwrap());
    assert_eq!(b.target().unwrap(), constant_inclusion(&[Ordinal(2)], c.clone(), 1).unwrap());
}

#[test]
fn constant_inclusion_is_fully_faithful() {
    for p in truss_core::enumerate::posets_up_to_iso(3).into_iter().filter(|p| p.len() == 3) {
        let c = Arc::new(LabelCategory::from_poset(&p));
        let all = depth1_bordisms(2, &c, &p).unwrap();
        let ends: Vec<(TrussTower, TrussTower)> = all.iter().map(|b| (b.source().unwrap(), b.target().unwrap())).collect();
        for k in 0..=2 {
            for k2 in 0..=2 {
                for x in 0..3 {
                    for y in 0..3 {
                        let src = constant_inclusion(&[Ordinal(k)], c.clone(), x).unwrap();
                        let dst = constant_inclusion(&[Ordinal(k2)], c.clone(), y).unwrap();
                        let between: Vec<&Bordism> = all
                            .iter()
                            .zip(&ends)
                            .filter(|(_, e)| e.0 == src && e.1 == dst)
                            .map(|(b, _)| b)
                            .collect();
                        let maps = enumerate_delta_maps(Ordinal(k), Ordinal(k2));
                        assert_eq!(between.len(), maps.len() * c.hom(x, y).len());
                        for alpha in &maps {
                            for &f in c.hom(x, y) {
                                let image = constant_bordism(std::slice::from_ref(alpha), c.clone(), f).unwrap();
                                assert!(between.contains(&&image));
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn pack_examples() {
    let chain = FinPoset::chain(1);
    let c = Arc::new(LabelCategory::from_poset(&chain));

    let t = constant_inclusion(&[Ordinal(1)], c.clone(), 1).unwrap();
    let p = pack(&t).unwrap();
    assert_eq!(p.tower().depth(), 0);
    assert_eq!(p.tower().top().len(), 1);
    assert_eq!(p.category().object(p.tower().labels().object(0)), &t);
    assert_eq!(unpack(&p).unwrap(), t);

    let point = Arc::new(FinPoset::point());
    let mut s = TowerSkeleton::new(point);
    s.push(DeltaDiagram::constant(s.top().clone(), Ordinal(1))).unwrap();
    let level = s.top().clone();
    s.push(DeltaDiagram::from_fn(level, vec![Ordinal(0), Ordinal(2), Ordinal(1)], |a, b| match (a, b) {
        (1, 0) => DeltaMap::terminal(Ordinal(2)),
        _ => DeltaMap::new(Ordinal(2), Ordinal(1), vec![0, 1, 1]).unwrap(),
    })
    .unwrap())
    .unwrap();
    let t = by_kind(s, &c);
    let p = pack(&t).unwrap();
    assert_eq!(p.tower().depth(), 1);
    let fibers: Vec<usize> = (0..3).map(|e| p.category().object(p.tower().labels().object(e)).top().len()).collect();
    assert_eq!(fibers, vec![1, 5, 3]);
    assert_eq!(unpack(&p).unwrap(), t);
    assert_eq!(pack(&unpack(&p).unwrap()).unwrap(), p);
}

#[test]
fn pack_rejects_depth_zero() {
    let t = constant_inclusion(&[], terminal(), 0).unwrap();
    assert!(matches!(pack(&t), Err(Error::UnsupportedDepth { found: 0, .. })));
}

#[test]
fn packed_labels_must_use_the_truss_category() {
    let t = constant_inclusion(&[Ordinal(1), Ordinal(1)], terminal(), 0).unwrap();
    let p = pack(&t).unwrap();
    let foreign = constant_inclusion(&[Ordinal(1)], terminal(), 0).unwrap();
    assert!(PackedTower::new(foreign, p.category().clone()).is_err());
    assert_eq!(unpack(&p).unwrap(), t);
}
