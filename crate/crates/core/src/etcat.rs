//! The category ET of regular and singular positions over finite ordinals,
//! together with its forgetful functor to Δ.
//!
//! Objects are `r_i[n]` (`0 ≤ i ≤ n`) and `s_i[n]` (`0 ≤ i < n`). A morphism
//! is a Δ-map `α : [n] → [m]` subject to a pointwise constraint depending on
//! the kinds of its endpoints:
//!
//! | source  | target  | constraint              |
//! |---------|---------|-------------------------|
//! | `r_i`   | `r_j`   | `α(i) = j`              |
//! | `s_i`   | `s_j`   | `α(i) ≤ j < α(i+1)`     |
//! | `s_i`   | `r_j`   | `α(i) ≤ j ≤ α(i+1)`     |
//! | `r_i`   | `s_j`   | never                   |

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::{compose_delta, enumerate_delta_maps, DeltaMap, Ordinal};
use crate::poset::FinPoset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "r")]
    Regular,
    #[serde(rename = "s")]
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawObject", into = "RawObject")]
pub struct EtObject {
    kind: Kind,
    index: usize,
    n: Ordinal,
}

#[derive(Serialize, Deserialize)]
struct RawObject {
    kind: Kind,
    i: usize,
    n: usize,
}

impl TryFrom<RawObject> for EtObject {
    type Error = Error;
    fn try_from(raw: RawObject) -> Result<Self> {
        EtObject::new(raw.kind, raw.i, Ordinal(raw.n))
    }
}

impl From<EtObject> for RawObject {
    fn from(o: EtObject) -> Self {
        RawObject {
            kind: o.kind,
            i: o.index,
            n: o.n.0,
        }
    }
}

impl EtObject {
    pub fn new(kind: Kind, index: usize, n: Ordinal) -> Result<Self> {
        let ok = match kind {
            Kind::Regular => index <= n.0,
            Kind::Singular => index < n.0,
        };
        if !ok {
            return Err(Error::Domain(format!(
                "no {} object with index {index} over {n}",
                match kind {
                    Kind::Regular => "regular",
                    Kind::Singular => "singular",
                }
            )));
        }
        Ok(EtObject { kind, index, n })
    }

    pub fn regular(index: usize, n: usize) -> Result<Self> {
        Self::new(Kind::Regular, index, Ordinal(n))
    }

    pub fn singular(index: usize, n: usize) -> Result<Self> {
        Self::new(Kind::Singular, index, Ordinal(n))
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ambient(&self) -> Ordinal {
        self.n
    }

    pub fn is_regular(&self) -> bool {
        self.kind == Kind::Regular
    }

    pub fn is_singular(&self) -> bool {
        self.kind == Kind::Singular
    }

    /// Position in the fiber `r_0 < s_0 < r_1 < … < r_n` read bottom to top.
    pub fn fiber_position(&self) -> usize {
        match self.kind {
            Kind::Regular => 2 * self.index,
            Kind::Singular => 2 * self.index + 1,
        }
    }

    /// Inverse of [`EtObject::fiber_position`].
    pub fn at_position(n: Ordinal, pos: usize) -> Result<Self> {
        if pos.is_multiple_of(2) {
            Self::new(Kind::Regular, pos / 2, n)
        } else {
            Self::new(Kind::Singular, pos / 2, n)
        }
    }

    /// All objects over `[n]` in fiber order.
    pub fn fiber(n: Ordinal) -> impl Iterator<Item = EtObject> {
        (0..=2 * n.0).map(move |p| EtObject::at_position(n, p).expect("in range"))
    }
}

impl PartialOrd for EtObject {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EtObject {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.fiber_position()).cmp(&(other.n, other.fiber_position()))
    }
}

impl fmt::Display for EtObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::Regular => 'r',
            Kind::Singular => 's',
        };
        write!(f, "{k}{}@{}", self.index, self.n.0)
    }
}

impl FromStr for EtObject {
    type Err = Error;

    /// Parses literals such as `r1@2` or `s0@1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("malformed ET object literal {s:?}; expected e.g. r1@2"));
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('r') => Kind::Regular,
            Some('s') => Kind::Singular,
            _ => return Err(bad()),
        };
        let (i, n) = chars.as_str().split_once('@').ok_or_else(bad)?;
        let i = i.parse().map_err(|_| bad())?;
        let n = n.parse().map_err(|_| bad())?;
        EtObject::new(kind, i, Ordinal(n))
    }
}

/// Whether `α` underlies a morphism `src → dst` of ET.
pub fn validate_et_morphism(src: &EtObject, dst: &EtObject, alpha: &DeltaMap) -> Result<bool> {
    if alpha.src() != src.n || alpha.dst() != dst.n {
        return Err(Error::Domain(format!(
            "map {alpha} does not run from {} to {}",
            src.n, dst.n
        )));
    }
    Ok(et_constraint(src, dst, alpha))
}

/// The hom-set constraint, assuming ordinals already match.
pub(crate) fn et_constraint(src: &EtObject, dst: &EtObject, alpha: &DeltaMap) -> bool {
    let (i, j) = (src.index, dst.index);
    match (src.kind, dst.kind) {
        (Kind::Regular, Kind::Regular) => alpha.apply(i) == j,
        (Kind::Singular, Kind::Singular) => alpha.apply(i) <= j && j < alpha.apply(i + 1),
        (Kind::Singular, Kind::Regular) => alpha.apply(i) <= j && j <= alpha.apply(i + 1),
        (Kind::Regular, Kind::Singular) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EtMorphism {
    src: EtObject,
    dst: EtObject,
    underlying: DeltaMap,
}

impl EtMorphism {
    pub fn new(src: EtObject, dst: EtObject, underlying: DeltaMap) -> Result<Self> {
        if !validate_et_morphism(&src, &dst, &underlying)? {
            return Err(Error::Domain(format!(
                "{underlying} does not underlie a morphism {src} → {dst}"
            )));
        }
        Ok(EtMorphism {
            src,
            dst,
            underlying,
        })
    }

    pub fn identity(x: EtObject) -> Self {
        EtMorphism {
            src: x,
            dst: x,
            underlying: DeltaMap::identity(x.n),
        }
    }

    pub fn src(&self) -> &EtObject {
        &self.src
    }

    pub fn dst(&self) -> &EtObject {
        &self.dst
    }

    pub fn underlying(&self) -> &DeltaMap {
        &self.underlying
    }
}

impl fmt::Display for EtMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {} over {}", self.src, self.dst, self.underlying)
    }
}

/// All morphisms `x → y`, ordered lexicographically by underlying map.
pub fn hom_et(x: &EtObject, y: &EtObject) -> Vec<EtMorphism> {
    enumerate_delta_maps(x.n, y.n)
        .into_iter()
        .filter(|alpha| et_constraint(x, y, alpha))
        .map(|alpha| EtMorphism {
            src: *x,
            dst: *y,
            underlying: alpha,
        })
        .collect()
}

/// Composite `g ∘ f`.
pub fn compose_et(f: &EtMorphism, g: &EtMorphism) -> Result<EtMorphism> {
    if f.dst != g.src {
        return Err(Error::CompositionDomain(format!(
            "{f} does not end where {g} starts"
        )));
    }
    let underlying = compose_delta(&f.underlying, &g.underlying)?;
    if !et_constraint(&f.src, &g.dst, &underlying) {
        return Err(Error::Invariant(format!(
            "composite of {f} and {g} leaves ET"
        )));
    }
    Ok(EtMorphism {
        src: f.src,
        dst: g.dst,
        underlying,
    })
}

pub fn forget_to_delta(f: &EtMorphism) -> DeltaMap {
    f.underlying.clone()
}

/// A finite subposet of ET, each object tagged by the base element it lies
/// over (`0` for a single ordinal, `0`/`1` for the source/target of a map).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberPoset {
    objects: Vec<(usize, EtObject)>,
    poset: FinPoset,
}

impl FiberPoset {
    fn build<F>(objects: Vec<(usize, EtObject)>, leq: F) -> Self
    where
        F: Fn(&(usize, EtObject), &(usize, EtObject)) -> bool,
    {
        let keys = objects.iter().map(|(t, o)| format!("{t}/{o}")).collect();
        let poset = FinPoset::from_leq_unchecked(keys, |a, b| leq(&objects[a], &objects[b]))
            .expect("fiber relations are antisymmetric");
        FiberPoset { objects, poset }
    }

    pub fn objects(&self) -> &[(usize, EtObject)] {
        &self.objects
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn position(&self, tag: usize, obj: &EtObject) -> Option<usize> {
        self.objects.iter().position(|(t, o)| *t == tag && o == obj)
    }

    pub fn le(&self, a: (usize, EtObject), b: (usize, EtObject)) -> bool {
        match (self.position(a.0, &a.1), self.position(b.0, &b.1)) {
            (Some(i), Some(j)) => self.poset.le(i, j),
            _ => false,
        }
    }

    /// Covering relations as pairs of tagged objects.
    pub fn covering_relations(&self) -> Vec<((usize, EtObject), (usize, EtObject))> {
        self.poset
            .covers()
            .iter()
            .map(|&(a, b)| (self.objects[a], self.objects[b]))
            .collect()
    }

    /// Strict relations between different tags.
    pub fn cross_relations(&self) -> Vec<(EtObject, EtObject)> {
        let mut out = Vec::new();
        for (a, (ta, oa)) in self.objects.iter().enumerate() {
            for (b, (tb, ob)) in self.objects.iter().enumerate() {
                if ta < tb && self.poset.le(a, b) {
                    out.push((*oa, *ob));
                }
            }
        }
        out
    }

    pub fn minimum(&self) -> Option<EtObject> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.poset.minimum_of(&all).map(|i| self.objects[i].1)
    }

    pub fn maximum(&self) -> Option<EtObject> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.poset.maximum_of(&all).map(|i| self.objects[i].1)
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.len()).collect();
        self.poset.is_connected(&all)
    }
}

/// The fiber of ET → Δ over `[n]`: the zigzag `r_0 ← s_0 → r_1 ← ⋯ → r_n`.
pub fn fiber_over_ordinal(n: Ordinal) -> FiberPoset {
    let id = DeltaMap::identity(n);
    let objects = EtObject::fiber(n).map(|o| (0, o)).collect();
    FiberPoset::build(objects, |(_, a), (_, b)| et_constraint(a, b, &id))
}

/// The fiber of ET → Δ over a Δ-map: both ordinal fibers plus one cross
/// relation per morphism of ET over `alpha`.
pub fn fiber_over_map(alpha: &DeltaMap) -> FiberPoset {
    let src_id = DeltaMap::identity(alpha.src());
    let dst_id = DeltaMap::identity(alpha.dst());
    let objects = EtObject::fiber(alpha.src())
        .map(|o| (0, o))
        .chain(EtObject::fiber(alpha.dst()).map(|o| (1, o)))
        .collect();
    FiberPoset::build(objects, |(ta, a), (tb, b)| match (ta, tb) {
        (0, 0) => et_constraint(a, b, &src_id),
        (1, 1) => et_constraint(a, b, &dst_id),
        (0, 1) => et_constraint(a, b, alpha),
        _ => false,
    })
}

/// Objects `y` over `alpha.dst()` through which `h : x → z` factors as
/// `x → y` over `alpha` followed by `y → z` over `beta`.
pub fn factorization_poset(
    x: &EtObject,
    z: &EtObject,
    h: &EtMorphism,
    alpha: &DeltaMap,
    beta: &DeltaMap,
) -> Result<FiberPoset> {
    if h.src != *x || h.dst != *z {
        return Err(Error::Domain(format!("{h} does not run from {x} to {z}")));
    }
    if x.n != alpha.src() || z.n != beta.dst() {
        return Err(Error::Domain(format!(
            "{x} and {z} do not lie over the ends of {alpha} then {beta}"
        )));
    }
    let composite = compose_delta(alpha, beta).map_err(|e| Error::Domain(e.to_string()))?;
    if composite != h.underlying {
        return Err(Error::Domain(format!(
            "{h} does not lie over the composite {composite}"
        )));
    }
    let mid = alpha.dst();
    let id = DeltaMap::identity(mid);
    let objects = EtObject::fiber(mid)
        .filter(|y| et_constraint(x, y, alpha) && et_constraint(y, z, beta))
        .map(|y| (0, y))
        .collect();
    Ok(FiberPoset::build(objects, |(_, a), (_, b)| {
        et_constraint(a, b, &id)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(i: usize, n: usize) -> EtObject {
        EtObject::regular(i, n).unwrap()
    }
    fn s(i: usize, n: usize) -> EtObject {
        EtObject::singular(i, n).unwrap()
    }
    fn d(values: &[usize], dst: usize) -> DeltaMap {
        DeltaMap::new(Ordinal(values.len() - 1), Ordinal(dst), values.to_vec()).unwrap()
    }

    #[test]
    fn object_bounds() {
        assert!(EtObject::regular(2, 2).is_ok());
        assert!(EtObject::regular(3, 2).is_err());
        assert!(EtObject::singular(1, 2).is_ok());
        assert!(EtObject::singular(2, 2).is_err());
        assert!(EtObject::singular(0, 0).is_err());
    }

    #[test]
    fn literal_round_trip() {
        for lit in ["r0@0", "s0@1", "r1@2", "s2@3"] {
            let o: EtObject = lit.parse().unwrap();
            assert_eq!(o.to_string(), lit);
        }
        assert!("x0@1".parse::<EtObject>().is_err());
        assert!("s1@1".parse::<EtObject>().is_err());
        assert!("r1".parse::<EtObject>().is_err());
    }

    #[test]
    fn validate_examples() {
        assert!(validate_et_morphism(&r(0, 1), &r(1, 1), &d(&[1, 1], 1)).unwrap());
        assert!(!validate_et_morphism(&r(0, 1), &r(1, 1), &d(&[0, 1], 1)).unwrap());
        for a in enumerate_delta_maps(Ordinal(2), Ordinal(2)) {
            assert!(!validate_et_morphism(&r(0, 2), &s(0, 2), &a).unwrap());
        }
        assert!(validate_et_morphism(&s(0, 1), &s(0, 1), &d(&[0, 1], 1)).unwrap());
        assert!(!validate_et_morphism(&s(0, 1), &s(0, 1), &d(&[0, 0], 1)).unwrap());
    }

    #[test]
    fn validate_rejects_ordinal_mismatch() {
        assert!(matches!(
            validate_et_morphism(&r(0, 1), &r(0, 2), &d(&[0, 1], 1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_et(&s(0, 1), &r(1, 2)).len(), 4);
        assert_eq!(hom_et(&s(0, 2), &s(1, 2)).len(), 2);
        for n in 0..=3 {
            for m in 1..=3 {
                for i in 0..=n {
                    for j in 0..m {
                        assert!(hom_et(&r(i, n), &s(j, m)).is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn compose_example() {
        let face = d(&[0, 2], 2);
        let f = EtMorphism::new(s(0, 1), s(0, 2), face.clone()).unwrap();
        let g = EtMorphism::new(s(0, 2), r(1, 2), DeltaMap::identity(Ordinal(2))).unwrap();
        let c = compose_et(&f, &g).unwrap();
        assert_eq!(c.src(), &s(0, 1));
        assert_eq!(c.dst(), &r(1, 2));
        assert_eq!(c.underlying(), &face);
        assert!(compose_et(&g, &f).is_err());
    }

    #[test]
    fn identity_laws_and_forget() {
        for n in 0..=3 {
            for x in EtObject::fiber(Ordinal(n)) {
                let id = EtMorphism::identity(x);
                assert_eq!(compose_et(&id, &id).unwrap(), id);
                assert_eq!(forget_to_delta(&id), DeltaMap::identity(Ordinal(n)));
            }
        }
    }

    #[test]
    fn fiber_shapes() {
        let f0 = fiber_over_ordinal(Ordinal(0));
        assert_eq!(f0.objects(), &[(0, r(0, 0))]);
        let f2 = fiber_over_ordinal(Ordinal(2));
        assert_eq!(f2.len(), 5);
        assert_eq!(f2.poset().covers().len(), 4);
        let f1 = fiber_over_ordinal(Ordinal(1));
        let rels = f1.covering_relations();
        assert!(rels.contains(&((0, s(0, 1)), (0, r(0, 1)))));
        assert!(rels.contains(&((0, s(0, 1)), (0, r(1, 1)))));
        assert_eq!(rels.len(), 2);
    }

    #[test]
    fn degeneracy_fiber() {
        let f = fiber_over_map(&d(&[0, 0], 0));
        let mut cross = f.cross_relations();
        cross.sort();
        assert_eq!(cross, vec![(r(0, 1), r(0, 0)), (s(0, 1), r(0, 0)), (r(1, 1), r(0, 0))]);
    }

    #[test]
    fn inner_face_splits_singular() {
        let f = fiber_over_map(&d(&[0, 2], 2));
        assert!(f.le((0, s(0, 1)), (1, s(0, 2))));
        assert!(f.le((0, s(0, 1)), (1, s(1, 2))));
        assert!(!f.le((0, r(0, 1)), (1, r(1, 2))));
    }

    #[test]
    fn identity_fiber_doubles() {
        let f = fiber_over_map(&DeltaMap::identity(Ordinal(1)));
        assert_eq!(f.len(), 6);
        for o in EtObject::fiber(Ordinal(1)) {
            assert!(f.le((0, o), (1, o)));
        }
    }

    #[test]
    fn trivial_factorization() {
        let x = r(0, 0);
        let id = DeltaMap::identity(Ordinal(0));
        let h = EtMorphism::identity(x);
        let fp = factorization_poset(&x, &x, &h, &id, &id).unwrap();
        assert_eq!(fp.objects(), &[(0, x)]);
    }

    #[test]
    fn factorization_without_cone_point() {
        // s_0[1] → r_0[0] over (0,2) then the constant map: the whole fiber of [2]
        // factors and it is a zigzag with neither minimum nor maximum.
        let alpha = d(&[0, 2], 2);
        let beta = d(&[0, 0, 0], 0);
        let x = s(0, 1);
        let z = r(0, 0);
        let h = EtMorphism::new(x, z, compose_delta(&alpha, &beta).unwrap()).unwrap();
        let fp = factorization_poset(&x, &z, &h, &alpha, &beta).unwrap();
        assert_eq!(fp.len(), 5);
        assert!(fp.is_connected());
        assert_eq!(fp.minimum(), None);
        assert_eq!(fp.maximum(), None);
    }

    #[test]
    fn factorization_precondition() {
        let alpha = d(&[0, 1], 1);
        let beta = d(&[0, 1], 1);
        let x = r(0, 1);
        let h = EtMorphism::identity(x);
        assert!(factorization_poset(&x, &x, &h, &alpha, &d(&[0, 0], 0)).is_err());
        assert!(factorization_poset(&x, &x, &h, &alpha, &beta).is_ok());
    }
}
