//! Truss bundles over finite posets.
//!
//! A bundle is presented by a [`DeltaDiagram`], a functor from a finite base
//! poset into Δ given on covering relations. Its [`TotalPoset`] is the
//! pullback of ET → Δ along that functor, and labellings of the total poset
//! in a finite category are handled by [`Labeling`].

mod category;
mod labeling;

use std::sync::Arc;

pub use category::{CatFunctor, LabelCategory, Morphism};
pub use labeling::{relabel, validate_labeling, Labeling};

use crate::error::{Error, Result};
use crate::etcat::{et_constraint, EtObject};
use crate::ordinal::{compose_delta, DeltaMap, Ordinal};
use crate::poset::{FinPoset, PosetMap};

/// A functor from a finite poset into Δ, stored on covering relations.
#[derive(Debug, Clone)]
pub struct DeltaDiagram {
    base: Arc<FinPoset>,
    ords: Vec<Ordinal>,
    arrows: Vec<DeltaMap>,
    // composite along any chain, for every pair a ≤ b (row-major)
    between: Vec<Option<DeltaMap>>,
}

impl PartialEq for DeltaDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.ords == other.ords && self.arrows == other.arrows
    }
}

impl Eq for DeltaDiagram {}

impl DeltaDiagram {
    /// `arrows[k]` is the map on the `k`-th covering relation of `base`.
    /// Fails unless every pair of chains between the same endpoints composes
    /// to the same map.
    pub fn new(base: Arc<FinPoset>, ords: Vec<Ordinal>, arrows: Vec<DeltaMap>) -> Result<Self> {
        let n = base.len();
        if ords.len() != n {
            return Err(Error::Diagram(format!(
                "{} ordinals for {} base elements",
                ords.len(),
                n
            )));
        }
        if arrows.len() != base.covers().len() {
            return Err(Error::Diagram(format!(
                "{} arrows for {} covering relations",
                arrows.len(),
                base.covers().len()
            )));
        }
        for (&(a, b), f) in base.covers().iter().zip(&arrows) {
            if f.src() != ords[a] || f.dst() != ords[b] {
                return Err(Error::Diagram(format!(
                    "arrow {} < {} is {f}, expected {} → {}",
                    base.key(a),
                    base.key(b),
                    ords[a],
                    ords[b]
                )));
            }
        }
        let between = compute_between(&base, &ords, &arrows)?;
        Ok(DeltaDiagram {
            base,
            ords,
            arrows,
            between,
        })
    }

    /// Builds the arrows from a function on covering relations.
    pub fn from_fn<F>(base: Arc<FinPoset>, ords: Vec<Ordinal>, arrow: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> DeltaMap,
    {
        let arrows = base.covers().iter().map(|&(a, b)| arrow(a, b)).collect();
        Self::new(base, ords, arrows)
    }

    /// Every element sent to `[n]`, every relation to the identity.
    pub fn constant(base: Arc<FinPoset>, n: Ordinal) -> Self {
        let ords = vec![n; base.len()];
        Self::from_fn(base, ords, |_, _| DeltaMap::identity(n)).expect("constant diagram")
    }

    pub fn base(&self) -> &Arc<FinPoset> {
        &self.base
    }

    pub fn ords(&self) -> &[Ordinal] {
        &self.ords
    }

    pub fn ord(&self, b: usize) -> Ordinal {
        self.ords[b]
    }

    pub fn arrows(&self) -> &[DeltaMap] {
        &self.arrows
    }

    /// Map on the covering relation `a < b`, if it is one.
    pub fn arrow(&self, a: usize, b: usize) -> Option<&DeltaMap> {
        self.base.cover_index(a, b).map(|k| &self.arrows[k])
    }

    /// The value of the functor on `a ≤ b`.
    pub fn between(&self, a: usize, b: usize) -> Option<&DeltaMap> {
        self.between[a * self.base.len() + b].as_ref()
    }
}

fn compute_between(
    base: &FinPoset,
    ords: &[Ordinal],
    arrows: &[DeltaMap],
) -> Result<Vec<Option<DeltaMap>>> {
    let n = base.len();
    let mut between: Vec<Option<DeltaMap>> = vec![None; n * n];
    for &b in base.linear_extension() {
        between[b * n + b] = Some(DeltaMap::identity(ords[b]));
        for a in 0..n {
            if !base.lt(a, b) {
                continue;
            }
            let mut found: Option<(usize, DeltaMap)> = None;
            for &c in base.lower_covers(b) {
                if !base.le(a, c) {
                    continue;
                }
                let first = between[a * n + c]
                    .as_ref()
                    .ok_or_else(|| Error::Invariant("linear extension out of order".into()))?;
                let last = &arrows[base.cover_index(c, b).expect("lower cover")];
                let composite = compose_delta(first, last)?;
                match &found {
                    None => found = Some((c, composite)),
                    Some((c0, prev)) if *prev != composite => {
                        return Err(Error::Diagram(format!(
                            "not functorial: {} ≤ {} composes to {prev} through {} but {composite} through {}",
                            base.key(a),
                            base.key(b),
                            base.key(*c0),
                            base.key(c)
                        )));
                    }
                    Some(_) => {}
                }
            }
            between[a * n + b] = found.map(|(_, f)| f);
        }
    }
    Ok(between)
}

/// The total poset of a truss bundle: pairs `(b, e)` of a base element and an
/// object of ET over `ord(b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalPoset {
    carrier: Arc<FinPoset>,
    entries: Vec<(usize, EtObject)>,
    offsets: Vec<usize>,
}

impl TotalPoset {
    /// Assembles a candidate total poset from raw parts. Entries must be
    /// grouped by base element in base order; nothing else is checked here
    /// (see [`classify`]).
    pub fn from_parts(
        base_len: usize,
        carrier: Arc<FinPoset>,
        entries: Vec<(usize, EtObject)>,
    ) -> Result<Self> {
        if carrier.len() != entries.len() {
            return Err(Error::Domain("carrier and entries differ in length".into()));
        }
        let mut offsets = Vec::with_capacity(base_len + 1);
        let mut i = 0;
        for b in 0..base_len {
            offsets.push(i);
            while i < entries.len() && entries[i].0 == b {
                i += 1;
            }
        }
        offsets.push(i);
        if i != entries.len() {
            return Err(Error::Domain(
                "entries not grouped by base element in base order".into(),
            ));
        }
        Ok(TotalPoset {
            carrier,
            entries,
            offsets,
        })
    }

    pub fn carrier(&self) -> &Arc<FinPoset> {
        &self.carrier
    }

    pub fn entries(&self) -> &[(usize, EtObject)] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> (usize, EtObject) {
        self.entries[i]
    }

    pub fn projection(&self, i: usize) -> usize {
        self.entries[i].0
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Indices of the fiber over `b`, in fiber order.
    pub fn fiber(&self, b: usize) -> std::ops::Range<usize> {
        self.offsets[b]..self.offsets[b + 1]
    }

    pub fn index_of(&self, b: usize, obj: &EtObject) -> Option<usize> {
        self.fiber(b).find(|&i| self.entries[i].1 == *obj)
    }

    pub fn base_len(&self) -> usize {
        self.offsets.len() - 1
    }
}

fn element_key(base: &FinPoset, b: usize, obj: &EtObject) -> String {
    format!("{}/{}", base.key(b), obj)
}

/// The pullback of ET → Δ along the diagram.
pub fn total_space(d: &DeltaDiagram) -> Result<TotalPoset> {
    let base = &d.base;
    let mut entries = Vec::new();
    for b in 0..base.len() {
        entries.extend(EtObject::fiber(d.ords[b]).map(|o| (b, o)));
    }
    let keys = entries
        .iter()
        .map(|(b, o)| element_key(base, *b, o))
        .collect();
    let carrier = FinPoset::from_leq_unchecked(keys, |x, y| {
        let (b, e) = &entries[x];
        let (c, f) = &entries[y];
        match d.between(*b, *c) {
            Some(alpha) => et_constraint(e, f, alpha),
            None => false,
        }
    })
    .map_err(|e| Error::Invariant(format!("total space is not a poset: {e}")))?;
    TotalPoset::from_parts(base.len(), Arc::new(carrier), entries)
}

/// Pulls the diagram back along a monotone map `f : new_base → d.base()`.
pub fn pullback_bundle(
    d: &DeltaDiagram,
    new_base: Arc<FinPoset>,
    f: &PosetMap,
) -> Result<DeltaDiagram> {
    let f = PosetMap::new(&new_base, &d.base, f.values().to_vec())?;
    let ords = (0..new_base.len()).map(|b| d.ord(f.apply(b))).collect();
    let arrows = new_base
        .covers()
        .iter()
        .map(|&(a, b)| {
            d.between(f.apply(a), f.apply(b))
                .cloned()
                .ok_or_else(|| Error::Invariant("monotone image of a relation".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    DeltaDiagram::new(new_base, ords, arrows)
}

/// The map of total posets `(b', e) ↦ (f(b'), e)` induced by a pullback.
pub fn pullback_total_map(
    pulled: &TotalPoset,
    original: &TotalPoset,
    f: &PosetMap,
) -> Result<PosetMap> {
    let values = pulled
        .entries
        .iter()
        .map(|(b, o)| {
            original
                .index_of(f.apply(*b), o)
                .ok_or_else(|| Error::Invariant(format!("{o} missing over image of base element {b}")))
        })
        .collect::<Result<Vec<_>>>()?;
    PosetMap::new(&pulled.carrier, &original.carrier, values)
}

/// Recovers the classifying diagram of a total poset. Ordinals are read off
/// by counting regular elements per fiber; arrows by following each regular
/// element along the order to the unique regular element above it.
pub fn classify(base: Arc<FinPoset>, t: &TotalPoset) -> Result<DeltaDiagram> {
    let cls = |m: String| Error::Classification(m);
    if t.base_len() != base.len() {
        return Err(cls(format!(
            "total poset covers {} base elements, base has {}",
            t.base_len(),
            base.len()
        )));
    }
    let carrier = &t.carrier;
    let mut ords = Vec::with_capacity(base.len());
    for b in 0..base.len() {
        let fiber: Vec<EtObject> = t.fiber(b).map(|i| t.entries[i].1).collect();
        let regular = fiber.iter().filter(|o| o.is_regular()).count();
        let n = regular
            .checked_sub(1)
            .ok_or_else(|| cls(format!("no regular element over {}", base.key(b))))?;
        let expected: Vec<EtObject> = EtObject::fiber(Ordinal(n)).collect();
        if fiber != expected {
            return Err(cls(format!(
                "fiber over {} is not the fiber of [{n}]",
                base.key(b)
            )));
        }
        ords.push(Ordinal(n));
    }
    for x in 0..t.len() {
        for y in 0..t.len() {
            let (b, _) = t.entries[x];
            let (c, _) = t.entries[y];
            if carrier.le(x, y) && !base.le(b, c) {
                return Err(cls(format!(
                    "{} ≤ {} does not lie over a base relation",
                    carrier.key(x),
                    carrier.key(y)
                )));
            }
        }
    }
    let mut arrows = Vec::with_capacity(base.covers().len());
    for &(b, c) in base.covers() {
        let mut values = Vec::with_capacity(ords[b].len());
        for i in ords[b].elements() {
            let x = t
                .index_of(b, &EtObject::regular(i, ords[b].0)?)
                .expect("checked fiber");
            let targets: Vec<usize> = ords[c]
                .elements()
                .filter(|&j| {
                    let y = t
                        .index_of(c, &EtObject::regular(j, ords[c].0).expect("in range"))
                        .expect("checked fiber");
                    carrier.le(x, y)
                })
                .collect();
            match targets.as_slice() {
                [j] => values.push(*j),
                _ => {
                    return Err(cls(format!(
                        "regular element {} has {} regular successors over {}",
                        carrier.key(x),
                        targets.len(),
                        base.key(c)
                    )))
                }
            }
        }
        let map = DeltaMap::new(ords[b], ords[c], values).map_err(|e| cls(e.to_string()))?;
        arrows.push(map);
    }
    let d = DeltaDiagram::new(base, ords, arrows).map_err(|e| cls(e.to_string()))?;
    let rebuilt = total_space(&d)?;
    if rebuilt.entries != t.entries || rebuilt.carrier.as_ref() != carrier.as_ref() {
        return Err(cls(
            "order relation differs from the pullback of the recovered diagram".into(),
        ));
    }
    Ok(d)
}
