//! Iterated truss bundles, labelled at the top.
//!
//! Stage `k` of a tower is a [`DeltaDiagram`] over the total poset of stage
//! `k - 1` (the base for `k = 0`). Bordisms are towers over the arrow
//! `0 < 1`.

mod compose;
mod pack;

use std::fmt;
use std::sync::Arc;

pub use compose::{compose_bordisms, compose_bordisms_audited, CompositionAudit};
pub use pack::{pack, unpack, PackedTower, TrussCategory};

use crate::bundle::{
    pullback_bundle, pullback_total_map, total_space, DeltaDiagram, LabelCategory, Labeling,
    TotalPoset,
};
use crate::error::{Error, Result};
use crate::ordinal::{DeltaMap, Ordinal};
use crate::poset::{FinPoset, PosetMap};

/// The unlabelled part of a tower.
#[derive(Debug, Clone)]
pub struct TowerSkeleton {
    base: Arc<FinPoset>,
    diagrams: Vec<DeltaDiagram>,
    totals: Vec<TotalPoset>,
}

impl PartialEq for TowerSkeleton {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.diagrams == other.diagrams
    }
}

impl Eq for TowerSkeleton {}

impl TowerSkeleton {
    pub fn new(base: Arc<FinPoset>) -> Self {
        TowerSkeleton {
            base,
            diagrams: Vec::new(),
            totals: Vec::new(),
        }
    }

    pub fn from_diagrams(base: Arc<FinPoset>, diagrams: Vec<DeltaDiagram>) -> Result<Self> {
        let mut s = Self::new(base);
        for d in diagrams {
            s.push(d)?;
        }
        Ok(s)
    }

    /// Adds a stage over the current top poset.
    pub fn push(&mut self, diagram: DeltaDiagram) -> Result<()> {
        if diagram.base().as_ref() != self.top().as_ref() {
            return Err(Error::Domain(format!(
                "stage {} is not over the total poset of the previous stage",
                self.diagrams.len()
            )));
        }
        let total = total_space(&diagram)?;
        self.diagrams.push(diagram);
        self.totals.push(total);
        Ok(())
    }

    pub fn pop(&mut self) -> Option<DeltaDiagram> {
        self.totals.pop();
        self.diagrams.pop()
    }

    pub fn base(&self) -> &Arc<FinPoset> {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.diagrams.len()
    }

    pub fn diagram(&self, k: usize) -> &DeltaDiagram {
        &self.diagrams[k]
    }

    pub fn diagrams(&self) -> &[DeltaDiagram] {
        &self.diagrams
    }

    pub fn total(&self, k: usize) -> &TotalPoset {
        &self.totals[k]
    }

    /// The poset stage `k` lives over.
    pub fn level(&self, k: usize) -> &Arc<FinPoset> {
        if k == 0 {
            &self.base
        } else {
            self.totals[k - 1].carrier()
        }
    }

    /// The total poset of the last stage, or the base at depth 0.
    pub fn top(&self) -> &Arc<FinPoset> {
        self.level(self.depth())
    }

    /// Projection of a top element to the base.
    pub fn project_to_base(&self, mut x: usize) -> usize {
        for t in self.totals.iter().rev() {
            x = t.projection(x);
        }
        x
    }

    /// Pulls back every stage along `f : new_base → base`. Also returns the
    /// induced map at every level, base first.
    pub fn pullback_with_maps(
        &self,
        new_base: Arc<FinPoset>,
        f: &PosetMap,
    ) -> Result<(TowerSkeleton, Vec<PosetMap>)> {
        let mut g = PosetMap::new(&new_base, &self.base, f.values().to_vec())?;
        let mut out = TowerSkeleton::new(new_base);
        let mut maps = vec![g.clone()];
        for (d, t) in self.diagrams.iter().zip(&self.totals) {
            let pd = pullback_bundle(d, out.top().clone(), &g)?;
            out.push(pd)?;
            g = pullback_total_map(out.totals.last().expect("pushed"), t, &g)?;
            maps.push(g.clone());
        }
        Ok((out, maps))
    }
}

/// A tower of truss bundles with labels on its top total poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrussTower {
    skeleton: TowerSkeleton,
    labels: Labeling,
}

impl TrussTower {
    pub fn new(skeleton: TowerSkeleton, labels: Labeling) -> Result<Self> {
        crate::bundle::validate_labeling(&labels, skeleton.top())?;
        Ok(TrussTower { skeleton, labels })
    }

    pub fn from_diagrams(base: Arc<FinPoset>, diagrams: Vec<DeltaDiagram>, labels: Labeling) -> Result<Self> {
        Self::new(TowerSkeleton::from_diagrams(base, diagrams)?, labels)
    }

    /// Labels every top element by `object` and every relation by its identity.
    pub fn constant_labels(skeleton: TowerSkeleton, category: Arc<LabelCategory>, object: usize) -> Result<Self> {
        let labels = Labeling::constant(category, skeleton.top(), object)?;
        Self::new(skeleton, labels)
    }

    pub fn skeleton(&self) -> &TowerSkeleton {
        &self.skeleton
    }

    pub fn labels(&self) -> &Labeling {
        &self.labels
    }

    pub fn category(&self) -> &Arc<LabelCategory> {
        self.labels.category()
    }

    pub fn base(&self) -> &Arc<FinPoset> {
        self.skeleton.base()
    }

    pub fn depth(&self) -> usize {
        self.skeleton.depth()
    }

    pub fn diagram(&self, k: usize) -> &DeltaDiagram {
        self.skeleton.diagram(k)
    }

    pub fn total(&self, k: usize) -> &TotalPoset {
        self.skeleton.total(k)
    }

    pub fn top(&self) -> &Arc<FinPoset> {
        self.skeleton.top()
    }

    pub fn pullback(&self, new_base: Arc<FinPoset>, f: &PosetMap) -> Result<TrussTower> {
        let (skeleton, maps) = self.skeleton.pullback_with_maps(new_base, f)?;
        let g = maps.last().expect("base map");
        let labels = self.labels.pullback(self.top(), skeleton.top(), g)?;
        TrussTower::new(skeleton, labels)
    }

    /// The fiber over a base element, as a tower over the point.
    pub fn restrict_to(&self, b: usize) -> Result<TrussTower> {
        if b >= self.base().len() {
            return Err(Error::Domain(format!("base element {b} out of range")));
        }
        let point = Arc::new(FinPoset::point());
        let f = PosetMap::constant(&point, b);
        self.pullback(point, &f)
    }

    /// A total order key for towers sharing a label category. Compares depth,
    /// then ordinals, arrows and labels stage by stage.
    pub fn signature(&self) -> Vec<usize> {
        let mut sig = vec![self.depth(), self.base().len()];
        for d in self.skeleton.diagrams() {
            sig.push(d.ords().len());
            sig.extend(d.ords().iter().map(|o| o.0));
            for a in d.arrows() {
                sig.extend(a.values());
            }
        }
        sig.push(self.labels.objects().len());
        sig.extend(self.labels.objects());
        sig.extend(self.labels.relations());
        sig
    }
}

impl fmt::Display for TrussTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "depth {} tower over {} base elements", self.depth(), self.base().len())?;
        for (k, d) in self.skeleton.diagrams().iter().enumerate() {
            write!(f, "; stage {k}: ")?;
            let ords: Vec<String> = d.ords().iter().map(|o| o.0.to_string()).collect();
            write!(f, "[{}]", ords.join(","))?;
        }
        Ok(())
    }
}

/// A tower over the arrow `0 < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bordism(TrussTower);

impl Bordism {
    pub fn new(tower: TrussTower) -> Result<Self> {
        if tower.base().as_ref() != &FinPoset::arrow() {
            return Err(Error::Domain("a bordism must lie over the arrow 0 < 1".into()));
        }
        Ok(Bordism(tower))
    }

    pub fn tower(&self) -> &TrussTower {
        &self.0
    }

    pub fn into_tower(self) -> TrussTower {
        self.0
    }

    pub fn depth(&self) -> usize {
        self.0.depth()
    }

    pub fn source(&self) -> Result<TrussTower> {
        self.0.restrict_to(0)
    }

    pub fn target(&self) -> Result<TrussTower> {
        self.0.restrict_to(1)
    }
}

/// Restriction of a bordism to one end, `0` or `1`.
pub fn restrict_bordism(b: &Bordism, end: usize) -> Result<TrussTower> {
    if end > 1 {
        return Err(Error::Domain(format!("bordism end {end} is neither 0 nor 1")));
    }
    b.0.restrict_to(end)
}

/// The cylinder on a tower over the point.
pub fn identity_bordism(t: &TrussTower) -> Result<Bordism> {
    if t.base().as_ref() != &FinPoset::point() {
        return Err(Error::Domain("identity bordisms need a tower over the point".into()));
    }
    let arrow = Arc::new(FinPoset::arrow());
    let f = PosetMap::constant(&arrow, 0);
    Bordism::new(t.pullback(arrow, &f)?)
}

/// The tower over the point with ordinals `ords`, every element labelled
/// `object` with identities on relations.
pub fn constant_inclusion(ords: &[Ordinal], category: Arc<LabelCategory>, object: usize) -> Result<TrussTower> {
    let mut s = TowerSkeleton::new(Arc::new(FinPoset::point()));
    for &n in ords {
        let d = DeltaDiagram::constant(s.top().clone(), n);
        s.push(d)?;
    }
    TrussTower::constant_labels(s, category, object)
}

/// The bordism whose `k`-th stage is the map `maps[k]` across the arrow and
/// identities within each end, labelled by `morphism` across the arrow.
pub fn constant_bordism(maps: &[DeltaMap], category: Arc<LabelCategory>, morphism: usize) -> Result<Bordism> {
    if morphism >= category.morphism_count() {
        return Err(Error::Domain(format!("morphism {morphism} out of range")));
    }
    let mut s = TowerSkeleton::new(Arc::new(FinPoset::arrow()));
    for alpha in maps {
        let level = s.top().clone();
        let end = |x: usize| s.project_to_base(x);
        let ords = (0..level.len())
            .map(|x| if end(x) == 0 { alpha.src() } else { alpha.dst() })
            .collect();
        let d = DeltaDiagram::from_fn(level.clone(), ords, |x, y| {
            match (end(x), end(y)) {
                (0, 1) => alpha.clone(),
                (0, _) => DeltaMap::identity(alpha.src()),
                _ => DeltaMap::identity(alpha.dst()),
            }
        })?;
        s.push(d)?;
    }
    let src = category.src(morphism);
    let dst = category.dst(morphism);
    let top = s.top().clone();
    let objects = (0..top.len())
        .map(|x| if s.project_to_base(x) == 0 { src } else { dst })
        .collect();
    let relations = top
        .covers()
        .iter()
        .map(|&(x, y)| match (s.project_to_base(x), s.project_to_base(y)) {
            (0, 1) => morphism,
            (0, _) => category.identity(src),
            _ => category.identity(dst),
        })
        .collect();
    let labels = Labeling::new(category, &top, objects, relations)?;
    Bordism::new(TrussTower::new(s, labels)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terminal() -> Arc<LabelCategory> {
        Arc::new(LabelCategory::terminal())
    }

    pub(crate) fn dmap(values: &[usize], dst: usize) -> DeltaMap {
        DeltaMap::new(Ordinal(values.len() - 1), Ordinal(dst), values.to_vec()).unwrap()
    }

    #[test]
    fn constant_inclusion_shapes() {
        let t = constant_inclusion(&[Ordinal(1), Ordinal(0)], terminal(), 0).unwrap();
        assert_eq!(t.depth(), 2);
        assert_eq!(t.total(0).len(), 3);
        assert_eq!(t.total(1).len(), 3);
        let t0 = constant_inclusion(&[], terminal(), 0).unwrap();
        assert_eq!(t0.top().len(), 1);
    }

    #[test]
    fn identity_bordism_restricts_back() {
        let t = constant_inclusion(&[Ordinal(2), Ordinal(1)], terminal(), 0).unwrap();
        let b = identity_bordism(&t).unwrap();
        assert_eq!(b.source().unwrap(), t);
        assert_eq!(b.target().unwrap(), t);
        assert!(restrict_bordism(&b, 2).is_err());
    }

    #[test]
    fn identity_bordism_needs_point_base() {
        let c = terminal();
        let s = TowerSkeleton::new(Arc::new(FinPoset::arrow()));
        let t = TrussTower::constant_labels(s, c, 0).unwrap();
        assert!(identity_bordism(&t).is_err());
    }

    #[test]
    fn constant_bordism_ends() {
        let b = constant_bordism(&[dmap(&[0, 0], 0)], terminal(), 0).unwrap();
        assert_eq!(b.source().unwrap().diagram(0).ord(0), Ordinal(1));
        assert_eq!(b.target().unwrap().diagram(0).ord(0), Ordinal(0));
    }

    #[test]
    fn stage_over_wrong_poset_rejected() {
        let mut s = TowerSkeleton::new(Arc::new(FinPoset::point()));
        let d = DeltaDiagram::constant(Arc::new(FinPoset::arrow()), Ordinal(0));
        assert!(s.push(d).is_err());
    }

    #[test]
    fn pullback_is_functorial_on_chain() {
        let b = constant_bordism(&[dmap(&[0, 2], 2), dmap(&[1], 1)], terminal(), 0).unwrap();
        let chain = Arc::new(FinPoset::chain(2));
        let f = PosetMap::new(&chain, &FinPoset::arrow(), vec![0, 0, 1]).unwrap();
        let arrow = Arc::new(FinPoset::arrow());
        let g = PosetMap::new(&arrow, &chain, vec![1, 2]).unwrap();
        let two_step = b.tower().pullback(chain.clone(), &f).unwrap().pullback(arrow.clone(), &g).unwrap();
        let one_step = b.tower().pullback(arrow, &g.then(&f)).unwrap();
        assert_eq!(two_step, one_step);
    }
}
