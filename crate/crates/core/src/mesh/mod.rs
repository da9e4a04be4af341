//! Piecewise-linear realizations of truss bundles.
//!
//! Fibers are finite stratifications of the open interval (−1, 1) by
//! singular heights. Over a base poset, triangulated by its nerve, a bundle
//! stores heights at every vertex and, on every covering relation, the
//! interval map telling where each singular sheet lands in the lower fiber.
//! Heights at interior points of simplices are convex combinations.

mod layout;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use layout::{layout_2truss, Node, Region, Scene, Wire};

use crate::bundle::DeltaDiagram;
use crate::error::{Error, Result};
use crate::etcat::{validate_et_morphism, EtObject, Kind};
use crate::ordinal::{compose_nabla, dual_delta_to_nabla, NablaMap, Ordinal};
use crate::poset::{FinPoset, PosetMap};
use crate::tower::TrussTower;

pub type Rational = BigRational;

/// The rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn strictly_increasing(h: &[Rational]) -> bool {
    h.windows(2).all(|w| w[0] < w[1])
}

/// Singular heights of a stratified open interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mesh1 {
    heights: Vec<Rational>,
}

impl Mesh1 {
    /// Heights must increase strictly and lie in (−1, 1).
    pub fn new(heights: Vec<Rational>) -> Result<Self> {
        let one = Rational::one();
        if !strictly_increasing(&heights) {
            return Err(Error::Domain("mesh heights must increase strictly".into()));
        }
        if heights.iter().any(|h| h.abs() >= one) {
            return Err(Error::Domain("mesh heights must lie in (−1, 1)".into()));
        }
        Ok(Mesh1 { heights })
    }

    pub fn heights(&self) -> &[Rational] {
        &self.heights
    }

    pub fn singular_count(&self) -> usize {
        self.heights.len()
    }

    pub fn regular_count(&self) -> usize {
        self.heights.len() + 1
    }

    /// The ordinal classifying the fiber.
    pub fn ordinal(&self) -> Ordinal {
        Ordinal(self.heights.len())
    }
}

/// A mesh padded with the endpoints −1 and 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompactMesh1 {
    heights: Vec<Rational>,
}

impl CompactMesh1 {
    pub fn new(heights: Vec<Rational>) -> Result<Self> {
        let n = heights.len();
        if n < 2 || heights[0] != -Rational::one() || heights[n - 1] != Rational::one() {
            return Err(Error::Domain("compact mesh must start at −1 and end at 1".into()));
        }
        Mesh1::new(heights[1..n - 1].to_vec())?;
        if !strictly_increasing(&heights) {
            return Err(Error::Domain("mesh heights must increase strictly".into()));
        }
        Ok(CompactMesh1 { heights })
    }

    pub fn heights(&self) -> &[Rational] {
        &self.heights
    }

    pub fn interior(&self) -> Mesh1 {
        Mesh1 {
            heights: self.heights[1..self.heights.len() - 1].to_vec(),
        }
    }

    /// The strict interval indexing the compact fiber.
    pub fn interval(&self) -> Ordinal {
        Ordinal(self.heights.len() - 1)
    }

    pub fn position(&self, h: &Rational) -> Option<usize> {
        self.heights.binary_search(h).ok()
    }
}

/// Evenly spaced singular heights for `[n]`.
pub fn realize_1truss(n: Ordinal) -> Mesh1 {
    let heights = (0..n.0)
        .map(|k| rat(-1, 1) + rat(2 * (k as i64 + 1), n.0 as i64 + 1))
        .collect();
    Mesh1 { heights }
}

pub fn compactify(m: &Mesh1) -> CompactMesh1 {
    let mut heights = Vec::with_capacity(m.heights.len() + 2);
    heights.push(-Rational::one());
    heights.extend(m.heights.iter().cloned());
    heights.push(Rational::one());
    CompactMesh1 { heights }
}

/// A point of a stratified simplex in barycentric coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratSimplexPoint {
    coords: Vec<Rational>,
    stratum: usize,
}

impl StratSimplexPoint {
    /// Coordinates must be nonnegative and sum to 1.
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.iter().any(|t| t.is_negative()) {
            return Err(Error::Domain("barycentric coordinates must be nonnegative".into()));
        }
        let sum: Rational = coords.iter().cloned().sum();
        if !sum.is_one() {
            return Err(Error::Domain("barycentric coordinates must sum to 1".into()));
        }
        let stratum = coords
            .iter()
            .rposition(|t| !t.is_zero())
            .expect("coordinates sum to 1");
        Ok(StratSimplexPoint { coords, stratum })
    }

    /// Equal weights on all `k + 1` vertices.
    pub fn barycenter(k: usize) -> Self {
        Self::new(vec![rat(1, k as i64 + 1); k + 1]).expect("barycenter")
    }

    /// The point `(1 − t) v₀ + t v₁` of an edge.
    pub fn on_edge(t: Rational) -> Result<Self> {
        Self::new(vec![Rational::one() - t.clone(), t])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// The largest index with nonzero coordinate.
    pub fn stratum(&self) -> usize {
        self.stratum
    }
}

/// The singular-strata diagram: compact fiber intervals and, on each
/// covering relation `a < b`, the interval map from the fiber over `b` back
/// to the fiber over `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingDiagram {
    pub intervals: Vec<Ordinal>,
    pub maps: Vec<NablaMap>,
}

/// A PL mesh bundle over the nerve of a finite poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLMeshBundle {
    base: Arc<FinPoset>,
    vertex_heights: Vec<CompactMesh1>,
    sing: Vec<NablaMap>,
    // sing along every relation a ≤ b (row-major)
    sing_between: Vec<Option<NablaMap>>,
}

impl fmt::Display for PLMeshBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, h) in self.vertex_heights.iter().enumerate() {
            let hs: Vec<String> = h.interior().heights.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}: {{{}}}", self.base.key(b), hs.join(", "))?;
        }
        Ok(())
    }
}

impl PLMeshBundle {
    /// Checks interval maps against the fibers, their coherence along chains
    /// and strict monotonicity at the barycenter of every simplex of
    /// dimension at most 2.
    pub fn new(base: Arc<FinPoset>, vertex_heights: Vec<CompactMesh1>, sing: Vec<NablaMap>) -> Result<Self> {
        let err = |m: String| Error::Extraction(m);
        if vertex_heights.len() != base.len() || sing.len() != base.covers().len() {
            return Err(err("mesh data does not match the base".into()));
        }
        for (&(a, b), g) in base.covers().iter().zip(&sing) {
            if g.src() != vertex_heights[b].interval() || g.dst() != vertex_heights[a].interval() {
                return Err(err(format!(
                    "interval map on {} < {} has the wrong shape",
                    base.key(a),
                    base.key(b)
                )));
            }
        }
        let n = base.len();
        let mut sing_between: Vec<Option<NablaMap>> = vec![None; n * n];
        for &b in base.linear_extension() {
            sing_between[b * n + b] = Some(NablaMap::identity(vertex_heights[b].interval())?);
            for a in 0..n {
                if !base.lt(a, b) {
                    continue;
                }
                let mut found: Option<NablaMap> = None;
                for &c in base.lower_covers(b) {
                    if !base.le(a, c) {
                        continue;
                    }
                    let last = &sing[base.cover_index(c, b).expect("lower cover")];
                    let first = sing_between[a * n + c].as_ref().expect("earlier");
                    let g = compose_nabla(last, first)?;
                    match &found {
                        Some(prev) if *prev != g => {
                            return Err(err(format!(
                                "sheets over {} reach {} along different routes",
                                base.key(b),
                                base.key(a)
                            )))
                        }
                        Some(_) => {}
                        None => found = Some(g),
                    }
                }
                sing_between[a * n + b] = found;
            }
        }
        let m = PLMeshBundle {
            base,
            vertex_heights,
            sing,
            sing_between,
        };
        m.check_monotone()?;
        Ok(m)
    }

    pub fn base(&self) -> &Arc<FinPoset> {
        &self.base
    }

    pub fn vertex_heights(&self) -> &[CompactMesh1] {
        &self.vertex_heights
    }

    pub fn sing_maps(&self) -> &[NablaMap] {
        &self.sing
    }

    /// The interval map along `a ≤ b`.
    pub fn sing_between(&self, a: usize, b: usize) -> Option<&NablaMap> {
        self.sing_between[a * self.base.len() + b].as_ref()
    }

    /// Chains `b₀ < … < b_k` of the base with `k ≤ max_dim`.
    pub fn simplices(&self, max_dim: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.base.len()).map(|b| vec![b]).collect();
        let mut frontier = out.clone();
        for _ in 0..max_dim {
            let mut next = Vec::new();
            for chain in &frontier {
                let last = *chain.last().expect("nonempty");
                for b in 0..self.base.len() {
                    if self.base.lt(last, b) {
                        let mut c = chain.clone();
                        c.push(b);
                        next.push(c);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Compact fiber heights at a point of the simplex spanned by `chain`.
    pub fn heights_at(&self, chain: &[usize], p: &StratSimplexPoint) -> Result<CompactMesh1> {
        if chain.len() != p.coords.len() {
            return Err(Error::Domain("point and simplex differ in dimension".into()));
        }
        if chain.windows(2).any(|w| !self.base.lt(w[0], w[1])) {
            return Err(Error::Domain("vertices do not form a chain".into()));
        }
        let top = chain[p.stratum];
        let size = self.vertex_heights[top].heights.len();
        let mut heights = vec![Rational::zero(); size];
        for (i, &b) in chain[..=p.stratum].iter().enumerate() {
            let t = &p.coords[i];
            if t.is_zero() {
                continue;
            }
            let g = self.sing_between(b, top).expect("chain relation");
            for (s, h) in heights.iter_mut().enumerate() {
                *h += t * &self.vertex_heights[b].heights[g.apply(s)];
            }
        }
        Ok(CompactMesh1 { heights })
    }

    fn check_monotone(&self) -> Result<()> {
        for chain in self.simplices(2).into_iter().filter(|c| c.len() > 1) {
            let p = StratSimplexPoint::barycenter(chain.len() - 1);
            let h = self.heights_at(&chain, &p)?;
            if CompactMesh1::new(h.heights).is_err() {
                let keys: Vec<&str> = chain.iter().map(|&b| self.base.key(b)).collect();
                return Err(Error::Extraction(format!(
                    "heights fail to increase strictly at the barycenter of {}",
                    keys.join(" < ")
                )));
            }
        }
        Ok(())
    }

    /// The same bundle with every vertex height replaced, keeping the sheet
    /// structure.
    pub fn with_heights(&self, vertex_heights: Vec<CompactMesh1>) -> Result<Self> {
        Self::new(self.base.clone(), vertex_heights, self.sing.clone())
    }
}

/// Realizes a diagram with evenly spaced heights in every fiber.
pub fn realize_bundle(d: &DeltaDiagram) -> Result<PLMeshBundle> {
    let heights = d.ords().iter().map(|&n| compactify(&realize_1truss(n))).collect();
    realize_bundle_with(d, heights)
}

/// Realizes a diagram with the given vertex heights.
pub fn realize_bundle_with(d: &DeltaDiagram, vertex_heights: Vec<CompactMesh1>) -> Result<PLMeshBundle> {
    for (b, h) in vertex_heights.iter().enumerate() {
        if h.interval().0 != d.ord(b).0 + 1 {
            return Err(Error::Domain(format!(
                "fiber over {} needs {} singular heights",
                d.base().key(b),
                d.ord(b).0
            )));
        }
    }
    let sing = d.arrows().iter().map(dual_delta_to_nabla).collect();
    PLMeshBundle::new(d.base().clone(), vertex_heights, sing)
}

fn smallest_gap(h: &CompactMesh1) -> Rational {
    h.heights
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .expect("at least two heights")
}

/// Reads off the regular strata. The arrow on `a < b` sends regular interval
/// `i` over `a` to the interval over `b` entered by a path leaving the
/// midpoint of `i` at constant height.
pub fn reg_extract(m: &PLMeshBundle) -> Result<DeltaDiagram> {
    let base = m.base.clone();
    let ords = m
        .vertex_heights
        .iter()
        .map(|h| h.interior().ordinal())
        .collect();
    let mut arrows = Vec::with_capacity(base.covers().len());
    for &(a, b) in base.covers() {
        let below = &m.vertex_heights[a];
        let t = smallest_gap(below) / rat(8, 1);
        let p = StratSimplexPoint::on_edge(t)?;
        let lifted = m.heights_at(&[a, b], &p)?;
        let interior = &lifted.heights[1..lifted.heights.len() - 1];
        let values = below
            .heights
            .windows(2)
            .map(|w| {
                let mid = (&w[0] + &w[1]) / rat(2, 1);
                interior.iter().filter(|h| **h < mid).count()
            })
            .collect();
        let f = crate::ordinal::DeltaMap::new(below.interior().ordinal(), m.vertex_heights[b].interior().ordinal(), values)
            .map_err(|e| Error::Extraction(format!("{} < {}: {e}", base.key(a), base.key(b))))?;
        arrows.push(f);
    }
    DeltaDiagram::new(base, ords, arrows).map_err(|e| Error::Extraction(e.to_string()))
}

/// Reads off the singular strata. Each sheet over the open edge `a < b` is
/// extended linearly to `a` and located among the compact heights there.
pub fn sing_extract(m: &PLMeshBundle) -> Result<SingDiagram> {
    let intervals = m.vertex_heights.iter().map(CompactMesh1::interval).collect();
    let half = StratSimplexPoint::barycenter(1);
    let end = StratSimplexPoint::on_edge(Rational::one())?;
    let mut maps = Vec::with_capacity(m.base.covers().len());
    for &(a, b) in m.base.covers() {
        let mid = m.heights_at(&[a, b], &half)?;
        let top = m.heights_at(&[a, b], &end)?;
        let values = mid
            .heights
            .iter()
            .zip(&top.heights)
            .map(|(h_half, h_one)| {
                let h_zero = h_half * rat(2, 1) - h_one;
                m.vertex_heights[a].position(&h_zero).ok_or_else(|| {
                    Error::Extraction(format!(
                        "a sheet over {} < {} ends between strata at {h_zero}",
                        m.base.key(a),
                        m.base.key(b)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let g = NablaMap::new(m.vertex_heights[b].interval(), m.vertex_heights[a].interval(), values)
            .map_err(|e| Error::Extraction(e.to_string()))?;
        maps.push(g);
    }
    Ok(SingDiagram { intervals, maps })
}

/// Duality of the extracted diagrams, checked on every covering relation.
pub fn duality_holds(m: &PLMeshBundle) -> Result<bool> {
    let reg = reg_extract(m)?;
    let sing = sing_extract(m)?;
    Ok(reg
        .arrows()
        .iter()
        .zip(&sing.maps)
        .all(|(f, g)| dual_delta_to_nabla(f) == *g))
}

/// A choice of stratum in the fiber over one base vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StratumChoice {
    pub kind: Kind,
    pub index: usize,
}

/// Translates a section into ET objects over the regular diagram, checking
/// that every covering relation is sent to a nonempty hom-set.
pub fn section_to_et(m: &PLMeshBundle, s: &[StratumChoice]) -> Result<Vec<EtObject>> {
    if s.len() != m.base.len() {
        return Err(Error::Section("one stratum per base vertex required".into()));
    }
    let reg = reg_extract(m)?;
    let objects = s
        .iter()
        .enumerate()
        .map(|(b, c)| {
            EtObject::new(c.kind, c.index, reg.ord(b))
                .map_err(|_| Error::Section(format!("no such stratum over {}", m.base.key(b))))
        })
        .collect::<Result<Vec<_>>>()?;
    for &(a, b) in m.base.covers() {
        let alpha = reg.arrow(a, b).expect("cover");
        if !validate_et_morphism(&objects[a], &objects[b], alpha)? {
            return Err(Error::Section(format!(
                "section jumps along {} < {}: {} to {}",
                m.base.key(a),
                m.base.key(b),
                objects[a],
                objects[b]
            )));
        }
    }
    Ok(objects)
}

/// The geometric continuity test for sections: on every covering relation
/// `a < b`, the stratum over `a` lies in the closure of the chosen stratum
/// over the open edge.
pub fn section_is_continuous(m: &PLMeshBundle, s: &[StratumChoice]) -> Result<bool> {
    if s.len() != m.base.len() {
        return Err(Error::Section("one stratum per base vertex required".into()));
    }
    let half = StratSimplexPoint::barycenter(1);
    let end = StratSimplexPoint::on_edge(Rational::one())?;
    for &(a, b) in m.base.covers() {
        let mid = m.heights_at(&[a, b], &half)?;
        let top = m.heights_at(&[a, b], &end)?;
        // limit of sheet k as the edge parameter tends to 0
        let sheet = |k: usize| -> Option<Rational> {
            Some(mid.heights.get(k)? * rat(2, 1) - top.heights.get(k)?)
        };
        let below = &m.vertex_heights[a].heights;
        let (i, j) = (s[a].index, s[b].index);
        let closure = match s[b].kind {
            Kind::Singular => sheet(j + 1).zip(sheet(j + 1)),
            Kind::Regular => sheet(j).zip(sheet(j + 1)),
        };
        let stratum = match s[a].kind {
            Kind::Singular => below.get(i + 1).zip(below.get(i + 1)),
            Kind::Regular => below.get(i).zip(below.get(i + 1)),
        };
        let (Some((lo, hi)), Some((x_lo, x_hi))) = (closure, stratum) else {
            return Err(Error::Section("stratum index out of range".into()));
        };
        if !(lo <= *x_lo && *x_hi <= hi) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pulls a mesh bundle back along a monotone map of bases.
pub fn pullback_mesh(m: &PLMeshBundle, new_base: Arc<FinPoset>, f: &PosetMap) -> Result<PLMeshBundle> {
    let f = PosetMap::new(&new_base, &m.base, f.values().to_vec())?;
    let heights = (0..new_base.len())
        .map(|b| m.vertex_heights[f.apply(b)].clone())
        .collect();
    let sing = new_base
        .covers()
        .iter()
        .map(|&(a, b)| m.sing_between(f.apply(a), f.apply(b)).cloned().expect("monotone"))
        .collect();
    PLMeshBundle::new(new_base, heights, sing)
}

/// One mesh bundle per stage of a tower.
pub fn realize_tower(t: &TrussTower) -> Result<Vec<PLMeshBundle>> {
    t.skeleton().diagrams().iter().map(realize_bundle).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::DeltaMap;

    fn dmap(values: &[usize], dst: usize) -> DeltaMap {
        DeltaMap::new(Ordinal(values.len() - 1), Ordinal(dst), values.to_vec()).unwrap()
    }

    fn arrow_diagram(f: DeltaMap) -> DeltaDiagram {
        DeltaDiagram::new(Arc::new(FinPoset::arrow()), vec![f.src(), f.dst()], vec![f]).unwrap()
    }

    #[test]
    fn even_spacing() {
        assert!(realize_1truss(Ordinal(0)).heights().is_empty());
        assert_eq!(realize_1truss(Ordinal(1)).heights(), &[rat(0, 1)]);
        assert_eq!(realize_1truss(Ordinal(2)).heights(), &[rat(-1, 3), rat(1, 3)]);
    }

    #[test]
    fn compactify_pads() {
        let c = compactify(&realize_1truss(Ordinal(2)));
        assert_eq!(c.heights(), &[rat(-1, 1), rat(-1, 3), rat(1, 3), rat(1, 1)]);
        assert_eq!(compactify(&realize_1truss(Ordinal(0))).heights(), &[rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn mesh_rejects_bad_heights() {
        assert!(Mesh1::new(vec![rat(1, 2), rat(0, 1)]).is_err());
        assert!(Mesh1::new(vec![rat(1, 1)]).is_err());
        assert!(CompactMesh1::new(vec![rat(-1, 1), rat(0, 1)]).is_err());
    }

    #[test]
    fn strat_point_stratum() {
        let p = StratSimplexPoint::new(vec![rat(1, 2), rat(1, 2), rat(0, 1)]).unwrap();
        assert_eq!(p.stratum(), 1);
        assert!(StratSimplexPoint::new(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(StratSimplexPoint::new(vec![rat(3, 2), rat(-1, 2)]).is_err());
    }

    #[test]
    fn degeneracy_realization() {
        let d = arrow_diagram(dmap(&[0, 0], 0));
        let m = realize_bundle(&d).unwrap();
        assert_eq!(m.vertex_heights()[0].interior().heights(), &[rat(0, 1)]);
        assert!(m.vertex_heights()[1].interior().heights().is_empty());
        assert_eq!(reg_extract(&m).unwrap(), d);
        assert!(duality_holds(&m).unwrap());
    }

    #[test]
    fn inner_face_realization() {
        let d = arrow_diagram(dmap(&[0, 2], 2));
        let m = realize_bundle(&d).unwrap();
        let mid = m.heights_at(&[0, 1], &StratSimplexPoint::barycenter(1)).unwrap();
        assert_eq!(mid.interior().heights(), &[rat(-1, 6), rat(1, 6)]);
        let sing = sing_extract(&m).unwrap();
        assert_eq!(sing.maps[0].values(), &[0, 1, 1, 2]);
        assert_eq!(reg_extract(&m).unwrap(), d);
    }

    #[test]
    fn mismatched_sheet_map_rejected() {
        let base = Arc::new(FinPoset::arrow());
        let h0 = compactify(&Mesh1::new(vec![rat(-1, 2), rat(1, 2)]).unwrap());
        let h1 = compactify(&Mesh1::new(vec![rat(-9, 10), rat(9, 10)]).unwrap());
        let g = NablaMap::new(Ordinal(3), Ordinal(3), vec![0, 1, 2, 3]).unwrap();
        assert!(PLMeshBundle::new(base.clone(), vec![h0.clone(), h1.clone()], vec![g]).is_ok());
        let bad = NablaMap::new(Ordinal(3), Ordinal(2), vec![0, 1, 1, 2]).unwrap();
        assert!(PLMeshBundle::new(base, vec![h0, h1], vec![bad]).is_err());
    }

    #[test]
    fn sections_on_degeneracy() {
        let m = realize_bundle(&arrow_diagram(dmap(&[0, 0], 0))).unwrap();
        let follow = [
            StratumChoice { kind: Kind::Singular, index: 0 },
            StratumChoice { kind: Kind::Regular, index: 0 },
        ];
        let objs = section_to_et(&m, &follow).unwrap();
        assert_eq!(objs[0].to_string(), "s0@1");
        assert_eq!(objs[1].to_string(), "r0@0");
        assert!(section_is_continuous(&m, &follow).unwrap());
        let constant = realize_bundle(&DeltaDiagram::constant(Arc::new(FinPoset::arrow()), Ordinal(1))).unwrap();
        let jump = [
            StratumChoice { kind: Kind::Regular, index: 0 },
            StratumChoice { kind: Kind::Regular, index: 1 },
        ];
        assert!(matches!(section_to_et(&constant, &jump), Err(Error::Section(_))));
        assert!(!section_is_continuous(&constant, &jump).unwrap());
    }

    #[test]
    fn pullback_to_endpoint() {
        let d = arrow_diagram(dmap(&[0, 2], 2));
        let m = realize_bundle(&d).unwrap();
        let point = Arc::new(FinPoset::point());
        let p = pullback_mesh(&m, point.clone(), &PosetMap::constant(&point, 1)).unwrap();
        assert_eq!(p.vertex_heights()[0].interior(), realize_1truss(Ordinal(2)));
        let same = pullback_mesh(&m, m.base().clone(), &PosetMap::identity(m.base())).unwrap();
        assert_eq!(same, m);
    }
}
