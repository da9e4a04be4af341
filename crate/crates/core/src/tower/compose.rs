use std::sync::Arc;

use super::{Bordism, TowerSkeleton, TrussTower};
use crate::bundle::{DeltaDiagram, Labeling};
use crate::error::{Error, Result};
use crate::ordinal::compose_delta;
use crate::poset::{FinPoset, PosetMap};

/// What composition checked about relations crossing the middle slice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompositionAudit {
    /// Covering relations of the composite running from end 0 to end 2.
    pub crossing_relations: usize,
    /// Total number of middle elements factoring those relations.
    pub factorizations: usize,
    pub with_minimum: usize,
    pub with_maximum_only: usize,
    pub without_extremum: usize,
    pub disconnected: usize,
    pub disagreements: Vec<String>,
}

impl CompositionAudit {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Glues two bordisms along their shared end and restricts to the outer
/// ends. Fails if the ends differ.
pub fn compose_bordisms(b1: &Bordism, b2: &Bordism) -> Result<Bordism> {
    let (b, audit) = compose_bordisms_audited(b1, b2)?;
    if let Some(d) = audit.disagreements.first() {
        return Err(Error::Invariant(format!("composite depends on factorization: {d}")));
    }
    Ok(b)
}

/// As [`compose_bordisms`], also checking that every factorization of every
/// crossing relation through the middle slice yields the same data.
pub fn compose_bordisms_audited(b1: &Bordism, b2: &Bordism) -> Result<(Bordism, CompositionAudit)> {
    if b1.depth() != b2.depth() {
        return Err(Error::Composition(format!(
            "depths {} and {} differ",
            b1.depth(),
            b2.depth()
        )));
    }
    if b1.tower().category() != b2.tower().category() {
        return Err(Error::Composition("label categories differ".into()));
    }
    if b1.target()? != b2.source()? {
        return Err(Error::Composition(
            "target of the first bordism differs from the source of the second".into(),
        ));
    }
    let glued = glue(b1.tower(), b2.tower())?;
    let arrow = Arc::new(FinPoset::arrow());
    let outer = PosetMap::new(&arrow, glued.base(), vec![0, 2])?;
    let (skeleton, maps) = glued.skeleton().pullback_with_maps(arrow, &outer)?;
    let labels = glued
        .labels()
        .pullback(glued.top(), skeleton.top(), maps.last().expect("base map"))?;
    let composite = TrussTower::new(skeleton, labels)?;
    let audit = audit(&glued, &composite, &maps)?;
    Ok((Bordism::new(composite)?, audit))
}

fn invert(emb: &[usize], n: usize) -> Vec<Option<usize>> {
    let mut inv = vec![None; n];
    for (a, &u) in emb.iter().enumerate() {
        inv[u] = Some(a);
    }
    inv
}

fn from_pieces<T: PartialEq + std::fmt::Debug>(
    inv: &[Vec<Option<usize>>; 2],
    u: usize,
    value: impl Fn(usize, usize) -> T,
) -> Result<T> {
    match (inv[0][u], inv[1][u]) {
        (Some(a), Some(b)) => {
            let (x, y) = (value(0, a), value(1, b));
            if x != y {
                return Err(Error::Invariant(format!(
                    "pieces disagree on the shared slice: {x:?} vs {y:?}"
                )));
            }
            Ok(x)
        }
        (Some(a), None) => Ok(value(0, a)),
        (None, Some(b)) => Ok(value(1, b)),
        (None, None) => Err(Error::Invariant("glued element outside both pieces".into())),
    }
}

fn on_relation<T>(
    inv: &[Vec<Option<usize>>; 2],
    u: usize,
    w: usize,
    value: impl Fn(usize, usize, usize) -> Option<T>,
) -> Result<T> {
    (0..2)
        .find_map(|i| match (inv[i][u], inv[i][w]) {
            (Some(a), Some(b)) => value(i, a, b),
            _ => None,
        })
        .ok_or_else(|| Error::Invariant("covering relation of the glued poset lies in neither piece".into()))
}

/// The tower over `0 < 1 < 2` restricting to `t1` over `0 < 1` and `t2` over
/// `1 < 2`.
fn glue(t1: &TrussTower, t2: &TrussTower) -> Result<TrussTower> {
    let pieces = [t1, t2];
    let mut skeleton = TowerSkeleton::new(Arc::new(FinPoset::chain(2)));
    let mut emb = [vec![0, 1], vec![1, 2]];
    for k in 0..t1.depth() {
        let level = skeleton.top().clone();
        let inv = [invert(&emb[0], level.len()), invert(&emb[1], level.len())];
        let ds = [t1.diagram(k), t2.diagram(k)];
        let ords = (0..level.len())
            .map(|u| from_pieces(&inv, u, |i, a| ds[i].ord(a)))
            .collect::<Result<Vec<_>>>()?;
        let arrows = level
            .covers()
            .iter()
            .map(|&(u, w)| on_relation(&inv, u, w, |i, a, b| ds[i].between(a, b).cloned()))
            .collect::<Result<Vec<_>>>()?;
        let d = DeltaDiagram::new(level, ords, arrows)
            .map_err(|e| Error::Invariant(format!("glued stage {k}: {e}")))?;
        skeleton.push(d)?;
        let total = skeleton.total(k);
        for i in 0..2 {
            let piece = pieces[i].total(k);
            emb[i] = piece
                .entries()
                .iter()
                .map(|(a, o)| {
                    total
                        .index_of(emb[i][*a], o)
                        .ok_or_else(|| Error::Invariant(format!("{o} missing from glued stage {k}")))
                })
                .collect::<Result<Vec<_>>>()?;
        }
    }
    let top = skeleton.top().clone();
    let inv = [invert(&emb[0], top.len()), invert(&emb[1], top.len())];
    let tables = [t1.labels().composites(t1.top())?, t2.labels().composites(t2.top())?];
    let sizes = [t1.top().len(), t2.top().len()];
    let objects = (0..top.len())
        .map(|u| from_pieces(&inv, u, |i, a| pieces[i].labels().object(a)))
        .collect::<Result<Vec<_>>>()?;
    let relations = top
        .covers()
        .iter()
        .map(|&(u, w)| on_relation(&inv, u, w, |i, a, b| tables[i][a * sizes[i] + b]))
        .collect::<Result<Vec<_>>>()?;
    let labels = Labeling::new(t1.category().clone(), &top, objects, relations)?;
    TrussTower::new(skeleton, labels)
}

fn project_level(s: &TowerSkeleton, k: usize, mut x: usize) -> usize {
    for j in (0..k).rev() {
        x = s.total(j).projection(x);
    }
    x
}

fn audit(glued: &TrussTower, composite: &TrussTower, maps: &[PosetMap]) -> Result<CompositionAudit> {
    let mut audit = CompositionAudit::default();
    let depth = glued.depth();
    let gs = glued.skeleton();
    let label_table = glued.labels().composites(glued.top())?;
    let category = glued.category();
    for (k, phi) in maps.iter().enumerate().take(depth + 1) {
        let level = composite.skeleton().level(k);
        let q = gs.level(k);
        for (c, &(x, y)) in level.covers().iter().enumerate() {
            let (u, w) = (phi.apply(x), phi.apply(y));
            if project_level(gs, k, u) != 0 || project_level(gs, k, w) != 2 {
                continue;
            }
            audit.crossing_relations += 1;
            let middle: Vec<usize> = (0..q.len())
                .filter(|&z| project_level(gs, k, z) == 1 && q.le(u, z) && q.le(z, w))
                .collect();
            audit.factorizations += middle.len();
            let here = format!("{} < {}", level.key(x), level.key(y));
            if middle.is_empty() {
                audit.disagreements.push(format!("{here} has no factorization"));
                continue;
            }
            if q.minimum_of(&middle).is_some() {
                audit.with_minimum += 1;
            } else if q.maximum_of(&middle).is_some() {
                audit.with_maximum_only += 1;
            } else {
                audit.without_extremum += 1;
            }
            if !q.is_connected(&middle) {
                audit.disconnected += 1;
            }
            for &z in &middle {
                let agrees = if k < depth {
                    let g = gs.diagram(k);
                    let through = compose_delta(
                        g.between(u, z).expect("u ≤ z"),
                        g.between(z, w).expect("z ≤ w"),
                    )?;
                    Some(&through) == composite.diagram(k).arrow(x, y)
                } else {
                    let n = q.len();
                    let through = category.compose(
                        label_table[u * n + z].expect("u ≤ z"),
                        label_table[z * n + w].expect("z ≤ w"),
                    );
                    through == Some(composite.labels().relation(c))
                };
                if !agrees {
                    audit
                        .disagreements
                        .push(format!("{here} through {}", q.key(z)));
                }
            }
        }
    }
    Ok(audit)
}
