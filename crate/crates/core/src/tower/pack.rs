use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use super::{compose_bordisms, identity_bordism, Bordism, TowerSkeleton, TrussTower};
use crate::bundle::{DeltaDiagram, LabelCategory, Labeling, Morphism};
use crate::error::{Error, Result};
use crate::poset::{FinPoset, PosetMap};

const MAX_MORPHISMS: usize = 20_000;

/// Labelled 1-trusses and the bordisms between them, closed under
/// composition. Objects and morphisms are sorted by signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrussCategory {
    inner: Arc<LabelCategory>,
    objects: Vec<TrussTower>,
    morphisms: Vec<Bordism>,
    view: Arc<LabelCategory>,
}

impl TrussCategory {
    /// The smallest subcategory containing the given trusses and bordisms.
    pub fn generate(inner: Arc<LabelCategory>, objects: Vec<TrussTower>, morphisms: Vec<Bordism>) -> Result<Self> {
        let point = FinPoset::point();
        let mut obj_map: BTreeMap<Vec<usize>, TrussTower> = BTreeMap::new();
        let mut add_object = |t: TrussTower| -> Result<()> {
            if t.depth() != 1 || t.base().as_ref() != &point {
                return Err(Error::Domain("objects must be 1-trusses over the point".into()));
            }
            if t.category() != &inner {
                return Err(Error::Domain("object labelled in a different category".into()));
            }
            obj_map.entry(t.signature()).or_insert(t);
            Ok(())
        };
        for t in objects {
            add_object(t)?;
        }
        for m in &morphisms {
            if m.depth() != 1 {
                return Err(Error::Domain("morphisms must be bordisms of depth 1".into()));
            }
            add_object(m.source()?)?;
            add_object(m.target()?)?;
        }
        let objects: Vec<TrussTower> = obj_map.into_values().collect();
        let obj_index: HashMap<Vec<usize>, usize> =
            objects.iter().enumerate().map(|(i, t)| (t.signature(), i)).collect();
        let ends = |m: &Bordism| -> Result<(usize, usize)> {
            Ok((obj_index[&m.source()?.signature()], obj_index[&m.target()?.signature()]))
        };

        let mut found: Vec<(usize, usize, Bordism)> = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue: Vec<usize> = Vec::new();
        let mut insert = |m: Bordism, found: &mut Vec<(usize, usize, Bordism)>, queue: &mut Vec<usize>| -> Result<()> {
            if seen.insert(m.tower().signature()) {
                let (s, d) = ends(&m)?;
                found.push((s, d, m));
                queue.push(found.len() - 1);
                if found.len() > MAX_MORPHISMS {
                    return Err(Error::Domain(format!(
                        "composition closure exceeds {MAX_MORPHISMS} morphisms"
                    )));
                }
            }
            Ok(())
        };
        for t in &objects {
            insert(identity_bordism(t)?, &mut found, &mut queue)?;
        }
        for m in morphisms {
            insert(m, &mut found, &mut queue)?;
        }
        while let Some(i) = queue.pop() {
            let (si, di) = (found[i].0, found[i].1);
            let mut new = Vec::new();
            for j in 0..found.len() {
                let (sj, dj, ref mj) = found[j];
                if di == sj {
                    new.push(compose_bordisms(&found[i].2, mj)?);
                }
                if dj == si {
                    new.push(compose_bordisms(mj, &found[i].2)?);
                }
            }
            for m in new {
                insert(m, &mut found, &mut queue)?;
            }
        }
        found.sort_by_cached_key(|(s, d, m)| (*s, *d, m.tower().signature()));
        let mor_index: HashMap<Vec<usize>, usize> = found
            .iter()
            .enumerate()
            .map(|(j, (_, _, m))| (m.tower().signature(), j))
            .collect();
        let mut composition = HashMap::new();
        for (f, (_, df, mf)) in found.iter().enumerate() {
            for (g, (sg, _, mg)) in found.iter().enumerate() {
                if df == sg {
                    let h = compose_bordisms(mf, mg)?;
                    composition.insert((f, g), mor_index[&h.tower().signature()]);
                }
            }
        }
        let identities = objects
            .iter()
            .map(|t| Ok(mor_index[&identity_bordism(t)?.tower().signature()]))
            .collect::<Result<Vec<_>>>()?;
        let view = LabelCategory::new(
            (0..objects.len()).map(|i| format!("t{i}")).collect(),
            found
                .iter()
                .enumerate()
                .map(|(j, (s, d, _))| Morphism {
                    name: format!("m{j}"),
                    src: *s,
                    dst: *d,
                })
                .collect(),
            identities,
            composition,
        )
        .map_err(|e| Error::Invariant(format!("truss category: {e}")))?;
        Ok(TrussCategory {
            inner,
            objects,
            morphisms: found.into_iter().map(|(_, _, m)| m).collect(),
            view: Arc::new(view),
        })
    }

    pub fn inner(&self) -> &Arc<LabelCategory> {
        &self.inner
    }

    /// The category as a plain label category, objects `t{i}`, morphisms `m{j}`.
    pub fn view(&self) -> &Arc<LabelCategory> {
        &self.view
    }

    pub fn objects(&self) -> &[TrussTower] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Bordism] {
        &self.morphisms
    }

    pub fn object(&self, i: usize) -> &TrussTower {
        &self.objects[i]
    }

    pub fn morphism(&self, j: usize) -> &Bordism {
        &self.morphisms[j]
    }

    pub fn object_index(&self, t: &TrussTower) -> Option<usize> {
        self.objects.iter().position(|o| o == t)
    }

    pub fn morphism_index(&self, b: &Bordism) -> Option<usize> {
        self.morphisms.iter().position(|m| m == b)
    }
}

/// A tower one stage shorter, labelled in a category of labelled 1-trusses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedTower {
    tower: TrussTower,
    category: Arc<TrussCategory>,
}

impl PackedTower {
    pub fn new(tower: TrussTower, category: Arc<TrussCategory>) -> Result<Self> {
        if tower.category() != category.view() {
            return Err(Error::Unpacking("tower is not labelled in the truss category".into()));
        }
        Ok(PackedTower { tower, category })
    }

    pub fn tower(&self) -> &TrussTower {
        &self.tower
    }

    pub fn category(&self) -> &Arc<TrussCategory> {
        &self.category
    }
}

/// Folds the last stage of a tower and its labels into labels of the
/// previous total poset.
pub fn pack(t: &TrussTower) -> Result<PackedTower> {
    if t.depth() == 0 {
        return Err(Error::UnsupportedDepth {
            expected: "at least 1".into(),
            found: 0,
        });
    }
    let mut lower = t.skeleton().clone();
    let last = lower.pop().expect("depth at least 1");
    let level = lower.top().clone();
    let top_tower = TrussTower::new(
        TowerSkeleton::from_diagrams(level.clone(), vec![last])?,
        t.labels().clone(),
    )?;
    let fibers = (0..level.len())
        .map(|e| top_tower.restrict_to(e))
        .collect::<Result<Vec<_>>>()?;
    let arrow = Arc::new(FinPoset::arrow());
    let bordisms = level
        .covers()
        .iter()
        .map(|&(a, b)| {
            let f = PosetMap::new(&arrow, &level, vec![a, b])?;
            Bordism::new(top_tower.pullback(arrow.clone(), &f)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let cat = TrussCategory::generate(t.category().clone(), fibers.clone(), bordisms.clone())?;
    let objects = fibers
        .iter()
        .map(|f| cat.object_index(f).expect("generator"))
        .collect();
    let relations = bordisms
        .iter()
        .map(|b| cat.morphism_index(b).expect("generator"))
        .collect();
    let labels = Labeling::new(cat.view().clone(), &level, objects, relations)?;
    PackedTower::new(TrussTower::new(lower, labels)?, Arc::new(cat))
}

/// Inverse of [`pack`]: rebuilds the last stage from the truss labels.
pub fn unpack(p: &PackedTower) -> Result<TrussTower> {
    let err = |m: String| Error::Unpacking(m);
    let t = &p.tower;
    let cat = &p.category;
    let level = t.top().clone();
    let labels = t.labels();
    let ords = (0..level.len())
        .map(|e| cat.object(labels.object(e)).diagram(0).ord(0))
        .collect();
    let arrows = (0..level.covers().len())
        .map(|k| {
            cat.morphism(labels.relation(k))
                .tower()
                .diagram(0)
                .arrow(0, 1)
                .cloned()
                .ok_or_else(|| err("bordism without a stage over 0 < 1".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let d = DeltaDiagram::new(level.clone(), ords, arrows).map_err(|e| err(e.to_string()))?;
    let mut skeleton = t.skeleton().clone();
    skeleton.push(d)?;
    let total = skeleton.total(t.depth());
    let top = total.carrier().clone();
    let mut objects = Vec::with_capacity(top.len());
    for &(e, o) in total.entries() {
        let fiber = cat.object(labels.object(e));
        let x = fiber
            .total(0)
            .index_of(0, &o)
            .ok_or_else(|| err(format!("{o} missing from the truss labelling {}", level.key(e))))?;
        objects.push(fiber.labels().object(x));
    }
    let mut relations = Vec::with_capacity(top.covers().len());
    for &(x, y) in top.covers() {
        let (e, o) = total.entry(x);
        let (f, q) = total.entry(y);
        let (source, ix, iy) = if e == f {
            let fiber = cat.object(labels.object(e));
            let ft = fiber.total(0);
            (fiber, ft.index_of(0, &o), ft.index_of(0, &q))
        } else {
            let k = level
                .cover_index(e, f)
                .ok_or_else(|| err(format!("{} < {} spans more than a cover", top.key(x), top.key(y))))?;
            let b = cat.morphism(labels.relation(k)).tower();
            (b, b.total(0).index_of(0, &o), b.total(0).index_of(1, &q))
        };
        let (ix, iy) = ix.zip(iy).ok_or_else(|| err(format!("{} < {} has no label", top.key(x), top.key(y))))?;
        let c = source
            .top()
            .cover_index(ix, iy)
            .ok_or_else(|| err(format!("{} < {} is not a cover of its label", top.key(x), top.key(y))))?;
        relations.push(source.labels().relation(c));
    }
    let labels = Labeling::new(cat.inner().clone(), &top, objects, relations).map_err(|e| err(e.to_string()))?;
    TrussTower::new(skeleton, labels)
}
