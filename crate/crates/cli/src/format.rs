//! The JSON truss file format. Raw serde structs mirror the files; the
//! conversion layer validates them into core types and reports the location
//! of the first problem.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use truss_core::bundle::{DeltaDiagram, LabelCategory, Labeling, Morphism};
use truss_core::ordinal::{DeltaMap, Ordinal};
use truss_core::poset::FinPoset;
use truss_core::tower::{Bordism, PackedTower, TowerSkeleton, TrussCategory, TrussTower};

use crate::report::Diagnostic;

pub const DIAGRAM: &str = "truss/diagram/v1";
pub const TOWER: &str = "truss/tower/v1";
pub const BORDISM: &str = "truss/bordism/v1";
pub const CATEGORY: &str = "truss/category/v1";
pub const PACKED: &str = "truss/packed/v1";
pub const SCHEMAS: [&str; 5] = [DIAGRAM, TOWER, BORDISM, CATEGORY, PACKED];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPoset {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMap {
    pub src: usize,
    pub dst: usize,
    pub values: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawArrow {
    pub from: String,
    pub to: String,
    pub map: RawMap,
}

/// One stage of a tower: ordinals over the previous total poset and maps
/// along its covering relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStage {
    pub ord: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrow: Vec<RawArrow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDiagram {
    pub schema: String,
    pub base: RawPoset,
    pub ord: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrow: Vec<RawArrow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComposite {
    pub first: String,
    pub then: String,
    pub result: String,
}

/// A category given either explicitly or as a poset. Composites involving
/// an identity are implied and never listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawCategory {
    Explicit(RawExplicitCategory),
    Poset { poset: RawPoset },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawExplicitCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    /// Object name to the name of its identity.
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub composition: Vec<RawComposite>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRelationLabel {
    pub from: String,
    pub to: String,
    pub morphism: String,
}

/// Relation labels may be omitted when every hom-set involved is a singleton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLabels {
    pub objects: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<RawRelationLabel>>,
}

/// A tower whose label category is given elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTruss {
    pub depth: usize,
    pub base: RawPoset,
    pub stages: Vec<RawStage>,
    pub labels: RawLabels,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTower {
    pub schema: String,
    pub depth: usize,
    pub base: RawPoset,
    pub stages: Vec<RawStage>,
    pub category: RawCategory,
    pub labels: RawLabels,
    /// Expected restriction to `0`; bordism files only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<RawTruss>,
    /// Expected restriction to `1`; bordism files only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<RawTruss>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategoryFile {
    pub schema: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub composition: Vec<RawComposite>,
}

/// A packed tower: labelled 1-trusses and bordisms closed under composition,
/// and a tower labelled by their view names `t{i}` and `m{j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPacked {
    pub schema: String,
    pub inner: RawCategory,
    pub trusses: Vec<RawTruss>,
    pub bordisms: Vec<RawTruss>,
    pub tower: RawTruss,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrussFile {
    Diagram(DeltaDiagram),
    Tower(TrussTower),
    Bordism(Bordism),
    Category(LabelCategory),
    Packed(PackedTower),
}

impl TrussFile {
    pub fn schema(&self) -> &'static str {
        match self {
            TrussFile::Diagram(_) => DIAGRAM,
            TrussFile::Tower(_) => TOWER,
            TrussFile::Bordism(_) => BORDISM,
            TrussFile::Category(_) => CATEGORY,
            TrussFile::Packed(_) => PACKED,
        }
    }
}

/// Why a file could not be loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadError {
    /// Malformed JSON or a shape mismatch; exit code 2.
    Parse(Diagnostic),
    /// Well-formed but violates an invariant; exit code 1.
    Invalid(Diagnostic),
}

fn diag(location: impl Into<String>, message: impl ToString) -> Diagnostic {
    Diagnostic {
        location: location.into(),
        message: message.to_string(),
    }
}

fn json_error(e: &serde_json::Error) -> LoadError {
    LoadError::Parse(diag(format!("line {}, column {}", e.line(), e.column()), e))
}

#[derive(Deserialize)]
struct SchemaOnly {
    schema: Option<String>,
}

pub fn parse(text: &str) -> Result<TrussFile, LoadError> {
    let head: SchemaOnly = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    let schema = head
        .schema
        .ok_or_else(|| LoadError::Parse(diag("schema", "missing schema tag")))?;
    let invalid = LoadError::Invalid;
    match schema.as_str() {
        DIAGRAM => {
            let raw: RawDiagram = serde_json::from_str(text).map_err(|e| json_error(&e))?;
            let base = Arc::new(poset_from_raw(&raw.base, "base").map_err(invalid)?);
            let stage = RawStage {
                ord: raw.ord,
                arrow: raw.arrow,
            };
            stage_from_raw(&stage, base, "").map(TrussFile::Diagram).map_err(invalid)
        }
        TOWER | BORDISM => {
            let raw: RawTower = serde_json::from_str(text).map_err(|e| json_error(&e))?;
            tower_file_from_raw(&raw, schema == BORDISM).map_err(invalid)
        }
        CATEGORY => {
            let raw: RawCategoryFile = serde_json::from_str(text).map_err(|e| json_error(&e))?;
            let c = RawExplicitCategory {
                objects: raw.objects,
                morphisms: raw.morphisms,
                identities: raw.identities,
                composition: raw.composition,
            };
            explicit_category_from_raw(&c, "")
                .map(TrussFile::Category)
                .map_err(invalid)
        }
        PACKED => {
            let raw: RawPacked = serde_json::from_str(text).map_err(|e| json_error(&e))?;
            packed_from_raw(&raw).map(TrussFile::Packed).map_err(invalid)
        }
        other => Err(LoadError::Parse(diag(
            "schema",
            format!("unknown schema {other}; known schemas: {}", SCHEMAS.join(", ")),
        ))),
    }
}

/// Canonical pretty JSON with a trailing newline.
pub fn print(file: &TrussFile) -> String {
    let mut s = match file {
        TrussFile::Diagram(d) => {
            let stage = stage_to_raw(d);
            serde_json::to_string_pretty(&RawDiagram {
                schema: DIAGRAM.into(),
                base: poset_to_raw(d.base()),
                ord: stage.ord,
                arrow: stage.arrow,
            })
        }
        TrussFile::Tower(t) => serde_json::to_string_pretty(&tower_to_raw(t, TOWER)),
        TrussFile::Bordism(b) => serde_json::to_string_pretty(&tower_to_raw(b.tower(), BORDISM)),
        TrussFile::Category(c) => {
            let raw = category_to_raw(c);
            serde_json::to_string_pretty(&RawCategoryFile {
                schema: CATEGORY.into(),
                objects: raw.objects,
                morphisms: raw.morphisms,
                identities: raw.identities,
                composition: raw.composition,
            })
        }
        TrussFile::Packed(p) => serde_json::to_string_pretty(&packed_to_raw(p)),
    }
    .expect("raw structs serialize");
    s.push('\n');
    s
}

fn at(prefix: &str, field: &str) -> String {
    if prefix.is_empty() {
        field.to_string()
    } else {
        format!("{prefix}.{field}")
    }
}

pub fn poset_from_raw(raw: &RawPoset, loc: &str) -> Result<FinPoset, Diagnostic> {
    let keys: Vec<&str> = raw.elements.iter().map(String::as_str).collect();
    let relations: Vec<(&str, &str)> = raw.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    FinPoset::from_key_relations(&keys, &relations).map_err(|e| diag(loc, e))
}

pub fn poset_to_raw(p: &FinPoset) -> RawPoset {
    RawPoset {
        elements: p.keys().to_vec(),
        covers: p
            .covers()
            .iter()
            .map(|&(a, b)| (p.key(a).to_string(), p.key(b).to_string()))
            .collect(),
    }
}

fn map_from_raw(raw: &RawMap, loc: &str) -> Result<DeltaMap, Diagnostic> {
    DeltaMap::new(Ordinal(raw.src), Ordinal(raw.dst), raw.values.clone()).map_err(|e| {
        diag(
            loc,
            format!("map [{}] → [{}] with values {:?}: {e}", raw.src, raw.dst, raw.values),
        )
    })
}

fn element(base: &FinPoset, key: &str, loc: &str) -> Result<usize, Diagnostic> {
    base.index_of(key)
        .ok_or_else(|| diag(loc, format!("unknown element {key}")))
}

pub fn stage_from_raw(raw: &RawStage, base: Arc<FinPoset>, loc: &str) -> Result<DeltaDiagram, Diagnostic> {
    for key in raw.ord.keys() {
        element(&base, key, &at(loc, "ord"))?;
    }
    let ords = base
        .keys()
        .iter()
        .map(|k| {
            raw.ord
                .get(k)
                .map(|&n| Ordinal(n))
                .ok_or_else(|| diag(at(loc, "ord"), format!("no ordinal over {k}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut by_cover: Vec<Option<DeltaMap>> = vec![None; base.covers().len()];
    for (i, a) in raw.arrow.iter().enumerate() {
        let here = at(loc, &format!("arrow[{i}]"));
        let (x, y) = (element(&base, &a.from, &here)?, element(&base, &a.to, &here)?);
        let k = base
            .cover_index(x, y)
            .ok_or_else(|| diag(&here, format!("{} < {} is not a covering relation", a.from, a.to)))?;
        if by_cover[k].is_some() {
            return Err(diag(&here, format!("second arrow for {} < {}", a.from, a.to)));
        }
        by_cover[k] = Some(map_from_raw(&a.map, &here)?);
    }
    let arrows = by_cover
        .into_iter()
        .zip(base.covers())
        .map(|(m, &(a, b))| {
            m.ok_or_else(|| diag(at(loc, "arrow"), format!("no arrow for {} < {}", base.key(a), base.key(b))))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let loc = if loc.is_empty() { "diagram" } else { loc };
    DeltaDiagram::new(base, ords, arrows).map_err(|e| diag(loc, e))
}

pub fn stage_to_raw(d: &DeltaDiagram) -> RawStage {
    let base = d.base();
    RawStage {
        ord: (0..base.len()).map(|b| (base.key(b).to_string(), d.ord(b).0)).collect(),
        arrow: base
            .covers()
            .iter()
            .zip(d.arrows())
            .map(|(&(a, b), f)| RawArrow {
                from: base.key(a).to_string(),
                to: base.key(b).to_string(),
                map: RawMap {
                    src: f.src().0,
                    dst: f.dst().0,
                    values: f.values().to_vec(),
                },
            })
            .collect(),
    }
}

pub fn category_from_raw(raw: &RawCategory, loc: &str) -> Result<LabelCategory, Diagnostic> {
    match raw {
        RawCategory::Explicit(c) => explicit_category_from_raw(c, loc),
        RawCategory::Poset { poset } => Ok(LabelCategory::from_poset(&poset_from_raw(poset, &at(loc, "poset"))?)),
    }
}

fn explicit_category_from_raw(raw: &RawExplicitCategory, loc: &str) -> Result<LabelCategory, Diagnostic> {
    let object: HashMap<&str, usize> = raw.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
    let morphism: HashMap<&str, usize> = raw.morphisms.iter().enumerate().map(|(i, m)| (m.name.as_str(), i)).collect();
    let find = |table: &HashMap<&str, usize>, name: &str, here: String, what: &str| {
        table
            .get(name)
            .copied()
            .ok_or_else(|| diag(here, format!("unknown {what} {name}")))
    };
    let morphisms = raw
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let here = at(loc, &format!("morphisms[{i}]"));
            Ok(Morphism {
                name: m.name.clone(),
                src: find(&object, &m.src, here.clone(), "object")?,
                dst: find(&object, &m.dst, here, "object")?,
            })
        })
        .collect::<Result<Vec<_>, Diagnostic>>()?;
    for o in raw.identities.keys() {
        find(&object, o, at(loc, "identities"), "object")?;
    }
    let identities = raw
        .objects
        .iter()
        .map(|o| {
            let name = raw
                .identities
                .get(o)
                .ok_or_else(|| diag(at(loc, "identities"), format!("no identity for {o}")))?;
            find(&morphism, name, at(loc, "identities"), "morphism")
        })
        .collect::<Result<Vec<_>, _>>()?;
    let is_identity = |f: usize| identities.contains(&f);
    let mut composition = HashMap::new();
    for (f, mf) in morphisms.iter().enumerate() {
        composition.insert((identities[mf.src], f), f);
        composition.insert((f, identities[mf.dst]), f);
    }
    for (i, c) in raw.composition.iter().enumerate() {
        let here = at(loc, &format!("composition[{i}]"));
        let f = find(&morphism, &c.first, here.clone(), "morphism")?;
        let g = find(&morphism, &c.then, here.clone(), "morphism")?;
        let h = find(&morphism, &c.result, here.clone(), "morphism")?;
        if is_identity(f) || is_identity(g) {
            return Err(diag(here, "composites with identities are implied"));
        }
        if composition.insert((f, g), h).is_some() {
            return Err(diag(here, format!("{} then {} listed twice", c.first, c.then)));
        }
    }
    let loc = if loc.is_empty() { "category" } else { loc };
    LabelCategory::new(raw.objects.clone(), morphisms, identities, composition).map_err(|e| diag(loc, e))
}

pub fn category_to_raw(c: &LabelCategory) -> RawExplicitCategory {
    let m = c.morphisms();
    let ids = c.identities();
    let mut composites: Vec<(usize, usize, usize)> = c
        .composition()
        .iter()
        .filter(|((f, g), _)| !ids.contains(f) && !ids.contains(g))
        .map(|(&(f, g), &h)| (f, g, h))
        .collect();
    composites.sort_unstable();
    RawExplicitCategory {
        objects: c.objects().to_vec(),
        morphisms: m
            .iter()
            .map(|x| RawMorphism {
                name: x.name.clone(),
                src: c.objects()[x.src].clone(),
                dst: c.objects()[x.dst].clone(),
            })
            .collect(),
        identities: c
            .objects()
            .iter()
            .zip(ids)
            .map(|(o, &i)| (o.clone(), m[i].name.clone()))
            .collect(),
        composition: composites
            .into_iter()
            .map(|(f, g, h)| RawComposite {
                first: m[f].name.clone(),
                then: m[g].name.clone(),
                result: m[h].name.clone(),
            })
            .collect(),
    }
}

fn labels_from_raw(
    raw: &RawLabels,
    category: Arc<LabelCategory>,
    domain: &FinPoset,
    loc: &str,
) -> Result<Labeling, Diagnostic> {
    let here = at(loc, "labels");
    for key in raw.objects.keys() {
        element(domain, key, &at(&here, "objects"))?;
    }
    let objects = domain
        .keys()
        .iter()
        .map(|k| {
            let name = raw
                .objects
                .get(k)
                .ok_or_else(|| diag(at(&here, "objects"), format!("no label for {k}")))?;
            category
                .object_index(name)
                .ok_or_else(|| diag(at(&here, "objects"), format!("unknown label object {name}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let Some(relations) = &raw.relations else {
        return Labeling::from_objects(category, domain, objects).map_err(|e| diag(here, e));
    };
    let mut by_cover: Vec<Option<usize>> = vec![None; domain.covers().len()];
    for (i, r) in relations.iter().enumerate() {
        let loc = at(&here, &format!("relations[{i}]"));
        let (a, b) = (element(domain, &r.from, &loc)?, element(domain, &r.to, &loc)?);
        let k = domain
            .cover_index(a, b)
            .ok_or_else(|| diag(&loc, format!("{} < {} is not a covering relation", r.from, r.to)))?;
        let m = category
            .morphism_index(&r.morphism)
            .ok_or_else(|| diag(&loc, format!("unknown label morphism {}", r.morphism)))?;
        if by_cover[k].replace(m).is_some() {
            return Err(diag(&loc, format!("second label for {} < {}", r.from, r.to)));
        }
    }
    let relations = by_cover
        .into_iter()
        .zip(domain.covers())
        .map(|(m, &(a, b))| {
            m.ok_or_else(|| {
                diag(
                    at(&here, "relations"),
                    format!("no label for {} < {}", domain.key(a), domain.key(b)),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Labeling::new(category, domain, objects, relations).map_err(|e| diag(here, e))
}

fn labels_to_raw(l: &Labeling, domain: &FinPoset) -> RawLabels {
    let c = l.category();
    RawLabels {
        objects: (0..domain.len())
            .map(|x| (domain.key(x).to_string(), c.objects()[l.object(x)].clone()))
            .collect(),
        relations: Some(
            domain
                .covers()
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| RawRelationLabel {
                    from: domain.key(a).to_string(),
                    to: domain.key(b).to_string(),
                    morphism: c.morphisms()[l.relation(k)].name.clone(),
                })
                .collect(),
        ),
    }
}

pub fn truss_from_raw(raw: &RawTruss, category: Arc<LabelCategory>, loc: &str) -> Result<TrussTower, Diagnostic> {
    if raw.depth != raw.stages.len() {
        return Err(diag(
            at(loc, "depth"),
            format!("depth {} but {} stages", raw.depth, raw.stages.len()),
        ));
    }
    let mut s = TowerSkeleton::new(Arc::new(poset_from_raw(&raw.base, &at(loc, "base"))?));
    for (k, stage) in raw.stages.iter().enumerate() {
        let here = at(loc, &format!("stages[{k}]"));
        let d = stage_from_raw(stage, s.top().clone(), &here)?;
        s.push(d).map_err(|e| diag(&here, e))?;
    }
    let labels = labels_from_raw(&raw.labels, category, s.top(), loc)?;
    TrussTower::new(s, labels).map_err(|e| diag(if loc.is_empty() { "tower" } else { loc }, e))
}

pub fn truss_to_raw(t: &TrussTower) -> RawTruss {
    RawTruss {
        depth: t.depth(),
        base: poset_to_raw(t.base()),
        stages: t.skeleton().diagrams().iter().map(stage_to_raw).collect(),
        labels: labels_to_raw(t.labels(), t.top()),
    }
}

fn tower_to_raw(t: &TrussTower, schema: &str) -> RawTower {
    let RawTruss {
        depth,
        base,
        stages,
        labels,
    } = truss_to_raw(t);
    RawTower {
        schema: schema.into(),
        depth,
        base,
        stages,
        category: RawCategory::Explicit(category_to_raw(t.category())),
        labels,
        source: None,
        target: None,
    }
}

/// The first place where a claimed boundary differs from the actual one.
fn boundary_difference(claimed: &TrussTower, actual: &TrussTower, loc: &str) -> Option<Diagnostic> {
    if claimed == actual {
        return None;
    }
    if claimed.base() != actual.base() {
        return Some(diag(at(loc, "base"), "base differs from the restriction"));
    }
    if claimed.depth() != actual.depth() {
        return Some(diag(
            at(loc, "depth"),
            format!("depth {} but the restriction has depth {}", claimed.depth(), actual.depth()),
        ));
    }
    for k in 0..claimed.depth() {
        if claimed.diagram(k) != actual.diagram(k) {
            return Some(diag(
                at(loc, &format!("stages[{k}]")),
                format!("stage {k} differs from the restriction of the bordism"),
            ));
        }
    }
    Some(diag(at(loc, "labels"), "labels differ from the restriction of the bordism"))
}

fn tower_file_from_raw(raw: &RawTower, bordism: bool) -> Result<TrussFile, Diagnostic> {
    let category = Arc::new(category_from_raw(&raw.category, "category")?);
    let truss = RawTruss {
        depth: raw.depth,
        base: raw.base.clone(),
        stages: raw.stages.clone(),
        labels: raw.labels.clone(),
    };
    let t = truss_from_raw(&truss, category.clone(), "")?;
    if !bordism {
        if raw.source.is_some() || raw.target.is_some() {
            return Err(diag("source", "only bordism files carry boundaries"));
        }
        return Ok(TrussFile::Tower(t));
    }
    let b = Bordism::new(t).map_err(|e| diag("base", e))?;
    for (field, claimed, actual) in [("source", &raw.source, b.source()), ("target", &raw.target, b.target())] {
        if let Some(claimed) = claimed {
            let claimed = truss_from_raw(claimed, category.clone(), field)?;
            let actual = actual.map_err(|e| diag(field, e))?;
            if let Some(d) = boundary_difference(&claimed, &actual, field) {
                return Err(d);
            }
        }
    }
    Ok(TrussFile::Bordism(b))
}

fn packed_from_raw(raw: &RawPacked) -> Result<PackedTower, Diagnostic> {
    let inner = Arc::new(category_from_raw(&raw.inner, "inner")?);
    let objects = raw
        .trusses
        .iter()
        .enumerate()
        .map(|(i, t)| truss_from_raw(t, inner.clone(), &format!("trusses[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let morphisms = raw
        .bordisms
        .iter()
        .enumerate()
        .map(|(j, b)| {
            let loc = format!("bordisms[{j}]");
            Bordism::new(truss_from_raw(b, inner.clone(), &loc)?).map_err(|e| diag(at(&loc, "base"), e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cat = TrussCategory::generate(inner, objects.clone(), morphisms.clone()).map_err(|e| diag("trusses", e))?;
    if cat.objects() != objects {
        return Err(diag("trusses", "trusses are not distinct, closed and in canonical order"));
    }
    if cat.morphisms() != morphisms {
        return Err(diag("bordisms", "bordisms are not closed under composition or not in canonical order"));
    }
    let cat = Arc::new(cat);
    let tower = truss_from_raw(&raw.tower, cat.view().clone(), "tower")?;
    PackedTower::new(tower, cat).map_err(|e| diag("tower", e))
}

fn packed_to_raw(p: &PackedTower) -> RawPacked {
    let cat = p.category();
    RawPacked {
        schema: PACKED.into(),
        inner: RawCategory::Explicit(category_to_raw(cat.inner())),
        trusses: cat.objects().iter().map(truss_to_raw).collect(),
        bordisms: cat.morphisms().iter().map(|b| truss_to_raw(b.tower())).collect(),
        tower: truss_to_raw(p.tower()),
    }
}
