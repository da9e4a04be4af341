//! Exhaustive checking suites over small instances.
//!
//! Each suite recomputes a construction by brute force, or checks a law on
//! every instance of a bounded family, and reports the first counterexample.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bundle::{classify, pullback_bundle, total_space, LabelCategory};
use crate::enumerate::{
    depth1_bordisms, for_each_diagram, for_each_skeleton, monotone_maps, posets_up_to_iso,
    random_skeleton, random_thin_labeling, thin_labelings,
};
use crate::error::{Error, Result};
use crate::etcat::{factorization_poset, hom_et, EtMorphism, EtObject, Kind};
use crate::mesh::{duality_holds, realize_bundle, reg_extract};
use crate::ordinal::{compose_delta, enumerate_delta_maps, DeltaMap, Ordinal};
use crate::poset::{FinPoset, PosetMap};
use crate::tower::{
    compose_bordisms, compose_bordisms_audited, identity_bordism, pack, unpack, Bordism, TrussTower,
};

pub const SUITES: [&str; 6] = [
    "homsets",
    "factorization",
    "roundtrip-bundle",
    "roundtrip-mesh",
    "pack",
    "bordism-assoc",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_ordinal: usize,
    pub seed: u64,
    /// Random instances added beyond the exhaustive range.
    pub samples: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_ordinal: 2,
            seed: 0,
            samples: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub suite: String,
    pub passed: bool,
    pub checked: u64,
    pub stats: BTreeMap<String, u64>,
    pub counterexample: Option<String>,
}

impl OracleReport {
    fn new(suite: &str) -> Self {
        OracleReport {
            suite: suite.to_string(),
            passed: true,
            checked: 0,
            stats: BTreeMap::new(),
            counterexample: None,
        }
    }

    fn bump(&mut self, stat: &str) {
        *self.stats.entry(stat.to_string()).or_default() += 1;
    }

    fn fail(&mut self, what: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(what);
        }
    }
}

pub fn run_suite(name: &str, cfg: &OracleConfig) -> Result<OracleReport> {
    match name {
        "homsets" => Ok(homsets(cfg.max_ordinal)),
        "factorization" => factorization(cfg.max_ordinal),
        "roundtrip-bundle" => roundtrip_bundle(cfg.max_ordinal),
        "roundtrip-mesh" => roundtrip_mesh(cfg.max_ordinal),
        "pack" => pack_roundtrip(cfg),
        "bordism-assoc" => bordism_assoc(cfg),
        _ => Err(Error::Domain(format!(
            "unknown suite {name}; known suites: {}",
            SUITES.join(", ")
        ))),
    }
}

fn objects_upto(max: usize) -> Vec<EtObject> {
    (0..=max).flat_map(|n| EtObject::fiber(Ordinal(n))).collect()
}

/// Every function `[n] → [m]`, monotone or not.
fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..=n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn et_condition(x: &EtObject, y: &EtObject, f: &[usize]) -> bool {
    let (i, j) = (x.index(), y.index());
    match (x.kind(), y.kind()) {
        (Kind::Regular, Kind::Regular) => f[i] == j,
        (Kind::Singular, Kind::Singular) => f[i] <= j && j < f[i + 1],
        (Kind::Singular, Kind::Regular) => f[i] <= j && j <= f[i + 1],
        (Kind::Regular, Kind::Singular) => false,
    }
}

/// Hom-sets of ET against filtering all functions.
pub fn homsets(max: usize) -> OracleReport {
    let mut r = OracleReport::new("homsets");
    let objects = objects_upto(max);
    for x in &objects {
        for y in &objects {
            let (n, m) = (x.ambient().0, y.ambient().0);
            let brute: Vec<Vec<usize>> = all_functions(n, m)
                .into_iter()
                .filter(|f| f.windows(2).all(|w| w[0] <= w[1]) && et_condition(x, y, f))
                .collect();
            let fast: Vec<Vec<usize>> = hom_et(x, y)
                .iter()
                .map(|h| h.underlying().values().to_vec())
                .collect();
            r.checked += 1;
            *r.stats.entry("morphisms".into()).or_default() += fast.len() as u64;
            if fast.is_empty() {
                r.bump("empty_pairs");
            }
            if brute != fast {
                r.fail(format!("ET({x}, {y}): enumerated {} maps, expected {}", fast.len(), brute.len()));
            }
        }
    }
    r
}

/// Factorization posets over all composable pairs of Δ-maps.
pub fn factorization(max: usize) -> Result<OracleReport> {
    let mut r = OracleReport::new("factorization");
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                for alpha in enumerate_delta_maps(Ordinal(a), Ordinal(b)) {
                    for beta in enumerate_delta_maps(Ordinal(b), Ordinal(c)) {
                        let gamma = compose_delta(&alpha, &beta)?;
                        for x in EtObject::fiber(Ordinal(a)) {
                            for z in EtObject::fiber(Ordinal(c)) {
                                if !et_condition(&x, &z, gamma.values()) {
                                    continue;
                                }
                                let h = EtMorphism::new(x, z, gamma.clone())?;
                                let fp = factorization_poset(&x, &z, &h, &alpha, &beta)?;
                                r.checked += 1;
                                let here = format!("{x} → {z} over {alpha} then {beta}");
                                if fp.is_empty() {
                                    r.fail(format!("{here}: no factorization"));
                                    continue;
                                }
                                if !fp.is_connected() {
                                    r.fail(format!("{here}: disconnected"));
                                }
                                if fp.minimum().is_some() {
                                    r.bump("with_minimum");
                                } else if fp.maximum().is_some() {
                                    r.bump("with_maximum_only");
                                } else {
                                    r.bump("without_cone_point");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

/// The total poset of a pullback, computed by restricting the original
/// total poset along the base map.
pub fn restricted_total_leq(d: &crate::bundle::DeltaDiagram, q: &FinPoset, f: &[usize]) -> Result<Vec<bool>> {
    let t = total_space(d)?;
    let elems: Vec<(usize, EtObject)> = (0..q.len())
        .flat_map(|b| EtObject::fiber(d.ord(f[b])).map(move |o| (b, o)))
        .collect();
    let idx: Vec<usize> = elems
        .iter()
        .map(|(b, o)| t.index_of(f[*b], o).expect("fiber element"))
        .collect();
    let n = elems.len();
    Ok((0..n * n)
        .map(|k| {
            let (x, y) = (k / n, k % n);
            q.le(elems[x].0, elems[y].0) && t.carrier().le(idx[x], idx[y])
        })
        .collect())
}

/// classify ∘ total_space, antisymmetry, and pullback against restriction.
pub fn roundtrip_bundle(max: usize) -> Result<OracleReport> {
    let mut r = OracleReport::new("roundtrip-bundle");
    let posets: Vec<Arc<FinPoset>> = posets_up_to_iso(3).into_iter().map(Arc::new).collect();
    for base in &posets {
        let mut failure: Option<Error> = None;
        for_each_diagram(base, max, |d| {
            if failure.is_some() {
                return;
            }
            let step = || -> Result<Option<String>> {
                let t = total_space(&d)?;
                if t.carrier().check_partial_order().is_err() {
                    return Ok(Some(format!("total space of {d:?} is not a poset")));
                }
                if classify(base.clone(), &t)? != d {
                    return Ok(Some(format!("classify does not recover {d:?}")));
                }
                for q in &posets {
                    for f in monotone_maps(q, base) {
                        let p = pullback_bundle(&d, q.clone(), &f)?;
                        let tp = total_space(&p)?;
                        let n = tp.len();
                        let expected = restricted_total_leq(&d, q, f.values())?;
                        let actual: Vec<bool> = (0..n * n).map(|k| tp.carrier().le(k / n, k % n)).collect();
                        if actual != expected {
                            return Ok(Some(format!("pullback of {d:?} along {:?} differs from restriction", f.values())));
                        }
                    }
                }
                Ok(None)
            };
            match step() {
                Ok(Some(msg)) => r.fail(msg),
                Ok(None) => {}
                Err(e) => failure = Some(e),
            }
            r.checked += 1;
        });
        if let Some(e) = failure {
            return Err(e);
        }
    }
    Ok(r)
}

/// reg_extract ∘ realize_bundle and the duality of extracted diagrams.
pub fn roundtrip_mesh(max: usize) -> Result<OracleReport> {
    let mut r = OracleReport::new("roundtrip-mesh");
    for p in posets_up_to_iso(3) {
        let base = Arc::new(p);
        let mut failure: Option<Error> = None;
        for_each_diagram(&base, max, |d| {
            let step = || -> Result<Option<String>> {
                let m = realize_bundle(&d)?;
                if reg_extract(&m)? != d {
                    return Ok(Some(format!("extraction does not recover {d:?}")));
                }
                if !duality_holds(&m)? {
                    return Ok(Some(format!("duality fails for {d:?}")));
                }
                Ok(None)
            };
            match step() {
                Ok(Some(msg)) => r.fail(msg),
                Ok(None) => {}
                Err(e) => failure = failure.take().or(Some(e)),
            }
            r.checked += 1;
        });
        if let Some(e) = failure {
            return Err(e);
        }
    }
    Ok(r)
}

fn label_posets() -> Vec<(FinPoset, Arc<LabelCategory>)> {
    posets_up_to_iso(3)
        .into_iter()
        .map(|p| {
            let c = Arc::new(LabelCategory::from_poset(&p));
            (p, c)
        })
        .collect()
}

fn check_pack(t: &TrussTower, r: &mut OracleReport) -> Result<()> {
    let p = pack(t)?;
    let back = unpack(&p)?;
    r.checked += 1;
    *r.stats.entry(format!("depth_{}", t.depth())).or_default() += 1;
    if back != *t {
        r.fail(format!("unpack(pack(t)) differs for {t}"));
    } else if pack(&back)? != p {
        r.fail(format!("pack(unpack(p)) differs for {t}"));
    }
    Ok(())
}

/// pack and unpack on every labelled tower of depth 1, every labelled tower
/// of depth 2 with ordinals at most 1, and sampled towers of depth 2 and 3.
pub fn pack_roundtrip(cfg: &OracleConfig) -> Result<OracleReport> {
    let mut r = OracleReport::new("pack");
    let point = Arc::new(FinPoset::point());
    let labels = label_posets();
    for (depth, max) in [(1, cfg.max_ordinal), (2, cfg.max_ordinal.min(1))] {
        let mut skeletons = Vec::new();
        for_each_skeleton(&point, depth, max, |s| skeletons.push(s.clone()));
        for s in &skeletons {
            for (p, c) in &labels {
                for l in thin_labelings(s.top(), c, p)? {
                    check_pack(&TrussTower::new(s.clone(), l)?, &mut r)?;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for k in 0..cfg.samples {
        let depth = 2 + k % 2;
        let s = random_skeleton(&point, depth, cfg.max_ordinal, &mut rng);
        let (p, c) = &labels[k % labels.len()];
        let l = random_thin_labeling(s.top(), c, p, &mut rng)?;
        check_pack(&TrussTower::new(s, l)?, &mut r)?;
        r.bump("sampled");
    }
    Ok(r)
}

fn check_composite(b1: &Bordism, b2: &Bordism, r: &mut OracleReport) -> Result<Bordism> {
    let (b, audit) = compose_bordisms_audited(b1, b2)?;
    *r.stats.entry("crossing_relations".into()).or_default() += audit.crossing_relations as u64;
    if let Some(d) = audit.disagreements.first() {
        r.fail(format!("factorization choices disagree for {} ; {}: {d}", b1.tower(), b2.tower()));
    }
    if b.source()? != b1.source()? || b.target()? != b2.target()? {
        r.fail(format!("boundary of composite differs for {} ; {}", b1.tower(), b2.tower()));
    }
    Ok(b)
}

/// Composable pairs of `all`, keyed by the first index.
fn composable(all: &[Bordism]) -> Result<Vec<Vec<usize>>> {
    let mut by_source: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut targets = Vec::with_capacity(all.len());
    for (i, b) in all.iter().enumerate() {
        by_source.entry(b.source()?.signature()).or_default().push(i);
        targets.push(b.target()?.signature());
    }
    Ok(targets
        .iter()
        .map(|t| by_source.get(t).cloned().unwrap_or_default())
        .collect())
}

/// Tabulates every composite of a family closed under composition, then
/// checks units and associativity by lookup.
fn check_family(all: &[Bordism], next: &[Vec<usize>], r: &mut OracleReport) -> Result<()> {
    let index: HashMap<Vec<usize>, usize> = all
        .iter()
        .enumerate()
        .map(|(i, b)| (b.tower().signature(), i))
        .collect();
    let mut table: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, js) in next.iter().enumerate() {
        for &j in js {
            let b = check_composite(&all[i], &all[j], r)?;
            r.bump("pairs");
            match index.get(&b.tower().signature()) {
                Some(&k) => {
                    table.insert((i, j), k);
                }
                None => {
                    r.fail(format!("composite of {} ; {} leaves the family", all[i].tower(), all[j].tower()));
                    return Ok(());
                }
            }
        }
    }
    for (i, b) in all.iter().enumerate() {
        let id_s = index.get(&identity_bordism(&b.source()?)?.tower().signature());
        let id_t = index.get(&identity_bordism(&b.target()?)?.tower().signature());
        let (Some(&s), Some(&t)) = (id_s, id_t) else {
            r.fail(format!("identity on an end of {} leaves the family", b.tower()));
            return Ok(());
        };
        if table.get(&(s, i)) != Some(&i) || table.get(&(i, t)) != Some(&i) {
            r.fail(format!("identity law fails for {}", b.tower()));
        }
        r.bump("unit_checks");
    }
    for (&(i, j), &ij) in &table {
        for &k in &next[j] {
            let left = table[&(ij, k)];
            let right = table[&(i, table[&(j, k)])];
            r.checked += 1;
            if left != right {
                r.fail(format!(
                    "associativity fails for {} ; {} ; {}",
                    all[i].tower(),
                    all[j].tower(),
                    all[k].tower()
                ));
            }
        }
    }
    Ok(())
}

fn check_triple(b1: &Bordism, b2: &Bordism, b3: &Bordism, r: &mut OracleReport) -> Result<()> {
    let b12 = check_composite(b1, b2, r)?;
    let b23 = check_composite(b2, b3, r)?;
    let left = check_composite(&b12, b3, r)?;
    let right = check_composite(b1, &b23, r)?;
    r.checked += 1;
    if left != right {
        r.fail(format!("associativity fails for {} ; {} ; {}", b1.tower(), b2.tower(), b3.tower()));
    }
    Ok(())
}

/// Restricts a tower over the chain `0 < 1 < 2 < 3` to its three steps and
/// checks composites against the restrictions to longer steps.
fn check_chain_tower(t: &TrussTower, r: &mut OracleReport) -> Result<()> {
    let arrow = Arc::new(FinPoset::arrow());
    let step = |a: usize, b: usize| -> Result<Bordism> {
        let f = PosetMap::new(&arrow, t.base(), vec![a, b])?;
        Bordism::new(t.pullback(arrow.clone(), &f)?)
    };
    let (b01, b12, b23) = (step(0, 1)?, step(1, 2)?, step(2, 3)?);
    check_triple(&b01, &b12, &b23, r)?;
    if compose_bordisms(&b01, &b12)? != step(0, 2)? || compose_bordisms(&b01, &compose_bordisms(&b12, &b23)?)? != step(0, 3)? {
        r.fail(format!("composite differs from restriction of {t}"));
    }
    let id = identity_bordism(&b01.target()?)?;
    if compose_bordisms(&b01, &id)? != b01 || compose_bordisms(&id, &b12)? != b12 {
        r.fail(format!("identity law fails inside {t}"));
    }
    r.bump("unit_checks");
    Ok(())
}

/// Choice-independence, boundaries, units and associativity of bordism
/// composition. Depth-1 bordisms labelled in each poset with at most three
/// elements are tabulated exhaustively at the largest ordinal bound whose
/// composable pairs fit the budget; triples at `max_ordinal` beyond the budget
/// are sampled, as are bordisms of depth 2 and 3, drawn as consecutive steps
/// of random towers over a four-element chain.
pub fn bordism_assoc(cfg: &OracleConfig) -> Result<OracleReport> {
    let mut r = OracleReport::new("bordism-assoc");
    let pair_budget = cfg.samples.max(1) * 1024;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for (li, (p, c)) in label_posets().into_iter().enumerate() {
        let mut exhaustive = None;
        for m in 0..=cfg.max_ordinal {
            let all = depth1_bordisms(m, &c, &p)?;
            let next = composable(&all)?;
            let pairs: usize = next.iter().map(Vec::len).sum();
            if pairs > pair_budget && m > 0 {
                break;
            }
            exhaustive = Some((m, all, next));
        }
        let Some((m, all, next)) = exhaustive else { continue };
        check_family(&all, &next, &mut r)?;
        r.stats.insert(format!("exhaustive_max_ordinal_labels_{li}"), m as u64);
        if m < cfg.max_ordinal {
            let all = depth1_bordisms(cfg.max_ordinal, &c, &p)?;
            let next = composable(&all)?;
            for _ in 0..cfg.samples {
                let i = rng.gen_range(0..all.len());
                let Some(&j) = next[i].choose(&mut rng) else { continue };
                let Some(&k) = next[j].choose(&mut rng) else { continue };
                check_triple(&all[i], &all[j], &all[k], &mut r)?;
                r.bump("sampled_triples");
            }
        }
    }
    let chain = Arc::new(FinPoset::chain(3));
    let labels = label_posets();
    for k in 0..cfg.samples {
        let depth = 1 + k % 3;
        let s = random_skeleton(&chain, depth, cfg.max_ordinal, &mut rng);
        let (p, c) = &labels[k % labels.len()];
        let l = random_thin_labeling(s.top(), c, p, &mut rng)?;
        check_chain_tower(&TrussTower::new(s, l)?, &mut r)?;
        r.bump(&format!("chain_towers_depth_{depth}"));
    }
    Ok(r)
}

/// The cone-point counterexample: a factorization poset with neither a
/// minimum nor a maximum, over `(0,2) : [1] → [2]` followed by `[2] → [0]`.
pub fn cone_point_counterexample() -> Result<(EtObject, EtObject, DeltaMap, DeltaMap)> {
    let alpha = DeltaMap::new(Ordinal(1), Ordinal(2), vec![0, 2])?;
    let beta = DeltaMap::terminal(Ordinal(2));
    Ok((EtObject::singular(0, 1)?, EtObject::regular(0, 0)?, alpha, beta))
}
