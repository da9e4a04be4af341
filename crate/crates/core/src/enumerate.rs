//! Exhaustive and random enumeration of small instances.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bundle::{DeltaDiagram, LabelCategory, Labeling};
use crate::error::Result;
use crate::ordinal::{compose_delta, enumerate_delta_maps, DeltaMap, Ordinal};
use crate::poset::{FinPoset, PosetMap};
use crate::tower::{Bordism, TowerSkeleton, TrussTower};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every partial order on `n` labelled elements, keys `"0"`, `"1"`, ….
pub fn labelled_posets(n: usize) -> Vec<FinPoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| a != b).map(move |b| (a, b)))
        .collect();
    let keys: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let rel = |a: usize, b: usize| {
            a == b || pairs.iter().position(|&p| p == (a, b)).is_some_and(|k| mask >> k & 1 == 1)
        };
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(rel(a, b) && rel(b, c)) || rel(a, c)))
        });
        let antisymmetric = (0..n).all(|a| (0..n).all(|b| a == b || !(rel(a, b) && rel(b, a))));
        if transitive && antisymmetric {
            out.push(FinPoset::from_leq(keys.clone(), rel).expect("checked partial order"));
        }
    }
    out
}

/// One representative per isomorphism class, for every size up to `max`.
pub fn posets_up_to_iso(max: usize) -> Vec<FinPoset> {
    let mut out = Vec::new();
    for n in 1..=max {
        let perms = permutations(n);
        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        for p in labelled_posets(n) {
            let canonical = perms
                .iter()
                .map(|s| {
                    (0..n * n)
                        .map(|k| p.le(s[k / n], s[k % n]))
                        .collect::<Vec<bool>>()
                })
                .max()
                .expect("nonempty");
            if seen.insert(canonical) {
                out.push(p);
            }
        }
    }
    out
}

/// Every monotone map between two posets.
pub fn monotone_maps(src: &FinPoset, dst: &FinPoset) -> Vec<PosetMap> {
    let order = src.linear_extension().to_vec();
    let mut values = vec![usize::MAX; src.len()];
    let mut out = Vec::new();
    fn rec(
        pos: usize,
        order: &[usize],
        src: &FinPoset,
        dst: &FinPoset,
        values: &mut Vec<usize>,
        out: &mut Vec<PosetMap>,
    ) {
        if pos == order.len() {
            out.push(PosetMap::new(src, dst, values.clone()).expect("monotone by construction"));
            return;
        }
        let x = order[pos];
        for v in 0..dst.len() {
            let ok = order[..pos]
                .iter()
                .all(|&y| !src.le(y, x) || dst.le(values[y], v));
            if ok {
                values[x] = v;
                rec(pos + 1, order, src, dst, values, out);
            }
        }
        values[x] = usize::MAX;
    }
    rec(0, &order, src, dst, &mut values, &mut out);
    out
}

/// A uniformly chosen value at each step, restarting on dead ends and
/// falling back to a constant map.
pub fn random_monotone_map<R: Rng>(src: &FinPoset, dst: &FinPoset, rng: &mut R) -> PosetMap {
    let order = src.linear_extension();
    'attempt: for _ in 0..64 {
        let mut values = vec![usize::MAX; src.len()];
        for (pos, &x) in order.iter().enumerate() {
            let lower: Vec<usize> = order[..pos].iter().copied().filter(|&y| src.le(y, x)).collect();
            let candidates: Vec<usize> = (0..dst.len())
                .filter(|&v| lower.iter().all(|&y| dst.le(values[y], v)))
                .collect();
            match candidates.choose(rng) {
                Some(&v) => values[x] = v,
                None => continue 'attempt,
            }
        }
        return PosetMap::new(src, dst, values).expect("monotone by construction");
    }
    PosetMap::constant(src, rng.gen_range(0..dst.len()))
}

struct DiagramSearch<'a> {
    base: &'a Arc<FinPoset>,
    order: Vec<usize>,
    max_ord: usize,
    ords: Vec<Ordinal>,
    arrows: Vec<Option<DeltaMap>>,
    between: Vec<Option<DeltaMap>>,
}

impl<'a> DiagramSearch<'a> {
    fn new(base: &'a Arc<FinPoset>, max_ord: usize) -> Self {
        let n = base.len();
        DiagramSearch {
            base,
            order: base.linear_extension().to_vec(),
            max_ord,
            ords: vec![Ordinal(0); n],
            arrows: vec![None; base.covers().len()],
            between: vec![None; n * n],
        }
    }

    /// Fills `between` for pairs ending at `b`; false on an incoherent pair.
    fn close(&mut self, b: usize) -> bool {
        let n = self.base.len();
        self.between[b * n + b] = Some(DeltaMap::identity(self.ords[b]));
        for a in 0..n {
            if !self.base.lt(a, b) {
                continue;
            }
            let mut found: Option<DeltaMap> = None;
            for &c in self.base.lower_covers(b) {
                if !self.base.le(a, c) {
                    continue;
                }
                let k = self.base.cover_index(c, b).expect("cover");
                let f = compose_delta(
                    self.between[a * n + c].as_ref().expect("earlier"),
                    self.arrows[k].as_ref().expect("chosen"),
                )
                .expect("typed");
                match &found {
                    Some(g) if *g != f => return false,
                    Some(_) => {}
                    None => found = Some(f),
                }
            }
            self.between[a * n + b] = found;
        }
        true
    }

    fn finish(&self) -> DeltaDiagram {
        let arrows = self.arrows.iter().map(|a| a.clone().expect("chosen")).collect();
        DeltaDiagram::new(self.base.clone(), self.ords.clone(), arrows).expect("coherent by construction")
    }

    fn all(&mut self, pos: usize, f: &mut dyn FnMut(DeltaDiagram)) {
        if pos == self.order.len() {
            f(self.finish());
            return;
        }
        let b = self.order[pos];
        let covers: Vec<usize> = self
            .base
            .lower_covers(b)
            .iter()
            .map(|&c| self.base.cover_index(c, b).expect("cover"))
            .collect();
        for k in 0..=self.max_ord {
            self.ords[b] = Ordinal(k);
            self.choose_arrows(pos, b, &covers, 0, f);
        }
    }

    fn choose_arrows(&mut self, pos: usize, b: usize, covers: &[usize], i: usize, f: &mut dyn FnMut(DeltaDiagram)) {
        if i == covers.len() {
            if self.close(b) {
                self.all(pos + 1, f);
            }
            return;
        }
        let (c, _) = self.base.covers()[covers[i]];
        for m in enumerate_delta_maps(self.ords[c], self.ords[b]) {
            self.arrows[covers[i]] = Some(m);
            self.choose_arrows(pos, b, covers, i + 1, f);
        }
        self.arrows[covers[i]] = None;
    }

    fn random<R: Rng>(&mut self, rng: &mut R) -> DeltaDiagram {
        for pos in 0..self.order.len() {
            let b = self.order[pos];
            let covers: Vec<usize> = self
                .base
                .lower_covers(b)
                .iter()
                .map(|&c| self.base.cover_index(c, b).expect("cover"))
                .collect();
            let mut placed = false;
            for _ in 0..32 {
                self.ords[b] = Ordinal(rng.gen_range(0..=self.max_ord));
                for &k in &covers {
                    let (c, _) = self.base.covers()[k];
                    let maps = enumerate_delta_maps(self.ords[c], self.ords[b]);
                    self.arrows[k] = maps.choose(rng).cloned();
                }
                if self.close(b) {
                    placed = true;
                    break;
                }
            }
            if !placed {
                // maps into [0] are unique, so [0] always closes
                self.ords[b] = Ordinal(0);
                for &k in &covers {
                    let (c, _) = self.base.covers()[k];
                    self.arrows[k] = Some(DeltaMap::terminal(self.ords[c]));
                }
                assert!(self.close(b));
            }
        }
        self.finish()
    }
}

/// Calls `f` on every diagram over `base` with ordinals at most `max_ord`.
pub fn for_each_diagram(base: &Arc<FinPoset>, max_ord: usize, mut f: impl FnMut(DeltaDiagram)) {
    DiagramSearch::new(base, max_ord).all(0, &mut f);
}

pub fn diagrams(base: &Arc<FinPoset>, max_ord: usize) -> Vec<DeltaDiagram> {
    let mut out = Vec::new();
    for_each_diagram(base, max_ord, |d| out.push(d));
    out
}

/// A random diagram over `base` with ordinals at most `max_ord`.
pub fn random_diagram<R: Rng>(base: &Arc<FinPoset>, max_ord: usize, rng: &mut R) -> DeltaDiagram {
    DiagramSearch::new(base, max_ord).random(rng)
}

/// Calls `f` on every tower skeleton of the given depth over `base`.
pub fn for_each_skeleton(base: &Arc<FinPoset>, depth: usize, max_ord: usize, mut f: impl FnMut(&TowerSkeleton)) {
    fn rec(s: &mut TowerSkeleton, left: usize, max_ord: usize, f: &mut dyn FnMut(&TowerSkeleton)) {
        if left == 0 {
            f(s);
            return;
        }
        let top = s.top().clone();
        for_each_diagram(&top, max_ord, |d| {
            s.push(d).expect("over the top poset");
            rec(s, left - 1, max_ord, f);
            s.pop();
        });
    }
    let mut s = TowerSkeleton::new(base.clone());
    rec(&mut s, depth, max_ord, &mut f);
}

pub fn random_skeleton<R: Rng>(base: &Arc<FinPoset>, depth: usize, max_ord: usize, rng: &mut R) -> TowerSkeleton {
    let mut s = TowerSkeleton::new(base.clone());
    for _ in 0..depth {
        let d = random_diagram(s.top(), max_ord, rng);
        s.push(d).expect("over the top poset");
    }
    s
}

/// All labelings of `domain` in a thin category.
pub fn thin_labelings(domain: &FinPoset, category: &Arc<LabelCategory>, target: &FinPoset) -> Result<Vec<Labeling>> {
    monotone_maps(domain, target)
        .into_iter()
        .map(|m| Labeling::from_objects(category.clone(), domain, m.values().to_vec()))
        .collect()
}

/// A random labeling of `domain` in the poset `target` viewed as a category.
pub fn random_thin_labeling<R: Rng>(
    domain: &FinPoset,
    category: &Arc<LabelCategory>,
    target: &FinPoset,
    rng: &mut R,
) -> Result<Labeling> {
    let m = random_monotone_map(domain, target, rng);
    Labeling::from_objects(category.clone(), domain, m.values().to_vec())
}

/// Every labelled bordism of depth 1 whose ordinals are at most `max_ord`,
/// labelled in the poset `target`.
pub fn depth1_bordisms(max_ord: usize, category: &Arc<LabelCategory>, target: &FinPoset) -> Result<Vec<Bordism>> {
    let arrow = Arc::new(FinPoset::arrow());
    let mut out = Vec::new();
    let mut err = None;
    for_each_skeleton(&arrow, 1, max_ord, |s| {
        match thin_labelings(s.top(), category, target) {
            Ok(ls) => {
                for l in ls {
                    match TrussTower::new(s.clone(), l).and_then(Bordism::new) {
                        Ok(b) => out.push(b),
                        Err(e) => err = Some(e),
                    }
                }
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}
