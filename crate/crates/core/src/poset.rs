//! Finite posets with string-keyed elements.
//!
//! The order is stored as a dense `≤` matrix. Covering relations are computed
//! once at construction and kept in lexicographic order; functor data on a
//! poset (Δ-maps, label morphisms) is indexed by position in that list.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct FinPoset {
    keys: Vec<String>,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
    cover_index: HashMap<(usize, usize), usize>,
    key_index: HashMap<String, usize>,
    lower_covers: Vec<Vec<usize>>,
    linear: Vec<usize>,
}

impl PartialEq for FinPoset {
    fn eq(&self, other: &Self) -> bool {
        self.keys == other.keys && self.leq == other.leq
    }
}

impl Eq for FinPoset {}

impl fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers
            .iter()
            .map(|&(a, b)| format!("{}<{}", self.keys[a], self.keys[b]))
            .collect();
        f.debug_struct("FinPoset")
            .field("elements", &self.keys)
            .field("covers", &covers)
            .finish()
    }
}

impl FinPoset {
    /// Builds a poset from a `≤` predicate, checking reflexivity,
    /// antisymmetry and transitivity.
    pub fn from_leq<F>(keys: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let poset = Self::from_leq_unchecked(keys, leq)?;
        poset.check_partial_order()?;
        Ok(poset)
    }

    /// Builds a poset from a `≤` predicate, checking reflexivity and
    /// antisymmetry only. Callers guarantee transitivity.
    pub(crate) fn from_leq_unchecked<F>(keys: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = keys.len();
        let mut matrix = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                matrix[a * n + b] = leq(a, b);
            }
        }
        let mut key_index = HashMap::with_capacity(n);
        for (i, k) in keys.iter().enumerate() {
            if key_index.insert(k.clone(), i).is_some() {
                return Err(Error::Domain(format!("duplicate element key {k:?}")));
            }
        }
        for a in 0..n {
            if !matrix[a * n + a] {
                return Err(Error::Domain(format!("relation not reflexive at {}", keys[a])));
            }
            for b in (a + 1)..n {
                if matrix[a * n + b] && matrix[b * n + a] {
                    return Err(Error::Domain(format!(
                        "relation not antisymmetric: {} and {}",
                        keys[a], keys[b]
                    )));
                }
            }
        }
        Ok(Self::finish(keys, matrix, key_index))
    }

    fn finish(keys: Vec<String>, leq: Vec<bool>, key_index: HashMap<String, usize>) -> Self {
        let n = keys.len();
        let lt = |a: usize, b: usize| a != b && leq[a * n + b];
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    covers.push((a, b));
                }
            }
        }
        let cover_index = covers.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut lower_covers = vec![Vec::new(); n];
        for &(a, b) in &covers {
            lower_covers[b].push(a);
        }
        // Sorting by the number of strictly smaller elements gives a linear extension.
        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&b| ((0..n).filter(|&a| lt(a, b)).count(), b));
        FinPoset {
            keys,
            leq,
            covers,
            cover_index,
            key_index,
            lower_covers,
            linear,
        }
    }

    /// Reflexive-transitive closure of the given relations.
    pub fn from_relations(keys: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = keys.len();
        let mut m = vec![false; n * n];
        for i in 0..n {
            m[i * n + i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::Domain(format!("relation ({a},{b}) out of range")));
            }
            m[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i * n + k] {
                    for j in 0..n {
                        if m[k * n + j] {
                            m[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_leq_unchecked(keys, |a, b| m[a * n + b])
    }

    pub fn from_key_relations(keys: &[&str], relations: &[(&str, &str)]) -> Result<Self> {
        let keys: Vec<String> = keys.iter().map(|s| s.to_string()).collect();
        let pos = |k: &str| {
            keys.iter()
                .position(|x| x == k)
                .ok_or_else(|| Error::Domain(format!("unknown element {k:?}")))
        };
        let rels = relations
            .iter()
            .map(|(a, b)| Ok((pos(a)?, pos(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_relations(keys, &rels)
    }

    /// The one-element poset, keyed `pt`.
    pub fn point() -> Self {
        Self::from_relations(vec!["pt".into()], &[]).expect("point")
    }

    /// The chain `0 < 1 < … < n`.
    pub fn chain(n: usize) -> Self {
        let keys = (0..=n).map(|i| i.to_string()).collect();
        Self::from_leq_unchecked(keys, |a, b| a <= b).expect("chain")
    }

    /// The arrow `0 < 1`.
    pub fn arrow() -> Self {
        Self::chain(1)
    }

    pub fn discrete(n: usize) -> Self {
        let keys = (0..n).map(|i| i.to_string()).collect();
        Self::from_leq_unchecked(keys, |a, b| a == b).expect("discrete")
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn key(&self, i: usize) -> &str {
        &self.keys[i]
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.key_index.get(key).copied()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.keys.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_index(&self, a: usize, b: usize) -> Option<usize> {
        self.cover_index.get(&(a, b)).copied()
    }

    /// Elements covered by `b`.
    pub fn lower_covers(&self, b: usize) -> &[usize] {
        &self.lower_covers[b]
    }

    /// Every element appears after all elements below it.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    /// Number of related pairs `a < b`.
    pub fn relation_count(&self) -> usize {
        self.leq.iter().filter(|&&x| x).count() - self.len()
    }

    pub fn check_partial_order(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if !self.le(a, a) {
                return Err(Error::Domain(format!("not reflexive at {}", self.keys[a])));
            }
            for b in 0..n {
                if a != b && self.le(a, b) && self.le(b, a) {
                    return Err(Error::Domain(format!(
                        "not antisymmetric: {} and {}",
                        self.keys[a], self.keys[b]
                    )));
                }
                if !self.le(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.le(b, c) && !self.le(a, c) {
                        return Err(Error::Domain(format!(
                            "not transitive: {} ≤ {} ≤ {}",
                            self.keys[a], self.keys[b], self.keys[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Full subposet on `elements` (in the given order) together with the
    /// inclusion map.
    pub fn restrict(&self, elements: &[usize]) -> Result<(FinPoset, Vec<usize>)> {
        let keys = elements.iter().map(|&i| self.keys[i].clone()).collect();
        let sub = FinPoset::from_leq_unchecked(keys, |a, b| self.le(elements[a], elements[b]))?;
        Ok((sub, elements.to_vec()))
    }

    /// Least element of `subset` under this order, if any.
    pub fn minimum_of(&self, subset: &[usize]) -> Option<usize> {
        subset
            .iter()
            .copied()
            .find(|&m| subset.iter().all(|&y| self.le(m, y)))
    }

    pub fn maximum_of(&self, subset: &[usize]) -> Option<usize> {
        subset
            .iter()
            .copied()
            .find(|&m| subset.iter().all(|&y| self.le(y, m)))
    }

    /// Connectedness of the comparability graph restricted to `subset`.
    /// The empty subset counts as disconnected.
    pub fn is_connected(&self, subset: &[usize]) -> bool {
        if subset.is_empty() {
            return false;
        }
        let mut seen = vec![false; subset.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..subset.len() {
                if !seen[j] && (self.le(subset[i], subset[j]) || self.le(subset[j], subset[i])) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A monotone map between finite posets, stored by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetMap {
    values: Vec<usize>,
}

impl PosetMap {
    pub fn new(src: &FinPoset, dst: &FinPoset, values: Vec<usize>) -> Result<Self> {
        if values.len() != src.len() {
            return Err(Error::Domain(format!(
                "poset map needs {} values, got {}",
                src.len(),
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= dst.len()) {
            return Err(Error::Domain(format!("poset map value {v} out of range")));
        }
        for &(a, b) in src.covers() {
            if !dst.le(values[a], values[b]) {
                return Err(Error::Domain(format!(
                    "map is not monotone: {} ≤ {} but {} ≰ {}",
                    src.key(a),
                    src.key(b),
                    dst.key(values[a]),
                    dst.key(values[b])
                )));
            }
        }
        Ok(PosetMap { values })
    }

    pub fn identity(p: &FinPoset) -> Self {
        PosetMap {
            values: (0..p.len()).collect(),
        }
    }

    pub fn constant(src: &FinPoset, value: usize) -> Self {
        PosetMap {
            values: vec![value; src.len()],
        }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Apply `self` first, then `g`.
    pub fn then(&self, g: &PosetMap) -> PosetMap {
        PosetMap {
            values: self.values.iter().map(|&v| g.values[v]).collect(),
        }
    }
}
