//! Finite ordinals, the simplex category Δ and the category ∇ of strict
//! intervals.
//!
//! Maps are stored as explicit value sequences. The duality Δ^op ≅ ∇ sends
//! `f : [n] → [m]` to the interval map `[m+1] → [n+1]` given by
//! `j ↦ #{ i : f(i) < j }`; its inverse sends `g` to `i ↦ #{ j ∈ 1..=m : g(j) ≤ i }`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ordinal `[n] = {0, …, n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ordinal(pub usize);

impl Ordinal {
    pub fn new(n: usize) -> Self {
        Ordinal(n)
    }

    pub fn n(self) -> usize {
        self.0
    }

    /// Number of elements, `n + 1`.
    pub fn len(self) -> usize {
        self.0 + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn elements(self) -> std::ops::RangeInclusive<usize> {
        0..=self.0
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

fn check_monotone(values: &[usize], dst: Ordinal) -> Result<()> {
    if let Some(v) = values.iter().find(|&&v| v > dst.0) {
        return Err(Error::Domain(format!("value {v} outside target {dst}")));
    }
    if let Some(w) = values.windows(2).find(|w| w[0] > w[1]) {
        return Err(Error::Domain(format!(
            "values not weakly increasing: {} > {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// An order-preserving map `[n] → [m]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct DeltaMap {
    src: Ordinal,
    dst: Ordinal,
    values: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    src: usize,
    dst: usize,
    values: Vec<usize>,
}

impl TryFrom<RawMap> for DeltaMap {
    type Error = Error;
    fn try_from(raw: RawMap) -> Result<Self> {
        DeltaMap::new(Ordinal(raw.src), Ordinal(raw.dst), raw.values)
    }
}

impl From<DeltaMap> for RawMap {
    fn from(f: DeltaMap) -> Self {
        RawMap {
            src: f.src.0,
            dst: f.dst.0,
            values: f.values,
        }
    }
}

impl DeltaMap {
    pub fn new(src: Ordinal, dst: Ordinal, values: Vec<usize>) -> Result<Self> {
        if values.len() != src.len() {
            return Err(Error::Domain(format!(
                "map from {src} needs {} values, got {}",
                src.len(),
                values.len()
            )));
        }
        check_monotone(&values, dst)?;
        Ok(DeltaMap { src, dst, values })
    }

    /// Builds a map whose target is the smallest ordinal containing every value.
    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        let src = values
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Domain("empty value list".into()))?;
        let dst = values.iter().copied().max().unwrap_or(0);
        DeltaMap::new(Ordinal(src), Ordinal(dst), values)
    }

    pub fn identity(n: Ordinal) -> Self {
        DeltaMap {
            src: n,
            dst: n,
            values: n.elements().collect(),
        }
    }

    /// The unique map into `[0]`.
    pub fn terminal(n: Ordinal) -> Self {
        DeltaMap {
            src: n,
            dst: Ordinal(0),
            values: vec![0; n.len()],
        }
    }

    pub fn src(&self) -> Ordinal {
        self.src
    }

    pub fn dst(&self) -> Ordinal {
        self.dst
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `g ∘ self`: apply `self` first, then `g`.
    pub fn then(&self, g: &DeltaMap) -> Result<DeltaMap> {
        compose_delta(self, g)
    }
}

impl fmt::Display for DeltaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "):{}→{}", self.src, self.dst)
    }
}

/// Composite `g ∘ f` (apply `f` first).
pub fn compose_delta(f: &DeltaMap, g: &DeltaMap) -> Result<DeltaMap> {
    if f.dst != g.src {
        return Err(Error::CompositionDomain(format!(
            "{f} ends at {} but {g} starts at {}",
            f.dst, g.src
        )));
    }
    Ok(DeltaMap {
        src: f.src,
        dst: g.dst,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

/// All order-preserving maps `[n] → [m]` in lexicographic order.
pub fn enumerate_delta_maps(n: Ordinal, m: Ordinal) -> Vec<DeltaMap> {
    let mut out = Vec::new();
    let mut values = vec![0usize; n.len()];
    fill_monotone(&mut values, 0, 0, m.0, &mut |vals| {
        out.push(DeltaMap {
            src: n,
            dst: m,
            values: vals.to_vec(),
        })
    });
    out
}

fn fill_monotone(
    values: &mut [usize],
    pos: usize,
    lo: usize,
    hi: usize,
    emit: &mut dyn FnMut(&[usize]),
) {
    if pos == values.len() {
        emit(values);
        return;
    }
    for v in lo..=hi {
        values[pos] = v;
        fill_monotone(values, pos + 1, v, hi, emit);
    }
}

/// Binomial coefficient; small arguments only.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// An endpoint-preserving order-preserving map between strict intervals
/// `[a] → [b]` with `a, b ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct NablaMap {
    src: Ordinal,
    dst: Ordinal,
    values: Vec<usize>,
}

impl TryFrom<RawMap> for NablaMap {
    type Error = Error;
    fn try_from(raw: RawMap) -> Result<Self> {
        NablaMap::new(Ordinal(raw.src), Ordinal(raw.dst), raw.values)
    }
}

impl From<NablaMap> for RawMap {
    fn from(f: NablaMap) -> Self {
        RawMap {
            src: f.src.0,
            dst: f.dst.0,
            values: f.values,
        }
    }
}

impl NablaMap {
    pub fn new(src: Ordinal, dst: Ordinal, values: Vec<usize>) -> Result<Self> {
        if src.0 < 1 || dst.0 < 1 {
            return Err(Error::Domain(format!(
                "strict intervals need n ≥ 1, got {src} → {dst}"
            )));
        }
        if values.len() != src.len() {
            return Err(Error::Domain(format!(
                "map from {src} needs {} values, got {}",
                src.len(),
                values.len()
            )));
        }
        check_monotone(&values, dst)?;
        if values[0] != 0 || values[src.0] != dst.0 {
            return Err(Error::Domain(format!(
                "interval map must preserve endpoints, got {values:?} into {dst}"
            )));
        }
        Ok(NablaMap { src, dst, values })
    }

    pub fn identity(n: Ordinal) -> Result<Self> {
        NablaMap::new(n, n, n.elements().collect())
    }

    pub fn src(&self) -> Ordinal {
        self.src
    }

    pub fn dst(&self) -> Ordinal {
        self.dst
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }
}

impl fmt::Display for NablaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({}):{}⇝{}", vals.join(","), self.src, self.dst)
    }
}

/// Composite `g ∘ f` in ∇.
pub fn compose_nabla(f: &NablaMap, g: &NablaMap) -> Result<NablaMap> {
    if f.dst != g.src {
        return Err(Error::CompositionDomain(format!(
            "{f} ends at {} but {g} starts at {}",
            f.dst, g.src
        )));
    }
    Ok(NablaMap {
        src: f.src,
        dst: g.dst,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

/// All interval maps `[a] → [b]`, lexicographic.
pub fn enumerate_nabla_maps(a: Ordinal, b: Ordinal) -> Vec<NablaMap> {
    if a.0 < 1 || b.0 < 1 {
        return Vec::new();
    }
    enumerate_delta_maps(a, b)
        .into_iter()
        .filter(|f| f.values[0] == 0 && f.values[a.0] == b.0)
        .map(|f| NablaMap {
            src: a,
            dst: b,
            values: f.values,
        })
        .collect()
}

pub fn dual_delta_to_nabla(f: &DeltaMap) -> NablaMap {
    let n = f.src.0;
    let m = f.dst.0;
    let values = (0..=m + 1)
        .map(|j| f.values.iter().filter(|&&v| v < j).count())
        .collect();
    NablaMap {
        src: Ordinal(m + 1),
        dst: Ordinal(n + 1),
        values,
    }
}

pub fn dual_nabla_to_delta(g: &NablaMap) -> DeltaMap {
    let m = g.src.0 - 1;
    let n = g.dst.0 - 1;
    let values = (0..=n)
        .map(|i| (1..=m).filter(|&j| g.values[j] <= i).count())
        .collect();
    DeltaMap {
        src: Ordinal(n),
        dst: Ordinal(m),
        values,
    }
}
