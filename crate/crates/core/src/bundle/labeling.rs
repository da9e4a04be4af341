use std::sync::Arc;

use super::category::{CatFunctor, LabelCategory};
use crate::error::{Error, Result};
use crate::poset::{FinPoset, PosetMap};

/// A functor from a finite poset to a label category, given on elements and
/// covering relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    category: Arc<LabelCategory>,
    objects: Vec<usize>,
    relations: Vec<usize>,
}

impl Labeling {
    /// `relations[k]` labels the `k`-th covering relation of `domain`.
    pub fn new(
        category: Arc<LabelCategory>,
        domain: &FinPoset,
        objects: Vec<usize>,
        relations: Vec<usize>,
    ) -> Result<Self> {
        let l = Labeling {
            category,
            objects,
            relations,
        };
        validate_labeling(&l, domain)?;
        Ok(l)
    }

    /// Every element labelled `object`, every relation by its identity.
    pub fn constant(category: Arc<LabelCategory>, domain: &FinPoset, object: usize) -> Result<Self> {
        if object >= category.object_count() {
            return Err(Error::Labeling(format!("object {object} out of range")));
        }
        let id = category.identity(object);
        let objects = vec![object; domain.len()];
        let relations = vec![id; domain.covers().len()];
        Self::new(category, domain, objects, relations)
    }

    /// Labels in a thin category, determined by their object values.
    pub fn from_objects(category: Arc<LabelCategory>, domain: &FinPoset, objects: Vec<usize>) -> Result<Self> {
        if objects.len() != domain.len() || objects.iter().any(|&o| o >= category.object_count()) {
            return Err(Error::Labeling("object labels have the wrong shape".into()));
        }
        let relations = domain
            .covers()
            .iter()
            .map(|&(a, b)| match category.hom(objects[a], objects[b]) {
                [h] => Ok(*h),
                hs => Err(Error::Labeling(format!(
                    "{} candidate labels for {} < {}",
                    hs.len(),
                    domain.key(a),
                    domain.key(b)
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(category, domain, objects, relations)
    }

    pub fn category(&self) -> &Arc<LabelCategory> {
        &self.category
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn relations(&self) -> &[usize] {
        &self.relations
    }

    pub fn object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn relation(&self, cover: usize) -> usize {
        self.relations[cover]
    }

    /// The label of `a ≤ b`, for every pair (row-major, `None` off the
    /// order).
    pub fn composites(&self, domain: &FinPoset) -> Result<Vec<Option<usize>>> {
        composite_table(self, domain).map_err(Error::Labeling)
    }

    /// The label of a single relation `a ≤ b`.
    pub fn morphism_between(&self, domain: &FinPoset, a: usize, b: usize) -> Result<Option<usize>> {
        Ok(self.composites(domain)?[a * domain.len() + b])
    }

    /// Precomposition with a monotone map `g : new_domain → domain`.
    pub fn pullback(&self, domain: &FinPoset, new_domain: &FinPoset, g: &PosetMap) -> Result<Labeling> {
        let table = self.composites(domain)?;
        let n = domain.len();
        let objects = (0..new_domain.len()).map(|x| self.objects[g.apply(x)]).collect();
        let relations = new_domain
            .covers()
            .iter()
            .map(|&(x, y)| {
                table[g.apply(x) * n + g.apply(y)]
                    .ok_or_else(|| Error::Domain("pullback map is not monotone".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Labeling::new(self.category.clone(), new_domain, objects, relations)
    }
}

fn composite_table(l: &Labeling, domain: &FinPoset) -> std::result::Result<Vec<Option<usize>>, String> {
    let c = &l.category;
    let n = domain.len();
    if l.objects.len() != n {
        return Err(format!("{} object labels for {} elements", l.objects.len(), n));
    }
    if l.relations.len() != domain.covers().len() {
        return Err(format!(
            "{} relation labels for {} covering relations",
            l.relations.len(),
            domain.covers().len()
        ));
    }
    if let Some(x) = (0..n).find(|&x| l.objects[x] >= c.object_count()) {
        return Err(format!("label of {} is not an object", domain.key(x)));
    }
    for (k, &(a, b)) in domain.covers().iter().enumerate() {
        let m = l.relations[k];
        if m >= c.morphism_count() {
            return Err(format!("label of {} < {} is not a morphism", domain.key(a), domain.key(b)));
        }
        if c.src(m) != l.objects[a] || c.dst(m) != l.objects[b] {
            return Err(format!(
                "label {} of {} < {} does not run from {} to {}",
                c.morphisms()[m].name,
                domain.key(a),
                domain.key(b),
                c.objects()[l.objects[a]],
                c.objects()[l.objects[b]]
            ));
        }
    }
    let mut table: Vec<Option<usize>> = vec![None; n * n];
    for &b in domain.linear_extension() {
        table[b * n + b] = Some(c.identity(l.objects[b]));
        for a in 0..n {
            if !domain.lt(a, b) {
                continue;
            }
            let mut found: Option<(usize, usize)> = None;
            for &m in domain.lower_covers(b) {
                if !domain.le(a, m) {
                    continue;
                }
                let first = table[a * n + m].expect("earlier in linear extension");
                let last = l.relations[domain.cover_index(m, b).expect("lower cover")];
                let composite = c.compose(first, last).expect("typed labels compose");
                match found {
                    None => found = Some((m, composite)),
                    Some((m0, prev)) if prev != composite => {
                        return Err(format!(
                            "chains from {} to {} disagree: {} through {} but {} through {}",
                            domain.key(a),
                            domain.key(b),
                            c.morphisms()[prev].name,
                            domain.key(m0),
                            c.morphisms()[composite].name,
                            domain.key(m)
                        ));
                    }
                    Some(_) => {}
                }
            }
            table[a * n + b] = found.map(|(_, h)| h);
        }
    }
    Ok(table)
}

/// Checks that the labels form a functor on `domain`. The error carries a
/// diagnostic naming the offending relation.
pub fn validate_labeling(l: &Labeling, domain: &FinPoset) -> Result<()> {
    composite_table(l, domain).map(|_| ()).map_err(Error::Labeling)
}

/// Postcomposition with a functor out of the label category.
pub fn relabel(l: &Labeling, f: &CatFunctor, target: Arc<LabelCategory>, domain: &FinPoset) -> Result<Labeling> {
    f.validate(&l.category, &target)?;
    Labeling::new(
        target,
        domain,
        l.objects.iter().map(|&o| f.objects[o]).collect(),
        l.relations.iter().map(|&m| f.morphisms[m]).collect(),
    )
}
