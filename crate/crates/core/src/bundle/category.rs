use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::FinPoset;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite 1-category with an explicit composition table.
///
/// `compose(f, g)` is `g ∘ f`, defined exactly when `dst(f) = src(g)`.
#[derive(Debug, Clone)]
pub struct LabelCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    composition: HashMap<(usize, usize), usize>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
    // morphisms grouped by (src, dst)
    homs: HashMap<(usize, usize), Vec<usize>>,
}

impl PartialEq for LabelCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.composition == other.composition
    }
}

impl Eq for LabelCategory {}

impl LabelCategory {
    /// Validates names, typing, units and associativity.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let err = |m: String| Error::Domain(format!("label category: {m}"));
        let mut object_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(err(format!("duplicate object {o}")));
            }
        }
        let mut morphism_index = HashMap::new();
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if m.src >= objects.len() || m.dst >= objects.len() {
                return Err(err(format!("morphism {} has an unknown endpoint", m.name)));
            }
            if morphism_index.insert(m.name.clone(), i).is_some() {
                return Err(err(format!("duplicate morphism {}", m.name)));
            }
            homs.entry((m.src, m.dst)).or_default().push(i);
        }
        if identities.len() != objects.len() {
            return Err(err("one identity per object required".into()));
        }
        for (o, &id) in identities.iter().enumerate() {
            let m = morphisms
                .get(id)
                .ok_or_else(|| err(format!("identity of {} out of range", objects[o])))?;
            if m.src != o || m.dst != o {
                return Err(err(format!("{} is not an endomorphism of {}", m.name, objects[o])));
            }
        }
        let cat = LabelCategory {
            objects,
            morphisms,
            identities,
            composition,
            object_index,
            morphism_index,
            homs,
        };
        cat.check_table().map_err(err)?;
        Ok(cat)
    }

    fn check_table(&self) -> std::result::Result<(), String> {
        let m = &self.morphisms;
        for (&(f, g), &h) in &self.composition {
            if f >= m.len() || g >= m.len() || h >= m.len() {
                return Err("composition entry out of range".into());
            }
            if m[f].dst != m[g].src {
                return Err(format!("{} and {} are not composable", m[f].name, m[g].name));
            }
            if m[h].src != m[f].src || m[h].dst != m[g].dst {
                return Err(format!(
                    "{} ∘ {} = {} has the wrong type",
                    m[g].name, m[f].name, m[h].name
                ));
            }
        }
        let mut outs = vec![Vec::new(); self.objects.len()];
        for (g, mg) in m.iter().enumerate() {
            outs[mg.src].push(g);
        }
        let composable: usize = m.iter().map(|mf| outs[mf.dst].len()).sum();
        if composable != self.composition.len() {
            return Err("composition table must cover exactly the composable pairs".into());
        }
        for (f, mf) in m.iter().enumerate() {
            if self.composition.get(&(self.identities[mf.src], f)) != Some(&f)
                || self.composition.get(&(f, self.identities[mf.dst])) != Some(&f)
            {
                return Err(format!("unit law fails at {}", mf.name));
            }
        }
        for f in 0..m.len() {
            for &g in &outs[m[f].dst] {
                let fg = self.composition[&(f, g)];
                for &h in &outs[m[g].dst] {
                    let left = self.composition[&(fg, h)];
                    let right = self.composition[&(f, self.composition[&(g, h)])];
                    if left != right {
                        return Err(format!(
                            "associativity fails at ({}, {}, {})",
                            m[f].name, m[g].name, m[h].name
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// One object `*` and its identity.
    pub fn terminal() -> Self {
        Self::from_poset(&FinPoset::from_key_relations(&["*"], &[]).expect("point"))
    }

    /// The poset as a thin category. The morphism `a ≤ b` is named `a->b`,
    /// identities `id:a`.
    pub fn from_poset(p: &FinPoset) -> Self {
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        let mut identities = vec![0; p.len()];
        for (a, identity) in identities.iter_mut().enumerate() {
            for b in 0..p.len() {
                if p.le(a, b) {
                    let name = if a == b {
                        *identity = morphisms.len();
                        format!("id:{}", p.key(a))
                    } else {
                        format!("{}->{}", p.key(a), p.key(b))
                    };
                    index.insert((a, b), morphisms.len());
                    morphisms.push(Morphism { name, src: a, dst: b });
                }
            }
        }
        let mut composition = HashMap::new();
        for (f, mf) in morphisms.iter().enumerate() {
            for (g, mg) in morphisms.iter().enumerate() {
                if mf.dst == mg.src {
                    composition.insert((f, g), index[&(mf.src, mg.dst)]);
                }
            }
        }
        Self::new(p.keys().to_vec(), morphisms, identities, composition)
            .expect("posets are categories")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn composition(&self) -> &HashMap<(usize, usize), usize> {
        &self.composition
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphism_index.get(name).copied()
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.morphisms[f].dst
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `g ∘ f`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composition.get(&(f, g)).copied()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    /// Every hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        self.homs.values().all(|v| v.len() <= 1)
    }
}

/// A functor between label categories, given on objects and morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatFunctor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl CatFunctor {
    pub fn identity(c: &LabelCategory) -> Self {
        CatFunctor {
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
        }
    }

    /// The unique functor to a category with one object and one morphism.
    pub fn to_terminal(c: &LabelCategory) -> Self {
        CatFunctor {
            objects: vec![0; c.object_count()],
            morphisms: vec![0; c.morphism_count()],
        }
    }

    /// Extends an object map to morphisms when every needed hom-set of the
    /// target is a singleton.
    pub fn from_object_map(src: &LabelCategory, dst: &LabelCategory, objects: Vec<usize>) -> Result<Self> {
        if objects.len() != src.object_count() || objects.iter().any(|&o| o >= dst.object_count()) {
            return Err(Error::Domain("object map has the wrong shape".into()));
        }
        let morphisms = src
            .morphisms()
            .iter()
            .map(|m| match dst.hom(objects[m.src], objects[m.dst]) {
                [h] => Ok(*h),
                hs => Err(Error::Domain(format!(
                    "image of {} is ambiguous: {} candidates",
                    m.name,
                    hs.len()
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        let f = CatFunctor { objects, morphisms };
        f.validate(src, dst)?;
        Ok(f)
    }

    pub fn validate(&self, src: &LabelCategory, dst: &LabelCategory) -> Result<()> {
        let err = |m: String| Error::Domain(format!("functor: {m}"));
        if self.objects.len() != src.object_count() || self.morphisms.len() != src.morphism_count() {
            return Err(err("shape does not match the source category".into()));
        }
        if self.objects.iter().any(|&o| o >= dst.object_count())
            || self.morphisms.iter().any(|&m| m >= dst.morphism_count())
        {
            return Err(err("image out of range".into()));
        }
        for (f, m) in src.morphisms().iter().enumerate() {
            let image = self.morphisms[f];
            if dst.src(image) != self.objects[m.src] || dst.dst(image) != self.objects[m.dst] {
                return Err(err(format!("{} is sent to a morphism of the wrong type", m.name)));
            }
        }
        for o in 0..src.object_count() {
            if self.morphisms[src.identity(o)] != dst.identity(self.objects[o]) {
                return Err(err(format!("identity of {} not preserved", src.objects()[o])));
            }
        }
        for (&(f, g), &h) in src.composition() {
            if dst.compose(self.morphisms[f], self.morphisms[g]) != Some(self.morphisms[h]) {
                return Err(err(format!(
                    "composite {} ∘ {} not preserved",
                    src.morphisms()[g].name,
                    src.morphisms()[f].name
                )));
            }
        }
        Ok(())
    }

    /// `G ∘ F` where `self` is `F`.
    pub fn then(&self, g: &CatFunctor) -> CatFunctor {
        CatFunctor {
            objects: self.objects.iter().map(|&o| g.objects[o]).collect(),
            morphisms: self.morphisms.iter().map(|&m| g.morphisms[m]).collect(),
        }
    }
}
