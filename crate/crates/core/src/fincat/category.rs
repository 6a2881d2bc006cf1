use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an object inside a [`FinCategory`].
pub type Obj = usize;
/// Index of a morphism inside a [`FinCategory`].
pub type Mor = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// Unvalidated category description, as read from a file or built by hand.
///
/// When `identities` is empty, an identity `id_<obj>` is generated for every
/// object and placed before the declared morphisms. Composites with an
/// identity are always implicit; every other composable pair needs an entry
/// in `compose` as `(g, f, g.f)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: Vec<String>,
    pub compose: Vec<(String, String, String)>,
}

impl RawCategory {
    pub fn new(name: &str) -> Self {
        RawCategory {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn objects(mut self, names: &[&str]) -> Self {
        self.objects.extend(names.iter().map(|s| s.to_string()));
        self
    }

    pub fn mor(mut self, name: &str, dom: &str, cod: &str) -> Self {
        self.morphisms.push(RawMorphism {
            name: name.to_string(),
            dom: dom.to_string(),
            cod: cod.to_string(),
        });
        self
    }

    pub fn compose(mut self, g: &str, f: &str, gf: &str) -> Self {
        self.compose
            .push((g.to_string(), f.to_string(), gf.to_string()));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismData {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
}

/// A finite category with an explicit, total composition table.
#[derive(Debug, Clone)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identity: Vec<Mor>,
    compose: HashMap<(Mor, Mor), Mor>,
    homs: HashMap<(Obj, Obj), Vec<Mor>>,
    out: Vec<Vec<Mor>>,
    inverse: Vec<Option<Mor>>,
    object_names: HashMap<String, Obj>,
    morphism_names: HashMap<String, Mor>,
}

const EMPTY: &[Mor] = &[];

impl FinCategory {
    /// Assembles a category from its parts, filling the composition table by
    /// calling `compose` on every composable non-identity pair. Endpoints of
    /// the results are checked; associativity is not (see [`check_laws`]).
    ///
    /// [`check_laws`]: FinCategory::check_laws
    pub fn build<F>(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<MorphismData>,
        identity: Vec<Mor>,
        mut compose: F,
    ) -> Result<FinCategory>
    where
        F: FnMut(Mor, Mor) -> Result<Mor>,
    {
        let name = name.into();
        let mut object_names = HashMap::with_capacity(objects.len());
        for (o, n) in objects.iter().enumerate() {
            if object_names.insert(n.clone(), o).is_some() {
                return Err(Error::DuplicateIdentifier(n.clone()));
            }
        }
        let mut morphism_names = HashMap::with_capacity(morphisms.len());
        for (m, d) in morphisms.iter().enumerate() {
            if d.dom >= objects.len() || d.cod >= objects.len() {
                return Err(Error::BadEndpoints(format!(
                    "morphism `{}` refers to a missing object",
                    d.name
                )));
            }
            if morphism_names.insert(d.name.clone(), m).is_some() {
                return Err(Error::DuplicateIdentifier(d.name.clone()));
            }
        }
        if identity.len() != objects.len() {
            return Err(Error::BadEndpoints("identity map is not total".into()));
        }
        for (o, &id) in identity.iter().enumerate() {
            if id >= morphisms.len() || morphisms[id].dom != o || morphisms[id].cod != o {
                return Err(Error::BadEndpoints(format!(
                    "identity of `{}` is not an endomorphism of it",
                    objects[o]
                )));
            }
        }
        let mut out = vec![Vec::new(); objects.len()];
        let mut homs: HashMap<(Obj, Obj), Vec<Mor>> = HashMap::new();
        for (m, d) in morphisms.iter().enumerate() {
            out[d.dom].push(m);
            homs.entry((d.dom, d.cod)).or_default().push(m);
        }
        let is_id: HashSet<Mor> = identity.iter().copied().collect();
        let mut table = HashMap::new();
        for f in 0..morphisms.len() {
            let b = morphisms[f].cod;
            for &g in &out[b] {
                let h = if is_id.contains(&g) {
                    f
                } else if is_id.contains(&f) {
                    g
                } else {
                    let h = compose(g, f)?;
                    if h >= morphisms.len()
                        || morphisms[h].dom != morphisms[f].dom
                        || morphisms[h].cod != morphisms[g].cod
                    {
                        return Err(Error::BadEndpoints(format!(
                            "composite {} . {} has the wrong endpoints",
                            morphisms[g].name, morphisms[f].name
                        )));
                    }
                    h
                };
                table.insert((g, f), h);
            }
        }
        let mut cat = FinCategory {
            name,
            objects,
            morphisms,
            identity,
            compose: table,
            homs,
            out,
            inverse: Vec::new(),
            object_names,
            morphism_names,
        };
        cat.inverse = (0..cat.morphisms.len())
            .map(|f| cat.find_inverse(f))
            .collect();
        Ok(cat)
    }

    fn find_inverse(&self, f: Mor) -> Option<Mor> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a).iter().copied().find(|&g| {
            self.compose[&(g, f)] == self.identity[a] && self.compose[&(f, g)] == self.identity[b]
        })
    }

    /// Exhaustively checks the identity and associativity laws.
    pub fn check_laws(&self) -> Result<()> {
        for f in 0..self.morphisms.len() {
            let (a, b) = (self.dom(f), self.cod(f));
            if self.compose(self.identity[b], f) != f || self.compose(f, self.identity[a]) != f {
                return Err(Error::BadEndpoints(format!(
                    "identity law fails at `{}`",
                    self.mor_name(f)
                )));
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in self.out(self.cod(f)) {
                let gf = self.compose(g, f);
                for &h in self.out(self.cod(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(Error::NonAssociative {
                            h: self.mor_name(h).to_string(),
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn mor_name(&self, m: Mor) -> &str {
        &self.morphisms[m].name
    }

    pub fn morphism(&self, m: Mor) -> &MorphismData {
        &self.morphisms[m]
    }

    pub fn dom(&self, m: Mor) -> Obj {
        self.morphisms[m].dom
    }

    pub fn cod(&self, m: Mor) -> Obj {
        self.morphisms[m].cod
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identity[o]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.dom(m)] == m
    }

    /// `g . f`; panics when the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        match self.compose.get(&(g, f)) {
            Some(&h) => h,
            None => panic!(
                "{}: `{}` and `{}` are not composable",
                self.name,
                self.mor_name(g),
                self.mor_name(f)
            ),
        }
    }

    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.compose.get(&(g, f)).copied()
    }

    /// Composes a path given in diagrammatic order (first morphism first).
    pub fn compose_path(&self, path: &[Mor]) -> Mor {
        let mut it = path.iter().copied();
        let first = it.next().expect("empty path");
        it.fold(first, |acc, m| self.compose(m, acc))
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        self.homs.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(EMPTY)
    }

    pub fn out(&self, a: Obj) -> &[Mor] {
        &self.out[a]
    }

    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        self.inverse[m]
    }

    pub fn is_iso(&self, m: Mor) -> bool {
        self.inverse[m].is_some()
    }

    pub fn object_by_name(&self, name: &str) -> Option<Obj> {
        self.object_names.get(name).copied()
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<Mor> {
        self.morphism_names.get(name).copied()
    }

    /// Number of entries of the composition table.
    pub fn num_composable_pairs(&self) -> usize {
        self.compose.len()
    }

    /// All composable pairs `(g, f)`, ordered by `f` then `g`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.morphisms()
            .flat_map(move |f| self.out(self.cod(f)).iter().map(move |&g| (g, f)))
    }

    /// Returns a copy under a new name.
    pub fn renamed(&self, name: impl Into<String>) -> FinCategory {
        let mut c = self.clone();
        c.name = name.into();
        c
    }

    /// The opposite category. Objects and morphisms keep their indices and
    /// names; only endpoints and the composition order are flipped.
    pub fn opposite(&self) -> FinCategory {
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        let morphisms = self
            .morphisms
            .iter()
            .map(|d| MorphismData {
                name: d.name.clone(),
                dom: d.cod,
                cod: d.dom,
            })
            .collect();
        FinCategory::build(
            name,
            self.objects.clone(),
            morphisms,
            self.identity.clone(),
            |g, f| Ok(self.compose(f, g)),
        )
        .expect("opposite of a valid category is valid")
    }

    /// Description that re-validates to this exact category.
    pub fn to_raw(&self) -> RawCategory {
        let mut compose = Vec::new();
        for (g, f) in self.composable_pairs() {
            if self.is_identity(g) || self.is_identity(f) {
                continue;
            }
            let h = self.compose(g, f);
            compose.push((
                self.mor_name(g).to_string(),
                self.mor_name(f).to_string(),
                self.mor_name(h).to_string(),
            ));
        }
        RawCategory {
            name: self.name.clone(),
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|d| RawMorphism {
                    name: d.name.clone(),
                    dom: self.objects[d.dom].clone(),
                    cod: self.objects[d.cod].clone(),
                })
                .collect(),
            identities: self
                .identity
                .iter()
                .map(|&m| self.morphisms[m].name.clone())
                .collect(),
            compose,
        }
    }
}

/// Validates a raw description into a [`FinCategory`].
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory> {
    let mut object_index = HashMap::new();
    for (o, n) in raw.objects.iter().enumerate() {
        if object_index.insert(n.as_str(), o).is_some() {
            return Err(Error::DuplicateIdentifier(n.clone()));
        }
    }
    let lookup_obj = |n: &str| {
        object_index
            .get(n)
            .copied()
            .ok_or_else(|| Error::BadEndpoints(format!("unknown object `{n}`")))
    };

    let mut morphisms = Vec::new();
    let mut identity = Vec::new();
    if raw.identities.is_empty() {
        for (o, n) in raw.objects.iter().enumerate() {
            identity.push(morphisms.len());
            morphisms.push(MorphismData {
                name: format!("id_{n}"),
                dom: o,
                cod: o,
            });
        }
    }
    for m in &raw.morphisms {
        morphisms.push(MorphismData {
            name: m.name.clone(),
            dom: lookup_obj(&m.dom)?,
            cod: lookup_obj(&m.cod)?,
        });
    }
    let mut morphism_index = HashMap::new();
    for (i, d) in morphisms.iter().enumerate() {
        if morphism_index.insert(d.name.clone(), i).is_some() {
            return Err(Error::DuplicateIdentifier(d.name.clone()));
        }
    }
    let lookup_mor = |n: &str| {
        morphism_index
            .get(n)
            .copied()
            .ok_or_else(|| Error::BadEndpoints(format!("unknown morphism `{n}`")))
    };
    if !raw.identities.is_empty() {
        if raw.identities.len() != raw.objects.len() {
            return Err(Error::BadEndpoints(
                "identity list must name one morphism per object".into(),
            ));
        }
        for n in &raw.identities {
            identity.push(lookup_mor(n)?);
        }
    }
    let is_id: HashSet<Mor> = identity.iter().copied().collect();

    let mut table: HashMap<(Mor, Mor), Mor> = HashMap::new();
    for (g, f, h) in &raw.compose {
        let (g, f, h) = (lookup_mor(g)?, lookup_mor(f)?, lookup_mor(h)?);
        if morphisms[g].dom != morphisms[f].cod {
            return Err(Error::BadEndpoints(format!(
                "`{}` and `{}` are not composable",
                morphisms[g].name, morphisms[f].name
            )));
        }
        if morphisms[h].dom != morphisms[f].dom || morphisms[h].cod != morphisms[g].cod {
            return Err(Error::BadEndpoints(format!(
                "composite {} . {} = {} has the wrong endpoints",
                morphisms[g].name, morphisms[f].name, morphisms[h].name
            )));
        }
        let implicit = if is_id.contains(&g) {
            Some(f)
        } else if is_id.contains(&f) {
            Some(g)
        } else {
            None
        };
        if let Some(expected) = implicit {
            if expected != h {
                return Err(Error::BadEndpoints(format!(
                    "composite {} . {} contradicts the identity law",
                    morphisms[g].name, morphisms[f].name
                )));
            }
            continue;
        }
        if let Some(prev) = table.insert((g, f), h) {
            if prev != h {
                return Err(Error::BadEndpoints(format!(
                    "conflicting composites for {} . {}",
                    morphisms[g].name, morphisms[f].name
                )));
            }
        }
    }
    let names: Vec<String> = morphisms.iter().map(|d| d.name.clone()).collect();
    let cat = FinCategory::build(raw.name.clone(), raw.objects.clone(), morphisms, identity, |g, f| {
        table.get(&(g, f)).copied().ok_or_else(|| Error::MissingComposite {
            g: names[g].clone(),
            f: names[f].clone(),
        })
    })?;
    cat.check_laws()?;
    Ok(cat)
}
