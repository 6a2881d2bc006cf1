use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{FinCategory, Mor, Obj};
use crate::error::{Error, Result};

/// Unvalidated functor description. Identity morphisms may be omitted from
/// `morphisms`; they are sent to the identity of the image object.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunctor {
    pub name: String,
    pub objects: Vec<(String, String)>,
    pub morphisms: Vec<(String, String)>,
}

/// A functor between finite categories, stored as two total maps.
#[derive(Debug, Clone)]
pub struct FinFunctor {
    name: String,
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl FinFunctor {
    /// Builds without checking functoriality.
    pub fn from_maps(
        name: impl Into<String>,
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> FinFunctor {
        debug_assert_eq!(obj_map.len(), source.num_objects());
        debug_assert_eq!(mor_map.len(), source.num_morphisms());
        FinFunctor {
            name: name.into(),
            source,
            target,
            obj_map,
            mor_map,
        }
    }

    pub fn identity(cat: &Arc<FinCategory>) -> FinFunctor {
        FinFunctor::from_maps(
            format!("Id_{}", cat.name()),
            cat.clone(),
            cat.clone(),
            cat.objects().collect(),
            cat.morphisms().collect(),
        )
    }

    pub fn constant(source: &Arc<FinCategory>, target: &Arc<FinCategory>, at: Obj) -> FinFunctor {
        FinFunctor::from_maps(
            format!("Const_{}", target.object_name(at)),
            source.clone(),
            target.clone(),
            vec![at; source.num_objects()],
            vec![target.identity(at); source.num_morphisms()],
        )
    }

    /// `self . first`, i.e. apply `first` then `self`.
    pub fn after(&self, first: &FinFunctor) -> FinFunctor {
        assert!(
            Arc::ptr_eq(&first.target, &self.source) || first.target.name() == self.source.name(),
            "functors are not composable"
        );
        FinFunctor::from_maps(
            format!("{}.{}", self.name, first.name),
            first.source.clone(),
            self.target.clone(),
            first.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            first.mor_map.iter().map(|&m| self.mor_map[m]).collect(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FinFunctor {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn obj(&self, o: Obj) -> Obj {
        self.obj_map[o]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mor_map[m]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    /// Same underlying maps (names and category identities are ignored).
    pub fn same_maps(&self, other: &FinFunctor) -> bool {
        self.obj_map == other.obj_map && self.mor_map == other.mor_map
    }

    /// Exhaustive check of endpoint, identity and composition preservation.
    pub fn check(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.obj_map.len() != s.num_objects() || self.mor_map.len() != s.num_morphisms() {
            return Err(Error::NotFunctorial(format!("{}: maps are not total", self.name)));
        }
        if self.obj_map.iter().any(|&o| o >= t.num_objects())
            || self.mor_map.iter().any(|&m| m >= t.num_morphisms())
        {
            return Err(Error::NotFunctorial(format!("{}: image out of range", self.name)));
        }
        for m in s.morphisms() {
            let fm = self.mor_map[m];
            if t.dom(fm) != self.obj_map[s.dom(m)] || t.cod(fm) != self.obj_map[s.cod(m)] {
                return Err(Error::NotFunctorial(format!(
                    "{}: image of `{}` has the wrong endpoints",
                    self.name,
                    s.mor_name(m)
                )));
            }
        }
        for o in s.objects() {
            if self.mor_map[s.identity(o)] != t.identity(self.obj_map[o]) {
                return Err(Error::NotFunctorial(format!(
                    "{}: identity of `{}` not preserved",
                    self.name,
                    s.object_name(o)
                )));
            }
        }
        for (g, f) in s.composable_pairs() {
            let lhs = self.mor_map[s.compose(g, f)];
            let rhs = t.compose(self.mor_map[g], self.mor_map[f]);
            if lhs != rhs {
                return Err(Error::NotFunctorial(format!(
                    "{}: composite ({}, {}) not preserved",
                    self.name,
                    s.mor_name(g),
                    s.mor_name(f)
                )));
            }
        }
        Ok(())
    }

    /// Inverse functor, when both maps are bijections.
    pub fn inverse(&self) -> Option<FinFunctor> {
        let (s, t) = (&self.source, &self.target);
        if s.num_objects() != t.num_objects() || s.num_morphisms() != t.num_morphisms() {
            return None;
        }
        let mut obj_inv = vec![usize::MAX; t.num_objects()];
        for (o, &fo) in self.obj_map.iter().enumerate() {
            if obj_inv[fo] != usize::MAX {
                return None;
            }
            obj_inv[fo] = o;
        }
        let mut mor_inv = vec![usize::MAX; t.num_morphisms()];
        for (m, &fm) in self.mor_map.iter().enumerate() {
            if mor_inv[fm] != usize::MAX {
                return None;
            }
            mor_inv[fm] = m;
        }
        Some(FinFunctor::from_maps(
            format!("{}^-1", self.name),
            t.clone(),
            s.clone(),
            obj_inv,
            mor_inv,
        ))
    }

    pub fn to_raw(&self) -> RawFunctor {
        let (s, t) = (&self.source, &self.target);
        RawFunctor {
            name: self.name.clone(),
            objects: s
                .objects()
                .map(|o| (s.object_name(o).to_string(), t.object_name(self.obj_map[o]).to_string()))
                .collect(),
            morphisms: s
                .morphisms()
                .filter(|&m| !s.is_identity(m))
                .map(|m| (s.mor_name(m).to_string(), t.mor_name(self.mor_map[m]).to_string()))
                .collect(),
        }
    }
}

/// Validates a functor description between two validated categories.
pub fn validate_functor(
    raw: &RawFunctor,
    source: &Arc<FinCategory>,
    target: &Arc<FinCategory>,
) -> Result<FinFunctor> {
    let mut obj_map = vec![None; source.num_objects()];
    for (a, b) in &raw.objects {
        let a = source
            .object_by_name(a)
            .ok_or_else(|| Error::UnknownObject(a.clone()))?;
        let b = target
            .object_by_name(b)
            .ok_or_else(|| Error::UnknownObject(b.clone()))?;
        obj_map[a] = Some(b);
    }
    let obj_map: Vec<Obj> = obj_map
        .into_iter()
        .enumerate()
        .map(|(o, x)| {
            x.ok_or_else(|| {
                Error::NotFunctorial(format!("{}: object `{}` unmapped", raw.name, source.object_name(o)))
            })
        })
        .collect::<Result<_>>()?;
    let mut mor_map = vec![None; source.num_morphisms()];
    for (a, b) in &raw.morphisms {
        let a = source
            .morphism_by_name(a)
            .ok_or_else(|| Error::BadEndpoints(format!("unknown morphism `{a}`")))?;
        let b = target
            .morphism_by_name(b)
            .ok_or_else(|| Error::BadEndpoints(format!("unknown morphism `{b}`")))?;
        mor_map[a] = Some(b);
    }
    let mor_map: Vec<Mor> = mor_map
        .into_iter()
        .enumerate()
        .map(|(m, x)| match x {
            Some(v) => Ok(v),
            None if source.is_identity(m) => Ok(target.identity(obj_map[source.dom(m)])),
            None => Err(Error::NotFunctorial(format!(
                "{}: morphism `{}` unmapped",
                raw.name,
                source.mor_name(m)
            ))),
        })
        .collect::<Result<_>>()?;
    let f = FinFunctor::from_maps(raw.name.clone(), source.clone(), target.clone(), obj_map, mor_map);
    f.check()?;
    Ok(f)
}

/// Calls `visit` on every functor `source -> target`, in a fixed order, until
/// it returns `false`. Returns the number of functors visited.
pub fn for_each_functor<F>(source: &Arc<FinCategory>, target: &Arc<FinCategory>, mut visit: F) -> usize
where
    F: FnMut(&FinFunctor) -> bool,
{
    let s = &**source;
    let t = &**target;
    let ns = s.num_objects();
    if ns > 0 && t.num_objects() == 0 {
        return 0;
    }
    let free: Vec<Mor> = s.morphisms().filter(|&m| !s.is_identity(m)).collect();
    let position: Vec<Option<usize>> = {
        let mut p = vec![None; s.num_morphisms()];
        for (k, &m) in free.iter().enumerate() {
            p[m] = Some(k);
        }
        p
    };
    // Constraints (g, f, g.f) become checkable once the latest of the three
    // non-identity morphisms is assigned.
    let mut checks: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); free.len()];
    for (g, f) in s.composable_pairs() {
        if s.is_identity(g) || s.is_identity(f) {
            continue;
        }
        let h = s.compose(g, f);
        let latest = [g, f, h].iter().filter_map(|&m| position[m]).max().unwrap();
        checks[latest].push((g, f, h));
    }

    let mut count = 0usize;
    let mut obj_map = vec![0usize; ns];
    let mut mor_map = vec![usize::MAX; s.num_morphisms()];
    let mut stop = false;
    let nt = t.num_objects();
    loop {
        for o in s.objects() {
            mor_map[s.identity(o)] = t.identity(obj_map[o]);
        }
        assign(
            s, t, source, target, &free, &checks, 0, &obj_map, &mut mor_map, &mut count, &mut stop,
            &mut visit,
        );
        if stop || ns == 0 {
            break;
        }
        // next object assignment (odometer)
        let mut k = 0;
        loop {
            if k == ns {
                return count;
            }
            obj_map[k] += 1;
            if obj_map[k] < nt {
                break;
            }
            obj_map[k] = 0;
            k += 1;
        }
    }
    count
}

#[allow(clippy::too_many_arguments)]
fn assign<F>(
    s: &FinCategory,
    t: &FinCategory,
    source: &Arc<FinCategory>,
    target: &Arc<FinCategory>,
    free: &[Mor],
    checks: &[Vec<(Mor, Mor, Mor)>],
    k: usize,
    obj_map: &[Obj],
    mor_map: &mut Vec<Mor>,
    count: &mut usize,
    stop: &mut bool,
    visit: &mut F,
) where
    F: FnMut(&FinFunctor) -> bool,
{
    if *stop {
        return;
    }
    if k == free.len() {
        *count += 1;
        let f = FinFunctor::from_maps(
            "enumerated",
            source.clone(),
            target.clone(),
            obj_map.to_vec(),
            mor_map.clone(),
        );
        if !visit(&f) {
            *stop = true;
        }
        return;
    }
    let m = free[k];
    let (a, b) = (obj_map[s.dom(m)], obj_map[s.cod(m)]);
    for &cand in t.hom(a, b) {
        mor_map[m] = cand;
        let ok = checks[k]
            .iter()
            .all(|&(g, f, h)| t.compose(mor_map[g], mor_map[f]) == mor_map[h]);
        if ok {
            assign(s, t, source, target, free, checks, k + 1, obj_map, mor_map, count, stop, visit);
            if *stop {
                return;
            }
        }
    }
    mor_map[m] = usize::MAX;
}

/// All functors `source -> target`, or `None` when there are more than `limit`.
pub fn enumerate_functors(
    source: &Arc<FinCategory>,
    target: &Arc<FinCategory>,
    limit: usize,
) -> Option<Vec<FinFunctor>> {
    let mut all = Vec::new();
    let mut overflow = false;
    for_each_functor(source, target, |f| {
        if all.len() == limit {
            overflow = true;
            return false;
        }
        all.push(f.clone());
        true
    });
    if overflow {
        None
    } else {
        Some(all)
    }
}

/// Unvalidated natural transformation: one component per source object.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawNat {
    pub name: String,
    pub components: Vec<(String, String)>,
}

/// A natural transformation between two parallel functors.
#[derive(Debug, Clone)]
pub struct NatTransformation {
    name: String,
    source: FinFunctor,
    target: FinFunctor,
    components: Vec<Mor>,
}

impl NatTransformation {
    pub fn from_components(
        name: impl Into<String>,
        source: FinFunctor,
        target: FinFunctor,
        components: Vec<Mor>,
    ) -> NatTransformation {
        NatTransformation {
            name: name.into(),
            source,
            target,
            components,
        }
    }

    pub fn identity(f: &FinFunctor) -> NatTransformation {
        let comps = f
            .source()
            .objects()
            .map(|o| f.target().identity(f.obj(o)))
            .collect();
        NatTransformation::from_components(format!("id_{}", f.name()), f.clone(), f.clone(), comps)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &FinFunctor {
        &self.source
    }

    pub fn target(&self) -> &FinFunctor {
        &self.target
    }

    pub fn component(&self, o: Obj) -> Mor {
        self.components[o]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn is_iso(&self) -> bool {
        let t = self.source.target();
        self.components.iter().all(|&c| t.is_iso(c))
    }

    /// Endpoint and naturality-square check over every source morphism.
    pub fn check(&self) -> Result<()> {
        let (f, g) = (&self.source, &self.target);
        let s = f.source();
        let t = f.target();
        if self.components.len() != s.num_objects() {
            return Err(Error::NotNatural(format!("{}: components are not total", self.name)));
        }
        for o in s.objects() {
            let c = self.components[o];
            if c >= t.num_morphisms() || t.dom(c) != f.obj(o) || t.cod(c) != g.obj(o) {
                return Err(Error::NotNatural(format!(
                    "{}: component at `{}` has the wrong endpoints",
                    self.name,
                    s.object_name(o)
                )));
            }
        }
        for m in s.morphisms() {
            let (x, y) = (s.dom(m), s.cod(m));
            let lhs = t.compose(g.mor(m), self.components[x]);
            let rhs = t.compose(self.components[y], f.mor(m));
            if lhs != rhs {
                return Err(Error::NotNatural(format!(
                    "{}: square at `{}` does not commute",
                    self.name,
                    s.mor_name(m)
                )));
            }
        }
        Ok(())
    }

    pub fn to_raw(&self) -> RawNat {
        let s = self.source.source();
        let t = self.source.target();
        RawNat {
            name: self.name.clone(),
            components: s
                .objects()
                .map(|o| (s.object_name(o).to_string(), t.mor_name(self.components[o]).to_string()))
                .collect(),
        }
    }
}

/// Validates a natural transformation `source => target`; with
/// `require_iso`, every component must be invertible.
pub fn validate_nat(
    raw: &RawNat,
    source: &FinFunctor,
    target: &FinFunctor,
    require_iso: bool,
) -> Result<NatTransformation> {
    let s = source.source();
    let t = source.target();
    if s.name() != target.source().name() || t.name() != target.target().name() {
        return Err(Error::ShapeMismatch(format!(
            "{}: functors `{}` and `{}` are not parallel",
            raw.name,
            source.name(),
            target.name()
        )));
    }
    let mut comps = vec![None; s.num_objects()];
    for (o, m) in &raw.components {
        let o = s
            .object_by_name(o)
            .ok_or_else(|| Error::UnknownObject(o.clone()))?;
        let m = t
            .morphism_by_name(m)
            .ok_or_else(|| Error::BadEndpoints(format!("unknown morphism `{m}`")))?;
        comps[o] = Some(m);
    }
    let comps: Vec<Mor> = comps
        .into_iter()
        .enumerate()
        .map(|(o, c)| {
            c.ok_or_else(|| {
                Error::NotNatural(format!("{}: missing component at `{}`", raw.name, s.object_name(o)))
            })
        })
        .collect::<Result<_>>()?;
    let nat = NatTransformation::from_components(raw.name.clone(), source.clone(), target.clone(), comps);
    nat.check()?;
    if require_iso && !nat.is_iso() {
        return Err(Error::NotIso(raw.name.clone()));
    }
    Ok(nat)
}

/// Calls `visit` on every natural transformation `f => g` in a fixed order.
pub fn for_each_nat<V>(f: &FinFunctor, g: &FinFunctor, mut visit: V) -> usize
where
    V: FnMut(&[Mor]) -> bool,
{
    let s = f.source().clone();
    let t = f.target().clone();
    let n = s.num_objects();
    let mut comps = vec![0usize; n];
    let mut count = 0;
    fn rec<V: FnMut(&[Mor]) -> bool>(
        k: usize,
        s: &FinCategory,
        t: &FinCategory,
        f: &FinFunctor,
        g: &FinFunctor,
        comps: &mut Vec<Mor>,
        count: &mut usize,
        visit: &mut V,
    ) -> bool {
        if k == s.num_objects() {
            *count += 1;
            return visit(comps);
        }
        for &c in t.hom(f.obj(k), g.obj(k)) {
            comps[k] = c;
            // squares whose endpoints are both assigned
            let ok = s.morphisms().all(|m| {
                let (x, y) = (s.dom(m), s.cod(m));
                if x > k || y > k {
                    return true;
                }
                t.compose(g.mor(m), comps[x]) == t.compose(comps[y], f.mor(m))
            });
            if ok && !rec(k + 1, s, t, f, g, comps, count, visit) {
                return false;
            }
        }
        true
    }
    rec(0, &s, &t, f, g, &mut comps, &mut count, &mut visit);
    count
}
