//! Finite 2-limits of pseudofunctors `c: K -> CAT`, where `K` is the
//! explicitly built opposite of a finite category.
//!
//! An object is a family `X_k` together with invertible
//! `theta_m: X_q -> c(m)X_p` for every `m: p -> q` of `K`, identities
//! included, subject to
//!
//! * A: `unit_q(X_q) . theta_(id_q) = id`,
//! * B: `c(m)(theta_m2) . theta_m = comp(m, m2)(X_p2) . theta_(m.m2)` for
//!   `m2: p2 -> p`.
//!
//! Morphisms are the families `h_k` with
//! `h_q = (theta^Y_m)^-1 . c(m)(h_p) . theta^X_m`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, FinCategory, FinFunctor, Mor, MorphismData, NatTransformation, Obj};
use crate::pseudo::{PseudoFunctor, PseudoNatTransformation};
use crate::setdiag::{lim_set_by, LimSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwoLimObject {
    pub xs: Vec<Obj>,
    /// One component per morphism of the index.
    pub theta: Vec<Mor>,
}

/// Why a candidate family is not an object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConditionFailure {
    NotInvertible { m: Mor },
    A { q: Obj },
    B { m: Mor, m2: Mor },
}

fn check_endpoints(c: &PseudoFunctor, xs: &[Obj], theta: &[Mor]) -> Result<()> {
    let k = &**c.index();
    if xs.len() != k.num_objects() || theta.len() != k.num_morphisms() {
        return Err(Error::BadEndpoints("family is not total".into()));
    }
    for q in k.objects() {
        if xs[q] >= c.at(q).num_objects() {
            return Err(Error::BadEndpoints(format!("no object {} in `{}`", xs[q], c.at(q).name())));
        }
    }
    for m in k.morphisms() {
        let (p, q) = (k.dom(m), k.cod(m));
        let cq = &**c.at(q);
        let t = theta[m];
        if t >= cq.num_morphisms() || cq.dom(t) != xs[q] || cq.cod(t) != c.on(m).obj(xs[p]) {
            return Err(Error::BadEndpoints(format!("theta at `{}`", k.mor_name(m))));
        }
    }
    Ok(())
}

fn condition_a(c: &PseudoFunctor, xs: &[Obj], theta: &[Mor], q: Obj) -> bool {
    let k = c.index();
    let cq = c.at(q);
    cq.compose(c.unit(q, xs[q]), theta[k.identity(q)]) == cq.identity(xs[q])
}

fn condition_b(c: &PseudoFunctor, xs: &[Obj], theta: &[Mor], m: Mor, m2: Mor) -> bool {
    let k = c.index();
    let q = k.cod(m);
    let cq = c.at(q);
    let lhs = cq.compose(c.on(m).mor(theta[m2]), theta[m]);
    let rhs = cq.compose(c.comp(m, m2, xs[k.dom(m2)]), theta[k.compose(m, m2)]);
    lhs == rhs
}

/// Replays conditions A and B, and invertibility, on a candidate.
pub fn check_object_conditions(c: &PseudoFunctor, xs: &[Obj], theta: &[Mor]) -> Result<Option<ConditionFailure>> {
    check_endpoints(c, xs, theta)?;
    let k = &**c.index();
    for m in k.morphisms() {
        if !c.at(k.cod(m)).is_iso(theta[m]) {
            return Ok(Some(ConditionFailure::NotInvertible { m }));
        }
    }
    for q in k.objects() {
        if !condition_a(c, xs, theta, q) {
            return Ok(Some(ConditionFailure::A { q }));
        }
    }
    for (m, m2) in k.composable_pairs() {
        if !condition_b(c, xs, theta, m, m2) {
            return Ok(Some(ConditionFailure::B { m, m2 }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
struct LimHom {
    set: LimSet,
    base: Mor,
}

#[derive(Debug, Clone)]
pub struct TwoLimCategory {
    base: Arc<FinCategory>,
    diagram: PseudoFunctor,
    objects: Vec<TwoLimObject>,
    lookup: HashMap<TwoLimObject, Obj>,
    homs: Vec<LimHom>,
    families: Vec<(Obj, Obj, usize)>,
}

enum Step {
    Object(Obj),
    Morphism(Mor, Vec<(Mor, Mor)>, bool),
}

/// All objects of the 2-limit, in the deterministic search order.
pub fn enumerate_lim_objects(c: &PseudoFunctor) -> Vec<TwoLimObject> {
    let k = &**c.index();
    // morphisms are assigned right after the later of their endpoints
    let mut steps = Vec::new();
    let mut position = vec![0usize; k.num_morphisms()];
    let mut order = Vec::new();
    for q in k.objects() {
        steps.push(Step::Object(q));
        for m in k.morphisms() {
            if k.dom(m).max(k.cod(m)) == q {
                position[m] = order.len();
                order.push(m);
                steps.push(Step::Morphism(m, Vec::new(), k.is_identity(m)));
            }
        }
    }
    let mut checks: Vec<Vec<(Mor, Mor)>> = vec![Vec::new(); k.num_morphisms()];
    for (m, m2) in k.composable_pairs() {
        let last = [m, m2, k.compose(m, m2)]
            .into_iter()
            .max_by_key(|&x| position[x])
            .unwrap();
        checks[last].push((m, m2));
    }
    for s in &mut steps {
        if let Step::Morphism(m, v, _) = s {
            *v = std::mem::take(&mut checks[*m]);
        }
    }

    fn rec(
        c: &PseudoFunctor,
        steps: &[Step],
        at: usize,
        xs: &mut Vec<Obj>,
        theta: &mut Vec<Mor>,
        out: &mut Vec<TwoLimObject>,
    ) {
        if at == steps.len() {
            out.push(TwoLimObject {
                xs: xs.clone(),
                theta: theta.clone(),
            });
            return;
        }
        let k = c.index();
        match &steps[at] {
            Step::Object(q) => {
                for x in c.at(*q).objects() {
                    xs[*q] = x;
                    rec(c, steps, at + 1, xs, theta, out);
                }
            }
            Step::Morphism(m, checks, is_id) => {
                let (p, q) = (k.dom(*m), k.cod(*m));
                let cq = c.at(q);
                let target = c.on(*m).obj(xs[p]);
                for &t in cq.hom(xs[q], target) {
                    if !cq.is_iso(t) {
                        continue;
                    }
                    theta[*m] = t;
                    if *is_id && !condition_a(c, xs, theta, q) {
                        continue;
                    }
                    if checks.iter().all(|&(a, b)| condition_b(c, xs, theta, a, b)) {
                        rec(c, steps, at + 1, xs, theta, out);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut xs = vec![0; k.num_objects()];
    let mut theta = vec![0; k.num_morphisms()];
    rec(c, &steps, 0, &mut xs, &mut theta, &mut out);
    out
}

/// Builds the 2-limit of `c` by exhaustive enumeration.
pub fn build_2lim(c: &PseudoFunctor) -> Result<TwoLimCategory> {
    let objects = enumerate_lim_objects(c);
    build_2lim_from(c, objects)
}

fn object_name(c: &PseudoFunctor, o: &TwoLimObject) -> String {
    let k = c.index();
    let xs: Vec<&str> = o.xs.iter().enumerate().map(|(q, &x)| c.at(q).object_name(x)).collect();
    let th: Vec<&str> = k
        .morphisms()
        .filter(|&m| !k.is_identity(m))
        .map(|m| c.at(k.cod(m)).mor_name(o.theta[m]))
        .collect();
    if th.is_empty() {
        format!("<{}>", xs.join(","))
    } else {
        format!("<{};{}>", xs.join(","), th.join(","))
    }
}

fn build_2lim_from(c: &PseudoFunctor, objects: Vec<TwoLimObject>) -> Result<TwoLimCategory> {
    let k = c.index().clone();
    // theta at identities is forced by condition A, so names stay unique
    let names: Vec<String> = objects.iter().map(|o| object_name(c, o)).collect();
    let lookup = objects.iter().cloned().enumerate().map(|(o, x)| (x, o)).collect();
    let n = objects.len();
    let mut homs = Vec::with_capacity(n * n);
    let mut families = Vec::new();
    let mut morphisms = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (&objects[a], &objects[b]);
            let sizes: Vec<usize> = k.objects().map(|q| c.at(q).hom(x.xs[q], y.xs[q]).len()).collect();
            let set = lim_set_by(&k, &sizes, |m, e| {
                let (p, q) = (k.dom(m), k.cod(m));
                let cq = &**c.at(q);
                let h = c.at(p).hom(x.xs[p], y.xs[p])[e];
                let back = cq.inverse(y.theta[m]).expect("theta is invertible");
                let image = cq.compose(back, cq.compose(c.on(m).mor(h), x.theta[m]));
                cq.hom(x.xs[q], y.xs[q]).binary_search(&image).expect("image stays in the hom-set")
            });
            let base = morphisms.len();
            for (idx, fam) in set.families().iter().enumerate() {
                let parts: Vec<&str> = fam
                    .iter()
                    .enumerate()
                    .map(|(q, &e)| c.at(q).mor_name(c.at(q).hom(x.xs[q], y.xs[q])[e]))
                    .collect();
                morphisms.push(MorphismData {
                    name: format!("{{{}}}:{}>{}", parts.join(","), names[a], names[b]),
                    dom: a,
                    cod: b,
                });
                families.push((a, b, idx));
            }
            homs.push(LimHom { set, base });
        }
    }
    let mut lim = TwoLimCategory {
        base: Arc::new(FinCategory::build("pending", Vec::new(), Vec::new(), Vec::new(), |_, _| unreachable!())?),
        diagram: c.clone(),
        objects,
        lookup,
        homs,
        families,
    };
    let identity: Vec<Mor> = (0..n)
        .map(|a| {
            let ids: Vec<Mor> = k.objects().map(|q| c.at(q).identity(lim.objects[a].xs[q])).collect();
            lim.family_class(a, a, &ids).expect("identity family is compatible")
        })
        .collect();
    let base = FinCategory::build(format!("lim {}", c.name()), names, morphisms, identity, |g, f| {
        let (a, _, _) = lim.families[f];
        let (_, d, _) = lim.families[g];
        let (hf, hg) = (lim.family(f), lim.family(g));
        let comp: Vec<Mor> = k.objects().map(|q| c.at(q).compose(hg[q], hf[q])).collect();
        lim.family_class(a, d, &comp)
            .ok_or_else(|| Error::InvariantBreach("composite family is not compatible".into()))
    })?;
    lim.base = Arc::new(base);
    Ok(lim)
}

impl TwoLimCategory {
    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn diagram(&self) -> &PseudoFunctor {
        &self.diagram
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        self.diagram.index()
    }

    pub fn objects(&self) -> &[TwoLimObject] {
        &self.objects
    }

    pub fn object(&self, o: Obj) -> &TwoLimObject {
        &self.objects[o]
    }

    pub fn find_object(&self, x: &TwoLimObject) -> Option<Obj> {
        self.lookup.get(x).copied()
    }

    /// The compatible families `a -> b`, as element indices into the
    /// component hom lists.
    pub fn lim_hom_family(&self, a: Obj, b: Obj) -> &LimSet {
        &self.homs[a * self.objects.len() + b].set
    }

    pub fn endpoints(&self, f: Mor) -> (Obj, Obj) {
        let (a, b, _) = self.families[f];
        (a, b)
    }

    /// Components of the morphism `f`.
    pub fn family(&self, f: Mor) -> Vec<Mor> {
        let (a, b, idx) = self.families[f];
        let (x, y) = (&self.objects[a], &self.objects[b]);
        let c = &self.diagram;
        self.lim_hom_family(a, b)
            .family(idx)
            .iter()
            .enumerate()
            .map(|(q, &e)| c.at(q).hom(x.xs[q], y.xs[q])[e])
            .collect()
    }

    /// The morphism with the given components, if they are compatible.
    pub fn family_class(&self, a: Obj, b: Obj, components: &[Mor]) -> Option<Mor> {
        let (x, y) = (&self.objects[a], &self.objects[b]);
        let c = &self.diagram;
        let mut idx = Vec::with_capacity(components.len());
        for (q, &h) in components.iter().enumerate() {
            idx.push(c.at(q).hom(x.xs[q], y.xs[q]).binary_search(&h).ok()?);
        }
        let hom = &self.homs[a * self.objects.len() + b];
        hom.set.find(&idx).map(|k| hom.base + k)
    }

    pub fn projection(&self, q: Obj) -> FinFunctor {
        let c = &self.diagram;
        let base = &self.base;
        FinFunctor::from_maps(
            format!("pi_{}", self.index().object_name(q)),
            base.clone(),
            c.at(q).clone(),
            self.objects.iter().map(|o| o.xs[q]).collect(),
            base.morphisms().map(|f| self.family(f)[q]).collect(),
        )
    }

    /// The canonical cell `pi_q => c(m) . pi_p` for `m: p -> q`.
    pub fn cell(&self, m: Mor) -> NatTransformation {
        let k = self.index();
        let (p, q) = (k.dom(m), k.cod(m));
        NatTransformation::from_components(
            format!("theta_{}", k.mor_name(m)),
            self.projection(q),
            self.diagram.on(m).after(&self.projection(p)),
            self.objects.iter().map(|o| o.theta[m]).collect(),
        )
    }

    pub fn universal_cone(&self) -> PseudoCone {
        let k = self.index();
        PseudoCone {
            name: "pi".into(),
            source: self.base.clone(),
            legs: k.objects().map(|q| self.projection(q)).collect(),
            cells: k
                .morphisms()
                .map(|m| Some(self.objects.iter().map(|o| o.theta[m]).collect()))
                .collect(),
        }
    }
}

/// A pseudonatural cone `rho_k: D -> c(k)` with invertible cells
/// `gamma_m: rho_q => c(m) . rho_p`.
#[derive(Debug, Clone)]
pub struct PseudoCone {
    pub name: String,
    pub source: Arc<FinCategory>,
    pub legs: Vec<FinFunctor>,
    /// Per index morphism, components over `D`; `None` = identities.
    pub cells: Vec<Option<Vec<Mor>>>,
}

impl PseudoCone {
    pub fn cell(&self, c: &PseudoFunctor, m: Mor, d: Obj) -> Mor {
        match &self.cells[m] {
            Some(v) => v[d],
            None => c.at(c.index().cod(m)).identity(self.legs[c.index().cod(m)].obj(d)),
        }
    }

    /// The object `({rho_k d}, {gamma_m d})` of the 2-limit, as data.
    pub fn at(&self, c: &PseudoFunctor, d: Obj) -> TwoLimObject {
        let k = c.index();
        TwoLimObject {
            xs: k.objects().map(|q| self.legs[q].obj(d)).collect(),
            theta: k.morphisms().map(|m| self.cell(c, m, d)).collect(),
        }
    }

    pub fn validate(&self, c: &PseudoFunctor) -> Result<()> {
        let k = &**c.index();
        let bad = |msg: String| Error::NotACone(format!("{}: {msg}", self.name));
        if self.legs.len() != k.num_objects() || self.cells.len() != k.num_morphisms() {
            return Err(bad("not total".into()));
        }
        for q in k.objects() {
            let l = &self.legs[q];
            if l.source().name() != self.source.name() || l.target().name() != c.at(q).name() {
                return Err(bad(format!("leg at `{}` has the wrong endpoints", k.object_name(q))));
            }
            l.check()?;
        }
        let d = &*self.source;
        for m in k.morphisms() {
            let (p, q) = (k.dom(m), k.cod(m));
            let cq = &**c.at(q);
            for x in d.objects() {
                let g = self.cell(c, m, x);
                if cq.dom(g) != self.legs[q].obj(x) || cq.cod(g) != c.on(m).obj(self.legs[p].obj(x)) {
                    return Err(bad(format!("cell at `{}`, `{}` has the wrong endpoints", k.mor_name(m), d.object_name(x))));
                }
            }
            for h in d.morphisms() {
                let (x, y) = (d.dom(h), d.cod(h));
                let lhs = cq.compose(c.on(m).mor(self.legs[p].mor(h)), self.cell(c, m, x));
                let rhs = cq.compose(self.cell(c, m, y), self.legs[q].mor(h));
                if lhs != rhs {
                    return Err(bad(format!("cell at `{}` not natural on `{}`", k.mor_name(m), d.mor_name(h))));
                }
            }
        }
        for x in d.objects() {
            let o = self.at(c, x);
            let verdict = check_object_conditions(c, &o.xs, &o.theta).map_err(|e| bad(e.to_string()))?;
            if let Some(why) = verdict {
                return Err(bad(format!("at `{}`: {why:?}", d.object_name(x))));
            }
        }
        Ok(())
    }
}

/// The functor into the 2-limit determined by a cone.
pub fn strong_factor_lim(lim: &TwoLimCategory, cone: &PseudoCone) -> Result<FinFunctor> {
    let c = lim.diagram();
    cone.validate(c)?;
    let d = &cone.source;
    let k = c.index();
    let mut obj_map = Vec::with_capacity(d.num_objects());
    for x in d.objects() {
        let o = cone.at(c, x);
        obj_map.push(
            lim.find_object(&o)
                .ok_or_else(|| Error::NotACone(format!("{}: `{}` is not sent to an object", cone.name, d.object_name(x))))?,
        );
    }
    let mut mor_map = Vec::with_capacity(d.num_morphisms());
    for h in d.morphisms() {
        let comps: Vec<Mor> = k.objects().map(|q| cone.legs[q].mor(h)).collect();
        mor_map.push(lim.family_class(obj_map[d.dom(h)], obj_map[d.cod(h)], &comps).ok_or_else(|| {
            Error::NotACone(format!("{}: `{}` is not sent to a compatible family", cone.name, d.mor_name(h)))
        })?);
    }
    let f = FinFunctor::from_maps(format!("factor_{}", cone.name), d.clone(), lim.base().clone(), obj_map, mor_map);
    f.check()?;
    for q in k.objects() {
        if !lim.projection(q).after(&f).same_maps(&cone.legs[q]) {
            return Err(Error::InvariantBreach(format!(
                "factorization does not restrict to the leg at `{}`",
                k.object_name(q)
            )));
        }
    }
    Ok(f)
}

/// Counts functors `G: D -> lim` with `pi_q . G = rho_q` and whose cells
/// match the cone's, or `None` when there are more than `limit` candidates.
pub fn count_strict_factorizations_lim(lim: &TwoLimCategory, cone: &PseudoCone, limit: usize) -> Option<usize> {
    let c = lim.diagram();
    let k = c.index();
    let all = enumerate_functors(&cone.source, lim.base(), limit)?;
    let projections: Vec<FinFunctor> = k.objects().map(|q| lim.projection(q)).collect();
    Some(
        all.iter()
            .filter(|g| {
                k.objects().all(|q| projections[q].after(g).same_maps(&cone.legs[q]))
                    && cone
                        .source
                        .objects()
                        .all(|x| k.morphisms().all(|m| lim.object(g.obj(x)).theta[m] == cone.cell(c, m, x)))
            })
            .count(),
    )
}

/// Applies `u: c => c2` to an object of the 2-limit of `c`.
pub fn map_lim_object(c: &PseudoFunctor, c2: &PseudoFunctor, u: &PseudoNatTransformation, x: &TwoLimObject) -> TwoLimObject {
    let k = c.index();
    TwoLimObject {
        xs: k.objects().map(|q| u.components[q].obj(x.xs[q])).collect(),
        theta: k
            .morphisms()
            .map(|m| {
                let (p, q) = (k.dom(m), k.cod(m));
                c2.at(q).compose(u.cell(c, c2, m, x.xs[p]), u.components[q].mor(x.theta[m]))
            })
            .collect(),
    }
}

/// The functor between 2-limits induced by `u: c => c2`.
pub fn induced_functor_lim(from: &TwoLimCategory, to: &TwoLimCategory, u: &PseudoNatTransformation) -> Result<FinFunctor> {
    let (c, c2) = (from.diagram(), to.diagram());
    u.validate(c, c2)?;
    induced_functor_lim_unchecked(from, to, u)
}

/// As [`induced_functor_lim`], trusting that `u` has been validated.
pub fn induced_functor_lim_unchecked(
    from: &TwoLimCategory,
    to: &TwoLimCategory,
    u: &PseudoNatTransformation,
) -> Result<FinFunctor> {
    let (c, c2) = (from.diagram(), to.diagram());
    let mut obj_map = Vec::with_capacity(from.objects().len());
    for x in from.objects() {
        let y = map_lim_object(c, c2, u, x);
        obj_map.push(
            to.find_object(&y)
                .ok_or_else(|| Error::IncompatibleCells("image of an object violates the limit conditions".into()))?,
        );
    }
    let base = from.base();
    let mut mor_map = Vec::with_capacity(base.num_morphisms());
    for f in base.morphisms() {
        let (a, b) = from.endpoints(f);
        let comps: Vec<Mor> = from
            .family(f)
            .iter()
            .enumerate()
            .map(|(q, &h)| u.components[q].mor(h))
            .collect();
        mor_map.push(
            to.family_class(obj_map[a], obj_map[b], &comps)
                .ok_or_else(|| Error::IncompatibleCells("image of a family is not compatible".into()))?,
        );
    }
    let f = FinFunctor::from_maps("induced", base.clone(), to.base().clone(), obj_map, mor_map);
    f.check()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{validate_category, RawCategory};

    fn cat(raw: RawCategory) -> Arc<FinCategory> {
        Arc::new(validate_category(&raw).unwrap())
    }

    fn discrete(name: &str, objs: &[&str]) -> Arc<FinCategory> {
        cat(RawCategory::new(name).objects(objs))
    }

    /// `c` on the opposite of `0 -f-> 1`: `c(1)` discrete on `top`,
    /// `c(0)` discrete on `bottom`, `c(f): c(1) -> c(0)` given by `image`.
    fn arrow_op(top: &[&str], bottom: &[&str], image: &[usize]) -> PseudoFunctor {
        let j = cat(RawCategory::new("Two").objects(&["0", "1"]).mor("f", "0", "1"));
        let k = Arc::new(j.opposite());
        let c0 = discrete("C0", bottom);
        let c1 = discrete("C1", top);
        let f = k.morphism_by_name("f").unwrap();
        let cf = FinFunctor::from_maps("cf", c1.clone(), c0.clone(), image.to_vec(), image.iter().map(|&x| c0.identity(x)).collect());
        let mut on = vec![FinFunctor::identity(&c0), FinFunctor::identity(&c1), cf.clone()];
        on[f] = cf;
        let c = PseudoFunctor::strict("c", k, vec![c0, c1], on);
        c.validate().unwrap();
        c
    }

    #[test]
    fn terminal_index_is_isomorphic_to_the_value() {
        let one = cat(RawCategory::new("One").object("*"));
        let v = cat(RawCategory::new("V").objects(&["x", "y"]).mor("u", "x", "y"));
        let c = PseudoFunctor::constant(&one, &v);
        let lim = build_2lim(&c).unwrap();
        let pi = lim.projection(0);
        pi.check().unwrap();
        assert!(pi.inverse().is_some());
        lim.base().check_laws().unwrap();
    }

    #[test]
    fn arrow_example_has_one_object() {
        let c = arrow_op(&["P"], &["A", "B"], &[0]);
        let lim = build_2lim(&c).unwrap();
        assert_eq!(lim.objects().len(), 1);
        let o = lim.object(0);
        assert_eq!(o.xs, vec![0, 0]);
        assert_eq!(lim.base().num_morphisms(), 1);
        assert_eq!(lim.lim_hom_family(0, 0).len(), 1);
        assert_eq!(check_object_conditions(&c, &o.xs, &o.theta).unwrap(), None);
    }

    #[test]
    fn parallel_pair_with_disagreeing_actions_is_empty() {
        let j = cat(RawCategory::new("Par").objects(&["0", "1"]).mor("f", "0", "1").mor("g", "0", "1"));
        let k = Arc::new(j.opposite());
        let c0 = discrete("C0", &["A", "B"]);
        let c1 = discrete("C1", &["P"]);
        let mut on = Vec::new();
        for m in k.morphisms() {
            let f = match k.mor_name(m) {
                "f" => FinFunctor::constant(&c1, &c0, 0),
                "g" => FinFunctor::constant(&c1, &c0, 1),
                _ => FinFunctor::identity(if k.dom(m) == 0 { &c0 } else { &c1 }),
            };
            on.push(f);
        }
        let c = PseudoFunctor::strict("c", k, vec![c0, c1], on);
        c.validate().unwrap();
        assert!(build_2lim(&c).unwrap().objects().is_empty());
    }

    #[test]
    fn mutated_theta_is_detected() {
        // J = 0 -> 1 -> 2 with constant value Z/2; theta on f and g is
        // free and forces theta on the composite, so flipping it breaks B.
        let j = cat(RawCategory::new("Chain")
            .objects(&["0", "1", "2"])
            .mor("f", "0", "1")
            .mor("g", "1", "2")
            .mor("gf", "0", "2")
            .compose("g", "f", "gf"));
        let k = Arc::new(j.opposite());
        let z2 = cat(RawCategory::new("Z2").object("*").mor("e", "*", "*").compose("e", "e", "id_*"));
        let c = PseudoFunctor::constant(&k, &z2);
        let lim = build_2lim(&c).unwrap();
        assert_eq!(lim.objects().len(), 4);
        let mut o = lim.object(0).clone();
        let gf = k.morphism_by_name("gf").unwrap();
        let e = z2.morphism_by_name("e").unwrap();
        o.theta[gf] = z2.compose(e, o.theta[gf]);
        let verdict = check_object_conditions(&c, &o.xs, &o.theta).unwrap();
        assert!(matches!(verdict, Some(ConditionFailure::B { .. })));
        for ob in lim.objects() {
            assert_eq!(check_object_conditions(&c, &ob.xs, &ob.theta).unwrap(), None);
        }
        lim.base().check_laws().unwrap();
        // projections are jointly conservative: families of isos are isos
        for f in lim.base().morphisms() {
            let fam = lim.family(f);
            let all_iso = fam.iter().all(|&h| z2.is_iso(h));
            assert_eq!(all_iso, lim.base().is_iso(f));
        }
    }

    #[test]
    fn cones_factor() {
        let c = arrow_op(&["P"], &["A", "B"], &[0]);
        let lim = build_2lim(&c).unwrap();
        let pi = lim.universal_cone();
        let id = strong_factor_lim(&lim, &pi).unwrap();
        assert!(id.same_maps(&FinFunctor::identity(lim.base())));

        let one = discrete("One", &["*"]);
        let cone = PseudoCone {
            name: "pick".into(),
            source: one.clone(),
            legs: vec![FinFunctor::constant(&one, c.at(0), 0), FinFunctor::constant(&one, c.at(1), 0)],
            cells: vec![None; 3],
        };
        let f = strong_factor_lim(&lim, &cone).unwrap();
        assert_eq!(f.obj(0), 0);
        assert_eq!(count_strict_factorizations_lim(&lim, &cone, 200), Some(1));

        let wrong = PseudoCone {
            legs: vec![FinFunctor::constant(&one, c.at(0), 1), FinFunctor::constant(&one, c.at(1), 0)],
            ..cone
        };
        assert!(matches!(strong_factor_lim(&lim, &wrong), Err(Error::NotACone(_))));
    }

    #[test]
    fn induced_functors() {
        let c = arrow_op(&["P"], &["A", "B"], &[0]);
        let lim = build_2lim(&c).unwrap();
        let id = PseudoNatTransformation::identity(&c);
        let f = induced_functor_lim(&lim, &lim, &id).unwrap();
        assert!(f.same_maps(&FinFunctor::identity(lim.base())));

        // collapse A and B
        let c2 = arrow_op(&["P"], &["A"], &[0]);
        let lim2 = build_2lim(&c2).unwrap();
        let (b0, b1) = (c.at(0).clone(), c2.at(0).clone());
        let u = PseudoNatTransformation {
            components: vec![
                FinFunctor::from_maps("u0", b0.clone(), b1.clone(), vec![0, 0], vec![b1.identity(0); 2]),
                FinFunctor::identity(c.at(1)),
            ],
            cells: vec![None; 3],
        };
        let g = induced_functor_lim(&lim, &lim2, &u).unwrap();
        assert_eq!(g.obj(0), 0);
    }
}
