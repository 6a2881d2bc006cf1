//! Filtered 2-colimits of pseudofunctors `b: I -> CAT`.
//!
//! Objects are pairs `(i, X)` with `X` in `b(i)`. A morphism `(i, X) -> (i2, Y)`
//! is a class of representatives `h: b(s)X -> b(s2)Y` in `b(m)`, indexed by
//! cospans `(m, s, s2)` of the cospan category `I_(i,i2)`; the action of
//! `t: m -> m2` is `comp(t,s2)(Y)^-1 . b(t)h . comp(t,s)(X)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{
    cocone_and_equalize, cospan_category_with, enumerate_functors, for_each_nat, is_filtered, CospanCategory,
    FilteredWitness, FinCategory, FinFunctor, Mor, MorphismData, NatTransformation, Obj,
};
use crate::pseudo::{PseudoFunctor, PseudoNatTransformation};
use crate::setdiag::{colim_set, ColimSet, SetDiagram};

#[derive(Debug, Clone, Copy, Default)]
pub struct ColimOptions {
    /// Build even when the index is not filtered. Composition may then fail.
    pub skip_filter_check: bool,
}

#[derive(Debug, Clone)]
struct HomData {
    colim: ColimSet,
    /// Per cospan object, the hom list it contributes.
    elems: Vec<Vec<Mor>>,
    base: Mor,
}

/// A representative of a hom class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rep {
    /// Object of the cospan category of the two feet.
    pub cospan: Obj,
    /// `(m, s, s2)`.
    pub apex: (Obj, Mor, Mor),
    /// A morphism of `b(m)`.
    pub h: Mor,
}

#[derive(Debug, Clone)]
pub struct TwoColimCategory {
    base: Arc<FinCategory>,
    diagram: PseudoFunctor,
    witness: FilteredWitness,
    objects: Vec<(Obj, Obj)>,
    offsets: Vec<usize>,
    cospans: Vec<Arc<CospanCategory>>,
    homs: Vec<HomData>,
    classes: Vec<(Obj, Obj, usize)>,
}

pub fn build_2colim(b: &PseudoFunctor) -> Result<TwoColimCategory> {
    build_2colim_with(b, ColimOptions::default())
}

pub fn build_2colim_with(b: &PseudoFunctor, opts: ColimOptions) -> Result<TwoColimCategory> {
    let ix = b.index().clone();
    let witness = is_filtered(&ix);
    if !witness.verdict && !opts.skip_filter_check {
        return Err(Error::NotFiltered(
            witness.counterexample.as_ref().map(|v| v.describe(&ix)).unwrap_or_default(),
        ));
    }
    let ni = ix.num_objects();
    let mut offsets = Vec::with_capacity(ni + 1);
    let mut objects = Vec::new();
    let mut names = Vec::new();
    for i in ix.objects() {
        offsets.push(objects.len());
        for x in b.at(i).objects() {
            objects.push((i, x));
            names.push(format!("({},{})", ix.object_name(i), b.at(i).object_name(x)));
        }
    }
    offsets.push(objects.len());
    let mut cospans = Vec::with_capacity(ni * ni);
    for i in ix.objects() {
        for i2 in ix.objects() {
            cospans.push(Arc::new(cospan_category_with(&ix, &witness, i, i2)?));
        }
    }

    let mut colim = TwoColimCategory {
        base: Arc::new(FinCategory::build("pending", Vec::new(), Vec::new(), Vec::new(), |_, _| unreachable!())?),
        diagram: b.clone(),
        witness,
        objects,
        offsets,
        cospans,
        homs: Vec::new(),
        classes: Vec::new(),
    };

    let n = colim.objects.len();
    let mut morphisms = Vec::new();
    for a in 0..n {
        for c in 0..n {
            let hom = colim.compute_hom(a, c, morphisms.len());
            for (k, class) in hom.colim.classes().iter().enumerate() {
                let (o, e) = class[0];
                let cs = colim.cospan_of(a, c);
                let (m, _, _) = cs.apexes[o];
                morphisms.push(MorphismData {
                    name: format!(
                        "[{}@{}]:{}>{}",
                        b.at(m).mor_name(hom.elems[o][e]),
                        cs.category.object_name(o),
                        names[a],
                        names[c]
                    ),
                    dom: a,
                    cod: c,
                });
                colim.classes.push((a, c, k));
            }
            colim.homs.push(hom);
        }
    }
    let mut identity = Vec::with_capacity(n);
    for a in 0..n {
        let (i, x) = colim.objects[a];
        let cs = colim.cospan_of(a, a);
        let id = ix.identity(i);
        let o = cs.find(i, id, id).expect("identity cospan exists");
        let h = b.at(i).identity(b.on(id).obj(x));
        identity.push(colim.class_of(a, a, o, h)?);
    }
    let name = format!("colim {}", b.name());
    let base = FinCategory::build(name, names, morphisms, identity, |g, f| {
        let (a, c1, kf) = colim.classes[f];
        let (_, c2, kg) = colim.classes[g];
        let r1 = colim.rep_of(a, c1, kf);
        let r2 = colim.rep_of(c1, c2, kg);
        colim.compose_reps(a, c1, c2, r1, r2)
    })?;
    colim.base = Arc::new(base);
    Ok(colim)
}

impl TwoColimCategory {
    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn diagram(&self) -> &PseudoFunctor {
        &self.diagram
    }

    pub fn witness(&self) -> &FilteredWitness {
        &self.witness
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        self.diagram.index()
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    /// The object `(i, x)`.
    pub fn object(&self, i: Obj, x: Obj) -> Obj {
        self.offsets[i] + x
    }

    pub fn object_data(&self, o: Obj) -> (Obj, Obj) {
        self.objects[o]
    }

    pub fn cospan(&self, i: Obj, i2: Obj) -> &CospanCategory {
        &self.cospans[i * self.index().num_objects() + i2]
    }

    fn cospan_of(&self, a: Obj, c: Obj) -> &CospanCategory {
        self.cospan(self.objects[a].0, self.objects[c].0)
    }

    fn hom(&self, a: Obj, c: Obj) -> &HomData {
        &self.homs[a * self.objects.len() + c]
    }

    /// The quotient hom-set between two objects.
    pub fn hom_set(&self, a: Obj, c: Obj) -> &ColimSet {
        &self.hom(a, c).colim
    }

    /// The hom list of `b(m)` contributed by one cospan object.
    pub fn hom_elements(&self, a: Obj, c: Obj, cospan: Obj) -> &[Mor] {
        &self.hom(a, c).elems[cospan]
    }

    fn compute_hom(&self, a: Obj, c: Obj, base: Mor) -> HomData {
        let b = &self.diagram;
        let (_, x) = self.objects[a];
        let (_, y) = self.objects[c];
        let cs = self.cospan_of(a, c);
        let elems: Vec<Vec<Mor>> = cs
            .apexes
            .iter()
            .map(|&(m, s, s2)| b.at(m).hom(b.on(s).obj(x), b.on(s2).obj(y)).to_vec())
            .collect();
        let sizes = elems.iter().map(Vec::len).collect();
        let cat = &cs.category;
        let actions = cat
            .morphisms()
            .map(|e| {
                let (o1, o2) = (cat.dom(e), cat.cod(e));
                let (_, s, s2) = cs.apexes[o1];
                let t = cs.arrows[e];
                elems[o1]
                    .iter()
                    .map(|&h| {
                        let h2 = self.push(x, y, s, s2, t, h);
                        elems[o2].binary_search(&h2).expect("transport stays in the hom-set")
                    })
                    .collect()
            })
            .collect();
        let colim = colim_set(&SetDiagram::new_unchecked(cat, sizes, actions));
        HomData { colim, elems, base }
    }

    /// Pushes a representative at `(m, s, s2)` along `t: m -> m2`.
    fn push(&self, x: Obj, y: Obj, s: Mor, s2: Mor, t: Mor, h: Mor) -> Mor {
        let b = &self.diagram;
        let m2 = b.index().cod(t);
        let c = &**b.at(m2);
        let th = b.on(t).mor(h);
        c.compose(b.inv(m2, b.comp(t, s2, y)), c.compose(th, b.comp(t, s, x)))
    }

    /// Transports a representative of a hom `a -> c` along an index
    /// morphism out of its apex.
    pub fn transport(&self, a: Obj, c: Obj, rep: Rep, t: Mor) -> Rep {
        let ix = self.index();
        let (m, s, s2) = rep.apex;
        debug_assert_eq!(ix.dom(t), m);
        let h = self.push(self.objects[a].1, self.objects[c].1, s, s2, t, rep.h);
        let apex = (ix.cod(t), ix.compose(t, s), ix.compose(t, s2));
        let cospan = self.cospan_of(a, c).find(apex.0, apex.1, apex.2).expect("cospan exists");
        Rep { cospan, apex, h }
    }

    /// The class of `h` at the given cospan object of the hom `a -> c`.
    pub fn class_of(&self, a: Obj, c: Obj, cospan: Obj, h: Mor) -> Result<Mor> {
        let hom = self.hom(a, c);
        let pos = hom
            .elems
            .get(cospan)
            .and_then(|e| e.binary_search(&h).ok())
            .ok_or_else(|| {
                Error::BadRepresentative(format!(
                    "morphism {h} at cospan {cospan} is not in the hom-set of ({a}, {c})"
                ))
            })?;
        Ok(hom.base + hom.colim.class(cospan, pos))
    }

    /// The class of a representative given by its apex.
    pub fn colim_hom_class(&self, a: Obj, c: Obj, apex: (Obj, Mor, Mor), h: Mor) -> Result<Mor> {
        let cospan = self
            .cospan_of(a, c)
            .find(apex.0, apex.1, apex.2)
            .ok_or_else(|| Error::BadRepresentative(format!("no cospan {apex:?} for ({a}, {c})")))?;
        self.class_of(a, c, cospan, h)
    }

    fn rep_of(&self, a: Obj, c: Obj, k: usize) -> Rep {
        let hom = self.hom(a, c);
        let (o, e) = hom.colim.canon(k);
        Rep {
            cospan: o,
            apex: self.cospan_of(a, c).apexes[o],
            h: hom.elems[o][e],
        }
    }

    /// Endpoints of a morphism of the base.
    pub fn endpoints(&self, f: Mor) -> (Obj, Obj) {
        let (a, c, _) = self.classes[f];
        (a, c)
    }

    pub fn canonical_rep(&self, f: Mor) -> Rep {
        let (a, c, k) = self.classes[f];
        self.rep_of(a, c, k)
    }

    /// Every representative of the class `f`, in element order.
    pub fn members(&self, f: Mor) -> Vec<Rep> {
        let (a, c, k) = self.classes[f];
        let hom = self.hom(a, c);
        let cs = self.cospan_of(a, c);
        hom.colim
            .members(k)
            .iter()
            .map(|&(o, e)| Rep {
                cospan: o,
                apex: cs.apexes[o],
                h: hom.elems[o][e],
            })
            .collect()
    }

    /// Composes representatives `r2: c1 -> c2` after `r1: a -> c1` by moving
    /// both to a common vertex that equalizes the middle legs.
    pub fn compose_reps(&self, a: Obj, c1: Obj, c2: Obj, r1: Rep, r2: Rep) -> Result<Mor> {
        let ix = self.index();
        let (m1, _, s2) = r1.apex;
        let (m2, u, _) = r2.apex;
        let cocone = if self.witness.verdict {
            cocone_and_equalize(ix, &self.witness, &[m1, m2], &[(s2, u)])?
        } else {
            crate::fincat::find_cocone(ix, &[m1, m2], &[(s2, u)])?
        };
        let (v, w) = (cocone.leg(m1), cocone.leg(m2));
        let p1 = self.transport(a, c1, r1, v);
        let p2 = self.transport(c1, c2, r2, w);
        let m = cocone.vertex;
        let h = self.diagram.at(m).compose(p2.h, p1.h);
        self.colim_hom_class(a, c2, (m, p1.apex.1, p2.apex.2), h)
    }

    pub fn identity_class(&self, a: Obj) -> Mor {
        self.base.identity(a)
    }

    /// `sigma_i(f)` for a morphism `f` of `b(i)`.
    pub fn sigma(&self, i: Obj, f: Mor) -> Mor {
        let b = &self.diagram;
        let ci = b.at(i);
        let id = self.index().identity(i);
        self.colim_hom_class(self.object(i, ci.dom(f)), self.object(i, ci.cod(f)), (i, id, id), b.on(id).mor(f))
            .expect("image of a value morphism is a representative")
    }

    /// The injection `sigma_i: b(i) -> colim`.
    pub fn injection(&self, i: Obj) -> FinFunctor {
        let b = &self.diagram;
        let ix = self.index();
        let ci = b.at(i);
        let id = ix.identity(i);
        let fid = b.on(id);
        let obj_map: Vec<Obj> = ci.objects().map(|x| self.object(i, x)).collect();
        let mor_map = ci
            .morphisms()
            .map(|f| {
                self.colim_hom_class(obj_map[ci.dom(f)], obj_map[ci.cod(f)], (i, id, id), fid.mor(f))
                    .expect("image of a value morphism is a representative")
            })
            .collect();
        FinFunctor::from_maps(
            format!("sigma_{}", ix.object_name(i)),
            ci.clone(),
            self.base.clone(),
            obj_map,
            mor_map,
        )
    }

    /// Component at `x` of `theta_s: sigma_i => sigma_i2 . b(s)`.
    pub fn theta_component(&self, s: Mor, x: Obj) -> Mor {
        let b = &self.diagram;
        let ix = self.index();
        let (i, i2) = (ix.dom(s), ix.cod(s));
        let bx = b.on(s).obj(x);
        let h = b.inv(i2, b.unit(i2, bx));
        self.colim_hom_class(self.object(i, x), self.object(i2, bx), (i2, s, ix.identity(i2)), h)
            .expect("theta representative is valid")
    }

    pub fn theta(&self, s: Mor) -> NatTransformation {
        let ix = self.index();
        let (i, i2) = (ix.dom(s), ix.cod(s));
        let src = self.injection(i);
        let tgt = self.injection(i2).after(self.diagram.on(s));
        let comps = self.diagram.at(i).objects().map(|x| self.theta_component(s, x)).collect();
        NatTransformation::from_components(format!("theta_{}", ix.mor_name(s)), src, tgt, comps)
    }

    /// The injections and their cells as a cocone.
    pub fn universal_cocone(&self) -> PseudoCocone {
        let ix = self.index();
        PseudoCocone {
            name: "sigma".into(),
            target: self.base.clone(),
            legs: ix.objects().map(|i| self.injection(i)).collect(),
            cells: ix
                .morphisms()
                .map(|s| Some(self.diagram.at(ix.dom(s)).objects().map(|x| self.theta_component(s, x)).collect()))
                .collect(),
        }
    }

    /// Checks that every composable pair of classes composes to the same
    /// class for every choice of representatives.
    pub fn check_well_defined(&self) -> Result<()> {
        let base = &*self.base;
        for (g, f) in base.composable_pairs() {
            let expected = base.compose(g, f);
            let (a, c1) = self.endpoints(f);
            let (_, c2) = self.endpoints(g);
            let rg = self.members(g);
            for r1 in self.members(f) {
                for &r2 in &rg {
                    if self.compose_reps(a, c1, c2, r1, r2)? != expected {
                        return Err(Error::NonWellDefined(format!(
                            "composite of `{}` and `{}` depends on representatives",
                            base.mor_name(g),
                            base.mor_name(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A pseudonatural cocone `rho_i: b(i) -> T` with invertible cells
/// `theta_s: rho_i => rho_i2 . b(s)`.
#[derive(Debug, Clone)]
pub struct PseudoCocone {
    pub name: String,
    pub target: Arc<FinCategory>,
    pub legs: Vec<FinFunctor>,
    /// Per index morphism, components over `b(dom s)`; `None` = identities.
    pub cells: Vec<Option<Vec<Mor>>>,
}

impl PseudoCocone {
    pub fn cell(&self, b: &PseudoFunctor, s: Mor, x: Obj) -> Mor {
        match &self.cells[s] {
            Some(c) => c[x],
            None => self.target.identity(self.legs[b.index().dom(s)].obj(x)),
        }
    }

    pub fn validate(&self, b: &PseudoFunctor) -> Result<()> {
        let ix = &**b.index();
        let t = &*self.target;
        let bad = |msg: String| Error::NotACocone(format!("{}: {msg}", self.name));
        if self.legs.len() != ix.num_objects() || self.cells.len() != ix.num_morphisms() {
            return Err(bad("not total".into()));
        }
        for i in ix.objects() {
            let l = &self.legs[i];
            if l.source().name() != b.at(i).name() || l.target().name() != t.name() {
                return Err(bad(format!("leg at `{}` has the wrong endpoints", ix.object_name(i))));
            }
            l.check()?;
        }
        for s in ix.morphisms() {
            let (i, i2) = (ix.dom(s), ix.cod(s));
            let ci = &**b.at(i);
            let (li, li2, bs) = (&self.legs[i], &self.legs[i2], b.on(s));
            for x in ci.objects() {
                let c = self.cell(b, s, x);
                if t.dom(c) != li.obj(x) || t.cod(c) != li2.obj(bs.obj(x)) || !t.is_iso(c) {
                    return Err(bad(format!("cell at `{}`, `{}`", ix.mor_name(s), ci.object_name(x))));
                }
            }
            for h in ci.morphisms() {
                let (x, y) = (ci.dom(h), ci.cod(h));
                if t.compose(li2.mor(bs.mor(h)), self.cell(b, s, x)) != t.compose(self.cell(b, s, y), li.mor(h)) {
                    return Err(bad(format!("cell at `{}` not natural on `{}`", ix.mor_name(s), ci.mor_name(h))));
                }
            }
        }
        for i in ix.objects() {
            for x in b.at(i).objects() {
                let lhs = t.compose(self.legs[i].mor(b.unit(i, x)), self.cell(b, ix.identity(i), x));
                if lhs != t.identity(self.legs[i].obj(x)) {
                    return Err(bad(format!("unit equation fails at `{}`", ix.object_name(i))));
                }
            }
        }
        for (u, s) in ix.composable_pairs() {
            let us = ix.compose(u, s);
            let l = &self.legs[ix.cod(u)];
            for x in b.at(ix.dom(s)).objects() {
                let lhs = t.compose(l.mor(b.comp(u, s, x)), self.cell(b, us, x));
                let rhs = t.compose(self.cell(b, u, b.on(s).obj(x)), self.cell(b, s, x));
                if lhs != rhs {
                    return Err(bad(format!(
                        "composition equation fails at ({}, {})",
                        ix.mor_name(u),
                        ix.mor_name(s)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A functor out of the 2-colimit with comparison cells
/// `phi_i: rho_i => F . sigma_i`.
#[derive(Debug, Clone)]
pub struct LaxFactorization {
    pub target: Arc<FinCategory>,
    pub functor: FinFunctor,
    pub cells: Vec<NatTransformation>,
}

impl LaxFactorization {
    pub fn is_strong(&self) -> bool {
        self.cells
            .iter()
            .all(|c| c.components().iter().all(|&m| self.target.is_identity(m)))
    }

    /// `(F . theta^sigma_s) . phi_i = (phi_i2 . b(s)) . theta^rho_s` for all `s`.
    pub fn check_compatibility(&self, colim: &TwoColimCategory, rho: &PseudoCocone) -> Result<()> {
        let b = colim.diagram();
        let ix = b.index();
        let t = &*self.target;
        for s in ix.morphisms() {
            let (i, i2) = (ix.dom(s), ix.cod(s));
            for x in b.at(i).objects() {
                let lhs = t.compose(self.functor.mor(colim.theta_component(s, x)), self.cells[i].component(x));
                let rhs = t.compose(self.cells[i2].component(b.on(s).obj(x)), rho.cell(b, s, x));
                if lhs != rhs {
                    return Err(Error::InvariantBreach(format!(
                        "factorization incompatible with cells at `{}`",
                        ix.mor_name(s)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The strict factorization of a cocone through the 2-colimit.
pub fn strong_factor_colim(colim: &TwoColimCategory, rho: &PseudoCocone) -> Result<LaxFactorization> {
    let b = colim.diagram();
    rho.validate(b)?;
    let t = &*rho.target;
    let base = colim.base();
    let eval = |r: Rep, a: Obj, c: Obj| {
        let (_, x) = colim.object_data(a);
        let (_, y) = colim.object_data(c);
        let (m, s, s2) = r.apex;
        let back = t.inverse(rho.cell(b, s2, y)).expect("cocone cells are invertible");
        t.compose(back, t.compose(rho.legs[m].mor(r.h), rho.cell(b, s, x)))
    };
    let obj_map: Vec<Obj> = base
        .objects()
        .map(|a| {
            let (i, x) = colim.object_data(a);
            rho.legs[i].obj(x)
        })
        .collect();
    let mut mor_map = Vec::with_capacity(base.num_morphisms());
    for f in base.morphisms() {
        let (a, c) = colim.endpoints(f);
        let members = colim.members(f);
        let value = eval(members[0], a, c);
        if let Some(r) = members.iter().find(|&&r| eval(r, a, c) != value) {
            return Err(Error::NonWellDefined(format!(
                "class `{}` evaluates differently at cospan {}",
                base.mor_name(f),
                r.cospan
            )));
        }
        mor_map.push(value);
    }
    let functor = FinFunctor::from_maps(
        format!("factor_{}", rho.name),
        base.clone(),
        rho.target.clone(),
        obj_map,
        mor_map,
    );
    functor.check()?;
    let ix = b.index();
    let mut cells = Vec::with_capacity(ix.num_objects());
    for i in ix.objects() {
        let composite = functor.after(&colim.injection(i));
        if !composite.same_maps(&rho.legs[i]) {
            return Err(Error::InvariantBreach(format!(
                "factorization does not restrict to the leg at `{}`",
                ix.object_name(i)
            )));
        }
        cells.push(NatTransformation::identity(&rho.legs[i]));
    }
    let fac = LaxFactorization {
        target: rho.target.clone(),
        functor,
        cells,
    };
    fac.check_compatibility(colim, rho)?;
    Ok(fac)
}

/// Counts functors `G` out of the 2-colimit with `G . sigma_i = rho_i` and
/// `G(theta^sigma_s) = theta^rho_s`, or `None` when there are more than
/// `limit` functors to search.
pub fn count_strict_factorizations(colim: &TwoColimCategory, rho: &PseudoCocone, limit: usize) -> Option<usize> {
    let b = colim.diagram();
    let ix = b.index();
    let all = enumerate_functors(colim.base(), &rho.target, limit)?;
    let injections: Vec<FinFunctor> = ix.objects().map(|i| colim.injection(i)).collect();
    Some(
        all.iter()
            .filter(|g| {
                ix.objects().all(|i| g.after(&injections[i]).same_maps(&rho.legs[i]))
                    && ix.morphisms().all(|s| {
                        b.at(ix.dom(s))
                            .objects()
                            .all(|x| g.mor(colim.theta_component(s, x)) == rho.cell(b, s, x))
                    })
            })
            .count(),
    )
}

/// A modification `lambda: rho => rho2` between two cocones with the same
/// target: per index object a natural transformation `rho_i => rho2_i`.
#[derive(Debug, Clone)]
pub struct CoconeModification {
    pub components: Vec<Vec<Mor>>,
}

impl CoconeModification {
    pub fn validate(&self, b: &PseudoFunctor, rho: &PseudoCocone, rho2: &PseudoCocone) -> Result<()> {
        let ix = b.index();
        let t = &*rho.target;
        for i in ix.objects() {
            NatTransformation::from_components("lambda", rho.legs[i].clone(), rho2.legs[i].clone(), self.components[i].clone())
                .check()?;
        }
        for s in ix.morphisms() {
            let (i, i2) = (ix.dom(s), ix.cod(s));
            for x in b.at(i).objects() {
                let lhs = t.compose(rho2.cell(b, s, x), self.components[i][x]);
                let rhs = t.compose(self.components[i2][b.on(s).obj(x)], rho.cell(b, s, x));
                if lhs != rhs {
                    return Err(Error::IncompatibleCells(format!(
                        "modification incompatible with cells at `{}`",
                        ix.mor_name(s)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The natural transformation `F => G` between two strict factorizations
/// induced by a modification, with the number of natural transformations
/// satisfying the defining equations (always 1 when the construction is
/// sound).
pub fn induced_transformation(
    colim: &TwoColimCategory,
    f: &LaxFactorization,
    g: &LaxFactorization,
    lambda: &CoconeModification,
) -> Result<(NatTransformation, usize)> {
    let base = colim.base();
    let comps: Vec<Mor> = base
        .objects()
        .map(|a| {
            let (i, x) = colim.object_data(a);
            lambda.components[i][x]
        })
        .collect();
    let nat = NatTransformation::from_components("Lambda", f.functor.clone(), g.functor.clone(), comps.clone());
    nat.check()?;
    let mut count = 0;
    for_each_nat(&f.functor, &g.functor, |c| {
        if c == comps.as_slice() {
            count += 1;
        }
        true
    });
    Ok((nat, count))
}

/// The functor between 2-colimits induced by `u: b => b2`.
pub fn induced_functor_colim(
    from: &TwoColimCategory,
    to: &TwoColimCategory,
    u: &PseudoNatTransformation,
) -> Result<FinFunctor> {
    let (b, b2) = (from.diagram(), to.diagram());
    u.validate(b, b2)?;
    let base = from.base();
    let obj_map: Vec<Obj> = base
        .objects()
        .map(|a| {
            let (i, x) = from.object_data(a);
            to.object(i, u.components[i].obj(x))
        })
        .collect();
    let image = |r: Rep, a: Obj, c: Obj| -> Result<Mor> {
        let (_, x) = from.object_data(a);
        let (_, y) = from.object_data(c);
        let (m, s, s2) = r.apex;
        let cm = &**b2.at(m);
        let into = cm.inverse(u.cell(b, b2, s, x)).expect("cells are invertible");
        let h = cm.compose(u.cell(b, b2, s2, y), cm.compose(u.components[m].mor(r.h), into));
        to.colim_hom_class(obj_map[a], obj_map[c], r.apex, h)
    };
    let mut mor_map = Vec::with_capacity(base.num_morphisms());
    for f in base.morphisms() {
        let (a, c) = from.endpoints(f);
        let members = from.members(f);
        let value = image(members[0], a, c)?;
        for &r in &members[1..] {
            if image(r, a, c)? != value {
                return Err(Error::IncompatibleCells(format!(
                    "class `{}` has representatives with different images",
                    base.mor_name(f)
                )));
            }
        }
        mor_map.push(value);
    }
    let functor = FinFunctor::from_maps("induced", base.clone(), to.base().clone(), obj_map, mor_map);
    functor.check()?;
    Ok(functor)
}

/// Hom-class lookup keyed by representatives, built once per category for
/// callers that classify many representatives.
pub fn class_index(colim: &TwoColimCategory) -> HashMap<(Obj, Obj, Rep), Mor> {
    let mut out = HashMap::new();
    for f in colim.base().morphisms() {
        let (a, c) = colim.endpoints(f);
        for r in colim.members(f) {
            out.insert((a, c, r), f);
        }
    }
    out
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

    fn two() -> Arc<FinCategory> {
        cat(RawCategory::new("Two").objects(&["0", "1"]).mor("f", "0", "1"))
    }

    /// `b: Two -> CAT` with `b(0)` discrete on `left`, `b(1)` discrete on
    /// `right`, and `b(f)` sending `left[k]` to `right[image[k]]`.
    fn arrow_diagram(left: &[&str], right: &[&str], image: &[usize]) -> PseudoFunctor {
        let ix = two();
        let l = discrete("L", left);
        let r = discrete("R", right);
        let f = FinFunctor::from_maps("bf", l.clone(), r.clone(), image.to_vec(), image.iter().map(|&k| r.identity(k)).collect());
        let mut on = vec![FinFunctor::identity(&l), FinFunctor::identity(&r), f];
        // morphism order of Two: id_0, id_1, f
        on.truncate(ix.num_morphisms());
        let b = PseudoFunctor::strict("b", ix, vec![l, r], on);
        b.validate().unwrap();
        b
    }

    #[test]
    fn terminal_index_is_isomorphic_to_the_value() {
        let one = cat(RawCategory::new("One").object("*"));
        let v = cat(RawCategory::new("V").objects(&["x", "y"]).mor("u", "x", "y"));
        let b = PseudoFunctor::constant(&one, &v);
        let colim = build_2colim(&b).unwrap();
        let sigma = colim.injection(0);
        sigma.check().unwrap();
        assert!(sigma.inverse().is_some());
        colim.base().check_laws().unwrap();
    }

    #[test]
    fn arrow_with_singletons_is_equivalent_to_terminal() {
        let b = arrow_diagram(&["X"], &["Y"], &[0]);
        let colim = build_2colim(&b).unwrap();
        let base = colim.base();
        assert_eq!(base.num_objects(), 2);
        for a in base.objects() {
            for c in base.objects() {
                assert_eq!(base.hom(a, c).len(), 1);
            }
        }
        let (x, y) = (colim.object(0, 0), colim.object(1, 0));
        let there = base.hom(x, y)[0];
        let back = base.hom(y, x)[0];
        assert_eq!(base.compose(back, there), base.identity(x));
        assert_eq!(base.compose(there, back), base.identity(y));
        colim.check_well_defined().unwrap();
    }

    #[test]
    fn arrow_with_extra_object_has_empty_hom() {
        let b = arrow_diagram(&["X"], &["Y", "Z"], &[0]);
        let colim = build_2colim(&b).unwrap();
        let base = colim.base();
        let x = colim.object(0, 0);
        assert!(base.hom(x, colim.object(1, 1)).is_empty());
        assert_eq!(base.hom(x, colim.object(1, 0)).len(), 1);
    }

    #[test]
    fn pushed_representatives_share_a_class() {
        let b = arrow_diagram(&["X"], &["Y"], &[0]);
        let colim = build_2colim(&b).unwrap();
        let ix = colim.index().clone();
        let f = ix.morphism_by_name("f").unwrap();
        let (x, y) = (colim.object(0, 0), colim.object(1, 0));
        let id_y = b.at(1).identity(0);
        let apex = (1, f, ix.identity(1));
        let c1 = colim.colim_hom_class(x, y, apex, id_y).unwrap();
        let cs = colim.cospan(0, 1).find(1, f, ix.identity(1)).unwrap();
        let pushed = colim.transport(x, y, Rep { cospan: cs, apex, h: id_y }, ix.identity(1));
        assert_eq!(colim.class_of(x, y, pushed.cospan, pushed.h).unwrap(), c1);
        // identity representative
        let id0 = ix.identity(0);
        assert_eq!(
            colim.colim_hom_class(x, x, (0, id0, id0), b.at(0).identity(0)).unwrap(),
            colim.identity_class(x)
        );
        assert!(colim.colim_hom_class(x, y, (0, id0, id0), id_y).is_err());
    }

    #[test]
    fn non_filtered_index_is_refused() {
        let ix = discrete("Disc", &["p", "q"]);
        let one = discrete("One", &["*"]);
        let b = PseudoFunctor::constant(&ix, &one);
        assert!(matches!(build_2colim(&b), Err(Error::NotFiltered(_))));
        let forced = build_2colim_with(&b, ColimOptions { skip_filter_check: true }).unwrap();
        assert_eq!(forced.base().num_objects(), 2);
        assert!(forced.base().hom(0, 1).is_empty());
    }

    #[test]
    fn universal_cocone_factors_as_identity() {
        let b = arrow_diagram(&["X", "W"], &["Y", "Z"], &[0, 0]);
        let colim = build_2colim(&b).unwrap();
        colim.base().check_laws().unwrap();
        let sigma = colim.universal_cocone();
        let fac = strong_factor_colim(&colim, &sigma).unwrap();
        assert!(fac.is_strong());
        assert!(fac.functor.same_maps(&FinFunctor::identity(colim.base())));
    }

    #[test]
    fn cocone_into_terminal_factors_uniquely() {
        let b = arrow_diagram(&["X"], &["Y"], &[0]);
        let colim = build_2colim(&b).unwrap();
        let one = discrete("One", &["*"]);
        let rho = PseudoCocone {
            name: "rho".into(),
            target: one.clone(),
            legs: (0..2).map(|i| FinFunctor::constant(b.at(i), &one, 0)).collect(),
            cells: vec![None; 3],
        };
        let fac = strong_factor_colim(&colim, &rho).unwrap();
        assert!(fac.functor.obj_map().iter().all(|&o| o == 0));
        assert_eq!(count_strict_factorizations(&colim, &rho, 200), Some(1));
        let lambda = CoconeModification {
            components: vec![vec![one.identity(0)]; 2],
        };
        lambda.validate(&b, &rho, &rho).unwrap();
        let (nat, count) = induced_transformation(&colim, &fac, &fac, &lambda).unwrap();
        assert_eq!(count, 1);
        assert!(nat.components().iter().all(|&m| m == one.identity(0)));
    }

    #[test]
    fn induced_functors() {
        let b = arrow_diagram(&["X"], &["Y", "Z"], &[0]);
        let colim = build_2colim(&b).unwrap();
        let id = PseudoNatTransformation::identity(&b);
        let f = induced_functor_colim(&colim, &colim, &id).unwrap();
        assert!(f.same_maps(&FinFunctor::identity(colim.base())));

        // collapse Y and Z
        let b2 = arrow_diagram(&["X"], &["Y"], &[0]);
        let colim2 = build_2colim(&b2).unwrap();
        let r = b.at(1).clone();
        let r2 = b2.at(1).clone();
        let u = PseudoNatTransformation {
            components: vec![
                FinFunctor::identity(b.at(0)).with_name("u0"),
                FinFunctor::from_maps("u1", r.clone(), r2.clone(), vec![0, 0], vec![r2.identity(0); 2]),
            ],
            cells: vec![None; 3],
        };
        let g = induced_functor_colim(&colim, &colim2, &u).unwrap();
        let z = colim.object(1, 1);
        let x = colim.object(0, 0);
        assert_eq!(g.obj(z), colim2.object(1, 0));
        assert_eq!(colim2.base().hom(g.obj(x), g.obj(z)).len(), 1);
    }
}
