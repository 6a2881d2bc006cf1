//! The two composites of a bi-indexed pseudofunctor `a: I x J^op -> CAT`,
//! the comparison functor `Psi` from the filtered 2-colimit of the finite
//! 2-limits to the finite 2-limit of the filtered 2-colimits, and the
//! constructive check that `Psi` is an equivalence.

mod oracle;
mod preimage;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bicolim::{build_2colim_with, strong_factor_colim, ColimOptions, PseudoCocone, TwoColimCategory};
use crate::bilim::{build_2lim, induced_functor_lim, strong_factor_lim, PseudoCone, TwoLimCategory, TwoLimObject};
use crate::error::{Error, Result};
use crate::fincat::{FinFunctor, Mor, Obj};
use crate::pseudo::{BiIndexedPseudoFunctor, PseudoFunctor, PseudoNatTransformation};

pub use oracle::{check_colim_of_lims_direct, check_lim_of_colims_direct, DirectCheck};
pub use preimage::{essential_preimage, Preimage};

pub(crate) fn breach(e: Error) -> Error {
    match e {
        Error::InvariantBreach(_) | Error::SearchExhausted(_) | Error::NotFiltered(_) => e,
        other => Error::InvariantBreach(format!("{}: {other}", other.code())),
    }
}

/// `colim_I lim_(J^op) a`: the 2-colimit of `i -> L(i)`.
#[derive(Debug, Clone)]
pub struct ColimOfLims {
    /// `a(i, -)` per `i`.
    pub slices: Vec<PseudoFunctor>,
    pub limits: Vec<TwoLimCategory>,
    /// `L: I -> CAT`.
    pub diagram: PseudoFunctor,
    pub colim: TwoColimCategory,
}

impl ColimOfLims {
    /// The triple `(i, X, theta)` behind an object.
    pub fn triple(&self, o: Obj) -> (Obj, &TwoLimObject) {
        let (i, x) = self.colim.object_data(o);
        (i, self.limits[i].object(x))
    }
}

/// `lim_(J^op) colim_I a`: the 2-limit of `j -> C(j)`.
#[derive(Debug, Clone)]
pub struct LimOfColims {
    /// `a(-, j)` per `j`.
    pub slices: Vec<PseudoFunctor>,
    pub colimits: Vec<TwoColimCategory>,
    /// `C: J^op -> CAT`.
    pub diagram: PseudoFunctor,
    pub lim: TwoLimCategory,
}

/// `a(s, id): a(i, -) => a(i2, -)`, with cells
/// `a(s,id_q) a(id,m) => a(id,m) a(s,id_p)`.
pub(crate) fn row_transition(a: &BiIndexedPseudoFunctor, s: Mor) -> PseudoNatTransformation {
    let (ic, k) = (&*a.i, &**a.jop());
    let p = &a.product;
    let u = &a.underlying;
    let (i, i2) = (ic.dom(s), ic.cod(s));
    PseudoNatTransformation {
        components: k.objects().map(|q| u.on(p.left_mor(s, q)).clone()).collect(),
        cells: k
            .morphisms()
            .map(|m| {
                let (jp, jq) = (k.dom(m), k.cod(m));
                let o = p.obj(i2, jq);
                let c = &**u.at(o);
                let cells = u
                    .at(p.obj(i, jp))
                    .objects()
                    .map(|x| {
                        let via_left = u.comp(p.right_mor(i2, m), p.left_mor(s, jp), x);
                        let via_right = u.comp(p.left_mor(s, jq), p.right_mor(i, m), x);
                        c.compose(via_left, u.inv(o, via_right))
                    })
                    .collect();
                Some(cells)
            })
            .collect(),
    }
}

/// `a(id, m): a(-, p) => a(-, q)`, with the interchange cells.
pub(crate) fn column_transition(a: &BiIndexedPseudoFunctor, m: Mor) -> PseudoNatTransformation {
    let (ic, k) = (&*a.i, &**a.jop());
    let p = &a.product;
    let u = &a.underlying;
    let jp = k.dom(m);
    PseudoNatTransformation {
        components: ic.objects().map(|i| u.on(p.right_mor(i, m)).clone()).collect(),
        cells: ic
            .morphisms()
            .map(|s| Some(u.at(p.obj(ic.dom(s), jp)).objects().map(|x| a.interchange_cell(s, m, x)).collect()))
            .collect(),
    }
}

pub fn build_colim_of_lims(a: &BiIndexedPseudoFunctor, skip_filter_check: bool) -> Result<ColimOfLims> {
    let ic = a.i.clone();
    let k = a.jop().clone();
    let (p, u) = (&a.product, &a.underlying);
    let slices: Vec<PseudoFunctor> = ic.objects().map(|i| a.slice_at_i(i)).collect::<Result<_>>()?;
    let limits: Vec<TwoLimCategory> = slices.iter().map(build_2lim).collect::<Result<_>>()?;
    let mut on = Vec::with_capacity(ic.num_morphisms());
    for s in ic.morphisms() {
        let t = row_transition(a, s);
        let f = induced_functor_lim(&limits[ic.dom(s)], &limits[ic.cod(s)], &t).map_err(breach)?;
        on.push(f.with_name(format!("L({})", ic.mor_name(s))));
    }
    let family = |i: Obj, from: Obj, to: Obj, comps: Vec<Mor>| -> Result<Mor> {
        limits[i].family_class(from, to, &comps).ok_or_else(|| {
            Error::InvariantBreach(format!("coherence family at `{}` is not compatible", ic.object_name(i)))
        })
    };
    let mut unit = Vec::with_capacity(ic.num_objects());
    for i in ic.objects() {
        let fid = &on[ic.identity(i)];
        let cells = limits[i]
            .base()
            .objects()
            .map(|x| {
                let obj = limits[i].object(x);
                let comps = k.objects().map(|q| u.unit(p.obj(i, q), obj.xs[q])).collect();
                family(i, fid.obj(x), x, comps)
            })
            .collect::<Result<Vec<_>>>()?;
        unit.push(Some(cells));
    }
    let mut comp = HashMap::new();
    for (t, s) in ic.composable_pairs() {
        let ts = ic.compose(t, s);
        let (i, i3) = (ic.dom(s), ic.cod(t));
        let cells = limits[i]
            .base()
            .objects()
            .map(|x| {
                let obj = limits[i].object(x);
                let comps = k
                    .objects()
                    .map(|q| u.comp(p.left_mor(t, q), p.left_mor(s, q), obj.xs[q]))
                    .collect();
                family(i3, on[ts].obj(x), on[t].obj(on[s].obj(x)), comps)
            })
            .collect::<Result<Vec<_>>>()?;
        comp.insert((t, s), cells);
    }
    let diagram = PseudoFunctor::from_parts(
        format!("lim {}", u.name()),
        ic.clone(),
        limits.iter().map(|l| l.base().clone()).collect(),
        on,
        unit,
        comp,
    );
    diagram.validate().map_err(breach)?;
    let colim = build_2colim_with(&diagram, ColimOptions { skip_filter_check })?;
    Ok(ColimOfLims {
        slices,
        limits,
        diagram,
        colim,
    })
}

pub fn build_lim_of_colims(a: &BiIndexedPseudoFunctor, skip_filter_check: bool) -> Result<LimOfColims> {
    let (slices, colimits, diagram) = colimit_diagram(a, skip_filter_check)?;
    let lim = build_2lim(&diagram)?;
    Ok(LimOfColims {
        slices,
        colimits,
        diagram,
        lim,
    })
}

/// The slice colimits and the diagram `J^op -> CAT` they form.
pub fn colimit_diagram(
    a: &BiIndexedPseudoFunctor,
    skip_filter_check: bool,
) -> Result<(Vec<PseudoFunctor>, Vec<TwoColimCategory>, PseudoFunctor)> {
    let k = a.jop().clone();
    let (p, u) = (&a.product, &a.underlying);
    let opts = ColimOptions { skip_filter_check };
    let slices: Vec<PseudoFunctor> = k.objects().map(|j| a.slice_at_j(j)).collect::<Result<_>>()?;
    let colimits: Vec<TwoColimCategory> = slices.iter().map(|b| build_2colim_with(b, opts)).collect::<Result<_>>()?;
    let mut on = Vec::with_capacity(k.num_morphisms());
    for m in k.morphisms() {
        let t = column_transition(a, m);
        let f = crate::bicolim::induced_functor_colim(&colimits[k.dom(m)], &colimits[k.cod(m)], &t).map_err(breach)?;
        on.push(f.with_name(format!("C({})", k.mor_name(m))));
    }
    let mut unit = Vec::with_capacity(k.num_objects());
    for q in k.objects() {
        let c = &colimits[q];
        let cells = c
            .base()
            .objects()
            .map(|o| {
                let (i, x) = c.object_data(o);
                c.sigma(i, u.unit(p.obj(i, q), x))
            })
            .collect();
        unit.push(Some(cells));
    }
    let mut comp = HashMap::new();
    for (n, m) in k.composable_pairs() {
        let (jp, jr) = (k.dom(m), k.cod(n));
        let (src, dst) = (&colimits[jp], &colimits[jr]);
        let cells = src
            .base()
            .objects()
            .map(|o| {
                let (i, x) = src.object_data(o);
                dst.sigma(i, u.comp(p.right_mor(i, n), p.right_mor(i, m), x))
            })
            .collect();
        comp.insert((n, m), cells);
    }
    let diagram = PseudoFunctor::from_parts(
        format!("colim {}", u.name()),
        k.clone(),
        colimits.iter().map(|c| c.base().clone()).collect(),
        on,
        unit,
        comp,
    );
    diagram.validate().map_err(breach)?;
    Ok((slices, colimits, diagram))
}

/// `Psi` from the explicit formula:
/// `(i, X, theta) -> ({(i, X_j)}, {sigma_i(theta_m)})` on objects and
/// `[{h_j} @ c] -> {[h_j @ c]}` on classes.
pub fn build_psi_explicit(col: &ColimOfLims, lim: &LimOfColims) -> Result<FinFunctor> {
    let k = lim.diagram.index();
    let base = col.colim.base();
    let mut obj_map = Vec::with_capacity(base.num_objects());
    for o in base.objects() {
        let (i, x) = col.triple(o);
        let target = TwoLimObject {
            xs: k.objects().map(|q| lim.colimits[q].object(i, x.xs[q])).collect(),
            theta: k.morphisms().map(|m| lim.colimits[k.cod(m)].sigma(i, x.theta[m])).collect(),
        };
        obj_map.push(
            lim.lim
                .find_object(&target)
                .ok_or_else(|| Error::InvariantBreach(format!("image of `{}` is not an object", base.object_name(o))))?,
        );
    }
    let image = |f: Mor, r: crate::bicolim::Rep| -> Result<Mor> {
        let (a, b) = col.colim.endpoints(f);
        let (m, _, _) = r.apex;
        let fam = col.limits[m].family(r.h);
        let (ta, tb) = (lim.lim.object(obj_map[a]), lim.lim.object(obj_map[b]));
        let comps = k
            .objects()
            .map(|q| lim.colimits[q].colim_hom_class(ta.xs[q], tb.xs[q], r.apex, fam[q]))
            .collect::<Result<Vec<_>>>()
            .map_err(breach)?;
        lim.lim
            .family_class(obj_map[a], obj_map[b], &comps)
            .ok_or_else(|| Error::InvariantBreach(format!("image of `{}` is not compatible", base.mor_name(f))))
    };
    let mut mor_map = Vec::with_capacity(base.num_morphisms());
    for f in base.morphisms() {
        let members = col.colim.members(f);
        let value = image(f, members[0])?;
        for &r in &members[1..] {
            if image(f, r)? != value {
                return Err(Error::InvariantBreach(format!("`{}` has representatives with different images", base.mor_name(f))));
            }
        }
        mor_map.push(value);
    }
    let psi = FinFunctor::from_maps("Psi", base.clone(), lim.lim.base().clone(), obj_map, mor_map);
    psi.check().map_err(breach)?;
    Ok(psi)
}

/// `Psi` through the universal properties: each `L(i)` maps into the
/// limit by the cone `sigma_i . pi_j`, and these maps form a cocone.
pub fn build_psi_compositional(col: &ColimOfLims, lim: &LimOfColims) -> Result<FinFunctor> {
    let ic = col.diagram.index();
    let k = lim.diagram.index();
    let mut phis = Vec::with_capacity(ic.num_objects());
    for i in ic.objects() {
        let li = &col.limits[i];
        let cone = PseudoCone {
            name: format!("cone_{}", ic.object_name(i)),
            source: li.base().clone(),
            legs: k
                .objects()
                .map(|q| lim.colimits[q].injection(i).after(&li.projection(q)))
                .collect(),
            cells: k
                .morphisms()
                .map(|m| Some(li.objects().iter().map(|x| lim.colimits[k.cod(m)].sigma(i, x.theta[m])).collect()))
                .collect(),
        };
        phis.push(strong_factor_lim(&lim.lim, &cone).map_err(breach)?);
    }
    let mut cells = Vec::with_capacity(ic.num_morphisms());
    for s in ic.morphisms() {
        let (i, i2) = (ic.dom(s), ic.cod(s));
        let ls = col.diagram.on(s);
        let comps = col.limits[i]
            .base()
            .objects()
            .map(|x| {
                let obj = col.limits[i].object(x);
                let fam: Vec<Mor> = k.objects().map(|q| lim.colimits[q].theta_component(s, obj.xs[q])).collect();
                lim.lim
                    .family_class(phis[i].obj(x), phis[i2].obj(ls.obj(x)), &fam)
                    .ok_or_else(|| Error::InvariantBreach(format!("cocone cell at `{}` is not compatible", ic.mor_name(s))))
            })
            .collect::<Result<Vec<_>>>()?;
        cells.push(Some(comps));
    }
    let cocone = PseudoCocone {
        name: "Phi".into(),
        target: lim.lim.base().clone(),
        legs: phis,
        cells,
    };
    let fac = strong_factor_colim(&col.colim, &cocone).map_err(breach)?;
    Ok(fac.functor.with_name("Psi"))
}

/// Builds `Psi` both ways and insists they agree.
pub fn build_psi(col: &ColimOfLims, lim: &LimOfColims) -> Result<FinFunctor> {
    let explicit = build_psi_explicit(col, lim)?;
    let compositional = build_psi_compositional(col, lim)?;
    if !explicit.same_maps(&compositional) {
        return Err(Error::InvariantBreach("explicit and compositional Psi differ".into()));
    }
    Ok(explicit)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HomFailure {
    NotInjective { first: Mor, second: Mor },
    NotSurjective { missing: Mor },
}

#[derive(Debug, Clone, Serialize)]
pub struct HomBijection {
    pub source: (Obj, Obj),
    pub target: (Obj, Obj),
    /// Preimage of each target morphism, in hom order.
    pub inverse: Vec<Option<Mor>>,
    pub failure: Option<HomFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FullyFaithfulReport {
    pub pairs_checked: usize,
    pub morphisms_checked: usize,
    /// Every pair whose hom map is not a bijection.
    pub failures: Vec<HomBijection>,
}

impl FullyFaithfulReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn hom_bijection(psi: &FinFunctor, a: Obj, b: Obj) -> HomBijection {
    let (src, tgt) = (psi.source(), psi.target());
    let (ta, tb) = (psi.obj(a), psi.obj(b));
    let thom = tgt.hom(ta, tb);
    let mut inverse: Vec<Option<Mor>> = vec![None; thom.len()];
    let mut failure = None;
    for &f in src.hom(a, b) {
        let pos = thom.binary_search(&psi.mor(f)).expect("functor respects endpoints");
        match inverse[pos] {
            Some(prev) if failure.is_none() => failure = Some(HomFailure::NotInjective { first: prev, second: f }),
            Some(_) => {}
            None => inverse[pos] = Some(f),
        }
    }
    if failure.is_none() {
        if let Some(pos) = inverse.iter().position(Option::is_none) {
            failure = Some(HomFailure::NotSurjective { missing: thom[pos] });
        }
    }
    HomBijection {
        source: (a, b),
        target: (ta, tb),
        inverse,
        failure,
    }
}

pub fn fully_faithful_report(psi: &FinFunctor) -> FullyFaithfulReport {
    let src = psi.source();
    let n = src.num_objects();
    let failures: Vec<HomBijection> = (0..n * n)
        .into_par_iter()
        .map(|ab| hom_bijection(psi, ab / n, ab % n))
        .filter(|h| h.failure.is_some())
        .collect();
    FullyFaithfulReport {
        pairs_checked: n * n,
        morphisms_checked: src.num_morphisms(),
        failures,
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EquivalenceOptions {
    /// Build over a non-filtered `I` for diagnostics.
    pub skip_filter_check: bool,
    /// Also compare both composites against their direct descriptions.
    pub cross_check: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub instance: String,
    pub colim_of_lims: (usize, usize),
    pub lim_of_colims: (usize, usize),
    pub fully_faithful: FullyFaithfulReport,
    pub preimages: Vec<Preimage>,
    /// LimOfColims objects without a verified preimage, with the reason.
    pub preimage_failures: Vec<(Obj, String)>,
    pub direct_checks: Vec<DirectCheck>,
    pub verdict: bool,
}

pub fn check_equivalence(a: &BiIndexedPseudoFunctor) -> Result<EquivalenceReport> {
    check_equivalence_with(a, EquivalenceOptions::default())
}

pub fn check_equivalence_with(a: &BiIndexedPseudoFunctor, opts: EquivalenceOptions) -> Result<EquivalenceReport> {
    let col = build_colim_of_lims(a, opts.skip_filter_check)?;
    let lim = build_lim_of_colims(a, opts.skip_filter_check)?;
    let mut direct_checks = Vec::new();
    if opts.cross_check {
        direct_checks.push(check_colim_of_lims_direct(a, &col)?);
        direct_checks.push(check_lim_of_colims_direct(a, &lim)?);
        if let Some(bad) = direct_checks.iter().find(|d| !d.agrees) {
            return Err(Error::InvariantBreach(format!("direct description disagrees: {}", bad.detail)));
        }
    }
    let psi = build_psi(&col, &lim)?;
    let fully_faithful = fully_faithful_report(&psi);
    let outcomes: Vec<(Obj, Result<Preimage>)> = (0..lim.lim.objects().len())
        .into_par_iter()
        .map(|o| (o, essential_preimage(a, &col, &lim, &psi, o)))
        .collect();
    let mut preimages = Vec::new();
    let mut preimage_failures = Vec::new();
    for (o, r) in outcomes {
        match r {
            Ok(p) => preimages.push(p),
            Err(e) if e.is_internal() && !opts.skip_filter_check => return Err(e),
            Err(e) => preimage_failures.push((o, e.to_string())),
        }
    }
    let verdict = fully_faithful.holds() && preimage_failures.is_empty();
    Ok(EquivalenceReport {
        instance: a.underlying.name().to_string(),
        colim_of_lims: (col.colim.base().num_objects(), col.colim.base().num_morphisms()),
        lim_of_colims: (lim.lim.base().num_objects(), lim.lim.base().num_morphisms()),
        fully_faithful,
        preimages,
        preimage_failures,
        direct_checks,
        verdict,
    })
}
