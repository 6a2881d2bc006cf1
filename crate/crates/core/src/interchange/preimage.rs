//! Essential surjectivity of `Psi`, by replaying the construction of a
//! preimage: cocone over the feet, common representatives, equalization.

use serde::Serialize;

use super::{ColimOfLims, LimOfColims};
use crate::bicolim::Rep;
use crate::bilim::{check_object_conditions, TwoLimObject};
use crate::error::{Error, Result};
use crate::fincat::{find_cocone, FinFunctor, Mor, Obj};
use crate::pseudo::BiIndexedPseudoFunctor;

#[derive(Debug, Clone, Serialize)]
pub struct Preimage {
    /// The object of the limit of colimits.
    pub object: Obj,
    /// The vertex `k` of `I` carrying the triple.
    pub vertex: Obj,
    /// `s_q: i_q -> k` per object of `J^op`.
    pub legs: Vec<Mor>,
    /// Non-identity vertex moves after the initial cocone.
    pub rounds: usize,
    /// The object of the colimit of limits.
    pub triple: Obj,
    /// An isomorphism `object -> Psi(triple)`.
    pub iso: Mor,
}

/// Morphisms `k -> n` for every `n`, objects in declaration order and the
/// identity first.
fn moves(ic: &crate::fincat::FinCategory, k: Obj) -> Vec<Mor> {
    let mut out = vec![ic.identity(k)];
    for n in ic.objects() {
        out.extend(ic.hom(k, n).iter().copied().filter(|&y| !ic.is_identity(y)));
    }
    out
}

pub fn essential_preimage(
    a: &BiIndexedPseudoFunctor,
    col: &ColimOfLims,
    lim: &LimOfColims,
    psi: &FinFunctor,
    o: Obj,
) -> Result<Preimage> {
    let ic = &*a.i;
    let k = &**a.jop();
    let (p, u) = (&a.product, &a.underlying);
    let target = lim.lim.object(o);
    let feet: Vec<(Obj, Obj)> = k.objects().map(|q| lim.colimits[q].object_data(target.xs[q])).collect();

    // cocone over the feet
    let tips: Vec<Obj> = feet.iter().map(|&(i, _)| i).collect();
    let cocone = find_cocone(ic, &tips, &[])?;
    let start: Vec<Mor> = tips.iter().map(|&i| cocone.leg(i)).collect();

    // a vertex where every theta class has a representative
    let members: Vec<Vec<Rep>> = k
        .morphisms()
        .map(|m| lim.colimits[k.cod(m)].members(target.theta[m]))
        .collect();
    let reps_at = |y: Mor| -> Option<Vec<Rep>> {
        let n = ic.cod(y);
        k.morphisms()
            .map(|m| {
                let (jp, jq) = (k.dom(m), k.cod(m));
                let apex = (n, ic.compose(y, start[jq]), ic.compose(y, start[jp]));
                members[m].iter().copied().find(|r| r.apex == apex)
            })
            .collect()
    };
    let (y, reps) = moves(ic, cocone.vertex)
        .into_iter()
        .find_map(|y| reps_at(y).map(|r| (y, r)))
        .ok_or_else(|| Error::SearchExhausted("no common vertex for the representatives".into()))?;

    // equalize until conditions A and B hold on the nose
    let n = ic.cod(y);
    let candidate = |z: Mor| -> Result<Option<(Vec<Mor>, TwoLimObject)>> {
        let kv = ic.cod(z);
        let legs: Vec<Mor> = k.objects().map(|q| ic.compose(z, ic.compose(y, start[q]))).collect();
        let xs: Vec<Obj> = k
            .objects()
            .map(|q| u.on(p.left_mor(legs[q], q)).obj(feet[q].1))
            .collect();
        let mut theta = Vec::with_capacity(k.num_morphisms());
        for m in k.morphisms() {
            let (jp, jq) = (k.dom(m), k.cod(m));
            let c = &lim.colimits[jq];
            let dom = target.xs[jq];
            let cod = lim.diagram.on(m).obj(target.xs[jp]);
            let r = c.transport(dom, cod, reps[m], z);
            let swap = a.interchange_cell(legs[jp], m, feet[jp].1);
            theta.push(u.at(p.obj(kv, jq)).compose(u.inv(p.obj(kv, jq), swap), r.h));
        }
        let slice = &col.limits[kv];
        Ok(check_object_conditions(slice.diagram(), &xs, &theta)?
            .is_none()
            .then_some((legs, TwoLimObject { xs, theta })))
    };
    let mut found = None;
    for z in moves(ic, n) {
        if let Some(hit) = candidate(z)? {
            found = Some((z, hit));
            break;
        }
    }
    let (z, (legs, triple)) =
        found.ok_or_else(|| Error::SearchExhausted("no vertex equalizes the representatives".into()))?;
    let vertex = ic.cod(z);
    let rounds = [y, z].iter().filter(|&&t| !ic.is_identity(t)).count();
    if rounds > ic.num_morphisms() {
        return Err(Error::SearchExhausted(format!("{rounds} rounds exceed the bound")));
    }

    let x = col.limits[vertex]
        .find_object(&triple)
        .ok_or_else(|| Error::InvariantBreach("equalized data is not an object of the limit".into()))?;
    let t = col.colim.object(vertex, x);
    let image = psi.obj(t);
    let family: Vec<Mor> = k
        .objects()
        .map(|q| lim.colimits[q].theta_component(legs[q], feet[q].1))
        .collect();
    let iso = lim
        .lim
        .family_class(o, image, &family)
        .ok_or_else(|| Error::InvariantBreach("comparison family is not a morphism".into()))?;
    if !lim.lim.base().is_iso(iso) {
        return Err(Error::InvariantBreach("comparison morphism is not invertible".into()));
    }
    Ok(Preimage {
        object: o,
        vertex,
        legs,
        rounds,
        triple: t,
        iso,
    })
}
