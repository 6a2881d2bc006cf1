//! Direct descriptions of both composites, enumerated from the raw data of
//! `a` without going through the modular constructions, for cross-checks.
//!
//! * colim of lims: objects are triples `(i, X, theta)`; the hom-set
//!   `(i, X) -> (i2, Y)` is the colimit over cospans `(n, s, s2)` of the
//!   compatible families `a(s,id)X_q -> a(s2,id)Y_q`.
//! * lim of colims: objects are families of feet `(i_q, X_q)` with classes
//!   `[theta_m]` satisfying conditions A and B as class equations; homs are
//!   families of classes.

use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use serde::Serialize;

use super::{ColimOfLims, LimOfColims};
use crate::bilim::{check_object_conditions, TwoLimObject};
use crate::error::Result;
use crate::fincat::{FinCategory, Mor, Obj};
use crate::pseudo::BiIndexedPseudoFunctor;
use crate::setdiag::UnionFind;

/// Enumeration budget, in candidates and hom elements.
const BUDGET: usize = 400_000;

#[derive(Debug, Clone, Serialize)]
pub struct DirectCheck {
    pub name: String,
    pub agrees: bool,
    /// The enumeration would exceed the budget and was not run.
    pub skipped: bool,
    pub detail: String,
}

enum Stop {
    Budget,
    Mismatch(String),
}

type Flow<T> = std::result::Result<T, Stop>;

fn mismatch<T>(msg: impl Into<String>) -> Flow<T> {
    Err(Stop::Mismatch(msg.into()))
}

struct Budget(Cell<usize>);

impl Budget {
    fn spend(&self, n: usize) -> Flow<()> {
        let left = self.0.get();
        if n > left {
            return Err(Stop::Budget);
        }
        self.0.set(left - n);
        Ok(())
    }
}

/// Calls `f` on every tuple below `sizes`, last coordinate fastest.
fn for_each_choice(sizes: &[usize], budget: &Budget, mut f: impl FnMut(&[usize]) -> Flow<()>) -> Flow<()> {
    if sizes.contains(&0) {
        return Ok(());
    }
    let mut idx = vec![0; sizes.len()];
    loop {
        budget.spend(1)?;
        f(&idx)?;
        let mut d = sizes.len();
        loop {
            if d == 0 {
                return Ok(());
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < sizes[d] {
                break;
            }
            idx[d] = 0;
        }
    }
}

type Apex = (Obj, Mor, Mor);

/// Raw elements of a hom colimit and their classes under transport.
struct Closure<P> {
    elems: Vec<(Apex, P)>,
    index: HashMap<(Apex, P), usize>,
    class: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl<P: Hash + Eq + Clone> Closure<P> {
    fn build(ic: &FinCategory, elems: Vec<(Apex, P)>, push: impl Fn(&(Apex, P), Mor) -> P) -> Flow<Self> {
        let index: HashMap<(Apex, P), usize> = elems.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        let mut uf = UnionFind::new(elems.len());
        for (k, e) in elems.iter().enumerate() {
            let (n, s, s2) = e.0;
            for &t in ic.out(n) {
                let key = ((ic.cod(t), ic.compose(t, s), ic.compose(t, s2)), push(e, t));
                match index.get(&key) {
                    Some(&k2) => {
                        uf.union(k, k2);
                    }
                    None => return mismatch("transport leaves the hom-set"),
                }
            }
        }
        let mut class = vec![usize::MAX; elems.len()];
        let mut roots = HashMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (k, slot) in class.iter_mut().enumerate() {
            let r = uf.find(k);
            let c = *roots.entry(r).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            *slot = c;
            members[c].push(k);
        }
        Ok(Closure {
            elems,
            index,
            class,
            members,
        })
    }

    /// Matches the partition against the classes of a built hom-set.
    fn identify(&self, expected: &[Mor], target: impl Fn(&(Apex, P)) -> Option<Mor>) -> Flow<Vec<Mor>> {
        let mut out = Vec::with_capacity(self.members.len());
        for mem in &self.members {
            let first = target(&self.elems[mem[0]]).map_or_else(|| mismatch("representative has no class"), Ok)?;
            for &e in &mem[1..] {
                if target(&self.elems[e]) != Some(first) {
                    return mismatch("a direct class splits");
                }
            }
            out.push(first);
        }
        let mut sorted = out.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != out.len() {
            return mismatch("two direct classes merge");
        }
        if sorted != expected {
            return mismatch(format!("{} direct classes against {} built", sorted.len(), expected.len()));
        }
        Ok(out)
    }
}

fn run(name: &str, body: impl FnOnce(&Budget) -> Flow<String>) -> DirectCheck {
    let budget = Budget(Cell::new(BUDGET));
    let (agrees, skipped, detail) = match body(&budget) {
        Ok(d) => (true, false, d),
        Err(Stop::Budget) => (true, true, "enumeration budget exceeded".into()),
        Err(Stop::Mismatch(d)) => (false, false, d),
    };
    DirectCheck {
        name: name.into(),
        agrees,
        skipped,
        detail,
    }
}

/// Compares the colimit of limits against the triples description.
pub fn check_colim_of_lims_direct(a: &BiIndexedPseudoFunctor, col: &ColimOfLims) -> Result<DirectCheck> {
    Ok(run("colim of lims", |budget| colim_of_lims(a, col, budget)))
}

/// Compares the limit of colimits against the class-equation description.
pub fn check_lim_of_colims_direct(a: &BiIndexedPseudoFunctor, lim: &LimOfColims) -> Result<DirectCheck> {
    Ok(run("lim of colims", |budget| lim_of_colims(a, lim, budget)))
}

/// `L(s)X` by the formula, for `s: i -> i2`.
fn push_triple(a: &BiIndexedPseudoFunctor, s: Mor, x: &TwoLimObject) -> TwoLimObject {
    let (ic, k) = (&*a.i, &**a.jop());
    let (p, u) = (&a.product, &a.underlying);
    let (i, i2) = (ic.dom(s), ic.cod(s));
    let xs = k.objects().map(|q| u.on(p.left_mor(s, q)).obj(x.xs[q])).collect();
    let theta = k
        .morphisms()
        .map(|m| {
            let (jp, jq) = (k.dom(m), k.cod(m));
            let o = p.obj(i2, jq);
            let xp = x.xs[jp];
            let to_left = u.comp(p.right_mor(i2, m), p.left_mor(s, jp), xp);
            let to_right = u.comp(p.left_mor(s, jq), p.right_mor(i, m), xp);
            let cell = u.at(o).compose(to_left, u.inv(o, to_right));
            u.at(o).compose(cell, u.on(p.left_mor(s, jq)).mor(x.theta[m]))
        })
        .collect();
    TwoLimObject { xs, theta }
}

fn colim_of_lims(a: &BiIndexedPseudoFunctor, col: &ColimOfLims, budget: &Budget) -> Flow<String> {
    let (ic, k) = (&*a.i, &**a.jop());
    let (p, u) = (&a.product, &a.underlying);

    // objects of each row limit by brute force
    for i in ic.objects() {
        let slice = &col.slices[i];
        let mut found = Vec::new();
        let sizes: Vec<usize> = k.objects().map(|q| u.at(p.obj(i, q)).num_objects()).collect();
        for_each_choice(&sizes, budget, |xs| {
            let homs: Vec<&[Mor]> = k
                .morphisms()
                .map(|m| {
                    let (jp, jq) = (k.dom(m), k.cod(m));
                    let target = u.on(p.right_mor(i, m)).obj(xs[jp]);
                    u.at(p.obj(i, jq)).hom(xs[jq], target)
                })
                .collect();
            let th_sizes: Vec<usize> = homs.iter().map(|h| h.len()).collect();
            for_each_choice(&th_sizes, budget, |th| {
                let theta: Vec<Mor> = th.iter().enumerate().map(|(m, &e)| homs[m][e]).collect();
                match check_object_conditions(slice, xs, &theta) {
                    Ok(None) => found.push(TwoLimObject { xs: xs.to_vec(), theta }),
                    Ok(Some(_)) => {}
                    Err(e) => return mismatch(e.to_string()),
                }
                Ok(())
            })
        })?;
        found.sort();
        let mut built = col.limits[i].objects().to_vec();
        built.sort();
        if found != built {
            return mismatch(format!(
                "row `{}`: {} triples by enumeration, {} built",
                ic.object_name(i),
                found.len(),
                built.len()
            ));
        }
    }

    // transition functors on objects
    for s in ic.morphisms() {
        let (i, i2) = (ic.dom(s), ic.cod(s));
        for (x, obj) in col.limits[i].objects().iter().enumerate() {
            let image = col.diagram.on(s).obj(x);
            if col.limits[i2].object(image) != &push_triple(a, s, obj) {
                return mismatch(format!("L(`{}`) moves an object wrongly", ic.mor_name(s)));
            }
        }
    }

    // hom colimits of compatible families
    let base = col.colim.base();
    let mut elements = 0;
    for from in base.objects() {
        for to in base.objects() {
            let (i, x) = col.triple(from);
            let (i2, y) = col.triple(to);
            let mut elems: Vec<(Apex, Vec<Mor>)> = Vec::new();
            for n in ic.objects() {
                for &s in ic.hom(i, n) {
                    let lx = push_triple(a, s, x);
                    for &s2 in ic.hom(i2, n) {
                        let ly = push_triple(a, s2, y);
                        let homs: Vec<&[Mor]> =
                            k.objects().map(|q| u.at(p.obj(n, q)).hom(lx.xs[q], ly.xs[q])).collect();
                        let sizes: Vec<usize> = homs.iter().map(|h| h.len()).collect();
                        for_each_choice(&sizes, budget, |idx| {
                            let fam: Vec<Mor> = idx.iter().enumerate().map(|(q, &e)| homs[q][e]).collect();
                            let compatible = k.morphisms().all(|m| {
                                let (jp, jq) = (k.dom(m), k.cod(m));
                                let c = u.at(p.obj(n, jq));
                                c.compose(ly.theta[m], fam[jq])
                                    == c.compose(u.on(p.right_mor(n, m)).mor(fam[jp]), lx.theta[m])
                            });
                            if compatible {
                                elems.push(((n, s, s2), fam));
                            }
                            Ok(())
                        })?;
                    }
                }
            }
            elements += elems.len();
            let closure = Closure::build(ic, elems, |((_, s, s2), fam), t| {
                let n2 = ic.cod(t);
                k.objects()
                    .map(|q| {
                        let o = p.obj(n2, q);
                        let c = u.at(o);
                        let back = u.inv(o, u.comp(p.left_mor(t, q), p.left_mor(*s2, q), y.xs[q]));
                        let forth = u.comp(p.left_mor(t, q), p.left_mor(*s, q), x.xs[q]);
                        c.compose(back, c.compose(u.on(p.left_mor(t, q)).mor(fam[q]), forth))
                    })
                    .collect()
            })?;
            closure.identify(base.hom(from, to), |((n, s, s2), fam)| {
                let (lx, ly) = (col.diagram.on(*s).obj(col.colim.object_data(from).1), col.diagram.on(*s2).obj(col.colim.object_data(to).1));
                let h = col.limits[*n].family_class(lx, ly, fam)?;
                col.colim.colim_hom_class(from, to, (*n, *s, *s2), h).ok()
            })?;
        }
    }
    Ok(format!(
        "{} objects and {} hom classes from {} raw elements",
        base.num_objects(),
        base.num_morphisms(),
        elements
    ))
}

/// One colimit `C(q)` described from raw representatives.
struct Column {
    /// `a(n, q)` per `n`.
    cats: Vec<Arc<FinCategory>>,
    feet: Vec<(Obj, Obj)>,
    lookup: HashMap<(Obj, Obj), Obj>,
    homs: Vec<Closure<Mor>>,
    /// Per hom pair, the built morphism of each direct class.
    names: Vec<Vec<Mor>>,
    /// Built morphism to `(from, to, direct class)`.
    back: HashMap<Mor, (Obj, Obj, usize)>,
    memo: RefCell<HashMap<(Mor, Mor), Option<Mor>>>,
}

impl Column {
    fn build(a: &BiIndexedPseudoFunctor, lim: &LimOfColims, q: Obj, budget: &Budget) -> Flow<Column> {
        let ic = &*a.i;
        let (p, u) = (&a.product, &a.underlying);
        let built = &lim.colimits[q];
        let mut feet = Vec::new();
        for i in ic.objects() {
            for x in u.at(p.obj(i, q)).objects() {
                feet.push((i, x));
            }
        }
        if feet.len() != built.num_objects() || feet.iter().enumerate().any(|(o, &f)| built.object_data(o) != f) {
            return mismatch(format!("column {q}: objects differ"));
        }
        let lookup = feet.iter().enumerate().map(|(o, &f)| (f, o)).collect();
        let n = feet.len();
        let mut homs = Vec::with_capacity(n * n);
        let mut names = Vec::with_capacity(n * n);
        let mut back = HashMap::new();
        for from in 0..n {
            for to in 0..n {
                let ((i, x), (i2, y)) = (feet[from], feet[to]);
                let mut elems = Vec::new();
                for m in ic.objects() {
                    let c = u.at(p.obj(m, q));
                    for &s in ic.hom(i, m) {
                        for &s2 in ic.hom(i2, m) {
                            let hom = c.hom(u.on(p.left_mor(s, q)).obj(x), u.on(p.left_mor(s2, q)).obj(y));
                            budget.spend(hom.len())?;
                            elems.extend(hom.iter().map(|&h| ((m, s, s2), h)));
                        }
                    }
                }
                let closure = Closure::build(ic, elems, |&((_, s, s2), h), t| {
                    let o = p.obj(ic.cod(t), q);
                    let c = u.at(o);
                    let back = u.inv(o, u.comp(p.left_mor(t, q), p.left_mor(s2, q), y));
                    let forth = u.comp(p.left_mor(t, q), p.left_mor(s, q), x);
                    c.compose(back, c.compose(u.on(p.left_mor(t, q)).mor(h), forth))
                })?;
                let ids = closure.identify(built.base().hom(from, to), |&(apex, h)| {
                    built.colim_hom_class(from, to, apex, h).ok()
                })?;
                for (k, &f) in ids.iter().enumerate() {
                    back.insert(f, (from, to, k));
                }
                homs.push(closure);
                names.push(ids);
            }
        }
        Ok(Column {
            cats: ic.objects().map(|n| u.at(p.obj(n, q)).clone()).collect(),
            feet,
            lookup,
            homs,
            names,
            back,
            memo: RefCell::new(HashMap::new()),
        })
    }

    fn pair(&self, from: Obj, to: Obj) -> usize {
        from * self.feet.len() + to
    }

    fn class(&self, from: Obj, to: Obj, apex: Apex, h: Mor) -> Option<Mor> {
        let k = self.pair(from, to);
        let e = *self.homs[k].index.get(&(apex, h))?;
        Some(self.names[k][self.homs[k].class[e]])
    }

    fn hom(&self, from: Obj, to: Obj) -> &[Mor] {
        &self.names[self.pair(from, to)]
    }

    /// `g . f`, by finding members that meet at a common apex.
    fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if let Some(&hit) = self.memo.borrow().get(&(g, f)) {
            return hit;
        }
        let hit = self.compose_uncached(g, f);
        self.memo.borrow_mut().insert((g, f), hit);
        hit
    }

    fn compose_uncached(&self, g: Mor, f: Mor) -> Option<Mor> {
        let (a0, b0, kf) = self.back[&f];
        let (b1, c0, kg) = self.back[&g];
        if b0 != b1 {
            return None;
        }
        let (hf, hg) = (&self.homs[self.pair(a0, b0)], &self.homs[self.pair(b0, c0)]);
        for &e1 in &hf.members[kf] {
            let ((n, s, s2), h1) = hf.elems[e1];
            for &e2 in &hg.members[kg] {
                let ((n2, t, t2), h2) = hg.elems[e2];
                if n == n2 && s2 == t {
                    return self.class(a0, c0, (n, s, t2), self.cat(n).compose(h2, h1));
                }
            }
        }
        None
    }

    fn cat(&self, n: Obj) -> &FinCategory {
        &self.cats[n]
    }
}

fn lim_of_colims(a: &BiIndexedPseudoFunctor, lim: &LimOfColims, budget: &Budget) -> Flow<String> {
    let (ic, k) = (&*a.i, &**a.jop());
    let (p, u) = (&a.product, &a.underlying);
    let columns: Vec<Column> = k.objects().map(|q| Column::build(a, lim, q, budget)).collect::<Flow<_>>()?;

    // C(m) through the interchange cells
    let mut act_obj = Vec::with_capacity(k.num_morphisms());
    let mut act_mor = Vec::with_capacity(k.num_morphisms());
    for m in k.morphisms() {
        let (jp, jq) = (k.dom(m), k.cod(m));
        let (src, dst) = (&columns[jp], &columns[jq]);
        let objs: Vec<Obj> = src
            .feet
            .iter()
            .map(|&(i, x)| dst.lookup[&(i, u.on(p.right_mor(i, m)).obj(x))])
            .collect();
        let built = lim.diagram.on(m);
        if objs != built.obj_map() {
            return mismatch(format!("C(`{}`) moves objects wrongly", k.mor_name(m)));
        }
        let mut mors = Vec::with_capacity(lim.colimits[jp].base().num_morphisms());
        for f in lim.colimits[jp].base().morphisms() {
            let (from, to, kf) = src.back[&f];
            let ((_, x), (_, y)) = (src.feet[from], src.feet[to]);
            let hom = &src.homs[src.pair(from, to)];
            let mut image = None;
            for &e in &hom.members[kf] {
                let ((n, s, s2), h) = hom.elems[e];
                let o = p.obj(n, jq);
                let c = u.at(o);
                let moved = u.on(p.right_mor(n, m)).mor(h);
                let h2 = c.compose(
                    a.interchange_cell(s2, m, y),
                    c.compose(moved, u.inv(o, a.interchange_cell(s, m, x))),
                );
                match (image, dst.class(objs[from], objs[to], (n, s, s2), h2)) {
                    (_, None) => return mismatch("C(m) leaves the hom-set"),
                    (None, hit) => image = hit,
                    (Some(prev), Some(next)) if prev != next => return mismatch("C(m) is not well defined"),
                    _ => {}
                }
            }
            mors.push(image.expect("classes are nonempty"));
        }
        if mors != built.mor_map() {
            return mismatch(format!("C(`{}`) moves classes wrongly", k.mor_name(m)));
        }
        act_obj.push(objs);
        act_mor.push(mors);
    }

    let sigma = |q: Obj, i: Obj, f: Mor| -> Flow<Mor> {
        let col = &columns[q];
        let c = u.at(p.obj(i, q));
        let id = ic.identity(i);
        let h = u.on(p.left_mor(id, q)).mor(f);
        let (from, to) = (col.lookup[&(i, c.dom(f))], col.lookup[&(i, c.cod(f))]);
        col.class(from, to, (i, id, id), h)
            .map_or_else(|| mismatch("a value morphism has no class"), Ok)
    };
    let identity = |q: Obj, o: Obj| -> Flow<Mor> {
        let (i, x) = columns[q].feet[o];
        sigma(q, i, u.at(p.obj(i, q)).identity(x))
    };
    let compose = |q: Obj, g: Mor, f: Mor| -> Flow<Mor> {
        columns[q]
            .compose(g, f)
            .map_or_else(|| mismatch("no common apex for a composite"), Ok)
    };
    let is_iso = |q: Obj, f: Mor| -> Flow<bool> {
        let (from, to, _) = columns[q].back[&f];
        let (ida, idb) = (identity(q, from)?, identity(q, to)?);
        for &g in columns[q].hom(to, from) {
            if compose(q, g, f)? == ida && compose(q, f, g)? == idb {
                return Ok(true);
            }
        }
        Ok(false)
    };

    // objects by brute force over feet and classes
    let mut found = Vec::new();
    let sizes: Vec<usize> = columns.iter().map(|c| c.feet.len()).collect();
    for_each_choice(&sizes, budget, |xs| {
        let options: Vec<&[Mor]> = k
            .morphisms()
            .map(|m| {
                let (jp, jq) = (k.dom(m), k.cod(m));
                columns[jq].hom(xs[jq], act_obj[m][xs[jp]])
            })
            .collect();
        let th_sizes: Vec<usize> = options.iter().map(|o| o.len()).collect();
        for_each_choice(&th_sizes, budget, |th| {
            let theta: Vec<Mor> = th.iter().enumerate().map(|(m, &e)| options[m][e]).collect();
            for m in k.morphisms() {
                if !is_iso(k.cod(m), theta[m])? {
                    return Ok(());
                }
            }
            for q in k.objects() {
                let (i, x) = columns[q].feet[xs[q]];
                let unit = sigma(q, i, u.unit(p.obj(i, q), x))?;
                if compose(q, unit, theta[k.identity(q)])? != identity(q, xs[q])? {
                    return Ok(());
                }
            }
            for (m, m2) in k.composable_pairs() {
                let (p2, q) = (k.dom(m2), k.cod(m));
                let (i, x) = columns[p2].feet[xs[p2]];
                let cell = sigma(q, i, u.comp(p.right_mor(i, m), p.right_mor(i, m2), x))?;
                let lhs = compose(q, act_mor[m][theta[m2]], theta[m])?;
                let rhs = compose(q, cell, theta[k.compose(m, m2)])?;
                if lhs != rhs {
                    return Ok(());
                }
            }
            found.push(TwoLimObject { xs: xs.to_vec(), theta });
            Ok(())
        })
    })?;
    found.sort();
    let mut built = lim.lim.objects().to_vec();
    built.sort();
    if found != built {
        return mismatch(format!("{} objects by class equations, {} built", found.len(), built.len()));
    }

    // homs as families of classes
    let n = built.len();
    let mut families = 0;
    for from in 0..n {
        for to in 0..n {
            let (x, y) = (lim.lim.object(from), lim.lim.object(to));
            let homs: Vec<&[Mor]> = k.objects().map(|q| columns[q].hom(x.xs[q], y.xs[q])).collect();
            let sizes: Vec<usize> = homs.iter().map(|h| h.len()).collect();
            let mut count = 0;
            for_each_choice(&sizes, budget, |idx| {
                let fam: Vec<Mor> = idx.iter().enumerate().map(|(q, &e)| homs[q][e]).collect();
                for m in k.morphisms() {
                    let (jp, jq) = (k.dom(m), k.cod(m));
                    if compose(jq, y.theta[m], fam[jq])? != compose(jq, act_mor[m][fam[jp]], x.theta[m])? {
                        return Ok(());
                    }
                }
                if lim.lim.family_class(from, to, &fam).is_none() {
                    return mismatch("a compatible family of classes is not a built morphism");
                }
                count += 1;
                Ok(())
            })?;
            if count != lim.lim.lim_hom_family(from, to).len() {
                return mismatch(format!("hom ({from}, {to}): {count} families, {} built", lim.lim.lim_hom_family(from, to).len()));
            }
            families += count;
        }
    }
    Ok(format!("{n} objects and {families} morphisms by class equations"))
}
