//! Seeded random instances: strict bi-indexed pseudofunctors over library
//! shapes, and functorial set diagrams.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::fincat::{enumerate_functors, for_each_nat, FinCategory, FinFunctor, Mor, ProductCategory};
use crate::bilim::enumerate_lim_objects;
use crate::interchange::colimit_diagram;
use crate::library;
use crate::pseudo::{product_index, BiIndexedPseudoFunctor, PseudoFunctor};

/// Bounds for generated instances.
#[derive(Debug, Clone, Copy)]
pub struct GenLimits {
    /// Backtracking steps per assignment attempt.
    pub steps: usize,
    /// Fresh attempts before giving up.
    pub attempts: usize,
    /// Upper bound on `|Ob I| * |Ob J| * max |Ob a(i,j)|`.
    pub cells: usize,
    /// Upper bound on the number of objects of the limit of colimits.
    pub lim_objects: usize,
}

impl Default for GenLimits {
    fn default() -> Self {
        GenLimits {
            steps: 20_000,
            attempts: 20,
            cells: 24,
            lim_objects: 64,
        }
    }
}

/// Assigns one candidate to every morphism of `cat` so that composites are
/// respected, by depth-first search over shuffled candidate lists.
fn assign<T: Clone>(
    cat: &FinCategory,
    candidates: &[Vec<T>],
    compose: impl Fn(&T, &T) -> T,
    same: impl Fn(&T, &T) -> bool,
    mut steps: usize,
) -> Option<Vec<T>> {
    let order: Vec<Mor> = cat.morphisms().collect();
    let mut position = vec![0; cat.num_morphisms()];
    for (k, &m) in order.iter().enumerate() {
        position[m] = k;
    }
    let mut checks: Vec<Vec<(Mor, Mor)>> = vec![Vec::new(); order.len()];
    for (g, f) in cat.composable_pairs() {
        if cat.is_identity(g) || cat.is_identity(f) {
            continue;
        }
        let last = position[g].max(position[f]).max(position[cat.compose(g, f)]);
        checks[last].push((g, f));
    }
    let mut chosen: Vec<Option<T>> = vec![None; order.len()];
    let mut cursor = vec![0usize; order.len()];
    let mut at = 0;
    while at < order.len() {
        let m = order[at];
        if cursor[at] == candidates[m].len() {
            cursor[at] = 0;
            chosen[m] = None;
            if at == 0 {
                return None;
            }
            at -= 1;
            continue;
        }
        steps = steps.checked_sub(1)?;
        chosen[m] = Some(candidates[m][cursor[at]].clone());
        cursor[at] += 1;
        let ok = checks[at].iter().all(|&(g, f)| {
            let (cg, cf, cgf) = (&chosen[g], &chosen[f], &chosen[cat.compose(g, f)]);
            same(&compose(cg.as_ref().unwrap(), cf.as_ref().unwrap()), cgf.as_ref().unwrap())
        });
        if ok {
            at += 1;
        }
    }
    Some(chosen.into_iter().map(Option::unwrap).collect())
}

/// A random strict pseudofunctor `I x J^op -> CAT` with the given values.
pub fn strict_bi_indexed(
    rng: &mut ChaCha8Rng,
    name: &str,
    i: &Arc<FinCategory>,
    j: &Arc<FinCategory>,
    values: &[Arc<FinCategory>],
    limits: GenLimits,
) -> Option<BiIndexedPseudoFunctor> {
    let p = product_index(i, j);
    let cat = &*p.category;
    for _ in 0..limits.attempts {
        let at: Vec<Arc<FinCategory>> = cat.objects().map(|_| values.choose(rng).unwrap().clone()).collect();
        let mut candidates = Vec::with_capacity(cat.num_morphisms());
        for m in cat.morphisms() {
            if cat.is_identity(m) {
                candidates.push(vec![FinFunctor::identity(&at[cat.dom(m)])]);
            } else {
                let mut all = enumerate_functors(&at[cat.dom(m)], &at[cat.cod(m)], 4096)?;
                all.shuffle(rng);
                candidates.push(all);
            }
        }
        let on = assign(cat, &candidates, |g, f| g.after(f), |a, b| a.same_maps(b), limits.steps);
        if let Some(on) = on {
            let underlying = PseudoFunctor::strict(name, p.category.clone(), at, on);
            underlying.validate().ok()?;
            return BiIndexedPseudoFunctor::new(i.clone(), j.clone(), p, underlying, false).ok();
        }
    }
    None
}

/// Makes `a` non-strict without changing it up to equivalence: picks a
/// natural automorphism `eta_m` of each `a(m)` and installs the composition
/// cells `a(g)(eta_f) . eta_g a(f) . eta_(g.f)^-1`.
pub fn twist(rng: &mut ChaCha8Rng, a: &BiIndexedPseudoFunctor) -> BiIndexedPseudoFunctor {
    let u = &a.underlying;
    let cat = &**u.index();
    let eta: Vec<Vec<Mor>> = cat
        .morphisms()
        .map(|m| {
            let f = u.on(m);
            let ident = || f.source().objects().map(|x| f.target().identity(f.obj(x))).collect();
            if cat.is_identity(m) {
                return ident();
            }
            let mut autos: Vec<Vec<Mor>> = Vec::new();
            for_each_nat(f, f, |c| {
                if c.iter().all(|&x| f.target().is_iso(x)) {
                    autos.push(c.to_vec());
                }
                autos.len() < 64
            });
            autos.choose(rng).cloned().unwrap_or_else(ident)
        })
        .collect();
    let mut comp = HashMap::new();
    for (g, f) in cat.composable_pairs() {
        let gf = cat.compose(g, f);
        let c = &**u.at(cat.cod(g));
        let cells = u
            .at(cat.dom(f))
            .objects()
            .map(|x| {
                let fx = u.on(f).obj(x);
                let ours = c.compose(u.on(g).mor(eta[f][x]), eta[g][fx]);
                c.compose(ours, c.inverse(eta[gf][x]).expect("eta is invertible"))
            })
            .collect::<Vec<Mor>>();
        if cells.iter().any(|&m| !c.is_identity(m)) {
            comp.insert((g, f), cells);
        }
    }
    let underlying = PseudoFunctor::from_parts(
        format!("{}~", u.name()),
        u.index().clone(),
        cat.objects().map(|o| u.at(o).clone()).collect(),
        cat.morphisms().map(|m| u.on(m).clone()).collect(),
        Vec::new(),
        comp,
    );
    BiIndexedPseudoFunctor::new(a.i.clone(), a.j.clone(), a.product.clone(), underlying, !a.filtered.verdict)
        .expect("same shape as the input")
}

/// A random instance over the library shapes, within `limits`.
pub fn random_instance(rng: &mut ChaCha8Rng, name: &str, limits: GenLimits) -> BiIndexedPseudoFunctor {
    let filtered = library::filtered_shapes();
    let shapes = library::limit_shapes();
    let values = library::value_categories();
    loop {
        let i = filtered.choose(rng).unwrap().clone();
        let j = shapes.choose(rng).unwrap().clone();
        let cells = i.num_objects() * j.num_objects().max(1);
        let pool: Vec<Arc<FinCategory>> = values
            .iter()
            .filter(|v| cells * v.num_objects() <= limits.cells)
            .cloned()
            .collect();
        if pool.is_empty() {
            continue;
        }
        let width = rng.gen_range(1..=pool.len().min(3));
        let chosen: Vec<Arc<FinCategory>> = pool.choose_multiple(rng, width).cloned().collect();
        if let Some(a) = strict_bi_indexed(rng, name, &i, &j, &chosen, limits) {
            let fits = colimit_diagram(&a, false)
                .map(|(_, _, d)| enumerate_lim_objects(&d).len() <= limits.lim_objects)
                .unwrap_or(true);
            if fits {
                return a;
            }
        }
    }
}

/// A random functorial set diagram over `product`, sets of size at most
/// `max_size`. Returns sizes and per-morphism actions.
pub fn random_set_diagram(
    rng: &mut ChaCha8Rng,
    product: &ProductCategory,
    max_size: usize,
    limits: GenLimits,
) -> Option<(Vec<usize>, Vec<Vec<usize>>)> {
    let cat = &*product.category;
    for _ in 0..limits.attempts {
        let sizes: Vec<usize> = cat.objects().map(|_| rng.gen_range(1..=max_size)).collect();
        let candidates: Vec<Vec<Vec<usize>>> = cat
            .morphisms()
            .map(|m| {
                let (a, b) = (sizes[cat.dom(m)], sizes[cat.cod(m)]);
                if cat.is_identity(m) {
                    return vec![(0..a).collect()];
                }
                let mut all = all_functions(a, b);
                all.shuffle(rng);
                all
            })
            .collect();
        let compose = |g: &Vec<usize>, f: &Vec<usize>| f.iter().map(|&x| g[x]).collect::<Vec<usize>>();
        if let Some(actions) = assign(cat, &candidates, compose, |a, b| a == b, limits.steps) {
            return Some((sizes, actions));
        }
    }
    None
}

fn all_functions(a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..a {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..b).map(move |y| {
                    let mut g = f.clone();
                    g.push(y);
                    g
                })
            })
            .collect();
    }
    out
}
