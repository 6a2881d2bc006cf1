//! The eight acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{corpus, corpus_files, isomorphic_by_names, load, round_trip, twocolim};
use twocolim_core::bicolim::{
    build_2colim, count_strict_factorizations, induced_transformation, strong_factor_colim, CoconeModification, Rep,
    TwoColimCategory,
};
use twocolim_core::bilim::{build_2lim, check_object_conditions, count_strict_factorizations_lim, strong_factor_lim};
use twocolim_core::fincat::{cospan_category, is_filtered, FinCategory, FinFunctor};
use twocolim_core::generate::{random_instance, random_set_diagram, GenLimits};
use twocolim_core::interchange::{
    build_colim_of_lims, build_lim_of_colims, build_psi, check_equivalence_with, colimit_diagram, ColimOfLims,
    EquivalenceOptions, EquivalenceReport, LimOfColims,
};
use twocolim_core::library;
use twocolim_core::pseudo::{product_index, BiIndexedPseudoFunctor, PseudoFunctor};
use twocolim_core::setdiag::{brute, interchange_map_set, SetDiagram};

type Outcome = Result<String, String>;

const SUITE_SIZE: usize = 50;
const SUITE_SEED: u64 = 7;

struct Case {
    a: BiIndexedPseudoFunctor,
    col: ColimOfLims,
    lim: LimOfColims,
    report: EquivalenceReport,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn names(v: &[Arc<FinCategory>]) -> Vec<String> {
    v.iter().map(|c| c.name().to_string()).collect()
}

fn build_suite() -> Result<(Vec<Case>, Duration), String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let opts = EquivalenceOptions {
        skip_filter_check: false,
        cross_check: true,
    };
    let mut cases = Vec::new();
    for k in 0..SUITE_SIZE {
        let a = random_instance(&mut rng, &format!("case{k}"), GenLimits::default());
        let report = check_equivalence_with(&a, opts).map_err(|e| format!("case {k}: {e}"))?;
        let col = build_colim_of_lims(&a, false).map_err(|e| e.to_string())?;
        let lim = build_lim_of_colims(&a, false).map_err(|e| e.to_string())?;
        cases.push(Case { a, col, lim, report });
    }
    Ok((cases, start.elapsed()))
}

fn criterion_1(suite: &Result<(Vec<Case>, Duration), String>) -> Outcome {
    let filtered = names(&library::filtered_shapes());
    let shapes = names(&library::limit_shapes());
    for want in ["One", "Two", "Cospan", "Idem"] {
        ensure(filtered.iter().any(|n| n == want), || format!("filtered library lacks {want}"))?;
    }
    for want in ["One", "Two", "Par", "Pullback"] {
        ensure(shapes.iter().any(|n| n == want), || format!("limit library lacks {want}"))?;
    }
    let idem = library::idempotent();
    let e = idem.morphism_by_name("e").unwrap();
    ensure(idem.compose(e, e) == idem.compose(e, idem.identity(0)), || "Idem does not equalize".into())?;
    for v in library::value_categories() {
        ensure(v.num_objects() <= 4 && v.num_morphisms() <= 12, || format!("value category {} too large", v.name()))?;
    }
    let (cases, time) = suite.as_ref().map_err(Clone::clone)?;
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut direct = (0, 0);
    for c in cases {
        for d in &c.report.direct_checks {
            if d.skipped {
                direct.1 += 1;
            } else {
                direct.0 += 1;
            }
        }
        ensure(c.a.underlying.is_strict(), || format!("{} is not strict", c.report.instance))?;
        ensure(c.report.verdict, || format!("{}: verdict false", c.report.instance))?;
        ensure(c.report.direct_checks.iter().all(|d| d.agrees), || format!("{}: direct check disagrees", c.report.instance))?;
        pairs.push((c.a.i.name().to_string(), c.a.j.name().to_string()));
    }
    pairs.sort();
    pairs.dedup();
    ensure(*time < Duration::from_secs(300), || format!("took {time:?}"))?;
    Ok(format!(
        "{} instances, {} distinct I x J shape pairs, all verdicts true, {} direct checks agree ({} over budget), {:.2}s",
        cases.len(),
        pairs.len(),
        direct.0,
        direct.1,
        time.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let limits = GenLimits::default();
    let mut checked = 0;
    let mut round = 0;
    while checked < 120 {
        round += 1;
        ensure(round < 2000, || "could not generate enough set diagrams".into())?;
        for i in library::filtered_shapes() {
            for j in library::limit_shapes() {
                let p = product_index(&i, &j);
                let Some((sizes, actions)) = random_set_diagram(&mut rng, &p, 4, limits) else {
                    continue;
                };
                let r = interchange_map_set(&p, &sizes, &actions).map_err(|e| e.to_string())?;
                let label = format!("{} x {}^op, sizes {sizes:?}", i.name(), j.name());
                ensure(r.bijective, || format!("{label}: not bijective {:?}", r.witness))?;
                let (left, right) = brute::interchange_sizes(&p, &sizes, &actions);
                ensure(r.colim_of_lims.num_classes() == left, || format!("{label}: colim of lims differs from closure"))?;
                ensure(r.lim_of_colims.len() == right, || format!("{label}: lim of colims differs from enumeration"))?;
                let d = SetDiagram::new(&p.category, sizes.clone(), actions.clone()).map_err(|e| e.to_string())?;
                ensure(
                    brute::lim_families(&p.category, &sizes, |m, x| d.act(m, x)).len()
                        == twocolim_core::setdiag::lim_set(&d).len(),
                    || format!("{label}: whole limit differs"),
                )?;
                checked += 1;
            }
        }
    }
    let disc = library::discrete_pair();
    let p = product_index(&disc, &disc);
    let sizes = vec![1; p.category.num_objects()];
    let actions: Vec<Vec<usize>> = p.category.morphisms().map(|_| vec![0]).collect();
    let r = interchange_map_set(&p, &sizes, &actions).map_err(|e| e.to_string())?;
    ensure(!r.bijective, || "discrete counterexample is bijective".into())?;
    let (left, right) = brute::interchange_sizes(&p, &sizes, &actions);
    ensure(left == 2 && right == 4, || format!("counterexample sizes {left}, {right}"))?;
    Ok(format!("{checked} filtered diagrams bijective and match both oracles; discrete I: 2 vs 4 elements"))
}

fn criterion_3() -> Outcome {
    let mut pairs = 0;
    for c in library::filtered_shapes() {
        ensure(is_filtered(&c).verdict, || format!("{} judged not filtered", c.name()))?;
        for a in c.objects() {
            for b in c.objects() {
                let cs = cospan_category(&c, a, b).map_err(|e| e.to_string())?;
                ensure(is_filtered(&cs.category).verdict, || format!("cospan category of {} at ({a},{b})", c.name()))?;
                pairs += 1;
            }
        }
    }
    let mut bad = Vec::new();
    for c in library::non_filtered_shapes() {
        let w = is_filtered(&c);
        let v = w.counterexample.ok_or_else(|| format!("{} has no counterexample", c.name()))?;
        ensure(!w.verdict && v.replays(&c), || format!("{}: counterexample does not replay", c.name()))?;
        bad.push(format!("{} ({})", c.name(), v.condition()));
    }
    Ok(format!("{pairs} cospan categories filtered; counterexamples replay for {}", bad.join(", ")))
}

fn check_inverse(f: &FinFunctor) -> Result<(), String> {
    let g = f.inverse().ok_or_else(|| format!("{} is not invertible", f.name()))?;
    g.check().map_err(|e| e.to_string())?;
    ensure(g.after(f).same_maps(&FinFunctor::identity(f.source())), || format!("{}: left inverse fails", f.name()))?;
    ensure(f.after(&g).same_maps(&FinFunctor::identity(f.target())), || format!("{}: right inverse fails", f.name()))
}

fn criterion_4() -> Outcome {
    let mut values = library::value_categories();
    for f in corpus_files() {
        values.extend(load(&f).categories.iter().cloned());
    }
    let one = library::terminal();
    for v in &values {
        let b = PseudoFunctor::constant(&one, v);
        let colim = build_2colim(&b).map_err(|e| format!("{}: {e}", v.name()))?;
        check_inverse(&colim.injection(0))?;
        let lim = build_2lim(&b).map_err(|e| format!("{}: {e}", v.name()))?;
        check_inverse(&lim.projection(0))?;
    }
    Ok(format!("{} value categories: injection and projection are isomorphisms", values.len()))
}

/// Hom classes recomputed by closure from the public transport maps.
fn closure_agrees(colim: &TwoColimCategory) -> Result<(), String> {
    let base = colim.base();
    for a in base.objects() {
        for c in base.objects() {
            let (i, i2) = (colim.object_data(a).0, colim.object_data(c).0);
            let cs = colim.cospan(i, i2);
            let cat = &cs.category;
            let elems: Vec<&[usize]> = cat.objects().map(|o| colim.hom_elements(a, c, o)).collect();
            let actions: Vec<Vec<usize>> = cat
                .morphisms()
                .map(|e| {
                    let (o1, o2) = (cat.dom(e), cat.cod(e));
                    elems[o1]
                        .iter()
                        .map(|&h| {
                            let r = colim.transport(a, c, Rep { cospan: o1, apex: cs.apexes[o1], h }, cs.arrows[e]);
                            elems[o2].iter().position(|&x| x == r.h).expect("transport stays in the hom")
                        })
                        .collect()
                })
                .collect();
            let d = SetDiagram::new(cat, elems.iter().map(|e| e.len()).collect(), actions).map_err(|e| e.to_string())?;
            let classes = brute::colim_classes(&d);
            ensure(classes.len() == base.hom(a, c).len(), || format!("{}: hom ({a},{c}) class count", base.name()))?;
            for class in &classes {
                let (o, e) = class[0];
                let f = colim.class_of(a, c, o, elems[o][e]).map_err(|e| e.to_string())?;
                for &(o2, e2) in class {
                    ensure(colim.class_of(a, c, o2, elems[o2][e2]) == Ok(f), || format!("{}: hom ({a},{c}) splits a class", base.name()))?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_5(suite: &Result<(Vec<Case>, Duration), String>) -> Outcome {
    let (cases, _) = suite.as_ref().map_err(Clone::clone)?;
    let mut colims: Vec<TwoColimCategory> = Vec::new();
    for c in cases {
        colims.push(c.col.colim.clone());
        let (_, per_j, _) = colimit_diagram(&c.a, false).map_err(|e| e.to_string())?;
        colims.extend(per_j);
    }
    for (file, name) in [("cocones.catml", "P"), ("pseudo.catml", "T")] {
        let ws = load(&corpus(file));
        colims.push(build_2colim(&ws.pseudofunctor(name).unwrap().functor).map_err(|e| e.to_string())?);
    }
    let mut pairs = 0;
    for colim in &colims {
        colim.check_well_defined().map_err(|e| e.to_string())?;
        colim.base().check_laws().map_err(|e| e.to_string())?;
        closure_agrees(colim)?;
        pairs += colim.base().composable_pairs().count();
    }
    Ok(format!("{} colimits: well defined, associative, unital, closure agrees ({pairs} composable pairs)", colims.len()))
}

fn criterion_6() -> Outcome {
    let ws = load(&corpus("cocones.catml"));
    let p = &ws.pseudofunctor("P").unwrap().functor;
    let colim = build_2colim(p).map_err(|e| e.to_string())?;
    let lim = build_2lim(p).map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    let mut factors = Vec::new();
    for entry in &ws.cocones {
        let rho = &entry.cocone;
        let fac = strong_factor_colim(&colim, rho).map_err(|e| e.to_string())?;
        ensure(fac.is_strong(), || format!("{}: not strong", rho.name))?;
        for i in p.index().objects() {
            ensure(fac.functor.after(&colim.injection(i)).same_maps(&rho.legs[i]), || format!("{}: leg {i}", rho.name))?;
        }
        let n = count_strict_factorizations(&colim, rho, 200).ok_or_else(|| format!("{}: over 200 candidates", rho.name))?;
        ensure(n == 1, || format!("{}: {n} factorizations", rho.name))?;
        lines.push(rho.name.clone());
        factors.push(fac);
    }
    for entry in &ws.cones {
        let k = &entry.cone;
        let f = strong_factor_lim(&lim, k).map_err(|e| e.to_string())?;
        for q in p.index().objects() {
            ensure(lim.projection(q).after(&f).same_maps(&k.legs[q]), || format!("{}: leg {q}", k.name))?;
        }
        let n = count_strict_factorizations_lim(&lim, k, 200).ok_or_else(|| format!("{}: over 200 candidates", k.name))?;
        ensure(n == 1, || format!("{}: {n} factorizations", k.name))?;
        lines.push(k.name.clone());
    }
    let (r, r2) = (&ws.cocone("R").unwrap().cocone, &ws.cocone("R2").unwrap().cocone);
    let iso = &r.target;
    let m = |n: &str| iso.morphism_by_name(n).unwrap();
    let lambda = CoconeModification {
        components: vec![vec![m("u"), m("v")], vec![m("id_x"), m("id_y")]],
    };
    lambda.validate(p, r, r2).map_err(|e| e.to_string())?;
    let (nat, count) = induced_transformation(&colim, &factors[0], &factors[1], &lambda).map_err(|e| e.to_string())?;
    nat.check().map_err(|e| e.to_string())?;
    ensure(count == 1, || format!("Lambda matched {count} times"))?;
    Ok(format!("factorizations of {} strict and unique; Lambda unique", lines.join(", ")))
}

fn criterion_7(suite: &Result<(Vec<Case>, Duration), String>) -> Outcome {
    let (cases, _) = suite.as_ref().map_err(Clone::clone)?;
    let mut total = 0;
    let mut max_rounds = 0;
    for c in cases {
        let psi = build_psi(&c.col, &c.lim).map_err(|e| e.to_string())?;
        ensure(c.report.preimages.len() == c.lim.lim.objects().len(), || format!("{}: missing preimages", c.report.instance))?;
        let lim_base = c.lim.lim.base();
        for pre in &c.report.preimages {
            let label = format!("{} object {}", c.report.instance, pre.object);
            ensure(pre.rounds <= c.a.i.num_morphisms(), || format!("{label}: {} rounds", pre.rounds))?;
            let (k, x) = c.col.triple(pre.triple);
            ensure(k == pre.vertex, || format!("{label}: vertex"))?;
            let failure = check_object_conditions(c.col.limits[k].diagram(), &x.xs, &x.theta).map_err(|e| e.to_string())?;
            ensure(failure.is_none(), || format!("{label}: {failure:?}"))?;
            ensure(c.lim.lim.endpoints(pre.iso) == (pre.object, psi.obj(pre.triple)), || format!("{label}: iso endpoints"))?;
            let family = c.lim.lim.family(pre.iso);
            let d = c.lim.lim.diagram();
            for (q, &comp) in family.iter().enumerate() {
                ensure(d.at(q).is_iso(comp), || format!("{label}: component {q} not invertible"))?;
            }
            ensure(lim_base.is_iso(pre.iso), || format!("{label}: not invertible"))?;
            max_rounds = max_rounds.max(pre.rounds);
            total += 1;
        }
    }
    Ok(format!("{total} preimages replayed, at most {max_rounds} rounds"))
}

fn criterion_8() -> Outcome {
    let files: Vec<String> = corpus_files().iter().map(|p| p.to_string_lossy().into_owned()).collect();
    for f in corpus_files() {
        let ws = load(&f);
        round_trip(&ws).map_err(|e| format!("{}: {e}", f.display()))?;
        for c in &ws.categories {
            isomorphic_by_names(c, c)?;
        }
    }
    let path = |n: &str| corpus(n).to_string_lossy().into_owned();
    let mut runs: Vec<Vec<String>> = vec![
        vec!["fuzz".into(), "--cases".into(), "10".into(), "--seed".into(), "7".into()],
        vec!["interchange".into(), "--pseudofunctor".into(), "A".into(), path("interchange_2x2.catml")],
        vec!["colim".into(), "--pseudofunctor".into(), "T".into(), path("pseudo.catml")],
        vec!["lim".into(), "--pseudofunctor".into(), "P".into(), path("cocones.catml")],
        vec!["factor".into(), "--pseudofunctor".into(), "P".into(), "--cocone".into(), "R".into(), path("cocones.catml")],
        vec!["filtered".into(), "--category".into(), "ParPair".into(), path("nonfiltered.catml")],
    ];
    let mut all = vec!["validate".to_string()];
    all.extend(files.iter().cloned());
    runs.push(all);
    let mut count = 0;
    for args in &runs {
        for format in ["human", "json"] {
            let mut v = vec!["--format", format];
            v.extend(args.iter().map(String::as_str));
            let (a, b) = (twocolim(&v), twocolim(&v));
            ensure(a.stdout == b.stdout && a.stderr == b.stderr && a.code == b.code, || format!("{v:?} differs between runs"))?;
            count += 1;
        }
    }
    Ok(format!("{} corpus files round-trip; {count} command runs byte-identical", files.len()))
}

fn main() {
    let suite = build_suite();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "interchange is an equivalence on generated instances", criterion_1(&suite)),
        (2, "set-level interchange against brute-force oracles", criterion_2()),
        (3, "cospan categories of filtered shapes are filtered", criterion_3()),
        (4, "degenerations over the terminal index", criterion_4()),
        (5, "quotient composition is sound", criterion_5(&suite)),
        (6, "strong factorization and induced transformation", criterion_6()),
        (7, "essential preimage replay", criterion_7(&suite)),
        (8, "CLI determinism and round-trip", criterion_8()),
    ];
    let mut failed = 0;
    for (n, title, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {n}: {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n}: {title}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
