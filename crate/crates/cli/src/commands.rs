//! One function per subcommand. Each returns an [`Outcome`] carrying both
//! renderings; the driver picks one.

use std::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use twocolim_core::bicolim::{build_2colim, count_strict_factorizations, strong_factor_colim, TwoColimCategory};
use twocolim_core::bilim::{build_2lim, count_strict_factorizations_lim, strong_factor_lim, TwoLimCategory};
use twocolim_core::fincat::{is_filtered, FinCategory, FinFunctor};
use twocolim_core::generate::{random_instance, GenLimits};
use twocolim_core::interchange::{
    build_colim_of_lims, build_lim_of_colims, check_equivalence, check_equivalence_with, EquivalenceOptions, HomFailure,
};
use twocolim_core::Error as CoreError;

use crate::error::{CliError, Result};
use crate::print;
use crate::report::{table, Outcome};
use crate::workspace::{missing, Workspace};

/// Functor searches for uniqueness stop beyond this many candidates.
pub const CANDIDATE_LIMIT: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate,
    Print,
    Filtered { category: String },
    Colim { pseudofunctor: String },
    Lim { pseudofunctor: String },
    Factor { pseudofunctor: String, cocone: Option<String>, cone: Option<String> },
    Interchange { pseudofunctor: String, skip_filter_check: bool },
    Fuzz { cases: usize, seed: u64 },
}

impl Command {
    pub fn echo(&self) -> String {
        match self {
            Command::Validate => "validate".into(),
            Command::Print => "print".into(),
            Command::Filtered { category } => format!("filtered --category {category}"),
            Command::Colim { pseudofunctor } => format!("colim --pseudofunctor {pseudofunctor}"),
            Command::Lim { pseudofunctor } => format!("lim --pseudofunctor {pseudofunctor}"),
            Command::Factor { pseudofunctor, cocone, cone } => {
                let mut s = format!("factor --pseudofunctor {pseudofunctor}");
                if let Some(r) = cocone {
                    write!(s, " --cocone {r}").unwrap();
                }
                if let Some(k) = cone {
                    write!(s, " --cone {k}").unwrap();
                }
                s
            }
            Command::Interchange { pseudofunctor, skip_filter_check } => {
                let mut s = format!("interchange --pseudofunctor {pseudofunctor}");
                if *skip_filter_check {
                    s.push_str(" --diagnostic-skip-filter-check");
                }
                s
            }
            Command::Fuzz { cases, seed } => format!("fuzz --cases {cases} --seed {seed}"),
        }
    }
}

pub fn run(ws: &Workspace, cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Validate => Ok(validate(ws)),
        Command::Print => Ok(Outcome {
            json: json!({ "catml": print::workspace(ws) }),
            human: print::workspace(ws),
            verdict: None,
        }),
        Command::Filtered { category } => filtered(ws, category),
        Command::Colim { pseudofunctor } => colim(ws, pseudofunctor),
        Command::Lim { pseudofunctor } => lim(ws, pseudofunctor),
        Command::Factor { pseudofunctor, cocone, cone } => factor(ws, pseudofunctor, cocone.as_deref(), cone.as_deref()),
        Command::Interchange { pseudofunctor, skip_filter_check } => interchange(ws, pseudofunctor, *skip_filter_check),
        Command::Fuzz { cases, seed } => Ok(fuzz(*cases, *seed)),
    }
}

fn core_err(e: CoreError) -> CliError {
    CliError::Core { at: None, source: e }
}

fn validate(ws: &Workspace) -> Outcome {
    let mut rows = vec![vec!["kind".to_string(), "name".into(), "size".into()]];
    let mut items = Vec::new();
    let mut push = |kind: &str, name: &str, size: String| {
        rows.push(vec![kind.to_string(), name.to_string(), size.clone()]);
        items.push(json!({ "kind": kind, "name": name, "size": size }));
    };
    for c in &ws.categories {
        push("category", c.name(), format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms()));
    }
    for f in &ws.functors {
        push("functor", f.name(), format!("{} -> {}", f.source().name(), f.target().name()));
    }
    for n in &ws.nats {
        push("nat", n.name(), format!("{} => {}", n.source().name(), n.target().name()));
    }
    for p in &ws.pseudofunctors {
        let u = &p.functor;
        push("pseudofunctor", u.name(), format!("over {}", u.index().name()));
    }
    for c in &ws.cocones {
        push("cocone", &c.cocone.name, format!("{} -> {}", c.diagram, c.cocone.target.name()));
    }
    for c in &ws.cones {
        push("cone", &c.cone.name, format!("{} -> {}", c.cone.source.name(), c.diagram));
    }
    Outcome {
        json: json!({ "entities": items }),
        human: table(&rows),
        verdict: None,
    }
}

fn filtered(ws: &Workspace, name: &str) -> Result<Outcome> {
    let c = ws.category(name).ok_or_else(|| missing("category", name))?;
    let w = is_filtered(c);
    let counter = w.counterexample.as_ref().map(|v| {
        json!({
            "condition": v.condition(),
            "description": v.describe(c),
            "replays": v.replays(c),
        })
    });
    let human = match &w.counterexample {
        None => format!("{name}: filtered\n"),
        Some(v) => format!("{name}: not filtered\n  condition {} fails: {}\n", v.condition(), v.describe(c)),
    };
    Ok(Outcome {
        json: json!({ "category": name, "filtered": w.verdict, "counterexample": counter }),
        human,
        verdict: Some(w.verdict),
    })
}

pub fn category_json(c: &FinCategory) -> Value {
    let morphisms: Vec<Value> = c
        .morphisms()
        .map(|m| json!({ "name": c.mor_name(m), "dom": c.object_name(c.dom(m)), "cod": c.object_name(c.cod(m)) }))
        .collect();
    let compose: Vec<Value> = c
        .composable_pairs()
        .filter(|&(g, f)| !c.is_identity(g) && !c.is_identity(f))
        .map(|(g, f)| json!([c.mor_name(g), c.mor_name(f), c.mor_name(c.compose(g, f))]))
        .collect();
    json!({
        "name": c.name(),
        "objects": c.objects().map(|o| c.object_name(o)).collect::<Vec<_>>(),
        "morphisms": morphisms,
        "compose": compose,
    })
}

fn category_human(c: &FinCategory) -> String {
    let mut s = format!("{}: {} objects, {} morphisms\n", c.name(), c.num_objects(), c.num_morphisms());
    let mut rows = vec![vec!["morphism".to_string(), "dom".into(), "cod".into()]];
    for m in c.morphisms() {
        rows.push(vec![c.mor_name(m).to_string(), c.object_name(c.dom(m)).into(), c.object_name(c.cod(m)).into()]);
    }
    for line in table(&rows).lines() {
        writeln!(s, "  {line}").unwrap();
    }
    s
}

fn colim(ws: &Workspace, name: &str) -> Result<Outcome> {
    let p = ws.pseudofunctor(name).ok_or_else(|| missing("pseudofunctor", name))?;
    let col = build_2colim(&p.functor).map_err(|e| CliError::Core {
        at: Some(p.at.clone()),
        source: e,
    })?;
    let base = col.base();
    let homs: Vec<Value> = base.morphisms().map(|f| hom_class_json(&col, f)).collect();
    let mut human = category_human(base);
    human.push_str("  classes\n");
    let mut rows = vec![vec!["morphism".to_string(), "representative".into(), "members".into()]];
    for (f, h) in base.morphisms().zip(&homs) {
        rows.push(vec![base.mor_name(f).to_string(), h["representative"]["text"].as_str().unwrap().to_string(), h["members"].to_string()]);
    }
    for line in table(&rows).lines() {
        writeln!(human, "  {line}").unwrap();
    }
    Ok(Outcome {
        json: json!({ "category": category_json(base), "classes": homs }),
        human,
        verdict: None,
    })
}

fn hom_class_json(col: &TwoColimCategory, f: usize) -> Value {
    let b = col.diagram();
    let ix = b.index();
    let r = col.canonical_rep(f);
    let (m, s, s2) = r.apex;
    let text = format!("{} <- {} -> {} : {}", ix.mor_name(s), ix.object_name(m), ix.mor_name(s2), b.at(m).mor_name(r.h));
    json!({
        "morphism": col.base().mor_name(f),
        "representative": {
            "apex": ix.object_name(m),
            "left": ix.mor_name(s),
            "right": ix.mor_name(s2),
            "h": b.at(m).mor_name(r.h),
            "text": text,
        },
        "members": col.members(f).len(),
    })
}

fn lim(ws: &Workspace, name: &str) -> Result<Outcome> {
    let p = ws.pseudofunctor(name).ok_or_else(|| missing("pseudofunctor", name))?;
    let l = build_2lim(&p.functor).map_err(|e| CliError::Core {
        at: Some(p.at.clone()),
        source: e,
    })?;
    let objects: Vec<Value> = (0..l.objects().len()).map(|o| lim_object_json(&l, o)).collect();
    let base = l.base();
    let mut human = category_human(base);
    human.push_str("  objects\n");
    let mut rows = vec![vec!["object".to_string(), "components".into(), "theta".into()]];
    for (o, v) in objects.iter().enumerate() {
        let comps: Vec<String> = v["components"].as_array().unwrap().iter().map(|c| format!("{}:{}", c["at"].as_str().unwrap(), c["object"].as_str().unwrap())).collect();
        let theta: Vec<String> = v["theta"].as_array().unwrap().iter().map(|c| format!("{}:{}", c["at"].as_str().unwrap(), c["component"].as_str().unwrap())).collect();
        rows.push(vec![base.object_name(o).to_string(), comps.join(" "), theta.join(" ")]);
    }
    for line in table(&rows).lines() {
        writeln!(human, "  {line}").unwrap();
    }
    Ok(Outcome {
        json: json!({ "category": category_json(base), "objects": objects }),
        human,
        verdict: None,
    })
}

fn lim_object_json(l: &TwoLimCategory, o: usize) -> Value {
    let c = l.diagram();
    let ix = c.index();
    let x = l.object(o);
    let comps: Vec<Value> = ix.objects().map(|q| json!({ "at": ix.object_name(q), "object": c.at(q).object_name(x.xs[q]) })).collect();
    let theta: Vec<Value> = ix
        .morphisms()
        .filter(|&m| !ix.is_identity(m))
        .map(|m| json!({ "at": ix.mor_name(m), "component": c.at(ix.cod(m)).mor_name(x.theta[m]) }))
        .collect();
    json!({ "name": l.base().object_name(o), "components": comps, "theta": theta })
}

fn functor_json(f: &FinFunctor) -> Value {
    let (a, b) = (f.source(), f.target());
    json!({
        "name": f.name(),
        "source": a.name(),
        "target": b.name(),
        "objects": a.objects().map(|o| json!([a.object_name(o), b.object_name(f.obj(o))])).collect::<Vec<_>>(),
        "morphisms": a.morphisms().map(|m| json!([a.mor_name(m), b.mor_name(f.mor(m))])).collect::<Vec<_>>(),
    })
}

fn factor(ws: &Workspace, name: &str, cocone: Option<&str>, cone: Option<&str>) -> Result<Outcome> {
    let p = ws.pseudofunctor(name).ok_or_else(|| missing("pseudofunctor", name))?;
    let at = |e| CliError::Core {
        at: Some(p.at.clone()),
        source: e,
    };
    let mismatch = |what: &str, diagram: &str| {
        core_err(CoreError::ShapeMismatch(format!("{what} is over `{diagram}`, not `{name}`")))
    };
    let (functor, strong, count, kind, other) = match (cocone, cone) {
        (Some(r), None) => {
            let entry = ws.cocone(r).ok_or_else(|| missing("cocone", r))?;
            if entry.diagram != name {
                return Err(mismatch(&format!("cocone `{r}`"), &entry.diagram));
            }
            let col = build_2colim(&p.functor).map_err(at)?;
            let fac = strong_factor_colim(&col, &entry.cocone).map_err(core_err)?;
            let count = count_strict_factorizations(&col, &entry.cocone, CANDIDATE_LIMIT);
            (fac.functor.clone(), fac.is_strong(), count, "cocone", r)
        }
        (None, Some(k)) => {
            let entry = ws.cone(k).ok_or_else(|| missing("cone", k))?;
            if entry.diagram != name {
                return Err(mismatch(&format!("cone `{k}`"), &entry.diagram));
            }
            let l = build_2lim(&p.functor).map_err(at)?;
            let f = strong_factor_lim(&l, &entry.cone).map_err(core_err)?;
            let count = count_strict_factorizations_lim(&l, &entry.cone, CANDIDATE_LIMIT);
            (f, true, count, "cone", k)
        }
        _ => {
            return Err(CliError::Syntax {
                at: crate::error::Location {
                    file: "<command line>".into(),
                    line: 0,
                    column: 0,
                },
                message: "give exactly one of --cocone and --cone".into(),
            })
        }
    };
    let unique = count.map(|n| n == 1);
    let mut human = format!("factorization of {kind} {other} through {name}\n");
    let (a, b) = (functor.source(), functor.target());
    let mut rows = vec![vec!["object".to_string(), "image".into()]];
    rows.extend(a.objects().map(|o| vec![a.object_name(o).to_string(), b.object_name(functor.obj(o)).to_string()]));
    for line in table(&rows).lines() {
        writeln!(human, "  {line}").unwrap();
    }
    let mut rows = vec![vec!["morphism".to_string(), "image".into()]];
    rows.extend(a.morphisms().map(|m| vec![a.mor_name(m).to_string(), b.mor_name(functor.mor(m)).to_string()]));
    for line in table(&rows).lines() {
        writeln!(human, "  {line}").unwrap();
    }
    writeln!(human, "restricts on the nose: {strong}").unwrap();
    match count {
        Some(n) => writeln!(human, "strict factorizations: {n}").unwrap(),
        None => writeln!(human, "strict factorizations: not counted (more than {CANDIDATE_LIMIT} candidates)").unwrap(),
    }
    Ok(Outcome {
        json: json!({
            kind: other,
            "pseudofunctor": name,
            "functor": functor_json(&functor),
            "on_the_nose": strong,
            "candidate_limit": CANDIDATE_LIMIT,
            "strict_factorizations": count,
            "unique": unique,
        }),
        human,
        verdict: Some(strong && unique != Some(false)),
    })
}

fn interchange(ws: &Workspace, name: &str, skip: bool) -> Result<Outcome> {
    let a = ws.bi_indexed(name, skip)?;
    let p = ws.pseudofunctor(name).expect("resolved above");
    let at = |e| CliError::Core {
        at: Some(p.at.clone()),
        source: e,
    };
    let opts = EquivalenceOptions {
        skip_filter_check: skip,
        cross_check: true,
    };
    let r = check_equivalence_with(&a, opts).map_err(at)?;
    let col = build_colim_of_lims(&a, skip).map_err(at)?;
    let lim = build_lim_of_colims(&a, skip).map_err(at)?;
    let (cb, lb) = (col.colim.base(), lim.lim.base());
    let ix = a.i.as_ref();

    let failures: Vec<Value> = r
        .fully_faithful
        .failures
        .iter()
        .map(|h| {
            let detail = match &h.failure {
                Some(HomFailure::NotInjective { first, second }) => {
                    json!({ "kind": "not_injective", "first": cb.mor_name(*first), "second": cb.mor_name(*second) })
                }
                Some(HomFailure::NotSurjective { missing }) => json!({ "kind": "not_surjective", "missing": lb.mor_name(*missing) }),
                None => Value::Null,
            };
            json!({
                "source": [cb.object_name(h.source.0), cb.object_name(h.source.1)],
                "target": [lb.object_name(h.target.0), lb.object_name(h.target.1)],
                "failure": detail,
            })
        })
        .collect();
    let preimages: Vec<Value> = r
        .preimages
        .iter()
        .map(|q| {
            json!({
                "object": lb.object_name(q.object),
                "vertex": ix.object_name(q.vertex),
                "legs": q.legs.iter().map(|&s| ix.mor_name(s)).collect::<Vec<_>>(),
                "rounds": q.rounds,
                "triple": cb.object_name(q.triple),
                "iso": lb.mor_name(q.iso),
            })
        })
        .collect();
    let preimage_failures: Vec<Value> = r
        .preimage_failures
        .iter()
        .map(|(o, why)| json!({ "object": lb.object_name(*o), "reason": why }))
        .collect();
    let direct: Vec<Value> = r
        .direct_checks
        .iter()
        .map(|d| json!({ "name": d.name, "agrees": d.agrees, "skipped": d.skipped, "detail": d.detail }))
        .collect();

    let mut human = format!("interchange for {name}\n");
    let rows = vec![
        vec!["side".to_string(), "objects".into(), "morphisms".into()],
        vec!["colim of lims".into(), r.colim_of_lims.0.to_string(), r.colim_of_lims.1.to_string()],
        vec!["lim of colims".into(), r.lim_of_colims.0.to_string(), r.lim_of_colims.1.to_string()],
    ];
    for line in table(&rows).lines() {
        writeln!(human, "  {line}").unwrap();
    }
    writeln!(
        human,
        "fully faithful: {} ({} hom pairs, {} failing)",
        r.fully_faithful.holds(),
        r.fully_faithful.pairs_checked,
        r.fully_faithful.failures.len()
    )
    .unwrap();
    writeln!(human, "essentially surjective: {} ({} preimages, {} failing)", r.preimage_failures.is_empty(), r.preimages.len(), r.preimage_failures.len()).unwrap();
    for f in &failures {
        writeln!(human, "  hom failure {}", f).unwrap();
    }
    for f in &preimage_failures {
        writeln!(human, "  no preimage for {}: {}", f["object"].as_str().unwrap(), f["reason"].as_str().unwrap()).unwrap();
    }
    for d in &r.direct_checks {
        let state = if d.skipped { "skipped" } else if d.agrees { "agrees" } else { "disagrees" };
        writeln!(human, "direct check {}: {state}", d.name).unwrap();
    }
    writeln!(human, "verdict: {}", r.verdict).unwrap();

    Ok(Outcome {
        json: json!({
            "instance": r.instance,
            "colim_of_lims": { "objects": r.colim_of_lims.0, "morphisms": r.colim_of_lims.1 },
            "lim_of_colims": { "objects": r.lim_of_colims.0, "morphisms": r.lim_of_colims.1 },
            "fully_faithful": {
                "holds": r.fully_faithful.holds(),
                "pairs_checked": r.fully_faithful.pairs_checked,
                "morphisms_checked": r.fully_faithful.morphisms_checked,
                "failures": failures,
            },
            "preimages": preimages,
            "preimage_failures": preimage_failures,
            "direct_checks": direct,
            "verdict": r.verdict,
        }),
        human,
        verdict: Some(r.verdict),
    })
}

fn fuzz(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = vec![vec!["case".to_string(), "I".into(), "J".into(), "colim of lims".into(), "lim of colims".into(), "result".into()]];
    let mut items = Vec::new();
    let mut passed = 0;
    for case in 0..cases {
        let a = random_instance(&mut rng, &format!("fuzz{case}"), GenLimits::default());
        let (i, j) = (a.i.name().to_string(), a.j.name().to_string());
        let ix = a.underlying.index();
        let mut values: Vec<String> = ix.objects().map(|o| a.underlying.at(o).name().to_string()).collect();
        values.sort();
        values.dedup();
        let item = match check_equivalence(&a) {
            Ok(r) => {
                if r.verdict {
                    passed += 1;
                }
                rows.push(vec![
                    case.to_string(),
                    i.clone(),
                    j.clone(),
                    format!("{}/{}", r.colim_of_lims.0, r.colim_of_lims.1),
                    format!("{}/{}", r.lim_of_colims.0, r.lim_of_colims.1),
                    if r.verdict { "pass".into() } else { "FAIL".into() },
                ]);
                json!({
                    "case": case, "i": i, "j": j, "values": values,
                    "colim_of_lims": [r.colim_of_lims.0, r.colim_of_lims.1],
                    "lim_of_colims": [r.lim_of_colims.0, r.lim_of_colims.1],
                    "verdict": r.verdict, "error": null,
                })
            }
            Err(e) => {
                rows.push(vec![case.to_string(), i.clone(), j.clone(), "-".into(), "-".into(), format!("FAIL {}", e.code())]);
                json!({
                    "case": case, "i": i, "j": j, "values": values,
                    "colim_of_lims": null, "lim_of_colims": null,
                    "verdict": false, "error": { "code": e.code(), "message": e.to_string() },
                })
            }
        };
        items.push(item);
    }
    let mut human = table(&rows);
    writeln!(human, "{passed} of {cases} passed (seed {seed})").unwrap();
    Outcome {
        json: json!({ "seed": seed, "cases": cases, "passed": passed, "failed": cases - passed, "instances": items }),
        human,
        verdict: Some(passed == cases),
    }
}
