//! Completes a category block to a full composition table.
//!
//! Declared morphisms are generators and each `compose g f = h` line is a
//! rewrite rule `g f -> h` on paths. A composable pair with no rule becomes a
//! new morphism named after its path (`g.f`). Closure stops with an error once
//! the category would exceed the bound.

use std::collections::HashMap;

use twocolim_core::fincat::{validate_category, FinCategory, RawCategory, RawMorphism};
use twocolim_core::Error as CoreError;

use crate::error::{CliError, Result};
use crate::syntax::{Block, Header, Stmt, Token};

#[derive(Clone)]
struct Element {
    dom: usize,
    cod: usize,
    /// Generators, outermost first; empty for identities.
    word: Vec<usize>,
    name: String,
}

fn normalize(mut word: Vec<usize>, rules: &HashMap<(usize, usize), Vec<usize>>) -> Vec<usize> {
    'outer: loop {
        for k in 0..word.len().saturating_sub(1) {
            if let Some(r) = rules.get(&(word[k], word[k + 1])) {
                word.splice(k..k + 2, r.iter().copied());
                continue 'outer;
            }
        }
        return word;
    }
}

enum Named {
    Identity(usize),
    Generator(usize),
}

pub fn elaborate(block: &Block, bound: usize) -> Result<FinCategory> {
    let Header::Category { name } = &block.header else {
        unreachable!("only category blocks are elaborated")
    };
    let dup = |t: &Token, kind| CliError::Duplicate {
        at: block.at(t),
        kind,
        name: t.text.clone(),
    };
    let core = |t: &Token, e: CoreError| CliError::Core {
        at: Some(block.at(t)),
        source: e,
    };

    let mut objects: Vec<String> = Vec::new();
    let mut object_index: HashMap<String, usize> = HashMap::new();
    for s in &block.body {
        if let Stmt::Objects(names) = s {
            for t in names {
                if object_index.insert(t.text.clone(), objects.len()).is_some() {
                    return Err(dup(t, "object"));
                }
                objects.push(t.text.clone());
            }
        }
    }
    let object = |t: &Token| {
        object_index.get(&t.text).copied().ok_or_else(|| CliError::UnresolvedReference {
            at: block.at(t),
            kind: "object",
            name: t.text.clone(),
        })
    };

    let mut identity_names: Vec<String> = objects.iter().map(|o| format!("id_{o}")).collect();
    for s in &block.body {
        if let Stmt::Identity { object: o, name: n } = s {
            identity_names[object(o)?] = n.text.clone();
        }
    }
    let mut names: HashMap<String, Named> = HashMap::new();
    for (o, n) in identity_names.iter().enumerate() {
        if names.insert(n.clone(), Named::Identity(o)).is_some() {
            return Err(CliError::Duplicate {
                at: block.at(name),
                kind: "morphism",
                name: n.clone(),
            });
        }
    }
    let mut elements: Vec<Element> = objects
        .iter()
        .enumerate()
        .map(|(o, _)| Element {
            dom: o,
            cod: o,
            word: Vec::new(),
            name: identity_names[o].clone(),
        })
        .collect();
    let mut gens: Vec<(usize, usize)> = Vec::new();
    for s in &block.body {
        if let Stmt::Mor { name: n, dom, cod } = s {
            let (d, c) = (object(dom)?, object(cod)?);
            if names.insert(n.text.clone(), Named::Generator(gens.len())).is_some() {
                return Err(dup(n, "morphism"));
            }
            elements.push(Element {
                dom: d,
                cod: c,
                word: vec![gens.len()],
                name: n.text.clone(),
            });
            gens.push((d, c));
        }
    }
    let endpoints = |n: &Named| match *n {
        Named::Identity(o) => (o, o),
        Named::Generator(k) => gens[k],
    };
    let word = |n: &Named| match *n {
        Named::Identity(_) => Vec::new(),
        Named::Generator(k) => vec![k],
    };

    let mut rules: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for s in &block.body {
        let Stmt::Compose { g, f, gf } = s else { continue };
        let look = |t: &Token| {
            names.get(&t.text).ok_or_else(|| CliError::UnresolvedReference {
                at: block.at(t),
                kind: "morphism",
                name: t.text.clone(),
            })
        };
        let (ng, nf, nh) = (look(g)?, look(f)?, look(gf)?);
        let ((gd, gc), (fd, fc), (hd, hc)) = (endpoints(ng), endpoints(nf), endpoints(nh));
        if gd != fc {
            return Err(core(g, CoreError::BadEndpoints(format!("`{}` and `{}` are not composable", g.text, f.text))));
        }
        if hd != fd || hc != gc {
            return Err(core(
                gf,
                CoreError::BadEndpoints(format!("composite {} . {} = {} has the wrong endpoints", g.text, f.text, gf.text)),
            ));
        }
        match (ng, nf) {
            (Named::Identity(_), _) | (_, Named::Identity(_)) => {
                let other = if matches!(ng, Named::Identity(_)) { nf } else { ng };
                if word(other) != word(nh) {
                    return Err(core(gf, CoreError::BadEndpoints(format!("identity law broken by `compose {} {}`", g.text, f.text))));
                }
            }
            (&Named::Generator(a), &Named::Generator(b)) => {
                if let Some(prev) = rules.insert((a, b), word(nh)) {
                    if prev != word(nh) {
                        return Err(dup(g, "composite"));
                    }
                }
            }
        }
    }

    let mut lookup: HashMap<(usize, usize, Vec<usize>), usize> = elements
        .iter()
        .enumerate()
        .map(|(k, e)| ((e.dom, e.cod, e.word.clone()), k))
        .collect();
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    loop {
        let before = elements.len();
        let n = elements.len();
        for a in objects.len()..n {
            for b in objects.len()..n {
                if table.contains_key(&(a, b)) || elements[a].dom != elements[b].cod {
                    continue;
                }
                let mut w = elements[a].word.clone();
                w.extend(elements[b].word.iter().copied());
                let w = normalize(w, &rules);
                let key = (elements[b].dom, elements[a].cod, w);
                let k = match lookup.get(&key) {
                    Some(&k) => k,
                    None => {
                        if elements.len() >= bound {
                            return Err(CliError::ElaborationDiverges {
                                at: block.at(name),
                                name: name.text.clone(),
                                bound,
                            });
                        }
                        let label = key.2.iter().map(|&g| elements[objects.len() + g].name.clone()).collect::<Vec<_>>().join(".");
                        if names.contains_key(&label) || elements.iter().any(|e| e.name == label) {
                            return Err(CliError::Duplicate {
                                at: block.at(name),
                                kind: "morphism",
                                name: label,
                            });
                        }
                        elements.push(Element {
                            dom: key.0,
                            cod: key.1,
                            word: key.2.clone(),
                            name: label,
                        });
                        lookup.insert(key, elements.len() - 1);
                        elements.len() - 1
                    }
                };
                table.insert((a, b), k);
            }
        }
        if elements.len() == before {
            break;
        }
    }
    if elements.len() > bound {
        return Err(CliError::ElaborationDiverges {
            at: block.at(name),
            name: name.text.clone(),
            bound,
        });
    }

    let mut pairs: Vec<(&(usize, usize), &usize)> = table.iter().collect();
    pairs.sort();
    let raw = RawCategory {
        name: name.text.clone(),
        objects: objects.clone(),
        morphisms: elements
            .iter()
            .map(|e| RawMorphism {
                name: e.name.clone(),
                dom: objects[e.dom].clone(),
                cod: objects[e.cod].clone(),
            })
            .collect(),
        identities: identity_names,
        compose: pairs
            .into_iter()
            .map(|(&(a, b), &c)| (elements[a].name.clone(), elements[b].name.clone(), elements[c].name.clone()))
            .collect(),
    };
    validate_category(&raw).map_err(|e| core(name, e))
}
