use serde::Serialize;

use super::category::{FinCategory, Mor, Obj};
use crate::error::{Error, Result};

/// Which filteredness condition fails, with the offending data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FilteredViolation {
    /// (i): no objects.
    Empty,
    /// (ii): no object receives arrows from both `a` and `b`.
    NoCospan { a: Obj, b: Obj },
    /// (iii): no `h` with `h . s = h . s2`.
    NotEqualized { s: Mor, s2: Mor },
}

impl FilteredViolation {
    pub fn condition(&self) -> &'static str {
        match self {
            FilteredViolation::Empty => "i",
            FilteredViolation::NoCospan { .. } => "ii",
            FilteredViolation::NotEqualized { .. } => "iii",
        }
    }

    /// Re-checks that the violation is genuine in `cat`.
    pub fn replays(&self, cat: &FinCategory) -> bool {
        match *self {
            FilteredViolation::Empty => cat.num_objects() == 0,
            FilteredViolation::NoCospan { a, b } => cat
                .objects()
                .all(|k| cat.hom(a, k).is_empty() || cat.hom(b, k).is_empty()),
            FilteredViolation::NotEqualized { s, s2 } => {
                cat.dom(s) == cat.dom(s2)
                    && cat.cod(s) == cat.cod(s2)
                    && cat
                        .out(cat.cod(s))
                        .iter()
                        .all(|&h| cat.compose(h, s) != cat.compose(h, s2))
            }
        }
    }

    pub fn describe(&self, cat: &FinCategory) -> String {
        match *self {
            FilteredViolation::Empty => "(i) the category is empty".to_string(),
            FilteredViolation::NoCospan { a, b } => format!(
                "(ii) no cospan over `{}` and `{}`",
                cat.object_name(a),
                cat.object_name(b)
            ),
            FilteredViolation::NotEqualized { s, s2 } => format!(
                "(iii) `{}` and `{}` are never equalized",
                cat.mor_name(s),
                cat.mor_name(s2)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilteredWitness {
    pub verdict: bool,
    pub counterexample: Option<FilteredViolation>,
    /// First cospan `(k, a -> k, b -> k)` found for each ordered pair `(a, b)`,
    /// row-major; filled only when the verdict is true.
    pub cocone_cache: Option<Vec<(Obj, Mor, Mor)>>,
}

/// Decides conditions (i)-(iii) by exhaustive search in declaration order.
pub fn is_filtered(cat: &FinCategory) -> FilteredWitness {
    let fail = |v| FilteredWitness {
        verdict: false,
        counterexample: Some(v),
        cocone_cache: None,
    };
    if cat.num_objects() == 0 {
        return fail(FilteredViolation::Empty);
    }
    let mut cache = Vec::with_capacity(cat.num_objects() * cat.num_objects());
    for a in cat.objects() {
        for b in cat.objects() {
            let found = cat.objects().find_map(|k| {
                let fa = cat.hom(a, k).first()?;
                let fb = cat.hom(b, k).first()?;
                Some((k, *fa, *fb))
            });
            match found {
                Some(c) => cache.push(c),
                None => return fail(FilteredViolation::NoCospan { a, b }),
            }
        }
    }
    for a in cat.objects() {
        for b in cat.objects() {
            let hom = cat.hom(a, b);
            for (x, &s) in hom.iter().enumerate() {
                for &s2 in &hom[x + 1..] {
                    let ok = cat
                        .out(b)
                        .iter()
                        .any(|&h| cat.compose(h, s) == cat.compose(h, s2));
                    if !ok {
                        return fail(FilteredViolation::NotEqualized { s, s2 });
                    }
                }
            }
        }
    }
    FilteredWitness {
        verdict: true,
        counterexample: None,
        cocone_cache: Some(cache),
    }
}

/// A vertex with one leg per node; `legs` keeps node order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cocone {
    pub vertex: Obj,
    pub legs: Vec<(Obj, Mor)>,
}

impl Cocone {
    pub fn leg(&self, node: Obj) -> Mor {
        self.legs
            .iter()
            .find(|(n, _)| *n == node)
            .map(|&(_, m)| m)
            .expect("node has a leg")
    }
}

/// Finds a vertex `k` with legs from every tip (and from the codomain of
/// every equation morphism) such that for each equation `(f, g)`,
/// `leg(cod f) . f == leg(cod g) . g`. Parallel pairs are equations whose two
/// sides share a codomain.
///
/// Candidate vertices are tried nodes first, then the remaining objects in
/// declaration order; legs are tried identity first. The first solution wins.
pub fn find_cocone(cat: &FinCategory, tips: &[Obj], equations: &[(Mor, Mor)]) -> Result<Cocone> {
    let mut nodes: Vec<Obj> = Vec::new();
    let push = |o: Obj, nodes: &mut Vec<Obj>| {
        if !nodes.contains(&o) {
            nodes.push(o);
        }
    };
    for &t in tips {
        push(t, &mut nodes);
    }
    for &(f, g) in equations {
        if cat.dom(f) != cat.dom(g) {
            return Err(Error::BadEndpoints(format!(
                "equation sides `{}` and `{}` have different domains",
                cat.mor_name(f),
                cat.mor_name(g)
            )));
        }
        push(cat.cod(f), &mut nodes);
        push(cat.cod(g), &mut nodes);
    }
    let mut candidates = nodes.clone();
    candidates.extend(cat.objects().filter(|o| !nodes.contains(o)));

    // equations checkable once both endpoints are assigned
    let slot = |o: Obj| nodes.iter().position(|&n| n == o).unwrap();
    let mut checks: Vec<Vec<(Mor, Mor)>> = vec![Vec::new(); nodes.len()];
    for &(f, g) in equations {
        let latest = slot(cat.cod(f)).max(slot(cat.cod(g)));
        checks[latest].push((f, g));
    }

    for k in candidates {
        let mut legs = vec![usize::MAX; nodes.len()];
        if search_legs(cat, &nodes, &checks, k, 0, &mut legs) {
            return Ok(Cocone {
                vertex: k,
                legs: nodes.iter().copied().zip(legs).collect(),
            });
        }
    }
    Err(Error::SearchExhausted(format!(
        "no cocone in `{}` over {} node(s) with {} equation(s)",
        cat.name(),
        nodes.len(),
        equations.len()
    )))
}

fn search_legs(
    cat: &FinCategory,
    nodes: &[Obj],
    checks: &[Vec<(Mor, Mor)>],
    k: Obj,
    idx: usize,
    legs: &mut Vec<Mor>,
) -> bool {
    if idx == nodes.len() {
        return true;
    }
    let n = nodes[idx];
    let hom = cat.hom(n, k);
    let id = (n == k).then(|| cat.identity(k));
    let ordered = id
        .into_iter()
        .chain(hom.iter().copied().filter(|&m| Some(m) != id));
    for leg in ordered {
        legs[idx] = leg;
        let ok = checks[idx].iter().all(|&(f, g)| {
            let lf = legs[nodes.iter().position(|&x| x == cat.cod(f)).unwrap()];
            let lg = legs[nodes.iter().position(|&x| x == cat.cod(g)).unwrap()];
            cat.compose(lf, f) == cat.compose(lg, g)
        });
        if ok && search_legs(cat, nodes, checks, k, idx + 1, legs) {
            return true;
        }
    }
    false
}

/// Cocone-and-equalize for a category already known to be filtered.
pub fn cocone_and_equalize(
    cat: &FinCategory,
    witness: &FilteredWitness,
    tips: &[Obj],
    equations: &[(Mor, Mor)],
) -> Result<Cocone> {
    if !witness.verdict {
        let why = witness
            .counterexample
            .as_ref()
            .map(|v| v.describe(cat))
            .unwrap_or_default();
        return Err(Error::NotFiltered(why));
    }
    find_cocone(cat, tips, equations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::{validate_category, RawCategory};

    fn cat(raw: RawCategory) -> FinCategory {
        validate_category(&raw).unwrap()
    }

    #[test]
    fn small_verdicts() {
        assert!(is_filtered(&cat(RawCategory::new("One").object("*"))).verdict);
        let disc = is_filtered(&cat(RawCategory::new("D").objects(&["a", "b"])));
        assert_eq!(disc.counterexample.as_ref().unwrap().condition(), "ii");
        let par = cat(RawCategory::new("P")
            .objects(&["a", "b"])
            .mor("s", "a", "b")
            .mor("t", "a", "b"));
        let w = is_filtered(&par);
        let v = w.counterexample.unwrap();
        assert_eq!(v.condition(), "iii");
        assert!(v.replays(&par));
        let empty = is_filtered(&cat(RawCategory::new("E")));
        assert_eq!(empty.counterexample.unwrap(), FilteredViolation::Empty);
    }

    #[test]
    fn cocone_examples() {
        let two = cat(RawCategory::new("Two").objects(&["0", "1"]).mor("f", "0", "1"));
        let w = is_filtered(&two);
        let c = cocone_and_equalize(&two, &w, &[0], &[]).unwrap();
        assert_eq!(c, Cocone { vertex: 0, legs: vec![(0, two.identity(0))] });
        let f = two.morphism_by_name("f").unwrap();
        let c = cocone_and_equalize(&two, &w, &[0, 1], &[]).unwrap();
        assert_eq!(c.vertex, 1);
        assert_eq!(c.legs, vec![(0, f), (1, two.identity(1))]);

        let coeq = cat(RawCategory::new("Coeq")
            .objects(&["a", "b", "c"])
            .mor("s", "a", "b")
            .mor("t", "a", "b")
            .mor("h", "b", "c")
            .mor("u", "a", "c")
            .compose("h", "s", "u")
            .compose("h", "t", "u"));
        let w = is_filtered(&coeq);
        assert!(w.verdict);
        let (s, t) = (coeq.morphism_by_name("s").unwrap(), coeq.morphism_by_name("t").unwrap());
        let c = cocone_and_equalize(&coeq, &w, &[0], &[(s, t)]).unwrap();
        assert_eq!(c.vertex, 2);
        assert_eq!(coeq.compose(c.leg(1), s), coeq.compose(c.leg(1), t));
    }
}
