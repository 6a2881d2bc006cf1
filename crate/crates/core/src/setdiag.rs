//! Colimits and limits of finite-set-valued diagrams, and the canonical
//! comparison map colim_I lim_K -> lim_K colim_I.
//!
//! Elements of the set at index object `o` are `0..sizes[o]`; callers keep
//! their own labels. Limits take the index as given, so a contravariant
//! diagram must be passed over the opposite category.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, Mor, Obj, ProductCategory};

/// A functor from a finite index category to finite sets.
#[derive(Debug, Clone)]
pub struct SetDiagram<'a> {
    index: &'a FinCategory,
    sizes: Vec<usize>,
    actions: Vec<Vec<usize>>,
}

impl<'a> SetDiagram<'a> {
    /// Validates totality, ranges and functoriality.
    pub fn new(index: &'a FinCategory, sizes: Vec<usize>, actions: Vec<Vec<usize>>) -> Result<Self> {
        let d = SetDiagram::new_unchecked(index, sizes, actions);
        d.check()?;
        Ok(d)
    }

    pub fn new_unchecked(index: &'a FinCategory, sizes: Vec<usize>, actions: Vec<Vec<usize>>) -> Self {
        SetDiagram { index, sizes, actions }
    }

    pub fn index(&self) -> &'a FinCategory {
        self.index
    }

    pub fn size(&self, o: Obj) -> usize {
        self.sizes[o]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn act(&self, m: Mor, x: usize) -> usize {
        self.actions[m][x]
    }

    pub fn check(&self) -> Result<()> {
        let ix = self.index;
        if self.sizes.len() != ix.num_objects() || self.actions.len() != ix.num_morphisms() {
            return Err(Error::ShapeMismatch(format!(
                "set diagram over `{}` is not total",
                ix.name()
            )));
        }
        for m in ix.morphisms() {
            let (a, b) = (ix.dom(m), ix.cod(m));
            if self.actions[m].len() != self.sizes[a] || self.actions[m].iter().any(|&y| y >= self.sizes[b]) {
                return Err(Error::ShapeMismatch(format!(
                    "action of `{}` is not a function between the declared sets",
                    ix.mor_name(m)
                )));
            }
        }
        for o in ix.objects() {
            let id = ix.identity(o);
            if self.actions[id].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::NotFunctorial(format!(
                    "identity of `{}` acts non-trivially",
                    ix.object_name(o)
                )));
            }
        }
        for (g, f) in ix.composable_pairs() {
            let h = ix.compose(g, f);
            for x in 0..self.sizes[ix.dom(f)] {
                if self.actions[g][self.actions[f][x]] != self.actions[h][x] {
                    return Err(Error::NotFunctorial(format!(
                        "actions of `{}` and `{}` do not compose",
                        ix.mor_name(g),
                        ix.mor_name(f)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}

/// The colimit of a set diagram: a partition of the disjoint union.
/// Classes are numbered by their least member in (object, element) order,
/// and that least member is the canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColimSet {
    offsets: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<(Obj, usize)>>,
}

impl ColimSet {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, o: Obj, x: usize) -> usize {
        self.class_of[self.offsets[o] + x]
    }

    pub fn canon(&self, c: usize) -> (Obj, usize) {
        self.classes[c][0]
    }

    pub fn members(&self, c: usize) -> &[(Obj, usize)] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<(Obj, usize)>] {
        &self.classes
    }
}

pub fn colim_set(d: &SetDiagram<'_>) -> ColimSet {
    let ix = d.index;
    let mut offsets = Vec::with_capacity(ix.num_objects());
    let mut total = 0;
    for o in ix.objects() {
        offsets.push(total);
        total += d.sizes[o];
    }
    let mut uf = UnionFind::new(total);
    for m in ix.morphisms() {
        let (a, b) = (ix.dom(m), ix.cod(m));
        for x in 0..d.sizes[a] {
            uf.union(offsets[a] + x, offsets[b] + d.actions[m][x]);
        }
    }
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    let mut class_of = vec![0; total];
    let mut classes: Vec<Vec<(Obj, usize)>> = Vec::new();
    for o in ix.objects() {
        for x in 0..d.sizes[o] {
            let g = offsets[o] + x;
            let r = uf.find(g);
            let c = *root_class.entry(r).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            class_of[g] = c;
            classes[c].push((o, x));
        }
    }
    ColimSet {
        offsets,
        class_of,
        classes,
    }
}

/// The limit of a set diagram: all compatible families `{x_o}` with
/// `act(m, x_dom) == x_cod` for every index morphism `m`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimSet {
    families: Vec<Vec<usize>>,
    #[serde(skip)]
    lookup: HashMap<Vec<usize>, usize>,
}

impl LimSet {
    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn families(&self) -> &[Vec<usize>] {
        &self.families
    }

    pub fn family(&self, k: usize) -> &[usize] {
        &self.families[k]
    }

    pub fn find(&self, family: &[usize]) -> Option<usize> {
        self.lookup.get(family).copied()
    }
}

pub fn lim_set(d: &SetDiagram<'_>) -> LimSet {
    lim_set_by(d.index, &d.sizes, |m, x| d.actions[m][x])
}

/// Limit over `index` where the sets have the given sizes and morphisms act
/// through `act`. Used directly when actions are computed on the fly.
pub fn lim_set_by<A>(index: &FinCategory, sizes: &[usize], act: A) -> LimSet
where
    A: Fn(Mor, usize) -> usize,
{
    let n = index.num_objects();
    let mut checks: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for m in index.morphisms() {
        checks[index.dom(m).max(index.cod(m))].push(m);
    }
    let mut families = Vec::new();
    let mut current = vec![0usize; n];
    fn rec<A: Fn(Mor, usize) -> usize>(
        k: usize,
        index: &FinCategory,
        sizes: &[usize],
        checks: &[Vec<Mor>],
        act: &A,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == sizes.len() {
            out.push(current.clone());
            return;
        }
        for x in 0..sizes[k] {
            current[k] = x;
            if checks[k]
                .iter()
                .all(|&m| act(m, current[index.dom(m)]) == current[index.cod(m)])
            {
                rec(k + 1, index, sizes, checks, act, current, out);
            }
        }
    }
    rec(0, index, sizes, &checks, &act, &mut current, &mut families);
    let lookup = families
        .iter()
        .enumerate()
        .map(|(k, f)| (f.clone(), k))
        .collect();
    LimSet { families, lookup }
}

/// Why the comparison map fails to be a bijection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NonBijective {
    /// Two distinct classes of the colimit of limits go to the same family.
    NotInjective { first: usize, second: usize },
    /// A family of classes outside the image.
    NotSurjective { family: Vec<usize> },
}

#[derive(Debug, Clone, Serialize)]
pub struct SetInterchange {
    /// For each `i`, the families of the limit of the `i`-row.
    pub row_limits: Vec<LimSet>,
    /// Colimit over I of the row limits; elements are `(i, family index)`.
    pub colim_of_lims: ColimSet,
    /// For each `k`, the colimit over I of the `k`-column.
    pub column_colimits: Vec<ColimSet>,
    /// Limit over K of the column colimits; families of class indices.
    pub lim_of_colims: LimSet,
    /// Class of `colim_of_lims` -> family index of `lim_of_colims`; `None`
    /// when the image family is not compatible (cannot happen for a
    /// functorial input).
    pub map: Vec<Option<usize>>,
    pub bijective: bool,
    pub inverse: Option<Vec<usize>>,
    pub witness: Option<NonBijective>,
}

/// Builds both composites for a set diagram over `I x K` and the canonical
/// map sending the class of a family to the family of classes. `K` is the
/// limit index as given (pass `J^op` for a contravariant leg).
pub fn interchange_map_set(
    product: &ProductCategory,
    sizes: &[usize],
    actions: &[Vec<usize>],
) -> Result<SetInterchange> {
    let p = &*product.category;
    let (ic, kc) = (&*product.left, &*product.right);
    let whole = SetDiagram::new(p, sizes.to_vec(), actions.to_vec())?;

    // colim over I of lim over K
    let row_limits: Vec<LimSet> = ic
        .objects()
        .map(|i| {
            let row_sizes: Vec<usize> = kc.objects().map(|k| whole.size(product.obj(i, k))).collect();
            lim_set_by(kc, &row_sizes, |t, x| whole.act(product.right_mor(i, t), x))
        })
        .collect();
    let mut row_actions = Vec::with_capacity(ic.num_morphisms());
    for s in ic.morphisms() {
        let (a, b) = (ic.dom(s), ic.cod(s));
        let mut act = Vec::with_capacity(row_limits[a].len());
        for fam in row_limits[a].families() {
            let image: Vec<usize> = kc
                .objects()
                .map(|k| whole.act(product.left_mor(s, k), fam[k]))
                .collect();
            let idx = row_limits[b].find(&image).ok_or_else(|| {
                Error::InvariantBreach("row limit action leaves the limit".into())
            })?;
            act.push(idx);
        }
        row_actions.push(act);
    }
    let row_diag = SetDiagram::new_unchecked(ic, row_limits.iter().map(|l| l.len()).collect(), row_actions);
    let colim_of_lims = colim_set(&row_diag);

    // lim over K of colim over I
    let column_colimits: Vec<ColimSet> = kc
        .objects()
        .map(|k| {
            let col_sizes = ic.objects().map(|i| whole.size(product.obj(i, k))).collect();
            let col_actions = ic
                .morphisms()
                .map(|s| actions[product.left_mor(s, k)].clone())
                .collect();
            colim_set(&SetDiagram::new_unchecked(ic, col_sizes, col_actions))
        })
        .collect();
    let col_sizes: Vec<usize> = column_colimits.iter().map(|c| c.num_classes()).collect();
    let lim_of_colims = lim_set_by(kc, &col_sizes, |t, c| {
        let (a, b) = (kc.dom(t), kc.cod(t));
        let (i, x) = column_colimits[a].canon(c);
        column_colimits[b].class(i, whole.act(product.right_mor(i, t), x))
    });

    // canonical map
    let map: Vec<Option<usize>> = (0..colim_of_lims.num_classes())
        .map(|c| {
            let (i, f) = colim_of_lims.canon(c);
            let fam = row_limits[i].family(f);
            let image: Vec<usize> = kc
                .objects()
                .map(|k| column_colimits[k].class(i, fam[k]))
                .collect();
            lim_of_colims.find(&image)
        })
        .collect();

    let mut inverse = vec![usize::MAX; lim_of_colims.len()];
    let mut witness = None;
    for (c, m) in map.iter().enumerate() {
        match m {
            Some(t) if inverse[*t] == usize::MAX => inverse[*t] = c,
            Some(t) => {
                witness.get_or_insert(NonBijective::NotInjective {
                    first: inverse[*t],
                    second: c,
                });
            }
            None => {
                return Err(Error::InvariantBreach(
                    "image of a class is not a compatible family".into(),
                ))
            }
        }
    }
    if witness.is_none() {
        if let Some(t) = inverse.iter().position(|&c| c == usize::MAX) {
            witness = Some(NonBijective::NotSurjective {
                family: lim_of_colims.family(t).to_vec(),
            });
        }
    }
    let bijective = witness.is_none();
    Ok(SetInterchange {
        row_limits,
        colim_of_lims,
        column_colimits,
        lim_of_colims,
        map,
        bijective,
        inverse: bijective.then_some(inverse),
        witness,
    })
}

/// Slow reference constructions that share no code with the ones above:
/// colimits by saturating the relation to a fixpoint, limits by scanning the
/// whole product.
pub mod brute {
    use super::SetDiagram;
    use crate::fincat::{FinCategory, Obj, ProductCategory};

    /// Classes of the colimit, each sorted, in order of their least element.
    pub fn colim_classes(d: &SetDiagram<'_>) -> Vec<Vec<(Obj, usize)>> {
        let ix = d.index();
        let elems: Vec<(Obj, usize)> = ix.objects().flat_map(|o| (0..d.size(o)).map(move |x| (o, x))).collect();
        let at = |o: Obj, x: usize| elems.iter().position(|&e| e == (o, x)).unwrap();
        let mut label: Vec<usize> = (0..elems.len()).collect();
        loop {
            let mut changed = false;
            for m in ix.morphisms() {
                for x in 0..d.size(ix.dom(m)) {
                    let (a, b) = (at(ix.dom(m), x), at(ix.cod(m), d.act(m, x)));
                    let low = label[a].min(label[b]);
                    if label[a] != low || label[b] != low {
                        label[a] = low;
                        label[b] = low;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut out: Vec<Vec<(Obj, usize)>> = Vec::new();
        for (k, &e) in elems.iter().enumerate() {
            match out.iter_mut().find(|c| label[at(c[0].0, c[0].1)] == label[k]) {
                Some(c) => c.push(e),
                None => out.push(vec![e]),
            }
        }
        out
    }

    /// Every compatible family, in lexicographic order.
    pub fn lim_families(index: &FinCategory, sizes: &[usize], act: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if sizes.contains(&0) {
            return out;
        }
        let mut x = vec![0; sizes.len()];
        loop {
            if index.morphisms().all(|m| act(m, x[index.dom(m)]) == x[index.cod(m)]) {
                out.push(x.clone());
            }
            let mut k = sizes.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                x[k] += 1;
                if x[k] < sizes[k] {
                    break;
                }
                x[k] = 0;
            }
        }
    }

    /// Sizes of colim_I lim_K and lim_K colim_I for a diagram on `I x K`.
    pub fn interchange_sizes(product: &ProductCategory, sizes: &[usize], actions: &[Vec<usize>]) -> (usize, usize) {
        let (ic, kc) = (&*product.left, &*product.right);
        let act = |m: usize, x: usize| actions[m][x];
        let rows: Vec<Vec<Vec<usize>>> = ic
            .objects()
            .map(|i| {
                let s: Vec<usize> = kc.objects().map(|k| sizes[product.obj(i, k)]).collect();
                lim_families(kc, &s, |t, x| act(product.right_mor(i, t), x))
            })
            .collect();
        let row_actions: Vec<Vec<usize>> = ic
            .morphisms()
            .map(|s| {
                rows[ic.dom(s)]
                    .iter()
                    .map(|fam| {
                        let image: Vec<usize> = kc.objects().map(|k| act(product.left_mor(s, k), fam[k])).collect();
                        rows[ic.cod(s)].iter().position(|g| *g == image).unwrap()
                    })
                    .collect()
            })
            .collect();
        let row_sizes = rows.iter().map(Vec::len).collect();
        let left = colim_classes(&SetDiagram::new_unchecked(ic, row_sizes, row_actions)).len();

        let columns: Vec<Vec<Vec<(Obj, usize)>>> = kc
            .objects()
            .map(|k| {
                let s = ic.objects().map(|i| sizes[product.obj(i, k)]).collect();
                let a = ic.morphisms().map(|s| actions[product.left_mor(s, k)].clone()).collect();
                colim_classes(&SetDiagram::new_unchecked(ic, s, a))
            })
            .collect();
        let class_of = |k: Obj, e: (Obj, usize)| columns[k].iter().position(|c| c.contains(&e)).unwrap();
        let col_sizes: Vec<usize> = columns.iter().map(Vec::len).collect();
        let right = lim_families(kc, &col_sizes, |t, c| {
            let (a, b) = (kc.dom(t), kc.cod(t));
            let (i, x) = columns[a][c][0];
            class_of(b, (i, act(product.right_mor(i, t), x)))
        })
        .len();
        (left, right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{product, validate_category, RawCategory};
    use std::sync::Arc;

    fn one() -> FinCategory {
        validate_category(&RawCategory::new("One").object("*")).unwrap()
    }

    fn two() -> FinCategory {
        validate_category(&RawCategory::new("Two").objects(&["0", "1"]).mor("f", "0", "1")).unwrap()
    }

    #[test]
    fn colimit_examples() {
        let one = one();
        let c = colim_set(&SetDiagram::new(&one, vec![2], vec![vec![0, 1]]).unwrap());
        assert_eq!(c.num_classes(), 2);

        let two = two();
        // ids first: id_0, id_1, f
        let d = SetDiagram::new(&two, vec![2, 1], vec![vec![0, 1], vec![0], vec![0, 0]]).unwrap();
        let c = colim_set(&d);
        assert_eq!(c.num_classes(), 1);
        assert_eq!(c.canon(0), (0, 0));

        let disc = validate_category(&RawCategory::new("D").objects(&["a", "b"])).unwrap();
        let c = colim_set(&SetDiagram::new(&disc, vec![1, 1], vec![vec![0], vec![0]]).unwrap());
        assert_eq!(c.num_classes(), 2);
    }

    #[test]
    fn limit_examples() {
        let one = one();
        let l = lim_set(&SetDiagram::new(&one, vec![2], vec![vec![0, 1]]).unwrap());
        assert_eq!(l.families(), &[vec![0], vec![1]]);

        // index 2 with the action going 1 -> 0: pass the opposite arrow
        let op = two().opposite();
        let d = SetDiagram::new(&op, vec![1, 2], vec![vec![0], vec![0, 1], vec![0, 0]]).unwrap();
        let l = lim_set(&d);
        assert_eq!(l.families(), &[vec![0, 0], vec![0, 1]]);

        let par = validate_category(
            &RawCategory::new("P").objects(&["a", "b"]).mor("s", "a", "b").mor("t", "a", "b"),
        )
        .unwrap();
        let d = SetDiagram::new(&par, vec![2, 2], vec![vec![0, 1], vec![0, 1], vec![0, 1], vec![1, 0]]).unwrap();
        assert!(lim_set(&d).is_empty());
    }

    #[test]
    fn non_functorial_diagram_is_rejected() {
        let two = two();
        assert!(SetDiagram::new(&two, vec![1, 1], vec![vec![0], vec![0], vec![1]]).is_err());
    }

    #[test]
    fn interchange_over_terminal_is_identity() {
        let one = Arc::new(one());
        let p = product(&one, &one);
        let r = interchange_map_set(&p, &[3], &[vec![0, 1, 2]]).unwrap();
        assert!(r.bijective);
        assert_eq!(r.map, vec![Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn discrete_index_breaks_surjectivity() {
        let disc = Arc::new(validate_category(&RawCategory::new("D").objects(&["p", "q"])).unwrap());
        let p = product(&disc, &disc);
        // every cell a singleton: colim lim = 2 points, lim colim = 4 points
        let sizes = vec![1; 4];
        let actions = vec![vec![0]; 4];
        let r = interchange_map_set(&p, &sizes, &actions).unwrap();
        assert!(!r.bijective);
        assert_eq!(r.colim_of_lims.num_classes(), 2);
        assert_eq!(r.lim_of_colims.len(), 4);
        assert!(matches!(r.witness, Some(NonBijective::NotSurjective { .. })));
    }
}
