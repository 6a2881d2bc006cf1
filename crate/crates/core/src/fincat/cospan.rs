use std::collections::HashMap;

use super::category::{FinCategory, Mor, MorphismData, Obj};
use super::filtered::{is_filtered, FilteredWitness};
use crate::error::{Error, Result};

/// Outcome of the post-check that cospan categories of a filtered index are
/// themselves filtered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilteredPostCheck {
    Passed,
    /// Index not filtered, so nothing is asserted.
    NotApplicable,
    /// The cospan category came out empty.
    SkippedEmpty,
}

/// Cospans `i -> k <- i2` of an index category, with the commuting-triangle
/// morphisms between them.
#[derive(Debug, Clone)]
pub struct CospanCategory {
    pub category: FinCategory,
    pub feet: (Obj, Obj),
    /// Object decoration `(k, s: i -> k, s2: i2 -> k)`.
    pub apexes: Vec<(Obj, Mor, Mor)>,
    /// Morphism decoration: the underlying `t: k1 -> k2` of the index.
    pub arrows: Vec<Mor>,
    pub post_check: FilteredPostCheck,
    lookup: HashMap<(Obj, Mor, Mor), Obj>,
}

impl CospanCategory {
    pub fn find(&self, apex: Obj, s: Mor, s2: Mor) -> Option<Obj> {
        self.lookup.get(&(apex, s, s2)).copied()
    }
}

pub fn cospan_category(index: &FinCategory, i: Obj, i2: Obj) -> Result<CospanCategory> {
    let w = is_filtered(index);
    cospan_category_with(index, &w, i, i2)
}

/// Same as [`cospan_category`], reusing a filteredness verdict for the index.
pub fn cospan_category_with(
    index: &FinCategory,
    witness: &FilteredWitness,
    i: Obj,
    i2: Obj,
) -> Result<CospanCategory> {
    if i >= index.num_objects() || i2 >= index.num_objects() {
        return Err(Error::UnknownObject(format!("{i} or {i2} in `{}`", index.name())));
    }
    let mut apexes = Vec::new();
    let mut names = Vec::new();
    let mut lookup = HashMap::new();
    for k in index.objects() {
        for &s in index.hom(i, k) {
            for &s2 in index.hom(i2, k) {
                lookup.insert((k, s, s2), apexes.len());
                names.push(format!(
                    "({},{},{})",
                    index.object_name(k),
                    index.mor_name(s),
                    index.mor_name(s2)
                ));
                apexes.push((k, s, s2));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut arrows = Vec::new();
    let mut identity = vec![0; apexes.len()];
    let mut mor_lookup = HashMap::new();
    for (x, &(k1, s1, r1)) in apexes.iter().enumerate() {
        for &t in index.out(k1) {
            let target = (index.cod(t), index.compose(t, s1), index.compose(t, r1));
            let y = lookup[&target];
            if index.is_identity(t) {
                identity[x] = morphisms.len();
            }
            mor_lookup.insert((x, t), morphisms.len());
            morphisms.push(MorphismData {
                name: format!("{}:{}>{}", index.mor_name(t), x, y),
                dom: x,
                cod: y,
            });
            arrows.push(t);
        }
    }
    let name = format!(
        "{}_({},{})",
        index.name(),
        index.object_name(i),
        index.object_name(i2)
    );
    let arrows_ref = &arrows;
    let morphisms_ref: Vec<Obj> = morphisms.iter().map(|m: &MorphismData| m.dom).collect();
    let category = FinCategory::build(name, names, morphisms, identity, |g, f| {
        let t = index.compose(arrows_ref[g], arrows_ref[f]);
        Ok(mor_lookup[&(morphisms_ref[f], t)])
    })?;

    let post_check = if !witness.verdict {
        FilteredPostCheck::NotApplicable
    } else if category.num_objects() == 0 {
        FilteredPostCheck::SkippedEmpty
    } else {
        let cw = is_filtered(&category);
        if !cw.verdict {
            return Err(Error::InvariantBreach(format!(
                "cospan category `{}` of a filtered index is not filtered: {}",
                category.name(),
                cw.counterexample.map(|v| v.describe(&category)).unwrap_or_default()
            )));
        }
        FilteredPostCheck::Passed
    };
    Ok(CospanCategory {
        category,
        feet: (i, i2),
        apexes,
        arrows,
        post_check,
        lookup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::{validate_category, RawCategory};

    #[test]
    fn terminal_cospans() {
        let one = validate_category(&RawCategory::new("One").object("*")).unwrap();
        let c = cospan_category(&one, 0, 0).unwrap();
        assert_eq!(c.category.num_objects(), 1);
        assert_eq!(c.category.num_morphisms(), 1);
        assert_eq!(c.post_check, FilteredPostCheck::Passed);
    }

    #[test]
    fn walking_arrow_cospans() {
        let two = validate_category(&RawCategory::new("Two").objects(&["0", "1"]).mor("f", "0", "1")).unwrap();
        let f = two.morphism_by_name("f").unwrap();
        let c01 = cospan_category(&two, 0, 1).unwrap();
        assert_eq!(c01.apexes, vec![(1, f, two.identity(1))]);
        assert_eq!(c01.category.num_morphisms(), 1);

        let c00 = cospan_category(&two, 0, 0).unwrap();
        assert_eq!(c00.apexes, vec![(0, two.identity(0), two.identity(0)), (1, f, f)]);
        // identities plus the single arrow f between the two cospans
        assert_eq!(c00.category.num_morphisms(), 3);
        assert_eq!(c00.category.hom(0, 1).len(), 1);
        assert_eq!(c00.arrows[c00.category.hom(0, 1)[0]], f);
    }
}
