use std::sync::Arc;

use super::category::{FinCategory, Mor, MorphismData, Obj};
use super::functor::FinFunctor;

/// The product of two finite categories with pair-indexing helpers.
/// Object `(a, b)` has index `a * |Ob right| + b`; morphism `(s, t)` has
/// index `s * |Mor right| + t`.
#[derive(Debug, Clone)]
pub struct ProductCategory {
    pub category: Arc<FinCategory>,
    pub left: Arc<FinCategory>,
    pub right: Arc<FinCategory>,
}

impl ProductCategory {
    pub fn obj(&self, a: Obj, b: Obj) -> Obj {
        a * self.right.num_objects() + b
    }

    pub fn mor(&self, s: Mor, t: Mor) -> Mor {
        s * self.right.num_morphisms() + t
    }

    pub fn split_obj(&self, o: Obj) -> (Obj, Obj) {
        let n = self.right.num_objects();
        (o / n, o % n)
    }

    pub fn split_mor(&self, m: Mor) -> (Mor, Mor) {
        let n = self.right.num_morphisms();
        (m / n, m % n)
    }

    /// `(s, id)` for `s` in the left factor, at right object `b`.
    pub fn left_mor(&self, s: Mor, b: Obj) -> Mor {
        self.mor(s, self.right.identity(b))
    }

    /// `(id, t)` for `t` in the right factor, at left object `a`.
    pub fn right_mor(&self, a: Obj, t: Mor) -> Mor {
        self.mor(self.left.identity(a), t)
    }

    pub fn left_projection(&self) -> FinFunctor {
        let c = &self.category;
        FinFunctor::from_maps(
            "pr1",
            c.clone(),
            self.left.clone(),
            c.objects().map(|o| self.split_obj(o).0).collect(),
            c.morphisms().map(|m| self.split_mor(m).0).collect(),
        )
    }

    pub fn right_projection(&self) -> FinFunctor {
        let c = &self.category;
        FinFunctor::from_maps(
            "pr2",
            c.clone(),
            self.right.clone(),
            c.objects().map(|o| self.split_obj(o).1).collect(),
            c.morphisms().map(|m| self.split_mor(m).1).collect(),
        )
    }
}

pub fn product(left: &Arc<FinCategory>, right: &Arc<FinCategory>) -> ProductCategory {
    let (l, r) = (&**left, &**right);
    let objects = l
        .objects()
        .flat_map(|a| r.objects().map(move |b| format!("({},{})", l.object_name(a), r.object_name(b))))
        .collect();
    let nr = r.num_objects();
    let mr = r.num_morphisms();
    let morphisms = l
        .morphisms()
        .flat_map(|s| {
            r.morphisms().map(move |t| MorphismData {
                name: format!("({},{})", l.mor_name(s), r.mor_name(t)),
                dom: l.dom(s) * nr + r.dom(t),
                cod: l.cod(s) * nr + r.cod(t),
            })
        })
        .collect();
    let identity = l
        .objects()
        .flat_map(|a| r.objects().map(move |b| l.identity(a) * mr + r.identity(b)))
        .collect();
    let cat = FinCategory::build(
        format!("{}x{}", l.name(), r.name()),
        objects,
        morphisms,
        identity,
        |g, f| {
            let (gs, gt) = (g / mr, g % mr);
            let (fs, ft) = (f / mr, f % mr);
            Ok(l.compose(gs, fs) * mr + r.compose(gt, ft))
        },
    )
    .expect("product of valid categories is valid");
    ProductCategory {
        category: Arc::new(cat),
        left: left.clone(),
        right: right.clone(),
    }
}
