//! Small named categories used as index shapes and value categories.

use std::sync::Arc;

use crate::fincat::{validate_category, FinCategory, RawCategory};

fn build(raw: RawCategory) -> Arc<FinCategory> {
    Arc::new(validate_category(&raw).expect("library category is valid"))
}

/// `1`: one object, one morphism.
pub fn terminal() -> Arc<FinCategory> {
    build(RawCategory::new("One").object("*"))
}

/// `2`: the walking arrow `0 -> 1`.
pub fn arrow() -> Arc<FinCategory> {
    build(RawCategory::new("Two").objects(&["0", "1"]).mor("f", "0", "1"))
}

/// `a -> c <- b`.
pub fn cospan() -> Arc<FinCategory> {
    build(
        RawCategory::new("Cospan")
            .objects(&["a", "b", "c"])
            .mor("l", "a", "c")
            .mor("r", "b", "c"),
    )
}

/// One object with an idempotent `e . e = e`.
pub fn idempotent() -> Arc<FinCategory> {
    build(
        RawCategory::new("Idem")
            .object("*")
            .mor("e", "*", "*")
            .compose("e", "e", "e"),
    )
}

/// A parallel pair `s, t: a -> b` followed by `h: b -> c` with `h.s = h.t`.
pub fn coequalized_pair() -> Arc<FinCategory> {
    build(
        RawCategory::new("Coeq")
            .objects(&["a", "b", "c"])
            .mor("s", "a", "b")
            .mor("t", "a", "b")
            .mor("h", "b", "c")
            .mor("u", "a", "c")
            .compose("h", "s", "u")
            .compose("h", "t", "u"),
    )
}

/// `0 -> 1 -> 2`.
pub fn chain3() -> Arc<FinCategory> {
    build(
        RawCategory::new("Chain3")
            .objects(&["0", "1", "2"])
            .mor("f", "0", "1")
            .mor("g", "1", "2")
            .mor("gf", "0", "2")
            .compose("g", "f", "gf"),
    )
}

/// `s, t: a -> b`.
pub fn parallel_pair() -> Arc<FinCategory> {
    build(
        RawCategory::new("Par")
            .objects(&["a", "b"])
            .mor("s", "a", "b")
            .mor("t", "a", "b"),
    )
}

/// `a -> c <- b`, used as a limit shape.
pub fn pullback() -> Arc<FinCategory> {
    build(
        RawCategory::new("Pullback")
            .objects(&["a", "b", "c"])
            .mor("l", "a", "c")
            .mor("r", "b", "c"),
    )
}

/// Two objects, identities only.
pub fn discrete_pair() -> Arc<FinCategory> {
    build(RawCategory::new("Disc2").objects(&["p", "q"]))
}

pub fn empty() -> Arc<FinCategory> {
    build(RawCategory::new("Empty"))
}

/// Two uniquely isomorphic objects.
pub fn iso2() -> Arc<FinCategory> {
    build(
        RawCategory::new("Iso2")
            .objects(&["x", "y"])
            .mor("u", "x", "y")
            .mor("v", "y", "x")
            .compose("v", "u", "id_x")
            .compose("u", "v", "id_y"),
    )
}

/// The group of order two.
pub fn z2() -> Arc<FinCategory> {
    build(
        RawCategory::new("Z2")
            .object("*")
            .mor("g", "*", "*")
            .compose("g", "g", "id_*"),
    )
}

/// Filtered index shapes.
pub fn filtered_shapes() -> Vec<Arc<FinCategory>> {
    vec![terminal(), arrow(), cospan(), idempotent(), coequalized_pair(), chain3()]
}

/// Categories that fail to be filtered, one per failing condition.
pub fn non_filtered_shapes() -> Vec<Arc<FinCategory>> {
    vec![empty(), discrete_pair(), parallel_pair()]
}

/// Finite limit shapes `J`.
pub fn limit_shapes() -> Vec<Arc<FinCategory>> {
    vec![terminal(), arrow(), parallel_pair(), pullback(), discrete_pair(), empty()]
}

/// Value categories, each with at most 4 objects and 12 morphisms.
pub fn value_categories() -> Vec<Arc<FinCategory>> {
    vec![
        terminal(),
        arrow(),
        discrete_pair(),
        iso2(),
        z2(),
        idempotent().renamed("IdemV").into(),
        chain3(),
    ]
}
