//! Finite categories, functors, natural transformations, filteredness and
//! cospan categories.

mod category;
mod cospan;
mod filtered;
mod functor;
mod product;

pub use category::{validate_category, FinCategory, Mor, MorphismData, Obj, RawCategory, RawMorphism};
pub use cospan::{cospan_category, cospan_category_with, CospanCategory, FilteredPostCheck};
pub use filtered::{cocone_and_equalize, find_cocone, is_filtered, Cocone, FilteredViolation, FilteredWitness};
pub use functor::{
    enumerate_functors, for_each_functor, for_each_nat, validate_functor, validate_nat, FinFunctor,
    NatTransformation, RawFunctor, RawNat,
};
pub use product::{product, ProductCategory};
