//! Concrete bands, valued fields and a dynamically typed band selected by id.

mod dynamic;
mod fields;
mod rings;
mod small;
mod tropical;

pub use dynamic::{parse_field, FieldKind, TaggedSum, Value, ZooBand};
pub use fields::{
    check_compatibility, sign_morphism, signed_abs, signed_valuation, trop_valuation, FieldError, PadicQ, TadicQt,
    TrivialQ, ValuedField,
};
pub use rings::{Integers, RationalFunctions, Rationals, Residues};
pub use small::{F1Pm, Krasner, Sign};
pub use tropical::{RealTropical, Triangle, Tropical};
