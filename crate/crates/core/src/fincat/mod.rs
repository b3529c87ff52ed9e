//! Exact finite categorical data: categories, functors, presheaves, natural
//! transformations and finite (co)limit machinery.

pub mod category;
pub mod functor;
pub mod kan;
pub mod presheaf;
pub mod samples;

pub use category::{same_category, CatRef, CategoryBuilder, FinCategory, MorId, ObjId};
pub use functor::{all_functors, FinFunctor};
pub use kan::{
    comma_over, left_kan_value, set_colimit, CommaPresentation, KanValue, SetColimit, SetDiagram,
    UnionFind,
};
pub use presheaf::{nat_transformations, FinCopresheaf, FinPresheaf, NatTransform};
