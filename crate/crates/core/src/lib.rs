pub mod error;
pub mod field;
pub mod linalg;
pub mod skewpoly;

pub use error::{Error, Result};
pub use field::{Elt, Field, FieldSpec};
pub mod conv;
pub mod mdp;
pub mod construct;
pub mod explore;
pub mod descriptor;
