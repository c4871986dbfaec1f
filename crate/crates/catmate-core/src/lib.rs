//! Finite-category engine: localizations, mates, Beck-Chevalley squares,
//! derived functors and homotopy colimits, all checked by enumeration.

pub mod adjunction;
pub mod bc;
pub mod cat;
pub mod derived;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod functor;
pub mod functor_cat;
pub mod hocolim;
pub mod localization;
pub mod mates;
pub mod suite;
pub mod universal;

pub use adjunction::Adjunction;
pub use cat::{Budget, FinCat, Mor, Obj};
pub use error::{CatError, Result};
pub use functor::{Functor, NatTrans};
pub use mates::MateSquare;
