pub mod bundle;
pub mod cartesian;
pub mod cdc;
pub mod dual;
pub mod error;
pub mod fibration;
pub mod linalg;
pub mod model;
pub mod parse;
pub mod poly;
pub mod polymap;
pub mod random;
pub mod report;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
pub use poly::{Monomial, Poly};
pub use polymap::PolyMap;
pub use scalar::{Mode, Natural, Rational, Semiring};
