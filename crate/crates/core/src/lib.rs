//! Genus-2 curves over prime fields, their Jacobians and linear series, and
//! the rational normal scrolls swept out by the `g^1_2` and a `g^1_3` on a
//! curve embedded by a complete linear series of degree `d >= 6`.

pub mod curve;
pub mod divisor;
pub mod error;
pub mod expr;
pub mod field;
pub mod function;
pub mod instance;
pub mod jacobian;
pub mod linalg;
pub mod picard;
pub mod poly;
pub mod scroll;
pub mod series;
pub mod suite;
pub mod tables;
pub mod verify;

pub use curve::{Curve, Divisor, Point};
pub use error::{Error, Result};
pub use field::Field;
pub use jacobian::DivClass;
