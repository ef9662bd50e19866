//! Exact arithmetic for planar polynomial vector fields and the foliations
//! they define.

pub mod blowup;
pub mod bounds;
pub mod darboux;
pub mod error;
pub mod field;
pub mod forms;
pub mod poly;
pub mod rational;

pub use error::{Error, Result};
pub use poly::{MPoly, Monomial, MonomialOrder, Vars};
pub use rational::Rational;
