//! Verification toolkit for linearly ordered coarse spaces.
//!
//! The crate models coarse structures on finite ordered grounds as finitely
//! presented generator families, and makes the classical structure theory
//! checkable at desk scale: entourage algebra, order-compatibility
//! conditions and their convexification equivalence, asymptotic-dimension
//! cover certificates with an independent checker, exact rational
//! interval-set algebra for the interval-base counterexample, and selector
//! constructions with macro-uniformity moduli.

pub mod compat;
pub mod error;
pub mod exec;
pub mod ground;
pub mod intervalsets;
pub mod pointset;
pub mod rational;
pub mod relations;
pub mod structures;

pub use error::{Error, Result};
pub use ground::{interval_hull, is_convex, IdealExtension, Interval, OrderedGround};
pub use pointset::PointSet;
pub use rational::Rational;
pub use relations::Entourage;
