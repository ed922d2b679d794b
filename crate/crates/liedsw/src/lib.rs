//! Exact symbolic computation in free Lie algebras over the rationals:
//! weighted and centrally bracketed Dynkin-Specht-Wever projections,
//! splitting maps, BCH series generators, a formal resolvent calculus with
//! polynomial λ-coefficients, and odd-part solutions of the
//! Kashiwara-Vergne problem.
//!
//! All arithmetic is over arbitrary-precision rationals; nothing is
//! floating point and every identity check is exact.

pub mod bchgen;
pub mod error;
pub mod freealg;
pub mod kv;
pub mod lieops;
pub mod parse;
pub mod report;
pub mod resolvent;
pub mod rng;
pub mod scalar;
pub mod splitting;
pub mod suites;

pub use error::LieError;
pub use freealg::{Alphabet, CyclicPoly, Gen, GradedSeries, NcPoly, Parity, Side, Word};
pub use lieops::{BracketSide, LieShape, LieTree, WeightAssignment};
pub use report::{CheckItem, Report};
pub use scalar::{LambdaPoly, Rational};
