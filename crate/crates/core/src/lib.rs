//! Exact computation of the gap value `G(A) = sup{u : u ∉ S(A)}` of the
//! additive semigroup `S(A)` generated by a finite union `A ⊆ (0,1)` of open
//! intervals with rational endpoints, together with the bounds, extremal
//! constructions and falsification harnesses that go with it.
//!
//! ```
//! use contfrob_core::{rational::rat, IntervalUnion, semigroup::gap};
//!
//! // (1/4, 1/2) ∪ (1/2, 1): the point 1/2 is never a sum.
//! let a = IntervalUnion::from_fracs(&[(1, 4, 1, 2), (1, 2, 1, 1)]);
//! assert_eq!(gap(&a).unwrap().gap, rat(1, 2));
//! ```

pub mod bounds;
pub mod constructions;
pub mod corpus;
pub mod discrete;
pub mod error;
mod grid;
pub mod harness;
pub mod interval;
pub mod rational;
pub mod search;
pub mod semigroup;
pub mod torus;

pub use error::{Error, Result};
pub use interval::{ClosedInterval, ClosedRemnant, IntervalUnion, OpenInterval, SetFile};
pub use rational::Rational;
pub use semigroup::{EngineLimits, GapResult};
pub use torus::TorusUnion;
