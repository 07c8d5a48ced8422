//! Exact lattice-point counting on weighted triangles.
//!
//! For weights `w = (w0, w1, w2)` and a degree `d` the crate counts the
//! nonnegative integer solutions of `w0*x + w1*y + w2*z = d` with a
//! Riemann-Roch formula on the weighted projective plane. The local
//! correction terms at the three cyclic quotient singularities are
//! evaluated by a Euclidean recursion, so a count costs `O(log max(w))`
//! big-integer operations instead of a quadratic enumeration.
//!
//! Module map:
//! - [`arith`]: big integers, normalized rationals, residues.
//! - [`weights`]: weight vectors and the reduction to pairwise-coprime weights.
//! - [`correction`]: local correction terms `R` and the `Delta` invariant.
//! - [`ehrhart`]: the counting pipeline plus brute-force and series oracles.
//! - [`hj`]: Hirzebruch-Jung data, lct, Gorenstein index, Blache bounds.
//! - [`unity`]: floating-point roots-of-unity evaluation used as a cross-check.
//! - [`verify`]: randomized self-check suite behind `tricount verify`.

pub mod arith;
pub mod correction;
pub mod ehrhart;
mod error;
pub mod hj;
pub mod unity;
pub mod verify;
pub mod weights;

pub use arith::{BigInt, Rational};
pub use correction::CyclicQuotient;
pub use error::{Error, Result};
pub use hj::HjData;
pub use weights::{ReductionData, WeightVector};
