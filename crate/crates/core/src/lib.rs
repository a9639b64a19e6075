//! Flips of ideal triangulations on unpunctured marked surfaces, the
//! exchange graphs they generate, and the groups attached to them.
//!
//! ```
//! use flipgroupoid::surface::{polygon_fan, quiver_from_triangulation, ArcId};
//! use flipgroupoid::seed::mutate_matrix;
//!
//! let t = polygon_fan(6).unwrap();
//! let q = quiver_from_triangulation(&t);
//! let flipped = quiver_from_triangulation(&t.flip(ArcId(2)).unwrap());
//! assert_eq!(flipped.b, mutate_matrix(&q.b, ArcId(2).index()).unwrap());
//! ```

pub mod braid;
pub mod cover;
pub mod error;
pub mod exchange;
pub mod group;
pub mod matrix;
pub mod presentation;
pub mod scalar;
pub mod seed;
pub mod snf;
pub mod surface;

pub use error::{Error, Result};
pub use scalar::IntScalar;

/// Exchange and boundary matrices at machine precision.
pub type IntMatrix = matrix::Matrix<i64>;
/// Arbitrary-precision matrices for torsion computations.
pub type BigMatrix = matrix::Matrix<num_bigint::BigInt>;
/// Seeds used by exchange-graph enumeration.
pub type StdSeed = seed::Seed<i64>;
