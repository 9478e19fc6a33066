//! Exact-arithmetic toolkit for surfaces with `p_g = 0` built from plane data.
//!
//! The crate is organised bottom-up:
//!
//! * [`plane_geom`]: projective points, lines and conics over the rationals,
//!   incidence and singular points of line arrangements.
//! * [`picard_lattice`]: divisor classes on blow-ups of the plane, the
//!   intersection form, the canonical class and (-1)/(-2)-curve detection.
//! * [`cover_algebra`]: character combinatorics of `(Z/2)^n` covers
//!   (square equations, product relations, Campedelli quadrics) and the
//!   invariant quintics of the Godeaux construction.
//! * [`burniat`]: validation, invariants, family classification and branch
//!   divisor classes of Burniat and extended Burniat configurations.
//! * [`node_deform`]: the `(Z/2)^2` action on the smoothing of a 3-fold node,
//!   its quotient, and how the action lifts to a small resolution.
//!
//! Everything is exact: coordinates are [`Rat`] values and divisor classes are
//! integer vectors. No floating point is used for any decision.

pub mod burniat;
pub mod cover_algebra;
mod error;
pub mod linalg;
pub mod node_deform;
pub mod picard_lattice;
pub mod plane_geom;
pub mod poly;

pub use error::{Error, Result};
pub use plane_geom::{Conic, ProjLine, ProjPoint, Rat, SingularPoint};
