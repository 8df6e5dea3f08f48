//! Torsion-free congruence subgroups of small index in arithmetic groups,
//! torsion bounds in linear groups, and an explicit family of lattices with
//! large torsion.
//!
//! The crate is organised bottom-up:
//!
//! * [`polyalg`]: exact polynomials, factorisation mod p, real roots,
//!   Newton polygons.
//! * [`numfield`]: number fields `Q[x]/(f)`, prime splitting, embeddings.
//! * [`selberg`]: congruence level selection and index bounds.
//! * [`torsion`]: maximal element orders in `GL_n` and finite subgroup bounds.
//! * [`construct`]: the `Q(cos 2π/p)` lattice construction and its checks.

pub mod config;
pub mod construct;
pub mod error;
pub mod numfield;
pub mod polyalg;
pub mod selberg;
pub(crate) mod serde_util;
pub mod torsion;

pub use config::Config;
pub use error::{Error, Result};
