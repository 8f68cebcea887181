//! GIT-fans for representations of quivers without oriented cycles.
//!
//! The crate computes the cone of effective weights of a dimension vector,
//! orbit cones of explicit representations over prime fields, GIT-cones of
//! weights and the fan they form. Every quantity is exact: weights and cones
//! live over the rationals, representations over `F_p`.
//!
//! Module map:
//!
//! * [`quiver`]: quivers, dimension vectors, weights, the Euler form.
//! * [`genrep`]: generic extensions, the embedding relation and the
//!   effective cone.
//! * [`cone`]: exact rational polyhedral cones, fans and chamber splitting.
//! * [`field`] / [`subspace`]: linear algebra over `F_p`.
//! * [`rep`]: explicit representations, King stability, Jordan-Hölder
//!   filtrations, polystability and orbit cones.
//! * [`gitfan`]: GIT-cones, wall systems, fan assembly and verification.
//! * [`io`] / [`commands`]: the instance and report formats and command dispatch.

pub mod commands;
pub mod cone;
pub mod error;
pub mod field;
pub mod genrep;
pub mod gitfan;
pub mod io;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod subspace;

pub use cone::{ChamberDecomposition, Cone, Fan};
pub use error::{Error, Result};
pub use field::{FpMatrix, PrimeField};
pub use genrep::{Schofield, StableDecomposition};
pub use gitfan::{
    FanReport, GitConeRecord, GitFanEngine, Mode, RepModel, VerifyConfig, WallClass, WallKind,
    WallSystem,
};
pub use quiver::{DimVector, Quiver, Weight};
pub use rep::{Filtration, IsoVerdict, Rep, DEFAULT_BUDGET};
