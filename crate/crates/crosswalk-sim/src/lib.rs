//! Microscopic simulation of pedestrian groups crossing a signalized
//! crosswalk, plus a signalized-intersection harness that uses the
//! simulator's crossing-time estimates to size traffic-light phases.
//!
//! The crate is organized around the pipeline:
//!
//! * [`geometry`] — pure kernel: circle intersections, exclusion arcs on the
//!   forward semicircle, arc-set union, and best-angle selection.
//! * [`world`] — crosswalk coordinate frame, waiting areas, initial-position
//!   sampling, containment and completion predicates.
//! * [`pedestrian`] — pedestrian types, speed distributions, and the coupled
//!   speed/radius reduction schedule.
//! * [`engine`] — the discrete-step crossing simulation and crossing-time
//!   estimation over seeded replications.
//! * [`tls`] — intersection scheduling experiments (static, dynamic, and
//!   dynamic with estimator-informed walk phases) over a point-queue
//!   vehicle model.
//! * [`scenario`] — scenario file parsing and the built-in validation
//!   fixtures.
//! * [`output`] — trace CSV and summary serialization.
//!
//! All randomness flows through explicitly seeded generators; a scenario run
//! twice with the same seed produces byte-identical outputs.

// pub mod engine;
pub mod error;
pub mod geometry;
// pub mod output;
pub mod pedestrian;
// pub mod scenario;
// pub mod tls;
pub mod world;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
