//! Particle swarm optimization over explicit communication graphs, with
//! random agent loss, spectral graph metrics and a seeded experiment harness.
//!
//! ```
//! use swarmlab::topology::{TopologyKind, TopologySpec};
//! use swarmlab::metrics::average_geodesic;
//!
//! let ring = TopologySpec::new(TopologyKind::Ring, 100).build().unwrap();
//! let l = average_geodesic(&ring).unwrap().unwrap();
//! assert!((l - 2500.0 / 99.0).abs() < 1e-9);
//! ```

pub mod engine;
pub mod error;
pub mod harness;
pub mod io;
pub mod metrics;
pub mod objectives;
pub mod topology;

pub use error::{Error, Result};
