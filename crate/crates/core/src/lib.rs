//! Signaling polytopes: the classical channels that can be simulated with
//! `d` messages and shared randomness.
//!
//! Everything polyhedral is exact (`BigRational`). The crate enumerates
//! vertices, checks and rotates facets, finds generator facet classes by
//! adjacency decomposition, certifies the signaling dimension of a channel
//! with a violated Bell inequality and a simulation protocol, and builds
//! classical channels from quantum states, channels and measurements.
//!
//! ```
//! use signaling::certifier::certify_signaling_dimension;
//! use signaling::ClassicalChannel;
//!
//! let r = certify_signaling_dimension(&ClassicalChannel::identity(3)).unwrap();
//! assert_eq!((r.lower, r.upper), (3, 3));
//! ```

pub mod adjacency;
pub mod certifier;
pub mod channel;
pub mod cli;
pub mod error;
pub mod facets;
pub mod matrix;
pub mod polyhedral;
pub mod quantum;
pub mod rational;
pub mod sampling;

pub use channel::{ClassicalChannel, DeterministicVertex, PolytopeSpec, SimulationProtocol};
pub use error::{Error, Result};
pub use facets::{BellInequality, GeneratorFacet};
pub use matrix::RatMatrix;
pub use rational::Rational;
