//! Groverian entanglement of pure multi-qubit states under arbitrary
//! qubit partitions.
//!
//! For a pure state of `n` qubits divided into `m` parties, the crate
//! computes the maximal squared overlap `P_max` with the product states of
//! that partition and the derived entanglement measure
//! `G = sqrt(1 - P_max)`. Operationally, `P_max` is the best success
//! probability of a Grover search run on the state after optimal per-party
//! unitary pre-processing.
//!
//! The pieces:
//!
//! * [`state`] — dense pure states, standard families (GHZ, W, equal
//!   superposition), seeded random states;
//! * [`partition`] — qubit partitions and their enumeration;
//! * [`product`] — the nested hyperspherical parametrization of per-party
//!   states;
//! * [`optimizer`] — randomized coordinate ascent with closed-form
//!   single-coordinate updates, plus whole-party power-iteration updates;
//! * [`oracles`] — independent ground truth: the bipartite spectral
//!   reduction, a brute-force grid search, GHZ/W closed forms;
//! * [`measure`] — `G`, the partition sweep `G_m`, and the W-family table;
//! * [`grover`] — an exact Grover simulator validating the operational
//!   overlap law;
//! * [`io`] — the JSON state-file format shared with the CLI.

pub mod error;
pub mod grover;
pub mod io;
pub mod measure;
pub mod optimizer;
pub mod oracles;
pub mod partition;
pub mod product;
pub mod state;

pub use error::{Error, Result};
pub use measure::{g_m, gm_profile, groverian, GmProfile, MeasureResult, Method};
pub use optimizer::{optimize, OptResult, OptimizerConfig, UpdateMode};
pub use partition::Partition;
pub use state::{make_eta, make_ghz, make_random_state, make_w, MarkedElement, PureState};
