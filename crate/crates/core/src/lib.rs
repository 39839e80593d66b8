//! Exact entanglement entropies of Dicke states, entropy-cone checks,
//! star-graph min-cut models and Clifford/Pauli orbit enumeration.

pub mod base;
pub mod cones;
pub mod dicke;
pub mod error;
pub mod exact_state;
pub mod groups;
pub mod reachability;
pub mod ring;
pub mod stargraph;

pub use base::LogBase;
pub use error::{Error, Result};
pub use exact_state::{CanonicalStateKey, Gate, PureState};
pub use ring::RingAmplitude;
