//! Exact Z[ω] states, Clifford + Pauli gate action, and numeric entropies.

mod density;
mod gate;
mod jacobi;
mod state;

pub use density::{reduced_density_matrix, subsystem_entropy, EIGEN_CLAMP};
pub use gate::Gate;
pub use jacobi::{hermitian_eigenvalues, DenseMatrix, JACOBI_TOL, MAX_SWEEPS};
pub use state::{CanonicalStateKey, PhaseProbe, PureState, MAX_QUBITS};
