//! Exact dense state-vector engine and the ancilla protocols built on it.

mod protocols;
mod records;
mod state;

pub use protocols::{
    controlled_evolution, correlation_via_ancilla, direct_correlation, direct_otoc, excited_ancilla,
    otoc_via_inversion, system_pauli_op, ControlledEvolution, CorrelationOptions, Inversion, ProtocolMethod,
    ProtocolResult, SystemOp,
};
pub use records::ResultRecord;
pub use state::{
    apply_circuit, circuit_unitary, exact_unitary, fock_state, gate_matrix, vacuum_state, Propagator, StateVector,
};
