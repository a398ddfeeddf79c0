//! Dense statevector simulation, bit-level simulation of X-type circuits, and
//! brute-force oracles.

mod classical;
mod dense;
mod oracle;

pub(crate) use classical::run_unchecked;
pub use classical::{classical_run, require_classical, BitString};
pub(crate) use dense::phase_ratio;
pub use dense::{
    apply, apply_gate, column, equiv, unitary_of, EquivMode, StateVector, MAX_STATE_QUBITS, MAX_UNITARY_QUBITS,
};
pub use oracle::{oracle_incr, oracle_mcu, oracle_mcu_column, oracle_mcx};
