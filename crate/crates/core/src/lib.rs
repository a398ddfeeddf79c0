//! Synthesis, lowering, simulation and auditing of multi-controlled gate and
//! incrementor circuits.
//!
//! Circuits are built at the `mcx` level, where gates may carry several
//! controls, and lowered on demand to the `basis` level of CX plus
//! single-qubit gates.
//!
//! ```
//! use mcsynth::synth::{mcx_clean, SplitPolicy};
//! use mcsynth::verify::{verify, TargetSpec, VerifyOptions};
//!
//! let c = mcx_clean(6, &SplitPolicy::default()).unwrap();
//! let verdict = verify(&c, &TargetSpec::Mcx(6), &VerifyOptions::default()).unwrap();
//! assert!(verdict.equivalent);
//! ```

pub mod analysis;
pub mod angle;
pub mod circuit;
pub mod error;
pub mod gate;
pub mod lower;
pub mod qasm;
pub mod sim;
pub mod synth;
pub mod verify;

pub use angle::Angle;
pub use circuit::{Circuit, Level, QubitRole, QubitSpec, ResourceReport};
pub use error::Error;
pub use gate::{Euler, Gate, Op, Qubit};
