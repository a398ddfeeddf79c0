//! Circuit families: control factoring, log-depth multi-controlled gates,
//! fan-outs, the controlled carry-lookahead stage, the incrementor and the
//! zero-ancilla Toffoli.

mod cla;
mod factor;
mod fanout;
mod increment;
mod toffoli;
mod zero_ancilla;

pub use cla::{cla_ctrl_increment, cla_scratch_demand};
pub use factor::{double_apply_dirty, factor_control_clean};
pub use fanout::{fanout_clean, fanout_dirty, rz_fanout};
pub use increment::{incrementor, incrementor_gates, incrementor_ladder};
pub use toffoli::{compute_half, mcu_clean, mcu_dirty, mcx_clean, mcx_dirty, mcx_dirty_gates, mcx_gates_clean};
pub use zero_ancilla::mcx_no_ancilla;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AncillaMode {
    Clean,
    Dirty,
    None,
}

/// Recursion parameters shared by the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitPolicy {
    /// Fraction of the incrementor register kept in the low part, as `(num, den)`.
    pub low_fraction: (u32, u32),
    /// Multi-controlled gates with at most this many controls are emitted directly.
    pub base_threshold: usize,
}

impl Default for SplitPolicy {
    fn default() -> Self {
        SplitPolicy { low_fraction: (9, 10), base_threshold: 5 }
    }
}

impl SplitPolicy {
    pub fn new(low_fraction: (u32, u32), base_threshold: usize) -> Result<Self, Error> {
        let p = SplitPolicy { low_fraction, base_threshold };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let (num, den) = self.low_fraction;
        if num == 0 || num >= den {
            return Err(Error::InvalidArgument(format!("split fraction {num}/{den} must lie in (0, 1)")));
        }
        if !(4..=5).contains(&self.base_threshold) {
            return Err(Error::InvalidArgument(format!(
                "base threshold {} must be 4 or 5 so base gates stay lowerable",
                self.base_threshold
            )));
        }
        Ok(())
    }

    /// Size of the low part for an `n`-qubit register, clamped to `[1, n−1]`.
    pub fn low_len(&self, n: usize) -> usize {
        let (num, den) = self.low_fraction;
        (n * num as usize / den as usize).clamp(1, n.saturating_sub(1).max(1))
    }
}

pub(crate) fn check_distinct(qubits: impl IntoIterator<Item = crate::gate::Qubit>) -> Result<(), Error> {
    let mut seen = std::collections::HashSet::new();
    for q in qubits {
        if !seen.insert(q) {
            return Err(Error::OverlappingOperands(q.0));
        }
    }
    Ok(())
}
