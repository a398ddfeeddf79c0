use num_bigint::BigInt;
use serde::Serialize;

use crate::analysis::det_phase;
use crate::angle::Angle;
use crate::circuit::Circuit;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GatePrecision {
    pub index: usize,
    /// Determinant phase of the gate's own 2×2 operator.
    pub det_phase: Angle,
}

/// Per-gate determinant-phase precision and the circuit's total determinant phase.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrecisionAudit {
    pub per_gate: Vec<GatePrecision>,
    /// Largest per-gate denominator; `None` when some gate uses a real angle.
    #[serde(serialize_with = "ser_denominator")]
    pub max_denominator: Option<BigInt>,
    pub total_phase: Angle,
}

fn ser_denominator<S: serde::Serializer>(d: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match d {
        Some(q) => s.collect_str(q),
        None => s.serialize_none(),
    }
}

impl PrecisionAudit {
    /// True when every gate is exact with denominator at most `threshold`.
    pub fn is_low_precision(&self, threshold: &BigInt) -> bool {
        self.max_denominator.as_ref().is_some_and(|q| q <= threshold)
    }
}

pub fn precision_audit(c: &Circuit) -> PrecisionAudit {
    let per_gate: Vec<GatePrecision> = c
        .gates()
        .iter()
        .enumerate()
        .map(|(index, g)| GatePrecision { index, det_phase: g.op.det_phase().reduce() })
        .collect();
    let max_denominator =
        per_gate.iter().map(|g| g.det_phase.denominator()).try_fold(BigInt::from(1), |acc, d| d.map(|d| acc.max(d)));
    PrecisionAudit { per_gate, max_denominator, total_phase: det_phase(c) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::QubitRole;
    use crate::gate::{Gate, Op, Qubit};

    #[test]
    fn clifford_t_has_denominator_four() {
        let mut c = Circuit::new([("a", QubitRole::Input), ("b", QubitRole::Input)]).unwrap();
        c.extend([Gate::h(Qubit(0)), Gate::cx(Qubit(0), Qubit(1)), Gate::new(Op::t(), &[], Qubit(1))]).unwrap();
        let a = precision_audit(&c);
        assert_eq!(a.max_denominator, Some(BigInt::from(4)));
        assert_eq!(a.per_gate.len(), 3);
        assert!(a.is_low_precision(&BigInt::from(4)));
    }

    #[test]
    fn real_angle_is_unbounded() {
        let mut c = Circuit::new([("a", QubitRole::Input)]).unwrap();
        c.push(Gate::phase(Angle::Real(0.1), Qubit(0))).unwrap();
        assert_eq!(precision_audit(&c).max_denominator, None);
    }
}
