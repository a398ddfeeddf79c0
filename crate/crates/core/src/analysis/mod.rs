//! Determinant-phase accounting, gate precision audit and resource scaling.

mod audit;
mod det;
mod scaling;

pub use audit::{precision_audit, GatePrecision, PrecisionAudit};
pub use det::{dense_det_phase, det_phase, gate_det_contribution, phase_distance};
pub use scaling::{fit_log_squared, scaling_report, DepthStep, Family, LogSquaredFit, ScalingReport, ScalingRow};
