//! Exact determinant phase of a circuit as an `m`-qubit operator.
//!
//! A gate with `k` controls acts as its 2×2 operator on `2^(m−k−1)` disjoint
//! pairs of basis states and as the identity elsewhere, so its determinant
//! phase is `2^(m−k−1)` times the operator's own.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::angle::Angle;
use crate::circuit::Circuit;
use crate::error::Error;
use crate::gate::Gate;
use crate::sim::unitary_of;

/// Contribution of one gate to the determinant phase of an `m`-qubit circuit, reduced mod 2π.
pub fn gate_det_contribution(g: &Gate, m: usize) -> Angle {
    let exp = (m - g.controls.len() - 1) as u32;
    match g.op.det_phase() {
        Angle::Real(x) => {
            // reduce step by step so large exponents stay finite
            let mut r = x.rem_euclid(2.0 * PI);
            for _ in 0..exp {
                r = (2.0 * r).rem_euclid(2.0 * PI);
            }
            Angle::Real(r)
        }
        exact => exact.scale_pow2(exp).reduce(),
    }
}

/// Phase of `det` of the whole circuit in `[0, 2π)`. Exact unless some gate
/// carries a real angle, in which case the result is a real approximation.
pub fn det_phase(c: &Circuit) -> Angle {
    let m = c.width();
    let mut exact = Angle::zero();
    let mut real: Option<f64> = None;
    for g in c.gates() {
        match gate_det_contribution(g, m) {
            Angle::Real(x) => *real.get_or_insert(0.0) += x,
            a => exact = &exact + &a,
        }
    }
    let exact = exact.reduce();
    match real {
        None => exact,
        Some(x) => Angle::Real((exact.radians() + x).rem_euclid(2.0 * PI)),
    }
}

/// Phase of the numerically computed determinant of the dense unitary, in `[0, 2π)`.
pub fn dense_det_phase(c: &Circuit) -> Result<f64, Error> {
    let det: Complex64 = unitary_of(c)?.determinant();
    Ok(det.arg().rem_euclid(2.0 * PI))
}

/// Distance between two phases on the circle.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}
