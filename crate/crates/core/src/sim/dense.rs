//! Dense statevector simulation.
//!
//! Qubit `i` is bit `i` of the basis index.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::circuit::Circuit;
use crate::error::Error;
use crate::gate::Gate;

pub const MAX_STATE_QUBITS: usize = 26;
pub const MAX_UNITARY_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(qubits: usize, index: usize) -> Result<Self, Error> {
        if qubits > MAX_STATE_QUBITS {
            return Err(Error::TooManyQubits { qubits, limit: MAX_STATE_QUBITS });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, Error> {
        if !amps.len().is_power_of_two() {
            return Err(Error::InvalidArgument(format!("{} amplitudes is not a power of two", amps.len())));
        }
        Ok(StateVector { amps })
    }

    pub fn qubits(&self) -> usize {
        self.amps.len().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Applies one gate in place. Only indices with every control set and the
/// target clear are visited, as subsets of the remaining free bits.
pub fn apply_gate(g: &Gate, amps: &mut [Complex64]) {
    let m = g.op.matrix();
    let tbit = 1usize << g.target.0;
    let cmask = g.controls.iter().fold(0usize, |acc, q| acc | (1 << q.0));
    let free = (amps.len() - 1) & !(cmask | tbit);
    let is_x = g.is_classical();
    let mut s = 0usize;
    loop {
        let i = s | cmask;
        let j = i | tbit;
        if is_x {
            amps.swap(i, j);
        } else {
            let (a0, a1) = (amps[i], amps[j]);
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[j] = m[1][0] * a0 + m[1][1] * a1;
        }
        s = s.wrapping_sub(free) & free;
        if s == 0 {
            break;
        }
    }
}

pub fn apply(c: &Circuit, s: &StateVector) -> Result<StateVector, Error> {
    if s.qubits() != c.width() {
        return Err(Error::DimensionMismatch(c.width(), s.qubits()));
    }
    if c.width() > MAX_STATE_QUBITS {
        return Err(Error::TooManyQubits { qubits: c.width(), limit: MAX_STATE_QUBITS });
    }
    let mut amps = s.amps.clone();
    for g in c.gates() {
        apply_gate(g, &mut amps);
    }
    Ok(StateVector { amps })
}

/// Output column for basis input `index`.
pub fn column(c: &Circuit, index: usize) -> Result<Vec<Complex64>, Error> {
    Ok(apply(c, &StateVector::basis(c.width(), index)?)?.amps)
}

pub fn unitary_of(c: &Circuit) -> Result<DMatrix<Complex64>, Error> {
    let m = c.width();
    if m > MAX_UNITARY_QUBITS {
        return Err(Error::TooManyQubits { qubits: m, limit: MAX_UNITARY_QUBITS });
    }
    let dim = 1usize << m;
    let cols: Vec<Vec<Complex64>> = (0..dim).into_par_iter().map(|j| column(c, j)).collect::<Result<_, _>>()?;
    Ok(DMatrix::from_fn(dim, dim, |i, j| cols[j][i]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivMode {
    Exact,
    GlobalPhase,
}

/// `max|U − λV| ≤ tol`, with `λ = 1` (exact) or the ratio at V's largest-magnitude entry.
pub fn equiv(u: &DMatrix<Complex64>, v: &DMatrix<Complex64>, mode: EquivMode, tol: f64) -> Result<bool, Error> {
    if u.shape() != v.shape() {
        return Err(Error::DimensionMismatch(u.nrows(), v.nrows()));
    }
    let lambda = match mode {
        EquivMode::Exact => Complex64::new(1.0, 0.0),
        EquivMode::GlobalPhase => match phase_ratio(u.iter().copied().zip(v.iter().copied())) {
            Some(l) => l,
            None => return Ok(u.iter().all(|a| a.norm() <= tol)),
        },
    };
    Ok(u.iter().zip(v.iter()).all(|(a, b)| (a - lambda * b).norm() <= tol))
}

/// Unit-modulus `λ = u_k / v_k` at the index where `|v_k|` is largest.
pub(crate) fn phase_ratio(pairs: impl Iterator<Item = (Complex64, Complex64)>) -> Option<Complex64> {
    let (mut best, mut best_mag) = (None, 0.0);
    for (a, b) in pairs {
        if b.norm() > best_mag {
            best_mag = b.norm();
            best = Some((a, b));
        }
    }
    let (a, b) = best?;
    let r = a / b;
    if r.norm() < 1e-12 {
        return None;
    }
    Some(r / r.norm())
}
