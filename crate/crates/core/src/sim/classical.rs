//! Bit-level simulation of X-type circuits (X, CX, multi-controlled X).

use num_bigint::BigUint;

use crate::circuit::Circuit;
use crate::error::Error;
use crate::gate::Qubit;

/// A computational basis state packed into 64-bit words. Qubit `i` is bit `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = BitString::zeros(len);
        for i in 0..len {
            b.set(i, true);
        }
        b
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut b = BitString::zeros(bits.len());
        for (i, &v) in bits.iter().enumerate() {
            b.set(i, v);
        }
        b
    }

    /// Low `len` bits of `value`, bit 0 first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        let mut b = BitString::zeros(len);
        for i in 0..len.min(64) {
            b.set(i, value >> i & 1 == 1);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Reads the given qubits as an unsigned integer, first qubit least significant.
    pub fn read_uint(&self, qubits: &[Qubit]) -> BigUint {
        let mut v = BigUint::default();
        for (k, q) in qubits.iter().enumerate() {
            if self.get(q.0) {
                v.set_bit(k as u64, true);
            }
        }
        v
    }

    pub fn write_uint(&mut self, qubits: &[Qubit], value: &BigUint) {
        for (k, q) in qubits.iter().enumerate() {
            self.set(q.0, value.bit(k as u64));
        }
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl std::fmt::Display for BitString {
    /// Qubit 0 first.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Checks that every gate is X-type. Returns the first offending gate otherwise.
pub fn require_classical(c: &Circuit) -> Result<(), Error> {
    match c.gates().iter().position(|g| !g.is_classical()) {
        None => Ok(()),
        Some(index) => Err(Error::NonClassicalGate { index, gate: c.gates()[index].kind() }),
    }
}

/// Runs `c` on a basis input. Only X-type gates are allowed.
pub fn classical_run(c: &Circuit, input: &BitString) -> Result<BitString, Error> {
    if input.len() != c.width() {
        return Err(Error::DimensionMismatch(c.width(), input.len()));
    }
    require_classical(c)?;
    let mut state = input.clone();
    run_unchecked(c, &mut state);
    Ok(state)
}

/// Runs an already-validated classical circuit in place.
pub(crate) fn run_unchecked(c: &Circuit, state: &mut BitString) {
    for g in c.gates() {
        if g.controls.iter().all(|q| state.get(q.0)) {
            state.flip(g.target.0);
        }
    }
}
