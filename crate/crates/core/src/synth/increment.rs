//! `|x⟩ → |x + 1 mod 2ⁿ⟩` with one clean ancilla, depth O(log² n), size O(n).
//!
//! The register splits into a low part (fraction `low_fraction`) and a high
//! part. The ancilla records whether the low part is all ones; in that branch
//! the complemented low part is clean scratch for the controlled
//! carry-lookahead increment of the high part. The low part is then
//! incremented recursively with the ancilla as its clean ancilla.

use crate::circuit::{inverse_gates, Circuit, QubitRole};
use crate::error::Error;
use crate::gate::{Gate, Op, Qubit};
use crate::synth::{check_distinct, cla_ctrl_increment, cla_scratch_demand, mcx_dirty_gates, SplitPolicy};

/// At or below this width the increment is a direct carry chain.
const LADDER_MAX: usize = 4;

/// Carry chain without ancilla: bit `i` flips when every lower bit is set,
/// highest bit first.
fn ladder(data: &[Qubit]) -> Vec<Gate> {
    (0..data.len()).rev().map(|i| Gate::mcx(&data[..i], data[i])).collect()
}

/// Incrementor gates over `data` (least significant first) using `anc`, which
/// must be `|0⟩` for the result to be correct. `anc` is returned to its input
/// value for either input value.
pub fn incrementor_gates(data: &[Qubit], anc: Qubit, policy: &SplitPolicy) -> Result<Vec<Gate>, Error> {
    policy.validate()?;
    check_distinct(data.iter().copied().chain([anc]))?;
    let mut gates = Vec::new();
    build(data, anc, policy, &mut gates)?;
    Ok(gates)
}

fn build(data: &[Qubit], anc: Qubit, policy: &SplitPolicy, out: &mut Vec<Gate>) -> Result<(), Error> {
    let n = data.len();
    if n <= LADDER_MAX {
        out.extend(ladder(data));
        return Ok(());
    }
    let (low, high) = data.split_at(policy.low_len(n));
    let needed = cla_scratch_demand(high.len());
    if needed > low.len() {
        return Err(Error::InsufficientScratch { needed, available: low.len() });
    }
    let carry = mcx_dirty_gates(low, high[0], anc, &Op::X, policy);
    let flip_low: Vec<Gate> = low.iter().map(|&q| Gate::x(q)).collect();

    out.extend(carry.iter().cloned());
    out.extend(flip_low.iter().cloned());
    out.extend(cla_ctrl_increment(high, anc, low)?);
    out.extend(flip_low);
    out.extend(carry);
    build(low, anc, policy, out)
}

/// Qubits: `x0..x{n-1}` (least significant first) and clean ancilla `a`.
pub fn incrementor(n: usize, policy: &SplitPolicy) -> Result<Circuit, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("incrementor needs at least one bit".into()));
    }
    let mut specs: Vec<(String, QubitRole)> = (0..n).map(|i| (format!("x{i}"), QubitRole::Input)).collect();
    specs.push(("a".into(), QubitRole::CleanAncilla));
    let mut c = Circuit::new(specs)?;
    let data: Vec<Qubit> = (0..n).map(Qubit).collect();
    c.extend(incrementor_gates(&data, Qubit(n), policy)?)?;
    Ok(c)
}

/// Zero-ancilla carry-chain incrementor on `n` qubits (size `n`, depth `n`).
pub fn incrementor_ladder(n: usize) -> Result<Circuit, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("incrementor needs at least one bit".into()));
    }
    let mut c = Circuit::new((0..n).map(|i| (format!("x{i}"), QubitRole::Input)))?;
    let data: Vec<Qubit> = (0..n).map(Qubit).collect();
    c.extend(ladder(&data))?;
    Ok(c)
}

/// The decrement is the exact inverse.
#[allow(dead_code)]
pub(crate) fn decrementor_gates(data: &[Qubit], anc: Qubit, policy: &SplitPolicy) -> Result<Vec<Gate>, Error> {
    Ok(inverse_gates(&incrementor_gates(data, anc, policy)?))
}
