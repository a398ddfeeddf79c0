//! Log-depth multi-controlled X and U with one ancilla.
//!
//! The recursion writes `AND(x)` onto the target through a "compute half":
//! the first four controls are ANDed into the ancilla and complemented, which
//! makes them clean exactly when the ancilla fired. Controls 2 and 4 then serve
//! as ancillas and controls 1 and 3 as targets for two parallel recursive
//! compute halves over the remaining controls, and a final 3-control gate
//! combines them. Restoration is deferred to a mirrored inverse at the top
//! level only, so each recursion level adds O(1) depth.

use crate::circuit::{inverse_gates, Circuit, QubitRole};
use crate::error::Error;
use crate::gate::{Gate, Op, Qubit};
use crate::synth::{check_distinct, SplitPolicy};

/// Gates before the combining step, split into the ancilla write and the rest.
struct HalfParts {
    ancilla_write: Option<Gate>,
    body: Vec<Gate>,
    combine: Gate,
}

fn half_parts(controls: &[Qubit], anc: Qubit, target: Qubit, op: &Op, threshold: usize) -> HalfParts {
    if controls.len() <= threshold {
        return HalfParts { ancilla_write: None, body: Vec::new(), combine: Gate::new(op.clone(), controls, target) };
    }
    let (head, rest) = controls.split_at(4);
    let (left, right) = rest.split_at(rest.len().div_ceil(2));
    let mut body: Vec<Gate> = head.iter().map(|&q| Gate::x(q)).collect();
    let mut combine_controls = Vec::with_capacity(3);
    for (half, sub_anc, sub_target) in [(left, head[1], head[0]), (right, head[3], head[2])] {
        if half.is_empty() {
            continue;
        }
        body.extend(compute_half_gates(half, sub_anc, sub_target, threshold));
        combine_controls.push(sub_target);
    }
    combine_controls.push(anc);
    HalfParts {
        ancilla_write: Some(Gate::mcx(head, anc)),
        body,
        combine: Gate::new(op.clone(), &combine_controls, target),
    }
}

fn compute_half_gates(controls: &[Qubit], anc: Qubit, target: Qubit, threshold: usize) -> Vec<Gate> {
    let p = half_parts(controls, anc, target, &Op::X, threshold);
    let mut gates: Vec<Gate> = p.ancilla_write.into_iter().collect();
    gates.extend(p.body);
    gates.push(p.combine);
    gates
}

/// The non-restoring half: when `anc` is `|0⟩` on entry, `target ^= AND(controls)`.
/// Controls and `anc` are left modified; apply the inverse to undo everything.
pub fn compute_half(controls: &[Qubit], anc: Qubit, target: Qubit, policy: &SplitPolicy) -> Result<Vec<Gate>, Error> {
    if controls.is_empty() {
        return Err(Error::InvalidArgument("compute_half needs at least one control".into()));
    }
    check_distinct(controls.iter().copied().chain([anc, target]))?;
    Ok(compute_half_gates(controls, anc, target, policy.base_threshold))
}

/// `C^n(op)` onto `target` with `anc` assumed `|0⟩` (restored).
pub fn mcx_gates_clean(controls: &[Qubit], anc: Qubit, target: Qubit, op: &Op, policy: &SplitPolicy) -> Vec<Gate> {
    let p = half_parts(controls, anc, target, op, policy.base_threshold);
    let mut prefix: Vec<Gate> = p.ancilla_write.into_iter().collect();
    prefix.extend(p.body);
    let mut gates = prefix.clone();
    gates.push(p.combine);
    gates.extend(inverse_gates(&prefix));
    gates
}

/// `C^n(op)` onto `target` borrowing `anc` in an arbitrary state (restored).
/// Requires `op² = I`.
pub fn mcx_dirty_gates(controls: &[Qubit], anc: Qubit, target: Qubit, op: &Op, policy: &SplitPolicy) -> Vec<Gate> {
    let p = half_parts(controls, anc, target, op, policy.base_threshold);
    let Some(write) = p.ancilla_write else {
        return vec![p.combine];
    };
    // B = body, combine, body⁻¹ fires `op` iff anc is set; B, write, B, write
    let mut b = p.body.clone();
    b.push(p.combine);
    b.extend(inverse_gates(&p.body));
    let mut gates = b.clone();
    gates.push(write.clone());
    gates.extend(b);
    gates.push(write);
    gates
}

fn family_circuit(n: usize, anc_role: QubitRole) -> Result<Circuit, Error> {
    let mut specs: Vec<(String, QubitRole)> = (1..=n).map(|i| (format!("x{i}"), QubitRole::Input)).collect();
    specs.push(("t".into(), QubitRole::Target));
    specs.push(("a".into(), anc_role));
    Circuit::new(specs)
}

fn layout(n: usize) -> (Vec<Qubit>, Qubit, Qubit) {
    ((0..n).map(Qubit).collect(), Qubit(n), Qubit(n + 1))
}

fn check_op(op: &Op) -> Result<(), Error> {
    Gate::new(op.clone(), &[], Qubit(0)).validate(1)
}

/// n-controlled X with one clean ancilla. Qubits: `x1..xn`, `t`, `a`.
pub fn mcx_clean(n: usize, policy: &SplitPolicy) -> Result<Circuit, Error> {
    mcu_clean(n, &Op::X, policy)
}

/// n-controlled `op` with one clean ancilla. Qubits: `x1..xn`, `t`, `a`.
pub fn mcu_clean(n: usize, op: &Op, policy: &SplitPolicy) -> Result<Circuit, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one control".into()));
    }
    check_op(op)?;
    let mut c = family_circuit(n, QubitRole::CleanAncilla)?;
    let (controls, t, a) = layout(n);
    c.extend(mcx_gates_clean(&controls, a, t, op, policy))?;
    Ok(c)
}

/// n-controlled X with one dirty ancilla. Qubits: `x1..xn`, `t`, `a`.
pub fn mcx_dirty(n: usize, policy: &SplitPolicy) -> Result<Circuit, Error> {
    mcu_dirty(n, &Op::X, policy)
}

/// n-controlled `op` with one dirty ancilla; `op` must square to the identity.
pub fn mcu_dirty(n: usize, op: &Op, policy: &SplitPolicy) -> Result<Circuit, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one control".into()));
    }
    check_op(op)?;
    if !op.is_involution(1e-12) {
        return Err(Error::NotInvolution);
    }
    let mut c = family_circuit(n, QubitRole::DirtyAncilla)?;
    let (controls, t, a) = layout(n);
    c.extend(mcx_dirty_gates(&controls, a, t, op, policy))?;
    Ok(c)
}
