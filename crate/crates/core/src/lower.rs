//! Lowering of controlled gates into CX plus single-qubit gates.
//!
//! * 1-control X is a CX; 1-control phase uses the two-CX phase kickback form;
//!   other 1-control operators use the `A·X·B·X·C` decomposition.
//! * 2-control X is the textbook 6-CX Toffoli (T/T†/H only).
//! * 3..=5-control X borrow one wire outside the gate as a dirty qubit and
//!   split into smaller X gates, bottoming out in Toffolis. Without a free
//!   wire, 3 and 4 controls fall back to the controlled-root ladder.
//! * k-control U uses the controlled-root ladder
//!   `C_{c_k}V · C^{k-1}X(→c_k) · C_{c_k}V† · C^{k-1}X(→c_k) · C^{k-1}V`, `V² = U`.

use crate::angle::Angle;
use crate::circuit::{Circuit, Level};
use crate::error::Error;
use crate::gate::{Euler, Gate, Op, Qubit};

pub const MAX_LOWERED_CONTROLS: usize = 5;

/// Lowers every gate. Gates are taken in ASAP layer order (gates within a
/// layer act on disjoint wires, so this is a valid reordering) and a gate that
/// needs a spare borrows a wire idle in its own layer when one exists. Each
/// mcx-level layer then lowers to a constant-depth block.
pub fn lower_to_basis(c: &Circuit) -> Result<Circuit, Error> {
    let mut out = Vec::with_capacity(c.size() * 4);
    lower_each(c, |block| out.extend_from_slice(block))?;
    Ok(Circuit::from_parts(c.qubits().to_vec(), out, Level::Basis))
}

/// Depth and size of the lowered circuit, computed without storing it.
pub fn basis_metrics(c: &Circuit) -> Result<(usize, usize), Error> {
    let mut frontier = vec![0usize; c.width()];
    let (mut depth, mut size) = (0, 0);
    lower_each(c, |block| {
        size += block.len();
        for g in block {
            let layer = 1 + g.qubits().map(|q| frontier[q.0]).max().unwrap_or(0);
            g.qubits().for_each(|q| frontier[q.0] = layer);
            depth = depth.max(layer);
        }
    })?;
    Ok((depth, size))
}

/// Feeds the lowering of each gate, in lowering order, to `sink`.
fn lower_each(c: &Circuit, mut sink: impl FnMut(&[Gate])) -> Result<(), Error> {
    let width = c.width();
    let gates = c.gates();
    let mut frontier = vec![0usize; width];
    let layer_of: Vec<usize> = gates
        .iter()
        .map(|g| {
            let layer = 1 + g.qubits().map(|q| frontier[q.0]).max().unwrap_or(0);
            g.qubits().for_each(|q| frontier[q.0] = layer);
            layer
        })
        .collect();
    let mut order: Vec<usize> = (0..gates.len()).collect();
    order.sort_by_key(|&i| layer_of[i]);

    let mut out = Vec::new();
    let mut busy = vec![false; width];
    for group in order.chunk_by(|&a, &b| layer_of[a] == layer_of[b]) {
        for q in group.iter().flat_map(|&i| gates[i].qubits()) {
            busy[q.0] = true;
        }
        let mut cursor = 0;
        for &i in group {
            let g = &gates[i];
            let needs_spare = g.op == Op::X && g.controls.len() >= 3;
            let idle = if needs_spare {
                while cursor < width && busy[cursor] {
                    cursor += 1;
                }
                (cursor < width).then(|| {
                    busy[cursor] = true;
                    Qubit(cursor)
                })
            } else {
                None
            };
            let spare = idle.or_else(|| (0..width).map(Qubit).find(|q| !g.controls.contains(q) && *q != g.target));
            out.clear();
            lower_with_spare(g, spare, &mut out)?;
            sink(&out);
        }
        busy.iter_mut().for_each(|b| *b = false);
    }
    Ok(())
}

/// Lowers one gate in a circuit of `width` qubits, appending to `out`. The
/// first wire outside the gate serves as the spare.
pub fn lower_gate(g: &Gate, width: usize, out: &mut Vec<Gate>) -> Result<(), Error> {
    let spare = (0..width).map(Qubit).find(|q| !g.controls.contains(q) && *q != g.target);
    lower_with_spare(g, spare, out)
}

fn lower_with_spare(g: &Gate, spare: Option<Qubit>, out: &mut Vec<Gate>) -> Result<(), Error> {
    let k = g.controls.len();
    if k > MAX_LOWERED_CONTROLS {
        return Err(Error::ArityTooLarge(k));
    }
    match (&g.op, k) {
        (_, 0) => out.push(g.clone()),
        (Op::X, _) => lower_mcx(&g.controls, g.target, spare, out)?,
        (op, _) => lower_mcu(op, &g.controls, g.target, out),
    }
    Ok(())
}

pub fn toffoli(a: Qubit, b: Qubit, t: Qubit, out: &mut Vec<Gate>) {
    out.extend([
        Gate::h(t),
        Gate::cx(b, t),
        Gate::new(Op::tdg(), &[], t),
        Gate::cx(a, t),
        Gate::new(Op::t(), &[], t),
        Gate::cx(b, t),
        Gate::new(Op::tdg(), &[], t),
        Gate::cx(a, t),
        Gate::new(Op::t(), &[], b),
        Gate::new(Op::t(), &[], t),
        Gate::h(t),
        Gate::cx(a, b),
        Gate::new(Op::t(), &[], a),
        Gate::new(Op::tdg(), &[], b),
        Gate::cx(a, b),
    ]);
}

fn lower_mcx(controls: &[Qubit], t: Qubit, spare: Option<Qubit>, out: &mut Vec<Gate>) -> Result<(), Error> {
    let k = controls.len();
    match (k, spare) {
        (1, _) => out.push(Gate::cx(controls[0], t)),
        (2, _) => toffoli(controls[0], controls[1], t, out),
        (_, Some(d)) => {
            // t ^= AND(hi)·d twice around d ^= AND(lo): net t ^= AND(hi)·AND(lo)
            let (lo, hi) = controls.split_at(k.div_ceil(2));
            let mut hi_d: Vec<Qubit> = hi.to_vec();
            hi_d.push(d);
            for _ in 0..2 {
                lower_mcx(&hi_d, t, Some(lo[0]), out)?;
                lower_mcx(lo, d, Some(t), out)?;
            }
        }
        (3 | 4, None) => lower_mcu(&Op::X, controls, t, out),
        (_, None) => return Err(Error::NoSpareQubit(k)),
    }
    Ok(())
}

fn lower_mcu(op: &Op, controls: &[Qubit], t: Qubit, out: &mut Vec<Gate>) {
    match controls {
        [] => out.push(Gate::new(op.clone(), &[], t)),
        [c] => lower_cu(op, *c, t, out),
        [rest @ .., last] => {
            let v = op.sqrt();
            let vdg = v.inverse();
            lower_cu(&v, *last, t, out);
            lower_mcx(rest, *last, Some(t), out).expect("spare supplied");
            lower_cu(&vdg, *last, t, out);
            lower_mcx(rest, *last, Some(t), out).expect("spare supplied");
            lower_mcu(&v, rest, t, out);
        }
    }
}

fn lower_cu(op: &Op, c: Qubit, t: Qubit, out: &mut Vec<Gate>) {
    match op {
        Op::X => out.push(Gate::cx(c, t)),
        Op::Phase(a) => {
            let h = a.half();
            out.extend([
                Gate::phase(h.clone(), c),
                Gate::cx(c, t),
                Gate::phase(-&h, t),
                Gate::cx(c, t),
                Gate::phase(h, t),
            ]);
        }
        other => {
            let e = match other {
                Op::U(e) => e.clone(),
                Op::H => Euler::new(Angle::pi_frac(1, 2), Angle::zero(), Angle::pi(), Angle::zero()),
                _ => unreachable!(),
            };
            // e^{ig}·U3(θ,φ,λ) = e^{i(g+(φ+λ)/2)}·Rz(φ)Ry(θ)Rz(λ)
            let z = Angle::zero;
            let c_op = Euler::zyz(z(), (&e.lambda - &e.phi).half(), z(), z());
            let b_op = Euler::zyz(z(), z(), -&e.theta.half(), -&(&e.lambda + &e.phi).half());
            let a_op = Euler::zyz(z(), e.phi.clone(), e.theta.half(), z());
            let alpha = &e.gamma + &(&e.phi + &e.lambda).half();
            out.push(Gate::new(Op::U(c_op), &[], t));
            out.push(Gate::cx(c, t));
            out.push(Gate::new(Op::U(b_op), &[], t));
            out.push(Gate::cx(c, t));
            out.push(Gate::new(Op::U(a_op), &[], t));
            if !alpha.is_zero() {
                out.push(Gate::phase(alpha, c));
            }
        }
    }
}
