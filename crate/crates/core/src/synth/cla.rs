//! Controlled carry-lookahead increment of a `k`-bit register.
//!
//! Carries of `+1` are prefix ANDs `pᵢ = h₀ ∧ … ∧ hᵢ₋₁`. The stage runs
//!
//! ```text
//! P ; W_A ; F_A ; P⁻¹ ; F_A
//! ```
//!
//! * `P` computes every `pᵢ` onto scratch with a Brent–Kung network:
//!   up-sweep of dyadic block ANDs, down-sweep into the prefix wires, then
//!   the inverse up-sweep. Inputs are never written.
//! * `W_A` writes `hᵢ ^= A ∧ pᵢ` for all bits at once. Each bit borrows a
//!   dirty wire `dᵢ`: Toffoli(dᵢ, pᵢ → hᵢ), fan out `A` onto all `d`,
//!   Toffoli again, fan out again.
//! * `F_A` fans `A` onto the register. With `A = 1` the register then holds
//!   `¬(h + 1)`, whose prefix ANDs are again `pᵢ`, so `P⁻¹` clears the
//!   scratch; the second `F_A` undoes the complement.
//!
//! With `A = 0` the write and both fan-outs are inert and `P⁻¹` undoes `P`
//! for arbitrary scratch contents.

use crate::circuit::inverse_gates;
use crate::error::Error;
use crate::gate::{Gate, Qubit};
use crate::synth::{check_distinct, fanout_dirty};

/// Highest level `ℓ` with `2^ℓ < k`, or `None` when `k ≤ 1`.
fn top_level(k: usize) -> Option<u32> {
    (k > 1).then(|| (k - 1).ilog2())
}

fn tree_nodes(k: usize) -> usize {
    match top_level(k) {
        None => 0,
        Some(top) => (1..=top).map(|l| k >> l).sum(),
    }
}

/// Scratch wires needed for a `k`-bit register: block-AND tree nodes, `k − 1`
/// prefix wires and `k` borrowed write wires. At most `3k`.
pub fn cla_scratch_demand(k: usize) -> usize {
    tree_nodes(k) + k.saturating_sub(1) + k
}

/// When `control = 1` and the scratch is all `|0⟩`: `high ← high + 1 mod 2^k`.
/// When `control = 0`: identity for any scratch contents. Scratch is restored
/// in both cases. Bit 0 of `high` is the least significant. Only X-type gates.
pub fn cla_ctrl_increment(high: &[Qubit], control: Qubit, scratch: &[Qubit]) -> Result<Vec<Gate>, Error> {
    let k = high.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let needed = cla_scratch_demand(k);
    if scratch.len() < needed {
        return Err(Error::InsufficientScratch { needed, available: scratch.len() });
    }
    check_distinct(high.iter().chain(&scratch[..needed]).copied().chain([control]))?;

    let mut pool = scratch.iter().copied();
    let mut take = |n: usize| -> Vec<Qubit> { pool.by_ref().take(n).collect() };

    // levels[ℓ][b] holds the AND of block [b·2^ℓ, (b+1)·2^ℓ); level 0 is the register
    let mut levels: Vec<Vec<Qubit>> = vec![high.to_vec()];
    let mut up = Vec::new();
    for l in 1..=top_level(k).unwrap_or(0) {
        let nodes = take(k >> l);
        let below = &levels[l as usize - 1];
        for (b, &node) in nodes.iter().enumerate() {
            up.push(Gate::ccx(below[2 * b], below[2 * b + 1], node));
        }
        levels.push(nodes);
    }

    // prefix[i] holds p_i for i in 1..k; prefix[0] unused
    let mut prefix = vec![Qubit(usize::MAX)];
    prefix.extend(take(k - 1));
    let mut down = Vec::new();
    for l in (0..=top_level(k).unwrap_or(0)).rev() {
        let step = 1usize << l;
        let mut i = step;
        while i < k {
            let block = levels[l as usize][i / step - 1];
            let prev = i - step;
            if prev == 0 {
                down.push(Gate::cx(block, prefix[i]));
            } else {
                down.push(Gate::ccx(prefix[prev], block, prefix[i]));
            }
            i += 2 * step;
        }
    }

    let mut p_stage = up.clone();
    p_stage.extend(down);
    p_stage.extend(inverse_gates(&up));

    let borrowed = take(k);
    let write_layer: Vec<Gate> = (0..k)
        .map(|i| if i == 0 { Gate::cx(borrowed[0], high[0]) } else { Gate::ccx(borrowed[i], prefix[i], high[i]) })
        .collect();
    let copy_a = fanout_dirty(control, &borrowed);
    let complement = fanout_dirty(control, high);

    let mut gates = p_stage.clone();
    for _ in 0..2 {
        gates.extend(write_layer.iter().cloned());
        gates.extend(copy_a.iter().cloned());
    }
    gates.extend(complement.iter().cloned());
    gates.extend(inverse_gates(&p_stage));
    gates.extend(complement);
    Ok(gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{depth_of, Circuit, QubitRole};
    use crate::sim::{classical_run, BitString};

    fn setup(k: usize) -> (Circuit, Vec<Qubit>, Qubit, Vec<Qubit>) {
        let demand = cla_scratch_demand(k);
        let width = k + 1 + demand;
        let high: Vec<Qubit> = (0..k).map(Qubit).collect();
        let control = Qubit(k);
        let scratch: Vec<Qubit> = (k + 1..width).map(Qubit).collect();
        let mut c = Circuit::new((0..width).map(|i| (format!("q{i}"), QubitRole::Input))).unwrap();
        c.extend(cla_ctrl_increment(&high, control, &scratch).unwrap()).unwrap();
        (c, high, control, scratch)
    }

    #[test]
    fn demand_is_at_most_three_k() {
        for k in 1..300 {
            assert!(cla_scratch_demand(k) <= 3 * k, "k={k}");
        }
    }

    #[test]
    fn increments_fourteen_to_fifteen() {
        let (c, high, control, _) = setup(4);
        let mut s = BitString::zeros(c.width());
        s.write_uint(&high, &14u32.into());
        s.set(control.0, true);
        let out = classical_run(&c, &s).unwrap();
        assert_eq!(out.read_uint(&high), 15u32.into());
        let mut expect = BitString::zeros(c.width());
        expect.write_uint(&high, &15u32.into());
        expect.set(control.0, true);
        assert_eq!(out, expect);
    }

    #[test]
    fn all_ones_wraps_to_zero() {
        let (c, high, control, _) = setup(5);
        let mut s = BitString::zeros(c.width());
        s.write_uint(&high, &31u32.into());
        s.set(control.0, true);
        let out = classical_run(&c, &s).unwrap();
        assert_eq!(out.read_uint(&high), 0u32.into());
    }

    #[test]
    fn exhaustive_small_registers() {
        for k in 1..=6 {
            let (c, high, control, scratch) = setup(k);
            for v in 0u32..(1 << k) {
                for ctrl in [false, true] {
                    let mut s = BitString::zeros(c.width());
                    s.write_uint(&high, &v.into());
                    s.set(control.0, ctrl);
                    let out = classical_run(&c, &s).unwrap();
                    let want = if ctrl { (v + 1) % (1 << k) } else { v };
                    assert_eq!(out.read_uint(&high), want.into(), "k={k} v={v} ctrl={ctrl}");
                    assert_eq!(out.read_uint(&scratch), 0u32.into());
                }
            }
        }
    }

    #[test]
    fn insufficient_scratch_is_reported() {
        let high: Vec<Qubit> = (0..4).map(Qubit).collect();
        let scratch: Vec<Qubit> = (5..8).map(Qubit).collect();
        let err = cla_ctrl_increment(&high, Qubit(4), &scratch).unwrap_err();
        assert_eq!(err, Error::InsufficientScratch { needed: cla_scratch_demand(4), available: 3 });
    }

    #[test]
    fn depth_is_logarithmic() {
        let d = |k: usize| {
            let (c, ..) = setup(k);
            depth_of(c.gates(), c.width())
        };
        let (d64, d128, d256) = (d(64), d(128), d(256));
        assert!(d128 - d64 <= 16 && d256 - d128 <= 16, "{d64} {d128} {d256}");
    }
}
