//! CNOT fan-outs and the shared-control phase fan-out.

use crate::angle::Angle;
use crate::error::Error;
use crate::gate::{Gate, Qubit};
use crate::synth::check_distinct;

/// Copies `src` onto `|0⟩` targets with a doubling CX tree of depth `⌈log₂(k+1)⌉`.
pub fn fanout_clean(src: Qubit, targets: &[Qubit]) -> Vec<Gate> {
    let mut holders = vec![src];
    let mut next = 0;
    let mut gates = Vec::with_capacity(targets.len());
    while next < targets.len() {
        let mut fresh = Vec::new();
        for &h in &holders {
            if next == targets.len() {
                break;
            }
            gates.push(Gate::cx(h, targets[next]));
            fresh.push(targets[next]);
            next += 1;
        }
        holders.extend(fresh);
    }
    gates
}

/// In-place XOR reduction: leaves the parity of `wires` on `wires[0]`.
fn parity_reduce(wires: &[Qubit]) -> Vec<Gate> {
    let mut gates = Vec::new();
    let mut stride = 1;
    while stride < wires.len() {
        for i in (0..wires.len()).step_by(2 * stride) {
            if i + stride < wires.len() {
                gates.push(Gate::cx(wires[i + stride], wires[i]));
            }
        }
        stride *= 2;
    }
    gates
}

/// `dᵢ ^= a` for every target regardless of its initial value; `a` unchanged.
///
/// Built as the GF(2) transpose of the parity circuit `a ^= ⨁dᵢ` (reduce,
/// copy the root into `a`, unreduce): reverse the gate order and swap each
/// CX's control and target. Depth `2⌈log₂ k⌉ + 1`.
pub fn fanout_dirty(src: Qubit, targets: &[Qubit]) -> Vec<Gate> {
    if targets.is_empty() {
        return Vec::new();
    }
    let reduce = parity_reduce(targets);
    let mut parity = reduce.clone();
    parity.push(Gate::cx(targets[0], src));
    parity.extend(reduce.into_iter().rev());
    parity.into_iter().rev().map(|g| Gate::cx(g.target, g.controls[0])).collect()
}

/// Phase `θᵢ` on each target controlled by one shared qubit, with no ancilla:
/// `P(θᵢ/2)`, fan-out, `P(−θᵢ/2)`, fan-out, then `P(Σθᵢ/2)` on the control.
pub fn rz_fanout(thetas: &[Angle], control: Qubit, targets: &[Qubit]) -> Result<Vec<Gate>, Error> {
    if thetas.is_empty() || thetas.len() != targets.len() {
        return Err(Error::InvalidArgument(format!("{} angles for {} targets", thetas.len(), targets.len())));
    }
    check_distinct(targets.iter().copied().chain([control]))?;
    let mut gates = Vec::with_capacity(4 * targets.len() + 1);
    gates.extend(thetas.iter().zip(targets).map(|(th, &q)| Gate::phase(th.half(), q)));
    gates.extend(fanout_dirty(control, targets));
    gates.extend(thetas.iter().zip(targets).map(|(th, &q)| Gate::phase(-&th.half(), q)));
    gates.extend(fanout_dirty(control, targets));
    let total = thetas.iter().fold(Angle::zero(), |acc, th| &acc + th);
    gates.push(Gate::phase(total.half(), control));
    Ok(gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{depth_of, Circuit, QubitRole};
    use crate::sim::{classical_run, BitString};

    fn circ(n: usize, gates: Vec<Gate>) -> Circuit {
        let mut c = Circuit::new((0..n).map(|i| (format!("q{i}"), QubitRole::Input))).unwrap();
        c.extend(gates).unwrap();
        c
    }

    #[test]
    fn clean_fanout_of_seven_has_depth_three() {
        let targets: Vec<Qubit> = (1..8).map(Qubit).collect();
        let gates = fanout_clean(Qubit(0), &targets);
        assert_eq!(depth_of(&gates, 8), 3);
        let c = circ(8, gates);
        let out = classical_run(&c, &BitString::from_u64(1, 8)).unwrap();
        assert_eq!(out, BitString::ones(8));
        let out = classical_run(&c, &BitString::zeros(8)).unwrap();
        assert_eq!(out, BitString::zeros(8));
    }

    #[test]
    fn dirty_fanout_complements_targets() {
        // a = qubit 0 = 1, d = 0101 -> 1010
        let targets: Vec<Qubit> = (1..5).map(Qubit).collect();
        let c = circ(5, fanout_dirty(Qubit(0), &targets));
        let input = BitString::from_bits(&[true, false, true, false, true]);
        let out = classical_run(&c, &input).unwrap();
        assert_eq!(out.to_bits(), vec![true, true, false, true, false]);
        let input = BitString::from_bits(&[false, false, true, false, true]);
        assert_eq!(classical_run(&c, &input).unwrap(), input);
    }

    #[test]
    fn rz_fanout_argument_checks() {
        let err = rz_fanout(&[Angle::pi_frac(1, 4)], Qubit(0), &[Qubit(1), Qubit(2)]).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
        let err = rz_fanout(&[Angle::pi_frac(1, 4)], Qubit(0), &[Qubit(0)]).unwrap_err();
        assert_eq!(err, Error::OverlappingOperands(0));
    }
}
