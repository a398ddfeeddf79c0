//! n-controlled X with no ancilla, depth O(log² n), size O(n).
//!
//! Restricted to `xₙ = 1`, a gadget of controlled H/T gates around two
//! borrowed-ancilla MCX blocks applies `iX` to the target when every control
//! is set. The stray factor `i` is then removed by a phase gradient on
//! `x₁..x_{n−1}` taken across a `+1`, which picks up a different phase only
//! at the all-ones value. The increment uses `xₙ` as its ancilla: after an X
//! it is clean exactly on the branch where the phases fire, and on the other
//! branch the increment and its inverse cancel.

use crate::angle::Angle;
use crate::circuit::{inverse_gates, Circuit, QubitRole};
use crate::error::Error;
use crate::gate::{Gate, Op, Qubit};
use crate::synth::{incrementor_gates, mcx_dirty_gates, rz_fanout, SplitPolicy};

/// Qubits: `x1..xn` then `t`; no ancilla wires.
pub fn mcx_no_ancilla(n: usize, policy: &SplitPolicy) -> Result<Circuit, Error> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("zero-ancilla Toffoli needs n ≥ 3, got {n}")));
    }
    policy.validate()?;
    let mut specs: Vec<(String, QubitRole)> = (1..=n).map(|i| (format!("x{i}"), QubitRole::Input)).collect();
    specs.push(("t".into(), QubitRole::Target));
    let mut c = Circuit::new(specs)?;

    let xs: Vec<Qubit> = (0..n).map(Qubit).collect();
    let (xn, borrowed, t) = (xs[n - 1], xs[n - 2], Qubit(n));
    let rest = &xs[..n - 1];

    // xₙ-controlled gadget: iX on t iff all controls are set
    let mut inner_controls = xs[..n - 2].to_vec();
    inner_controls.push(xn);
    let inner = mcx_dirty_gates(&inner_controls, borrowed, t, &Op::X, policy);
    let c_t = Gate::new(Op::t(), &[xn], t);
    let c_tdg = Gate::new(Op::tdg(), &[xn], t);
    let last = Gate::ccx(borrowed, xn, t);
    c.push(Gate::new(Op::H, &[xn], t))?;
    for _ in 0..2 {
        c.extend(inner.iter().cloned())?;
        c.extend([c_t.clone(), last.clone(), c_tdg.clone()])?;
    }
    c.push(Gate::new(Op::H, &[xn], t))?;

    // phase gradient across ±1 cancels the i on the all-ones subspace
    let bits = n - 1;
    let thetas: Vec<Angle> = (0..bits).map(|j| Angle::pi_over_pow2((n - j) as u32)).collect();
    let negated: Vec<Angle> = thetas.iter().map(|a| -a).collect();
    let flip = Gate::x(xn);
    let incr = incrementor_gates(rest, xn, policy)?;
    c.push(flip.clone())?;
    c.extend(incr.iter().cloned())?;
    c.push(flip.clone())?;
    c.extend(rz_fanout(&thetas, xn, rest)?)?;
    c.push(flip.clone())?;
    c.extend(inverse_gates(&incr))?;
    c.push(flip)?;
    c.extend(rz_fanout(&negated, xn, rest)?)?;
    c.push(Gate::phase(-&Angle::pi_over_pow2(n as u32), xn))?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{equiv, oracle_mcu, unitary_of, EquivMode};

    #[test]
    fn small_sizes_match_toffoli_exactly() {
        for n in 3..=6 {
            let c = mcx_no_ancilla(n, &SplitPolicy::default()).unwrap();
            let u = unitary_of(&c).unwrap();
            assert!(equiv(&u, &oracle_mcu(n, &Op::X), EquivMode::Exact, 1e-9).unwrap(), "n={n}");
        }
    }

    #[test]
    fn has_no_ancilla_wires() {
        let c = mcx_no_ancilla(9, &SplitPolicy::default()).unwrap();
        let r = c.report();
        assert_eq!((r.ancilla_clean, r.ancilla_dirty), (0, 0));
        assert_eq!(c.width(), 10);
    }

    #[test]
    fn rejects_two_controls() {
        assert!(mcx_no_ancilla(2, &SplitPolicy::default()).is_err());
    }
}
