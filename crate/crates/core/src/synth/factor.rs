//! Controlling a whole sub-circuit through one ancilla.

use crate::circuit::{Circuit, QubitRole};
use crate::error::Error;
use crate::gate::{Gate, Qubit};
use crate::sim::{equiv, unitary_of, EquivMode};

fn support(body: &Circuit) -> Vec<Qubit> {
    let mut qs: Vec<Qubit> = body.gates().iter().flat_map(|g| g.qubits().collect::<Vec<_>>()).collect();
    qs.sort();
    qs.dedup();
    qs
}

fn controlled_body(body: &Circuit, anc: Qubit) -> impl Iterator<Item = Gate> + '_ {
    body.gates().iter().map(move |g| g.controlled_by(anc))
}

/// `MCX(controls → anc)`, body controlled by `anc`, `MCX(controls → anc)`.
/// Equals the body controlled on `AND(controls)` when `anc` starts at `|0⟩`.
pub fn factor_control_clean(body: &Circuit, controls: &[Qubit], anc: Qubit) -> Result<Circuit, Error> {
    if anc.0 >= body.width() || body.role(anc) != QubitRole::CleanAncilla {
        return Err(Error::InvalidArgument(format!("{anc} is not a clean ancilla")));
    }
    let sup = support(body);
    if let Some(q) = controls.iter().chain([&anc]).find(|q| sup.contains(q)) {
        return Err(Error::OverlappingOperands(q.0));
    }
    let mut c = body.empty_like();
    let write = Gate::mcx(controls, anc);
    c.push(write.clone())?;
    c.extend(controlled_body(body, anc))?;
    c.push(write)?;
    Ok(c)
}

/// Body controlled by `anc`, `MCX(controls → anc)`, repeated twice.
/// Equals the body controlled on `AND(controls)` for either value of `anc`,
/// provided the body is an involution. The involution is checked densely on
/// circuits of at most 10 qubits.
pub fn double_apply_dirty(body: &Circuit, controls: &[Qubit], anc: Qubit) -> Result<Circuit, Error> {
    if anc.0 >= body.width() || body.role(anc) != QubitRole::DirtyAncilla {
        return Err(Error::InvalidArgument(format!("{anc} is not a dirty ancilla")));
    }
    if support(body).contains(&anc) {
        return Err(Error::OverlappingOperands(anc.0));
    }
    if body.width() <= 10 {
        let twice = body.compose(body)?;
        let id = body.empty_like();
        if !equiv(&unitary_of(&twice)?, &unitary_of(&id)?, EquivMode::Exact, 1e-10)? {
            return Err(Error::NotInvolution);
        }
    }
    let mut c = body.empty_like();
    let write = Gate::mcx(controls, anc);
    for _ in 0..2 {
        c.extend(controlled_body(body, anc))?;
        c.push(write.clone())?;
    }
    Ok(c)
}
