//! Circuit container, metrics and inversion.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::gate::{Gate, Op, Qubit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QubitRole {
    Input,
    Target,
    CleanAncilla,
    DirtyAncilla,
}

impl QubitRole {
    pub fn as_str(self) -> &'static str {
        match self {
            QubitRole::Input => "input",
            QubitRole::Target => "target",
            QubitRole::CleanAncilla => "clean_ancilla",
            QubitRole::DirtyAncilla => "dirty_ancilla",
        }
    }
}

impl fmt::Display for QubitRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QubitRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "input" => Ok(QubitRole::Input),
            "target" => Ok(QubitRole::Target),
            "clean_ancilla" => Ok(QubitRole::CleanAncilla),
            "dirty_ancilla" => Ok(QubitRole::DirtyAncilla),
            other => Err(Error::Parse(format!("unknown qubit role `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitSpec {
    pub name: String,
    pub role: QubitRole,
}

/// Abstraction level. `Basis` admits only CX and single-qubit gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Mcx,
    Basis,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::Mcx => "mcx",
            Level::Basis => "basis",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    qubits: Vec<QubitSpec>,
    gates: Vec<Gate>,
    level: Level,
}

impl Circuit {
    /// An empty mcx-level circuit over the given qubits.
    pub fn new<S: Into<String>>(specs: impl IntoIterator<Item = (S, QubitRole)>) -> Result<Self, Error> {
        let qubits: Vec<QubitSpec> =
            specs.into_iter().map(|(name, role)| QubitSpec { name: name.into(), role }).collect();
        let mut seen = HashSet::new();
        for q in &qubits {
            if !seen.insert(q.name.as_str()) {
                return Err(Error::DuplicateQubit(q.name.clone()));
            }
        }
        Ok(Circuit { qubits, gates: Vec::new(), level: Level::Mcx })
    }

    pub fn with_level(mut self, level: Level) -> Result<Self, Error> {
        if level == Level::Basis {
            for g in &self.gates {
                check_basis(g)?;
            }
        }
        self.level = level;
        Ok(self)
    }

    pub fn width(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self) -> &[QubitSpec] {
        &self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn role(&self, q: Qubit) -> QubitRole {
        self.qubits[q.0].role
    }

    /// Qubits carrying `role`, in declaration order.
    pub fn qubits_with_role(&self, role: QubitRole) -> Vec<Qubit> {
        self.qubits.iter().enumerate().filter(|(_, s)| s.role == role).map(|(i, _)| Qubit(i)).collect()
    }

    pub fn push(&mut self, g: Gate) -> Result<(), Error> {
        g.validate(self.width())?;
        if self.level == Level::Basis {
            check_basis(&g)?;
        }
        self.gates.push(g);
        Ok(())
    }

    pub fn append(mut self, g: Gate) -> Result<Self, Error> {
        self.push(g)?;
        Ok(self)
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<(), Error> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Same qubits and level, no gates.
    pub fn empty_like(&self) -> Self {
        Circuit { qubits: self.qubits.clone(), gates: Vec::new(), level: self.level }
    }

    /// Appends the gates of `other`, which must declare the same number of qubits.
    pub fn compose(&self, other: &Circuit) -> Result<Self, Error> {
        if other.width() != self.width() {
            return Err(Error::DimensionMismatch(self.width(), other.width()));
        }
        let mut c = self.clone();
        if other.level == Level::Mcx {
            c.level = Level::Mcx;
        }
        c.gates.extend(other.gates.iter().cloned());
        Ok(c)
    }

    pub fn inverse(&self) -> Self {
        Circuit { qubits: self.qubits.clone(), gates: inverse_gates(&self.gates), level: self.level }
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn depth(&self) -> usize {
        depth_of(&self.gates, self.width())
    }

    pub fn is_classical(&self) -> bool {
        self.gates.iter().all(Gate::is_classical)
    }

    pub fn report(&self) -> ResourceReport {
        let mut counts = BTreeMap::new();
        for g in &self.gates {
            *counts.entry(g.kind()).or_insert(0) += 1;
        }
        let count_role = |r| self.qubits.iter().filter(|q| q.role == r).count();
        ResourceReport {
            depth: self.depth(),
            size: self.size(),
            counts,
            ancilla_clean: count_role(QubitRole::CleanAncilla),
            ancilla_dirty: count_role(QubitRole::DirtyAncilla),
        }
    }

    /// Replaces the gate list wholesale; used by passes that rebuild a circuit.
    pub(crate) fn from_parts(qubits: Vec<QubitSpec>, gates: Vec<Gate>, level: Level) -> Self {
        Circuit { qubits, gates, level }
    }
}

fn check_basis(g: &Gate) -> Result<(), Error> {
    match (g.controls.len(), &g.op) {
        (0, _) | (1, Op::X) => Ok(()),
        _ => Err(Error::NotBasisGate(g.kind())),
    }
}

/// Reverses the sequence and inverts every gate.
pub fn inverse_gates(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(Gate::inverse).collect()
}

/// ASAP layering where two gates conflict iff they share a qubit.
pub fn depth_of(gates: &[Gate], width: usize) -> usize {
    let mut frontier = vec![0usize; width];
    let mut depth = 0;
    for g in gates {
        let layer = 1 + g.qubits().map(|q| frontier[q.0]).max().unwrap_or(0);
        for q in g.qubits() {
            frontier[q.0] = layer;
        }
        depth = depth.max(layer);
    }
    depth
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub depth: usize,
    pub size: usize,
    pub counts: BTreeMap<String, usize>,
    pub ancilla_clean: usize,
    pub ancilla_dirty: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;

    fn basis(n: usize) -> Circuit {
        Circuit::new((0..n).map(|i| (format!("q{i}"), QubitRole::Input))).unwrap().with_level(Level::Basis).unwrap()
    }

    #[test]
    fn new_circuit_is_empty() {
        let c =
            Circuit::new([("x1", QubitRole::Input), ("A", QubitRole::CleanAncilla), ("T", QubitRole::Target)]).unwrap();
        let r = c.report();
        assert_eq!((r.depth, r.size, r.ancilla_clean, r.ancilla_dirty), (0, 0, 1, 0));
        assert!(r.counts.is_empty());
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let err = Circuit::new([("A", QubitRole::Input), ("A", QubitRole::Target)]).unwrap_err();
        assert_eq!(err, Error::DuplicateQubit("A".into()));
    }

    #[test]
    fn append_enforces_level_and_operands() {
        let c = basis(2).append(Gate::cx(Qubit(0), Qubit(1))).unwrap();
        assert_eq!(c.size(), 1);
        let five = basis(5);
        let err = five.append(Gate::mcx(&[Qubit(0), Qubit(1), Qubit(2), Qubit(3)], Qubit(4))).unwrap_err();
        assert!(matches!(err, Error::NotBasisGate(_)));
        let err = basis(2).append(Gate::cx(Qubit(1), Qubit(1))).unwrap_err();
        assert_eq!(err, Error::OverlappingOperands(1));
        let err = basis(2).append(Gate::x(Qubit(2))).unwrap_err();
        assert!(matches!(err, Error::QubitOutOfRange { index: 2, width: 2 }));
    }

    #[test]
    fn inverse_reverses_and_negates() {
        let x = basis(1).append(Gate::x(Qubit(0))).unwrap();
        assert_eq!(x.inverse().gates(), x.gates());
        let mut c = basis(2);
        c.push(Gate::phase(Angle::pi_frac(1, 4), Qubit(0))).unwrap();
        c.push(Gate::cx(Qubit(0), Qubit(1))).unwrap();
        let inv = c.inverse();
        assert_eq!(inv.gates(), &[Gate::cx(Qubit(0), Qubit(1)), Gate::phase(Angle::pi_frac(-1, 4), Qubit(0))]);
    }

    #[test]
    fn depth_counts_shared_qubits() {
        let mut c = basis(4);
        c.extend([Gate::cx(Qubit(0), Qubit(1)), Gate::cx(Qubit(2), Qubit(3))]).unwrap();
        assert_eq!(c.depth(), 1);
        let mut c = basis(3);
        c.extend([Gate::cx(Qubit(0), Qubit(1)), Gate::cx(Qubit(1), Qubit(2))]).unwrap();
        assert_eq!(c.depth(), 2);
    }

    #[test]
    fn report_counts_kinds() {
        let c = basis(1).append(Gate::x(Qubit(0))).unwrap();
        let r = c.report();
        assert_eq!((r.size, r.depth), (1, 1));
        assert_eq!(r.counts.get("x"), Some(&1));
    }
}
