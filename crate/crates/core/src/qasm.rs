//! Canonical OpenQASM 3 subset: export and a strict importer for the same text.
//!
//! ```text
//! OPENQASM 3.0;
//! // level mcx
//! qubit[3] q;
//! // name q[0] = x1
//! // role q[0] = input
//! ...
//! ctrl(2) @ x q[0], q[1], q[2];
//! p(pi*1/4) q[0];
//! ```
//!
//! Each qubit gets a `name` and a `role` comment. Gates are `x`, `h`,
//! `p(angle)`, `u(θ, φ, λ)` (with an optional fourth global-phase argument),
//! `cx`, and `ctrl(k) @ <gate>` for anything else that is controlled.
//! Rational angles are written `pi*p/q`.

use std::fmt::Write as _;

use crate::angle::Angle;
use crate::circuit::{Circuit, Level, QubitRole};
use crate::error::Error;
use crate::gate::{Euler, Gate, Op, Qubit};

const HEADER: &str = "OPENQASM 3.0;";

fn op_text(op: &Op) -> String {
    match op {
        Op::X => "x".into(),
        Op::H => "h".into(),
        Op::Phase(a) => format!("p({a})"),
        Op::U(e) if e.gamma.is_zero() => format!("u({}, {}, {})", e.theta, e.phi, e.lambda),
        Op::U(e) => format!("u({}, {}, {}, {})", e.theta, e.phi, e.lambda, e.gamma),
    }
}

fn gate_text(g: &Gate) -> String {
    let operands: Vec<String> = g.controls.iter().chain([&g.target]).map(|q| q.to_string()).collect();
    let operands = operands.join(", ");
    match (g.controls.len(), &g.op) {
        (0, op) => format!("{} {operands};", op_text(op)),
        (1, Op::X) => format!("cx {operands};"),
        (k, op) => format!("ctrl({k}) @ {} {operands};", op_text(op)),
    }
}

pub fn to_qasm(c: &Circuit) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{HEADER}");
    let _ = writeln!(s, "// level {}", c.level().as_str());
    let _ = writeln!(s, "qubit[{}] q;", c.width());
    for (i, spec) in c.qubits().iter().enumerate() {
        let _ = writeln!(s, "// name q[{i}] = {}", spec.name);
        let _ = writeln!(s, "// role q[{i}] = {}", spec.role.as_str());
    }
    for g in c.gates() {
        let _ = writeln!(s, "{}", gate_text(g));
    }
    s
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        self.inner.by_ref().map(|(i, l)| (i + 1, l.trim())).find(|(_, l)| !l.is_empty())
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), Error> {
        self.next_line().ok_or_else(|| Error::Parse(format!("unexpected end of input, expected {what}")))
    }
}

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn parse_qubit(line: usize, s: &str, width: usize) -> Result<Qubit, Error> {
    let idx = s
        .strip_prefix("q[")
        .and_then(|r| r.strip_suffix(']'))
        .and_then(|i| i.parse::<usize>().ok())
        .ok_or_else(|| err(line, format!("bad operand `{s}`")))?;
    if idx >= width {
        return Err(err(line, format!("qubit {idx} out of range")));
    }
    Ok(Qubit(idx))
}

/// `// <key> q[i] = <value>` for the expected `i`.
fn parse_annotation<'a>(line: usize, text: &'a str, key: &str, i: usize) -> Result<&'a str, Error> {
    let prefix = format!("// {key} q[{i}] = ");
    text.strip_prefix(prefix.as_str())
        .filter(|v| !v.is_empty())
        .ok_or_else(|| err(line, format!("expected `{prefix}<value>`")))
}

fn parse_op(line: usize, text: &str) -> Result<Op, Error> {
    let (name, args) = match text.split_once('(') {
        None => (text, Vec::new()),
        Some((name, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| err(line, "unclosed argument list"))?;
            let args = inner.split(", ").map(|a| a.parse::<Angle>()).collect::<Result<Vec<_>, _>>()?;
            (name, args)
        }
    };
    let mut args = args.into_iter();
    let op = match (name, args.len()) {
        ("x", 0) => Op::X,
        ("h", 0) => Op::H,
        ("p", 1) => Op::Phase(args.next().expect("one argument")),
        ("u", 3 | 4) => {
            let (t, p, l) = (args.next().unwrap(), args.next().unwrap(), args.next().unwrap());
            Op::U(Euler::new(t, p, l, args.next().unwrap_or_else(Angle::zero)))
        }
        _ => return Err(err(line, format!("unsupported gate `{text}`"))),
    };
    Ok(op)
}

fn parse_gate(line: usize, text: &str, width: usize) -> Result<Gate, Error> {
    let body = text.strip_suffix(';').ok_or_else(|| err(line, "missing `;`"))?;
    let (ctrl, body) = match body.strip_prefix("ctrl(") {
        Some(rest) => {
            let (k, rest) = rest.split_once(") @ ").ok_or_else(|| err(line, "malformed ctrl modifier"))?;
            let k: usize = k.parse().map_err(|_| err(line, "bad control count"))?;
            (Some(k), rest)
        }
        None => (None, body),
    };
    // the operator ends at the first space outside parentheses
    let mut depth = 0i32;
    let split = body
        .char_indices()
        .find(|&(_, ch)| {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            ch == ' ' && depth == 0
        })
        .map(|(i, _)| i)
        .ok_or_else(|| err(line, "missing operands"))?;
    let (op_text, operands) = (&body[..split], &body[split + 1..]);
    let qubits = operands.split(", ").map(|q| parse_qubit(line, q, width)).collect::<Result<Vec<_>, _>>()?;
    let (op, k) = match (op_text, ctrl) {
        ("cx", None) => (Op::X, 1),
        ("cx", Some(_)) => return Err(err(line, "`cx` cannot take a ctrl modifier")),
        (t, None) => (parse_op(line, t)?, 0),
        (t, Some(k)) => {
            let op = parse_op(line, t)?;
            if k == 0 || (k == 1 && op == Op::X) {
                return Err(err(line, "non-canonical ctrl modifier"));
            }
            (op, k)
        }
    };
    if qubits.len() != k + 1 {
        return Err(err(line, format!("expected {} operands, got {}", k + 1, qubits.len())));
    }
    Ok(Gate::new(op, &qubits[..k], qubits[k]))
}

pub fn from_qasm(text: &str) -> Result<Circuit, Error> {
    let mut lines = Lines { inner: text.lines().enumerate() };
    let (n, l) = lines.expect("header")?;
    if l != HEADER {
        return Err(err(n, format!("expected `{HEADER}`")));
    }
    let (n, l) = lines.expect("level")?;
    let level = match l {
        "// level mcx" => Level::Mcx,
        "// level basis" => Level::Basis,
        _ => return Err(err(n, "expected `// level mcx` or `// level basis`")),
    };
    let (n, l) = lines.expect("qubit declaration")?;
    let width: usize = l
        .strip_prefix("qubit[")
        .and_then(|r| r.strip_suffix("] q;"))
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| err(n, "expected `qubit[<m>] q;`"))?;
    let mut specs = Vec::with_capacity(width);
    for i in 0..width {
        let (n, l) = lines.expect("qubit name")?;
        let name = parse_annotation(n, l, "name", i)?.to_string();
        let (n, l) = lines.expect("qubit role")?;
        let role: QubitRole = parse_annotation(n, l, "role", i)?.parse().map_err(|e| err(n, e))?;
        specs.push((name, role));
    }
    let mut c = Circuit::new(specs)?.with_level(level)?;
    while let Some((n, l)) = lines.next_line() {
        let g = parse_gate(n, l, width)?;
        c.push(g).map_err(|e| err(n, e))?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lower::lower_to_basis;
    use crate::synth::{mcu_clean, SplitPolicy};

    #[test]
    fn small_circuit_text() {
        let mut c = Circuit::new([("a", QubitRole::Input), ("t", QubitRole::Target)]).unwrap();
        c.extend([Gate::cx(Qubit(0), Qubit(1)), Gate::phase(Angle::pi_frac(-1, 4), Qubit(0))]).unwrap();
        let text = to_qasm(&c);
        assert_eq!(
            text,
            "OPENQASM 3.0;\n// level mcx\nqubit[2] q;\n// name q[0] = a\n// role q[0] = input\n\
             // name q[1] = t\n// role q[1] = target\ncx q[0], q[1];\np(pi*-1/4) q[0];\n"
        );
        assert_eq!(from_qasm(&text).unwrap(), c);
    }

    #[test]
    fn controlled_unitary_round_trips() {
        let op = Op::Phase(Angle::pi_frac(1, 3));
        let c = lower_to_basis(&mcu_clean(4, &op, &SplitPolicy::default()).unwrap()).unwrap();
        let text = to_qasm(&c);
        assert_eq!(to_qasm(&from_qasm(&text).unwrap()), text);
        let c = mcu_clean(7, &Op::H, &SplitPolicy::default()).unwrap();
        let text = to_qasm(&c);
        assert_eq!(to_qasm(&from_qasm(&text).unwrap()), text);
    }

    #[test]
    fn rejects_malformed_input() {
        let good = "OPENQASM 3.0;\n// level basis\nqubit[2] q;\n// name q[0] = a\n// role q[0] = input\n\
                    // name q[1] = b\n// role q[1] = input\n";
        assert!(from_qasm(good).is_ok());
        for bad in [
            "ctrl(2) @ x q[0], q[1];",
            "cx q[0], q[2];",
            "cx q[0], q[0];",
            "x q[0]",
            "rz(0.5) q[0];",
            "p(pi*2/4) q[0];",
            "ctrl(1) @ x q[0], q[1];",
        ] {
            assert!(from_qasm(&format!("{good}{bad}\n")).is_err(), "{bad}");
        }
        assert!(from_qasm("OPENQASM 2.0;\n").is_err());
    }
}
