//! Checks a circuit against the semantics of a named target.
//!
//! Logical wires are resolved from roles: `input` qubits in declaration order
//! are the controls (or the register, least significant first), the single
//! `target` qubit is the target, and ancilla wires must come back unchanged.
//! Clean ancillas are only driven with `|0⟩`; dirty ancillas take every value
//! (dense) or random values (classical).

use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::angle::Angle;
use crate::circuit::{Circuit, QubitRole};
use crate::error::Error;
use crate::gate::{Mat2, Op, Qubit};
use crate::sim::{column, oracle_mcu_column, phase_ratio, require_classical, run_unchecked, BitString, EquivMode};

/// Widest circuit checked column by column.
pub const MAX_DENSE_VERIFY_QUBITS: usize = 20;

/// What a circuit is supposed to compute.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum TargetSpec {
    Mcx(usize),
    Mcu(usize, Op),
    Incr(usize),
}

impl TargetSpec {
    fn n(&self) -> usize {
        match self {
            TargetSpec::Mcx(n) | TargetSpec::Mcu(n, _) | TargetSpec::Incr(n) => *n,
        }
    }

    fn op(&self) -> Option<&Op> {
        match self {
            TargetSpec::Mcx(_) => Some(&Op::X),
            TargetSpec::Mcu(_, op) => Some(op),
            TargetSpec::Incr(_) => None,
        }
    }
}

impl FromStr for TargetSpec {
    type Err = Error;

    /// `mcx:<n>`, `mcu:<n>:<op>` or `incr:<n>`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut parts = s.splitn(3, ':');
        let kind = parts.next().unwrap_or_default();
        let n: usize = parts
            .next()
            .and_then(|p| p.parse().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Parse(format!("bad target `{s}`: expected a positive size")))?;
        match (kind, parts.next()) {
            ("mcx", None) => Ok(TargetSpec::Mcx(n)),
            ("incr", None) => Ok(TargetSpec::Incr(n)),
            ("mcu", Some(op)) => Ok(TargetSpec::Mcu(n, parse_op_spec(op)?)),
            _ => Err(Error::Parse(format!("bad target `{s}`: expected mcx:N, mcu:N:U or incr:N"))),
        }
    }
}

/// `x`, `h`, `phase:p/q` (phase `pπ/q`) or `matrix:` followed by eight reals,
/// the real and imaginary parts of the entries in row-major order.
pub fn parse_op_spec(s: &str) -> Result<Op, Error> {
    let bad = || Error::Parse(format!("bad operator `{s}`"));
    match s.split_once(':') {
        None if s == "x" => Ok(Op::X),
        None if s == "h" => Ok(Op::H),
        Some(("phase", frac)) => {
            let (p, q) = frac.split_once('/').ok_or_else(bad)?;
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q <= 0 {
                return Err(bad());
            }
            Ok(Op::Phase(Angle::pi_frac(p, q)))
        }
        Some(("matrix", vals)) => {
            let v: Vec<f64> =
                vals.split(',').map(|x| x.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
            if v.len() != 8 || v.iter().any(|x| !x.is_finite()) {
                return Err(bad());
            }
            let e = |k: usize| Complex64::new(v[2 * k], v[2 * k + 1]);
            let m: Mat2 = [[e(0), e(1)], [e(2), e(3)]];
            Op::from_matrix(&m)
        }
        _ => Err(bad()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    /// Dense up to 12 qubits, classical beyond when the circuit is X-type.
    Auto,
    Dense,
    Classical,
}

impl FromStr for CheckMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "auto" => Ok(CheckMode::Auto),
            "dense" => Ok(CheckMode::Dense),
            "classical" => Ok(CheckMode::Classical),
            _ => Err(Error::Parse(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mode: CheckMode,
    /// Dense comparison: exact, or up to one global phase.
    pub phase: EquivMode,
    pub tol: f64,
    /// Random inputs for classical checks, in addition to the structured ones.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: CheckMode::Auto, phase: EquivMode::Exact, tol: 1e-9, samples: 1000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Basis input, qubit 0 first.
    pub input: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub equivalent: bool,
    pub method: CheckMode,
    pub inputs_checked: usize,
    pub mismatch: Option<Mismatch>,
}

struct Layout {
    inputs: Vec<Qubit>,
    target: Option<Qubit>,
    clean: Vec<Qubit>,
    dirty: Vec<Qubit>,
}

fn layout(c: &Circuit, spec: &TargetSpec) -> Result<Layout, Error> {
    let inputs = c.qubits_with_role(QubitRole::Input);
    let targets = c.qubits_with_role(QubitRole::Target);
    if inputs.len() != spec.n() {
        return Err(Error::InvalidArgument(format!(
            "circuit has {} input qubits but the target needs {}",
            inputs.len(),
            spec.n()
        )));
    }
    let target = match (spec, targets.as_slice()) {
        (TargetSpec::Incr(_), []) => None,
        (TargetSpec::Incr(_), _) => {
            return Err(Error::InvalidArgument("an incrementor has no target qubit".into()));
        }
        (_, [t]) => Some(*t),
        (_, ts) => {
            return Err(Error::InvalidArgument(format!("expected one target qubit, found {}", ts.len())));
        }
    };
    Ok(Layout {
        inputs,
        target,
        clean: c.qubits_with_role(QubitRole::CleanAncilla),
        dirty: c.qubits_with_role(QubitRole::DirtyAncilla),
    })
}

pub fn verify(c: &Circuit, spec: &TargetSpec, opts: &VerifyOptions) -> Result<Verdict, Error> {
    let lay = layout(c, spec)?;
    let classical_ok = c.is_classical() && spec.op().is_none_or(|op| *op == Op::X);
    let mode = match opts.mode {
        CheckMode::Auto if c.width() <= crate::sim::MAX_UNITARY_QUBITS => CheckMode::Dense,
        CheckMode::Auto if classical_ok => CheckMode::Classical,
        CheckMode::Auto => CheckMode::Dense,
        m => m,
    };
    match mode {
        CheckMode::Classical => {
            require_classical(c)?;
            if !classical_ok {
                return Err(Error::InvalidArgument("target operator is not classical".into()));
            }
            Ok(verify_classical(c, spec, &lay, opts))
        }
        _ => verify_dense(c, spec, &lay, opts),
    }
}

fn index_bits(index: usize, width: usize) -> String {
    (0..width).map(|i| if index >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Expected output column for basis input `j`, as sparse (row, amplitude) pairs.
fn expected_column(spec: &TargetSpec, lay: &Layout, j: usize) -> Vec<(usize, Complex64)> {
    let data_mask = lay.inputs.iter().fold(0usize, |m, q| m | 1 << q.0);
    match spec {
        TargetSpec::Incr(n) => {
            let x = lay.inputs.iter().enumerate().fold(0usize, |v, (b, q)| v | (j >> q.0 & 1) << b);
            let y = (x + 1) & ((1usize << n) - 1);
            let out = lay.inputs.iter().enumerate().fold(j & !data_mask, |v, (b, q)| v | (y >> b & 1) << q.0);
            vec![(out, Complex64::new(1.0, 0.0))]
        }
        _ => {
            let op = spec.op().expect("controlled target");
            let t = lay.target.expect("target resolved");
            if j & data_mask != data_mask {
                return vec![(j, Complex64::new(1.0, 0.0))];
            }
            let tbit = 1usize << t.0;
            let col = oracle_mcu_column(0, op, usize::from(j & tbit != 0));
            col.into_iter().map(|(row, amp)| (if row == 1 { j | tbit } else { j & !tbit }, amp)).collect()
        }
    }
}

fn column_deviation(actual: &[Complex64], expected: &[(usize, Complex64)], lambda: Complex64) -> (f64, usize) {
    let mut worst = (0.0, 0);
    for (i, a) in actual.iter().enumerate() {
        let e = expected.iter().find(|(r, _)| *r == i).map_or(Complex64::new(0.0, 0.0), |(_, v)| lambda * v);
        let d = (a - e).norm();
        if d > worst.0 {
            worst = (d, i);
        }
    }
    worst
}

fn verify_dense(c: &Circuit, spec: &TargetSpec, lay: &Layout, opts: &VerifyOptions) -> Result<Verdict, Error> {
    let width = c.width();
    if width > MAX_DENSE_VERIFY_QUBITS {
        return Err(Error::TooManyQubits { qubits: width, limit: MAX_DENSE_VERIFY_QUBITS });
    }
    let clean_mask = lay.clean.iter().fold(0usize, |m, q| m | 1 << q.0);
    let free = ((1usize << width) - 1) & !clean_mask;
    // every subset of the non-clean wires
    let mut inputs = Vec::with_capacity(1 << (width - lay.clean.len()));
    let mut s = 0usize;
    loop {
        inputs.push(s);
        s = s.wrapping_sub(free) & free;
        if s == 0 {
            break;
        }
    }

    let lambda = match opts.phase {
        EquivMode::Exact => Complex64::new(1.0, 0.0),
        EquivMode::GlobalPhase => {
            let expected = expected_column(spec, lay, 0);
            let actual = column(c, 0)?;
            phase_ratio(expected.iter().map(|&(r, e)| (actual[r], e))).unwrap_or(Complex64::new(1.0, 0.0))
        }
    };

    let failure = inputs
        .par_iter()
        .map(|&j| -> Result<Option<Mismatch>, Error> {
            let actual = column(c, j)?;
            let expected = expected_column(spec, lay, j);
            let (dev, row) = column_deviation(&actual, &expected, lambda);
            Ok((dev > opts.tol).then(|| Mismatch {
                input: index_bits(j, width),
                detail: format!("output amplitude at {} deviates by {dev:.3e}", index_bits(row, width)),
            }))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    let mismatch = match failure {
        Some(r) => r?,
        None => None,
    };
    Ok(Verdict { equivalent: mismatch.is_none(), method: CheckMode::Dense, inputs_checked: inputs.len(), mismatch })
}

fn expected_classical(spec: &TargetSpec, lay: &Layout, input: &BitString) -> BitString {
    let mut out = input.clone();
    match spec {
        TargetSpec::Incr(n) => out.write_uint(&lay.inputs, &crate::sim::oracle_incr(*n, &input.read_uint(&lay.inputs))),
        _ => {
            if lay.inputs.iter().all(|q| input.get(q.0)) {
                out.flip(lay.target.expect("target resolved").0);
            }
        }
    }
    out
}

/// Structured inputs (all zeros, all ones, each single zero) followed by
/// `samples` random inputs. Clean ancillas stay zero.
fn classical_inputs(c: &Circuit, lay: &Layout, opts: &VerifyOptions) -> Vec<BitString> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let width = c.width();
    let mut random_fill = |s: &mut BitString, qs: &[Qubit]| {
        for q in qs {
            s.set(q.0, rng.gen());
        }
    };
    let mut patterns: Vec<Vec<bool>> = vec![vec![false; lay.inputs.len()], vec![true; lay.inputs.len()]];
    for i in 0..lay.inputs.len() {
        let mut p = vec![true; lay.inputs.len()];
        p[i] = false;
        patterns.push(p);
    }
    let mut out = Vec::with_capacity(patterns.len() + opts.samples);
    for p in patterns {
        let mut s = BitString::zeros(width);
        for (q, &b) in lay.inputs.iter().zip(&p) {
            s.set(q.0, b);
        }
        random_fill(&mut s, &lay.dirty);
        random_fill(&mut s, lay.target.as_slice());
        out.push(s);
    }
    for _ in 0..opts.samples {
        let mut s = BitString::zeros(width);
        random_fill(&mut s, &lay.inputs);
        random_fill(&mut s, &lay.dirty);
        random_fill(&mut s, lay.target.as_slice());
        out.push(s);
    }
    out
}

fn verify_classical(c: &Circuit, spec: &TargetSpec, lay: &Layout, opts: &VerifyOptions) -> Verdict {
    let inputs = classical_inputs(c, lay, opts);
    let mismatch = inputs.par_iter().find_map_first(|input| {
        let mut actual = input.clone();
        run_unchecked(c, &mut actual);
        let expected = expected_classical(spec, lay, input);
        (actual != expected)
            .then(|| Mismatch { input: input.to_string(), detail: format!("expected {expected}, got {actual}") })
    });
    Verdict { equivalent: mismatch.is_none(), method: CheckMode::Classical, inputs_checked: inputs.len(), mismatch }
}
