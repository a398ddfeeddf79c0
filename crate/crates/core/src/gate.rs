//! Gate alphabet: single-qubit operators with an arbitrary number of controls.

use std::fmt;

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::angle::Angle;
use crate::error::Error;

/// Index of a qubit within a circuit's qubit list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Qubit(pub usize);

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q[{}]", self.0)
    }
}

pub type Mat2 = [[Complex64; 2]; 2];

/// `e^{iγ}·U3(θ, φ, λ)` with
/// `U3 = [[cos θ/2, −e^{iλ} sin θ/2], [e^{iφ} sin θ/2, e^{i(φ+λ)} cos θ/2]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Euler {
    pub theta: Angle,
    pub phi: Angle,
    pub lambda: Angle,
    pub gamma: Angle,
}

impl Euler {
    pub fn new(theta: Angle, phi: Angle, lambda: Angle, gamma: Angle) -> Self {
        Euler { theta, phi, lambda, gamma }
    }

    /// `e^{iα}·Rz(β)·Ry(γ)·Rz(δ)`.
    pub fn zyz(alpha: Angle, beta: Angle, gamma: Angle, delta: Angle) -> Self {
        // Rz(β)Ry(γ)Rz(δ) = e^{−i(β+δ)/2}·U3(γ, β, δ)
        let global = &alpha - &(&beta + &delta).half();
        Euler::new(gamma, beta, delta, global)
    }

    /// Decomposes a unitary matrix. Angles come out as real radians.
    pub fn from_matrix(m: &Mat2) -> Result<Self, Error> {
        let dev = unitarity_deviation(m);
        if dev > 1e-12 {
            return Err(Error::NotUnitary(dev));
        }
        let (c, s) = (m[0][0].norm(), m[1][0].norm());
        let theta = 2.0 * s.atan2(c);
        let (gamma, phi, lambda);
        if s < 1e-14 {
            gamma = m[0][0].arg();
            phi = 0.0;
            lambda = m[1][1].arg() - gamma;
        } else if c < 1e-14 {
            lambda = 0.0;
            gamma = (-m[0][1]).arg();
            phi = m[1][0].arg() - gamma;
        } else {
            gamma = m[0][0].arg();
            phi = m[1][0].arg() - gamma;
            lambda = (-m[0][1]).arg() - gamma;
        }
        Ok(Euler::new(Angle::Real(theta), Angle::Real(phi), Angle::Real(lambda), Angle::Real(gamma)))
    }

    pub fn matrix(&self) -> Mat2 {
        let (t, p, l, g) = (self.theta.radians(), self.phi.radians(), self.lambda.radians(), self.gamma.radians());
        let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
        let e = |a: f64| Complex64::from_polar(1.0, a);
        [[e(g) * c, -e(g + l) * s], [e(g + p) * s, e(g + p + l) * c]]
    }

    pub fn inverse(&self) -> Self {
        Euler::new(-&self.theta, -&self.lambda, -&self.phi, -&self.gamma)
    }

    /// Phase of the determinant, `φ + λ + 2γ`.
    pub fn det_phase(&self) -> Angle {
        &(&self.phi + &self.lambda) + &(&self.gamma * 2)
    }
}

/// The single-qubit operator a gate applies to its target.
#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    X,
    H,
    /// `diag(1, e^{iθ})`.
    Phase(Angle),
    U(Euler),
}

impl Op {
    pub fn t() -> Op {
        Op::Phase(Angle::pi_frac(1, 4))
    }

    pub fn tdg() -> Op {
        Op::Phase(Angle::pi_frac(-1, 4))
    }

    /// Builds a general unitary operator from a matrix, checking unitarity.
    pub fn from_matrix(m: &Mat2) -> Result<Op, Error> {
        Euler::from_matrix(m).map(Op::U)
    }

    pub fn matrix(&self) -> Mat2 {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        match self {
            Op::X => [[o, l], [l, o]],
            Op::H => {
                let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                [[r, r], [r, -r]]
            }
            Op::Phase(a) => [[l, o], [o, Complex64::from_polar(1.0, a.radians())]],
            Op::U(e) => e.matrix(),
        }
    }

    pub fn inverse(&self) -> Op {
        match self {
            Op::X => Op::X,
            Op::H => Op::H,
            Op::Phase(a) => Op::Phase(-a),
            Op::U(e) => Op::U(e.inverse()),
        }
    }

    /// A square root `V` with `V·V` equal to this operator.
    pub fn sqrt(&self) -> Op {
        match self {
            // e^{iπ/4}·Rx(π/2)
            Op::X => Op::U(Euler::new(
                Angle::pi_frac(1, 2),
                Angle::pi_frac(-1, 2),
                Angle::pi_frac(1, 2),
                Angle::pi_frac(1, 4),
            )),
            Op::Phase(a) => Op::Phase(a.half()),
            Op::U(e) if e.theta.is_zero() => {
                Op::U(Euler::new(Angle::zero(), e.phi.half(), e.lambda.half(), e.gamma.half()))
            }
            _ => {
                let m = mat_sqrt(&self.matrix());
                Op::from_matrix(&m).expect("square root of a unitary is unitary")
            }
        }
    }

    /// Phase of `det` of the 2×2 operator.
    pub fn det_phase(&self) -> Angle {
        match self {
            Op::X | Op::H => Angle::pi(),
            Op::Phase(a) => a.clone(),
            Op::U(e) => e.det_phase(),
        }
    }

    pub fn is_involution(&self, tol: f64) -> bool {
        let m = self.matrix();
        let sq = mat_mul(&m, &m);
        max_dev_from_identity(&sq) <= tol
    }

    pub fn name(&self) -> &'static str {
        match self {
            Op::X => "x",
            Op::H => "h",
            Op::Phase(_) => "p",
            Op::U(_) => "u",
        }
    }
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

fn max_dev_from_identity(m: &Mat2) -> f64 {
    m.iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (v - if i == j { 1.0 } else { 0.0 }).norm()))
        .fold(0.0, f64::max)
}

pub fn unitarity_deviation(m: &Mat2) -> f64 {
    let adj = [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]];
    max_dev_from_identity(&mat_mul(&adj, m))
}

/// Principal square root of a 2×2 unitary: `(M + s·I)/sqrt(tr M + 2s)` with `s² = det M`.
fn mat_sqrt(m: &Mat2) -> Mat2 {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let tr = m[0][0] + m[1][1];
    let s0 = det.sqrt();
    let s = if (tr + 2.0 * s0).norm() >= (tr - 2.0 * s0).norm() { s0 } else { -s0 };
    let t = (tr + 2.0 * s).sqrt();
    [[(m[0][0] + s) / t, m[0][1] / t], [m[1][0] / t, (m[1][1] + s) / t]]
}

/// A single-qubit operator applied to `target` when every control is `|1⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub op: Op,
    pub controls: SmallVec<[Qubit; 4]>,
    pub target: Qubit,
}

impl Gate {
    pub fn new(op: Op, controls: &[Qubit], target: Qubit) -> Self {
        Gate { op, controls: SmallVec::from_slice(controls), target }
    }

    pub fn x(t: Qubit) -> Self {
        Gate::new(Op::X, &[], t)
    }

    pub fn h(t: Qubit) -> Self {
        Gate::new(Op::H, &[], t)
    }

    pub fn phase(a: Angle, t: Qubit) -> Self {
        Gate::new(Op::Phase(a), &[], t)
    }

    pub fn cx(c: Qubit, t: Qubit) -> Self {
        Gate::new(Op::X, &[c], t)
    }

    pub fn ccx(a: Qubit, b: Qubit, t: Qubit) -> Self {
        Gate::new(Op::X, &[a, b], t)
    }

    pub fn mcx(controls: &[Qubit], t: Qubit) -> Self {
        Gate::new(Op::X, controls, t)
    }

    pub fn inverse(&self) -> Self {
        Gate { op: self.op.inverse(), controls: self.controls.clone(), target: self.target }
    }

    /// Adds one more control wire.
    pub fn controlled_by(&self, c: Qubit) -> Self {
        let mut g = self.clone();
        g.controls.push(c);
        g
    }

    pub fn qubits(&self) -> impl Iterator<Item = Qubit> + '_ {
        self.controls.iter().copied().chain(std::iter::once(self.target))
    }

    pub fn is_classical(&self) -> bool {
        self.op == Op::X
    }

    /// Kind label used for gate counts: `x`, `h`, `p`, `u`, `cx`, or `c{k}{op}`.
    pub fn kind(&self) -> String {
        match (self.controls.len(), &self.op) {
            (0, op) => op.name().to_string(),
            (1, Op::X) => "cx".to_string(),
            (k, op) => format!("c{k}{}", op.name()),
        }
    }

    /// Checks operand distinctness and range.
    pub fn validate(&self, width: usize) -> Result<(), Error> {
        let mut seen: SmallVec<[usize; 8]> = SmallVec::new();
        for q in self.qubits() {
            if q.0 >= width {
                return Err(Error::QubitOutOfRange { index: q.0, width });
            }
            if seen.contains(&q.0) {
                return Err(Error::OverlappingOperands(q.0));
            }
            seen.push(q.0);
        }
        if let Op::U(e) = &self.op {
            let dev = unitarity_deviation(&e.matrix());
            if dev > 1e-12 {
                return Err(Error::NotUnitary(dev));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).norm() <= tol))
    }

    #[test]
    fn sqrt_squares_back() {
        let ops = [
            Op::X,
            Op::H,
            Op::t(),
            Op::Phase(Angle::Real(0.7)),
            Op::U(Euler::new(Angle::Real(0.3), Angle::Real(-1.1), Angle::Real(2.0), Angle::Real(0.4))),
            Op::U(Euler::new(Angle::zero(), Angle::pi_frac(1, 3), Angle::zero(), Angle::pi_frac(1, 5))),
        ];
        for op in ops {
            let v = op.sqrt().matrix();
            assert!(close(&mat_mul(&v, &v), &op.matrix(), 1e-12), "{op:?}");
        }
    }

    #[test]
    fn euler_round_trips_matrices() {
        let h = Euler::new(Angle::pi_frac(1, 2), Angle::zero(), Angle::pi(), Angle::zero());
        assert!(close(&h.matrix(), &Op::H.matrix(), 1e-15));
        for op in [Op::X, Op::H, Op::tdg(), Op::X.sqrt()] {
            let e = Euler::from_matrix(&op.matrix()).unwrap();
            assert!(close(&e.matrix(), &op.matrix(), 1e-12), "{op:?}");
        }
    }

    #[test]
    fn zyz_matches_rotation_product() {
        let (a, b, c, d) = (0.2, -0.7, 1.3, 0.5);
        let rz = |t: f64| {
            [
                [Complex64::from_polar(1.0, -t / 2.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, t / 2.0)],
            ]
        };
        let ry = |t: f64| {
            let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
            [[Complex64::new(c, 0.0), Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), Complex64::new(c, 0.0)]]
        };
        let mut expect = mat_mul(&mat_mul(&rz(b), &ry(c)), &rz(d));
        for row in expect.iter_mut() {
            for v in row.iter_mut() {
                *v *= Complex64::from_polar(1.0, a);
            }
        }
        let e = Euler::zyz(Angle::Real(a), Angle::Real(b), Angle::Real(c), Angle::Real(d));
        assert!(close(&e.matrix(), &expect, 1e-14));
    }

    #[test]
    fn det_phase_matches_matrix() {
        let e = Euler::new(Angle::Real(0.3), Angle::Real(0.2), Angle::Real(-0.9), Angle::Real(1.2));
        let m = e.matrix();
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let diff = (det.arg() - e.det_phase().radians()).rem_euclid(2.0 * std::f64::consts::PI);
        assert!(diff < 1e-12 || (2.0 * std::f64::consts::PI - diff) < 1e-12);
    }

    #[test]
    fn validate_rejects_overlap_and_range() {
        assert_eq!(Gate::cx(Qubit(0), Qubit(0)).validate(2), Err(Error::OverlappingOperands(0)));
        assert!(matches!(Gate::x(Qubit(3)).validate(2), Err(Error::QubitOutOfRange { .. })));
        assert_eq!(Gate::mcx(&[Qubit(0), Qubit(1), Qubit(2)], Qubit(3)).kind(), "c3x");
    }

    #[test]
    fn non_unitary_matrix_is_rejected() {
        let m = [
            [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ];
        assert!(matches!(Op::from_matrix(&m), Err(Error::NotUnitary(_))));
    }
}
