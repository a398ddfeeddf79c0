//! Direct semantic definitions, independent of any circuit.

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;

use crate::gate::Op;

/// `(x, t) → (x, t ⊕ AND(x))`.
pub fn oracle_mcx(controls: &[bool], target: bool) -> bool {
    target ^ controls.iter().all(|&b| b)
}

/// `(x + 1) mod 2^n`.
pub fn oracle_incr(n: usize, x: &BigUint) -> BigUint {
    let modulus = BigUint::from(1u32) << n;
    (x + 1u32) % modulus
}

/// Dense `C^n U` on `n + 1` qubits; controls are qubits `0..n`, the target is qubit `n`.
pub fn oracle_mcu(n: usize, op: &Op) -> DMatrix<Complex64> {
    let dim = 1usize << (n + 1);
    let u = op.matrix();
    let cmask = (1usize << n) - 1;
    let tbit = 1usize << n;
    DMatrix::from_fn(dim, dim, |i, j| {
        if i & cmask != j & cmask {
            return Complex64::new(0.0, 0.0);
        }
        if j & cmask == cmask {
            u[usize::from(i & tbit != 0)][usize::from(j & tbit != 0)]
        } else if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Sparse column `j` of `oracle_mcu`, as (row, amplitude) pairs.
pub fn oracle_mcu_column(n: usize, op: &Op, j: usize) -> Vec<(usize, Complex64)> {
    let cmask = (1usize << n) - 1;
    let tbit = 1usize << n;
    if j & cmask != cmask {
        return vec![(j, Complex64::new(1.0, 0.0))];
    }
    let u = op.matrix();
    let col = usize::from(j & tbit != 0);
    vec![(j & !tbit, u[0][col]), (j | tbit, u[1][col])]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;

    #[test]
    fn mcx_flips_only_on_all_ones() {
        assert!(!oracle_mcx(&[true, true, true], true));
        assert!(oracle_mcx(&[true, false, true], true));
    }

    #[test]
    fn incr_wraps() {
        assert_eq!(oracle_incr(4, &BigUint::from(9u32)), BigUint::from(10u32));
        assert_eq!(oracle_incr(4, &BigUint::from(15u32)), BigUint::from(0u32));
    }

    #[test]
    fn controlled_phase_is_diagonal() {
        let m = oracle_mcu(2, &Op::Phase(Angle::pi_frac(1, 2)));
        for i in 0..8 {
            for j in 0..8 {
                let expect = match (i == j, i) {
                    (true, 7) => Complex64::new(0.0, 1.0),
                    (true, _) => Complex64::new(1.0, 0.0),
                    _ => Complex64::new(0.0, 0.0),
                };
                assert!((m[(i, j)] - expect).norm() < 1e-15);
            }
        }
        for j in 0..8 {
            for (i, a) in oracle_mcu_column(2, &Op::H, j) {
                assert!((oracle_mcu(2, &Op::H)[(i, j)] - a).norm() < 1e-15);
            }
        }
    }
}
