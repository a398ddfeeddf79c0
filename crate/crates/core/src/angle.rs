//! Exact and real-valued rotation angles.
//!
//! Rational angles are stored as a multiple of π in lowest terms so that phase
//! bookkeeping stays exact at any denominator size.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An angle, either `r·π` for an exact rational `r` or a finite real number of radians.
#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    Pi(BigRational),
    Real(f64),
}

impl Angle {
    pub fn zero() -> Self {
        Angle::Pi(BigRational::zero())
    }

    /// `p·π/q`. Panics if `q == 0`.
    pub fn pi_frac(p: i64, q: i64) -> Self {
        Angle::Pi(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `π/2^k`.
    pub fn pi_over_pow2(k: u32) -> Self {
        Angle::Pi(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    pub fn pi() -> Self {
        Angle::pi_frac(1, 1)
    }

    pub fn real(radians: f64) -> Result<Self, Error> {
        if radians.is_finite() {
            Ok(Angle::Real(radians))
        } else {
            Err(Error::NonFiniteAngle)
        }
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::Pi(r) => ratio_to_f64(r) * std::f64::consts::PI,
            Angle::Real(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::Pi(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Angle::Pi(r) => r.is_zero(),
            Angle::Real(x) => *x == 0.0,
        }
    }

    pub fn half(&self) -> Self {
        match self {
            Angle::Pi(r) => Angle::Pi(r / BigInt::from(2)),
            Angle::Real(x) => Angle::Real(x / 2.0),
        }
    }

    /// Multiplies by `2^k`.
    pub fn scale_pow2(&self, k: u32) -> Self {
        match self {
            Angle::Pi(r) => Angle::Pi(r * (BigInt::one() << k)),
            Angle::Real(x) => Angle::Real(x * 2f64.powi(k as i32)),
        }
    }

    /// Reduces into `[0, 2π)`.
    pub fn reduce(&self) -> Self {
        match self {
            Angle::Pi(r) => {
                let two = BigInt::from(2);
                let modulus = BigRational::from_integer(two.clone());
                let floor = (r / &two).floor();
                Angle::Pi(r - floor * modulus)
            }
            Angle::Real(x) => Angle::Real(x.rem_euclid(2.0 * std::f64::consts::PI)),
        }
    }

    /// Denominator `q` of `p·π/q` in lowest terms; `None` for real angles.
    pub fn denominator(&self) -> Option<BigInt> {
        match self {
            Angle::Pi(r) => Some(r.denom().clone()),
            Angle::Real(_) => None,
        }
    }

    /// The multiple of π as a `"p/q"` string, or the radian value for real angles.
    pub fn pi_fraction_string(&self) -> String {
        match self {
            Angle::Pi(r) => format!("{}/{}", r.numer(), r.denom()),
            Angle::Real(x) => format!("{x:?}"),
        }
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // Huge denominators: shift both sides down until they fit.
    let bits = r.denom().bits().max(r.numer().bits());
    let shift = bits.saturating_sub(1000);
    let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
    if d == 0.0 {
        0.0
    } else {
        n / d
    }
}

impl Add for &Angle {
    type Output = Angle;

    fn add(self, rhs: &Angle) -> Angle {
        match (self, rhs) {
            (Angle::Pi(a), Angle::Pi(b)) => Angle::Pi(a + b),
            (a, b) => Angle::Real(a.radians() + b.radians()),
        }
    }
}

impl Add for Angle {
    type Output = Angle;

    fn add(self, rhs: Angle) -> Angle {
        &self + &rhs
    }
}

impl Sub for &Angle {
    type Output = Angle;

    fn sub(self, rhs: &Angle) -> Angle {
        self + &(-rhs)
    }
}

impl Sub for Angle {
    type Output = Angle;

    fn sub(self, rhs: Angle) -> Angle {
        &self - &rhs
    }
}

impl Neg for &Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        match self {
            Angle::Pi(r) => Angle::Pi(-r),
            Angle::Real(x) => Angle::Real(-x),
        }
    }
}

impl Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        -&self
    }
}

impl Mul<i64> for &Angle {
    type Output = Angle;

    fn mul(self, k: i64) -> Angle {
        match self {
            Angle::Pi(r) => Angle::Pi(r * BigInt::from(k)),
            Angle::Real(x) => Angle::Real(x * k as f64),
        }
    }
}

/// Serialized as `pi*p/q` for rational angles and as a round-trip float literal otherwise.
impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Pi(r) => write!(f, "pi*{}/{}", r.numer(), r.denom()),
            Angle::Real(x) => write!(f, "{x:?}"),
        }
    }
}

impl serde::Serialize for Angle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("pi*") {
            let (p, q) = rest.split_once('/').ok_or_else(|| Error::Parse(format!("malformed angle `{s}`")))?;
            let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
            if !q.is_positive() {
                return Err(Error::Parse(format!("non-positive denominator in `{s}`")));
            }
            if !p.gcd(&q).is_one() {
                return Err(Error::Parse(format!("angle `{s}` is not in lowest terms")));
            }
            Ok(Angle::Pi(BigRational::new(p, q)))
        } else {
            let x: f64 = s.parse().map_err(|_| Error::Parse(format!("malformed angle `{s}`")))?;
            Angle::real(x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_kept_in_lowest_terms() {
        let a = Angle::pi_frac(2, 8);
        assert_eq!(a, Angle::pi_frac(1, 4));
        assert_eq!(a.to_string(), "pi*1/4");
        assert_eq!(Angle::zero().to_string(), "pi*0/1");
    }

    #[test]
    fn reduce_wraps_into_two_pi() {
        assert_eq!(Angle::pi_frac(5, 1).reduce(), Angle::pi());
        assert_eq!(Angle::pi_frac(-1, 4).reduce(), Angle::pi_frac(7, 4));
        assert_eq!(Angle::pi_frac(4, 1).reduce(), Angle::zero());
    }

    #[test]
    fn mixing_real_poisons_exactness() {
        let a = Angle::pi_frac(1, 2) + Angle::Real(0.25);
        assert!(!a.is_exact());
        assert!((a.radians() - (std::f64::consts::FRAC_PI_2 + 0.25)).abs() < 1e-15);
    }

    #[test]
    fn parse_round_trip() {
        for a in [Angle::pi_frac(-3, 16), Angle::zero(), Angle::Real(0.1), Angle::Real(-1e-7)] {
            let s = a.to_string();
            assert_eq!(s.parse::<Angle>().unwrap(), a);
        }
        assert!("pi*2/4".parse::<Angle>().is_err());
        assert!("pi*1/0".parse::<Angle>().is_err());
        assert!("inf".parse::<Angle>().is_err());
    }

    #[test]
    fn huge_denominators_convert_to_float() {
        let a = Angle::pi_over_pow2(3000);
        assert_eq!(a.radians(), 0.0);
        assert_eq!(a.denominator().unwrap(), BigInt::one() << 3000u32);
        assert!((Angle::pi_over_pow2(10).radians() - std::f64::consts::PI / 1024.0).abs() < 1e-18);
    }
}
