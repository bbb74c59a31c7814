use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// An angle stored as an exact rational multiple of π.
///
/// Values are reduced to lowest terms and normalized into `[0, 2π)`, so two
/// angles are equal exactly when they denote the same direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactAngle {
    num: i64,
    den: u64,
}

impl ExactAngle {
    pub const ZERO: ExactAngle = ExactAngle { num: 0, den: 1 };
    pub const HALF_TURN: ExactAngle = ExactAngle { num: 1, den: 1 };
    pub const RIGHT: ExactAngle = ExactAngle { num: 1, den: 2 };

    /// The angle `(num / den)·π`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput(
                "angle denominator must be nonzero".into(),
            ));
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let den = den as u64;
        let period = 2 * den as i64;
        let num = num.rem_euclid(period);
        let g = (num as u64).gcd(&den).max(1);
        Ok(ExactAngle {
            num: num / g as i64,
            den: den / g,
        })
    }

    /// `π / den`, the most common angle in the constructions.
    pub fn pi_over(den: i64) -> Result<Self> {
        Self::new(1, den)
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn radians(&self) -> f64 {
        self.num as f64 * PI / self.den as f64
    }

    pub fn sin(&self) -> f64 {
        self.radians().sin()
    }

    pub fn cos(&self) -> f64 {
        self.radians().cos()
    }

    pub fn tan(&self) -> f64 {
        self.radians().tan()
    }

    pub fn cot(&self) -> f64 {
        let r = self.radians();
        r.cos() / r.sin()
    }

    /// `π − self`.
    pub fn supplement(&self) -> Self {
        Self::new(self.den as i64 - self.num, self.den as i64).expect("nonzero denominator")
    }

    pub fn scale(&self, num: i64, den: i64) -> Result<Self> {
        Self::new(self.num * num, self.den as i64 * den)
    }

    pub fn add(&self, other: &ExactAngle) -> Self {
        let den = self.den.lcm(&other.den);
        let a = self.num * (den / self.den) as i64;
        let b = other.num * (den / other.den) as i64;
        Self::new(a + b, den as i64).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.num, self.den as i64).expect("nonzero denominator")
    }

    /// Strictly inside `(0, π)`, the admissible range for crease angles.
    pub fn is_open_half_turn(&self) -> bool {
        self.num > 0 && (self.num as u64) < self.den
    }

    /// Best rational approximation of `radians / π` with denominator at most
    /// `max_den`, accepted only if it reproduces the input within `tol`.
    pub fn from_radians(radians: f64, max_den: u64, tol: f64) -> Option<Self> {
        let x = radians / PI;
        if !x.is_finite() {
            return None;
        }
        let floor = x.floor();
        let frac = x - floor;
        // Continued-fraction convergents of the fractional part.
        let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
        let mut rest = frac;
        let mut best = None;
        for _ in 0..64 {
            let a = rest.floor();
            let (p2, q2) = (a as i64 * p1 + p0, a as i64 * q1 + q0);
            if q2 as u64 > max_den || q2 <= 0 {
                break;
            }
            let cand = p2 as f64 / q2 as f64;
            if (cand - frac).abs() * PI <= tol {
                best = Some((p2, q2));
                break;
            }
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            let r = rest - a;
            if r.abs() < 1e-300 {
                break;
            }
            rest = 1.0 / r;
        }
        let (p, q) = best?;
        Self::new(p + floor as i64 * q, q).ok()
    }
}

impl fmt::Display for ExactAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (n, 1) => write!(f, "{n}π"),
            (1, d) => write!(f, "π/{d}"),
            (n, d) => write!(f, "{n}π/{d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes() {
        let a = ExactAngle::new(6, 14).unwrap();
        assert_eq!((a.numerator(), a.denominator()), (3, 7));
        let b = ExactAngle::new(-1, 7).unwrap();
        assert_eq!((b.numerator(), b.denominator()), (13, 7));
        let c = ExactAngle::new(15, 7).unwrap();
        assert_eq!(c, ExactAngle::new(1, 7).unwrap());
        assert_eq!(ExactAngle::new(4, 2).unwrap(), ExactAngle::ZERO);
        assert!(ExactAngle::new(1, 0).is_err());
        assert_eq!(
            ExactAngle::new(1, -2).unwrap(),
            ExactAngle::new(3, 2).unwrap()
        );
    }

    #[test]
    fn evaluation_matches_float() {
        for den in 1..40 {
            for num in 0..2 * den {
                let a = ExactAngle::new(num, den).unwrap();
                let want = num as f64 / den as f64 * PI;
                let got = a.radians();
                assert!((got - want).abs() <= f64::EPSILON * want.max(1.0) * 2.0);
            }
        }
    }

    #[test]
    fn supplement_and_sum() {
        let a = ExactAngle::new(2, 7).unwrap();
        assert_eq!(a.supplement(), ExactAngle::new(5, 7).unwrap());
        assert_eq!(a.add(&a.supplement()), ExactAngle::HALF_TURN);
        assert_eq!(a.add(&a.neg()), ExactAngle::ZERO);
        assert!(a.is_open_half_turn());
        assert!(!ExactAngle::HALF_TURN.is_open_half_turn());
        assert!(!ExactAngle::ZERO.is_open_half_turn());
    }

    #[test]
    fn recovers_rational_angles() {
        for (n, d) in [(3, 7), (1, 14), (9, 20), (1, 2), (11, 24), (5, 11)] {
            let a = ExactAngle::new(n, d).unwrap();
            let back = ExactAngle::from_radians(a.radians() + 1e-14, 1000, 1e-10).unwrap();
            assert_eq!(a, back);
        }
        assert!(ExactAngle::from_radians(1.0, 50, 1e-12).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(ExactAngle::pi_over(7).unwrap().to_string(), "π/7");
        assert_eq!(ExactAngle::new(3, 14).unwrap().to_string(), "3π/14");
        assert_eq!(ExactAngle::HALF_TURN.to_string(), "π");
    }
}
