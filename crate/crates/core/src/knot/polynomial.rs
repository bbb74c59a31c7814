use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial in `t` with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coefficient · t^exponent`.
    pub fn monomial(coefficient: impl Into<BigInt>, exponent: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coefficient.into());
        p
    }

    /// Polynomial with `coefficients[k]` as the coefficient of `t^k`.
    pub fn from_coefficients<C: Into<BigInt> + Clone>(coefficients: &[C]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coefficients.iter().enumerate() {
            p.add_term(k as i64, c.clone().into());
        }
        p
    }

    fn add_term(&mut self, exponent: i64, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Dense coefficients from the lowest to the highest exponent.
    pub fn dense_coefficients(&self) -> Vec<BigInt> {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|e| self.coefficient(e)).collect(),
            _ => Vec::new(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Value at an integer point; negative exponents require `x = ±1`.
    pub fn evaluate(&self, x: i64) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (&e, c) in &self.terms {
            let power = if e >= 0 {
                BigInt::from(x).pow(e as u32)
            } else if x == 1 || x == -1 {
                BigInt::from(x).pow(e.unsigned_abs() as u32)
            } else {
                return Err(Error::InvalidInput(format!("cannot evaluate t^{e} at {x}")));
            };
            total += c * power;
        }
        Ok(total)
    }

    /// Canonical representative up to units `±t^k`: lowest exponent 0 and a
    /// positive constant term.
    pub fn normalized(&self) -> Self {
        let Some(lo) = self.min_exponent() else {
            return Self::zero();
        };
        let shifted = self.shift(-lo);
        if shifted.coefficient(0).is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    /// Whether the coefficient sequence reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let c = self.dense_coefficients();
        c.iter().eq(c.iter().rev())
    }

    /// Exact quotient, failing when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (Some(dlo), Some(dhi)) = (divisor.min_exponent(), divisor.max_exponent()) else {
            return Err(Error::InvalidInput(
                "division by the zero polynomial".into(),
            ));
        };
        let lead = divisor.coefficient(dhi);
        let mut rest = self.clone();
        let mut quotient = Self::zero();
        while let Some(hi) = rest.max_exponent() {
            let lo = rest.min_exponent().expect("nonzero");
            if hi - lo < dhi - dlo {
                return Err(Error::InvalidInput(
                    "polynomial division leaves a remainder".into(),
                ));
            }
            let c = rest.coefficient(hi);
            if !(&c % &lead).is_zero() {
                return Err(Error::InvalidInput(
                    "polynomial division leaves a remainder".into(),
                ));
            }
            let term = Self::monomial(&c / &lead, hi - dhi);
            rest = &rest - &(&term * divisor);
            quotient = &quotient + &term;
        }
        Ok(quotient)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coefficient = !magnitude.is_one() || e == 0;
            if show_coefficient {
                write!(f, "{magnitude}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Determinant of a square matrix of polynomials by fraction-free
/// (Bareiss) elimination; every intermediate division is exact.
pub fn determinant(matrix: &[Vec<LaurentPolynomial>]) -> Result<LaurentPolynomial> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput(
            "determinant needs a square matrix".into(),
        ));
    }
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let mut a = matrix.to_vec();
    let mut negate = false;
    let mut previous = LaurentPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(LaurentPolynomial::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = cross.exact_div(&previous)?;
            }
        }
        previous = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}
