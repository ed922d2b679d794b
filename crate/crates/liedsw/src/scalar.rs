//! Exact coefficient arithmetic: arbitrary-precision rationals and dense
//! univariate polynomials in the formal parameter `λ`.
//!
//! Rationals are kept in reduced canonical form at all times so that
//! equality of series coefficients is plain structural equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LieError;

/// An exact rational number, always reduced, denominator positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Result<Self, LieError> {
        if self.is_zero() {
            return Err(LieError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, LieError> {
        if rhs.is_zero() {
            return Err(LieError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// n! as an exact rational.
    pub fn factorial(n: usize) -> Self {
        let mut acc = BigInt::one();
        for i in 2..=n {
            acc *= BigInt::from(i);
        }
        Rational(BigRational::from_integer(acc))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = LieError;

    /// Parses `"p"` or `"p/q"`.
    fn from_str(s: &str) -> Result<Self, LieError> {
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num_s.trim())
            .map_err(|_| LieError::Parse(format!("bad rational {s:?}")))?;
        let den = BigInt::from_str(den_s.trim())
            .map_err(|_| LieError::Parse(format!("bad rational {s:?}")))?;
        if den.is_zero() {
            return Err(LieError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
    };
}

rat_binop!(Add, add, +);
rat_binop!(Sub, sub, -);
rat_binop!(Mul, mul, *);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

/// A dense univariate polynomial in `λ` with rational coefficients.
///
/// Index `i` holds the coefficient of `λ^i`; the top stored coefficient is
/// nonzero, the zero polynomial is the empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    coeffs: Vec<Rational>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        LambdaPoly { coeffs: vec![c] }.normalized()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The monomial `λ`.
    pub fn lambda() -> Self {
        LambdaPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        LambdaPoly { coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact `∫_0^1 p(λ) dλ = Σ_i c_i/(i+1)`.
    pub fn integrate01(&self) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += &(c / &Rational::from_int(i as i64 + 1));
        }
        acc
    }

    /// Substitutes `λ → 1 − λ` by binomial re-expansion.
    pub fn subst_one_minus_lambda(&self) -> Self {
        // (1-λ)^i expanded with alternating binomial coefficients
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut binom = Rational::one();
            for j in 0..=i {
                let term = if j % 2 == 0 {
                    c * &binom
                } else {
                    -&(c * &binom)
                };
                out[j] += &term;
                // binom(i, j+1) = binom(i, j) * (i-j)/(j+1)
                binom = binom
                    * Rational::from_int((i - j) as i64)
                    / Rational::from_int(j as i64 + 1);
            }
        }
        LambdaPoly { coeffs: out }.normalized()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "L")?;
                    } else {
                        write!(f, "L^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        LambdaPoly { coeffs: out }.normalized()
    }
}

impl Sub<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        LambdaPoly { coeffs: out }.normalized()
    }
}

impl Mul<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        LambdaPoly { coeffs: out }.normalized()
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rational_arith() {
        assert_eq!(r(1, 2) + r(1, 3), r(5, 6));
        assert_eq!(r(1, 2) - r(1, 2), Rational::zero());
        assert_eq!(r(-1, 720) * Rational::from_int(720), Rational::from_int(-1));
        assert!(Rational::one().checked_div(&Rational::zero()).is_err());
    }

    #[test]
    fn rational_display_roundtrip() {
        for s in ["5/6", "-3", "0", "7/2"] {
            let q: Rational = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
        assert_eq!("2/4".parse::<Rational>().unwrap(), r(1, 2));
    }

    #[test]
    fn lpoly_arith() {
        let lam = LambdaPoly::lambda();
        let lam_m1 = &lam - &LambdaPoly::one();
        // λ(λ-1) = λ² - λ
        assert_eq!(
            &lam * &lam_m1,
            LambdaPoly::from_coeffs(vec![r(0, 1), r(-1, 1), r(1, 1)])
        );
        // (λ-1) + (1-λ) = 0
        assert!((&lam_m1 + &(-&lam_m1)).is_zero());
        // (λ-1/2)² = λ² - λ + 1/4
        let half = LambdaPoly::constant(r(1, 2));
        let p = &lam - &half;
        assert_eq!(
            &p * &p,
            LambdaPoly::from_coeffs(vec![r(1, 4), r(-1, 1), r(1, 1)])
        );
    }

    #[test]
    fn integrate01() {
        let lam = LambdaPoly::lambda();
        let half = LambdaPoly::constant(r(1, 2));
        assert_eq!((&lam - &half).integrate01(), Rational::zero());
        let lam_m1 = &lam - &LambdaPoly::one();
        assert_eq!((&lam * &lam_m1).integrate01(), r(-1, 6));
        assert_eq!(LambdaPoly::one().integrate01(), Rational::one());
    }

    #[test]
    fn subst_one_minus_lambda() {
        // p(λ) = λ² - 3λ + 1; p(1-λ) = (1-λ)² - 3(1-λ) + 1 = λ² + λ - 1
        let p = LambdaPoly::from_coeffs(vec![r(1, 1), r(-3, 1), r(1, 1)]);
        assert_eq!(
            p.subst_one_minus_lambda(),
            LambdaPoly::from_coeffs(vec![r(-1, 1), r(1, 1), r(1, 1)])
        );
        // involution
        assert_eq!(p.subst_one_minus_lambda().subst_one_minus_lambda(), p);
    }
}
