use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::ScalarError;

/// An element of `Q(q)` in canonical form.
///
/// Canonical form: `den` has shift zero, a nonzero constant term and a positive
/// leading coefficient; every power of `q` lives in `num.shift`; `num` and `den`
/// share no common factor in `Z[q]` (integer content included). Two values are
/// equal iff their canonical forms are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn q() -> Self {
        Self::from_laurent(LaurentPoly::q())
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_i64(c))
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        RatFunc {
            num,
            den: LaurentPoly::one(),
        }
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        Self::from_laurent(LaurentPoly::monomial(BigInt::from(c), e))
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `q + q^-1`.
    pub fn q_plus() -> Self {
        Self::from_laurent(LaurentPoly::from_i64_coeffs(-1, &[1, 0, 1]))
    }

    /// `q - q^-1`.
    pub fn q_minus() -> Self {
        Self::from_laurent(LaurentPoly::from_i64_coeffs(-1, &[-1, 0, 1]))
    }

    /// Canonical fraction equal to `num / den`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn ratio(num: LaurentPoly, den: LaurentPoly) -> Self {
        Self::new(num, den).expect("zero denominator")
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let num = num.mul_q_pow(-den.shift());
        let mut den = den.unshifted();
        let mut num = num;
        if den.is_monomial() {
            // den is a nonzero integer constant
            let d = den.leading_coeff();
            let g = num.content().gcd(&d);
            let mut g = g;
            if d.is_negative() {
                g = -g;
            }
            return RatFunc {
                num: num.div_scalar_exact(&g),
                den: LaurentPoly::constant(d / g),
            };
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        if den.leading_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in `Z[q, q^-1]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        RatFunc {
            num: base.num.pow(e.unsigned_abs()),
            den: base.den.pow(e.unsigned_abs()),
        }
    }

    pub fn mul_q_pow(&self, e: i32) -> Self {
        RatFunc {
            num: self.num.mul_q_pow(e),
            den: self.den.clone(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self * &RatFunc::from_i64(c)
    }

    /// Exact value at `q = p`.
    pub fn eval(&self, p: &BigRational) -> Result<BigRational, ScalarError> {
        if p.is_zero() {
            return Err(ScalarError::Pole);
        }
        let d = self.den.eval(p);
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        Ok(self.num.eval(p) / d)
    }

    pub fn eval_i64(&self, p: i64) -> Result<BigRational, ScalarError> {
        self.eval(&BigRational::from_integer(BigInt::from(p)))
    }

    fn needs_parens(p: &LaurentPoly) -> bool {
        p.term_count() > 1
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::from_i64(c)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_laurent(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::normalize(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_laurent(&self.num * &rhs.num);
        }
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero in Q(q)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if Self::needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if Self::needs_parens(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl RatFunc {
    /// Formats the value as a coefficient in front of a basis element:
    /// parenthesized unless it is a single term.
    pub fn coeff_string(&self) -> String {
        if self.den.is_one() && self.num.term_count() == 1 {
            self.num.to_string()
        } else {
            format!("({self})")
        }
    }
}

/// JSON form `{"num": "...", "den": "..."}` using the text syntax.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RatFuncJson {
    pub num: String,
    pub den: String,
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncJson {
            num: self.num.to_string(),
            den: self.den.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = RatFuncJson::deserialize(d)?;
        let num: RatFunc = j.num.parse().map_err(serde::de::Error::custom)?;
        let den: RatFunc = j.den.parse().map_err(serde::de::Error::custom)?;
        num.checked_div(&den).map_err(serde::de::Error::custom)
    }
}

/// Collects a sum of `RatFunc`s.
impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(shift: i32, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64_coeffs(shift, c)
    }

    #[test]
    fn normalize_examples() {
        // (q^2 - q^-2)/(q - q^-1) = q + q^-1
        let r = RatFunc::new(lp(-2, &[-1, 0, 0, 0, 1]), lp(-1, &[-1, 0, 1])).unwrap();
        assert_eq!(r, RatFunc::q_plus());
        assert!(r.is_laurent());
        // 0/q^3 = 0
        assert_eq!(RatFunc::new(LaurentPoly::zero(), lp(3, &[1])).unwrap(), RatFunc::zero());
        // (2q^2 - 2)/(4q) = (q^2 - 1)/(2q)
        let r = RatFunc::new(lp(0, &[-2, 0, 2]), lp(1, &[4])).unwrap();
        assert_eq!(r.numer(), &lp(-1, &[-1, 0, 1]));
        assert_eq!(r.denom(), &lp(0, &[2]));
        assert_eq!(
            r,
            RatFunc::new(lp(0, &[-1, 0, 1]), lp(1, &[2])).unwrap()
        );
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(ScalarError::DivisionByZero)
        );
        assert!(RatFunc::one().checked_div(&RatFunc::zero()).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let prod = RatFunc::q_minus() * RatFunc::q_plus();
        assert_eq!(prod, RatFunc::from_laurent(lp(-2, &[-1, 0, 0, 0, 1])));
        let sum = RatFunc::q() + RatFunc::q_pow(-1);
        assert_eq!(sum, RatFunc::q_plus());
        assert_eq!(sum.to_string(), "q^-1 + q");
        assert_eq!(RatFunc::one() / RatFunc::q(), RatFunc::q_pow(-1));
    }

    #[test]
    fn eval_examples() {
        let half = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(RatFunc::q_plus().eval_i64(2).unwrap(), half(5, 2));
        let inv = RatFunc::one() / RatFunc::q_minus();
        assert_eq!(inv.eval_i64(1), Err(ScalarError::Pole));
        assert_eq!(RatFunc::q_pow(2).eval_i64(-3).unwrap(), half(9, 1));
        assert_eq!(RatFunc::q().eval_i64(0), Err(ScalarError::Pole));
    }

    #[test]
    fn display_fraction() {
        let r = RatFunc::one() / RatFunc::q_minus();
        assert_eq!(r.to_string(), "q/(-1 + q^2)");
        assert_eq!(r.to_string().parse::<RatFunc>().unwrap(), r);
    }

    #[test]
    fn json_roundtrip() {
        let r = RatFunc::q_plus() / RatFunc::q_minus();
        let s = serde_json::to_string(&r).unwrap();
        let back: RatFunc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
