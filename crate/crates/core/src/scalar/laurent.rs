use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial `q^shift * sum(coeffs[i] * q^i)` with integer coefficients.
///
/// The coefficient vector is empty exactly for the zero polynomial; otherwise
/// its first and last entries are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    shift: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            shift: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    /// `c * q^exp`.
    pub fn monomial(c: BigInt, exp: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            shift: exp,
            coeffs: vec![c],
        }
    }

    /// Builds `q^shift * sum(coeffs[i] q^i)`, trimming zero ends.
    pub fn new(shift: i32, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly {
            shift: shift + lead_zeros as i32,
            coeffs,
        }
    }

    pub fn from_i64_coeffs(shift: i32, coeffs: &[i64]) -> Self {
        Self::new(shift, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.shift == 0 && self.coeffs.len() == 1)
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Lowest exponent with a nonzero coefficient. Zero for the zero polynomial.
    pub fn low_exp(&self) -> i32 {
        self.shift
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_exp(&self) -> i32 {
        self.shift + self.coeffs.len().saturating_sub(1) as i32
    }

    /// Width `high_exp - low_exp`; the degree of the polynomial after clearing `q`-powers.
    pub fn width(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn trailing_coeff(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        let idx = exp - self.shift;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Iterates `(exponent, coefficient)` over nonzero terms in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.shift + i as i32, c))
    }

    pub fn mul_q_pow(&self, e: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            shift: self.shift + e,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Same coefficients with shift reset to zero (divides out `q^low_exp`).
    pub fn unshifted(&self) -> Self {
        self.mul_q_pow(-self.shift)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            shift: self.shift,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Exact division of every coefficient by `c`. Panics if some coefficient is not divisible.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        LaurentPoly {
            shift: self.shift,
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    let (d, r) = x.div_rem(c);
                    assert!(r.is_zero(), "inexact scalar division");
                    d
                })
                .collect(),
        }
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and the power of `q`; leading coefficient made positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.unshifted().div_scalar_exact(&c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division in `Z[q, q^-1]`. Returns `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if other.coeffs.len() == 1 {
            let c = &other.coeffs[0];
            let mut out = Vec::with_capacity(self.coeffs.len());
            for x in &self.coeffs {
                let (d, r) = x.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.push(d);
            }
            return Some(LaurentPoly {
                shift: self.shift - other.shift,
                coeffs: out,
            });
        }
        let n = self.coeffs.len();
        let m = other.coeffs.len();
        if n < m {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let lead = other.coeffs.last().unwrap();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let top = &rem[k + m - 1];
            if top.is_zero() {
                continue;
            }
            let (d, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, oc) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &d * oc;
            }
            quot[k] = d;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.shift - other.shift, quot))
    }

    /// Pseudo-remainder of `self` by `other` as ordinary polynomials (shifts ignored).
    fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r: Vec<BigInt> = a.to_vec();
        let m = b.len();
        let lead = b.last().unwrap();
        while r.len() >= m {
            let top = r.last().unwrap().clone();
            if top.is_zero() {
                r.pop();
                continue;
            }
            let k = r.len() - m;
            for x in r.iter_mut() {
                *x *= lead;
            }
            for (j, bc) in b.iter().enumerate() {
                r[k + j] -= &top * bc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        r
    }

    /// Greatest common divisor in `Z[q, q^-1]`, normalized to shift zero with
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.coeffs.len() == 1 {
            return Self::constant(content);
        }
        let mut a = a.coeffs;
        let mut b = b.coeffs;
        loop {
            let r = Self::pseudo_rem(&a, &b);
            if r.is_empty() {
                break;
            }
            let rp = Self::new(0, r).primitive_part();
            if rp.coeffs.len() == 1 {
                return Self::constant(content);
            }
            a = b;
            b = rp.coeffs;
        }
        Self::new(0, b).primitive_part().scale(&content)
    }

    pub fn derivative(&self) -> Self {
        let coeffs: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(self.shift + i as i32))
            .collect();
        Self::new(self.shift - 1, coeffs)
    }

    pub fn eval(&self, p: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + BigRational::from_integer(c.clone());
        }
        acc * pow_rational(p, self.shift)
    }

    pub fn eval_i64(&self, p: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(p)))
    }

    /// Compare by width, then by term count; used as a pivot-size heuristic.
    pub fn size_cmp(&self, other: &Self) -> Ordering {
        self.width()
            .cmp(&other.width())
            .then(self.term_count().cmp(&other.term_count()))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let lo = self.shift.min(other.shift);
        let hi = self.high_exp().max(other.high_exp());
        let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.shift - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut out[(other.shift - lo) as usize + i];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::new(lo, out)
    }
}

pub(crate) fn pow_rational(p: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { p.recip() } else { p.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(rhs, true)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            shift: self.shift,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]).mul_q_pow(rhs.shift);
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]).mul_q_pow(self.shift);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.shift + rhs.shift, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: &BigInt, e: i32, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    match (mag.is_one(), e) {
        (_, 0) => write!(f, "{mag}"),
        (true, 1) => write!(f, "q"),
        (true, _) => write!(f, "q^{e}"),
        (false, 1) => write!(f, "{mag}*q"),
        (false, _) => write!(f, "{mag}*q^{e}"),
    }
}

/// Ascending powers, `q^-1` written explicitly: `1 - q^2`, `-q^-1 + q^3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            fmt_monomial(f, c, e, first)?;
            first = false;
        }
        Ok(())
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(shift: i32, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64_coeffs(shift, c)
    }

    #[test]
    fn trims_and_shifts() {
        let p = lp(-2, &[0, 0, 3, 0, 0]);
        assert_eq!(p.shift(), 0);
        assert_eq!(p.coeffs(), &[BigInt::from(3)]);
        assert!(lp(4, &[0, 0]).is_zero());
    }

    #[test]
    fn exact_division() {
        // q^2 - q^-2 = (q - q^-1)(q + q^-1)
        let a = lp(-2, &[-1, 0, 0, 0, 1]);
        let b = lp(-1, &[-1, 0, 1]);
        assert_eq!(a.div_exact(&b), Some(lp(-1, &[1, 0, 1])));
        assert_eq!(lp(0, &[1, 0, 1]).div_exact(&lp(0, &[1, 1])), None);
    }

    #[test]
    fn gcd_normalized() {
        let a = lp(0, &[-2, 0, 2]); // 2(q^2-1)
        let b = lp(3, &[4, 4]); // 4q^3(q+1)
        assert_eq!(a.gcd(&b), lp(0, &[2, 2]));
        assert_eq!(lp(0, &[1, 1]).gcd(&lp(0, &[-1, 1])), LaurentPoly::one());
    }

    #[test]
    fn display_ascending() {
        assert_eq!(lp(0, &[1, 0, -1]).to_string(), "1 - q^2");
        assert_eq!(lp(-1, &[-1, 0, 0, 0, 1]).to_string(), "-q^-1 + q^3");
        assert_eq!(lp(1, &[2]).to_string(), "2*q");
    }

    #[test]
    fn derivative_of_laurent() {
        assert_eq!(lp(-1, &[1, 0, 1]).derivative(), lp(-2, &[-1, 0, 1]));
    }
}
