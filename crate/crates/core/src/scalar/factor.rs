//! Factorization over `Q[q]` for root-of-unity analysis.
//!
//! Squarefree decomposition (Yun), then trial division by the cyclotomic
//! polynomials of order at most [`MAX_CYCLOTOMIC_ORDER`], then Kronecker's
//! method on whatever is left.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::laurent::LaurentPoly;
use super::ratfunc::RatFunc;
use super::ScalarError;

pub const MAX_CYCLOTOMIC_ORDER: u32 = 12;

/// Upper bound on divisor combinations tried per Kronecker search.
const KRONECKER_BUDGET: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    /// Primitive irreducible polynomial (shift zero, positive leading coefficient).
    pub poly: LaurentPoly,
    pub multiplicity: u32,
    /// `Some(n)` when `poly` is the `n`-th cyclotomic polynomial, `n <= 12`.
    pub cyclotomic_order: Option<u32>,
    /// False when the Kronecker search ran out of budget; the factor may then split further.
    pub certified_irreducible: bool,
}

impl Factor {
    pub fn is_q(&self) -> bool {
        self.poly == LaurentPoly::q()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorReport {
    /// Rational constant such that the input equals `constant * prod(num) / prod(den)`.
    #[serde(serialize_with = "ser_rational")]
    pub constant: BigRational,
    pub numerator: Vec<Factor>,
    pub denominator: Vec<Factor>,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl FactorReport {
    pub fn factors(&self) -> impl Iterator<Item = &Factor> {
        self.numerator.iter().chain(self.denominator.iter())
    }

    /// True when every non-constant factor is `q` or a cyclotomic polynomial
    /// whose order lies in `orders`.
    pub fn only_cyclotomic(&self, orders: &[u32]) -> bool {
        self.factors()
            .all(|f| f.is_q() || f.cyclotomic_order.is_some_and(|n| orders.contains(&n)))
    }

    /// Factors that are neither `q` nor cyclotomic of an allowed order.
    pub fn offending(&self, orders: &[u32]) -> Vec<Factor> {
        self.factors()
            .filter(|f| !(f.is_q() || f.cyclotomic_order.is_some_and(|n| orders.contains(&n))))
            .cloned()
            .collect()
    }
}

/// The `n`-th cyclotomic polynomial, `1 <= n <= 12`.
pub fn cyclotomic(n: u32) -> &'static LaurentPoly {
    static TABLE: OnceLock<Vec<LaurentPoly>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut table: Vec<LaurentPoly> = vec![LaurentPoly::zero()];
        for m in 1..=MAX_CYCLOTOMIC_ORDER {
            // q^m - 1 = prod_{d | m} Phi_d
            let mut p = &LaurentPoly::monomial(BigInt::one(), m as i32) - &LaurentPoly::one();
            for d in 1..m {
                if m % d == 0 {
                    p = p.div_exact(&table[d as usize]).expect("cyclotomic division");
                }
            }
            table.push(p);
        }
        table
    });
    assert!((1..=MAX_CYCLOTOMIC_ORDER).contains(&n), "cyclotomic order out of range");
    &table[n as usize]
}

/// Factor report of a nonzero rational function.
pub fn factor_report(f: &RatFunc) -> Result<FactorReport, ScalarError> {
    if f.is_zero() {
        return Err(ScalarError::ZeroArgument);
    }
    let (nc, mut numerator) = factor_laurent(f.numer());
    let (dc, mut denominator) = factor_laurent(f.denom());
    let q_exp = f.numer().shift() - f.denom().shift();
    let q_factor = |m: i32| Factor {
        poly: LaurentPoly::q(),
        multiplicity: m.unsigned_abs(),
        cyclotomic_order: None,
        certified_irreducible: true,
    };
    if q_exp > 0 {
        numerator.insert(0, q_factor(q_exp));
    } else if q_exp < 0 {
        denominator.insert(0, q_factor(q_exp));
    }
    Ok(FactorReport {
        constant: BigRational::new(nc, dc),
        numerator,
        denominator,
    })
}

/// Factors the shift-free part of `p`; returns the signed content and the factors.
fn factor_laurent(p: &LaurentPoly) -> (BigInt, Vec<Factor>) {
    let pp = p.primitive_part();
    let mut content = p.content();
    if p.leading_coeff().is_negative() {
        content = -content;
    }
    let mut out = Vec::new();
    for (mult, part) in squarefree(&pp) {
        let mut rest = part;
        for n in 1..=MAX_CYCLOTOMIC_ORDER {
            if rest.width() == 0 {
                break;
            }
            let phi = cyclotomic(n);
            if let Some(quo) = rest.div_exact(phi) {
                out.push(Factor {
                    poly: phi.clone(),
                    multiplicity: mult,
                    cyclotomic_order: Some(n),
                    certified_irreducible: true,
                });
                rest = quo;
            }
        }
        if rest.width() > 0 {
            for (g, certified) in irreducible_factors(&rest) {
                out.push(Factor {
                    poly: g,
                    multiplicity: mult,
                    cyclotomic_order: None,
                    certified_irreducible: certified,
                });
            }
        }
    }
    out.sort_by(|a, b| a.poly.width().cmp(&b.poly.width()).then(a.multiplicity.cmp(&b.multiplicity)));
    (content, out)
}

/// Yun's squarefree decomposition of a primitive polynomial with shift zero.
fn squarefree(f: &LaurentPoly) -> Vec<(u32, LaurentPoly)> {
    let mut out = Vec::new();
    if f.width() == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df).primitive_part();
    let mut b = f.div_exact(&a0).expect("yun b").primitive_part();
    let c = df.div_exact(&a0).expect("yun c");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.width() > 0 {
        let a = b.gcd(&d).primitive_part();
        if a.width() > 0 {
            out.push((i, a.clone()));
        }
        let nb = b.div_exact(&a).expect("yun step").primitive_part();
        let c = if d.is_zero() {
            LaurentPoly::zero()
        } else {
            d.div_exact(&a).expect("yun step c")
        };
        d = &c - &nb.derivative();
        b = nb;
        i += 1;
    }
    out
}

/// Splits a squarefree primitive polynomial into irreducible factors.
fn irreducible_factors(f: &LaurentPoly) -> Vec<(LaurentPoly, bool)> {
    let f = f.primitive_part();
    let n = f.width();
    if n <= 1 {
        return vec![(f, true)];
    }
    let mut certified = true;
    for d in 1..=n / 2 {
        match kronecker_factor(&f, d) {
            Ok(Some(g)) => {
                let h = f.div_exact(&g).expect("kronecker factor divides");
                let mut out = irreducible_factors(&g);
                out.extend(irreducible_factors(&h));
                return out;
            }
            Ok(None) => {}
            Err(()) => certified = false,
        }
    }
    vec![(f, certified)]
}

fn sample_points() -> impl Iterator<Item = i64> {
    (0..).map(|k: i64| if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 })
}

fn divisors(v: &BigInt) -> Option<Vec<i64>> {
    let v = v.abs().to_u64()?;
    if v > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(d as i64);
            if d * d != v {
                large.push((v / d) as i64);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Searches for a factor of degree exactly `d`. `Err(())` when the budget runs out.
fn kronecker_factor(f: &LaurentPoly, d: usize) -> Result<Option<LaurentPoly>, ()> {
    let mut xs = Vec::new();
    let mut vals = Vec::new();
    for x in sample_points() {
        if xs.len() > d {
            break;
        }
        let v = f.eval_i64(x).to_integer();
        if v.is_zero() {
            // rational root at an integer point
            return Ok(Some(LaurentPoly::from_i64_coeffs(0, &[-x, 1])));
        }
        xs.push(x);
        vals.push(v);
    }
    let mut choices: Vec<Vec<i64>> = Vec::new();
    let mut total: u64 = 1;
    for (k, v) in vals.iter().enumerate() {
        let ds = divisors(v).ok_or(())?;
        let options: Vec<i64> = if k == 0 {
            ds
        } else {
            ds.iter().flat_map(|&x| [x, -x]).collect()
        };
        total = total.saturating_mul(options.len() as u64);
        choices.push(options);
    }
    if total > KRONECKER_BUDGET {
        return Err(());
    }
    let lead = f.leading_coeff();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let ys: Vec<i64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if let Some(g) = interpolate(&xs, &ys) {
            if g.width() == d && lead.is_multiple_of(&g.leading_coeff()) {
                if f.div_exact(&g).is_some() {
                    return Ok(Some(g.primitive_part()));
                }
            }
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Integer-coefficient interpolant through `(xs[i], ys[i])`, if it exists.
fn interpolate(xs: &[i64], ys: &[i64]) -> Option<LaurentPoly> {
    let n = xs.len();
    let r = |v: i64| BigRational::from_integer(BigInt::from(v));
    // Newton divided differences
    let mut coef: Vec<BigRational> = ys.iter().map(|&y| r(y)).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / r(xs[i] - xs[i - j]);
        }
    }
    // expand newton form into monomial basis
    let mut poly: Vec<BigRational> = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // poly = poly * (x - xs[i]) + coef[i]
        let mut next = vec![BigRational::zero(); n];
        for k in 0..n {
            if poly[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &poly[k];
            }
            next[k] -= &poly[k] * r(xs[i]);
        }
        next[0] += &coef[i];
        poly = next;
    }
    if poly.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(LaurentPoly::new(0, poly.into_iter().map(|c| c.to_integer()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64_coeffs(0, c)
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic(1), &lp(&[-1, 1]));
        assert_eq!(cyclotomic(2), &lp(&[1, 1]));
        assert_eq!(cyclotomic(3), &lp(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), &lp(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), &lp(&[1, -1, 1]));
        assert_eq!(cyclotomic(8), &lp(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), &lp(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn q_squared_minus_one() {
        let r = factor_report(&RatFunc::from_laurent(lp(&[-1, 0, 1]))).unwrap();
        let got: Vec<_> = r.numerator.iter().map(|f| (f.poly.clone(), f.multiplicity, f.cyclotomic_order)).collect();
        assert_eq!(got, vec![(lp(&[-1, 1]), 1, Some(1)), (lp(&[1, 1]), 1, Some(2))]);
        assert!(r.denominator.is_empty());
    }

    #[test]
    fn q4_q2_1() {
        let r = factor_report(&RatFunc::from_laurent(lp(&[1, 0, 1, 0, 1]))).unwrap();
        let orders: Vec<_> = r.numerator.iter().map(|f| f.cyclotomic_order).collect();
        assert_eq!(orders, vec![Some(3), Some(6)]);
    }

    #[test]
    fn q_minus_q_inv_squared() {
        let f = RatFunc::q_minus().pow(2);
        let r = factor_report(&f).unwrap();
        assert_eq!(r.denominator.len(), 1);
        assert!(r.denominator[0].is_q());
        assert_eq!(r.denominator[0].multiplicity, 2);
        let got: Vec<_> = r.numerator.iter().map(|f| (f.multiplicity, f.cyclotomic_order)).collect();
        assert_eq!(got, vec![(2, Some(1)), (2, Some(2))]);
        assert!(r.only_cyclotomic(&[1, 2]));
    }

    #[test]
    fn non_cyclotomic_split() {
        // (2q^2+1)(q^2+2) = 2q^4 + 5q^2 + 2, irreducible quadratics
        let r = factor_report(&RatFunc::from_laurent(lp(&[2, 0, 5, 0, 2]))).unwrap();
        assert_eq!(r.numerator.len(), 2);
        assert!(r.numerator.iter().all(|f| f.cyclotomic_order.is_none() && f.certified_irreducible));
        // (q-2)(q^2+q+1)
        let r = factor_report(&RatFunc::from_laurent(&lp(&[-2, 1]) * cyclotomic(3))).unwrap();
        assert_eq!(r.numerator.len(), 2);
        assert_eq!(r.offending(&[3]).len(), 1);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(factor_report(&RatFunc::zero()), Err(ScalarError::ZeroArgument));
    }
}
