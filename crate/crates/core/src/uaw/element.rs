use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::UawError;
use crate::scalar::RatFunc;

/// Exponents of `A^i B^j C^k α^r β^s γ^t`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalWord {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
}

impl NormalWord {
    pub const ONE: NormalWord = NormalWord {
        i: 0,
        j: 0,
        k: 0,
        r: 0,
        s: 0,
        t: 0,
    };

    pub fn new(i: u32, j: u32, k: u32, r: u32, s: u32, t: u32) -> Self {
        NormalWord { i, j, k, r, s, t }
    }

    pub fn abc(i: u32, j: u32, k: u32) -> Self {
        Self::new(i, j, k, 0, 0, 0)
    }

    pub fn degree(&self) -> u32 {
        self.i + self.j + self.k + self.r + self.s + self.t
    }

    pub fn abc_part(&self) -> NormalWord {
        Self::abc(self.i, self.j, self.k)
    }

    pub fn greek_part(&self) -> NormalWord {
        Self::new(0, 0, 0, self.r, self.s, self.t)
    }

    /// Componentwise sum; the product of two words when one of them is purely central.
    pub fn plus(&self, o: &NormalWord) -> NormalWord {
        NormalWord::new(
            self.i + o.i,
            self.j + o.j,
            self.k + o.k,
            self.r + o.r,
            self.s + o.s,
            self.t + o.t,
        )
    }

    pub fn exponents(&self) -> [u32; 6] {
        [self.i, self.j, self.k, self.r, self.s, self.t]
    }
}

pub(crate) fn write_powers(f: &mut fmt::Formatter<'_>, parts: &[(&str, u32)]) -> fmt::Result {
    let mut first = true;
    for (name, e) in parts {
        if *e == 0 {
            continue;
        }
        if !first {
            write!(f, " ")?;
        }
        first = false;
        if *e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    if first {
        write!(f, "1")?;
    }
    Ok(())
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_powers(
            f,
            &[
                ("A", self.i),
                ("B", self.j),
                ("C", self.k),
                ("al", self.r),
                ("be", self.s),
                ("ga", self.t),
            ],
        )
    }
}

/// An element of `Δ` as a combination of normal words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UawElement {
    terms: BTreeMap<NormalWord, RatFunc>,
}

impl UawElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(NormalWord::ONE)
    }

    pub fn monomial(w: NormalWord) -> Self {
        Self::term(w, RatFunc::one())
    }

    pub fn scalar(c: RatFunc) -> Self {
        Self::term(NormalWord::ONE, c)
    }

    pub fn term(w: NormalWord, c: RatFunc) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NormalWord, RatFunc)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: NormalWord, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&w) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalWord, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &NormalWord) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &RatFunc) -> UawElement {
        if c.is_zero() {
            return Self::zero();
        }
        UawElement {
            terms: self.terms.iter().map(|(w, x)| (*w, x * c)).collect(),
        }
    }

    /// Maximal total degree of the support: `x ∈ Δ_n` iff this is at most `n`.
    pub fn filtration_degree(&self) -> Result<u32, UawError> {
        self.terms
            .keys()
            .map(NormalWord::degree)
            .max()
            .ok_or(UawError::ZeroArgument)
    }

    pub fn in_filtration(&self, n: u32) -> bool {
        self.terms.keys().all(|w| w.degree() <= n)
    }

    /// Terms of total degree exactly `n`.
    pub fn degree_part(&self, n: u32) -> UawElement {
        UawElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == n)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    /// Multiplies every term by a purely central monomial.
    pub fn times_central(&self, g: &NormalWord) -> UawElement {
        UawElement {
            terms: self.terms.iter().map(|(w, c)| (w.plus(g), c.clone())).collect(),
        }
    }

    /// Terms in display order: descending degree, then descending exponents.
    pub fn sorted_terms(&self) -> Vec<(&NormalWord, &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        v
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.sorted_terms()
            .into_iter()
            .map(|(w, c)| TermJson {
                i: w.i,
                j: w.j,
                k: w.k,
                r: w.r,
                s: w.s,
                t: w.t,
                coeff: c.clone(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub coeff: RatFunc,
}

impl Serialize for UawElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, c: &RatFunc, body: &dyn fmt::Display, is_one: bool) -> fmt::Result {
    if is_one {
        return write!(f, "{}", c.coeff_string());
    }
    if c.is_one() {
        write!(f, "{body}")
    } else {
        write!(f, "{} {body}", c.coeff_string())
    }
}

impl fmt::Display for UawElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write_term(f, c, w, *w == NormalWord::ONE)?;
        }
        Ok(())
    }
}

impl std::ops::Add for &UawElement {
    type Output = UawElement;
    fn add(self, rhs: &UawElement) -> UawElement {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (w, c) in &small.terms {
            out.add_term(*w, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &UawElement {
    type Output = UawElement;
    fn sub(self, rhs: &UawElement) -> UawElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, -c);
        }
        out
    }
}

impl std::ops::Neg for &UawElement {
    type Output = UawElement;
    fn neg(self) -> UawElement {
        UawElement {
            terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect(),
        }
    }
}

impl std::ops::Add for UawElement {
    type Output = UawElement;
    fn add(self, rhs: UawElement) -> UawElement {
        &self + &rhs
    }
}

impl std::ops::Sub for UawElement {
    type Output = UawElement;
    fn sub(self, rhs: UawElement) -> UawElement {
        &self - &rhs
    }
}

impl std::ops::Neg for UawElement {
    type Output = UawElement;
    fn neg(self) -> UawElement {
        -&self
    }
}

impl crate::linalg::SparseVector for UawElement {
    type Label = NormalWord;
    fn sparse_entries(&self) -> Vec<(NormalWord, RatFunc)> {
        self.terms.iter().map(|(w, c)| (*w, c.clone())).collect()
    }
}
