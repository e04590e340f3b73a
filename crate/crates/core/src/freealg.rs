//! The free unital associative algebra on the ordered alphabet `A < B < C`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'A' => Some(Letter::A),
            'B' => Some(Letter::B),
            'C' => Some(Letter::C),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A word on `{A, B, C}`; the empty word is the identity `1`.
///
/// Ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Number of pairs `j < k` with `letters[j] > letters[k]`.
    pub fn inversion_count(&self) -> usize {
        let mut count = 0;
        let mut seen = [0usize; 3];
        for &l in self.0.iter().rev() {
            count += (0..l.index()).map(|i| seen[i]).sum::<usize>();
            seen[l.index()] += 1;
        }
        count
    }
}

impl std::str::FromStr for Word {
    type Err = char;
    fn from_str(s: &str) -> Result<Self, char> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Letter::from_char(c).ok_or(c))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A finitely supported map from words to `Q(q)`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, RatFunc>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(Word(vec![l]))
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, RatFunc::one())
    }

    pub fn scalar(c: RatFunc) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: RatFunc) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, RatFunc)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    /// The bilinear form `(f, W)`: the coefficient of `W` in `f`.
    pub fn coeff(&self, w: &Word) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Maximal word length in the support; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            None => true,
            Some(first) => lens.all(|l| l == first),
        }
    }

    /// Restriction to words of length exactly `n`.
    pub fn homogeneous_part(&self, n: usize) -> FreeElement {
        FreeElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> FreeElement {
        if c.is_zero() {
            return Self::zero();
        }
        FreeElement {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Concatenation product, extended bilinearly.
    pub fn concat_mul(&self, other: &FreeElement) -> FreeElement {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    /// `[f, g] = fg - gf`.
    pub fn bracket(&self, other: &FreeElement) -> FreeElement {
        &self.concat_mul(other) - &other.concat_mul(self)
    }

    /// The anti-automorphism sending each word `W` to `(-1)^|W|` times its reversal.
    pub fn theta(&self) -> FreeElement {
        FreeElement {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    let c = if w.len() % 2 == 1 { -c } else { c.clone() };
                    (w.reversed(), c)
                })
                .collect(),
        }
    }

    /// Applies a letter substitution extended multiplicatively.
    pub fn substitute(&self, image: &dyn Fn(Letter) -> FreeElement) -> FreeElement {
        let images: Vec<FreeElement> = Letter::ALL.iter().map(|&l| image(l)).collect();
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::scalar(c.clone());
            for l in w.letters() {
                acc = acc.concat_mul(&images[l.index()]);
            }
            out = &out + &acc;
        }
        out
    }
}

#[derive(Serialize)]
struct FreeTermJson<'a> {
    word: String,
    coeff: &'a RatFunc,
}

/// JSON form: a list of `{"word": "BA", "coeff": {...}}`.
impl Serialize for FreeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<FreeTermJson> = self
            .terms
            .iter()
            .map(|(w, c)| FreeTermJson {
                word: w.to_string(),
                coeff: c,
            })
            .collect();
        terms.serialize(s)
    }
}

impl Add for &FreeElement {
    type Output = FreeElement;
    fn add(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &FreeElement {
    type Output = FreeElement;
    fn sub(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: &FreeElement) -> FreeElement {
        self.concat_mul(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FreeElement {
            type Output = FreeElement;
            fn $m(self, rhs: FreeElement) -> FreeElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        -&self
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let body: Vec<String> = w.0.iter().map(|l| l.to_string()).collect();
            match (w.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{}", c.coeff_string())?,
                (false, true) => write!(f, "{}", body.join(" "))?,
                (false, false) => write!(f, "{} {}", c.coeff_string(), body.join(" "))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeElement {
        FreeElement::word(s.parse().unwrap())
    }

    #[test]
    fn concat_examples() {
        assert_eq!(&w("AB") * &w("C"), w("ABC"));
        assert_eq!(&(&w("A") + &w("B")) * &w("C"), &w("AC") + &w("BC"));
        assert_eq!(&FreeElement::one() * &w("CAB"), w("CAB"));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(w("A").bracket(&w("B")), &w("AB") - &w("BA"));
        assert!(w("A").bracket(&w("A")).is_zero());
        assert_eq!(w("AB").bracket(&w("C")), &w("ABC") - &w("CAB"));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(w("ABC").theta(), -&w("CBA"));
        let ab = w("A").bracket(&w("B"));
        assert_eq!(ab.theta(), -&ab);
        assert_eq!(FreeElement::one().theta(), FreeElement::one());
    }

    #[test]
    fn coeff_and_parts() {
        let f = &w("AB") - &w("BA");
        assert_eq!(f.coeff(&"AB".parse().unwrap()), RatFunc::one());
        assert_eq!(f.coeff(&"BA".parse().unwrap()), RatFunc::from_i64(-1));
        assert!(f.coeff(&"CC".parse().unwrap()).is_zero());
        let g = &w("A") + &w("AB");
        assert_eq!(g.homogeneous_part(1), w("A"));
        assert_eq!(g.homogeneous_part(2), w("AB"));
        assert!(w("A").homogeneous_part(0).is_zero());
    }

    #[test]
    fn inversions() {
        let inv = |s: &str| s.parse::<Word>().unwrap().inversion_count();
        assert_eq!(inv("CABA"), 4);
        assert_eq!(inv("CBBA"), 5);
        assert_eq!(inv("AABC"), 0);
    }

    #[test]
    fn word_order_is_length_then_lex() {
        let a: Word = "C".parse().unwrap();
        let b: Word = "AA".parse().unwrap();
        assert!(a < b);
        assert_eq!(w("BA").to_string(), "B A");
        assert_eq!((&w("BA") - &w("AB")).to_string(), "-1 A B + B A");
    }
}
