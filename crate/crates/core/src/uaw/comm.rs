use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::element::{write_powers, write_term, UawElement};
use crate::scalar::RatFunc;

/// A polynomial in commuting variables `Ā, B̄, C̄` (printed `Ab`, `Bb`, `Cb`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommPoly {
    terms: BTreeMap<[u32; 3], RatFunc>,
}

impl CommPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term([0, 0, 0], RatFunc::one())
    }

    pub fn term(e: [u32; 3], c: RatFunc) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// The variable `Ā`, `B̄` or `C̄` for `n = 0, 1, 2`.
    pub fn var(n: usize) -> Self {
        let mut e = [0; 3];
        e[n] = 1;
        Self::term(e, RatFunc::one())
    }

    pub fn add_term(&mut self, e: [u32; 3], c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&e) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32; 3]) -> RatFunc {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &RatFunc) -> CommPoly {
        let mut out = Self::zero();
        for (e, x) in &self.terms {
            out.add_term(*e, x * c);
        }
        out
    }

    pub fn mul(&self, o: &CommPoly) -> CommPoly {
        let mut out = Self::zero();
        for (e, x) in &self.terms {
            for (f, y) in &o.terms {
                out.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], x * y);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> CommPoly {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `ᾱ = (q+q^-1)Ā + B̄C̄` and its cyclic images for `n = 0, 1, 2`.
    pub fn central_image(n: usize) -> CommPoly {
        let mut e = [1, 1, 1];
        e[n] = 0;
        &Self::var(n).scale(&RatFunc::q_plus()) + &Self::term(e, RatFunc::one())
    }

    /// The image of `x` under the algebra map sending `A, B, C` to `Ā, B̄, C̄`.
    pub fn psi(x: &UawElement) -> CommPoly {
        let greeks: Vec<CommPoly> = (0..3).map(Self::central_image).collect();
        let mut cache: BTreeMap<(usize, u32), CommPoly> = BTreeMap::new();
        let mut out = Self::zero();
        for (w, c) in x.terms() {
            let mut m = Self::term([w.i, w.j, w.k], c.clone());
            for (n, e) in [w.r, w.s, w.t].into_iter().enumerate() {
                if e > 0 {
                    let p = cache.entry((n, e)).or_insert_with(|| greeks[n].pow(e));
                    m = m.mul(p);
                }
            }
            out = &out + &m;
        }
        out
    }
}

impl std::ops::Add for &CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

struct Mono([u32; 3]);

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_powers(f, &[("Ab", self.0[0]), ("Bb", self.0[1]), ("Cb", self.0[2])])
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (n, (e, c)) in v.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write_term(f, c, &Mono(*e), *e == [0, 0, 0])?;
        }
        Ok(())
    }
}

impl Serialize for CommPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            a: u32,
            b: u32,
            c: u32,
            coeff: &'a RatFunc,
        }
        let v: Vec<Term> = self
            .terms
            .iter()
            .map(|(e, c)| Term {
                a: e[0],
                b: e[1],
                c: e[2],
                coeff: c,
            })
            .collect();
        v.serialize(s)
    }
}

impl crate::linalg::SparseVector for CommPoly {
    type Label = [u32; 3];
    fn sparse_entries(&self) -> Vec<([u32; 3], RatFunc)> {
        self.terms.iter().map(|(e, c)| (*e, c.clone())).collect()
    }
}
