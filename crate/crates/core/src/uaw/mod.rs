//! The universal Askey-Wilson algebra `Δ` in its basis of irreducible words
//! `A^i B^j C^k α^r β^s γ^t`.

mod comm;
mod element;
mod engine;
mod omega;

pub use comm::CommPoly;
pub use element::{NormalWord, TermJson, UawElement};
pub use engine::{Engine, ReductionRules, Rule, Strategy};
pub use omega::OmegaWord;

use thiserror::Error;

use crate::freealg::{FreeElement, Letter, Word};
use crate::scalar::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UawError {
    #[error("argument must be nonzero")]
    ZeroArgument,
}

/// The central elements `α, β, γ` and the Casimir `Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Central {
    Alpha,
    Beta,
    Gamma,
    Omega,
}

impl Central {
    pub fn name(self) -> &'static str {
        match self {
            Central::Alpha => "al",
            Central::Beta => "be",
            Central::Gamma => "ga",
            Central::Omega => "Om",
        }
    }
}

pub fn psi(x: &UawElement) -> CommPoly {
    CommPoly::psi(x)
}

pub fn inversion_count(w: &Word) -> usize {
    w.inversion_count()
}

fn letters(s: &str) -> FreeElement {
    FreeElement::word(s.parse().expect("letters"))
}

/// `α, β, γ` as elements of the free algebra, e.g.
/// `α = (q+q^-1) A + (q BC - q^-1 CB)/(q-q^-1)`.
pub fn central_free(c: Central) -> FreeElement {
    let (x, yz, zy) = match c {
        Central::Alpha => ("A", "BC", "CB"),
        Central::Beta => ("B", "CA", "AC"),
        Central::Gamma => ("C", "AB", "BA"),
        Central::Omega => return omega_free(),
    };
    let inv = RatFunc::q_minus().inv().expect("q - q^-1 is nonzero");
    let quot = &letters(yz).scale(&RatFunc::q()) - &letters(zy).scale(&RatFunc::q_pow(-1));
    &letters(x).scale(&RatFunc::q_plus()) + &quot.scale(&inv)
}

/// The first of the six Casimir expressions, with `α, β, γ` expanded in the free algebra.
pub fn omega_free() -> FreeElement {
    let q = |e: i32| RatFunc::q_pow(e);
    let a = FreeElement::letter(Letter::A);
    let b = FreeElement::letter(Letter::B);
    let c = FreeElement::letter(Letter::C);
    let mut out = letters("ABC").scale(&q(1));
    out = &out + &letters("AA").scale(&q(2));
    out = &out + &letters("BB").scale(&q(-2));
    out = &out + &letters("CC").scale(&q(2));
    out = &out - &(&a * &central_free(Central::Alpha)).scale(&q(1));
    out = &out - &(&b * &central_free(Central::Beta)).scale(&q(-1));
    &out - &(&c * &central_free(Central::Gamma)).scale(&q(1))
}

/// The generator `X` and central `δ` of the defining relation `r_i = [X, δ]`.
pub fn relation_parts(i: usize) -> (Letter, Central) {
    use Central::*;
    use Letter::*;
    match i {
        0 => (A, Alpha),
        1 => (B, Beta),
        2 => (C, Gamma),
        3 => (B, Alpha),
        4 => (C, Beta),
        5 => (A, Gamma),
        6 => (C, Alpha),
        7 => (A, Beta),
        8 => (B, Gamma),
        _ => panic!("relation index {i} out of range 0..=8"),
    }
}

/// The defining relation `r_i` as an element of the free algebra.
pub fn relation_free(i: usize) -> FreeElement {
    let (x, d) = relation_parts(i);
    FreeElement::letter(x).bracket(&central_free(d))
}

/// Letter substitution `ρ: A→B→C→A` on the free algebra.
pub fn rho_free(f: &FreeElement) -> FreeElement {
    f.substitute(&|l| {
        FreeElement::letter(match l {
            Letter::A => Letter::B,
            Letter::B => Letter::C,
            Letter::C => Letter::A,
        })
    })
}

/// `σ: A↔B, C ↦ C + [A,B]/(q-q^-1)` on the free algebra.
pub fn sigma_free(f: &FreeElement) -> FreeElement {
    let inv = RatFunc::q_minus().inv().expect("q - q^-1 is nonzero");
    let a = FreeElement::letter(Letter::A);
    let b = FreeElement::letter(Letter::B);
    let sc = &FreeElement::letter(Letter::C) + &a.bracket(&b).scale(&inv);
    f.substitute(&|l| match l {
        Letter::A => b.clone(),
        Letter::B => a.clone(),
        Letter::C => sc.clone(),
    })
}
