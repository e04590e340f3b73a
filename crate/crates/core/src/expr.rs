//! Expressions over `A, B, C`, the centrals `al be ga Om`, Hall elements `H<n>`,
//! brackets and scalars in `q`.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/")? factor)*
//! factor := "-" factor | atom ("^" integer)?
//! atom   := integer | "q" | "A" | "B" | "C" | "al" | "be" | "ga" | "Om" | "H" nat
//!         | "[" expr "," expr "]" | "[" letters "]" | "(" expr ")"
//! ```
//!
//! Juxtaposition is multiplication. `[BAC]` is the left-normed bracket `[[B,A],C]`.
//! Exponents may be negative only on scalars.

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::freealg::{FreeElement, Letter, Word};
use crate::hall::{HallBasis, HallError, LieTree};
use crate::scalar::{LaurentPoly, RatFunc};
use crate::uaw::{central_free, CommPoly, Central, Engine, UawElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigUint),
    Q,
    Gen(Letter),
    Central(Central),
    Hall(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Bracket(Box<Expr>, Box<Expr>),
    /// `[X1 X2 ... Xt]`, holding the product of letters as written.
    LeftNormed(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" | "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{0} must be a scalar")]
    NotScalar(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression is not a Lie polynomial")]
    NotLie,
    #[error("left-normed bracket needs a nonempty product of letters")]
    BadLeftNormed,
    #[error(transparent)]
    Hall(#[from] HallError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigUint),
    Q,
    Gen(Letter),
    Central(Central),
    Hall(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LBrack,
    RBrack,
    Comma,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Q => "'q'".into(),
            Tok::Gen(l) => format!("'{l}'"),
            Tok::Central(c) => format!("'{}'", c.name()),
            Tok::Hall(n) => format!("'H{n}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LBrack => "'['".into(),
            Tok::RBrack => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self,
            Tok::Int(_) | Tok::Q | Tok::Gen(_) | Tok::Central(_) | Tok::Hall(_) | Tok::LBrack | Tok::LParen
        )
    }
}

const ATOM: &[&str] = &["integer", "'q'", "generator", "central", "'H<n>'", "'['", "'('"];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' | '\u{b7}' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            'q' => Some(Tok::Q),
            'A' => Some(Tok::Gen(Letter::A)),
            'B' => Some(Tok::Gen(Letter::B)),
            'C' => Some(Tok::Gen(Letter::C)),
            '\u{3b1}' => Some(Tok::Central(Central::Alpha)),
            '\u{3b2}' => Some(Tok::Central(Central::Beta)),
            '\u{3b3}' => Some(Tok::Central(Central::Gamma)),
            '\u{3a9}' => Some(Tok::Central(Central::Omega)),
            _ => None,
        };
        if let Some(t) = simple {
            it.next();
            out.push((pos, t));
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(p, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = p + 1;
                it.next();
            }
            out.push((pos, Tok::Int(src[pos..end].parse().expect("digits"))));
            continue;
        }
        let rest = &src[pos..];
        let two = [("al", Central::Alpha), ("be", Central::Beta), ("ga", Central::Gamma), ("Om", Central::Omega)]
            .into_iter()
            .find(|(name, _)| rest.starts_with(name));
        if let Some((_, cen)) = two {
            it.next();
            it.next();
            out.push((pos, Tok::Central(cen)));
            continue;
        }
        if c == 'H' {
            it.next();
            while it.peek().is_some_and(|(_, d)| *d == ' ') {
                it.next();
            }
            let start = it.peek().map_or(src.len(), |(p, _)| *p);
            let mut end = start;
            while let Some(&(p, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = p + 1;
                it.next();
            }
            let n = src[start..end].parse::<usize>().map_err(|_| ParseError {
                offset: start,
                expected: vec!["Hall index".into()],
                found: src[start..].chars().next().map_or("end of input".into(), |c| format!("'{c}'")),
            })?;
            out.push((pos, Tok::Hall(n)));
            continue;
        }
        return Err(ParseError {
            offset: pos,
            expected: ATOM.iter().map(|s| s.to_string()).collect(),
            found: format!("'{c}'"),
        });
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let (offset, tok) = &self.toks[self.pos];
        ParseError {
            offset: *offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        }
    }

    fn expect(&mut self, t: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                t if t.starts_atom() => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let n = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n
            }
            _ => return Err(self.error(&["integer exponent"])),
        };
        if paren {
            self.expect(Tok::RParen, "')'")?;
        }
        let n: i64 = i64::try_from(n).map_err(|_| self.error(&["exponent in range"]))?;
        Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Q => {
                self.bump();
                Ok(Expr::Q)
            }
            Tok::Gen(l) => {
                self.bump();
                Ok(Expr::Gen(l))
            }
            Tok::Central(c) => {
                self.bump();
                Ok(Expr::Central(c))
            }
            Tok::Hall(n) => {
                self.bump();
                Ok(Expr::Hall(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::LBrack => {
                self.bump();
                let a = self.expr()?;
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                        let b = self.expr()?;
                        self.expect(Tok::RBrack, "']'")?;
                        Ok(Expr::Bracket(Box::new(a), Box::new(b)))
                    }
                    Tok::RBrack => {
                        self.bump();
                        Ok(Expr::LeftNormed(Box::new(a)))
                    }
                    _ => Err(self.error(&["','", "']'"])),
                }
            }
            _ => Err(self.error(ATOM)),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_expr(s)
    }
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Q => write!(f, "q"),
            Expr::Gen(l) => write!(f, "{l}"),
            Expr::Central(c) => write!(f, "{}", c.name()),
            Expr::Hall(n) => write!(f, "H{n}"),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.write_at(f, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Expr::Pow(a, n) => {
                a.write_at(f, 5)?;
                write!(f, "^{n}")
            }
            Expr::Bracket(a, b) => {
                write!(f, "[")?;
                a.write_at(f, 0)?;
                write!(f, ", ")?;
                b.write_at(f, 0)?;
                write!(f, "]")
            }
            Expr::LeftNormed(a) => {
                write!(f, "[")?;
                a.write_at(f, 0)?;
                write!(f, "]")
            }
        }
    }

    /// The value when no generator, central or Hall element occurs.
    pub fn scalar_value(&self) -> Result<Option<RatFunc>, EvalError> {
        use Expr::*;
        let two = |a: &Expr, b: &Expr| -> Result<Option<(RatFunc, RatFunc)>, EvalError> {
            Ok(match (a.scalar_value()?, b.scalar_value()?) {
                (Some(x), Some(y)) => Some((x, y)),
                _ => None,
            })
        };
        Ok(match self {
            Int(n) => Some(RatFunc::from_laurent(LaurentPoly::constant(n.clone().into()))),
            Q => Some(RatFunc::q()),
            Gen(_) | Central(_) | Hall(_) | Bracket(..) | LeftNormed(_) => None,
            Add(a, b) => two(a, b)?.map(|(x, y)| x + y),
            Sub(a, b) => two(a, b)?.map(|(x, y)| x - y),
            Mul(a, b) => two(a, b)?.map(|(x, y)| x * y),
            Div(a, b) => match two(a, b)? {
                Some((x, y)) => Some(x.checked_div(&y).map_err(|_| EvalError::DivisionByZero)?),
                None => None,
            },
            Neg(a) => a.scalar_value()?.map(|x| -x),
            Pow(a, n) => match a.scalar_value()? {
                Some(x) => {
                    if x.is_zero() && *n < 0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    Some(x.pow(i32::try_from(*n).map_err(|_| EvalError::NotScalar("exponent"))?))
                }
                None => None,
            },
        })
    }

    fn letters_of_product(&self, out: &mut Vec<Letter>) -> Result<(), EvalError> {
        match self {
            Expr::Gen(l) => out.push(*l),
            Expr::Mul(a, b) => {
                a.letters_of_product(out)?;
                b.letters_of_product(out)?;
            }
            Expr::Pow(a, n) if *n >= 1 => {
                for _ in 0..*n {
                    a.letters_of_product(out)?;
                }
            }
            _ => return Err(EvalError::BadLeftNormed),
        }
        Ok(())
    }

    fn left_normed_tree(inner: &Expr) -> Result<LieTree, EvalError> {
        let mut letters = Vec::new();
        inner.letters_of_product(&mut letters)?;
        crate::hall::left_normed(&Word(letters)).map_err(|_| EvalError::BadLeftNormed)
    }

    fn divisor(b: &Expr) -> Result<RatFunc, EvalError> {
        let d = b.scalar_value()?.ok_or(EvalError::NotScalar("divisor"))?;
        d.inv().map_err(|_| EvalError::DivisionByZero)
    }

    /// Evaluation in any algebra given how to embed scalars and the atoms.
    fn eval_in<T: Clone>(&self, alg: &dyn Algebra<T>) -> Result<T, EvalError> {
        if let Some(c) = self.scalar_value()? {
            return Ok(alg.scalar(c));
        }
        use Expr::*;
        Ok(match self {
            Int(_) | Q => unreachable!("scalars handled above"),
            Gen(l) => alg.letter(*l),
            Central(c) => alg.central(*c),
            Hall(n) => alg.tree(HallBasis::standard().tree(*n)?)?,
            Add(a, b) => alg.add(&a.eval_in(alg)?, &b.eval_in(alg)?),
            Sub(a, b) => alg.add(&a.eval_in(alg)?, &alg.scale(&b.eval_in(alg)?, &RatFunc::from_i64(-1))),
            Neg(a) => alg.scale(&a.eval_in(alg)?, &RatFunc::from_i64(-1)),
            Mul(a, b) => alg.mul(&a.eval_in(alg)?, &b.eval_in(alg)?),
            Div(a, b) => alg.scale(&a.eval_in(alg)?, &Self::divisor(b)?),
            Pow(a, n) => {
                if *n < 0 {
                    return Err(EvalError::NotScalar("base of a negative power"));
                }
                let x = a.eval_in(alg)?;
                let mut acc = alg.scalar(RatFunc::one());
                for _ in 0..*n {
                    acc = alg.mul(&acc, &x);
                }
                acc
            }
            Bracket(a, b) => {
                let (x, y) = (a.eval_in(alg)?, b.eval_in(alg)?);
                alg.add(&alg.mul(&x, &y), &alg.scale(&alg.mul(&y, &x), &RatFunc::from_i64(-1)))
            }
            LeftNormed(inner) => alg.tree(&Self::left_normed_tree(inner)?)?,
        })
    }

    /// The value in `Δ`.
    pub fn to_uaw(&self, engine: &Engine) -> Result<UawElement, EvalError> {
        self.eval_in(&UawAlg(engine))
    }

    /// The value in the free algebra; centrals are replaced by their defining expressions.
    pub fn to_free(&self) -> Result<FreeElement, EvalError> {
        self.eval_in(&FreeAlg)
    }

    /// The commutative image of the value in `Δ`.
    pub fn to_comm(&self, engine: &Engine) -> Result<CommPoly, EvalError> {
        Ok(CommPoly::psi(&self.to_uaw(engine)?))
    }

    /// A formal combination of bracket trees, or `NotLie`.
    pub fn to_lie(&self) -> Result<Vec<(LieTree, RatFunc)>, EvalError> {
        if self.scalar_value()?.is_some() {
            return Err(EvalError::NotLie);
        }
        use Expr::*;
        let scale = |v: Vec<(LieTree, RatFunc)>, c: &RatFunc| v.into_iter().map(|(t, x)| (t, &x * c)).collect();
        Ok(match self {
            Gen(l) => vec![(LieTree::Leaf(*l), RatFunc::one())],
            Hall(n) => vec![(HallBasis::standard().tree(*n)?.clone(), RatFunc::one())],
            LeftNormed(inner) => vec![(Self::left_normed_tree(inner)?, RatFunc::one())],
            Add(a, b) => [a.to_lie()?, b.to_lie()?].concat(),
            Sub(a, b) => [a.to_lie()?, scale(b.to_lie()?, &RatFunc::from_i64(-1))].concat(),
            Neg(a) => scale(a.to_lie()?, &RatFunc::from_i64(-1)),
            Mul(a, b) => match (a.scalar_value()?, b.scalar_value()?) {
                (Some(c), None) => scale(b.to_lie()?, &c),
                (None, Some(c)) => scale(a.to_lie()?, &c),
                _ => return Err(EvalError::NotLie),
            },
            Div(a, b) => scale(a.to_lie()?, &Self::divisor(b)?),
            Pow(a, 1) => a.to_lie()?,
            Bracket(a, b) => {
                let (x, y) = (a.to_lie()?, b.to_lie()?);
                let mut out = Vec::with_capacity(x.len() * y.len());
                for (s, c) in &x {
                    for (t, d) in &y {
                        out.push((LieTree::node(s.clone(), t.clone()), c * d));
                    }
                }
                out
            }
            Int(_) | Q | Central(_) | Pow(..) => return Err(EvalError::NotLie),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

trait Algebra<T> {
    fn scalar(&self, c: RatFunc) -> T;
    fn letter(&self, l: Letter) -> T;
    fn central(&self, c: Central) -> T;
    fn tree(&self, t: &LieTree) -> Result<T, EvalError>;
    fn add(&self, a: &T, b: &T) -> T;
    fn scale(&self, a: &T, c: &RatFunc) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
}

struct UawAlg<'a>(&'a Engine);

impl Algebra<UawElement> for UawAlg<'_> {
    fn scalar(&self, c: RatFunc) -> UawElement {
        UawElement::scalar(c)
    }
    fn letter(&self, l: Letter) -> UawElement {
        self.0.letter(l)
    }
    fn central(&self, c: Central) -> UawElement {
        self.0.central(c)
    }
    fn tree(&self, t: &LieTree) -> Result<UawElement, EvalError> {
        Ok(self.0.from_free(&crate::hall::expand(t)))
    }
    fn add(&self, a: &UawElement, b: &UawElement) -> UawElement {
        a + b
    }
    fn scale(&self, a: &UawElement, c: &RatFunc) -> UawElement {
        a.scale(c)
    }
    fn mul(&self, a: &UawElement, b: &UawElement) -> UawElement {
        self.0.mul(a, b)
    }
}

struct FreeAlg;

impl Algebra<FreeElement> for FreeAlg {
    fn scalar(&self, c: RatFunc) -> FreeElement {
        FreeElement::scalar(c)
    }
    fn letter(&self, l: Letter) -> FreeElement {
        FreeElement::letter(l)
    }
    fn central(&self, c: Central) -> FreeElement {
        central_free(c)
    }
    fn tree(&self, t: &LieTree) -> Result<FreeElement, EvalError> {
        Ok(crate::hall::expand(t))
    }
    fn add(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        a + b
    }
    fn scale(&self, a: &FreeElement, c: &RatFunc) -> FreeElement {
        a.scale(c)
    }
    fn mul(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        a * b
    }
}

/// Parses and evaluates in `Δ`, panicking on malformed input. For built-in formulas.
pub fn uaw(engine: &Engine, src: &str) -> UawElement {
    parse_expr(src)
        .unwrap_or_else(|e| panic!("{src}: {e}"))
        .to_uaw(engine)
        .unwrap_or_else(|e| panic!("{src}: {e}"))
}

/// Parses and evaluates in the free algebra, panicking on malformed input.
pub fn free(src: &str) -> FreeElement {
    parse_expr(src)
        .unwrap_or_else(|e| panic!("{src}: {e}"))
        .to_free()
        .unwrap_or_else(|e| panic!("{src}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let e = Engine::standard();
        let ba = p("q^2*A*B + (q^3 - q^-1)*C - (q^2-1)*ga").to_uaw(e).unwrap();
        assert_eq!(ba, p("B*A").to_uaw(e).unwrap());
        assert_eq!(p("[ [B,A], C ]"), p("[[B,A],C]"));
        let h12 = p("H12").to_lie().unwrap();
        assert_eq!(h12, vec![("[[B,A],C]".parse().unwrap(), RatFunc::one())]);
        assert_eq!(p("[BAC]").to_free().unwrap(), p("[[B,A],C]").to_free().unwrap());
        assert_eq!(p("[BA^2]").to_free().unwrap(), p("[[B,A],A]").to_free().unwrap());
        assert_eq!(p("α + Ω").to_uaw(e).unwrap(), p("al + Om").to_uaw(e).unwrap());
        assert_eq!(p("q^(-1)"), p("q^-1"));
    }

    #[test]
    fn parse_errors() {
        let err = parse_expr("A + * B").unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(err.expected.contains(&"'('".to_string()));
        assert_eq!(parse_expr("[A, B").unwrap_err().offset, 5);
        assert_eq!(parse_expr("A % B").unwrap_err().offset, 2);
        assert!(matches!(p("A^-1").to_uaw(Engine::standard()), Err(EvalError::NotScalar(_))));
        assert!(matches!(p("A/B").to_uaw(Engine::standard()), Err(EvalError::NotScalar(_))));
        assert_eq!(p("A*B").to_lie(), Err(EvalError::NotLie));
    }

    #[test]
    fn free_and_delta_agree() {
        let e = Engine::standard();
        for s in ["[[B,A],C] + q*al", "Om*A - A*Om", "(A+B)^3", "[BAC]/(q-q^-1)"] {
            assert_eq!(e.from_free(&p(s).to_free().unwrap()), p(s).to_uaw(e).unwrap(), "{s}");
        }
    }

    pub(crate) fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
        let leaf = depth == 0 || rng.gen_bool(0.3);
        if leaf {
            return match rng.gen_range(0..6) {
                0 => Expr::Int(BigUint::from(rng.gen_range(0u32..20))),
                1 => Expr::Q,
                2 => Expr::Central([Central::Alpha, Central::Beta, Central::Gamma, Central::Omega][rng.gen_range(0..4)]),
                3 => Expr::Hall(rng.gen_range(1..40)),
                _ => Expr::Gen(Letter::ALL[rng.gen_range(0..3)]),
            };
        }
        fn sub(rng: &mut ChaCha8Rng, depth: u32) -> Box<Expr> {
            Box::new(random_expr(rng, depth - 1))
        }
        match rng.gen_range(0..9) {
            0 => Expr::Add(sub(rng, depth), sub(rng, depth)),
            1 => Expr::Sub(sub(rng, depth), sub(rng, depth)),
            2 => Expr::Neg(sub(rng, depth)),
            3 => Expr::Mul(sub(rng, depth), sub(rng, depth)),
            4 => Expr::Div(sub(rng, depth), sub(rng, depth)),
            5 => Expr::Pow(sub(rng, depth), rng.gen_range(-3..4)),
            6 => Expr::Bracket(sub(rng, depth), sub(rng, depth)),
            7 => Expr::LeftNormed(Box::new(Expr::Mul(
                Box::new(Expr::Gen(Letter::ALL[rng.gen_range(0..3)])),
                Box::new(Expr::Pow(Box::new(Expr::Gen(Letter::ALL[rng.gen_range(0..3)])), rng.gen_range(1..3))),
            ))),
            _ => Expr::Mul(sub(rng, depth), sub(rng, depth)),
        }
    }

    #[test]
    fn print_parse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let e = random_expr(&mut rng, 4);
            let printed = e.to_string();
            let back = parse_expr(&printed).unwrap_or_else(|err| panic!("{printed}: {err}"));
            assert_eq!(back, e, "{printed}");
            assert_eq!(back.to_string(), printed);
        }
    }

    #[test]
    fn normal_form_output_reparses() {
        let e = Engine::standard();
        for s in ["B*A", "C*A*B*A", "Om^2", "[H12, al]/(q+1)"] {
            let x = parse_expr(s).unwrap();
            let v = x.to_uaw(e).unwrap();
            let again = parse_expr(&v.to_string()).unwrap().to_uaw(e).unwrap();
            assert_eq!(again, v, "{s}");
        }
    }
}
