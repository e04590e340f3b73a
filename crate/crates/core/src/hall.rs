//! Lie monomials and the Hall basis of the free Lie algebra on `A, B, C`.
//!
//! Hall elements are numbered globally from 1: shorter elements come first and
//! elements of equal length `[U,V]` are ordered by `V`, then by `U`. Thus
//! `H1..H3 = A, B, C` and `H4, H5, H6 = [B,A], [C,A], [C,B]`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::freealg::{FreeElement, Letter, Word};
use crate::linalg::{in_span, BasisIndex, LinalgError, SparseVector};
use crate::scalar::RatFunc;

/// Length of the globally shared basis returned by [`HallBasis::standard`].
pub const STANDARD_MAX_LEN: usize = 7;

const REWRITE_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HallError {
    #[error("left-normed bracket of the empty word")]
    EmptyWord,
    #[error("bracket of length {len} exceeds the generated basis (max {max})")]
    TooLong { len: usize, max: usize },
    #[error("no Hall element with index {0}")]
    UnknownIndex(usize),
    #[error("rewriting exceeded its step budget")]
    BudgetExceeded,
    #[error("element is not in the free Lie algebra")]
    NotInLie,
    #[error("cannot parse Lie monomial at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LieTree {
    Leaf(Letter),
    Node(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    pub fn leaf(l: Letter) -> Self {
        LieTree::Leaf(l)
    }

    pub fn node(u: LieTree, v: LieTree) -> Self {
        LieTree::Node(Box::new(u), Box::new(v))
    }

    pub fn len(&self) -> usize {
        match self {
            LieTree::Leaf(_) => 1,
            LieTree::Node(u, v) => u.len() + v.len(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, LieTree::Leaf(_))
    }

    pub fn children(&self) -> Option<(&LieTree, &LieTree)> {
        match self {
            LieTree::Leaf(_) => None,
            LieTree::Node(u, v) => Some((u, v)),
        }
    }

    /// The word read off the leaves from left to right.
    pub fn foliage(&self) -> Word {
        let mut out = Vec::with_capacity(self.len());
        self.push_leaves(&mut out);
        Word(out)
    }

    fn push_leaves(&self, out: &mut Vec<Letter>) {
        match self {
            LieTree::Leaf(l) => out.push(*l),
            LieTree::Node(u, v) => {
                u.push_leaves(out);
                v.push_leaves(out);
            }
        }
    }

    /// Count of each letter.
    pub fn content(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for l in self.foliage().letters() {
            c[l.index()] += 1;
        }
        c
    }
}

impl fmt::Display for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieTree::Leaf(l) => write!(f, "{l}"),
            LieTree::Node(u, v) => write!(f, "[{u},{v}]"),
        }
    }
}

/// Parses `A`, `[X,Y]`, `H12` and the left-normed shorthand `[BAC]`.
impl std::str::FromStr for LieTree {
    type Err = HallError;

    fn from_str(s: &str) -> Result<Self, HallError> {
        let mut p = TreeParser { src: s, pos: 0 };
        let t = p.tree()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }
}

struct TreeParser<'a> {
    src: &'a str,
    pos: usize,
}

impl TreeParser<'_> {
    fn err(&self, m: &str) -> HallError {
        HallError::Syntax {
            offset: self.pos,
            message: m.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn tree(&mut self) -> Result<LieTree, HallError> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let first = self.tree()?;
                self.skip_ws();
                match self.peek() {
                    Some(',') => {
                        self.pos += 1;
                        let second = self.tree()?;
                        self.skip_ws();
                        if self.peek() != Some(']') {
                            return Err(self.err("expected ']'"));
                        }
                        self.pos += 1;
                        Ok(LieTree::node(first, second))
                    }
                    _ => {
                        let mut acc = first;
                        loop {
                            self.skip_ws();
                            if self.peek() == Some(']') {
                                self.pos += 1;
                                return Ok(acc);
                            }
                            let next = self.tree()?;
                            acc = LieTree::node(acc, next);
                        }
                    }
                }
            }
            Some('H') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: usize = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| self.err("expected Hall index"))?;
                HallBasis::standard()
                    .get(n)
                    .map(|e| e.tree.clone())
                    .ok_or(HallError::UnknownIndex(n))
            }
            Some(c) => match Letter::from_char(c) {
                Some(l) => {
                    self.pos += 1;
                    Ok(LieTree::Leaf(l))
                }
                None => Err(self.err("expected letter, 'H' or '['")),
            },
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// The order on Lie monomials: shorter first, letters `A < B < C`, equal-length
/// brackets compared by their right factors, then by their left factors.
pub fn lie_compare(u: &LieTree, v: &LieTree) -> Ordering {
    let (lu, lv) = (u.len(), v.len());
    if lu != lv {
        return lu.cmp(&lv);
    }
    match (u, v) {
        (LieTree::Leaf(a), LieTree::Leaf(b)) => a.cmp(b),
        (LieTree::Node(x1, y1), LieTree::Node(x2, y2)) => {
            lie_compare(y1, y2).then_with(|| lie_compare(x1, x2))
        }
        (LieTree::Leaf(_), LieTree::Node(..)) => Ordering::Less,
        (LieTree::Node(..), LieTree::Leaf(_)) => Ordering::Greater,
    }
}

pub fn is_hall(t: &LieTree) -> bool {
    match t {
        LieTree::Leaf(_) => true,
        LieTree::Node(u, v) => {
            if !is_hall(u) || !is_hall(v) || lie_compare(u, v) != Ordering::Greater {
                return false;
            }
            match u.children() {
                None => true,
                Some((_, y)) => lie_compare(y, v) != Ordering::Greater,
            }
        }
    }
}

pub fn left_normed(w: &Word) -> Result<LieTree, HallError> {
    let mut it = w.letters().iter();
    let first = it.next().ok_or(HallError::EmptyWord)?;
    Ok(it.fold(LieTree::Leaf(*first), |acc, &l| {
        LieTree::node(acc, LieTree::Leaf(l))
    }))
}

pub fn expand(t: &LieTree) -> FreeElement {
    match t {
        LieTree::Leaf(l) => FreeElement::letter(*l),
        LieTree::Node(u, v) => expand(u).bracket(&expand(v)),
    }
}

#[derive(Clone, Debug)]
pub struct HallElement {
    pub index: usize,
    pub tree: LieTree,
    pub length: usize,
    /// Indices of `U` and `V` for `[U,V]`; `None` for letters.
    pub children: Option<(usize, usize)>,
}

/// The Hall basis up to a fixed length, with expansions and a rewriting cache.
pub struct HallBasis {
    max_len: usize,
    elements: Vec<HallElement>,
    by_tree: HashMap<LieTree, usize>,
    by_children: HashMap<(usize, usize), usize>,
    expansions: Vec<OnceLock<FreeElement>>,
    length_start: Vec<usize>,
    memo: Mutex<HashMap<(usize, usize), LieSeries>>,
}

impl fmt::Debug for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HallBasis")
            .field("max_len", &self.max_len)
            .field("len", &self.elements.len())
            .finish()
    }
}

impl HallBasis {
    pub fn generate(max_len: usize) -> Self {
        assert!(max_len >= 1);
        let mut elements: Vec<HallElement> = Vec::new();
        let mut by_children = HashMap::new();
        let mut length_start = vec![1, 1];
        for l in Letter::ALL {
            elements.push(HallElement {
                index: elements.len() + 1,
                tree: LieTree::Leaf(l),
                length: 1,
                children: None,
            });
        }
        for n in 2..=max_len {
            length_start.push(elements.len() + 1);
            let mut fresh: Vec<(usize, usize)> = Vec::new();
            for u in &elements {
                if u.length >= n {
                    continue;
                }
                for v in &elements {
                    if u.length + v.length != n || u.index <= v.index {
                        continue;
                    }
                    let ok = match u.children {
                        None => true,
                        Some((_, y)) => y <= v.index,
                    };
                    if ok {
                        fresh.push((u.index, v.index));
                    }
                }
            }
            fresh.sort_by_key(|&(u, v)| (v, u));
            for (u, v) in fresh {
                let index = elements.len() + 1;
                let tree = LieTree::node(elements[u - 1].tree.clone(), elements[v - 1].tree.clone());
                by_children.insert((u, v), index);
                elements.push(HallElement {
                    index,
                    tree,
                    length: n,
                    children: Some((u, v)),
                });
            }
        }
        length_start.push(elements.len() + 1);
        let by_tree = elements.iter().map(|e| (e.tree.clone(), e.index)).collect();
        let expansions = (0..elements.len()).map(|_| OnceLock::new()).collect();
        HallBasis {
            max_len,
            elements,
            by_tree,
            by_children,
            expansions,
            length_start,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Shared basis of all Hall elements of length at most [`STANDARD_MAX_LEN`].
    pub fn standard() -> &'static HallBasis {
        static BASIS: OnceLock<HallBasis> = OnceLock::new();
        BASIS.get_or_init(|| HallBasis::generate(STANDARD_MAX_LEN))
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HallElement] {
        &self.elements
    }

    /// Elements of exactly length `n`, in index order.
    pub fn of_length(&self, n: usize) -> &[HallElement] {
        if n == 0 || n > self.max_len {
            return &[];
        }
        &self.elements[self.length_start[n] - 1..self.length_start[n + 1] - 1]
    }

    pub fn get(&self, index: usize) -> Option<&HallElement> {
        index.checked_sub(1).and_then(|i| self.elements.get(i))
    }

    pub fn index_of(&self, t: &LieTree) -> Option<usize> {
        self.by_tree.get(t).copied()
    }

    pub fn tree(&self, index: usize) -> Result<&LieTree, HallError> {
        self.get(index).map(|e| &e.tree).ok_or(HallError::UnknownIndex(index))
    }

    /// Cached expansion of the Hall element with the given index.
    pub fn expansion(&self, index: usize) -> Result<&FreeElement, HallError> {
        let e = self.get(index).ok_or(HallError::UnknownIndex(index))?;
        Ok(self.expansions[index - 1].get_or_init(|| match e.children {
            None => expand(&e.tree),
            Some((u, v)) => {
                let fu = self.expansion(u).expect("child index");
                let fv = self.expansion(v).expect("child index");
                fu.bracket(fv)
            }
        }))
    }

    pub fn series_to_free(&self, s: &LieSeries) -> Result<FreeElement, HallError> {
        let mut out = FreeElement::zero();
        for (&i, c) in &s.terms {
            out = &out + &self.expansion(i)?.scale(c);
        }
        Ok(out)
    }

    /// Hall coordinates of a formal linear combination of bracket trees.
    pub fn rewrite(&self, expr: &[(LieTree, RatFunc)]) -> Result<LieSeries, HallError> {
        let mut budget = REWRITE_BUDGET;
        let mut out = LieSeries::zero();
        for (t, c) in expr {
            let s = self.rewrite_tree(t, &mut budget)?;
            out.add_scaled(&s, c);
        }
        Ok(out)
    }

    pub fn rewrite_tree_alone(&self, t: &LieTree) -> Result<LieSeries, HallError> {
        self.rewrite(&[(t.clone(), RatFunc::one())])
    }

    fn rewrite_tree(&self, t: &LieTree, budget: &mut usize) -> Result<LieSeries, HallError> {
        if let Some(i) = self.index_of(t) {
            return Ok(LieSeries::single(i));
        }
        match t {
            LieTree::Leaf(_) => unreachable!("letters are Hall elements"),
            LieTree::Node(u, v) => {
                let su = self.rewrite_tree(u, budget)?;
                let sv = self.rewrite_tree(v, budget)?;
                self.bracket_series(&su, &sv, budget)
            }
        }
    }

    /// Bracket of two Hall series, expressed in Hall coordinates.
    pub fn bracket(&self, a: &LieSeries, b: &LieSeries) -> Result<LieSeries, HallError> {
        let mut budget = REWRITE_BUDGET;
        self.bracket_series(a, b, &mut budget)
    }

    fn bracket_series(&self, a: &LieSeries, b: &LieSeries, budget: &mut usize) -> Result<LieSeries, HallError> {
        let mut out = LieSeries::zero();
        for (&i, ci) in &a.terms {
            for (&j, cj) in &b.terms {
                let s = self.bracket_hall(i, j, budget)?;
                out.add_scaled(&s, &(ci * cj));
            }
        }
        Ok(out)
    }

    fn bracket_hall(&self, u: usize, v: usize, budget: &mut usize) -> Result<LieSeries, HallError> {
        if u == v {
            return Ok(LieSeries::zero());
        }
        if u < v {
            return Ok(-&self.bracket_hall(v, u, budget)?);
        }
        let len = self.elements[u - 1].length + self.elements[v - 1].length;
        if len > self.max_len {
            return Err(HallError::TooLong {
                len,
                max: self.max_len,
            });
        }
        if let Some(&w) = self.by_children.get(&(u, v)) {
            return Ok(LieSeries::single(w));
        }
        if let Some(s) = self.memo.lock().unwrap().get(&(u, v)) {
            return Ok(s.clone());
        }
        *budget = budget.checked_sub(1).ok_or(HallError::BudgetExceeded)?;
        let (x, y) = self.elements[u - 1]
            .children
            .expect("a non-Hall bracket [u,v] with u > v has composite u");
        debug_assert!(y > v);
        // [[x,y],v] = [[x,v],y] + [x,[y,v]]
        let xv = self.bracket_hall(x, v, budget)?;
        let first = self.bracket_series(&xv, &LieSeries::single(y), budget)?;
        let yv = self.bracket_hall(y, v, budget)?;
        let second = self.bracket_series(&LieSeries::single(x), &yv, budget)?;
        let result = &first + &second;
        self.memo.lock().unwrap().insert((u, v), result.clone());
        Ok(result)
    }

    /// Hall coordinates of `f` found by solving a linear system in the free algebra.
    pub fn coords_by_solve(&self, f: &FreeElement) -> Result<LieSeries, HallError> {
        let mut out = LieSeries::zero();
        let Some(deg) = f.degree() else {
            return Ok(out);
        };
        if deg > self.max_len {
            return Err(HallError::TooLong {
                len: deg,
                max: self.max_len,
            });
        }
        for n in 0..=deg {
            let part = f.homogeneous_part(n);
            if part.is_zero() {
                continue;
            }
            if n == 0 {
                return Err(HallError::NotInLie);
            }
            let family: Vec<&FreeElement> = self
                .of_length(n)
                .iter()
                .map(|e| self.expansion(e.index))
                .collect::<Result<_, _>>()?;
            let mut labels: Vec<Word> = family.iter().flat_map(|e| e.terms().map(|(w, _)| w.clone())).collect();
            labels.extend(part.terms().map(|(w, _)| w.clone()));
            labels.sort();
            let basis = BasisIndex::new(labels);
            let fam: Vec<FreeElement> = family.into_iter().cloned().collect();
            match in_span(&part, &fam, &basis) {
                Ok(coords) => {
                    for (e, c) in self.of_length(n).iter().zip(coords) {
                        out.add_term(e.index, c);
                    }
                }
                Err(LinalgError::NotInSpan) => return Err(HallError::NotInLie),
                Err(e) => unreachable!("basis covers all labels: {e}"),
            }
        }
        Ok(out)
    }
}

pub fn hall_rewrite(expr: &[(LieTree, RatFunc)]) -> Result<LieSeries, HallError> {
    HallBasis::standard().rewrite(expr)
}

pub fn hall_coords_by_solve(f: &FreeElement) -> Result<LieSeries, HallError> {
    HallBasis::standard().coords_by_solve(f)
}

/// A finite combination of Hall elements, keyed by index.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct LieSeries {
    terms: BTreeMap<usize, RatFunc>,
}

impl LieSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(index: usize) -> Self {
        Self::term(index, RatFunc::one())
    }

    pub fn term(index: usize, c: RatFunc) -> Self {
        let mut s = Self::zero();
        s.add_term(index, c);
        s
    }

    pub fn add_term(&mut self, index: usize, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&index) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&index);
        } else {
            self.terms.insert(index, sum);
        }
    }

    fn add_scaled(&mut self, other: &LieSeries, c: &RatFunc) {
        for (&i, x) in &other.terms {
            self.add_term(i, x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &RatFunc)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn coeff(&self, index: usize) -> RatFunc {
        self.terms.get(&index).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &RatFunc) -> LieSeries {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }
}

impl std::ops::Add for &LieSeries {
    type Output = LieSeries;
    fn add(self, rhs: &LieSeries) -> LieSeries {
        let mut out = self.clone();
        out.add_scaled(rhs, &RatFunc::one());
        out
    }
}

impl std::ops::Sub for &LieSeries {
    type Output = LieSeries;
    fn sub(self, rhs: &LieSeries) -> LieSeries {
        let mut out = self.clone();
        out.add_scaled(rhs, &RatFunc::from_i64(-1));
        out
    }
}

impl std::ops::Neg for &LieSeries {
    type Output = LieSeries;
    fn neg(self) -> LieSeries {
        self.scale(&RatFunc::from_i64(-1))
    }
}

impl SparseVector for LieSeries {
    type Label = usize;
    fn sparse_entries(&self) -> Vec<(usize, RatFunc)> {
        self.terms.iter().map(|(i, c)| (*i, c.clone())).collect()
    }
}

impl SparseVector for FreeElement {
    type Label = Word;
    fn sparse_entries(&self) -> Vec<(Word, RatFunc)> {
        self.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
    }
}

impl fmt::Display for LieSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} * H{}", c.coeff_string(), i)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn t(s: &str) -> LieTree {
        s.parse().unwrap()
    }

    fn basis() -> &'static HallBasis {
        HallBasis::standard()
    }

    #[test]
    fn witt_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| basis().of_length(n).len()).collect();
        assert_eq!(counts, vec![3, 3, 8, 18, 48, 116, 312]);
        assert_eq!(HallBasis::generate(4).len(), 32);
        assert_eq!(HallBasis::generate(5).len(), 80);
    }

    #[test]
    fn known_indices() {
        let b = basis();
        let cases = [
            (4, "[B,A]"),
            (5, "[C,A]"),
            (6, "[C,B]"),
            (12, "[[B,A],C]"),
            (18, "[[[C,A],A],B]"),
            (24, "[[[B,A],B],C]"),
            (30, "[[C,A],[B,A]]"),
            (31, "[[C,B],[B,A]]"),
            (57, "[[[B,A],A],[B,A]]"),
            (72, "[[[C,B],C],[C,A]]"),
        ];
        for (i, s) in cases {
            assert_eq!(b.tree(i).unwrap(), &t(s), "H{i}");
        }
        assert_eq!(t("H12"), t("[BAC]"));
    }

    #[test]
    fn order_and_hall_examples() {
        assert_eq!(lie_compare(&t("[B,A]"), &t("[C,A]")), Ordering::Less);
        assert_eq!(lie_compare(&t("C"), &t("[B,A]")), Ordering::Less);
        assert_eq!(lie_compare(&t("[C,A]"), &t("[C,A]")), Ordering::Equal);
        assert!(is_hall(&t("[[B,A],C]")));
        assert!(!is_hall(&t("[A,B]")));
        assert!(is_hall(&t("[[C,B],[B,A]]")));
        for e in basis().elements() {
            assert!(is_hall(&e.tree));
        }
    }

    #[test]
    fn left_normed_examples() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(left_normed(&w("BAC")).unwrap(), t("[[B,A],C]"));
        assert_eq!(left_normed(&w("A")).unwrap(), t("A"));
        assert_eq!(left_normed(&w("CAAB")).unwrap(), t("[[[C,A],A],B]"));
        assert_eq!(left_normed(&Word::empty()), Err(HallError::EmptyWord));
    }

    #[test]
    fn expand_examples() {
        let f = |s: &str| FreeElement::word(s.parse().unwrap());
        assert_eq!(expand(&t("[B,A]")), &f("BA") - &f("AB"));
        let want = &(&(&f("BAC") - &f("ABC")) - &f("CBA")) + &f("CAB");
        assert_eq!(expand(&t("[[B,A],C]")), want);
        for n in 1..=5 {
            for e in basis().of_length(n) {
                let ex = basis().expansion(e.index).unwrap();
                assert_eq!(ex, &expand(&e.tree));
                assert_eq!(ex.theta(), -ex);
                let (_, c) = ex.terms().max_by(|a, b| a.0.letters().cmp(b.0.letters())).unwrap();
                assert!(c.is_one() || (-c).is_one(), "H{}", e.index);
            }
        }
    }

    #[test]
    fn rewrite_examples() {
        assert_eq!(
            basis().rewrite_tree_alone(&t("[A,B]")).unwrap(),
            LieSeries::term(4, RatFunc::from_i64(-1))
        );
        assert_eq!(
            basis().rewrite_tree_alone(&t("[[B,A],[C,A]]")).unwrap(),
            LieSeries::term(30, RatFunc::from_i64(-1))
        );
    }

    #[test]
    fn solve_examples() {
        let f = |s: &str| FreeElement::word(s.parse().unwrap());
        assert_eq!(
            hall_coords_by_solve(&(&f("AB") - &f("BA"))).unwrap(),
            LieSeries::term(4, RatFunc::from_i64(-1))
        );
        assert_eq!(hall_coords_by_solve(&(&f("AB") + &f("BA"))), Err(HallError::NotInLie));
    }

    fn random_tree(rng: &mut ChaCha8Rng, len: usize) -> LieTree {
        if len == 1 {
            return LieTree::Leaf(Letter::ALL[rng.gen_range(0..3)]);
        }
        let k = rng.gen_range(1..len);
        LieTree::node(random_tree(rng, k), random_tree(rng, len - k))
    }

    #[test]
    fn rewrite_round_trip_and_agrees_with_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for case in 0..100 {
            let terms = rng.gen_range(1..=3);
            let expr: Vec<(LieTree, RatFunc)> = (0..terms)
                .map(|_| {
                    let len = rng.gen_range(1..=6);
                    let c = RatFunc::monomial(rng.gen_range(-3..=3), rng.gen_range(-2..=2));
                    (random_tree(&mut rng, len), c)
                })
                .collect();
            let s = basis().rewrite(&expr).unwrap();
            let direct = expr
                .iter()
                .fold(FreeElement::zero(), |acc, (t, c)| &acc + &expand(t).scale(c));
            assert_eq!(basis().series_to_free(&s).unwrap(), direct);
            if case % 5 == 0 {
                assert_eq!(basis().coords_by_solve(&direct).unwrap(), s);
            }
        }
    }

    #[test]
    fn regeneration_is_stable() {
        let a = HallBasis::generate(5);
        let b = HallBasis::generate(5);
        for (x, y) in a.elements().iter().zip(b.elements()) {
            assert_eq!(x.tree, y.tree);
        }
        for (x, y) in a.elements().iter().zip(basis().elements()) {
            assert_eq!(x.tree, y.tree);
        }
    }
}
