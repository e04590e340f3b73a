use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use super::element::{NormalWord, UawElement};
use super::omega::OmegaWord;
use super::{Central, UawError};
use crate::freealg::{FreeElement, Letter, Word};
use crate::scalar::RatFunc;

/// One of the three rewriting rules `BA → …`, `CA → …`, `CB → …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    BA,
    CA,
    CB,
}

impl Rule {
    pub const ALL: [Rule; 3] = [Rule::BA, Rule::CA, Rule::CB];

    fn of_pair(x: Letter, y: Letter) -> Option<Rule> {
        match (x, y) {
            (Letter::B, Letter::A) => Some(Rule::BA),
            (Letter::C, Letter::A) => Some(Rule::CA),
            (Letter::C, Letter::B) => Some(Rule::CB),
            _ => None,
        }
    }

    /// The letter of the linear term: `C` for `BA`, `B` for `CA`, `A` for `CB`.
    fn linear_letter(self) -> Letter {
        match self {
            Rule::BA => Letter::C,
            Rule::CA => Letter::B,
            Rule::CB => Letter::A,
        }
    }

    fn central(self) -> NormalWord {
        match self {
            Rule::BA => NormalWord::new(0, 0, 0, 0, 0, 1),
            Rule::CA => NormalWord::new(0, 0, 0, 0, 1, 0),
            Rule::CB => NormalWord::new(0, 0, 0, 1, 0, 0),
        }
    }
}

/// Coefficients of the three rules, each `[swapped word, linear letter, central]`:
///
/// ```text
/// BA = c0 AB + c1 C + c2 γ
/// CA = c0 AC + c1 B + c2 β
/// CB = c0 BC + c1 A + c2 α
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionRules {
    pub ba: [RatFunc; 3],
    pub ca: [RatFunc; 3],
    pub cb: [RatFunc; 3],
}

impl ReductionRules {
    pub fn standard() -> Self {
        let q = RatFunc::q;
        let qi = || RatFunc::q_pow(-1);
        let qp = RatFunc::q_plus;
        let qm = RatFunc::q_minus;
        ReductionRules {
            ba: [RatFunc::q_pow(2), q() * qp() * qm(), -(q() * qm())],
            ca: [RatFunc::q_pow(-2), -(qi() * qp() * qm()), qi() * qm()],
            cb: [RatFunc::q_pow(2), q() * qp() * qm(), -(q() * qm())],
        }
    }

    pub fn coeffs(&self, rule: Rule) -> &[RatFunc; 3] {
        match rule {
            Rule::BA => &self.ba,
            Rule::CA => &self.ca,
            Rule::CB => &self.cb,
        }
    }

    fn coeffs_mut(&mut self, rule: Rule) -> &mut [RatFunc; 3] {
        match rule {
            Rule::BA => &mut self.ba,
            Rule::CA => &mut self.ca,
            Rule::CB => &mut self.cb,
        }
    }

    /// A copy with `delta` added to one coefficient.
    pub fn perturbed(&self, rule: Rule, slot: usize, delta: &RatFunc) -> Self {
        let mut out = self.clone();
        let c = &mut out.coeffs_mut(rule)[slot];
        *c = &*c + delta;
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

type Terms = Arc<Vec<(NormalWord, RatFunc)>>;

fn accumulate(acc: &mut HashMap<NormalWord, RatFunc>, w: NormalWord, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&w) {
        Some(old) => {
            *old = &*old + &c;
            if old.is_zero() {
                acc.remove(&w);
            }
        }
        None => {
            acc.insert(w, c);
        }
    }
}

fn finish(acc: HashMap<NormalWord, RatFunc>) -> Vec<(NormalWord, RatFunc)> {
    let mut v: Vec<_> = acc.into_iter().collect();
    v.sort_by_key(|a| a.0);
    v
}

fn abc_of(l: Letter) -> NormalWord {
    match l {
        Letter::A => NormalWord::abc(1, 0, 0),
        Letter::B => NormalWord::abc(0, 1, 0),
        Letter::C => NormalWord::abc(0, 0, 1),
    }
}

/// Multiplication in `Δ` for a fixed set of reduction rules, with memoized
/// products of normal words.
pub struct Engine {
    rules: ReductionRules,
    rmul_memo: RwLock<HashMap<(NormalWord, Letter), Terms>>,
    mul_memo: RwLock<HashMap<(NormalWord, NormalWord), Terms>>,
    omega_powers: RwLock<Vec<UawElement>>,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").field("rules", &self.rules).finish()
    }
}

impl Engine {
    pub fn new(rules: ReductionRules) -> Self {
        Engine {
            rules,
            rmul_memo: RwLock::new(HashMap::new()),
            mul_memo: RwLock::new(HashMap::new()),
            omega_powers: RwLock::new(Vec::new()),
        }
    }

    /// The engine for the defining relations of `Δ`.
    pub fn standard() -> &'static Engine {
        static ENGINE: OnceLock<Engine> = OnceLock::new();
        ENGINE.get_or_init(|| Engine::new(ReductionRules::standard()))
    }

    pub fn rules(&self) -> &ReductionRules {
        &self.rules
    }

    /// `A^i B^j C^k · X` for a pure `ABC` word.
    fn rmul(&self, w: NormalWord, x: Letter) -> Terms {
        if let Some(t) = self.rmul_memo.read().unwrap().get(&(w, x)) {
            return t.clone();
        }
        let NormalWord { i, j, k, .. } = w;
        let mut acc = HashMap::new();
        let single = |n: NormalWord| Arc::new(vec![(n, RatFunc::one())]);
        let out = match x {
            Letter::C => single(NormalWord::abc(i, j, k + 1)),
            Letter::B if k == 0 => single(NormalWord::abc(i, j + 1, 0)),
            Letter::A if j == 0 && k == 0 => single(NormalWord::abc(i + 1, 0, 0)),
            _ => {
                // peel off the last letter Y of w and rewrite Y X
                let (base, rule, swapped_last) = if k > 0 {
                    (NormalWord::abc(i, j, k - 1), if x == Letter::A { Rule::CA } else { Rule::CB }, Letter::C)
                } else {
                    (NormalWord::abc(i, j - 1, 0), Rule::BA, Letter::B)
                };
                let [c0, c1, c2] = self.rules.coeffs(rule).clone();
                let first = self.rmul(base, x);
                for (v, d) in self.right_mul_terms(&first, swapped_last) {
                    accumulate(&mut acc, v, &d * &c0);
                }
                for (v, d) in self.right_mul_terms(&[(base, RatFunc::one())], rule.linear_letter()) {
                    accumulate(&mut acc, v, &d * &c1);
                }
                accumulate(&mut acc, base.plus(&rule.central()), c2);
                Arc::new(finish(acc))
            }
        };
        self.rmul_memo.write().unwrap().insert((w, x), out.clone());
        out
    }

    fn right_mul_terms(&self, terms: &[(NormalWord, RatFunc)], x: Letter) -> Vec<(NormalWord, RatFunc)> {
        let mut acc = HashMap::new();
        for (w, c) in terms {
            let g = w.greek_part();
            for (v, d) in self.rmul(w.abc_part(), x).iter() {
                accumulate(&mut acc, v.plus(&g), c * d);
            }
        }
        finish(acc)
    }

    /// Product of two pure `ABC` words.
    fn mul_abc(&self, u: NormalWord, v: NormalWord) -> Terms {
        if v.i + v.j + v.k == 0 {
            return Arc::new(vec![(u, RatFunc::one())]);
        }
        if let Some(t) = self.mul_memo.read().unwrap().get(&(u, v)) {
            return t.clone();
        }
        // u · v = (u · v') · X where X is the last letter of v
        let (prefix, last) = if v.k > 0 {
            (NormalWord::abc(v.i, v.j, v.k - 1), Letter::C)
        } else if v.j > 0 {
            (NormalWord::abc(v.i, v.j - 1, 0), Letter::B)
        } else {
            (NormalWord::abc(v.i - 1, 0, 0), Letter::A)
        };
        let head = self.mul_abc(u, prefix);
        let out = Arc::new(self.right_mul_terms(&head, last));
        self.mul_memo.write().unwrap().insert((u, v), out.clone());
        out
    }

    pub fn mul(&self, x: &UawElement, y: &UawElement) -> UawElement {
        let mut acc = HashMap::new();
        for (u, cu) in x.terms() {
            for (v, cv) in y.terms() {
                let c = cu * cv;
                let g = u.greek_part().plus(&v.greek_part());
                for (w, d) in self.mul_abc(u.abc_part(), v.abc_part()).iter() {
                    accumulate(&mut acc, w.plus(&g), &c * d);
                }
            }
        }
        UawElement::from_terms(acc)
    }

    pub fn mul_all(&self, factors: &[&UawElement]) -> UawElement {
        factors
            .iter()
            .fold(UawElement::one(), |acc, f| self.mul(&acc, f))
    }

    pub fn bracket(&self, x: &UawElement, y: &UawElement) -> UawElement {
        &self.mul(x, y) - &self.mul(y, x)
    }

    pub fn pow(&self, x: &UawElement, n: u32) -> UawElement {
        (0..n).fold(UawElement::one(), |acc, _| self.mul(&acc, x))
    }

    /// Normal form of a word on `A, B, C`.
    pub fn word(&self, w: &[Letter]) -> UawElement {
        let mut terms = vec![(NormalWord::ONE, RatFunc::one())];
        for &l in w {
            terms = self.right_mul_terms(&terms, l);
        }
        UawElement::from_terms(terms)
    }

    pub fn letter(&self, l: Letter) -> UawElement {
        UawElement::monomial(abc_of(l))
    }

    pub fn central(&self, c: Central) -> UawElement {
        match c {
            Central::Alpha => UawElement::monomial(NormalWord::new(0, 0, 0, 1, 0, 0)),
            Central::Beta => UawElement::monomial(NormalWord::new(0, 0, 0, 0, 1, 0)),
            Central::Gamma => UawElement::monomial(NormalWord::new(0, 0, 0, 0, 0, 1)),
            Central::Omega => self.omega(),
        }
    }

    /// Image of a free-algebra element under the canonical map onto `Δ`.
    pub fn from_free(&self, f: &FreeElement) -> UawElement {
        let mut acc = HashMap::new();
        for (w, c) in f.terms() {
            for (v, d) in self.word(w.letters()).terms() {
                accumulate(&mut acc, *v, c * d);
            }
        }
        UawElement::from_terms(acc)
    }

    /// `c · W α^r β^s γ^t` reduced by substituting the leftmost inversion at each step.
    pub fn reduce(&self, w: &Word, greeks: (u32, u32, u32), c: &RatFunc) -> UawElement {
        self.reduce_with(w, greeks, c, Strategy::Leftmost)
    }

    /// Word-level rewriting with an explicit choice of which adjacent inversion to substitute.
    pub fn reduce_with(&self, w: &Word, greeks: (u32, u32, u32), c: &RatFunc, strategy: Strategy) -> UawElement {
        type Key = (usize, usize, Vec<Letter>, [u32; 3]);
        let mut work: BTreeMap<Key, RatFunc> = BTreeMap::new();
        let push = |work: &mut BTreeMap<Key, RatFunc>, letters: Vec<Letter>, g: [u32; 3], c: RatFunc| {
            if c.is_zero() {
                return;
            }
            let key = (letters.len(), Word(letters.clone()).inversion_count(), letters, g);
            match work.get_mut(&key) {
                Some(old) => {
                    *old = &*old + &c;
                    if old.is_zero() {
                        work.remove(&key);
                    }
                }
                None => {
                    work.insert(key, c);
                }
            }
        };
        push(&mut work, w.letters().to_vec(), [greeks.0, greeks.1, greeks.2], c.clone());
        let mut out = UawElement::zero();
        while let Some(((_, _, letters, g), c)) = work.pop_last() {
            let descents = (0..letters.len().saturating_sub(1)).filter(|&p| letters[p] > letters[p + 1]);
            let pos = match strategy {
                Strategy::Leftmost => descents.min(),
                Strategy::Rightmost => descents.max(),
            };
            let Some(p) = pos else {
                let mut n = NormalWord::new(0, 0, 0, g[0], g[1], g[2]);
                for l in &letters {
                    n = n.plus(&abc_of(*l));
                }
                out.add_term(n, c);
                continue;
            };
            let (x, y) = (letters[p], letters[p + 1]);
            let rule = Rule::of_pair(x, y).expect("descent is an inversion pair");
            let [c0, c1, c2] = self.rules.coeffs(rule);
            let mut swapped = letters.clone();
            swapped.swap(p, p + 1);
            push(&mut work, swapped, g, &c * c0);
            let mut lin = letters[..p].to_vec();
            lin.push(rule.linear_letter());
            lin.extend_from_slice(&letters[p + 2..]);
            push(&mut work, lin, g, &c * c1);
            let mut short = letters[..p].to_vec();
            short.extend_from_slice(&letters[p + 2..]);
            let cg = rule.central();
            push(&mut work, short, [g[0] + cg.r, g[1] + cg.s, g[2] + cg.t], &c * c2);
        }
        out
    }

    /// The Casimir element in normal form.
    pub fn omega(&self) -> UawElement {
        self.casimir_expressions().swap_remove(0)
    }

    /// The six expressions of the Casimir element, each reduced to normal form.
    pub fn casimir_expressions(&self) -> Vec<UawElement> {
        use Letter::*;
        // (word, exponent of its q-coefficient, exponents for A^2 B^2 C^2, exponents for Aα Bβ Cγ)
        let table: [([Letter; 3], i32, [i32; 3], [i32; 3]); 6] = [
            ([A, B, C], 1, [2, -2, 2], [1, -1, 1]),
            ([B, C, A], 1, [2, 2, -2], [1, 1, -1]),
            ([C, A, B], 1, [-2, 2, 2], [-1, 1, 1]),
            ([C, B, A], -1, [-2, 2, -2], [-1, 1, -1]),
            ([A, C, B], -1, [-2, -2, 2], [-1, -1, 1]),
            ([B, A, C], -1, [2, -2, -2], [1, -1, -1]),
        ];
        table
            .iter()
            .map(|(w, e, sq, gr)| {
                let mut x = self.word(w).scale(&RatFunc::q_pow(*e));
                for (n, l) in Letter::ALL.iter().enumerate() {
                    x = &x + &self.word(&[*l, *l]).scale(&RatFunc::q_pow(sq[n]));
                    let mut g = [0; 3];
                    g[n] = 1;
                    let lg = self.letter(*l).times_central(&NormalWord::new(0, 0, 0, g[0], g[1], g[2]));
                    x = &x - &lg.scale(&RatFunc::q_pow(gr[n]));
                }
                x
            })
            .collect()
    }

    /// `Ω^l`, cached.
    pub fn omega_pow(&self, l: u32) -> UawElement {
        let l = l as usize;
        if let Some(x) = self.omega_powers.read().unwrap().get(l) {
            return x.clone();
        }
        let mut cache = self.omega_powers.write().unwrap();
        if cache.is_empty() {
            cache.push(UawElement::one());
        }
        let om = self.omega();
        while cache.len() <= l {
            let next = self.mul(cache.last().unwrap(), &om);
            cache.push(next);
        }
        cache[l].clone()
    }

    pub fn from_omega_word(&self, w: &OmegaWord) -> UawElement {
        let abc = UawElement::monomial(NormalWord::abc(w.i, w.j, w.k));
        self.mul(&abc, &self.omega_pow(w.l))
            .times_central(&NormalWord::new(0, 0, 0, w.r, w.s, w.t))
    }

    pub fn from_omega_basis(&self, x: &BTreeMap<OmegaWord, RatFunc>) -> UawElement {
        let mut out = UawElement::zero();
        for (w, c) in x {
            out = &out + &self.from_omega_word(w).scale(c);
        }
        out
    }

    /// Coordinates in the basis `A^i B^j C^k Ω^l α^r β^s γ^t` with `ijk = 0`.
    ///
    /// The top-degree part of `A^i B^j C^k Ω^l` is a single normal word with
    /// coefficient a power of `q`, so the conversion peels off one leading
    /// word at a time.
    pub fn to_omega_basis(&self, x: &UawElement) -> BTreeMap<OmegaWord, RatFunc> {
        let mut rest = x.clone();
        let mut out = BTreeMap::new();
        while let Some((&w, c)) = rest
            .terms()
            .max_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(b.0)))
        {
            let m = w.i.min(w.j).min(w.k);
            let ow = OmegaWord::new(w.i - m, w.j - m, w.k - m, m, w.r, w.s, w.t);
            let image = self.from_omega_word(&ow);
            let lead = image.coeff(&w);
            assert!(!lead.is_zero(), "leading coefficient of {ow} vanished");
            let a = c / &lead;
            rest = &rest - &image.scale(&a);
            out.insert(ow, a);
        }
        out
    }

    pub fn filtration_degree(&self, x: &UawElement) -> Result<u32, UawError> {
        x.filtration_degree()
    }

    /// Applies the automorphism determined by images of `A, B, C` and a permutation of `α, β, γ`.
    fn apply_automorphism(&self, x: &UawElement, images: &[UawElement; 3], perm: [usize; 3]) -> UawElement {
        let mut powers: HashMap<(usize, u32), UawElement> = HashMap::new();
        let mut power = |n: usize, e: u32| -> UawElement {
            if let Some(p) = powers.get(&(n, e)) {
                return p.clone();
            }
            let p = self.pow(&images[n], e);
            powers.insert((n, e), p.clone());
            p
        };
        let mut out = UawElement::zero();
        for (w, c) in x.terms() {
            let pa = power(0, w.i);
            let pb = power(1, w.j);
            let pc = power(2, w.k);
            let mut g = [0u32; 3];
            g[perm[0]] += w.r;
            g[perm[1]] += w.s;
            g[perm[2]] += w.t;
            let prod = self
                .mul_all(&[&pa, &pb, &pc])
                .times_central(&NormalWord::new(0, 0, 0, g[0], g[1], g[2]));
            out = &out + &prod.scale(c);
        }
        out
    }

    /// `ρ: A→B→C→A, α→β→γ→α`.
    pub fn rho(&self, x: &UawElement) -> UawElement {
        let images = [self.letter(Letter::B), self.letter(Letter::C), self.letter(Letter::A)];
        self.apply_automorphism(x, &images, [1, 2, 0])
    }

    /// `σ: A↔B, α↔β, γ fixed, C ↦ C + [A,B]/(q-q^-1)`.
    pub fn sigma(&self, x: &UawElement) -> UawElement {
        let a = self.letter(Letter::A);
        let b = self.letter(Letter::B);
        let inv = RatFunc::q_minus().inv().expect("q - q^-1 is nonzero");
        let sc = &self.letter(Letter::C) + &self.bracket(&a, &b).scale(&inv);
        self.apply_automorphism(x, &[b, a, sc], [1, 0, 2])
    }
}
