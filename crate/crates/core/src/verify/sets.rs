use crate::freealg::{Letter, Word};
use crate::hall::{left_normed, HallBasis, HallElement, HallError};
use crate::uaw::{Engine, NormalWord, UawElement};

/// The Hall elements of length at most `max_len` together with their images in `Δ`.
#[derive(Clone, Debug)]
pub struct StandardMonomialSet {
    max_len: usize,
    elements: Vec<(HallElement, UawElement)>,
}

impl StandardMonomialSet {
    pub fn new(engine: &Engine, max_len: usize) -> Result<Self, HallError> {
        let basis = HallBasis::standard();
        if max_len > basis.max_len() {
            return Err(HallError::TooLong {
                len: max_len,
                max: basis.max_len(),
            });
        }
        let mut elements: Vec<(HallElement, UawElement)> = Vec::new();
        for h in basis.elements().iter().filter(|h| h.length <= max_len) {
            let image = match (h.children, &h.tree) {
                (Some((u, v)), _) => {
                    let x = &elements[u - 1].1;
                    let y = &elements[v - 1].1;
                    engine.bracket(x, y)
                }
                (None, t) => engine.word(t.foliage().letters()),
            };
            debug_assert_eq!(h.index, elements.len() + 1);
            elements.push((h.clone(), image));
        }
        Ok(StandardMonomialSet { max_len, elements })
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

    pub fn elements(&self) -> &[(HallElement, UawElement)] {
        &self.elements
    }

    /// The image of `H<index>`.
    pub fn image(&self, index: usize) -> Option<&UawElement> {
        index.checked_sub(1).and_then(|i| self.elements.get(i)).map(|e| &e.1)
    }

    pub fn images(&self) -> Vec<UawElement> {
        self.elements.iter().map(|e| e.1.clone()).collect()
    }
}

/// Monomials `α^r β^s γ^t` with `r + s + t <= m`, in increasing degree.
pub fn greek_monomials(m: u32) -> Vec<NormalWord> {
    let mut out = Vec::new();
    for d in 0..=m {
        for r in (0..=d).rev() {
            for s in (0..=d - r).rev() {
                out.push(NormalWord::new(0, 0, 0, r, s, d - r - s));
            }
        }
    }
    out
}

fn greek_label(g: &NormalWord) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("al", g.r), ("be", g.s), ("ga", g.t)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// A labelled list of elements of `Δ`.
#[derive(Clone, Debug, Default)]
pub struct FamilySet {
    labels: Vec<String>,
    vectors: Vec<UawElement>,
}

impl FamilySet {
    pub fn push(&mut self, label: impl Into<String>, v: UawElement) {
        self.labels.push(label.into());
        self.vectors.push(v);
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vectors(&self) -> &[UawElement] {
        &self.vectors
    }

    pub fn get(&self, label: &str) -> Option<&UawElement> {
        self.labels.iter().position(|l| l == label).map(|i| &self.vectors[i])
    }

    /// Every member times every central monomial of degree at most `m`.
    pub fn times_greeks(&self, m: u32) -> FamilySet {
        let mut out = FamilySet::default();
        for g in greek_monomials(m) {
            for (l, v) in self.labels.iter().zip(&self.vectors) {
                if g == NormalWord::ONE {
                    out.push(l.clone(), v.clone());
                } else {
                    out.push(format!("{l}*{}", greek_label(&g)), v.times_central(&g));
                }
            }
        }
        out
    }

    /// Replaces the members labelled `remove` by the given new members.
    pub fn replace(&mut self, remove: &[&str], add: Vec<(String, UawElement)>) -> Result<(), String> {
        for r in remove {
            let i = self
                .labels
                .iter()
                .position(|l| l == r)
                .ok_or_else(|| format!("{r} is not in the family"))?;
            self.labels.remove(i);
            self.vectors.remove(i);
        }
        for (l, v) in add {
            self.push(l, v);
        }
        Ok(())
    }
}

/// The image of a left-normed bracket, labelled by its Hall index when it is a Hall element.
fn left_normed_member(engine: &Engine, letters: &[Letter]) -> (String, UawElement) {
    let mut x = engine.letter(letters[0]);
    for l in &letters[1..] {
        x = engine.bracket(&x, &engine.letter(*l));
    }
    let word = Word(letters.to_vec());
    let label = left_normed(&word)
        .ok()
        .and_then(|t| HallBasis::standard().index_of(&t))
        .map(|i| format!("H{i}"))
        .unwrap_or_else(|| {
            let s: String = letters.iter().map(|l| l.as_char()).collect();
            format!("[{s}]")
        });
    (label, x)
}

fn run(parts: &[(Letter, u32)]) -> Vec<Letter> {
    parts
        .iter()
        .flat_map(|&(l, e)| std::iter::repeat_n(l, e as usize))
        .collect()
}

/// The families whose leading terms are pairwise distinct: `1, A, B, C`, `H10, H12`,
/// `H18, H24, H32`, then `[BA^i], [BA^a B^j], [CA^i], [CA^a C^k], [CB^j], [CB^a C^k]`
/// for `1 <= i, j, k <= n` and `1 <= a <= 2`. With `extended`, also the degree-5
/// Omega-leading monomials `H36, H38, H45, H46, H51, H72` and `a = 3`.
pub fn leading_family(engine: &Engine, set: &StandardMonomialSet, n: u32, extended: bool) -> FamilySet {
    use Letter::{A, B, C};
    let mut out = FamilySet::default();
    out.push("1", UawElement::one());
    for l in Letter::ALL {
        out.push(l.as_char().to_string(), engine.letter(l));
    }
    let mut fixed = vec![10, 12, 18, 24, 32];
    if extended {
        fixed.extend([36, 38, 45, 46, 51, 72]);
    }
    for h in fixed {
        out.push(format!("H{h}"), set.image(h).expect("length <= 5").clone());
    }
    let top = if extended { 3 } else { 2 };
    for i in 1..=n {
        let mut words = vec![run(&[(B, 1), (A, i)]), run(&[(C, 1), (A, i)]), run(&[(C, 1), (B, i)])];
        for a in 1..=top {
            words.push(run(&[(B, 1), (A, a), (B, i)]));
            words.push(run(&[(C, 1), (A, a), (C, i)]));
            words.push(run(&[(C, 1), (B, a), (C, i)]));
        }
        for w in words {
            let (l, v) = left_normed_member(engine, &w);
            out.push(l, v);
        }
    }
    out
}
