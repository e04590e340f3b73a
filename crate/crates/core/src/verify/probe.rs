use crate::expr::{self, parse_expr};
use crate::freealg::FreeElement;
use crate::linalg::{in_span, rank_of, BasisIndex};
use crate::scalar::RatFunc;
use crate::uaw::{Engine, NormalWord, UawElement};

/// Collects failures and pivots while a check runs.
pub(crate) struct Probe<'a> {
    pub engine: &'a Engine,
    failures: Vec<String>,
    pivots: Vec<RatFunc>,
}

/// Columns in leading-term order: descending degree, then descending exponents.
pub(crate) fn leading_basis(vectors: &[UawElement]) -> BasisIndex<NormalWord> {
    BasisIndex::from_support(vectors, |a, b| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)))
}

impl<'a> Probe<'a> {
    pub fn new(engine: &'a Engine) -> Self {
        Probe {
            engine,
            failures: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn finish(self) -> (Vec<String>, Vec<RatFunc>) {
        (self.failures, self.pivots)
    }

    pub fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    pub fn ensure(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    pub fn d(&self, src: &str) -> UawElement {
        expr::uaw(self.engine, src)
    }

    pub fn scalar(&self, src: &str) -> RatFunc {
        parse_expr(src)
            .ok()
            .and_then(|e| e.scalar_value().ok().flatten())
            .unwrap_or_else(|| panic!("{src}: not a scalar"))
    }

    pub fn free_eq(&mut self, label: &str, lhs: &str, rhs: &str) {
        let d = &expr::free(lhs) - &expr::free(rhs);
        self.free_zero(label, &d);
    }

    pub fn free_zero(&mut self, label: &str, d: &FreeElement) {
        if !d.is_zero() {
            self.failures.push(format!("{label}: difference {d}"));
        }
    }

    pub fn uaw_eq(&mut self, label: &str, lhs: &str, rhs: &str) {
        let d = &self.d(lhs) - &self.d(rhs);
        self.uaw_zero(label, &d);
    }

    pub fn uaw_zero(&mut self, label: &str, d: &UawElement) {
        if !d.is_zero() {
            self.failures.push(format!("{label}: difference {d}"));
        }
    }

    /// `x - c·m ∈ Δ_n` for the elements written as `x`, `m` and the scalar `c`.
    pub fn leading(&mut self, label: &str, x: &str, c: &str, m: &str, n: u32) {
        let x = self.d(x);
        let m = self.d(m).scale(&self.scalar(c));
        self.leading_of(label, &x, &m, n);
    }

    pub fn leading_of(&mut self, label: &str, x: &UawElement, m: &UawElement, n: u32) {
        let d = x - m;
        if !d.in_filtration(n) {
            let top = d.filtration_degree().unwrap_or(0);
            self.failures.push(format!(
                "{label}: not in filtration {n}; degree {top} part {}",
                d.degree_part(top)
            ));
        }
    }

    /// Rank of `vectors`; optionally records the pivots for the factor report.
    pub fn rank(&mut self, vectors: &[UawElement], record: bool) -> usize {
        let basis = leading_basis(vectors);
        let el = rank_of(vectors, &basis).expect("basis covers the support");
        if record {
            self.pivots.extend(el.pivots);
        }
        el.rank
    }

    pub fn expect_rank(&mut self, label: &str, vectors: &[UawElement], expected: usize, record: bool) {
        let r = self.rank(vectors, record);
        self.ensure(r == expected, || format!("{label}: rank {r}, expected {expected}"));
    }

    pub fn span_coords(&self, target: &UawElement, family: &[UawElement]) -> Option<Vec<RatFunc>> {
        let mut all = family.to_vec();
        all.push(target.clone());
        in_span(target, family, &leading_basis(&all)).ok()
    }
}
