//! Named, parameterized checks of identities in the free algebra and in `Δ`,
//! with a suite runner and text/JSON reports.

mod checks;
mod probe;
mod sets;

pub use checks::{confluent_on, h0_series, i0_expr, i0_series, random_words, CONFLUENCE_SEED, H0_EXPR, L5_DEPENDENT};
pub use sets::{greek_monomials, leading_family, FamilySet, StandardMonomialSet};

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::scalar::{factor_report, RatFunc};
use crate::uaw::Engine;
use probe::Probe;

pub type Params = BTreeMap<String, u32>;

/// Cyclotomic orders allowed among elimination pivots when `q^4 ≠ 1` and `q^6 ≠ 1`.
pub const ALLOWED_CYCLOTOMIC_ORDERS: [u32; 7] = [1, 2, 3, 4, 6, 8, 12];

pub const DEFAULT_RANGE: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("bad parameters for `{check}`: {reason}")]
    BadParams { check: String, reason: String },
}

#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub min: u32,
    pub max: u32,
}

const fn p(name: &'static str, min: u32, max: u32) -> ParamSpec {
    ParamSpec { name, min, max }
}

pub struct CheckSpec {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    run: fn(&mut Probe, &Params),
}

impl fmt::Debug for CheckSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CheckSpec")
            .field("name", &self.name)
            .field("params", &self.params)
            .finish()
    }
}

static REGISTRY: &[CheckSpec] = &[
    CheckSpec {
        name: "reduction_rules",
        summary: "BA, CA, CB reduce to the three defining rewrite rules",
        params: &[],
        run: checks::reduction_rules,
    },
    CheckSpec {
        name: "casimir_six_equal",
        summary: "the six Casimir expressions coincide, have degree 3 and are central",
        params: &[],
        run: checks::casimir_six_equal,
    },
    CheckSpec {
        name: "confluence",
        summary: "leftmost and rightmost rewriting agree on all words of length <= 6 and 200 seeded words of length <= 8",
        params: &[],
        run: checks::confluence,
    },
    CheckSpec {
        name: "theta_r_nonzero",
        summary: "theta(r_i) + r_i != 0 in the free algebra for 0 <= i <= 8",
        params: &[],
        run: checks::theta_r_nonzero,
    },
    CheckSpec {
        name: "free_BA",
        summary: "[BA]/(q(q-q^-1)) - (q+q^-1)C = AB - ga in the free algebra",
        params: &[],
        run: checks::free_ba,
    },
    CheckSpec {
        name: "free_CA",
        summary: "[CA]/(q^-1(q-q^-1)) + (q+q^-1)B = be - AC in the free algebra",
        params: &[],
        run: checks::free_ca,
    },
    CheckSpec {
        name: "free_BAA",
        summary: "the expansion of [BAA] in the free algebra",
        params: &[],
        run: checks::free_baa,
    },
    CheckSpec {
        name: "free_BAC",
        summary: "the expansion of [BAC] in the free algebra",
        params: &[],
        run: checks::free_bac,
    },
    CheckSpec {
        name: "free_H4alpha",
        summary: "H4 al/(q+q^-1)^2 = H0 + relation terms in the free algebra",
        params: &[],
        run: checks::free_h4alpha,
    },
    CheckSpec {
        name: "free_I0_identity",
        summary: "I0 = [H0,H4] lies in the ideal of the relations, explicitly",
        params: &[],
        run: checks::free_i0_identity,
    },
    CheckSpec {
        name: "I0_nonzero_hall",
        summary: "I0 has nonzero Hall coordinates exactly on [H31,H4], [H24,H4], H57, H30",
        params: &[],
        run: checks::i0_nonzero_hall,
    },
    CheckSpec {
        name: "filtration_two_gen",
        summary: "leading terms of [BA^i], [CA^i], [CB^j]",
        params: &[p("i", 0, 8), p("j", 0, 8)],
        run: checks::filtration_two_gen,
    },
    CheckSpec {
        name: "filtration_ad_abc",
        summary: "leading terms of [X, A^i B^j C^k] for X = A, B, C",
        params: &[p("i", 0, 8), p("j", 0, 8), p("k", 0, 8)],
        run: checks::filtration_ad_abc,
    },
    CheckSpec {
        name: "filtration_mixed",
        summary: "leading terms of [BA^iB^j], [CA^iC^k], [CB^jC^k] and the Omega-producing families",
        params: &[p("i", 1, 6), p("j", 1, 6), p("k", 1, 6)],
        run: checks::filtration_mixed,
    },
    CheckSpec {
        name: "complement_H10_H12",
        summary: "H10 and H12 in closed form, of filtration degree exactly 2",
        params: &[],
        run: checks::complement_h10_h12,
    },
    CheckSpec {
        name: "omega_leading_H18_H24_H32",
        summary: "H18, H24, H32 have leading terms A Om, B Om, C Om",
        params: &[],
        run: checks::omega_leading,
    },
    CheckSpec {
        name: "delta_six_identities",
        summary: "H4 al, H6 be, H5 ga, H4 be, H6 ga, H5 al in terms of standard Lie monomials",
        params: &[],
        run: checks::delta_six_identities,
    },
    CheckSpec {
        name: "L4_rank",
        summary: "the 32 standard Lie monomials of length <= 4 are independent, as is the replaced family",
        params: &[],
        run: checks::l4_rank,
    },
    CheckSpec {
        name: "aux_independence",
        summary: "the leading-term families, times central monomials of degree <= m, are independent",
        params: &[p("n", 1, 6), p("m", 0, 6)],
        run: checks::aux_independence,
    },
    CheckSpec {
        name: "seven_H5b_H6a",
        summary: "H5 be + H4 ga and H6 al - H4 ga in terms of standard Lie monomials",
        params: &[],
        run: checks::seven_h5b_h6a,
    },
    CheckSpec {
        name: "rel5_four_relations",
        summary: "H44, H69, H74, H79 in terms of the other standard Lie monomials of length <= 5",
        params: &[],
        run: checks::rel5_four_relations,
    },
    CheckSpec {
        name: "L5_rank",
        summary: "the 80 standard Lie monomials of length <= 5 have rank 76",
        params: &[],
        run: checks::l5_rank,
    },
    CheckSpec {
        name: "L5_basis",
        summary: "the 76 retained monomials are a basis of L5; the replacement chain stays independent",
        params: &[],
        run: checks::l5_basis,
    },
    CheckSpec {
        name: "L5_families",
        summary: "degree-5 Omega leading terms and the [BA^3B^j]-type families",
        params: &[p("j", 1, 6), p("k", 1, 6)],
        run: checks::l5_families,
    },
    CheckSpec {
        name: "span_replacements",
        summary: "H52, H54, H57, H59, H66, H71, H77, H80 replace central multiples modulo the n=4 family",
        params: &[],
        run: checks::span_replacements,
    },
    CheckSpec {
        name: "psl2_action",
        summary: "rho and sigma: orders, relations, Omega fixed, Lie invariance",
        params: &[],
        run: checks::psl2_action,
    },
    CheckSpec {
        name: "psi_homomorphism",
        summary: "the commutative image: relations, central images, multiplicativity, independence",
        params: &[],
        run: checks::psi_homomorphism,
    },
];

pub fn registry() -> &'static [CheckSpec] {
    REGISTRY
}

pub fn check_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.name).collect()
}

fn lookup(name: &str) -> Result<&'static CheckSpec, VerifyError> {
    REGISTRY
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| VerifyError::UnknownCheck(name.to_string()))
}

fn resolve(spec: &CheckSpec, params: &Params) -> Result<Params, VerifyError> {
    let bad = |reason: String| VerifyError::BadParams {
        check: spec.name.to_string(),
        reason,
    };
    for key in params.keys() {
        if !spec.params.iter().any(|p| p.name == key) {
            return Err(bad(format!("unknown parameter `{key}`")));
        }
    }
    let mut out = Params::new();
    for ps in spec.params {
        let v = params.get(ps.name).copied().unwrap_or(ps.min.max(1));
        if v < ps.min || v > ps.max {
            return Err(bad(format!("{} = {v} outside {}..={}", ps.name, ps.min, ps.max)));
        }
        out.insert(ps.name.to_string(), v);
    }
    Ok(out)
}

/// Outcome of one check instance. A failed check always carries a witness.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub params: Params,
    pub passed: bool,
    pub witness: Option<String>,
    pub elapsed: Duration,
    /// Elimination pivots of the rank computations performed, if any.
    pub pivots: Vec<RatFunc>,
}

#[derive(Serialize)]
struct CheckResultJson<'a> {
    check: &'a str,
    params: &'a Params,
    passed: bool,
    elapsed_ms: f64,
    witness: &'a Option<String>,
}

impl Serialize for CheckResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CheckResultJson {
            check: &self.name,
            params: &self.params,
            passed: self.passed,
            elapsed_ms: self.elapsed.as_secs_f64() * 1000.0,
            witness: &self.witness,
        }
        .serialize(s)
    }
}

fn params_string(params: &Params) -> String {
    if params.is_empty() {
        return String::new();
    }
    let inner: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("({})", inner.join(","))
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}{} [{:.1} ms]",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            params_string(&self.params),
            self.elapsed.as_secs_f64() * 1000.0
        )?;
        if let Some(w) = &self.witness {
            let short: String = w.chars().take(400).collect();
            write!(f, "\n    {short}")?;
            if short.len() < w.len() {
                write!(f, " ...")?;
            }
        }
        Ok(())
    }
}

fn execute(engine: &Engine, spec: &CheckSpec, params: Params) -> CheckResult {
    let start = Instant::now();
    let mut probe = Probe::new(engine);
    let outcome = catch_unwind(AssertUnwindSafe(|| (spec.run)(&mut probe, &params)));
    if let Err(e) = outcome {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".into());
        probe.fail(format!("panicked: {msg}"));
    }
    let (failures, pivots) = probe.finish();
    CheckResult {
        name: spec.name.to_string(),
        params,
        passed: failures.is_empty(),
        witness: (!failures.is_empty()).then(|| failures.join("; ")),
        elapsed: start.elapsed(),
        pivots,
    }
}

pub fn run_check(name: &str, params: &Params) -> Result<CheckResult, VerifyError> {
    run_check_with(Engine::standard(), name, params)
}

/// Runs a check against an arbitrary engine, e.g. one with perturbed rules.
pub fn run_check_with(engine: &Engine, name: &str, params: &Params) -> Result<CheckResult, VerifyError> {
    let spec = lookup(name)?;
    let params = resolve(spec, params)?;
    Ok(execute(engine, spec, params))
}

fn param_grid(spec: &CheckSpec, range: u32) -> Vec<Params> {
    let mut grid = vec![Params::new()];
    for ps in spec.params {
        let lo = ps.min.max(1);
        let hi = range.min(ps.max).max(lo);
        grid = grid
            .into_iter()
            .flat_map(|g| {
                (lo..=hi).map(move |v| {
                    let mut g = g.clone();
                    g.insert(ps.name.to_string(), v);
                    g
                })
            })
            .collect();
    }
    grid
}

fn matches(filter: Option<&str>, name: &str) -> bool {
    match filter {
        None => true,
        Some(pat) => match glob::Pattern::new(pat.trim()) {
            Ok(p) => p.matches(name),
            Err(_) => pat.trim() == name,
        },
    }
}

/// Classification of the distinct elimination pivots met during a run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PivotFactors {
    pub pivots: usize,
    pub distinct: usize,
    pub cyclotomic_orders: BTreeSet<u32>,
    pub q_power: bool,
    /// Factors that are neither `q`, an integer, nor cyclotomic of an allowed order.
    pub offending: Vec<String>,
}

impl PivotFactors {
    pub fn from_pivots<'a>(pivots: impl IntoIterator<Item = &'a RatFunc>) -> Self {
        let mut out = PivotFactors::default();
        let mut seen = HashSet::new();
        let mut offending = BTreeSet::new();
        for p in pivots {
            out.pivots += 1;
            if !seen.insert(p.clone()) {
                continue;
            }
            let Ok(report) = factor_report(p) else {
                offending.insert("0".to_string());
                continue;
            };
            for f in report.factors() {
                if f.is_q() {
                    out.q_power = true;
                } else if let Some(n) = f.cyclotomic_order {
                    out.cyclotomic_orders.insert(n);
                }
            }
            for f in report.offending(&ALLOWED_CYCLOTOMIC_ORDERS) {
                offending.insert(f.poly.to_string());
            }
        }
        out.distinct = seen.len();
        out.offending = offending.into_iter().collect();
        out
    }

    pub fn clean(&self) -> bool {
        self.offending.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub filter: Option<String>,
    pub range: u32,
    pub results: Vec<CheckResult>,
    pub factors: PivotFactors,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| !r.passed).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0 && self.factors.clean()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": if self.passed() { "pass" } else { "fail" },
            "filter": self.filter,
            "range": self.range,
            "checks": self.results.len(),
            "failures": self.failures(),
            "results": self.results,
            "factor_report": self.factors,
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        let orders: Vec<String> = self.factors.cyclotomic_orders.iter().map(|n| n.to_string()).collect();
        writeln!(
            f,
            "pivots: {} ({} distinct); factors: {}cyclotomic orders {{{}}}",
            self.factors.pivots,
            self.factors.distinct,
            if self.factors.q_power { "powers of q, " } else { "" },
            orders.join(",")
        )?;
        if !self.factors.clean() {
            writeln!(f, "offending pivot factors: {}", self.factors.offending.join(", "))?;
        }
        write!(
            f,
            "{}: {} checks, {} failed (range {})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.results.len(),
            self.failures(),
            self.range
        )
    }
}

pub fn run_suite(filter: Option<&str>, range: u32) -> SuiteReport {
    run_suite_with(Engine::standard(), filter, range)
}

/// Runs every matching check over the parameter grid `[1, range]`, in parallel.
pub fn run_suite_with(engine: &Engine, filter: Option<&str>, range: u32) -> SuiteReport {
    let jobs: Vec<(&CheckSpec, Params)> = REGISTRY
        .iter()
        .filter(|s| matches(filter, s.name))
        .flat_map(|s| param_grid(s, range).into_iter().map(move |g| (s, g)))
        .collect();
    let mut results: Vec<CheckResult> = jobs.into_par_iter().map(|(s, g)| execute(engine, s, g)).collect();
    results.sort_by(|a, b| a.name.cmp(&b.name).then_with(|| a.params.cmp(&b.params)));
    let factors = PivotFactors::from_pivots(results.iter().flat_map(|r| r.pivots.iter()));
    SuiteReport {
        filter: filter.map(str::to_string),
        range,
        results,
        factors,
    }
}

#[cfg(test)]
mod tests;
