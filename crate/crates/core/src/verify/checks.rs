use super::probe::Probe;
use super::sets::{leading_family, FamilySet, StandardMonomialSet};
use super::Params;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use crate::expr::{free, parse_expr};
use crate::freealg::{FreeElement, Letter, Word};
use crate::hall::{expand, hall_coords_by_solve, HallBasis, LieSeries, LieTree};
use crate::linalg::{rank_of, BasisIndex};
use crate::scalar::RatFunc;
use crate::uaw::{
    central_free, omega_free, relation_free, rho_free, sigma_free, Central, CommPoly, Engine, NormalWord, Strategy,
    UawElement,
};

const QP: &str = "(q+q^-1)";
const QM: &str = "(q-q^-1)";

/// `H0 = (H31 - H24)/((q+q^-1)^2 (q-q^-1)^2) + H7/(q-q^-1) - 2 H5`.
pub const H0_EXPR: &str = "((H31 - H24)/((q+q^-1)^2*(q-q^-1)^2) + H7/(q-q^-1) - 2*H5)";

/// `I0 = [H0, H4]`.
pub fn i0_expr() -> String {
    format!("[{H0_EXPR}, H4]")
}

/// `H0` in Hall coordinates.
pub fn h0_series() -> LieSeries {
    lie_series(H0_EXPR)
}

/// `I0` in Hall coordinates.
pub fn i0_series() -> LieSeries {
    lie_series(&i0_expr())
}

fn lie_series(src: &str) -> LieSeries {
    let lie = parse_expr(src)
        .expect("built-in formula parses")
        .to_lie()
        .expect("built-in formula is a Lie element");
    HallBasis::standard().rewrite(&lie).expect("fits in the standard basis")
}

fn int(params: &Params, key: &str) -> u32 {
    params[key]
}

fn sign(odd: bool) -> &'static str {
    if odd {
        "(-1)"
    } else {
        "1"
    }
}

fn standard_set(p: &Probe, max_len: usize) -> StandardMonomialSet {
    StandardMonomialSet::new(p.engine, max_len).expect("length within the standard basis")
}

pub(super) fn reduction_rules(p: &mut Probe, _: &Params) {
    p.uaw_eq("BA", "B*A", "q^2*A*B + (q^3 - q^-1)*C - (q^2 - 1)*ga");
    p.uaw_eq("CA", "C*A", "q^-2*A*C - (q - q^-3)*B + (1 - q^-2)*be");
    p.uaw_eq("CB", "C*B", "q^2*B*C + (q^3 - q^-1)*A - (q^2 - 1)*al");
}

pub(super) fn casimir_six_equal(p: &mut Probe, _: &Params) {
    let six = p.engine.casimir_expressions();
    for (n, x) in six.iter().enumerate().skip(1) {
        let d = x - &six[0];
        p.uaw_zero(&format!("Casimir expression {} vs 1", n + 1), &d);
    }
    let deg = six[0].filtration_degree().ok();
    p.ensure(deg == Some(3), || format!("Casimir: filtration degree {deg:?}, expected 3"));
    for l in Letter::ALL {
        let b = p.engine.bracket(&six[0], &p.engine.letter(l));
        p.uaw_zero(&format!("[Om, {l}]"), &b);
    }
}

fn all_words(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| Letter::ALL.iter().map(move |l| w.concat(&Word(vec![*l]))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Seed for the random words of the confluence check.
pub const CONFLUENCE_SEED: u64 = 0x5eed_c0de;

/// `count` seeded random words of length `1..=max_len`.
pub fn random_words(seed: u64, count: usize, max_len: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            Word((0..len).map(|_| Letter::ALL[rng.gen_range(0..3)]).collect())
        })
        .collect()
}

/// Leftmost and rightmost rewriting agree with each other and with the engine's product.
pub fn confluent_on(engine: &Engine, w: &Word) -> Result<(), String> {
    let one = RatFunc::one();
    let left = engine.reduce_with(w, (0, 0, 0), &one, Strategy::Leftmost);
    let right = engine.reduce_with(w, (0, 0, 0), &one, Strategy::Rightmost);
    if left != right {
        return Err(format!("{w}: leftmost {left} vs rightmost {right}"));
    }
    let fast = engine.word(w.letters());
    if fast != left {
        return Err(format!("{w}: word product {fast} vs rewriting {left}"));
    }
    Ok(())
}

pub(super) fn confluence(p: &mut Probe, _: &Params) {
    let words = all_words(6).into_iter().chain(random_words(CONFLUENCE_SEED, 200, 8));
    for w in words {
        if let Err(e) = confluent_on(p.engine, &w) {
            p.fail(e);
            return;
        }
    }
}

pub(super) fn theta_r_nonzero(p: &mut Probe, _: &Params) {
    for i in 0..9 {
        let r = relation_free(i);
        let s = &r.theta() + &r;
        p.ensure(!s.is_zero(), || format!("theta(r{i}) + r{i} = 0"));
    }
}

pub(super) fn free_ba(p: &mut Probe, _: &Params) {
    p.free_eq("BA", &format!("H4/(q*{QM}) - {QP}*C"), "A*B - ga");
}

pub(super) fn free_ca(p: &mut Probe, _: &Params) {
    p.free_eq("CA", &format!("H5/(q^-1*{QM}) + {QP}*B"), "be - A*C");
}

pub(super) fn free_baa(p: &mut Probe, _: &Params) {
    p.free_eq(
        "BAA",
        &format!("H7/(q^2*{QM}^2) - {QP}*H5/(q*{QM})"),
        &format!("A^2*B + {QP}*A*C - A*ga + [A,ga]/(q*{QM})"),
    );
}

pub(super) fn free_bac(p: &mut Probe, _: &Params) {
    p.free_eq(
        "BAC",
        &format!("H12/({QP}*{QM}^2)"),
        &format!("B^2 - A^2 + (A*al - B*be)/{QP} - (q*[A,al] + q^-1*[B,be])/({QP}*{QM})"),
    );
}

/// The relation terms `R` with `H4 α/(q+q^-1)^2 = H0 + R` in the free algebra.
fn h4alpha_tail() -> String {
    format!("(-A*[B,al]/{QP}^2 - 2*[A,ga]/{QP} + (q*B*[B,be] - q^-1*[B,be]*B + q*[B,[A,al]])/({QP}^2*{QM}))")
}

pub(super) fn free_h4alpha(p: &mut Probe, _: &Params) {
    p.free_eq("H4 al", &format!("H4*al/{QP}^2"), &format!("{H0_EXPR} + {}", h4alpha_tail()));
}

pub(super) fn free_i0_identity(p: &mut Probe, _: &Params) {
    let rhs = format!(
        "H4*([[A,al],B] - [[B,al],A])/{QP}^2 - [{}, H4]",
        h4alpha_tail()
    );
    p.free_eq("I0", &i0_expr(), &rhs);
}

pub(super) fn i0_nonzero_hall(p: &mut Probe, _: &Params) {
    let basis = HallBasis::standard();
    let series = i0_series();
    p.ensure(!series.is_zero(), || "I0 has zero Hall coordinates".into());
    let tree = |n: usize| basis.tree(n).expect("index in range").clone();
    let idx = |u: usize, v: usize| {
        basis
            .index_of(&LieTree::node(tree(u), tree(v)))
            .expect("bracket of Hall elements is Hall")
    };
    let den = p.scalar(&format!("{QP}^2*{QM}^2")).inv().expect("nonzero");
    let mut expected = LieSeries::zero();
    expected.add_term(idx(31, 4), den.clone());
    expected.add_term(idx(24, 4), -den);
    expected.add_term(57, p.scalar(&format!("1/{QM}")));
    expected.add_term(30, RatFunc::from_i64(-2));
    let d = &series - &expected;
    p.ensure(d.is_zero(), || format!("I0 Hall coordinates {series}, expected {expected}"));
    match hall_coords_by_solve(&free(&i0_expr())) {
        Ok(s) => {
            let d = &s - &series;
            p.ensure(d.is_zero(), || format!("I0 coordinates by solve {s} differ from rewriting"));
        }
        Err(e) => p.fail(format!("I0 coordinates by solve: {e}")),
    }
}

pub(super) fn filtration_two_gen(p: &mut Probe, params: &Params) {
    let (i, j) = (int(params, "i"), int(params, "j"));
    p.leading("[BA^i]", &format!("[B*A^{i}]"), &format!("q^{i}*{QM}^{i}"), &format!("A^{i}*B"), i);
    p.leading(
        "[CA^i]",
        &format!("[C*A^{i}]"),
        &format!("{}*q^-{i}*{QM}^{i}", sign(i % 2 == 1)),
        &format!("A^{i}*C"),
        i,
    );
    p.leading("[CB^j]", &format!("[C*B^{j}]"), &format!("q^{j}*{QM}^{j}"), &format!("B^{j}*C"), j);
}

pub(super) fn filtration_ad_abc(p: &mut Probe, params: &Params) {
    let (i, j, k) = (int(params, "i"), int(params, "j"), int(params, "k"));
    let w = format!("A^{i}*B^{j}*C^{k}");
    let n = i + j + k;
    let (i2, j2, k2) = (2 * i as i64, 2 * j as i64, 2 * k as i64);
    p.leading("[A, A^iB^jC^k]", &format!("[A, {w}]"), &format!("1 - q^{}", j2 - k2), &format!("A^{}*B^{j}*C^{k}", i + 1), n);
    p.leading("[B, A^iB^jC^k]", &format!("[B, {w}]"), &format!("q^{i2} - q^{k2}"), &format!("A^{i}*B^{}*C^{k}", j + 1), n);
    p.leading("[C, A^iB^jC^k]", &format!("[C, {w}]"), &format!("q^{} - 1", j2 - i2), &format!("A^{i}*B^{j}*C^{}", k + 1), n);
}

pub(super) fn filtration_mixed(p: &mut Probe, params: &Params) {
    let (i, j, k) = (int(params, "i"), int(params, "j"), int(params, "k"));
    p.leading(
        "[BA^iB^j]",
        &format!("[B*A^{i}*B^{j}]"),
        &format!("{}*q^{i}*(q^{}-1)^{j}*{QM}^{i}", sign(j % 2 == 1), 2 * i),
        &format!("A^{i}*B^{}", j + 1),
        i + j,
    );
    p.leading(
        "[CA^iC^k]",
        &format!("[C*A^{i}*C^{k}]"),
        &format!("{}*q^-{}*(q^{}-1)^{k}*{QM}^{i}", sign(i % 2 == 1), i * (2 * k + 1), 2 * i),
        &format!("A^{i}*C^{}", k + 1),
        i + k,
    );
    p.leading(
        "[CB^jC^k]",
        &format!("[C*B^{j}*C^{k}]"),
        &format!("{}*q^{j}*(q^{}-1)^{k}*{QM}^{j}", sign(k % 2 == 1), 2 * j),
        &format!("B^{j}*C^{}", k + 1),
        j + k,
    );
    p.leading(
        "[BAB^jC^k]",
        &format!("[B*A*B^{j}*C^{k}]"),
        &format!("{}*q^-{j}*(q^{}-1)^{k}*{QM}^{}", sign((j + k) % 2 == 1), 2 * j, j + 1),
        &format!("B^{j}*C^{}*Om", k - 1),
        j + k + 1,
    );
    if i >= 2 {
        let e = (1 - i as i64) * (1 + 2 * k as i64);
        p.leading(
            "[CA^iB^j]",
            &format!("[C*A^{i}*B^{j}]"),
            &format!("{}*q^{}*(q^{}-1)^{j}*{QM}^{i}", sign((i + j) % 2 == 1), 1 - i as i64, 2 * (i - 1)),
            &format!("A^{}*B^{}*Om", i - 1, j - 1),
            i + j,
        );
        p.leading(
            "[CA^iBC^k]",
            &format!("[C*A^{i}*B*C^{k}]"),
            &format!("{}*q^{e}*(q^{}-1)^{}*{QM}^{i}", sign((i + 1) % 2 == 1), 2 * (i - 1), k + 1),
            &format!("A^{}*C^{k}*Om", i - 1),
            i + k + 1,
        );
    }
}

pub(super) fn complement_h10_h12(p: &mut Probe, _: &Params) {
    p.uaw_eq("H12", &format!("H12/({QP}*{QM}^2)"), &format!("B^2 - A^2 + (A*al - B*be)/{QP}"));
    p.uaw_eq("H10", &format!("H10/({QP}*{QM}^2)"), &format!("C^2 - A^2 + (A*al - C*ga)/{QP}"));
    for h in ["H10", "H12"] {
        let deg = p.d(h).filtration_degree().ok();
        p.ensure(deg == Some(2), || format!("{h}: filtration degree {deg:?}, expected 2"));
    }
}

pub(super) fn omega_leading(p: &mut Probe, _: &Params) {
    p.leading("H18", "H18", &format!("-{QM}^3"), "A*Om", 3);
    p.leading("H24", "H24", &format!("{QM}^3"), "B*Om", 3);
    p.leading("H32", "H32", &format!("{QM}^3"), "C*Om", 3);
}

pub(super) fn delta_six_identities(p: &mut Probe, _: &Params) {
    let den = format!("({QP}^2*{QM}^2)");
    p.uaw_eq("H4 al", &format!("H4*al/{QP}^2"), &format!("(H31 - H24)/{den} + H7/{QM} - 2*H5"));
    p.uaw_eq("H6 be", &format!("H6*be/{QP}^2"), &format!("(H27 - H25)/{den} + H11/{QM} + 2*H4"));
    p.uaw_eq("H5 ga", &format!("H5*ga/{QP}^2"), &format!("-(H30 + H18)/{den} + H13/{QM} - 2*H6"));
    p.uaw_eq("H4 be", &format!("H4*be/{QP}^2"), &format!("(H30 - H22)/{den} - H9/{QM} + 2*H6"));
    p.uaw_eq("H6 ga", &format!("H6*ga/{QP}^2"), &format!("(-H31 + H24 - H20)/{den} - H14/{QM} - 2*H5"));
    p.uaw_eq("H5 al", &format!("H5*al/{QP}^2"), &format!("-H25/{den} - H8/{QM} - 2*H4"));
}

/// Central multiples traded for the six length-4 monomials `H20 .. H31`.
const SIX_REPLACED: [&str; 6] = ["H6*ga", "H4*be", "H5*al", "H6*be", "H5*ga", "H4*al"];
const SIX_REPLACEMENTS: [usize; 6] = [20, 22, 25, 27, 30, 31];

fn members(set: &StandardMonomialSet, indices: &[usize]) -> Vec<(String, UawElement)> {
    indices
        .iter()
        .map(|&n| (format!("H{n}"), set.image(n).expect("index in range").clone()))
        .collect()
}

fn replace(p: &mut Probe, fam: &mut FamilySet, remove: &[&str], add: Vec<(String, UawElement)>) -> bool {
    match fam.replace(remove, add) {
        Ok(()) => true,
        Err(e) => {
            p.fail(e);
            false
        }
    }
}

pub(super) fn l4_rank(p: &mut Probe, _: &Params) {
    let set = standard_set(p, 4);
    p.ensure(set.len() == 32, || format!("{} standard monomials of length <= 4", set.len()));
    p.expect_rank("L4", &set.images(), 32, true);
    let l5 = standard_set(p, 5);
    let mut fam = leading_family(p.engine, &l5, 3, false).times_greeks(1);
    if replace(p, &mut fam, &SIX_REPLACED, members(&l5, &SIX_REPLACEMENTS)) {
        p.expect_rank("replaced n=3, m=1 family", fam.vectors(), fam.len(), false);
    }
}

pub(super) fn aux_independence(p: &mut Probe, params: &Params) {
    let (n, m) = (int(params, "n"), int(params, "m"));
    let l5 = standard_set(p, 5);
    for extended in [false, true] {
        let fam = leading_family(p.engine, &l5, n, extended).times_greeks(m);
        let label = if extended { "extended family" } else { "family" };
        p.expect_rank(label, fam.vectors(), fam.len(), false);
    }
}

pub(super) fn seven_h5b_h6a(p: &mut Probe, _: &Params) {
    p.uaw_eq(
        "H5 be + H4 ga",
        "H5*be + H4*ga",
        &format!("(-H65 + H58)/{QM}^3 - (H23 + H17)/{QM}^2 - {QP}^2*(H12 - H10)/{QM}"),
    );
    p.uaw_eq(
        "H6 al - H4 ga",
        "H6*al - H4*ga",
        &format!("(-H75 + H61)/{QM}^3 - (H26 - H17)/{QM}^2 - {QP}^2*H10/{QM}"),
    );
}

pub(super) fn rel5_four_relations(p: &mut Probe, _: &Params) {
    let d5 = format!("(2*q^2*{QP}^2*{QM})");
    let k = format!("(2*{QP}^2*{QM})");
    p.uaw_eq(
        "H44",
        &format!("H44/{QM}"),
        &format!(
            "-(2*q^2 + 1)*(q^2 + 2)*(H73 + H67)/{d5} - (q^4 + 3*q^2 + 1)*(H62 - 2*H60)/{d5} - H27 + 2*H25 - H19 + H15"
        ),
    );
    p.uaw_eq(
        "H69",
        &format!("H69/{k}"),
        &format!(
            "-(3*q^4 + 5*q^2 + 3)*H78/{d5} + (q^4 + 3*q^2 + 1)*H76/{d5} + (2*q^4 + 3*q^2 + 2)*H64/{d5} - (H51 - H47)/{QM} + H29 + H22 - H21 + H18"
        ),
    );
    p.uaw_eq(
        "H74",
        &format!("H74/{k}"),
        &format!(
            "(q^4 + 3*q^2 + 1)*(H68 - 2*H70)/{d5} + (2*q^2 + 1)*(q^2 + 2)*H63/{d5} + H45/{QM} - 2*H31 - H28 + 2*H24 - H20 + H16"
        ),
    );
    p.uaw_eq("H79", "H79", "-H75 + H72 - H65 + H61 + H58");
    p.uaw_eq(
        "H44 auxiliary",
        &format!("-H44/({QP}^2*{QM}^2)"),
        &format!(
            "(-H27 + 2*H25)/{QM} + (q^4 + 1)*(H19 - H15)/(q^2*{QM}) - 2*(q^6 - 1)*(H11 - H8)/(q^3*{QM}) + H12*ga/{QP}^2 + H9*be + H7*al"
        ),
    );
}

/// Standard Lie monomials of length <= 5 that depend on the others.
pub const L5_DEPENDENT: [usize; 4] = [44, 69, 74, 79];

fn retained(set: &StandardMonomialSet) -> Vec<UawElement> {
    (1..=set.len())
        .filter(|n| !L5_DEPENDENT.contains(n))
        .map(|n| set.image(n).expect("index in range").clone())
        .collect()
}

pub(super) fn l5_rank(p: &mut Probe, _: &Params) {
    let set = standard_set(p, 5);
    p.ensure(set.len() == 80, || format!("{} standard monomials of length <= 5", set.len()));
    p.expect_rank("L5", &set.images(), 76, true);
    p.expect_rank("L5 without H44, H69, H74, H79", &retained(&set), 76, true);
}

const EIGHT_REPLACED: [&str; 8] = [
    "H13*al", "H14*be", "H7*ga", "H9*ga", "H8*be", "H13*be", "H11*al", "H14*al",
];
const EIGHT_REPLACEMENTS: [usize; 8] = [52, 54, 57, 59, 66, 71, 77, 80];

const FINAL_REPLACED: [&str; 18] = [
    "H12*ga", "H10*ga", "H9*be", "H7*al", "H7*be", "H8*ga", "H5*be", "H12*be", "H13*ga", "H8*al", "H10*be",
    "H11*ga", "H6*al", "H9*al", "H10*al", "H11*be", "H12*al", "H14*ga",
];
const FINAL_REPLACEMENTS: [usize; 18] = [60, 62, 67, 73, 42, 58, 65, 49, 63, 68, 70, 40, 61, 75, 47, 64, 76, 78];

pub(super) fn l5_basis(p: &mut Probe, _: &Params) {
    let set = standard_set(p, 5);
    let kept = retained(&set);
    p.expect_rank("retained", &kept, kept.len(), false);
    for n in L5_DEPENDENT {
        let x = set.image(n).expect("index in range");
        p.ensure(p.span_coords(x, &kept).is_some(), || format!("H{n} not in the span of the retained monomials"));
    }
    let mut fam = leading_family(p.engine, &set, 4, true).times_greeks(1);
    let steps: [(&str, &[&str], &[usize]); 3] = [
        ("six length-4 replacements", &SIX_REPLACED, &SIX_REPLACEMENTS),
        ("eight length-5 replacements", &EIGHT_REPLACED, &EIGHT_REPLACEMENTS),
        ("eighteen length-5 replacements", &FINAL_REPLACED, &FINAL_REPLACEMENTS),
    ];
    for (label, remove, add) in steps {
        if !replace(p, &mut fam, remove, members(&set, add)) {
            return;
        }
        p.expect_rank(label, fam.vectors(), fam.len(), false);
    }
    for n in (4..=80).filter(|n| !L5_DEPENDENT.contains(n)) {
        let label = format!("H{n}");
        p.ensure(fam.get(&label).is_some(), || format!("{label} missing from the final family"));
    }
}

pub(super) fn l5_families(p: &mut Probe, params: &Params) {
    let (j, k) = (int(params, "j"), int(params, "k"));
    p.leading(
        "[BA^3B^j]",
        &format!("[B*A^3*B^{j}]"),
        &format!("{}*q^3*(q^6-1)^{j}*{QM}^3", sign(j % 2 == 1)),
        &format!("A^3*B^{}", j + 1),
        j + 3,
    );
    p.leading(
        "[CA^3C^k]",
        &format!("[C*A^3*C^{k}]"),
        &format!("-q^-{}*(q^6-1)^{k}*{QM}^3", 3 * (2 * k + 1)),
        &format!("A^3*C^{}", k + 1),
        k + 3,
    );
    p.leading(
        "[CB^3C^k]",
        &format!("[C*B^3*C^{k}]"),
        &format!("{}*q^3*(q^6-1)^{k}*{QM}^3", sign(k % 2 == 1)),
        &format!("B^3*C^{}", k + 1),
        k + 3,
    );
    p.leading("H36", "H36", &format!("{QP}*{QM}^4"), "A^2*Om", 4);
    p.leading("H38", "H38", &format!("q*{QM}^4"), "A*B*Om", 4);
    p.leading("H45", "H45", &format!("-q^-1*{QM}^4"), "A*C*Om", 4);
    p.leading("H46", "H46", &format!("-{QP}*{QM}^4"), "B^2*Om", 4);
    p.leading("H51", "H51", &format!("-q*{QM}^4"), "B*C*Om", 4);
    p.leading("H72", "H72", &format!("-{QP}*{QM}^4"), "C^2*Om", 4);
}

pub(super) fn span_replacements(p: &mut Probe, _: &Params) {
    let set = standard_set(p, 5);
    let mut fam = leading_family(p.engine, &set, 4, true);
    for (l, v) in members(&set, &SIX_REPLACEMENTS) {
        fam.push(l, v);
    }
    p.expect_rank("span family", fam.vectors(), fam.len(), false);
    let statements = [
        format!("H13*al + H52/{QM}^2"),
        format!("H14*be - H54/{QM}^2 + H52/{QM}^2"),
        format!("H7*ga - (q^6 - 1)*H57/(q^3*{QM}^3)"),
        format!("H9*ga + {QP}^2*H59/{QM}^2"),
        format!("H8*be - (q^6 - 1)*H66/(q^3*{QM}^3)"),
        format!("H13*be + {QP}^2*H71/{QM}^2"),
        format!("H11*al - (q^6 - 1)*H77/(q^3*{QM}^3)"),
        format!("H14*al + {QP}^2*H80/{QM}^2"),
    ];
    for s in &statements {
        let x = p.d(s);
        p.ensure(p.span_coords(&x, fam.vectors()).is_some(), || format!("{s} is not in the span"));
    }
    p.uaw_eq(
        "H7 ga",
        &format!("H7*ga/(2*{QP}^2)"),
        &format!(
            "(q^6 - 1)*H57/(2*q^3*{QP}^2*{QM}^3) - H35/(2*{QP}^2*{QM}^2) - (H30 + H22)/(2*{QM}) + H13 - H9"
        ),
    );
    p.uaw_eq(
        "H9 ga",
        &format!("H9*ga/(2*{QP}^2)"),
        &format!("-H59/(2*{QM}^2) - H37/(2*{QP}^2*{QM}^2) + (H31 + H24)/(2*{QM}) - H14 - H7"),
    );
}

pub(super) fn psl2_action(p: &mut Probe, _: &Params) {
    let e = p.engine;
    for l in Letter::ALL {
        let x = e.letter(l);
        let r3 = e.rho(&e.rho(&e.rho(&x)));
        p.uaw_zero(&format!("rho^3({l}) - {l}"), &(&r3 - &x));
        let s2 = e.sigma(&e.sigma(&x));
        p.uaw_zero(&format!("sigma^2({l}) - {l}"), &(&s2 - &x));
    }
    for i in 0..9 {
        let r = relation_free(i);
        p.uaw_zero(&format!("r{i}"), &e.from_free(&r));
        p.uaw_zero(&format!("rho(r{i})"), &e.from_free(&rho_free(&r)));
        p.uaw_zero(&format!("sigma(r{i})"), &e.from_free(&sigma_free(&r)));
    }
    let om = e.omega();
    p.uaw_zero("rho(Om) - Om", &(&e.rho(&om) - &om));
    p.uaw_zero("sigma(Om) - Om", &(&e.sigma(&om) - &om));
    let basis = HallBasis::standard();
    for h in basis.elements().iter().filter(|h| h.length <= 3) {
        let f = expand(&h.tree);
        for (name, g, image) in [
            ("rho", rho_free(&f), e.rho(&e.from_free(&f))),
            ("sigma", sigma_free(&f), e.sigma(&e.from_free(&f))),
        ] {
            match hall_coords_by_solve(&g) {
                Ok(s) => {
                    let back = e.from_free(&basis.series_to_free(&s).expect("coordinates in range"));
                    p.uaw_zero(&format!("{name}(H{}) via Hall coordinates", h.index), &(&back - &image));
                }
                Err(err) => p.fail(format!("{name}(H{}) is not a Lie element: {err}", h.index)),
            }
        }
    }
}

/// The commutative image of a free-algebra element.
fn free_to_comm(f: &FreeElement) -> CommPoly {
    let mut out = CommPoly::zero();
    for (w, c) in f.terms() {
        let mut e = [0u32; 3];
        for l in w.letters() {
            e[l.index()] += 1;
        }
        out.add_term(e, c.clone());
    }
    out
}

pub(super) fn psi_homomorphism(p: &mut Probe, _: &Params) {
    let e = p.engine;
    for i in 0..9 {
        let c = free_to_comm(&relation_free(i));
        p.ensure(c.is_zero(), || format!("psi(r{i}) = {c}"));
    }
    let qp = RatFunc::q_plus();
    let var = CommPoly::var;
    let expected = [
        &var(0).scale(&qp) + &CommPoly::term([0, 1, 1], RatFunc::one()),
        &var(1).scale(&qp) + &CommPoly::term([1, 0, 1], RatFunc::one()),
        &var(2).scale(&qp) + &CommPoly::term([1, 1, 0], RatFunc::one()),
    ];
    for (n, c) in [Central::Alpha, Central::Beta, Central::Gamma].into_iter().enumerate() {
        let got = free_to_comm(&central_free(c));
        p.ensure(got == expected[n], || format!("psi({}) = {got}, expected {}", c.name(), expected[n]));
    }
    let mut om = CommPoly::term([1, 1, 1], -qp.clone());
    for n in 0..3 {
        let mut sq = [0u32; 3];
        sq[n] = 2;
        om.add_term(sq, RatFunc::from_i64(-1));
    }
    let from_free = free_to_comm(&omega_free());
    p.ensure(from_free == om, || format!("psi(Om) = {from_free}, expected {om}"));
    let from_delta = CommPoly::psi(&e.omega());
    p.ensure(from_delta == om, || format!("psi of the reduced Om = {from_delta}, expected {om}"));

    let mut samples: Vec<UawElement> = Vec::new();
    for i in 0..=2u32 {
        for j in 0..=2 - i {
            for k in 0..=2 - i - j {
                samples.push(UawElement::monomial(NormalWord::abc(i, j, k)));
            }
        }
    }
    for c in [Central::Alpha, Central::Beta, Central::Gamma] {
        samples.push(e.central(c));
    }
    for x in &samples {
        for y in &samples {
            let lhs = CommPoly::psi(&e.mul(x, y));
            let rhs = CommPoly::psi(x).mul(&CommPoly::psi(y));
            if lhs != rhs {
                p.fail(format!("psi({x} * {y}) = {lhs}, expected {rhs}"));
                return;
            }
        }
    }

    let greeks: Vec<CommPoly> = (0..3).map(CommPoly::central_image).collect();
    let mut family: Vec<CommPoly> = (0..3).map(var).collect();
    for l in 0..=1u32 {
        for r in 0..=3u32 {
            for s in 0..=3 - r {
                for t in 0..=3 - r - s {
                    if 3 * l + r + s + t > 3 {
                        continue;
                    }
                    let v = om
                        .pow(l)
                        .mul(&greeks[0].pow(r))
                        .mul(&greeks[1].pow(s))
                        .mul(&greeks[2].pow(t));
                    family.push(v);
                }
            }
        }
    }
    let basis = BasisIndex::from_support(&family, |a, b| a.cmp(b));
    let r = rank_of(&family, &basis).expect("basis covers the support").rank;
    p.ensure(r == family.len(), || format!("commutative family rank {r} of {}", family.len()));
}
