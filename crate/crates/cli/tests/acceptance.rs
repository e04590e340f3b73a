use std::process::Command;
use std::time::{Duration, Instant};

use awlie::hall::hall_rewrite;
use awlie::uaw::{psi, Strategy};
use awlie::verify::{self, confluent_on, random_words, run_check_with, PivotFactors};
use awlie::{
    expand, parse_expr, run_check, Engine, FreeElement, HallBasis, Letter, LieTree, NormalWord, Params, RatFunc,
    ReductionRules, Rule, UawElement,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn delta(src: &str) -> UawElement {
    parse_expr(src)
        .unwrap_or_else(|e| panic!("{src}: {e}"))
        .to_uaw(Engine::standard())
        .unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["awlie"];
    argv.extend_from_slice(args);
    let code = awlie_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn checks(names: &[&str]) -> Outcome {
    for name in names {
        let r = run_check(name, &Params::new()).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(r.to_string());
        }
    }
    Ok(())
}

fn within(limit: Duration, elapsed: Duration) -> Outcome {
    if elapsed > limit {
        return Err(format!("took {elapsed:?}, limit {limit:?}"));
    }
    Ok(())
}

fn reduction_rules() -> Outcome {
    let q = RatFunc::q();
    let qm = RatFunc::q_minus();
    let qp = RatFunc::q_plus();
    let cases = [
        ("B*A", NormalWord::abc(1, 1, 0), NormalWord::abc(0, 0, 1), NormalWord::new(0, 0, 0, 0, 0, 1), 2, 1),
        ("C*A", NormalWord::abc(1, 0, 1), NormalWord::abc(0, 1, 0), NormalWord::new(0, 0, 0, 0, 1, 0), -2, -1),
        ("C*B", NormalWord::abc(0, 1, 1), NormalWord::abc(1, 0, 0), NormalWord::new(0, 0, 0, 1, 0, 0), 2, 1),
    ];
    for (src, ordered, letter, central, e, sign) in cases {
        let (code, out) = cli(&["nf", src]);
        if code != 0 {
            return Err(format!("nf {src} exited {code}"));
        }
        let x = delta(out.trim());
        let s = if e > 0 { q.clone() } else { q.inv().unwrap() }.scale_i64(sign);
        let expected = UawElement::from_terms([
            (ordered, RatFunc::q_pow(e)),
            (letter, &(&s * &qp) * &qm),
            (central, -(&s * &qm)),
        ]);
        if x != expected {
            return Err(format!("nf {src} = {x}, expected {expected}"));
        }
        if x.len() != 3 {
            return Err(format!("nf {src} has {} terms", x.len()));
        }
    }
    Ok(())
}

fn confluence() -> Outcome {
    let e = Engine::standard();
    let words = random_words(0xac_ce97, 200, 8);
    if words.iter().any(|w| w.len() > 8 || w.is_empty()) {
        return Err("word generator out of range".into());
    }
    for w in &words {
        confluent_on(e, w)?;
        let one = RatFunc::one();
        let l = e.reduce_with(w, (0, 0, 0), &one, Strategy::Leftmost);
        if e.reduce(w, (0, 0, 0), &one) != l {
            return Err(format!("{w}: default strategy disagrees"));
        }
    }
    Ok(())
}

fn random_tree(rng: &mut ChaCha8Rng, len: usize) -> LieTree {
    if len == 1 {
        return LieTree::leaf(Letter::ALL[rng.gen_range(0..3)]);
    }
    let k = rng.gen_range(1..len);
    LieTree::node(random_tree(rng, k), random_tree(rng, len - k))
}

fn hall_machinery() -> Outcome {
    let basis = HallBasis::standard();
    let counts: Vec<usize> = (1..=5).map(|n| basis.of_length(n).len()).collect();
    if counts != [3, 3, 8, 18, 48] {
        return Err(format!("counts per length {counts:?}"));
    }
    let upto = |n: usize| basis.elements().iter().filter(|h| h.length <= n).count();
    if (upto(4), upto(5)) != (32, 80) {
        return Err(format!("{} of length <= 4, {} of length <= 5", upto(4), upto(5)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let terms: Vec<(LieTree, RatFunc)> = (0..rng.gen_range(1..4))
            .map(|_| {
                let len = rng.gen_range(1..=6);
                let c = RatFunc::monomial(rng.gen_range(-3..4), rng.gen_range(-2..3));
                (random_tree(&mut rng, len), c)
            })
            .collect();
        let series = hall_rewrite(&terms).map_err(|e| e.to_string())?;
        let back = basis.series_to_free(&series).map_err(|e| e.to_string())?;
        let direct = terms
            .iter()
            .fold(FreeElement::zero(), |acc, (t, c)| &acc + &expand(t).scale(c));
        if back != direct {
            return Err(format!("expand(rewrite(x)) != x for {terms:?}"));
        }
    }
    for h in basis.elements().iter().filter(|h| h.length <= 5) {
        let f = expand(&h.tree);
        if f.theta() != -f.clone() {
            return Err(format!("theta(H{}) != -H{}", h.index, h.index));
        }
    }
    Ok(())
}

fn rank_pivots() -> Result<PivotFactors, String> {
    let mut pivots = Vec::new();
    for name in ["L4_rank", "L5_rank", "L5_basis"] {
        let r = run_check(name, &Params::new()).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(r.to_string());
        }
        pivots.extend(r.pivots);
    }
    Ok(PivotFactors::from_pivots(pivots.iter()))
}

fn filtration() -> Outcome {
    for pat in ["filtration_*", "complement_*", "omega_leading_*", "L5_families"] {
        let report = verify::run_suite(Some(pat), 4);
        if report.results.is_empty() || !report.passed() {
            return Err(format!("{pat}: {report}"));
        }
    }
    let report = verify::run_suite(Some("filtration_mixed"), 4);
    if report.results.len() != 64 {
        return Err(format!("filtration_mixed ran {} instances", report.results.len()));
    }
    Ok(())
}

fn psl2_psi() -> Outcome {
    checks(&["psl2_action", "psi_homomorphism"])?;
    let e = Engine::standard();
    let expected = delta("-(q+q^-1)*A*B*C - A^2 - B^2 - C^2");
    let om = psi(&e.omega());
    let got = psi(&expected);
    if om != got {
        return Err(format!("psi(Om) = {om}"));
    }
    Ok(())
}

const MUTATION_CHECKS: [&str; 11] = [
    "reduction_rules",
    "casimir_six_equal",
    "confluence",
    "free_BA",
    "I0_nonzero_hall",
    "delta_six_identities",
    "seven_H5b_H6a",
    "rel5_four_relations",
    "complement_H10_H12",
    "omega_leading_H18_H24_H32",
    "theta_r_nonzero",
];

fn mutation() -> Outcome {
    for rule in Rule::ALL {
        for slot in 0..3 {
            let engine = Engine::new(ReductionRules::standard().perturbed(rule, slot, &RatFunc::one()));
            let caught = MUTATION_CHECKS.iter().find_map(|name| {
                let r = run_check_with(&engine, name, &Params::new()).ok()?;
                (!r.passed).then_some(r)
            });
            match caught {
                Some(r) if r.witness.as_deref().is_some_and(|w| !w.is_empty()) => {}
                Some(r) => return Err(format!("{rule:?}[{slot}]: {} failed without a witness", r.name)),
                None => return Err(format!("{rule:?}[{slot}] +1 not detected")),
            }
        }
    }
    Ok(())
}

fn random_source(rng: &mut ChaCha8Rng, depth: u32) -> String {
    const ATOMS: [&str; 12] = ["A", "B", "C", "al", "be", "ga", "Om", "q", "3", "H4", "H12", "q^-1"];
    if depth == 0 || rng.gen_bool(0.25) {
        return ATOMS[rng.gen_range(0..ATOMS.len())].to_string();
    }
    let a = random_source(rng, depth - 1);
    let b = random_source(rng, depth - 1);
    let sp = if rng.gen_bool(0.5) { " " } else { "" };
    match rng.gen_range(0..7) {
        0 => format!("{a}{sp}+{sp}{b}"),
        1 => format!("{a}{sp}-{sp}{b}"),
        2 => format!("{a}*{b}"),
        3 => format!("({a}) ({b})"),
        4 => format!("[{sp}{a},{sp}{b}{sp}]"),
        5 => format!("({a})^{}", rng.gen_range(0..4)),
        _ => format!("-({a})"),
    }
}

fn cli_behaviour() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let src = random_source(&mut rng, 4);
        let first = parse_expr(&src).map_err(|e| format!("{src}: {e}"))?;
        let printed = first.to_string();
        let second = parse_expr(&printed).map_err(|e| format!("{printed}: {e}"))?;
        if second != first || second.to_string() != printed {
            return Err(format!("round trip of {src} via {printed}"));
        }
    }
    let expect = [
        (vec!["nf", "B*A"], 0),
        (vec!["hall", "--max-len", "2"], 0),
        (vec!["hallcoords", "[H4, C]"], 0),
        (vec!["hallcoords", "A*B"], 1),
        (vec!["nf", "A + + B"], 2),
        (vec!["no-such-command"], 2),
        (vec!["verify", "--suite", "rel5_*"], 0),
    ];
    for (args, code) in expect {
        let (got, _) = cli(&args);
        if got != code {
            return Err(format!("awlie {} exited {got}, expected {code}", args.join(" ")));
        }
    }
    let status = Command::new(env!("CARGO_BIN_EXE_awlie"))
        .arg("verify")
        .output()
        .map_err(|e| e.to_string())?;
    if status.status.code() != Some(0) {
        return Err(format!("awlie verify: {}", String::from_utf8_lossy(&status.stdout)));
    }
    Ok(())
}

fn main() {
    let criteria: Vec<(u32, &str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        (1, "reduction rules for BA, CA, CB", Duration::from_millis(100), Box::new(reduction_rules)),
        (2, "six Casimir expressions agree and are central", Duration::from_secs(1), Box::new(|| checks(&["casimir_six_equal"]))),
        (3, "confluence on 200 seeded words of length <= 8", Duration::from_secs(30), Box::new(confluence)),
        (4, "Hall counts, rewrite round trip, theta", Duration::from_secs(30), Box::new(hall_machinery)),
        (5, "I0 identity and Hall coordinates", Duration::from_secs(5), Box::new(|| checks(&["free_I0_identity", "I0_nonzero_hall"]))),
        (6, "six length-4 identities and the H5b/H6a pair", Duration::from_secs(5), Box::new(|| checks(&["delta_six_identities", "seven_H5b_H6a"]))),
        (7, "four length-5 relations", Duration::from_secs(10), Box::new(|| checks(&["rel5_four_relations"]))),
        (8, "ranks 32, 76 and 76", Duration::from_secs(300), Box::new(|| rank_pivots().map(|_| ()))),
        (9, "pivot factors are cyclotomic", Duration::from_secs(300), Box::new(|| {
            let f = rank_pivots()?;
            if f.pivots == 0 || !f.clean() {
                return Err(format!("offending factors {:?}", f.offending));
            }
            Ok(())
        })),
        (10, "filtration families for 1 <= i,j,k <= 4", Duration::from_secs(120), Box::new(filtration)),
        (11, "PSL2(Z) action and psi", Duration::from_secs(5), Box::new(psl2_psi)),
        (12, "perturbed reduction rules are detected", Duration::from_secs(300), Box::new(mutation)),
        (13, "CLI round trip, exit codes, full suite", Duration::from_secs(300), Box::new(cli_behaviour)),
    ];
    let mut failed = 0;
    for (n, label, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = run().and_then(|()| within(*limit, start.elapsed()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {n:>2}: PASS  {label} [{:.1} ms]", elapsed.as_secs_f64() * 1e3),
            Err(e) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL  {label} [{:.1} ms]: {e}", elapsed.as_secs_f64() * 1e3);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
