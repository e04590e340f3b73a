use awlie::hall::hall_rewrite;
use awlie::linalg::{in_span, rank_of, BasisIndex};
use awlie::verify;
use awlie::{
    expand, parse_expr, Engine, FreeElement, HallBasis, LaurentPoly, Letter, LieTree, Params, RatFunc, Word,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i32..=3, prop::collection::vec(-4i64..=4, 1..4)).prop_map(|(s, c)| LaurentPoly::from_i64_coeffs(s, &c))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), laurent()).prop_filter_map("nonzero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

fn nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    ratfunc().prop_filter("nonzero", |r| !r.is_zero())
}

fn letter() -> impl Strategy<Value = Letter> {
    prop::sample::select(Letter::ALL.to_vec())
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max).prop_map(Word)
}

fn free_element() -> impl Strategy<Value = FreeElement> {
    prop::collection::vec((word(3), -3i64..=3), 0..4)
        .prop_map(|ts| FreeElement::from_terms(ts.into_iter().map(|(w, c)| (w, RatFunc::from_i64(c)))))
}

fn tree(max: usize) -> impl Strategy<Value = LieTree> {
    letter().prop_map(LieTree::leaf).prop_recursive(3, max as u32, 2, move |inner| {
        (inner.clone(), inner)
            .prop_filter("length bound", move |(u, v)| u.len() + v.len() <= max)
            .prop_map(|(u, v)| LieTree::node(u, v))
    })
}

fn expr_source() -> impl Strategy<Value = String> {
    let atom = prop::sample::select(vec!["A", "B", "C", "al", "be", "ga", "Om", "q", "2", "H5", "H12", "q^-2"])
        .prop_map(str::to_string);
    atom.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), inner, 0..6usize).prop_map(|(a, b, op)| match op {
            0 => format!("{a} + {b}"),
            1 => format!("{a} - {b}"),
            2 => format!("{a}*{b}"),
            3 => format!("({a}) ({b})"),
            4 => format!("[{a}, {b}]"),
            _ => format!("({a})^2"),
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in nonzero_ratfunc()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a / &c) * &c, a.clone());
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn ratfunc_print_parse(a in ratfunc()) {
        let back: RatFunc = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn ratfunc_eval_is_a_homomorphism(a in ratfunc(), b in ratfunc(), p in 5i64..40) {
        let at = |x: &RatFunc| x.eval(&BigRational::from_integer(p.into()));
        if let (Ok(x), Ok(y)) = (at(&a), at(&b)) {
            prop_assert_eq!(at(&(&a * &b)).unwrap(), &x * &y);
            prop_assert_eq!(at(&(&a + &b)).unwrap(), x + y);
        }
    }

    #[test]
    fn theta_reverses_products(x in free_element(), y in free_element()) {
        prop_assert_eq!((&x * &y).theta(), &y.theta() * &x.theta());
        prop_assert_eq!(x.theta().theta(), x);
    }

    #[test]
    fn jacobi(x in free_element(), y in free_element(), z in free_element()) {
        let j = &(&x.bracket(&y.bracket(&z)) + &y.bracket(&z.bracket(&x))) + &z.bracket(&x.bracket(&y));
        prop_assert!(j.is_zero());
        prop_assert_eq!(x.bracket(&y), -y.bracket(&x));
    }

    #[test]
    fn bracket_of_words_is_homogeneous(u in word(4), v in word(4)) {
        let b = FreeElement::word(u.clone()).bracket(&FreeElement::word(v.clone()));
        prop_assert!(b.is_zero() || b.degree() == Some(u.len() + v.len()));
        prop_assert!(b.is_homogeneous());
    }

    #[test]
    fn hall_rewrite_preserves_expansion(t in tree(6), c in -3i64..=3) {
        let c = RatFunc::from_i64(c);
        let series = hall_rewrite(&[(t.clone(), c.clone())]).unwrap();
        let back = HallBasis::standard().series_to_free(&series).unwrap();
        prop_assert_eq!(&back, &expand(&t).scale(&c));
        prop_assert_eq!(HallBasis::standard().coords_by_solve(&back).unwrap(), series);
    }

    #[test]
    fn lie_elements_are_theta_odd(t in tree(6)) {
        let f = expand(&t);
        prop_assert_eq!(f.theta(), -f);
    }

    #[test]
    fn span_coordinates_reconstruct(cs in prop::collection::vec(-3i64..=3, 4)) {
        let fam: Vec<FreeElement> = ["[B,A]", "[C,A]", "[[B,A],C]", "A*B*C"]
            .iter()
            .map(|s| parse_expr(s).unwrap().to_free().unwrap())
            .collect();
        let target = fam.iter().zip(&cs).fold(FreeElement::zero(), |acc, (v, c)| &acc + &v.scale(&RatFunc::from_i64(*c)));
        let mut all = fam.clone();
        all.push(target.clone());
        let basis = BasisIndex::from_support(&all, |a: &Word, b: &Word| a.cmp(b));
        prop_assert_eq!(rank_of(&fam, &basis).unwrap().rank, 4);
        let coords = in_span(&target, &fam, &basis).unwrap();
        let expected: Vec<RatFunc> = cs.iter().map(|c| RatFunc::from_i64(*c)).collect();
        prop_assert_eq!(coords, expected);
    }

    #[test]
    fn expr_print_parse_is_stable(src in expr_source()) {
        let first = parse_expr(&src).unwrap();
        let printed = first.to_string();
        let second = parse_expr(&printed).unwrap();
        prop_assert_eq!(&second, &first);
        prop_assert_eq!(second.to_string(), printed);
    }

    #[test]
    fn normal_form_is_a_fixed_point(src in expr_source()) {
        let e = Engine::standard();
        let x = parse_expr(&src).unwrap().to_uaw(e).unwrap();
        let again = parse_expr(&x.to_string()).unwrap().to_uaw(e).unwrap();
        prop_assert_eq!(again, x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn checks_are_deterministic(i in 1u32..=3, j in 1u32..=3, k in 1u32..=3) {
        let params: Params = [("i", i), ("j", j), ("k", k)].iter().map(|(n, v)| (n.to_string(), *v)).collect();
        let a = verify::run_check("filtration_mixed", &params).unwrap();
        let b = verify::run_check("filtration_mixed", &params).unwrap();
        prop_assert!(a.passed);
        prop_assert_eq!(a.passed, b.passed);
        prop_assert_eq!(a.witness, b.witness);
    }
}
