use proptest::prelude::*;

use mtv_core::exactnum::{int, rat, ConstSymbol, Weight};
use mtv_core::genfun::{build_fv, closed_form_t, exact_value};
use mtv_core::singular::{reduction_coeffs, reduction_residual, singular_lambda, IdentityFixture};
use mtv_core::tword::regularise;
use mtv_core::{FormalWordSum, SymbolicValue, TWord};

#[test]
fn master_identity_through_order_ten() {
    let v = SymbolicValue::v();
    let f = build_fv(10, &v);
    for a in 0..=10 {
        for b in 0..=10 - a {
            let s = if (a + b) % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(
                closed_form_t(a, b, &v).scale(&s),
                f.coeff(a, b),
                "({a},{b})"
            );
        }
    }
}

#[test]
fn family_words_route_through_closed_form() {
    let v = SymbolicValue::v();
    for (a, b) in [(0, 3), (2, 1), (3, 0)] {
        assert_eq!(
            exact_value(&TWord::family(a, b), &v).unwrap(),
            closed_form_t(a, b, &v)
        );
    }
    // t*(1,1,1) = e₃ of the power sums V, t(2), t(3)
    let w: TWord = "1,1,1".parse().unwrap();
    let got = exact_value(&w, &v).unwrap();
    assert_eq!(
        got,
        SymbolicValue::parse("1/6*V^3 - 1/16*Pi^2*V + 7/24*Zeta(3)").unwrap()
    );
}

#[test]
fn fixtures_round_trip_through_json() {
    for f in [IdentityFixture::weight4(), IdentityFixture::weight5()] {
        let back = IdentityFixture::from_json(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back.lhs, f.lhs);
        assert_eq!(back.rhs, f.rhs);
        assert_eq!(back.lambda().unwrap(), f.lambda().unwrap());
    }
}

#[test]
fn singular_reduction_is_exact_beyond_the_table() {
    for w in [12, 14] {
        let l = singular_lambda(w).unwrap();
        let c = reduction_coeffs(w, &l).unwrap();
        assert!(reduction_residual(w, &l, &c).unwrap().is_zero());
    }
}

fn arb_signed_word() -> impl Strategy<Value = TWord> {
    proptest::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 1..5)
        .prop_map(|e| TWord::from_signed(&e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn v_enters_only_with_trailing_one(a in 0usize..7, b in 0usize..7) {
        let x = closed_form_t(a, b, &SymbolicValue::v());
        prop_assert_eq!(x.contains_symbol(ConstSymbol::V), b == 0);
        prop_assert!(x.v_coefficients().len() <= 2);
    }

    #[test]
    fn substituting_v_commutes(a in 0usize..6, b in 0usize..6, p in -9i64..9, q in 1i64..9) {
        let v = SymbolicValue::log2().scale(&rat(p, q));
        let direct = closed_form_t(a, b, &v);
        let later = closed_form_t(a, b, &SymbolicValue::v()).substitute(ConstSymbol::V, &v);
        prop_assert_eq!(direct, later);
    }

    #[test]
    fn closed_forms_are_homogeneous(a in 0usize..9, b in 0usize..9) {
        let x = closed_form_t(a, b, &SymbolicValue::v());
        prop_assert_eq!(x.weight(), Weight::Homogeneous((a + b + 1) as u32));
        prop_assert!(x.is_gamma_free());
    }

    #[test]
    fn regularisation_preserves_weight(w in arb_signed_word()) {
        let r: FormalWordSum = regularise(&w);
        for (x, c) in r.iter() {
            let cw = match c.weight() { Weight::Homogeneous(n) => n, _ => 0 };
            prop_assert_eq!(x.weight() + cw, w.weight());
        }
    }

    #[test]
    fn symbolic_json_round_trips(a in 0usize..5, b in 0usize..5) {
        let x = closed_form_t(a, b, &SymbolicValue::v());
        let back: SymbolicValue = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        prop_assert_eq!(&back, &x);
        let text: SymbolicValue = serde_json::from_value(serde_json::Value::String(x.to_string())).unwrap();
        prop_assert_eq!(text, x);
    }
}
