use std::num::NonZeroUsize;
use std::time::Duration;

use num_bigint::BigInt;
use polyaut::mapfile::{parse_map, ParsedMap};
use polyaut::report::{Report, VerdictKind};
use polyaut::{parse_polynomial, print_polynomial, VarTable};
use polyaut_core::corpus::{random_recipe, realize};
use polyaut_core::inverter::{
    decide_invertible, CompositionWitness, Evidence, Identity, SolveConfig, Verdict,
};
use polyaut_core::{Monomial, PolyMap, Polynomial, Rational};
use proptest::prelude::*;

fn arb_poly(arity: usize) -> impl Strategy<Value = Polynomial> {
    let term = (
        proptest::collection::vec(0u32..5, arity),
        -60i64..60,
        1i64..12,
    );
    proptest::collection::vec(term, 0..7).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .map(|(e, n, d)| (Monomial::from_exponents(e), Rational::new(BigInt::from(n), BigInt::from(d))));
        Polynomial::from_terms(arity, terms).unwrap()
    })
}

fn arb_arity_poly() -> impl Strategy<Value = Polynomial> {
    (1usize..5).prop_flat_map(arb_poly)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parse_inverts_print(p in arb_arity_poly()) {
        let table = VarTable::standard(p.arity());
        let text = print_polynomial(&p);
        let back = parse_polynomial(&text, &table).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(print_polynomial(&back), text);
    }

    #[test]
    fn custom_names_round_trip(p in arb_poly(3)) {
        let names = ["u", "v_2", "w"];
        let text = p.display_with(&names).to_string();
        prop_assert_eq!(parse_polynomial(&text, &VarTable::new(&names)).unwrap(), p);
    }

    #[test]
    fn map_file_round_trip(a in arb_poly(2), b in arb_poly(2)) {
        let parsed = ParsedMap::with_default_names(PolyMap::new(vec![a, b]).unwrap());
        prop_assert_eq!(parse_map(&parsed.to_file_string()).unwrap(), parsed);
    }
}

fn json_round_trip(input: &ParsedMap, verdict: &Verdict, cfg: &SolveConfig) {
    let doc = Report::new(input, verdict, cfg, Duration::from_millis(3));
    let text = doc.to_json();
    let back = Report::from_json(&text).unwrap();
    assert_eq!(back, doc);
    assert_eq!(&back.to_verdict().unwrap(), verdict, "{text}");
}

#[test]
fn json_reparses_every_verdict() {
    let cfg = SolveConfig::default();
    let ex1 = parse_map("X + Y^3; Y").unwrap();
    let v = decide_invertible(&ex1.map, &cfg);
    assert!(v.is_invertible());
    json_round_trip(&ex1, &v, &cfg);

    let bad = parse_map("X + X^2; Y").unwrap();
    let v = decide_invertible(&bad.map, &cfg);
    assert!(matches!(v, Verdict::NotInvertibleJacobian { .. }));
    json_round_trip(&bad, &v, &cfg);

    let three = parse_map("X1 + X2^2; X2 + X3^2; X3").unwrap();
    let small = SolveConfig { max_order: NonZeroUsize::new(2).unwrap(), ..cfg };
    let v = decide_invertible(&three.map, &small);
    assert_eq!(v, Verdict::BoundExceeded { required: 4, cap: 2 });
    json_round_trip(&three, &v, &small);

    let eager = SolveConfig { eager_check: true, max_order: NonZeroUsize::new(1).unwrap(), ..cfg };
    let v = decide_invertible(&three.map, &eager);
    assert!(matches!(v, Verdict::NotInvertibleComposition { .. }));
    json_round_trip(&three, &v, &eager);

    let point = Verdict::NotInvertibleComposition {
        witness: CompositionWitness {
            identity: Identity::CandidateOfMap,
            index: 1,
            order: 7,
            evidence: Evidence::Point {
                point: vec![Rational::new(3.into(), 7.into()), Rational::from_integer((-2).into())],
                value: Rational::new((-5).into(), 9.into()),
            },
        },
    };
    json_round_trip(&ex1, &point, &cfg);
}

#[test]
fn json_uses_header_names() {
    let input = parse_map("vars: a, b\na + b^2; b").unwrap();
    let cfg = SolveConfig::default();
    let v = decide_invertible(&input.map, &cfg);
    let doc = Report::new(&input, &v, &cfg, Duration::ZERO);
    assert_eq!(doc.verdict, VerdictKind::Invertible);
    assert_eq!(doc.inverse.as_deref(), Some(&["a - b^2".to_string(), "b".to_string()][..]));
    assert_eq!(doc.series.as_ref().unwrap()[1], ["-b^2", "0"]);
    json_round_trip(&input, &v, &cfg);
}

#[test]
fn json_corpus_round_trip() {
    let cfg = SolveConfig::default();
    for seed in 0..10 {
        let (f, _) = realize(&random_recipe(2, 3, 3, seed)).unwrap();
        let input = ParsedMap::with_default_names(f);
        let v = decide_invertible(&input.map, &cfg);
        json_round_trip(&input, &v, &cfg);
    }
}
