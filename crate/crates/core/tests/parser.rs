mod common;

use common::{ratfunc, rf};
use proptest::prelude::*;

use prolongkit::expr::{load_module, parse_ast, parse_expr, render, ModuleDoc, ParseError};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn render_round_trips(f in ratfunc()) {
        prop_assert_eq!(parse_expr(&render(&f)).unwrap(), f);
    }

    #[test]
    fn ast_display_round_trips(f in ratfunc(), g in ratfunc()) {
        let text = format!("({}) * ({}) - ({})^2", render(&f), render(&g), render(&f));
        let ast = parse_ast(&text).unwrap();
        prop_assert_eq!(parse_expr(&ast.to_string()).unwrap(), parse_expr(&text).unwrap());
    }

    #[test]
    fn arbitrary_strings_never_panic(s in "\\PC{0,40}") {
        if let Err(e) = parse_expr(&s) {
            prop_assert!(e.offset() <= s.len());
        }
    }

    #[test]
    fn grammar_soup_never_panics(s in "[xt0-9+*/^() -]{0,60}") {
        match parse_expr(&s) {
            Ok(_) => {}
            Err(e) => prop_assert!(e.offset() <= s.len()),
        }
    }

    #[test]
    fn module_docs_round_trip(m in common::small_module()) {
        let doc = ModuleDoc::from_module(&m, Some("m".into()));
        let json = serde_json::to_vec(&doc).unwrap();
        prop_assert_eq!(load_module(&json).unwrap(), m);
    }
}

#[test]
fn precedence_and_associativity() {
    assert_eq!(rf("-x^2"), rf("-(x^2)"));
    assert_eq!(rf("2^3^2"), rf("512"));
    assert_eq!(rf("x/t/x"), rf("1/t"));
    assert_eq!(rf("1 - x - t"), rf("1 - (x + t)"));
    assert_eq!(rf("x^-1"), rf("1/x"));
}

#[test]
fn errors_carry_offsets() {
    assert_eq!(parse_expr("x +").unwrap_err().offset(), 3);
    assert!(matches!(parse_expr("x $ t"), Err(ParseError::UnexpectedChar { offset: 2, .. })));
    assert!(matches!(parse_expr("1/(x - x)"), Err(ParseError::DivisionByZero { .. })));
    assert!(matches!(parse_expr("x^(1/2)"), Err(ParseError::NonIntegerExponent { .. })));
    assert!(matches!(parse_expr("theta"), Err(ParseError::UnknownIdentifier { .. })));
    assert!(matches!(parse_expr("x^100000"), Err(ParseError::PowerTooLarge { .. })));
}

#[test]
fn deep_input_is_rejected_not_crashed() {
    let deep = format!("{}x{}", "(".repeat(100_000), ")".repeat(100_000));
    assert!(matches!(parse_expr(&deep), Err(ParseError::TooDeep { .. })));
    let negs = format!("{}x", "-".repeat(100_000));
    assert!(parse_expr(&negs).is_err());
}
