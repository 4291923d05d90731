mod common;

use cspace::format::{build_space, parse_cspace, serialize};
use cspace::Error;
use proptest::prelude::*;

#[test]
fn corpus_has_twenty_files() {
    assert_eq!(common::corpus().len(), 20);
}

#[test]
fn corpus_round_trips() {
    for (name, text) in common::corpus() {
        let spec = parse_cspace(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let canonical = serialize(&spec);
        let again = parse_cspace(&canonical).unwrap_or_else(|e| panic!("{name} (serialized): {e}"));
        assert_eq!(spec, again, "{name}");
        assert_eq!(serialize(&again), canonical, "{name}");
    }
}

#[test]
fn undefined_isa_target_is_reported_at_its_line() {
    let err = parse_cspace("dim a.x linear 0 1\nconcept dog box 0..1\n\nisa dog animol\n").unwrap_err();
    assert_eq!(err.line, 4);
    assert!(err.message.contains("animol"), "{}", err.message);
}

#[test]
fn minimal_file() {
    let spec = parse_cspace("dim a.x linear 0 1\nconcept c box 0..1\n").unwrap();
    assert_eq!(spec.dims.len(), 1);
    assert_eq!(spec.concepts.len(), 1);
    assert_eq!(build_space(&spec).unwrap().dims(), 1);
}

const KEYWORDS: &[&str] = &[
    "space", "inter", "domain", "dim", "linear", "circular", "concept", "box", "hull", "ball",
    "exemplars", "sigma", "prototype", "exemplar", "rbf", "isa", "track", "pre", "post", "fuzzy",
    "conjunction", "weight", "p", "a.x", "a.y", "c", "d", "0", "1", "-3", "1e400", "nan", "0..1",
    "5..2", "1,2", "1,,2", "0.5", "#", "..", ",", "é",
];

fn token() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => proptest::sample::select(KEYWORDS).prop_map(str::to_string),
        1 => "[ -~]{0,6}",
    ]
}

fn line() -> impl Strategy<Value = String> {
    proptest::collection::vec(token(), 0..7).prop_map(|t| t.join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn parser_is_total(lines in proptest::collection::vec(line(), 0..8)) {
        let text = lines.join("\n");
        match parse_cspace(&text) {
            Ok(spec) => {
                let again = parse_cspace(&serialize(&spec));
                prop_assert_eq!(again.as_ref(), Ok(&spec));
            }
            Err(e) => {
                prop_assert!(e.line >= 1 && e.line <= lines.len().max(1), "{e:?} for {text:?}");
                prop_assert!(e.column >= 1, "{e:?}");
                prop_assert!(!e.message.is_empty());
            }
        }
    }

    #[test]
    fn arbitrary_bytes_never_panic(text in "\\PC{0,200}") {
        if let Err(e) = parse_cspace(&text) {
            prop_assert!(e.line >= 1 && e.column >= 1);
        }
    }

    #[test]
    fn generated_specs_round_trip(
        mins in proptest::collection::vec(-1e6f64..1e6, 1..4),
        spans in proptest::collection::vec(1e-3f64..1e3, 4),
        frac in 0.0f64..1.0,
    ) {
        let mut text = String::new();
        for (i, m) in mins.iter().enumerate() {
            text += &format!("dim d.x{i} linear {m} {}\n", m + spans[i]);
        }
        let iv: Vec<String> = mins
            .iter()
            .enumerate()
            .map(|(i, m)| format!("{}..{}", m, m + spans[i] * frac.max(1e-3)))
            .collect();
        text += &format!("concept c box {}\n", iv.join(" "));
        let spec = parse_cspace(&text).unwrap();
        prop_assert_eq!(parse_cspace(&serialize(&spec)).unwrap(), spec);
    }
}

#[test]
fn build_errors_carry_locations() {
    let spec = parse_cspace("dim a.x linear 0 10\nconcept z ball 50 1\n").unwrap();
    let space = build_space(&spec).unwrap();
    match cspace::format::build_concepts(&spec, &space, 42) {
        Err(Error::Parse(e)) => assert_eq!(e.line, 2),
        other => panic!("{other:?}"),
    }
}
