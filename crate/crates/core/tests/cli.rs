mod common;

use common::{check_golden, corpus, fixtures, golden_cases, run};

fn args(s: &str) -> Vec<String> {
    let corpus = fixtures().join("corpus");
    s.split_whitespace()
        .map(|w| w.replace("{corpus}", corpus.to_str().unwrap()))
        .collect()
}

#[test]
fn golden_outputs_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let cases = golden_cases();
    assert!(cases.len() >= 15);
    for case in &cases {
        check_golden(case, dir.path()).unwrap();
        // a second run over the same scratch file must not change anything
        check_golden(case, dir.path()).unwrap();
    }
}

#[test]
fn every_corpus_file_validates() {
    let corpus_dir = fixtures().join("corpus");
    for (name, _) in corpus() {
        let path = corpus_dir.join(&name);
        let (code, out, err) = run(&["validate".into(), "--space".into(), path.to_string_lossy().into()]);
        assert_eq!(code, 0, "{name}: {err}");
        assert!(out.starts_with("ok "), "{name}: {out}");
    }
}

#[test]
fn typicality_prints_one_number() {
    let (code, out, _) = run(&args("typicality --space {corpus}/zebra_polka.cspace --concept zebra --point 1,2"));
    assert_eq!(code, 0);
    let v: f64 = out.trim().parse().unwrap();
    assert!(v > 0.0 && v <= 1.0);
    assert_eq!(out.lines().count(), 1);
}

#[test]
fn seeded_outputs_record_the_seed() {
    let (_, out, _) = run(&args("--seed 7 combine --space {corpus}/zebra_polka.cspace --a zebra --b polka_dot_thing"));
    assert!(out.starts_with("# seed=7\n"), "{out}");
    let (_, again, _) = run(&args("--seed 7 combine --space {corpus}/zebra_polka.cspace --a zebra --b polka_dot_thing"));
    assert_eq!(out, again);
}

#[test]
fn disjoint_conjunction_is_a_domain_error() {
    let (code, out, err) = run(&args("combine --space {corpus}/color_hue.cspace --a red --b blue"));
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("empty conjunction"), "{err}");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(run(&args("frobnicate")).0, 2);
    assert_eq!(run(&args("validate --space {corpus}/does_not_exist.cspace")).0, 2);
    assert_eq!(run(&args("categorize --space {corpus}/voronoi5.cspace --point 1,2,3")).0, 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cspace");
    std::fs::write(&bad, "dim a.x linear 0 1\nisa dog animol\n").unwrap();
    let (code, _, err) = run(&["validate".into(), "--space".into(), bad.to_string_lossy().into()]);
    assert_eq!(code, 2);
    assert!(err.contains("2:"), "{err}");
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run(&args("--help"));
    assert_eq!(code, 0);
    assert!(out.contains("tessellate"));
}

#[test]
fn exemplar_csv_ingestion() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ex.csv");
    std::fs::write(&csv, "label,a,b\ncat,1,1\ncat,2,1.5\ndog,8,8\ndog,9,8.5\n").unwrap();
    let mut a = args("rbf-train --space {corpus}/rbf_training.cspace --k 1 --exemplars");
    a.push(csv.to_string_lossy().into());
    let (code, out, err) = run(&a);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("rbf cat 1.5,1.25 "), "{out}");
    assert!(out.contains("rbf dog 8.5,8.25 "), "{out}");
}

#[test]
fn trajectory_csv_ingestion() {
    let dir = tempfile::tempdir().unwrap();
    let pre = dir.path().join("pre.csv");
    let post = dir.path().join("post.csv");
    std::fs::write(&pre, "object_id,t,x,y\na,0,0,0\na,1,1,1\nb,0,0,10\nb,1,1,9\n").unwrap();
    std::fs::write(&post, "object_id,t,x,y\nu,5,5,5\nv,5,5,5.5\n").unwrap();
    let mut a = args("track --space {corpus}/crossing.cspace --pre");
    a.push(pre.to_string_lossy().into());
    a.push("--post".into());
    a.push(post.to_string_lossy().into());
    let (code, out, err) = run(&a);
    assert_eq!(code, 0, "{err}");
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 2, "{out}");
    assert!(rows[0].starts_with("a,u,"));
    assert!(rows[1].starts_with("b,v,"));
}

#[test]
fn two_prototype_svg_structure() {
    let dir = tempfile::tempdir().unwrap();
    let space = dir.path().join("two.cspace");
    std::fs::write(&space, "dim s.x linear 0 10\ndim s.y linear 0 10\nprototype left 2,5\nprototype right 8,5\n").unwrap();
    let out = dir.path().join("two.svg");
    let argv: Vec<String> = vec![
        "tessellate".into(),
        "--space".into(),
        space.to_string_lossy().into(),
        "--out".into(),
        out.to_string_lossy().into(),
    ];
    assert_eq!(run(&argv).0, 0);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polygon").count(), 2);
    assert_eq!(svg.matches("<circle").count(), 2);
    run(&argv);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), svg);
}

#[test]
fn combine_svg_highlights_the_intersection() {
    let svg = std::fs::read_to_string(fixtures().join("golden/zebra_polka.svg")).unwrap();
    assert_eq!(svg.matches("class=\"region\"").count(), 3);
    assert_eq!(svg.matches("fill-opacity").count(), 1);
    assert!(svg.contains("data-label=\"zebra&amp;polka_dot_thing\""));
}
