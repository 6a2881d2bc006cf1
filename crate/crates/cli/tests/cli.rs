mod common;

use std::io::Write;

use common::{corpus, corpus_files, load, round_trip, twocolim};
use twocolim_cli::workspace::{load_sources, DEFAULT_MAX_ELAB};

fn path(name: &str) -> String {
    corpus(name).to_string_lossy().into_owned()
}

#[test]
fn terminal_file_holds_one_category() {
    let ws = load(&corpus("terminal.catml"));
    assert_eq!(ws.categories.len(), 1);
    let c = &ws.categories[0];
    assert_eq!((c.num_objects(), c.num_morphisms()), (1, 1));
}

#[test]
fn every_corpus_file_round_trips() {
    for f in corpus_files() {
        round_trip(&load(&f)).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
    }
}

#[test]
fn walking_arrow_is_filtered() {
    let r = twocolim(&["filtered", "--category", "TwoArrow", &path("walking_arrow.catml")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("TwoArrow: filtered"));
}

#[test]
fn parallel_pair_is_not_filtered() {
    let r = twocolim(&["--format", "json", "filtered", "--category", "ParPair", &path("nonfiltered.catml")]);
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["status"], "false");
    assert_eq!(v["result"]["counterexample"]["condition"], "iii");
    assert_eq!(v["result"]["counterexample"]["replays"], true);
}

#[test]
fn colim_over_non_filtered_index_is_refused() {
    let r = twocolim(&["--format", "json", "colim", "--pseudofunctor", "B", &path("nonfiltered.catml")]);
    assert_eq!(r.code, 2);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["error"]["code"], "E_NOT_FILTERED");
}

#[test]
fn interchange_on_the_square_is_true() {
    let r = twocolim(&["--format", "json", "interchange", "--pseudofunctor", "A", &path("interchange_2x2.catml")]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["result"]["verdict"], true);
    assert_eq!(v["result"]["preimage_failures"].as_array().unwrap().len(), 0);
}

#[test]
fn diagnostic_interchange_over_discrete_index_fails() {
    let f = path("nonfiltered.catml");
    assert_eq!(twocolim(&["interchange", "--pseudofunctor", "D", &f]).code, 2);
    let r = twocolim(&["--format", "json", "interchange", "--pseudofunctor", "D", "--diagnostic-skip-filter-check", &f]);
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["result"]["verdict"], false);
    assert_eq!(v["result"]["colim_of_lims"]["objects"], 2);
    assert_eq!(v["result"]["lim_of_colims"]["objects"], 4);
}

#[test]
fn colim_reports_class_representatives() {
    let r = twocolim(&["--format", "json", "colim", "--pseudofunctor", "T", &path("pseudo.catml")]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let classes = v["result"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 8);
    assert!(classes.iter().all(|c| c["members"].as_u64().unwrap() >= 1));
}

#[test]
fn factorizations_are_unique() {
    for flag in [["--cocone", "R"], ["--cocone", "R2"], ["--cone", "K"], ["--cone", "K2"]] {
        let r = twocolim(&["--format", "json", "factor", "--pseudofunctor", "P", flag[0], flag[1], &path("cocones.catml")]);
        assert_eq!(r.code, 0, "{flag:?}");
        let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["result"]["on_the_nose"], true);
        assert_eq!(v["result"]["strict_factorizations"], 1);
    }
}

#[test]
fn fuzz_single_case_passes() {
    let r = twocolim(&["fuzz", "--cases", "1", "--seed", "0"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("1 of 1 passed"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let runs: Vec<Vec<String>> = vec![
        vec!["--format".into(), "json".into(), "fuzz".into(), "--cases".into(), "6".into(), "--seed".into(), "3".into()],
        vec!["interchange".into(), "--pseudofunctor".into(), "A".into(), path("interchange_2x2.catml")],
        vec!["--format".into(), "json".into(), "lim".into(), "--pseudofunctor".into(), "P".into(), path("cocones.catml")],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (twocolim(&args), twocolim(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn syntax_errors_carry_a_location() {
    let mut f = tempfile::Builder::new().suffix(".catml").tempfile().unwrap();
    write!(f, "[category C]\nobjects = a b\nmor f : a b\n").unwrap();
    let r = twocolim(&["--format", "json", "validate", f.path().to_str().unwrap()]);
    assert_eq!(r.code, 2);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["error"]["code"], "E_SYNTAX");
    assert_eq!(v["error"]["location"]["line"], 3);
}

#[test]
fn undeclared_composite_is_unresolved() {
    let e = load_sources(
        &[("t".into(), "[category C]\nobjects = a b\nmor f : a -> b\nmor g : b -> b\ncompose g f = h\n".into())],
        DEFAULT_MAX_ELAB,
    )
    .unwrap_err();
    assert_eq!(e.code(), "E_UNRESOLVED_REFERENCE");
}

#[test]
fn max_elab_bounds_generated_categories() {
    let mut f = tempfile::Builder::new().suffix(".catml").tempfile().unwrap();
    write!(f, "[category C]\nobjects = a b c\nmor f : a -> b\nmor g : b -> c\n").unwrap();
    let p = f.path().to_str().unwrap();
    assert_eq!(twocolim(&["validate", p]).code, 0);
    let r = twocolim(&["--max-elab", "5", "--format", "json", "validate", p]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("E_ELABORATION_DIVERGES"));
}

#[test]
fn duplicate_names_are_rejected() {
    let e = load_sources(
        &[
            ("a".into(), "[category C]\nobjects = x\n".into()),
            ("b".into(), "[category C]\nobjects = y\n".into()),
        ],
        DEFAULT_MAX_ELAB,
    )
    .unwrap_err();
    assert_eq!(e.code(), "E_DUPLICATE_IDENTIFIER");
}

#[test]
fn missing_file_is_an_input_error() {
    let r = twocolim(&["validate", "/nonexistent/x.catml"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("E_IO"));
}
