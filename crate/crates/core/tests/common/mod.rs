#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn corpus() -> Vec<(String, String)> {
    let mut files: Vec<_> = fs::read_dir(fixtures().join("corpus"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cspace"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect()
}

pub fn corpus_file(name: &str) -> String {
    fs::read_to_string(fixtures().join("corpus").join(name)).unwrap()
}

/// Runs the CLI in process: `(exit code, stdout, stderr)`.
pub fn run(args: &[String]) -> (i32, String, String) {
    let argv = std::iter::once("cspace".to_string()).chain(args.iter().cloned());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cspace::cli::run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub struct GoldenCase {
    pub name: String,
    pub args: Vec<String>,
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let corpus = fixtures().join("corpus");
    fs::read_to_string(fixtures().join("golden/commands.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut words = l.split_whitespace();
            let name = words.next().unwrap().to_string();
            let args = words.map(|w| w.replace("{corpus}", corpus.to_str().unwrap())).collect();
            GoldenCase { name, args }
        })
        .collect()
}

/// Runs one golden case and compares its output byte for byte.
pub fn check_golden(case: &GoldenCase, scratch: &Path) -> Result<(), String> {
    let out_path = scratch.join(&case.name);
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| a.replace("{out}", out_path.to_str().unwrap()))
        .collect();
    let writes_file = case.args.iter().any(|a| a.contains("{out}"));
    let (code, stdout, stderr) = run(&args);
    if code != 0 {
        return Err(format!("{}: exit {code}: {stderr}", case.name));
    }
    let actual = if writes_file {
        fs::read_to_string(&out_path).map_err(|e| format!("{}: {e}", case.name))?
    } else {
        stdout
    };
    let expected = fs::read_to_string(fixtures().join("golden").join(&case.name)).unwrap();
    if actual == expected {
        Ok(())
    } else {
        Err(format!("{}: output differs from golden file", case.name))
    }
}
