//! Golden-file runner. Each entry is a pair `<name>.args` (one argument per
//! line) and `<name>.expected` (exit code line followed by the report).

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::{exit, report::Outcome, run_args};

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// The bytes an entry is compared against.
pub fn render(outcome: &Outcome) -> String {
    let body = match &outcome.report {
        Some(r) => r.to_json(),
        None => outcome.text.clone(),
    };
    format!("exit: {}\n{body}", outcome.code)
}

pub fn read_args(path: &Path) -> std::io::Result<Vec<String>> {
    Ok(fs::read_to_string(path)?.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect())
}

pub fn run_entry(args: &[String]) -> String {
    let argv = std::iter::once("recipdim".to_string()).chain(args.iter().cloned());
    render(&run_args(argv))
}

fn diff(expected: &str, actual: &str) -> String {
    let e: Vec<&str> = expected.lines().collect();
    let a: Vec<&str> = actual.lines().collect();
    let mut out = String::new();
    let mut shown = 0;
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i), a.get(i));
        if x != y {
            if let Some(x) = x {
                out.push_str(&format!("  {:>4} - {x}\n", i + 1));
            }
            if let Some(y) = y {
                out.push_str(&format!("  {:>4} + {y}\n", i + 1));
            }
            shown += 1;
            if shown == 12 {
                out.push_str("  ...\n");
                break;
            }
        }
    }
    out
}

fn entries(dir: &Path) -> std::io::Result<Vec<(String, PathBuf)>> {
    let mut out: Vec<(String, PathBuf)> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "args"))
        .map(|p| (p.file_stem().unwrap_or_default().to_string_lossy().into_owned(), p))
        .collect();
    out.sort();
    Ok(out)
}

pub fn run(dir: Option<&Path>, bless: bool) -> Outcome {
    let dir = dir.map(Path::to_path_buf).unwrap_or_else(default_dir);
    let list = match entries(&dir) {
        Ok(l) => l,
        Err(e) => return Outcome::message(exit::UNSUPPORTED, format!("cannot read corpus {}: {e}\n", dir.display())),
    };
    if list.is_empty() {
        return Outcome::message(exit::UNSUPPORTED, format!("corpus {} has no entries\n", dir.display()));
    }
    let results: Vec<(String, Result<Option<String>, String>)> = list
        .par_iter()
        .map(|(name, path)| {
            let r = (|| {
                let args = read_args(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                let actual = run_entry(&args);
                let expected_path = path.with_extension("expected");
                if bless {
                    fs::write(&expected_path, &actual).map_err(|e| format!("cannot write {}: {e}", expected_path.display()))?;
                    return Ok(None);
                }
                let expected = fs::read_to_string(&expected_path)
                    .map_err(|e| format!("cannot read {}: {e}", expected_path.display()))?;
                Ok((expected != actual).then(|| diff(&expected, &actual)))
            })();
            (name.clone(), r)
        })
        .collect();
    let mut text = String::new();
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(None) => text.push_str(&format!("ok       {name}\n")),
            Ok(Some(d)) => {
                failed += 1;
                text.push_str(&format!("MISMATCH {name}\n{d}"));
            }
            Err(e) => {
                failed += 1;
                text.push_str(&format!("ERROR    {name}: {e}\n"));
            }
        }
    }
    text.push_str(&format!("{} entries, {failed} failed\n", results.len()));
    Outcome::message(if failed == 0 { exit::EXACT } else { exit::CORPUS_MISMATCH }, text)
}
