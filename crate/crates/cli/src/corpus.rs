//! Golden fixtures: each case is a command line and a set of JSON pointers
//! into its report with the expected values.

use std::collections::BTreeMap;
use std::path::Path;

use clap::Parser;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::report::{digest, InputDigest};
use crate::{execute, Cli, CliError, Command};

#[derive(Debug, Deserialize)]
struct Case {
    name: String,
    args: Vec<String>,
    #[serde(default)]
    expect: BTreeMap<String, Value>,
}

#[derive(Debug, Deserialize)]
struct Fixtures {
    cases: Vec<Case>,
}

fn resolve(dir: &Path, arg: &str) -> String {
    if let Some(rest) = arg.strip_prefix("perm:") {
        return format!("perm:{}", resolve(dir, rest));
    }
    if arg.starts_with('-') {
        return arg.to_string();
    }
    let p = dir.join(arg);
    if p.is_file() {
        p.display().to_string()
    } else {
        arg.to_string()
    }
}

pub(crate) fn run(dir: &Path, inputs: &mut Vec<InputDigest>) -> Result<(bool, Value), CliError> {
    let path = dir.join("fixtures.json");
    let bytes = std::fs::read(&path).map_err(|e| CliError::Io(path.clone(), e))?;
    inputs.push(digest(&path, &bytes));
    let fixtures: Fixtures = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;

    let mut results = Vec::new();
    let mut all = true;
    for case in &fixtures.cases {
        let mut argv = vec!["dh".to_string()];
        argv.extend(case.args.iter().map(|a| resolve(dir, a)));
        let cli = Cli::try_parse_from(&argv)
            .map_err(|e| CliError::Input(format!("case {}: {e}", case.name)))?;
        if matches!(cli.command, Command::Corpus { .. }) {
            return Err(CliError::Input(format!("case {}: corpus cannot nest", case.name)));
        }
        let mismatches: Vec<Value> = match execute(&cli, &argv) {
            Ok(report) => {
                let report = serde_json::to_value(&report).expect("reports serialize");
                case.expect
                    .iter()
                    .filter_map(|(pointer, want)| {
                        let got = report.pointer(pointer).cloned().unwrap_or(Value::Null);
                        (got != *want).then(|| json!({"pointer": pointer, "expected": want, "found": got}))
                    })
                    .collect()
            }
            Err(e) => {
                let want = case.expect.get("/error");
                let got = Value::String(e.to_string());
                match want {
                    Some(Value::String(prefix)) if e.to_string().starts_with(prefix.as_str()) => Vec::new(),
                    _ => vec![json!({"pointer": "/error", "expected": want, "found": got})],
                }
            }
        };
        let pass = mismatches.is_empty();
        all &= pass;
        results.push(json!({"name": case.name, "pass": pass, "mismatches": mismatches}));
    }
    // the cases reset the global limits; restore the defaults
    dh_core::limits::set_max_cells(dh_core::limits::DEFAULT_MAX_CELLS);
    dh_core::limits::set_max_chambers(dh_core::limits::DEFAULT_MAX_CHAMBERS);
    Ok((all, json!({"cases": results.len(), "failures": results.iter().filter(|r| r["pass"] == false).count(), "results": results})))
}
