//! The JSON report every command emits.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const CAVEAT_ACYCLIC: &str = dh_core::hierarchy::CAVEAT_ACYCLIC;
pub const CAVEAT_TRUNCATED: &str = dh_core::hierarchy::CAVEAT_TRUNCATED;
pub const CAVEAT_HOMOLOGY_ONLY: &str =
    "in dimension three and up spheres and disks are certified up to homology only";

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub config: Value,
    pub verdict: Verdict,
    pub caveats: Vec<String>,
    pub result: Value,
}

pub fn digest(path: &Path, bytes: &[u8]) -> InputDigest {
    let hash = Sha256::digest(bytes);
    InputDigest {
        path: path.display().to_string(),
        sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digests_are_hex_sha256() {
        let d = digest(Path::new("x"), b"abc");
        assert_eq!(
            d.sha256,
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn reports_end_with_a_newline() {
        let r = Report {
            command: vec!["dh".into()],
            inputs: Vec::new(),
            config: Value::Null,
            verdict: Verdict::from_pass(false),
            caveats: Vec::new(),
            result: Value::Null,
        };
        let text = r.to_json();
        assert!(text.ends_with("}\n"));
        assert!(text.contains(r#""verdict": "fail""#));
    }
}
