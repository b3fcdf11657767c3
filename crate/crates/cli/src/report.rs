//! Machine-readable run reports for the harness commands.
//!
//! Reports are byte-stable for fixed inputs and tool version, except for
//! the trailing `wall_ms` field.

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct InputDigest {
    pub name: String,
    pub digest: String,
}

#[derive(Serialize)]
pub struct Counts {
    pub cases: usize,
    pub certified: usize,
    pub failed: usize,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub mode: String,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub jobs: usize,
    pub counts: Counts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<Value>,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.counts.failed == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "{} mode={} cases={} certified={} failed={} ({} ms)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.mode,
            self.counts.cases,
            self.counts.certified,
            self.counts.failed,
            self.wall_ms
        )
    }
}

/// FNV-1a 64-bit digest; a stable input fingerprint, not a cryptographic
/// hash.
pub fn digest(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a:{hash:016x}")
}

pub fn digest_value(value: &Value) -> String {
    digest(value.to_string().as_bytes())
}
