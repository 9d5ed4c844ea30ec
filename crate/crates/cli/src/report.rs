use coverext::lp::SolverStats;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Printed as JSON on stdout after every analysis command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// `sha256:<hex>` of the input bytes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub result: serde_json::Value,
    pub wall_time_us: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver_stats: Option<SolverStats>,
    pub exit_code: i32,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}
