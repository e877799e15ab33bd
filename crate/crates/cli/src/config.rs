use std::fmt;
use std::str::FromStr;

use qjoin_core::index::{parse_rational, Precision};
use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hopf,
    Corep,
    Join,
    Idempotent,
    Index,
    Classic,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Hopf, Suite::Corep, Suite::Join, Suite::Idempotent, Suite::Index, Suite::Classic];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Corep => "corep",
            Suite::Join => "join",
            Suite::Idempotent => "idempotent",
            Suite::Index => "index",
            Suite::Classic => "classic",
            Suite::All => "all",
        }
    }

    /// The suites this selector runs, in report order.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s.to_ascii_lowercase())
            .copied()
            .ok_or_else(|| {
                CliError::Config(format!(
                    "unknown suite {s:?}; expected hopf, corep, join, idempotent, index, classic or all"
                ))
            })
    }
}

/// Everything a suite run depends on. Echoed verbatim in the report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub suite: Suite,
    /// Deformation parameter for the index suite, as written.
    pub q: String,
    pub n: u32,
    pub k: i64,
    pub threshold: f64,
    pub samples: usize,
    pub seed: u64,
    pub grid: String,
    pub precision: String,
}

impl RunConfig {
    pub fn new(suite: Suite) -> Self {
        RunConfig {
            suite,
            q: "0.5".into(),
            n: 40,
            k: 40,
            threshold: 1e-8,
            samples: 200,
            seed: 7,
            grid: "0,0.5,1".into(),
            precision: Precision::F64.to_string(),
        }
    }

    /// Rejects values no suite can use.
    pub fn validate(&self) -> Result<(), CliError> {
        let q = parse_rational(&self.q).map_err(|e| CliError::Config(e.to_string()))?;
        let zero = parse_rational("0").expect("literal");
        let one = parse_rational("1").expect("literal");
        if q <= zero || q >= one {
            return Err(CliError::Config(format!("--q must lie in (0, 1), got {}", self.q)));
        }
        if self.n < 2 || self.k < 2 {
            return Err(CliError::Config("--n and --k must be at least 2".into()));
        }
        if self.threshold.is_nan() || self.threshold <= 0.0 {
            return Err(CliError::Config("--threshold must be positive".into()));
        }
        qjoin_core::classic::parse_grid(&self.grid).map_err(|e| CliError::Config(e.to_string()))?;
        self.precision()?;
        Ok(())
    }

    pub fn precision(&self) -> Result<Precision, CliError> {
        self.precision.parse().map_err(CliError::Config)
    }

    /// Seed for one suite, so suites are independent of run order.
    pub fn suite_seed(&self, suite: Suite) -> u64 {
        let salt = Suite::EACH.iter().position(|&s| s == suite).unwrap_or(0) as u64;
        self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }
}
