use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::qism::TypeTag;
use crate::symcore::var::{A, B, C, DELTA};
use crate::symcore::{Var, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Qism1,
    Qism2,
    Miller,
    Gab,
    Envalg,
    Pairs,
    Strings,
    Prop54,
    JacobiRank1,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Qism1,
        Suite::Qism2,
        Suite::Miller,
        Suite::Gab,
        Suite::Envalg,
        Suite::Pairs,
        Suite::Strings,
        Suite::Prop54,
        Suite::JacobiRank1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Qism1 => "qism1",
            Suite::Qism2 => "qism2",
            Suite::Miller => "miller",
            Suite::Gab => "gab",
            Suite::Envalg => "envalg",
            Suite::Pairs => "pairs",
            Suite::Strings => "strings",
            Suite::Prop54 => "prop54",
            Suite::JacobiRank1 => "jacobi-rank1",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?}; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    /// Restrict the operator suites to these types; empty means all that apply.
    pub types: Vec<TypeTag>,
    pub precision: usize,
    /// Basis truncation degree for operators with inverse entries.
    pub degree: u32,
    /// Sample points per numeric check.
    pub samples: usize,
    pub seed: u64,
    /// Random words for the association test in `envalg`.
    pub words: usize,
    /// Per-type values for `a`, `b`, `c`, `delta`, as rationals like `"2/7"`.
    pub params: BTreeMap<String, BTreeMap<String, String>>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Vec::new(),
            types: Vec::new(),
            precision: 192,
            degree: 12,
            samples: 5,
            seed: 0,
            words: 1000,
            params: BTreeMap::new(),
            out: None,
            format: Format::Json,
        }
    }
}

impl SuiteConfig {
    pub fn from_toml_str(s: &str) -> Result<Self, CliError> {
        toml::from_str(s).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let s = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e.to_string()))?;
        Self::from_toml_str(&s)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.suites.is_empty() {
            return bad("no suites selected".into());
        }
        if self.precision < 64 {
            return bad(format!("precision {} is below 64 bits", self.precision));
        }
        if self.degree < 4 {
            return bad(format!("degree {} is below 4", self.degree));
        }
        if self.samples < 3 {
            return bad(format!("need at least 3 samples, got {}", self.samples));
        }
        for tag in self.params.keys() {
            tag.parse::<TypeTag>().map_err(CliError::Config)?;
        }
        for t in TypeTag::ALL {
            self.overrides(t)?;
        }
        Ok(())
    }

    /// Numeric tolerance used by the ladder suites.
    pub fn tolerance(&self) -> f64 {
        2f64.powi(-((self.precision / 4) as i32))
    }

    pub fn wants(&self, tag: TypeTag) -> bool {
        self.types.is_empty() || self.types.contains(&tag)
    }

    /// Parameter values to substitute into type `tag`.
    pub fn overrides(&self, tag: TypeTag) -> Result<Vec<(Var, Q)>, CliError> {
        let Some(map) = self.params.iter().find(|(k, _)| k.parse::<TypeTag>() == Ok(tag)).map(|(_, v)| v) else {
            return Ok(Vec::new());
        };
        map.iter()
            .map(|(k, v)| {
                let var = match k.as_str() {
                    "a" => A,
                    "b" => B,
                    "c" => C,
                    "delta" => DELTA,
                    _ => return Err(CliError::Config(format!("{tag}: unknown parameter {k:?}"))),
                };
                let val = v.parse::<Q>().map_err(|e| CliError::Config(format!("{tag}.{k} = {v:?}: {e}")))?;
                Ok((var, val))
            })
            .collect()
    }
}
