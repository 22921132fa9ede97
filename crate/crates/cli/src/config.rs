use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use wtred::css::DistanceOptions;
use wtred::fixtures::{self, Fixture};
use wtred::gf2::io::{parse_alist, parse_text};
use wtred::quantum_wtred::{ConingOptions, CopyVariant, Heights, HeightsSpec, PipelineOptions};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Hgp,
    Lp,
    None,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ReduceMode {
    #[default]
    Classical,
    Quantum,
}

/// Where the code comes from; exactly one field may be set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InputSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    /// Classical parity-check matrix, text or `.alist`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub css: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<PathBuf>,
}

impl InputSpec {
    fn count(&self) -> usize {
        [self.fixture.is_some(), self.matrix.is_some(), self.css.is_some(), self.base.is_some()]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    pub fn load(&self) -> Result<Fixture, CliError> {
        match self.count() {
            0 => return Err(CliError::Usage("no input given (fixture, matrix, css or base)".into())),
            1 => {}
            _ => return Err(CliError::Usage("give exactly one input".into())),
        }
        let input = if let Some(name) = &self.fixture {
            fixtures::by_name(name).ok_or_else(|| {
                CliError::Usage(format!("unknown fixture `{name}` (known: {})", fixtures::NAMES.join(", ")))
            })?
        } else if let Some(p) = &self.matrix {
            let text = read(p)?;
            let m = if p.extension().is_some_and(|e| e == "alist") {
                parse_alist(&text)
            } else {
                parse_text(&text)
            };
            Fixture::Classical(m.map_err(|e| CliError::parse(p, e))?)
        } else if let Some(p) = &self.css {
            Fixture::Css(wtred::css::CssCode::parse(&read(p)?).map_err(|e| CliError::lib_at(p, e))?)
        } else if let Some(p) = &self.base {
            Fixture::Base(wtred::ring::BaseMatrix::parse(&read(p)?).map_err(|e| CliError::parse(p, e))?)
        } else {
            unreachable!("count checked")
        };
        let empty = match &input {
            Fixture::Classical(m) => m.rows() == 0 || m.cols() == 0,
            Fixture::Css(c) => c.n() == 0,
            Fixture::Base(b) => b.rows() == 0 || b.cols() == 0,
        };
        if empty {
            return Err(CliError::Usage("input matrix is empty".into()));
        }
        Ok(input)
    }
}

fn read(p: &Path) -> Result<String, CliError> {
    fs::read_to_string(p).map_err(|source| CliError::Read { path: p.to_owned(), source })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DistanceConfig {
    pub enabled: bool,
    /// Largest weight searched exhaustively.
    pub budget: usize,
    /// Information-set samples beyond the budget.
    pub trials: usize,
}

impl Default for DistanceConfig {
    fn default() -> Self {
        let d = DistanceOptions::default();
        DistanceConfig {
            enabled: true,
            budget: d.budget,
            trials: d.trials,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuantumConfig {
    pub copy: CopyVariant,
    pub ell: usize,
    pub heights: Heights,
    pub cone_above: usize,
    pub coning: ConingOptions,
    pub second_thickening: Option<HeightsSpec>,
}

impl Default for QuantumConfig {
    fn default() -> Self {
        QuantumConfig {
            copy: CopyVariant::Reduced,
            ell: 3,
            heights: Heights::Greedy(3),
            cone_above: 5,
            coning: ConingOptions::default(),
            second_thickening: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReduceConfig {
    pub mode: ReduceMode,
    pub compressed: bool,
    /// Permuted classical reductions tried on top of the unpermuted one.
    pub permutations: usize,
    pub quantum: QuantumConfig,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// Directory for code files.
    pub dir: Option<PathBuf>,
    /// JSON report path; stdout when unset.
    pub report: Option<PathBuf>,
}

/// Everything a command needs. The seed drives permutations, coning trials
/// and distance sampling.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub input: InputSpec,
    pub construction: Option<Construction>,
    pub reduce: ReduceConfig,
    pub distance: DistanceConfig,
    pub cycles: bool,
    pub seed: u64,
    pub output: OutputConfig,
}

impl RunConfig {
    /// Reads JSON or TOML by extension.
    pub fn from_file(p: &Path) -> Result<Self, CliError> {
        let text = read(p)?;
        let bad = |e: String| CliError::Config(format!("{}: {e}", p.display()));
        match p.extension().and_then(|e| e.to_str()) {
            Some("toml") => toml::from_str(&text).map_err(|e| bad(e.to_string())),
            Some("json") => serde_json::from_str(&text).map_err(|e| bad(e.to_string())),
            _ => Err(bad("expected a .json or .toml file".into())),
        }
    }

    /// SHA-256 of the canonical JSON form, output paths excluded.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.output = OutputConfig::default();
        let bytes = serde_json::to_vec(&c).expect("config serializes");
        Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    pub fn distance_options(&self) -> DistanceOptions {
        DistanceOptions {
            budget: self.distance.budget,
            trials: self.distance.trials,
            seed: self.seed,
        }
    }

    pub fn pipeline_options(&self) -> PipelineOptions {
        let q = &self.reduce.quantum;
        PipelineOptions {
            copy: q.copy,
            thickening: HeightsSpec {
                ell: q.ell,
                heights: q.heights.clone(),
            },
            cone_above: q.cone_above,
            coning: ConingOptions {
                seed: self.seed,
                ..q.coning
            },
            second_thickening: q.second_thickening.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_and_json_agree() {
        let t: RunConfig = toml::from_str(
            "seed = 3\nconstruction = \"lp\"\n[input]\nfixture = \"qc2\"\n[reduce]\nmode = \"quantum\"\n[reduce.quantum]\nheights = \"greedy:2\"\ncopy = { kind = \"targeted\", targ_q_x = 3 }\n",
        )
        .unwrap();
        let j: RunConfig = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(t, j);
        assert_eq!(t.reduce.quantum.heights, Heights::Greedy(2));
        assert_eq!(t.reduce.quantum.copy, CopyVariant::Targeted { targ_q_x: 3 });
        assert_eq!(t.hash(), j.hash());
    }

    #[test]
    fn hash_ignores_output() {
        let a = RunConfig::default();
        let mut b = a.clone();
        b.output.dir = Some("elsewhere".into());
        assert_eq!(a.hash(), b.hash());
        b.seed = 1;
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn input_needs_exactly_one_source() {
        assert!(matches!(InputSpec::default().load(), Err(CliError::Usage(_))));
        let two = InputSpec {
            fixture: Some("code633".into()),
            matrix: Some("m.txt".into()),
            ..InputSpec::default()
        };
        assert!(matches!(two.load(), Err(CliError::Usage(_))));
    }
}
