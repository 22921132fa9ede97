use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use wtred::classical::LinearCode;
use wtred::classical_wtred::{best_permutation, reduce_base_full, reduce_full, IrreducibleRow, ReductionOptions};
use wtred::css::{css_distance, hgp, hgp_params, lp_square, CssCode, CssParams, DistanceBound, DistanceOptions, Weights};
use wtred::distance::Distance;
use wtred::fixtures::Fixture;
use wtred::gf2::io::to_text;
use wtred::gf2::BinaryMatrix;
use wtred::quantum_wtred::{full_pipeline, StageReport};
use wtred::ring::BaseMatrix;
use wtred::tanner::{count_4cycles, girth, to_dot, CheckType, FourCycles, TannerGraph};

use crate::config::{Construction, ReduceMode, RunConfig};
use crate::error::CliError;

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config_hash: String,
    pub seed: u64,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &'static str, cfg: &RunConfig, body: T) -> Self {
        Report {
            tool: "wtred",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config_hash: cfg.hash(),
            seed: cfg.seed,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Bound {
    pub value: Distance,
    pub lower: Distance,
    pub exact: bool,
}

impl From<&DistanceBound> for Bound {
    fn from(b: &DistanceBound) -> Self {
        Bound {
            value: b.value,
            lower: b.lower,
            exact: b.exact,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeSummary {
    pub n: usize,
    pub k: usize,
    pub rate: f64,
    pub weights: Weights,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_x: Option<Bound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_z: Option<Bound>,
}

impl CodeSummary {
    fn plain(c: &CssCode) -> Self {
        CodeSummary {
            n: c.n(),
            k: c.k(),
            rate: c.k() as f64 / c.n() as f64,
            weights: c.weights(),
            d: None,
            d_x: None,
            d_z: None,
        }
    }

    fn with(c: &CssCode, p: &CssParams) -> Self {
        CodeSummary {
            d: Some(p.d().to_string()),
            d_x: Some((&p.d_x).into()),
            d_z: Some((&p.d_z).into()),
            ..Self::plain(c)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalSummary {
    pub n: usize,
    pub k: usize,
    pub max_row_weight: usize,
    pub max_col_weight: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_exact: Option<bool>,
}

fn classical_distance(h: &BinaryMatrix, opts: &DistanceOptions) -> (Distance, bool) {
    LinearCode::new(h.clone()).distance(opts.budget, opts.trials, opts.seed)
}

fn classical_summary(h: &BinaryMatrix, opts: Option<&DistanceOptions>) -> ClassicalSummary {
    let c = LinearCode::new(h.clone());
    let d = opts.map(|o| classical_distance(h, o));
    ClassicalSummary {
        n: c.n(),
        k: c.k(),
        max_row_weight: h.max_row_weight(),
        max_col_weight: h.max_col_weight(),
        d: d.map(|(d, exact)| if exact { d.to_string() } else { format!("<={d}") }),
        d_exact: d.map(|(_, e)| e),
    }
}

/// What a command works on once the construction is applied.
pub enum Subject {
    Classical(BinaryMatrix),
    Quantum { code: CssCode, from: Source },
}

pub enum Source {
    Hgp(BinaryMatrix),
    Lp,
    Css,
}

pub fn resolve(input: &Fixture, construction: Option<Construction>) -> Result<Subject, CliError> {
    let mismatch = |what: &str| Err(CliError::Usage(what.into()));
    Ok(match (input, construction) {
        (Fixture::Classical(h), None | Some(Construction::Hgp)) => Subject::Quantum {
            code: hgp(h, h),
            from: Source::Hgp(h.clone()),
        },
        (Fixture::Classical(h), Some(Construction::None)) => Subject::Classical(h.clone()),
        (Fixture::Classical(_), Some(Construction::Lp)) => return mismatch("lp needs a base matrix input"),
        (Fixture::Base(a), None | Some(Construction::Lp)) => Subject::Quantum {
            code: lp_square(a),
            from: Source::Lp,
        },
        (Fixture::Base(a), Some(Construction::None)) => Subject::Classical(a.lift()),
        (Fixture::Base(_), Some(Construction::Hgp)) => return mismatch("hgp needs a binary matrix input"),
        (Fixture::Css(c), None | Some(Construction::None)) => Subject::Quantum {
            code: c.clone(),
            from: Source::Css,
        },
        (Fixture::Css(_), Some(_)) => return mismatch("a CSS input is already a quantum code; use construction none"),
    })
}

fn quantum_params(code: &CssCode, from: &Source, opts: &DistanceOptions) -> CssParams {
    match from {
        Source::Hgp(h) => hgp_params(h, h, opts),
        _ => css_distance(code, opts),
    }
}

fn summarize(code: &CssCode, from: &Source, cfg: &RunConfig) -> CodeSummary {
    if cfg.distance.enabled {
        CodeSummary::with(code, &quantum_params(code, from, &cfg.distance_options()))
    } else {
        CodeSummary::plain(code)
    }
}

/// Writes `name` under the output directory, if one is set.
fn emit(cfg: &RunConfig, name: &str, contents: &str, files: &mut Vec<PathBuf>) -> Result<(), CliError> {
    let Some(dir) = &cfg.output.dir else { return Ok(()) };
    fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.clone(), source })?;
    let path = dir.join(name);
    write_file(&path, contents)?;
    files.push(path);
    Ok(())
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write { path: path.to_owned(), source })
}

#[derive(Serialize)]
pub struct BuildBody {
    code: CodeSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    four_cycles: Option<FourCycles>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    files: Vec<PathBuf>,
}

pub fn build(cfg: &RunConfig) -> Result<Report<BuildBody>, CliError> {
    let Subject::Quantum { code, from } = resolve(&cfg.input.load()?, cfg.construction)? else {
        return Err(CliError::Usage("build needs a quantum construction (hgp or lp)".into()));
    };
    let mut files = Vec::new();
    emit(cfg, "code.css", &code.to_text(), &mut files)?;
    let body = BuildBody {
        code: summarize(&code, &from, cfg),
        four_cycles: cfg.cycles.then(|| count_4cycles(&TannerGraph::from_css(&code))),
        files,
    };
    Ok(Report::new("build", cfg, body))
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum ParamsBody {
    Quantum { code: CodeSummary },
    Classical { classical: ClassicalSummary },
}

fn params_body(cfg: &RunConfig, with_distance: bool) -> Result<ParamsBody, CliError> {
    let opts = cfg.distance_options();
    Ok(match resolve(&cfg.input.load()?, cfg.construction)? {
        Subject::Classical(h) => ParamsBody::Classical {
            classical: classical_summary(&h, with_distance.then_some(&opts)),
        },
        Subject::Quantum { code, from } => ParamsBody::Quantum {
            code: if with_distance {
                CodeSummary::with(&code, &quantum_params(&code, &from, &opts))
            } else {
                CodeSummary::plain(&code)
            },
        },
    })
}

pub fn params(cfg: &RunConfig) -> Result<Report<ParamsBody>, CliError> {
    Ok(Report::new("params", cfg, params_body(cfg, false)?))
}

pub fn distance(cfg: &RunConfig) -> Result<Report<ParamsBody>, CliError> {
    Ok(Report::new("distance", cfg, params_body(cfg, true)?))
}

fn graph_of(cfg: &RunConfig) -> Result<TannerGraph, CliError> {
    Ok(match resolve(&cfg.input.load()?, cfg.construction)? {
        Subject::Classical(h) => TannerGraph::from_classical(&h),
        Subject::Quantum { code, .. } => TannerGraph::from_css(&code),
    })
}

#[derive(Serialize)]
pub struct CyclesBody {
    four_cycles: FourCycles,
    girth: Option<usize>,
    girth_x: Option<usize>,
    girth_z: Option<usize>,
}

pub fn cycles(cfg: &RunConfig) -> Result<Report<CyclesBody>, CliError> {
    let g = graph_of(cfg)?;
    let body = CyclesBody {
        four_cycles: count_4cycles(&g),
        girth: girth(&g, None),
        girth_x: girth(&g, Some(CheckType::X)),
        girth_z: girth(&g, Some(CheckType::Z)),
    };
    Ok(Report::new("cycles", cfg, body))
}

pub fn export_dot(cfg: &RunConfig) -> Result<String, CliError> {
    Ok(to_dot(&graph_of(cfg)?))
}

#[derive(Serialize)]
pub struct Side {
    classical: ClassicalSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    product: Option<CodeSummary>,
}

#[derive(Serialize)]
pub struct PermutationSummary {
    trials: usize,
    unpermuted_d: String,
    best_d: String,
    best_seed: Option<u64>,
}

#[derive(Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ReduceBody {
    Classical {
        compressed: bool,
        noop: bool,
        k_preserved: bool,
        before: Side,
        after: Side,
        #[serde(skip_serializing_if = "Option::is_none")]
        permutations: Option<PermutationSummary>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        irreducible: Vec<IrreducibleRow>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        files: Vec<PathBuf>,
    },
    Quantum {
        k_preserved: bool,
        before: CodeSummary,
        after: CodeSummary,
        stages: Vec<StageReport>,
        heights: Vec<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        second_heights: Option<Vec<usize>>,
        coning_trial: usize,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        files: Vec<PathBuf>,
    },
}

/// Higher is better; inexact values rank by their upper bound.
fn score(d: Distance) -> usize {
    d.finite().unwrap_or(usize::MAX)
}

fn show(d: Distance, exact: bool) -> String {
    if exact {
        d.to_string()
    } else {
        format!("<={d}")
    }
}

pub fn reduce(cfg: &RunConfig) -> Result<Report<ReduceBody>, CliError> {
    let input = cfg.input.load()?;
    let body = match cfg.reduce.mode {
        ReduceMode::Classical => reduce_classical(cfg, &input)?,
        ReduceMode::Quantum => reduce_quantum(cfg, &input)?,
    };
    Ok(Report::new("reduce", cfg, body))
}

fn side(cfg: &RunConfig, h: &BinaryMatrix, product: Option<Subject>) -> Side {
    let opts = cfg.distance_options();
    let d = cfg.distance.enabled.then_some(&opts);
    Side {
        classical: classical_summary(h, d),
        product: match product {
            Some(Subject::Quantum { code, from }) => Some(summarize(&code, &from, cfg)),
            _ => None,
        },
    }
}

fn reduce_classical(cfg: &RunConfig, input: &Fixture) -> Result<ReduceBody, CliError> {
    let opts = ReductionOptions {
        compressed: cfg.reduce.compressed,
        seed: cfg.seed,
        ..ReductionOptions::default()
    };
    let dopts = cfg.distance_options();
    let trials = cfg.reduce.permutations;
    let mut files = Vec::new();
    let (before_h, after_h, after_input, irreducible, perms) = match input {
        Fixture::Classical(h) => {
            let plain = reduce_full(h, &opts)?;
            // with a product, rank by the product's distance
            let hgp_d = |m: &BinaryMatrix| match cfg.construction {
                Some(Construction::None) => classical_distance(m, &dopts),
                _ => {
                    let d = hgp_params(m, m, &dopts).d();
                    (d.value, d.exact)
                }
            };
            let d0 = hgp_d(&plain);
            let mut chosen = plain;
            let mut perms = None;
            if trials > 0 {
                let (m, seed, s) = best_permutation(h, &opts, trials, |m| score(hgp_d(m).0))?;
                let improved = s > score(d0.0);
                let best = hgp_d(&m);
                perms = Some(PermutationSummary {
                    trials,
                    unpermuted_d: show(d0.0, d0.1),
                    best_d: show(best.0.max(d0.0), if improved { best.1 } else { d0.1 }),
                    best_seed: improved.then_some(seed),
                });
                if improved {
                    chosen = m;
                }
            }
            emit(cfg, "reduced.txt", &to_text(&chosen), &mut files)?;
            (h.clone(), chosen.clone(), Fixture::Classical(chosen), Vec::new(), perms)
        }
        Fixture::Base(a) => {
            let plain = reduce_base_full(a, &opts)?;
            let qc_d = |b: &BaseMatrix| classical_distance(&b.lift(), &dopts);
            let d0 = qc_d(&plain.base);
            let mut chosen = plain;
            let mut perms = None;
            if trials > 0 {
                let best = (0..trials as u64)
                    .into_par_iter()
                    .map(|t| {
                        let seed = cfg.seed.wrapping_add(t);
                        let r = reduce_base_full(a, &opts.permuted(seed)).expect("options validated");
                        let d = qc_d(&r.base);
                        (score(d.0), std::cmp::Reverse(seed), d, r)
                    })
                    .max_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)))
                    .expect("at least one trial");
                let improved = best.0 > score(d0.0);
                perms = Some(PermutationSummary {
                    trials,
                    unpermuted_d: show(d0.0, d0.1),
                    best_d: if improved { show(best.2 .0, best.2 .1) } else { show(d0.0, d0.1) },
                    best_seed: improved.then_some(best.1 .0),
                });
                if improved {
                    chosen = best.3;
                }
            }
            emit(cfg, "reduced.base", &chosen.base.to_text(), &mut files)?;
            let lifted = chosen.base.lift();
            (a.lift(), lifted, Fixture::Base(chosen.base), chosen.irreducible, perms)
        }
        Fixture::Css(_) => {
            return Err(CliError::Usage(
                "classical reduction needs a binary or base matrix; use the quantum mode for CSS input".into(),
            ))
        }
    };
    let product = |f: &Fixture| match cfg.construction {
        Some(Construction::None) => Ok(None),
        c => resolve(f, c).map(Some),
    };
    let before_product = product(input)?;
    let after_product = product(&after_input)?;
    if let Some(Subject::Quantum { code, .. }) = &after_product {
        emit(cfg, "reduced.css", &code.to_text(), &mut files)?;
    }
    let k_before = LinearCode::new(before_h.clone()).k();
    let k_after = LinearCode::new(after_h.clone()).k();
    Ok(ReduceBody::Classical {
        compressed: cfg.reduce.compressed,
        noop: before_h == after_h,
        k_preserved: k_before == k_after,
        before: side(cfg, &before_h, before_product),
        after: side(cfg, &after_h, after_product),
        permutations: perms,
        irreducible,
        files,
    })
}

fn reduce_quantum(cfg: &RunConfig, input: &Fixture) -> Result<ReduceBody, CliError> {
    let Subject::Quantum { code, from } = resolve(input, cfg.construction)? else {
        return Err(CliError::Usage("quantum reduction needs a CSS code or a product construction".into()));
    };
    let res = full_pipeline(&code, &cfg.pipeline_options())?;
    let mut files = Vec::new();
    emit(cfg, "reduced.css", &res.code.to_text(), &mut files)?;
    Ok(ReduceBody::Quantum {
        k_preserved: res.code.k() == code.k(),
        before: summarize(&code, &from, cfg),
        after: summarize(&res.code, &Source::Css, cfg),
        stages: res.stages,
        heights: res.heights,
        second_heights: res.second_heights,
        coning_trial: res.coning_trial,
        files,
    })
}
