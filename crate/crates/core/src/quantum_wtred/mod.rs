//! Weight reduction for CSS codes: copying, gauging, thickening with
//! chosen heights, and coning, plus the pipeline chaining them.

mod coning;
mod copying;
mod gauging;
mod thickening;

pub use coning::{assemble, cone, cone_sector, CellulationStyle, CycleBasis, ConeSector, Coned, ConingOptions, Edge};
pub use copying::{copying, Copied, CopyVariant};
pub use gauging::gauging;
pub use thickening::{choose_heights, greedy_heights, thicken, Heights, HeightsSpec, Thickened};

use serde::{Deserialize, Serialize};

use crate::css::{CssCode, Weights};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub copy: CopyVariant,
    pub thickening: HeightsSpec,
    /// Z checks heavier than this are coned.
    pub cone_above: usize,
    pub coning: ConingOptions,
    /// A further thickening with the roles of X and Z exchanged.
    pub second_thickening: Option<HeightsSpec>,
}

impl PipelineOptions {
    pub fn new(copy: CopyVariant, thickening: HeightsSpec) -> Self {
        PipelineOptions {
            copy,
            thickening,
            cone_above: 5,
            coning: ConingOptions::default(),
            second_thickening: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: String,
    pub n: usize,
    pub k: usize,
    pub weights: Weights,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineResult {
    pub code: CssCode,
    pub stages: Vec<StageReport>,
    pub heights: Vec<usize>,
    pub second_heights: Option<Vec<usize>>,
    pub coning_trial: usize,
}

fn record(stages: &mut Vec<StageReport>, stage: &str, c: &CssCode, k: usize) -> Result<()> {
    stages.push(StageReport {
        stage: stage.into(),
        n: c.n(),
        k: c.k(),
        weights: c.weights(),
    });
    if c.k() != k {
        return Err(Error::Invariant(format!("{stage} changed k from {k} to {}", c.k())));
    }
    Ok(())
}

/// Copying, gauging, thickening, coning and the optional second
/// thickening, checking `k` after every stage.
pub fn full_pipeline(c: &CssCode, opts: &PipelineOptions) -> Result<PipelineResult> {
    let k = c.k();
    let mut stages = Vec::new();
    record(&mut stages, "input", c, k)?;
    let copied = copying(c, opts.copy)?.code;
    record(&mut stages, "copying", &copied, k)?;
    let gauged = gauging(&copied)?;
    record(&mut stages, "gauging", &gauged, k)?;
    let th = thicken(&gauged, opts.thickening.ell)?;
    record(&mut stages, "thickening", &th.code, k)?;
    let (chosen, heights) = choose_heights(&th, &opts.thickening.heights)?;
    record(&mut stages, "heights", &chosen, k)?;
    let hz = chosen.hz();
    let heavy: Vec<usize> = (0..hz.rows()).filter(|&r| hz.row_weight(r) > opts.cone_above).collect();
    let coned = cone(&chosen, &heavy, &opts.coning)?;
    record(&mut stages, "coning", &coned.code, k)?;
    let mut code = coned.code;
    let mut second_heights = None;
    if let Some(spec) = &opts.second_thickening {
        let th = thicken(&code.swapped(), spec.ell)?;
        let (chosen, hs) = choose_heights(&th, &spec.heights)?;
        code = chosen.swapped();
        record(&mut stages, "second thickening", &code, k)?;
        second_heights = Some(hs);
    }
    Ok(PipelineResult {
        code,
        stages,
        heights,
        second_heights,
        coning_trial: coned.trial,
    })
}
