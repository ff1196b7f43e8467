pub mod estimate;
pub mod fixture;
pub mod granger;
pub mod regress;
pub mod simulate;
pub mod stats;

use anyhow::{bail, Result};

use crate::config::Config;
use crate::inputs::{ensure_exist, SkewSource};
use crate::SkewArgs;

/// Skew file when given, otherwise an in-run estimate from returns.
fn skew_source(args: &SkewArgs, cfg: &Config) -> Result<SkewSource> {
    if let Some(p) = cfg.path(args.skew.clone(), "skew")? {
        ensure_exist(&[Some(&p)])?;
        return Ok(SkewSource::File(p));
    }
    if let Some(p) = cfg.path(args.returns.clone(), "returns")? {
        ensure_exist(&[Some(&p)])?;
        return Ok(SkewSource::Estimate(p, args.fit.resolve(cfg)?));
    }
    bail!(crashskew::Error::InvalidInput("pass --skew or --returns".into()))
}
