//! Drawing with automatic precision escalation.

use serde::Serialize;

use crate::arith::Real;
use crate::decomposition::{build_tree, ScgTriple};
use crate::layout::{draw_tree, Drawing, LayoutError, DEFAULT_PRECISION};

pub const PRECISION_CAP_VAR: &str = "GREEDYDRAW_PRECISION_CAP";
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

/// The cap from `GREEDYDRAW_PRECISION_CAP`, or the default when unset or unparsable.
pub fn precision_cap() -> u32 {
    std::env::var(PRECISION_CAP_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_PRECISION_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub precision: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[error("no drawing could be certified up to {cap} bits; last failure: {last}")]
pub struct Exhausted {
    pub cap: u32,
    pub last: String,
    pub attempts: Vec<Attempt>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Layout(LayoutError),
    #[error(transparent)]
    Exhausted(Exhausted),
}

/// Draws at `start` bits, doubling on [`LayoutError::PrecisionExhausted`] until `cap`.
pub fn draw_escalating(t: &ScgTriple, alpha: &Real, delta: &Real, start: u32, cap: u32) -> Result<(Drawing, Vec<Attempt>), PipelineError> {
    let tree = build_tree(t).map_err(|e| PipelineError::Layout(e.into()))?;
    let mut prec = start.clamp(16, cap.max(16));
    let mut attempts = Vec::new();
    loop {
        match draw_tree(&tree, alpha, delta, prec) {
            Ok(d) => {
                attempts.push(Attempt {
                    precision: prec,
                    failure: None,
                });
                return Ok((d, attempts));
            }
            Err(e @ LayoutError::PrecisionExhausted { .. }) => {
                attempts.push(Attempt {
                    precision: prec,
                    failure: Some(e.to_string()),
                });
                if prec >= cap {
                    return Err(PipelineError::Exhausted(Exhausted {
                        cap,
                        last: e.to_string(),
                        attempts,
                    }));
                }
                prec = (prec * 2).min(cap);
            }
            Err(e) => return Err(PipelineError::Layout(e)),
        }
    }
}

pub fn draw_default(t: &ScgTriple, alpha: &Real, delta: &Real) -> Result<Drawing, PipelineError> {
    draw_escalating(t, alpha, delta, DEFAULT_PRECISION, precision_cap()).map(|(d, _)| d)
}
