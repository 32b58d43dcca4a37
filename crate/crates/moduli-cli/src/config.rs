//! Experiment configuration: a single human-editable JSON file.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExperimentKind {
    #[serde(rename = "slice-toy")]
    SliceToy,
    #[serde(rename = "torus-complex")]
    TorusComplex,
    #[serde(rename = "torus-metric")]
    TorusMetric,
    #[serde(rename = "s3-verify")]
    S3Verify,
    #[serde(rename = "s3-contact")]
    S3Contact,
    #[serde(rename = "s3-general")]
    S3General,
    #[serde(rename = "s3-einstein")]
    S3Einstein,
    #[serde(rename = "adjoint-audit")]
    AdjointAudit,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::SliceToy => "slice-toy",
            ExperimentKind::TorusComplex => "torus-complex",
            ExperimentKind::TorusMetric => "torus-metric",
            ExperimentKind::S3Verify => "s3-verify",
            ExperimentKind::S3Contact => "s3-contact",
            ExperimentKind::S3General => "s3-general",
            ExperimentKind::S3Einstein => "s3-einstein",
            ExperimentKind::AdjointAudit => "adjoint-audit",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    /// spectral cutoffs, ascending: |k|∞ for tori, j_max for the 3-sphere
    pub cutoffs: Vec<i32>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// multiplies every pass/fail threshold
    #[serde(default = "default_tol_scale")]
    pub tol_scale: f64,
    #[serde(default = "default_out")]
    pub output_dir: String,
}

fn default_seed() -> u64 {
    7
}

fn default_tol_scale() -> f64 {
    1.0
}

fn default_out() -> String {
    "moduli-out".to_string()
}

impl ExperimentConfig {
    pub fn kind(&self) -> ExperimentKind {
        self.experiment
    }

    pub fn defaults(kind: ExperimentKind, seed: u64, tol_scale: f64) -> Self {
        let cutoffs = match kind {
            ExperimentKind::TorusComplex => vec![2, 4],
            ExperimentKind::TorusMetric => vec![0, 1, 2, 3],
            ExperimentKind::S3Contact => vec![1, 2, 3],
            ExperimentKind::S3General => vec![1, 2, 3],
            _ => vec![1],
        };
        ExperimentConfig {
            experiment: kind,
            cutoffs,
            seed,
            tol_scale,
            output_dir: default_out(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.cutoffs.is_empty() {
            return Err("cutoffs must be a nonempty ascending list".to_string());
        }
        if self.cutoffs.windows(2).any(|w| w[0] >= w[1]) {
            return Err("cutoffs must be strictly ascending".to_string());
        }
        if self.cutoffs.iter().any(|&c| c < 0) {
            return Err("cutoffs must be nonnegative".to_string());
        }
        if !(self.tol_scale.is_finite() && self.tol_scale > 0.0) {
            return Err("tol-scale must be positive".to_string());
        }
        Ok(())
    }
}
