//! JSON run configuration. Flags override file values; unknown keys are
//! rejected so typos fail loudly instead of silently falling back to
//! defaults.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use seopt_core::{ChannelModel, PoissonFieldParams};

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub channel: Option<ChannelModel>,
    pub poisson: Option<PoissonFieldParams>,
    pub grid: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        serde_json::from_str(&text)
            .with_context(|| format!("cannot parse config {}", path.display()))
    }

    pub fn poisson_or_default(&self) -> PoissonFieldParams {
        self.poisson.unwrap_or_default()
    }

    pub fn channel_or_default(&self) -> ChannelModel {
        self.channel.unwrap_or_default()
    }
}
