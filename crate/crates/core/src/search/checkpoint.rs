//! Checkpoint files for resumable searches: plain JSON holding the work
//! cursor and the partial counters. A checkpoint belongs to exactly one
//! run configuration, identified by a hash of the deterministic config;
//! resuming under a different configuration is refused.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{Accum, ViolationRecord};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub checkpoint_id: String,
    /// Human-readable echo of the deterministic config.
    pub config: String,
    /// Next work unit to process, as a decimal string (may exceed u64).
    pub cursor: String,
    pub total_units: String,
    pub complete: bool,
    pub partitions_checked: u64,
    pub profiles_checked: u64,
    pub relaxation_violations: u64,
    pub realizable_violations: u64,
    pub realizable_profiles: Option<u64>,
    pub violations: Vec<ViolationRecord>,
}

impl Checkpoint {
    pub fn assemble(
        checkpoint_id: &str,
        config: &str,
        cursor: u128,
        total_units: u128,
        complete: bool,
        accum: &Accum,
    ) -> Self {
        Checkpoint {
            version: 1,
            checkpoint_id: checkpoint_id.to_string(),
            config: config.to_string(),
            cursor: cursor.to_string(),
            total_units: total_units.to_string(),
            complete,
            partitions_checked: accum.partitions_checked,
            profiles_checked: accum.profiles_checked,
            relaxation_violations: accum.relaxation_violations,
            realizable_violations: accum.realizable_violations,
            realizable_profiles: accum.realizable_profiles,
            violations: accum.violations.clone(),
        }
    }

    pub fn cursor_value(&self) -> Result<u128> {
        self.cursor
            .parse()
            .map_err(|_| Error::Checkpoint(format!("bad cursor `{}`", self.cursor)))
    }

    pub fn into_accum(self) -> Accum {
        Accum {
            partitions_checked: self.partitions_checked,
            profiles_checked: self.profiles_checked,
            relaxation_violations: self.relaxation_violations,
            realizable_violations: self.realizable_violations,
            realizable_profiles: self.realizable_profiles,
            violations: self.violations,
            class_counts: None,
        }
    }
}

pub fn write_checkpoint(path: &Path, checkpoint: &Checkpoint) -> Result<()> {
    let json =
        serde_json::to_string_pretty(checkpoint).map_err(|e| Error::Checkpoint(e.to_string()))?;
    // Write-then-rename so an interrupt never leaves a torn file.
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, json)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_checkpoint(path: &Path, expected_id: &str) -> Result<Checkpoint> {
    let text = std::fs::read_to_string(path)?;
    let checkpoint: Checkpoint =
        serde_json::from_str(&text).map_err(|e| Error::Checkpoint(e.to_string()))?;
    if checkpoint.version != 1 {
        return Err(Error::Checkpoint(format!(
            "unsupported checkpoint version {}",
            checkpoint.version
        )));
    }
    if checkpoint.checkpoint_id != expected_id {
        return Err(Error::Checkpoint(format!(
            "checkpoint belongs to a different run: it has id {} (config: {}), \
             this run has id {expected_id}",
            checkpoint.checkpoint_id, checkpoint.config
        )));
    }
    Ok(checkpoint)
}
