//! File formats: fans and externally computed homology come in as JSON with
//! exact integers, motives go out as canonical JSON. No floats anywhere.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::{Cone, Fan, FanError};
use crate::homology::{normalize_group, GradedGroups, HomologyError};
use crate::lattice::{Int, LatticeVector};
use crate::motive::{Motive, MotiveSummand};

#[derive(Error, Debug)]
pub enum FileError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("complete_hint = {hint} disagrees with the computed completeness {actual}")]
    CompletenessHintMismatch { hint: bool, actual: bool },
    #[error("torsion divisor {0} must be >= 2")]
    BadTorsionDivisor(Int),
}

/// On-disk description of a fan.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FanFile {
    pub rank: usize,
    pub rays: Vec<Vec<Int>>,
    pub cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "FanFlags::is_empty")]
    pub flags: FanFlags,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct FanFlags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quasiprojective: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_hint: Option<bool>,
}

impl FanFlags {
    fn is_empty(&self) -> bool {
        self.quasiprojective.is_none() && self.complete_hint.is_none()
    }
}

impl FanFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_fan(&self) -> Result<Fan, FileError> {
        Ok(Fan::new(
            self.rank,
            self.rays.iter().map(|r| LatticeVector::new(r.clone())).collect(),
            self.cones.iter().map(|c| Cone::new(c.clone())).collect(),
        )?)
    }

    pub fn from_fan(fan: &Fan) -> Self {
        FanFile {
            rank: fan.rank(),
            rays: fan.rays().iter().map(|r| r.coords().to_vec()).collect(),
            cones: fan.max_cones().iter().map(|c| c.ray_indices().to_vec()).collect(),
            flags: FanFlags::default(),
        }
    }

    /// Check a stated completeness hint against the computed value.
    pub fn check_complete_hint(&self, actual: bool) -> Result<(), FileError> {
        match self.flags.complete_hint {
            Some(hint) if hint != actual => {
                Err(FileError::CompletenessHintMismatch { hint, actual })
            }
            _ => Ok(()),
        }
    }
}

/// On-disk description of graded homology groups, e.g. threefold homology
/// computed by an external package.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomologyFile {
    pub top_degree: u32,
    pub groups: Vec<HomologyEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomologyEntry {
    pub degree: u32,
    pub free_rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<Int>,
}

impl HomologyFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_graded_groups(&self) -> Result<GradedGroups, FileError> {
        let mut groups = GradedGroups::new(self.top_degree);
        for entry in &self.groups {
            if let Some(&bad) = entry.torsion.iter().find(|&&t| t < 2) {
                return Err(FileError::BadTorsionDivisor(bad));
            }
            let group = normalize_group(entry.free_rank, &entry.torsion);
            let existing = groups.get(entry.degree);
            groups.set(entry.degree, existing.direct_sum(&group))?;
        }
        Ok(groups)
    }

    pub fn from_graded_groups(groups: &GradedGroups) -> Self {
        HomologyFile {
            top_degree: groups.top_degree(),
            groups: groups
                .iter()
                .map(|(degree, g)| HomologyEntry {
                    degree,
                    free_rank: g.free_rank(),
                    torsion: g.torsion().to_vec(),
                })
                .collect(),
        }
    }
}

/// Canonical JSON form of a motive: summands sorted by (twist, shift), free
/// part before torsion, plus the display text.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MotiveJson {
    pub summands: Vec<MotiveSummandJson>,
    pub text: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MotiveSummandJson {
    pub twist: u32,
    pub shift: u8,
    pub free_rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<Int>,
}

impl MotiveJson {
    pub fn from_motive(m: &Motive) -> Self {
        MotiveJson {
            summands: m
                .summands()
                .iter()
                .map(|s| MotiveSummandJson {
                    twist: s.twist,
                    shift: s.shift,
                    free_rank: s.group.free_rank(),
                    torsion: s.group.torsion().to_vec(),
                })
                .collect(),
            text: m.to_string(),
        }
    }

    pub fn to_motive(&self) -> Result<Motive, FileError> {
        let mut parts = Vec::new();
        for s in &self.summands {
            if let Some(&bad) = s.torsion.iter().find(|&&t| t < 2) {
                return Err(FileError::BadTorsionDivisor(bad));
            }
            parts.push(MotiveSummand::new(
                normalize_group(s.free_rank, &s.torsion),
                s.twist,
                s.shift,
            ));
        }
        Ok(Motive::from_summands(parts))
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }
}
