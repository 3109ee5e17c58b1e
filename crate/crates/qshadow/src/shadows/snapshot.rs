use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::PauliBasis;

/// One randomized Pauli measurement record: the per-qubit basis choices
/// and the measured bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowSnapshot {
    pub bases: Vec<PauliBasis>,
    pub outcomes: Vec<bool>,
}

impl ShadowSnapshot {
    pub fn new(bases: Vec<PauliBasis>, outcomes: Vec<bool>) -> Result<Self> {
        if bases.len() != outcomes.len() {
            return Err(Error::DimensionMismatch {
                expected: bases.len(),
                got: outcomes.len(),
            });
        }
        Ok(ShadowSnapshot { bases, outcomes })
    }

    pub fn n(&self) -> usize {
        self.bases.len()
    }
}

/// Wire format of one snapshot: bases "XZY...", outcomes "010...".
#[derive(Serialize, Deserialize)]
struct SnapshotRecord {
    bases: String,
    outcomes: String,
}

impl Serialize for ShadowSnapshot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SnapshotRecord {
            bases: self.bases.iter().map(|b| b.as_char()).collect(),
            outcomes: self
                .outcomes
                .iter()
                .map(|b| if *b { '1' } else { '0' })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ShadowSnapshot {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = SnapshotRecord::deserialize(d)?;
        let bases = rec
            .bases
            .chars()
            .map(PauliBasis::from_char)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let outcomes = rec
            .outcomes
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(serde::de::Error::custom(format!(
                    "bad outcome bit '{other}'"
                ))),
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        ShadowSnapshot::new(bases, outcomes).map_err(serde::de::Error::custom)
    }
}

/// The on-disk advice artifact: a batch of snapshots of one prepared state,
/// together with the seed that reproduces it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliShadow {
    pub n: usize,
    pub master_seed: u64,
    pub snapshots: Vec<ShadowSnapshot>,
}

impl PauliShadow {
    pub fn new(n: usize, master_seed: u64, snapshots: Vec<ShadowSnapshot>) -> Result<Self> {
        let shadow = PauliShadow {
            n,
            master_seed,
            snapshots,
        };
        shadow.validate()?;
        Ok(shadow)
    }

    pub fn validate(&self) -> Result<()> {
        if self.snapshots.is_empty() {
            return Err(Error::invalid("snapshots", "snapshot count must be >= 1"));
        }
        for s in &self.snapshots {
            if s.n() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    got: s.n(),
                });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }
}

/// Median-of-means configuration: `groups` groups of `len / groups`
/// snapshots (the remainder spreads over the leading groups).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoMConfig {
    pub groups: usize,
}

impl MoMConfig {
    pub fn new(groups: usize) -> Self {
        MoMConfig { groups }
    }

    pub fn validate(&self, snapshot_count: usize) -> Result<()> {
        if self.groups == 0 {
            return Err(Error::invalid("groups", "must be >= 1"));
        }
        if self.groups > snapshot_count {
            return Err(Error::invalid(
                "groups",
                format!(
                    "{} groups exceed {snapshot_count} snapshots",
                    self.groups
                ),
            ));
        }
        Ok(())
    }
}
