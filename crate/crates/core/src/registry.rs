//! File-backed candidate registry and selection batches.
//!
//! Layout of a data directory:
//!
//! ```text
//! <data-dir>/candidates.jsonl     one candidate per line
//! <data-dir>/batches/<id>.json    one selection batch per file
//! ```
//!
//! Every write rewrites the affected file through [`crate::store::atomic_write`].
//! A registry is single-writer: callers serialize mutations.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};

use crate::criteria::{validate_criteria, CriterionSpec};
use crate::error::{Error, Result};
use crate::model::{AttributeProfile, CandidateRecord};
use crate::saw::{run_selection, SelectionOutcome};
use crate::store;

pub const CANDIDATES_FILE: &str = "candidates.jsonl";
pub const BATCHES_DIR: &str = "batches";
/// Environment variable consulted for the data directory when no flag is given.
pub const DATA_DIR_ENV: &str = "PLACEMENT_DATA_DIR";
pub const DEFAULT_DATA_DIR: &str = "data";

/// Flag value, then `$PLACEMENT_DATA_DIR`, then `./data`.
pub fn resolve_data_dir(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(DATA_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_DATA_DIR))
}

/// One line of the registry file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredCandidate {
    pub id: u64,
    #[serde(flatten)]
    pub record: CandidateRecord,
    pub profile: AttributeProfile,
}

/// Destination that scopes a selection batch.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scope {
    #[serde(alias = "country")]
    pub destination_country: String,
    #[serde(alias = "placement")]
    pub placement_unit: String,
    pub position: String,
}

impl Scope {
    pub fn matches(&self, r: &CandidateRecord) -> bool {
        r.destination_country == self.destination_country
            && r.placement_unit == self.placement_unit
            && r.position == self.position
    }
}

/// Exact-match filter on any subset of the scope fields.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScopeFilter {
    #[serde(default, alias = "country")]
    pub destination_country: Option<String>,
    #[serde(default, alias = "placement")]
    pub placement_unit: Option<String>,
    #[serde(default)]
    pub position: Option<String>,
}

impl ScopeFilter {
    pub fn matches(&self, r: &CandidateRecord) -> bool {
        let ok = |want: &Option<String>, have: &str| want.as_deref().is_none_or(|w| w == have);
        ok(&self.destination_country, &r.destination_country)
            && ok(&self.placement_unit, &r.placement_unit)
            && ok(&self.position, &r.position)
    }
}

impl From<Scope> for ScopeFilter {
    fn from(s: Scope) -> Self {
        ScopeFilter {
            destination_country: Some(s.destination_country),
            placement_unit: Some(s.placement_unit),
            position: Some(s.position),
        }
    }
}

/// A batch member frozen at batch creation. The profile has its age resolved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberSnapshot {
    pub id: u64,
    pub full_name: String,
    pub profile: AttributeProfile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionBatch {
    /// 0 for drafts that were never stored.
    pub id: u64,
    pub created_at: String,
    pub scope: Scope,
    pub criteria_snapshot: Vec<CriterionSpec>,
    pub member_ids: Vec<u64>,
    pub members: Vec<MemberSnapshot>,
    #[serde(default)]
    pub results: Option<SelectionOutcome>,
}

impl SelectionBatch {
    /// Runs the selection over the frozen members and criteria. Pure: the
    /// same batch always yields the same results.
    pub fn execute(&self) -> Result<SelectionBatch> {
        let inputs: Vec<(u64, AttributeProfile)> =
            self.members.iter().map(|m| (m.id, m.profile.clone())).collect();
        let outcome = run_selection(&inputs, &self.criteria_snapshot)?;
        Ok(SelectionBatch {
            results: Some(outcome),
            ..self.clone()
        })
    }

    pub fn member(&self, id: u64) -> Option<&MemberSnapshot> {
        self.members.iter().find(|m| m.id == id)
    }
}

#[derive(Debug)]
pub struct Registry {
    dir: PathBuf,
    candidates: Vec<StoredCandidate>,
}

impl Registry {
    /// Opens (creating if needed) the registry rooted at `dir`.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Registry> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let candidates: Vec<StoredCandidate> = store::read_jsonl(&dir.join(CANDIDATES_FILE))?;
        let mut seen = HashMap::new();
        for c in &candidates {
            if c.id == 0 || seen.insert(c.id, ()).is_some() {
                return Err(Error::Config(format!(
                    "{}: invalid or repeated candidate id {}",
                    dir.join(CANDIDATES_FILE).display(),
                    c.id
                )));
            }
        }
        Ok(Registry { dir, candidates })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn candidates_path(&self) -> PathBuf {
        self.dir.join(CANDIDATES_FILE)
    }

    pub fn batches_dir(&self) -> PathBuf {
        self.dir.join(BATCHES_DIR)
    }

    /// Smallest id larger than every stored id.
    pub fn next_id(&self) -> u64 {
        self.candidates.iter().map(|c| c.id).max().unwrap_or(0) + 1
    }

    pub fn get(&self, id: u64) -> Result<&StoredCandidate> {
        self.candidates
            .iter()
            .find(|c| c.id == id)
            .ok_or(Error::NotFound { what: "candidate", id })
    }

    /// Candidates in insertion order, optionally filtered by scope fields.
    pub fn list(&self, filter: &ScopeFilter) -> Vec<&StoredCandidate> {
        self.candidates.iter().filter(|c| filter.matches(&c.record)).collect()
    }

    pub fn all(&self) -> &[StoredCandidate] {
        &self.candidates
    }

    pub fn add(&mut self, record: CandidateRecord, profile: AttributeProfile) -> Result<u64> {
        check_entry(&record, &profile)?;
        self.check_duplicate(&record, None)?;
        let id = self.next_id();
        self.candidates.push(StoredCandidate { id, record, profile });
        if let Err(e) = self.persist() {
            self.candidates.pop();
            return Err(e);
        }
        Ok(id)
    }

    pub fn update(&mut self, id: u64, record: CandidateRecord, profile: AttributeProfile) -> Result<()> {
        let idx = self.index_of(id)?;
        check_entry(&record, &profile)?;
        self.check_duplicate(&record, Some(id))?;
        let old = std::mem::replace(&mut self.candidates[idx], StoredCandidate { id, record, profile });
        if let Err(e) = self.persist() {
            self.candidates[idx] = old;
            return Err(e);
        }
        Ok(())
    }

    /// Permanently removes a candidate and returns it.
    pub fn delete(&mut self, id: u64) -> Result<StoredCandidate> {
        let idx = self.index_of(id)?;
        let removed = self.candidates.remove(idx);
        if let Err(e) = self.persist() {
            self.candidates.insert(idx, removed);
            return Err(e);
        }
        Ok(removed)
    }

    fn index_of(&self, id: u64) -> Result<usize> {
        self.candidates
            .iter()
            .position(|c| c.id == id)
            .ok_or(Error::NotFound { what: "candidate", id })
    }

    fn check_duplicate(&self, record: &CandidateRecord, except: Option<u64>) -> Result<()> {
        let key = record.duplicate_key();
        match self
            .candidates
            .iter()
            .find(|c| Some(c.id) != except && c.record.duplicate_key() == key)
        {
            Some(c) => Err(Error::DuplicateCandidate { existing: c.id }),
            None => Ok(()),
        }
    }

    fn persist(&self) -> Result<()> {
        store::write_jsonl(&self.candidates_path(), &self.candidates)
    }

    /// Builds an unsaved batch (id 0) for `scope` with a frozen copy of the
    /// matching candidates and of `criteria`.
    pub fn draft_batch(&self, scope: &Scope, criteria: &[CriterionSpec]) -> Result<SelectionBatch> {
        validate_criteria(criteria)?;
        let members = self
            .candidates
            .iter()
            .filter(|c| scope.matches(&c.record))
            .map(|c| {
                Ok(MemberSnapshot {
                    id: c.id,
                    full_name: c.record.full_name.clone(),
                    profile: c.profile.resolved(&c.record)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if members.is_empty() {
            return Err(Error::EmptyBatch);
        }
        Ok(SelectionBatch {
            id: 0,
            created_at: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
            scope: scope.clone(),
            criteria_snapshot: criteria.to_vec(),
            member_ids: members.iter().map(|m| m.id).collect(),
            members,
            results: None,
        })
    }

    /// Creates and stores a new, unexecuted batch.
    pub fn create_batch(&self, scope: &Scope, criteria: &[CriterionSpec]) -> Result<SelectionBatch> {
        let mut batch = self.draft_batch(scope, criteria)?;
        batch.id = self.batch_ids()?.last().copied().unwrap_or(0) + 1;
        self.save_batch(&batch)?;
        Ok(batch)
    }

    /// Executes `batch` against its snapshot and stores the results.
    pub fn execute_batch(&self, batch: &SelectionBatch) -> Result<SelectionBatch> {
        let done = batch.execute()?;
        if done.id != 0 {
            self.save_batch(&done)?;
        }
        Ok(done)
    }

    pub fn save_batch(&self, batch: &SelectionBatch) -> Result<()> {
        let mut json = serde_json::to_vec_pretty(batch)?;
        json.push(b'\n');
        store::atomic_write(&self.batch_path(batch.id), &json)
    }

    pub fn load_batch(&self, id: u64) -> Result<SelectionBatch> {
        let path = self.batch_path(id);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(Error::NotFound { what: "batch", id })
            }
            Err(e) => return Err(Error::io(&path, e)),
        };
        serde_json::from_str(&text).map_err(|source| Error::Parse { path, line: 1, source })
    }

    /// Stored batch ids, ascending.
    pub fn batch_ids(&self) -> Result<Vec<u64>> {
        let dir = self.batches_dir();
        let entries = match fs::read_dir(&dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Error::io(&dir, e)),
        };
        let mut ids = Vec::new();
        for entry in entries {
            let entry = entry.map_err(|e| Error::io(&dir, e))?;
            let name = entry.file_name();
            let Some(stem) = name.to_str().and_then(|n| n.strip_suffix(".json")) else {
                continue;
            };
            if let Ok(id) = stem.parse::<u64>() {
                ids.push(id);
            }
        }
        ids.sort_unstable();
        Ok(ids)
    }

    fn batch_path(&self, id: u64) -> PathBuf {
        self.batches_dir().join(format!("{id}.json"))
    }
}

fn check_entry(record: &CandidateRecord, profile: &AttributeProfile) -> Result<()> {
    record.validate()?;
    profile.resolved(record)?;
    Ok(())
}

/// Parses an RFC 3339 timestamp as written into `created_at`.
pub fn parse_timestamp(s: &str) -> Option<DateTime<Utc>> {
    DateTime::parse_from_rfc3339(s).ok().map(|t| t.with_timezone(&Utc))
}
