//! Simple additive weighting over crisp decision matrices.
//!
//! The pipeline is `build_matrix -> normalize -> preference_scores -> rank`,
//! composed by [`run_selection`]. All arithmetic stays in `f64`; rounding only
//! happens when a report is rendered.

use serde::{Deserialize, Serialize};

use crate::criteria::{crispify_profile, validate_criteria, CriterionKind, CriterionSpec};
use crate::error::{Error, Result};
use crate::model::AttributeProfile;

/// Crisp values `x[i][j]` of alternative `i` on criterion `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionMatrix {
    pub alternative_ids: Vec<u64>,
    pub criterion_codes: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

/// Normalized ratings `r[i][j]` in `[0, 1]`, same shape as the decision matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedMatrix {
    pub alternative_ids: Vec<u64>,
    pub criterion_codes: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    pub fn new(alternative_ids: Vec<u64>, criterion_codes: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        let m = DecisionMatrix {
            alternative_ids,
            criterion_codes,
            values,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alternative_ids.is_empty() {
            return Err(Error::EmptyBatch);
        }
        if self.criterion_codes.is_empty() {
            return Err(Error::Config("no criteria defined".into()));
        }
        check_shape(&self.alternative_ids, &self.criterion_codes, &self.values)?;
        for row in &self.values {
            if let Some(v) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(Error::validation("values", format!("{v} is not a finite non-negative number")));
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.values.len()
    }

    pub fn cols(&self) -> usize {
        self.criterion_codes.len()
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(move |row| row[j])
    }
}

fn check_shape(ids: &[u64], codes: &[String], values: &[Vec<f64>]) -> Result<()> {
    if values.len() != ids.len() {
        return Err(Error::DimensionMismatch {
            expected: ids.len(),
            actual: values.len(),
        });
    }
    if let Some(row) = values.iter().find(|r| r.len() != codes.len()) {
        return Err(Error::DimensionMismatch {
            expected: codes.len(),
            actual: row.len(),
        });
    }
    Ok(())
}

/// Per-candidate weighted ratings `w[j] * r[i][j]` and their sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreferenceScore {
    pub candidate_id: u64,
    pub weighted_components: Vec<f64>,
    pub preference_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedResult {
    pub candidate_id: u64,
    pub weighted_components: Vec<f64>,
    pub preference_value: f64,
    pub rank: u32,
}

/// A candidate left out of ranking because one attribute matched no crisp rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub candidate_id: u64,
    pub criterion: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionOutcome {
    pub matrix: DecisionMatrix,
    pub normalized: NormalizedMatrix,
    /// Sorted by rank.
    pub ranking: Vec<RankedResult>,
    pub exclusions: Vec<Exclusion>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

/// Crisp matrix with one row per profile, in input order.
pub fn build_matrix(profiles: &[(u64, AttributeProfile)], criteria: &[CriterionSpec]) -> Result<DecisionMatrix> {
    if profiles.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let values = profiles
        .iter()
        .map(|(id, p)| crispify_profile(p, criteria).map_err(|e| tag_candidate(e, *id)))
        .collect::<Result<Vec<_>>>()?;
    DecisionMatrix::new(
        profiles.iter().map(|(id, _)| *id).collect(),
        criteria.iter().map(|c| c.code.clone()).collect(),
        values,
    )
}

fn tag_candidate(err: Error, id: u64) -> Error {
    match err {
        Error::NoMatchingRule { criterion, value, .. } => Error::NoMatchingRule {
            candidate: Some(id),
            criterion,
            value,
        },
        other => other,
    }
}

/// Benefit columns divide by the column maximum, cost columns divide the column
/// minimum by each entry. A benefit column whose maximum is zero normalizes to
/// all zeros.
pub fn normalize(x: &DecisionMatrix, criteria: &[CriterionSpec]) -> Result<NormalizedMatrix> {
    x.validate()?;
    if criteria.len() != x.cols() {
        return Err(Error::DimensionMismatch {
            expected: x.cols(),
            actual: criteria.len(),
        });
    }
    let mut values = vec![vec![0.0; x.cols()]; x.rows()];
    for (j, spec) in criteria.iter().enumerate() {
        match spec.kind {
            CriterionKind::Benefit => {
                let max = x.column(j).fold(0.0, f64::max);
                if max > 0.0 {
                    for (i, row) in x.values.iter().enumerate() {
                        values[i][j] = row[j] / max;
                    }
                }
            }
            CriterionKind::Cost => {
                if let Some(i) = x.column(j).position(|v| v == 0.0) {
                    return Err(Error::CostZeroValue {
                        criterion: spec.code.clone(),
                        candidate: x.alternative_ids[i],
                    });
                }
                let min = x.column(j).fold(f64::INFINITY, f64::min);
                for (i, row) in x.values.iter().enumerate() {
                    values[i][j] = min / row[j];
                }
            }
        }
    }
    Ok(NormalizedMatrix {
        alternative_ids: x.alternative_ids.clone(),
        criterion_codes: x.criterion_codes.clone(),
        values,
    })
}

/// Warnings for benefit columns that are identically zero.
pub fn degenerate_columns(x: &DecisionMatrix, criteria: &[CriterionSpec]) -> Vec<String> {
    criteria
        .iter()
        .enumerate()
        .filter(|(j, c)| c.kind == CriterionKind::Benefit && x.column(*j).all(|v| v == 0.0))
        .map(|(_, c)| format!("criterion {}: every crisp value is 0, column normalized to 0", c.code))
        .collect()
}

pub fn preference_scores(r: &NormalizedMatrix, criteria: &[CriterionSpec]) -> Result<Vec<PreferenceScore>> {
    check_shape(&r.alternative_ids, &r.criterion_codes, &r.values)?;
    if criteria.len() != r.criterion_codes.len() {
        return Err(Error::DimensionMismatch {
            expected: r.criterion_codes.len(),
            actual: criteria.len(),
        });
    }
    Ok(r.alternative_ids
        .iter()
        .zip(&r.values)
        .map(|(&id, row)| {
            let weighted_components: Vec<f64> = row.iter().zip(criteria).map(|(v, c)| c.weight * v).collect();
            PreferenceScore {
                candidate_id: id,
                preference_value: weighted_components.iter().sum(),
                weighted_components,
            }
        })
        .collect())
}

/// Preference values closer than this (relative to their magnitude, at least
/// absolute) count as tied. Sums of the same exact terms taken in a different
/// order can differ in the last bit.
pub const TIE_TOLERANCE: f64 = 1e-12;

fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Orders by preference value, highest first, with ties going to the lower
/// candidate id. Ranks run 1..=m.
pub fn rank(scores: Vec<PreferenceScore>) -> Vec<RankedResult> {
    let mut scores = scores;
    scores.sort_by(|a, b| {
        b.preference_value
            .total_cmp(&a.preference_value)
            .then(a.candidate_id.cmp(&b.candidate_id))
    });
    // chain neighbours within tolerance into tie groups, then order each group by id
    let mut start = 0;
    for i in 1..=scores.len() {
        if i == scores.len() || !tied(scores[i - 1].preference_value, scores[i].preference_value) {
            scores[start..i].sort_by_key(|s| s.candidate_id);
            start = i;
        }
    }
    scores
        .into_iter()
        .enumerate()
        .map(|(i, s)| RankedResult {
            candidate_id: s.candidate_id,
            weighted_components: s.weighted_components,
            preference_value: s.preference_value,
            rank: i as u32 + 1,
        })
        .collect()
}

/// Full pipeline. Candidates whose attributes fall outside every crisp rule are
/// moved to `exclusions` instead of failing the run.
pub fn run_selection(candidates: &[(u64, AttributeProfile)], criteria: &[CriterionSpec]) -> Result<SelectionOutcome> {
    validate_criteria(criteria)?;
    let mut eligible = Vec::with_capacity(candidates.len());
    let mut exclusions = Vec::new();
    for (id, profile) in candidates {
        match crispify_profile(profile, criteria) {
            Ok(_) => eligible.push((*id, profile.clone())),
            Err(Error::NoMatchingRule { criterion, value, .. }) => exclusions.push(Exclusion {
                candidate_id: *id,
                reason: format!("ineligible: {value} matches no rule of {criterion}"),
                criterion,
            }),
            Err(e) => return Err(tag_candidate(e, *id)),
        }
    }
    let matrix = build_matrix(&eligible, criteria)?;
    let normalized = normalize(&matrix, criteria)?;
    let ranking = rank(preference_scores(&normalized, criteria)?);
    let mut warnings: Vec<String> = criteria.iter().flat_map(CriterionSpec::warnings).collect();
    warnings.extend(degenerate_columns(&matrix, criteria));
    Ok(SelectionOutcome {
        matrix,
        normalized,
        ranking,
        exclusions,
        warnings,
    })
}
