//! Ephemeral re-ranking with overridden weights or crisp tables.

use std::collections::BTreeMap;

use placement_core::criteria::validate_criteria;
use placement_core::{CrispRule, CriterionSpec, Scope, WeightLabel};
use serde::{Deserialize, Serialize};

use crate::error::ApiError;

/// A replacement weight, either numeric in `(0, 1]` or a label.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightOverride {
    Value(f64),
    Label(WeightLabel),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WhatIfRequest {
    #[serde(flatten)]
    pub scope: Scope,
    /// Criterion code to replacement weight.
    #[serde(default)]
    pub weights: BTreeMap<String, WeightOverride>,
    /// Criterion code to replacement crisp rules.
    #[serde(default)]
    pub rules: BTreeMap<String, Vec<CrispRule>>,
}

impl WhatIfRequest {
    /// The active criteria with this request's overrides applied.
    pub fn apply(&self, active: &[CriterionSpec]) -> Result<Vec<CriterionSpec>, ApiError> {
        let mut criteria = active.to_vec();
        let find = |code: &str| -> Result<usize, ApiError> {
            criteria
                .iter()
                .position(|c| c.code == code)
                .ok_or_else(|| ApiError::bad_request(format!("unknown criterion code {code}")))
        };
        let mut weight_edits = Vec::new();
        for (code, w) in &self.weights {
            weight_edits.push((find(code)?, *w));
        }
        let mut rule_edits = Vec::new();
        for (code, rules) in &self.rules {
            rule_edits.push((find(code)?, rules.clone()));
        }
        for (i, w) in weight_edits {
            match w {
                WeightOverride::Value(v) => {
                    if !(v > 0.0 && v <= 1.0) {
                        return Err(ApiError::bad_request(format!(
                            "weight {v} for {} outside (0, 1]",
                            criteria[i].code
                        )));
                    }
                    criteria[i].weight = v;
                    criteria[i].weight_label = None;
                }
                WeightOverride::Label(l) => {
                    criteria[i].weight = l.weight();
                    criteria[i].weight_label = Some(l);
                }
            }
        }
        for (i, rules) in rule_edits {
            criteria[i].crisp_map = rules;
        }
        validate_criteria(&criteria).map_err(|e| ApiError::bad_request(e.to_string()))?;
        Ok(criteria)
    }
}
