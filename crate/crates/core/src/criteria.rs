//! Criterion definitions and the table-driven crisp conversion.
//!
//! Each criterion reads one attribute of an [`AttributeProfile`] and turns it
//! into a crisp number in `[0, 1]` through an ordered list of [`CrispRule`]s.
//! Numeric attributes (age, experience) match closed integer ranges; categorical
//! attributes (education, psych test) match labels.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AttributeProfile, EducationLevel, PsychResult};

/// Linguistic importance label for a criterion weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeightLabel {
    /// tidak penting
    TP,
    /// cukup penting
    CP,
    /// penting
    P,
    /// sangat penting
    SP,
}

impl WeightLabel {
    pub const ALL: [WeightLabel; 4] = [WeightLabel::TP, WeightLabel::CP, WeightLabel::P, WeightLabel::SP];

    pub fn weight(self) -> f64 {
        weight_from_label(self)
    }
}

pub fn weight_from_label(label: WeightLabel) -> f64 {
    match label {
        WeightLabel::TP => 0.25,
        WeightLabel::CP => 0.50,
        WeightLabel::P => 0.75,
        WeightLabel::SP => 1.00,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionKind {
    /// Larger is better.
    Benefit,
    /// Smaller is better.
    Cost,
}

/// Which profile field a criterion reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attribute {
    Age,
    Education,
    Psych,
    Experience,
}

impl Attribute {
    /// Binding used when a config omits `attribute`: C1 age, C2 education,
    /// C3 psych test, C4 experience.
    pub fn for_code(code: &str) -> Option<Attribute> {
        match code {
            "C1" => Some(Attribute::Age),
            "C2" => Some(Attribute::Education),
            "C3" => Some(Attribute::Psych),
            "C4" => Some(Attribute::Experience),
            _ => None,
        }
    }

    pub fn is_numeric(self) -> bool {
        matches!(self, Attribute::Age | Attribute::Experience)
    }

    pub fn name(self) -> &'static str {
        match self {
            Attribute::Age => "age",
            Attribute::Education => "education",
            Attribute::Psych => "psych",
            Attribute::Experience => "experience",
        }
    }
}

/// A raw attribute value before crisp conversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawValue {
    Number(i64),
    Label(String),
}

impl fmt::Display for RawValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RawValue::Number(n) => write!(f, "{n}"),
            RawValue::Label(s) => f.write_str(s),
        }
    }
}

impl From<EducationLevel> for RawValue {
    fn from(e: EducationLevel) -> Self {
        RawValue::Label(e.label().to_string())
    }
}

impl From<PsychResult> for RawValue {
    fn from(p: PsychResult) -> Self {
        RawValue::Label(p.label().to_string())
    }
}

impl AttributeProfile {
    /// Raw value for `attribute`; `None` only for an unresolved age.
    pub fn raw_value(&self, attribute: Attribute) -> Option<RawValue> {
        match attribute {
            Attribute::Age => self.age_years.map(|a| RawValue::Number(a.into())),
            Attribute::Education => Some(self.education_level.into()),
            Attribute::Psych => Some(self.psych_result.into()),
            Attribute::Experience => Some(RawValue::Number(self.experience_years.into())),
        }
    }
}

/// Closed integer interval; `hi = None` is unbounded above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(i64, Option<i64>)", into = "(i64, Option<i64>)")]
pub struct IntRange {
    pub lo: i64,
    pub hi: Option<i64>,
}

impl IntRange {
    pub fn new(lo: i64, hi: Option<i64>) -> Self {
        IntRange { lo, hi }
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= self.lo && self.hi.is_none_or(|hi| x <= hi)
    }

    fn overlaps(&self, other: &IntRange) -> bool {
        let below = |a: &IntRange, b: &IntRange| a.hi.is_some_and(|hi| hi < b.lo);
        !(below(self, other) || below(other, self))
    }
}

impl From<(i64, Option<i64>)> for IntRange {
    fn from((lo, hi): (i64, Option<i64>)) -> Self {
        IntRange { lo, hi }
    }
}

impl From<IntRange> for (i64, Option<i64>) {
    fn from(r: IntRange) -> Self {
        (r.lo, r.hi)
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(hi) => write!(f, "[{}, {}]", self.lo, hi),
            None => write!(f, "[{}, +inf)", self.lo),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Matcher {
    Range { range: IntRange },
    Label { label: String },
}

impl Matcher {
    fn matches(&self, raw: &RawValue) -> bool {
        match (self, raw) {
            (Matcher::Range { range }, RawValue::Number(x)) => range.contains(*x),
            (Matcher::Label { label }, RawValue::Label(s)) => label == s,
            _ => false,
        }
    }
}

impl fmt::Display for Matcher {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Matcher::Range { range } => write!(f, "{range}"),
            Matcher::Label { label } => f.write_str(label),
        }
    }
}

/// One row of a crisp conversion table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrispRule {
    #[serde(flatten)]
    pub matcher: Matcher,
    pub value: f64,
}

impl CrispRule {
    pub fn range(lo: i64, hi: Option<i64>, value: f64) -> Self {
        CrispRule {
            matcher: Matcher::Range {
                range: IntRange::new(lo, hi),
            },
            value,
        }
    }

    pub fn label(label: &str, value: f64) -> Self {
        CrispRule {
            matcher: Matcher::Label {
                label: label.to_string(),
            },
            value,
        }
    }
}

/// Index of the unique rule matching `raw`.
pub fn find_rule(raw: &RawValue, rules: &[CrispRule]) -> Option<usize> {
    rules.iter().position(|r| r.matcher.matches(raw))
}

/// Crisp value of the rule matching `raw`.
pub fn apply_crisp_map(raw: &RawValue, rules: &[CrispRule]) -> Result<f64> {
    find_rule(raw, rules)
        .map(|i| rules[i].value)
        .ok_or_else(|| Error::NoMatchingRule {
            candidate: None,
            criterion: String::new(),
            value: raw.to_string(),
        })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CriterionConfig")]
pub struct CriterionSpec {
    pub code: String,
    pub name: String,
    pub kind: CriterionKind,
    pub attribute: Attribute,
    pub weight: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_label: Option<WeightLabel>,
    #[serde(rename = "rules")]
    pub crisp_map: Vec<CrispRule>,
}

/// On-disk shape of a criterion; `weight` and `weight_label` are alternatives.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CriterionConfig {
    code: String,
    #[serde(default)]
    name: Option<String>,
    kind: CriterionKind,
    #[serde(default)]
    attribute: Option<Attribute>,
    #[serde(default)]
    weight: Option<f64>,
    #[serde(default)]
    weight_label: Option<WeightLabel>,
    rules: Vec<CrispRule>,
}

impl TryFrom<CriterionConfig> for CriterionSpec {
    type Error = Error;

    fn try_from(c: CriterionConfig) -> Result<Self> {
        let attribute = c
            .attribute
            .or_else(|| Attribute::for_code(&c.code))
            .ok_or_else(|| {
                Error::Config(format!(
                    "criterion {}: no attribute given and code is not one of C1..C4",
                    c.code
                ))
            })?;
        let weight = match (c.weight, c.weight_label) {
            (Some(w), Some(l)) if w != l.weight() => {
                return Err(Error::Config(format!(
                    "criterion {}: weight {w} contradicts label {l:?} ({})",
                    c.code,
                    l.weight()
                )))
            }
            (Some(w), _) => w,
            (None, Some(l)) => l.weight(),
            (None, None) => {
                return Err(Error::Config(format!(
                    "criterion {}: one of weight or weight_label is required",
                    c.code
                )))
            }
        };
        let spec = CriterionSpec {
            name: c.name.unwrap_or_else(|| c.code.clone()),
            code: c.code,
            kind: c.kind,
            attribute,
            weight,
            weight_label: c.weight_label,
            crisp_map: c.rules,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl CriterionSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(format!("criterion {}: {msg}", self.code)));
        if self.code.trim().is_empty() {
            return Err(Error::Config("criterion code must not be empty".into()));
        }
        if !(self.weight > 0.0 && self.weight <= 1.0) {
            return bad(format!("weight {} outside (0, 1]", self.weight));
        }
        if self.crisp_map.is_empty() {
            return bad("rules must not be empty".into());
        }
        let mut labels = HashSet::new();
        let mut ranges: Vec<IntRange> = Vec::new();
        for rule in &self.crisp_map {
            if !(0.0..=1.0).contains(&rule.value) {
                return bad(format!("crisp value {} outside [0, 1]", rule.value));
            }
            match &rule.matcher {
                Matcher::Range { range } => {
                    if !self.attribute.is_numeric() {
                        return bad(format!("{} needs label rules, got range {range}", self.attribute.name()));
                    }
                    if range.hi.is_some_and(|hi| hi < range.lo) {
                        return bad(format!("empty range {range}"));
                    }
                    if let Some(other) = ranges.iter().find(|r| r.overlaps(range)) {
                        return bad(format!("ranges {other} and {range} overlap"));
                    }
                    ranges.push(*range);
                }
                Matcher::Label { label } => {
                    if self.attribute.is_numeric() {
                        return bad(format!("{} needs range rules, got label {label}", self.attribute.name()));
                    }
                    if !labels.insert(label.as_str()) {
                        return bad(format!("duplicate label {label}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Non-fatal configuration issues.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.kind == CriterionKind::Benefit && !self.crisp_map.iter().any(|r| r.value == 1.0) {
            out.push(format!(
                "criterion {}: benefit criterion has no rule with crisp value 1",
                self.code
            ));
        }
        out
    }

    /// Crisp value for one profile.
    pub fn crisp_value(&self, profile: &AttributeProfile) -> Result<f64> {
        let raw = profile
            .raw_value(self.attribute)
            .ok_or_else(|| Error::validation("age_years", "age is not resolved"))?;
        apply_crisp_map(&raw, &self.crisp_map).map_err(|e| match e {
            Error::NoMatchingRule { value, .. } => Error::NoMatchingRule {
                candidate: None,
                criterion: self.code.clone(),
                value,
            },
            other => other,
        })
    }
}

/// Checks a whole criteria list: non-empty, every spec valid, codes and
/// attributes unique.
pub fn validate_criteria(criteria: &[CriterionSpec]) -> Result<()> {
    if criteria.is_empty() {
        return Err(Error::Config("no criteria defined".into()));
    }
    let mut codes = HashSet::new();
    let mut attrs = HashSet::new();
    for c in criteria {
        c.validate()?;
        if !codes.insert(c.code.as_str()) {
            return Err(Error::Config(format!("duplicate criterion code {}", c.code)));
        }
        if !attrs.insert(c.attribute) {
            return Err(Error::Config(format!(
                "attribute {} is used by more than one criterion",
                c.attribute.name()
            )));
        }
    }
    Ok(())
}

/// Crisp vector of a profile, ordered as `criteria`.
pub fn crispify_profile(profile: &AttributeProfile, criteria: &[CriterionSpec]) -> Result<Vec<f64>> {
    criteria.iter().map(|c| c.crisp_value(profile)).collect()
}

/// The four standard criteria: age, education, psych test and work experience,
/// all benefit, weighted CP / P / SP / P.
pub fn default_criteria() -> Vec<CriterionSpec> {
    vec![
        CriterionSpec {
            code: "C1".into(),
            name: "Age (usia)".into(),
            kind: CriterionKind::Benefit,
            attribute: Attribute::Age,
            weight: WeightLabel::CP.weight(),
            weight_label: Some(WeightLabel::CP),
            crisp_map: vec![
                CrispRule::range(18, Some(20), 1.0),
                CrispRule::range(21, Some(23), 0.75),
                CrispRule::range(24, Some(26), 0.50),
                CrispRule::range(27, Some(30), 0.25),
                CrispRule::range(31, Some(35), 0.0),
            ],
        },
        CriterionSpec {
            code: "C2".into(),
            name: "Education (pendidikan)".into(),
            kind: CriterionKind::Benefit,
            attribute: Attribute::Education,
            weight: WeightLabel::P.weight(),
            weight_label: Some(WeightLabel::P),
            crisp_map: vec![
                CrispRule::label("SMP", 0.0),
                CrispRule::label("SMA", 0.25),
                CrispRule::label("DI_DIII", 0.50),
                CrispRule::label("DIV", 0.75),
                CrispRule::label("S1", 1.0),
            ],
        },
        CriterionSpec {
            code: "C3".into(),
            name: "Psych test (psikotes)".into(),
            kind: CriterionKind::Benefit,
            attribute: Attribute::Psych,
            weight: WeightLabel::SP.weight(),
            weight_label: Some(WeightLabel::SP),
            crisp_map: vec![
                CrispRule::label("Recommended", 1.0),
                CrispRule::label("NotYetRecommended", 0.0),
            ],
        },
        CriterionSpec {
            code: "C4".into(),
            name: "Work experience (pengalaman kerja)".into(),
            kind: CriterionKind::Benefit,
            attribute: Attribute::Experience,
            weight: WeightLabel::P.weight(),
            weight_label: Some(WeightLabel::P),
            crisp_map: vec![
                CrispRule::range(0, Some(0), 0.0),
                CrispRule::range(1, Some(3), 0.25),
                CrispRule::range(4, Some(6), 0.50),
                CrispRule::range(7, Some(9), 0.75),
                CrispRule::range(10, None, 1.0),
            ],
        },
    ]
}

pub fn parse_criteria(json: &str) -> Result<Vec<CriterionSpec>> {
    if json.trim().is_empty() {
        return Err(Error::Config("criteria file is empty".into()));
    }
    let criteria: Vec<CriterionSpec> = serde_json::from_str(json).map_err(|e| Error::Config(e.to_string()))?;
    validate_criteria(&criteria)?;
    Ok(criteria)
}

pub fn load_criteria(path: &Path) -> Result<Vec<CriterionSpec>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_criteria(&text).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}
