//! Candidate identity records and the raw attribute profile that feeds selection.

use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, NaiveDate};
use serde::de::value::{Error as ValueError, StrDeserializer};
use serde::de::IntoDeserializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gender {
    #[serde(alias = "male", alias = "M", alias = "Laki-laki")]
    Male,
    #[serde(alias = "female", alias = "F", alias = "Perempuan")]
    Female,
}

/// Highest completed education.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EducationLevel {
    #[serde(alias = "smp")]
    SMP,
    #[serde(alias = "sma")]
    SMA,
    /// Any one- to three-year diploma (D1, D2, D3).
    #[serde(alias = "DI", alias = "DII", alias = "DIII", alias = "DI-DIII", alias = "di_diii")]
    DI_DIII,
    #[serde(alias = "div")]
    DIV,
    #[serde(alias = "s1")]
    S1,
}

impl EducationLevel {
    pub const ALL: [EducationLevel; 5] = [
        EducationLevel::SMP,
        EducationLevel::SMA,
        EducationLevel::DI_DIII,
        EducationLevel::DIV,
        EducationLevel::S1,
    ];

    /// Label used by crisp rules.
    pub fn label(self) -> &'static str {
        match self {
            EducationLevel::SMP => "SMP",
            EducationLevel::SMA => "SMA",
            EducationLevel::DI_DIII => "DI_DIII",
            EducationLevel::DIV => "DIV",
            EducationLevel::S1 => "S1",
        }
    }
}

impl fmt::Display for EducationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Outcome of the psychological test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PsychResult {
    #[serde(alias = "recommended", alias = "Disarankan")]
    Recommended,
    #[serde(alias = "not_yet_recommended", alias = "BelumDisarankan")]
    NotYetRecommended,
}

impl PsychResult {
    pub fn label(self) -> &'static str {
        match self {
            PsychResult::Recommended => "Recommended",
            PsychResult::NotYetRecommended => "NotYetRecommended",
        }
    }
}

impl fmt::Display for PsychResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

// Parse from the same spellings (and aliases) the JSON files accept.
macro_rules! from_str_via_serde {
    ($($t:ty),*) => {$(
        impl FromStr for $t {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
                let de: StrDeserializer<'_, ValueError> = s.trim().into_deserializer();
                <$t>::deserialize(de).map_err(|e| e.to_string())
            }
        }
    )*};
}

from_str_via_serde!(Gender, EducationLevel, PsychResult);

/// The four raw selection inputs of one candidate.
///
/// `age_years` may be omitted; it is then derived from the record's birth and
/// intake dates. A supplied age always wins over the derived one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeProfile {
    #[serde(default)]
    pub age_years: Option<u32>,
    pub education_level: EducationLevel,
    pub psych_result: PsychResult,
    pub experience_years: u32,
}

impl AttributeProfile {
    /// Returns a copy with `age_years` filled in from `record` when absent.
    pub fn resolved(&self, record: &CandidateRecord) -> Result<AttributeProfile> {
        let mut out = self.clone();
        if out.age_years.is_none() {
            out.age_years = Some(compute_age(record.birth_date, record.intake_date)?);
        }
        Ok(out)
    }
}

/// Identity and placement scope of one candidate. The registry assigns the id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub full_name: String,
    pub gender: Gender,
    pub birth_date: NaiveDate,
    #[serde(default)]
    pub address: String,
    #[serde(default)]
    pub phone: String,
    #[serde(default)]
    pub email: Option<String>,
    #[serde(default)]
    pub agency_name: String,
    pub destination_country: String,
    pub placement_unit: String,
    pub position: String,
    pub intake_date: NaiveDate,
}

impl CandidateRecord {
    pub fn validate(&self) -> Result<()> {
        if self.full_name.trim().is_empty() {
            return Err(Error::validation("full_name", "must not be empty"));
        }
        if self.birth_date >= self.intake_date {
            return Err(Error::validation(
                "birth_date",
                format!(
                    "{} must be before intake date {}",
                    self.birth_date, self.intake_date
                ),
            ));
        }
        Ok(())
    }

    /// Key used to reject storing the same person twice: lowercased,
    /// whitespace-collapsed name plus birth date.
    pub fn duplicate_key(&self) -> (String, NaiveDate) {
        (normalize_name(&self.full_name), self.birth_date)
    }
}

pub fn normalize_name(name: &str) -> String {
    name.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Completed years between `birth_date` and `as_of`.
pub fn compute_age(birth_date: NaiveDate, as_of: NaiveDate) -> Result<u32> {
    if birth_date >= as_of {
        return Err(Error::InvalidDateOrder {
            birth: birth_date,
            as_of,
        });
    }
    let mut years = as_of.year() - birth_date.year();
    if (as_of.month(), as_of.day()) < (birth_date.month(), birth_date.day()) {
        years -= 1;
    }
    Ok(years as u32)
}
