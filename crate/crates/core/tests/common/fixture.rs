//! The five-candidate worked example shared by test suites.

#![allow(dead_code)]

use placement_core::{AttributeProfile, CandidateRecord, EducationLevel, Gender, PsychResult, Scope};

/// The five-candidate worked example: name, gender, birth date, address,
/// phone, stored age, education, experience. Every candidate passed the psych
/// test. Stored ages are used as given even where the dates disagree.
type Row = (&'static str, Gender, &'static str, &'static str, &'static str, u32, EducationLevel, u32);

const WORKED: [Row; 5] = [
    ("TERE", Gender::Female, "1992-04-26", "PLAJU", "0969899999", 20, EducationLevel::SMA, 0),
    ("yeli", Gender::Female, "1988-01-09", "pako", "0999899999", 25, EducationLevel::SMP, 3),
    ("mona", Gender::Female, "1991-06-30", "6. kelapa", "0711345678", 22, EducationLevel::SMA, 3),
    ("DEDE", Gender::Male, "1992-04-28", "VDV", "990890", 20, EducationLevel::SMA, 2),
    ("MINA", Gender::Female, "1990-01-21", "7 ULU", "0969898888", 23, EducationLevel::DI_DIII, 6),
];

pub fn worked_scope() -> Scope {
    Scope {
        destination_country: "Malaysia".into(),
        placement_unit: "Nada Persada".into(),
        position: "PRT".into(),
    }
}

pub fn worked_candidates() -> Vec<(CandidateRecord, AttributeProfile)> {
    WORKED
        .iter()
        .map(|&(name, gender, birth, address, phone, age, edu, exp)| {
            (
                CandidateRecord {
                    full_name: name.into(),
                    gender,
                    birth_date: birth.parse().unwrap(),
                    address: address.into(),
                    phone: phone.into(),
                    email: None,
                    agency_name: "PT Citra Karya".into(),
                    destination_country: "Malaysia".into(),
                    placement_unit: "Nada Persada".into(),
                    position: "PRT".into(),
                    intake_date: "2013-04-29".parse().unwrap(),
                },
                AttributeProfile {
                    age_years: Some(age),
                    education_level: edu,
                    psych_result: PsychResult::Recommended,
                    experience_years: exp,
                },
            )
        })
        .collect()
}

/// Worked profiles keyed by ids 1..=5.
pub fn worked_profiles() -> Vec<(u64, AttributeProfile)> {
    worked_candidates()
        .into_iter()
        .enumerate()
        .map(|(i, (_, p))| (i as u64 + 1, p))
        .collect()
}
