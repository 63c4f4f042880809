//! Candidate listings in the three output formats.

use anyhow::Result;
use placement_core::{ReportFormat, StoredCandidate};

const HEADER: [&str; 9] = [
    "id",
    "name",
    "birth_date",
    "country",
    "placement",
    "position",
    "age",
    "education",
    "psych",
];

fn row(c: &StoredCandidate) -> Vec<String> {
    let age = c.profile.resolved(&c.record).ok().and_then(|p| p.age_years).map(|a| a.to_string()).unwrap_or_default();
    vec![
        c.id.to_string(),
        c.record.full_name.clone(),
        c.record.birth_date.to_string(),
        c.record.destination_country.clone(),
        c.record.placement_unit.clone(),
        c.record.position.clone(),
        age,
        c.profile.education_level.to_string(),
        c.profile.psych_result.to_string(),
    ]
}

pub fn candidates(list: &[&StoredCandidate], format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(list)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header: Vec<&str> = HEADER.to_vec();
            header.push("experience");
            w.write_record(&header)?;
            for c in list {
                let mut r = row(c);
                r.push(c.profile.experience_years.to_string());
                w.write_record(&r)?;
            }
            Ok(w.into_inner().map_err(|e| e.into_error())?)
        }
        ReportFormat::Text => {
            let mut rows: Vec<Vec<String>> = vec![HEADER.iter().map(|s| s.to_string()).collect()];
            rows[0].push("experience".into());
            for c in list {
                let mut r = row(c);
                r.push(c.profile.experience_years.to_string());
                rows.push(r);
            }
            let widths: Vec<usize> = (0..rows[0].len())
                .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            for r in &rows {
                let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
            Ok(out.into_bytes())
        }
    }
}
