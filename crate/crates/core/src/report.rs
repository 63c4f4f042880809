//! Selection reports (laporan) in JSON, CSV and plain text, plus the
//! per-candidate audit trail used by `explain`.
//!
//! JSON keeps full precision. CSV and text show every number with two
//! decimals, rounded half-up.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::criteria::{find_rule, CriterionKind, CriterionSpec};
use crate::error::{Error, Result};
use crate::registry::{Scope, SelectionBatch};
use crate::saw::SelectionOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" | "txt" => Ok(ReportFormat::Text),
            other => Err(format!("unknown format {other:?} (expected json, csv or text)")),
        }
    }
}

/// Two-decimal text, rounding exact halves upward (away from zero).
pub fn round_display(v: f64) -> String {
    let scaled = v * 100.0;
    // fma recovers the rounding error of the product; zero means `scaled` is exact
    let exact = v.mul_add(100.0, -scaled) == 0.0;
    let s = if exact && scaled.fract().abs() == 0.5 {
        format!("{:.2}", scaled.round() / 100.0)
    } else {
        format!("{v:.2}")
    };
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub rank: u32,
    pub id: u64,
    pub name: String,
    pub crisp: Vec<f64>,
    pub normalized: Vec<f64>,
    pub weighted: Vec<f64>,
    pub preference_value: f64,
    pub preference_display: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportExclusion {
    pub id: u64,
    pub name: String,
    pub criterion: String,
    pub reason: String,
}

/// Everything a printed selection report shows. `batch_id` and `created_at`
/// are `None` for what-if runs that were never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionReport {
    pub batch_id: Option<u64>,
    pub created_at: Option<String>,
    pub scope: Scope,
    pub criteria: Vec<CriterionSpec>,
    pub rows: Vec<ReportRow>,
    pub exclusions: Vec<ReportExclusion>,
    pub warnings: Vec<String>,
}

fn results(batch: &SelectionBatch) -> Result<&SelectionOutcome> {
    batch.results.as_ref().ok_or(Error::NoResults(batch.id))
}

impl SelectionReport {
    pub fn from_batch(batch: &SelectionBatch) -> Result<SelectionReport> {
        let out = results(batch)?;
        let name = |id: u64| batch.member(id).map(|m| m.full_name.clone()).unwrap_or_default();
        let row_of = |id: u64| out.matrix.alternative_ids.iter().position(|&a| a == id);
        let rows = out
            .ranking
            .iter()
            .map(|r| {
                let i = row_of(r.candidate_id).ok_or(Error::NotFound {
                    what: "matrix row for candidate",
                    id: r.candidate_id,
                })?;
                Ok(ReportRow {
                    rank: r.rank,
                    id: r.candidate_id,
                    name: name(r.candidate_id),
                    crisp: out.matrix.values[i].clone(),
                    normalized: out.normalized.values[i].clone(),
                    weighted: r.weighted_components.clone(),
                    preference_value: r.preference_value,
                    preference_display: round_display(r.preference_value),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let exclusions = out
            .exclusions
            .iter()
            .map(|e| ReportExclusion {
                id: e.candidate_id,
                name: name(e.candidate_id),
                criterion: e.criterion.clone(),
                reason: e.reason.clone(),
            })
            .collect();
        Ok(SelectionReport {
            batch_id: (batch.id != 0).then_some(batch.id),
            created_at: (batch.id != 0).then(|| batch.created_at.clone()),
            scope: batch.scope.clone(),
            criteria: batch.criteria_snapshot.clone(),
            rows,
            exclusions,
            warnings: out.warnings.clone(),
        })
    }

    fn codes(&self) -> Vec<&str> {
        self.criteria.iter().map(|c| c.code.as_str()).collect()
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        let mut out = serde_json::to_vec_pretty(self)?;
        out.push(b'\n');
        Ok(out)
    }

    /// Header `rank,id,name,<codes>,R<codes>,RxW<codes>,V`, one row per ranked candidate.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let codes = self.codes();
        let mut header: Vec<String> = vec!["rank".into(), "id".into(), "name".into()];
        header.extend(codes.iter().map(|c| c.to_string()));
        header.extend(codes.iter().map(|c| format!("R{c}")));
        header.extend(codes.iter().map(|c| format!("RxW{c}")));
        header.push("V".into());
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec = vec![row.rank.to_string(), row.id.to_string(), row.name.clone()];
            for part in [&row.crisp, &row.normalized, &row.weighted] {
                rec.extend(part.iter().map(|v| round_display(*v)));
            }
            rec.push(row.preference_display.clone());
            w.write_record(&rec)?;
        }
        w.into_inner().map_err(|e| Error::io("csv", e.into_error()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let codes = self.codes();
        let name_w = self
            .rows
            .iter()
            .map(|r| r.name.chars().count())
            .chain(std::iter::once(4))
            .max()
            .unwrap_or(4);

        s.push_str("SELECTION REPORT (laporan hasil penyeleksian)\n");
        if let (Some(id), Some(at)) = (self.batch_id, &self.created_at) {
            let _ = writeln!(s, "Batch {id}, created {at}");
        }
        let _ = writeln!(
            s,
            "Scope: {} / {} / {}\n",
            self.scope.destination_country, self.scope.placement_unit, self.scope.position
        );

        s.push_str("Criteria (bobot kriteria)\n");
        for c in &self.criteria {
            let label = c.weight_label.map(|l| format!(" ({l:?})")).unwrap_or_default();
            let kind = match c.kind {
                CriterionKind::Benefit => "benefit",
                CriterionKind::Cost => "cost",
            };
            let _ = writeln!(s, "  {:<4} {:<36} {:<8} w={}{}", c.code, c.name, kind, round_display(c.weight), label);
        }

        let table = |s: &mut String, title: &str, prefix: &str, pick: &dyn Fn(&ReportRow) -> &Vec<f64>, with_v: bool| {
            let _ = writeln!(s, "\n{title}");
            let _ = write!(s, "  {:>4} {:>5}  {:<name_w$}", "Rank", "ID", "Name");
            for c in &codes {
                let _ = write!(s, " {:>7}", format!("{prefix}{c}"));
            }
            if with_v {
                let _ = write!(s, " {:>7}", "V");
            }
            s.push('\n');
            for r in &self.rows {
                let _ = write!(s, "  {:>4} {:>5}  {:<name_w$}", r.rank, r.id, r.name);
                for v in pick(r) {
                    let _ = write!(s, " {:>7}", round_display(*v));
                }
                if with_v {
                    let _ = write!(s, " {:>7}", r.preference_display);
                }
                s.push('\n');
            }
        };
        table(&mut s, "Crisp values (bilangan crisp)", "", &|r| &r.crisp, false);
        table(&mut s, "Normalized matrix R (normalisasi matriks)", "R", &|r| &r.normalized, false);
        table(&mut s, "Weighted ratings R x W and preference value V (nilai preferensi)", "RxW", &|r| &r.weighted, true);

        if !self.exclusions.is_empty() {
            s.push_str("\nExcluded candidates\n");
            for e in &self.exclusions {
                let _ = writeln!(s, "  {:>5}  {}: {}", e.id, e.name, e.reason);
            }
        }
        if !self.warnings.is_empty() {
            s.push_str("\nWarnings\n");
            for w in &self.warnings {
                let _ = writeln!(s, "  {w}");
            }
        }
        s
    }

    pub fn render(&self, format: ReportFormat) -> Result<Vec<u8>> {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Text => Ok(self.to_text().into_bytes()),
        }
    }
}

pub fn render_report(batch: &SelectionBatch, format: ReportFormat) -> Result<Vec<u8>> {
    SelectionReport::from_batch(batch)?.render(format)
}

/// Step-by-step derivation of one candidate's preference value: raw attribute,
/// crisp value with the matching rule, normalized rating, weighted rating.
pub fn explain(batch: &SelectionBatch, candidate_id: u64) -> Result<String> {
    let member = batch.member(candidate_id).ok_or(Error::NotFound {
        what: "candidate in batch",
        id: candidate_id,
    })?;
    let out = results(batch)?;
    let mut s = String::new();
    let _ = writeln!(s, "Candidate {} ({}), batch {}", member.id, member.full_name, batch.id);

    if let Some(ex) = out.exclusions.iter().find(|e| e.candidate_id == candidate_id) {
        let _ = writeln!(s, "Excluded on {}: {}", ex.criterion, ex.reason);
        return Ok(s);
    }
    let i = out
        .matrix
        .alternative_ids
        .iter()
        .position(|&a| a == candidate_id)
        .ok_or(Error::NotFound { what: "candidate in batch", id: candidate_id })?;
    let ranked = out
        .ranking
        .iter()
        .find(|r| r.candidate_id == candidate_id)
        .ok_or(Error::NotFound { what: "candidate in ranking", id: candidate_id })?;

    for (j, c) in batch.criteria_snapshot.iter().enumerate() {
        let raw = member.profile.raw_value(c.attribute);
        let rule = raw
            .as_ref()
            .and_then(|r| find_rule(r, &c.crisp_map))
            .map(|k| format!("rule {}", c.crisp_map[k].matcher))
            .unwrap_or_else(|| "no rule".into());
        let x = out.matrix.values[i][j];
        let r = out.normalized.values[i][j];
        let w = ranked.weighted_components[j];
        let column: Vec<f64> = out.matrix.column(j).collect();
        let norm = match c.kind {
            CriterionKind::Benefit => {
                let max = column.iter().copied().fold(0.0, f64::max);
                if max > 0.0 {
                    format!("÷ max {}", round_display(max))
                } else {
                    "column max is 0".to_string()
                }
            }
            CriterionKind::Cost => {
                let min = column.iter().copied().fold(f64::INFINITY, f64::min);
                format!("min {} ÷ {}", round_display(min), round_display(x))
            }
        };
        let _ = writeln!(
            s,
            "  {}: {} → {} ({} of {} table) → {} ({}) → {} (× {})",
            c.code,
            raw.map(|r| r.to_string()).unwrap_or_else(|| "?".into()),
            round_display(x),
            rule,
            c.attribute.name(),
            round_display(r),
            norm,
            round_display(w),
            round_display(c.weight),
        );
    }
    let _ = writeln!(
        s,
        "  V = {} (shown {}), rank {} of {}",
        ranked.preference_value,
        round_display(ranked.preference_value),
        ranked.rank,
        out.ranking.len()
    );
    Ok(s)
}
