use std::fmt::Write as _;

use serde::Serialize;

use crate::baselines::{direct_choquet_scores, min_max_normalize};
use crate::error::{Error, Result};
use crate::io::problem::ProblemFile;
use crate::io::report::ReportFormat;
use crate::registry::Registry;

/// Direct Choquet scores of the alternatives under the qualitative scale (when
/// given) and after min-max normalization of the raw evaluations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineReport {
    pub criteria: Vec<String>,
    pub alternatives: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qualitative_scores: Option<Vec<f64>>,
    pub normalized: Vec<Vec<f64>>,
    pub normalized_scores: Vec<f64>,
}

pub fn run_baseline(file: &ProblemFile, registry: &Registry) -> Result<BaselineReport> {
    let parts = file.resolve(registry)?;
    let qualitative_scores = match &parts.qualitative {
        Some(q) => {
            if q.names() != parts.alternatives.names() {
                return Err(Error::structural(
                    "qualitative evaluations must list the same alternatives in the same order",
                ));
            }
            Some(direct_choquet_scores(q, &parts.capacity)?)
        }
        None => None,
    };
    let normalized = min_max_normalize(&parts.alternatives, &file.criteria)?;
    let normalized_scores = direct_choquet_scores(&normalized.matrix, &parts.capacity)?;
    Ok(BaselineReport {
        criteria: file.criteria.iter().map(|c| c.name.clone()).collect(),
        alternatives: parts.alternatives.names().to_vec(),
        qualitative_scores,
        normalized: normalized.matrix.rows().to_vec(),
        normalized_scores,
    })
}

pub fn emit_baseline(report: &BaselineReport, format: ReportFormat) -> Result<String> {
    let mut out = String::new();
    match format {
        ReportFormat::Json => {
            out = serde_json::to_string_pretty(report)
                .map_err(|e| Error::structural(e.to_string()))?;
            out.push('\n');
        }
        ReportFormat::Csv => {
            let mut header = vec!["alternative".to_string()];
            header.extend(report.criteria.iter().map(|c| format!("normalized_{c}")));
            header.push("normalized_score".into());
            if report.qualitative_scores.is_some() {
                header.push("qualitative_score".into());
            }
            out.push_str(&header.join(","));
            out.push('\n');
            for (i, name) in report.alternatives.iter().enumerate() {
                let mut row = vec![name.clone()];
                row.extend(report.normalized[i].iter().map(|v| v.to_string()));
                row.push(report.normalized_scores[i].to_string());
                if let Some(q) = &report.qualitative_scores {
                    row.push(q[i].to_string());
                }
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        ReportFormat::PlainTable => {
            let width = report
                .alternatives
                .iter()
                .map(|a| a.chars().count())
                .max()
                .unwrap_or(0)
                .max("alternative".len());
            let _ = write!(out, "{:<width$}", "alternative");
            for c in &report.criteria {
                let _ = write!(out, " {c:>12}");
            }
            let _ = write!(out, " {:>12}", "min-max CI");
            if report.qualitative_scores.is_some() {
                let _ = write!(out, " {:>12}", "qualit. CI");
            }
            out.push('\n');
            for (i, name) in report.alternatives.iter().enumerate() {
                let _ = write!(out, "{name:<width$}");
                for v in &report.normalized[i] {
                    let _ = write!(out, " {:>12}", format!("{v:.3}"));
                }
                let _ = write!(
                    out,
                    " {:>12}",
                    format!("{:.3}", report.normalized_scores[i])
                );
                if let Some(q) = &report.qualitative_scores {
                    let _ = write!(out, " {:>12}", format!("{:.3}", q[i]));
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}
