use std::fmt::Write as _;

use serde::Serialize;

use crate::engine::{AssignmentResult, FlowKind};
use crate::error::{Error, Result};
use crate::io::problem::{OptionsSpec, ProblemFile, RunSettings};
use crate::io::scenario::ScenarioComparison;

pub const REPORT_SCHEMA: &str = "flowsort-choquet-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    PlainTable,
    Csv,
    Json,
}

impl ReportFormat {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "plain_table" | "plain" | "table" => Ok(Self::PlainTable),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::structural(format!(
                "unknown report format {other} (available: plain_table, csv, json)"
            ))),
        }
    }
}

/// A sort result with the exact problem and settings that produced it, so
/// that the JSON form can be loaded and re-run.
#[derive(Debug, Clone, Serialize)]
pub struct SortReport {
    pub schema: &'static str,
    pub problem: ProblemFile,
    pub results: AssignmentResult,
}

impl SortReport {
    pub fn new(file: &ProblemFile, settings: &RunSettings, results: AssignmentResult) -> Self {
        let mut problem = file.clone();
        problem.options = OptionsSpec {
            mode: Some(settings.mode),
            rules: Some(settings.rules.clone()),
            form: Some(settings.form.clone()),
            tie_tolerance: Some(settings.tie_tolerance),
        };
        Self {
            schema: REPORT_SCHEMA,
            problem,
            results,
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

const FLOWS: [(FlowKind, &str, &str); 3] = [
    (FlowKind::Positive, "φ⁺", "positive"),
    (FlowKind::Negative, "φ⁻", "negative"),
    (FlowKind::Net, "φ", "net"),
];

fn element_names(profiles: usize) -> Vec<String> {
    std::iter::once("a".to_string())
        .chain((1..=profiles).map(|h| format!("r_{h}")))
        .collect()
}

/// Alternative first, then the profiles, matching the usual flow tables.
fn ordered(values: &[f64]) -> impl Iterator<Item = f64> + '_ {
    let a = values.len() - 1;
    std::iter::once(values[a]).chain(values[..a].iter().copied())
}

/// Renders a sort result. Plain tables round flows to 3 decimals; csv and
/// json keep full precision.
pub fn emit_report(report: &SortReport, format: ReportFormat) -> Result<String> {
    let results = &report.results;
    let profiles = results.labels.len() + 1;
    let elements = element_names(profiles);
    let mut out = String::new();
    match format {
        ReportFormat::Json => {
            out = serde_json::to_string_pretty(report)
                .map_err(|e| Error::structural(e.to_string()))?;
            out.push('\n');
        }
        ReportFormat::Csv => {
            let mut header = vec!["alternative".to_string()];
            header.extend(results.rules.iter().cloned());
            for (_, _, word) in FLOWS {
                header.extend(elements.iter().map(|e| format!("{word}_{e}")));
            }
            out.push_str(&header.join(","));
            out.push('\n');
            for alt in &results.alternatives {
                let mut row = vec![csv_field(&alt.name)];
                row.extend(alt.categories.iter().map(|c| c.to_string()));
                for (kind, _, _) in FLOWS {
                    row.extend(ordered(alt.flows.flows(kind)).map(|v| v.to_string()));
                }
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        ReportFormat::PlainTable => {
            let width = results
                .alternatives
                .iter()
                .map(|a| a.name.chars().count())
                .max()
                .unwrap_or(0)
                .max("alternative".len());
            let mut line = format!("{:<width$}", "alternative");
            for (_, symbol, _) in FLOWS {
                line.push_str(" |");
                for e in &elements {
                    let label = format!("{symbol}({e})");
                    let _ = write!(line, " {label:>8}");
                }
            }
            line.push_str(" |");
            for rule in &results.rules {
                let _ = write!(line, " {rule:>8}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
            for alt in &results.alternatives {
                let mut line = format!("{:<width$}", alt.name);
                for (kind, _, _) in FLOWS {
                    line.push_str(" |");
                    for v in ordered(alt.flows.flows(kind)) {
                        let _ = write!(line, " {:>8}", format!("{v:.3}"));
                    }
                }
                line.push_str(" |");
                for c in &alt.categories {
                    let _ = write!(line, " {:>8}", c.to_string());
                }
                out.push_str(&line);
                out.push('\n');
            }
        }
    }
    Ok(out)
}

/// Renders a scenario comparison; changed categories are marked with `*` in
/// the plain table and flagged in csv and json.
pub fn emit_scenarios(cmp: &ScenarioComparison, format: ReportFormat) -> Result<String> {
    let mut out = String::new();
    match format {
        ReportFormat::Json => {
            out =
                serde_json::to_string_pretty(cmp).map_err(|e| Error::structural(e.to_string()))?;
            out.push('\n');
        }
        ReportFormat::Csv => {
            let mut header = vec!["alternative".to_string()];
            for s in &cmp.scenarios {
                header.push(csv_field(s));
                header.push(csv_field(&format!("{s}_changed")));
            }
            out.push_str(&header.join(","));
            out.push('\n');
            for (i, name) in cmp.alternatives.iter().enumerate() {
                let mut row = vec![csv_field(name)];
                for (c, changed) in cmp.categories[i].iter().zip(&cmp.changed[i]) {
                    row.push(c.to_string());
                    row.push(changed.to_string());
                }
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        ReportFormat::PlainTable => {
            let width = cmp
                .alternatives
                .iter()
                .map(|a| a.chars().count())
                .max()
                .unwrap_or(0)
                .max("alternative".len());
            let cols: Vec<usize> = cmp
                .scenarios
                .iter()
                .map(|s| s.chars().count().max(5))
                .collect();
            let _ = write!(out, "{:<width$}", "alternative");
            for (s, w) in cmp.scenarios.iter().zip(&cols) {
                let _ = write!(out, " {s:>w$}");
            }
            out.push('\n');
            for (i, name) in cmp.alternatives.iter().enumerate() {
                let _ = write!(out, "{name:<width$}");
                for ((c, changed), w) in cmp.categories[i].iter().zip(&cmp.changed[i]).zip(&cols) {
                    let cell = if *changed {
                        format!("*{c}")
                    } else {
                        c.to_string()
                    };
                    let _ = write!(out, " {cell:>w$}");
                }
                out.push('\n');
            }
            let _ = writeln!(
                out,
                "rule: {}; * differs from {}",
                cmp.rule, cmp.scenarios[0]
            );
        }
    }
    Ok(out)
}
