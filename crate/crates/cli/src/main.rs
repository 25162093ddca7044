use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flowsort_choquet::engine::sort_all;
use flowsort_choquet::io::{
    emit_baseline, emit_report, emit_scenarios, load_problem, run_baseline, run_scenarios,
    OptionsSpec, ProblemFile, ReportFormat, ScenarioSet, SortReport,
};
use flowsort_choquet::verification::{
    check_conditions, check_propositions, run_suite, InteractionSigns, Property, PropertyReport,
    SuiteConfig,
};
use flowsort_choquet::{Error, Registry, Result, ValidationMode};

#[derive(Parser)]
#[command(
    name = "flowsort",
    version,
    about = "Sort alternatives into ordered categories with FlowSort-Choquet"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sort the alternatives of a problem file.
    Sort {
        problem: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare assignments across capacity scenarios.
    Scenarios {
        scenarios: PathBuf,
        /// Rule whose categories are compared (overrides the file).
        #[arg(long)]
        rule: Option<String>,
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        tie_tolerance: Option<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Direct Choquet scores after qualitative and min-max rescaling.
    Baseline {
        problem: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the method's properties on a problem file or on seeded random
    /// problems. Exits with 1 when a property fails.
    Verify {
        /// Problem file to check; random problems are generated when absent.
        problem: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        /// Comma-separated property names (default: all).
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
        /// Profile separation of generated problems.
        #[arg(long, default_value = "strong")]
        mode: String,
        #[arg(long, default_value_t = 6)]
        max_criteria: usize,
        #[arg(long, default_value_t = 5)]
        max_categories: usize,
        #[arg(long, default_value_t = 20)]
        max_alternatives: usize,
        /// Signs allowed for generated interactions: any, non_negative or
        /// non_positive.
        #[arg(long, default_value = "any")]
        interaction_signs: String,
        /// plain_table or json.
        #[arg(long, default_value = "plain_table")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Assignment rules, repeatable or comma-separated (positive, negative, net).
    #[arg(long = "rule", value_delimiter = ',')]
    rules: Vec<String>,
    /// Profile validation: weak, strict or strong.
    #[arg(long)]
    mode: Option<String>,
    /// Choquet integral form: shapley, two_additive, mobius or lattice.
    #[arg(long)]
    form: Option<String>,
    #[arg(long)]
    tie_tolerance: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    /// plain_table, csv or json.
    #[arg(long, default_value = "plain_table")]
    format: String,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_mode(name: &str) -> Result<ValidationMode> {
    ValidationMode::parse(name).ok_or_else(|| Error::UnknownStrategy {
        kind: "validation mode",
        name: name.to_string(),
        available: "weak, strict, strong".to_string(),
    })
}

fn overrides(
    rules: Vec<String>,
    mode: Option<&str>,
    form: Option<String>,
    tie_tolerance: Option<f64>,
) -> Result<OptionsSpec> {
    Ok(OptionsSpec {
        mode: mode.map(parse_mode).transpose()?,
        rules: (!rules.is_empty()).then_some(rules),
        form,
        tie_tolerance,
    })
}

fn write_out(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn verify_file(path: &Path, properties: &[Property], seed: u64) -> Result<PropertyReport> {
    let registry = Registry::default();
    let loaded = load_problem(path, &registry, &OptionsSpec::default())?;
    let problem = &loaded.problem;
    let mut report = check_conditions(problem)?;
    let propositions: Vec<Property> = Property::PROPOSITIONS
        .into_iter()
        .filter(|p| properties.contains(p))
        .filter(|p| problem.mode() == ValidationMode::Strong || !p.requires_strong())
        .collect();
    report.merge(check_propositions(problem, &propositions, seed)?);
    report.retain(&properties.iter().copied().collect());
    Ok(report)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let registry = Registry::default();
    match cli.command {
        Command::Sort { problem, run, out } => {
            let overrides = overrides(run.rules, run.mode.as_deref(), run.form, run.tie_tolerance)?;
            let format = ReportFormat::parse(&out.format)?;
            let loaded = load_problem(&problem, &registry, &overrides)?;
            let result = sort_all(&loaded.problem, &loaded.options)?;
            let report = SortReport::new(&loaded.file, &loaded.settings, result);
            write_out(&emit_report(&report, format)?, out.output.as_deref())?;
        }
        Command::Scenarios {
            scenarios,
            rule,
            mode,
            form,
            tie_tolerance,
            out,
        } => {
            let overrides = overrides(Vec::new(), mode.as_deref(), form, tie_tolerance)?;
            let format = ReportFormat::parse(&out.format)?;
            let mut set = ScenarioSet::read(&scenarios)?;
            if rule.is_some() {
                set.rule = rule;
            }
            let dir = scenarios.parent().unwrap_or(Path::new("."));
            let cmp = run_scenarios(&set, dir, &registry, &overrides)?;
            write_out(&emit_scenarios(&cmp, format)?, out.output.as_deref())?;
        }
        Command::Baseline { problem, out } => {
            let format = ReportFormat::parse(&out.format)?;
            let file = ProblemFile::read(&problem)?;
            let report = run_baseline(&file, &registry)?;
            write_out(&emit_baseline(&report, format)?, out.output.as_deref())?;
        }
        Command::Verify {
            problem,
            seed,
            instances,
            properties,
            mode,
            max_criteria,
            max_categories,
            max_alternatives,
            interaction_signs,
            format,
            output,
        } => {
            let properties = if properties.is_empty() {
                Property::all()
            } else {
                properties
                    .iter()
                    .map(|p| Property::parse(p))
                    .collect::<Result<Vec<_>>>()?
            };
            let json = match format.as_str() {
                "json" => true,
                "plain_table" | "plain" | "table" => false,
                other => {
                    return Err(Error::Structural(format!(
                        "unknown verify format {other} (available: plain_table, json)"
                    )))
                }
            };
            let report = match problem {
                Some(path) => verify_file(&path, &properties, seed)?,
                None => {
                    let signs = InteractionSigns::parse(&interaction_signs).ok_or_else(|| {
                        Error::UnknownStrategy {
                            kind: "interaction sign policy",
                            name: interaction_signs.clone(),
                            available: "any, non_negative, non_positive".to_string(),
                        }
                    })?;
                    run_suite(&SuiteConfig {
                        instances,
                        seed,
                        max_criteria,
                        max_categories,
                        max_alternatives,
                        mode: parse_mode(&mode)?,
                        interaction_signs: signs,
                        properties,
                        ..SuiteConfig::default()
                    })?
                }
            };
            let text = if json {
                let mut s = serde_json::to_string_pretty(&report)
                    .map_err(|e| Error::Structural(e.to_string()))?;
                s.push('\n');
                s
            } else {
                report.to_string()
            };
            write_out(&text, output.as_deref())?;
            if !report.is_clean() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
