use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ghap_core::fixtures::{bottleneck_fixture, corridor_fixture, office_fixture};
use ghap_core::{
    enumerate_complete_traces, score_steps, solve_with, universal_trace_set, Evaluator, Marginal,
    Measure, Objective, ParamValue, Scenario, SolveOptions, StepScore, Trace, TraceSet,
    WeightProfile,
};

use crate::error::{CliError, Result};
use crate::files::{self, param_from_json, ScenarioFile, TraceFile, M0};
use crate::render::render;

#[derive(Debug, Parser)]
#[command(
    name = "ghap",
    version,
    about = "Observer-aware planning on small grid worlds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score every prefix of a trace and show the observer's posterior.
    Score(ScoreArgs),
    /// Find the agent behavior minimizing the scenario's objective.
    Plan(PlanArgs),
    /// Draw the grid, optionally with a trace.
    Render(RenderArgs),
    /// Count (and list) the traces of a model, or the universal set for M0.
    Enumerate(EnumerateArgs),
    /// Write a canonical scenario file.
    Fixture(FixtureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Explicability,
    Legibility,
    Predictability,
    Deception,
    Obfuscation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MarginalArg {
    Prior,
    Posterior,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    pub scenario: PathBuf,
    pub trace: PathBuf,
    /// Defaults to the measure behind the scenario's objective.
    #[arg(long, value_enum)]
    pub measure: Option<MeasureArg>,
    /// Parameter name for legibility.
    #[arg(long)]
    pub theta_key: Option<String>,
    /// Parameter value for legibility as JSON, e.g. `[0,5]`; bare words are text.
    #[arg(long)]
    pub theta_value: Option<String>,
    /// Hypothesis weighting for predictability.
    #[arg(long, value_enum)]
    pub marginal: Option<MarginalArg>,
    /// Only report the split after this many actions.
    #[arg(long)]
    pub split: Option<usize>,
    /// Also write the rows as CSV at full precision.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    pub scenario: PathBuf,
    /// Only consider cost-optimal behaviors of the agent.
    #[arg(long)]
    pub restrict_optimal: bool,
    /// Weight of the agent's own cost; overrides the scenario's `lambda`.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Score candidates on a single thread.
    #[arg(long)]
    pub sequential: bool,
    /// Write the chosen trace as a trace file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub scenario: PathBuf,
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    pub scenario: PathBuf,
    /// A model id, or M0 for the universal trace set.
    pub model: String,
    /// Print every trace, one action string per line.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureName {
    Office,
    Corridor,
    Bottleneck,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    #[arg(long, value_enum, default_value = "office")]
    pub name: FixtureName,
    /// Destination file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Score(a) => score(a, out),
        Command::Plan(a) => plan(a, out),
        Command::Render(a) => {
            let loaded = files::load_scenario(&a.scenario)?;
            let trace = a
                .trace
                .as_deref()
                .map(|p| files::load_trace(p, &loaded.scenario))
                .transpose()?;
            out.write_all(render(&loaded.scenario, trace.as_ref()).as_bytes())?;
            Ok(())
        }
        Command::Enumerate(a) => enumerate(a, out),
        Command::Fixture(a) => fixture(a, out),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_theta(raw: &str) -> Result<ParamValue> {
    match serde_json::from_str(raw) {
        Ok(v) => param_from_json(&v).map_err(|e| usage(format!("--theta-value: {e}"))),
        Err(_) => Ok(ParamValue::Text(raw.to_string())),
    }
}

fn select_measure(a: &ScoreArgs, scenario: &Scenario) -> Result<Measure> {
    let Some(kind) = a.measure else {
        if a.theta_key.is_some() || a.theta_value.is_some() || a.marginal.is_some() {
            return Err(usage(
                "--theta-key, --theta-value and --marginal need --measure",
            ));
        }
        return scenario
            .objective()
            .map(|o| Measure::for_objective(o, scenario.agent_id()))
            .ok_or_else(|| usage("--measure is required when the scenario has no objective"));
    };
    if kind != MeasureArg::Legibility && (a.theta_key.is_some() || a.theta_value.is_some()) {
        return Err(usage(
            "--theta-key and --theta-value only apply to legibility",
        ));
    }
    if kind != MeasureArg::Predictability && a.marginal.is_some() {
        return Err(usage("--marginal only applies to predictability"));
    }
    Ok(match kind {
        MeasureArg::Explicability => Measure::Explicability,
        MeasureArg::Legibility => {
            let (Some(key), Some(value)) = (&a.theta_key, &a.theta_value) else {
                return Err(usage("legibility needs --theta-key and --theta-value"));
            };
            Measure::Legibility {
                theta_key: key.clone(),
                theta_value: parse_theta(value)?,
            }
        }
        MeasureArg::Predictability => Measure::Predictability {
            marginal: match a.marginal {
                Some(MarginalArg::Prior) => Marginal::Prior,
                _ => Marginal::Posterior,
            },
        },
        MeasureArg::Deception => Measure::Deception {
            agent_id: scenario.agent_id().to_string(),
        },
        MeasureArg::Obfuscation => Measure::Obfuscation,
    })
}

fn write_table(
    out: &mut dyn Write,
    measure: &Measure,
    ids: &[String],
    rows: &[StepScore],
) -> Result<()> {
    write!(out, "{:>5}  {:>14}", "step", measure.name())?;
    for id in ids {
        write!(out, "  {id:>10}")?;
    }
    writeln!(out)?;
    for s in rows {
        write!(out, "{:>5}  {:>14.6}", s.step, s.value)?;
        for id in ids {
            write!(out, "  {:>10.6}", s.posterior.get(id))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn write_csv(path: &PathBuf, measure: &Measure, ids: &[String], rows: &[StepScore]) -> Result<()> {
    let io = |e: csv::Error| CliError::Io {
        path: path.clone(),
        source: e.into(),
    };
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    let mut header = vec![
        "step".to_string(),
        "measure".to_string(),
        "value".to_string(),
    ];
    header.extend(ids.iter().cloned());
    w.write_record(&header).map_err(io)?;
    for s in rows {
        let mut record = vec![
            s.step.to_string(),
            measure.name().to_string(),
            s.value.to_string(),
        ];
        record.extend(ids.iter().map(|id| s.posterior.get(id).to_string()));
        w.write_record(&record).map_err(io)?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

fn score(a: ScoreArgs, out: &mut dyn Write) -> Result<()> {
    let loaded = files::load_scenario(&a.scenario)?;
    let measure = select_measure(&a, &loaded.scenario)?;
    let trace = files::load_trace(&a.trace, &loaded.scenario)?;
    if let Some(i) = a.split {
        if i > trace.len() {
            return Err(usage(format!(
                "--split {i} exceeds the trace length {}",
                trace.len()
            )));
        }
    }
    let ev =
        Evaluator::new(loaded.scenario).map_err(|e| CliError::core("building the observer", e))?;
    let ids = ev.observer().ids().to_vec();
    let mut rows = score_steps(ev.observer(), &trace, &measure)
        .map_err(|e| CliError::core("scoring the trace", e))?;
    if let Some(i) = a.split {
        rows.retain(|s| s.step == i);
    }

    writeln!(out, "trace: {}", display_actions(&trace))?;
    write_table(out, &measure, &ids, &rows)?;
    if let Some(path) = &a.csv {
        write_csv(path, &measure, &ids, &rows)?;
    }
    if let Some(objective) = ev.scenario().objective() {
        if ev.scenario().agent().is_complete(&trace) {
            let cost = ev
                .generalized_cost(&trace)
                .map_err(|e| CliError::core("evaluating the objective", e))?;
            writeln!(out, "objective ({}): {cost}", objective.name())?;
        } else {
            writeln!(
                out,
                "objective ({}): n/a, trace does not complete the agent's task",
                objective.name()
            )?;
        }
    }
    Ok(())
}

fn display_actions(t: &Trace) -> String {
    if t.is_empty() {
        "\"\"".to_string()
    } else {
        t.action_string()
    }
}

fn plan(a: PlanArgs, out: &mut dyn Write) -> Result<()> {
    let loaded = files::load_scenario(&a.scenario)?;
    let lambda = a.lambda.unwrap_or(loaded.lambda);
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(usage(format!(
            "--lambda must be finite and non-negative, got {lambda}"
        )));
    }
    if loaded.scenario.objective().is_none() {
        return Err(CliError::core(
            a.scenario.display().to_string(),
            ghap_core::Error::MissingObjective,
        ));
    }
    let ev =
        Evaluator::new(loaded.scenario).map_err(|e| CliError::core("building the observer", e))?;
    let options = SolveOptions {
        restrict_optimal: a.restrict_optimal,
        lambda,
        parallel: !a.sequential,
    };
    let result = solve_with(&ev, options).map_err(|e| CliError::core("planning", e))?;

    writeln!(out, "plan: {}", display_actions(&result.chosen))?;
    writeln!(out, "agent cost: {}", result.agent_cost)?;
    writeln!(out, "objective cost: {}", result.objective_cost)?;
    writeln!(out, "candidates evaluated: {}", result.candidates_evaluated)?;
    let measure = ev.measure().map_err(|e| CliError::core("planning", e))?;
    writeln!(out, "{:>5}  {:>14}", "step", measure.name())?;
    for s in &result.per_step_scores {
        writeln!(out, "{:>5}  {:>14.6}", s.prefix_len, s.value)?;
    }
    if let Some(path) = &a.out {
        files::write_json(path, &TraceFile::from_trace(&result.chosen))?;
    }
    Ok(())
}

fn enumerate(a: EnumerateArgs, out: &mut dyn Write) -> Result<()> {
    let loaded = files::load_scenario(&a.scenario)?;
    let s = &loaded.scenario;
    let hs = s.hypotheses();
    let set: TraceSet = if a.model == M0 {
        universal_trace_set(hs.grid(), hs.start(), hs.m0_horizon())
            .map_err(|e| CliError::core("enumerating M0", e))?
    } else {
        let model = hs
            .model(&a.model)
            .or_else(|| (s.agent_id() == a.model).then(|| s.agent()))
            .ok_or_else(|| {
                CliError::parse(&a.scenario, format!("unknown model id `{}`", a.model))
            })?;
        enumerate_complete_traces(model)
    };
    writeln!(out, "{}", set.len())?;
    if a.list {
        for t in set.iter() {
            writeln!(out, "{}", display_actions(t))?;
        }
    }
    Ok(())
}

/// The scenario emitted by `fixture --name`.
pub fn named_fixture(name: FixtureName) -> Scenario {
    match name {
        FixtureName::Office => office_fixture()
            .with_objective(Objective::Explicable)
            .with_weights(WeightProfile::FinalOnly)
            .expect("final-only weights are valid"),
        FixtureName::Corridor => corridor_fixture(),
        FixtureName::Bottleneck => bottleneck_fixture(),
    }
}

fn fixture(a: FixtureArgs, out: &mut dyn Write) -> Result<()> {
    let file = ScenarioFile::from_scenario(&named_fixture(a.name), 0.0);
    match &a.out {
        Some(path) => files::write_json(path, &file),
        None => {
            let text = serde_json::to_string_pretty(&file).expect("scenario files serialize");
            writeln!(out, "{text}")?;
            Ok(())
        }
    }
}
