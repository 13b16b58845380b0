//! Command-line surface: build context posets, enumerate down-sets,
//! compute non-Booleanness, decide contextuality, and run computations
//! and traces, with deterministic JSON (or DOT) on standard output.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use contextus::contexts::{build_context_poset, filter_strings, ContextPoset, ObservableString};
use contextus::error::{Error, Result};
use contextus::heyting::DownSetAlgebra;
use contextus::mbqc::{bits_text, is_linear, MbqcSpec, MbqcSpecJson, OutcomeChoice, PlanStep};
use contextus::pauli::Pauli;
use contextus::poset::{FinitePoset, PosetDump};
use contextus::presheaf::{
    full_local_sections, global_sections, pseudostate_local_sections, GlobalSection,
};
use contextus::quantum::{StateDescriptor, StateVector};
use contextus::scenario;

#[derive(Parser)]
#[command(name = "contextus", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the context poset of a strings-and-state scenario file.
    Poset {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Enumerate the down-sets of a poset (or scenario) file.
    Downsets {
        #[command(flatten)]
        input: InputArg,
    },
    /// Down-set count, complemented elements and non-Booleanness.
    Nonbool {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        options: NonboolArgs,
    },
    /// Search for global sections; reports the contextuality verdict.
    Contextuality {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        options: ContextualityArgs,
    },
    /// Deterministic function table of a computation spec file.
    MbqcTable {
        #[command(flatten)]
        input: InputArg,
    },
    /// Step-by-step consumption trace of a computation spec file.
    MbqcTrace {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        options: TraceArgs,
    },
    /// Run a verb against a built-in scenario (ghz-or, peres-mermin,
    /// bell-parity).
    Scenario {
        name: String,
        #[command(subcommand)]
        verb: ScenarioVerb,
    },
}

#[derive(Subcommand)]
enum ScenarioVerb {
    Poset {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    Downsets,
    Nonbool {
        #[command(flatten)]
        options: NonboolArgs,
    },
    Contextuality {
        #[command(flatten)]
        options: ContextualityArgs,
    },
    MbqcTable,
    MbqcTrace {
        #[command(flatten)]
        options: TraceArgs,
    },
}

#[derive(Args)]
struct InputArg {
    /// Input JSON file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct NonboolArgs {
    /// Include the full meet/join/implication tables (posets with at most
    /// 6 elements).
    #[arg(long)]
    tables: bool,
}

#[derive(Args)]
struct ContextualityArgs {
    /// Search the pseudostate of the scenario state instead of the full
    /// character presheaf.
    #[arg(long)]
    state_dependent: bool,
    /// Include the full section dump (at most 1000 sections).
    #[arg(long)]
    sections: bool,
}

#[derive(Args)]
struct TraceArgs {
    /// Measurement plan, e.g. "1:X:+,2:X:+"; outcomes are +, - or ? for
    /// Born-rule sampling.
    #[arg(long, default_value = "")]
    plan: String,
    /// Seed for sampled outcomes.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// Scenario input file: a state plus per-qubit observable letters.
#[derive(Deserialize)]
struct StringsScenario {
    state: StateDescriptor,
    strings: Vec<Vec<String>>,
}

impl StringsScenario {
    fn realize(&self) -> Result<(StateVector, Vec<ObservableString>)> {
        let state = self.state.realize()?;
        let strings = self
            .strings
            .iter()
            .map(|letters| {
                let parsed = letters
                    .iter()
                    .map(|text| {
                        let mut chars = text.chars();
                        match (chars.next().and_then(Pauli::from_symbol), chars.next()) {
                            (Some(p), None) => Ok(p),
                            _ => Err(Error::Parse(format!("invalid letter {text:?}"))),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                ObservableString::new(parsed)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((state, strings))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Poset { input, format } => {
            let (state, strings) = read_scenario(&input)?;
            let cp = scenario_poset(&state, &strings)?;
            render_poset(cp.poset(), format)
        }
        Command::Downsets { input } => {
            let poset = read_any_poset(&input)?;
            downsets_json(&poset)
        }
        Command::Nonbool { input, options } => {
            let poset = read_any_poset(&input)?;
            nonbool_json(&poset, &options)
        }
        Command::Contextuality { input, options } => {
            let (state, strings) = read_scenario(&input)?;
            let cp = scenario_poset(&state, &strings)?;
            contextuality_json(&cp, Some(&state), &options)
        }
        Command::MbqcTable { input } => {
            let spec = read_mbqc_spec(&input)?;
            table_json(&spec)
        }
        Command::MbqcTrace { input, options } => {
            let spec = read_mbqc_spec(&input)?;
            trace_json(&spec, &options)
        }
        Command::Scenario { name, verb } => run_scenario(&name, verb),
    }
}

fn run_scenario(name: &str, verb: ScenarioVerb) -> Result<String> {
    match verb {
        ScenarioVerb::Poset { format } => {
            let cp = scenario::poset_by_name(name)?;
            render_poset(cp.poset(), format)
        }
        ScenarioVerb::Downsets => {
            let cp = scenario::poset_by_name(name)?;
            downsets_json(cp.poset())
        }
        ScenarioVerb::Nonbool { options } => {
            let cp = scenario::poset_by_name(name)?;
            nonbool_json(cp.poset(), &options)
        }
        ScenarioVerb::Contextuality { options } => {
            let cp = scenario::poset_by_name(name)?;
            let state = match name {
                "peres-mermin" => None,
                _ => Some(scenario::mbqc_spec_by_name(name)?.resource().clone()),
            };
            contextuality_json(&cp, state.as_ref(), &options)
        }
        ScenarioVerb::MbqcTable => {
            let spec = scenario::mbqc_spec_by_name(name)?;
            table_json(&spec)
        }
        ScenarioVerb::MbqcTrace { options } => {
            let spec = scenario::mbqc_spec_by_name(name)?;
            trace_json(&spec, &options)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_scenario(input: &InputArg) -> Result<(StateVector, Vec<ObservableString>)> {
    read_json::<StringsScenario>(&input.input)?.realize()
}

fn read_mbqc_spec(input: &InputArg) -> Result<MbqcSpec> {
    read_json::<MbqcSpecJson>(&input.input)?.realize()
}

/// Accepts either a poset dump {labels, cover_edges} or a strings-and-state
/// scenario, detected by shape.
fn read_any_poset(input: &InputArg) -> Result<FinitePoset> {
    let value: Value = read_json(&input.input)?;
    if value.get("labels").is_some() {
        let dump: PosetDump = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("{}: {e}", input.input.display())))?;
        dump.realize()
    } else {
        let scenario: StringsScenario = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("{}: {e}", input.input.display())))?;
        let (state, strings) = scenario.realize()?;
        Ok(scenario_poset(&state, &strings)?.poset().clone())
    }
}

fn scenario_poset(state: &StateVector, strings: &[ObservableString]) -> Result<ContextPoset> {
    let retained = filter_strings(strings, state)?;
    build_context_poset(&retained)
}

fn render_poset(poset: &FinitePoset, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string(&poset.to_dump()).expect("serializable")),
        Format::Dot => Ok(poset.to_dot().trim_end().to_string()),
    }
}

fn downsets_json(poset: &FinitePoset) -> Result<String> {
    let downsets = poset.enumerate_downsets()?;
    let mut out = json!({ "count": downsets.len() });
    if downsets.len() <= 1000 {
        let listed: Vec<Vec<String>> = downsets
            .iter()
            .map(|d| {
                d.indices()
                    .iter()
                    .map(|&i| poset.label(i).to_string())
                    .collect()
            })
            .collect();
        out["downsets"] = json!(listed);
    }
    Ok(out.to_string())
}

fn nonbool_json(poset: &FinitePoset, options: &NonboolArgs) -> Result<String> {
    let algebra = DownSetAlgebra::new(poset.clone())?;
    let report = algebra.report();
    let mut out = json!({
        "downset_count": report.downset_count,
        "complemented_count": report.complemented_count,
        "q": report.q,
    });
    if options.tables {
        out["tables"] = serde_json::to_value(algebra.truth_tables()?).expect("serializable");
    }
    Ok(out.to_string())
}

fn contextuality_json(
    cp: &ContextPoset,
    state: Option<&StateVector>,
    options: &ContextualityArgs,
) -> Result<String> {
    let local = if options.state_dependent {
        let state = state.ok_or_else(|| {
            Error::Parse("this scenario has no resource state for --state-dependent".into())
        })?;
        pseudostate_local_sections(cp, state)?
    } else {
        full_local_sections(cp)
    };
    let sections = global_sections(cp, &local)?;
    let mut out = json!({
        "contextual": sections.is_empty(),
        "sections_count": sections.len(),
        "witness": sections.first().map(section_json),
    });
    if options.sections && sections.len() <= 1000 {
        out["sections"] = Value::Array(sections.iter().map(section_json).collect());
    }
    Ok(out.to_string())
}

fn section_json(section: &GlobalSection) -> Value {
    json!(section.sign_maps())
}

fn table_json(spec: &MbqcSpec) -> Result<String> {
    let table = spec.function_table()?;
    let linear = is_linear(&table, spec.input_bits())?;
    let keyed: BTreeMap<String, u8> = table
        .iter()
        .map(|(bits, &out)| (bits_text(bits), out))
        .collect();
    Ok(json!({ "table": keyed, "linear": linear }).to_string())
}

fn parse_plan(spec: &MbqcSpec, text: &str) -> Result<Vec<PlanStep>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|entry| {
            let parts: Vec<&str> = entry.trim().split(':').collect();
            if parts.len() != 3 {
                return Err(Error::Plan(format!(
                    "expected qubit:letter:outcome, got {entry:?}"
                )));
            }
            let qubit: usize = parts[0]
                .parse::<usize>()
                .ok()
                .and_then(|q| q.checked_sub(1))
                .ok_or_else(|| Error::Plan(format!("invalid qubit {:?}", parts[0])))?;
            if qubit >= spec.qubit_count() {
                return Err(Error::Plan(format!("qubit {} out of range", qubit + 1)));
            }
            let letter = match parts[1].chars().next().and_then(Pauli::from_symbol) {
                Some(p) if parts[1].len() == 1 && p != Pauli::I => p,
                _ => return Err(Error::Plan(format!("invalid letter {:?}", parts[1]))),
            };
            let setting = [0u8, 1u8]
                .into_iter()
                .find(|&q| spec.observable(qubit, q).letter(qubit) == letter)
                .ok_or_else(|| {
                    Error::Plan(format!(
                        "qubit {} has no {} observable",
                        qubit + 1,
                        letter.symbol()
                    ))
                })?;
            let outcome = match parts[2] {
                "+" => OutcomeChoice::Forced(contextus::pauli::Sign::Plus),
                "-" => OutcomeChoice::Forced(contextus::pauli::Sign::Minus),
                "?" => OutcomeChoice::Sampled,
                other => return Err(Error::Plan(format!("invalid outcome {other:?}"))),
            };
            Ok(PlanStep {
                qubit,
                setting,
                outcome,
            })
        })
        .collect()
}

fn trace_json(spec: &MbqcSpec, options: &TraceArgs) -> Result<String> {
    let plan = parse_plan(spec, &options.plan)?;
    let report = spec.consumption_trace(&plan, options.seed)?;
    let steps: Vec<Value> = report
        .steps
        .iter()
        .map(|step| {
            let retained: BTreeMap<String, String> = step
                .retained
                .iter()
                .map(|(s, sign)| (s.to_string(), sign.to_string()))
                .collect();
            let residual: BTreeMap<String, u8> = step
                .residual_table
                .iter()
                .map(|(bits, &out)| (bits_text(bits), out))
                .collect();
            let fixed: BTreeMap<String, u8> = step
                .fixed_settings
                .iter()
                .map(|(&k, &q)| ((k + 1).to_string(), q))
                .collect();
            json!({
                "measured": step.measured.as_ref().map(|(op, _)| op.to_string()),
                "outcome": step.measured.as_ref().map(|(_, sign)| sign.to_string()),
                "state": StateDescriptor::from_state(&step.state),
                "retained": retained,
                "poset": step.context_poset.poset().to_dump(),
                "downset_count": step.downset_count,
                "q": step.non_booleanness.to_string(),
                "contextual": step.state_dependent_contextual,
                "residual_table": residual,
                "fixed_settings": fixed,
            })
        })
        .collect();
    let q_sequence: Vec<String> = report.q_sequence().iter().map(|q| q.to_string()).collect();
    Ok(json!({ "q_sequence": q_sequence, "steps": steps }).to_string())
}
