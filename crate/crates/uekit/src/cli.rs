//! Command-line front end. All commands write data to stdout and diagnostics
//! to stderr, and are deterministic for fixed inputs and seeds.
//!
//! Exit codes: 0 success, 1 parse/load error, 2 semantic error (unsupported
//! operator, kind mismatch, size cap), 3 property failure in `suite`.
//!
//! `UEKIT_INJECT_MUTANT=m_delta_no_complement` makes `suite` run against a
//! deliberately broken operator table; a fault-injection hook for checking
//! that the battery actually fails and exits 3.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::equivalence::{self, DefinableClosure, EquivError, Lang};
use crate::models::{Model, ModelError, StateSet};
use crate::setops::{extension, satisfies, EvalError};
use crate::suite::{run_suite_with_mutant, Mutant, SuiteConfig};
use crate::syntax::Formula;
use crate::ue::{build_ue, UeError, UeKind};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 1;
pub const EXIT_SEMANTIC: u8 = 2;
pub const EXIT_PROPERTY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "uekit",
    about = "Finite-model toolkit for Kripke and neighborhood semantics: \
             evaluate formulas, build ultrafilter extensions, check equivalences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate a formula on a model: its extension, or truth at one state
    Eval {
        /// Model file (JSON)
        model: PathBuf,
        /// Formula, e.g. "?p -> #p"
        formula: String,
        /// Query a single state instead of printing the extension
        #[arg(long)]
        at: Option<String>,
    },
    /// Build an ultrafilter extension and print it as JSON
    Ue {
        model: PathBuf,
        /// normal | classical_nbhd | contingency_ea | contingency_a | contingency_nbhd
        kind: String,
    },
    /// Decide logical equivalence of two pointed models
    Equiv {
        model1: PathBuf,
        state1: String,
        model2: PathBuf,
        state2: String,
        /// box | nabla
        #[arg(long)]
        lang: String,
        /// Compare the ultrafilter extensions at the image points instead
        #[arg(long, value_name = "KIND")]
        via_ue: Option<String>,
    },
    /// Decide Kripke bisimilarity of two pointed models
    Bisim {
        model1: PathBuf,
        state1: String,
        model2: PathBuf,
        state2: String,
    },
    /// Print the definable-set closure of a model with witness formulas
    Closure {
        model: PathBuf,
        /// box | nabla
        #[arg(long)]
        lang: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the seeded property-law battery
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max_states: usize,
        #[arg(long)]
        json: bool,
    },
    /// Render a model as a DOT digraph
    Dot { model: PathBuf },
    /// Report model-file violations
    Validate { model: PathBuf },
}

enum CliError {
    Parse(String),
    Semantic(String),
    Property(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Semantic(_) => EXIT_SEMANTIC,
            CliError::Property(_) => EXIT_PROPERTY,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Semantic(m) | CliError::Property(m) => m,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::KindMismatch { .. } => CliError::Semantic(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<crate::syntax::ParseError> for CliError {
    fn from(e: crate::syntax::ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Semantic(e.to_string())
    }
}

impl From<UeError> for CliError {
    fn from(e: UeError) -> Self {
        CliError::Semantic(e.to_string())
    }
}

impl From<EquivError> for CliError {
    fn from(e: EquivError) -> Self {
        CliError::Semantic(e.to_string())
    }
}

fn load_model(path: &Path) -> Result<Model, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(Model::from_json_str(&text)?)
}

fn parse_lang(s: &str) -> Result<Lang, CliError> {
    s.parse::<Lang>().map_err(CliError::Semantic)
}

fn parse_kind(s: &str) -> Result<UeKind, CliError> {
    s.parse::<UeKind>().map_err(CliError::Semantic)
}

fn sorted_names(m: &Model, x: StateSet) -> Vec<String> {
    let mut names: Vec<String> = x.iter().map(|i| m.states()[i].clone()).collect();
    names.sort();
    names
}

/// Executes the command, writing data to `out` and diagnostics to `err`;
/// returns the process exit code.
pub fn run(cli: Cli, out: &mut impl Write, err: &mut impl Write) -> u8 {
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            writeln!(err, "error: {}", e.message()).ok();
            e.code()
        }
    }
}

fn dispatch(command: Command, out: &mut impl Write) -> Result<u8, CliError> {
    match command {
        Command::Eval { model, formula, at } => {
            let m = load_model(&model)?;
            let f = Formula::parse(&formula)?;
            match at {
                Some(w) => {
                    let holds = satisfies(&m, &w, &f)?;
                    writeln!(out, "{holds}").ok();
                }
                None => {
                    let ext = extension(&m, &f)?;
                    writeln!(out, "{}", sorted_names(&m, ext).join(" ")).ok();
                }
            }
            Ok(EXIT_OK)
        }
        Command::Ue { model, kind } => {
            let m = load_model(&model)?;
            let kind = parse_kind(&kind)?;
            let ue = build_ue(&m, kind)?;
            writeln!(out, "{}", ue.to_json_string()).ok();
            Ok(EXIT_OK)
        }
        Command::Equiv { model1, state1, model2, state2, lang, via_ue } => {
            let lang = parse_lang(&lang)?;
            let m1 = load_model(&model1)?;
            let m2 = load_model(&model2)?;
            let witness = match via_ue {
                None => equivalence::distinguishing_formula(&m1, &state1, &m2, &state2, lang)?,
                Some(kind) => {
                    let kind = parse_kind(&kind)?;
                    let ue1 = build_ue(&m1, kind)?;
                    let ue2 = build_ue(&m2, kind)?;
                    equivalence::distinguishing_formula(
                        &ue1.model,
                        &format!("pi_{state1}"),
                        &ue2.model,
                        &format!("pi_{state2}"),
                        lang,
                    )?
                }
            };
            match witness {
                None => writeln!(out, "equivalent").ok(),
                Some(f) => writeln!(out, "distinguished by {f}").ok(),
            };
            Ok(EXIT_OK)
        }
        Command::Bisim { model1, state1, model2, state2 } => {
            let m1 = load_model(&model1)?;
            let m2 = load_model(&model2)?;
            let bisim = equivalence::kripke_bisimilar(&m1, &state1, &m2, &state2)?;
            writeln!(out, "{}", if bisim { "bisimilar" } else { "not bisimilar" }).ok();
            Ok(EXIT_OK)
        }
        Command::Closure { model, lang, json } => {
            let m = load_model(&model)?;
            let lang = parse_lang(&lang)?;
            let closure = DefinableClosure::compute(&m, lang)?;
            if json {
                let sets: Vec<serde_json::Value> = closure
                    .members()
                    .into_iter()
                    .map(|(set, witness)| {
                        serde_json::json!({
                            "states": sorted_names(&m, set),
                            "witness": witness.to_string(),
                        })
                    })
                    .collect();
                let report = serde_json::json!({ "sets": sets });
                writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()).ok();
            } else {
                for (set, witness) in closure.members() {
                    writeln!(out, "[{}] {witness}", sorted_names(&m, set).join(" ")).ok();
                }
            }
            Ok(EXIT_OK)
        }
        Command::Suite { seed, count, max_states, json } => {
            let mutant = match std::env::var("UEKIT_INJECT_MUTANT").as_deref() {
                Ok("m_delta_no_complement") => Some(Mutant::MDeltaNoComplement),
                _ => None,
            };
            let cfg = SuiteConfig { seed, count, max_states };
            let report = run_suite_with_mutant(&cfg, mutant);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()).ok();
            } else {
                for law in &report.laws {
                    writeln!(
                        out,
                        "{:<34} cases={:<6} failures={}",
                        law.law, law.cases, law.failures
                    )
                    .ok();
                }
                writeln!(
                    out,
                    "ea_vs_a_relation_differences={}",
                    report.ea_vs_a_relation_differences
                )
                .ok();
                writeln!(out, "{}", if report.passed { "all laws hold" } else { "FAILED" }).ok();
            }
            if report.passed {
                Ok(EXIT_OK)
            } else {
                let failing = report.first_failure().expect("failed suite has a failing law");
                Err(CliError::Property(format!(
                    "law '{}' failed; first counterexample: {}",
                    failing.law,
                    failing.first_counterexample.as_deref().unwrap_or("-")
                )))
            }
        }
        Command::Dot { model } => {
            let m = load_model(&model)?;
            write_dot(&m, out);
            Ok(EXIT_OK)
        }
        Command::Validate { model } => {
            let text = std::fs::read_to_string(&model)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", model.display())))?;
            let violations = Model::validate_json_str(&text)?;
            if violations.is_empty() {
                writeln!(out, "ok").ok();
                Ok(EXIT_OK)
            } else {
                for v in &violations {
                    writeln!(out, "{v}").ok();
                }
                Ok(EXIT_SEMANTIC)
            }
        }
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn state_label(m: &Model, i: usize) -> String {
    let atoms: Vec<&str> = m
        .valuation()
        .iter()
        .filter(|(_, ext)| ext.contains(i))
        .map(|(a, _)| a.as_str())
        .collect();
    format!("{} {{{}}}", m.states()[i], atoms.join(","))
}

fn write_dot(m: &Model, out: &mut impl Write) {
    writeln!(out, "digraph model {{").ok();
    writeln!(out, "  rankdir=LR;").ok();
    for i in 0..m.num_states() {
        writeln!(
            out,
            "  \"{}\" [label=\"{}\"];",
            dot_escape(&m.states()[i]),
            dot_escape(&state_label(m, i))
        )
        .ok();
    }
    match m {
        Model::Kripke(k) => {
            for (a, b) in k.rel_pairs() {
                writeln!(
                    out,
                    "  \"{}\" -> \"{}\";",
                    dot_escape(k.state_name(a)),
                    dot_escape(k.state_name(b))
                )
                .ok();
            }
        }
        Model::Neighborhood(nm) => {
            // bipartite: box nodes for the distinct neighborhood sets
            let mut set_nodes: BTreeMap<u64, String> = BTreeMap::new();
            for s in 0..nm.num_states() {
                for x in nm.neighborhoods(s) {
                    set_nodes.entry(x.bits()).or_insert_with(|| {
                        let mut names: Vec<&str> =
                            x.iter().map(|i| nm.state_name(i)).collect();
                        names.sort();
                        format!("{{{}}}", names.join(","))
                    });
                }
            }
            for (bits, label) in &set_nodes {
                writeln!(
                    out,
                    "  \"set_{bits}\" [shape=box, label=\"{}\"];",
                    dot_escape(label)
                )
                .ok();
            }
            for s in 0..nm.num_states() {
                for x in nm.neighborhoods(s) {
                    writeln!(
                        out,
                        "  \"{}\" -> \"set_{}\";",
                        dot_escape(nm.state_name(s)),
                        x.bits()
                    )
                    .ok();
                }
            }
        }
    }
    writeln!(out, "}}").ok();
}
