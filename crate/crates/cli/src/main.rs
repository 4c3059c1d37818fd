//! Command-line front end for the doxa library.
//!
//! Five subcommands cover the batch workflows: `validate` lints a model
//! file, `check` evaluates formulas in a model, `laws` runs the full
//! belief/knowledge law suite, `synthesize` reconstructs a visibility/bias
//! pair from a bare relation, and `traces` enumerates action-trace spaces
//! and verifies their correspondences.
//!
//! Exit codes are a stable contract: 0 on success, 1 on a semantic
//! failure (falsified formula, failed law, non-reconstructible relation,
//! correspondence mismatch), 2 on an input error (unreadable file, parse
//! error, ill-formed model).

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use doxa::checker::{law_suite, Evaluator, LawStatus, LawSuiteConfig};
use doxa::formulas::{parse, parse_lines};
use doxa::relalg::{Relation, StateSpace};
use doxa::signature::Model;
use doxa::synthesis::{from_equivalence, from_kd45};
use doxa::traces::{
    verify_indist_correspondence, verify_pdl_correspondence, SideBySide, TraceSpace,
};

#[derive(Parser)]
#[command(
    name = "doxa",
    version,
    about = "Belief and knowledge from visibility and bias functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a model file and report its shape.
    Validate(ValidateArgs),
    /// Evaluate formulas in a model.
    Check(CheckArgs),
    /// Run the belief and knowledge law suite against a model.
    Laws(LawsArgs),
    /// Reconstruct a visibility/bias pair from a relation file.
    Synthesize(SynthesizeArgs),
    /// Enumerate an action-trace space and verify its correspondences.
    Traces(TracesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct ValidateArgs {
    /// Model file (JSON).
    #[arg(short, long)]
    model: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// Model file (JSON).
    #[arg(short, long)]
    model: PathBuf,
    /// A formula to check; repeatable.
    #[arg(short = 'f', long = "formula", value_name = "FORMULA")]
    formulas: Vec<String>,
    /// A file of formulas, one per line; `#` comments and blank lines are
    /// skipped.
    #[arg(long, value_name = "FILE")]
    formulas_file: Option<PathBuf>,
    /// Judge satisfiability (non-empty extension) instead of validity.
    #[arg(long)]
    satisfiable: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct LawsArgs {
    /// Model file (JSON).
    #[arg(short, long)]
    model: PathBuf,
    /// Maximum height of instantiating formulas.
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Seed for deterministic sampling of oversized instantiation pools.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replace a labeled relation before running: `B:label=FILE` or
    /// `K:label=FILE`, where FILE holds a relation document.
    #[arg(long = "override-relation", value_name = "KIND:LABEL=FILE")]
    override_relation: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SynthesizeArgs {
    /// Relation file (JSON: {"states": [...], "pairs": [["a","b"], ...]}).
    #[arg(short, long)]
    relation: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TracesArgs {
    /// Comma-separated agent labels.
    #[arg(long, value_delimiter = ',', required = true)]
    agents: Vec<String>,
    /// Maximum trace length.
    #[arg(long)]
    depth: usize,
    /// Correspondence to verify for every agent.
    #[arg(long, value_enum)]
    verify: Option<VerifyKind>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    /// Projection kernels against constructed epistemic relations.
    Indist,
    /// Step-graph closure against the symmetric star term.
    Pdl,
}

/// Anything wrong with the inputs, reported on stderr with exit code 2.
struct InputError(String);

impl<T: std::fmt::Display> From<T> for InputError {
    fn from(e: T) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Check(args) => cmd_check(args),
        Command::Laws(args) => cmd_laws(args),
        Command::Synthesize(args) => cmd_synthesize(args),
        Command::Traces(args) => cmd_traces(args),
    };
    match outcome {
        Ok(code) => code,
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<Model, InputError> {
    let text = read(path)?;
    Model::from_json_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn emit_json(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serialization cannot fail")
    );
}

/// On-disk form of a bare relation.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationDocument {
    states: Vec<String>,
    pairs: Vec<(String, String)>,
}

impl RelationDocument {
    fn relation_on(&self, space: &Arc<StateSpace>) -> Result<Relation, InputError> {
        let mut relation = Relation::empty(space);
        for (a, b) in &self.pairs {
            let i = space
                .position(a)
                .ok_or_else(|| InputError(format!("relation pair names unknown state {a:?}")))?;
            let j = space
                .position(b)
                .ok_or_else(|| InputError(format!("relation pair names unknown state {b:?}")))?;
            relation.insert(i, j);
        }
        Ok(relation)
    }

    /// Builds the relation over its own state list.
    fn into_relation(self) -> Result<(Arc<StateSpace>, Relation), InputError> {
        let space = StateSpace::new(self.states.clone())?;
        let relation = self.relation_on(&space)?;
        Ok((space, relation))
    }
}

fn cmd_validate(args: ValidateArgs) -> Result<ExitCode, InputError> {
    let model = load_model(&args.model)?;
    let sim = model.similarity_type();
    let space = model.space();

    match args.format {
        Format::Json => {
            let belief: BTreeMap<&String, _> = sim
                .belief_labels
                .keys()
                .map(|label| {
                    let rel = model.belief(label).expect("declared label resolves");
                    (
                        label,
                        json!({
                            "functions": [rel.fname, rel.gname],
                            "properties": rel.relation.classify().to_string(),
                            "unbiased": rel.pair.as_ref().map(|p| p.is_unbiased()),
                        }),
                    )
                })
                .collect();
            let knowledge: BTreeMap<&String, _> = sim
                .knowledge_labels
                .keys()
                .map(|label| {
                    let rel = model.knowledge(label).expect("declared label resolves");
                    (
                        label,
                        json!({
                            "functions": [rel.fname, rel.gname],
                            "properties": rel.relation.classify().to_string(),
                        }),
                    )
                })
                .collect();
            emit_json(&json!({
                "states": space.names().collect::<Vec<_>>(),
                "types": sim.types,
                "functions": model.instantiation().function_names().collect::<BTreeSet<_>>(),
                "belief": belief,
                "knowledge": knowledge,
                "atoms": model.valuation().keys().collect::<Vec<_>>(),
            }));
        }
        Format::Text => {
            println!(
                "model OK: {} states, {} types, {} functions",
                space.len(),
                sim.types.len(),
                model.instantiation().function_names().count(),
            );
            for (label, rel) in model.belief_relations() {
                let bias = match &rel.pair {
                    Some(p) if p.is_unbiased() => ", unbiased",
                    Some(_) => ", biased",
                    None => ", overridden",
                };
                println!(
                    "  belief[{label}] = ({}, {}): {}{bias}",
                    rel.fname,
                    rel.gname,
                    rel.relation.classify()
                );
            }
            for (label, rel) in model.knowledge_relations() {
                println!(
                    "  knowledge[{label}] = ({}, {}): {}",
                    rel.fname,
                    rel.gname,
                    rel.relation.classify()
                );
            }
            println!(
                "  atoms: {}",
                model.valuation().keys().cloned().collect::<Vec<_>>().join(", ")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CheckRow {
    formula: String,
    extension: Vec<String>,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<String>,
    satisfiable: bool,
    /// The verdict under the active criterion.
    ok: bool,
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode, InputError> {
    let model = load_model(&args.model)?;
    let mut batch = Vec::new();
    for text in &args.formulas {
        batch.push(parse(text).map_err(|e| InputError(format!("formula {text:?}: {e}")))?);
    }
    if let Some(path) = &args.formulas_file {
        let text = read(path)?;
        batch.extend(
            parse_lines(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?,
        );
    }
    if batch.is_empty() {
        return Err(InputError(
            "no formulas given; use -f or --formulas-file".into(),
        ));
    }

    let space = model.space().clone();
    let mut evaluator = Evaluator::new(&model);
    let mut rows = Vec::new();
    for formula in &batch {
        let extension = evaluator.extension_of(formula)?;
        let validity = evaluator.validity_of(formula)?;
        let satisfiable = extension.min().is_some();
        rows.push(CheckRow {
            formula: formula.to_string(),
            extension: extension.names().iter().map(|s| s.to_string()).collect(),
            valid: validity.valid,
            counterexample: validity.counterexample,
            satisfiable,
            ok: if args.satisfiable { satisfiable } else { validity.valid },
        });
    }

    let holding = rows.iter().filter(|r| r.ok).count();
    match args.format {
        Format::Json => emit_json(&rows),
        Format::Text => {
            for row in &rows {
                println!("{}", row.formula);
                println!(
                    "  extension: {{{}}} ({} of {})",
                    row.extension.join(", "),
                    row.extension.len(),
                    space.len()
                );
                let verdict = if args.satisfiable {
                    match row.extension.first() {
                        Some(witness) => format!("satisfiable (witness {witness})"),
                        None => "unsatisfiable".to_string(),
                    }
                } else {
                    match &row.counterexample {
                        None => "valid".to_string(),
                        Some(state) => format!("falsified at {state}"),
                    }
                };
                println!("  {verdict}");
            }
            println!("{holding}/{} formulas hold", rows.len());
        }
    }
    Ok(if holding == rows.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn apply_override(model: &mut Model, spec: &str) -> Result<(), InputError> {
    let malformed = || InputError(format!("override {spec:?}: expected KIND:LABEL=FILE"));
    let (kind, rest) = spec.split_once(':').ok_or_else(malformed)?;
    let (label, path) = rest.split_once('=').ok_or_else(malformed)?;
    let text = read(Path::new(path))?;
    let doc: RelationDocument =
        serde_json::from_str(&text).map_err(|e| InputError(format!("{path}: {e}")))?;

    let declared: BTreeSet<&str> = doc.states.iter().map(String::as_str).collect();
    let expected: BTreeSet<&str> = model.space().names().collect();
    if declared != expected {
        return Err(InputError(format!(
            "{path}: relation states do not match the model's states"
        )));
    }
    let relation = doc.relation_on(model.space())?;
    match kind {
        "B" => model.override_belief_relation(label, relation)?,
        "K" => model.override_knowledge_relation(label, relation)?,
        other => {
            return Err(InputError(format!(
                "override kind {other:?} must be B or K"
            )))
        }
    }
    Ok(())
}

fn cmd_laws(args: LawsArgs) -> Result<ExitCode, InputError> {
    let mut model = load_model(&args.model)?;
    for spec in &args.override_relation {
        apply_override(&mut model, spec)?;
    }
    let cfg = LawSuiteConfig {
        depth: args.depth,
        seed: args.seed,
        ..LawSuiteConfig::default()
    };
    let reports = law_suite(&model, &cfg);

    match args.format {
        Format::Json => emit_json(&reports),
        Format::Text => {
            for report in &reports {
                println!("{report}");
            }
            let failures = reports.iter().filter(|r| r.failed()).count();
            println!("{} laws checked, {} asserted failures", reports.len(), failures);
        }
    }

    if let Some(first) = reports.iter().find(|r| r.failed()) {
        if let LawStatus::Falsified { counterexample } = &first.status {
            let label = first
                .label
                .as_deref()
                .map(|l| format!("[{l}]"))
                .unwrap_or_default();
            eprintln!(
                "law suite failed: {}{label} at {}",
                first.law, counterexample.state
            );
        }
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

/// Names the first KD45 condition the relation breaks, with a witness.
fn kd45_diagnostic(space: &StateSpace, relation: &Relation) -> Option<String> {
    if let Some(s) = relation.seriality_witness() {
        return Some(format!("seriality fails at {}", space.name(s)));
    }
    if let Some((a, b, c)) = relation.transitivity_witness() {
        return Some(format!(
            "transitivity fails at ({}, {}, {})",
            space.name(a),
            space.name(b),
            space.name(c)
        ));
    }
    if let Some((a, b, c)) = relation.euclidean_witness() {
        return Some(format!(
            "euclideanness fails at ({}, {}, {})",
            space.name(a),
            space.name(b),
            space.name(c)
        ));
    }
    None
}

fn cmd_synthesize(args: SynthesizeArgs) -> Result<ExitCode, InputError> {
    let text = read(&args.relation)?;
    let doc: RelationDocument = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("{}: {e}", args.relation.display())))?;
    let (space, relation) = doc.into_relation()?;

    if let Some(diagnostic) = kd45_diagnostic(&space, &relation) {
        eprintln!("relation is neither KD45 nor an equivalence: {diagnostic}");
        return Ok(ExitCode::from(1));
    }

    // Any equivalence is also KD45; prefer the equivalence construction
    // because it round-trips the relation as knowledge, not just belief.
    let classify = relation.classify();
    let (construction, pair) = if classify.equivalence {
        ("equivalence", from_equivalence(&relation)?)
    } else {
        ("kd45", from_kd45(&relation)?)
    };
    let reconstructed = match construction {
        "equivalence" => pair.epistemic(),
        _ => pair.doxastic(),
    };
    let roundtrip = if reconstructed == relation { "PASS" } else { "FAIL" };

    let f = pair.visibility();
    let g = pair.bias();
    let image = pair.visible_image();
    let f_map: BTreeMap<&str, &str> = (0..space.len())
        .map(|s| {
            let v = f.apply(s).expect("visibility is total");
            (space.name(s), space.name(v))
        })
        .collect();
    let g_map: BTreeMap<&str, &str> = image
        .iter()
        .map(|s| {
            let v = g.apply(s).expect("bias is total on the visible image");
            (space.name(s), space.name(v))
        })
        .collect();
    let fragment = json!({
        "states": space.names().collect::<Vec<_>>(),
        "types": { "Im_f": image.names() },
        "functions": {
            "f": { "domain": "S", "codomain": "Im_f", "map": f_map },
            "g": { "domain": "Im_f", "codomain": "Im_f", "map": g_map },
        },
    });

    match args.format {
        Format::Json => emit_json(&json!({
            "construction": construction,
            "fragment": fragment,
            "roundtrip": roundtrip,
        })),
        Format::Text => {
            println!(
                "{}",
                serde_json::to_string_pretty(&fragment).expect("fragment serializes")
            );
            println!("construction: {construction}");
            println!("roundtrip: {roundtrip}");
        }
    }
    Ok(if roundtrip == "PASS" {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn side_json(side: &SideBySide) -> serde_json::Value {
    json!({
        "matched": side.matched,
        "missing": side.missing,
        "extra": side.extra,
    })
}

fn cmd_traces(args: TracesArgs) -> Result<ExitCode, InputError> {
    let ts = TraceSpace::new(args.agents.iter().cloned(), args.depth)?;

    let mut all_matched = true;
    let verification = match args.verify {
        None => None,
        Some(VerifyKind::Indist) => {
            let results: Vec<_> = ts
                .agents()
                .to_vec()
                .iter()
                .map(|agent| {
                    let report = verify_indist_correspondence(&ts, agent)?;
                    all_matched &= report.comparison.matched;
                    Ok(json!({
                        "agent": report.agent,
                        "comparison": side_json(&report.comparison),
                    }))
                })
                .collect::<Result<_, InputError>>()?;
            Some(json!({ "kind": "indist", "results": results }))
        }
        Some(VerifyKind::Pdl) => {
            let results: Vec<_> = ts
                .agents()
                .to_vec()
                .iter()
                .map(|agent| {
                    let report = verify_pdl_correspondence(&ts, agent)?;
                    all_matched &= report.interior.matched && report.boundary.matched;
                    Ok(json!({
                        "agent": report.agent,
                        "interior": side_json(&report.interior),
                        "boundary": side_json(&report.boundary),
                    }))
                })
                .collect::<Result<_, InputError>>()?;
            Some(json!({ "kind": "pdl", "results": results }))
        }
    };

    match args.format {
        Format::Json => {
            let mut value = json!({
                "agents": ts.agents(),
                "depth": ts.depth(),
                "count": ts.len(),
                "traces": ts.space().names().collect::<Vec<_>>(),
            });
            if let Some(v) = &verification {
                value["verify"] = v.clone();
            }
            emit_json(&value);
        }
        Format::Text => {
            println!(
                "{} traces over {} agents at depth {}",
                ts.len(),
                ts.agents().len(),
                ts.depth()
            );
            for name in ts.space().names() {
                println!("  {name}");
            }
            if let Some(v) = &verification {
                let kind = v["kind"].as_str().expect("kind is set");
                println!("{kind} correspondence:");
                for row in v["results"].as_array().expect("results is an array") {
                    let agent = row["agent"].as_str().expect("agent is set");
                    let ok = match kind {
                        "indist" => row["comparison"]["matched"] == json!(true),
                        _ => {
                            row["interior"]["matched"] == json!(true)
                                && row["boundary"]["matched"] == json!(true)
                        }
                    };
                    println!("  agent {agent}: {}", if ok { "match" } else { "MISMATCH" });
                }
            }
        }
    }
    Ok(if all_matched {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
