//! Command-line front end.

use std::io::Write;
use std::path::Path;
use std::sync::OnceLock;

use clap::{Parser, Subcommand, ValueEnum};
use regex::Regex;
use serde_json::{json, Value};

use crate::catalog::{catalog_get, catalog_keys, catalog_list};
use crate::coincidence::{commensurate, oc_membership, Isometry};
use crate::decompose::{decompose, verify_decomposition};
use crate::descriptor::{
    criterion_to_json, decomposition_to_json, isometry_from_json, module_from_json, module_to_json, parse_json,
    verdict_to_json,
};
use crate::error::{Error, Result};
use crate::smodule::SModule;
use crate::sring::SRing;
use crate::zlattice::coincidence_indices;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Human,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "csl", version, about = "Coincidence isometries and reflections of S-modules")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, env = "CSL_OUTPUT", default_value = "human", global = true)]
    pub output: OutputMode,

    /// Shorthand for `--output json`.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the ring, module-over-K and Gram criterion invariants.
    Validate {
        #[arg(long)]
        module: String,
    },
    /// Decide whether two modules are commensurate.
    Commensurate {
        #[arg(long)]
        module: String,
        #[arg(long)]
        other: String,
    },
    /// Decide whether an isometry is a coincidence isometry.
    OcCheck {
        #[arg(long)]
        module: String,
        #[arg(long)]
        isometry: String,
    },
    /// Evaluate the Gram ratio criterion.
    GramCheck {
        #[arg(long)]
        module: String,
    },
    /// Factor a coincidence isometry into coincidence reflections.
    Decompose {
        #[arg(long)]
        module: String,
        #[arg(long)]
        isometry: String,
    },
    /// Coincidence indices [Γ : Γ ∩ fΓ] and [fΓ : Γ ∩ fΓ].
    Index {
        #[arg(long)]
        module: String,
        #[arg(long)]
        isometry: String,
    },
    /// Inspect the built-in module catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    /// Print an entry as a module descriptor.
    Get { key: String },
}

/// A finished command: exit status, JSON report and human-readable lines.
struct Report {
    affirmative: bool,
    json: Value,
    human: Vec<String>,
}

fn read_input(input: &str) -> Result<(Value, String)> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok((parse_json(&quote_rationals(input), "<inline>")?, "<inline>".into()));
    }
    let text = std::fs::read_to_string(Path::new(input)).map_err(|e| Error::parse(input, format!("cannot read input: {e}")))?;
    Ok((parse_json(&text, input)?, input.to_string()))
}

/// Wraps bare `p/q` tokens in quotes so shell-friendly matrices parse as JSON.
fn quote_rationals(text: &str) -> String {
    static TOKEN: OnceLock<Regex> = OnceLock::new();
    if text.contains('"') {
        return text.to_string();
    }
    let re = TOKEN.get_or_init(|| Regex::new(r"-?\d+(?:/\d+)?").expect("valid regex"));
    re.replace_all(text, "\"$0\"").into_owned()
}

pub fn load_module(input: &str) -> Result<SModule> {
    if let Some(key) = input.strip_prefix("name:") {
        return Ok(catalog_get(key)?.module);
    }
    if catalog_keys().contains(&input) {
        return Ok(catalog_get(input)?.module);
    }
    let (v, _) = read_input(input)?;
    module_from_json(&v)
}

pub fn load_isometry(input: &str, m: &SModule) -> Result<Isometry> {
    if input.trim() == "identity" {
        return Ok(Isometry::identity(m.field(), m.dim()));
    }
    let (v, _) = read_input(input)?;
    let f = isometry_from_json(&v, m.field())?;
    if f.dim() != m.dim() {
        return Err(Error::DimensionMismatch(format!("isometry of size {} for a module of rank {}", f.dim(), m.dim())));
    }
    Ok(f)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Validate { module } => {
            let m = load_module(module)?;
            let over_k = m.is_module_over_k();
            let crit = m.gram_ratio_criterion();
            let ring_ok = SRing::validate(m.ring().zbasis().to_vec(), m.field_k().clone()).is_ok();
            let human = vec![
                format!("dimension          {}", m.dim()),
                format!("field L            {}", m.field()),
                format!("[K:Q]              {}", m.field_k().degree()),
                format!("rank of S over Z   {}", m.ring().rank()),
                format!("ring S valid       {}", yes_no(ring_ok)),
                format!("module over K      {}", yes_no(over_k)),
                format!("Gram criterion     {}", yes_no(crit.holds)),
            ];
            let json = json!({
                "dim": m.dim(),
                "ring_valid": ring_ok,
                "module_over_k": over_k,
                "gram_criterion": criterion_to_json(&crit),
            });
            Ok(Report { affirmative: ring_ok && over_k && crit.holds, json, human })
        }
        Command::Commensurate { module, other } => {
            let a = load_module(module)?;
            let b = load_module(other)?;
            let v = commensurate(&a, &b)?;
            let mut human = vec![format!("commensurate       {}", yes_no(v.commensurate))];
            if let (Some((i, j)), Some(x)) = (v.failing_entry, v.failing_value()) {
                human.push(format!("transition entry ({i},{j}) = {x} is not in K"));
            }
            Ok(Report { affirmative: v.commensurate, json: verdict_to_json(&v), human })
        }
        Command::OcCheck { module, isometry } => {
            let m = load_module(module)?;
            let f = load_isometry(isometry, &m)?;
            let v = oc_membership(&m, &f)?;
            let mut human = vec![format!("coincidence isometry {}", yes_no(v.commensurate))];
            if let (Some((i, j)), Some(x)) = (v.failing_entry, v.failing_value()) {
                human.push(format!("entry ({i},{j}) of B⁻¹fB = {x} is not in K"));
            }
            Ok(Report { affirmative: v.commensurate, json: verdict_to_json(&v), human })
        }
        Command::GramCheck { module } => {
            let m = load_module(module)?;
            let c = m.gram_ratio_criterion();
            let mut human = vec![format!("Gram criterion     {}", if c.holds { "holds" } else { "fails" })];
            if let Some(w) = &c.witness {
                human.push(format!("witness (i,j,k) = ({},{},{}), ratio {} is not in K", w.i, w.j, w.k, w.ratio));
            }
            Ok(Report { affirmative: c.holds, json: criterion_to_json(&c), human })
        }
        Command::Decompose { module, isometry } => {
            let m = load_module(module)?;
            let f = load_isometry(isometry, &m)?;
            let d = decompose(&m, &f)?;
            let verified = verify_decomposition(&m, &f, &d);
            if !verified {
                return Err(Error::InvalidModule("decomposition failed verification".into()));
            }
            let mut human = vec![format!("{} reflection(s), verified", d.len())];
            for (i, v) in d.vectors.iter().enumerate() {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                human.push(format!("  v{} = ({})", i + 1, parts.join(", ")));
            }
            Ok(Report { affirmative: true, json: decomposition_to_json(&d, verified), human })
        }
        Command::Index { module, isometry } => {
            let m = load_module(module)?;
            let f = load_isometry(isometry, &m)?;
            let ix = coincidence_indices(&m, &f)?;
            let human = vec![
                format!("[Γ : Γ ∩ fΓ]       {}", ix.in_module),
                format!("[fΓ : Γ ∩ fΓ]      {}", ix.in_image),
            ];
            let json = json!({"index": ix.in_module.to_string(), "index_in_image": ix.in_image.to_string()});
            Ok(Report { affirmative: true, json, human })
        }
        Command::Catalog { action: CatalogAction::List } => {
            let list = catalog_list();
            let human = list.iter().map(|e| format!("{:<22} n = {}  {}", e.key, e.dim, e.field_summary)).collect();
            let json = Value::Array(
                list.iter().map(|e| json!({"key": e.key, "n": e.dim, "field": e.field_summary})).collect(),
            );
            Ok(Report { affirmative: true, json, human })
        }
        Command::Catalog { action: CatalogAction::Get { key } } => {
            let key = key.strip_prefix("name:").unwrap_or(key);
            let e = catalog_get(key)?;
            let descriptor = module_to_json(&e.module);
            let human = vec![
                serde_json::to_string_pretty(&descriptor).expect("serialisable"),
                format!("# {}", e.provenance_note),
            ];
            Ok(Report { affirmative: true, json: descriptor, human })
        }
    }
}

fn is_negative_verdict(e: &Error) -> bool {
    matches!(e, Error::NotInOC(_) | Error::PreconditionGramCriterion(_))
}

/// Runs one request; returns the process exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mode = if cli.json { OutputMode::Json } else { cli.output };
    match execute(&cli.command) {
        Ok(report) => {
            match mode {
                OutputMode::Json => {
                    let _ = writeln!(out, "{}", serde_json::to_string(&report.json).expect("serialisable"));
                }
                OutputMode::Human => {
                    for line in report.human {
                        let _ = writeln!(out, "{line}");
                    }
                }
            }
            if report.affirmative {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let detail = match &e {
                Error::Parse { path, message } => json!({"error": e.name(), "path": path, "message": message}),
                _ => json!({"error": e.name(), "message": e.to_string()}),
            };
            match mode {
                OutputMode::Json => {
                    let _ = writeln!(out, "{}", serde_json::to_string(&detail).expect("serialisable"));
                }
                OutputMode::Human => {
                    let _ = writeln!(err, "{}: {e}", e.name());
                }
            }
            if is_negative_verdict(&e) {
                1
            } else {
                2
            }
        }
    }
}
