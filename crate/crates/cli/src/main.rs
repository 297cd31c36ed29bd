mod commands;
mod instance;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qtk", version, about = "Exact cohomology of quasitoric manifolds and bundles")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for random sampling; QTK_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random samples (coverage probes or BKK cases).
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    Integral,
    Direct,
}

#[derive(Subcommand)]
enum Command {
    /// Validate one or more instances.
    Validate {
        #[arg(required = true)]
        instances: Vec<String>,
    },
    /// Graded dimensions of the cohomology ring.
    Betti { instance: String },
    /// Volume of the multi-polytope with support numbers --h.
    Volume {
        instance: String,
        #[arg(long)]
        h: Option<String>,
    },
    /// Top intersection number of `;`-separated classes times --gamma.
    Intersect {
        instance: String,
        #[arg(long)]
        classes: String,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Compare the integral and intersection sides of the BKK identity.
    Bkk {
        instance: String,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        h: Option<String>,
    },
    /// Horizontal part b_2i of a power of the multi-polytope class.
    Horizontal {
        instance: String,
        #[arg(long)]
        h: Option<String>,
        #[arg(long, default_value_t = 0)]
        i: u32,
    },
    /// Potential polynomial of the bundle.
    Potential {
        instance: String,
        #[arg(long, value_enum, default_value_t = Mode::Integral)]
        mode: Mode,
    },
    /// Hilbert function of Sym(V)/Ann(P).
    AnnHilbert { instance: String },
    /// Generators of Ann(P) by weighted degree.
    AnnGenerators {
        instance: String,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Graded dimensions of the piecewise-polynomial presentations.
    Brion {
        instance: String,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Cross-check every presentation against the others.
    CheckAll { instance: String },
    /// List built-in instances.
    Catalog,
}

pub struct Outcome {
    pub digest: String,
    pub result: Value,
    pub passed: bool,
}

pub struct Settings {
    pub seed: u64,
    pub samples: Option<usize>,
}

fn seed(flag: u64) -> anyhow::Result<u64> {
    match std::env::var("QTK_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| anyhow::anyhow!("QTK_SEED must be an unsigned integer, got {s:?}")),
        Err(_) => Ok(flag),
    }
}

fn run(cli: &Cli) -> anyhow::Result<(&'static str, Outcome)> {
    let settings = Settings { seed: seed(cli.seed)?, samples: cli.samples };
    let s = &settings;
    Ok(match &cli.command {
        Command::Validate { instances } => ("validate", commands::validate(instances, s)?),
        Command::Betti { instance } => ("betti", commands::betti(instance, s)?),
        Command::Volume { instance, h } => ("volume", commands::volume(instance, h.as_deref(), s)?),
        Command::Intersect { instance, classes, gamma } => {
            ("intersect", commands::intersect(instance, classes, gamma.as_deref(), s)?)
        }
        Command::Bkk { instance, gamma, i, h } => {
            ("bkk", commands::bkk(instance, gamma.as_deref(), *i, h.as_deref(), s)?)
        }
        Command::Horizontal { instance, h, i } => ("horizontal", commands::horizontal(instance, h.as_deref(), *i, s)?),
        Command::Potential { instance, mode } => ("potential", commands::potential(instance, *mode, s)?),
        Command::AnnHilbert { instance } => ("ann-hilbert", commands::ann_hilbert(instance, s)?),
        Command::AnnGenerators { instance, max_degree } => {
            ("ann-generators", commands::ann_generators(instance, *max_degree, s)?)
        }
        Command::Brion { instance, max_degree } => ("brion", commands::brion(instance, *max_degree, s)?),
        Command::CheckAll { instance } => ("check-all", commands::check_all(instance, s)?),
        Command::Catalog => ("catalog", commands::catalog()?),
    })
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, outcome) = match run(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut text = String::new();
    match cli.format {
        Format::Json => {
            let report = json!({
                "command": command,
                "input_digest": outcome.digest,
                "result": outcome.result,
            });
            text = serde_json::to_string_pretty(&report).expect("values serialize");
            text.push('\n');
        }
        Format::Text => {
            text.push_str(&format!("command: {command}\ninput_digest: {}\n", outcome.digest));
            if let Value::Object(map) = &outcome.result {
                for (k, v) in map {
                    text.push_str(&format!("{k}: {}\n", text_value(v)));
                }
            }
            text.push_str(&format!("status: {}\n", if outcome.passed { "ok" } else { "FAILED" }));
        }
    }
    // a closed pipe downstream is not our failure
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
