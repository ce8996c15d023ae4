use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use invy::harness::{
    audit_trajectory, load_config, oracle_compare, preset_scenario, presets, run_scenario, simulate,
    HarnessError, Overrides, Scenario,
};

/// Five-level inverted-Y atom in a Kerr cavity: scenario runner.
#[derive(Parser)]
#[command(name = "invy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve scenarios and write CSV output.
    Run {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        overrides: OverrideArgs,
        /// Directory for CSV and summary files.
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Also compare against the numerical integrator.
        #[arg(long)]
        oracle_compare: bool,
    },
    /// Check conservation laws and solver accuracy without writing output.
    Audit {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Compare the spectral solution with direct integration.
    OracleCompare {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Inspect bundled presets.
    Presets {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Subcommand)]
enum PresetAction {
    /// Print the preset names with a one-line description.
    List,
    /// Print presets as a configuration file.
    Dump { names: Vec<String> },
}

#[derive(Args)]
struct Select {
    /// Configuration file with one [section] per scenario.
    config: Option<PathBuf>,
    /// Scenario name: a section of CONFIG, or a bundled preset when no
    /// config is given ("all" selects every preset).
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Args)]
struct OverrideArgs {
    #[arg(long)]
    nbar: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    chi: Option<f64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    delta1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta3: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta4: Option<f64>,
    #[arg(long)]
    tau_max: Option<f64>,
    #[arg(long)]
    tau_step: Option<f64>,
    #[arg(long)]
    cutoff: Option<usize>,
}

impl OverrideArgs {
    fn to_overrides(&self) -> Overrides {
        Overrides {
            n_bar: self.nbar,
            mu: self.mu,
            chi: self.chi,
            k: self.k,
            delta1: self.delta1,
            delta3: self.delta3,
            delta4: self.delta4,
            tau_max: self.tau_max,
            tau_step: self.tau_step,
            cutoff: self.cutoff,
            oracle_compare: None,
        }
    }
}

fn select(sel: &Select, overrides: &Overrides) -> Result<Vec<Scenario>, HarnessError> {
    match (&sel.config, &sel.preset) {
        (Some(path), name) => {
            let all = load_config(path, overrides)?;
            match name {
                None => Ok(all),
                Some(n) => {
                    let picked: Vec<_> = all.into_iter().filter(|s| &s.name == n).collect();
                    if picked.is_empty() {
                        return Err(HarnessError::Config(format!("{} has no scenario `{n}`", path.display())));
                    }
                    Ok(picked)
                }
            }
        }
        (None, Some(n)) if n == "all" => presets::names().iter().map(|n| preset_scenario(n, overrides)).collect(),
        (None, Some(n)) => Ok(vec![preset_scenario(n, overrides)?]),
        (None, None) => Err(HarnessError::Config("give a configuration file or --preset NAME".into())),
    }
}

fn configure_threads() -> Result<(), HarnessError> {
    let Ok(value) = std::env::var("INVY_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| HarnessError::Config(format!("INVY_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| HarnessError::Config(format!("cannot size thread pool: {e}")))
}

fn run(cli: Cli) -> Result<i32, HarnessError> {
    configure_threads()?;
    let mut status = 0;
    match cli.command {
        Command::Run { select: sel, overrides, out_dir, oracle_compare } => {
            let mut o = overrides.to_overrides();
            if oracle_compare {
                o.oracle_compare = Some(true);
            }
            for s in select(&sel, &o)? {
                let (summary, _) = run_scenario(&s, &out_dir)?;
                print!("{}", summary.render());
                if !summary.passed() {
                    status = 1;
                }
            }
        }
        Command::Audit { select: sel, overrides } => {
            for s in select(&sel, &overrides.to_overrides())? {
                let report = audit_trajectory(&s, &simulate(&s)?);
                print!("{}", report.render());
                if !report.passed() {
                    status = 1;
                }
            }
        }
        Command::OracleCompare { select: sel, overrides } => {
            for s in select(&sel, &overrides.to_overrides())? {
                let report = oracle_compare(&s)?;
                print!("{}", report.render());
                if !report.passed() {
                    status = 1;
                }
            }
        }
        Command::Presets { action: PresetAction::List } => {
            for p in presets::all() {
                println!("{:<8} {}", p.name, p.spec.description.unwrap_or_default());
            }
        }
        Command::Presets { action: PresetAction::Dump { names } } => {
            let chosen: Vec<_> = if names.is_empty() {
                presets::all()
            } else {
                names
                    .iter()
                    .map(|n| presets::find(n).ok_or_else(|| HarnessError::Config(format!("unknown preset `{n}`"))))
                    .collect::<Result<_, _>>()?
            };
            let mut table = toml::Table::new();
            for p in chosen {
                let value = toml::Value::try_from(&p.spec).expect("preset serialises");
                table.insert(p.name, value);
            }
            print!("{}", toml::to_string(&table).expect("table serialises"));
        }
    }
    Ok(status)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("invy: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
