use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use vibron::entanglement::{entropies, rdm_eigenvalues};
use vibron::exact::ground_state;
use vibron::position::{ipr_basis, ipr_position};
use vibron::selfcheck::run_selfcheck;
use vibron::variational::{cat_coefficients, cat_equilibrium, cs_coefficients, cs_equilibrium};
use vibron::{AnsatzKind, ModelPoint};
use vibron_cli::{
    run_scan, write_atomic, Ansatz, CliError, Format, Observable, Overrides, Preset, ScanSpec,
};

#[derive(Parser)]
#[command(name = "vibron", version, about = "Ground-state sweeps of the two-dimensional vibron model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep an (N, ξ) grid and write one row per (N, ξ, ansatz, observable).
    Scan(ScanArgs),
    /// Run the built-in oracle checks.
    Selfcheck,
    /// Dump the coefficients and reduced-density spectrum of a single point as JSON.
    Solve(SolveArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// Key-value config file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<Preset>,
    /// Comma-separated boson numbers.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u32>>,
    #[arg(long)]
    xi_start: Option<f64>,
    #[arg(long)]
    xi_stop: Option<f64>,
    #[arg(long)]
    xi_step: Option<f64>,
    /// Comma-separated subset of exact, cs, cat.
    #[arg(long, value_delimiter = ',')]
    ansatz: Option<Vec<Ansatz>>,
    /// Comma-separated subset of energy, radius, linear_entropy, von_neumann,
    /// purity, ipr_position, ipr_basis, lambdas.
    #[arg(long, value_delimiter = ',')]
    observables: Option<Vec<Observable>>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    workers: Option<usize>,
}

impl ScanArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            preset: self.preset,
            n: self.n.clone(),
            xi_start: self.xi_start,
            xi_stop: self.xi_stop,
            xi_step: self.xi_step,
            ansatz: self.ansatz.clone(),
            observables: self.observables.clone(),
            out: self.out.clone(),
            format: self.format,
            workers: self.workers,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    xi: f64,
    #[arg(long, default_value = "exact")]
    ansatz: Ansatz,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Amplitude {
    n: u32,
    m: u32,
    l: i32,
    c: f64,
}

#[derive(Serialize)]
struct Solution {
    #[serde(rename = "N")]
    n: u32,
    xi: f64,
    ansatz: Ansatz,
    energy_per_particle: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    l_sector: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r_e: Option<f64>,
    coefficients: Vec<Amplitude>,
    lambdas: Vec<f64>,
    purity: f64,
    linear_entropy: f64,
    von_neumann: f64,
    ipr_basis: f64,
    ipr_position: f64,
}

fn scan(args: &ScanArgs) -> Result<(), CliError> {
    let base = match &args.config {
        Some(path) => Overrides::from_file(path)?,
        None => Overrides::default(),
    };
    let spec = ScanSpec::from_overrides(&base.layered(args.overrides()))?;
    let outcome = run_scan(&spec)?;
    for f in &outcome.failures {
        eprintln!("failed: {f}");
    }
    if outcome.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!("{} rows could not be evaluated", outcome.failures.len())))
    }
}

fn solve(args: &SolveArgs) -> Result<(), CliError> {
    let point = ModelPoint::new(args.n, args.xi)?;
    let (table, energy, l_sector, r_e) = match args.ansatz {
        Ansatz::Exact => {
            let g = ground_state(point)?;
            (g.ground_vector, g.ground_energy_per_particle, Some(g.l), None)
        }
        Ansatz::Cs => {
            let v = cs_equilibrium(args.xi);
            (cs_coefficients(args.n, v.r_e), v.energy_per_particle, None, Some(v.r_e))
        }
        Ansatz::Cat => {
            let v = cat_equilibrium(args.n, args.xi)?;
            let t = cat_coefficients(args.n, v.r_e, AnsatzKind::CatEven)?;
            (t, v.energy_per_particle, None, Some(v.r_e))
        }
    };
    let report = entropies(&rdm_eigenvalues(&table))
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    let solution = Solution {
        n: args.n,
        xi: args.xi,
        ansatz: args.ansatz,
        energy_per_particle: energy,
        l_sector,
        r_e,
        coefficients: table
            .iter()
            .filter(|&(_, _, c)| c != 0.0)
            .map(|(n, m, c)| Amplitude { n, m, l: n as i32 - 2 * m as i32, c })
            .collect(),
        purity: report.purity,
        linear_entropy: report.linear_entropy,
        von_neumann: report.von_neumann_bits,
        lambdas: report.lambdas,
        ipr_basis: ipr_basis(&table),
        ipr_position: ipr_position(&table).map_err(|e| CliError::Numerical(e.to_string()))?,
    };
    let mut text = serde_json::to_string_pretty(&solution).expect("solution serializes");
    text.push('\n');
    match &args.out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn selfcheck() -> Result<(), CliError> {
    let report = run_selfcheck();
    for o in &report.outcomes {
        println!("{}  {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<_> = report.failures().map(|o| o.name).collect();
        Err(CliError::Numerical(format!("self-check failed: {}", names.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Scan(args) => scan(args),
        Command::Selfcheck => selfcheck(),
        Command::Solve(args) => solve(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vibron: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
