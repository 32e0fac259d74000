use rayon::prelude::*;
use serde::Serialize;

use vibron::coefficients::CoefficientTable;
use vibron::entanglement::{entropies, lambda_closed_form, rdm_eigenvalues};
use vibron::exact::ground_state;
use vibron::position::{ipr_basis, ipr_position};
use vibron::variational::{cat_coefficients, cat_equilibrium, cs_coefficients, cs_equilibrium};
use vibron::{AnsatzKind, ModelPoint, Result as CoreResult};

use crate::output::{render, write_atomic};
use crate::spec::{Ansatz, Observable, ScanSpec};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    #[serde(rename = "N")]
    pub n: u32,
    pub xi: f64,
    pub ansatz: Ansatz,
    pub observable: String,
    /// `None` when the evaluation failed.
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_sector: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_e: Option<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct ScanOutcome {
    pub rows: Vec<ScanRow>,
    /// One message per row that could not be evaluated.
    pub failures: Vec<String>,
}

struct PreparedState {
    table: CoefficientTable,
    energy: f64,
    l_sector: Option<i32>,
    r_e: Option<f64>,
    kind: Option<AnsatzKind>,
}

impl PreparedState {
    fn build(n: u32, xi: f64, ansatz: Ansatz) -> CoreResult<PreparedState> {
        match ansatz {
            Ansatz::Exact => {
                let g = ground_state(ModelPoint::new(n, xi)?)?;
                Ok(PreparedState {
                    energy: g.ground_energy_per_particle,
                    l_sector: Some(g.l),
                    r_e: None,
                    kind: None,
                    table: g.ground_vector,
                })
            }
            Ansatz::Cs => {
                let v = cs_equilibrium(xi);
                Ok(PreparedState {
                    table: cs_coefficients(n, v.r_e),
                    energy: v.energy_per_particle,
                    l_sector: None,
                    r_e: Some(v.r_e),
                    kind: Some(AnsatzKind::Cs),
                })
            }
            Ansatz::Cat => {
                let v = cat_equilibrium(n, xi)?;
                Ok(PreparedState {
                    table: cat_coefficients(n, v.r_e, AnsatzKind::CatEven)?,
                    energy: v.energy_per_particle,
                    l_sector: None,
                    r_e: Some(v.r_e),
                    kind: Some(AnsatzKind::CatEven),
                })
            }
        }
    }

    fn lambdas(&self) -> CoreResult<Vec<f64>> {
        match (self.kind, self.r_e) {
            (Some(kind), Some(r)) => lambda_closed_form(self.table.vibrons(), r, kind),
            _ => Ok(rdm_eigenvalues(&self.table)),
        }
    }

    fn values(&self, observable: Observable) -> CoreResult<Vec<(String, f64)>> {
        let single = |v: f64| Ok(vec![(observable.as_str().to_string(), v)]);
        match observable {
            Observable::Energy => single(self.energy),
            Observable::Radius => single(self.r_e.unwrap_or(0.0)),
            Observable::LinearEntropy => single(entropies(&self.lambdas()?)?.linear_entropy),
            Observable::VonNeumann => single(entropies(&self.lambdas()?)?.von_neumann_bits),
            Observable::Purity => single(entropies(&self.lambdas()?)?.purity),
            Observable::IprPosition => single(ipr_position(&self.table)?),
            Observable::IprBasis => single(ipr_basis(&self.table)),
            Observable::Lambdas => Ok(self
                .lambdas()?
                .into_iter()
                .enumerate()
                .map(|(k, l)| (format!("lambda_{k}"), l))
                .collect()),
        }
    }
}

fn lambda_names(n: u32) -> impl Iterator<Item = String> {
    (0..=n).map(|k| format!("lambda_{k}"))
}

/// All rows of one `(N, ξ)` grid point. Failures leave `value` empty.
pub fn evaluate_point(
    n: u32,
    xi: f64,
    ansatze: &[Ansatz],
    observables: &[Observable],
) -> ScanOutcome {
    let mut out = ScanOutcome::default();
    for &ansatz in ansatze {
        let row = |observable: String, value, l_sector, r_e| ScanRow {
            n,
            xi,
            ansatz,
            observable,
            value,
            l_sector,
            r_e,
        };
        let state = PreparedState::build(n, xi, ansatz);
        for &observable in observables.iter().filter(|o| o.applies_to(ansatz)) {
            let computed = match &state {
                Ok(s) => s.values(observable),
                Err(e) => Err(e.clone()),
            };
            let (l_sector, r_e) = match &state {
                Ok(s) => (s.l_sector, s.r_e),
                Err(_) => (None, None),
            };
            match computed {
                Ok(values) => {
                    for (name, v) in values {
                        out.rows.push(row(name, Some(v), l_sector, r_e));
                    }
                }
                Err(e) => {
                    let names: Vec<String> = match observable {
                        Observable::Lambdas => lambda_names(n).collect(),
                        o => vec![o.as_str().to_string()],
                    };
                    for name in names {
                        out.failures.push(format!("N={n} xi={xi} {ansatz} {name}: {e}"));
                        out.rows.push(row(name, None, l_sector, r_e));
                    }
                }
            }
        }
    }
    out
}

/// Evaluates the full grid, in `(N, ξ, ansatz, observable)` order regardless of
/// the worker count.
pub fn compute_rows(spec: &ScanSpec) -> Result<ScanOutcome, CliError> {
    let xs = spec.xi.values();
    let points: Vec<(u32, f64)> = spec
        .n_list
        .iter()
        .flat_map(|&n| xs.iter().map(move |&xi| (n, xi)))
        .collect();
    let eval = || -> Vec<ScanOutcome> {
        points
            .par_iter()
            .map(|&(n, xi)| evaluate_point(n, xi, &spec.ansatze, &spec.observables))
            .collect()
    };
    let parts = match spec.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {w} workers: {e}")))?
            .install(eval),
        None => eval(),
    };

    let mut merged = ScanOutcome::default();
    for p in parts {
        merged.rows.extend(p.rows);
        merged.failures.extend(p.failures);
    }
    Ok(merged)
}

/// Evaluates the grid and writes it to `spec.out` (atomically) or stdout.
pub fn run_scan(spec: &ScanSpec) -> Result<ScanOutcome, CliError> {
    let outcome = compute_rows(spec)?;
    let text = render(&outcome.rows, spec.format);
    match &spec.out {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => {
            use std::io::Write;
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
        }
    }
    Ok(outcome)
}
