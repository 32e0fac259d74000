//! Vibration–rotation entanglement of number-basis states.
//!
//! Tracing out the rotational modes `(τ₊, τ₋)` leaves a reduced density
//! matrix that is diagonal in the vibrational quantum number `n`, with
//! eigenvalues `λₙ = Σₘ c[n, m]²`.

use serde::{Deserialize, Serialize};

use crate::coefficients::CoefficientTable;
use crate::error::{Result, VibronError};
use crate::special::{hyp2f1_nn, log_binomial, CompensatedSum};
use crate::variational::AnsatzKind;

const NEGATIVE_LAMBDA_GATE: f64 = -1e-10;
const TRACE_GATE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub lambdas: Vec<f64>,
    pub purity: f64,
    pub linear_entropy: f64,
    pub von_neumann_bits: f64,
}

/// Closed-form and asymptotic entanglement values in the rigidly bent
/// limit `ξ = 1`, where both equilibrium radii equal one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BentPhaseAsymptotics {
    /// `1 − 4^{−N} C(2N, N)`
    pub linear_entropy_cs: f64,
    /// `1 − 2^{1−2N} C(2N, N)`
    pub linear_entropy_cat: f64,
    /// `2 / √(πN)`
    pub purity_cat_stirling: f64,
    /// `½ log₂(N + 1)`
    pub von_neumann_cat: f64,
    /// `1 + ½ log₂(N + 1)`
    pub von_neumann_cs: f64,
}

pub fn rdm_eigenvalues(state: &CoefficientTable) -> Vec<f64> {
    (0..=state.vibrons())
        .map(|n| state.row(n).iter().map(|c| c * c).collect::<CompensatedSum>().value())
        .collect()
}

fn check_kind(kind: AnsatzKind) -> Result<()> {
    if kind == AnsatzKind::CatOdd {
        return Err(VibronError::domain("closed forms exist for CS and CAT_EVEN only"));
    }
    Ok(())
}

/// `λₙ` of the coherent or even-cat state at radius `r`, from the binomial
/// closed forms.
pub fn lambda_closed_form(n_total: u32, r: f64, kind: AnsatzKind) -> Result<Vec<f64>> {
    check_kind(kind)?;
    let s = r * r;
    let log_norm = n_total as f64 * s.ln_1p();
    let log_s = s.ln();
    let t = (1.0 - s) / (1.0 + s);
    let cat_norm = 1.0 + t.powi(n_total as i32);
    Ok((0..=n_total)
        .map(|n| {
            let radial = if n == 0 {
                0.0
            } else if s == 0.0 {
                return 0.0;
            } else {
                n as f64 * log_s
            };
            let base = (log_binomial(n_total, n) + radial - log_norm).exp();
            match kind {
                AnsatzKind::Cs => base,
                _ if n % 2 == 1 => 0.0,
                _ => 2.0 * base / cat_norm,
            }
        })
        .collect())
}

/// `Tr ρ²` through ₂F₁(−N, −N; 1; ±r⁴).
pub fn purity_closed_form(n_total: u32, r: f64, kind: AnsatzKind) -> Result<f64> {
    check_kind(kind)?;
    let s = r * r;
    let x = s * s;
    let n = n_total as i32;
    Ok(match kind {
        AnsatzKind::Cs => hyp2f1_nn(n_total, x) / (1.0 + s).powi(2 * n),
        _ => {
            let den = (1.0 + s).powi(n) + (1.0 - s).powi(n);
            2.0 * (hyp2f1_nn(n_total, x) + hyp2f1_nn(n_total, -x)) / (den * den)
        }
    })
}

/// Purity, linear entropy and base-2 von Neumann entropy of a spectrum.
pub fn entropies(lambdas: &[f64]) -> Result<EntanglementReport> {
    if lambdas.is_empty() {
        return Err(VibronError::domain("empty spectrum"));
    }
    if let Some(bad) = lambdas.iter().find(|&&l| !(l >= NEGATIVE_LAMBDA_GATE)) {
        return Err(VibronError::domain(format!("negative RDM eigenvalue {bad}")));
    }
    let trace: f64 = lambdas.iter().copied().collect::<CompensatedSum>().value();
    if (trace - 1.0).abs() > TRACE_GATE {
        return Err(VibronError::domain(format!("RDM trace {trace} differs from one")));
    }
    let lambdas: Vec<f64> = lambdas.iter().map(|&l| l.max(0.0)).collect();
    let purity = lambdas.iter().map(|l| l * l).collect::<CompensatedSum>().value();
    let von_neumann_bits = lambdas
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .collect::<CompensatedSum>()
        .value()
        .max(0.0);
    Ok(EntanglementReport { lambdas, purity, linear_entropy: 1.0 - purity, von_neumann_bits })
}

pub fn state_entropies(state: &CoefficientTable) -> Result<EntanglementReport> {
    entropies(&rdm_eigenvalues(state))
}

/// Central binomial ratio `C(2N, N) / 4ᴺ`.
pub fn central_binomial_ratio(n: u32) -> f64 {
    (log_binomial(2 * n, n) - n as f64 * 4f64.ln()).exp()
}

pub fn bent_phase_asymptotics(n: u32) -> Result<BentPhaseAsymptotics> {
    if n < 2 {
        return Err(VibronError::domain(format!("asymptotics need N ≥ 2, got {n}")));
    }
    let ratio = central_binomial_ratio(n);
    let half_log = 0.5 * (n as f64 + 1.0).log2();
    Ok(BentPhaseAsymptotics {
        linear_entropy_cs: 1.0 - ratio,
        linear_entropy_cat: 1.0 - 2.0 * ratio,
        purity_cat_stirling: 2.0 / (std::f64::consts::PI * n as f64).sqrt(),
        von_neumann_cat: half_log,
        von_neumann_cs: 1.0 + half_log,
    })
}
