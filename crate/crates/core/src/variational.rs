//! Projective coherent states and their parity projections ("cat" states).
//!
//! The coherent state is the condensate `(σ† + r τₓ†)ᴺ|0⟩`, normalized. The
//! even (odd) cat state is its projection `(1 ± Π̂)|N; r⟩`, i.e. the
//! superposition of the packets at `+r` and `−r`.
//!
//! Energies are evaluated in terms of `s = r²` and `t = (1 − s)/(1 + s)`,
//! which keeps every power bounded by one in magnitude.

use serde::{Deserialize, Serialize};

use crate::coefficients::CoefficientTable;
use crate::error::{Result, VibronError};
use crate::special::log_binomial;

/// Mean-field critical point.
pub const XI_CRITICAL: f64 = 0.2;

/// Upper end of the radius search interval.
pub const R_MAX: f64 = 3.0;

/// Spacing of the coarse radius scan preceding local refinement.
pub const COARSE_STEP: f64 = 0.02;

const NULL_NORM: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AnsatzKind {
    #[serde(rename = "CS")]
    Cs,
    #[serde(rename = "CAT_EVEN")]
    CatEven,
    /// Constructed only; never fitted to the ground state.
    #[serde(rename = "CAT_ODD")]
    CatOdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationalResult {
    pub kind: AnsatzKind,
    pub r_e: f64,
    pub energy_per_particle: f64,
    /// `None` for the plain coherent state, whose energy does not depend on N.
    pub n: Option<u32>,
    pub xi: f64,
}

#[inline]
fn contraction(r: f64) -> f64 {
    let s = r * r;
    (1.0 - s) / (1.0 + s)
}

/// `⟨N; −r | N; r⟩ = ((1 − r²)/(1 + r²))ᴺ`.
pub fn overlap(n: u32, r: f64) -> f64 {
    contraction(r).powi(n as i32)
}

/// `1 − overlap`, accurate for small `r`.
fn one_minus_overlap(n: u32, r: f64) -> f64 {
    let s = r * r;
    if s < 1.0 {
        let log_t = (-s).ln_1p() - s.ln_1p();
        -(n as f64 * log_t).exp_m1()
    } else {
        1.0 - overlap(n, r)
    }
}

/// Normalization `𝒩±(r) = √2 (1 ± overlap)^{1/2}` of the parity projections.
pub fn projection_norm(n: u32, r: f64, kind: AnsatzKind) -> Result<f64> {
    match kind {
        AnsatzKind::Cs => Ok(1.0),
        AnsatzKind::CatEven => Ok((2.0 * (1.0 + overlap(n, r))).sqrt()),
        AnsatzKind::CatOdd => Ok((2.0 * one_minus_overlap(n, r)).sqrt()),
    }
}

/// Number-basis amplitudes of the coherent state `|N; r⟩`:
/// `c[n, m] = √(C(N,n) C(n,m)) (−r/√2)ⁿ (−1)ᵐ / (1 + r²)^{N/2}`.
///
/// Magnitudes are assembled in log space so large `N` does not overflow.
pub fn cs_coefficients(n_total: u32, r: f64) -> CoefficientTable {
    let log_norm = 0.5 * n_total as f64 * (r * r).ln_1p();
    let log_amp = (r.abs() / std::f64::consts::SQRT_2).ln();
    let log_binom_n: Vec<f64> = (0..=n_total).map(|n| log_binomial(n_total, n)).collect();
    CoefficientTable::from_fn(n_total, |n, m| {
        if n > 0 && r == 0.0 {
            return 0.0;
        }
        let radial = if n == 0 { 0.0 } else { n as f64 * log_amp };
        let magnitude = (0.5 * (log_binom_n[n as usize] + log_binomial(n, m)) + radial - log_norm).exp();
        // (−sign r)ⁿ (−1)ᵐ
        let negative = (r > 0.0 && n % 2 == 1) ^ (m % 2 == 1);
        if negative {
            -magnitude
        } else {
            magnitude
        }
    })
}

/// Amplitudes of the even or odd parity projection `|N; r, ±⟩`.
pub fn cat_coefficients(n_total: u32, r: f64, kind: AnsatzKind) -> Result<CoefficientTable> {
    let keep_parity = match kind {
        AnsatzKind::CatEven => 0,
        AnsatzKind::CatOdd => 1,
        AnsatzKind::Cs => {
            return Err(VibronError::domain("cat_coefficients needs CAT_EVEN or CAT_ODD"));
        }
    };
    let norm = projection_norm(n_total, r, kind)?;
    if !(norm > NULL_NORM) {
        return Err(VibronError::NullProjection { r });
    }
    let mut table = cs_coefficients(n_total, r);
    let factor = 2.0 / norm;
    for n in 0..=n_total {
        for m in 0..=n {
            let c = if n % 2 == keep_parity { factor * table.get(n, m) } else { 0.0 };
            table.set(n, m, c)?;
        }
    }
    Ok(table)
}

/// `⟨H⟩/N` in the coherent state; independent of `N`.
pub fn cs_energy(xi: f64, r: f64) -> f64 {
    let s = r * r;
    let t = contraction(r);
    (1.0 - xi) * s / (1.0 + s) + xi * t * t
}

/// Mean-field minimum: `r_e = 0` up to `ξ_c = 1/5`, then
/// `r_e = √((5ξ − 1)/(3ξ + 1))`.
pub fn cs_equilibrium(xi: f64) -> VariationalResult {
    let (r_e, energy) = if xi <= XI_CRITICAL {
        (0.0, xi)
    } else {
        (
            ((5.0 * xi - 1.0) / (3.0 * xi + 1.0)).sqrt(),
            (-9.0 * xi * xi + 10.0 * xi - 1.0) / (16.0 * xi),
        )
    };
    VariationalResult { kind: AnsatzKind::Cs, r_e, energy_per_particle: energy, n: None, xi }
}

fn check_cat_size(n: u32) -> Result<()> {
    if n < 2 {
        return Err(VibronError::domain(format!("cat mean values need N ≥ 2, got {n}")));
    }
    Ok(())
}

/// `⟨n̂⟩₊ / N` in the even cat state.
pub fn cat_mean_n(n: u32, r: f64) -> Result<f64> {
    check_cat_size(n)?;
    Ok(cat_number_density(n, r))
}

/// `⟨Ŵ²⟩₊ / N` in the even cat state.
pub fn cat_mean_w2(n: u32, r: f64) -> Result<f64> {
    check_cat_size(n)?;
    Ok((n as f64 + 1.0) - (n as f64 - 1.0) * cat_bending_term(n, r))
}

fn cat_number_density(n: u32, r: f64) -> f64 {
    let s = r * r;
    let t = contraction(r);
    let tn = t.powi(n as i32);
    s / (1.0 + s) * (1.0 - t.powi(n as i32 - 1)) / (1.0 + tn)
}

/// `(N(N+1) − ⟨Ŵ²⟩₊) / (N(N−1)) = (tᴺ + t²)/(1 + tᴺ)`.
///
/// The off-diagonal kernel `⟨N; −r|Ŵ²|N; r⟩` equals `2N⟨N; −r|N; r⟩`, which
/// yields this form.
fn cat_bending_term(n: u32, r: f64) -> f64 {
    let t = contraction(r);
    let tn = t.powi(n as i32);
    (tn + t * t) / (1.0 + tn)
}

/// `⟨H⟩₊ / N` for the even cat state; depends on `N` unlike [`cs_energy`].
pub fn cat_energy(n: u32, xi: f64, r: f64) -> Result<f64> {
    check_cat_size(n)?;
    Ok(cat_energy_unchecked(n, xi, r))
}

fn cat_energy_unchecked(n: u32, xi: f64, r: f64) -> f64 {
    (1.0 - xi) * cat_number_density(n, r) + xi * cat_bending_term(n, r)
}

/// `d(cat energy)/d(r²)`.
fn cat_energy_slope(n: u32, xi: f64, s: f64) -> f64 {
    let nf = n as f64;
    let t = (1.0 - s) / (1.0 + s);
    let dt_ds = -2.0 / ((1.0 + s) * (1.0 + s));
    let tn = t.powi(n as i32);
    let tn1 = t.powi(n as i32 - 1);
    let tn2 = t.powi(n as i32 - 2);
    let den = 1.0 + tn;

    let f = s / (1.0 + s);
    let df = 1.0 / ((1.0 + s) * (1.0 + s));
    let g = (1.0 - tn1) / den;
    let dg = (-(nf - 1.0) * tn2 * den - (1.0 - tn1) * nf * tn1) / (den * den);
    let d_number = df * g + f * dg * dt_ds;

    let dw = ((nf * tn1 + 2.0 * t) * den - (tn + t * t) * nf * tn1) / (den * den);
    let d_bending = dw * dt_ds;

    (1.0 - xi) * d_number + xi * d_bending
}

/// Global minimizer of the even-cat energy over `r ∈ [0, R_MAX]`.
///
/// A coarse scan picks the basin, golden-section search narrows it, and the
/// root of the analytic slope in `r²` fixes the radius to machine precision.
/// `r = 0` is an admissible boundary minimum.
pub fn cat_equilibrium(n: u32, xi: f64) -> Result<VariationalResult> {
    check_cat_size(n)?;
    if !(0.0..=1.0).contains(&xi) {
        return Err(VibronError::domain(format!("control parameter ξ = {xi} outside [0, 1]")));
    }
    let energy = |r: f64| cat_energy_unchecked(n, xi, r);

    let steps = (R_MAX / COARSE_STEP).round() as usize;
    let grid = |k: usize| k as f64 * COARSE_STEP;
    let (k_best, _) = (0..=steps)
        .map(|k| (k, energy(grid(k))))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    let lo = grid(k_best.saturating_sub(1));
    let hi = grid((k_best + 1).min(steps));

    let golden = golden_section(&energy, lo, hi, 1e-10);
    if !golden.is_finite() {
        return Err(VibronError::Minimizer(format!("non-finite radius for N = {n}, ξ = {xi}")));
    }

    let slope = |s: f64| cat_energy_slope(n, xi, s);
    let mut r_e = match bisect_sign_change(&slope, lo * lo, hi * hi) {
        Some(s) => s.sqrt(),
        None => golden,
    };
    if energy(0.0) <= energy(r_e) {
        r_e = 0.0;
    } else if energy(R_MAX) < energy(r_e) {
        r_e = R_MAX;
    }

    Ok(VariationalResult {
        kind: AnsatzKind::CatEven,
        r_e,
        energy_per_particle: energy(r_e),
        n: Some(n),
        xi,
    })
}

fn golden_section(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// Root of an increasing sign change of `g` on `[a, b]`, if there is one.
fn bisect_sign_change(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> Option<f64> {
    let ga = g(a);
    let gb = g(b);
    if !(ga < 0.0 && gb > 0.0) {
        if ga == 0.0 && a > 0.0 {
            return Some(a);
        }
        if gb == 0.0 {
            return Some(b);
        }
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Some(mid);
        }
        if gm < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}
