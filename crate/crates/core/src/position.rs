//! Position representation `ψ(q₀, q₁, q₂)` of number-basis states and
//! inverse participation ratios.
//!
//! The basis functions are products of orthonormal Hermite functions,
//! `⟨q|N; n, l⟩ = h_{N−n}(q₀) h_{(n+l)/2}(q₁) h_{(n−l)/2}(q₂)`, so `(n + l)/2 = n − m`
//! τ₊ quanta and `(n − l)/2 = m` τ₋ quanta. All amplitudes are real and
//! `|ψ|⁴ = ψ⁴`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::coefficients::CoefficientTable;
use crate::error::{Result, VibronError};
use crate::special::{gauss_hermite, hermite_functions, hermite_normalized_polys, hyp3f2_half, CompensatedSum};
use crate::variational::AnsatzKind;

#[derive(Debug, Clone)]
pub struct PositionWavefunction {
    pub coefficients: CoefficientTable,
}

impl PositionWavefunction {
    pub fn new(coefficients: CoefficientTable) -> Self {
        PositionWavefunction { coefficients }
    }

    pub fn vibrons(&self) -> u32 {
        self.coefficients.vibrons()
    }

    pub fn evaluate(&self, q: [f64; 3]) -> f64 {
        evaluate_psi(&self.coefficients, q)
    }
}

pub fn evaluate_psi(state: &CoefficientTable, q: [f64; 3]) -> f64 {
    let big_n = state.vibrons();
    let h0 = hermite_functions(big_n, q[0]);
    let h1 = hermite_functions(big_n, q[1]);
    let h2 = hermite_functions(big_n, q[2]);
    let mut psi = CompensatedSum::new();
    for n in 0..=big_n {
        let row = state.row(n);
        let inner: f64 = row
            .iter()
            .enumerate()
            .map(|(m, c)| c * h1[n as usize - m] * h2[m])
            .sum();
        psi.add(h0[(big_n - n) as usize] * inner);
    }
    psi.value()
}

/// Smallest per-axis order that integrates `ψ⁴` exactly.
pub fn minimum_ipr_order(vibrons: u32) -> usize {
    2 * vibrons as usize + 2
}

/// `∫ ψ⁴ d³q` with the minimal exact quadrature order.
pub fn ipr_position(state: &CoefficientTable) -> Result<f64> {
    ipr_position_with_order(state, minimum_ipr_order(state.vibrons()))
}

/// `∫ ψ⁴ d³q` on an `order³` tensor Gauss–Hermite grid.
///
/// With `q = u/√2` the integrand becomes `exp(−|u|²)` times a polynomial of
/// per-axis degree `4N`, so any `order ≥ 2N + 2` is exact.
pub fn ipr_position_with_order(state: &CoefficientTable, order: usize) -> Result<f64> {
    let needed = minimum_ipr_order(state.vibrons());
    if order < needed {
        return Err(VibronError::domain(format!(
            "quadrature order {order} cannot integrate ψ⁴ exactly for N = {} (need ≥ {needed})",
            state.vibrons()
        )));
    }
    let rule = gauss_hermite(order)?;
    let polys = polynomial_table(state.vibrons(), &rule.nodes, FRAC_1_SQRT_2);
    let total = tensor_sum(state, &polys, &rule.weights, 4);
    Ok(total * FRAC_1_SQRT_2.powi(3))
}

/// `∫ ψ² d³q`, exact for `order ≥ N + 1`.
pub fn norm_position(state: &CoefficientTable, order: usize) -> Result<f64> {
    if order < state.vibrons() as usize + 1 {
        return Err(VibronError::domain(format!(
            "quadrature order {order} too small for the norm at N = {}",
            state.vibrons()
        )));
    }
    let rule = gauss_hermite(order)?;
    let polys = polynomial_table(state.vibrons(), &rule.nodes, 1.0);
    Ok(tensor_sum(state, &polys, &rule.weights, 2))
}

// polys[i][k] = g_k(scale · node_i), Hermite functions without the Gaussian
fn polynomial_table(vibrons: u32, nodes: &[f64], scale: f64) -> Vec<Vec<f64>> {
    nodes.iter().map(|&u| hermite_normalized_polys(vibrons, scale * u)).collect()
}

/// `Σ_{ijk} wᵢ wⱼ wₖ G(qᵢ, qⱼ, qₖ)^power`, where `G` is the polynomial part of
/// ψ. The τ₊/τ₋ contraction is done once per `(j, k)` pair.
fn tensor_sum(state: &CoefficientTable, polys: &[Vec<f64>], weights: &[f64], power: i32) -> f64 {
    let big_n = state.vibrons() as usize;
    let mut partial = vec![0.0; big_n + 1];
    let mut total = CompensatedSum::new();
    for (gj, wj) in polys.iter().zip(weights) {
        for (gk, wk) in polys.iter().zip(weights) {
            for (n, slot) in partial.iter_mut().enumerate() {
                *slot = state
                    .row(n as u32)
                    .iter()
                    .enumerate()
                    .map(|(m, c)| c * gj[n - m] * gk[m])
                    .sum();
            }
            let mut plane = CompensatedSum::new();
            for (gi, wi) in polys.iter().zip(weights) {
                let psi: f64 = partial.iter().enumerate().map(|(n, a)| gi[big_n - n] * a).sum();
                plane.add(wi * psi.powi(power));
            }
            total.add(wj * wk * plane.value());
        }
    }
    total.value()
}

/// `Σ c⁴` over the number basis.
pub fn ipr_basis(state: &CoefficientTable) -> f64 {
    state.amplitudes().iter().map(|c| c.powi(4)).collect::<CompensatedSum>().value()
}

/// Number-basis IPR of the coherent or even-cat state through
/// ₃F₂(½, −N, −N; 1, 1; ±r⁴).
pub fn ipr_basis_closed_form(n_total: u32, r: f64, kind: AnsatzKind) -> Result<f64> {
    let s = r * r;
    let x = s * s;
    let n = n_total as i32;
    match kind {
        AnsatzKind::Cs => Ok(hyp3f2_half(n_total, x) / (1.0 + s).powi(2 * n)),
        AnsatzKind::CatEven => {
            let den = (1.0 + s).powi(n) + (1.0 - s).powi(n);
            Ok(2.0 * (hyp3f2_half(n_total, x) + hyp3f2_half(n_total, -x)) / (den * den))
        }
        AnsatzKind::CatOdd => Err(VibronError::domain("closed forms exist for CS and CAT_EVEN only")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variational::{cat_coefficients, cs_coefficients};
    use std::f64::consts::PI;

    #[test]
    fn vacuum_values() {
        let vac = CoefficientTable::vacuum(0);
        assert!((evaluate_psi(&vac, [0.0; 3]) - PI.powf(-0.75)).abs() < 1e-15);
        let p = ipr_position(&vac).unwrap();
        assert!((p - (2.0 * PI).powf(-1.5)).abs() < 1e-15);
        assert!((p - 0.063_493_6).abs() < 1e-7);
        assert_eq!(ipr_basis(&vac), 1.0);
    }

    #[test]
    fn odd_condensate_vanishes_at_origin() {
        for n in [1, 3, 7] {
            assert_eq!(evaluate_psi(&CoefficientTable::vacuum(n), [0.0; 3]), 0.0);
        }
    }

    #[test]
    fn normalization_under_quadrature() {
        let cs = cs_coefficients(4, 0.7);
        assert!((norm_position(&cs, 10).unwrap() - 1.0).abs() < 1e-10);
        let cat = cat_coefficients(6, 1.1, AnsatzKind::CatEven).unwrap();
        assert!((norm_position(&cat, 10).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pointwise_matches_quadrature_route() {
        // the tensor contraction must agree with direct evaluation
        let state = cat_coefficients(3, 0.8, AnsatzKind::CatEven).unwrap();
        let rule = gauss_hermite(8).unwrap();
        let mut direct = 0.0;
        for (a, wa) in rule.nodes.iter().zip(&rule.weights) {
            for (b, wb) in rule.nodes.iter().zip(&rule.weights) {
                for (c, wc) in rule.nodes.iter().zip(&rule.weights) {
                    let q = [a * FRAC_1_SQRT_2, b * FRAC_1_SQRT_2, c * FRAC_1_SQRT_2];
                    let psi = evaluate_psi(&state, q);
                    let gauss = (-(q[0] * q[0] + q[1] * q[1] + q[2] * q[2])).exp();
                    direct += wa * wb * wc * psi.powi(4) / (gauss * gauss);
                }
            }
        }
        direct *= FRAC_1_SQRT_2.powi(3);
        let fast = ipr_position_with_order(&state, 8).unwrap();
        assert!((direct - fast).abs() < 1e-12, "{direct} vs {fast}");
    }

    #[test]
    fn order_shortfall_is_rejected() {
        let s = cs_coefficients(5, 0.5);
        assert!(ipr_position_with_order(&s, 11).is_err());
        assert!(ipr_position_with_order(&s, 12).is_ok());
        assert!(norm_position(&s, 5).is_err());
    }

    #[test]
    fn basis_ipr_closed_form_small() {
        let brute = ipr_basis(&cs_coefficients(1, 1.0));
        assert!((brute - 0.375).abs() < 1e-15);
        assert!((ipr_basis_closed_form(1, 1.0, AnsatzKind::Cs).unwrap() - 0.375).abs() < 1e-15);
        assert!(ipr_basis_closed_form(1, 1.0, AnsatzKind::CatOdd).is_err());
    }
}
