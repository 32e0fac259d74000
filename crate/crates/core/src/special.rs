//! Terminating hypergeometric series, logarithmic binomials, Hermite
//! polynomials and Gauss–Hermite quadrature.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, VibronError};
use crate::tridiag::SymTridiagonal;

pub const MAX_QUADRATURE_ORDER: usize = 200;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        iter.into_iter().for_each(|x| s.add(x));
        s
    }
}

pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `ln C(n, k)`; `−∞` when `k > n`.
pub fn log_binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k).map(|j| ((n - j) as f64 / (j + 1) as f64).ln()).sum()
}

/// Binomial coefficients `C(n, 0..=n)` by the multiplicative recurrence;
/// exact while the values stay below 2⁵³.
pub fn binomial_row(n: u32) -> Vec<f64> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut b = 1.0_f64;
    row.push(b);
    for k in 0..n {
        b = (b * (n - k) as f64 / (k + 1) as f64).round();
        row.push(b);
    }
    row
}

/// Above this length an alternating series is summed in adjacent pairs.
const PAIRING_THRESHOLD: u32 = 40;

fn terminating_series(n: u32, x: f64, mut term: impl FnMut(u32) -> f64) -> f64 {
    let mut acc = CompensatedSum::new();
    let mut k = 0;
    if x < 0.0 && n > PAIRING_THRESHOLD {
        while k < n {
            acc.add(term(k) + term(k + 1));
            k += 2;
        }
        if k == n {
            acc.add(term(n));
        }
    } else {
        while k <= n {
            acc.add(term(k));
            k += 1;
        }
    }
    acc.value()
}

/// ₂F₁(−N, −N; 1; x) = Σₖ C(N, k)² xᵏ.
pub fn hyp2f1_nn(n: u32, x: f64) -> f64 {
    let binom = binomial_row(n);
    terminating_series(n, x, |k| binom[k as usize] * binom[k as usize] * x.powi(k as i32))
}

/// ₃F₂(½, −N, −N; 1, 1; x) = Σₖ (½)ₖ/k! · C(N, k)² xᵏ.
pub fn hyp3f2_half(n: u32, x: f64) -> f64 {
    let binom = binomial_row(n);
    // (1/2)_k / k!
    let mut half_rising = Vec::with_capacity(n as usize + 1);
    let mut a = 1.0;
    for k in 0..=n {
        half_rising.push(a);
        a *= (k as f64 + 0.5) / (k as f64 + 1.0);
    }
    terminating_series(n, x, |k| {
        let k = k as usize;
        half_rising[k] * binom[k] * binom[k] * x.powi(k as i32)
    })
}

/// Physicists' Hermite polynomial `Hₖ(q)`.
pub fn hermite(k: u32, q: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 2.0 * q;
    for j in 1..k {
        let next = 2.0 * q * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Hₖ(q) / √(2ᵏ k! √π)` for `k = 0..=kmax`: the normalized Hermite
/// functions without their Gaussian factor `exp(−q²/2)`.
pub fn hermite_normalized_polys(kmax: u32, q: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax as usize + 1);
    fill_hermite_normalized_polys(kmax, q, &mut out);
    out
}

pub(crate) fn fill_hermite_normalized_polys(kmax: u32, q: f64, out: &mut Vec<f64>) {
    out.clear();
    let g0 = PI.powf(-0.25);
    out.push(g0);
    if kmax == 0 {
        return;
    }
    out.push(2f64.sqrt() * q * g0);
    for k in 1..kmax as usize {
        let kf = k as f64;
        let next = q * (2.0 / (kf + 1.0)).sqrt() * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
}

/// Orthonormal Hermite functions `hₖ(q)`, `k = 0..=kmax`.
pub fn hermite_functions(kmax: u32, q: f64) -> Vec<f64> {
    let gauss = (-0.5 * q * q).exp();
    let mut out = hermite_normalized_polys(kmax, q);
    out.iter_mut().for_each(|h| *h *= gauss);
    out
}

/// Gauss–Hermite rule for the weight `exp(−u²)` on the real line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    /// `∫ exp(−u²) f(u) du`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&u, &w)| w * f(u))
            .collect::<CompensatedSum>()
            .value()
    }
}

/// `M`-point Gauss–Hermite rule, exact for polynomials of degree `2M − 1`.
///
/// Nodes start from the eigenvalues of the Jacobi matrix and are polished by
/// Newton's method on the normalized `H_M`; weights follow from
/// `w = 1 / (M g_{M−1}(x)²)`.
pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_QUADRATURE_ORDER {
        return Err(VibronError::domain(format!(
            "quadrature order {order} outside 1..={MAX_QUADRATURE_ORDER}"
        )));
    }
    let m = order as u32;
    let jacobi = SymTridiagonal::new(
        vec![0.0; order],
        (1..order).map(|k| (k as f64 / 2.0).sqrt()).collect(),
    );
    let mut nodes = jacobi.eigenvalues()?;

    let mut g = Vec::with_capacity(order + 1);
    for x in nodes.iter_mut() {
        let mut converged = false;
        for _ in 0..100 {
            fill_hermite_normalized_polys(m, *x, &mut g);
            let step = g[order] / ((2.0 * m as f64).sqrt() * g[order - 1]);
            *x -= step;
            if step.abs() <= 1e-15 * (1.0 + x.abs()) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(VibronError::NoConvergence {
                context: format!("Gauss–Hermite node near {x} for M = {order}"),
            });
        }
    }

    for i in 0..order / 2 {
        let j = order - 1 - i;
        let half = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -half;
        nodes[j] = half;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }

    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            fill_hermite_normalized_polys(m - 1, x, &mut g);
            1.0 / (m as f64 * g[order - 1] * g[order - 1])
        })
        .collect();
    for i in 0..order / 2 {
        let j = order - 1 - i;
        let w = 0.5 * (weights[i] + weights[j]);
        weights[i] = w;
        weights[j] = w;
    }

    Ok(QuadratureRule { nodes, weights, order })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergeometric_examples() {
        assert_eq!(hyp2f1_nn(7, 0.0), 1.0);
        assert_eq!(hyp2f1_nn(2, 1.0), 6.0);
        assert_eq!(hyp2f1_nn(2, -1.0), -2.0);
        assert_eq!(hyp3f2_half(9, 0.0), 1.0);
        assert_eq!(hyp3f2_half(1, 1.0), 1.5);
        assert_eq!(hyp2f1_nn(0, 3.0), 1.0);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let s: CompensatedSum = [1e16, 1.0, -1e16, 1.0].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn log_binomial_matches_row() {
        for n in 0..40 {
            let row = binomial_row(n);
            for k in 0..=n {
                let rel = (log_binomial(n, k).exp() - row[k as usize]).abs() / row[k as usize];
                assert!(rel < 1e-13, "C({n},{k})");
            }
        }
        assert_eq!(log_binomial(3, 4), f64::NEG_INFINITY);
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(0, 0.3), 1.0);
        assert_eq!(hermite(1, 0.3), 0.6);
        assert_eq!(hermite(2, 1.0), 2.0);
        assert_eq!(hermite(3, 0.0), 0.0);
        // H_5(x) = 32x^5 - 160x^3 + 120x
        let x: f64 = 0.7;
        let h5 = 32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x;
        assert!((hermite(5, x) - h5).abs() < 1e-12);
    }

    #[test]
    fn normalized_polys_match_hermite() {
        let q = -1.3;
        let g = hermite_normalized_polys(12, q);
        for (k, gk) in g.iter().enumerate() {
            let norm = (2f64.powi(k as i32) * ln_factorial(k as u32).exp() * PI.sqrt()).sqrt();
            let want = hermite(k as u32, q) / norm;
            assert!((gk - want).abs() < 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn small_rules() {
        let r1 = gauss_hermite(1).unwrap();
        assert_eq!(r1.nodes, vec![0.0]);
        assert!((r1.weights[0] - PI.sqrt()).abs() < 1e-15);

        let r2 = gauss_hermite(2).unwrap();
        let s = 0.5f64.sqrt();
        assert!((r2.nodes[0] + s).abs() < 1e-15 && (r2.nodes[1] - s).abs() < 1e-15);
        for w in &r2.weights {
            assert!((w - PI.sqrt() / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rule_invariants() {
        for m in [1, 2, 3, 7, 20, 42, 66, 101, 200] {
            let rule = gauss_hermite(m).unwrap();
            let total: f64 = rule.weights.iter().sum();
            assert!((total - PI.sqrt()).abs() < 1e-12, "M={m}: {total}");
            assert!(rule.weights.iter().all(|&w| w > 0.0));
            for i in 0..m {
                assert_eq!(rule.nodes[i], -rule.nodes[m - 1 - i]);
            }
            if m >= 2 {
                let second = rule.integrate(|u| u * u);
                assert!((second - PI.sqrt() / 2.0).abs() < 1e-12, "M={m}");
            }
        }
        assert!(gauss_hermite(0).is_err());
        assert!(gauss_hermite(201).is_err());
    }

    #[test]
    fn hermite_function_orthonormality() {
        for j in 0..12u32 {
            for k in 0..12u32 {
                let rule = gauss_hermite((j + k + 1) as usize).unwrap();
                // ∫ h_j h_k dq = ∫ e^{-q²} g_j g_k dq
                let integral = rule.integrate(|q| {
                    let g = hermite_normalized_polys(j.max(k), q);
                    g[j as usize] * g[k as usize]
                });
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((integral - want).abs() < 1e-12, "j={j} k={k}: {integral}");
            }
        }
    }
}
