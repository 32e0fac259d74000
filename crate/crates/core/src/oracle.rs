//! Independent brute-force references.
//!
//! Nothing here goes through the blocked matrices, the log-space
//! amplitudes or the hypergeometric series: Ŵ² is rebuilt from boson ladder
//! operators on the full Fock space, series are summed in exact integers,
//! and the N = 2, 3 cat equilibria use their closed forms.

use crate::coefficients::CoefficientTable;
use crate::model::BasisLabel;

/// Occupations `(σ, τ₊, τ₋)` of the `N`-boson states, in basis-label order.
fn fock_states(vibrons: u32) -> Vec<[u32; 3]> {
    crate::model::enumerate_basis(vibrons)
        .into_iter()
        .map(|b| {
            let m = b.m();
            [vibrons - b.n, b.n - m, m]
        })
        .collect()
}

/// Dense matrix of `a†_create a_annihilate` on the fixed-N Fock space.
fn bilinear(states: &[[u32; 3]], create: usize, annihilate: usize) -> Vec<Vec<f64>> {
    let dim = states.len();
    let mut out = vec![vec![0.0; dim]; dim];
    for (col, s) in states.iter().enumerate() {
        if s[annihilate] == 0 {
            continue;
        }
        let mut t = *s;
        let mut amp = (t[annihilate] as f64).sqrt();
        t[annihilate] -= 1;
        t[create] += 1;
        amp *= (t[create] as f64).sqrt();
        let row = states.iter().position(|x| *x == t).expect("boson number conserved");
        out[row][col] += amp;
    }
    out
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0.0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn lincomb(terms: &[(f64, &Vec<Vec<f64>>)]) -> Vec<Vec<f64>> {
    let n = terms[0].1.len();
    let mut out = vec![vec![0.0; n]; n];
    for (coef, m) in terms {
        for i in 0..n {
            for j in 0..n {
                out[i][j] += coef * m[i][j];
            }
        }
    }
    out
}

/// Ŵ² = (D₊D₋ + D₋D₊)/2 + l̂² from `D₊ = √2(τ₊†σ − σ†τ₋)`,
/// `D₋ = √2(−τ₋†σ + σ†τ₊)` and `l̂ = τ₊†τ₊ − τ₋†τ₋`, rows and columns
/// ordered like [`crate::model::enumerate_basis`].
pub fn fock_w2_matrix(vibrons: u32) -> (Vec<BasisLabel>, Vec<Vec<f64>>) {
    const SIGMA: usize = 0;
    const TAU_PLUS: usize = 1;
    const TAU_MINUS: usize = 2;
    let states = fock_states(vibrons);
    let root2 = std::f64::consts::SQRT_2;
    let d_plus = lincomb(&[
        (root2, &bilinear(&states, TAU_PLUS, SIGMA)),
        (-root2, &bilinear(&states, SIGMA, TAU_MINUS)),
    ]);
    let d_minus = lincomb(&[
        (-root2, &bilinear(&states, TAU_MINUS, SIGMA)),
        (root2, &bilinear(&states, SIGMA, TAU_PLUS)),
    ]);
    let l_op = lincomb(&[
        (1.0, &bilinear(&states, TAU_PLUS, TAU_PLUS)),
        (-1.0, &bilinear(&states, TAU_MINUS, TAU_MINUS)),
    ]);
    let w2 = lincomb(&[
        (0.5, &matmul(&d_plus, &d_minus)),
        (0.5, &matmul(&d_minus, &d_plus)),
        (1.0, &matmul(&l_op, &l_op)),
    ]);
    (crate::model::enumerate_basis(vibrons), w2)
}

/// Full Ŵ² assembled from an element function `(N, n, n′, l) ↦ ⟨n′, l|Ŵ²|n, l⟩`.
pub fn dense_from_elements(vibrons: u32, element: impl Fn(u32, u32, u32, i32) -> f64) -> Vec<Vec<f64>> {
    let labels = crate::model::enumerate_basis(vibrons);
    labels
        .iter()
        .map(|row| {
            labels
                .iter()
                .map(|col| {
                    if row.l != col.l {
                        return 0.0;
                    }
                    let dn = row.n as i64 - col.n as i64;
                    if dn == 0 || dn.abs() == 2 {
                        element(vibrons, col.n, row.n, col.l)
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

fn table_vector(state: &CoefficientTable) -> Vec<f64> {
    crate::model::enumerate_basis(state.vibrons())
        .iter()
        .map(|b| state.get(b.n, b.m()))
        .collect()
}

/// `⟨ψ|A|ψ⟩` for a dense operator in basis-label order.
pub fn dense_expectation(matrix: &[Vec<f64>], state: &CoefficientTable) -> f64 {
    let v = table_vector(state);
    matrix
        .iter()
        .zip(&v)
        .map(|(row, vi)| vi * row.iter().zip(&v).map(|(a, vj)| a * vj).sum::<f64>())
        .sum()
}

/// `⟨ψ|n̂|ψ⟩` by direct summation.
pub fn number_expectation(state: &CoefficientTable) -> f64 {
    state.iter().map(|(n, _, c)| n as f64 * c * c).sum()
}

/// `⟨ψ|Ĥ(ξ)|ψ⟩ / N` from the Fock-space Ŵ².
pub fn energy_per_particle(state: &CoefficientTable, xi: f64) -> f64 {
    let big_n = state.vibrons() as f64;
    let (_, w2) = fock_w2_matrix(state.vibrons());
    let w2_mean = dense_expectation(&w2, state);
    let n_mean = number_expectation(state);
    ((1.0 - xi) * n_mean + xi * (big_n * (big_n + 1.0) - w2_mean) / (big_n - 1.0)) / big_n
}

pub fn binomial_u128(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j + 1) as u128)
}

/// `Σₖ C(N,k)² pᵏ qᴺ⁻ᵏ` in exact integers; equals `q^N ₂F₁(−N,−N;1;p/q)`.
pub fn scaled_hyp2f1_exact(n: u32, p: i128, q: i128) -> i128 {
    (0..=n)
        .map(|k| {
            let b = binomial_u128(n, k) as i128;
            b * b * p.pow(k) * q.pow(n - k)
        })
        .sum()
}

/// `Σₖ C(2k,k) C(N,k)² pᵏ (4q)ᴺ⁻ᵏ` in exact integers; equals
/// `(4q)^N ₃F₂(½,−N,−N;1,1;p/q)` since `(½)ₖ/k! = C(2k,k)/4ᵏ`.
pub fn scaled_hyp3f2_exact(n: u32, p: i128, q: i128) -> i128 {
    (0..=n)
        .map(|k| {
            let b = binomial_u128(n, k) as i128;
            binomial_u128(2 * k, k) as i128 * b * b * p.pow(k) * (4 * q).pow(n - k)
        })
        .sum()
}

/// Closed-form even-cat equilibrium `(r_e, E)` for `N = 2` and `N = 3`,
/// continued to `(0, 0)` at `ξ = 0`.
pub fn cat_equilibrium_closed_form(n: u32, xi: f64) -> Option<(f64, f64)> {
    if xi == 0.0 && (n == 2 || n == 3) {
        return Some((0.0, 0.0));
    }
    match n {
        2 => {
            let root = (1.0 - 2.0 * xi + 5.0 * xi * xi).sqrt();
            let r = (0.5 - 0.5 / xi + root / (2.0 * xi)).sqrt();
            let e = 0.5 * (1.0 + xi - (1.0 + xi * (-2.0 + 5.0 * xi)).sqrt());
            Some((r, e))
        }
        3 => {
            let root = (1.0 - 4.0 * xi + 7.0 * xi * xi).sqrt();
            let r = (2.0 / 3.0 - 1.0 / (3.0 * xi) + root / (3.0 * xi)).sqrt();
            let e = (1.0 + xi - (1.0 + xi * (-4.0 + 7.0 * xi)).sqrt()) / 3.0;
            Some((r, e))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::w2_element;

    #[test]
    fn fock_w2_matches_displayed_elements() {
        for big_n in 0..=6 {
            let (_, fock) = fock_w2_matrix(big_n);
            let shown = dense_from_elements(big_n, |nn, n, np, l| w2_element(nn, n, np, l).unwrap());
            for (a, b) in fock.iter().flatten().zip(shown.iter().flatten()) {
                assert!((a - b).abs() < 1e-12, "N={big_n}");
            }
        }
    }

    #[test]
    fn exact_integer_series() {
        assert_eq!(scaled_hyp2f1_exact(2, 1, 1), 6);
        assert_eq!(scaled_hyp2f1_exact(2, -1, 1), -2);
        assert_eq!(scaled_hyp3f2_exact(1, 1, 1), 6); // 4 · 3/2
        assert_eq!(binomial_u128(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn closed_forms_known_points() {
        let (r, e) = cat_equilibrium_closed_form(2, 0.5).unwrap();
        assert!((r - 0.786_151_377_757_423).abs() < 1e-12);
        assert!((e - 0.190_983_005_625_052_6).abs() < 1e-12);
        assert!(cat_equilibrium_closed_form(4, 0.5).is_none());
    }
}
