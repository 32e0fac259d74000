//! Oracle suites run by the `selfcheck` command. Each check compares an
//! implementation path against an independent reference from
//! [`crate::oracle`] or a closed form.

use std::f64::consts::PI;

use crate::entanglement::{lambda_closed_form, purity_closed_form, rdm_eigenvalues};
use crate::exact::{diagonalize_block, ground_state};
use crate::model::{hamiltonian_block, w2_element, ModelPoint};
use crate::oracle;
use crate::position::{ipr_basis, ipr_basis_closed_form, ipr_position, ipr_position_with_order};
use crate::special::{gauss_hermite, hyp2f1_nn, hyp3f2_half};
use crate::variational::{
    cat_coefficients, cat_energy, cat_equilibrium, cat_mean_n, cat_mean_w2, cs_coefficients, cs_energy,
    cs_equilibrium, AnsatzKind, XI_CRITICAL,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct SelfCheckReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl SelfCheckReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

/// Deterministic radii spread over `(0, 2)`.
pub fn sample_radii(count: usize) -> Vec<f64> {
    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    (1..=count).map(|k| 2.0 * ((k as f64 * GOLDEN).fract()).max(1e-3)).collect()
}

fn xi_grid() -> impl Iterator<Item = f64> {
    (0..=100).map(|k| k as f64 * 0.01)
}

/// Tracks the worst deviation seen in a check.
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Worst { value: 0.0, at: String::new() }
    }

    fn record(&mut self, err: f64, at: impl FnOnce() -> String) {
        if !(err <= self.value) {
            self.value = err;
            self.at = at();
        }
    }

    fn outcome(self, name: &'static str, tol: f64) -> CheckOutcome {
        CheckOutcome {
            name,
            passed: self.value <= tol,
            detail: format!("max deviation {:.3e} (tol {tol:.0e}) {}", self.value, self.at),
        }
    }
}

/// Compares an element function for Ŵ² against the Fock-space construction
/// for `N = 2..=6`.
pub fn check_w2_against_fock(element: impl Fn(u32, u32, u32, i32) -> f64) -> CheckOutcome {
    const TOL: f64 = 1e-12;
    let mut worst = 0.0_f64;
    let mut first_mismatch: Option<String> = None;
    for big_n in 2..=6 {
        let (labels, fock) = oracle::fock_w2_matrix(big_n);
        let built = oracle::dense_from_elements(big_n, &element);
        for (i, row) in fock.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                let err = (a - built[i][j]).abs();
                if !(err <= TOL) && first_mismatch.is_none() {
                    first_mismatch = Some(format!(
                        "first mismatch at N={big_n} {:?} <- {:?}: {} vs {a}",
                        labels[i], labels[j], built[i][j]
                    ));
                }
                worst = if err.is_nan() { f64::INFINITY } else { worst.max(err) };
            }
        }
    }
    CheckOutcome {
        name: "w2-vs-fock-space",
        passed: first_mismatch.is_none(),
        detail: match first_mismatch {
            None => format!("max deviation {worst:.3e} (tol {TOL:.0e}) over N=2..6"),
            Some(m) => m,
        },
    }
}

fn check_cat_closed_forms() -> CheckOutcome {
    let mut worst = Worst::new();
    for n in [2u32, 3] {
        for xi in xi_grid() {
            let (r_cf, e_cf) = oracle::cat_equilibrium_closed_form(n, xi).expect("N = 2, 3");
            match cat_equilibrium(n, xi) {
                Ok(res) => {
                    let err = (res.r_e - r_cf).abs().max((res.energy_per_particle - e_cf).abs());
                    worst.record(err, || format!("at N={n} ξ={xi}"));
                }
                Err(e) => worst.record(f64::INFINITY, || format!("N={n} ξ={xi}: {e}")),
            }
        }
    }
    worst.outcome("cat-equilibrium-n2-n3-closed-form", 1e-8)
}

fn check_mean_field() -> CheckOutcome {
    let mut worst = Worst::new();
    for xi in xi_grid() {
        let res = cs_equilibrium(xi);
        let (r, e) = if xi <= XI_CRITICAL {
            (0.0, xi)
        } else {
            (((5.0 * xi - 1.0) / (3.0 * xi + 1.0)).sqrt(), (-9.0 * xi * xi + 10.0 * xi - 1.0) / (16.0 * xi))
        };
        worst.record((res.r_e - r).abs().max((res.energy_per_particle - e).abs()), || format!("at ξ={xi}"));
        // the returned radius must be a stationary minimum of the functional
        let h = 1e-4;
        let left = cs_energy(xi, (res.r_e - h).abs());
        let right = cs_energy(xi, res.r_e + h);
        if left < res.energy_per_particle - 1e-12 || right < res.energy_per_particle - 1e-12 {
            worst.record(f64::INFINITY, || format!("not a minimum at ξ={xi}"));
        }
    }
    worst.outcome("cs-mean-field-branches", 1e-12)
}

fn check_expectations() -> CheckOutcome {
    let mut worst = Worst::new();
    let radii = sample_radii(5);
    for big_n in 2..=6u32 {
        let (_, w2) = oracle::fock_w2_matrix(big_n);
        for &r in &radii {
            let cat = cat_coefficients(big_n, r, AnsatzKind::CatEven).expect("even cat");
            let cs = cs_coefficients(big_n, r);
            let nf = big_n as f64;
            let pairs = [
                (cat_mean_n(big_n, r).unwrap(), oracle::number_expectation(&cat) / nf),
                (cat_mean_w2(big_n, r).unwrap(), oracle::dense_expectation(&w2, &cat) / nf),
            ];
            for (a, b) in pairs {
                worst.record((a - b).abs(), || format!("means at N={big_n} r={r}"));
            }
            for xi in [0.0, 0.3, 0.77, 1.0] {
                let e_cat = cat_energy(big_n, xi, r).unwrap();
                worst.record((e_cat - oracle::energy_per_particle(&cat, xi)).abs(), || {
                    format!("cat energy at N={big_n} r={r} ξ={xi}")
                });
                worst.record((cs_energy(xi, r) - oracle::energy_per_particle(&cs, xi)).abs(), || {
                    format!("cs energy at N={big_n} r={r} ξ={xi}")
                });
            }
        }
    }
    worst.outcome("ansatz-energies-vs-matrix", 1e-12)
}

fn check_closed_forms_vs_tables() -> CheckOutcome {
    let mut worst = Worst::new();
    for big_n in 1..=12u32 {
        for r in sample_radii(20) {
            for kind in [AnsatzKind::Cs, AnsatzKind::CatEven] {
                let table = match kind {
                    AnsatzKind::Cs => cs_coefficients(big_n, r),
                    _ => cat_coefficients(big_n, r, kind).expect("even cat"),
                };
                let lambdas = rdm_eigenvalues(&table);
                let closed = lambda_closed_form(big_n, r, kind).unwrap();
                for (a, b) in lambdas.iter().zip(&closed) {
                    worst.record((a - b).abs(), || format!("λ at N={big_n} r={r} {kind:?}"));
                }
                let purity: f64 = lambdas.iter().map(|l| l * l).sum();
                worst.record((purity - purity_closed_form(big_n, r, kind).unwrap()).abs(), || {
                    format!("purity at N={big_n} r={r} {kind:?}")
                });
                worst.record((ipr_basis(&table) - ipr_basis_closed_form(big_n, r, kind).unwrap()).abs(), || {
                    format!("basis IPR at N={big_n} r={r} {kind:?}")
                });
            }
        }
    }
    worst.outcome("closed-forms-vs-coefficient-tables", 1e-12)
}

fn check_hypergeometric_exact() -> CheckOutcome {
    let mut worst = Worst::new();
    for n in 0..=15u32 {
        for (p, q) in [(1i128, 1i128), (-1, 1), (1, 2), (-1, 2), (2, 1), (-3, 4)] {
            let x = p as f64 / q as f64;
            let exact2 = oracle::scaled_hyp2f1_exact(n, p, q) as f64 / (q as f64).powi(n as i32);
            let exact3 = oracle::scaled_hyp3f2_exact(n, p, q) as f64 / (4.0 * q as f64).powi(n as i32);
            for (got, want) in [(hyp2f1_nn(n, x), exact2), (hyp3f2_half(n, x), exact3)] {
                let err = if want == 0.0 { got.abs() } else { ((got - want) / want).abs() };
                worst.record(err, || format!("at N={n} x={p}/{q}"));
            }
        }
    }
    worst.outcome("hypergeometric-vs-exact-integers", 1e-10)
}

fn check_quadrature() -> CheckOutcome {
    let mut worst = Worst::new();
    for m in [1usize, 2, 5, 18, 42, 66] {
        match gauss_hermite(m) {
            Ok(rule) => {
                let total: f64 = rule.weights.iter().sum();
                worst.record((total - PI.sqrt()).abs(), || format!("Σw at M={m}"));
            }
            Err(e) => worst.record(f64::INFINITY, || format!("M={m}: {e}")),
        }
    }
    for big_n in 2..=6u32 {
        let cat = cat_coefficients(big_n, 0.9, AnsatzKind::CatEven).expect("even cat");
        let base = ipr_position(&cat);
        let doubled = ipr_position_with_order(&cat, 2 * (2 * big_n as usize + 2));
        match (base, doubled) {
            (Ok(a), Ok(b)) => worst.record((a - b).abs(), || format!("order doubling at N={big_n}")),
            _ => worst.record(f64::INFINITY, || format!("quadrature failed at N={big_n}")),
        }
        let reference = ipr_position(&cs_coefficients(big_n, 0.0)).unwrap_or(f64::NAN);
        for r in [0.3, 0.7, 1.0] {
            let p = ipr_position(&cs_coefficients(big_n, r)).unwrap_or(f64::NAN);
            worst.record((p - reference).abs(), || format!("CS IPR rotation invariance N={big_n} r={r}"));
        }
    }
    worst.outcome("quadrature-exactness", 1e-11)
}

fn check_exact_solver() -> CheckOutcome {
    let mut worst = Worst::new();
    for big_n in [2u32, 3, 8, 20] {
        for xi in [0.0, 0.1, 0.2, 0.35, 0.6, 1.0] {
            let point = ModelPoint::new(big_n, xi).expect("valid point");
            for l in 0..=big_n as i32 {
                let h = hamiltonian_block(point, l).expect("block");
                let spec = match diagonalize_block(point, l) {
                    Ok(s) => s,
                    Err(e) => {
                        worst.record(f64::INFINITY, || e.to_string());
                        continue;
                    }
                };
                let norm = h.norm_inf().max(1.0);
                for (e, v) in spec.energies.iter().zip(&spec.eigenvectors) {
                    let hv = h.mul_vec(v);
                    let res = hv.iter().zip(v).map(|(a, b)| (a - e * b).powi(2)).sum::<f64>().sqrt();
                    worst.record(res / norm * 1e-2, || format!("residual N={big_n} ξ={xi} l={l}"));
                }
            }
            if big_n >= 2 {
                let exact = ground_state(point).map(|g| g.ground_energy_per_particle);
                let cat = cat_equilibrium(big_n, xi).map(|c| c.energy_per_particle);
                if let (Ok(e), Ok(c)) = (exact, cat) {
                    worst.record((e - c).max(0.0), || format!("variational bound N={big_n} ξ={xi}"));
                }
            }
        }
    }
    // residual entries are scaled so that 1e-10·‖H‖ maps onto the 1e-12 gate
    worst.outcome("exact-solver-residuals-and-bound", 1e-12)
}

pub fn run_selfcheck() -> SelfCheckReport {
    let outcomes = vec![
        check_w2_against_fock(|n, a, b, l| w2_element(n, a, b, l).unwrap_or(f64::NAN)),
        check_cat_closed_forms(),
        check_mean_field(),
        check_expectations(),
        check_closed_forms_vs_tables(),
        check_hypergeometric_exact(),
        check_quadrature(),
        check_exact_solver(),
    ];
    SelfCheckReport { outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_build_passes() {
        let report = run_selfcheck();
        for o in &report.outcomes {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }

    #[test]
    fn flipped_off_diagonal_sign_is_caught() {
        let mutated = |n: u32, a: u32, b: u32, l: i32| {
            let v = w2_element(n, a, b, l).unwrap();
            if a == b {
                v
            } else {
                -v
            }
        };
        let outcome = check_w2_against_fock(mutated);
        assert!(!outcome.passed);
        assert!(outcome.detail.contains("N=2"), "{}", outcome.detail);
    }
}
