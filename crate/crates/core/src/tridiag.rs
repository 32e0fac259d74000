//! Real symmetric tridiagonal matrices and their eigendecomposition by the
//! implicit-shift QL algorithm.

use crate::error::{Result, VibronError};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal (`off[k]` couples rows `k` and `k + 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// Eigenvalues in ascending order with the matching orthonormal
/// eigenvectors (`vectors[j]` belongs to `values[j]`).
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(
            off.len() + 1 == diag.len() || (diag.is_empty() && off.is_empty()),
            "off-diagonal must be one shorter than the diagonal"
        );
        SymTridiagonal { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if i + 1 == j {
            self.off[i]
        } else if j + 1 == i {
            self.off[j]
        } else {
            0.0
        }
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.off[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Max-row-sum norm, an upper bound for the spectral radius.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim())
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.off[i - 1].abs();
                }
                if i < self.off.len() {
                    s += self.off[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        ql_implicit(&mut d, &mut e, None)?;
        d.sort_by(f64::total_cmp);
        Ok(d)
    }

    pub fn eigen(&self) -> Result<Eigen> {
        let n = self.dim();
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        // z[row][col], columns become eigenvectors
        let mut z = vec![vec![0.0; n]; n];
        for (i, row) in z.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        ql_implicit(&mut d, &mut e, Some(&mut z))?;

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
        let values = order.iter().map(|&j| d[j]).collect();
        let vectors = order
            .iter()
            .map(|&j| z.iter().map(|row| row[j]).collect())
            .collect();
        Ok(Eigen { values, vectors })
    }
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
///
/// On entry `d` holds the diagonal and `e[0..n-1]` the off-diagonal
/// (`e[n-1]` is workspace). On exit `d` holds the unsorted eigenvalues and,
/// when `z` is given, its columns are rotated into the eigenvectors.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut Vec<Vec<f64>>>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            // find a negligible off-diagonal element to split the matrix
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                return Err(VibronError::NoConvergence {
                    context: format!("eigenvalue {l} of a {n}x{n} block"),
                });
            }

            // Wilkinson-style shift from the leading 2x2
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for row in z.iter_mut() {
                        let zi1 = row[i + 1];
                        row[i + 1] = s * row[i] + c * zi1;
                        row[i] = c * row[i] - s * zi1;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(t: &SymTridiagonal, value: f64, v: &[f64]) -> f64 {
        t.mul_vec(v)
            .iter()
            .zip(v)
            .map(|(hv, vi)| (hv - value * vi).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn two_by_two_closed_form() {
        let t = SymTridiagonal::new(vec![2.0, 0.0], vec![2.0 * 2f64.sqrt()]);
        let ev = t.eigenvalues().unwrap();
        // trace 2, det -8
        assert!((ev[0] - (1.0 - 3.0)).abs() < 1e-14);
        assert!((ev[1] - (1.0 + 3.0)).abs() < 1e-14);
    }

    #[test]
    fn one_by_one_and_empty() {
        let t = SymTridiagonal::new(vec![3.5], vec![]);
        let eig = t.eigen().unwrap();
        assert_eq!(eig.values, vec![3.5]);
        assert_eq!(eig.vectors, vec![vec![1.0]]);
        let e = SymTridiagonal::new(vec![], vec![]);
        assert!(e.eigen().unwrap().values.is_empty());
    }

    #[test]
    fn laplacian_spectrum_and_residuals() {
        // tridiag(-1, 2, -1) has eigenvalues 2 - 2cos(kπ/(n+1))
        let n = 40;
        let t = SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]);
        let eig = t.eigen().unwrap();
        for (k, v) in eig.values.iter().enumerate() {
            let exact = 2.0
                - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13, "k={k}: {v} vs {exact}");
        }
        let norm = t.norm_inf();
        for (val, vec) in eig.values.iter().zip(&eig.vectors) {
            assert!(residual(&t, *val, vec) <= 1e-12 * norm);
        }
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = eig.vectors[i].iter().zip(&eig.vectors[j]).map(|(a, b)| a * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn decoupled_blocks() {
        let t = SymTridiagonal::new(vec![5.0, 1.0, -2.0, 7.0], vec![0.0, 0.0, 0.0]);
        assert_eq!(t.eigenvalues().unwrap(), vec![-2.0, 1.0, 5.0, 7.0]);
    }
}
