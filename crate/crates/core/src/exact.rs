//! Exact eigenpairs of Ĥ(ξ), one angular-momentum sector at a time.

use crate::coefficients::CoefficientTable;
use crate::error::{Result, VibronError};
use crate::model::{hamiltonian_block, AngularBlock, ModelPoint};

/// Relative window inside which two sector ground energies count as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub l: i32,
    /// Full block spectrum, ascending.
    pub energies: Vec<f64>,
    /// Eigenvectors in the block basis `n = |l|, |l|+2, …`, matching `energies`.
    pub eigenvectors: Vec<Vec<f64>>,
    pub ground_vector: CoefficientTable,
    pub ground_energy_per_particle: f64,
}

impl SpectralResult {
    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }
}

pub fn diagonalize_block(point: ModelPoint, l: i32) -> Result<SpectralResult> {
    let block = AngularBlock::new(point.n(), l)?;
    let h = hamiltonian_block(point, l)?;
    let eig = h.eigen().map_err(|e| match e {
        VibronError::NoConvergence { context } => VibronError::NoConvergence {
            context: format!("sector l = {l}, N = {}, ξ = {}: {context}", point.n(), point.xi()),
        },
        other => other,
    })?;

    let mut eigenvectors = eig.vectors;
    for v in eigenvectors.iter_mut() {
        fix_phase(v);
    }

    let mut ground_vector = CoefficientTable::zeros(point.n());
    for (&n, &c) in block.n_values.iter().zip(&eigenvectors[0]) {
        let m = ((n as i64 - l as i64) / 2) as u32;
        ground_vector.set(n, m, c)?;
    }

    Ok(SpectralResult {
        l,
        ground_energy_per_particle: eig.values[0] / point.n() as f64,
        energies: eig.values,
        eigenvectors,
        ground_vector,
    })
}

// lowest-n component non-negative
fn fix_phase(v: &mut [f64]) {
    if let Some(&lead) = v.iter().find(|c| c.abs() > 1e-300) {
        if lead < 0.0 {
            v.iter_mut().for_each(|c| *c = -*c);
        }
    }
}

/// Global ground state over the sectors `l = 0, 1, …, N`.
///
/// Sectors whose ground energies agree within [`DEGENERACY_TOLERANCE`]
/// (relative, floored at 1) resolve to the smallest `|l|`, so the `l = 0`
/// member of the SO(3) multiplet is reported at `ξ = 1`.
pub fn ground_state(point: ModelPoint) -> Result<SpectralResult> {
    let mut best: Option<SpectralResult> = None;
    for l in 0..=point.n() as i32 {
        let candidate = diagonalize_block(point, l)?;
        best = Some(match best {
            None => candidate,
            Some(current) => {
                let e_best = current.ground_energy();
                let window = DEGENERACY_TOLERANCE * e_best.abs().max(1.0);
                if candidate.ground_energy() < e_best - window {
                    candidate
                } else {
                    current
                }
            }
        });
    }
    Ok(best.expect("sector l = 0 always exists"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_number_operator() {
        let r = diagonalize_block(ModelPoint::new(2, 0.0).unwrap(), 0).unwrap();
        assert_eq!(r.energies, vec![0.0, 2.0]);
        assert_eq!(r.ground_vector, CoefficientTable::vacuum(2));
        assert_eq!(r.ground_energy_per_particle, 0.0);
    }

    #[test]
    fn stretched_sector_is_one_by_one() {
        let r = diagonalize_block(ModelPoint::new(2, 1.0).unwrap(), 2).unwrap();
        assert_eq!(r.energies, vec![0.0]);
        assert_eq!(r.ground_vector.get_nl(2, 2), 1.0);
    }

    #[test]
    fn vacuum_ground_state() {
        let g = ground_state(ModelPoint::new(8, 0.0).unwrap()).unwrap();
        assert_eq!(g.l, 0);
        assert_eq!(g.ground_energy(), 0.0);
        assert_eq!(g.ground_vector, CoefficientTable::vacuum(8));
    }

    #[test]
    fn ground_sector_is_l0() {
        for (n, xi) in [(8, 0.1), (20, 0.6), (5, 1.0), (32, 1.0), (3, 0.2)] {
            let g = ground_state(ModelPoint::new(n, xi).unwrap()).unwrap();
            assert_eq!(g.l, 0, "N={n} ξ={xi}");
            assert_eq!(g.ground_vector.max_odd_amplitude(), 0.0);
            assert!((g.ground_vector.norm_squared() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn phase_convention() {
        let g = ground_state(ModelPoint::new(10, 0.7).unwrap()).unwrap();
        assert!(g.ground_vector.get(0, 0) >= 0.0);
    }

    #[test]
    fn bad_sector() {
        assert!(diagonalize_block(ModelPoint::new(4, 0.3).unwrap(), -5).is_err());
    }
}
