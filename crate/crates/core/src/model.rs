//! Basis of the totally symmetric U(3) representation `[N]` and the
//! angular-momentum blocks of n̂, Ŵ² and Ĥ(ξ).

use serde::{Deserialize, Serialize};

use crate::error::{Result, VibronError};
use crate::tridiag::SymTridiagonal;

/// One Hamiltonian instance: vibron number `N` and control parameter `ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelPoint {
    n: u32,
    xi: f64,
}

impl ModelPoint {
    pub fn new(n: u32, xi: f64) -> Result<Self> {
        if n < 2 {
            return Err(VibronError::domain(format!("vibron number N = {n} must be at least 2")));
        }
        if !(0.0..=1.0).contains(&xi) {
            return Err(VibronError::domain(format!("control parameter ξ = {xi} outside [0, 1]")));
        }
        Ok(ModelPoint { n, xi })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }
}

/// Quantum numbers `(n, l)` of the basis vector `|N; n, l⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisLabel {
    pub n: u32,
    pub l: i32,
}

impl BasisLabel {
    pub fn new(vibrons: u32, n: u32, l: i32) -> Result<Self> {
        let label = BasisLabel { n, l };
        if label.is_valid(vibrons) {
            Ok(label)
        } else {
            Err(VibronError::domain(format!("(n, l) = ({n}, {l}) is not a basis label for N = {vibrons}")))
        }
    }

    pub fn is_valid(&self, vibrons: u32) -> bool {
        self.n <= vibrons && self.l.unsigned_abs() <= self.n && (self.n as i64 - self.l as i64) % 2 == 0
    }

    /// Index `m` with `l = n − 2m`; counts τ₋ quanta.
    pub fn m(&self) -> u32 {
        ((self.n as i64 - self.l as i64) / 2) as u32
    }
}

/// Eigenvalue `(−1)ⁿ` of the parity operator `exp(iπn̂)`.
pub fn parity(label: BasisLabel) -> i8 {
    if label.n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All basis labels for vibron number `N`, ordered by `n` then `l`.
pub fn enumerate_basis(vibrons: u32) -> Vec<BasisLabel> {
    (0..=vibrons)
        .flat_map(|n| (0..=n).rev().map(move |m| BasisLabel { n, l: n as i32 - 2 * m as i32 }))
        .collect()
}

pub fn basis_dimension(vibrons: u32) -> usize {
    let n = vibrons as usize;
    (n + 1) * (n + 2) / 2
}

/// Fixed-`l` sector: `n = |l|, |l| + 2, …` up to `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngularBlock {
    pub l: i32,
    pub n_values: Vec<u32>,
}

impl AngularBlock {
    pub fn new(vibrons: u32, l: i32) -> Result<Self> {
        let abs_l = l.unsigned_abs();
        if abs_l > vibrons {
            return Err(VibronError::domain(format!("|l| = {abs_l} exceeds N = {vibrons}")));
        }
        let n_values = (abs_l..=vibrons).step_by(2).collect();
        Ok(AngularBlock { l, n_values })
    }

    pub fn dim(&self) -> usize {
        self.n_values.len()
    }

    pub fn parity(&self) -> i8 {
        if self.l % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// `⟨N; n′, l | Ŵ² | N; n, l⟩`.
///
/// Only `n′ = n` and `n′ = n ± 2` couple. Square roots are taken of exact
/// integer products.
pub fn w2_element(vibrons: u32, n: u32, n_prime: u32, l: i32) -> Result<f64> {
    BasisLabel::new(vibrons, n, l)?;
    BasisLabel::new(vibrons, n_prime, l)?;
    Ok(w2_element_unchecked(vibrons as i64, n as i64, n_prime as i64, l as i64))
}

pub(crate) fn w2_element_unchecked(big_n: i64, n: i64, n_prime: i64, l: i64) -> f64 {
    if n_prime == n {
        ((big_n - n) * (n + 2) + (big_n - n + 1) * n + l * l) as f64
    } else if n_prime == n - 2 {
        -(((big_n - n + 2) * (big_n - n + 1) * (n + l) * (n - l)) as f64).sqrt()
    } else if n_prime == n + 2 {
        -(((big_n - n) * (big_n - n - 1) * (n + l + 2) * (n - l + 2)) as f64).sqrt()
    } else {
        0.0
    }
}

/// Ŵ² restricted to the `l` sector, rows ordered by ascending `n`.
pub fn w2_block(vibrons: u32, l: i32) -> Result<SymTridiagonal> {
    let block = AngularBlock::new(vibrons, l)?;
    let big_n = vibrons as i64;
    let l = l as i64;
    let diag = block
        .n_values
        .iter()
        .map(|&n| w2_element_unchecked(big_n, n as i64, n as i64, l))
        .collect();
    let off = block
        .n_values
        .windows(2)
        .map(|w| w2_element_unchecked(big_n, w[0] as i64, w[1] as i64, l))
        .collect();
    Ok(SymTridiagonal::new(diag, off))
}

/// Ĥ(ξ) = (1−ξ)n̂ + ξ(N(N+1) − Ŵ²)/(N−1) on the `l` sector.
pub fn hamiltonian_block(point: ModelPoint, l: i32) -> Result<SymTridiagonal> {
    let vibrons = point.n();
    let xi = point.xi();
    let w2 = w2_block(vibrons, l)?;
    let block = AngularBlock::new(vibrons, l)?;
    let casimir = (vibrons as f64) * (vibrons as f64 + 1.0);
    let denom = vibrons as f64 - 1.0;
    let diag = block
        .n_values
        .iter()
        .zip(&w2.diag)
        .map(|(&n, w)| (1.0 - xi) * n as f64 + xi * (casimir - w) / denom)
        .collect();
    let off = w2.off.iter().map(|w| -xi * w / denom).collect();
    Ok(SymTridiagonal::new(diag, off))
}
