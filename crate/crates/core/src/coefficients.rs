use serde::{Deserialize, Serialize};

use crate::error::{Result, VibronError};

/// Real amplitudes `c[n, m]` of a state `Σ c[n, m] |N; n, n − 2m⟩`,
/// stored densely over the triangle `0 ≤ m ≤ n ≤ N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    vibrons: u32,
    amplitudes: Vec<f64>,
}

#[inline]
fn tri_index(n: u32, m: u32) -> usize {
    let n = n as usize;
    n * (n + 1) / 2 + m as usize
}

impl CoefficientTable {
    pub fn zeros(vibrons: u32) -> Self {
        let len = tri_index(vibrons + 1, 0);
        CoefficientTable { vibrons, amplitudes: vec![0.0; len] }
    }

    /// The condensate of N σ bosons, `|N; 0, 0⟩`.
    pub fn vacuum(vibrons: u32) -> Self {
        let mut t = Self::zeros(vibrons);
        t.amplitudes[0] = 1.0;
        t
    }

    pub fn from_fn(vibrons: u32, mut f: impl FnMut(u32, u32) -> f64) -> Self {
        let mut amplitudes = Vec::with_capacity(tri_index(vibrons + 1, 0));
        for n in 0..=vibrons {
            for m in 0..=n {
                amplitudes.push(f(n, m));
            }
        }
        CoefficientTable { vibrons, amplitudes }
    }

    pub fn vibrons(&self) -> u32 {
        self.vibrons
    }

    pub fn get(&self, n: u32, m: u32) -> f64 {
        if n > self.vibrons || m > n {
            return 0.0;
        }
        self.amplitudes[tri_index(n, m)]
    }

    pub fn set(&mut self, n: u32, m: u32, value: f64) -> Result<()> {
        if n > self.vibrons || m > n {
            return Err(VibronError::domain(format!(
                "(n, m) = ({n}, {m}) outside the table for N = {}",
                self.vibrons
            )));
        }
        self.amplitudes[tri_index(n, m)] = value;
        Ok(())
    }

    /// Amplitude of `|N; n, l⟩`, zero for labels outside the basis.
    pub fn get_nl(&self, n: u32, l: i32) -> f64 {
        let diff = n as i64 - l as i64;
        if diff < 0 || diff % 2 != 0 || diff / 2 > n as i64 {
            return 0.0;
        }
        self.get(n, (diff / 2) as u32)
    }

    /// Row `n`: amplitudes for `m = 0..=n`.
    pub fn row(&self, n: u32) -> &[f64] {
        &self.amplitudes[tri_index(n, 0)..tri_index(n + 1, 0)]
    }

    /// Iterates `(n, m, c)` over every stored entry.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        (0..=self.vibrons).flat_map(move |n| (0..=n).map(move |m| (n, m, self.get(n, m))))
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|c| c * c).sum()
    }

    pub fn dot(&self, other: &CoefficientTable) -> f64 {
        assert_eq!(self.vibrons, other.vibrons, "tables for different N");
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&mut self, factor: f64) {
        self.amplitudes.iter_mut().for_each(|c| *c *= factor);
    }

    /// Largest `|c|` over odd-`n` entries; zero for even-parity states.
    pub fn max_odd_amplitude(&self) -> f64 {
        self.iter()
            .filter(|(n, _, _)| n % 2 == 1)
            .map(|(_, _, c)| c.abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let t = CoefficientTable::from_fn(3, |n, m| (10 * n + m) as f64);
        assert_eq!(t.amplitudes().len(), 10);
        assert_eq!(t.get(2, 1), 21.0);
        assert_eq!(t.row(3), &[30.0, 31.0, 32.0, 33.0]);
        assert_eq!(t.get_nl(3, -1), 32.0);
        assert_eq!(t.get_nl(3, 0), 0.0);
        assert_eq!(t.get_nl(2, 4), 0.0);
        assert_eq!(t.get(4, 0), 0.0);
        assert_eq!(t.iter().count(), 10);
    }

    #[test]
    fn vacuum_is_normalized_and_even() {
        let v = CoefficientTable::vacuum(7);
        assert_eq!(v.norm_squared(), 1.0);
        assert_eq!(v.max_odd_amplitude(), 0.0);
        let mut w = v.clone();
        assert!(w.set(8, 0, 1.0).is_err());
        w.set(3, 1, 0.5).unwrap();
        assert_eq!(w.max_odd_amplitude(), 0.5);
    }
}
