use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::config::Overrides;
use crate::output::Format;
use crate::CliError;

pub const DEFAULT_N: [u32; 3] = [8, 20, 32];
pub const DEFAULT_XI_START: f64 = 0.0;
pub const DEFAULT_XI_STOP: f64 = 1.0;
pub const DEFAULT_XI_STEP: f64 = 0.01;

// slack for the last grid point when (stop - start)/step lands just below an integer
const GRID_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ansatz {
    Exact,
    Cs,
    Cat,
}

impl Ansatz {
    pub const ALL: [Ansatz; 3] = [Ansatz::Exact, Ansatz::Cs, Ansatz::Cat];

    pub fn as_str(self) -> &'static str {
        match self {
            Ansatz::Exact => "exact",
            Ansatz::Cs => "cs",
            Ansatz::Cat => "cat",
        }
    }
}

impl fmt::Display for Ansatz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Ansatz {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ansatz::ALL
            .into_iter()
            .find(|a| a.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown ansatz `{s}` (expected exact, cs or cat)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    Energy,
    Radius,
    LinearEntropy,
    VonNeumann,
    Purity,
    IprPosition,
    IprBasis,
    /// Expands to one `lambda_k` row per eigenvalue of the reduced density matrix.
    Lambdas,
}

impl Observable {
    pub const ALL: [Observable; 8] = [
        Observable::Energy,
        Observable::Radius,
        Observable::LinearEntropy,
        Observable::VonNeumann,
        Observable::Purity,
        Observable::IprPosition,
        Observable::IprBasis,
        Observable::Lambdas,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Observable::Energy => "energy",
            Observable::Radius => "radius",
            Observable::LinearEntropy => "linear_entropy",
            Observable::VonNeumann => "von_neumann",
            Observable::Purity => "purity",
            Observable::IprPosition => "ipr_position",
            Observable::IprBasis => "ipr_basis",
            Observable::Lambdas => "lambdas",
        }
    }

    /// The exact ground state has no variational radius.
    pub fn applies_to(self, ansatz: Ansatz) -> bool {
        !(self == Observable::Radius && ansatz == Ansatz::Exact)
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Observable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().replace('-', "_").to_ascii_lowercase();
        Observable::ALL
            .into_iter()
            .find(|o| o.as_str() == key)
            .ok_or_else(|| {
                let names: Vec<_> = Observable::ALL.iter().map(|o| o.as_str()).collect();
                format!("unknown observable `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Named parameter sets matching the four figure data sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Equilibrium radius of the CS and cat trial states.
    Fig1,
    /// Ground-state energy per particle, exact and variational.
    Fig2,
    /// Linear and von Neumann entropies.
    Fig3,
    /// Position-space inverse participation ratio.
    Fig4,
}

impl Preset {
    pub fn n_list(self) -> Vec<u32> {
        match self {
            Preset::Fig1 => vec![2, 3, 8, 32],
            Preset::Fig2 => vec![2, 3, 8],
            Preset::Fig3 => vec![8, 20, 32],
            Preset::Fig4 => vec![8, 20],
        }
    }

    pub fn ansatze(self) -> Vec<Ansatz> {
        match self {
            Preset::Fig1 => vec![Ansatz::Cs, Ansatz::Cat],
            _ => Ansatz::ALL.to_vec(),
        }
    }

    pub fn observables(self) -> Vec<Observable> {
        match self {
            Preset::Fig1 => vec![Observable::Radius],
            Preset::Fig2 => vec![Observable::Energy],
            Preset::Fig3 => vec![Observable::LinearEntropy, Observable::VonNeumann],
            Preset::Fig4 => vec![Observable::IprPosition],
        }
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fig1" => Ok(Preset::Fig1),
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            "fig4" => Ok(Preset::Fig4),
            _ => Err(format!("unknown preset `{s}` (expected fig1, fig2, fig3 or fig4)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl XiGrid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return usage("ξ grid bounds must be finite".into());
        }
        if step <= 0.0 {
            return usage(format!("ξ step must be positive, got {step}"));
        }
        if stop < start {
            return usage(format!("ξ stop {stop} lies below start {start}"));
        }
        if start < 0.0 || stop > 1.0 {
            return usage(format!("ξ grid [{start}, {stop}] leaves [0, 1]"));
        }
        Ok(XiGrid { start, stop, step })
    }

    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + GRID_SLACK).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `start + k·step`, with the endpoint snapped onto `stop` when rounding overshoots it.
    pub fn values(&self) -> Vec<f64> {
        (0..self.len())
            .map(|k| (self.start + k as f64 * self.step).min(self.stop))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    /// Sorted, without duplicates.
    pub n_list: Vec<u32>,
    pub xi: XiGrid,
    /// Canonical order, without duplicates.
    pub observables: Vec<Observable>,
    /// Canonical order, without duplicates.
    pub ansatze: Vec<Ansatz>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub workers: Option<usize>,
}

impl ScanSpec {
    pub fn new(
        n_list: Vec<u32>,
        xi: XiGrid,
        observables: Vec<Observable>,
        ansatze: Vec<Ansatz>,
    ) -> Result<Self, CliError> {
        let mut n_list = n_list;
        n_list.sort_unstable();
        n_list.dedup();
        let mut observables = observables;
        observables.sort_unstable();
        observables.dedup();
        let mut ansatze = ansatze;
        ansatze.sort_unstable();
        ansatze.dedup();

        if n_list.is_empty() {
            return Err(CliError::Usage("N list is empty".into()));
        }
        if let Some(&n) = n_list.iter().find(|&&n| n < 2) {
            return Err(CliError::Usage(format!("N must be at least 2, got {n}")));
        }
        if observables.is_empty() {
            return Err(CliError::Usage("no observables selected".into()));
        }
        if ansatze.is_empty() {
            return Err(CliError::Usage("no ansatz selected".into()));
        }
        Ok(ScanSpec {
            n_list,
            xi,
            observables,
            ansatze,
            out: None,
            format: Format::Csv,
            workers: None,
        })
    }

    /// Defaults, then the preset, then explicit values.
    pub fn from_overrides(o: &Overrides) -> Result<Self, CliError> {
        let preset = o.preset;
        let n_list = o
            .n
            .clone()
            .or_else(|| preset.map(Preset::n_list))
            .unwrap_or_else(|| DEFAULT_N.to_vec());
        let ansatze = o
            .ansatz
            .clone()
            .or_else(|| preset.map(Preset::ansatze))
            .unwrap_or_else(|| Ansatz::ALL.to_vec());
        let observables = o
            .observables
            .clone()
            .or_else(|| preset.map(Preset::observables))
            .ok_or_else(|| CliError::Usage("no observables selected (use --observables or --preset)".into()))?;
        let xi = XiGrid::new(
            o.xi_start.unwrap_or(DEFAULT_XI_START),
            o.xi_stop.unwrap_or(DEFAULT_XI_STOP),
            o.xi_step.unwrap_or(DEFAULT_XI_STEP),
        )?;
        if o.workers == Some(0) {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }

        let mut spec = ScanSpec::new(n_list, xi, observables, ansatze)?;
        spec.out = o.out.clone();
        spec.format = o.format.unwrap_or(Format::Csv);
        spec.workers = o.workers;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts_by_index() {
        assert_eq!(XiGrid::new(0.0, 1.0, 0.01).unwrap().len(), 101);
        assert_eq!(XiGrid::new(0.0, 1.0, 0.25).unwrap().values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(XiGrid::new(0.0, 0.0, 0.01).unwrap().values(), vec![0.0]);
        assert_eq!(XiGrid::new(0.2, 0.3, 0.1).unwrap().len(), 2);
        let v = XiGrid::new(0.0, 1.0, 0.01).unwrap().values();
        assert_eq!(v[100], 1.0);
        assert_eq!(v[7], 7.0 * 0.01);
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(XiGrid::new(0.0, 1.0, 0.0).is_err());
        assert!(XiGrid::new(0.5, 0.4, 0.1).is_err());
        assert!(XiGrid::new(0.0, 1.5, 0.1).is_err());
    }

    #[test]
    fn names_round_trip() {
        for a in Ansatz::ALL {
            assert_eq!(a.as_str().parse::<Ansatz>().unwrap(), a);
        }
        for o in Observable::ALL {
            assert_eq!(o.as_str().parse::<Observable>().unwrap(), o);
        }
        assert_eq!("von-neumann".parse::<Observable>().unwrap(), Observable::VonNeumann);
        assert!("entropy".parse::<Observable>().is_err());
    }

    #[test]
    fn spec_canonicalizes() {
        let xi = XiGrid::new(0.0, 1.0, 0.5).unwrap();
        let s = ScanSpec::new(
            vec![20, 8, 20],
            xi,
            vec![Observable::Purity, Observable::Energy],
            vec![Ansatz::Cat, Ansatz::Exact],
        )
        .unwrap();
        assert_eq!(s.n_list, vec![8, 20]);
        assert_eq!(s.observables, vec![Observable::Energy, Observable::Purity]);
        assert_eq!(s.ansatze, vec![Ansatz::Exact, Ansatz::Cat]);
        assert!(ScanSpec::new(vec![1], xi, vec![Observable::Energy], vec![Ansatz::Cs]).is_err());
        assert!(ScanSpec::new(vec![2], xi, vec![], vec![Ansatz::Cs]).is_err());
    }
}
