//! `key = value` configuration files. Lines starting with `#` are ignored;
//! keys may use `-` or `_` (`xi-step` and `xi_step` are the same key).

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::output::Format;
use crate::spec::{Ansatz, Observable, Preset};
use crate::CliError;

/// Scan settings that may come from a config file or the command line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub preset: Option<Preset>,
    pub n: Option<Vec<u32>>,
    pub xi_start: Option<f64>,
    pub xi_stop: Option<f64>,
    pub xi_step: Option<f64>,
    pub ansatz: Option<Vec<Ansatz>>,
    pub observables: Option<Vec<Observable>>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
}

impl Overrides {
    /// Fields set in `over` win.
    pub fn layered(self, over: Overrides) -> Overrides {
        Overrides {
            preset: over.preset.or(self.preset),
            n: over.n.or(self.n),
            xi_start: over.xi_start.or(self.xi_start),
            xi_stop: over.xi_stop.or(self.xi_stop),
            xi_step: over.xi_step.or(self.xi_step),
            ansatz: over.ansatz.or(self.ansatz),
            observables: over.observables.or(self.observables),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
            workers: over.workers.or(self.workers),
        }
    }

    pub fn from_file(path: &Path) -> Result<Overrides, CliError> {
        let text = std::fs::read_to_string(path)?;
        parse_config(&text)
    }
}

fn scalar<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| CliError::Usage(format!("config key `{key}`: {e}")))
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| scalar(key, s))
        .collect()
}

pub fn parse_config(text: &str) -> Result<Overrides, CliError> {
    let mut o = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected `key = value`", lineno + 1))
        })?;
        let key = key.trim().replace('-', "_").to_ascii_lowercase();
        let value = value.trim();
        match key.as_str() {
            "preset" => o.preset = Some(scalar(&key, value)?),
            "n" => o.n = Some(list(&key, value)?),
            "xi_start" => o.xi_start = Some(scalar(&key, value)?),
            "xi_stop" => o.xi_stop = Some(scalar(&key, value)?),
            "xi_step" => o.xi_step = Some(scalar(&key, value)?),
            "ansatz" => o.ansatz = Some(list(&key, value)?),
            "observables" => o.observables = Some(list(&key, value)?),
            "out" => o.out = Some(PathBuf::from(value)),
            "format" => o.format = Some(scalar(&key, value)?),
            "workers" => o.workers = Some(scalar(&key, value)?),
            _ => {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key `{key}`",
                    lineno + 1
                )))
            }
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let o = parse_config(
            "# sweep\npreset = fig3\nn = 8, 20\nxi-start = 0.1\nxi_stop=0.5\nxi_step = 0.1\n\
             ansatz = exact,cat\nobservables = purity\nout = a.csv\nformat = json\nworkers = 3\n",
        )
        .unwrap();
        assert_eq!(o.preset, Some(Preset::Fig3));
        assert_eq!(o.n, Some(vec![8, 20]));
        assert_eq!(o.xi_start, Some(0.1));
        assert_eq!(o.ansatz, Some(vec![Ansatz::Exact, Ansatz::Cat]));
        assert_eq!(o.observables, Some(vec![Observable::Purity]));
        assert_eq!(o.format, Some(Format::Json));
        assert_eq!(o.workers, Some(3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_config("n = eight").is_err());
        assert!(parse_config("colour = blue").is_err());
        assert!(parse_config("just words").is_err());
    }

    #[test]
    fn later_layer_wins() {
        let file = parse_config("n = 8\nxi_step = 0.1").unwrap();
        let flags = Overrides { n: Some(vec![20]), ..Default::default() };
        let o = file.layered(flags);
        assert_eq!(o.n, Some(vec![20]));
        assert_eq!(o.xi_step, Some(0.1));
    }
}
