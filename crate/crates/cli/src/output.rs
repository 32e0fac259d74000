use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::scan::ScanRow;
use crate::CliError;

pub const CSV_HEADER: &str = "N,xi,ansatz,observable,value,l_sector,r_e";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

/// `printf("%.15g")`: 15 significant digits, trailing zeros dropped,
/// exponent form outside `1e-4 ≤ |v| < 1e15`.
pub fn format_g15(v: f64) -> String {
    const DIGITS: i32 = 15;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, v);
        trim_fraction(&fixed).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn optional<T>(v: Option<T>, f: impl FnOnce(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

pub fn render_csv(rows: &[ScanRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.n,
            format_g15(r.xi),
            r.ansatz,
            r.observable,
            optional(r.value, format_g15),
            optional(r.l_sector, |l| l.to_string()),
            optional(r.r_e, format_g15),
        );
    }
    out
}

pub fn render_json(rows: &[ScanRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn render(rows: &[ScanRow], format: Format) -> String {
    match format {
        Format::Csv => render_csv(rows),
        Format::Json => render_json(rows),
    }
}

/// Writes to a temporary file in the target directory, then renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g15_matches_printf() {
        assert_eq!(format_g15(0.0), "0");
        assert_eq!(format_g15(1.0), "1");
        assert_eq!(format_g15(0.25), "0.25");
        assert_eq!(format_g15(0.07), "0.07");
        assert_eq!(format_g15(0.1 + 0.2), "0.3");
        assert_eq!(format_g15(-1.5), "-1.5");
        assert_eq!(format_g15(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(format_g15(123456.0), "123456");
        assert_eq!(format_g15(1e-5), "1e-05");
        assert_eq!(format_g15(0.0001), "0.0001");
        assert_eq!(format_g15(2.5e-12), "2.5e-12");
        assert_eq!(format_g15(1e15), "1e+15");
        assert_eq!(format_g15(999999999999999.0), "999999999999999");
        assert_eq!(format_g15(9.999999999999999e14), "1e+15");
    }

    #[test]
    fn format_parses() {
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.csv");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
