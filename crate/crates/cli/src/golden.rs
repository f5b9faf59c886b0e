//! Golden report files: byte-stable writes and tolerance-aware comparison.
//!
//! Strings of the form `p/q` and JSON integers compare exactly. Strings that
//! parse as decimals and JSON floats compare within the run tolerance.

use std::path::Path;

use qcft::report::CheckReport;
use serde_json::Value;

use crate::error::CliError;

/// Pretty JSON with a trailing newline.
pub fn render(reports: &[CheckReport]) -> String {
    let mut text = serde_json::to_string_pretty(reports).expect("reports serialize");
    text.push('\n');
    text
}

pub fn write_golden(reports: &[CheckReport], path: &Path) -> Result<(), CliError> {
    std::fs::write(path, render(reports)).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))
}

/// `Ok(true)` on agreement, `GoldenMismatch` naming the first differing
/// record otherwise.
pub fn compare_golden(reports: &[CheckReport], path: &Path, tolerance: f64) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    let golden: Vec<Value> = serde_json::from_str(&text)
        .map_err(|e| CliError::Io(path.display().to_string(), format!("not a report array: {e}")))?;
    let current: Vec<Value> = reports
        .iter()
        .map(|r| serde_json::to_value(r).expect("reports serialize"))
        .collect();
    for (index, (a, b)) in current.iter().zip(&golden).enumerate() {
        if let Some(reason) = difference(a, b, tolerance, "") {
            return Err(CliError::GoldenMismatch { index, name: record_name(a), reason });
        }
    }
    if current.len() != golden.len() {
        let index = current.len().min(golden.len());
        let name = current.get(index).or_else(|| golden.get(index)).map(record_name).unwrap_or_default();
        return Err(CliError::GoldenMismatch {
            index,
            name,
            reason: format!("record count {} vs golden {}", current.len(), golden.len()),
        });
    }
    Ok(true)
}

fn record_name(v: &Value) -> String {
    v.get("name").and_then(Value::as_str).unwrap_or("?").to_string()
}

fn decimal(s: &str) -> Option<f64> {
    if s.contains('/') {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn close(a: f64, b: f64, tolerance: f64) -> bool {
    (a - b).abs() <= tolerance * a.abs().max(b.abs()).max(1.0)
}

fn difference(a: &Value, b: &Value, tol: f64, at: &str) -> Option<String> {
    let mismatch = || Some(format!("{at}: {a} vs golden {b}"));
    match (a, b) {
        (Value::String(x), Value::String(y)) => match (decimal(x), decimal(y)) {
            (Some(p), Some(q)) if close(p, q, tol) => None,
            _ if x == y => None,
            _ => mismatch(),
        },
        (Value::Number(x), Value::Number(y)) => {
            if x.is_f64() || y.is_f64() {
                let (p, q) = (x.as_f64()?, y.as_f64()?);
                if close(p, q, tol) { None } else { mismatch() }
            } else if x == y {
                None
            } else {
                mismatch()
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                return Some(format!("{at}: length {} vs golden {}", x.len(), y.len()));
            }
            x.iter()
                .zip(y)
                .enumerate()
                .find_map(|(i, (p, q))| difference(p, q, tol, &format!("{at}[{i}]")))
        }
        (Value::Object(x), Value::Object(y)) => {
            if x.keys().ne(y.keys()) {
                return Some(format!("{at}: fields differ"));
            }
            x.iter().find_map(|(k, p)| difference(p, &y[k], tol, &format!("{at}.{k}")))
        }
        _ if a == b => None,
        _ => mismatch(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcft::report::CheckReport;

    fn sample() -> Vec<CheckReport> {
        vec![
            CheckReport::exact("exact", true).sides("-1/60", "-1/60"),
            CheckReport::new("numeric", true, "1.2345678901234567e-12")
                .details(serde_json::json!({"values": [-1, 45], "deviation": 3.5e-13})),
        ]
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        write_golden(&sample(), &path).unwrap();
        assert_eq!(compare_golden(&sample(), &path, 1e-8), Ok(true));
        assert_eq!(std::fs::read_to_string(&path).unwrap(), render(&sample()));
    }

    #[test]
    fn exact_perturbation_is_caught() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        write_golden(&sample(), &path).unwrap();
        let mut changed = sample();
        changed[0].lhs = Some("-1/61".into());
        match compare_golden(&changed, &path, 1e-8) {
            Err(CliError::GoldenMismatch { index, name, .. }) => {
                assert_eq!((index, name.as_str()), (0, "exact"));
            }
            other => panic!("{other:?}"),
        }
        let mut changed = sample();
        changed[1].details = Some(serde_json::json!({"values": [-1, 46], "deviation": 3.5e-13}));
        assert!(matches!(
            compare_golden(&changed, &path, 1e-8),
            Err(CliError::GoldenMismatch { index: 1, .. })
        ));
    }

    #[test]
    fn numeric_drift_within_tolerance_passes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        write_golden(&sample(), &path).unwrap();
        let mut changed = sample();
        changed[1].residual = "1.2345678901299999e-12".into();
        changed[1].details = Some(serde_json::json!({"values": [-1, 45], "deviation": 3.6e-13}));
        assert_eq!(compare_golden(&changed, &path, 1e-8), Ok(true));
        changed[1].residual = "0.5".into();
        assert!(compare_golden(&changed, &path, 1e-8).is_err());
    }

    #[test]
    fn record_count_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        write_golden(&sample(), &path).unwrap();
        assert!(compare_golden(&sample()[..1], &path, 1e-8).is_err());
    }
}
