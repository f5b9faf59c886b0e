//! Run configuration: defaults, a line-based config file, the `QCFT_ORDER`
//! environment variable, and command-line overrides.

use std::path::{Path, PathBuf};

use crate::error::CliError;

pub const DEFAULT_ORDER: usize = 201;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const MIN_ORDER: usize = 8;
pub const MAX_TOLERANCE: f64 = 1e-2;
pub const ORDER_ENV: &str = "QCFT_ORDER";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub order: usize,
    pub float_tolerance: f64,
    pub exact_only: bool,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            float_tolerance: DEFAULT_TOLERANCE,
            exact_only: false,
            output_path: None,
        }
    }
}

/// Settings given explicitly, each of which overrides the layer below it.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub order: Option<usize>,
    pub float_tolerance: Option<f64>,
    pub exact_only: Option<bool>,
    pub output_path: Option<PathBuf>,
}

impl Overrides {
    pub fn apply(&self, mut config: RunConfig) -> RunConfig {
        if let Some(order) = self.order {
            config.order = order;
        }
        if let Some(tol) = self.float_tolerance {
            config.float_tolerance = tol;
        }
        if let Some(exact_only) = self.exact_only {
            config.exact_only = exact_only;
        }
        if let Some(path) = &self.output_path {
            config.output_path = Some(path.clone());
        }
        config
    }
}

pub fn validate_order(order: usize) -> Result<usize, String> {
    if order >= MIN_ORDER {
        Ok(order)
    } else {
        Err(format!("order must be at least {MIN_ORDER}, got {order}"))
    }
}

pub fn validate_tolerance(tol: f64) -> Result<f64, String> {
    if tol > 0.0 && tol <= MAX_TOLERANCE {
        Ok(tol)
    } else {
        Err(format!("tolerance must lie in (0, {MAX_TOLERANCE:e}], got {tol:e}"))
    }
}

fn parse_order(value: &str) -> Result<usize, String> {
    let order: i64 = value.parse().map_err(|_| format!("order is not an integer: {value:?}"))?;
    let order = usize::try_from(order).map_err(|_| format!("order must be at least {MIN_ORDER}, got {order}"))?;
    validate_order(order)
}

fn parse_tolerance(value: &str) -> Result<f64, String> {
    let tol: f64 = value.parse().map_err(|_| format!("tolerance is not a number: {value:?}"))?;
    validate_tolerance(tol)
}

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// skipped; keys are `order`, `tolerance`, `exact_only` and `output`.
pub fn parse_config(text: &str) -> Result<Overrides, CliError> {
    let mut out = Overrides::default();
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| CliError::ConfigParse { line: line_no, message };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "order" => out.order = Some(parse_order(value).map_err(err)?),
            "tolerance" => out.float_tolerance = Some(parse_tolerance(value).map_err(err)?),
            "exact_only" => {
                out.exact_only = Some(value.parse().map_err(|_| err(format!("exact_only must be true or false, got {value:?}")))?)
            }
            "output" => {
                if value.is_empty() {
                    return Err(err("output path is empty".into()));
                }
                out.output_path = Some(PathBuf::from(value));
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    Ok(out)
}

/// Defaults merged with the file at `path`.
pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    Ok(parse_config(&text)?.apply(RunConfig::default()))
}

/// Reads `QCFT_ORDER` from `lookup`.
pub fn env_order(lookup: impl Fn(&str) -> Option<String>) -> Result<Option<usize>, CliError> {
    match lookup(ORDER_ENV) {
        None => Ok(None),
        Some(value) => parse_order(value.trim())
            .map(Some)
            .map_err(|m| CliError::Usage(format!("{ORDER_ENV}: {m}"))),
    }
}

/// Precedence, lowest first: defaults, environment, config file, flags.
pub fn resolve(
    env: Option<usize>,
    file: Option<&Path>,
    flags: &Overrides,
) -> Result<RunConfig, CliError> {
    let mut config = RunConfig::default();
    if let Some(order) = env {
        config.order = order;
    }
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
        config = parse_config(&text)?.apply(config);
    }
    Ok(flags.apply(config))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        assert_eq!(parse_config("").unwrap().apply(RunConfig::default()), RunConfig::default());
    }

    #[test]
    fn keys_parse() {
        let o = parse_config("# comment\norder = 300\n\ntolerance = 1e-9\nexact_only = true\noutput = out.json\n").unwrap();
        let c = o.apply(RunConfig::default());
        assert_eq!(c.order, 300);
        assert_eq!(c.float_tolerance, 1e-9);
        assert!(c.exact_only);
        assert_eq!(c.output_path, Some(PathBuf::from("out.json")));
    }

    #[test]
    fn errors_carry_line_numbers() {
        for (text, line) in [
            ("order = -1", 1),
            ("\norder = 7", 2),
            ("order = 20\ncolour = red", 2),
            ("tolerance = 0.5", 1),
            ("tolerance = 0", 1),
            ("order 20", 1),
            ("exact_only = maybe", 1),
        ] {
            match parse_config(text) {
                Err(CliError::ConfigParse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn precedence() {
        let flags = Overrides { order: Some(50), ..Overrides::default() };
        assert_eq!(resolve(Some(40), None, &flags).unwrap().order, 50);
        assert_eq!(resolve(Some(40), None, &Overrides::default()).unwrap().order, 40);
        assert!(env_order(|_| Some("3".into())).is_err());
        assert_eq!(env_order(|_| Some("64".into())).unwrap(), Some(64));
        assert_eq!(env_order(|_| None).unwrap(), None);
    }
}
