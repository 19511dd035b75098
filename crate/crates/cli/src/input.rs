//! Curve file ingestion.
//!
//! Two formats are accepted. Delimited text:
//!
//! ```text
//! # comment lines start with '#'
//! tenor_years,rate
//! 1,0.05
//! 2,0.051
//! ```
//!
//! and a JSON object:
//!
//! ```json
//! {"curve_type": "swap", "label": "flat", "points": [{"t": 1, "r": 0.05}]}
//! ```
//!
//! The format is chosen by content: a file whose first non-blank character
//! is `{` is JSON. Delimited files carry no curve type; the caller supplies
//! one.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CurveType {
    Zero,
    Swap,
    Discount,
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveType::Zero => "zero",
            CurveType::Swap => "swap",
            CurveType::Discount => "discount",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveFile {
    /// `None` for delimited input, which does not name its type.
    pub curve_type: Option<CurveType>,
    pub tenors: Vec<f64>,
    pub values: Vec<f64>,
    pub label: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonCurve {
    curve_type: CurveType,
    points: Vec<JsonPoint>,
    #[serde(default)]
    label: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonPoint {
    t: f64,
    r: f64,
}

const HEADER: [&str; 2] = ["tenor_years", "rate"];

impl CurveFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        text.parse()
            .map_err(|e: CliError| CliError::Parse(format!("{}: {}", path.display(), e.message())))
    }

    pub fn len(&self) -> usize {
        self.tenors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tenors.is_empty()
    }

    /// Resolves the curve type from the file, or from `fallback` when the
    /// file does not carry one. A file type that contradicts an explicit
    /// request is a domain error.
    pub fn resolve_type(&self, requested: Option<CurveType>, fallback: CurveType) -> Result<CurveType, CliError> {
        match (self.curve_type, requested) {
            (Some(file), Some(req)) if file != req => Err(CliError::Domain(format!(
                "file holds a {file} curve but a {req} curve was requested"
            ))),
            (Some(file), _) => Ok(file),
            (None, Some(req)) => Ok(req),
            (None, None) => Ok(fallback),
        }
    }

    /// Checks that tenors are exactly 1, 2, ..., N.
    pub fn require_integer_grid(&self) -> Result<(), CliError> {
        for (i, &t) in self.tenors.iter().enumerate() {
            if t != (i + 1) as f64 {
                return Err(CliError::Parse(format!(
                    "point {}: tenor {t} breaks the annual grid 1, 2, ..., N",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    fn check_points(&self) -> Result<(), CliError> {
        for (i, (&t, &r)) in self.tenors.iter().zip(&self.values).enumerate() {
            if !t.is_finite() || !r.is_finite() {
                return Err(CliError::Parse(format!("point {}: values must be finite", i + 1)));
            }
            if t <= 0.0 || (i > 0 && t <= self.tenors[i - 1]) {
                return Err(CliError::Parse(format!(
                    "point {}: tenors must be positive and strictly increasing",
                    i + 1
                )));
            }
        }
        if matches!(self.curve_type, Some(CurveType::Swap | CurveType::Discount)) {
            self.require_integer_grid()?;
        }
        Ok(())
    }

    fn from_delimited(text: &str) -> Result<Self, CliError> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .has_headers(true)
            .from_reader(text.as_bytes());
        let header = reader
            .headers()
            .map_err(|e| CliError::Parse(format!("header: {e}")))?
            .clone();
        if header.iter().collect::<Vec<_>>() != HEADER {
            return Err(CliError::Parse(format!(
                "expected header `tenor_years,rate`, found `{}`",
                header.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut tenors = Vec::new();
        let mut values = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                CliError::Parse(format!("line {line}: {e}"))
            })?;
            let line = record.position().map(|p| p.line()).unwrap_or(0);
            let field = |i: usize| -> Result<f64, CliError> {
                let raw = record.get(i).unwrap_or("");
                raw.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::Parse(format!("line {line}: `{raw}` is not a finite decimal")))
            };
            tenors.push(field(0)?);
            values.push(field(1)?);
        }
        Ok(Self {
            curve_type: None,
            tenors,
            values,
            label: None,
        })
    }

    fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: JsonCurve =
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("line {}: {e}", e.line())))?;
        Ok(Self {
            curve_type: Some(raw.curve_type),
            tenors: raw.points.iter().map(|p| p.t).collect(),
            values: raw.points.iter().map(|p| p.r).collect(),
            label: raw.label,
        })
    }
}

impl FromStr for CurveFile {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let file = if text.trim_start().starts_with('{') {
            Self::from_json(text)?
        } else {
            Self::from_delimited(text)?
        };
        file.check_points()?;
        Ok(file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delimited_with_comments() {
        let f: CurveFile = "# flat\ntenor_years,rate\n1,0.05\n# mid\n2, 0.05\n".parse().unwrap();
        assert_eq!(f.tenors, vec![1.0, 2.0]);
        assert_eq!(f.values, vec![0.05, 0.05]);
        assert_eq!(f.curve_type, None);
    }

    #[test]
    fn malformed_row_reports_its_line() {
        let err = "tenor_years,rate\n1,0.05\n2,abc\n".parse::<CurveFile>().unwrap_err();
        assert!(
            matches!(err, CliError::Parse(ref m) if m.starts_with("line 3:")),
            "{err:?}"
        );
        let err = "tenor_years,rate\n1,0.05\n2\n".parse::<CurveFile>().unwrap_err();
        assert!(
            matches!(err, CliError::Parse(ref m) if m.starts_with("line 3:")),
            "{err:?}"
        );
    }

    #[test]
    fn wrong_header_is_rejected() {
        assert!(matches!("t,r\n1,0.05\n".parse::<CurveFile>(), Err(CliError::Parse(_))));
    }

    #[test]
    fn json_round() {
        let f: CurveFile = r#"{"curve_type":"swap","label":"x","points":[{"t":1,"r":0.05},{"t":2,"r":0.06}]}"#
            .parse()
            .unwrap();
        assert_eq!(f.curve_type, Some(CurveType::Swap));
        assert_eq!(f.label.as_deref(), Some("x"));
        assert_eq!(f.values, vec![0.05, 0.06]);
    }

    #[test]
    fn json_structure_errors_are_parse_errors() {
        for bad in [
            r#"{"curve_type":"spot","points":[]}"#,
            r#"{"curve_type":"zero"}"#,
            r#"{"curve_type":"zero","points":[{"t":1}]}"#,
            r#"{"curve_type":"swap","points":[{"t":1,"r":0.05},{"t":2.5,"r":0.05}]}"#,
        ] {
            assert!(matches!(bad.parse::<CurveFile>(), Err(CliError::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn tenor_order_is_enforced() {
        assert!(matches!(
            "tenor_years,rate\n2,0.05\n1,0.05\n".parse::<CurveFile>(),
            Err(CliError::Parse(_))
        ));
    }

    #[test]
    fn type_resolution() {
        let json: CurveFile = r#"{"curve_type":"zero","points":[{"t":1,"r":0.05}]}"#.parse().unwrap();
        assert_eq!(json.resolve_type(None, CurveType::Swap).unwrap(), CurveType::Zero);
        assert!(json.resolve_type(Some(CurveType::Swap), CurveType::Swap).is_err());
        let csv: CurveFile = "tenor_years,rate\n1,0.05\n".parse().unwrap();
        assert_eq!(csv.resolve_type(None, CurveType::Swap).unwrap(), CurveType::Swap);
    }
}
