//! Mask and data documents, and the exact rational literal syntax they use.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use subdiv_core::{GridSequence, Mask, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralError {
    pub literal: String,
    pub reason: &'static str,
}

impl fmt::Display for LiteralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid rational literal `{}`: {}",
            self.literal, self.reason
        )
    }
}

impl std::error::Error for LiteralError {}

/// Parses `p/q` or an integer. Accepts U+2212 as a minus sign.
pub fn parse_rational(literal: &str) -> Result<Rational, LiteralError> {
    let fail = |reason| LiteralError {
        literal: literal.to_string(),
        reason,
    };
    let text = literal.trim().replace('\u{2212}', "-");
    if text.is_empty() {
        return Err(fail("empty literal"));
    }
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text.as_str(), None),
    };
    let numer = BigInt::from_str(numer).map_err(|_| fail("numerator is not an integer"))?;
    let denom = match denom {
        Some(d) => BigInt::from_str(d).map_err(|_| fail("denominator is not an integer"))?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(fail("zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical `p/q` text (just `p` for integers).
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Decimal rendering with 12 significant digits, for convenience columns only.
pub fn format_decimal(value: &Rational) -> String {
    let x = value.to_f64().unwrap_or(f64::NAN);
    if x == 0.0 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exponent) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exponent).max(0) as usize;
    let text = format!("{x:.decimals$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub offset: i64,
    pub coefficients: Vec<String>,
}

#[derive(Debug)]
pub enum DocumentError {
    Io(String, std::io::Error),
    Syntax(String),
    Literal(LiteralError),
    EmptyMask,
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Io(path, e) => write!(f, "cannot read {path}: {e}"),
            DocumentError::Syntax(msg) => write!(f, "malformed document: {msg}"),
            DocumentError::Literal(e) => e.fmt(f),
            DocumentError::EmptyMask => f.write_str("mask needs at least one nonzero coefficient"),
        }
    }
}

impl std::error::Error for DocumentError {}

impl From<LiteralError> for DocumentError {
    fn from(e: LiteralError) -> Self {
        DocumentError::Literal(e)
    }
}

impl MaskDocument {
    pub fn from_mask(mask: &Mask, name: Option<String>) -> Self {
        Self {
            name,
            offset: mask.offset(),
            coefficients: mask.coefficients().iter().map(format_rational).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, DocumentError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DocumentError::Io(path.display().to_string(), e))?;
        let mut doc = Self::parse(&text)?;
        if doc.name.is_none() {
            doc.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        Ok(doc)
    }

    /// Builds a document from the inline `--mask "a,b,c" --offset n` form.
    pub fn inline(list: &str, offset: i64) -> Self {
        Self {
            name: None,
            offset,
            coefficients: split_list(list),
        }
    }

    pub fn to_mask(&self) -> Result<Mask, DocumentError> {
        if self.coefficients.is_empty() {
            return Err(DocumentError::EmptyMask);
        }
        let values = self
            .coefficients
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()?;
        Mask::new(self.offset, values).map_err(|_| DocumentError::EmptyMask)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn split_list(list: &str) -> Vec<String> {
    list.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Initial data for refinement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataDocument {
    #[serde(default)]
    pub level: u32,
    pub offset: i64,
    pub values: Vec<String>,
}

impl DataDocument {
    pub fn read(path: &Path) -> Result<Self, DocumentError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DocumentError::Io(path.display().to_string(), e))?;
        serde_json::from_str(&text).map_err(|e| DocumentError::Syntax(e.to_string()))
    }

    pub fn inline(list: &str, offset: i64) -> Self {
        Self {
            level: 0,
            offset,
            values: split_list(list),
        }
    }

    pub fn to_sequence(&self) -> Result<GridSequence, DocumentError> {
        let values = self
            .values
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GridSequence::new(self.level, self.offset, values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use subdiv_core::{int, rat};

    #[test]
    fn literals() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational(" -2/4 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("\u{2212}1/16").unwrap(), rat(-1, 16));
        assert_eq!(parse_rational("1/-2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("+5/10").unwrap(), rat(1, 2));
        for bad in ["", "1/0", "x", "1.5", "1/2/3", "/3"] {
            let err = parse_rational(bad).unwrap_err();
            assert_eq!(err.literal, bad);
        }
        assert!(parse_rational("0.5")
            .unwrap_err()
            .to_string()
            .contains("`0.5`"));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&rat(1, 2)), "1/2");
        assert_eq!(format_rational(&int(-3)), "-3");
        assert_eq!(format_decimal(&rat(1, 3)), "0.333333333333");
        assert_eq!(format_decimal(&rat(5, 8)), "0.625");
        assert_eq!(format_decimal(&int(0)), "0");
        assert_eq!(format_decimal(&int(12)), "12");
        assert_eq!(format_decimal(&rat(-2, 3)), "-0.666666666667");
    }

    #[test]
    fn inline_mask() {
        let doc = MaskDocument::inline("\u{2212}1/16,0,9/16,1,9/16,0,\u{2212}1/16", -3);
        let mask = doc.to_mask().unwrap();
        assert_eq!(mask.offset(), -3);
        assert_eq!(mask.len(), 7);
    }

    #[test]
    fn document_trims_and_rejects_zero_masks() {
        let doc = MaskDocument::parse(r#"{"offset": 0, "coefficients": ["0", "1", "1"]}"#).unwrap();
        assert_eq!(doc.to_mask().unwrap().offset(), 1);
        let zero = MaskDocument::parse(r#"{"offset": 0, "coefficients": ["0"]}"#).unwrap();
        assert!(matches!(zero.to_mask(), Err(DocumentError::EmptyMask)));
        let empty = MaskDocument::parse(r#"{"offset": 0, "coefficients": []}"#).unwrap();
        assert!(matches!(empty.to_mask(), Err(DocumentError::EmptyMask)));
        assert!(matches!(
            MaskDocument::parse(r#"{"coefficients": ["1"]}"#),
            Err(DocumentError::Syntax(_))
        ));
    }
}
