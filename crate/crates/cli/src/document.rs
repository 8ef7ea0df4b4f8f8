//! Spectrum interchange formats.
//!
//! Floating-point fields are written with 17 significant digits in exponent
//! form, which round-trips every `f64` and never depends on the locale.

use std::fmt::Write as _;

use ballspec::spectrum::ModeFamily;
use ballspec::{EigenvalueHP, Real};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

pub const SCHEMA_VERSION: &str = "ballspec.spectrum/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CSV_HEADER: &str = "re,im,n,family,multiplicity,w0_re,w0_im,residual_poly,residual_hankel";

/// `x` with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // JSON has no literal for these; they never occur in valid documents
        "null".to_string()
    }
}

fn ser17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(fmt17(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRecord {
    #[serde(serialize_with = "ser17")]
    pub re: f64,
    #[serde(serialize_with = "ser17")]
    pub im: f64,
    pub n: usize,
    pub family: String,
    pub multiplicity: usize,
    #[serde(serialize_with = "ser17")]
    pub w0_re: f64,
    #[serde(serialize_with = "ser17")]
    pub w0_im: f64,
    #[serde(serialize_with = "ser17")]
    pub residual_poly: f64,
    #[serde(serialize_with = "ser17")]
    pub residual_hankel: f64,
}

impl EigenvalueRecord {
    pub fn from_eigenvalue(e: &EigenvalueHP) -> Self {
        EigenvalueRecord {
            re: e.lambda.re.to_f64(),
            im: e.lambda.im.to_f64(),
            n: e.n,
            family: e.family.tag().to_string(),
            multiplicity: e.multiplicity,
            w0_re: e.w0.re.to_f64(),
            w0_im: e.w0.im.to_f64(),
            residual_poly: e.residual_poly,
            residual_hankel: e.residual_hankel,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub schema_version: String,
    #[serde(serialize_with = "ser17")]
    pub gamma: f64,
    pub n_max: usize,
    pub precision_bits: u32,
    pub eigenvalues: Vec<EigenvalueRecord>,
    pub tool_version: String,
}

impl SpectrumDocument {
    pub fn new(gamma: f64, n_max: usize, precision_bits: u32, eigs: &[EigenvalueHP]) -> Self {
        SpectrumDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            gamma,
            n_max,
            precision_bits,
            eigenvalues: eigs.iter().map(EigenvalueRecord::from_eigenvalue).collect(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for e in &self.eigenvalues {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                fmt17(e.re),
                fmt17(e.im),
                e.n,
                e.family,
                e.multiplicity,
                fmt17(e.w0_re),
                fmt17(e.w0_im),
                fmt17(e.residual_poly),
                fmt17(e.residual_hankel)
            );
        }
        s
    }

    /// Parses and validates a document, rejecting other schema versions and
    /// unknown family tags.
    pub fn from_json(text: &str) -> Result<Self, String> {
        let doc: SpectrumDocument = serde_json::from_str(text).map_err(|e| format!("malformed spectrum JSON: {e}"))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(format!("unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})", doc.schema_version));
        }
        if let Some(e) = doc.eigenvalues.iter().find(|e| ModeFamily::from_tag(&e.family).is_none()) {
            return Err(format!("unknown family tag {:?}", e.family));
        }
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SpectrumDocument {
        SpectrumDocument {
            schema_version: SCHEMA_VERSION.into(),
            gamma: 2.0,
            n_max: 1,
            precision_bits: 256,
            eigenvalues: vec![EigenvalueRecord {
                re: -0.6180339887498949,
                im: 0.0,
                n: 1,
                family: "alpha".into(),
                multiplicity: 3,
                w0_re: 0.8090169943749475,
                w0_im: -0.0,
                residual_poly: 1.5e-77,
                residual_hankel: 3.0e-17,
            }],
            tool_version: TOOL_VERSION.into(),
        }
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(-0.6180339887498949), "-6.1803398874989490e-1");
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt17(0.0), "0.0000000000000000e0");
    }

    #[test]
    fn json_round_trip() {
        let doc = sample();
        let text = doc.to_json();
        let back = SpectrumDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
        assert!(text.contains("\"re\": -6.1803398874989490e-1"));
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert!(lines.next().unwrap().starts_with("-6.1803398874989490e-1,0.0000000000000000e0,1,alpha,3,"));
    }

    #[test]
    fn schema_mismatch_rejected() {
        let text = sample().to_json().replace(SCHEMA_VERSION, "other/9");
        assert!(SpectrumDocument::from_json(&text).unwrap_err().contains("schema_version"));
        assert!(SpectrumDocument::from_json("{").is_err());
    }
}
