//! Published static maximum-endurance-time (MET) models.
//!
//! Coefficients live in a versioned JSON manifest (`data/met_models.json`,
//! embedded at build time) so each row can be audited against its source.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MANIFEST_VERSION: u32 = 1;

const BUILTIN_MANIFEST: &str = include_str!("../data/met_models.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    General,
    Shoulder,
    Elbow,
    Hand,
    BackHip,
}

impl Region {
    pub const ALL: [Region; 5] = [
        Region::General,
        Region::Shoulder,
        Region::Elbow,
        Region::Hand,
        Region::BackHip,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Region::General => "general",
            Region::Shoulder => "shoulder",
            Region::Elbow => "elbow",
            Region::Hand => "hand",
            Region::BackHip => "back_hip",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace(['-', '/'], "_");
        Region::ALL
            .into_iter()
            .find(|r| r.as_str() == norm)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown region `{s}` (expected one of general, shoulder, elbow, hand, back_hip)"
                ))
            })
    }
}

/// Functional form of a MET equation, in minutes as a function of f = f_MVC.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "formula_kind", content = "coefficients", deny_unknown_fields)]
pub enum Formula {
    /// Σᵢ terms[i] / fⁱ
    #[serde(rename = "polynomial-in-inverse-f")]
    PolynomialInverse { terms: Vec<f64> },
    /// scale · (f − offset)^exponent
    #[serde(rename = "power-law")]
    PowerLaw { scale: f64, offset: f64, exponent: f64 },
    /// scale · exp(−rate · f)
    #[serde(rename = "exponential")]
    Exponential { scale: f64, rate: f64 },
    /// scale · ((1 − f)/(f − offset))^exponent
    #[serde(rename = "huijgens-ratio")]
    HuijgensRatio { scale: f64, offset: f64, exponent: f64 },
}

impl Formula {
    pub fn kind(&self) -> &'static str {
        match self {
            Formula::PolynomialInverse { .. } => "polynomial-in-inverse-f",
            Formula::PowerLaw { .. } => "power-law",
            Formula::Exponential { .. } => "exponential",
            Formula::HuijgensRatio { .. } => "huijgens-ratio",
        }
    }

    fn eval(&self, f: f64) -> f64 {
        match self {
            Formula::PolynomialInverse { terms } => {
                let inv = 1.0 / f;
                // Horner in 1/f
                terms.iter().rev().fold(0.0, |acc, &c| acc * inv + c)
            }
            Formula::PowerLaw { scale, offset, exponent } => scale * (f - offset).powf(*exponent),
            Formula::Exponential { scale, rate } => scale * (-rate * f).exp(),
            Formula::HuijgensRatio { scale, offset, exponent } => {
                scale * ((1.0 - f) / (f - offset)).powf(*exponent)
            }
        }
    }

    fn coefficients(&self) -> Vec<f64> {
        match self {
            Formula::PolynomialInverse { terms } => terms.clone(),
            Formula::PowerLaw { scale, offset, exponent }
            | Formula::HuijgensRatio { scale, offset, exponent } => vec![*scale, *offset, *exponent],
            Formula::Exponential { scale, rate } => vec![*scale, *rate],
        }
    }
}

/// Interval `(lower, upper]` (or `(lower, upper)`) of admissible f_MVC values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidDomain {
    pub lower: f64,
    pub upper: f64,
    pub upper_inclusive: bool,
}

impl ValidDomain {
    pub fn contains(&self, f: f64) -> bool {
        f > self.lower && (f < self.upper || (self.upper_inclusive && f == self.upper))
    }
}

impl fmt::Display for ValidDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let close = if self.upper_inclusive { ']' } else { ')' };
        write!(f, "({}, {}{close}", self.lower, self.upper)
    }
}

/// Correlations reported alongside the model in the published comparison table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PublishedValues {
    pub r: f64,
    pub icc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetModel {
    pub id: String,
    pub display_name: String,
    pub region: Region,
    #[serde(flatten)]
    pub formula: Formula,
    pub valid_domain: ValidDomain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub published: Option<PublishedValues>,
    /// Transcription remark for rows that needed interpretation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl MetModel {
    /// MET in minutes at relative load `f_mvc`.
    pub fn evaluate(&self, f_mvc: f64) -> Result<f64> {
        if !self.valid_domain.contains(f_mvc) {
            let singular = match self.formula {
                Formula::PolynomialInverse { .. } => " (formula is singular at f_mvc = 0)".to_string(),
                Formula::PowerLaw { offset, exponent, .. } if exponent < 0.0 => {
                    format!(" (formula is singular at f_mvc = {offset})")
                }
                Formula::HuijgensRatio { offset, .. } => {
                    format!(" (formula is singular at f_mvc = {offset})")
                }
                _ => String::new(),
            };
            return Err(Error::Domain(format!(
                "f_mvc = {f_mvc} is outside the valid domain {} of model `{}`{singular}",
                self.valid_domain, self.id
            )));
        }
        let met = self.formula.eval(f_mvc);
        if !(met.is_finite() && met > 0.0) {
            return Err(Error::Domain(format!(
                "model `{}` gives non-positive or non-finite MET {met} at f_mvc = {f_mvc}",
                self.id
            )));
        }
        Ok(met)
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: String| Error::Manifest(format!("model `{}`: {what}", self.id));
        if self.id.trim().is_empty() {
            return Err(Error::Manifest("model with empty id".into()));
        }
        let coeffs = self.formula.coefficients();
        if coeffs.is_empty() {
            return Err(bad("formula has no coefficients".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(bad("non-finite coefficient".into()));
        }
        let d = self.valid_domain;
        if !(d.lower.is_finite() && d.upper.is_finite() && 0.0 <= d.lower && d.lower < d.upper && d.upper <= 1.0) {
            return Err(bad(format!("valid_domain {d} must satisfy 0 <= lower < upper <= 1")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    manifest_version: u32,
    models: Vec<MetModel>,
}

impl Catalog {
    /// The 24-row catalog shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_json_str(BUILTIN_MANIFEST).expect("embedded MET manifest is valid")
    }

    pub fn new(models: Vec<MetModel>) -> Result<Self> {
        let catalog = Self {
            manifest_version: MANIFEST_VERSION,
            models,
        };
        catalog.validate()?;
        Ok(catalog)
    }

    pub fn from_json_str(json: &str) -> Result<Self> {
        let catalog: Catalog =
            serde_json::from_str(json).map_err(|e| Error::Manifest(format!("schema mismatch: {e}")))?;
        catalog.validate()?;
        Ok(catalog)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if self.manifest_version != MANIFEST_VERSION {
            return Err(Error::Manifest(format!(
                "unsupported manifest_version {} (expected {MANIFEST_VERSION})",
                self.manifest_version
            )));
        }
        let mut seen = HashSet::new();
        for m in &self.models {
            m.validate()?;
            if !seen.insert(m.id.as_str()) {
                return Err(Error::Manifest(format!("duplicate model id `{}`", m.id)));
            }
        }
        Ok(())
    }

    pub fn models(&self) -> &[MetModel] {
        &self.models
    }

    /// Models in manifest order, optionally restricted to one region.
    pub fn list_models(&self, region: Option<Region>) -> Vec<&MetModel> {
        self.models
            .iter()
            .filter(|m| region.is_none_or(|r| m.region == r))
            .collect()
    }

    pub fn get(&self, id: &str) -> Option<&MetModel> {
        self.models.iter().find(|m| m.id == id)
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }
}
