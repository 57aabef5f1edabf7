//! JSON array description files.
//!
//! A spec file lists the elements (position, amplitude, phase), the element
//! pattern exponents, the wave number or carrier frequency, and optionally
//! a look direction. Angles are radians by default; strings with a `deg`
//! suffix are degrees (`rad` is accepted explicitly too). Unknown fields
//! are rejected so typos surface as errors instead of silent defaults.

use crate::directivity::ElementPattern;
use crate::error::{Error, Result};
use crate::geometry::{ArrayLayout, DirectionSpec, Vec3};
use serde::{Deserialize, Serialize};

pub const SPEED_OF_LIGHT: f64 = 2.998e8;
pub const SCHEMA_VERSION: u32 = 1;

/// An angle that may arrive as a bare number (radians) or a tagged string
/// like `"45deg"` / `"0.785rad"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Angle {
    Radians(f64),
    Tagged(String),
}

impl Angle {
    pub fn radians(&self) -> Result<f64> {
        match self {
            Angle::Radians(v) => Ok(*v),
            Angle::Tagged(s) => parse_angle(s),
        }
    }
}

/// Parses `"45deg"`, `"0.5rad"` or a bare number string (radians).
pub fn parse_angle(s: &str) -> Result<f64> {
    let t = s.trim();
    let (num, factor) = if let Some(stripped) = t.strip_suffix("deg") {
        (stripped, std::f64::consts::PI / 180.0)
    } else if let Some(stripped) = t.strip_suffix("rad") {
        (stripped, 1.0)
    } else {
        (t, 1.0)
    };
    num.trim()
        .parse::<f64>()
        .map(|v| v * factor)
        .map_err(|_| Error::SpecFile(format!("cannot parse angle '{s}'")))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementEntry {
    pub position: [f64; 3],
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
    #[serde(default)]
    pub phase: f64,
}

fn default_amplitude() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternEntry {
    pub u: u32,
    pub v: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionEntry {
    pub theta0: Angle,
    pub phi0: Angle,
}

/// On-disk array description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArraySpecFile {
    pub schema_version: u32,
    pub elements: Vec<ElementEntry>,
    pub pattern: PatternEntry,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wave_number: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<DirectionEntry>,
}

/// Everything a spec file resolves to.
#[derive(Debug, Clone)]
pub struct ResolvedSpec {
    pub layout: ArrayLayout,
    pub pattern: ElementPattern,
    pub k: f64,
    pub direction: Option<(f64, f64)>,
}

impl ArraySpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::SpecFile(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }

    /// Builds one from an in-memory layout (for exporting results).
    pub fn from_layout(layout: &ArrayLayout, pattern: ElementPattern, dir: &DirectionSpec) -> Self {
        ArraySpecFile {
            schema_version: SCHEMA_VERSION,
            elements: layout
                .positions
                .iter()
                .zip(layout.amplitudes.iter().zip(&layout.phases))
                .map(|(p, (&a, &ph))| ElementEntry {
                    position: [p.x, p.y, p.z],
                    amplitude: a,
                    phase: ph,
                })
                .collect(),
            pattern: PatternEntry { u: pattern.u, v: pattern.v },
            wave_number: Some(dir.k),
            frequency_hz: None,
            direction: Some(DirectionEntry {
                theta0: Angle::Radians(dir.theta0),
                phi0: Angle::Radians(dir.phi0),
            }),
        }
    }

    pub fn resolve(&self) -> Result<ResolvedSpec> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::SpecFile(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.elements.is_empty() {
            return Err(Error::SpecFile("element list is empty".into()));
        }
        let k = match (self.wave_number, self.frequency_hz) {
            (Some(k), None) => k,
            (None, Some(f)) => 2.0 * std::f64::consts::PI * f / SPEED_OF_LIGHT,
            (Some(_), Some(_)) => {
                return Err(Error::SpecFile(
                    "give either wave_number or frequency_hz, not both".into(),
                ))
            }
            (None, None) => {
                return Err(Error::SpecFile(
                    "one of wave_number or frequency_hz is required".into(),
                ))
            }
        };
        if !(k > 0.0) {
            return Err(Error::SpecFile(format!("wave number must be positive, got {k}")));
        }
        let layout = ArrayLayout {
            positions: self
                .elements
                .iter()
                .map(|e| Vec3::new(e.position[0], e.position[1], e.position[2]))
                .collect(),
            amplitudes: self.elements.iter().map(|e| e.amplitude).collect(),
            phases: self.elements.iter().map(|e| e.phase).collect(),
        };
        layout
            .validate()
            .map_err(|e| Error::SpecFile(e.to_string()))?;
        let direction = match &self.direction {
            Some(d) => Some((d.theta0.radians()?, d.phi0.radians()?)),
            None => None,
        };
        Ok(ResolvedSpec {
            layout,
            pattern: ElementPattern {
                u: self.pattern.u,
                v: self.pattern.v,
            },
            k,
            direction,
        })
    }
}
