//! JSON chart documents.
//!
//! ```json
//! {"type": "catalog", "name": "legendrian-clifford"}
//! {"type": "homogeneous-torus", "radii": [0.577350269, 0.577350269, 0.577350269],
//!  "freq": [[1, 0], [0, 1], [-1, -1]], "phases": [0, 0, 0]}
//! ```
//!
//! Radii within `1e-6` of the unit norm are rescaled onto it; `phases` is
//! optional.

use std::path::Path;

use serde::Deserialize;

use s5frames::catalog::{self, HomogeneousTorusSpec, RADII_PARSE_TOL};
use s5frames::ChartSpec;

use crate::error::CliError;

/// Flat on purpose: an internally tagged enum buffers its input and loses
/// line and column information in errors.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartDocument {
    #[serde(rename = "type")]
    kind: String,
    name: Option<String>,
    radii: Option<[f64; 3]>,
    freq: Option<[[i32; 2]; 3]>,
    phases: Option<[f64; 3]>,
}

/// Parses a chart document from a string; `origin` labels diagnostics.
pub fn parse_chart_spec(text: &str, origin: &str) -> Result<ChartSpec, CliError> {
    let schema = |message: String| CliError::Schema { path: origin.to_string(), message };
    let doc: ChartDocument = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    let missing = |field: &str| schema(format!("type {:?} requires field `{field}`", doc.kind));
    let unexpected = |field: &str| schema(format!("type {:?} does not take field `{field}`", doc.kind));
    match doc.kind.as_str() {
        "catalog" => {
            for (field, present) in
                [("radii", doc.radii.is_some()), ("freq", doc.freq.is_some()), ("phases", doc.phases.is_some())]
            {
                if present {
                    return Err(unexpected(field));
                }
            }
            let name = doc.name.as_deref().ok_or_else(|| missing("name"))?;
            if !catalog::NAMED_CHARTS.contains(&name) {
                return Err(schema(format!("field `name`: unknown catalog chart {name:?}")));
            }
            Ok(catalog::chart_by_name(name)?)
        }
        "homogeneous-torus" => {
            if doc.name.is_some() {
                return Err(unexpected("name"));
            }
            let radii = doc.radii.ok_or_else(|| missing("radii"))?;
            let freq = doc.freq.ok_or_else(|| missing("freq"))?;
            let spec = HomogeneousTorusSpec::normalized(radii, freq, doc.phases.unwrap_or_default(), RADII_PARSE_TOL)
                .map_err(|e| schema(format!("fields `radii`/`freq`: {e}")))?;
            Ok(catalog::build_torus(&spec)?)
        }
        other => Err(schema(format!("field `type`: expected \"catalog\" or \"homogeneous-torus\", got {other:?}"))),
    }
}

pub fn load_chart_spec(path: &Path) -> Result<ChartSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema { path: path.display().to_string(), message: format!("cannot read: {e}") })?;
    parse_chart_spec(&text, &path.display().to_string())
}
