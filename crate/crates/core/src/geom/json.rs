//! Polygon file format.
//!
//! ```json
//! {
//!   "name": "slit-square",
//!   "side_budget": 7,
//!   "components": [
//!     {
//!       "walk": [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
//!       "cracks": [ { "polyline": [[0.5, 0.0], [0.5, 0.3]] } ]
//!     }
//!   ]
//! }
//! ```
//!
//! Loading validates every polygon invariant and reports the first
//! violation with component and vertex indices.

use super::{Component, Crack, GeneralizedPolygon, GeometryError, Point2, SimplePolygon};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
struct PolygonFile {
    name: String,
    side_budget: usize,
    components: Vec<ComponentRec>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ComponentRec {
    walk: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    cracks: Vec<CrackRec>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CrackRec {
    polyline: Vec<[f64; 2]>,
}

/// A polygon together with its display name.
#[derive(Debug, Clone)]
pub struct PolygonDoc {
    pub name: String,
    pub polygon: GeneralizedPolygon,
}

#[derive(Debug, thiserror::Error)]
pub enum PolygonIoError {
    #[error("polygon file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("cannot read polygon file: {0}")]
    Io(#[from] std::io::Error),
}

pub fn from_json_str(text: &str) -> Result<PolygonDoc, PolygonIoError> {
    let file: PolygonFile = serde_json::from_str(text)?;
    let mut comps = Vec::with_capacity(file.components.len());
    for (ci, rec) in file.components.into_iter().enumerate() {
        let walk = SimplePolygon::new(rec.walk.iter().map(|&[x, y]| Point2::new(x, y)).collect())
            .map_err(|e| relabel(e, ci))?;
        let cracks = rec
            .cracks
            .into_iter()
            .map(|c| Crack::new(c.polyline.iter().map(|&[x, y]| Point2::new(x, y)).collect()))
            .collect();
        comps.push(Component { walk, cracks });
    }
    let polygon = GeneralizedPolygon::new(comps, file.side_budget)?;
    Ok(PolygonDoc {
        name: file.name,
        polygon,
    })
}

pub fn to_json_string(name: &str, polygon: &GeneralizedPolygon) -> String {
    let file = PolygonFile {
        name: name.to_string(),
        side_budget: polygon.side_budget(),
        components: polygon
            .components()
            .iter()
            .map(|c| ComponentRec {
                walk: c.walk.verts().iter().map(|p| [p.x, p.y]).collect(),
                cracks: c
                    .cracks
                    .iter()
                    .map(|k| CrackRec {
                        polyline: k.polyline.iter().map(|p| [p.x, p.y]).collect(),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("polygon serialization cannot fail")
}

pub fn load(path: &std::path::Path) -> Result<PolygonDoc, PolygonIoError> {
    let text = std::fs::read_to_string(path)?;
    from_json_str(&text)
}

pub fn save(path: &std::path::Path, name: &str, polygon: &GeneralizedPolygon) -> std::io::Result<()> {
    std::fs::write(path, to_json_string(name, polygon))
}

// SimplePolygon::new reports component 0; re-tag with the real index.
fn relabel(err: GeometryError, component: usize) -> GeometryError {
    match err {
        GeometryError::InvalidPolygon { vertex, reason, .. } => GeometryError::InvalidPolygon {
            component,
            vertex,
            reason,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::measures;

    #[test]
    fn round_trip() {
        let text = r#"{
            "name": "slit-square",
            "side_budget": 7,
            "components": [
                { "walk": [[0.0,0.0],[1.0,0.0],[1.0,1.0],[0.0,1.0]],
                  "cracks": [ { "polyline": [[0.5,0.0],[0.5,0.3]] } ] }
            ]
        }"#;
        let doc = from_json_str(text).unwrap();
        assert_eq!(doc.name, "slit-square");
        assert!((measures::generalized_perimeter(&doc.polygon) - 4.6).abs() < 1e-12);
        let again = from_json_str(&to_json_string(&doc.name, &doc.polygon)).unwrap();
        assert_eq!(doc.polygon, again.polygon);
    }

    #[test]
    fn validation_reports_indices() {
        // Second component self-intersects.
        let text = r#"{
            "name": "bad",
            "side_budget": 9,
            "components": [
                { "walk": [[0.0,0.0],[1.0,0.0],[1.0,1.0],[0.0,1.0]] },
                { "walk": [[2.0,0.0],[3.0,1.0],[3.0,0.0],[2.0,1.0]] }
            ]
        }"#;
        match from_json_str(text) {
            Err(PolygonIoError::Geometry(GeometryError::InvalidPolygon {
                component, ..
            })) => assert_eq!(component, 1),
            other => panic!("expected invalid polygon, got {:?}", other.map(|d| d.name)),
        }
    }

    #[test]
    fn missing_cracks_field_defaults_to_empty() {
        let text = r#"{
            "name": "square",
            "side_budget": 4,
            "components": [ { "walk": [[0.0,0.0],[1.0,0.0],[1.0,1.0],[0.0,1.0]] } ]
        }"#;
        let doc = from_json_str(text).unwrap();
        assert!(!doc.polygon.has_cracks());
    }
}
