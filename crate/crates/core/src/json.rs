//! JSON file formats for spaces, measures, fields and decompositions.
//!
//! Maps keyed by point id use `BTreeMap` so serialized files are
//! deterministic. Omitted points in mass/value maps default to zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::atomic::{Atom, AtomKind, AtomicDecomposition};
use crate::error::{Error, Result};
use crate::lipschitz::ScalarField;
use crate::measure::SignedMeasure;
use crate::metric::{FiniteMetricSpace, MetricMeasureSpace};

/// `{"points": [...], "dist": [[...]]}` or
/// `{"points": [...], "coords": [[...]], "metric": "euclidean"}`, with an
/// optional snowflake exponent and optional per-point weights.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<BTreeMap<String, f64>>,
}

impl SpaceFile {
    /// Builds and fully validates the space. Coordinate-induced matrices
    /// skip the cubic triangle scan (they are metrics by construction);
    /// explicit matrices get the complete axiom check.
    pub fn to_space(&self) -> Result<FiniteMetricSpace> {
        let base = match (&self.dist, &self.coords) {
            (Some(rows), None) => FiniteMetricSpace::new(self.points.clone(), rows.clone())?,
            (None, Some(coords)) => {
                if let Some(metric) = &self.metric {
                    if metric != "euclidean" {
                        return Err(Error::InvalidInput(format!(
                            "unsupported metric `{metric}`; only `euclidean` coords are handled"
                        )));
                    }
                }
                FiniteMetricSpace::from_coords(self.points.clone(), coords)?
            }
            (Some(_), Some(_)) => {
                return Err(Error::InvalidInput(
                    "space file has both `dist` and `coords`".into(),
                ))
            }
            (None, None) => {
                return Err(Error::InvalidInput(
                    "space file needs `dist` or `coords`".into(),
                ))
            }
        };
        match self.alpha {
            Some(alpha) => base.snowflake(alpha),
            None => Ok(base),
        }
    }

    /// The space plus weights: the `weight` map when present (every point
    /// required), uniform `1/n` otherwise.
    pub fn to_measure_space(&self) -> Result<MetricMeasureSpace> {
        let space = self.to_space()?;
        match &self.weight {
            None => MetricMeasureSpace::uniform(space),
            Some(map) => {
                for id in map.keys() {
                    if space.index_of(id).is_none() {
                        return Err(Error::UnknownPoint(id.clone()));
                    }
                }
                let weights = space
                    .point_ids()
                    .iter()
                    .map(|id| {
                        map.get(id).copied().ok_or_else(|| {
                            Error::InvalidInput(format!("missing weight for point `{id}`"))
                        })
                    })
                    .collect::<Result<Vec<f64>>>()?;
                MetricMeasureSpace::new(space, weights)
            }
        }
    }

    /// Matrix form of an existing space.
    pub fn from_space(space: &FiniteMetricSpace) -> Self {
        Self {
            points: space.point_ids().to_vec(),
            dist: Some(space.matrix_rows()),
            coords: None,
            metric: None,
            alpha: None,
            weight: None,
        }
    }
}

/// A space given inline or as a path to a space file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Path(String),
    Inline(SpaceFile),
}

/// `{"space": ..., "mass": {"a": 1.0, ...}}`; omitted points carry zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceRef>,
    pub mass: BTreeMap<String, f64>,
}

impl MeasureFile {
    pub fn to_measure(&self, space: &FiniteMetricSpace) -> Result<SignedMeasure> {
        SignedMeasure::new(space, map_to_vec(space, &self.mass)?)
    }

    pub fn from_measure(space: &FiniteMetricSpace, nu: &SignedMeasure) -> Self {
        Self {
            space: None,
            mass: vec_to_map(space, nu.masses()),
        }
    }
}

/// `{"space": ..., "value": {"a": 0.0, ...}}`; omitted points carry zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceRef>,
    pub value: BTreeMap<String, f64>,
}

impl FieldFile {
    pub fn to_field(&self, space: &FiniteMetricSpace) -> Result<ScalarField> {
        ScalarField::new(space, map_to_vec(space, &self.value)?)
    }

    pub fn from_field(space: &FiniteMetricSpace, f: &ScalarField) -> Self {
        Self {
            space: None,
            value: vec_to_map(space, f.values()),
        }
    }
}

fn map_to_vec(space: &FiniteMetricSpace, map: &BTreeMap<String, f64>) -> Result<Vec<f64>> {
    let mut out = vec![0.0; space.len()];
    for (id, &v) in map {
        let i = space
            .index_of(id)
            .ok_or_else(|| Error::UnknownPoint(id.clone()))?;
        out[i] = v;
    }
    Ok(out)
}

fn vec_to_map(space: &FiniteMetricSpace, values: &[f64]) -> BTreeMap<String, f64> {
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0.0)
        .map(|(i, &v)| (space.point_id(i).to_string(), v))
        .collect()
}

/// One weighted atom; `kind` tags dipoles against Diracs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomEntry {
    pub gamma: f64,
    #[serde(flatten)]
    pub atom: AtomJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AtomJson {
    Dipole { x: String, y: String },
    Dirac { z: String, sign: i32 },
}

/// `{"alpha": 0.5, "atoms": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub alpha: f64,
    pub atoms: Vec<AtomEntry>,
}

impl DecompositionFile {
    pub fn from_decomposition(space: &FiniteMetricSpace, dec: &AtomicDecomposition) -> Self {
        let atoms = dec
            .atoms
            .iter()
            .map(|&(gamma, atom)| AtomEntry {
                gamma,
                atom: match atom.kind {
                    AtomKind::Dipole { x, y } => AtomJson::Dipole {
                        x: space.point_id(x).to_string(),
                        y: space.point_id(y).to_string(),
                    },
                    AtomKind::Dirac { z, sign } => AtomJson::Dirac {
                        z: space.point_id(z).to_string(),
                        sign: if sign < 0.0 { -1 } else { 1 },
                    },
                },
            })
            .collect();
        Self {
            alpha: dec.alpha,
            atoms,
        }
    }

    pub fn to_decomposition(&self, space: &FiniteMetricSpace) -> Result<AtomicDecomposition> {
        let lookup = |id: &str| {
            space
                .index_of(id)
                .ok_or_else(|| Error::UnknownPoint(id.to_string()))
        };
        let snow = space.snowflake(self.alpha)?;
        let atoms = self
            .atoms
            .iter()
            .map(|entry| {
                let atom = match &entry.atom {
                    AtomJson::Dipole { x, y } => {
                        let xi = lookup(x)?;
                        let yi = lookup(y)?;
                        Atom {
                            kind: AtomKind::Dipole { x: xi, y: yi },
                            normalization: snow.dist(xi, yi),
                        }
                    }
                    AtomJson::Dirac { z, sign } => Atom {
                        kind: AtomKind::Dirac {
                            z: lookup(z)?,
                            sign: if *sign < 0 { -1.0 } else { 1.0 },
                        },
                        normalization: 1.0,
                    },
                };
                Ok((entry.gamma, atom))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AtomicDecomposition {
            alpha: self.alpha,
            atoms,
        })
    }
}
