//! Instance and result files: documented JSON formats with strict field
//! checking and index validation.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use weakdiam_core::metric::{MetricKind, PointSet, Space};
use weakdiam_core::spacefill::ObjectSystem;
use weakdiam_core::web::ScaleCover;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dimension: usize,
    /// "l2", "linf" or "matrix".
    pub metric: String,
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    pub objects: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<CoversFile>,
    pub meta: Meta,
}

/// Optional user-supplied multi-scale covers overriding the built-in grid
/// construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoversFile {
    /// Declared mesh constant of the supplied covers.
    pub k: f64,
    pub scales: Vec<ScaleCoverFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleCoverFile {
    pub scale: i32,
    /// families -> cells -> point indices.
    pub families: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub name: String,
    pub seed: u64,
}

/// A loaded, validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub space: Space,
    pub system: ObjectSystem,
    pub covers: Option<(f64, Vec<ScaleCover>)>,
    pub meta: Meta,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed instance file {path}: {source}")]
    Parse { path: String, source: serde_json::Error },
    #[error("unknown metric {0:?} (expected \"l2\", \"linf\" or \"matrix\")")]
    UnknownMetric(String),
    #[error("point {point} has {got} coordinates, expected {expected}")]
    DimensionMismatch { point: usize, got: usize, expected: usize },
    #[error("matrix metric requires a \"matrix\" field")]
    MissingMatrix,
    #[error("object {object} references point index {index}, but there are only {points} points")]
    ObjectIndexOutOfRange { object: usize, index: usize, points: usize },
    #[error("object {object} is empty")]
    EmptyObject { object: usize },
    #[error("no objects")]
    NoObjects,
    #[error("supplied cover at scale {scale} references point index {index} out of range")]
    CoverIndexOutOfRange { scale: i32, index: usize },
    #[error("invalid space: {0}")]
    Space(String),
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance, InstanceError> {
        let kind = match self.metric.as_str() {
            "l2" => MetricKind::L2,
            "linf" => MetricKind::Linf,
            "matrix" => MetricKind::Matrix,
            other => return Err(InstanceError::UnknownMetric(other.to_string())),
        };
        let space = if kind == MetricKind::Matrix {
            let matrix = self.matrix.clone().ok_or(InstanceError::MissingMatrix)?;
            Space::from_matrix(matrix).map_err(|e| InstanceError::Space(format!("{e:?}")))?
        } else {
            for (i, p) in self.points.iter().enumerate() {
                if p.len() != self.dimension {
                    return Err(InstanceError::DimensionMismatch {
                        point: i,
                        got: p.len(),
                        expected: self.dimension,
                    });
                }
            }
            Space::from_points(kind, self.points.clone())
                .map_err(|e| InstanceError::Space(format!("{e:?}")))?
        };
        let n_points = space.len();
        if self.objects.is_empty() {
            return Err(InstanceError::NoObjects);
        }
        let mut objects = Vec::with_capacity(self.objects.len());
        for (oi, idxs) in self.objects.iter().enumerate() {
            if idxs.is_empty() {
                return Err(InstanceError::EmptyObject { object: oi });
            }
            for &ix in idxs {
                if ix >= n_points {
                    return Err(InstanceError::ObjectIndexOutOfRange {
                        object: oi,
                        index: ix,
                        points: n_points,
                    });
                }
            }
            objects.push(PointSet::new(idxs.clone()));
        }
        let system = ObjectSystem::new(objects)
            .map_err(|e| InstanceError::Space(format!("{e:?}")))?;
        let covers = match self.covers {
            None => None,
            Some(cf) => {
                let mut scales = Vec::new();
                for sc in cf.scales {
                    for family in &sc.families {
                        for cell in family {
                            for &ix in cell {
                                if ix >= n_points {
                                    return Err(InstanceError::CoverIndexOutOfRange {
                                        scale: sc.scale,
                                        index: ix,
                                    });
                                }
                            }
                        }
                    }
                    scales.push(ScaleCover {
                        scale: sc.scale,
                        families: sc
                            .families
                            .into_iter()
                            .map(|f| f.into_iter().map(PointSet::new).collect())
                            .collect(),
                    });
                }
                Some((cf.k, scales))
            }
        };
        Ok(Instance { space, system, covers, meta: self.meta })
    }
}

impl Instance {
    /// Reconstructs the on-disk form (points are kept verbatim by load, so
    /// save∘load is the identity on valid files).
    pub fn to_file(&self) -> InstanceFile {
        let kind = self.space.kind();
        let metric = match kind {
            MetricKind::L2 => "l2",
            MetricKind::Linf => "linf",
            MetricKind::Matrix => "matrix",
        };
        let points = if self.space.has_coordinates() {
            (0..self.space.len()).map(|p| self.space.coords(p).to_vec()).collect()
        } else {
            Vec::new()
        };
        let matrix = if kind == MetricKind::Matrix {
            Some(
                (0..self.space.len())
                    .map(|p| (0..self.space.len()).map(|q| self.space.distance(p, q)).collect())
                    .collect(),
            )
        } else {
            None
        };
        InstanceFile {
            dimension: self.space.dimension(),
            metric: metric.to_string(),
            points,
            matrix,
            objects: self.system.iter().map(|s| s.iter().collect()).collect(),
            covers: self.covers.as_ref().map(|(k, scales)| CoversFile {
                k: *k,
                scales: scales
                    .iter()
                    .map(|sc| ScaleCoverFile {
                        scale: sc.scale,
                        families: sc
                            .families
                            .iter()
                            .map(|f| f.iter().map(|c| c.iter().collect()).collect())
                            .collect(),
                    })
                    .collect(),
            }),
            meta: self.meta.clone(),
        }
    }
}

pub fn load_instance(path: &Path) -> Result<Instance, InstanceError> {
    let text = fs::read_to_string(path).map_err(|source| InstanceError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: InstanceFile =
        serde_json::from_str(&text).map_err(|source| InstanceError::Parse {
            path: path.display().to_string(),
            source,
        })?;
    file.into_instance()
}

pub fn save_instance(instance: &Instance, path: &Path) -> Result<(), InstanceError> {
    let text = serde_json::to_string_pretty(&instance.to_file()).expect("serializable");
    fs::write(path, text).map_err(|source| InstanceError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Per-part section of a solve certificate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PartCertificate {
    /// Cover family index the part was caught in (0-based).
    pub family: usize,
    pub size: usize,
    /// Measured bag domination number k of the part's decomposition.
    pub domination: usize,
    /// w(k) as a decimal string (the values overflow fixed-width integers
    /// quickly).
    pub diameter_bound: String,
    pub measured_diameter: usize,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VerifierFlags {
    pub covers: bool,
    pub web_laminarity: bool,
    pub power_identity: bool,
    pub decompositions: bool,
    pub coloring: bool,
}

impl VerifierFlags {
    pub fn all_passed(&self) -> bool {
        self.covers
            && self.web_laminarity
            && self.power_identity
            && self.decompositions
            && self.coloring
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub requested_radius: usize,
    /// The odd radius actually colored (requested + 1 when even).
    pub effective_radius: usize,
    pub union_depth: usize,
    pub mesh_constant: f64,
    pub catch_constant: f64,
    /// True when the requested radius was even and the bound below was
    /// doubled accordingly.
    pub even_radius_doubling: bool,
    pub parts: Vec<PartCertificate>,
    pub colors_used: usize,
    pub color_limit: usize,
    /// max over parts of w(k), doubled for even requests; decimal string.
    pub overall_bound: String,
    pub measured_diameter: usize,
    /// The space-filling profile transformation applied at this radius,
    /// kept symbolic: the pipeline certifies with measured quantities.
    pub profile_note: String,
    pub verifiers: VerifierFlags,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub radius: usize,
    /// Color of each vertex of the power graph, 1-based palette.
    pub colors: Vec<u32>,
    pub certificate: Certificate,
}

pub fn load_result(path: &Path) -> Result<ResultFile, InstanceError> {
    let text = fs::read_to_string(path).map_err(|source| InstanceError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| InstanceError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn save_result(result: &ResultFile, path: &Path) -> Result<(), InstanceError> {
    let text = serde_json::to_string_pretty(result).expect("serializable");
    fs::write(path, text).map_err(|source| InstanceError::Io {
        path: path.display().to_string(),
        source,
    })
}
