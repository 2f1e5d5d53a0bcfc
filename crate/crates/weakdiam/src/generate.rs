//! Deterministic instance generators: sampled disks, axis-aligned boxes,
//! and unit grid cells.

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weakdiam_core::metric::{MetricKind, PointSet, Space};
use weakdiam_core::spacefill::{roundness_check, ObjectSystem};

use crate::instance::{Instance, Meta};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Disks,
    Boxes,
    GridObjects,
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "disks" => Ok(Kind::Disks),
            "boxes" => Ok(Kind::Boxes),
            "grid-objects" => Ok(Kind::GridObjects),
            other => Err(format!("unknown kind {other:?} (disks|boxes|grid-objects)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenParams {
    pub kind: Kind,
    pub dimension: usize,
    pub points: usize,
    pub objects: usize,
    pub radius_min: f64,
    pub radius_max: f64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct GenReport {
    /// Largest probed roundness parameter every sampled object passes
    /// (disks only).
    pub eta: Option<f64>,
}

pub fn generate(params: &GenParams) -> Result<(Instance, GenReport)> {
    if params.dimension == 0 || params.points == 0 || params.objects == 0 {
        bail!("dimension, point count and object count must be positive");
    }
    if params.radius_min <= 0.0 || params.radius_max < params.radius_min {
        bail!("radius range must satisfy 0 < min <= max");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    match params.kind {
        Kind::Disks => disks(params, &mut rng),
        Kind::Boxes => boxes(params, &mut rng),
        Kind::GridObjects => grid_objects(params, &mut rng),
    }
}

/// Spreads the cloud over an extent giving roughly unit point density per
/// object-radius neighborhood, so intersection graphs are sparse but not
/// trivial.
fn extent(params: &GenParams) -> f64 {
    let per_axis = (params.objects as f64).powf(1.0 / params.dimension as f64);
    (per_axis * params.radius_max).max(4.0 * params.radius_max)
}

fn disks(params: &GenParams, rng: &mut ChaCha8Rng) -> Result<(Instance, GenReport)> {
    let ext = extent(params);
    let pts: Vec<Vec<f64>> = (0..params.points)
        .map(|_| (0..params.dimension).map(|_| rng.gen_range(0.0..ext)).collect())
        .collect();
    let space = Space::from_points(MetricKind::L2, pts).expect("generated points valid");
    let mut objects = Vec::with_capacity(params.objects);
    for _ in 0..params.objects {
        let center = rng.gen_range(0..params.points);
        let r = rng.gen_range(params.radius_min..=params.radius_max);
        objects.push(space.ball(center, r));
    }
    // probe how round the sampled disks came out; coarse dyadic ladder
    let mut eta = None;
    for probe in [0.5, 0.25, 0.125] {
        let ok = objects
            .iter()
            .take(8)
            .all(|s| roundness_check(&space, s, probe).is_valid());
        if ok {
            eta = Some(probe);
            break;
        }
    }
    finish(space, objects, params, GenReport { eta })
}

fn boxes(params: &GenParams, rng: &mut ChaCha8Rng) -> Result<(Instance, GenReport)> {
    let ext = extent(params);
    let pts: Vec<Vec<f64>> = (0..params.points)
        .map(|_| (0..params.dimension).map(|_| rng.gen_range(0.0..ext)).collect())
        .collect();
    let space = Space::from_points(MetricKind::Linf, pts).expect("generated points valid");
    let mut objects = Vec::with_capacity(params.objects);
    for _ in 0..params.objects {
        let anchor = rng.gen_range(0..params.points);
        let center = space.coords(anchor).to_vec();
        let half: Vec<f64> = (0..params.dimension)
            .map(|_| rng.gen_range(params.radius_min..=params.radius_max))
            .collect();
        let members: Vec<usize> = (0..params.points)
            .filter(|&p| {
                space
                    .coords(p)
                    .iter()
                    .zip(center.iter().zip(&half))
                    .all(|(&x, (&c, &h))| (x - c).abs() <= h)
            })
            .collect();
        // the anchor point always qualifies, so the object is nonempty
        objects.push(PointSet::new(members));
    }
    finish(space, objects, params, GenReport { eta: None })
}

/// Integer grid cloud; each object is the corner set of a random unit
/// cell, so neighboring cells overlap exactly on shared corners.
fn grid_objects(params: &GenParams, rng: &mut ChaCha8Rng) -> Result<(Instance, GenReport)> {
    let n = params.dimension;
    let side = (params.points as f64).powf(1.0 / n as f64).ceil() as i64;
    let side = side.max(2);
    let mut pts = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut coords = vec![0i64; n];
    loop {
        index.insert(coords.clone(), pts.len());
        pts.push(coords.iter().map(|&c| c as f64).collect::<Vec<f64>>());
        let mut axis = 0;
        loop {
            coords[axis] += 1;
            if coords[axis] < side {
                break;
            }
            coords[axis] = 0;
            axis += 1;
            if axis == n {
                break;
            }
        }
        if coords.iter().all(|&c| c == 0) {
            break;
        }
    }
    let space = Space::from_points(MetricKind::Linf, pts).expect("grid points valid");
    let mut objects = Vec::with_capacity(params.objects);
    for _ in 0..params.objects {
        let corner: Vec<i64> =
            (0..n).map(|_| rng.gen_range(0..side - 1)).collect();
        let mut members = Vec::new();
        for mask in 0..(1u64 << n) {
            let vertex: Vec<i64> = corner
                .iter()
                .enumerate()
                .map(|(i, &c)| c + ((mask >> i) & 1) as i64)
                .collect();
            members.push(index[&vertex]);
        }
        objects.push(PointSet::new(members));
    }
    finish(space, objects, params, GenReport { eta: None })
}

fn finish(
    space: Space,
    objects: Vec<PointSet>,
    params: &GenParams,
    report: GenReport,
) -> Result<(Instance, GenReport)> {
    let system = match ObjectSystem::new(objects) {
        Ok(s) => s,
        Err(e) => bail!("degenerate parameters produced an invalid object: {e}"),
    };
    let kind_name = match params.kind {
        Kind::Disks => "disks",
        Kind::Boxes => "boxes",
        Kind::GridObjects => "grid-objects",
    };
    Ok((
        Instance {
            space,
            system,
            covers: None,
            meta: Meta {
                name: format!("{kind_name}-d{}-s{}", params.dimension, params.seed),
                seed: params.seed,
            },
        },
        report,
    ))
}
