//! Grid covers of coordinate point clouds witnessing the linear control
//! function D(r) = K r, plus exhaustive cover verification and the scale
//! index used by the multi-scale web.

use alloc::vec::Vec;
use core::fmt;

use crate::metric::{MetricKind, PointSet, Space};

/// One half-open lattice cell of a cover family, restricted to the points
/// of the space that fall into it.
#[derive(Clone, Debug)]
pub struct Cell {
    pub family: usize,
    pub lattice: Vec<i64>,
    pub members: PointSet,
}

/// A cover split into pairwise-disjoint families, with Lebesgue number at
/// least `radius` and mesh at most `mesh_constant * radius`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub radius: f64,
    pub side: f64,
    pub mesh_constant: f64,
    pub families: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverError {
    MatrixSpace,
    NonPositiveRadius,
}

impl fmt::Display for CoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverError::MatrixSpace => write!(f, "grid covers require coordinates"),
            CoverError::NonPositiveRadius => write!(f, "cover radius must be positive"),
        }
    }
}

/// Which grid construction to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GridConstruction {
    /// n+1 diagonally shifted grids (the default).
    #[default]
    DiagonalShift,
    /// 2^n parity-product grids; more families, simpler shift argument.
    Product,
}

/// Mesh constant K of the chosen construction for the given space.
pub fn mesh_constant(space: &Space, construction: GridConstruction) -> f64 {
    let n = space.dimension() as f64;
    let base = match construction {
        GridConstruction::DiagonalShift => 2.0 * (n + 1.0),
        GridConstruction::Product => 4.0,
    };
    match space.kind() {
        MetricKind::L2 => base * libm::sqrt(n),
        _ => base,
    }
}

fn assign_cells(
    space: &Space,
    family: usize,
    side: f64,
    shift: &[f64],
) -> Vec<Cell> {
    // map lattice coordinates -> member list, ordered by lattice key
    let mut keyed: Vec<(Vec<i64>, usize)> = (0..space.len())
        .map(|p| {
            let key: Vec<i64> = space
                .coords(p)
                .iter()
                .zip(shift)
                .map(|(y, d)| libm::floor((y - d) / side) as i64)
                .collect();
            (key, p)
        })
        .collect();
    keyed.sort();
    let mut cells: Vec<Cell> = Vec::new();
    for (key, p) in keyed {
        match cells.last_mut() {
            Some(cell) if cell.lattice == key => {
                // keys arrive sorted, so member lists stay sorted too
                cell.members = cell.members.union(&PointSet::singleton(p));
            }
            _ => cells.push(Cell { family, lattice: key, members: PointSet::singleton(p) }),
        }
    }
    cells
}

/// Diagonally shifted half-open grids: n+1 families with side 2(n+1)r and
/// per-family shift i * s/(n+1) on every coordinate.  Each coordinate can
/// spoil at most one shift, so some family leaves every point at distance
/// at least r from its cell boundary.
pub fn shifted_grid_cover(space: &Space, r: f64) -> Result<Cover, CoverError> {
    grid_cover(space, r, GridConstruction::DiagonalShift)
}

/// Grid cover in the requested construction.
pub fn grid_cover(space: &Space, r: f64, construction: GridConstruction) -> Result<Cover, CoverError> {
    if !space.has_coordinates() {
        return Err(CoverError::MatrixSpace);
    }
    if r <= 0.0 {
        return Err(CoverError::NonPositiveRadius);
    }
    let n = space.dimension();
    let k = mesh_constant(space, construction);
    match construction {
        GridConstruction::DiagonalShift => {
            let side = 2.0 * (n as f64 + 1.0) * r;
            let families = (0..=n)
                .map(|i| {
                    let offset = i as f64 * side / (n as f64 + 1.0);
                    let shift = alloc::vec![offset; n];
                    assign_cells(space, i, side, &shift)
                })
                .collect();
            Ok(Cover { radius: r, side, mesh_constant: k, families })
        }
        GridConstruction::Product => {
            let side = 4.0 * r;
            let families = (0..(1usize << n))
                .map(|mask| {
                    let shift: Vec<f64> = (0..n)
                        .map(|j| if mask >> j & 1 == 1 { 2.0 * r } else { 0.0 })
                        .collect();
                    assign_cells(space, mask, side, &shift)
                })
                .collect();
            Ok(Cover { radius: r, side, mesh_constant: k, families })
        }
    }
}

/// First counterexample of each kind found by [`verify_cover`].
#[derive(Clone, Debug, Default)]
pub struct CoverReport {
    /// (family, cell index a, cell index b, shared point)
    pub disjointness: Option<(usize, usize, usize, usize)>,
    /// (family, cell index, measured diameter)
    pub mesh: Option<(usize, usize, f64)>,
    /// point whose radius-r ball fits in no cell
    pub lebesgue: Option<usize>,
}

impl CoverReport {
    pub fn is_valid(&self) -> bool {
        self.disjointness.is_none() && self.mesh.is_none() && self.lebesgue.is_none()
    }
}

/// Exhaustively checks per-family disjointness, the mesh bound
/// `diam(cell) <= k * r`, and the Lebesgue property that every ball
/// `B(x, r)` is contained in some cell of some family.
pub fn verify_cover(space: &Space, cover: &Cover, r: f64, k: f64) -> CoverReport {
    let mut report = CoverReport::default();
    let n_points = space.len();

    // point -> containing cell per family (also drives the Lebesgue scan)
    let mut owner: Vec<Vec<Option<usize>>> = Vec::with_capacity(cover.families.len());
    'families: for (fi, family) in cover.families.iter().enumerate() {
        let mut seen: Vec<Option<usize>> = alloc::vec![None; n_points];
        for (ci, cell) in family.iter().enumerate() {
            for p in cell.members.iter() {
                if let Some(prev) = seen[p] {
                    report.disjointness.get_or_insert((fi, prev, ci, p));
                    owner.push(seen);
                    continue 'families;
                }
                seen[p] = Some(ci);
            }
        }
        owner.push(seen);
    }

    'mesh: for (fi, family) in cover.families.iter().enumerate() {
        for (ci, cell) in family.iter().enumerate() {
            if cell.members.is_empty() {
                continue;
            }
            if !space.set_diameter_within(&cell.members, k * r) {
                report.mesh = Some((fi, ci, space.set_diameter(&cell.members)));
                break 'mesh;
            }
        }
    }

    'points: for x in 0..n_points {
        let ball = space.ball(x, r);
        for (fi, family) in cover.families.iter().enumerate() {
            // a containing cell must contain x itself
            if let Some(ci) = owner[fi][x] {
                if ball.is_subset(&family[ci].members) {
                    continue 'points;
                }
            }
        }
        report.lebesgue = Some(x);
        break;
    }

    report
}

/// The unique integer scale with `(2K+1)^(l-1) / 2 <= d < (2K+1)^l / 2`.
pub fn scale_index(k: f64, d: f64) -> i32 {
    assert!(k > 1.0, "mesh constant must exceed 1");
    assert!(d > 0.0, "scale index needs a positive length");
    let base = 2.0 * k + 1.0;
    let mut l = libm::floor(libm::log(2.0 * d) / libm::log(base)) as i32 + 1;
    // float log can land one off; settle by the defining inequalities
    while 0.5 * scale_pow(k, l - 1) > d {
        l -= 1;
    }
    while d >= 0.5 * scale_pow(k, l) {
        l += 1;
    }
    l
}

/// `(2K+1)^l` for possibly negative `l`.
pub fn scale_pow(k: f64, l: i32) -> f64 {
    libm::pow(2.0 * k + 1.0, l as f64)
}
