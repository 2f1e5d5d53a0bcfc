//! Finite metric spaces, point sets, balls and diameters.

use alloc::vec::Vec;
use core::fmt;

/// How distances are computed for a [`Space`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricKind {
    L2,
    Linf,
    /// Explicit distance matrix; no coordinates available.
    Matrix,
}

/// A sorted, duplicate-free set of point indices into a [`Space`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet {
    items: Vec<usize>,
}

impl PointSet {
    pub fn new(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        items.dedup();
        PointSet { items }
    }

    pub fn singleton(p: usize) -> Self {
        PointSet { items: alloc::vec![p] }
    }

    /// Builds from a slice already known to be sorted and duplicate-free.
    pub fn from_sorted(items: Vec<usize>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        PointSet { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.items.first().copied()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.items.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.items
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        if self.items.len() > other.items.len() {
            return false;
        }
        // merge walk
        let mut j = 0;
        for &p in &self.items {
            while j < other.items.len() && other.items[j] < p {
                j += 1;
            }
            if j == other.items.len() || other.items[j] != p {
                return false;
            }
            j += 1;
        }
        true
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.items.len() && j < other.items.len() {
            match self.items[i].cmp(&other.items[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.items.len() && j < other.items.len() {
            match self.items[i].cmp(&other.items[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    out.push(self.items[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        PointSet { items: out }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut out = Vec::with_capacity(self.items.len() + other.items.len());
        let (mut i, mut j) = (0, 0);
        while i < self.items.len() || j < other.items.len() {
            if j == other.items.len() {
                out.push(self.items[i]);
                i += 1;
            } else if i == self.items.len() {
                out.push(other.items[j]);
                j += 1;
            } else {
                match self.items[i].cmp(&other.items[j]) {
                    core::cmp::Ordering::Less => {
                        out.push(self.items[i]);
                        i += 1;
                    }
                    core::cmp::Ordering::Greater => {
                        out.push(other.items[j]);
                        j += 1;
                    }
                    core::cmp::Ordering::Equal => {
                        out.push(self.items[i]);
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        PointSet { items: out }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut out = Vec::new();
        let mut j = 0;
        for &p in &self.items {
            while j < other.items.len() && other.items[j] < p {
                j += 1;
            }
            if j == other.items.len() || other.items[j] != p {
                out.push(p);
            }
        }
        PointSet { items: out }
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        PointSet::new(iter.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceError {
    Empty,
    DimensionMismatch { point: usize },
    MatrixNotSquare,
}

impl fmt::Display for SpaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceError::Empty => write!(f, "space must contain at least one point"),
            SpaceError::DimensionMismatch { point } => {
                write!(f, "point {point} has wrong coordinate count")
            }
            SpaceError::MatrixNotSquare => write!(f, "distance matrix is not square"),
        }
    }
}

/// A finite metric space: either a coordinate cloud under L2/Linf, or an
/// explicit distance matrix (dimension 0).
#[derive(Clone, Debug)]
pub struct Space {
    kind: MetricKind,
    dimension: usize,
    coords: Vec<Vec<f64>>,
    matrix: Vec<Vec<f64>>,
}

/// One metric-axiom violation found by [`Space::verify_metric`].
#[derive(Clone, Debug, PartialEq)]
pub enum MetricViolation {
    Asymmetric { i: usize, j: usize },
    NonzeroDiagonal { i: usize },
    Negative { i: usize, j: usize },
    /// d(i,j) > d(i,k) + d(k,j)
    Triangle { i: usize, j: usize, k: usize },
}

#[derive(Clone, Debug, Default)]
pub struct MetricReport {
    pub violations: Vec<MetricViolation>,
}

impl MetricReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Space {
    pub fn from_points(kind: MetricKind, points: Vec<Vec<f64>>) -> Result<Self, SpaceError> {
        assert!(kind != MetricKind::Matrix, "use from_matrix for matrix spaces");
        if points.is_empty() {
            return Err(SpaceError::Empty);
        }
        let dimension = points[0].len();
        if dimension == 0 {
            return Err(SpaceError::DimensionMismatch { point: 0 });
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dimension {
                return Err(SpaceError::DimensionMismatch { point: i });
            }
        }
        Ok(Space { kind, dimension, coords: points, matrix: Vec::new() })
    }

    /// Matrix spaces have dimension 0; axiom violations are reported by
    /// [`Space::verify_metric`], not rejected here.
    pub fn from_matrix(matrix: Vec<Vec<f64>>) -> Result<Self, SpaceError> {
        if matrix.is_empty() {
            return Err(SpaceError::Empty);
        }
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(SpaceError::MatrixNotSquare);
        }
        Ok(Space { kind: MetricKind::Matrix, dimension: 0, coords: Vec::new(), matrix })
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        match self.kind {
            MetricKind::Matrix => self.matrix.len(),
            _ => self.coords.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn has_coordinates(&self) -> bool {
        self.kind != MetricKind::Matrix
    }

    pub fn coords(&self, p: usize) -> &[f64] {
        &self.coords[p]
    }

    pub fn distance(&self, p: usize, q: usize) -> f64 {
        assert!(p < self.len() && q < self.len(), "point index out of range");
        match self.kind {
            MetricKind::Matrix => self.matrix[p][q],
            MetricKind::L2 => {
                let mut acc = 0.0;
                for (a, b) in self.coords[p].iter().zip(&self.coords[q]) {
                    let d = a - b;
                    acc += d * d;
                }
                libm::sqrt(acc)
            }
            MetricKind::Linf => {
                let mut acc = 0.0f64;
                for (a, b) in self.coords[p].iter().zip(&self.coords[q]) {
                    acc = acc.max(libm::fabs(a - b));
                }
                acc
            }
        }
    }

    /// Closed ball `{y : d(x,y) <= r}`.
    pub fn ball(&self, x: usize, r: f64) -> PointSet {
        assert!(r >= 0.0, "ball radius must be nonnegative");
        PointSet::from_sorted((0..self.len()).filter(|&y| self.distance(x, y) <= r).collect())
    }

    /// Max pairwise distance within a nonempty set; 0 for singletons.
    /// Under L-infinity this is exactly the largest per-axis coordinate
    /// range, so no pair scan is needed there.
    pub fn set_diameter(&self, s: &PointSet) -> f64 {
        assert!(!s.is_empty(), "diameter of empty set");
        if self.kind == MetricKind::Linf {
            let (lo, hi) = self.bounding_box(s);
            return lo
                .iter()
                .zip(&hi)
                .map(|(&a, &b)| b - a)
                .fold(0.0f64, f64::max);
        }
        let pts = s.as_slice();
        let mut best = 0.0f64;
        for (i, &p) in pts.iter().enumerate() {
            for &q in &pts[i + 1..] {
                best = best.max(self.distance(p, q));
            }
        }
        best
    }

    /// Per-axis coordinate ranges of a nonempty set (coordinate spaces
    /// only).
    fn bounding_box(&self, s: &PointSet) -> (Vec<f64>, Vec<f64>) {
        let n = self.dimension;
        let mut lo = alloc::vec![f64::INFINITY; n];
        let mut hi = alloc::vec![f64::NEG_INFINITY; n];
        for p in s.iter() {
            for (d, &x) in self.coords(p).iter().enumerate() {
                lo[d] = lo[d].min(x);
                hi[d] = hi[d].max(x);
            }
        }
        (lo, hi)
    }

    /// Whether `diam(s) <= bound`, with a bounding-box shortcut: the box
    /// diagonal is an upper bound on the diameter, so a small box settles
    /// the question without the quadratic pair scan.
    pub fn set_diameter_within(&self, s: &PointSet, bound: f64) -> bool {
        assert!(!s.is_empty(), "diameter of empty set");
        if self.has_coordinates() {
            let (lo, hi) = self.bounding_box(s);
            let diag = match self.kind {
                MetricKind::Linf => {
                    lo.iter().zip(&hi).map(|(&a, &b)| b - a).fold(0.0f64, f64::max)
                }
                _ => libm::sqrt(
                    lo.iter().zip(&hi).map(|(&a, &b)| (b - a) * (b - a)).sum(),
                ),
            };
            if diag <= bound {
                return true;
            }
            if self.kind == MetricKind::Linf {
                // the box bound is exact here
                return false;
            }
        }
        self.set_diameter(s) <= bound
    }

    pub fn verify_metric(&self) -> MetricReport {
        let mut report = MetricReport::default();
        if self.kind != MetricKind::Matrix {
            // axioms hold by construction for coordinate spaces
            return report;
        }
        let n = self.matrix.len();
        for i in 0..n {
            if self.matrix[i][i] != 0.0 {
                report.violations.push(MetricViolation::NonzeroDiagonal { i });
            }
            for j in 0..n {
                if self.matrix[i][j] < 0.0 {
                    report.violations.push(MetricViolation::Negative { i, j });
                }
                if j > i && self.matrix[i][j] != self.matrix[j][i] {
                    report.violations.push(MetricViolation::Asymmetric { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.matrix[i][j] > self.matrix[i][k] + self.matrix[k][j] {
                        report.violations.push(MetricViolation::Triangle { i, j, k });
                    }
                }
            }
        }
        report
    }
}
