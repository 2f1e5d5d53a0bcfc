//! Object systems, shallow unions, empirical space-filling profiles,
//! roundness checking and doubling-constant estimation.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::graph;
use crate::metric::{PointSet, Space};

/// The system of named nonempty point subsets whose intersection graph the
/// pipeline colors.  Object ids are dense from 0.
#[derive(Clone, Debug)]
pub struct ObjectSystem {
    objects: Vec<PointSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemError {
    EmptyObject { id: usize },
}

impl fmt::Display for SystemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemError::EmptyObject { id } => write!(f, "object {id} is empty"),
        }
    }
}

impl ObjectSystem {
    pub fn new(objects: Vec<PointSet>) -> Result<Self, SystemError> {
        for (id, o) in objects.iter().enumerate() {
            if o.is_empty() {
                return Err(SystemError::EmptyObject { id });
            }
        }
        Ok(ObjectSystem { objects })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, id: usize) -> &PointSet {
        &self.objects[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = &PointSet> {
        self.objects.iter()
    }
}

/// Replaces every object by the union of all objects within hop distance
/// `t` of it in the intersection graph; ids are preserved.
pub fn shallow_union_system(system: &ObjectSystem, t: usize) -> ObjectSystem {
    if t == 0 {
        return system.clone();
    }
    let g = graph::intersection_graph(system);
    let objects = (0..system.len())
        .map(|i| {
            let dist = graph::bfs_distances(&g, &[i]);
            let mut acc = system.object(i).clone();
            for (j, &d) in dist.iter().enumerate() {
                if d <= t && j != i {
                    acc = acc.union(system.object(j));
                }
            }
            acc
        })
        .collect();
    ObjectSystem { objects }
}

/// A space-filling query: how many pairwise-disjoint objects of diameter at
/// least `min_diameter` intersect the ball of `radius` around `center`?
#[derive(Clone, Copy, Debug)]
pub struct SpacefillQuery {
    pub center: usize,
    pub radius: f64,
    pub min_diameter: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Exact,
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpacefillError {
    TooManyCandidates { count: usize, limit: usize },
}

impl fmt::Display for SpacefillError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpacefillError::TooManyCandidates { count, limit } => {
                write!(f, "{count} candidates exceed the exact-count limit {limit}")
            }
        }
    }
}

fn candidates(space: &Space, system: &ObjectSystem, q: &SpacefillQuery) -> Vec<usize> {
    assert!(q.radius > 0.0 && q.min_diameter > 0.0, "query lengths must be positive");
    let ball = space.ball(q.center, q.radius);
    (0..system.len())
        .filter(|&i| {
            let obj = system.object(i);
            obj.intersects(&ball) && space.set_diameter(obj) >= q.min_diameter
        })
        .collect()
}

/// Exact maximum number of pairwise-disjoint candidates via branch and
/// bound on a bitmask conflict graph.
fn max_disjoint_exact(conflict: &[u64], all: u64) -> usize {
    fn go(conflict: &[u64], remaining: u64, best: &mut usize, chosen: usize) {
        let live = remaining.count_ones() as usize;
        if chosen + live <= *best {
            return;
        }
        if remaining == 0 {
            *best = (*best).max(chosen);
            return;
        }
        let v = remaining.trailing_zeros() as usize;
        // include v
        go(conflict, remaining & !(1 << v) & !conflict[v], best, chosen + 1);
        // exclude v
        go(conflict, remaining & !(1 << v), best, chosen);
    }
    let mut best = 0;
    go(conflict, all, &mut best, 0);
    best
}

/// Counts pairwise-disjoint qualifying objects.  `Exact` refuses more than
/// `exact_limit` candidates; `Greedy` returns the ascending-id maximal
/// disjoint family, a lower bound.
pub fn spacefill_count(
    space: &Space,
    system: &ObjectSystem,
    q: &SpacefillQuery,
    mode: CountMode,
    exact_limit: usize,
) -> Result<usize, SpacefillError> {
    let cand = candidates(space, system, q);
    match mode {
        CountMode::Greedy => {
            let mut chosen: Vec<usize> = Vec::new();
            for &i in &cand {
                if chosen.iter().all(|&j| !system.object(i).intersects(system.object(j))) {
                    chosen.push(i);
                }
            }
            Ok(chosen.len())
        }
        CountMode::Exact => {
            let m = cand.len();
            if m > exact_limit.min(63) {
                return Err(SpacefillError::TooManyCandidates { count: m, limit: exact_limit });
            }
            let mut conflict = alloc::vec![0u64; m];
            for a in 0..m {
                for b in a + 1..m {
                    if system.object(cand[a]).intersects(system.object(cand[b])) {
                        conflict[a] |= 1 << b;
                        conflict[b] |= 1 << a;
                    }
                }
            }
            let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
            Ok(max_disjoint_exact(&conflict, all))
        }
    }
}

/// One violated query from [`lemcons_check`].
#[derive(Clone, Debug, Default)]
pub struct LemconsReport {
    /// (query index, shallow-union count, base-system count)
    pub violations: Vec<(usize, usize, usize)>,
}

impl LemconsReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, query by query, that the exact disjoint count of the t-shallow
/// union system at (x, r, s) never exceeds the exact count of the base
/// system at (x, r+s, s/(2t+2)).
pub fn lemcons_check(
    space: &Space,
    system: &ObjectSystem,
    t: usize,
    queries: &[SpacefillQuery],
    exact_limit: usize,
) -> Result<LemconsReport, SpacefillError> {
    let unions = shallow_union_system(system, t);
    let mut report = LemconsReport::default();
    for (qi, q) in queries.iter().enumerate() {
        let lhs = spacefill_count(space, &unions, q, CountMode::Exact, exact_limit)?;
        let relaxed = SpacefillQuery {
            center: q.center,
            radius: q.radius + q.min_diameter,
            min_diameter: q.min_diameter / (2.0 * t as f64 + 2.0),
        };
        let rhs = spacefill_count(space, system, &relaxed, CountMode::Exact, exact_limit)?;
        if lhs > rhs {
            report.violations.push((qi, lhs, rhs));
        }
    }
    Ok(report)
}

/// First (point, radius) at which the roundness condition fails.
#[derive(Clone, Debug, Default)]
pub struct RoundnessReport {
    pub failure: Option<(usize, f64)>,
}

impl RoundnessReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that `s` is eta-round: for every v in s and every critical
/// radius r <= diam(s), some v' in s has `ball(v', eta*r)` inside
/// the intersection of `s` with `ball(v, r)`.  Between consecutive critical radii both finite ball
/// memberships are constant, so the check is exact.
pub fn roundness_check(space: &Space, s: &PointSet, eta: f64) -> RoundnessReport {
    assert!(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
    assert!(!s.is_empty());
    let diam = space.set_diameter(s);
    let n = space.len();
    let members: Vec<usize> = s.iter().collect();

    // margin(v') = distance from v' to the nearest point outside s;
    // ball(v', rho) is inside s iff rho < margin(v').
    let margin: Vec<f64> = members
        .iter()
        .map(|&vp| {
            let mut m = f64::INFINITY;
            for y in 0..n {
                if !s.contains(y) {
                    m = m.min(space.distance(vp, y));
                }
            }
            m
        })
        .collect();

    // radii where ball(v', eta r) membership can change, shared by all v
    let mut shared: Vec<f64> = Vec::new();
    for &vp in &members {
        for y in 0..n {
            let r = space.distance(vp, y) / eta;
            if r > 0.0 && r <= diam {
                shared.push(r);
            }
        }
    }

    for &v in &members {
        let mut radii: Vec<f64> = shared.clone();
        for y in 0..n {
            let d = space.distance(v, y);
            if d > 0.0 && d <= diam {
                radii.push(d);
            }
        }
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        'radii: for &r in &radii {
            // fast path: sub-ball inside s by margin and inside B(v, r) by
            // the triangle inequality
            for (mi, &vp) in members.iter().enumerate() {
                if margin[mi] > eta * r && space.distance(v, vp) + eta * r <= r {
                    continue 'radii;
                }
            }
            // exact fallback
            for &vp in &members {
                let sub = space.ball(vp, eta * r);
                let ok = sub
                    .iter()
                    .all(|y| s.contains(y) && space.distance(v, y) <= r);
                if ok {
                    continue 'radii;
                }
            }
            return RoundnessReport { failure: Some((v, r)) };
        }
    }
    RoundnessReport::default()
}

/// `K ^ ceil(log2((x+1)/eta))` as an exact integer.
pub fn round_spacefill_bound(k_doubling: u64, eta: f64, x: f64) -> BigUint {
    assert!(k_doubling >= 1, "doubling constant must be at least 1");
    assert!(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
    assert!(x > 0.0, "ratio must be positive");
    let ratio = (x + 1.0) / eta;
    let mut e = libm::ceil(libm::log2(ratio)) as i64;
    while e > 0 && libm::pow(2.0, (e - 1) as f64) >= ratio {
        e -= 1;
    }
    while libm::pow(2.0, e as f64) < ratio {
        e += 1;
    }
    let e = e.max(0) as u32;
    BigUint::from(k_doubling).pow(e)
}

/// Upper estimate of the doubling constant: over sampled centers and a
/// dyadic radius ladder, greedily cover each ball of radius r by balls of
/// radius r/2 centered at points of the space, and take the worst count.
pub fn doubling_estimate(space: &Space) -> usize {
    let n = space.len();
    if n <= 1 {
        return 1;
    }
    let mut min_pos = f64::INFINITY;
    let mut diam = 0.0f64;
    let center_stride = (n / 200).max(1);
    for x in (0..n).step_by(center_stride) {
        for y in 0..n {
            let d = space.distance(x, y);
            diam = diam.max(d);
            if d > 0.0 {
                min_pos = min_pos.min(d);
            }
        }
    }
    if diam == 0.0 {
        return 1;
    }
    let mut best = 1usize;
    let mut r = diam;
    while r >= min_pos {
        for x in (0..n).step_by(center_stride) {
            best = best.max(greedy_halving_cover(space, x, r));
        }
        r /= 2.0;
    }
    best
}

/// Farthest-point greedy cover of ball(x, r) by balls of radius r/2.
fn greedy_halving_cover(space: &Space, x: usize, r: f64) -> usize {
    let ball = space.ball(x, r);
    let mut uncovered: Vec<usize> = ball.iter().collect();
    let mut centers: Vec<usize> = Vec::new();
    while !uncovered.is_empty() {
        // farthest uncovered point from the chosen centers (from x at first)
        let mut pick = uncovered[0];
        let mut pick_d = -1.0f64;
        for &p in &uncovered {
            let d = if centers.is_empty() {
                space.distance(x, p)
            } else {
                centers.iter().map(|&c| space.distance(c, p)).fold(f64::INFINITY, f64::min)
            };
            if d > pick_d {
                pick_d = d;
                pick = p;
            }
        }
        centers.push(pick);
        uncovered.retain(|&p| space.distance(pick, p) > r / 2.0);
    }
    centers.len()
}
