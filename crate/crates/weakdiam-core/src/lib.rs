//! Core algorithms for certified weak-diameter colorings of intersection
//! graphs of fat geometric objects.
//!
//! The pipeline goes: shifted-grid covers of a finite point cloud, a
//! multi-scale laminar web built from them, tree decompositions of one
//! laminar family with per-bag dominating sets, and a recursive 2-coloring
//! whose monochromatic components have bounded graph diameter.  Every stage
//! has an independent verifier so results can be certified rather than
//! trusted.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live
//! in the companion `weakdiam` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cover;
pub mod coloring;
pub mod decomp;
pub mod graph;
pub mod metric;
pub mod spacefill;
pub mod web;

pub use num_bigint::BigUint;

pub use cover::{scale_index, shifted_grid_cover, verify_cover, Cover, GridConstruction};
pub use coloring::{two_color, verify_weak_diameter, w_bound};
pub use decomp::{bag_domination, build_tree_decomposition, verify_tree_decomposition, TreeDecomposition};
pub use graph::{graph_power, intersection_graph, Coloring, Graph};
pub use metric::{MetricKind, PointSet, Space};
pub use spacefill::{shallow_union_system, ObjectSystem};
pub use web::{build_web, catch, catch_in_family, verify_laminar, Web};
