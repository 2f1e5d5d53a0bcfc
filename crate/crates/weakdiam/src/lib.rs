//! IO, generators, the solve pipeline and verification around
//! `weakdiam-core`.  The binary in this crate exposes the `gen`, `solve`,
//! `verify`, `profile` and `export` subcommands.

pub mod export;
pub mod generate;
pub mod instance;
pub mod pipeline;
pub mod profile;
pub mod verifier;
