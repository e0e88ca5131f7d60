//! Induced disjoint paths on interval and circular-arc graphs.
//!
//! Graphs arrive as geometric representations: `n` vertices own the `2n`
//! ground points `{1, …, 2n}`, each vertex covering the range between its two
//! endpoints (arcs may wrap past the seam on a circle). Two vertices are
//! adjacent exactly when their ranges share a point. Given terminal pairs
//! `(s_i, t_i)` with requirements `r_i`, the solver finds paths — `r_i` of
//! them joining each pair — that are *mutually induced*: no path has a chord
//! at an inner vertex, distinct paths share only vertices that are ends of
//! both, and no inner vertex of one path is adjacent to another path except
//! at a shared end.
//!
//! The main entry points are [`interval::solve_interval`] (interval graphs,
//! arbitrary requirements) and [`circular::solve_circular`] (circular-arc
//! graphs, unit requirements), both running in time linear in `n + m`. The
//! [`oracle`] module provides an exhaustive reference solver and a solution
//! verifier, [`gen`] produces random and planted instances, and [`format`]
//! reads and writes the text formats used by the CLI.

pub mod circular;
pub mod format;
pub mod gen;
pub mod indset;
pub mod interval;
pub mod model;
pub mod oracle;
pub mod solution;
pub mod testutil;

pub use model::{
    build_adjacency, build_buckets, build_buckets_all, cw_phase, for_each_neighbor, Adjacency,
    BucketIndex, Instance, Kind, Representation, TerminalPair, ValidationError,
};
pub use solution::{NoCertificate, Outcome, PathRecord, Solution};
