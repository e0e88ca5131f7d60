//! Builders for instances laid out on a sparse coordinate scale.
//!
//! Hand-written constructions and the generator place endpoints on an
//! arbitrary integer scale; [`compress_spans`] maps them order-preservingly
//! onto the dense ground set `{1..2n}` that representations require.

use crate::model::{Instance, Kind, Representation};

/// Replaces each endpoint by its rank among all endpoints, preserving order
/// (and therefore adjacency). Raw endpoints must be pairwise distinct.
pub fn compress_spans(raw: &[(i64, i64)]) -> Vec<(u32, u32)> {
    let mut points: Vec<i64> = raw.iter().flat_map(|&(l, r)| [l, r]).collect();
    points.sort_unstable();
    assert!(
        points.windows(2).all(|w| w[0] != w[1]),
        "sparse layouts must use pairwise distinct endpoints"
    );
    let rank = |p: i64| (points.partition_point(|&q| q < p) + 1) as u32;
    raw.iter().map(|&(l, r)| (rank(l), rank(r))).collect()
}

/// Builds an interval instance from sparse coordinates.
pub fn sparse_interval(raw: &[(i64, i64)], pairs: &[(u32, u32, u32)]) -> Instance {
    Instance::interval(&compress_spans(raw), pairs).expect("sparse interval layout must validate")
}

/// Builds a circular instance from sparse coordinates; a span with `l > r`
/// wraps, exactly as in the dense encoding.
pub fn sparse_circular(raw: &[(i64, i64)], pairs: &[(u32, u32, u32)]) -> Instance {
    Instance::circular(&compress_spans(raw), pairs).expect("sparse circular layout must validate")
}

/// Rotates every endpoint of a representation clockwise by `shift` points.
/// Rotation relabels the ground set cyclically, so adjacency — and with it
/// every path system — is unchanged; spans may start or stop wrapping.
pub fn rotate_circular(rep: &Representation, shift: u32) -> Representation {
    assert!(rep.kind() == Kind::Circular, "only circular representations rotate");
    let g = rep.ground();
    let turn = |p: u32| (p - 1 + shift) % g + 1;
    let spans: Vec<(u32, u32)> =
        (0..rep.n()).map(|v| (turn(rep.left(v)), turn(rep.right(v)))).collect();
    Representation::new(Kind::Circular, &spans).expect("rotation preserves validity")
}
