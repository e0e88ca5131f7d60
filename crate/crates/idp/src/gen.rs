//! Seeded instance generators: random representations with a target edge
//! density, and planted yes-instances with a construction witness.

use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::model::{Instance, Kind, Representation, TerminalPair};
use crate::solution::{PathRecord, Solution};
use crate::testutil::{compress_spans, rotate_circular};

/// What to generate. `density` is the target average number of ranges open
/// at an endpoint, which approximates the edge-per-vertex ratio `m/n`.
#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    pub kind: Kind,
    pub n: usize,
    pub density: f64,
    pub k: usize,
    pub max_req: u32,
    pub planted: bool,
    pub seed: u64,
}

/// A generated instance; planted generation also returns the path system
/// that was laid into it.
#[derive(Clone, Debug)]
pub struct Generated {
    pub inst: Instance,
    pub witness: Option<Solution>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

/// Generates an instance deterministically from `params.seed`.
pub fn gen_random(params: &GenParams) -> Result<Generated, GenError> {
    if params.n == 0 {
        return Err(GenError::Infeasible("need at least one vertex".into()));
    }
    if params.k > 0 && params.n < 2 {
        return Err(GenError::Infeasible("pairs need at least two vertices".into()));
    }
    if params.k > params.n * (params.n - 1) / 2 {
        return Err(GenError::Infeasible("more pairs than distinct vertex pairs".into()));
    }
    if params.max_req == 0 {
        return Err(GenError::Infeasible("max requirement must be at least 1".into()));
    }
    if !(params.density > 0.0) {
        return Err(GenError::Infeasible("density must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    if params.planted {
        planted(params, &mut rng)
    } else {
        unplanted(params, &mut rng)
    }
}

/// The per-pair requirement cap: circles only admit unit requirements.
fn req_cap(params: &GenParams) -> u32 {
    match params.kind {
        Kind::Interval => params.max_req,
        Kind::Circular => 1,
    }
}

fn unplanted(params: &GenParams, rng: &mut ChaCha8Rng) -> Result<Generated, GenError> {
    let spans = endpoint_process(params.n, params.density, rng);
    let spans = finish_kind(spans, params.kind, rng);
    let pairs = sample_pairs(params.n, params.k, req_cap(params), rng);
    let rep = Representation::new(params.kind, &spans).expect("process yields valid spans");
    let inst = Instance::new(rep, pairs).expect("sampled pairs are valid");
    Ok(Generated { inst, witness: None })
}

/// Walks the `2n` ground points left to right keeping a pool of open
/// ranges: each point either opens a new range or closes a uniformly chosen
/// open one. The opening bias is tuned so the stationary pool size — and
/// with it the edge-per-vertex ratio — tracks the requested density.
fn endpoint_process(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let ground = 2 * n as u32;
    let p_open = (density / (2.0 * density + 1.0)).min(0.49);
    let mut spans = vec![(0u32, 0u32); n];
    let mut open: Vec<usize> = Vec::new();
    let mut next_vertex = 0usize;
    for p in 1..=ground {
        let must_close = next_vertex == n || open.len() as u32 == ground - p + 1;
        let opens = !must_close && (open.is_empty() || rng.gen_bool(p_open));
        if opens {
            spans[next_vertex].0 = p;
            open.push(next_vertex);
            next_vertex += 1;
        } else {
            let at = rng.gen_range(0..open.len());
            let v = open.swap_remove(at);
            spans[v].1 = p;
        }
    }
    debug_assert!(open.is_empty() && next_vertex == n);
    spans
}

/// Line spans are already valid intervals; on a circle, rotating the whole
/// ground set by a random offset lets arcs wrap across the seam without
/// changing which arcs intersect.
fn finish_kind(spans: Vec<(u32, u32)>, kind: Kind, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    match kind {
        Kind::Interval => spans,
        Kind::Circular => {
            let rep = Representation::new(Kind::Circular, &spans).expect("valid before rotation");
            let shift = rng.gen_range(0..rep.ground());
            let rot = rotate_circular(&rep, shift);
            (0..rot.n()).map(|v| (rot.left(v), rot.right(v))).collect()
        }
    }
}

fn sample_pairs(n: usize, k: usize, max_req: u32, rng: &mut ChaCha8Rng) -> Vec<TerminalPair> {
    let mut pairs = Vec::with_capacity(k);
    let mut used: HashSet<(u32, u32)> = HashSet::with_capacity(k);
    while pairs.len() < k {
        let s = rng.gen_range(0..n as u32);
        let t = rng.gen_range(0..n as u32);
        if s == t {
            continue;
        }
        let pair = TerminalPair::new(s, t, rng.gen_range(1..=max_req));
        if used.insert(pair.key()) {
            pairs.push(pair);
        }
    }
    pairs
}

/// Lays one corridor per pair on a sparse scale — blocks far enough apart
/// never to touch — then fills the remaining vertex budget with noise
/// ranges anywhere on the scale. Noise may overlap the corridors: vertices
/// outside a path system never affect whether it is mutually induced, so
/// the witness survives.
fn planted(params: &GenParams, rng: &mut ChaCha8Rng) -> Result<Generated, GenError> {
    let cap = req_cap(params);
    let mut raw: Vec<(i64, i64)> = Vec::with_capacity(params.n);
    let mut pairs = Vec::with_capacity(params.k);
    let mut witness = Vec::new();
    let mut cursor: i64 = 0;
    for _ in 0..params.k {
        let s = raw.len() as u32;
        let r = rng.gen_range(1..=cap);
        if r >= 2 {
            // Overlapping terminals whose shared strip hosts r−1 disjoint
            // connectors: the terminal edge plus the one-hop paths.
            let t = s + 1;
            raw.push((cursor, cursor + 2 * r as i64));
            raw.push((cursor + 1, cursor + 2 * r as i64 + 1));
            witness.push(PathRecord { pair: pairs.len(), vertices: vec![s, t] });
            for j in 0..r as i64 - 1 {
                let w = raw.len() as u32;
                raw.push((cursor + 2 + 2 * j, cursor + 3 + 2 * j));
                witness.push(PathRecord { pair: pairs.len(), vertices: vec![s, w, t] });
            }
            pairs.push(TerminalPair::new(s, t, r));
            cursor += 2 * r as i64 + 4;
        } else {
            // A staircase of h+2 ranges, each overlapping only the next.
            let h = rng.gen_range(0..=3u32);
            let mut path = Vec::with_capacity(h as usize + 2);
            for j in 0..h as i64 + 2 {
                path.push(raw.len() as u32);
                raw.push((cursor + 2 * j, cursor + 2 * j + 3));
            }
            let t = *path.last().unwrap();
            pairs.push(TerminalPair::new(s, t, 1));
            witness.push(PathRecord { pair: pairs.len() - 1, vertices: path });
            cursor += 2 * (h as i64 + 2) + 4;
        }
    }
    if raw.len() > params.n {
        return Err(GenError::Infeasible(format!(
            "the plant needs {} vertices but n is only {}",
            raw.len(),
            params.n
        )));
    }
    let mut taken: HashSet<i64> = raw.iter().flat_map(|&(l, r)| [l, r]).collect();
    let hi = (8 * params.n as i64 + 8).max(cursor + 2);
    // Raw coordinates end up roughly four apart once all 2n endpoints are
    // placed, so a noise range of raw length 4·density overlaps about
    // `density` other ranges — keeping the graph as sparse as requested.
    let reach = (4.0 * params.density).ceil() as i64 + 2;
    while raw.len() < params.n {
        let a = rng.gen_range(-1..=hi);
        let b = a + rng.gen_range(1..=reach);
        if taken.contains(&a) || taken.contains(&b) {
            continue;
        }
        taken.insert(a);
        taken.insert(b);
        raw.push((a, b));
    }
    let spans = compress_spans(&raw);
    let spans = finish_kind(spans, params.kind, rng);
    let rep = Representation::new(params.kind, &spans).expect("plant yields valid spans");
    let inst = Instance::new(rep, pairs).expect("planted pairs are valid");
    let mut sol = Solution { paths: witness };
    sol.canonicalize();
    Ok(Generated { inst, witness: Some(sol) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_solve, verify_mutually_induced, BruteLimits};

    fn params(kind: Kind, n: usize, k: usize, planted: bool, seed: u64) -> GenParams {
        GenParams { kind, n, density: 3.0, k, max_req: 3, planted, seed }
    }

    #[test]
    fn generation_is_deterministic_under_the_seed() {
        for planted in [false, true] {
            let p = params(Kind::Interval, 5, 1, planted, 1);
            let a = gen_random(&p).unwrap();
            let b = gen_random(&p).unwrap();
            assert_eq!(a.inst.rep().left(0), b.inst.rep().left(0));
            let (ra, rb) = (a.inst.rep(), b.inst.rep());
            for v in 0..5 {
                assert_eq!((ra.left(v), ra.right(v)), (rb.left(v), rb.right(v)));
            }
            assert_eq!(a.inst.pairs(), b.inst.pairs());
        }
    }

    #[test]
    fn random_instances_validate_for_both_kinds() {
        for kind in [Kind::Interval, Kind::Circular] {
            for seed in 0..40 {
                let g = gen_random(&params(kind, 8, 3, false, seed)).unwrap();
                assert_eq!(g.inst.kind(), kind);
                assert_eq!(g.inst.n(), 8);
                assert_eq!(g.inst.k(), 3);
                assert!(g.witness.is_none());
            }
        }
    }

    #[test]
    fn planted_witnesses_verify_and_the_oracle_agrees() {
        for kind in [Kind::Interval, Kind::Circular] {
            for seed in 0..25 {
                let g = gen_random(&params(kind, 10, 2, true, seed)).unwrap();
                let witness = g.witness.expect("planted generation records its paths");
                assert!(
                    verify_mutually_induced(&g.inst, &witness.paths).is_empty(),
                    "kind {kind:?} seed {seed}"
                );
                let limits = BruteLimits { max_total_req: 9, ..BruteLimits::default() };
                assert!(brute_solve(&g.inst, &limits).unwrap().is_some(), "kind {kind:?} seed {seed}");
            }
        }
    }

    #[test]
    fn planted_large_instances_stay_verified() {
        for kind in [Kind::Interval, Kind::Circular] {
            let p = GenParams {
                kind,
                n: 20_000,
                density: 4.0,
                k: 12,
                max_req: 3,
                planted: true,
                seed: 9,
            };
            let g = gen_random(&p).unwrap();
            let witness = g.witness.unwrap();
            assert!(verify_mutually_induced(&g.inst, &witness.paths).is_empty(), "kind {kind:?}");
        }
    }

    #[test]
    fn infeasible_parameters_are_reported() {
        assert!(gen_random(&params(Kind::Interval, 0, 0, false, 1)).is_err());
        assert!(gen_random(&params(Kind::Interval, 3, 9, false, 1)).is_err());
        assert!(gen_random(&params(Kind::Interval, 2, 2, true, 1)).is_err());
        let mut p = params(Kind::Interval, 4, 1, false, 1);
        p.max_req = 0;
        assert!(gen_random(&p).is_err());
        p.max_req = 1;
        p.density = 0.0;
        assert!(gen_random(&p).is_err());
    }

    #[test]
    fn density_tracks_the_request() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &d in &[1.0, 4.0, 8.0] {
            let spans = endpoint_process(4000, d, &mut rng);
            let rep = Representation::new(Kind::Interval, &spans).unwrap();
            let adj = crate::model::build_adjacency(&rep);
            let ratio = adj.edge_count() as f64 / 4000.0;
            assert!(
                ratio > d * 0.4 && ratio < d * 2.5,
                "density {d} produced m/n = {ratio}"
            );
        }
    }
}
