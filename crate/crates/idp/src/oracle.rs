//! Ground-truth machinery: a solution verifier, an enumerator for the paths
//! solutions may use, and exhaustive reference solvers. Everything here is
//! independent of the linear-time pipeline so the two can check each other.

use crate::model::{build_adjacency, Instance, Representation, TerminalPair};
use crate::solution::{PathRecord, Solution};
use std::collections::HashSet;
use thiserror::Error;

/// One broken clause of the mutually-induced-paths definition, with the
/// objects that witness it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// Not a simple path over valid vertices (or a dangling pair id).
    NotAPath { path: usize },
    /// The path's ends are not its pair's representatives.
    WrongEndpoints { path: usize },
    /// An edge between non-consecutive path vertices, at least one inner.
    InnerChord { path: usize, u: u32, v: u32 },
    /// Two paths share a vertex that is not an end of both.
    IllegalSharedVertex { path_a: usize, path_b: usize, vertex: u32 },
    /// An inner vertex of one path is adjacent to another path, and the
    /// touched vertex is not a common end.
    IllegalAdjacency { path_a: usize, inner: u32, path_b: usize, vertex: u32 },
    /// The number of paths serving a pair differs from its requirement.
    QuotaMismatch { pair: usize, expected: u32, got: u32 },
}

/// Checks a path system against the full problem definition; the empty
/// vector means the system is a valid solution. All violations are reported,
/// each once, in discovery order.
pub fn verify_mutually_induced(inst: &Instance, paths: &[PathRecord]) -> Vec<Violation> {
    let n = inst.n();
    let rep = inst.rep();
    let adj = build_adjacency(rep);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |out: &mut Vec<Violation>, v: Violation| {
        if seen.insert(v) {
            out.push(v);
        }
    };

    let mut stamp = vec![u32::MAX; n];
    let mut broken = vec![false; paths.len()];
    for (pi, p) in paths.iter().enumerate() {
        let mut ok = p.pair < inst.k()
            && p.vertices.len() >= 2
            && p.vertices.iter().all(|&v| (v as usize) < n);
        if ok {
            for &v in &p.vertices {
                if stamp[v as usize] == pi as u32 {
                    ok = false;
                    break;
                }
                stamp[v as usize] = pi as u32;
            }
        }
        if ok {
            ok = p.vertices.windows(2).all(|w| rep.adjacent(w[0] as usize, w[1] as usize));
        }
        if !ok {
            push(&mut out, Violation::NotAPath { path: pi });
            broken[pi] = true;
        }
    }

    for (pi, p) in paths.iter().enumerate() {
        if broken[pi] {
            continue;
        }
        let (a, b) = (p.vertices[0], *p.vertices.last().unwrap());
        if (a.min(b), a.max(b)) != inst.pairs()[p.pair].key() {
            push(&mut out, Violation::WrongEndpoints { path: pi });
        }
    }

    let mut got = vec![0u32; inst.k()];
    for p in paths {
        if p.pair < inst.k() {
            got[p.pair] += 1;
        }
    }
    for (i, pair) in inst.pairs().iter().enumerate() {
        if got[i] != pair.r {
            push(&mut out, Violation::QuotaMismatch { pair: i, expected: pair.r, got: got[i] });
        }
    }

    // Distinctness: two records spelling the same path (in either direction)
    // cannot both stand, whatever their inner vertices.
    let mut keyed: Vec<(Vec<u32>, usize)> = paths
        .iter()
        .enumerate()
        .map(|(pi, p)| {
            let mut f = p.vertices.clone();
            let mut r = f.clone();
            r.reverse();
            if r < f {
                f = r;
            }
            (f, pi)
        })
        .collect();
    keyed.sort();
    for w in keyed.windows(2) {
        if w[0].0 == w[1].0 && !w[0].0.is_empty() {
            push(
                &mut out,
                Violation::IllegalSharedVertex {
                    path_a: w[0].1.min(w[1].1),
                    path_b: w[0].1.max(w[1].1),
                    vertex: w[0].0[0],
                },
            );
        }
    }

    // Vertex memberships of the sound paths, for the cross-path clauses.
    let mut members: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for (pi, p) in paths.iter().enumerate() {
        if broken[pi] {
            continue;
        }
        for (pos, &v) in p.vertices.iter().enumerate() {
            members[v as usize].push((pi as u32, pos as u32));
        }
    }
    let is_end = |pi: u32, v: u32| {
        let p = &paths[pi as usize].vertices;
        p[0] == v || *p.last().unwrap() == v
    };

    for (v, ms) in members.iter().enumerate() {
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                let (pa, pb) = (ms[i].0, ms[j].0);
                if pa != pb && !(is_end(pa, v as u32) && is_end(pb, v as u32)) {
                    push(
                        &mut out,
                        Violation::IllegalSharedVertex {
                            path_a: pa as usize,
                            path_b: pb as usize,
                            vertex: v as u32,
                        },
                    );
                }
            }
        }
    }

    for (pi, p) in paths.iter().enumerate() {
        if broken[pi] {
            continue;
        }
        let last = p.vertices.len() - 1;
        for (pos, &x) in p.vertices.iter().enumerate() {
            let x_inner = pos != 0 && pos != last;
            for &y in adj.neighbors(x as usize) {
                for &(q, qpos) in &members[y as usize] {
                    if q as usize == pi {
                        let (a, b) = (pos as u32, qpos);
                        if a + 1 < b && !(a == 0 && b as usize == last) {
                            push(&mut out, Violation::InnerChord { path: pi, u: x, v: y });
                        }
                    } else if x_inner {
                        let y_in_pi =
                            members[y as usize].iter().any(|&(qq, _)| qq as usize == pi);
                        if !(y_in_pi && is_end(pi as u32, y) && is_end(q, y)) {
                            push(
                                &mut out,
                                Violation::IllegalAdjacency {
                                    path_a: pi,
                                    inner: x,
                                    path_b: q as usize,
                                    vertex: y,
                                },
                            );
                        }
                    }
                }
            }
        }
    }
    out
}

/// Result of path enumeration: the paths found, and whether the cap cut the
/// enumeration short.
#[derive(Clone, Debug, Default)]
pub struct EnumResult {
    pub paths: Vec<Vec<u32>>,
    pub overflow: bool,
}

/// Enumerates every `u`–`v` path through `live` vertices that has no inner
/// chords (an edge between the two ends is allowed — such paths are legal in
/// solutions). Paths come out in lexicographic vertex-id order, truncated at
/// `cap` with the overflow flag set.
pub fn enumerate_induced_paths(
    inst: &Instance,
    live: &[bool],
    u: u32,
    v: u32,
    cap: usize,
) -> EnumResult {
    let n = inst.n();
    let rep = inst.rep();
    let mut res = EnumResult::default();
    if (u as usize) >= n || (v as usize) >= n || u == v || !live[u as usize] || !live[v as usize] {
        return res;
    }
    let adj = build_adjacency(rep);
    let mut on = vec![false; n];
    on[u as usize] = true;
    let mut path = vec![u];

    fn extend(
        rep: &Representation,
        adj: &crate::model::Adjacency,
        live: &[bool],
        v: u32,
        cap: usize,
        on: &mut Vec<bool>,
        path: &mut Vec<u32>,
        res: &mut EnumResult,
    ) {
        let x = *path.last().unwrap();
        for &y in adj.neighbors(x as usize) {
            if res.overflow || !live[y as usize] || on[y as usize] {
                continue;
            }
            if y == v {
                // Only the ends may close a chord; inner vertices must not
                // touch the arriving endpoint.
                let clean = path.len() == 1
                    || path[1..path.len() - 1]
                        .iter()
                        .all(|&w| !rep.adjacent(w as usize, y as usize));
                if clean {
                    if res.paths.len() == cap {
                        res.overflow = true;
                        return;
                    }
                    let mut done = path.clone();
                    done.push(y);
                    res.paths.push(done);
                }
            } else {
                // A future inner vertex may touch only its predecessor.
                let clean = path[..path.len() - 1]
                    .iter()
                    .all(|&w| !rep.adjacent(w as usize, y as usize));
                if clean {
                    on[y as usize] = true;
                    path.push(y);
                    extend(rep, adj, live, v, cap, on, path, res);
                    path.pop();
                    on[y as usize] = false;
                }
            }
        }
    }
    extend(rep, &adj, live, v, cap, &mut on, &mut path, &mut res);
    res
}

/// Size bounds for the exhaustive searches.
#[derive(Clone, Copy, Debug)]
pub struct BruteLimits {
    pub max_n: usize,
    pub max_total_req: u32,
    pub path_cap: usize,
}

impl Default for BruteLimits {
    fn default() -> Self {
        BruteLimits { max_n: 12, max_total_req: 6, path_cap: 100_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum BruteError {
    #[error("input exceeds the exhaustive search bounds")]
    BoundExceeded,
}

/// True when `vertices` forms a simple path in the instance's graph with no
/// inner chords.
pub fn is_clean_path(inst: &Instance, vertices: &[u32]) -> bool {
    let n = inst.n();
    let rep = inst.rep();
    if vertices.len() < 2 || vertices.iter().any(|&v| v as usize >= n) {
        return false;
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let last = vertices.len() - 1;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let adj = rep.adjacent(vertices[i] as usize, vertices[j] as usize);
            if j == i + 1 {
                if !adj {
                    return false;
                }
            } else if adj && !(i == 0 && j == last) {
                return false;
            }
        }
    }
    true
}

fn same_path(a: &[u32], b: &[u32]) -> bool {
    a == b || (a.len() == b.len() && a.iter().rev().eq(b.iter()))
}

/// Whether two distinct solution paths may coexist: they share only vertices
/// that are ends of both, and no inner vertex of one touches the other
/// except at a common end.
fn paths_compatible(rep: &Representation, a: &[u32], b: &[u32]) -> bool {
    if same_path(a, b) {
        return false;
    }
    let end_of = |p: &[u32], v: u32| p[0] == v || *p.last().unwrap() == v;
    for (i, &x) in a.iter().enumerate() {
        let x_inner = i != 0 && i != a.len() - 1;
        for (j, &y) in b.iter().enumerate() {
            let y_inner = j != 0 && j != b.len() - 1;
            if x == y {
                if x_inner || y_inner {
                    return false;
                }
            } else if rep.adjacent(x as usize, y as usize) {
                if x_inner && !(end_of(a, y) && end_of(b, y)) {
                    return false;
                }
                if y_inner && !(end_of(a, x) && end_of(b, x)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustive decision for a partially solved state: `quotas[i]` more paths
/// must join pair `i`, drawn from the live part of the graph or from the
/// recorded `options[i]`, all mutually induced together with the committed
/// `base` paths (judged in the original graph). Returns a full solution
/// (base included) or `None`.
pub fn brute_state(
    inst: &Instance,
    live: &[bool],
    quotas: &[u32],
    base: &[PathRecord],
    options: &[Vec<Vec<u32>>],
    limits: &BruteLimits,
) -> Result<Option<Solution>, BruteError> {
    if inst.n() > limits.max_n || quotas.iter().sum::<u32>() > limits.max_total_req {
        return Err(BruteError::BoundExceeded);
    }
    let rep = inst.rep();
    for (i, a) in base.iter().enumerate() {
        let sound = is_clean_path(inst, &a.vertices)
            && base[..i].iter().all(|b| paths_compatible(rep, &a.vertices, &b.vertices));
        if !sound {
            return Ok(None);
        }
    }

    let ends_match = |pair: &TerminalPair, p: &[u32]| {
        let (a, b) = (p[0], *p.last().unwrap());
        (a.min(b), a.max(b)) == pair.key()
    };
    let mut lists: Vec<Vec<Vec<u32>>> = Vec::with_capacity(inst.k());
    for (i, pair) in inst.pairs().iter().enumerate() {
        if quotas[i] == 0 {
            lists.push(Vec::new());
            continue;
        }
        let en = enumerate_induced_paths(inst, live, pair.s, pair.t, limits.path_cap);
        if en.overflow {
            return Err(BruteError::BoundExceeded);
        }
        let mut list = en.paths;
        for extra in options.get(i).into_iter().flatten() {
            if is_clean_path(inst, extra)
                && ends_match(pair, extra)
                && !list.iter().any(|p| same_path(p, extra))
            {
                list.push(extra.clone());
            }
        }
        lists.push(list);
    }

    fn search(
        rep: &Representation,
        lists: &[Vec<Vec<u32>>],
        base: &[PathRecord],
        remaining: &mut [u32],
        picked: &mut Vec<(usize, usize)>,
        pair: usize,
        from: usize,
    ) -> bool {
        if pair == lists.len() {
            return true;
        }
        if remaining[pair] == 0 {
            return search(rep, lists, base, remaining, picked, pair + 1, 0);
        }
        if lists[pair].len() - from < remaining[pair] as usize {
            return false;
        }
        for idx in from..lists[pair].len() {
            let cand = &lists[pair][idx];
            let ok = picked
                .iter()
                .all(|&(pp, ii)| paths_compatible(rep, cand, &lists[pp][ii]))
                && base.iter().all(|b| paths_compatible(rep, cand, &b.vertices));
            if !ok {
                continue;
            }
            picked.push((pair, idx));
            remaining[pair] -= 1;
            if search(rep, lists, base, remaining, picked, pair, idx + 1) {
                return true;
            }
            remaining[pair] += 1;
            picked.pop();
        }
        false
    }

    let mut remaining = quotas.to_vec();
    let mut picked = Vec::new();
    if !search(rep, &lists, base, &mut remaining, &mut picked, 0, 0) {
        return Ok(None);
    }
    let mut sol = Solution { paths: base.to_vec() };
    for (pair, idx) in picked {
        sol.paths.push(PathRecord { pair, vertices: lists[pair][idx].clone() });
    }
    sol.canonicalize();
    Ok(Some(sol))
}

/// Exhaustive solve of a whole instance by backtracking over per-pair path
/// choices. The terminal edge, when it exists, is enumerated like any other
/// path — nothing is assumed about which solutions are canonical.
pub fn brute_solve(inst: &Instance, limits: &BruteLimits) -> Result<Option<Solution>, BruteError> {
    let quotas: Vec<u32> = inst.pairs().iter().map(|p| p.r).collect();
    let live = vec![true; inst.n()];
    let options = vec![Vec::new(); inst.k()];
    brute_state(inst, &live, &quotas, &[], &options, limits)
}

/// Exact maximum independent set of circular arcs by branch-and-bound over
/// conflict bitmasks. Arcs may share endpoint values and may wrap.
pub fn brute_max_is(arcs: &[(u32, u32)], _ground: u32) -> Result<usize, BruteError> {
    if arcs.len() > 20 {
        return Err(BruteError::BoundExceeded);
    }
    let covers = |l: u32, r: u32, p: u32| if l <= r { l <= p && p <= r } else { p >= l || p <= r };
    let n = arcs.len();
    let mut conflict = vec![0u32; n];
    for i in 0..n {
        for j in 0..n {
            if i != j
                && (covers(arcs[i].0, arcs[i].1, arcs[j].0)
                    || covers(arcs[j].0, arcs[j].1, arcs[i].0))
            {
                conflict[i] |= 1 << j;
            }
        }
    }
    fn go(avail: u32, conflict: &[u32]) -> u32 {
        if avail == 0 {
            return 0;
        }
        let i = avail.trailing_zeros() as usize;
        let rest = avail & !(1 << i);
        let with = 1 + go(rest & !conflict[i], conflict);
        let without = go(rest, conflict);
        with.max(without)
    }
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok(go(all, &conflict) as usize)
}
