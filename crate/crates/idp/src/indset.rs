//! Independent-set kernels used by the selection stages.
//!
//! [`greedy_quota_is`] picks, per color, a fixed quota of pairwise-disjoint
//! intervals; it is correct only for inputs whose colors occupy disjoint
//! left-endpoint blocks (checked up front). [`max_is_circular_sorted`]
//! computes an exact maximum independent set of circular arcs.

use crate::model::cw_phase;
use thiserror::Error;

/// Colored intervals with per-color selection quotas. Endpoints live on
/// `1..=ground`; colors index into `quotas`. Intervals of different colors
/// must have distinct left endpoints, and sorting colors by their smallest
/// left endpoint must put all left endpoints of one color before the next —
/// the shape the solver's candidate sets always have.
#[derive(Clone, Debug)]
pub struct ColoredIntervalSet {
    pub ground: u32,
    /// `(color, (l, r))` per item; item ids are positions in this vector.
    pub items: Vec<(u32, (u32, u32))>,
    pub quotas: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum GreedyError {
    /// No selection meets this color's quota.
    #[error("quota for color {color} cannot be met")]
    Infeasible { color: u32 },
    /// The input does not have the block-ordered color structure.
    #[error("items violate the block-ordered color precondition")]
    PreconditionViolated,
}

/// Right-to-left greedy selection: repeatedly take the surviving interval
/// with the largest left endpoint whose color still has quota, then drop
/// everything intersecting it. Runs in `O(items + ground)`. Returns selected
/// item ids (in selection order: left endpoints strictly decreasing).
pub fn greedy_quota_is(set: &ColoredIntervalSet) -> Result<Vec<usize>, GreedyError> {
    let ground = set.ground as usize;
    let ncolors = set.quotas.len();
    for &(c, (l, r)) in &set.items {
        if c as usize >= ncolors || l < 1 || r < l || r as usize > ground {
            return Err(GreedyError::PreconditionViolated);
        }
    }
    check_block_structure(set, ground, ncolors)?;

    // CSR buckets of item ids by left and by right endpoint, ids ascending.
    let by_left = point_buckets(ground, set.items.iter().map(|&(_, (l, _))| l));
    let by_right = point_buckets(ground, set.items.iter().map(|&(_, (_, r))| r));
    let mut lcur = by_left.0.clone();
    let mut rcur = by_right.0.clone();

    let mut alive = vec![true; set.items.len()];
    let mut quota = set.quotas.clone();
    let mut selected = Vec::new();
    let mut h = ground;
    let mut j = ground;
    while j >= 1 {
        // Next eligible item opening at j; dead or quota-exhausted entries
        // are skipped permanently (quotas never grow back).
        let mut pick = None;
        while lcur[j] < by_left.0[j + 1] {
            let it = by_left.1[lcur[j] as usize] as usize;
            let color = set.items[it].0 as usize;
            if alive[it] && quota[color] > 0 {
                pick = Some(it);
                break;
            }
            lcur[j] += 1;
        }
        let Some(it) = pick else {
            j -= 1;
            continue;
        };
        selected.push(it);
        quota[set.items[it].0 as usize] -= 1;
        // Every surviving interval intersecting the pick has its right
        // endpoint in [j, h]; drop them all (the pick included).
        for p in j..=h {
            while rcur[p] < by_right.0[p + 1] {
                alive[by_right.1[rcur[p] as usize] as usize] = false;
                rcur[p] += 1;
            }
        }
        h = j;
    }
    if let Some(color) = (0..ncolors).find(|&c| quota[c] > 0) {
        return Err(GreedyError::Infeasible { color: color as u32 });
    }
    Ok(selected)
}

/// Verifies the block-ordered color structure `greedy_quota_is` requires;
/// exposed so callers can assert it on inputs they construct.
pub fn check_block_structure(
    set: &ColoredIntervalSet,
    ground: usize,
    ncolors: usize,
) -> Result<(), GreedyError> {
    let mut left_color = vec![u32::MAX; ground + 1];
    let mut min_l = vec![u32::MAX; ncolors];
    let mut max_l = vec![0u32; ncolors];
    for &(c, (l, _)) in &set.items {
        let owner = &mut left_color[l as usize];
        if *owner != u32::MAX && *owner != c {
            return Err(GreedyError::PreconditionViolated);
        }
        *owner = c;
        let cu = c as usize;
        min_l[cu] = min_l[cu].min(l);
        max_l[cu] = max_l[cu].max(l);
    }
    let mut first_of = vec![u32::MAX; ground + 1];
    for c in 0..ncolors {
        if min_l[c] != u32::MAX {
            first_of[min_l[c] as usize] = c as u32;
        }
    }
    let mut prev_max = 0u32;
    for p in 1..=ground {
        let c = first_of[p];
        if c == u32::MAX {
            continue;
        }
        if min_l[c as usize] <= prev_max {
            return Err(GreedyError::PreconditionViolated);
        }
        prev_max = max_l[c as usize];
    }
    Ok(())
}

fn point_buckets<I: Iterator<Item = u32> + Clone>(ground: usize, points: I) -> (Vec<u32>, Vec<u32>) {
    let mut offsets = vec![0u32; ground + 2];
    for p in points.clone() {
        offsets[p as usize + 1] += 1;
    }
    for p in 1..=ground + 1 {
        offsets[p] += offsets[p - 1];
    }
    let mut fill = offsets.clone();
    let mut entries = vec![0u32; offsets[ground + 1] as usize];
    for (id, p) in points.enumerate() {
        entries[fill[p as usize] as usize] = id as u32;
        fill[p as usize] += 1;
    }
    (offsets, entries)
}

/// Exact maximum independent set of circular arcs over ground `1..=ground`;
/// arcs with `l > r` wrap the seam, and arcs may share endpoint values.
/// Returns the chosen arc indices.
///
/// A point of minimum coverage depth is cut: an independent set keeps at most
/// one arc through it, so the answer is the plain interval greedy on the rest
/// — or that greedy re-run in the gap left by one arc through the cut, which
/// the depth bound keeps small in the solver's instances.
pub fn max_is_circular_sorted(arcs: &[(u32, u32)], ground: u32) -> Vec<usize> {
    if arcs.is_empty() {
        return Vec::new();
    }
    debug_assert!(arcs.iter().all(|&(l, r)| (1..=ground).contains(&l) && (1..=ground).contains(&r)));

    // Coverage depth changes only at arc endpoints, so the earliest point of
    // minimum depth is found from the sorted delta events alone: each
    // constant run is represented by its first point.
    let mut events: Vec<(u32, i32)> = Vec::with_capacity(2 * arcs.len() + 1);
    let mut base = 0i64;
    for &(l, r) in arcs {
        if l <= r {
            events.push((l, 1));
            if r < ground {
                events.push((r + 1, -1));
            }
        } else {
            base += 1;
            events.push((l, 1));
            if r < ground {
                events.push((r + 1, -1));
            }
        }
    }
    events.sort_unstable();
    let mut pstar = 1u32;
    let mut depth = i64::MAX;
    let mut acc = base;
    let mut cur = 1u32;
    let mut i = 0usize;
    while i < events.len() {
        let p = events[i].0;
        if cur < p && acc < depth {
            depth = acc;
            pstar = cur;
        }
        while i < events.len() && events[i].0 == p {
            acc += events[i].1 as i64;
            i += 1;
        }
        cur = p;
    }
    if acc < depth {
        pstar = cur;
    }

    let covers = |l: u32, r: u32, p: u32| if l <= r { l <= p && p <= r } else { p >= l || p <= r };
    let phi = |p: u32| cw_phase(p, pstar, ground);
    let mut fl = vec![0u32; arcs.len()];
    let mut fr = vec![0u32; arcs.len()];
    let mut through: Vec<usize> = Vec::new();
    // Frame-left values of the cut-avoiding arcs in rank space; best[k] = arc
    // with frame-left >= ranks[k] of minimum frame-right (ties to the smaller
    // id), suffix-computed over the ranks.
    let mut ranks: Vec<u32> = Vec::with_capacity(arcs.len());
    for (i, &(l, r)) in arcs.iter().enumerate() {
        fl[i] = phi(l);
        fr[i] = phi(r);
        if covers(l, r, pstar) {
            through.push(i);
        } else {
            debug_assert!(1 <= fl[i] && fl[i] <= fr[i]);
            ranks.push(fl[i]);
        }
    }
    ranks.sort_unstable();
    ranks.dedup();
    let mut best = vec![usize::MAX; ranks.len() + 1];
    for (i, &(l, r)) in arcs.iter().enumerate() {
        if covers(l, r, pstar) {
            continue;
        }
        let slot = &mut best[ranks.binary_search(&fl[i]).unwrap()];
        if *slot == usize::MAX || fr[i] < fr[*slot] {
            *slot = i;
        }
    }
    for k in (0..ranks.len()).rev() {
        let (lo, hi) = (best[k], best[k + 1]);
        if lo == usize::MAX || (hi != usize::MAX && fr[hi] < fr[lo]) {
            best[k] = hi;
        }
    }

    let chain = |start: u32, limit: u32, cap: usize, out: &mut Vec<usize>| {
        let mut pos = start;
        loop {
            if out.len() >= cap {
                break;
            }
            let k = ranks.partition_point(|&x| x < pos);
            if k == ranks.len() {
                break;
            }
            let a = best[k];
            if a == usize::MAX || fr[a] > limit {
                break;
            }
            out.push(a);
            pos = fr[a] + 1;
        }
    };

    let mut best_set = Vec::new();
    chain(1, ground - 1, usize::MAX, &mut best_set);
    let free_max = best_set.len();
    for &b in &through {
        // Arcs disjoint from `b` sit strictly inside its complementary gap.
        let start = fr[b] + 1;
        let limit = if fl[b] == 0 { ground - 1 } else { fl[b] - 1 };
        let mut cand = vec![b];
        chain(start, limit, free_max + 1, &mut cand);
        if cand.len() > best_set.len() {
            best_set = cand;
            if best_set.len() == free_max + 1 {
                break;
            }
        }
    }
    best_set
}
