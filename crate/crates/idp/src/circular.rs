//! Driver for circular-arc instances. The reduction steps are shared with
//! the interval pipeline; the differences are an early exit once at most one
//! pair still needs a path, wrap-aware ordering, and a plain maximum
//! independent set over the candidate spans instead of the quota selection.

use crate::indset::max_is_circular_sorted;
use crate::interval::WorkingState;
use crate::model::{Instance, Kind};
use crate::solution::{NoCertificate, Outcome, PathRecord, Solution};

/// Decide a circular-arc instance and produce either a full path system or
/// the step certificate that rules one out.
pub fn solve_circular(inst: &Instance) -> Outcome {
    assert!(
        inst.kind() == Kind::Circular,
        "solve_circular requires a circular-arc instance"
    );
    let mut st = WorkingState::new(inst);
    st.step1();
    // Validation admits only single-requirement pairs on circles, so the
    // multiplicity steps have nothing to do.
    st.step4_5();
    let mut survivor = None;
    let mut remaining = 0usize;
    for i in 0..inst.k() {
        if !st.committed[i] {
            survivor = Some(i);
            remaining += 1;
        }
    }
    match remaining {
        0 => {
            let mut sol = Solution { paths: st.paths.clone() };
            sol.canonicalize();
            return Outcome::Yes(sol);
        }
        1 => return solve_lone_pair(&st, survivor.unwrap()),
        _ => {}
    }
    if let Err(c) = st.step6() {
        return Outcome::No(c);
    }
    if let Err(c) = st.step7() {
        return Outcome::No(c);
    }
    st.step8();
    st.step9();
    match step10star(&st) {
        Ok(sol) => Outcome::Yes(sol),
        Err(c) => Outcome::No(c),
    }
}

/// With a single distant pair left there is no orientation to respect: any
/// shortest live path between its representatives serves. Every other
/// terminal vertex is gone by now — a committed pair keeps a representative
/// only when that vertex also hosts a distant pair, and the lone distant
/// pair's own vertices are the only such hosts.
fn solve_lone_pair(st: &WorkingState<'_>, pair: usize) -> Outcome {
    let inst = st.inst;
    let n = inst.n();
    let p = &inst.pairs()[pair];
    let (u, v) = (p.s as usize, p.t as usize);
    debug_assert!(st.live[u] && st.live[v]);
    debug_assert!((0..n).all(|w| !(st.live[w] && st.is_term[w]) || w == u || w == v));
    let mut parent = vec![u32::MAX; n];
    let mut seen = vec![false; n];
    seen[u] = true;
    let mut queue = vec![u as u32];
    let mut qi = 0;
    let mut found = false;
    let mut nbuf: Vec<u32> = Vec::new();
    'bfs: while qi < queue.len() {
        let x = queue[qi] as usize;
        qi += 1;
        st.neighbors_into(x, &mut nbuf);
        for &y in &nbuf {
            let yi = y as usize;
            if st.live[yi] && !seen[yi] {
                seen[yi] = true;
                parent[yi] = x as u32;
                if yi == v {
                    found = true;
                    break 'bfs;
                }
                queue.push(y);
            }
        }
    }
    if !found {
        return Outcome::No(NoCertificate::Step5Plus { pair });
    }
    let mut path = vec![v as u32];
    let mut cur = v as u32;
    while parent[cur as usize] != u32::MAX {
        cur = parent[cur as usize];
        path.push(cur);
    }
    path.reverse();
    let mut sol = Solution { paths: st.paths.clone() };
    sol.paths.push(PathRecord { pair, vertices: path });
    sol.canonicalize();
    Outcome::Yes(sol)
}

/// Select one candidate span per surviving pair by a plain maximum
/// independent set. A span that bridges its own gap covers the source's
/// right endpoint and the sink's left endpoint, so spans of one pair always
/// intersect and an independent set of full size picks exactly one of each.
fn step10star(st: &WorkingState<'_>) -> Result<Solution, NoCertificate> {
    let rep = st.inst.rep();
    let need = st.order.len();
    debug_assert!(need >= 2);
    let covers = |(l, r): (u32, u32), p: u32| {
        if l <= r {
            l <= p && p <= r
        } else {
            p >= l || p <= r
        }
    };
    // A connector that reaches the sink the long way around sweeps over
    // every other pair's terminals, so it can never serve while at least one
    // more pair needs a path; keep only the gap-bridging spans.
    let mut keep: Vec<usize> = Vec::new();
    let mut spans: Vec<(u32, u32)> = Vec::new();
    for (i, c) in st.candidates.iter().enumerate() {
        let ru = rep.right(c.ends.0 as usize);
        let lv = rep.left(c.ends.1 as usize);
        if covers(c.span, ru) && covers(c.span, lv) {
            keep.push(i);
            spans.push(c.span);
        }
    }
    let picks = max_is_circular_sorted(&spans, rep.ground());
    if picks.len() < need {
        return Err(NoCertificate::Step10Star);
    }
    debug_assert_eq!(picks.len(), need);
    let mut taken = vec![false; st.inst.k()];
    let mut sol = Solution { paths: st.paths.clone() };
    for idx in picks {
        let c = &st.candidates[keep[idx]];
        debug_assert!(!taken[c.pair], "two selected spans share a pair");
        taken[c.pair] = true;
        sol.paths.push(PathRecord { pair: c.pair, vertices: c.path() });
    }
    sol.canonicalize();
    Ok(sol)
}
