//! The solving pipeline: a sequence of reduction steps that prunes the
//! graph, commits forced paths, reduces every remaining choice to a colored
//! span, and selects spans by quota. The steps are exposed individually so
//! tests can compare the state after each one against an exhaustive search.

use crate::indset::{greedy_quota_is, ColoredIntervalSet, GreedyError};
use crate::model::{
    arc_union, build_buckets_at_lefts, cw_phase, for_each_neighbor, BucketIndex, Instance, Kind,
};
use crate::solution::{NoCertificate, Outcome, PathRecord, Solution};
use std::collections::{HashMap, HashSet};

/// A prospective connector path for one pair, reduced to the span its inner
/// vertices cover. Spans of one pair carry that pair's index as their color
/// in the final selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub pair: usize,
    /// Union of the inner-vertex spans, as (left, right) endpoints; on a
    /// circle the span may wrap.
    pub span: (u32, u32),
    /// Inner vertices in path order.
    pub witness: Vec<u32>,
    /// The pair's representatives oriented so that the full path reads
    /// `ends.0, witness.., ends.1`.
    pub ends: (u32, u32),
}

impl Candidate {
    /// The full vertex sequence of the path this candidate stands for.
    pub fn path(&self) -> Vec<u32> {
        let mut p = Vec::with_capacity(self.witness.len() + 2);
        p.push(self.ends.0);
        p.extend_from_slice(&self.witness);
        p.push(self.ends.1);
        p
    }
}

/// Mutable pipeline state over a borrowed instance. Step methods must be
/// called in ascending order; [`solve_interval`] (and the circular driver)
/// run the full sequence.
pub struct WorkingState<'a> {
    pub(crate) inst: &'a Instance,
    /// Point-coverage buckets over all vertices; `bucket(p)` backs the
    /// neighbour walks, the drain cursors back the overlap-strip scan.
    pub(crate) cover: BucketIndex,
    pub(crate) live: Vec<bool>,
    pub(crate) is_term: Vec<bool>,
    /// The terminal vertices, sorted — a cache-resident alternative to
    /// `is_term` for scans that would otherwise read it at random.
    pub(crate) terms: Vec<u32>,
    /// Number of distinct terminal vertices adjacent to each vertex,
    /// saturated at 3 (only "fewer than three" ever matters).
    pub(crate) term_deg: Vec<u8>,
    pub(crate) committed: Vec<bool>,
    pub(crate) paths: Vec<PathRecord>,
    /// Surviving pairs in walk order as (pair, source rep, sink rep).
    pub(crate) order: Vec<(usize, u32, u32)>,
    pub(crate) candidates: Vec<Candidate>,
}

impl<'a> WorkingState<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        let n = inst.n();
        let rep = inst.rep();
        // The overlap strips that the multiplicity pass will drain are fixed
        // by the pairs alone; materialize buckets there and at every left
        // endpoint, the only points any later pass reads.
        let mut strips: Vec<(u32, u32)> = Vec::new();
        for p in inst.pairs() {
            if p.r >= 2 {
                let lo = rep.left(p.s as usize).max(rep.left(p.t as usize));
                let hi = rep.right(p.s as usize).min(rep.right(p.t as usize));
                if lo <= hi {
                    strips.push((lo, hi));
                }
            }
        }
        strips.sort_unstable();
        let mut merged: Vec<(u32, u32)> = Vec::new();
        for (a, b) in strips {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        let cover = build_buckets_at_lefts(rep, &merged);
        let mut is_term = vec![false; n];
        let mut terms: Vec<u32> = Vec::with_capacity(2 * inst.k());
        for p in inst.pairs() {
            is_term[p.s as usize] = true;
            is_term[p.t as usize] = true;
            terms.push(p.s);
            terms.push(p.t);
        }
        terms.sort_unstable();
        terms.dedup();
        let mut term_deg = vec![0u8; n];
        for &v in &terms {
            for_each_neighbor(rep, &cover, v as usize, |w| {
                term_deg[w] = term_deg[w].saturating_add(1).min(3);
            });
        }
        WorkingState {
            inst,
            cover,
            live: vec![true; n],
            is_term,
            terms,
            term_deg,
            committed: vec![false; inst.k()],
            paths: Vec::new(),
            order: Vec::new(),
            candidates: Vec::new(),
        }
    }

    /// Collects the neighbours of `v` into `buf` (cleared first).
    pub(crate) fn neighbors_into(&self, v: usize, buf: &mut Vec<u32>) {
        buf.clear();
        for_each_neighbor(self.inst.rep(), &self.cover, v, |w| buf.push(w as u32));
    }

    /// Non-terminals next to three or more terminal vertices can never be
    /// path interiors; delete them. Afterwards every live non-terminal has
    /// at most two terminal neighbours, which later passes rely on.
    pub fn step1(&mut self) {
        for w in 0..self.inst.n() {
            if !self.is_term[w] && self.term_deg[w] >= 3 {
                self.live[w] = false;
            }
        }
    }

    /// A pair needing two or more paths must have adjacent representatives:
    /// two interior-disjoint connectors between non-adjacent ends would
    /// close a long induced cycle, which interval graphs do not have. For
    /// each such pair, every live non-terminal covering the representatives'
    /// overlap is a one-hop connector: record it as a candidate and delete
    /// it (it can serve no other pair).
    pub fn step2_3(&mut self) -> Result<(), NoCertificate> {
        let rep = self.inst.rep();
        for (i, p) in self.inst.pairs().iter().enumerate() {
            if p.r >= 2 && !rep.adjacent(p.s as usize, p.t as usize) {
                return Err(NoCertificate::Step2 { pair: i });
            }
        }
        if self.inst.pairs().iter().all(|p| p.r < 2) {
            return Ok(());
        }
        for i in 0..self.inst.k() {
            let p = &self.inst.pairs()[i];
            if p.r < 2 {
                continue;
            }
            let (s, t) = (p.s as usize, p.t as usize);
            let lo = rep.left(s).max(rep.left(t));
            let hi = rep.right(s).min(rep.right(t));
            debug_assert!(lo <= hi);
            for point in lo..=hi {
                while let Some(w) = self.cover.drain_next(point) {
                    let wi = w as usize;
                    if !self.live[wi] || self.is_term[wi] {
                        continue;
                    }
                    self.live[wi] = false;
                    self.candidates.push(Candidate {
                        pair: i,
                        span: (rep.left(wi), rep.right(wi)),
                        witness: vec![w],
                        ends: (p.s, p.t),
                    });
                }
            }
        }
        Ok(())
    }

    fn commit(&mut self, i: usize) {
        let p = &self.inst.pairs()[i];
        self.committed[i] = true;
        self.paths.push(PathRecord { pair: i, vertices: vec![p.s, p.t] });
    }

    /// Commit every pair whose representatives are adjacent: the edge itself
    /// joins them and any solution can be rewritten to use it. First handle
    /// vertices ALL of whose pairs are edge-joined — those vertices and
    /// their non-terminal neighbourhoods leave the graph entirely. Then
    /// commit the remaining edge-joined pairs and delete the common
    /// non-terminal neighbours of their two representatives.
    pub fn step4_5(&mut self) {
        let rep = self.inst.rep();
        let mut marked: HashSet<u32> = HashSet::new();
        for p in self.inst.pairs() {
            marked.insert(p.s);
            marked.insert(p.t);
        }
        for p in self.inst.pairs() {
            if !rep.adjacent(p.s as usize, p.t as usize) {
                marked.remove(&p.s);
                marked.remove(&p.t);
            }
        }
        let mut mverts: Vec<u32> = marked.iter().copied().collect();
        mverts.sort_unstable();
        let mut buf: Vec<u32> = Vec::new();
        for &v in &mverts {
            self.neighbors_into(v as usize, &mut buf);
            for &w in &buf {
                let wi = w as usize;
                if self.live[wi] && !self.is_term[wi] {
                    self.live[wi] = false;
                }
            }
        }
        for &v in &mverts {
            self.live[v as usize] = false;
        }
        for i in 0..self.inst.k() {
            let p = &self.inst.pairs()[i];
            if marked.contains(&p.s) || marked.contains(&p.t) {
                self.commit(i);
            }
        }

        let mut fresh: HashSet<(u32, u32)> = HashSet::new();
        for i in 0..self.inst.k() {
            let p = &self.inst.pairs()[i];
            if !self.committed[i] && rep.adjacent(p.s as usize, p.t as usize) {
                fresh.insert(p.key());
                self.commit(i);
            }
        }
        self.kill_exact_pair_neighbors(&fresh);
    }

    /// Deletes every live non-terminal whose terminal neighbours are exactly
    /// the two vertices of some key in `keys`. Works outward from the key
    /// vertices, so the cost is their neighbourhood mass: a qualifying
    /// vertex has exactly two terminal neighbours, hence is reached by
    /// exactly the two walks that reveal its key.
    fn kill_exact_pair_neighbors(&mut self, keys: &HashSet<(u32, u32)>) {
        if keys.is_empty() {
            return;
        }
        let mut verts: Vec<u32> = keys.iter().flat_map(|&(a, b)| [a, b]).collect();
        verts.sort_unstable();
        verts.dedup();
        let mut first: HashMap<u32, u32> = HashMap::new();
        let mut buf: Vec<u32> = Vec::new();
        for &a in &verts {
            self.neighbors_into(a as usize, &mut buf);
            for &w in &buf {
                let wi = w as usize;
                if !self.live[wi] || self.is_term[wi] || self.term_deg[wi] != 2 {
                    continue;
                }
                match first.entry(w) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(a);
                    }
                    std::collections::hash_map::Entry::Occupied(e) => {
                        let x = *e.get();
                        if x != a && keys.contains(&(x.min(a), x.max(a))) {
                            self.live[wi] = false;
                        }
                    }
                }
            }
        }
    }

    /// Every surviving pair now has non-adjacent representatives, so each of
    /// its paths needs interior vertices. A vertex representing terminals of
    /// three or more surviving pairs would force three interior-disjoint
    /// connectors through one point of the line — impossible.
    pub fn step6(&self) -> Result<(), NoCertificate> {
        let mut reps: Vec<u32> = Vec::new();
        for (i, p) in self.inst.pairs().iter().enumerate() {
            if self.committed[i] {
                continue;
            }
            reps.push(p.s);
            reps.push(p.t);
        }
        reps.sort_unstable();
        let mut i = 0;
        while i < reps.len() {
            let mut j = i;
            while j < reps.len() && reps[j] == reps[i] {
                j += 1;
            }
            if j - i >= 3 {
                return Err(NoCertificate::Step6 { vertex: reps[i] });
            }
            i = j;
        }
        Ok(())
    }

    /// Surviving pairs must sit side by side along the line (or around the
    /// circle): sort the vertices carrying surviving terminals by left
    /// endpoint; each pair's two vertices must land in consecutive buckets,
    /// with the seam between last and first available once on a circle.
    /// Records the resulting pair order and orientation.
    pub fn step7(&mut self) -> Result<(), NoCertificate> {
        let rep = self.inst.rep();
        let circle = rep.kind() == Kind::Circular;
        let mut survivors = 0usize;
        let mut slotted: Vec<u32> = Vec::new();
        for (i, p) in self.inst.pairs().iter().enumerate() {
            if self.committed[i] {
                continue;
            }
            survivors += 1;
            slotted.push(p.s);
            slotted.push(p.t);
        }
        slotted.sort_unstable();
        slotted.dedup();
        slotted.sort_unstable_by_key(|&v| rep.left(v as usize));
        let m = slotted.len() as u32;
        let pos: HashMap<u32, u32> =
            slotted.iter().enumerate().map(|(r, &v)| (v, r as u32)).collect();
        let mut by_gap: Vec<Option<(usize, u32, u32)>> = vec![None; m as usize];
        for (i, p) in self.inst.pairs().iter().enumerate() {
            if self.committed[i] {
                continue;
            }
            let (a, b) = if rep.left(p.s as usize) < rep.left(p.t as usize) {
                (p.s, p.t)
            } else {
                (p.t, p.s)
            };
            let (ia, ib) = (pos[&a], pos[&b]);
            let (gap, entry) = if ib == ia + 1 {
                (ia, (i, a, b))
            } else if circle && ia == 0 && ib + 1 == m {
                (ib, (i, b, a))
            } else {
                return Err(NoCertificate::Step7);
            };
            debug_assert!(by_gap[gap as usize].is_none());
            by_gap[gap as usize] = Some(entry);
        }
        self.order = by_gap.into_iter().flatten().collect();
        debug_assert_eq!(self.order.len(), survivors);
        Ok(())
    }

    /// Between consecutive surviving pairs, a non-terminal touching both the
    /// sink of one and the source of the next would be adjacent to two paths
    /// at once; delete all such vertices. On a circle the seam boundary
    /// counts too. Boundaries sharing a vertex need no cleanup.
    pub fn step8(&mut self) {
        let kk = self.order.len();
        let circle = self.inst.kind() == Kind::Circular;
        let mut keys: HashSet<(u32, u32)> = HashSet::new();
        for j in 0..kk {
            let jn = if j + 1 < kk {
                j + 1
            } else if circle && kk >= 2 {
                0
            } else {
                continue;
            };
            let (a, b) = (self.order[j].2, self.order[jn].1);
            if a != b {
                keys.insert((a.min(b), a.max(b)));
            }
        }
        self.kill_exact_pair_neighbors(&keys);
    }

    /// Build the candidate spans of every surviving pair (u, v), working in
    /// a frame where points are compared clockwise from u's right endpoint:
    ///   a) one-hop connectors: live common neighbours of u and v — record
    ///      and delete them;
    ///   b) two-hop connectors: for each live neighbour x of u, the partner
    ///      y next to v whose right endpoint comes earliest;
    ///   c) longer connectors: each component of live non-terminals lying
    ///      strictly between u and v, bridged to u by the latest-starting
    ///      common neighbour s and to v by the earliest-ending common
    ///      neighbour t, realized by a shortest chain through the component.
    pub fn step9(&mut self) {
        let rep = self.inst.rep();
        let n = self.inst.n();
        let ground = rep.ground();
        let circle = rep.kind() == Kind::Circular;
        let order = self.order.clone();
        let mut zone_mark = vec![0u32; n];
        let mut comp_of = vec![0u32; n];
        let mut comp_tick = 0u32;
        let mut seen = vec![0u32; n];
        let mut seen_tick = 0u32;
        // Entries are written before any read: the chain walk only visits
        // vertices discovered by the current search, and the search root gets
        // its sentinel explicitly.
        let mut parent = vec![0u32; n];
        let mut queue: Vec<u32> = Vec::new();
        let mut zone: Vec<u32> = Vec::new();
        let mut nbuf: Vec<u32> = Vec::new();
        let mut ybuf: Vec<u32> = Vec::new();

        for &(pair, u, v) in &order {
            let (uu, vv) = (u as usize, v as usize);
            let ru = rep.right(uu);
            let lv = rep.left(vv);
            let ph = |p: u32| if circle { cw_phase(p, ru, ground) } else { p };

            self.neighbors_into(uu, &mut nbuf);
            for &w in &nbuf {
                let wi = w as usize;
                if self.live[wi] && !self.is_term[wi] && rep.adjacent(wi, vv) {
                    self.live[wi] = false;
                    self.candidates.push(Candidate {
                        pair,
                        span: (rep.left(wi), rep.right(wi)),
                        witness: vec![w],
                        ends: (u, v),
                    });
                }
            }

            let mut spans_two_hop: HashSet<(u32, u32)> = HashSet::new();
            for &x in &nbuf {
                let xi = x as usize;
                if !self.live[xi] || self.is_term[xi] {
                    continue;
                }
                debug_assert!(!rep.adjacent(xi, vv));
                let mut best: Option<u32> = None;
                self.neighbors_into(xi, &mut ybuf);
                for &y in &ybuf {
                    let yi = y as usize;
                    if self.live[yi] && !self.is_term[yi] && rep.adjacent(yi, vv) {
                        let better = match best {
                            None => true,
                            Some(b) => ph(rep.right(yi)) < ph(rep.right(b as usize)),
                        };
                        if better {
                            best = Some(y);
                        }
                    }
                }
                if let Some(y) = best {
                    let yi = y as usize;
                    let span = if circle {
                        arc_union(
                            (rep.left(xi), rep.right(xi)),
                            (rep.left(yi), rep.right(yi)),
                            ground,
                        )
                    } else {
                        Some((rep.left(xi), rep.right(yi)))
                    };
                    // A connector sweeping the whole circle interferes with
                    // every other path, and at this point at least two pairs
                    // still need paths — such a connector can never serve.
                    let Some(span) = span else { continue };
                    spans_two_hop.insert(span);
                    self.candidates.push(Candidate {
                        pair,
                        span,
                        witness: vec![x, y],
                        ends: (u, v),
                    });
                }
            }

            // The zone between u and v: live non-terminals whose whole span
            // sits strictly inside (r_u, l_v) in the frame.
            zone.clear();
            let mark = pair as u32 + 1;
            let target = ph(lv);
            let next = |p: u32| if p == ground { 1 } else { p + 1 };
            let mut p = if circle { next(ru) } else { ru + 1 };
            while ph(p) < target {
                if rep.is_left(p) {
                    let w = rep.owner(p);
                    if self.live[w] && self.terms.binary_search(&(w as u32)).is_err() {
                        let rw = ph(rep.right(w));
                        if ph(p) < rw && rw < target {
                            debug_assert_eq!(comp_of[w], 0, "zones of distinct pairs overlap");
                            zone_mark[w] = mark;
                            zone.push(w as u32);
                        }
                    }
                }
                p = next(p);
            }

            // Components in scan order; the seed of each is its earliest-
            // starting member.
            let mut comps: Vec<(u32, u32, u32)> = Vec::new();
            for &seed in &zone {
                if comp_of[seed as usize] != 0 {
                    continue;
                }
                comp_tick += 1;
                comp_of[seed as usize] = comp_tick;
                queue.clear();
                queue.push(seed);
                let mut best_r = seed;
                let mut qi = 0;
                while qi < queue.len() {
                    let x = queue[qi] as usize;
                    qi += 1;
                    if ph(rep.right(x)) > ph(rep.right(best_r as usize)) {
                        best_r = x as u32;
                    }
                    self.neighbors_into(x, &mut ybuf);
                    for &y in &ybuf {
                        let yi = y as usize;
                        if zone_mark[yi] == mark && comp_of[yi] != comp_tick {
                            comp_of[yi] = comp_tick;
                            queue.push(y);
                        }
                    }
                }
                comps.push((seed, best_r, comp_tick));
            }

            for &(lc, rc, tick) in &comps {
                let mut s: Option<u32> = None;
                self.neighbors_into(lc as usize, &mut ybuf);
                for &c in &ybuf {
                    let ci = c as usize;
                    if self.live[ci] && !self.is_term[ci] && rep.adjacent(ci, uu) {
                        let better = match s {
                            None => true,
                            Some(b) => ph(rep.left(ci)) > ph(rep.left(b as usize)),
                        };
                        if better {
                            s = Some(c);
                        }
                    }
                }
                let mut t: Option<u32> = None;
                self.neighbors_into(rc as usize, &mut ybuf);
                for &c in &ybuf {
                    let ci = c as usize;
                    if self.live[ci] && !self.is_term[ci] && rep.adjacent(ci, vv) {
                        let better = match t {
                            None => true,
                            Some(b) => ph(rep.right(ci)) < ph(rep.right(b as usize)),
                        };
                        if better {
                            t = Some(c);
                        }
                    }
                }
                let (Some(s), Some(t)) = (s, t) else { continue };
                debug_assert_ne!(s, t);
                // Shortest chain s -> t through this component; shortest
                // means chordless.
                seen_tick += 1;
                seen[s as usize] = seen_tick;
                parent[s as usize] = u32::MAX;
                queue.clear();
                queue.push(s);
                let mut found = false;
                let mut qi = 0;
                'bfs: while qi < queue.len() {
                    let x = queue[qi];
                    qi += 1;
                    self.neighbors_into(x as usize, &mut ybuf);
                    for &y in &ybuf {
                        let yi = y as usize;
                        let allowed =
                            y == t || (zone_mark[yi] == mark && comp_of[yi] == tick);
                        if allowed && seen[yi] != seen_tick {
                            seen[yi] = seen_tick;
                            parent[yi] = x;
                            if y == t {
                                found = true;
                                break 'bfs;
                            }
                            queue.push(y);
                        }
                    }
                }
                debug_assert!(found);
                if !found {
                    continue;
                }
                let mut witness = vec![t];
                let mut cur = t;
                while parent[cur as usize] != u32::MAX {
                    cur = parent[cur as usize];
                    witness.push(cur);
                }
                witness.reverse();
                // On a line the chain's span runs from the bridge into u to
                // the bridge into v; on a circle, fold up the true union.
                let span = if circle {
                    let mut acc = Some((rep.left(s as usize), rep.right(s as usize)));
                    for &w in &witness[1..] {
                        let wi = w as usize;
                        acc = acc
                            .and_then(|c| arc_union(c, (rep.left(wi), rep.right(wi)), ground));
                    }
                    let Some(folded) = acc else { continue };
                    folded
                } else {
                    (rep.left(s as usize), rep.right(t as usize))
                };
                if spans_two_hop.contains(&span) {
                    continue;
                }
                self.candidates.push(Candidate { pair, span, witness, ends: (u, v) });
            }
        }
        debug_assert!(self.candidates.len() <= 4 * n);
    }

    /// Residual path quota of every pair (committed pairs already carry
    /// their edge).
    pub fn quotas(&self) -> Vec<u32> {
        self.inst
            .pairs()
            .iter()
            .enumerate()
            .map(|(i, p)| p.r - u32::from(self.committed[i]))
            .collect()
    }

    /// Select candidate spans meeting every quota and assemble the final
    /// path system.
    pub fn step10(&mut self) -> Result<Solution, NoCertificate> {
        // The selection kernel scans its whole ground set, so compress the
        // span endpoints to dense ranks first; the selection depends only on
        // endpoint order.
        let mut pts: Vec<u32> =
            self.candidates.iter().flat_map(|c| [c.span.0, c.span.1]).collect();
        pts.sort_unstable();
        pts.dedup();
        let rank = |p: u32| (pts.binary_search(&p).unwrap() + 1) as u32;
        let set = ColoredIntervalSet {
            ground: pts.len() as u32,
            items: self
                .candidates
                .iter()
                .map(|c| (c.pair as u32, (rank(c.span.0), rank(c.span.1))))
                .collect(),
            quotas: self.quotas(),
        };
        match greedy_quota_is(&set) {
            Ok(picks) => {
                let mut sol = Solution { paths: self.paths.clone() };
                for idx in picks {
                    let c = &self.candidates[idx];
                    sol.paths.push(PathRecord { pair: c.pair, vertices: c.path() });
                }
                sol.canonicalize();
                Ok(sol)
            }
            Err(GreedyError::Infeasible { color }) => {
                Err(NoCertificate::Step10 { pair: color as usize })
            }
            Err(GreedyError::PreconditionViolated) => {
                panic!("candidate spans lost their block structure; this is a solver bug")
            }
        }
    }

    pub fn live(&self) -> &[bool] {
        &self.live
    }

    pub fn committed(&self) -> &[bool] {
        &self.committed
    }

    pub fn committed_paths(&self) -> &[PathRecord] {
        &self.paths
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn order(&self) -> &[(usize, u32, u32)] {
        &self.order
    }

    /// Per-pair full path options encoded by the current candidate list,
    /// for cross-checking against an exhaustive search.
    pub fn candidate_options(&self) -> Vec<Vec<Vec<u32>>> {
        let mut out = vec![Vec::new(); self.inst.k()];
        for c in &self.candidates {
            out[c.pair].push(c.path());
        }
        out
    }
}

/// Decide an interval instance and produce either a full path system or the
/// step certificate that rules one out.
pub fn solve_interval(inst: &Instance) -> Outcome {
    assert!(
        inst.kind() == Kind::Interval,
        "solve_interval requires an interval instance"
    );
    let mut st = WorkingState::new(inst);
    st.step1();
    if let Err(c) = st.step2_3() {
        return Outcome::No(c);
    }
    st.step4_5();
    if let Err(c) = st.step6() {
        return Outcome::No(c);
    }
    if let Err(c) = st.step7() {
        return Outcome::No(c);
    }
    st.step8();
    st.step9();
    match st.step10() {
        Ok(sol) => Outcome::Yes(sol),
        Err(c) => Outcome::No(c),
    }
}
