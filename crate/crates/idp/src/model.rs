//! Instance model: interval / circular-arc representations, terminal pairs,
//! validation, and the derived adjacency structure.

use thiserror::Error;

/// Which geometry the representation lives on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Kind {
    /// Intervals on a line; every vertex has `left < right`.
    Interval,
    /// Arcs on a circle; an arc with `left > right` wraps through the top.
    Circular,
}

/// A representation over the ground set `1..=2n`: every point is an endpoint
/// of exactly one vertex, every vertex owns exactly two points.
///
/// Vertices are dense indices `0..n`. Arc `v` covers the points reached by
/// walking clockwise from `left(v)` to `right(v)` inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    kind: Kind,
    left: Vec<u32>,
    right: Vec<u32>,
    /// `owner[p - 1]` packs the vertex having point `p` as one of its
    /// endpoints, with [`LEFT_BIT`] set when `p` is that vertex's left
    /// endpoint — so the sweeps over the ground set read one word per point.
    owner: Vec<u32>,
}

/// High bit of an `owner` entry: the point is its owner's left endpoint.
const LEFT_BIT: u32 = 1 << 31;

/// One terminal pair: distinct vertices `s`, `t` and a requirement `r >= 1`
/// for the number of vertex-disjoint induced paths that must join them.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct TerminalPair {
    pub s: u32,
    pub t: u32,
    pub r: u32,
}

impl TerminalPair {
    pub fn new(s: u32, t: u32, r: u32) -> Self {
        TerminalPair { s, t, r }
    }

    /// The unordered vertex pair, normalised so equal pairs compare equal.
    pub fn key(&self) -> (u32, u32) {
        if self.s <= self.t {
            (self.s, self.t)
        } else {
            (self.t, self.s)
        }
    }
}

/// A validated solver input: a representation plus its terminal pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    rep: Representation,
    pairs: Vec<TerminalPair>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("representation has no vertices")]
    EmptyRepresentation,
    #[error("vertex {vertex}: endpoint {point} outside 1..={ground}")]
    EndpointOutOfRange { vertex: usize, point: u32, ground: u32 },
    #[error("point {point} is an endpoint of more than one vertex")]
    DuplicateEndpoint { point: u32 },
    #[error("vertex {vertex}: interval endpoints are reversed")]
    ReversedInterval { vertex: usize },
    #[error("pair {index}: vertex {vertex} out of range")]
    VertexOutOfRange { index: usize, vertex: u32 },
    #[error("pair {index}: both ends name the same vertex")]
    DegeneratePair { index: usize },
    #[error("pair {index}: requirement must be at least 1")]
    ZeroRequirement { index: usize },
    #[error("pair {index}: circular instances only support unit requirements")]
    RequirementOnCircular { index: usize },
    #[error("pair {index}: same vertex pair as pair {first}")]
    DuplicatePair { index: usize, first: usize },
}

impl Representation {
    /// Builds and validates a representation from `(left, right)` spans.
    pub fn new(kind: Kind, spans: &[(u32, u32)]) -> Result<Self, ValidationError> {
        let n = spans.len();
        if n == 0 {
            return Err(ValidationError::EmptyRepresentation);
        }
        let ground = 2 * n as u32;
        let mut owner = vec![u32::MAX; 2 * n];
        for (v, &(l, r)) in spans.iter().enumerate() {
            for p in [l, r] {
                if p < 1 || p > ground {
                    return Err(ValidationError::EndpointOutOfRange {
                        vertex: v,
                        point: p,
                        ground,
                    });
                }
                let slot = &mut owner[p as usize - 1];
                if *slot != u32::MAX {
                    return Err(ValidationError::DuplicateEndpoint { point: p });
                }
                *slot = v as u32 | if p == l { LEFT_BIT } else { 0 };
            }
            if kind == Kind::Interval && l > r {
                return Err(ValidationError::ReversedInterval { vertex: v });
            }
        }
        // n vertices placed 2n distinct in-range points, so the ground set is
        // covered exactly; no further check needed.
        Ok(Representation {
            kind,
            left: spans.iter().map(|&(l, _)| l).collect(),
            right: spans.iter().map(|&(_, r)| r).collect(),
            owner,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.left.len()
    }

    /// Largest point of the ground set, `2n`.
    pub fn ground(&self) -> u32 {
        2 * self.left.len() as u32
    }

    pub fn left(&self, v: usize) -> u32 {
        self.left[v]
    }

    pub fn right(&self, v: usize) -> u32 {
        self.right[v]
    }

    /// The unique vertex having `p` as an endpoint.
    #[inline]
    pub fn owner(&self, p: u32) -> usize {
        (self.owner[p as usize - 1] & !LEFT_BIT) as usize
    }

    /// Whether `p` is the left endpoint of its owner.
    #[inline]
    pub fn is_left(&self, p: u32) -> bool {
        self.owner[p as usize - 1] >= LEFT_BIT
    }

    /// Owner and side of point `p` in one lookup.
    #[inline]
    fn endpoint(&self, p: u32) -> (usize, bool) {
        let e = self.owner[p as usize - 1];
        ((e & !LEFT_BIT) as usize, e >= LEFT_BIT)
    }

    /// An arc wraps when its clockwise span passes the point `2n -> 1` seam.
    pub fn wraps(&self, v: usize) -> bool {
        self.left[v] > self.right[v]
    }

    /// Whether arc `v` covers point `p`.
    pub fn covers(&self, v: usize, p: u32) -> bool {
        let (l, r) = (self.left[v], self.right[v]);
        if l <= r {
            l <= p && p <= r
        } else {
            p >= l || p <= r
        }
    }

    /// Two distinct arcs intersect iff one covers the other's left endpoint.
    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        x != y && (self.covers(x, self.left[y]) || self.covers(y, self.left[x]))
    }

    /// Number of ground points covered by arc `v`.
    pub fn span_len(&self, v: usize) -> u32 {
        let (l, r) = (self.left[v], self.right[v]);
        if l <= r {
            r - l + 1
        } else {
            self.ground() - l + 1 + r
        }
    }
}

impl Instance {
    pub fn new(rep: Representation, pairs: Vec<TerminalPair>) -> Result<Self, ValidationError> {
        let n = rep.n() as u32;
        let mut seen: std::collections::HashMap<(u32, u32), usize> =
            std::collections::HashMap::with_capacity(pairs.len());
        for (index, p) in pairs.iter().enumerate() {
            for v in [p.s, p.t] {
                if v >= n {
                    return Err(ValidationError::VertexOutOfRange { index, vertex: v });
                }
            }
            if p.s == p.t {
                return Err(ValidationError::DegeneratePair { index });
            }
            if p.r == 0 {
                return Err(ValidationError::ZeroRequirement { index });
            }
            if rep.kind() == Kind::Circular && p.r > 1 {
                return Err(ValidationError::RequirementOnCircular { index });
            }
            if let Some(&first) = seen.get(&p.key()) {
                return Err(ValidationError::DuplicatePair { index, first });
            }
            seen.insert(p.key(), index);
        }
        Ok(Instance { rep, pairs })
    }

    /// Convenience constructor for interval instances.
    pub fn interval(
        spans: &[(u32, u32)],
        pairs: &[(u32, u32, u32)],
    ) -> Result<Self, ValidationError> {
        let rep = Representation::new(Kind::Interval, spans)?;
        Instance::new(
            rep,
            pairs.iter().map(|&(s, t, r)| TerminalPair::new(s, t, r)).collect(),
        )
    }

    /// Convenience constructor for circular instances.
    pub fn circular(
        spans: &[(u32, u32)],
        pairs: &[(u32, u32, u32)],
    ) -> Result<Self, ValidationError> {
        let rep = Representation::new(Kind::Circular, spans)?;
        Instance::new(
            rep,
            pairs.iter().map(|&(s, t, r)| TerminalPair::new(s, t, r)).collect(),
        )
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn kind(&self) -> Kind {
        self.rep.kind()
    }

    pub fn n(&self) -> usize {
        self.rep.n()
    }

    pub fn pairs(&self) -> &[TerminalPair] {
        &self.pairs
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }
}

/// Compressed sparse adjacency lists; neighbour slices are sorted and
/// duplicate-free, so iteration order is deterministic.
#[derive(Clone, Debug)]
pub struct Adjacency {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Adjacency {
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }
}

/// Builds adjacency lists in `O(n + m)` by sweeping the ground set once:
/// when a vertex opens at its left endpoint, every currently open arc covers
/// that endpoint and is therefore a neighbour. Wrapped arcs start open, close
/// at their right endpoint, and re-open at their left endpoint, which can
/// emit a wrapped-wrapped edge twice; the radix pass below removes duplicates.
pub fn build_adjacency(rep: &Representation) -> Adjacency {
    let n = rep.n();
    let mut open: Vec<u32> = Vec::new();
    let mut slot: Vec<u32> = vec![u32::MAX; n];
    let mut halves: Vec<(u32, u32)> = Vec::new();

    let insert = |open: &mut Vec<u32>, slot: &mut Vec<u32>, v: usize| {
        slot[v] = open.len() as u32;
        open.push(v as u32);
    };
    for v in 0..n {
        if rep.wraps(v) {
            insert(&mut open, &mut slot, v);
        }
    }
    for p in 1..=rep.ground() {
        let v = rep.owner(p);
        if rep.left(v) == p {
            for &x in open.iter() {
                halves.push((v as u32, x));
                halves.push((x, v as u32));
            }
            insert(&mut open, &mut slot, v);
        } else {
            let i = slot[v] as usize;
            let last = open.len() - 1;
            open.swap(i, last);
            slot[open[i] as usize] = i as u32;
            open.pop();
            slot[v] = u32::MAX;
        }
    }

    // Radix sort the directed half-edges by (source, target) with two stable
    // counting passes, then emit the CSR while skipping duplicate entries.
    let mut sorted = vec![(0u32, 0u32); halves.len()];
    counting_pass(n, &halves, &mut sorted, |&(_, t)| t);
    let mut resorted = vec![(0u32, 0u32); halves.len()];
    counting_pass(n, &sorted, &mut resorted, |&(s, _)| s);

    let mut offsets = vec![0u32; n + 1];
    let mut targets = Vec::with_capacity(resorted.len());
    let mut prev = (u32::MAX, u32::MAX);
    for &(s, t) in &resorted {
        if (s, t) == prev {
            continue;
        }
        prev = (s, t);
        targets.push(t);
        offsets[s as usize + 1] = targets.len() as u32;
    }
    for i in 1..=n {
        if offsets[i] < offsets[i - 1] {
            offsets[i] = offsets[i - 1];
        }
    }
    Adjacency { offsets, targets }
}

fn counting_pass<F: Fn(&(u32, u32)) -> u32>(
    n: usize,
    src: &[(u32, u32)],
    dst: &mut [(u32, u32)],
    key: F,
) {
    let mut pos = vec![0u32; n + 1];
    for e in src {
        pos[key(e) as usize + 1] += 1;
    }
    for i in 1..=n {
        pos[i] += pos[i - 1];
    }
    for e in src {
        let k = key(e) as usize;
        dst[pos[k] as usize] = *e;
        pos[k] += 1;
    }
}

/// Clockwise offset of `p` from `origin` on a circle with `ground` points:
/// `origin` maps to 0 and values grow walking clockwise.
pub fn cw_phase(p: u32, origin: u32, ground: u32) -> u32 {
    (p + ground - origin) % ground
}

/// Union of two intersecting arcs on a circle with `ground` points, as a
/// single arc, or `None` when together they cover the whole circle. An
/// endpoint of the union must be an endpoint of `a` or `b` whose outward
/// neighbour point is uncovered.
pub fn arc_union(a: (u32, u32), b: (u32, u32), ground: u32) -> Option<(u32, u32)> {
    let covers = |(l, r): (u32, u32), p: u32| {
        if l <= r {
            l <= p && p <= r
        } else {
            p >= l || p <= r
        }
    };
    let covered = |p: u32| covers(a, p) || covers(b, p);
    let prev = |p: u32| if p == 1 { ground } else { p - 1 };
    let next = |p: u32| if p == ground { 1 } else { p + 1 };
    let mut left = None;
    for l in [a.0, b.0] {
        if !covered(prev(l)) {
            left = Some(l);
        }
    }
    let mut right = None;
    for r in [a.1, b.1] {
        if !covered(next(r)) {
            right = Some(r);
        }
    }
    match (left, right) {
        (Some(l), Some(r)) => Some((l, r)),
        _ => None,
    }
}

/// Point-coverage buckets: bucket `p` lists every admitted vertex whose range
/// covers point `p`. Stored flat (CSR by point) with a drain cursor per
/// bucket, so the total footprint is the sum of span lengths — at most
/// `4m + 2n` entries when every vertex is admitted.
#[derive(Clone, Debug)]
pub struct BucketIndex {
    offsets: Vec<u32>,
    cursor: Vec<u32>,
    entries: Vec<u32>,
}

impl BucketIndex {
    pub fn bucket(&self, p: u32) -> &[u32] {
        &self.entries[self.offsets[p as usize] as usize..self.offsets[p as usize + 1] as usize]
    }

    /// Removes and returns the next vertex of bucket `p`, if any. Entries are
    /// consumed once; repeated drains of the same bucket see what is left.
    /// The cursor table is materialized on the first drain, so indexes that
    /// are only ever read stay cheaper to build.
    pub fn drain_next(&mut self, p: u32) -> Option<u32> {
        if self.cursor.is_empty() {
            self.cursor = self.offsets[..self.offsets.len() - 1].to_vec();
        }
        let c = self.cursor[p as usize];
        if c < self.offsets[p as usize + 1] {
            self.cursor[p as usize] = c + 1;
            Some(self.entries[c as usize])
        } else {
            None
        }
    }

    pub fn total_entries(&self) -> usize {
        self.entries.len()
    }
}

/// Builds coverage buckets over the ground set for every vertex admitted by
/// `admit`, in time linear in the number of entries.
pub fn build_buckets<F: Fn(usize) -> bool>(rep: &Representation, admit: F) -> BucketIndex {
    sweep_buckets::<false, _>(rep, admit)
}

/// Coverage buckets admitting every vertex. Equivalent to
/// `build_buckets(rep, |_| true)` but the sweep touches only the packed
/// endpoint array, sequentially — this is the solver's hot constructor.
pub fn build_buckets_all(rep: &Representation) -> BucketIndex {
    sweep_buckets::<true, _>(rep, |_| true)
}

/// Coverage buckets admitting every vertex, materialized only where the
/// solver reads them: at every left endpoint (neighbour walks start there)
/// and inside the given extra ranges (sorted, disjoint, non-wrapping; the
/// drain strips). Buckets of all other points read as empty.
pub fn build_buckets_at_lefts(rep: &Representation, extra: &[(u32, u32)]) -> BucketIndex {
    debug_assert!(extra.windows(2).all(|w| w[0].1 < w[1].0));
    debug_assert!(extra.iter().all(|&(a, b)| 1 <= a && a <= b && b <= rep.ground()));
    let ground = rep.ground() as usize;
    let n = rep.n();
    let total: usize = (0..n).map(|v| rep.span_len(v) as usize).sum();
    let mut open: Vec<u32> = Vec::new();
    for v in 0..n {
        if rep.wraps(v) {
            open.push(v as u32);
        }
    }
    let mut offsets = vec![0u32; ground + 2];
    let mut entries: Vec<u32> = Vec::with_capacity(total);
    let mut sidx = 0usize;
    for p in 1..=ground as u32 {
        let (v, opening) = rep.endpoint(p);
        if opening {
            open.push(v as u32);
        }
        while sidx < extra.len() && extra[sidx].1 < p {
            sidx += 1;
        }
        if opening || (sidx < extra.len() && extra[sidx].0 <= p) {
            entries.extend_from_slice(&open);
        }
        offsets[p as usize + 1] = entries.len() as u32;
        if !opening {
            let i = open.iter().rposition(|&x| x == v as u32).unwrap();
            open.swap_remove(i);
        }
    }
    BucketIndex { offsets, cursor: Vec::new(), entries }
}

/// One sweep keeps the set of open arcs and snapshots it at every point, so
/// all writes are sequential appends; bucket order is the open-set order at
/// that point. Closing arcs are found in the open set by a backward scan,
/// which costs no more than the snapshot just taken.
fn sweep_buckets<const ALL: bool, F: Fn(usize) -> bool>(
    rep: &Representation,
    admit: F,
) -> BucketIndex {
    let ground = rep.ground() as usize;
    let n = rep.n();
    let admitted: Vec<bool> = if ALL { Vec::new() } else { (0..n).map(admit).collect() };
    let is_in = |v: usize| ALL || admitted[v];
    let total: usize = (0..n)
        .filter(|&v| is_in(v))
        .map(|v| rep.span_len(v) as usize)
        .sum();
    let mut open: Vec<u32> = Vec::new();
    for v in 0..n {
        if is_in(v) && rep.wraps(v) {
            open.push(v as u32);
        }
    }
    let mut offsets = vec![0u32; ground + 2];
    let mut entries: Vec<u32> = Vec::with_capacity(total);
    for p in 1..=ground as u32 {
        let (v, opening) = rep.endpoint(p);
        if opening && is_in(v) {
            open.push(v as u32);
        }
        entries.extend_from_slice(&open);
        offsets[p as usize + 1] = entries.len() as u32;
        if !opening && is_in(v) {
            let i = open.iter().rposition(|&x| x == v as u32).unwrap();
            open.swap_remove(i);
        }
    }
    BucketIndex { offsets, cursor: Vec::new(), entries }
}

/// Calls `f` exactly once for every neighbour of `v`, given buckets that
/// admit every vertex: the bucket of `v`'s left endpoint lists the arcs
/// covering it, and the remaining points of `v`'s span contribute the arcs
/// whose left endpoint `v` covers. On a circle an arc can qualify both ways;
/// the span walk skips arcs that already cover `v`'s left endpoint.
pub fn for_each_neighbor<F: FnMut(usize)>(
    rep: &Representation,
    cover: &BucketIndex,
    v: usize,
    mut f: F,
) {
    let lv = rep.left(v);
    for &w in cover.bucket(lv) {
        if w as usize != v {
            f(w as usize);
        }
    }
    let circle = rep.kind() == Kind::Circular;
    let ground = rep.ground();
    let rv = rep.right(v);
    let mut p = lv;
    while p != rv {
        p = if p == ground { 1 } else { p + 1 };
        let (w, opening) = rep.endpoint(p);
        if opening && w != v && !(circle && rep.covers(w, lv)) {
            f(w);
        }
    }
}
