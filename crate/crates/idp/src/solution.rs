//! Solver outputs: path sets, refusal certificates, and the combined outcome.

/// One solution path: the pair it serves and its vertex sequence in order.
/// The first and last vertices are the pair's representatives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathRecord {
    pub pair: usize,
    pub vertices: Vec<u32>,
}

/// A full solution: for every pair `i`, exactly `r_i` paths with `pair == i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Solution {
    pub paths: Vec<PathRecord>,
}

impl Solution {
    pub fn paths_for(&self, pair: usize) -> impl Iterator<Item = &PathRecord> {
        self.paths.iter().filter(move |p| p.pair == pair)
    }

    /// Sorts paths into the canonical order: by pair, then shortest first,
    /// then lexicographically by vertex ids.
    pub fn canonicalize(&mut self) {
        self.paths
            .sort_by(|a, b| (a.pair, a.vertices.len(), &a.vertices).cmp(&(b.pair, b.vertices.len(), &b.vertices)));
    }
}

/// A machine-checkable record of which step refuted the instance, with the
/// offending object where one exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoCertificate {
    /// A pair with requirement at least 2 has non-adjacent representatives.
    Step2 { pair: usize },
    /// Some vertex represents three or more remaining terminals.
    Step6 { vertex: u32 },
    /// The terminal pairs cannot be laid out in the required order.
    Step7,
    /// The unique remaining pair's representatives are disconnected.
    Step5Plus { pair: usize },
    /// The selection stage could not meet this pair's quota.
    Step10 { pair: usize },
    /// Fewer pairwise-disjoint candidate arcs than remaining pairs.
    Step10Star,
}

impl NoCertificate {
    /// The step identifier used in the solution text format.
    pub fn step_id(&self) -> &'static str {
        match self {
            NoCertificate::Step2 { .. } => "2",
            NoCertificate::Step6 { .. } => "6",
            NoCertificate::Step7 => "7",
            NoCertificate::Step5Plus { .. } => "5+",
            NoCertificate::Step10 { .. } => "10",
            NoCertificate::Step10Star => "10*",
        }
    }
}

/// The answer for an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes(Solution),
    No(NoCertificate),
}

impl Outcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, Outcome::Yes(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Yes(s) => Some(s),
            Outcome::No(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&NoCertificate> {
        match self {
            Outcome::Yes(_) => None,
            Outcome::No(c) => Some(c),
        }
    }
}
