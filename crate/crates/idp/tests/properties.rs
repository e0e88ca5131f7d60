//! Structural invariants over randomized corpora: representation machinery,
//! candidate construction, selection preconditions, and the covering
//! properties of emitted solutions.

use proptest::prelude::*;

use idp::circular::solve_circular;
use idp::format::{emit_instance, parse_instance, NamedInstance};
use idp::gen::{gen_random, GenParams, Generated};
use idp::indset::{check_block_structure, ColoredIntervalSet};
use idp::interval::{solve_interval, WorkingState};
use idp::model::arc_union;
use idp::oracle::is_clean_path;
use idp::{build_adjacency, build_buckets, Instance, Kind, Outcome};

fn params(
    max_n: usize,
) -> impl Strategy<Value = GenParams> {
    (
        any::<u64>(),
        2..=max_n,
        0usize..=3,
        1u32..=3,
        prop::bool::ANY,
        prop::bool::ANY,
        0.5f64..6.0,
    )
        .prop_map(|(seed, n, k, max_req, circ, planted, density)| GenParams {
            kind: if circ { Kind::Circular } else { Kind::Interval },
            n,
            density,
            k,
            max_req,
            planted,
            seed,
        })
}

fn generate(p: &GenParams) -> Option<Generated> {
    gen_random(p).ok()
}

/// Mirrors the solver drivers up to the candidate-generation step; `None`
/// when the pipeline answered before reaching it.
fn run_to_candidates(inst: &Instance) -> Option<WorkingState<'_>> {
    let mut st = WorkingState::new(inst);
    st.step1();
    if inst.kind() == Kind::Interval && st.step2_3().is_err() {
        return None;
    }
    st.step4_5();
    if inst.kind() == Kind::Circular {
        let survivors = st.committed().iter().filter(|&&c| !c).count();
        if survivors <= 1 {
            return None;
        }
    }
    if st.step6().is_err() || st.step7().is_err() {
        return None;
    }
    st.step8();
    st.step9();
    Some(st)
}

/// Union of the path's inner-vertex ranges; `None` means the union covers
/// the whole circle. Only meaningful for paths with inner vertices.
fn covered_span(inst: &Instance, path: &[u32]) -> Option<(u32, u32)> {
    let rep = inst.rep();
    let inners = &path[1..path.len() - 1];
    let first = inners[0] as usize;
    let mut acc = Some((rep.left(first), rep.right(first)));
    for &w in &inners[1..] {
        let arc = (rep.left(w as usize), rep.right(w as usize));
        acc = match inst.kind() {
            Kind::Interval => {
                let cur = acc.unwrap();
                Some((cur.0.min(arc.0), cur.1.max(arc.1)))
            }
            Kind::Circular => match acc {
                Some(cur) => arc_union(cur, arc, rep.ground()),
                None => None,
            },
        };
    }
    acc
}

fn arcs_intersect(a: (u32, u32), b: (u32, u32)) -> bool {
    let covers = |(l, r): (u32, u32), p: u32| if l <= r { l <= p && p <= r } else { p >= l || p <= r };
    covers(a, b.0) || covers(b, a.0)
}

/// The generator parameters above must actually feed the properties:
/// count how much of a fixed corpus survives each stage so a silent
/// drought of interesting cases shows up as a failure here.
#[test]
fn the_randomized_corpus_is_not_vacuous() {
    let mut generated = 0usize;
    let mut with_candidates = 0usize;
    let mut yes_with_inners = 0usize;
    let mut multi_requirement = 0usize;
    for seed in 0..400u64 {
        let p = GenParams {
            kind: if seed % 2 == 0 { Kind::Interval } else { Kind::Circular },
            n: 3 + (seed % 8) as usize,
            density: 1.0 + (seed % 5) as f64,
            k: 1 + (seed % 3) as usize,
            max_req: 3,
            planted: seed % 3 == 0,
            seed,
        };
        let Some(g) = generate(&p) else { continue };
        generated += 1;
        if g.inst.pairs().iter().any(|pr| pr.r > 1) {
            multi_requirement += 1;
        }
        if let Some(st) = run_to_candidates(&g.inst) {
            if !st.candidates().is_empty() {
                with_candidates += 1;
            }
        }
        let outcome = match g.inst.kind() {
            Kind::Interval => solve_interval(&g.inst),
            Kind::Circular => solve_circular(&g.inst),
        };
        if let Outcome::Yes(sol) = outcome {
            if sol.paths.iter().any(|p| p.vertices.len() >= 3) {
                yes_with_inners += 1;
            }
        }
    }
    assert!(generated >= 250, "only {generated} of 400 corpora generated");
    assert!(with_candidates >= 40, "only {with_candidates} corpora reached candidates");
    assert!(yes_with_inners >= 40, "only {yes_with_inners} yes answers used inner vertices");
    assert!(multi_requirement >= 40, "only {multi_requirement} corpora had quotas above one");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn adjacency_lists_match_pairwise_checks(p in params(40)) {
        let Some(g) = generate(&p) else { return Ok(()) };
        let rep = g.inst.rep();
        let adj = build_adjacency(rep);
        for x in 0..rep.n() {
            for y in 0..rep.n() {
                let listed = adj.neighbors(x).contains(&(y as u32));
                prop_assert_eq!(listed, x != y && rep.adjacent(x, y), "vertices {} {}", x, y);
            }
        }
    }

    #[test]
    fn interval_bucket_totals_respect_the_bound(p in params(40)) {
        let mut p = p;
        p.kind = Kind::Interval;
        let Some(g) = generate(&p) else { return Ok(()) };
        let rep = g.inst.rep();
        let m = build_adjacency(rep).edge_count();
        let buckets = build_buckets(rep, |_| true);
        prop_assert!(buckets.total_entries() <= 4 * m + 2 * rep.n());
    }

    #[test]
    fn instance_text_round_trips(p in params(16)) {
        let Some(g) = generate(&p) else { return Ok(()) };
        let named = NamedInstance::numbered(g.inst);
        let text = emit_instance(&named);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(emit_instance(&back), text);
        prop_assert_eq!(back.inst.pairs(), named.inst.pairs());
    }

    #[test]
    fn candidates_are_induced_paths_covering_their_spans(p in params(10)) {
        let Some(g) = generate(&p) else { return Ok(()) };
        let inst = &g.inst;
        let Some(st) = run_to_candidates(inst) else { return Ok(()) };
        let mut is_rep = vec![false; inst.n()];
        for pr in inst.pairs() {
            is_rep[pr.s as usize] = true;
            is_rep[pr.t as usize] = true;
        }
        prop_assert!(st.candidates().len() <= 4 * inst.n(), "candidate budget exceeded");
        for c in st.candidates() {
            let path = c.path();
            prop_assert!(is_clean_path(inst, &path), "candidate path not induced: {:?}", path);
            let key = inst.pairs()[c.pair].key();
            let ends = (c.ends.0.min(c.ends.1), c.ends.0.max(c.ends.1));
            prop_assert_eq!(ends, key, "candidate ends are not the pair's representatives");
            prop_assert!(c.witness.iter().all(|&w| !is_rep[w as usize]),
                "candidate inner vertices must not represent terminals");
            let union = covered_span(inst, &path);
            prop_assert_eq!(union, Some(c.span), "span differs from the inner union");
        }
    }

    #[test]
    fn interval_candidates_keep_the_block_order(p in params(10)) {
        let mut p = p;
        p.kind = Kind::Interval;
        let Some(g) = generate(&p) else { return Ok(()) };
        let Some(st) = run_to_candidates(&g.inst) else { return Ok(()) };
        let set = ColoredIntervalSet {
            ground: g.inst.rep().ground(),
            items: st.candidates().iter().map(|c| (c.pair as u32, c.span)).collect(),
            quotas: st.quotas(),
        };
        prop_assert!(
            check_block_structure(&set, g.inst.rep().ground() as usize, g.inst.k()).is_ok()
        );
    }

    #[test]
    fn committed_paths_are_terminal_edges(p in params(10)) {
        let Some(g) = generate(&p) else { return Ok(()) };
        let Some(st) = run_to_candidates(&g.inst) else { return Ok(()) };
        for (i, done) in st.committed().iter().enumerate() {
            let quota = st.quotas()[i];
            let expected = g.inst.pairs()[i].r - u32::from(*done);
            prop_assert_eq!(quota, expected);
        }
        for pr in st.committed_paths() {
            prop_assert_eq!(pr.vertices.len(), 2);
            let (a, b) = (pr.vertices[0], pr.vertices[1]);
            prop_assert_eq!((a.min(b), a.max(b)), g.inst.pairs()[pr.pair].key());
            prop_assert!(g.inst.rep().adjacent(a as usize, b as usize));
        }
    }

    #[test]
    fn solutions_satisfy_the_covering_properties(p in params(10)) {
        let Some(g) = generate(&p) else { return Ok(()) };
        let inst = &g.inst;
        let outcome = match inst.kind() {
            Kind::Interval => solve_interval(inst),
            Kind::Circular => solve_circular(inst),
        };
        let Outcome::Yes(sol) = outcome else { return Ok(()) };
        let violations = idp::oracle::verify_mutually_induced(inst, &sol.paths);
        prop_assert!(violations.is_empty(), "verifier rejected a solution: {:?}", violations);

        // Every pair with adjacent representatives keeps its terminal edge.
        for (i, pr) in inst.pairs().iter().enumerate() {
            if inst.rep().adjacent(pr.s as usize, pr.t as usize) {
                prop_assert!(
                    sol.paths.iter().any(|p| p.pair == i && p.vertices.len() == 2),
                    "pair {} lost its terminal edge", i
                );
            }
        }

        let mut is_rep = vec![false; inst.n()];
        for pr in inst.pairs() {
            is_rep[pr.s as usize] = true;
            is_rep[pr.t as usize] = true;
        }
        let covered: Vec<(usize, Option<(u32, u32)>, (u32, u32))> = sol
            .paths
            .iter()
            .filter(|p| p.vertices.len() >= 3)
            .map(|p| {
                let ends = (p.vertices[0], *p.vertices.last().unwrap());
                (p.pair, covered_span(inst, &p.vertices), ends)
            })
            .collect();

        // (i) a covered range touches no terminal representative except the
        // path's own two.
        for &(_, span, (a, b)) in &covered {
            for v in 0..inst.n() {
                if !is_rep[v] || v as u32 == a || v as u32 == b {
                    continue;
                }
                let varc = (inst.rep().left(v), inst.rep().right(v));
                let touches = match span {
                    Some(s) => arcs_intersect(s, varc),
                    None => true,
                };
                prop_assert!(!touches, "covered range touches foreign representative {}", v);
            }
        }

        // (ii) covered ranges of distinct paths are pairwise disjoint.
        for i in 0..covered.len() {
            for j in i + 1..covered.len() {
                let hit = match (covered[i].1, covered[j].1) {
                    (Some(a), Some(b)) => arcs_intersect(a, b),
                    _ => true,
                };
                prop_assert!(!hit, "covered ranges overlap: {:?} {:?}", covered[i], covered[j]);
            }
        }

        // (iii) on a line, no covered range of another pair sits strictly
        // between two covered ranges of one pair.
        if inst.kind() == Kind::Interval {
            for &(ci, a, _) in &covered {
                for &(cj, b, _) in &covered {
                    if ci != cj {
                        continue;
                    }
                    let (a, b) = (a.unwrap(), b.unwrap());
                    if a.1 >= b.0 {
                        continue;
                    }
                    for &(ce, e, _) in &covered {
                        let e = e.unwrap();
                        prop_assert!(
                            !(ce != ci && a.1 < e.0 && e.1 < b.0),
                            "pair {} range {:?} sits between pair {} ranges", ce, e, ci
                        );
                    }
                }
            }
        }
    }
}
