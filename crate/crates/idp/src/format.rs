//! Text formats: instances, solutions, and benchmark reports.
//!
//! Instance files are line oriented UTF-8. A header `idp <interval|circular>
//! n=<n> k=<k>` is followed by `n` vertex lines `v <id> <l> <r>` and `k`
//! terminal lines `p <s-id> <t-id> <r>`. Ids are opaque whitespace-free
//! tokens; endpoints are the integers `1..=2n`. Blank lines and lines
//! starting with `#` are ignored. Files emitted by [`emit_instance`] parse
//! back and re-emit byte-identically.
//!
//! Solution files start with `yes` followed by one `path <pair> <id>…` line
//! per path (pairs are numbered from 1 in file order), or consist of a
//! single line `no step=<step>` plus an optional `pair=`/`vertex=` detail.
//!
//! Benchmark reports are tab-separated: a `# idp-bench v1` header, one
//! `record` line per measured instance, and an optional trailing `exponent`
//! line with the fitted growth exponent.

use std::collections::HashMap;

use thiserror::Error;

use crate::model::{Instance, Kind, Representation, TerminalPair};
use crate::solution::{NoCertificate, Outcome, PathRecord, Solution};

/// An instance together with the vertex names used in its text form.
/// Internally vertices are dense indices; the names exist only at the
/// format boundary.
#[derive(Clone, Debug)]
pub struct NamedInstance {
    pub inst: Instance,
    pub names: Vec<String>,
}

impl NamedInstance {
    /// Wraps an instance with the default names `v0`, `v1`, ….
    pub fn numbered(inst: Instance) -> Self {
        let names = (0..inst.n()).map(|i| format!("v{i}")).collect();
        NamedInstance { inst, names }
    }

    fn name_map(&self) -> HashMap<&str, u32> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u32))
            .collect()
    }
}

/// A format or consistency problem in an input file, located by line.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn err<T>(line: usize, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, reason: reason.into() })
}

/// Significant lines of a file: 1-based line number and trimmed content,
/// with blanks and `#` comments dropped.
fn significant(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_field<T: std::str::FromStr>(
    line: usize,
    token: &str,
    what: &str,
) -> Result<T, ParseError> {
    token
        .parse::<T>()
        .ok()
        .map_or_else(|| err(line, format!("cannot read {what} from `{token}`")), Ok)
}

fn keyed<'a>(line: usize, token: &'a str, key: &str) -> Result<&'a str, ParseError> {
    match token.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => err(line, format!("expected `{key}=<value>`, found `{token}`")),
    }
}

/// Reads an instance file. Errors carry the 1-based line number of the first
/// offending line.
pub fn parse_instance(text: &str) -> Result<NamedInstance, ParseError> {
    let lines = significant(text);
    let eof = text.lines().count() + 1;
    let mut it = lines.into_iter();

    let (hline, header) = match it.next() {
        Some(l) => l,
        None => return err(eof, "empty file: expected `idp` header"),
    };
    let mut h = header.split_whitespace();
    if h.next() != Some("idp") {
        return err(hline, "expected header `idp <interval|circular> n=<n> k=<k>`");
    }
    let kind = match h.next() {
        Some("interval") => Kind::Interval,
        Some("circular") => Kind::Circular,
        other => {
            return err(hline, format!("expected `interval` or `circular`, found `{other:?}`"))
        }
    };
    let n: usize = match h.next() {
        Some(tok) => parse_field(hline, keyed(hline, tok, "n")?, "vertex count")?,
        None => return err(hline, "header is missing `n=<n>`"),
    };
    let k: usize = match h.next() {
        Some(tok) => parse_field(hline, keyed(hline, tok, "k")?, "pair count")?,
        None => return err(hline, "header is missing `k=<k>`"),
    };
    if let Some(extra) = h.next() {
        return err(hline, format!("unexpected token `{extra}` after header"));
    }
    if n == 0 {
        return err(hline, "vertex count must be positive");
    }
    let ground = 2 * n as u32;

    let mut names: Vec<String> = Vec::with_capacity(n);
    let mut spans: Vec<(u32, u32)> = Vec::with_capacity(n);
    let mut by_name: HashMap<String, u32> = HashMap::with_capacity(n);
    let mut point_seen = vec![false; 2 * n + 1];
    for _ in 0..n {
        let (lno, line) = match it.next() {
            Some(l) => l,
            None => return err(eof, format!("expected {n} vertex lines, file ended early")),
        };
        let mut f = line.split_whitespace();
        if f.next() != Some("v") {
            return err(lno, format!("expected `v <id> <l> <r>`, found `{line}`"));
        }
        let name = match f.next() {
            Some(s) => s.to_string(),
            None => return err(lno, "vertex line is missing its id"),
        };
        let l: u32 = parse_field(lno, f.next().unwrap_or(""), "left endpoint")?;
        let r: u32 = parse_field(lno, f.next().unwrap_or(""), "right endpoint")?;
        if let Some(extra) = f.next() {
            return err(lno, format!("unexpected token `{extra}` on vertex line"));
        }
        match kind {
            Kind::Interval if l >= r => {
                return err(lno, format!("interval endpoints must satisfy l < r, got {l} {r}"))
            }
            Kind::Circular if l == r => {
                return err(lno, format!("arc endpoints must differ, got {l} {r}"))
            }
            _ => {}
        }
        for p in [l, r] {
            if p < 1 || p > ground {
                return err(lno, format!("endpoint {p} outside the range 1..={ground}"));
            }
            if point_seen[p as usize] {
                return err(lno, format!("endpoint {p} already used by another vertex"));
            }
            point_seen[p as usize] = true;
        }
        if by_name.insert(name.clone(), names.len() as u32).is_some() {
            return err(lno, format!("vertex id `{name}` appears twice"));
        }
        names.push(name);
        spans.push((l, r));
    }

    let mut pairs: Vec<TerminalPair> = Vec::with_capacity(k);
    let mut pair_keys: HashMap<(u32, u32), usize> = HashMap::with_capacity(k);
    for _ in 0..k {
        let (lno, line) = match it.next() {
            Some(l) => l,
            None => return err(eof, format!("expected {k} pair lines, file ended early")),
        };
        let mut f = line.split_whitespace();
        if f.next() != Some("p") {
            return err(lno, format!("expected `p <s-id> <t-id> <r>`, found `{line}`"));
        }
        let mut terminal = |what: &str| -> Result<u32, ParseError> {
            let tok = f.next().unwrap_or("");
            match by_name.get(tok) {
                Some(&v) => Ok(v),
                None => err(lno, format!("{what} `{tok}` is not a declared vertex id")),
            }
        };
        let s = terminal("source")?;
        let t = terminal("sink")?;
        let r: u32 = parse_field(lno, f.next().unwrap_or(""), "requirement")?;
        if let Some(extra) = f.next() {
            return err(lno, format!("unexpected token `{extra}` on pair line"));
        }
        if s == t {
            return err(lno, "a pair's two terminals must be distinct vertices");
        }
        if r == 0 {
            return err(lno, "requirement must be at least 1");
        }
        if kind == Kind::Circular && r > 1 {
            return err(lno, "circular instances only support requirement 1");
        }
        let pair = TerminalPair::new(s, t, r);
        if let Some(first) = pair_keys.insert(pair.key(), pairs.len()) {
            return err(lno, format!("same vertex pair as pair {}", first + 1));
        }
        pairs.push(pair);
    }

    if let Some((lno, line)) = it.next() {
        return err(lno, format!("unexpected extra line `{line}`"));
    }

    let rep = Representation::new(kind, &spans)
        .map_err(|e| ParseError { line: hline, reason: e.to_string() })?;
    let inst = Instance::new(rep, pairs)
        .map_err(|e| ParseError { line: hline, reason: e.to_string() })?;
    Ok(NamedInstance { inst, names })
}

/// Writes an instance in the canonical form that [`parse_instance`] accepts.
pub fn emit_instance(named: &NamedInstance) -> String {
    let inst = &named.inst;
    let kind = match inst.kind() {
        Kind::Interval => "interval",
        Kind::Circular => "circular",
    };
    let mut out = format!("idp {kind} n={} k={}\n", inst.n(), inst.k());
    for v in 0..inst.n() {
        let name = &named.names[v];
        debug_assert!(
            !name.is_empty() && !name.contains(char::is_whitespace) && !name.starts_with('#'),
            "vertex names must be plain tokens"
        );
        out.push_str(&format!("v {name} {} {}\n", inst.rep().left(v), inst.rep().right(v)));
    }
    for p in inst.pairs() {
        out.push_str(&format!(
            "p {} {} {}\n",
            named.names[p.s as usize], named.names[p.t as usize], p.r
        ));
    }
    out
}

/// Reads a solution file against the instance it claims to answer.
pub fn parse_solution(text: &str, named: &NamedInstance) -> Result<Outcome, ParseError> {
    let lines = significant(text);
    let eof = text.lines().count() + 1;
    let mut it = lines.into_iter().peekable();
    let by_name = named.name_map();
    let k = named.inst.k();

    let (hline, header) = match it.next() {
        Some(l) => l,
        None => return err(eof, "empty file: expected `yes` or `no step=<step>`"),
    };
    let mut h = header.split_whitespace();
    match h.next() {
        Some("yes") => {
            if let Some(extra) = h.next() {
                return err(hline, format!("unexpected token `{extra}` after `yes`"));
            }
            let mut paths = Vec::new();
            for (lno, line) in it {
                let mut f = line.split_whitespace();
                if f.next() != Some("path") {
                    return err(lno, format!("expected `path <pair> <id>…`, found `{line}`"));
                }
                let idx: usize = parse_field(lno, f.next().unwrap_or(""), "pair number")?;
                if idx < 1 || idx > k {
                    return err(lno, format!("pair number {idx} outside 1..={k}"));
                }
                let mut vertices = Vec::new();
                for tok in f {
                    match by_name.get(tok) {
                        Some(&v) => vertices.push(v),
                        None => {
                            return err(lno, format!("`{tok}` is not a declared vertex id"))
                        }
                    }
                }
                if vertices.len() < 2 {
                    return err(lno, "a path needs at least its two end vertices");
                }
                paths.push(PathRecord { pair: idx - 1, vertices });
            }
            Ok(Outcome::Yes(Solution { paths }))
        }
        Some("no") => {
            let step = keyed(hline, h.next().unwrap_or(""), "step")?;
            let detail = h.next();
            if let Some(extra) = h.next() {
                return err(hline, format!("unexpected token `{extra}` on `no` line"));
            }
            let pair_detail = |detail: Option<&str>| -> Result<usize, ParseError> {
                let tok = detail
                    .ok_or_else(|| ParseError {
                        line: hline,
                        reason: format!("step {step} certificate needs `pair=<number>`"),
                    })?;
                let idx: usize = parse_field(hline, keyed(hline, tok, "pair")?, "pair number")?;
                if idx < 1 || idx > k {
                    return err(hline, format!("pair number {idx} outside 1..={k}"));
                }
                Ok(idx - 1)
            };
            let cert = match step {
                "2" => NoCertificate::Step2 { pair: pair_detail(detail)? },
                "5+" => NoCertificate::Step5Plus { pair: pair_detail(detail)? },
                "10" => NoCertificate::Step10 { pair: pair_detail(detail)? },
                "6" => {
                    let tok = detail.ok_or_else(|| ParseError {
                        line: hline,
                        reason: "step 6 certificate needs `vertex=<id>`".into(),
                    })?;
                    let name = keyed(hline, tok, "vertex")?;
                    match by_name.get(name) {
                        Some(&v) => NoCertificate::Step6 { vertex: v },
                        None => {
                            return err(hline, format!("`{name}` is not a declared vertex id"))
                        }
                    }
                }
                "7" | "10*" => {
                    if let Some(extra) = detail {
                        return err(hline, format!("unexpected token `{extra}` on `no` line"));
                    }
                    if step == "7" {
                        NoCertificate::Step7
                    } else {
                        NoCertificate::Step10Star
                    }
                }
                other => return err(hline, format!("unknown step id `{other}`")),
            };
            if let Some((lno, line)) = it.next() {
                return err(lno, format!("unexpected line `{line}` after a `no` answer"));
            }
            Ok(Outcome::No(cert))
        }
        _ => err(hline, format!("expected `yes` or `no step=<step>`, found `{header}`")),
    }
}

/// Writes an outcome in the canonical form that [`parse_solution`] accepts.
pub fn emit_solution(outcome: &Outcome, named: &NamedInstance) -> String {
    match outcome {
        Outcome::Yes(sol) => {
            let mut out = String::from("yes\n");
            for p in &sol.paths {
                out.push_str(&format!("path {}", p.pair + 1));
                for &v in &p.vertices {
                    out.push(' ');
                    out.push_str(&named.names[v as usize]);
                }
                out.push('\n');
            }
            out
        }
        Outcome::No(cert) => {
            let mut out = format!("no step={}", cert.step_id());
            match *cert {
                NoCertificate::Step2 { pair }
                | NoCertificate::Step5Plus { pair }
                | NoCertificate::Step10 { pair } => {
                    out.push_str(&format!(" pair={}", pair + 1));
                }
                NoCertificate::Step6 { vertex } => {
                    out.push_str(&format!(" vertex={}", named.names[vertex as usize]));
                }
                NoCertificate::Step7 | NoCertificate::Step10Star => {}
            }
            out.push('\n');
            out
        }
    }
}

/// One measured configuration in a benchmark run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub kind: Kind,
    pub n: u64,
    pub m: u64,
    pub k: u64,
    pub reps: u32,
    pub median_ns: u64,
}

/// A full benchmark report: measured records plus the growth exponent
/// fitted over them (absent when fewer than two sizes were measured).
#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub exponent: Option<f64>,
}

const BENCH_HEADER: &str = "# idp-bench v1";

/// Writes a benchmark report in the canonical tab-separated form.
pub fn emit_bench(report: &BenchReport) -> String {
    let mut out = format!("{BENCH_HEADER}\n");
    for r in &report.records {
        let kind = match r.kind {
            Kind::Interval => "interval",
            Kind::Circular => "circular",
        };
        out.push_str(&format!(
            "record\t{kind}\t{}\t{}\t{}\t{}\t{}\n",
            r.n, r.m, r.k, r.reps, r.median_ns
        ));
    }
    if let Some(e) = report.exponent {
        out.push_str(&format!("exponent\t{e:.4}\n"));
    }
    out
}

/// Reads a benchmark report produced by [`emit_bench`].
pub fn parse_bench(text: &str) -> Result<BenchReport, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (hline, header) = match lines.find(|(_, l)| !l.is_empty()) {
        Some(l) => l,
        None => return err(1, format!("empty file: expected `{BENCH_HEADER}`")),
    };
    if header != BENCH_HEADER {
        return err(hline, format!("expected `{BENCH_HEADER}`, found `{header}`"));
    }
    let mut records = Vec::new();
    let mut exponent = None;
    for (lno, line) in lines {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if exponent.is_some() {
            return err(lno, "the exponent line must be last");
        }
        let mut f = line.split_whitespace();
        match f.next() {
            Some("record") => {
                let kind = match f.next() {
                    Some("interval") => Kind::Interval,
                    Some("circular") => Kind::Circular,
                    other => {
                        return err(lno, format!("expected a kind column, found `{other:?}`"))
                    }
                };
                let n = parse_field(lno, f.next().unwrap_or(""), "n column")?;
                let m = parse_field(lno, f.next().unwrap_or(""), "m column")?;
                let k = parse_field(lno, f.next().unwrap_or(""), "k column")?;
                let reps = parse_field(lno, f.next().unwrap_or(""), "reps column")?;
                let median_ns = parse_field(lno, f.next().unwrap_or(""), "median column")?;
                if let Some(extra) = f.next() {
                    return err(lno, format!("unexpected column `{extra}`"));
                }
                records.push(BenchRecord { kind, n, m, k, reps, median_ns });
            }
            Some("exponent") => {
                exponent = Some(parse_field(lno, f.next().unwrap_or(""), "exponent value")?);
                if let Some(extra) = f.next() {
                    return err(lno, format!("unexpected column `{extra}`"));
                }
            }
            _ => return err(lno, format!("expected `record` or `exponent`, found `{line}`")),
        }
    }
    Ok(BenchReport { records, exponent })
}

#[cfg(test)]
mod tests {
    use super::*;

    const THREE_VERTEX: &str = "idp interval n=3 k=1\nv u 1 3\nv a 2 5\nv v 4 6\np u v 1\n";

    #[test]
    fn three_vertex_file_round_trips() {
        let named = parse_instance(THREE_VERTEX).unwrap();
        assert_eq!(named.inst.kind(), Kind::Interval);
        assert_eq!(named.inst.n(), 3);
        assert_eq!(named.names, ["u", "a", "v"]);
        assert_eq!(named.inst.pairs(), &[TerminalPair::new(0, 2, 1)]);
        assert_eq!(emit_instance(&named), THREE_VERTEX);
    }

    #[test]
    fn comments_and_blanks_are_ignored_but_not_re_emitted() {
        let text = "# golden\n\nidp interval n=1 k=0\n\nv only 1 2\n";
        let named = parse_instance(text).unwrap();
        assert_eq!(emit_instance(&named), "idp interval n=1 k=0\nv only 1 2\n");
    }

    #[test]
    fn wrapping_arcs_parse_on_circles_only() {
        let text = "idp circular n=2 k=1\nv a 4 1\nv b 2 3\np a b 1\n";
        let named = parse_instance(text).unwrap();
        assert!(named.inst.rep().wraps(0));
        let bad = "idp interval n=2 k=1\nv a 4 1\nv b 2 3\np a b 1\n";
        assert_eq!(parse_instance(bad).unwrap_err().line, 2);
    }

    #[test]
    fn instance_errors_carry_line_numbers() {
        let cases: &[(&str, usize, &str)] = &[
            ("", 1, "empty"),
            ("idp interval n=2\n", 1, "k="),
            ("idp diagonal n=2 k=0\n", 1, "interval"),
            ("idp interval n=0 k=0\n", 1, "positive"),
            ("idp interval n=1 k=0\nv u 0 2\n", 2, "range"),
            ("idp interval n=1 k=0\nv u 1 9\n", 2, "range"),
            ("idp interval n=2 k=0\nv u 1 3\nv w 3 4\n", 3, "already used"),
            ("idp interval n=2 k=0\nv u 3 1\nv w 2 4\n", 2, "l < r"),
            ("idp circular n=1 k=0\nv u 1 1\n", 2, "differ"),
            ("idp interval n=2 k=0\nv u 1 3\nv u 2 4\n", 3, "twice"),
            ("idp interval n=2 k=1\nv u 1 3\nv w 2 4\np u q 1\n", 4, "declared"),
            ("idp interval n=2 k=1\nv u 1 3\nv w 2 4\np u u 1\n", 4, "distinct"),
            ("idp interval n=2 k=1\nv u 1 3\nv w 2 4\np u w 0\n", 4, "at least 1"),
            ("idp circular n=2 k=1\nv u 1 3\nv w 2 4\np u w 2\n", 4, "requirement 1"),
            (
                "idp interval n=2 k=2\nv u 1 3\nv w 2 4\np u w 1\np w u 1\n",
                5,
                "same vertex pair",
            ),
            ("idp interval n=2 k=0\nv u 1 3\n", 3, "ended early"),
            ("idp interval n=1 k=0\nv u 1 2\nv w 3 4\n", 3, "extra line"),
            ("idp interval n=1 k=0\nv u 1 2 9\n", 2, "unexpected token"),
        ];
        for (text, line, needle) in cases {
            let e = parse_instance(text).unwrap_err();
            assert_eq!(e.line, *line, "wrong line for {text:?}: {e}");
            assert!(e.reason.contains(needle), "wrong reason for {text:?}: {e}");
        }
    }

    #[test]
    fn solutions_round_trip() {
        let named = parse_instance(THREE_VERTEX).unwrap();
        let texts = [
            "yes\npath 1 u a v\n",
            "yes\npath 1 u a v\npath 1 u v\n",
            "no step=2 pair=1\n",
            "no step=5+ pair=1\n",
            "no step=6 vertex=a\n",
            "no step=7\n",
            "no step=10 pair=1\n",
            "no step=10*\n",
        ];
        for text in texts {
            let outcome = parse_solution(text, &named).unwrap();
            assert_eq!(emit_solution(&outcome, &named), text, "round trip of {text:?}");
        }
        let yes = parse_solution("yes\npath 1 u a v\n", &named).unwrap();
        match yes {
            Outcome::Yes(sol) => {
                assert_eq!(sol.paths, vec![PathRecord { pair: 0, vertices: vec![0, 1, 2] }])
            }
            other => panic!("expected yes, got {other:?}"),
        }
    }

    #[test]
    fn solution_errors_carry_line_numbers() {
        let named = parse_instance(THREE_VERTEX).unwrap();
        let cases: &[(&str, usize, &str)] = &[
            ("", 1, "empty"),
            ("maybe\n", 1, "expected `yes` or `no"),
            ("yes\npath 2 u a v\n", 2, "outside"),
            ("yes\npath 1 u q v\n", 2, "declared"),
            ("yes\npath 1 u\n", 2, "at least"),
            ("yes\nroute 1 u a v\n", 2, "expected `path"),
            ("no step=3\n", 1, "unknown step"),
            ("no step=2\n", 1, "pair="),
            ("no step=6 vertex=q\n", 1, "declared"),
            ("no step=7 pair=1\n", 1, "unexpected"),
            ("no step=2 pair=1\npath 1 u a v\n", 2, "after a `no`"),
        ];
        for (text, line, needle) in cases {
            let e = parse_solution(text, &named).unwrap_err();
            assert_eq!(e.line, *line, "wrong line for {text:?}: {e}");
            assert!(e.reason.contains(needle), "wrong reason for {text:?}: {e}");
        }
    }

    #[test]
    fn bench_reports_round_trip() {
        let empty = BenchReport { records: vec![], exponent: None };
        let text = emit_bench(&empty);
        assert_eq!(text, "# idp-bench v1\n");
        assert_eq!(parse_bench(&text).unwrap(), empty);

        let report = BenchReport {
            records: vec![
                BenchRecord {
                    kind: Kind::Interval,
                    n: 100_000,
                    m: 412_345,
                    k: 8,
                    reps: 5,
                    median_ns: 7_654_321,
                },
                BenchRecord {
                    kind: Kind::Circular,
                    n: 200_000,
                    m: 823_456,
                    k: 8,
                    reps: 5,
                    median_ns: 15_000_000,
                },
            ],
            exponent: Some(1.0312),
        };
        let text = emit_bench(&report);
        assert_eq!(parse_bench(&text).unwrap(), report);
        assert_eq!(emit_bench(&parse_bench(&text).unwrap()), text);
    }

    #[test]
    fn bench_parse_errors() {
        assert_eq!(parse_bench("").unwrap_err().line, 1);
        assert_eq!(parse_bench("# idp-bench v2\n").unwrap_err().line, 1);
        let bad = "# idp-bench v1\nrecord\tinterval\t10\t20\t1\t5\n";
        assert!(parse_bench(bad).unwrap_err().reason.contains("median"));
        let tail = "# idp-bench v1\nexponent\t1.0\nrecord\tinterval\t1\t1\t1\t1\t1\n";
        assert!(parse_bench(tail).unwrap_err().reason.contains("last"));
    }
}
