//! The `prtree` command line: `gen`, `query`, `verify` and `bench`.
//!
//! Exit codes are 0 on success, 1 when verification finds a mismatch and 2
//! for usage, parse and I/O errors. `query` and `verify` print one JSON
//! object per line; `bench` writes CSV.
//!
//! Batch query lines, also used for reproduction lines printed by `verify`:
//!
//! ```text
//! threshold3 x1 x2 y w
//! topk3      x1 x2 y k
//! max3       x1 x2 y
//! threshold4 a b c d w
//! topk4      a b c d k
//! ```

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gen::{Distribution, GeneratorSpec, QuerySampler};
use crate::oracle::{oracle_max_rank, oracle_threshold, oracle_topk, PointArray, SuffixPstBaseline};
use crate::pointfile::{read_points, write_points};
use crate::prt::PriorityRangeTree;
use crate::prt4::FourSidedIndex;
use crate::types::{FourSidedRange, QueryCounters, ThreeSidedRange, TotalWeight, WeightedPoint};
use crate::wbpst::WbPst;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "prtree", version, about = "Prioritized orthogonal range reporting")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded synthetic point file.
    Gen {
        #[arg(long)]
        n: usize,
        /// uniform, exp-freq, zipf or zipf:S
        #[arg(long, default_value = "uniform")]
        dist: Distribution,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_span, default_value = "0,1", allow_hyphen_values = true)]
        x_range: (f64, f64),
        #[arg(long, value_parser = parse_span, default_value = "0,1", allow_hyphen_values = true)]
        y_range: (f64, f64),
        /// Largest weight for uniform and zipf; defaults to n.
        #[arg(long)]
        max_weight: Option<u64>,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the index over a point file and run queries.
    Query {
        points: PathBuf,
        /// threshold3, topk3, max3, threshold4 or topk4
        mode: Option<Mode>,
        /// Numeric parameters for MODE, as in a batch line.
        #[arg(allow_negative_numbers = true)]
        params: Vec<f64>,
        /// File of batch query lines.
        #[arg(long, conflicts_with_all = ["mode", "params"])]
        batch: Option<PathBuf>,
    },
    /// Cross-check random queries and structural invariants against the oracles.
    Verify {
        points: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true, default_value = "none")]
        inject_fault: Fault,
    },
    /// Space and query-cost series across doublings of n.
    Bench {
        #[arg(long, default_value = "zipf")]
        dist: Distribution,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', default_value = "1024,2048,4096,8192,16384")]
        sizes: Vec<usize>,
        /// Comma-separated subset of prt, baseline.
        #[arg(long, value_delimiter = ',', default_value = "prt,baseline")]
        structures: Vec<Structure>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Threshold queries per row.
        #[arg(long, default_value_t = 200)]
        queries: usize,
        /// CSV path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_span(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected LO,HI")?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    Ok((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Threshold3,
    Topk3,
    Max3,
    Threshold4,
    Topk4,
}

impl Mode {
    fn arity(self) -> usize {
        match self {
            Mode::Max3 => 3,
            Mode::Threshold3 | Mode::Topk3 => 4,
            Mode::Threshold4 | Mode::Topk4 => 5,
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "threshold3" => Mode::Threshold3,
            "topk3" => Mode::Topk3,
            "max3" => Mode::Max3,
            "threshold4" => Mode::Threshold4,
            "topk4" => Mode::Topk4,
            _ => return Err(Error::InvalidRange(format!("unknown query mode {s:?}"))),
        })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Threshold3 => "threshold3",
            Mode::Topk3 => "topk3",
            Mode::Max3 => "max3",
            Mode::Threshold4 => "threshold4",
            Mode::Topk4 => "topk4",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    Prt,
    Baseline,
}

impl FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prt" => Ok(Structure::Prt),
            "baseline" => Ok(Structure::Baseline),
            _ => Err(Error::InvalidRange(format!("unknown structure {s:?}"))),
        }
    }
}

/// Deliberate breakage for checking that `verify` notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    None,
    /// Leaves the heaviest point out of every index.
    DropHeaviest,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Fault::None),
            "drop-heaviest" => Ok(Fault::DropHeaviest),
            _ => Err(Error::InvalidRange(format!("unknown fault {s:?}"))),
        }
    }
}

/// One parsed query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Query {
    Threshold3(ThreeSidedRange, u64),
    TopK3(ThreeSidedRange, usize),
    Max3(ThreeSidedRange),
    Threshold4(FourSidedRange, u64),
    TopK4(FourSidedRange, usize),
}

fn positive_int(v: f64, what: &str) -> Result<u64> {
    if v.fract() != 0.0 || !(1.0..=u64::MAX as f64).contains(&v) {
        return Err(Error::InvalidRange(format!("{what} must be a positive integer, got {v}")));
    }
    Ok(v as u64)
}

impl Query {
    pub fn from_parts(mode: Mode, p: &[f64]) -> Result<Self> {
        if p.len() != mode.arity() {
            return Err(Error::InvalidRange(format!("{mode} takes {} numbers, got {}", mode.arity(), p.len())));
        }
        Ok(match mode {
            Mode::Threshold3 => Query::Threshold3(ThreeSidedRange::new(p[0], p[1], p[2])?, positive_int(p[3], "w")?),
            Mode::Topk3 => Query::TopK3(ThreeSidedRange::new(p[0], p[1], p[2])?, positive_int(p[3], "k")? as usize),
            Mode::Max3 => Query::Max3(ThreeSidedRange::new(p[0], p[1], p[2])?),
            Mode::Threshold4 => {
                Query::Threshold4(FourSidedRange::new(p[0], p[1], p[2], p[3])?, positive_int(p[4], "w")?)
            }
            Mode::Topk4 => {
                Query::TopK4(FourSidedRange::new(p[0], p[1], p[2], p[3])?, positive_int(p[4], "k")? as usize)
            }
        })
    }

    pub fn mode(&self) -> Mode {
        match self {
            Query::Threshold3(..) => Mode::Threshold3,
            Query::TopK3(..) => Mode::Topk3,
            Query::Max3(..) => Mode::Max3,
            Query::Threshold4(..) => Mode::Threshold4,
            Query::TopK4(..) => Mode::Topk4,
        }
    }
}

/// Batch-line form; parses back to the same query.
impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Threshold3(r, w) => write!(f, "threshold3 {} {} {} {w}", r.x1, r.x2, r.y),
            Query::TopK3(r, k) => write!(f, "topk3 {} {} {} {k}", r.x1, r.x2, r.y),
            Query::Max3(r) => write!(f, "max3 {} {} {}", r.x1, r.x2, r.y),
            Query::Threshold4(r, w) => write!(f, "threshold4 {} {} {} {} {w}", r.a, r.b, r.c, r.d),
            Query::TopK4(r, k) => write!(f, "topk4 {} {} {} {} {k}", r.a, r.b, r.c, r.d),
        }
    }
}

impl FromStr for Query {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let mut it = line.split_whitespace();
        let mode: Mode = it.next().ok_or_else(|| Error::InvalidRange("empty query".into()))?.parse()?;
        let params = it
            .map(|t| t.parse::<f64>().map_err(|_| Error::InvalidRange(format!("bad number {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Query::from_parts(mode, &params)
    }
}

pub fn parse_batch(text: &str) -> Result<Vec<Query>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| l.parse().map_err(|e: Error| Error::Parse { line: i + 1, msg: e.to_string() }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointRecord {
    pub id: u64,
    pub x: f64,
    pub y: f64,
    pub w: u64,
    pub rank: u32,
}

impl From<&WeightedPoint> for PointRecord {
    fn from(p: &WeightedPoint) -> Self {
        PointRecord { id: p.id, x: p.x, y: p.y, w: p.w, rank: p.rank().get() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryResultRecord {
    pub query: String,
    pub mode: Mode,
    /// Ascending ids for threshold queries, reported order for top-k.
    pub results: Vec<PointRecord>,
    pub counters: QueryCounters,
    pub wall_micros: u64,
}

/// Both indexes over one point set.
#[derive(Debug, Clone)]
pub struct Indexes {
    pub three: PriorityRangeTree,
    pub four: FourSidedIndex,
}

impl Indexes {
    pub fn build(points: &[WeightedPoint]) -> Result<Self> {
        Ok(Indexes { three: PriorityRangeTree::build(points)?, four: FourSidedIndex::build(points)? })
    }

    pub fn run(&self, q: &Query) -> Result<(Vec<WeightedPoint>, QueryCounters)> {
        Ok(match *q {
            Query::Threshold3(r, w) => {
                let (mut v, c) = self.three.threshold_query_with_counters(&r, w)?;
                v.sort_by_key(|p| p.id);
                (v, c)
            }
            Query::TopK3(r, k) => self.three.top_k_with_counters(&r, k)?,
            Query::Max3(r) => {
                let (p, c) = self.three.max_report_with_counters(&r);
                (p.into_iter().collect(), c)
            }
            Query::Threshold4(r, w) => {
                let (mut v, c) = self.four.threshold_query_with_counters(&r, w)?;
                v.sort_by_key(|p| p.id);
                (v, c)
            }
            Query::TopK4(r, k) => self.four.top_k_with_counters(&r, k)?,
        })
    }
}

pub fn cmd_gen(spec: &GeneratorSpec, out: Option<&Path>) -> Result<Vec<WeightedPoint>> {
    let points = spec.generate()?;
    match out {
        Some(path) => write_points(BufWriter::new(File::create(path)?), &points)?,
        None => write_points(std::io::stdout().lock(), &points)?,
    }
    Ok(points)
}

pub fn cmd_query(points: &[WeightedPoint], queries: &[Query]) -> Result<Vec<QueryResultRecord>> {
    let idx = Indexes::build(points)?;
    queries
        .iter()
        .map(|q| {
            let start = Instant::now();
            let (hits, counters) = idx.run(q)?;
            Ok(QueryResultRecord {
                query: q.to_string(),
                mode: q.mode(),
                results: hits.iter().map(PointRecord::from).collect(),
                counters,
                wall_micros: start.elapsed().as_micros() as u64,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    /// Batch line reproducing the failure.
    pub reproduction: String,
    pub expected: Vec<u64>,
    pub got: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub points: usize,
    pub trials: usize,
    pub seed: u64,
    pub checks: usize,
    pub structural_errors: Vec<String>,
    pub duplicate_reports: usize,
    /// First mismatch found, if any.
    pub counterexample: Option<Mismatch>,
    pub mismatches: usize,
    pub pass: bool,
}

fn ids(v: &[WeightedPoint]) -> Vec<u64> {
    v.iter().map(|p| p.id).collect()
}

fn sorted_ids(v: &[WeightedPoint]) -> Vec<u64> {
    let mut ids = ids(v);
    ids.sort_unstable();
    ids
}

fn ranks(v: &[WeightedPoint]) -> Vec<u32> {
    v.iter().map(|p| p.rank().get()).collect()
}

fn has_duplicates(v: &[WeightedPoint]) -> bool {
    let mut ids = ids(v);
    ids.sort_unstable();
    ids.windows(2).any(|w| w[0] == w[1])
}

/// Checks the structures over `points` and `trials` rounds of random
/// queries of every kind against the oracles.
pub fn cmd_verify(points: &[WeightedPoint], trials: usize, seed: u64, fault: Fault) -> Result<VerifyReport> {
    if trials == 0 {
        return Err(Error::InvalidRange("trials must be at least 1".into()));
    }
    let oracle = PointArray::new(points.to_vec())?;
    let mut indexed = points.to_vec();
    if fault == Fault::DropHeaviest && !indexed.is_empty() {
        let top = (0..indexed.len()).max_by_key(|&i| (indexed[i].w, std::cmp::Reverse(indexed[i].id))).unwrap();
        indexed.remove(top);
    }
    let idx = Indexes::build(&indexed)?;
    let mut structural_errors = Vec::new();
    let wb = WbPst::build(&indexed)?;
    for (name, check) in [
        ("weight-balanced tree", wb.check_invariants()),
        ("priority range tree", idx.three.check_invariants()),
        ("four-sided index", idx.four.check_invariants()),
    ] {
        if let Err(e) = check {
            structural_errors.push(format!("{name}: {e}"));
        }
    }

    let sampler = QuerySampler::new(points);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport {
        points: points.len(),
        trials,
        seed,
        checks: 0,
        structural_errors,
        duplicate_reports: 0,
        counterexample: None,
        mismatches: 0,
        pass: false,
    };
    for _ in 0..trials {
        let r3 = sampler.three_sided(&mut rng);
        let r4 = sampler.four_sided(&mut rng);
        let queries = [
            Query::Threshold3(r3, sampler.weight(&mut rng)),
            Query::TopK3(r3, sampler.k(&mut rng)),
            Query::Max3(r3),
            Query::Threshold4(r4, sampler.weight(&mut rng)),
            Query::TopK4(r4, sampler.k(&mut rng)),
        ];
        for q in queries {
            report.checks += 1;
            let (got, _) = idx.run(&q)?;
            if has_duplicates(&got) {
                report.duplicate_reports += 1;
            }
            let (ok, expected) = match q {
                Query::Threshold3(r, w) => {
                    let want = oracle_threshold(&oracle, &r, w)?;
                    (sorted_ids(&got) == sorted_ids(&want), sorted_ids(&want))
                }
                Query::TopK3(r, k) => {
                    let want = oracle_topk(&oracle, &r, k)?;
                    let inside = got.iter().all(|p| r.contains(p));
                    (inside && ranks(&got) == ranks(&want), ids(&want))
                }
                Query::Max3(r) => {
                    let want = oracle_max_rank(&oracle, &r);
                    let inside = got.iter().all(|p| r.contains(p));
                    let want_pts = oracle_topk(&oracle, &r, 1)?;
                    (inside && got.first().map(|p| p.rank().get()) == want, ids(&want_pts))
                }
                Query::Threshold4(r, w) => {
                    let want = oracle_threshold(&oracle, &r, w)?;
                    (sorted_ids(&got) == sorted_ids(&want), sorted_ids(&want))
                }
                Query::TopK4(r, k) => {
                    let want = oracle_topk(&oracle, &r, k)?;
                    let inside = got.iter().all(|p| r.contains(p));
                    (inside && ranks(&got) == ranks(&want), ids(&want))
                }
            };
            if !ok {
                report.mismatches += 1;
                if report.counterexample.is_none() {
                    report.counterexample = Some(Mismatch { reproduction: q.to_string(), expected, got: ids(&got) });
                }
            }
        }
    }
    report.pass = report.mismatches == 0 && report.duplicate_reports == 0 && report.structural_errors.is_empty();
    Ok(report)
}

type BenchRunner = Box<dyn Fn(&ThreeSidedRange, u64) -> Result<(usize, QueryCounters)>>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub structure: &'static str,
    pub n: usize,
    pub distribution: String,
    pub seed: u64,
    pub build_ms: f64,
    pub space_nodes: usize,
    pub space_per_point: f64,
    pub queries: usize,
    /// Mean `log₂(W / w)` over the query weights.
    pub mean_log_w_ratio: f64,
    pub mean_reported: f64,
    pub tree_nodes_visited: f64,
    pub catalog_entries_scanned: f64,
    pub heap_nodes_visited: f64,
    pub wall_micros: f64,
}

/// One row per `(n, structure)`: build time, space census and mean
/// threshold-query cost.
pub fn cmd_bench(
    dist: Distribution,
    sizes: &[usize],
    structures: &[Structure],
    seed: u64,
    queries: usize,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in sizes {
        let points = GeneratorSpec::new(n, dist, seed).generate()?;
        let total = TotalWeight::of(&points);
        let sampler = QuerySampler::new(&points);
        for &structure in structures {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
            let start = Instant::now();
            let (name, space, runner): (&'static str, usize, BenchRunner) =
                match structure {
                    Structure::Prt => {
                        let t = PriorityRangeTree::build(&points)?;
                        let space = t.space().total();
                        (
                            "prt",
                            space,
                            Box::new(move |r, w| t.threshold_query_with_counters(r, w).map(|(v, c)| (v.len(), c))),
                        )
                    }
                    Structure::Baseline => {
                        let b = SuffixPstBaseline::build(&points)?;
                        let space = b.space_nodes();
                        (
                            "baseline",
                            space,
                            Box::new(move |r, w| b.baseline_threshold_with_counters(r, w).map(|(v, c)| (v.len(), c))),
                        )
                    }
                };
            let build_ms = start.elapsed().as_secs_f64() * 1e3;
            let mut sum = QueryCounters::default();
            let (mut reported, mut log_ratio) = (0usize, 0.0);
            let start = Instant::now();
            for _ in 0..queries {
                let r = sampler.three_sided(&mut rng);
                let w = sampler.weight(&mut rng);
                let (k, c) = runner(&r, w)?;
                reported += k;
                log_ratio += total.log2() - (w as f64).log2();
                sum += c;
            }
            let q = queries.max(1) as f64;
            rows.push(BenchRow {
                structure: name,
                n,
                distribution: dist.to_string(),
                seed,
                build_ms,
                space_nodes: space,
                space_per_point: space as f64 / n.max(1) as f64,
                queries,
                mean_log_w_ratio: log_ratio / q,
                mean_reported: reported as f64 / q,
                tree_nodes_visited: sum.tree_nodes_visited as f64 / q,
                catalog_entries_scanned: sum.catalog_entries_scanned as f64 / q,
                heap_nodes_visited: sum.heap_nodes_visited as f64 / q,
                wall_micros: start.elapsed().as_secs_f64() * 1e6 / q,
            });
        }
    }
    Ok(rows)
}

pub fn write_bench_csv<W: Write>(out: W, rows: &[BenchRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Gen { n, dist, seed, x_range, y_range, max_weight, out: path } => {
            let spec = GeneratorSpec { n, distribution: dist, seed, x_range, y_range, max_weight };
            let points = spec.generate()?;
            match path {
                Some(p) => write_points(BufWriter::new(File::create(p)?), &points)?,
                None => write_points(&mut *out, &points)?,
            }
        }
        Command::Query { points, mode, params, batch } => {
            let pts = read_points(&points)?;
            let queries = match (batch, mode) {
                (Some(b), _) => parse_batch(&std::fs::read_to_string(b)?)?,
                (None, Some(m)) => vec![Query::from_parts(m, &params)?],
                (None, None) => return Err(Error::InvalidRange("give a MODE with parameters or --batch".into())),
            };
            for rec in cmd_query(&pts, &queries)? {
                writeln!(out, "{}", serde_json::to_string(&rec).expect("records serialize"))?;
            }
        }
        Command::Verify { points, trials, seed, inject_fault } => {
            let pts = read_points(&points)?;
            let report = cmd_verify(&pts, trials, seed, inject_fault)?;
            writeln!(out, "{}", serde_json::to_string(&report).expect("reports serialize"))?;
            if !report.pass {
                if let Some(m) = &report.counterexample {
                    eprintln!("mismatch; reproduce with: prtree query {} --batch <file containing: {}>", points.display(), m.reproduction);
                }
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::Bench { dist, sizes, structures, seed, queries, out: path } => {
            let rows = cmd_bench(dist, &sizes, &structures, seed, queries)?;
            match path {
                Some(p) => write_bench_csv(BufWriter::new(File::create(p)?), &rows)?,
                None => write_bench_csv(&mut *out, &rows)?,
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Errors go to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_lines_round_trip() {
        for line in ["threshold3 2 6 3 4", "topk3 -1.5 6 0 2", "max3 5 5 1", "threshold4 1 6 -1000000000 1000000000 1", "topk4 1 6 0 9 2"] {
            let q: Query = line.parse().unwrap();
            assert_eq!(q.to_string(), line);
        }
    }

    #[test]
    fn rejects_bad_queries() {
        assert!("threshold3 2 6 3 0".parse::<Query>().is_err());
        assert!("topk3 2 6 3 0".parse::<Query>().is_err());
        assert!("topk3 2 6 3 1.5".parse::<Query>().is_err());
        assert!("threshold3 6 2 3 4".parse::<Query>().is_err());
        assert!("max3 1 2".parse::<Query>().is_err());
        assert!("circle 1 2 3".parse::<Query>().is_err());
        assert!(matches!(parse_batch("max3 1 2 3\nmax3 x 2 3\n"), Err(Error::Parse { line: 2, .. })));
    }
}
