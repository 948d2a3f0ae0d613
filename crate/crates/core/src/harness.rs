//! File formats, seeded experiments with CSV/JSON reports, and the named
//! verification suites.
//!
//! Text formats (UTF-8, LF):
//!
//! * hypergraph: `k n m`, then `m` lines of `k` vertex ids;
//! * coloring: `r m`, then `m` lines with one color each, aligned with the
//!   edge order of the hypergraph file;
//! * partition: `t`, then `t` lines of vertex ids.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{cycle_threshold, mc_threshold, one_core_threshold, ComponentBound, ComponentParams};
use crate::error::{Error, Result};
use crate::generators::{
    blow_up, complete, extremal_component_coloring, extremal_cycle_coloring, k_partite, near_complete,
    random_hypergraph, stream_rng, Deletion, Partition, Seed,
};
use crate::hypergraph::{Color, Coloring, Hypergraph, Vertex};
use crate::loose::{
    assemble_loose_cycle, connect_along_berge_path, dfs_loose_path_or_witness, find_connected_diamond_matching,
    longest_loose_cycle_exact, shortest_berge_path, PathOrWitness,
};
use crate::monochromatic::{
    high_degree_subgraph, mc, mc_r_exact, mc_r_localsearch, one_core_bound_check, SearchBudget, SearchStatus,
};
use crate::regularity::{chernoff_bound, count_deviations, regular_tuple_component, upper_uniformity_check, TupleComponent};
use crate::{Rational, Scalar, VERSION};

// ---------------------------------------------------------------------------
// text formats

struct Lines<'a> {
    origin: &'a str,
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, origin: &'a str) -> Self {
        Self {
            origin,
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.origin.to_string(),
            line,
            message: message.into(),
        }
    }

    /// The next line as `(line number, content)`.
    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((i, l)) => {
                self.last = i + 1;
                Ok((i + 1, l))
            }
            None => Err(self.err(self.last + 1, format!("unexpected end of file, expected {what}"))),
        }
    }

    fn numbers<T: FromStr>(&mut self, what: &str) -> Result<(usize, Vec<T>)> {
        let (line, text) = self.next(what)?;
        let values = text
            .split_ascii_whitespace()
            .map(|tok| {
                tok.parse::<T>()
                    .map_err(|_| self.err(line, format!("`{tok}` is not a valid {what}")))
            })
            .collect::<Result<Vec<T>>>()?;
        Ok((line, values))
    }

    fn header<const N: usize>(&mut self, what: &str) -> Result<[usize; N]> {
        let (line, values) = self.numbers::<usize>(what)?;
        values
            .try_into()
            .map_err(|_| self.err(line, format!("header must be `{what}`")))
    }

    fn finish(mut self) -> Result<()> {
        for (i, l) in self.inner.by_ref() {
            if !l.trim().is_empty() {
                return Err(self.err(i + 1, "unexpected content after the last record"));
            }
        }
        Ok(())
    }
}

pub fn parse_hypergraph(text: &str, origin: &str) -> Result<Hypergraph> {
    let mut lines = Lines::new(text, origin);
    let [k, n, m] = lines.header::<3>("k n m")?;
    if k == 0 {
        return Err(lines.err(1, "uniformity must be at least 1"));
    }
    if n > Vertex::MAX as usize {
        return Err(lines.err(1, "vertex count exceeds the id range"));
    }
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, mut e) = lines.numbers::<Vertex>("vertex id")?;
        if e.len() != k {
            return Err(lines.err(line, format!("edge has {} vertices, expected {k}", e.len())));
        }
        if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
            return Err(lines.err(line, format!("vertex {v} >= n = {n}")));
        }
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(lines.err(line, "edge repeats a vertex"));
        }
        if !seen.insert(e.clone()) {
            return Err(lines.err(line, "duplicate edge"));
        }
        edges.push(e);
    }
    lines.finish()?;
    Hypergraph::new(k, n, edges)
}

/// Canonical text of `h`.
pub fn format_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.k(), h.n(), h.edge_count());
    for e in h.edges() {
        push_joined(&mut out, e);
    }
    out
}

pub fn parse_coloring(text: &str, origin: &str) -> Result<Coloring> {
    let mut lines = Lines::new(text, origin);
    let [r, m] = lines.header::<2>("r m")?;
    if r == 0 || r > Color::MAX as usize {
        return Err(lines.err(1, format!("r = {r} is not a valid color count")));
    }
    let mut colors = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, c) = lines.numbers::<Color>("color")?;
        match c[..] {
            [c] if c >= 1 && c as usize <= r => colors.push(c),
            [c] => return Err(lines.err(line, format!("color {c} outside 1..={r}"))),
            _ => return Err(lines.err(line, "expected exactly one color")),
        }
    }
    lines.finish()?;
    Coloring::new(r as Color, colors)
}

pub fn format_coloring(c: &Coloring) -> String {
    let mut out = format!("{} {}\n", c.r(), c.len());
    for &x in c.colors() {
        let _ = writeln!(out, "{x}");
    }
    out
}

/// Parses a partition of `0..n`; without `n` the parts must cover
/// `0..(total size)`.
pub fn parse_partition(text: &str, origin: &str, n: Option<usize>) -> Result<Partition> {
    let mut lines = Lines::new(text, origin);
    let [t] = lines.header::<1>("t")?;
    let mut parts = Vec::with_capacity(t);
    for _ in 0..t {
        parts.push(lines.numbers::<Vertex>("vertex id")?.1);
    }
    lines.finish()?;
    let n = n.unwrap_or_else(|| parts.iter().map(Vec::len).sum());
    Partition::new(n, parts).map_err(|e| Error::Parse {
        path: origin.to_string(),
        line: 1,
        message: e.to_string(),
    })
}

pub fn format_partition(p: &Partition) -> String {
    let mut out = format!("{}\n", p.len());
    for part in p.parts() {
        push_joined(&mut out, part);
    }
    out
}

fn push_joined(out: &mut String, values: &[Vertex]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_error(path, e))
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    parse_hypergraph(&read_text(path)?, &path.display().to_string())
}

pub fn write_hypergraph(path: &Path, h: &Hypergraph) -> Result<()> {
    write_text(path, &format_hypergraph(h))
}

/// Reads a coloring and checks it against `h`.
pub fn read_coloring(path: &Path, h: &Hypergraph) -> Result<Coloring> {
    let c = parse_coloring(&read_text(path)?, &path.display().to_string())?;
    c.check_for(h)?;
    Ok(c)
}

pub fn write_coloring(path: &Path, c: &Coloring) -> Result<()> {
    write_text(path, &format_coloring(c))
}

pub fn read_partition(path: &Path, n: Option<usize>) -> Result<Partition> {
    parse_partition(&read_text(path)?, &path.display().to_string(), n)
}

pub fn write_partition(path: &Path, p: &Partition) -> Result<()> {
    write_text(path, &format_partition(p))
}

// ---------------------------------------------------------------------------
// experiments

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Largest monochromatic component of `H^(k)(n, p)` under a colorer,
    /// against `(1 - α) n`.
    McRandom,
    /// Exact `mc_r` of `H^(k)(n, p)` against the bound for `K^k_n`, minus `α n`.
    McExact,
    /// `mc` of the extremal `(k+1)`-coloring of `K^k_n`, at most `k n/(k+1)`.
    McExtremal,
    /// Longest monochromatic loose cycle of the extremal 2-coloring, at most
    /// `(2k-2) n/(2k-1)` vertices.
    CycleExtremal,
    /// Largest monochromatic 1-core of a nearly complete hypergraph under a
    /// random r-coloring, against the 1-core threshold.
    OneCore,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::McRandom => "mc-random",
            ExperimentKind::McExact => "mc-exact",
            ExperimentKind::McExtremal => "mc-extremal",
            ExperimentKind::CycleExtremal => "cycle-extremal",
            ExperimentKind::OneCore => "one-core",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            ExperimentKind::McExtremal | ExperimentKind::CycleExtremal => Direction::Upper,
            _ => Direction::Lower,
        }
    }
}

/// Colorings tried against each random hypergraph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Adversary {
    #[default]
    Random,
    LocalSearch,
}

/// A single value or a list of values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> Grid<T> {
    pub fn values(&self) -> Vec<T> {
        match self {
            Grid::One(x) => vec![x.clone()],
            Grid::Many(xs) => xs.clone(),
        }
    }
}

fn default_p() -> Grid<f64> {
    Grid::One(1.0)
}

fn one() -> usize {
    1
}

fn ten() -> usize {
    10
}

fn all_pass() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub k: usize,
    pub n: Grid<usize>,
    #[serde(default)]
    pub r: Option<Color>,
    #[serde(default = "default_p")]
    pub p: Grid<f64>,
    #[serde(default)]
    pub eps: Option<f64>,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    /// Worker split only; results do not depend on it, so it is not written out.
    #[serde(default = "one", skip_serializing)]
    pub shards: usize,
    #[serde(default)]
    pub adversary: Adversary,
    #[serde(default = "ten")]
    pub restarts: usize,
    /// Node budget for the exact searches.
    #[serde(default)]
    pub max_nodes: Option<u64>,
    /// A grid point passes when at least this fraction of its trials pass.
    #[serde(default = "all_pass")]
    pub min_pass_fraction: f64,
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub json: Option<PathBuf>,
    /// Adds wall-clock times to the outputs, which makes them
    /// non-reproducible.
    #[serde(default)]
    pub timings: bool,
}

impl ExperimentConfig {
    /// A config with defaults for everything but the kind and sizes.
    pub fn new(kind: ExperimentKind, k: usize, n: usize) -> Self {
        Self {
            kind,
            k,
            n: Grid::One(n),
            r: None,
            p: default_p(),
            eps: None,
            alpha: 0.0,
            trials: 1,
            seed: 0,
            shards: 1,
            adversary: Adversary::Random,
            restarts: 10,
            max_nodes: None,
            min_pass_fraction: 1.0,
            csv: None,
            json: None,
            timings: false,
        }
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_string(),
            line: e.line(),
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&read_text(path)?, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Number of colors used by the experiment.
    pub fn colors(&self) -> Result<Color> {
        match self.kind {
            ExperimentKind::McExtremal => Ok(self.k as Color + 1),
            ExperimentKind::CycleExtremal => Ok(2),
            _ => self.r.ok_or_else(|| Error::arg(format!("{} needs r", self.kind.name()))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ns = self.n.values();
        let ps = self.p.values();
        if ns.is_empty() || ps.is_empty() {
            return Err(Error::arg("parameter grids must be non-empty"));
        }
        if self.trials == 0 {
            return Err(Error::arg("trials must be at least 1"));
        }
        if self.shards == 0 {
            return Err(Error::arg("shards must be at least 1"));
        }
        if self.k < 2 {
            return Err(Error::arg("k must be at least 2"));
        }
        if let Some(p) = ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::arg(format!("p = {p} outside [0, 1]")));
        }
        if !(0.0..=1.0).contains(&self.min_pass_fraction) {
            return Err(Error::arg("min_pass_fraction must lie in [0, 1]"));
        }
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            return Err(Error::arg("alpha must be non-negative"));
        }
        if self.colors()? == 0 {
            return Err(Error::arg("r must be at least 1"));
        }
        if self.kind == ExperimentKind::OneCore && self.eps.is_none() {
            return Err(Error::arg("one-core needs eps"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// The measured value should reach the threshold.
    Lower,
    /// The measured value should not exceed the threshold.
    Upper,
}

impl Direction {
    pub fn passes(self, measured: usize, threshold: f64) -> bool {
        let m = measured as f64;
        match self {
            Direction::Lower => m >= threshold - 1e-9,
            Direction::Upper => m <= threshold + 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub kind: ExperimentKind,
    pub k: usize,
    pub n: usize,
    pub r: Color,
    pub p: f64,
    pub eps: Option<f64>,
    pub alpha: f64,
    pub trial: usize,
    pub seed: u64,
    pub measured: usize,
    pub threshold: f64,
    pub direction: Direction,
    pub pass: bool,
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<f64>,
}

impl TrialRecord {
    pub fn recomputed_pass(&self) -> bool {
        self.direction.passes(self.measured, self.threshold)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub passes: usize,
    pub pass_fraction: f64,
    /// Nearest-rank quantiles 0, 1/4, 1/2, 3/4, 1 of the measured values.
    pub quantiles: [usize; 5],
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub trials: usize,
    pub passes: usize,
    pub pass_fraction: f64,
    pub groups: Vec<GroupSummary>,
    /// Every group reached `min_pass_fraction`.
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub version: String,
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    pub summary: ExperimentSummary,
}

/// The seed of trial `index`: the first word of stream `index` of the master
/// seed.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    stream_rng(Seed(master), index).next_u64()
}

fn sub_seed(seed: u64, tag: u64) -> Seed {
    Seed(trial_seed(seed, tag))
}

fn random_coloring(m: usize, r: Color, seed: Seed) -> Coloring {
    let mut rng = stream_rng(seed, 0);
    Coloring::new(r, (0..m).map(|_| rng.random_range(1..=r)).collect()).expect("colors in range")
}

/// Threshold of `mc_r(K^k_n)` from the closed forms.
fn complete_bound(k: usize, n: usize, r: Color) -> Result<f64> {
    let params = |r| ComponentParams::<f64> {
        k,
        n: n as u64,
        r: Some(r),
        eps: None,
    };
    let r = r as u64;
    let bound = if r <= 1 {
        return Ok(n as f64);
    } else if k >= 3 && r <= k as u64 {
        ComponentBound::KColorsComplete
    } else if k >= 3 && r == k as u64 + 1 {
        ComponentBound::KPlusOneComplete
    } else {
        ComponentBound::AffineQ
    };
    // fewer than k colors: mc_r ≥ mc_k
    let r = r.max(2);
    Ok(mc_threshold(bound, &params(r))?.value)
}

struct Outcome {
    measured: usize,
    threshold: f64,
    complete: bool,
}

fn run_trial(cfg: &ExperimentConfig, n: usize, p: f64, r: Color, seed: u64) -> Result<Outcome> {
    let k = cfg.k;
    let nf = n as f64;
    Ok(match cfg.kind {
        ExperimentKind::McRandom => {
            let h = random_hypergraph(k, n, p, sub_seed(seed, 0))?;
            let measured = match cfg.adversary {
                Adversary::Random => mc(&h, &random_coloring(h.edge_count(), r, sub_seed(seed, 1)))?.value,
                Adversary::LocalSearch => mc_r_localsearch(&h, r, cfg.restarts, sub_seed(seed, 1))?.value,
            };
            Outcome {
                measured,
                threshold: (1.0 - cfg.alpha) * nf,
                complete: true,
            }
        }
        ExperimentKind::McExact => {
            let h = random_hypergraph(k, n, p, sub_seed(seed, 0))?;
            let budget = SearchBudget {
                max_nodes: cfg.max_nodes,
                time_limit: None,
                shards: cfg.shards,
            };
            let res = mc_r_exact(&h, r, &budget)?;
            Outcome {
                measured: res.value,
                threshold: complete_bound(k, n, r)? - cfg.alpha * nf,
                complete: res.status == SearchStatus::Complete,
            }
        }
        ExperimentKind::McExtremal => {
            let c = extremal_component_coloring(k, n)?;
            Outcome {
                measured: mc(&c.graph, &c.coloring)?.value,
                threshold: k as f64 * nf / (k as f64 + 1.0),
                complete: true,
            }
        }
        ExperimentKind::CycleExtremal => {
            let c = extremal_cycle_coloring(k, n)?;
            let mut measured = 0;
            let mut complete = true;
            for color in 1..=c.coloring.r() {
                let res = longest_loose_cycle_exact(&c.graph, Some((&c.coloring, color)), cfg.max_nodes)?;
                measured = measured.max(res.vertex_count());
                complete &= res.status == SearchStatus::Complete;
            }
            Outcome {
                measured,
                threshold: cycle_threshold(k, n as u64, 0.0)?.value,
                complete,
            }
        }
        ExperimentKind::OneCore => {
            let eps = cfg.eps.expect("validated");
            let h = near_complete(k, n, eps, Deletion::UniformRandom, sub_seed(seed, 0))?;
            let check = one_core_bound_check(&h, &random_coloring(h.edge_count(), r, sub_seed(seed, 1)), eps)?;
            Outcome {
                measured: check.largest,
                threshold: one_core_threshold::<f64>(k, r as usize - k, eps, n as u64)?.value,
                complete: true,
            }
        }
    })
}

fn nearest_rank(sorted: &[usize], q: f64) -> usize {
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

/// Runs every trial of every grid point. Trials run in parallel; the output
/// depends only on the config.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let r = cfg.colors()?;
    let mut jobs = Vec::new();
    for n in cfg.n.values() {
        for p in cfg.p.values() {
            for trial in 0..cfg.trials {
                jobs.push((jobs.len(), n, p, trial));
            }
        }
    }
    let records = jobs
        .into_par_iter()
        .map(|(index, n, p, trial)| {
            let seed = trial_seed(cfg.seed, index as u64);
            let start = Instant::now();
            let out = run_trial(cfg, n, p, r, seed)?;
            let direction = cfg.kind.direction();
            Ok(TrialRecord {
                index,
                kind: cfg.kind,
                k: cfg.k,
                n,
                r,
                p,
                eps: cfg.eps,
                alpha: cfg.alpha,
                trial,
                seed,
                measured: out.measured,
                threshold: out.threshold,
                direction,
                pass: direction.passes(out.measured, out.threshold),
                complete: out.complete,
                wall_ms: cfg.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&records, cfg.trials, cfg.min_pass_fraction);
    Ok(ExperimentReport {
        version: VERSION.to_string(),
        config: cfg.clone(),
        records,
        summary,
    })
}

fn summarize(records: &[TrialRecord], trials: usize, min_fraction: f64) -> ExperimentSummary {
    let groups: Vec<GroupSummary> = records
        .chunks(trials)
        .map(|chunk| {
            let mut values: Vec<usize> = chunk.iter().map(|t| t.measured).collect();
            values.sort_unstable();
            let passes = chunk.iter().filter(|t| t.pass).count();
            let pass_fraction = passes as f64 / chunk.len() as f64;
            GroupSummary {
                n: chunk[0].n,
                p: chunk[0].p,
                trials: chunk.len(),
                passes,
                pass_fraction,
                quantiles: [0.0, 0.25, 0.5, 0.75, 1.0].map(|q| nearest_rank(&values, q)),
                pass: pass_fraction >= min_fraction - 1e-12,
            }
        })
        .collect();
    let passes = records.iter().filter(|t| t.pass).count();
    ExperimentSummary {
        trials: records.len(),
        passes,
        pass_fraction: passes as f64 / records.len().max(1) as f64,
        pass: groups.iter().all(|g| g.pass),
        groups,
    }
}

/// First line of every CSV output.
pub fn csv_header_comment() -> String {
    format!("# hyper-ramsey-lab v{VERSION} schema=1")
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let timings = self.records.iter().any(|t| t.wall_ms.is_some());
        let mut out = csv_header_comment();
        out.push_str("\nindex,kind,k,n,r,p,eps,alpha,trial,seed,measured,threshold,direction,pass,complete");
        out.push_str(if timings { ",wall_ms\n" } else { "\n" });
        for t in &self.records {
            let eps = t.eps.map(|e| e.to_string()).unwrap_or_default();
            let _ = write!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                t.index,
                t.kind.name(),
                t.k,
                t.n,
                t.r,
                t.p,
                eps,
                t.alpha,
                t.trial,
                t.seed,
                t.measured,
                t.threshold,
                if t.direction == Direction::Lower { "lower" } else { "upper" },
                t.pass,
                t.complete
            );
            if timings {
                let _ = write!(out, ",{}", t.wall_ms.unwrap_or(f64::NAN));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes the CSV and JSON outputs named in the config.
    pub fn save(&self) -> Result<()> {
        if let Some(path) = &self.config.csv {
            write_text(path, &self.to_csv())?;
        }
        if let Some(path) = &self.config.json {
            write_text(path, &self.to_json())?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// verification suites

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    ExtremalComponents,
    ObservationCycle,
    LemmaPath,
    TupleComponent,
    HighDegree,
    OneCore,
    Chernoff,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::ExtremalComponents,
        Suite::ObservationCycle,
        Suite::LemmaPath,
        Suite::TupleComponent,
        Suite::HighDegree,
        Suite::OneCore,
        Suite::Chernoff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ExtremalComponents => "thm1.1",
            Suite::ObservationCycle => "observation-cycle",
            Suite::LemmaPath => "lemma-path",
            Suite::TupleComponent => "lemma3.2",
            Suite::HighDegree => "obs6.2",
            Suite::OneCore => "lemma6.3",
            Suite::Chernoff => "chernoff",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::arg(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: impl Into<String>, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let (pass, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        name: name.into(),
        pass,
        detail,
    }
}

/// Runs the checks of one suite at fixed small parameters. Failures,
/// including errors, are recorded in the report.
pub fn verify_suite(suite: Suite) -> SuiteReport {
    let checks = match suite {
        Suite::ExtremalComponents => extremal_components_suite(),
        Suite::ObservationCycle => observation_cycle_suite(),
        Suite::LemmaPath => lemma_path_suite(),
        Suite::TupleComponent => tuple_component_suite(),
        Suite::HighDegree => high_degree_suite(),
        Suite::OneCore => one_core_suite(),
        Suite::Chernoff => chernoff_suite(),
    };
    SuiteReport {
        suite: suite.name().to_string(),
        checks,
    }
}

fn extremal_components_suite() -> Vec<Check> {
    let mut out = vec![check("mc_3(K^3_5) = 5 by exhaustive search", || {
        let h = complete(3, 5)?;
        let res = mc_r_exact(&h, 3, &SearchBudget::default())?;
        let cert = res.coloring.as_ref().ok_or_else(|| Error::internal("no certificate"))?;
        let again = mc(&h, cert)?.value;
        Ok((
            res.value == 5 && res.status == SearchStatus::Complete && again == 5,
            format!("value {}, certificate recomputes to {again}", res.value),
        ))
    })];
    for (k, n) in [(3, 8), (3, 12), (4, 10)] {
        out.push(check(format!("extremal coloring of K^{k}_{n} has mc = kn/(k+1)"), || {
            let c = extremal_component_coloring(k, n)?;
            let value = mc(&c.graph, &c.coloring)?.value;
            Ok((value * (k + 1) == k * n, format!("mc = {value}")))
        }));
    }
    let exact = |bound: ComponentBound, k: usize, n: u64, want: i64| {
        check(format!("threshold {bound} at k = {k}, n = {n} is {want}"), move || {
            let params = ComponentParams::<Rational> { k, n, r: None, eps: None };
            let v = mc_threshold(bound, &params)?.value;
            Ok((v == Rational::from_count(want as u64), format!("{v}")))
        })
    };
    out.push(exact(ComponentBound::KColorsComplete, 3, 5, 5));
    out.push(exact(ComponentBound::KPlusOneComplete, 3, 12, 9));
    out.push(exact(ComponentBound::FiveColorsTriples, 3, 7, 5));
    out
}

fn observation_cycle_suite() -> Vec<Check> {
    vec![
        check("longest monochromatic loose cycle of the extremal coloring, k = 3, n = 10", || {
            let c = extremal_cycle_coloring(3, 10)?;
            let mut best = 0;
            for color in 1..=2 {
                let res = longest_loose_cycle_exact(&c.graph, Some((&c.coloring, color)), None)?;
                if res.status != SearchStatus::Complete {
                    return Ok((false, "search incomplete".into()));
                }
                if let Some(cy) = &res.cycle {
                    cy.validate(&c.graph)?;
                }
                best = best.max(res.vertex_count());
            }
            let threshold = cycle_threshold(3, 10, Rational::from_count(0))?.value;
            Ok((
                best == 8 && threshold == Rational::from_count(8),
                format!("{best} vertices, threshold {threshold}"),
            ))
        }),
        check("red class at k = 3, n = 5 holds a single diamond", || {
            let c = extremal_cycle_coloring(3, 5)?;
            let dm = find_connected_diamond_matching(&c.graph, &c.coloring, 1, None)?;
            let longest = longest_loose_cycle_exact(&c.graph, Some((&c.coloring, 1)), None)?;
            Ok((
                dm.diamonds.len() == 1 && dm.vertex_count() == 4 && longest.vertex_count() == 4,
                format!(
                    "{} diamonds on {} vertices, longest red cycle {}",
                    dm.diamonds.len(),
                    dm.vertex_count(),
                    longest.vertex_count()
                ),
            ))
        }),
    ]
}

/// Part sizes `m/2, m, …, m, m/2`.
pub fn path_part_sizes(k: usize, m: usize) -> Vec<usize> {
    (0..k).map(|i| if i == 0 || i == k - 1 { m / 2 } else { m }).collect()
}

/// True when no edge of `h` meets every set in exactly one vertex, by a scan
/// over all transversal tuples of the sets.
pub fn spans_no_edge(h: &Hypergraph, sets: &[Vec<Vertex>]) -> bool {
    let mut pick = vec![0usize; sets.len()];
    if sets.iter().any(Vec::is_empty) {
        return true;
    }
    loop {
        let tuple: Vec<Vertex> = sets.iter().zip(&pick).map(|(s, &i)| s[i]).collect();
        if h.contains_edge(&tuple) {
            return false;
        }
        let Some(j) = (0..sets.len()).rev().find(|&j| pick[j] + 1 < sets[j].len()) else {
            return true;
        };
        pick[j] += 1;
        pick[j + 1..].iter_mut().for_each(|x| *x = 0);
    }
}

/// Judges one outcome of the path-or-witness search.
fn judge_path_or_witness(h: &Hypergraph, parts: &Partition, m: usize, zeta: f64, res: &PathOrWitness) -> (bool, String) {
    let bound = (1.0 - 4.0 * zeta) * m as f64 - 2.0;
    match res {
        PathOrWitness::Path(p) => {
            let inside = p.vertices.iter().all(|&v| (v as usize) < parts.n());
            let ok = p.validate(h).is_ok() && inside && p.len() as f64 >= bound - 1e-9;
            (ok, format!("path with {} edges, bound {bound:.3}", p.len()))
        }
        PathOrWitness::Witness { sets } => {
            let need = (zeta * m as f64 - 1e-9).ceil() as usize;
            let within = sets.iter().zip(parts.parts()).all(|(s, x)| s.iter().all(|v| x.contains(v)));
            let ok = sets.len() == h.k() && within && sets.iter().all(|s| s.len() >= need) && spans_no_edge(h, sets);
            (ok, format!("witness of size {}", sets.first().map_or(0, Vec::len)))
        }
    }
}

/// A loose chain of `k`-sets on clusters `0..t`, consecutive edges sharing
/// one cluster.
pub fn cluster_chain(k: usize, edges: usize) -> Result<Hypergraph> {
    let t = edges * (k - 1) + 1;
    let list: Vec<Vec<Vertex>> = (0..edges)
        .map(|i| (0..k).map(|j| (i * (k - 1) + j) as Vertex).collect())
        .collect();
    Hypergraph::new(k, t, list)
}

/// Connects the two ends of a cluster chain through blown-up clusters of
/// size `m`, with each pool a shuffled copy of its cluster.
pub fn connector_trial(k: usize, edges: usize, m: usize, seed: Seed) -> Result<(bool, String)> {
    let cl = cluster_chain(k, edges)?;
    let (h, part) = blow_up(&cl, m)?;
    let bp = shortest_berge_path(&cl, 0, (cl.n() - 1) as Vertex)?.ok_or_else(|| Error::internal("chain is connected"))?;
    let mut rng = stream_rng(seed, 0);
    let pools: Vec<Vec<Vertex>> = bp
        .order
        .iter()
        .map(|&x| {
            let mut pool = part.part(x as usize).to_vec();
            pool.shuffle(&mut rng);
            pool
        })
        .collect();
    let path = connect_along_berge_path(&h, &part, &cl, &bp, &pools, 0.01)?;
    path.validate(&h)?;
    let allowed: HashSet<Vertex> = pools.iter().flatten().copied().collect();
    let ok = pools[0].contains(&path.first())
        && pools[pools.len() - 1].contains(&path.last())
        && path.vertices.iter().all(|v| allowed.contains(v));
    Ok((ok, format!("{} edges", path.len())))
}

/// The single-diamond instance: `K^3_5` as cluster graph blown up to
/// clusters of size `m`, packed by the diamond on clusters {0,1,2}, {0,1,3}.
pub fn diamond_instance(m: usize) -> Result<(Hypergraph, Partition, Hypergraph, Vec<Vec<usize>>)> {
    let cl = complete(3, 5)?;
    let (h, part) = blow_up(&cl, m)?;
    let a = cl.edge_index(&[0, 1, 2]).expect("edge of K^3_5");
    let b = cl.edge_index(&[0, 1, 3]).expect("edge of K^3_5");
    Ok((h, part, cl, vec![vec![a, b]]))
}

fn lemma_path_suite() -> Vec<Check> {
    let mut out = Vec::new();
    for (k, m) in [(3, 10), (3, 20), (4, 10)] {
        out.push(check(format!("complete {k}-partite, m = {m}"), move || {
            let (h, parts) = k_partite(k, &path_part_sizes(k, m), 1.0, Seed(0))?;
            let zeta = 2.0 / m as f64;
            let res = dfs_loose_path_or_witness(&h, parts.parts(), zeta)?;
            let (ok, detail) = judge_path_or_witness(&h, &parts, m, zeta, &res);
            Ok((ok && matches!(res, PathOrWitness::Path(_)), detail))
        }));
    }
    out.push(check("density 0.9, k = 3, m = 20, 10 seeds", || {
        let m = 20;
        let zeta = 2.0 / m as f64;
        let mut bad = Vec::new();
        for s in 0..10 {
            let (h, parts) = k_partite(3, &path_part_sizes(3, m), 0.9, Seed(s))?;
            let res = dfs_loose_path_or_witness(&h, parts.parts(), zeta)?;
            if !judge_path_or_witness(&h, &parts, m, zeta, &res).0 {
                bad.push(s);
            }
        }
        Ok((bad.is_empty(), format!("failing seeds {bad:?}")))
    }));
    for edges in [2, 3] {
        out.push(check(format!("connector across {} clusters", 2 * edges + 1), move || {
            let mut bad = Vec::new();
            for s in 0..10 {
                if !connector_trial(3, edges, 12, Seed(s))?.0 {
                    bad.push(s);
                }
            }
            Ok((bad.is_empty(), format!("failing seeds {bad:?}")))
        }));
    }
    out.push(check("assembly on the single-diamond packing", || {
        let (h, part, cl, packing) = diamond_instance(20)?;
        let eps: f64 = 1e-3;
        let res = assemble_loose_cycle(&h, None, &part, &cl, &Coloring::uniform(1, cl.edge_count()), &packing, eps)?;
        res.cycle.validate(&h)?;
        let root = eps.cbrt();
        let floor = 2.0 * ((1.0 - 4.0 * root) * 20.0 - 2.0) - 4.0 * root * 20.0;
        Ok((
            res.cycle.len() as f64 >= floor - 1e-9,
            format!("{} edges, floor {floor:.3}", res.cycle.len()),
        ))
    }));
    out
}

fn tuple_component_suite() -> Vec<Check> {
    let eps = 1.0 / 3.0 - 1e-6;
    let mut out = vec![check("complete 3-partite parts of size 9", move || {
        let (h, parts) = k_partite(3, &[9, 9, 9], 1.0, Seed(0))?;
        match regular_tuple_component(&h, parts.parts(), eps, 1_000_000, Seed(0))? {
            TupleComponent::Component { per_part, .. } => Ok((per_part == [9, 9, 9], format!("{per_part:?}"))),
            TupleComponent::Counterexample { .. } => Ok((false, "counterexample on a complete instance".into())),
        }
    })];
    out.push(check("density 0.95, 5 seeds", move || {
        let need = (1.0 - eps) * 9.0;
        let mut bad = Vec::new();
        for s in 0..5 {
            let (h, parts) = k_partite(3, &[9, 9, 9], 0.95, Seed(s))?;
            let ok = match regular_tuple_component(&h, parts.parts(), eps, 1_000_000, Seed(s))? {
                TupleComponent::Component { per_part, hypothesis, .. } => {
                    hypothesis.exhaustive && per_part.iter().all(|&c| c as f64 >= need)
                }
                TupleComponent::Counterexample { subsets, .. } => spans_no_edge(&h, &subsets),
            };
            if !ok {
                bad.push(s);
            }
        }
        Ok((bad.is_empty(), format!("failing seeds {bad:?}")))
    }));
    out
}

fn high_degree_suite() -> Vec<Check> {
    let (k, n, eps, eta) = (3usize, 12usize, 0.05, 0.5);
    [Deletion::UniformRandom, Deletion::AdversarialStar]
        .into_iter()
        .map(|mode| {
            check(format!("{mode:?} deletion, k = {k}, n = {n}, ε = {eps}, η = {eta}"), move || {
                let mut sizes = Vec::new();
                for s in 0..5 {
                    let h = near_complete(k, n, eps, mode, Seed(s))?;
                    // guarantees are checked inside; an error fails the check
                    sizes.push(high_degree_subgraph(&h, eps, eta)?.induced.vertices.len());
                }
                let floor = (1.0 - eps.powf(1.0 - eta)) * n as f64;
                Ok((sizes.iter().all(|&x| x as f64 >= floor - 1e-9), format!("kept {sizes:?}")))
            })
        })
        .collect()
}

fn one_core_suite() -> Vec<Check> {
    let mut out = Vec::new();
    for (k, ell, n, want) in [(3usize, 1usize, 8u64, 6u64), (2, 2, 8, 4)] {
        out.push(check(format!("threshold k = {k}, ℓ = {ell}, ε = 0, n = {n}"), move || {
            let v = one_core_threshold(k, ell, Rational::from_count(0), n)?.value;
            Ok((v == Rational::from_count(want), format!("{v}")))
        }));
    }
    out.push(check("ε = 256^-3 is rejected", || {
        let eps = Rational::from_count(1) / Rational::from_count(256u64.pow(3));
        let rejected = matches!(one_core_threshold(3, 1, eps, 8), Err(Error::OutOfValidity(_)));
        Ok((rejected, String::new()))
    }));
    out.push(check("extremal coloring of K^3_8", || {
        let c = extremal_component_coloring(3, 8)?;
        let res = one_core_bound_check(&c.graph, &c.coloring, 0.0)?;
        Ok((res.pass, format!("largest {} vs {}", res.largest, res.bound)))
    }));
    for r in [4, 5] {
        out.push(check(format!("20 random {r}-colorings of K^3_8"), move || {
            let h = complete(3, 8)?;
            let mut worst = usize::MAX;
            let mut bound = 0.0;
            for s in 0..20 {
                let res = one_core_bound_check(&h, &random_coloring(h.edge_count(), r, Seed(s)), 0.0)?;
                worst = worst.min(res.largest);
                bound = res.bound;
            }
            Ok((worst as f64 >= bound - 1e-9, format!("smallest largest 1-core {worst} vs {bound}")))
        }));
    }
    out
}

fn chernoff_suite() -> Vec<Check> {
    vec![
        check("Bin(10^4, 0.01), γ = 1/2, 10^4 draws", || {
            let dev = count_deviations(10_000, 10_000, 0.01, 0.5, Seed(0))?;
            let freq = dev as f64 / 1e4;
            let bound = chernoff_bound(100.0, 0.5)?;
            Ok((freq <= bound, format!("frequency {freq} vs bound {bound:.3e}")))
        }),
        check("bound decreases in μ and γ", || {
            let a = chernoff_bound(10.0, 0.5)?;
            let b = chernoff_bound(20.0, 0.5)?;
            let c = chernoff_bound(10.0, 1.0)?;
            Ok((b < a && c < a, format!("{a:.4} {b:.4} {c:.4}")))
        }),
        check("H^(3)(60, 0.3) is (0.2, 0.3, 2)-upper-uniform, 10 seeds", || {
            let mut fails = Vec::new();
            for s in 0..10 {
                let h = random_hypergraph(3, 60, 0.3, Seed(s))?;
                let rep = upper_uniformity_check(&h, 0.2, 0.3, 2.0, 200, Seed(s))?;
                if !rep.pass {
                    fails.push(s);
                }
            }
            Ok((fails.is_empty(), format!("failing seeds {fails:?}")))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergraph_round_trip() {
        let h = complete(3, 5).unwrap();
        let text = format_hypergraph(&h);
        assert!(text.starts_with("3 5 10\n0 1 2\n"));
        let back = parse_hypergraph(&text, "k5").unwrap();
        assert_eq!(back, h);
        assert_eq!(format_hypergraph(&back), text);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_hypergraph("3 5 3\n0 1 2\n0 1 3\n", "t.hg").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = parse_hypergraph("3 5 2\n0 1 2\n0 1 9\n", "t.hg").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_hypergraph("3 5 2\n0 1 2\n2 1 0\n", "t.hg").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_hypergraph("3 5\n", "t.hg").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse_hypergraph("3 5 1\n0 1 2\n0 1 3\n", "t.hg").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_coloring("2 2\n1\n3\n", "t.col").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(err.to_string().starts_with("t.col:3:"));
    }

    #[test]
    fn coloring_and_partition_round_trip() {
        let c = Coloring::new(3, vec![1, 3, 2, 2]).unwrap();
        assert_eq!(parse_coloring(&format_coloring(&c), "c").unwrap(), c);
        let p = Partition::equipartition(7, 3).unwrap();
        let text = format_partition(&p);
        assert_eq!(text, "3\n0 1 2\n3 4\n5 6\n");
        assert_eq!(parse_partition(&text, "p", None).unwrap(), p);
        assert!(parse_partition(&text, "p", Some(8)).is_err());
        assert!(parse_partition("2\n0 1\n", "p", None).is_err());
    }

    #[test]
    fn coloring_must_match_graph() {
        let dir = std::env::temp_dir().join(format!("hrl-harness-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.txt");
        write_coloring(&path, &Coloring::uniform(2, 3)).unwrap();
        let h = complete(3, 5).unwrap();
        assert!(matches!(read_coloring(&path, &h), Err(Error::InvalidArgument(_))));
        let missing = read_hypergraph(&dir.join("missing.txt")).unwrap_err();
        assert!(matches!(missing, Error::Io { .. }));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn config_round_trip() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::McRandom, 3, 60);
        cfg.p = Grid::Many(vec![0.3, 0.1 + 0.2]);
        cfg.r = Some(3);
        cfg.eps = Some(1e-7);
        cfg.csv = Some("out.csv".into());
        let back = ExperimentConfig::from_json(&cfg.to_json(), "cfg").unwrap();
        assert_eq!(back, cfg);
        let minimal = ExperimentConfig::from_json(r#"{"kind": "mc-extremal", "k": 3, "n": [8, 12]}"#, "x").unwrap();
        assert_eq!(minimal.n.values(), vec![8, 12]);
        assert_eq!(minimal.trials, 1);
        assert!(ExperimentConfig::from_json(r#"{"kind": "mc-random", "k": 3, "n": []}"#, "x").is_err());
        assert!(ExperimentConfig::from_json(r#"{"kind": "mc-random", "k": 3, "n": 5, "trials": 0}"#, "x").is_err());
        let err = ExperimentConfig::from_json("{\n\"kind\": 1}", "bad.json").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn trivial_random_experiment() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::McRandom, 3, 9);
        cfg.r = Some(1);
        let rep = run_experiment(&cfg).unwrap();
        assert_eq!(rep.records.len(), 1);
        assert_eq!(rep.records[0].measured, 9);
        assert!(rep.summary.pass);
    }

    #[test]
    fn extremal_experiments() {
        let cfg = ExperimentConfig::new(ExperimentKind::CycleExtremal, 3, 10);
        let rep = run_experiment(&cfg).unwrap();
        let t = &rep.records[0];
        assert_eq!((t.measured, t.threshold, t.pass), (8, 8.0, true));
        let mut cfg = ExperimentConfig::new(ExperimentKind::McExtremal, 3, 8);
        cfg.n = Grid::Many(vec![8, 12]);
        let rep = run_experiment(&cfg).unwrap();
        assert_eq!(rep.records.iter().map(|t| t.measured).collect::<Vec<_>>(), vec![6, 9]);
        assert!(rep.records.iter().all(|t| t.pass && t.recomputed_pass()));
    }

    #[test]
    fn csv_is_reproducible() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::McExact, 3, 5);
        cfg.r = Some(2);
        cfg.p = Grid::Many(vec![0.5, 1.0]);
        cfg.trials = 3;
        cfg.seed = 7;
        let a = run_experiment(&cfg).unwrap().to_csv();
        cfg.shards = 8;
        let b = run_experiment(&cfg).unwrap().to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with(&format!("# hyper-ramsey-lab v{VERSION} schema=1\nindex,")));
        assert_eq!(a.lines().count(), 2 + 6);
        let rep = run_experiment(&cfg).unwrap();
        assert_eq!(rep.summary.groups.len(), 2);
        assert!(rep.records.iter().all(|t| t.pass == t.recomputed_pass()));
    }

    #[test]
    fn quantiles_use_nearest_rank() {
        let v = [1, 2, 3, 4];
        assert_eq!([0.0, 0.25, 0.5, 0.75, 1.0].map(|q| nearest_rank(&v, q)), [1, 1, 2, 3, 4]);
    }

    #[test]
    fn complete_bounds() {
        assert_eq!(complete_bound(3, 12, 4).unwrap(), 9.0);
        assert_eq!(complete_bound(3, 12, 3).unwrap(), 12.0);
        assert_eq!(complete_bound(3, 12, 2).unwrap(), 12.0);
        assert_eq!(complete_bound(2, 12, 3).unwrap(), 6.0);
        assert_eq!(complete_bound(3, 14, 7).unwrap(), 7.0);
    }

    #[test]
    fn witness_scan() {
        let h = Hypergraph::new(3, 6, [[0, 2, 4]]).unwrap();
        assert!(!spans_no_edge(&h, &[vec![0, 1], vec![2, 3], vec![4, 5]]));
        assert!(spans_no_edge(&h, &[vec![1], vec![2, 3], vec![4, 5]]));
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("thm9".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_suites_pass() {
        for s in [Suite::ExtremalComponents, Suite::HighDegree, Suite::OneCore, Suite::TupleComponent] {
            let rep = verify_suite(s);
            assert!(rep.pass(), "{rep:#?}");
        }
    }
}
