//! Largest monochromatic components: `mc(H, χ)`, exact `mc_r(H)` by
//! branch-and-bound, a local-search upper bound, the high-degree subgraph of
//! a nearly complete hypergraph, and the monochromatic 1-core check.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::one_core_threshold;
use crate::dsu::RollbackSet;
use crate::error::{Error, Result};
use crate::generators::{stream_rng, Seed};
use crate::hypergraph::{components, Color, Coloring, Hypergraph, Induced, Vertex};
use crate::scalar::binomial;

/// Whether a search finished.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "state", rename_all = "lowercase")]
pub enum SearchStatus {
    Complete,
    /// The optimum lies in `lower..=upper`.
    Incomplete { lower: usize, upper: usize },
}

/// Largest monochromatic component of a coloring, or the best coloring found
/// by a search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McResult {
    pub value: usize,
    pub witness_color: Color,
    pub witness_component: Vec<Vertex>,
    pub status: SearchStatus,
    /// The coloring attaining `value` (searches only).
    #[serde(skip)]
    pub coloring: Option<Coloring>,
}

/// Order of the largest monochromatic component. Ties go to the smallest
/// color; an edgeless hypergraph has value 1 (a single vertex) when `n ≥ 1`.
pub fn mc(h: &Hypergraph, coloring: &Coloring) -> Result<McResult> {
    coloring.check_for(h)?;
    let mut best: Option<(usize, Color, Vec<Vertex>)> = None;
    for c in 1..=coloring.r() {
        let dec = components(h, coloring, c)?;
        if let Some(comp) = dec.largest() {
            if best.as_ref().is_none_or(|b| comp.len() > b.0) {
                best = Some((comp.len(), c, comp.clone()));
            }
        }
    }
    let (value, witness_color, witness_component) = match best {
        Some(b) => b,
        None if h.n() > 0 => (1, 1, vec![0]),
        None => (0, 1, Vec::new()),
    };
    Ok(McResult {
        value,
        witness_color,
        witness_component,
        status: SearchStatus::Complete,
        coloring: None,
    })
}

/// Limits for [`mc_r_exact`].
#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Number of independent prefix tasks the tree is split into.
    pub shards: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: None,
            time_limit: None,
            shards: 1,
        }
    }
}

struct Shared {
    incumbent: AtomicUsize,
    nodes: AtomicU64,
    stop: AtomicBool,
    max_nodes: u64,
    deadline: Option<Instant>,
    /// Stop as soon as a leaf of at most this value is found.
    stop_at: Option<usize>,
}

struct Worker<'a> {
    h: &'a Hypergraph,
    order: &'a [usize],
    r: Color,
    sets: Vec<RollbackSet>,
    colors: Vec<Color>,
    shared: &'a Shared,
    best: Option<(usize, Vec<Color>)>,
    /// Smallest partial value among subtrees left unexplored by an abort.
    abandoned: usize,
    local_nodes: u64,
}

impl<'a> Worker<'a> {
    fn new(h: &'a Hypergraph, order: &'a [usize], r: Color, shared: &'a Shared) -> Self {
        Self {
            h,
            order,
            r,
            sets: (0..r).map(|_| RollbackSet::new(h.n())).collect(),
            colors: vec![0; order.len()],
            shared,
            best: None,
            abandoned: usize::MAX,
            local_nodes: 0,
        }
    }

    /// Adds the edge at `pos` to color `c`; returns the checkpoint and the
    /// order of the resulting component.
    fn apply(&mut self, pos: usize, c: Color) -> (usize, usize) {
        let e = self.h.edge(self.order[pos]);
        let set = &mut self.sets[c as usize - 1];
        let cp = set.checkpoint();
        let mut size = 1;
        for &v in &e[1..] {
            size = set.union(e[0], v) as usize;
        }
        (cp, size)
    }

    fn undo(&mut self, c: Color, cp: usize) {
        self.sets[c as usize - 1].rollback(cp);
    }

    fn out_of_budget(&mut self) -> bool {
        if self.shared.stop.load(Ordering::Relaxed) {
            return true;
        }
        self.local_nodes += 1;
        let over_nodes = self.shared.nodes.fetch_add(1, Ordering::Relaxed) >= self.shared.max_nodes;
        let over_time = self.local_nodes.is_multiple_of(1024) && self.shared.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.shared.stop.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn dfs(&mut self, pos: usize, used: Color, partial: usize) {
        if partial >= self.shared.incumbent.load(Ordering::Relaxed) {
            return;
        }
        if self.out_of_budget() {
            self.abandoned = self.abandoned.min(partial);
            return;
        }
        if pos == self.order.len() {
            self.shared.incumbent.fetch_min(partial, Ordering::Relaxed);
            if self.best.as_ref().is_none_or(|b| partial < b.0) {
                self.best = Some((partial, self.colors.clone()));
            }
            if self.shared.stop_at.is_some_and(|t| partial <= t) {
                self.shared.stop.store(true, Ordering::Relaxed);
            }
            return;
        }
        // colors beyond the first unused one are symmetric to it
        let mut children: Vec<(usize, Color)> = (1..=self.r.min(used + 1))
            .map(|c| {
                let (cp, size) = self.apply(pos, c);
                self.undo(c, cp);
                (partial.max(size), c)
            })
            .collect();
        children.sort_unstable();
        for (next, c) in children {
            if next >= self.shared.incumbent.load(Ordering::Relaxed) {
                break;
            }
            let (cp, _) = self.apply(pos, c);
            self.colors[pos] = c;
            self.dfs(pos + 1, used.max(c), next);
            self.undo(c, cp);
        }
    }

    fn run_prefix(&mut self, prefix: &[Color]) {
        let mut partial = usize::from(self.h.n() > 0);
        let mut used = 0;
        let mut checkpoints = Vec::with_capacity(prefix.len());
        for (pos, &c) in prefix.iter().enumerate() {
            let (cp, size) = self.apply(pos, c);
            checkpoints.push((c, cp));
            self.colors[pos] = c;
            partial = partial.max(size);
            used = used.max(c);
        }
        self.dfs(prefix.len(), used, partial);
        for (c, cp) in checkpoints.into_iter().rev() {
            self.undo(c, cp);
        }
    }
}

/// Edge order for branching: repeatedly the edge sharing the most vertices
/// with the edges already placed, ties to the smaller index.
fn branch_order(h: &Hypergraph) -> Vec<usize> {
    let m = h.edge_count();
    let mut placed = vec![false; m];
    let mut touched = vec![false; h.n()];
    let mut overlap = vec![0usize; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let next = (0..m)
            .filter(|&i| !placed[i])
            .max_by(|&a, &b| overlap[a].cmp(&overlap[b]).then(b.cmp(&a)))
            .expect("edges remain");
        placed[next] = true;
        order.push(next);
        for &v in h.edge(next) {
            if !touched[v as usize] {
                touched[v as usize] = true;
                for &f in h.incident(v) {
                    overlap[f] += 1;
                }
            }
        }
    }
    order
}

/// Canonical color prefixes of length `depth` (first use of each color in
/// increasing order), lexicographically.
fn prefixes(depth: usize, r: Color) -> Vec<Vec<Color>> {
    let mut out = vec![Vec::new()];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Color>| {
                let used = p.iter().copied().max().unwrap_or(0);
                (1..=r.min(used + 1)).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

fn coloring_from_order(order: &[usize], by_pos: &[Color], r: Color) -> Result<Coloring> {
    let mut colors = vec![0; order.len()];
    for (pos, &e) in order.iter().enumerate() {
        colors[e] = by_pos[pos];
    }
    Coloring::new(r, colors)
}

fn certified(h: &Hypergraph, coloring: Coloring, status: SearchStatus) -> Result<McResult> {
    let mut res = mc(h, &coloring)?;
    res.status = status;
    res.coloring = Some(coloring);
    Ok(res)
}

/// Exact `mc_r(H)`: the minimum over all r-colorings of the largest
/// monochromatic component, with a minimizing coloring.
///
/// Branch-and-bound over edges in [`branch_order`], using only canonical
/// color orders and pruning partial colorings whose largest component already
/// reaches the incumbent. With several shards the tree is split into prefix
/// tasks sharing the incumbent. The certificate is always produced by a
/// final sequential search bounded by the optimum, so complete results do not
/// depend on the shard count. A node budget is spent by a single sequential
/// search, which keeps budgeted results independent of the shard count too.
pub fn mc_r_exact(h: &Hypergraph, r: Color, budget: &SearchBudget) -> Result<McResult> {
    if r == 0 {
        return Err(Error::arg("r must be at least 1"));
    }
    if budget.shards == 0 || budget.max_nodes == Some(0) {
        return Err(Error::arg("budget values must be positive"));
    }
    let m = h.edge_count();
    if m == 0 {
        return certified(h, Coloring::uniform(r, 0), SearchStatus::Complete);
    }
    let order = branch_order(h);
    let mut depth = 0;
    if budget.shards > 1 && budget.max_nodes.is_none() {
        while depth < m && prefixes(depth, r).len() < 4 * budget.shards {
            depth += 1;
        }
    }
    let tasks = prefixes(depth, r);
    let shared = Shared {
        incumbent: AtomicUsize::new(h.n() + 1),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
        deadline: budget.time_limit.map(|t| Instant::now() + t),
        stop_at: None,
    };
    let outcomes: Vec<(Option<(usize, Vec<Color>)>, usize)> = tasks
        .par_iter()
        .map(|prefix| {
            let mut w = Worker::new(h, &order, r, &shared);
            w.run_prefix(prefix);
            (w.best, w.abandoned)
        })
        .collect();
    let best = outcomes
        .iter()
        .filter_map(|o| o.0.as_ref())
        .min_by_key(|b| b.0)
        .cloned();
    let abandoned = outcomes.iter().map(|o| o.1).min().unwrap_or(usize::MAX);

    if shared.stop.load(Ordering::Relaxed) {
        let fallback = match best {
            Some((_, by_pos)) => coloring_from_order(&order, &by_pos, r)?,
            None => Coloring::uniform(r, m),
        };
        let upper = mc(h, &fallback)?.value;
        let status = SearchStatus::Incomplete {
            lower: abandoned.min(upper),
            upper,
        };
        return certified(h, fallback, status);
    }

    let optimum = best.ok_or_else(|| Error::internal("complete search found no coloring"))?.0;
    let replay = Shared {
        incumbent: AtomicUsize::new(optimum + 1),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        max_nodes: u64::MAX,
        deadline: None,
        stop_at: Some(optimum),
    };
    let mut w = Worker::new(h, &order, r, &replay);
    w.run_prefix(&[]);
    let (value, by_pos) = w.best.ok_or_else(|| Error::internal("certificate search failed"))?;
    if value != optimum {
        return Err(Error::internal("certificate value differs from the optimum"));
    }
    let res = certified(h, coloring_from_order(&order, &by_pos, r)?, SearchStatus::Complete)?;
    if res.value != optimum {
        return Err(Error::internal("certificate does not recompute to the optimum"));
    }
    Ok(res)
}

const NONE: u32 = u32::MAX;

/// Components of one color class, kept up to date under edge insertions
/// and deletions.
#[derive(Clone)]
struct ClassState {
    label: Vec<u32>,
    members: Vec<Vec<Vertex>>,
    free: Vec<u32>,
    deg: Vec<u32>,
}

impl ClassState {
    fn new(n: usize) -> Self {
        Self {
            label: vec![NONE; n],
            members: Vec::new(),
            free: Vec::new(),
            deg: vec![0; n],
        }
    }

    fn fresh(&mut self, v: Vertex) -> u32 {
        let l = match self.free.pop() {
            Some(l) => l,
            None => {
                self.members.push(Vec::new());
                self.members.len() as u32 - 1
            }
        };
        self.members[l as usize].push(v);
        self.label[v as usize] = l;
        l
    }

    fn largest(&self) -> usize {
        self.members.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Local-search state: a coloring with incrementally maintained components,
/// per-color degrees and the potential `Σ √deg_c(v)`.
struct LocalState<'a> {
    h: &'a Hypergraph,
    colors: Vec<Color>,
    classes: Vec<ClassState>,
    phi: f64,
    stamp: Vec<u32>,
    generation: u32,
    queue: Vec<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Score {
    mc: usize,
    /// Number of components of order `mc`.
    at_max: usize,
    /// Over the components of order `mc`, the sum of their smallest
    /// internal degree: moves still needed to shed one vertex from each.
    evict: usize,
    phi: f64,
}

impl Score {
    fn key(&self) -> (usize, usize, usize) {
        (self.mc, self.at_max, self.evict)
    }
}

impl<'a> LocalState<'a> {
    fn new(h: &'a Hypergraph, r: Color, colors: Vec<Color>) -> Self {
        let mut s = Self {
            h,
            colors: vec![0; colors.len()],
            classes: (0..r).map(|_| ClassState::new(h.n())).collect(),
            phi: 0.0,
            stamp: vec![0; h.n()],
            generation: 0,
            queue: Vec::new(),
        };
        for (e, &c) in colors.iter().enumerate() {
            s.colors[e] = c;
            s.insert(e, c);
        }
        s
    }

    fn score(&self) -> Score {
        let mc = self.classes.iter().map(ClassState::largest).max().unwrap_or(0);
        let mut at_max = 0;
        let mut evict = 0;
        for c in &self.classes {
            for m in c.members.iter().filter(|m| m.len() == mc) {
                at_max += 1;
                evict += m.iter().map(|&v| c.deg[v as usize] as usize).min().unwrap_or(0);
            }
        }
        Score {
            mc: if mc == 0 { usize::from(self.h.n() > 0) } else { mc },
            at_max,
            evict,
            phi: self.phi,
        }
    }

    fn insert(&mut self, e: usize, c: Color) {
        let cls = &mut self.classes[c as usize - 1];
        let mut labels = Vec::with_capacity(self.h.k());
        for &v in self.h.edge(e) {
            let d = cls.deg[v as usize];
            self.phi += ((d + 1) as f64).sqrt() - (d as f64).sqrt();
            cls.deg[v as usize] = d + 1;
            let l = if d == 0 {
                cls.fresh(v)
            } else {
                cls.label[v as usize]
            };
            if !labels.contains(&l) {
                labels.push(l);
            }
        }
        let &keep = labels
            .iter()
            .max_by_key(|&&l| (cls.members[l as usize].len(), std::cmp::Reverse(l)))
            .expect("edge has vertices");
        for l in labels {
            if l == keep {
                continue;
            }
            let moved = std::mem::take(&mut cls.members[l as usize]);
            for &v in &moved {
                cls.label[v as usize] = keep;
            }
            cls.members[keep as usize].extend(moved);
            cls.free.push(l);
        }
    }

    /// Removes edge `e` from color class `c`; `colors[e]` must no longer be `c`.
    fn remove(&mut self, e: usize, c: Color) {
        let ci = c as usize - 1;
        let mut remaining = Vec::with_capacity(self.h.k());
        let comp = self.classes[ci].label[self.h.edge(e)[0] as usize];
        for &v in self.h.edge(e) {
            let cls = &mut self.classes[ci];
            let d = cls.deg[v as usize];
            self.phi += ((d - 1) as f64).sqrt() - (d as f64).sqrt();
            cls.deg[v as usize] = d - 1;
            if d == 1 {
                let list = &mut cls.members[comp as usize];
                let at = list.iter().position(|&x| x == v).expect("member");
                list.swap_remove(at);
                cls.label[v as usize] = NONE;
            } else {
                remaining.push(v);
            }
        }
        if self.classes[ci].members[comp as usize].is_empty() {
            self.classes[ci].free.push(comp);
            return;
        }
        if remaining.len() < 2 || self.reaches_all(c, &remaining) {
            return;
        }
        // the component fell apart: relabel it from scratch
        let old = std::mem::take(&mut self.classes[ci].members[comp as usize]);
        self.classes[ci].free.push(comp);
        for &v in &old {
            self.classes[ci].label[v as usize] = NONE;
        }
        for &start in &old {
            if self.classes[ci].label[start as usize] != NONE {
                continue;
            }
            let l = self.classes[ci].fresh(start);
            self.queue.clear();
            self.queue.push(start);
            let mut head = 0;
            while head < self.queue.len() {
                let x = self.queue[head];
                head += 1;
                for &f in self.h.incident(x) {
                    if self.colors[f] != c {
                        continue;
                    }
                    for &y in self.h.edge(f) {
                        if self.classes[ci].label[y as usize] == NONE {
                            self.classes[ci].label[y as usize] = l;
                            self.classes[ci].members[l as usize].push(y);
                            self.queue.push(y);
                        }
                    }
                }
            }
        }
    }

    /// Breadth-first search in color `c` from `targets[0]`, stopping once
    /// every target is reached.
    fn reaches_all(&mut self, c: Color, targets: &[Vertex]) -> bool {
        // Targets are marked with the negated generation; keeping generations
        // below 2^31 keeps the two ranges apart.
        self.generation += 1;
        if self.generation >= 1 << 31 {
            self.stamp.fill(0);
            self.generation = 1;
        }
        let g = self.generation;
        let mut missing = targets.len() - 1;
        for &t in &targets[1..] {
            self.stamp[t as usize] = g.wrapping_neg();
        }
        self.queue.clear();
        self.queue.push(targets[0]);
        self.stamp[targets[0] as usize] = g;
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            for &f in self.h.incident(x) {
                if self.colors[f] != c {
                    continue;
                }
                for &y in self.h.edge(f) {
                    let st = self.stamp[y as usize];
                    if st == g {
                        continue;
                    }
                    if st == g.wrapping_neg() {
                        missing -= 1;
                        if missing == 0 {
                            return true;
                        }
                    }
                    self.stamp[y as usize] = g;
                    self.queue.push(y);
                }
            }
        }
        false
    }

    fn recolor(&mut self, e: usize, to: Color) {
        let from = self.colors[e];
        self.colors[e] = to;
        self.remove(e, from);
        self.insert(e, to);
    }
}

/// Upper bound on `mc_r(H)` by single-edge recoloring descent.
///
/// Each of `restarts` runs starts from a uniformly random coloring drawn
/// from its own stream of `seed`. A move recolors one random edge and is kept
/// unless it worsens the score in lexicographic order: `mc`, then the number
/// of components of order `mc`, then the summed smallest internal degree of
/// those components, then `Σ √deg_c(v)`. Ties are accepted, so the search
/// walks across plateaus. A run ends after `2m` consecutive moves without a
/// strict improvement of the first three keys, or after `50m` moves. The
/// returned value is recomputed exactly from the best coloring.
pub fn mc_r_localsearch(h: &Hypergraph, r: Color, restarts: usize, seed: Seed) -> Result<McResult> {
    if r == 0 {
        return Err(Error::arg("r must be at least 1"));
    }
    let m = h.edge_count();
    if r == 1 || m == 0 {
        return certified(h, Coloring::uniform(r, m), SearchStatus::Complete);
    }
    let patience = 2 * m;
    let cap = 50 * m;
    let mut best: Option<((usize, usize, usize), Vec<Color>)> = None;
    for run in 0..restarts.max(1) {
        let mut rng = stream_rng(seed, run as u64);
        let start: Vec<Color> = (0..m).map(|_| rng.random_range(1..=r)).collect();
        let mut state = LocalState::new(h, r, start);
        let mut score = state.score();
        let mut run_best = (score.key(), state.colors.clone());
        let mut idle = 0;
        let mut moves = 0;
        while idle < patience && moves < cap {
            moves += 1;
            let e = rng.random_range(0..m);
            let from = state.colors[e];
            let mut to = rng.random_range(1..r);
            if to >= from {
                to += 1;
            }
            state.recolor(e, to);
            let next = state.score();
            if next.key() > score.key() || (next.key() == score.key() && next.phi > score.phi + 1e-9) {
                state.recolor(e, from);
                idle += 1;
                continue;
            }
            if next.key() < score.key() {
                idle = 0;
            } else {
                idle += 1;
            }
            score = next;
            if score.key() < run_best.0 {
                run_best = (score.key(), state.colors.clone());
            }
        }
        if best.as_ref().is_none_or(|b| run_best.0 < b.0) {
            best = Some(run_best);
        }
    }
    let (_, colors) = best.expect("at least one run");
    certified(h, Coloring::new(r, colors)?, SearchStatus::Complete)
}

/// Induced subgraph on the vertices of large degree, see
/// [`high_degree_subgraph`].
#[derive(Clone, Debug)]
pub struct HighDegree {
    pub induced: Induced,
    /// Degree cut `(1 - ε^η) C(n-1, k-1)`.
    pub threshold: f64,
}

/// Keeps the vertices of degree at least `(1 - ε^η) C(n-1, k-1)` in a
/// hypergraph with `e(H) ≥ (1-ε) C(n, k)`.
///
/// The result is checked against the two guarantees: at least
/// `(1 - ε^{1-η}) n` vertices survive, and when that many are at least `k²`
/// the minimum degree is at least `(1 - 2kε^η) C(|V'|-1, k-1)`. A violation
/// is reported as an internal error.
pub fn high_degree_subgraph(h: &Hypergraph, eps: f64, eta: f64) -> Result<HighDegree> {
    let (n, k) = (h.n(), h.k());
    if k < 2 {
        return Err(Error::arg("requires k >= 2"));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::window("requires 0 < η < 1"));
    }
    let cap = (1.0 - 0.5f64.powf(1.0 / (k as f64 - 1.0))).powf(1.0 / (1.0 - eta));
    if !(0.0..=cap).contains(&eps) {
        return Err(Error::window(format!("requires 0 < ε <= {cap}")));
    }
    let total = binomial(n as u64, k as u64) as f64;
    if (h.edge_count() as f64) < (1.0 - eps) * total - 1e-9 {
        return Err(Error::pre(format!("e(H) = {} is below (1-ε) C(n, k)", h.edge_count())));
    }
    let full = binomial(n as u64 - 1, k as u64 - 1) as f64;
    let threshold = (1.0 - eps.powf(eta)) * full;
    let kept: Vec<Vertex> = (0..n as Vertex)
        .filter(|&v| h.vertex_degree(v) as f64 >= threshold - 1e-9)
        .collect();
    let survivors = (1.0 - eps.powf(1.0 - eta)) * n as f64;
    if (kept.len() as f64) < survivors - 1e-9 {
        return Err(Error::internal("too many low-degree vertices"));
    }
    let induced = h.induced(&kept)?;
    if survivors >= (k * k) as f64 && !kept.is_empty() {
        let floor = (1.0 - 2.0 * k as f64 * eps.powf(eta)) * binomial(kept.len() as u64 - 1, k as u64 - 1) as f64;
        if (crate::hypergraph::min_degree(&induced.graph) as f64) < floor - 1e-9 {
            return Err(Error::internal("minimum degree guarantee violated"));
        }
    }
    Ok(HighDegree { induced, threshold })
}

/// Outcome of [`one_core_bound_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OneCoreCheck {
    /// 1-core order of each color, index `c - 1`.
    pub orders: Vec<usize>,
    pub largest: usize,
    pub bound: f64,
    pub pass: bool,
}

/// Compares the largest monochromatic 1-core (the vertices covered by one
/// color) with `(k/(k+ℓ) - √ε) n`, where `ℓ = r - k`.
pub fn one_core_bound_check(h: &Hypergraph, coloring: &Coloring, eps: f64) -> Result<OneCoreCheck> {
    coloring.check_for(h)?;
    let (n, k, r) = (h.n(), h.k(), coloring.r() as usize);
    if r <= k {
        return Err(Error::arg(format!("need more than k = {k} colors, got {r}")));
    }
    let total = binomial(n as u64, k as u64) as f64;
    if eps > 0.0 && (h.edge_count() as f64) <= (1.0 - eps) * total {
        return Err(Error::pre("requires e(H) > (1-ε) C(n, k)"));
    }
    if eps == 0.0 && (h.edge_count() as u128) < binomial(n as u64, k as u64) {
        return Err(Error::pre("ε = 0 requires the complete hypergraph"));
    }
    let bound = one_core_threshold(k, r - k, eps, n as u64)?.value;
    let mut covered = vec![vec![false; n]; r];
    for (i, e) in h.edges().enumerate() {
        let c = coloring.color(i) as usize - 1;
        for &v in e {
            covered[c][v as usize] = true;
        }
    }
    let orders: Vec<usize> = covered.iter().map(|c| c.iter().filter(|&&b| b).count()).collect();
    let largest = orders.iter().copied().max().unwrap_or(0);
    Ok(OneCoreCheck {
        pass: largest as f64 >= bound - 1e-9,
        orders,
        largest,
        bound,
    })
}
