//! Loose paths and cycles: validation, exact longest cycles, the depth-first
//! path-or-witness search, shortest Berge paths, connected diamond matchings,
//! the Berge-path connector and the assembly of a long loose cycle along a
//! packing in a cluster graph.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result, Stage};
use crate::generators::Partition;
use crate::hypergraph::{components, Color, Coloring, Hypergraph, Vertex};
use crate::monochromatic::SearchStatus;

fn check_edges(h: &Hypergraph, edges: &[usize]) -> Result<()> {
    match edges.iter().find(|&&e| e >= h.edge_count()) {
        Some(e) => Err(Error::arg(format!("edge index {e} out of range ({} edges)", h.edge_count()))),
        None => Ok(()),
    }
}

fn same_set(h: &Hypergraph, e: usize, verts: impl Iterator<Item = Vertex>) -> bool {
    let mut block: Vec<Vertex> = verts.collect();
    block.sort_unstable();
    block == h.edge(e)
}

fn all_distinct<T: Copy + Eq + std::hash::Hash>(xs: &[T]) -> bool {
    let mut seen = HashSet::with_capacity(xs.len());
    xs.iter().all(|x| seen.insert(*x))
}

/// A loose path: edge `i` consists of `vertices[i(k-1) ..= i(k-1) + k - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoosePath {
    pub edges: Vec<usize>,
    pub vertices: Vec<Vertex>,
}

impl LoosePath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().expect("a path has a vertex")
    }

    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        check_edges(h, &self.edges)?;
        let k = h.k();
        if k < 2 {
            return Err(Error::arg("loose paths need uniformity at least 2"));
        }
        let l = self.edges.len();
        if self.vertices.len() != l * (k - 1) + 1 {
            return Err(Error::internal(format!(
                "path with {l} edges has {} vertices, expected {}",
                self.vertices.len(),
                l * (k - 1) + 1
            )));
        }
        if !all_distinct(&self.vertices) {
            return Err(Error::internal("path repeats a vertex"));
        }
        for (i, &e) in self.edges.iter().enumerate() {
            let at = i * (k - 1);
            if !same_set(h, e, self.vertices[at..at + k].iter().copied()) {
                return Err(Error::internal(format!("path edge {i} does not match its vertex block")));
            }
        }
        Ok(())
    }

    /// Sub-path between the joints at vertex positions `from` and `to`.
    fn segment(&self, from: usize, to: usize, k: usize) -> LoosePath {
        debug_assert!(from.is_multiple_of(k - 1) && to.is_multiple_of(k - 1) && from <= to);
        LoosePath {
            edges: self.edges[from / (k - 1)..to / (k - 1)].to_vec(),
            vertices: self.vertices[from..=to].to_vec(),
        }
    }
}

/// A loose cycle: edge `i` consists of the `k` cyclically consecutive
/// vertices starting at position `i(k-1)`. For `k = 2` a single edge is a
/// cycle on its two vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LooseCycle {
    pub edges: Vec<usize>,
    pub vertices: Vec<Vertex>,
}

impl LooseCycle {
    /// Orders the vertices of a cyclic edge sequence, failing with a
    /// precondition error if the sequence is not a loose cycle.
    pub fn from_edges(h: &Hypergraph, edges: &[usize]) -> Result<Self> {
        check_edges(h, edges)?;
        let cycle = Self {
            edges: edges.to_vec(),
            vertices: cyclic_order(h, edges).unwrap_or_default(),
        };
        cycle
            .validate(h)
            .map_err(|_| Error::pre(format!("edges {edges:?} do not form a loose cycle")))?;
        Ok(cycle)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        check_edges(h, &self.edges)?;
        let k = h.k();
        let l = self.edges.len();
        let bad = |msg: &str| Err(Error::internal(format!("not a loose cycle: {msg}")));
        if k < 2 || l == 0 {
            return bad("empty");
        }
        if !all_distinct(&self.edges) {
            return bad("repeated edge");
        }
        if !all_distinct(&self.vertices) {
            return bad("repeated vertex");
        }
        if k == 2 && l == 1 {
            return if same_set(h, self.edges[0], self.vertices.iter().copied()) {
                Ok(())
            } else {
                bad("edge does not match its vertices")
            };
        }
        if l < 2 || self.vertices.len() != l * (k - 1) {
            return bad("wrong vertex count");
        }
        let len = self.vertices.len();
        for (i, &e) in self.edges.iter().enumerate() {
            let block = (0..k).map(|j| self.vertices[(i * (k - 1) + j) % len]);
            if !same_set(h, e, block) {
                return bad("edge does not match its vertex block");
            }
        }
        Ok(())
    }
}

/// Vertex order for a cyclic edge sequence, if the intersections allow one.
fn cyclic_order(h: &Hypergraph, edges: &[usize]) -> Option<Vec<Vertex>> {
    let k = h.k();
    let l = edges.len();
    let inter = |a: usize, b: usize| -> Vec<Vertex> {
        h.edge(a).iter().copied().filter(|v| h.edge(b).contains(v)).collect()
    };
    match l {
        0 => None,
        1 if k == 2 => Some(h.edge(edges[0]).to_vec()),
        1 => None,
        2 => {
            let shared = inter(edges[0], edges[1]);
            if shared.len() != 2 {
                return None;
            }
            let mut order = vec![shared[0]];
            order.extend(h.edge(edges[0]).iter().filter(|v| !shared.contains(v)));
            order.push(shared[1]);
            order.extend(h.edge(edges[1]).iter().filter(|v| !shared.contains(v)));
            Some(order)
        }
        _ => {
            let mut joints = Vec::with_capacity(l);
            for i in 0..l {
                let shared = inter(edges[i], edges[(i + 1) % l]);
                if shared.len() != 1 {
                    return None;
                }
                joints.push(shared[0]);
            }
            let mut order = Vec::with_capacity(l * (k - 1));
            for i in 0..l {
                let (a, b) = (joints[(i + l - 1) % l], joints[i]);
                order.push(a);
                order.extend(h.edge(edges[i]).iter().filter(|&&v| v != a && v != b));
            }
            Some(order)
        }
    }
}

/// Whether the cyclic edge sequence is a loose cycle of `h`. Two edges form a
/// cycle (a diamond) when they share exactly two vertices.
pub fn is_loose_cycle(h: &Hypergraph, edges: &[usize]) -> Result<bool> {
    check_edges(h, edges)?;
    let Some(vertices) = cyclic_order(h, edges) else {
        return Ok(false);
    };
    let cycle = LooseCycle {
        edges: edges.to_vec(),
        vertices,
    };
    Ok(cycle.validate(h).is_ok())
}

/// Result of [`longest_loose_cycle_exact`]. On an incomplete search the
/// status bounds the optimum vertex count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LongestCycle {
    pub cycle: Option<LooseCycle>,
    pub status: SearchStatus,
}

impl LongestCycle {
    pub fn vertex_count(&self) -> usize {
        self.cycle.as_ref().map_or(0, LooseCycle::vertex_count)
    }
}

struct CycleSearch<'a> {
    h: &'a Hypergraph,
    used: Vec<bool>,
    in_path: Vec<bool>,
    path: Vec<usize>,
    /// `joints[j]` is the vertex shared by `path[j]` and `path[j + 1]`.
    joints: Vec<Vertex>,
    best: Option<Vec<usize>>,
    best_len: usize,
    cap: usize,
    nodes: u64,
    budget: Option<u64>,
    aborted: bool,
}

impl CycleSearch<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.aborted = true;
        }
        !self.aborted && self.best_len < self.cap
    }

    fn record(&mut self, edges: Vec<usize>) {
        if edges.len() > self.best_len {
            self.best_len = edges.len();
            self.best = Some(edges);
        }
    }

    /// Extends the path from its last edge; `path[0]` is the least edge index.
    fn extend(&mut self) {
        if !self.tick() {
            return;
        }
        let h = self.h;
        let e0 = self.path[0];
        let x1 = self.joints[0];
        let last = *self.path.last().expect("nonempty");
        let inj = self.joints[self.joints.len() - 1];
        for &w in h.edge(last) {
            if w == inj {
                continue;
            }
            for &f in h.incident(w) {
                if f <= e0 || self.in_path[f] {
                    continue;
                }
                let mut others = h.edge(f).iter().filter(|&&v| v != w && self.used[v as usize]);
                match (others.next(), others.next()) {
                    (None, _) => {
                        self.push(f, w);
                        self.extend();
                        self.pop(f, w);
                        if self.aborted || self.best_len >= self.cap {
                            return;
                        }
                    }
                    (Some(&z), None) if self.path.len() >= 2 && f > self.path[1]
                        && z != x1 && h.edge(e0).contains(&z) => {
                            let mut edges = self.path.clone();
                            edges.push(f);
                            self.record(edges);
                        }
                    _ => {}
                }
            }
        }
    }

    fn push(&mut self, f: usize, joint: Vertex) {
        self.in_path[f] = true;
        self.path.push(f);
        self.joints.push(joint);
        for &v in self.h.edge(f) {
            if v != joint {
                self.used[v as usize] = true;
            }
        }
    }

    fn pop(&mut self, f: usize, joint: Vertex) {
        for &v in self.h.edge(f) {
            if v != joint {
                self.used[v as usize] = false;
            }
        }
        self.joints.pop();
        self.path.pop();
        self.in_path[f] = false;
    }
}

/// Loose cycle with the most vertices, by canonical backtracking: the least
/// edge index of a cycle comes first and its second edge precedes its last,
/// so every cycle is generated once. With a coloring and color, only edges of
/// that color are used. `budget` caps search nodes.
pub fn longest_loose_cycle_exact(
    h: &Hypergraph,
    restrict: Option<(&Coloring, Color)>,
    budget: Option<u64>,
) -> Result<LongestCycle> {
    let k = h.k();
    if k < 2 {
        return Err(Error::arg("loose cycles need uniformity at least 2"));
    }
    let (sub, origin) = match restrict {
        Some((coloring, c)) => {
            coloring.check_for(h)?;
            if c == 0 || c > coloring.r() {
                return Err(Error::arg(format!("color {c} outside 1..={}", coloring.r())));
            }
            h.filter_edges(|i, _| coloring.color(i) == c)
        }
        None => (h.clone(), (0..h.edge_count()).collect()),
    };
    let m = sub.edge_count();
    // suffix_cover[e] = number of vertices covered by edges e..m
    let mut suffix_cover = vec![0; m + 1];
    let mut seen = vec![false; sub.n()];
    for e in (0..m).rev() {
        suffix_cover[e] = suffix_cover[e + 1];
        for &v in sub.edge(e) {
            if !seen[v as usize] {
                seen[v as usize] = true;
                suffix_cover[e] += 1;
            }
        }
    }
    let cap = suffix_cover[0] / (k - 1);
    let mut search = CycleSearch {
        h: &sub,
        used: vec![false; sub.n()],
        in_path: vec![false; m],
        path: Vec::new(),
        joints: Vec::new(),
        best: None,
        best_len: 0,
        cap,
        nodes: 0,
        budget,
        aborted: false,
    };
    if k == 2 && m > 0 {
        search.record(vec![0]);
    }
    // diamonds
    'pairs: for a in 0..m {
        for &v in sub.edge(a) {
            for &b in sub.incident(v) {
                if b > a && sub.edge(b).iter().filter(|u| sub.edge(a).contains(u)).count() == 2 {
                    search.record(vec![a, b]);
                    break 'pairs;
                }
            }
        }
    }
    let mut stopped_at = m;
    for e0 in 0..m {
        if search.aborted || suffix_cover[e0] / (k - 1) <= search.best_len {
            stopped_at = e0;
            break;
        }
        search.in_path[e0] = true;
        search.path.push(e0);
        for &v in sub.edge(e0) {
            search.used[v as usize] = true;
        }
        for &x in sub.edge(e0) {
            for &f in sub.incident(x) {
                if f <= e0 || sub.edge(f).iter().any(|&u| u != x && search.used[u as usize]) {
                    continue;
                }
                search.push(f, x);
                search.extend();
                search.pop(f, x);
            }
        }
        for &v in sub.edge(e0) {
            search.used[v as usize] = false;
        }
        search.path.pop();
        search.in_path[e0] = false;
        if search.aborted {
            stopped_at = e0;
            break;
        }
    }
    let best_vertices = |len: usize| if k == 2 && len == 1 { 2 } else { len * (k - 1) };
    let status = if search.aborted {
        let upper = (suffix_cover[stopped_at] / (k - 1)).max(search.best_len);
        SearchStatus::Incomplete {
            lower: search.best.as_ref().map_or(0, |b| best_vertices(b.len())),
            upper: best_vertices(upper),
        }
    } else {
        SearchStatus::Complete
    };
    let cycle = match search.best {
        Some(edges) => {
            let edges: Vec<usize> = edges.into_iter().map(|e| origin[e]).collect();
            Some(LooseCycle::from_edges(h, &edges).map_err(|e| Error::internal(e.to_string()))?)
        }
        None => None,
    };
    Ok(LongestCycle { cycle, status })
}

/// Outcome of [`dfs_loose_path_or_witness`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PathOrWitness {
    Path(LoosePath),
    /// Equal-size sets `U_i ⊆ X_i` spanning no edge.
    Witness { sets: Vec<Vec<Vertex>> },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Outside,
    Star,
    Rejected,
    OnPath,
}

struct Dfs<'a> {
    h: &'a Hypergraph,
    k: usize,
    part: Vec<usize>,
    slot: Vec<Slot>,
    star: Vec<usize>,
    rejected: Vec<usize>,
    /// `tv[f]` lists the vertices of edge `f` by part, empty if `f` is not
    /// transversal.
    tv: Vec<Vec<Vertex>>,
    path: LoosePath,
}

impl Dfs<'_> {
    fn set(&mut self, v: Vertex, s: Slot) {
        let i = self.part[v as usize];
        match self.slot[v as usize] {
            Slot::Star => self.star[i] -= 1,
            Slot::Rejected => self.rejected[i] -= 1,
            _ => {}
        }
        match s {
            Slot::Star => self.star[i] += 1,
            Slot::Rejected => self.rejected[i] += 1,
            _ => {}
        }
        self.slot[v as usize] = s;
    }

    /// An edge through `x` whose other vertices are all unexplored.
    fn extension(&self, x: Vertex) -> Option<usize> {
        self.h.incident(x).iter().copied().find(|&f| {
            !self.tv[f].is_empty() && self.tv[f].iter().all(|&v| v == x || self.slot[v as usize] == Slot::Star)
        })
    }

    /// Appends edge `f` at the current end `x`; the new end lies in the
    /// opposite end part.
    fn append(&mut self, f: usize, x: Vertex) {
        let from = self.part[x as usize];
        let to = if from == 0 { self.k - 1 } else { 0 };
        let tv = self.tv[f].clone();
        for (i, &v) in tv.iter().enumerate() {
            if i != from && i != to {
                self.path.vertices.push(v);
            }
        }
        self.path.vertices.push(tv[to]);
        self.path.edges.push(f);
        for &v in &tv {
            if v != x {
                self.set(v, Slot::OnPath);
            }
        }
    }

    fn check_bookkeeping(&self) {
        let k = self.k;
        if self.path.vertices.is_empty() {
            return;
        }
        for i in 1..k - 1 {
            debug_assert_eq!(self.star[i], self.star[0] + self.star[k - 1] + 1);
            debug_assert_eq!(self.rejected[i], self.rejected[0] + self.rejected[k - 1]);
        }
    }

    fn members(&self, i: usize, s: Slot, parts: &[Vec<Vertex>]) -> Vec<Vertex> {
        parts[i].iter().copied().filter(|&v| self.slot[v as usize] == s).collect()
    }
}

/// Depth-first search for a long loose path in a k-partite hypergraph whose
/// degree-2 vertices lie in `X_1 ∪ X_k`, or sets `U_i ⊆ X_i` of equal size at
/// least `ζm` spanning no edge.
///
/// `parts` are `X_1, …, X_k` with `|X_2| = … = |X_{k-1}| = m` and
/// `|X_1| = |X_k| = ⌊m/2⌋` (for `k = 2`, `m = 2|X_1|`). Edges of `h` not
/// transversal to the parts are ignored. A returned path has at least
/// `(1 - 4ζ)m - 2` edges, one fewer when `m` is odd. A returned witness is
/// checked against every edge of `h`.
pub fn dfs_loose_path_or_witness(h: &Hypergraph, parts: &[Vec<Vertex>], zeta: f64) -> Result<PathOrWitness> {
    let k = h.k();
    if k < 2 || parts.len() != k {
        return Err(Error::arg(format!("need k >= 2 parts matching uniformity {k}, got {}", parts.len())));
    }
    if !(0.0..=1.0).contains(&zeta) {
        return Err(Error::arg(format!("ζ = {zeta} outside [0, 1]")));
    }
    let half = parts[0].len();
    let m = if k == 2 { 2 * half } else { parts[1].len() };
    if parts[k - 1].len() != half || m / 2 != half || parts[1..k - 1].iter().any(|p| p.len() != m) {
        return Err(Error::arg(format!(
            "part sizes {:?} do not match the pattern m/2, m, …, m, m/2",
            parts.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    if half == 0 {
        return Err(Error::arg("end parts must be nonempty"));
    }
    let mut part = vec![usize::MAX; h.n()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            let slot = part
                .get_mut(v as usize)
                .ok_or_else(|| Error::arg(format!("vertex {v} out of range")))?;
            if *slot != usize::MAX {
                return Err(Error::arg(format!("vertex {v} lies in two parts")));
            }
            *slot = i;
        }
    }
    let tv = h
        .edges()
        .map(|e| {
            let mut by_part = vec![Vertex::MAX; k];
            for &v in e {
                let i = part[v as usize];
                if i == usize::MAX || by_part[i] != Vertex::MAX {
                    return Vec::new();
                }
                by_part[i] = v;
            }
            by_part
        })
        .collect();
    let mut slot = vec![Slot::Outside; h.n()];
    for p in parts {
        for &v in p {
            slot[v as usize] = Slot::Star;
        }
    }
    let mut dfs = Dfs {
        h,
        k,
        part,
        slot,
        star: parts.iter().map(Vec::len).collect(),
        rejected: vec![0; k],
        tv,
        path: LoosePath {
            edges: Vec::new(),
            vertices: Vec::new(),
        },
    };
    let need = (zeta * m as f64 - 1e-9).ceil().max(0.0) as usize;
    let bound = (1.0 - 4.0 * zeta) * m as f64 - 2.0 - (m % 2) as f64;

    let start = parts[0][0];
    dfs.set(start, Slot::OnPath);
    dfs.path.vertices.push(start);
    loop {
        dfs.check_bookkeeping();
        let balanced: Vec<usize> = [0, k - 1]
            .into_iter()
            .filter(|&s| dfs.star[s] <= dfs.rejected[s])
            .collect();
        if !balanced.is_empty() {
            for &s in &balanced {
                let sets: Vec<Vec<Vertex>> = (0..k)
                    .map(|i| dfs.members(i, if i == s { Slot::Rejected } else { Slot::Star }, parts))
                    .collect();
                if let Some(w) = witness_size(&sets, need) {
                    return finish_witness(h, sets, w);
                }
            }
            if dfs.path.len() as f64 >= bound - 1e-9 {
                dfs.path.validate(h)?;
                return Ok(PathOrWitness::Path(dfs.path));
            }
            return Err(Error::internal(format!(
                "balanced with a path of {} edges and no witness of size {need}",
                dfs.path.len()
            )));
        }
        let x = dfs.path.last();
        if let Some(f) = dfs.extension(x) {
            dfs.append(f, x);
            continue;
        }
        if dfs.path.is_empty() {
            dfs.set(x, Slot::Star);
            dfs.path.vertices.clear();
            let fresh = (0..h.edge_count())
                .find(|&f| !dfs.tv[f].is_empty() && dfs.tv[f].iter().all(|&v| dfs.slot[v as usize] == Slot::Star));
            match fresh {
                Some(f) => {
                    let x1 = dfs.tv[f][0];
                    dfs.set(x1, Slot::OnPath);
                    dfs.path.vertices.push(x1);
                    dfs.append(f, x1);
                }
                None => {
                    let sets: Vec<Vec<Vertex>> = (0..k).map(|i| dfs.members(i, Slot::Star, parts)).collect();
                    return match witness_size(&sets, need) {
                        Some(w) => finish_witness(h, sets, w),
                        None => Err(Error::internal("search stopped with small unexplored sets")),
                    };
                }
            }
            continue;
        }
        // reject the last edge except its first joint
        dfs.path.edges.pop();
        for _ in 0..k - 1 {
            let v = dfs.path.vertices.pop().expect("edge vertices");
            dfs.set(v, Slot::Rejected);
        }
    }
}

fn witness_size(sets: &[Vec<Vertex>], need: usize) -> Option<usize> {
    let smallest = sets.iter().map(Vec::len).min().unwrap_or(0);
    (smallest >= need).then(|| need.max(1).min(smallest))
}

fn finish_witness(h: &Hypergraph, mut sets: Vec<Vec<Vertex>>, w: usize) -> Result<PathOrWitness> {
    for s in &mut sets {
        s.truncate(w);
    }
    let mut member = vec![usize::MAX; h.n()];
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            member[v as usize] = i;
        }
    }
    let k = h.k();
    for e in h.edges() {
        let mut hit = vec![false; k];
        if e.iter().all(|&v| {
            let i = member[v as usize];
            i != usize::MAX && !std::mem::replace(&mut hit[i], true)
        }) {
            return Err(Error::internal(format!("witness sets span edge {e:?}")));
        }
    }
    Ok(PathOrWitness::Witness { sets })
}

/// A Berge path `E_1, …, E_ℓ` with core vertices `v_0, …, v_ℓ`,
/// `{v_{i-1}, v_i} ⊆ E_i`, and the linear order of its vertex set in which
/// `E_i \ E_{i+1}` precedes `E_i ∩ E_{i+1}`, which precedes `E_{i+1} \ E_i`.
/// Each core joint `v_i` comes first in its block `E_i ∩ E_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BergePath {
    pub edges: Vec<usize>,
    pub core: Vec<Vertex>,
    pub order: Vec<Vertex>,
}

impl BergePath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks the Berge witness, the disjointness of non-consecutive edges
    /// and the block order.
    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        check_edges(h, &self.edges)?;
        let l = self.edges.len();
        let bad = |msg: &str| Err(Error::internal(format!("bad Berge path: {msg}")));
        if self.core.len() != l + 1 || !all_distinct(&self.edges) || !all_distinct(&self.order) {
            return bad("shape");
        }
        for (i, &e) in self.edges.iter().enumerate() {
            if !h.edge(e).contains(&self.core[i]) || !h.edge(e).contains(&self.core[i + 1]) {
                return bad("core vertex outside its edge");
            }
            for &f in self.edges.iter().skip(i + 2) {
                if h.edge(f).iter().any(|v| h.edge(e).contains(v)) {
                    return bad("non-consecutive edges intersect");
                }
            }
        }
        let pos: HashMap<Vertex, usize> = self.order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let covered: HashSet<Vertex> = self.edges.iter().flat_map(|&e| h.edge(e).iter().copied()).collect();
        if l > 0 && covered.len() != self.order.len() {
            return bad("order does not cover the edges");
        }
        for i in 0..l.saturating_sub(1) {
            let (a, b) = (h.edge(self.edges[i]), h.edge(self.edges[i + 1]));
            let rank = |v: &Vertex| match (a.contains(v), b.contains(v)) {
                (true, false) => 0,
                (true, true) => 1,
                _ => 2,
            };
            let mut seen: Vec<(usize, usize)> = a.iter().chain(b).map(|v| (pos[v], rank(v))).collect();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0].1 > w[1].1) {
                return bad("block order");
            }
        }
        if self.order.first() != self.core.first() || self.order.last() != self.core.last() {
            return bad("endpoints");
        }
        Ok(())
    }
}

/// Berge path from `u` to `v` with the fewest edges, by breadth-first search
/// over the vertex–edge incidences; `None` if they lie in different
/// components.
pub fn shortest_berge_path(h: &Hypergraph, u: Vertex, v: Vertex) -> Result<Option<BergePath>> {
    let n = h.n();
    if u as usize >= n || v as usize >= n {
        return Err(Error::arg(format!("vertices {u}, {v} must be below n = {n}")));
    }
    if u == v {
        return Ok(Some(BergePath {
            edges: Vec::new(),
            core: vec![u],
            order: vec![u],
        }));
    }
    let mut parent: Vec<Option<(Vertex, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut expanded = vec![false; h.edge_count()];
    let mut queue = VecDeque::from([u]);
    seen[u as usize] = true;
    'bfs: while let Some(x) = queue.pop_front() {
        for &e in h.incident(x) {
            if std::mem::replace(&mut expanded[e], true) {
                continue;
            }
            for &y in h.edge(e) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = Some((x, e));
                    if y == v {
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
        }
    }
    if !seen[v as usize] {
        return Ok(None);
    }
    let mut core = vec![v];
    let mut edges = Vec::new();
    let mut at = v;
    while let Some((x, e)) = parent[at as usize] {
        edges.push(e);
        core.push(x);
        at = x;
    }
    core.reverse();
    edges.reverse();
    let l = edges.len();
    let sets: Vec<&[Vertex]> = edges.iter().map(|&e| h.edge(e)).collect();
    let mut order = Vec::with_capacity(l * h.k());
    let mut placed = HashSet::new();
    let mut put = |w: Vertex, order: &mut Vec<Vertex>| {
        if w != core[l] && placed.insert(w) {
            order.push(w);
        }
    };
    put(core[0], &mut order);
    for i in 0..l {
        let prev = i.checked_sub(1).map(|j| sets[j]);
        let next = sets.get(i + 1).copied();
        for &w in sets[i] {
            if prev.is_none_or(|a| !a.contains(&w)) && next.is_none_or(|b| !b.contains(&w)) {
                put(w, &mut order);
            }
        }
        if let Some(b) = next {
            put(core[i + 1], &mut order);
            for &w in sets[i] {
                if b.contains(&w) {
                    put(w, &mut order);
                }
            }
        }
    }
    order.push(core[l]);
    let path = BergePath { edges, core, order };
    path.validate(h)?;
    Ok(Some(path))
}

/// Vertex-disjoint diamonds inside one monochromatic component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiamondMatching {
    pub color: Color,
    /// Vertex set of the color component containing every diamond.
    pub component: Vec<Vertex>,
    pub diamonds: Vec<LooseCycle>,
}

impl DiamondMatching {
    pub fn vertex_count(&self) -> usize {
        self.diamonds.iter().map(LooseCycle::vertex_count).sum()
    }
}

struct DiamondPacker<'a> {
    h: &'a Hypergraph,
    /// Color-class edges of the component, ascending.
    edges: Vec<usize>,
    in_class: Vec<bool>,
    used: Vec<bool>,
}

impl DiamondPacker<'_> {
    fn grab(&mut self) -> Option<(usize, usize)> {
        let h = self.h;
        for &a in &self.edges {
            if h.edge(a).iter().any(|&v| self.used[v as usize]) {
                continue;
            }
            for &v in h.edge(a) {
                for &b in h.incident(v) {
                    if b == a || !self.in_class[b] {
                        continue;
                    }
                    let shared = h.edge(b).iter().filter(|u| h.edge(a).contains(u)).count();
                    if shared == 2 && h.edge(b).iter().all(|&u| !self.used[u as usize] || h.edge(a).contains(&u)) {
                        self.mark(a, b, true);
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    fn mark(&mut self, a: usize, b: usize, on: bool) {
        for &v in self.h.edge(a).iter().chain(self.h.edge(b)) {
            self.used[v as usize] = on;
        }
    }

    fn pack(&mut self) -> Vec<(usize, usize)> {
        let mut found = Vec::new();
        while let Some(d) = self.grab() {
            found.push(d);
        }
        // trade one diamond for two while possible
        let mut improved = true;
        while improved {
            improved = false;
            for i in 0..found.len() {
                let (a, b) = found[i];
                self.mark(a, b, false);
                if let Some(first) = self.grab() {
                    if let Some(second) = self.grab() {
                        found.swap_remove(i);
                        found.push(first);
                        found.push(second);
                        while let Some(d) = self.grab() {
                            found.push(d);
                        }
                        improved = true;
                        break;
                    }
                    self.mark(first.0, first.1, false);
                }
                self.mark(a, b, true);
            }
        }
        found
    }
}

/// Greedy packing of vertex-disjoint diamonds of color `c` inside a single
/// color-`c` component, improved by one-for-two exchanges. Components are
/// tried from the largest; the search stops once `target` vertices are
/// covered.
pub fn find_connected_diamond_matching(
    h: &Hypergraph,
    coloring: &Coloring,
    c: Color,
    target: Option<usize>,
) -> Result<DiamondMatching> {
    let dec = components(h, coloring, c)?;
    let mut comps = dec.components;
    comps.sort_by_key(|comp| std::cmp::Reverse(comp.len()));
    let mut in_class = vec![false; h.edge_count()];
    for (i, flag) in in_class.iter_mut().enumerate() {
        *flag = coloring.color(i) == c;
    }
    let mut best = DiamondMatching {
        color: c,
        component: Vec::new(),
        diamonds: Vec::new(),
    };
    let size = 2 * h.k().saturating_sub(1);
    for comp in comps {
        if comp.len() < size.max(1) || comp.len() / size.max(1) * size <= best.vertex_count() {
            continue;
        }
        if target.is_some_and(|t| best.vertex_count() >= t) {
            break;
        }
        let mut inside = vec![false; h.n()];
        comp.iter().for_each(|&v| inside[v as usize] = true);
        let edges = (0..h.edge_count())
            .filter(|&e| in_class[e] && inside[h.edge(e)[0] as usize])
            .collect();
        let mut packer = DiamondPacker {
            h,
            edges,
            in_class: in_class.clone(),
            used: vec![false; h.n()],
        };
        let found = packer.pack();
        if found.len() * size > best.vertex_count() {
            let diamonds = found
                .into_iter()
                .map(|(a, b)| LooseCycle::from_edges(h, &[a, b]).map_err(|e| Error::internal(e.to_string())))
                .collect::<Result<_>>()?;
            best = DiamondMatching {
                color: c,
                component: comp,
                diamonds,
            };
        }
    }
    Ok(best)
}

fn cluster_size(partition: &Partition, clusters: &[Vertex]) -> Result<usize> {
    let m = partition.part(clusters[0] as usize).len();
    if clusters.iter().any(|&x| partition.part(x as usize).len() != m) {
        return Err(Error::arg("clusters must have equal size"));
    }
    Ok(m)
}

/// Transversal edges of `h` grouped by their sorted cluster tuple.
fn tuples(h: &Hypergraph, labels: &[usize]) -> HashMap<Vec<usize>, Vec<usize>> {
    let mut map: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (i, e) in h.edges().enumerate() {
        let mut key: Vec<usize> = e.iter().map(|&v| labels[v as usize]).collect();
        key.sort_unstable();
        if key.windows(2).all(|w| w[0] < w[1]) {
            map.entry(key).or_default().push(i);
        }
    }
    map
}

fn check_density(
    map: &HashMap<Vec<usize>, Vec<usize>>,
    tuple: &[Vertex],
    partition: &Partition,
    eps: f64,
) -> Result<()> {
    let mut key: Vec<usize> = tuple.iter().map(|&x| x as usize).collect();
    key.sort_unstable();
    let count = map.get(&key).map_or(0, Vec::len);
    let product: f64 = key.iter().map(|&x| partition.part(x).len() as f64).product();
    let d = count as f64 / product;
    if d <= eps {
        return Err(Error::pre(format!("cluster tuple {key:?} has density {d} <= ε = {eps}")));
    }
    Ok(())
}

struct Connector<'a> {
    h: &'a Hypergraph,
    labels: &'a [usize],
    core: &'a [Vertex],
    /// Per path edge: candidate host edges inside the pools, keyed by their
    /// vertex in the starting joint cluster, in preference order.
    by_joint: Vec<HashMap<Vertex, Vec<usize>>>,
    first: Vec<usize>,
    steps: u64,
}

const CONNECT_STEPS: u64 = 5_000_000;

impl Connector<'_> {
    fn vertex_in(&self, f: usize, cluster: Vertex) -> Vertex {
        *self
            .h
            .edge(f)
            .iter()
            .find(|&&v| self.labels[v as usize] == cluster as usize)
            .expect("transversal edge")
    }

    fn join(&self, mut p: LoosePath, f: usize, x: Vertex, y: Vertex) -> LoosePath {
        p.vertices.extend(self.h.edge(f).iter().filter(|&&v| v != x && v != y));
        p.vertices.push(y);
        p.edges.push(f);
        p
    }

    /// Loose path over the first `j` path edges ending in cluster `core[j]`
    /// at a vertex outside `banned`.
    fn reach(&mut self, j: usize, banned: &HashSet<Vertex>) -> Result<Option<LoosePath>> {
        self.steps += 1;
        if self.steps > CONNECT_STEPS {
            return Err(Error::internal("connector search exceeded its step budget"));
        }
        if j == 1 {
            for &f in &self.first {
                let (x, y) = (self.vertex_in(f, self.core[0]), self.vertex_in(f, self.core[1]));
                if !banned.contains(&y) {
                    let start = LoosePath {
                        edges: Vec::new(),
                        vertices: vec![x],
                    };
                    return Ok(Some(self.join(start, f, x, y)));
                }
            }
            return Ok(None);
        }
        // paths to core[j-1] with distinct ends, each tried for an extension
        let mut ends = HashSet::new();
        while let Some(p) = self.reach(j - 1, &ends)? {
            let x = p.last();
            ends.insert(x);
            let on_path: HashSet<Vertex> = p.vertices.iter().copied().collect();
            let step = self.by_joint[j - 1].get(&x).and_then(|fs| {
                fs.iter().copied().find(|&f| {
                    let y = self.vertex_in(f, self.core[j]);
                    !banned.contains(&y) && self.h.edge(f).iter().all(|v| *v == x || !on_path.contains(v))
                })
            });
            if let Some(f) = step {
                let y = self.vertex_in(f, self.core[j]);
                return Ok(Some(self.join(p, f, x, y)));
            }
        }
        Ok(None)
    }
}

/// Loose path from a vertex of `pools[0]` to a vertex of `pools[s-1]` inside
/// the union of the pools, following a shortest Berge path in the cluster
/// graph `cluster` whose vertices are the parts of `partition`.
///
/// `pools[i] ⊆ V_{order[i]}` lists candidate vertices in preference order.
/// The end pools need `⌈ε^{1/k} m⌉` vertices and the middle pools
/// `⌈2ε^{1/k} m⌉`, where `m` is the common cluster size; every path edge
/// needs transversal density above `ε` in `h`. The construction is the
/// inductive one: paths to the last joint cluster with distinct ends are
/// generated until one extends by an edge into the final clusters that
/// avoids the rest of that path.
pub fn connect_along_berge_path(
    h: &Hypergraph,
    partition: &Partition,
    cluster: &Hypergraph,
    path: &BergePath,
    pools: &[Vec<Vertex>],
    eps: f64,
) -> Result<LoosePath> {
    let k = h.k();
    if cluster.k() != k || cluster.n() != partition.len() || partition.n() != h.n() {
        return Err(Error::arg("cluster graph, partition and host do not match"));
    }
    if path.is_empty() {
        return Err(Error::arg("Berge path has no edges"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::arg(format!("ε = {eps} outside (0, 1)")));
    }
    path.validate(cluster)?;
    let s = path.order.len();
    if pools.len() != s {
        return Err(Error::arg(format!("{} pools for {s} clusters", pools.len())));
    }
    let labels = partition.labels();
    for (i, pool) in pools.iter().enumerate() {
        if let Some(v) = pool.iter().find(|&&v| v as usize >= h.n() || labels[v as usize] != path.order[i] as usize) {
            return Err(Error::arg(format!("pool {i} holds vertex {v} outside cluster {}", path.order[i])));
        }
    }
    let m = cluster_size(partition, &path.order)?;
    let root = eps.powf(1.0 / k as f64) * m as f64;
    let (end_need, mid_need) = ((root - 1e-9).ceil() as usize, (2.0 * root - 1e-9).ceil() as usize);
    for (i, pool) in pools.iter().enumerate() {
        let need = if i == 0 || i == s - 1 { end_need } else { mid_need };
        if pool.len() < need {
            return Err(Error::pre(format!(
                "pool {i} (cluster {}) has {} vertices, needs {need}",
                path.order[i],
                pool.len()
            )));
        }
    }
    let map = tuples(h, &labels);
    for &e in &path.edges {
        check_density(&map, cluster.edge(e), partition, eps)?;
    }
    let mut rank = vec![usize::MAX; h.n()];
    for pool in pools {
        for (r, &v) in pool.iter().enumerate() {
            rank[v as usize] = r;
        }
    }
    let l = path.len();
    let mut connector = Connector {
        h,
        labels: &labels,
        core: &path.core,
        by_joint: Vec::with_capacity(l),
        first: Vec::new(),
        steps: 0,
    };
    for (j, &e) in path.edges.iter().enumerate() {
        let key: Vec<usize> = cluster.edge(e).iter().map(|&x| x as usize).collect();
        let mut cand: Vec<usize> = map
            .get(&key)
            .map(|fs| {
                fs.iter()
                    .copied()
                    .filter(|&f| h.edge(f).iter().all(|&v| rank[v as usize] != usize::MAX))
                    .collect()
            })
            .unwrap_or_default();
        let (a, b) = (path.core[j], path.core[j + 1]);
        cand.sort_by_key(|&f| {
            let (x, y) = (connector.vertex_in(f, a), connector.vertex_in(f, b));
            (rank[x as usize], rank[y as usize], f)
        });
        if j == 0 {
            connector.first = cand.clone();
        }
        let mut by_joint: HashMap<Vertex, Vec<usize>> = HashMap::new();
        for f in cand {
            by_joint.entry(connector.vertex_in(f, a)).or_default().push(f);
        }
        connector.by_joint.push(by_joint);
    }
    let found = connector
        .reach(l, &HashSet::new())?
        .ok_or_else(|| Error::internal("connector construction stalled"))?;
    found.validate(h)?;
    Ok(found)
}

/// Long loose cycle built by [`assemble_loose_cycle`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Assembly {
    pub cycle: LooseCycle,
    pub color: Color,
    /// Edge counts of the long paths, one per packing edge.
    pub long_paths: Vec<usize>,
    /// Edge counts of the connecting paths.
    pub connectors: Vec<usize>,
    /// `Σ_i (|E(P_i)| - 2ε^{1/k} m)`.
    pub edge_bound: f64,
    pub meets_bound: bool,
}

struct PackingEdge {
    start: Vertex,
    end: Vertex,
    interior: Vec<Vertex>,
}

/// Builds a loose cycle of `h` in the color of a connected loose cycle
/// packing of the cluster graph.
///
/// The clusters are the parts of `partition` and must share one size `m`.
/// `packing` lists cycles of `cluster` as edge-index sequences; all their
/// edges carry one color `c` of `cluster_coloring` and lie in a single
/// color-`c` component `L`, every edge of `L` has transversal density above
/// `ε` among the color-`c` edges of `h` (all edges of `h` without a
/// `coloring`), and the packing has at most `ε^{1/k} m` edges.
///
/// Each packing edge starts at its own degree-2 cluster `V_i`. Its long path
/// runs from the first half of `V_i` through the interior clusters to the
/// second half of the next degree-2 cluster and is cut to
/// `⌊(1 - 4ε^{1/k}) m - 2⌋` edges. Consecutive long paths are joined by
/// connectors along shortest Berge paths in `L`, drawing middle vertices from
/// the vertices no long path uses.
pub fn assemble_loose_cycle(
    h: &Hypergraph,
    coloring: Option<&Coloring>,
    partition: &Partition,
    cluster: &Hypergraph,
    cluster_coloring: &Coloring,
    packing: &[Vec<usize>],
    eps: f64,
) -> Result<Assembly> {
    let k = h.k();
    if packing.is_empty() || packing.iter().all(Vec::is_empty) {
        return Err(Error::arg("packing is empty"));
    }
    if k < 3 {
        return Err(Error::arg("cycle assembly needs uniformity at least 3"));
    }
    if cluster.k() != k || cluster.n() != partition.len() || partition.n() != h.n() {
        return Err(Error::arg("cluster graph, partition and host do not match"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::arg(format!("ε = {eps} outside (0, 1)")));
    }
    cluster_coloring.check_for(cluster)?;
    if let Some(col) = coloring {
        col.check_for(h)?;
    }
    let validation = |e: Error| e.at_stage(Stage::Validation);

    let cycles = packing
        .iter()
        .map(|cyc| LooseCycle::from_edges(cluster, cyc))
        .collect::<Result<Vec<_>>>()
        .map_err(validation)?;
    let c = cluster_coloring.color(cycles[0].edges[0]);
    if cycles.iter().flat_map(|cy| &cy.edges).any(|&e| cluster_coloring.color(e) != c) {
        return Err(validation(Error::pre("packing edges carry different colors")));
    }
    let all: Vec<Vertex> = cycles.iter().flat_map(|cy| cy.vertices.iter().copied()).collect();
    if !all_distinct(&all) {
        return Err(validation(Error::pre("packing cycles are not vertex-disjoint")));
    }
    let comps = components(cluster, cluster_coloring, c)?;
    let home = comps.components.iter().find(|comp| comp.contains(&all[0])).cloned().unwrap_or_default();
    if all.iter().any(|v| !home.contains(v)) {
        return Err(validation(Error::pre(format!(
            "packing is not inside one color-{c} component of the cluster graph"
        ))));
    }
    let every: Vec<Vertex> = (0..partition.len() as Vertex).collect();
    let m = cluster_size(partition, &every).map_err(|_| validation(Error::pre("clusters have different sizes")))?;
    let (hc, origin) = match coloring {
        Some(col) => h.filter_edges(|i, _| col.color(i) == c),
        None => (h.clone(), (0..h.edge_count()).collect()),
    };
    let labels = partition.labels();
    let map = tuples(&hc, &labels);
    let (lsub, _) = cluster.filter_edges(|i, e| cluster_coloring.color(i) == c && home.contains(&e[0]));
    for e in lsub.edges() {
        check_density(&map, e, partition, eps).map_err(validation)?;
    }
    let zeta = eps.powf(1.0 / k as f64);
    let f_total: usize = cycles.iter().map(LooseCycle::len).sum();
    if f_total as f64 > zeta * m as f64 + 1e-9 {
        return Err(validation(Error::pre(format!(
            "packing has {f_total} edges, more than ε^(1/k) m = {}",
            zeta * m as f64
        ))));
    }

    // each packing edge starts at the degree-2 cluster it shares with its predecessor
    let mut items = Vec::with_capacity(f_total);
    for cy in &cycles {
        let len = cy.vertices.len();
        for i in 0..cy.len() {
            let start = cy.vertices[i * (k - 1)];
            let end = cy.vertices[((i + 1) * (k - 1)) % len];
            let interior = cluster
                .edge(cy.edges[i])
                .iter()
                .copied()
                .filter(|&x| x != start && x != end)
                .collect();
            items.push(PackingEdge { start, end, interior });
        }
    }
    let half = m / 2;
    let first_half = |x: Vertex| partition.part(x as usize)[..half].to_vec();
    let second_half = |x: Vertex| partition.part(x as usize)[half..2 * half].to_vec();
    let target_len = ((1.0 - 4.0 * zeta) * m as f64 - 2.0 + 1e-9).floor().max(0.0) as usize;
    let need = (zeta * m as f64 - 1e-9).ceil().max(1.0) as usize;

    let long: Vec<LoosePath> = items
        .par_iter()
        .enumerate()
        .map(|(i, it)| {
            let mut parts = vec![first_half(it.start)];
            parts.extend(it.interior.iter().map(|&x| partition.part(x as usize).to_vec()));
            parts.push(second_half(it.end));
            match dfs_loose_path_or_witness(&hc, &parts, zeta)? {
                PathOrWitness::Path(mut p) => {
                    if p.len() > target_len {
                        p = p.segment(0, target_len * (k - 1), k);
                    }
                    Ok(p)
                }
                PathOrWitness::Witness { sets } => Err(Error::pre(format!(
                    "packing edge {i} admits empty sets of size {} instead of a long path",
                    sets[0].len()
                ))),
            }
        })
        .collect::<Result<_>>()
        .map_err(|e| e.at_stage(Stage::LongPath))?;

    // joints of each long path inside its start cluster: U_{i,1} first, U_{i,2} last
    let mut joints_in_start = Vec::with_capacity(f_total);
    for (i, (p, it)) in long.iter().zip(&items).enumerate() {
        let js: Vec<usize> = (0..p.vertices.len())
            .step_by(k - 1)
            .filter(|&pos| labels[p.vertices[pos] as usize] == it.start as usize)
            .collect();
        if js.len() < 2 * need {
            return Err(Error::pre(format!(
                "long path {i} has {} joints in its start cluster, needs {}",
                js.len(),
                2 * need
            ))
            .at_stage(Stage::LongPath));
        }
        joints_in_start.push(js);
    }

    let mut on_long = vec![false; h.n()];
    long.iter().flat_map(|p| &p.vertices).for_each(|&v| on_long[v as usize] = true);
    let mut taken = vec![false; h.n()];
    let mut ledger = vec![0usize; partition.len()];
    let mut connectors: Vec<LoosePath> = Vec::with_capacity(f_total);
    let mid_need = (2.0 * zeta * m as f64 - 1e-9).ceil() as usize;
    for i in 0..f_total {
        let next = (i + 1) % f_total;
        let (from, to) = (items[i].start, items[next].start);
        let bp = shortest_berge_path(&lsub, from, to)?
            .ok_or_else(|| Error::internal("packing clusters disconnected in L").at_stage(Stage::Connection))?;
        let mut pools = Vec::with_capacity(bp.order.len());
        let last_joints = &joints_in_start[i][joints_in_start[i].len() - need..];
        pools.push(last_joints.iter().rev().map(|&pos| long[i].vertices[pos]).collect::<Vec<_>>());
        for &x in &bp.order[1..bp.order.len() - 1] {
            let pool: Vec<Vertex> = partition
                .part(x as usize)
                .iter()
                .copied()
                .filter(|&v| !on_long[v as usize] && !taken[v as usize])
                .collect();
            if pool.len() < mid_need {
                return Err(Error::pre(format!(
                    "cluster {x} has {} unused vertices, needs {mid_need}",
                    pool.len()
                ))
                .at_stage(Stage::PoolExhaustion));
            }
            pools.push(pool);
        }
        pools.push(joints_in_start[next][..need].iter().map(|&pos| long[next].vertices[pos]).collect());
        let mut q = connect_along_berge_path(&hc, partition, &lsub, &bp, &pools, eps)
            .map_err(|e| e.at_stage(Stage::Connection))?;
        for &v in &q.vertices[1..q.vertices.len() - 1] {
            taken[v as usize] = true;
            ledger[labels[v as usize]] += 1;
        }
        if let Some(x) = ledger.iter().position(|&used| used > 2 * (i + 1)) {
            return Err(Error::internal(format!("connectors took {} unused vertices of cluster {x}", ledger[x]))
                .at_stage(Stage::Connection));
        }
        q.edges.iter_mut().for_each(|e| *e = origin[*e]);
        connectors.push(q);
    }

    let mut edges = Vec::new();
    let mut vertices = Vec::new();
    for i in 0..f_total {
        let prev = &connectors[(i + f_total - 1) % f_total];
        let pos = |v: Vertex| long[i].vertices.iter().position(|&w| w == v).expect("joint on path");
        let (a, b) = (pos(prev.last()), pos(connectors[i].first()));
        if a >= b {
            return Err(Error::internal("connector ends out of order").at_stage(Stage::Connection));
        }
        let seg = long[i].segment(a, b, k);
        edges.extend(seg.edges.iter().map(|&e| origin[e]));
        vertices.extend_from_slice(&seg.vertices[..seg.vertices.len() - 1]);
        edges.extend_from_slice(&connectors[i].edges);
        vertices.extend_from_slice(&connectors[i].vertices[..connectors[i].vertices.len() - 1]);
    }
    let cycle = LooseCycle { edges, vertices };
    cycle.validate(h)?;
    let edge_bound: f64 = long.iter().map(|p| p.len() as f64 - 2.0 * zeta * m as f64).sum();
    Ok(Assembly {
        meets_bound: cycle.len() as f64 >= edge_bound - 1e-9,
        cycle,
        color: c,
        long_paths: long.iter().map(LoosePath::len).collect(),
        connectors: connectors.iter().map(LoosePath::len).collect(),
        edge_bound,
    })
}
