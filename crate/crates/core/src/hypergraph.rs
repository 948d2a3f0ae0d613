//! Uniform hypergraphs, edge colorings and the basic structural operations on
//! them: shadow graph, monochromatic components, 1-cores, link graphs and
//! degrees.
//!
//! Edges are stored canonically: vertices ascending within an edge and the
//! edge list sorted lexicographically. Edge indices therefore identify edges
//! stably, and colorings are plain vectors aligned with that order.

use std::cmp::Ordering;

use crate::dsu::DisjointSet;
use crate::error::{Error, Result};

pub type Vertex = u32;
pub type Color = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    /// Flat edge storage, `k` entries per edge.
    flat: Vec<Vertex>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, canonicalizing edge order. Fails on out-of-range
    /// vertices, repeated vertices inside an edge, wrong edge size or
    /// duplicate edges.
    pub fn new<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        if k == 0 {
            return Err(Error::arg("uniformity must be at least 1"));
        }
        if n > Vertex::MAX as usize {
            return Err(Error::arg(format!("vertex count {n} exceeds the id range")));
        }
        let mut list: Vec<Vec<Vertex>> = Vec::new();
        for (i, e) in edges.into_iter().enumerate() {
            let mut e = e.as_ref().to_vec();
            if e.len() != k {
                return Err(Error::arg(format!("edge {i} has {} vertices, expected {k}", e.len())));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::arg(format!("edge {i} repeats a vertex")));
            }
            if let Some(&v) = e.last() {
                if v as usize >= n {
                    return Err(Error::arg(format!("edge {i} uses vertex {v} >= n = {n}")));
                }
            }
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::arg(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Self::from_sorted(k, n, list.concat()))
    }

    /// Internal constructor for edge lists already in canonical order.
    pub(crate) fn from_sorted(k: usize, n: usize, flat: Vec<Vertex>) -> Self {
        debug_assert_eq!(flat.len() % k, 0);
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in flat.chunks_exact(k).enumerate() {
            for &v in e {
                incidence[v as usize].push(i);
            }
        }
        Self {
            k,
            n,
            flat,
            incidence,
        }
    }

    pub fn empty(k: usize, n: usize) -> Self {
        Self::from_sorted(k.max(1), n, Vec::new())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.flat.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.flat[i * self.k..(i + 1) * self.k]
    }

    pub fn edges(&self) -> std::slice::ChunksExact<'_, Vertex> {
        self.flat.chunks_exact(self.k)
    }

    /// Indices of the edges containing `v`, ascending.
    pub fn incident(&self, v: Vertex) -> &[usize] {
        &self.incidence[v as usize]
    }

    pub fn vertex_degree(&self, v: Vertex) -> usize {
        self.incidence[v as usize].len()
    }

    /// Index of the edge with the given vertex set, if present.
    pub fn edge_index(&self, vertices: &[Vertex]) -> Option<usize> {
        if vertices.len() != self.k {
            return None;
        }
        let mut key = vertices.to_vec();
        key.sort_unstable();
        let (mut lo, mut hi) = (0usize, self.edge_count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(&key[..]) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains_edge(&self, vertices: &[Vertex]) -> bool {
        self.edge_index(vertices).is_some()
    }

    /// Re-checks every structural invariant, including the incidence index.
    pub fn validate(&self) -> Result<()> {
        let mut prev: Option<&[Vertex]> = None;
        for (i, e) in self.edges().enumerate() {
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::internal(format!("edge {i} not strictly ascending")));
            }
            if e.iter().any(|&v| v as usize >= self.n) {
                return Err(Error::internal(format!("edge {i} out of range")));
            }
            if let Some(p) = prev {
                if p >= e {
                    return Err(Error::internal(format!("edge {i} out of canonical order")));
                }
            }
            prev = Some(e);
        }
        let mut seen = 0usize;
        for (v, inc) in self.incidence.iter().enumerate() {
            for &i in inc {
                if !self.edge(i).contains(&(v as Vertex)) {
                    return Err(Error::internal(format!("incidence of {v} lists foreign edge {i}")));
                }
            }
            seen += inc.len();
        }
        if seen != self.flat.len() {
            return Err(Error::internal("incidence size disagrees with edge list"));
        }
        Ok(())
    }

    /// Keeps the edges selected by `keep` on the same vertex set. Returns the
    /// new hypergraph and, for each new edge, its index in `self`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, &[Vertex]) -> bool) -> (Hypergraph, Vec<usize>) {
        let mut flat = Vec::new();
        let mut origin = Vec::new();
        for (i, e) in self.edges().enumerate() {
            if keep(i, e) {
                flat.extend_from_slice(e);
                origin.push(i);
            }
        }
        (Self::from_sorted(self.k, self.n, flat), origin)
    }

    /// Induced subhypergraph on `vertices`, relabelled to `0..vertices.len()`
    /// in ascending order of the original ids.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<Induced> {
        let mut ground = vertices.to_vec();
        ground.sort_unstable();
        ground.dedup();
        if ground.last().is_some_and(|&v| v as usize >= self.n) {
            return Err(Error::arg("induced vertex set leaves the vertex range"));
        }
        let mut local = vec![Vertex::MAX; self.n];
        for (i, &v) in ground.iter().enumerate() {
            local[v as usize] = i as Vertex;
        }
        let mut flat = Vec::new();
        let mut edge_origin = Vec::new();
        for (i, e) in self.edges().enumerate() {
            if e.iter().all(|&v| local[v as usize] != Vertex::MAX) {
                flat.extend(e.iter().map(|&v| local[v as usize]));
                edge_origin.push(i);
            }
        }
        // relabelling is monotone, so canonical order survives
        let graph = Self::from_sorted(self.k, ground.len(), flat);
        Ok(Induced {
            graph,
            vertices: ground,
            edge_origin,
        })
    }

    /// Vertices lying in at least one edge.
    pub fn covered_vertices(&self) -> Vec<Vertex> {
        (0..self.n as Vertex).filter(|&v| !self.incidence[v as usize].is_empty()).collect()
    }
}

/// An induced subhypergraph together with the maps back to its host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub graph: Hypergraph,
    /// `vertices[i]` is the host id of local vertex `i`.
    pub vertices: Vec<Vertex>,
    /// `edge_origin[j]` is the host index of local edge `j`.
    pub edge_origin: Vec<usize>,
}

/// An edge coloring with colors `1..=r`, aligned with the edge order of a
/// hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    r: Color,
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(r: Color, colors: Vec<Color>) -> Result<Self> {
        if r == 0 {
            return Err(Error::arg("a coloring needs at least one color"));
        }
        if let Some((i, &c)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > r) {
            return Err(Error::arg(format!("edge {i} has color {c} outside 1..={r}")));
        }
        Ok(Self { r, colors })
    }

    pub fn uniform(r: Color, m: usize) -> Self {
        Self {
            r: r.max(1),
            colors: vec![1; m],
        }
    }

    pub fn r(&self) -> Color {
        self.r
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, edge: usize) -> Color {
        self.colors[edge]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Checks alignment with `h`.
    pub fn check_for(&self, h: &Hypergraph) -> Result<()> {
        if self.colors.len() != h.edge_count() {
            return Err(Error::arg(format!(
                "coloring has {} entries but the hypergraph has {} edges",
                self.colors.len(),
                h.edge_count()
            )));
        }
        Ok(())
    }

    /// Applies a permutation of the colors: color `c` becomes `perm[c - 1]`.
    pub fn permuted(&self, perm: &[Color]) -> Result<Self> {
        if perm.len() != self.r as usize {
            return Err(Error::arg("permutation length differs from r"));
        }
        Self::new(self.r, self.colors.iter().map(|&c| perm[c as usize - 1]).collect())
    }

    pub(crate) fn check_color(&self, c: Color) -> Result<()> {
        if c == 0 || c > self.r {
            return Err(Error::arg(format!("color {c} outside 1..={}", self.r)));
        }
        Ok(())
    }
}

/// Connected components of one color class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub color: Color,
    /// Components, each ascending, ordered by smallest vertex.
    pub components: Vec<Vec<Vertex>>,
    /// Vertices incident to at least one edge of this color, ascending.
    pub covered: Vec<Vertex>,
}

impl ComponentDecomposition {
    pub fn largest(&self) -> Option<&Vec<Vertex>> {
        // first maximum wins, keeping the choice canonical
        self.components
            .iter()
            .fold(None, |best: Option<&Vec<Vertex>>, c| match best {
                Some(b) if b.len() >= c.len() => Some(b),
                _ => Some(c),
            })
    }

    pub fn largest_order(&self) -> usize {
        self.largest().map_or(0, Vec::len)
    }
}

fn components_from_edges<'a>(n: usize, edges: impl Iterator<Item = &'a [Vertex]>) -> (Vec<Vec<Vertex>>, Vec<bool>) {
    let mut dsu = DisjointSet::new(n);
    let mut covered = vec![false; n];
    for e in edges {
        for &v in e {
            covered[v as usize] = true;
        }
        for w in e.windows(2) {
            dsu.union(w[0], w[1]);
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut comps: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..n as Vertex {
        if !covered[v as usize] {
            continue;
        }
        let root = dsu.find(v) as usize;
        if slot[root] == usize::MAX {
            slot[root] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[root]].push(v);
    }
    (comps, covered)
}

/// Components of color class `c`. Vertices missing from every color-`c` edge
/// belong to no component.
pub fn components(h: &Hypergraph, coloring: &Coloring, c: Color) -> Result<ComponentDecomposition> {
    coloring.check_for(h)?;
    coloring.check_color(c)?;
    let edges = h
        .edges()
        .enumerate()
        .filter(|(i, _)| coloring.color(*i) == c)
        .map(|(_, e)| e);
    let (components, covered) = components_from_edges(h.n(), edges);
    Ok(ComponentDecomposition {
        color: c,
        components,
        covered: (0..h.n() as Vertex).filter(|&v| covered[v as usize]).collect(),
    })
}

/// Like [`components`], with every uncovered vertex added as a singleton.
pub fn components_with_singletons(h: &Hypergraph, coloring: &Coloring, c: Color) -> Result<Vec<Vec<Vertex>>> {
    let dec = components(h, coloring, c)?;
    let mut in_comp = vec![false; h.n()];
    for &v in &dec.covered {
        in_comp[v as usize] = true;
    }
    let mut all = dec.components;
    all.extend((0..h.n() as Vertex).filter(|&v| !in_comp[v as usize]).map(|v| vec![v]));
    all.sort_by_key(|c| c[0]);
    Ok(all)
}

/// Components of the whole hypergraph, isolated vertices as singletons.
pub fn connected_components(h: &Hypergraph) -> Vec<Vec<Vertex>> {
    let (mut comps, covered) = components_from_edges(h.n(), h.edges());
    comps.extend((0..h.n() as Vertex).filter(|&v| !covered[v as usize]).map(|v| vec![v]));
    comps.sort_by_key(|c| c[0]);
    comps
}

/// The 2-uniform graph of all pairs lying together in some edge.
pub fn shadow_graph(h: &Hypergraph) -> Hypergraph {
    let mut pairs: Vec<[Vertex; 2]> = Vec::new();
    for e in h.edges() {
        for (i, &a) in e.iter().enumerate() {
            for &b in &e[i + 1..] {
                pairs.push([a, b]);
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    Hypergraph::from_sorted(2, h.n(), pairs.concat())
}

/// Induced subhypergraph on the non-isolated vertices.
pub fn one_core(h: &Hypergraph) -> Induced {
    h.induced(&h.covered_vertices()).expect("covered vertices are in range")
}

/// Restricted link graph `L(v, U)`, relabelled onto `ground`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkGraph {
    pub origin: Vertex,
    /// Host ids of the link vertices, ascending; local vertex `i` is `ground[i]`.
    pub ground: Vec<Vertex>,
    pub graph: Hypergraph,
    /// Colors inherited from `S ∪ {origin}`, aligned with `graph`'s edges.
    pub coloring: Option<Coloring>,
}

pub fn link_graph(h: &Hypergraph, v: Vertex, ground: &[Vertex], coloring: Option<&Coloring>) -> Result<LinkGraph> {
    if h.k() < 2 {
        return Err(Error::arg("link graphs need uniformity at least 2"));
    }
    if v as usize >= h.n() {
        return Err(Error::arg(format!("vertex {v} out of range")));
    }
    if let Some(c) = coloring {
        c.check_for(h)?;
    }
    let mut ground = ground.to_vec();
    ground.sort_unstable();
    ground.dedup();
    if ground.contains(&v) {
        return Err(Error::arg(format!("link origin {v} lies in its ground set")));
    }
    if ground.last().is_some_and(|&u| u as usize >= h.n()) {
        return Err(Error::arg("ground set leaves the vertex range"));
    }
    let mut local = vec![Vertex::MAX; h.n()];
    for (i, &u) in ground.iter().enumerate() {
        local[u as usize] = i as Vertex;
    }
    let mut rows: Vec<(Vec<Vertex>, Color)> = Vec::new();
    for &ei in h.incident(v) {
        let rest: Option<Vec<Vertex>> = h
            .edge(ei)
            .iter()
            .filter(|&&u| u != v)
            .map(|&u| (local[u as usize] != Vertex::MAX).then(|| local[u as usize]))
            .collect();
        if let Some(rest) = rest {
            rows.push((rest, coloring.map_or(1, |c| c.color(ei))));
        }
    }
    // incident edges are ascending and relabelling is monotone, but dropping
    // `v` can reorder rows, so sort explicitly
    rows.sort_unstable();
    let graph = Hypergraph::from_sorted(h.k() - 1, ground.len(), rows.iter().flat_map(|(e, _)| e.clone()).collect());
    let coloring = match coloring {
        Some(c) => Some(Coloring::new(c.r(), rows.iter().map(|(_, col)| *col).collect())?),
        None => None,
    };
    Ok(LinkGraph {
        origin: v,
        ground,
        graph,
        coloring,
    })
}

/// `d(v, U)`: number of `(k-1)`-subsets `S` of `U \ {v}` with `S ∪ {v}` an edge.
pub fn degree(h: &Hypergraph, v: Vertex, ground: &[Vertex]) -> usize {
    let mut inside = vec![false; h.n()];
    for &u in ground {
        if (u as usize) < h.n() {
            inside[u as usize] = true;
        }
    }
    if v as usize >= h.n() {
        return 0;
    }
    h.incident(v)
        .iter()
        .filter(|&&ei| h.edge(ei).iter().all(|&u| u == v || inside[u as usize]))
        .count()
}

/// Minimum over all vertices of `d(v, V \ {v})`; 0 for an empty vertex set.
pub fn min_degree(h: &Hypergraph) -> usize {
    (0..h.n() as Vertex).map(|v| h.vertex_degree(v)).min().unwrap_or(0)
}
