//! Seeded constructors for complete, random, nearly complete and k-partite
//! hypergraphs, plus the two extremal colorings.
//!
//! All randomness comes from ChaCha8 streams. A random hypergraph draws one
//! 64-bit word per k-set in canonical (lexicographic) rank order, so the coin
//! for rank `i` is the `i`-th output of the stream and can be reproduced by
//! seeking to word position `2 i`. Independent sub-experiments use distinct
//! ChaCha stream ids via [`stream_rng`].

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::index;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::hypergraph::{Color, Coloring, Hypergraph, Vertex};
use crate::scalar::{binomial, Scalar};

/// Largest number of k-sets enumerated with one coin each.
const ENUMERATION_LIMIT: u128 = 1 << 24;

/// A 64-bit seed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Seed(pub u64);

/// The generator for sub-stream `stream` of `seed`.
pub fn stream_rng(seed: Seed, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    rng.set_stream(stream);
    rng
}

/// Uniform float in `[0, 1)` from the top 53 bits of one word.
pub(crate) fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A partition of `0..n` into disjoint vertex classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    parts: Vec<Vec<Vertex>>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut parts = parts;
        for (i, p) in parts.iter_mut().enumerate() {
            p.sort_unstable();
            for &v in p.iter() {
                let slot = seen
                    .get_mut(v as usize)
                    .ok_or_else(|| Error::arg(format!("part {i} contains vertex {v} >= n = {n}")))?;
                if *slot {
                    return Err(Error::arg(format!("vertex {v} appears in more than one part")));
                }
                *slot = true;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::arg(format!("vertex {v} is in no part")));
        }
        Ok(Self { n, parts })
    }

    /// Consecutive blocks whose sizes differ by at most one, larger blocks first.
    pub fn equipartition(n: usize, t: usize) -> Result<Self> {
        if t == 0 || t > n.max(1) {
            return Err(Error::arg(format!("cannot split {n} vertices into {t} parts")));
        }
        let (base, extra) = (n / t, n % t);
        let mut parts = Vec::with_capacity(t);
        let mut next = 0 as Vertex;
        for i in 0..t {
            let size = base + usize::from(i < extra);
            parts.push((next..next + size as Vertex).collect());
            next += size as Vertex;
        }
        Ok(Self { n, parts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, i: usize) -> &[Vertex] {
        &self.parts[i]
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn is_equipartition(&self) -> bool {
        let sizes = self.parts.iter().map(Vec::len);
        match (sizes.clone().min(), sizes.max()) {
            (Some(lo), Some(hi)) => hi - lo <= 1,
            _ => true,
        }
    }

    /// `labels[v]` is the index of the part containing `v`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in p {
                labels[v as usize] = i;
            }
        }
        labels
    }
}

/// Lexicographic iterator over the k-subsets of `0..n`.
pub struct KSets {
    n: Vertex,
    current: Vec<Vertex>,
    done: bool,
}

impl KSets {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n: n as Vertex,
            current: (0..k as Vertex).collect(),
            done: k > n,
        }
    }
}

impl Iterator for KSets {
    type Item = Vec<Vertex>;

    fn next(&mut self) -> Option<Vec<Vertex>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - (k - i) as Vertex {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// The k-set of lexicographic rank `rank` among the k-subsets of `0..n`.
fn unrank_kset(mut rank: u128, n: usize, k: usize) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(k);
    let mut v = 0usize;
    for slot in 0..k {
        let remaining = k - slot;
        loop {
            // number of k-sets whose next element is v
            let block = binomial((n - v - 1) as u64, (remaining - 1) as u64);
            if rank < block {
                break;
            }
            rank -= block;
            v += 1;
        }
        out.push(v as Vertex);
        v += 1;
    }
    out
}

/// `K^k_n`, all `C(n, k)` edges in canonical order.
pub fn complete(k: usize, n: usize) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::arg("uniformity must be at least 2"));
    }
    if n < k {
        return Err(Error::arg(format!("complete hypergraph needs n >= k, got n = {n}, k = {k}")));
    }
    if binomial(n as u64, k as u64) > ENUMERATION_LIMIT * 4 {
        return Err(Error::arg("complete hypergraph too large to materialize"));
    }
    Ok(Hypergraph::from_sorted(k, n, KSets::new(n, k).flatten().collect()))
}

fn check_probability(p: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!("{what} must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// `H^(k)(n, p)`: each k-set independently with probability `p`.
pub fn random_hypergraph(k: usize, n: usize, p: f64, seed: Seed) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::arg("uniformity must be at least 2"));
    }
    check_probability(p, "edge probability")?;
    let total = binomial(n as u64, k as u64);
    let mut rng = stream_rng(seed, 0);
    if total <= ENUMERATION_LIMIT {
        let mut flat = Vec::new();
        for set in KSets::new(n, k) {
            if unit_f64(&mut rng) < p {
                flat.extend_from_slice(&set);
            }
        }
        return Ok(Hypergraph::from_sorted(k, n, flat));
    }
    // sparse regime: binomial count, then distinct uniform ranks
    let total64 = u64::try_from(total).map_err(|_| Error::arg("too many k-sets to sample"))?;
    let expected = p * total64 as f64;
    if expected > ENUMERATION_LIMIT as f64 {
        return Err(Error::arg(format!("expected edge count {expected:.0} too large")));
    }
    let count = Binomial::new(total64, p)
        .map_err(|e| Error::arg(format!("binomial sampler: {e}")))?
        .sample(&mut rng);
    let mut ranks = std::collections::BTreeSet::new();
    while (ranks.len() as u64) < count {
        ranks.insert(rng.random_range(0..total64));
    }
    let flat = ranks.into_iter().flat_map(|r| unrank_kset(r as u128, n, k)).collect();
    Ok(Hypergraph::from_sorted(k, n, flat))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deletion {
    /// A uniformly random set of k-sets is removed.
    UniformRandom,
    /// Edges through vertex 0 are removed first, then through vertex 1, and so on.
    AdversarialStar,
}

/// `K^k_n` minus `C(n,k) - ⌈(1-ε) C(n,k)⌉` edges.
pub fn near_complete(k: usize, n: usize, eps: f64, mode: Deletion, seed: Seed) -> Result<Hypergraph> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::arg(format!("deletion fraction must lie in [0, 1), got {eps}")));
    }
    let full = complete(k, n)?;
    let total = full.edge_count();
    let keep = keep_count(total, eps)?;
    let delete = total - keep;
    let mut removed = vec![false; total];
    match mode {
        Deletion::UniformRandom => {
            let mut rng = stream_rng(seed, 0);
            for i in index::sample(&mut rng, total, delete) {
                removed[i] = true;
            }
        }
        Deletion::AdversarialStar => {
            let mut left = delete;
            'outer: for v in 0..n as Vertex {
                for &ei in full.incident(v) {
                    if left == 0 {
                        break 'outer;
                    }
                    if !removed[ei] {
                        removed[ei] = true;
                        left -= 1;
                    }
                }
            }
        }
    }
    Ok(full.filter_edges(|i, _| !removed[i]).0)
}

fn keep_count(total: usize, eps: f64) -> Result<usize> {
    let eps = BigRational::from_decimal(eps).ok_or_else(|| Error::arg("non-finite fraction"))?;
    let one = BigRational::from_integer(1.into());
    let keep = ((one - eps) * BigRational::from_integer(total.into())).ceil();
    keep.to_integer().to_usize().ok_or_else(|| Error::internal("keep count overflow"))
}

/// A complete hypergraph with one of the extremal colorings.
#[derive(Clone, Debug)]
pub struct ColoredConstruction {
    pub graph: Hypergraph,
    pub coloring: Coloring,
    /// Vertex classes of the construction.
    pub parts: Partition,
}

/// `K^k_n` split into `k+1` equal blocks; each edge gets the smallest `i`
/// whose block `V_i` it misses, so color `i` never touches `V_i`.
pub fn extremal_component_coloring(k: usize, n: usize) -> Result<ColoredConstruction> {
    if k < 2 || !n.is_multiple_of(k + 1) || n == 0 {
        return Err(Error::arg(format!("need k >= 2 and (k+1) | n, got k = {k}, n = {n}")));
    }
    let graph = complete(k, n)?;
    let parts = Partition::equipartition(n, k + 1)?;
    let block = n / (k + 1);
    let colors = graph
        .edges()
        .map(|e| {
            let mut hit = vec![false; k + 1];
            for &v in e {
                hit[v as usize / block] = true;
            }
            hit.iter().position(|&h| !h).expect("k vertices miss one of k+1 blocks") as Color + 1
        })
        .collect();
    let coloring = Coloring::new(k as Color + 1, colors)?;
    Ok(ColoredConstruction { graph, coloring, parts })
}

/// `K^k_n` with red (color 1) on the edges inside `S = {0, …, s-1}`,
/// `s = (2k-2) n / (2k-1)`, and blue (color 2) elsewhere.
pub fn extremal_cycle_coloring(k: usize, n: usize) -> Result<ColoredConstruction> {
    if k < 2 || !n.is_multiple_of(2 * k - 1) || n == 0 {
        return Err(Error::arg(format!("need k >= 2 and (2k-1) | n, got k = {k}, n = {n}")));
    }
    let graph = complete(k, n)?;
    let s = (2 * k - 2) * n / (2 * k - 1);
    let colors = graph
        .edges()
        .map(|e| if (e[k - 1] as usize) < s { 1 } else { 2 })
        .collect();
    let coloring = Coloring::new(2, colors)?;
    let parts = Partition::new(n, vec![(0..s as Vertex).collect(), (s as Vertex..n as Vertex).collect()])?;
    Ok(ColoredConstruction { graph, coloring, parts })
}

/// Random k-partite hypergraph on consecutive blocks of the given sizes; each
/// transversal k-set is an edge with probability `density`.
pub fn k_partite(k: usize, sizes: &[usize], density: f64, seed: Seed) -> Result<(Hypergraph, Partition)> {
    if sizes.len() != k {
        return Err(Error::arg(format!("{} part sizes given for k = {k}", sizes.len())));
    }
    if k < 2 {
        return Err(Error::arg("uniformity must be at least 2"));
    }
    check_probability(density, "density")?;
    let n: usize = sizes.iter().sum();
    let mut parts = Vec::with_capacity(k);
    let mut start = 0 as Vertex;
    for &s in sizes {
        parts.push((start..start + s as Vertex).collect::<Vec<_>>());
        start += s as Vertex;
    }
    let mut rng = stream_rng(seed, 0);
    let mut flat = Vec::new();
    if sizes.iter().all(|&s| s > 0) {
        let mut idx = vec![0usize; k];
        'odometer: loop {
            if unit_f64(&mut rng) < density {
                flat.extend((0..k).map(|i| parts[i][idx[i]]));
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break 'odometer;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < sizes[i] {
                    break;
                }
                idx[i] = 0;
            }
        }
    }
    let graph = Hypergraph::from_sorted(k, n, flat);
    Ok((graph, Partition::new(n, parts)?))
}

/// Replaces each vertex of `cluster` by a block of `m` vertices and each
/// edge by every transversal k-set of its blocks.
pub fn blow_up(cluster: &Hypergraph, m: usize) -> Result<(Hypergraph, Partition)> {
    let (k, t) = (cluster.k(), cluster.n());
    if m == 0 {
        return Err(Error::arg("blocks must be nonempty"));
    }
    let mut edges = Vec::new();
    for tuple in cluster.edges() {
        let mut pick = vec![0usize; k];
        loop {
            edges.push(
                tuple
                    .iter()
                    .zip(&pick)
                    .map(|(&c, &i)| (c as usize * m + i) as Vertex)
                    .collect::<Vec<_>>(),
            );
            let Some(j) = (0..k).rev().find(|&j| pick[j] + 1 < m) else { break };
            pick[j] += 1;
            pick[j + 1..].iter_mut().for_each(|x| *x = 0);
        }
    }
    let n = t * m;
    Ok((Hypergraph::new(k, n, edges)?, Partition::equipartition(n, t)?))
}
