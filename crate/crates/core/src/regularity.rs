//! p-scaled densities, budgeted regularity falsification, upper uniformity,
//! a heuristic partition refiner, cluster graphs with majority colors, and
//! the component lemma for dense k-partite tuples.
//!
//! A regularity PASS only means that no violating sub-tuple was found within
//! the budget. FAIL verdicts always carry a witness that can be recounted.

use std::collections::HashMap;

use num_rational::BigRational;
use rand::seq::{index, SliceRandom};
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::dsu::DisjointSet;
use crate::error::{Error, Result};
use crate::generators::{stream_rng, KSets, Partition, Seed};
use crate::hypergraph::{Color, Coloring, Hypergraph, Vertex};
use crate::scalar::{binomial, Scalar};

/// Transversal edge count of a tuple of disjoint vertex sets.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityRecord<S> {
    /// Part ids (positions in the caller's tuple or partition).
    pub parts: Vec<usize>,
    pub sizes: Vec<usize>,
    pub edges: u64,
    /// `edges / (p · Π sizes)`, zero for an empty product.
    pub d_p: S,
}

impl<S: Scalar> DensityRecord<S> {
    fn build(parts: Vec<usize>, sizes: Vec<usize>, edges: u64, p: &S) -> Self {
        let product: u128 = sizes.iter().map(|&s| s as u128).product();
        let d_p = if product == 0 {
            S::zero()
        } else {
            S::from_u64(edges).expect("count") / (p.clone() * S::from_u128(product).expect("product"))
        };
        Self {
            parts,
            sizes,
            edges,
            d_p,
        }
    }

    pub fn product(&self) -> u128 {
        self.sizes.iter().map(|&s| s as u128).product()
    }
}

/// Transversal edges of a tuple, stored as per-part local indices.
struct Transversal {
    k: usize,
    sizes: Vec<usize>,
    local: Vec<u32>,
}

impl Transversal {
    fn new(h: &Hypergraph, sets: &[Vec<Vertex>]) -> Result<Self> {
        let k = h.k();
        if sets.len() != k {
            return Err(Error::arg(format!("{} sets given for a {k}-uniform hypergraph", sets.len())));
        }
        let mut slot = vec![(u32::MAX, 0u32); h.n()];
        for (i, set) in sets.iter().enumerate() {
            for (j, &v) in set.iter().enumerate() {
                let cell = slot
                    .get_mut(v as usize)
                    .ok_or_else(|| Error::arg(format!("vertex {v} out of range")))?;
                if cell.0 != u32::MAX {
                    return Err(Error::arg(format!("vertex {v} lies in more than one set")));
                }
                *cell = (i as u32, j as u32);
            }
        }
        let mut local = Vec::new();
        let mut row = vec![0u32; k];
        // every transversal edge meets sets[0] exactly once
        for &v in sets.first().map(Vec::as_slice).unwrap_or(&[]) {
            'edges: for &e in h.incident(v) {
                let mut seen = vec![false; k];
                for &w in h.edge(e) {
                    let (part, idx) = slot[w as usize];
                    if part == u32::MAX || seen[part as usize] {
                        continue 'edges;
                    }
                    seen[part as usize] = true;
                    row[part as usize] = idx;
                }
                local.extend_from_slice(&row);
            }
        }
        Ok(Self {
            k,
            sizes: sets.iter().map(Vec::len).collect(),
            local,
        })
    }

    fn rows(&self) -> std::slice::ChunksExact<'_, u32> {
        self.local.chunks_exact(self.k.max(1))
    }

    fn count(&self) -> u64 {
        (self.local.len() / self.k.max(1)) as u64
    }

    fn count_in(&self, member: &[Vec<bool>]) -> u64 {
        self.rows()
            .filter(|row| row.iter().enumerate().all(|(i, &x)| member[i][x as usize]))
            .count() as u64
    }
}

/// Exact transversal count and p-scaled density of `sets`.
pub fn density<S: Scalar>(h: &Hypergraph, sets: &[Vec<Vertex>], p: S) -> Result<DensityRecord<S>> {
    if p <= S::zero() {
        return Err(Error::arg("p must be positive"));
    }
    let tr = Transversal::new(h, sets)?;
    Ok(DensityRecord::build((0..sets.len()).collect(), tr.sizes.clone(), tr.count(), &p))
}

/// Outcome of [`regularity_falsifier`].
#[derive(Clone, Debug, PartialEq)]
pub enum RegularityVerdict<S> {
    /// No violation among `checked` sub-tuples.
    Pass { checked: u64, exhaustive: bool },
    /// `witness` has `|d_p(W) - d_p(U)| = deviation > ε`.
    Fail { witness: Vec<Vec<Vertex>>, deviation: S },
}

impl<S> RegularityVerdict<S> {
    pub fn passed(&self) -> bool {
        matches!(self, RegularityVerdict::Pass { .. })
    }
}

struct Falsifier<'a, S> {
    tr: &'a Transversal,
    sets: &'a [Vec<Vertex>],
    eps: S,
    p: S,
    base: S,
    need: u128,
}

impl<S: Scalar> Falsifier<'_, S> {
    /// Deviation of the sub-tuple if admissible and violating.
    fn test(&self, member: &[Vec<bool>]) -> Option<S> {
        let sizes: Vec<u128> = member.iter().map(|m| m.iter().filter(|&&b| b).count() as u128).collect();
        let product: u128 = sizes.iter().product();
        if product == 0 || product < self.need {
            return None;
        }
        let e = self.tr.count_in(member);
        let d = S::from_u64(e).expect("count") / (self.p.clone() * S::from_u128(product).expect("product"));
        let dev = (d - self.base.clone()).abs();
        (dev > self.eps).then_some(dev)
    }

    fn witness(&self, member: &[Vec<bool>]) -> Vec<Vec<Vertex>> {
        self.sets
            .iter()
            .zip(member)
            .map(|(set, m)| set.iter().zip(m).filter(|(_, &b)| b).map(|(&v, _)| v).collect())
            .collect()
    }
}

/// Searches for sub-tuples `W_i ⊆ U_i` with `Π|W_i| ≥ ε Π|U_i|` whose
/// density deviates from the tuple's by more than `ε`.
///
/// All sub-tuples are tried when there are at most `budget` of them.
/// Otherwise the search tries degree-sorted halves of each part, then random
/// half-size and threshold-size sub-tuples drawn from `seed`.
pub fn regularity_falsifier<S: Scalar>(
    h: &Hypergraph,
    sets: &[Vec<Vertex>],
    eps: S,
    p: S,
    budget: u64,
    seed: Seed,
) -> Result<RegularityVerdict<S>> {
    if budget == 0 {
        return Err(Error::arg("budget must be at least 1"));
    }
    if eps <= S::zero() {
        return Err(Error::arg("ε must be positive"));
    }
    let base = density(h, sets, p.clone())?.d_p;
    let tr = Transversal::new(h, sets)?;
    let product: u128 = tr.sizes.iter().map(|&s| s as u128).product();
    if product == 0 {
        return Ok(RegularityVerdict::Pass {
            checked: 0,
            exhaustive: true,
        });
    }
    let need = (eps.clone() * S::from_u128(product).expect("product"))
        .ceil_count()
        .map_or(u128::MAX, u128::from);
    let f = Falsifier {
        tr: &tr,
        sets,
        eps,
        p,
        base,
        need,
    };
    let k = tr.k;

    let total = tr
        .sizes
        .iter()
        .try_fold(1u128, |acc, &s| if s > 32 { None } else { acc.checked_mul((1u128 << s) - 1) });
    if let Some(total) = total.filter(|&t| t <= budget as u128) {
        let mut masks = vec![1u64; k];
        let mut member: Vec<Vec<bool>> = tr.sizes.iter().map(|&s| vec![false; s]).collect();
        let mut checked = 0;
        loop {
            for i in 0..k {
                for (j, slot) in member[i].iter_mut().enumerate() {
                    *slot = masks[i] >> j & 1 == 1;
                }
            }
            checked += 1;
            if let Some(deviation) = f.test(&member) {
                return Ok(RegularityVerdict::Fail {
                    witness: f.witness(&member),
                    deviation,
                });
            }
            let mut i = k;
            loop {
                if i == 0 {
                    debug_assert_eq!(checked as u128, total);
                    return Ok(RegularityVerdict::Pass {
                        checked,
                        exhaustive: true,
                    });
                }
                i -= 1;
                masks[i] += 1;
                if masks[i] < 1u64 << tr.sizes[i] {
                    break;
                }
                masks[i] = 1;
            }
        }
    }

    let mut checked = 0u64;
    let full: Vec<Vec<bool>> = tr.sizes.iter().map(|&s| vec![true; s]).collect();
    let mut degree: Vec<Vec<u64>> = tr.sizes.iter().map(|&s| vec![0; s]).collect();
    for row in tr.rows() {
        for (i, &x) in row.iter().enumerate() {
            degree[i][x as usize] += 1;
        }
    }
    for i in 0..k {
        let s = tr.sizes[i];
        if s < 2 {
            continue;
        }
        let mut order: Vec<usize> = (0..s).collect();
        order.sort_by(|&a, &b| degree[i][b].cmp(&degree[i][a]).then(a.cmp(&b)));
        let split = s.div_ceil(2);
        for half in [&order[..split], &order[split..]] {
            if checked >= budget {
                break;
            }
            let mut member = full.clone();
            member[i] = vec![false; s];
            for &x in half {
                member[i][x] = true;
            }
            checked += 1;
            if let Some(deviation) = f.test(&member) {
                return Ok(RegularityVerdict::Fail {
                    witness: f.witness(&member),
                    deviation,
                });
            }
        }
    }

    let root = f.eps.as_f64().powf(1.0 / k as f64);
    let mut sample = 0u64;
    while checked < budget {
        let mut rng = stream_rng(seed, sample);
        let mut sizes: Vec<usize> = if sample.is_multiple_of(2) {
            tr.sizes.iter().map(|&s| s.div_ceil(2)).collect()
        } else {
            tr.sizes.iter().map(|&s| ((root * s as f64).ceil() as usize).clamp(1, s)).collect()
        };
        let mut bump = 0;
        while sizes.iter().map(|&w| w as u128).product::<u128>() < need {
            let i = bump % k;
            sizes[i] = (sizes[i] + 1).min(tr.sizes[i]);
            bump += 1;
        }
        let member: Vec<Vec<bool>> = tr
            .sizes
            .iter()
            .zip(&sizes)
            .map(|(&s, &w)| {
                let mut m = vec![false; s];
                for x in index::sample(&mut rng, s, w) {
                    m[x] = true;
                }
                m
            })
            .collect();
        sample += 1;
        checked += 1;
        if let Some(deviation) = f.test(&member) {
            return Ok(RegularityVerdict::Fail {
                witness: f.witness(&member),
                deviation,
            });
        }
    }
    Ok(RegularityVerdict::Pass {
        checked,
        exhaustive: false,
    })
}

/// Result of [`upper_uniformity_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct UniformityReport<S> {
    pub pass: bool,
    pub max_dp: S,
    /// The tuple attaining `max_dp`; empty if nothing was checked.
    pub worst: Vec<Vec<Vertex>>,
    pub exhaustive: bool,
    pub checked: u64,
}

/// Checks `d_p(U_1, …, U_k) ≤ D` over disjoint tuples with every
/// `|U_i| ≥ η n`.
///
/// When `(k+1)^n ≤ budget` every assignment of vertices to the k sets (or
/// to none) is examined; otherwise `budget` random tuples of minimum size are
/// drawn, since small sets show the largest fluctuations.
pub fn upper_uniformity_check<S: Scalar>(
    h: &Hypergraph,
    eta: f64,
    p: S,
    d: S,
    budget: u64,
    seed: Seed,
) -> Result<UniformityReport<S>> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::arg("η must lie in (0, 1]"));
    }
    if p <= S::zero() {
        return Err(Error::arg("p must be positive"));
    }
    let (k, n) = (h.k(), h.n());
    let min_size = (eta * n as f64 - 1e-9).ceil().max(1.0) as usize;
    let mut report = UniformityReport {
        pass: true,
        max_dp: S::zero(),
        worst: Vec::new(),
        exhaustive: true,
        checked: 0,
    };
    if k * min_size > n {
        return Ok(report);
    }
    let consider = |sets: Vec<Vec<Vertex>>, report: &mut UniformityReport<S>| -> Result<()> {
        let rec = density(h, &sets, p.clone())?;
        report.checked += 1;
        if report.worst.is_empty() || rec.d_p > report.max_dp {
            report.max_dp = rec.d_p;
            report.worst = sets;
        }
        Ok(())
    };
    let exhaustive = (k as f64 + 1.0).powi(n as i32) <= budget as f64;
    if exhaustive {
        let mut label = vec![0usize; n];
        loop {
            let mut sets = vec![Vec::new(); k];
            for (v, &l) in label.iter().enumerate() {
                if l > 0 {
                    sets[l - 1].push(v as Vertex);
                }
            }
            if sets.iter().all(|s| s.len() >= min_size) {
                consider(sets, &mut report)?;
            }
            let mut i = 0;
            loop {
                if i == n {
                    report.pass = report.max_dp <= d;
                    return Ok(report);
                }
                label[i] += 1;
                if label[i] <= k {
                    break;
                }
                label[i] = 0;
                i += 1;
            }
        }
    }
    report.exhaustive = false;
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    for s in 0..budget {
        let mut rng = stream_rng(seed, s);
        order.shuffle(&mut rng);
        let sets = (0..k).map(|i| order[i * min_size..(i + 1) * min_size].to_vec()).collect();
        consider(sets, &mut report)?;
    }
    report.pass = report.max_dp <= d;
    Ok(report)
}

/// `2 exp(-γ² μ / 3)`, valid for `γ ≤ 3/2`.
pub fn chernoff_bound(mean: f64, gamma: f64) -> Result<f64> {
    if !(0.0..=1.5).contains(&gamma) {
        return Err(Error::window(format!("γ = {gamma} outside [0, 3/2]")));
    }
    if mean.is_nan() || mean < 0.0 {
        return Err(Error::arg("mean must be non-negative"));
    }
    Ok(2.0 * (-gamma * gamma * mean / 3.0).exp())
}

/// Number of `trials` draws of `Bin(n, q)` with `|X - nq| ≥ γ nq`; draw `i`
/// uses stream `i` of `seed`.
pub fn count_deviations(trials: u64, n: u64, q: f64, gamma: f64, seed: Seed) -> Result<u64> {
    let dist = Binomial::new(n, q).map_err(|e| Error::arg(e.to_string()))?;
    let mean = n as f64 * q;
    Ok((0..trials)
        .into_par_iter()
        .filter(|&i| {
            let x = dist.sample(&mut stream_rng(seed, i)) as f64;
            (x - mean).abs() >= gamma * mean
        })
        .count() as u64)
}

/// Settings for [`refine_partition`].
#[derive(Clone, Debug)]
pub struct RefineOptions {
    pub t: usize,
    pub eps: f64,
    pub p: f64,
    pub restarts: usize,
    pub seed: Seed,
    /// Falsifier budget per tuple and color.
    pub budget: u64,
    /// Swap attempts per restart.
    pub moves: usize,
}

/// Outcome of [`refine_partition`].
#[derive(Clone, Debug)]
pub struct Refinement {
    pub partition: Partition,
    pub irregular_fraction: f64,
    /// Score of the consecutive equipartition the first restart starts from.
    pub baseline_fraction: f64,
    /// Set when the tuple family is vacuous (`t = n` or `t < k`).
    pub degenerate: bool,
}

fn irregular_fraction(classes: &[Hypergraph], parts: &[Vec<Vertex>], opts: &RefineOptions) -> Result<f64> {
    let k = classes[0].k();
    let tuples: Vec<Vec<Vertex>> = KSets::new(parts.len(), k).collect();
    if tuples.is_empty() {
        return Ok(0.0);
    }
    let bad: Result<Vec<bool>> = tuples
        .par_iter()
        .enumerate()
        .map(|(rank, tuple)| {
            let sets: Vec<Vec<Vertex>> = tuple.iter().map(|&i| parts[i as usize].clone()).collect();
            for class in classes {
                let verdict = regularity_falsifier(class, &sets, opts.eps, opts.p, opts.budget, Seed(opts.seed.0 ^ rank as u64))?;
                if !verdict.passed() {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect();
    let bad = bad?;
    Ok(bad.iter().filter(|&&b| b).count() as f64 / tuples.len() as f64)
}

/// Heuristic equipartition refinement: swap hill-climbing on the fraction of
/// part tuples that fail the falsifier in some color class, best of
/// `restarts` starts. Nothing guarantees the result is `ε`-regular.
pub fn refine_partition(h: &Hypergraph, coloring: &Coloring, opts: &RefineOptions) -> Result<Refinement> {
    coloring.check_for(h)?;
    let (n, t, k) = (h.n(), opts.t, h.k());
    if t == 0 || t > n {
        return Err(Error::arg(format!("need 1 <= t <= n, got t = {t}")));
    }
    let start = Partition::equipartition(n, t)?;
    if t == n || t < k {
        return Ok(Refinement {
            partition: start,
            irregular_fraction: 0.0,
            baseline_fraction: 0.0,
            degenerate: true,
        });
    }
    let classes: Vec<Hypergraph> = (1..=coloring.r())
        .map(|c| h.filter_edges(|i, _| coloring.color(i) == c).0)
        .collect();
    let baseline = irregular_fraction(&classes, start.parts(), opts)?;
    let mut best = (start.parts().to_vec(), baseline);
    for restart in 0..opts.restarts.max(1) {
        let mut rng = stream_rng(opts.seed, restart as u64);
        let mut parts = if restart == 0 {
            start.parts().to_vec()
        } else {
            let mut order: Vec<Vertex> = (0..n as Vertex).collect();
            order.shuffle(&mut rng);
            let mut at = 0;
            start
                .parts()
                .iter()
                .map(|p| {
                    let chunk = order[at..at + p.len()].to_vec();
                    at += p.len();
                    chunk
                })
                .collect()
        };
        let mut score = irregular_fraction(&classes, &parts, opts)?;
        for _ in 0..opts.moves {
            if score == 0.0 {
                break;
            }
            let (a, b) = {
                let a = rand::Rng::random_range(&mut rng, 0..t);
                let mut b = rand::Rng::random_range(&mut rng, 0..t - 1);
                if b >= a {
                    b += 1;
                }
                (a, b)
            };
            let i = rand::Rng::random_range(&mut rng, 0..parts[a].len());
            let j = rand::Rng::random_range(&mut rng, 0..parts[b].len());
            let (va, vb) = (parts[a][i], parts[b][j]);
            parts[a][i] = vb;
            parts[b][j] = va;
            let next = irregular_fraction(&classes, &parts, opts)?;
            if next <= score {
                score = next;
            } else {
                parts[a][i] = va;
                parts[b][j] = vb;
            }
        }
        if score < best.1 {
            best = (parts, score);
        }
    }
    Ok(Refinement {
        partition: Partition::new(n, best.0)?,
        irregular_fraction: best.1,
        baseline_fraction: baseline,
        degenerate: false,
    })
}

/// Which tuples become cluster edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    /// Majority-color `d_p ≥ 1/(2r) - ε`.
    DensityThreshold,
    /// The falsifier finds no violation in the tuple, neither in the whole
    /// hypergraph nor in its majority color class.
    Falsifier { budget: u64, seed: Seed },
}

/// One edge of a [`ClusterGraph`].
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterEdge<S> {
    pub tuple: Vec<usize>,
    /// Transversal edges per color, index `c - 1`.
    pub color_counts: Vec<u64>,
    pub majority: Color,
    pub total: DensityRecord<S>,
    pub majority_record: DensityRecord<S>,
}

/// k-uniform graph on the parts of a partition.
#[derive(Clone, Debug)]
pub struct ClusterGraph<S> {
    /// Vertices are part indices; edges in canonical order.
    pub graph: Hypergraph,
    /// Majority colors, aligned with `graph`'s edges.
    pub coloring: Coloring,
    /// Records aligned with `graph`'s edges.
    pub edges: Vec<ClusterEdge<S>>,
    /// Tuples rejected by the falsifier gate (empty for the density gate).
    pub irregular: Vec<Vec<usize>>,
}

/// Cluster graph of `h` over `partition`. A tuple with no transversal edges
/// never becomes an edge.
pub fn build_cluster_graph<S: Scalar + Send + Sync>(
    h: &Hypergraph,
    coloring: &Coloring,
    partition: &Partition,
    eps: S,
    p: S,
    gate: Gate,
) -> Result<ClusterGraph<S>> {
    coloring.check_for(h)?;
    if partition.n() != h.n() {
        return Err(Error::arg("partition and hypergraph disagree on n"));
    }
    if p <= S::zero() {
        return Err(Error::arg("p must be positive"));
    }
    let (k, t, r) = (h.k(), partition.len(), coloring.r());
    let labels = partition.labels();
    let mut counts: HashMap<Vec<Vertex>, Vec<u64>> = HashMap::new();
    for (i, e) in h.edges().enumerate() {
        let mut key: Vec<Vertex> = e.iter().map(|&v| labels[v as usize] as Vertex).collect();
        key.sort_unstable();
        if key.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        counts.entry(key).or_insert_with(|| vec![0; r as usize])[coloring.color(i) as usize - 1] += 1;
    }
    let classes: Vec<Hypergraph> = match gate {
        Gate::Falsifier { .. } => (1..=r).map(|c| h.filter_edges(|i, _| coloring.color(i) == c).0).collect(),
        Gate::DensityThreshold => Vec::new(),
    };
    let gate_floor = S::one() / S::from_count(2 * r as u64) - eps.clone();
    let tuples: Vec<Vec<Vertex>> = KSets::new(t, k).collect();
    let outcomes: Result<Vec<Option<(Option<ClusterEdge<S>>, bool)>>> = tuples
        .par_iter()
        .enumerate()
        .map(|(rank, tuple)| {
            let Some(per_color) = counts.get(tuple) else {
                return Ok(None);
            };
            let total: u64 = per_color.iter().sum();
            let (best_idx, &best) = per_color
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                .expect("r >= 1");
            if best * (r as u64) < total {
                return Err(Error::internal("majority color below average"));
            }
            let ids: Vec<usize> = tuple.iter().map(|&i| i as usize).collect();
            let sizes: Vec<usize> = ids.iter().map(|&i| partition.part(i).len()).collect();
            let edge = ClusterEdge {
                tuple: ids.clone(),
                color_counts: per_color.clone(),
                majority: best_idx as Color + 1,
                total: DensityRecord::build(ids.clone(), sizes.clone(), total, &p),
                majority_record: DensityRecord::build(ids.clone(), sizes, best, &p),
            };
            let admitted = match gate {
                Gate::DensityThreshold => edge.majority_record.d_p >= gate_floor,
                Gate::Falsifier { budget, seed } => {
                    let sets: Vec<Vec<Vertex>> = ids.iter().map(|&i| partition.part(i).to_vec()).collect();
                    let tuple_seed = Seed(seed.0 ^ rank as u64);
                    regularity_falsifier(h, &sets, eps.clone(), p.clone(), budget, tuple_seed)?.passed()
                        && regularity_falsifier(&classes[best_idx], &sets, eps.clone(), p.clone(), budget, tuple_seed)?
                            .passed()
                }
            };
            let rejected = !admitted && matches!(gate, Gate::Falsifier { .. });
            Ok(Some((admitted.then_some(edge), rejected)))
        })
        .collect();
    let mut flat = Vec::new();
    let mut colors = Vec::new();
    let mut edges = Vec::new();
    let mut irregular = Vec::new();
    for (tuple, outcome) in tuples.iter().zip(outcomes?) {
        match outcome {
            Some((Some(edge), _)) => {
                flat.extend_from_slice(tuple);
                colors.push(edge.majority);
                edges.push(edge);
            }
            Some((None, true)) => irregular.push(tuple.iter().map(|&i| i as usize).collect()),
            _ => {}
        }
    }
    Ok(ClusterGraph {
        graph: Hypergraph::from_sorted(k, t, flat),
        coloring: Coloring::new(r, colors)?,
        edges,
        irregular,
    })
}

/// How the hypothesis of [`regular_tuple_component`] was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub exhaustive: bool,
    /// Number of subset tuples examined.
    pub checked: u64,
}

/// Outcome of [`regular_tuple_component`].
#[derive(Clone, Debug, PartialEq)]
pub enum TupleComponent {
    /// A component meeting every part in at least `(1-ε)|V_i|` vertices.
    Component {
        vertices: Vec<Vertex>,
        per_part: Vec<usize>,
        hypothesis: HypothesisCheck,
    },
    /// Sets `U_i ⊆ V_i` with `|U_i| ≥ ε|V_i|` spanning no transversal edge.
    Counterexample {
        subsets: Vec<Vec<Vertex>>,
        hypothesis: HypothesisCheck,
    },
}

fn ceil_times(eps: &BigRational, size: usize) -> usize {
    (eps * BigRational::from_integer(size.into()))
        .ceil_count()
        .expect("non-negative") as usize
}

/// Searches for `U_i ⊆ V_i` of sizes `need_i` with no transversal edge.
fn hypothesis_violation(
    tr: &Transversal,
    need: &[usize],
    budget: u64,
    seed: Seed,
) -> (Option<Vec<Vec<usize>>>, HypothesisCheck) {
    let k = tr.k;
    let rows: Vec<&[u32]> = tr.rows().collect();
    // the last part is decided in one step from the surviving edges
    let last_choice = |alive: &[&[u32]]| -> Option<Vec<usize>> {
        let mut hit = vec![false; tr.sizes[k - 1]];
        for row in alive {
            hit[row[k - 1] as usize] = true;
        }
        let free: Vec<usize> = (0..hit.len()).filter(|&x| !hit[x]).collect();
        (free.len() >= need[k - 1]).then(|| free[..need[k - 1]].to_vec())
    };
    let combos: u128 = (0..k - 1).fold(1u128, |acc, i| {
        acc.saturating_mul(binomial(tr.sizes[i] as u64, need[i] as u64))
    });
    if combos <= budget as u128 {
        fn recurse(
            level: usize,
            alive: Vec<&[u32]>,
            chosen: &mut Vec<Vec<usize>>,
            sizes: &[usize],
            need: &[usize],
            checked: &mut u64,
            last: &dyn Fn(&[&[u32]]) -> Option<Vec<usize>>,
        ) -> bool {
            if level == sizes.len() - 1 {
                *checked += 1;
                if let Some(tail) = last(&alive) {
                    chosen.push(tail);
                    return true;
                }
                return false;
            }
            for combo in KSets::new(sizes[level], need[level]) {
                let mut inside = vec![false; sizes[level]];
                for &x in &combo {
                    inside[x as usize] = true;
                }
                let next: Vec<&[u32]> = alive.iter().copied().filter(|row| inside[row[level] as usize]).collect();
                chosen.push(combo.iter().map(|&x| x as usize).collect());
                if recurse(level + 1, next, chosen, sizes, need, checked, last) {
                    return true;
                }
                chosen.pop();
            }
            false
        }
        let mut chosen = Vec::new();
        let mut checked = 0;
        let found = recurse(0, rows, &mut chosen, &tr.sizes, need, &mut checked, &last_choice);
        let check = HypothesisCheck {
            exhaustive: true,
            checked,
        };
        return (found.then_some(chosen), check);
    }
    for s in 0..budget {
        let mut rng = stream_rng(seed, s);
        let mut alive = rows.clone();
        let mut chosen = Vec::with_capacity(k);
        for i in 0..k - 1 {
            let pick = index::sample(&mut rng, tr.sizes[i], need[i]).into_vec();
            let mut inside = vec![false; tr.sizes[i]];
            for &x in &pick {
                inside[x] = true;
            }
            alive.retain(|row| inside[row[i] as usize]);
            chosen.push(pick);
        }
        if let Some(tail) = last_choice(&alive) {
            chosen.push(tail);
            return (
                Some(chosen),
                HypothesisCheck {
                    exhaustive: false,
                    checked: s + 1,
                },
            );
        }
    }
    (
        None,
        HypothesisCheck {
            exhaustive: false,
            checked: budget,
        },
    )
}

/// For a k-partite `g` on `parts` in which every choice of `U_i ⊆ V_i` with
/// `|U_i| ≥ ε|V_i|` spans an edge, finds a component meeting each `V_i` in at
/// least `(1-ε)|V_i|` vertices.
///
/// The hypothesis is checked on subsets of size `⌈ε|V_i|⌉`: exhaustively
/// when at most `budget` choices of the first `k-1` subsets exist, otherwise
/// on `budget` random choices. The component is then built following the
/// classical argument through sets `X_i` of size `⌈3ε|V_i|⌉`; whenever that
/// argument gets stuck it yields an edge-free family, which is returned.
pub fn regular_tuple_component(
    g: &Hypergraph,
    parts: &[Vec<Vertex>],
    eps: f64,
    budget: u64,
    seed: Seed,
) -> Result<TupleComponent> {
    if !(eps > 0.0 && eps < 1.0 / 3.0) {
        return Err(Error::window("requires 0 < ε < 1/3"));
    }
    let tr = Transversal::new(g, parts)?;
    let k = tr.k;
    if k < 2 || parts.iter().any(Vec::is_empty) {
        return Err(Error::arg("need k >= 2 non-empty parts"));
    }
    let eps_q = BigRational::from_decimal(eps).ok_or_else(|| Error::arg("ε must be finite"))?;
    let need: Vec<usize> = parts.iter().map(|p| ceil_times(&eps_q, p.len())).collect();
    let to_global = |local: &[Vec<usize>]| -> Vec<Vec<Vertex>> {
        local
            .iter()
            .enumerate()
            .map(|(i, xs)| {
                let mut vs: Vec<Vertex> = xs.iter().map(|&x| parts[i][x]).collect();
                vs.sort_unstable();
                vs
            })
            .collect()
    };
    let (violation, hypothesis) = hypothesis_violation(&tr, &need, budget, seed);
    if let Some(local) = violation {
        return Ok(TupleComponent::Counterexample {
            subsets: to_global(&local),
            hypothesis,
        });
    }

    let certify = |subsets: Vec<Vec<Vertex>>| -> Result<TupleComponent> {
        let sizes_ok = subsets.iter().zip(&need).all(|(s, &w)| s.len() >= w);
        if !sizes_ok || Transversal::new(g, &subsets)?.count() != 0 {
            return Err(Error::internal("component construction produced an invalid certificate"));
        }
        Ok(TupleComponent::Counterexample { subsets, hypothesis })
    };

    // X_i: the first ⌈3ε|V_i|⌉ vertices of each part
    let three_eps = &eps_q * BigRational::from_integer(3.into());
    let x_len: Vec<usize> = parts.iter().map(|p| ceil_times(&three_eps, p.len()).min(p.len())).collect();
    let total: usize = tr.sizes.iter().sum();
    let offset: Vec<usize> = tr
        .sizes
        .iter()
        .scan(0, |acc, &s| {
            let here = *acc;
            *acc += s;
            Some(here)
        })
        .collect();
    let id = |part: usize, x: u32| (offset[part] + x as usize) as u32;
    let mut inner = DisjointSet::new(total);
    let mut whole = DisjointSet::new(total);
    for row in tr.rows() {
        for i in 1..k {
            whole.union(id(0, row[0]), id(i, row[i]));
        }
        if row.iter().enumerate().all(|(i, &x)| (x as usize) < x_len[i]) {
            for i in 1..k {
                inner.union(id(0, row[0]), id(i, row[i]));
            }
        }
    }
    // components of G' with their X_i-counts, ordered by first vertex
    let mut comp_of: HashMap<u32, usize> = HashMap::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut members: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut label: Vec<Vec<usize>> = x_len.iter().map(|&l| vec![0; l]).collect();
    for i in 0..k {
        for x in 0..x_len[i] {
            let root = inner.find(id(i, x as u32));
            let c = *comp_of.entry(root).or_insert_with(|| {
                comps.push(vec![0; k]);
                members.push(Vec::new());
                comps.len() - 1
            });
            comps[c][i] += 1;
            members[c].push((i, x));
            label[i][x] = c;
        }
    }
    let big = (0..comps.len()).find(|&c| (0..k).any(|i| comps[c][i] >= need[i]));
    let Some(big) = big else {
        // add components until some part reaches its quota; each part then
        // holds fewer than 2ε|V_i| of the union
        let mut in_union: Vec<Vec<bool>> = x_len.iter().map(|&l| vec![false; l]).collect();
        let mut acc = vec![0usize; k];
        let mut reached = None;
        for c in 0..comps.len() {
            for &(i, x) in &members[c] {
                in_union[i][x] = true;
                acc[i] += 1;
            }
            if let Some(l) = (0..k).find(|&i| acc[i] >= need[i]) {
                reached = Some(l);
                break;
            }
        }
        let l = reached.ok_or_else(|| Error::internal("X sets smaller than ε|V_i|"))?;
        let local: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..x_len[i]).filter(|&x| in_union[i][x] == (i == l)).collect())
            .collect();
        return certify(to_global(&local));
    };
    let in_big = |i: usize, x: usize| label[i][x] == big;
    if (0..k).any(|i| comps[big][i] < need[i]) {
        let local: Vec<Vec<usize>> = (0..k)
            .map(|i| {
                let keep_inside = comps[big][i] >= need[i];
                (0..x_len[i]).filter(|&x| in_big(i, x) == keep_inside).collect()
            })
            .collect();
        return certify(to_global(&local));
    }
    let (bi, bx) = members[big][0];
    let root = whole.find(id(bi, bx as u32));
    let in_whole: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..tr.sizes[i]).map(|x| whole.find(id(i, x as u32)) == root).collect())
        .collect();
    let per_part: Vec<usize> = in_whole.iter().map(|row| row.iter().filter(|&&b| b).count()).collect();
    let one_minus = BigRational::from_integer(1.into()) - &eps_q;
    if let Some(i) = (0..k).find(|&i| per_part[i] < ceil_times(&one_minus, tr.sizes[i])) {
        let local: Vec<Vec<usize>> = (0..k)
            .map(|j| {
                if j == i {
                    (0..tr.sizes[i]).filter(|&x| !in_whole[i][x]).collect()
                } else {
                    (0..x_len[j]).filter(|&x| in_big(j, x)).collect()
                }
            })
            .collect();
        return certify(to_global(&local));
    }
    let mut vertices: Vec<Vertex> = (0..k)
        .flat_map(|i| (0..tr.sizes[i]).map(move |x| (i, x)))
        .filter(|&(i, x)| in_whole[i][x])
        .map(|(i, x)| parts[i][x])
        .collect();
    vertices.sort_unstable();
    Ok(TupleComponent::Component {
        vertices,
        per_part,
        hypothesis,
    })
}
