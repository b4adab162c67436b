//! The law of `X = e(G[A])` for a uniformly random `k`-subset `A`.
//!
//! Exact counts come from walking all `k`-subsets in revolving-door order:
//! each step swaps one vertex, so the running edge count changes by the
//! swapped vertices' degrees into the current set. The rank sequence is cut
//! into fixed-size chunks (each chunk unranks its first subset), so the
//! histogram does not depend on how many worker threads run.

use std::ops::Range;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, binomial_u64, revolving_door_unrank, RevolvingDoor};
use crate::error::{precondition, Error, Result};
use crate::graph::{words_for, Graph};

/// Default cap on the number of subsets an exact enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

const CHUNK: u64 = 1 << 15;
const MC_BLOCK: u64 = 1 << 12;

#[inline]
pub fn max_edges(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

pub(crate) fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(precondition(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

/// Exact counts of `k`-subsets by number of induced edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDistribution {
    n: usize,
    k: usize,
    counts: Vec<BigUint>,
    total: BigUint,
}

impl EdgeDistribution {
    /// Wraps raw counts, checking that they sum to `C(n, k)`.
    pub fn from_counts(n: usize, k: usize, counts: Vec<BigUint>) -> Result<Self> {
        check_k(n, k)?;
        if counts.len() != max_edges(k) + 1 {
            return Err(precondition(format!(
                "expected {} count slots, got {}",
                max_edges(k) + 1,
                counts.len()
            )));
        }
        let total = binomial(n, k);
        let sum: BigUint = counts.iter().sum();
        if sum != total {
            return Err(precondition(format!(
                "counts sum to {sum}, expected C({n},{k}) = {total}"
            )));
        }
        Ok(Self {
            n,
            k,
            counts,
            total,
        })
    }

    fn from_histogram(n: usize, k: usize, hist: Vec<u64>) -> Self {
        let counts = hist.into_iter().map(BigUint::from).collect();
        Self::from_counts(n, k, counts).expect("histogram covers every subset")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `counts[l]` for `l` in `0..=C(k,2)`.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, l: usize) -> BigUint {
        self.counts.get(l).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// `P(X = l)` as an exact rational.
    pub fn probability_at(&self, l: usize) -> Result<BigRational> {
        if l > max_edges(self.k) {
            return Err(precondition(format!(
                "l = {l} exceeds C(k,2) = {}",
                max_edges(self.k)
            )));
        }
        Ok(BigRational::new(
            self.counts[l].clone().into(),
            self.total.clone().into(),
        ))
    }

    pub fn probability_f64(&self, l: usize) -> f64 {
        match self.probability_at(l) {
            Ok(p) => p.to_f64().unwrap_or(f64::NAN),
            Err(_) => 0.0,
        }
    }

    pub fn to_json(&self) -> DistributionJson {
        DistributionJson {
            n: self.n,
            k: self.k,
            total: self.total.to_string(),
            counts: self
                .counts
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, c)| CountEntry {
                    l,
                    count: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &DistributionJson) -> Result<Self> {
        check_k(json.n, json.k)?;
        let mut counts = vec![BigUint::zero(); max_edges(json.k) + 1];
        for e in &json.counts {
            let slot = counts
                .get_mut(e.l)
                .ok_or_else(|| precondition(format!("l = {} out of range", e.l)))?;
            *slot = e.count.parse().map_err(|_| {
                precondition(format!("count `{}` is not a decimal integer", e.count))
            })?;
        }
        let d = Self::from_counts(json.n, json.k, counts)?;
        if d.total.to_string() != json.total {
            return Err(precondition(format!(
                "total {} does not match C(n,k)",
                json.total
            )));
        }
        Ok(d)
    }
}

/// Wire form: decimal strings for counts, zero counts omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionJson {
    pub n: usize,
    pub k: usize,
    pub total: String,
    pub counts: Vec<CountEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountEntry {
    pub l: usize,
    pub count: String,
}

/// Number of `k`-subsets, or a budget refusal naming it.
pub fn subset_count_within(n: usize, k: usize, budget: u64) -> Result<u64> {
    match binomial_u64(n, k) {
        Some(c) if c <= budget => Ok(c),
        _ => Err(Error::BudgetExceeded {
            required: binomial(n, k),
            budget,
        }),
    }
}

pub fn exact_distribution(g: &Graph, k: usize) -> Result<EdgeDistribution> {
    exact_distribution_with_budget(g, k, DEFAULT_BUDGET)
}

pub fn exact_distribution_with_budget(
    g: &Graph,
    k: usize,
    budget: u64,
) -> Result<EdgeDistribution> {
    check_k(g.n(), k)?;
    let total = subset_count_within(g.n(), k, budget)?;
    let hist = edge_histogram(g, k, 0..total);
    Ok(EdgeDistribution::from_histogram(g.n(), k, hist))
}

/// Histogram of induced edge counts over the revolving-door ranks in `ranks`.
pub fn edge_histogram(g: &Graph, k: usize, ranks: Range<u64>) -> Vec<u64> {
    let bins = max_edges(k) + 1;
    if ranks.is_empty() {
        return vec![0; bins];
    }
    let chunks: Vec<Range<u64>> = (ranks.start..ranks.end)
        .step_by(CHUNK as usize)
        .map(|s| s..(s + CHUNK).min(ranks.end))
        .collect();
    chunks
        .into_par_iter()
        .map(|r| histogram_chunk(g, k, r))
        .reduce(
            || vec![0; bins],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn histogram_chunk(g: &Graph, k: usize, ranks: Range<u64>) -> Vec<u64> {
    let mut hist = vec![0u64; max_edges(k) + 1];
    let start = revolving_door_unrank(g.n(), k, ranks.start);
    let mut mask = vec![0u64; words_for(g.n())];
    for &v in &start {
        mask[v / 64] |= 1 << (v % 64);
    }
    let mut edges: usize = start
        .iter()
        .map(|&v| g.degree_into(v, &mask))
        .sum::<usize>()
        / 2;
    hist[edges] += 1;
    let mut door = RevolvingDoor::new(g.n(), k, &start);
    for _ in ranks.start + 1..ranks.end {
        let (out, inn) = door.step();
        mask[out / 64] &= !(1 << (out % 64));
        edges -= g.degree_into(out, &mask);
        edges += g.degree_into(inn, &mask);
        mask[inn / 64] |= 1 << (inn % 64);
        hist[edges] += 1;
    }
    hist
}

/// Reference enumerator: lexicographic subsets, edges recounted from scratch.
pub fn naive_distribution(g: &Graph, k: usize) -> Result<EdgeDistribution> {
    check_k(g.n(), k)?;
    let mut hist = vec![0u64; max_edges(k) + 1];
    let mut pick = Vec::with_capacity(k);
    fn rec(g: &Graph, k: usize, start: usize, pick: &mut Vec<usize>, hist: &mut [u64]) {
        if pick.len() == k {
            let mut e = 0;
            for i in 0..k {
                for j in (i + 1)..k {
                    e += g.has_edge(pick[i], pick[j]) as usize;
                }
            }
            hist[e] += 1;
            return;
        }
        for v in start..=(g.n() - (k - pick.len())) {
            pick.push(v);
            rec(g, k, v + 1, pick, hist);
            pick.pop();
        }
    }
    rec(g, k, 0, &mut pick, &mut hist);
    Ok(EdgeDistribution::from_histogram(g.n(), k, hist))
}

/// Monte Carlo estimate of the law of `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct McEstimate {
    pub n: usize,
    pub k: usize,
    pub samples: u64,
    pub seed: u64,
    pub hits: Vec<u64>,
}

impl McEstimate {
    pub fn estimate(&self, l: usize) -> f64 {
        self.hits
            .get(l)
            .map_or(0.0, |&h| h as f64 / self.samples as f64)
    }

    /// `sqrt(p̂ (1 - p̂) / samples)`.
    pub fn std_error(&self, l: usize) -> f64 {
        let p = self.estimate(l);
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }

    pub fn estimates(&self) -> Vec<f64> {
        (0..self.hits.len()).map(|l| self.estimate(l)).collect()
    }

    pub fn to_json(&self) -> McJson {
        McJson {
            n: self.n,
            k: self.k,
            samples: self.samples,
            seed: self.seed,
            estimates: self
                .hits
                .iter()
                .enumerate()
                .filter(|(_, &h)| h > 0)
                .map(|(l, &hits)| McEntry {
                    l,
                    hits,
                    p: self.estimate(l),
                    se: self.std_error(l),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McJson {
    pub n: usize,
    pub k: usize,
    pub samples: u64,
    pub seed: u64,
    pub estimates: Vec<McEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEntry {
    pub l: usize,
    pub hits: u64,
    pub p: f64,
    pub se: f64,
}

pub fn mc_distribution(g: &Graph, k: usize, samples: u64, seed: u64) -> Result<McEstimate> {
    check_k(g.n(), k)?;
    if samples == 0 {
        return Err(precondition("samples must be positive"));
    }
    let hits = mc_histogram(g, k, samples, seed, None);
    Ok(McEstimate {
        n: g.n(),
        k,
        samples,
        seed,
        hits,
    })
}

/// Sampled histogram of `X`; with `forced = Some(v)` the vertex `v` is always
/// in the sample and the other `k - 1` are drawn from `V \ {v}`.
///
/// Block `b` of `MC_BLOCK` samples draws from ChaCha8 stream `b` of `seed`.
pub(crate) fn mc_histogram(
    g: &Graph,
    k: usize,
    samples: u64,
    seed: u64,
    forced: Option<usize>,
) -> Vec<u64> {
    let bins = max_edges(k) + 1;
    let blocks = samples.div_ceil(MC_BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let len = MC_BLOCK.min(samples - b * MC_BLOCK);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            sample_block(g, k, len, &mut rng, forced)
        })
        .reduce(
            || vec![0; bins],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn sample_block(
    g: &Graph,
    k: usize,
    len: u64,
    rng: &mut ChaCha8Rng,
    forced: Option<usize>,
) -> Vec<u64> {
    let n = g.n();
    let mut hist = vec![0u64; max_edges(k) + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    let fixed = usize::from(forced.is_some());
    if let Some(v) = forced {
        perm.swap(0, v);
    }
    let mut mask = vec![0u64; words_for(n)];
    for _ in 0..len {
        // partial Fisher-Yates over positions fixed..n
        for i in fixed..k {
            let j = rng.random_range(i..n);
            perm.swap(i, j);
        }
        let chosen = &perm[..k];
        let e = if k <= 32 {
            let mut e = 0;
            for i in 0..k {
                for j in (i + 1)..k {
                    e += g.has_edge(chosen[i], chosen[j]) as usize;
                }
            }
            e
        } else {
            for &v in chosen {
                mask[v / 64] |= 1 << (v % 64);
            }
            let e = chosen
                .iter()
                .map(|&v| g.degree_into(v, &mask))
                .sum::<usize>()
                / 2;
            mask.iter_mut().for_each(|w| *w = 0);
            e
        };
        hist[e] += 1;
    }
    hist
}
