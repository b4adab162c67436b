//! Exhaustive `I(n, k, l)` for `n <= 8`.
//!
//! All `2^C(n,2)` labelled graphs are visited in Gray-code order, so each
//! step toggles a single pair. The induced edge count of every vertex subset
//! is kept in a table and a histogram `hist[|S|][e(S)]` is patched for the
//! `2^(n-2)` subsets containing the toggled pair, which gives every
//! `P(X_{G,k} = l)` for every `(k, l)` at once.

use num_rational::BigRational;
use rayon::prelude::*;

use crate::combinatorics::binomial_u64;
use crate::distribution::max_edges;
use crate::error::{precondition, Result};
use crate::graph::Graph;
use crate::search::{refuse_large_brute, Density, Method, SearchRecord};

pub const MAX_BRUTE_VERTICES: usize = 8;

/// Number of high pair bits fixed per parallel chunk.
const CHUNK_BITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Best {
    count: u32,
    edges: u32,
    code: u32,
}

impl Best {
    const NONE: Best = Best {
        count: 0,
        edges: u32::MAX,
        code: u32::MAX,
    };

    /// More subsets, then fewer edges, then the smaller pair code.
    #[inline]
    fn beats(&self, other: &Best) -> bool {
        (
            self.count,
            std::cmp::Reverse(self.edges),
            std::cmp::Reverse(self.code),
        ) > (
            other.count,
            std::cmp::Reverse(other.edges),
            std::cmp::Reverse(other.code),
        )
    }
}

/// Maximisers of `P(X = l)` for every `(k, l)` at one `n`.
#[derive(Clone, Debug)]
pub struct BruteTable {
    n: usize,
    pairs: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    best: Vec<Best>,
    graphs: u64,
    pruned: bool,
}

impl BruteTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Graphs visited, including those skipped by the degree filter.
    pub fn graphs(&self) -> u64 {
        self.graphs
    }

    fn entry(&self, k: usize, l: usize) -> Result<&Best> {
        if k == 0 || k > self.n {
            return Err(precondition(format!("k = {k} outside 1..={}", self.n)));
        }
        if l > max_edges(k) {
            return Err(precondition(format!(
                "l = {l} exceeds C(k,2) = {}",
                max_edges(k)
            )));
        }
        Ok(&self.best[self.offsets[k] + l])
    }

    /// Largest number of `k`-subsets spanning exactly `l` edges.
    pub fn count(&self, k: usize, l: usize) -> Result<u64> {
        Ok(self.entry(k, l)?.count as u64)
    }

    /// Exact `I(n, k, l)`.
    pub fn density(&self, k: usize, l: usize) -> Result<BigRational> {
        let c = self.count(k, l)?;
        let total = binomial_u64(self.n, k).expect("n <= 8");
        Ok(BigRational::new(c.into(), total.into()))
    }

    pub fn witness(&self, k: usize, l: usize) -> Result<Graph> {
        let code = self.entry(k, l)?.code;
        Ok(graph_from_code(self.n, &self.pairs, code))
    }

    pub fn record(&self, k: usize, l: usize) -> Result<SearchRecord> {
        let g = self.witness(k, l)?;
        let d = Density::Exact(self.density(k, l)?);
        Ok(SearchRecord::new(
            k,
            l,
            &g,
            &d,
            Method::BruteForce,
            self.graphs,
            None,
        ))
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }
}

/// Pairs in graph6 bit order: `(0,1), (0,2), (1,2), (0,3), ...`.
fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

fn graph_from_code(n: usize, pairs: &[(usize, usize)], code: u32) -> Graph {
    let mut g = Graph::empty(n).expect("n >= 1");
    for (b, &(u, v)) in pairs.iter().enumerate() {
        if code >> b & 1 == 1 {
            g.add_edge(u, v);
        }
    }
    g
}

/// Exact `I(n, k, l)` with a witness. Uses the degree filter.
pub fn brute_force_extremal(n: usize, k: usize, l: usize) -> Result<SearchRecord> {
    brute_force_table(n, true)?.record(k, l)
}

/// Enumerates every labelled graph on `n` vertices.
///
/// With `prune`, only graphs whose degree sequence is non-increasing in the
/// vertex label are scored; every isomorphism class has such a labelling, so
/// the maxima are unchanged. `prune = false` scores everything.
pub fn brute_force_table(n: usize, prune: bool) -> Result<BruteTable> {
    if n > MAX_BRUTE_VERTICES {
        return Err(refuse_large_brute(n));
    }
    if n == 0 {
        return Err(precondition("n must be at least 1"));
    }
    let pairs = pair_order(n);
    let bits = pairs.len();
    let high = bits.min(CHUNK_BITS);
    let low = bits - high;

    let mut offsets = vec![0usize; n + 2];
    for s in 0..=n {
        offsets[s + 1] = offsets[s] + max_edges(s) + 1;
    }
    let slots = offsets[n + 1];

    // subsets containing each pair
    let supersets: Vec<Vec<u16>> = pairs
        .iter()
        .map(|&(u, v)| {
            let want = (1u16 << u) | (1u16 << v);
            (0u16..1 << n).filter(|s| s & want == want).collect()
        })
        .collect();
    let sizes: Vec<usize> = (0u32..1 << n).map(|s| s.count_ones() as usize).collect();

    let ctx = Ctx {
        n,
        pairs: &pairs,
        supersets: &supersets,
        sizes: &sizes,
        offsets: &offsets,
        slots,
        low,
        prune,
    };
    let per_chunk: Vec<Vec<Best>> = (0u32..1 << high)
        .into_par_iter()
        .map(|c| ctx.run_chunk(c))
        .collect();

    let mut best = vec![Best::NONE; slots];
    for chunk in per_chunk {
        for (b, c) in best.iter_mut().zip(chunk) {
            if c.beats(b) {
                *b = c;
            }
        }
    }
    Ok(BruteTable {
        n,
        pairs: pairs.clone(),
        offsets,
        best,
        graphs: 1u64 << bits,
        pruned: prune,
    })
}

struct Ctx<'a> {
    n: usize,
    pairs: &'a [(usize, usize)],
    supersets: &'a [Vec<u16>],
    sizes: &'a [usize],
    offsets: &'a [usize],
    slots: usize,
    low: usize,
    prune: bool,
}

impl Ctx<'_> {
    fn run_chunk(&self, chunk: u32) -> Vec<Best> {
        let n = self.n;
        let mut code = chunk << self.low;
        let mut ecount = vec![0u8; 1 << n];
        let mut hist = vec![0u32; self.slots];
        let mut deg = vec![0u32; n];
        let mut edges = 0u32;
        let mut best = vec![Best::NONE; self.slots];

        let start = graph_from_code(n, self.pairs, code);
        for (s, e) in ecount.iter_mut().enumerate() {
            *e = start
                .edges()
                .filter(|&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1)
                .count() as u8;
            hist[self.offsets[self.sizes[s]] + *e as usize] += 1;
        }
        for (v, d) in deg.iter_mut().enumerate() {
            *d = start.degree(v) as u32;
        }
        edges += start.m() as u32;

        let steps: u64 = 1 << self.low;
        for i in 0..steps {
            if i > 0 {
                let b = i.trailing_zeros() as usize;
                code ^= 1 << b;
                let adding = code >> b & 1 == 1;
                let (u, v) = self.pairs[b];
                if adding {
                    deg[u] += 1;
                    deg[v] += 1;
                    edges += 1;
                } else {
                    deg[u] -= 1;
                    deg[v] -= 1;
                    edges -= 1;
                }
                for &s in &self.supersets[b] {
                    let s = s as usize;
                    let base = self.offsets[self.sizes[s]];
                    let old = ecount[s];
                    let new = if adding { old + 1 } else { old - 1 };
                    hist[base + old as usize] -= 1;
                    hist[base + new as usize] += 1;
                    ecount[s] = new;
                }
            }
            if self.prune && deg.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            for (slot, &c) in best.iter_mut().zip(&hist) {
                if c >= slot.count {
                    let cand = Best {
                        count: c,
                        edges,
                        code,
                    };
                    if cand.beats(slot) {
                        *slot = cand;
                    }
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::exact_distribution;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn small_examples() {
        let r = brute_force_extremal(4, 3, 3).unwrap();
        assert_eq!(r.density, "1");
        assert_eq!(r.graph().unwrap(), Graph::complete(4).unwrap());

        let r = brute_force_extremal(4, 3, 2).unwrap();
        assert_eq!(r.density, "1");
        let w = r.graph().unwrap();
        assert_eq!(w.m(), 4);
        assert!(w.degrees().iter().all(|&d| d == 2), "{w:?}");
        assert_eq!(r.method, Method::BruteForce);

        let r = brute_force_extremal(5, 3, 1).unwrap();
        assert!(r.density_value().unwrap() >= q(9, 10));
        assert!(r.verify(1000).unwrap());
    }

    #[test]
    fn refuses_large_n() {
        let e = brute_force_table(9, true).unwrap_err();
        assert!(e.to_string().contains("local search"), "{e}");
        assert!(brute_force_extremal(4, 5, 0).is_err());
        assert!(brute_force_extremal(4, 3, 4).is_err());
    }

    /// Direct maximisation over all labelled graphs, one exact distribution each.
    fn naive_table(n: usize) -> Vec<Vec<u64>> {
        let pairs = pair_order(n);
        let mut best: Vec<Vec<u64>> = (0..=n).map(|k| vec![0; max_edges(k) + 1]).collect();
        for code in 0u32..1 << pairs.len() {
            let g = graph_from_code(n, &pairs, code);
            for (k, row) in best.iter_mut().enumerate().skip(1) {
                let d = exact_distribution(&g, k).unwrap();
                for (l, b) in row.iter_mut().enumerate() {
                    let c: u64 = d.count(l).try_into().unwrap();
                    *b = (*b).max(c);
                }
            }
        }
        best
    }

    #[test]
    fn matches_naive_maximisation() {
        for n in 1..=5 {
            let naive = naive_table(n);
            let full = brute_force_table(n, false).unwrap();
            let pruned = brute_force_table(n, true).unwrap();
            for (k, row) in naive.iter().enumerate().skip(1) {
                for (l, &want) in row.iter().enumerate() {
                    assert_eq!(full.count(k, l).unwrap(), want, "n={n} k={k} l={l}");
                    assert_eq!(
                        pruned.count(k, l).unwrap(),
                        want,
                        "pruned n={n} k={k} l={l}"
                    );
                    let w = full.witness(k, l).unwrap();
                    let c: u64 = exact_distribution(&w, k)
                        .unwrap()
                        .count(l)
                        .try_into()
                        .unwrap();
                    assert_eq!(c, want);
                }
            }
        }
    }

    #[test]
    fn witness_tie_break_prefers_fewer_edges() {
        let t = brute_force_table(5, false).unwrap();
        // every graph puts all 1-subsets at 0 edges; the empty graph is the cheapest
        assert_eq!(t.witness(1, 0).unwrap(), Graph::empty(5).unwrap());
        assert_eq!(t.witness(2, 1).unwrap().m(), 10);
        assert_eq!(t.graphs(), 1 << 10);
    }
}
