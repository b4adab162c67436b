//! Simple undirected graphs stored as fixed-width adjacency bit rows.
//!
//! Row `v` holds one bit per vertex; bit `u` is set iff `uv` is an edge.
//! Neighbourhood intersections and differences are word-wise operations,
//! so most statistics reduce to masked popcounts.

use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count accepted anywhere in the crate.
pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount {
                n,
                max: MAX_VERTICES,
            });
        }
        let words = words_for(n);
        Ok(Self {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edges(leaves + 1, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of 64-bit words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adds `uv`. Panics if `u == v`.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "loops are not allowed");
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "loops are not allowed");
        self.rows[u * self.words + v / 64] ^= 1 << (v % 64);
        self.rows[v * self.words + u / 64] ^= 1 << (u % 64);
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.rows
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// `|N(u) ∩ N(v)|`.
    #[inline]
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Number of neighbours of `v` inside the vertex set `mask` (a row-shaped bit set).
    #[inline]
    pub fn degree_into(&self, v: usize, mask: &[u64]) -> usize {
        self.row(v)
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// The graph on the same vertex set whose edges are exactly the non-edges of `self`.
    pub fn complement(&self) -> Graph {
        let mut out = self.clone();
        for v in 0..self.n {
            let row = &mut out.rows[v * self.words..(v + 1) * self.words];
            for (wi, w) in row.iter_mut().enumerate() {
                *w = !*w & valid_mask(self.n, wi);
            }
            row[v / 64] &= !(1 << (v % 64));
        }
        out
    }

    /// Swaps the labels of vertices `a` and `b`.
    pub fn swap_vertices(&self, a: usize, b: usize) -> Graph {
        if a == b {
            return self.clone();
        }
        let perm: Vec<usize> = (0..self.n)
            .map(|v| {
                if v == a {
                    b
                } else if v == b {
                    a
                } else {
                    v
                }
            })
            .collect();
        self.relabel(&perm)
    }

    /// Graph in which old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut out = Graph::empty(self.n).expect("same vertex count");
        for (u, v) in self.edges() {
            out.add_edge(perm[u], perm[v]);
        }
        out
    }

    /// Induced subgraph on `V \ {v}`, keeping the relative order of the remaining vertices.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        let mut out = Graph::empty(self.n - 1)?;
        let shift = |x: usize| if x > v { x - 1 } else { x };
        for (a, b) in self.edges() {
            if a != v && b != v {
                out.add_edge(shift(a), shift(b));
            }
        }
        Ok(out)
    }

    /// Σ over unordered pairs `{u, v}` of `|N(u) △ N(v)|`, computed pairwise.
    pub fn symm_diff_sum(&self) -> u64 {
        let mut total = 0u64;
        for u in 0..self.n {
            let ru = self.row(u);
            for v in (u + 1)..self.n {
                total += ru
                    .iter()
                    .zip(self.row(v))
                    .map(|(a, b)| (a ^ b).count_ones() as u64)
                    .sum::<u64>();
            }
        }
        total
    }

    /// Closed form of [`Graph::symm_diff_sum`]: `2[(n-1)m - Σ_v C(d(v), 2)]`.
    pub fn symm_diff_sum_identity(&self) -> u64 {
        let n = self.n as u64;
        let m = self.m() as u64;
        let cherries: u64 = self
            .degrees()
            .iter()
            .map(|&d| (d * d.saturating_sub(1) / 2) as u64)
            .sum();
        2 * ((n - 1) * m - cherries)
    }

    /// Checks the representation invariants (symmetry, no loops, no stray bits).
    pub fn validate(&self) -> Result<()> {
        for v in 0..self.n {
            if self.has_edge(v, v) {
                return Err(Error::InvalidGraph(format!("loop at vertex {v}")));
            }
            for (wi, &w) in self.row(v).iter().enumerate() {
                if w & !valid_mask(self.n, wi) != 0 {
                    return Err(Error::InvalidGraph(format!("row {v} has bits beyond n")));
                }
            }
            for u in self.neighbors(v) {
                if !self.has_edge(u, v) {
                    return Err(Error::InvalidGraph(format!("asymmetric pair ({v}, {u})")));
                }
            }
        }
        Ok(())
    }
}

fn valid_mask(n: usize, word: usize) -> u64 {
    let lo = word * 64;
    if n >= lo + 64 {
        u64::MAX
    } else {
        (1u64 << (n - lo)) - 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &edges)
            .finish()
    }
}
