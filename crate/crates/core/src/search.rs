//! Maximising `P(X_{G,k} = l)` over `n`-vertex graphs.
//!
//! Densities are evaluated exactly when `C(n, k)` fits the evaluation budget
//! and by Monte Carlo otherwise; MC evaluations inside one search reuse the
//! same seed so that competing graphs see common random numbers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial_u64;
use crate::construct::Construction;
use crate::distribution::{check_k, edge_histogram, max_edges, mc_histogram};
use crate::error::{precondition, Error, Result};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, write_graph6};
use crate::moments::{rational_string, to_f64};

/// How densities are evaluated during search and construction scoring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Largest subset count enumerated exactly.
    pub budget: u64,
    pub mc_samples: u64,
    pub mc_seed: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            budget: 1_000_000,
            mc_samples: 100_000,
            mc_seed: 0,
        }
    }
}

/// An exact probability, or a Monte Carlo hit ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Density {
    Exact(BigRational),
    Estimate { hits: u64, samples: u64 },
}

impl Density {
    pub fn value(&self) -> BigRational {
        match self {
            Density::Exact(q) => q.clone(),
            Density::Estimate { hits, samples } => {
                BigRational::new((*hits).into(), (*samples).into())
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Density::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.value())
    }
}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.value().cmp(&other.value()))
    }
}

/// `P(X_{G,k} = l)`.
pub fn evaluate(g: &Graph, k: usize, l: usize, cfg: &EvalConfig) -> Result<Density> {
    check_k(g.n(), k)?;
    if l > max_edges(k) {
        return Err(precondition(format!(
            "l = {l} exceeds C(k,2) = {}",
            max_edges(k)
        )));
    }
    match binomial_u64(g.n(), k) {
        Some(total) if total <= cfg.budget => {
            let hist = edge_histogram(g, k, 0..total);
            Ok(Density::Exact(BigRational::new(
                hist[l].into(),
                total.into(),
            )))
        }
        _ => {
            let hist = mc_histogram(g, k, cfg.mc_samples, cfg.mc_seed, None);
            Ok(Density::Estimate {
                hits: hist[l],
                samples: cfg.mc_samples,
            })
        }
    }
}

/// `P(X = l | v ∈ A)`.
///
/// Exact when `C(n-1, k-1)` fits the budget: with `v` relabelled to `n-1`,
/// the subsets containing it are the revolving-door ranks `C(n-1,k)..C(n,k)`.
pub fn conditional_vertex_density(
    g: &Graph,
    k: usize,
    l: usize,
    v: usize,
    cfg: &EvalConfig,
) -> Result<Density> {
    let n = g.n();
    check_k(n, k)?;
    if v >= n {
        return Err(precondition(format!("vertex {v} out of range for n = {n}")));
    }
    if l > max_edges(k) {
        return Err(precondition(format!(
            "l = {l} exceeds C(k,2) = {}",
            max_edges(k)
        )));
    }
    let within = binomial_u64(n - 1, k - 1).filter(|&c| c <= cfg.budget);
    match (within, binomial_u64(n, k)) {
        (Some(with_v), Some(total)) => {
            let moved = g.swap_vertices(v, n - 1);
            let hist = edge_histogram(&moved, k, (total - with_v)..total);
            Ok(Density::Exact(BigRational::new(
                hist[l].into(),
                with_v.into(),
            )))
        }
        _ => {
            let hist = mc_histogram(g, k, cfg.mc_samples, cfg.mc_seed, Some(v));
            Ok(Density::Estimate {
                hits: hist[l],
                samples: cfg.mc_samples,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetrization {
    pub graph: Graph,
    /// Vertex whose neighbourhood was copied.
    pub plus: usize,
    /// Vertex replaced by the twin.
    pub minus: usize,
}

/// One Zykov step: the vertex with the lowest conditional density is replaced,
/// in place, by a non-adjacent twin of the vertex with the highest.
///
/// Ties go to the lowest index; `minus` is chosen among vertices other than
/// `plus`, so a graph with all densities equal copies vertex 0 onto vertex 1.
pub fn symmetrization_step(
    g: &Graph,
    k: usize,
    l: usize,
    cfg: &EvalConfig,
) -> Result<Symmetrization> {
    let n = g.n();
    if n < 2 {
        return Err(precondition("symmetrization needs at least 2 vertices"));
    }
    let dens: Vec<BigRational> = (0..n)
        .map(|v| conditional_vertex_density(g, k, l, v, cfg).map(|d| d.value()))
        .collect::<Result<_>>()?;
    let mut plus = 0;
    for v in 1..n {
        if dens[v] > dens[plus] {
            plus = v;
        }
    }
    let mut minus = usize::from(plus == 0);
    for v in 0..n {
        if v != plus && dens[v] < dens[minus] {
            minus = v;
        }
    }
    Ok(Symmetrization {
        graph: twin_replace(g, plus, minus),
        plus,
        minus,
    })
}

/// `g` with `minus` rewired to `N(plus) \ {minus}`.
pub fn twin_replace(g: &Graph, plus: usize, minus: usize) -> Graph {
    let mut out = g.clone();
    let old: Vec<usize> = g.neighbors(minus).collect();
    for u in old {
        out.remove_edge(minus, u);
    }
    for u in g.neighbors(plus) {
        if u != minus {
            out.add_edge(minus, u);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    BruteForce,
    LocalSearch,
    Construction(String),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::BruteForce => f.write_str("brute_force"),
            Method::LocalSearch => f.write_str("local_search"),
            Method::Construction(kind) => write!(f, "construction:{kind}"),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "brute_force" => Ok(Method::BruteForce),
            "local_search" => Ok(Method::LocalSearch),
            _ => match s.strip_prefix("construction:") {
                Some(kind) if !kind.is_empty() => Ok(Method::Construction(kind.to_string())),
                _ => Err(format!("unknown method `{s}`")),
            },
        }
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Method {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Best graph found for one `(n, k, l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    /// `P(X = l)` as `"p/q"`; a hit ratio when `exact` is false.
    pub density: String,
    pub exact: bool,
    pub graph: String,
    pub edges: usize,
    pub method: Method,
    pub iterations: u64,
    pub seed: Option<u64>,
}

impl SearchRecord {
    pub fn new(
        k: usize,
        l: usize,
        g: &Graph,
        density: &Density,
        method: Method,
        iterations: u64,
        seed: Option<u64>,
    ) -> Self {
        Self {
            n: g.n(),
            k,
            l,
            density: rational_string(&density.value()),
            exact: density.is_exact(),
            graph: write_graph6(g),
            edges: g.m(),
            method,
            iterations,
            seed,
        }
    }

    pub fn density_value(&self) -> Result<BigRational> {
        parse_rational(&self.density)
    }

    pub fn graph(&self) -> Result<Graph> {
        parse_graph6(&self.graph)
    }

    /// Checks the stored fields against each other and, for exact records
    /// within `budget`, recomputes the density from the stored graph.
    pub fn verify(&self, budget: u64) -> Result<bool> {
        let g = self.graph()?;
        if g.n() != self.n || g.m() != self.edges {
            return Ok(false);
        }
        let d = self.density_value()?;
        if d < BigRational::zero() || d > BigRational::from_integer(1.into()) {
            return Ok(false);
        }
        if !self.exact {
            return Ok(true);
        }
        let cfg = EvalConfig {
            budget,
            ..EvalConfig::default()
        };
        match evaluate(&g, self.k, self.l, &cfg)? {
            Density::Exact(q) => Ok(q == d),
            // over budget: nothing to recompute exactly
            Density::Estimate { .. } => Ok(true),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || precondition(format!("`{s}` is not a rational p/q"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

struct Candidate {
    graph: Graph,
    density: Density,
    method: Method,
    seed: Option<u64>,
}

/// Higher density first, then fewer edges; earlier candidates win exact ties.
fn better(a: &Density, a_edges: usize, b: &Density, b_edges: usize) -> bool {
    match a.value().cmp(&b.value()) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a_edges < b_edges,
    }
}

/// Best of a fixed catalogue of constructions; a certified lower bound on
/// `I(n, k, l)` when the winning density is exact.
///
/// Catalogue, in tie-break order: `two_cliques(n)`, `complete_bipartite` with
/// smaller part `round(n/k)`, `clique_union(n, min(C(k,2), n))`, and 20
/// `gnp(n, l / C(k,2))` draws seeded `seed, seed+1, ..., seed+19`.
pub fn construction_bound(
    n: usize,
    k: usize,
    l: usize,
    seed: u64,
    cfg: &EvalConfig,
) -> Result<SearchRecord> {
    check_k(n, k)?;
    if l > max_edges(k) {
        return Err(precondition(format!(
            "l = {l} exceeds C(k,2) = {}",
            max_edges(k)
        )));
    }
    let mut catalogue: Vec<(Construction, Option<u64>)> =
        vec![(Construction::TwoCliques { n }, None)];
    if n >= 2 {
        let small = ((n as f64 / k as f64).round() as usize).clamp(1, n - 1);
        catalogue.push((
            Construction::CompleteBipartite {
                a: small,
                b: n - small,
            },
            None,
        ));
    }
    catalogue.push((
        Construction::CliqueUnion {
            n,
            parts: max_edges(k).clamp(1, n),
        },
        None,
    ));
    let p = if max_edges(k) == 0 {
        0.0
    } else {
        l as f64 / max_edges(k) as f64
    };
    for i in 0..20u64 {
        catalogue.push((Construction::Gnp { n, p }, Some(seed.wrapping_add(i))));
    }

    let mut best: Option<Candidate> = None;
    for (c, s) in catalogue {
        let graph = c.build(s.unwrap_or(0))?;
        let density = evaluate(&graph, k, l, cfg)?;
        let replace = match &best {
            None => true,
            Some(b) => better(&density, graph.m(), &b.density, b.graph.m()),
        };
        if replace {
            best = Some(Candidate {
                graph,
                density,
                method: Method::Construction(c.name().to_string()),
                seed: s,
            });
        }
    }
    let b = best.expect("catalogue is non-empty");
    Ok(SearchRecord::new(
        k, l, &b.graph, &b.density, b.method, 0, b.seed,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Total move evaluations, split evenly over restarts.
    pub iterations: u64,
    pub restarts: u64,
    /// One move in this many is a symmetrization step; the rest are edge flips.
    pub symmetrize_every: u64,
    /// Seed restart 0 with the best catalogue construction.
    pub use_constructions: bool,
    pub eval: EvalConfig,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            iterations: 4000,
            restarts: 4,
            symmetrize_every: 10,
            use_constructions: true,
            eval: EvalConfig::default(),
        }
    }
}

struct RestartResult {
    graph: Graph,
    density: Density,
    iterations: u64,
}

/// Multi-restart hill climbing over edge flips and symmetrization steps.
/// A move is kept iff the density does not decrease. Deterministic in `seed`.
pub fn local_search(
    n: usize,
    k: usize,
    l: usize,
    cfg: &SearchConfig,
    seed: u64,
) -> Result<SearchRecord> {
    check_k(n, k)?;
    if l > max_edges(k) {
        return Err(precondition(format!(
            "l = {l} exceeds C(k,2) = {}",
            max_edges(k)
        )));
    }
    let restarts = cfg.restarts.max(1);
    let per_restart = cfg.iterations / restarts;
    let eval = EvalConfig {
        mc_seed: seed,
        ..cfg.eval
    };

    let seeded = if cfg.use_constructions {
        Some(construction_bound(n, k, l, seed, &eval)?.graph()?)
    } else {
        None
    };
    let p = if max_edges(k) == 0 {
        0.0
    } else {
        l as f64 / max_edges(k) as f64
    };

    let results: Vec<RestartResult> = (0..restarts)
        .into_par_iter()
        .map(|r| -> Result<RestartResult> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r + 1);
            let start = match (&seeded, r) {
                (Some(g), 0) => g.clone(),
                _ => crate::construct::gnp(n, p, rng.random())?,
            };
            climb(
                start,
                k,
                l,
                per_restart,
                cfg.symmetrize_every,
                &eval,
                &mut rng,
            )
        })
        .collect::<Result<_>>()?;

    let mut best = 0;
    for (i, r) in results.iter().enumerate().skip(1) {
        if better(
            &r.density,
            r.graph.m(),
            &results[best].density,
            results[best].graph.m(),
        ) {
            best = i;
        }
    }
    let total: u64 = results.iter().map(|r| r.iterations).sum();
    let b = &results[best];
    Ok(SearchRecord::new(
        k,
        l,
        &b.graph,
        &b.density,
        Method::LocalSearch,
        total,
        Some(seed),
    ))
}

fn climb(
    start: Graph,
    k: usize,
    l: usize,
    iterations: u64,
    symmetrize_every: u64,
    eval: &EvalConfig,
    rng: &mut ChaCha8Rng,
) -> Result<RestartResult> {
    let n = start.n();
    let mut current = start;
    let mut cur_d = evaluate(&current, k, l, eval)?;
    let mut best = current.clone();
    let mut best_d = cur_d.clone();
    let one = BigRational::from_integer(1.into());
    let mut done = 0;
    while done < iterations && n >= 2 {
        if cur_d.is_exact() && cur_d.value() == one {
            break;
        }
        done += 1;
        let candidate = if symmetrize_every > 0 && rng.random_range(0..symmetrize_every) == 0 {
            symmetrization_step(&current, k, l, eval)?.graph
        } else {
            let u = rng.random_range(0..n);
            let mut v = rng.random_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            let mut g = current.clone();
            g.toggle_edge(u, v);
            g
        };
        let d = evaluate(&candidate, k, l, eval)?;
        if d.value() >= cur_d.value() {
            current = candidate;
            cur_d = d;
            if better(&cur_d, current.m(), &best_d, best.m()) {
                best = current.clone();
                best_d = cur_d.clone();
            }
        }
    }
    Ok(RestartResult {
        graph: best,
        density: best_d,
        iterations: done,
    })
}

pub(crate) fn refuse_large_brute(n: usize) -> Error {
    precondition(format!(
        "brute force is limited to n <= 8 (2^C(n,2) graphs); n = {n} needs local search instead"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::two_cliques;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn conditional_density_examples() {
        let cfg = EvalConfig::default();
        let k4 = Graph::complete(4).unwrap();
        for v in 0..4 {
            assert_eq!(
                conditional_vertex_density(&k4, 3, 3, v, &cfg).unwrap(),
                Density::Exact(q(1, 1))
            );
        }
        let tc = two_cliques(6).unwrap();
        for v in 0..6 {
            assert_eq!(
                conditional_vertex_density(&tc, 3, 1, v, &cfg).unwrap(),
                Density::Exact(q(9, 10))
            );
        }
        let e = Graph::empty(5).unwrap();
        assert_eq!(
            conditional_vertex_density(&e, 2, 0, 3, &cfg).unwrap(),
            Density::Exact(q(1, 1))
        );
        assert!(conditional_vertex_density(&e, 2, 0, 5, &cfg).is_err());
    }

    #[test]
    fn conditional_density_matches_direct_count() {
        let g = crate::construct::gnp(9, 0.5, 3).unwrap();
        let cfg = EvalConfig::default();
        for k in 1..=9 {
            for v in 0..9 {
                let mut hits = vec![0u64; max_edges(k) + 1];
                let mut total = 0u64;
                for mask in 0u32..1 << 9 {
                    if mask.count_ones() as usize != k || mask >> v & 1 == 0 {
                        continue;
                    }
                    total += 1;
                    let e = g
                        .edges()
                        .filter(|&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
                        .count();
                    hits[e] += 1;
                }
                for (l, &h) in hits.iter().enumerate() {
                    let d = conditional_vertex_density(&g, k, l, v, &cfg).unwrap();
                    assert_eq!(
                        d,
                        Density::Exact(BigRational::new(h.into(), total.into())),
                        "k={k} v={v} l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn conditional_density_falls_back_to_mc() {
        let cfg = EvalConfig {
            budget: 5,
            mc_samples: 20_000,
            mc_seed: 1,
        };
        let tc = two_cliques(6).unwrap();
        let d = conditional_vertex_density(&tc, 3, 1, 2, &cfg).unwrap();
        assert!(!d.is_exact());
        assert!((d.to_f64() - 0.9).abs() < 0.01);
    }

    fn is_twin_pair(g: &Graph, a: usize, b: usize) -> bool {
        if g.has_edge(a, b) {
            return false;
        }
        (0..g.n())
            .filter(|&x| x != a && x != b)
            .all(|x| g.has_edge(a, x) == g.has_edge(b, x))
    }

    #[test]
    fn symmetrization_tie_break_on_c5() {
        let c5 = Graph::cycle(5).unwrap();
        let s = symmetrization_step(&c5, 3, 1, &EvalConfig::default()).unwrap();
        assert_eq!((s.plus, s.minus), (0, 1));
        assert_eq!(s.graph, twin_replace(&c5, 0, 1));
        assert_eq!(s.graph.n(), 5);
        assert!(is_twin_pair(&s.graph, 0, 1));
        // vertex 1 now sees 0's neighbours {4} (1 itself excluded)
        assert!(s.graph.has_edge(1, 4) && !s.graph.has_edge(1, 2) && !s.graph.has_edge(0, 1));
    }

    #[test]
    fn symmetrization_two_cliques_and_k2() {
        let cfg = EvalConfig::default();
        let g = two_cliques(6).unwrap();
        let s = symmetrization_step(&g, 3, 3, &cfg).unwrap();
        assert!(is_twin_pair(&s.graph, s.plus, s.minus));
        let before = conditional_vertex_density(&g, 3, 3, s.plus, &cfg).unwrap();
        for v in 0..6 {
            assert!(before >= conditional_vertex_density(&g, 3, 3, v, &cfg).unwrap());
        }
        let after = evaluate(&s.graph, 3, 3, &cfg).unwrap();
        assert!(after.is_exact());

        let k2 = Graph::complete(2).unwrap();
        let s = symmetrization_step(&k2, 2, 1, &cfg).unwrap();
        assert_eq!(s.graph.n(), 2);
        assert_eq!(
            evaluate(&s.graph, 2, 1, &cfg).unwrap(),
            Density::Exact(q(0, 1))
        );
        assert!(symmetrization_step(&Graph::empty(1).unwrap(), 1, 0, &cfg).is_err());
    }

    #[test]
    fn construction_bound_examples() {
        let cfg = EvalConfig::default();
        let r = construction_bound(6, 3, 1, 0, &cfg).unwrap();
        assert_eq!(r.density, "9/10");
        assert_eq!(r.method, Method::Construction("two_cliques".into()));
        assert_eq!(r.graph().unwrap(), two_cliques(6).unwrap());

        let r = construction_bound(9, 4, 0, 0, &cfg).unwrap();
        assert_eq!(r.density, "1");
        assert_eq!(r.edges, 0);

        let r = construction_bound(30, 3, 1, 0, &cfg).unwrap();
        assert!(r.density_value().unwrap() >= q(3150, 4060));
        assert!(r.verify(cfg.budget).unwrap());
    }

    #[test]
    fn local_search_examples() {
        let cfg = SearchConfig {
            iterations: 400,
            ..SearchConfig::default()
        };
        let r = local_search(12, 3, 3, &cfg, 1).unwrap();
        assert_eq!(r.density, "1");

        let a = local_search(10, 3, 1, &cfg, 5).unwrap();
        let b = local_search(10, 3, 1, &cfg, 5).unwrap();
        assert_eq!(a, b);
        assert!(a.verify(cfg.eval.budget).unwrap());
        let floor = construction_bound(10, 3, 1, 5, &cfg.eval).unwrap();
        assert!(a.density_value().unwrap() >= floor.density_value().unwrap());
    }

    #[test]
    fn record_json_and_method_strings() {
        let g = two_cliques(6).unwrap();
        let r = SearchRecord::new(
            3,
            1,
            &g,
            &Density::Exact(q(9, 10)),
            Method::Construction("two_cliques".into()),
            0,
            None,
        );
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains(r#""method":"construction:two_cliques""#), "{s}");
        let back: SearchRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(r.verify(1000).unwrap());
        let mut wrong = r.clone();
        wrong.density = "1/2".into();
        assert!(!wrong.verify(1000).unwrap());
        assert!("construction:".parse::<Method>().is_err());
        assert!(parse_rational("3/0").is_err());
    }
}
