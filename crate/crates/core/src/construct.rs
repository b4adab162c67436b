//! Graph families used as lower-bound constructions and test fixtures.
//!
//! Specs use the compact `name:param,param` form, e.g. `two_cliques:6`,
//! `clique_union:1120,28`, `complete_bipartite:2,4`, `gnp:20,0.1`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    /// `parts` vertex-disjoint cliques on `n` vertices, sizes as equal as possible.
    CliqueUnion {
        n: usize,
        parts: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    /// `K_{⌈n/2⌉} + K_{⌊n/2⌋}`, the complement of a balanced complete bipartite graph.
    TwoCliques {
        n: usize,
    },
    Gnp {
        n: usize,
        p: f64,
    },
    /// `⌊n/2⌋` disjoint edges.
    Matching {
        n: usize,
    },
    Empty {
        n: usize,
    },
    Complete {
        n: usize,
    },
}

impl Construction {
    pub fn name(&self) -> &'static str {
        match self {
            Construction::CliqueUnion { .. } => "clique_union",
            Construction::CompleteBipartite { .. } => "complete_bipartite",
            Construction::TwoCliques { .. } => "two_cliques",
            Construction::Gnp { .. } => "gnp",
            Construction::Matching { .. } => "matching",
            Construction::Empty { .. } => "empty",
            Construction::Complete { .. } => "complete",
        }
    }

    pub fn is_randomized(&self) -> bool {
        matches!(self, Construction::Gnp { .. })
    }

    /// Builds the graph. `seed` is only consulted for `gnp`.
    pub fn build(&self, seed: u64) -> Result<Graph> {
        match *self {
            Construction::CliqueUnion { n, parts } => clique_union(n, parts),
            Construction::CompleteBipartite { a, b } => complete_bipartite(a, b),
            Construction::TwoCliques { n } => two_cliques(n),
            Construction::Gnp { n, p } => gnp(n, p, seed),
            Construction::Matching { n } => matching(n),
            Construction::Empty { n } => Graph::empty(n),
            Construction::Complete { n } => Graph::complete(n),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::CliqueUnion { n, parts } => write!(f, "clique_union:{n},{parts}"),
            Construction::CompleteBipartite { a, b } => write!(f, "complete_bipartite:{a},{b}"),
            Construction::TwoCliques { n } => write!(f, "two_cliques:{n}"),
            Construction::Gnp { n, p } => write!(f, "gnp:{n},{p}"),
            Construction::Matching { n } => write!(f, "matching:{n}"),
            Construction::Empty { n } => write!(f, "empty:{n}"),
            Construction::Complete { n } => write!(f, "complete:{n}"),
        }
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Construction {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (name, args) = spec
            .split_once(':')
            .ok_or_else(|| bad("expected name:param[,param]"))?;
        let args: Vec<&str> = args.split(',').map(str::trim).collect();
        let int = |i: usize| -> Result<usize> {
            args.get(i)
                .ok_or_else(|| bad("missing parameter"))?
                .parse::<usize>()
                .map_err(|_| bad("parameter is not a non-negative integer"))
        };
        let arity = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(bad(&format!(
                    "expected {k} parameter(s), got {}",
                    args.len()
                )))
            }
        };
        let c = match name.trim() {
            "clique_union" => {
                arity(2)?;
                Construction::CliqueUnion {
                    n: int(0)?,
                    parts: int(1)?,
                }
            }
            "complete_bipartite" => {
                arity(2)?;
                Construction::CompleteBipartite {
                    a: int(0)?,
                    b: int(1)?,
                }
            }
            "two_cliques" => {
                arity(1)?;
                Construction::TwoCliques { n: int(0)? }
            }
            "gnp" => {
                arity(2)?;
                let p: f64 = args[1].parse().map_err(|_| bad("p is not a number"))?;
                Construction::Gnp { n: int(0)?, p }
            }
            "matching" => {
                arity(1)?;
                Construction::Matching { n: int(0)? }
            }
            "empty" => {
                arity(1)?;
                Construction::Empty { n: int(0)? }
            }
            "complete" => {
                arity(1)?;
                Construction::Complete { n: int(0)? }
            }
            other => return Err(bad(&format!("unknown construction `{other}`"))),
        };
        Ok(c)
    }
}

fn add_clique(g: &mut Graph, start: usize, size: usize) {
    for u in start..start + size {
        for v in (u + 1)..start + size {
            g.add_edge(u, v);
        }
    }
}

pub fn clique_union(n: usize, parts: usize) -> Result<Graph> {
    if parts == 0 || parts > n {
        return Err(Error::Construction {
            spec: format!("clique_union:{n},{parts}"),
            reason: "need 1 <= parts <= n".into(),
        });
    }
    let mut g = Graph::empty(n)?;
    let (base, extra) = (n / parts, n % parts);
    let mut start = 0;
    for i in 0..parts {
        let size = base + usize::from(i < extra);
        add_clique(&mut g, start, size);
        start += size;
    }
    Ok(g)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::Construction {
            spec: format!("complete_bipartite:{a},{b}"),
            reason: "part sizes must be positive".into(),
        });
    }
    let mut g = Graph::empty(a + b)?;
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

pub fn two_cliques(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    let big = n.div_ceil(2);
    add_clique(&mut g, 0, big);
    add_clique(&mut g, big, n - big);
    Ok(g)
}

/// Erdős–Rényi `G(n, p)`: pairs visited in `(u, v)`, `u < v` row-major order, one
/// Bernoulli draw each from a ChaCha8 stream keyed by `seed`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Construction {
            spec: format!("gnp:{n},{p}"),
            reason: "p must lie in [0, 1]".into(),
        });
    }
    let mut g = Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

pub fn matching(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for i in 0..n / 2 {
        g.add_edge(2 * i, 2 * i + 1);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cliques_six() {
        let g = two_cliques(6).unwrap();
        assert_eq!(g.m(), 6);
        assert!(!g.has_edge(2, 3));
        let odd = two_cliques(5).unwrap();
        assert_eq!(odd.m(), 3 + 1);
    }

    #[test]
    fn clique_union_sizes() {
        let g = clique_union(12, 3).unwrap();
        assert_eq!(g.m(), 18);
        assert!(g.degrees().iter().all(|&d| d == 3));
        let uneven = clique_union(7, 3).unwrap();
        // 3 + 2 + 2
        assert_eq!(uneven.m(), 3 + 1 + 1);
        assert!(clique_union(3, 4).is_err());
        assert!(clique_union(3, 0).is_err());
    }

    #[test]
    fn bipartite_and_matching() {
        let g = complete_bipartite(2, 3).unwrap();
        assert_eq!(g.m(), 6);
        assert!(!g.has_edge(0, 1) && !g.has_edge(2, 4));
        assert!(complete_bipartite(0, 3).is_err());
        assert_eq!(matching(100).unwrap().m(), 50);
    }

    #[test]
    fn gnp_edge_cases_and_determinism() {
        for seed in [0, 1, 99] {
            assert_eq!(gnp(100, 0.0, seed).unwrap().m(), 0);
            assert_eq!(gnp(20, 1.0, seed).unwrap().m(), 190);
        }
        assert_eq!(gnp(40, 0.3, 7).unwrap(), gnp(40, 0.3, 7).unwrap());
        assert_ne!(gnp(40, 0.3, 7).unwrap(), gnp(40, 0.3, 8).unwrap());
        assert!(gnp(5, 1.5, 0).is_err());
    }

    #[test]
    fn parse_specs() {
        let c: Construction = "two_cliques:6".parse().unwrap();
        assert_eq!(c, Construction::TwoCliques { n: 6 });
        let c: Construction = "gnp:20,0.1".parse().unwrap();
        assert_eq!(c, Construction::Gnp { n: 20, p: 0.1 });
        assert_eq!(c.to_string(), "gnp:20,0.1");
        let c: Construction = "clique_union:1120,28".parse().unwrap();
        assert_eq!(c.build(0).unwrap().m(), 28 * 40 * 39 / 2);
        assert!("two_cliques".parse::<Construction>().is_err());
        assert!("two_cliques:-3".parse::<Construction>().is_err());
        assert!("nope:3".parse::<Construction>().is_err());
        assert!("complete_bipartite:3".parse::<Construction>().is_err());
    }
}
