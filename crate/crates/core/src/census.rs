//! Counts of small (not necessarily induced) subgraphs.
//!
//! Every graph with at most four edges and no isolated vertices is a
//! [`Shape`]. Connected shapes are counted from degrees, codegrees and
//! triangle bookkeeping; disconnected shapes follow by double counting
//! pairs `(copy of A, extra edge)` against the shapes that contain `A`.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    // four edges
    FourK2,
    TwoK2PlusCherry,
    TwoCherries,
    K2PlusStar3,
    K2PlusP4,
    K2PlusK3,
    Star4,
    Spider,
    P5,
    C4,
    Paw,
    // three edges
    ThreeK2,
    K2PlusCherry,
    Star3,
    P4,
    K3,
    // two edges
    Cherry,
    TwoK2,
    // one edge
    K2,
}

impl Shape {
    pub const ALL: [Shape; 19] = [
        Shape::FourK2,
        Shape::TwoK2PlusCherry,
        Shape::TwoCherries,
        Shape::K2PlusStar3,
        Shape::K2PlusP4,
        Shape::K2PlusK3,
        Shape::Star4,
        Shape::Spider,
        Shape::P5,
        Shape::C4,
        Shape::Paw,
        Shape::ThreeK2,
        Shape::K2PlusCherry,
        Shape::Star3,
        Shape::P4,
        Shape::K3,
        Shape::Cherry,
        Shape::TwoK2,
        Shape::K2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Shape::FourK2 => "4K2",
            Shape::TwoK2PlusCherry => "2K2+K1,2",
            Shape::TwoCherries => "2K1,2",
            Shape::K2PlusStar3 => "K2+K1,3",
            Shape::K2PlusP4 => "K2+P4",
            Shape::K2PlusK3 => "K2+K3",
            Shape::Star4 => "K1,4",
            Shape::Spider => "K1,3+",
            Shape::P5 => "P5",
            Shape::C4 => "C4",
            Shape::Paw => "K3+",
            Shape::ThreeK2 => "3K2",
            Shape::K2PlusCherry => "K2+K1,2",
            Shape::Star3 => "K1,3",
            Shape::P4 => "P4",
            Shape::K3 => "K3",
            Shape::Cherry => "K1,2",
            Shape::TwoK2 => "2K2",
            Shape::K2 => "K2",
        }
    }

    /// A labelled copy of the shape on vertices `0..vertex_count()`.
    pub fn witness(self) -> &'static [(usize, usize)] {
        match self {
            Shape::FourK2 => &[(0, 1), (2, 3), (4, 5), (6, 7)],
            Shape::TwoK2PlusCherry => &[(0, 1), (2, 3), (4, 5), (5, 6)],
            Shape::TwoCherries => &[(0, 1), (1, 2), (3, 4), (4, 5)],
            Shape::K2PlusStar3 => &[(0, 1), (2, 3), (2, 4), (2, 5)],
            Shape::K2PlusP4 => &[(0, 1), (2, 3), (3, 4), (4, 5)],
            Shape::K2PlusK3 => &[(0, 1), (2, 3), (3, 4), (2, 4)],
            Shape::Star4 => &[(0, 1), (0, 2), (0, 3), (0, 4)],
            Shape::Spider => &[(0, 1), (0, 2), (0, 3), (3, 4)],
            Shape::P5 => &[(0, 1), (1, 2), (2, 3), (3, 4)],
            Shape::C4 => &[(0, 1), (1, 2), (2, 3), (3, 0)],
            Shape::Paw => &[(0, 1), (1, 2), (0, 2), (0, 3)],
            Shape::ThreeK2 => &[(0, 1), (2, 3), (4, 5)],
            Shape::K2PlusCherry => &[(0, 1), (2, 3), (3, 4)],
            Shape::Star3 => &[(0, 1), (0, 2), (0, 3)],
            Shape::P4 => &[(0, 1), (1, 2), (2, 3)],
            Shape::K3 => &[(0, 1), (1, 2), (0, 2)],
            Shape::Cherry => &[(0, 1), (1, 2)],
            Shape::TwoK2 => &[(0, 1), (2, 3)],
            Shape::K2 => &[(0, 1)],
        }
    }

    pub fn edge_count(self) -> usize {
        self.witness().len()
    }

    pub fn vertex_count(self) -> usize {
        self.witness()
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
    }

    /// Shapes with exactly `edges` edges.
    pub fn with_edges(edges: usize) -> impl Iterator<Item = Shape> {
        Shape::ALL
            .into_iter()
            .filter(move |s| s.edge_count() == edges)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Number of unlabelled copies of each [`Shape`] in a graph.
#[derive(Clone, PartialEq, Eq)]
pub struct SubgraphCensus {
    counts: [u128; 19],
}

impl SubgraphCensus {
    pub fn get(&self, shape: Shape) -> u128 {
        self.counts[shape.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Shape, u128)> + '_ {
        Shape::ALL.into_iter().map(|s| (s, self.get(s)))
    }

    /// Builds a census from explicit counts; shapes not listed are zero.
    pub fn from_counts(counts: impl IntoIterator<Item = (Shape, u128)>) -> Self {
        let mut out = Self { counts: [0; 19] };
        for (s, c) in counts {
            out.counts[s.index()] = c;
        }
        out
    }
}

impl fmt::Debug for SubgraphCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.iter().map(|(s, c)| (s.name(), c)))
            .finish()
    }
}

impl Serialize for SubgraphCensus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(19))?;
        for (s, c) in self.iter() {
            map.serialize_entry(s.name(), &c.to_string())?;
        }
        map.end()
    }
}

fn choose(x: i128, r: u32) -> i128 {
    if x < r as i128 {
        return 0;
    }
    let mut acc = 1i128;
    for i in 0..r as i128 {
        acc = acc * (x - i) / (i + 1);
    }
    acc
}

pub fn census(g: &Graph) -> SubgraphCensus {
    let n = g.n();
    let deg: Vec<i128> = g.degrees().into_iter().map(|d| d as i128).collect();
    let m = deg.iter().sum::<i128>() / 2;

    let cherry: i128 = deg.iter().map(|&d| choose(d, 2)).sum();
    let star3: i128 = deg.iter().map(|&d| choose(d, 3)).sum();
    let star4: i128 = deg.iter().map(|&d| choose(d, 4)).sum();

    // per-edge codegree bookkeeping
    let mut tri_at = vec![0i128; n]; // 2 * triangles through v
    let mut tri_sum = 0i128; // Σ_e t_e = 3 * K3
    let mut p4_raw = 0i128;
    let mut p5_edge_term = 0i128;
    for (u, v) in g.edges() {
        let t = g.codegree(u, v) as i128;
        tri_sum += t;
        tri_at[u] += t;
        tri_at[v] += t;
        p4_raw += (deg[u] - 1) * (deg[v] - 1);
        p5_edge_term += t * (3 - deg[u] - deg[v]);
    }
    let k3 = tri_sum / 3;
    let p4 = p4_raw - 3 * k3;

    let mut c4_twice = 0i128;
    for u in 0..n {
        for v in (u + 1)..n {
            c4_twice += choose(g.codegree(u, v) as i128, 2);
        }
    }
    let c4 = c4_twice / 2;

    let mut paw = 0i128;
    let mut spider = 0i128;
    let mut p5_vertex_term = 0i128;
    for c in 0..n {
        let dc = deg[c];
        let t_c = tri_at[c] / 2;
        paw += t_c * (dc - 2).max(0);
        let (mut s, mut q) = (0i128, 0i128);
        for b in g.neighbors(c) {
            s += deg[b] - 1;
            q += (deg[b] - 1) * (deg[b] - 1);
        }
        // centre c, subdivided arm through x, other leaves from N(c) \ {x},
        // minus choices where the arm's far end is one of those leaves
        spider += choose(dc - 1, 2) * s - (dc - 2).max(0) * tri_at[c];
        p5_vertex_term += (s * s - q) / 2;
    }
    let p5 = p5_vertex_term + p5_edge_term - 4 * c4;

    let two_k2 = choose(m, 2) - cherry;
    let k2_cherry = cherry * (m - 2) - 3 * k3 - 2 * p4 - 3 * star3;
    let three_k2 = choose(m, 3) - k2_cherry - star3 - p4 - k3;

    let k2_k3 = k3 * (m - 3) - paw;
    let k2_star3 = star3 * (m - 3) - 4 * star4 - spider - paw;
    let k2_p4 = p4 * (m - 3) - 4 * c4 - 2 * paw - 2 * p5 - 2 * spider;
    let two_cherries =
        choose(cherry, 2) - 3 * k3 - p4 - 3 * star3 - 3 * star4 - 2 * c4 - 2 * paw - p5 - spider;
    let two_k2_cherry = (k2_cherry * (m - 3)
        - 4 * two_cherries
        - 3 * k2_star3
        - 2 * k2_p4
        - 3 * k2_k3
        - spider
        - 2 * p5)
        / 2;
    let four_k2 = (three_k2 * (m - 3) - 2 * two_k2_cherry - k2_p4) / 4;

    let as_count = |x: i128| -> u128 {
        debug_assert!(x >= 0, "negative subgraph count {x}");
        x as u128
    };
    SubgraphCensus::from_counts([
        (Shape::FourK2, as_count(four_k2)),
        (Shape::TwoK2PlusCherry, as_count(two_k2_cherry)),
        (Shape::TwoCherries, as_count(two_cherries)),
        (Shape::K2PlusStar3, as_count(k2_star3)),
        (Shape::K2PlusP4, as_count(k2_p4)),
        (Shape::K2PlusK3, as_count(k2_k3)),
        (Shape::Star4, as_count(star4)),
        (Shape::Spider, as_count(spider)),
        (Shape::P5, as_count(p5)),
        (Shape::C4, as_count(c4)),
        (Shape::Paw, as_count(paw)),
        (Shape::ThreeK2, as_count(three_k2)),
        (Shape::K2PlusCherry, as_count(k2_cherry)),
        (Shape::Star3, as_count(star3)),
        (Shape::P4, as_count(p4)),
        (Shape::K3, as_count(k3)),
        (Shape::Cherry, as_count(cherry)),
        (Shape::TwoK2, as_count(two_k2)),
        (Shape::K2, as_count(m)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::gnp;

    /// Classifies an edge set by component structure, without reference to
    /// the census formulas.
    fn classify(edges: &[(usize, usize)]) -> Shape {
        let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let idx = |x: usize| verts.binary_search(&x).unwrap();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut deg = vec![0usize; verts.len()];
        for &(u, v) in edges {
            let (a, b) = (idx(u), idx(v));
            deg[a] += 1;
            deg[b] += 1;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        // (edges, vertices, max degree) per component, largest first
        let mut comps: Vec<(usize, usize, usize)> = Vec::new();
        let roots: Vec<usize> = (0..verts.len()).map(|x| find(&mut parent, x)).collect();
        let mut uniq = roots.clone();
        uniq.sort_unstable();
        uniq.dedup();
        for r in uniq {
            let members: Vec<usize> = (0..verts.len()).filter(|&x| roots[x] == r).collect();
            let e = members.iter().map(|&x| deg[x]).sum::<usize>() / 2;
            let md = members.iter().map(|&x| deg[x]).max().unwrap();
            comps.push((e, members.len(), md));
        }
        comps.sort_unstable_by(|a, b| b.cmp(a));
        match (edges.len(), comps.as_slice()) {
            (1, _) => Shape::K2,
            (2, [_]) => Shape::Cherry,
            (2, _) => Shape::TwoK2,
            (3, [(_, 3, _)]) => Shape::K3,
            (3, [(_, 4, 3)]) => Shape::Star3,
            (3, [_]) => Shape::P4,
            (3, [_, _]) => Shape::K2PlusCherry,
            (3, _) => Shape::ThreeK2,
            (4, [(_, 4, 3)]) => Shape::Paw,
            (4, [(_, 4, _)]) => Shape::C4,
            (4, [(_, 5, 4)]) => Shape::Star4,
            (4, [(_, 5, 3)]) => Shape::Spider,
            (4, [_]) => Shape::P5,
            (4, [(3, 3, _), _]) => Shape::K2PlusK3,
            (4, [(3, 4, 3), _]) => Shape::K2PlusStar3,
            (4, [(3, _, _), _]) => Shape::K2PlusP4,
            (4, [_, _]) => Shape::TwoCherries,
            (4, [_, _, _]) => Shape::TwoK2PlusCherry,
            (4, _) => Shape::FourK2,
            _ => unreachable!(),
        }
    }

    fn brute_census(g: &Graph) -> SubgraphCensus {
        let edges: Vec<_> = g.edges().collect();
        let mut counts = [0u128; 19];
        let m = edges.len();
        let mut pick = Vec::with_capacity(4);
        type Classify<'a> = &'a dyn Fn(&[(usize, usize)]) -> Shape;
        fn rec(
            edges: &[(usize, usize)],
            start: usize,
            pick: &mut Vec<(usize, usize)>,
            counts: &mut [u128; 19],
            classify: Classify<'_>,
        ) {
            if !pick.is_empty() {
                counts[classify(pick).index()] += 1;
            }
            if pick.len() == 4 {
                return;
            }
            for i in start..edges.len() {
                pick.push(edges[i]);
                rec(edges, i + 1, pick, counts, classify);
                pick.pop();
            }
        }
        let _ = m;
        rec(&edges, 0, &mut pick, &mut counts, &classify);
        SubgraphCensus { counts }
    }

    #[test]
    fn classifier_recognises_witnesses() {
        for s in Shape::ALL {
            assert_eq!(classify(s.witness()), s, "{s}");
        }
    }

    #[test]
    fn witnesses_count_themselves_once() {
        for s in Shape::ALL {
            let g = Graph::from_edges(s.vertex_count(), s.witness()).unwrap();
            let c = census(&g);
            assert_eq!(c.get(s), 1, "{s}: {c:?}");
            assert_eq!(c, brute_census(&g), "{s}");
        }
    }

    #[test]
    fn k3_and_k4() {
        let c = census(&Graph::complete(3).unwrap());
        assert_eq!(
            (c.get(Shape::K2), c.get(Shape::Cherry), c.get(Shape::K3)),
            (3, 3, 1)
        );
        for s in [Shape::P4, Shape::Star3, Shape::C4, Shape::Paw, Shape::TwoK2] {
            assert_eq!(c.get(s), 0, "{s}");
        }

        let c = census(&Graph::complete(4).unwrap());
        let expect = [
            (Shape::K2, 6),
            (Shape::Cherry, 12),
            (Shape::K3, 4),
            (Shape::P4, 12),
            (Shape::C4, 3),
            (Shape::Paw, 12),
            (Shape::Star3, 4),
            (Shape::TwoK2, 3),
        ];
        for (s, v) in expect {
            assert_eq!(c.get(s), v, "{s}");
        }
        assert_eq!(c, brute_census(&Graph::complete(4).unwrap()));
    }

    #[test]
    fn path_on_four_vertices() {
        let g = Graph::path(4).unwrap();
        let c = census(&g);
        assert_eq!(c.get(Shape::K2), 3);
        assert_eq!(c.get(Shape::Cherry), 2);
        assert_eq!(c.get(Shape::P4), 1);
        assert_eq!(c.get(Shape::TwoK2), 1);
        assert_eq!(c, brute_census(&g));
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        for seed in 0..120u64 {
            let n = 2 + (seed as usize % 8);
            let p = [0.2, 0.45, 0.7, 0.9][seed as usize % 4];
            let g = gnp(n, p, seed).unwrap();
            assert_eq!(census(&g), brute_census(&g), "n={n} p={p} seed={seed}");
        }
    }

    #[test]
    fn star_counts_are_degree_binomials() {
        for seed in 0..30u64 {
            let g = gnp(40, 0.3, seed).unwrap();
            let c = census(&g);
            let d = g.degrees();
            let sum = |r: u32| {
                d.iter()
                    .map(|&x| choose(x as i128, r) as u128)
                    .sum::<u128>()
            };
            assert_eq!(c.get(Shape::Cherry), sum(2));
            assert_eq!(c.get(Shape::Star3), sum(3));
            assert_eq!(c.get(Shape::Star4), sum(4));
            // Σ d² = 2·N(K1,2) + 2m
            let s: u128 = d.iter().map(|&x| (x * x) as u128).sum();
            assert_eq!(s, 2 * c.get(Shape::Cherry) + 2 * c.get(Shape::K2));
            // every r-subset of edges is exactly one shape
            let m = c.get(Shape::K2) as i128;
            for r in 2..=4 {
                let total: u128 = Shape::with_edges(r).map(|s| c.get(s)).sum();
                assert_eq!(total, choose(m, r as u32) as u128, "r={r}");
            }
        }
    }
}
