//! Edge statistics of random induced subgraphs.
//!
//! For a graph `G` on `n` vertices and a uniformly random `k`-subset `A`,
//! `X_{G,k}` is the number of edges of `G[A]`. The crate computes its
//! distribution (exactly or by sampling), its moments in closed form, a few
//! inequalities about it, and searches for graphs maximising `P(X = l)`.

pub mod brute;
pub mod census;
pub mod checks;
pub mod combinatorics;
pub mod construct;
pub mod distribution;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod moments;
pub mod records;
pub mod search;
pub mod verify;

pub use brute::{brute_force_extremal, brute_force_table, BruteTable};
pub use census::{census, Shape, SubgraphCensus};
pub use checks::{
    anti_concentration_check, brun_check, shift_inequality_check, AntiConcentrationReport,
    BrunReport, CheckReport, ShiftReport,
};
pub use construct::Construction;
pub use distribution::{
    exact_distribution, exact_distribution_with_budget, mc_distribution, naive_distribution,
    EdgeDistribution, McEstimate, DEFAULT_BUDGET,
};
pub use error::{Error, Result};
pub use graph::Graph;
pub use graph6::{parse_graph6, write_graph6};
pub use moments::{closed_form_moments, distribution_moments, ClosedForm, MomentSet};
pub use records::RecordsStore;
pub use search::{
    conditional_vertex_density, construction_bound, evaluate, local_search, symmetrization_step,
    Density, EvalConfig, Method, SearchConfig, SearchRecord,
};
