//! The acceptance suite: each criterion as a function returning an outcome.
//!
//! Everything random here is drawn from fixed seeds, so every run of the
//! suite does the same work.

use std::sync::OnceLock;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::brute::{brute_force_extremal, brute_force_table, BruteTable};
use crate::checks::{anti_concentration_check, brun_check, shift_from};
use crate::construct::{clique_union, gnp, matching, two_cliques};
use crate::distribution::{
    exact_distribution, max_edges, mc_distribution, naive_distribution, EdgeDistribution,
};
use crate::error::Result;
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::moments::{
    binomial_moment_closed_form, distribution_moments, expected_edges, fourth_central_closed_form,
    to_f64, variance_closed_form,
};
use crate::search::{construction_bound, evaluate, local_search, EvalConfig, SearchConfig};

pub const CORPUS_SEED: u64 = 0x5eed_0001;
pub const MC_SEED: u64 = 1120;
pub const SEARCH_SEED: u64 = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(id: u8, name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            id,
            name,
            passed,
            detail,
        }
    }

    fn from_result(id: u8, name: &'static str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Self::new(id, name, passed, detail),
            Err(e) => Self::new(id, name, false, format!("error: {e}")),
        }
    }

    /// `PASS  3 three-vertex corner: ...`
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

pub type Criterion = fn() -> Outcome;

pub const CRITERIA: [(u8, &str, Criterion); 10] = [
    (1, "oracle equivalence", criterion_1),
    (2, "complement symmetry and monotonicity", criterion_2),
    (3, "three-vertex corner", criterion_3),
    (4, "1/e construction", criterion_4),
    (5, "poisson moments", criterion_5),
    (6, "anti-concentration", criterion_6),
    (7, "shift inequalities", criterion_7),
    (8, "symmetric-difference identity", criterion_8),
    (9, "search sanity", criterion_9),
    (10, "determinism", criterion_10),
];

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(|(_, _, f)| f()).collect()
}

/// `count` seeded `G(n, p)` graphs with `n` uniform in `min_n..=max_n` and `p` uniform in `[0, 1)`.
pub fn corpus(count: usize, min_n: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(min_n..=max_n);
            let p: f64 = rng.random();
            gnp(n, p, rng.random()).expect("corpus sizes are valid")
        })
        .collect()
}

/// Criteria 1 and 2 share this corpus.
fn small_corpus() -> Vec<Graph> {
    corpus(200, 1, 12, CORPUS_SEED)
}

fn brute_tables() -> &'static [BruteTable] {
    static TABLES: OnceLock<Vec<BruteTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        (1..=7)
            .map(|n| brute_force_table(n, true).expect("n <= 7"))
            .collect()
    })
}

fn brute(n: usize) -> &'static BruteTable {
    &brute_tables()[n - 1]
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

pub fn criterion_1() -> Outcome {
    Outcome::from_result(
        1,
        "oracle equivalence",
        (|| {
            let mut cases = 0;
            let mut mismatches = Vec::new();
            for (i, g) in small_corpus().iter().enumerate() {
                for k in 1..=g.n() {
                    cases += 1;
                    let d = exact_distribution(g, k)?;
                    if d != naive_distribution(g, k)? {
                        mismatches.push(format!("graph {i} k={k}: distribution"));
                        continue;
                    }
                    let m = distribution_moments(&d);
                    let checks = [
                        ("mean", expected_edges(g, k)? == m.mu),
                        ("variance", variance_closed_form(g, k)? == m.central2),
                        (
                            "fourth central",
                            fourth_central_closed_form(g, k)? == m.central4,
                        ),
                        (
                            "binomial moments",
                            (1..=4).all(|r| {
                                binomial_moment_closed_form(g, k, r).ok().as_ref()
                                    == Some(m.binom_moment(r))
                            }),
                        ),
                    ];
                    for (name, ok) in checks {
                        if !ok {
                            mismatches.push(format!("graph {i} k={k}: {name}"));
                        }
                    }
                }
            }
            let detail = if mismatches.is_empty() {
                format!(
                    "{cases} (graph, k) cases, distribution and four moment forms agree exactly"
                )
            } else {
                format!("{} mismatches, first: {}", mismatches.len(), mismatches[0])
            };
            Ok((mismatches.is_empty(), detail))
        })(),
    )
}

pub fn criterion_2() -> Outcome {
    Outcome::from_result(
        2,
        "complement symmetry and monotonicity",
        (|| {
            let mut sym_cases = 0;
            let mut sym_fail = 0;
            for g in small_corpus() {
                let c = g.complement();
                for k in 1..=g.n() {
                    sym_cases += 1;
                    let (a, b) = (exact_distribution(&g, k)?, exact_distribution(&c, k)?);
                    let top = max_edges(k);
                    if (0..=top).any(|l| a.count(l) != b.count(top - l)) {
                        sym_fail += 1;
                    }
                }
            }
            let mut mono_cases = 0;
            let mut mono_fail = Vec::new();
            for n in 1..7 {
                for k in 1..=n {
                    for l in 0..=max_edges(k) {
                        mono_cases += 1;
                        let (small, large) = (brute(n).density(k, l)?, brute(n + 1).density(k, l)?);
                        if large > small {
                            mono_fail.push(format!("I({},{k},{l}) > I({n},{k},{l})", n + 1));
                        }
                    }
                }
            }
            let passed = sym_fail == 0 && mono_fail.is_empty();
            let mut detail = format!(
                "complement: {sym_fail}/{sym_cases} violations; \
                 monotone in n (n <= 7): {}/{mono_cases} violations",
                mono_fail.len()
            );
            if let Some(f) = mono_fail.first() {
                detail.push_str(&format!(", first {f}"));
            }
            Ok((passed, detail))
        })(),
    )
}

pub fn criterion_3() -> Outcome {
    Outcome::from_result(
        3,
        "three-vertex corner",
        (|| {
            let three_quarters = ratio(3, 4);
            let mut ok = true;
            let mut parts = Vec::new();
            for l in [1, 2] {
                let vals: Vec<BigRational> = (5..=7)
                    .map(|n| brute(n).density(3, l))
                    .collect::<Result<_>>()?;
                ok &= vals.iter().all(|v| *v >= three_quarters);
                ok &= vals.windows(2).all(|w| w[1] <= w[0]);
                let shown: Vec<String> = vals.iter().map(|v| format!("{v}")).collect();
                parts.push(format!("I(5..7,3,{l}) = {}", shown.join(", ")));
            }
            let d = evaluate(&two_cliques(30)?, 3, 1, &EvalConfig::default())?.value();
            let exact = d == ratio(3150, 4060);
            let close = (to_f64(&d) - 0.75).abs() <= 0.03;
            ok &= exact && close;
            parts.push(format!("two_cliques(30) P(X=1) = {d} ~ {:.4}", to_f64(&d)));
            Ok((ok, parts.join("; ")))
        })(),
    )
}

fn one_over_e_estimate() -> Result<crate::distribution::McEstimate> {
    mc_distribution(&clique_union(1120, 28)?, 8, 1_000_000, MC_SEED)
}

pub fn criterion_4() -> Outcome {
    Outcome::from_result(
        4,
        "1/e construction",
        (|| {
            let est = one_over_e_estimate()?;
            let p = est.estimate(1);
            let target = (-1f64).exp();
            let passed = (p - target).abs() <= 0.03;
            Ok((
                passed,
                format!(
                    "P(X=1) = {p:.5} +- {:.5}, 1/e = {target:.5}, |diff| = {:.5}",
                    est.std_error(1),
                    (p - target).abs()
                ),
            ))
        })(),
    )
}

pub fn criterion_5() -> Outcome {
    Outcome::from_result(
        5,
        "poisson moments",
        (|| {
            let g = matching(100)?;
            let mut passed = true;
            let mut parts = Vec::new();
            for r in 1..=3 {
                let rep = brun_check(&g, 10, r)?;
                let x = rep.ratio_f64().unwrap_or(f64::NAN);
                passed &= (0.8..=1.05).contains(&x);
                parts.push(format!("r={r}: {x:.6}"));
            }
            Ok((
                passed,
                format!(
                    "E[C(X,r)]/(mu^r/r!) {} (window [0.8, 1.05])",
                    parts.join(", ")
                ),
            ))
        })(),
    )
}

pub fn criterion_6() -> Outcome {
    Outcome::from_result(
        6,
        "anti-concentration",
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 6);
            let mut cases = 0;
            let mut skipped = 0;
            let mut violations = Vec::new();
            while cases < 500 {
                let n = rng.random_range(3..=14);
                let p: f64 = rng.random_range(0.05..0.95);
                let g = gnp(n, p, rng.random())?;
                let k = rng.random_range(2..=n);
                let l = rng.random_range(0..=max_edges(k));
                let d = exact_distribution(&g, k)?;
                if distribution_moments(&d).central2 == BigRational::from_integer(0.into()) {
                    skipped += 1;
                    continue;
                }
                cases += 1;
                let rep = anti_concentration_check(&d, l)?;
                if !rep.holds() {
                    violations.push(format!("{} k={k} l={l}", write_graph6(&g)));
                }
            }
            let mut detail = format!(
                "{cases} cases ({skipped} zero-variance draws skipped), {} violations",
                violations.len()
            );
            if let Some(v) = violations.first() {
                detail.push_str(&format!(", first {v}"));
            }
            Ok((violations.is_empty(), detail))
        })(),
    )
}

pub fn criterion_7() -> Outcome {
    Outcome::from_result(
        7,
        "shift inequalities",
        (|| {
            let mut checks = 0;
            let mut violations = Vec::new();
            for g in corpus(100, 2, 11, CORPUS_SEED ^ 7) {
                let dists: Vec<EdgeDistribution> = (1..=g.n())
                    .map(|k| exact_distribution(&g, k))
                    .collect::<Result<_>>()?;
                for k in 2..=g.n() {
                    for t in 0..=max_edges(k) {
                        let rep = shift_from(&dists[k - 2], &dists[k - 1], t)?;
                        checks += rep.checks.len();
                        if !rep.holds() {
                            violations.push(format!("{} k={k} t={t}", write_graph6(&g)));
                        }
                    }
                }
            }
            let mut detail = format!(
                "{checks} exact comparisons, {} violations",
                violations.len()
            );
            if let Some(v) = violations.first() {
                detail.push_str(&format!(", first {v}"));
            }
            Ok((violations.is_empty(), detail))
        })(),
    )
}

pub fn criterion_8() -> Outcome {
    let graphs = corpus(1000, 1, 50, CORPUS_SEED ^ 8);
    let bad = graphs
        .iter()
        .filter(|g| g.symm_diff_sum() != g.symm_diff_sum_identity())
        .count();
    Outcome::new(
        8,
        "symmetric-difference identity",
        bad == 0,
        format!("{} graphs, {bad} mismatches", graphs.len()),
    )
}

pub fn criterion_9() -> Outcome {
    Outcome::from_result(
        9,
        "search sanity",
        (|| {
            let cfg = SearchConfig::default();
            let found = local_search(24, 3, 1, &cfg, SEARCH_SEED)?;
            let floor = construction_bound(24, 3, 1, SEARCH_SEED, &cfg.eval)?;
            let (a, b) = (found.density_value()?, floor.density_value()?);
            let brute = brute_force_extremal(4, 3, 2)?;
            let passed = a >= b && found.exact && brute.density == "1";
            Ok((
                passed,
                format!(
                    "local_search(24,3,1) = {} ({}), construction_bound = {} ({}); I(4,3,2) = {}",
                    found.density, found.graph, floor.density, floor.method, brute.density
                ),
            ))
        })(),
    )
}

/// Serialized outputs of every randomized step in the suite.
fn randomized_outputs() -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (count, lo, hi, seed) in [
        (200, 1, 12, CORPUS_SEED),
        (100, 2, 11, CORPUS_SEED ^ 7),
        (1000, 1, 50, CORPUS_SEED ^ 8),
    ] {
        let g6: Vec<String> = corpus(count, lo, hi, seed)
            .iter()
            .map(write_graph6)
            .collect();
        out.push(g6.join("\n"));
    }
    out.push(serde_json::to_string(&one_over_e_estimate()?.to_json())?);
    let cfg = SearchConfig::default();
    out.push(serde_json::to_string(&local_search(
        24,
        3,
        1,
        &cfg,
        SEARCH_SEED,
    )?)?);
    out.push(serde_json::to_string(&construction_bound(
        24,
        3,
        1,
        SEARCH_SEED,
        &cfg.eval,
    )?)?);
    out.push(serde_json::to_string(&criterion_6())?);
    Ok(out)
}

pub fn criterion_10() -> Outcome {
    Outcome::from_result(
        10,
        "determinism",
        (|| {
            let first = randomized_outputs()?;
            let second = randomized_outputs()?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .map_err(|e| crate::error::precondition(e.to_string()))?;
            let single = pool.install(randomized_outputs)?;
            let differing = (0..first.len())
                .filter(|&i| first[i] != second[i] || first[i] != single[i])
                .count();
            Ok((
            differing == 0,
            format!("{} outputs repeated (default pool twice, one-thread pool once), {differing} differ", first.len()),
        ))
        })(),
    )
}
