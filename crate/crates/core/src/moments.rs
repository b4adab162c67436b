//! Moments of `X`, both from an enumerated distribution and in closed form
//! from subgraph counts.
//!
//! With `X = Σ_e X_e` over edges and `p_t = (k)_t / (n)_t` the probability
//! that `t` fixed vertices are all sampled, any product of edge indicators
//! has expectation `p_t` where `t` is the number of vertices its edges span.
//! Grouping edge tuples by the [`Shape`] of their union turns every moment up
//! to order four into a finite sum over the census, with no approximation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::census::{census, Shape, SubgraphCensus};
use crate::combinatorics::inclusion_probability;
use crate::distribution::{check_k, EdgeDistribution};
use crate::error::{precondition, Result};
use crate::graph::Graph;

pub(crate) fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSet {
    pub mu: BigRational,
    pub central2: BigRational,
    pub central3: BigRational,
    pub central4: BigRational,
    /// `E[C(X, r)]` for `r = 1..=4`.
    pub binom_moments: [BigRational; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentJson {
    pub mu: String,
    pub central2: String,
    pub central3: String,
    pub central4: String,
    pub binom_moments: Vec<String>,
    pub mu_f64: f64,
    pub central2_f64: f64,
    pub central3_f64: f64,
    pub central4_f64: f64,
    pub binom_moments_f64: Vec<f64>,
}

impl MomentSet {
    pub fn binom_moment(&self, r: usize) -> &BigRational {
        &self.binom_moments[r - 1]
    }

    pub fn to_json(&self) -> MomentJson {
        MomentJson {
            mu: rational_string(&self.mu),
            central2: rational_string(&self.central2),
            central3: rational_string(&self.central3),
            central4: rational_string(&self.central4),
            binom_moments: self.binom_moments.iter().map(rational_string).collect(),
            mu_f64: to_f64(&self.mu),
            central2_f64: to_f64(&self.central2),
            central3_f64: to_f64(&self.central3),
            central4_f64: to_f64(&self.central4),
            binom_moments_f64: self.binom_moments.iter().map(to_f64).collect(),
        }
    }
}

fn binom_small(x: usize, r: usize) -> u64 {
    if x < r {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (x - i) as u64 / (i as u64 + 1))
}

/// Moments of an enumerated distribution, in exact integer arithmetic.
pub fn distribution_moments(d: &EdgeDistribution) -> MomentSet {
    let total: BigInt = d.total().clone().into();
    let weighted = |f: &dyn Fn(usize) -> BigRational| -> BigRational {
        let s: BigRational = d
            .counts()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| f(l) * rat(BigInt::from(c.clone())))
            .sum();
        s / rat(total.clone())
    };
    let mu = weighted(&|l| rat(l));
    let central = |j: i32| weighted(&|l| num_traits::pow(rat(l) - &mu, j as usize));
    let binom = |r: usize| weighted(&|l| rat(binom_small(l, r)));
    MomentSet {
        central2: central(2),
        central3: central(3),
        central4: central(4),
        binom_moments: [binom(1), binom(2), binom(3), binom(4)],
        mu,
    }
}

/// Ordered edge 4-tuples whose distinct edges are exactly one given copy of a
/// shape with `j` edges: surjections from 4 positions onto `j` edges.
pub const ORDERED_TUPLES_PER_COPY: [u64; 5] = [0, 1, 14, 36, 24];

/// Closed-form moment evaluator for one `(G, k)`.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    census: SubgraphCensus,
    /// `p[t] = (k)_t / (n)_t` for `t = 0..=8`
    p: Vec<BigRational>,
}

impl ClosedForm {
    pub fn new(g: &Graph, k: usize) -> Result<Self> {
        check_k(g.n(), k)?;
        Ok(Self::from_census(g.n(), k, census(g)))
    }

    pub fn from_census(n: usize, k: usize, census: SubgraphCensus) -> Self {
        let p = (0..=8).map(|t| inclusion_probability(n, k, t)).collect();
        Self { census, p }
    }

    pub fn census(&self) -> &SubgraphCensus {
        &self.census
    }

    fn count(&self, s: Shape) -> BigRational {
        rat(self.census.get(s))
    }

    /// `E[X] = m (k)_2 / (n)_2`.
    pub fn mean(&self) -> BigRational {
        self.count(Shape::K2) * &self.p[2]
    }

    /// `E[C(X, r)]`: sum over unordered `r`-sets of distinct edges.
    pub fn binomial_moment(&self, r: usize) -> Result<BigRational> {
        if !(1..=4).contains(&r) {
            return Err(precondition(format!(
                "closed-form binomial moments need 1 <= r <= 4, got {r}"
            )));
        }
        Ok(Shape::with_edges(r)
            .map(|s| self.count(s) * &self.p[s.vertex_count()])
            .sum())
    }

    pub fn second_moment(&self) -> BigRational {
        self.count(Shape::K2) * &self.p[2]
            + rat(2) * self.count(Shape::Cherry) * &self.p[3]
            + rat(2) * self.count(Shape::TwoK2) * &self.p[4]
    }

    pub fn variance(&self) -> BigRational {
        let mu = self.mean();
        self.second_moment() - &mu * &mu
    }

    /// `E[(X - μ)^4] = Σ over ordered edge 4-tuples of E[Π (X_e - p_2)]`.
    pub fn fourth_central(&self) -> BigRational {
        Shape::ALL
            .into_iter()
            .filter(|&s| self.census.get(s) > 0)
            .map(|s| self.count(s) * self.tuple_contribution(s))
            .sum()
    }

    /// Total of `E[Π_{i} (X_{e_i} - p_2)]` over ordered 4-tuples covering one copy of `shape`.
    ///
    /// Expanding the product, a sub-multiset `B` of the tuple contributes
    /// `(-p_2)^{4-|B|} p_{t(B)}`; repeated edges collapse because `X_e² = X_e`,
    /// which is automatic when `t(B)` counts the vertices of the union.
    pub fn tuple_contribution(&self, shape: Shape) -> BigRational {
        let edges = shape.witness();
        let j = edges.len();
        let neg_p = -self.p[2].clone();
        let powers: Vec<BigRational> = (0..=4).map(|e| num_traits::pow(neg_p.clone(), e)).collect();
        let mut total = BigRational::zero();
        for code in 0..j.pow(4) {
            let tuple = [
                code % j,
                code / j % j,
                code / (j * j) % j,
                code / (j * j * j),
            ];
            if (0..j).any(|e| !tuple.contains(&e)) {
                continue;
            }
            for b in 0u32..16 {
                let mut verts = 0u16;
                for (i, &e) in tuple.iter().enumerate() {
                    if b >> i & 1 == 1 {
                        let (u, v) = edges[e];
                        verts |= 1 << u | 1 << v;
                    }
                }
                let t = verts.count_ones() as usize;
                total += &powers[4 - b.count_ones() as usize] * &self.p[t];
            }
        }
        total
    }

    /// Fourth central moment by a second route: raw moments from binomial
    /// moments (`X^4 = C(X,1) + 14 C(X,2) + 36 C(X,3) + 24 C(X,4)`).
    pub fn fourth_central_via_binomial_moments(&self) -> BigRational {
        let b: Vec<BigRational> = (1..=4)
            .map(|r| self.binomial_moment(r).expect("r in range"))
            .collect();
        let e2 = &b[0] + rat(2) * &b[1];
        let e3 = &b[0] + rat(6) * &b[1] + rat(6) * &b[2];
        let e4 = &b[0] + rat(14) * &b[1] + rat(36) * &b[2] + rat(24) * &b[3];
        let mu = b[0].clone();
        let mu2 = &mu * &mu;
        e4 - rat(4) * &mu * e3 + rat(6) * &mu2 * e2 - rat(3) * &mu2 * &mu2
    }
}

pub fn expected_edges(g: &Graph, k: usize) -> Result<BigRational> {
    check_k(g.n(), k)?;
    let m = g.m();
    Ok(BigRational::new(
        BigInt::from(m) * BigInt::from(k) * BigInt::from(k - 1),
        BigInt::from(g.n()) * BigInt::from(g.n().max(2) - 1),
    ))
}

pub fn variance_closed_form(g: &Graph, k: usize) -> Result<BigRational> {
    Ok(ClosedForm::new(g, k)?.variance())
}

pub fn fourth_central_closed_form(g: &Graph, k: usize) -> Result<BigRational> {
    Ok(ClosedForm::new(g, k)?.fourth_central())
}

pub fn binomial_moment_closed_form(g: &Graph, k: usize, r: usize) -> Result<BigRational> {
    ClosedForm::new(g, k)?.binomial_moment(r)
}

/// Closed-form [`MomentSet`]. The third central moment has no closed-form
/// route here and is derived from binomial moments.
pub fn closed_form_moments(g: &Graph, k: usize) -> Result<MomentSet> {
    let cf = ClosedForm::new(g, k)?;
    let b: Vec<BigRational> = (1..=4)
        .map(|r| cf.binomial_moment(r))
        .collect::<Result<_>>()?;
    let mu = cf.mean();
    let e2 = &b[0] + rat(2) * &b[1];
    let e3 = &b[0] + rat(6) * &b[1] + rat(6) * &b[2];
    let central3 = e3 - rat(3) * &mu * &e2 + rat(2) * &mu * &mu * &mu;
    Ok(MomentSet {
        central2: cf.variance(),
        central3,
        central4: cf.fourth_central(),
        binom_moments: [b[0].clone(), b[1].clone(), b[2].clone(), b[3].clone()],
        mu,
    })
}

/// `e^{-μ} μ^l / l!`, evaluated in log space for `l > 20`.
pub fn poisson_pmf(mu: f64, l: u64) -> f64 {
    assert!(mu >= 0.0, "poisson mean must be non-negative");
    if mu == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    if l <= 20 {
        let fact: f64 = (1..=l).map(|i| i as f64).product();
        (-mu).exp() * mu.powi(l as i32) / fact
    } else {
        let ln_fact: f64 = (2..=l).map(|i| (i as f64).ln()).sum();
        (-mu + l as f64 * mu.ln() - ln_fact).exp()
    }
}
