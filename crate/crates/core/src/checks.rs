//! Finite-n checks: Poisson binomial-moment ratios, fourth-moment
//! anti-concentration, and the `k -> k-1` shift inequalities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::distribution::{check_k, exact_distribution_with_budget, max_edges, EdgeDistribution};
use crate::error::{precondition, Error, Result};
use crate::graph::Graph;
use crate::moments::{distribution_moments, rat, rational_string, to_f64, ClosedForm};

/// One inequality `lhs >= rhs` (or `lhs <= rhs`, see `quantity`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub quantity: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub slack: String,
}

impl CheckReport {
    fn exact(
        quantity: impl Into<String>,
        lhs: &BigRational,
        rhs: &BigRational,
        holds: bool,
        slack: &BigRational,
    ) -> Self {
        Self {
            quantity: quantity.into(),
            lhs: rational_string(lhs),
            rhs: rational_string(rhs),
            holds,
            slack: rational_string(slack),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BrunReport {
    pub r: usize,
    /// `E[C(X, r)]` from the census.
    pub binomial_moment: BigRational,
    /// `μ^r / r!` with `μ = E[X]`.
    pub poisson_moment: BigRational,
    /// `None` when `μ = 0`.
    pub ratio: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrunJson {
    pub r: usize,
    pub binomial_moment: String,
    pub poisson_moment: String,
    pub ratio: Option<String>,
    pub ratio_f64: Option<f64>,
}

impl BrunReport {
    pub fn ratio_f64(&self) -> Option<f64> {
        self.ratio.as_ref().map(to_f64)
    }

    pub fn to_json(&self) -> BrunJson {
        BrunJson {
            r: self.r,
            binomial_moment: rational_string(&self.binomial_moment),
            poisson_moment: rational_string(&self.poisson_moment),
            ratio: self.ratio.as_ref().map(rational_string),
            ratio_f64: self.ratio_f64(),
        }
    }
}

pub fn brun_check(g: &Graph, k: usize, r: usize) -> Result<BrunReport> {
    let cf = ClosedForm::new(g, k)?;
    brun_from(&cf, r)
}

pub fn brun_from(cf: &ClosedForm, r: usize) -> Result<BrunReport> {
    let binomial_moment = cf.binomial_moment(r)?;
    let mu = cf.mean();
    let fact: u64 = (1..=r as u64).product();
    let poisson_moment = num_traits::pow(mu, r) / rat(fact);
    let ratio = (!poisson_moment.is_zero()).then(|| &binomial_moment / &poisson_moment);
    Ok(BrunReport {
        r,
        binomial_moment,
        poisson_moment,
        ratio,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AntiConcentrationReport {
    pub l: usize,
    pub variance: BigRational,
    pub central4: BigRational,
    /// `central4 / variance²`
    pub b: BigRational,
    /// `2^{-4/3} / b`
    pub bound: f64,
    pub p_above: BigRational,
    pub p_below: BigRational,
    pub p_at: BigRational,
    pub checks: Vec<CheckReport>,
}

impl AntiConcentrationReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "l": self.l,
            "variance": rational_string(&self.variance),
            "central4": rational_string(&self.central4),
            "b": rational_string(&self.b),
            "bound": self.bound,
            "p_above": rational_string(&self.p_above),
            "p_below": rational_string(&self.p_below),
            "p_at": rational_string(&self.p_at),
            "holds": self.holds(),
            "checks": self.checks,
        })
    }
}

/// `p >= 2^{-4/3} / b` decided exactly: cube both sides, `16 (p b)^3 >= 1`.
fn at_least_agk_bound(p: &BigRational, b: &BigRational) -> bool {
    let pb = p * b;
    rat(16) * &pb * &pb * &pb >= BigRational::one()
}

pub fn anti_concentration_check(d: &EdgeDistribution, l: usize) -> Result<AntiConcentrationReport> {
    let p_at = d.probability_at(l)?;
    let m = distribution_moments(d);
    if m.central2.is_zero() {
        return Err(Error::ZeroVariance);
    }
    let b = &m.central4 / (&m.central2 * &m.central2);
    let bound = 2f64.powf(-4.0 / 3.0) / to_f64(&b);

    let mut p_above = BigRational::zero();
    let mut p_below = BigRational::zero();
    let total: BigInt = d.total().clone().into();
    for (x, c) in d.counts().iter().enumerate() {
        let p = BigRational::new(c.clone().into(), total.clone());
        let y = rat(x) - &m.mu;
        if y.is_positive() {
            p_above += p;
        } else if y.is_negative() {
            p_below += p;
        }
    }
    let not_at = BigRational::one() - &p_at;

    let report = |name: &str, p: &BigRational| CheckReport {
        quantity: name.to_string(),
        lhs: rational_string(p),
        rhs: format!("{bound:.17e}"),
        holds: at_least_agk_bound(p, &b),
        slack: format!("{:.17e}", to_f64(p) - bound),
    };
    let checks = vec![
        report("P(X > mu) >= 2^(-4/3)/b", &p_above),
        report("P(X < mu) >= 2^(-4/3)/b", &p_below),
        // P(X = l) <= 1 - bound  <=>  1 - P(X = l) >= bound
        report(&format!("1 - P(X = {l}) >= 2^(-4/3)/b"), &not_at),
    ];
    Ok(AntiConcentrationReport {
        l,
        variance: m.central2,
        central4: m.central4,
        b,
        bound,
        p_above,
        p_below,
        p_at,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShiftReport {
    pub k: usize,
    pub t: usize,
    /// `P(X_{G,k-1} = t)`
    pub p_smaller: BigRational,
    /// `P(X_{G,k} = t)`
    pub p_larger: BigRational,
    pub checks: Vec<CheckReport>,
}

impl ShiftReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "t": self.t,
            "p_smaller": rational_string(&self.p_smaller),
            "p_larger": rational_string(&self.p_larger),
            "holds": self.holds(),
            "checks": self.checks,
        })
    }
}

fn prob_or_zero(d: &EdgeDistribution, t: usize) -> BigRational {
    d.probability_at(t).unwrap_or_else(|_| BigRational::zero())
}

/// Both shift inequalities for one `t`, given the distributions at `k-1` and `k`.
pub fn shift_from(
    smaller: &EdgeDistribution,
    larger: &EdgeDistribution,
    t: usize,
) -> Result<ShiftReport> {
    let k = larger.k();
    if smaller.k() + 1 != k || smaller.n() != larger.n() {
        return Err(precondition(
            "shift check needs distributions at k-1 and k of the same graph",
        ));
    }
    if t > max_edges(k) {
        return Err(precondition(format!(
            "t = {t} exceeds C(k,2) = {}",
            max_edges(k)
        )));
    }
    let p_smaller = prob_or_zero(smaller, t);
    let p_larger = prob_or_zero(larger, t);
    let kq = rat(k);

    let lower = (rat(k as i64 - 2 * t as i64) / &kq) * &p_larger;
    let upper = &p_larger + rat(2 * t + 2) / &kq;
    let checks = vec![
        CheckReport::exact(
            format!("P(X_(k-1) = {t}) >= (k-2t)/k * P(X_k = {t})"),
            &p_smaller,
            &lower,
            p_smaller >= lower,
            &(&p_smaller - &lower),
        ),
        CheckReport::exact(
            format!("P(X_(k-1) = {t}) <= P(X_k = {t}) + (2t+2)/k"),
            &p_smaller,
            &upper,
            p_smaller <= upper,
            &(&upper - &p_smaller),
        ),
    ];
    Ok(ShiftReport {
        k,
        t,
        p_smaller,
        p_larger,
        checks,
    })
}

pub fn shift_inequality_check(g: &Graph, k: usize, t: usize, budget: u64) -> Result<ShiftReport> {
    check_k(g.n(), k)?;
    if k < 2 {
        return Err(precondition("shift check needs k >= 2"));
    }
    let smaller = exact_distribution_with_budget(g, k - 1, budget)?;
    let larger = exact_distribution_with_budget(g, k, budget)?;
    shift_from(&smaller, &larger, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{matching, two_cliques};
    use crate::distribution::{exact_distribution, DEFAULT_BUDGET};

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn agk_two_cliques() {
        let d = exact_distribution(&two_cliques(6).unwrap(), 3).unwrap();
        let r = anti_concentration_check(&d, 1).unwrap();
        assert_eq!(r.variance, q(9, 25));
        assert!((to_f64(&r.b) - 8.111_111).abs() < 1e-5, "{}", to_f64(&r.b));
        assert!((r.bound - 0.0489).abs() < 1e-4, "{}", r.bound);
        assert_eq!(r.p_above, q(1, 10));
        assert_eq!(r.p_below, q(9, 10));
        assert!(r.holds());
    }

    #[test]
    fn agk_symmetric_two_point() {
        // {0:1, 2:1}/2 is not realisable as a k-subset law, so check the
        // arithmetic directly: σ² = 1, E[Y⁴] = 1, b = 1, bound = 2^{-4/3}.
        let b = rat(1);
        assert!(at_least_agk_bound(&q(1, 2), &b));
        // 2^{-4/3} ≈ 0.396850
        assert!(!at_least_agk_bound(&q(3968, 10000), &b));
        assert!(at_least_agk_bound(&q(3969, 10000), &b));
    }

    #[test]
    fn agk_refuses_constant() {
        let d = exact_distribution(&Graph::complete(4).unwrap(), 3).unwrap();
        assert!(matches!(
            anti_concentration_check(&d, 3),
            Err(Error::ZeroVariance)
        ));
    }

    #[test]
    fn shift_examples() {
        let g = two_cliques(6).unwrap();
        let r = shift_inequality_check(&g, 3, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.p_smaller, q(2, 5));
        assert_eq!(r.checks[0].rhs, "3/10");
        assert_eq!(r.checks[1].rhs, "67/30");
        assert!(r.holds());

        // k - 2t <= 0: lower bound non-positive
        let r = shift_inequality_check(&g, 3, 3, DEFAULT_BUDGET).unwrap();
        assert!(r.holds());
        assert!(r.p_smaller.is_zero());

        let e = Graph::empty(6).unwrap();
        let r = shift_inequality_check(&e, 4, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.p_smaller.clone(), r.p_larger.clone()), (rat(1), rat(1)));
        assert_eq!(r.checks[0].slack, "0");
        assert!(r.holds());

        assert!(shift_inequality_check(&g, 1, 0, DEFAULT_BUDGET).is_err());
        assert!(shift_inequality_check(&g, 3, 4, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn brun_examples() {
        let r = brun_check(&two_cliques(6).unwrap(), 3, 1).unwrap();
        assert_eq!(r.ratio, Some(rat(1)));
        let r = brun_check(&Graph::empty(5).unwrap(), 3, 2).unwrap();
        assert_eq!(r.ratio, None);
        let dense = brun_check(&Graph::complete(10).unwrap(), 4, 2).unwrap();
        // X ≡ 6, so E[C(X,2)] = 15 against 6²/2 = 18
        assert_eq!(dense.ratio, Some(q(15, 18)));
    }

    #[test]
    fn brun_perfect_matching_independent_count() {
        // X = number of matching edges with both ends sampled; a set of r matching
        // edges is fully sampled with probability C(n-2r, k-2r)/C(n, k).
        use crate::combinatorics::binomial;
        let (n, k) = (100usize, 10usize);
        let g = matching(n).unwrap();
        for r in 1..=3usize {
            let rep = brun_check(&g, k, r).unwrap();
            let oracle = BigRational::new(
                (binomial(n / 2, r) * binomial(n - 2 * r, k - 2 * r)).into(),
                binomial(n, k).into(),
            );
            assert_eq!(rep.binomial_moment, oracle, "r={r}");
        }
        let ratios: Vec<f64> = (1..=3)
            .map(|r| brun_check(&g, k, r).unwrap().ratio_f64().unwrap())
            .collect();
        assert_eq!(ratios[0], 1.0);
        assert!((ratios[1] - 0.635_052).abs() < 1e-6, "{ratios:?}");
        assert!((ratios[2] - 0.220_597).abs() < 1e-6, "{ratios:?}");
    }
}
