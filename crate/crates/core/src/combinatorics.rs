//! Exact binomials, falling-factorial inclusion probabilities and the
//! revolving-door ordering of `k`-subsets.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` if it fits in a `u64`.
pub fn binomial_u64(n: usize, k: usize) -> Option<u64> {
    binomial(n, k).to_u64()
}

/// `(x)_t = x (x-1) ... (x-t+1)`; zero when `t > x`.
pub fn falling_factorial(x: usize, t: usize) -> BigUint {
    if t > x {
        return BigUint::zero();
    }
    (0..t).fold(BigUint::one(), |acc, i| acc * (x - i))
}

/// Probability that `t` fixed vertices all land in a uniform `k`-subset of `n`:
/// `(k)_t / (n)_t`, zero when `t > k`.
pub fn inclusion_probability(n: usize, k: usize, t: usize) -> BigRational {
    if t > k {
        return BigRational::zero();
    }
    BigRational::new(
        falling_factorial(k, t).into(),
        falling_factorial(n, t).into(),
    )
}

/// Vertex set of the revolving-door combination with the given rank.
///
/// The order is `R(n, k) = R(n-1, k)` followed by the reverse of
/// `R(n-1, k-1)` with `n-1` added to every member. Consecutive subsets
/// differ by exactly one swap.
pub fn revolving_door_unrank(n: usize, k: usize, rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let (mut n, mut k, mut rank) = (n, k, rank);
    let mut reversed = false;
    loop {
        if k == 0 {
            break;
        }
        if k == n {
            out.extend(0..n);
            break;
        }
        let total = binomial_u64(n, k).expect("rank fits in u64");
        let r = if reversed { total - 1 - rank } else { rank };
        let head = binomial_u64(n - 1, k).expect("rank fits in u64");
        if r < head {
            rank = r;
            reversed = false;
        } else {
            out.push(n - 1);
            rank = r - head;
            // second half is traversed backwards
            reversed = true;
            k -= 1;
        }
        n -= 1;
    }
    out.sort_unstable();
    out
}

/// Stepper over revolving-door combinations (Knuth, Algorithm 7.2.1.3R).
///
/// Starting from any combination it walks forward in rank order; each
/// [`RevolvingDoor::step`] reports the `(removed, added)` pair.
#[derive(Clone, Debug)]
pub struct RevolvingDoor {
    // c[1..=k] ascending, c[k+1] = n sentinel; c[0] unused
    c: Vec<usize>,
    k: usize,
}

impl RevolvingDoor {
    pub fn new(n: usize, k: usize, start: &[usize]) -> Self {
        debug_assert_eq!(start.len(), k);
        let mut c = Vec::with_capacity(k + 2);
        c.push(usize::MAX);
        c.extend_from_slice(start);
        c.push(n);
        Self { c, k }
    }

    /// Current combination, ascending.
    pub fn current(&self) -> &[usize] {
        &self.c[1..=self.k]
    }

    /// Advances to the next combination. Must not be called on the last one.
    pub fn step(&mut self) -> (usize, usize) {
        let c = &mut self.c;
        let t = self.k;
        if t % 2 == 1 {
            if c[1] + 1 < c[2] {
                let out = c[1];
                c[1] += 1;
                return (out, c[1]);
            }
        } else if c[1] > 0 {
            let out = c[1];
            c[1] -= 1;
            return (out, c[1]);
        }
        let mut j = 2;
        // odd t resumes at R4, even t at R5
        let mut at_r4 = t % 2 == 1;
        loop {
            if at_r4 {
                if c[j] >= j {
                    let out = c[j];
                    c[j] = c[j - 1];
                    c[j - 1] = j - 2;
                    return (out, j - 2);
                }
                j += 1;
                at_r4 = false;
            } else {
                if c[j] + 1 < c[j + 1] {
                    let out = c[j - 1];
                    c[j - 1] = c[j];
                    c[j] += 1;
                    return (out, c[j]);
                }
                j += 1;
                assert!(j <= t, "revolving door stepped past the last combination");
                at_r4 = true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in start..n {
                cur.push(v);
                rec(n, k, v + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, k, 0, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(68, 34).to_string(), "28453041475240576740");
        assert_eq!(binomial_u64(68, 34), None);
    }

    #[test]
    fn inclusion_probability_matches_binomial_ratio() {
        for n in 1..=14 {
            for k in 0..=n {
                for t in 0..=k + 1 {
                    let lhs = inclusion_probability(n, k, t);
                    let rhs = if t > k {
                        BigRational::zero()
                    } else {
                        BigRational::new(binomial(n - t, k - t).into(), binomial(n, k).into())
                    };
                    assert_eq!(lhs, rhs, "n={n} k={k} t={t}");
                }
            }
        }
    }

    #[test]
    fn stepper_matches_unrank_and_visits_every_subset() {
        for n in 1..=11 {
            for k in 1..=n {
                let total = binomial_u64(n, k).unwrap();
                let first = revolving_door_unrank(n, k, 0);
                assert_eq!(first, (0..k).collect::<Vec<_>>());
                let mut door = RevolvingDoor::new(n, k, &first);
                let mut seen = vec![door.current().to_vec()];
                for r in 1..total {
                    let before = door.current().to_vec();
                    let (out, inn) = door.step();
                    let after = door.current().to_vec();
                    assert!(before.contains(&out) && !after.contains(&out));
                    assert!(after.contains(&inn) && !before.contains(&inn));
                    assert_eq!(after, revolving_door_unrank(n, k, r), "n={n} k={k} r={r}");
                    seen.push(after);
                }
                seen.sort();
                assert_eq!(seen, lex_subsets(n, k));
            }
        }
    }

    #[test]
    fn stepper_resumes_mid_sequence() {
        let (n, k) = (9, 4);
        let mut door = RevolvingDoor::new(n, k, &revolving_door_unrank(n, k, 50));
        for r in 51..binomial_u64(n, k).unwrap() {
            door.step();
            assert_eq!(door.current(), revolving_door_unrank(n, k, r));
        }
    }
}
