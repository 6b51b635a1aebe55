//! Cyclic quotient singularity types: isolatedness and Gorenstein tests,
//! exact minimal log-discrepancy, and the classification of isolated
//! Gorenstein even-dimensional types by whether the discrepancy reaches
//! half the dimension.

use num::Integer;
use thiserror::Error;

use crate::charsum::{pair_by_negation, PairingCertificate};
use crate::linalg::{Int, Rational};

#[derive(Debug, Error)]
pub enum QuotsingError {
    #[error("invalid singularity type: {0}")]
    InvalidType(String),
    #[error("type is not isolated: a weight shares a factor with n")]
    NotIsolated,
    #[error("classification needs an even number of weights, got {0}")]
    OddDimension(usize),
    #[error("enumeration cost {cost} exceeds budget {budget}")]
    ResourceLimit { cost: u128, budget: u64 },
}

/// Quotient singularity C^d / mu_n of type (a_1/n, ..., a_d/n), weights
/// normalized into [1, n-1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityType {
    n: u64,
    weights: Vec<u64>,
}

/// Outcome of the classification of an isolated even-dimensional type.
#[derive(Clone, Debug)]
pub struct ClassificationVerdict {
    pub isolated: bool,
    pub gorenstein: bool,
    pub mld: Rational,
    /// Present exactly when the weights pair into negation classes.
    pub pairing: Option<PairingCertificate>,
    /// Consistency with the equivalence: discrepancy >= d iff paired, and
    /// paired types are automatically Gorenstein.
    pub satisfies_thm18: bool,
}

impl SingularityType {
    /// Weights are read mod n; n = 1 (a smooth point) and weights divisible
    /// by n (a cylinder over a lower-dimensional singularity) are rejected.
    pub fn new(n: u64, raw_weights: &[i64]) -> Result<Self, QuotsingError> {
        if n < 2 {
            return Err(QuotsingError::InvalidType(format!(
                "group order must be at least 2, got {n}"
            )));
        }
        if raw_weights.is_empty() {
            return Err(QuotsingError::InvalidType("no weights given".into()));
        }
        let mut weights = Vec::with_capacity(raw_weights.len());
        for &w in raw_weights {
            let r = w.rem_euclid(n as i64) as u64;
            if r == 0 {
                return Err(QuotsingError::InvalidType(format!(
                    "weight {w} is divisible by n = {n}"
                )));
            }
            weights.push(r);
        }
        Ok(SingularityType { n, weights })
    }

    /// Parses the line format `n a1 a2 ... ad`.
    pub fn parse(line: &str) -> Result<Self, QuotsingError> {
        let mut parts = line.split_whitespace();
        let n: u64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| QuotsingError::InvalidType("line must start with n".into()))?;
        let weights: Result<Vec<i64>, _> = parts
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| QuotsingError::InvalidType(format!("bad weight `{t}`")))
            })
            .collect();
        SingularityType::new(n, &weights?)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    /// Isolated at the origin iff every weight is coprime to n.
    pub fn is_isolated(&self) -> bool {
        self.weights.iter().all(|&a| a.gcd(&self.n) == 1)
    }

    /// Gorenstein iff n divides the weight sum.
    pub fn is_gorenstein(&self) -> bool {
        let sum: u64 = self.weights.iter().map(|&a| a % self.n).sum::<u64>();
        sum % self.n == 0
    }

    /// Minimal log-discrepancy: min over t = 1..n-1 of the sum of the
    /// fractional parts {t a_i / n}, exact. Scans every t; the operation
    /// doubles as the oracle for the classification.
    pub fn mld(&self) -> Result<Rational, QuotsingError> {
        if !self.is_isolated() {
            return Err(QuotsingError::NotIsolated);
        }
        let n = self.n;
        let mut best: Option<u128> = None;
        for t in 1..n {
            let total: u128 = self
                .weights
                .iter()
                .map(|&a| (t as u128 * a as u128) % n as u128)
                .sum();
            best = Some(match best {
                None => total,
                Some(b) if total < b => total,
                Some(b) => b,
            });
        }
        let numerator = best.expect("n >= 2 scans at least t = 1");
        Ok(Rational::new(Int::from(numerator), Int::from(n)))
    }
}

/// Computes the discrepancy and negation pairing of an isolated type of
/// even dimension 2d and checks them against each other: discrepancy >= d
/// iff the weights pair, and paired types are Gorenstein.
pub fn classify_singularity(s: &SingularityType) -> Result<ClassificationVerdict, QuotsingError> {
    if s.dimension() % 2 != 0 {
        return Err(QuotsingError::OddDimension(s.dimension()));
    }
    if !s.is_isolated() {
        return Err(QuotsingError::NotIsolated);
    }
    let d = s.dimension() / 2;
    let mld = s.mld()?;
    let gorenstein = s.is_gorenstein();
    let weights: Vec<Int> = s.weights.iter().map(|&a| Int::from(a)).collect();
    let pairing = pair_by_negation(&weights, &Int::from(s.n)).map(|pairs| PairingCertificate {
        n: Int::from(s.n),
        pairs,
    });
    let mld_ge_d = mld >= Rational::from_integer(Int::from(d as u64));
    let satisfies_thm18 = match &pairing {
        Some(_) => gorenstein && mld_ge_d,
        None => !gorenstein || !mld_ge_d,
    };
    Ok(ClassificationVerdict {
        isolated: true,
        gorenstein,
        mld,
        pairing,
        satisfies_thm18,
    })
}

/// Exhaustive verification report over all isolated types of one modulus.
#[derive(Clone, Debug)]
pub struct Thm18Report {
    pub n: u64,
    pub dimension: usize,
    pub isolated_types: u64,
    pub gorenstein_types: u64,
    pub paired_types: u64,
    pub mld_at_least_d: u64,
    pub violations: Vec<String>,
}

/// Iterates all isolated types (a_1, ..., a_{2d}) mod n up to order and
/// asserts the biconditional "discrepancy >= d iff paired" on the
/// Gorenstein ones, plus "paired implies Gorenstein" on all of them.
pub fn verify_thm18(n: u64, d: usize, budget: u64) -> Result<Thm18Report, QuotsingError> {
    if n < 2 {
        return Err(QuotsingError::InvalidType(format!(
            "group order must be at least 2, got {n}"
        )));
    }
    if d == 0 {
        return Err(QuotsingError::InvalidType("d must be positive".into()));
    }
    let dim = 2 * d;
    let units: Vec<u64> = (1..n).filter(|k| k.gcd(&n) == 1).collect();
    let cost =
        binomial(units.len() as u128 + dim as u128 - 1, dim as u128).saturating_mul(n as u128);
    if cost > budget as u128 {
        return Err(QuotsingError::ResourceLimit { cost, budget });
    }
    let mut report = Thm18Report {
        n,
        dimension: dim,
        isolated_types: 0,
        gorenstein_types: 0,
        paired_types: 0,
        mld_at_least_d: 0,
        violations: Vec::new(),
    };
    let threshold = Rational::from_integer(Int::from(d as u64));
    let mut idx = vec![0usize; dim];
    loop {
        let weights: Vec<i64> = idx.iter().map(|&i| units[i] as i64).collect();
        let s = SingularityType::new(n, &weights).expect("units are valid weights");
        report.isolated_types += 1;
        let verdict = classify_singularity(&s).expect("even-dimensional isolated type");
        let label = || {
            format!(
                "{n} {}",
                weights
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )
        };
        let paired = verdict.pairing.is_some();
        let mld_ge_d = verdict.mld >= threshold;
        if paired {
            report.paired_types += 1;
            if !verdict.gorenstein {
                report
                    .violations
                    .push(format!("paired but not Gorenstein: {}", label()));
            }
        }
        if mld_ge_d {
            report.mld_at_least_d += 1;
        }
        if verdict.gorenstein {
            report.gorenstein_types += 1;
            if paired != mld_ge_d {
                report.violations.push(format!(
                    "biconditional fails (mld = {}, paired = {paired}): {}",
                    verdict.mld,
                    label()
                ));
            }
        }
        if !verdict.satisfies_thm18 {
            report
                .violations
                .push(format!("verdict marked inconsistent: {}", label()));
        }
        let mut p = dim;
        let done = loop {
            if p == 0 {
                break true;
            }
            p -= 1;
            if idx[p] + 1 < units.len() {
                let v = idx[p] + 1;
                for q in idx.iter_mut().skip(p) {
                    *q = v;
                }
                break false;
            }
        };
        if done {
            break;
        }
    }
    Ok(report)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(n: u64, w: &[i64]) -> SingularityType {
        SingularityType::new(n, w).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(Int::from(a), Int::from(b))
    }

    #[test]
    fn isolated_examples() {
        assert!(st(3, &[1, 2]).is_isolated());
        assert!(!st(4, &[1, 2]).is_isolated());
        assert!(st(5, &[1, 2, 3, 4]).is_isolated());
    }

    #[test]
    fn gorenstein_examples() {
        assert!(st(3, &[1, 2]).is_gorenstein());
        assert!(!st(3, &[1, 1]).is_gorenstein());
        assert!(st(5, &[1, 2, 3, 4]).is_gorenstein());
    }

    #[test]
    fn mld_examples() {
        assert_eq!(st(3, &[1, 2]).mld().unwrap(), q(1, 1));
        assert_eq!(st(5, &[1, 2, 3, 4]).mld().unwrap(), q(2, 1));
        assert_eq!(st(7, &[1, 1, 1, 4]).mld().unwrap(), q(1, 1));
    }

    #[test]
    fn mld_requires_isolated() {
        assert!(matches!(
            st(4, &[1, 2]).mld().unwrap_err(),
            QuotsingError::NotIsolated
        ));
    }

    #[test]
    fn type_construction_guards() {
        assert!(SingularityType::new(1, &[1]).is_err());
        assert!(SingularityType::new(4, &[4, 1]).is_err());
        assert!(SingularityType::new(4, &[]).is_err());
        // negative weights normalize mod n
        assert_eq!(st(7, &[-1, 1]).weights(), &[6, 1]);
    }

    #[test]
    fn parse_line_format() {
        let s = SingularityType::parse("7 1 1 6 6").unwrap();
        assert_eq!(s.n(), 7);
        assert_eq!(s.weights(), &[1, 1, 6, 6]);
        assert!(SingularityType::parse("x 1 2").is_err());
        assert!(SingularityType::parse("7 1 y").is_err());
    }

    #[test]
    fn classify_examples() {
        let v = classify_singularity(&st(5, &[1, 4, 2, 3])).unwrap();
        assert_eq!(v.mld, q(2, 1));
        assert!(v.gorenstein);
        let cert = v.pairing.unwrap();
        assert_eq!(cert.pairs, vec![(0, 1), (2, 3)]);
        assert!(v.satisfies_thm18);

        let v = classify_singularity(&st(7, &[1, 1, 6, 6])).unwrap();
        assert_eq!(v.mld, q(2, 1));
        let cert = v.pairing.unwrap();
        assert_eq!(cert.pairs, vec![(0, 2), (1, 3)]);
        assert!(v.satisfies_thm18);

        let v = classify_singularity(&st(7, &[1, 1, 1, 4])).unwrap();
        assert_eq!(v.mld, q(1, 1));
        assert!(v.pairing.is_none());
        assert!(v.satisfies_thm18);
    }

    #[test]
    fn classify_guards() {
        assert!(matches!(
            classify_singularity(&st(5, &[1, 2, 3])).unwrap_err(),
            QuotsingError::OddDimension(3)
        ));
        assert!(matches!(
            classify_singularity(&st(4, &[1, 2, 3, 1])).unwrap_err(),
            QuotsingError::NotIsolated
        ));
    }

    #[test]
    fn paired_sum_is_d_for_every_unit() {
        // paired weights: sum of {t a_i / n} = d for all t coprime to n
        let s = st(9, &[1, 8, 2, 7]);
        for t in 1..9u64 {
            if t.gcd(&9) != 1 {
                continue;
            }
            let total: u64 = s.weights().iter().map(|&a| (t * a) % 9).sum();
            assert_eq!(total, 2 * 9);
        }
    }

    #[test]
    fn mld_reflection_symmetry() {
        // sum_t + sum_{n-t} = 2d for isolated types
        let s = st(11, &[1, 3, 5, 9]);
        let n = 11u64;
        for t in 1..n {
            let f = |t: u64| -> u64 { s.weights().iter().map(|&a| (t * a) % n).sum() };
            assert_eq!(f(t) + f(n - t), 4 * n);
        }
    }

    /// All perfect matchings, tried recursively; independent of the greedy
    /// matcher.
    fn pairable_bruteforce(weights: &[u64], n: u64) -> bool {
        fn rec(rem: &[u64], n: u64) -> bool {
            if rem.is_empty() {
                return true;
            }
            let first = rem[0];
            for j in 1..rem.len() {
                if (first + rem[j]) % n == 0 {
                    let mut next = rem.to_vec();
                    next.remove(j);
                    next.remove(0);
                    if rec(&next, n) {
                        return true;
                    }
                }
            }
            false
        }
        rec(weights, n)
    }

    #[test]
    fn classify_matches_bruteforce_matching() {
        for n in 2..=10u64 {
            let units: Vec<u64> = (1..n).filter(|k| k.gcd(&n) == 1).collect();
            for dim in [4usize, 6] {
                let mut idx = vec![0usize; dim];
                loop {
                    let weights: Vec<u64> = idx.iter().map(|&i| units[i]).collect();
                    let raw: Vec<i64> = weights.iter().map(|&w| w as i64).collect();
                    let v = classify_singularity(&st(n, &raw)).unwrap();
                    assert_eq!(
                        v.pairing.is_some(),
                        pairable_bruteforce(&weights, n),
                        "greedy matcher disagrees at n = {n}, weights {weights:?}"
                    );
                    let mut p = dim;
                    let done = loop {
                        if p == 0 {
                            break true;
                        }
                        p -= 1;
                        if idx[p] + 1 < units.len() {
                            let v = idx[p] + 1;
                            for q in idx.iter_mut().skip(p) {
                                *q = v;
                            }
                            break false;
                        }
                    };
                    if done {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn verify_thm18_examples() {
        for (n, d) in [(5u64, 2usize), (12, 2), (7, 3)] {
            let r = verify_thm18(n, d, u64::MAX).unwrap();
            assert!(r.violations.is_empty(), "violations at n = {n}, d = {d}");
            assert!(r.isolated_types > 0);
        }
    }

    #[test]
    fn verify_thm18_budget() {
        assert!(matches!(
            verify_thm18(13, 3, 10),
            Err(QuotsingError::ResourceLimit { .. })
        ));
    }
}
