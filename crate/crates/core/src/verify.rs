//! Batch verification sweeps: desk-scale exhaustive and randomized checks
//! of the classification statements. These drive both the CLI suites and
//! the acceptance tests.

use std::collections::BTreeSet;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cayley::{cayley_decompose, delta_family, verify_decomposition, CayleyError};
use crate::charsum::{self, u_perp_basis_check};
use crate::linalg::Int;
use crate::quotsing;
use crate::simplex::{LatticeSimplex, SimplexError};

/// Exhaustive 3-dimensional check: emptiness (box-scan oracle) against
/// decomposability into two segments, over tetrahedra with one vertex at
/// the origin and the rest in [0, N]^3, deduplicated by a
/// unimodular-invariant signature.
#[derive(Clone, Debug)]
pub struct White3dReport {
    pub box_bound: i64,
    pub tetrahedra: u64,
    pub classes: u64,
    pub empty_classes: u64,
    pub violations: Vec<String>,
}

pub fn white3d(box_bound: i64, budget: u64) -> Result<White3dReport, SimplexError> {
    assert!(box_bound >= 1);
    let mut points = Vec::new();
    for x in 0..=box_bound {
        for y in 0..=box_bound {
            for z in 0..=box_bound {
                if (x, y, z) != (0, 0, 0) {
                    points.push(vec![x, y, z]);
                }
            }
        }
    }
    let mut report = White3dReport {
        box_bound,
        tetrahedra: 0,
        classes: 0,
        empty_classes: 0,
        violations: Vec::new(),
    };
    // signature: (h*, invariant factors, count of basic facets); everything
    // in it is invariant under unimodular affine maps
    let mut seen: BTreeSet<(Vec<Int>, Vec<Int>, usize)> = BTreeSet::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for l in j + 1..points.len() {
                let vertices = vec![
                    vec![0, 0, 0],
                    points[i].clone(),
                    points[j].clone(),
                    points[l].clone(),
                ];
                let Ok(s) = LatticeSimplex::from_i64(3, &vertices) else {
                    continue; // coplanar triple
                };
                report.tetrahedra += 1;
                let h = s.h_star()?;
                let group = s.group_structure()?;
                let basic_facets = s.facets().iter().filter(|f| f.is_basic()).count();
                let sig = (
                    h.coefficients().to_vec(),
                    group.invariant_factors.clone(),
                    basic_facets,
                );
                if !seen.insert(sig) {
                    continue;
                }
                report.classes += 1;
                let empty = s.is_empty_simplex(budget)?;
                if empty {
                    report.empty_classes += 1;
                }
                let decomposed = match cayley_decompose(&s) {
                    Ok(dec) => {
                        if !verify_decomposition(&s, &dec) {
                            report
                                .violations
                                .push(format!("decomposition does not verify: {vertices:?}"));
                        }
                        true
                    }
                    Err(CayleyError::FacetNotBasic { .. }) | Err(CayleyError::NotLatticeFree) => {
                        false
                    }
                    Err(e) => {
                        report
                            .violations
                            .push(format!("unexpected decompose error {e}: {vertices:?}"));
                        false
                    }
                };
                if empty != decomposed {
                    report.violations.push(format!(
                        "empty = {empty} but decomposable = {decomposed}: {vertices:?}"
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Randomized plus family sweep of the three-way equivalence: seeded random
/// 5-dimensional simplices and every Delta(a1, a2, n) with n <= family_max_n.
#[derive(Clone, Debug)]
pub struct Prop24SweepReport {
    pub seed: u64,
    pub random_checked: u64,
    pub family_checked: u64,
    pub violations: Vec<String>,
}

pub fn prop24_sweep(
    random_count: u64,
    seed: u64,
    family_max_n: i64,
    budget: u64,
) -> Result<Prop24SweepReport, SimplexError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Prop24SweepReport {
        seed,
        random_checked: 0,
        family_checked: 0,
        violations: Vec::new(),
    };
    while report.random_checked < random_count {
        let vertices: Vec<Vec<i64>> = (0..6)
            .map(|_| (0..5).map(|_| rng.random_range(-3..=3i64)).collect())
            .collect();
        let Ok(s) = LatticeSimplex::from_i64(5, &vertices) else {
            continue; // degenerate draw, resample
        };
        report.random_checked += 1;
        let r = s.check_prop24(budget)?;
        if !r.consistent {
            report.violations.push(format!(
                "conditions disagree ({}, {}, {}): {vertices:?}",
                r.cond1, r.cond2, r.cond3
            ));
        }
    }
    for n in 1..=family_max_n {
        for a1 in 0..n.max(1) {
            for a2 in 0..n.max(1) {
                let Ok(s) = delta_family_i64_pair(a1, a2, n) else {
                    continue; // gcd condition fails
                };
                report.family_checked += 1;
                let r = s.check_prop24(budget)?;
                if !r.consistent || !(r.cond1 && r.cond2 && r.cond3) {
                    report.violations.push(format!(
                        "family Delta({a1},{a2},{n}) should satisfy all conditions"
                    ));
                }
            }
        }
    }
    Ok(report)
}

fn delta_family_i64_pair(a1: i64, a2: i64, n: i64) -> Result<LatticeSimplex, CayleyError> {
    delta_family(&[Int::from(a1), Int::from(a2)], &Int::from(n))
}

/// Stickelberger rank sweep: rank = phi(n)/2 and the orthogonal-basis
/// check for every n in the range.
#[derive(Clone, Debug)]
pub struct Thm31Report {
    pub n_lo: u64,
    pub n_hi: u64,
    pub checked: u64,
    pub violations: Vec<String>,
}

pub fn thm31_sweep(n_lo: u64, n_hi: u64) -> Thm31Report {
    assert!(n_lo >= 3);
    let mut report = Thm31Report {
        n_lo,
        n_hi,
        checked: 0,
        violations: Vec::new(),
    };
    for n in n_lo..=n_hi {
        report.checked += 1;
        let phi = charsum::units_of(n).len();
        let rank = charsum::stickelberger_rank(n);
        if 2 * rank != phi {
            report
                .violations
                .push(format!("rank {rank} != phi({n})/2 = {}", phi / 2));
        }
        if !u_perp_basis_check(n) {
            report
                .violations
                .push(format!("u_perp basis check fails at n = {n}"));
        }
    }
    report
}

/// Aggregated zero-sum sweep over a range of moduli and tuple sizes.
#[derive(Clone, Debug)]
pub struct Prop15SweepReport {
    pub checked_pairs: u64,
    pub multisets: u64,
    pub hypothesis_satisfying: u64,
    pub violations: Vec<String>,
}

pub fn prop15_sweep(
    n_lo: u64,
    n_hi: u64,
    ds: &[usize],
    budget: u64,
) -> Result<Prop15SweepReport, charsum::CharsumError> {
    let mut report = Prop15SweepReport {
        checked_pairs: 0,
        multisets: 0,
        hypothesis_satisfying: 0,
        violations: Vec::new(),
    };
    for n in n_lo..=n_hi {
        for &d in ds {
            let r = charsum::verify_prop15(n, d, budget)?;
            report.checked_pairs += 1;
            report.multisets += r.multisets;
            report.hypothesis_satisfying += r.hypothesis_satisfying;
            for v in r.violations {
                report.violations.push(format!("n = {n}, d = {d}: {v}"));
            }
        }
    }
    Ok(report)
}

/// Aggregated discrepancy-classification sweep.
#[derive(Clone, Debug)]
pub struct Thm18SweepReport {
    pub checked_pairs: u64,
    pub isolated_types: u64,
    pub gorenstein_types: u64,
    pub violations: Vec<String>,
}

pub fn thm18_sweep(
    n_lo: u64,
    n_hi: u64,
    ds: &[usize],
    budget: u64,
) -> Result<Thm18SweepReport, quotsing::QuotsingError> {
    let mut report = Thm18SweepReport {
        checked_pairs: 0,
        isolated_types: 0,
        gorenstein_types: 0,
        violations: Vec::new(),
    };
    for n in n_lo..=n_hi {
        for &d in ds {
            let r = quotsing::verify_thm18(n, d, budget)?;
            report.checked_pairs += 1;
            report.isolated_types += r.isolated_types;
            report.gorenstein_types += r.gorenstein_types;
            for v in r.violations {
                report.violations.push(format!("n = {n}, d = {d}: {v}"));
            }
        }
    }
    Ok(report)
}

/// Seeded random full-dimensional simplex with entries in [-span, span]
/// and nonzero lifted determinant; used by sweeps and tests.
pub fn random_simplex(rng: &mut ChaCha8Rng, dim: usize, span: i64) -> LatticeSimplex {
    loop {
        let vertices: Vec<Vec<i64>> = (0..=dim)
            .map(|_| (0..dim).map(|_| rng.random_range(-span..=span)).collect())
            .collect();
        if let Ok(s) = LatticeSimplex::from_i64(dim, &vertices) {
            if s.is_full_dimensional() {
                return s;
            }
        }
    }
}

/// Check that the lifted determinant is small enough for oracle scans.
pub fn normalized_volume(s: &LatticeSimplex) -> Int {
    let mut v = s.lifted_matrix().det();
    if v < Int::zero() {
        v = -v;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn white3d_tiny_box() {
        // N = 1: every tetrahedron with vertices in {0,1}^3 is empty
        let r = white3d(1, 1_000_000).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.tetrahedra > 0);
        assert_eq!(r.classes, r.empty_classes);
    }

    #[test]
    fn prop24_sweep_small() {
        let r = prop24_sweep(5, 12345, 3, 10_000_000).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.random_checked, 5);
        assert!(r.family_checked > 0);
    }

    #[test]
    fn thm31_sweep_small() {
        let r = thm31_sweep(3, 12);
        assert!(r.violations.is_empty());
        assert_eq!(r.checked, 10);
    }

    #[test]
    fn prop15_sweep_small() {
        let r = prop15_sweep(3, 7, &[2, 3], u64::MAX).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.hypothesis_satisfying > 0);
    }

    #[test]
    fn thm18_sweep_small() {
        let r = thm18_sweep(2, 7, &[2], u64::MAX).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.isolated_types > 0);
    }
}
