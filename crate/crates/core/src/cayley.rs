//! Cayley polytopes of lattice segments, the canonical family
//! Delta(a_1, ..., a_{d-1}, n), and the constructive decomposition of a
//! (2d-1)-simplex with basic facets into d lattice segments.

use num::{Integer, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::charsum::{find_pairing, PairingOutcome};
use crate::linalg::{Int, IntMatrix, UnimodularAffineMap};
use crate::simplex::{LatticeSimplex, SimplexError};

#[derive(Debug, Error)]
pub enum CayleyError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("simplex must be full-dimensional")]
    NotFullDimensional,
    #[error("decomposition requires odd ambient dimension, got {0}")]
    DimensionNotOdd(usize),
    #[error("facet {facet} is not a basic lattice simplex")]
    FacetNotBasic { facet: usize },
    #[error("h* is not of the form 1 + (n-1)t^d: interior lattice points exist below degree d")]
    NotLatticeFree,
    #[error("quotient group is not cyclic ({factors:?}); a facet cannot have been basic")]
    NonCyclicGroup { factors: Vec<Int> },
    #[error("no weight pairing found; this contradicts the zero-sum property")]
    PairingNotFound,
}

/// A lattice segment, the 1-dimensional factor of a Cayley polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: Vec<Int>,
    pub end: Vec<Int>,
}

impl Segment {
    pub fn from_i64(start: &[i64], end: &[i64]) -> Segment {
        Segment {
            start: start.iter().map(|&x| Int::from(x)).collect(),
            end: end.iter().map(|&x| Int::from(x)).collect(),
        }
    }
}

/// Weight vector of a generator of the cyclic quotient group: the lifted
/// generator is sum of (a_i / n)(v_i, 1) with all a_i in [1, n-1] coprime
/// to n. For a degree-d generator the weights sum to d*n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub n: Int,
    pub weights: Vec<Int>,
}

/// A unimodular affine map carrying the input simplex onto the canonical
/// embedding of Delta(a_1, ..., a_{d-1}, n), together with the parameters.
#[derive(Clone, Debug)]
pub struct CayleyDecomposition {
    pub map: UnimodularAffineMap,
    pub params: Vec<Int>,
    pub n: Int,
    pub segment_images: Vec<Segment>,
    /// Weights of the normalized generator in the paired vertex order;
    /// absent for the trivial case n = 1.
    pub weights: Option<WeightVector>,
}

/// Canonical full-dimensional embedding of the Cayley polytope of d
/// segments in R^d: the vertex e_i x u becomes (e_i', u) in R^{2d-1},
/// where e_1' = 0 (the first Cayley coordinate is dropped).
pub fn cayley_build(segments: &[Segment]) -> Result<LatticeSimplex, CayleyError> {
    let d = segments.len();
    if d == 0 {
        return Err(CayleyError::Degenerate("no segments given".into()));
    }
    for (i, seg) in segments.iter().enumerate() {
        if seg.start.len() != d || seg.end.len() != d {
            return Err(CayleyError::Degenerate(format!(
                "segment {i} does not live in R^{d}"
            )));
        }
        if seg.start == seg.end {
            return Err(CayleyError::Degenerate(format!("segment {i} is a point")));
        }
    }
    let dim = 2 * d - 1;
    let mut vertices = Vec::with_capacity(2 * d);
    for (i, seg) in segments.iter().enumerate() {
        for endpoint in [&seg.start, &seg.end] {
            let mut v = vec![Int::zero(); d - 1];
            if i > 0 {
                v[i - 1] = Int::one();
            }
            v.extend(endpoint.iter().cloned());
            vertices.push(v);
        }
    }
    LatticeSimplex::new(dim, vertices)
        .map_err(|_| CayleyError::Degenerate("segment directions are linearly dependent".into()))
}

/// The simplex Delta(a_1, ..., a_{d-1}, n): Cayley polytope of the unit
/// segments conv(0, e_i), i < d, and conv(0, (a_1, ..., a_{d-1}, n)).
/// Requires n >= 1 and gcd(a_1 * ... * a_{d-1}, n) = 1.
pub fn delta_family(a: &[Int], n: &Int) -> Result<LatticeSimplex, CayleyError> {
    if !n.is_positive() {
        return Err(CayleyError::InvalidParams(format!(
            "n must be positive, got {n}"
        )));
    }
    let mut prod = Int::one();
    for ai in a {
        prod *= ai;
    }
    if !prod.gcd(n).is_one() {
        return Err(CayleyError::InvalidParams(format!(
            "gcd(a_1 ... a_{}, {n}) != 1",
            a.len()
        )));
    }
    let d = a.len() + 1;
    let mut segments = Vec::with_capacity(d);
    for i in 0..d - 1 {
        let mut e = vec![Int::zero(); d];
        e[i] = Int::one();
        segments.push(Segment {
            start: vec![Int::zero(); d],
            end: e,
        });
    }
    let mut last = a.to_vec();
    last.push(n.clone());
    segments.push(Segment {
        start: vec![Int::zero(); d],
        end: last,
    });
    cayley_build(&segments)
}

pub fn delta_family_i64(a: &[i64], n: i64) -> Result<LatticeSimplex, CayleyError> {
    let aa: Vec<Int> = a.iter().map(|&x| Int::from(x)).collect();
    delta_family(&aa, &Int::from(n))
}

/// Applies a seeded random unimodular affine map (a product of elementary
/// integer shears plus a translation with entries in [-5, 5]) and a random
/// vertex permutation. Deterministic in the seed.
pub fn scramble(s: &LatticeSimplex, seed: u64) -> (LatticeSimplex, UnimodularAffineMap) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = s.dim();
    let mut linear = IntMatrix::identity(dim);
    if dim > 1 {
        for _ in 0..3 * dim {
            let i = rng.random_range(0..dim);
            let mut j = rng.random_range(0..dim - 1);
            if j >= i {
                j += 1;
            }
            let mut c = 0i64;
            while c == 0 {
                c = rng.random_range(-3..=3);
            }
            // shear: row_i += c * row_j, as a left-multiplied elementary matrix
            let shear_row: Vec<Int> = (0..dim)
                .map(|col| {
                    let base = linear.at(i, col).clone();
                    base + Int::from(c) * linear.at(j, col)
                })
                .collect();
            for (col, v) in shear_row.into_iter().enumerate() {
                linear.set(i, col, v);
            }
        }
    }
    let translation: Vec<Int> = (0..dim)
        .map(|_| Int::from(rng.random_range(-5..=5i64)))
        .collect();
    let map = UnimodularAffineMap::new(linear, translation).expect("shears are unimodular");
    let mut vertices: Vec<Vec<Int>> = s.vertices().iter().map(|v| map.apply(v)).collect();
    // Fisher-Yates on the vertex order
    for i in (1..vertices.len()).rev() {
        let j = rng.random_range(0..=i);
        vertices.swap(i, j);
    }
    let scrambled =
        LatticeSimplex::new(dim, vertices).expect("unimodular image of a simplex is a simplex");
    (scrambled, map)
}

/// Decomposes a (2d-1)-dimensional lattice simplex with basic facets and
/// h* = 1 + (n-1)t^d into the Cayley polytope of d lattice segments,
/// returning the unimodular affine map onto the canonical embedding of
/// Delta(a_1, ..., a_{d-1}, n).
pub fn cayley_decompose(s: &LatticeSimplex) -> Result<CayleyDecomposition, CayleyError> {
    if !s.is_full_dimensional() {
        return Err(CayleyError::NotFullDimensional);
    }
    let dd = s.dim();
    if dd % 2 == 0 {
        return Err(CayleyError::DimensionNotOdd(dd));
    }
    let d = (dd + 1) / 2;

    for (i, facet) in s.facets().iter().enumerate() {
        if !facet.is_basic() {
            return Err(CayleyError::FacetNotBasic { facet: i });
        }
    }
    let h = s.h_star().map_err(simplex_bug)?;
    let Some(n) = h.as_family_h_star(d) else {
        return Err(CayleyError::NotLatticeFree);
    };
    let group = s.group_structure().map_err(simplex_bug)?;
    if !group.is_cyclic() {
        return Err(CayleyError::NonCyclicGroup {
            factors: group.invariant_factors,
        });
    }
    debug_assert_eq!(group.order, n);

    // Pair the vertices: (index pairs, weights in the new order). For the
    // trivial group the pairing is consecutive and weights vanish.
    let (order, weights) = if n.is_one() {
        ((0..2 * d).collect::<Vec<usize>>(), None)
    } else {
        let weights = normalized_generator_weights(s, &n)?;
        let outcome = find_pairing(&weights, &n).map_err(|_| CayleyError::PairingNotFound)?;
        let cert = match outcome {
            PairingOutcome::Paired(cert) => cert,
            // impossible under the checked hypotheses
            _ => return Err(CayleyError::PairingNotFound),
        };
        let mut pairs = cert.pairs;
        // the pair holding the last vertex goes last, last vertex in place
        let pos = pairs
            .iter()
            .position(|&(i, j)| i == 2 * d - 1 || j == 2 * d - 1)
            .expect("certificate covers all indices");
        let last_pair = pairs.remove(pos);
        let last_pair = if last_pair.1 == 2 * d - 1 {
            last_pair
        } else {
            (last_pair.1, last_pair.0)
        };
        pairs.push(last_pair);
        let mut order = Vec::with_capacity(2 * d);
        for (i, j) in pairs {
            order.push(i);
            order.push(j);
        }
        let permuted: Vec<Int> = order.iter().map(|&i| weights[i].clone()).collect();
        (order, Some(permuted))
    };

    let lifted = s.lifted_matrix();
    let reordered: Vec<Vec<Int>> = order.iter().map(|&i| lifted.row(i).to_vec()).collect();

    if let Some(w) = &weights {
        debug_assert!(w[2 * d - 1].is_one(), "last weight normalized to 1");
        for p in 0..d {
            debug_assert_eq!(&w[2 * p] + &w[2 * p + 1], n, "paired weights sum to n");
        }
    }

    // source basis: the first 2d-1 lifted vertices, completed by the
    // generator minus the even-position pair partners
    let mut src_rows: Vec<Vec<Int>> = reordered[..2 * d - 1].to_vec();
    let last_row = match &weights {
        None => reordered[2 * d - 1].clone(),
        Some(w) => {
            let mut gen_num = vec![Int::zero(); 2 * d];
            for (wi, row) in w.iter().zip(&reordered) {
                for (g, r) in gen_num.iter_mut().zip(row) {
                    *g += wi * r;
                }
            }
            let mut generator = Vec::with_capacity(2 * d);
            for g in gen_num {
                let (q, r) = g.div_rem(&n);
                debug_assert!(r.is_zero(), "generator must be a lattice point");
                generator.push(q);
            }
            for p in 0..d - 1 {
                for (g, r) in generator.iter_mut().zip(&reordered[2 * p + 1]) {
                    *g -= r;
                }
            }
            generator
        }
    };
    src_rows.push(last_row);
    let src = IntMatrix::from_rows(src_rows);
    debug_assert!(src.is_unimodular(), "source rows form a lattice basis");

    // target basis in Cayley coordinates R^d x R^d: pair p maps to
    // (e_{p+1}, 0) and (e_{p+1}, e_{p+1})
    let mut tgt_rows = Vec::with_capacity(2 * d);
    for p in 0..d {
        let mut r0 = vec![Int::zero(); 2 * d];
        r0[p] = Int::one();
        let mut r1 = r0.clone();
        r1[d + p] = Int::one();
        tgt_rows.push(r0);
        tgt_rows.push(r1);
    }
    let tgt = IntMatrix::from_rows(tgt_rows);

    // phi with phi * src^T = tgt^T
    let (src_adj, src_det) = src.adjugate_det().expect("unimodular basis");
    let mut src_inv = src_adj;
    if src_det.is_negative() {
        for i in 0..src_inv.rows() {
            for j in 0..src_inv.cols() {
                let v = -src_inv.at(i, j);
                src_inv.set(i, j, v);
            }
        }
    }
    let phi = src_inv.mul(&tgt).transpose();

    // extract the affine map on R^{2d-1}: apply phi to (z, 1) and drop the
    // first Cayley coordinate
    let mut lin_rows = Vec::with_capacity(2 * d - 1);
    let mut translation = Vec::with_capacity(2 * d - 1);
    for i in 1..2 * d {
        lin_rows.push(phi.row(i)[..2 * d - 1].to_vec());
        translation.push(phi.row(i)[2 * d - 1].clone());
    }
    let map = UnimodularAffineMap::new(IntMatrix::from_rows(lin_rows), translation)
        .expect("induced affine map is unimodular");

    // parameters: weights at the odd positions of the first d-1 pairs
    let params: Vec<Int> = match &weights {
        None => vec![Int::zero(); d - 1],
        Some(w) => (0..d - 1).map(|p| w[2 * p].clone()).collect(),
    };
    let mut segment_images = Vec::with_capacity(d);
    for p in 0..d - 1 {
        let mut e = vec![Int::zero(); d];
        e[p] = Int::one();
        segment_images.push(Segment {
            start: vec![Int::zero(); d],
            end: e,
        });
    }
    let mut last = params.clone();
    last.push(n.clone());
    segment_images.push(Segment {
        start: vec![Int::zero(); d],
        end: last,
    });

    Ok(CayleyDecomposition {
        map,
        weights: weights.map(|w| WeightVector {
            n: n.clone(),
            weights: w,
        }),
        params,
        n,
        segment_images,
    })
}

/// Exact check that the decomposition map carries the simplex onto the
/// canonical embedding of Delta(params, n), as vertex sets.
pub fn verify_decomposition(s: &LatticeSimplex, dec: &CayleyDecomposition) -> bool {
    let Ok(target) = delta_family(&dec.params, &dec.n) else {
        return false;
    };
    if s.dim() != target.dim() || s.vertex_count() != target.vertex_count() {
        return false;
    }
    let mut image: Vec<Vec<Int>> = s.vertices().iter().map(|v| dec.map.apply(v)).collect();
    let mut expect = target.vertices().to_vec();
    image.sort();
    expect.sort();
    image == expect
}

/// Weights a_i in [1, n-1] of the generator normalized so that the last
/// weight is 1; all weights come out coprime to n.
fn normalized_generator_weights(s: &LatticeSimplex, n: &Int) -> Result<Vec<Int>, CayleyError> {
    let pts = s.par_points().map_err(simplex_bug)?;
    let generator = pts
        .iter()
        .find(|p| {
            if p.degree == 0 {
                return false;
            }
            let mut g = n.clone();
            for l in &p.lambda {
                g = g.gcd(&(l.numer() * n / l.denom()));
            }
            g.is_one()
        })
        .ok_or(CayleyError::PairingNotFound)?;
    let raw: Vec<Int> = generator
        .lambda
        .iter()
        .map(|l| l.numer() * n / l.denom())
        .collect();
    // all weights must be units mod n under the checked hypotheses
    for a in &raw {
        if !a.gcd(n).is_one() {
            return Err(CayleyError::PairingNotFound);
        }
    }
    let last = raw.last().unwrap();
    let eg = last.extended_gcd(n);
    debug_assert!(eg.gcd.is_one());
    let t = eg.x.mod_floor(n);
    Ok(raw.iter().map(|a| (a * &t).mod_floor(n)).collect())
}

fn simplex_bug(e: SimplexError) -> CayleyError {
    // full-dimensionality was checked up front and the remaining simplex
    // operations cannot fail on valid input
    panic!("unexpected simplex error during decomposition: {e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    #[test]
    fn cayley_build_white_segments() {
        // d = 2: conv(0, e1) and conv(0, (a, n)) give White's tetrahedron
        let s = cayley_build(&[
            Segment::from_i64(&[0, 0], &[1, 0]),
            Segment::from_i64(&[0, 0], &[1, 2]),
        ])
        .unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.vertex_count(), 4);
        let h = s.h_star().unwrap();
        assert_eq!(h.as_family_h_star(2), Some(Int::from(2)));
    }

    #[test]
    fn cayley_build_counterexample_vertices() {
        let s = counterexample(2, 2).unwrap();
        let expect: Vec<Vec<Int>> = [
            vec![0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![1, 0, 0, 0, 0],
            vec![1, 0, 1, 2, 0],
            vec![0, 1, 0, 0, 0],
            vec![0, 1, 1, 0, 2],
        ]
        .iter()
        .map(|v| v.iter().map(|&x| Int::from(x)).collect())
        .collect();
        assert_eq!(s.vertices(), &expect[..]);
    }

    fn counterexample(p: i64, q: i64) -> Result<LatticeSimplex, CayleyError> {
        cayley_build(&[
            Segment::from_i64(&[0, 0, 0], &[1, 0, 0]),
            Segment::from_i64(&[0, 0, 0], &[1, p, 0]),
            Segment::from_i64(&[0, 0, 0], &[1, 0, q]),
        ])
    }

    #[test]
    fn cayley_build_rejects_parallel_segments() {
        let err = cayley_build(&[
            Segment::from_i64(&[0, 0], &[1, 0]),
            Segment::from_i64(&[0, 0], &[1, 0]),
        ])
        .unwrap_err();
        assert!(matches!(err, CayleyError::Degenerate(_)));
    }

    #[test]
    fn delta_family_examples() {
        let unit = delta_family_i64(&[1, 1], 1).unwrap();
        assert_eq!(unit.dim(), 5);
        assert_eq!(unit.h_star().unwrap().to_string(), "1");

        let s = delta_family_i64(&[1, 2], 5).unwrap();
        assert_eq!(s.h_star().unwrap().to_string(), "1 + 4t^3");
        let g = s.group_structure().unwrap();
        assert_eq!(g.invariant_factors, vec![Int::from(5)]);
    }

    #[test]
    fn delta_family_serialize_reparse() {
        let s = delta_family_i64(&[1, 1], 2).unwrap();
        let t = LatticeSimplex::parse(&s.serialize()).unwrap();
        assert_eq!(t.dim(), 5);
        assert_eq!(t.vertex_count(), 6);
        let mut a = s.vertices().to_vec();
        let mut b = t.vertices().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn delta_family_rejects_bad_gcd() {
        assert!(matches!(
            delta_family_i64(&[2, 1], 4).unwrap_err(),
            CayleyError::InvalidParams(_)
        ));
        assert!(matches!(
            delta_family_i64(&[0, 1], 3).unwrap_err(),
            CayleyError::InvalidParams(_)
        ));
    }

    #[test]
    fn scramble_is_deterministic_and_invariant() {
        let s = delta_family_i64(&[1, 2], 5).unwrap();
        let (a, map_a) = scramble(&s, 42);
        let (b, _) = scramble(&s, 42);
        assert_eq!(a.vertices(), b.vertices());
        let (c, _) = scramble(&s, 43);
        assert_ne!(a.vertices(), c.vertices());
        assert!(map_a.linear().is_unimodular());
        assert_eq!(a.h_star().unwrap(), s.h_star().unwrap());
        assert_eq!(a.group_structure().unwrap(), s.group_structure().unwrap());
        let basic_count = |t: &LatticeSimplex| t.facets().iter().filter(|f| f.is_basic()).count();
        assert_eq!(basic_count(&a), basic_count(&s));
        let unit = delta_family_i64(&[1], 1).unwrap();
        let (su, _) = scramble(&unit, 7);
        assert!(su.is_basic());
    }

    #[test]
    fn decompose_delta_125() {
        let s = delta_family_i64(&[1, 2], 5).unwrap();
        let dec = cayley_decompose(&s).unwrap();
        assert_eq!(dec.n, Int::from(5));
        assert!(verify_decomposition(&s, &dec));
        let w = dec.weights.as_ref().unwrap();
        assert_eq!(w.weights.len(), 6);
        let total: Int = w.weights.iter().sum();
        assert_eq!(total, Int::from(15)); // degree-3 generator: sum = d*n
    }

    #[test]
    fn decompose_scrambled_roundtrip() {
        for (a, n, seed) in [
            (vec![1i64, 2], 5i64, 1u64),
            (vec![1, 1], 2, 2),
            (vec![3, 2], 7, 3),
            (vec![1, 2, 3], 7, 4),
            (vec![1], 4, 5),
        ] {
            let s = delta_family_i64(&a, n).unwrap();
            let (scr, _) = scramble(&s, seed);
            let dec = cayley_decompose(&scr).unwrap();
            assert_eq!(dec.n, Int::from(n), "n recovered for {a:?}, {n}");
            assert!(verify_decomposition(&scr, &dec));
        }
    }

    #[test]
    fn decompose_unit_simplex_trivially() {
        let s = LatticeSimplex::from_i64(
            5,
            &[
                vec![0, 0, 0, 0, 0],
                vec![1, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0],
                vec![0, 0, 1, 0, 0],
                vec![0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 1],
            ],
        )
        .unwrap();
        let dec = cayley_decompose(&s).unwrap();
        assert_eq!(dec.n, Int::one());
        assert_eq!(dec.params, vec![Int::zero(), Int::zero()]);
        assert!(verify_decomposition(&s, &dec));
        assert!(dec.weights.is_none());
    }

    #[test]
    fn decompose_rejects_counterexample() {
        let s = counterexample(2, 2).unwrap();
        let err = cayley_decompose(&s).unwrap_err();
        assert!(matches!(
            err,
            CayleyError::FacetNotBasic { .. } | CayleyError::NotLatticeFree
        ));
    }

    #[test]
    fn verify_rejects_corrupted_translation() {
        let s = delta_family_i64(&[1, 2], 5).unwrap();
        let mut dec = cayley_decompose(&s).unwrap();
        let mut t = dec.map.translation().to_vec();
        t[0] += 1;
        dec.map = UnimodularAffineMap::new(dec.map.linear().clone(), t).unwrap();
        assert!(!verify_decomposition(&s, &dec));
    }

    #[test]
    fn family_weight_sums_constant_over_units() {
        // for every t coprime to n the weights {t * a_i} of the rescaled
        // generator sum to d*n
        let s = delta_family_i64(&[2, 3], 7).unwrap();
        let dec = cayley_decompose(&s).unwrap();
        let w = dec.weights.unwrap();
        let n = 7i64;
        for t in 1..n {
            let total: i64 = w
                .weights
                .iter()
                .map(|a| {
                    let ta = Rational::new(a * t, Int::from(n));
                    let frac = &ta - ta.floor();
                    i64::try_from((frac * Int::from(n)).to_integer()).unwrap()
                })
                .sum::<i64>();
            assert_eq!(total, 3 * n);
        }
    }
}
