//! Exact integer and rational linear algebra: Hermite and Smith normal
//! forms, unimodular affine maps, and exact linear solving.
//!
//! Everything here works over arbitrary-precision integers; normal-form
//! pivots explode fixed-width types already in dimension 8.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

pub type Int = BigInt;
pub type Rational = BigRational;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not unimodular (|det| != 1)")]
    NotUnimodular,
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are ragged or empty.
    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        IntMatrix {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn row_add(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(dst, j) + c * self.at(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += c * col[src]
    fn col_add(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, dst) + c * self.at(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }

    /// Rank over Q via fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = Int::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pi) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pi, r);
            for i in r + 1..m.rows {
                for j in c + 1..m.cols {
                    let num = m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j);
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    m.set(i, j, q);
                }
                m.set(i, c, Int::zero());
            }
            prev = m.at(r, c).clone();
            r += 1;
        }
        r
    }

    /// Determinant of a square matrix, computed as the signed product of
    /// the Smith invariant factors.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of non-square matrix");
        let s = self.smith_form();
        if s.rank() < self.rows {
            return Int::zero();
        }
        let mut d = Int::from(s.sign as i64);
        for f in &s.factors {
            d *= f;
        }
        d
    }

    /// Row-style Hermite normal form: returns (H, U) with U*A = H, U
    /// unimodular, pivot entries positive and entries above each pivot
    /// reduced into [0, pivot).
    pub fn hermite_form(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut r = 0;
        for c in 0..h.cols {
            if r == h.rows {
                break;
            }
            // gcd the column entries in rows r.. into row r
            loop {
                let mut best: Option<usize> = None;
                for i in r..h.rows {
                    if h.at(i, c).is_zero() {
                        continue;
                    }
                    match best {
                        Some(b) if h.at(b, c).abs() <= h.at(i, c).abs() => {}
                        _ => best = Some(i),
                    }
                }
                let Some(p) = best else { break };
                h.swap_rows(p, r);
                u.swap_rows(p, r);
                if h.at(r, c).is_negative() {
                    h.negate_row(r);
                    u.negate_row(r);
                }
                let pivot = h.at(r, c).clone();
                let mut clean = true;
                for i in r + 1..h.rows {
                    if h.at(i, c).is_zero() {
                        continue;
                    }
                    let q = -h.at(i, c).div_floor(&pivot);
                    h.row_add(i, r, &q);
                    u.row_add(i, r, &q);
                    if !h.at(i, c).is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if h.at(r, c).is_zero() {
                continue; // no pivot in this column
            }
            let pivot = h.at(r, c).clone();
            for i in 0..r {
                let q = -h.at(i, c).div_floor(&pivot);
                h.row_add(i, r, &q);
                u.row_add(i, r, &q);
            }
            r += 1;
        }
        (h, u)
    }

    /// Smith normal form with transforms: U*A*V = diag(factors).
    ///
    /// Pivoting always selects the smallest nonzero absolute value in the
    /// remaining submatrix, which keeps coefficient growth in check.
    pub fn smith_form(&self) -> SmithForm {
        let mut m = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let mut sign = 1i8;
        let limit = self.rows.min(self.cols);
        let mut k = 0;
        'main: while k < limit {
            'pivot: loop {
                // smallest nonzero |entry| in the trailing submatrix
                let mut best: Option<(usize, usize)> = None;
                for i in k..m.rows {
                    for j in k..m.cols {
                        if m.at(i, j).is_zero() {
                            continue;
                        }
                        match best {
                            Some((bi, bj)) if m.at(bi, bj).abs() <= m.at(i, j).abs() => {}
                            _ => best = Some((i, j)),
                        }
                    }
                }
                let Some((pi, pj)) = best else { break 'main };
                if pi != k {
                    m.swap_rows(pi, k);
                    u.swap_rows(pi, k);
                    sign = -sign;
                }
                if pj != k {
                    m.swap_cols(pj, k);
                    v.swap_cols(pj, k);
                    sign = -sign;
                }
                if m.at(k, k).is_negative() {
                    m.negate_row(k);
                    u.negate_row(k);
                    sign = -sign;
                }
                let pivot = m.at(k, k).clone();
                let mut residue = false;
                for i in k + 1..m.rows {
                    if m.at(i, k).is_zero() {
                        continue;
                    }
                    let q = -m.at(i, k).div_floor(&pivot);
                    m.row_add(i, k, &q);
                    u.row_add(i, k, &q);
                    if !m.at(i, k).is_zero() {
                        residue = true;
                    }
                }
                for j in k + 1..m.cols {
                    if m.at(k, j).is_zero() {
                        continue;
                    }
                    let q = -m.at(k, j).div_floor(&pivot);
                    m.col_add(j, k, &q);
                    v.col_add(j, k, &q);
                    if !m.at(k, j).is_zero() {
                        residue = true;
                    }
                }
                if residue {
                    continue 'pivot; // remainders shrink the next pivot
                }
                // pivot must divide the rest of the submatrix
                for i in k + 1..m.rows {
                    for j in k + 1..m.cols {
                        if !m.at(i, j).mod_floor(&pivot).is_zero() {
                            m.row_add(k, i, &Int::one());
                            u.row_add(k, i, &Int::one());
                            continue 'pivot;
                        }
                    }
                }
                break;
            }
            k += 1;
        }
        let mut factors = Vec::new();
        for i in 0..limit {
            if m.at(i, i).is_zero() {
                break;
            }
            factors.push(m.at(i, i).clone());
        }
        SmithForm {
            factors,
            u,
            v,
            sign,
            rows: self.rows,
            cols: self.cols,
        }
    }

    /// Exact solution of A*x = b over Q for square or overdetermined A.
    /// Returns None when the system is inconsistent; free variables (rank
    /// deficient but consistent systems) are set to zero.
    pub fn solve_rational(&self, b: &[Int]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        assert!(self.rows >= self.cols, "A must be square or overdetermined");
        let mut a: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut row: Vec<Rational> = self
                    .row(i)
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect();
                row.push(Rational::from_integer(b[i].clone()));
                row
            })
            .collect();
        let cols = self.cols;
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pi) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(pi, r);
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] / &a[r][c];
                for j in c..=cols {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        for row in a.iter().skip(r) {
            if !row[cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rational::zero(); cols];
        for &(pr, pc) in pivots.iter().rev() {
            let mut rhs = a[pr][cols].clone();
            for j in pc + 1..cols {
                rhs -= &a[pr][j] * &x[j];
            }
            x[pc] = rhs / &a[pr][pc];
        }
        Some(x)
    }

    /// Exact inverse over Q; None when singular.
    pub fn inverse_rational(&self) -> Option<Vec<Vec<Rational>>> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = self
                    .row(i)
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect();
                for j in 0..n {
                    row.push(if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    });
                }
                row
            })
            .collect();
        for c in 0..n {
            let pi = (c..n).find(|&i| !a[i][c].is_zero())?;
            a.swap(pi, c);
            let inv = a[c][c].recip();
            for j in c..2 * n {
                a[c][j] *= &inv;
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in c..2 * n {
                    let v = &a[i][j] - &f * &a[c][j];
                    a[i][j] = v;
                }
            }
        }
        Some((0..n).map(|i| a[i][n..].to_vec()).collect())
    }

    /// Adjugate and determinant: adj * A = A * adj = det * I.
    /// None when singular.
    pub fn adjugate_det(&self) -> Option<(IntMatrix, Int)> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let inv = self.inverse_rational().expect("nonzero det");
        let d = Rational::from_integer(det.clone());
        let mut adj = IntMatrix::zero(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                let v = &inv[i][j] * &d;
                debug_assert!(v.is_integer(), "adjugate entries are integers");
                adj.set(i, j, v.to_integer());
            }
        }
        Some((adj, det))
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        write!(f, "]")
    }
}

/// Smith normal form data: U*A*V = diag(factors), factors positive with
/// d1 | d2 | ... | dr, and U, V unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub factors: Vec<Int>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// det(U) * det(V), tracked through the elementary operations.
    pub sign: i8,
    rows: usize,
    cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The diagonal matrix U*A*V, padded with zeros past the rank.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zero(self.rows, self.cols);
        for (i, f) in self.factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }
}

/// Affine map x -> L*x + t with L unimodular; these are exactly the lattice
/// automorphisms of Z^n composed with translations.
#[derive(Clone, Debug)]
pub struct UnimodularAffineMap {
    linear: IntMatrix,
    translation: Vec<Int>,
}

impl UnimodularAffineMap {
    pub fn new(linear: IntMatrix, translation: Vec<Int>) -> Result<Self, LinalgError> {
        if !linear.is_unimodular() {
            return Err(LinalgError::NotUnimodular);
        }
        assert_eq!(linear.rows(), translation.len(), "dimension mismatch");
        Ok(UnimodularAffineMap {
            linear,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        UnimodularAffineMap {
            linear: IntMatrix::identity(dim),
            translation: vec![Int::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &[Int] {
        &self.translation
    }

    pub fn apply(&self, point: &[Int]) -> Vec<Int> {
        let mut out = self.linear.mul_vec(point);
        for (o, t) in out.iter_mut().zip(&self.translation) {
            *o += t;
        }
        out
    }

    pub fn compose(&self, inner: &UnimodularAffineMap) -> UnimodularAffineMap {
        // (self ∘ inner)(x) = L1*(L2*x + t2) + t1
        let linear = self.linear.mul(&inner.linear);
        let translation = self.apply(&inner.translation);
        UnimodularAffineMap {
            linear,
            translation,
        }
    }

    pub fn inverse(&self) -> UnimodularAffineMap {
        let (adj, det) = self.linear.adjugate_det().expect("unimodular");
        // det is ±1, so A^{-1} = det * adj
        let mut inv = adj;
        if det.is_negative() {
            for i in 0..inv.rows() {
                inv.negate_row(i);
            }
        }
        let mut t = inv.mul_vec(&self.translation);
        for x in t.iter_mut() {
            *x = -std::mem::take(x);
        }
        UnimodularAffineMap {
            linear: inv,
            translation: t,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    /// Cofactor-expansion determinant; independent oracle for small sizes.
    fn det_cofactor(a: &IntMatrix) -> Int {
        let n = a.rows();
        if n == 1 {
            return a.at(0, 0).clone();
        }
        let mut acc = Int::zero();
        for j in 0..n {
            if a.at(0, j).is_zero() {
                continue;
            }
            let minor_rows: Vec<Vec<Int>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| a.at(i, c).clone())
                        .collect()
                })
                .collect();
            let minor = det_cofactor(&IntMatrix::from_rows(minor_rows));
            let term = a.at(0, j) * minor;
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn hermite_identity() {
        let a = IntMatrix::identity(3);
        let (h, u) = a.hermite_form();
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
    }

    #[test]
    fn hermite_already_in_form() {
        let a = m(&[vec![2, 0], vec![0, 2]]);
        let (h, _) = a.hermite_form();
        assert_eq!(h, a);
    }

    #[test]
    fn hermite_det_preserved() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        let (h, u) = a.hermite_form();
        assert!(u.is_unimodular());
        assert_eq!(u.mul(&a), h);
        assert_eq!(h.det().abs(), Int::from(2));
        // pivots positive, entry above pivot reduced
        assert!(h.at(0, 0).is_positive());
        assert!(h.at(1, 1).is_positive());
        assert!(*h.at(0, 1) >= Int::zero() && h.at(0, 1) < h.at(1, 1));
    }

    #[test]
    fn smith_identity() {
        let s = IntMatrix::identity(4).smith_form();
        assert_eq!(s.factors, vec![Int::one(); 4]);
    }

    #[test]
    fn smith_diag_2_3() {
        let s = m(&[vec![2, 0], vec![0, 3]]).smith_form();
        assert_eq!(s.factors, vec![Int::one(), Int::from(6)]);
    }

    #[test]
    fn smith_counterexample_lifted_p2_q2() {
        // lifted vertex matrix of the Cayley counterexample with p = q = 2
        let a = m(&[
            vec![0, 0, 0, 0, 0, 1],
            vec![0, 0, 1, 0, 0, 1],
            vec![1, 0, 0, 0, 0, 1],
            vec![1, 0, 1, 2, 0, 1],
            vec![0, 1, 0, 0, 0, 1],
            vec![0, 1, 1, 0, 2, 1],
        ]);
        let s = a.smith_form();
        let ones = vec![Int::one(); 4];
        assert_eq!(&s.factors[..4], &ones[..]);
        assert_eq!(s.factors[4], Int::from(2));
        assert_eq!(s.factors[5], Int::from(2));
    }

    #[test]
    fn solve_identity() {
        let a = IntMatrix::identity(3);
        let b = vec![Int::from(5), Int::from(-2), Int::from(7)];
        let x = a.solve_rational(&b).unwrap();
        assert_eq!(x[0], Rational::from_integer(Int::from(5)));
        assert_eq!(x[2], Rational::from_integer(Int::from(7)));
    }

    #[test]
    fn solve_half() {
        let a = m(&[vec![2]]);
        let x = a.solve_rational(&[Int::one()]).unwrap();
        assert_eq!(x[0], Rational::new(Int::one(), Int::from(2)));
    }

    #[test]
    fn solve_barycentric_sums_to_one() {
        // columns are the lifted vertices of conv(0, e1, e2, (1,1,2));
        // solving against a lifted point gives barycentric coordinates
        let a = m(&[
            vec![0, 1, 0, 1],
            vec![0, 0, 1, 1],
            vec![0, 0, 0, 2],
            vec![1, 1, 1, 1],
        ]);
        let b = vec![Int::one(), Int::one(), Int::one(), Int::one()];
        let x = a.solve_rational(&b).unwrap();
        let total: Rational = x.iter().cloned().sum();
        assert_eq!(total, Rational::one());
    }

    #[test]
    fn solve_inconsistent_overdetermined() {
        let a = m(&[vec![1], vec![1]]);
        assert!(a.solve_rational(&[Int::one(), Int::from(2)]).is_none());
    }

    #[test]
    fn adjugate_identity_property() {
        let a = m(&[vec![3, 1, 0], vec![0, 2, 5], vec![1, 1, 1]]);
        let (adj, det) = a.adjugate_det().unwrap();
        let prod = adj.mul(&a);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { det.clone() } else { Int::zero() };
                assert_eq!(*prod.at(i, j), expect);
            }
        }
    }

    #[test]
    fn affine_map_roundtrip() {
        let linear = m(&[vec![1, 2], vec![0, 1]]);
        let map = UnimodularAffineMap::new(linear, vec![Int::from(3), Int::from(-1)]).unwrap();
        let p = vec![Int::from(4), Int::from(5)];
        let q = map.apply(&p);
        assert_eq!(map.inverse().apply(&q), p);
        let id = map.inverse().compose(&map);
        assert_eq!(id.apply(&p), p);
    }

    #[test]
    fn affine_map_rejects_non_unimodular() {
        let linear = m(&[vec![2, 0], vec![0, 1]]);
        assert!(UnimodularAffineMap::new(linear, vec![Int::zero(); 2]).is_err());
    }

    proptest! {
        #[test]
        fn smith_reconstructs(rows in 1usize..5, cols in 1usize..5,
                              seed in proptest::collection::vec(-10i64..=10, 25)) {
            let a = IntMatrix::from_rows(
                (0..rows).map(|i| (0..cols).map(|j| Int::from(seed[i * 5 + j])).collect()).collect());
            let s = a.smith_form();
            prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.diagonal_matrix());
            prop_assert!(s.u.is_unimodular());
            prop_assert!(s.v.is_unimodular());
            // divisibility chain
            for w in s.factors.windows(2) {
                prop_assert!(w[1].mod_floor(&w[0]).is_zero());
            }
        }

        #[test]
        fn hermite_transform_is_unimodular(n in 1usize..5,
                                           seed in proptest::collection::vec(-10i64..=10, 25)) {
            let a = IntMatrix::from_rows(
                (0..n).map(|i| (0..n).map(|j| Int::from(seed[i * 5 + j])).collect()).collect());
            let (h, u) = a.hermite_form();
            prop_assert!(u.is_unimodular());
            prop_assert_eq!(u.mul(&a), h);
        }

        #[test]
        fn smith_det_matches_cofactor(n in 1usize..5,
                                      seed in proptest::collection::vec(-6i64..=6, 25)) {
            let a = IntMatrix::from_rows(
                (0..n).map(|i| (0..n).map(|j| Int::from(seed[i * 5 + j])).collect()).collect());
            prop_assert_eq!(a.det(), det_cofactor(&a));
        }

        #[test]
        fn solve_roundtrip(n in 1usize..5,
                           seed in proptest::collection::vec(-10i64..=10, 25),
                           xs in proptest::collection::vec(-10i64..=10, 5)) {
            let a = IntMatrix::from_rows(
                (0..n).map(|i| (0..n).map(|j| Int::from(seed[i * 5 + j])).collect()).collect());
            prop_assume!(!a.det().is_zero());
            let x: Vec<Int> = xs[..n].iter().map(|&v| Int::from(v)).collect();
            let b = a.mul_vec(&x);
            let sol = a.solve_rational(&b).unwrap();
            for (s, e) in sol.iter().zip(&x) {
                prop_assert_eq!(s.clone(), Rational::from_integer(e.clone()));
            }
        }
    }
}
