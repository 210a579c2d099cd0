//! Exact dense linear algebra over the rationals.
//!
//! Elimination runs on integer rows (denominators cleared per row, content
//! divided out after every update), so no rational normalisation happens
//! inside the inner loop. Results are returned as rationals in reduced row
//! echelon form with unit pivots, which is also the canonical form of a
//! [`Subspace`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row.iter().cloned());
        }
        Ok(RationalMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(cols, &rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RationalMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    fn zip_with(&self, other: &RationalMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(RationalMatrix { rows: self.rows + other.rows, cols, data })
    }

    pub fn rank(&self) -> usize {
        Echelon::compute(self, false).pivots.len()
    }

    /// Reduced row echelon form (unit pivots, zero rows dropped) and pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let e = Echelon::compute(self, true);
        (e.to_rational(self.cols), e.pivots)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Integer row echelon form. Rows are primitive integer vectors.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn compute(m: &RationalMatrix, reduce_above: bool) -> Echelon {
        let mut rows: Vec<Vec<BigInt>> =
            (0..m.rows).map(|r| integer_row(m.row(r))).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == rows.len() {
                break;
            }
            // Prefer the sparsest candidate pivot row to limit fill-in.
            let candidate = (rank..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by_key(|&r| rows[r].iter().filter(|x| !x.is_zero()).count());
            let Some(p) = candidate else { continue };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            let support: Vec<usize> = (0..m.cols).filter(|&c| !pivot_row[c].is_zero()).collect();
            let start = if reduce_above { 0 } else { rank + 1 };
            for (r, row) in rows.iter_mut().enumerate().skip(start) {
                if r == rank || row[col].is_zero() {
                    continue;
                }
                eliminate(row, &pivot_row, &support, col);
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        Echelon { rows, pivots }
    }

    fn to_rational(&self, cols: usize) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.rows.len(), cols);
        for (r, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let p = row[pc].clone();
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    out.set(r, c, Rational::new(x.clone(), p.clone()));
                }
            }
        }
        out
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x / &g;
            }
        }
    }
}

/// row <- (p/g) row - (a/g) pivot, where p = pivot[col], a = row[col], g = gcd(p, a).
fn eliminate(row: &mut [BigInt], pivot: &[BigInt], support: &[usize], col: usize) {
    let p = &pivot[col];
    let a = row[col].clone();
    let g = p.gcd(&a);
    let mut ps = p / &g;
    let mut as_ = &a / &g;
    if ps.is_negative() {
        ps = -ps;
        as_ = -as_;
    }
    if !ps.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x *= &ps;
            }
        }
    }
    for &c in support {
        row[c] -= &as_ * &pivot[c];
    }
    make_primitive(row);
}

/// A linear subspace of `Q^n`, stored as its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient: n, basis: RationalMatrix::zeros(0, n), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Subspace { ambient: n, basis: RationalMatrix::identity(n), pivots: (0..n).collect() }
    }

    pub fn from_matrix(m: &RationalMatrix) -> Self {
        let (basis, pivots) = m.rref();
        Subspace { ambient: m.cols(), basis, pivots }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        Ok(Self::from_matrix(&RationalMatrix::from_rows(ambient, vectors)?))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.combination(&coords) == v).then_some(coords)
    }

    pub fn combination(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient];
        for (r, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(r)) {
                if !b.is_zero() {
                    *o += c * b;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let stacked = self.orthogonal_complement_rows().vstack(&other.orthogonal_complement_rows())?;
        Ok(nullspace_with_cols(&stacked, self.ambient))
    }

    /// Rows spanning the orthogonal complement under the standard inner product.
    pub fn orthogonal_complement_rows(&self) -> RationalMatrix {
        nullspace_with_cols(&self.basis, self.ambient).basis
    }

    pub fn orthogonal_complement(&self) -> Subspace {
        nullspace_with_cols(&self.basis, self.ambient)
    }
}

/// Intersection of several subspaces of the same ambient space; `None` for an empty list.
pub fn intersect_all<'a>(spaces: impl IntoIterator<Item = &'a Subspace>) -> Result<Option<Subspace>> {
    let mut stacked: Option<RationalMatrix> = None;
    let mut ambient = None;
    for s in spaces {
        if let Some(n) = ambient {
            if n != s.ambient() {
                return Err(Error::DimensionMismatch { expected: n, found: s.ambient() });
            }
        }
        ambient = Some(s.ambient());
        let comp = s.orthogonal_complement_rows();
        stacked = Some(match stacked {
            None => comp,
            Some(m) => m.vstack(&comp)?,
        });
    }
    Ok(ambient.map(|n| nullspace_with_cols(&stacked.unwrap_or_else(|| RationalMatrix::zeros(0, n)), n)))
}

/// Exact kernel of `m`.
pub fn nullspace(m: &RationalMatrix) -> Subspace {
    nullspace_with_cols(m, m.cols())
}

fn nullspace_with_cols(m: &RationalMatrix, cols: usize) -> Subspace {
    if m.rows() == 0 {
        return Subspace::full(cols);
    }
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            v
        })
        .collect();
    Subspace::span(cols, &vectors).expect("kernel vectors have matching length")
}

/// Rank of `m` without forming the reduced form.
pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}

/// Whether `m x = b` has a solution.
pub fn is_consistent(m: &RationalMatrix, b: &[Rational]) -> Result<bool> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: b.len() });
    }
    let mut aug = RationalMatrix::zeros(m.rows(), m.cols() + 1);
    for (r, br) in b.iter().enumerate() {
        for c in 0..m.cols() {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols(), br.clone());
    }
    Ok(m.rank() == aug.rank())
}

/// Floating-point rank estimate for inputs that are not exactly representable.
/// Singular values at or below `cutoff * max(1, sigma_max)` count as zero.
pub mod approx {
    use nalgebra::DMatrix;

    use super::RationalMatrix;

    pub const DEFAULT_CUTOFF: f64 = 1e-9;

    pub fn numeric_rank(m: &RationalMatrix, cutoff: f64) -> usize {
        if m.rows() == 0 || m.cols() == 0 {
            return 0;
        }
        let dm = DMatrix::from_row_slice(m.rows(), m.cols(), &m.to_f64());
        let sv = dm.singular_values();
        let max = sv.iter().cloned().fold(0.0_f64, f64::max);
        let tol = cutoff * max.max(1.0);
        sv.iter().filter(|&&s| s > tol).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn nullspace_of_single_row() {
        let m = RationalMatrix::from_i64(&[&[1, -1]]);
        let k = nullspace(&m);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&v(&[1, 1])));
    }

    #[test]
    fn nullspace_of_zero_and_identity() {
        assert_eq!(nullspace(&RationalMatrix::zeros(2, 3)).dim(), 3);
        assert_eq!(nullspace(&RationalMatrix::identity(3)).dim(), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 5]]);
        let k = nullspace(&m);
        assert_eq!(k.dim(), 4 - m.rank());
        for b in k.basis_vectors() {
            assert!(m.mul_vec(&b).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn coordinate_axes_intersect_and_sum() {
        let a = Subspace::span(3, &[v(&[1, 0, 0])]).unwrap();
        let b = Subspace::span(3, &[v(&[0, 1, 0])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(a.intersect(&b).is_err());
        assert!(a.sum(&b).is_err());
    }

    #[test]
    fn complement_round_trip() {
        let a = Subspace::span(4, &[v(&[1, 2, 0, -1]), v(&[0, 3, 1, 1])]).unwrap();
        let comp = a.orthogonal_complement_rows();
        assert_eq!(comp.rows(), 2);
        assert_eq!(nullspace(&comp), a);
    }

    #[test]
    fn canonical_form_has_unit_pivots() {
        let a = Subspace::span(3, &[v(&[2, 4, 6]), v(&[0, 3, 3])]).unwrap();
        let b = Subspace::span(3, &[v(&[1, 1, 1]), v(&[1, 0, -0])]).unwrap();
        assert_eq!(a.basis().get(0, 0), &q(1));
        assert_eq!(a, Subspace::span(3, &[v(&[1, 0, 1]), v(&[0, 1, 1])]).unwrap());
        assert_ne!(a, b);
    }

    #[test]
    fn fractional_entries() {
        let m = RationalMatrix::from_rows(2, &[vec![frac(1, 2), frac(1, 3)], vec![frac(3, 2), q(1)]]).unwrap();
        assert_eq!(m.rank(), 1);
        let k = nullspace(&m);
        assert!(k.contains(&[frac(-2, 3), q(1)]));
    }

    #[test]
    fn consistency() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(is_consistent(&m, &v(&[1, 2])).unwrap());
        assert!(!is_consistent(&m, &v(&[1, 3])).unwrap());
    }

    #[test]
    fn intersect_all_of_nothing() {
        assert!(intersect_all(std::iter::empty()).unwrap().is_none());
    }

    #[test]
    fn numeric_rank_matches_exact_rank() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(approx::numeric_rank(&m, approx::DEFAULT_CUTOFF), m.rank());
    }
}
