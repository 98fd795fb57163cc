use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use super::Rational;
use crate::Error;

/// A non-empty vector of exact rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(RatVector(entries))
    }

    /// Panics on an empty slice; intended for literals and generated data.
    pub fn from_i64s(entries: &[i64]) -> Self {
        assert!(!entries.is_empty(), "RatVector must have dim >= 1");
        RatVector(entries.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "RatVector must have dim >= 1");
        RatVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    fn check_dim(&self, other: &RatVector) -> Result<(), Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &RatVector) -> Result<Rational, Error> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn add(&self, other: &RatVector) -> Result<RatVector, Error> {
        self.check_dim(other)?;
        Ok(RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &RatVector) -> Result<RatVector, Error> {
        self.check_dim(other)?;
        Ok(RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, factor: &Rational) -> RatVector {
        RatVector(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn neg(&self) -> RatVector {
        RatVector(self.0.iter().map(|a| -a).collect())
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: Rational) -> RatVector {
        let mut entries = self.0.clone();
        entries.push(last);
        RatVector(entries)
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a RatVector {
    type Item = &'a Rational;
    type IntoIter = core::slice::Iter<'a, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A rectangular matrix stored by rows. May have zero rows, but always has a
/// known column count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    cols: usize,
    rows: Vec<RatVector>,
}

impl RatMatrix {
    pub fn new(cols: usize, rows: Vec<RatVector>) -> Result<Self, Error> {
        if cols == 0 {
            return Err(Error::EmptyVector);
        }
        for row in &rows {
            if row.dim() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.dim(),
                });
            }
        }
        Ok(RatMatrix { cols, rows })
    }

    /// Builds from rows, taking the column count from the first row.
    pub fn from_rows(rows: Vec<RatVector>) -> Result<Self, Error> {
        let cols = rows.first().map(RatVector::dim).ok_or(Error::EmptyVector)?;
        Self::new(cols, rows)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn mul_vec(&self, x: &RatVector) -> Result<Vec<Rational>, Error> {
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    pub fn rank(&self) -> usize {
        Rref::of(self).pivots.len()
    }
}

/// Reduced row echelon form, kept with its pivot columns.
pub(crate) struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Rref {
    pub fn of(m: &RatMatrix) -> Rref {
        let mut rows: Vec<Vec<Rational>> = m.rows.iter().map(|r| r.entries().to_vec()).collect();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip().expect("pivot is nonzero");
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &(&f * p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(pivots.len());
        Rref { rows, pivots, cols }
    }
}

/// A basis of `{x : m·x = 0}`.
///
/// One vector per free column `f` of the reduced echelon form: it has a 1 at
/// `f`, zeros at the other free columns, and the negated reduced entries at
/// the pivot columns. A matrix without rows yields the standard basis.
pub fn nullspace(m: &RatMatrix) -> Vec<RatVector> {
    let rref = Rref::of(m);
    let mut is_pivot = vec![false; rref.cols];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    (0..rref.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); rref.cols];
            v[f] = Rational::one();
            for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
                v[p] = -&row[f];
            }
            RatVector(v)
        })
        .collect()
}

/// Whether the points span an affine subspace of dimension `count - 1`.
pub fn affinely_independent(points: &[RatVector]) -> Result<bool, Error> {
    let Some(first) = points.first() else {
        return Err(Error::EmptyVector);
    };
    if points.len() == 1 {
        return Ok(true);
    }
    if points.len() - 1 > first.dim() {
        // Still validate dimensions before answering.
        for p in points {
            first.check_dim(p)?;
        }
        return Ok(false);
    }
    let diffs = points[1..]
        .iter()
        .map(|p| p.sub(first))
        .collect::<Result<Vec<_>, _>>()?;
    let m = RatMatrix::new(first.dim(), diffs)?;
    Ok(m.rank() == points.len() - 1)
}

/// Dimension of the affine hull of a non-empty point set.
pub fn affine_dimension(points: &[RatVector]) -> Result<usize, Error> {
    let Some(first) = points.first() else {
        return Err(Error::EmptyVector);
    };
    let diffs = points[1..]
        .iter()
        .map(|p| p.sub(first))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RatMatrix::new(first.dim(), diffs)?.rank())
}
