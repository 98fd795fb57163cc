//! Exact strict linear feasibility.
//!
//! Given three groups of vectors, find `c` with `c·v > 0` on the first,
//! `c·v < 0` on the second and `c·v = 0` on the third. Equalities are removed
//! by working in a basis of their common nullspace; the strict inequalities
//! become the homogeneous linear program
//!
//! ```text
//! maximize t  subject to  u_i·y >= t,  t <= 1
//! ```
//!
//! whose optimum is positive exactly when the strict system is solvable. The
//! origin is feasible for that program, so the simplex starts from the slack
//! basis without a phase one, and Bland's least-index rule keeps the heavily
//! degenerate pivots from cycling.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{nullspace, RatMatrix, RatVector};
use super::Rational;
use crate::Error;

/// Returns `Some(c)` with `c·v > 0` for every `v` in `positive`, `c·v < 0` for
/// every `v` in `negative` and `c·v = 0` for every `v` in `zero`, or `None` if
/// no such `c` exists. The decision is exact.
///
/// The witness is scaled to a primitive integer vector. When both strict
/// groups are empty the zero vector is returned.
pub fn strict_feasibility(
    positive: &[RatVector],
    negative: &[RatVector],
    zero: &[RatVector],
) -> Result<Option<RatVector>, Error> {
    let Some(dim) = positive.iter().chain(negative).chain(zero).map(RatVector::dim).next() else {
        return Err(Error::EmptyVector);
    };
    for v in positive.iter().chain(negative).chain(zero) {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
    }
    if positive.is_empty() && negative.is_empty() {
        return Ok(Some(RatVector::zeros(dim)));
    }

    let basis = nullspace(&RatMatrix::new(dim, zero.to_vec())?);
    if basis.is_empty() {
        return Ok(None);
    }

    // Every strict constraint as `u·y > 0` in nullspace coordinates.
    let mut strict = Vec::with_capacity(positive.len() + negative.len());
    for v in positive {
        strict.push(project(v, &basis));
    }
    for v in negative {
        strict.push(project(&v.neg(), &basis));
    }
    if strict.iter().any(|u| u.iter().all(Rational::is_zero)) {
        return Ok(None);
    }

    let Some(y) = max_min_slack(&strict, basis.len()) else {
        return Ok(None);
    };
    let mut c = vec![Rational::zero(); dim];
    for (coef, b) in y.iter().zip(&basis) {
        if coef.is_zero() {
            continue;
        }
        for (ci, bi) in c.iter_mut().zip(b) {
            *ci += &(coef * bi);
        }
    }
    let c = primitive_integer(RatVector::new(c)?);
    debug_assert!(satisfies(&c, positive, negative, zero));
    Ok(Some(c))
}

/// Re-evaluates a candidate against all three groups.
pub fn satisfies(c: &RatVector, positive: &[RatVector], negative: &[RatVector], zero: &[RatVector]) -> bool {
    let val = |v: &RatVector| c.dot(v).ok();
    positive.iter().all(|v| val(v).is_some_and(|x| x.is_positive()))
        && negative.iter().all(|v| val(v).is_some_and(|x| x.is_negative()))
        && zero.iter().all(|v| val(v).is_some_and(|x| x.is_zero()))
}

/// Positive rescaling of `v` to coprime integer entries. The zero vector is
/// returned unchanged.
pub fn primitive_integer(v: RatVector) -> RatVector {
    if v.is_zero() {
        return v;
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let entries = ints.into_iter().map(|x| Rational::from_bigint(x / &gcd)).collect();
    RatVector::new(entries).expect("dimension preserved")
}

fn project(v: &RatVector, basis: &[RatVector]) -> Vec<Rational> {
    basis.iter().map(|b| b.dot(v).expect("basis shares dim")).collect()
}

/// Solves `max t s.t. u_i·y >= t, t <= 1` with `y` free. Returns `y` when
/// the optimum is positive.
fn max_min_slack(strict: &[Vec<Rational>], k: usize) -> Option<Vec<Rational>> {
    // Columns: y+ (k), y- (k), t, then one slack per row.
    let m = strict.len() + 1;
    let structural = 2 * k + 1;
    let t_col = 2 * k;
    let mut tableau = Tableau::new(m, structural);
    for (i, u) in strict.iter().enumerate() {
        // -u·y+ + u·y- + t <= 0
        for (j, uj) in u.iter().enumerate() {
            if !uj.is_zero() {
                tableau.set(i, j, -uj);
                tableau.set(i, k + j, uj.clone());
            }
        }
        tableau.set(i, t_col, Rational::one());
    }
    tableau.set(m - 1, t_col, Rational::one());
    tableau.set_rhs(m - 1, Rational::one());
    tableau.set_objective(t_col, Rational::one());

    tableau.maximize();
    if !tableau.objective_value().is_positive() {
        return None;
    }
    let x = tableau.primal();
    Some((0..k).map(|j| &x[j] - &x[k + j]).collect())
}

/// Dense simplex tableau for `max c·x, A x <= b, x >= 0` with `b >= 0`.
struct Tableau {
    rows: usize,
    cols: usize,
    /// Row-major, `cols + 1` entries per row; the last one is the right-hand side.
    a: Vec<Rational>,
    /// Reduced costs (`c_j - z_j`) followed by the negated objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(rows: usize, structural: usize) -> Self {
        let cols = structural + rows;
        let mut a = vec![Rational::zero(); rows * (cols + 1)];
        for i in 0..rows {
            a[i * (cols + 1) + structural + i] = Rational::one();
        }
        Tableau {
            rows,
            cols,
            a,
            obj: vec![Rational::zero(); cols + 1],
            basis: (structural..structural + rows).collect(),
        }
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.cols + 1) + j
    }

    fn set(&mut self, i: usize, j: usize, v: Rational) {
        let k = self.idx(i, j);
        self.a[k] = v;
    }

    fn set_rhs(&mut self, i: usize, v: Rational) {
        let k = self.idx(i, self.cols);
        self.a[k] = v;
    }

    fn set_objective(&mut self, j: usize, v: Rational) {
        self.obj[j] = v;
    }

    fn objective_value(&self) -> Rational {
        -&self.obj[self.cols]
    }

    fn primal(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.a[self.idx(i, self.cols)].clone();
        }
        x
    }

    /// Bland's rule: lowest-index improving column, ratio ties broken by the
    /// lowest basic variable index. The programs built here are bounded.
    fn maximize(&mut self) {
        while let Some(enter) = (0..self.cols).find(|&j| self.obj[j].is_positive()) {
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows {
                let aij = &self.a[self.idx(i, enter)];
                if !aij.is_positive() {
                    continue;
                }
                let ratio = &self.a[self.idx(i, self.cols)] / aij;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (row, _) = leave.expect("max-min-slack program is bounded");
            self.pivot(row, enter);
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.cols + 1;
        let inv = self.a[self.idx(r, c)].recip().expect("pivot entry is nonzero");
        let start = r * width;
        for x in &mut self.a[start..start + width] {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row: Vec<(usize, Rational)> = self.a[start..start + width]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.a[i * width + c].clone();
            if f.is_zero() {
                continue;
            }
            for (j, p) in &pivot_row {
                let k = i * width + j;
                self.a[k] -= &(&f * p);
            }
        }
        let f = self.obj[c].clone();
        if !f.is_zero() {
            for (j, p) in &pivot_row {
                self.obj[*j] -= &(&f * p);
            }
        }
        self.basis[r] = c;
    }
}
