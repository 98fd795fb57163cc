//! Polytopes as vertex/edge skeletons, and the separating-hyperplane test.
//!
//! A hyperplane `H` cuts a polytope `P` when it meets the interior and both
//! closed halves of `P` only have vertices of `P` as vertices. On a skeleton
//! this is decided from the vertex signs alone: some vertex strictly on each
//! side, and no edge whose endpoints lie strictly on opposite sides.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exactmath::{affine_dimension, nullspace, strict_feasibility, RatMatrix, RatVector, Rational};
use crate::limits::{binomial, Limits};
use crate::Error;

/// Vertex coordinates plus the edges of the polytope they span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonModel {
    vertices: Vec<RatVector>,
    edges: Vec<(usize, usize)>,
    dim: usize,
}

impl SkeletonModel {
    /// Validates the vertex and edge lists. Edges are stored as `(i, j)` with
    /// `i < j`, sorted.
    pub fn new(vertices: Vec<RatVector>, edges: Vec<(usize, usize)>) -> Result<Self, Error> {
        let dim = affine_dimension(&vertices)?;
        let n = vertices[0].dim();
        for v in &vertices {
            if v.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.dim(),
                });
            }
            if !v.is_integral() {
                return Err(Error::invalid("skeleton vertices must be integral"));
            }
        }
        let distinct: BTreeSet<&RatVector> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::invalid("duplicate vertex"));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b || a >= vertices.len() || b >= vertices.len() {
                return Err(Error::invalid(alloc::format!("bad edge ({a}, {b})")));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate edge"));
        }
        Ok(SkeletonModel {
            vertices,
            edges: normalized,
            dim,
        })
    }

    /// For generators that produce distinct integral vertices and valid edges
    /// by construction, with a known affine dimension.
    pub(crate) fn from_trusted(vertices: Vec<RatVector>, mut edges: Vec<(usize, usize)>, dim: usize) -> Self {
        for e in edges.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        debug_assert!(edges.windows(2).all(|w| w[0] != w[1]));
        SkeletonModel { vertices, edges, dim }
    }

    /// Builds the skeleton by asking [`edge_oracle`] about every vertex pair.
    pub fn from_edge_oracle(vertices: Vec<RatVector>) -> Result<Self, Error> {
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if edge_oracle(&vertices, i, j)? {
                    edges.push((i, j));
                }
            }
        }
        Self::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Affine dimension of the vertex set.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinate count of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&(i.min(j), i.max(j))).is_ok()
    }
}

/// `coeffs·x = rhs` with `coeffs` not all zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    coeffs: RatVector,
    rhs: Rational,
}

impl Hyperplane {
    pub fn new(coeffs: RatVector, rhs: Rational) -> Result<Self, Error> {
        if coeffs.is_zero() {
            return Err(Error::ZeroHyperplane);
        }
        Ok(Hyperplane { coeffs, rhs })
    }

    /// Integer literal shorthand; panics on all-zero or empty coefficients.
    pub fn from_i64s(coeffs: &[i64], rhs: i64) -> Self {
        Self::new(RatVector::from_i64s(coeffs), Rational::from_integer(rhs)).expect("nonzero coefficients")
    }

    pub fn coeffs(&self) -> &RatVector {
        &self.coeffs
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    /// `coeffs·x - rhs`.
    pub fn value_at(&self, x: &RatVector) -> Result<Rational, Error> {
        Ok(self.coeffs.dot(x)? - &self.rhs)
    }

    pub fn negated(&self) -> Hyperplane {
        Hyperplane {
            coeffs: self.coeffs.neg(),
            rhs: -&self.rhs,
        }
    }

    /// Same hyperplane and orientation, rescaled by a positive factor.
    pub fn scaled(&self, factor: &Rational) -> Result<Hyperplane, Error> {
        if !factor.is_positive() {
            return Err(Error::invalid("scale factor must be positive"));
        }
        Ok(Hyperplane {
            coeffs: self.coeffs.scale(factor),
            rhs: &self.rhs * factor,
        })
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sep = match (first, a.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mag = a.abs();
            if mag == 1 {
                write!(f, "{sep}x{}", i + 1)?;
            } else {
                write!(f, "{sep}{mag}*x{}", i + 1)?;
            }
            first = false;
        }
        write!(f, " = {}", self.rhs)
    }
}

/// Side of a hyperplane. Declared so that `Positive < Zero < Negative`, which
/// makes the lexicographically smaller of a pattern and its negation the one
/// whose first nonzero entry is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Zero,
    Negative,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        match x.signum() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }

    pub fn negated(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Zero => Sign::Zero,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Zero => '0',
            Sign::Negative => '-',
        }
    }

    pub fn strictly_opposite(self, other: Sign) -> bool {
        matches!(
            (self, other),
            (Sign::Positive, Sign::Negative) | (Sign::Negative, Sign::Positive)
        )
    }
}

/// Vertex-by-vertex side of a hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern(Vec<Sign>);

impl SignPattern {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignPattern(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> SignPattern {
        SignPattern(self.0.iter().map(|s| s.negated()).collect())
    }

    /// Representative of the unordered decomposition: the pattern or its
    /// negation, whichever has `+` at its first nonzero entry.
    pub fn normalized(&self) -> SignPattern {
        let neg = self.negated();
        if neg < *self {
            neg
        } else {
            self.clone()
        }
    }

    pub fn count(&self, sign: Sign) -> usize {
        self.0.iter().filter(|&&s| s == sign).count()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl core::str::FromStr for SignPattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Positive),
                '0' => Ok(Sign::Zero),
                '-' => Ok(Sign::Negative),
                _ => Err(Error::Parse(alloc::format!("bad sign {c:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignPattern)
    }
}

/// Why a hyperplane fails to cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutFailure {
    NoPositiveVertex,
    NoNegativeVertex,
    /// An edge `(i, j)`, `i < j`, whose endpoints lie strictly on opposite sides.
    BadEdge(usize, usize),
}

impl CutFailure {
    pub fn name(&self) -> &'static str {
        match self {
            CutFailure::NoPositiveVertex => "no_positive_vertex",
            CutFailure::NoNegativeVertex => "no_negative_vertex",
            CutFailure::BadEdge(..) => "bad_edge",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutReport {
    pub pattern: SignPattern,
    /// `None` exactly when the hyperplane is separating.
    pub failure: Option<CutFailure>,
}

impl CutReport {
    pub fn separating(&self) -> bool {
        self.failure.is_none()
    }

    /// Checks a sign pattern against a skeleton. The first failure is
    /// reported: missing positive side, then missing negative side, then the
    /// lowest crossing edge.
    pub fn from_pattern(model: &SkeletonModel, pattern: SignPattern) -> CutReport {
        Self::from_edges(&model.edges, pattern)
    }

    pub(crate) fn from_edges(edges: &[(usize, usize)], pattern: SignPattern) -> CutReport {
        let failure = if pattern.count(Sign::Positive) == 0 {
            Some(CutFailure::NoPositiveVertex)
        } else if pattern.count(Sign::Negative) == 0 {
            Some(CutFailure::NoNegativeVertex)
        } else {
            let s = pattern.signs();
            edges
                .iter()
                .find(|&&(i, j)| s[i].strictly_opposite(s[j]))
                .map(|&(i, j)| CutFailure::BadEdge(i, j))
        };
        CutReport { pattern, failure }
    }
}

pub fn evaluate(model: &SkeletonModel, h: &Hyperplane) -> Result<SignPattern, Error> {
    if h.dim() != model.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: model.ambient_dim(),
            found: h.dim(),
        });
    }
    model
        .vertices
        .iter()
        .map(|v| h.value_at(v).map(|x| Sign::of(&x)))
        .collect::<Result<Vec<_>, _>>()
        .map(SignPattern)
}

pub fn is_separating(model: &SkeletonModel, h: &Hyperplane) -> Result<CutReport, Error> {
    Ok(CutReport::from_pattern(model, evaluate(model, h)?))
}

/// Whether `conv{v_i, v_j}` is an edge of `conv(vertices)`: is there `(c, r)`
/// with `c·v_i = c·v_j = r` and `c·w < r` for every other vertex `w`?
///
/// Decided exactly with [`strict_feasibility`] on difference vectors.
pub fn edge_oracle(vertices: &[RatVector], i: usize, j: usize) -> Result<bool, Error> {
    if i == j || i >= vertices.len() || j >= vertices.len() {
        return Err(Error::invalid(alloc::format!("bad vertex pair ({i}, {j})")));
    }
    let base = &vertices[i];
    let zero = [vertices[j].sub(base)?];
    let negative = vertices
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, w)| w.sub(base))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(strict_feasibility(&[], &negative, &zero)?.is_some())
}

/// All decompositions of the polytope by separating hyperplanes, as
/// normalized sign patterns in ascending order.
///
/// A separating hyperplane meets the polytope in a facet-dimensional slice
/// whose vertices are vertices of the polytope, so it is spanned by `dim`
/// affinely independent vertices. The oracle visits every such vertex subset,
/// takes the hyperplane it spans inside the affine hull, and keeps the
/// patterns that pass the cut test.
pub fn enumerate_cuts_oracle(model: &SkeletonModel) -> Result<Vec<SignPattern>, Error> {
    enumerate_cuts_oracle_with(model, &Limits::default())
}

pub fn enumerate_cuts_oracle_with(model: &SkeletonModel, limits: &Limits) -> Result<Vec<SignPattern>, Error> {
    let d = model.dim;
    if d < 2 {
        return Err(Error::invalid("cut enumeration needs a polytope of dimension >= 2"));
    }
    let n = model.vertex_count();
    limits.check_candidates("vertex subsets for the cut oracle", binomial(n, d))?;

    let mut patterns = BTreeSet::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        if let Some(p) = spanned_pattern(model, &subset) {
            patterns.insert(p.normalized());
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    Ok(patterns
        .into_iter()
        .filter(|p| CutReport::from_pattern(model, p.clone()).separating())
        .collect())
}

/// Sign pattern of the hyperplane (within the affine hull) through the given
/// vertices, if they are affinely independent.
fn spanned_pattern(model: &SkeletonModel, subset: &[usize]) -> Option<SignPattern> {
    let vs = &model.vertices;
    let origin = &vs[subset[0]];
    let diffs: Vec<RatVector> = subset[1..]
        .iter()
        .map(|&k| vs[k].sub(origin).expect("same dim"))
        .collect();
    let m = RatMatrix::new(model.ambient_dim(), diffs).expect("same dim");
    if m.rank() != subset.len() - 1 {
        return None;
    }
    let values = nullspace(&m).into_iter().find_map(|c| {
        let values: Vec<Rational> = vs.iter().map(|v| c.dot(&v.sub(origin).unwrap()).unwrap()).collect();
        values.iter().any(|x| !x.is_zero()).then_some(values)
    })?;
    Some(SignPattern(values.iter().map(Sign::of).collect()))
}

/// Advances a strictly increasing index tuple in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Renders a pattern together with its vertex coordinates, one per line.
pub fn describe_pattern(model: &SkeletonModel, pattern: &SignPattern) -> String {
    let mut out = String::new();
    for (v, s) in model.vertices.iter().zip(pattern.signs()) {
        let coords: Vec<String> = v.iter().map(|x| alloc::format!("{x}")).collect();
        out.push_str(&alloc::format!("{} ({})\n", s.symbol(), coords.join(",")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn square_listed() -> SkeletonModel {
        // (0,0),(1,0),(0,1),(1,1)
        let vs = vec![
            RatVector::from_i64s(&[0, 0]),
            RatVector::from_i64s(&[1, 0]),
            RatVector::from_i64s(&[0, 1]),
            RatVector::from_i64s(&[1, 1]),
        ];
        SkeletonModel::new(vs, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn evaluate_on_square() {
        let p = evaluate(&square_listed(), &Hyperplane::from_i64s(&[1, -1], 0)).unwrap();
        assert_eq!(alloc::format!("{p}"), "0+-0");
    }

    #[test]
    fn zero_hyperplane_rejected() {
        let h = Hyperplane::new(RatVector::from_i64s(&[0, 0]), Rational::from_integer(-1));
        assert_eq!(h, Err(Error::ZeroHyperplane));
    }

    #[test]
    fn evaluate_dimension_mismatch() {
        let h = Hyperplane::from_i64s(&[1, 1, 1], 0);
        assert!(matches!(
            evaluate(&square_listed(), &h),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn failure_order() {
        let m = square_listed();
        let r = is_separating(&m, &Hyperplane::from_i64s(&[1, 1], 0)).unwrap();
        assert_eq!(r.failure, Some(CutFailure::NoNegativeVertex));
        let r = is_separating(&m, &Hyperplane::from_i64s(&[-1, -1], 0)).unwrap();
        assert_eq!(r.failure, Some(CutFailure::NoPositiveVertex));
        let half = Hyperplane::new(RatVector::from_i64s(&[2, 0]), Rational::one()).unwrap();
        let r = is_separating(&m, &half).unwrap();
        assert_eq!(r.failure, Some(CutFailure::BadEdge(0, 1)));
        assert!(is_separating(&m, &Hyperplane::from_i64s(&[1, 1], 1))
            .unwrap()
            .separating());
    }

    #[test]
    fn square_edges_from_oracle() {
        let m = square_listed();
        let built = SkeletonModel::from_edge_oracle(m.vertices().to_vec()).unwrap();
        assert_eq!(built.edges(), m.edges());
        assert!(edge_oracle(m.vertices(), 0, 1).unwrap());
        assert!(!edge_oracle(m.vertices(), 0, 3).unwrap());
        assert!(edge_oracle(m.vertices(), 0, 0).is_err());
    }

    #[test]
    fn square_has_two_decompositions() {
        let cuts = enumerate_cuts_oracle(&square_listed()).unwrap();
        let shown: Vec<String> = cuts.iter().map(|p| alloc::format!("{p}")).collect();
        assert_eq!(shown, vec!["+00-", "0+-0"]);
    }

    #[test]
    fn model_validation() {
        let vs = vec![RatVector::from_i64s(&[0, 0]), RatVector::from_i64s(&[0, 0])];
        assert!(SkeletonModel::new(vs, vec![]).is_err());
        let vs = vec![RatVector::from_i64s(&[0, 0]), RatVector::from_i64s(&[1, 0])];
        assert!(SkeletonModel::new(vs.clone(), vec![(0, 1), (1, 0)]).is_err());
        assert!(SkeletonModel::new(vs.clone(), vec![(0, 2)]).is_err());
        assert!(SkeletonModel::new(vs, vec![(1, 0)]).unwrap().is_edge(0, 1));
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }
}
