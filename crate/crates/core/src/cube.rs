//! Separating hyperplanes of the unit cube `[0,1]^d` and of the slices
//! `{x ∈ [0,1]^d : x_1 + ⋯ + x_k ≤ ℓ}` obtained from one cut.
//!
//! Coordinates are 0-based in the API (`x_1` is index 0).

use alloc::vec::Vec;
use core::fmt;

use crate::exactmath::{RatVector, Rational};
use crate::polymodel::{Hyperplane, SkeletonModel};
use crate::Error;

pub const MAX_CUBE_DIM: usize = 20;
pub const MAX_SUBPOLYTOPE_DIM: usize = 6;

/// The 0/1 point whose coordinates are the bits of `index`, `x_1` being the
/// most significant, so that increasing indices run in lexicographic order.
pub fn cube_vertex(d: usize, index: usize) -> RatVector {
    let bits: Vec<i64> = (0..d).map(|i| ((index >> (d - 1 - i)) & 1) as i64).collect();
    RatVector::from_i64s(&bits)
}

pub fn cube_model(d: usize) -> Result<SkeletonModel, Error> {
    if !(2..=MAX_CUBE_DIM).contains(&d) {
        return Err(Error::invalid(alloc::format!(
            "cube dimension must be in 2..={MAX_CUBE_DIM}, got {d}"
        )));
    }
    let n = 1usize << d;
    let vertices = (0..n).map(|i| cube_vertex(d, i)).collect();
    let mut edges = Vec::with_capacity(d << (d - 1));
    for a in 0..n {
        for bit in 0..d {
            let b = a ^ (1 << bit);
            if a < b {
                edges.push((a, b));
            }
        }
    }
    Ok(SkeletonModel::from_trusted(vertices, edges, d))
}

/// A hyperplane through the origin, `coeffs·x = 0`, cuts the cube exactly
/// when it has a positive and a negative coefficient and all nonzero
/// coefficients share one absolute value.
pub fn equal_magnitude_criterion(coeffs: &RatVector) -> Result<bool, Error> {
    if coeffs.is_zero() {
        return Err(Error::ZeroHyperplane);
    }
    let has_pos = coeffs.iter().any(Rational::is_positive);
    let has_neg = coeffs.iter().any(Rational::is_negative);
    Ok(has_pos && has_neg && common_magnitude(coeffs).is_some())
}

fn common_magnitude(coeffs: &RatVector) -> Option<Rational> {
    let mut nonzero = coeffs.iter().filter(|a| !a.is_zero()).map(Rational::abs);
    let first = nonzero.next()?;
    nonzero.all(|a| a == first).then_some(first)
}

/// `Σ_{i∈plus} x_i − Σ_{j∈minus} x_j = offset` with `plus`, `minus` disjoint
/// sorted index sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedCut {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub offset: i64,
}

impl SignedCut {
    pub fn hyperplane(&self, d: usize) -> Result<Hyperplane, Error> {
        let mut coeffs = alloc::vec![0i64; d];
        for &i in &self.plus {
            *coeffs.get_mut(i).ok_or_else(|| Error::invalid("index out of range"))? = 1;
        }
        for &j in &self.minus {
            *coeffs.get_mut(j).ok_or_else(|| Error::invalid("index out of range"))? = -1;
        }
        Hyperplane::new(RatVector::from_i64s(&coeffs), Rational::from_integer(self.offset))
    }
}

fn signed_parts(coeffs: &RatVector, rhs: &Rational) -> Option<SignedCut> {
    let scale = common_magnitude(coeffs)?;
    let offset = (rhs / &scale).to_i64()?;
    let plus = (0..coeffs.dim()).filter(|&i| coeffs[i].is_positive()).collect();
    let minus = (0..coeffs.dim()).filter(|&i| coeffs[i].is_negative()).collect();
    Some(SignedCut { plus, minus, offset })
}

/// Recognizes every separating hyperplane of the cube: after a positive
/// rescaling the coefficients lie in `{0, ±1}`, the right-hand side is an
/// integer `h`, and `-#minus < h < #plus` so both open sides hold vertices.
pub fn recognize_cube_cut(coeffs: &RatVector, rhs: &Rational) -> Option<SignedCut> {
    let cut = signed_parts(coeffs, rhs)?;
    let lo = -(cut.minus.len() as i64);
    let hi = cut.plus.len() as i64;
    (lo < cut.offset && cut.offset < hi).then_some(cut)
}

/// Second-cut hyperplane data: disjoint nonempty `plus`/`minus` index sets
/// and an integer `0 ≤ h < #plus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SecondCutSpec {
    plus: Vec<usize>,
    minus: Vec<usize>,
    h: i64,
}

impl SecondCutSpec {
    pub fn new(d: usize, mut plus: Vec<usize>, mut minus: Vec<usize>, h: i64) -> Result<Self, Error> {
        plus.sort_unstable();
        plus.dedup();
        minus.sort_unstable();
        minus.dedup();
        if plus.is_empty() || minus.is_empty() {
            return Err(Error::invalid("I and J must be nonempty"));
        }
        if plus.iter().chain(&minus).any(|&i| i >= d) {
            return Err(Error::invalid(alloc::format!("indices must be below d = {d}")));
        }
        if plus.iter().any(|i| minus.binary_search(i).is_ok()) {
            return Err(Error::invalid("I and J must be disjoint"));
        }
        if h < 0 || h >= plus.len() as i64 {
            return Err(Error::invalid(alloc::format!(
                "h must satisfy 0 <= h < #I = {}",
                plus.len()
            )));
        }
        Ok(SecondCutSpec { plus, minus, h })
    }

    pub fn plus(&self) -> &[usize] {
        &self.plus
    }

    pub fn minus(&self) -> &[usize] {
        &self.minus
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn hyperplane(&self, d: usize) -> Result<Hyperplane, Error> {
        SignedCut {
            plus: self.plus.clone(),
            minus: self.minus.clone(),
            offset: self.h,
        }
        .hyperplane(d)
    }
}

/// The signed normal form `Σ_I x − Σ_J x = h` with `J ≠ ∅` and
/// `0 ≤ h < #I`, after positive rescaling only. Rejects anything else.
///
/// Note that this form misses separating hyperplanes whose coefficients all
/// share a sign, such as `x_1 + x_2 = 1`; [`recognize_cube_cut`] accepts those.
pub fn recognize_signed_cut(coeffs: &RatVector, rhs: &Rational) -> Option<SecondCutSpec> {
    if coeffs.is_zero() {
        return None;
    }
    let cut = signed_parts(coeffs, rhs)?;
    SecondCutSpec::new(coeffs.dim(), cut.plus, cut.minus, cut.offset).ok()
}

/// `x_1 + ⋯ + x_k ≤ ℓ` inside `[0,1]^d`, with `2 ≤ k ≤ d` and `1 ≤ ℓ < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeCutForm {
    pub k: usize,
    pub ell: usize,
}

impl CubeCutForm {
    pub fn new(d: usize, k: usize, ell: usize) -> Result<Self, Error> {
        if !(2 <= k && k <= d && 1 <= ell && ell < k) {
            return Err(Error::invalid(alloc::format!(
                "need 2 <= k <= d and 1 <= l < k, got d={d} k={k} l={ell}"
            )));
        }
        Ok(CubeCutForm { k, ell })
    }

    /// Form of the other half: reflecting the first `k` coordinates maps
    /// `Σ x ≥ ℓ` onto `Σ x ≤ k − ℓ`.
    pub fn complement(self) -> CubeCutForm {
        CubeCutForm {
            k: self.k,
            ell: self.k - self.ell,
        }
    }

    /// The form or its complement, whichever has the smaller `ℓ`.
    pub fn reduced(self) -> CubeCutForm {
        self.min(self.complement())
    }

    /// `x_1 + ⋯ + x_k = ℓ` in dimension `d`.
    pub fn hyperplane(self, d: usize) -> Result<Hyperplane, Error> {
        CubeCutForm::new(d, self.k, self.ell)?;
        let coeffs: Vec<i64> = (0..d).map(|i| i64::from(i < self.k)).collect();
        Hyperplane::new(RatVector::from_i64s(&coeffs), Rational::from_integer(self.ell as i64))
    }

    pub fn contains(self, vertex_index: usize, d: usize) -> bool {
        let top_bits = vertex_index >> (d - self.k);
        (top_bits.count_ones() as usize) <= self.ell
    }
}

impl fmt::Display for CubeCutForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_1 + ... + x_{} <= {}", self.k, self.ell)
    }
}

/// Normal form of the half `coeffs·x ≤ rhs` of a separating hyperplane.
///
/// Writing the hyperplane as `Σ_I x − Σ_J x = h` and substituting
/// `x_j ↦ 1 − x_j` on `J` gives `Σ_{I∪J} x = h + #J`; after permuting
/// coordinates so `I` comes first and then `J`, that is `x_1 + ⋯ + x_k = ℓ`
/// with `k = #I + #J` and `ℓ = h + #J`.
pub fn canonicalize(coeffs: &RatVector, rhs: &Rational) -> Result<CubeCutForm, Error> {
    let cut = recognize_cube_cut(coeffs, rhs).ok_or(Error::NotSeparatingForm)?;
    let k = cut.plus.len() + cut.minus.len();
    let ell = cut.offset + cut.minus.len() as i64;
    CubeCutForm::new(coeffs.dim(), k, ell as usize)
}

/// Number of slice shapes `x_1 + ⋯ + x_k ≤ ℓ` up to unimodular equivalence.
pub fn count_forms(d: usize) -> u64 {
    let d = d as u64;
    d * d.saturating_sub(1) / 2
}

/// Every valid `(k, ℓ)` for dimension `d`, ordered by `k` then `ℓ`.
pub fn all_forms(d: usize) -> Vec<CubeCutForm> {
    (2..=d)
        .flat_map(|k| (1..k).map(move |ell| CubeCutForm { k, ell }))
        .collect()
}

/// Whether `Σ_I x − Σ_J x = h` is a separating hyperplane of the slice
/// `x_1 + ⋯ + x_k ≤ ℓ`, according to the two counting inequalities
/// `#J + h + k − #X ≤ ℓ` or `#I − h + k − #Y ≤ ℓ`, where `X = I ∩ [k]` and
/// `Y = J ∩ [k]`.
pub fn second_cut_predicate(d: usize, k: usize, ell: usize, spec: &SecondCutSpec) -> Result<bool, Error> {
    CubeCutForm::new(d, k, ell)?;
    if spec.plus.iter().chain(&spec.minus).any(|&i| i >= d) {
        return Err(Error::invalid("second cut indices exceed d"));
    }
    let (k, ell) = (k as i64, ell as i64);
    let size_i = spec.plus.len() as i64;
    let size_j = spec.minus.len() as i64;
    let x = spec.plus.iter().filter(|&&i| (i as i64) < k).count() as i64;
    let y = spec.minus.iter().filter(|&&j| (j as i64) < k).count() as i64;
    Ok(size_j + spec.h + k - x <= ell || size_i - spec.h + k - y <= ell)
}

/// Skeleton of the slice `x_1 + ⋯ + x_k ≤ ℓ` of `[0,1]^d`. Its vertices are
/// the 0/1 points satisfying the inequality, in cube order; edges come from
/// the LP edge oracle.
pub fn subpolytope_model(d: usize, k: usize, ell: usize) -> Result<SkeletonModel, Error> {
    if d > MAX_SUBPOLYTOPE_DIM {
        return Err(Error::GuardExceeded {
            what: "slice dimension",
            requested: d as u128,
            limit: MAX_SUBPOLYTOPE_DIM as u128,
        });
    }
    let form = CubeCutForm::new(d, k, ell)?;
    let vertices = (0..1usize << d)
        .filter(|&i| form.contains(i, d))
        .map(|i| cube_vertex(d, i))
        .collect();
    SkeletonModel::from_edge_oracle(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymodel::is_separating;
    use alloc::vec;

    fn rv(xs: &[i64]) -> RatVector {
        RatVector::from_i64s(xs)
    }

    #[test]
    fn cube_sizes() {
        for (d, v, e) in [(2, 4, 4), (3, 8, 12), (4, 16, 32)] {
            let m = cube_model(d).unwrap();
            assert_eq!((m.vertex_count(), m.edges().len(), m.dim()), (v, e, d));
        }
        assert!(cube_model(1).is_err());
        assert!(cube_model(21).is_err());
    }

    #[test]
    fn cube_vertices_lexicographic() {
        let m = cube_model(2).unwrap();
        let vs: Vec<_> = m.vertices().to_vec();
        assert_eq!(vs, vec![rv(&[0, 0]), rv(&[0, 1]), rv(&[1, 0]), rv(&[1, 1])]);
    }

    #[test]
    fn diagonal_plane_in_cube() {
        // x1 + x2 = 1 on the 3-cube: vertices 000..111 in order.
        let m = cube_model(3).unwrap();
        let r = is_separating(&m, &Hyperplane::from_i64s(&[1, 1, 0], 1)).unwrap();
        assert_eq!(alloc::format!("{}", r.pattern), "--0000++");
        assert!(r.separating());
        assert_eq!(r.pattern.count(crate::Sign::Zero), 4);
    }

    #[test]
    fn equal_magnitude_examples() {
        assert!(equal_magnitude_criterion(&rv(&[1, -1, 0])).unwrap());
        assert!(!equal_magnitude_criterion(&rv(&[1, -2, 0])).unwrap());
        assert!(!equal_magnitude_criterion(&rv(&[1, 1, 1])).unwrap());
        assert_eq!(equal_magnitude_criterion(&rv(&[0, 0])), Err(Error::ZeroHyperplane));
    }

    #[test]
    fn canonical_forms() {
        let z = Rational::zero();
        assert_eq!(
            canonicalize(&rv(&[1, 1, -1]), &z).unwrap(),
            CubeCutForm { k: 3, ell: 1 }
        );
        assert_eq!(
            canonicalize(&rv(&[1, 1, 0]), &Rational::one()).unwrap(),
            CubeCutForm { k: 2, ell: 1 }
        );
        assert_eq!(
            canonicalize(&rv(&[1, -1, -1, 0]), &z).unwrap(),
            CubeCutForm { k: 3, ell: 2 }
        );
        assert_eq!(canonicalize(&rv(&[1, 1, 1]), &z), Err(Error::NotSeparatingForm));
        assert_eq!(canonicalize(&rv(&[1, -2, 0]), &z), Err(Error::NotSeparatingForm));
        // The opposite orientation describes the other half.
        let f = canonicalize(&rv(&[-1, -1, 1, 1]), &Rational::from_integer(-1)).unwrap();
        assert_eq!(f, CubeCutForm { k: 4, ell: 1 });
        let g = canonicalize(&rv(&[1, 1, -1, -1]), &Rational::one()).unwrap();
        assert_eq!(g, f.complement());
        assert_eq!(g.reduced(), f);
    }

    #[test]
    fn form_counts() {
        for (d, n) in [(2, 1), (3, 3), (4, 6)] {
            assert_eq!(count_forms(d), n);
            assert_eq!(all_forms(d).len() as u64, n);
        }
    }

    #[test]
    fn signed_recognizer() {
        let z = Rational::zero();
        let s = recognize_signed_cut(&rv(&[1, -1]), &z).unwrap();
        assert_eq!((s.plus(), s.minus(), s.h()), (&[0][..], &[1][..], 0));
        assert_eq!(recognize_signed_cut(&rv(&[2, -2]), &z), Some(s));
        assert_eq!(recognize_signed_cut(&rv(&[1, 1]), &Rational::one()), None);
        assert_eq!(recognize_signed_cut(&rv(&[1, -1]), &Rational::one()), None);
        assert!(recognize_signed_cut(&rv(&[1, 1, -1]), &Rational::one()).is_some());
        assert_eq!(recognize_signed_cut(&rv(&[1, -1]), &Rational::new(1, 2).unwrap()), None);
    }

    #[test]
    fn second_cut_examples() {
        let spec = SecondCutSpec::new(4, vec![0, 1], vec![2], 0).unwrap();
        assert!(second_cut_predicate(4, 4, 3, &spec).unwrap());
        let spec = SecondCutSpec::new(3, vec![0], vec![1], 0).unwrap();
        assert!(!second_cut_predicate(3, 3, 1, &spec).unwrap());
        let spec = SecondCutSpec::new(3, vec![2], vec![0], 0).unwrap();
        assert!(!second_cut_predicate(3, 2, 1, &spec).unwrap());
        assert!(second_cut_predicate(3, 3, 3, &spec).is_err());
    }

    #[test]
    fn second_cut_spec_validation() {
        assert!(SecondCutSpec::new(3, vec![], vec![1], 0).is_err());
        assert!(SecondCutSpec::new(3, vec![0], vec![0], 0).is_err());
        assert!(SecondCutSpec::new(3, vec![0], vec![1], 1).is_err());
        assert!(SecondCutSpec::new(3, vec![0], vec![3], 0).is_err());
        assert!(SecondCutSpec::new(3, vec![0], vec![1], -1).is_err());
    }

    #[test]
    fn slice_models() {
        let m = subpolytope_model(3, 3, 1).unwrap();
        assert_eq!((m.vertex_count(), m.edges().len()), (4, 6));
        assert_eq!(subpolytope_model(3, 2, 1).unwrap().vertex_count(), 6);
        let m = subpolytope_model(2, 2, 1).unwrap();
        assert_eq!((m.vertex_count(), m.edges().len()), (3, 3));
        assert!(matches!(subpolytope_model(7, 2, 1), Err(Error::GuardExceeded { .. })));
    }
}
