//! Order and chain polytopes of finite posets.
//!
//! The order polytope has the indicator vectors of ideals as vertices and
//! the chain polytope those of antichains. Both are listed by bitmask so that
//! sign patterns are stable. Edges come from the combinatorial rules: two
//! ideals are adjacent when one contains the other and the difference is
//! connected, two antichains when their symmetric difference is connected.

mod classify;

pub use classify::{
    classify, extend_from_minimal, local_rules_extend, zigzag_extend, ClassifierVerdict, Conditions, Family,
};

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::polymodel::{enumerate_cuts_oracle_with, CutReport, Hyperplane, Sign, SignPattern, SkeletonModel};
use crate::poset::{ElementSet, Poset};
use crate::{Error, Limits, RatVector, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Target {
    Order,
    Chain,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Order => "order",
            Target::Chain => "chain",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "order" => Ok(Target::Order),
            "chain" => Ok(Target::Chain),
            _ => Err(Error::Parse(alloc::format!(
                "unknown target {s:?}, expected order or chain"
            ))),
        }
    }
}

/// Vertices and edges of `O(P)` or `C(P)` as element subsets.
#[derive(Clone, Debug)]
pub struct PosetPolytope {
    poset: Poset,
    target: Target,
    vertices: Vec<ElementSet>,
    edges: Vec<(usize, usize)>,
}

impl PosetPolytope {
    pub fn new(poset: &Poset, target: Target, limits: &Limits) -> Result<Self, Error> {
        let vertices = match target {
            Target::Order => poset.ideals(limits)?,
            Target::Chain => poset.antichains(limits)?,
        };
        let mut edges = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                let nested = a.is_subset(b) || b.is_subset(a);
                if (target == Target::Chain || nested) && poset.connected_subset(a.symmetric_difference(b)) {
                    edges.push((i, j));
                }
            }
        }
        Ok(PosetPolytope {
            poset: poset.clone(),
            target,
            vertices,
            edges,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn target(&self) -> Target {
        self.target
    }

    /// Ideals or antichains, sorted by bitmask.
    pub fn vertices(&self) -> &[ElementSet] {
        &self.vertices
    }

    /// Vertex index pairs `(i, j)`, `i < j`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_vector(&self, i: usize) -> RatVector {
        indicator(self.poset.len(), self.vertices[i])
    }

    pub fn model(&self) -> SkeletonModel {
        let vs = (0..self.vertices.len()).map(|i| self.vertex_vector(i)).collect();
        SkeletonModel::from_trusted(vs, self.edges.clone(), self.poset.len())
    }

    /// Signs of `h` at every vertex.
    pub fn evaluate(&self, h: &Hyperplane) -> Result<SignPattern, Error> {
        if h.dim() != self.poset.len() {
            return Err(Error::DimensionMismatch {
                expected: self.poset.len(),
                found: h.dim(),
            });
        }
        Ok(SignPattern::new(signs_at(&self.vertices, h)))
    }

    /// The cut test over the combinatorial skeleton: both strict sides
    /// occupied and no adjacent pair on strictly opposite sides.
    pub fn checkcut(&self, h: &Hyperplane) -> Result<PosetCutReport, Error> {
        let pattern = self.evaluate(h)?;
        let s = pattern.signs();
        let bad_pair = self
            .edges
            .iter()
            .find(|&&(i, j)| s[i].strictly_opposite(s[j]))
            .map(|&(i, j)| BadPair {
                first: self.vertices[i],
                second: self.vertices[j],
            });
        Ok(PosetCutReport {
            target: self.target,
            report: CutReport::from_edges(&self.edges, pattern),
            bad_pair,
        })
    }
}

fn indicator(n: usize, s: ElementSet) -> RatVector {
    let mut v = RatVector::zeros(n).into_entries();
    for i in s.iter() {
        v[i] = Rational::one();
    }
    RatVector::new(v).expect("n >= 1")
}

/// Sign of `h` at each indicator vector. Coefficients are cleared of
/// denominators first, so the common case runs in machine integers.
fn signs_at(sets: &[ElementSet], h: &Hyperplane) -> Vec<Sign> {
    let lcm = h
        .coeffs()
        .iter()
        .chain(core::iter::once(h.rhs()))
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = |x: &Rational| x.numer() * (&lcm / x.denom());
    let coeffs: Vec<BigInt> = h.coeffs().iter().map(scale).collect();
    let rhs = scale(h.rhs());
    let small: Option<Vec<i128>> = coeffs.iter().map(|c| c.to_i64().map(i128::from)).collect();
    match (small, rhs.to_i64()) {
        (Some(c), Some(r)) => sets
            .iter()
            .map(|s| {
                let v: i128 = s.iter().map(|i| c[i]).sum::<i128>() - i128::from(r);
                match v.signum() {
                    1 => Sign::Positive,
                    -1 => Sign::Negative,
                    _ => Sign::Zero,
                }
            })
            .collect(),
        _ => sets
            .iter()
            .map(|s| {
                let v: BigInt = s.iter().map(|i| &coeffs[i]).sum::<BigInt>() - &rhs;
                Sign::of(&Rational::from_bigint(v))
            })
            .collect(),
    }
}

/// Two adjacent vertices strictly on opposite sides of a hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BadPair {
    pub first: ElementSet,
    pub second: ElementSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetCutReport {
    pub target: Target,
    /// Verdict over the vertex list of the polytope.
    pub report: CutReport,
    /// The lowest bad pair, reported even when a side is empty.
    pub bad_pair: Option<BadPair>,
}

impl PosetCutReport {
    pub fn separating(&self) -> bool {
        self.report.separating()
    }

    pub fn has_positive(&self) -> bool {
        self.report.pattern.count(Sign::Positive) > 0
    }

    pub fn has_negative(&self) -> bool {
        self.report.pattern.count(Sign::Negative) > 0
    }
}

pub fn order_polytope_model(p: &Poset, limits: &Limits) -> Result<SkeletonModel, Error> {
    Ok(PosetPolytope::new(p, Target::Order, limits)?.model())
}

pub fn chain_polytope_model(p: &Poset, limits: &Limits) -> Result<SkeletonModel, Error> {
    Ok(PosetPolytope::new(p, Target::Chain, limits)?.model())
}

pub fn checkcut(p: &Poset, h: &Hyperplane, target: Target, limits: &Limits) -> Result<PosetCutReport, Error> {
    PosetPolytope::new(p, target, limits)?.checkcut(h)
}

/// Facets of `O(P)`: `x_i = 0` for maximal `x_i`, `x_j = 1` for minimal
/// `x_j`, and `x_i = x_j` for each cover `x_i < x_j`.
pub fn facets_order(p: &Poset) -> Vec<Hyperplane> {
    let n = p.len();
    let unit = |i: usize| RatVector::unit(n, i);
    let mut out = Vec::new();
    for i in p.maximal_elements() {
        out.push(Hyperplane::new(unit(i), Rational::zero()).expect("nonzero"));
    }
    for j in p.minimal_elements() {
        out.push(Hyperplane::new(unit(j), Rational::one()).expect("nonzero"));
    }
    for &(i, j) in p.covers() {
        let c = unit(i).sub(&unit(j)).expect("same dim");
        out.push(Hyperplane::new(c, Rational::zero()).expect("nonzero"));
    }
    out
}

/// Facets of `C(P)`: `x_i = 0` for every element and one `Σ x = 1` per
/// maximal chain.
pub fn facets_chain(p: &Poset, limits: &Limits) -> Result<Vec<Hyperplane>, Error> {
    let n = p.len();
    let mut out: Vec<Hyperplane> = (0..n)
        .map(|i| Hyperplane::new(RatVector::unit(n, i), Rational::zero()).expect("nonzero"))
        .collect();
    for chain in p.maximal_chains(limits)? {
        let c = indicator(n, ElementSet::from_indices(chain));
        out.push(Hyperplane::new(c, Rational::one()).expect("nonzero"));
    }
    Ok(out)
}

/// Separating hyperplanes for both polytopes of a poset that is not a chain:
/// `x_i - x_j = 0` for the first incomparable pair `i < j` cuts `O(P)`, and
/// `Σ x = 1` cuts `C(P)`.
pub fn existence_witness(p: &Poset) -> Result<(Hyperplane, Hyperplane), Error> {
    let n = p.len();
    let (i, j) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !p.comparable(i, j))
        .ok_or(Error::PosetIsChain)?;
    let diff = RatVector::unit(n, i).sub(&RatVector::unit(n, j)).expect("same dim");
    let order = Hyperplane::new(diff, Rational::zero()).expect("nonzero");
    let chain = Hyperplane::new(indicator(n, p.all()), Rational::one()).expect("nonzero");
    Ok((order, chain))
}

/// All decompositions of `O(P)` or `C(P)` by separating hyperplanes, from
/// the vertex-subset oracle on the combinatorial skeleton.
pub fn enumerate_poset_cuts(p: &Poset, target: Target, limits: &Limits) -> Result<Vec<SignPattern>, Error> {
    let model = PosetPolytope::new(p, target, limits)?.model();
    enumerate_cuts_oracle_with(&model, limits)
}
