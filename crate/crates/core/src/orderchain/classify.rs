//! Sign conditions on hyperplanes through the origin for disjoint chains,
//! binary trees and zigzags.
//!
//! The three conditions are:
//! 1. some minimal element has a positive and another a negative coefficient;
//! 2. all nonzero coefficients have the same absolute value;
//! 3. the family's extension rule, fed the signs on minimal elements,
//!    reproduces every coefficient.
//!
//! For disjoint chains the conditions are read on the support of `h` (its
//! nonzero-coefficient elements with the induced order), which is again a
//! union of chains. A zero coefficient then simply drops out. On that family
//! the three conditions decide the cut. For trees and zigzags they are
//! read on the whole poset and the verdict comes from the cut test.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{BadPair, PosetPolytope, Target};
use crate::polymodel::{Hyperplane, Sign};
use crate::poset::{ElementSet, Poset};
use crate::{Error, Limits, RatVector, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Family {
    DisjointChains,
    BinaryTree,
    Zigzag,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::DisjointChains => "chains",
            Family::BinaryTree => "tree",
            Family::Zigzag => "zigzag",
        }
    }

    fn description(self) -> &'static str {
        match self {
            Family::DisjointChains => "disjoint union of chains",
            Family::BinaryTree => "connected binary tree",
            Family::Zigzag => "connected zigzag",
        }
    }

    pub fn contains(self, p: &Poset) -> bool {
        match self {
            Family::DisjointChains => p.is_disjoint_chains(),
            Family::BinaryTree => p.is_binary_tree(),
            Family::Zigzag => p.is_zigzag(),
        }
    }

    fn check(self, p: &Poset) -> Result<(), Error> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::FamilyMismatch(self.description()))
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "chains" => Ok(Family::DisjointChains),
            "tree" => Ok(Family::BinaryTree),
            "zigzag" => Ok(Family::Zigzag),
            _ => Err(Error::Parse(alloc::format!(
                "unknown family {s:?}, expected chains, tree or zigzag"
            ))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Conditions {
    pub min_signs: bool,
    pub equal_abs: bool,
    pub unique_extension: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.min_signs && self.equal_abs && self.unique_extension
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.min_signs {
            out.push("min_signs");
        }
        if self.equal_abs {
            out.push("equal_abs");
        }
        if self.unique_extension {
            out.push("unique_extension");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifierVerdict {
    pub family: Family,
    pub conditions: Conditions,
    /// Disjoint chains: the conditions' verdict. Trees and zigzags: the cut test.
    pub separating: bool,
    /// What the cut test says, for every family.
    pub checkcut_separating: bool,
    /// The coefficients the extension rule produces, scaled to `h`.
    pub extension: Option<Vec<Rational>>,
    pub evidence: Option<BadPair>,
}

/// Evaluates the three conditions for `h` and decides whether it cuts `O(P)`.
pub fn classify(p: &Poset, h: &Hyperplane, family: Family, limits: &Limits) -> Result<ClassifierVerdict, Error> {
    family.check(p)?;
    if h.dim() != p.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: h.dim(),
        });
    }
    if !h.rhs().is_zero() {
        return Err(Error::invalid(
            "the sign conditions concern hyperplanes through the origin (rhs 0)",
        ));
    }
    let c = h.coeffs().entries();
    let unit = c.iter().find(|x| !x.is_zero()).expect("hyperplane is nonzero").abs();
    let equal_abs = c.iter().all(|x| x.is_zero() || x.abs() == unit);
    let sign = |i: usize| i64::from(c[i].signum());

    let mut extension_defined = true;
    let (min_signs, ext) = match family {
        Family::DisjointChains => {
            let support: ElementSet = (0..p.len()).filter(|&i| !c[i].is_zero()).collect();
            let (q, map) = p.induced(support)?;
            let mins = q.minimal_elements();
            let min_signs = has_both_signs(mins.iter().map(|&m| sign(map[m])));
            let seeds: Vec<i64> = mins.iter().map(|&m| sign(map[m])).collect();
            let mut ext = vec![0; p.len()];
            for (k, s) in alternate_chains(&q, &seeds).into_iter().enumerate() {
                ext[map[k]] = s;
            }
            (min_signs, ext)
        }
        Family::BinaryTree | Family::Zigzag => {
            let mins = p.minimal_elements();
            let min_signs = has_both_signs(mins.iter().map(|&m| sign(m)));
            let seeds: Vec<i64> = mins.iter().map(|&m| sign(m)).collect();
            if seeds.contains(&0) {
                // The rules start from a sign on every minimal element.
                extension_defined = false;
            }
            let ext = if family == Family::BinaryTree {
                tree_rules(p, &seeds)
            } else {
                fence_rules(p, &seeds)
            };
            (min_signs, ext)
        }
    };
    let extension: Vec<Rational> = ext.iter().map(|&s| &unit * &Rational::from_integer(s)).collect();
    let conditions = Conditions {
        min_signs,
        equal_abs,
        unique_extension: extension_defined && extension.as_slice() == c,
    };

    let cut = PosetPolytope::new(p, Target::Order, limits)?.checkcut(h)?;
    let separating = match family {
        Family::DisjointChains => conditions.all(),
        Family::BinaryTree | Family::Zigzag => cut.separating(),
    };
    Ok(ClassifierVerdict {
        family,
        conditions,
        separating,
        checkcut_separating: cut.separating(),
        extension: Some(extension),
        evidence: if separating { None } else { cut.bad_pair },
    })
}

fn has_both_signs(mut signs: impl Iterator<Item = i64> + Clone) -> bool {
    signs.clone().any(|s| s > 0) && signs.any(|s| s < 0)
}

/// Coefficients alternating up each chain from the seed on its minimal
/// element. `seeds` follows `p.minimal_elements()`.
fn alternate_chains(p: &Poset, seeds: &[i64]) -> Vec<i64> {
    let mut out = vec![0; p.len()];
    for (&m, &s) in p.minimal_elements().iter().zip(seeds) {
        let (mut x, mut s) = (m, s);
        loop {
            out[x] = s;
            match p.upper_covers(x).first() {
                Some(up) => {
                    x = up;
                    s = -s;
                }
                None => break,
            }
        }
    }
    out
}

/// Bottom-up tree rule: a parent's coefficient is `-sign(a + b)`, where `a`
/// and `b` are the values of `h` on the ideals generated by its children.
fn tree_rules(p: &Poset, seeds: &[i64]) -> Vec<i64> {
    let mut coeff = vec![0i64; p.len()];
    let mut ideal_value = vec![0i64; p.len()];
    for (&m, &s) in p.minimal_elements().iter().zip(seeds) {
        coeff[m] = s;
        ideal_value[m] = s;
    }
    let mut order: Vec<usize> = (0..p.len()).filter(|&x| !p.lower_covers(x).is_empty()).collect();
    order.sort_by_key(|&x| p.strictly_below(x).len());
    for x in order {
        let below: i64 = p.lower_covers(x).iter().map(|ch| ideal_value[ch].signum()).sum();
        coeff[x] = -below.signum();
        ideal_value[x] = p.lower_covers(x).iter().map(|ch| ideal_value[ch]).sum::<i64>() + coeff[x];
    }
    coeff
}

/// Fence rule: a peak's coefficient is `-sign` of the sum of the one or two
/// valleys beneath it.
fn fence_rules(p: &Poset, seeds: &[i64]) -> Vec<i64> {
    let mut coeff = vec![0i64; p.len()];
    for (&m, &s) in p.minimal_elements().iter().zip(seeds) {
        coeff[m] = s;
    }
    for x in 0..p.len() {
        if !p.lower_covers(x).is_empty() {
            let below: i64 = p.lower_covers(x).iter().map(|ch| coeff[ch]).sum();
            coeff[x] = -below.signum();
        }
    }
    coeff
}

fn seeds_from(p: &Poset, signs: &[Sign]) -> Result<Vec<i64>, Error> {
    let mins = p.minimal_elements().len();
    if signs.len() != mins {
        return Err(Error::invalid(alloc::format!(
            "expected {mins} signs for the minimal elements, got {}",
            signs.len()
        )));
    }
    signs
        .iter()
        .map(|s| match s {
            Sign::Positive => Ok(1),
            Sign::Negative => Ok(-1),
            Sign::Zero => Err(Error::invalid("minimal elements need a sign of + or -")),
        })
        .collect()
}

fn to_hyperplane(coeffs: &[i64]) -> Result<Hyperplane, Error> {
    let v: Vec<Rational> = coeffs.iter().map(|&x| Rational::from_integer(x)).collect();
    Hyperplane::new(RatVector::new(v)?, Rational::zero())
}

/// The ±1 hyperplane on disjoint chains that alternates up each chain from
/// the given signs. `signs` follows `p.minimal_elements()`.
pub fn extend_from_minimal(p: &Poset, signs: &[Sign]) -> Result<Hyperplane, Error> {
    Family::DisjointChains.check(p)?;
    to_hyperplane(&alternate_chains(p, &seeds_from(p, signs)?))
}

/// The hyperplane on a binary tree obtained from leaf signs by the local
/// rules: children ideals `(-,-)` give `+`, `(+,+)` give `-`, `(+,-)` give
/// `0`, `(0,∓)` give `±`, `(0,0)` give `0`.
pub fn local_rules_extend(p: &Poset, signs: &[Sign]) -> Result<Hyperplane, Error> {
    Family::BinaryTree.check(p)?;
    to_hyperplane(&tree_rules(p, &seeds_from(p, signs)?))
}

/// The hyperplane on a zigzag obtained from the valley signs: a peak over one
/// valley takes the opposite sign, a peak over two valleys follows the tree
/// rules.
pub fn zigzag_extend(p: &Poset, signs: &[Sign]) -> Result<Hyperplane, Error> {
    Family::Zigzag.check(p)?;
    to_hyperplane(&fence_rules(p, &seeds_from(p, signs)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{disjoint_chains, zigzag, TreeShape, ZigzagStart};

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn chain_extension() {
        let two = disjoint_chains(&[1, 1]).unwrap();
        let h = extend_from_minimal(&two, &[Sign::Positive, Sign::Negative]).unwrap();
        assert_eq!(h, Hyperplane::from_i64s(&[1, -1], 0));
        let p = disjoint_chains(&[2, 1]).unwrap();
        let h = extend_from_minimal(&p, &[Sign::Positive, Sign::Negative]).unwrap();
        assert_eq!(h, Hyperplane::from_i64s(&[1, -1, -1], 0));
        let v = classify(&p, &h, Family::DisjointChains, &lim()).unwrap();
        assert!(v.conditions.all() && v.separating && v.checkcut_separating);
        let h = extend_from_minimal(&p, &[Sign::Positive, Sign::Positive]).unwrap();
        let v = classify(&p, &h, Family::DisjointChains, &lim()).unwrap();
        assert!(!v.conditions.min_signs && !v.separating);
        assert!(extend_from_minimal(&zigzag(3, ZigzagStart::Up).unwrap(), &[Sign::Positive]).is_err());
    }

    #[test]
    fn zero_coefficients_drop_out_of_chains() {
        // x1 - x3 on x1 < x2 and x3: x2 has coefficient 0 yet the cut holds.
        let p = disjoint_chains(&[2, 1]).unwrap();
        let v = classify(
            &p,
            &Hyperplane::from_i64s(&[1, 0, -1], 0),
            Family::DisjointChains,
            &lim(),
        )
        .unwrap();
        assert!(v.conditions.all());
        assert!(v.separating && v.checkcut_separating);
    }

    #[test]
    fn local_tree_patterns() {
        let t = TreeShape::perfect(1).to_poset().unwrap();
        let h = local_rules_extend(&t, &[Sign::Positive, Sign::Positive]).unwrap();
        assert_eq!(h, Hyperplane::from_i64s(&[1, 1, -1], 0));
        let h = local_rules_extend(&t, &[Sign::Positive, Sign::Negative]).unwrap();
        assert_eq!(h, Hyperplane::from_i64s(&[1, -1, 0], 0));
    }

    #[test]
    fn seven_node_tree_with_unequal_magnitudes_is_cut_by_a_singleton_step() {
        let p = Poset::from_labeled(
            &["a", "b", "c", "d", "e", "f", "g"],
            &[("a", "c"), ("b", "c"), ("c", "d"), ("e", "d"), ("f", "e"), ("g", "e")],
        )
        .unwrap();
        let h = Hyperplane::from_i64s(&[1, 1, -2, 0, 2, -1, -1], 0);
        let v = classify(&p, &h, Family::BinaryTree, &lim()).unwrap();
        assert!(v.conditions.min_signs && !v.conditions.equal_abs);
        assert!(!v.separating);
        // {a,b,f} has value 1; adding c alone drops it to -1.
        let bp = v.evidence.unwrap();
        assert_eq!(bp.first, ElementSet::from_indices([0, 1, 5]));
        assert_eq!(bp.second, ElementSet::from_indices([0, 1, 2, 5]));
    }

    #[test]
    fn zero_minimal_leaves_the_rules_undefined() {
        let p = zigzag(3, ZigzagStart::Down).unwrap();
        let v = classify(&p, &Hyperplane::from_i64s(&[0, -1, 1], 0), Family::Zigzag, &lim()).unwrap();
        assert!(!v.conditions.unique_extension);
    }

    #[test]
    fn vee_cuts_without_mixed_minimal_signs() {
        let p = zigzag(3, ZigzagStart::Up).unwrap();
        let v = classify(&p, &Hyperplane::from_i64s(&[-1, 1, -1], 0), Family::Zigzag, &lim()).unwrap();
        assert!(v.separating && !v.conditions.min_signs);
    }

    #[test]
    fn classify_rejects_bad_input() {
        let p = disjoint_chains(&[3]).unwrap();
        let h = Hyperplane::from_i64s(&[1, -1, 1], 1);
        assert!(classify(&p, &h, Family::DisjointChains, &lim()).is_err());
        let h = Hyperplane::from_i64s(&[1, -1, 1], 0);
        assert_eq!(
            classify(&p, &h, Family::Zigzag, &lim()),
            Err(Error::FamilyMismatch("connected zigzag"))
        );
    }
}
