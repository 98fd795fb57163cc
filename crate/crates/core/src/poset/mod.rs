//! Finite posets on at most 64 elements.
//!
//! Elements are indexed `0..n` in a fixed order and carry unique labels.
//! Subsets are [`ElementSet`] bitmasks, which keeps the enumerations cheap.

mod families;
mod set;

pub use families::{disjoint_chains, zigzag, TreeShape, ZigzagStart};
pub use set::{ElementSet, Elements};

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::limits::guard;
use crate::{Error, Limits};

pub const MAX_ELEMENTS: usize = 64;
/// Largest poset whose ideals, antichains or chains we enumerate.
pub const MAX_ENUMERATION_ELEMENTS: usize = 24;
pub const MAX_LINEAR_EXTENSION_ELEMENTS: usize = 10;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poset {
    labels: Vec<String>,
    /// `(lower, upper)`, sorted.
    covers: Vec<(usize, usize)>,
    below: Vec<ElementSet>,
    above: Vec<ElementSet>,
    lower_covers: Vec<ElementSet>,
    upper_covers: Vec<ElementSet>,
    /// A linear extension, used to drive enumerations.
    topo: Vec<usize>,
}

impl Poset {
    /// Builds a poset from its cover relation. Rejects cycles and covers
    /// implied by other covers.
    pub fn new(labels: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Self, Error> {
        let n = labels.len();
        check_labels(&labels)?;
        let mut covers = covers;
        for &(a, b) in &covers {
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "cover ({a}, {b}) out of range for {n} elements"
                )));
            }
            if a == b {
                return Err(Error::invalid(format!("element {} cannot cover itself", labels[a])));
            }
        }
        covers.sort_unstable();
        if let Some(w) = covers.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!(
                "duplicate cover {} < {}",
                labels[w[0].0], labels[w[0].1]
            )));
        }
        let p = Self::from_closure_inputs(labels, &covers)?;
        if p.covers != covers {
            let (a, b) = *covers
                .iter()
                .find(|c| p.covers.binary_search(c).is_err())
                .expect("some cover was dropped");
            return Err(Error::invalid(format!(
                "cover {} < {} is implied by other covers",
                p.labels[a], p.labels[b]
            )));
        }
        Ok(p)
    }

    /// Builds a poset from any generating set of relations `lower < upper`;
    /// the cover relation is its transitive reduction.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self, Error> {
        check_labels(&labels)?;
        let n = labels.len();
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "relation ({a}, {b}) out of range for {n} elements"
                )));
            }
        }
        Self::from_closure_inputs(labels, relations)
    }

    /// Convenience constructor over labels.
    pub fn from_labeled(labels: &[&str], relations: &[(&str, &str)]) -> Result<Self, Error> {
        let owned: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let find = |l: &str| {
            labels
                .iter()
                .position(|x| *x == l)
                .ok_or_else(|| Error::invalid(format!("unknown label {l}")))
        };
        let rel = relations
            .iter()
            .map(|(a, b)| Ok((find(a)?, find(b)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        Self::from_relations(owned, &rel)
    }

    fn from_closure_inputs(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self, Error> {
        let n = labels.len();
        let mut direct = vec![ElementSet::EMPTY; n];
        for &(a, b) in relations {
            if a == b {
                return Err(Error::invalid(format!(
                    "relation {} < {} is reflexive",
                    labels[a], labels[a]
                )));
            }
            direct[b] = direct[b].with(a);
        }
        // Kahn's algorithm on the relation graph, smallest index first.
        let mut indegree: Vec<usize> = direct.iter().map(|s| s.len()).collect();
        let mut topo = Vec::with_capacity(n);
        let mut placed = ElementSet::EMPTY;
        while topo.len() < n {
            let Some(x) = (0..n).find(|&x| !placed.contains(x) && indegree[x] == 0) else {
                return Err(Error::invalid("order relation has a cycle"));
            };
            placed = placed.with(x);
            topo.push(x);
            for y in 0..n {
                if direct[y].contains(x) {
                    indegree[y] -= 1;
                }
            }
        }
        let mut below = vec![ElementSet::EMPTY; n];
        for &x in &topo {
            below[x] = direct[x]
                .iter()
                .fold(ElementSet::EMPTY, |acc, l| acc.union(below[l]).with(l));
        }
        let mut above = vec![ElementSet::EMPTY; n];
        for (x, b) in below.iter().enumerate() {
            for y in b.iter() {
                above[y] = above[y].with(x);
            }
        }
        let mut lower_covers = vec![ElementSet::EMPTY; n];
        let mut upper_covers = vec![ElementSet::EMPTY; n];
        let mut covers = Vec::new();
        for b in 0..n {
            for a in below[b].iter() {
                // a < b is a cover when nothing sits strictly between.
                if above[a].intersection(below[b]).is_empty() {
                    covers.push((a, b));
                    lower_covers[b] = lower_covers[b].with(a);
                    upper_covers[a] = upper_covers[a].with(b);
                }
            }
        }
        covers.sort_unstable();
        Ok(Poset {
            labels,
            covers,
            below,
            above,
            lower_covers,
            upper_covers,
            topo,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; posets have at least one element.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// `i < j`.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i == j || self.less(i, j) || self.less(j, i)
    }

    /// Elements strictly below `i`.
    pub fn strictly_below(&self, i: usize) -> ElementSet {
        self.below[i]
    }

    /// Elements strictly above `i`.
    pub fn strictly_above(&self, i: usize) -> ElementSet {
        self.above[i]
    }

    pub fn lower_covers(&self, i: usize) -> ElementSet {
        self.lower_covers[i]
    }

    pub fn upper_covers(&self, i: usize) -> ElementSet {
        self.upper_covers[i]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.below[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.above[i].is_empty()).collect()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| self.below[i].union(self.above[i]).with(i) == self.all())
    }

    pub fn is_ideal(&self, s: ElementSet) -> bool {
        s.is_subset(self.all()) && s.iter().all(|x| self.below[x].is_subset(s))
    }

    pub fn is_antichain(&self, s: ElementSet) -> bool {
        s.is_subset(self.all()) && s.iter().all(|x| self.below[x].intersection(s).is_empty())
    }

    /// The smallest ideal containing `s`.
    pub fn down_closure(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(s, |acc, x| acc.union(self.below[x]))
    }

    /// Maximal elements of `s` under the induced order.
    pub fn maximal_of(&self, s: ElementSet) -> ElementSet {
        s.iter().filter(|&x| self.above[x].intersection(s).is_empty()).collect()
    }

    /// Minimal elements of `s` under the induced order.
    pub fn minimal_of(&self, s: ElementSet) -> ElementSet {
        s.iter().filter(|&x| self.below[x].intersection(s).is_empty()).collect()
    }

    /// Whether `s` is connected under "comparable in the poset". The empty
    /// set is not connected.
    pub fn connected_subset(&self, s: ElementSet) -> bool {
        let s = s.intersection(self.all());
        let Some(start) = s.first() else {
            return false;
        };
        let mut reached = ElementSet::singleton(start);
        let mut frontier = reached;
        while !frontier.is_empty() {
            let mut next = ElementSet::EMPTY;
            for x in frontier.iter() {
                next = next.union(self.below[x]).union(self.above[x]);
            }
            frontier = next.intersection(s).difference(reached);
            reached = reached.union(frontier);
        }
        reached == s
    }

    pub fn is_connected(&self) -> bool {
        self.connected_subset(self.all())
    }

    /// All ideals, sorted by bitmask. Includes the empty ideal and the whole
    /// poset.
    pub fn ideals(&self, limits: &Limits) -> Result<Vec<ElementSet>, Error> {
        self.check_enumerable()?;
        let mut out = Vec::new();
        self.ideal_walk(0, ElementSet::EMPTY, limits, &mut out)?;
        out.sort_unstable();
        Ok(out)
    }

    fn ideal_walk(&self, pos: usize, cur: ElementSet, limits: &Limits, out: &mut Vec<ElementSet>) -> Result<(), Error> {
        if pos == self.topo.len() {
            out.push(cur);
            return limits.check_vertices("poset ideals", out.len() as u128);
        }
        let x = self.topo[pos];
        self.ideal_walk(pos + 1, cur, limits, out)?;
        if self.below[x].is_subset(cur) {
            self.ideal_walk(pos + 1, cur.with(x), limits, out)?;
        }
        Ok(())
    }

    /// All antichains, sorted by bitmask. Includes the empty antichain.
    pub fn antichains(&self, limits: &Limits) -> Result<Vec<ElementSet>, Error> {
        self.check_enumerable()?;
        let mut out = Vec::new();
        self.antichain_walk(0, ElementSet::EMPTY, ElementSet::EMPTY, limits, &mut out)?;
        out.sort_unstable();
        Ok(out)
    }

    fn antichain_walk(
        &self,
        i: usize,
        cur: ElementSet,
        blocked: ElementSet,
        limits: &Limits,
        out: &mut Vec<ElementSet>,
    ) -> Result<(), Error> {
        if i == self.len() {
            out.push(cur);
            return limits.check_vertices("poset antichains", out.len() as u128);
        }
        self.antichain_walk(i + 1, cur, blocked, limits, out)?;
        if !blocked.contains(i) {
            let blocked = blocked.union(self.below[i]).union(self.above[i]);
            self.antichain_walk(i + 1, cur.with(i), blocked, limits, out)?;
        }
        Ok(())
    }

    /// Every maximal chain, listed bottom to top. Chains are produced
    /// starting from minimal elements in index order, following upper covers
    /// in index order.
    pub fn maximal_chains(&self, limits: &Limits) -> Result<Vec<Vec<usize>>, Error> {
        self.check_enumerable()?;
        let mut out = Vec::new();
        let mut path = Vec::new();
        for m in self.minimal_elements() {
            path.push(m);
            self.chain_walk(&mut path, limits, &mut out)?;
            path.pop();
        }
        Ok(out)
    }

    fn chain_walk(&self, path: &mut Vec<usize>, limits: &Limits, out: &mut Vec<Vec<usize>>) -> Result<(), Error> {
        let top = *path.last().expect("path is nonempty");
        if self.upper_covers[top].is_empty() {
            out.push(path.clone());
            return limits.check_vertices("maximal chains", out.len() as u128);
        }
        for next in self.upper_covers[top].iter() {
            path.push(next);
            self.chain_walk(path, limits, out)?;
            path.pop();
        }
        Ok(())
    }

    fn check_enumerable(&self) -> Result<(), Error> {
        guard("poset size", self.len() as u128, MAX_ENUMERATION_ELEMENTS as u128)
    }

    /// Number of linear extensions.
    pub fn count_linear_extensions(&self) -> Result<u64, Error> {
        guard(
            "poset size for linear extensions",
            self.len() as u128,
            MAX_LINEAR_EXTENSION_ELEMENTS as u128,
        )?;
        // memo[ideal] = ways to finish once `ideal` has been placed.
        let mut memo = vec![u64::MAX; 1 << self.len()];
        Ok(self.extensions_from(ElementSet::EMPTY, &mut memo))
    }

    fn extensions_from(&self, placed: ElementSet, memo: &mut [u64]) -> u64 {
        if placed == self.all() {
            return 1;
        }
        let key = placed.bits() as usize;
        if memo[key] != u64::MAX {
            return memo[key];
        }
        let total = (0..self.len())
            .filter(|&x| !placed.contains(x) && self.below[x].is_subset(placed))
            .map(|x| self.extensions_from(placed.with(x), memo))
            .sum();
        memo[key] = total;
        total
    }

    /// Same order, new labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Poset, Error> {
        if labels.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: labels.len(),
            });
        }
        check_labels(&labels)?;
        Ok(Poset { labels, ..self.clone() })
    }

    /// The subposet on `s`, with the map from its indices back to ours.
    pub fn induced(&self, s: ElementSet) -> Result<(Poset, Vec<usize>), Error> {
        let keep: Vec<usize> = s.intersection(self.all()).iter().collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut relations = Vec::new();
        for (a, &x) in keep.iter().enumerate() {
            for (b, &y) in keep.iter().enumerate() {
                if self.less(x, y) {
                    relations.push((a, b));
                }
            }
        }
        Ok((Poset::from_relations(labels, &relations)?, keep))
    }

    /// Every element has at most one lower and at most one upper cover.
    pub fn is_disjoint_chains(&self) -> bool {
        (0..self.len()).all(|i| self.lower_covers[i].len() <= 1 && self.upper_covers[i].len() <= 1)
    }

    /// Connected, one maximal element, and every other element sits under
    /// exactly one parent while parents have exactly two children.
    pub fn is_binary_tree(&self) -> bool {
        self.is_connected()
            && self.maximal_elements().len() == 1
            && (0..self.len()).all(|i| self.upper_covers[i].len() <= 1 && matches!(self.lower_covers[i].len(), 0 | 2))
    }

    /// Connected fence: the Hasse diagram is a path and every element is
    /// minimal or maximal.
    pub fn is_zigzag(&self) -> bool {
        self.is_connected()
            && self.covers.len() + 1 == self.len()
            && (0..self.len()).all(|i| {
                let (lo, up) = (self.lower_covers[i].len(), self.upper_covers[i].len());
                lo + up <= 2 && (lo == 0 || up == 0)
            })
    }
}

fn check_labels(labels: &[String]) -> Result<(), Error> {
    if labels.is_empty() {
        return Err(Error::invalid("a poset needs at least one element"));
    }
    if labels.len() > MAX_ELEMENTS {
        return Err(Error::invalid(format!("at most {MAX_ELEMENTS} elements are supported")));
    }
    for (i, l) in labels.iter().enumerate() {
        if !is_identifier(l) {
            return Err(Error::invalid(format!("label {l:?} is not an identifier")));
        }
        if labels[..i].contains(l) {
            return Err(Error::invalid(format!("duplicate label {l}")));
        }
    }
    Ok(())
}

/// ASCII identifier: a letter or underscore, then letters, digits or underscores.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Labels `x1, …, xn`.
pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain2() -> Poset {
        Poset::from_labeled(&["a", "b"], &[]).unwrap()
    }

    fn chain2() -> Poset {
        Poset::from_labeled(&["a", "b"], &[("a", "b")]).unwrap()
    }

    fn vee() -> Poset {
        Poset::from_labeled(&["a", "b", "c"], &[("c", "a"), ("c", "b")]).unwrap()
    }

    fn sets(xs: &[&[usize]]) -> Vec<ElementSet> {
        xs.iter().map(|s| ElementSet::from_indices(s.iter().copied())).collect()
    }

    #[test]
    fn ideals_of_small_posets() {
        let lim = Limits::default();
        assert_eq!(antichain2().ideals(&lim).unwrap(), sets(&[&[], &[0], &[1], &[0, 1]]));
        assert_eq!(chain2().ideals(&lim).unwrap(), sets(&[&[], &[0], &[0, 1]]));
        assert_eq!(vee().ideals(&lim).unwrap().len(), 5);
    }

    #[test]
    fn antichains_of_small_posets() {
        let lim = Limits::default();
        assert_eq!(chain2().antichains(&lim).unwrap(), sets(&[&[], &[0], &[1]]));
        assert_eq!(antichain2().antichains(&lim).unwrap().len(), 4);
        assert_eq!(vee().antichains(&lim).unwrap(), sets(&[&[], &[0], &[1], &[0, 1], &[2]]));
    }

    #[test]
    fn chains() {
        let lim = Limits::default();
        assert_eq!(chain2().maximal_chains(&lim).unwrap(), vec![vec![0, 1]]);
        assert_eq!(vee().maximal_chains(&lim).unwrap(), vec![vec![2, 0], vec![2, 1]]);
        let three = Poset::from_labeled(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(three.maximal_chains(&lim).unwrap(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn connectivity() {
        let ab = ElementSet::from_indices([0, 1]);
        assert!(!antichain2().connected_subset(ab));
        assert!(chain2().connected_subset(ab));
        assert!(!vee().connected_subset(ab));
        assert!(vee().connected_subset(ElementSet::full(3)));
        assert!(!vee().connected_subset(ElementSet::EMPTY));
        assert!(vee().connected_subset(ElementSet::singleton(1)));
    }

    #[test]
    fn linear_extensions() {
        let chain5 = disjoint_chains(&[5]).unwrap();
        assert_eq!(chain5.count_linear_extensions().unwrap(), 1);
        assert_eq!(antichain2().count_linear_extensions().unwrap(), 2);
        assert_eq!(vee().count_linear_extensions().unwrap(), 2);
        assert_eq!(
            disjoint_chains(&[1, 1, 1, 1])
                .unwrap()
                .count_linear_extensions()
                .unwrap(),
            24
        );
        assert!(disjoint_chains(&[11]).unwrap().count_linear_extensions().is_err());
    }

    #[test]
    fn rejects_bad_covers() {
        let l = default_labels(3);
        assert!(Poset::new(l.clone(), vec![(0, 1), (1, 0)]).is_err());
        assert!(Poset::new(l.clone(), vec![(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(Poset::new(l.clone(), vec![(0, 0)]).is_err());
        assert!(Poset::new(l.clone(), vec![(0, 1), (0, 1)]).is_err());
        assert!(Poset::new(l.clone(), vec![(0, 3)]).is_err());
        assert!(Poset::new(l, vec![(0, 1), (1, 2)]).is_ok());
        assert!(Poset::new(Vec::new(), Vec::new()).is_err());
        assert!(Poset::new(vec!["a".into(), "a".into()], Vec::new()).is_err());
        assert!(Poset::new(vec!["1a".into()], Vec::new()).is_err());
    }

    #[test]
    fn relations_reduce_to_covers() {
        let p = Poset::from_relations(default_labels(3), &[(0, 1), (1, 2), (0, 2), (0, 1)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.less(0, 2));
        assert!(p.is_chain());
        assert!(Poset::from_relations(default_labels(2), &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn induced_subposet_keeps_order() {
        let p = disjoint_chains(&[3]).unwrap();
        let (q, map) = p.induced(ElementSet::from_indices([0, 2])).unwrap();
        assert_eq!(map, vec![0, 2]);
        assert_eq!(q.covers(), &[(0, 1)]);
        assert_eq!(q.labels(), &["x1", "x3"]);
    }

    #[test]
    fn guards() {
        let big = disjoint_chains(&[1; 25]).unwrap();
        assert!(matches!(
            big.ideals(&Limits::default()),
            Err(Error::GuardExceeded { .. })
        ));
        let wide = disjoint_chains(&[1; 17]).unwrap();
        assert!(matches!(
            wide.antichains(&Limits::default()),
            Err(Error::GuardExceeded { .. })
        ));
        let tight = Limits {
            max_vertices: 3,
            ..Limits::default()
        };
        assert!(vee().ideals(&tight).is_err());
    }

    #[test]
    fn family_recognition() {
        assert!(disjoint_chains(&[3, 1]).unwrap().is_disjoint_chains());
        assert!(!vee().is_disjoint_chains());
        assert!(vee().is_zigzag());
        assert!(!vee().is_binary_tree());
        let lambda = Poset::from_labeled(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
        assert!(lambda.is_binary_tree());
        assert!(lambda.is_zigzag());
        assert!(!disjoint_chains(&[3]).unwrap().is_zigzag());
        assert!(!antichain2().is_zigzag());
    }
}
