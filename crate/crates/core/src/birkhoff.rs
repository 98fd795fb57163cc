//! Birkhoff polytopes: permutation-matrix vertices, the cycle rule for
//! edges, an exhaustive search for separating hyperplanes on small `n`, and
//! the exchange identities that rule them out in general.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactmath::strict_feasibility;
use crate::limits::guard;
use crate::polymodel::{Hyperplane, SkeletonModel};
use crate::{Error, RatVector, Rational};

pub const MAX_SKELETON_N: usize = 6;
pub const MAX_SEARCH_N: usize = 4;
const MAX_PERMUTATION_N: usize = 64;

/// A permutation of `{1, …, n}`, stored 0-based: `image[i]` is the image of
/// `i + 1`, minus one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(values: &[usize]) -> Result<Self, Error> {
        let n = values.len();
        if n == 0 || n > MAX_PERMUTATION_N {
            return Err(Error::invalid(format!(
                "permutation size must be in 1..={MAX_PERMUTATION_N}"
            )));
        }
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &v in values {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::invalid(format!("{values:?} is not a permutation of 1..={n}")));
            }
            seen[v - 1] = true;
            image.push(v - 1);
        }
        Ok(Permutation { image })
    }

    /// From 1-based disjoint cycles on `{1, …, n}`.
    pub fn from_cycles(cycles: &[Vec<usize>], n: usize) -> Result<Self, Error> {
        if n == 0 || n > MAX_PERMUTATION_N {
            return Err(Error::invalid(format!(
                "permutation size must be in 1..={MAX_PERMUTATION_N}"
            )));
        }
        let mut image: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::invalid(format!("cycle entry {x} outside 1..={n}")));
                }
                if used[x - 1] {
                    return Err(Error::invalid(format!("{x} appears twice in the cycles")));
                }
                used[x - 1] = true;
                image[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { image })
    }

    /// Parses one-line notation (`2143`, or `2,1,4,3` when entries exceed 9)
    /// or cycle notation (`(123)(45)`, or `(1,2,10)`). Cycle notation needs
    /// `n`; without it the largest entry is used.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self, Error> {
        let s = s.trim();
        let p = if s.starts_with('(') {
            let cycles = parse_cycles(s)?;
            let largest = cycles.iter().flatten().copied().max().unwrap_or(1);
            Self::from_cycles(&cycles, n.unwrap_or(largest))?
        } else {
            Self::from_one_line(&parse_entries(s)?)?
        };
        match n {
            Some(n) if n != p.len() => Err(Error::invalid(format!(
                "permutation {s} acts on {} points, expected {n}",
                p.len()
            ))),
            _ => Ok(p),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "permutations of different sizes");
        Permutation {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x] = i;
        }
        Permutation { image }
    }

    /// Cycles of length at least 2, 1-based, each starting at its smallest
    /// entry, ordered by that entry.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return String::from("()");
        }
        let wide = self.len() > 9;
        cycles
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(|x| format!("{x}")).collect();
                format!("({})", parts.join(if wide { "," } else { "" }))
            })
            .collect()
    }
}

impl fmt::Display for Permutation {
    /// One-line notation; entries are comma-separated once `n > 9`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() > 9 { "," } else { "" };
        for (k, x) in self.one_line().iter().enumerate() {
            if k > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn parse_entries(s: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::Parse(format!("bad permutation entry in {s:?}"));
    if s.contains(',') || s.contains(char::is_whitespace) {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect()
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>, Error> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')').map(|end| (&r[..end], &r[end + 1..])))
            .ok_or_else(|| Error::Parse(format!("bad cycle notation {s:?}")))?;
        let entries = if body.0.trim().is_empty() {
            Vec::new()
        } else {
            parse_entries(body.0.trim())?
        };
        if !entries.is_empty() {
            out.push(entries);
        }
        rest = body.1.trim_start();
    }
    Ok(out)
}

/// All permutations of `{1, …, n}` in lexicographic one-line order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation { image: cur.clone() }];
    // Standard next-permutation step.
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| cur[j] > cur[i - 1])
            .expect("a larger entry exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation { image: cur.clone() });
    }
}

/// The permutation matrix of `w` as a row-major `n²` vector: entry
/// `(i, w(i))` is 1.
pub fn perm_vertex(w: &Permutation) -> RatVector {
    let n = w.len();
    let mut v = vec![Rational::zero(); n * n];
    for (i, &j) in w.image.iter().enumerate() {
        v[i * n + j] = Rational::one();
    }
    RatVector::new(v).expect("n >= 1")
}

/// Number of cycles of length at least 2.
pub fn nontrivial_cycle_count(w: &Permutation) -> usize {
    w.cycles().len()
}

/// Whether `w` and `u` span an edge of the Birkhoff polytope: `w⁻¹u` is a
/// single cycle apart from fixed points.
pub fn birkhoff_adjacent(w: &Permutation, u: &Permutation) -> bool {
    nontrivial_cycle_count(&w.inverse().compose(u)) == 1
}

/// The skeleton of `B_n`: `n!` permutation matrices in lexicographic order,
/// edges by the cycle rule.
pub fn birkhoff_skeleton(n: usize) -> Result<SkeletonModel, Error> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    guard("Birkhoff n", n as u128, MAX_SKELETON_N as u128)?;
    let perms = all_permutations(n);
    let inverses: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
    let mut edges = Vec::new();
    for (i, inverse) in inverses.iter().enumerate() {
        for (j, u) in perms.iter().enumerate().skip(i + 1) {
            if nontrivial_cycle_count(&inverse.compose(u)) == 1 {
                edges.push((i, j));
            }
        }
    }
    let vertices = perms.iter().map(perm_vertex).collect();
    Ok(SkeletonModel::from_trusted(vertices, edges, (n - 1) * (n - 1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub n: usize,
    /// Sign patterns `(S⁺, S⁻)` with no edge between the two sides.
    pub patterns_checked: usize,
    /// A separating hyperplane `c·x = r`, if any pattern is realizable.
    pub witness: Option<Hyperplane>,
}

/// Decides whether `B_n` has a separating hyperplane, for `n ≤ 4`.
///
/// A separating hyperplane gives a vertex sign pattern with both strict sides
/// nonempty and no edge between them; conversely every such pattern that some
/// `(c, r)` realizes exactly is a separating hyperplane. Any vertex of `S⁻`
/// is a non-neighbour of all of `S⁺`, so with `u` the first vertex of `S⁻`,
/// `S⁺` lies in the non-neighbourhood of `u` and `S⁻ ∖ {u}` in the common
/// non-neighbourhood of `S⁺` beyond `u`. Each pattern is tested once with
/// exact strict feasibility in the unknowns `(c, r)`.
pub fn search_separating(n: usize) -> Result<SearchOutcome, Error> {
    if !(2..=MAX_SEARCH_N).contains(&n) {
        return Err(Error::invalid(format!(
            "exhaustive search needs 2 <= n <= {MAX_SEARCH_N}"
        )));
    }
    let model = birkhoff_skeleton(n)?;
    let count = model.vertex_count();
    let mut non_adjacent = vec![0u64; count];
    for (i, row) in non_adjacent.iter_mut().enumerate() {
        for j in 0..count {
            if i != j && !model.is_edge(i.min(j), i.max(j)) {
                *row |= 1 << j;
            }
        }
    }
    let lifted: Vec<RatVector> = model
        .vertices()
        .iter()
        .map(|v| v.extended(Rational::from_integer(-1)))
        .collect();

    let mut seen = BTreeSet::new();
    let mut checked = 0;
    for u in 0..count {
        let candidates: Vec<usize> = bits(non_adjacent[u]).collect();
        for mask in 1u64..1 << candidates.len() {
            let plus: u64 = bits(mask).map(|k| 1u64 << candidates[k]).fold(0, |a, b| a | b);
            let common = bits(plus).fold(u64::MAX, |acc, w| acc & non_adjacent[w]);
            let beyond: Vec<usize> = bits(common).filter(|&w| w > u).collect();
            for extra in 0u64..1 << beyond.len() {
                let minus = bits(extra).fold(1u64 << u, |acc, k| acc | 1 << beyond[k]);
                if !seen.insert((plus, minus)) {
                    continue;
                }
                checked += 1;
                let pick = |set: u64| bits(set).map(|k| lifted[k].clone()).collect::<Vec<_>>();
                let rest = !(plus | minus) & ((1u64 << count) - 1);
                if let Some(c) = strict_feasibility(&pick(plus), &pick(minus), &pick(rest))? {
                    let mut entries = c.into_entries();
                    let r = entries.pop().expect("lifted dimension");
                    let h = Hyperplane::new(RatVector::new(entries)?, r)?;
                    return Ok(SearchOutcome {
                        n,
                        patterns_checked: checked,
                        witness: Some(h),
                    });
                }
            }
        }
    }
    Ok(SearchOutcome {
        n,
        patterns_checked: checked,
        witness: None,
    })
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}

/// Whether two families of permutations have equal vertex sums.
pub fn vertex_sums_equal(lhs: &[Permutation], rhs: &[Permutation]) -> Result<bool, Error> {
    let sum = |ps: &[Permutation]| -> Result<Option<RatVector>, Error> {
        let mut acc: Option<RatVector> = None;
        for p in ps {
            let v = perm_vertex(p);
            acc = Some(match acc {
                None => v,
                Some(a) => a.add(&v)?,
            });
        }
        Ok(acc)
    };
    Ok(sum(lhs)? == sum(rhs)?)
}

/// The two vertex identities on `S_4` behind the `B_4` case:
/// `2143 + 3412 = 2413 + 3142` and `(13)(24) + (14)(23) = (1324) + (1423)`.
pub fn exchange_identities() -> bool {
    let p = |s: &str| Permutation::parse(s, Some(4)).expect("literal permutation");
    let first = vertex_sums_equal(&[p("2143"), p("3412")], &[p("2413"), p("3142")]);
    let second = vertex_sums_equal(&[p("(13)(24)"), p("(14)(23)")], &[p("(1324)"), p("(1423)")]);
    matches!((first, second), (Ok(true), Ok(true)))
}

/// The exchange construction for a permutation `v` with two cycles of
/// length at least 3, and the checks that make it rule out a negative value
/// at `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeCertificate {
    pub v: Permutation,
    /// Symbols `1, 2, 5` (first chosen cycle) and `3, 4, 6` (second) paired
    /// with the entries of `v` they stand for.
    pub relabeling: Vec<(usize, usize)>,
    pub tau: [Permutation; 3],
    pub sigma: [Permutation; 3],
    /// `x_v + x_τ1 = x_τ2 + x_τ3`.
    pub tau_identity: bool,
    /// `x_τ1 + x_σ1 = x_σ2 + x_σ3`.
    pub sigma_identity: bool,
    /// `τ2` and `τ3` are adjacent to `v`.
    pub tau_adjacent: bool,
    /// `τ2, τ3, σ2, σ3` have fewer nontrivial cycles than `v`.
    pub fewer_cycles: bool,
    /// `σ2` and `σ3` are adjacent to `v`.
    pub sigma_adjacent: bool,
}

impl ExchangeCertificate {
    /// The four checks the construction needs: both identities, adjacency of
    /// `τ2, τ3`, and the drop in cycle count.
    pub fn passed(&self) -> bool {
        self.tau_identity && self.sigma_identity && self.tau_adjacent && self.fewer_cycles
    }
}

/// Builds and checks the exchange construction. The first two cycles of `v`
/// of length at least 3 play the roles `(1 2 5 A)` and `(3 4 6 B)`; the
/// remaining nontrivial cycles are carried along unchanged.
pub fn exchange_certificate(v: &Permutation) -> Result<ExchangeCertificate, Error> {
    let cycles = v.cycles();
    let mut long = cycles.iter().filter(|c| c.len() >= 3);
    let (Some(c1), Some(c2)) = (long.next(), long.next()) else {
        return Err(Error::Unsupported(format!(
            "{} needs two cycles of length at least 3",
            v.cycle_string()
        )));
    };
    let others: Vec<Vec<usize>> = cycles.iter().filter(|c| *c != c1 && *c != c2).cloned().collect();
    let (a, b) = (&c1[3..], &c2[3..]);
    let (s1, s2, s5) = (c1[0], c1[1], c1[2]);
    let (s3, s4, s6) = (c2[0], c2[1], c2[2]);
    let n = v.len();

    let build = |parts: &[Vec<usize>]| -> Result<Permutation, Error> {
        let mut all: Vec<Vec<usize>> = parts.to_vec();
        all.extend(others.iter().cloned());
        Permutation::from_cycles(&all, n)
    };
    let cat = |pieces: &[&[usize]]| -> Vec<usize> { pieces.concat() };

    let c325a = cat(&[&[s3, s2, s5], a]);
    let c146b = cat(&[&[s1, s4, s6], b]);
    let tau1 = build(&[c325a.clone(), c146b.clone()])?;
    let tau2 = build(&[cat(&[&[s1, s2, s5], a, &[s3, s4, s6], b])])?;
    let tau3 = build(&[cat(&[&[s3, s2, s5], a, &[s1, s4, s6], b])])?;
    let sigma1 = build(&[])?;
    let sigma2 = build(&[c325a])?;
    let sigma3 = build(&[c146b])?;

    let k = nontrivial_cycle_count(v);
    let tau_identity = vertex_sums_equal(&[v.clone(), tau1.clone()], &[tau2.clone(), tau3.clone()])?;
    let sigma_identity = vertex_sums_equal(&[tau1.clone(), sigma1.clone()], &[sigma2.clone(), sigma3.clone()])?;
    let tau_adjacent = birkhoff_adjacent(v, &tau2) && birkhoff_adjacent(v, &tau3);
    let fewer_cycles = [&tau2, &tau3, &sigma2, &sigma3]
        .iter()
        .all(|w| nontrivial_cycle_count(w) < k);
    let sigma_adjacent = birkhoff_adjacent(v, &sigma2) && birkhoff_adjacent(v, &sigma3);

    Ok(ExchangeCertificate {
        v: v.clone(),
        relabeling: vec![(1, s1), (2, s2), (5, s5), (3, s3), (4, s4), (6, s6)],
        tau: [tau1, tau2, tau3],
        sigma: [sigma1, sigma2, sigma3],
        tau_identity,
        sigma_identity,
        tau_adjacent,
        fewer_cycles,
        sigma_adjacent,
    })
}
