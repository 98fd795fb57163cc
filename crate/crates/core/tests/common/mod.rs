#![allow(dead_code)]

use polycut_core::{ElementSet, Poset};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A strict order kept as raw bitmasks, independent of `Poset`:
/// `below[j]` holds every `i` with `i < j`.
#[derive(Clone, Debug)]
pub struct RawOrder {
    pub n: usize,
    pub below: Vec<u64>,
}

impl RawOrder {
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.below[j] >> i & 1 == 1
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    pub fn poset(&self) -> Poset {
        let pairs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|j| {
                (0..self.n)
                    .filter(move |&i| self.below[j] >> i & 1 == 1)
                    .map(move |i| (i, j))
            })
            .collect();
        let labels = (1..=self.n).map(|i| format!("x{i}")).collect();
        Poset::from_relations(labels, &pairs).expect("valid strict order")
    }

    /// Down-closed subsets, by checking every subset.
    pub fn ideals(&self) -> Vec<u64> {
        (0u64..1 << self.n)
            .filter(|&s| (0..self.n).all(|j| s >> j & 1 == 0 || self.below[j] & !s == 0))
            .collect()
    }

    /// Pairwise incomparable subsets, by checking every subset.
    pub fn antichains(&self) -> Vec<u64> {
        (0u64..1 << self.n)
            .filter(|&s| (0..self.n).all(|j| s >> j & 1 == 0 || self.below[j] & s == 0))
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.comparable(i, j)))
    }
}

/// Every strict partial order on `{0, …, n-1}`, found by testing each
/// relation on ordered pairs for irreflexivity, antisymmetry and
/// transitivity.
pub fn all_orders(n: usize) -> Vec<RawOrder> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut below = vec![0u64; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                below[j] |= 1 << i;
            }
        }
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| !(below[j] >> i & 1 == 1 && below[i] >> j & 1 == 1)));
        // i < j < k must give i < k: below[k] contains below[j] for j < k.
        let transitive = (0..n).all(|k| {
            (0..n)
                .filter(|&j| below[k] >> j & 1 == 1)
                .all(|j| below[j] & !below[k] == 0)
        });
        if antisymmetric && transitive {
            out.push(RawOrder { n, below });
        }
    }
    out
}

/// The poset corpus: every labeled poset on 1 to 4 elements, then `sample`
/// labeled posets on 5 elements drawn with a fixed seed.
pub fn corpus(sample: usize) -> Vec<RawOrder> {
    let mut out: Vec<RawOrder> = (1..=4).flat_map(all_orders).collect();
    let mut five = all_orders(5);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    five.shuffle(&mut rng);
    out.extend(five.into_iter().take(sample));
    out
}

pub fn set(bits: u64) -> ElementSet {
    ElementSet::from_bits(bits)
}

/// Every vector in `{-r, …, r}^d`.
pub fn grid(d: usize, r: i64) -> Vec<Vec<i64>> {
    let side = (2 * r + 1) as usize;
    (0..side.pow(d as u32))
        .map(|mut code| {
            (0..d)
                .map(|_| {
                    let digit = (code % side) as i64 - r;
                    code /= side;
                    digit
                })
                .collect()
        })
        .collect()
}

/// Connected components of the graph on `set` whose edges are the cover
/// relations with both ends in `set`.
pub fn hasse_connected(p: &Poset, set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let mut seen = set & set.wrapping_neg();
    loop {
        let mut grown = seen;
        for &(a, b) in p.covers() {
            let (ma, mb) = (1u64 << a, 1u64 << b);
            if set & ma != 0 && set & mb != 0 && (seen & ma != 0 || seen & mb != 0) {
                grown |= ma | mb;
            }
        }
        if grown == seen {
            return seen == set;
        }
        seen = grown;
    }
}

/// A random strict order on `n` elements: each index pair `i < j` is
/// related with probability `density` under a random relabeling, then
/// closed under transitivity.
pub fn random_order(rng: &mut impl rand::Rng, n: usize, density: f64) -> RawOrder {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut below = vec![0u64; n];
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(density) {
                below[perm[j]] |= 1 << perm[i];
            }
        }
    }
    // Elements in increasing original index form a topological order, so one
    // pass in that order closes the relation.
    for &j in &perm {
        let mut acc = below[j];
        for i in 0..n {
            if below[j] >> i & 1 == 1 {
                acc |= below[i];
            }
        }
        below[j] = acc;
    }
    RawOrder { n, below }
}
