/// Resource guards for the enumerations that grow exponentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex set an enumeration may materialize (ideals, antichains).
    pub max_vertices: u128,
    /// Largest number of vertex subsets the cut enumeration oracle may visit.
    pub max_candidates: u128,
}

impl Limits {
    pub const DEFAULT_MAX_VERTICES: u128 = 1 << 16;
    pub const DEFAULT_MAX_CANDIDATES: u128 = 1 << 16;

    pub(crate) fn check_vertices(&self, what: &'static str, requested: u128) -> Result<(), crate::Error> {
        guard(what, requested, self.max_vertices)
    }

    pub(crate) fn check_candidates(&self, what: &'static str, requested: u128) -> Result<(), crate::Error> {
        guard(what, requested, self.max_candidates)
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: Self::DEFAULT_MAX_VERTICES,
            max_candidates: Self::DEFAULT_MAX_CANDIDATES,
        }
    }
}

pub(crate) fn guard(what: &'static str, requested: u128, limit: u128) -> Result<(), crate::Error> {
    if requested > limit {
        Err(crate::Error::GuardExceeded { what, requested, limit })
    } else {
        Ok(())
    }
}

/// `n choose k`, saturating at `u128::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
