//! Subsets of `[v] = {1, …, v}`, colexicographic ranking, and binomial
//! coefficients.
//!
//! Every matrix in this crate indexes its rows and columns by k-subsets of a
//! ground set through the colexicographic rank, so these routines fix the
//! global indexing contract once and for all.

use crate::error::{Error, Result};

/// `C(v, k)`, extended by zero: returns 0 when `k < 0` or `k > v`.
///
/// The zero extension is load-bearing — several coefficient sums rely on
/// out-of-range binomials vanishing.
pub fn binomial(v: usize, k: i64) -> u128 {
    if k < 0 || k as usize > v {
        return 0;
    }
    let k = (k as usize).min(v - k as usize);
    let mut result: u128 = 1;
    for i in 1..=k {
        // Exact at every step: result * (v-k+i) is divisible by i.
        result = result * (v - k + i) as u128 / i as u128;
    }
    result
}

/// `C(top, bottom)` where both arguments may be negative: zero unless
/// `0 <= bottom <= top`.
pub fn binomial_signed(top: i64, bottom: i64) -> u128 {
    if top < 0 || bottom < 0 || bottom > top {
        0
    } else {
        binomial(top as usize, bottom)
    }
}

/// A k-element subset of the ground set `[v] = {1, …, v}`.
///
/// Elements are kept strictly increasing; the canonical dense index of a
/// subset is its colexicographic rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KSubset {
    v: usize,
    elements: Vec<usize>,
}

impl KSubset {
    /// Build a subset, validating that elements are strictly increasing and
    /// within `[1, v]`.
    pub fn new(v: usize, elements: Vec<usize>) -> Result<KSubset> {
        for w in elements.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidParameters(format!(
                    "subset elements must be strictly increasing, got {:?}",
                    elements
                )));
            }
        }
        if let Some(&first) = elements.first() {
            if first < 1 {
                return Err(Error::InvalidParameters(
                    "subset elements are 1-based".into(),
                ));
            }
        }
        if let Some(&last) = elements.last() {
            if last > v {
                return Err(Error::InvalidParameters(format!(
                    "element {} exceeds ground set [{}]",
                    last, v
                )));
            }
        }
        Ok(KSubset { v, elements })
    }

    /// The first subset in colex order: `{1, …, k}`.
    pub fn first(v: usize, k: usize) -> KSubset {
        KSubset {
            v,
            elements: (1..=k).collect(),
        }
    }

    pub fn ground_set(&self) -> usize {
        self.v
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }

    /// Complement within the ground set.
    pub fn complement(&self) -> KSubset {
        let elements = (1..=self.v).filter(|e| !self.contains(*e)).collect();
        KSubset {
            v: self.v,
            elements,
        }
    }

    /// Colexicographic rank: `sum_t C(e_t - 1, t)` over the sorted elements.
    pub fn rank(&self) -> usize {
        self.elements
            .iter()
            .enumerate()
            .map(|(t, &e)| binomial(e - 1, (t + 1) as i64))
            .sum::<u128>() as usize
    }

    /// Inverse of [`KSubset::rank`] for given `(v, k)`.
    pub fn unrank(v: usize, k: usize, index: usize) -> Result<KSubset> {
        let total = binomial(v, k as i64);
        if (index as u128) >= total {
            return Err(Error::IndexOutOfRange {
                what: "subset rank",
                index,
                bound: total as usize,
            });
        }
        let mut rest = index as u128;
        let mut elements = vec![0usize; k];
        let mut upper = v;
        for t in (1..=k).rev() {
            // Largest e with C(e-1, t) <= rest; e >= t always works since C(t-1, t) = 0.
            let mut e = t;
            for cand in (t..=upper).rev() {
                if binomial(cand - 1, t as i64) <= rest {
                    e = cand;
                    break;
                }
            }
            rest -= binomial(e - 1, t as i64);
            elements[t - 1] = e;
            upper = e - 1;
        }
        debug_assert_eq!(rest, 0);
        Ok(KSubset { v, elements })
    }

    /// `|self ∩ other|`; errors when the ground sets differ.
    pub fn intersection_size(&self, other: &KSubset) -> Result<usize> {
        if self.v != other.v {
            return Err(Error::GroundSetMismatch(self.v, other.v));
        }
        Ok(self.intersection_size_unchecked(other))
    }

    pub(crate) fn intersection_size_unchecked(&self, other: &KSubset) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.elements.len() && j < other.elements.len() {
            match self.elements[i].cmp(&other.elements[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// Elements of `self` not in `other` (same ground set assumed).
    pub fn difference(&self, other: &KSubset) -> Vec<usize> {
        self.elements
            .iter()
            .copied()
            .filter(|e| !other.contains(*e))
            .collect()
    }
}

impl std::fmt::Debug for KSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, "}}")
    }
}

/// All k-subsets of `[v]` in colexicographic order.
pub fn enumerate_subsets(v: usize, k: usize) -> Vec<KSubset> {
    let count = binomial(v, k as i64) as usize;
    (0..count)
        .map(|r| KSubset::unrank(v, k, r).expect("rank in range"))
        .collect()
}
