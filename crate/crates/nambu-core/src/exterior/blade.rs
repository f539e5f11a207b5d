use crate::context::Context;
use crate::error::{Error, Result};

/// Wedge of distinct coordinate axes, stored as strictly increasing
/// 1-based indices. Ordering is lexicographic on the index list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(Vec<usize>);

/// Number of pairs `(a, b)` with `a` from the first sorted list, `b` from
/// the second, and `a > b`; the parity is the sign of sorting the
/// concatenation.
fn inversions_between(a: &[usize], b: &[usize]) -> usize {
    let mut count = 0;
    for &x in a {
        count += b.iter().take_while(|&&y| y < x).count();
    }
    count
}

fn parity_sign(inversions: usize) -> i32 {
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Blade {
    /// Scalar blade (degree 0).
    pub fn scalar() -> Blade {
        Blade(Vec::new())
    }

    /// Validated constructor: strictly increasing indices within the chart.
    pub fn new(ctx: &Context, indices: &[usize]) -> Result<Blade> {
        for (k, &i) in indices.iter().enumerate() {
            ctx.check_index(i)?;
            if k > 0 && indices[k - 1] >= i {
                return Err(Error::Degree(format!(
                    "blade indices must be strictly increasing, got {indices:?}"
                )));
            }
        }
        Ok(Blade(indices.to_vec()))
    }

    pub(crate) fn from_sorted(indices: Vec<usize>) -> Blade {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Blade(indices)
    }

    /// Sorts arbitrary distinct indices into a blade with the permutation
    /// sign; `None` when an index repeats.
    pub fn normalize(indices: &[usize]) -> Option<(i32, Blade)> {
        let mut sorted = indices.to_vec();
        let mut sign = 1;
        // insertion sort, counting swaps
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, Blade(sorted)))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    /// Exterior product of disjoint blades with the merge sign;
    /// `None` when an index repeats.
    pub fn wedge(&self, other: &Blade) -> Option<(i32, Blade)> {
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    merged.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    merged.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        merged.extend_from_slice(&self.0[i..]);
        merged.extend_from_slice(&other.0[j..]);
        let sign = parity_sign(inversions_between(&self.0, &other.0));
        Some((sign, Blade(merged)))
    }

    /// Removes the sub-blade `sub`, with the sign of sorting
    /// `(sub, self \ sub)` back into `self`; `None` when `sub ⊄ self`.
    pub fn remove(&self, sub: &Blade) -> Option<(i32, Blade)> {
        let mut rest = Vec::with_capacity(self.0.len().saturating_sub(sub.0.len()));
        let mut it = sub.0.iter().peekable();
        for &i in &self.0 {
            match it.peek() {
                Some(&&s) if s == i => {
                    it.next();
                }
                _ => rest.push(i),
            }
        }
        if it.peek().is_some() {
            return None;
        }
        let sign = parity_sign(inversions_between(&sub.0, &rest));
        Some((sign, Blade(rest)))
    }

    /// Complementary blade in an `n`-dimensional chart, with the sign of
    /// the permutation `(self, complement)`.
    pub fn complement(&self, n: usize) -> (i32, Blade) {
        let mut comp = Vec::with_capacity(n - self.0.len());
        let mut it = self.0.iter().peekable();
        for i in 1..=n {
            match it.peek() {
                Some(&&s) if s == i => {
                    it.next();
                }
                _ => comp.push(i),
            }
        }
        let sign = parity_sign(inversions_between(&self.0, &comp));
        (sign, Blade(comp))
    }

    /// All degree-`k` blades of an `n`-dimensional chart, ascending.
    pub fn enumerate(n: usize, k: usize) -> Vec<Blade> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut current: Vec<usize> = (1..=k).collect();
        loop {
            out.push(Blade(current.clone()));
            // advance the combination
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if current[i] < n - (k - 1 - i) {
                    current[i] += 1;
                    for j in i + 1..k {
                        current[j] = current[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}
