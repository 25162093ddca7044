use std::fmt;

/// A set of criteria encoded as a bitmask over 0-based criterion indices.
///
/// Displayed 1-based (`{1,3}`) to match the usual notation for criteria.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

/// Largest number of criteria a [`Subset`] can address.
pub const MAX_SUBSET_CRITERIA: usize = 64;

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All criteria `0..n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_SUBSET_CRITERIA, "subset over {n} criteria");
        if n == MAX_SUBSET_CRITERIA {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1u64 << i)
    }

    pub fn pair(i: usize, j: usize) -> Self {
        Subset((1u64 << i) | (1u64 << j))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Subset(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_SUBSET_CRITERIA && self.0 & (1u64 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1u64 << i))
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Highest criterion index + 1, i.e. the smallest `n` this subset fits in.
    pub fn span(self) -> usize {
        (u64::BITS - self.0.leading_zeros()) as usize
    }

    /// Member indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Every subset of `self`, including the empty set and `self`, in
    /// decreasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(mask);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & mask)
            };
            Some(Subset(cur))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_power_set() {
        let s = Subset::from_indices([0, 2, 3]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.contains(&Subset::EMPTY));
        assert!(all.contains(&s));
        assert!(all.iter().all(|t| t.is_subset_of(s)));
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(Subset::pair(2, 3).to_string(), "{3,4}");
        assert_eq!(Subset::EMPTY.to_string(), "{}");
    }

    #[test]
    fn span_and_indices() {
        let s = Subset::from_indices([1, 4]);
        assert_eq!(s.span(), 5);
        assert_eq!(s.indices().collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(Subset::full(64).len(), 64);
    }
}
