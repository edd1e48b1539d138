use std::fmt;

/// A subset of hyperplane indices `{0, .., n-1}` stored as a bitmask.
///
/// Displayed 1-based (`{1,2,4}`), matching how hyperplanes are numbered in
/// files and reports.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Subset(u64);

pub const MAX_HYPERPLANES: usize = 64;

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_HYPERPLANES);
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Subset(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// Builds from 1-based indices.
    pub fn from_one_based(idx: &[usize]) -> Self {
        Subset::from_indices(idx.iter().map(|&i| i - 1))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn toggled(self, i: usize) -> Self {
        Subset(self.0 ^ 1 << i)
    }

    pub fn union(self, o: Subset) -> Self {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Self {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Self {
        Subset(self.0 & !o.0)
    }

    pub fn complement(self, n: usize) -> Self {
        Subset::full(n).difference(self)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: Subset) -> bool {
        self.0 & o.0 == 0
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
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

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets of `{0..n}`, in increasing bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < 64);
        (0..1u64 << n).map(Subset)
    }

    /// All subsets of `{0..n}` of size `k`, in increasing bitmask order.
    pub fn of_size(n: usize, k: usize) -> impl Iterator<Item = Subset> {
        assert!(n < 64);
        let limit = 1u64 << n;
        let mut cur = if k == 0 {
            Some(0u64)
        } else if k > n {
            None
        } else {
            Some((1u64 << k) - 1)
        };
        std::iter::from_fn(move || {
            let v = cur?;
            if v >= limit {
                return None;
            }
            cur = if v == 0 {
                None
            } else {
                // Gosper's hack
                let c = v & v.wrapping_neg();
                let r = v + c;
                Some((((r ^ v) >> 2) / c) | r)
            };
            Some(Subset(v))
        })
    }

    /// Ordering key: size first, then the sorted index list.
    pub fn size_lex_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.to_vec())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
