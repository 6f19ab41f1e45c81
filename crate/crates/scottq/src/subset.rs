//! Qubit subsets as bitmasks over vertices `0..n-1`, plus size-restricted
//! subset enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset S of the qubits/vertices `0..n-1`, stored as a bitmask.
///
/// Bit `v` set means vertex `v` is in S. The associated `n` is not stored;
/// operations that need it take it as a parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// Subset from a raw bitmask, checked against the vertex range of `n`.
    pub fn new(bits: u64, n: usize) -> Result<SubsetMask> {
        if bits & !full_mask(n) != 0 {
            return Err(Error::VertexOutOfRange {
                label: (63 - bits.leading_zeros() as usize) + 1,
                n,
            });
        }
        Ok(SubsetMask(bits))
    }

    /// Subset from 0-based vertex indices.
    pub fn from_vertices(vertices: &[usize], n: usize) -> Result<SubsetMask> {
        let mut bits = 0u64;
        for &v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { label: v + 1, n });
            }
            bits |= 1 << v;
        }
        Ok(SubsetMask(bits))
    }

    /// All of `0..n-1`.
    pub fn full(n: usize) -> SubsetMask {
        SubsetMask(full_mask(n))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// |S|.
    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    /// S' = full \ S for the given `n`.
    pub fn complement(self, n: usize) -> SubsetMask {
        SubsetMask(full_mask(n) ^ self.0)
    }

    /// Member vertices, ascending, 0-based.
    pub fn vertices(self) -> Vec<usize> {
        (0..64).filter(|&v| self.contains(v)).collect()
    }

    /// Member vertices, ascending, 1-based (the label convention of all
    /// text formats).
    pub fn labels(self) -> Vec<usize> {
        self.vertices().iter().map(|v| v + 1).collect()
    }

    /// Image of the subset under a vertex relabeling `perm[v] = new label`.
    pub fn permute(self, perm: &[usize]) -> SubsetMask {
        let mut bits = 0u64;
        for v in self.vertices() {
            bits |= 1 << perm[v];
        }
        SubsetMask(bits)
    }
}

impl std::fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// Bitmask with the lowest `n` bits set. `n` must be at most 63.
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= 63);
    (1u64 << n) - 1
}

/// C(n, m) without overflow for n <= 64.
pub fn binomial(n: usize, m: usize) -> u64 {
    if m > n {
        return 0;
    }
    let m = m.min(n - m);
    let mut c: u128 = 1;
    for i in 1..=m {
        c = c * (n - m + i) as u128 / i as u128;
    }
    c as u64
}

/// All size-`m` subsets of `0..n-1` in ascending bitmask order
/// (Gosper's hack).
pub fn subsets_of_size(n: usize, m: usize) -> impl Iterator<Item = SubsetMask> {
    debug_assert!(n <= 63 && m <= n);
    let limit = 1u64 << n;
    let first = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let mut cur = Some(first);
    std::iter::from_fn(move || {
        let v = cur?;
        cur = if v == 0 {
            None
        } else {
            let t = v | (v - 1);
            let next = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
            (next < limit).then_some(next)
        };
        Some(SubsetMask(v))
    })
}

/// Every subset of `0..n-1` in ascending bitmask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = SubsetMask> {
    debug_assert!(n <= 63);
    (0..1u64 << n).map(SubsetMask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_basics() {
        let s = SubsetMask::from_vertices(&[0, 2], 4).unwrap();
        assert_eq!(s.bits(), 0b101);
        assert_eq!(s.size(), 2);
        assert_eq!(s.complement(4).bits(), 0b1010);
        assert_eq!(s.labels(), vec![1, 3]);
        assert_eq!(s.to_string(), "{1,3}");
    }

    #[test]
    fn mask_rejects_out_of_range() {
        assert!(matches!(
            SubsetMask::new(0b10000, 4),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(SubsetMask::from_vertices(&[4], 4).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(14, 7), 3432);
        assert_eq!(binomial(63, 31), 916312070471295267);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn subset_enumeration_counts_and_order() {
        for n in 0..=8 {
            let mut total = 0;
            for m in 0..=n {
                let v: Vec<_> = subsets_of_size(n, m).collect();
                assert_eq!(v.len() as u64, binomial(n, m), "n={n} m={m}");
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                assert!(v.iter().all(|s| s.size() == m));
                total += v.len();
            }
            assert_eq!(total, 1 << n);
        }
        assert_eq!(all_subsets(3).count(), 8);
    }

    #[test]
    fn subset_enumeration_near_word_boundary() {
        assert_eq!(subsets_of_size(63, 62).count() as u64, binomial(63, 62));
        assert_eq!(all_subsets(0).count(), 1);
    }
}
