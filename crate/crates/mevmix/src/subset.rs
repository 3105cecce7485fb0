//! Bitmask subsets of the coordinate set `{1, ..., d}`.
//!
//! Inclusion-exclusion over orthant events enumerates all nonempty subsets
//! of a conditioning set, so the dimension is capped at [`SubsetMask::MAX_DIM`]
//! to keep `2^d` enumeration tractable.

use crate::error::{Error, Result};

/// Largest supported dimension for subset enumeration.
pub const MAX_DIM: usize = 30;

/// A nonempty subset of the coordinates `{0, ..., dim-1}` (0-based internally;
/// user-facing formats are 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    bits: u32,
    dim: usize,
}

impl SubsetMask {
    /// Largest supported dimension.
    pub const MAX_DIM: usize = MAX_DIM;

    /// Build a mask from raw bits. Fails on empty masks, `dim` out of
    /// `1..=MAX_DIM`, or bits outside the dimension.
    pub fn new(bits: u32, dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidSubset {
                detail: format!("dimension {} out of 1..={}", dim, MAX_DIM),
            });
        }
        if bits == 0 {
            return Err(Error::InvalidSubset {
                detail: "subset is empty".to_string(),
            });
        }
        if bits >= (1u32 << dim) {
            return Err(Error::InvalidSubset {
                detail: format!("subset bits {:#b} exceed dimension {}", bits, dim),
            });
        }
        Ok(SubsetMask { bits, dim })
    }

    /// Build a mask from 0-based coordinate indices.
    pub fn from_indices(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &i in indices {
            if i >= dim {
                return Err(Error::InvalidSubset {
                    detail: format!("coordinate index {} out of 0..{}", i, dim),
                });
            }
            bits |= 1 << i;
        }
        Self::new(bits, dim)
    }

    /// The full set `{0, ..., dim-1}`.
    pub fn full(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidSubset {
                detail: format!("dimension {} out of 1..={}", dim, MAX_DIM),
            });
        }
        Self::new((1u32 << dim) - 1, dim)
    }

    /// The singleton `{index}` (0-based).
    pub fn singleton(dim: usize, index: usize) -> Result<Self> {
        Self::from_indices(dim, &[index])
    }

    /// Raw bit pattern.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Cardinality `|A|`.
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Always false by construction; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether the 0-based coordinate is a member.
    pub fn contains(&self, index: usize) -> bool {
        index < self.dim && (self.bits >> index) & 1 == 1
    }

    /// Whether this mask covers the whole dimension.
    pub fn is_full(&self) -> bool {
        self.bits == (1u32 << self.dim) - 1
    }

    /// Member coordinates in increasing order (0-based).
    pub fn indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.contains(i)).collect()
    }

    /// Member coordinates in increasing order, 1-based (for reports).
    pub fn coords_1based(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.contains(i)).map(|i| i + 1).collect()
    }

    /// Iterate over all nonempty subsets `B` of this mask.
    pub fn nonempty_subsets(&self) -> SubsetIter {
        SubsetIter {
            parent: self.bits,
            dim: self.dim,
            current: self.bits,
            done: false,
        }
    }

    /// Indicator vector of the subset: 1.0 on members, 0.0 elsewhere.
    pub fn indicator(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|i| if self.contains(i) { 1.0 } else { 0.0 })
            .collect()
    }
}

impl std::fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (n, c) in self.coords_1based().into_iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the nonempty submasks of a parent mask, descending
/// through the standard `s = (s - 1) & parent` walk.
pub struct SubsetIter {
    parent: u32,
    dim: usize,
    current: u32,
    done: bool,
}

impl Iterator for SubsetIter {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        if self.done {
            return None;
        }
        let out = SubsetMask {
            bits: self.current,
            dim: self.dim,
        };
        if self.current == 0 {
            return None; // unreachable: parent masks are nonempty
        }
        let next = (self.current - 1) & self.parent;
        if next == 0 {
            self.done = true;
        } else {
            self.current = next;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_out_of_range() {
        assert!(SubsetMask::new(0, 3).is_err());
        assert!(SubsetMask::new(0b1000, 3).is_err());
        assert!(SubsetMask::new(1, 0).is_err());
        assert!(SubsetMask::new(1, 31).is_err());
        assert!(SubsetMask::from_indices(2, &[2]).is_err());
    }

    #[test]
    fn membership_and_cardinality() {
        let a = SubsetMask::from_indices(4, &[0, 2]).unwrap();
        assert_eq!(a.len(), 2);
        assert!(a.contains(0));
        assert!(!a.contains(1));
        assert!(a.contains(2));
        assert_eq!(a.indices(), vec![0, 2]);
        assert_eq!(a.coords_1based(), vec![1, 3]);
        assert_eq!(a.indicator(), vec![1.0, 0.0, 1.0, 0.0]);
        assert_eq!(format!("{}", a), "{1,3}");
    }

    #[test]
    fn enumerates_all_nonempty_subsets() {
        let a = SubsetMask::full(3).unwrap();
        let subs: Vec<u32> = a.nonempty_subsets().map(|s| s.bits()).collect();
        assert_eq!(subs.len(), 7);
        let mut sorted = subs.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn subsets_of_sparse_mask() {
        let a = SubsetMask::from_indices(5, &[1, 4]).unwrap();
        let subs: Vec<u32> = a.nonempty_subsets().map(|s| s.bits()).collect();
        let mut sorted = subs;
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0b00010, 0b10000, 0b10010]);
    }

    #[test]
    fn full_and_singleton() {
        let f = SubsetMask::full(4).unwrap();
        assert!(f.is_full());
        assert_eq!(f.len(), 4);
        let s = SubsetMask::singleton(4, 3).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.contains(3));
    }
}
