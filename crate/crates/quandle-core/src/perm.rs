//! Permutations of the points `0..n`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A bijection of `{0, .., n-1}`, stored as its image vector.
///
/// Composition follows word order: `a.then(b)` applies `a` first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Why an image vector fails to be a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("image {value} is out of range for degree {degree}")]
    ImageOutOfRange { value: usize, degree: usize },
    #[error("image {value} occurs more than once")]
    ImageRepeated { value: usize },
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(PermError::ImageOutOfRange {
                    value: v,
                    degree: n,
                });
            }
            if seen[v] {
                return Err(PermError::ImageRepeated { value: v });
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// The transposition swapping `i` and `j`.
    pub fn transposition(degree: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(i, j);
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Self { images }
    }

    /// The conjugate `q^{-1} self q`: apply `q` inverse, then `self`, then `q`.
    pub fn conj_by(&self, q: &Self) -> Self {
        q.inverse().then(self).then(q)
    }
}

/// Cycle notation with fixed points omitted; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut printed = false;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            if self.images[start] == start {
                continue;
            }
            write!(f, "({start}")?;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                write!(f, " {p}")?;
                p = self.images[p];
            }
            write!(f, ")")?;
            printed = true;
        }
        if !printed {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_left_first() {
        let a = Permutation::transposition(3, 0, 1);
        let b = Permutation::transposition(3, 1, 2);
        let c = a.then(&b);
        assert_eq!(c.apply(0), 2); // a: 0 -> 1, b: 1 -> 2
        assert_eq!(c.apply(2), 1);
    }

    #[test]
    fn inverse_undoes() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(
            Permutation::new(vec![0, 0]),
            Err(PermError::ImageRepeated { value: 0 })
        );
        assert_eq!(
            Permutation::new(vec![0, 5]),
            Err(PermError::ImageOutOfRange {
                value: 5,
                degree: 2
            })
        );
    }

    #[test]
    fn cycle_notation() {
        use alloc::format;
        assert_eq!(format!("{}", Permutation::identity(4)), "()");
        assert_eq!(format!("{}", Permutation::transposition(4, 1, 3)), "(1 3)");
        let p = Permutation::new(vec![1, 2, 0, 4, 3]).unwrap();
        assert_eq!(format!("{p}"), "(0 1 2)(3 4)");
    }
}
