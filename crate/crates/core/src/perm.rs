//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! `x.then(a, b)` style composition reads left to right: `a.then(&b)` maps
//! `x` to `(x a) b`, matching the postfix notation `xAB` used for
//! translations and isotopism components throughout the crate.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Element;

/// A bijection on `{0, .., n-1}`, stored as its image tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<Element>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<Element>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<Element>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// The cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Perm {
        Perm {
            images: (0..n).map(|x| (x + 1) % n).collect(),
        }
    }

    /// Swaps `a` and `b`, fixing everything else.
    pub fn transposition(n: usize, a: Element, b: Element) -> Result<Perm> {
        if a >= n || b >= n {
            return Err(Error::ElementOutOfRange {
                value: a.max(b),
                order: n,
            });
        }
        let mut images: Vec<_> = (0..n).collect();
        images.swap(a, b);
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Image of `x`. Panics if `x` is out of range.
    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.images[x]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "composing perms of unequal degree");
        Perm {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// All permutations of degree `n` in lexicographic order of image tuples.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        (0..n).permutations(n).map(|images| Perm { images })
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.images.iter().join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
        assert!(Perm::from_images(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn then_is_left_to_right() {
        let a = Perm::from_images(vec![1, 2, 0]).unwrap();
        let b = Perm::from_images(vec![0, 2, 1]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(b.then(&a).apply(0), 1);
    }

    #[test]
    fn all_is_lexicographic_and_complete() {
        let perms: Vec<_> = Perm::all(3).collect();
        assert_eq!(perms.len(), 6);
        assert!(perms.windows(2).all(|w| w[0] < w[1]));
        assert!(perms[0].is_identity());
    }

    fn perm_strategy() -> impl Strategy<Value = Perm> {
        (1usize..8)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in perm_strategy()) {
            let id = Perm::identity(p.degree());
            prop_assert_eq!(p.then(&p.inverse()), id.clone());
            prop_assert_eq!(p.inverse().then(&p), id);
        }
    }
}
