use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of {0, …, n−1}, stored as its image array.
///
/// Composition follows function notation: `a.compose(&b)` is x ↦ a(b(x)).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            img: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(img: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; img.len()];
        for &x in &img {
            let slot = seen
                .get_mut(x as usize)
                .ok_or_else(|| Error::NotAPermutation(format!("image {x} out of range")))?;
            if *slot {
                return Err(Error::NotAPermutation(format!("image {x} repeated")));
            }
            *slot = true;
        }
        Ok(Permutation { img })
    }

    /// x ↦ x + k mod n.
    pub fn translation(n: usize, k: usize) -> Self {
        Permutation {
            img: (0..n).map(|x| ((x + k) % n) as u32).collect(),
        }
    }

    pub(crate) fn from_images_unchecked(img: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(img.clone()).is_ok());
        Permutation { img }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.img[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// x ↦ self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            img: other.img.iter().map(|&x| self.img[x as usize]).collect(),
        }
    }

    pub fn try_compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut img = vec![0; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u32;
        }
        Permutation { img }
    }

    /// a ∘ self ∘ a⁻¹.
    pub fn conjugate_by(&self, a: &Permutation) -> Permutation {
        a.compose(self).compose(&a.inverse())
    }

    /// Lengths of the cycles, ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.img[x] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// Smallest point not fixed, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.img
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.img[start] as usize == start {
                continue;
            }
            f.write_str("(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.img[x] as usize;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Orbit of `point` under the group generated by `gens`.
pub fn orbit(point: u32, gens: &[Permutation]) -> BTreeSet<u32> {
    let mut seen = BTreeSet::from([point]);
    let mut stack = vec![point];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}
