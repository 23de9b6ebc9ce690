//! Permutations of the four vertex labels of a tetrahedron.

use std::fmt;

use crate::triangulation::TriangulationError;

/// A bijection on the labels {0,1,2,3}, encoding how a face gluing maps
/// vertex labels of one tetrahedron to the other.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm4 {
    images: [u8; 4],
}

impl Perm4 {
    pub fn new(images: [u8; 4]) -> Result<Self, TriangulationError> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return Err(TriangulationError::BadPermutation { images });
            }
            seen[x as usize] = true;
        }
        Ok(Perm4 { images })
    }

    pub fn identity() -> Self {
        Perm4 { images: [0, 1, 2, 3] }
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0u8; 4];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm4 { images: inv }
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn images(&self) -> [u8; 4] {
        self.images
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}{}",
            self.images[0], self.images[1], self.images[2], self.images[3]
        )
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
