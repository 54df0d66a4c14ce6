use std::fmt;

use serde::{Deserialize, Serialize};

/// A permutation of `0..n`, acting on the right: `x.then(p)` applies `x` first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Returns `None` unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        if is_bijection(&images) {
            Some(Perm(images))
        } else {
            None
        }
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&images));
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.0[point] as usize == point
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(i, &x)| *i as u32 == x).map(|(i, _)| i)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub fn is_bijection(images: &[u32]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n];
    for &x in images {
        let x = x as usize;
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Points fixed by every permutation in `perms`.
pub fn common_fixed_points(degree: usize, perms: &[Perm]) -> Vec<usize> {
    (0..degree).filter(|&s| perms.iter().all(|p| p.fixes(s))).collect()
}
