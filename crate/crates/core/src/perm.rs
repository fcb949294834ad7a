//! Permutations of `{1..degree}`, stored 0-based.
//!
//! Permutations are a construction and display device only; all group
//! arithmetic runs on multiplication tables.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: u32) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images. Fails unless bijective.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let degree = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= degree {
                return Err(Error::NotBijective {
                    degree,
                    detail: format!("image {} out of range", x + 1),
                });
            }
            if seen[x as usize] {
                return Err(Error::NotBijective {
                    degree,
                    detail: format!("point {} hit twice", x + 1),
                });
            }
            seen[x as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of `1..=degree` from disjoint-or-not cycles of
    /// 1-based points, applied left to right.
    pub fn from_cycles(degree: u32, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut p = Perm::identity(degree);
        for cycle in cycles {
            let mut c = Perm::identity(degree);
            for (i, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::NotBijective {
                        degree,
                        detail: format!("point {} outside 1..={}", pt, degree),
                    });
                }
                let next = cycle[(i + 1) % cycle.len()];
                c.images[(pt - 1) as usize] = next - 1;
            }
            Perm::from_images(c.images.clone())?;
            p = c.compose(&p);
        }
        Ok(p)
    }

    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    /// Function composition: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u32;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Re-embeds into a larger degree, shifting all points by `offset`.
    pub fn shift(&self, degree: u32, offset: u32) -> Perm {
        let mut images: Vec<u32> = (0..degree).collect();
        for (x, &y) in self.images.iter().enumerate() {
            images[x + offset as usize] = y + offset;
        }
        Perm { images }
    }

    /// Acts simultaneously on two blocks of the same degree (diagonal).
    pub fn doubled(&self) -> Perm {
        let d = self.degree();
        let mut images = Vec::with_capacity(2 * d as usize);
        images.extend(self.images.iter().copied());
        images.extend(self.images.iter().map(|&y| y + d));
        Perm { images }
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start as u32 + 1];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x as u32 + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", pt)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
