use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..degree`, acting on the right: `i^(pq) = (i^p)^q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    /// Checks that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Build from cycles written with 1-based points, e.g. `[[1,2,3],[4,5]]`.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::InvalidPermutation(format!("point {p} out of range 1..={degree}")));
                }
                if touched[p - 1] {
                    return Err(Error::InvalidPermutation(format!("point {p} repeated in cycles")));
                }
                touched[p - 1] = true;
                images[p - 1] = (cycle[(k + 1) % cycle.len()] - 1) as u32;
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation(inv)
    }

    /// Extend to a larger degree by fixing the new points.
    pub fn extend(&self, degree: usize) -> Permutation {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree as u32);
        Permutation(v)
    }

    /// Disjoint cycles of length > 1, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.0[start] as usize;
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.0[j] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::from_cycles(&[vec![1, 2, 3], vec![4, 5]], 5).unwrap();
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        assert_eq!(p.apply(0), 1);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::from_cycles(&[vec![1, 2]], 3).unwrap();
        let b = Permutation::from_cycles(&[vec![2, 3]], 3).unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.then(&b).to_string(), "(1,3,2)");
        assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_cycles(&[vec![1, 2], vec![2, 3]], 3).is_err());
        assert!(Permutation::from_cycles(&[vec![0, 1]], 3).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }
}
