//! Roots of the affine root system of type Ã₍ₙ₋₁₎, as integer coordinate
//! vectors in the simple-root basis α₁,…,αₙ.
//!
//! The real roots of this system are exactly the vectors `α_i + α_{i+1} + ⋯ +
//! α_{j-1}` for cyclic intervals of indices (possibly wrapping around the
//! cycle several times, which adds copies of the imaginary root
//! δ = α₁ + ⋯ + αₙ). The zero vector is never a `Root`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// An element of the root lattice, in simple-root coordinates.
///
/// Most values of this type floating around the crate are real roots or their
/// negatives, but the type itself only rules out the zero vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    coords: Vec<i64>,
}

/// Sign of a vector whose coordinates are uniformly signed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl Root {
    /// Build a root from raw coordinates. Panics on the zero vector, which is
    /// not a root.
    pub fn new(coords: Vec<i64>) -> Root {
        assert!(
            coords.iter().any(|&c| c != 0),
            "the zero vector is not a root"
        );
        Root { coords }
    }

    /// The simple root α_i (1-based, `1 ≤ i ≤ n`).
    pub fn simple(n: usize, i: usize) -> Root {
        assert!((1..=n).contains(&i), "simple index {i} out of range 1..={n}");
        let mut coords = vec![0; n];
        coords[i - 1] = 1;
        Root { coords }
    }

    /// The imaginary root δ = α₁ + ⋯ + αₙ = (1,…,1).
    pub fn delta(n: usize) -> Root {
        Root { coords: vec![1; n] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.coords[i - 1]
    }

    /// Coordinate sum, i.e. the pairing of the root against the fundamental
    /// weight sum; equals k for a real root of the form (finite root) + kδ
    /// shifted appropriately. Used mostly as `⟨x, δ⟩`-style bookkeeping.
    pub fn coord_sum(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// True iff every coordinate is ≥ 0 (and the vector is nonzero).
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        self.coords.iter().all(|&c| c <= 0)
    }

    /// `Some(sign)` when the coordinates are uniformly signed, `None` for a
    /// mixed-sign vector (which violates the Sign condition of a framework).
    pub fn sign(&self) -> Option<Sign> {
        if self.is_positive() {
            Some(Sign::Positive)
        } else if self.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn negated(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|&c| -c).collect(),
        }
    }

    /// Sum of two lattice vectors. Panics if the result is zero (β + (−β) is
    /// not a root).
    pub fn plus(&self, other: &Root) -> Root {
        assert_eq!(self.rank(), other.rank());
        let coords: Vec<i64> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Root::new(coords)
    }

    /// `self + k·other`, panicking on a zero result.
    pub fn plus_scaled(&self, k: i64, other: &Root) -> Root {
        assert_eq!(self.rank(), other.rank());
        let coords: Vec<i64> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + k * b)
            .collect();
        Root::new(coords)
    }

    /// Apply the simple reflection s_i (1-based): β ↦ β − K(α_i, β)·α_i where
    /// K is the symmetric form of the cycle Cartan matrix, so
    /// K(α_i, β) = 2β_i − β_{i−1} − β_{i+1} with cyclic indices.
    pub fn reflect_simple(&self, i: usize) -> Root {
        let n = self.rank();
        debug_assert!((1..=n).contains(&i));
        let idx = i - 1;
        let prev = (idx + n - 1) % n;
        let next = (idx + 1) % n;
        let k = 2 * self.coords[idx] - self.coords[prev] - self.coords[next];
        let mut coords = self.coords.clone();
        coords[idx] -= k;
        Root::new(coords)
    }

    /// Rotate the coordinates k steps forward: the root-space image of the
    /// diagram automorphism α_i ↦ α_{i+k}.
    pub fn rotated(&self, k: i64) -> Root {
        let n = self.rank();
        let shift = k.rem_euclid(n as i64) as usize;
        let mut coords = vec![0; n];
        for (idx, &c) in self.coords.iter().enumerate() {
            coords[(idx + shift) % n] = c;
        }
        Root { coords }
    }

    /// Canonical representative of the class of this vector in V/ℝδ: subtract
    /// the minimum coordinate times δ, so the minimum coordinate becomes 0.
    /// Two integer vectors are congruent mod ℝδ iff they share this form.
    pub fn reduced_mod_delta(&self) -> Vec<i64> {
        let m = *self.coords.iter().min().unwrap();
        self.coords.iter().map(|&c| c - m).collect()
    }
}

impl fmt::Display for Root {
    /// Writes e.g. `a1+a2`, `-a1-a2`, `2a1+2a2+a3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > 0 && !first {
                write!(f, "+")?;
            }
            match c {
                1 => {}
                -1 => write!(f, "-")?,
                _ => write!(f, "{c}")?,
            }
            write!(f, "a{}", idx + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
