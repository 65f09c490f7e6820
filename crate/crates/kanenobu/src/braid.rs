//! Braid words and their strand permutations.

use serde::Serialize;

use crate::error::{Error, Result};

/// A word in the braid group B_k: letters (i, ±1) stand for σᵢ^{±1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidParams("a braid needs at least 2 strands".into()));
        }
        for &(i, s) in &letters {
            if i == 0 || i >= strands {
                return Err(Error::InvalidParams(format!(
                    "generator index {} out of range 1..{}",
                    i,
                    strands - 1
                )));
            }
            if s != 1 && s != -1 {
                return Err(Error::InvalidParams("letter sign must be ±1".into()));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// σ₁σ₂⁻¹σ₁ⁿ on three strands.
    pub fn beta_n(n: u64) -> BraidWord {
        let mut letters = vec![(1, 1), (2, -1)];
        letters.extend(std::iter::repeat((1, 1)).take(n as usize));
        BraidWord { strands: 3, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    /// The word carried by a box holding the π-rotation of the inverse
    /// braid. Reversing the word twice (once for inversion, once for the
    /// rotation) preserves order; the rotation flips indices i ↦ k−i and
    /// inversion flips every sign.
    pub fn rotated_inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .map(|&(i, s)| (self.strands - i, -s))
                .collect(),
        }
    }

    /// Position permutation: perm[j] is where the strand entering at
    /// position j (0-indexed) exits.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &(i, _) in &self.letters {
            perm.swap(i - 1, i);
        }
        // perm currently maps slots to entrants; invert to map entrants to exits
        let mut out = vec![0; self.strands];
        for (slot, &entrant) in perm.iter().enumerate() {
            out[entrant] = slot;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_n_shape() {
        let b = BraidWord::beta_n(4);
        assert_eq!(b.strands(), 3);
        assert_eq!(b.len(), 6);
        assert_eq!(b.letters()[0], (1, 1));
        assert_eq!(b.letters()[1], (2, -1));
    }

    #[test]
    fn rotated_inverse_of_beta_n() {
        // the rotated inverse box of β_n carries σ₂⁻¹σ₁σ₂⁻ⁿ
        let top = BraidWord::beta_n(3).rotated_inverse();
        assert_eq!(
            top.letters(),
            &[(2, -1), (1, 1), (2, -1), (2, -1), (2, -1)]
        );
    }

    #[test]
    fn permutation_tracks_strands() {
        let b = BraidWord::new(3, vec![(1, 1)]).unwrap();
        assert_eq!(b.permutation(), vec![1, 0, 2]);
        let b = BraidWord::beta_n(2); // σ₁σ₂⁻¹σ₁²
        // position 0 → swaps to 1, then σ₂ to 2, σ₁² leaves: 0→2
        assert_eq!(b.permutation()[0], 2);
    }

    #[test]
    fn index_bounds_checked() {
        assert!(BraidWord::new(3, vec![(3, 1)]).is_err());
        assert!(BraidWord::new(3, vec![(0, 1)]).is_err());
    }
}
