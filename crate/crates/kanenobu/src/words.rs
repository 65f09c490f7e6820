//! Freely reduced words in a free group, with the cyclic canonical form used
//! to compare relators up to rotation and inversion.

use serde::Serialize;

/// A word in generators e₁..e_w, stored as (generator, exponent) blocks.
/// Generators are 1-indexed. Adjacent blocks always have distinct generators
/// and no block has exponent zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FreeWord {
    blocks: Vec<(usize, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { blocks: Vec::new() }
    }

    pub fn generator(g: usize, exp: i64) -> Self {
        FreeWord::from_blocks(vec![(g, exp)])
    }

    pub fn from_blocks(blocks: Vec<(usize, i64)>) -> Self {
        let mut w = FreeWord { blocks: Vec::new() };
        for (g, e) in blocks {
            w.push(g, e);
        }
        w
    }

    pub fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.blocks.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    self.blocks.pop();
                    // popping may expose a new mergeable pair; fix by re-pushing
                    if let Some((pg, pe)) = self.blocks.pop() {
                        self.push(pg, pe);
                    }
                }
            }
            _ => self.blocks.push((g, e)),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(g, e) in &other.blocks {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            blocks: self.blocks.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k >= 0 { self.clone() } else { self.inverse() };
        let mut w = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[(usize, i64)] {
        &self.blocks
    }

    /// Total exponent of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.blocks.iter().filter(|&&(h, _)| h == g).map(|&(_, e)| e).sum()
    }

    /// Expansion into single letters (g, ±1).
    pub fn letters(&self) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for &(g, e) in &self.blocks {
            let s = e.signum();
            for _ in 0..e.unsigned_abs() {
                out.push((g, s));
            }
        }
        out
    }

    /// Largest generator index appearing, 0 for the identity.
    pub fn max_generator(&self) -> usize {
        self.blocks.iter().map(|&(g, _)| g).max().unwrap_or(0)
    }

    /// Renames generators through `map` (map[old] = new, 1-indexed).
    pub fn relabel(&self, map: &[usize]) -> FreeWord {
        FreeWord::from_blocks(self.blocks.iter().map(|&(g, e)| (map[g], e)).collect())
    }

    /// Canonical representative of the word up to cyclic rotation and
    /// inversion: the lexicographically least rotation of the cyclically
    /// reduced letter sequence, over the word and its inverse.
    pub fn cyclic_canonical(&self) -> Vec<(usize, i64)> {
        let a = cyclic_reduce(self.letters());
        let b = cyclic_reduce(self.inverse().letters());
        let mut best: Option<Vec<(usize, i64)>> = None;
        for seq in [a, b] {
            let n = seq.len();
            if n == 0 {
                return Vec::new();
            }
            for r in 0..n {
                let rot: Vec<(usize, i64)> =
                    (0..n).map(|i| seq[(i + r) % n]).collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_default()
    }

    pub fn cyclically_equal(&self, other: &FreeWord) -> bool {
        self.cyclic_canonical() == other.cyclic_canonical()
    }
}

fn cyclic_reduce(mut letters: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    loop {
        let n = letters.len();
        if n < 2 {
            return letters;
        }
        let (g0, e0) = letters[0];
        let (g1, e1) = letters[n - 1];
        if g0 == g1 && e0 == -e1 {
            letters.pop();
            letters.remove(0);
        } else {
            return letters;
        }
    }
}

impl std::fmt::Display for FreeWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "1");
        }
        for &(g, e) in &self.blocks {
            if e == 1 {
                write!(f, "e{}", g)?;
            } else {
                write!(f, "e{}^{}", g, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = FreeWord::from_blocks(vec![(1, 2), (2, 1), (2, -1), (1, -2), (3, 1)]);
        assert_eq!(w, FreeWord::generator(3, 1));
    }

    #[test]
    fn cyclic_comparison() {
        // e2 e1^-2 and its rotation e1^-2 e2, and the inverse e1^2 e2^-1
        let b1 = FreeWord::from_blocks(vec![(2, 1), (1, -2)]);
        let rot = FreeWord::from_blocks(vec![(1, -2), (2, 1)]);
        let inv = FreeWord::from_blocks(vec![(1, 2), (2, -1)]);
        assert!(b1.cyclically_equal(&rot));
        assert!(b1.cyclically_equal(&inv));
        let other = FreeWord::from_blocks(vec![(2, 1), (1, 2)]);
        assert!(!b1.cyclically_equal(&other));
    }

    #[test]
    fn cyclic_reduction_inside_canonical() {
        // e1 e2 e1^-1 is a conjugate of e2
        let w = FreeWord::from_blocks(vec![(1, 1), (2, 1), (1, -1)]);
        assert!(w.cyclically_equal(&FreeWord::generator(2, 1)));
    }

    #[test]
    fn exponent_sums() {
        let w = FreeWord::from_blocks(vec![(2, 1), (1, -2), (3, 1), (1, -1), (3, -1)]);
        assert_eq!(w.exponent_sum(1), -3);
        assert_eq!(w.exponent_sum(2), 1);
        assert_eq!(w.exponent_sum(3), 0);
    }
}
