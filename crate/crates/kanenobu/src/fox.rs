//! Fox free differential calculus and the matrix of abelianised Fox
//! derivatives over Q[Z/N].
//!
//! The derivative satisfies ∂(uv) = ∂u + u·∂v with ∂eᵢ/∂eᵢ = 1 and
//! ∂eᵢ⁻¹/∂eᵢ = −eᵢ⁻¹. Abelianising sends every group element to its class
//! in H₁; for a cyclic H₁ of order N the result lives in Q[Z/N].

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;
use crate::matrix::{smith_normal_form, IntMatrix, SmithForm};
use crate::presentation::{abelianize, GroupPresentation};
use crate::rational::{int, rat, Int, Rat};
use crate::words::FreeWord;

/// Formal Z-linear combination of free-group elements.
pub type FreeGroupSum = BTreeMap<FreeWord, Int>;

/// Fox derivative of a word with respect to generator `g`, as a formal sum
/// over the free group.
pub fn fox_derivative(word: &FreeWord, g: usize) -> FreeGroupSum {
    let mut sum = FreeGroupSum::new();
    let mut add = |w: FreeWord, c: Int| {
        *sum.entry(w).or_insert_with(Int::zero) += c;
    };
    let mut prefix = FreeWord::identity();
    for &(h, e) in word.blocks() {
        if h == g {
            if e > 0 {
                // ∂(g^e) = 1 + g + ... + g^(e−1)
                for t in 0..e {
                    add(prefix.concat(&FreeWord::generator(g, t)), int(1));
                }
            } else {
                // ∂(g^e) = −(g⁻¹ + ... + g^e)
                for t in 1..=(-e) {
                    add(prefix.concat(&FreeWord::generator(g, -t)), int(-1));
                }
            }
        }
        prefix = prefix.concat(&FreeWord::generator(h, e));
    }
    sum.retain(|_, c| !c.is_zero());
    sum
}

/// Abelianises a formal sum through generator classes in Z/N.
pub fn abelianize_sum(sum: &FreeGroupSum, images: &[i64], n: u64) -> GroupRingElement {
    let mut out = GroupRingElement::zero(n);
    for (w, c) in sum {
        let class: i64 = w
            .blocks()
            .iter()
            .map(|&(g, e)| images[g - 1].rem_euclid(n as i64) * (e.rem_euclid(n as i64)))
            .sum::<i64>()
            .rem_euclid(n as i64);
        let m = GroupRingElement::monomial(n, class, Rat::from_integer(c.clone()));
        out = out.add(&m).expect("same modulus");
    }
    out
}

/// Generator classes in a cyclic H₁, read off the Smith transform and
/// normalised so the chosen generator maps to 1.
pub fn cyclic_generator_images(snf: &SmithForm, normalize_to: usize) -> Result<Vec<i64>> {
    if !snf.structure.is_cyclic() || snf.structure.free_rank != 0 {
        return Err(Error::NonCyclicHomology);
    }
    let n = *snf
        .structure
        .invariant_factors
        .last()
        .ok_or(Error::NonCyclicHomology)? as i64;
    if n <= 1 {
        return Err(Error::NonCyclicHomology);
    }
    let row = snf.structure.invariant_factors.len() - 1;
    let w = snf.u.cols();
    let raw: Vec<i64> = (0..w)
        .map(|j| {
            let v = &snf.u[(row, j)] % int(n);
            i64::try_from(&v).expect("class fits i64")
        })
        .collect();
    let anchor = raw[normalize_to].rem_euclid(n);
    let inv = mod_inverse(anchor, n).ok_or(Error::NonCyclicHomology)?;
    Ok(raw.iter().map(|&c| (c * inv).rem_euclid(n)).collect())
}

fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (n, a.rem_euclid(n));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n))
}

/// The matrix of abelianised Fox derivatives: entry (i, j) is ∂ᵢbⱼ pushed
/// into Q[Z/N].
#[derive(Debug, Clone)]
pub struct FoxMatrix {
    pub group_order: u64,
    /// classes of the generators in Z/N
    pub generator_images: Vec<i64>,
    /// entries[i][j] = image of ∂ᵢ bⱼ
    pub entries: Vec<Vec<GroupRingElement>>,
}

impl FoxMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Augmentation of every entry: recovers the abelianised presentation
    /// matrix.
    pub fn augmentation(&self) -> IntMatrix {
        let w = self.size();
        let mut m = IntMatrix::zero(w, w);
        for i in 0..w {
            for j in 0..w {
                let s = self.entries[i][j].coefficient_sum();
                assert!(num::One::is_one(s.denom()), "augmentation is integral");
                m[(i, j)] = s.numer().clone();
            }
        }
        m
    }

    /// Determinant of the minor that deletes row `s` and column `r`
    /// (1-indexed), computed in the group ring by cofactor expansion.
    pub fn minor_determinant(&self, r: usize, s: usize) -> GroupRingElement {
        let w = self.size();
        let rows: Vec<usize> = (0..w).filter(|&i| i != s - 1).collect();
        let cols: Vec<usize> = (0..w).filter(|&j| j != r - 1).collect();
        let sub: Vec<Vec<&GroupRingElement>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| &self.entries[i][j]).collect())
            .collect();
        group_ring_det(&sub)
    }
}

fn group_ring_det(m: &[Vec<&GroupRingElement>]) -> GroupRingElement {
    let n = m.len();
    let order = m[0][0].modulus();
    match n {
        0 => GroupRingElement::one(order),
        1 => m[0][0].clone(),
        _ => {
            // cofactor expansion along the first row
            let mut acc = GroupRingElement::zero(order);
            for (j, top) in m[0].iter().enumerate() {
                if top.is_zero() {
                    continue;
                }
                let sub: Vec<Vec<&GroupRingElement>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m[i][c])
                            .collect()
                    })
                    .collect();
                let mut term = top.mul(&group_ring_det(&sub)).expect("same modulus");
                if j % 2 == 1 {
                    term = term.neg();
                }
                acc = acc.add(&term).expect("same modulus");
            }
            acc
        }
    }
}

/// Builds the Fox matrix of a presentation whose H₁ is cyclic. The images
/// are normalised so the generator `anchor` (1-indexed) maps to 1 ∈ Z/N.
pub fn fox_matrix(pres: &GroupPresentation, anchor: usize) -> Result<FoxMatrix> {
    let m = abelianize(pres);
    let snf = smith_normal_form(&m);
    let images = cyclic_generator_images(&snf, anchor - 1)?;
    let n = *snf.structure.invariant_factors.last().unwrap();
    fox_matrix_with_images(pres, &images, n)
}

pub fn fox_matrix_with_images(
    pres: &GroupPresentation,
    images: &[i64],
    n: u64,
) -> Result<FoxMatrix> {
    let w = pres.generator_count;
    if images.len() != w {
        return Err(Error::ShapeMismatch(format!(
            "{} images for {} generators",
            images.len(),
            w
        )));
    }
    let mut entries = Vec::with_capacity(w);
    for i in 1..=w {
        let mut row = Vec::with_capacity(w);
        for rel in &pres.relators {
            row.push(abelianized_fox_derivative(rel, i, images, n));
        }
        entries.push(row);
    }
    Ok(FoxMatrix { group_order: n, generator_images: images.to_vec(), entries })
}

/// Abelianised Fox derivative computed directly, without materialising the
/// free-group sum; exponent blocks contribute geometric progressions.
pub fn abelianized_fox_derivative(
    word: &FreeWord,
    g: usize,
    images: &[i64],
    n: u64,
) -> GroupRingElement {
    let n_i = n as i64;
    let mut out = vec![Rat::zero(); n as usize];
    let mut prefix: i64 = 0;
    for &(h, e) in word.blocks() {
        let img = images[h - 1].rem_euclid(n_i);
        if h == g {
            if e > 0 {
                for t in 0..e {
                    let k = (prefix + img * (t % n_i)).rem_euclid(n_i) as usize;
                    out[k] += rat(1);
                }
            } else {
                for t in 1..=(-e) {
                    let k = (prefix - img * (t % n_i)).rem_euclid(n_i) as usize;
                    out[k] -= rat(1);
                }
            }
        }
        prefix = (prefix + img * e.rem_euclid(n_i)).rem_euclid(n_i);
    }
    GroupRingElement::from_coeffs(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::character_map;
    use crate::presentation::presentation_from_white_graph;
    use crate::whitegraph::{kanenobu_white_graph, presentation_matrix, KanenobuParams};

    #[test]
    fn derivative_axioms() {
        // ∂e₁/∂e₁ = 1
        let d = fox_derivative(&FreeWord::generator(1, 1), 1);
        assert_eq!(d.len(), 1);
        assert_eq!(d[&FreeWord::identity()], int(1));

        // ∂e₁⁻¹/∂e₁ = −e₁⁻¹
        let d = fox_derivative(&FreeWord::generator(1, -1), 1);
        assert_eq!(d.len(), 1);
        assert_eq!(d[&FreeWord::generator(1, -1)], int(-1));
    }

    #[test]
    fn derivative_product_rule() {
        // ∂(uv) = ∂u + u ∂v on u = e₁e₂, v = e₂⁻¹e₁
        let u = FreeWord::from_blocks(vec![(1, 1), (2, 1)]);
        let v = FreeWord::from_blocks(vec![(2, -1), (1, 1)]);
        let uv = u.concat(&v);
        for g in 1..=2 {
            let mut expected = fox_derivative(&u, g);
            for (w, c) in fox_derivative(&v, g) {
                let e = expected.entry(u.concat(&w)).or_insert_with(Int::zero);
                *e += c;
            }
            expected.retain(|_, c| !c.is_zero());
            assert_eq!(fox_derivative(&uv, g), expected, "g = {}", g);
        }
    }

    #[test]
    fn free_and_direct_abelianizations_agree() {
        let word = FreeWord::from_blocks(vec![(2, -3), (1, 1), (2, -1), (4, 1), (2, -1), (4, 2)]);
        let images = [4, 1, 4, 1];
        for g in 1..=4 {
            let free = abelianize_sum(&fox_derivative(&word, g), &images, 25);
            let direct = abelianized_fox_derivative(&word, g, &images, 25);
            assert_eq!(free, direct, "g = {}", g);
        }
    }

    fn kanenobu_fox(params: &KanenobuParams) -> FoxMatrix {
        let pres = presentation_from_white_graph(&kanenobu_white_graph(params));
        fox_matrix(&pres, 4).unwrap()
    }

    #[test]
    fn images_match_column_relations() {
        for (n, p, q) in [(2u64, 0i64, 1i64), (3, 1, 1), (4, 2, -1), (2, -3, 2)] {
            let params = KanenobuParams::new(n, p, q).unwrap();
            if !crate::family::cyclicity_criterion(&params) {
                continue;
            }
            let fm = kanenobu_fox(&params);
            let m = (2 * n + 1) as i64;
            let img = &fm.generator_images;
            assert_eq!(img[3], 1);
            // φ(e₂) = φ(e₄) and φ(e₁) = φ(e₃) = (n+1)·φ(e₄) mod 2n+1
            assert_eq!((img[1] - img[3]).rem_euclid(m), 0);
            assert_eq!((img[0] - img[2]).rem_euclid(m), 0);
            assert_eq!((img[0] - (n as i64 + 1)).rem_euclid(m), 0);
        }
    }

    #[test]
    fn augmentation_recovers_presentation_matrix() {
        for (n, p, q) in [(2u64, 0i64, 1i64), (3, 2, 1), (4, -1, 3)] {
            let params = KanenobuParams::new(n, p, q).unwrap();
            let fm = kanenobu_fox(&params);
            assert_eq!(fm.augmentation(), presentation_matrix(&params));
        }
    }

    #[test]
    fn first_column_entry_matches_closed_form() {
        // the (1,1) entry under the order-(2n+1) character is −p−1−ζ^(n+1)
        use crate::cyclotomic::CyclotomicNumber;
        let params = KanenobuParams::new(2, 0, 1).unwrap();
        let fm = kanenobu_fox(&params);
        let m = 5u64;
        let got = character_map(&fm.entries[0][0], m).unwrap();
        let expected = CyclotomicNumber::from_rational(m, rat(-(0) - 1))
            .sub(&CyclotomicNumber::zeta_power(m, 3))
            .unwrap();
        assert_eq!(got, expected);
    }
}
