//! Reidemeister–Turaev torsion of the branched double covers.
//!
//! For a cyclic H₁ of order N the φ-twisted torsion at the character of
//! order d > 1 is ±φ(Δ^{r,s}) / (φ(h_s−1)·φ(g_r−1)), with Δ^{r,s} the Fox
//! minor deleting row s and column r, h_s the class of e_s and g_r the
//! class of e_r⁻¹. The maximal abelian torsion is reassembled from all
//! characters, with the augmentation component set to zero; the result is
//! well defined up to a global sign and a cyclic translation, so both are
//! canonicalised and flagged.

use std::collections::HashMap;

use num::Zero;

use crate::cyclotomic::{divisors, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::family::cyclicity_criterion;
use crate::fox::{fox_matrix, FoxMatrix};
use crate::groupring::{assemble_from_characters, character_map, GroupRingElement};
use crate::presentation::presentation_from_white_graph;
use crate::rational::{Rat, rat_str};
use crate::whitegraph::{kanenobu_white_graph, KanenobuParams};

/// Minor choices tried in order, (w,w) first; the same choice is used for
/// every character so the assembled vector keeps a coherent sign and
/// translate.
fn minor_ladder(w: usize) -> Vec<(usize, usize)> {
    (1..=w).rev().map(|k| (k, k)).collect()
}

/// φ_d of the twisted torsion for the minor (r, s): the image of Δ^{r,s}
/// divided by (ζ^c_s − 1)(ζ^{−c_r} − 1), where c_i is the class of e_i.
/// The overall sign is not determined.
pub fn twisted_torsion(fm: &FoxMatrix, d: u64, r: usize, s: usize) -> Result<CyclotomicNumber> {
    if d <= 1 || fm.group_order % d != 0 {
        return Err(Error::InvalidParams(format!(
            "character order {} must divide N = {} and exceed 1",
            d, fm.group_order
        )));
    }
    let hv = Error::HypothesisViolation { divisor: d, r, s };
    let one = CyclotomicNumber::one(d);
    // h_s = [e_s], g_r = [e_r]^{-1}
    let h = CyclotomicNumber::zeta_power(d, fm.generator_images[s - 1]).sub(&one)?;
    let g = CyclotomicNumber::zeta_power(d, -fm.generator_images[r - 1]).sub(&one)?;
    if h.is_zero() || g.is_zero() {
        return Err(hv);
    }
    let minor = fm.minor_determinant(r, s);
    let num = character_map(&minor, d)?;
    if num.is_zero() {
        return Err(hv);
    }
    num.div(&h.mul(&g)?)
}

#[derive(Debug, Clone)]
pub struct TorsionVector {
    pub group_order: u64,
    /// canonical representative: lexicographically least cyclic translate,
    /// then the lexicographically smaller of the two signs
    pub coeffs: Vec<Rat>,
    pub sign_resolved: bool,
    pub translation_resolved: bool,
    /// the minor (r, s) that produced every character component
    pub minor: (usize, usize),
    /// reversal duality: some cyclic translate of the reversed vector
    /// equals the vector itself
    pub duality_holds: bool,
}

impl TorsionVector {
    /// Both candidate coefficient vectors, each translation-canonical.
    pub fn sign_candidates(&self) -> (Vec<Rat>, Vec<Rat>) {
        let neg: Vec<Rat> = self.coeffs.iter().map(|c| -c).collect();
        (self.coeffs.clone(), canonical_translate(&neg))
    }

    pub fn coefficient_sum(&self) -> Rat {
        self.coeffs.iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "group_order": self.group_order,
            "coeffs": self.coeffs.iter().map(rat_str).collect::<Vec<_>>(),
            "sign_resolved": self.sign_resolved,
            "translation_resolved": self.translation_resolved,
            "minor": self.minor,
            "duality_holds": self.duality_holds,
        })
    }
}

fn canonical_translate(v: &[Rat]) -> Vec<Rat> {
    let n = v.len();
    let mut best: Option<Vec<Rat>> = None;
    for r in 0..n {
        let rot: Vec<Rat> = (0..n).map(|i| v[(i + r) % n].clone()).collect();
        if best.as_ref().map_or(true, |b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap_or_default()
}

fn reversal_duality_holds(v: &[Rat]) -> bool {
    let n = v.len();
    let rev: Vec<Rat> = v.iter().rev().cloned().collect();
    (0..n).any(|r| (0..n).all(|i| rev[(i + r) % n] == v[i]))
}

/// The maximal abelian torsion vector of Σ(n,p,q), reconstructed from all
/// nontrivial characters of H₁ ≅ Z/(2n+1)², with the augmentation
/// component zero.
pub fn torsion_vector(params: &KanenobuParams) -> Result<TorsionVector> {
    if !cyclicity_criterion(params) {
        return Err(Error::NonCyclicHomology);
    }
    let pres = presentation_from_white_graph(&kanenobu_white_graph(params));
    let fm = fox_matrix(&pres, 4)?;
    torsion_vector_from_fox(&fm)
}

pub fn torsion_vector_from_fox(fm: &FoxMatrix) -> Result<TorsionVector> {
    let n = fm.group_order;
    let w = fm.size();
    let mut last_err = None;
    for (r, s) in minor_ladder(w) {
        match torsion_with_minor(fm, r, s) {
            Ok(v) => return Ok(v),
            Err(e @ Error::HypothesisViolation { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or(Error::HypothesisViolation { divisor: n, r: w, s: w }))
}

fn torsion_with_minor(fm: &FoxMatrix, r: usize, s: usize) -> Result<TorsionVector> {
    let n = fm.group_order;
    let mut components: HashMap<u64, CyclotomicNumber> = HashMap::new();
    for d in divisors(n) {
        if d == 1 {
            // augmentation: the coefficient sum of the torsion vanishes
            components.insert(1, CyclotomicNumber::zero(1));
        } else {
            components.insert(d, twisted_torsion(fm, d, r, s)?);
        }
    }
    let element: GroupRingElement = assemble_from_characters(n, &components)?;
    debug_assert!(element.coefficient_sum().is_zero());

    let canon_pos = canonical_translate(element.coeffs());
    let neg: Vec<Rat> = element.coeffs().iter().map(|c| -c).collect();
    let canon_neg = canonical_translate(&neg);
    let coeffs = if canon_pos <= canon_neg { canon_pos } else { canon_neg };
    let duality = reversal_duality_holds(&coeffs);
    Ok(TorsionVector {
        group_order: n,
        coeffs,
        sign_resolved: false,
        translation_resolved: false,
        minor: (r, s),
        duality_holds: duality,
    })
}

/// Exact affine growth of the twisted torsion numerator along a family.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub n: u64,
    pub p0: i64,
    pub q0: i64,
    /// (p, q) of each admissible member examined, ascending in p
    pub samples: Vec<(i64, i64)>,
    /// φ(Δ) at the order-(2n+1) character per sample
    pub minor_values: Vec<CyclotomicNumber>,
    /// exact slope of φ(Δ) in p
    pub slope: CyclotomicNumber,
    /// exact constant term
    pub intercept: CyclotomicNumber,
    /// all second differences vanish
    pub exactly_affine: bool,
    /// min and max torsion coefficient per sample, canonical sign candidate
    pub extremes: Vec<(i64, Rat, Rat)>,
    /// least sampled p after which max strictly grows and min strictly falls
    pub monotone_threshold: Option<i64>,
}

/// Sweeps p over the admissible members with p + q = p0 + q0 and fits
/// φ(Δ^{4,4}) at the order-(2n+1) character as an exact affine function of
/// p. The slope must be −(ζ^(n+1) + ζ + 1).
pub fn growth_analysis(n: u64, p0: i64, q0: i64, p_range: (i64, i64)) -> Result<GrowthReport> {
    let (spec, members) = crate::family::enumerate_family(n, p0, q0, p_range)?;
    let _ = spec;
    if members.len() < 3 {
        return Err(Error::InvalidParams(format!(
            "need at least 3 admissible members in {:?}",
            p_range
        )));
    }
    let d = 2 * n + 1;
    let mut samples = Vec::new();
    let mut minor_values = Vec::new();
    let mut extremes = Vec::new();
    for m in &members {
        let params = m.params;
        let pres = presentation_from_white_graph(&kanenobu_white_graph(&params));
        let fm = fox_matrix(&pres, 4)?;
        let minor = fm.minor_determinant(4, 4);
        minor_values.push(character_map(&minor, d)?);
        let tv = torsion_vector_from_fox(&fm)?;
        let min = tv.coeffs.iter().min().cloned().unwrap();
        let max = tv.coeffs.iter().max().cloned().unwrap();
        samples.push((params.p, params.q));
        extremes.push((params.p, min, max));
    }

    // slope from the first two samples, checked against every other pair
    let dp = samples[1].0 - samples[0].0;
    let slope = minor_values[1]
        .sub(&minor_values[0])?
        .scale(&Rat::new(1.into(), dp.into()));
    let intercept = minor_values[0].sub(&slope.scale(&Rat::from_integer(samples[0].0.into())))?;
    let mut exactly_affine = true;
    for (i, v) in minor_values.iter().enumerate() {
        let p = samples[i].0;
        let predicted = slope
            .scale(&Rat::from_integer(p.into()))
            .add(&intercept)?;
        if *v != predicted {
            exactly_affine = false;
        }
    }

    let monotone_threshold = find_monotone_threshold(&extremes);

    Ok(GrowthReport {
        n,
        p0,
        q0,
        samples,
        minor_values,
        slope,
        intercept,
        exactly_affine,
        extremes,
        monotone_threshold,
    })
}

/// Expected slope −(ζ^(n+1) + ζ + 1) in Q(ζ_(2n+1)).
pub fn expected_slope(n: u64) -> CyclotomicNumber {
    let m = 2 * n + 1;
    CyclotomicNumber::zeta_power(m, n as i64 + 1)
        .add(&CyclotomicNumber::zeta_power(m, 1))
        .unwrap()
        .add(&CyclotomicNumber::one(m))
        .unwrap()
        .neg()
}

fn find_monotone_threshold(extremes: &[(i64, Rat, Rat)]) -> Option<i64> {
    // least sampled p so that, from there on, max increases strictly and
    // min decreases strictly
    'outer: for start in 0..extremes.len().saturating_sub(1) {
        for w in extremes[start..].windows(2) {
            let (_, ref min0, ref max0) = w[0];
            let (_, ref min1, ref max1) = w[1];
            if !(max1 > max0 && min1 < min0) {
                continue 'outer;
            }
        }
        return Some(extremes[start].0);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn torsion_vector_k201() {
        let params = KanenobuParams::new(2, 0, 1).unwrap();
        let tv = torsion_vector(&params).unwrap();
        assert_eq!(tv.group_order, 25);
        assert_eq!(tv.coeffs.len(), 25);
        assert!(tv.coefficient_sum().is_zero());
        assert!(tv.duality_holds);
        assert_eq!(tv.minor, (4, 4));
        assert!(!tv.sign_resolved);
        assert!(!tv.translation_resolved);
    }

    #[test]
    fn noncyclic_parameters_rejected() {
        let params = KanenobuParams::new(2, 0, 5).unwrap();
        assert!(matches!(torsion_vector(&params), Err(Error::NonCyclicHomology)));
    }

    #[test]
    fn twisted_torsion_is_real_multiple_of_minor_image() {
        // τ^φ = R · φ(Δ^{4,4}) with R = 1/((ζ−1)(ζ⁻¹−1)) real and nonzero
        let params = KanenobuParams::new(2, 0, 1).unwrap();
        let pres = presentation_from_white_graph(&kanenobu_white_graph(&params));
        let fm = fox_matrix(&pres, 4).unwrap();
        let d = 5;
        let tau = twisted_torsion(&fm, d, 4, 4).unwrap();
        let one = CyclotomicNumber::one(d);
        let r = CyclotomicNumber::zeta_power(d, 1)
            .sub(&one)
            .unwrap()
            .mul(&CyclotomicNumber::zeta_power(d, -1).sub(&one).unwrap())
            .unwrap()
            .inverse()
            .unwrap();
        assert!(r.is_real());
        assert!(!r.is_zero());
        let minor_img = character_map(&fm.minor_determinant(4, 4), d).unwrap();
        assert_eq!(tau, r.mul(&minor_img).unwrap());
    }

    #[test]
    fn growth_slope_matches_closed_form() {
        let report = growth_analysis(2, 0, 1, (1, 20)).unwrap();
        assert!(report.exactly_affine);
        assert_eq!(report.slope, expected_slope(2));
        assert!(report.monotone_threshold.is_some());
    }

    #[test]
    fn empty_family_propagates() {
        assert!(matches!(growth_analysis(4, 0, 3, (1, 20)), Err(Error::EmptyFamily)));
    }

    #[test]
    fn canonical_translate_is_least() {
        let v = vec![rat(3), rat(-1), rat(2)];
        let c = canonical_translate(&v);
        assert_eq!(c, vec![rat(-1), rat(2), rat(3)]);
    }

    #[test]
    fn reversal_duality_detector() {
        assert!(reversal_duality_holds(&[rat(1), rat(2), rat(3), rat(2)]));
        assert!(!reversal_duality_holds(&[rat(1), rat(2), rat(3), ratio(5, 2)]));
    }
}
