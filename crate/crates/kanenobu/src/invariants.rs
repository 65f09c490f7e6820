//! Knot signature via the Goeritz form with its correction term, the
//! Casson-Walker invariant of the branched double cover, and the derived
//! correction-term profiles.

use num::{Signed, Zero};

use crate::diagram::{build_kanenobu_diagram, Diagram};
use crate::error::Result;
use crate::jones::{jones_of_diagram, jones_polynomial, LaurentPoly};
use crate::matrix::IntMatrix;
use crate::rational::{rat, rat_str, Rat};
use crate::torsion::torsion_vector;
use crate::whitegraph::{goeritz_matrix, KanenobuParams};

/// Signature of a symmetric integer matrix by congruent diagonalisation
/// over Q.
pub fn symmetric_signature(m: &IntMatrix) -> i64 {
    assert!(m.is_square());
    let n = m.rows();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| Rat::from_integer(m[(i, j)].clone())).collect())
        .collect();
    for i in 0..n {
        for j in 0..n {
            assert_eq!(a[i][j], a[j][i], "matrix must be symmetric");
        }
    }
    let mut sig = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                continue; // row and column k vanish from here on
            };
            // fold row/col i into k, choosing the sign that makes the pivot
            // nonzero
            let sign = if (&a[k][k] + rat(2) * &a[i][k] + &a[i][i]).is_zero() {
                -Rat::one()
            } else {
                Rat::one()
            };
            for j in 0..n {
                let t = &sign * &a[i][j];
                a[k][j] += t;
            }
            for r in 0..n {
                let t = &sign * &a[r][i];
                a[r][k] += t;
            }
        }
        if a[k][k].is_zero() {
            continue;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in 0..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
            for r in 0..n {
                let t = &f * &a[r][k];
                a[r][i] -= t;
            }
        }
        sig += if pivot.is_positive() { 1 } else { -1 };
    }
    sig
}

use num::One;

/// Knot signature from the white checkerboard surface: the signature of the
/// symmetric Goeritz form corrected by the signed count of crossings of the
/// second type.
pub fn signature_of_diagram(d: &Diagram) -> Result<i64> {
    let analysis = d.analyze()?;
    let g = d.white_graph()?;
    // the classical Goeritz form negates the presentation-matrix convention
    let m = goeritz_matrix(&g);
    let mut neg = IntMatrix::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            neg[(i, j)] = -m[(i, j)].clone();
        }
    }
    let sig = symmetric_signature(&neg);
    let mu: i64 = (0..d.crossing_count())
        .filter(|&c| analysis.is_type_ii(c))
        .map(|c| analysis.sign[c] as i64)
        .sum();
    Ok(sig - mu)
}

pub fn signature(params: &KanenobuParams) -> Result<i64> {
    signature_of_diagram(&build_kanenobu_diagram(params))
}

/// Casson-Walker invariant of the branched double cover:
/// λ = −V'(−1) / (6·V(−1)) + σ/4.
pub fn casson_walker(params: &KanenobuParams) -> Result<Rat> {
    let v = jones_polynomial(params)?;
    let sigma = signature(params)?;
    casson_walker_from_parts(&v, sigma)
}

pub fn casson_walker_of_diagram(d: &Diagram) -> Result<Rat> {
    let v = jones_of_diagram(d)?;
    let sigma = signature_of_diagram(d)?;
    casson_walker_from_parts(&v, sigma)
}

fn casson_walker_from_parts(v: &LaurentPoly, sigma: i64) -> Result<Rat> {
    let minus_one = rat(-1);
    let value = v.eval(&minus_one);
    assert!(!value.is_zero(), "V(-1) is the determinant, never zero for these knots");
    let deriv = v.derivative().eval(&minus_one);
    Ok(-deriv / (rat(6) * value) + Rat::new(sigma.into(), 4.into()))
}

/// Correction-term profile of Σ(n,p,q): the multiset 2τ(·,𝔱,1) − λ over all
/// Spin^c structures, for both torsion sign candidates. Assumes the cover
/// is an L-space; that hypothesis is recorded, not verified.
#[derive(Debug, Clone)]
pub struct DInvariantProfile {
    pub group_order: u64,
    /// sorted values for the canonical torsion sign
    pub values_pos: Vec<Rat>,
    /// sorted values for the opposite sign
    pub values_neg: Vec<Rat>,
    pub lambda: Rat,
    pub l_space_assumed: bool,
    pub duality_holds: bool,
}

impl DInvariantProfile {
    pub fn max_pos(&self) -> &Rat {
        self.values_pos.last().unwrap()
    }

    pub fn min_pos(&self) -> &Rat {
        self.values_pos.first().unwrap()
    }

    pub fn max_neg(&self) -> &Rat {
        self.values_neg.last().unwrap()
    }

    pub fn min_neg(&self) -> &Rat {
        self.values_neg.first().unwrap()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "group_order": self.group_order,
            "lambda": rat_str(&self.lambda),
            "values_pos": self.values_pos.iter().map(rat_str).collect::<Vec<_>>(),
            "values_neg": self.values_neg.iter().map(rat_str).collect::<Vec<_>>(),
            "l_space_assumed": self.l_space_assumed,
            "duality_holds": self.duality_holds,
        })
    }
}

pub fn d_invariant_profile(params: &KanenobuParams) -> Result<DInvariantProfile> {
    let tv = torsion_vector(params)?;
    let lambda = casson_walker(params)?;
    let (pos, neg) = tv.sign_candidates();
    let to_values = |cs: &[Rat]| -> Vec<Rat> {
        let mut v: Vec<Rat> = cs.iter().map(|c| rat(2) * c - &lambda).collect();
        v.sort();
        v
    };
    Ok(DInvariantProfile {
        group_order: tv.group_order,
        values_pos: to_values(&pos),
        values_neg: to_values(&neg),
        lambda,
        l_space_assumed: true,
        duality_holds: tv.duality_holds,
    })
}
