//! Families of K(n,p,q) with p+q fixed, the cyclicity criterion for
//! H₁(Σ(n,p,q)), and the generic-braid determinant law.

use num::Integer;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::diagram::{companion_diagram, template_diagram};
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, AbelianStructure};
use crate::presentation::{abelianize, presentation_from_white_graph};
use crate::rational::Int;
use crate::whitegraph::{goeritz_matrix, kanenobu_white_graph, KanenobuParams};

/// H₁(Σ(n,p,q)) is cyclic exactly when gcd(2q+(n+1)p, 2n+1) = 1. The
/// equivalent form gcd(4q+p, 2n+1) = 1 and the Smith normal form of the
/// presentation matrix are checked against it.
pub fn cyclicity_criterion(params: &KanenobuParams) -> bool {
    let n = params.n as i64;
    let (p, q) = (params.p, params.q);
    let m = 2 * n + 1;
    let a = (2 * q + (n + 1) * p).gcd(&m) == 1;
    let b = (4 * q + p).gcd(&m) == 1;
    assert_eq!(a, b, "the two gcd forms of the criterion must agree");
    let g = kanenobu_white_graph(params);
    let snf = smith_normal_form(&abelianize(&presentation_from_white_graph(&g)));
    assert_eq!(a, snf.structure.is_cyclic(), "gcd criterion must match the Smith form");
    a
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilySpec {
    pub n: u64,
    pub p0: i64,
    pub q0: i64,
    /// residues r of q mod 2n+1 with gcd(3r + p0 + q0, 2n+1) = 1
    pub admissible_residues: Vec<u64>,
}

impl FamilySpec {
    pub fn admits_q(&self, q: i64) -> bool {
        let m = (2 * self.n + 1) as i64;
        self.admissible_residues.contains(&(q.rem_euclid(m) as u64))
    }
}

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub params: KanenobuParams,
    pub det: Int,
    pub cyclic: bool,
    pub h1: AbelianStructure,
}

impl FamilyMember {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.params.n,
            "p": self.params.p,
            "q": self.params.q,
            "det": self.det.to_string(),
            "cyclic": self.cyclic,
            "h1_order": self.h1.order().map(|o| o.to_string()),
            "invariant_factors": self.h1.invariant_factors,
        })
    }
}

/// Residue classes of q that keep H₁ cyclic along p + q = p0 + q0, and the
/// admissible members with p in the given inclusive range. Empty exactly
/// when 3 divides both 2n+1 and p0+q0.
pub fn enumerate_family(
    n: u64,
    p0: i64,
    q0: i64,
    p_range: (i64, i64),
) -> Result<(FamilySpec, Vec<FamilyMember>)> {
    if n < 2 {
        return Err(Error::InvalidParams("n must be at least 2".into()));
    }
    let m = (2 * n + 1) as i64;
    let s = p0 + q0;
    let residues: Vec<u64> = (0..m)
        .filter(|r| (3 * r + s).gcd(&m) == 1)
        .map(|r| r as u64)
        .collect();
    if residues.is_empty() {
        debug_assert_eq!(m.gcd(&3), 3);
        debug_assert_eq!(s.rem_euclid(3), 0);
        return Err(Error::EmptyFamily);
    }
    let spec = FamilySpec { n, p0, q0, admissible_residues: residues };
    let mut members = Vec::new();
    for p in p_range.0..=p_range.1 {
        let q = s - p;
        if !spec.admits_q(q) {
            continue;
        }
        let params = KanenobuParams::new(n, p, q)?;
        members.push(family_member(&params));
    }
    Ok((spec, members))
}

pub fn family_member(params: &KanenobuParams) -> FamilyMember {
    let g = kanenobu_white_graph(params);
    let matrix = goeritz_matrix(&g);
    let snf = smith_normal_form(&matrix);
    FamilyMember {
        params: *params,
        det: matrix.abs_det(),
        cyclic: snf.structure.is_cyclic(),
        h1: snf.structure,
    }
}

/// Determinant and H₁ structure of the branched double cover for the
/// template closed over an arbitrary 3-braid. Errors when the closure is
/// not a knot.
pub fn generic_braid_h1(braid: &BraidWord, p: i64, q: i64) -> Result<(Int, AbelianStructure)> {
    let d = template_diagram(braid, p, q)?;
    let g = d.white_graph()?;
    let m = goeritz_matrix(&g);
    let snf = smith_normal_form(&m);
    Ok((m.abs_det(), snf.structure))
}

/// |det| of the companion knot B of a 3-braid.
pub fn companion_determinant(braid: &BraidWord) -> Result<Int> {
    let d = companion_diagram(braid)?;
    Ok(goeritz_matrix(&d.white_graph()?).abs_det())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn criterion_examples() {
        assert!(cyclicity_criterion(&KanenobuParams::new(2, 0, 1).unwrap()));
        assert!(!cyclicity_criterion(&KanenobuParams::new(2, 0, 5).unwrap()));
        assert!(cyclicity_criterion(&KanenobuParams::new(4, 1, 1).unwrap()));
    }

    #[test]
    fn snf_of_reference_matrices() {
        let m = crate::whitegraph::presentation_matrix(&KanenobuParams::new(2, 0, 1).unwrap());
        let snf = smith_normal_form(&m);
        assert_eq!(snf.structure.invariant_factors, vec![1, 1, 1, 25]);
        let m = crate::whitegraph::presentation_matrix(&KanenobuParams::new(2, 0, 5).unwrap());
        let snf = smith_normal_form(&m);
        assert_eq!(snf.structure.invariant_factors, vec![1, 1, 5, 5]);
    }

    #[test]
    fn family_residue_counts() {
        let (spec, _) = enumerate_family(2, 0, 1, (0, 0)).unwrap();
        assert_eq!(spec.admissible_residues.len(), 4); // φ(5)

        let (spec, _) = enumerate_family(4, 0, 1, (0, 0)).unwrap();
        assert_eq!(spec.admissible_residues.len(), 9); // 3²·φ(1)

        assert!(matches!(enumerate_family(4, 0, 3, (0, 0)), Err(Error::EmptyFamily)));
    }

    #[test]
    fn family_members_have_square_determinant() {
        let (_, members) = enumerate_family(2, 0, 1, (-6, 6)).unwrap();
        assert!(!members.is_empty());
        for m in &members {
            assert_eq!(m.det, int(25));
            assert!(m.cyclic);
            assert_eq!(m.h1.invariant_factors, vec![1, 1, 1, 25]);
        }
    }

    #[test]
    fn generic_braid_determinant_law() {
        let beta2 = BraidWord::beta_n(2);
        let (det, _) = generic_braid_h1(&beta2, 0, 1).unwrap();
        assert_eq!(det, int(25));

        let beta3 = BraidWord::beta_n(3);
        for p in -3i64..=3 {
            for q in -3i64..=3 {
                let (det, _) = generic_braid_h1(&beta3, p, q).unwrap();
                assert_eq!(det, int(49), "at p={} q={}", p, q);
            }
        }
    }

    #[test]
    fn generic_braid_rejects_split_closures() {
        let braid = BraidWord::new(3, vec![(2, 1), (2, -1)]).unwrap();
        assert!(matches!(
            generic_braid_h1(&braid, 0, 0),
            Err(Error::NotAKnot { .. })
        ));
    }

    #[test]
    fn determinant_is_square_of_companion() {
        for braid in [
            BraidWord::beta_n(2),
            BraidWord::beta_n(4),
            BraidWord::new(3, vec![(1, 1), (2, 1), (1, 1)]).unwrap(),
            BraidWord::new(3, vec![(1, -1), (2, 1), (1, 1), (2, 1)]).unwrap(),
        ] {
            let Ok(b_det) = companion_determinant(&braid) else { continue };
            for (p, q) in [(0i64, 1i64), (2, -1), (-2, 3)] {
                match generic_braid_h1(&braid, p, q) {
                    Ok((det, _)) => assert_eq!(det, &b_det * &b_det, "braid {:?}", braid),
                    Err(Error::NotAKnot { .. }) => {}
                    Err(e) => panic!("unexpected error {:?}", e),
                }
            }
        }
    }
}
