//! The white-graph presentation of π₁ of the branched double cover, and its
//! abelianisation.
//!
//! Fix a bounded white vertex eᵢ. For every edge from eᵢ to eⱼ record the
//! word (eⱼ eᵢ⁻¹)^ε, for every edge to the unbounded region record eᵢ^(−ε),
//! with ε the sign of the edge; the relator bᵢ concatenates these words in
//! counterclockwise order. One generator and one relator per bounded vertex.

use serde::Serialize;

use crate::matrix::IntMatrix;
use crate::rational::int;
use crate::whitegraph::{SignedWhiteGraph, UNBOUNDED};
use crate::words::FreeWord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generator_count: usize,
    pub relators: Vec<FreeWord>,
}

impl GroupPresentation {
    pub fn new(generator_count: usize, relators: Vec<FreeWord>) -> Self {
        assert_eq!(
            relators.len(),
            generator_count,
            "one relator per generator"
        );
        assert!(relators.iter().all(|r| r.max_generator() <= generator_count));
        GroupPresentation { generator_count, relators }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "generator_count": self.generator_count,
            "relators": self.relators.iter().map(|r| r.blocks().to_vec()).collect::<Vec<_>>(),
        })
    }
}

pub fn presentation_from_white_graph(g: &SignedWhiteGraph) -> GroupPresentation {
    let w = g.vertex_count;
    let mut relators = Vec::with_capacity(w);
    for v in 1..=w {
        let mut word = FreeWord::identity();
        for &ei in &g.rotations[v - 1] {
            let e = &g.edges[ei];
            let other = e.other(v);
            let sign = e.sign as i64;
            if other == v {
                continue; // (e_v e_v^-1)^ε is trivial
            }
            if other == UNBOUNDED {
                word.push(v, -sign);
            } else {
                word = word.concat(&FreeWord::from_blocks(vec![(other, 1), (v, -1)]).pow(sign));
            }
        }
        relators.push(word);
    }
    GroupPresentation::new(w, relators)
}

/// Abelianisation matrix: entry (i, j) is the total exponent of generator
/// eᵢ in relator bⱼ.
pub fn abelianize(p: &GroupPresentation) -> IntMatrix {
    let w = p.generator_count;
    let mut m = IntMatrix::zero(w, w);
    for (j, rel) in p.relators.iter().enumerate() {
        for i in 1..=w {
            m[(i - 1, j)] = int(rel.exponent_sum(i));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whitegraph::{
        kanenobu_white_graph, presentation_matrix, KanenobuParams, WEdge,
    };

    /// Relators b₁..b₄ written out directly from the twist parameters.
    pub fn reference_relators(n: u64, p: i64, q: i64) -> Vec<FreeWord> {
        let n = n as i64;
        let b1 = FreeWord::from_blocks(vec![(2, 1), (1, -2)])
            .concat(&FreeWord::from_blocks(vec![(3, 1), (1, -1)]).pow(p));
        let b2 = FreeWord::from_blocks(vec![(2, -n), (1, 1), (2, -1)])
            .concat(&FreeWord::from_blocks(vec![(4, 1), (2, -1)]).pow(q));
        let b3 = FreeWord::from_blocks(vec![(3, 2), (4, -1)])
            .concat(&FreeWord::from_blocks(vec![(1, 1), (3, -1)]).pow(p));
        let b4 = FreeWord::from_blocks(vec![(4, n)])
            .concat(&FreeWord::from_blocks(vec![(2, 1), (4, -1)]).pow(q))
            .concat(&FreeWord::from_blocks(vec![(4, 1), (3, -1)]));
        vec![b1, b2, b3, b4]
    }

    #[test]
    fn relators_match_reference_at_2_0_0() {
        let params = KanenobuParams::new(2, 0, 0).unwrap();
        let pres = presentation_from_white_graph(&kanenobu_white_graph(&params));
        let expected = reference_relators(2, 0, 0);
        // b₁ = e₂e₁⁻², b₄ = e₄³e₃⁻¹
        assert_eq!(pres.relators[0], FreeWord::from_blocks(vec![(2, 1), (1, -2)]));
        assert_eq!(pres.relators[3], FreeWord::from_blocks(vec![(4, 3), (3, -1)]));
        for (got, want) in pres.relators.iter().zip(&expected) {
            assert!(got.cyclically_equal(want), "got {} want {}", got, want);
        }
    }

    #[test]
    fn relators_match_reference_at_3_2_1() {
        let params = KanenobuParams::new(3, 2, 1).unwrap();
        let pres = presentation_from_white_graph(&kanenobu_white_graph(&params));
        for (got, want) in pres.relators.iter().zip(&reference_relators(3, 2, 1)) {
            assert!(got.cyclically_equal(want), "got {} want {}", got, want);
        }
    }

    #[test]
    fn relators_handle_negative_twists() {
        let params = KanenobuParams::new(2, -3, -2).unwrap();
        let pres = presentation_from_white_graph(&kanenobu_white_graph(&params));
        for (got, want) in pres.relators.iter().zip(&reference_relators(2, -3, -2)) {
            assert!(got.cyclically_equal(want), "got {} want {}", got, want);
        }
    }

    #[test]
    fn single_vertex_single_positive_unbounded_edge() {
        let g = SignedWhiteGraph::new(
            1,
            vec![WEdge { a: 1, b: UNBOUNDED, sign: 1 }],
            vec![vec![0]],
        )
        .unwrap();
        let pres = presentation_from_white_graph(&g);
        assert_eq!(pres.relators, vec![FreeWord::generator(1, -1)]);
    }

    #[test]
    fn abelianized_relators_give_presentation_matrix() {
        for n in 2..=4 {
            for p in [-3i64, -1, 0, 2, 5] {
                for q in [-2i64, 0, 1, 4] {
                    let params = KanenobuParams::new(n, p, q).unwrap();
                    let pres = presentation_from_white_graph(&kanenobu_white_graph(&params));
                    assert_eq!(abelianize(&pres), presentation_matrix(&params));
                }
            }
        }
    }

    #[test]
    fn abelianize_trivial_cases() {
        let g = SignedWhiteGraph::new(
            1,
            vec![WEdge { a: 1, b: UNBOUNDED, sign: 1 }],
            vec![vec![0]],
        )
        .unwrap();
        let m = abelianize(&presentation_from_white_graph(&g));
        assert_eq!(m, IntMatrix::from_rows_i64(&[vec![-1]]));

        // a relator with vanishing exponent sums gives a zero column
        let p = GroupPresentation::new(
            2,
            vec![
                FreeWord::from_blocks(vec![(1, 1), (2, 1), (1, -1), (2, -1)]),
                FreeWord::generator(2, 1),
            ],
        );
        let m = abelianize(&p);
        assert_eq!(m[(0, 0)], int(0));
        assert_eq!(m[(1, 0)], int(0));
        assert_eq!(m[(1, 1)], int(1));
    }
}
