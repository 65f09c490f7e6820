//! Signed reduced white graphs of chessboard-colored knot diagrams.
//!
//! Vertices are the bounded white regions, numbered 1..=w; vertex 0 stands
//! for the unbounded region, which is removed from the graph but keeps its
//! edges. Every edge remembers the sign of its crossing, and every bounded
//! vertex carries the counterclockwise cyclic order of its edges.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rational::int;

/// Index of the (removed) unbounded white region.
pub const UNBOUNDED: usize = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WEdge {
    pub a: usize,
    pub b: usize,
    pub sign: i8,
}

impl WEdge {
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedWhiteGraph {
    /// Number of bounded white vertices (e₁..e_w).
    pub vertex_count: usize,
    pub edges: Vec<WEdge>,
    /// rotations[v-1] lists edge indices counterclockwise around vertex v.
    pub rotations: Vec<Vec<usize>>,
}

impl SignedWhiteGraph {
    pub fn new(vertex_count: usize, edges: Vec<WEdge>, rotations: Vec<Vec<usize>>) -> Result<Self> {
        if rotations.len() != vertex_count {
            return Err(Error::ShapeMismatch(format!(
                "{} rotation lists for {} vertices",
                rotations.len(),
                vertex_count
            )));
        }
        for e in &edges {
            if e.a > vertex_count || e.b > vertex_count {
                return Err(Error::IndexOutOfRange(format!("edge ({}, {})", e.a, e.b)));
            }
            if e.sign != 1 && e.sign != -1 {
                return Err(Error::InvalidParams("edge sign must be ±1".into()));
            }
        }
        for (vi, rot) in rotations.iter().enumerate() {
            let v = vi + 1;
            let expected: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.touches(v))
                .map(|(i, _)| i)
                .collect();
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            let mut exp_sorted = expected;
            exp_sorted.sort_unstable();
            // self-loops would appear twice in a rotation; none of our graphs have them
            if sorted != exp_sorted {
                return Err(Error::ShapeMismatch(format!(
                    "rotation at vertex {} does not list its incident edges exactly once",
                    v
                )));
            }
        }
        Ok(SignedWhiteGraph { vertex_count, edges, rotations })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sum of edge signs between v and u (v ≠ u, either may be UNBOUNDED).
    pub fn signed_count(&self, v: usize, u: usize) -> i64 {
        self.edges
            .iter()
            .filter(|e| (e.a == v && e.b == u) || (e.a == u && e.b == v))
            .map(|e| e.sign as i64)
            .sum()
    }

    /// Total signed degree of v, unbounded edges included, self-loops excluded.
    pub fn signed_degree(&self, v: usize) -> i64 {
        self.edges
            .iter()
            .filter(|e| e.touches(v) && e.a != e.b)
            .map(|e| e.sign as i64)
            .sum()
    }

    /// Applies a permutation to the bounded vertices: map[v] is the new name
    /// of vertex v (map[0] must be 0).
    pub fn relabel(&self, map: &[usize]) -> SignedWhiteGraph {
        assert_eq!(map[UNBOUNDED], UNBOUNDED);
        let edges: Vec<WEdge> = self
            .edges
            .iter()
            .map(|e| WEdge { a: map[e.a], b: map[e.b], sign: e.sign })
            .collect();
        let mut rotations = vec![Vec::new(); self.vertex_count];
        for v in 1..=self.vertex_count {
            rotations[map[v] - 1] = self.rotations[v - 1].clone();
        }
        SignedWhiteGraph { vertex_count: self.vertex_count, edges, rotations }
    }

    /// Rotation of v as (neighbor, sign) pairs, for comparisons up to a
    /// cyclic shift.
    pub fn rotation_profile(&self, v: usize) -> Vec<(usize, i8)> {
        self.rotations[v - 1]
            .iter()
            .map(|&ei| {
                let e = &self.edges[ei];
                (e.other(v), e.sign)
            })
            .collect()
    }

    /// True when the two graphs have the same labeled edges and the same
    /// rotation at every vertex up to a cyclic shift.
    pub fn same_rotation_graph(&self, other: &SignedWhiteGraph) -> bool {
        if self.vertex_count != other.vertex_count {
            return false;
        }
        let key = |g: &SignedWhiteGraph| {
            let mut m: Vec<(usize, usize, i8)> =
                g.edges.iter().map(|e| (e.a.min(e.b), e.a.max(e.b), e.sign)).collect();
            m.sort_unstable();
            m
        };
        if key(self) != key(other) {
            return false;
        }
        (1..=self.vertex_count).all(|v| {
            let a = self.rotation_profile(v);
            let b = other.rotation_profile(v);
            cyclically_equal(&a, &b)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "vertex_count": self.vertex_count,
            "unbounded_vertex": UNBOUNDED,
            "edges": self.edges.iter().map(|e| serde_json::json!([e.a, e.b, e.sign])).collect::<Vec<_>>(),
            "rotations": self.rotations,
        })
    }
}

fn cyclically_equal<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    if n == 0 {
        return true;
    }
    (0..n).any(|r| (0..n).all(|i| a[i] == b[(i + r) % n]))
}

/// Twist-parameter triple (n, p, q) with n ≥ 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct KanenobuParams {
    pub n: u64,
    pub p: i64,
    pub q: i64,
}

impl KanenobuParams {
    pub fn new(n: u64, p: i64, q: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!(
                "n must be at least 2 (got {}); ζ^(n+1)+ζ+1 vanishes at n=1",
                n
            )));
        }
        Ok(KanenobuParams { n, p, q })
    }

    pub fn modulus(&self) -> u64 {
        2 * self.n + 1
    }

    /// |H₁| of the branched double cover.
    pub fn h1_order(&self) -> u64 {
        self.modulus() * self.modulus()
    }
}

/// The signed reduced white graph of the K(n,p,q) diagram.
///
/// Vertices: e₁ (flanks the p twists, one positive edge to the unbounded
/// region), e₂ (n positive unbounded edges), e₃ (negative mirror of e₁),
/// e₄ (n negative unbounded edges). Rotations are counterclockwise with the
/// starting edges chosen so the group presentation comes out in the shape
/// b₁ = e₂e₁⁻²(e₃e₁⁻¹)^p, b₂ = e₂⁻ⁿe₁e₂⁻¹(e₄e₂⁻¹)^q,
/// b₃ = e₃²e₄⁻¹(e₁e₃⁻¹)^p, b₄ = e₄ⁿ(e₂e₄⁻¹)^q e₄e₃⁻¹.
pub fn kanenobu_white_graph(params: &KanenobuParams) -> SignedWhiteGraph {
    let n = params.n as usize;
    let (p, q) = (params.p, params.q);
    let ps = if p >= 0 { 1 } else { -1 };
    let qs = if q >= 0 { 1 } else { -1 };

    let mut edges = Vec::new();
    let mut push = |a, b, sign| {
        edges.push(WEdge { a, b, sign });
        edges.len() - 1
    };

    let e12 = push(1, 2, 1);
    let e34 = push(3, 4, -1);
    let e1u = push(1, UNBOUNDED, 1);
    let e3u = push(3, UNBOUNDED, -1);
    let e2u: Vec<usize> = (0..n).map(|_| push(2, UNBOUNDED, 1)).collect();
    let e4u: Vec<usize> = (0..n).map(|_| push(4, UNBOUNDED, -1)).collect();
    let e13: Vec<usize> = (0..p.unsigned_abs()).map(|_| push(1, 3, ps)).collect();
    let e24: Vec<usize> = (0..q.unsigned_abs()).map(|_| push(2, 4, qs)).collect();

    let rot1: Vec<usize> = [e12, e1u].into_iter().chain(e13.iter().copied()).collect();
    let rot2: Vec<usize> = e2u.iter().copied().chain([e12]).chain(e24.iter().copied()).collect();
    let rot3: Vec<usize> = [e3u, e34].into_iter().chain(e13.iter().copied()).collect();
    let rot4: Vec<usize> = e4u.iter().copied().chain(e24.iter().copied()).chain([e34]).collect();

    SignedWhiteGraph::new(4, edges, vec![rot1, rot2, rot3, rot4])
        .expect("kanenobu white graph is well formed")
}

/// Goeritz matrix of a reduced white graph, in the convention that matches
/// the presentation matrix of H₁ obtained by abelianising the white-graph
/// relators: entry (i,j) for i≠j is the signed count of eᵢ–eⱼ edges and
/// entry (i,i) is minus the total signed degree of eᵢ.
pub fn goeritz_matrix(g: &SignedWhiteGraph) -> IntMatrix {
    assert!(g.vertex_count >= 1, "need at least one bounded vertex");
    let w = g.vertex_count;
    let mut m = IntMatrix::zero(w, w);
    for i in 1..=w {
        for j in 1..=w {
            if i == j {
                m[(i - 1, j - 1)] = int(-g.signed_degree(i));
            } else {
                m[(i - 1, j - 1)] = int(g.signed_count(i, j));
            }
        }
    }
    m
}

/// Reference presentation matrix for H₁(Σ(n,p,q)), rows and columns indexed
/// by e₁..e₄.
pub fn presentation_matrix(params: &KanenobuParams) -> IntMatrix {
    let n = params.n as i64;
    let (p, q) = (params.p, params.q);
    IntMatrix::from_rows_i64(&[
        vec![-p - 2, 1, p, 0],
        vec![1, -q - n - 1, 0, q],
        vec![p, 0, -p + 2, -1],
        vec![0, q, -1, -q + n + 1],
    ])
}

/// Canonically relabels a 4-vertex Kanenobu-shaped white graph so that the
/// vertex with one positive unbounded edge is e₁, the one with n ≥ 2 positive
/// unbounded edges is e₂, and their negative mirrors are e₃ and e₄.
pub fn canonical_kanenobu_labeling(g: &SignedWhiteGraph) -> Result<SignedWhiteGraph> {
    if g.vertex_count != 4 {
        return Err(Error::ShapeMismatch(format!(
            "expected 4 bounded white regions, found {}",
            g.vertex_count
        )));
    }
    let mut map = vec![0usize; 5];
    for v in 1..=4 {
        let pos = g
            .edges
            .iter()
            .filter(|e| e.touches(v) && e.other(v) == UNBOUNDED && e.sign == 1)
            .count();
        let neg = g
            .edges
            .iter()
            .filter(|e| e.touches(v) && e.other(v) == UNBOUNDED && e.sign == -1)
            .count();
        let label = match (pos, neg) {
            (1, 0) => 1,
            (p, 0) if p >= 2 => 2,
            (0, 1) => 3,
            (0, n) if n >= 2 => 4,
            _ => {
                return Err(Error::ShapeMismatch(format!(
                    "vertex {} has unbounded signature ({}, {})",
                    v, pos, neg
                )))
            }
        };
        map[v] = label;
    }
    let mut seen = map[1..].to_vec();
    seen.sort_unstable();
    if seen != vec![1, 2, 3, 4] {
        return Err(Error::ShapeMismatch("ambiguous white-graph labeling".into()));
    }
    Ok(g.relabel(&map))
}
