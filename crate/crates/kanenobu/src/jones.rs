//! Jones polynomial via the Kauffman bracket.
//!
//! Two evaluation routes: a brute-force state sum over all smoothings of a
//! diagram, and a Temperley–Lieb transfer evaluation of the two-box
//! template that is polynomial in the crossing number, with twist regions
//! collapsed to iterated transfer steps. Both compute the bracket in the
//! variable A; the Jones polynomial substitutes t = A⁻⁴ after writhe
//! normalisation.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::braid::BraidWord;
use crate::diagram::{template_diagram, Axis, Diagram};
use crate::error::{Error, Result};
use crate::rational::{rat_str, Rat};
use crate::whitegraph::KanenobuParams;

/// Laurent polynomial with rational coefficients; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, Rat::one())
    }

    pub fn monomial(exp: i64, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Rat> {
        &self.coeffs
    }

    pub fn coefficient(&self, exp: i64) -> Rat {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_assign(&mut self, other: &LaurentPoly) {
        for (e, c) in &other.coeffs {
            let v = self.coeffs.entry(*e).or_insert_with(Rat::zero);
            *v += c;
            if v.is_zero() {
                self.coeffs.remove(e);
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let v = out.coeffs.entry(e1 + e2).or_insert_with(Rat::zero);
                *v += c1 * c2;
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn shift(&self, exp: i64) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + exp, c.clone())).collect() }
    }

    pub fn scale(&self, r: &Rat) -> LaurentPoly {
        if r.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * r)).collect() }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.coeffs {
            let mut pw = Rat::one();
            let base = if *e >= 0 { x.clone() } else { Rat::one() / x };
            for _ in 0..e.unsigned_abs() {
                pw *= &base;
            }
            acc += c * &pw;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> LaurentPoly {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| **e != 0)
            .map(|(e, c)| (e - 1, c * &Rat::from_integer((*e).into())))
            .collect();
        LaurentPoly { coeffs }
    }

    /// Substitutes the variable by its inverse.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.coeffs
                .iter()
                .map(|(e, c)| (e.to_string(), serde_json::Value::String(rat_str(c))))
                .collect(),
        )
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{}", rat_str(c))?,
                1 => write!(f, "({})t", rat_str(c))?,
                _ => write!(f, "({})t^{}", rat_str(c), e)?,
            }
        }
        Ok(())
    }
}

/// Loop value −A² − A⁻².
fn delta() -> LaurentPoly {
    LaurentPoly::monomial(2, -Rat::one()).add(&LaurentPoly::monomial(-2, -Rat::one()))
}

fn delta_power(k: usize) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for _ in 0..k {
        out = out.mul(&delta());
    }
    out
}

/// The two smoothings of a crossing, as port pairings weighted A and A⁻¹.
/// The A smoothing rotates the over strand counterclockwise onto the under
/// strand: with over ports {v, v+2} the arcs join v to v+1 and v+2 to v+3.
fn smoothings(over: Axis) -> [([(u8, u8); 2], i64); 2] {
    let v = match over {
        Axis::A02 => 0u8,
        Axis::A13 => 1,
    };
    let a_pairs = [(v, (v + 1) % 4), ((v + 2) % 4, (v + 3) % 4)];
    let b_pairs = [((v + 1) % 4, (v + 2) % 4), ((v + 3) % 4, v)];
    [(a_pairs, 1), (b_pairs, -1)]
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Kauffman bracket by summation over all 2^C smoothing states, normalised
/// so the unknot has bracket 1.
pub fn bracket_state_sum(d: &Diagram) -> LaurentPoly {
    let n = d.crossing_count();
    let mut total = LaurentPoly::zero();
    for state in 0u64..(1 << n) {
        let mut uf = UnionFind::new(4 * n);
        let mut a_exp = 0i64;
        for c in 0..n {
            let [(a_pairs, _), (b_pairs, _)] = smoothings(d.over_axis(c));
            let pairs = if state >> c & 1 == 0 {
                a_exp += 1;
                a_pairs
            } else {
                a_exp -= 1;
                b_pairs
            };
            for (x, y) in pairs {
                uf.union(4 * c + x as usize, 4 * c + y as usize);
            }
        }
        for &((c1, k1), (c2, k2)) in d.arcs() {
            uf.union(4 * c1 + k1 as usize, 4 * c2 + k2 as usize);
        }
        let mut roots = std::collections::HashSet::new();
        for i in 0..4 * n {
            let r = uf.find(i);
            roots.insert(r);
        }
        let loops = roots.len();
        total.add_assign(&delta_power(loops - 1).shift(a_exp));
    }
    total
}

// ---------------------------------------------------------------------------
// planar tangle states for the transfer evaluation

/// A crossingless perfect matching of the boundary points of a tangle;
/// pairs are stored sorted. At most eight boundary points are ever needed.
pub type Matching = Vec<(u8, u8)>;

fn normalize(mut m: Matching) -> Matching {
    for p in m.iter_mut() {
        if p.0 > p.1 {
            std::mem::swap(&mut p.0, &mut p.1);
        }
    }
    m.sort_unstable();
    m
}

/// Formal linear combination of planar matchings with bracket coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleState {
    pub terms: BTreeMap<Matching, LaurentPoly>,
}

impl TangleState {
    pub fn single(m: Matching) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(normalize(m), LaurentPoly::one());
        TangleState { terms }
    }

    fn add_term(&mut self, m: Matching, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let key = normalize(m);
        let e = self.terms.entry(key.clone()).or_insert_with(LaurentPoly::zero);
        e.add_assign(&c);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }
}

/// Identity (k,k)-tangle: west points 0..k pair with east points k..2k on
/// the same rows.
fn identity_tangle(k: u8) -> Matching {
    (0..k).map(|r| (r, r + k)).collect()
}

/// Cup-cap tangle joining rows u and u+1 on both sides.
fn cupcap_tangle(k: u8, u: u8) -> Matching {
    let mut m = Vec::new();
    m.push((u, u + 1));
    m.push((u + k, u + 1 + k));
    for r in 0..k {
        if r != u && r != u + 1 {
            m.push((r, r + k));
        }
    }
    normalize(m)
}

/// Glues two (k,k)-tangle matchings east-to-west, counting closed loops.
fn compose_matchings(k: u8, a: &Matching, b: &Matching) -> (Matching, usize) {
    // nodes: 0..k a-west, k..2k shared middle, 2k..3k b-east
    let n = 3 * k as usize;
    let mut uf = UnionFind::new(n);
    for &(x, y) in a {
        uf.union(x as usize, y as usize);
    }
    for &(x, y) in b {
        // b's west points land on the shared middle, its east points on the
        // composite's east; both shift by k
        uf.union((x + k) as usize, (y + k) as usize);
    }
    // boundary nodes of the composite: a-west and b-east
    let boundary: Vec<usize> = (0..k as usize).chain(2 * k as usize..n).collect();
    let mut reps: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for &p in &boundary {
        reps.entry(uf.find(p)).or_default().push(p);
    }
    let mut pairs = Vec::new();
    for (_, pts) in reps.iter() {
        assert_eq!(pts.len(), 2, "tangle composition must pair boundary points");
        let to_label = |p: usize| -> u8 {
            if p < k as usize {
                p as u8
            } else {
                (p - 2 * k as usize + k as usize) as u8
            }
        };
        pairs.push((to_label(pts[0]), to_label(pts[1])));
    }
    // closed loops: middle classes not reaching the boundary
    let mut loop_roots = std::collections::HashSet::new();
    let boundary_roots: std::collections::HashSet<usize> =
        boundary.iter().map(|&p| uf.find(p)).collect();
    for p in k as usize..2 * k as usize {
        let r = uf.find(p);
        if !boundary_roots.contains(&r) {
            loop_roots.insert(r);
        }
    }
    (normalize(pairs), loop_roots.len())
}

/// Applies one braid letter to a (k,k)-tangle state by composing on the
/// east side with A·(pass) + A^{∓1}·(cup-cap).
fn apply_letter(k: u8, state: &TangleState, upper_row: u8, positive: bool) -> TangleState {
    let id = identity_tangle(k);
    let cc = cupcap_tangle(k, upper_row);
    let (a_coef, b_coef) = if positive { (1i64, -1i64) } else { (-1, 1) };
    let mut out = TangleState { terms: BTreeMap::new() };
    for (m, c) in &state.terms {
        for (tangle, shift) in [(&id, a_coef), (&cc, b_coef)] {
            let (composed, loops) = compose_matchings(k, m, tangle);
            let coef = c.shift(shift).mul(&delta_power(loops));
            out.add_term(composed, coef);
        }
    }
    out
}

/// Bracket state of a braid word as a (k,k)-tangle.
pub fn braid_tangle_state(word: &BraidWord) -> TangleState {
    let k = word.strands() as u8;
    let mut state = TangleState::single(identity_tangle(k));
    for &(i, s) in word.letters() {
        let upper = k - 1 - i as u8;
        state = apply_letter(k, &state, upper, s > 0);
    }
    state
}

/// Twist-region transfer: coefficients (pass, cupcap) of the bracket of
/// |t| half twists with the sign of t.
fn band_state(t: i64) -> (LaurentPoly, LaurentPoly) {
    let mut a = LaurentPoly::one();
    let mut b = LaurentPoly::zero();
    for _ in 0..t.unsigned_abs() {
        if t >= 0 {
            // (a, b) → (A·a, A⁻¹·a − A⁻³·b)
            let new_a = a.shift(1);
            let new_b = a.shift(-1).sub(&b.shift(-3));
            a = new_a;
            b = new_b;
        } else {
            let new_a = a.shift(-1);
            let new_b = a.shift(1).sub(&b.shift(3));
            a = new_a;
            b = new_b;
        }
    }
    (a, b)
}

/// Boundary labels for the template gluing.
const T1L: u8 = 0;
const T2L: u8 = 1;
const T3L: u8 = 2;
const B1L: u8 = 3;
const B2L: u8 = 4;
const B3L: u8 = 5;
const T1R: u8 = 6;
const T2R: u8 = 7;
const T3R: u8 = 8;
const B1R: u8 = 9;
const B2R: u8 = 10;
const B3R: u8 = 11;

/// Kauffman bracket of the closed template via tangle gluing: the two box
/// states are 5-dimensional, the bands contribute two matchings each, and
/// the closure arcs join the extreme rows.
pub fn bracket_template(braid: &BraidWord, p: i64, q: i64) -> Result<LaurentPoly> {
    if braid.strands() != 3 {
        return Err(Error::InvalidParams("template bracket needs a 3-strand braid".into()));
    }
    let bot = braid_tangle_state(braid);
    let top = braid_tangle_state(&braid.rotated_inverse());
    let (lp_pass, lp_cc) = band_state(p);
    let (rq_pass, rq_cc) = band_state(q);

    // box matchings use local labels west 0,1,2 / east 3,4,5 by row;
    // translate into the 12 shared boundary points
    let translate = |m: &Matching, west: [u8; 3], east: [u8; 3]| -> Matching {
        m.iter()
            .map(|&(x, y)| {
                let f = |p: u8| if p < 3 { west[p as usize] } else { east[p as usize - 3] };
                (f(x), f(y))
            })
            .collect()
    };

    let left_variants = [
        (vec![(T1L, B3L), (T2L, T3L), (B2L, B1L)], lp_pass),
        (vec![(T1L, B3L), (T2L, B2L), (T3L, B1L)], lp_cc),
    ];
    let right_variants = [
        (vec![(T1R, B3R), (T3R, T2R), (B1R, B2R)], rq_pass),
        (vec![(T1R, B3R), (T3R, B1R), (T2R, B2R)], rq_cc),
    ];

    let mut total = LaurentPoly::zero();
    for (bm, bc) in &bot.terms {
        let bm12 = translate(bm, [B1L, B2L, B3L], [B1R, B2R, B3R]);
        for (tm, tc) in &top.terms {
            let tm12 = translate(tm, [T1L, T2L, T3L], [T1R, T2R, T3R]);
            for (lm, lc) in &left_variants {
                if lc.is_zero() {
                    continue;
                }
                for (rm, rc) in &right_variants {
                    if rc.is_zero() {
                        continue;
                    }
                    let mut uf = UnionFind::new(12);
                    for pairs in [&bm12, &tm12, lm, rm] {
                        for &(x, y) in pairs.iter() {
                            uf.union(x as usize, y as usize);
                        }
                    }
                    let mut roots = std::collections::HashSet::new();
                    for i in 0..12 {
                        let r = uf.find(i);
                        roots.insert(r);
                    }
                    let loops = roots.len();
                    let term = bc.mul(tc).mul(lc).mul(rc).mul(&delta_power(loops - 1));
                    total.add_assign(&term);
                }
            }
        }
    }
    Ok(total)
}

/// Jones polynomial in t from a bracket in A and the writhe:
/// V = (−A)^(−3w)·bracket, t = A⁻⁴. Errors when exponents are not all
/// multiples of four, which would indicate a link rather than a knot.
pub fn jones_from_bracket(bracket: &LaurentPoly, writhe: i64) -> Result<LaurentPoly> {
    let sign = if (3 * writhe) % 2 == 0 { Rat::one() } else { -Rat::one() };
    let normalized = bracket.shift(-3 * writhe).scale(&sign);
    let mut coeffs = BTreeMap::new();
    for (e, c) in normalized.coeffs() {
        if e % 4 != 0 {
            return Err(Error::ShapeMismatch(format!(
                "bracket exponent {} is not a multiple of 4",
                e
            )));
        }
        coeffs.insert(-e / 4, c.clone());
    }
    Ok(LaurentPoly { coeffs })
}

/// Jones polynomial of K_β(p,q) by the transfer evaluation.
pub fn jones_template(braid: &BraidWord, p: i64, q: i64) -> Result<LaurentPoly> {
    let d = template_diagram(braid, p, q)?;
    let w = d.writhe()?;
    let bracket = bracket_template(braid, p, q)?;
    jones_from_bracket(&bracket, w)
}

/// Jones polynomial of K(n,p,q).
pub fn jones_polynomial(params: &KanenobuParams) -> Result<LaurentPoly> {
    jones_template(&BraidWord::beta_n(params.n), params.p, params.q)
}

/// Jones polynomial of an arbitrary diagram by the exponential state sum.
pub fn jones_of_diagram(d: &Diagram) -> Result<LaurentPoly> {
    let w = d.writhe()?;
    jones_from_bracket(&bracket_state_sum(d), w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{figure_eight, kinked_unknot, trefoil_left, trefoil_right};
    use crate::rational::rat;
    use num::Signed;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(e, c) in terms {
            p.add_assign(&LaurentPoly::monomial(e, rat(c)));
        }
        p
    }

    #[test]
    fn kinked_unknot_is_trivial() {
        assert_eq!(jones_of_diagram(&kinked_unknot()).unwrap(), LaurentPoly::one());
        assert_eq!(
            jones_of_diagram(&kinked_unknot().mirror()).unwrap(),
            LaurentPoly::one()
        );
    }

    #[test]
    fn trefoil_values() {
        // left-handed: −t⁻⁴ + t⁻³ + t⁻¹, right-handed its mirror
        assert_eq!(
            jones_of_diagram(&trefoil_left()).unwrap(),
            poly(&[(-4, -1), (-3, 1), (-1, 1)])
        );
        assert_eq!(
            jones_of_diagram(&trefoil_right()).unwrap(),
            poly(&[(4, -1), (3, 1), (1, 1)])
        );
    }

    #[test]
    fn figure_eight_value() {
        assert_eq!(
            jones_of_diagram(&figure_eight()).unwrap(),
            poly(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)])
        );
    }

    #[test]
    fn transfer_agrees_with_state_sum() {
        for (n, p, q) in [(2u64, 0i64, 0i64), (2, 0, 1), (2, 1, 1), (2, -1, 2), (3, 1, 0)] {
            let braid = BraidWord::beta_n(n);
            let d = template_diagram(&braid, p, q).unwrap();
            assert!(d.crossing_count() <= 12);
            let via_sum = jones_of_diagram(&d).unwrap();
            let via_transfer = jones_template(&braid, p, q).unwrap();
            assert_eq!(via_sum, via_transfer, "n={} p={} q={}", n, p, q);
        }
    }

    #[test]
    fn determinant_at_minus_one() {
        for (n, p, q) in [(2u64, 0i64, 1i64), (2, 2, -1), (3, 1, 1)] {
            let v = jones_polynomial(&KanenobuParams::new(n, p, q).unwrap()).unwrap();
            let det = v.eval(&rat(-1)).abs();
            let expected = rat((2 * n as i64 + 1) * (2 * n as i64 + 1));
            assert_eq!(det, expected, "n={} p={} q={}", n, p, q);
        }
    }

    #[test]
    fn twist_transfer_invariance() {
        // V(K(n,p,q)) = V(K(n,p+1,q−1))
        for n in [2u64, 3] {
            let v0 = jones_polynomial(&KanenobuParams::new(n, 0, 1).unwrap()).unwrap();
            let v1 = jones_polynomial(&KanenobuParams::new(n, 1, 0).unwrap()).unwrap();
            assert_eq!(v0, v1);
        }
    }

    #[test]
    fn derivative_product_rule() {
        let f = poly(&[(-2, 3), (1, -1), (4, 2)]);
        let g = poly(&[(-1, 5), (0, 2), (3, 7)]);
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mirror_inverts_variable() {
        let v = jones_of_diagram(&trefoil_right()).unwrap();
        let vm = jones_of_diagram(&trefoil_left()).unwrap();
        assert_eq!(v.invert_variable(), vm);
    }
}
