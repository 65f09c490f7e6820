//! The rational group ring Q[Z/N], its character decomposition
//! Q[Z/N] ≅ ⊕_{d|N} Q(ζ_d), and the inverse of that decomposition.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::Zero;

use crate::cyclotomic::{divisors, euler_phi, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Element of Q[Z/N]: coefficient k belongs to g^k for the distinguished
/// generator g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    modulus: u64,
    coeffs: Vec<Rat>,
}

impl GroupRingElement {
    pub fn zero(n: u64) -> Self {
        GroupRingElement { modulus: n, coeffs: vec![Rat::zero(); n as usize] }
    }

    pub fn one(n: u64) -> Self {
        GroupRingElement::monomial(n, 0, Rat::from_integer(1.into()))
    }

    /// c·g^k
    pub fn monomial(n: u64, k: i64, c: Rat) -> Self {
        let mut e = GroupRingElement::zero(n);
        let k = k.rem_euclid(n as i64) as usize;
        e.coeffs[k] = c;
        e
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        GroupRingElement { modulus: coeffs.len() as u64, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coefficient_sum(&self) -> Rat {
        self.coeffs.iter().sum()
    }

    fn check_modulus(&self, other: &GroupRingElement) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { expected: self.modulus, found: other.modulus });
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_modulus(other)?;
        Ok(GroupRingElement {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_modulus(other)?;
        Ok(GroupRingElement {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Convolution product.
    pub fn mul(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.check_modulus(other)?;
        let n = self.modulus as usize;
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[(i + j) % n] += a * b;
            }
        }
        Ok(GroupRingElement { modulus: self.modulus, coeffs: out })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(crate::rational::rat_str).collect()
    }
}

/// The ring map Q[Z/N] → Q(ζ_d) taking g to ζ_d, for a divisor d of N.
/// d = 1 is the augmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterMap {
    pub group_order: u64,
    pub divisor: u64,
}

impl CharacterMap {
    pub fn new(group_order: u64, divisor: u64) -> Result<Self> {
        if divisor == 0 || group_order % divisor != 0 {
            return Err(Error::InvalidParams(format!(
                "{} does not divide group order {}",
                divisor, group_order
            )));
        }
        Ok(CharacterMap { group_order, divisor })
    }

    pub fn apply(&self, e: &GroupRingElement) -> Result<CyclotomicNumber> {
        if e.modulus() != self.group_order {
            return Err(Error::ModulusMismatch {
                expected: self.group_order,
                found: e.modulus(),
            });
        }
        let mut acc = CyclotomicNumber::zero(self.divisor);
        for (k, c) in e.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = CyclotomicNumber::zeta_power(self.divisor, k as i64).scale(c);
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

pub fn character_map(e: &GroupRingElement, divisor: u64) -> Result<CyclotomicNumber> {
    CharacterMap::new(e.modulus(), divisor)?.apply(e)
}

/// Dense rational matrix with exact Gauss-Jordan inversion; only used for
/// the character-assembly system.
struct RatMatrix {
    n: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    fn zero(n: usize) -> Self {
        RatMatrix { n, data: vec![Rat::zero(); n * n] }
    }

    fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.n + j] = v;
    }

    fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = RatMatrix::zero(n);
        for i in 0..n {
            inv.set(i, i, Rat::from_integer(1.into()));
        }
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                    inv.data.swap(col * n + j, pivot_row * n + j);
                }
            }
            let p = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] /= &p;
                inv.data[col * n + j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for j in 0..n {
                    let t = &f * &a[col * n + j];
                    a[r * n + j] -= t;
                    let t = &f * &inv.data[col * n + j];
                    inv.data[r * n + j] -= t;
                }
            }
        }
        Some(inv)
    }

    fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.n)
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.n {
                    if !v[j].is_zero() && !self.at(i, j).is_zero() {
                        s += self.at(i, j) * &v[j];
                    }
                }
                s
            })
            .collect()
    }
}

/// Rows of the decomposition map in a fixed order: for each divisor d of N
/// (ascending) and each power-basis slot t < φ(d), the row sends x to the
/// t-th coordinate of Σ_k x_k ζ_d^(k mod d).
fn decomposition_rows(n: u64) -> (Vec<(u64, usize)>, RatMatrix) {
    let divs = divisors(n);
    let mut rows = Vec::new();
    for &d in &divs {
        for t in 0..euler_phi(d) as usize {
            rows.push((d, t));
        }
    }
    assert_eq!(rows.len(), n as usize);
    let mut m = RatMatrix::zero(n as usize);
    for (row, &(d, t)) in rows.iter().enumerate() {
        for k in 0..n as usize {
            let z = CyclotomicNumber::zeta_power(d, k as i64);
            m.set(row, k, z.coeffs()[t].clone());
        }
    }
    (rows, m)
}

fn cached_inverse(n: u64) -> Arc<(Vec<(u64, usize)>, RatMatrix)> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<(Vec<(u64, usize)>, RatMatrix)>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let (rows, m) = decomposition_rows(n);
    let inv = m.inverse().expect("character decomposition is invertible");
    let value = Arc::new((rows, inv));
    cache.lock().unwrap().insert(n, value.clone());
    value
}

/// The unique element of Q[Z/N] whose character image at every divisor d of
/// N equals the given component. Components must be indexed by divisor and
/// live in Q(ζ_d).
pub fn assemble_from_characters(
    n: u64,
    components: &HashMap<u64, CyclotomicNumber>,
) -> Result<GroupRingElement> {
    let divs = divisors(n);
    let mut rhs = Vec::with_capacity(n as usize);
    for &d in &divs {
        let comp = components
            .get(&d)
            .ok_or_else(|| Error::InvalidParams(format!("missing component for divisor {}", d)))?;
        if comp.modulus() != d {
            return Err(Error::ModulusMismatch { expected: d, found: comp.modulus() });
        }
        rhs.extend(comp.coeffs().iter().cloned());
    }
    let inv = cached_inverse(n);
    let x = inv.1.apply(&rhs);
    Ok(GroupRingElement::from_coeffs(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn sample_element(n: u64) -> GroupRingElement {
        let coeffs: Vec<Rat> = (0..n as i64)
            .map(|k| ratio((k * k * 3 - 7 * k + 2) % 11, 1 + (k % 4)))
            .collect();
        GroupRingElement::from_coeffs(coeffs)
    }

    #[test]
    fn augmentation_is_coefficient_sum() {
        let e = sample_element(10);
        let img = character_map(&e, 1).unwrap();
        assert!(img.is_rational());
        assert_eq!(img.coeffs()[0], e.coefficient_sum());
    }

    #[test]
    fn delta_at_generator_maps_to_zeta() {
        let e = GroupRingElement::monomial(10, 1, rat(1));
        let img = character_map(&e, 10).unwrap();
        assert_eq!(img, CyclotomicNumber::zeta_power(10, 1));
    }

    #[test]
    fn uniform_element_dies_under_full_character() {
        let n = 6;
        let e = GroupRingElement::from_coeffs(vec![rat(1); n as usize]);
        let img = character_map(&e, n).unwrap();
        assert!(img.is_zero());
    }

    #[test]
    fn character_is_ring_map() {
        let a = sample_element(12);
        let b = GroupRingElement::monomial(12, 5, ratio(3, 2))
            .add(&GroupRingElement::monomial(12, 2, rat(-4)))
            .unwrap();
        for d in divisors(12) {
            let f = |x: &GroupRingElement| character_map(x, d).unwrap();
            assert_eq!(f(&a.add(&b).unwrap()), f(&a).add(&f(&b)).unwrap());
            assert_eq!(f(&a.mul(&b).unwrap()), f(&a).mul(&f(&b)).unwrap());
        }
    }

    #[test]
    fn assemble_round_trip() {
        for n in [5u64, 10, 25] {
            let e = sample_element(n);
            let mut components = HashMap::new();
            for d in divisors(n) {
                components.insert(d, character_map(&e, d).unwrap());
            }
            let back = assemble_from_characters(n, &components).unwrap();
            assert_eq!(back, e);
        }
    }

    #[test]
    fn zero_augmentation_component_gives_zero_sum() {
        let n = 25;
        let e = sample_element(n);
        let mut components = HashMap::new();
        for d in divisors(n) {
            components.insert(d, character_map(&e, d).unwrap());
        }
        components.insert(1, CyclotomicNumber::zero(1));
        let out = assemble_from_characters(n, &components).unwrap();
        assert!(out.coefficient_sum().is_zero());
    }

    #[test]
    fn zero_components_give_zero_element() {
        let n = 5;
        let mut components = HashMap::new();
        for d in divisors(n) {
            components.insert(d, CyclotomicNumber::zero(d));
        }
        let out = assemble_from_characters(n, &components).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn wrong_component_modulus_rejected() {
        let mut components = HashMap::new();
        components.insert(1, CyclotomicNumber::zero(1));
        components.insert(5, CyclotomicNumber::zero(7));
        assert!(matches!(
            assemble_from_characters(5, &components),
            Err(Error::ModulusMismatch { .. })
        ));
    }
}
