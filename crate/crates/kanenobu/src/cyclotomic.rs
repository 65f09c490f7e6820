//! Exact arithmetic in the cyclotomic fields Q(ζ_m).
//!
//! Elements live in the power basis 1, ζ, ..., ζ^(φ(m)−1) of
//! Q[x]/Φ_m(x), with ζ the residue class of x. Φ_m is computed once per
//! modulus by exact division of x^m − 1 by the lower cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, Int, Rat};

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

/// Coefficients of Φ_m, lowest degree first. Integer polynomials.
fn cyclotomic_polynomial(m: u64) -> Vec<Int> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Int>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by the product of Φ_d over proper divisors d
    let mut num = vec![Int::zero(); m as usize + 1];
    num[0] = -Int::one();
    num[m as usize] = Int::one();
    let mut result = num;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        result = poly_div_exact(&result, &phi_d);
    }
    cache.lock().unwrap().insert(m, result.clone());
    result
}

/// Exact division of integer polynomials with monic divisor.
fn poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    let mut rem: Vec<Int> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    let mut quot = vec![Int::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            let t = &c * dc;
            rem[k + i] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quot
}

/// An element of Q(ζ_m) in the power basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    modulus: u64,
    /// exactly φ(m) coefficients
    coeffs: Vec<Rat>,
}

impl CyclotomicNumber {
    pub fn zero(m: u64) -> Self {
        CyclotomicNumber { modulus: m, coeffs: vec![Rat::zero(); euler_phi(m) as usize] }
    }

    pub fn one(m: u64) -> Self {
        CyclotomicNumber::from_rational(m, rat(1))
    }

    pub fn from_rational(m: u64, r: Rat) -> Self {
        let mut c = CyclotomicNumber::zero(m);
        if !c.coeffs.is_empty() {
            c.coeffs[0] = r;
        } else {
            // m = 1 has φ(1) = 1; unreachable
            unreachable!("phi(m) is positive");
        }
        c
    }

    /// ζ_m^k, exponent taken mod m.
    pub fn zeta_power(m: u64, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as u64;
        let mut poly = vec![Rat::zero(); k as usize + 1];
        poly[k as usize] = Rat::one();
        CyclotomicNumber::from_poly(m, poly)
    }

    /// Reduces an arbitrary polynomial in ζ (low degree first) mod Φ_m.
    pub fn from_poly(m: u64, mut poly: Vec<Rat>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        // long division by the monic Φ_m
        while poly.len() > deg {
            let k = poly.len() - 1;
            let c = poly[k].clone();
            if !c.is_zero() {
                for (i, pc) in phi.iter().enumerate() {
                    let t = &c * &Rat::from_integer(pc.clone());
                    poly[k - deg + i] -= t;
                }
            }
            poly.pop();
        }
        poly.resize(deg, Rat::zero());
        CyclotomicNumber { modulus: m, coeffs: poly }
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

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    fn check_modulus(&self, other: &CyclotomicNumber) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { expected: self.modulus, found: other.modulus });
        }
        Ok(())
    }

    pub fn add(&self, other: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicNumber { modulus: self.modulus, coeffs })
    }

    pub fn sub(&self, other: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CyclotomicNumber { modulus: self.modulus, coeffs })
    }

    pub fn neg(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> CyclotomicNumber {
        CyclotomicNumber {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, other: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        self.check_modulus(other)?;
        let mut poly = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                poly[i + j] += a * b;
            }
        }
        Ok(CyclotomicNumber::from_poly(self.modulus, poly))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// Φ_m in Q[x]. Errors on zero.
    pub fn inverse(&self) -> Result<CyclotomicNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: Vec<Rat> = cyclotomic_polynomial(self.modulus)
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        // gcd(f, Φ) = 1 with u·f + v·Φ = 1; then f⁻¹ = u
        let (_, u, _) = extended_gcd_poly(&self.coeffs, &phi);
        Ok(CyclotomicNumber::from_poly(self.modulus, u))
    }

    pub fn div(&self, other: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        self.check_modulus(other)?;
        self.mul(&other.inverse()?)
    }

    /// Image under the Galois substitution ζ ↦ ζ^k; k must be prime to m
    /// for a field automorphism, but any exponent gives a well-defined ring
    /// map evaluation.
    pub fn galois(&self, k: i64) -> CyclotomicNumber {
        let m = self.modulus;
        let mut acc = CyclotomicNumber::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = CyclotomicNumber::zeta_power(m, k * i as i64).scale(c);
            acc = acc.add(&term).expect("same modulus");
        }
        acc
    }

    /// Fixed by complex conjugation ζ ↦ ζ⁻¹.
    pub fn is_real(&self) -> bool {
        self.galois(-1) == *self
    }

    /// Coefficient strings in the power basis.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(crate::rational::rat_str).collect()
    }
}

impl std::fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", crate::rational::rat_str(c))?;
            } else if i == 1 {
                write!(f, "({})z", crate::rational::rat_str(c))?;
            } else {
                write!(f, "({})z^{}", crate::rational::rat_str(c), i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Extended gcd of polynomials over Q, coefficients low-first. Returns
/// (g, u, v) with u·a + v·b = g and g normalized monic (or 1 when constant).
fn extended_gcd_poly(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let trim = |p: &[Rat]| -> Vec<Rat> {
        let mut v = p.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let mut r0 = trim(a);
    let mut r1 = trim(b);
    let mut s0 = vec![Rat::one()];
    let mut s1: Vec<Rat> = vec![];
    let mut t0: Vec<Rat> = vec![];
    let mut t1 = vec![Rat::one()];

    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = trim(&r);
        s0 = s1;
        s1 = trim(&s);
        t0 = t1;
        t1 = trim(&t);
    }
    // normalize so the gcd is monic
    let lead = r0.last().cloned().unwrap_or_else(Rat::one);
    let inv = Rat::one() / lead;
    let scale = |p: &[Rat]| p.iter().map(|c| c * &inv).collect::<Vec<_>>();
    (scale(&r0), scale(&s0), scale(&t0))
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    for k in (0..=rem.len() - 1 - db).rev() {
        let c = &rem[k + db] / lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            rem[k + i] -= t;
        }
    }
    rem.truncate(db);
    (quot, rem)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn phi_and_divisors() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(5), 4);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(25), 20);
        assert_eq!(divisors(25), vec![1, 5, 25]);
        // dimension count: Σ φ(d) over d | 25 equals 25
        assert_eq!(divisors(25).iter().map(|&d| euler_phi(d)).sum::<u64>(), 25);
    }

    #[test]
    fn cyclotomic_polynomials() {
        let p5 = cyclotomic_polynomial(5);
        assert_eq!(p5.iter().map(|c| c.to_string()).collect::<Vec<_>>(), vec!["1"; 5]);
        let p12 = cyclotomic_polynomial(12);
        // Φ₁₂ = x⁴ − x² + 1
        assert_eq!(
            p12.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            vec!["1", "0", "-1", "0", "1"]
        );
    }

    #[test]
    fn power_sums_vanish() {
        // 1 + ζ + ζ² + ζ³ + ζ⁴ = 0 in Q(ζ₅)
        let mut s = CyclotomicNumber::zero(5);
        for k in 0..5 {
            s = s.add(&CyclotomicNumber::zeta_power(5, k)).unwrap();
        }
        assert!(s.is_zero());
    }

    #[test]
    fn zeta_times_inverse_power() {
        let z = CyclotomicNumber::zeta_power(5, 1);
        let z4 = CyclotomicNumber::zeta_power(5, 4);
        assert_eq!(z.mul(&z4).unwrap(), CyclotomicNumber::one(5));
    }

    #[test]
    fn product_expansion() {
        // (ζ−1)(ζ⁻¹−1) = 2 − ζ − ζ⁴
        let one = CyclotomicNumber::one(5);
        let a = CyclotomicNumber::zeta_power(5, 1).sub(&one).unwrap();
        let b = CyclotomicNumber::zeta_power(5, -1).sub(&one).unwrap();
        let prod = a.mul(&b).unwrap();
        let expected = CyclotomicNumber::from_rational(5, rat(2))
            .sub(&CyclotomicNumber::zeta_power(5, 1))
            .unwrap()
            .sub(&CyclotomicNumber::zeta_power(5, 4))
            .unwrap();
        assert_eq!(prod, expected);
        assert!(prod.is_real());
        assert!(prod.inverse().unwrap().is_real());
    }

    #[test]
    fn zeta_is_not_real() {
        assert!(!CyclotomicNumber::zeta_power(5, 1).is_real());
    }

    #[test]
    fn division_round_trip() {
        let a = CyclotomicNumber::from_poly(
            7,
            vec![ratio(2, 3), rat(0), rat(5), rat(-1), rat(0), rat(4)],
        );
        let b = CyclotomicNumber::from_poly(7, vec![rat(1), rat(-2), rat(0), rat(7)]);
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b).unwrap(), a);
    }

    #[test]
    fn division_by_zero_rejected() {
        let a = CyclotomicNumber::one(5);
        assert!(matches!(a.div(&CyclotomicNumber::zero(5)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn modulus_mismatch_rejected() {
        let a = CyclotomicNumber::one(5);
        let b = CyclotomicNumber::one(7);
        assert!(matches!(a.add(&b), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn slope_factor_nonzero_for_n_at_least_2() {
        // ζ^(n+1) + ζ + 1 with m = 2n+1: zero at n = 1, nonzero for n ≥ 2
        for n in 2..=8u64 {
            let m = 2 * n + 1;
            let v = CyclotomicNumber::zeta_power(m, n as i64 + 1)
                .add(&CyclotomicNumber::zeta_power(m, 1))
                .unwrap()
                .add(&CyclotomicNumber::one(m))
                .unwrap();
            assert!(!v.is_zero(), "n = {}", n);
        }
        let v = CyclotomicNumber::zeta_power(3, 2)
            .add(&CyclotomicNumber::zeta_power(3, 1))
            .unwrap()
            .add(&CyclotomicNumber::one(3))
            .unwrap();
        assert!(v.is_zero());
    }
}
