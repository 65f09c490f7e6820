//! Shared big-number aliases and exact string formatting.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(int(v))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(int(num), int(den))
}

/// Formats a rational as `num` or `num/den`, never as a float.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: Int = s.trim().parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips() {
        assert_eq!(rat_str(&ratio(3, 4)), "3/4");
        assert_eq!(rat_str(&rat(-7)), "-7");
        assert_eq!(parse_rat("3/4"), Some(ratio(3, 4)));
        assert_eq!(parse_rat("-7"), Some(rat(-7)));
        assert_eq!(parse_rat("1/0"), None);
    }
}
