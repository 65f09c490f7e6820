//! Correction terms of lens spaces by the two-term recursion
//! d(L(r,s), i) = ((2i+1−r−s)² − rs)/(4rs) − d(L(s, r mod s), i mod s),
//! with d(L(1,0), 0) = 0. Tables are immutable and cached per (r, s).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::Integer;

use crate::error::{Error, Result};
use crate::rational::{int, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LensParams {
    pub r: u64,
    pub s: u64,
}

impl LensParams {
    pub fn new(r: u64, s: u64) -> Result<Self> {
        if r == 0 || (r > 1 && (s == 0 || s >= r)) || (r == 1 && s != 0) {
            return Err(Error::InvalidParams(format!("lens parameters ({}, {})", r, s)));
        }
        if r > 1 && r.gcd(&s) != 1 {
            return Err(Error::InvalidParams(format!("gcd({}, {}) must be 1", r, s)));
        }
        Ok(LensParams { r, s })
    }
}

fn table(r: u64, s: u64) -> Arc<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<Vec<Rat>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(r, s)) {
        return t.clone();
    }
    let values: Vec<Rat> = if r == 1 {
        vec![Rat::from_integer(0.into())]
    } else {
        let sub = table(s, r % s);
        (0..r)
            .map(|i| {
                let a = int(2 * i as i64 + 1 - r as i64 - s as i64);
                let num = &a * &a - int((r * s) as i64);
                let den = int(4 * (r * s) as i64);
                Rat::new(num, den) - &sub[(i % s) as usize]
            })
            .collect()
    };
    let arc = Arc::new(values);
    cache.lock().unwrap().insert((r, s), arc.clone());
    arc
}

/// d(L(r,s), i) for a single Spin^c index.
pub fn lens_d_invariant(lens: LensParams, i: u64) -> Result<Rat> {
    if i >= lens.r {
        return Err(Error::IndexOutOfRange(format!("i = {} for r = {}", i, lens.r)));
    }
    Ok(table(lens.r, lens.s)[i as usize].clone())
}

/// The full table d(L(r,s), ·).
pub fn lens_d_table(lens: LensParams) -> Result<Arc<Vec<Rat>>> {
    Ok(table(lens.r, lens.s))
}

/// Largest correction term over every lens space with first homology Z/r.
pub fn max_lens_d(r: u64) -> Rat {
    static CACHE: OnceLock<Mutex<HashMap<u64, Rat>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&r) {
        return v.clone();
    }
    let mut best: Option<Rat> = None;
    for s in 1..r {
        if r.gcd(&s) != 1 {
            continue;
        }
        for v in table(r, s).iter() {
            if best.as_ref().map_or(true, |b| v > b) {
                best = Some(v.clone());
            }
        }
    }
    let v = best.expect("r > 1 has at least the lens space L(r, 1)");
    cache.lock().unwrap().insert(r, v.clone());
    v
}
