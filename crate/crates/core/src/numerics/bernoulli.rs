//! Bernoulli numbers from the exact rational recurrence, and ζ at the even
//! integers derived from them.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest Bernoulli index kept in the table.
pub const BERNOULLI_MAX_INDEX: usize = 128;

/// Largest `k` accepted by [`zeta_even`].
pub const ZETA_EVEN_MAX_K: u32 = (BERNOULLI_MAX_INDEX / 2) as u32;

struct Table {
    exact: Vec<BigRational>,
    float: Vec<f64>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0 for m ≥ 1, B_0 = 1.
        let n = BERNOULLI_MAX_INDEX;
        let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
        b.push(BigRational::one());
        // full row m+1 of Pascal's triangle: binom[k] = C(m+1, k)
        let mut binom: Vec<BigInt> = vec![BigInt::one(), BigInt::from(2), BigInt::one()];
        for m in 1..=n {
            if m > 1 {
                let mut next = vec![BigInt::one(); m + 2];
                for k in 1..=m {
                    next[k] = &binom[k - 1] + &binom[k];
                }
                binom = next;
            }
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                if !bk.is_zero() {
                    acc += bk * BigRational::from_integer(binom[k].clone());
                }
            }
            let value = -acc / BigRational::from_integer(binom[m].clone());
            b.push(value);
        }
        let float = b.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
        Table { exact: b, float }
    })
}

/// Exact `B_n`, `n ≤ 128`, with the convention `B_1 = −1/2`.
pub fn bernoulli_exact(n: usize) -> Option<&'static BigRational> {
    table().exact.get(n)
}

/// `B_n` rounded to double precision.
pub fn bernoulli(n: usize) -> Option<f64> {
    table().float.get(n).copied()
}

/// `ζ(2k)`; `ζ(0) = −1/2`.
pub fn zeta_even(k: u32) -> Result<f64> {
    if k == 0 {
        return Ok(-0.5);
    }
    if k > ZETA_EVEN_MAX_K {
        return Err(Error::Overflow(format!(
            "zeta(2k) requested for k = {k}, table holds k <= {ZETA_EVEN_MAX_K}"
        )));
    }
    let two_k = 2 * k as usize;
    let b = bernoulli(two_k).expect("index within table");
    // (2π)^{2k} / (2k)! accumulated as a product to stay in range
    let mut ratio = 1.0;
    for j in 1..=two_k {
        ratio *= 2.0 * PI / j as f64;
    }
    Ok(b.abs() * ratio / 2.0)
}
