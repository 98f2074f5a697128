//! Exact binomial coefficients.
//!
//! Everything downstream (Dicke normalization, fidelity weights, Schmidt
//! coefficients) needs C(n, k) exactly. For n ≤ 30 the values fit well inside
//! the f64 mantissa (C(30, 15) < 2^28), so integer arithmetic followed by a
//! lossless conversion is exact.

/// C(n, k) computed in u128 and returned as f64.
///
/// Exact (no rounding) for every n ≤ 30, which covers all supported copy
/// counts. Out-of-range k returns 0.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc as f64
}
