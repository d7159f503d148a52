//! Exact integer/rational arithmetic substrate: binomial coefficients
//! and the finite-difference interpolation step used by the Ehrhart
//! volume oracle.
//!
//! Integers are [`num::BigInt`], rationals are [`num::BigRational`]
//! (always reduced, positive denominator).

use num::bigint::Sign;
use num::{BigInt, One, Signed, Zero};

/// n choose k, with the convention that any out-of-range pair
/// (k < 0, k > n, or n < 0) yields 0. This lets the CP sums run over
/// full index ranges without boundary cases.
pub fn binomial(n: &BigInt, k: &BigInt) -> BigInt {
    if n.sign() == Sign::Minus || k.sign() == Sign::Minus || k > n {
        return BigInt::zero();
    }
    // symmetry: evaluate with the smaller of k, n-k
    let nk = n - k;
    let k = if &nk < k { nk } else { k.clone() };
    let mut acc = BigInt::one();
    let mut i = BigInt::one();
    while i <= k {
        acc = acc * (n - &k + &i) / &i;
        i += 1;
    }
    acc
}

/// Convenience form for machine-sized indices.
pub fn binom(n: i64, k: i64) -> BigInt {
    binomial(&BigInt::from(n), &BigInt::from(k))
}

/// Given the values p(0), p(1), ..., p(f) of an integer-valued
/// polynomial p of degree ≤ f, return f! times its leading coefficient.
///
/// This is the f-th forward difference at 0, so the computation is
/// all-integer; no rational intermediates are needed. For Ehrhart
/// counting data the result is the normalized volume.
pub fn interpolate_leading_times_factorial(values: &[BigInt]) -> BigInt {
    assert!(!values.is_empty(), "need at least one value");
    let f = (values.len() - 1) as i64;
    let mut acc = BigInt::zero();
    for (i, v) in values.iter().enumerate() {
        let c = binom(f, i as i64) * v;
        if (f - i as i64) % 2 == 0 {
            acc += c;
        } else {
            acc -= c;
        }
    }
    acc
}

/// |gcd| of a slice, 0 for an all-zero slice.
pub fn gcd_all(xs: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in xs {
        g = num::integer::gcd(g, x.abs());
    }
    g
}
