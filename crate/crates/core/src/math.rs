//! Small exact-arithmetic helpers shared by the counting kernels.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)` in `u128`, or `None` on overflow.
pub fn binom_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        let num = u128::from(n - i);
        let den = u128::from(i + 1);
        let g = gcd(acc, den);
        let (a, d) = (acc / g, den / g);
        // gcd(a, d) = 1 and d | a * num, so d | num.
        debug_assert_eq!(num % d, 0);
        acc = a.checked_mul(num / d)?;
    }
    Some(acc)
}

/// `C(n, k)` as a big integer.
pub fn binom_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` as an `f64`, exact while the result fits in 53 bits.
pub fn binom_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Table of `C(m, r)` for `m = 0..=max_m`; entries that overflow `u128` are
/// `None`.
pub fn binom_table(max_m: u64, r: u64) -> Vec<Option<u128>> {
    (0..=max_m).map(|m| binom_u128(m, r)).collect()
}

pub fn factorial_f64(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest `m` with `m^3 >= x`.
pub fn ceil_cbrt(x: u128) -> u128 {
    let mut m = (x as f64).cbrt().floor() as u128;
    while m.saturating_mul(m).saturating_mul(m) < x {
        m += 1;
    }
    while m > 0 && (m - 1) * (m - 1) * (m - 1) >= x {
        m -= 1;
    }
    m
}

/// Largest `m` with `m^3 <= x`.
pub fn floor_cbrt(x: u128) -> u128 {
    let c = ceil_cbrt(x);
    if c * c * c == x {
        c
    } else {
        c - 1
    }
}

/// Serializes a big integer as a decimal string.
pub fn serialize_decimal<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}
