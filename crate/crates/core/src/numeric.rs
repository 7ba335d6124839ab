//! Small integer/real helpers shared by the synthesis and bound modules.

/// Largest r with r^d <= n (n >= 1, d >= 1).
pub fn floor_root(n: u64, d: u32) -> u64 {
    debug_assert!(n >= 1 && d >= 1);
    if d == 1 || n == 1 {
        return if d == 1 { n } else { 1 };
    }
    let mut lo = 1u64;
    let mut hi = n;
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if pow_leq(mid, d, n) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Smallest r with r^d >= n.
pub fn ceil_root(n: u64, d: u32) -> u64 {
    let r = floor_root(n, d);
    if pow_eq(r, d, n) {
        r
    } else {
        r + 1
    }
}

/// Whether n is an exact d-th power, returning the root.
pub fn exact_root(n: u64, d: u32) -> Option<u64> {
    let r = floor_root(n, d);
    pow_eq(r, d, n).then_some(r)
}

fn pow_leq(base: u64, exp: u32, bound: u64) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc *= base as u128;
        if acc > bound as u128 {
            return false;
        }
    }
    true
}

fn pow_eq(base: u64, exp: u32, value: u64) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc *= base as u128;
        if acc > value as u128 {
            return false;
        }
    }
    acc == value as u128
}

/// Base-2 logarithm of 2^{d(m^{1/d}-1)}, i.e. the exponent d(m^{1/d}-1),
/// computed exactly when m is a perfect d-th power and via expm1 otherwise
/// (accurate for the d -> infinity regime).
pub fn bound_exponent(d: u32, m: u64) -> f64 {
    debug_assert!(d >= 1 && m >= 1);
    if let Some(r) = exact_root(m, d) {
        return d as f64 * (r - 1) as f64;
    }
    d as f64 * f64::exp_m1((m as f64).ln() / d as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        assert_eq!(floor_root(8, 3), 2);
        assert_eq!(floor_root(9, 2), 3);
        assert_eq!(floor_root(10, 2), 3);
        assert_eq!(ceil_root(10, 2), 4);
        assert_eq!(ceil_root(9, 2), 3);
        assert_eq!(exact_root(16, 4), Some(2));
        assert_eq!(exact_root(15, 4), None);
        assert_eq!(floor_root(1, 5), 1);
        assert_eq!(ceil_root(u64::MAX, 1), u64::MAX);
    }

    #[test]
    fn exponent_exact_on_perfect_powers() {
        assert_eq!(bound_exponent(2, 4), 2.0);
        assert_eq!(bound_exponent(3, 8), 3.0);
        assert_eq!(bound_exponent(1, 30), 29.0);
    }

    #[test]
    fn exponent_tends_to_natural_log() {
        let m = 1_000_000u64;
        let limit = (m as f64).ln();
        let e4 = bound_exponent(10_000, m);
        assert!((e4 - limit).abs() / limit < 0.01);
    }
}
