use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::combinatorics::bernoulli;
use super::zeta::zeta_minus_one;
use crate::error::Result;
use crate::kernel::{Ball, Mag, Precision};

fn gamma_cache() -> &'static RwLock<HashMap<u32, Ball>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Ball>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Euler's constant.
///
/// Evaluated from `gamma = 1 - sum_{k>=2} (zeta(k) - 1)/k`, which converges
/// like `2^{-k}`. The series result is only adopted after it overlaps the
/// independent limit evaluation [`euler_gamma_limit`]; otherwise the limit
/// value is returned instead.
pub fn euler_gamma(prec: Precision) -> Result<Ball> {
    if let Some(b) = gamma_cache().read().expect("gamma cache poisoned").get(&prec.working()) {
        return Ok(b.clone());
    }
    let series = euler_gamma_series(prec)?;
    let oracle = euler_gamma_limit(prec)?;
    let value = if series.overlaps(&oracle) { series } else { oracle };
    gamma_cache().write().expect("gamma cache poisoned").insert(prec.working(), value.clone());
    Ok(value)
}

/// `1 - sum_{k>=2} (zeta(k)-1)/k` with tail `sum_{k>K} 3 * 2^{-k}/k <= 3 * 2^{-K}/(K+1)`.
pub fn euler_gamma_series(prec: Precision) -> Result<Ball> {
    let last = prec.working() + 4;
    let mut acc = Ball::zero();
    for k in (2..=last).rev() {
        acc = acc.add(&zeta_minus_one(k, prec)?.div_int(k, prec)?, prec);
    }
    let tail = Mag::from_u64(3).mul(Mag::pow2(-i64::from(last))).div(Mag::from_u64(u64::from(last) + 1));
    Ok(Ball::one().sub(&acc, prec).add_error(tail))
}

/// `gamma = H_n - ln n - 1/(2n) + sum_{k=1}^{K} B_{2k}/(2k n^{2k}) + R` with
/// `n = 2^j` and `|R|` bounded by the last included correction.
pub fn euler_gamma_limit(prec: Precision) -> Result<Ball> {
    let target = Mag::pow2(-(i64::from(prec.working()) + 4));
    // the smallest correction is about e^{-2 pi n} = 2^{-9 n}
    let mut j = 1u32;
    while (1u64 << j) * 8 < u64::from(prec.working()) + 16 {
        j += 1;
    }
    let n = 1u64 << j;
    let mut harmonic = Ball::zero();
    for i in (1..=n).rev() {
        harmonic = harmonic.add(&Ball::one().div_int(i, prec)?, prec);
    }
    let log_n = ln2(prec)?.mul_int(j, prec);
    let mut acc = harmonic.sub(&log_n, prec).sub(&Ball::one().div_int(2 * n, prec)?, prec);
    let n_sq = BigInt::from(n) * BigInt::from(n);
    let mut n_pow = n_sq.clone();
    let mut k = 1usize;
    loop {
        let b = bernoulli(2 * k);
        let term = b / BigRational::from_integer(BigInt::from(2 * k) * &n_pow);
        let term = Ball::from_rational(&term, prec);
        acc = acc.add(&term, prec);
        let size = term.abs_upper();
        if size <= target {
            return Ok(acc.add_error(size));
        }
        n_pow *= &n_sq;
        k += 1;
    }
}

/// `ln 2 = 2 atanh(1/3) = 2 sum_{i>=0} 3^{-(2i+1)}/(2i+1)`.
pub fn ln2(prec: Precision) -> Result<Ball> {
    let target = Mag::pow2(-(i64::from(prec.working()) + 4));
    let ninth = Ball::one().div_int(9, prec)?;
    let mut power = Ball::one().div_int(3, prec)?;
    let mut acc = Ball::zero();
    let mut i = 0u64;
    loop {
        acc = acc.add(&power.div_int(2 * i + 1, prec)?, prec);
        power = power.mul(&ninth, prec);
        i += 1;
        // remaining terms: < 3^{-(2i+1)} * 9/8
        let tail = power.abs_upper().mul(Mag::from_u64(9)).div(Mag::from_u64(8));
        if tail <= target {
            return Ok(acc.add_error(tail).mul_2exp(1));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::decimal::parse_exact;
    use num_traits::Signed;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    const GAMMA_60: &str = "0.577215664901532860606512090082402431042159335939923598805767";

    #[test]
    fn series_and_limit_agree() {
        for bits in [64, 128, 256] {
            let s = euler_gamma_series(p(bits)).unwrap();
            let l = euler_gamma_limit(p(bits)).unwrap();
            assert!(s.overlaps(&l), "bits = {bits}");
        }
    }

    #[test]
    fn gamma_digits() {
        let g = euler_gamma(p(256)).unwrap();
        let approx = parse_exact(GAMMA_60).unwrap();
        let diff = (g.mid_rational() - approx).abs();
        assert!(diff < parse_exact("1e-59").unwrap());
    }

    #[test]
    fn ln2_digits() {
        let l = ln2(p(128)).unwrap();
        let approx = parse_exact("0.693147180559945309417232121458176568075").unwrap();
        assert!((l.mid_rational() - approx).abs() < parse_exact("1e-38").unwrap());
        assert!(l.rad() < Mag::pow2(-128));
    }

    #[test]
    fn doubling_precision_shrinks_radius() {
        let a = euler_gamma(p(64)).unwrap();
        let b = euler_gamma(p(128)).unwrap();
        assert!(b.rad().mul_2exp(1) <= a.rad());
    }
}
