use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::hurwitz::{hurwitz_zeta, HurwitzArg};
use crate::error::{Error, Result};
use crate::kernel::{Ball, Dyadic, Mag, Precision};

/// Largest direct-summation cutoff before switching to the alternating-series
/// algorithm.
const DIRECT_CAP: u64 = 1024;

/// Integer argument `s >= 2` of the Riemann zeta function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZetaArg(u32);

impl ZetaArg {
    pub fn new(s: u32) -> Result<ZetaArg> {
        if s < 2 {
            return Err(Error::Domain(format!("zeta argument must be >= 2, got {s}")));
        }
        Ok(ZetaArg(s))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn cache() -> &'static RwLock<HashMap<(u32, u32), Ball>> {
    static CACHE: OnceLock<RwLock<HashMap<(u32, u32), Ball>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `zeta(s) - 1 = sum_{n>=2} n^{-s}` with relative accuracy, so it stays
/// meaningful when `zeta(s)` itself would round to 1.
pub fn zeta_minus_one(s: u32, prec: Precision) -> Result<Ball> {
    let s = ZetaArg::new(s)?.get();
    let key = (s, prec.working());
    if let Some(b) = cache().read().expect("zeta cache poisoned").get(&key) {
        return Ok(b.clone());
    }
    let value = match direct_cutoff(s, prec.working()) {
        Some(k) => zeta_minus_one_direct(s, k, prec)?,
        None => zeta_minus_one_alternating(s, prec)?,
    };
    cache().write().expect("zeta cache poisoned").insert(key, value.clone());
    Ok(value)
}

/// Cutoff `K` so that `K^{1-s}/(s-1) <= 2^{-(bits + s + 2)}`, or `None` if it
/// exceeds [`DIRECT_CAP`].
fn direct_cutoff(s: u32, bits: u32) -> Option<u64> {
    let sm1 = f64::from(s - 1);
    let log2_k = (f64::from(bits) + f64::from(s) + 2.0 - sm1.log2()) / sm1;
    if log2_k > (DIRECT_CAP as f64).log2() {
        return None;
    }
    let mut k = (2f64.powf(log2_k).ceil() as u64).max(2);
    // float estimate may be one short
    while tail_integral(s, k) > Mag::pow2(-(i64::from(bits) + i64::from(s) + 2)) {
        k += 1;
    }
    Some(k)
}

/// `int_K^inf x^{-s} dx = K^{1-s}/(s-1)`, bounding `sum_{n>K} n^{-s}`.
fn tail_integral(s: u32, k: u64) -> Mag {
    let den = BigInt::from(k).pow(s - 1) * BigInt::from(s - 1);
    Mag::from_rational_up(&BigRational::new(BigInt::one(), den))
}

/// Direct partial sum `sum_{n=2}^{K} n^{-s}` plus the integral tail.
pub fn zeta_minus_one_direct(s: u32, cutoff: u64, prec: Precision) -> Result<Ball> {
    let mut acc = Ball::zero();
    // smallest terms first
    for n in (2..=cutoff).rev() {
        let term = Ball::one().div(&Ball::from_int(BigInt::from(n).pow(s)), prec)?;
        acc = acc.add(&term, prec);
    }
    let tail = tail_integral(s, cutoff);
    // the tail lies in [0, tail]
    let half = Ball::exact(tail.to_dyadic().mul_2exp(-1));
    Ok(acc.add(&half, prec).add_error(tail.mul_2exp(-1)))
}

/// Alternating-series acceleration of the eta function: with Chebyshev-type
/// weights `d_k`, `zeta(s) (1 - 2^{1-s}) d_n = -sum_{k<n} (-1)^k (d_k - d_n) (k+1)^{-s}`
/// up to an error below `3 (3+sqrt 8)^{-n} / (1 - 2^{1-s})`.
pub fn zeta_minus_one_alternating(s: u32, prec: Precision) -> Result<Ball> {
    // zeta(s) - 1 ~ 2^{-s}: carry s extra bits to keep relative accuracy
    let wp = prec.widened(s + 8);
    let target_bits = i64::from(wp.working()) + 3;
    // (3 + sqrt 8) > 2^{2.5}
    let n = ((target_bits as f64) / 2.5).ceil() as u64 + 1;
    let weights = chebyshev_weights(n);
    let d_n = weights[n as usize].clone();
    let mut acc = Ball::zero();
    for k in (0..n).rev() {
        let c = (&weights[k as usize] - &d_n) / &d_n;
        let c = if k % 2 == 0 { -c } else { c };
        let coeff = Ball::from_rational(&c, wp);
        let power = Ball::from_int(BigInt::from(k + 1).pow(s));
        acc = acc.add(&coeff.div(&power, wp)?, wp);
    }
    let factor = Ball::exact(Dyadic::from_int(1).sub(&Dyadic::new(BigInt::one(), 1 - i64::from(s))));
    let zeta = acc.div(&factor, wp)?;
    // truncation: 3 (3+sqrt 8)^{-n} / (1 - 2^{1-s}) <= 6 * 2^{-2.5 n}
    let err = Mag::from_u64(6).mul(Mag::pow2(-(((5 * n) / 2) as i64)));
    Ok(zeta.add_error(err).sub(&Ball::one(), wp))
}

/// `d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)` for `k = 0..=n`.
fn chebyshev_weights(n: u64) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut term = BigRational::one();
    let mut acc = BigRational::zero();
    for i in 0..=n {
        acc += &term;
        out.push(acc.clone());
        if i < n {
            let num = BigInt::from(4) * (n + i) * (n - i);
            let den = BigInt::from(2 * i + 1) * (2 * i + 2);
            term *= BigRational::new(num, den);
        }
    }
    out
}

/// `zeta(s)` for integer `s >= 2`, as `1 + (zeta(s) - 1)`. An independent
/// Euler-Maclaurin evaluation is run alongside and must overlap.
pub fn zeta_int(s: u32, prec: Precision) -> Result<Ball> {
    let value = zeta_minus_one(s, prec)?.add(&Ball::one(), prec);
    let check = zeta_int_euler_maclaurin(s, prec)?;
    if !value.overlaps(&check) {
        return Err(Error::CrossCheck(format!("zeta({s}): direct {value} vs Euler-Maclaurin {check}")));
    }
    Ok(value)
}

/// `zeta(s) = zeta(s, 1)` by Euler-Maclaurin summation.
pub fn zeta_int_euler_maclaurin(s: u32, prec: Precision) -> Result<Ball> {
    ZetaArg::new(s)?;
    hurwitz_zeta(&HurwitzArg::new(s, Ball::one())?, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::decimal::parse_exact;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn contains_decimal(b: &Ball, lo: &str, hi: &str) -> bool {
        let lo = parse_exact(lo).unwrap();
        let hi = parse_exact(hi).unwrap();
        b.lower().to_rational() >= lo && b.upper().to_rational() <= hi
    }

    #[test]
    fn rejects_small_arguments() {
        assert!(zeta_minus_one(1, p(64)).is_err());
        assert!(zeta_int(0, p(64)).is_err());
    }

    #[test]
    fn zeta_two_minus_one() {
        let b = zeta_minus_one(2, p(128)).unwrap();
        assert!(contains_decimal(&b, "0.64493406684822643647", "0.64493406684822643648"));
    }

    #[test]
    fn zeta_three_minus_one_brute_force() {
        // 10^6-term partial sum in f64 plus the tail bracket [1/(2(N+1)^2), 1/(2N^2)]
        let n = 1_000_000u64;
        let partial: f64 = (2..=n).rev().map(|k| (k as f64).powi(-3)).sum();
        let lo = partial + 0.5 / ((n + 1) as f64).powi(2);
        let hi = partial + 0.5 / (n as f64).powi(2);
        let b = zeta_minus_one(3, p(128)).unwrap();
        let x = b.to_f64();
        assert!(x > lo - 1e-13 && x < hi + 1e-13, "{x} not in [{lo}, {hi}]");
        assert!(contains_decimal(&b, "0.2020569031595942", "0.2020569031595943"));
    }

    #[test]
    fn large_argument_bracketing() {
        let s = 200;
        let b = zeta_minus_one(s, p(128)).unwrap();
        let two = BigRational::from_integer(2.into());
        let lower = Pow::pow(&two, -(s as i32));
        let upper = lower.clone() * (BigRational::one() + BigRational::new(2.into(), 199.into()))
            + Pow::pow(&two, -(s as i32) + 1) / BigRational::from_integer(199.into());
        assert!(b.lower().to_rational() >= lower - b.rad().to_rational());
        assert!(b.upper().to_rational() <= upper + b.rad().to_rational());
        // relative accuracy survives the tiny magnitude
        assert!(b.rad() < Mag::pow2(-(200 + 120)));
    }

    #[test]
    fn both_paths_agree_where_both_apply() {
        let prec = p(128);
        for s in [30u32, 40, 60] {
            let k = direct_cutoff(s, prec.working()).expect("direct applies");
            let direct = zeta_minus_one_direct(s, k, prec).unwrap();
            let alt = zeta_minus_one_alternating(s, prec).unwrap();
            assert!(direct.overlaps(&alt), "s = {s}");
        }
    }

    #[test]
    fn zeta_values_cross_checked() {
        let z2 = zeta_int(2, p(256)).unwrap();
        assert!(contains_decimal(&z2, "1.6449340668482264364724151666460251892", "1.6449340668482264364724151666460251893"));
        let z4 = zeta_int(4, p(256)).unwrap();
        assert!(contains_decimal(&z4, "1.0823232337111381915160036965411679027", "1.0823232337111381915160036965411679028"));
        let zm = zeta_minus_one(4, p(256)).unwrap();
        assert!(zm.add(&Ball::one(), p(256)).overlaps(&z4));
    }
}
