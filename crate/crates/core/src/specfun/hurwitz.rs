use num_bigint::BigInt;
use num_rational::BigRational;

use super::combinatorics::{bernoulli, factorial};
use crate::error::{Error, Result};
use crate::kernel::{Ball, Dyadic, Mag, Precision};

const MAX_CUTOFF: u64 = 1 << 20;

/// Arguments of `zeta(s, a)`: integer `s >= 2`, and `a` enclosed strictly in `(0, 4]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzArg {
    s: u32,
    a: Ball,
}

impl HurwitzArg {
    pub fn new(s: u32, a: Ball) -> Result<HurwitzArg> {
        if s < 2 {
            return Err(Error::Domain(format!("Hurwitz zeta needs s >= 2, got {s}")));
        }
        check_unit_interval(&a, "Hurwitz zeta parameter a")?;
        Ok(HurwitzArg { s, a })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn a(&self) -> &Ball {
        &self.a
    }
}

/// Require a ball to lie strictly inside `(0, 4]`.
pub(crate) fn check_unit_interval(x: &Ball, what: &str) -> Result<()> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("{what} must be > 0, got {x}")));
    }
    if x.upper() > Dyadic::from_int(4) {
        return Err(Error::Domain(format!("{what} must be <= 4, got {x}")));
    }
    Ok(())
}

/// Estimated log2 of the Euler-Maclaurin remainder with `k` correction terms at cutoff `n`.
fn log2_remainder(s: u32, n: u64, a_lo: f64, k: u32) -> f64 {
    let mut acc = 1.0 - 2.0 * f64::from(k) * (2.0 * std::f64::consts::PI).log2();
    for i in 0..(2 * k - 1) {
        acc += f64::from(s + i).log2();
    }
    acc - f64::from(s + 2 * k - 1) * (n as f64 + a_lo).log2()
}

/// Pick `(cutoff, correction terms)` with the remainder below `2^target`.
fn choose_parameters(s: u32, a_lo: f64, target: f64) -> Result<(u64, u32)> {
    let mut n = 4u64;
    while n <= MAX_CUTOFF {
        let k_max = n.min(400) as u32;
        for k in 1..=k_max {
            if log2_remainder(s, n, a_lo, k) <= target {
                return Ok((n, k));
            }
        }
        n *= 2;
    }
    Err(Error::Domain(format!("no Euler-Maclaurin parameters reach 2^{target} for s = {s}")))
}

/// `zeta(s, a) = sum_{n>=0} (n+a)^{-s}` by Euler-Maclaurin summation:
///
/// `sum_{n<N} (n+a)^{-s} + x^{1-s}/(s-1) + x^{-s}/2 + sum_{k=1}^{K} B_{2k}/(2k)! (s)_{2k-1} x^{1-s-2k} + R`
///
/// with `x = N + a` and `|R| <= |B_{2K}|/(2K)! (s)_{2K-1} x^{1-s-2K}`.
pub fn hurwitz_zeta(arg: &HurwitzArg, prec: Precision) -> Result<Ball> {
    let s = arg.s;
    let a = &arg.a;
    let a_lo = a.lower().to_f64();
    let a_hi = a.upper().to_f64();
    // zeta(s, a) >= a^{-s}: aim below the value's own scale
    let target = -f64::from(prec.working()) - 4.0 - f64::from(s) * a_hi.log2().max(0.0);
    let (cutoff, terms) = choose_parameters(s, a_lo, target)?;

    let mut direct = Ball::zero();
    for n in (0..cutoff).rev() {
        let base = a.add(&Ball::from_int(n), prec);
        direct = direct.add(&base.pow_int(-i64::from(s), prec)?, prec);
    }

    let x = a.add(&Ball::from_int(cutoff), prec);
    let inv_x = x.inv(prec)?;
    let inv_x2 = inv_x.sqr(prec);
    let x_pow = inv_x.pow_int(i64::from(s), prec)?; // x^{-s}
    let integral = x_pow.mul(&x, prec).div_int(s - 1, prec)?;
    let half = x_pow.mul_2exp(-1);

    // p_k = (s)_{2k-1} x^{-(s+2k-1)}
    let mut p = x_pow.mul(&inv_x, prec).mul_int(s, prec);
    let mut corrections = Ball::zero();
    let mut last = Ball::zero();
    for k in 1..=terms {
        let b = bernoulli(2 * k as usize);
        let coeff = Ball::from_rational(&(b / BigRational::from_integer(factorial(2 * u64::from(k)))), prec);
        last = coeff.mul(&p, prec);
        corrections = corrections.add(&last, prec);
        let grow = BigInt::from(s + 2 * k - 1) * BigInt::from(s + 2 * k);
        p = p.mul(&inv_x2, prec).mul_int(grow, prec);
    }
    let remainder: Mag = last.abs_upper();

    Ok(direct.add(&integral, prec).add(&half, prec).add(&corrections, prec).add_error(remainder))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta::{zeta_int, zeta_minus_one};

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn exact(n: i64, d: i64) -> Ball {
        Ball::from_rational(&BigRational::new(n.into(), d.into()), p(64))
    }

    fn hz(s: u32, a: Ball, prec: Precision) -> Ball {
        hurwitz_zeta(&HurwitzArg::new(s, a).unwrap(), prec).unwrap()
    }

    #[test]
    fn domain_checks() {
        assert!(HurwitzArg::new(1, Ball::one()).is_err());
        assert!(HurwitzArg::new(2, Ball::zero()).is_err());
        assert!(HurwitzArg::new(2, exact(-1, 2)).is_err());
        assert!(HurwitzArg::new(2, exact(9, 2)).is_err());
        assert!(HurwitzArg::new(2, exact(4, 1)).is_ok());
    }

    #[test]
    fn a_one_is_riemann_zeta() {
        let prec = p(128);
        for s in 2..=10 {
            assert!(hz(s, Ball::one(), prec).overlaps(&zeta_int(s, prec).unwrap()), "s = {s}");
        }
    }

    #[test]
    fn a_two_is_zeta_minus_one() {
        let prec = p(128);
        for s in [2u32, 3, 7, 25] {
            assert!(hz(s, Ball::from_int(2), prec).overlaps(&zeta_minus_one(s, prec).unwrap()));
        }
    }

    #[test]
    fn half_shift_brute_force() {
        // sum (n+1/2)^{-2} = 4 sum (2n+1)^{-2} = 3 zeta(2); brute force partial sum
        // with integral tail bracket in f64
        let n = 200_000u64;
        let partial: f64 = (0..n).rev().map(|k| (k as f64 + 0.5).powi(-2)).sum();
        let lo = partial + 1.0 / (n as f64 + 0.5);
        let hi = partial + 1.0 / (n as f64 - 0.5);
        let b = hz(2, exact(1, 2), p(128));
        assert!(b.to_f64() > lo - 1e-12 && b.to_f64() < hi + 1e-12);
        let three_zeta2 = zeta_int(2, p(128)).unwrap().mul_int(3, p(128));
        assert!(b.overlaps(&three_zeta2));
    }

    #[test]
    fn index_shift_identity() {
        let prec = p(128);
        for (n, d) in [(1, 4), (1, 2), (1, 1), (3, 2)] {
            let a = exact(n, d);
            let a1 = a.add(&Ball::one(), prec);
            for s in 2..=10 {
                let lhs = hz(s, a.clone(), prec).sub(&hz(s, a1.clone(), prec), prec);
                let rhs = a.pow_int(-i64::from(s), prec).unwrap();
                assert!(lhs.overlaps(&rhs), "a = {n}/{d}, s = {s}");
            }
        }
    }

    #[test]
    fn radius_shrinks_with_precision() {
        let a = exact(3, 4);
        let lo = hz(5, a.clone(), p(64));
        let hi = hz(5, a, p(128));
        assert!(hi.rad() < lo.rad());
        assert!(lo.overlaps(&hi));
    }
}
