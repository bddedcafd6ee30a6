use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::{Ball, Mag, Precision};

/// Default cap on the number of summed terms.
pub const DEFAULT_TERM_CAP: u64 = 1_000_000;

/// Partial sums above this many terms are not attempted just to report a best ball.
const BEST_EFFORT_TERMS: u64 = 100_000;

/// A truncated series value with its certified tail folded into the radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSum {
    pub value: Ball,
    pub terms: u64,
}

/// Smallest `N <= cap` with `tail(N) <= bound`, assuming `tail` is non-increasing.
pub fn find_cutoff<B>(tail: &B, bound: Mag, cap: u64) -> Option<u64>
where
    B: Fn(u64) -> Option<Mag>,
{
    let ok = |n: u64| tail(n).is_some_and(|t| t <= bound);
    if ok(0) {
        return Some(0);
    }
    let mut lo = 0u64; // known to fail
    let mut hi = 1u64;
    loop {
        if hi >= cap {
            if !ok(cap) {
                return None;
            }
            hi = cap;
            break;
        }
        if ok(hi) {
            break;
        }
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// `sum_{n>=0} term(n)` truncated where `tail(N) <= eps/2`, the tail being
/// added to the radius. Summation runs from the smallest terms up.
pub fn certified_sum<T, B>(term: T, tail: B, eps: Mag, cap: u64, prec: Precision) -> Result<SeriesSum>
where
    T: Fn(u64, Precision) -> Result<Ball>,
    B: Fn(u64) -> Option<Mag>,
{
    let half = eps.mul_2exp(-1);
    let Some(n) = find_cutoff(&tail, half, cap) else {
        let best = match tail(cap) {
            Some(t) if cap <= BEST_EFFORT_TERMS => Some(partial_sum(&term, cap, prec)?.add_error(t)),
            _ => None,
        };
        return Err(Error::Convergence { best, terms: cap as usize });
    };
    let t = tail(n).expect("cutoff has a tail bound");
    Ok(SeriesSum { value: partial_sum(&term, n, prec)?.add_error(t), terms: n })
}

fn partial_sum<T>(term: &T, n: u64, prec: Precision) -> Result<Ball>
where
    T: Fn(u64, Precision) -> Result<Ball>,
{
    let mut acc = Ball::zero();
    for i in (0..n).rev() {
        acc = acc.add(&term(i, prec)?, prec);
    }
    Ok(acc)
}

/// Tail of `u_n = c P(n) r^n` from `n = N`, for `P > 0` on `n >= N` whose
/// ratio `P(n+1)/P(n)` is non-increasing (a product of shifted linear factors):
/// `sum_{n>=N} u_n <= u_N / (1 - r P(N+1)/P(N))`, when that ratio is below 1.
pub fn poly_geometric_tail<P>(c: &BigRational, poly: P, r: &BigRational, n: u64) -> Option<Mag>
where
    P: Fn(u64) -> BigInt,
{
    let p_n = poly(n);
    if p_n.is_zero() {
        // a vanishing first term: shift the start by one
        return poly_geometric_tail(c, poly, r, n + 1);
    }
    let ratio = r * BigRational::new(poly(n + 1), p_n.clone());
    if ratio >= BigRational::one() {
        return None;
    }
    let slack = Mag::from_rational_down(&(BigRational::one() - ratio));
    if slack.is_zero() {
        return None;
    }
    let exponent = u32::try_from(n).ok()?;
    let first = Mag::from_rational_up(&c.abs())
        .mul(Mag::from_rational_up(&BigRational::from_integer(p_n.abs())))
        .mul(Mag::from_rational_up(&r.abs()).pow(exponent));
    Some(first.div(slack))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn cutoff_is_minimal() {
        let tail = |n: u64| Some(Mag::pow2(-(n as i64)));
        for target in [0i64, 1, 7, 100, 1000] {
            let n = find_cutoff(&tail, Mag::pow2(-target), 1 << 20).unwrap();
            assert_eq!(n, target as u64);
        }
        assert_eq!(find_cutoff(&tail, Mag::pow2(-50), 10), None);
    }

    #[test]
    fn geometric_series_sums_to_two() {
        let half = BigRational::new(1.into(), 2.into());
        let tail = |n| poly_geometric_tail(&BigRational::one(), |_| BigInt::one(), &half, n);
        let term = |n: u64, prec| Ok(Ball::one().mul_2exp(-(n as i64)).add(&Ball::zero(), prec));
        let s = certified_sum(term, tail, Mag::pow2(-100), DEFAULT_TERM_CAP, p(128)).unwrap();
        assert!(s.value.contains_rational(&BigRational::from_integer(2.into())));
        assert!(s.value.rad() <= Mag::pow2(-100));
    }

    #[test]
    fn tail_bound_dominates_brute_force() {
        // sum_{n>=N} n^2 (3/4)^n against a long exact partial sum
        let r = BigRational::new(3.into(), 4.into());
        let poly = |n: u64| BigInt::from(n) * BigInt::from(n);
        for n in [10u64, 25, 60] {
            let bound = poly_geometric_tail(&BigRational::one(), poly, &r, n).unwrap();
            let mut exact = BigRational::zero();
            let mut pw = num_traits::pow(r.clone(), n as usize);
            for k in n..n + 600 {
                exact += BigRational::from_integer(poly(k)) * &pw;
                pw *= &r;
            }
            assert!(exact <= bound.to_rational(), "n = {n}");
        }
    }

    #[test]
    fn cap_reports_convergence_error() {
        let tail = |n: u64| Some(Mag::from_u64(1).div(Mag::from_u64(n + 1)));
        let term = |_: u64, _| Ok(Ball::zero());
        let err = certified_sum(term, tail, Mag::pow2(-40), 3, p(64)).unwrap_err();
        match err {
            Error::Convergence { best, terms } => {
                assert_eq!(terms, 3);
                assert!(best.is_some());
            }
            other => panic!("unexpected {other}"),
        }
    }
}
