mod lemma;
mod series;

pub use lemma::{lemma21_check, ExactPoly, Lemma21Outcome};
pub use series::{certified_sum, find_cutoff, poly_geometric_tail, SeriesSum, DEFAULT_TERM_CAP};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{Ball, Mag, Precision};
use crate::specfun::{binomial, falling_factorial, polygamma_at, rising_factorial, zeta_minus_one};

type Evaluator<'a> = Box<dyn Fn(u64, Precision) -> Result<Ball> + Send + Sync + 'a>;
type TailBound<'a> = Box<dyn Fn(u64) -> Option<Mag> + Send + Sync + 'a>;

/// A sequence `alpha_n` with limit `alpha`, plus a certificate bounding
/// `sum_{n>=N} |(n+1)_{M-1} (alpha - alpha_{n+M-1})|` for the `M` in use.
pub struct SequenceSpec<'a> {
    pub term: Evaluator<'a>,
    pub limit: Ball,
    pub tail_bound: TailBound<'a>,
    /// `alpha - alpha_n` evaluated directly, when that avoids cancellation.
    pub deficit: Option<Evaluator<'a>>,
}

impl<'a> SequenceSpec<'a> {
    /// `alpha_n = zeta(n+2)`, `alpha = 1`, certified for the given `M`
    /// through `zeta(s) - 1 <= 3 * 2^{-s}`.
    pub fn zeta_shifted(m: u32) -> SequenceSpec<'static> {
        let c = BigRational::new(3.into(), BigInt::one() << (m + 1));
        let half = BigRational::new(1.into(), 2.into());
        SequenceSpec {
            term: Box::new(|n, prec| Ok(zeta_minus_one(n as u32 + 2, prec)?.add(&Ball::one(), prec))),
            limit: Ball::one(),
            tail_bound: Box::new(move |n| {
                poly_geometric_tail(&c, |k| rising_factorial(k, u64::from(m) - 1), &half, n)
            }),
            deficit: Some(Box::new(|n, prec| Ok(zeta_minus_one(n as u32 + 2, prec)?.neg()))),
        }
    }

    /// The constant sequence `alpha_n = alpha`.
    pub fn constant(alpha: Ball) -> SequenceSpec<'static> {
        let value = alpha.clone();
        SequenceSpec {
            term: Box::new(move |_, _| Ok(value.clone())),
            limit: alpha,
            tail_bound: Box::new(|_| Some(Mag::ZERO)),
            deficit: None,
        }
    }
}

/// `sum_{n>=0} (n+1)_{M-1} (alpha - alpha_{n+M-1})`, truncated once the tail
/// certificate drops below `eps/2`.
pub fn abel_rhs_sum(seq: &SequenceSpec<'_>, m: u32, prec: Precision, eps: Mag, cap: u64) -> Result<SeriesSum> {
    if m == 0 {
        return Err(Error::Invalid("M must be positive".into()));
    }
    let shift = u64::from(m) - 1;
    let term = |n: u64, prec: Precision| -> Result<Ball> {
        let idx = n + shift;
        let deficit = match &seq.deficit {
            Some(d) => d(idx, prec)?,
            None => seq.limit.sub(&(seq.term)(idx, prec)?, prec),
        };
        Ok(deficit.mul_int(rising_factorial(n, shift), prec))
    };
    certified_sum(term, &seq.tail_bound, eps, cap, prec)
}

/// Data for `sum_{n>=0} a_n (L(n + sigma + 1) - 1)`.
pub struct DirichletSpec<'a> {
    pub a_seq: Evaluator<'a>,
    pub l_minus_one: Box<dyn Fn(u32, Precision) -> Result<Ball> + Send + Sync + 'a>,
    pub sigma: u32,
    pub tail_bound: TailBound<'a>,
}

impl DirichletSpec<'static> {
    /// `L = zeta` with `a_n` an integer polynomial in `n` (ascending coefficients).
    /// The tail uses `|a_n| <= (sum |c_i|) (n+1)^d` and `zeta(s) - 1 <= 3 * 2^{-s}`.
    pub fn zeta_polynomial(sigma: u32, coeffs: Vec<i64>) -> DirichletSpec<'static> {
        let degree = coeffs.len().saturating_sub(1) as u32;
        let norm: i64 = coeffs.iter().map(|c| c.abs()).sum();
        let c = BigRational::new((3 * norm).into(), BigInt::one() << (sigma + 1));
        let half = BigRational::new(1.into(), 2.into());
        let poly = coeffs.clone();
        DirichletSpec {
            a_seq: Box::new(move |n, _| {
                let value = poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * n + c);
                Ok(Ball::from_int(value))
            }),
            l_minus_one: Box::new(zeta_minus_one),
            sigma,
            tail_bound: Box::new(move |n| {
                if norm == 0 {
                    return Some(Mag::ZERO);
                }
                poly_geometric_tail(&c, |k| num_traits::pow(BigInt::from(k + 1), degree as usize), &half, n)
            }),
        }
    }
}

pub fn dirichlet_tail_sum(spec: &DirichletSpec<'_>, prec: Precision, eps: Mag, cap: u64) -> Result<SeriesSum> {
    let term = |n: u64, prec: Precision| -> Result<Ball> {
        let a = (spec.a_seq)(n, prec)?;
        if a.is_exact() && a.mid().is_zero() {
            return Ok(Ball::zero());
        }
        Ok(a.mul(&(spec.l_minus_one)(n as u32 + spec.sigma + 1, prec)?, prec))
    };
    certified_sum(term, &spec.tail_bound, eps, cap, prec)
}

/// `sum_{j=0}^{M-1} C(M-1, j) (-1)^{M-1-j} psi^{(l+M-1-j)}(1) e!/(e-j)!`, with the
/// power factor read as the falling factorial of `e` (zero for `0 <= e < j`).
pub fn psi_power_leibniz_sum(l: u32, m: u32, e: i64, prec: Precision) -> Result<Ball> {
    if m == 0 {
        return Err(Error::Invalid("M must be positive".into()));
    }
    let mut acc = Ball::zero();
    for j in 0..m {
        let ff = falling_factorial(e, u64::from(j));
        if ff.is_zero() {
            continue;
        }
        let mut coeff = binomial(u64::from(m - 1), u64::from(j)) * ff;
        if (m - 1 - j) % 2 == 1 {
            coeff = -coeff;
        }
        let psi = polygamma_at(l + m - 1 - j, Ball::one(), prec)?;
        acc = acc.add(&psi.mul_int(coeff, prec), prec);
    }
    Ok(acc)
}

/// `lim_{z->1-} d^M/dz^M [(1-z) psi^{(l)}(2-z) z^e]`, by the closed Leibniz form
/// `-M sum_j C(M-1, j) (-1)^{M-1-j} psi^{(l+M-1-j)}(1) e!/(e-j)!`.
pub fn derivative_limit_psi_power(l: u32, m: u32, e: i64, prec: Precision) -> Result<Ball> {
    Ok(psi_power_leibniz_sum(l, m, e, prec)?.mul_int(-i64::from(m), prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{euler_gamma, zeta_int};

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn eps() -> Mag {
        Mag::pow2(-170)
    }

    #[test]
    fn goldbach_sum() {
        let s = abel_rhs_sum(&SequenceSpec::zeta_shifted(1), 1, p(256), eps(), DEFAULT_TERM_CAP).unwrap();
        assert!(s.value.contains_rational(&BigRational::from_integer((-1).into())));
        assert!(s.value.rad() <= eps());
    }

    #[test]
    fn constant_sequence_sums_to_zero() {
        let seq = SequenceSpec::constant(Ball::from_int(5));
        for m in 1..4 {
            let s = abel_rhs_sum(&seq, m, p(64), eps(), DEFAULT_TERM_CAP).unwrap();
            assert!(s.value.contains_zero());
        }
    }

    #[test]
    fn second_order_matches_telescoping() {
        // sum_{k>=2} k (zeta(k)-1) = 1 + zeta(2) and sum_{k>=2} (zeta(k)-1) = 1
        let prec = p(256);
        let s = abel_rhs_sum(&SequenceSpec::zeta_shifted(2), 2, prec, eps(), DEFAULT_TERM_CAP).unwrap();
        let expected = Ball::one().sub(&zeta_int(2, prec).unwrap(), prec);
        assert!(s.value.overlaps(&expected));
    }

    #[test]
    fn tail_honesty_under_tighter_eps() {
        let seq = SequenceSpec::zeta_shifted(3);
        let coarse = abel_rhs_sum(&seq, 3, p(128), Mag::pow2(-60), DEFAULT_TERM_CAP).unwrap();
        let fine = abel_rhs_sum(&seq, 3, p(128), Mag::pow2(-120), DEFAULT_TERM_CAP).unwrap();
        assert!(fine.terms > coarse.terms);
        assert!(coarse.value.contains(&fine.value) || coarse.value.overlaps(&fine.value));
    }

    #[test]
    fn tail_bound_is_non_increasing() {
        let seq = SequenceSpec::zeta_shifted(4);
        // None stands for an unbounded tail and may only occur before the first bound
        let first = (0..300).find(|&n| (seq.tail_bound)(n).is_some()).unwrap();
        assert!(first < 10);
        let mut prev = (seq.tail_bound)(first).unwrap();
        for n in first + 1..300 {
            let t = (seq.tail_bound)(n).unwrap();
            assert!(t <= prev);
            prev = t;
        }
        assert!(prev < Mag::pow2(-250));
    }

    #[test]
    fn dirichlet_examples() {
        let prec = p(256);
        let ones = dirichlet_tail_sum(&DirichletSpec::zeta_polynomial(1, vec![1]), prec, eps(), DEFAULT_TERM_CAP).unwrap();
        assert!(ones.value.contains_rational(&BigRational::one()));
        let zeros = dirichlet_tail_sum(&DirichletSpec::zeta_polynomial(1, vec![0]), prec, eps(), DEFAULT_TERM_CAP).unwrap();
        assert!(zeros.value.contains_zero() && zeros.terms == 0);
        // sum (n+1)(zeta(n+2)-1) = sum_{k>=2} (k-1)(zeta(k)-1) = zeta(2)
        let lin = dirichlet_tail_sum(&DirichletSpec::zeta_polynomial(1, vec![1, 1]), prec, eps(), DEFAULT_TERM_CAP).unwrap();
        assert!(lin.value.overlaps(&zeta_int(2, prec).unwrap()));
    }

    #[test]
    fn l_minus_one_vanishes_at_large_s() {
        let spec = DirichletSpec::zeta_polynomial(1, vec![1]);
        assert!((spec.l_minus_one)(400, p(64)).unwrap().abs_upper() < Mag::pow2(-390));
    }

    #[test]
    fn derivative_limit_examples() {
        let prec = p(128);
        let z2 = zeta_int(2, prec).unwrap();
        let z3 = zeta_int(3, prec).unwrap();
        assert!(derivative_limit_psi_power(1, 1, 2, prec).unwrap().overlaps(&z2.neg()));
        for l in 0..4 {
            let expected = polygamma_at(l, Ball::one(), prec).unwrap().neg();
            assert!(derivative_limit_psi_power(l, 1, 0, prec).unwrap().overlaps(&expected));
        }
        let expected = z3.mul_int(2, prec).add(&z2.mul_int(2, prec), prec).mul_int(-2, prec);
        assert!(derivative_limit_psi_power(1, 2, 2, prec).unwrap().overlaps(&expected));
        // e = -1 keeps every j term: M = 1, l = 0 gives gamma
        assert!(derivative_limit_psi_power(0, 1, -1, prec).unwrap().overlaps(&euler_gamma(prec).unwrap()));
    }

    #[test]
    fn derivative_limit_matches_finite_differences() {
        // F(z) = (1-z) psi'(2-z) z^2, second central difference at z = 1
        let prec = p(256);
        let h = Ball::one().mul_2exp(-20);
        let f = |z: Ball| -> Ball {
            let w = Ball::from_int(2).sub(&z, prec);
            let one_minus = Ball::one().sub(&z, prec);
            one_minus.mul(&polygamma_at(1, w, prec).unwrap(), prec).mul(&z.sqr(prec), prec)
        };
        let fp = f(Ball::one().add(&h, prec));
        let fm = f(Ball::one().sub(&h, prec));
        let second = fp.add(&fm, prec).sub(&f(Ball::one()).mul_int(2, prec), prec).mul_2exp(40);
        let closed = derivative_limit_psi_power(1, 2, 2, prec).unwrap();
        assert!((second.to_f64() - closed.to_f64()).abs() < 1e-8);
    }

    #[test]
    fn zero_power_factors_contribute_nothing() {
        let prec = p(128);
        let skipped = psi_power_leibniz_sum(2, 5, 2, prec).unwrap();
        // explicit assembly over every j, zero factors included
        let mut explicit = Ball::zero();
        for j in 0..5u32 {
            let mut coeff = binomial(4, u64::from(j)) * falling_factorial(2, u64::from(j));
            if (4 - j) % 2 == 1 {
                coeff = -coeff;
            }
            let psi = polygamma_at(2 + 4 - j, Ball::one(), prec).unwrap();
            explicit = explicit.add(&psi.mul_int(coeff, prec), prec);
        }
        assert_eq!(skipped, explicit);
    }
}
