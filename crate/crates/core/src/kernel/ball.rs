use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{Dyadic, Mag, Precision};
use crate::error::{Error, Result};

/// A real number enclosure `[mid - rad, mid + rad]`.
///
/// Every operation returns a ball containing the exact result for all points
/// of its inputs. Midpoints are rounded to nearest at the working precision
/// and the rounding error is folded into the radius.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    mid: Dyadic,
    rad: Mag,
}

impl Ball {
    pub fn new(mid: Dyadic, rad: Mag) -> Ball {
        Ball { mid, rad }
    }

    pub fn exact(mid: Dyadic) -> Ball {
        Ball { mid, rad: Mag::ZERO }
    }

    pub fn zero() -> Ball {
        Ball::exact(Dyadic::zero())
    }

    pub fn one() -> Ball {
        Ball::from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Ball {
        Ball::exact(Dyadic::from_int(v))
    }

    /// Enclosure of a rational; exact when the denominator is a power of two.
    pub fn from_rational(r: &BigRational, prec: Precision) -> Ball {
        if let Some(d) = Dyadic::from_rational_exact(r) {
            return Ball::exact(d);
        }
        let (q, err) = Dyadic::from_int(r.numer().clone()).div(&Dyadic::from_int(r.denom().clone()), prec.working());
        Ball::new(q, err)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    fn rounded(mid: Dyadic, rad: Mag, prec: Precision) -> Ball {
        let (m, err) = mid.round(prec.working());
        Ball { mid: m, rad: rad.add(err) }
    }

    pub fn add(&self, other: &Ball, prec: Precision) -> Ball {
        Ball::rounded(self.mid.add(&other.mid), self.rad.add(other.rad), prec)
    }

    pub fn sub(&self, other: &Ball, prec: Precision) -> Ball {
        Ball::rounded(self.mid.sub(&other.mid), self.rad.add(other.rad), prec)
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: self.mid.neg(), rad: self.rad }
    }

    pub fn mul(&self, other: &Ball, prec: Precision) -> Ball {
        let am = Mag::from_dyadic_up(&self.mid);
        let bm = Mag::from_dyadic_up(&other.mid);
        let rad = am.mul(other.rad).add(bm.mul(self.rad)).add(self.rad.mul(other.rad));
        Ball::rounded(self.mid.mul(&other.mid), rad, prec)
    }

    pub fn mul_int<T: Into<BigInt>>(&self, k: T, prec: Precision) -> Ball {
        self.mul(&Ball::from_int(k), prec)
    }

    pub fn div_int<T: Into<BigInt>>(&self, k: T, prec: Precision) -> Result<Ball> {
        self.div(&Ball::from_int(k), prec)
    }

    /// Exact scaling by a power of two.
    pub fn mul_2exp(&self, k: i64) -> Ball {
        Ball { mid: self.mid.mul_2exp(k), rad: self.rad.mul_2exp(k) }
    }

    pub fn div(&self, other: &Ball, prec: Precision) -> Result<Ball> {
        if other.contains_zero() {
            return Err(Error::Domain("division by a ball containing zero".into()));
        }
        let (q, q_err) = self.mid.div(&other.mid, prec.working());
        if other.rad.is_zero() && self.rad.is_zero() {
            return Ok(Ball::new(q, q_err));
        }
        // |a/b - am/bm| <= (|bm| ra + |am| rb) / (|bm| (|bm| - rb))
        let bm_up = Mag::from_dyadic_up(&other.mid);
        let bm_down = Mag::from_dyadic_down(&other.mid);
        let gap = Mag::from_dyadic_down(&other.mid.abs().sub(&other.rad.to_dyadic()));
        let am_up = Mag::from_dyadic_up(&self.mid);
        let num = bm_up.mul(self.rad).add(am_up.mul(other.rad));
        let prop = num.div(bm_down.mul(gap));
        Ok(Ball::new(q, q_err.add(prop)))
    }

    pub fn inv(&self, prec: Precision) -> Result<Ball> {
        Ball::one().div(self, prec)
    }

    pub fn sqr(&self, prec: Precision) -> Ball {
        self.mul(self, prec)
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow_int(&self, k: i64, prec: Precision) -> Result<Ball> {
        if k < 0 {
            return self.inv(prec)?.pow_int(-k, prec);
        }
        let mut result = Ball::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr(prec);
            }
        }
        Ok(result)
    }

    /// Widen the radius by `err`.
    pub fn add_error(&self, err: Mag) -> Ball {
        Ball { mid: self.mid.clone(), rad: self.rad.add(err) }
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad.to_dyadic())
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad.to_dyadic())
    }

    /// Upper bound on `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        Mag::from_dyadic_up(&self.mid).add(self.rad)
    }

    /// Lower bound on `|x|` over the ball; zero if the ball contains zero.
    pub fn abs_lower(&self) -> Mag {
        if self.contains_zero() {
            return Mag::ZERO;
        }
        Mag::from_dyadic_down(&self.mid.abs().sub(&self.rad.to_dyadic()))
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad.to_dyadic()
    }

    pub fn is_positive(&self) -> bool {
        self.lower() > Dyadic::zero()
    }

    pub fn is_negative(&self) -> bool {
        self.upper() < Dyadic::zero()
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        (r - self.mid.to_rational()).abs() <= self.rad.to_rational()
    }

    pub fn contains_dyadic(&self, d: &Dyadic) -> bool {
        d.sub(&self.mid).abs() <= self.rad.to_dyadic()
    }

    /// True if `other` lies entirely inside `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        self.mid.sub(&other.mid).abs() <= self.rad.add(other.rad).to_dyadic()
    }

    /// Distance between the two enclosures; zero when they overlap.
    pub fn gap(&self, other: &Ball) -> Dyadic {
        let d = self.mid.sub(&other.mid).abs().sub(&self.rad.to_dyadic()).sub(&other.rad.to_dyadic());
        if d.is_negative() {
            Dyadic::zero()
        } else {
            d
        }
    }

    /// Tightest ball containing the intersection, if nonempty.
    pub fn intersect(&self, other: &Ball) -> Option<Ball> {
        if !self.overlaps(other) {
            return None;
        }
        let lo = self.lower().max(other.lower());
        let hi = self.upper().min(other.upper());
        let mid = lo.add(&hi).mul_2exp(-1);
        let rad = Mag::from_dyadic_up(&hi.sub(&lo).mul_2exp(-1));
        Some(Ball::new(mid, rad))
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Midpoint as an exact rational.
    pub fn mid_rational(&self) -> BigRational {
        self.mid.to_rational()
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, r) = super::decimal::format_ball(self, None);
        write!(f, "[{m} +/- {r}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn add_exact_integers() {
        let s = Ball::from_int(1).add(&Ball::from_int(2), p(64));
        assert!(s.contains_rational(&rat(3, 1)));
        assert!(s.rad() <= Mag::pow2(-60));
    }

    #[test]
    fn zero_is_absorbing() {
        let x = Ball::new(Dyadic::new(12345.into(), -7), Mag::pow2(-20));
        let z = Ball::zero().mul(&x, p(64));
        assert!(z.contains_rational(&rat(0, 1)));
        assert!(z.mid().is_zero());
    }

    #[test]
    fn one_third_at_64_bits() {
        let third = Ball::one().div(&Ball::from_int(3), p(64)).unwrap();
        assert!(third.contains_rational(&rat(1, 3)));
        assert!(third.rad() <= Mag::pow2(-60));
        // agrees with a 256-bit recomputation
        let fine = Ball::one().div(&Ball::from_int(3), p(256)).unwrap();
        assert!(third.contains(&fine));
    }

    #[test]
    fn division_by_zero_ball_is_domain_error() {
        let d = Ball::new(Dyadic::zero(), Mag::pow2(-3));
        assert!(matches!(Ball::one().div(&d, p(64)), Err(Error::Domain(_))));
        let straddle = Ball::new(Dyadic::new(1.into(), -4), Mag::pow2(-3));
        assert!(Ball::one().div(&straddle, p(64)).is_err());
    }

    #[test]
    fn division_with_radii_contains_endpoints() {
        let a = Ball::new(Dyadic::from_int(5), Mag::pow2(-4));
        let b = Ball::new(Dyadic::from_int(3), Mag::pow2(-5));
        let q = a.div(&b, p(64)).unwrap();
        for (x, y) in [(a.lower(), b.lower()), (a.lower(), b.upper()), (a.upper(), b.lower()), (a.upper(), b.upper())] {
            assert!(q.contains_rational(&(x.to_rational() / y.to_rational())));
        }
    }

    #[test]
    fn pow_int_matches_exact() {
        let x = Ball::from_rational(&rat(3, 2), p(64));
        let y = x.pow_int(5, p(64)).unwrap();
        assert!(y.contains_rational(&rat(243, 32)));
        let z = x.pow_int(-3, p(64)).unwrap();
        assert!(z.contains_rational(&rat(8, 27)));
    }

    #[test]
    fn overlap_and_gap() {
        let a = Ball::new(Dyadic::from_int(1), Mag::pow2(-1));
        let b = Ball::new(Dyadic::from_int(2), Mag::pow2(-1));
        let c = Ball::new(Dyadic::from_int(3), Mag::pow2(-2));
        assert!(a.overlaps(&b));
        assert!(!a.overlaps(&c));
        assert_eq!(a.gap(&c), Dyadic::new(5.into(), -2));
        let i = a.intersect(&b).unwrap();
        assert!(i.contains_rational(&rat(3, 2)));
        assert!(i.rad().is_zero());
    }
}
