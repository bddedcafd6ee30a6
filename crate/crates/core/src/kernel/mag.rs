use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Dyadic;

const MAG_BITS: u64 = 30;

/// A nonnegative upper bound `man * 2^exp` with a short mantissa.
///
/// Every operation rounds away from zero, so a `Mag` computed from other
/// bounds is again a valid bound. Used for ball radii and tail certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

fn bit_len(v: u128) -> u64 {
    128 - v.leading_zeros() as u64
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn from_parts_up(man: u128, exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = bit_len(man);
        if bits <= MAG_BITS {
            return Mag { man: man as u64, exp }.trim();
        }
        let shift = bits - MAG_BITS;
        let mut m = man >> shift;
        if m << shift != man {
            m += 1;
        }
        Mag { man: m as u64, exp: exp + shift as i64 }.trim()
    }

    fn from_parts_down(man: u128, exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = bit_len(man);
        if bits <= MAG_BITS {
            return Mag { man: man as u64, exp }.trim();
        }
        let shift = bits - MAG_BITS;
        Mag { man: (man >> shift) as u64, exp: exp + shift as i64 }.trim()
    }

    fn trim(self) -> Mag {
        if self.man == 0 {
            return Mag::ZERO;
        }
        let tz = self.man.trailing_zeros();
        Mag { man: self.man >> tz, exp: self.exp + tz as i64 }
    }

    /// `2^e`
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1, exp: e }
    }

    pub fn from_u64(v: u64) -> Mag {
        Mag::from_parts_up(v as u128, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn mantissa(&self) -> u64 {
        self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Position of the leading bit plus one, i.e. `2^(top-1) <= self < 2^top`.
    fn top(&self) -> i64 {
        self.exp + bit_len(self.man as u128) as i64
    }

    pub fn add(self, other: Mag) -> Mag {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.top() >= other.top() { (self, other) } else { (other, self) };
        let lo = big.exp.min(small.exp);
        let hi = big.exp.max(small.exp);
        if hi - lo <= 90 {
            let a = (big.man as u128) << (big.exp - lo);
            let b = (small.man as u128) << (small.exp - lo);
            Mag::from_parts_up(a + b, lo)
        } else {
            // small < one unit in the last place of big
            Mag::from_parts_up(big.man as u128 + 1, big.exp)
        }
    }

    pub fn mul(self, other: Mag) -> Mag {
        Mag::from_parts_up(self.man as u128 * other.man as u128, self.exp + other.exp)
    }

    /// Upper bound on `self / other`. Panics on a zero divisor.
    pub fn div(self, other: Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        let num = (self.man as u128) << 64;
        let d = other.man as u128;
        let mut q = num / d;
        if q * d != num {
            q += 1;
        }
        Mag::from_parts_up(q, self.exp - other.exp - 64)
    }

    pub fn mul_2exp(self, k: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag { man: self.man, exp: self.exp + k }
        }
    }

    pub fn mul_u64(self, k: u64) -> Mag {
        self.mul(Mag::from_u64(k))
    }

    pub fn max(self, other: Mag) -> Mag {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Upper bound on `self^k`.
    pub fn pow(self, k: u32) -> Mag {
        let mut acc = Mag::from_u64(1);
        let mut base = self;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(base);
            }
        }
        acc
    }

    pub fn to_dyadic(&self) -> Dyadic {
        Dyadic::new(BigInt::from(self.man), self.exp)
    }

    pub fn to_rational(&self) -> BigRational {
        self.to_dyadic().to_rational()
    }

    fn from_big_up(m: &BigUint, exp: i64) -> Mag {
        let bits = m.bits();
        if bits <= 120 {
            let v = u128::try_from(m).expect("fits in u128");
            return Mag::from_parts_up(v, exp);
        }
        let shift = bits - 100;
        let hi: BigUint = m >> shift;
        let exact = (&hi << shift) == *m;
        let v = u128::try_from(&hi).expect("fits in u128") + u128::from(!exact);
        Mag::from_parts_up(v, exp + shift as i64)
    }

    fn from_big_down(m: &BigUint, exp: i64) -> Mag {
        let bits = m.bits();
        if bits <= 120 {
            let v = u128::try_from(m).expect("fits in u128");
            return Mag::from_parts_down(v, exp);
        }
        let shift = bits - 100;
        let hi: BigUint = m >> shift;
        Mag::from_parts_down(u128::try_from(&hi).expect("fits in u128"), exp + shift as i64)
    }

    /// Upper bound on `|d|`.
    pub fn from_dyadic_up(d: &Dyadic) -> Mag {
        Mag::from_big_up(d.mantissa().magnitude(), d.exponent())
    }

    /// Lower bound on `|d|`.
    pub fn from_dyadic_down(d: &Dyadic) -> Mag {
        Mag::from_big_down(d.mantissa().magnitude(), d.exponent())
    }

    /// Upper bound on `|r|`.
    pub fn from_rational_up(r: &BigRational) -> Mag {
        Mag::from_rational(r, true)
    }

    /// Lower bound on `|r|`.
    pub fn from_rational_down(r: &BigRational) -> Mag {
        Mag::from_rational(r, false)
    }

    fn from_rational(r: &BigRational, up: bool) -> Mag {
        if r.is_zero() {
            return Mag::ZERO;
        }
        let num = r.numer().abs().to_biguint().expect("nonnegative");
        let den = r.denom().abs().to_biguint().expect("nonnegative");
        // scale so the quotient carries ~64 significant bits
        let shift = 64 + den.bits() as i64 - num.bits() as i64;
        let (n, d) = if shift >= 0 {
            (num << shift as u64, den)
        } else {
            (num, den << (-shift) as u64)
        };
        let q = &n / &d;
        let exact = (&q * &d) == n;
        if up {
            let q = if exact { q } else { q + 1u32 };
            Mag::from_big_up(&q, -shift)
        } else {
            Mag::from_big_down(&q, -shift)
        }
    }

    /// Parse a nonnegative decimal such as `1e-40`, rounding down.
    pub fn parse_lower(s: &str) -> Option<Mag> {
        let r = super::decimal::parse_exact(s)?;
        if r.is_negative() {
            return None;
        }
        Some(Mag::from_rational_down(&r))
    }

    /// Approximate value; saturates to 0 or infinity outside the f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        self.man as f64 * 2f64.powi(e)
    }

    /// Approximate base-2 logarithm; `-inf` for zero.
    pub fn log2(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        (self.man as f64).log2() + self.exp as f64
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        match self.top().cmp(&other.top()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let lo = self.exp.min(other.exp);
        let a = (self.man as u128) << (self.exp - lo);
        let b = (other.man as u128) << (other.exp - lo);
        a.cmp(&b)
    }
}

impl fmt::Display for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::decimal::mag_to_decimal_up(*self, 3))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_rounds_up() {
        let a = Mag::from_u64((1 << 30) - 1);
        let b = Mag::pow2(-200);
        let s = a.add(b);
        assert!(s > a);
        assert!(s.to_rational() >= a.to_rational() + b.to_rational());
    }

    #[test]
    fn div_is_upper_bound() {
        let a = Mag::from_u64(1);
        let b = Mag::from_u64(3);
        let q = a.div(b);
        assert!(q.to_rational() * BigRational::from_integer(3.into()) >= BigRational::from_integer(1.into()));
        assert!(q.to_f64() - 1.0 / 3.0 < 1e-8);
    }

    #[test]
    fn rational_bounds_bracket() {
        let r = BigRational::new(BigInt::from(-22), BigInt::from(7));
        let up = Mag::from_rational_up(&r).to_rational();
        let down = Mag::from_rational_down(&r).to_rational();
        let abs = BigRational::new(BigInt::from(22), BigInt::from(7));
        assert!(down <= abs && abs <= up);
        assert!(up - down < BigRational::new(1.into(), BigInt::from(1u64 << 26)));
    }

    #[test]
    fn ordering_across_exponents() {
        assert!(Mag::pow2(-10) < Mag::pow2(-9));
        assert!(Mag::from_u64(3).mul_2exp(-2) < Mag::from_u64(1));
        assert_eq!(Mag::from_u64(4), Mag::pow2(2));
        assert!(Mag::ZERO < Mag::pow2(-100000));
    }

    #[test]
    fn parse_lower_is_below() {
        let m = Mag::parse_lower("1e-40").unwrap();
        let exact = crate::kernel::decimal::parse_exact("1e-40").unwrap();
        assert!(m.to_rational() <= exact);
        assert!(m.to_rational() * BigRational::new(1001.into(), 1000.into()) > exact);
    }
}
