use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Mag;

/// An exact binary fraction `man * 2^exp`, kept with trailing zero bits stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Dyadic {
        if man.is_zero() {
            return Dyadic::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { man, exp }
        } else {
            Dyadic { man: man >> tz, exp: exp + tz as i64 }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Dyadic {
        Dyadic::new(v.into(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Exponent of the leading bit plus one; `i64::MIN` for zero.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.man.bits() as i64
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        let lo = self.exp.min(other.exp);
        let a = &self.man << (self.exp - lo) as u64;
        let b = &other.man << (other.exp - lo) as u64;
        (a, b, lo)
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, lo) = self.aligned(other);
        Dyadic::new(a + b, lo)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &other.man, self.exp + other.exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    pub fn mul_2exp(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    /// Round to at most `prec` significant bits, to nearest. Returns the
    /// rounded value and a bound on the rounding error.
    pub fn round(&self, prec: u32) -> (Dyadic, Mag) {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::ZERO);
        }
        let shift = bits - prec as u64;
        let sign = self.man.sign();
        let mag = self.man.magnitude();
        let half = num_bigint::BigUint::one() << (shift - 1);
        let q = (mag + half) >> shift;
        let man = BigInt::from_biguint(if sign == Sign::Minus { Sign::Minus } else { Sign::Plus }, q);
        let err = Mag::pow2(self.exp + shift as i64 - 1);
        (Dyadic::new(man, self.exp + shift as i64), err)
    }

    /// `self / other` to `prec` bits with a bound on the error. `other` must be nonzero.
    pub fn div(&self, other: &Dyadic, prec: u32) -> (Dyadic, Mag) {
        assert!(!other.is_zero(), "Dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), Mag::ZERO);
        }
        let k = (prec as i64 + 2 + other.man.bits() as i64 - self.man.bits() as i64).max(0);
        let num = &self.man << k as u64;
        let (q, r) = num.div_rem(&other.man);
        let exp = self.exp - k - other.exp;
        let trunc_err = if r.is_zero() { Mag::ZERO } else { Mag::pow2(exp) };
        let (rounded, round_err) = Dyadic::new(q, exp).round(prec);
        (rounded, trunc_err.add(round_err))
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// The dyadic value of `r` if its denominator is a power of two.
    pub fn from_rational_exact(r: &BigRational) -> Option<Dyadic> {
        let den = r.denom();
        let tz = den.trailing_zeros().unwrap_or(0);
        if (den >> { tz }) != BigInt::one() {
            return None;
        }
        Some(Dyadic::new(r.numer().clone(), -(tz as i64)))
    }

    /// Approximate conversion.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let shift = (bits - 60).max(0);
        let top: BigInt = &self.man >> shift as u64;
        let m = top.to_f64().unwrap_or(0.0);
        let e = (self.exp + shift).clamp(-2000, 2000) as i32;
        m * 2f64.powi(e)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.man.sign();
        let sb = other.man.sign();
        if sa != sb {
            let rank = |s: Sign| match s {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            };
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        // same sign, both nonzero: compare magnitudes by leading bit first
        let mag_order = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                let (a, b, _) = self.aligned(other);
                a.abs().cmp(&b.abs())
            }
            ord => ord,
        };
        if sa == Sign::Minus {
            mag_order.reverse()
        } else {
            mag_order
        }
    }
}
