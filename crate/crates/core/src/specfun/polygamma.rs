use super::combinatorics::factorial;
use super::constants::euler_gamma;
use super::hurwitz::{check_unit_interval, hurwitz_zeta, HurwitzArg};
use super::zeta::zeta_minus_one;
use crate::error::Result;
use crate::kernel::{Ball, Dyadic, Mag, Precision};

/// Order `m >= 0` and argument `x` enclosed strictly in `(0, 4]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygammaArg {
    m: u32,
    x: Ball,
}

impl PolygammaArg {
    pub fn new(m: u32, x: Ball) -> Result<PolygammaArg> {
        check_unit_interval(&x, "polygamma argument")?;
        Ok(PolygammaArg { m, x })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn x(&self) -> &Ball {
        &self.x
    }
}

/// `psi^{(m)}(x)`, the `(m+1)`-th derivative of `log Gamma`.
///
/// For `m >= 1` this is `(-1)^{m+1} m! zeta(m+1, x)`. For `m = 0` the digamma
/// Taylor series about 1 is used after shifting `x` into `[1/2, 3/2)` with
/// `psi(x+1) = psi(x) + 1/x`.
pub fn polygamma(arg: &PolygammaArg, prec: Precision) -> Result<Ball> {
    if arg.m == 0 {
        return digamma(&arg.x, prec);
    }
    let h = hurwitz_zeta(&HurwitzArg::new(arg.m + 1, arg.x.clone())?, prec)?;
    let scaled = h.mul_int(factorial(u64::from(arg.m)), prec);
    Ok(if arg.m % 2 == 1 { scaled } else { scaled.neg() })
}

/// Shorthand for `polygamma(m, x)` with an exact argument.
pub fn polygamma_at(m: u32, x: Ball, prec: Precision) -> Result<Ball> {
    polygamma(&PolygammaArg::new(m, x)?, prec)
}

fn digamma(x: &Ball, prec: Precision) -> Result<Ball> {
    let half = Dyadic::new(1.into(), -1);
    let three_halves = Dyadic::new(3.into(), -1);
    let mut shift = Ball::zero();
    let mut y = x.clone();
    // psi(y) = psi(y + 1) - 1/y
    while y.mid() < &half {
        shift = shift.sub(&y.inv(prec)?, prec);
        y = y.add(&Ball::one(), prec);
    }
    // psi(y) = psi(y - 1) + 1/(y - 1)
    while y.mid() >= &three_halves {
        y = y.sub(&Ball::one(), prec);
        shift = shift.add(&y.inv(prec)?, prec);
    }
    Ok(digamma_near_one(&y.sub(&Ball::one(), prec), prec)?.add(&shift, prec))
}

/// `psi(1+z) = -gamma - sum_{k>=1} zeta(k+1) (-z)^k`, rewritten with the
/// geometric part summed in closed form:
/// `psi(1+z) = -gamma + z/(1+z) - sum_{k>=1} (zeta(k+1)-1) (-z)^k`.
fn digamma_near_one(z: &Ball, prec: Precision) -> Result<Ball> {
    let z_abs = z.abs_upper();
    // |zeta(k+1)-1| <= 3 * 2^{-(k+1)}: terms shrink by |z|/2 <= 3/8 here
    let ratio = z_abs.mul_2exp(-1);
    let target = Mag::pow2(-(i64::from(prec.working()) + 4));
    let neg_z = z.neg();
    let mut power = neg_z.clone();
    let mut sum = Ball::zero();
    let mut bound = Mag::from_u64(3).mul(ratio).mul_2exp(-1);
    let mut k = 1u32;
    while bound > target.mul_2exp(-1) {
        sum = sum.add(&zeta_minus_one(k + 1, prec)?.mul(&power, prec), prec);
        power = power.mul(&neg_z, prec);
        k += 1;
        bound = bound.mul(ratio);
    }
    // remaining terms bounded by the geometric tail bound / (1 - ratio), ratio <= 3/8
    let tail = bound.mul_u64(8).div(Mag::from_u64(5));
    let geometric = z.div(&z.add(&Ball::one(), prec), prec)?;
    let gamma = euler_gamma(prec)?;
    Ok(geometric.sub(&gamma, prec).sub(&sum, prec).add_error(tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta::zeta_int;
    use num_rational::BigRational;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn q(n: i64, d: i64) -> Ball {
        Ball::from_rational(&BigRational::new(n.into(), d.into()), p(256))
    }

    #[test]
    fn digamma_at_one_is_minus_gamma() {
        let prec = p(256);
        let psi = polygamma_at(0, Ball::one(), prec).unwrap();
        let g = euler_gamma(prec).unwrap();
        assert!(psi.add(&g, prec).contains_rational(&BigRational::from_integer(0.into())));
    }

    #[test]
    fn trigamma_and_tetragamma_at_one() {
        let prec = p(128);
        let z2 = zeta_int(2, prec).unwrap();
        let z3 = zeta_int(3, prec).unwrap();
        assert!(polygamma_at(1, Ball::one(), prec).unwrap().overlaps(&z2));
        assert!(polygamma_at(2, Ball::one(), prec).unwrap().overlaps(&z3.mul_int(-2, prec)));
    }

    #[test]
    fn digamma_half_known_value() {
        // psi(1/2) = -gamma - 2 ln 2
        let prec = p(128);
        let psi = polygamma_at(0, q(1, 2), prec).unwrap();
        let expected = euler_gamma(prec)
            .unwrap()
            .add(&crate::specfun::constants::ln2(prec).unwrap().mul_2exp(1), prec)
            .neg();
        assert!(psi.overlaps(&expected));
        assert!(psi.rad() < Mag::pow2(-120));
    }

    #[test]
    fn recurrence_differentiated() {
        // psi^{(l)}(2-z) - psi^{(l)}(1-z) = (-1)^l l! (1-z)^{-l-1}
        let prec = p(128);
        for (n, d) in [(-1, 2), (0, 1), (1, 4), (1, 2)] {
            let z = q(n, d);
            let one_minus = Ball::one().sub(&z, prec);
            let two_minus = one_minus.add(&Ball::one(), prec);
            for l in 0..=5u32 {
                let lhs = polygamma_at(l, two_minus.clone(), prec)
                    .unwrap()
                    .sub(&polygamma_at(l, one_minus.clone(), prec).unwrap(), prec);
                let mut rhs = one_minus.pow_int(-(i64::from(l) + 1), prec).unwrap().mul_int(factorial(u64::from(l)), prec);
                if l % 2 == 1 {
                    rhs = rhs.neg();
                }
                assert!(lhs.overlaps(&rhs), "z = {n}/{d}, l = {l}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(PolygammaArg::new(0, Ball::zero()).is_err());
        assert!(PolygammaArg::new(3, q(-1, 3)).is_err());
    }

    #[test]
    fn shifted_arguments_agree_with_recurrence() {
        let prec = p(128);
        let x = q(7, 2);
        let direct = polygamma_at(0, x.clone(), prec).unwrap();
        let down = polygamma_at(0, q(5, 2), prec).unwrap().add(&q(2, 5), prec);
        assert!(direct.overlaps(&down));
    }
}
