use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{params, IdentityReport, ParamValue, Params, Side, Variant};
use crate::abel::{
    abel_rhs_sum, derivative_limit_psi_power, dirichlet_tail_sum, lemma21_check, poly_geometric_tail,
    psi_power_leibniz_sum, certified_sum, DirichletSpec, ExactPoly, SequenceSpec, SeriesSum,
};
use crate::error::{Error, Result};
use crate::kernel::{adaptive_eval_with, Ball, Mag, Precision};
use crate::specfun::{
    binomial, euler_gamma, factorial, hurwitz_zeta, polygamma_at, rising_factorial, stirling2, zeta_minus_one,
    HurwitzArg,
};
use crate::specfun::zeta::zeta_int_euler_maclaurin;

/// Evaluation controls shared by every identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub prec: Precision,
    pub eps: Mag,
    pub term_cap: u64,
    pub max_doublings: u32,
}

impl EvalOptions {
    pub fn new(prec: Precision, eps: Mag) -> EvalOptions {
        EvalOptions { prec, eps, term_cap: crate::abel::DEFAULT_TERM_CAP, max_doublings: crate::kernel::DEFAULT_MAX_DOUBLINGS }
    }
}

fn int(v: i64) -> ParamValue {
    ParamValue::Int(v)
}

fn rat(r: &BigRational) -> ParamValue {
    ParamValue::Rational(r.clone())
}

/// Repeat a series evaluation at doubled precision until its radius is within `eps`.
fn adaptive_series<F>(f: F, opts: &EvalOptions) -> Result<SeriesSum>
where
    F: Fn(Precision) -> Result<SeriesSum>,
{
    let mut prec = opts.prec;
    let mut best: Option<SeriesSum> = None;
    for attempt in 0..=opts.max_doublings {
        let s = f(prec)?;
        if s.value.rad() <= opts.eps {
            return Ok(s);
        }
        if best.as_ref().is_none_or(|b| s.value.rad() < b.value.rad()) {
            best = Some(s);
        }
        if attempt < opts.max_doublings {
            prec = prec.doubled();
        }
    }
    let best = best.expect("at least one attempt");
    Err(Error::Precision { best: best.value, target: opts.eps, bits: prec.bits() })
}

fn adaptive_value<F>(f: F, opts: &EvalOptions) -> Result<Ball>
where
    F: Fn(Precision) -> Result<Ball>,
{
    adaptive_eval_with(f, opts.eps, opts.prec, opts.max_doublings)
}

/// Assemble a report from independently evaluated sides; errors become
/// inconclusive rows carrying whatever ball was salvaged.
fn compare(
    id: &str,
    params: Params,
    variant: Variant,
    lhs: Result<SeriesSum>,
    rhs: Result<Ball>,
    opts: &EvalOptions,
) -> IdentityReport {
    let bits = opts.prec.bits();
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => IdentityReport::from_balls(id, params, variant, l.value, r, opts.eps, l.terms, bits),
        (l, r) => {
            let terms = l.as_ref().map(|s| s.terms).unwrap_or(0);
            let side = |b: Option<&Ball>| b.cloned().map_or(Side::Missing, Side::Ball);
            let lhs = match &l {
                Ok(s) => Side::Ball(s.value.clone()),
                Err(e) => side(e.best_ball()),
            };
            let rhs = match &r {
                Ok(b) => Side::Ball(b.clone()),
                Err(e) => side(e.best_ball()),
            };
            IdentityReport::inconclusive(id, params, variant, lhs, rhs, terms, bits)
        }
    }
}

fn psi_at_one(m: u32, prec: Precision) -> Result<Ball> {
    polygamma_at(m, Ball::one(), prec)
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

// ---------------------------------------------------------------- Goldbach

pub fn goldbach(opts: &EvalOptions) -> IdentityReport {
    let seq = SequenceSpec::zeta_shifted(1);
    let lhs = adaptive_series(|prec| abel_rhs_sum(&seq, 1, prec, opts.eps, opts.term_cap), opts);
    compare("goldbach", Params::new(), Variant::AsPrinted, lhs, Ok(Ball::from_int(-1)), opts)
}

/// `sum_{k>=2} k^p (zeta(k) - 1)` for `p = 0` (value 1) and `p = 1` (value `1 + zeta(2)`).
pub fn telescope(power: u32, opts: &EvalOptions) -> Result<IdentityReport> {
    // a_n multiplies zeta(n+2) - 1, so k = n + 2
    let coeffs = match power {
        0 => vec![1],
        1 => vec![2, 1],
        _ => return Err(Error::Invalid(format!("telescoping oracle known for powers 0 and 1, got {power}"))),
    };
    let spec = DirichletSpec::zeta_polynomial(1, coeffs);
    let lhs = adaptive_series(|prec| dirichlet_tail_sum(&spec, prec, opts.eps, opts.term_cap), opts);
    let rhs = if power == 0 {
        Ok(Ball::one())
    } else {
        adaptive_value(|prec| Ok(zeta_int_euler_maclaurin(2, prec)?.add(&Ball::one(), prec)), opts)
    };
    Ok(compare("telescope", params([("p", int(i64::from(power)))]), Variant::AsPrinted, lhs, rhs, opts))
}

// ---------------------------------------------------------------- thm22

/// `sum_{n>=0} (n+1)_{M-1} (1 - zeta(n+M+1))` by direct summation.
pub fn thm22_lhs(m: u32, opts: &EvalOptions) -> Result<SeriesSum> {
    let seq = SequenceSpec::zeta_shifted(m);
    adaptive_series(|prec| abel_rhs_sum(&seq, m, prec, opts.eps, opts.term_cap), opts)
}

/// Closed form for the sum above. The two variants differ in the sign of the
/// polygamma sum and of the `gamma` term.
pub fn thm22_rhs(m: u32, variant: Variant, prec: Precision) -> Result<Ball> {
    if m == 0 {
        return Err(Error::Invalid("M must be positive".into()));
    }
    let mut psi_sum = Ball::zero();
    for j in 0..m {
        let coeff = binomial(u64::from(m - 1), u64::from(j)) * factorial(u64::from(j));
        psi_sum = psi_sum.add(&psi_at_one(m - 1 - j, prec)?.mul_int(coeff, prec), prec);
    }
    let fact = factorial(u64::from(m - 1));
    let s_m = sign(m % 2 == 1); // (-1)^M
    let gamma = euler_gamma(prec)?.mul_int(fact.clone(), prec);
    let constant = Ball::from_int(fact * s_m);
    let (sum_sign, gamma_sign) = match variant {
        Variant::AsPrinted => (s_m, s_m),
        Variant::CorrectedCandidate => (-s_m, -s_m),
    };
    Ok(psi_sum.mul_int(sum_sign, prec).add(&constant, prec).add(&gamma.mul_int(gamma_sign, prec), prec))
}

pub fn thm22(m: u32, variant: Variant, opts: &EvalOptions) -> IdentityReport {
    let lhs = thm22_lhs(m, opts);
    let rhs = adaptive_value(|prec| thm22_rhs(m, variant, prec), opts);
    compare("thm22", params([("M", int(i64::from(m)))]), variant, lhs, rhs, opts)
}

// ---------------------------------------------------------------- thm23

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCoefficient {
    pub m: u32,
    pub l: u32,
    pub e: i64,
    pub value: Ball,
}

/// `g = -sum_{j=0}^{min(M-1, e)} C(M-1, j) (-1)^{M-1-j} psi^{(l+M-1-j)}(1) e!/(e-j)!`.
pub fn g_coefficient(m: u32, l: u32, e: i64, prec: Precision) -> Result<GCoefficient> {
    if m == 0 || l == 0 || e < 0 {
        return Err(Error::Invalid(format!("g coefficient needs M, l >= 1 and e >= 0, got ({m}, {l}, {e})")));
    }
    let value = psi_power_leibniz_sum(l, m, e, prec)?.neg();
    Ok(GCoefficient { m, l, e, value })
}

/// `sum_{n>=0} (n+1)_{M-1} (n+M+1)^N (1 - zeta(n+M+1))` with the tail from
/// `zeta(s) - 1 <= 3 * 2^{-s}`.
pub fn thm23_lhs(m: u32, n_pow: u32, opts: &EvalOptions) -> Result<SeriesSum> {
    if m == 0 || n_pow == 0 {
        return Err(Error::Invalid("M and N must be positive".into()));
    }
    let shift = u64::from(m) - 1;
    let poly = move |n: u64| rising_factorial(n, shift) * num_traits::pow(BigInt::from(n + u64::from(m) + 1), n_pow as usize);
    let c = BigRational::new(3.into(), BigInt::one() << (m + 1));
    let half = BigRational::new(1.into(), 2.into());
    let tail = move |n: u64| poly_geometric_tail(&c, poly, &half, n);
    let term = move |n: u64, prec: Precision| -> Result<Ball> {
        let zm = zeta_minus_one(n as u32 + m + 1, prec)?;
        Ok(zm.mul_int(-poly(n), prec))
    };
    adaptive_series(|prec| certified_sum(term, &tail, opts.eps, opts.term_cap, prec), opts)
}

/// `sum_{l=1}^{N} S(N+1, l+1) (-1)^{l+1} g_{M,l} + (thm22 closed form)`,
/// with the `z` exponent inside `g` equal to `l+1` as printed, or `l-1` once
/// the `z^{-2}` factor is carried through.
pub fn thm23_rhs(m: u32, n_pow: u32, variant: Variant, prec: Precision) -> Result<Ball> {
    if m == 0 || n_pow == 0 {
        return Err(Error::Invalid("M and N must be positive".into()));
    }
    let mut acc = thm22_rhs(m, variant, prec)?;
    for l in 1..=n_pow {
        let e = match variant {
            Variant::AsPrinted => i64::from(l) + 1,
            Variant::CorrectedCandidate => i64::from(l) - 1,
        };
        let g = g_coefficient(m, l, e, prec)?.value;
        let s = stirling2(n_pow as usize + 1, l as usize + 1) * sign(l % 2 == 0);
        acc = acc.add(&g.mul_int(s, prec), prec);
    }
    Ok(acc)
}

pub fn thm23(m: u32, n_pow: u32, variant: Variant, opts: &EvalOptions) -> IdentityReport {
    let lhs = thm23_lhs(m, n_pow, opts);
    let rhs = adaptive_value(|prec| thm23_rhs(m, n_pow, variant, prec), opts);
    compare("thm23", params([("M", int(i64::from(m))), ("N", int(i64::from(n_pow)))]), variant, lhs, rhs, opts)
}

// ---------------------------------------------------------------- abel consistency

/// `(1/M) lim d^M/dz^M [(1-z) sum_n zeta(n+2) z^n]` assembled from the closed
/// form of the generating function; the variant picks the sign of `gamma`
/// (`+` as printed, `-` corrected).
pub fn prop11_rhs(m: u32, variant: Variant, prec: Precision) -> Result<Ball> {
    let d = derivative_limit_psi_power(0, m, -1, prec)?;
    let gamma = euler_gamma(prec)?;
    let one_pm_gamma = match variant {
        Variant::AsPrinted => Ball::one().add(&gamma, prec),
        Variant::CorrectedCandidate => Ball::one().sub(&gamma, prec),
    };
    let fact = factorial(u64::from(m)) * sign(m % 2 == 1);
    d.neg().add(&one_pm_gamma.mul_int(fact, prec), prec).div_int(m, prec)
}

pub fn prop11(m: u32, variant: Variant, opts: &EvalOptions) -> IdentityReport {
    let lhs = thm22_lhs(m, opts);
    let rhs = adaptive_value(|prec| prop11_rhs(m, variant, prec), opts);
    compare("prop11", params([("M", int(i64::from(m)))]), variant, lhs, rhs, opts)
}

// ---------------------------------------------------------------- finite-z identities

fn check_open_unit(z: &BigRational, what: &str) -> Result<()> {
    if z <= &BigRational::zero() || z >= &BigRational::one() {
        return Err(Error::Domain(format!("{what} needs 0 < z < 1")));
    }
    Ok(())
}

/// `sum_{k>=0} zeta(k+2) z^k` against `-psi(1-z)/z + gamma/z` (as printed) or
/// `-psi(1-z)/z - gamma/z` (corrected).
pub fn check_eq22(z: &BigRational, variant: Variant, opts: &EvalOptions) -> Result<IdentityReport> {
    check_open_unit(z, "eq22")?;
    let zq = z.clone();
    let c = BigRational::from_integer(2.into());
    let tail = move |n: u64| poly_geometric_tail(&c, |_| BigInt::one(), &zq, n);
    let lhs = adaptive_series(
        |prec| {
            let zb = Ball::from_rational(z, prec);
            let term = |n: u64, prec: Precision| -> Result<Ball> {
                let zeta = zeta_minus_one(n as u32 + 2, prec)?.add(&Ball::one(), prec);
                Ok(zeta.mul(&zb.pow_int(n as i64, prec)?, prec))
            };
            certified_sum(term, &tail, opts.eps, opts.term_cap, prec)
        },
        opts,
    );
    let rhs = adaptive_value(
        |prec| {
            let zb = Ball::from_rational(z, prec);
            let psi = polygamma_at(0, Ball::one().sub(&zb, prec), prec)?;
            let gamma = euler_gamma(prec)?;
            let inner = match variant {
                Variant::AsPrinted => psi.neg().add(&gamma, prec),
                Variant::CorrectedCandidate => psi.neg().sub(&gamma, prec),
            };
            inner.div(&zb, prec)
        },
        opts,
    );
    Ok(compare("eq22", params([("z", rat(z))]), variant, lhs, rhs, opts))
}

fn hurwitz_value(s: u32, a: &BigRational, prec: Precision) -> Result<Ball> {
    if a.is_one() {
        return Ok(zeta_minus_one(s, prec)?.add(&Ball::one(), prec));
    }
    hurwitz_zeta(&HurwitzArg::new(s, Ball::from_rational(a, prec))?, prec)
}

/// `sum_{k>=2} k^N z^k zeta(k, a)` against
/// `sum_{l=1}^{N} S(N+1, l+1) l! zeta(l+1, a-z) z^{l+1} - z (psi(a-z) - psi(a))`.
pub fn check_eq25(n_pow: u32, a: &BigRational, z: &BigRational, opts: &EvalOptions) -> Result<IdentityReport> {
    if n_pow == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    let two = BigRational::from_integer(2.into());
    if !a.is_positive() || a > &two {
        return Err(Error::Domain("eq25 needs 0 < a <= 2".into()));
    }
    if &z.abs() >= a {
        return Err(Error::Domain("eq25 needs |z| < a".into()));
    }
    let shifted = a - z;
    if !shifted.is_positive() || shifted > BigRational::from_integer(4.into()) {
        return Err(Error::Domain("eq25 needs a - z in (0, 4]".into()));
    }
    // |zeta(k, a)| <= 2 for a >= 1, <= 3 a^{-k} for a < 1
    let (bound, ratio) = if a >= &BigRational::one() {
        (BigRational::from_integer(2.into()), z.abs())
    } else {
        (BigRational::from_integer(3.into()), z.abs() / a)
    };
    let c = bound * &ratio * &ratio;
    let tail = move |n: u64| {
        poly_geometric_tail(&c, |k| num_traits::pow(BigInt::from(k + 2), n_pow as usize), &ratio, n)
    };
    let lhs = adaptive_series(
        |prec| {
            let zb = Ball::from_rational(z, prec);
            let term = |n: u64, prec: Precision| -> Result<Ball> {
                if z.is_zero() {
                    return Ok(Ball::zero());
                }
                let k = n + 2;
                let h = hurwitz_value(k as u32, a, prec)?;
                let weight = zb.pow_int(k as i64, prec)?.mul_int(num_traits::pow(BigInt::from(k), n_pow as usize), prec);
                Ok(h.mul(&weight, prec))
            };
            certified_sum(term, &tail, opts.eps, opts.term_cap, prec)
        },
        opts,
    );
    let rhs = adaptive_value(
        |prec| {
            if z.is_zero() {
                return Ok(Ball::zero());
            }
            let zb = Ball::from_rational(z, prec);
            let ab = Ball::from_rational(a, prec);
            let sb = Ball::from_rational(&shifted, prec);
            let mut acc = Ball::zero();
            for l in 1..=n_pow {
                let h = hurwitz_zeta(&HurwitzArg::new(l + 1, sb.clone())?, prec)?;
                let coeff = stirling2(n_pow as usize + 1, l as usize + 1) * factorial(u64::from(l));
                acc = acc.add(&h.mul(&zb.pow_int(i64::from(l) + 1, prec)?, prec).mul_int(coeff, prec), prec);
            }
            let psi_diff = polygamma_at(0, sb, prec)?.sub(&polygamma_at(0, ab, prec)?, prec);
            Ok(acc.sub(&zb.mul(&psi_diff, prec), prec))
        },
        opts,
    );
    let p = params([("N", int(i64::from(n_pow))), ("a", rat(a)), ("z", rat(z))]);
    Ok(compare("eq25", p, Variant::AsPrinted, lhs, rhs, opts))
}

/// `(z d/dz)^N 1/(1-z) = P_N(z) / (1-z)^{N+1}` with `P_0 = 1` and
/// `P_{N+1} = z (1-z) P_N' + (N+1) z P_N`; returns the value at `z`.
pub fn euler_operator_value(n_pow: u32, z: &BigRational) -> Result<BigRational> {
    if z >= &BigRational::one() || z <= &-BigRational::one() {
        return Err(Error::Domain("needs |z| < 1".into()));
    }
    let mut p = vec![BigRational::one()];
    for n in 0..n_pow {
        let dp = ExactPoly::new(p.clone()).derivative(1);
        let dp = dp.coeffs();
        let mut next = vec![BigRational::zero(); p.len() + 2];
        for (i, c) in dp.iter().enumerate() {
            // z (1 - z) c z^i
            next[i + 1] += c;
            next[i + 2] -= c;
        }
        let f = BigRational::from_integer(BigInt::from(n + 1));
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c * &f;
        }
        p = ExactPoly::new(next).coeffs().to_vec();
    }
    let num = ExactPoly::new(p).eval(z);
    let one_minus = BigRational::one() - z;
    Ok(num / num_traits::pow(one_minus, n_pow as usize + 1))
}

/// `sum_{l=0}^{N} S(N+1, l+1) (+-1)^l l! (1-z)^{-l-1} z^{l+1}`; the printed
/// form carries `(-1)^l`, the corrected one does not.
pub fn eq28_rhs(n_pow: u32, z: &BigRational, variant: Variant) -> Result<BigRational> {
    if z >= &BigRational::one() || z <= &-BigRational::one() {
        return Err(Error::Domain("needs |z| < 1".into()));
    }
    let w = z / (BigRational::one() - z);
    let mut acc = BigRational::zero();
    let mut w_pow = w.clone();
    for l in 0..=n_pow {
        let mut term = BigRational::from_integer(stirling2(n_pow as usize + 1, l as usize + 1) * factorial(u64::from(l))) * &w_pow;
        if variant == Variant::AsPrinted && l % 2 == 1 {
            term = -term;
        }
        acc += term;
        w_pow *= &w;
    }
    Ok(acc)
}

pub fn check_eq28(n_pow: u32, z: &BigRational, variant: Variant) -> Result<IdentityReport> {
    if n_pow == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    let lhs = euler_operator_value(n_pow, z)?;
    let rhs = eq28_rhs(n_pow, z, variant)?;
    let p = params([("N", int(i64::from(n_pow))), ("z", rat(z))]);
    Ok(IdentityReport::from_exact("eq28", p, variant, lhs, rhs, 0))
}

/// `sum_{k>=2} k^N z^k (zeta(k)-1)` against
/// `sum_{l=1}^{N} S(N+1, l+1) (-1)^{l+1} psi^{(l)}(2-z) z^{l+1} + z - z/(1-z) - z (psi(1-z) + gamma)`.
pub fn check_eq211(n_pow: u32, z: &BigRational, opts: &EvalOptions) -> Result<IdentityReport> {
    if n_pow == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    check_open_unit(z, "eq211")?;
    let ratio = z / BigRational::from_integer(2.into());
    let c = BigRational::new(3.into(), 4.into()) * z * z;
    let tail = move |n: u64| {
        poly_geometric_tail(&c, |k| num_traits::pow(BigInt::from(k + 2), n_pow as usize), &ratio, n)
    };
    let lhs = adaptive_series(
        |prec| {
            let zb = Ball::from_rational(z, prec);
            let term = |n: u64, prec: Precision| -> Result<Ball> {
                let k = n + 2;
                let weight = zb.pow_int(k as i64, prec)?.mul_int(num_traits::pow(BigInt::from(k), n_pow as usize), prec);
                Ok(zeta_minus_one(k as u32, prec)?.mul(&weight, prec))
            };
            certified_sum(term, &tail, opts.eps, opts.term_cap, prec)
        },
        opts,
    );
    let rhs = adaptive_value(
        |prec| {
            let zb = Ball::from_rational(z, prec);
            let one_minus = Ball::one().sub(&zb, prec);
            let two_minus = one_minus.add(&Ball::one(), prec);
            let mut acc = Ball::zero();
            for l in 1..=n_pow {
                let s = stirling2(n_pow as usize + 1, l as usize + 1) * sign(l % 2 == 0);
                let psi = polygamma_at(l, two_minus.clone(), prec)?;
                acc = acc.add(&psi.mul(&zb.pow_int(i64::from(l) + 1, prec)?, prec).mul_int(s, prec), prec);
            }
            let psi0 = polygamma_at(0, one_minus.clone(), prec)?;
            let gamma = euler_gamma(prec)?;
            let rest = zb
                .sub(&zb.div(&one_minus, prec)?, prec)
                .sub(&zb.mul(&psi0.add(&gamma, prec), prec), prec);
            Ok(acc.add(&rest, prec))
        },
        opts,
    );
    let p = params([("N", int(i64::from(n_pow))), ("z", rat(z))]);
    Ok(compare("eq211", p, Variant::AsPrinted, lhs, rhs, opts))
}

// ---------------------------------------------------------------- lemma21 batch

/// Random polynomial of degree `<= 12` with coefficients `p/q`, `|p| <= 100`, `1 <= q <= 100`.
pub fn random_poly(rng: &mut ChaCha8Rng) -> ExactPoly {
    let degree = rng.gen_range(0..=12usize);
    let mut coeffs: Vec<BigRational> = (0..=degree)
        .map(|_| BigRational::new(rng.gen_range(-100i64..=100).into(), rng.gen_range(1i64..=100).into()))
        .collect();
    while coeffs[degree].is_zero() {
        coeffs[degree] = BigRational::new(rng.gen_range(-100i64..=100).into(), rng.gen_range(1i64..=100).into());
    }
    ExactPoly::new(coeffs)
}

/// Check the lemma on `count` seeded random polynomials for every `M <= degree + 1`.
/// The row compares the number of exact agreements with the number of checks.
pub fn lemma21_batch(seed: u64, count: u32) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0i64;
    let mut equal = 0i64;
    for _ in 0..count {
        let p = random_poly(&mut rng);
        let top = p.degree().unwrap_or(0) + 1;
        for m in 1..=top {
            checks += 1;
            if lemma21_check(&p, m).equal {
                equal += 1;
            }
        }
    }
    let p = params([("count", int(i64::from(count))), ("seed", int(seed as i64))]);
    IdentityReport::from_exact(
        "lemma21",
        p,
        Variant::AsPrinted,
        BigRational::from_integer(equal.into()),
        BigRational::from_integer(checks.into()),
        checks as u64,
    )
}
