//! Exact decimal parsing and conservative decimal printing of balls.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Ball, Dyadic, Mag};

/// Parse `"-12.5e-3"`, `"7"` or `"3/4"` into an exact rational.
pub fn parse_exact(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    if neg {
        n = -n;
    }
    let scale = exp - frac_part.len() as i64;
    Some(BigRational::from_integer(n) * pow10(scale))
}

fn pow10(k: i64) -> BigRational {
    let p = num_traits::pow(BigInt::from(10), k.unsigned_abs() as usize);
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Largest `e` with `10^e <= r`, for `r > 0`.
fn decimal_exponent(r: &BigRational) -> i64 {
    let bits = r.numer().bits() as i64 - r.denom().bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    while pow10(e) > *r {
        e -= 1;
    }
    while pow10(e + 1) <= *r {
        e += 1;
    }
    e
}

fn floor_rational(r: &BigRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

fn render(neg: bool, q: &BigInt, e: i64) -> String {
    let digits = q.to_string();
    let trimmed = digits.trim_end_matches('0');
    let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
    let (head, tail) = trimmed.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

/// Round `r` to `digits` significant decimal digits (to nearest). Returns the
/// text and the exact value it denotes.
pub fn rational_to_sci(r: &BigRational, digits: usize) -> (String, BigRational) {
    if r.is_zero() {
        return ("0".to_string(), BigRational::zero());
    }
    let digits = digits.max(1);
    let abs = r.abs();
    let mut e = decimal_exponent(&abs);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut scale = pow10(digits as i64 - 1 - e);
    let mut q = floor_rational(&(&abs * &scale + &half));
    if q >= num_traits::pow(BigInt::from(10), digits) {
        e += 1;
        scale = pow10(digits as i64 - 1 - e);
        q = floor_rational(&(&abs * &scale + &half));
    }
    let value = BigRational::from_integer(q.clone()) / &scale;
    let value = if r.is_negative() { -value } else { value };
    (render(r.is_negative(), &q, e), value)
}

/// Decimal upper bound on a magnitude with `sig` significant digits.
pub fn mag_to_decimal_up(m: Mag, sig: usize) -> String {
    rational_up(&m.to_rational(), sig)
}

fn rational_up(r: &BigRational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let mut e = decimal_exponent(r);
    let mut scale = pow10(sig as i64 - 1 - e);
    let scaled = r * &scale;
    let mut q = floor_rational(&scaled);
    if BigRational::from_integer(q.clone()) != scaled {
        q += 1;
    }
    if q >= num_traits::pow(BigInt::from(10), sig) {
        e += 1;
        scale = pow10(sig as i64 - 1 - e);
        let scaled = r * &scale;
        q = floor_rational(&scaled);
        if BigRational::from_integer(q.clone()) != scaled {
            q += 1;
        }
    }
    render(false, &q, e)
}

/// Number of significant digits that a `bits`-bit midpoint carries.
pub fn digits_for_bits(bits: u64) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
}

/// Format a ball as `(mid, rad)` decimal strings such that the decimal ball
/// still contains the binary ball. With `digits = None` the midpoint is
/// printed with enough digits for its full binary precision.
pub fn format_ball(ball: &Ball, digits: Option<usize>) -> (String, String) {
    let d = digits.unwrap_or_else(|| digits_for_bits(ball.mid().bits().max(1)));
    format_with(ball.mid(), ball.rad(), d)
}

fn format_with(mid: &Dyadic, rad: Mag, digits: usize) -> (String, String) {
    let exact = mid.to_rational();
    if digits == 0 {
        let total = rad.to_rational() + exact.abs();
        return ("0".to_string(), rational_up(&total, 3));
    }
    let (text, value) = rational_to_sci(&exact, digits);
    let total = rad.to_rational() + (value - exact).abs();
    (text, rational_up(&total, 3))
}

/// Format for humans: the midpoint carries no more digits than the radius
/// justifies (the last printed digit's unit is at least the radius).
pub fn format_ball_justified(ball: &Ball) -> (String, String) {
    if ball.rad().is_zero() {
        return format_ball(ball, None);
    }
    let mid = ball.mid().to_rational();
    if mid.is_zero() {
        return format_with(ball.mid(), ball.rad(), 0);
    }
    let e_mid = decimal_exponent(&mid.abs());
    let rad = ball.rad().to_rational();
    // digits d such that 10^(e_mid - d + 1) >= rad
    let mut d = e_mid - decimal_exponent(&rad) + 1;
    while d > 0 && pow10(e_mid - d + 1) < rad {
        d -= 1;
    }
    format_with(ball.mid(), ball.rad(), d.max(0) as usize)
}

/// Exact rational rendered as `p/q`, or as an integer when `q = 1`.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
