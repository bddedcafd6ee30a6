use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::kernel::decimal::{parse_exact, rational_to_string};
use crate::kernel::{Ball, Mag};

/// Which reading of a formula is being evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    AsPrinted,
    CorrectedCandidate,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::AsPrinted, Variant::CorrectedCandidate];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::AsPrinted => "as_printed",
            Variant::CorrectedCandidate => "corrected_candidate",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant, Error> {
        match s {
            "as_printed" => Ok(Variant::AsPrinted),
            "corrected_candidate" => Ok(Variant::CorrectedCandidate),
            other => Err(Error::Invalid(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameter value: integers serialize as JSON numbers, rationals as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Int(i64),
    Rational(BigRational),
}

impl ParamValue {
    pub fn to_rational(&self) -> BigRational {
        match self {
            ParamValue::Int(v) => BigRational::from_integer((*v).into()),
            ParamValue::Rational(r) => r.clone(),
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Rational(r) => f.write_str(&rational_to_string(r)),
        }
    }
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ParamValue::Int(v) => s.serialize_i64(*v),
            ParamValue::Rational(r) => s.serialize_str(&rational_to_string(r)),
        }
    }
}

impl<'de> Deserialize<'de> for ParamValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<ParamValue, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(ParamValue::Int(v)),
            Raw::Text(t) => parse_exact(&t)
                .map(ParamValue::Rational)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational parameter {t:?}"))),
        }
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// Numeric ordering of parameter maps: keys first, then values as rationals.
pub fn compare_params(a: &Params, b: &Params) -> Ordering {
    let mut ia = a.iter();
    let mut ib = b.iter();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ka, va)), Some((kb, vb))) => {
                let o = ka.cmp(kb).then_with(|| va.to_rational().cmp(&vb.to_rational()));
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
    }
}

/// One side of an identity: an enclosure, an exact rational, or nothing at all
/// when the evaluation failed without a usable ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Ball(Ball),
    Exact(BigRational),
    Missing,
}

impl Side {
    pub fn rad(&self) -> Option<Mag> {
        match self {
            Side::Ball(b) => Some(b.rad()),
            Side::Exact(_) => Some(Mag::ZERO),
            Side::Missing => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: Params,
    pub variant: Variant,
    pub lhs: Side,
    pub rhs: Side,
    pub verdict: Verdict,
    /// Distance between the two sides, zero when they overlap.
    pub gap: Option<BigRational>,
    pub terms_used: u64,
    pub prec_bits: u32,
}

impl IdentityReport {
    /// Report comparing two balls at tolerance `eps`: disjoint balls fail,
    /// overlapping balls pass once both radii are within `eps`.
    pub fn from_balls(
        identity_id: &str,
        params: Params,
        variant: Variant,
        lhs: Ball,
        rhs: Ball,
        eps: Mag,
        terms_used: u64,
        prec_bits: u32,
    ) -> IdentityReport {
        let verdict = if !lhs.overlaps(&rhs) {
            Verdict::Fail
        } else if lhs.rad() <= eps && rhs.rad() <= eps {
            Verdict::Pass
        } else {
            Verdict::Inconclusive
        };
        let gap = Some(lhs.gap(&rhs).to_rational());
        IdentityReport {
            identity_id: identity_id.to_string(),
            params,
            variant,
            lhs: Side::Ball(lhs),
            rhs: Side::Ball(rhs),
            verdict,
            gap,
            terms_used,
            prec_bits,
        }
    }

    /// Exact comparison; no tolerance.
    pub fn from_exact(
        identity_id: &str,
        params: Params,
        variant: Variant,
        lhs: BigRational,
        rhs: BigRational,
        terms_used: u64,
    ) -> IdentityReport {
        let verdict = if lhs == rhs { Verdict::Pass } else { Verdict::Fail };
        let gap = Some((&lhs - &rhs).abs());
        IdentityReport {
            identity_id: identity_id.to_string(),
            params,
            variant,
            lhs: Side::Exact(lhs),
            rhs: Side::Exact(rhs),
            verdict,
            gap,
            terms_used,
            prec_bits: 0,
        }
    }

    /// Row for an evaluation that did not reach its tolerance.
    pub fn inconclusive(
        identity_id: &str,
        params: Params,
        variant: Variant,
        lhs: Side,
        rhs: Side,
        terms_used: u64,
        prec_bits: u32,
    ) -> IdentityReport {
        let gap = match (&lhs, &rhs) {
            (Side::Ball(a), Side::Ball(b)) => Some(a.gap(b).to_rational()),
            _ => None,
        };
        IdentityReport {
            identity_id: identity_id.to_string(),
            params,
            variant,
            lhs,
            rhs,
            verdict: Verdict::Inconclusive,
            gap,
            terms_used,
            prec_bits,
        }
    }

    pub fn canonical_cmp(&self, other: &IdentityReport) -> Ordering {
        self.identity_id
            .cmp(&other.identity_id)
            .then_with(|| compare_params(&self.params, &other.params))
            .then_with(|| self.variant.cmp(&other.variant))
    }
}

/// Shorthand for building parameter maps.
pub fn params<const K: usize>(entries: [(&str, ParamValue); K]) -> Params {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Dyadic, Precision};

    #[test]
    fn verdict_follows_overlap() {
        let prec = Precision::new(64).unwrap();
        let a = Ball::new(Dyadic::from_int(1), Mag::pow2(-10));
        let b = Ball::from_int(1).add(&Ball::one().mul_2exp(-11), prec);
        let r = IdentityReport::from_balls("x", Params::new(), Variant::AsPrinted, a.clone(), b, Mag::pow2(-5), 1, 64);
        assert_eq!(r.verdict, Verdict::Pass);
        let far = Ball::from_int(2);
        let r = IdentityReport::from_balls("x", Params::new(), Variant::AsPrinted, a.clone(), far, Mag::pow2(-5), 1, 64);
        assert_eq!(r.verdict, Verdict::Fail);
        let r = IdentityReport::from_balls("x", Params::new(), Variant::AsPrinted, a.clone(), a, Mag::pow2(-20), 1, 64);
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn params_order_numerically() {
        let small = params([("z", ParamValue::Rational(BigRational::new(1.into(), 64.into())))]);
        let big = params([("z", ParamValue::Rational(BigRational::new(1.into(), 4.into())))]);
        assert_eq!(compare_params(&small, &big), Ordering::Less);
        let ten = params([("M", ParamValue::Int(10))]);
        let two = params([("M", ParamValue::Int(2))]);
        assert_eq!(compare_params(&two, &ten), Ordering::Less);
    }

    #[test]
    fn param_serde_round_trip() {
        let p = params([("M", ParamValue::Int(3)), ("z", ParamValue::Rational(BigRational::new(2.into(), 3.into())))]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"M":3,"z":"2/3"}"#);
        let back: Params = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
