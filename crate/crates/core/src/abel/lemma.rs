use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::kernel::ExactRational;

/// Polynomial with exact rational coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoly {
    coeffs: Vec<ExactRational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<ExactRational>) -> ExactPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn monomial(degree: usize) -> ExactPoly {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = BigRational::one();
        ExactPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self, k: usize) -> ExactPoly {
        if k >= self.coeffs.len() {
            return ExactPoly::new(Vec::new());
        }
        let coeffs = self.coeffs[k..]
            .iter()
            .enumerate()
            .map(|(i, c)| {
                // d^k z^{i+k} = (i+1)...(i+k) z^i
                let f: BigInt = (i + 1..=i + k).fold(BigInt::one(), |acc, t| acc * t);
                c * BigRational::from_integer(f)
            })
            .collect();
        ExactPoly::new(coeffs)
    }

    pub fn eval(&self, z: &ExactRational) -> ExactRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * z + c)
    }

    /// `(1 - z) p(z)`.
    pub fn times_one_minus_z(&self) -> ExactPoly {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
            out[i + 1] -= c;
        }
        ExactPoly::new(out)
    }
}

/// Both sides of `d^M/dz^M [(1-z) p(z)] at z = 1` versus `-M p^{(M-1)}(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma21Outcome {
    pub equal: bool,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
}

pub fn lemma21_check(p: &ExactPoly, m: usize) -> Lemma21Outcome {
    assert!(m >= 1, "derivative order must be positive");
    let one = BigRational::one();
    let lhs = p.times_one_minus_z().derivative(m).eval(&one);
    let rhs = -BigRational::from_integer(BigInt::from(m)) * p.derivative(m - 1).eval(&one);
    Lemma21Outcome { equal: lhs == rhs, lhs, rhs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn small_cases() {
        let one = ExactPoly::new(vec![int(1)]);
        let o = lemma21_check(&one, 1);
        assert!(o.equal);
        assert_eq!(o.lhs, int(-1));

        let z = ExactPoly::monomial(1);
        let o = lemma21_check(&z, 1);
        assert_eq!((o.lhs.clone(), o.rhs.clone()), (int(-1), int(-1)));

        let z2 = ExactPoly::monomial(2);
        let o = lemma21_check(&z2, 2);
        assert_eq!((o.lhs, o.rhs), (int(-4), int(-4)));
    }

    #[test]
    fn normalization_drops_trailing_zeros() {
        let p = ExactPoly::new(vec![int(3), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(ExactPoly::new(vec![int(0)]).degree(), None);
    }

    #[test]
    fn derivative_of_cubic() {
        let p = ExactPoly::new(vec![int(1), int(2), int(3), int(4)]);
        assert_eq!(p.derivative(1), ExactPoly::new(vec![int(2), int(6), int(12)]));
        assert_eq!(p.derivative(3), ExactPoly::new(vec![int(24)]));
        assert_eq!(p.derivative(4).degree(), None);
    }

    fn coeff() -> impl Strategy<Value = BigRational> {
        (-100i64..=100, 1i64..=100).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    proptest! {
        #[test]
        fn holds_for_random_polynomials(coeffs in prop::collection::vec(coeff(), 1..=13), m in 1usize..=14) {
            let p = ExactPoly::new(coeffs);
            let o = lemma21_check(&p, m);
            prop_assert!(o.equal);
        }
    }
}
