use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::kernel::{ExactInt, ExactRational};

fn stirling_table() -> &'static RwLock<Vec<Vec<BigInt>>> {
    static TABLE: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![vec![BigInt::one()]]))
}

/// Stirling number of the second kind `S(n, k)`: the number of partitions of
/// an `n`-set into `k` nonempty blocks. Zero outside `0 <= k <= n` except
/// `S(0, 0) = 1`.
pub fn stirling2(n: usize, k: usize) -> ExactInt {
    if k > n {
        return BigInt::zero();
    }
    {
        let rows = stirling_table().read().expect("stirling table poisoned");
        if let Some(row) = rows.get(n) {
            return row[k].clone();
        }
    }
    let mut rows = stirling_table().write().expect("stirling table poisoned");
    while rows.len() <= n {
        let m = rows.len();
        let prev = &rows[m - 1];
        let mut row = vec![BigInt::zero(); m + 1];
        for (j, slot) in row.iter_mut().enumerate().skip(1) {
            let stay = if j < m { prev[j].clone() * j } else { BigInt::zero() };
            *slot = stay + &prev[j - 1];
        }
        rows.push(row);
    }
    rows[n][k].clone()
}

/// `a (a+1) ... (a+k-1)`; the empty product is 1.
pub fn pochhammer(a: &BigInt, k: u64) -> ExactInt {
    let mut acc = BigInt::one();
    let mut f = a.clone();
    for _ in 0..k {
        acc *= &f;
        f += 1;
    }
    acc
}

/// `(n+1)_m = (n+1)(n+2)...(n+m)`.
pub fn rising_factorial(n: u64, m: u64) -> ExactInt {
    pochhammer(&BigInt::from(n + 1), m)
}

pub fn factorial(n: u64) -> ExactInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Falling factorial `e (e-1) ... (e-j+1)`. For `0 <= e < j` this is zero,
/// which is the `j`-th derivative of `z^e` at `z = 1`; for negative `e` it is
/// that derivative for the negative power.
pub fn falling_factorial(e: i64, j: u64) -> ExactInt {
    let mut acc = BigInt::one();
    for i in 0..j as i64 {
        acc *= e - i;
        if acc.is_zero() {
            break;
        }
    }
    acc
}

fn bernoulli_table() -> &'static RwLock<Vec<BigRational>> {
    static TABLE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`, from
/// `sum_{j=0}^{n} C(n+1, j) B_j = 0`.
pub fn bernoulli(n: usize) -> ExactRational {
    {
        let table = bernoulli_table().read().expect("bernoulli table poisoned");
        if let Some(b) = table.get(n) {
            return b.clone();
        }
    }
    let mut table = bernoulli_table().write().expect("bernoulli table poisoned");
    while table.len() <= n {
        let m = table.len();
        let value = if m > 1 && m % 2 == 1 {
            BigRational::zero()
        } else {
            let mut acc = BigRational::zero();
            let mut c = BigInt::one(); // C(m+1, j)
            for (j, b) in table.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * BigRational::from_integer(c.clone());
                }
                c = c * (m + 1 - j) / (j + 1);
            }
            -acc / BigRational::from_integer(BigInt::from(m + 1))
        };
        table.push(value);
    }
    table[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: count set partitions of {0..n} into k blocks by
    /// restricted growth strings.
    fn partitions_brute(n: usize, k: usize) -> u64 {
        fn go(i: usize, n: usize, k: usize, used: usize) -> u64 {
            if i == n {
                return u64::from(used == k);
            }
            let mut total = 0;
            for b in 0..=used.min(k.saturating_sub(1)) {
                let next = if b == used { used + 1 } else { used };
                if next <= k {
                    total += go(i + 1, n, k, next);
                }
            }
            total
        }
        if n == 0 {
            return u64::from(k == 0);
        }
        go(0, n, k, 0)
    }

    #[test]
    fn stirling_known_values() {
        for n in 1..20 {
            assert_eq!(stirling2(n, 1), BigInt::one());
        }
        assert_eq!(stirling2(3, 3), BigInt::one());
        assert_eq!(stirling2(4, 2), BigInt::from(partitions_brute(4, 2)));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(5, 0), BigInt::zero());
        assert_eq!(stirling2(3, 5), BigInt::zero());
    }

    #[test]
    fn stirling_rows_sum_to_bell_numbers() {
        for n in 0..=10 {
            let row: BigInt = (0..=n).map(|k| stirling2(n, k)).sum();
            let bell: u64 = (0..=n).map(|k| partitions_brute(n, k)).sum();
            assert_eq!(row, BigInt::from(bell), "n = {n}");
        }
    }

    #[test]
    fn rising_factorials() {
        assert_eq!(rising_factorial(7, 0), BigInt::one());
        assert_eq!(rising_factorial(0, 3), BigInt::from(6));
        assert_eq!(rising_factorial(2, 2), BigInt::from(12));
    }

    #[test]
    fn falling_factorial_conventions() {
        assert_eq!(falling_factorial(2, 3), BigInt::zero());
        assert_eq!(falling_factorial(3, 2), BigInt::from(6));
        assert_eq!(falling_factorial(-1, 3), BigInt::from(-6));
        assert_eq!(falling_factorial(0, 0), BigInt::one());
    }

    #[test]
    fn bernoulli_small() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(bernoulli(0), r(1, 1));
        assert_eq!(bernoulli(1), r(-1, 2));
        assert_eq!(bernoulli(2), r(1, 6));
        assert_eq!(bernoulli(3), r(0, 1));
        assert_eq!(bernoulli(4), r(-1, 30));
        assert_eq!(bernoulli(12), r(-691, 2730));
        // B_2 by hand from the recurrence: 1 + 3 B_1 + 3 B_2 = 0
        assert_eq!(r(1, 1) + r(3, 1) * bernoulli(1) + r(3, 1) * bernoulli(2), r(0, 1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
