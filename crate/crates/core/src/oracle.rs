//! Exact reference values at integer arguments, plus brute-force lattice sums.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::sum::CompensatedC;
use crate::{Error, Result};

/// Largest argument accepted by the recursion oracles.
pub const MAX_ARGUMENT: u32 = 50;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactValue(pub BigRational);

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

impl ExactValue {
    pub fn from_integer(n: BigInt) -> Self {
        ExactValue(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Nearest binary64 (may be infinite for huge values).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Natural logarithm, accurate to a few ulps even beyond the f64 range.
    pub fn ln(&self) -> Result<f64> {
        if !self.0.is_positive() {
            return Err(Error::Domain("logarithm of a non-positive exact value".into()));
        }
        Ok(ln_bigint(self.numer()) - ln_bigint(self.denom()))
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_argument(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("recursion oracles start at argument 1".into()));
    }
    if n > MAX_ARGUMENT {
        return Err(Error::Overflow(format!("argument {n} exceeds the oracle cap {MAX_ARGUMENT}")));
    }
    Ok(())
}

/// G(n) = Π_{k=1}^{n−2} k!.
pub fn g_integer(n: u32) -> Result<ExactValue> {
    gn_integer(2, n)
}

/// K(n) = Π_{j=1}^{n−1} j^j.
pub fn k_integer(n: u32) -> Result<ExactValue> {
    kn_integer(1, n)
}

/// K_order(n) from K(m+1) = m^{m^order} K(m), K(1) = 1.
pub fn kn_integer(order: u32, n: u32) -> Result<ExactValue> {
    check_argument(n)?;
    let mut acc = BigInt::one();
    for m in 1..n {
        let e = (m as u64).pow(order);
        let e: u32 = e
            .try_into()
            .map_err(|_| Error::Overflow(format!("exponent {m}^{order} too large")))?;
        acc *= num_traits::pow(BigInt::from(m), e as usize);
    }
    Ok(ExactValue::from_integer(acc))
}

/// G_order(n) from G_k(m+1) = G_{k−1}(m) G_k(m), G_k(1) = 1, G_0(m) = m.
pub fn gn_integer(order: u32, n: u32) -> Result<ExactValue> {
    check_argument(n)?;
    // row[m-1] = G_k(m) for m = 1..=n
    let mut row: Vec<BigInt> = (1..=n).map(BigInt::from).collect();
    for _ in 0..order {
        let mut next = Vec::with_capacity(row.len());
        next.push(BigInt::one());
        for m in 1..n as usize {
            let v = &next[m - 1] * &row[m - 1];
            next.push(v);
        }
        row = next;
    }
    Ok(ExactValue::from_integer(row[n as usize - 1].clone()))
}

/// Σ (x + m + nα)^{−power} over 0 ≤ m, n ≤ n_max with (m, n) ≠ (0, 0).
pub fn lattice_sum_brute(x: Complex64, alpha: Complex64, power: u32, n_max: u32) -> Complex64 {
    let mut acc = CompensatedC::new();
    for n in 0..=n_max {
        for m in 0..=n_max {
            if m == 0 && n == 0 {
                continue;
            }
            let w = x + m as f64 + alpha * n as f64;
            acc.add(w.powi(-(power as i32)));
        }
    }
    acc.value()
}

/// Sign helper used by tests on exact values.
pub fn is_positive(v: &ExactValue) -> bool {
    v.numer().sign() == Sign::Plus && !v.denom().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: &ExactValue) -> i64 {
        v.to_f64() as i64
    }

    #[test]
    fn anchors() {
        assert_eq!(int(&g_integer(1).unwrap()), 1);
        assert_eq!(int(&g_integer(4).unwrap()), 2);
        assert_eq!(int(&g_integer(6).unwrap()), 288);
        assert_eq!(int(&k_integer(3).unwrap()), 4);
        assert_eq!(int(&kn_integer(2, 3).unwrap()), 16);
        assert_eq!(int(&gn_integer(3, 5).unwrap()), 2);
        assert_eq!(int(&gn_integer(1, 5).unwrap()), 24);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(g_integer(51), Err(Error::Overflow(_))));
        assert!(g_integer(50).is_ok());
    }

    #[test]
    fn ln_beyond_f64_range() {
        let g = g_integer(50).unwrap();
        assert!(g.to_f64().is_infinite());
        let direct: f64 = (1..=48u32).map(|k| (1..=k).map(|j| (j as f64).ln()).sum::<f64>()).sum();
        assert!((g.ln().unwrap() - direct).abs() < 1e-12 * direct);
        assert!(is_positive(&g));
    }

    #[test]
    fn lattice_sum_converges_like_inverse_n() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let s = |n| lattice_sum_brute(zero, one, 3, n);
        let d1 = (s(40) - s(20)).norm();
        let d2 = (s(80) - s(40)).norm();
        let ratio = d1 / d2;
        assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio}");
        assert!((s(2000) - s(1000)).norm() < 1e-3);
    }
}
