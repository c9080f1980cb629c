//! Binomial coefficients, the bracket coefficients {r,ℓ}_m, and the two
//! combinatorial identities the transformation proofs rest on.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Rational;

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// C(n, k) as an exact rational; 0 outside the range 0 ≤ k ≤ n.
pub fn binomial(n: u64, k: i64) -> Rational {
    if k < 0 || k as u64 > n {
        return Rational::zero();
    }
    let k = k as u64;
    Rational::from_integer(factorial(n) / (factorial(k) * factorial(n - k)))
}

/// The bracket coefficient {r,ℓ}_m = (m+ℓ)!(r−ℓ)! / (m!·r!).
///
/// Requires r ≥ ℓ and 0 ≤ m ≤ r − ℓ.
pub fn bracket(r: u64, l: u64, m: u64) -> Result<Rational> {
    if l > r || m > r - l {
        return Err(Error::BracketDomain);
    }
    Ok(Rational::new(
        factorial(m + l) * factorial(r - l),
        factorial(m) * factorial(r),
    ))
}

/// Checks C(m+p,p)·{r,ℓ}_{m+p} = C(r−ℓ,m)·{r,m+ℓ}_p as exact rationals.
pub fn check_coeff_equiv(r: u64, l: u64, m: u64, p: u64) -> Result<bool> {
    if l + m + p > r {
        return Err(Error::BracketDomain);
    }
    let lhs = binomial(m + p, p as i64) * bracket(r, l, m + p)?;
    let rhs = binomial(r - l, m as i64) * bracket(r, m + l, p)?;
    Ok(lhs == rhs)
}

/// Both sides of the alternating Vandermonde collapse
/// Σ_{ℓ=0}^{n} (−1)^ℓ C(n,ℓ) C(r−ℓ, r−m) = C(r−n, m).
///
/// Returned as a pair so callers can assert equality themselves.
pub fn vandermonde_collapse(n: u64, r: u64, m: u64) -> (Rational, Rational) {
    let mut lhs = Rational::zero();
    for l in 0..=n {
        let sign = if l % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        // C(r−ℓ, r−m) vanishes once ℓ exceeds r.
        let inner = if l > r {
            Rational::zero()
        } else {
            binomial(r - l, (r as i64) - (m as i64))
        };
        lhs += sign * binomial(n, l as i64) * inner;
    }
    let rhs = if n > r {
        Rational::zero()
    } else {
        binomial(r - n, m as i64)
    };
    (lhs, rhs)
}
