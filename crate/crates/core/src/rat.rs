//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational, always reduced, with positive
//! denominator. Everything downstream (matrices, polynomials, jet columns)
//! is built on it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced arbitrary-precision rational with positive denominator.
pub type Rat = BigRational;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0);
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `num/den`, or just `num` when the denominator is 1.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `num`, `num/den`, with optional sign.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Malformed(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Malformed(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
    }
}

/// Max-norm of a slice of rationals.
pub fn max_norm(v: &[Rat]) -> Rat {
    v.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(Rat::zero)
}

/// binomial(n, k) as a `BigInt`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// multinomial(d; e_0..e_k) = d! / (e_0! ... e_k!); the `e` must sum to `d`.
pub fn multinomial(d: u64, exps: &[u32]) -> BigInt {
    debug_assert_eq!(exps.iter().map(|&e| e as u64).sum::<u64>(), d);
    let mut out = BigInt::one();
    let mut rem = d;
    for &e in exps {
        out *= binomial(rem, e as u64);
        rem -= e as u64;
    }
    out
}

/// Clears denominators: returns integer vector `c*v` with `c > 0` minimal.
pub fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}
