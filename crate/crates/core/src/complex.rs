//! Arbitrary-precision complex arithmetic on MPFR floats.

use rug::float::Round;
use rug::ops::CompleteRound;
use rug::Float;

use crate::rat::Rat;

pub const MIN_PRECISION: u32 = 64;

/// Complex number with explicit precision in bits (>= 64).
#[derive(Debug, Clone)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex { re: Float::with_val(prec, 0), im: Float::with_val(prec, 0) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex { re: float_from_rat(r, prec), im: Float::with_val(prec, 0) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        BigComplex {
            re: (&self.re + &o.re).complete(self.prec()),
            im: (&self.im + &o.im).complete(self.prec()),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigComplex {
            re: (&self.re - &o.re).complete(self.prec()),
            im: (&self.im - &o.im).complete(self.prec()),
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let re = (&self.re * &o.re).complete(p) - (&self.im * &o.im).complete(p);
        let im = (&self.re * &o.im).complete(p) + (&self.im * &o.re).complete(p);
        BigComplex { re, im }
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec();
        let d = (&o.re * &o.re).complete(p) + (&o.im * &o.im).complete(p);
        let re = ((&self.re * &o.re).complete(p) + (&self.im * &o.im).complete(p)) / &d;
        let im = ((&self.im * &o.re).complete(p) - (&self.re * &o.im).complete(p)) / &d;
        BigComplex { re, im }
    }

    pub fn scale(&self, f: &Float) -> Self {
        BigComplex {
            re: (&self.re * f).complete(self.prec()),
            im: (&self.im * f).complete(self.prec()),
        }
    }

    /// |z|, as a Float at the same precision.
    pub fn abs(&self) -> Float {
        let p = self.prec();
        let s = (&self.re * &self.re).complete(p) + (&self.im * &self.im).complete(p);
        s.sqrt()
    }

    /// Returns self rounded to a new precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        re.set_prec_round(prec, Round::Nearest);
        im.set_prec_round(prec, Round::Nearest);
        BigComplex { re, im }
    }
}

/// Converts a `Rat` to a `Float` at the given precision.
pub fn float_from_rat(r: &Rat, prec: u32) -> Float {
    let prec = prec.max(MIN_PRECISION);
    let num = Float::parse(r.numer().to_string()).expect("integer parse");
    let den = Float::parse(r.denom().to_string()).expect("integer parse");
    Float::with_val(prec, num) / Float::with_val(prec, den)
}

/// Horner evaluation of a complex-coefficient polynomial (ascending).
pub fn eval_poly(coeffs: &[BigComplex], z: &BigComplex) -> BigComplex {
    let prec = z.prec();
    let mut acc = BigComplex::zero(prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn field_ops() {
        let a = BigComplex::from_f64(1.0, 2.0, 128);
        let b = BigComplex::from_f64(3.0, -1.0, 128);
        let prod = a.mul(&b);
        assert_eq!(prod.re.to_f64(), 5.0);
        assert_eq!(prod.im.to_f64(), 5.0);
        let back = prod.div(&b);
        assert!((back.re.to_f64() - 1.0).abs() < 1e-30);
        assert!((back.im.to_f64() - 2.0).abs() < 1e-30);
    }

    #[test]
    fn rat_conversion() {
        let f = float_from_rat(&rat(1, 3), 256);
        assert!((f.to_f64() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(f.prec(), 256);
    }
}
