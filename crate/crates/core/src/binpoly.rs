//! Binary forms on the projective line.
//!
//! A `BinaryPoly` of degree `d` stores coefficients `c_0..c_d` for
//! `sum c_i x^(d-i) y^i`. The affine chart used everywhere is `[1 : t]`,
//! so the dehomogenization is `g(1, t) = sum c_i t^i`; a degree drop
//! there records `x`-factors, i.e. roots at `[0 : 1]`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{clear_denominators, rat_i64, Rat};
use crate::unipoly::{self, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryPoly {
    degree: usize,
    coeffs: Vec<Rat>,
}

impl BinaryPoly {
    pub fn new(degree: usize, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::Malformed(format!(
                "binary form of degree {degree} needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(BinaryPoly { degree, coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        BinaryPoly { degree, coeffs: vec![Rat::zero(); degree + 1] }
    }

    pub fn constant(c: Rat) -> Self {
        BinaryPoly { degree: 0, coeffs: vec![c] }
    }

    /// Homogenizes a univariate polynomial in `t` to the given degree.
    pub fn from_unipoly(p: &UniPoly, degree: usize) -> Result<Self> {
        if let Some(d) = unipoly::degree(p) {
            if d > degree {
                return Err(Error::Malformed(format!(
                    "cannot homogenize degree-{d} polynomial to degree {degree}"
                )));
            }
        }
        let mut coeffs = vec![Rat::zero(); degree + 1];
        for (i, c) in p.iter().enumerate() {
            coeffs[i] = c.clone();
        }
        Ok(BinaryPoly { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `g(1, t)` as a univariate polynomial.
    pub fn dehomogenize(&self) -> UniPoly {
        unipoly::trimmed(self.coeffs.clone())
    }

    /// Multiplicity of the `x` factor (number of roots at `[0:1]`).
    pub fn x_multiplicity(&self) -> usize {
        match unipoly::degree(&self.dehomogenize()) {
            None => self.degree, // zero form: conventional
            Some(d) => self.degree - d,
        }
    }

    pub fn eval(&self, alpha: &Rat, beta: &Rat) -> Rat {
        let mut acc = Rat::zero();
        // Horner in y/x-free form: sum c_i a^(d-i) b^i
        let mut bpow = Rat::one();
        let mut terms = Vec::with_capacity(self.degree + 1);
        for c in &self.coeffs {
            terms.push(c * &bpow);
            bpow *= beta;
        }
        for t in &terms {
            acc = acc * alpha + t;
        }
        acc
    }

    pub fn eval_affine(&self, t: &Rat) -> Rat {
        unipoly::eval(&self.dehomogenize(), t)
    }

    pub fn mul(&self, other: &BinaryPoly) -> BinaryPoly {
        let d = self.degree + other.degree;
        let mut coeffs = vec![Rat::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        BinaryPoly { degree: d, coeffs }
    }

    pub fn scale(&self, s: &Rat) -> BinaryPoly {
        BinaryPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn derivative_x(&self) -> BinaryPoly {
        if self.degree == 0 {
            return BinaryPoly::zero(0);
        }
        let d = self.degree;
        let coeffs = (0..d)
            .map(|i| &self.coeffs[i] * rat_i64((d - i) as i64))
            .collect();
        BinaryPoly { degree: d - 1, coeffs }
    }

    pub fn derivative_y(&self) -> BinaryPoly {
        if self.degree == 0 {
            return BinaryPoly::zero(0);
        }
        let d = self.degree;
        let coeffs = (0..d)
            .map(|j| &self.coeffs[j + 1] * rat_i64((j + 1) as i64))
            .collect();
        BinaryPoly { degree: d - 1, coeffs }
    }

    /// Gcd of two binary forms, as a binary form of its own degree.
    pub fn gcd(&self, other: &BinaryPoly) -> BinaryPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let xm = self.x_multiplicity().min(other.x_multiplicity());
        let u = unipoly::gcd(&self.dehomogenize(), &other.dehomogenize());
        let du = unipoly::degree(&u).unwrap_or(0);
        let mut coeffs = vec![Rat::zero(); xm + du + 1];
        for (i, c) in u.iter().enumerate() {
            coeffs[i] = c.clone();
        }
        BinaryPoly { degree: xm + du, coeffs }
    }

    /// Exact division by a nonzero form; `None` when not divisible.
    pub fn div_exact(&self, g: &BinaryPoly) -> Option<BinaryPoly> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BinaryPoly::zero(self.degree.checked_sub(g.degree)?));
        }
        let dq = self.degree.checked_sub(g.degree)?;
        let xq = self.x_multiplicity().checked_sub(g.x_multiplicity())?;
        let q = unipoly::div_exact(&self.dehomogenize(), &g.dehomogenize())?;
        if unipoly::degree(&q).unwrap_or(0) + xq > dq {
            return None;
        }
        BinaryPoly::from_unipoly(&q, dq).ok()
    }

    /// Substitutes `y -> y + a*x` (parameter shift `t -> t + a`).
    pub fn shift_param(&self, a: &Rat) -> BinaryPoly {
        let shifted = unipoly::shift(&self.dehomogenize(), a);
        BinaryPoly::from_unipoly(&shifted, self.degree).expect("shift preserves degree bound")
    }

    /// Clears denominators and the integer content; makes the leading
    /// nonzero coefficient positive. Zero forms are returned unchanged.
    pub fn primitive(&self) -> BinaryPoly {
        if self.is_zero() {
            return self.clone();
        }
        use num_bigint::BigInt;
        use num_integer::Integer;
        let ints = clear_denominators(&self.coeffs);
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        let lead = ints.iter().find(|c| !c.is_zero()).unwrap();
        if lead.is_negative() {
            g = -g;
        }
        BinaryPoly {
            degree: self.degree,
            coeffs: ints.iter().map(|c| Rat::from_integer(c / &g)).collect(),
        }
    }
}

/// Squarefree test via `gcd(g, dg/dx, dg/dy)`.
///
/// Returns the flag and the gcd itself (a nonzero constant exactly when
/// `g` is squarefree).
pub fn squarefree_check(g: &BinaryPoly) -> Result<(bool, BinaryPoly)> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.degree() == 0 {
        return Ok((true, g.clone()));
    }
    let h = g.gcd(&g.derivative_x()).gcd(&g.derivative_y());
    Ok((h.degree() == 0, h))
}
