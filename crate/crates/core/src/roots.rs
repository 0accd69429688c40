//! Numeric root extraction for binary forms at user-set precision.
//!
//! Squarefree parts are isolated exactly first (Yun), then each part is
//! handed to an Aberth iteration on MPFR complex numbers, so multiple
//! roots never degrade convergence; multiplicities are attached from the
//! exact decomposition. Roots at `[0:1]` come from the degree drop of the
//! dehomogenization.

use rug::float::Constant;
use rug::Float;

use crate::binpoly::BinaryPoly;
use crate::complex::{eval_poly, float_from_rat, BigComplex, MIN_PRECISION};
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::unipoly::{self, UniPoly};

/// A projective root `[alpha : beta]`, normalized to unit norm.
#[derive(Debug, Clone)]
pub struct BinaryRoot {
    pub alpha: BigComplex,
    pub beta: BigComplex,
    pub multiplicity: usize,
}

/// All roots of a nonzero binary form, with multiplicity, each satisfying
/// `|g(alpha,beta)| <= 2^(-precision/2) * ||g||` after unit normalization.
pub fn binary_roots(g: &BinaryPoly, precision: u32) -> Result<Vec<BinaryRoot>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let precision = precision.max(MIN_PRECISION);
    let g = g.primitive();
    let mut work = precision + 64;
    let cap = precision.saturating_mul(16).max(4096);
    loop {
        let roots = roots_at(&g, work)?;
        let res = max_residual(&g, &roots, work);
        let bound = residual_bound(&g, precision, work);
        if res <= bound {
            return Ok(roots);
        }
        if work >= cap {
            return Err(Error::PrecisionExhausted {
                bits: work,
                residual: format!("{:.6e}", res.to_f64()),
            });
        }
        work *= 2;
    }
}

fn roots_at(g: &BinaryPoly, work: u32) -> Result<Vec<BinaryRoot>> {
    let mut out = Vec::new();
    let xm = g.x_multiplicity();
    if xm > 0 {
        out.push(BinaryRoot {
            alpha: BigComplex::zero(work),
            beta: BigComplex::from_f64(1.0, 0.0, work),
            multiplicity: xm,
        });
    }
    let p = g.dehomogenize();
    for (part, mult) in unipoly::squarefree_decomposition(&p) {
        for z in aberth(&part, work) {
            // normalize [1 : z] to unit norm
            let one = BigComplex::from_f64(1.0, 0.0, work);
            let norm = (Float::with_val(work, 1) + z.abs().square()).sqrt();
            let inv = Float::with_val(work, 1) / norm;
            out.push(BinaryRoot {
                alpha: one.scale(&inv),
                beta: z.scale(&inv),
                multiplicity: mult,
            });
        }
    }
    Ok(out)
}

fn max_residual(g: &BinaryPoly, roots: &[BinaryRoot], work: u32) -> Float {
    let coeffs: Vec<BigComplex> = g
        .coeffs()
        .iter()
        .map(|c| BigComplex::from_rat(c, work))
        .collect();
    let mut worst = Float::with_val(work, 0);
    for r in roots {
        let v = eval_binary(&coeffs, &r.alpha, &r.beta);
        let a = v.abs();
        if a > worst {
            worst = a;
        }
    }
    worst
}

fn residual_bound(g: &BinaryPoly, precision: u32, work: u32) -> Float {
    let mut norm = Float::with_val(work, 0);
    for c in g.coeffs() {
        let a = float_from_rat(c, work).abs();
        if a > norm {
            norm = a;
        }
    }
    norm >> (precision / 2) as i32
}

fn eval_binary(coeffs: &[BigComplex], alpha: &BigComplex, beta: &BigComplex) -> BigComplex {
    // sum c_i a^(d-i) b^i, Horner in alpha
    let prec = alpha.prec();
    let mut acc = BigComplex::zero(prec);
    let d = coeffs.len() - 1;
    let mut bpow = vec![BigComplex::from_f64(1.0, 0.0, prec)];
    for i in 1..=d {
        bpow.push(bpow[i - 1].mul(beta));
    }
    for i in 0..=d {
        acc = acc.mul(alpha).add(&coeffs[i].mul(&bpow[i]));
    }
    acc
}

/// Aberth–Ehrlich iteration; `p` must be squarefree with degree >= 1.
pub fn aberth(p: &UniPoly, prec: u32) -> Vec<BigComplex> {
    let n = unipoly::degree(p).expect("nonzero polynomial");
    if n == 0 {
        return vec![];
    }
    let coeffs: Vec<BigComplex> = p.iter().map(|c| BigComplex::from_rat(c, prec)).collect();
    let dp = unipoly::derivative(p);
    let dcoeffs: Vec<BigComplex> = dp.iter().map(|c| BigComplex::from_rat(c, prec)).collect();

    if n == 1 {
        // exact: -a0/a1
        return vec![coeffs[0].neg().div(&coeffs[1])];
    }

    // initial points on a circle enclosing all roots
    let lead = coeffs[n].abs();
    let mut radius = Float::with_val(prec, 0);
    for c in coeffs.iter().take(n) {
        let r = c.abs() / &lead;
        if r > radius {
            radius = r;
        }
    }
    radius += 1;
    let pi = Float::with_val(prec, Constant::Pi);
    let mut z: Vec<BigComplex> = (0..n)
        .map(|k| {
            let theta: Float = Float::with_val(prec, 2 * k as u32) * &pi
                / Float::with_val(prec, n as u32)
                + Float::with_val(prec, 0.4);
            BigComplex::new(&radius * theta.clone().cos(), &radius * theta.sin())
        })
        .collect();

    let tol = Float::with_val(prec, 1) >> (prec.saturating_sub(8)) as i32;
    let max_iter = 100 + 4 * prec as usize;
    for _ in 0..max_iter {
        let mut moved = false;
        for i in 0..n {
            let pz = eval_poly(&coeffs, &z[i]);
            if pz.is_zero() {
                continue;
            }
            let pdz = eval_poly(&dcoeffs, &z[i]);
            if pdz.is_zero() {
                // nudge off the critical point
                z[i] = z[i].add(&BigComplex::from_f64(1e-3, 1e-3, prec));
                moved = true;
                continue;
            }
            let newton = pz.div(&pdz);
            let mut s = BigComplex::zero(prec);
            for j in 0..n {
                if j != i {
                    let d = z[i].sub(&z[j]);
                    if d.is_zero() {
                        continue;
                    }
                    s = s.add(&BigComplex::from_f64(1.0, 0.0, prec).div(&d));
                }
            }
            let denom = BigComplex::from_f64(1.0, 0.0, prec).sub(&newton.mul(&s));
            let w = if denom.is_zero() { newton.clone() } else { newton.div(&denom) };
            let scale_ref = Float::with_val(prec, 1) + z[i].abs();
            if w.abs() > &tol * scale_ref {
                moved = true;
            }
            z[i] = z[i].sub(&w);
        }
        if !moved {
            break;
        }
    }
    z
}

/// Exact rational projective roots of `g`, if `g` splits completely over
/// the rationals; `None` otherwise. Multiplicities included.
pub fn rational_roots(g: &BinaryPoly) -> Result<Option<Vec<((Rat, Rat), usize)>>> {
    use num_traits::{One, Zero};
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let factors = crate::factor::factor_unipoly(&g.dehomogenize());
    let mut out = Vec::new();
    let xm = g.x_multiplicity();
    if xm > 0 {
        out.push(((Rat::zero(), Rat::one()), xm));
    }
    for (f, mult) in factors {
        match unipoly::degree(&f) {
            Some(1) => {
                let root = -&f[0] / &f[1];
                out.push(((Rat::one(), root), mult));
            }
            Some(0) | None => {}
            _ => return Ok(None),
        }
    }
    Ok(Some(out))
}
