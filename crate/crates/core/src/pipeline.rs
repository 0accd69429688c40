//! End-to-end decomposition of a form through a curvilinear scheme:
//! fit a rational curve through the scheme, lift the Veronese image of
//! that curve to the standard rational normal curve, pull the form back
//! to a binary form, decompose with the Sylvester engine, and push the
//! decomposition points down to linear forms.
//!
//! The certified output length never exceeds `(k-1)d + 2 - k` for the
//! reduced scheme degree `k`; exceeding it is reported as a hard error.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::binpoly::BinaryPoly;
use crate::complex::BigComplex;
use crate::curvilinear::{jet_matrix, minimality_reduce, CurvilinearScheme, SchemeComponent};
use crate::error::{Error, Result};
use crate::forms::{
    veronese_point, verify_decomposition, BinaryFormDivided, DecompTerm, Decomposition, Form,
    LinearForm, MonomialOrder, Residual, Scalar,
};
use crate::mat::{mat_kernel, Mat};
use crate::rat::{clear_denominators, rat_i64, Rat};
use crate::ratcurve::{standard_rnc, veronese_curve, RationalCurveParam};
use crate::sylvester::{binary_decompose, Branch};
use crate::unipoly::UniPoly;

/// Curve through a curvilinear scheme, with the (possibly reassigned)
/// parameter values and exact jet-equality evidence.
#[derive(Debug, Clone)]
pub struct FittedCurve {
    pub curve: RationalCurveParam,
    /// `(t_i, e_i)` per component, aligned with the input scheme.
    pub params: Vec<(Rat, usize)>,
    /// Jets of the fitted curve equal the scheme's jet columns exactly.
    pub jets_match: bool,
}

/// Degree <= k-1 rational curve whose jets at `(t_i, e_i)` reproduce the
/// scheme's jet columns: the scheme is contained in the curve.
pub fn fit_rational_curve(z: &CurvilinearScheme) -> Result<FittedCurve> {
    let k = z.degree();
    if k < 2 {
        return Err(Error::OutOfRange(
            "curve fitting needs scheme degree >= 2; use the rank-1 shortcut".into(),
        ));
    }
    // distinct parameter values, reassigning via shifts when needed
    let ts: Vec<Rat> = z.components().iter().map(|c| c.t.clone()).collect();
    let distinct = ts
        .iter()
        .enumerate()
        .all(|(i, t)| ts.iter().take(i).all(|u| u != t));
    let mut comps: Vec<SchemeComponent> = Vec::new();
    let mut params: Vec<(Rat, usize)> = Vec::new();
    for (i, c) in z.components().iter().enumerate() {
        let (curve, t) = if distinct {
            (c.curve.clone(), c.t.clone())
        } else {
            let s = rat_i64(i as i64);
            let a = &c.t - &s;
            (c.curve.shift(&a), s)
        };
        params.push((t.clone(), c.e));
        comps.push(SchemeComponent::new(curve, t, c.e)?);
    }
    let zs = CurvilinearScheme::new(comps)?;

    // S: jets of the standard degree-(k-1) RNC at the parameter data
    let rnc = standard_rnc(k - 1);
    let mut s_cols = Vec::new();
    for (t, e) in &params {
        s_cols.extend(rnc.jet_columns(t, *e));
    }
    let s = Mat::from_cols(s_cols);
    let m = jet_matrix(&zs).mat;

    // L = M S^{-1}, via columnwise solves of S X = I
    let mut inv_cols = Vec::new();
    for j in 0..k {
        let mut e = vec![Rat::zero(); k];
        e[j] = Rat::one();
        let col = s
            .solve(&e)?
            .ok_or_else(|| Error::Malformed("degenerate scheme jet matrix".into()))?;
        inv_cols.push(col);
    }
    let s_inv = Mat::from_cols(inv_cols);
    let l = m.matmul(&s_inv)?;

    let coords: Vec<BinaryPoly> = (0..l.rows)
        .map(|i| {
            let row: UniPoly = l.row(i).to_vec();
            BinaryPoly::from_unipoly(&crate::unipoly::trimmed(row), k - 1)
        })
        .collect::<Result<_>>()?;
    let curve = RationalCurveParam::new(coords)?;

    // exact containment evidence: jets of the curve against the scheme's
    let mut fitted_cols = Vec::new();
    for (t, e) in &params {
        fitted_cols.extend(curve.jet_columns(t, *e));
    }
    let jets_match = Mat::from_cols(fitted_cols) == m;
    Ok(FittedCurve { curve, params, jets_match })
}

/// Projection matrix of the Veronese image of `t`: row `i` holds the
/// coefficients of coordinate `i` of `veronese_curve(t, d)`, matched to
/// the divided coordinates of `P^D`. Returns `(D, matrix)`.
pub fn lift_projection(t: &RationalCurveParam, d: usize) -> Result<(usize, Mat)> {
    let vc = veronese_curve(t, d)?;
    let big_d = vc.degree();
    let rows: Vec<Vec<Rat>> = vc.coords().iter().map(|c| c.coeffs().to_vec()).collect();
    Ok((big_d, Mat::from_rows(rows)))
}

/// Point of the standard degree-D rational normal curve's scheme span
/// projecting onto `p_div`, in divided coordinates.
pub fn solve_preimage(lambda: &Mat, j: &Mat, p_div: &[Rat]) -> Result<Vec<Rat>> {
    let a = lambda.matmul(j)?;
    let neg_b: Vec<Rat> = p_div.iter().map(|x| -x).collect();
    let aug = a.augment_col(&neg_b)?;
    let kernel = mat_kernel(&aug);
    let k = j.cols;
    for v in &kernel {
        if !v[k].is_zero() {
            let c = &v[..k];
            let o = j.mul_vec(c)?;
            return Ok(clear_denominators(&o)
                .into_iter()
                .map(Rat::from_integer)
                .collect());
        }
    }
    Err(Error::NotInSpan)
}

/// Summary of a pipeline run, including the certified length bound.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub k: usize,
    pub deg_t: usize,
    pub big_d: usize,
    pub bound: usize,
    pub length: usize,
    pub branch: &'static str,
    pub residual: String,
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "degT": self.deg_t,
            "D": self.big_d,
            "bound": self.bound,
            "length": self.length,
            "branch": self.branch,
            "residual": self.residual,
        })
    }
}

fn eval_curve_complex(
    c: &RationalCurveParam,
    alpha: &BigComplex,
    beta: &BigComplex,
) -> Vec<BigComplex> {
    let prec = alpha.prec();
    let d = c.degree();
    let mut apow = vec![BigComplex::from_f64(1.0, 0.0, prec)];
    let mut bpow = vec![BigComplex::from_f64(1.0, 0.0, prec)];
    for i in 1..=d {
        apow.push(apow[i - 1].mul(alpha));
        bpow.push(bpow[i - 1].mul(beta));
    }
    c.coords()
        .iter()
        .map(|coord| {
            let mut acc = BigComplex::zero(prec);
            for (i, coeff) in coord.coeffs().iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let term = BigComplex::from_rat(coeff, prec)
                    .mul(&apow[d - i])
                    .mul(&bpow[i]);
                acc = acc.add(&term);
            }
            acc
        })
        .collect()
}

fn veronese_complex(p: &[BigComplex], d: usize) -> Vec<BigComplex> {
    let prec = p[0].prec();
    let mo = MonomialOrder::new(p.len(), d);
    mo.exponents()
        .iter()
        .map(|e| {
            let mut m = BigComplex::from_f64(1.0, 0.0, prec);
            for (x, &k) in p.iter().zip(e) {
                for _ in 0..k {
                    m = m.mul(x);
                }
            }
            m
        })
        .collect()
}

/// Complex least squares via normal equations (same scheme as the
/// Sylvester engine's coefficient solve).
fn lstsq(cols: &[Vec<BigComplex>], b: &[BigComplex], prec: u32) -> Vec<BigComplex> {
    let r = cols.len();
    let inner = |u: &[BigComplex], v: &[BigComplex]| {
        let mut s = BigComplex::zero(prec);
        for (x, y) in u.iter().zip(v) {
            s = s.add(&x.conj().mul(y));
        }
        s
    };
    let mut g: Vec<Vec<BigComplex>> = (0..r)
        .map(|i| (0..r).map(|j| inner(&cols[i], &cols[j])).collect())
        .collect();
    let mut h: Vec<BigComplex> = (0..r).map(|i| inner(&cols[i], b)).collect();
    for col in 0..r {
        let pivot = (col..r)
            .max_by(|&i, &j| g[i][col].abs().partial_cmp(&g[j][col].abs()).unwrap())
            .unwrap();
        g.swap(col, pivot);
        h.swap(col, pivot);
        let p = g[col][col].clone();
        for i in (col + 1)..r {
            let factor = g[i][col].div(&p);
            for j in col..r {
                let t = factor.mul(&g[col][j]);
                g[i][j] = g[i][j].sub(&t);
            }
            let t = factor.mul(&h[col]);
            h[i] = h[i].sub(&t);
        }
    }
    let mut x = vec![BigComplex::zero(prec); r];
    for i in (0..r).rev() {
        let mut acc = h[i].clone();
        for j in (i + 1)..r {
            acc = acc.sub(&g[i][j].mul(&x[j]));
        }
        x[i] = acc.div(&g[i][i]);
    }
    x
}

/// Full pipeline: reduce the scheme, fit a curve, lift, pull back,
/// decompose the binary preimage, and re-solve coefficients against `p`.
pub fn decompose_via_curvilinear(
    p: &Form,
    z: &CurvilinearScheme,
    precision: u32,
    tol: i32,
    seed: u64,
) -> Result<(Decomposition, BoundReport)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.nvars() != z.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "form in {} variables, scheme in {}",
            p.nvars(),
            z.nvars()
        )));
    }
    let d = p.degree();
    let zr = minimality_reduce(z, p, d)?;
    let k = zr.degree();
    let bound = (k - 1) * d + 2 - k;
    let p_div = p.divided_vector();

    if k == 1 {
        let q = zr.components()[0].support();
        let v = veronese_point(&q, d)?;
        let i = v
            .iter()
            .position(|x| !x.is_zero())
            .expect("veronese of a nonzero point is nonzero");
        let lam = &p_div[i] / &v[i];
        if p_div.iter().zip(&v).any(|(a, b)| a != &(&lam * b)) {
            return Err(Error::NotInSpan);
        }
        let dec = Decomposition::new(
            d,
            vec![DecompTerm { coeff: Scalar::Exact(lam), linear: LinearForm::Exact(q) }],
        )?;
        let (ok, res) = verify_decomposition(p, &dec, None)?;
        debug_assert!(ok);
        return Ok((
            dec,
            BoundReport {
                k: 1,
                deg_t: 0,
                big_d: 0,
                bound,
                length: 1,
                branch: Branch::Generic.as_str(),
                residual: res.display(),
            },
        ));
    }

    let fit = fit_rational_curve(&zr)?;
    if !fit.jets_match {
        return Err(Error::Malformed(
            "fitted curve does not interpolate the scheme exactly (special position)".into(),
        ));
    }
    let (big_d, lambda) = lift_projection(&fit.curve, d)?;
    let rnc = standard_rnc(big_d);
    let mut j_cols = Vec::new();
    for (t, e) in &fit.params {
        j_cols.extend(rnc.jet_columns(t, *e));
    }
    let j = Mat::from_cols(j_cols);
    let o = BinaryFormDivided::new(solve_preimage(&lambda, &j, &p_div)?)?;

    let mut work = precision;
    let cap = precision.saturating_mul(8);
    let mut last_res = String::from("unknown");
    loop {
        let (bdec, cert, _) = binary_decompose(&o, work, seed)?;
        let attempt = push_down(p, &p_div, &fit.curve, &bdec, d, work, tol)?;
        match attempt {
            Some((dec, res)) => {
                let length = dec.len();
                if length > bound {
                    return Err(Error::BoundViolation { length, bound: bound as i64 });
                }
                let report = BoundReport {
                    k,
                    deg_t: fit.curve.degree(),
                    big_d,
                    bound,
                    length,
                    branch: cert.branch.as_str(),
                    residual: res.display(),
                };
                return Ok((dec, report));
            }
            None => {
                if work >= cap {
                    return Err(Error::PrecisionExhausted { bits: work, residual: last_res });
                }
                last_res = format!("push-down verification failed at {work} bits");
                work *= 2;
            }
        }
    }
}

/// Maps decomposition points of the binary preimage to linear forms via
/// the fitted curve and re-solves the coefficients against `p`. Returns
/// `None` when the numeric verification misses the tolerance.
fn push_down(
    p: &Form,
    p_div: &[Rat],
    curve: &RationalCurveParam,
    bdec: &Decomposition,
    d: usize,
    prec: u32,
    tol: i32,
) -> Result<Option<(Decomposition, Residual)>> {
    if bdec.exact {
        let pts: Vec<Vec<Rat>> = bdec
            .terms
            .iter()
            .map(|t| match &t.linear {
                LinearForm::Exact(ab) => curve.eval(&ab[0], &ab[1]),
                LinearForm::Numeric(_) => unreachable!("exact decomposition"),
            })
            .collect();
        let cols: Vec<Vec<Rat>> = pts
            .iter()
            .map(|q| veronese_point(q, d))
            .collect::<Result<_>>()?;
        let a = Mat::from_cols(cols);
        let Some(mu) = a.solve(p_div)? else {
            return Err(Error::Malformed(
                "projected decomposition is inconsistent with the form".into(),
            ));
        };
        let terms: Vec<DecompTerm> = mu
            .iter()
            .zip(pts)
            .filter(|(m, _)| !m.is_zero())
            .map(|(m, q)| DecompTerm {
                coeff: Scalar::Exact(m.clone()),
                linear: LinearForm::Exact(q),
            })
            .collect();
        let dec = Decomposition::new(d, terms)?;
        let (ok, res) = verify_decomposition(p, &dec, None)?;
        if !ok {
            return Err(Error::Malformed("exact push-down failed verification".into()));
        }
        Ok(Some((dec, res)))
    } else {
        let pts: Vec<Vec<BigComplex>> = bdec
            .terms
            .iter()
            .map(|t| match &t.linear {
                LinearForm::Numeric(ab) => eval_curve_complex(curve, &ab[0], &ab[1]),
                LinearForm::Exact(ab) => eval_curve_complex(
                    curve,
                    &BigComplex::from_rat(&ab[0], prec),
                    &BigComplex::from_rat(&ab[1], prec),
                ),
            })
            .collect();
        let cols: Vec<Vec<BigComplex>> = pts.iter().map(|q| veronese_complex(q, d)).collect();
        let b: Vec<BigComplex> = p_div.iter().map(|c| BigComplex::from_rat(c, prec)).collect();
        let mu = lstsq(&cols, &b, prec);
        let terms: Vec<DecompTerm> = mu
            .into_iter()
            .zip(pts)
            .map(|(m, q)| DecompTerm {
                coeff: Scalar::Numeric(m),
                linear: LinearForm::Numeric(q),
            })
            .collect();
        let dec = Decomposition::new(d, terms)?;
        let (ok, res) = verify_decomposition(p, &dec, Some(tol))?;
        if ok {
            Ok(Some((dec, res)))
        } else {
            Ok(None)
        }
    }
}

/// Seeded random instance: a curvilinear scheme of degree `k` on a
/// smooth rational curve in `P^n`, plus a degree-`d` form in the span of
/// its Veronese jets with all combination coefficients nonzero.
pub fn generate_instance(
    n: usize,
    d: usize,
    k: usize,
    seed: u64,
) -> Result<(Form, CurvilinearScheme)> {
    assert!(n >= 2 && d >= 1 && k >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // random invertible change of coordinates applied to the moment curve
    let a = loop {
        let rows: Vec<Vec<Rat>> = (0..=n)
            .map(|_| (0..=n).map(|_| rat_i64(rng.gen_range(-4..=4))).collect())
            .collect();
        let m = Mat::from_rows(rows);
        if m.rank() == n + 1 {
            break m;
        }
    };
    let coords: Vec<BinaryPoly> = (0..=n)
        .map(|i| BinaryPoly::from_unipoly(&crate::unipoly::trimmed(a.row(i).to_vec()), n))
        .collect::<Result<_>>()?;
    let curve = RationalCurveParam::new(coords)?;

    let mut comps = Vec::new();
    let mut used: Vec<i64> = Vec::new();
    let mut total = 0usize;
    while total < k {
        let t = rng.gen_range(-6..=6i64);
        if used.contains(&t) {
            continue;
        }
        used.push(t);
        let e = rng.gen_range(1..=3usize).min(k - total);
        comps.push(SchemeComponent::new(curve.clone(), rat_i64(t), e)?);
        total += e;
    }
    let z = CurvilinearScheme::new(comps)?;

    let m = crate::curvilinear::veronese_jet_matrix(&z, d)?;
    let mut p_div = vec![Rat::zero(); m.mat.rows];
    for jcol in 0..m.mat.cols {
        let c = rat_i64(if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=5));
        for (acc, x) in p_div.iter_mut().zip(m.mat.col(jcol)) {
            *acc += &c * &x;
        }
    }
    let p = Form::from_divided_vector(n + 1, d, &p_div)?;
    if p.is_zero() {
        return Err(Error::Malformed("degenerate random instance".into()));
    }
    Ok((p, z))
}
