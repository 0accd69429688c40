//! Rank and explicit power-sum decomposition of binary forms through
//! catalecticant kernels.
//!
//! The rank of a nonzero binary form of degree D is either the border
//! rank k0 (smallest catalecticant index with a nontrivial kernel) when
//! that kernel contains a squarefree form, or D - k0 + 2 otherwise; the
//! squarefree kernel element's roots are the points of the
//! decomposition.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binpoly::{squarefree_check, BinaryPoly};
use crate::complex::BigComplex;
use crate::error::{Error, Result};
use crate::forms::{
    catalecticant_binary, veronese_point, verify_decomposition, BinaryFormDivided, DecompTerm,
    Decomposition, LinearForm, Residual, Scalar,
};
use crate::factor::zmodp;
use crate::mat::{mat_kernel, Mat};
use crate::rat::{clear_denominators, Rat};
use crate::roots::{binary_roots, rational_roots};

/// Squarefreeness with a sound one-prime fast path: if the reduction
/// mod p keeps the degree and gcd(g, g') = 1 mod p, then g is
/// squarefree over Q. Inconclusive reductions fall back to the exact
/// rational check.
fn squarefree_fast(g: &BinaryPoly) -> bool {
    let cs = g.coeffs();
    let Some(i0) = cs.iter().position(|c| !c.is_zero()) else { return false };
    let i1 = cs.iter().rposition(|c| !c.is_zero()).unwrap();
    // multiplicity of the y and x factors
    if i0 > 1 || g.degree() - i1 > 1 {
        return false;
    }
    let core: Vec<Rat> = cs[i0..=i1].to_vec();
    if core.len() >= 2 {
        let p = num_bigint::BigInt::from(1_000_003u64);
        let ints = clear_denominators(&core);
        if !(ints.last().unwrap() % &p).is_zero() {
            let h = zmodp::norm(ints, &p);
            let dh = zmodp::derivative(&h, &p);
            if zmodp::deg(&zmodp::gcd(&h, &dh, &p)) == Some(0) {
                return true;
            }
        }
    }
    squarefree_check(g).map(|(ok, _)| ok).unwrap_or(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Generic,
    Exceptional,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Generic => "generic",
            Branch::Exceptional => "exceptional",
        }
    }
}

/// Rank witness: a squarefree apolar form of degree `rank`.
#[derive(Debug, Clone)]
pub struct RankCertificate {
    pub border_rank: usize,
    pub rank: usize,
    pub apolar: BinaryPoly,
    pub squarefree: bool,
    pub branch: Branch,
}

fn kernel_at(f: &BinaryFormDivided, r: usize) -> Result<Vec<Vec<Rat>>> {
    Ok(mat_kernel(&catalecticant_binary(f, r)?))
}

/// Smallest r with a nontrivial degree-r apolar form; at most D/2 + 1.
pub fn border_rank_binary(f: &BinaryFormDivided) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for r in 1..=f.degree() {
        if !kernel_at(f, r)?.is_empty() {
            return Ok(r);
        }
    }
    // D = 1: the form is a single linear power
    Ok(1)
}

/// Kernel vector -> apolar binary form `sum v_q x^(r-q) y^q`.
fn kernel_to_poly(v: &[Rat]) -> BinaryPoly {
    BinaryPoly::new(v.len() - 1, v.to_vec()).expect("consistent shape")
}

/// Searches the kernel span for a squarefree element: a deterministic
/// small-integer sweep, then seeded random combinations. Prefers an
/// element splitting over the rationals when one shows up early.
fn squarefree_in_span(basis: &[Vec<Rat>], seed: u64) -> Option<BinaryPoly> {
    if basis.is_empty() {
        return None;
    }
    // sweep cost is 5^s candidates; large kernels get the random phase
    let s = basis.len().min(3);
    let digits: [i64; 5] = [0, 1, -1, 2, -2];
    let mut first: Option<BinaryPoly> = None;
    let mut rational_checks = 0usize;
    let mut consider = |g: BinaryPoly, first: &mut Option<BinaryPoly>| -> Option<BinaryPoly> {
        if !squarefree_fast(&g) {
            return None;
        }
        if first.is_none() {
            *first = Some(g.clone());
        }
        // exact factorization is only worth trying at modest degrees
        if g.degree() <= 10 && rational_checks < 12 {
            rational_checks += 1;
            if matches!(rational_roots(&g), Ok(Some(_))) {
                return Some(g);
            }
        }
        None
    };

    let mut idx = vec![0usize; s];
    loop {
        if idx.iter().any(|&i| i != 0) {
            let mut v = vec![Rat::zero(); basis[0].len()];
            for (b, &i) in basis.iter().zip(&idx) {
                if digits[i] != 0 {
                    let c = crate::rat::rat_i64(digits[i]);
                    for (acc, x) in v.iter_mut().zip(b) {
                        *acc += x * &c;
                    }
                }
            }
            if !v.iter().all(|c| c.is_zero()) {
                if let Some(g) = consider(kernel_to_poly(&v), &mut first) {
                    return Some(g);
                }
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == s {
                // sweep done; fall through to random phase
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..64 {
                    let mut v = vec![Rat::zero(); basis[0].len()];
                    for b in basis.iter() {
                        let c = crate::rat::rat_i64(rng.gen_range(-9..=9));
                        for (acc, x) in v.iter_mut().zip(b) {
                            *acc += x * &c;
                        }
                    }
                    if v.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    if let Some(g) = consider(kernel_to_poly(&v), &mut first) {
                        return Some(g);
                    }
                }
                return first;
            }
            idx[pos] += 1;
            if idx[pos] < digits.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Sylvester dichotomy: rank is k0 when a squarefree apolar form of
/// degree k0 exists, otherwise D - k0 + 2.
pub fn binary_rank(f: &BinaryFormDivided, seed: u64) -> Result<RankCertificate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.degree();
    let k0 = border_rank_binary(f)?;
    if let Some(g) = squarefree_in_span(&kernel_at(f, k0)?, seed) {
        return Ok(RankCertificate {
            border_rank: k0,
            rank: k0,
            apolar: g,
            squarefree: true,
            branch: Branch::Generic,
        });
    }
    let r = d - k0 + 2;
    if r > d {
        return Err(Error::BudgetExhausted(format!(
            "no squarefree apolar form at border rank {k0} and no exceptional level"
        )));
    }
    match squarefree_in_span(&kernel_at(f, r)?, seed ^ 0x9e37_79b9) {
        Some(g) => Ok(RankCertificate {
            border_rank: k0,
            rank: r,
            apolar: g,
            squarefree: true,
            branch: Branch::Exceptional,
        }),
        None => Err(Error::BudgetExhausted(format!(
            "squarefree search failed at both rank levels {k0} and {r}"
        ))),
    }
}

/// Exact decomposition attempt from a rationally-split apolar form.
fn decompose_exact(
    f: &BinaryFormDivided,
    pts: &[(Rat, Rat)],
) -> Result<Option<Decomposition>> {
    let d = f.degree();
    let cols: Vec<Vec<Rat>> = pts
        .iter()
        .map(|(a, b)| veronese_point(&[a.clone(), b.clone()], d))
        .collect::<Result<_>>()?;
    let a = Mat::from_cols(cols);
    let Some(lambda) = a.solve(f.a())? else {
        return Ok(None);
    };
    let terms: Vec<DecompTerm> = lambda
        .iter()
        .zip(pts)
        .filter(|(l, _)| !l.is_zero())
        .map(|(l, (pa, pb))| DecompTerm {
            coeff: Scalar::Exact(l.clone()),
            linear: LinearForm::Exact(vec![pa.clone(), pb.clone()]),
        })
        .collect();
    if terms.is_empty() {
        return Ok(None);
    }
    Ok(Some(Decomposition::new(d, terms)?))
}

/// Complex least squares via normal equations, Gaussian elimination with
/// partial pivoting.
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

fn decompose_numeric(
    f: &BinaryFormDivided,
    g: &BinaryPoly,
    prec: u32,
) -> Result<Decomposition> {
    let d = f.degree();
    let roots = binary_roots(g, prec)?;
    let mut cols = Vec::new();
    let mut lins = Vec::new();
    for r in &roots {
        // squarefree certificate: multiplicities are 1
        debug_assert_eq!(r.multiplicity, 1);
        let mut col = Vec::with_capacity(d + 1);
        let mut apow = vec![BigComplex::from_f64(1.0, 0.0, prec)];
        let mut bpow = vec![BigComplex::from_f64(1.0, 0.0, prec)];
        for i in 1..=d {
            apow.push(apow[i - 1].mul(&r.alpha));
            bpow.push(bpow[i - 1].mul(&r.beta));
        }
        for i in 0..=d {
            col.push(apow[d - i].mul(&bpow[i]));
        }
        cols.push(col);
        lins.push(vec![r.alpha.clone(), r.beta.clone()]);
    }
    let b: Vec<BigComplex> = f.a().iter().map(|c| BigComplex::from_rat(c, prec)).collect();
    let lambda = lstsq(&cols, &b, prec);
    let terms: Vec<DecompTerm> = lambda
        .into_iter()
        .zip(lins)
        .map(|(l, lin)| DecompTerm { coeff: Scalar::Numeric(l), linear: LinearForm::Numeric(lin) })
        .collect();
    Decomposition::new(d, terms)
}

fn reversed(g: &BinaryPoly) -> BinaryPoly {
    let mut coeffs = g.coeffs().to_vec();
    coeffs.reverse();
    BinaryPoly::new(g.degree(), coeffs).expect("consistent shape")
}

/// Decomposition of length `binary_rank(f).rank`, exact when the apolar
/// form splits over the rationals, numeric at the given precision
/// otherwise (with precision-doubling retries).
pub fn binary_decompose(
    f: &BinaryFormDivided,
    precision: u32,
    seed: u64,
) -> Result<(Decomposition, RankCertificate, Residual)> {
    let cert = binary_rank(f, seed)?;
    let target = f.to_form();
    let tol = -((precision / 2) as i32);

    // rational fast path; the reversed-coefficient convention is kept as
    // a safety net although the primary orientation is the derived one
    for g in [cert.apolar.clone(), reversed(&cert.apolar)] {
        if let Some(pts) = rational_roots(&g)? {
            let flat: Vec<(Rat, Rat)> = pts.iter().map(|(p, _)| p.clone()).collect();
            if let Some(dec) = decompose_exact(f, &flat)? {
                let (ok, res) = verify_decomposition(&target, &dec, None)?;
                if ok {
                    return Ok((dec, cert, res));
                }
            }
        }
    }

    let mut work = precision;
    let cap = precision.saturating_mul(8);
    let mut last_res = String::new();
    loop {
        for g in [cert.apolar.clone(), reversed(&cert.apolar)] {
            let dec = decompose_numeric(f, &g, work)?;
            let (ok, res) = verify_decomposition(&target, &dec, Some(tol))?;
            if ok {
                return Ok((dec, cert, res));
            }
            last_res = res.display();
        }
        if work >= cap {
            return Err(Error::PrecisionExhausted { bits: work, residual: last_res });
        }
        work *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{expand_powersum, ExpandedForm, Form};
    use crate::rat::{rat, rat_i64};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn divided(raw: &[i64], _d: usize) -> BinaryFormDivided {
        let f = Form::from_raw_vector(
            2,
            raw.len() - 1,
            &raw.iter().map(|&c| rat_i64(c)).collect::<Vec<_>>(),
        )
        .unwrap();
        BinaryFormDivided::from_form(&f).unwrap()
    }

    #[test]
    fn border_rank_examples() {
        // x^D -> 1
        for d in 2..=6 {
            let mut raw = vec![0i64; d + 1];
            raw[0] = 1;
            assert_eq!(border_rank_binary(&divided(&raw, d)).unwrap(), 1);
        }
        // x^3 y -> 2
        assert_eq!(border_rank_binary(&divided(&[0, 1, 0, 0, 0], 4)).unwrap(), 2);
        // generic D=4 forms -> 3
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let raw: Vec<i64> = (0..5).map(|_| rng.gen_range(-20..=20)).collect();
            if raw.iter().all(|&c| c == 0) {
                continue;
            }
            assert_eq!(border_rank_binary(&divided(&raw, 4)).unwrap(), 3);
        }
    }

    #[test]
    fn rank_anchor_cases() {
        // x^D -> 1
        let c = binary_rank(&divided(&[1, 0, 0, 0, 0], 4), 1).unwrap();
        assert_eq!(c.rank, 1);
        assert_eq!(c.branch, Branch::Generic);

        // x^3 y -> 4 (exceptional: D - k0 + 2 with k0 = 2)
        let c = binary_rank(&divided(&[0, 1, 0, 0, 0], 4), 1).unwrap();
        assert_eq!(c.border_rank, 2);
        assert_eq!(c.rank, 4);
        assert_eq!(c.branch, Branch::Exceptional);
        assert!(squarefree_check(&c.apolar).unwrap().0);

        // x^2 y^2 -> 3 with g in span{X^3, Y^3}
        let c = binary_rank(&divided(&[0, 0, 1, 0, 0], 4), 1).unwrap();
        assert_eq!(c.rank, 3);
        assert_eq!(c.branch, Branch::Generic);
        let g = &c.apolar;
        assert!(squarefree_check(g).unwrap().0);
        assert!(g.coeffs()[1].is_zero() && g.coeffs()[2].is_zero());
    }

    #[test]
    fn apolar_certificate_is_exact() {
        // the certificate's coefficient vector lies in the catalecticant kernel
        let f = divided(&[3, -2, 0, 1, 5, -1], 5);
        let c = binary_rank(&f, 7).unwrap();
        let cat = catalecticant_binary(&f, c.rank).unwrap();
        let img = cat.mul_vec(c.apolar.coeffs()).unwrap();
        assert!(img.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn dichotomy_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for d in 3..=8usize {
            for _ in 0..15 {
                let raw: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
                if raw.iter().all(|&c| c == 0) {
                    continue;
                }
                let f = divided(&raw, d);
                let k0 = border_rank_binary(&f).unwrap();
                let c = binary_rank(&f, 3).unwrap();
                assert!(c.rank == k0 || c.rank == d - k0 + 2);
                // scale invariance
                let scaled =
                    BinaryFormDivided::new(f.a().iter().map(|x| x * rat(3, 7)).collect()).unwrap();
                assert_eq!(binary_rank(&scaled, 3).unwrap().rank, c.rank);
            }
        }
    }

    #[test]
    fn decompose_sum_of_cubes() {
        let f = divided(&[1, 0, 0, 1], 3);
        let (dec, cert, res) = binary_decompose(&f, 128, 1).unwrap();
        assert_eq!(cert.rank, 2);
        assert_eq!(dec.len(), 2);
        assert!(dec.exact);
        assert!(res.is_zero());
    }

    #[test]
    fn decompose_xy() {
        let f = divided(&[0, 1, 0], 2);
        let (dec, cert, res) = binary_decompose(&f, 128, 1).unwrap();
        assert_eq!(cert.rank, 2);
        assert_eq!(dec.len(), 2);
        // exact or numeric, the expansion must match xy
        if dec.exact {
            assert!(res.is_zero());
            let ExpandedForm::Exact(e) = expand_powersum(&dec).unwrap() else { panic!() };
            assert_eq!(e, Form::monomial(2, vec![1, 1]));
        } else {
            assert!(res.within_pow2(-64));
        }
    }

    #[test]
    fn decompose_x3y_numeric() {
        let f = divided(&[0, 1, 0, 0, 0], 4);
        let (dec, cert, res) = binary_decompose(&f, 256, 1).unwrap();
        assert_eq!(cert.rank, 4);
        assert_eq!(dec.len(), 4);
        assert!(res.within_pow2(-128));
    }

    #[test]
    fn roundtrip_recovers_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let d = rng.gen_range(4..=9usize);
            let r = rng.gen_range(1..=(d + 1) / 2);
            // r distinct rational points, nonzero coefficients
            let mut ts: Vec<i64> = Vec::new();
            while ts.len() < r {
                let t = rng.gen_range(-8..=8);
                if !ts.contains(&t) {
                    ts.push(t);
                }
            }
            let mut a = vec![Rat::zero(); d + 1];
            for &t in &ts {
                let lam = rat_i64(rng.gen_range(1..=5));
                let p = veronese_point(&[rat_i64(1), rat_i64(t)], d).unwrap();
                for (acc, x) in a.iter_mut().zip(&p) {
                    *acc += &lam * x;
                }
            }
            let f = BinaryFormDivided::new(a).unwrap();
            let c = binary_rank(&f, 17).unwrap();
            assert_eq!(c.rank, r, "degree {d} rank {r}");
        }
    }

    #[test]
    fn zero_rejected() {
        let z = BinaryFormDivided::new(vec![Rat::zero(); 4]).unwrap();
        assert!(matches!(border_rank_binary(&z), Err(Error::ZeroPolynomial)));
        assert!(matches!(binary_rank(&z, 1), Err(Error::ZeroPolynomial)));
    }
}
