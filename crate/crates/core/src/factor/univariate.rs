//! Exact factorization of univariate polynomials over the rationals.
//!
//! Big-prime Zassenhaus: Yun squarefree decomposition, one factorization
//! modulo a prime exceeding twice the Mignotte bound, then subset
//! recombination with trial division over the integers. No Hensel
//! lifting is needed at the degrees this crate handles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{clear_denominators, Rat};
use crate::unipoly::{self, UniPoly};

use super::zmodp;

/// Irreducible factors of `p` over Q, with multiplicities.
///
/// Factors are primitive with integer coefficients and positive leading
/// coefficient; the product of `factor^mult` equals `p` up to a nonzero
/// rational scalar. Constants factor to the empty list.
pub fn factor_unipoly(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let Some(d) = unipoly::degree(p) else {
        return vec![];
    };
    if d == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for (part, mult) in unipoly::squarefree_decomposition(p) {
        let f = to_primitive_int(&part);
        for g in factor_squarefree_int(&f) {
            out.push((from_int(&g), mult));
        }
    }
    // deterministic order: by degree then coefficients
    out.sort_by(|a, b| {
        a.0.len()
            .cmp(&b.0.len())
            .then_with(|| format!("{:?}", a.0).cmp(&format!("{:?}", b.0)))
    });
    out
}

/// True iff `p` is irreducible over Q (degree >= 1 required).
pub fn is_irreducible_unipoly(p: &UniPoly) -> bool {
    let fs = factor_unipoly(p);
    fs.len() == 1 && fs[0].1 == 1 && unipoly::degree(&fs[0].0) == unipoly::degree(p)
}

fn to_primitive_int(p: &UniPoly) -> Vec<BigInt> {
    let ints = clear_denominators(p);
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return vec![];
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    ints.iter().map(|c| c / &g).collect()
}

fn from_int(p: &[BigInt]) -> UniPoly {
    p.iter().map(|c| Rat::from_integer(c.clone())).collect()
}

/// Factors a primitive squarefree integer polynomial into primitive
/// irreducible integer polynomials (positive leading coefficients).
fn factor_squarefree_int(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    // Mignotte-style bound on coefficients of lc * (any monic factor image)
    let height: BigInt = f.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt =
        (BigInt::one() << (n + 1)) * BigInt::from(n as u64 + 1) * &height * lc.abs();

    // prime > 2*bound with good reduction
    let mut p = zmodp::next_prime(&(&bound * 2 + 1));
    let modular = loop {
        if !(&lc % &p).is_zero() {
            let fm = zmodp::norm(f.to_vec(), &p);
            let dfm = zmodp::derivative(&fm, &p);
            let g = zmodp::gcd(&fm, &dfm, &p);
            if zmodp::deg(&g) == Some(0) {
                let monic_f = zmodp::monic(&fm, &p);
                break zmodp::factor_squarefree_monic(&monic_f, &p, 0x5a55);
            }
        }
        p = zmodp::next_prime(&(&p + 2));
    };

    // subset recombination with trial division over Z
    let mut remaining = f.to_vec();
    let mut pool: Vec<zmodp::PolyZp> = modular;
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while !pool.is_empty() {
        let lc_now = remaining.last().unwrap().clone();
        if size > pool.len() {
            out.push(remaining.clone());
            pool.clear();
            break;
        }
        for combo in super::univariate_combinations(pool.len(), size) {
            let mut prod = vec![lc_now.mod_floor(&p)];
            for &i in &combo {
                prod = zmodp::mul(&prod, &pool[i], &p);
            }
            let candidate = primitive_symmetric(&prod, &p);
            if candidate.len() < 2 {
                continue;
            }
            if let Some(q) = div_exact_int(&remaining, &candidate) {
                out.push(normalize_sign(candidate));
                remaining = q;
                for &i in combo.iter().rev() {
                    pool.remove(i);
                }
                if remaining.len() <= 1 {
                    pool.clear();
                }
                size = 1;
                continue 'outer;
            }
        }
        size += 1;
    }
    if remaining.len() > 1 {
        out.push(normalize_sign(remaining));
    }
    out
}

fn normalize_sign(mut f: Vec<BigInt>) -> Vec<BigInt> {
    if f.last().is_some_and(|c| c.is_negative()) {
        for c in f.iter_mut() {
            *c = -c.clone();
        }
    }
    f
}

fn primitive_symmetric(prod: &zmodp::PolyZp, p: &BigInt) -> Vec<BigInt> {
    let sym: Vec<BigInt> = prod.iter().map(|c| zmodp::symmetric(c, p)).collect();
    let mut g = BigInt::zero();
    for c in &sym {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return vec![];
    }
    sym.iter().map(|c| c / &g).collect()
}

/// Exact division of integer polynomials; `None` on failure.
fn div_exact_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.is_empty() {
        return None;
    }
    let db = b.len() - 1;
    let mut rem: Vec<BigInt> = a.to_vec();
    if rem.len() < b.len() {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    let lead = b[db].clone();
    loop {
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        if rem.len() < b.len() {
            break;
        }
        let dr = rem.len() - 1;
        let (c, r) = rem[dr].div_rem(&lead);
        if !r.is_zero() {
            return None;
        }
        let shift = dr - db;
        for j in 0..=db {
            let t = &b[j] * &c;
            rem[shift + j] -= t;
        }
        quot[shift] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}
