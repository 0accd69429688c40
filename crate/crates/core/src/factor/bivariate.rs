//! Bivariate factorization over the rationals via Kronecker substitution.
//!
//! A factor `g(x, y)` of `f` satisfies `deg_x g <= deg_x f`, so the
//! substitution `y -> x^D` with `D = deg_x f + 1` is injective on the
//! monomials of every factor: the univariate image determines the factor
//! exactly. We factor the image over Q and recombine sub-multisets with
//! exact bivariate trial division. Also hosts the mod-p irreducibility
//! probe used as heuristic evidence of absolute irreducibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;
use crate::unipoly::{self, UniPoly};

use super::univariate::factor_unipoly;
use super::zmodp;

/// Dense bivariate polynomial: index = power of x, entry = coefficient
/// polynomial in y (ascending). Normalized: no trailing zero entries.
pub type BiPoly = Vec<UniPoly>;

pub fn bi_trim(f: &mut BiPoly) {
    for c in f.iter_mut() {
        unipoly::trim(c);
    }
    while f.last().is_some_and(|c| unipoly::is_zero(c)) {
        f.pop();
    }
}

pub fn bi_is_zero(f: &BiPoly) -> bool {
    f.iter().all(unipoly::is_zero)
}

pub fn bi_deg_x(f: &BiPoly) -> Option<usize> {
    f.iter().rposition(|c| !unipoly::is_zero(c))
}

pub fn bi_deg_y(f: &BiPoly) -> Option<usize> {
    f.iter().filter_map(unipoly::degree).max()
}

pub fn bi_total_degree(f: &BiPoly) -> Option<usize> {
    f.iter()
        .enumerate()
        .filter_map(|(i, c)| unipoly::degree(c).map(|d| i + d))
        .max()
}

pub fn bi_mul(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if bi_is_zero(a) || bi_is_zero(b) {
        return vec![];
    }
    let mut out: BiPoly = vec![vec![]; a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            let prod = unipoly::mul(ca, cb);
            out[i + j] = unipoly::add(&out[i + j], &prod);
        }
    }
    bi_trim(&mut out);
    out
}

/// Exact division in Q[x,y], viewing both as polynomials in x over Q[y].
pub fn bi_div_exact(a: &BiPoly, b: &BiPoly) -> Option<BiPoly> {
    let db = bi_deg_x(b)?;
    let lead = &b[db];
    let mut rem = a.clone();
    bi_trim(&mut rem);
    let mut quot: BiPoly = vec![vec![]; rem.len().saturating_sub(db)];
    loop {
        bi_trim(&mut rem);
        let Some(dr) = bi_deg_x(&rem) else {
            break;
        };
        if dr < db {
            return None;
        }
        let c = unipoly::div_exact(&rem[dr], lead)?;
        let shift = dr - db;
        for j in 0..=db {
            let t = unipoly::mul(&b[j], &c);
            rem[shift + j] = unipoly::sub(&rem[shift + j], &t);
        }
        quot[shift] = c;
    }
    Some(quot)
}

/// Kronecker image `f(t, t^D)`.
fn kronecker(f: &BiPoly, d_sub: usize) -> UniPoly {
    let mut out: UniPoly = vec![];
    for (a, cy) in f.iter().enumerate() {
        for (b, c) in cy.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = a + d_sub * b;
            if out.len() <= e {
                out.resize(e + 1, Rat::zero());
            }
            out[e] += c;
        }
    }
    unipoly::trimmed(out)
}

/// Inverse Kronecker: exponent `e -> x^(e mod D) y^(e div D)`.
fn unkronecker(u: &UniPoly, d_sub: usize) -> BiPoly {
    let mut out: BiPoly = vec![];
    for (e, c) in u.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (a, b) = (e % d_sub, e / d_sub);
        if out.len() <= a {
            out.resize(a + 1, vec![]);
        }
        if out[a].len() <= b {
            out[a].resize(b + 1, Rat::zero());
        }
        out[a][b] = c.clone();
    }
    bi_trim(&mut out);
    out
}

/// Monomial content (min power of x, min power of y) of a nonzero f.
fn monomial_content(f: &BiPoly) -> (usize, usize) {
    let xmin = f.iter().position(|c| !unipoly::is_zero(c)).unwrap();
    let ymin = f
        .iter()
        .filter_map(|c| c.iter().position(|v| !v.is_zero()))
        .min()
        .unwrap();
    (xmin, ymin)
}

fn strip_monomials(f: &BiPoly, xmin: usize, ymin: usize) -> BiPoly {
    let mut out: BiPoly = f[xmin..]
        .iter()
        .map(|c| {
            if c.len() <= ymin {
                vec![]
            } else {
                c[ymin..].to_vec()
            }
        })
        .collect();
    bi_trim(&mut out);
    out
}

/// Normalizes a bivariate factor: integer coefficients, content 1,
/// positive leading coefficient in graded-lex order.
fn bi_primitive(f: &BiPoly) -> BiPoly {
    use crate::rat::clear_denominators;
    let flat: Vec<Rat> = f.iter().flat_map(|c| c.iter().cloned()).collect();
    if flat.is_empty() {
        return f.clone();
    }
    let ints = clear_denominators(&flat);
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return f.clone();
    }
    // sign from the highest graded-lex term (largest x-power at top total degree)
    let mut scaled: BiPoly = Vec::with_capacity(f.len());
    let mut it = ints.into_iter();
    for c in f {
        scaled.push(c.iter().map(|_| Rat::from_integer(it.next().unwrap() / &g)).collect());
    }
    let td = bi_total_degree(&scaled).unwrap_or(0);
    let lead_sign_neg = scaled
        .iter()
        .enumerate()
        .rev()
        .find_map(|(i, c)| {
            c.iter()
                .enumerate()
                .find(|(j, v)| i + *j == td && !v.is_zero())
                .map(|(_, v)| v.is_negative())
        })
        .unwrap_or(false);
    if lead_sign_neg {
        for c in scaled.iter_mut() {
            for v in c.iter_mut() {
                *v = -v.clone();
            }
        }
    }
    bi_trim(&mut scaled);
    scaled
}

/// Irreducible factorization of a nonzero `f` in Q[x,y], up to a rational
/// scalar, multiplicities included. Monomial factors come out as `x`, `y`.
pub fn factor_bipoly(f: &BiPoly) -> Vec<(BiPoly, usize)> {
    assert!(!bi_is_zero(f), "zero polynomial");
    let mut out: Vec<(BiPoly, usize)> = Vec::new();
    let (xmin, ymin) = monomial_content(f);
    if xmin > 0 {
        out.push((vec![vec![], vec![Rat::one()]], xmin)); // x
    }
    if ymin > 0 {
        out.push((vec![vec![Rat::zero(), Rat::one()]], ymin)); // y
    }
    let mut rest = strip_monomials(f, xmin, ymin);
    if bi_total_degree(&rest).unwrap_or(0) == 0 {
        return out;
    }
    let d_sub = bi_deg_x(&rest).unwrap() + 1;
    let image = kronecker(&rest, d_sub);
    // expand univariate factors into a multiset
    let mut pool: Vec<UniPoly> = Vec::new();
    for (g, m) in factor_unipoly(&image) {
        for _ in 0..m {
            pool.push(g.clone());
        }
    }
    let mut size = 1usize;
    while !pool.is_empty() {
        if bi_total_degree(&rest).unwrap_or(0) == 0 {
            break;
        }
        if size >= pool.len() {
            // remaining product is the last irreducible factor
            let g = bi_primitive(&rest);
            let m = divide_out(&mut rest, &g);
            out.push((g, m));
            pool.clear();
            break;
        }
        let mut advanced = true;
        'combos: for combo in super::univariate_combinations(pool.len(), size) {
            let mut prod: UniPoly = vec![Rat::one()];
            for &i in &combo {
                prod = unipoly::mul(&prod, &pool[i]);
            }
            let candidate = bi_primitive(&unkronecker(&prod, d_sub));
            if bi_total_degree(&candidate).unwrap_or(0) == 0 {
                continue;
            }
            if bi_div_exact(&rest, &candidate).is_some() {
                let m = divide_out(&mut rest, &candidate);
                out.push((candidate, m));
                // remove m copies of the subset from the pool
                let values: Vec<UniPoly> = combo.iter().map(|&i| pool[i].clone()).collect();
                for _ in 0..m {
                    for v in &values {
                        if let Some(pos) = pool.iter().position(|w| w == v) {
                            pool.remove(pos);
                        }
                    }
                }
                advanced = false;
                break 'combos;
            }
        }
        if advanced {
            size += 1;
        } else {
            size = 1;
        }
    }
    if bi_total_degree(&rest).unwrap_or(0) > 0 {
        out.push((bi_primitive(&rest), 1));
    }
    out
}

/// Divides `rest` by `g` as many times as possible; returns the count.
fn divide_out(rest: &mut BiPoly, g: &BiPoly) -> usize {
    let mut m = 0;
    while let Some(q) = bi_div_exact(rest, g) {
        *rest = q;
        m += 1;
    }
    m
}

/// Tests whether `f mod p` stays irreducible over F_p; `None` when the
/// reduction is degenerate (degree drop or not squarefree), i.e. the
/// probe is inconclusive.
pub fn is_irreducible_mod_p(f: &BiPoly, p: &BigInt) -> Option<bool> {
    let dx = bi_deg_x(f)?;
    let d_sub = dx + 1;
    // reduce integer image mod p
    let prim = bi_primitive(f);
    if bi_deg_x(&prim) != Some(dx) {
        return None;
    }
    let fp: Vec<zmodp::PolyZp> = prim
        .iter()
        .map(|c| zmodp::norm(c.iter().map(|v| v.numer().clone()).collect(), p))
        .collect();
    if fp.iter().rposition(|c| !c.is_empty()) != Some(dx) {
        return None;
    }
    if total_degree_zp(&fp) != bi_total_degree(&prim) {
        return None;
    }
    // Kronecker image mod p must stay squarefree for the count to be clean
    let mut image: zmodp::PolyZp = vec![];
    for (a, cy) in fp.iter().enumerate() {
        for (b, c) in cy.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = a + d_sub * b;
            if image.len() <= e {
                image.resize(e + 1, BigInt::zero());
            }
            image[e] += c;
        }
    }
    let image = zmodp::norm(image, p);
    let d_im = zmodp::deg(&image)?;
    if d_im == 0 {
        return None;
    }
    if BigInt::from(d_im) >= *p {
        return None;
    }
    let monic = zmodp::monic(&image, p);
    let mut parts: Vec<zmodp::PolyZp> = Vec::new();
    for (sf, mult) in zmodp::squarefree_decomposition_zp(&monic, p) {
        for q in zmodp::factor_squarefree_monic(&sf, p, 0x9e37) {
            for _ in 0..mult {
                parts.push(q.clone());
            }
        }
    }
    // recombine: any proper sub-multiset giving a true bivariate divisor
    // mod p witnesses reducibility
    for size in 1..parts.len() {
        for combo in super::univariate_combinations(parts.len(), size) {
            let mut prod = vec![BigInt::one()];
            for &i in &combo {
                prod = zmodp::mul(&prod, &parts[i], p);
            }
            let cand = unkronecker_zp(&prod, d_sub);
            if bi_div_exact_zp(&fp, &cand, p).is_some() {
                return Some(false);
            }
        }
    }
    Some(true)
}

fn total_degree_zp(f: &[zmodp::PolyZp]) -> Option<usize> {
    f.iter()
        .enumerate()
        .filter_map(|(i, c)| zmodp::deg(c).map(|d| i + d))
        .max()
}

fn unkronecker_zp(u: &zmodp::PolyZp, d_sub: usize) -> Vec<zmodp::PolyZp> {
    let mut out: Vec<zmodp::PolyZp> = vec![];
    for (e, c) in u.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (a, b) = (e % d_sub, e / d_sub);
        if out.len() <= a {
            out.resize(a + 1, vec![]);
        }
        if out[a].len() <= b {
            out[a].resize(b + 1, BigInt::zero());
        }
        out[a][b] = c.clone();
    }
    out
}

fn bi_div_exact_zp(
    a: &[zmodp::PolyZp],
    b: &[zmodp::PolyZp],
    p: &BigInt,
) -> Option<Vec<zmodp::PolyZp>> {
    let db = b.iter().rposition(|c| !c.is_empty())?;
    let lead = &b[db];
    let mut rem: Vec<zmodp::PolyZp> = a.to_vec();
    loop {
        while rem.last().is_some_and(|c| c.is_empty()) {
            rem.pop();
        }
        let Some(dr) = rem.iter().rposition(|c| !c.is_empty()) else {
            break;
        };
        if dr < db {
            return None;
        }
        // coefficient division in F_p[y]
        let (q, r) = poly_divrem_zp(&rem[dr], lead, p);
        if !r.is_empty() {
            return None;
        }
        let shift = dr - db;
        for j in 0..=db {
            let t = zmodp::mul(&b[j], &q, p);
            rem[shift + j] = zmodp::sub(&rem[shift + j], &t, p);
        }
        rem.truncate(dr);
    }
    Some(vec![])
}

fn poly_divrem_zp(a: &zmodp::PolyZp, b: &zmodp::PolyZp, p: &BigInt) -> (zmodp::PolyZp, zmodp::PolyZp) {
    zmodp::divrem(a, b, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i64;

    fn bp(rows: &[&[i64]]) -> BiPoly {
        // rows[a][b] = coeff of x^a y^b
        let mut out: BiPoly = rows
            .iter()
            .map(|r| r.iter().map(|&c| rat_i64(c)).collect())
            .collect();
        bi_trim(&mut out);
        out
    }

    fn check_product(f: &BiPoly, factors: &[(BiPoly, usize)]) {
        let mut prod: BiPoly = vec![vec![rat_i64(1)]];
        for (g, m) in factors {
            for _ in 0..*m {
                prod = bi_mul(&prod, g);
            }
        }
        // proportional check
        let q = bi_div_exact(f, &prod).expect("product must divide input");
        assert_eq!(bi_total_degree(&q), Some(0));
    }

    #[test]
    fn splits_difference_of_squares() {
        // x^2 - y^2
        let f = bp(&[&[0, 0, -1], &[], &[1]]);
        let fs = factor_bipoly(&f);
        assert_eq!(fs.len(), 2);
        check_product(&f, &fs);
    }

    #[test]
    fn irreducible_parabola() {
        // x - y^2 (dehomogenized xz - y^2)
        let f = bp(&[&[0, 0, -1], &[1]]);
        let fs = factor_bipoly(&f);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].1, 1);
    }

    #[test]
    fn monomial_and_curve() {
        // x (x - y^2)
        let f = bi_mul(&bp(&[&[], &[1]]), &bp(&[&[0, 0, -1], &[1]]));
        let fs = factor_bipoly(&f);
        assert_eq!(fs.len(), 2);
        check_product(&f, &fs);
    }

    #[test]
    fn square_multiplicity() {
        // (x + y)^2 (x - y)
        let lin1 = bp(&[&[0, 1], &[1]]);
        let lin2 = bp(&[&[0, -1], &[1]]);
        let f = bi_mul(&bi_mul(&lin1, &lin1), &lin2);
        let fs = factor_bipoly(&f);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().any(|(_, m)| *m == 2));
        check_product(&f, &fs);
    }

    #[test]
    fn univariate_in_y_content() {
        // (y^2 + 1)(x + y)
        let f = bi_mul(&bp(&[&[1, 0, 1]]), &bp(&[&[0, 1], &[1]]));
        let fs = factor_bipoly(&f);
        assert_eq!(fs.len(), 2);
        check_product(&f, &fs);
    }

    #[test]
    fn modp_probe() {
        use super::super::zmodp::big;
        // x - y^2 irreducible mod 101
        let f = bp(&[&[0, 0, -1], &[1]]);
        assert_eq!(is_irreducible_mod_p(&f, &big(101)), Some(true));
        // x^2 - y^2 reducible mod 101
        let g = bp(&[&[0, 0, -1], &[], &[1]]);
        assert_eq!(is_irreducible_mod_p(&g, &big(101)), Some(false));
    }
}
