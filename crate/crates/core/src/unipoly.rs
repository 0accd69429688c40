//! Dense univariate polynomials over `Rat`, ascending coefficient order.
//!
//! Internal substrate shared by the binary-form, factorization and
//! root-finding code. The zero polynomial is the empty vector.

use num_traits::{One, Zero};

use crate::rat::{rat_i64, Rat};

pub type UniPoly = Vec<Rat>;

pub fn trim(p: &mut UniPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn trimmed(mut p: UniPoly) -> UniPoly {
    trim(&mut p);
    p
}

pub fn is_zero(p: &UniPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &UniPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trimmed(out)
}

pub fn sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trimmed(out)
}

pub fn mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if is_zero(a) || is_zero(b) {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trimmed(out)
}

pub fn scale(a: &UniPoly, s: &Rat) -> UniPoly {
    trimmed(a.iter().map(|c| c * s).collect())
}

/// Euclidean division; panics on division by zero.
pub fn divrem(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut rem = trimmed(a.clone());
    let mut quot = vec![Rat::zero(); rem.len().saturating_sub(db)];
    let lead = b[db].clone();
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        for (j, bc) in b.iter().enumerate().take(db + 1) {
            let t = bc * &c;
            rem[shift + j] -= t;
        }
        trim(&mut rem);
        quot[shift] = c;
    }
    (trimmed(quot), rem)
}

/// Exact quotient; `None` if the division leaves a remainder.
pub fn div_exact(a: &UniPoly, b: &UniPoly) -> Option<UniPoly> {
    let (q, r) = divrem(a, b);
    if is_zero(&r) {
        Some(q)
    } else {
        None
    }
}

pub fn monic(p: &UniPoly) -> UniPoly {
    match degree(p) {
        None => vec![],
        Some(d) => {
            let inv = Rat::one() / &p[d];
            scale(p, &inv)
        }
    }
}

/// Monic gcd via the Euclidean algorithm.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut x = trimmed(a.clone());
    let mut y = trimmed(b.clone());
    while !is_zero(&y) {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

pub fn derivative(p: &UniPoly) -> UniPoly {
    if p.len() <= 1 {
        return vec![];
    }
    trimmed(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_i64(i as i64))
            .collect(),
    )
}

pub fn eval(p: &UniPoly, t: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

/// Taylor shift: returns `p(t + a)`.
pub fn shift(p: &UniPoly, a: &Rat) -> UniPoly {
    // Horner on p(t) with t := (t + a)
    let mut acc: UniPoly = vec![];
    let lin = vec![a.clone(), Rat::one()];
    for c in p.iter().rev() {
        acc = mul(&acc, &lin);
        if acc.is_empty() {
            acc = vec![c.clone()];
        } else {
            acc[0] += c;
        }
        trim(&mut acc);
    }
    acc
}

/// Yun's squarefree decomposition: returns `[(g_i, i)]` with
/// `p = lc * prod g_i^i`, each `g_i` monic squarefree, pairwise coprime.
pub fn squarefree_decomposition(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let Some(d) = degree(p) else {
        return vec![];
    };
    if d == 0 {
        return vec![];
    }
    let f = monic(p);
    let fp = derivative(&f);
    let a0 = gcd(&f, &fp);
    if degree(&a0) == Some(0) {
        return vec![(f, 1)];
    }
    let mut out = Vec::new();
    let mut b = div_exact(&f, &a0).unwrap();
    let mut c = div_exact(&fp, &a0).unwrap();
    let mut d_ = sub(&c, &derivative(&b));
    let mut i = 1usize;
    while degree(&b).is_some_and(|x| x > 0) {
        let g = gcd(&b, &d_);
        if degree(&g).is_some_and(|x| x > 0) {
            out.push((g.clone(), i));
        }
        b = div_exact(&b, &g).unwrap();
        c = div_exact(&d_, &g).unwrap();
        d_ = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(coeffs: &[i64]) -> UniPoly {
        trimmed(coeffs.iter().map(|&c| rat_i64(c)).collect())
    }

    #[test]
    fn divrem_exact() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let (q, r) = divrem(&p(&[-1, 0, 1]), &p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1]));
        assert!(is_zero(&r));
    }

    #[test]
    fn gcd_of_multiples() {
        let g = gcd(&mul(&p(&[1, 1]), &p(&[2, 1])), &mul(&p(&[1, 1]), &p(&[3, 1])));
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn taylor_shift() {
        // (t+1)^2 = t^2 + 2t + 1
        let s = shift(&p(&[0, 0, 1]), &rat_i64(1));
        assert_eq!(s, p(&[1, 2, 1]));
        assert_eq!(eval(&shift(&p(&[3, -2, 5]), &rat(1, 2)), &rat_i64(0)), eval(&p(&[3, -2, 5]), &rat(1, 2)));
    }

    #[test]
    fn yun_decomposition() {
        // t^2 (t+1)^3
        let f = mul(&p(&[0, 0, 1]), &mul(&p(&[1, 1]), &mul(&p(&[1, 1]), &p(&[1, 1]))));
        let sq = squarefree_decomposition(&f);
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0], (p(&[0, 1]), 2));
        assert_eq!(sq[1], (p(&[1, 1]), 3));
    }

    use super::rat_i64;

    #[test]
    fn squarefree_of_squarefree() {
        let f = p(&[6, 5, 1]); // (t+2)(t+3)
        let sq = squarefree_decomposition(&f);
        assert_eq!(sq.len(), 1);
        assert_eq!(sq[0].1, 1);
    }
}
