//! Univariate polynomial arithmetic over Z/p and Cantor--Zassenhaus
//! factorization. The prime is carried as a `BigInt` so the same code
//! serves both the small primes of the mod-p probes and the single big
//! prime of the Zassenhaus factorization over the integers.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Coefficients ascending, reduced into [0, p); no trailing zeros.
pub type PolyZp = Vec<BigInt>;

pub fn norm(mut f: PolyZp, p: &BigInt) -> PolyZp {
    for c in f.iter_mut() {
        *c = c.mod_floor(p);
    }
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

pub fn deg(f: &PolyZp) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn mul(a: &PolyZp, b: &PolyZp, p: &BigInt) -> PolyZp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    norm(out, p)
}

pub fn sub(a: &PolyZp, b: &PolyZp, p: &BigInt) -> PolyZp {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    norm(out, p)
}

pub fn inv_mod(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    assert!(e.gcd.is_one(), "non-invertible element mod p");
    e.x.mod_floor(p)
}

pub fn divrem(a: &PolyZp, b: &PolyZp, p: &BigInt) -> (PolyZp, PolyZp) {
    let db = deg(b).expect("division by zero poly");
    let lead_inv = inv_mod(&b[db], p);
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(db)];
    while let Some(dr) = deg(&rem) {
        if dr < db {
            break;
        }
        let c = (&rem[dr] * &lead_inv).mod_floor(p);
        let shift = dr - db;
        for j in 0..=db {
            rem[shift + j] = (&rem[shift + j] - &c * &b[j]).mod_floor(p);
        }
        rem = norm(rem, p);
        quot[shift] = c;
    }
    (norm(quot, p), rem)
}

pub fn monic(f: &PolyZp, p: &BigInt) -> PolyZp {
    match deg(f) {
        None => vec![],
        Some(d) => {
            let inv = inv_mod(&f[d], p);
            norm(f.iter().map(|c| c * &inv).collect(), p)
        }
    }
}

pub fn gcd(a: &PolyZp, b: &PolyZp, p: &BigInt) -> PolyZp {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn derivative(f: &PolyZp, p: &BigInt) -> PolyZp {
    if f.len() <= 1 {
        return vec![];
    }
    norm(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
        p,
    )
}

/// `base^e mod (f, p)` by repeated squaring.
pub fn pow_mod(base: &PolyZp, e: &BigInt, f: &PolyZp, p: &BigInt) -> PolyZp {
    let mut result = vec![BigInt::one()];
    let mut b = divrem(base, f, p).1;
    let mut e = e.clone();
    while e.is_positive() {
        if e.is_odd() {
            result = divrem(&mul(&result, &b, p), f, p).1;
        }
        b = divrem(&mul(&b, &b, p), f, p).1;
        e >>= 1;
    }
    result
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial mod an odd prime. Deterministic for a fixed seed.
pub fn factor_squarefree_monic(f: &PolyZp, p: &BigInt, seed: u64) -> Vec<PolyZp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![BigInt::zero(), BigInt::one()];
    let mut h = x.clone();
    let mut d = 0usize;
    while let Some(df) = deg(&f) {
        if df == 0 {
            break;
        }
        d += 1;
        if 2 * d > df {
            out.push(f.clone());
            break;
        }
        h = pow_mod(&h, p, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g).is_some_and(|dg| dg > 0) {
            equal_degree_split(&g, d, p, &mut rng, &mut out);
            f = divrem(&f, &g, p).0;
            h = divrem(&h, &f, p).1;
        }
    }
    out
}

fn equal_degree_split(
    g: &PolyZp,
    d: usize,
    p: &BigInt,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<PolyZp>,
) {
    let dg = deg(g).unwrap();
    if dg == d {
        out.push(monic(g, p));
        return;
    }
    // exponent (p^d - 1)/2
    let e = (p.pow(d as u32) - BigInt::one()) / BigInt::from(2);
    loop {
        let a: PolyZp = norm(
            (0..dg)
                .map(|_| rng.gen_bigint_range(&BigInt::zero(), p))
                .collect(),
            p,
        );
        if deg(&a).is_none() {
            continue;
        }
        let b = sub(&pow_mod(&a, &e, g, p), &vec![BigInt::one()], p);
        let h = gcd(&b, g, p);
        if let Some(dh) = deg(&h) {
            if dh > 0 && dh < dg {
                let q = divrem(g, &h, p).0;
                equal_degree_split(&h, d, p, rng, out);
                equal_degree_split(&q, d, p, rng, out);
                return;
            }
        }
    }
}

/// Yun squarefree decomposition of a monic polynomial mod p. Requires
/// `p > deg f` so the characteristic never kills a derivative.
pub fn squarefree_decomposition_zp(f: &PolyZp, p: &BigInt) -> Vec<(PolyZp, usize)> {
    let mut out = Vec::new();
    let Some(df) = deg(f) else {
        return out;
    };
    assert!(BigInt::from(df) < *p, "prime too small for Yun");
    if df == 0 {
        return out;
    }
    let fp = derivative(f, p);
    let mut g = gcd(f, &fp, p);
    let mut w = divrem(f, &g, p).0;
    let mut i = 1usize;
    while deg(&w).is_some_and(|d| d > 0) {
        let y = gcd(&w, &g, p);
        let z = divrem(&w, &y, p).0;
        if deg(&z).is_some_and(|d| d > 0) {
            out.push((monic(&z, p), i));
        }
        i += 1;
        g = divrem(&g, &y, p).0;
        w = y;
    }
    out
}

/// Miller-Rabin probable-prime test, deterministic for fixed rounds/seed.
pub fn is_probable_prime(n: &BigInt, rounds: usize) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigInt::from(small);
        if n == &s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - BigInt::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    'witness: for _ in 0..rounds {
        let a = rng.gen_bigint_range(&BigInt::from(2), &(n - BigInt::one()));
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest probable prime >= n (made odd first).
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c = n.clone();
    if c < BigInt::from(3) {
        return BigInt::from(3);
    }
    if c.is_even() {
        c += 1;
    }
    while !is_probable_prime(&c, 64) {
        c += 2;
    }
    c
}

/// Symmetric representative in (-p/2, p/2].
pub fn symmetric(c: &BigInt, p: &BigInt) -> BigInt {
    let c = c.mod_floor(p);
    if &c * 2 > *p {
        c - p
    } else {
        c
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_probable_prime(&big(101), 32));
        assert!(!is_probable_prime(&big(1001), 32));
        assert_eq!(next_prime(&big(100)), big(101));
    }

    #[test]
    fn factor_mod_p() {
        // x^2 - 1 mod 7 = (x-1)(x+1)
        let p = big(7);
        let f = norm(vec![big(-1), big(0), big(1)], &p);
        let fs = factor_squarefree_monic(&f, &p, 1);
        assert_eq!(fs.len(), 2);
        let prod = mul(&fs[0], &fs[1], &p);
        assert_eq!(prod, f);
    }

    #[test]
    fn irreducible_mod_p() {
        // x^2 + 1 mod 7 is irreducible (7 = 3 mod 4)
        let p = big(7);
        let f = norm(vec![big(1), big(0), big(1)], &p);
        let fs = factor_squarefree_monic(&f, &p, 1);
        assert_eq!(fs.len(), 1);
    }

    #[test]
    fn pow_mod_fermat() {
        // x^p = x mod (x^2 - x, p)? x^p mod small check: x^7 mod (x^2+1, 7)
        let p = big(7);
        let f = norm(vec![big(1), big(0), big(1)], &p);
        let x = vec![big(0), big(1)];
        let xp = pow_mod(&x, &p, &f, &p);
        // x^2 = -1, x^7 = x (x^2)^3 = -x = 6x
        assert_eq!(xp, norm(vec![big(0), big(6)], &p));
    }
}
