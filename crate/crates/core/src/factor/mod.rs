//! Exact polynomial factorization over the rationals: univariate
//! (big-prime Zassenhaus) and bivariate (Kronecker substitution), plus
//! the mod-p irreducibility probes used as heuristic evidence of
//! absolute irreducibility.

pub mod bivariate;
pub mod univariate;
pub mod zmodp;

pub use bivariate::{
    bi_deg_x, bi_deg_y, bi_div_exact, bi_is_zero, bi_mul, bi_total_degree, bi_trim,
    factor_bipoly, is_irreducible_mod_p, BiPoly,
};
pub use univariate::{factor_unipoly, is_irreducible_unipoly};

/// All size-k index subsets of 0..n, lexicographic.
pub(crate) fn univariate_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::univariate_combinations;

    #[test]
    fn combination_counts() {
        assert_eq!(univariate_combinations(4, 2).len(), 6);
        assert_eq!(univariate_combinations(5, 1).len(), 5);
        assert_eq!(univariate_combinations(3, 3).len(), 1);
        assert!(univariate_combinations(2, 3).is_empty());
    }
}
