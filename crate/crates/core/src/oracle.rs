//! Brute-force ground truth, computed by routes that share no code with the
//! fast paths in [`crate::galton`] and [`crate::contact`].

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::contact::FiniteClassification;
use crate::distmodel::{transform_exact, FiniteSupport};
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_N: usize = 8;

/// Exact law of the rank count for two samples of size `n` from one continuous law.
///
/// Every interleaving of the pooled order statistics is equally likely, so
/// the law is read off the `C(2n, n)` balanced lattice paths: bit `k` set
/// means the `k`-th smallest pooled value belongs to the first sample.
pub fn enumerate_galton_distribution(n: usize) -> Result<Vec<BigRational>> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::range("n", format!("{n} not in 1..={MAX_ENUMERATION_N}")));
    }
    let mut counts = vec![0u64; n + 1];
    let mut total = 0u64;
    for mask in 0u32..(1 << (2 * n)) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let (mut x_pos, mut y_pos) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for k in 0..2 * n {
            if mask >> k & 1 == 1 {
                x_pos.push(k);
            } else {
                y_pos.push(k);
            }
        }
        let count = x_pos.iter().zip(&y_pos).filter(|(x, y)| x > y).count();
        counts[count] += 1;
        total += 1;
    }
    Ok(counts
        .into_iter()
        .map(|c| BigRational::new(c.into(), total.into()))
        .collect())
}

/// Sorted distinct cumulative levels of both laws, with 0 and 1.
fn levels(f: &FiniteSupport, g: &FiniteSupport) -> Vec<BigRational> {
    let mut lv: Vec<BigRational> = f
        .cumulative()
        .iter()
        .chain(g.cumulative())
        .cloned()
        .chain([BigRational::zero(), BigRational::one()])
        .collect();
    lv.sort();
    lv.dedup();
    lv
}

/// `gamma(F, G)` by comparing both quantiles at the midpoint of every level cell.
pub fn exact_index_finite(f: &FiniteSupport, g: &FiniteSupport) -> BigRational {
    let two = BigRational::from_integer(2.into());
    levels(f, g)
        .windows(2)
        .filter(|w| {
            let mid = (&w[0] + &w[1]) / &two;
            f.quantile_exact(&mid) > g.quantile_exact(&mid)
        })
        .map(|w| &w[1] - &w[0])
        .sum()
}

/// Measure of the level cells where both quantiles agree.
pub fn tie_measure_finite(f: &FiniteSupport, g: &FiniteSupport) -> BigRational {
    let two = BigRational::from_integer(2.into());
    levels(f, g)
        .windows(2)
        .filter(|w| {
            let mid = (&w[0] + &w[1]) / &two;
            f.quantile_exact(&mid) == g.quantile_exact(&mid)
        })
        .map(|w| &w[1] - &w[0])
        .sum()
}

/// Measure of `{F_n^{-1} > G_m^{-1}}` by evaluating both step quantiles at
/// the midpoint of `cells` equal cells. Exact when `lcm(n, m)` divides `cells`.
pub fn brute_measure(xs: &[f64], ys: &[f64], cells: u64) -> Result<BigRational> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptySample);
    }
    if cells == 0 {
        return Err(Error::range("cells", "must be positive"));
    }
    let mut xs = xs.to_vec();
    let mut ys = ys.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len() as u64, ys.len() as u64);
    // Rank ceil(n t) at t = (2k+1)/(2 cells), in integers.
    let rank = |size: u64, k: u64| (size * (2 * k + 1)).div_ceil(2 * cells);
    let hits = (0..cells)
        .filter(|&k| xs[(rank(n, k) - 1) as usize] > ys[(rank(m, k) - 1) as usize])
        .count() as u64;
    Ok(BigRational::new(hits.into(), cells.into()))
}

/// A cell count for which [`brute_measure`] is exact.
pub fn exact_cells(n: usize, m: usize) -> u64 {
    (n as u64).lcm(&(m as u64))
}

/// Contact classification by probing `F_G` exactly just left of, at and just
/// right of every cumulative level, using the defining sign patterns.
pub fn classify_by_probing(f: &FiniteSupport, g: &FiniteSupport) -> FiniteClassification {
    let lv = levels(f, g);
    let gap = lv
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .unwrap_or_else(BigRational::one);
    let eps = gap / BigRational::from_integer(4.into());
    let fg = |t: &BigRational| transform_exact(f, g, t);
    let mut out = FiniteClassification::default();
    for t0 in lv.iter().filter(|t| !t.is_zero() && !t.is_one()) {
        let left_t = t0 - &eps;
        let right_t = t0 + &eps;
        let (left, at, right) = (fg(&left_t), fg(t0), fg(&right_t));
        // Sign of t - F_G(t) at each probe.
        let below_left = left_t > left;
        let below_right = right_t > right;
        if left == *t0 && at == *t0 && right == *t0 {
            out.horizontal.push(t0.clone());
        } else if at < *t0 && *t0 < right && below_left && !below_right {
            out.vertical.push(t0.clone());
        } else if at == *t0 && left > left_t && right > right_t {
            out.upper.push(t0.clone());
        } else if at < *t0 && right == *t0 && below_left && below_right {
            out.lower.push(t0.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_pmfs() {
        assert_eq!(enumerate_galton_distribution(1).unwrap(), vec![q(1, 2), q(1, 2)]);
        assert_eq!(enumerate_galton_distribution(2).unwrap(), vec![q(1, 3); 3]);
        assert!(enumerate_galton_distribution(9).is_err());
        assert!(enumerate_galton_distribution(0).is_err());
    }

    #[test]
    fn finite_index_examples() {
        let d1 = FiniteSupport::dirac(1.0).unwrap();
        let d0 = FiniteSupport::dirac(0.0).unwrap();
        assert_eq!(exact_index_finite(&d1, &d0), q(1, 1));
        assert_eq!(exact_index_finite(&d0, &d0), q(0, 1));
        let b3 = FiniteSupport::bernoulli(q(3, 10)).unwrap();
        let b6 = FiniteSupport::bernoulli(q(6, 10)).unwrap();
        // F^{-1} > G^{-1} exactly on (0.4, 0.7] for F = B(0.6), G = B(0.3).
        assert_eq!(exact_index_finite(&b6, &b3), q(3, 10));
        assert_eq!(exact_index_finite(&b3, &b6), q(0, 1));
        let total = exact_index_finite(&b3, &b6) + exact_index_finite(&b6, &b3) + tie_measure_finite(&b3, &b6);
        assert_eq!(total, q(1, 1));
    }

    #[test]
    fn brute_measure_examples() {
        assert_eq!(brute_measure(&[1.0, 3.0], &[2.0], 2).unwrap(), q(1, 2));
        assert_eq!(brute_measure(&[1.0, 2.0], &[1.0, 2.0], 2).unwrap(), q(0, 1));
    }

    #[test]
    fn probing_identical_laws_gives_upper_tangencies() {
        let f = FiniteSupport::new(vec![0.0, 1.0, 2.0], vec![q(1, 4), q(1, 4), q(1, 2)]).unwrap();
        let c = classify_by_probing(&f, &f);
        assert_eq!(c.upper, vec![q(1, 4), q(1, 2)]);
        assert!(c.horizontal.is_empty() && c.vertical.is_empty() && c.lower.is_empty());
    }
}
