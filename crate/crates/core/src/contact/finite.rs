use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::distmodel::{CumulativeGrid, FiniteSupport};
use crate::fraction::Fraction;

/// Contact points of two finite laws, split by kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteClassification {
    pub horizontal: Vec<BigRational>,
    pub vertical: Vec<BigRational>,
    pub upper: Vec<BigRational>,
    pub lower: Vec<BigRational>,
}

impl FiniteClassification {
    pub fn is_empty(&self) -> bool {
        self.horizontal.is_empty() && self.vertical.is_empty() && self.upper.is_empty() && self.lower.is_empty()
    }
}

/// Serializable form with `"p/q"` strings.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FiniteClassificationRecord {
    pub horizontal: Vec<Fraction>,
    pub vertical: Vec<Fraction>,
    pub upper: Vec<Fraction>,
    pub lower: Vec<Fraction>,
}

impl From<&FiniteClassification> for FiniteClassificationRecord {
    fn from(c: &FiniteClassification) -> Self {
        let conv = |v: &[BigRational]| v.iter().cloned().map(Fraction).collect();
        FiniteClassificationRecord {
            horizontal: conv(&c.horizontal),
            vertical: conv(&c.vertical),
            upper: conv(&c.upper),
            lower: conv(&c.lower),
        }
    }
}

/// Classifies the contact points of `F_G`, which equals `P_i` on `(Q_{i-1}, Q_i]`.
///
/// Empty cells (`Q_{i-1} = Q_i`) are dropped first, leaving levels
/// `0 = q_0 < q_1 < ... < q_K = 1` with `F_G = v_j` on `(q_{j-1}, q_j]`. Then
///
/// * horizontal crossing `v_j` when `q_{j-1} < v_j < q_j`, or `q_j` when `v_j = q_j = v_{j+1}`
///   (`F_G` is flat through the diagonal);
/// * vertical crossing `q_j` when `v_j < q_j < v_{j+1}` (`F_G` jumps over the diagonal);
/// * upper tangency `q_j` when `v_j = q_j < v_{j+1}`;
/// * lower tangency `q_j` when `v_j < q_j = v_{j+1}`.
pub fn classify_finite_support(f: &FiniteSupport, g: &FiniteSupport) -> FiniteClassification {
    let grid = CumulativeGrid::new(f, g);
    let mut levels = vec![grid.q_at(0)];
    let mut values = vec![grid.p_at(0)];
    for i in 1..=grid.len() {
        if grid.q_at(i) > grid.q_at(i - 1) {
            levels.push(grid.q_at(i));
            values.push(grid.p_at(i));
        }
    }
    let cells = levels.len() - 1;
    let mut out = FiniteClassification::default();
    for j in 1..=cells {
        let (lo, hi, v) = (&levels[j - 1], &levels[j], &values[j]);
        if lo < v && v < hi {
            out.horizontal.push(v.clone());
        }
        if j == cells {
            continue;
        }
        let next = &values[j + 1];
        if v == hi && next == hi {
            out.horizontal.push(hi.clone());
        } else if v < hi && hi < next {
            out.vertical.push(hi.clone());
        } else if v == hi && hi < next {
            out.upper.push(hi.clone());
        } else if v < hi && hi == next {
            out.lower.push(hi.clone());
        }
    }
    out.horizontal.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::classify_by_probing;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identical_laws_are_upper_tangent_everywhere() {
        let f = FiniteSupport::new(vec![0.0, 1.0, 2.0, 5.0], vec![q(1, 5), q(1, 5), q(1, 5), q(2, 5)]).unwrap();
        let c = classify_finite_support(&f, &f);
        assert_eq!(c.upper, vec![q(1, 5), q(2, 5), q(3, 5)]);
        assert!(c.horizontal.is_empty() && c.vertical.is_empty() && c.lower.is_empty());
    }

    #[test]
    fn bernoulli_pairs() {
        let b3 = FiniteSupport::bernoulli(q(3, 10)).unwrap();
        let b6 = FiniteSupport::bernoulli(q(6, 10)).unwrap();
        // F = B(0.6), G = B(0.3): F^{-1} > G^{-1} on (0.4, 0.7].
        let c = classify_finite_support(&b6, &b3);
        assert_eq!(c.horizontal, vec![q(4, 10)]);
        assert_eq!(c.vertical, vec![q(7, 10)]);
        assert!(c.upper.is_empty() && c.lower.is_empty());
        // F = B(0.3), G = B(0.6): F^{-1} <= G^{-1} throughout, no inner contact.
        assert!(classify_finite_support(&b3, &b6).is_empty());
    }

    #[test]
    fn single_atom_has_no_inner_levels() {
        let d = FiniteSupport::dirac(1.0).unwrap();
        assert!(classify_finite_support(&d, &d).is_empty());
    }

    fn finite_law(max_atoms: usize) -> impl Strategy<Value = FiniteSupport> {
        proptest::collection::vec((0u8..5, 0u32..4), 1..=max_atoms).prop_filter_map("needs mass", |pairs| {
            let mut atoms: Vec<(u8, u32)> = pairs;
            atoms.sort_by_key(|a| a.0);
            atoms.dedup_by_key(|a| a.0);
            let total: u32 = atoms.iter().map(|a| a.1).sum();
            if total == 0 {
                return None;
            }
            FiniteSupport::new(
                atoms.iter().map(|a| f64::from(a.0)).collect(),
                atoms.iter().map(|a| q(a.1.into(), total.into())).collect(),
            )
            .ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn agrees_with_probing(f in finite_law(5), g in finite_law(5)) {
            prop_assert_eq!(classify_finite_support(&f, &g), classify_by_probing(&f, &g));
        }
    }
}
