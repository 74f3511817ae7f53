use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fraction::{format_fraction, to_f64};

/// A law on finitely many atoms with exact rational masses.
///
/// Atoms with zero mass are allowed so that two laws can share one grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSupport {
    atoms: Vec<f64>,
    probs: Vec<BigRational>,
    cumulative: Vec<BigRational>,
    cumulative_f64: Vec<f64>,
}

impl FiniteSupport {
    pub fn new(atoms: Vec<f64>, probs: Vec<BigRational>) -> Result<Self> {
        let invalid = |m: String| Err(Error::InvalidDistribution(m));
        if atoms.is_empty() {
            return invalid("finite support needs at least one atom".into());
        }
        if atoms.len() != probs.len() {
            return invalid(format!("{} atoms but {} probabilities", atoms.len(), probs.len()));
        }
        if atoms.iter().any(|a| !a.is_finite()) {
            return invalid("atoms must be finite".into());
        }
        if atoms.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("atoms must be strictly increasing".into());
        }
        if let Some(p) = probs.iter().find(|p| p.is_negative()) {
            return invalid(format!("negative probability {}", format_fraction(p)));
        }
        let mut acc = BigRational::zero();
        let cumulative: Vec<BigRational> = probs
            .iter()
            .map(|p| {
                acc += p;
                acc.clone()
            })
            .collect();
        if !cumulative.last().is_some_and(One::is_one) {
            return invalid(format!(
                "probabilities sum to {}, not 1",
                format_fraction(cumulative.last().unwrap())
            ));
        }
        let cumulative_f64 = cumulative.iter().map(to_f64).collect();
        Ok(FiniteSupport {
            atoms,
            probs,
            cumulative,
            cumulative_f64,
        })
    }

    /// Bernoulli law with `P(X = 1) = p`.
    pub fn bernoulli(p: BigRational) -> Result<Self> {
        let q = BigRational::one() - &p;
        FiniteSupport::new(vec![0.0, 1.0], vec![q, p])
    }

    pub fn dirac(x: f64) -> Result<Self> {
        FiniteSupport::new(vec![x], vec![BigRational::one()])
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    /// Cumulative masses `P_1, ..., P_k` (the last one is 1).
    pub fn cumulative(&self) -> &[BigRational] {
        &self.cumulative
    }

    fn first_charged(&self) -> usize {
        self.probs.iter().position(|p| !p.is_zero()).unwrap_or(0)
    }

    fn last_charged(&self) -> usize {
        self.probs.iter().rposition(|p| !p.is_zero()).unwrap_or(0)
    }

    pub fn quantile(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.atoms[self.first_charged()];
        }
        if t >= 1.0 {
            return self.atoms[self.last_charged()];
        }
        let i = self.cumulative_f64.partition_point(|&c| c < t);
        self.atoms[i.min(self.atoms.len() - 1)]
    }

    /// Index of the atom `F^{-1}(t)` for an exact level `t`.
    pub fn quantile_index_exact(&self, t: &BigRational) -> usize {
        if !t.is_positive() {
            return self.first_charged();
        }
        if *t >= BigRational::one() {
            return self.last_charged();
        }
        self.cumulative.partition_point(|c| c < t).min(self.atoms.len() - 1)
    }

    pub fn quantile_exact(&self, t: &BigRational) -> f64 {
        self.atoms[self.quantile_index_exact(t)]
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self.atoms.partition_point(|&a| a <= x) {
            0 => 0.0,
            j => self.cumulative_f64[j - 1],
        }
    }

    pub fn cdf_exact(&self, x: f64) -> BigRational {
        match self.atoms.partition_point(|&a| a <= x) {
            0 => BigRational::zero(),
            j => self.cumulative[j - 1].clone(),
        }
    }
}

/// Cumulative masses of two finite laws on their merged atom grid.
///
/// Holds `P_i = F(x_i)` and `Q_i = G(x_i)` for `i = 1..k-1`, where
/// `x_1 < ... < x_k` is the union of both supports.
#[derive(Clone, Debug, PartialEq)]
pub struct CumulativeGrid {
    pub atoms: Vec<f64>,
    pub p: Vec<BigRational>,
    pub q: Vec<BigRational>,
}

impl CumulativeGrid {
    pub fn new(f: &FiniteSupport, g: &FiniteSupport) -> Self {
        let mut atoms: Vec<f64> = f
            .atoms()
            .iter()
            .zip(f.probs())
            .chain(g.atoms().iter().zip(g.probs()))
            .filter(|(_, p)| !p.is_zero())
            .map(|(a, _)| *a)
            .collect();
        atoms.sort_by(f64::total_cmp);
        atoms.dedup();
        let inner = &atoms[..atoms.len() - 1];
        let p = inner.iter().map(|&x| f.cdf_exact(x)).collect();
        let q = inner.iter().map(|&x| g.cdf_exact(x)).collect();
        CumulativeGrid { atoms, p, q }
    }

    /// `P_i` with the conventions `P_0 = 0` and `P_k = 1`.
    pub fn p_at(&self, i: usize) -> BigRational {
        level(&self.p, i)
    }

    pub fn q_at(&self, i: usize) -> BigRational {
        level(&self.q, i)
    }

    /// Number of atoms `k` on the merged grid.
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

fn level(levels: &[BigRational], i: usize) -> BigRational {
    if i == 0 {
        BigRational::zero()
    } else if i > levels.len() {
        BigRational::one()
    } else {
        levels[i - 1].clone()
    }
}
