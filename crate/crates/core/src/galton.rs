//! Galton's rank count, the empirical and population dominance indices and
//! the localized deficiency around a contact point.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::distmodel::{CumulativeGrid, Distribution, FiniteSupport};
use crate::error::{Error, Result};
use crate::fraction::{format_fraction, to_f64};

/// A reduced fraction `num/den` in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactMeasure {
    num: u64,
    den: u64,
}

impl ExactMeasure {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0 && num <= den, "measure {num}/{den} outside [0,1]");
        let g = num.gcd(&den);
        ExactMeasure { num: num / g, den: den / g }
    }

    pub fn zero() -> Self {
        ExactMeasure { num: 0, den: 1 }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.into(), self.den.into())
    }
}

impl fmt::Display for ExactMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for ExactMeasure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactMeasure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let text = String::deserialize(d)?;
        let (n, m) = text.split_once('/').unwrap_or((&text, "1"));
        let num: u64 = n.trim().parse().map_err(D::Error::custom)?;
        let den: u64 = m.trim().parse().map_err(D::Error::custom)?;
        if den == 0 || num > den {
            return Err(D::Error::custom(format!("{text} is not a measure in [0,1]")));
        }
        Ok(ExactMeasure::new(num, den))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub n: usize,
    pub m: usize,
    /// Measure of `{t : F_n^{-1}(t) > G_m^{-1}(t)}`.
    pub gamma_hat: ExactMeasure,
    /// Measure of `{t : F_n^{-1}(t) = G_m^{-1}(t)}`.
    pub tie_measure: ExactMeasure,
    /// Measure of `{t : F_n^{-1}(t) < G_m^{-1}(t)}`.
    pub reverse_measure: ExactMeasure,
    /// `#{i : X_(i) > Y_(i)}`, only when `n = m`.
    pub galton_count: Option<u64>,
}

fn sorted(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// `#{i : X_(i) > Y_(i)}` for two samples of equal size.
pub fn galton_count(xs: &[f64], ys: &[f64]) -> Result<u64> {
    if xs.len() != ys.len() {
        return Err(Error::SizeMismatch { n: xs.len(), m: ys.len() });
    }
    if xs.is_empty() {
        return Err(Error::EmptySample);
    }
    let (xs, ys) = (sorted(xs), sorted(ys));
    Ok(xs.iter().zip(&ys).filter(|(x, y)| x > y).count() as u64)
}

/// One cell `(start/L, end/L]` of the merged grid `{i/n} ∪ {j/m}` with
/// `L = lcm(n, m)`; both step quantiles are constant on it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub start: u64,
    pub end: u64,
    pub order: Ordering,
}

/// Merged-grid cells of two sorted samples, in increasing order of `t`.
pub fn sweep_cells(xs: &[f64], ys: &[f64]) -> (u64, Vec<Cell>) {
    let (n, m) = (xs.len() as u64, ys.len() as u64);
    let l = n.lcm(&m);
    let (step_x, step_y) = (l / n, l / m);
    let mut cells = Vec::with_capacity(xs.len() + ys.len());
    let (mut i, mut j, mut pos) = (0usize, 0usize, 0u64);
    while pos < l {
        let end_x = (i as u64 + 1) * step_x;
        let end_y = (j as u64 + 1) * step_y;
        let end = end_x.min(end_y);
        let order = xs[i].total_cmp(&ys[j]);
        let order = if xs[i] == ys[j] { Ordering::Equal } else { order };
        match cells.last_mut() {
            Some(Cell { end: e, order: o, .. }) if *o == order && *e == pos => *e = end,
            _ => cells.push(Cell { start: pos, end, order }),
        }
        if end == end_x {
            i += 1;
        }
        if end == end_y {
            j += 1;
        }
        pos = end;
    }
    (l, cells)
}

/// Exact measures of `{F_n^{-1} > G_m^{-1}}`, ties and the reverse set.
pub fn empirical_index(xs: &[f64], ys: &[f64]) -> Result<IndexReport> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptySample);
    }
    let (xs_s, ys_s) = (sorted(xs), sorted(ys));
    let (l, cells) = sweep_cells(&xs_s, &ys_s);
    let mut totals = [0u64; 3];
    for c in &cells {
        let slot = match c.order {
            Ordering::Greater => 0,
            Ordering::Equal => 1,
            Ordering::Less => 2,
        };
        totals[slot] += c.end - c.start;
    }
    let galton_count = (xs.len() == ys.len()).then(|| xs_s.iter().zip(&ys_s).filter(|(x, y)| x > y).count() as u64);
    Ok(IndexReport {
        n: xs.len(),
        m: ys.len(),
        gamma_hat: ExactMeasure::new(totals[0], l),
        tie_measure: ExactMeasure::new(totals[1], l),
        reverse_measure: ExactMeasure::new(totals[2], l),
        galton_count,
    })
}

/// Measure of `{F_n^{-1} > G_m^{-1}}` inside a union of disjoint intervals.
///
/// Cells lying wholly inside an interval are counted in grid units, so the
/// full interval `(0, 1)` reproduces `gamma_hat` bit for bit.
pub fn empirical_measure_on(xs_sorted: &[f64], ys_sorted: &[f64], set: &[(f64, f64)]) -> f64 {
    let (l, cells) = sweep_cells(xs_sorted, ys_sorted);
    let lf = l as f64;
    let mut units = 0u64;
    let mut partial = 0.0;
    for c in cells.iter().filter(|c| c.order == Ordering::Greater) {
        let (a, b) = (c.start as f64 / lf, c.end as f64 / lf);
        for &(lo, hi) in set {
            if lo <= a && b <= hi {
                units += c.end - c.start;
            } else {
                partial += (b.min(hi) - a.max(lo)).max(0.0);
            }
        }
    }
    units as f64 / lf + partial
}

/// The dominance index `gamma(F, G)`, exact for two finite laws.
#[derive(Clone, Debug, PartialEq)]
pub struct PopulationIndex {
    pub value: f64,
    pub exact: Option<BigRational>,
}

/// Resolution settings for the sign scan of `F^{-1} - G^{-1}`.
#[derive(Clone, Copy, Debug)]
pub struct ScanSettings {
    pub cells: usize,
    pub root_tol: f64,
    /// Maximal number of midpoint subdivisions of one cell.
    pub max_depth: u32,
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings { cells: 1 << 14, root_tol: 1e-12, max_depth: 24 }
    }
}

pub fn population_index(f: &Distribution, g: &Distribution) -> Result<PopulationIndex> {
    if let (Some(a), Some(b)) = (f.as_finite(), g.as_finite()) {
        let exact = finite_index(a, b);
        return Ok(PopulationIndex { value: to_f64(&exact), exact: Some(exact) });
    }
    let value = population_measure_on(f, g, 0.0, 1.0, ScanSettings::default())?;
    Ok(PopulationIndex { value, exact: None })
}

/// Exact `gamma(F, G)` from `F_G = P_i` on `(Q_{i-1}, Q_i]`.
pub fn finite_index(f: &FiniteSupport, g: &FiniteSupport) -> BigRational {
    let grid = CumulativeGrid::new(f, g);
    let mut total = BigRational::zero();
    for i in 1..=grid.len() {
        let lo = grid.q_at(i - 1).max(grid.p_at(i));
        let piece = grid.q_at(i) - lo;
        if piece.is_positive() {
            total += piece;
        }
    }
    total
}

/// Measure of `{t in (a, b) : F^{-1}(t) > G^{-1}(t)}`.
pub fn population_measure_on(f: &Distribution, g: &Distribution, a: f64, b: f64, settings: ScanSettings) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || a >= b {
        return Err(Error::range("window", format!("({a}, {b}) is not a subinterval of [0,1]")));
    }
    if let (Some(fa), Some(gb)) = (f.as_finite(), g.as_finite()) {
        return Ok(finite_measure_on(fa, gb, a, b));
    }
    let scan = SignScan { f, g, settings };
    // Stay strictly inside (0,1): endpoint quantiles may both be infinite.
    let lo = a.max(f64::EPSILON * f64::EPSILON);
    let hi = b.min(1.0 - f64::EPSILON / 2.0);
    let k = settings.cells.max(1);
    let mut total = 0.0;
    let mut left = lo;
    let mut s_left = scan.sign(left);
    // Runs of wholly positive cells are measured as one difference, so a set
    // covering the whole window comes out as exactly `b - a`.
    let mut run_start = (s_left > 0).then_some(a);
    for i in 1..=k {
        let right = if i == k { hi } else { lo + (hi - lo) * i as f64 / k as f64 };
        let s_right = scan.sign(right);
        let part = scan.positive_part(left, right, s_left, s_right, 0)?;
        if s_left > 0 && s_right > 0 && part == right - left {
            run_start.get_or_insert(left);
        } else {
            if let Some(start) = run_start.take() {
                total += left - start;
            }
            total += part;
        }
        left = right;
        s_left = s_right;
    }
    if let Some(start) = run_start {
        total += if s_left > 0 { b } else { hi } - start;
    }
    Ok(total)
}

fn finite_measure_on(f: &FiniteSupport, g: &FiniteSupport, a: f64, b: f64) -> f64 {
    let grid = CumulativeGrid::new(f, g);
    (1..=grid.len())
        .map(|i| {
            let lo = to_f64(&grid.q_at(i - 1).max(grid.p_at(i))).max(a);
            let hi = to_f64(&grid.q_at(i)).min(b);
            (hi - lo).max(0.0)
        })
        .sum()
}

struct SignScan<'a> {
    f: &'a Distribution,
    g: &'a Distribution,
    settings: ScanSettings,
}

impl SignScan<'_> {
    fn sign(&self, t: f64) -> i8 {
        let d = self.f.quantile(t) - self.g.quantile(t);
        if d > 0.0 {
            1
        } else if d < 0.0 {
            -1
        } else {
            0
        }
    }

    /// Positive-sign measure of `(a, b)` given the signs at the ends.
    fn positive_part(&self, a: f64, b: f64, sa: i8, sb: i8, depth: u32) -> Result<f64> {
        let mid = 0.5 * (a + b);
        if sa != 0 && sb != 0 && sa != sb {
            let root = self.bisect(a, b, sa);
            return Ok(if sa > 0 { root - a } else { b - root });
        }
        let sm = self.sign(mid);
        if sa == sb && sm == sa {
            return Ok(if sa > 0 { b - a } else { 0.0 });
        }
        if sm != 0 && (sa == sm || sa == 0) && (sb == sm || sb == 0) && depth >= 2 {
            // A zero at an end only; the interior keeps one sign.
            return Ok(if sm > 0 { b - a } else { 0.0 });
        }
        if b - a <= self.settings.root_tol {
            // Below resolution: zero run or a root we cannot separate further.
            return Ok(if sm > 0 { b - a } else { 0.0 });
        }
        if depth >= self.settings.max_depth {
            if sa == 0 && sb == 0 && sm == 0 {
                return Ok(0.0);
            }
            return Err(Error::ScanBudget { lo: a, hi: b });
        }
        Ok(self.positive_part(a, mid, sa, sm, depth + 1)? + self.positive_part(mid, b, sm, sb, depth + 1)?)
    }

    fn bisect(&self, mut a: f64, mut b: f64, sa: i8) -> f64 {
        while b - a > self.settings.root_tol {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let s = self.sign(mid);
            if s == sa {
                a = mid;
            } else if s == 0 {
                return mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }
}

/// Localized deficiency on the window `(t0 - eta, t0 + eta)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalizedDeficiency {
    pub t0: f64,
    pub eta: f64,
    pub empirical: f64,
    pub population: f64,
    pub value: f64,
}

/// Empirical window measure of `{F_n^{-1} > G_m^{-1}}` minus its population counterpart.
pub fn localized_deficiency(
    xs: &[f64],
    ys: &[f64],
    f: &Distribution,
    g: &Distribution,
    t0: f64,
    eta: f64,
) -> Result<LocalizedDeficiency> {
    let population = window_population(f, g, t0, eta)?;
    localized_with_population(xs, ys, t0, eta, population)
}

/// Population measure of `{F^{-1} > G^{-1}}` on the window around `t0`.
pub fn window_population(f: &Distribution, g: &Distribution, t0: f64, eta: f64) -> Result<f64> {
    check_window(t0, eta)?;
    population_measure_on(f, g, t0 - eta, t0 + eta, ScanSettings::default())
}

/// Same as [`localized_deficiency`] with a precomputed population term.
pub fn localized_with_population(xs: &[f64], ys: &[f64], t0: f64, eta: f64, population: f64) -> Result<LocalizedDeficiency> {
    check_window(t0, eta)?;
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptySample);
    }
    let empirical = empirical_measure_on(&sorted(xs), &sorted(ys), &[(t0 - eta, t0 + eta)]);
    Ok(LocalizedDeficiency { t0, eta, empirical, population, value: empirical - population })
}

fn check_window(t0: f64, eta: f64) -> Result<()> {
    if !(eta > 0.0) || t0 - eta < -1e-15 || t0 + eta > 1.0 + 1e-15 {
        return Err(Error::range("window", format!("(t0 - eta, t0 + eta) = ({}, {}) leaves [0,1]", t0 - eta, t0 + eta)));
    }
    Ok(())
}

/// `P(count' <= count)` when the rank count is uniform on `{0, ..., n}`.
pub fn chung_feller_pvalue(count: u64, n: u64) -> Result<BigRational> {
    if count > n {
        return Err(Error::range("count", format!("{count} exceeds n = {n}")));
    }
    Ok(BigRational::new((count + 1).into(), (n + 1).into()))
}

pub fn pvalue_text(count: u64, n: u64) -> Result<String> {
    chung_feller_pvalue(count, n).map(|p| format_fraction(&p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn galton_count_examples() {
        assert_eq!(galton_count(&[1.0, 2.0], &[3.0, 4.0]).unwrap(), 0);
        assert_eq!(galton_count(&[3.0, 4.0], &[1.0, 2.0]).unwrap(), 2);
        assert_eq!(galton_count(&[4.0, 1.0], &[3.0, 2.0]).unwrap(), 1);
        assert!(matches!(galton_count(&[1.0], &[1.0, 2.0]), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn empirical_index_examples() {
        let r = empirical_index(&[1.0, 3.0], &[2.0]).unwrap();
        assert_eq!(r.gamma_hat, ExactMeasure::new(1, 2));
        assert_eq!(r.galton_count, None);
        let same = [0.3, 0.1, 0.7];
        let r = empirical_index(&same, &same).unwrap();
        assert_eq!(r.gamma_hat, ExactMeasure::zero());
        assert_eq!(r.tie_measure, ExactMeasure::new(1, 1));
        assert_eq!(r.galton_count, Some(0));
    }

    #[test]
    fn pvalues() {
        assert_eq!(chung_feller_pvalue(2, 15).unwrap(), q(3, 16));
        assert_eq!(chung_feller_pvalue(15, 15).unwrap(), q(1, 1));
        assert_eq!(chung_feller_pvalue(0, 4).unwrap(), q(1, 5));
        assert!(chung_feller_pvalue(5, 4).is_err());
    }

    #[test]
    fn population_index_examples() {
        let u = Distribution::Uniform01;
        assert_eq!(population_index(&u, &u).unwrap().value, 0.0);
        let shifted = Distribution::PiecewiseQuantile(
            crate::distmodel::PiecewiseQuantile::new(vec![], vec![crate::distmodel::Segment::affine(1.0, 1.0)]).unwrap(),
        );
        assert_eq!(population_index(&u, &shifted).unwrap().value, 0.0);
        assert!((population_index(&shifted, &u).unwrap().value - 1.0).abs() < 1e-12);
        for r in [0.5, 2.0, 3.0] {
            let f = Distribution::power_cross(r).unwrap();
            assert!((population_index(&f, &u).unwrap().value - 0.5).abs() < 1e-11, "r = {r}");
        }
        let t = Distribution::student_t_shift(1.0, 0.0).unwrap();
        let ts = Distribution::student_t_shift(1.0, 1.0).unwrap();
        assert_eq!(population_index(&t, &ts).unwrap().value, 0.0);
    }

    #[test]
    fn finite_index_bernoulli() {
        let b3 = Distribution::bernoulli(q(3, 10)).unwrap();
        let b6 = Distribution::bernoulli(q(6, 10)).unwrap();
        assert_eq!(population_index(&b3, &b6).unwrap().exact, Some(q(0, 1)));
        assert_eq!(population_index(&b6, &b3).unwrap().exact, Some(q(3, 10)));
        assert_eq!(population_index(&b3, &b3).unwrap().exact, Some(q(0, 1)));
    }

    #[test]
    fn scan_handles_two_close_roots() {
        // F^{-1}(t) = t - d + tent: positive difference only on (c - 5e-6, c + 5e-6),
        // both roots inside one grid cell around its midpoint c.
        use crate::distmodel::{PiecewiseQuantile, Segment};
        let c = 8192.5 / 16384.0;
        let (w, k, d) = (1e-5, 0.5, 2.5e-6);
        let f = Distribution::PiecewiseQuantile(
            PiecewiseQuantile::new(
                vec![c - w, c, c + w],
                vec![
                    Segment::affine(-d, 1.0),
                    Segment::affine(-d - k * (c - w), 1.0 + k),
                    Segment::affine(-d + k * (c + w), 1.0 - k),
                    Segment::affine(-d, 1.0),
                ],
            )
            .unwrap(),
        );
        let v = population_measure_on(&f, &Distribution::Uniform01, 0.0, 1.0, ScanSettings::default()).unwrap();
        assert!((v - 1e-5).abs() < 1e-10, "{v}");
    }

    #[test]
    fn localized_window_is_bounded() {
        let u = Distribution::Uniform01;
        let xs = u.sample(200, 1);
        let ys = u.sample(200, 2);
        let d = localized_deficiency(&xs, &ys, &u, &u, 0.5, 0.1).unwrap();
        assert!(d.value.abs() <= 0.2 + 1e-12);
        assert!(localized_deficiency(&xs, &ys, &u, &u, 0.05, 0.1).is_err());
    }

    #[test]
    fn exact_measure_serde() {
        let m = ExactMeasure::new(6, 8);
        assert_eq!(serde_json::to_string(&m).unwrap(), "\"3/4\"");
        let back: ExactMeasure = serde_json::from_str("\"3/4\"").unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<ExactMeasure>("\"5/4\"").is_err());
    }

    proptest::proptest! {
        #[test]
        fn equal_size_identity(seed in 0u64..10_000, n in 1usize..50) {
            let d = Distribution::bernoulli(q(1, 2)).unwrap();
            let xs: Vec<f64> = Distribution::Uniform01.sample(n, seed).iter().zip(d.sample(n, seed + 1)).map(|(a, b)| (a * 4.0).floor() + b).collect();
            let ys: Vec<f64> = Distribution::Uniform01.sample(n, seed + 2).iter().map(|a| (a * 5.0).floor()).collect();
            let r = empirical_index(&xs, &ys).unwrap();
            proptest::prop_assert_eq!(r.gamma_hat.numer() * n as u64 / r.gamma_hat.denom(), r.galton_count.unwrap());
            proptest::prop_assert_eq!((n as u64 * r.gamma_hat.numer()) % r.gamma_hat.denom(), 0);
        }

        #[test]
        fn complementarity(xs in proptest::collection::vec(0i32..6, 1..12), ys in proptest::collection::vec(0i32..6, 1..12)) {
            let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
            let ys: Vec<f64> = ys.into_iter().map(f64::from).collect();
            let a = empirical_index(&xs, &ys).unwrap();
            let b = empirical_index(&ys, &xs).unwrap();
            let total = a.gamma_hat.to_rational() + b.gamma_hat.to_rational() + a.tie_measure.to_rational();
            proptest::prop_assert_eq!(total, q(1, 1));
            proptest::prop_assert_eq!(a.tie_measure, b.tie_measure);
            if xs.iter().all(|x| !ys.contains(x)) {
                proptest::prop_assert_eq!(a.tie_measure, ExactMeasure::zero());
            }
        }

        #[test]
        fn rank_transform_invariance(xs in proptest::collection::vec(-5.0f64..5.0, 1..15), ys in proptest::collection::vec(-5.0f64..5.0, 1..15)) {
            let warp = |v: &f64| v.exp() * 3.0 + v.powi(3);
            let a = empirical_index(&xs, &ys).unwrap();
            let b = empirical_index(&xs.iter().map(warp).collect::<Vec<_>>(), &ys.iter().map(warp).collect::<Vec<_>>()).unwrap();
            proptest::prop_assert_eq!(a, b);
        }
    }
}
