//! Samplers for the limit laws of the empirical index and its localized parts.
//!
//! Inner and virtual contacts are driven by two independent Brownian bridges
//! `B_1, B_2` through `B_lambda = B_1 / sqrt(lambda) - B_2 / sqrt(1 - lambda)`.
//! End-point contacts use independent Brownian motions (order above one) or
//! independent unit exponential renewal sums (order one).

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contact::{ContactClass, ContactPoint, Position, Source};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::rng::stream;

pub const DEFAULT_BRIDGE_GRID: usize = 4096;
const EXTREMAL_STEPS: usize = 1 << 16;
const RENEWAL_TAIL: f64 = 50.0;
const RENEWAL_CAP: f64 = 1e8;

/// A Brownian bridge sampled on `{0, 1/N, ..., 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BridgePath {
    pub values: Vec<f64>,
}

impl BridgePath {
    pub fn grid(&self) -> usize {
        self.values.len() - 1
    }
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn sample_bridge<R: Rng + ?Sized>(grid: usize, rng: &mut R) -> Result<BridgePath> {
    if grid < 2 || !grid.is_power_of_two() {
        return Err(Error::range("grid", format!("{grid} is not a power of two >= 2")));
    }
    let sd = (1.0 / grid as f64).sqrt();
    let mut w = Vec::with_capacity(grid + 1);
    w.push(0.0);
    let mut acc = 0.0;
    for _ in 0..grid {
        acc += sd * normal(rng);
        w.push(acc);
    }
    let end = w[grid];
    let values = w
        .iter()
        .enumerate()
        .map(|(i, wi)| if i == grid { 0.0 } else { wi - (i as f64 / grid as f64) * end })
        .collect();
    Ok(BridgePath { values })
}

/// Length of `{t in A : B(t) > 0}` with `B` read at the left end of each grid cell.
pub fn occupation_positive(path: &BridgePath, set: &[(f64, f64)]) -> f64 {
    let n = path.grid();
    let step = 1.0 / n as f64;
    let mut total = 0.0;
    for &(a, b) in set {
        let (a, b) = (a.max(0.0), b.min(1.0));
        if a >= b {
            continue;
        }
        let first = ((a * n as f64).floor() as usize).min(n - 1);
        let last = ((b * n as f64).ceil() as usize).min(n);
        for i in first..last {
            if path.values[i] > 0.0 {
                let lo = (i as f64 * step).max(a);
                let hi = ((i + 1) as f64 * step).min(b);
                total += (hi - lo).max(0.0);
            }
        }
    }
    total
}

/// Exact joint draw of a standard bridge at the given points.
pub fn bridge_at<R: Rng + ?Sized>(points: &[f64], rng: &mut R) -> Vec<f64> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].total_cmp(&points[j]));
    let mut motion = vec![0.0; points.len()];
    let (mut t, mut w) = (0.0, 0.0);
    for &i in &order {
        let dt = (points[i] - t).max(0.0);
        if dt > 0.0 {
            w += dt.sqrt() * normal(rng);
        }
        t = points[i].max(t);
        motion[i] = w;
    }
    let w1 = w + (1.0 - t).max(0.0).sqrt() * normal(rng);
    points.iter().zip(&motion).map(|(p, m)| m - p * w1).collect()
}

/// Values of the two driving bridges at shared points.
#[derive(Clone, Copy, Debug)]
struct Drivers {
    b1: f64,
    b2: f64,
}

impl Drivers {
    fn combined(self, lambda: f64) -> f64 {
        self.b1 / lambda.sqrt() - self.b2 / (1.0 - lambda).sqrt()
    }

    fn exchanged(self) -> Self {
        Drivers { b1: self.b2, b2: self.b1 }
    }
}

fn drivers_at<R: Rng + ?Sized>(points: &[f64], rng: &mut R) -> Vec<Drivers> {
    let b1 = bridge_at(points, rng);
    let b2 = bridge_at(points, rng);
    b1.into_iter().zip(b2).map(|(b1, b2)| Drivers { b1, b2 }).collect()
}

fn positive(x: f64) -> f64 {
    x.max(0.0)
}

fn negative(x: f64) -> f64 {
    (-x).max(0.0)
}

/// `a^{sgn(c)}`: the positive part for `c > 0`, the negative part for `c < 0`.
fn part_by_sign(a: f64, c: f64) -> f64 {
    if c > 0.0 {
        positive(a)
    } else {
        negative(a)
    }
}

fn inner_value(d: Drivers, r_left: f64, r_right: f64, c_left: f64, c_right: f64, lambda: f64) -> f64 {
    let b = d.combined(lambda);
    let top = r_left.max(r_right);
    if top == 1.0 && c_left * c_right < 0.0 {
        return part_by_sign(b, c_left) / c_left
            + part_by_sign(b, c_right) / c_right
            + c_left.signum() * d.b2 / (1.0 - lambda).sqrt();
    }
    let side = |r: f64, c: f64| {
        if r == top {
            c.signum() * (part_by_sign(b, c) / c.abs()).powf(1.0 / top)
        } else {
            0.0
        }
    };
    side(r_left, c_left) + side(r_right, c_right)
}

/// Inner-contact limit at `t0` with one-sided orders and constants.
pub fn sample_t_inner<R: Rng + ?Sized>(
    t0: f64,
    r_left: f64,
    r_right: f64,
    c_left: f64,
    c_right: f64,
    lambda: f64,
    rng: &mut R,
) -> Result<f64> {
    check_inner(t0, r_left, r_right, c_left, c_right, lambda)?;
    let d = drivers_at(&[t0], rng)[0];
    Ok(inner_value(d, r_left, r_right, c_left, c_right, lambda))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VirtualKind {
    HorizontalCrossing,
    VerticalCrossing,
    UpperTangency,
    LowerTangency,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingOrientation {
    Horizontal,
    Vertical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TangencyOrientation {
    Upper,
    Lower,
}

fn virtual_value(d: Drivers, kind: VirtualKind, lambda: f64) -> f64 {
    match kind {
        VirtualKind::HorizontalCrossing => d.b1 / lambda.sqrt(),
        VirtualKind::VerticalCrossing => -d.b2 / (1.0 - lambda).sqrt(),
        VirtualKind::UpperTangency => positive(d.combined(lambda)),
        VirtualKind::LowerTangency => -negative(d.combined(lambda)),
    }
}

pub fn sample_virtual<R: Rng + ?Sized>(kind: VirtualKind, t0: f64, lambda: f64, rng: &mut R) -> Result<f64> {
    check_level(t0)?;
    check_lambda(lambda)?;
    Ok(virtual_value(drivers_at(&[t0], rng)[0], kind, lambda))
}

/// End-point limit: signed occupation time of a Brownian motion above `a y^r`
/// for `r > 1`, or the renewal-sum integral for `r = 1`.
///
/// `horizon_scale` multiplies the simulated horizon; the default is 1.
pub fn sample_t_extremal<R: Rng + ?Sized>(r: f64, c: f64, lambda: f64, horizon_scale: f64, rng: &mut R) -> Result<f64> {
    check_lambda(lambda)?;
    check_order(r)?;
    check_constant(c)?;
    if !(horizon_scale > 0.0 && horizon_scale.is_finite()) {
        return Err(Error::range("horizon_scale", format!("{horizon_scale} must be positive")));
    }
    if r == 1.0 {
        renewal_integral(c, lambda, horizon_scale, rng)
    } else {
        Ok(motion_occupation(r, c, lambda, horizon_scale, rng))
    }
}

fn motion_occupation<R: Rng + ?Sized>(r: f64, c: f64, lambda: f64, horizon_scale: f64, rng: &mut R) -> f64 {
    let a = (lambda * (1.0 - lambda)).sqrt() * c.abs();
    // Smallest y with a y^r >= 8 sqrt(y), doubled.
    let horizon = 2.0 * (8.0 / a).powf(1.0 / (r - 0.5)) * horizon_scale;
    let steps = (EXTREMAL_STEPS as f64 * horizon_scale).ceil() as usize;
    let dy = horizon / steps as f64;
    let sd = dy.sqrt();
    let sign = c.signum();
    let (mut w, mut occupied) = (0.0, 0.0);
    for i in 0..steps {
        let y = i as f64 * dy;
        if i > 0 && sign * w > a * y.powf(r) {
            occupied += dy;
        }
        w += sd * normal(rng);
    }
    sign * occupied
}

/// `sgn(C) lambda (1 - lambda) * |{y : sgn(C) lambda S2(ceil((1-lambda) y)) > sgn(C) (1-lambda)(1+C) S1(ceil(lambda y))}|`,
/// integrated exactly between the jumps of the two ceilings.
fn renewal_integral<R: Rng + ?Sized>(c: f64, lambda: f64, horizon_scale: f64, rng: &mut R) -> Result<f64> {
    let rng = std::cell::RefCell::new(rng);
    let draw = || rng.borrow_mut().sample::<f64, _>(Exp1);
    renewal_integral_with(c, lambda, horizon_scale, draw, draw)
}

fn renewal_integral_with(
    c: f64,
    lambda: f64,
    horizon_scale: f64,
    mut first: impl FnMut() -> f64,
    mut second: impl FnMut() -> f64,
) -> Result<f64> {
    let mu = 1.0 - lambda;
    if c <= -1.0 {
        // The right side is nonpositive, so the indicator never fires.
        return Ok(0.0);
    }
    let sign = c.signum();
    let factor = mu * (1.0 + c);
    // Past `settle` the drift -lambda mu |C| y of the compared difference beats
    // its fluctuation by eight standard deviations.
    let spread = lambda * lambda * mu + mu * mu * (1.0 + c).powi(2) * lambda;
    let settle = 64.0 * spread / (lambda * mu * c).powi(2) * horizon_scale;
    let tail = RENEWAL_TAIL * horizon_scale / lambda.min(mu);
    let cap = RENEWAL_CAP / lambda.min(mu);
    // Partial sums S1_j, S2_k for the current indices j = ceil(lambda y), k = ceil(mu y).
    let (mut j, mut k) = (1u64, 1u64);
    let mut s1 = first();
    let mut s2 = second();
    let (mut y, mut total, mut last_active) = (0.0_f64, 0.0, 0.0_f64);
    loop {
        // The ceilings stay at (j, k) on (y, next].
        let next = (j as f64 / lambda).min(k as f64 / mu);
        if sign * lambda * s2 > sign * factor * s1 {
            total += next - y;
            last_active = next;
        }
        y = next;
        if y > last_active.max(settle) + tail {
            break;
        }
        if y > cap {
            return Err(Error::Horizon(format!(
                "renewal integral still active at y = {y:.3e} (C = {c}, lambda = {lambda})"
            )));
        }
        if (j as f64 / lambda) <= y {
            j += 1;
            s1 += first();
        }
        if (k as f64 / mu) <= y {
            k += 1;
            s2 += second();
        }
    }
    Ok(sign * lambda * mu * total)
}

/// One summand of a global limit, built from a classified contact point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "term", rename_all = "snake_case", deny_unknown_fields)]
pub enum LimitTerm {
    Inner {
        t0: f64,
        r_left: f64,
        r_right: f64,
        c_left: f64,
        c_right: f64,
        /// Expansion taken on `G_F`: the limit is the negated exchanged-sample law.
        #[serde(default)]
        swapped: bool,
    },
    Extremal {
        end: u8,
        r: f64,
        c: f64,
        #[serde(default)]
        swapped: bool,
    },
    Virtual { t0: f64, kind: VirtualKind },
}

impl LimitTerm {
    pub fn from_contact(p: &ContactPoint) -> Result<Self> {
        let swapped = p.source == Source::ViaGf;
        let virtual_kind = match p.class {
            ContactClass::VirtualHorizontalCrossing => Some(VirtualKind::HorizontalCrossing),
            ContactClass::VirtualVerticalCrossing => Some(VirtualKind::VerticalCrossing),
            ContactClass::UpperTangency => Some(VirtualKind::UpperTangency),
            ContactClass::LowerTangency => Some(VirtualKind::LowerTangency),
            ContactClass::Crossing | ContactClass::Tangency => None,
        };
        let term = if let Some(kind) = virtual_kind {
            LimitTerm::Virtual { t0: p.t0, kind }
        } else if p.position == Position::Extremal {
            let fit = p.left.or(p.right).ok_or_else(|| Error::Config("extremal contact without a fit".into()))?;
            LimitTerm::Extremal { end: if p.t0 < 0.5 { 0 } else { 1 }, r: fit.r_snapped, c: fit.c, swapped }
        } else {
            let (left, right) = p
                .left
                .zip(p.right)
                .ok_or_else(|| Error::Config("inner contact needs fits on both sides".into()))?;
            LimitTerm::Inner {
                t0: p.t0,
                r_left: left.r_snapped,
                r_right: right.r_snapped,
                c_left: left.c,
                c_right: right.c,
                swapped,
            }
        };
        term.validate()?;
        Ok(term)
    }

    /// Order that sets the scaling exponent `1 / (2 r)` of this term.
    pub fn effective_order(&self) -> f64 {
        match self {
            LimitTerm::Inner { r_left, r_right, .. } => r_left.max(*r_right),
            LimitTerm::Extremal { r, .. } => r - 0.5,
            LimitTerm::Virtual { .. } => 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            LimitTerm::Inner { t0, r_left, r_right, c_left, c_right, .. } => {
                check_inner(t0, r_left, r_right, c_left, c_right, 0.5)
            }
            LimitTerm::Extremal { end, r, c, .. } => {
                if end > 1 {
                    return Err(Error::range("end", format!("{end} is not 0 or 1")));
                }
                check_order(r)?;
                check_constant(c)
            }
            LimitTerm::Virtual { t0, .. } => check_level(t0),
        }
    }
}

/// Sum of the maximal-order terms. Inner and virtual terms share one draw
/// of `(B_1, B_2)`; each end point gets its own independent driver.
pub fn sample_global_limit<R: Rng + ?Sized>(terms: &[LimitTerm], lambda: f64, rng: &mut R) -> Result<f64> {
    check_lambda(lambda)?;
    for t in terms {
        t.validate()?;
    }
    let top = terms.iter().map(LimitTerm::effective_order).fold(f64::NEG_INFINITY, f64::max);
    let active: Vec<&LimitTerm> = terms.iter().filter(|t| t.effective_order() == top).collect();
    if active.is_empty() {
        return Ok(0.0);
    }
    let levels: Vec<f64> = active
        .iter()
        .filter_map(|t| match t {
            LimitTerm::Inner { t0, .. } | LimitTerm::Virtual { t0, .. } => Some(*t0),
            LimitTerm::Extremal { .. } => None,
        })
        .collect();
    let shared = drivers_at(&levels, rng);
    let mut next = shared.iter();
    let mut total = 0.0;
    for t in active {
        total += match *t {
            LimitTerm::Inner { r_left, r_right, c_left, c_right, swapped, .. } => {
                let d = *next.next().expect("one driver per inner term");
                if swapped {
                    -inner_value(d.exchanged(), r_left, r_right, c_left, c_right, 1.0 - lambda)
                } else {
                    inner_value(d, r_left, r_right, c_left, c_right, lambda)
                }
            }
            LimitTerm::Virtual { kind, .. } => virtual_value(*next.next().expect("one driver per virtual term"), kind, lambda),
            LimitTerm::Extremal { r, c, swapped, .. } => {
                if swapped {
                    -sample_t_extremal(r, c, 1.0 - lambda, 1.0, rng)?
                } else {
                    sample_t_extremal(r, c, lambda, 1.0, rng)?
                }
            }
        };
    }
    Ok(total)
}

/// `sum_H B_1/sqrt(lambda) - sum_V B_2/sqrt(1-lambda) + sum_U (B_lambda)^+ - sum_L (B_lambda)^-`
/// with one joint draw of both bridges at all listed levels.
pub fn sample_finite_support_limit<R: Rng + ?Sized>(
    horizontal: &[f64],
    vertical: &[f64],
    upper: &[f64],
    lower: &[f64],
    lambda: f64,
    rng: &mut R,
) -> Result<f64> {
    check_lambda(lambda)?;
    let groups = [
        (horizontal, VirtualKind::HorizontalCrossing),
        (vertical, VirtualKind::VerticalCrossing),
        (upper, VirtualKind::UpperTangency),
        (lower, VirtualKind::LowerTangency),
    ];
    let levels: Vec<f64> = groups.iter().flat_map(|(l, _)| l.iter().copied()).collect();
    for &t in &levels {
        check_level(t)?;
    }
    let drivers = drivers_at(&levels, rng);
    let mut next = drivers.into_iter();
    let mut total = 0.0;
    for (list, kind) in groups {
        for _ in list {
            total += virtual_value(next.next().expect("one driver per level"), kind, lambda);
        }
    }
    Ok(total)
}

/// `sum_i (B(t_i))^+` for a single standard bridge.
pub fn sample_bridge_positive_sum<R: Rng + ?Sized>(levels: &[f64], rng: &mut R) -> Result<f64> {
    for &t in levels {
        check_level(t)?;
    }
    Ok(bridge_at(levels, rng).into_iter().map(positive).sum())
}

fn default_grid() -> usize {
    DEFAULT_BRIDGE_GRID
}

fn unit_scale() -> f64 {
    1.0
}

/// A limit law to sample from, as stored in configuration files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case", deny_unknown_fields)]
pub enum LimitLawSpec {
    OccupationOnSet {
        set: Vec<(f64, f64)>,
        #[serde(default = "default_grid")]
        grid: usize,
    },
    InnerT {
        t0: f64,
        r_left: f64,
        r_right: f64,
        c_left: f64,
        c_right: f64,
        lambda: f64,
    },
    ExtremalT {
        end: u8,
        r: f64,
        c: f64,
        lambda: f64,
        #[serde(default = "unit_scale")]
        horizon_scale: f64,
    },
    VirtualCrossing {
        t0: f64,
        orientation: CrossingOrientation,
        lambda: f64,
    },
    VirtualTangency {
        t0: f64,
        orientation: TangencyOrientation,
        lambda: f64,
    },
    GlobalSum {
        terms: Vec<LimitTerm>,
        lambda: f64,
    },
    FiniteSupportSum {
        #[serde(default)]
        horizontal: Vec<Fraction>,
        #[serde(default)]
        vertical: Vec<Fraction>,
        #[serde(default)]
        upper: Vec<Fraction>,
        #[serde(default)]
        lower: Vec<Fraction>,
        lambda: f64,
    },
    /// `sum_i (B(t_i))^+` with a single bridge.
    BridgePositiveSum { levels: Vec<Fraction> },
}

impl LimitLawSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            LimitLawSpec::OccupationOnSet { set, grid } => {
                if *grid < 2 || !grid.is_power_of_two() {
                    return Err(Error::range("grid", format!("{grid} is not a power of two >= 2")));
                }
                for &(a, b) in set {
                    if !(0.0 <= a && a <= b && b <= 1.0) {
                        return Err(Error::range("set", format!("({a}, {b}) is not inside [0,1]")));
                    }
                }
                Ok(())
            }
            &LimitLawSpec::InnerT { t0, r_left, r_right, c_left, c_right, lambda } => {
                check_inner(t0, r_left, r_right, c_left, c_right, lambda)
            }
            &LimitLawSpec::ExtremalT { end, r, c, lambda, horizon_scale } => {
                LimitTerm::Extremal { end, r, c, swapped: false }.validate()?;
                check_lambda(lambda)?;
                if horizon_scale > 0.0 && horizon_scale.is_finite() {
                    Ok(())
                } else {
                    Err(Error::range("horizon_scale", format!("{horizon_scale} must be positive")))
                }
            }
            &LimitLawSpec::VirtualCrossing { t0, lambda, .. } | &LimitLawSpec::VirtualTangency { t0, lambda, .. } => {
                check_level(t0)?;
                check_lambda(lambda)
            }
            LimitLawSpec::GlobalSum { terms, lambda } => {
                check_lambda(*lambda)?;
                terms.iter().try_for_each(LimitTerm::validate)
            }
            LimitLawSpec::FiniteSupportSum { horizontal, vertical, upper, lower, lambda } => {
                check_lambda(*lambda)?;
                horizontal.iter().chain(vertical).chain(upper).chain(lower).try_for_each(|t| check_level(t.to_f64()))
            }
            LimitLawSpec::BridgePositiveSum { levels } => levels.iter().try_for_each(|t| check_level(t.to_f64())),
        }
    }

    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        let floats = |v: &[Fraction]| v.iter().map(Fraction::to_f64).collect::<Vec<f64>>();
        match self {
            LimitLawSpec::OccupationOnSet { set, grid } => Ok(occupation_positive(&sample_bridge(*grid, rng)?, set)),
            &LimitLawSpec::InnerT { t0, r_left, r_right, c_left, c_right, lambda } => {
                sample_t_inner(t0, r_left, r_right, c_left, c_right, lambda, rng)
            }
            &LimitLawSpec::ExtremalT { r, c, lambda, horizon_scale, .. } => sample_t_extremal(r, c, lambda, horizon_scale, rng),
            &LimitLawSpec::VirtualCrossing { t0, orientation, lambda } => {
                let kind = match orientation {
                    CrossingOrientation::Horizontal => VirtualKind::HorizontalCrossing,
                    CrossingOrientation::Vertical => VirtualKind::VerticalCrossing,
                };
                sample_virtual(kind, t0, lambda, rng)
            }
            &LimitLawSpec::VirtualTangency { t0, orientation, lambda } => {
                let kind = match orientation {
                    TangencyOrientation::Upper => VirtualKind::UpperTangency,
                    TangencyOrientation::Lower => VirtualKind::LowerTangency,
                };
                sample_virtual(kind, t0, lambda, rng)
            }
            LimitLawSpec::GlobalSum { terms, lambda } => sample_global_limit(terms, *lambda, rng),
            LimitLawSpec::FiniteSupportSum { horizontal, vertical, upper, lower, lambda } => sample_finite_support_limit(
                &floats(horizontal),
                &floats(vertical),
                &floats(upper),
                &floats(lower),
                *lambda,
                rng,
            ),
            LimitLawSpec::BridgePositiveSum { levels } => sample_bridge_positive_sum(&floats(levels), rng),
        }
    }

    /// `reps` independent draws; draw `k` uses the stream keyed by `(seed, k)`.
    pub fn sample(&self, reps: usize, seed: u64) -> Result<Vec<f64>> {
        self.validate()?;
        (0..reps as u64)
            .into_par_iter()
            .map(|k| self.sample_one(&mut stream(seed, &[k])))
            .collect()
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        crate::content_hash(self)
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda < 1.0 {
        Ok(())
    } else {
        Err(Error::range("lambda", format!("{lambda} not in (0,1)")))
    }
}

fn check_level(t0: f64) -> Result<()> {
    if t0 > 0.0 && t0 < 1.0 {
        Ok(())
    } else {
        Err(Error::range("t0", format!("{t0} not in (0,1)")))
    }
}

fn check_order(r: f64) -> Result<()> {
    if r >= 1.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::range("r", format!("contact order {r} must be at least 1")))
    }
}

fn check_constant(c: f64) -> Result<()> {
    if c != 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::range("C", format!("contact constant {c} must be finite and nonzero")))
    }
}

fn check_inner(t0: f64, r_left: f64, r_right: f64, c_left: f64, c_right: f64, lambda: f64) -> Result<()> {
    check_level(t0)?;
    check_lambda(lambda)?;
    check_order(r_left)?;
    check_order(r_right)?;
    check_constant(c_left)?;
    check_constant(c_right)
}
