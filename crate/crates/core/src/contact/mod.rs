//! Contact points between two quantile functions: where they meet, how they
//! meet, and the power expansion of `Delta(h) = F_G(t0 + h) - t0 - h` there.

mod finite;
mod intensity;
mod smooth;

pub use finite::{classify_finite_support, FiniteClassification, FiniteClassificationRecord};
pub use intensity::{estimate_intensity, increment, snap_order, IntensityFit, Side};
pub(crate) use intensity::ols;
pub use smooth::{smooth_contact_constants, SmoothContactInfo};

use serde::{Deserialize, Serialize};

use crate::distmodel::Distribution;
use crate::error::{Error, Result};
use crate::fraction::to_f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    Inner,
    Extremal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactClass {
    Crossing,
    Tangency,
    VirtualHorizontalCrossing,
    VirtualVerticalCrossing,
    UpperTangency,
    LowerTangency,
}

impl ContactClass {
    pub fn is_virtual(self) -> bool {
        !matches!(self, ContactClass::Crossing | ContactClass::Tangency)
    }
}

/// Which transform was expanded: `F_G`, or `G_F` after exchanging the samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ViaFg,
    ViaGf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContactPoint {
    pub t0: f64,
    pub position: Position,
    pub class: ContactClass,
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<IntensityFit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<IntensityFit>,
}

impl ContactPoint {
    /// Exact-form contact with unit orders and the given one-sided constants.
    fn implied(t0: f64, class: ContactClass, source: Source, c_left: f64, c_right: f64) -> Self {
        let unit = |c: f64| IntensityFit { r: 1.0, c, stderr: 0.0, r_snapped: 1.0, eta: 0.0, points: 0 };
        ContactPoint {
            t0,
            position: Position::Inner,
            class,
            source,
            left: Some(unit(c_left)),
            right: Some(unit(c_right)),
        }
    }

    /// `max(r_L, r_R)` over the sides present, using snapped orders.
    pub fn order(&self) -> f64 {
        [self.left, self.right].iter().flatten().map(|s| s.r_snapped).fold(f64::NAN, f64::max)
    }
}

/// Result of a contact scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContactAnalysis {
    pub contacts: Vec<ContactPoint>,
    /// Intervals where the two quantile functions coincide.
    pub flat_segments: Vec<(f64, f64)>,
    pub grid_cells: usize,
}

impl ContactAnalysis {
    pub fn flat_measure(&self) -> f64 {
        self.flat_segments.iter().map(|(a, b)| b - a).sum()
    }
}

type Interval = (f64, f64);

pub const DEFAULT_BUDGET: usize = 1 << 14;
const ROOT_TOL: f64 = 1e-12;
const JUMP_PROBE: f64 = 1e-10;
const JUMP_THRESHOLD: f64 = 1e-9;
const WIDE_PROBE: f64 = 1e-8;
const JUMP_PERSISTENCE: f64 = 0.9;
const TANGENCY_TOL: f64 = 1e-9;
/// Fits below this order on `F_G` are taken as a failed Lipschitz probe.
const LIPSCHITZ_ORDER: f64 = 0.9;
const MAX_ETA: f64 = 0.25;

/// All contact points of the pair.
///
/// Finite laws are classified exactly; other pairs are scanned on a grid of
/// `budget` cells for sign changes of `F^{-1} - G^{-1}`, grid zeros and
/// near-zero local minima of `|F_G(t) - t|`.
pub fn find_contacts(f: &Distribution, g: &Distribution, budget: usize) -> Result<ContactAnalysis> {
    if let (Some(a), Some(b)) = (f.as_finite(), g.as_finite()) {
        return Ok(ContactAnalysis {
            contacts: finite_contacts(&classify_finite_support(a, b)),
            flat_segments: Vec::new(),
            grid_cells: 0,
        });
    }
    if budget < 4 {
        return Err(Error::range("budget", format!("{budget} cells is too coarse")));
    }
    let scan = Scan { f, g, cells: budget };
    let (candidates, flat_segments) = scan.candidates()?;
    let mut contacts = Vec::new();
    for (i, &t0) in candidates.iter().enumerate() {
        let prev = if i == 0 { 0.0 } else { candidates[i - 1] };
        let next = candidates.get(i + 1).copied().unwrap_or(1.0);
        let room = (t0 - prev).min(next - t0).min(t0).min(1.0 - t0);
        let eta = (4.0 * room).min(MAX_ETA);
        match analyze_inner(f, g, t0, eta) {
            Ok(c) => contacts.push(c),
            // One-sided agreement belongs to a flat segment, already recorded.
            Err(Error::LocallyFlat { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let (first, last) = (candidates.first().copied().unwrap_or(1.0), candidates.last().copied().unwrap_or(0.0));
    for (end, room) in [(0.0, first), (1.0, 1.0 - last)] {
        if f.quantile(end) == g.quantile(end) {
            let eta = (4.0 * room).min(MAX_ETA);
            match analyze_extremal(f, g, end, eta) {
                Ok(c) => contacts.push(c),
                Err(Error::LocallyFlat { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    contacts.sort_by(|a, b| a.t0.total_cmp(&b.t0));
    Ok(ContactAnalysis { contacts, flat_segments, grid_cells: budget })
}

fn finite_contacts(c: &FiniteClassification) -> Vec<ContactPoint> {
    let mut out: Vec<ContactPoint> = Vec::new();
    let groups = [
        (&c.horizontal, ContactClass::VirtualHorizontalCrossing, Source::ViaFg, 1.0, -1.0),
        (&c.vertical, ContactClass::VirtualVerticalCrossing, Source::ViaGf, 1.0, -1.0),
        (&c.upper, ContactClass::UpperTangency, Source::ViaFg, 1.0, 1.0),
        (&c.lower, ContactClass::LowerTangency, Source::ViaFg, -1.0, -1.0),
    ];
    for (levels, class, source, cl, cr) in groups {
        out.extend(levels.iter().map(|t| ContactPoint::implied(to_f64(t), class, source, cl, cr)));
    }
    out.sort_by(|a, b| a.t0.total_cmp(&b.t0));
    out
}

/// Classifies a known inner contact at `t0`, probing `Delta` on `(t0 - eta, t0 + eta)`.
pub fn analyze_inner(f: &Distribution, g: &Distribution, t0: f64, eta: f64) -> Result<ContactPoint> {
    if !(t0 > 0.0 && t0 < 1.0) {
        return Err(Error::range("t0", format!("{t0} is not an inner level")));
    }
    let eta = eta.min(t0).min(1.0 - t0);
    let below = f.transform(g, t0 - JUMP_PROBE);
    let above = f.transform(g, t0 + JUMP_PROBE);
    // A genuine jump does not shrink with the probe; a steep continuous rise does.
    let wide = f.transform(g, t0 + WIDE_PROBE) - f.transform(g, t0 - WIDE_PROBE);
    if above - below > JUMP_THRESHOLD && above - below > JUMP_PERSISTENCE * wide {
        if let Some(c) = virtual_class(f, g, t0, below, above, eta) {
            return Ok(c);
        }
    }
    if is_flat_through(f, g, t0, eta) {
        return Ok(ContactPoint::implied(t0, ContactClass::VirtualHorizontalCrossing, Source::ViaFg, 1.0, -1.0));
    }
    let direct = expand_both(f, g, t0, eta, Source::ViaFg)?;
    let lipschitz = [direct.left, direct.right].iter().flatten().all(|s| s.r >= LIPSCHITZ_ORDER);
    if lipschitz {
        return Ok(direct);
    }
    expand_both(g, f, t0, eta, Source::ViaGf)
}

fn expand_both(f: &Distribution, g: &Distribution, t0: f64, eta: f64, source: Source) -> Result<ContactPoint> {
    let left = estimate_intensity(f, g, t0, Side::Left, eta)?;
    let right = estimate_intensity(f, g, t0, Side::Right, eta)?;
    let class = if left.c.signum() != right.c.signum() { ContactClass::Crossing } else { ContactClass::Tangency };
    Ok(ContactPoint { t0, position: Position::Inner, class, source, left: Some(left), right: Some(right) })
}

/// `F_G` jumps at `t0`: horizontal jumps of `F_G` are vertical crossings or tangencies.
fn virtual_class(f: &Distribution, g: &Distribution, t0: f64, below: f64, above: f64, eta: f64) -> Option<ContactPoint> {
    let probe = 0.5 * eta;
    let h_left = f.transform(g, t0 - probe) - (t0 - probe);
    let h_right = f.transform(g, t0 + probe) - (t0 + probe);
    let at = |v: f64| (v - t0).abs() <= JUMP_THRESHOLD;
    let class = if below < t0 - JUMP_THRESHOLD && above > t0 + JUMP_THRESHOLD {
        ContactClass::VirtualVerticalCrossing
    } else if at(below) && above > t0 && h_left > 0.0 {
        ContactClass::UpperTangency
    } else if below < t0 && at(above) && h_right < 0.0 {
        ContactClass::LowerTangency
    } else {
        return None;
    };
    let (source, cl, cr) = match class {
        ContactClass::VirtualVerticalCrossing => (Source::ViaGf, 1.0, -1.0),
        ContactClass::UpperTangency => (Source::ViaFg, 1.0, 1.0),
        _ => (Source::ViaFg, -1.0, -1.0),
    };
    Some(ContactPoint::implied(t0, class, source, cl, cr))
}

/// `F_G` constant (equal to `t0`) on both sides: `Delta(h) = -h` exactly.
fn is_flat_through(f: &Distribution, g: &Distribution, t0: f64, eta: f64) -> bool {
    (intensity::FIRST_PROBE..=intensity::LAST_PROBE).all(|j| {
        let h = eta * 2f64.powi(-j);
        [-h, h].iter().all(|&s| (increment(f, g, t0, s) + s).abs() <= 1e-12)
    })
}

/// Expansion at `t0 = 0` (right side) or `t0 = 1` (left side).
pub fn analyze_extremal(f: &Distribution, g: &Distribution, t0: f64, eta: f64) -> Result<ContactPoint> {
    let side = if t0 == 0.0 { Side::Right } else if t0 == 1.0 { Side::Left } else {
        return Err(Error::range("t0", format!("{t0} is not 0 or 1")));
    };
    let build = |fit: IntensityFit, source| {
        let (left, right) = if side == Side::Right { (None, Some(fit)) } else { (Some(fit), None) };
        ContactPoint { t0, position: Position::Extremal, class: ContactClass::Tangency, source, left, right }
    };
    let direct = estimate_intensity(f, g, t0, side, eta)?;
    if direct.r >= LIPSCHITZ_ORDER {
        return Ok(build(direct, Source::ViaFg));
    }
    Ok(build(estimate_intensity(g, f, t0, side, eta)?, Source::ViaGf))
}

struct Scan<'a> {
    f: &'a Distribution,
    g: &'a Distribution,
    cells: usize,
}

impl Scan<'_> {
    fn diff(&self, t: f64) -> f64 {
        self.f.quantile(t) - self.g.quantile(t)
    }

    fn sign(&self, t: f64) -> i8 {
        let d = self.diff(t);
        if d > 0.0 {
            1
        } else if d < 0.0 {
            -1
        } else {
            0
        }
    }

    fn gap(&self, t: f64) -> f64 {
        (self.f.transform(self.g, t) - t).abs()
    }

    /// Candidate inner contacts and flat segments.
    fn candidates(&self) -> Result<(Vec<f64>, Vec<Interval>)> {
        let n = self.cells;
        let ts: Vec<f64> = (1..n).map(|k| k as f64 / n as f64).collect();
        let signs: Vec<i8> = ts.iter().map(|&t| self.sign(t)).collect();
        let gaps: Vec<f64> = ts.iter().map(|&t| self.gap(t)).collect();
        let mut found = Vec::new();
        let mut flats = Vec::new();
        let mut k = 0;
        while k < ts.len() {
            if signs[k] == 0 {
                let start = k;
                while k + 1 < ts.len() && signs[k + 1] == 0 {
                    k += 1;
                }
                if k > start || self.sign(ts[k] + 0.25 / n as f64) == 0 || self.sign(ts[start] - 0.25 / n as f64) == 0 {
                    let lo = if start == 0 { 0.0 } else { self.zero_edge(ts[start - 1], ts[start]) };
                    let hi = if k + 1 == ts.len() { 1.0 } else { self.zero_edge(ts[k + 1], ts[k]) };
                    flats.push((lo, hi));
                } else {
                    found.push(ts[k]);
                }
            } else if k + 1 < ts.len() && signs[k + 1] != 0 && signs[k + 1] != signs[k] {
                found.push(self.bisect(ts[k], ts[k + 1], signs[k]));
            } else if k > 0 && k + 1 < ts.len() && signs[k - 1] == signs[k] && signs[k + 1] == signs[k]
                && gaps[k] < gaps[k - 1] && gaps[k] <= gaps[k + 1]
            {
                let t = self.minimize_gap(ts[k - 1], ts[k + 1]);
                if self.gap(t) <= TANGENCY_TOL {
                    found.push(t);
                }
            }
            k += 1;
        }
        found.sort_by(f64::total_cmp);
        found.dedup_by(|a, b| (*a - *b).abs() < 1e-7);
        Ok((found, flats))
    }

    fn bisect(&self, mut a: f64, mut b: f64, sa: i8) -> f64 {
        while b - a > ROOT_TOL {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            match self.sign(mid) {
                0 => return mid,
                s if s == sa => a = mid,
                _ => b = mid,
            }
        }
        0.5 * (a + b)
    }

    /// Boundary between a nonzero point and a zero point of the difference.
    fn zero_edge(&self, mut nonzero: f64, mut zero: f64) -> f64 {
        while (zero - nonzero).abs() > ROOT_TOL {
            let mid = 0.5 * (zero + nonzero);
            if self.sign(mid) == 0 {
                zero = mid;
            } else {
                nonzero = mid;
            }
        }
        zero
    }

    /// Golden-section search for the minimum of `|F_G(t) - t|` on `[a, b]`.
    fn minimize_gap(&self, mut a: f64, mut b: f64) -> f64 {
        let ratio = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = b - ratio * (b - a);
        let mut d = a + ratio * (b - a);
        let (mut fc, mut fd) = (self.gap(c), self.gap(d));
        while b - a > ROOT_TOL {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - ratio * (b - a);
                fc = self.gap(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + ratio * (b - a);
                fd = self.gap(d);
            }
        }
        0.5 * (a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bernoulli_self_pair_is_upper_tangent() {
        let b = Distribution::bernoulli(q(3, 10)).unwrap();
        let a = find_contacts(&b, &b, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.contacts.len(), 1);
        assert_eq!(a.contacts[0].class, ContactClass::UpperTangency);
        assert!((a.contacts[0].t0 - 0.7).abs() < 1e-15);
    }

    #[test]
    fn cross_example_has_single_inner_contact() {
        for r in [0.5, 2.0] {
            let f = Distribution::power_cross(r).unwrap();
            let a = find_contacts(&f, &Distribution::Uniform01, DEFAULT_BUDGET).unwrap();
            assert_eq!(a.contacts.len(), 1, "r = {r}: {a:?}");
            let c = &a.contacts[0];
            assert!((c.t0 - 0.5).abs() < 1e-9);
            assert_eq!(c.class, ContactClass::Crossing);
            assert_eq!(c.order(), 1.0);
            let expect_source = if r < 1.0 { Source::ViaFg } else { Source::ViaGf };
            assert_eq!(c.source, expect_source, "r = {r}");
        }
    }

    #[test]
    fn tangent_example_has_order_two_crossing() {
        let g = Distribution::power_tangent(2.0).unwrap();
        let a = find_contacts(&Distribution::Uniform01, &g, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.contacts.len(), 1);
        let c = &a.contacts[0];
        assert_eq!(c.class, ContactClass::Crossing);
        assert_eq!(c.order(), 2.0);
        assert!((c.right.unwrap().c - 1.0).abs() < 0.02);
        assert!((c.left.unwrap().c + 1.0).abs() < 0.02);
    }

    #[test]
    fn location_models_touch_at_both_ends() {
        let f = Distribution::normal(0.0, 1.0).unwrap();
        let g = Distribution::normal(1.0, 1.0).unwrap();
        let a = find_contacts(&f, &g, DEFAULT_BUDGET).unwrap();
        let ends: Vec<f64> = a.contacts.iter().map(|c| c.t0).collect();
        assert_eq!(ends, vec![0.0, 1.0]);
        assert!(a.contacts.iter().all(|c| c.position == Position::Extremal));
        assert_eq!(a.contacts[0].source, Source::ViaGf);

        let f = Distribution::student_t_shift(1.0, 0.0).unwrap();
        let g = Distribution::student_t_shift(1.0, 1.0).unwrap();
        let a = find_contacts(&f, &g, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.contacts.len(), 2);
        for c in &a.contacts {
            assert_eq!(c.order(), 2.0, "{c:?}");
        }
    }

    #[test]
    fn identical_continuous_laws_form_one_flat_segment() {
        let f = Distribution::normal(0.0, 1.0).unwrap();
        let a = find_contacts(&f, &f, 1024).unwrap();
        assert!(a.contacts.is_empty(), "{a:?}");
        assert_eq!(a.flat_segments, vec![(0.0, 1.0)]);
    }

    #[test]
    fn scale_pair_crosses_once_at_median() {
        let f = Distribution::normal(0.0, 1.0).unwrap();
        let g = Distribution::normal(0.0, 2.0).unwrap();
        let a = find_contacts(&f, &g, DEFAULT_BUDGET).unwrap();
        let inner: Vec<&ContactPoint> = a.contacts.iter().filter(|c| c.position == Position::Inner).collect();
        assert_eq!(inner.len(), 1);
        assert!((inner[0].t0 - 0.5).abs() < 1e-9);
        assert_eq!(inner[0].class, ContactClass::Crossing);
        // Swapping the laws keeps the crossing label.
        let b = find_contacts(&g, &f, DEFAULT_BUDGET).unwrap();
        let swapped: Vec<&ContactPoint> = b.contacts.iter().filter(|c| c.position == Position::Inner).collect();
        assert_eq!(swapped[0].class, ContactClass::Crossing);
    }

    #[test]
    fn piecewise_jump_gives_vertical_crossing() {
        use crate::distmodel::{PiecewiseQuantile, Segment};
        // H^{-1}(t) = t -+ 0.1 jumps across the diagonal at t = 1/2.
        let h = Distribution::PiecewiseQuantile(
            PiecewiseQuantile::new(vec![0.5], vec![Segment::affine(-0.1, 1.0), Segment::affine(0.1, 1.0)]).unwrap(),
        );
        let inner = |a: ContactAnalysis| -> Vec<ContactPoint> {
            a.contacts.into_iter().filter(|c| c.position == Position::Inner).collect()
        };
        // F_G = H^{-1} clipped: jumps over the diagonal.
        let a = inner(find_contacts(&Distribution::Uniform01, &h, DEFAULT_BUDGET).unwrap());
        assert_eq!(a.len(), 1, "{a:?}");
        assert_eq!(a[0].class, ContactClass::VirtualVerticalCrossing);
        assert_eq!(a[0].source, Source::ViaGf);
        // F_G = H, flat at 1/2 on (0.4, 0.6).
        let b = inner(find_contacts(&h, &Distribution::Uniform01, DEFAULT_BUDGET).unwrap());
        assert_eq!(b.len(), 1, "{b:?}");
        assert_eq!(b[0].class, ContactClass::VirtualHorizontalCrossing);
    }
}
