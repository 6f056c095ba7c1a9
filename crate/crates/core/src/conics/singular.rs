//! Closed-form singular points of the offset variety, evaluated with high-precision radicals.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{offset_poly_closed_form, r_crit, ConicSpec};
use crate::error::Result;
use crate::highprec::Real;
use crate::poly::MultiPoly;
use crate::rational::{format_rational, serialize_rational, Rational};
use crate::univariate::{rational_sqrt, RealRoot};

/// Values whose magnitude is below `2^-ZERO_BITS` are radical-evaluation noise around an exact zero.
pub(crate) const ZERO_BITS: u32 = 200;

/// Where the offset `r` sits relative to the critical offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

impl Regime {
    pub fn of(conic: &ConicSpec, r: &Rational) -> Regime {
        match r.cmp(&r_crit(conic)) {
            Ordering::Less => Regime::Subcritical,
            Ordering::Equal => Regime::Critical,
            Ordering::Greater => Regime::Supercritical,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::Subcritical => "subcritical",
            Regime::Critical => "critical",
            Regime::Supercritical => "supercritical",
        };
        f.write_str(s)
    }
}

/// How a singular point relates to the smooth part of the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PointTag {
    /// Isolated real point off the traced branches (below the critical offset).
    Virtual,
    /// Lies on the traced branches (on the axis of symmetry at or above the critical offset).
    OnCurve,
    /// One of the extra points that appear above the critical offset.
    Split,
}

impl PointTag {
    /// Axis points (on the symmetry axis through the vertex) change character with the regime;
    /// every other point is a split point.
    pub(crate) fn for_point(regime: Regime, on_axis: bool) -> PointTag {
        match (on_axis, regime) {
            (true, Regime::Subcritical) => PointTag::Virtual,
            (true, _) => PointTag::OnCurve,
            (false, _) => PointTag::Split,
        }
    }
}

impl fmt::Display for PointTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PointTag::Virtual => "virtual",
            PointTag::OnCurve => "on-curve",
            PointTag::Split => "split",
        };
        f.write_str(s)
    }
}

/// A coordinate: exact when rational, otherwise a float rounded from a high-precision value.
#[derive(Clone, Debug, PartialEq)]
pub enum Coord {
    Exact(Rational),
    Float(f64),
}

impl Coord {
    pub fn to_f64(&self) -> f64 {
        match self {
            Coord::Exact(q) => crate::rational::to_f64(q),
            Coord::Float(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Coord::Exact(q) => Some(q),
            Coord::Float(_) => None,
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Exact(q) => f.write_str(&format_rational(q)),
            Coord::Float(v) => write!(f, "{v:.15}"),
        }
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Coord", 2)?;
        st.serialize_field("exact", &self.exact().map(format_rational))?;
        st.serialize_field("value", &self.to_f64())?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularPoint {
    pub x: Coord,
    pub y: Coord,
    pub tag: PointTag,
    /// `|g|` at the float point divided by the largest absolute coefficient of `g`.
    pub residual_g: f64,
    /// `max(|∂g/∂x|, |∂g/∂y|)` at the float point, scaled the same way.
    pub residual_grad: f64,
    #[serde(skip)]
    pub(crate) hx: Real,
    #[serde(skip)]
    pub(crate) hy: Real,
}

impl SingularPoint {
    /// High-precision coordinates.
    pub fn high_precision(&self) -> (&Real, &Real) {
        (&self.hx, &self.hy)
    }

    pub fn xy(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularPointReport {
    pub conic: String,
    #[serde(serialize_with = "serialize_rational")]
    pub r: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub r_crit: Rational,
    pub regime: Regime,
    pub points: Vec<SingularPoint>,
    /// Number of non-real points among the closed-form solutions.
    pub complex_count: usize,
    /// Set when `r ≥ a` for the ellipse or hyperbola, where the vertex-axis points become real.
    pub outside_primary_assumption: bool,
}

impl SingularPointReport {
    pub fn count(&self, tag: PointTag) -> usize {
        self.points.iter().filter(|p| p.tag == tag).count()
    }
}

/// A candidate point before deduplication and residual evaluation.
pub(crate) struct Candidate {
    pub x: RealRoot,
    pub y: RealRoot,
}

fn real_zero(v: &Real) -> bool {
    v.close_to(&Real::zero(), ZERO_BITS)
}

/// `√q` when `q ≥ 0`, exact if `q` is a rational square.
fn sqrt_rational(q: &Rational) -> Option<RealRoot> {
    if q.is_negative() {
        return None;
    }
    Some(match rational_sqrt(q) {
        Some(s) => RealRoot::exact(s),
        None => RealRoot::approx(Real::from_rational(q).sqrt().ok()?),
    })
}

/// `√v` for a high-precision value, treating tiny negatives as zero; `None` when clearly negative.
fn sqrt_real(v: &Real) -> Option<RealRoot> {
    if real_zero(v) {
        return Some(RealRoot::exact(Rational::zero()));
    }
    if v.is_negative() {
        return None;
    }
    v.sqrt().ok().map(RealRoot::approx)
}

fn neg(v: &RealRoot) -> RealRoot {
    RealRoot { value: -&v.value, exact: v.exact.as_ref().map(|q| -q) }
}

fn zero_root() -> RealRoot {
    RealRoot::exact(Rational::zero())
}

/// `(±x, ±y)` with duplicates removed later.
fn quadrant_points(x: &RealRoot, y: &RealRoot, out: &mut Vec<Candidate>) {
    for sx in [false, true] {
        for sy in [false, true] {
            let cx = if sx { neg(x) } else { x.clone() };
            let cy = if sy { neg(y) } else { y.clone() };
            out.push(Candidate { x: cx, y: cy });
        }
    }
}

fn q(v: &Rational) -> Real {
    Real::from_rational(v)
}

fn n(v: i64) -> Real {
    Real::from_int(v)
}

/// Closed-form candidates and the number of non-real formula points.
fn parabola_points(p: &Rational, r: &Rational, regime: Regime) -> Result<(Vec<Candidate>, usize)> {
    // reflect p < 0 onto p > 0 via (y, p) ↦ (−y, −p)
    let flip = p.is_negative();
    let p = p.abs();
    let mut out = Vec::new();
    let four = Rational::from_integer(4.into());
    let s1 = &p + r * r / (&four * &p);
    out.push(Candidate { x: zero_root(), y: RealRoot::exact(s1) });
    let mut complex = 0;
    match regime {
        Regime::Subcritical => complex = 2,
        Regime::Critical => {}
        Regime::Supercritical => {
            let (pr, rr) = (q(&p), q(r));
            let c2 = n(2).cbrt();
            let c22 = &c2 * &c2;
            let k = (&pr * &rr.powi(2)).cbrt();
            let (p2, r2, k2) = (pr.powi(2), rr.powi(2), k.powi(2));
            let alpha2 = (&k2 * &r2 + n(6) * &r2 * &p2 * &c2 - n(3) * &k * &pr * &r2 * &c22 - n(4) * &k2 * &p2) / &k2;
            let pp = |e: u32| pr.powi(e);
            let rp = |e: u32| rr.powi(e);
            let beta = &pr
                * &r2
                * (n(22) * rp(6) * &k2 + n(1452) * rp(6) * pp(2) * &c2 + n(7456) * pp(3) * rp(4) * &c22 * &k
                    - n(6560) * pp(2) * rp(4) * &k2
                    - n(15488) * pp(4) * rp(4) * &c2
                    - n(39680) * pp(5) * rp(2) * &c22 * &k
                    + n(37600) * pp(4) * rp(2) * &k2
                    + n(7936) * pp(8) * &c2
                    - n(15872) * pp(7) * &c22 * &k
                    + n(45760) * pp(6) * rp(2) * &c2
                    - n(33) * rp(8) * &c2
                    - n(5376) * pp(6) * &k2);
            let gamma = n(2)
                * &k
                * (n(8640) * pp(6) * rp(2) * &k - n(3968) * pp(7) * &c2 * &k2 + n(1984) * pp(7) * rp(2) * &c22
                    - n(3920) * rp(4) * pp(4) * &k
                    - n(9920) * pp(5) * rp(2) * &c2 * &k2
                    + n(4960) * pp(5) * rp(4) * &c22
                    + n(484) * rp(6) * pp(2) * &k
                    + n(1864) * pp(3) * rp(4) * &c2 * &k2
                    - n(932) * pp(3) * rp(6) * &c22
                    - n(11) * rp(8) * &k);
            match sqrt_real(&alpha2) {
                Some(x) if !real_zero(&gamma) => {
                    let y = RealRoot::approx(&beta / &gamma);
                    out.push(Candidate { x: x.clone(), y: y.clone() });
                    out.push(Candidate { x: neg(&x), y });
                }
                _ => complex = 2,
            }
        }
    }
    if flip {
        for c in &mut out {
            c.y = neg(&c.y);
        }
    }
    Ok((out, complex))
}

/// Pushes `(0, ±√qy)` or counts two complex points.
fn axis_pair(qv: &Rational, vertical: bool, out: &mut Vec<Candidate>) -> usize {
    match sqrt_rational(qv) {
        Some(s) => {
            for v in [s.clone(), neg(&s)] {
                out.push(if vertical { Candidate { x: zero_root(), y: v } } else { Candidate { x: v, y: zero_root() } });
            }
            0
        }
        None => 2,
    }
}

/// `(±√x², ±√y²)` or four complex points.
fn split_quad(x2: &Real, y2: &Real, out: &mut Vec<Candidate>) -> usize {
    match (sqrt_real(x2), sqrt_real(y2)) {
        (Some(x), Some(y)) => {
            quadrant_points(&x, &y, out);
            0
        }
        _ => 4,
    }
}

fn ellipse_points(a: &Rational, b: &Rational, r: &Rational, regime: Regime) -> (Vec<Candidate>, usize) {
    let mut out = Vec::new();
    let (a2, b2, r2) = (a * a, b * b, r * r);
    let c2 = &a2 - &b2;
    let mut complex = axis_pair(&(-(&c2) * (&r2 - &b2) / &b2), true, &mut out);
    complex += axis_pair(&(&c2 * (&r2 - &a2) / &a2), false, &mut out);
    if regime != Regime::Critical {
        let (ar, br, rr) = (q(a), q(b), q(r));
        let k = (&ar * &br * &rr).cbrt();
        let (k2, a2r, b2r, r2r) = (k.powi(2), q(&a2), q(&b2), q(&r2));
        let delta = -n(3) * &b2r * &a2r * &r2r + &r2r * &a2r * &k2 + n(3) * &k * br.powi(3) * &ar * &rr - b2r.powi(2) * &k2;
        let eps = -a2r.powi(2) * &k2 + n(3) * &k * &br * &rr * ar.powi(3) - n(3) * &b2r * &a2r * &r2r + &k2 * &b2r * &r2r;
        let m = q(&(&b2 - &a2));
        let x2 = -(&delta / (&m * &k2));
        let y2 = &eps / (&k2 * &m);
        complex += split_quad(&x2, &y2, &mut out);
    }
    (out, complex)
}

fn hyperbola_points(a: &Rational, b: &Rational, r: &Rational, regime: Regime) -> (Vec<Candidate>, usize) {
    let mut out = Vec::new();
    let (a2, b2, r2) = (a * a, b * b, r * r);
    let c2 = &a2 + &b2;
    let mut complex = axis_pair(&(&c2 * (&r2 + &b2) / &b2), true, &mut out);
    complex += axis_pair(&(&c2 * (&r2 - &a2) / &a2), false, &mut out);
    if regime != Regime::Critical {
        let (ar, br, rr) = (q(a), q(b), q(r));
        let k = (&rr * &br).cbrt();
        let a13 = ar.cbrt();
        let (a23, a43) = (a13.powi(2), a13.powi(4));
        let a83 = a43.powi(2);
        let (k2, a2r, b2r, r2r) = (k.powi(2), q(&a2), q(&b2), q(&r2));
        let delta = n(3) * &b2r * &a43 * &r2r - &r2r * &a2r * &k2 - n(3) * &a23 * &k * br.powi(3) * &rr + b2r.powi(2) * &k2;
        let eps = a2r.powi(2) * &k + &b2r * &r2r * &k + n(3) * &br * &a43 * &rr * &k2 + n(3) * &a83 * &br * &rr;
        let cr = q(&c2);
        let x2 = -(&delta / (&cr * &k2));
        let y2 = &eps / (&k * &cr);
        complex += split_quad(&x2, &y2, &mut out);
    }
    (out, complex)
}

/// Drops later candidates that coincide with an earlier one.
pub(crate) fn dedupe(cands: Vec<Candidate>) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = Vec::new();
    for c in cands {
        let dup = out.iter().any(|o| o.x.value.close_to(&c.x.value, ZERO_BITS) && o.y.value.close_to(&c.y.value, ZERO_BITS));
        if !dup {
            out.push(c);
        }
    }
    out
}

fn to_coord(v: &RealRoot) -> Coord {
    match &v.exact {
        Some(q) => Coord::Exact(q.clone()),
        None => Coord::Float(v.to_f64()),
    }
}

/// Exact residuals of `g` and `∇g` at the float-rounded point, relative to the largest coefficient.
pub(crate) fn residuals(g: &MultiPoly, grad: &[MultiPoly], x: f64, y: f64) -> Result<(f64, f64)> {
    let scale = g.max_abs_coeff();
    let pt = [float_rational(x), float_rational(y)];
    let rg = crate::rational::to_f64(&g.eval_rational(&pt)?).abs() / scale;
    let mut rgrad: f64 = 0.0;
    for d in grad {
        rgrad = rgrad.max(crate::rational::to_f64(&d.eval_rational(&pt)?).abs() / scale);
    }
    Ok((rg, rgrad))
}

/// The exact value of a finite float.
pub(crate) fn float_rational(v: f64) -> Rational {
    Rational::from_float(v).unwrap_or_else(Rational::zero)
}

/// Orders points by `x`, then `y` (float values).
pub(crate) fn sort_points(points: &mut [SingularPoint]) {
    points.sort_by(|p, q| p.hx.cmp(&q.hx).then_with(|| p.hy.cmp(&q.hy)));
}

/// Builds the final report from deduplicated candidates.
pub(crate) fn assemble(
    conic: &ConicSpec,
    r: &Rational,
    g: &MultiPoly,
    cands: Vec<Candidate>,
    complex_count: usize,
) -> Result<SingularPointReport> {
    let regime = Regime::of(conic, r);
    let grad = super::gradient(g, &["x", "y"])?;
    let mut points = Vec::new();
    for c in dedupe(cands) {
        let x = to_coord(&c.x);
        let y = to_coord(&c.y);
        let (rg, rgrad) = residuals(g, &grad, x.to_f64(), y.to_f64())?;
        // parabola: the axis is x = 0; ellipse/hyperbola: the major (vertex) axis, also x = 0
        let on_axis = c.x.value.close_to(&Real::zero(), ZERO_BITS);
        points.push(SingularPoint {
            tag: PointTag::for_point(regime, on_axis),
            x,
            y,
            residual_g: rg,
            residual_grad: rgrad,
            hx: c.x.value,
            hy: c.y.value,
        });
    }
    sort_points(&mut points);
    let outside = match conic {
        ConicSpec::Parabola { .. } => false,
        ConicSpec::Ellipse { a, .. } | ConicSpec::Hyperbola { a, .. } => r >= a,
    };
    Ok(SingularPointReport {
        conic: conic.describe(),
        r: r.clone(),
        r_crit: r_crit(conic),
        regime,
        points,
        complex_count,
        outside_primary_assumption: outside,
    })
}

/// Real singular points of the offset variety from the closed-form expressions.
pub fn singular_points(conic: &ConicSpec, r: &Rational) -> Result<SingularPointReport> {
    let curve = offset_poly_closed_form(conic, r)?;
    let regime = Regime::of(conic, r);
    let (cands, complex) = match conic {
        ConicSpec::Parabola { p } => parabola_points(p, r, regime)?,
        ConicSpec::Ellipse { a, b } => ellipse_points(a, b, r, regime),
        ConicSpec::Hyperbola { a, b } => hyperbola_points(a, b, r, regime),
    };
    assemble(conic, r, &curve.g, cands, complex)
}
