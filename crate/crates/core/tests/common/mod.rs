//! Independent oracles: conic parametrizations with hand-written derivatives, curvature,
//! cusp (centre of curvature) points and a plain float evaluator. Nothing here calls the
//! library's algebra; only `ConicSpec` is used to read parameters.

#![allow(dead_code)]

use parlines::conics::ConicSpec;
use parlines::rational::to_f64;
use parlines::MultiPoly;

/// Position, first and second derivative of a regular parametrization at `t`.
pub struct Jet {
    pub p: (f64, f64),
    pub d1: (f64, f64),
    pub d2: (f64, f64),
}

/// Parabola `(t, t²/(4p))`; ellipse `(b cos t, a sin t)`; upper hyperbola branch `(b sinh t, a cosh t)`.
pub fn jet(conic: &ConicSpec, t: f64) -> Jet {
    match conic {
        ConicSpec::Parabola { p } => {
            let p = to_f64(p);
            Jet { p: (t, t * t / (4.0 * p)), d1: (1.0, t / (2.0 * p)), d2: (0.0, 1.0 / (2.0 * p)) }
        }
        ConicSpec::Ellipse { a, b } => {
            let (a, b) = (to_f64(a), to_f64(b));
            Jet {
                p: (b * t.cos(), a * t.sin()),
                d1: (-b * t.sin(), a * t.cos()),
                d2: (-b * t.cos(), -a * t.sin()),
            }
        }
        ConicSpec::Hyperbola { a, b } => {
            let (a, b) = (to_f64(a), to_f64(b));
            Jet {
                p: (b * t.sinh(), a * t.cosh()),
                d1: (b * t.cosh(), a * t.sinh()),
                d2: (b * t.sinh(), a * t.cosh()),
            }
        }
    }
}

/// Parameter range covering the region where the curvature peaks.
pub fn param_range(conic: &ConicSpec) -> (f64, f64) {
    match conic {
        ConicSpec::Parabola { p } => {
            let w = 8.0 * to_f64(p).abs();
            (-w, w)
        }
        ConicSpec::Ellipse { .. } => (0.0, std::f64::consts::TAU),
        ConicSpec::Hyperbola { .. } => (-3.0, 3.0),
    }
}

/// Signed curvature `(ẋÿ − ẏẍ)/|β̇|³`.
pub fn signed_curvature(conic: &ConicSpec, t: f64) -> f64 {
    let j = jet(conic, t);
    let cross = j.d1.0 * j.d2.1 - j.d1.1 * j.d2.0;
    cross / j.d1.0.hypot(j.d1.1).powi(3)
}

/// `|β̇×β̈|/|β̇|³`.
pub fn curvature(conic: &ConicSpec, t: f64) -> f64 {
    signed_curvature(conic, t).abs()
}

/// Maximum curvature: dense scan, then golden-section refinement around the best sample.
pub fn max_curvature(conic: &ConicSpec) -> f64 {
    let (lo, hi) = param_range(conic);
    let n = 4000;
    let h = (hi - lo) / n as f64;
    let best = (0..=n).map(|k| lo + h * k as f64).max_by(|s, t| curvature(conic, *s).total_cmp(&curvature(conic, *t))).unwrap();
    let (mut a, mut b) = (best - h, best + h);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if curvature(conic, c) > curvature(conic, d) {
            b = d;
        } else {
            a = c;
        }
    }
    curvature(conic, (a + b) / 2.0)
}

/// Centre of curvature at `t`: `β + N/κ` with `N` the unit normal towards the concave side.
pub fn centre_of_curvature(conic: &ConicSpec, t: f64) -> (f64, f64) {
    let j = jet(conic, t);
    let k = signed_curvature(conic, t);
    let len = j.d1.0.hypot(j.d1.1);
    let n = (-j.d1.1 / len, j.d1.0 / len);
    (j.p.0 + n.0 / k, j.p.1 + n.1 / k)
}

/// Cusps of the inner parallel line at distance `r`: centres of curvature where the radius of
/// curvature equals `r`, found by bisection on `κ(t) − 1/r`. Also mirrored to the lower branch
/// for the hyperbola.
pub fn cusps(conic: &ConicSpec, r: f64) -> Vec<(f64, f64)> {
    let (lo, hi) = param_range(conic);
    let f = |t: f64| curvature(conic, t) - 1.0 / r;
    let n = 20000;
    let h = (hi - lo) / n as f64;
    let mut out: Vec<(f64, f64)> = Vec::new();
    for k in 0..n {
        let (mut a, mut b) = (lo + h * k as f64, lo + h * (k + 1) as f64);
        if f(a) == 0.0 || f(a).signum() == f(b).signum() {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if f(m).signum() == f(a).signum() {
                a = m;
            } else {
                b = m;
            }
        }
        let c = centre_of_curvature(conic, 0.5 * (a + b));
        out.push(c);
        if matches!(conic, ConicSpec::Hyperbola { .. }) {
            out.push((c.0, -c.1));
        }
    }
    out
}

/// `Σ c·xⁱyʲ` in plain floats over a polynomial in `x` and `y`.
pub fn eval_xy(g: &MultiPoly, x: f64, y: f64) -> f64 {
    let ring = g.ring();
    let ix = ring.index("x").ok();
    let iy = ring.index("y").ok();
    g.terms()
        .map(|(m, c)| {
            let e = m.exps();
            to_f64(c) * x.powi(ix.map_or(0, |i| e[i] as i32)) * y.powi(iy.map_or(0, |i| e[i] as i32))
        })
        .sum()
}

/// Largest absolute coefficient.
pub fn scale(g: &MultiPoly) -> f64 {
    g.terms().map(|(_, c)| to_f64(c).abs()).fold(0.0, f64::max)
}

/// Every expected point has a computed point within `tol` (max-norm) and the counts agree.
pub fn same_points(got: &[(f64, f64)], want: &[(f64, f64)], tol: f64) -> Result<(), String> {
    if got.len() != want.len() {
        return Err(format!("{} points, expected {}: {got:?} vs {want:?}", got.len(), want.len()));
    }
    for w in want {
        let d = got.iter().map(|g| (g.0 - w.0).abs().max((g.1 - w.1).abs())).fold(f64::INFINITY, f64::min);
        if d > tol {
            return Err(format!("no computed point within {tol:e} of {w:?} (closest {d:e}); got {got:?}"));
        }
    }
    Ok(())
}
