//! Floating-point services over the exact polynomials: evaluation, the parametric offset oracle,
//! implicit curve tracing and SVG figures.

mod svg;
mod trace;

use serde::{Deserialize, Serialize};

use crate::conics::ConicSpec;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::to_f64;

pub use svg::{plot_svg, render_svg, Figure, Marker, SvgStyle};
pub use trace::{trace_implicit, BBox, TracedCurve};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dist(&self, o: &Point2) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }
}

/// A polynomial in two named variables with float coefficients, for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct FloatPoly2 {
    terms: Vec<(f64, i32, i32)>,
    max_x: i32,
    max_y: i32,
    scale: f64,
}

impl FloatPoly2 {
    /// `g` must live in a ring whose variables are exactly `xv` and `yv` (either order).
    pub fn new(g: &MultiPoly, xv: &str, yv: &str) -> Result<Self> {
        let ring = g.ring();
        if let Some(v) = ring.vars().iter().find(|v| v.as_str() != xv && v.as_str() != yv) {
            return Err(Error::Var(v.clone()));
        }
        let ix = ring.index(xv).ok();
        let iy = ring.index(yv).ok();
        let terms: Vec<(f64, i32, i32)> = g
            .terms()
            .map(|(m, c)| {
                let e = m.exps();
                (to_f64(c), ix.map_or(0, |i| e[i] as i32), iy.map_or(0, |i| e[i] as i32))
            })
            .collect();
        let max_x = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let max_y = terms.iter().map(|t| t.2).max().unwrap_or(0);
        Ok(FloatPoly2 { terms, max_x, max_y, scale: g.max_abs_coeff() })
    }

    /// Largest absolute coefficient, the scale for residual tolerances.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    fn powers(v: f64, n: i32) -> Vec<f64> {
        let mut out = Vec::with_capacity(n as usize + 1);
        let mut acc = 1.0;
        for _ in 0..=n {
            out.push(acc);
            acc *= v;
        }
        out
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let px = Self::powers(x, self.max_x);
        let py = Self::powers(y, self.max_y);
        self.terms.iter().map(|(c, i, j)| c * px[*i as usize] * py[*j as usize]).sum()
    }

    /// Value and gradient.
    pub fn eval_grad(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let px = Self::powers(x, self.max_x);
        let py = Self::powers(y, self.max_y);
        let (mut v, mut gx, mut gy) = (0.0, 0.0, 0.0);
        for (c, i, j) in &self.terms {
            let (i, j) = (*i as usize, *j as usize);
            v += c * px[i] * py[j];
            if i > 0 {
                gx += c * i as f64 * px[i - 1] * py[j];
            }
            if j > 0 {
                gy += c * j as f64 * px[i] * py[j - 1];
            }
        }
        (v, gx, gy)
    }
}

/// Float value of `g` at `pt`; `g` must be a polynomial in `x` and `y` only.
pub fn eval_poly(g: &MultiPoly, pt: Point2) -> Result<f64> {
    Ok(FloatPoly2::new(g, "x", "y")?.eval(pt.x, pt.y))
}

/// Float value with every ring variable assigned by name.
pub fn eval_with(g: &MultiPoly, assignments: &[(&str, f64)]) -> Result<f64> {
    let point = g
        .ring()
        .vars()
        .iter()
        .map(|v| assignments.iter().find(|(n, _)| n == v).map(|(_, val)| *val).ok_or_else(|| Error::Var(v.clone())))
        .collect::<Result<Vec<f64>>>()?;
    Ok(g.eval_f64(&point))
}

/// Unit normal of the conic at a point on it: the normalized gradient of its defining polynomial
/// (scaled so the parabola normal at the vertex is `+y`, the central-conic normals point outward).
pub fn unit_normal(conic: &ConicSpec, base: Point2) -> Point2 {
    let (nx, ny) = match conic {
        // gradient of 4 p y − x², divided by 4p
        ConicSpec::Parabola { p } => {
            let p = to_f64(p);
            (-base.x / (2.0 * p), 1.0)
        }
        // gradient of y²/a² + x²/b²
        ConicSpec::Ellipse { a, b } => {
            let (a, b) = (to_f64(a), to_f64(b));
            (base.x / (b * b), base.y / (a * a))
        }
        // gradient of y²/a² − x²/b²
        ConicSpec::Hyperbola { a, b } => {
            let (a, b) = (to_f64(a), to_f64(b));
            (-base.x / (b * b), base.y / (a * a))
        }
    };
    let len = nx.hypot(ny);
    Point2::new(nx / len, ny / len)
}

/// `base ± r·n` for a base point on the conic.
pub fn offset_points(conic: &ConicSpec, base: Point2, r: f64) -> [Point2; 2] {
    let n = unit_normal(conic, base);
    [Point2::new(base.x + r * n.x, base.y + r * n.y), Point2::new(base.x - r * n.x, base.y - r * n.y)]
}

/// Half-width of the parabola sweep `x₀ ∈ [−w, w]`.
const PARABOLA_SWEEP: f64 = 3.0;

/// `n` points on the conic: parabola `x₀ ∈ [−3, 3]`; ellipse a full turn; hyperbola both branches
/// with `|t| ≤ asinh 3`.
pub fn conic_samples(conic: &ConicSpec, n: usize) -> Result<Vec<Point2>> {
    if n < 2 {
        return Err(Error::Param(format!("need at least 2 samples, got {n}")));
    }
    let lin = |lo: f64, hi: f64, k: usize, m: usize| lo + (hi - lo) * k as f64 / (m - 1).max(1) as f64;
    Ok(match conic {
        ConicSpec::Parabola { p } => {
            let p = to_f64(p);
            (0..n)
                .map(|k| {
                    let x = lin(-PARABOLA_SWEEP, PARABOLA_SWEEP, k, n);
                    Point2::new(x, x * x / (4.0 * p))
                })
                .collect()
        }
        ConicSpec::Ellipse { a, b } => {
            let (a, b) = (to_f64(a), to_f64(b));
            (0..n)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / n as f64;
                    Point2::new(b * t.cos(), a * t.sin())
                })
                .collect()
        }
        ConicSpec::Hyperbola { a, b } => {
            let (a, b) = (to_f64(a), to_f64(b));
            let tmax = 3f64.asinh();
            let upper = n.div_ceil(2);
            let lower = n - upper;
            let branch = |m: usize, s: f64| {
                (0..m).map(move |k| {
                    let t = lin(-tmax, tmax, k, m);
                    Point2::new(b * t.sinh(), s * a * t.cosh())
                })
            };
            branch(upper, 1.0).chain(branch(lower, -1.0)).collect()
        }
    })
}

/// `2n` points: each of `n` conic samples displaced by `±r` along the unit normal.
pub fn parametric_offset_samples(conic: &ConicSpec, r: f64, n: usize) -> Result<Vec<Point2>> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Param(format!("offset r must be positive, got {r}")));
    }
    Ok(conic_samples(conic, n)?.into_iter().flat_map(|b| offset_points(conic, b, r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conics::offset_poly_closed_form;
    use crate::poly::Ring;
    use crate::rational::{int, rat};

    #[test]
    fn evaluation() {
        let ring = Ring::new(&["x", "y"]).unwrap();
        let c = MultiPoly::parse("x^2 + y^2 - 1", &ring).unwrap();
        assert_eq!(eval_poly(&c, Point2::new(1.0, 0.0)).unwrap(), 0.0);
        assert_eq!(eval_poly(&c, Point2::new(2.0, 0.0)).unwrap(), 3.0);
        let r3 = Ring::new(&["x", "y", "z"]).unwrap();
        let z = MultiPoly::parse("x + z", &r3).unwrap();
        assert!(eval_poly(&z, Point2::new(1.0, 0.0)).is_err());
        assert_eq!(eval_with(&z, &[("x", 1.0), ("z", 2.0), ("y", 0.0)]).unwrap(), 3.0);
        assert!(eval_with(&z, &[("x", 1.0)]).is_err());
        let (v, gx, gy) = FloatPoly2::new(&c, "x", "y").unwrap().eval_grad(1.0, 2.0);
        assert_eq!((v, gx, gy), (4.0, 2.0, 4.0));
    }

    #[test]
    fn vertex_normals() {
        let p = ConicSpec::parabola(rat(1, 3)).unwrap();
        let [o, i] = offset_points(&p, Point2::new(0.0, 0.0), 0.25);
        assert_eq!((o.x, o.y, i.x, i.y), (0.0, 0.25, 0.0, -0.25));
        let e = ConicSpec::ellipse(int(3), rat(3, 2)).unwrap();
        let [o, i] = offset_points(&e, Point2::new(0.0, 3.0), 0.5);
        assert_eq!((o.y, i.y), (3.5, 2.5));
    }

    #[test]
    fn samples_lie_on_the_offset_variety() {
        let specs = [
            (ConicSpec::parabola(rat(1, 3)).unwrap(), rat(3, 2)),
            (ConicSpec::ellipse(int(3), rat(3, 2)).unwrap(), rat(1, 2)),
            (ConicSpec::hyperbola(rat(3, 2), int(1)).unwrap(), rat(4, 3)),
        ];
        for (c, r) in specs.clone() {
            let g = offset_poly_closed_form(&c, &r).unwrap().g;
            let f = FloatPoly2::new(&g, "x", "y").unwrap();
            let pts = parametric_offset_samples(&c, to_f64(&r), 101).unwrap();
            assert_eq!(pts.len(), 202);
            for p in pts {
                assert!(f.eval(p.x, p.y).abs() <= 1e-7 * f.scale(), "{c:?} {p:?}");
            }
        }
        assert!(parametric_offset_samples(&specs[0].0, 0.0, 10).is_err());
        assert!(conic_samples(&specs[0].0, 1).is_err());
    }
}
