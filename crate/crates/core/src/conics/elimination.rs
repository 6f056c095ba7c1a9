//! Singular points by elimination: solve `g = ∂g/∂x = ∂g/∂y = 0` through univariate eliminants.
//!
//! The offset polynomials are even in `x` (and, for the central conics, in `y`), so the system is
//! first rewritten in `u = x²` (resp. `v = y²`). With `g = G(x², y)` the gradient condition
//! `∂g/∂x = 2x·G_u = 0` splits into the axis case `x = 0` and the generic case `G_u = 0`; the
//! generic system `G = G_u = G_v = 0` is solved by two lexicographic bases whose last elements are
//! univariate in `u` and in `v`. Root pairs are then matched by high-precision residuals.

use num_traits::{Signed, Zero};

use super::singular::{assemble, Candidate, SingularPointReport, ZERO_BITS};
use super::{offset_poly_closed_form, ConicSpec};
use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerLimits, Ideal};
use crate::highprec::Real;
use crate::poly::{MonomialOrder, MultiPoly, Ring};
use crate::rational::Rational;
use crate::univariate::{solve_cubic, solve_quadratic, RealRoot, UniPoly};

/// Residuals below `2^-PAIR_TIGHT` (relative) accept a root pair.
const PAIR_TIGHT: u32 = 150;
/// Residuals above `2^-PAIR_LOOSE` reject it; anything in between is ambiguous.
const PAIR_LOOSE: u32 = 20;

/// Evaluates at a high-precision point.
fn eval_high(p: &MultiPoly, point: &[Real]) -> Real {
    let mut acc = Real::zero();
    for (m, c) in p.terms() {
        let mut t = Real::from_rational(c);
        for (e, v) in m.exps().iter().zip(point) {
            if *e > 0 {
                t = &t * &v.powi(*e);
            }
        }
        acc = &acc + &t;
    }
    acc
}

/// `|p(point)| / max|coeff|`, as a high-precision value.
fn relative_residual(p: &MultiPoly, point: &[Real]) -> Real {
    if p.is_zero() {
        return Real::zero();
    }
    let scale = p.terms().map(|(_, c)| c.abs()).max().expect("nonzero");
    &eval_high(p, point).abs() / &Real::from_rational(&scale)
}

/// Real roots of a univariate polynomial: rational roots exactly, a remaining quadratic or cubic
/// factor by radicals, anything larger by Sturm isolation.
pub(crate) fn solve_univariate(p: &UniPoly) -> Result<Vec<RealRoot>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(vec![]);
    }
    let sqf = p.squarefree();
    let roots = sqf.real_roots();
    let mut rest = sqf.clone();
    let mut exact = Vec::new();
    for r in &roots {
        if let Some(q) = &r.exact {
            let lin = UniPoly::new(vec![-q.clone(), Rational::from_integer(1.into())]);
            rest = rest.div_rem(&lin)?.0;
            exact.push(r.clone());
        }
    }
    let c = rest.coeffs();
    let radical = match rest.degree() {
        Some(2) => Some(solve_quadratic(&c[2], &c[1], &c[0])?),
        Some(3) => Some(solve_cubic(&c[3], &c[2], &c[1], &c[0])?),
        _ => None,
    };
    let mut out = match radical {
        Some(mut rad) => {
            rad.extend(exact);
            rad
        }
        None => roots,
    };
    out.sort_by(|a, b| a.value.cmp(&b.value));
    Ok(out)
}

/// `g(x, y) = G(x^(1+ex), y^(1+ey))` in the ring `[u, v]`.
fn fold_even(g: &MultiPoly, ex: bool, ey: bool) -> Result<MultiPoly> {
    let ring = Ring::new(&["u", "v"])?;
    g.map_monomials(&ring, |e| Some(vec![if ex { e[0] / 2 } else { e[0] }, if ey { e[1] / 2 } else { e[1] }]))
}

/// Values of the original coordinate for a root in the folded variable.
fn unfold(root: &RealRoot, even: bool) -> Result<Vec<RealRoot>> {
    if !even {
        return Ok(vec![root.clone()]);
    }
    if root.value.close_to(&Real::zero(), ZERO_BITS) {
        return Ok(vec![RealRoot::exact(Rational::zero())]);
    }
    if root.value.is_negative() {
        return Ok(vec![]);
    }
    let s = match root.exact.as_ref().and_then(crate::univariate::rational_sqrt) {
        Some(q) => RealRoot::exact(q),
        None => RealRoot::approx(root.value.sqrt()?),
    };
    let m = RealRoot { value: -&s.value, exact: s.exact.as_ref().map(|q| -q) };
    Ok(vec![s, m])
}

/// The univariate member of a lexicographic basis in `keep`.
fn eliminant(system: &Ideal, elim: &str, keep: &str, limits: &GroebnerLimits) -> Result<UniPoly> {
    let ord = MonomialOrder::lex(&[elim, keep]);
    let (gb, _) = groebner::reduced_groebner(system, &ord, limits)?;
    let uni = groebner::elimination_ideal(&gb, &[keep])?;
    let first = uni
        .first()
        .ok_or_else(|| Error::Elimination(format!("singular system is not zero-dimensional (no eliminant in {keep})")))?;
    UniPoly::from_multipoly(&first.embed(&Ring::new(&[keep])?)?, keep)
}

/// Accepts the `(u, v)` combinations on which every system polynomial vanishes.
fn pair_roots(system: &[MultiPoly], us: &[RealRoot], vs: &[RealRoot]) -> Result<Vec<(RealRoot, RealRoot)>> {
    let tight = Real::from_rational(&Rational::new(1.into(), num_bigint::BigInt::from(1) << PAIR_TIGHT));
    let loose = Real::from_rational(&Rational::new(1.into(), num_bigint::BigInt::from(1) << PAIR_LOOSE));
    let mut out = Vec::new();
    for u in us {
        for v in vs {
            let pt = [u.value.clone(), v.value.clone()];
            let res = system.iter().map(|p| relative_residual(p, &pt)).max().unwrap_or_else(Real::zero);
            if res <= tight {
                out.push((u.clone(), v.clone()));
            } else if res < loose {
                return Err(Error::RootPairing(format!(
                    "residual {} at ({}, {}) is neither clearly zero nor clearly nonzero",
                    res.to_f64(),
                    u.to_f64(),
                    v.to_f64()
                )));
            }
        }
    }
    Ok(out)
}

/// Roots of `gcd(G(0, v), ∂G/∂v(0, v))`-style axis restrictions.
fn axis_roots(gg: &MultiPoly, gd: &MultiPoly, fixed: &str, free: &str) -> Result<Vec<RealRoot>> {
    let z = [(fixed, Rational::zero())];
    let a = UniPoly::from_multipoly(&gg.substitute(&z)?, free)?;
    let b = UniPoly::from_multipoly(&gd.substitute(&z)?, free)?;
    let common = if b.is_zero() { a } else { a.gcd(&b) };
    if common.is_zero() {
        return Err(Error::Elimination(format!("offset polynomial vanishes on the line {fixed} = 0")));
    }
    solve_univariate(&common)
}

/// Real singular points by elimination, for cross-checking the closed forms.
///
/// `complex_count` here counts the roots `u` of the generic eliminant that give no real `x`
/// (non-real roots, and negative roots when `u = x²`), each contributing two points when folded.
pub fn singular_points_via_elimination(conic: &ConicSpec, r: &Rational) -> Result<SingularPointReport> {
    let g = offset_poly_closed_form(conic, r)?.g;
    let (ex, ey) = (g.is_even_in("x")?, g.is_even_in("y")?);
    let gg = fold_even(&g, ex, ey)?;
    let gu = gg.derivative("u")?;
    let gv = gg.derivative("v")?;
    let limits = GroebnerLimits::default();
    let mut cands: Vec<Candidate> = Vec::new();
    let push = |u: &RealRoot, v: &RealRoot, cands: &mut Vec<Candidate>| -> Result<()> {
        for x in unfold(u, ex)? {
            for y in unfold(v, ey)? {
                cands.push(Candidate { x: x.clone(), y });
            }
        }
        Ok(())
    };

    // generic case: G = G_u = G_v = 0
    let mut complex_count = 0;
    let system: Vec<MultiPoly> = [gg.clone(), gu.clone(), gv.clone()].into_iter().filter(|p| !p.is_zero()).collect();
    let ideal = Ideal::new(system.clone())?;
    let eu = eliminant(&ideal, "v", "u", &limits)?;
    let ev = eliminant(&ideal, "u", "v", &limits)?;
    let us = solve_univariate(&eu)?;
    let vs = solve_univariate(&ev)?;
    let real_u = us.iter().filter(|u| !ex || !u.value.is_negative() || u.value.close_to(&Real::zero(), ZERO_BITS)).count();
    let fold = if ex { 2 } else { 1 };
    complex_count += fold * (eu.squarefree().degree().unwrap_or(0) - real_u);
    for (u, v) in pair_roots(&system, &us, &vs)? {
        push(&u, &v, &mut cands)?;
    }

    // axis cases from the folded gradient factors 2x and 2y
    if ex {
        for v in axis_roots(&gg, &gv, "u", "v")? {
            push(&RealRoot::exact(Rational::zero()), &v, &mut cands)?;
        }
    }
    if ey {
        for u in axis_roots(&gg, &gu, "v", "u")? {
            push(&u, &RealRoot::exact(Rational::zero()), &mut cands)?;
        }
    }
    if ex && ey && gg.eval_rational(&[Rational::zero(), Rational::zero()])?.is_zero() {
        let z = RealRoot::exact(Rational::zero());
        push(&z, &z, &mut cands)?;
    }
    assemble(conic, r, &g, cands, complex_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conics::singular_points;
    use crate::rational::{int, rat};

    fn agree(conic: &ConicSpec, r: &Rational) {
        let a = singular_points(conic, r).unwrap();
        let b = singular_points_via_elimination(conic, r).unwrap();
        assert_eq!(a.points.len(), b.points.len(), "{a:#?}\n{b:#?}");
        for (p, q) in a.points.iter().zip(&b.points) {
            assert!((p.x.to_f64() - q.x.to_f64()).abs() < 1e-9 && (p.y.to_f64() - q.y.to_f64()).abs() < 1e-9);
            assert_eq!(p.tag, q.tag);
        }
    }

    #[test]
    fn cubic_solver_route() {
        // (z − 1)(z − 2)(z² − 2)(z³ − 2)
        let p = UniPoly::from_i64(&[1, -1]).mul(&UniPoly::from_i64(&[-2, 1])).mul(&UniPoly::from_i64(&[-2, 0, 1]));
        let p = p.mul(&UniPoly::from_i64(&[-2, 0, 0, 1]));
        let roots = solve_univariate(&p).unwrap();
        let want = [-(2f64.sqrt()), 1.0, 2f64.cbrt(), 2f64.sqrt(), 2.0];
        assert_eq!(roots.len(), want.len());
        for (r, w) in roots.iter().zip(want) {
            assert!((r.to_f64() - w).abs() < 1e-14);
        }
    }

    #[test]
    fn parabola_agrees_with_closed_form() {
        let p = ConicSpec::parabola(rat(1, 3)).unwrap();
        agree(&p, &rat(1, 4));
        agree(&p, &rat(3, 2));
        let rep = singular_points_via_elimination(&p, &rat(1, 4)).unwrap();
        assert_eq!(rep.points.len(), 1);
        assert!(rep.points[0].x.exact().is_some_and(Zero::is_zero));
    }

    #[test]
    fn large_cusps_pair_cleanly() {
        // Cardano's u + v cancels about 110 bits for the v eliminant here
        agree(&ConicSpec::parabola(rat(-22, 5)).unwrap(), &rat(143, 5));
    }

    #[test]
    fn ellipse_agrees_with_closed_form() {
        let e = ConicSpec::ellipse(int(3), rat(3, 2)).unwrap();
        agree(&e, &rat(1, 2));
        agree(&e, &rat(3, 4));
        agree(&e, &rat(4, 3));
    }

    #[test]
    fn hyperbola_agrees_with_closed_form() {
        let h = ConicSpec::hyperbola(rat(3, 2), int(1)).unwrap();
        agree(&h, &rat(2, 3));
        agree(&h, &rat(4, 3));
    }
}
