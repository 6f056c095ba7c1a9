//! Conic-specific knowledge: variety ideals, offset polynomials, critical offsets and singular points.
//!
//! Orientation follows the defining polynomials used throughout:
//! * parabola `x₀² = 4 p y₀` (vertex at the origin, focus `(0, p)`);
//! * ellipse `x₀²/b² + y₀²/a² = 1` (major semi-axis `a` along the y-axis);
//! * hyperbola `y₀²/a² − x₀²/b² = 1` (vertices `(0, ±a)`).

mod elimination;
mod singular;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerLimits, Ideal};
use crate::poly::{MonomialOrder, MultiPoly, Ring};
use crate::rational::{format_rational, Rational};

pub use elimination::singular_points_via_elimination;
pub use singular::{singular_points, Coord, PointTag, Regime, SingularPoint, SingularPointReport};

const G_PARABOLA: &str = include_str!("../../fixtures/gparabola.txt");
const G_ELLIPSE: &str = include_str!("../../fixtures/gellipse.txt");
const G_HYPERBOLA: &str = include_str!("../../fixtures/ghyperbola.txt");

/// Variables of the numeric ideal, largest first: the foot point `(x₀, y₀)` then the offset point.
pub const IDEAL_VARS: [&str; 4] = ["y0", "x0", "x", "y"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicKind {
    Parabola,
    Ellipse,
    Hyperbola,
}

impl ConicKind {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "parabola" => Ok(ConicKind::Parabola),
            "ellipse" => Ok(ConicKind::Ellipse),
            "hyperbola" => Ok(ConicKind::Hyperbola),
            other => Err(Error::Param(format!("unknown conic `{other}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConicKind::Parabola => "parabola",
            ConicKind::Ellipse => "ellipse",
            ConicKind::Hyperbola => "hyperbola",
        }
    }

    /// Parameter names in the order used by the symbolic ring.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            ConicKind::Parabola => &["p"],
            _ => &["a", "b"],
        }
    }
}

/// A validated conic in standard position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConicSpec {
    Parabola { p: Rational },
    Ellipse { a: Rational, b: Rational },
    Hyperbola { a: Rational, b: Rational },
}

impl ConicSpec {
    /// `p ≠ 0`.
    pub fn parabola(p: Rational) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Param("parabola needs p != 0".into()));
        }
        Ok(ConicSpec::Parabola { p })
    }

    /// `a > b > 0` (a circle is rejected).
    pub fn ellipse(a: Rational, b: Rational) -> Result<Self> {
        if !(b.is_positive() && a > b) {
            return Err(Error::Param(format!(
                "ellipse needs a > b > 0, got a={}, b={}",
                format_rational(&a),
                format_rational(&b)
            )));
        }
        Ok(ConicSpec::Ellipse { a, b })
    }

    /// `a ≥ b > 0`; the equilateral case `a = b` is accepted.
    pub fn hyperbola(a: Rational, b: Rational) -> Result<Self> {
        if !(b.is_positive() && a >= b) {
            return Err(Error::Param(format!(
                "hyperbola needs a >= b > 0, got a={}, b={}",
                format_rational(&a),
                format_rational(&b)
            )));
        }
        Ok(ConicSpec::Hyperbola { a, b })
    }

    /// Builds a spec from a kind and named parameters (`p`, or `a` and `b`).
    pub fn from_params(kind: ConicKind, p: Option<Rational>, a: Option<Rational>, b: Option<Rational>) -> Result<Self> {
        let need = |v: Option<Rational>, n: &str| v.ok_or_else(|| Error::Param(format!("{} needs --{n}", kind.name())));
        match kind {
            ConicKind::Parabola => ConicSpec::parabola(need(p, "p")?),
            ConicKind::Ellipse => ConicSpec::ellipse(need(a, "a")?, need(b, "b")?),
            ConicKind::Hyperbola => ConicSpec::hyperbola(need(a, "a")?, need(b, "b")?),
        }
    }

    pub fn kind(&self) -> ConicKind {
        match self {
            ConicSpec::Parabola { .. } => ConicKind::Parabola,
            ConicSpec::Ellipse { .. } => ConicKind::Ellipse,
            ConicSpec::Hyperbola { .. } => ConicKind::Hyperbola,
        }
    }

    /// `(name, value)` pairs in symbolic-ring order.
    pub fn params(&self) -> Vec<(&'static str, Rational)> {
        match self {
            ConicSpec::Parabola { p } => vec![("p", p.clone())],
            ConicSpec::Ellipse { a, b } | ConicSpec::Hyperbola { a, b } => vec![("a", a.clone()), ("b", b.clone())],
        }
    }

    /// Human-readable parameter list, e.g. `a=3, b=3/2`.
    pub fn describe(&self) -> String {
        let ps: Vec<String> = self.params().iter().map(|(n, v)| format!("{n}={}", format_rational(v))).collect();
        format!("{} {}", self.kind().name(), ps.join(", "))
    }

    /// Defining polynomial of the conic in `[x, y]`.
    pub fn conic_poly(&self) -> MultiPoly {
        let ring = xy_ring();
        let f1 = symbolic_generators(self.kind()).0;
        let mut assign: Vec<(&str, Rational)> = self.params();
        assign.push(("r", Rational::zero()));
        let s = f1.substitute(&assign).expect("parameters exist");
        // rename the foot point (x0, y0) to (x, y)
        let f = s.substitute(&[("x", Rational::zero()), ("y", Rational::zero())]).expect("vars exist");
        let renamed = f.map_monomials(&ring, |e| Some(vec![e[1], e[0]])).expect("two variables");
        renamed.content_normalize().expect("nonzero")
    }
}

/// The `[x, y]` ring of offset polynomials.
pub fn xy_ring() -> Ring {
    Ring::new(&["x", "y"]).expect("valid ring")
}

/// Critical offset: `2|p|` for the parabola, the semi-latus rectum `b²/a` otherwise.
pub fn r_crit(conic: &ConicSpec) -> Rational {
    match conic {
        ConicSpec::Parabola { p } => p.abs() * Rational::from_integer(2.into()),
        ConicSpec::Ellipse { a, b } | ConicSpec::Hyperbola { a, b } => b * b / a,
    }
}

/// The three generators over `[y0, x0, x, y, params.., r]` (parabola: `[y0, x0, x, y, r, p]`),
/// i.e. the conic, the circle of radius `r` about the foot point, and the normality condition.
pub fn symbolic_generators(kind: ConicKind) -> (MultiPoly, MultiPoly, MultiPoly) {
    let ring = symbolic_ring(kind);
    let (f1, f3) = match kind {
        ConicKind::Parabola => ("4 p y0 - x0^2", "2 x p - 2 x0 p + x0 y - x0 y0"),
        ConicKind::Ellipse => ("b^2 y0^2 + a^2 x0^2 - a^2 b^2", "b^2 (x - x0) y0 - a^2 (y - y0) x0"),
        ConicKind::Hyperbola => ("b^2 y0^2 - a^2 x0^2 - a^2 b^2", "b^2 (x - x0) y0 + a^2 (y - y0) x0"),
    };
    let f2 = "(y - y0)^2 + (x - x0)^2 - r^2";
    let parse = |t: &str| MultiPoly::parse(t, &ring).expect("generator text parses");
    (parse(f1), parse(f2), parse(f3))
}

/// Ring of the symbolic ideal, in the lexicographic variable order used for the general bases.
pub fn symbolic_ring(kind: ConicKind) -> Ring {
    match kind {
        ConicKind::Parabola => Ring::new(&["y0", "x0", "x", "y", "r", "p"]),
        _ => Ring::new(&["y0", "x0", "x", "y", "a", "b", "r"]),
    }
    .expect("valid ring")
}

/// `⟨f1, f2, f3⟩` with every parameter kept as a ring variable.
pub fn build_symbolic_ideal(kind: ConicKind) -> Ideal {
    let (f1, f2, f3) = symbolic_generators(kind);
    Ideal::new(vec![f1, f2, f3]).expect("nonzero generators")
}

/// `⟨f1, f2, f3⟩` over `[y0, x0, x, y]` for concrete parameters, denominators cleared (sign kept).
pub fn build_ideal(conic: &ConicSpec, r: &Rational) -> Result<Ideal> {
    check_offset(r)?;
    let (f1, f2, f3) = symbolic_generators(conic.kind());
    let mut assign = conic.params();
    assign.push(("r", r.clone()));
    let gens = [f1, f2, f3]
        .iter()
        .map(|f| f.substitute(&assign)?.primitive())
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(gens)
}

fn check_offset(r: &Rational) -> Result<()> {
    if !r.is_positive() {
        return Err(Error::Param(format!("offset r must be positive, got {}", format_rational(r))));
    }
    Ok(())
}

/// The general offset polynomial over `[x, y, params.., r]`.
pub fn general_offset_poly(kind: ConicKind) -> MultiPoly {
    let (text, vars): (&str, &[&str]) = match kind {
        ConicKind::Parabola => (G_PARABOLA, &["x", "y", "p", "r"]),
        ConicKind::Ellipse => (G_ELLIPSE, &["x", "y", "a", "b", "r"]),
        ConicKind::Hyperbola => (G_HYPERBOLA, &["x", "y", "a", "b", "r"]),
    };
    let ring = Ring::new(vars).expect("valid ring");
    MultiPoly::parse(text, &ring).expect("fixture parses")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OffsetSource {
    ClosedForm,
    Elimination,
}

/// Monomial order used by the elimination route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationOrder {
    /// Graded reverse lex on `{y0, x0}` then on `{x, y}`.
    Block,
    /// Pure lex `y0 > x0 > x > y`.
    Lex,
}

/// An offset curve: the content-normalized polynomial `g ∈ ℚ[x, y]` of both parallel lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetCurve {
    pub conic: ConicSpec,
    pub r: Rational,
    pub g: MultiPoly,
    pub source: OffsetSource,
}

/// Substitutes the parameters into the general polynomial.
pub fn offset_poly_closed_form(conic: &ConicSpec, r: &Rational) -> Result<OffsetCurve> {
    check_offset(r)?;
    let mut assign = conic.params();
    assign.push(("r", r.clone()));
    let g = general_offset_poly(conic.kind()).substitute(&assign)?.embed(&xy_ring())?.content_normalize()?;
    Ok(OffsetCurve { conic: conic.clone(), r: r.clone(), g, source: OffsetSource::ClosedForm })
}

/// Gröbner elimination of the foot point from `⟨f1, f2, f3⟩` (block order by default).
pub fn offset_poly_elimination(conic: &ConicSpec, r: &Rational) -> Result<OffsetCurve> {
    offset_poly_elimination_with(conic, r, EliminationOrder::Block, &GroebnerLimits::default())
}

pub fn offset_poly_elimination_with(
    conic: &ConicSpec,
    r: &Rational,
    order: EliminationOrder,
    limits: &GroebnerLimits,
) -> Result<OffsetCurve> {
    let (g, _) = eliminate_foot_point(conic, r, order, limits)?;
    Ok(OffsetCurve { conic: conic.clone(), r: r.clone(), g, source: OffsetSource::Elimination })
}

/// Returns the eliminant together with the reduced basis it came from.
pub fn eliminate_foot_point(
    conic: &ConicSpec,
    r: &Rational,
    order: EliminationOrder,
    limits: &GroebnerLimits,
) -> Result<(MultiPoly, groebner::GroebnerBasis)> {
    let ideal = build_ideal(conic, r)?;
    let ord = match order {
        EliminationOrder::Block => MonomialOrder::block(2, &IDEAL_VARS)?,
        EliminationOrder::Lex => MonomialOrder::lex(&IDEAL_VARS),
    };
    let gb = groebner::buchberger(&ideal, &ord, limits)?;
    let red = groebner::reduce_basis(&gb)?;
    let survivors = groebner::elimination_ideal(&red, &["x", "y"])?;
    if survivors.len() != 1 {
        return Err(Error::Elimination(format!(
            "expected exactly one polynomial in x, y; found {}",
            survivors.len()
        )));
    }
    let g = survivors[0].embed(&xy_ring())?.content_normalize()?;
    Ok((g, red))
}

/// Exact formal partial derivatives with respect to `vars`.
pub fn gradient<S: AsRef<str>>(g: &MultiPoly, vars: &[S]) -> Result<Vec<MultiPoly>> {
    vars.iter().map(|v| g.derivative(v.as_ref())).collect()
}

/// Both polynomials content-normalized and equal, i.e. proportional by one nonzero rational.
pub fn proportional(p: &MultiPoly, q: &MultiPoly) -> bool {
    match (p.content_normalize(), q.content_normalize()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn spec_validation() {
        assert!(ConicSpec::parabola(int(0)).is_err());
        assert!(ConicSpec::ellipse(int(2), int(2)).is_err());
        assert!(ConicSpec::ellipse(int(1), int(2)).is_err());
        assert!(ConicSpec::hyperbola(int(1), int(2)).is_err());
        assert!(ConicSpec::hyperbola(int(1), int(1)).is_ok());
        assert!(ConicSpec::ellipse(int(3), rat(3, 2)).is_ok());
        let e = ConicSpec::ellipse(int(3), rat(3, 2)).unwrap();
        assert!(build_ideal(&e, &int(0)).is_err());
        assert!(offset_poly_closed_form(&e, &rat(-1, 2)).is_err());
    }

    #[test]
    fn critical_offsets() {
        assert_eq!(r_crit(&ConicSpec::parabola(rat(1, 3)).unwrap()), rat(2, 3));
        assert_eq!(r_crit(&ConicSpec::parabola(rat(-1, 3)).unwrap()), rat(2, 3));
        assert_eq!(r_crit(&ConicSpec::ellipse(int(3), rat(3, 2)).unwrap()), rat(3, 4));
        assert_eq!(r_crit(&ConicSpec::hyperbola(rat(3, 2), int(1)).unwrap()), rat(2, 3));
    }

    #[test]
    fn numeric_ideal_matches_cleared_generators() {
        let ring = Ring::new(&IDEAL_VARS).unwrap();
        let ideal = build_ideal(&ConicSpec::parabola(rat(1, 3)).unwrap(), &rat(1, 4)).unwrap();
        let want = [
            "4 y0 - 3 x0^2",
            "16 y^2 - 32 y y0 + 16 y0^2 + 16 x^2 - 32 x x0 + 16 x0^2 - 1",
            "2 x - 2 x0 + 3 x0 y - 3 x0 y0",
        ];
        for (g, w) in ideal.generators().iter().zip(want) {
            assert_eq!(g, &MultiPoly::parse(w, &ring).unwrap());
        }
    }

    #[test]
    fn conic_polynomials() {
        let e = ConicSpec::ellipse(int(3), rat(3, 2)).unwrap().conic_poly();
        assert_eq!(e, MultiPoly::parse("4 x^2 + y^2 - 9", &xy_ring()).unwrap());
        let p = ConicSpec::parabola(rat(1, 3)).unwrap().conic_poly();
        assert_eq!(p, MultiPoly::parse("3 x^2 - 4 y", &xy_ring()).unwrap());
    }

    #[test]
    fn gradient_of_simple_polys() {
        let r = xy_ring();
        let g = gradient(&MultiPoly::parse("x^2 y", &r).unwrap(), &["x", "y"]).unwrap();
        assert_eq!(g[0], MultiPoly::parse("2 x y", &r).unwrap());
        let c = gradient(&MultiPoly::parse("5", &r).unwrap(), &["x", "y"]).unwrap();
        assert!(c.iter().all(MultiPoly::is_zero));
        assert!(gradient(&c[0], &["z"]).is_err());
    }
}
