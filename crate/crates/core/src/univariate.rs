//! Dense univariate polynomials over the rationals: gcd, square-free part, Sturm sequences,
//! real-root isolation and refinement, plus quadratic and Cardano cubic solvers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::highprec::{Real, PREC};
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// Coefficients in ascending degree order, no trailing zeros (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
    }

    /// Converts a polynomial whose only occurring variable is `var`.
    pub fn from_multipoly(p: &MultiPoly, var: &str) -> Result<Self> {
        let i = p.ring().index(var)?;
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in p.terms() {
            if m.exps().iter().enumerate().any(|(j, e)| j != i && *e > 0) {
                return Err(Error::Elimination(format!("polynomial is not univariate in `{var}`")));
            }
            let d = m.exps()[i] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Rational::zero());
            }
            coeffs[d] += c;
        }
        Ok(Self::new(coeffs))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_real(&self, x: &Real) -> Real {
        let mut acc = Real::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Real::from_rational(c);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        UniPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::new(vec![]);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::ZeroPoly("UniPoly::div_rem"))?;
        let mut r = self.coeffs.clone();
        let lc = d.lc();
        if r.len() <= dd {
            return Ok((UniPoly::new(vec![]), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = primitive(&r);
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd nonzero").0.monic()
    }

    /// Substitutes `x ↦ -x`.
    pub fn reflect(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect(),
        )
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().expect("nonempty").is_zero() {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero");
            seq.push(primitive(&r).neg());
        }
        seq.pop();
        seq
    }

    /// Upper bound on the absolute value of every root (Cauchy).
    pub fn root_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let m = self.coeffs[..self.coeffs.len() - 1].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    /// Isolating half-open intervals `(lo, hi]`, each containing exactly one real root, ascending. The polynomial is made square-free first.
    pub fn isolate_real_roots(&self) -> Vec<(Rational, Rational)> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let p = self.squarefree();
        let seq = p.sturm();
        let b = p.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            // roots in (lo, hi]
            let n = sign_changes(&seq, &lo) as i64 - sign_changes(&seq, &hi) as i64;
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push((lo, hi));
                continue;
            }
            // split at a point that is not itself a root; both halves still cover (lo, hi]
            let two = Rational::from_integer(BigInt::from(2));
            let mut mid = (&lo + &hi) / &two;
            while p.eval(&mid).is_zero() {
                mid = (&mid + &hi) / &two;
            }
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Real roots refined to full [`Real`] precision, ascending, without multiplicity.
    pub fn real_roots(&self) -> Vec<RealRoot> {
        let p = self.squarefree();
        p.isolate_real_roots().into_iter().map(|iv| refine_root(&p, iv)).collect()
    }
}

/// A real algebraic number as a high-precision value, with its exact value when rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    pub value: Real,
    pub exact: Option<Rational>,
}

impl RealRoot {
    pub fn exact(q: Rational) -> Self {
        RealRoot { value: Real::from_rational(&q), exact: Some(q) }
    }

    pub fn approx(v: Real) -> Self {
        RealRoot { value: v, exact: None }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

fn primitive(p: &UniPoly) -> UniPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for c in &p.coeffs {
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    let s = BigRational::new(l, g);
    UniPoly::new(p.coeffs.iter().map(|c| c * &s).collect())
}

fn sign(q: &Rational) -> i32 {
    match q.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn sign_changes(seq: &[UniPoly], x: &Rational) -> usize {
    let mut last = 0;
    let mut n = 0;
    for p in seq {
        let s = sign(&p.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// Bisection on an isolating interval of a square-free polynomial down to `2^-PREC` width,
/// followed by an exactness check through rational reconstruction.
fn refine_root(p: &UniPoly, (lo, hi): (Rational, Rational)) -> RealRoot {
    if lo == hi {
        return RealRoot::exact(lo);
    }
    let (mut lo, mut hi) = (lo, hi);
    if p.eval(&hi).is_zero() {
        return RealRoot::exact(hi);
    }
    let two = Rational::from_integer(BigInt::from(2));
    let eps = BigRational::new(BigInt::one(), BigInt::one() << (PREC + 2));
    let mut slo = sign(&p.eval(&lo));
    if slo == 0 {
        // lo is a neighbouring simple root; p keeps the sign of p'(lo) on (lo, root)
        slo = sign(&p.derivative().eval(&lo));
    }
    // early exits through rational reconstruction keep small exact roots exact
    let mut iter = 0u32;
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / &two;
        let s = sign(&p.eval(&mid));
        if s == 0 {
            return RealRoot::exact(mid);
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
        iter += 1;
        if iter.is_multiple_of(64) {
            if let Some(q) = reconstruct(&lo, &hi) {
                if p.eval(&q).is_zero() {
                    return RealRoot::exact(q);
                }
            }
        }
    }
    let mid = (&lo + &hi) / &two;
    if let Some(q) = reconstruct(&lo, &hi) {
        if p.eval(&q).is_zero() {
            return RealRoot::exact(q);
        }
    }
    RealRoot::approx(Real::from_rational(&mid))
}

/// Simplest rational in `[lo, hi]` (Stern–Brocot / continued fractions), if its height is small.
fn reconstruct(lo: &Rational, hi: &Rational) -> Option<Rational> {
    let q = simplest_between(lo, hi);
    if q.denom().bits() < 64 && q.numer().bits() < 96 {
        Some(q)
    } else {
        None
    }
}

fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    // same integer part: recurse on the reciprocals of the fractional parts
    let a = lo - &fl;
    let b = hi - &fl;
    let inner = simplest_between(&b.recip(), &a.recip());
    fl + inner.recip()
}

/// Real roots of `a x² + b x + c` (a ≠ 0), ascending.
pub fn solve_quadratic(a: &Rational, b: &Rational, c: &Rational) -> Result<Vec<RealRoot>> {
    if a.is_zero() {
        return Err(Error::Precondition("leading coefficient is zero".into()));
    }
    let four = Rational::from_integer(BigInt::from(4));
    let two = Rational::from_integer(BigInt::from(2));
    let disc = b * b - &four * a * c;
    match disc.cmp(&Rational::zero()) {
        Ordering::Less => Ok(vec![]),
        Ordering::Equal => Ok(vec![RealRoot::exact(-b / (&two * a))]),
        Ordering::Greater => {
            let p = UniPoly::new(vec![c.clone(), b.clone(), a.clone()]);
            if let Some(s) = rational_sqrt(&disc) {
                let mut r = vec![(-b - &s) / (&two * a), (-b + &s) / (&two * a)];
                r.sort();
                return Ok(r.into_iter().map(RealRoot::exact).collect());
            }
            let s = Real::from_rational(&disc).sqrt()?;
            let d = Real::from_rational(&(&two * a));
            let mb = Real::from_rational(&-b);
            let mut r = vec![polish(&p, &(&mb - &s) / &d), polish(&p, &(&mb + &s) / &d)];
            r.sort();
            Ok(r.into_iter().map(RealRoot::approx).collect())
        }
    }
}

/// Exact square root of a nonnegative rational when it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = num_integer::Roots::sqrt(q.numer());
    let d = num_integer::Roots::sqrt(q.denom());
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Real roots of `a x³ + b x² + c x + d` (a ≠ 0) by Cardano's formula.
///
/// The discriminant sign is decided exactly. With one real root the radicals are evaluated at
/// high precision; a vanishing discriminant gives exact rational roots; three distinct real roots
/// (the irreducible case, where Cardano needs complex cube roots) are found by Sturm isolation and
/// bisection instead. Roots are ascending and distinct.
pub fn solve_cubic(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Vec<RealRoot>> {
    if a.is_zero() {
        return Err(Error::Precondition("leading coefficient is zero".into()));
    }
    let n = |v: i64| Rational::from_integer(BigInt::from(v));
    // depressed form t³ + P t + Q with x = t − b/(3a)
    let (b1, c1, d1) = (b / a, c / a, d / a);
    let shift = &b1 / n(3);
    let pp = &c1 - &b1 * &b1 / n(3);
    let qq = n(2) * &b1 * &b1 * &b1 / n(27) - &b1 * &c1 / n(3) + &d1;
    let disc = -(n(4) * &pp * &pp * &pp + n(27) * &qq * &qq);
    let poly = UniPoly::new(vec![d.clone(), c.clone(), b.clone(), a.clone()]);
    match disc.cmp(&Rational::zero()) {
        Ordering::Equal => {
            if pp.is_zero() {
                return Ok(vec![RealRoot::exact(-shift)]);
            }
            let simple = n(3) * &qq / &pp - &shift;
            let double = -n(3) * &qq / (n(2) * &pp) - &shift;
            let mut r = vec![simple, double];
            r.sort();
            Ok(r.into_iter().map(RealRoot::exact).collect())
        }
        Ordering::Greater => Ok(poly.real_roots()),
        Ordering::Less => {
            // one real root: t = cbrt(−Q/2 + √D) + cbrt(−Q/2 − √D), D = Q²/4 + P³/27 > 0
            let dd = &qq * &qq / n(4) + &pp * &pp * &pp / n(27);
            let half = Real::from_rational(&(-&qq / n(2)));
            let s = Real::from_rational(&dd).sqrt()?;
            let u = (&half + &s).cbrt();
            let v = (&half - &s).cbrt();
            let t = &u + &v;
            let x = polish(&poly, &t - &Real::from_rational(&shift));
            // keep rational roots exact
            if let Some(q) = reconstruct_real(&x, PREC / 2) {
                if poly.eval(&q).is_zero() {
                    return Ok(vec![RealRoot::exact(q)]);
                }
            }
            Ok(vec![RealRoot::approx(x)])
        }
    }
}

/// Newton steps on the exact polynomial: `u + v` in Cardano's formula can cancel many leading
/// bits, which a few quadratically convergent steps restore.
fn polish(p: &UniPoly, mut x: Real) -> Real {
    let dp = p.derivative();
    for _ in 0..8 {
        let d = dp.eval_real(&x);
        if d.is_zero() {
            break;
        }
        let step = &p.eval_real(&x) / &d;
        x = &x - &step;
        if step.close_to(&Real::zero(), PREC - 4) {
            break;
        }
    }
    x
}

fn reconstruct_real(x: &Real, bits: u32) -> Option<Rational> {
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let v = x.to_rational();
    reconstruct(&(&v - &eps), &(&v + &eps))
}
