//! Exact sparse multivariate polynomials over the rationals.

mod json;
mod order;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, to_f64, Rational};

pub use json::PolyJson;
pub use order::{Monomial, MonomialOrder, OrderKind};

/// An ordered list of variable names shared by polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring(Arc<[String]>);

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Var(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(Error::Ring(format!("variable `{v}` listed twice")));
            }
        }
        Ok(Ring(vars.into()))
    }

    pub fn vars(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.0.iter().position(|v| v == name).ok_or_else(|| Error::Var(name.to_string()))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

/// Sparse polynomial: a map from exponent vectors to nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> Self {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.len()), c);
        }
        p
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring.index(name)?;
        Ok(Self::monomial(ring, Monomial::var(ring.len(), i, 1), Rational::one()))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ring.len(), "monomial length differs from ring size");
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, summing repeated monomials.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.len() {
                return Err(Error::Ring(format!(
                    "exponent vector of length {} in a ring of {} variables",
                    e.len(),
                    ring.len()
                )));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Parses text such as `4*p*y0 - x0^2` or `331776 x^6 - 42192 x^2` over `ring`.
    pub fn parse(text: &str, ring: &Ring) -> Result<Self> {
        parse::parse_poly(text, ring)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending order under `kind`.
    pub fn sorted_terms(&self, kind: OrderKind) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| kind.compare(&b.0 .0, &a.0 .0));
        v
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: &str) -> Result<u32> {
        let i = self.ring.index(var)?;
        Ok(self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
    }

    /// Names of the variables that actually occur.
    pub fn support(&self) -> Vec<String> {
        (0..self.ring.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .map(|i| self.ring.0[i].clone())
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Ring(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = MultiPoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, Rational)> {
        self.leading_term_kind(ord.kind())
    }

    pub fn leading_term_kind(&self, kind: OrderKind) -> Result<(Monomial, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| kind.compare(&a.0 .0, &b.0 .0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPoly("leading_term"))
    }

    /// Multivariate division: `self = Σ qᵢ·basisᵢ + remainder`, picking the first divisor in list order.
    pub fn reduce(&self, basis: &[MultiPoly], ord: &MonomialOrder) -> Result<(MultiPoly, Vec<MultiPoly>)> {
        let kind = ord.kind();
        let mut leads = Vec::with_capacity(basis.len());
        for b in basis {
            self.check_ring(b)?;
            leads.push(b.leading_term_kind(kind).map_err(|_| Error::ZeroPoly("reduce"))?);
        }
        let mut quotients = vec![MultiPoly::zero(&self.ring); basis.len()];
        let mut remainder = MultiPoly::zero(&self.ring);
        let mut p = self.clone();
        while let Ok((m, c)) = p.leading_term_kind(kind) {
            let hit = leads.iter().enumerate().find_map(|(i, (lm, lc))| m.div(lm).map(|q| (i, q, &c / lc)));
            match hit {
                Some((i, qm, qc)) => {
                    quotients[i].add_term(qm.clone(), qc.clone());
                    p = &p - &basis[i].mul_term(&qm, &qc);
                }
                None => {
                    p.terms.remove(&m);
                    remainder.add_term(m, c);
                }
            }
        }
        Ok((remainder, quotients))
    }

    /// Partial evaluation; the result lives in the ring of the unassigned variables (original order).
    pub fn substitute(&self, assignments: &[(&str, Rational)]) -> Result<MultiPoly> {
        let mut values: HashMap<usize, &Rational> = HashMap::new();
        for (name, v) in assignments {
            values.insert(self.ring.index(name)?, v);
        }
        let keep: Vec<usize> = (0..self.ring.len()).filter(|i| !values.contains_key(i)).collect();
        let ring = Ring::new(&keep.iter().map(|&i| self.ring.0[i].as_str()).collect::<Vec<_>>())?;
        let mut out = MultiPoly::zero(&ring);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (&i, v) in &values {
                if m.0[i] > 0 {
                    coeff *= num_traits::pow((*v).clone(), m.0[i] as usize);
                }
            }
            out.add_term(Monomial(keep.iter().map(|&i| m.0[i]).collect()), coeff);
        }
        Ok(out)
    }

    /// Exact value with every variable assigned (by ring position).
    pub fn eval_rational(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.len() {
            return Err(Error::Ring(format!("expected {} values, got {}", self.ring.len(), point.len())));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, v) in m.0.iter().zip(point) {
                if *e > 0 {
                    t *= num_traits::pow(v.clone(), *e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Float value with every variable assigned (by ring position).
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.ring.len(), "point dimension differs from ring size");
        self.terms
            .iter()
            .map(|(m, c)| m.0.iter().zip(point).fold(to_f64(c), |acc, (e, v)| acc * v.powi(*e as i32)))
            .sum()
    }

    pub fn derivative(&self, var: &str) -> Result<MultiPoly> {
        let i = self.ring.index(var)?;
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                out.add_term(Monomial(e), c * Rational::from_integer(BigInt::from(m.0[i])));
            }
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in `ring`, which must contain every variable that occurs.
    pub fn embed(&self, ring: &Ring) -> Result<MultiPoly> {
        let n = self.ring.len();
        let mut map = vec![None; n];
        for (i, slot) in map.iter_mut().enumerate() {
            *slot = ring.index(&self.ring.0[i]).ok();
        }
        let mut out = MultiPoly::zero(ring);
        for (m, c) in &self.terms {
            let mut e = vec![0; ring.len()];
            for (i, (&k, slot)) in m.0.iter().zip(&map).enumerate() {
                if k > 0 {
                    let j = slot.ok_or_else(|| Error::Var(self.ring.0[i].clone()))?;
                    e[j] = k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Maps every term with `m ↦ f(m)`; used for substitutions such as x² → X.
    pub fn map_monomials<F>(&self, ring: &Ring, mut f: F) -> Result<MultiPoly>
    where
        F: FnMut(&[u32]) -> Option<Vec<u32>>,
    {
        let mut out = MultiPoly::zero(ring);
        for (m, c) in &self.terms {
            let e = f(&m.0).ok_or_else(|| Error::Ring("monomial map rejected a term".into()))?;
            if e.len() != ring.len() {
                return Err(Error::Ring("monomial map produced wrong length".into()));
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Least common multiple of denominators and gcd of numerators, as the rational content.
    pub fn content(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::ZeroPoly("content"));
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        Ok(Rational::new(g, l))
    }

    /// Divides by the content so coefficients are coprime integers, keeping the sign.
    pub fn primitive(&self) -> Result<MultiPoly> {
        let c = self.content()?;
        Ok(self.scale(&c.recip()))
    }

    /// Coprime integer coefficients with a positive graded-reverse-lex leading coefficient.
    pub fn content_normalize(&self) -> Result<MultiPoly> {
        let p = self.primitive()?;
        let (_, lc) = p.leading_term_kind(OrderKind::GrevLex)?;
        Ok(if lc.is_negative() { -p } else { p })
    }

    /// `Some(q)` with `self = q·other` for a single nonzero rational `q`.
    pub fn proportionality(&self, other: &MultiPoly) -> Option<Rational> {
        if self.ring != other.ring || self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let mut q: Option<Rational> = None;
        for (m, c) in &self.terms {
            let d = other.terms.get(m)?;
            let r = c / d;
            match &q {
                None => q = Some(r),
                Some(q0) if *q0 == r => {}
                Some(_) => return None,
            }
        }
        q
    }

    pub fn is_proportional(&self, other: &MultiPoly) -> bool {
        self.proportionality(other).is_some()
    }

    /// Largest absolute float coefficient (0 for the zero polynomial).
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| to_f64(c).abs()).fold(0.0, f64::max)
    }

    /// True when every occurring exponent of `var` is even.
    pub fn is_even_in(&self, var: &str) -> Result<bool> {
        let i = self.ring.index(var)?;
        Ok(self.terms.keys().all(|m| m.0[i] % 2 == 0))
    }

    /// Pretty form, terms descending under `kind`, e.g. `331776 x^6 - 42192 x^2 + 1`.
    pub fn to_string_with(&self, kind: OrderKind) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(kind).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    if *e == 1 {
                        self.ring.0[i].clone()
                    } else {
                        format!("{}^{}", self.ring.0[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&format_rational(&abs));
                    out.push(' ');
                }
                out.push_str(&mono.join(" "));
            }
        }
        out
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson::from_poly(self)
    }

    pub fn from_json(j: &PolyJson) -> Result<MultiPoly> {
        j.to_poly()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(OrderKind::GrevLex))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial rings differ")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial rings differ")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial rings differ")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Compares two polynomials' leading terms under `kind` (zero is smallest).
pub fn compare_leading(a: &MultiPoly, b: &MultiPoly, kind: OrderKind) -> Ordering {
    match (a.leading_term_kind(kind), b.leading_term_kind(kind)) {
        (Ok((ma, _)), Ok((mb, _))) => kind.compare(&ma.0, &mb.0),
        (Ok(_), Err(_)) => Ordering::Greater,
        (Err(_), Ok(_)) => Ordering::Less,
        (Err(_), Err(_)) => Ordering::Equal,
    }
}
