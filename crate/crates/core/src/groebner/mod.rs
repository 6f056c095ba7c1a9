//! Buchberger's algorithm, reduced bases and elimination ideals.

mod engine;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, MultiPoly, OrderKind, Ring};
use crate::rational::Rational;

use engine::{Ctx, IPoly};

/// Counters reported by a Buchberger run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuchbergerStats {
    pub pairs_considered: usize,
    pub pairs_skipped_criteria: usize,
    pub reductions: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
    /// Total degrees of the returned polynomials, descending.
    pub degree_multiset: Vec<u32>,
}

impl fmt::Display for BuchbergerStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairs considered {}, skipped by criteria {}, reductions {} ({} to zero), basis size {}",
            self.pairs_considered, self.pairs_skipped_criteria, self.reductions, self.zero_reductions, self.basis_size
        )
    }
}

/// Resource caps for [`buchberger`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerLimits {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits { max_pairs: 200_000, max_degree: 40 }
    }
}

/// A nonempty list of nonzero generators over a common ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<MultiPoly>,
}

impl Ideal {
    pub fn new(generators: Vec<MultiPoly>) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::Precondition("ideal needs at least one generator".into()))?;
        let ring = first.ring().clone();
        for g in &generators {
            if g.ring() != &ring {
                return Err(Error::Ring(format!("{} vs {}", g.ring(), ring)));
            }
            if g.is_zero() {
                return Err(Error::ZeroPoly("Ideal::new"));
            }
        }
        Ok(Ideal { ring, generators })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }
}

/// Gröbner basis polynomials live in the ring whose variable order is the order's variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub polys: Vec<MultiPoly>,
    pub reduced: bool,
    pub stats: BuchbergerStats,
}

impl GroebnerBasis {
    pub fn ring(&self) -> Result<Ring> {
        Ring::new(self.order.vars())
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Total degrees, descending.
    pub fn degree_multiset(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.polys.iter().filter_map(MultiPoly::total_degree).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// The ring of `ord`'s variable list; it must name exactly the variables of `ring`.
fn order_ring(ring: &Ring, ord: &MonomialOrder) -> Result<Ring> {
    let mut a: Vec<&String> = ring.vars().iter().collect();
    let mut b: Vec<&String> = ord.vars().iter().collect();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::Order(format!(
            "order variables [{}] do not match ring {}",
            ord.vars().join(", "),
            ring
        )));
    }
    Ring::new(ord.vars())
}

fn to_internal(p: &MultiPoly, ctx: &Ctx) -> Result<IPoly> {
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        l = l.lcm(c.denom());
    }
    let mut terms = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let v = (c * Rational::from_integer(l.clone())).to_integer();
        terms.push((ctx.mono(m.exps())?, v));
    }
    let mut out = IPoly::from_terms(terms);
    out.normalize();
    Ok(out)
}

fn from_internal(p: &IPoly, ring: &Ring) -> Result<MultiPoly> {
    MultiPoly::from_terms(ring, p.exps(ring.len()).into_iter().map(|(e, c)| (e, Rational::from_integer(c))))
}

fn context(ring: &Ring, ord: &MonomialOrder) -> Result<(Ring, Ctx)> {
    let oring = order_ring(ring, ord)?;
    let ctx = Ctx::new(oring.len(), ord.kind())?;
    Ok((oring, ctx))
}

fn check_limits(limits: &GroebnerLimits) -> Result<()> {
    if limits.max_degree > engine::MAX_DEGREE {
        return Err(Error::Param(format!("degree cap must be at most {}", engine::MAX_DEGREE)));
    }
    Ok(())
}

/// `(lcm/LT(p))·p − (lcm/LT(q))·q` with rational leading coefficients, so leading terms cancel.
pub fn s_polynomial(p: &MultiPoly, q: &MultiPoly, ord: &MonomialOrder) -> Result<MultiPoly> {
    if p.ring() != q.ring() {
        return Err(Error::Ring(format!("{} vs {}", p.ring(), q.ring())));
    }
    let (oring, _) = context(p.ring(), ord)?;
    let pp = p.embed(&oring)?;
    let qq = q.embed(&oring)?;
    let (mp, cp) = pp.leading_term_kind(ord.kind()).map_err(|_| Error::ZeroPoly("s_polynomial"))?;
    let (mq, cq) = qq.leading_term_kind(ord.kind()).map_err(|_| Error::ZeroPoly("s_polynomial"))?;
    let l = mp.lcm(&mq);
    let a = pp.mul_term(&l.div(&mp).expect("lcm divisible"), &cp.recip());
    let b = qq.mul_term(&l.div(&mq).expect("lcm divisible"), &cq.recip());
    (&a - &b).embed(p.ring())
}

/// Buchberger completion with Gebauer–Möller criteria and the normal selection strategy.
/// Returns every polynomial added during the run (not yet minimal or reduced).
pub fn buchberger(ideal: &Ideal, ord: &MonomialOrder, limits: &GroebnerLimits) -> Result<GroebnerBasis> {
    check_limits(limits)?;
    let (oring, ctx) = context(ideal.ring(), ord)?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| to_internal(&g.embed(&oring)?, &ctx))
        .collect::<Result<Vec<_>>>()?;
    let mut stats = BuchbergerStats::default();
    let lim = engine::Limits { max_pairs: limits.max_pairs, max_degree: limits.max_degree };
    let (basis, _active) = engine::buchberger(&ctx, gens, &lim, &mut stats)?;
    let polys = basis.iter().map(|p| from_internal(p, &oring)).collect::<Result<Vec<_>>>()?;
    let mut gb = GroebnerBasis { order: ord.clone(), polys, reduced: false, stats };
    gb.stats.basis_size = gb.polys.len();
    gb.stats.degree_multiset = gb.degree_multiset();
    Ok(gb)
}

/// Minimalizes and inter-reduces; every element gets coprime integer coefficients and a positive
/// leading coefficient in the basis order. The result is sorted by ascending leading monomial.
pub fn reduce_basis(gb: &GroebnerBasis) -> Result<GroebnerBasis> {
    let oring = gb.ring()?;
    let ctx = Ctx::new(oring.len(), gb.order.kind())?;
    let polys = gb
        .polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| to_internal(&p.embed(&oring)?, &ctx))
        .collect::<Result<Vec<_>>>()?;
    let mut stats = gb.stats.clone();
    let reduced = engine::interreduce(polys, engine::MAX_DEGREE, &mut stats)?;
    let polys = reduced
        .iter()
        .map(|p| {
            let q = from_internal(p, &oring)?.primitive()?;
            let (_, lc) = q.leading_term(&gb.order)?;
            Ok(if lc.is_negative() { -q } else { q })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = GroebnerBasis { order: gb.order.clone(), polys, reduced: true, stats };
    out.stats.basis_size = out.polys.len();
    out.stats.degree_multiset = out.degree_multiset();
    Ok(out)
}

/// Convenience: [`buchberger`] followed by [`reduce_basis`]; the stats keep the unreduced size
/// in `basis_size` of the first pass available through the returned pair.
pub fn reduced_groebner(ideal: &Ideal, ord: &MonomialOrder, limits: &GroebnerLimits) -> Result<(GroebnerBasis, BuchbergerStats)> {
    let gb = buchberger(ideal, ord, limits)?;
    let raw = gb.stats.clone();
    Ok((reduce_basis(&gb)?, raw))
}

/// Basis members whose support lies in `keep`, expressed over the kept variables (order-list order).
pub fn elimination_ideal<S: AsRef<str>>(gb: &GroebnerBasis, keep: &[S]) -> Result<Vec<MultiPoly>> {
    let vars = gb.order.vars();
    for k in keep {
        if !vars.iter().any(|v| v == k.as_ref()) {
            return Err(Error::Var(k.as_ref().to_string()));
        }
    }
    let is_kept = |v: &String| keep.iter().any(|k| k.as_ref() == v);
    let dropped: Vec<usize> = (0..vars.len()).filter(|&i| !is_kept(&vars[i])).collect();
    if !dropped.is_empty() {
        let prefix = dropped.iter().enumerate().all(|(pos, &i)| pos == i);
        let ok = match gb.order.kind() {
            OrderKind::Lex => prefix,
            OrderKind::Block(k) => prefix && dropped.len() == k,
            OrderKind::GrevLex => false,
        };
        if !ok {
            return Err(Error::Order(format!(
                "{} is not an elimination order for dropping [{}]",
                gb.order,
                dropped.iter().map(|&i| vars[i].as_str()).collect::<Vec<_>>().join(", ")
            )));
        }
    }
    let kept_names: Vec<&str> = vars.iter().filter(|v| is_kept(v)).map(String::as_str).collect();
    let kring = Ring::new(&kept_names)?;
    let mut out = Vec::new();
    for p in &gb.polys {
        let supp = p.support();
        if supp.iter().all(&is_kept) {
            out.push(p.embed(&kring)?);
        }
    }
    Ok(out)
}

/// True when every generator reduces to zero and every S-polynomial of the basis reduces to zero.
pub fn is_groebner_basis(polys: &[MultiPoly], ord: &MonomialOrder) -> Result<bool> {
    for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            let s = s_polynomial(&polys[i], &polys[j], ord)?;
            let (r, _) = s.reduce(polys, ord)?;
            if !r.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `p` reduces to zero modulo the basis.
pub fn reduces_to_zero(p: &MultiPoly, gb: &GroebnerBasis) -> Result<bool> {
    let oring = gb.ring()?;
    let (r, _) = p.embed(&oring)?.reduce(&gb.polys, &gb.order)?;
    Ok(r.is_zero())
}
