//! Fraction-free Buchberger engine on packed monomials.
//!
//! A monomial is stored as 32 bytes packed big-endian into four words: bytes 0..16 hold an
//! order key, bytes 16..32 the exponents. The key is chosen so that comparing keys
//! lexicographically realises the monomial order *and* so that every key byte is a sum of
//! exponents. Multiplication is therefore plain word addition and comparison is a word-wise
//! compare. With all bytes below 128 divisibility is a SWAR borrow test.
//!
//! Keys: lex stores the exponents themselves; graded reverse lex over `e1..en` stores
//! `[deg, e1+..+e(n-1), e1+..+e(n-2), .., e1]` (larger wins at the first difference, which is
//! the usual "smaller exponent of the last differing variable wins" rule); a block order
//! concatenates the graded reverse lex keys of both blocks.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::BuchbergerStats;
use crate::error::{Error, Result};
use crate::poly::OrderKind;

pub(crate) const MAX_VARS: usize = 16;
/// Every key byte is bounded by the total degree, which must stay below 128 for the SWAR test.
pub(crate) const MAX_DEGREE: u32 = 127;
const HIGH: u64 = 0x8080_8080_8080_8080;
const ONES: u64 = 0x0101_0101_0101_0101;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Mono([u64; 4]);

impl Mono {
    #[inline]
    fn mul(self, o: Mono) -> Mono {
        Mono([
            self.0[0].wrapping_add(o.0[0]),
            self.0[1].wrapping_add(o.0[1]),
            self.0[2].wrapping_add(o.0[2]),
            self.0[3].wrapping_add(o.0[3]),
        ])
    }

    /// `self / o`; only valid when `o` divides `self`.
    #[inline]
    fn div(self, o: Mono) -> Mono {
        Mono([
            self.0[0].wrapping_sub(o.0[0]),
            self.0[1].wrapping_sub(o.0[1]),
            self.0[2].wrapping_sub(o.0[2]),
            self.0[3].wrapping_sub(o.0[3]),
        ])
    }

    /// True when `self` divides `o`.
    #[inline]
    fn divides(self, o: Mono) -> bool {
        ((o.0[2] | HIGH).wrapping_sub(self.0[2]) & HIGH) == HIGH
            && ((o.0[3] | HIGH).wrapping_sub(self.0[3]) & HIGH) == HIGH
    }

    #[inline]
    fn degree(self) -> u32 {
        ((self.0[2].wrapping_mul(ONES) >> 56) + (self.0[3].wrapping_mul(ONES) >> 56)) as u32
    }

    fn exps(self, n: usize) -> Vec<u32> {
        let mut b = [0u8; 16];
        b[..8].copy_from_slice(&self.0[2].to_be_bytes());
        b[8..].copy_from_slice(&self.0[3].to_be_bytes());
        b[..n].iter().map(|&x| x as u32).collect()
    }

    fn exp_bytes(self) -> [u8; 16] {
        let mut b = [0u8; 16];
        b[..8].copy_from_slice(&self.0[2].to_be_bytes());
        b[8..].copy_from_slice(&self.0[3].to_be_bytes());
        b
    }

    fn is_coprime(self, o: Mono) -> bool {
        let a = self.exp_bytes();
        let b = o.exp_bytes();
        a.iter().zip(&b).all(|(x, y)| *x == 0 || *y == 0)
    }
}

/// Order context: number of variables and the order kind (variables already permuted).
#[derive(Clone, Copy, Debug)]
pub(crate) struct Ctx {
    pub n: usize,
    pub kind: OrderKind,
}

impl Ctx {
    pub fn new(n: usize, kind: OrderKind) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::Ring(format!("at most {MAX_VARS} variables are supported, got {n}")));
        }
        Ok(Ctx { n, kind })
    }

    pub fn mono(&self, e: &[u32]) -> Result<Mono> {
        let deg: u32 = e.iter().sum();
        if deg > MAX_DEGREE {
            return Err(Error::Ring(format!("monomial degree {deg} exceeds {MAX_DEGREE}")));
        }
        Ok(self.mono_unchecked(&e.iter().map(|&x| x as u8).collect::<Vec<u8>>()))
    }

    fn mono_unchecked(&self, e: &[u8]) -> Mono {
        let n = self.n;
        let mut key = [0u8; 16];
        match self.kind {
            OrderKind::Lex => key[..n].copy_from_slice(&e[..n]),
            OrderKind::GrevLex => grevlex_key(&e[..n], &mut key[..n]),
            OrderKind::Block(k) => {
                let k = k.min(n);
                grevlex_key(&e[..k], &mut key[..k]);
                grevlex_key(&e[k..n], &mut key[k..n]);
            }
        }
        let mut ex = [0u8; 16];
        ex[..n].copy_from_slice(&e[..n]);
        let w = |b: &[u8]| u64::from_be_bytes(b.try_into().expect("8 bytes"));
        Mono([w(&key[..8]), w(&key[8..]), w(&ex[..8]), w(&ex[8..])])
    }

    fn lcm(&self, a: Mono, b: Mono) -> Mono {
        let x = a.exp_bytes();
        let y = b.exp_bytes();
        let m: Vec<u8> = x.iter().zip(&y).map(|(p, q)| *p.max(q)).collect();
        self.mono_unchecked(&m)
    }
}

fn grevlex_key(e: &[u8], out: &mut [u8]) {
    let n = e.len();
    if n == 0 {
        return;
    }
    let mut prefix = vec![0u8; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] + e[i];
    }
    out[0] = prefix[n];
    for j in 1..n {
        out[j] = prefix[n - j];
    }
}

/// Integer polynomial with terms sorted in strictly descending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    pub terms: Vec<(Mono, BigInt)>,
}

impl IPoly {
    pub fn from_terms(mut terms: Vec<(Mono, BigInt)>) -> IPoly {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Mono, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        IPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Mono {
        self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn exps(&self, n: usize) -> Vec<(Vec<u32>, BigInt)> {
        self.terms.iter().map(|(m, c)| (m.exps(n), c.clone())).collect()
    }

    /// Divides out the integer content and makes the leading coefficient positive.
    pub fn normalize(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }
}

/// `a·p − b·t·q` on descending term lists.
fn merge_sub(p: &[(Mono, BigInt)], a: &BigInt, q: &[(Mono, BigInt)], t: Mono, b: &BigInt) -> Vec<(Mono, BigInt)> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    let a_one = a.is_one();
    while i < p.len() && j < q.len() {
        let qm = q[j].0.mul(t);
        match p[i].0.cmp(&qm) {
            Ordering::Greater => {
                out.push((p[i].0, if a_one { p[i].1.clone() } else { &p[i].1 * a }));
                i += 1;
            }
            Ordering::Less => {
                out.push((qm, -(&q[j].1 * b)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if a_one { p[i].1.clone() } else { &p[i].1 * a } - &q[j].1 * b;
                if !c.is_zero() {
                    out.push((qm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    for (m, c) in &p[i..] {
        out.push((*m, if a_one { c.clone() } else { c * a }));
    }
    for (m, c) in &q[j..] {
        out.push((m.mul(t), -(c * b)));
    }
    out
}

fn content_of(terms: &[(Mono, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Fully reduces `p` by `reducers` (all with positive leading coefficients); returns the
/// primitive remainder. `max_degree` bounds every multiplier-times-reducer degree.
pub(crate) fn reduce_full(p: &IPoly, basis: &[IPoly], reducers: &[usize], max_degree: u32, stats: &mut BuchbergerStats) -> Result<IPoly> {
    let mut terms = p.terms.clone();
    let mut i = 0;
    let mut steps = 0usize;
    let mut scaled_prefix = false;
    while i < terms.len() {
        let m = terms[i].0;
        // among divisors pick the one with fewest terms (first in list order on ties)
        let mut best: Option<usize> = None;
        for &r in reducers {
            let g = &basis[r];
            if g.lead().divides(m) && best.is_none_or(|b| g.terms.len() < basis[b].terms.len()) {
                best = Some(r);
            }
        }
        let Some(r) = best else {
            i += 1;
            continue;
        };
        let g = &basis[r];
        let t = m.div(g.lead());
        if t.degree() + g.max_degree() > max_degree {
            return Err(Error::ResourceLimit {
                what: format!("degree cap {max_degree} exceeded during reduction"),
                stats: stats.clone(),
            });
        }
        let c = &terms[i].1;
        let gg = c.gcd(g.lc());
        let a = g.lc() / &gg;
        let b = c / &gg;
        let mut out = Vec::with_capacity(terms.len() + g.terms.len());
        if !a.is_one() {
            scaled_prefix = true;
            for (pm, pc) in &terms[..i] {
                out.push((*pm, pc * &a));
            }
        } else {
            out.extend_from_slice(&terms[..i]);
        }
        out.extend(merge_sub(&terms[i + 1..], &a, &g.terms[1..], t, &b));
        terms = out;
        steps += 1;
        if scaled_prefix && steps.is_multiple_of(8) {
            let g = content_of(&terms);
            if !g.is_one() && !g.is_zero() {
                for (_, c) in &mut terms {
                    *c /= &g;
                }
            }
        }
    }
    let mut out = IPoly { terms };
    out.normalize();
    Ok(out)
}

pub(crate) struct Limits {
    pub max_pairs: usize,
    pub max_degree: u32,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    alive: bool,
}

/// Completes `gens` to a Gröbner basis. Returns every polynomial ever added (generators first),
/// together with a flag per element telling whether it is still part of the minimal set.
pub(crate) fn buchberger(ctx: &Ctx, gens: Vec<IPoly>, limits: &Limits, stats: &mut BuchbergerStats) -> Result<(Vec<IPoly>, Vec<bool>)> {
    let mut basis: Vec<IPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u32, usize)>> = BinaryHeap::new();

    let mut gens: Vec<IPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    // insert in increasing leading-monomial order so that early reductions are cheap
    gens.sort_by_key(|a| a.lead());
    for g in gens {
        if g.max_degree() > limits.max_degree {
            return Err(Error::ResourceLimit {
                what: format!("generator degree exceeds cap {}", limits.max_degree),
                stats: stats.clone(),
            });
        }
        let reducers: Vec<usize> = (0..basis.len()).filter(|&k| active[k]).collect();
        let h = reduce_full(&g, &basis, &reducers, limits.max_degree, stats)?;
        if !h.is_zero() {
            update(ctx, h, &mut basis, &mut active, &mut pairs, &mut heap, stats);
        }
    }

    while let Some(Reverse((_, id))) = heap.pop() {
        if !pairs[id].alive {
            continue;
        }
        pairs[id].alive = false;
        stats.pairs_considered += 1;
        if stats.pairs_considered > limits.max_pairs {
            return Err(Error::ResourceLimit {
                what: format!("pair limit {} exceeded", limits.max_pairs),
                stats: stats.clone(),
            });
        }
        let (i, j, lcm) = (pairs[id].i, pairs[id].j, pairs[id].lcm);
        if lcm.degree() > limits.max_degree {
            return Err(Error::ResourceLimit {
                what: format!("S-pair degree {} exceeds cap {}", lcm.degree(), limits.max_degree),
                stats: stats.clone(),
            });
        }
        let s = s_poly(&basis[i], &basis[j], lcm);
        let reducers: Vec<usize> = (0..basis.len()).filter(|&k| active[k]).collect();
        let h = reduce_full(&s, &basis, &reducers, limits.max_degree, stats)?;
        stats.reductions += 1;
        if h.is_zero() {
            stats.zero_reductions += 1;
        } else {
            update(ctx, h, &mut basis, &mut active, &mut pairs, &mut heap, stats);
        }
    }
    Ok((basis, active))
}

/// Primitive S-polynomial with leading terms cancelled (fraction-free).
pub(crate) fn s_poly(f: &IPoly, g: &IPoly, lcm: Mono) -> IPoly {
    let tf = lcm.div(f.lead());
    let tg = lcm.div(g.lead());
    let gg = f.lc().gcd(g.lc());
    let a = g.lc() / &gg;
    let b = f.lc() / &gg;
    // a·tf·f − b·tg·g, skipping both (cancelling) leading terms
    let pf: Vec<(Mono, BigInt)> = f.terms[1..].iter().map(|(m, c)| (m.mul(tf), c.clone())).collect();
    let mut out = IPoly { terms: merge_sub(&pf, &a, &g.terms[1..], tg, &b) };
    out.normalize();
    out
}

/// Gebauer–Möller installation of a new basis element.
fn update(
    ctx: &Ctx,
    h: IPoly,
    basis: &mut Vec<IPoly>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    heap: &mut BinaryHeap<Reverse<(u32, usize)>>,
    stats: &mut BuchbergerStats,
) {
    let t = basis.len();
    let lh = h.lead();
    let cand: Vec<usize> = (0..t).filter(|&k| active[k]).collect();
    let lcms: Vec<Mono> = cand.iter().map(|&k| ctx.lcm(basis[k].lead(), lh)).collect();
    let coprime: Vec<bool> = cand.iter().map(|&k| basis[k].lead().is_coprime(lh)).collect();

    // criterion M/F: a new pair survives if its leads are coprime or no other pending new
    // pair (still undecided or already kept) has an lcm dividing its lcm
    let mut undecided: Vec<usize> = (0..cand.len()).collect();
    undecided.reverse();
    let mut kept: Vec<usize> = Vec::new();
    while let Some(a) = undecided.pop() {
        let dominated = undecided.iter().chain(kept.iter()).any(|&b| lcms[b].divides(lcms[a]));
        if coprime[a] || !dominated {
            kept.push(a);
        } else {
            stats.pairs_skipped_criteria += 1;
        }
    }
    // Buchberger's product criterion
    let mut newpairs = Vec::new();
    for a in kept {
        if coprime[a] {
            stats.pairs_skipped_criteria += 1;
        } else {
            newpairs.push((cand[a], lcms[a]));
        }
    }
    // chain criterion on old pairs
    for p in pairs.iter_mut().filter(|p| p.alive) {
        if lh.divides(p.lcm) && ctx.lcm(basis[p.i].lead(), lh) != p.lcm && ctx.lcm(basis[p.j].lead(), lh) != p.lcm {
            p.alive = false;
            stats.pairs_skipped_criteria += 1;
        }
    }
    for k in 0..t {
        if active[k] && lh.divides(basis[k].lead()) {
            active[k] = false;
        }
    }
    basis.push(h);
    active.push(true);
    for (i, lcm) in newpairs {
        let id = pairs.len();
        pairs.push(Pair { i, j: t, lcm, alive: true });
        heap.push(Reverse((lcm.degree(), id)));
    }
}

/// Autoreduction: leading monomials pairwise non-divisible, tails fully reduced, content removed.
/// For a Gröbner basis input this is the reduced basis. Sorted by ascending leading monomial.
pub(crate) fn interreduce(polys: Vec<IPoly>, max_degree: u32, stats: &mut BuchbergerStats) -> Result<Vec<IPoly>> {
    let cap = max_degree.max(MAX_DEGREE);
    let mut pending: Vec<IPoly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    // pop from the back: process the smallest lead first
    pending.sort_by(|a, b| b.lead().cmp(&a.lead()).then(b.terms.len().cmp(&a.terms.len())));
    let mut kept: Vec<IPoly> = Vec::new();
    while let Some(p) = pending.pop() {
        let all: Vec<usize> = (0..kept.len()).collect();
        let h = reduce_full(&p, &kept, &all, cap, stats)?;
        if h.is_zero() {
            continue;
        }
        let lh = h.lead();
        let mut k = 0;
        let mut requeue = false;
        while k < kept.len() {
            if lh.divides(kept[k].lead()) {
                pending.push(kept.remove(k));
                requeue = true;
            } else {
                k += 1;
            }
        }
        kept.push(h);
        if requeue {
            pending.sort_by(|a, b| b.lead().cmp(&a.lead()).then(b.terms.len().cmp(&a.terms.len())));
        }
    }
    kept.sort_by_key(|a| a.lead());
    // tails: reducing in ascending lead order only ever uses already-final reducers
    let mut out: Vec<IPoly> = Vec::with_capacity(kept.len());
    for p in &kept {
        let others: Vec<usize> = (0..out.len()).collect();
        out.push(reduce_full(p, &out, &others, cap, stats)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize, kind: OrderKind) -> Ctx {
        Ctx::new(n, kind).unwrap()
    }

    #[test]
    fn packed_order_matches_reference_order() {
        let vecs: Vec<Vec<u32>> = (0..81).map(|i| vec![i % 3, (i / 3) % 3, (i / 9) % 3, i / 27]).collect();
        for kind in [OrderKind::Lex, OrderKind::GrevLex, OrderKind::Block(1), OrderKind::Block(2), OrderKind::Block(3)] {
            let c = ctx(4, kind);
            for a in &vecs {
                for b in &vecs {
                    let ma = c.mono(a).unwrap();
                    let mb = c.mono(b).unwrap();
                    assert_eq!(ma.cmp(&mb), kind.compare(a, b), "{kind:?} {a:?} {b:?}");
                    let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    assert_eq!(ma.mul(mb), c.mono(&prod).unwrap());
                    assert_eq!(ma.divides(mb), a.iter().zip(b).all(|(x, y)| x <= y));
                    assert_eq!(ma.degree(), a.iter().sum::<u32>());
                }
            }
        }
    }
}
