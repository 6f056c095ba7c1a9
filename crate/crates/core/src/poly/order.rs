use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector, one slot per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = power;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Graded reverse lex on the first `k` variables, ties broken by graded reverse lex on the rest.
    Block(usize),
}

impl OrderKind {
    /// Accepts `lex`, `grevlex` (or `tdeg`) and `block:k`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().to_ascii_lowercase();
        match t.as_str() {
            "lex" | "plex" => Ok(OrderKind::Lex),
            "grevlex" | "tdeg" | "degrevlex" => Ok(OrderKind::GrevLex),
            _ => {
                if let Some(k) = t.strip_prefix("block:") {
                    let k: usize =
                        k.parse().map_err(|_| Error::Order(format!("bad block size in `{text}`")))?;
                    Ok(OrderKind::Block(k))
                } else {
                    Err(Error::Order(format!("unknown monomial order `{text}`")))
                }
            }
        }
    }

    /// Compares two exponent vectors of equal length.
    pub fn compare<T: Copy + Into<u32>>(self, a: &[T], b: &[T]) -> Ordering {
        match self {
            OrderKind::Lex => lex(a, b),
            OrderKind::GrevLex => grevlex(a, b),
            OrderKind::Block(k) => {
                let k = k.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::Lex => write!(f, "lex"),
            OrderKind::GrevLex => write!(f, "grevlex"),
            OrderKind::Block(k) => write!(f, "block:{k}"),
        }
    }
}

fn lex<T: Copy + Into<u32>>(a: &[T], b: &[T]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match (*x).into().cmp(&(*y).into()) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex<T: Copy + Into<u32>>(a: &[T], b: &[T]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e.into()).sum();
    let db: u32 = b.iter().map(|&e| e.into()).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match (*x).into().cmp(&(*y).into()) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// A monomial order over an explicit, ordered variable list (first variable is largest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    vars: Vec<String>,
}

impl MonomialOrder {
    pub fn new<S: AsRef<str>>(kind: OrderKind, vars: &[S]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if let OrderKind::Block(k) = kind {
            if k > vars.len() {
                return Err(Error::Order(format!(
                    "block size {k} exceeds the number of variables ({})",
                    vars.len()
                )));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Order(format!("variable `{v}` listed twice")));
            }
        }
        Ok(MonomialOrder { kind, vars })
    }

    pub fn lex<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::new(OrderKind::Lex, vars).expect("lex order")
    }

    pub fn grevlex<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::new(OrderKind::GrevLex, vars).expect("grevlex order")
    }

    pub fn block<S: AsRef<str>>(k: usize, vars: &[S]) -> Result<Self> {
        Self::new(OrderKind::Block(k), vars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.kind.compare(&a.0, &b.0)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.kind, self.vars.join(" > "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kinds() -> [OrderKind; 4] {
        [OrderKind::Lex, OrderKind::GrevLex, OrderKind::Block(1), OrderKind::Block(2)]
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x^2 y vs x y^2 in [x, y]: same degree, y exponent smaller wins
        assert_eq!(OrderKind::GrevLex.compare(&[2u32, 1], &[1, 2]), Ordering::Greater);
        // xz vs y^2 in [x,y,z]: y^2 > xz
        assert_eq!(OrderKind::GrevLex.compare(&[1u32, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(OrderKind::Lex.compare(&[1u32, 0, 1], &[0, 2, 0]), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_leading_block() {
        // y0 (first block) beats x^5 (second block)
        let k = OrderKind::Block(2);
        assert_eq!(k.compare(&[1u32, 0, 0, 0], &[0, 0, 5, 0]), Ordering::Greater);
        assert_eq!(k.compare(&[0u32, 1, 0, 0], &[0, 0, 3, 3]), Ordering::Greater);
    }

    #[test]
    fn order_kind_parsing() {
        assert_eq!(OrderKind::parse("lex").unwrap(), OrderKind::Lex);
        assert_eq!(OrderKind::parse("tdeg").unwrap(), OrderKind::GrevLex);
        assert_eq!(OrderKind::parse("block:2").unwrap(), OrderKind::Block(2));
        assert!(OrderKind::parse("block:x").is_err());
        assert!(OrderKind::parse("weird").is_err());
        assert!(MonomialOrder::block(5, &["x", "y"]).is_err());
        assert!(MonomialOrder::new(OrderKind::Lex, &["x", "x"]).is_err());
    }

    proptest! {
        #[test]
        fn order_laws(a in prop::collection::vec(0u32..6, 4),
                      b in prop::collection::vec(0u32..6, 4),
                      w in prop::collection::vec(0u32..6, 4)) {
            let (ma, mb, mw) = (Monomial(a), Monomial(b), Monomial(w));
            for k in kinds() {
                let ab = k.compare(&ma.0, &mb.0);
                // antisymmetry and totality
                prop_assert_eq!(ab, k.compare(&mb.0, &ma.0).reverse());
                prop_assert_eq!(ab == Ordering::Equal, ma == mb);
                // multiplicative
                prop_assert_eq!(k.compare(&ma.mul(&mw).0, &mb.mul(&mw).0), ab);
                // 1 is minimal
                prop_assert_ne!(k.compare(&ma.0, &[0u32; 4]), Ordering::Less);
            }
        }

        #[test]
        fn order_is_transitive(a in prop::collection::vec(0u32..4, 3),
                               b in prop::collection::vec(0u32..4, 3),
                               c in prop::collection::vec(0u32..4, 3)) {
            for k in kinds() {
                if k.compare(&a, &b) != Ordering::Greater && k.compare(&b, &c) != Ordering::Greater {
                    prop_assert_ne!(k.compare(&a, &c), Ordering::Greater);
                }
            }
        }
    }
}
