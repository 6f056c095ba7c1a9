use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{MultiPoly, OrderKind, Ring};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Serialized polynomial: `{"vars":[...], "terms":[{"exp":[...], "num":"..", "den":".."}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl PolyJson {
    /// Terms are listed in descending graded reverse lex order.
    pub fn from_poly(p: &MultiPoly) -> Self {
        PolyJson {
            vars: p.ring().vars().to_vec(),
            terms: p
                .sorted_terms(OrderKind::GrevLex)
                .into_iter()
                .map(|(m, c)| TermJson { exp: m.0.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MultiPoly> {
        let ring = Ring::new(&self.vars)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let n: BigInt = t.num.parse().map_err(|_| Error::Parse(format!("bad numerator `{}`", t.num)))?;
            let d: BigInt = t.den.parse().map_err(|_| Error::Parse(format!("bad denominator `{}`", t.den)))?;
            if d == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            terms.push((t.exp.clone(), Rational::new(n, d)));
        }
        MultiPoly::from_terms(&ring, terms)
    }
}
