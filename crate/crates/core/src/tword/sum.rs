use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TWord;
use crate::error::Result;
use crate::exactnum::{BigReal, Rational, SymbolicValue};

/// Formal linear combination of words with symbolic coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalWordSum {
    terms: BTreeMap<TWord, SymbolicValue>,
}

impl FormalWordSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: TWord) -> Self {
        Self::term(w, SymbolicValue::one())
    }

    pub fn term(w: TWord, c: SymbolicValue) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c);
        s
    }

    pub fn add_term(&mut self, w: TWord, c: SymbolicValue) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        e.add_assign_ref(&c);
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_rational(&mut self, w: TWord, q: Rational) {
        self.add_term(w, SymbolicValue::from_rational(q));
    }

    pub fn add_scaled(&mut self, other: &FormalWordSum, q: &Rational) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.scale(q));
        }
    }

    pub fn add_times(&mut self, other: &FormalWordSum, factor: &SymbolicValue) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * factor);
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, q);
        out
    }

    pub fn times(&self, factor: &SymbolicValue) -> Self {
        let mut out = Self::zero();
        out.add_times(self, factor);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TWord, &SymbolicValue)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &TWord) -> SymbolicValue {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn words(&self) -> impl Iterator<Item = &TWord> {
        self.terms.keys()
    }

    /// Sum of coefficients, when all are rational.
    pub fn rational_total(&self) -> Option<Rational> {
        let mut t = Rational::zero();
        for c in self.terms.values() {
            t += c.as_rational()?;
        }
        Some(t)
    }

    /// Σ coeff · value(word), exactly.
    pub fn evaluate(
        &self,
        mut value: impl FnMut(&TWord) -> Result<SymbolicValue>,
    ) -> Result<SymbolicValue> {
        let mut acc = SymbolicValue::zero();
        for (w, c) in &self.terms {
            let v = if w.is_empty() {
                SymbolicValue::one()
            } else {
                value(w)?
            };
            acc.add_assign_ref(&(c * &v));
        }
        Ok(acc)
    }

    /// Σ coeff · value(word) numerically; `coef` evaluates the symbolic coefficients.
    pub fn evaluate_num(
        &self,
        mut coef: impl FnMut(&SymbolicValue) -> Result<BigReal>,
        mut value: impl FnMut(&TWord) -> Result<BigReal>,
        prec: u32,
    ) -> Result<BigReal> {
        let mut acc = BigReal::zero(prec);
        for (w, c) in &self.terms {
            let v = if w.is_empty() {
                BigReal::one(prec)
            } else {
                value(w)?
            };
            acc = &acc + &(&coef(c)? * &v);
        }
        Ok(acc)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else if latex {
                    w.latex()
                } else {
                    w.pretty()
                };
                let c_str = if latex { c.to_latex() } else { c.to_string() };
                if c.as_rational().is_some_and(|q| q.is_one()) {
                    word
                } else if c.len() == 1 {
                    format!("{c_str}*{word}")
                } else {
                    format!("({c_str})*{word}")
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for FormalWordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: TWord,
    coef: SymbolicValue,
}

#[derive(Serialize, Deserialize)]
struct SumJson {
    terms: Vec<TermJson>,
}

impl Serialize for FormalWordSum {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        SumJson {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    word: w.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FormalWordSum {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = SumJson::deserialize(de)?;
        let mut out = FormalWordSum::zero();
        for t in j.terms {
            out.add_term(t.word, t.coef);
        }
        Ok(out)
    }
}
