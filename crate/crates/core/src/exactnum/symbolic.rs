//! Exact polynomials over the constant alphabet {V, log 2, π, γ, ζ(odd), β(even)}.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, Rational};
use crate::error::{MtvError, Result};
use crate::special;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstSymbol {
    Pi,
    EulerGamma,
    /// ζ(n), n odd ≥ 3.
    Zeta(u32),
    /// β(n), n even ≥ 2.
    Beta(u32),
    Log2,
    /// The regularisation parameter t^{*,V}(1) = V.
    V,
}

impl ConstSymbol {
    pub fn weight(self) -> u32 {
        match self {
            ConstSymbol::Zeta(n) | ConstSymbol::Beta(n) => n,
            _ => 1,
        }
    }

    fn latex(self) -> String {
        match self {
            ConstSymbol::Pi => "\\pi".into(),
            ConstSymbol::EulerGamma => "\\gamma".into(),
            ConstSymbol::Zeta(n) => format!("\\zeta({n})"),
            ConstSymbol::Beta(n) => format!("\\beta({n})"),
            ConstSymbol::Log2 => "\\log(2)".into(),
            ConstSymbol::V => "V".into(),
        }
    }
}

impl fmt::Display for ConstSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstSymbol::Pi => f.write_str("Pi"),
            ConstSymbol::EulerGamma => f.write_str("EulerGamma"),
            ConstSymbol::Zeta(n) => write!(f, "Zeta({n})"),
            ConstSymbol::Beta(n) => write!(f, "Beta({n})"),
            ConstSymbol::Log2 => f.write_str("Log2"),
            ConstSymbol::V => f.write_str("V"),
        }
    }
}

impl FromStr for ConstSymbol {
    type Err = MtvError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let indexed = |prefix: &str| -> Option<u32> {
            s.strip_prefix(prefix)?
                .strip_prefix('(')?
                .strip_suffix(')')?
                .trim()
                .parse()
                .ok()
        };
        match s {
            "Pi" => Ok(ConstSymbol::Pi),
            "EulerGamma" => Ok(ConstSymbol::EulerGamma),
            "Log2" => Ok(ConstSymbol::Log2),
            "V" => Ok(ConstSymbol::V),
            _ => {
                if let Some(n) = indexed("Zeta") {
                    if n >= 3 && n % 2 == 1 {
                        return Ok(ConstSymbol::Zeta(n));
                    }
                }
                if let Some(n) = indexed("Beta") {
                    if n >= 2 && n % 2 == 0 {
                        return Ok(ConstSymbol::Beta(n));
                    }
                }
                Err(MtvError::Parse(format!("unknown constant symbol {s:?}")))
            }
        }
    }
}

/// A product of symbols, kept as a sorted multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<ConstSymbol>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut syms: Vec<ConstSymbol>) -> Self {
        syms.sort();
        Monomial(syms)
    }

    pub fn symbols(&self) -> &[ConstSymbol] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|s| s.weight()).sum()
    }

    pub fn degree_of(&self, s: ConstSymbol) -> usize {
        self.0.iter().filter(|&&t| t == s).count()
    }

    pub fn contains(&self, s: ConstSymbol) -> bool {
        self.0.contains(&s)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial::new(v)
    }

    /// Symbol/power pairs in storage order.
    fn powers(&self) -> Vec<(ConstSymbol, usize)> {
        let mut out: Vec<(ConstSymbol, usize)> = Vec::new();
        for &s in &self.0 {
            match out.last_mut() {
                Some((t, e)) if *t == s => *e += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    fn render(&self, latex: bool) -> String {
        let parts: Vec<String> = self
            .powers()
            .into_iter()
            .map(|(s, e)| {
                let base = if latex { s.latex() } else { s.to_string() };
                match (e, latex) {
                    (1, _) => base,
                    (e, false) => format!("{base}^{e}"),
                    (e, true) => format!("{base}^{{{e}}}"),
                }
            })
            .collect();
        parts.join(if latex { " " } else { "*" })
    }

    fn sort_key(&self) -> (Reverse<usize>, usize, usize) {
        (
            Reverse(self.degree_of(ConstSymbol::V)),
            self.degree_of(ConstSymbol::Log2),
            self.degree_of(ConstSymbol::EulerGamma),
        )
    }
}

/// Display order: high powers of V first, then by powers of log 2 and γ, then
/// lexicographically on the symbol list.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    /// The zero value is homogeneous of every weight.
    Any,
    Homogeneous(u32),
    Inhomogeneous,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Any => f.write_str("any"),
            Weight::Homogeneous(w) => write!(f, "{w}"),
            Weight::Inhomogeneous => f.write_str("inhomogeneous"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymbolicValue {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymbolicValue {
    pub fn zero() -> Self {
        SymbolicValue::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::term(q, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn term(q: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(m, q);
        }
        SymbolicValue { terms }
    }

    pub fn symbol(s: ConstSymbol) -> Self {
        Self::term(Rational::one(), Monomial::new(vec![s]))
    }

    pub fn v() -> Self {
        Self::symbol(ConstSymbol::V)
    }

    pub fn log2() -> Self {
        Self::symbol(ConstSymbol::Log2)
    }

    pub fn gamma() -> Self {
        Self::symbol(ConstSymbol::EulerGamma)
    }

    pub fn pi_pow(n: usize) -> Self {
        Self::term(Rational::one(), Monomial::new(vec![ConstSymbol::Pi; n]))
    }

    /// ζ(n) for n ≥ 2; even arguments are reduced to rational multiples of π^n.
    pub fn zeta(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(MtvError::Domain(format!("zeta({n}) diverges")));
        }
        if n.is_multiple_of(2) {
            Ok(Self::pi_pow(n as usize).scale(&special::zeta_even_coeff(n)))
        } else {
            Ok(Self::symbol(ConstSymbol::Zeta(n)))
        }
    }

    /// β(n) for n ≥ 1; odd arguments are reduced to rational multiples of π^n.
    pub fn beta(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(MtvError::Domain(format!("beta({n}) is not defined here")));
        }
        if n % 2 == 1 {
            Ok(Self::pi_pow(n as usize).scale(&special::beta_odd_coeff(n)))
        } else {
            Ok(Self::symbol(ConstSymbol::Beta(n)))
        }
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

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The rational constant term, if the value is a plain rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        SymbolicValue {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, q: Rational) {
        if q.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(q);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &SymbolicValue) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &SymbolicValue, q: &Rational) {
        if q.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * q);
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn weight(&self) -> Weight {
        let mut w = None;
        for m in self.terms.keys() {
            let mw = m.weight();
            match w {
                None => w = Some(mw),
                Some(x) if x != mw => return Weight::Inhomogeneous,
                _ => {}
            }
        }
        w.map_or(Weight::Any, Weight::Homogeneous)
    }

    pub fn contains_symbol(&self, s: ConstSymbol) -> bool {
        self.terms.keys().any(|m| m.contains(s))
    }

    pub fn is_gamma_free(&self) -> bool {
        !self.contains_symbol(ConstSymbol::EulerGamma)
    }

    /// Polynomial in V: coefficient list indexed by the power of V.
    pub fn v_coefficients(&self) -> Vec<SymbolicValue> {
        let mut out: Vec<SymbolicValue> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.degree_of(ConstSymbol::V);
            if out.len() <= d {
                out.resize(d + 1, SymbolicValue::zero());
            }
            let rest = Monomial::new(
                m.0.iter()
                    .copied()
                    .filter(|&s| s != ConstSymbol::V)
                    .collect(),
            );
            out[d].add_term(rest, c.clone());
        }
        out
    }

    /// Replace every occurrence of `s` by `by`.
    pub fn substitute(&self, s: ConstSymbol, by: &SymbolicValue) -> SymbolicValue {
        let mut out = SymbolicValue::zero();
        for (m, c) in &self.terms {
            let d = m.degree_of(s);
            let rest = Monomial::new(m.0.iter().copied().filter(|&t| t != s).collect());
            let base = SymbolicValue::term(c.clone(), rest);
            out.add_assign_ref(&(&base * &by.pow(d as u32)));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = m.render(latex);
            let coef = if latex && !mag.is_integer() {
                format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
            } else {
                format_rational(&mag)
            };
            if body.is_empty() {
                out.push_str(&coef);
            } else if mag.is_one() {
                out.push_str(&body);
            } else if latex {
                out.push_str(&format!("{coef} {body}"));
            } else {
                out.push_str(&format!("{coef}*{body}"));
            }
        }
        out
    }

    /// Parses the text rendering, e.g. `-1/4*Pi*V + 1/2*Beta(2)`; also accepts
    /// lower-case `log2`/`pi` and `^` powers.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(MtvError::Parse("empty expression".into()));
        }
        let mut out = SymbolicValue::zero();
        let mut sign = 1i64;
        let mut cur = String::new();
        let flush = |cur: &mut String, sign: i64, out: &mut SymbolicValue| -> Result<()> {
            let t = cur.trim().to_string();
            cur.clear();
            if t.is_empty() {
                return Err(MtvError::Parse("dangling operator".into()));
            }
            let mut coef = Rational::from_integer(sign.into());
            let mut syms = Vec::new();
            for factor in t.split('*') {
                let f = factor.trim();
                if f.is_empty() {
                    return Err(MtvError::Parse(format!("bad term {t:?}")));
                }
                if f.starts_with(|c: char| c.is_ascii_digit()) {
                    coef *= parse_rational(f)?;
                    continue;
                }
                let (base, exp) = match f.rsplit_once('^') {
                    Some((b, e)) => (
                        b,
                        e.trim()
                            .parse::<usize>()
                            .map_err(|_| MtvError::Parse(f.into()))?,
                    ),
                    None => (f, 1),
                };
                let base = match base.trim() {
                    "log2" | "log(2)" => "Log2",
                    "pi" => "Pi",
                    "gamma" => "EulerGamma",
                    b => b,
                };
                let sym: ConstSymbol = base.parse()?;
                syms.extend(std::iter::repeat_n(sym, exp));
            }
            out.add_term(Monomial::new(syms), coef);
            Ok(())
        };
        let mut depth = 0i32;
        let mut first = true;
        for ch in s.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if cur.trim().is_empty() && first {
                        sign = if ch == '-' { -sign } else { sign };
                        continue;
                    }
                    flush(&mut cur, sign, &mut out)?;
                    sign = if ch == '-' { -1 } else { 1 };
                }
                _ => cur.push(ch),
            }
            if !cur.trim().is_empty() {
                first = false;
            }
        }
        flush(&mut cur, sign, &mut out)?;
        Ok(out)
    }
}

impl fmt::Display for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl From<Rational> for SymbolicValue {
    fn from(q: Rational) -> Self {
        SymbolicValue::from_rational(q)
    }
}

impl Add<&SymbolicValue> for &SymbolicValue {
    type Output = SymbolicValue;
    fn add(self, rhs: &SymbolicValue) -> SymbolicValue {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub<&SymbolicValue> for &SymbolicValue {
    type Output = SymbolicValue;
    fn sub(self, rhs: &SymbolicValue) -> SymbolicValue {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Mul<&SymbolicValue> for &SymbolicValue {
    type Output = SymbolicValue;
    fn mul(self, rhs: &SymbolicValue) -> SymbolicValue {
        let mut out = SymbolicValue::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &SymbolicValue {
    type Output = SymbolicValue;
    fn neg(self) -> SymbolicValue {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<SymbolicValue> for SymbolicValue {
            type Output = SymbolicValue;
            fn $m(self, rhs: SymbolicValue) -> SymbolicValue {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&SymbolicValue> for SymbolicValue {
            type Output = SymbolicValue;
            fn $m(self, rhs: &SymbolicValue) -> SymbolicValue {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SymbolicValue {
    type Output = SymbolicValue;
    fn neg(self) -> SymbolicValue {
        -&self
    }
}

impl std::iter::Sum for SymbolicValue {
    fn sum<I: Iterator<Item = SymbolicValue>>(iter: I) -> SymbolicValue {
        let mut acc = SymbolicValue::zero();
        for x in iter {
            acc.add_assign_ref(&x);
        }
        acc
    }
}

pub fn sym_add(a: &SymbolicValue, b: &SymbolicValue) -> SymbolicValue {
    a + b
}

pub fn sym_mul(a: &SymbolicValue, b: &SymbolicValue) -> SymbolicValue {
    a * b
}

pub fn sym_weight(v: &SymbolicValue) -> Weight {
    v.weight()
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    syms: Vec<String>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct SymbolicJson {
    monomials: Vec<MonomialJson>,
}

impl Serialize for SymbolicValue {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let monomials = self
            .terms
            .iter()
            .map(|(m, c)| MonomialJson {
                syms: m.0.iter().map(|s| s.to_string()).collect(),
                coef: format_rational(c),
            })
            .collect();
        SymbolicJson { monomials }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SymbolicValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        // The canonical object form, or the text rendering (handy in fixtures).
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Object(SymbolicJson),
        }
        let j = match Repr::deserialize(de)? {
            Repr::Text(s) => return SymbolicValue::parse(&s).map_err(D::Error::custom),
            Repr::Object(j) => j,
        };
        let mut out = SymbolicValue::zero();
        for m in j.monomials {
            let syms = m
                .syms
                .iter()
                .map(|s| s.parse::<ConstSymbol>())
                .collect::<Result<Vec<_>>>()
                .map_err(D::Error::custom)?;
            let c = parse_rational(&m.coef).map_err(D::Error::custom)?;
            out.add_term(Monomial::new(syms), c);
        }
        Ok(out)
    }
}
