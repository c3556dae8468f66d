//! Checking linear relations between t values, exactly or numerically.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MtvError, Result};
use crate::exactnum::{sym_eval, BigReal, ConstSymbol, EvalEnv, Monomial, Rational, SymbolicValue};
use crate::genfun::exact_value;
use crate::oracle::{t_num, SumPlan};
use crate::tword::{regularise, FormalWordSum, TWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericOptions {
    pub plan: SumPlan,
    pub prec: u32,
    /// Largest accepted |lhs − rhs|.
    pub tolerance: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            plan: SumPlan::default(),
            prec: 256,
            tolerance: 1e-15,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub side: &'static str,
    pub word: String,
    pub barred: usize,
}

/// Number of barred entries of every word in the relation.
#[derive(Clone, Debug, Serialize)]
pub struct ParityCensus {
    pub terms: Vec<CensusEntry>,
    /// Distinct barred counts that occur.
    pub counts: Vec<usize>,
    /// All counts have the same parity.
    pub homogeneous: bool,
}

impl ParityCensus {
    pub fn of(lhs: &FormalWordSum, rhs: &FormalWordSum) -> Self {
        let terms: Vec<CensusEntry> = [("lhs", lhs), ("rhs", rhs)]
            .into_iter()
            .flat_map(|(side, s)| {
                s.words().map(move |w| CensusEntry {
                    side,
                    word: w.pretty(),
                    barred: w.barred_count(),
                })
            })
            .collect();
        let counts: BTreeSet<usize> = terms.iter().map(|t| t.barred).collect();
        let homogeneous = counts.iter().map(|c| c % 2).collect::<BTreeSet<_>>().len() <= 1;
        ParityCensus {
            terms,
            counts: counts.into_iter().collect(),
            homogeneous,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    /// The mode actually used.
    pub mode: VerifyMode,
    /// Exact mode was requested but some word has no closed form.
    pub fallback: bool,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
    /// Propagated oracle error bound (numeric mode).
    pub error_bound: Option<f64>,
    pub tolerance: Option<f64>,
    pub census: ParityCensus,
}

fn v_of(lambda: &Rational) -> SymbolicValue {
    SymbolicValue::log2().scale(lambda)
}

fn exact_side(s: &FormalWordSum, v: &SymbolicValue) -> Result<SymbolicValue> {
    Ok(s.evaluate(|w| exact_value(w, v))?
        .substitute(ConstSymbol::V, v))
}

/// Admissible words with numeric coefficients, V = λ·log 2 substituted.
fn expand(s: &FormalWordSum, v: &SymbolicValue) -> FormalWordSum {
    let mut out = FormalWordSum::zero();
    for (w, c) in s.iter() {
        out.add_times(&regularise(w), c);
    }
    let mut subst = FormalWordSum::zero();
    for (w, c) in out.iter() {
        subst.add_term(w.clone(), c.substitute(ConstSymbol::V, v));
    }
    subst
}

/// Checks lhs = rhs at V = λ·log 2.
///
/// Exact mode compares closed forms and falls back to the numeric oracle
/// when a word has none. Numeric mode regularises every word, evaluates the
/// admissible words with `t_num` and accepts |lhs − rhs| ≤ tolerance.
pub fn verify_identity(
    lhs: &FormalWordSum,
    rhs: &FormalWordSum,
    lambda: &Rational,
    mode: VerifyMode,
    opts: &NumericOptions,
) -> Result<IdentityReport> {
    let census = ParityCensus::of(lhs, rhs);
    let v = v_of(lambda);
    if mode == VerifyMode::Exact {
        match (exact_side(lhs, &v), exact_side(rhs, &v)) {
            (Ok(l), Ok(r)) => {
                let d = &l - &r;
                return Ok(IdentityReport {
                    mode,
                    fallback: false,
                    holds: d.is_zero(),
                    lhs: l.to_string(),
                    rhs: r.to_string(),
                    difference: d.to_string(),
                    error_bound: None,
                    tolerance: None,
                    census,
                });
            }
            (Err(MtvError::Unreducible(_)), _) | (_, Err(MtvError::Unreducible(_))) => {}
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    let (l, r) = (expand(lhs, &v), expand(rhs, &v));
    let words: BTreeSet<TWord> = l
        .words()
        .chain(r.words())
        .filter(|w| !w.is_empty())
        .cloned()
        .collect();
    let values: BTreeMap<TWord, (BigReal, f64)> = words
        .into_par_iter()
        .map(|w| t_num(&w, &opts.plan, opts.prec).map(|x| (w, (x.value, x.error))))
        .collect::<Result<_>>()?;
    let env = EvalEnv::new(opts.prec, 2);
    let side = |s: &FormalWordSum| -> Result<(BigReal, f64)> {
        let mut acc = BigReal::zero(opts.prec);
        let mut err = 0.0;
        for (w, c) in s.iter() {
            let c = sym_eval(c, &env)?;
            let (x, e) = if w.is_empty() {
                (BigReal::one(opts.prec), 0.0)
            } else {
                values[w].clone()
            };
            err += c.to_f64().abs() * e;
            acc = &acc + &(&c * &x);
        }
        Ok((acc, err))
    };
    let (lv, le) = side(&l)?;
    let (rv, re) = side(&r)?;
    let d = (&lv - &rv).abs();
    let df = d.to_f64();
    Ok(IdentityReport {
        mode: VerifyMode::Numeric,
        fallback: mode == VerifyMode::Exact,
        holds: df <= opts.tolerance,
        lhs: lv.to_decimal_string(40),
        rhs: rv.to_decimal_string(40),
        difference: format!("{df:e}"),
        error_bound: Some(le + re),
        tolerance: Some(opts.tolerance),
        census,
    })
}

/// λ from `"λ*log2"` (also `"log2"`, `"0"`, `"-3/2*log2"`).
pub fn parse_log2_multiple(v: &str) -> Result<Rational> {
    let s = SymbolicValue::parse(v)?;
    let log2 = Monomial::new(vec![ConstSymbol::Log2]);
    if s.iter().any(|(m, _)| *m != log2) {
        return Err(MtvError::Parse(format!(
            "V must be a rational multiple of log2, got {v:?}"
        )));
    }
    Ok(s.coeff(&log2))
}

/// A stored relation `lhs = rhs` at V = λ·log 2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityFixture {
    pub name: String,
    pub version: u32,
    pub weight: u32,
    /// A rational multiple of log 2, e.g. `"13/11*log2"`.
    #[serde(rename = "V")]
    pub v: String,
    pub mode: VerifyMode,
    #[serde(default)]
    pub tolerance: Option<f64>,
    pub lhs: FormalWordSum,
    pub rhs: FormalWordSum,
}

const WEIGHT4: &str = include_str!("../../../../fixtures/weight4.json");
const WEIGHT5: &str = include_str!("../../../../fixtures/weight5.json");

impl IdentityFixture {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| MtvError::Fixture(e.to_string()))
    }

    pub fn weight4() -> Self {
        Self::from_json(WEIGHT4).expect("bundled fixture parses")
    }

    pub fn weight5() -> Self {
        Self::from_json(WEIGHT5).expect("bundled fixture parses")
    }

    /// λ with V = λ·log 2.
    pub fn lambda(&self) -> Result<Rational> {
        parse_log2_multiple(&self.v).map_err(|e| MtvError::Fixture(e.to_string()))
    }

    /// Verifies with the fixture's own mode and, if given, tolerance.
    pub fn verify(&self, opts: &NumericOptions) -> Result<IdentityReport> {
        let mut opts = opts.clone();
        if let Some(t) = self.tolerance {
            opts.tolerance = t;
        }
        let lambda = self.lambda()?;
        for w in self.lhs.words().chain(self.rhs.words()) {
            if w.weight() != self.weight {
                return Err(MtvError::Fixture(format!(
                    "{} has weight {}, not {}",
                    w.pretty(),
                    w.weight(),
                    self.weight
                )));
            }
        }
        verify_identity(&self.lhs, &self.rhs, &lambda, self.mode, &opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn weight4_holds_exactly() {
        let f = IdentityFixture::weight4();
        assert_eq!(f.lambda().unwrap(), rat(13, 11));
        let r = f.verify(&NumericOptions::default()).unwrap();
        assert_eq!(r.mode, VerifyMode::Exact);
        assert!(r.holds, "{}", r.difference);
        assert_eq!(r.difference, "0");
        assert!(r.census.homogeneous);
    }

    #[test]
    fn wrong_lambda_fails() {
        let f = IdentityFixture::weight4();
        let r = verify_identity(
            &f.lhs,
            &f.rhs,
            &rat(1, 2),
            VerifyMode::Exact,
            &NumericOptions::default(),
        )
        .unwrap();
        assert!(!r.holds);
    }

    #[test]
    fn trivial_identity() {
        let w = FormalWordSum::word("-1,2,-2".parse().unwrap());
        let r = verify_identity(
            &w,
            &w,
            &rat(1, 2),
            VerifyMode::Exact,
            &NumericOptions::default(),
        )
        .unwrap();
        // t(1̄,2,2̄) has no closed form here
        assert!(r.fallback && r.holds);
        let f = FormalWordSum::word(TWord::family(1, 2));
        let r = verify_identity(
            &f,
            &f,
            &rat(1, 2),
            VerifyMode::Exact,
            &NumericOptions::default(),
        )
        .unwrap();
        assert!(!r.fallback && r.holds);
    }

    #[test]
    fn weight5_census() {
        let f = IdentityFixture::weight5();
        let c = ParityCensus::of(&f.lhs, &f.rhs);
        assert_eq!(c.counts, vec![2, 4]);
        assert!(c.homogeneous);
        assert_eq!(c.terms.len(), 11);
    }

    #[test]
    fn numeric_mode_agrees_on_weight4() {
        let f = IdentityFixture::weight4();
        let opts = NumericOptions {
            prec: 128,
            tolerance: 1e-18,
            ..NumericOptions::default()
        };
        let r = verify_identity(
            &f.lhs,
            &f.rhs,
            &f.lambda().unwrap(),
            VerifyMode::Numeric,
            &opts,
        )
        .unwrap();
        assert!(r.holds, "{}", r.difference);
    }

    #[test]
    fn rejects_bad_v() {
        let mut f = IdentityFixture::weight4();
        f.v = "1/2*Pi".into();
        assert!(f.lambda().is_err());
    }
}
