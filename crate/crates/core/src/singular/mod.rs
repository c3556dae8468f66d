//! Singular regularisation parameters.
//!
//! In weight N the words t({1̄}^i,1,{1̄}^{n−i}), i < n = N − 1, together with
//! t^{*,V}({1̄}^n,1) admit a rational linear relation for exactly one
//! V = λ_N·log 2. Writing every value over the monomial basis (ζ's, β's,
//! log 2, V, each times the power of π fixed by weight) turns the search for
//! λ_N into an exact linear system in (c_0, …, c_{n−1}, λ).

mod bareiss;
mod identity;

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{MtvError, Result};
use crate::exactnum::{format_rational, rat, ConstSymbol, Monomial, Rational, SymbolicValue};
use crate::genfun::closed_form_t;

pub use bareiss::{rank, solve};
pub use identity::{
    parse_log2_multiple, verify_identity, IdentityFixture, IdentityReport, NumericOptions,
    ParityCensus, VerifyMode,
};

/// A basis column; the power of π is implied by the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Column {
    Zeta(u32),
    Beta(u32),
    /// Pure power of π.
    Pi,
    Log2,
    V,
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Column::Zeta(k) => write!(f, "Zeta({k})"),
            Column::Beta(k) => write!(f, "Beta({k})"),
            Column::Pi => f.write_str("Pi"),
            Column::Log2 => f.write_str("Log2"),
            Column::V => f.write_str("V"),
        }
    }
}

impl Serialize for Column {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn column_of(m: &Monomial) -> Result<Column> {
    let rest: Vec<ConstSymbol> = m
        .symbols()
        .iter()
        .copied()
        .filter(|&s| s != ConstSymbol::Pi)
        .collect();
    match rest.as_slice() {
        [] => Ok(Column::Pi),
        [ConstSymbol::Zeta(k)] => Ok(Column::Zeta(*k)),
        [ConstSymbol::Beta(k)] => Ok(Column::Beta(*k)),
        [ConstSymbol::Log2] => Ok(Column::Log2),
        [ConstSymbol::V] => Ok(Column::V),
        _ => Err(MtvError::Domain(format!(
            "monomial {m:?} is not a basis element"
        ))),
    }
}

fn ser_rat<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

fn ser_rats<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

fn ser_rows<S: Serializer>(v: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        v.iter()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>()),
    )
}

fn ser_sym<S: Serializer>(v: &SymbolicValue, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Coefficient vectors of the reduction problem in one weight.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionSystem {
    pub weight: usize,
    /// ζ columns, β columns, π, log 2, V, each in increasing index order.
    pub columns: Vec<Column>,
    /// Row i holds t({1̄}^i,1,{1̄}^{n−i}) for i = 0..n−1.
    #[serde(serialize_with = "ser_rows")]
    pub rows: Vec<Vec<Rational>>,
    /// t^{*,V}({1̄}^n,1) with V left symbolic.
    #[serde(serialize_with = "ser_rats")]
    pub target: Vec<Rational>,
}

impl ReductionSystem {
    pub fn new(weight: usize) -> Result<Self> {
        if weight == 0 {
            return Err(MtvError::Domain("weight must be at least 1".into()));
        }
        let n = weight - 1;
        let v = SymbolicValue::v();
        let values: Vec<SymbolicValue> = (0..n)
            .map(|i| closed_form_t(i, n - i, &v))
            .chain([closed_form_t(n, 0, &v)])
            .collect();
        let mut columns = vec![Column::Log2, Column::V];
        for x in &values {
            for (m, _) in x.iter() {
                columns.push(column_of(m)?);
            }
        }
        columns.sort();
        columns.dedup();
        let vector = |x: &SymbolicValue| -> Result<Vec<Rational>> {
            let mut out = vec![Rational::zero(); columns.len()];
            for (m, c) in x.iter() {
                let j = columns
                    .binary_search(&column_of(m)?)
                    .expect("column collected above");
                out[j] = c.clone();
            }
            Ok(out)
        };
        let mut rows = values.iter().map(vector).collect::<Result<Vec<_>>>()?;
        let target = rows.pop().expect("target row");
        Ok(ReductionSystem {
            weight,
            columns,
            rows,
            target,
        })
    }

    fn index(&self, c: Column) -> usize {
        self.columns
            .binary_search(&c)
            .expect("log2 and V columns are always present")
    }

    /// Equations column by column, V folded into log 2 as V = λ·log 2.
    /// Unknowns are (c_0, …, c_{n−1}) and, when `lambda` is None, λ last.
    fn equations(&self, lambda: Option<&Rational>) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let (jl, jv) = (self.index(Column::Log2), self.index(Column::V));
        let kappa = &self.target[jv];
        let mut a = Vec::new();
        let mut b = Vec::new();
        for j in (0..self.columns.len()).filter(|&j| j != jv) {
            let mut eq: Vec<Rational> = self.rows.iter().map(|r| r[j].clone()).collect();
            let mut rhs = self.target[j].clone();
            if j == jl {
                match lambda {
                    None => eq.push(-kappa.clone()),
                    Some(l) => rhs += kappa * l,
                }
            } else if lambda.is_none() {
                eq.push(Rational::zero());
            }
            a.push(eq);
            b.push(rhs);
        }
        (a, b)
    }

    /// (λ, c) solving the system with λ unknown.
    pub fn solve_lambda(&self) -> Result<(Rational, Vec<Rational>)> {
        let (a, b) = self.equations(None);
        let mut x = solve(&a, &b).map_err(|e| self.annotate(e))?;
        let lambda = x.pop().expect("lambda unknown");
        Ok((lambda, x))
    }

    /// The c_i for a fixed λ.
    pub fn solve_coeffs(&self, lambda: &Rational) -> Result<Vec<Rational>> {
        let (a, b) = self.equations(Some(lambda));
        solve(&a, &b).map_err(|e| self.annotate(e))
    }

    fn annotate(&self, e: MtvError) -> MtvError {
        match e {
            MtvError::NoSolution(s) => MtvError::NoSolution(format!("weight {}: {s}", self.weight)),
            MtvError::NotUnique(s) => MtvError::NotUnique(format!("weight {}: {s}", self.weight)),
            e => e,
        }
    }
}

/// λ_N: the unique λ for which t^{*,V}({1̄}^{N−1},1), V = λ·log 2, is a
/// rational combination of the t({1̄}^i,1,{1̄}^{N−1−i}).
pub fn singular_lambda(weight: usize) -> Result<Rational> {
    ReductionSystem::new(weight)?.solve_lambda().map(|(l, _)| l)
}

/// The c_i (i = 0..N−2) of the reduction at V = λ·log 2; `NoSolution` when λ
/// is not singular in this weight.
pub fn reduction_coeffs(weight: usize, lambda: &Rational) -> Result<Vec<Rational>> {
    ReductionSystem::new(weight)?.solve_coeffs(lambda)
}

/// t^{*,V}({1̄}^n,1) − Σ c_i t({1̄}^i,1,{1̄}^{n−i}) at V = λ·log 2, computed
/// from the closed forms rather than the matrix.
pub fn reduction_residual(
    weight: usize,
    lambda: &Rational,
    coeffs: &[Rational],
) -> Result<SymbolicValue> {
    if weight == 0 || coeffs.len() != weight - 1 {
        return Err(MtvError::Domain(format!(
            "weight {weight} needs {} coefficients",
            weight.max(1) - 1
        )));
    }
    let n = weight - 1;
    let v = SymbolicValue::log2().scale(lambda);
    let mut r = closed_form_t(n, 0, &v);
    for (i, c) in coeffs.iter().enumerate() {
        r.add_scaled(&closed_form_t(i, n - i, &v), &-c);
    }
    Ok(r)
}

/// λ, the c_i and the exact residual in one weight.
#[derive(Clone, Debug, Serialize)]
pub struct SingularSolution {
    pub weight: usize,
    #[serde(serialize_with = "ser_rat")]
    pub lambda: Rational,
    #[serde(serialize_with = "ser_rats")]
    pub coeffs: Vec<Rational>,
    #[serde(serialize_with = "ser_sym")]
    pub residual: SymbolicValue,
}

pub fn singular_solution(weight: usize) -> Result<SingularSolution> {
    let (lambda, coeffs) = ReductionSystem::new(weight)?.solve_lambda()?;
    let residual = reduction_residual(weight, &lambda, &coeffs)?;
    Ok(SingularSolution {
        weight,
        lambda,
        coeffs,
        residual,
    })
}

/// Distance of one λ from its conjectured limit.
#[derive(Clone, Debug, Serialize)]
pub struct GapRow {
    pub index: usize,
    #[serde(serialize_with = "ser_rat")]
    pub gap: Rational,
    pub gap_f64: f64,
    /// Smaller than the gap of the previous index of the same parity.
    pub shrinks: Option<bool>,
}

/// The λ table up to `n_max` and the three exact sequence properties
/// (λ_1 excluded):
/// (i) sign λ_i = (−1)^i; (ii) λ_{i+2} > λ_i; (iii) λ_{2i} ≤ 3/2 and
/// λ_{2i+1} ≤ −1/2. The gap tables list |λ_{2i} − 3/2| and |λ_{2i+1} + 1/2|.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureScan {
    pub n_max: usize,
    #[serde(serialize_with = "ser_rats")]
    pub lambdas: Vec<Rational>,
    pub signs: bool,
    pub increasing: bool,
    pub bounded: bool,
    pub failures: Vec<String>,
    pub even_gaps: Vec<GapRow>,
    pub odd_gaps: Vec<GapRow>,
}

impl ConjectureScan {
    pub fn passes(&self) -> bool {
        self.signs && self.increasing && self.bounded
    }
}

/// λ_1, …, λ_{n_max}, computed in parallel.
pub fn lambda_table(n_max: usize) -> Result<Vec<Rational>> {
    (1..=n_max).into_par_iter().map(singular_lambda).collect()
}

pub fn scan_lambda_conjecture(n_max: usize) -> Result<ConjectureScan> {
    if n_max < 2 {
        return Err(MtvError::Domain("the scan needs n_max >= 2".into()));
    }
    let lambdas = lambda_table(n_max)?;
    let lam = |i: usize| &lambdas[i - 1];
    let mut failures = Vec::new();
    let mut signs = true;
    let mut increasing = true;
    let mut bounded = true;
    for i in 2..=n_max {
        let l = lam(i);
        let want_positive = i % 2 == 0;
        if l.is_zero() || l.is_positive() != want_positive {
            signs = false;
            failures.push(format!("(i) sign of lambda_{i} = {}", format_rational(l)));
        }
        if i >= 4 && lam(i) <= lam(i - 2) {
            increasing = false;
            failures.push(format!("(ii) lambda_{i} <= lambda_{}", i - 2));
        }
        let bound = if i % 2 == 0 { rat(3, 2) } else { rat(-1, 2) };
        if *l > bound {
            bounded = false;
            failures.push(format!(
                "(iii) lambda_{i} = {} > {}",
                format_rational(l),
                format_rational(&bound)
            ));
        }
    }
    let gaps = |start: usize, limit: Rational| -> Vec<GapRow> {
        let mut out: Vec<GapRow> = Vec::new();
        for i in (start..=n_max).step_by(2) {
            let gap = (lam(i) - &limit).abs();
            let shrinks = out.last().map(|p| gap < p.gap);
            let gap_f64 = num_traits::ToPrimitive::to_f64(&gap).unwrap_or(f64::NAN);
            out.push(GapRow {
                index: i,
                gap,
                gap_f64,
                shrinks,
            });
        }
        out
    };
    Ok(ConjectureScan {
        n_max,
        even_gaps: gaps(2, rat(3, 2)),
        odd_gaps: gaps(3, rat(-1, 2)),
        lambdas,
        signs,
        increasing,
        bounded,
        failures,
    })
}
