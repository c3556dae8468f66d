//! High-precision numerics for multiple t values, the Ti-function, the
//! coloured (level 4) MZVs and the generating series G(x,y;z).
//!
//! Two methods are available. The default writes every sum as an iterated
//! integral of logarithmic forms and evaluates it by Taylor transport
//! ([`iterint`]); this reaches the working precision for any admissible word.
//! The direct method truncates the nested sum at M terms and, when the
//! outermost sign alternates, applies iterated pairwise averaging.

pub mod complex;
pub mod direct;
pub mod iterint;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{MtvError, Result};
use crate::exactnum::{BigReal, GUARD};
use crate::tword::{to_level4, Root4, TWord};

pub use complex::Complex;
pub use iterint::{iterated_integral, Form, IntegralValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Acceleration {
    None,
    IteratedMean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SumMethod {
    IteratedIntegral,
    Direct(Acceleration),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SumPlan {
    pub truncation: u64,
    pub method: SumMethod,
    pub tolerance: f64,
}

impl Default for SumPlan {
    fn default() -> Self {
        SumPlan {
            truncation: 100_000,
            method: SumMethod::IteratedIntegral,
            tolerance: 1e-20,
        }
    }
}

impl SumPlan {
    pub fn direct(truncation: u64, tolerance: f64) -> Self {
        SumPlan {
            truncation,
            method: SumMethod::Direct(Acceleration::IteratedMean),
            tolerance,
        }
    }

    pub fn validate(&self, depth: usize) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(MtvError::Domain("tolerance must be positive".into()));
        }
        if (self.truncation as usize) < depth.max(1) {
            return Err(MtvError::Domain(format!(
                "truncation {} below word depth {depth}",
                self.truncation
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct NumResult {
    pub value: BigReal,
    /// Reported absolute error bound.
    pub error: f64,
    pub method: SumMethod,
    /// Terms summed (direct) or Taylor terms per segment (iterated integral).
    pub terms: u64,
}

fn check_tolerance(r: NumResult, tol: f64) -> Result<NumResult> {
    if r.error <= tol {
        Ok(r)
    } else {
        Err(MtvError::ToleranceNotReached {
            requested: tol,
            achieved: r.error,
        })
    }
}

/// a with a² = 1/e, for real e ≠ 0; exact for e = ±1.
fn inv_sqrt(e: &BigReal, w: u32) -> Result<Complex> {
    let one = BigReal::one(w);
    if *e == one {
        return Ok(Complex::one(w));
    }
    if *e == -&one {
        return Ok(Complex::new(BigReal::zero(w), one));
    }
    let r = e.abs().sqrt()?.recip();
    Ok(if e.is_negative() {
        Complex::new(BigReal::zero(w), r)
    } else {
        Complex::from_real(r)
    })
}

/// e x dx/(1 − e x²) = −½(ω_a + ω_{−a}).
fn rho_form(a: &Complex, w: u32) -> Form {
    let h = Complex::from_real(BigReal::from_ratio(-1, 2, w));
    Form::new(vec![(h.clone(), a.clone()), (h, -a)])
}

/// e dx/(1 − e x²) = −(1/(2a))(ω_a − ω_{−a}).
fn sigma_form(a: &Complex) -> Form {
    let c = a.recip().ldexp(-1);
    Form::new(vec![(-&c, a.clone()), (c, -a)])
}

/// Forms (top first) for Σ_{n_1<…<n_d} Π z_i^{n_i}/(2n_i − 1)^{k_i}:
/// ω_0^{k_d−1} ρ_{e_d} ⋯ ω_0^{k_2−1} ρ_{e_2} ω_0^{k_1−1} σ_{e_1}, with e_j = Π_{i≥j} z_i.
/// Returns None when some e_j vanishes (the sum is then 0).
fn t_route_forms(k: &[u32], z: &[BigReal], w: u32) -> Result<Option<Vec<Form>>> {
    let d = k.len();
    let mut e = vec![BigReal::one(w); d];
    let mut acc = BigReal::one(w);
    for j in (0..d).rev() {
        acc = &acc * &z[j].with_prec(w);
        e[j] = acc.clone();
    }
    if e.iter().any(|x| x.is_zero()) {
        return Ok(None);
    }
    let mut forms = Vec::new();
    for j in (0..d).rev() {
        for _ in 1..k[j] {
            forms.push(Form::zero_letter(w));
        }
        let a = inv_sqrt(&e[j], w)?;
        forms.push(if j == 0 {
            sigma_form(&a)
        } else {
            rho_form(&a, w)
        });
    }
    Ok(Some(forms))
}

fn signs_as_reals(w: &TWord, prec: u32) -> Vec<BigReal> {
    w.letters()
        .iter()
        .map(|l| BigReal::from_int(l.sign as i64, prec))
        .collect()
}

fn exponents(w: &TWord) -> Vec<u32> {
    w.letters().iter().map(|l| l.k).collect()
}

/// Numeric value of an admissible (alternating) multiple t value.
pub fn t_num(w: &TWord, plan: &SumPlan, prec: u32) -> Result<NumResult> {
    w.require_admissible()?;
    plan.validate(w.depth())?;
    if w.is_empty() {
        return Ok(NumResult {
            value: BigReal::one(prec),
            error: 0.0,
            method: plan.method,
            terms: 0,
        });
    }
    let z = signs_as_reals(w, prec + GUARD);
    sum_with_plan(&exponents(w), &z, plan, prec)
}

fn sum_with_plan(k: &[u32], z: &[BigReal], plan: &SumPlan, prec: u32) -> Result<NumResult> {
    let r = match plan.method {
        SumMethod::IteratedIntegral => {
            let w = prec + GUARD;
            match t_route_forms(k, z, w)? {
                None => NumResult {
                    value: BigReal::zero(prec),
                    error: 0.0,
                    method: plan.method,
                    terms: 0,
                },
                Some(forms) => {
                    let r = iterated_integral(&forms, prec)?;
                    NumResult {
                        value: r.value.re,
                        error: r.error,
                        method: plan.method,
                        terms: r.terms_per_segment as u64,
                    }
                }
            }
        }
        SumMethod::Direct(acc) => {
            let r = direct::nested_sum(z, k, plan.truncation, acc, plan.tolerance, prec)?;
            NumResult {
                value: r.value,
                error: r.error,
                method: plan.method,
                terms: r.terms,
            }
        }
    };
    check_tolerance(r, plan.tolerance)
}

/// Ti_{k_1,…,k_d}(z_1,…,z_d) = Σ_{0<n_1<…<n_d} Π z_i^{n_i}/(2n_i − 1)^{k_i} for real |z_i| ≤ 1.
pub fn ti_num(k: &[u32], z: &[BigReal], plan: &SumPlan, prec: u32) -> Result<NumResult> {
    if k.len() != z.len() {
        return Err(MtvError::Domain(
            "Ti needs one argument per exponent".into(),
        ));
    }
    if k.contains(&0) {
        return Err(MtvError::Domain("Ti exponents must be positive".into()));
    }
    plan.validate(k.len())?;
    if k.is_empty() {
        return Ok(NumResult {
            value: BigReal::one(prec),
            error: 0.0,
            method: plan.method,
            terms: 0,
        });
    }
    let one = BigReal::one(z[0].prec());
    if z.iter().any(|x| x.abs() > one) {
        return Err(MtvError::Domain(
            "Ti arguments must satisfy |z| <= 1".into(),
        ));
    }
    let d = k.len();
    if k[d - 1] == 1 && z[d - 1] == one {
        return Err(MtvError::Domain(
            "Ti diverges: outermost (k, z) = (1, 1)".into(),
        ));
    }
    sum_with_plan(k, z, plan, prec)
}

/// Complex value with an error bound.
#[derive(Clone, Debug)]
pub struct ComplexResult {
    pub value: Complex,
    pub error: f64,
}

/// ζ(η; k) = Σ_{0<m_1<…<m_d} Π η_i^{m_i}/m_i^{k_i} with η_i fourth roots of unity,
/// as (−1)^d I(0^{k_d−1} c_1 ⋯ 0^{k_1−1} c_d) with c_j = 1/(η_d ⋯ η_{d−j+1}).
pub fn mzv4_num(eta: &[Root4], k: &[u32], plan: &SumPlan, prec: u32) -> Result<ComplexResult> {
    let d = k.len();
    if eta.len() != d || k.contains(&0) {
        return Err(MtvError::Domain("malformed coloured index".into()));
    }
    if d > 0 && k[d - 1] == 1 && eta[d - 1] == Root4::One {
        return Err(MtvError::Domain(
            "coloured MZV diverges: outermost (k, η) = (1, 1)".into(),
        ));
    }
    plan.validate(d)?;
    let w = prec + GUARD;
    let minus = Complex::from_real(BigReal::from_int(-1, w));
    let mut forms = Vec::new();
    let mut prod = Root4::One;
    for j in (0..d).rev() {
        for _ in 1..k[j] {
            forms.push(Form::zero_letter(w));
        }
        prod = prod * eta[j];
        forms.push(Form::letter(Complex::from_root4(prod.inverse(), w)).scaled(&minus));
    }
    let r = iterated_integral(&forms, prec)?;
    if r.error > plan.tolerance {
        return Err(MtvError::ToleranceNotReached {
            requested: plan.tolerance,
            achieved: r.error,
        });
    }
    Ok(ComplexResult {
        value: r.value,
        error: r.error,
    })
}

/// 2^{−d} Σ_η η_1⋯η_d ζ(η; k), which equals t(w).
pub fn level4_bridge(w: &TWord, plan: &SumPlan, prec: u32) -> Result<ComplexResult> {
    w.require_admissible()?;
    let terms = to_level4(w);
    let parts: Vec<Result<(Complex, f64)>> = terms
        .par_iter()
        .map(|t| {
            let z = mzv4_num(&t.eta, &t.k, plan, prec)?;
            let s = BigReal::from_rational(&t.scale, prec);
            Ok((z.value.mul_root(t.unit).scale(&s), z.error))
        })
        .collect();
    let mut acc = Complex::zero(prec);
    let mut err = 0.0;
    for p in parts {
        let (v, e) = p?;
        acc = &acc + &v;
        err += e;
    }
    Ok(ComplexResult {
        value: acc,
        error: err,
    })
}

/// G(x,y;z) split into its prefactor cos(πy/4)+sin(πy/4) and the odd-r and
/// even-r parts of the r-sum.
#[derive(Clone, Debug)]
pub struct GValue {
    pub value: BigReal,
    pub prefactor: BigReal,
    pub odd: BigReal,
    pub even: BigReal,
    pub error: f64,
    pub terms: u64,
}

/// G(x,y;z) = P(y)·Σ_r Π_{k<r}(1 − (−1)^k x/(2k−1)) · z^r/(2r−1) · Π_{ℓ≤r}(1 − (−1)^ℓ y/(2ℓ−1))^{−1}.
pub fn g_num(x: &BigReal, y: &BigReal, z: &BigReal, plan: &SumPlan, prec: u32) -> Result<GValue> {
    let w = prec + GUARD;
    let (x, y, z) = (x.with_prec(w), y.with_prec(w), z.with_prec(w));
    let one = BigReal::one(w);
    if z.signum() <= 0 || z >= one {
        return Err(MtvError::Domain("G needs 0 < z < 1".into()));
    }
    let zf = z.to_f64();
    let (xf, yf) = (x.to_f64().abs(), y.to_f64().abs());
    let mut num = one.clone(); // Π_{k<r}
    let mut den = one.clone(); // Π_{ℓ≤r}
    let mut zr = one.clone();
    let mut odd = BigReal::zero(w);
    let mut even = BigReal::zero(w);
    let mut r: i64 = 1;
    let error;
    loop {
        let sgn = if r % 2 == 0 { 1 } else { -1 };
        // ℓ = r factor enters the denominator product
        let fy = &one - &y.mul_int(sgn).div_int(2 * r - 1);
        if fy.is_zero() {
            return Err(MtvError::Pole(format!(
                "G: factor (1 - (-1)^{r} y/{}) vanishes",
                2 * r - 1
            )));
        }
        den = &den * &fy;
        zr = &zr * &z;
        let term = &(&(&num * &zr) / &den).div_int(2 * r - 1);
        if r % 2 == 1 {
            odd = &odd + term;
        } else {
            even = &even + term;
        }
        // |t_{r+1}/t_r| ≤ z(1+|x|/(2r−1))/(1−|y|/(2r+1)) =: q, decreasing in r
        let rf = r as f64;
        let q = zf * (1.0 + xf / (2.0 * rf - 1.0)) / (1.0 - yf / (2.0 * rf + 1.0));
        if q < 1.0 && 2.0 * rf + 1.0 > yf {
            let tail = term.to_f64().abs() * q / (1.0 - q);
            if tail < plan.tolerance * 1e-3 || r as u64 >= plan.truncation {
                error = tail;
                break;
            }
        } else if r as u64 >= plan.truncation {
            error = f64::INFINITY;
            break;
        }
        // k = r factor enters the numerator product for the next term
        num = &num * &(&one - &x.mul_int(sgn).div_int(2 * r - 1));
        r += 1;
    }
    let pi_y = (&BigReal::pi(w) * &y).ldexp(-2);
    let (s, c) = pi_y.sin_cos();
    let prefactor = &s + &c;
    let value = &prefactor * &(&odd + &even);
    let res = GValue {
        value: value.with_prec(prec),
        prefactor: prefactor.with_prec(prec),
        odd: odd.with_prec(prec),
        even: even.with_prec(prec),
        error,
        terms: r as u64,
    };
    if res.error > plan.tolerance {
        return Err(MtvError::ToleranceNotReached {
            requested: plan.tolerance,
            achieved: res.error,
        });
    }
    Ok(res)
}
