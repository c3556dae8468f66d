//! Iterated integrals ∫_{0<t_n<…<t_1<1} ω_1(t_1)⋯ω_n(t_n) of logarithmic
//! forms ω = Σ_j α_j dt/(t − c_j), evaluated by transporting Taylor
//! expansions along [0, 1].
//!
//! With F_{n+1} = 1 and F_k(t) = ∫_0^t ω_k F_{k+1}, the integral is F_1(1).
//! Each F_k is expanded around a base point b in the rescaled variable
//! t = b + hτ; since dt/(t − c) = dτ/(τ − (c − b)/h), a form keeps its shape
//! under rescaling and multiplication by 1/(τ − c'') is the recurrence
//! g_m = (g_{m-1} − f_m)/c''. The last piece [x, 1] uses the path
//! decomposition F_1(1) = Σ_l I(x→1; ω_1…ω_l)·F_{l+1}(x), with the integrals
//! over [x, 1] expanded around 1 in s = 1 − t (where ω_c becomes −ω_{1−c}).

use crate::error::{MtvError, Result};
use crate::exactnum::{BigReal, GUARD};

use super::complex::Complex;

/// Ratio of step length to distance from the nearest singularity.
const RHO: f64 = 0.5;
const MAX_SEGMENTS: usize = 4000;

/// Σ α_j dt/(t − c_j).
#[derive(Clone, Debug)]
pub struct Form {
    terms: Vec<(Complex, Complex)>,
}

impl Form {
    pub fn new(terms: Vec<(Complex, Complex)>) -> Self {
        Form {
            terms: terms.into_iter().filter(|(a, _)| !a.is_zero()).collect(),
        }
    }

    /// dt/(t − c).
    pub fn letter(c: Complex) -> Self {
        let p = c.prec();
        Form::new(vec![(Complex::one(p), c)])
    }

    /// dt/t.
    pub fn zero_letter(prec: u32) -> Self {
        Form::letter(Complex::zero(prec))
    }

    pub fn scaled(&self, s: &Complex) -> Self {
        Form::new(self.terms.iter().map(|(a, c)| (a * s, c.clone())).collect())
    }

    pub fn terms(&self) -> &[(Complex, Complex)] {
        &self.terms
    }

    fn has_letter_at(&self, x: i64) -> bool {
        self.terms
            .iter()
            .any(|(_, c)| c.im.is_zero() && c.re == BigReal::from_int(x, c.prec()))
    }
}

#[derive(Clone, Debug)]
pub struct IntegralValue {
    pub value: Complex,
    /// Estimated absolute error (truncation of the Taylor series plus rounding).
    pub error: f64,
    pub segments: usize,
    pub terms_per_segment: usize,
}

/// Letter as used inside one expansion: α and 1/c'' (None when c'' = 0).
struct Prepared {
    alpha: Complex,
    inv: Option<Complex>,
}

fn prepare(form: &Form, base: &BigReal, h: &BigReal, from_one: bool, w: u32) -> Vec<Prepared> {
    form.terms
        .iter()
        .map(|(alpha, c)| {
            let c = c.with_prec(w);
            // c'' = (c − b)/h, or (1 − c)/h around the endpoint 1
            let shifted = if from_one {
                Complex {
                    re: &BigReal::one(w) - &c.re,
                    im: -&c.im,
                }
            } else {
                Complex {
                    re: &c.re - base,
                    im: c.im.clone(),
                }
            };
            let inv = if shifted.is_zero() {
                None
            } else {
                Some(
                    Complex {
                        re: &shifted.re / h,
                        im: &shifted.im / h,
                    }
                    .recip(),
                )
            };
            // dt/(t − c) = −ds/(s − (1 − c)) with s = 1 − t
            let alpha = if from_one {
                -&alpha.with_prec(w)
            } else {
                alpha.with_prec(w)
            };
            Prepared { alpha, inv }
        })
        .collect()
}

/// Applies the forms in order to the constant series 1; returns the value at
/// τ = 1 of each intermediate integral and the accumulated tail estimate.
fn chain(forms: &[Vec<Prepared>], init: &[Complex], n_terms: usize, w: u32) -> (Vec<Complex>, f64) {
    let mut cur: Vec<Complex> = vec![Complex::zero(w); n_terms + 1];
    cur[0] = Complex::one(w);
    let mut out = Vec::with_capacity(forms.len());
    let mut err = 0.0;
    for (form, c0) in forms.iter().zip(init) {
        let mut g: Vec<Complex> = vec![Complex::zero(w); n_terms + 1];
        for p in form {
            match &p.inv {
                Some(ic) => {
                    let mut prev = Complex::zero(w);
                    for m in 0..=n_terms {
                        prev = &(&prev - &cur[m]) * ic;
                        g[m] = &g[m] + &(&prev * &p.alpha);
                    }
                }
                None => {
                    debug_assert!(
                        cur[0].is_zero(),
                        "logarithmic singularity at expansion point"
                    );
                    for m in 0..n_terms {
                        g[m] = &g[m] + &(&cur[m + 1] * &p.alpha);
                    }
                }
            }
        }
        let mut next = vec![Complex::zero(w); n_terms + 1];
        next[0] = c0.clone();
        for m in 0..n_terms {
            next[m + 1] = g[m].div_int(m as i64 + 1);
        }
        let tail = next[n_terms - 3..]
            .iter()
            .map(|c| c.magnitude())
            .fold(0.0, f64::max);
        err += 4.0 * tail;
        let mut v = Complex::zero(w);
        for c in &next {
            v = &v + c;
        }
        out.push(v);
        cur = next;
    }
    (out, err)
}

fn f64_letters(forms: &[Form]) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = Vec::new();
    for f in forms {
        for (_, c) in &f.terms {
            let p = c.to_f64_pair();
            if !v.contains(&p) {
                v.push(p);
            }
        }
    }
    v
}

fn dist(a: (f64, f64), x: f64) -> f64 {
    ((a.0 - x).powi(2) + a.1.powi(2)).sqrt()
}

fn terms_for(ratio: f64, w: u32, depth: usize) -> usize {
    let bits = (w + 10) as f64 + 4.0 * depth as f64;
    ((bits / -ratio.log2()).ceil() as usize + 4 * depth + 8).max(16)
}

/// Evaluates the iterated integral of `forms` (top form first) over [0, 1].
pub fn iterated_integral(forms: &[Form], prec: u32) -> Result<IntegralValue> {
    let n = forms.len();
    let w = prec + GUARD + 8 + 2 * n as u32;
    if n == 0 {
        return Ok(IntegralValue {
            value: Complex::one(prec),
            error: 0.0,
            segments: 0,
            terms_per_segment: 0,
        });
    }
    if forms[n - 1].has_letter_at(0) {
        return Err(MtvError::Domain("iterated integral diverges at 0".into()));
    }
    if forms[0].has_letter_at(1) {
        return Err(MtvError::Domain("iterated integral diverges at 1".into()));
    }
    let letters = f64_letters(forms);
    for &(re, im) in &letters {
        if im == 0.0 && re > 0.0 && re < 1.0 {
            return Err(MtvError::Domain(format!(
                "singularity at {re} inside the path"
            )));
        }
    }
    let near = |x: f64, skip: f64| {
        letters
            .iter()
            .filter(|&&(re, im)| !(im == 0.0 && re == skip))
            .map(|&c| dist(c, x))
            .fold(f64::INFINITY, f64::min)
    };
    let r0 = near(0.0, 0.0);
    let d1 = near(1.0, 1.0);

    // Path: base 0, interior steps, then the piece around 1.
    let mut bases: Vec<(f64, f64)> = Vec::new();
    // Steps are multiples of 2^-40 so that base points add up exactly.
    let dyadic = |h: f64| (h * 2f64.powi(40)).floor() / 2f64.powi(40);
    let first = dyadic((RHO * r0).min(1.0));
    bases.push((0.0, first));
    let mut x = first;
    while x < 1.0 && 1.0 - x > RHO * d1 {
        let d = letters
            .iter()
            .map(|&c| dist(c, x))
            .fold(f64::INFINITY, f64::min);
        let h = dyadic((RHO * d).min(1.0 - x));
        if h <= 0.0 {
            return Err(MtvError::Domain("singularity too close to the path".into()));
        }
        bases.push((x, h));
        x += h;
        if bases.len() > MAX_SEGMENTS {
            return Err(MtvError::Domain(
                "iterated integral path does not terminate".into(),
            ));
        }
    }

    let mut values: Vec<Complex> = vec![Complex::zero(w); n];
    let mut err = 0.0;
    let mut max_terms = 0;
    for (i, &(b, h)) in bases.iter().enumerate() {
        let nearest = if i == 0 {
            r0
        } else {
            letters
                .iter()
                .map(|&c| dist(c, b))
                .fold(f64::INFINITY, f64::min)
        };
        let nt = terms_for(h / nearest, w, n);
        max_terms = max_terms.max(nt);
        let bb = BigReal::from_f64(b, w);
        let hh = BigReal::from_f64(h, w);
        let prepared: Vec<Vec<Prepared>> = forms
            .iter()
            .rev()
            .map(|f| prepare(f, &bb, &hh, false, w))
            .collect();
        let init: Vec<Complex> = values.iter().rev().cloned().collect();
        let (vals, e) = chain(&prepared, &init, nt, w);
        err += e;
        values = vals.into_iter().rev().collect();
    }

    let mut segments = bases.len();
    let value = if x >= 1.0 {
        values[0].clone()
    } else {
        // I(x→1; ω_1…ω_l) for l = 1..n, expanded around 1.
        let h = 1.0 - x;
        let nt = terms_for(h / d1, w, n);
        max_terms = max_terms.max(nt);
        let hh = BigReal::from_f64(h, w);
        let zero = BigReal::zero(w);
        let prepared: Vec<Vec<Prepared>> = forms
            .iter()
            .map(|f| prepare(f, &zero, &hh, true, w))
            .collect();
        let init = vec![Complex::zero(w); n];
        let (hs, e) = chain(&prepared, &init, nt, w);
        err += e;
        segments += 1;
        // Σ_{l=0}^{n} H_l · F_{l+1}(x), with H_0 = 1 and F_{n+1} = 1
        let mut v = values[0].clone();
        for l in 1..n {
            v = &v + &(&hs[l - 1] * &values[l]);
        }
        &v + &hs[n - 1]
    };
    let rounding = (n * max_terms * segments) as f64 * 2f64.powi(-(w as i32 - 8));
    Ok(IntegralValue {
        value: value.with_prec(prec),
        error: err + rounding,
        segments,
        terms_per_segment: max_terms,
    })
}
