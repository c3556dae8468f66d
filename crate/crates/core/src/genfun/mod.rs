//! The generating series F^V(x,y) = Σ (−1)^{a+b} t^{*,V}({1̄}^a,1,{1̄}^b) x^a y^b
//! as an exact truncated bivariate series, its explicit coefficients, and
//! numeric cross-checks of the hypergeometric assembly.

mod numeric;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{MtvError, Result};
use crate::exactnum::{binomial, factorial, int, ConstSymbol, Rational, SymbolicValue};
use crate::tword::{regularise, TWord};

pub use numeric::{assemble_f_asder, closed_form_f_num, f_limit_from_g, FLimit};

/// Truncated bivariate series Σ_{a+b≤N} c_{a,b} x^a y^b.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiSeries {
    order: usize,
    coeffs: Vec<Vec<SymbolicValue>>,
}

impl BiSeries {
    pub fn zero(order: usize) -> Self {
        BiSeries {
            order,
            coeffs: (0..=order)
                .map(|a| vec![SymbolicValue::zero(); order + 1 - a])
                .collect(),
        }
    }

    pub fn constant(order: usize, c: SymbolicValue) -> Self {
        let mut s = BiSeries::zero(order);
        s.coeffs[0][0] = c;
        s
    }

    /// Σ h_i x^i.
    pub fn in_x(order: usize, h: &[SymbolicValue]) -> Self {
        let mut s = BiSeries::zero(order);
        for (i, c) in h.iter().enumerate().take(order + 1) {
            s.coeffs[i][0] = c.clone();
        }
        s
    }

    /// Σ h_j y^j.
    pub fn in_y(order: usize, h: &[SymbolicValue]) -> Self {
        let mut s = BiSeries::zero(order);
        for (j, c) in h.iter().enumerate().take(order + 1) {
            s.coeffs[0][j] = c.clone();
        }
        s
    }

    /// h(αx + βy) for a univariate h = Σ h_j s^j.
    pub fn compose_linear(
        order: usize,
        h: &[SymbolicValue],
        alpha: &Rational,
        beta: &Rational,
    ) -> Self {
        let mut s = BiSeries::zero(order);
        for (j, hj) in h.iter().enumerate().take(order + 1) {
            if hj.is_zero() {
                continue;
            }
            for a in 0..=j {
                let b = j - a;
                let q = Rational::from_integer(binomial(j as i64, a as i64))
                    * pow_q(alpha, a)
                    * pow_q(beta, b);
                if !q.is_zero() {
                    s.coeffs[a][b].add_scaled(hj, &q);
                }
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `c[a][b]`; zero beyond the truncation order.
    pub fn coeff(&self, a: usize, b: usize) -> SymbolicValue {
        if a + b > self.order {
            SymbolicValue::zero()
        } else {
            self.coeffs[a][b].clone()
        }
    }

    pub fn coeff_ref(&self, a: usize, b: usize) -> &SymbolicValue {
        &self.coeffs[a][b]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &SymbolicValue)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().enumerate().map(move |(b, c)| (a, b, c)))
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let order = self.order.min(other.order);
        let mut s = BiSeries::zero(order);
        for a in 0..=order {
            for b in 0..=order - a {
                let mut v = self.coeffs[a][b].clone();
                v.add_assign_ref(&other.coeffs[a][b]);
                s.coeffs[a][b] = v;
            }
        }
        s
    }

    pub fn scale(&self, q: &Rational) -> BiSeries {
        BiSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| c.scale(q)).collect())
                .collect(),
        }
    }

    pub fn add_scaled(&self, other: &BiSeries, q: &Rational) -> BiSeries {
        self.add(&other.scale(q))
    }

    /// Truncated product; each anti-diagonal is filled independently.
    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let order = self.order.min(other.order);
        let cells: Vec<(usize, usize)> = (0..=order)
            .flat_map(|a| (0..=order - a).map(move |b| (a, b)))
            .collect();
        let vals: Vec<SymbolicValue> = cells
            .par_iter()
            .map(|&(a, b)| {
                let mut acc = SymbolicValue::zero();
                for a1 in 0..=a {
                    for b1 in 0..=b {
                        let (l, r) = (&self.coeffs[a1][b1], &other.coeffs[a - a1][b - b1]);
                        if !l.is_zero() && !r.is_zero() {
                            acc.add_assign_ref(&(l * r));
                        }
                    }
                }
                acc
            })
            .collect();
        let mut s = BiSeries::zero(order);
        for ((a, b), v) in cells.into_iter().zip(vals) {
            s.coeffs[a][b] = v;
        }
        s
    }

    pub fn substitute(&self, s: ConstSymbol, by: &SymbolicValue) -> BiSeries {
        BiSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| c.substitute(s, by)).collect())
                .collect(),
        }
    }

    pub fn is_gamma_free(&self) -> bool {
        self.iter().all(|(_, _, c)| c.is_gamma_free())
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b, c) in self.iter() {
            if !c.is_zero() {
                writeln!(f, "[{a}][{b}] {c}")?;
            }
        }
        Ok(())
    }
}

fn pow_q(q: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= q;
    }
    acc
}

fn inv_pow2(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << n)
}

/// p_m = (−1)^{⌊m/2⌋} s^m / m!, the coefficients of cos(sπx) + sin(sπx) without π^m.
fn trig_rational(scale: &Rational, m: usize) -> Rational {
    let sign = if (m / 2).is_multiple_of(2) { 1 } else { -1 };
    pow_q(scale, m) * Rational::new(BigInt::from(sign), factorial(m as u32))
}

/// Taylor coefficients of cos(sπx) + sin(sπx) up to x^n.
pub fn trig_series(scale: &Rational, n: usize) -> Vec<SymbolicValue> {
    (0..=n)
        .map(|m| SymbolicValue::pi_pow(m).scale(&trig_rational(scale, m)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AcKind {
    /// A(z) = Σ_{r≥1} ζ(2r+1) z^{2r}.
    A,
    /// C(z) = Σ_{r≥1} β(2r) z^{2r−1}.
    C,
}

/// Univariate coefficients of A(s/q) or C(s/q) up to s^n.
pub fn ac_coefficients(kind: AcKind, q: u32, n: usize) -> Vec<SymbolicValue> {
    let qq = Rational::from_integer(q.into());
    (0..=n)
        .map(|j| {
            let scale = Rational::one() / pow_q(&qq, j);
            match kind {
                AcKind::A if j >= 2 && j % 2 == 0 => {
                    SymbolicValue::symbol(ConstSymbol::Zeta(j as u32 + 1)).scale(&scale)
                }
                AcKind::C if j % 2 == 1 => {
                    SymbolicValue::symbol(ConstSymbol::Beta(j as u32 + 1)).scale(&scale)
                }
                _ => SymbolicValue::zero(),
            }
        })
        .collect()
}

/// A((x ± y)/q) or C((x ± y)/q) as a bivariate series; `sign` is the sign of y.
pub fn ac_series(kind: AcKind, sign: i8, q: u32, n: usize) -> BiSeries {
    let h = ac_coefficients(kind, q, n);
    BiSeries::compose_linear(
        n,
        &h,
        &Rational::one(),
        &Rational::from_integer(sign.into()),
    )
}

/// F^V(x,y) to total order n,
///
/// ```text
/// ½P(x)·(A((x−y)/4) − A((x+y)/4) + 2A((x+y)/2) − log 2 + 2V)
/// + ½P(y)·(−A((x−y)/8) + A((x−y)/4) − 2C((x+y)/2) + log 2)
/// ```
///
/// with P(x) = cos(πx/4) + sin(πx/4).
pub fn build_fv(n: usize, v: &SymbolicValue) -> BiSeries {
    let quarter = Rational::new(1.into(), 4.into());
    let p = trig_series(&quarter, n);
    let (px, py) = (BiSeries::in_x(n, &p), BiSeries::in_y(n, &p));
    let one = Rational::one();
    let two = int(2);
    let mut c1 = SymbolicValue::log2().scale(&-&one);
    c1.add_scaled(v, &two);
    let first = ac_series(AcKind::A, -1, 4, n)
        .add_scaled(&ac_series(AcKind::A, 1, 4, n), &-&one)
        .add_scaled(&ac_series(AcKind::A, 1, 2, n), &two)
        .add(&BiSeries::constant(n, c1));
    let second = ac_series(AcKind::A, -1, 8, n)
        .scale(&-&one)
        .add(&ac_series(AcKind::A, -1, 4, n))
        .add_scaled(&ac_series(AcKind::C, 1, 2, n), &-&two)
        .add(&BiSeries::constant(n, SymbolicValue::log2()));
    let half = Rational::new(1.into(), 2.into());
    px.mul(&first)
        .scale(&half)
        .add(&py.mul(&second).scale(&half))
}

/// (−1)^e for any integer e.
fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// t^{*,V}({1̄}^a, 1, {1̄}^b) from the explicit coefficient formula. With n = a+b−r
/// and s_n = (−1)^{⌊(n−1)/2⌋}:
///
/// ```text
///   Σ_{r even} s_n/(2·n!) (π/4)^n C(r,b) (1/4^r − (−1)^{b−r}/4^r − 2/2^r) ζ(r+1)
/// + Σ_{r even} s_n/(2·n!) (π/4)^n C(r,a) ((−1)^{a−r}/8^r − (−1)^{a−r}/4^r) ζ(r+1)
/// − Σ_{r odd}  s_n/(2·n!) (π/4)^n C(r,a) (2/2^r) β(r+1)
/// + δ_{b=0} (−1)^{⌊−(a+b)/2⌋}/(2(a+b)!) (π/4)^{a+b} (2V − log 2)
/// + δ_{a=0} (−1)^{⌊−(a+b)/2⌋}/(2(a+b)!) (π/4)^{a+b} log 2
/// ```
///
/// with r running up to a+b. The V term sits on b = 0 (a trailing 1) and the
/// second ζ-sum has no 2/2^r part; both follow from the coefficient of x^a y^b
/// in [`build_fv`].
pub fn closed_form_t(a: usize, b: usize, v: &SymbolicValue) -> SymbolicValue {
    let s = a + b;
    let quarter_pow = |n: usize| pow_q(&Rational::new(1.into(), 4.into()), n);
    let mut out = SymbolicValue::zero();
    for r in 1..=s {
        let n = s - r;
        let pref = Rational::from_integer(sign_pow((n as i64 - 1).div_euclid(2)).into())
            * quarter_pow(n)
            / Rational::from_integer(factorial(n as u32) * 2);
        let pi_n = SymbolicValue::pi_pow(n);
        if r % 2 == 0 {
            let z = SymbolicValue::symbol(ConstSymbol::Zeta(r as u32 + 1));
            let four_r = quarter_pow(r);
            let k1 = Rational::from_integer(binomial(r as i64, b as i64))
                * (&four_r - &four_r * int(sign_pow(b as i64 - r as i64)) - inv_pow2(r) * int(2));
            let k2 = Rational::from_integer(binomial(r as i64, a as i64))
                * int(sign_pow(a as i64 - r as i64))
                * (pow_q(&Rational::new(1.into(), 8.into()), r) - &four_r);
            let k = &pref * (k1 + k2);
            if !k.is_zero() {
                out.add_assign_ref(&(&pi_n * &z).scale(&k));
            }
        } else {
            let bt = SymbolicValue::symbol(ConstSymbol::Beta(r as u32 + 1));
            let k = -&pref
                * Rational::from_integer(binomial(r as i64, a as i64))
                * inv_pow2(r)
                * int(2);
            if !k.is_zero() {
                out.add_assign_ref(&(&pi_n * &bt).scale(&k));
            }
        }
    }
    let edge = Rational::from_integer(sign_pow((-(s as i64)).div_euclid(2)).into())
        * quarter_pow(s)
        / Rational::from_integer(factorial(s as u32) * 2);
    let pi_s = SymbolicValue::pi_pow(s);
    if b == 0 {
        let mut c = SymbolicValue::log2().scale(&-Rational::one());
        c.add_scaled(v, &int(2));
        out.add_assign_ref(&(&pi_s * &c).scale(&edge));
    }
    if a == 0 {
        out.add_assign_ref(&(&pi_s * &SymbolicValue::log2()).scale(&edge));
    }
    out
}

/// [x^a y^b] Σ f(i) x^i · Σ g(j) (x+y)^j = Σ_{n=0}^{a+b} C(n,b) f(a+b−n) g(n).
pub fn extract_coeff(
    f: impl Fn(usize) -> SymbolicValue,
    g: impl Fn(usize) -> SymbolicValue,
    a: usize,
    b: usize,
) -> SymbolicValue {
    let mut acc = SymbolicValue::zero();
    for n in 0..=a + b {
        let c = binomial(n as i64, b as i64);
        if c.is_zero() {
            continue;
        }
        let term = &f(a + b - n) * &g(n);
        acc.add_scaled(&term, &Rational::from_integer(c));
    }
    acc
}

/// Exact value of a word whose value is known in closed form: the family
/// ({1̄}^a,1,{1̄}^b), {1̄}^m, depth one, and anything whose stuffle
/// regularisation only involves such words. V is the regularisation value t*(1).
pub fn exact_value(w: &TWord, v: &SymbolicValue) -> Result<SymbolicValue> {
    if w.is_empty() {
        return Ok(SymbolicValue::one());
    }
    if let Some((a, b)) = w.family_shape() {
        return Ok(closed_form_t(a, b, v));
    }
    let l = w.letters();
    if l.iter().all(|x| x.k == 1 && x.sign == -1) {
        // t({1̄}^m) = (−1)^m p_m
        let m = l.len();
        let q = trig_rational(&Rational::new(1.into(), 4.into()), m) * int(sign_pow(m as i64));
        return Ok(SymbolicValue::pi_pow(m).scale(&q));
    }
    if l.len() == 1 {
        let k = l[0].k;
        return if l[0].sign == 1 {
            // (1 − 2^{−k}) ζ(k)
            Ok(SymbolicValue::zeta(k)?.scale(&(Rational::one() - inv_pow2(k as usize))))
        } else {
            Ok(SymbolicValue::beta(k)?.scale(&-Rational::one()))
        };
    }
    if !w.is_admissible() {
        let reg = regularise(w);
        return reg
            .evaluate(|x| exact_value(x, v))
            .map(|s| s.substitute(ConstSymbol::V, v));
    }
    Err(MtvError::Unreducible(w.pretty()))
}
