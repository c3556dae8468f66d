//! ₃F₂ series, the Evans–Stanton constant L for zero-balanced ₃F₂, the
//! contiguous relation and Li's closed form for d/dZ|₀ ₃F₂(X,1−X,Z;1−Y,1+Y;1).

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{MtvError, Result};
use crate::exactnum::{rat, BigReal, Rational, GUARD};
use crate::special::{digamma, digamma_rational, euler_gamma};

/// (x)_m = x(x+1)⋯(x+m−1).
pub fn pochhammer_rat(x: &Rational, m: u32) -> Rational {
    let mut acc = Rational::one();
    let mut f = x.clone();
    for _ in 0..m {
        acc *= &f;
        f += Rational::one();
    }
    acc
}

pub fn pochhammer(x: &BigReal, m: u32) -> BigReal {
    let p = x.prec();
    let mut acc = BigReal::one(p);
    let mut f = x.clone();
    for _ in 0..m {
        acc = &acc * &f;
        f = &f + &BigReal::one(p);
    }
    acc
}

/// Numeric series value with an absolute error bound.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: BigReal,
    pub error: f64,
    pub terms: u64,
}

/// ₃F₂ parameters with rational entries: upper (a, b, c), lower (d, e).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypParams {
    #[serde(serialize_with = "ser_rats")]
    pub upper: [Rational; 3],
    #[serde(serialize_with = "ser_rats")]
    pub lower: [Rational; 2],
}

fn ser_rats<S: serde::Serializer, const N: usize>(
    v: &[Rational; N],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(N))?;
    for q in v {
        seq.serialize_element(&crate::exactnum::format_rational(q))?;
    }
    seq.end()
}

impl HypParams {
    pub fn new(upper: [Rational; 3], lower: [Rational; 2]) -> Result<Self> {
        for d in &lower {
            if d.is_integer() && d <= &Rational::zero() {
                return Err(MtvError::Pole(format!(
                    "lower parameter {d} is a non-positive integer"
                )));
            }
        }
        Ok(HypParams { upper, lower })
    }

    /// d + e − a − b − c.
    pub fn excess(&self) -> Rational {
        &self.lower[0] + &self.lower[1] - &self.upper[0] - &self.upper[1] - &self.upper[2]
    }

    pub fn is_zero_balanced(&self) -> bool {
        self.excess().is_zero()
    }

    pub fn real(&self, prec: u32) -> ([BigReal; 3], [BigReal; 2]) {
        let r = |q: &Rational| BigReal::from_rational(q, prec);
        (
            [r(&self.upper[0]), r(&self.upper[1]), r(&self.upper[2])],
            [r(&self.lower[0]), r(&self.lower[1])],
        )
    }
}

/// ₃F₂(a,b,c; d,e; u) for |u| < 1 with rational parameters.
pub fn f32(p: &HypParams, u: &BigReal, tol: f64, prec: u32) -> Result<SeriesValue> {
    let (up, lo) = p.real(prec + GUARD);
    f32_real(&up, &lo, u, tol, prec)
}

/// ₃F₂ for real parameters; the tail after term m is bounded by
/// |t_m|·q/(1−q) with q = |u|Π(1+|a_i|/m)/Π(1−|d_j|/m), valid once q < 1.
pub fn f32_real(
    upper: &[BigReal; 3],
    lower: &[BigReal; 2],
    u: &BigReal,
    tol: f64,
    prec: u32,
) -> Result<SeriesValue> {
    let w = prec + GUARD;
    let uf = u.to_f64();
    if uf.abs() >= 1.0 {
        return Err(MtvError::Domain("3F2 series needs |u| < 1".into()));
    }
    for d in lower {
        if d.signum() <= 0 && d.is_integer() {
            return Err(MtvError::Pole(
                "lower parameter is a non-positive integer".into(),
            ));
        }
    }
    let up: Vec<BigReal> = upper.iter().map(|x| x.with_prec(w)).collect();
    let lo: Vec<BigReal> = lower.iter().map(|x| x.with_prec(w)).collect();
    let u = u.with_prec(w);
    let ua: Vec<f64> = up.iter().map(|x| x.to_f64().abs()).collect();
    let la: Vec<f64> = lo.iter().map(|x| x.to_f64().abs()).collect();
    let one = BigReal::one(w);
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut m: i64 = 0;
    let max_terms: i64 = 50_000_000;
    loop {
        let mf = BigReal::from_int(m, w);
        let mut num = &(&(&up[0] + &mf) * &(&up[1] + &mf)) * &(&up[2] + &mf);
        num = &num * &u;
        let den = (&(&lo[0] + &mf) * &(&lo[1] + &mf)).mul_int(m + 1);
        if num.is_zero() {
            return Ok(SeriesValue {
                value: sum.with_prec(prec),
                error: 0.0,
                terms: m as u64 + 1,
            });
        }
        term = &(&term * &num) / &den;
        sum = &sum + &term;
        m += 1;
        let mm = m as f64;
        if mm > 2.0 * la.iter().chain(&ua).fold(0.0f64, |a, &b| a.max(b)) + 1.0 {
            let q = uf.abs() * ua.iter().map(|a| 1.0 + a / mm).product::<f64>()
                / la.iter().map(|d| 1.0 - d / mm).product::<f64>();
            if q < 1.0 {
                let tail = term.to_f64().abs() * q / (1.0 - q);
                if tail <= tol * 0.5 {
                    let err = tail + mm * 2f64.powi(-(w as i32 - 6));
                    return Ok(SeriesValue {
                        value: sum.with_prec(prec),
                        error: err,
                        terms: m as u64 + 1,
                    });
                }
            }
        }
        if m >= max_terms {
            return Err(MtvError::ToleranceNotReached {
                requested: tol,
                achieved: term.to_f64().abs() * mm,
            });
        }
    }
}

/// Limit of S_K = Σ_{k≤K} term(k) assuming S_K = S + Σ_j β_j K^{−(p+j)},
/// by Richardson extrapolation over K = K₀·2^i.
fn richardson_sum(
    mut term: impl FnMut(u64) -> BigReal,
    p: &BigReal,
    tol: f64,
    w: u32,
) -> Result<SeriesValue> {
    const K0: u64 = 32;
    const MAX_LEVEL: usize = 16;
    let ln2 = BigReal::ln2(w);
    let mut rows: Vec<Vec<BigReal>> = Vec::new();
    let mut s = BigReal::zero(w);
    let mut k = 0u64;
    let mut best: Option<(BigReal, f64)> = None;
    for level in 0..=MAX_LEVEL {
        let target = K0 << level;
        while k < target {
            k += 1;
            s = &s + &term(k);
        }
        let mut row = vec![s.clone()];
        for j in 1..=level {
            // factor 2^{p+j−1}
            let f = (&(p + &BigReal::from_int(j as i64 - 1, w)) * &ln2).exp();
            let prev = &rows[level - 1][j - 1];
            let v = &(&(&f * &row[j - 1]) - prev) / &(&f - &BigReal::one(w));
            row.push(v);
        }
        if level >= 2 {
            let est = (&row[level] - &row[level - 1]).to_f64().abs()
                + (&row[level] - &rows[level - 1][level - 1]).to_f64().abs();
            if best.as_ref().is_none_or(|(_, e)| est < *e) {
                best = Some((row[level].clone(), est));
            }
            if est <= tol * 0.1 {
                break;
            }
        }
        rows.push(row);
    }
    let (value, error) = best.expect("at least three levels");
    if error > tol {
        return Err(MtvError::ToleranceNotReached {
            requested: tol,
            achieved: error,
        });
    }
    Ok(SeriesValue {
        value,
        error,
        terms: k,
    })
}

/// Σ_{k≥1} (a)_k(b)_k / (k (c)_k (d)_k), which is d/dZ|₀ ₃F₂(a,b,Z;c,d;1).
/// Needs c + d − a − b > 0.
pub fn pochhammer_sum(
    a: &BigReal,
    b: &BigReal,
    c: &BigReal,
    d: &BigReal,
    tol: f64,
    prec: u32,
) -> Result<SeriesValue> {
    let w = prec + GUARD + 16;
    let (a, b, c, d) = (
        a.with_prec(w),
        b.with_prec(w),
        c.with_prec(w),
        d.with_prec(w),
    );
    let p = &(&c + &d) - &(&a + &b);
    if p.signum() <= 0 {
        return Err(MtvError::Domain(
            "Pochhammer sum diverges: c + d - a - b <= 0".into(),
        ));
    }
    for x in [&c, &d] {
        if x.signum() <= 0 && x.is_integer() {
            return Err(MtvError::Pole(
                "lower parameter is a non-positive integer".into(),
            ));
        }
    }
    let mut ratio = BigReal::one(w); // (a)_k(b)_k/((c)_k(d)_k)
    let mut r = richardson_sum(
        |k| {
            let m = BigReal::from_int(k as i64 - 1, w);
            ratio = &(&ratio * &(&(&a + &m) * &(&b + &m))) / &(&(&c + &m) * &(&d + &m));
            ratio.div_int(k as i64)
        },
        &p,
        tol,
        w,
    )?;
    r.value = r.value.with_prec(prec);
    Ok(r)
}

/// L = −2γ − ψ(a) − ψ(b) + Σ_{k≥1} (d−c)_k (e−c)_k / ((a)_k (b)_k k) for
/// zero-balanced (a, b, c; d, e) with c > 0; then
/// Γ(a)Γ(b)Γ(c)/(Γ(d)Γ(e))·₃F₂(u) = −log(1−u) + L + O((1−u) log(1−u)).
pub fn evans_stanton_l(p: &HypParams, tol: f64, prec: u32) -> Result<SeriesValue> {
    if !p.is_zero_balanced() {
        return Err(MtvError::NotBalanced(format!(
            "a + b + c - d - e = {}",
            -p.excess()
        )));
    }
    let [a, b, c] = &p.upper;
    let [d, e] = &p.lower;
    if c <= &Rational::zero() {
        return Err(MtvError::Domain("Evans-Stanton needs c > 0".into()));
    }
    let w = prec + GUARD;
    let r = |q: &Rational| BigReal::from_rational(q, w);
    let s = pochhammer_sum(&r(&(d - c)), &r(&(e - c)), &r(a), &r(b), tol * 0.5, w)?;
    let l = &(&(&s.value - &euler_gamma(w).ldexp(1)) - &digamma_rational(a, w)?)
        - &digamma_rational(b, w)?;
    Ok(SeriesValue {
        value: l.with_prec(prec),
        error: s.error + 2f64.powi(-(w as i32 - 4)),
        terms: s.terms,
    })
}

/// The two zero-balanced ₃F₂'s in the odd/even split of G(x,y;z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GFamily {
    /// r = 2m+1: (¾−x/4, ¼+x/4, 1; ¾−y/4, 5/4+y/4).
    Odd,
    /// r = 2m+2: (¾−x/4, 5/4+x/4, 1; 7/4−y/4, 5/4+y/4).
    Even,
}

impl GFamily {
    /// Parameters in Evans–Stanton order (a, b, c = 1; d, e).
    pub fn params(self, x: &Rational, y: &Rational) -> Result<HypParams> {
        let q = |n, d| rat(n, d);
        let x4 = x / Rational::from_integer(4.into());
        let y4 = y / Rational::from_integer(4.into());
        match self {
            GFamily::Odd => HypParams::new(
                [q(3, 4) - &x4, q(1, 4) + &x4, Rational::one()],
                [q(3, 4) - &y4, q(5, 4) + &y4],
            ),
            GFamily::Even => HypParams::new(
                [q(3, 4) - &x4, q(5, 4) + &x4, Rational::one()],
                [q(7, 4) - &y4, q(5, 4) + &y4],
            ),
        }
    }

    /// Γ(a)Γ(b)Γ(c)/(Γ(d)Γ(e)), by reflection: with s(t) = sin(π(1+t)/4) it is
    /// 4s(y)/((1+y)s(x)) for Odd and 4(1+x)s(y)/((3−y)(1+y)s(x)) for Even.
    pub fn gamma_prefactor(self, x: &Rational, y: &Rational, prec: u32) -> Result<BigReal> {
        let w = prec + GUARD;
        let s = |t: &Rational| {
            (&BigReal::pi(w) * &BigReal::from_rational(&(t + Rational::one()), w))
                .ldexp(-2)
                .sin()
        };
        let (sx, sy) = (s(x), s(y));
        let one = Rational::one();
        let rf = match self {
            GFamily::Odd => Rational::from_integer(4.into()) / (&one + y),
            GFamily::Even => {
                Rational::from_integer(4.into()) * (&one + x)
                    / ((Rational::from_integer(3.into()) - y) * (&one + y))
            }
        };
        let v = (&sy * &BigReal::from_rational(&rf, w)).try_div(&sx)?;
        Ok(v.with_prec(prec))
    }
}

/// Γ-prefactor·₃F₂(u) + log(1−u) − L for one of the G families.
pub fn asymptotic_gap(
    fam: GFamily,
    x: &Rational,
    y: &Rational,
    u: &BigReal,
    tol: f64,
    prec: u32,
) -> Result<SeriesValue> {
    let p = fam.params(x, y)?;
    let w = prec + GUARD;
    let f = f32(&p, u, tol, w)?;
    let l = evans_stanton_l(&p, tol, w)?;
    let g = fam.gamma_prefactor(x, y, w)?;
    let one = BigReal::one(w);
    let v = &(&(&g * &f.value) + &(&one - &u.with_prec(w)).ln()?) - &l.value;
    Ok(SeriesValue {
        value: v.with_prec(prec),
        error: g.to_f64().abs() * f.error + l.error,
        terms: f.terms,
    })
}

/// (a−b)p·F(a,b,c;p,q) − b(a−p)·F(a,b+1,c;p+1,q) + a(b−p)·F(a+1,b,c;p+1,q), identically 0.
pub fn contiguous_residual(
    [a, b, c, p, q]: [&BigReal; 5],
    u: &BigReal,
    tol: f64,
    prec: u32,
) -> Result<SeriesValue> {
    let w = prec + GUARD;
    let one = BigReal::one(w);
    let [a, b, c, p, q] = [a, b, c, p, q].map(|x| x.with_prec(w));
    let f1 = f32_real(
        &[a.clone(), b.clone(), c.clone()],
        &[p.clone(), q.clone()],
        u,
        tol,
        w,
    )?;
    let f2 = f32_real(
        &[a.clone(), &b + &one, c.clone()],
        &[&p + &one, q.clone()],
        u,
        tol,
        w,
    )?;
    let f3 = f32_real(
        &[&a + &one, b.clone(), c.clone()],
        &[&p + &one, q.clone()],
        u,
        tol,
        w,
    )?;
    let k1 = &(&a - &b) * &p;
    let k2 = &b * &(&a - &p);
    let k3 = &a * &(&b - &p);
    let v = &(&(&k1 * &f1.value) - &(&k2 * &f2.value)) + &(&k3 * &f3.value);
    let err =
        k1.to_f64().abs() * f1.error + k2.to_f64().abs() * f2.error + k3.to_f64().abs() * f3.error;
    Ok(SeriesValue {
        value: v.with_prec(prec),
        error: err,
        terms: f1.terms.max(f2.terms).max(f3.terms),
    })
}

/// d/dZ|₀ ₃F₂(X, 1−X, Z; 1−Y, 1+Y; 1) =
/// ψ(1+Y) + ψ(1−Y) − ψ(1−X+Y) − ψ(1−X−Y)
///   − (sin πX / sin πY)·[ψ(1−X+Y) − ψ(1−X−Y) − ψ(1−(X−Y)/2) + ψ(1−(X+Y)/2)].
///
/// The poles of ψ(1−X∓Y) at X ± Y = 1 cancel against the sine ratio; when
/// X ± Y ≥ ½ those terms are rewritten with ψ(1−s) = ψ(s) + π cot(πs), which
/// makes the cancellation explicit.
pub fn li_derivative(x: &BigReal, y: &BigReal, prec: u32) -> Result<BigReal> {
    let w = prec + GUARD;
    let (x, y) = (x.with_prec(w), y.with_prec(w));
    let one = BigReal::one(w);
    let half = one.ldexp(-1);
    let pi = BigReal::pi(w);
    let sin_pi = |t: &BigReal| (&pi * t).sin();
    let sy = sin_pi(&y);
    if sy.is_zero() || y.is_integer() {
        return Err(MtvError::Pole("sin(pi Y) = 0".into()));
    }
    let psi = |t: BigReal| digamma(&t, w);
    let r = sin_pi(&x).try_div(&sy)?;
    let (d, s) = (&x - &y, &x + &y);
    let mut v = &psi(&one + &y)? + &psi(&one - &y)?;
    // −(1+r)ψ(1−d)
    let k3 = &one + &r;
    v = if d >= half {
        let c = &(&sin_pi(&s.ldexp(-1)) * &(&pi * &d).cos()) * &pi;
        &(&v - &(&k3 * &psi(d.clone())?)) - &c.try_div(&(&sy * &sin_pi(&d.ldexp(-1))))?
    } else {
        &v - &(&k3 * &psi(&one - &d)?)
    };
    // (r−1)ψ(1−s)
    let k4 = &r - &one;
    v = if s >= half {
        let c = &(&sin_pi(&d.ldexp(-1)) * &(&pi * &s).cos()) * &pi;
        &(&v + &(&k4 * &psi(s.clone())?)) + &c.try_div(&(&sy * &sin_pi(&s.ldexp(-1))))?
    } else {
        &v + &(&k4 * &psi(&one - &s)?)
    };
    let tail = &psi(&one - &d.ldexp(-1))? - &psi(&one - &s.ldexp(-1))?;
    v = &v + &(&r * &tail);
    Ok(v.with_prec(prec))
}

/// The left side of Li's formula as the accelerated Pochhammer sum
/// Σ_{k≥1} (X)_k (1−X)_k / (k (1−Y)_k (1+Y)_k).
pub fn li_series(x: &BigReal, y: &BigReal, tol: f64, prec: u32) -> Result<SeriesValue> {
    let w = prec + GUARD;
    let one = BigReal::one(w);
    let (x, y) = (x.with_prec(w), y.with_prec(w));
    let mut r = pochhammer_sum(&x, &(&one - &x), &(&one - &y), &(&one + &y), tol, w)?;
    r.value = r.value.with_prec(prec);
    Ok(r)
}

/// Central difference [F(h) − F(−h)]/(2h) of Z ↦ ₃F₂(X, 1−X, Z; 1−Y, 1+Y; 1),
/// summed termwise: ((h)_k − (−h)_k)/(2h) = ((1+h)_{k−1} + (1−h)_{k−1})/2.
pub fn li_central_difference(
    x: &BigReal,
    y: &BigReal,
    h: &BigReal,
    tol: f64,
    prec: u32,
) -> Result<SeriesValue> {
    let w = prec + GUARD + 16;
    let one = BigReal::one(w);
    let (x, y, h) = (x.with_prec(w), y.with_prec(w), h.with_prec(w));
    let (a, b, c, d) = (x.clone(), &one - &x, &one - &y, &one + &y);
    let mut ratio = BigReal::one(w); // (a)_k(b)_k/((c)_k(d)_k)
    let mut plus = BigReal::one(w); // (1+h)_{k−1}/(k−1)!
    let mut minus = BigReal::one(w); // (1−h)_{k−1}/(k−1)!
    let r = richardson_sum(
        |k| {
            let m = BigReal::from_int(k as i64 - 1, w);
            if k > 1 {
                plus = (&plus * &(&m + &h)).div_int(k as i64 - 1);
                minus = (&minus * &(&m - &h)).div_int(k as i64 - 1);
            }
            ratio = &(&ratio * &(&(&a + &m) * &(&b + &m))) / &(&(&c + &m) * &(&d + &m));
            (&ratio * &(&plus + &minus)).ldexp(-1).div_int(k as i64)
        },
        &one,
        tol,
        w,
    )?;
    Ok(SeriesValue {
        value: r.value.with_prec(prec),
        error: r.error,
        terms: r.terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    const P: u32 = 160;

    fn bq(n: i64, d: i64) -> BigReal {
        BigReal::from_ratio(n, d, P)
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer_rat(&int(1), 5), int(120));
        assert_eq!(pochhammer_rat(&rat(3, 7), 0), int(1));
        assert_eq!(pochhammer_rat(&rat(3, 4), 2), rat(21, 16));
        assert_eq!(
            pochhammer(&bq(3, 4), 2),
            BigReal::from_rational(&rat(21, 16), P)
        );
    }

    #[test]
    fn f32_simple_cases() {
        let p = HypParams::new([int(1), int(2), int(0)], [int(3), int(4)]).unwrap();
        assert_eq!(f32(&p, &bq(1, 2), 1e-30, P).unwrap().value, BigReal::one(P));
        // ₃F₂(1,1,1;2,2;u) = Li₂(u)/u; Li₂(½) = π²/12 − (log 2)²/2
        let p = HypParams::new([int(1), int(1), int(1)], [int(2), int(2)]).unwrap();
        let r = f32(&p, &bq(1, 2), 1e-40, P).unwrap();
        let li2 = &BigReal::pi(P).square().div_int(12) - &BigReal::ln2(P).square().ldexp(-1);
        assert!((&r.value - &li2.ldexp(1)).to_f64().abs() < 1e-40);
        assert!(r.value.to_string().starts_with("1.1644810529"));
        assert!(r.error <= 1e-40);
    }

    #[test]
    fn families_are_zero_balanced() {
        for (x, y) in [
            (int(0), int(0)),
            (rat(1, 4), rat(1, 8)),
            (rat(-7, 3), rat(5, 11)),
        ] {
            assert!(GFamily::Odd.params(&x, &y).unwrap().is_zero_balanced());
            assert!(GFamily::Even.params(&x, &y).unwrap().is_zero_balanced());
        }
        let bad = HypParams::new([int(1), int(1), int(1)], [int(2), int(2)]).unwrap();
        assert!(matches!(
            evans_stanton_l(&bad, 1e-20, P),
            Err(MtvError::NotBalanced(_))
        ));
    }

    #[test]
    fn evans_stanton_degenerate_and_symmetric() {
        // c = d: the series vanishes
        let p = HypParams::new([rat(1, 3), rat(1, 2), rat(5, 4)], [rat(5, 4), rat(5, 6)]).unwrap();
        let l = evans_stanton_l(&p, 1e-30, P).unwrap().value;
        let expect = &(&-euler_gamma(P).ldexp(1) - &digamma_rational(&rat(1, 3), P).unwrap())
            - &digamma_rational(&rat(1, 2), P).unwrap();
        assert!((&l - &expect).to_f64().abs() < 1e-30);
        let q = GFamily::Odd.params(&rat(1, 4), &rat(1, 8)).unwrap();
        let swapped = HypParams::new(
            [q.upper[1].clone(), q.upper[0].clone(), q.upper[2].clone()],
            q.lower.clone(),
        )
        .unwrap();
        let l1 = evans_stanton_l(&q, 1e-25, P).unwrap().value;
        let l2 = evans_stanton_l(&swapped, 1e-25, P).unwrap().value;
        assert!((&l1 - &l2).to_f64().abs() < 1e-24);
    }

    #[test]
    fn contiguous_relation_vanishes() {
        let tol = 1e-30;
        let args = [bq(3, 7), bq(5, 4), bq(2, 9), bq(11, 8), bq(1, 3)];
        let r = contiguous_residual(
            [&args[0], &args[1], &args[2], &args[3], &args[4]],
            &bq(1, 2),
            tol,
            P,
        )
        .unwrap();
        assert!(r.value.to_f64().abs() <= 3.0 * tol);
        let a = bq(2, 3);
        let r =
            contiguous_residual([&a, &a, &args[2], &args[3], &args[4]], &bq(1, 2), tol, P).unwrap();
        assert!(r.value.to_f64().abs() <= 3.0 * tol);
    }

    #[test]
    fn li_formula_matches_series() {
        let (x, y) = (BigReal::from_ratio(3, 10, P), BigReal::from_ratio(1, 5, P));
        let rhs = li_derivative(&x, &y, P).unwrap();
        let lhs = li_series(&x, &y, 1e-25, P).unwrap();
        assert!(
            (&rhs - &lhs.value).to_f64().abs() < 1e-24,
            "{rhs} vs {}",
            lhs.value
        );
        let ym = -&y;
        assert!((&li_derivative(&x, &ym, P).unwrap() - &rhs).to_f64().abs() < 1e-40);
        assert!(
            li_derivative(&BigReal::zero(P), &y, P)
                .unwrap()
                .to_f64()
                .abs()
                < 1e-40
        );
        assert!(li_derivative(&x, &BigReal::one(P), P).is_err());
        // removable singularities at X + Y = 1 and X − Y = 1
        for (a, b) in [
            ((1, 4), (3, 4)),
            ((-1, 4), (3, 4)),
            ((7, 10), (-3, 10)),
            ((3, 5), (1, 5)),
        ] {
            let (x, y) = (
                BigReal::from_ratio(a.0, a.1, P),
                BigReal::from_ratio(b.0, b.1, P),
            );
            let rhs = li_derivative(&x, &y, P).unwrap();
            let lhs = li_series(&x, &y, 1e-25, P).unwrap();
            assert!(
                (&rhs - &lhs.value).to_f64().abs() < 1e-24,
                "({a:?},{b:?}): {rhs} vs {}",
                lhs.value
            );
        }
    }
}
