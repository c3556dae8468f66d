//! Bernoulli and Euler numbers, digamma, ζ(n), β(n), γ and the closed forms
//! A(z), C(z).
//!
//! Every numeric routine takes an explicit precision `prec` and returns a
//! value within `2^-prec` of the true result (computed with
//! [`GUARD`] extra bits and rounded once).

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{MtvError, Result};
use crate::exactnum::{binomial, factorial, BigReal, Rational, GUARD};

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());
static EULER: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());

/// Bernoulli number B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Rational {
    if n > 1 && n % 2 == 1 {
        return Rational::zero();
    }
    if let Some(b) = BERNOULLI.read().unwrap().get(n) {
        return b.clone();
    }
    let mut cache = BERNOULLI.write().unwrap();
    if cache.is_empty() {
        cache.push(Rational::one());
        cache.push(Rational::new((-1).into(), 2.into()));
    }
    while cache.len() <= n {
        let m = cache.len();
        if m % 2 == 1 {
            cache.push(Rational::zero());
            continue;
        }
        // Σ_{k=0}^{m} C(m+1,k) B_k = 0
        let mut s = Rational::zero();
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                s += b * Rational::from_integer(binomial(m as i64 + 1, k as i64));
            }
        }
        cache.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    cache[n].clone()
}

/// Euler (secant) number E_n: E_0 = 1, E_2 = -1, E_4 = 5, …; zero for odd n.
pub fn euler_number(n: usize) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let k = n / 2;
    if let Some(e) = EULER.read().unwrap().get(k) {
        return e.clone();
    }
    let mut cache = EULER.write().unwrap();
    if cache.is_empty() {
        cache.push(BigInt::one());
    }
    while cache.len() <= k {
        let m = cache.len();
        let mut s = BigInt::zero();
        for (j, e) in cache.iter().enumerate() {
            s += binomial(2 * m as i64, 2 * j as i64) * e;
        }
        cache.push(-s);
    }
    cache[k].clone()
}

/// c with ζ(n) = c·π^n for even n ≥ 2.
pub fn zeta_even_coeff(n: u32) -> Rational {
    assert!(n >= 2 && n.is_multiple_of(2), "zeta_even_coeff needs even n >= 2");
    let k = n / 2;
    let b = bernoulli(n as usize);
    let sign = if k % 2 == 1 { 1 } else { -1 };
    let num = b * Rational::from_integer(BigInt::from(sign) * (BigInt::one() << n));
    num / Rational::from_integer(factorial(n) * 2)
}

/// c with β(n) = c·π^n for odd n ≥ 1.
pub fn beta_odd_coeff(n: u32) -> Rational {
    assert!(n % 2 == 1, "beta_odd_coeff needs odd n");
    let k = n / 2;
    let e = euler_number(2 * k as usize);
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    Rational::new(
        BigInt::from(sign) * e,
        (BigInt::one() << (2 * k + 2)) * factorial(2 * k),
    )
}

fn pole_check(x: &BigReal) -> Result<()> {
    if x.signum() <= 0 && x.is_integer() {
        return Err(MtvError::Pole(format!(
            "digamma at non-positive integer {}",
            x.round()
        )));
    }
    Ok(())
}

/// ψ(x) by upward recurrence to x ≥ max(10, w/8) followed by the Bernoulli
/// asymptotic series. Error ≤ 2^-prec.
pub fn digamma(x: &BigReal, prec: u32) -> Result<BigReal> {
    pole_check(x)?;
    let w = prec + GUARD;
    let x = x.with_prec(w);
    let threshold = BigReal::from_int((w / 8).max(10), w);
    let mut y = x.clone();
    let mut acc = BigReal::zero(w);
    while y < threshold {
        if y.is_zero() {
            return Err(MtvError::Pole("digamma argument rounds to a pole".into()));
        }
        acc = &acc + &y.recip();
        y = &y + &BigReal::one(w);
    }
    let inv = y.recip();
    let y2 = y.square();
    let mut s = &y.ln()? - &inv.ldexp(-1);
    // y^{2k} grows instead of y^{-2k} shrinking, so no term underflows.
    let mut pw = BigReal::one(w);
    let eps = BigReal::one(w).ldexp(-(w as i64));
    let mut k = 1usize;
    loop {
        pw = &pw * &y2;
        let b = bernoulli(2 * k) / Rational::from_integer(BigInt::from(2 * k));
        let t = &BigReal::from_rational(&b, w) / &pw;
        s = &s - &t;
        if t.abs() <= eps || k > 4 * w as usize {
            break;
        }
        k += 1;
    }
    Ok((&s - &acc).with_prec(prec))
}

pub fn digamma_rational(q: &Rational, prec: u32) -> Result<BigReal> {
    if q <= &Rational::zero() && q.is_integer() {
        return Err(MtvError::Pole(format!(
            "digamma at non-positive integer {q}"
        )));
    }
    digamma(&BigReal::from_rational(q, prec + GUARD), prec)
}

/// Euler–Mascheroni constant γ = -ψ(1).
pub fn euler_gamma(prec: u32) -> BigReal {
    -digamma(&BigReal::one(prec), prec).expect("psi(1) is regular")
}

/// Cohen–Villegas–Zagier acceleration of Σ_{k≥0} (-1)^k a_k for a totally
/// monotone sequence with a_0 ≤ 1; error ≤ 2·5.828^-n.
fn cvz(a: impl Fn(u64, u32) -> BigReal, w: u32) -> BigReal {
    let n = ((w + 4) as f64 / 5.828427124746f64.log2()).ceil() as u64 + 1;
    let wp = w + 8;
    let three_plus =
        &BigReal::from_int(3, wp) + &BigReal::from_int(8, wp).sqrt().expect("positive");
    let d = three_plus.powi(n as i64);
    let d = (&d + &d.recip()).ldexp(-1);
    let mut b = BigReal::from_int(-1, wp);
    let mut c = -&d;
    let mut s = BigReal::zero(wp);
    let n_i = n as i64;
    for k in 0..n {
        c = &b - &c;
        s = &s + &(&c * &a(k, wp));
        let ki = k as i64;
        b = b
            .mul_int(2 * (ki + n_i) * (ki - n_i))
            .div_int((2 * ki + 1) * (ki + 1));
    }
    (&s / &d).with_prec(w)
}

/// ζ(n), n ≥ 2, via the accelerated alternating series η(n)/(1 - 2^{1-n}).
pub fn zeta_int(n: u32, prec: u32) -> Result<BigReal> {
    if n < 2 {
        return Err(MtvError::Domain(format!("zeta({n}) needs n >= 2")));
    }
    let w = prec + GUARD;
    let eta = cvz(
        |k, p| BigReal::one(p).div_int(BigInt::from(k + 1).pow(n)),
        w,
    );
    let one = BigReal::one(w);
    let f = &one - &one.ldexp(1 - n as i64);
    Ok((&eta / &f).with_prec(prec))
}

/// β(n) = Σ (-1)^k/(2k+1)^n, n ≥ 1.
pub fn beta_int(n: u32, prec: u32) -> Result<BigReal> {
    if n < 1 {
        return Err(MtvError::Domain(format!("beta({n}) needs n >= 1")));
    }
    let w = prec + GUARD;
    let s = cvz(
        |k, p| BigReal::one(p).div_int(BigInt::from(2 * k + 1).pow(n)),
        w,
    );
    Ok(s.with_prec(prec))
}

/// A(z) = ψ(1) - ½(ψ(1+z) + ψ(1-z)) = Σ_{r≥1} ζ(2r+1) z^{2r}.
pub fn a_num(z: &BigReal, prec: u32) -> Result<BigReal> {
    let w = prec + GUARD;
    let z = z.with_prec(w);
    let one = BigReal::one(w);
    let p1 = digamma(&one, w)?;
    let s = &digamma(&(&one + &z), w)? + &digamma(&(&one - &z), w)?;
    Ok((&p1 - &s.ldexp(-1)).with_prec(prec))
}

/// C(z) = ⅛(ψ(¼+z/4) - ψ(¼-z/4) - ψ(¾+z/4) + ψ(¾-z/4)) = Σ_{r≥1} β(2r) z^{2r-1}.
pub fn c_num(z: &BigReal, prec: u32) -> Result<BigReal> {
    let w = prec + GUARD;
    let q = z.with_prec(w).ldexp(-2);
    let a = BigReal::from_ratio(1, 4, w);
    let b = BigReal::from_ratio(3, 4, w);
    let s = &(&digamma(&(&a + &q), w)? - &digamma(&(&a - &q), w)?)
        - &(&digamma(&(&b + &q), w)? - &digamma(&(&b - &q), w)?);
    Ok(s.ldexp(-3).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    const GAMMA_40: &str = "0.5772156649015328606065120900824024310422";
    const ZETA3_40: &str = "1.2020569031595942853997381615114499907650";
    const CATALAN_40: &str = "0.9159655941772190150546035149323841107741";

    fn close(a: &BigReal, b: &BigReal, bits: i64) -> bool {
        (a - b).abs() <= BigReal::one(a.prec().max(b.prec())).ldexp(-bits)
    }

    /// Euler–Maclaurin ζ(s) with N = 40 and 40 correction terms.
    fn zeta_euler_maclaurin(s: u32, p: u32) -> BigReal {
        let n = 40i64;
        let mut sum = BigReal::zero(p);
        for k in 1..n {
            sum = &sum + &BigReal::from_int(k, p).powi(-(s as i64));
        }
        let big_n = BigReal::from_int(n, p);
        sum = &sum + &big_n.powi(1 - s as i64).div_int(s as i64 - 1);
        sum = &sum + &big_n.powi(-(s as i64)).ldexp(-1);
        let mut rising = Rational::from_integer(s.into());
        for k in 1..=40usize {
            let c = bernoulli(2 * k) / Rational::from_integer(factorial(2 * k as u32)) * &rising;
            sum =
                &sum + &(&BigReal::from_rational(&c, p) / &big_n.powi(s as i64 + 2 * k as i64 - 1));
            rising *=
                Rational::from_integer(((s as usize + 2 * k - 1) * (s as usize + 2 * k)).into());
        }
        sum
    }

    #[test]
    fn bernoulli_and_euler_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(13), rat(0, 1));
        assert_eq!(euler_number(4), BigInt::from(5));
        assert_eq!(euler_number(6), BigInt::from(-61));
        assert_eq!(euler_number(10), BigInt::from(-50521));
        assert_eq!(zeta_even_coeff(6), rat(1, 945));
        assert_eq!(beta_odd_coeff(7), rat(61, 184320));
    }

    #[test]
    fn digamma_values() {
        let p = 256;
        let g = euler_gamma(p);
        assert_eq!(g.to_decimal_string(40), GAMMA_40);
        let z = BigReal::from_rational(&rat(7, 3), p);
        let lhs = &digamma(&(&z + &BigReal::one(p)), p).unwrap() - &digamma(&z, p).unwrap();
        assert!(close(&lhs, &z.recip(), 250));
        assert!(digamma(&BigReal::from_int(-2, p), p).is_err());
        assert!(digamma(&BigReal::zero(p), p).is_err());
        // ψ(1/2) = -γ - 2 log 2
        let h = digamma_rational(&rat(1, 2), p).unwrap();
        assert!(close(&h, &(-&g - &BigReal::ln2(p).ldexp(1)), 250));
    }

    #[test]
    fn digamma_reflection_at_point_three() {
        let p = 256;
        let z = BigReal::parse_decimal("0.3", p).unwrap();
        let pi = BigReal::pi(p);
        let r = &(&(&digamma(&-&z, p).unwrap() - &digamma(&z, p).unwrap()) - &z.recip())
            - &(&pi * &(&pi * &z).cot().unwrap());
        assert!(r.abs() <= BigReal::one(p).ldexp(-246));
    }

    #[test]
    fn zeta_values() {
        let p = 256;
        let z2 = zeta_int(2, p).unwrap();
        let pi = BigReal::pi(p);
        assert!(close(&z2, &pi.square().div_int(6), 250));
        let z3 = zeta_int(3, p).unwrap();
        assert_eq!(z3.to_decimal_string(40), ZETA3_40);
        let em = zeta_euler_maclaurin(3, p + 32);
        assert!(close(&z3, &em, 240), "{}", (&z3 - &em).to_f64());
        assert!(close(
            &zeta_int(7, p).unwrap(),
            &zeta_euler_maclaurin(7, p + 32),
            240
        ));
        assert!(zeta_int(1, p).is_err());
    }

    #[test]
    fn beta_values() {
        let p = 256;
        let pi = BigReal::pi(p);
        assert!(close(&beta_int(1, p).unwrap(), &pi.ldexp(-2), 250));
        assert_eq!(beta_int(2, p).unwrap().to_decimal_string(40), CATALAN_40);
        assert!(close(&beta_int(3, p).unwrap(), &pi.powi(3).ldexp(-5), 250));
        assert!(beta_int(0, p).is_err());
    }

    #[test]
    fn a_and_c_series() {
        let p = 192;
        let z = BigReal::from_ratio(1, 2, p);
        let a = a_num(&z, p).unwrap();
        let mut s = BigReal::zero(p);
        let mut c = BigReal::zero(p);
        for r in 1..=70u32 {
            s = &s + &zeta_int(2 * r + 1, p).unwrap().ldexp(-2 * r as i64);
            c = &c + &beta_int(2 * r, p).unwrap().ldexp(1 - 2 * r as i64);
        }
        assert!(close(&a, &s, 130));
        assert!(close(&c_num(&z, p).unwrap(), &c, 130));
        assert!(a_num(&BigReal::zero(p), p).unwrap().abs() <= BigReal::one(p).ldexp(-186));
        assert!(c_num(&BigReal::zero(p), p).unwrap().abs() <= BigReal::one(p).ldexp(-186));
    }
}
