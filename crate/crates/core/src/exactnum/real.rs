//! Fixed-point arbitrary-precision reals.
//!
//! A [`BigReal`] stores `mant / 2^prec`. Every arithmetic operation rounds to
//! nearest at the precision of its result, so a single operation has absolute
//! error at most `2^-prec`. The elementary functions work internally with
//! [`GUARD`] extra bits and round once at the end, which keeps their error
//! within `2^-prec` as well.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{MtvError, Result};

pub const DEFAULT_PRECISION: u32 = 256;

/// Extra bits carried by the elementary functions.
pub const GUARD: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigReal {
    mant: BigInt,
    prec: u32,
}

/// Rounded `x / 2^k`.
fn shr_round(x: &BigInt, k: u32) -> BigInt {
    if k == 0 {
        return x.clone();
    }
    (x + (BigInt::one() << (k - 1))) >> k
}

/// Rounded `n / d`.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (n, d) = if d.is_negative() {
        (-n, -d)
    } else {
        (n.clone(), d.clone())
    };
    let (q, r) = n.div_mod_floor(&d);
    if (r << 1u32) >= d {
        q + 1
    } else {
        q
    }
}

impl BigReal {
    pub fn from_raw(mant: BigInt, prec: u32) -> Self {
        BigReal { mant, prec }
    }

    pub fn zero(prec: u32) -> Self {
        BigReal {
            mant: BigInt::zero(),
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        BigReal {
            mant: BigInt::one() << prec,
            prec,
        }
    }

    pub fn from_int<T: Into<BigInt>>(n: T, prec: u32) -> Self {
        BigReal {
            mant: n.into() << prec,
            prec,
        }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_int(n, prec)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        BigReal {
            mant: div_round(&(q.numer() << prec), q.denom()),
            prec,
        }
    }

    pub fn from_ratio(n: i64, d: i64, prec: u32) -> Self {
        BigReal {
            mant: div_round(&(BigInt::from(n) << prec), &BigInt::from(d)),
            prec,
        }
    }

    /// Exact conversion of a finite double (rounded only if it has bits below `2^-prec`).
    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "non-finite f64");
        if x == 0.0 {
            return Self::zero(prec);
        }
        let bits = x.abs().to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        let mut v = BigInt::from(m);
        let shift = e + prec as i64;
        v = if shift >= 0 {
            v << shift as u64
        } else {
            shr_round(&v, (-shift) as u32)
        };
        if x < 0.0 {
            v = -v;
        }
        BigReal { mant: v, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            prec: self.prec,
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        let mant = if prec >= self.prec {
            &self.mant << (prec - self.prec)
        } else {
            shr_round(&self.mant, self.prec - prec)
        };
        BigReal { mant, prec }
    }

    /// True when the value is an integer (exactly, at its stored precision).
    pub fn is_integer(&self) -> bool {
        self.mant
            .trailing_zeros()
            .is_none_or(|z| z >= self.prec as u64)
    }

    /// Nearest integer.
    pub fn round(&self) -> BigInt {
        shr_round(&self.mant, self.prec)
    }

    pub fn floor(&self) -> BigInt {
        &self.mant >> self.prec
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits > 960 {
            let drop = (bits - 960) as u32;
            let m = (&self.mant >> drop).to_f64().unwrap_or(f64::NAN);
            return m * 2f64.powi(drop as i32 - self.prec as i32);
        }
        let m = self.mant.to_f64().unwrap_or(f64::NAN);
        if self.prec > 1000 {
            m * 2f64.powi(-1000) * 2f64.powi(1000 - self.prec as i32)
        } else {
            m * 2f64.powi(-(self.prec as i32))
        }
    }

    /// Exact rational value of the stored number.
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mant.clone(), BigInt::one() << self.prec)
    }

    fn aligned(a: &BigReal, b: &BigReal) -> (BigInt, BigInt, u32) {
        match a.prec.cmp(&b.prec) {
            Ordering::Equal => (a.mant.clone(), b.mant.clone(), a.prec),
            Ordering::Less => (&a.mant << (b.prec - a.prec), b.mant.clone(), b.prec),
            Ordering::Greater => (a.mant.clone(), &b.mant << (a.prec - b.prec), a.prec),
        }
    }

    /// `self · 2^k`; exact for `k ≥ 0`.
    pub fn ldexp(&self, k: i64) -> Self {
        let mant = if k >= 0 {
            &self.mant << k as u64
        } else {
            shr_round(&self.mant, (-k) as u32)
        };
        BigReal {
            mant,
            prec: self.prec,
        }
    }

    pub fn mul_int<T: Into<BigInt>>(&self, n: T) -> Self {
        BigReal {
            mant: &self.mant * n.into(),
            prec: self.prec,
        }
    }

    pub fn div_int<T: Into<BigInt>>(&self, n: T) -> Self {
        BigReal {
            mant: div_round(&self.mant, &n.into()),
            prec: self.prec,
        }
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        BigReal {
            mant: div_round(&(&self.mant * q.numer()), q.denom()),
            prec: self.prec,
        }
    }

    pub fn try_div(&self, rhs: &BigReal) -> Result<BigReal> {
        if rhs.is_zero() {
            return Err(MtvError::Domain("division by zero".into()));
        }
        Ok(self / rhs)
    }

    pub fn recip(&self) -> Self {
        BigReal::one(self.prec) / self
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(MtvError::Domain("sqrt of negative number".into()));
        }
        let w = self.prec + 2;
        let scaled = &self.mant << (self.prec + 4);
        let r = scaled.sqrt();
        Ok(BigReal {
            mant: shr_round(&r, w - self.prec),
            prec: self.prec,
        })
    }

    pub fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let w = self.prec + GUARD + 2 * (64 - (n as u64).leading_zeros());
        let mut base = self.with_prec(w);
        let mut acc = BigReal::one(w);
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc.with_prec(self.prec)
    }

    pub fn min_of(&self, other: &BigReal) -> BigReal {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max_of(&self, other: &BigReal) -> BigReal {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Decimal rendering with `digits` digits after the point (rounded).
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let n = shr_round(&(&self.mant * &scale), self.prec);
        let neg = n.is_negative();
        let s = n.abs().to_str_radix(10);
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
        } else {
            s
        };
        let (ip, fp) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }

    /// Number of decimal digits that the precision supports.
    pub fn natural_digits(&self) -> usize {
        ((self.prec as f64) * std::f64::consts::LOG10_2)
            .floor()
            .max(1.0) as usize
    }

    pub fn parse_decimal(s: &str, prec: u32) -> Result<Self> {
        let s = s.trim();
        if let Ok(x) = s.parse::<f64>() {
            if !s.contains(['e', 'E']) {
                let (neg, body) = s.strip_prefix('-').map_or((false, s), |r| (true, r));
                let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
                let digits: String = format!("{ip}{fp}");
                if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                    let n: BigInt = digits.parse().map_err(|_| MtvError::Parse(s.to_string()))?;
                    let d = BigInt::from(10u32).pow(fp.len() as u32);
                    let q = Rational::new(if neg { -n } else { n }, d);
                    return Ok(Self::from_rational(&q, prec));
                }
            }
            return Ok(Self::from_f64(x, prec));
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| MtvError::Parse(s.to_string()))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| MtvError::Parse(s.to_string()))?;
            if d.is_zero() {
                return Err(MtvError::Parse(format!("zero denominator in {s}")));
            }
            return Ok(Self::from_rational(&Rational::new(n, d), prec));
        }
        Err(MtvError::Parse(format!("not a number: {s}")))
    }

    // ---- constants ----

    pub fn pi(prec: u32) -> Self {
        cached(&PI_CACHE, prec, |w| {
            let a = atan_inv(5, w) << 4u32;
            let b = atan_inv(239, w) << 2u32;
            a - b
        })
    }

    pub fn ln2(prec: u32) -> Self {
        cached(&LN2_CACHE, prec, |w| atanh_inv(3, w) << 1u32)
    }

    // ---- elementary functions ----

    /// Natural logarithm, absolute error ≤ 2^-prec.
    pub fn ln(&self) -> Result<Self> {
        if self.signum() <= 0 {
            return Err(MtvError::Domain("log of non-positive number".into()));
        }
        let p = self.prec;
        // x = m·2^k with m in [1/√2·…, …); pick k from the bit length.
        let k = self.mant.bits() as i64 - p as i64 - 1;
        let w = p + GUARD + 8;
        let x = self.with_prec(w + 64);
        let mut m = x.ldexp(-k).with_prec(w);
        let mut k = k;
        // Bring m into [0.75, 1.5).
        let three_quarters = BigReal::from_ratio(3, 4, w);
        let three_halves = BigReal::from_ratio(3, 2, w);
        while m < three_quarters {
            m = m.ldexp(1);
            k -= 1;
        }
        while m >= three_halves {
            m = m.ldexp(-1);
            k += 1;
        }
        let one = BigReal::one(w);
        let y = &(&m - &one) / &(&m + &one);
        let lm = atanh_series(&y).ldexp(1);
        let r = &lm + &BigReal::ln2(w).mul_int(k);
        Ok(r.with_prec(p))
    }

    /// Exponential. The result is absolute-accurate to 2^-prec while it fits.
    pub fn exp(&self) -> Self {
        let p = self.prec;
        let magnitude = self.abs().floor().bits() as u32;
        let w = p + GUARD + 2 * magnitude + 16;
        let x = self.with_prec(w);
        let ln2 = BigReal::ln2(w);
        let k = (&x / &ln2).round();
        let r = &x - &ln2.mul_int(k.clone());
        let s = 10u32;
        let r = r.ldexp(-(s as i64));
        let mut sum = BigReal::one(w);
        let mut term = BigReal::one(w);
        let mut n = 1i64;
        loop {
            term = (&term * &r).div_int(n);
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
            n += 1;
        }
        for _ in 0..s {
            sum = sum.square();
        }
        let k = k.to_i64().expect("exponent out of range");
        sum.ldexp(k).with_prec(p)
    }

    /// (sin x, cos x) with absolute error ≤ 2^-prec each.
    pub fn sin_cos(&self) -> (Self, Self) {
        let p = self.prec;
        let magnitude = self.abs().floor().bits() as u32;
        let w = p + GUARD + magnitude + 8;
        let x = self.with_prec(w);
        let half_pi = BigReal::pi(w).ldexp(-1);
        let q = (&x / &half_pi).round();
        let r = &x - &half_pi.mul_int(q.clone());
        let r2 = r.square();
        let mut s = r.clone();
        let mut c = BigReal::one(w);
        let mut ts = r.clone();
        let mut tc = BigReal::one(w);
        let mut n = 1i64;
        loop {
            ts = (&ts * &r2).div_int(-(2 * n) * (2 * n + 1));
            tc = (&tc * &r2).div_int(-(2 * n - 1) * (2 * n));
            if ts.is_zero() && tc.is_zero() {
                break;
            }
            s = &s + &ts;
            c = &c + &tc;
            n += 1;
        }
        let quad = q.mod_floor(&BigInt::from(4)).to_u32().unwrap();
        let (s, c) = match quad {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        (s.with_prec(p), c.with_prec(p))
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    /// cot x; errors when sin x rounds to zero.
    pub fn cot(&self) -> Result<Self> {
        let w = self.prec + GUARD;
        let (s, c) = self.with_prec(w).sin_cos();
        if s.is_zero() {
            return Err(MtvError::Pole("cot at a multiple of pi".into()));
        }
        Ok((&c / &s).with_prec(self.prec))
    }

    /// Inverse hyperbolic tangent for |x| < 1.
    pub fn atanh(&self) -> Result<Self> {
        let one = BigReal::one(self.prec);
        if self.abs() >= one {
            return Err(MtvError::Domain("atanh outside (-1, 1)".into()));
        }
        let w = self.prec + GUARD;
        let x = self.with_prec(w);
        if x.abs() <= BigReal::from_ratio(1, 2, w) {
            return Ok(atanh_series(&x).with_prec(self.prec));
        }
        let one = BigReal::one(w);
        let q = &(&one + &x) / &(&one - &x);
        Ok(q.ln()?.ldexp(-1).with_prec(self.prec))
    }
}

/// atanh(y) by its Maclaurin series; intended for |y| ≤ 1/2.
fn atanh_series(y: &BigReal) -> BigReal {
    let y2 = y.square();
    let mut term = y.clone();
    let mut sum = y.clone();
    let mut k = 1i64;
    loop {
        term = &term * &y2;
        let t = term.div_int(2 * k + 1);
        if t.is_zero() {
            break;
        }
        sum = &sum + &t;
        k += 1;
    }
    sum
}

/// atan(1/n) as a fixed-point integer at `w` bits.
fn atan_inv(n: u32, w: u32) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut term = (BigInt::one() << w) / &n;
    let mut sum = term.clone();
    let mut k = 1u64;
    while !term.is_zero() {
        term = &term / &n2;
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

/// atanh(1/n) as a fixed-point integer at `w` bits.
fn atanh_inv(n: u32, w: u32) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut term = (BigInt::one() << w) / &n;
    let mut sum = term.clone();
    let mut k = 1u64;
    while !term.is_zero() {
        term = &term / &n2;
        sum += &term / BigInt::from(2 * k + 1);
        k += 1;
    }
    sum
}

type ConstCache = OnceLock<RwLock<HashMap<u32, BigInt>>>;
static PI_CACHE: ConstCache = OnceLock::new();
static LN2_CACHE: ConstCache = OnceLock::new();

fn cached(cache: &ConstCache, prec: u32, f: impl Fn(u32) -> BigInt) -> BigReal {
    let map = cache.get_or_init(|| RwLock::new(HashMap::new()));
    let w = prec + GUARD;
    if let Some(m) = map.read().unwrap().get(&prec) {
        return BigReal::from_raw(m.clone(), prec);
    }
    let m = shr_round(&f(w), GUARD);
    map.write().unwrap().insert(prec, m.clone());
    BigReal::from_raw(m, prec)
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = BigReal::aligned(self, other);
        a.cmp(&b)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or_else(|| self.natural_digits().saturating_sub(2));
        f.write_str(&self.to_decimal_string(digits))
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -self.mant,
            prec: self.prec,
        }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -&self.mant,
            prec: self.prec,
        }
    }
}

impl Add<&BigReal> for &BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        if self.prec == rhs.prec {
            return BigReal {
                mant: &self.mant + &rhs.mant,
                prec: self.prec,
            };
        }
        let (a, b, p) = BigReal::aligned(self, rhs);
        BigReal {
            mant: a + b,
            prec: p,
        }
    }
}

impl Sub<&BigReal> for &BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        if self.prec == rhs.prec {
            return BigReal {
                mant: &self.mant - &rhs.mant,
                prec: self.prec,
            };
        }
        let (a, b, p) = BigReal::aligned(self, rhs);
        BigReal {
            mant: a - b,
            prec: p,
        }
    }
}

impl Mul<&BigReal> for &BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        let p = self.prec.max(rhs.prec);
        let shift = self.prec + rhs.prec - p;
        BigReal {
            mant: shr_round(&(&self.mant * &rhs.mant), shift),
            prec: p,
        }
    }
}

impl Div<&BigReal> for &BigReal {
    type Output = BigReal;
    /// Panics on division by zero; see [`BigReal::try_div`].
    fn div(self, rhs: &BigReal) -> BigReal {
        assert!(!rhs.is_zero(), "BigReal division by zero");
        let p = self.prec.max(rhs.prec);
        // self.mant/2^sp ÷ rhs.mant/2^rp = (self.mant·2^(p+rp-sp) / rhs.mant) / 2^p
        let num = &self.mant << (p + rhs.prec - self.prec);
        BigReal {
            mant: div_round(&num, &rhs.mant),
            prec: p,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &BigReal) -> BigReal {
                (&self).$m(rhs)
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for BigReal {
    fn sum<I: Iterator<Item = BigReal>>(iter: I) -> BigReal {
        let mut acc: Option<BigReal> = None;
        for x in iter {
            acc = Some(match acc {
                None => x,
                Some(a) => a + x,
            });
        }
        acc.unwrap_or_else(|| BigReal::zero(DEFAULT_PRECISION))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937511";
    const LN2_50: &str = "0.69314718055994530941723212145817656807550013436026";

    fn close(a: &BigReal, b: &BigReal, bits: i64) -> bool {
        (a - b).abs() <= BigReal::one(a.prec()).ldexp(-bits)
    }

    #[test]
    fn constants_match_reference_digits() {
        assert_eq!(BigReal::pi(256).to_decimal_string(50), PI_50);
        assert_eq!(BigReal::ln2(256).to_decimal_string(50), LN2_50);
    }

    #[test]
    fn arithmetic_round_trips() {
        let p = 200;
        let a = BigReal::from_ratio(22, 7, p);
        let b = BigReal::from_ratio(-5, 3, p);
        assert!(close(&(&(&a * &b) / &b), &a, 195));
        assert_eq!(&(&a + &b) - &b, a);
        let mixed = &BigReal::from_ratio(1, 3, 64) + &BigReal::from_ratio(1, 3, 128);
        assert_eq!(mixed.prec(), 128);
    }

    #[test]
    fn ln_exp_inverse() {
        let p = 256;
        for s in ["0.001", "0.5", "1", "2.75", "1234.5"] {
            let x = BigReal::parse_decimal(s, p).unwrap();
            let y = x.ln().unwrap().exp();
            let rel = (&y - &x).abs() / x.clone();
            assert!(rel < BigReal::one(p).ldexp(-240), "{s}");
        }
        assert!(BigReal::one(p).ln().unwrap().is_zero());
        assert!(BigReal::zero(p).ln().is_err());
    }

    #[test]
    fn trig_identities() {
        let p = 256;
        let pi = BigReal::pi(p);
        let (s, c) = pi.div_int(6).sin_cos();
        assert!(close(&s, &BigReal::from_ratio(1, 2, p), 250));
        assert!(close(
            &c,
            &BigReal::from_ratio(3, 4, p).sqrt().unwrap(),
            250
        ));
        let x = BigReal::from_ratio(-47, 3, p);
        let (s, c) = x.sin_cos();
        assert!(close(&(&s.square() + &c.square()), &BigReal::one(p), 250));
        assert!((s.to_f64() - (-47.0f64 / 3.0).sin()).abs() < 1e-14);
    }

    #[test]
    fn atanh_and_sqrt() {
        let p = 256;
        let x = BigReal::from_ratio(1, 3, p);
        assert!(close(&x.atanh().unwrap().ldexp(1), &BigReal::ln2(p), 250));
        let big = BigReal::from_ratio(9, 10, p);
        let expect = BigReal::from_int(19, p).ln().unwrap().ldexp(-1);
        assert!(close(&big.atanh().unwrap(), &expect, 248));
        let two = BigReal::from_int(2, p);
        let r = two.sqrt().unwrap();
        assert!(close(&r.square(), &two, 250));
    }

    #[test]
    fn f64_and_decimal_io() {
        let x = BigReal::from_f64(-0.375, 64);
        assert_eq!(x.to_decimal_string(3), "-0.375");
        assert_eq!(x.to_f64(), -0.375);
        let y = BigReal::parse_decimal("0.1", 128).unwrap();
        assert_eq!(y.to_decimal_string(30), "0.100000000000000000000000000000");
        assert_eq!(
            BigReal::parse_decimal("13/11", 64)
                .unwrap()
                .to_decimal_string(4),
            "1.1818"
        );
        assert!(BigReal::from_int(3, 64).is_integer());
        assert!(!BigReal::from_ratio(1, 2, 64).is_integer());
    }

    #[test]
    fn powers() {
        let p = 256;
        let x = BigReal::from_ratio(3, 2, p);
        assert!(close(&x.powi(5), &BigReal::from_ratio(243, 32, p), 250));
        assert!(close(&x.powi(-2), &BigReal::from_ratio(4, 9, p), 250));
    }
}
