use std::ops::{Add, Mul, Neg, Sub};

use crate::exactnum::BigReal;
use crate::tword::Root4;

/// Complex number as a pair of fixed-point reals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub re: BigReal,
    pub im: BigReal,
}

impl Complex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        let p = re.prec().max(im.prec());
        Complex {
            re: re.with_prec(p),
            im: im.with_prec(p),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Complex {
            re: BigReal::zero(prec),
            im: BigReal::zero(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Complex {
            re: BigReal::one(prec),
            im: BigReal::zero(prec),
        }
    }

    pub fn from_real(re: BigReal) -> Self {
        let p = re.prec();
        Complex {
            re,
            im: BigReal::zero(p),
        }
    }

    pub fn from_root4(r: Root4, prec: u32) -> Self {
        let (a, b) = r.to_pair();
        Complex {
            re: BigReal::from_int(a, prec),
            im: BigReal::from_int(b, prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Complex {
            re: self.re.with_prec(prec),
            im: self.im.with_prec(prec),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> BigReal {
        &self.re.square() + &self.im.square()
    }

    /// Cheap magnitude estimate |re| + |im| as a double.
    pub fn magnitude(&self) -> f64 {
        self.re.to_f64().abs() + self.im.to_f64().abs()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(&self, s: &BigReal) -> Self {
        Complex {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    pub fn ldexp(&self, k: i64) -> Self {
        Complex {
            re: self.re.ldexp(k),
            im: self.im.ldexp(k),
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Complex {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    pub fn div_int(&self, n: i64) -> Self {
        Complex {
            re: self.re.div_int(n),
            im: self.im.div_int(n),
        }
    }

    /// Exact multiplication by a fourth root of unity.
    pub fn mul_root(&self, r: Root4) -> Self {
        match r {
            Root4::One => self.clone(),
            Root4::I => Complex {
                re: -&self.im,
                im: self.re.clone(),
            },
            Root4::MinusOne => -self,
            Root4::MinusI => Complex {
                re: self.im.clone(),
                im: -&self.re,
            },
        }
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let p = 128;
        let a = Complex::new(BigReal::from_int(3, p), BigReal::from_int(-4, p));
        assert_eq!(a.norm_sqr(), BigReal::from_int(25, p));
        let one = &a * &a.recip();
        assert!((&one.re - &BigReal::one(p)).abs() < BigReal::one(p).ldexp(-120));
        assert!(one.im.abs() < BigReal::one(p).ldexp(-120));
        assert_eq!(
            a.mul_root(Root4::I),
            Complex::new(BigReal::from_int(4, p), BigReal::from_int(3, p))
        );
        assert_eq!(&a + &a.conj(), Complex::from_real(BigReal::from_int(6, p)));
    }
}
