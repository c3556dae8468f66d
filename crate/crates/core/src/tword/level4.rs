use std::fmt;
use std::ops::Mul;

use num_rational::BigRational;

use super::TWord;

/// Fourth roots of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Root4 {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Root4 {
    /// Exponent e with root = i^e.
    pub fn exponent(self) -> u32 {
        match self {
            Root4::One => 0,
            Root4::I => 1,
            Root4::MinusOne => 2,
            Root4::MinusI => 3,
        }
    }

    pub fn from_exponent(e: u64) -> Self {
        match e % 4 {
            0 => Root4::One,
            1 => Root4::I,
            2 => Root4::MinusOne,
            _ => Root4::MinusI,
        }
    }

    pub fn pow(self, n: u64) -> Self {
        Root4::from_exponent(self.exponent() as u64 * (n % 4))
    }

    pub fn inverse(self) -> Self {
        Root4::from_exponent(4 - self.exponent() as u64)
    }

    /// (re, im) as small integers.
    pub fn to_pair(self) -> (i32, i32) {
        match self {
            Root4::One => (1, 0),
            Root4::I => (0, 1),
            Root4::MinusOne => (-1, 0),
            Root4::MinusI => (0, -1),
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Root4::One | Root4::MinusOne)
    }

    /// The two square roots of ±1.
    pub fn square_roots(sign: i8) -> [Root4; 2] {
        if sign == 1 {
            [Root4::One, Root4::MinusOne]
        } else {
            [Root4::I, Root4::MinusI]
        }
    }
}

impl Mul for Root4 {
    type Output = Root4;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Root4) -> Root4 {
        Root4::from_exponent((self.exponent() + rhs.exponent()) as u64)
    }
}

impl fmt::Display for Root4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Root4::One => "1",
            Root4::I => "i",
            Root4::MinusOne => "-1",
            Root4::MinusI => "-i",
        })
    }
}

/// One term `unit · scale · ζ(η; k)` of the level-4 expansion of a t value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level4Term {
    pub unit: Root4,
    pub scale: BigRational,
    pub eta: Vec<Root4>,
    pub k: Vec<u32>,
}

/// t(ε;k) = 2^{-d} Σ_{η_i² = ε_i} η_1⋯η_d ζ(η;k), where
/// ζ(η;k) = Σ_{0<m_1<…<m_d} Π η_i^{m_i}/m_i^{k_i}.
///
/// The odd m = 2n−1 survive the symmetrisation since η·η^{2n−1} = ε^n, while
/// the even m cancel in ± pairs.
pub fn to_level4(w: &TWord) -> Vec<Level4Term> {
    let d = w.depth();
    let scale = BigRational::new(1.into(), num_bigint::BigInt::from(1) << d);
    let k: Vec<u32> = w.letters().iter().map(|l| l.k).collect();
    let mut out = Vec::with_capacity(1 << d);
    for mask in 0u32..(1 << d) {
        let eta: Vec<Root4> = w
            .letters()
            .iter()
            .enumerate()
            .map(|(i, l)| Root4::square_roots(l.sign)[((mask >> i) & 1) as usize])
            .collect();
        let unit = eta.iter().fold(Root4::One, |acc, &e| acc * e);
        out.push(Level4Term {
            unit,
            scale: scale.clone(),
            eta,
            k: k.clone(),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_one_expansions() {
        let t = to_level4(&TWord::from_signed(&[2]));
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].unit, t[0].eta[0]), (Root4::One, Root4::One));
        assert_eq!((t[1].unit, t[1].eta[0]), (Root4::MinusOne, Root4::MinusOne));
        let t = to_level4(&TWord::from_signed(&[-2]));
        assert_eq!((t[0].unit, t[0].eta[0]), (Root4::I, Root4::I));
        assert_eq!((t[1].unit, t[1].eta[0]), (Root4::MinusI, Root4::MinusI));
        assert_eq!(t[0].scale, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn unit_is_real_iff_even_number_of_bars() {
        for s in [
            &[-1, -1][..],
            &[1, -1],
            &[-1, 2, -3],
            &[2, 1, -1, -1],
            &[-1, -1, -1, -1],
        ] {
            let w = TWord::from_signed(s);
            let terms = to_level4(&w);
            assert_eq!(terms.len(), 1 << w.depth());
            for t in &terms {
                assert_eq!(t.unit.is_real(), w.barred_count().is_multiple_of(2));
                for (e, l) in t.eta.iter().zip(w.letters()) {
                    assert_eq!(
                        e.pow(2),
                        if l.sign == 1 {
                            Root4::One
                        } else {
                            Root4::MinusOne
                        }
                    );
                }
            }
        }
    }

    #[test]
    fn root_arithmetic() {
        assert_eq!(Root4::I * Root4::I, Root4::MinusOne);
        assert_eq!(Root4::I.pow(7), Root4::MinusI);
        assert_eq!(Root4::MinusI.inverse(), Root4::I);
        assert_eq!(Root4::MinusOne.pow(0), Root4::One);
    }
}
