//! Signed index words naming alternating multiple t values, their stuffle
//! algebra and stuffle regularisation.
//!
//! A word `(k_1^{ε_1}, …, k_d^{ε_d})` stands for
//! `Σ_{0<n_1<…<n_d} Π ε_i^{n_i} / (2n_i − 1)^{k_i}`; entries are stored inner
//! to outer, so the last entry carries the largest summation index.

mod level4;
mod regularise;
mod stuffle;
mod sum;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{MtvError, Result};

pub use level4::{to_level4, Level4Term, Root4};
pub use regularise::regularise;
pub use stuffle::{delannoy, stuffle};
pub use sum::FormalWordSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub k: u32,
    /// +1 or -1; -1 is written as a bar.
    pub sign: i8,
}

impl Letter {
    pub fn new(k: u32, sign: i8) -> Self {
        assert!(k >= 1, "exponent must be positive");
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        Letter { k, sign }
    }

    pub fn plain(k: u32) -> Self {
        Letter::new(k, 1)
    }

    pub fn barred(k: u32) -> Self {
        Letter::new(k, -1)
    }

    pub fn is_one(self) -> bool {
        self.k == 1 && self.sign == 1
    }

    /// Stuffle merge: exponents add, signs multiply.
    pub fn merge(self, other: Letter) -> Letter {
        Letter::new(self.k + other.k, self.sign * other.sign)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TWord(Vec<Letter>);

impl TWord {
    pub fn empty() -> Self {
        TWord(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        TWord(letters)
    }

    /// From signed integers: `-k` is a barred `k`.
    pub fn from_signed(entries: &[i32]) -> Self {
        TWord(
            entries
                .iter()
                .map(|&e| {
                    assert!(e != 0, "zero entry");
                    Letter::new(e.unsigned_abs(), if e < 0 { -1 } else { 1 })
                })
                .collect(),
        )
    }

    /// `({1̄}^a, 1, {1̄}^b)`.
    pub fn family(a: usize, b: usize) -> Self {
        let mut v = vec![Letter::barred(1); a];
        v.push(Letter::plain(1));
        v.extend(std::iter::repeat_n(Letter::barred(1), b));
        TWord(v)
    }

    /// `{1̄}^m`.
    pub fn bars(m: usize) -> Self {
        TWord(vec![Letter::barred(1); m])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|l| l.k).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Convergent iff the outermost entry is not an unbarred 1.
    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|l| !l.is_one())
    }

    pub fn barred_count(&self) -> usize {
        self.0.iter().filter(|l| l.sign == -1).count()
    }

    pub fn trailing_ones(&self) -> usize {
        self.0.iter().rev().take_while(|l| l.is_one()).count()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn with(&self, l: Letter) -> TWord {
        let mut v = self.0.clone();
        v.push(l);
        TWord(v)
    }

    pub fn prefix(&self, len: usize) -> TWord {
        TWord(self.0[..len].to_vec())
    }

    /// If the word is `({1̄}^a, 1, {1̄}^b)`, returns `(a, b)`.
    pub fn family_shape(&self) -> Option<(usize, usize)> {
        let pos = self.0.iter().position(|l| l.is_one())?;
        let rest_ok = self
            .0
            .iter()
            .enumerate()
            .all(|(i, l)| i == pos || (l.k == 1 && l.sign == -1));
        rest_ok.then(|| (pos, self.0.len() - pos - 1))
    }

    /// Ensures the word converges.
    pub fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(MtvError::Inadmissible(self.to_string()))
        }
    }

    /// Human-readable form with combining overlines, e.g. `t(1̄,1̄,1)`.
    pub fn pretty(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                if l.sign == -1 {
                    bar(&l.k.to_string())
                } else {
                    l.k.to_string()
                }
            })
            .collect();
        format!("t({})", parts.join(","))
    }

    pub fn latex(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                if l.sign == -1 {
                    format!("\\overline{{{}}}", l.k)
                } else {
                    l.k.to_string()
                }
            })
            .collect();
        format!("t({})", parts.join(","))
    }
}

fn bar(s: &str) -> String {
    s.chars().flat_map(|c| [c, '\u{0305}']).collect()
}

impl fmt::Display for TWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| (l.k as i64 * l.sign as i64).to_string())
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for TWord {
    type Err = MtvError;

    /// `"-1,-1,1"` is t(1̄,1̄,1); the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(TWord::empty());
        }
        let mut v = Vec::new();
        for part in s.split(',') {
            let n: i64 = part
                .trim()
                .parse()
                .map_err(|_| MtvError::Parse(format!("bad word entry {part:?} in {s:?}")))?;
            if n == 0 || n.unsigned_abs() > u32::MAX as u64 {
                return Err(MtvError::Parse(format!(
                    "word entries must be nonzero integers: {s:?}"
                )));
            }
            v.push(Letter::new(
                n.unsigned_abs() as u32,
                if n < 0 { -1 } else { 1 },
            ));
        }
        Ok(TWord(v))
    }
}

impl Serialize for TWord {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TWord {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w: TWord = "-1,-1,1".parse().unwrap();
        assert_eq!(w, TWord::family(2, 0));
        assert_eq!(w.to_string(), "-1,-1,1");
        assert_eq!(w.pretty(), "t(1\u{0305},1\u{0305},1)");
        assert_eq!(w.weight(), 3);
        assert_eq!(w.barred_count(), 2);
        assert!("".parse::<TWord>().unwrap().is_empty());
        assert!("1,0".parse::<TWord>().is_err());
        assert!("a".parse::<TWord>().is_err());
    }

    #[test]
    fn admissibility() {
        assert!(!TWord::from_signed(&[1]).is_admissible());
        assert!(TWord::from_signed(&[-1]).is_admissible());
        assert!(TWord::from_signed(&[1, 2]).is_admissible());
        assert!(!TWord::from_signed(&[2, 1, 1]).is_admissible());
        assert_eq!(TWord::from_signed(&[2, 1, 1]).trailing_ones(), 2);
        assert!(TWord::empty().is_admissible());
        for a in 0..4 {
            for b in 1..4 {
                assert!(TWord::family(a, b).is_admissible());
            }
        }
    }

    #[test]
    fn family_shapes() {
        assert_eq!(TWord::family(2, 3).family_shape(), Some((2, 3)));
        assert_eq!(TWord::from_signed(&[-1, 2]).family_shape(), None);
        assert_eq!(TWord::from_signed(&[1, 1]).family_shape(), None);
        assert_eq!(TWord::bars(3).family_shape(), None);
    }
}
