use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{FormalWordSum, TWord};
use crate::exactnum::binomial;

/// Quasi-shuffle product of two words.
///
/// Works on the outermost letters: the largest summation index belongs to
/// `u`, to `v`, or to both (merged letter).
pub fn stuffle(u: &TWord, v: &TWord) -> FormalWordSum {
    let counts = stuffle_counts(u, v);
    let mut out = FormalWordSum::zero();
    for (w, c) in counts {
        out.add_rational(w, BigRational::from_integer(c));
    }
    out
}

fn stuffle_counts(u: &TWord, v: &TWord) -> BTreeMap<TWord, BigInt> {
    let (a, b) = (u.letters(), v.letters());
    // table[i][j] = product of a[..i] and b[..j]
    let mut table: Vec<Vec<BTreeMap<TWord, BigInt>>> =
        vec![vec![BTreeMap::new(); b.len() + 1]; a.len() + 1];
    for i in 0..=a.len() {
        for j in 0..=b.len() {
            let mut cell = BTreeMap::new();
            if i == 0 && j == 0 {
                cell.insert(TWord::empty(), BigInt::from(1));
            }
            let mut extend = |src: &BTreeMap<TWord, BigInt>, l| {
                for (w, c) in src {
                    *cell.entry(w.with(l)).or_insert_with(|| BigInt::from(0)) += c;
                }
            };
            if i > 0 {
                extend(&table[i - 1][j], a[i - 1]);
            }
            if j > 0 {
                extend(&table[i][j - 1], b[j - 1]);
            }
            if i > 0 && j > 0 {
                extend(&table[i - 1][j - 1], a[i - 1].merge(b[j - 1]));
            }
            table[i][j] = cell;
        }
    }
    std::mem::take(&mut table[a.len()][b.len()])
}

/// Number of terms (with multiplicity) in a stuffle of depths p and q:
/// Σ_j C(p,j)·C(q,j)·2^j.
pub fn delannoy(p: usize, q: usize) -> BigInt {
    (0..=p.min(q))
        .map(|j| {
            binomial(p as i64, j as i64) * binomial(q as i64, j as i64) * (BigInt::from(1) << j)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, SymbolicValue};
    use proptest::prelude::*;

    fn w(s: &[i32]) -> TWord {
        TWord::from_signed(s)
    }

    #[test]
    fn depth_one_products() {
        let s = stuffle(&w(&[3]), &w(&[5]));
        assert_eq!(s.len(), 3);
        assert_eq!(s.coeff(&w(&[3, 5])), SymbolicValue::one());
        assert_eq!(s.coeff(&w(&[5, 3])), SymbolicValue::one());
        assert_eq!(s.coeff(&w(&[8])), SymbolicValue::one());
        let s = stuffle(&w(&[-1]), &w(&[-1]));
        assert_eq!(s.coeff(&w(&[-1, -1])), SymbolicValue::from_int(2));
        assert_eq!(s.coeff(&w(&[2])), SymbolicValue::one());
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn empty_word_is_unit() {
        let u = w(&[2, -1, 3]);
        assert_eq!(stuffle(&TWord::empty(), &u), FormalWordSum::word(u.clone()));
        assert_eq!(stuffle(&u, &TWord::empty()), FormalWordSum::word(u));
    }

    fn arb_word(max_depth: usize) -> impl Strategy<Value = TWord> {
        prop::collection::vec((1u32..4, prop::bool::ANY), 0..=max_depth).prop_map(|v| {
            TWord::new(
                v.into_iter()
                    .map(|(k, b)| super::super::Letter::new(k, if b { -1 } else { 1 }))
                    .collect(),
            )
        })
    }

    fn product_with_sum(s: &FormalWordSum, v: &TWord) -> FormalWordSum {
        let mut out = FormalWordSum::zero();
        for (x, c) in s.iter() {
            out.add_scaled(&stuffle(x, v), &c.as_rational().unwrap());
        }
        out
    }

    fn sum_with_product(u: &TWord, s: &FormalWordSum) -> FormalWordSum {
        let mut out = FormalWordSum::zero();
        for (x, c) in s.iter() {
            out.add_scaled(&stuffle(u, x), &c.as_rational().unwrap());
        }
        out
    }

    proptest! {
        #[test]
        fn commutative(u in arb_word(3), v in arb_word(3)) {
            prop_assert_eq!(stuffle(&u, &v), stuffle(&v, &u));
        }

        #[test]
        fn associative(u in arb_word(3), v in arb_word(2), x in arb_word(2)) {
            let left = product_with_sum(&stuffle(&u, &v), &x);
            let right = sum_with_product(&u, &stuffle(&v, &x));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn term_count_is_delannoy(u in arb_word(4), v in arb_word(4)) {
            let total = stuffle(&u, &v).rational_total().unwrap();
            prop_assert_eq!(total, int(1) * BigRational::from_integer(delannoy(u.depth(), v.depth())));
        }

        #[test]
        fn weight_is_additive(u in arb_word(3), v in arb_word(3)) {
            for x in stuffle(&u, &v).words() {
                prop_assert_eq!(x.weight(), u.weight() + v.weight());
            }
        }
    }
}
