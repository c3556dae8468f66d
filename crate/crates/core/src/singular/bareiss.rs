//! Fraction-free elimination over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{MtvError, Result};
use crate::exactnum::Rational;

/// Row-echelon form computed by Bareiss elimination. Rows are first scaled
/// to integers; every division in the elimination is exact.
struct Echelon {
    m: Vec<Vec<BigInt>>,
    /// Column of the pivot in each of the first `pivots.len()` rows.
    pivots: Vec<usize>,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

fn echelon(rows: &[Vec<Rational>]) -> Echelon {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let piv = &top[r];
        for row in rest.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..ncols {
                let num = &piv[col] * &row[j] - &f * &piv[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss step");
                row[j] = q;
            }
            row[col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    Echelon { m, pivots }
}

/// Rank of a rational matrix given as rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    echelon(rows).pivots.len()
}

/// The unique solution of `A x = b`, with `A` given as rows of equations.
///
/// Fails with `NoSolution` when rank [A|b] > rank A and with `NotUnique`
/// when rank A is less than the number of unknowns.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    if a.len() != b.len() {
        return Err(MtvError::Domain(format!(
            "{} equations but {} right-hand sides",
            a.len(),
            b.len()
        )));
    }
    let n = a.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != n) {
        return Err(MtvError::Domain("ragged coefficient matrix".into()));
    }
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let e = echelon(&aug);
    let rank_a = e.pivots.iter().filter(|&&c| c < n).count();
    if rank_a < e.pivots.len() {
        return Err(MtvError::NoSolution(format!(
            "rank A = {rank_a}, rank [A|b] = {}",
            e.pivots.len()
        )));
    }
    if rank_a < n {
        return Err(MtvError::NotUnique(format!(
            "rank {rank_a} for {n} unknowns"
        )));
    }
    // full column rank: pivot k sits in column k
    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let row = &e.m[k];
        let mut s = Rational::from_integer(row[n].clone());
        for j in k + 1..n {
            s -= &x[j] * Rational::from_integer(row[j].clone());
        }
        x[k] = s / Rational::from_integer(row[k].clone());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn small_systems() {
        let a = vec![
            vec![int(2), int(1)],
            vec![int(1), int(3)],
            vec![int(3), int(4)],
        ];
        let x = solve(&a, &[int(5), int(10), int(15)]).unwrap();
        assert_eq!(x, vec![int(1), int(3)]);
        assert!(matches!(
            solve(&a, &[int(5), int(10), int(16)]),
            Err(MtvError::NoSolution(_))
        ));
        let s = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(matches!(
            solve(&s, &[int(1), int(2)]),
            Err(MtvError::NotUnique(_))
        ));
        assert_eq!(rank(&s), 1);
        // no unknowns: consistent only for a zero right-hand side
        assert!(solve(&[vec![]], &[int(0)]).unwrap().is_empty());
        assert!(solve(&[vec![]], &[rat(1, 3)]).is_err());
    }

    #[test]
    fn zero_leading_column_and_fractions() {
        let a = vec![
            vec![int(0), rat(1, 2), int(1)],
            vec![rat(1, 3), int(0), int(1)],
            vec![int(1), int(1), int(0)],
        ];
        let x = vec![rat(-2, 7), rat(5, 3), int(4)];
        let b: Vec<Rational> = a
            .iter()
            .map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum())
            .collect();
        assert_eq!(solve(&a, &b).unwrap(), x);
    }

    proptest! {
        #[test]
        fn recovers_planted_solutions(
            entries in proptest::collection::vec((-20i64..20, 1i64..6), 20),
            sol in proptest::collection::vec((-30i64..30, 1i64..9), 4),
        ) {
            let a: Vec<Vec<Rational>> = entries.chunks(4).map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect()).collect();
            let x: Vec<Rational> = sol.iter().map(|&(p, q)| rat(p, q)).collect();
            let b: Vec<Rational> = a.iter().map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum()).collect();
            match solve(&a, &b) {
                Ok(y) => prop_assert_eq!(y, x),
                Err(MtvError::NotUnique(_)) => prop_assert!(rank(&a) < 4),
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
