//! Truncated nested sums Σ_{0<n_1<…<n_d≤M} Π b_i^{n_i}/(2n_i − 1)^{k_i}.

use crate::error::{MtvError, Result};
use crate::exactnum::{binomial, BigReal, GUARD};

use super::Acceleration;

#[derive(Clone, Debug)]
pub struct DirectResult {
    pub value: BigReal,
    pub error: f64,
    pub terms: u64,
}

/// Partial sums S_j(n) = Σ_{m≤n} b_j^m/(2m−1)^{k_j} · S_{j−1}(m−1), S_0 ≡ 1,
/// all levels advanced together. Returns the trailing `keep` values of S_d at
/// n = checkpoint and at n = m.
fn partial_sums(
    bases: &[BigReal],
    k: &[u32],
    m: u64,
    checkpoint: u64,
    keep: usize,
    w: u32,
) -> (Vec<BigReal>, Vec<BigReal>, BigReal) {
    let d = k.len();
    let mut acc: Vec<BigReal> = vec![BigReal::zero(w); d + 1];
    acc[0] = BigReal::one(w);
    let bases: Vec<BigReal> = bases.iter().map(|b| b.with_prec(w)).collect();
    let unit: Vec<bool> = bases.iter().map(|b| b.abs() == BigReal::one(w)).collect();
    let mut pw: Vec<BigReal> = vec![BigReal::one(w); d];
    let kmax = *k.iter().max().unwrap_or(&1) as usize;
    let mut early = Vec::with_capacity(keep);
    let mut late = Vec::with_capacity(keep);
    let mut inv_pows = vec![BigReal::zero(w); kmax + 1];
    for n in 1..=m {
        let odd = 2 * n as i64 - 1;
        inv_pows[1] = BigReal::one(w).div_int(odd);
        for e in 2..=kmax {
            inv_pows[e] = inv_pows[e - 1].div_int(odd);
        }
        for j in (1..=d).rev() {
            pw[j - 1] = if unit[j - 1] {
                if bases[j - 1].is_negative() {
                    -&pw[j - 1]
                } else {
                    pw[j - 1].clone()
                }
            } else {
                &pw[j - 1] * &bases[j - 1]
            };
            let t = &(&pw[j - 1] * &inv_pows[k[j - 1] as usize]) * &acc[j - 1];
            acc[j] = &acc[j] + &t;
        }
        if n + keep as u64 > checkpoint && n <= checkpoint {
            early.push(acc[d].clone());
        }
        if n + keep as u64 > m {
            late.push(acc[d].clone());
        }
    }
    let inner = acc[d - 1].clone();
    (early, late, inner)
}

/// L-fold pairwise averaging of the last L+1 partial sums.
fn iterated_mean(sums: &[BigReal], depth: usize) -> BigReal {
    let l = depth.min(sums.len() - 1);
    let tail = &sums[sums.len() - 1 - l..];
    let w = tail[0].prec();
    let mut acc = BigReal::zero(w);
    for (j, s) in tail.iter().enumerate() {
        acc = &acc + &s.mul_int(binomial(l as i64, j as i64));
    }
    acc.ldexp(-(l as i64))
}

pub fn nested_sum(
    bases: &[BigReal],
    k: &[u32],
    m: u64,
    accel: Acceleration,
    tol: f64,
    prec: u32,
) -> Result<DirectResult> {
    let d = k.len();
    if d == 0 {
        return Ok(DirectResult {
            value: BigReal::one(prec),
            error: 0.0,
            terms: 0,
        });
    }
    if (m as usize) < d {
        return Err(MtvError::Domain(format!("truncation {m} below depth {d}")));
    }
    let w = prec + GUARD;
    let outer = &bases[d - 1];
    let alternating = *outer == -BigReal::one(outer.prec());
    let avg_depth = ((1.0 / tol).log2().ceil() as usize).clamp(1, (m as usize / 4).max(1));
    let keep = if alternating && accel == Acceleration::IteratedMean {
        avg_depth + 2
    } else {
        2
    };
    let half = (m / 2).max(d as u64);
    let (early, late, inner) = partial_sums(bases, k, m, half, keep, w);
    let kd = k[d - 1] as i32;
    let inner_mag = inner.to_f64().abs().max(1e-300);
    let (value, error) = if alternating && accel == Acceleration::IteratedMean {
        let r_m = iterated_mean(&late, avg_depth);
        let r_half = iterated_mean(&early, avg_depth);
        let r_less = iterated_mean(&late, avg_depth - 1);
        let err = 2.0 * (&r_m - &r_half).to_f64().abs() + (&r_m - &r_less).to_f64().abs();
        (r_m, err)
    } else {
        let last = late.last().expect("at least one partial sum").clone();
        let b = outer.to_f64().abs();
        let mf = m as f64;
        let err = if b < 1.0 {
            inner_mag * b.powf(mf + 1.0) / ((1.0 - b) * (2.0 * mf + 1.0).powi(kd))
        } else if alternating {
            2.0 * inner_mag / (2.0 * mf + 1.0).powi(kd)
        } else if kd >= 2 {
            2.0 * inner_mag / (2.0 * (kd as f64 - 1.0) * (2.0 * mf - 1.0).powi(kd - 1))
        } else {
            return Err(MtvError::Domain("outermost sum diverges".into()));
        };
        (last, err)
    };
    let error = error + m as f64 * d as f64 * 2f64.powi(-(w as i32 - 4));
    Ok(DirectResult {
        value: value.with_prec(prec),
        error,
        terms: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leibniz_with_averaging() {
        // Σ (-1)^n/(2n-1) = -π/4
        let p = 128;
        let r = nested_sum(
            &[BigReal::from_int(-1, p)],
            &[1],
            2000,
            Acceleration::IteratedMean,
            1e-30,
            p,
        )
        .unwrap();
        let expect = -BigReal::pi(p).ldexp(-2);
        assert!((&r.value - &expect).to_f64().abs() < 1e-30);
        assert!(r.error < 1e-28);
    }

    #[test]
    fn plain_truncation_reports_tail() {
        // Σ 1/(2n-1)^2 = π²/8; tail ~ 1/(4M)
        let p = 128;
        let r = nested_sum(&[BigReal::one(p)], &[2], 1000, Acceleration::None, 1e-20, p).unwrap();
        let expect = BigReal::pi(p).square().ldexp(-3);
        let actual_err = (&r.value - &expect).to_f64().abs();
        assert!(actual_err <= r.error, "{actual_err} > {}", r.error);
        assert!(r.error < 1e-3);
    }

    #[test]
    fn doubling_m_never_increases_tail_bound() {
        let p = 96;
        let b = [BigReal::one(p), BigReal::one(p)];
        let mut last = f64::INFINITY;
        for m in [100u64, 200, 400, 800] {
            let r = nested_sum(&b, &[1, 2], m, Acceleration::None, 1e-20, p).unwrap();
            assert!(r.error <= last);
            last = r.error;
        }
    }
}
