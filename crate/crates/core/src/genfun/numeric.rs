use crate::error::{MtvError, Result};
use crate::exactnum::{BigReal, GUARD};
use crate::hyp::li_derivative;
use crate::oracle::{g_num, SumPlan};
use crate::special::{a_num, c_num, digamma, euler_gamma};

/// cos(πt/4) + sin(πt/4).
fn trig(t: &BigReal, w: u32) -> BigReal {
    let (s, c) = (&BigReal::pi(w) * t).ldexp(-2).sin_cos();
    &s + &c
}

fn q(n: i64, d: i64, w: u32) -> BigReal {
    BigReal::from_ratio(n, d, w)
}

/// F(x,y) = F^{V=0}(x,y) assembled from digamma values and three instances of
/// Li's derivative formula:
/// ¼P(x)·{−4γ − 6 log 2 − ψ(¼+x/4) − 2ψ(¾−x/4) − ψ(5/4+x/4)
///        + D(¼+y/4, ¼+x/4) + (x−y−4)/(2(x−3))·D(−¼−y/4, ¾−x/4)
///        + (x+y−2)/(2(x−3))·D(¼+y/4, ¾−x/4)}.
pub fn assemble_f_asder(x: &BigReal, y: &BigReal, prec: u32) -> Result<BigReal> {
    let w = prec + GUARD;
    let (x, y) = (x.with_prec(w), y.with_prec(w));
    let x4 = x.ldexp(-2);
    let y4 = y.ldexp(-2);
    let three = BigReal::from_int(3, w);
    if x == three {
        return Err(MtvError::Pole("assembly needs x != 3".into()));
    }
    let psi = |t: BigReal| digamma(&t, w);
    let mut s = &(-&euler_gamma(w).mul_int(4)) - &BigReal::ln2(w).mul_int(6);
    s = &s - &psi(&q(1, 4, w) + &x4)?;
    s = &s - &psi(&q(3, 4, w) - &x4)?.ldexp(1);
    s = &s - &psi(&q(5, 4, w) + &x4)?;
    let d1 = li_derivative(&(&q(1, 4, w) + &y4), &(&q(1, 4, w) + &x4), w)?;
    let d2 = li_derivative(&(&q(-1, 4, w) - &y4), &(&q(3, 4, w) - &x4), w)?;
    let d3 = li_derivative(&(&q(1, 4, w) + &y4), &(&q(3, 4, w) - &x4), w)?;
    let den = (&x - &three).ldexp(1);
    let k2 = (&(&x - &y) - &BigReal::from_int(4, w)).try_div(&den)?;
    let k3 = (&(&x + &y) - &BigReal::from_int(2, w)).try_div(&den)?;
    s = &(&(&s + &d1) + &(&k2 * &d2)) + &(&k3 * &d3);
    Ok((&trig(&x, w) * &s).ldexp(-2).with_prec(prec))
}

/// F^V(x,y) from the A/C closed form, with V numeric.
pub fn closed_form_f_num(x: &BigReal, y: &BigReal, v: &BigReal, prec: u32) -> Result<BigReal> {
    let w = prec + GUARD;
    let (x, y, v) = (x.with_prec(w), y.with_prec(w), v.with_prec(w));
    let (sum, diff) = (&x + &y, &x - &y);
    let ln2 = BigReal::ln2(w);
    let a = |t: &BigReal, k: i64| a_num(&t.ldexp(-k), w);
    let first = &(&(&(&a(&diff, 2)? - &a(&sum, 2)?) + &a(&sum, 1)?.ldexp(1)) - &ln2) + &v.ldexp(1);
    let second = &(&(&a(&diff, 2)? - &a(&diff, 3)?) - &c_num(&sum.ldexp(-1), w)?.ldexp(1)) + &ln2;
    let f = &(&trig(&x, w) * &first) + &(&trig(&y, w) * &second);
    Ok(f.ldexp(-1).with_prec(prec))
}

/// Extrapolated lim_{z→1⁻} G(x,y;z) − √z·atanh(√z)·P(x).
#[derive(Clone, Debug)]
pub struct FLimit {
    pub value: BigReal,
    /// Difference between fits on two consecutive windows of j.
    pub spread: f64,
}

/// Fits E(z) = F + (1−z)(α log(1−z) + β) through z = 1 − 2^{−j} for three
/// consecutive j, twice (starting at `j0` and `j0 + 1`).
pub fn f_limit_from_g(x: &BigReal, y: &BigReal, j0: u32, prec: u32) -> Result<FLimit> {
    let w = prec + GUARD;
    let (x, y) = (x.with_prec(w), y.with_prec(w));
    let plan = SumPlan {
        tolerance: 2f64.powi(-(prec as i32)),
        truncation: u64::MAX,
        ..SumPlan::default()
    };
    let px = trig(&x, w);
    let mut pts = Vec::new();
    for j in j0..j0 + 4 {
        let d = BigReal::one(w).ldexp(-(j as i64));
        let z = &BigReal::one(w) - &d;
        let g = g_num(&x, &y, &z, &plan, w)?.value;
        let sz = z.sqrt()?;
        let e = &g - &(&(&sz * &sz.atanh()?) * &px);
        pts.push((d.clone(), &d * &d.ln()?, e));
    }
    let fit = |p: &[(BigReal, BigReal, BigReal)]| -> Result<BigReal> {
        // rows (1, d·log d, d) · (F, α, β) = e
        let m: Vec<[BigReal; 4]> = p
            .iter()
            .map(|(d, dl, e)| [BigReal::one(w), dl.clone(), d.clone(), e.clone()])
            .collect();
        let det3 = |c: [usize; 3]| {
            let g = |r: usize, k: usize| &m[r][c[k]];
            &(&(g(0, 0) * &(&(g(1, 1) * g(2, 2)) - &(g(1, 2) * g(2, 1))))
                - &(g(0, 1) * &(&(g(1, 0) * g(2, 2)) - &(g(1, 2) * g(2, 0)))))
                + &(g(0, 2) * &(&(g(1, 0) * g(2, 1)) - &(g(1, 1) * g(2, 0))))
        };
        det3([3, 1, 2]).try_div(&det3([0, 1, 2]))
    };
    let f1 = fit(&pts[0..3])?;
    let f2 = fit(&pts[1..4])?;
    Ok(FLimit {
        spread: (&f1 - &f2).to_f64().abs(),
        value: f2.with_prec(prec),
    })
}
