use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{BigReal, ConstSymbol, SymbolicValue};
use crate::error::{MtvError, Result};
use crate::special;

/// Extra bits carried by the cached constants.
const ENV_GUARD: u32 = 64;

/// Numeric values for the constant alphabet at a fixed precision.
///
/// Cached values are held with 64 guard bits, so each is within
/// `2^-(P+64)` of the true constant.
#[derive(Clone, Debug)]
pub struct EvalEnv {
    prec: u32,
    pi: BigReal,
    log2: BigReal,
    gamma: BigReal,
    zeta: BTreeMap<u32, BigReal>,
    beta: BTreeMap<u32, BigReal>,
    v: Option<BigReal>,
}

impl EvalEnv {
    /// Caches ζ(2..=max_index) and β(1..=max_index).
    pub fn new(prec: u32, max_index: u32) -> Self {
        let w = prec + ENV_GUARD;
        let zeta = (2..=max_index.max(2))
            .into_par_iter()
            .map(|n| (n, special::zeta_int(n, w).expect("n >= 2")))
            .collect();
        let beta = (1..=max_index.max(1))
            .into_par_iter()
            .map(|n| (n, special::beta_int(n, w).expect("n >= 1")))
            .collect();
        EvalEnv {
            prec,
            pi: BigReal::pi(w),
            log2: BigReal::ln2(w),
            gamma: special::euler_gamma(w),
            zeta,
            beta,
            v: None,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn working_prec(&self) -> u32 {
        self.prec + ENV_GUARD
    }

    pub fn with_v(mut self, v: BigReal) -> Self {
        self.v = Some(v.with_prec(self.working_prec()));
        self
    }

    /// Assigns V from a V-free symbolic expression such as `1/2*Log2`.
    pub fn with_v_symbolic(self, v: &SymbolicValue) -> Result<Self> {
        if v.contains_symbol(ConstSymbol::V) {
            return Err(MtvError::Domain(
                "V cannot be defined in terms of itself".into(),
            ));
        }
        let x = eval_at(v, &self, self.working_prec())?;
        Ok(self.with_v(x))
    }

    pub fn v(&self) -> Option<&BigReal> {
        self.v.as_ref()
    }

    pub fn value(&self, s: ConstSymbol) -> Result<BigReal> {
        let missing = || MtvError::MissingSymbol(s.to_string());
        match s {
            ConstSymbol::Pi => Ok(self.pi.clone()),
            ConstSymbol::Log2 => Ok(self.log2.clone()),
            ConstSymbol::EulerGamma => Ok(self.gamma.clone()),
            ConstSymbol::Zeta(n) => self.zeta.get(&n).cloned().ok_or_else(missing),
            ConstSymbol::Beta(n) => self.beta.get(&n).cloned().ok_or_else(missing),
            ConstSymbol::V => self.v.clone().ok_or_else(missing),
        }
    }

    /// ζ(n) for any cached n ≥ 2 (even indices included).
    pub fn zeta(&self, n: u32) -> Result<BigReal> {
        self.zeta
            .get(&n)
            .cloned()
            .ok_or_else(|| MtvError::MissingSymbol(format!("Zeta({n})")))
    }

    pub fn beta(&self, n: u32) -> Result<BigReal> {
        self.beta
            .get(&n)
            .cloned()
            .ok_or_else(|| MtvError::MissingSymbol(format!("Beta({n})")))
    }
}

fn eval_at(v: &SymbolicValue, env: &EvalEnv, w: u32) -> Result<BigReal> {
    let mut acc = BigReal::zero(w);
    for (m, c) in v.iter() {
        let mut t = BigReal::from_rational(c, w);
        for &s in m.symbols() {
            t = &t * &env.value(s)?;
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

/// Evaluates `v` at the environment's precision `P`.
///
/// Each monomial is formed at `P+64` bits, so for coefficients and constant
/// magnitudes below `2^48` the result is within `(#monomials)·2^-P` of the
/// exact value.
pub fn sym_eval(v: &SymbolicValue, env: &EvalEnv) -> Result<BigReal> {
    Ok(eval_at(v, env, env.working_prec())?.with_prec(env.prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn eval_examples() {
        let env = EvalEnv::new(256, 6);
        let pi2_8 = SymbolicValue::pi_pow(2).scale(&rat(1, 8));
        assert!(sym_eval(&pi2_8, &env)
            .unwrap()
            .to_string()
            .starts_with("1.2337005501"));
        let x = &SymbolicValue::beta(2).unwrap().scale(&rat(1, 2))
            - &(&SymbolicValue::pi_pow(1) * &SymbolicValue::log2()).scale(&rat(1, 8));
        assert!(sym_eval(&x, &env)
            .unwrap()
            .to_string()
            .starts_with("0.1857845"));
        assert!(sym_eval(&SymbolicValue::zero(), &env).unwrap().is_zero());
    }

    #[test]
    fn missing_symbols() {
        let env = EvalEnv::new(128, 4);
        assert_eq!(
            sym_eval(&SymbolicValue::v(), &env),
            Err(MtvError::MissingSymbol("V".into()))
        );
        assert!(sym_eval(&SymbolicValue::symbol(ConstSymbol::Zeta(7)), &env).is_err());
        let env = env
            .with_v_symbolic(&SymbolicValue::log2().scale(&rat(13, 11)))
            .unwrap();
        let v = sym_eval(&SymbolicValue::v(), &env).unwrap();
        assert!((v.to_f64() - 13.0 / 11.0 * std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn eval_is_multiplicative() {
        let env = EvalEnv::new(256, 8).with_v(BigReal::from_ratio(3, 7, 256));
        let a = SymbolicValue::parse("2/3*Pi*V - Zeta(3) + 5*Log2").unwrap();
        let b = SymbolicValue::parse("Beta(2) - 1/7*V^2").unwrap();
        let lhs = sym_eval(&(&a * &b), &env).unwrap();
        let rhs = &sym_eval(&a, &env).unwrap() * &sym_eval(&b, &env).unwrap();
        assert!((&lhs - &rhs).abs() <= BigReal::one(256).ldexp(-248));
    }
}
