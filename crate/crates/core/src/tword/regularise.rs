use std::collections::HashMap;

use num_rational::BigRational;

use super::{stuffle, FormalWordSum, Letter, TWord};
use crate::exactnum::SymbolicValue;

/// Stuffle regularisation with t^{*,V}(1) = V.
///
/// Admissible words come back unchanged. Otherwise, with α trailing 1's and
/// prefix u,
///
/// t*(u,1^α) = (1/α)·[ t*(u,1^{α-1})·V − Σ c'·t*(w') ]
///
/// where the w' run over the terms of stuffle((u,1^{α-1}), (1)) other than
/// (u,1^α), which appears with multiplicity α. Each w' has fewer trailing
/// 1's, so the recursion ends. Every word in the result is admissible and the
/// coefficients are polynomials in V.
pub fn regularise(w: &TWord) -> FormalWordSum {
    let mut memo = HashMap::new();
    regularise_memo(w, &mut memo)
}

fn regularise_memo(w: &TWord, memo: &mut HashMap<TWord, FormalWordSum>) -> FormalWordSum {
    if w.is_admissible() {
        return FormalWordSum::word(w.clone());
    }
    if let Some(r) = memo.get(w) {
        return r.clone();
    }
    let alpha = w.trailing_ones();
    let shorter = w.prefix(w.depth() - 1);
    let one = TWord::new(vec![Letter::plain(1)]);
    let product = stuffle(&shorter, &one);

    let mut out = FormalWordSum::zero();
    out.add_times(&regularise_memo(&shorter, memo), &SymbolicValue::v());
    for (x, c) in product.iter() {
        if x == w {
            continue;
        }
        let c = c.as_rational().expect("stuffle coefficients are rational");
        out.add_scaled(&regularise_memo(x, memo), &-c);
    }
    let out = out.scale(&BigRational::new(1.into(), (alpha as i64).into()));
    memo.insert(w.clone(), out.clone());
    out
}
