//! Exact and high-precision evaluation of alternating multiple t values.

pub mod error;
pub mod exactnum;
pub mod genfun;
pub mod hyp;
pub mod oracle;
pub mod singular;
pub mod special;
pub mod tword;

pub use error::{MtvError, Result};
pub use exactnum::{BigReal, ConstSymbol, EvalEnv, Rational, SymbolicValue};
pub use tword::{FormalWordSum, TWord};
