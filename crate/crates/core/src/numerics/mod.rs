//! Branch-controlled elementary functions, log-space arithmetic, the
//! dilogarithm, finite differences and limit extrapolation.

mod branch;
mod derivative;
mod dilog;
pub(crate) mod fixed;
mod extrapolate;
mod logcomplex;

pub use branch::{arg_neg, log_branch_neg, log_principal, normalize_phase};
pub use derivative::{central_derivative, derivative, richardson_derivative, DEFAULT_STEP};
pub use dilog::{dilog, dilog_side, CutSide};
pub use extrapolate::{extrapolate, LimitEstimate};
pub use logcomplex::{log_sum_exp, LogComplex};
