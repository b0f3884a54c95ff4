//! Textual artifacts: S-expression containers and TPTP problem files.

mod fof;
mod sexp;
mod tptp;

pub use fof::{
    audit_guards, parse_fof, Connective, FofAnnotated, FofFile, FofFormula, FofTerm, GuardAudit, Quantifier,
};
pub use sexp::SExpr;
pub use tptp::{to_tptp, to_tptp_with, NumeralStyle, ProblemFile, TptpOptions, TOWER_LIMIT};
