//! Standard-model evaluation and the check suites built on it.

mod checks;
mod corpus;
mod eval;
mod report;

pub use checks::{
    check_cc, check_claim_star, check_dc, check_dtb_finite, check_piecewise, check_triangle, dtb_shadow, Piecewise,
};
pub use corpus::{load_corpus, padded, parse_corpus, seed_corpus, SEED_CORPUS_ENV, SEED_CORPUS_TEXT};
pub use eval::{eval_delta0, eval_formula, eval_sentence, eval_with_usage};
pub use report::{CheckReport, Instance};

use crate::syntax::Ident;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Kleene truth values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriBool {
    True,
    False,
    Unknown,
}

impl TriBool {
    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> TriBool {
        match self {
            TriBool::True => TriBool::False,
            TriBool::False => TriBool::True,
            TriBool::Unknown => TriBool::Unknown,
        }
    }

    pub fn or(self, other: TriBool) -> TriBool {
        match (self, other) {
            (TriBool::True, _) | (_, TriBool::True) => TriBool::True,
            (TriBool::False, TriBool::False) => TriBool::False,
            _ => TriBool::Unknown,
        }
    }

    pub fn and(self, other: TriBool) -> TriBool {
        self.not().or(other.not()).not()
    }

    pub fn implies(self, other: TriBool) -> TriBool {
        self.not().or(other)
    }

    pub fn iff(self, other: TriBool) -> TriBool {
        self.implies(other).and(other.implies(self))
    }

    pub fn is_decided(self) -> bool {
        self != TriBool::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TriBool::True => "true",
            TriBool::False => "false",
            TriBool::Unknown => "unknown",
        }
    }

    pub fn from_name(s: &str) -> Option<TriBool> {
        Some(match s {
            "true" => TriBool::True,
            "false" => TriBool::False,
            "unknown" => TriBool::Unknown,
            _ => return None,
        })
    }
}

impl From<bool> for TriBool {
    fn from(b: bool) -> Self {
        if b {
            TriBool::True
        } else {
            TriBool::False
        }
    }
}

impl fmt::Display for TriBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Values of number variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Env(BTreeMap<Ident, BigUint>);

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn bind(&mut self, x: Ident, v: impl Into<BigUint>) {
        self.0.insert(x, v.into());
    }

    /// Builder form of [`Env::bind`]; panics on an invalid name.
    pub fn with(mut self, x: &str, v: impl Into<BigUint>) -> Self {
        self.bind(Ident::new(x).expect("valid identifier"), v);
        self
    }

    pub fn get(&self, x: &Ident) -> Option<&BigUint> {
        self.0.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ident, &BigUint)> {
        self.0.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::TriBool::{self, *};

    #[test]
    fn kleene_tables() {
        let all = [True, False, Unknown];
        for a in all {
            for b in all {
                let or = a.or(b);
                let expect = if a == True || b == True {
                    True
                } else if a == False && b == False {
                    False
                } else {
                    Unknown
                };
                assert_eq!(or, expect);
                assert_eq!(a.and(b), a.not().or(b.not()).not());
            }
        }
        assert_eq!(True.iff(True), True);
        assert_eq!(False.iff(True), False);
        assert_eq!(Unknown.iff(Unknown), Unknown);
        assert_eq!(TriBool::from(true), True);
    }
}
