use crate::error::{Error, Result};
use crate::sexpr::read_all;
use crate::syntax::{parse_formula_sexp, require_sentence, Formula};
use std::path::Path;

/// Overrides the seed corpus location.
pub const SEED_CORPUS_ENV: &str = "CTW_SEED_CORPUS";

/// The built-in corpus: sixteen closed bounded sentences, alternating true
/// and false.
pub const SEED_CORPUS_TEXT: &str = include_str!("../../data/seed_corpus.sexpr");

/// Parses a corpus file: closed formulas, one S-expression each.
pub fn parse_corpus(text: &str) -> Result<Vec<Formula>> {
    read_all(text)?
        .iter()
        .map(|e| {
            let f = parse_formula_sexp(e, text)?;
            require_sentence(&f)?;
            Ok(f)
        })
        .collect()
}

pub fn load_corpus(path: &Path) -> Result<Vec<Formula>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read corpus {}: {e}", path.display())))?;
    parse_corpus(&text)
}

/// The seed corpus, read from `CTW_SEED_CORPUS` when set.
pub fn seed_corpus() -> Result<Vec<Formula>> {
    match std::env::var_os(SEED_CORPUS_ENV) {
        Some(p) => load_corpus(Path::new(&p)),
        None => parse_corpus(SEED_CORPUS_TEXT),
    }
}

/// The first `u` sentences of `corpus`, followed by `0 = S0` when `u`
/// exceeds its length.
pub fn padded(corpus: &[Formula], u: usize) -> Vec<Formula> {
    let mut out: Vec<Formula> = corpus.iter().take(u).cloned().collect();
    out.resize(u, Formula::falsum());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::eval_delta0;
    use crate::semantics::Env;

    #[test]
    fn builtin_corpus_alternates() {
        let c = parse_corpus(SEED_CORPUS_TEXT).unwrap();
        assert_eq!(c.len(), 16);
        for (i, f) in c.iter().enumerate() {
            assert!(f.is_bounded() && f.is_arithmetical(), "{f}");
            assert_eq!(eval_delta0(f, &Env::new()).unwrap(), i % 2 == 0, "{f}");
        }
    }

    #[test]
    fn padding() {
        let c = parse_corpus(SEED_CORPUS_TEXT).unwrap();
        let p = padded(&c, 18);
        assert_eq!(&p[..16], &c[..]);
        assert_eq!(p[16], Formula::falsum());
        assert_eq!(padded(&c, 2), c[..2]);
    }
}
