//! Two-sorted abstract syntax for arithmetic with an unindexed truth
//! predicate and indexed truth predicates over a sort of indices.
//!
//! Terms and formulas are plain trees. Numerals are stored in collapsed form:
//! a run `S(S(...S(0)))` is always a single [`Term::Num`] node, so that
//! numerals for large Gödel codes stay small in memory. Use [`Term::succ`]
//! rather than building `Term::Succ` by hand to keep that invariant.

mod ops;
mod text;

pub use ops::{
    all_names, big_and, big_or, desugar, free_variables, is_desugared, numeral, relativize, rename_bound_index,
    require_sentence, substitute, substitute_many, unary_variable, universal_closure,
};
pub use text::{parse, parse_formula_sexp, parse_term, render, render_term, NUMERAL_TOWER_MAX};

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

const FIRST_CHARS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
const REST_CHARS: &[u8] = b"0123456789_abcdefghijklmnopqrstuvwxyz";

/// Variable name matching `[a-z][a-z0-9_]*`.
///
/// Identifiers are ordered shortlex (shorter first, then bytewise), which is
/// also the order used to hand out fresh names and to number identifiers in
/// Gödel codes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ident(String);

impl Ident {
    pub fn new(name: &str) -> Result<Self> {
        let bytes = name.as_bytes();
        let ok =
            !bytes.is_empty() && bytes[0].is_ascii_lowercase() && bytes[1..].iter().all(|b| REST_CHARS.contains(b));
        if ok {
            Ok(Ident(name.to_string()))
        } else {
            Err(Error::BadIdent(name.to_string()))
        }
    }

    /// For names known to be valid at compile time.
    pub(crate) fn known(name: &str) -> Self {
        Ident::new(name).expect("valid identifier literal")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Position of this identifier in the shortlex enumeration (`a` is 0).
    pub fn index(&self) -> BigUint {
        if let Some(i) = self.small_index() {
            return BigUint::from(i);
        }
        let bytes = self.0.as_bytes();
        let len = bytes.len();
        let mut offset = BigUint::zero();
        let mut level = BigUint::from(26u32);
        for _ in 1..len {
            offset += &level;
            level *= 37u32;
        }
        let mut rank = BigUint::from(first_rank(bytes[0]));
        for b in &bytes[1..] {
            rank = rank * 37u32 + rest_rank(*b);
        }
        offset + rank
    }

    /// [`Ident::index`] when it fits in a `u64`.
    pub fn small_index(&self) -> Option<u64> {
        let bytes = self.0.as_bytes();
        let mut offset = 0u64;
        let mut level = 26u64;
        for _ in 1..bytes.len() {
            offset = offset.checked_add(level)?;
            level = level.checked_mul(37)?;
        }
        let mut rank = first_rank(bytes[0]) as u64;
        for b in &bytes[1..] {
            rank = rank.checked_mul(37)?.checked_add(rest_rank(*b) as u64)?;
        }
        offset.checked_add(rank)
    }

    /// Inverse of [`Ident::index`].
    pub fn from_index(index: &BigUint) -> Self {
        if let Some(i) = index.to_u64() {
            return Ident::nth(i);
        }
        let mut rest = index.clone();
        let mut level = BigUint::from(26u32);
        let mut len = 1usize;
        while rest >= level {
            rest -= &level;
            level *= 37u32;
            len += 1;
        }
        let mut tail = Vec::with_capacity(len);
        for _ in 1..len {
            let digit = (&rest % 37u32).to_usize().unwrap();
            tail.push(REST_CHARS[digit]);
            rest /= 37u32;
        }
        let mut name = vec![FIRST_CHARS[rest.to_usize().unwrap()]];
        name.extend(tail.iter().rev());
        Ident(String::from_utf8(name).unwrap())
    }

    /// The `n`-th identifier in shortlex order.
    pub fn nth(n: u64) -> Self {
        let mut rest = n as u128;
        let mut level = 26u128;
        let mut len = 1usize;
        while rest >= level {
            rest -= level;
            level *= 37;
            len += 1;
        }
        let mut name = vec![0u8; len];
        for slot in name[1..].iter_mut().rev() {
            *slot = REST_CHARS[(rest % 37) as usize];
            rest /= 37;
        }
        name[0] = FIRST_CHARS[rest as usize];
        Ident(String::from_utf8(name).unwrap())
    }

    /// Least identifier not rejected by `taken`.
    pub fn fresh(taken: impl Fn(&Ident) -> bool) -> Self {
        (0u64..).map(Ident::nth).find(|id| !taken(id)).unwrap()
    }
}

fn first_rank(b: u8) -> usize {
    FIRST_CHARS.iter().position(|c| *c == b).unwrap()
}

fn rest_rank(b: u8) -> usize {
    REST_CHARS.iter().position(|c| *c == b).unwrap()
}

impl Ord for Ident {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Ident {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<&str> for Ident {
    type Error = Error;
    fn try_from(value: &str) -> Result<Self> {
        Ident::new(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Number,
    Index,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Number => "number",
            Sort::Index => "index",
        })
    }
}

/// A variable together with its sort.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: Ident,
    pub sort: Sort,
}

impl Var {
    pub fn number(name: Ident) -> Self {
        Var { name, sort: Sort::Number }
    }

    pub fn index(name: Ident) -> Self {
        Var { name, sort: Sort::Index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} `{}`", self.sort, self.name)
    }
}

/// Number-sort terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Ident),
    /// The numeral `S^n(0)`; `Num(0)` is zero.
    Num(BigUint),
    /// Successor of a non-numeral term.
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn zero() -> Self {
        Term::Num(BigUint::zero())
    }

    pub fn num(n: impl Into<BigUint>) -> Self {
        Term::Num(n.into())
    }

    pub fn var(name: Ident) -> Self {
        Term::Var(name)
    }

    /// Successor, folding into the numeral when the argument is one.
    pub fn succ(t: Term) -> Self {
        match t {
            Term::Num(n) => Term::Num(n + BigUint::one()),
            t => Term::Succ(Box::new(t)),
        }
    }

    pub fn add(a: Term, b: Term) -> Self {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Self {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Num(_) => true,
            Term::Succ(t) => t.is_closed(),
            Term::Add(a, b) | Term::Mul(a, b) => a.is_closed() && b.is_closed(),
        }
    }

    pub fn mentions(&self, name: &Ident) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::Num(_) => false,
            Term::Succ(t) => t.mentions(name),
            Term::Add(a, b) | Term::Mul(a, b) => a.mentions(name) || b.mentions(name),
        }
    }

    /// Calls `f` on each variable occurrence until it returns `false`.
    pub fn visit_vars<'a>(&'a self, f: &mut impl FnMut(&'a Ident) -> bool) -> bool {
        match self {
            Term::Var(v) => f(v),
            Term::Num(_) => true,
            Term::Succ(t) => t.visit_vars(f),
            Term::Add(a, b) | Term::Mul(a, b) => a.visit_vars(f) && b.visit_vars(f),
        }
    }

    pub fn collect_vars(&self, out: &mut std::collections::BTreeSet<Ident>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Num(_) => {}
            Term::Succ(t) => t.collect_vars(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Tree size counting each numeral as one node.
    pub fn ast_size(&self) -> u64 {
        match self {
            Term::Var(_) | Term::Num(_) => 1,
            Term::Succ(t) => t.ast_size() + 1,
            Term::Add(a, b) | Term::Mul(a, b) => a.ast_size() + b.ast_size() + 1,
        }
    }

    /// Tree size with numerals counted literally, saturating.
    pub fn node_count(&self) -> u64 {
        match self {
            Term::Var(_) => 1,
            Term::Num(n) => n.to_u64().map_or(u64::MAX, |n| n.saturating_add(1)),
            Term::Succ(t) => t.node_count().saturating_add(1),
            Term::Add(a, b) | Term::Mul(a, b) => a.node_count().saturating_add(b.node_count()).saturating_add(1),
        }
    }
}

/// Formulas of the two-sorted language.
///
/// `Not`, `Or`, `ExistsNum` and `ExistsIdx` are the primitive connectives;
/// the remaining connective nodes are sugar removed by [`desugar`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Lt(Term, Term),
    /// Unindexed truth predicate `T(t)`.
    Tru(Term),
    /// Indexed truth `T_α(t)`.
    ITru(Ident, Term),
    /// Index order `α ≺ β`.
    Prec(Ident, Ident),
    /// Ackermann membership: bit `x` of `y` is set.
    Ack(Term, Term),
    /// Diagonalization graph: `b` codes the result of substituting the
    /// numeral of `a` into the unary formula coded by `a`.
    Diag(Term, Term),
    /// Exponentiation graph `y = 2^x`.
    ExpRel(Term, Term),
    /// Equality between index variables.
    IdxEq(Ident, Ident),
    /// `T` applied to the result of substituting the numeral of `x` into the
    /// unary formula coded by `g`.
    SubTru(Term, Term),
    /// Sentence-hood guard: `t` codes a closed purely arithmetical formula.
    SentA(Term),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    ExistsNum(Ident, Box<Formula>),
    ExistsIdx(Ident, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForallNum(Ident, Box<Formula>),
    ForallIdx(Ident, Box<Formula>),
    /// `∃x ≤ t φ`; `t` is outside the scope of `x`.
    BoundedExists(Ident, Term, Box<Formula>),
    /// `∀x ≤ t φ`.
    BoundedForall(Ident, Term, Box<Formula>),
}

#[allow(clippy::should_implement_trait)]
impl Formula {
    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    pub fn lt(a: Term, b: Term) -> Self {
        Formula::Lt(a, b)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(x: Ident, f: Formula) -> Self {
        Formula::ExistsNum(x, Box::new(f))
    }

    pub fn forall(x: Ident, f: Formula) -> Self {
        Formula::ForallNum(x, Box::new(f))
    }

    pub fn exists_idx(a: Ident, f: Formula) -> Self {
        Formula::ExistsIdx(a, Box::new(f))
    }

    pub fn forall_idx(a: Ident, f: Formula) -> Self {
        Formula::ForallIdx(a, Box::new(f))
    }

    pub fn exists_le(x: Ident, bound: Term, f: Formula) -> Self {
        Formula::BoundedExists(x, bound, Box::new(f))
    }

    pub fn forall_le(x: Ident, bound: Term, f: Formula) -> Self {
        Formula::BoundedForall(x, bound, Box::new(f))
    }

    /// `0 = S0`.
    pub fn falsum() -> Self {
        Formula::Eq(Term::zero(), Term::num(1u32))
    }

    /// `¬(0 = S0)`, the canonical true sentence.
    pub fn verum() -> Self {
        Formula::not(Formula::falsum())
    }

    pub fn children(&self) -> impl Iterator<Item = &Formula> {
        use Formula::*;
        let pair: [Option<&Formula>; 2] = match self {
            Eq(..) | Lt(..) | Tru(_) | ITru(..) | Prec(..) | Ack(..) | Diag(..) | ExpRel(..) | IdxEq(..)
            | SubTru(..) | SentA(_) => [None, None],
            Not(f)
            | ExistsNum(_, f)
            | ExistsIdx(_, f)
            | ForallNum(_, f)
            | ForallIdx(_, f)
            | BoundedExists(_, _, f)
            | BoundedForall(_, _, f) => [Some(f), None],
            Or(a, b) | And(a, b) | Imp(a, b) | Iff(a, b) => [Some(a), Some(b)],
        };
        pair.into_iter().flatten()
    }

    /// Terms occurring directly in this node (not in subformulas).
    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        use Formula::*;
        let pair: [Option<&Term>; 2] = match self {
            Eq(a, b) | Lt(a, b) | Ack(a, b) | Diag(a, b) | ExpRel(a, b) | SubTru(a, b) => [Some(a), Some(b)],
            Tru(t) | ITru(_, t) | SentA(t) | BoundedExists(_, t, _) | BoundedForall(_, t, _) => [Some(t), None],
            _ => [None, None],
        };
        pair.into_iter().flatten()
    }

    fn any(&self, pred: &impl Fn(&Formula) -> bool) -> bool {
        pred(self) || self.children().any(|c| c.any(pred))
    }

    /// Contains an index variable, index quantifier, `ITru` or `Prec`.
    pub fn has_index_syntax(&self) -> bool {
        self.any(&|f| {
            matches!(
                f,
                Formula::ITru(..)
                    | Formula::Prec(..)
                    | Formula::IdxEq(..)
                    | Formula::ExistsIdx(..)
                    | Formula::ForallIdx(..)
            )
        })
    }

    /// Contains an index quantifier.
    pub fn has_index_quantifier(&self) -> bool {
        self.any(&|f| matches!(f, Formula::ExistsIdx(..) | Formula::ForallIdx(..)))
    }

    /// In the language with the unindexed truth predicate: no index syntax.
    pub fn is_lat(&self) -> bool {
        !self.has_index_syntax()
    }

    /// Purely arithmetical: no truth predicate of any kind and no index syntax.
    pub fn is_arithmetical(&self) -> bool {
        !self.has_index_syntax() && !self.any(&|f| matches!(f, Formula::Tru(_) | Formula::SubTru(..)))
    }

    /// Every quantifier is a bounded number quantifier.
    pub fn is_bounded(&self) -> bool {
        !self.any(&|f| {
            matches!(
                f,
                Formula::ExistsNum(..) | Formula::ForallNum(..) | Formula::ExistsIdx(..) | Formula::ForallIdx(..)
            )
        })
    }

    pub fn is_closed(&self) -> bool {
        ops::first_free_variable(self).is_none()
    }

    /// Tree size counting each numeral as one node.
    pub fn ast_size(&self) -> u64 {
        let own = self.terms().map(|t| t.ast_size()).sum::<u64>() + 1;
        own + self.children().map(|c| c.ast_size()).sum::<u64>()
    }

    /// Tree size, numerals counted literally (saturating).
    pub fn node_count(&self) -> u64 {
        let own = self.terms().fold(1u64, |acc, t| acc.saturating_add(t.node_count()));
        self.children().fold(own, |acc, c| acc.saturating_add(c.node_count()))
    }

    /// Checks that no variable is used at a sort different from the binder
    /// it refers to.
    pub fn check_sorts(&self) -> Result<()> {
        fn go(f: &Formula, scope: &mut Vec<(Ident, Sort)>) -> Result<()> {
            let sort_of =
                |scope: &Vec<(Ident, Sort)>, name: &Ident| scope.iter().rev().find(|(n, _)| n == name).map(|(_, s)| *s);
            let expect = |scope: &Vec<(Ident, Sort)>, name: &Ident, want: Sort| match sort_of(scope, name) {
                Some(s) if s != want => Err(Error::SortMismatch(format!(
                    "`{name}` is bound as a {s} variable but used as a {want} variable"
                ))),
                _ => Ok(()),
            };
            for t in f.terms() {
                let mut names = Default::default();
                t.collect_vars(&mut names);
                for n in &names {
                    expect(scope, n, Sort::Number)?;
                }
            }
            match f {
                Formula::ITru(a, _) => expect(scope, a, Sort::Index)?,
                Formula::Prec(a, b) | Formula::IdxEq(a, b) => {
                    expect(scope, a, Sort::Index)?;
                    expect(scope, b, Sort::Index)?;
                }
                _ => {}
            }
            let binder = match f {
                Formula::ExistsNum(x, _)
                | Formula::ForallNum(x, _)
                | Formula::BoundedExists(x, _, _)
                | Formula::BoundedForall(x, _, _) => Some((x.clone(), Sort::Number)),
                Formula::ExistsIdx(a, _) | Formula::ForallIdx(a, _) => Some((a.clone(), Sort::Index)),
                _ => None,
            };
            let pushed = binder.is_some();
            if let Some(b) = binder {
                scope.push(b);
            }
            for c in f.children() {
                go(c, scope)?;
            }
            if pushed {
                scope.pop();
            }
            Ok(())
        }
        go(self, &mut Vec::new())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ident_validation() {
        assert!(Ident::new("x").is_ok());
        assert!(Ident::new("y_1").is_ok());
        assert!(Ident::new("X").is_err());
        assert!(Ident::new("1x").is_err());
        assert!(Ident::new("").is_err());
        assert!(Ident::new("a-b").is_err());
    }

    #[test]
    fn ident_order_is_shortlex() {
        let names = ["a", "b", "z", "a0", "a_", "aa", "zz", "a00"];
        for w in names.windows(2) {
            assert!(Ident::known(w[0]) < Ident::known(w[1]), "{} < {}", w[0], w[1]);
        }
    }

    #[test]
    fn ident_index_round_trip() {
        assert_eq!(Ident::nth(0).as_str(), "a");
        assert_eq!(Ident::nth(25).as_str(), "z");
        assert_eq!(Ident::nth(26).as_str(), "a0");
        assert_eq!(Ident::nth(26 + 37).as_str(), "b0");
        let mut prev = Ident::nth(0);
        for n in 1..5000u64 {
            let id = Ident::nth(n);
            assert_eq!(id.index(), BigUint::from(n));
            assert!(prev < id);
            prev = id;
        }
    }

    #[test]
    fn succ_folds_numerals() {
        assert_eq!(Term::succ(Term::succ(Term::zero())), Term::num(2u32));
        let x = Term::var(Ident::known("x"));
        assert_eq!(Term::succ(x.clone()), Term::Succ(Box::new(x)));
    }

    #[test]
    fn language_classes() {
        let x = Ident::known("x");
        let a = Ident::known("a");
        let arith = Formula::exists(x.clone(), Formula::eq(Term::var(x.clone()), Term::zero()));
        assert!(arith.is_arithmetical() && arith.is_lat());
        let lat = Formula::Tru(Term::zero());
        assert!(!lat.is_arithmetical() && lat.is_lat());
        let itb = Formula::exists_idx(a.clone(), Formula::ITru(a, Term::zero()));
        assert!(!itb.is_lat() && itb.has_index_quantifier());
    }

    #[test]
    fn sort_check_rejects_cross_sort_use() {
        let a = Ident::known("a");
        let bad = Formula::exists(a.clone(), Formula::ITru(a.clone(), Term::zero()));
        assert!(bad.check_sorts().is_err());
        let good = Formula::exists_idx(a.clone(), Formula::ITru(a, Term::zero()));
        assert!(good.check_sorts().is_ok());
    }
}
