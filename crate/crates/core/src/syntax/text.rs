//! Canonical S-expression syntax for terms and formulas.
//!
//! ```text
//! term    ::= z | (s term) | (+ term term) | (* term term) | (var x) | (num N)
//! formula ::= (eq term term) | (eq (ivar a) (ivar b)) | (lt term term) | (tru term)
//!           | (itru a term) | (prec a b) | (ack term term) | (diag term term)
//!           | (exp term term) | (subt term term) | (sent term)
//!           | (not f) | (or f f) | (and f f) | (imp f f) | (iff f f)
//!           | (ex x f) | (all x f) | (ex-i a f) | (all-i a f)
//!           | (ex-le x term f) | (all-le x term f)
//! ```
//!
//! Numerals up to [`NUMERAL_TOWER_MAX`] are printed as `s`-towers; larger ones
//! as `(num N)`. Both spellings parse to the same term.

use super::{Formula, Ident, Sort, Term};
use crate::error::{Error, Result};
use crate::sexpr::{read_one, SExp};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::fmt::Write;

/// Largest numeral printed as a literal tower of `s`.
pub const NUMERAL_TOWER_MAX: u32 = 16;

pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f);
    out
}

pub fn render_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t);
    out
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Var(x) => {
            let _ = write!(out, "(var {x})");
        }
        Term::Num(n) => match n.to_u32() {
            Some(k) if k <= NUMERAL_TOWER_MAX => {
                for _ in 0..k {
                    out.push_str("(s ");
                }
                out.push('z');
                for _ in 0..k {
                    out.push(')');
                }
            }
            _ => {
                let _ = write!(out, "(num {n})");
            }
        },
        Term::Succ(a) => {
            out.push_str("(s ");
            write_term(out, a);
            out.push(')');
        }
        Term::Add(a, b) | Term::Mul(a, b) => {
            out.push_str(if matches!(t, Term::Add(..)) { "(+ " } else { "(* " });
            write_term(out, a);
            out.push(' ');
            write_term(out, b);
            out.push(')');
        }
    }
}

fn write_formula(out: &mut String, f: &Formula) {
    use Formula::*;
    let op = |out: &mut String, head: &str, args: &[&Term]| {
        out.push('(');
        out.push_str(head);
        for a in args {
            out.push(' ');
            write_term(out, a);
        }
        out.push(')');
    };
    let conn = |out: &mut String, head: &str, args: &[&Formula]| {
        out.push('(');
        out.push_str(head);
        for a in args {
            out.push(' ');
            write_formula(out, a);
        }
        out.push(')');
    };
    match f {
        Eq(a, b) => op(out, "eq", &[a, b]),
        Lt(a, b) => op(out, "lt", &[a, b]),
        Tru(a) => op(out, "tru", &[a]),
        ITru(i, a) => op(out, &format!("itru {i}"), &[a]),
        Prec(a, b) => {
            let _ = write!(out, "(prec {a} {b})");
        }
        Ack(a, b) => op(out, "ack", &[a, b]),
        Diag(a, b) => op(out, "diag", &[a, b]),
        ExpRel(a, b) => op(out, "exp", &[a, b]),
        IdxEq(a, b) => {
            let _ = write!(out, "(eq (ivar {a}) (ivar {b}))");
        }
        SubTru(a, b) => op(out, "subt", &[a, b]),
        SentA(a) => op(out, "sent", &[a]),
        Not(a) => conn(out, "not", &[a]),
        Or(a, b) => conn(out, "or", &[a, b]),
        And(a, b) => conn(out, "and", &[a, b]),
        Imp(a, b) => conn(out, "imp", &[a, b]),
        Iff(a, b) => conn(out, "iff", &[a, b]),
        ExistsNum(x, a) => conn(out, &format!("ex {x}"), &[a]),
        ForallNum(x, a) => conn(out, &format!("all {x}"), &[a]),
        ExistsIdx(x, a) => conn(out, &format!("ex-i {x}"), &[a]),
        ForallIdx(x, a) => conn(out, &format!("all-i {x}"), &[a]),
        BoundedExists(x, t, a) | BoundedForall(x, t, a) => {
            let head = if matches!(f, BoundedExists(..)) { "ex-le" } else { "all-le" };
            let _ = write!(out, "({head} {x} ");
            write_term(out, t);
            out.push(' ');
            write_formula(out, a);
            out.push(')');
        }
    }
}

/// Parses one formula.
pub fn parse(text: &str) -> Result<Formula> {
    let e = read_one(text)?;
    parse_formula_sexp(&e, text)
}

/// Parses one term.
pub fn parse_term(text: &str) -> Result<Term> {
    let e = read_one(text)?;
    Parser { text, scope: Vec::new() }.term(&e)
}

/// Converts an already-read expression; `text` is the source it was read
/// from, used for error positions.
pub fn parse_formula_sexp(e: &SExp, text: &str) -> Result<Formula> {
    Parser { text, scope: Vec::new() }.formula(e)
}

struct Parser<'a> {
    text: &'a str,
    scope: Vec<(Ident, Sort)>,
}

enum Arg {
    Num(Term),
    Idx(Ident),
}

impl Parser<'_> {
    fn err(&self, e: &SExp, msg: impl Into<String>) -> Error {
        Error::syntax_at(self.text, e.pos(), msg)
    }

    fn sort_err(&self, e: &SExp, msg: impl Into<String>) -> Error {
        Error::sort_at(self.text, e.pos(), msg)
    }

    fn bound_sort(&self, name: &Ident) -> Option<Sort> {
        self.scope.iter().rev().find(|(n, _)| n == name).map(|(_, s)| *s)
    }

    fn ident(&self, e: &SExp) -> Result<Ident> {
        let s = e.as_atom().ok_or_else(|| self.err(e, "expected an identifier"))?;
        Ident::new(s).map_err(|_| self.err(e, format!("invalid identifier `{s}`")))
    }

    fn index_ident(&self, e: &SExp) -> Result<Ident> {
        let name = match e.head() {
            Some("ivar") => {
                let items = self.args(e, 1)?;
                self.ident(&items[0])?
            }
            _ => self.ident(e)?,
        };
        if self.bound_sort(&name) == Some(Sort::Number) {
            return Err(self.sort_err(e, format!("`{name}` is a number variable, expected an index")));
        }
        Ok(name)
    }

    /// Arguments of a list `(head a1 .. an)` with arity check.
    fn args<'e>(&self, e: &'e SExp, n: usize) -> Result<&'e [SExp]> {
        let items = e.as_list().ok_or_else(|| self.err(e, "expected a list"))?;
        let head = items.first().and_then(SExp::as_atom).unwrap_or("");
        if items.len() != n + 1 {
            return Err(self.err(e, format!("`{head}` takes {n} argument(s), found {}", items.len() - 1)));
        }
        Ok(&items[1..])
    }

    fn term(&self, e: &SExp) -> Result<Term> {
        match self.arg(e)? {
            Arg::Num(t) => Ok(t),
            Arg::Idx(a) => Err(self.sort_err(e, format!("index variable `{a}` used as a number term"))),
        }
    }

    fn arg(&self, e: &SExp) -> Result<Arg> {
        if let Some(atom) = e.as_atom() {
            return if atom == "z" {
                Ok(Arg::Num(Term::zero()))
            } else {
                Err(self.err(e, format!("unexpected atom `{atom}` in term position")))
            };
        }
        let head = e.head().ok_or_else(|| self.err(e, "expected a term"))?;
        match head {
            "s" => Ok(Arg::Num(Term::succ(self.term(&self.args(e, 1)?[0])?))),
            "+" | "*" => {
                let a = self.args(e, 2)?;
                let (l, r) = (self.term(&a[0])?, self.term(&a[1])?);
                Ok(Arg::Num(if head == "+" { Term::add(l, r) } else { Term::mul(l, r) }))
            }
            "var" => {
                let a = self.args(e, 1)?;
                let name = self.ident(&a[0])?;
                if self.bound_sort(&name) == Some(Sort::Index) {
                    return Err(self.sort_err(e, format!("`{name}` is an index variable, expected a number")));
                }
                Ok(Arg::Num(Term::Var(name)))
            }
            "ivar" => Ok(Arg::Idx(self.index_ident(e)?)),
            "num" => {
                let a = self.args(e, 1)?;
                let digits = a[0].as_atom().ok_or_else(|| self.err(&a[0], "expected a decimal numeral"))?;
                let n = (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()))
                    .then(|| digits.parse::<BigUint>().ok())
                    .flatten()
                    .ok_or_else(|| self.err(&a[0], format!("bad decimal numeral `{digits}`")))?;
                Ok(Arg::Num(Term::Num(n)))
            }
            other => Err(self.err(e, format!("unknown term constructor `{other}`"))),
        }
    }

    fn formula(&mut self, e: &SExp) -> Result<Formula> {
        let head = e.head().ok_or_else(|| self.err(e, "expected a formula"))?;
        let atom2 = |p: &Self, build: fn(Term, Term) -> Formula| -> Result<Formula> {
            let a = p.args(e, 2)?;
            Ok(build(p.term(&a[0])?, p.term(&a[1])?))
        };
        match head {
            "eq" => {
                let a = self.args(e, 2)?;
                match (self.arg(&a[0])?, self.arg(&a[1])?) {
                    (Arg::Num(l), Arg::Num(r)) => Ok(Formula::Eq(l, r)),
                    (Arg::Idx(l), Arg::Idx(r)) => Ok(Formula::IdxEq(l, r)),
                    _ => Err(self.sort_err(e, "equation between an index and a number")),
                }
            }
            "lt" => atom2(self, Formula::Lt),
            "ack" => atom2(self, Formula::Ack),
            "diag" => atom2(self, Formula::Diag),
            "exp" => atom2(self, Formula::ExpRel),
            "subt" => atom2(self, Formula::SubTru),
            "tru" => Ok(Formula::Tru(self.term(&self.args(e, 1)?[0])?)),
            "sent" => Ok(Formula::SentA(self.term(&self.args(e, 1)?[0])?)),
            "itru" => {
                let a = self.args(e, 2)?;
                Ok(Formula::ITru(self.index_ident(&a[0])?, self.term(&a[1])?))
            }
            "prec" => {
                let a = self.args(e, 2)?;
                Ok(Formula::Prec(self.index_ident(&a[0])?, self.index_ident(&a[1])?))
            }
            "not" => Ok(Formula::not(self.formula(&self.args(e, 1)?[0])?)),
            "or" | "and" | "imp" | "iff" => {
                let a = self.args(e, 2)?;
                let (l, r) = (self.formula(&a[0])?, self.formula(&a[1])?);
                Ok(match head {
                    "or" => Formula::or(l, r),
                    "and" => Formula::and(l, r),
                    "imp" => Formula::imp(l, r),
                    _ => Formula::iff(l, r),
                })
            }
            "ex" | "all" | "ex-i" | "all-i" => {
                let a = self.args(e, 2)?;
                let name = self.ident(&a[0])?;
                let sort = if head.ends_with("-i") { Sort::Index } else { Sort::Number };
                self.scope.push((name.clone(), sort));
                let body = self.formula(&a[1]);
                self.scope.pop();
                let body = body?;
                Ok(match head {
                    "ex" => Formula::exists(name, body),
                    "all" => Formula::forall(name, body),
                    "ex-i" => Formula::exists_idx(name, body),
                    _ => Formula::forall_idx(name, body),
                })
            }
            "ex-le" | "all-le" => {
                let a = self.args(e, 3)?;
                let name = self.ident(&a[0])?;
                let bound = self.term(&a[1])?;
                self.scope.push((name.clone(), Sort::Number));
                let body = self.formula(&a[2]);
                self.scope.pop();
                let body = body?;
                Ok(if head == "ex-le" {
                    Formula::exists_le(name, bound, body)
                } else {
                    Formula::forall_le(name, bound, body)
                })
            }
            other => Err(self.err(e, format!("unknown formula constructor `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse("(eq (s z) (s z))").unwrap(), Formula::eq(Term::succ(Term::zero()), Term::succ(Term::zero())));
        let a = Ident::known("a");
        assert_eq!(
            parse("(all-i a (itru a z))").unwrap(),
            Formula::forall_idx(a.clone(), Formula::ITru(a, Term::zero()))
        );
    }

    #[test]
    fn sort_violations() {
        assert!(matches!(parse("(ex x (prec x y))"), Err(Error::Sort { .. })));
        assert!(matches!(parse("(ex-i a (eq (var a) z))"), Err(Error::Sort { .. })));
        assert!(matches!(parse("(eq (ivar a) z)"), Err(Error::Sort { .. })));
        assert!(matches!(parse("(lt (s (ivar a)) z)"), Err(Error::Sort { .. })));
        // free names carry no declaration
        assert!(parse("(prec x y)").is_ok());
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&Formula::eq(Term::zero(), Term::zero())), "(eq z z)");
        let e = Formula::eq(Term::zero(), Term::zero());
        assert_eq!(render(&Formula::not(Formula::or(e.clone(), e))), "(not (or (eq z z) (eq z z)))");
        assert_eq!(render_term(&Term::num(2u32)), "(s (s z))");
        assert_eq!(render_term(&Term::num(17u32)), "(num 17)");
    }

    #[test]
    fn numeral_spellings_agree() {
        assert_eq!(parse_term("(num 3)").unwrap(), parse_term("(s (s (s z)))").unwrap());
        assert_eq!(parse_term("(s (num 3))").unwrap(), Term::num(4u32));
        assert!(parse_term("(num -1)").is_err());
        assert!(parse_term("(num x)").is_err());
    }

    #[test]
    fn index_equality_round_trips() {
        let f = parse("(ex-i a (eq (ivar a) (ivar a)))").unwrap();
        assert!(matches!(&f, Formula::ExistsIdx(_, b) if matches!(**b, Formula::IdxEq(..))));
        assert_eq!(parse(&render(&f)).unwrap(), f);
    }

    #[test]
    fn errors_carry_positions() {
        match parse("(or (eq z z)\n    (foo z))") {
            Err(Error::Syntax { line, col, msg }) => {
                assert_eq!((line, col), (2, 5));
                assert!(msg.contains("foo"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("(eq z)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("(eq z z"), Err(Error::Syntax { .. })));
    }
}
