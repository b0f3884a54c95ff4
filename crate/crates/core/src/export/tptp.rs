//! TPTP first-order form for axiom bundles.
//!
//! The two sorts are collapsed into one universe with unary guards `num` and
//! `idx`; every quantifier carries the guard of its variable's sort.

use crate::axioms::{AxiomBundle, Role};
use crate::error::{Error, Result};
use crate::syntax::{all_names, substitute_many, Formula, Ident, Term};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::fmt::Write;

/// Largest numeral written as a tower of `s`.
pub const TOWER_LIMIT: u64 = 100_000;

/// How closed numerals are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumeralStyle {
    /// `s(s(...zero...))`; numerals above the limit are refused.
    Tower,
    /// Doubling chains `times(s(s(zero)), _)` over the binary digits.
    Binary,
    /// Towers up to the limit, binary above it, with a warning.
    Auto,
}

impl NumeralStyle {
    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "tower" => NumeralStyle::Tower,
            "binary" => NumeralStyle::Binary,
            "auto" => NumeralStyle::Auto,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TptpOptions {
    pub numerals: NumeralStyle,
    pub tower_limit: u64,
}

impl Default for TptpOptions {
    fn default() -> Self {
        TptpOptions { numerals: NumeralStyle::Auto, tower_limit: TOWER_LIMIT }
    }
}

/// An emitted problem and the size warnings raised while writing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub text: String,
    pub warnings: Vec<String>,
}

const SORT_GUARDS: [(&str, &str); 5] = [
    ("sort_zero", "num(zero)"),
    ("sort_succ", "(! [X] : (num(X) => num(s(X))))"),
    ("sort_plus", "(! [X] : (num(X) => (! [Y] : (num(Y) => num(plus(X,Y))))))"),
    ("sort_times", "(! [X] : (num(X) => (! [Y] : (num(Y) => num(times(X,Y))))))"),
    ("sort_disjoint", "(! [X] : (num(X) => ~ idx(X)))"),
];

/// The bundle as a TPTP problem with default options.
pub fn to_tptp(bundle: &AxiomBundle) -> Result<String> {
    to_tptp_with(bundle, &TptpOptions::default()).map(|p| p.text)
}

pub fn to_tptp_with(bundle: &AxiomBundle, opts: &TptpOptions) -> Result<ProblemFile> {
    for (name, _) in SORT_GUARDS {
        if bundle.get(name).is_some() {
            return Err(Error::Invalid(format!("sentence name `{name}` is reserved for sort guards")));
        }
    }
    let mut em = Emitter { opts: *opts, warnings: Vec::new(), context: String::new() };
    let mut body = String::new();
    for s in bundle.sentences() {
        em.context = s.name.to_string();
        if s.role == Role::Conjecture && s.body == Formula::falsum() {
            let _ = writeln!(body, "fof({}, conjecture, $false).", s.name);
            continue;
        }
        let f = em.formula(&s.body)?;
        match s.role {
            Role::Obligation => {
                let _ = writeln!(body, "% obligation {}: {f}", s.name);
            }
            role => {
                let _ = writeln!(body, "fof({}, {}, {f}).", s.name, tptp_role(role));
            }
        }
    }
    let mut text = String::new();
    let _ = writeln!(text, "% bundle: {}", bundle.name);
    for line in bundle.provenance.lines() {
        let _ = writeln!(text, "% provenance: {line}");
    }
    let count = |r: Role| bundle.with_role(r).count();
    let _ = writeln!(
        text,
        "% sentences: {} ({} axioms, {} lemmas, {} obligations, {} conjectures)",
        bundle.len(),
        count(Role::Axiom),
        count(Role::Lemma),
        count(Role::Obligation),
        count(Role::Conjecture)
    );
    for w in &em.warnings {
        let _ = writeln!(text, "% warning: {w}");
    }
    text.push_str("\n% sort guards\n");
    for (name, f) in SORT_GUARDS {
        let _ = writeln!(text, "fof({name}, axiom, {f}).");
    }
    let _ = writeln!(text, "\n% {}", bundle.name);
    text.push_str(&body);
    Ok(ProblemFile { text, warnings: em.warnings })
}

fn tptp_role(role: Role) -> &'static str {
    match role {
        Role::Axiom => "axiom",
        Role::Lemma => "lemma",
        Role::Conjecture => "conjecture",
        Role::Obligation => unreachable!("obligations are written as comments"),
    }
}

fn num_var(x: &Ident) -> String {
    format!("N_{x}")
}

fn idx_var(a: &Ident) -> String {
    format!("I_{a}")
}

struct Emitter {
    opts: TptpOptions,
    warnings: Vec<String>,
    context: String,
}

impl Emitter {
    fn formula(&mut self, f: &Formula) -> Result<String> {
        let mut out = String::new();
        self.write_formula(&mut out, f)?;
        Ok(out)
    }

    fn term(&mut self, t: &Term) -> Result<String> {
        let mut out = String::new();
        self.write_term(&mut out, t)?;
        Ok(out)
    }

    fn write_term(&mut self, out: &mut String, t: &Term) -> Result<()> {
        match t {
            Term::Var(x) => out.push_str(&num_var(x)),
            Term::Num(n) => self.write_numeral(out, n)?,
            Term::Succ(a) => {
                out.push_str("s(");
                self.write_term(out, a)?;
                out.push(')');
            }
            Term::Add(a, b) | Term::Mul(a, b) => {
                out.push_str(if matches!(t, Term::Add(..)) { "plus(" } else { "times(" });
                self.write_term(out, a)?;
                out.push(',');
                self.write_term(out, b)?;
                out.push(')');
            }
        }
        Ok(())
    }

    fn write_numeral(&mut self, out: &mut String, n: &BigUint) -> Result<()> {
        let small = n.to_u64().filter(|k| *k <= self.opts.tower_limit);
        match (self.opts.numerals, small) {
            (NumeralStyle::Tower | NumeralStyle::Auto, Some(k)) => {
                write_tower(out, k);
                Ok(())
            }
            (NumeralStyle::Tower, None) => {
                Err(Error::NumeralTooLarge { value: n.to_string(), limit: self.opts.tower_limit })
            }
            (NumeralStyle::Auto, None) => {
                let w = format!("{}: numeral of {} bits written in binary", self.context, n.bits());
                if !self.warnings.contains(&w) {
                    self.warnings.push(w);
                }
                write_binary(out, n);
                Ok(())
            }
            (NumeralStyle::Binary, _) => {
                write_binary(out, n);
                Ok(())
            }
        }
    }

    fn atom(&mut self, out: &mut String, pred: &str, args: &[&Term]) -> Result<()> {
        out.push_str(pred);
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            self.write_term(out, a)?;
        }
        out.push(')');
        Ok(())
    }

    fn binary(&mut self, out: &mut String, op: &str, a: &Formula, b: &Formula) -> Result<()> {
        out.push('(');
        self.write_formula(out, a)?;
        let _ = write!(out, " {op} ");
        self.write_formula(out, b)?;
        out.push(')');
        Ok(())
    }

    fn write_formula(&mut self, out: &mut String, f: &Formula) -> Result<()> {
        use Formula::*;
        match f {
            Eq(a, b) => {
                out.push('(');
                self.write_term(out, a)?;
                out.push_str(" = ");
                self.write_term(out, b)?;
                out.push(')');
            }
            IdxEq(a, b) => {
                let _ = write!(out, "({} = {})", idx_var(a), idx_var(b));
            }
            Lt(a, b) => self.atom(out, "lt", &[a, b])?,
            Tru(a) => self.atom(out, "tru", &[a])?,
            ITru(a, t) => {
                let _ = write!(out, "itru({},", idx_var(a));
                self.write_term(out, t)?;
                out.push(')');
            }
            Prec(a, b) => {
                let _ = write!(out, "prec({},{})", idx_var(a), idx_var(b));
            }
            Ack(a, b) => self.atom(out, "ack", &[a, b])?,
            Diag(a, b) => self.atom(out, "diag", &[a, b])?,
            ExpRel(a, b) => self.atom(out, "expr", &[a, b])?,
            SubTru(a, b) => self.atom(out, "subt", &[a, b])?,
            SentA(a) => self.atom(out, "sent_a", &[a])?,
            Not(a) => {
                out.push_str("~ ");
                self.write_formula(out, a)?;
            }
            Or(a, b) => self.binary(out, "|", a, b)?,
            And(a, b) => self.binary(out, "&", a, b)?,
            Imp(a, b) => self.binary(out, "=>", a, b)?,
            Iff(a, b) => self.binary(out, "<=>", a, b)?,
            ExistsNum(x, body) => {
                let v = num_var(x);
                let _ = write!(out, "(? [{v}] : (num({v}) & ");
                self.write_formula(out, body)?;
                out.push_str("))");
            }
            ForallNum(x, body) => {
                let v = num_var(x);
                let _ = write!(out, "(! [{v}] : (num({v}) => ");
                self.write_formula(out, body)?;
                out.push_str("))");
            }
            ExistsIdx(a, body) => {
                let v = idx_var(a);
                let _ = write!(out, "(? [{v}] : (idx({v}) & ");
                self.write_formula(out, body)?;
                out.push_str("))");
            }
            ForallIdx(a, body) => {
                let v = idx_var(a);
                let _ = write!(out, "(! [{v}] : (idx({v}) => ");
                self.write_formula(out, body)?;
                out.push_str("))");
            }
            BoundedExists(x, t, body) | BoundedForall(x, t, body) => {
                // The bound lies outside the binder, so a clash is renamed away.
                let (x, body) = if t.mentions(x) {
                    let names = all_names(f);
                    let y = Ident::fresh(|c| names.contains(c));
                    let renamed = substitute_many(body, &[(x.clone(), Term::var(y.clone()))]);
                    (y, renamed)
                } else {
                    (x.clone(), (**body).clone())
                };
                let v = num_var(&x);
                let bound = self.term(t)?;
                let range = format!("(lt({v},{bound}) | ({v} = {bound}))");
                if matches!(f, BoundedExists(..)) {
                    let _ = write!(out, "(? [{v}] : (num({v}) & ({range} & ");
                } else {
                    let _ = write!(out, "(! [{v}] : (num({v}) => ({range} => ");
                }
                self.write_formula(out, &body)?;
                out.push_str(")))");
            }
        }
        Ok(())
    }
}

fn write_tower(out: &mut String, k: u64) {
    out.reserve(3 * k as usize + 4);
    for _ in 0..k {
        out.push_str("s(");
    }
    out.push_str("zero");
    for _ in 0..k {
        out.push(')');
    }
}

/// `n` by doubling from its leading digit: `2·acc` or `S(2·acc)` per bit.
fn write_binary(out: &mut String, n: &BigUint) {
    if n.is_zero() {
        out.push_str("zero");
        return;
    }
    let bits = n.bits();
    let mut open = String::new();
    let mut close = String::new();
    // Digits below the leading one, least significant outermost.
    for i in 0..bits - 1 {
        if n.bit(i) {
            open.push_str("s(");
            close.push(')');
        }
        open.push_str("times(s(s(zero)),");
        close.push(')');
    }
    out.push_str(&open);
    out.push_str("s(zero)");
    out.push_str(&close);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn bundle(items: &[(&str, Role, &str)]) -> AxiomBundle {
        let mut b = AxiomBundle::new("demo", "test bundle\nsecond line").unwrap();
        for (n, r, f) in items {
            b.push(n, *r, parse(f).unwrap()).unwrap();
        }
        b
    }

    #[test]
    fn guards_and_roles() {
        let b = bundle(&[
            ("a1", Role::Axiom, "(all x (ex-i a (itru a (var x))))"),
            ("o1", Role::Obligation, "(eq z z)"),
            ("goal", Role::Conjecture, "(eq z (s z))"),
        ]);
        let text = to_tptp(&b).unwrap();
        assert!(text.starts_with("% bundle: demo\n% provenance: test bundle\n% provenance: second line\n"));
        assert!(text.contains("fof(a1, axiom, (! [N_x] : (num(N_x) => (? [I_a] : (idx(I_a) & itru(I_a,N_x)))))).\n"));
        assert!(text.contains("% obligation o1: (zero = zero)\n"));
        assert!(text.contains("fof(goal, conjecture, $false).\n"));
    }

    #[test]
    fn numerals() {
        let mut out = String::new();
        write_binary(&mut out, &BigUint::from(6u32));
        assert_eq!(out, "times(s(s(zero)),s(times(s(s(zero)),s(zero))))");
        let b = bundle(&[("big", Role::Axiom, "(eq (num 123456) (num 123456))")]);
        let tower = TptpOptions { numerals: NumeralStyle::Tower, ..Default::default() };
        assert!(matches!(to_tptp_with(&b, &tower), Err(Error::NumeralTooLarge { .. })));
        let p = to_tptp_with(&b, &TptpOptions::default()).unwrap();
        assert_eq!(p.warnings, ["big: numeral of 17 bits written in binary"]);
        assert!(p.text.contains("% warning: big: numeral of 17 bits"));
    }

    #[test]
    fn bounded_bound_capture_is_renamed() {
        let b = bundle(&[("c", Role::Axiom, "(all x (ex-le x (var x) (eq (var x) (var x))))")]);
        let text = to_tptp(&b).unwrap();
        assert!(text.contains("(? [N_a] : (num(N_a) & ((lt(N_a,N_x) | (N_a = N_x)) & (N_a = N_a))))"), "{text}");
    }
}
