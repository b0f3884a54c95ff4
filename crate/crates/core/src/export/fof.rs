//! A reader for the TPTP first-order form subset the exporter writes, and
//! the sort-guard audit run over its output.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FofTerm {
    Var(String),
    App(String, Vec<FofTerm>),
    /// `k` nested applications of `s`, kept flat so towers stay shallow.
    Succ(u64, Box<FofTerm>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connective {
    And,
    Or,
    Imp,
    Iff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FofFormula {
    True,
    False,
    Atom(String, Vec<FofTerm>),
    Eq(FofTerm, FofTerm),
    Not(Box<FofFormula>),
    Binary(Connective, Box<FofFormula>, Box<FofFormula>),
    Quant(Quantifier, Vec<String>, Box<FofFormula>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FofAnnotated {
    pub name: String,
    pub role: String,
    pub formula: FofFormula,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FofFile {
    pub formulas: Vec<FofAnnotated>,
}

const ROLES: [&str; 6] = ["axiom", "hypothesis", "definition", "lemma", "theorem", "conjecture"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    Dollar(String),
    Punct(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    const PUNCT: [&str; 14] = ["<=>", "=>", "!=", "(", ")", "[", "]", ",", ":", ".", "~", "&", "|", "="];
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'%' {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
        } else if c.is_ascii_alphabetic() || c == b'$' {
            let start = i;
            i += 1;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let word = text[start..i].to_string();
            let tok = match c {
                b'$' => Tok::Dollar(word),
                b'A'..=b'Z' => Tok::Upper(word),
                _ => Tok::Lower(word),
            };
            out.push((tok, start));
        } else if c == b'!' && b.get(i + 1) != Some(&b'=') || c == b'?' {
            out.push((Tok::Punct(if c == b'!' { "!" } else { "?" }), i));
            i += 1;
        } else if let Some(p) = PUNCT.iter().find(|p| text[i..].starts_with(**p)) {
            out.push((Tok::Punct(p), i));
            i += p.len();
        } else {
            return Err(Error::syntax_at(text, i, format!("unexpected character `{}`", c as char)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.text.len(), |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::syntax_at(self.text, self.pos(), msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn peek_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn expect(&mut self, p: &str) -> Result<()> {
        if self.peek_punct(p) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{p}`")))
        }
    }

    fn lower(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Lower(w)) => {
                let w = w.clone();
                self.at += 1;
                Ok(w)
            }
            _ => Err(self.err("expected a lower-case word")),
        }
    }

    fn file(&mut self) -> Result<FofFile> {
        let mut file = FofFile::default();
        while self.peek().is_some() {
            if self.lower()? != "fof" {
                self.at -= 1;
                return Err(self.err("expected `fof`"));
            }
            self.expect("(")?;
            let name = self.lower()?;
            self.expect(",")?;
            let role = self.lower()?;
            if !ROLES.contains(&role.as_str()) {
                self.at -= 1;
                return Err(self.err(format!("unknown role `{role}`")));
            }
            self.expect(",")?;
            let formula = self.formula()?;
            self.expect(")")?;
            self.expect(".")?;
            file.formulas.push(FofAnnotated { name, role, formula });
        }
        Ok(file)
    }

    fn formula(&mut self) -> Result<FofFormula> {
        let first = self.unit()?;
        let conn = match self.peek() {
            Some(Tok::Punct("&")) => Connective::And,
            Some(Tok::Punct("|")) => Connective::Or,
            Some(Tok::Punct("=>")) => Connective::Imp,
            Some(Tok::Punct("<=>")) => Connective::Iff,
            _ => return Ok(first),
        };
        self.at += 1;
        let second = self.unit()?;
        let mut acc = FofFormula::Binary(conn, Box::new(first), Box::new(second));
        // `&` and `|` chain; the other connectives need parentheses.
        while matches!(conn, Connective::And | Connective::Or)
            && self.peek_punct(if conn == Connective::And { "&" } else { "|" })
        {
            self.at += 1;
            let next = self.unit()?;
            acc = FofFormula::Binary(conn, Box::new(acc), Box::new(next));
        }
        if matches!(self.peek(), Some(Tok::Punct("&" | "|" | "=>" | "<=>"))) {
            return Err(self.err("mixed connectives need parentheses"));
        }
        Ok(acc)
    }

    fn unit(&mut self) -> Result<FofFormula> {
        match self.peek() {
            Some(Tok::Punct("(")) => {
                self.at += 1;
                let f = self.formula()?;
                self.expect(")")?;
                Ok(f)
            }
            Some(Tok::Punct("~")) => {
                self.at += 1;
                Ok(FofFormula::Not(Box::new(self.unit()?)))
            }
            Some(Tok::Punct(q @ ("!" | "?"))) => {
                let q = if *q == "!" { Quantifier::Forall } else { Quantifier::Exists };
                self.at += 1;
                self.expect("[")?;
                let mut vars = Vec::new();
                loop {
                    match self.peek() {
                        Some(Tok::Upper(v)) => {
                            vars.push(v.clone());
                            self.at += 1;
                        }
                        _ => return Err(self.err("expected a variable")),
                    }
                    if self.peek_punct(",") {
                        self.at += 1;
                    } else {
                        break;
                    }
                }
                self.expect("]")?;
                self.expect(":")?;
                Ok(FofFormula::Quant(q, vars, Box::new(self.unit()?)))
            }
            Some(Tok::Dollar(w)) => {
                let f = match w.as_str() {
                    "$true" => FofFormula::True,
                    "$false" => FofFormula::False,
                    _ => return Err(self.err(format!("unknown constant `{w}`"))),
                };
                self.at += 1;
                Ok(f)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<FofFormula> {
        let left = self.term()?;
        if self.peek_punct("=") || self.peek_punct("!=") {
            let negated = self.peek_punct("!=");
            self.at += 1;
            let eq = FofFormula::Eq(left, self.term()?);
            return Ok(if negated { FofFormula::Not(Box::new(eq)) } else { eq });
        }
        match left {
            FofTerm::App(p, args) => Ok(FofFormula::Atom(p, args)),
            FofTerm::Succ(k, inner) => Ok(FofFormula::Atom("s".into(), vec![succ(k - 1, *inner)])),
            FofTerm::Var(_) => Err(self.err("a variable is not a formula")),
        }
    }

    fn term(&mut self) -> Result<FofTerm> {
        // Unary `s` chains are counted instead of recursed into.
        let mut depth = 0u64;
        while matches!(self.peek(), Some(Tok::Lower(w)) if w == "s")
            && matches!(self.toks.get(self.at + 1), Some((Tok::Punct("("), _)))
        {
            self.at += 2;
            depth += 1;
        }
        let inner = self.simple_term()?;
        for _ in 0..depth {
            if self.peek_punct(",") {
                return Err(self.err("`s` takes one argument"));
            }
            self.expect(")")?;
        }
        Ok(succ(depth, inner))
    }

    fn simple_term(&mut self) -> Result<FofTerm> {
        match self.peek().cloned() {
            Some(Tok::Upper(v)) => {
                self.at += 1;
                Ok(FofTerm::Var(v))
            }
            Some(Tok::Lower(f)) => {
                self.at += 1;
                let mut args = Vec::new();
                if self.peek_punct("(") {
                    self.at += 1;
                    loop {
                        args.push(self.term()?);
                        if self.peek_punct(",") {
                            self.at += 1;
                        } else {
                            break;
                        }
                    }
                    self.expect(")")?;
                }
                Ok(FofTerm::App(f, args))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

fn succ(k: u64, t: FofTerm) -> FofTerm {
    match (k, t) {
        (0, t) => t,
        (k, FofTerm::Succ(j, inner)) => FofTerm::Succ(k + j, inner),
        (k, t) => FofTerm::Succ(k, Box::new(t)),
    }
}

/// Parses a problem file; comments are skipped.
pub fn parse_fof(text: &str) -> Result<FofFile> {
    let toks = tokenize(text)?;
    Parser { text, toks, at: 0 }.file()
}

/// Problems found by [`audit_guards`], one line each.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GuardAudit {
    pub variables: usize,
    pub issues: Vec<String>,
}

impl GuardAudit {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Checks that every quantifier binds one variable whose first use is a
/// single `num` or `idx` guard (`=>` under `!`, `&` under `?`), and that no
/// variable occurs free.
pub fn audit_guards(file: &FofFile) -> GuardAudit {
    let mut audit = GuardAudit::default();
    for a in &file.formulas {
        let mut bound = Vec::new();
        audit_formula(&a.name, &a.formula, &mut bound, &mut audit);
    }
    audit
}

fn guard_of(f: &FofFormula) -> Option<(&str, &str)> {
    match f {
        FofFormula::Atom(p, args) if p == "num" || p == "idx" => match args.as_slice() {
            [FofTerm::Var(v)] => Some((p, v)),
            _ => None,
        },
        _ => None,
    }
}

fn audit_formula(name: &str, f: &FofFormula, bound: &mut Vec<String>, audit: &mut GuardAudit) {
    match f {
        FofFormula::True | FofFormula::False => {}
        FofFormula::Atom(_, args) => {
            for t in args {
                audit_term(name, t, bound, audit);
            }
        }
        FofFormula::Eq(a, b) => {
            audit_term(name, a, bound, audit);
            audit_term(name, b, bound, audit);
        }
        FofFormula::Not(a) => audit_formula(name, a, bound, audit),
        FofFormula::Binary(_, a, b) => {
            audit_formula(name, a, bound, audit);
            audit_formula(name, b, bound, audit);
        }
        FofFormula::Quant(q, vars, body) => {
            audit.variables += vars.len();
            let v = &vars[0];
            if vars.len() != 1 {
                audit.issues.push(format!("{name}: quantifier binds {} variables at once", vars.len()));
            }
            let want = if *q == Quantifier::Forall { Connective::Imp } else { Connective::And };
            let guarded = match &**body {
                FofFormula::Binary(c, g, _) if *c == want => guard_of(g).is_some_and(|(_, gv)| gv == v),
                _ => false,
            };
            if !guarded {
                audit.issues.push(format!("{name}: variable {v} has no sort guard"));
            } else if let FofFormula::Binary(_, _, rest) = &**body {
                if let Some((sort, _)) = guard_of_any(rest, v) {
                    audit.issues.push(format!("{name}: variable {v} has a second guard {sort}"));
                }
            }
            bound.extend(vars.iter().cloned());
            audit_formula(name, body, bound, audit);
            bound.truncate(bound.len() - vars.len());
        }
    }
}

/// A `num`/`idx` guard on `v` directly at the head of `f`.
fn guard_of_any<'a>(f: &'a FofFormula, v: &str) -> Option<(&'a str, &'a str)> {
    match f {
        FofFormula::Binary(_, g, _) => guard_of(g).filter(|(_, gv)| *gv == v),
        g => guard_of(g).filter(|(_, gv)| *gv == v),
    }
}

fn audit_term(name: &str, t: &FofTerm, bound: &[String], audit: &mut GuardAudit) {
    match t {
        FofTerm::Var(v) => {
            if !bound.contains(v) {
                audit.issues.push(format!("{name}: variable {v} occurs free"));
            }
        }
        FofTerm::App(_, args) => args.iter().for_each(|a| audit_term(name, a, bound, audit)),
        FofTerm::Succ(_, inner) => audit_term(name, inner, bound, audit),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_and_audits() {
        let text =
            "% c\nfof(a, axiom, (! [X] : (num(X) => (s(s(X)) = plus(X, s(zero)))))).\nfof(g, conjecture, $false).";
        let file = parse_fof(text).unwrap();
        assert_eq!(file.formulas.len(), 2);
        let FofFormula::Quant(_, _, body) = &file.formulas[0].formula else { panic!() };
        let FofFormula::Binary(Connective::Imp, _, eq) = &**body else { panic!() };
        assert_eq!(
            **eq,
            FofFormula::Eq(
                FofTerm::Succ(2, Box::new(FofTerm::Var("X".into()))),
                FofTerm::App(
                    "plus".into(),
                    vec![FofTerm::Var("X".into()), FofTerm::Succ(1, Box::new(FofTerm::App("zero".into(), vec![])))]
                )
            )
        );
        let audit = audit_guards(&file);
        assert!(audit.is_clean());
        assert_eq!(audit.variables, 1);
    }

    #[test]
    fn audit_flags() {
        let file = parse_fof("fof(a, axiom, (! [X] : p(X))). fof(b, axiom, q(Y)).").unwrap();
        assert_eq!(audit_guards(&file).issues, ["a: variable X has no sort guard", "b: variable Y occurs free"]);
        let file = parse_fof("fof(c, axiom, (? [X] : (num(X) & idx(X)))).").unwrap();
        assert_eq!(audit_guards(&file).issues, ["c: variable X has a second guard idx"]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_fof("fof(a, axiom, p & q | r)."), Err(Error::Syntax { .. })));
        assert!(matches!(parse_fof("fof(a, banana, p)."), Err(Error::Syntax { line: 1, col: 8, .. })));
        assert!(parse_fof("fof(a, axiom, p)").is_err());
        assert!(parse_fof("fof(a, axiom, s(a, b)).").is_err());
        let deep = format!("fof(t, axiom, {}zero{} = zero).", "s(".repeat(200_000), ")".repeat(200_000));
        assert!(parse_fof(&deep).is_ok());
    }
}
