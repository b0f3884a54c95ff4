//! S-expression containers for interpretations, bundles and reports.
//!
//! ```text
//! (interp (stage n) (psi f) (pool f ...) (domain x f) (truth y x f))
//! (bundle name (provenance "text") (ax name role f) ...)
//! (report (check "dc") (pass true) (fuel 64) (fuel-used 3) (flags "..." ...)
//!         (subjects "..." ...) (instances (instance "input" expected got verdict) ...))
//! ```

use crate::axioms::{AxiomBundle, Role};
use crate::error::{Error, Result};
use crate::interp::{Interpretation, DOMAIN_VAR, INDEX_VAR};
use crate::semantics::{CheckReport, Instance, TriBool};
use crate::sexpr::{quote, read_one, SExp};
use crate::syntax::{parse, parse_formula_sexp, render, Formula};
use std::fmt::Write;

/// Values with a textual S-expression form.
pub trait SExpr: Sized {
    fn to_sexpr(&self) -> String;
    fn from_sexpr(text: &str) -> Result<Self>;
}

impl SExpr for Formula {
    fn to_sexpr(&self) -> String {
        render(self)
    }

    fn from_sexpr(text: &str) -> Result<Self> {
        parse(text)
    }
}

impl SExpr for Interpretation {
    fn to_sexpr(&self) -> String {
        let mut out = format!("(interp\n  (stage {})\n  (psi {})\n  (pool", self.stage, render(&self.psi));
        for f in &self.pool {
            let _ = write!(out, "\n    {}", render(f));
        }
        let _ = write!(
            out,
            ")\n  (domain {DOMAIN_VAR} {})\n  (truth {INDEX_VAR} {DOMAIN_VAR} {}))",
            render(&self.domain),
            render(&self.truth)
        );
        out
    }

    fn from_sexpr(text: &str) -> Result<Self> {
        let e = read_one(text)?;
        let r = Reader { text };
        let fields = r.fields(&e, "interp", &["stage", "psi", "pool", "domain", "truth"])?;
        let stage = r.number(r.single(fields[0])?)?;
        let psi = parse_formula_sexp(r.single(fields[1])?, text)?;
        let pool = fields[2][1..].iter().map(|f| parse_formula_sexp(f, text)).collect::<Result<_>>()?;
        let domain = r.binder(fields[3], &[DOMAIN_VAR])?;
        let truth = r.binder(fields[4], &[INDEX_VAR, DOMAIN_VAR])?;
        Ok(Interpretation { stage, psi, pool, domain, truth })
    }
}

impl SExpr for AxiomBundle {
    fn to_sexpr(&self) -> String {
        let mut out = format!("(bundle {}\n  (provenance {})", self.name, quote(&self.provenance));
        for s in self.sentences() {
            let _ = write!(out, "\n  (ax {} {} {})", s.name, s.role.as_str(), render(&s.body));
        }
        out.push(')');
        out
    }

    fn from_sexpr(text: &str) -> Result<Self> {
        let e = read_one(text)?;
        let r = Reader { text };
        let items = r.list(&e, "bundle")?;
        if items.len() < 3 {
            return Err(r.err(&e, "expected `(bundle name (provenance \"...\") ...)`"));
        }
        let name = r.atom(&items[1])?;
        let prov = r.list(&items[2], "provenance")?;
        let provenance = match prov {
            [_, SExp::Str { text, .. }] => text.clone(),
            _ => return Err(r.err(&items[2], "expected `(provenance \"...\")`")),
        };
        let mut bundle = AxiomBundle::new(name, provenance).map_err(|_| r.err(&items[1], "invalid bundle name"))?;
        for ax in &items[3..] {
            let parts = r.list(ax, "ax")?;
            if parts.len() != 4 {
                return Err(r.err(ax, "expected `(ax name role formula)`"));
            }
            let role = Role::from_name(r.atom(&parts[2])?).ok_or_else(|| r.err(&parts[2], "unknown role"))?;
            let body = parse_formula_sexp(&parts[3], text)?;
            bundle.push(r.atom(&parts[1])?, role, body).map_err(|e| r.err(ax, e.to_string()))?;
        }
        Ok(bundle)
    }
}

impl SExpr for CheckReport {
    fn to_sexpr(&self) -> String {
        let strings = |v: &[String]| v.iter().map(|s| format!(" {}", quote(s))).collect::<String>();
        let mut out = format!(
            "(report\n  (check {})\n  (pass {})\n  (fuel {})\n  (fuel-used {})\n  (flags{})\n  (subjects{})\n  (instances",
            quote(&self.check),
            self.pass,
            self.fuel,
            self.fuel_used,
            strings(&self.flags),
            strings(&self.subjects)
        );
        for i in &self.instances {
            let _ = write!(out, "\n    (instance {} {} {} {})", quote(&i.input), i.expected, i.got, i.verdict);
        }
        out.push_str("))");
        out
    }

    fn from_sexpr(text: &str) -> Result<Self> {
        let e = read_one(text)?;
        let r = Reader { text };
        let f = r.fields(&e, "report", &["check", "pass", "fuel", "fuel-used", "flags", "subjects", "instances"])?;
        let pass = match r.atom(r.single(f[1])?)? {
            "true" => true,
            "false" => false,
            _ => return Err(r.err(&f[1][1], "expected `true` or `false`")),
        };
        let mut instances = Vec::new();
        for i in &f[6][1..] {
            let parts = r.list(i, "instance")?;
            if parts.len() != 5 {
                return Err(r.err(i, "expected `(instance \"input\" expected got verdict)`"));
            }
            instances.push(Instance {
                input: r.string(&parts[1])?,
                expected: r.tribool(&parts[2])?,
                got: r.tribool(&parts[3])?,
                verdict: r.tribool(&parts[4])?,
            });
        }
        Ok(CheckReport {
            check: r.string(r.single(f[0])?)?,
            pass,
            fuel: r.number(r.single(f[2])?)?,
            fuel_used: r.number(r.single(f[3])?)?,
            flags: f[4][1..].iter().map(|s| r.string(s)).collect::<Result<_>>()?,
            subjects: f[5][1..].iter().map(|s| r.string(s)).collect::<Result<_>>()?,
            instances,
        })
    }
}

struct Reader<'a> {
    text: &'a str,
}

impl<'a> Reader<'a> {
    fn err(&self, e: &SExp, msg: impl Into<String>) -> Error {
        Error::syntax_at(self.text, e.pos(), msg)
    }

    /// Items of a list headed by `head`.
    fn list<'e>(&self, e: &'e SExp, head: &str) -> Result<&'e [SExp]> {
        match e.as_list() {
            Some(items) if e.head() == Some(head) => Ok(items),
            _ => Err(self.err(e, format!("expected `({head} ...)`"))),
        }
    }

    /// Sub-lists of `(head (f1 ..) (f2 ..) ..)` in the given order.
    fn fields<'e>(&self, e: &'e SExp, head: &str, names: &[&str]) -> Result<Vec<&'e [SExp]>> {
        let items = self.list(e, head)?;
        if items.len() != names.len() + 1 {
            return Err(self.err(e, format!("`{head}` takes the fields {}", names.join(", "))));
        }
        names.iter().zip(&items[1..]).map(|(n, item)| self.list(item, n)).collect()
    }

    fn single<'e>(&self, field: &'e [SExp]) -> Result<&'e SExp> {
        match field {
            [_, v] => Ok(v),
            [head, ..] => Err(self.err(head, "expected exactly one value")),
            [] => unreachable!("fields are non-empty lists"),
        }
    }

    fn atom<'e>(&self, e: &'e SExp) -> Result<&'e str> {
        e.as_atom().ok_or_else(|| self.err(e, "expected an atom"))
    }

    fn string(&self, e: &SExp) -> Result<String> {
        match e {
            SExp::Str { text, .. } => Ok(text.clone()),
            _ => Err(self.err(e, "expected a string")),
        }
    }

    fn number(&self, e: &SExp) -> Result<u64> {
        self.atom(e)?.parse().map_err(|_| self.err(e, "expected a natural number"))
    }

    fn tribool(&self, e: &SExp) -> Result<TriBool> {
        TriBool::from_name(self.atom(e)?).ok_or_else(|| self.err(e, "expected true, false or unknown"))
    }

    /// `(head v1 .. vk f)` with the fixed variable names.
    fn binder(&self, field: &[SExp], vars: &[&str]) -> Result<Formula> {
        if field.len() != vars.len() + 2 {
            return Err(self.err(&field[0], format!("expected {} variable(s) and a formula", vars.len())));
        }
        for (v, e) in vars.iter().zip(&field[1..]) {
            if self.atom(e)? != *v {
                return Err(self.err(e, format!("expected variable `{v}`")));
            }
        }
        parse_formula_sexp(&field[field.len() - 1], self.text)
    }
}
