//! The interpretations `ι_n` of indexed truth into arithmetic, translation
//! through them, and size measurement.
//!
//! At stage `n` the indices are the numbers `m < n` with `¬ψ(m)`, the order
//! is `<`, and `T_α(x)` becomes `IT^(n)(y_α, x)`, which looks up the earlier
//! translation `ι_m(φ_i)` when `x` is the code of a pool sentence `φ_i`.

use crate::axioms::{biconditional, id};
use crate::error::{Error, Result};
use crate::goedel::quote;
use crate::syntax::{
    all_names, big_and, numeral, require_sentence, substitute_many, unary_variable, Formula, Ident, Term,
};
use num_bigint::BigUint;
use std::collections::{BTreeSet, HashMap};

/// Free variable of the domain formula and code variable of the truth formula.
pub const DOMAIN_VAR: &str = "x";
/// Index variable of the truth formula.
pub const INDEX_VAR: &str = "y";

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Stage `n` of the interpretation family: domain `D^(n)(x)` and truth
/// `IT^(n)(y, x)`. The order `≺` is always interpreted by `<`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub stage: u64,
    pub psi: Formula,
    pub pool: Vec<Formula>,
    pub domain: Formula,
    pub truth: Formula,
}

fn x() -> Term {
    Term::var(id(DOMAIN_VAR))
}

fn y() -> Term {
    Term::var(id(INDEX_VAR))
}

/// `D^(n)(x) := x < n̲ ∧ ¬ψ(x)`.
pub fn domain_formula(psi: &Formula, n: u64) -> Result<Formula> {
    let v = psi_variable(psi)?;
    Ok(Formula::and(Formula::lt(x(), numeral(n)), Formula::not(instantiate(psi, &v, x()))))
}

/// The free variable of `ψ`; a closed `ψ` is treated as constant in it.
fn psi_variable(psi: &Formula) -> Result<Option<Ident>> {
    if !psi.is_arithmetical() {
        return Err(Error::Invalid(format!("ψ must be purely arithmetical: {psi}")));
    }
    match unary_variable(psi) {
        Ok(v) => Ok(Some(v)),
        Err(Error::Arity { found: 0, .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn instantiate(psi: &Formula, v: &Option<Ident>, t: Term) -> Formula {
    match v {
        Some(v) => substitute_many(psi, &[(v.clone(), t)]),
        None => psi.clone(),
    }
}

struct Builder {
    psi: Formula,
    psi_var: Option<Ident>,
    pool: Vec<Formula>,
    budget: u64,
    /// `translations[m][i] = ι_m(φ_i)`.
    translations: Vec<Vec<Formula>>,
}

impl Builder {
    fn new(psi: &Formula, pool: &[Formula], budget: u64) -> Result<Self> {
        let psi_var = psi_variable(psi)?;
        for f in pool {
            require_sentence(f)?;
        }
        Ok(Builder { psi: psi.clone(), psi_var, pool: pool.to_vec(), budget, translations: Vec::new() })
    }

    fn check(&self, size: u64) -> Result<()> {
        if size > self.budget {
            return Err(Error::Budget { size, budget: self.budget });
        }
        Ok(())
    }

    /// `IT^(n)(y,x) := ⋀_i(x = ⌜φ_i⌝ → ⋀_{m<n}((y = m̲ ∧ ¬ψ(m̲)) → ι_m(φ_i)))`;
    /// empty conjunctions are `¬(0 = S0)`.
    fn truth(&self, n: u64) -> Result<Formula> {
        let estimate: u64 = self.translations[..n as usize].iter().flatten().map(Formula::ast_size).sum();
        self.check(estimate)?;
        let mut blocks = Vec::with_capacity(self.pool.len());
        for (i, phi) in self.pool.iter().enumerate() {
            let inner: Vec<Formula> = (0..n)
                .map(|m| {
                    let psi_m = instantiate(&self.psi, &self.psi_var, numeral(m));
                    Formula::imp(
                        Formula::and(Formula::eq(y(), numeral(m)), Formula::not(psi_m)),
                        self.translations[m as usize][i].clone(),
                    )
                })
                .collect();
            let inner = if inner.is_empty() { Formula::verum() } else { big_and(&inner)? };
            blocks.push(Formula::imp(Formula::eq(x(), quote(phi)), inner));
        }
        let truth = if blocks.is_empty() { Formula::verum() } else { big_and(&blocks)? };
        self.check(truth.ast_size())?;
        Ok(truth)
    }

    fn stage(&mut self, n: u64) -> Result<Interpretation> {
        while (self.translations.len() as u64) < n {
            let m = self.translations.len() as u64;
            let iota = self.stage_unchecked(m)?;
            let mut row = Vec::with_capacity(self.pool.len());
            for f in &self.pool {
                let t = translate(&iota, f)?;
                self.check(t.ast_size())?;
                row.push(t);
            }
            self.translations.push(row);
        }
        self.stage_unchecked(n)
    }

    fn stage_unchecked(&self, n: u64) -> Result<Interpretation> {
        Ok(Interpretation {
            stage: n,
            psi: self.psi.clone(),
            pool: self.pool.clone(),
            domain: domain_formula(&self.psi, n)?,
            truth: self.truth(n)?,
        })
    }
}

/// Builds `ι_n` by recursion through the earlier stages.
pub fn build_iota(psi: &Formula, pool: &[Formula], n: u64, budget: u64) -> Result<Interpretation> {
    Builder::new(psi, pool, budget)?.stage(n)
}

/// Translates an indexed formula into arithmetic through `iota`.
pub fn translate(iota: &Interpretation, f: &Formula) -> Result<Formula> {
    translate_with_bindings(iota, f, &[])
}

/// As [`translate`], with free index variables mapped to number variables.
pub fn translate_with_bindings(iota: &Interpretation, f: &Formula, bindings: &[(Ident, Ident)]) -> Result<Formula> {
    let mut taken = all_names(f);
    taken.extend(bindings.iter().map(|(_, y)| y.clone()));
    let mut t = Translator { iota, taken, map: bindings.to_vec() };
    t.go(f)
}

struct Translator<'a> {
    iota: &'a Interpretation,
    taken: BTreeSet<Ident>,
    map: Vec<(Ident, Ident)>,
}

impl Translator<'_> {
    fn lookup(&self, a: &Ident) -> Result<Term> {
        self.map
            .iter()
            .rev()
            .find(|(b, _)| b == a)
            .map(|(_, y)| Term::var(y.clone()))
            .ok_or_else(|| Error::Unsupported(format!("free index variable `{a}` has no number binding")))
    }

    fn bind(&mut self, a: &Ident, body: &Formula, exists: bool) -> Result<Formula> {
        let y = Ident::fresh(|i| self.taken.contains(i));
        self.taken.insert(y.clone());
        self.map.push((a.clone(), y.clone()));
        let inner = self.go(body);
        self.map.pop();
        let dom = substitute_many(&self.iota.domain, &[(id(DOMAIN_VAR), Term::var(y.clone()))]);
        Ok(if exists {
            Formula::exists(y, Formula::and(dom, inner?))
        } else {
            Formula::forall(y, Formula::imp(dom, inner?))
        })
    }

    fn go(&mut self, f: &Formula) -> Result<Formula> {
        use Formula::*;
        let b = Box::new;
        Ok(match f {
            Eq(..) | Lt(..) | Tru(_) | Ack(..) | Diag(..) | ExpRel(..) | SubTru(..) | SentA(_) => f.clone(),
            ITru(a, t) => {
                let ya = self.lookup(a)?;
                substitute_many(&self.iota.truth, &[(id(INDEX_VAR), ya), (id(DOMAIN_VAR), t.clone())])
            }
            Prec(a, c) => Formula::lt(self.lookup(a)?, self.lookup(c)?),
            IdxEq(a, c) => Formula::eq(self.lookup(a)?, self.lookup(c)?),
            ExistsIdx(a, body) => self.bind(a, body, true)?,
            ForallIdx(a, body) => self.bind(a, body, false)?,
            Not(a) => Not(b(self.go(a)?)),
            Or(l, r) => Or(b(self.go(l)?), b(self.go(r)?)),
            And(l, r) => And(b(self.go(l)?), b(self.go(r)?)),
            Imp(l, r) => Imp(b(self.go(l)?), b(self.go(r)?)),
            Iff(l, r) => Iff(b(self.go(l)?), b(self.go(r)?)),
            ExistsNum(v, a) => ExistsNum(v.clone(), b(self.go(a)?)),
            ForallNum(v, a) => ForallNum(v.clone(), b(self.go(a)?)),
            BoundedExists(v, t, a) => BoundedExists(v.clone(), t.clone(), b(self.go(a)?)),
            BoundedForall(v, t, a) => BoundedForall(v.clone(), t.clone(), b(self.go(a)?)),
        })
    }
}

/// Which size measure a profile checks against the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeMode {
    Literal,
    Shared,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeRow {
    pub n: u64,
    pub literal: u64,
    pub shared: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub psi: String,
    pub pool: Vec<String>,
    pub rows: Vec<SizeRow>,
}

impl SizeReport {
    /// Rows as `n,literal,shared` lines under a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,literal,shared\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.n, r.literal, r.shared));
        }
        out
    }
}

/// Node counts of `ι_n(B_{φ_i})` summed over the pool, for `n ≤ n_max`.
/// A numeral counts as one node. `shared` counts distinct subformulas and
/// subterms across the whole row.
pub fn size_profile(psi: &Formula, pool: &[Formula], n_max: u64, mode: SizeMode, budget: u64) -> Result<SizeReport> {
    let bics = pool.iter().map(biconditional).collect::<Result<Vec<_>>>()?;
    let mut builder = Builder::new(psi, pool, budget)?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let iota = builder.stage(n)?;
        let translated = bics.iter().map(|b| translate(&iota, b)).collect::<Result<Vec<_>>>()?;
        let literal = translated.iter().map(Formula::ast_size).sum();
        let shared = dag_size(&translated);
        let measured = if mode == SizeMode::Literal { literal } else { shared };
        if measured > budget {
            return Err(Error::Budget { size: measured, budget });
        }
        rows.push(SizeRow { n, literal, shared });
    }
    Ok(SizeReport { psi: psi.to_string(), pool: pool.iter().map(Formula::to_string).collect(), rows })
}

#[derive(Hash, PartialEq, Eq)]
enum Node {
    Var(Ident),
    Num(BigUint),
    Op(u8, Vec<u32>, Vec<Ident>),
}

#[derive(Default)]
struct Interner(HashMap<Node, u32>);

impl Interner {
    fn intern(&mut self, n: Node) -> u32 {
        let next = self.0.len() as u32;
        *self.0.entry(n).or_insert(next)
    }

    fn term(&mut self, t: &Term) -> u32 {
        let node = match t {
            Term::Var(v) => Node::Var(v.clone()),
            Term::Num(n) => Node::Num(n.clone()),
            Term::Succ(a) => Node::Op(0, vec![self.term(a)], vec![]),
            Term::Add(a, b) => Node::Op(1, vec![self.term(a), self.term(b)], vec![]),
            Term::Mul(a, b) => Node::Op(2, vec![self.term(a), self.term(b)], vec![]),
        };
        self.intern(node)
    }

    fn formula(&mut self, f: &Formula) -> u32 {
        use Formula::*;
        let tag = 16 + crate::goedel::formula_tag(f) as u8;
        let mut ids: Vec<u32> = f.terms().map(|t| self.term(t)).collect();
        ids.extend(f.children().map(|c| self.formula(c)));
        let names = match f {
            ITru(a, _) => vec![a.clone()],
            Prec(a, b) | IdxEq(a, b) => vec![a.clone(), b.clone()],
            ExistsNum(v, _)
            | ForallNum(v, _)
            | ExistsIdx(v, _)
            | ForallIdx(v, _)
            | BoundedExists(v, _, _)
            | BoundedForall(v, _, _) => vec![v.clone()],
            _ => vec![],
        };
        self.intern(Node::Op(tag, ids, names))
    }
}

/// Number of distinct subformulas and subterms of `fs`.
pub fn dag_size(fs: &[Formula]) -> u64 {
    let mut i = Interner::default();
    for f in fs {
        i.formula(f);
    }
    i.0.len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn domain_examples() {
        let psi = p("(eq z (s z))");
        let i = build_iota(&psi, &[], 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(i.domain, p("(and (lt (var x) (num 3)) (not (eq z (s z))))"));
        let i = build_iota(&p("(eq (var w) z)"), &[], 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(i.domain, p("(and (lt (var x) z) (not (eq (var x) z)))"));
        assert_eq!(i.truth, Formula::verum());
    }

    #[test]
    fn truth_block_count() {
        let a = p("(eq z z)");
        let i = build_iota(&p("(eq z (s z))"), std::slice::from_ref(&a), 1, DEFAULT_BUDGET).unwrap();
        let inner =
            Formula::imp(Formula::and(Formula::eq(y(), numeral(0u32)), Formula::not(p("(eq z (s z))"))), a.clone());
        let block = Formula::imp(Formula::eq(x(), quote(&a)), big_and(&[inner]).unwrap());
        assert_eq!(i.truth, big_and(&[block]).unwrap());
    }

    #[test]
    fn translation_examples() {
        let psi = p("(eq z (s z))");
        let i = build_iota(&psi, &[], 2, DEFAULT_BUDGET).unwrap();
        let arith = p("(all x (ex y (lt (var x) (var y))))");
        assert_eq!(translate(&i, &arith).unwrap(), arith);
        let t = translate(&i, &p("(ex-i a (eq (ivar a) (ivar a)))")).unwrap();
        let expect = p("(ex b (and (and (lt (var b) (num 2)) (not (eq z (s z)))) (eq (var b) (var b))))");
        assert_eq!(t, expect);
        assert!(translate(&i, &p("(prec a b)")).is_err());
        let bound = translate_with_bindings(&i, &p("(prec a b)"), &[(id("a"), id("u")), (id("b"), id("v"))]).unwrap();
        assert_eq!(bound, p("(lt (var u) (var v))"));
    }

    #[test]
    fn budget_is_enforced() {
        let pool = [p("(ex-i a (itru a z))")];
        let err = build_iota(&p("(eq z (s z))"), &pool, 3, 50).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn profile_rows() {
        let pool = [p("(eq z z)"), p("(ex-i b (itru b z))")];
        let r = size_profile(&p("(eq z (s z))"), &pool, 3, SizeMode::Literal, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.rows.len(), 4);
        for w in r.rows.windows(2) {
            assert!(w[0].literal <= w[1].literal);
        }
        for row in &r.rows {
            assert!(row.shared <= row.literal);
        }
        assert!(r.to_csv().starts_with("n,literal,shared\n0,"));
    }
}
