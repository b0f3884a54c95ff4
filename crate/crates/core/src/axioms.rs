//! Generators for axioms, axiom instances and bundles of named sentences.

use crate::error::{Error, Result};
use crate::goedel::{eval_closed_term, quote};
use crate::syntax::{
    all_names, big_and, big_or, free_variables, numeral, relativize, require_sentence, substitute_many, unary_variable,
    Formula, Ident, Term,
};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Axiom,
    Conjecture,
    /// A meta-level proof task, not asserted as an axiom.
    Obligation,
    /// An intermediate target expected to be derivable from the axioms.
    Lemma,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Axiom => "axiom",
            Role::Conjecture => "conjecture",
            Role::Obligation => "obligation",
            Role::Lemma => "lemma",
        }
    }

    pub fn from_name(s: &str) -> Option<Role> {
        Some(match s {
            "axiom" => Role::Axiom,
            "conjecture" => Role::Conjecture,
            "obligation" => Role::Obligation,
            "lemma" => Role::Lemma,
            _ => return None,
        })
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSentence {
    pub name: Ident,
    pub role: Role,
    pub body: Formula,
}

/// A named collection of closed sentences with an origin note.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomBundle {
    pub name: Ident,
    pub provenance: String,
    sentences: Vec<NamedSentence>,
}

impl AxiomBundle {
    pub fn new(name: &str, provenance: impl Into<String>) -> Result<Self> {
        Ok(AxiomBundle { name: Ident::new(name)?, provenance: provenance.into(), sentences: Vec::new() })
    }

    pub fn sentences(&self) -> &[NamedSentence] {
        &self.sentences
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&NamedSentence> {
        self.sentences.iter().find(|s| s.name.as_str() == name)
    }

    /// Adds a sentence; names must be fresh and bodies closed.
    pub fn push(&mut self, name: &str, role: Role, body: Formula) -> Result<()> {
        let name = Ident::new(name)?;
        if self.get(name.as_str()).is_some() {
            return Err(Error::Invalid(format!("duplicate sentence name `{name}` in bundle `{}`", self.name)));
        }
        require_sentence(&body)?;
        self.sentences.push(NamedSentence { name, role, body });
        Ok(())
    }

    pub fn extend(&mut self, other: &AxiomBundle) -> Result<()> {
        for s in &other.sentences {
            self.push(s.name.as_str(), s.role, s.body.clone())?;
        }
        Ok(())
    }

    /// Copies `other` with every sentence name prefixed.
    pub fn extend_prefixed(&mut self, prefix: &str, other: &AxiomBundle) -> Result<()> {
        for s in &other.sentences {
            self.push(&format!("{prefix}{}", s.name), s.role, s.body.clone())?;
        }
        Ok(())
    }

    pub fn with_role(&self, role: Role) -> impl Iterator<Item = &NamedSentence> {
        self.sentences.iter().filter(move |s| s.role == role)
    }
}

pub(crate) fn id(name: &str) -> Ident {
    Ident::known(name)
}

fn var(name: &str) -> Term {
    Term::var(id(name))
}

fn tru(f: &Formula) -> Formula {
    Formula::Tru(quote(f))
}

fn require_arithmetical_sentence(f: &Formula) -> Result<()> {
    require_sentence(f)?;
    if !f.is_arithmetical() {
        return Err(Error::Invalid(format!("not a purely arithmetical sentence: {f}")));
    }
    Ok(())
}

fn require_arithmetical_unary(f: &Formula) -> Result<Ident> {
    let v = unary_variable(f)?;
    if !f.is_arithmetical() {
        return Err(Error::Invalid(format!("not a purely arithmetical formula: {f}")));
    }
    Ok(v)
}

/// `φ(t)` for a formula with one free variable `v`.
pub fn instantiate(f: &Formula, v: &Ident, t: Term) -> Formula {
    substitute_many(f, &[(v.clone(), t)])
}

/// `∀x(T(x) → Sent_A(x))`.
pub fn tarski_0() -> Formula {
    Formula::forall(id("x"), Formula::imp(Formula::Tru(var("x")), Formula::SentA(var("x"))))
}

/// Instance-level compositional truth axioms over finite pools.
///
/// The existential clause is schematic; each `(γ, b)` yields the bounded
/// surrogate `T(⌜∃v γ⌝) ↔ ⋁_{x<b} T(⌜γ(x̲)⌝)`, named `tarski4_surrogate_i`.
pub fn tarski_instances(
    sent_pool: &[Formula],
    term_pool: &[(Term, Term)],
    form_pool: &[(Formula, u64)],
) -> Result<AxiomBundle> {
    let mut b = AxiomBundle::new(
        "tarski",
        "compositional truth axioms: sentence-hood, atomic equations, negation, disjunction, bounded existential surrogates",
    )?;
    b.push("tarski_0", Role::Axiom, tarski_0())?;
    for (i, (t1, t2)) in term_pool.iter().enumerate() {
        let n = eval_closed_term(t1)?;
        let m = eval_closed_term(t2)?;
        let atom = Formula::eq(t1.clone(), t2.clone());
        b.push(&format!("tarski1_{i}"), Role::Axiom, Formula::iff(tru(&atom), Formula::eq(numeral(n), numeral(m))))?;
    }
    for f in sent_pool {
        require_arithmetical_sentence(f)?;
    }
    for (i, f) in sent_pool.iter().enumerate() {
        let neg = Formula::not(f.clone());
        b.push(&format!("tarski2_{i}"), Role::Axiom, Formula::iff(tru(&neg), Formula::not(tru(f))))?;
    }
    for (i, f) in sent_pool.iter().enumerate() {
        for (j, g) in sent_pool.iter().enumerate() {
            let or = Formula::or(f.clone(), g.clone());
            b.push(&format!("tarski3_{i}_{j}"), Role::Axiom, Formula::iff(tru(&or), Formula::or(tru(f), tru(g))))?;
        }
    }
    for (i, (g, bound)) in form_pool.iter().enumerate() {
        let v = require_arithmetical_unary(g)?;
        if *bound == 0 {
            return Err(Error::Invalid("witness bound must be at least 1".into()));
        }
        let ex = Formula::exists(v.clone(), g.clone());
        let parts: Vec<Formula> = (0..*bound).map(|x| tru(&instantiate(g, &v, numeral(x)))).collect();
        b.push(&format!("tarski4_surrogate_{i}"), Role::Axiom, Formula::iff(tru(&ex), big_or(&parts)?))?;
    }
    Ok(b)
}

/// `T(⌜⋁φs⌝) ↔ ⋁ T(⌜φ_i⌝)`, both sides grouped to the left.
pub fn dc_instance(phis: &[Formula]) -> Result<Formula> {
    for f in phis {
        require_arithmetical_sentence(f)?;
    }
    let right: Vec<Formula> = phis.iter().map(tru).collect();
    dc_from(phis, &right)
}

/// [`dc_instance`] on members already checked, given `T(⌜φ_i⌝)` for each.
pub(crate) fn dc_from(phis: &[Formula], trus: &[Formula]) -> Result<Formula> {
    Ok(Formula::iff(tru(&big_or(phis)?), big_or(trus)?))
}

/// `T(⌜⋀φs⌝) ↔ T(⌜φ_0⌝) ∧ … ∧ T(⌜φ_{s−1}⌝)`, using `⋀ := ¬⋁¬`.
pub fn cc_instance(phis: &[Formula]) -> Result<Formula> {
    for f in phis {
        require_arithmetical_sentence(f)?;
    }
    let right: Vec<Formula> = phis.iter().map(tru).collect();
    cc_from(phis, &right)
}

/// [`cc_instance`] on members already checked, given `T(⌜φ_i⌝)` for each.
pub(crate) fn cc_from(phis: &[Formula], trus: &[Formula]) -> Result<Formula> {
    let left = tru(&big_and(phis)?);
    let mut right = trus.iter().cloned();
    let first = right.next().ok_or(Error::Empty("conjunction"))?;
    Ok(Formula::iff(left, right.fold(first, Formula::and)))
}

/// `Ind_ψ := ψ(0) → (∀x(ψ(x) → ψ(x+1)) → ∀x ψ(x))`.
pub fn ind_sentence(psi: &Formula) -> Result<Formula> {
    let x = require_arithmetical_unary(psi)?;
    let step = Formula::forall(
        x.clone(),
        Formula::imp(psi.clone(), instantiate(psi, &x, Term::add(Term::var(x.clone()), numeral(1u32)))),
    );
    Ok(Formula::imp(instantiate(psi, &x, Term::zero()), Formula::imp(step, Formula::forall(x.clone(), psi.clone()))))
}

/// `T(⌜Ind_ψ⌝)`.
pub fn ic_instance(psi: &Formula) -> Result<Formula> {
    Ok(tru(&ind_sentence(psi)?))
}

/// `B_φ := ∀α(T_α(⌜φ⌝) ↔ φ^{≺α})` with `α` the least name unused in `φ`.
pub fn biconditional(phi: &Formula) -> Result<Formula> {
    require_sentence(phi)?;
    let names = all_names(phi);
    let alpha = Ident::fresh(|i| names.contains(i));
    Ok(Formula::forall_idx(
        alpha.clone(),
        Formula::iff(Formula::ITru(alpha.clone(), quote(phi)), relativize(phi, &alpha)),
    ))
}

/// `∀u ∃y ∀x[(T(x) ∧ x<u) ↔ x ∈_Ack y]`.
pub fn pc_u() -> Formula {
    Formula::forall(
        id("u"),
        Formula::exists(
            id("y"),
            Formula::forall(
                id("x"),
                Formula::iff(
                    Formula::and(Formula::Tru(var("x")), Formula::lt(var("x"), var("u"))),
                    Formula::Ack(var("x"), var("y")),
                ),
            ),
        ),
    )
}

/// Two times the Cantor pair `π(a, b)`: `(a+b)(a+b+1) + 2b`.
fn twice_pair(a: Term, b: Term) -> Term {
    let s = Term::add(a, b.clone());
    Term::add(Term::mul(s.clone(), Term::succ(s)), Term::mul(numeral(2u32), b))
}

/// `PC_φ` for an `n`-ary formula, with the tuple code built by left-nested
/// Cantor pairing `⟨x_0, …, x_{n−1}⟩ = π(…π(π(x_0, x_1), x_2)…, x_{n−1})`.
/// The intermediate pairs are universally quantified and pinned by their
/// defining equations. For `n = 1` the code is `x_0` itself and for `n = 0`
/// it is `0`.
pub fn pc_phi(phi: &Formula) -> Result<Formula> {
    let fv = free_variables(phi);
    if let Some(v) = fv.iter().find(|v| v.sort == crate::syntax::Sort::Index) {
        return Err(Error::NotClosed(v.to_string()));
    }
    if phi.has_index_syntax() {
        return Err(Error::Invalid("index syntax is not allowed here".into()));
    }
    let xs: Vec<Ident> = fv.into_iter().map(|v| v.name).collect();
    let mut taken = all_names(phi);
    let mut fresh = |preferred: &str| {
        let mut n = id(preferred);
        if taken.contains(&n) {
            n = Ident::fresh(|i| taken.contains(i));
        }
        taken.insert(n.clone());
        n
    };
    let u = fresh("u");
    let y = fresh("y");
    let mut pairs = Vec::new();
    let mut equations = Vec::new();
    let code = match xs.len() {
        0 => Term::zero(),
        1 => Term::var(xs[0].clone()),
        _ => {
            let mut acc = Term::var(xs[0].clone());
            for x in &xs[1..] {
                let p = fresh("p");
                equations.push(Formula::eq(
                    Term::mul(numeral(2u32), Term::var(p.clone())),
                    twice_pair(acc, Term::var(x.clone())),
                ));
                acc = Term::var(p.clone());
                pairs.push(p);
            }
            acc
        }
    };
    let mut core = Formula::iff(
        Formula::and(phi.clone(), Formula::lt(code.clone(), Term::var(u.clone()))),
        Formula::Ack(code, Term::var(y.clone())),
    );
    if let Some((first, rest)) = equations.split_first() {
        let hyp = rest.iter().cloned().fold(first.clone(), Formula::and);
        core = Formula::imp(hyp, core);
    }
    for p in pairs.into_iter().rev() {
        core = Formula::forall(p, core);
    }
    for x in xs.into_iter().rev() {
        core = Formula::forall(x, core);
    }
    Ok(Formula::forall(u, Formula::exists(y, core)))
}

/// Free variables of [`code_of`].
pub const CODE_VARS: (&str, &str) = ("c", "u");

/// `Code(c, φ, u) := ∀x(x<u → (T(⌜φ(x̲)⌝) ↔ x ∈_Ack c))`, with the truth of the
/// substitution instance written as the template atom `SubT(⌜φ⌝, x)`.
pub fn code_of(phi: &Formula) -> Result<Formula> {
    require_arithmetical_unary(phi)?;
    Ok(Formula::forall(
        id("x"),
        Formula::imp(
            Formula::lt(var("x"), var(CODE_VARS.1)),
            Formula::iff(Formula::SubTru(quote(phi), var("x")), Formula::Ack(var("x"), var(CODE_VARS.0))),
        ),
    ))
}

/// `PC(φ) := ∀u ∃c Code(c, φ, u)`.
pub fn pc_of(phi: &Formula) -> Result<Formula> {
    Ok(Formula::forall(id(CODE_VARS.1), Formula::exists(id(CODE_VARS.0), code_of(phi)?)))
}

/// Free variable of [`theta_disjunction`].
pub const THETA_VAR: &str = "x";

/// `θ(x) := ⋁_{i<u}((x = i̲) ∧ φ_i)`.
pub fn theta_disjunction(phis: &[Formula]) -> Result<Formula> {
    for f in phis {
        require_arithmetical_sentence(f)?;
    }
    let parts: Vec<Formula> = phis
        .iter()
        .enumerate()
        .map(|(i, f)| Formula::and(Formula::eq(var(THETA_VAR), numeral(i)), f.clone()))
        .collect();
    big_or(&parts)
}

fn q_list() -> Vec<(&'static str, Formula)> {
    use Formula as F;
    let (x, y, z) = (var("x"), var("y"), var("z"));
    let s = Term::succ;
    let all = |n: &str, f| F::forall(id(n), f);
    vec![
        ("q_succ_inj", all("x", all("y", F::imp(F::eq(s(x.clone()), s(y.clone())), F::eq(x.clone(), y.clone()))))),
        ("q_zero_not_succ", all("x", F::not(F::eq(Term::zero(), s(x.clone()))))),
        (
            "q_pred",
            all(
                "x",
                F::imp(F::not(F::eq(x.clone(), Term::zero())), F::exists(id("y"), F::eq(x.clone(), s(y.clone())))),
            ),
        ),
        ("q_add_zero", all("x", F::eq(Term::add(x.clone(), Term::zero()), x.clone()))),
        (
            "q_add_succ",
            all("x", all("y", F::eq(Term::add(x.clone(), s(y.clone())), s(Term::add(x.clone(), y.clone()))))),
        ),
        ("q_mul_zero", all("x", F::eq(Term::mul(x.clone(), Term::zero()), Term::zero()))),
        (
            "q_mul_succ",
            all(
                "x",
                all(
                    "y",
                    F::eq(Term::mul(x.clone(), s(y.clone())), Term::add(Term::mul(x.clone(), y.clone()), x.clone())),
                ),
            ),
        ),
        (
            "q_lt_def",
            all("x", all("y", F::iff(F::lt(x.clone(), y.clone()), F::exists(id("z"), F::eq(Term::add(s(z), x), y))))),
        ),
    ]
}

/// The eight axioms of Robinson arithmetic.
pub fn q_axioms() -> AxiomBundle {
    let mut b = AxiomBundle::new("q", "Robinson arithmetic Q").expect("static name");
    for (name, f) in q_list() {
        b.push(name, Role::Axiom, f).expect("static axioms are closed and distinct");
    }
    b
}

/// `≺` is irreflexive and transitive.
pub fn order_axioms() -> AxiomBundle {
    use Formula as F;
    let p = |a: &str, b: &str| F::Prec(id(a), id(b));
    let mut b = AxiomBundle::new("order", "strict partial order on indices").expect("static name");
    b.push("order_irrefl", Role::Axiom, F::forall_idx(id("a"), F::not(p("a", "a")))).expect("closed");
    let trans = F::forall_idx(
        id("a"),
        F::forall_idx(id("b"), F::forall_idx(id("c"), F::imp(F::and(p("a", "b"), p("b", "c")), p("a", "c")))),
    );
    b.push("order_trans", Role::Axiom, trans).expect("closed");
    b
}

/// `∀α∃β(β ≺ α)`.
pub fn descending() -> Formula {
    Formula::forall_idx(id("a"), Formula::exists_idx(id("b"), Formula::Prec(id("b"), id("a"))))
}

/// `∃α(α = α)`.
pub fn nonempty() -> Formula {
    Formula::exists_idx(id("a"), Formula::IdxEq(id("a"), id("a")))
}

/// Q, the order axioms, the descending and nonempty axioms, `B_φ` for each
/// pool member, and the conjecture `false`.
pub fn dtb_bundle(phis: &[Formula]) -> Result<AxiomBundle> {
    let mut b = AxiomBundle::new(
        "dtb",
        format!(
            "finite fragment of descending iterated truth biconditionals over a pool of {} sentence(s); inconsistency target",
            phis.len()
        ),
    )?;
    b.extend(&q_axioms())?;
    b.extend(&order_axioms())?;
    b.push("descending", Role::Axiom, descending())?;
    b.push("nonempty", Role::Axiom, nonempty())?;
    for (i, f) in phis.iter().enumerate() {
        b.push(&format!("b_{i}"), Role::Axiom, biconditional(f)?)?;
    }
    b.push("goal", Role::Conjecture, Formula::falsum())?;
    Ok(b)
}

/// `2^u − 1`, the Ackermann code of `{0, …, u−1}`.
pub fn predecessors_code(u: u64) -> BigUint {
    (BigUint::from(1u32) << u) - 1u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{desugar, parse};

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn tarski_examples() {
        let b = tarski_instances(&[], &[(numeral(1u32), numeral(1u32))], &[]).unwrap();
        let expect = Formula::iff(tru(&p("(eq (s z) (s z))")), p("(eq (s z) (s z))"));
        assert_eq!(b.get("tarski1_0").unwrap().body, expect);

        let a = p("(eq z z)");
        let b = tarski_instances(std::slice::from_ref(&a), &[], &[]).unwrap();
        let expect = Formula::iff(tru(&Formula::not(a.clone())), Formula::not(tru(&a)));
        assert_eq!(b.get("tarski2_0").unwrap().body, expect);

        let b = tarski_instances(&[], &[], &[]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.sentences()[0].body, tarski_0());
    }

    #[test]
    fn tarski_surrogate() {
        let g = p("(eq (var v) (s z))");
        let b = tarski_instances(&[], &[], &[(g, 2)]).unwrap();
        let f = &b.get("tarski4_surrogate_0").unwrap().body;
        let expect = Formula::iff(
            tru(&p("(ex v (eq (var v) (s z)))")),
            Formula::or(tru(&p("(eq z (s z))")), tru(&p("(eq (s z) (s z))"))),
        );
        assert_eq!(f, &expect);
        assert!(tarski_instances(&[p("(eq (var x) z)")], &[], &[]).is_err());
    }

    #[test]
    fn dc_cc_shapes() {
        let (a, b, c) = (p("(eq z z)"), p("(lt z z)"), p("(eq z (s z))"));
        let dc = dc_instance(&[a.clone(), b.clone(), c.clone()]).unwrap();
        let left = Formula::or(Formula::or(a.clone(), b.clone()), c.clone());
        let right = Formula::or(Formula::or(tru(&a), tru(&b)), tru(&c));
        assert_eq!(dc, Formula::iff(tru(&left), right));
        assert_eq!(dc_instance(std::slice::from_ref(&a)).unwrap(), Formula::iff(tru(&a), tru(&a)));

        let cc = cc_instance(&[a.clone(), b.clone()]).unwrap();
        let conj = Formula::not(Formula::or(Formula::not(a.clone()), Formula::not(b.clone())));
        assert_eq!(cc, Formula::iff(tru(&conj), Formula::and(tru(&a), tru(&b))));
        let cc1 = cc_instance(std::slice::from_ref(&a)).unwrap();
        assert_eq!(cc1, Formula::iff(tru(&Formula::not(Formula::not(a.clone()))), tru(&a)));
        assert!(dc_instance(&[]).is_err());
    }

    #[test]
    fn induction_shape() {
        let psi = p("(eq (var x) (var x))");
        let ind = ind_sentence(&psi).unwrap();
        let expect = p(
            "(imp (eq z z) (imp (all x (imp (eq (var x) (var x)) (eq (+ (var x) (s z)) (+ (var x) (s z))))) (all x (eq (var x) (var x)))))",
        );
        assert_eq!(ind, expect);
        assert!(ind_sentence(&p("(eq z z)")).is_err());
        assert_eq!(ic_instance(&psi).unwrap(), tru(&ind));
    }

    #[test]
    fn biconditional_shapes() {
        let f = p("(eq z z)");
        let b = biconditional(&f).unwrap();
        assert_eq!(b, Formula::forall_idx(id("a"), Formula::iff(Formula::ITru(id("a"), quote(&f)), f.clone())));

        let g = p("(ex-i b (eq (ivar b) (ivar b)))");
        let b = biconditional(&g).unwrap();
        let expect = p(&format!(
            "(all-i a (iff (itru a (num {})) (ex-i b (and (prec b a) (eq (ivar b) (ivar b))))))",
            crate::goedel::encode_formula(&g)
        ));
        assert_eq!(b, expect);
        assert!(biconditional(&p("(eq (var x) z)")).is_err());
    }

    #[test]
    fn pc_shapes() {
        let expect = p("(all u (ex y (all x (iff (and (tru (var x)) (lt (var x) (var u))) (ack (var x) (var y))))))");
        assert_eq!(pc_u(), expect);
        let f = p("(eq (var x) (var x))");
        assert_eq!(pc_of(&f).unwrap(), Formula::forall(id("u"), Formula::exists(id("c"), code_of(&f).unwrap())));
        let fv: Vec<String> = free_variables(&code_of(&f).unwrap()).iter().map(|v| v.name.to_string()).collect();
        assert_eq!(fv, ["c", "u"]);

        let unary = pc_phi(&p("(tru (var x))")).unwrap();
        assert_eq!(desugar(&unary), desugar(&expect));
        let binary = pc_phi(&p("(lt (var x) (var y))")).unwrap();
        assert!(binary.is_closed());
    }

    #[test]
    fn theta_shapes() {
        let (a, b) = (p("(eq z z)"), p("(lt z z)"));
        let t = theta_disjunction(std::slice::from_ref(&a)).unwrap();
        assert_eq!(t, p("(and (eq (var x) z) (eq z z))"));
        let t = theta_disjunction(&[a, b]).unwrap();
        assert_eq!(t, p("(or (and (eq (var x) z) (eq z z)) (and (eq (var x) (s z)) (lt z z)))"));
        assert!(theta_disjunction(&[]).is_err());
    }

    #[test]
    fn bundles() {
        assert_eq!(q_axioms().len(), 8);
        assert!(q_axioms().sentences().iter().all(|s| s.body.is_arithmetical()));
        assert_eq!(order_axioms().len(), 2);
        let d = dtb_bundle(&[]).unwrap();
        assert_eq!(d.len(), 8 + 2 + 2 + 1);
        assert_eq!(d.with_role(Role::Conjecture).count(), 1);
        let d = dtb_bundle(&[p("(eq z z)")]).unwrap();
        assert_eq!(d.get("b_0").unwrap().body, biconditional(&p("(eq z z)")).unwrap());
        let mut dup = AxiomBundle::new("x", "").unwrap();
        dup.push("a", Role::Axiom, Formula::verum()).unwrap();
        assert!(dup.push("a", Role::Axiom, Formula::verum()).is_err());
        assert!(dup.push("b", Role::Axiom, p("(eq (var x) z)")).is_err());
    }

    #[test]
    fn predecessors() {
        assert_eq!(predecessors_code(0), BigUint::from(0u32));
        assert_eq!(predecessors_code(3), BigUint::from(7u32));
    }
}
