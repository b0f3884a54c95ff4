use super::{Formula, Ident, Sort, Term, Var};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use std::collections::BTreeSet;

/// Rebuilds `f` with `g` applied to each immediate subformula.
pub(crate) fn map_children(f: &Formula, mut g: impl FnMut(&Formula) -> Formula) -> Formula {
    use Formula::*;
    let b = |x: Formula| Box::new(x);
    match f {
        Eq(..) | Lt(..) | Tru(_) | ITru(..) | Prec(..) | Ack(..) | Diag(..) | ExpRel(..) | IdxEq(..) | SubTru(..)
        | SentA(_) => f.clone(),
        Not(a) => Not(b(g(a))),
        Or(x, y) => Or(b(g(x)), b(g(y))),
        And(x, y) => And(b(g(x)), b(g(y))),
        Imp(x, y) => Imp(b(g(x)), b(g(y))),
        Iff(x, y) => Iff(b(g(x)), b(g(y))),
        ExistsNum(v, a) => ExistsNum(v.clone(), b(g(a))),
        ForallNum(v, a) => ForallNum(v.clone(), b(g(a))),
        ExistsIdx(v, a) => ExistsIdx(v.clone(), b(g(a))),
        ForallIdx(v, a) => ForallIdx(v.clone(), b(g(a))),
        BoundedExists(v, t, a) => BoundedExists(v.clone(), t.clone(), b(g(a))),
        BoundedForall(v, t, a) => BoundedForall(v.clone(), t.clone(), b(g(a))),
    }
}

/// Free variables of both sorts.
pub fn free_variables(f: &Formula) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    visit_free(f, &mut Vec::new(), &mut |name, sort| {
        out.insert(Var { name: name.clone(), sort });
        true
    });
    out
}

/// Some free variable of `f`, if any.
pub(crate) fn first_free_variable(f: &Formula) -> Option<Var> {
    let mut found = None;
    visit_free(f, &mut Vec::new(), &mut |name, sort| {
        found = Some(Var { name: name.clone(), sort });
        false
    });
    found
}

/// Calls `visit` on each free occurrence until it returns `false`.
fn visit_free<'a>(
    f: &'a Formula,
    bound: &mut Vec<(&'a Ident, Sort)>,
    visit: &mut impl FnMut(&'a Ident, Sort) -> bool,
) -> bool {
    let mut check = |name: &'a Ident, sort: Sort, bound: &Vec<(&'a Ident, Sort)>| {
        bound.iter().any(|(b, s)| *b == name && *s == sort) || visit(name, sort)
    };
    for t in f.terms() {
        if !t.visit_vars(&mut |x| check(x, Sort::Number, bound)) {
            return false;
        }
    }
    let ok = match f {
        Formula::ITru(a, _) => check(a, Sort::Index, bound),
        Formula::Prec(a, c) | Formula::IdxEq(a, c) => check(a, Sort::Index, bound) && check(c, Sort::Index, bound),
        _ => true,
    };
    if !ok {
        return false;
    }
    let binder = match f {
        Formula::ExistsNum(x, _)
        | Formula::ForallNum(x, _)
        | Formula::BoundedExists(x, _, _)
        | Formula::BoundedForall(x, _, _) => Some((x, Sort::Number)),
        Formula::ExistsIdx(a, _) | Formula::ForallIdx(a, _) => Some((a, Sort::Index)),
        _ => None,
    };
    let pushed = binder.is_some();
    if let Some(v) = binder {
        bound.push(v);
    }
    let ok = f.children().all(|c| visit_free(c, bound, visit));
    if pushed {
        bound.pop();
    }
    ok
}

/// Every identifier occurring in `f`, free or bound, of either sort.
pub fn all_names(f: &Formula) -> BTreeSet<Ident> {
    fn go(f: &Formula, out: &mut BTreeSet<Ident>) {
        for t in f.terms() {
            t.collect_vars(out);
        }
        match f {
            Formula::ITru(a, _) => {
                out.insert(a.clone());
            }
            Formula::Prec(a, b) | Formula::IdxEq(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Formula::ExistsNum(x, _)
            | Formula::ForallNum(x, _)
            | Formula::BoundedExists(x, _, _)
            | Formula::BoundedForall(x, _, _)
            | Formula::ExistsIdx(x, _)
            | Formula::ForallIdx(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        }
        for c in f.children() {
            go(c, out);
        }
    }
    let mut out = BTreeSet::new();
    go(f, &mut out);
    out
}

fn occurs_free_number(f: &Formula, v: &Ident) -> bool {
    if f.terms().any(|t| t.mentions(v)) {
        return true;
    }
    match f {
        Formula::ExistsNum(x, a)
        | Formula::ForallNum(x, a)
        | Formula::BoundedExists(x, _, a)
        | Formula::BoundedForall(x, _, a) => x != v && occurs_free_number(a, v),
        _ => f.children().into_iter().any(|c| occurs_free_number(c, v)),
    }
}

/// The numeral `S^n(0)`.
pub fn numeral(n: impl Into<BigUint>) -> Term {
    Term::Num(n.into())
}

fn subst_term(t: &Term, map: &[(Ident, Term)]) -> Term {
    match t {
        Term::Var(v) => map.iter().find(|(w, _)| w == v).map_or_else(|| t.clone(), |(_, r)| r.clone()),
        Term::Num(_) => t.clone(),
        Term::Succ(a) => Term::succ(subst_term(a, map)),
        Term::Add(a, b) => Term::add(subst_term(a, map), subst_term(b, map)),
        Term::Mul(a, b) => Term::mul(subst_term(a, map), subst_term(b, map)),
    }
}

fn subst_formula(f: &Formula, map: &[(Ident, Term)], avoid: &mut BTreeSet<Ident>) -> Formula {
    use Formula::*;
    let live: Vec<(Ident, Term)> = map.iter().filter(|(v, _)| occurs_free_number(f, v)).cloned().collect();
    if live.is_empty() {
        return f.clone();
    }
    let st = |t: &Term| subst_term(t, &live);
    match f {
        Eq(a, b) => Eq(st(a), st(b)),
        Lt(a, b) => Lt(st(a), st(b)),
        Tru(a) => Tru(st(a)),
        ITru(i, a) => ITru(i.clone(), st(a)),
        Ack(a, b) => Ack(st(a), st(b)),
        Diag(a, b) => Diag(st(a), st(b)),
        ExpRel(a, b) => ExpRel(st(a), st(b)),
        SubTru(a, b) => SubTru(st(a), st(b)),
        SentA(a) => SentA(st(a)),
        Prec(..) | IdxEq(..) => f.clone(),
        ExistsNum(x, body) | ForallNum(x, body) => {
            let (x, body) = binder_subst(x, body, &live, avoid);
            match f {
                ExistsNum(..) => ExistsNum(x, Box::new(body)),
                _ => ForallNum(x, Box::new(body)),
            }
        }
        BoundedExists(x, bound, body) | BoundedForall(x, bound, body) => {
            let bound = st(bound);
            let (x, body) = binder_subst(x, body, &live, avoid);
            match f {
                BoundedExists(..) => BoundedExists(x, bound, Box::new(body)),
                _ => BoundedForall(x, bound, Box::new(body)),
            }
        }
        _ => map_children(f, |c| subst_formula(c, &live, avoid)),
    }
}

fn binder_subst(x: &Ident, body: &Formula, map: &[(Ident, Term)], avoid: &mut BTreeSet<Ident>) -> (Ident, Formula) {
    let inner: Vec<(Ident, Term)> =
        map.iter().filter(|(v, _)| v != x && occurs_free_number(body, v)).cloned().collect();
    if inner.is_empty() {
        return (x.clone(), body.clone());
    }
    if inner.iter().any(|(_, t)| t.mentions(x)) {
        let fresh = Ident::fresh(|id| avoid.contains(id));
        avoid.insert(fresh.clone());
        let renamed = subst_formula(body, &[(x.clone(), Term::Var(fresh.clone()))], avoid);
        (fresh.clone(), subst_formula(&renamed, &inner, avoid))
    } else {
        (x.clone(), subst_formula(body, &inner, avoid))
    }
}

/// Simultaneous capture-avoiding substitution of number terms for number
/// variables. Bound variables that would capture are renamed to the least
/// identifier unused anywhere in the formula or the substituted terms.
pub fn substitute_many(f: &Formula, map: &[(Ident, Term)]) -> Formula {
    let mut avoid = all_names(f);
    for (v, t) in map {
        avoid.insert(v.clone());
        t.collect_vars(&mut avoid);
    }
    subst_formula(f, map, &mut avoid)
}

/// Capture-avoiding substitution of `t` for the number variable `v`.
pub fn substitute(f: &Formula, v: &Var, t: &Term) -> Result<Formula> {
    if v.sort != Sort::Number {
        return Err(Error::SortMismatch(format!("cannot substitute a number term for index variable `{}`", v.name)));
    }
    Ok(substitute_many(f, &[(v.name.clone(), t.clone())]))
}

/// Eliminates sugar: only `¬`, `∨`, `∃` (both sorts) and atoms remain.
pub fn desugar(f: &Formula) -> Formula {
    use Formula::*;
    let nb = |x: Formula| Box::new(Formula::not(x));
    match f {
        ForallNum(x, a) => Formula::not(ExistsNum(x.clone(), nb(desugar(a)))),
        ForallIdx(x, a) => Formula::not(ExistsIdx(x.clone(), nb(desugar(a)))),
        And(a, b) => Formula::not(Or(nb(desugar(a)), nb(desugar(b)))),
        Imp(a, b) => Or(nb(desugar(a)), Box::new(desugar(b))),
        Iff(a, b) => desugar(&Formula::and(
            Formula::imp((**a).clone(), (**b).clone()),
            Formula::imp((**b).clone(), (**a).clone()),
        )),
        BoundedExists(x, t, a) | BoundedForall(x, t, a) => {
            let (x, a) = if t.mentions(x) {
                let mut avoid = all_names(f);
                let fresh = Ident::fresh(|id| avoid.contains(id));
                avoid.insert(fresh.clone());
                let body = subst_formula(a, &[(x.clone(), Term::Var(fresh.clone()))], &mut avoid);
                (fresh, body)
            } else {
                (x.clone(), (**a).clone())
            };
            let guard = Formula::not(Formula::lt(t.clone(), Term::Var(x.clone())));
            let sugared = match f {
                BoundedExists(..) => Formula::exists(x, Formula::and(guard, a)),
                _ => Formula::forall(x, Formula::imp(guard, a)),
            };
            desugar(&sugared)
        }
        _ => map_children(f, desugar),
    }
}

/// No sugar nodes remain.
pub fn is_desugared(f: &Formula) -> bool {
    use Formula::*;
    !matches!(f, And(..) | Imp(..) | Iff(..) | ForallNum(..) | ForallIdx(..) | BoundedExists(..) | BoundedForall(..))
        && f.children().into_iter().all(is_desugared)
}

/// Checks that `f` has no free variables of either sort.
pub fn require_sentence(f: &Formula) -> Result<()> {
    let fv = free_variables(f);
    if fv.is_empty() {
        return Ok(());
    }
    let names: Vec<String> = fv.iter().map(|v| v.to_string()).collect();
    Err(Error::NotClosed(names.join(", ")))
}

/// The single free number variable of `f`; index variables may not be free.
pub fn unary_variable(f: &Formula) -> Result<Ident> {
    let fv = free_variables(f);
    if let Some(v) = fv.iter().find(|v| v.sort == Sort::Index) {
        return Err(Error::NotClosed(v.to_string()));
    }
    let mut it = fv.into_iter();
    match (it.next(), it.next()) {
        (Some(v), None) => Ok(v.name),
        (None, _) => Err(Error::Arity { expected: 1, found: 0 }),
        (Some(_), Some(_)) => Err(Error::Arity { expected: 1, found: 2 + it.count() }),
    }
}

/// Universal closure: number variables outermost, index variables innermost,
/// each group in identifier order.
pub fn universal_closure(f: &Formula) -> Formula {
    let fv = free_variables(f);
    let mut out = f.clone();
    for v in fv.iter().filter(|v| v.sort == Sort::Index).rev() {
        out = Formula::forall_idx(v.name.clone(), out);
    }
    for v in fv.iter().filter(|v| v.sort == Sort::Number).rev() {
        out = Formula::forall(v.name.clone(), out);
    }
    out
}

/// Left-grouped disjunction: `[a] ↦ a`, `[a, b, c] ↦ (a ∨ b) ∨ c`.
pub fn big_or(parts: &[Formula]) -> Result<Formula> {
    let (first, rest) = parts.split_first().ok_or(Error::Empty("disjunction"))?;
    Ok(rest.iter().fold(first.clone(), |acc, p| Formula::or(acc, p.clone())))
}

/// `¬ ⋁ ¬φ_i`, applied literally.
pub fn big_and(parts: &[Formula]) -> Result<Formula> {
    if parts.is_empty() {
        return Err(Error::Empty("conjunction"));
    }
    let negated: Vec<Formula> = parts.iter().cloned().map(Formula::not).collect();
    Ok(Formula::not(big_or(&negated)?))
}

fn rename_free_index(f: &Formula, from: &Ident, to: &Ident) -> Formula {
    use Formula::*;
    let r = |a: &Ident| if a == from { to.clone() } else { a.clone() };
    match f {
        ITru(a, t) => ITru(r(a), t.clone()),
        Prec(a, b) => Prec(r(a), r(b)),
        IdxEq(a, b) => IdxEq(r(a), r(b)),
        ExistsIdx(a, _) | ForallIdx(a, _) if a == from => f.clone(),
        _ => map_children(f, |c| rename_free_index(c, from, to)),
    }
}

/// Renames every bound occurrence of the index variable `alpha` to a fresh
/// identifier not in `avoid` (which is extended with the names chosen).
pub fn rename_bound_index(f: &Formula, alpha: &Ident, avoid: &mut BTreeSet<Ident>) -> Formula {
    use Formula::*;
    match f {
        ExistsIdx(a, body) | ForallIdx(a, body) if a == alpha => {
            let fresh = Ident::fresh(|id| avoid.contains(id));
            avoid.insert(fresh.clone());
            let body = rename_bound_index(&rename_free_index(body, alpha, &fresh), alpha, avoid);
            match f {
                ExistsIdx(..) => ExistsIdx(fresh, Box::new(body)),
                _ => ForallIdx(fresh, Box::new(body)),
            }
        }
        _ => map_children(f, |c| rename_bound_index(c, alpha, avoid)),
    }
}

fn binds_index(f: &Formula, alpha: &Ident) -> bool {
    matches!(f, Formula::ExistsIdx(a, _) | Formula::ForallIdx(a, _) if a == alpha)
        || f.children().into_iter().any(|c| binds_index(c, alpha))
}

/// Restricts every index quantifier to the indices below `alpha`:
/// `∃β ψ ↦ ∃β(β ≺ α ∧ ψ')` and `∀β ψ ↦ ∀β(β ≺ α → ψ')`. Bound
/// occurrences of `alpha` itself are renamed away first.
pub fn relativize(f: &Formula, alpha: &Ident) -> Formula {
    fn go(f: &Formula, alpha: &Ident) -> Formula {
        use Formula::*;
        match f {
            ExistsIdx(b, body) => {
                Formula::exists_idx(b.clone(), Formula::and(Prec(b.clone(), alpha.clone()), go(body, alpha)))
            }
            ForallIdx(b, body) => {
                Formula::forall_idx(b.clone(), Formula::imp(Prec(b.clone(), alpha.clone()), go(body, alpha)))
            }
            _ => map_children(f, |c| go(c, alpha)),
        }
    }
    if binds_index(f, alpha) {
        let mut avoid = all_names(f);
        avoid.insert(alpha.clone());
        go(&rename_bound_index(f, alpha, &mut avoid), alpha)
    } else {
        go(f, alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn id(s: &str) -> Ident {
        Ident::known(s)
    }
    fn v(s: &str) -> Term {
        Term::var(id(s))
    }
    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn desugar_examples() {
        let a = Formula::eq(Term::zero(), Term::zero());
        let b = Formula::lt(Term::zero(), Term::zero());
        assert_eq!(
            desugar(&Formula::and(a.clone(), b.clone())),
            Formula::not(Formula::or(Formula::not(a.clone()), Formula::not(b.clone())))
        );
        let phi = Formula::eq(v("x"), Term::zero());
        assert_eq!(
            desugar(&Formula::forall(id("x"), phi.clone())),
            Formula::not(Formula::exists(id("x"), Formula::not(phi.clone())))
        );
        let prim = Formula::or(Formula::not(a.clone()), Formula::exists(id("x"), phi));
        assert_eq!(desugar(&prim), prim);
    }

    #[test]
    fn desugar_bounded_quantifier() {
        let f = p("(ex-le y (s (s z)) (eq (var y) (var y)))");
        let expected = p("(ex y (not (or (not (not (lt (s (s z)) (var y)))) (not (eq (var y) (var y))))))");
        assert_eq!(desugar(&f), expected);
        // bound mentioning the bound variable refers to the outer one
        let f = p("(ex-le x (var x) (eq (var x) z))");
        let d = desugar(&f);
        assert_eq!(free_variables(&d), free_variables(&f));
    }

    #[test]
    fn substitute_examples() {
        let x = Var::number(id("x"));
        let f = Formula::eq(v("x"), Term::zero());
        assert_eq!(substitute(&f, &x, &Term::num(1u32)).unwrap(), Formula::eq(Term::num(1u32), Term::zero()));
        let g = Formula::exists(id("x"), Formula::eq(v("x"), v("x")));
        assert_eq!(substitute(&g, &x, &Term::zero()).unwrap(), g);
        assert!(substitute(&g, &Var::index(id("a")), &Term::zero()).is_err());
    }

    #[test]
    fn substitute_renames_to_avoid_capture() {
        let f = p("(ex y (eq (var x) (var y)))");
        let t = Term::succ(v("y"));
        let out = substitute(&f, &Var::number(id("x")), &t).unwrap();
        // least name unused in formula and term: `a`
        assert_eq!(out, p("(ex a (eq (s (var y)) (var a)))"));
        assert!(free_variables(&out).contains(&Var::number(id("y"))));
    }

    #[test]
    fn free_variable_examples() {
        assert!(free_variables(&p("(eq z z)")).is_empty());
        let fv = free_variables(&p("(itru a (var x))"));
        assert_eq!(fv, [Var::index(id("a")), Var::number(id("x"))].into_iter().collect());
        let fv = free_variables(&p("(ex-i a (prec a b))"));
        assert_eq!(fv, [Var::index(id("b"))].into_iter().collect());
    }

    #[test]
    fn closure_examples() {
        let closed = p("(eq z z)");
        assert_eq!(universal_closure(&closed), closed);
        assert_eq!(universal_closure(&p("(eq (var x) (var y))")), p("(all x (all y (eq (var x) (var y))))"));
        let c = universal_closure(&p("(itru a (var x))"));
        assert_eq!(c, p("(all x (all-i a (itru a (var x))))"));
        assert!(free_variables(&c).is_empty());
    }

    #[test]
    fn numeral_examples() {
        assert_eq!(numeral(0u32), Term::zero());
        assert_eq!(numeral(2u32), Term::succ(Term::succ(Term::zero())));
        assert_eq!(numeral(7u32).node_count(), 8);
    }

    #[test]
    fn big_connectives() {
        let a = p("(eq z z)");
        let b = p("(lt z z)");
        let c = p("(tru z)");
        assert_eq!(big_or(std::slice::from_ref(&a)).unwrap(), a);
        assert_eq!(
            big_or(&[a.clone(), b.clone(), c.clone()]).unwrap(),
            Formula::or(Formula::or(a.clone(), b.clone()), c.clone())
        );
        assert_eq!(big_or(&[]), Err(Error::Empty("disjunction")));
        assert_eq!(big_and(std::slice::from_ref(&a)).unwrap(), Formula::not(Formula::not(a.clone())));
        assert_eq!(
            big_and(&[a.clone(), b.clone()]).unwrap(),
            Formula::not(Formula::or(Formula::not(a), Formula::not(b)))
        );
        assert!(big_and(&[]).is_err());
    }

    #[test]
    fn relativize_examples() {
        let arith = p("(all x (ex y (lt (var x) (var y))))");
        assert_eq!(relativize(&arith, &id("a")), arith);

        let f = Formula::exists_idx(id("b"), Formula::Prec(id("b"), id("b")));
        assert_eq!(
            relativize(&f, &id("a")),
            Formula::exists_idx(
                id("b"),
                Formula::and(Formula::Prec(id("b"), id("a")), Formula::Prec(id("b"), id("b")))
            )
        );
    }

    #[test]
    fn relativize_renames_bound_alpha() {
        let f = p("(ex-i a (itru a z))");
        let r = relativize(&f, &id("a"));
        // `a` is taken, so the bound variable becomes `b`
        assert_eq!(r, p("(ex-i b (and (prec b a) (itru b z)))"));
        assert_eq!(free_variables(&r), [Var::index(id("a"))].into_iter().collect());
        let guards = count(&r, &|f| matches!(f, Formula::Prec(_, a) if a.as_str() == "a"));
        assert_eq!(guards, 1);
    }

    fn count(f: &Formula, pred: &impl Fn(&Formula) -> bool) -> usize {
        usize::from(pred(f)) + f.children().map(|c| count(c, pred)).sum::<usize>()
    }
}
