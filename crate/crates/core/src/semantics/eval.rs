use super::{Env, TriBool};
use crate::diagonal::diagonal_code;
use crate::error::{Error, Result};
use crate::goedel::{ack_bit, decode_formula, eval_term, is_sentence_a, GoedelNumber};
use crate::syntax::{free_variables, numeral, substitute_many, unary_variable, Formula, Ident, Term};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::rc::Rc;

/// Bounds up to this size are searched exactly even when they exceed the fuel.
const EXACT_SEARCH_LIMIT: u64 = 1 << 16;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Range {
    /// Exactly one candidate can satisfy the body.
    Pin,
    /// Candidates below the bound.
    Below,
}

/// Value of `T(g)` at some fuel, with the depth and search usage it incurred.
#[derive(Clone, Copy)]
struct Verdict {
    value: TriBool,
    depth: u64,
    search: u64,
}

/// Decoded sentences and truth verdicts by code, shared across evaluations.
#[derive(Default)]
pub(crate) struct Memo {
    sentences: HashMap<BigUint, Option<Rc<Formula>>>,
    verdicts: HashMap<(BigUint, u64), Verdict>,
}

/// Three-valued evaluator with fuel.
struct Evaluator<'m> {
    stack: Vec<(Ident, BigUint)>,
    memo: &'m mut Memo,
    /// Deepest truth unfolding reached.
    depth_used: u64,
    /// Largest fuel spent on an inconclusive search.
    search_used: u64,
}

impl<'m> Evaluator<'m> {
    fn new(env: &Env, memo: &'m mut Memo) -> Self {
        Evaluator {
            stack: env.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            memo,
            depth_used: 0,
            search_used: 0,
        }
    }

    fn fuel_used(&self) -> u64 {
        self.depth_used.max(self.search_used)
    }

    /// `T(g)`: false for non-sentences, memoized per code and fuel.
    fn tru(&mut self, g: BigUint, fuel: u64, depth: u64) -> Result<TriBool> {
        let key = (g, fuel);
        let verdict = match self.memo.verdicts.get(&key) {
            Some(v) => *v,
            None => {
                let Some(s) = self.sentence(key.0.clone()) else {
                    return Ok(TriBool::False);
                };
                let saved = (self.depth_used, self.search_used);
                (self.depth_used, self.search_used) = (0, 0);
                let value = self.truth(&s, fuel, 0);
                let v = Verdict { value: value?, depth: self.depth_used, search: self.search_used };
                (self.depth_used, self.search_used) = saved;
                self.memo.verdicts.insert(key, v);
                v
            }
        };
        self.depth_used = self.depth_used.max(depth + verdict.depth);
        self.search_used = self.search_used.max(verdict.search);
        Ok(verdict.value)
    }

    fn term(&self, t: &Term) -> Result<BigUint> {
        eval_term(t, &|x| self.lookup(x))
    }

    fn lookup(&self, x: &Ident) -> Option<BigUint> {
        self.stack.iter().rev().find(|(k, _)| k == x).map(|(_, v)| v.clone())
    }

    /// The closed, index-free sentence coded by `g`, if any.
    fn sentence(&mut self, g: BigUint) -> Option<Rc<Formula>> {
        self.memo
            .sentences
            .entry(g)
            .or_insert_with_key(|g| {
                let f = decode_formula(&GoedelNumber::new(g.clone())).ok()?;
                (f.is_closed() && !f.has_index_syntax()).then(|| Rc::new(f))
            })
            .clone()
    }

    fn truth(&mut self, f: &Formula, fuel: u64, depth: u64) -> Result<TriBool> {
        if fuel == 0 {
            return Ok(TriBool::Unknown);
        }
        self.depth_used = self.depth_used.max(depth + 1);
        let saved = std::mem::take(&mut self.stack);
        let out = self.eval(f, fuel - 1, depth + 1);
        self.stack = saved;
        out
    }

    fn eval(&mut self, f: &Formula, fuel: u64, depth: u64) -> Result<TriBool> {
        use Formula::*;
        Ok(match f {
            Eq(a, b) => (self.term(a)? == self.term(b)?).into(),
            Lt(a, b) => (self.term(a)? < self.term(b)?).into(),
            Ack(a, b) => ack_bit(&self.term(a)?, &self.term(b)?).into(),
            Diag(a, b) => {
                let b = self.term(b)?;
                diag_value(self.term(a)?).is_some_and(|d| d == b).into()
            }
            ExpRel(a, b) => is_power(&self.term(a)?, &self.term(b)?).into(),
            SentA(a) => is_sentence_a(&GoedelNumber::new(self.term(a)?)).into(),
            Tru(a) => {
                let g = self.term(a)?;
                self.tru(g, fuel, depth)?
            }
            SubTru(g, x) => {
                let g = self.term(g)?;
                let x = self.term(x)?;
                match substitution_instance(g, x) {
                    None => TriBool::False,
                    Some(s) => self.truth(&s, fuel, depth)?,
                }
            }
            ITru(..) | Prec(..) | IdxEq(..) | ExistsIdx(..) | ForallIdx(..) => {
                return Err(Error::Unsupported("index syntax; translate the formula first".into()))
            }
            Not(a) => self.eval(a, fuel, depth)?.not(),
            Or(a, b) => {
                let l = self.eval(a, fuel, depth)?;
                if l == TriBool::True {
                    return Ok(l);
                }
                l.or(self.eval(b, fuel, depth)?)
            }
            And(a, b) => {
                let l = self.eval(a, fuel, depth)?;
                if l == TriBool::False {
                    return Ok(l);
                }
                l.and(self.eval(b, fuel, depth)?)
            }
            Imp(a, b) => {
                let l = self.eval(a, fuel, depth)?;
                if l == TriBool::False {
                    return Ok(TriBool::True);
                }
                l.implies(self.eval(b, fuel, depth)?)
            }
            Iff(a, b) => self.eval(a, fuel, depth)?.iff(self.eval(b, fuel, depth)?),
            ExistsNum(x, body) => self.exists(x, body, true, fuel, depth)?,
            ForallNum(x, body) => self.exists(x, body, false, fuel, depth)?.not(),
            BoundedExists(x, t, body) | BoundedForall(x, t, body) => {
                let positive = matches!(f, BoundedExists(..));
                let end = self.term(t)? + 1u32;
                let out = self.search(x, body, positive, BigUint::zero(), end, fuel, depth)?;
                if positive {
                    out
                } else {
                    out.not()
                }
            }
        })
    }

    /// `∃x body` when `positive`, otherwise `∃x ¬body`.
    fn exists(&mut self, x: &Ident, body: &Formula, positive: bool, fuel: u64, depth: u64) -> Result<TriBool> {
        let mut conj = Vec::new();
        flatten(body, positive, &mut conj);
        let mut bound: Option<BigUint> = None;
        for (c, pol) in conj {
            match self.guard(x, c, pol)? {
                Some((Range::Pin, None)) => return Ok(TriBool::False),
                Some((Range::Pin, Some(v))) => {
                    let end = &v + 1u32;
                    return self.search(x, body, positive, v, end, fuel, depth);
                }
                Some((Range::Below, Some(b))) if bound.as_ref().is_none_or(|old| b < *old) => bound = Some(b),
                _ => {}
            }
        }
        match bound {
            Some(b) if b <= BigUint::from(EXACT_SEARCH_LIMIT.max(fuel)) => {
                self.search(x, body, positive, BigUint::zero(), b, fuel, depth)
            }
            _ => {
                self.search_used = self.search_used.max(fuel);
                let found = self.search(x, body, positive, BigUint::zero(), BigUint::from(fuel), fuel, depth)?;
                Ok(if found == TriBool::True { found } else { TriBool::Unknown })
            }
        }
    }

    /// Recognizes conjuncts that pin `x` to one value or bound it above.
    fn guard(&self, x: &Ident, c: &Formula, pol: bool) -> Result<Option<(Range, Option<BigUint>)>> {
        let is_x = |t: &Term| matches!(t, Term::Var(v) if v == x);
        let free = |t: &Term| !t.mentions(x);
        Ok(match (c, pol) {
            (Formula::Eq(a, b), true) if is_x(a) && free(b) => Some((Range::Pin, Some(self.term(b)?))),
            (Formula::Eq(a, b), true) if is_x(b) && free(a) => Some((Range::Pin, Some(self.term(a)?))),
            (Formula::Diag(a, b), true) if is_x(b) && free(a) => Some((Range::Pin, diag_value(self.term(a)?))),
            (Formula::ExpRel(a, b), true) if is_x(b) && free(a) => {
                let e = self.term(a)?;
                match e.to_u64() {
                    Some(e) if e <= 1 << 24 => Some((Range::Pin, Some(BigUint::one() << e))),
                    _ => None,
                }
            }
            (Formula::Lt(a, b), true) if is_x(a) && free(b) => Some((Range::Below, Some(self.term(b)?))),
            (Formula::Lt(a, b), false) if is_x(b) && free(a) => Some((Range::Below, Some(self.term(a)? + 1u32))),
            _ => None,
        })
    }

    /// Kleene disjunction of `body` (or `¬body`) over `x ∈ [from, to)`.
    #[allow(clippy::too_many_arguments)]
    fn search(
        &mut self,
        x: &Ident,
        body: &Formula,
        positive: bool,
        from: BigUint,
        to: BigUint,
        fuel: u64,
        depth: u64,
    ) -> Result<TriBool> {
        let mut acc = TriBool::False;
        let mut v = from;
        while v < to {
            self.stack.push((x.clone(), v.clone()));
            let r = self.eval(body, fuel, depth);
            self.stack.pop();
            let r = if positive { r? } else { r?.not() };
            if r == TriBool::True {
                return Ok(r);
            }
            acc = acc.or(r);
            v += 1u32;
        }
        Ok(acc)
    }
}

/// Conjuncts of `f` (negated when `!pol`), each with its polarity.
fn flatten<'a>(f: &'a Formula, pol: bool, out: &mut Vec<(&'a Formula, bool)>) {
    match (f, pol) {
        (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
            flatten(a, pol, out);
            flatten(b, pol, out);
        }
        (Formula::Imp(a, b), false) => {
            flatten(a, true, out);
            flatten(b, false, out);
        }
        (Formula::Not(a), _) => flatten(a, !pol, out),
        _ => out.push((f, pol)),
    }
}

fn diag_value(a: BigUint) -> Option<BigUint> {
    diagonal_code(&GoedelNumber::new(a)).ok().map(GoedelNumber::into_value)
}

/// `y = 2^x`.
fn is_power(x: &BigUint, y: &BigUint) -> bool {
    !y.is_zero() && y.count_ones() == 1 && BigUint::from(y.bits() - 1) == *x
}

/// `φ(x̲)` for the unary formula `φ` coded by `g`, when that is a closed,
/// index-free sentence.
fn substitution_instance(g: BigUint, x: BigUint) -> Option<Formula> {
    let f = decode_formula(&GoedelNumber::new(g)).ok()?;
    if f.has_index_syntax() {
        return None;
    }
    let v = unary_variable(&f).ok()?;
    Some(substitute_many(&f, &[(v, numeral(x))]))
}

/// Evaluates a formula under `env` with the given fuel.
pub fn eval_formula(f: &Formula, env: &Env, fuel: u64) -> Result<TriBool> {
    eval_with_usage(f, env, fuel).map(|(v, _)| v)
}

/// As [`eval_formula`], also returning the fuel actually consumed: the deeper
/// of the truth-unfolding depth and any fuel-limited search.
pub fn eval_with_usage(f: &Formula, env: &Env, fuel: u64) -> Result<(TriBool, u64)> {
    eval_memo(f, env, fuel, &mut Memo::default())
}

pub(crate) fn eval_memo(f: &Formula, env: &Env, fuel: u64, memo: &mut Memo) -> Result<(TriBool, u64)> {
    let open = if env.iter().next().is_none() { f.is_closed().then(Vec::new) } else { None };
    for v in open.unwrap_or_else(|| free_variables(f).into_iter().collect()) {
        if v.sort == crate::syntax::Sort::Index {
            return Err(Error::Unsupported("index syntax; translate the formula first".into()));
        }
        if env.get(&v.name).is_none() {
            return Err(Error::Unbound(v.name.to_string()));
        }
    }
    let mut ev = Evaluator::new(env, memo);
    let out = ev.eval(f, fuel, 0)?;
    Ok((out, ev.fuel_used()))
}

/// Evaluates a sentence in the standard model with the given fuel.
pub fn eval_sentence(f: &Formula, fuel: u64) -> Result<TriBool> {
    if !f.is_closed() {
        return Err(crate::syntax::require_sentence(f).unwrap_err());
    }
    eval_formula(f, &Env::new(), fuel)
}

/// Exact truth value of a bounded formula without truth atoms.
pub fn eval_delta0(f: &Formula, env: &Env) -> Result<bool> {
    fn go(f: &Formula, stack: &mut Vec<(Ident, BigUint)>) -> Result<bool> {
        use Formula::*;
        let t = |t: &Term, stack: &Vec<(Ident, BigUint)>| {
            eval_term(t, &|x| stack.iter().rev().find(|(k, _)| k == x).map(|(_, v)| v.clone())).map_err(|e| match e {
                Error::OpenTerm(x) => Error::Unbound(x),
                e => e,
            })
        };
        Ok(match f {
            Eq(a, b) => t(a, stack)? == t(b, stack)?,
            Lt(a, b) => t(a, stack)? < t(b, stack)?,
            Ack(a, b) => ack_bit(&t(a, stack)?, &t(b, stack)?),
            Diag(a, b) => {
                let b = t(b, stack)?;
                diag_value(t(a, stack)?).is_some_and(|d| d == b)
            }
            ExpRel(a, b) => is_power(&t(a, stack)?, &t(b, stack)?),
            SentA(a) => is_sentence_a(&GoedelNumber::new(t(a, stack)?)),
            Tru(_) | SubTru(..) | ITru(..) | Prec(..) => {
                return Err(Error::Unsupported("truth atoms are outside the bounded fragment".into()))
            }
            IdxEq(..) | ExistsIdx(..) | ForallIdx(..) => {
                return Err(Error::Unsupported("index syntax; translate the formula first".into()))
            }
            ExistsNum(x, _) | ForallNum(x, _) => return Err(Error::Unbounded(x.to_string())),
            Not(a) => !go(a, stack)?,
            Or(a, b) => go(a, stack)? || go(b, stack)?,
            And(a, b) => go(a, stack)? && go(b, stack)?,
            Imp(a, b) => !go(a, stack)? || go(b, stack)?,
            Iff(a, b) => go(a, stack)? == go(b, stack)?,
            BoundedExists(x, bound, body) | BoundedForall(x, bound, body) => {
                let want = matches!(f, BoundedExists(..));
                let end = t(bound, stack)?;
                let mut v = BigUint::zero();
                while v <= end {
                    stack.push((x.clone(), v.clone()));
                    let r = go(body, stack);
                    stack.pop();
                    if r? == want {
                        return Ok(want);
                    }
                    v += 1u32;
                }
                !want
            }
        })
    }
    let mut stack: Vec<(Ident, BigUint)> = env.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    go(f, &mut stack)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goedel::{encode_formula, quote};
    use crate::syntax::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn delta0_examples() {
        let env = Env::new().with("x", 1u32);
        assert!(eval_delta0(&p("(and (lt (var x) (s (s (s z)))) (not (eq z (s z))))"), &env).unwrap());
        assert!(eval_delta0(&p("(ex-le y (num 5) (eq (+ (var y) (var y)) (num 4)))"), &Env::new()).unwrap());
        assert!(eval_delta0(&p("(exp (num 3) (num 8))"), &Env::new()).unwrap());
        assert!(!eval_delta0(&p("(exp (num 3) (num 9))"), &Env::new()).unwrap());
        assert!(matches!(eval_delta0(&p("(ex y (eq (var y) z))"), &Env::new()), Err(Error::Unbounded(_))));
        assert!(matches!(eval_delta0(&p("(eq (var q) z)"), &Env::new()), Err(Error::Unbound(_))));
        assert!(eval_delta0(&p("(tru z)"), &Env::new()).is_err());
    }

    #[test]
    fn sentence_examples() {
        let zz = p("(eq z z)");
        assert_eq!(eval_sentence(&Formula::Tru(quote(&zz)), 1).unwrap(), TriBool::True);
        assert_eq!(eval_sentence(&Formula::Tru(quote(&zz)), 0).unwrap(), TriBool::Unknown);
        for fuel in [0, 1, 5, 64] {
            assert_eq!(eval_sentence(&p("(tru z)"), fuel).unwrap(), TriBool::False);
            assert_eq!(eval_sentence(&p("(ex x (eq (var x) (s (var x))))"), fuel).unwrap(), TriBool::Unknown);
        }
        assert_eq!(eval_sentence(&p("(ex x (eq (var x) (num 3)))"), 0).unwrap(), TriBool::True);
        assert_eq!(
            eval_sentence(&p("(ex x (and (lt (var x) (num 3)) (eq (var x) (num 7))))"), 0).unwrap(),
            TriBool::False
        );
        assert_eq!(eval_sentence(&p("(all x (lt (var x) (s (var x))))"), 9).unwrap(), TriBool::Unknown);
        assert_eq!(eval_sentence(&p("(all x (lt (var x) (num 5)))"), 9).unwrap(), TriBool::False);
        assert!(eval_sentence(&p("(eq (var x) z)"), 3).is_err());
        assert!(eval_sentence(&p("(ex-i a (eq (ivar a) (ivar a)))"), 3).is_err());
    }

    #[test]
    fn primitive_atoms() {
        let f = p("(eq (var v) (var v))");
        let g = encode_formula(&f);
        let d = diagonal_code(&g).unwrap();
        let atom = Formula::Diag(g.numeral(), d.numeral());
        assert_eq!(eval_sentence(&atom, 1).unwrap(), TriBool::True);
        let sub = Formula::SubTru(g.numeral(), numeral(4u32));
        assert_eq!(eval_sentence(&sub, 1).unwrap(), TriBool::True);
        let sub = Formula::SubTru(quote(&p("(lt (var v) (num 3))")), numeral(4u32));
        assert_eq!(eval_sentence(&sub, 1).unwrap(), TriBool::False);
        assert_eq!(eval_sentence(&Formula::SentA(g.numeral()), 0).unwrap(), TriBool::False);
        assert_eq!(eval_sentence(&Formula::SentA(quote(&p("(eq z z)"))), 0).unwrap(), TriBool::True);
        assert_eq!(eval_sentence(&p("(ex y (exp (num 10) (var y)))"), 0).unwrap(), TriBool::True);
    }

    #[test]
    fn fuel_usage_is_reported() {
        let zz = p("(eq z z)");
        let nested = Formula::Tru(quote(&Formula::Tru(quote(&zz))));
        assert_eq!(eval_with_usage(&nested, &Env::new(), 10).unwrap(), (TriBool::True, 2));
    }
}
