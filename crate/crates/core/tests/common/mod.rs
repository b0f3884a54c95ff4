#![allow(dead_code)]

use ctw::syntax::{Formula, Ident, Term};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

// Number and index names come from disjoint first letters so generated
// formulas never reuse a name at both sorts.
pub fn number_name() -> impl Strategy<Value = Ident> {
    "[e-z][a-z0-9_]{0,3}".prop_map(|s| Ident::new(&s).unwrap())
}

pub fn index_name() -> impl Strategy<Value = Ident> {
    "[a-d][a-z0-9_]{0,2}".prop_map(|s| Ident::new(&s).unwrap())
}

pub fn numeral_value() -> impl Strategy<Value = BigUint> {
    prop_oneof![
        4 => (0u64..40).prop_map(BigUint::from),
        1 => any::<u64>().prop_map(BigUint::from),
        1 => prop::collection::vec(any::<u32>(), 1..6).prop_map(BigUint::new),
    ]
}

pub fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![number_name().prop_map(Term::Var), numeral_value().prop_map(Term::Num)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::succ),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::mul(a, b)),
        ]
    })
}

fn arithmetical_atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        (term(), term()).prop_map(|(a, b)| Formula::Eq(a, b)),
        (term(), term()).prop_map(|(a, b)| Formula::Lt(a, b)),
        (term(), term()).prop_map(|(a, b)| Formula::Ack(a, b)),
        (term(), term()).prop_map(|(a, b)| Formula::ExpRel(a, b)),
        (term(), term()).prop_map(|(a, b)| Formula::Diag(a, b)),
        term().prop_map(Formula::SentA),
    ]
}

fn any_atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        3 => arithmetical_atom(),
        1 => term().prop_map(Formula::Tru),
        1 => (index_name(), term()).prop_map(|(a, t)| Formula::ITru(a, t)),
        1 => (index_name(), index_name()).prop_map(|(a, b)| Formula::Prec(a, b)),
        1 => (index_name(), index_name()).prop_map(|(a, b)| Formula::IdxEq(a, b)),
        1 => (term(), term()).prop_map(|(a, b)| Formula::SubTru(a, b)),
    ]
}

fn number_connectives(inner: BoxedStrategy<Formula>) -> BoxedStrategy<Formula> {
    let b = || inner.clone();
    prop_oneof![
        b().prop_map(Formula::not),
        (b(), b()).prop_map(|(x, y)| Formula::or(x, y)),
        (b(), b()).prop_map(|(x, y)| Formula::and(x, y)),
        (b(), b()).prop_map(|(x, y)| Formula::imp(x, y)),
        (b(), b()).prop_map(|(x, y)| Formula::iff(x, y)),
        (number_name(), b()).prop_map(|(x, f)| Formula::exists(x, f)),
        (number_name(), b()).prop_map(|(x, f)| Formula::forall(x, f)),
        (number_name(), term(), b()).prop_map(|(x, t, f)| Formula::exists_le(x, t, f)),
        (number_name(), term(), b()).prop_map(|(x, t, f)| Formula::forall_le(x, t, f)),
    ]
    .boxed()
}

/// Arbitrary formulas of the full two-sorted language.
pub fn formula() -> impl Strategy<Value = Formula> {
    any_atom().prop_recursive(4, 32, 2, |inner| {
        let idx = inner.clone();
        prop_oneof![
            4 => number_connectives(inner.boxed()),
            1 => (index_name(), idx.clone()).prop_map(|(a, f)| Formula::exists_idx(a, f)),
            1 => (index_name(), idx).prop_map(|(a, f)| Formula::forall_idx(a, f)),
        ]
    })
}

/// Purely arithmetical formulas, possibly open.
pub fn arithmetical_formula() -> impl Strategy<Value = Formula> {
    arithmetical_atom().prop_recursive(4, 32, 2, |inner| number_connectives(inner.boxed()))
}

fn small_term(depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        Just(Term::var(Ident::new("x").unwrap())),
        Just(Term::var(Ident::new("k").unwrap())),
        (0u64..8).prop_map(Term::num),
    ];
    if depth == 0 {
        return leaf.boxed();
    }
    let inner = small_term(depth - 1);
    prop_oneof![
        2 => leaf,
        1 => inner.clone().prop_map(Term::succ),
        1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
        1 => (inner.clone(), inner).prop_map(|(a, b)| Term::mul(a, b)),
    ]
    .boxed()
}

/// Bounded arithmetical formulas in `x` (and a bounded `k`), with bounds
/// small enough for brute force.
pub fn unary_delta0() -> impl Strategy<Value = Formula> {
    let x = || Term::var(Ident::new("x").unwrap());
    let atom = prop_oneof![
        (small_term(2), small_term(2)).prop_map(|(a, b)| Formula::Eq(a, b)),
        (small_term(2), small_term(2)).prop_map(|(a, b)| Formula::Lt(a, b)),
        (small_term(1), small_term(2)).prop_map(|(a, b)| Formula::Ack(a, b)),
        (small_term(1), small_term(1)).prop_map(|(a, b)| Formula::ExpRel(a, b)),
    ];
    let body = atom.prop_recursive(3, 12, 2, move |inner| {
        let b = || inner.clone();
        prop_oneof![
            b().prop_map(Formula::not),
            (b(), b()).prop_map(|(p, q)| Formula::or(p, q)),
            (b(), b()).prop_map(|(p, q)| Formula::and(p, q)),
            (b(), b()).prop_map(|(p, q)| Formula::imp(p, q)),
        ]
    });
    let k = || Ident::new("k").unwrap();
    prop_oneof![
        2 => body.clone(),
        1 => (body.clone(), 0u64..4).prop_map(move |(f, c)| Formula::exists_le(k(), Term::add(x(), Term::num(c)), f)),
        1 => (body, 0u64..6).prop_map(move |(f, c)| Formula::forall_le(k(), Term::num(c), f)),
    ]
    .prop_map(move |f| {
        // Bind a stray `k` and make sure `x` occurs free.
        let f = if ctw::syntax::free_variables(&f).iter().any(|v| v.name == k()) {
            Formula::exists_le(k(), Term::num(3u64), f)
        } else {
            f
        };
        if ctw::syntax::free_variables(&f).is_empty() {
            Formula::and(Formula::Eq(x(), x()), f)
        } else {
            f
        }
    })
}

/// Draws `n` values from `strategy` with a fixed seed.
pub fn sample<S: Strategy>(strategy: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..n).map(|_| strategy.new_tree(&mut runner).unwrap().current()).collect()
}

/// Brute-force truth of bounded arithmetical formulas in the standard model.
/// Independent of the library evaluator; panics outside its fragment.
pub fn oracle(f: &Formula, env: &mut Vec<(Ident, BigUint)>) -> bool {
    use Formula::*;
    match f {
        Eq(a, b) => value(a, env) == value(b, env),
        Lt(a, b) => value(a, env) < value(b, env),
        Ack(a, b) => {
            let i = value(a, env).to_u64().expect("small bit index");
            value(b, env).bit(i)
        }
        ExpRel(a, b) => {
            let e = value(a, env).to_u32().expect("small exponent");
            BigUint::from(2u32).pow(e) == value(b, env)
        }
        Not(g) => !oracle(g, env),
        Or(a, b) => oracle(a, env) || oracle(b, env),
        And(a, b) => oracle(a, env) && oracle(b, env),
        Imp(a, b) => !oracle(a, env) || oracle(b, env),
        Iff(a, b) => oracle(a, env) == oracle(b, env),
        BoundedExists(x, t, g) | BoundedForall(x, t, g) => {
            let limit = value(t, env).to_u64().expect("small bound");
            let want = matches!(f, BoundedExists(..));
            let mut hit = !want;
            for i in 0..=limit {
                env.push((x.clone(), BigUint::from(i)));
                let v = oracle(g, env);
                env.pop();
                if v == want {
                    hit = want;
                    break;
                }
            }
            hit
        }
        other => panic!("outside the oracle fragment: {other}"),
    }
}

pub fn oracle_closed(f: &Formula) -> bool {
    oracle(f, &mut Vec::new())
}

fn value(t: &Term, env: &[(Ident, BigUint)]) -> BigUint {
    match t {
        Term::Var(x) => env.iter().rev().find(|(k, _)| k == x).map(|(_, v)| v.clone()).expect("bound variable"),
        Term::Num(n) => n.clone(),
        Term::Succ(a) => value(a, env) + BigUint::one(),
        Term::Add(a, b) => value(a, env) + value(b, env),
        Term::Mul(a, b) => value(a, env) * value(b, env),
    }
}

/// All index subsets of `0..n` with between `lo` and `hi` members, each in
/// increasing order.
pub fn subsets(n: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let k = mask.count_ones() as usize;
        if (lo..=hi).contains(&k) {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}
