use super::eval::{eval_memo, Memo};
use super::{eval_delta0, eval_with_usage, CheckReport, Env, TriBool};
use crate::axioms::{
    biconditional, cc_from, cc_instance, code_of, dc_from, dc_instance, descending, nonempty, predecessors_code,
    theta_disjunction, CODE_VARS, THETA_VAR,
};
use crate::error::{Error, Result};
use crate::goedel::{ack_bit, quote};
use crate::interp::{build_iota, translate};
use crate::syntax::{numeral, substitute_many, unary_variable, Formula, Ident};
use num_bigint::BigUint;

fn eval(report: &mut CheckReport, f: &Formula, fuel: u64) -> Result<TriBool> {
    let (v, used) = eval_with_usage(f, &Env::new(), fuel)?;
    report.use_fuel(used);
    Ok(v)
}

fn sign_pattern(mask: u64, s: usize) -> String {
    (0..s).map(|i| if mask >> i & 1 == 1 { '-' } else { '+' }).collect()
}

/// Both sides of an `Iff` instance, with every sign-flip variant of the pool.
fn check_biconditional_family(
    name: &str,
    phis: &[Formula],
    fuel: u64,
    instance: fn(&[Formula]) -> Result<Formula>,
    build: fn(&[Formula], &[Formula]) -> Result<Formula>,
) -> Result<CheckReport> {
    if phis.is_empty() {
        return Err(Error::Empty("pool"));
    }
    if phis.len() > 16 {
        return Err(Error::Invalid("pools are limited to 16 sentences".into()));
    }
    let mut report = CheckReport::new(name, fuel);
    report.subjects = phis.iter().map(Formula::to_string).collect();
    let s = phis.len();
    // Validates the members; flipped variants reuse the checked pieces.
    let first = instance(phis)?;
    let signed: Vec<[Formula; 2]> = phis.iter().map(|f| [f.clone(), Formula::not(f.clone())]).collect();
    let trus: Vec<[Formula; 2]> =
        signed.iter().map(|[p, n]| [Formula::Tru(quote(p)), Formula::Tru(quote(n))]).collect();
    let mut pool = phis.to_vec();
    let mut right = Vec::with_capacity(s);
    let mut memo = Memo::default();
    let env = Env::new();
    for mask in 0..1u64 << s {
        let inst = if mask == 0 {
            first.clone()
        } else {
            right.clear();
            for i in 0..s {
                let sign = (mask >> i & 1) as usize;
                pool[i] = signed[i][sign].clone();
                right.push(trus[i][sign].clone());
            }
            build(&pool, &right)?
        };
        let Formula::Iff(left, right) = inst else { unreachable!("instances are biconditionals") };
        let (got, used) = eval_memo(&left, &env, fuel, &mut memo)?;
        report.use_fuel(used);
        let (expected, used) = eval_memo(&right, &env, fuel, &mut memo)?;
        report.use_fuel(used);
        report.push(sign_pattern(mask, s), expected, got);
    }
    Ok(report)
}

/// Disjunctive correctness of the standard truth oracle on a pool and all
/// its sign-flip variants: `T(⌜⋁φs⌝)` against `⋁T(⌜φ_i⌝)`.
pub fn check_dc(phis: &[Formula], fuel: u64) -> Result<CheckReport> {
    check_biconditional_family("dc", phis, fuel, dc_instance, dc_from)
}

/// The conjunctive dual of [`check_dc`].
pub fn check_cc(phis: &[Formula], fuel: u64) -> Result<CheckReport> {
    check_biconditional_family("cc", phis, fuel, cc_instance, cc_from)
}

/// `T(⌜φ_i⌝)` against `T(⌜θ(i̲)⌝)` for every `i < u`.
pub fn check_claim_star(phis: &[Formula], fuel: u64) -> Result<CheckReport> {
    let theta = theta_disjunction(phis)?;
    let x = Ident::new(THETA_VAR)?;
    let mut report = CheckReport::new("star", fuel);
    report.subjects = phis.iter().map(Formula::to_string).collect();
    for (i, phi) in phis.iter().enumerate() {
        let expected = eval(&mut report, &Formula::Tru(quote(phi)), fuel)?;
        let inst = substitute_many(&theta, &[(x.clone(), numeral(i))]);
        let got = eval(&mut report, &Formula::Tru(quote(&inst)), fuel)?;
        report.push(format!("i={i}"), expected, got);
    }
    Ok(report)
}

/// Evaluates `ι_n(B_{φ_s})`, expected true. Over-budget stages are
/// reported as unknown and flagged.
pub fn check_triangle(
    psi: &Formula,
    pool: &[Formula],
    n: u64,
    s: usize,
    fuel: u64,
    budget: u64,
) -> Result<CheckReport> {
    let phi = pool.get(s).ok_or_else(|| Error::Invalid(format!("index {s} outside a pool of {}", pool.len())))?;
    let mut report = CheckReport::new("triangle", fuel);
    report.flag("derived-expectation");
    report.subjects = pool.iter().map(Formula::to_string).collect();
    let input = format!("n={n} s={s}");
    let iota = match build_iota(psi, pool, n, budget) {
        Err(Error::Budget { .. }) => {
            report.flag("over-budget");
            report.push(input, TriBool::True, TriBool::Unknown);
            return Ok(report);
        }
        other => other?,
    };
    let f = translate(&iota, &biconditional(phi)?)?;
    if f.ast_size() > budget {
        report.flag("over-budget");
        report.push(input, TriBool::True, TriBool::Unknown);
        return Ok(report);
    }
    let got = eval(&mut report, &f, fuel)?;
    report.push(input, TriBool::True, got);
    Ok(report)
}

/// `∀α∃β(β ≺ α) ∧ ∃α(α = α)`.
pub fn dtb_shadow() -> Formula {
    Formula::and(descending(), nonempty())
}

/// Evaluates `ι_n(∀α∃β(β≺α) ∧ ∃α(α=α))` for each `n ≤ n_max`, expected false.
pub fn check_dtb_finite(psi: &Formula, pool: &[Formula], n_max: u64, fuel: u64, budget: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("dtb", fuel);
    report.subjects = pool.iter().map(Formula::to_string).collect();
    let shadow = dtb_shadow();
    for n in 0..=n_max {
        let iota = build_iota(psi, pool, n, budget)?;
        let got = eval(&mut report, &translate(&iota, &shadow)?, fuel)?;
        report.push(format!("n={n}"), TriBool::False, got);
    }
    Ok(report)
}

/// Result of a piecewise-coding check.
#[derive(Debug, Clone)]
pub struct Piecewise {
    /// `Σ{2^i : i < u, φ(i)}`.
    pub code: BigUint,
    pub report: CheckReport,
}

/// Computes the Ackermann code of `{i < u : φ(i)}`, compares its bits with
/// `φ`, checks it lies below `2^u`, and evaluates `Code(c̲, φ, u̲)`.
pub fn check_piecewise(phi: &Formula, u: u64, fuel: u64) -> Result<Piecewise> {
    let v = unary_variable(phi)?;
    let mut report = CheckReport::new("pc", fuel);
    report.subjects.push(phi.to_string());
    let mut truth = Vec::with_capacity(u as usize);
    let mut code = BigUint::default();
    for i in 0..u {
        let b = eval_delta0(phi, &Env::new().with(v.as_str(), i))?;
        if b {
            code.set_bit(i, true);
        }
        truth.push(b);
    }
    for (i, b) in truth.iter().enumerate() {
        report.push(format!("bit {i}"), TriBool::from(*b), ack_bit(&BigUint::from(i), &code).into());
    }
    report.push("c <= 2^u - 1", TriBool::True, (code <= predecessors_code(u)).into());
    let object = substitute_many(
        &code_of(phi)?,
        &[(Ident::new(CODE_VARS.0)?, numeral(code.clone())), (Ident::new(CODE_VARS.1)?, numeral(u))],
    );
    let got = eval(&mut report, &object, fuel)?;
    report.push("Code(c, phi, u)", TriBool::True, got);
    Ok(Piecewise { code, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn dc_examples() {
        let r = check_dc(&[p("(eq z z)")], 8).unwrap();
        assert!(r.pass);
        assert_eq!(r.instances[0].got, TriBool::True);
        let pool = [p("(eq z (s z))"), p("(eq z z)"), p("(eq z (s z))")];
        let r = check_dc(&pool, 8).unwrap();
        assert!(r.pass && r.unknowns() == 0);
        assert_eq!(r.instances.len(), 8);
        assert_eq!((r.instances[0].expected, r.instances[0].got), (TriBool::True, TriBool::True));
        let r = check_dc(&[p("(eq z (s z))"), p("(eq z (s z))")], 8).unwrap();
        assert_eq!((r.instances[0].expected, r.instances[0].got), (TriBool::False, TriBool::False));
        assert!(check_cc(&pool, 8).unwrap().pass);
    }

    #[test]
    fn star_examples() {
        let r = check_claim_star(&[p("(eq z (s z))"), p("(eq z z)")], 8).unwrap();
        let pairs: Vec<_> = r.instances.iter().map(|i| (i.expected, i.got)).collect();
        assert_eq!(pairs, [(TriBool::False, TriBool::False), (TriBool::True, TriBool::True)]);
    }

    #[test]
    fn piecewise_examples() {
        let r = check_piecewise(&p("(eq (var x) (var x))"), 3, 8).unwrap();
        assert_eq!(r.code, BigUint::from(7u32));
        assert!(r.report.pass && r.report.unknowns() == 0);
        let r = check_piecewise(&p("(not (eq (var x) (var x)))"), 3, 8).unwrap();
        assert_eq!(r.code, BigUint::from(0u32));
        let r = check_piecewise(&p("(ex-le y (var x) (eq (+ (var y) (var y)) (var x)))"), 4, 8).unwrap();
        assert_eq!(r.code, BigUint::from(0b101u32));
        assert!(r.report.pass);
    }

    #[test]
    fn triangle_and_dtb() {
        let psi = p("(eq z (s z))");
        let r = check_triangle(&psi, &[p("(eq z z)")], 1, 0, 64, 1_000_000).unwrap();
        assert_eq!(r.instances[0].got, TriBool::True);
        let r = check_triangle(&psi, &[p("(ex-i b (eq (ivar b) (ivar b)))")], 2, 0, 64, 1_000_000).unwrap();
        assert_eq!(r.instances[0].got, TriBool::True);
        let r = check_triangle(&psi, &[p("(eq z z)")], 0, 0, 64, 1_000_000).unwrap();
        assert_eq!(r.instances[0].got, TriBool::True);
        let r = check_dtb_finite(&psi, &[], 5, 64, 1_000_000).unwrap();
        assert!(r.pass && r.unknowns() == 0);
        assert!(r.instances.iter().all(|i| i.got == TriBool::False));
    }
}
