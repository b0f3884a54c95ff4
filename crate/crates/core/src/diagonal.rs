//! Diagonalization, fixed points, the indexed provability formula θ and the
//! derivability bundles built from it.

use crate::axioms::{dtb_bundle, id, AxiomBundle, Role};
use crate::error::Result;
use crate::goedel::{decode_formula, encode_formula, quote, GoedelNumber};
use crate::syntax::{all_names, require_sentence, substitute_many, unary_variable, Formula, Ident, Term};

/// The code of `φ(g̲)`, where `g` codes the unary formula `φ(v)`.
pub fn diagonal_code(g: &GoedelNumber) -> Result<GoedelNumber> {
    let f = decode_formula(g)?;
    let v = unary_variable(&f)?;
    Ok(encode_formula(&substitute_many(&f, &[(v, g.numeral())])))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointResult {
    pub delta: Formula,
    /// `δ′(v) := ∃y(Diag(v, y) ∧ δ(y))`.
    pub delta_prime: Formula,
    /// `δ′(⌜δ′⌝)`.
    pub gamma: Sentence,
    /// `δ(⌜γ⌝)`.
    pub unfolded: Sentence,
}

type Sentence = Formula;

/// A sentence `γ` with `γ ↔ δ(⌜γ⌝)` true in the standard model.
pub fn fixed_point(delta: &Formula) -> Result<FixedPointResult> {
    let d = unary_variable(delta)?;
    let mut names = all_names(delta);
    let v = Ident::fresh(|i| names.contains(i));
    names.insert(v.clone());
    let y = Ident::fresh(|i| names.contains(i));
    let delta_prime = Formula::exists(
        y.clone(),
        Formula::and(
            Formula::Diag(Term::var(v.clone()), Term::var(y.clone())),
            substitute_many(delta, &[(d.clone(), Term::var(y))]),
        ),
    );
    let gamma = substitute_many(&delta_prime, &[(v, quote(&delta_prime))]);
    let unfolded = substitute_many(delta, &[(d, quote(&gamma))]);
    Ok(FixedPointResult { delta: delta.clone(), delta_prime, gamma, unfolded })
}

/// Free variable of [`theta_indexed`].
pub const THETA_VAR: &str = "x";

/// `θ(x) := ∀α T_α(x)`.
pub fn theta_indexed() -> Formula {
    Formula::forall_idx(id("a"), Formula::ITru(id("a"), Term::var(id(THETA_VAR))))
}

/// `θ(⌜φ⌝)`.
pub fn theta_of(phi: &Formula) -> Formula {
    substitute_many(&theta_indexed(), &[(id(THETA_VAR), quote(phi))])
}

/// Derivability conditions for `θ` at `(φ, ψ)`: the sentences `hbl2` and
/// `hbl3`, and the meta-level `hbl1` recorded as an obligation.
pub fn hbl_obligations(phi: &Formula, psi: &Formula) -> Result<AxiomBundle> {
    require_sentence(phi)?;
    require_sentence(psi)?;
    let mut b = AxiomBundle::new("hbl", "derivability conditions for the indexed provability formula")?;
    let hbl2 =
        Formula::imp(theta_of(&Formula::imp(phi.clone(), psi.clone())), Formula::imp(theta_of(phi), theta_of(psi)));
    b.push("hbl2", Role::Axiom, hbl2)?;
    b.push("hbl3", Role::Axiom, Formula::imp(theta_of(phi), theta_of(&theta_of(phi))))?;
    b.push("hbl1", Role::Obligation, theta_of(phi))?;
    Ok(b)
}

/// The fixed point of `¬θ`.
pub fn godel_sentence() -> Result<FixedPointResult> {
    fixed_point(&Formula::not(theta_indexed()))
}

/// The DTB fragment together with the lemma targets and derivability
/// conditions of the Löb-style inconsistency argument; conjecture `false`.
pub fn loeb_bundle(phis: &[Formula]) -> Result<AxiomBundle> {
    let dtb = dtb_bundle(phis)?;
    let mut out = AxiomBundle::new(
        "loeb",
        format!(
            "{}; with the fixed point of the negated indexed provability formula and its derivability conditions",
            dtb.provenance
        ),
    )?;
    for s in dtb.sentences().iter().filter(|s| s.role != Role::Conjecture) {
        out.push(s.name.as_str(), s.role, s.body.clone())?;
    }
    let bottom = Formula::falsum();
    out.push("consistency", Role::Lemma, Formula::not(theta_of(&bottom)))?;
    let g = godel_sentence()?.gamma;
    out.push("fixed_point", Role::Lemma, Formula::iff(g.clone(), Formula::not(theta_of(&g))))?;
    let theta_g = theta_of(&g);
    out.extend_prefixed("hbl_a_", &hbl_obligations(&g, &Formula::imp(theta_g.clone(), bottom.clone()))?)?;
    out.extend_prefixed("hbl_b_", &hbl_obligations(&theta_g, &bottom)?)?;
    for s in dtb.with_role(Role::Conjecture) {
        out.push(s.name.as_str(), s.role, s.body.clone())?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{free_variables, numeral, parse, relativize, Var};

    #[test]
    fn diagonal_examples() {
        let f = parse("(eq (var v) (var v))").unwrap();
        let g = encode_formula(&f);
        let expect = Formula::eq(g.numeral(), g.numeral());
        assert_eq!(diagonal_code(&g).unwrap(), encode_formula(&expect));
        assert!(decode_formula(&diagonal_code(&g).unwrap()).unwrap().is_closed());
        assert!(diagonal_code(&encode_formula(&parse("(eq z z)").unwrap())).is_err());
        assert!(diagonal_code(&GoedelNumber::new(0u32.into())).is_err());
    }

    #[test]
    fn fixed_point_shape() {
        let delta = parse("(eq (var y) (var y))").unwrap();
        let r = fixed_point(&delta).unwrap();
        assert!(r.gamma.is_closed());
        assert!(r.unfolded.is_closed());
        let dp = encode_formula(&r.delta_prime);
        assert_eq!(diagonal_code(&dp).unwrap(), encode_formula(&r.gamma));
        assert_eq!(r.unfolded, Formula::eq(quote(&r.gamma), quote(&r.gamma)));
    }

    #[test]
    fn theta_examples() {
        let t = theta_indexed();
        let fv: Vec<Var> = free_variables(&t).into_iter().collect();
        assert_eq!(fv, [Var::number(id("x"))]);
        let rel = relativize(&t, &id("b"));
        let expect = parse("(all-i a (imp (prec a b) (itru a (var x))))").unwrap();
        assert_eq!(rel, expect);
        let bottom = parse("(eq z (s z))").unwrap();
        let expect =
            Formula::forall_idx(id("a"), Formula::ITru(id("a"), numeral(encode_formula(&bottom).into_value())));
        assert_eq!(theta_of(&bottom), expect);
    }

    #[test]
    fn hbl_bundle() {
        let (a, b) = (parse("(eq z z)").unwrap(), parse("(lt z z)").unwrap());
        let h = hbl_obligations(&a, &b).unwrap();
        assert_eq!(h.with_role(Role::Axiom).count(), 2);
        assert_eq!(h.with_role(Role::Obligation).count(), 1);
        let inner = encode_formula(&theta_of(&a));
        let hbl3 = &h.get("hbl3").unwrap().body;
        assert_eq!(hbl3, &Formula::imp(theta_of(&a), substitute_many(&theta_indexed(), &[(id("x"), inner.numeral())])));
    }

    #[test]
    fn loeb_contents() {
        let pool = [parse("(eq z z)").unwrap()];
        let l = loeb_bundle(&pool).unwrap();
        let d = dtb_bundle(&pool).unwrap();
        for s in d.sentences() {
            assert_eq!(l.get(s.name.as_str()).map(|x| &x.body), Some(&s.body));
        }
        assert_eq!(l.get("consistency").unwrap().body, Formula::not(theta_of(&parse("(eq z (s z))").unwrap())));
        assert_eq!(l.with_role(Role::Conjecture).count(), 1);
        assert_eq!(l.sentences().last().unwrap().role, Role::Conjecture);
    }
}
