//! Computation rules for the identity type and the permutative ζ-step on
//! derivations.

use super::derivation::{check_derivation, Derivation, Judgment};
use super::env::Env;
use super::term::{Connective, Term};

/// `J(s(a,b), t.d)` to `d[s/t]`.
pub fn id_beta(t: &Term) -> Option<Term> {
    match (t, t.beta_root()?) {
        (Term::J(..), (Connective::Id, out)) => Some(out),
        _ => None,
    }
}

/// `J(e, t.t(a,b))` to `e`.
pub fn id_eta(t: &Term) -> Option<Term> {
    match (t, t.eta_root()?) {
        (Term::J(..), (Connective::Id, out)) => Some(out),
        _ => None,
    }
}

/// Pushes the last rule of `d` inside the abstraction of the `J` one of its
/// premises concludes:
///
/// ```text
///   w(J(e, t.d))   becomes   J(e, t.w(d))
/// ```
///
/// Refused when `w` discharges an assumption still open in the major
/// premise `e`, or when the result does not check.
pub fn zeta_permute(d: &Derivation, env: &Env) -> Option<Derivation> {
    let Judgment::Member(term, ty) = &d.conclusion else {
        return None;
    };
    let (idx, elim) = d
        .premises
        .iter()
        .enumerate()
        .find(|(_, p)| p.rule == "id-elim" && matches!(&p.conclusion, Judgment::Member(Term::J(..), _)))?;
    let [major, minor] = &elim.premises[..] else {
        return None;
    };
    if !d.discharges.is_disjoint(&major.open_labels()) {
        return None;
    }
    // the term-level step already renames the abstraction away from the
    // other premises
    let Term::J(_, t, inner) = term.zeta_root()? else {
        return None;
    };
    let mut premises = d.premises.clone();
    premises[idx] = minor.clone();
    let pushed = Derivation {
        rule: d.rule.clone(),
        conclusion: Judgment::Member((*inner).clone(), ty.clone()),
        premises,
        discharges: d.discharges.clone(),
        label: None,
    };
    let Judgment::Member(Term::J(e, old_t, _), _) = &elim.conclusion else {
        return None;
    };
    if *old_t != t {
        return None;
    }
    let out = Derivation {
        rule: "id-elim".into(),
        conclusion: Judgment::Member(Term::j((**e).clone(), t, (*inner).clone()), ty.clone()),
        premises: vec![major.clone(), pushed],
        discharges: elim.discharges.clone(),
        label: None,
    };
    check_derivation(&out, env).is_ok().then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::syntax::{parse_judgment, parse_term, parse_ty};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn j(s: &str) -> Judgment {
        parse_judgment(s).unwrap_or_else(|e| panic!("{e}"))
    }

    #[test]
    fn beta_and_eta() {
        assert_eq!(id_beta(&t("J(s(a,b),t.t(a,b))")), Some(t("s(a,b)")));
        assert_eq!(id_beta(&t("J(s(a,b),t.c)")), Some(t("c")));
        assert_eq!(id_beta(&t("J(e,t.t(a,b))")), None);
        assert_eq!(id_beta(&t("fst(<a,b>)")), None);
        assert_eq!(id_eta(&t("J(e,t.t(a,b))")), Some(t("e")));
        assert_eq!(id_eta(&t("J(s(a,b),t.t(a,b))")), id_beta(&t("J(s(a,b),t.t(a,b))")));
        assert_eq!(id_eta(&t("J(e,t.<x,y>)")), None);
    }

    fn env() -> Env {
        let a = parse_ty("A").unwrap();
        Env::new()
            .with_term("a", a.clone())
            .unwrap()
            .with_term("b", a.clone())
            .unwrap()
            .with_reason("r", t("a"), t("b"), a)
            .unwrap()
    }

    /// `J(r(a,b), t.(sigma(t))(b,a)) : Id_A(b,a)`
    fn elim() -> Derivation {
        let minor = Derivation::new(
            "id-intro",
            j("(sigma(t))(b,a) : Id_A(b,a)"),
            vec![Derivation::new("symm", j("b =_sigma(t) a : A"), vec![Derivation::hyp("t", j("a =_t b : A"))])],
        );
        let major = Derivation::leaf("typing", j("r(a,b) : Id_A(a,b)"));
        Derivation::new("id-elim", j("J(r(a,b),t.(sigma(t))(b,a)) : Id_A(b,a)"), vec![major, minor]).discharging(["t"])
    }

    #[test]
    fn permutes_a_unary_rule() {
        let env = env();
        let d = Derivation::new("sum-intro-inl", j("inl(J(r(a,b),t.(sigma(t))(b,a))) : Id_A(b,a) + A"), vec![elim()]);
        assert_eq!(check_derivation(&d, &env), Ok(()));
        let out = zeta_permute(&d, &env).expect("permutable");
        assert_eq!(out.rule, "id-elim");
        assert_eq!(out.conclusion, j("J(r(a,b),t.inl((sigma(t))(b,a))) : Id_A(b,a) + A"));
        assert_eq!(check_derivation(&out, &env), Ok(()));
    }

    #[test]
    fn refuses_to_disturb_dependencies() {
        let env = env();
        // λh over a J whose major premise uses h
        let ty = "Id_A(a,b) -> Id_A(b,a)";
        let minor = elim().premises[1].clone();
        let major = Derivation::hyp("h", j("h : Id_A(a,b)"));
        let elim = Derivation::new("id-elim", j("J(h,t.(sigma(t))(b,a)) : Id_A(b,a)"), vec![major, minor]).discharging(["t"]);
        let d = Derivation::new("pi-intro", j(&format!("λh.J(h,t.(sigma(t))(b,a)) : {ty}")), vec![elim]).discharging(["h"]);
        assert_eq!(check_derivation(&d, &env), Ok(()));
        assert_eq!(zeta_permute(&d, &env), None);
        // nothing to permute
        assert_eq!(zeta_permute(&Derivation::leaf("typing", j("a : A")), &env), None);
    }
}
