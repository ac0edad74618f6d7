//! Bidirectional type checking. Unannotated λ and the sum injections are
//! only checked; everything else can also be inferred. A canonical element
//! `s(a,b)` is checked by computing the endpoints of `s`.

use super::endpoints::{source_to, target_from, EndpointError};
use super::env::Env;
use super::term::{Term, Ty};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("unbound variable '{0}'")]
    UnboundVariable(String),
    #[error("unbound reason variable '{0}'")]
    UnboundReasonVariable(String),
    #[error("'{term}' has type {found}, expected {expected}")]
    Mismatch { term: String, expected: String, found: String },
    #[error("cannot infer a type for '{0}'; annotate it")]
    CannotInfer(String),
    #[error("ill-formed identity type {0}: endpoints must inhabit the base type")]
    IdFormation(String),
    #[error("reason does not connect the endpoints of '{0}'")]
    EndpointMismatch(String),
}

impl From<EndpointError> for TypeError {
    fn from(e: EndpointError) -> Self {
        match e {
            EndpointError::UnboundReasonVariable(v) => TypeError::UnboundReasonVariable(v),
        }
    }
}

fn mismatch(t: &Term, expected: impl ToString, found: impl ToString) -> TypeError {
    TypeError::Mismatch {
        term: t.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Well-formedness of a type.
pub fn check_ty(ty: &Ty, env: &Env) -> Result<(), TypeError> {
    match ty {
        Ty::Atom(_) => Ok(()),
        Ty::Prod(a, b) | Ty::Sum(a, b) => {
            check_ty(a, env)?;
            check_ty(b, env)
        }
        Ty::Pi(x, a, b) | Ty::SigmaTy(x, a, b) => {
            check_ty(a, env)?;
            check_ty(b, &env.extended_term(x, a))
        }
        Ty::IdTy(a, l, r) => {
            check_ty(a, env)?;
            match (check(l, a, env), check(r, a, env)) {
                (Ok(()), Ok(())) => Ok(()),
                (Err(e @ (TypeError::UnboundVariable(_) | TypeError::UnboundReasonVariable(_))), _)
                | (_, Err(e @ (TypeError::UnboundVariable(_) | TypeError::UnboundReasonVariable(_)))) => Err(e),
                _ => Err(TypeError::IdFormation(ty.to_string())),
            }
        }
    }
}

pub fn infer(t: &Term, env: &Env) -> Result<Ty, TypeError> {
    match t {
        Term::Var(x) => env
            .term_type(x)
            .cloned()
            .ok_or_else(|| TypeError::UnboundVariable(x.clone())),
        Term::Lambda(x, Some(a), b) => {
            check_ty(a, env)?;
            let body = infer(b, &env.extended_term(x, a))?;
            Ok(Ty::pi(x.clone(), (**a).clone(), body))
        }
        Term::Lambda(_, None, _) | Term::Inl(_) | Term::Inr(_) => Err(TypeError::CannotInfer(t.to_string())),
        Term::App(f, a) => {
            if let Term::Lambda(x, None, b) = &**f {
                let at = infer(a, env)?;
                let bt = infer(b, &env.extended_term(x, &at))?;
                return Ok(bt.subst(x, a));
            }
            match infer(f, env)? {
                Ty::Pi(x, dom, cod) => {
                    check(a, &dom, env)?;
                    Ok(cod.subst(&x, a))
                }
                other => Err(mismatch(f, "a function type", other)),
            }
        }
        Term::Pair(a, b) => Ok(Ty::prod(infer(a, env)?, infer(b, env)?)),
        Term::Fst(p) | Term::Snd(p) => match infer(p, env)? {
            Ty::Prod(a, b) => Ok(if matches!(t, Term::Fst(_)) { *a } else { *b }),
            other => Err(mismatch(p, "a product type", other)),
        },
        Term::Case(c, x, d, y, e) => match infer(c, env)? {
            Ty::Sum(a, b) => {
                let dt = infer(d, &env.extended_term(x, &a))?;
                if dt.free_vars().contains(x) {
                    return Err(TypeError::CannotInfer(t.to_string()));
                }
                check(e, &dt, &env.extended_term(y, &b))?;
                Ok(dt)
            }
            other => Err(mismatch(c, "a sum type", other)),
        },
        Term::Eps(x, f, a) => {
            let at = infer(a, env)?;
            let ft = infer(f, &env.extended_term(x, &at))?;
            Ok(Ty::sigma(x.clone(), at, ft))
        }
        Term::EpsElim(e, g, w, d) => match infer(e, env)? {
            Ty::SigmaTy(x, a, b) => {
                let inner = env.extended_term(g, &Ty::pi(x, (*a).clone(), *b)).extended_term(w, &a);
                let dt = infer(d, &inner)?;
                if dt.free_vars().contains(g) || dt.free_vars().contains(w) {
                    return Err(TypeError::CannotInfer(t.to_string()));
                }
                Ok(dt)
            }
            other => Err(mismatch(e, "a Sigma type", other)),
        },
        Term::PathWitness(s, a, b) => {
            let at = infer(a, env)?;
            check(b, &at, env)?;
            witness_endpoints(t, s, a, b, env)?;
            Ok(Ty::IdTy(Box::new(at), a.clone(), b.clone()))
        }
        Term::J(p, x, d) => match infer(p, env)? {
            Ty::IdTy(a, l, r) => {
                let dt = infer(d, &env.extended_reason(x, &l, &r, &a))?;
                if dt.free_reason_vars_mention(x) {
                    return Err(TypeError::CannotInfer(t.to_string()));
                }
                Ok(dt)
            }
            other => Err(mismatch(p, "an identity type", other)),
        },
    }
}

fn witness_endpoints(t: &Term, s: &crate::reason::Reason, a: &Term, b: &Term, env: &Env) -> Result<(), TypeError> {
    let fwd = target_from(s, a, env)?;
    if fwd.as_ref().is_some_and(|x| x.def_eq(b)) {
        return Ok(());
    }
    let bwd = source_to(s, b, env)?;
    if bwd.as_ref().is_some_and(|x| x.def_eq(a)) {
        return Ok(());
    }
    Err(TypeError::EndpointMismatch(t.to_string()))
}

pub fn check(t: &Term, ty: &Ty, env: &Env) -> Result<(), TypeError> {
    match (t, ty) {
        (Term::Lambda(x, ann, b), Ty::Pi(y, a, bt)) => {
            if let Some(ann) = ann {
                check_ty(ann, env)?;
                if !ann.def_eq(a) {
                    return Err(mismatch(t, ty, format!("a function from {ann}")));
                }
            }
            let bt = if x == y { (**bt).clone() } else { bt.subst(y, &Term::var(x.clone())) };
            check(b, &bt, &env.extended_term(x, a))
        }
        (Term::Pair(a, b), Ty::Prod(at, bt)) => {
            check(a, at, env)?;
            check(b, bt, env)
        }
        (Term::Inl(a), Ty::Sum(at, _)) | (Term::Inr(a), Ty::Sum(_, at)) => check(a, at, env),
        (Term::Inl(_) | Term::Inr(_), _) => Err(mismatch(t, ty, "a sum type")),
        (Term::Eps(x, f, a), Ty::SigmaTy(y, at, bt)) => {
            check(a, at, env)?;
            let bt = if x == y { (**bt).clone() } else { bt.subst(y, &Term::var(x.clone())) };
            check(f, &bt, &env.extended_term(x, at))
        }
        (Term::Case(c, x, d, y, e), _) => match infer(c, env)? {
            Ty::Sum(a, b) => {
                check(d, ty, &env.extended_term(x, &a))?;
                check(e, ty, &env.extended_term(y, &b))
            }
            other => Err(mismatch(c, "a sum type", other)),
        },
        (Term::EpsElim(e, g, w, d), _) => match infer(e, env)? {
            Ty::SigmaTy(x, a, b) => {
                let inner = env.extended_term(g, &Ty::pi(x, (*a).clone(), *b)).extended_term(w, &a);
                check(d, ty, &inner)
            }
            other => Err(mismatch(e, "a Sigma type", other)),
        },
        (Term::J(p, x, d), _) => match infer(p, env)? {
            Ty::IdTy(a, l, r) => check(d, ty, &env.extended_reason(x, &l, &r, &a)),
            other => Err(mismatch(p, "an identity type", other)),
        },
        (Term::App(f, a), _) if matches!(&**f, Term::Lambda(_, None, _)) => {
            let Term::Lambda(x, None, b) = &**f else { unreachable!() };
            let at = infer(a, env)?;
            match infer(b, &env.extended_term(x, &at)) {
                Ok(bt) => {
                    let found = bt.subst(x, a);
                    if found.def_eq(ty) {
                        Ok(())
                    } else {
                        Err(mismatch(t, ty, found))
                    }
                }
                // the body alone is not inferable: check the contractum
                Err(TypeError::CannotInfer(_)) => check(&b.subst(x, a), ty, env),
                Err(e) => Err(e),
            }
        }
        (Term::Lambda(..), _) => Err(mismatch(t, ty, "a function")),
        _ => {
            let found = infer(t, env)?;
            if found.def_eq(ty) {
                Ok(())
            } else {
                Err(mismatch(t, ty, found))
            }
        }
    }
}

trait MentionsReason {
    fn free_reason_vars_mention(&self, x: &str) -> bool;
}

impl MentionsReason for Ty {
    fn free_reason_vars_mention(&self, x: &str) -> bool {
        match self {
            Ty::Atom(_) => false,
            Ty::Prod(a, b) | Ty::Sum(a, b) => a.free_reason_vars_mention(x) || b.free_reason_vars_mention(x),
            Ty::Pi(_, a, b) | Ty::SigmaTy(_, a, b) => a.free_reason_vars_mention(x) || b.free_reason_vars_mention(x),
            Ty::IdTy(a, l, r) => {
                a.free_reason_vars_mention(x) || l.free_reason_vars().contains(x) || r.free_reason_vars().contains(x)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::syntax::{parse_term, parse_ty};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn ty(s: &str) -> Ty {
        parse_ty(s).unwrap()
    }

    fn env() -> Env {
        Env::new()
            .with_term("a", ty("A"))
            .unwrap()
            .with_term("b", ty("A"))
            .unwrap()
            .with_term("f", ty("A -> B"))
            .unwrap()
            .with_reason("r", t("a"), t("b"), ty("A"))
            .unwrap()
    }

    #[test]
    fn simple_terms() {
        let env = env();
        assert_eq!(infer(&t("f a"), &env).unwrap(), ty("B"));
        assert_eq!(infer(&t("<a,f b>"), &env).unwrap(), ty("A * B"));
        assert_eq!(infer(&t("snd(<a,f b>)"), &env).unwrap(), ty("B"));
        check(&t("λx.f x"), &ty("A -> B"), &env).unwrap();
        check(&t("inl(a)"), &ty("A + B"), &env).unwrap();
        check(&t("λp.case(p,x.f x,y.f y)"), &ty("A + A -> B"), &env).unwrap();
        assert!(matches!(check(&t("f b"), &ty("A"), &env), Err(TypeError::Mismatch { .. })));
        assert!(matches!(infer(&t("inl(a)"), &env), Err(TypeError::CannotInfer(_))));
        assert_eq!(infer(&t("g"), &env), Err(TypeError::UnboundVariable("g".into())));
    }

    #[test]
    fn dependent_pairs() {
        let env = env();
        assert_eq!(infer(&t("eps x.(f x,a)"), &env).unwrap(), ty("Sigma x:A. B"));
        check(&t("E(eps x.(f x,a),g.w.g w)"), &ty("B"), &env).unwrap();
    }

    #[test]
    fn canonical_elements() {
        let env = env();
        assert_eq!(infer(&t("r(a,b)"), &env).unwrap(), ty("Id_A(a,b)"));
        assert_eq!(infer(&t("(sigma(r))(b,a)"), &env).unwrap(), ty("Id_A(b,a)"));
        assert_eq!(infer(&t("rho(a,a)"), &env).unwrap(), ty("Id_A(a,a)"));
        assert!(matches!(infer(&t("r(b,a)"), &env), Err(TypeError::EndpointMismatch(_))));
        assert_eq!(infer(&t("q(a,b)"), &env), Err(TypeError::UnboundReasonVariable("q".into())));
        // J with the reason of its major premise
        assert_eq!(infer(&t("J(r(a,b),w.(sigma(w))(b,a))"), &env).unwrap(), ty("Id_A(b,a)"));
    }

    #[test]
    fn identity_formation() {
        let env = env();
        check_ty(&ty("Id_A(a,b)"), &env).unwrap();
        assert!(matches!(check_ty(&ty("Id_A(a,f a)"), &env), Err(TypeError::IdFormation(_))));
        // a λ-bound identity proof names its reason
        check(
            &t("λc.J(c,w.(sigma(w))(b,a))"),
            &ty("Id_A(a,b) -> Id_A(b,a)"),
            &env,
        )
        .unwrap();
    }
}
