//! Which two terms a reason connects.
//!
//! Endpoints are computed structurally. Read from a known source ("forward")
//! every constructor is determined: `ρ` stays put, `τ` chains, `ξ`/`μ`
//! descend through the matching term constructor, an axiom atom performs its
//! step. Read without an anchor ("synthesis") reasons are assembled from
//! the endpoints of their variables; `ρ` is then reflexive at any term. Terms
//! are compared up to α and βη.

use std::collections::{BTreeMap, BTreeSet};

use super::env::Env;
use super::term::{leftmost_outermost_step, Term, Ty};
use super::typing::infer;
use crate::reason::{AxiomKind, MuKind, Reason, XiKind};

const HEAD_STEPS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EndpointError {
    #[error("unbound reason variable '{0}'")]
    UnboundReasonVariable(String),
}

type Res<T> = Result<Option<T>, EndpointError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    Fwd,
    Bwd,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Bwd,
            Dir::Bwd => Dir::Fwd,
        }
    }
}

#[derive(Debug, Clone)]
enum Ends {
    Known(Term, Term),
    /// Connects every term to itself.
    Refl,
}

/// Endpoints without an anchor; `None` when the reason is ill-formed or its
/// endpoints are not determined (e.g. a bare `ρ`).
pub fn endpoints_of(s: &Reason, env: &Env) -> Res<(Term, Term, Ty)> {
    check_bound(s, env, &BTreeSet::new())?;
    let Some(Ends::Known(a, b)) = synth(s, env)? else {
        return Ok(None);
    };
    let ty = match leaf_type(s, env) {
        Some(ty) => ty,
        None => match infer(&a, env) {
            Ok(ty) => ty,
            Err(_) => return Ok(None),
        },
    };
    Ok(Some((a, b, ty)))
}

/// Endpoints of `s` read from `source` at type `ty`.
pub fn endpoints_at(s: &Reason, source: &Term, ty: &Ty, env: &Env) -> Res<(Term, Term, Ty)> {
    Ok(target_from(s, source, env)?.map(|b| (source.clone(), b, ty.clone())))
}

/// The term `s` leads to from `source`.
pub fn target_from(s: &Reason, source: &Term, env: &Env) -> Res<Term> {
    check_bound(s, env, &j_binders(source))?;
    go(s, source, Dir::Fwd, env)
}

/// The term `s` starts from when it ends at `target`.
pub fn source_to(s: &Reason, target: &Term, env: &Env) -> Res<Term> {
    check_bound(s, env, &j_binders(target))?;
    go(s, target, Dir::Bwd, env)
}

fn check_bound(s: &Reason, env: &Env, local: &BTreeSet<String>) -> Result<(), EndpointError> {
    for v in s.vars() {
        if env.reason(v).is_none() && !local.contains(v) {
            return Err(EndpointError::UnboundReasonVariable(v.to_string()));
        }
    }
    Ok(())
}

fn j_binders(t: &Term) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    fn walk(t: &Term, out: &mut BTreeSet<String>) {
        if let Term::J(_, x, _) = t {
            out.insert(x.clone());
        }
        for c in t.children() {
            walk(c, out);
        }
    }
    walk(t, &mut out);
    out
}

/// Type of a reason built without changing type (σ, τ, sub over variables).
fn leaf_type(s: &Reason, env: &Env) -> Option<Ty> {
    match s {
        Reason::Var(v) => env.reason(v).map(|b| b.ty.clone()),
        Reason::Axiom(..) => {
            let mut it = env.steps(s);
            let first = it.next()?;
            it.next().is_none().then(|| first.ty.clone())
        }
        Reason::Sigma(r) => leaf_type(r, env),
        Reason::Tau(a, b) => leaf_type(a, env).or_else(|| leaf_type(b, env)),
        Reason::SubL(a, _) => leaf_type(a, env),
        Reason::SubR(_, b) => leaf_type(b, env),
        _ => None,
    }
}

fn occurs(t: &Term, y: &Term) -> bool {
    t.positions()
        .iter()
        .any(|p| t.subterm_at(p).map(|s| s.alpha_eq(y)).unwrap_or(false))
}

/// Matches `pat` against `t` with `params` as pattern variables.
fn match_params(pat: &Term, params: &[String], t: &Term) -> Option<BTreeMap<String, Term>> {
    fn go(p: &Term, t: &Term, params: &[String], theta: &mut BTreeMap<String, Term>) -> bool {
        if let Term::Var(x) = p {
            if params.contains(x) {
                // a bound name may not escape into the instance
                if t.free_vars().iter().any(|v| v.starts_with('%')) {
                    return false;
                }
                return match theta.get(x) {
                    Some(prev) => prev.alpha_eq(t),
                    None => {
                        theta.insert(x.clone(), t.clone());
                        true
                    }
                };
            }
        }
        let same_node = match (p, t) {
            (Term::Var(a), Term::Var(b)) => a == b,
            (Term::Lambda(a, x, _), Term::Lambda(b, y, _)) => a == b && x == y,
            (Term::Case(_, a, _, b, _), Term::Case(_, c, _, d, _)) => a == c && b == d,
            (Term::Eps(a, ..), Term::Eps(b, ..)) => a == b,
            (Term::EpsElim(_, a, b, _), Term::EpsElim(_, c, d, _)) => a == c && b == d,
            (Term::PathWitness(r, ..), Term::PathWitness(s, ..)) => r == s,
            (Term::J(_, a, _), Term::J(_, b, _)) => a == b,
            _ => std::mem::discriminant(p) == std::mem::discriminant(t),
        };
        same_node
            && p.children()
                .into_iter()
                .zip(t.children())
                .all(|(a, b)| go(a, b, params, theta))
    }
    let mut theta = BTreeMap::new();
    go(&pat.canonical(), &t.canonical(), params, &mut theta).then_some(theta)
}

/// Reads a variable binding in direction `dir` from `anchor`.
fn lookup(name: &str, anchor: &Term, dir: Dir, env: &Env) -> Res<Term> {
    let b = env
        .reason(name)
        .ok_or_else(|| EndpointError::UnboundReasonVariable(name.to_string()))?;
    let (from, to) = match dir {
        Dir::Fwd => (&b.left, &b.right),
        Dir::Bwd => (&b.right, &b.left),
    };
    if b.params.is_empty() {
        return Ok(from.def_eq(anchor).then(|| to.clone()));
    }
    let names: Vec<String> = b.params.iter().map(|(x, _)| x.clone()).collect();
    let theta = match_params(from, &names, anchor)
        .or_else(|| match_params(&from.normal_form(), &names, &anchor.normal_form()));
    Ok(theta.map(|theta| {
        theta
            .iter()
            .fold(to.clone(), |acc, (x, a)| acc.subst(x, a))
    }))
}

fn go(s: &Reason, anchor: &Term, dir: Dir, env: &Env) -> Res<Term> {
    match s {
        Reason::Var(v) => lookup(v, anchor, dir, env),
        Reason::Rho => Ok(Some(anchor.clone())),
        Reason::Axiom(kind, tag) => {
            let pick = |eq: &dyn Fn(&Term, &Term) -> bool| {
                env.steps(s).find_map(|b| {
                    let (from, to) = match dir {
                        Dir::Fwd => (&b.left, &b.right),
                        Dir::Bwd => (&b.right, &b.left),
                    };
                    eq(from, anchor).then(|| to.clone())
                })
            };
            if let Some(t) = pick(&|a, b| a.alpha_eq(b)).or_else(|| pick(&|a, b| a.def_eq(b))) {
                return Ok(Some(t));
            }
            if dir == Dir::Bwd {
                return Ok(None);
            }
            Ok(match tag {
                Some(tag) => anchor.step_at(*kind, &tag.position).ok().flatten(),
                None => leftmost_outermost_step(anchor, &[*kind]).map(|(_, _, t)| t),
            })
        }
        Reason::Sigma(r) => go(r, anchor, dir.flip(), env),
        Reason::Tau(a, b) => {
            let (first, second) = match dir {
                Dir::Fwd => (a, b),
                Dir::Bwd => (b, a),
            };
            let Some(mid) = go(first, anchor, dir, env)? else {
                return Ok(None);
            };
            if let Some(t) = go(second, &mid, dir, env)? {
                return Ok(Some(t));
            }
            Ok(match synth(second, env)? {
                Some(Ends::Known(l, r)) => match dir {
                    Dir::Fwd => l.def_eq(&mid).then_some(r),
                    Dir::Bwd => r.def_eq(&mid).then_some(l),
                },
                Some(Ends::Refl) => Some(mid),
                None => None,
            })
        }
        Reason::Xi(..) | Reason::Mu(..) => {
            if let Some(t) = structural(s, anchor, dir, env)? {
                return Ok(Some(t));
            }
            // head steps first: `fst(<(λx.x) c, a>)` still shows `(λx.x) c`
            let mut head = anchor.clone();
            for _ in 0..HEAD_STEPS {
                let Some(next) = head.step_root(AxiomKind::Beta).or_else(|| head.step_root(AxiomKind::Eta)) else {
                    break;
                };
                head = next;
                if let Some(t) = structural(s, &head, dir, env)? {
                    return Ok(Some(t));
                }
            }
            let nf = anchor.normal_form();
            if nf != *anchor {
                if let Some(t) = structural(s, &nf, dir, env)? {
                    return Ok(Some(t));
                }
            }
            via_synth(s, anchor, dir, env)
        }
        Reason::SubL(r1, r2) => match dir {
            // x =_r1 C[y], y =_r2 u  gives  x =_subL(r1,r2) C[u]
            Dir::Fwd => {
                let Some(t) = go(r1, anchor, Dir::Fwd, env)? else {
                    return Ok(None);
                };
                match synth(r2, env)? {
                    Some(Ends::Refl) => return Ok(Some(t)),
                    Some(Ends::Known(y, u)) if occurs(&t, &y) => return Ok(Some(t.replace_all(&y, &u))),
                    _ => {}
                }
                for p in t.positions() {
                    let sub = t.subterm_at(&p).expect("own position");
                    if let Some(u) = go(r2, sub, Dir::Fwd, env)? {
                        return Ok(Some(t.replace_all(sub, &u)));
                    }
                }
                Ok(None)
            }
            Dir::Bwd => match synth(r2, env)? {
                Some(Ends::Known(y, u)) => go(r1, &anchor.replace_all(&u, &y), Dir::Bwd, env),
                Some(Ends::Refl) => go(r1, anchor, Dir::Bwd, env),
                None => Ok(None),
            },
        },
        Reason::SubR(r1, r2) => match dir {
            // x =_r1 w, C[w] =_r2 u  gives  C[x] =_subR(r1,r2) u
            Dir::Fwd => {
                match synth(r1, env)? {
                    Some(Ends::Refl) => return go(r2, anchor, Dir::Fwd, env),
                    Some(Ends::Known(x, w)) if occurs(anchor, &x) => {
                        return go(r2, &anchor.replace_all(&x, &w), Dir::Fwd, env)
                    }
                    _ => {}
                }
                for p in anchor.positions() {
                    let sub = anchor.subterm_at(&p).expect("own position");
                    if let Some(w) = go(r1, sub, Dir::Fwd, env)? {
                        if let Some(u) = go(r2, &anchor.replace_all(sub, &w), Dir::Fwd, env)? {
                            return Ok(Some(u));
                        }
                    }
                }
                Ok(None)
            }
            Dir::Bwd => {
                let Some(cw) = go(r2, anchor, Dir::Bwd, env)? else {
                    return Ok(None);
                };
                Ok(match synth(r1, env)? {
                    Some(Ends::Known(x, w)) => Some(cw.replace_all(&w, &x)),
                    Some(Ends::Refl) => Some(cw),
                    None => None,
                })
            }
        },
        // r(s) from (λx.b) a: r read from b, s from a; the target is left
        // as the redex `(λx.b') a'`, one β-step short of the instance, so
        // that it lines up with `mu[app](s, xi[lambda](r))`
        Reason::RApp(r, a) => match (dir, anchor) {
            (Dir::Fwd, Term::App(f, arg)) => match &**f {
                Term::Lambda(x, ann, b) => {
                    let Some(g) = go(r, b, Dir::Fwd, env)? else {
                        return Ok(None);
                    };
                    let Some(arg2) = go(a, arg, Dir::Fwd, env)? else {
                        return Ok(None);
                    };
                    Ok(Some(Term::app(Term::Lambda(x.clone(), ann.clone(), Box::new(g)), arg2)))
                }
                _ => Ok(None),
            },
            _ => Ok(None),
        },
    }
}

fn via_synth(s: &Reason, anchor: &Term, dir: Dir, env: &Env) -> Res<Term> {
    Ok(match synth(s, env)? {
        Some(Ends::Known(l, r)) => match dir {
            Dir::Fwd => l.def_eq(anchor).then_some(r),
            Dir::Bwd => r.def_eq(anchor).then_some(l),
        },
        Some(Ends::Refl) => Some(anchor.clone()),
        None => None,
    })
}

/// One ξ/μ layer: the anchor must be built by the matching constructor.
fn structural(s: &Reason, anchor: &Term, dir: Dir, env: &Env) -> Res<Term> {
    macro_rules! sub {
        ($r:expr, $t:expr) => {
            sub!($r, $t, env)
        };
        ($r:expr, $t:expr, $env:expr) => {
            match go($r, $t, dir, $env)? {
                Some(x) => x,
                None => return Ok(None),
            }
        };
    }
    let out = match (s, anchor) {
        (Reason::Xi(XiKind::Pair, args), Term::Pair(a, b)) => Term::pair(sub!(&args[0], a), sub!(&args[1], b)),
        (Reason::Xi(XiKind::Inl, args), Term::Inl(a)) => Term::inl(sub!(&args[0], a)),
        (Reason::Xi(XiKind::Inr, args), Term::Inr(a)) => Term::inr(sub!(&args[0], a)),
        (Reason::Xi(XiKind::Lambda, args), Term::Lambda(x, ann, b)) => {
            Term::Lambda(x.clone(), ann.clone(), Box::new(sub!(&args[0], b)))
        }
        (Reason::Xi(XiKind::Eps, args), Term::Eps(x, f, a)) => Term::eps(x.clone(), sub!(&args[0], f), (**a).clone()),
        (Reason::Xi(XiKind::IdIntro, args), Term::PathWitness(..)) => {
            let out = sub!(&args[0], anchor);
            if !matches!(out, Term::PathWitness(..)) {
                return Ok(None);
            }
            out
        }
        (Reason::Mu(MuKind::Fst, args), Term::Fst(p)) => Term::fst(sub!(&args[0], p)),
        (Reason::Mu(MuKind::Snd, args), Term::Snd(p)) => Term::snd(sub!(&args[0], p)),
        // mu[app](argument reason, function reason)
        (Reason::Mu(MuKind::App, args), Term::App(f, a)) => {
            let f2 = sub!(&args[1], f);
            Term::app(f2, sub!(&args[0], a))
        }
        (Reason::Mu(MuKind::Case, args), Term::Case(c, x, d, y, e)) => {
            let c2 = sub!(&args[0], c);
            let d2 = sub!(&args[1], d);
            Term::case(c2, x.clone(), d2, y.clone(), sub!(&args[2], e))
        }
        (Reason::Mu(MuKind::SigElim, args), Term::EpsElim(e, g, t, d)) => {
            let e2 = sub!(&args[0], e);
            Term::eps_elim(e2, g.clone(), t.clone(), sub!(&args[1], d))
        }
        (Reason::Mu(MuKind::IdElim, args), Term::J(p, t, d)) => {
            let p2 = sub!(&args[0], p);
            let inner = match infer(p, env) {
                Ok(Ty::IdTy(a, l, r)) => env.extended_reason(t, &l, &r, &a),
                _ => env.clone(),
            };
            Term::j(p2, t.clone(), sub!(&args[1], d, &inner))
        }
        _ => return Ok(None),
    };
    Ok(Some(out))
}

fn synth(s: &Reason, env: &Env) -> Res<Ends> {
    Ok(match s {
        Reason::Var(v) => {
            let b = env
                .reason(v)
                .ok_or_else(|| EndpointError::UnboundReasonVariable(v.clone()))?;
            Some(Ends::Known(b.left.clone(), b.right.clone()))
        }
        Reason::Rho => Some(Ends::Refl),
        Reason::Axiom(..) => {
            let mut it = env.steps(s);
            match (it.next(), it.next()) {
                (Some(b), None) => Some(Ends::Known(b.left.clone(), b.right.clone())),
                _ => None,
            }
        }
        Reason::Sigma(r) => synth(r, env)?.map(|e| match e {
            Ends::Known(l, r) => Ends::Known(r, l),
            Ends::Refl => Ends::Refl,
        }),
        Reason::Tau(a, b) => match (synth(a, env)?, synth(b, env)?) {
            (Some(Ends::Known(l1, r1)), Some(Ends::Known(l2, r2))) => r1.def_eq(&l2).then_some(Ends::Known(l1, r2)),
            (Some(Ends::Refl), x) | (x, Some(Ends::Refl)) => x,
            (Some(Ends::Known(l1, r1)), None) => go(b, &r1, Dir::Fwd, env)?.map(|r| Ends::Known(l1, r)),
            (None, Some(Ends::Known(l2, r2))) => go(a, &l2, Dir::Bwd, env)?.map(|l| Ends::Known(l, r2)),
            (None, None) => None,
        },
        Reason::Xi(_, args) | Reason::Mu(_, args) => {
            let mut ends = Vec::new();
            for a in args {
                match synth(a, env)? {
                    Some(e) => ends.push(e),
                    None => return Ok(None),
                }
            }
            if ends.iter().all(|e| matches!(e, Ends::Refl)) {
                return Ok(Some(Ends::Refl));
            }
            let known: Option<Vec<(Term, Term)>> = ends
                .into_iter()
                .map(|e| match e {
                    Ends::Known(l, r) => Some((l, r)),
                    Ends::Refl => None,
                })
                .collect();
            let Some(k) = known else {
                return Ok(None);
            };
            let side = |f: &dyn Fn(&(Term, Term)) -> Term| -> Vec<Term> { k.iter().map(f).collect() };
            let (ls, rs) = (side(&|p| p.0.clone()), side(&|p| p.1.clone()));
            let build = |v: &[Term]| -> Option<Term> {
                Some(match s {
                    Reason::Xi(XiKind::Pair, _) => Term::pair(v[0].clone(), v[1].clone()),
                    Reason::Xi(XiKind::Inl, _) => Term::inl(v[0].clone()),
                    Reason::Xi(XiKind::Inr, _) => Term::inr(v[0].clone()),
                    Reason::Xi(XiKind::IdIntro, _) => v[0].clone(),
                    Reason::Mu(MuKind::Fst, _) => Term::fst(v[0].clone()),
                    Reason::Mu(MuKind::Snd, _) => Term::snd(v[0].clone()),
                    Reason::Mu(MuKind::App, _) => Term::app(v[1].clone(), v[0].clone()),
                    // binders are not recoverable from the reason alone
                    _ => return None,
                })
            };
            match (build(&ls), build(&rs)) {
                (Some(l), Some(r)) => Some(Ends::Known(l, r)),
                _ => None,
            }
        }
        // with a reflexive outer half the context is empty
        Reason::SubL(r1, r2) => match synth(r1, env)? {
            Some(Ends::Known(x, t)) => match synth(r2, env)? {
                Some(Ends::Known(y, u)) if occurs(&t, &y) => Some(Ends::Known(x, t.replace_all(&y, &u))),
                Some(Ends::Refl) => Some(Ends::Known(x, t)),
                _ => go(s, &x, Dir::Fwd, env)?.map(|t| Ends::Known(x, t)),
            },
            Some(Ends::Refl) => synth(r2, env)?,
            None => None,
        },
        Reason::SubR(r1, r2) => match synth(r2, env)? {
            Some(Ends::Known(cw, u)) => match synth(r1, env)? {
                Some(Ends::Known(x, w)) => Some(Ends::Known(cw.replace_all(&w, &x), u)),
                Some(Ends::Refl) => Some(Ends::Known(cw, u)),
                None => None,
            },
            Some(Ends::Refl) => synth(r1, env)?,
            None => None,
        },
        Reason::RApp(..) => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::syntax::parse_term;
    use crate::reason::{parse_reason, AxiomKind, Position};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn r(s: &str) -> Reason {
        parse_reason(s).unwrap()
    }

    fn env() -> Env {
        let a = Ty::atom("A");
        Env::new()
            .with_term("x", a.clone())
            .unwrap()
            .with_term("a", a.clone())
            .unwrap()
            .with_term("b", a.clone())
            .unwrap()
            .with_term("c", a.clone())
            .unwrap()
            .with_reason("r", t("a"), t("b"), a.clone())
            .unwrap()
            .with_reason("s", t("b"), t("c"), a)
            .unwrap()
    }

    #[test]
    fn general_rules() {
        let env = env();
        let a = Ty::atom("A");
        assert_eq!(endpoints_of(&r("sigma(r)"), &env).unwrap(), Some((t("b"), t("a"), a.clone())));
        assert_eq!(endpoints_of(&r("tau(r,s)"), &env).unwrap(), Some((t("a"), t("c"), a.clone())));
        assert_eq!(
            endpoints_at(&Reason::Rho, &t("x"), &a, &env).unwrap(),
            Some((t("x"), t("x"), a.clone()))
        );
        // middle endpoints disagree
        assert_eq!(endpoints_of(&r("tau(s,r)"), &env).unwrap(), None);
        assert_eq!(
            endpoints_of(&r("tau(r,q)"), &env),
            Err(EndpointError::UnboundReasonVariable("q".into()))
        );
        assert_eq!(endpoints_of(&Reason::Rho, &env).unwrap(), None);
    }

    #[test]
    fn congruence_lifts_through_constructors() {
        let env = env();
        assert_eq!(target_from(&r("xi[pair](r,s)"), &t("<a,b>"), &env).unwrap(), Some(t("<b,c>")));
        assert_eq!(target_from(&r("xi[inl](rho)"), &t("inl(x)"), &env).unwrap(), Some(t("inl(x)")));
        assert_eq!(target_from(&r("mu[fst](xi[pair](r,s))"), &t("fst(<a,b>)"), &env).unwrap(), Some(t("fst(<b,c>)")));
        assert_eq!(target_from(&r("mu[app](r,rho)"), &t("f a"), &env).unwrap(), Some(t("f b")));
        assert_eq!(source_to(&r("xi[inr](sigma(r))"), &t("inr(a)"), &env).unwrap(), Some(t("inr(b)")));
        // wrong constructor
        assert_eq!(target_from(&r("xi[inl](r)"), &t("inr(a)"), &env).unwrap(), None);
    }

    #[test]
    fn tau_compares_middles_up_to_beta() {
        let env = env();
        // fst(<a,b>) =_mx b ... via r read at the β-normal middle
        assert_eq!(target_from(&r("tau(mu[fst](xi[pair](rho,rho)),r)"), &t("fst(<a,c>)"), &env).unwrap(), Some(t("b")));
    }

    #[test]
    fn subterm_substitution() {
        let env = env();
        // x =_rho <a,a>? no: <a,x> =_rho <a,x>, then a =_r b replaces every a
        assert_eq!(target_from(&r("subL(rho,r)"), &t("<a,a>"), &env).unwrap(), Some(t("<b,b>")));
        assert_eq!(target_from(&r("subR(r,rho)"), &t("<a,c>"), &env).unwrap(), Some(t("<b,c>")));
        assert_eq!(source_to(&r("subR(r,rho)"), &t("<b,c>"), &env).unwrap(), Some(t("<a,c>")));
    }

    #[test]
    fn axiom_atoms_step_the_term() {
        let env = env();
        let beta = Reason::tagged(AxiomKind::Beta, Position::from(vec![1]));
        assert_eq!(target_from(&beta, &t("<a,fst(<b,c>)>"), &env).unwrap(), Some(t("<a,b>")));
        assert_eq!(target_from(&beta, &t("<a,b>"), &env).unwrap(), None);
        assert_eq!(target_from(&Reason::axiom(AxiomKind::Eta), &t("λy.f y"), &env).unwrap(), Some(t("f")));
    }

    #[test]
    fn parametric_reasons_instantiate() {
        let a = Ty::atom("A");
        let env = env()
            .with_parametric_reason("p", vec![("y".into(), a.clone())], t("<y,a>"), t("<y,b>"), Ty::prod(a.clone(), a))
            .unwrap();
        assert_eq!(target_from(&r("p"), &t("<c,a>"), &env).unwrap(), Some(t("<c,b>")));
        assert_eq!(target_from(&r("xi[lambda](p)"), &t("λy.<y,a>"), &env).unwrap(), Some(t("λy.<y,b>")));
        // r(s): the body's reason at the argument's, up to one β-step
        let out = target_from(&r("p(r)"), &t("(λy.<y,a>) a"), &env).unwrap().unwrap();
        assert_eq!(out, t("(λy.<y,b>) b"));
        assert!(out.def_eq(&t("<b,b>")));
    }
}
