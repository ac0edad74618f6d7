//! Syntactic unification where every `Var` is a pattern variable.

use std::collections::BTreeMap;

use crate::reason::Reason;

pub(crate) type Subst = BTreeMap<String, Reason>;

fn resolve<'a>(t: &'a Reason, s: &'a Subst) -> &'a Reason {
    let mut cur = t;
    while let Reason::Var(v) = cur {
        match s.get(v) {
            Some(next) => cur = next,
            None => break,
        }
    }
    cur
}

fn occurs(v: &str, t: &Reason, s: &Subst) -> bool {
    match resolve(t, s) {
        Reason::Var(w) => w == v,
        other => other.children().into_iter().any(|c| occurs(v, c, s)),
    }
}

fn same_constructor(a: &Reason, b: &Reason) -> bool {
    match (a, b) {
        (Reason::Xi(k, x), Reason::Xi(l, y)) => k == l && x.len() == y.len(),
        (Reason::Mu(k, x), Reason::Mu(l, y)) => k == l && x.len() == y.len(),
        (Reason::Axiom(..), _) | (_, Reason::Axiom(..)) => a == b,
        _ => std::mem::discriminant(a) == std::mem::discriminant(b),
    }
}

fn unify_into(a: &Reason, b: &Reason, s: &mut Subst) -> bool {
    let (a, b) = (resolve(a, s).clone(), resolve(b, s).clone());
    match (&a, &b) {
        (Reason::Var(x), Reason::Var(y)) if x == y => true,
        (Reason::Var(x), t) | (t, Reason::Var(x)) => {
            if occurs(x, t, s) {
                return false;
            }
            s.insert(x.clone(), t.clone());
            true
        }
        _ if same_constructor(&a, &b) => a
            .children()
            .into_iter()
            .zip(b.children())
            .all(|(x, y)| unify_into(x, y, s)),
        _ => false,
    }
}

/// Most general unifier of `a` and `b`.
pub(crate) fn unify(a: &Reason, b: &Reason) -> Option<Subst> {
    let mut s = Subst::new();
    unify_into(a, b, &mut s).then_some(s)
}

pub(crate) fn apply(t: &Reason, s: &Subst) -> Reason {
    match resolve(t, s) {
        Reason::Var(v) => Reason::Var(v.clone()),
        other => {
            let kids = other.children().into_iter().map(|c| apply(c, s)).collect();
            other.with_children(kids)
        }
    }
}

/// Renames variables to `a, b, c, ...` in order of first occurrence in `terms`.
pub(crate) fn canonical_names(terms: &[&Reason]) -> Vec<Reason> {
    let mut seen: Vec<String> = Vec::new();
    for t in terms {
        for v in t.vars() {
            if !seen.iter().any(|s| s == v) {
                seen.push(v.to_string());
            }
        }
    }
    let name = |i: usize| -> String {
        let letters = "abcdefghijklmnopqrstuvwxyz".as_bytes();
        if i < 26 {
            (letters[i] as char).to_string()
        } else {
            format!("x{i}")
        }
    };
    terms
        .iter()
        .map(|t| {
            t.rename_vars(&|v: &str| {
                let i = seen.iter().position(|s| s == v).expect("collected");
                name(i)
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reason::parse_reason;

    fn p(s: &str) -> Reason {
        parse_reason(s).unwrap()
    }

    #[test]
    fn unifies_and_applies() {
        let s = unify(&p("tau(x,sigma(y))"), &p("tau(sigma(z),w)")).unwrap();
        assert_eq!(apply(&p("tau(x,sigma(y))"), &s), apply(&p("tau(sigma(z),w)"), &s));
        assert!(unify(&p("x"), &p("sigma(x)")).is_none());
        assert!(unify(&p("xi[inl](x)"), &p("xi[inr](x)")).is_none());
        assert!(unify(&p("beta"), &p("eta")).is_none());
        assert!(unify(&p("tau(x,x)"), &p("tau(rho,sigma(rho))")).is_none());
    }

    #[test]
    fn canonical_renaming() {
        let out = canonical_names(&[&p("tau(u,tau(sigma(u),v))"), &p("v")]);
        assert_eq!(out, vec![p("tau(a,tau(sigma(a),b))"), p("b")]);
    }
}
