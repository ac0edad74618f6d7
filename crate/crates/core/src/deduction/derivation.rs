//! Labelled natural-deduction derivations and their checker.
//!
//! A node names its rule, its conclusion and its premises. Hypotheses are
//! leaves with a label; a node discharges labels of hypotheses in its
//! subtree. Binding rules (λ, case, ε, E, J) also make their bound names
//! available to the premises that sit under the binder.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use super::env::Env;
use super::syntax::parse_judgment;
use super::term::{Connective, Term, Ty};
use super::typing::{check, check_ty, TypeError};
use crate::reason::{AxiomKind, MuKind, Position, Reason, XiKind};
use crate::trs::{rewrite_once, rule_by_name, RuleSet};

#[derive(Debug, Clone, PartialEq)]
pub enum Judgment {
    /// `a : A`
    Member(Term, Ty),
    /// `a =_s b : A`
    Eq(Term, Reason, Term, Ty),
    /// `A type`
    Type(Ty),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub rule: String,
    pub conclusion: Judgment,
    pub premises: Vec<Derivation>,
    pub discharges: BTreeSet<String>,
    /// Set on hypotheses only.
    pub label: Option<String>,
}

impl Derivation {
    pub fn new(rule: impl Into<String>, conclusion: Judgment, premises: Vec<Derivation>) -> Self {
        Derivation {
            rule: rule.into(),
            conclusion,
            premises,
            discharges: BTreeSet::new(),
            label: None,
        }
    }

    pub fn leaf(rule: impl Into<String>, conclusion: Judgment) -> Self {
        Derivation::new(rule, conclusion, Vec::new())
    }

    pub fn hyp(label: impl Into<String>, conclusion: Judgment) -> Self {
        Derivation {
            label: Some(label.into()),
            ..Derivation::leaf("hyp", conclusion)
        }
    }

    pub fn discharging<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        self.discharges.extend(labels.into_iter().map(Into::into));
        self
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn at(&self, path: &[usize]) -> Option<&Derivation> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.premises.get(i)?.at(rest),
        }
    }

    /// Hypothesis labels used in this subtree and not discharged inside it.
    pub fn open_labels(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = self.label.iter().cloned().collect();
        for p in &self.premises {
            out.extend(p.open_labels());
        }
        out.retain(|l| !self.discharges.contains(l));
        out
    }

    fn hyps_labelled<'a>(&'a self, label: &str, out: &mut Vec<&'a Judgment>) {
        if self.rule == "hyp" && self.label.as_deref() == Some(label) {
            out.push(&self.conclusion);
        }
        for p in &self.premises {
            p.hyps_labelled(label, out);
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "rule": self.rule,
            "conclusion": self.conclusion.to_string(),
            "premises": self.premises.iter().map(Derivation::to_json).collect::<Vec<_>>(),
            "discharges": self.discharges.iter().collect::<Vec<_>>(),
        });
        if let Some(l) = &self.label {
            v["label"] = json!(l);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self, DerivationJsonError> {
        let bad = |m: &str| DerivationJsonError(m.to_string());
        let rule = v["rule"].as_str().ok_or_else(|| bad("missing \"rule\""))?;
        let text = v["conclusion"].as_str().ok_or_else(|| bad("missing \"conclusion\""))?;
        let conclusion = parse_judgment(text).map_err(|e| DerivationJsonError(e.to_string()))?;
        let premises = match &v["premises"] {
            Value::Null => Vec::new(),
            Value::Array(ps) => ps.iter().map(Derivation::from_json).collect::<Result<_, _>>()?,
            _ => return Err(bad("\"premises\" must be an array")),
        };
        let discharges = match &v["discharges"] {
            Value::Null => BTreeSet::new(),
            Value::Array(ls) => ls
                .iter()
                .map(|l| l.as_str().map(str::to_string).ok_or_else(|| bad("labels must be strings")))
                .collect::<Result<_, _>>()?,
            _ => return Err(bad("\"discharges\" must be an array")),
        };
        Ok(Derivation {
            rule: rule.to_string(),
            conclusion,
            premises,
            discharges,
            label: v["label"].as_str().map(str::to_string),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad derivation JSON: {0}")]
pub struct DerivationJsonError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagnosticKind {
    EndpointMismatch,
    UnboundReasonVariable,
    WrongKindAnnotation,
    UndischargedAssumption,
    IdFormationViolation,
    TypeMismatch,
    Malformed,
}

impl DiagnosticKind {
    pub fn name(self) -> &'static str {
        match self {
            DiagnosticKind::EndpointMismatch => "endpoint-mismatch",
            DiagnosticKind::UnboundReasonVariable => "unbound-reason-variable",
            DiagnosticKind::WrongKindAnnotation => "wrong-kind-annotation",
            DiagnosticKind::UndischargedAssumption => "undischarged-assumption",
            DiagnosticKind::IdFormationViolation => "id-formation-violation",
            DiagnosticKind::TypeMismatch => "type-mismatch",
            DiagnosticKind::Malformed => "malformed",
        }
    }
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failure at one node; `path` lists premise indices from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: Vec<usize>,
    pub rule: String,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {} ({}): {}: {}", Position::from(self.path.clone()), self.rule, self.kind, self.message)
    }
}

type Check = Result<(), (DiagnosticKind, String)>;

fn fail<T>(kind: DiagnosticKind, msg: impl Into<String>) -> Result<T, (DiagnosticKind, String)> {
    Err((kind, msg.into()))
}

fn malformed<T>(msg: impl Into<String>) -> Result<T, (DiagnosticKind, String)> {
    fail(DiagnosticKind::Malformed, msg)
}

fn from_type_error(e: TypeError) -> (DiagnosticKind, String) {
    let kind = match &e {
        TypeError::UnboundReasonVariable(_) => DiagnosticKind::UnboundReasonVariable,
        TypeError::EndpointMismatch(_) => DiagnosticKind::EndpointMismatch,
        TypeError::IdFormation(_) => DiagnosticKind::IdFormationViolation,
        _ => DiagnosticKind::TypeMismatch,
    };
    (kind, e.to_string())
}

fn member(j: &Judgment) -> Result<(&Term, &Ty), (DiagnosticKind, String)> {
    match j {
        Judgment::Member(a, ty) => Ok((a, ty)),
        _ => malformed(format!("expected a membership judgment, found '{j}'")),
    }
}

fn equation(j: &Judgment) -> Result<(&Term, &Reason, &Term, &Ty), (DiagnosticKind, String)> {
    match j {
        Judgment::Eq(a, s, b, ty) => Ok((a, s, b, ty)),
        _ => malformed(format!("expected an equation, found '{j}'")),
    }
}

fn arity(d: &Derivation, n: usize) -> Check {
    if d.premises.len() == n {
        Ok(())
    } else {
        malformed(format!("'{}' takes {n} premise(s), found {}", d.rule, d.premises.len()))
    }
}

fn same_term(found: &Term, expected: &Term, what: &str) -> Check {
    if found.alpha_eq(expected) {
        Ok(())
    } else {
        fail(DiagnosticKind::EndpointMismatch, format!("{what}: expected '{expected}', found '{found}'"))
    }
}

fn same_ty(found: &Ty, expected: &Ty) -> Check {
    if found.def_eq(expected) {
        Ok(())
    } else {
        fail(DiagnosticKind::TypeMismatch, format!("expected type {expected}, found {found}"))
    }
}

fn same_reason(found: &Reason, expected: &Reason) -> Check {
    if found == expected {
        Ok(())
    } else {
        malformed(format!("expected reason '{expected}', found '{found}'"))
    }
}

/// All ids of named rules, in the order the checker recognises them.
pub const RULE_NAMES: &[&str] = &[
    "hyp", "typing", "refl", "symm", "trans", "subL", "subR", "xi-pair", "xi-inl", "xi-inr", "xi-lambda", "xi-eps",
    "id-intro-xi", "mu-fst", "mu-snd", "mu-app", "mu-case", "mu-sigElim", "mu-idElim", "id-elim-mu", "beta-prod",
    "beta-sum", "beta-pi", "beta-sigma", "beta-id", "eta-prod", "eta-sum", "eta-pi", "eta-sigma", "eta-id", "id-beta",
    "id-eta", "zeta", "alpha", "id-form", "id-intro", "id-elim", "rewrite", "pi-intro", "pi-elim", "prod-intro",
    "prod-elim-fst", "prod-elim-snd", "sum-intro-inl", "sum-intro-inr", "sum-elim", "sigma-intro", "sigma-elim",
];

/// Checks every node; diagnostics come in depth-first order.
pub fn check_derivation(d: &Derivation, env: &Env) -> Result<(), Vec<Diagnostic>> {
    let mut c = Checker { global: env, diags: Vec::new() };
    c.node(d, env, &BTreeSet::new(), &mut Vec::new());
    if c.diags.is_empty() {
        Ok(())
    } else {
        Err(c.diags)
    }
}

struct Checker<'a> {
    global: &'a Env,
    diags: Vec<Diagnostic>,
}

impl Checker<'_> {
    fn node(&mut self, d: &Derivation, env: &Env, discharged: &BTreeSet<String>, path: &mut Vec<usize>) {
        let mut local = env.clone();
        let mut own: Vec<(DiagnosticKind, String)> = Vec::new();
        for label in &d.discharges {
            let mut found = Vec::new();
            for p in &d.premises {
                p.hyps_labelled(label, &mut found);
            }
            if found.is_empty() {
                own.push((DiagnosticKind::Malformed, format!("discharged label '{label}' labels no hypothesis")));
            }
            // one binding per label is enough
            if let Some(j) = found.first() {
                match j {
                    Judgment::Member(Term::Var(x), ty) => local.push_term(x, ty),
                    Judgment::Eq(a, Reason::Var(t), b, ty) => local.push_reason(t, a, b, ty),
                    _ => {}
                }
            }
        }
        let mut inner = discharged.clone();
        inner.extend(d.discharges.iter().cloned());
        for (i, p) in d.premises.iter().enumerate() {
            let penv = premise_env(d, i, &local);
            path.push(i);
            self.node(p, &penv, &inner, path);
            path.pop();
        }
        if let Err(e) = self.rule(d, &local, discharged) {
            own.push(e);
        }
        for (kind, message) in own {
            self.diags.push(Diagnostic {
                path: path.clone(),
                rule: d.rule.clone(),
                kind,
                message,
            });
        }
    }

    fn rule(&self, d: &Derivation, env: &Env, discharged: &BTreeSet<String>) -> Check {
        let c = &d.conclusion;
        let prem = |i: usize| &d.premises[i].conclusion;
        match d.rule.as_str() {
            "hyp" => {
                arity(d, 0)?;
                let Some(label) = &d.label else {
                    return malformed("hypothesis without a label");
                };
                if discharged.contains(label) || self.holds_globally(c) {
                    Ok(())
                } else {
                    fail(DiagnosticKind::UndischargedAssumption, format!("'{label}: {c}' is never discharged"))
                }
            }
            "typing" => {
                arity(d, 0)?;
                match c {
                    Judgment::Member(a, ty) => {
                        check_ty(ty, env).map_err(from_type_error)?;
                        check(a, ty, env).map_err(from_type_error)
                    }
                    Judgment::Type(ty) => check_ty(ty, env).map_err(from_type_error),
                    Judgment::Eq(..) => malformed("equations are derived, not typed"),
                }
            }
            "refl" => {
                let (a, s, b, ty) = equation(c)?;
                if d.premises.len() > 1 {
                    return arity(d, 1);
                }
                if let Some(p) = d.premises.first() {
                    let (pa, pty) = member(&p.conclusion)?;
                    same_term(pa, a, "reflexivity")?;
                    same_ty(pty, ty)?;
                } else {
                    check(a, ty, env).map_err(from_type_error)?;
                }
                if *s != Reason::Rho {
                    return fail(DiagnosticKind::WrongKindAnnotation, format!("reflexivity introduces rho, found '{s}'"));
                }
                same_term(b, a, "reflexivity")
            }
            "symm" => {
                arity(d, 1)?;
                let (a, s, b, ty) = equation(c)?;
                let (pa, ps, pb, pty) = equation(prem(0))?;
                same_reason(s, &Reason::sigma(ps.clone()))?;
                same_term(a, pb, "left endpoint")?;
                same_term(b, pa, "right endpoint")?;
                same_ty(ty, pty)
            }
            "trans" => {
                arity(d, 2)?;
                let (a, s, b, ty) = equation(c)?;
                let (la, lr, lb, lty) = equation(prem(0))?;
                let (ra, rs, rb, rty) = equation(prem(1))?;
                if !lb.def_eq(ra) {
                    return fail(DiagnosticKind::EndpointMismatch, format!("middle endpoints '{lb}' and '{ra}' differ"));
                }
                same_ty(lty, rty)?;
                same_reason(s, &Reason::tau(lr.clone(), rs.clone()))?;
                same_term(a, la, "left endpoint")?;
                same_term(b, rb, "right endpoint")?;
                same_ty(ty, lty)
            }
            // x =_r C[y] : A and y =_s u : B give x =_subL(r,s) C[u] : A
            "subL" => {
                arity(d, 2)?;
                let (x, s, cu, ty) = equation(c)?;
                let (px, r1, cy, pty) = equation(prem(0))?;
                let (y, r2, u, _) = equation(prem(1))?;
                same_reason(s, &Reason::sub_l(r1.clone(), r2.clone()))?;
                if !contains(cy, y) {
                    return fail(DiagnosticKind::EndpointMismatch, format!("'{y}' does not occur in '{cy}'"));
                }
                same_term(x, px, "left endpoint")?;
                same_term(cu, &cy.replace_all(y, u), "right endpoint")?;
                same_ty(ty, pty)
            }
            // x =_r w : B and C[w] =_s u : A give C[x] =_subR(r,s) u : A
            "subR" => {
                arity(d, 2)?;
                let (cx, s, u, ty) = equation(c)?;
                let (x, r1, w, _) = equation(prem(0))?;
                let (cw, r2, pu, pty) = equation(prem(1))?;
                same_reason(s, &Reason::sub_r(r1.clone(), r2.clone()))?;
                if !contains(cw, w) {
                    return fail(DiagnosticKind::EndpointMismatch, format!("'{w}' does not occur in '{cw}'"));
                }
                if !contains(cx, x) || !cx.replace_all(x, w).alpha_eq(cw) {
                    return fail(
                        DiagnosticKind::EndpointMismatch,
                        format!("'{cx}' is not '{cw}' with '{w}' replaced by '{x}'"),
                    );
                }
                same_term(u, pu, "right endpoint")?;
                same_ty(ty, pty)
            }
            "id-intro-xi" => self.xi(d, XiKind::IdIntro),
            "id-elim-mu" => self.mu(d, MuKind::IdElim),
            name if name.starts_with("xi-") => match XiKind::from_name(&name[3..]) {
                Some(XiKind::IdIntro) => self.xi(d, XiKind::IdIntro),
                Some(k) => self.xi(d, k),
                None => malformed(format!("unknown rule '{name}'")),
            },
            name if name.starts_with("mu-") => match MuKind::from_name(&name[3..]) {
                Some(k) => self.mu(d, k),
                None => malformed(format!("unknown rule '{name}'")),
            },
            "id-beta" => self.conversion(d, AxiomKind::Beta, Some(Connective::Id), env),
            "id-eta" => self.conversion(d, AxiomKind::Eta, Some(Connective::Id), env),
            "zeta" => self.conversion(d, AxiomKind::Zeta, None, env),
            "alpha" => self.conversion(d, AxiomKind::Alpha, None, env),
            name if name.starts_with("beta-") || name.starts_with("eta-") => {
                let (kind, conn) = name.split_once('-').expect("checked prefix");
                let kind = if kind == "beta" { AxiomKind::Beta } else { AxiomKind::Eta };
                match Connective::from_name(conn) {
                    Some(conn) => self.conversion(d, kind, Some(conn), env),
                    None => malformed(format!("unknown rule '{name}'")),
                }
            }
            "id-form" => {
                arity(d, 2)?;
                let Judgment::Type(whole @ Ty::IdTy(base, a, b)) = c else {
                    return malformed(format!("id-form concludes 'Id_A(a,b) type', found '{c}'"));
                };
                check_ty(base, env).map_err(from_type_error)?;
                for (p, end) in [(prem(0), a), (prem(1), b)] {
                    let (pa, pty) = member(p)?;
                    same_term(pa, end, "endpoint")?;
                    if !pty.def_eq(base) {
                        return fail(
                            DiagnosticKind::IdFormationViolation,
                            format!("'{pa}' has type {pty}, not the base type of {whole}"),
                        );
                    }
                }
                Ok(())
            }
            "id-intro" => {
                arity(d, 1)?;
                let (w, ty) = member(c)?;
                let (a, s, b, base) = equation(prem(0))?;
                let (Term::PathWitness(ws, wa, wb), Ty::IdTy(tb, ta, tbb)) = (w, ty) else {
                    return malformed(format!("id-intro concludes 's(a,b) : Id_A(a,b)', found '{c}'"));
                };
                same_reason(ws, s)?;
                same_term(wa, a, "left endpoint")?;
                same_term(wb, b, "right endpoint")?;
                same_term(ta, a, "left endpoint of the type")?;
                same_term(tbb, b, "right endpoint of the type")?;
                same_ty(tb, base)
            }
            "id-elim" => {
                arity(d, 2)?;
                let (t, ty) = member(c)?;
                let Term::J(p, x, body) = t else {
                    return malformed(format!("id-elim concludes a J term, found '{t}'"));
                };
                let (pp, pty) = member(prem(0))?;
                if !matches!(pty, Ty::IdTy(..)) {
                    return fail(DiagnosticKind::TypeMismatch, format!("major premise has type {pty}"));
                }
                same_term(pp, p, "major premise")?;
                let (pd, dty) = member(prem(1))?;
                same_term(pd, body, "minor premise")?;
                same_ty(ty, dty)?;
                if d.premises[1].open_labels().iter().filter(|l| !d.discharges.contains(*l)).any(|l| {
                    let mut js = Vec::new();
                    d.premises[1].hyps_labelled(l, &mut js);
                    js.iter().any(|j| matches!(j, Judgment::Eq(_, Reason::Var(v), _, _) if v == x))
                }) {
                    return fail(
                        DiagnosticKind::UndischargedAssumption,
                        format!("the hypothesis on '{x}' must be discharged here"),
                    );
                }
                Ok(())
            }
            "rewrite" => {
                arity(d, 1)?;
                let (l, s, r, ty) = equation(c)?;
                let (pl, pty) = member(prem(0))?;
                same_term(pl, l, "rewritten element")?;
                same_ty(ty, pty)?;
                let Reason::Var(name) = s else {
                    return fail(DiagnosticKind::WrongKindAnnotation, format!("'{s}' does not name a rewrite rule"));
                };
                let Some(rule) = rule_by_name(name) else {
                    return fail(DiagnosticKind::WrongKindAnnotation, format!("no rewrite rule named '{name}'"));
                };
                let (Term::PathWitness(s1, a1, b1), Term::PathWitness(s2, a2, b2)) = (l, r) else {
                    return malformed("rewrite relates two canonical elements");
                };
                same_term(a2, a1, "left endpoint")?;
                same_term(b2, b1, "right endpoint")?;
                let all = RuleSet::all();
                let fires = s1
                    .positions()
                    .iter()
                    .any(|p| matches!(rewrite_once(s1, rule.id, p, &all), Ok(Some(out)) if out == *s2));
                if fires {
                    Ok(())
                } else {
                    fail(DiagnosticKind::EndpointMismatch, format!("'{s1}' does not rewrite to '{s2}' by '{name}'"))
                }
            }
            name => self.intro_elim(d, name, env),
        }
    }

    fn holds_globally(&self, j: &Judgment) -> bool {
        match j {
            Judgment::Member(Term::Var(x), ty) => self.global.term_type(x).is_some_and(|t| t.def_eq(ty)),
            Judgment::Eq(a, Reason::Var(t), b, ty) => self
                .global
                .reason(t)
                .is_some_and(|r| r.params.is_empty() && r.left.def_eq(a) && r.right.def_eq(b) && r.ty.def_eq(ty)),
            _ => false,
        }
    }

    fn xi(&self, d: &Derivation, kind: XiKind) -> Check {
        let (l, s, r, ty) = equation(&d.conclusion)?;
        let args = match s {
            Reason::Xi(k, args) if *k == kind => args,
            _ => {
                return fail(
                    DiagnosticKind::WrongKindAnnotation,
                    format!("rule '{}' needs a xi[{}] reason, found '{s}'", d.rule, kind.name()),
                )
            }
        };
        let ps: Vec<(&Term, &Reason, &Term, &Ty)> = match kind {
            XiKind::IdIntro => {
                arity(d, 3)?;
                vec![equation(&d.premises[2].conclusion)?]
            }
            _ => {
                arity(d, kind.arity())?;
                d.premises.iter().map(|p| equation(&p.conclusion)).collect::<Result<_, _>>()?
            }
        };
        for (p, a) in ps.iter().zip(args) {
            same_reason(a, p.1)?;
        }
        let (el, er, ety): (Term, Term, Option<Ty>) = match kind {
            XiKind::Pair => (
                Term::pair(ps[0].0.clone(), ps[1].0.clone()),
                Term::pair(ps[0].2.clone(), ps[1].2.clone()),
                Some(Ty::prod(ps[0].3.clone(), ps[1].3.clone())),
            ),
            XiKind::Inl | XiKind::Inr => {
                let wrap = if kind == XiKind::Inl { Term::inl } else { Term::inr };
                let side = match (kind, ty) {
                    (XiKind::Inl, Ty::Sum(a, _)) | (XiKind::Inr, Ty::Sum(_, a)) => a,
                    _ => return fail(DiagnosticKind::TypeMismatch, format!("expected a sum type, found {ty}")),
                };
                same_ty(side, ps[0].3)?;
                (wrap(ps[0].0.clone()), wrap(ps[0].2.clone()), None)
            }
            XiKind::Lambda => {
                let (Term::Lambda(x, ann, _), Ty::Pi(y, _, b)) = (l, ty) else {
                    return malformed(format!("xi-lambda concludes an equation of abstractions at a Pi type, found '{}'", d.conclusion));
                };
                let body_ty = b.subst(y, &Term::var(x.clone()));
                same_ty(ps[0].3, &body_ty)?;
                (
                    Term::Lambda(x.clone(), ann.clone(), Box::new(ps[0].0.clone())),
                    Term::Lambda(x.clone(), ann.clone(), Box::new(ps[0].2.clone())),
                    None,
                )
            }
            XiKind::Eps => {
                let (Term::Eps(x, _, a), Ty::SigmaTy(y, _, b)) = (l, ty) else {
                    return malformed(format!("xi-eps concludes an equation of eps pairs at a Sigma type, found '{}'", d.conclusion));
                };
                same_ty(ps[0].3, &b.subst(y, &Term::var(x.clone())))?;
                (
                    Term::eps(x.clone(), ps[0].0.clone(), (**a).clone()),
                    Term::eps(x.clone(), ps[0].2.clone(), (**a).clone()),
                    None,
                )
            }
            XiKind::IdIntro => {
                let (a, s1, b, base) = equation(&d.premises[0].conclusion)?;
                let (a2, s2, b2, base2) = equation(&d.premises[1].conclusion)?;
                same_term(a2, a, "left endpoint")?;
                same_term(b2, b, "right endpoint")?;
                same_ty(base2, base)?;
                let idty = Ty::id(base.clone(), a.clone(), b.clone());
                let wl = Term::witness(s1.clone(), a.clone(), b.clone());
                let wr = Term::witness(s2.clone(), a.clone(), b.clone());
                same_term(ps[0].0, &wl, "third premise")?;
                same_term(ps[0].2, &wr, "third premise")?;
                same_ty(ps[0].3, &idty)?;
                (wl, wr, Some(idty))
            }
        };
        same_term(l, &el, "left endpoint")?;
        same_term(r, &er, "right endpoint")?;
        match ety {
            Some(t) => same_ty(ty, &t),
            None => Ok(()),
        }
    }

    fn mu(&self, d: &Derivation, kind: MuKind) -> Check {
        let (l, s, r, ty) = equation(&d.conclusion)?;
        let args = match s {
            Reason::Mu(k, args) if *k == kind => args,
            _ => {
                return fail(
                    DiagnosticKind::WrongKindAnnotation,
                    format!("rule '{}' needs a mu[{}] reason, found '{s}'", d.rule, kind.name()),
                )
            }
        };
        arity(d, kind.arity())?;
        let ps: Vec<(&Term, &Reason, &Term, &Ty)> =
            d.premises.iter().map(|p| equation(&p.conclusion)).collect::<Result<_, _>>()?;
        for (p, a) in ps.iter().zip(args) {
            same_reason(a, p.1)?;
        }
        let (el, er, ety): (Term, Term, Ty) = match kind {
            MuKind::Fst | MuKind::Snd => {
                let Ty::Prod(a, b) = ps[0].3 else {
                    return fail(DiagnosticKind::TypeMismatch, format!("expected a product type, found {}", ps[0].3));
                };
                let (wrap, t): (fn(Term) -> Term, &Ty) =
                    if kind == MuKind::Fst { (Term::fst, a) } else { (Term::snd, b) };
                (wrap(ps[0].0.clone()), wrap(ps[0].2.clone()), t.clone())
            }
            MuKind::App => {
                let Ty::Pi(x, dom, cod) = ps[1].3 else {
                    return fail(DiagnosticKind::TypeMismatch, format!("expected a Pi type, found {}", ps[1].3));
                };
                same_ty(ps[0].3, dom)?;
                (
                    Term::app(ps[1].0.clone(), ps[0].0.clone()),
                    Term::app(ps[1].2.clone(), ps[0].2.clone()),
                    cod.subst(x, ps[0].0),
                )
            }
            MuKind::Case => {
                let Term::Case(_, x, _, y, _) = l else {
                    return malformed("mu-case concludes an equation of case terms");
                };
                same_ty(ps[2].3, ps[1].3)?;
                (
                    Term::case(ps[0].0.clone(), x.clone(), ps[1].0.clone(), y.clone(), ps[2].0.clone()),
                    Term::case(ps[0].2.clone(), x.clone(), ps[1].2.clone(), y.clone(), ps[2].2.clone()),
                    ps[1].3.clone(),
                )
            }
            MuKind::SigElim => {
                let Term::EpsElim(_, g, t, _) = l else {
                    return malformed("mu-sigElim concludes an equation of E terms");
                };
                (
                    Term::eps_elim(ps[0].0.clone(), g.clone(), t.clone(), ps[1].0.clone()),
                    Term::eps_elim(ps[0].2.clone(), g.clone(), t.clone(), ps[1].2.clone()),
                    ps[1].3.clone(),
                )
            }
            MuKind::IdElim => {
                let Term::J(_, t, _) = l else {
                    return malformed("mu-idElim concludes an equation of J terms");
                };
                (
                    Term::j(ps[0].0.clone(), t.clone(), ps[1].0.clone()),
                    Term::j(ps[0].2.clone(), t.clone(), ps[1].2.clone()),
                    ps[1].3.clone(),
                )
            }
        };
        same_term(l, &el, "left endpoint")?;
        same_term(r, &er, "right endpoint")?;
        same_ty(ty, &ety)
    }

    /// A single definitional step `a =_k b : C`, optionally premised on `a : C`.
    fn conversion(&self, d: &Derivation, kind: AxiomKind, conn: Option<Connective>, env: &Env) -> Check {
        let (a, s, b, ty) = equation(&d.conclusion)?;
        let Reason::Axiom(k, tag) = s else {
            return fail(DiagnosticKind::WrongKindAnnotation, format!("'{}' needs a {} atom, found '{s}'", d.rule, kind.name()));
        };
        if *k != kind {
            return fail(DiagnosticKind::WrongKindAnnotation, format!("'{}' needs a {} atom, found '{s}'", d.rule, kind.name()));
        }
        if d.premises.len() > 1 {
            return arity(d, 1);
        }
        if let Some(p) = d.premises.first() {
            let (pa, pty) = member(&p.conclusion)?;
            same_term(pa, a, "converted term")?;
            same_ty(pty, ty)?;
        } else {
            check(a, ty, env).map_err(from_type_error)?;
        }
        let pos = tag.as_ref().map(|t| t.position.clone()).unwrap_or_else(Position::root);
        let Ok(sub) = a.subterm_at(&pos) else {
            return malformed(format!("no subterm at {pos} in '{a}'"));
        };
        let out = match kind {
            AxiomKind::Beta | AxiomKind::Eta => {
                let step = if kind == AxiomKind::Beta { sub.beta_root() } else { sub.eta_root() };
                let Some((found, out)) = step else {
                    return malformed(format!("no {}-redex at {pos} in '{a}'", kind.name()));
                };
                if conn.is_some_and(|c| c != found) {
                    return fail(
                        DiagnosticKind::WrongKindAnnotation,
                        format!("the redex belongs to {}, not {}", found.name(), conn.unwrap().name()),
                    );
                }
                out
            }
            AxiomKind::Zeta => match sub.zeta_root() {
                Some(out) => out,
                None => return malformed(format!("no permutable J at {pos} in '{a}'")),
            },
            AxiomKind::Alpha => {
                // any renaming of the binder at the position
                let target = b.subterm_at(&pos).map_err(|e| (DiagnosticKind::Malformed, e.to_string()))?;
                if sub.alpha_root().is_none() || !sub.alpha_eq(target) {
                    return malformed(format!("no α-step at {pos} in '{a}'"));
                }
                target.clone()
            }
        };
        let expected = a.replace_at(&pos, out).map_err(|e| (DiagnosticKind::Malformed, e.to_string()))?;
        same_term(b, &expected, "result of the step")
    }

    /// Introduction and elimination rules for membership. The conclusion's
    /// head must match the rule and every premise must judge the matching
    /// immediate subterm; the type checker confirms the conclusion itself.
    fn intro_elim(&self, d: &Derivation, name: &str, env: &Env) -> Check {
        let (t, ty) = member(&d.conclusion)?;
        let shape_ok = matches!(
            (name, t),
            ("pi-intro", Term::Lambda(..))
                | ("pi-elim", Term::App(..))
                | ("prod-intro", Term::Pair(..))
                | ("prod-elim-fst", Term::Fst(_))
                | ("prod-elim-snd", Term::Snd(_))
                | ("sum-intro-inl", Term::Inl(_))
                | ("sum-intro-inr", Term::Inr(_))
                | ("sum-elim", Term::Case(..))
                | ("sigma-intro", Term::Eps(..))
                | ("sigma-elim", Term::EpsElim(..))
        );
        if !RULE_NAMES.contains(&name) {
            return malformed(format!("unknown rule '{name}'"));
        }
        if !shape_ok {
            return fail(DiagnosticKind::WrongKindAnnotation, format!("'{name}' does not conclude '{t}'"));
        }
        let children = t.children();
        arity(d, children.len())?;
        for (p, c) in d.premises.iter().zip(children) {
            let (pt, _) = member(&p.conclusion)?;
            same_term(pt, c, "premise")?;
        }
        check_ty(ty, env).map_err(from_type_error)?;
        check(t, ty, env).map_err(from_type_error)
    }
}

fn contains(t: &Term, y: &Term) -> bool {
    t.positions()
        .iter()
        .any(|p| t.subterm_at(p).is_ok_and(|s| s.alpha_eq(y)))
}

/// The context a premise is checked in, with the names its rule binds.
fn premise_env(d: &Derivation, i: usize, env: &Env) -> Env {
    let prem_ty = |k: usize| -> Option<&Ty> {
        match &d.premises.get(k)?.conclusion {
            Judgment::Member(_, ty) | Judgment::Eq(_, _, _, ty) => Some(ty),
            Judgment::Type(_) => None,
        }
    };
    let (term, ty) = match &d.conclusion {
        Judgment::Member(t, ty) | Judgment::Eq(t, _, _, ty) => (t, ty),
        Judgment::Type(_) => return env.clone(),
    };
    let rule = d.rule.as_str();
    match (rule, term, i) {
        ("pi-intro" | "xi-lambda", Term::Lambda(x, _, _), 0) => match ty {
            Ty::Pi(_, a, _) => env.extended_term(x, a),
            _ => env.clone(),
        },
        ("sigma-intro" | "xi-eps", Term::Eps(x, _, _), 0) => match ty {
            Ty::SigmaTy(_, a, _) => env.extended_term(x, a),
            _ => env.clone(),
        },
        ("sum-elim" | "mu-case", Term::Case(_, x, _, y, _), 1 | 2) => match prem_ty(0) {
            Some(Ty::Sum(a, b)) => {
                if i == 1 {
                    env.extended_term(x, a)
                } else {
                    env.extended_term(y, b)
                }
            }
            _ => env.clone(),
        },
        ("sigma-elim" | "mu-sigElim", Term::EpsElim(_, g, t, _), 1) => match prem_ty(0) {
            Some(Ty::SigmaTy(x, a, b)) => env
                .extended_term(g, &Ty::pi(x.clone(), (**a).clone(), (**b).clone()))
                .extended_term(t, a),
            _ => env.clone(),
        },
        ("id-elim" | "mu-idElim" | "id-elim-mu", Term::J(_, t, _), 1) => match prem_ty(0) {
            Some(Ty::IdTy(a, l, r)) => env.extended_reason(t, l, r, a),
            _ => env.clone(),
        },
        _ => env.clone(),
    }
}
