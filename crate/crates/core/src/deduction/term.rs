//! λ-terms and types, with capture-avoiding substitution and the
//! definitional steps (β, η, ζ, α) at a position.
//!
//! Binding: every term binder (λ, the two `case` branches, `eps`, the two
//! variables of `E`) binds its name both as a term variable and as a reason
//! variable, so `λc.J(c(x,y), ...)` can use `c` as the reason of a canonical
//! element. The `J` binder binds a reason variable only.

use std::collections::BTreeSet;

use crate::reason::{AxiomKind, Position, PositionError, Reason};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// `λx.b`, optionally Church-annotated `λx:A.b`.
    Lambda(String, Option<Box<Ty>>, Box<Term>),
    App(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Fst(Box<Term>),
    Snd(Box<Term>),
    Inl(Box<Term>),
    Inr(Box<Term>),
    /// `case(c, x.d, y.e)`
    Case(Box<Term>, String, Box<Term>, String, Box<Term>),
    /// `eps x.(f, a)`: the pair of witness `a` and the body `f` over `x`.
    Eps(String, Box<Term>, Box<Term>),
    /// `E(e, g.t.d)`
    EpsElim(Box<Term>, String, String, Box<Term>),
    /// `s(a, b)`: the canonical element of `Id_A(a, b)` built from reason `s`.
    PathWitness(Reason, Box<Term>, Box<Term>),
    /// `J(p, t.d)`
    J(Box<Term>, String, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ty {
    Atom(String),
    Prod(Box<Ty>, Box<Ty>),
    Sum(Box<Ty>, Box<Ty>),
    Pi(String, Box<Ty>, Box<Ty>),
    SigmaTy(String, Box<Ty>, Box<Ty>),
    IdTy(Box<Ty>, Box<Term>, Box<Term>),
}

/// Which connective a β- or η-step belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    Prod,
    Sum,
    Pi,
    Sigma,
    Id,
}

impl Connective {
    pub const ALL: [Connective; 5] = [
        Connective::Prod,
        Connective::Sum,
        Connective::Pi,
        Connective::Sigma,
        Connective::Id,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Connective::Prod => "prod",
            Connective::Sum => "sum",
            Connective::Pi => "pi",
            Connective::Sigma => "sigma",
            Connective::Id => "id",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Connective::ALL.iter().copied().find(|c| c.name() == s)
    }
}

fn bx<T>(t: T) -> Box<T> {
    Box::new(t)
}

impl Term {
    pub fn var(x: impl Into<String>) -> Term {
        Term::Var(x.into())
    }

    pub fn lam(x: impl Into<String>, body: Term) -> Term {
        Term::Lambda(x.into(), None, bx(body))
    }

    pub fn lam_typed(x: impl Into<String>, ty: Ty, body: Term) -> Term {
        Term::Lambda(x.into(), Some(bx(ty)), bx(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(bx(f), bx(a))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(bx(a), bx(b))
    }

    pub fn fst(p: Term) -> Term {
        Term::Fst(bx(p))
    }

    pub fn snd(p: Term) -> Term {
        Term::Snd(bx(p))
    }

    pub fn inl(a: Term) -> Term {
        Term::Inl(bx(a))
    }

    pub fn inr(b: Term) -> Term {
        Term::Inr(bx(b))
    }

    pub fn case(c: Term, x: impl Into<String>, d: Term, y: impl Into<String>, e: Term) -> Term {
        Term::Case(bx(c), x.into(), bx(d), y.into(), bx(e))
    }

    pub fn eps(x: impl Into<String>, f: Term, a: Term) -> Term {
        Term::Eps(x.into(), bx(f), bx(a))
    }

    pub fn eps_elim(e: Term, g: impl Into<String>, t: impl Into<String>, d: Term) -> Term {
        Term::EpsElim(bx(e), g.into(), t.into(), bx(d))
    }

    pub fn witness(s: Reason, a: Term, b: Term) -> Term {
        Term::PathWitness(s, bx(a), bx(b))
    }

    pub fn j(p: Term, t: impl Into<String>, d: Term) -> Term {
        Term::J(bx(p), t.into(), bx(d))
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) => vec![],
            Term::Lambda(_, _, b) | Term::Fst(b) | Term::Snd(b) | Term::Inl(b) | Term::Inr(b) => vec![b],
            Term::App(a, b) | Term::Pair(a, b) | Term::Eps(_, a, b) | Term::PathWitness(_, a, b) => vec![a, b],
            Term::Case(c, _, d, _, e) => vec![c, d, e],
            Term::EpsElim(e, _, _, d) | Term::J(e, _, d) => vec![e, d],
        }
    }

    fn child_mut(&mut self, i: usize) -> Option<&mut Term> {
        let kid = match (self, i) {
            (Term::Lambda(_, _, b) | Term::Fst(b) | Term::Snd(b) | Term::Inl(b) | Term::Inr(b), 0) => b,
            (Term::App(a, _) | Term::Pair(a, _) | Term::Eps(_, a, _) | Term::PathWitness(_, a, _), 0) => a,
            (Term::App(_, b) | Term::Pair(_, b) | Term::Eps(_, _, b) | Term::PathWitness(_, _, b), 1) => b,
            (Term::Case(c, ..), 0) => c,
            (Term::Case(_, _, d, _, _), 1) => d,
            (Term::Case(_, _, _, _, e), 2) => e,
            (Term::EpsElim(e, ..) | Term::J(e, ..), 0) => e,
            (Term::EpsElim(_, _, _, d) | Term::J(_, _, d), 1) => d,
            _ => return None,
        };
        Some(kid)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn subterm_at(&self, p: &Position) -> Result<&Term, PositionError> {
        let mut cur = self;
        for (depth, &i) in p.indices().iter().enumerate() {
            cur = *cur
                .children()
                .get(i)
                .ok_or_else(|| PositionError::new(p, depth))?;
        }
        Ok(cur)
    }

    /// Replaces the subterm at `p`. Binders above `p` are not renamed, so
    /// the new subterm's free variables may be captured.
    pub fn replace_at(&self, p: &Position, s: Term) -> Result<Term, PositionError> {
        let mut out = self.clone();
        {
            let mut cur = &mut out;
            for (depth, &i) in p.indices().iter().enumerate() {
                cur = cur.child_mut(i).ok_or_else(|| PositionError::new(p, depth))?;
            }
            *cur = s;
        }
        Ok(out)
    }

    /// Positions in pre-order.
    pub fn positions(&self) -> Vec<Position> {
        fn go(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Position>) {
            out.push(Position::from(path.clone()));
            for (i, c) in t.children().into_iter().enumerate() {
                path.push(i);
                go(c, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Free term variables (including those of type annotations).
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out, &mut Vec::new(), false);
        out
    }

    /// Free reason variables, i.e. those inside canonical elements.
    pub fn free_reason_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out, &mut Vec::new(), true);
        out
    }

    /// Every free name in either namespace.
    pub fn free_names(&self) -> BTreeSet<String> {
        let mut out = self.free_vars();
        out.extend(self.free_reason_vars());
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>, bound: &mut Vec<String>, reasons: bool) {
        let under = |names: &[&String], body: &Term, out: &mut BTreeSet<String>, bound: &mut Vec<String>| {
            let n = bound.len();
            bound.extend(names.iter().map(|s| s.to_string()));
            body.collect_free(out, bound, reasons);
            bound.truncate(n);
        };
        match self {
            Term::Var(x) => {
                if !reasons && !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Lambda(x, ann, b) => {
                if let Some(ty) = ann {
                    ty.collect_free(out, bound, reasons);
                }
                under(&[x], b, out, bound);
            }
            Term::Case(c, x, d, y, e) => {
                c.collect_free(out, bound, reasons);
                under(&[x], d, out, bound);
                under(&[y], e, out, bound);
            }
            Term::Eps(x, f, a) => {
                under(&[x], f, out, bound);
                a.collect_free(out, bound, reasons);
            }
            Term::EpsElim(e, g, t, d) => {
                e.collect_free(out, bound, reasons);
                under(&[g, t], d, out, bound);
            }
            Term::PathWitness(s, a, b) => {
                if reasons {
                    for v in s.vars() {
                        if !bound.iter().any(|b| b == v) {
                            out.insert(v.to_string());
                        }
                    }
                }
                a.collect_free(out, bound, reasons);
                b.collect_free(out, bound, reasons);
            }
            Term::J(p, t, d) => {
                p.collect_free(out, bound, reasons);
                if reasons {
                    under(&[t], d, out, bound);
                } else {
                    d.collect_free(out, bound, reasons);
                }
            }
            _ => {
                for c in self.children() {
                    c.collect_free(out, bound, reasons);
                }
            }
        }
    }

    /// The reason a term stands for when it replaces a reason variable:
    /// a canonical element contributes its reason, a variable itself.
    pub fn as_reason(&self) -> Option<Reason> {
        match self {
            Term::PathWitness(s, ..) => Some(s.clone()),
            Term::Var(x) => Some(Reason::var(x.clone())),
            _ => None,
        }
    }

    /// Capture-avoiding substitution of `n` for the term variable `x`.
    /// Reason occurrences of `x` are replaced by [`Term::as_reason`] of
    /// `n` when it has one and are left alone otherwise.
    pub fn subst(&self, x: &str, n: &Term) -> Term {
        let as_reason = n.as_reason();
        let mut avoid = n.free_names();
        if let Some(r) = &as_reason {
            avoid.extend(r.vars().into_iter().map(String::from));
        }
        self.subst_in(x, n, as_reason.as_ref(), &avoid)
    }

    fn subst_in(&self, x: &str, n: &Term, nr: Option<&Reason>, avoid: &BTreeSet<String>) -> Term {
        let go = |t: &Term| bx(t.subst_in(x, n, nr, avoid));
        // a term binder `y` over `body`: stop when it shadows `x`, rename on capture
        let bind = |y: &String, body: &Term| -> (String, Box<Term>) {
            if y == x {
                return (y.clone(), bx(body.clone()));
            }
            if avoid.contains(y) {
                let fresh = fresh_name(y, |c| avoid.contains(c) || body.free_names().contains(c) || c == x);
                let renamed = body.subst(y, &Term::var(fresh.clone()));
                return (fresh, go(&renamed));
            }
            (y.clone(), go(body))
        };
        match self {
            Term::Var(y) => {
                if y == x {
                    n.clone()
                } else {
                    self.clone()
                }
            }
            Term::Lambda(y, ann, b) => {
                let ann = ann.as_ref().map(|t| bx(t.subst(x, n)));
                let (y, b) = bind(y, b);
                Term::Lambda(y, ann, b)
            }
            Term::Case(c, y1, d, y2, e) => {
                let (y1, d) = bind(y1, d);
                let (y2, e) = bind(y2, e);
                Term::Case(go(c), y1, d, y2, e)
            }
            Term::Eps(y, f, a) => {
                let (y, f) = bind(y, f);
                Term::Eps(y, f, go(a))
            }
            Term::EpsElim(e, g, t, d) => {
                // two binders: bind the outer, then the inner on the result
                let inner = Term::Lambda(t.clone(), None, d.clone());
                let outer = Term::Lambda(g.clone(), None, bx(inner)).subst_in(x, n, nr, avoid);
                match outer {
                    Term::Lambda(g, _, inner) => match *inner {
                        Term::Lambda(t, _, d) => Term::EpsElim(go(e), g, t, d),
                        _ => unreachable!(),
                    },
                    _ => unreachable!(),
                }
            }
            Term::PathWitness(s, a, b) => {
                let s = match nr {
                    Some(r) => s.substitute(x, r),
                    None => s.clone(),
                };
                Term::PathWitness(s, go(a), go(b))
            }
            Term::J(p, t, d) => {
                if t == x {
                    // reason occurrences of `x` are shadowed, term ones are not
                    return Term::J(go(p), t.clone(), bx(d.subst_in(x, n, None, avoid)));
                }
                if avoid.contains(t) {
                    let fresh = fresh_name(t, |c| avoid.contains(c) || d.free_names().contains(c) || c == x);
                    let d = d.subst_reason(t, &Reason::var(fresh.clone()));
                    return Term::J(go(p), fresh, go(&d));
                }
                Term::J(go(p), t.clone(), go(d))
            }
            Term::App(a, b) => Term::App(go(a), go(b)),
            Term::Pair(a, b) => Term::Pair(go(a), go(b)),
            Term::Fst(a) => Term::Fst(go(a)),
            Term::Snd(a) => Term::Snd(go(a)),
            Term::Inl(a) => Term::Inl(go(a)),
            Term::Inr(a) => Term::Inr(go(a)),
        }
    }

    /// Capture-avoiding substitution of reason `s` for the reason variable `t`.
    pub fn subst_reason(&self, t: &str, s: &Reason) -> Term {
        let avoid: BTreeSet<String> = s.vars().into_iter().map(String::from).collect();
        self.subst_reason_in(t, s, &avoid)
    }

    fn subst_reason_in(&self, t: &str, s: &Reason, avoid: &BTreeSet<String>) -> Term {
        let go = |u: &Term| bx(u.subst_reason_in(t, s, avoid));
        let bind = |y: &String, body: &Term, term_binder: bool| -> (String, Box<Term>) {
            if y == t {
                return (y.clone(), bx(body.clone()));
            }
            if avoid.contains(y) {
                let fresh = fresh_name(y, |c| avoid.contains(c) || body.free_names().contains(c) || c == t);
                let renamed = if term_binder {
                    body.subst(y, &Term::var(fresh.clone()))
                } else {
                    body.subst_reason(y, &Reason::var(fresh.clone()))
                };
                return (fresh, go(&renamed));
            }
            (y.clone(), go(body))
        };
        match self {
            Term::Var(_) => self.clone(),
            Term::Lambda(y, ann, b) => {
                let ann = ann.as_ref().map(|ty| bx(ty.subst_reason(t, s)));
                let (y, b) = bind(y, b, true);
                Term::Lambda(y, ann, b)
            }
            Term::Case(c, y1, d, y2, e) => {
                let (y1, d) = bind(y1, d, true);
                let (y2, e) = bind(y2, e, true);
                Term::Case(go(c), y1, d, y2, e)
            }
            Term::Eps(y, f, a) => {
                let (y, f) = bind(y, f, true);
                Term::Eps(y, f, go(a))
            }
            Term::EpsElim(e, g, u, d) => {
                let inner = Term::Lambda(u.clone(), None, d.clone());
                match Term::Lambda(g.clone(), None, bx(inner)).subst_reason_in(t, s, avoid) {
                    Term::Lambda(g, _, inner) => match *inner {
                        Term::Lambda(u, _, d) => Term::EpsElim(go(e), g, u, d),
                        _ => unreachable!(),
                    },
                    _ => unreachable!(),
                }
            }
            Term::PathWitness(r, a, b) => Term::PathWitness(r.substitute(t, s), go(a), go(b)),
            Term::J(p, u, d) => {
                let (u, d) = bind(u, d, false);
                Term::J(go(p), u, d)
            }
            Term::App(a, b) => Term::App(go(a), go(b)),
            Term::Pair(a, b) => Term::Pair(go(a), go(b)),
            Term::Fst(a) => Term::Fst(go(a)),
            Term::Snd(a) => Term::Snd(go(a)),
            Term::Inl(a) => Term::Inl(go(a)),
            Term::Inr(a) => Term::Inr(go(a)),
        }
    }

    /// Replaces every subterm α-equivalent to `from` by `to`. Occurrences
    /// that mention a variable bound above them are skipped.
    pub fn replace_all(&self, from: &Term, to: &Term) -> Term {
        self.replace_all_in(&from.canonical(), &from.free_names(), to)
    }

    fn replace_all_in(&self, from: &Term, from_names: &BTreeSet<String>, to: &Term) -> Term {
        if &self.canonical() == from {
            return to.clone();
        }
        let binders = self.binders();
        if binders.iter().any(|b| from_names.contains(b)) {
            // below a binder that captures a name of `from`: only the
            // non-binding children can hold genuine occurrences
            let mut out = self.clone();
            for (i, c) in self.children().into_iter().enumerate() {
                if !self.child_binds(i) {
                    *out.child_mut(i).unwrap() = c.replace_all_in(from, from_names, to);
                }
            }
            return out;
        }
        let mut out = self.clone();
        for (i, c) in self.children().into_iter().enumerate() {
            *out.child_mut(i).unwrap() = c.replace_all_in(from, from_names, to);
        }
        out
    }

    /// Names bound by this node (for any child).
    fn binders(&self) -> Vec<String> {
        match self {
            Term::Lambda(x, ..) | Term::Eps(x, ..) | Term::J(_, x, _) => vec![x.clone()],
            Term::Case(_, x, _, y, _) | Term::EpsElim(_, x, y, _) => vec![x.clone(), y.clone()],
            _ => vec![],
        }
    }

    /// Whether child `i` lies under a binder of this node.
    fn child_binds(&self, i: usize) -> bool {
        matches!(
            (self, i),
            (Term::Lambda(..), 0)
                | (Term::Eps(..), 0)
                | (Term::Case(..), 1 | 2)
                | (Term::EpsElim(..), 1)
                | (Term::J(..), 1)
        )
    }

    /// α-normal representative: bound names become `%0`, `%1`, ... in
    /// traversal order.
    pub fn canonical(&self) -> Term {
        self.canon(&mut 0)
    }

    fn canon(&self, next: &mut usize) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::Lambda(x, ann, b) => {
                let ann = ann.as_ref().map(|t| bx(t.canon(next)));
                let n = canon_name(next);
                let b = b.rename_bound(x, &n, true).canon(next);
                Term::Lambda(n, ann, bx(b))
            }
            Term::Case(c, x, d, y, e) => {
                let c = c.canon(next);
                let nx = canon_name(next);
                let d = d.rename_bound(x, &nx, true).canon(next);
                let ny = canon_name(next);
                let e = e.rename_bound(y, &ny, true).canon(next);
                Term::case(c, nx, d, ny, e)
            }
            Term::Eps(x, f, a) => {
                let n = canon_name(next);
                let f = f.rename_bound(x, &n, true).canon(next);
                Term::eps(n, f, a.canon(next))
            }
            Term::EpsElim(e, g, t, d) => {
                let e = e.canon(next);
                let ng = canon_name(next);
                let nt = canon_name(next);
                let d = d
                    .rename_bound(t, "%tmp", true)
                    .rename_bound(g, &ng, true)
                    .rename_bound("%tmp", &nt, true)
                    .canon(next);
                Term::eps_elim(e, ng, nt, d)
            }
            Term::J(p, t, d) => {
                let p = p.canon(next);
                let n = canon_name(next);
                let d = d.rename_bound(t, &n, false).canon(next);
                Term::j(p, n, d)
            }
            Term::PathWitness(s, a, b) => Term::witness(s.clone(), a.canon(next), b.canon(next)),
            Term::App(a, b) => Term::app(a.canon(next), b.canon(next)),
            Term::Pair(a, b) => Term::pair(a.canon(next), b.canon(next)),
            Term::Fst(a) => Term::fst(a.canon(next)),
            Term::Snd(a) => Term::snd(a.canon(next)),
            Term::Inl(a) => Term::inl(a.canon(next)),
            Term::Inr(a) => Term::inr(a.canon(next)),
        }
    }

    /// Renames a bound name to a name known not to occur (`%`-names are
    /// never produced by the parser).
    fn rename_bound(&self, from: &str, to: &str, term_binder: bool) -> Term {
        if term_binder {
            self.subst(from, &Term::var(to))
        } else {
            self.subst_reason(from, &Reason::var(to))
        }
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        self == other || self.canonical() == other.canonical()
    }

    /// Definitional equality: α-equivalence of βη-normal forms.
    pub fn def_eq(&self, other: &Term) -> bool {
        self.alpha_eq(other) || self.normal_form().alpha_eq(&other.normal_form())
    }

    /// βη-normal form by leftmost-outermost reduction, giving up after
    /// [`NORMAL_FORM_FUEL`] steps.
    pub fn normal_form(&self) -> Term {
        let mut cur = self.clone();
        for _ in 0..NORMAL_FORM_FUEL {
            match leftmost_outermost_step(&cur, &[AxiomKind::Beta, AxiomKind::Eta]) {
                Some((_, _, next)) => cur = next,
                None => break,
            }
        }
        cur
    }

    /// The contractum of a root β-redex, with its connective.
    pub fn beta_root(&self) -> Option<(Connective, Term)> {
        match self {
            Term::App(f, a) => match &**f {
                Term::Lambda(x, _, b) => Some((Connective::Pi, b.subst(x, a))),
                _ => None,
            },
            Term::Fst(p) => match &**p {
                Term::Pair(a, _) => Some((Connective::Prod, (**a).clone())),
                _ => None,
            },
            Term::Snd(p) => match &**p {
                Term::Pair(_, b) => Some((Connective::Prod, (**b).clone())),
                _ => None,
            },
            Term::Case(c, x, d, y, e) => match &**c {
                Term::Inl(a) => Some((Connective::Sum, d.subst(x, a))),
                Term::Inr(b) => Some((Connective::Sum, e.subst(y, b))),
                _ => None,
            },
            Term::EpsElim(e, g, t, d) => match &**e {
                Term::Eps(x, f, a) => {
                    let fun = Term::Lambda(x.clone(), None, f.clone());
                    let avoid = fun.free_names();
                    let t2 = fresh_name(t, |c| avoid.contains(c) || d.free_names().contains(c) || c == g);
                    let d = d.subst(t, &Term::var(t2.clone()));
                    Some((Connective::Sigma, d.subst(g, &fun).subst(&t2, a)))
                }
                _ => None,
            },
            Term::J(p, t, d) => match &**p {
                Term::PathWitness(s, ..) => Some((Connective::Id, d.subst_reason(t, s))),
                _ => None,
            },
            _ => None,
        }
    }

    /// The contractum of a root η-redex, with its connective.
    pub fn eta_root(&self) -> Option<(Connective, Term)> {
        match self {
            Term::Lambda(x, _, b) => match &**b {
                Term::App(f, a) if **a == Term::Var(x.clone()) && !f.free_names().contains(x) => {
                    Some((Connective::Pi, (**f).clone()))
                }
                _ => None,
            },
            Term::Pair(a, b) => match (&**a, &**b) {
                (Term::Fst(p), Term::Snd(q)) if p.alpha_eq(q) => Some((Connective::Prod, (**p).clone())),
                _ => None,
            },
            Term::Case(c, x, d, y, e) => match (&**d, &**e) {
                (Term::Inl(l), Term::Inr(r)) if **l == Term::Var(x.clone()) && **r == Term::Var(y.clone()) => {
                    Some((Connective::Sum, (**c).clone()))
                }
                _ => None,
            },
            Term::EpsElim(e, g, t, d) => match &**d {
                Term::Eps(y, f, a)
                    if g != t
                        && y != g
                        && y != t
                        && **a == Term::Var(t.clone())
                        && **f == Term::app(Term::var(g.clone()), Term::var(y.clone())) =>
                {
                    Some((Connective::Sigma, (**e).clone()))
                }
                _ => None,
            },
            Term::J(e, t, d) => match &**d {
                Term::PathWitness(Reason::Var(v), a, b)
                    if v == t && !a.free_reason_vars().contains(t) && !b.free_reason_vars().contains(t) =>
                {
                    Some((Connective::Id, (**e).clone()))
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// Root ζ-step: an operation applied to a `J` is pushed inside the
    /// abstraction, `w(J(e, t.d)) ▷ J(e, t.w(d))`. Refused when `w` binds a
    /// variable free in the major premise `e`.
    pub fn zeta_root(&self) -> Option<Term> {
        let (idx, (e, t, d)) = self
            .children()
            .into_iter()
            .enumerate()
            .find_map(|(i, c)| match c {
                Term::J(e, t, d) if self.zeta_slot(i) => Some((i, ((**e).clone(), t.clone(), (**d).clone()))),
                _ => None,
            })?;
        if self.child_binds(idx) && self.binders().iter().any(|b| e.free_names().contains(b)) {
            return None;
        }
        // keep `t` from capturing names of the other children
        let mut others = BTreeSet::new();
        for (i, c) in self.children().into_iter().enumerate() {
            if i != idx {
                others.extend(c.free_names());
            }
        }
        others.extend(self.binders());
        let (t, d) = if others.contains(&t) {
            let fresh = fresh_name(&t, |c| others.contains(c) || d.free_names().contains(c));
            let d = d.subst_reason(&t, &Reason::var(fresh.clone()));
            (fresh, d)
        } else {
            (t, d)
        };
        let mut inner = self.clone();
        *inner.child_mut(idx).unwrap() = d;
        Some(Term::j(e, t, inner))
    }

    /// Children of an operation through which ζ may push: the principal
    /// argument of an elimination, the argument of an introduction.
    fn zeta_slot(&self, i: usize) -> bool {
        matches!(
            (self, i),
            (Term::Fst(_) | Term::Snd(_) | Term::Inl(_) | Term::Inr(_) | Term::Lambda(..), 0)
                | (Term::App(..) | Term::Case(..) | Term::EpsElim(..) | Term::J(..), 0)
        )
    }

    /// Renames the binder of the node at the root to a fresh name.
    pub fn alpha_root(&self) -> Option<Term> {
        let taken = |c: &str, t: &Term| t.free_names().contains(c) || t.binders().iter().any(|b| b == c);
        match self {
            Term::Lambda(x, ann, b) => {
                let y = fresh_name(x, |c| taken(c, b));
                Some(Term::Lambda(y.clone(), ann.clone(), bx(b.subst(x, &Term::var(y)))))
            }
            Term::Eps(x, f, a) => {
                let y = fresh_name(x, |c| taken(c, f));
                Some(Term::eps(y.clone(), f.subst(x, &Term::var(y)), (**a).clone()))
            }
            Term::Case(c, x, d, y, e) => {
                let x2 = fresh_name(x, |n| taken(n, d));
                Some(Term::case((**c).clone(), x2.clone(), d.subst(x, &Term::var(x2)), y.clone(), (**e).clone()))
            }
            Term::EpsElim(e, g, t, d) => {
                let g2 = fresh_name(g, |n| taken(n, d) || n == t);
                Some(Term::eps_elim((**e).clone(), g2.clone(), t.clone(), d.subst(g, &Term::var(g2))))
            }
            Term::J(p, t, d) => {
                let u = fresh_name(t, |c| taken(c, d));
                Some(Term::j((**p).clone(), u.clone(), d.subst_reason(t, &Reason::var(u))))
            }
            _ => None,
        }
    }

    /// Applies the definitional step `kind` at the root.
    pub fn step_root(&self, kind: AxiomKind) -> Option<Term> {
        match kind {
            AxiomKind::Beta => self.beta_root().map(|(_, t)| t),
            AxiomKind::Eta => self.eta_root().map(|(_, t)| t),
            AxiomKind::Zeta => self.zeta_root(),
            AxiomKind::Alpha => self.alpha_root(),
        }
    }

    /// Applies the definitional step `kind` at `p`.
    pub fn step_at(&self, kind: AxiomKind, p: &Position) -> Result<Option<Term>, PositionError> {
        let sub = self.subterm_at(p)?;
        match sub.step_root(kind) {
            Some(out) => Ok(Some(self.replace_at(p, out)?)),
            None => Ok(None),
        }
    }
}

fn canon_name(next: &mut usize) -> String {
    let n = format!("%{next}");
    *next += 1;
    n
}

pub const NORMAL_FORM_FUEL: usize = 10_000;

/// First redex in pre-order for any of `kinds` (tried in the given order
/// at each position): `(kind, position, result)`.
pub fn leftmost_outermost_step(t: &Term, kinds: &[AxiomKind]) -> Option<(AxiomKind, Position, Term)> {
    for p in t.positions() {
        let sub = t.subterm_at(&p).expect("own position");
        for &k in kinds {
            if let Some(out) = sub.step_root(k) {
                return Some((k, p.clone(), t.replace_at(&p, out).expect("own position")));
            }
        }
    }
    None
}

/// First redex in "children before parent, left to right" order.
pub fn leftmost_innermost_step(t: &Term, kinds: &[AxiomKind]) -> Option<(AxiomKind, Position, Term)> {
    fn go(t: &Term, path: &mut Vec<usize>, kinds: &[AxiomKind]) -> Option<(AxiomKind, Position, Term)> {
        for (i, c) in t.children().into_iter().enumerate() {
            path.push(i);
            let found = go(c, path, kinds);
            path.pop();
            if found.is_some() {
                return found;
            }
        }
        kinds
            .iter()
            .find_map(|&k| t.step_root(k).map(|out| (k, Position::from(path.clone()), out)))
    }
    let (k, p, sub) = go(t, &mut Vec::new(), kinds)?;
    let out = t.replace_at(&p, sub).expect("own position");
    Some((k, p, out))
}

/// `base` decorated with primes until `taken` rejects it no more.
pub(crate) fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let mut name = format!("{base}'");
    while taken(&name) {
        name.push('\'');
    }
    name
}

impl Ty {
    pub fn atom(name: impl Into<String>) -> Ty {
        Ty::Atom(name.into())
    }

    pub fn prod(a: Ty, b: Ty) -> Ty {
        Ty::Prod(bx(a), bx(b))
    }

    pub fn sum(a: Ty, b: Ty) -> Ty {
        Ty::Sum(bx(a), bx(b))
    }

    pub fn pi(x: impl Into<String>, a: Ty, b: Ty) -> Ty {
        Ty::Pi(x.into(), bx(a), bx(b))
    }

    /// Non-dependent function type; the bound name is irrelevant.
    pub fn arrow(a: Ty, b: Ty) -> Ty {
        let used = b.free_vars();
        let x = if used.contains("_") {
            fresh_name("_", |c| used.contains(c))
        } else {
            "_".to_string()
        };
        Ty::pi(x, a, b)
    }

    pub fn sigma(x: impl Into<String>, a: Ty, b: Ty) -> Ty {
        Ty::SigmaTy(x.into(), bx(a), bx(b))
    }

    pub fn id(a: Ty, l: Term, r: Term) -> Ty {
        Ty::IdTy(bx(a), bx(l), bx(r))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out, &mut Vec::new(), false);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>, bound: &mut Vec<String>, reasons: bool) {
        match self {
            Ty::Atom(_) => {}
            Ty::Prod(a, b) | Ty::Sum(a, b) => {
                a.collect_free(out, bound, reasons);
                b.collect_free(out, bound, reasons);
            }
            Ty::Pi(x, a, b) | Ty::SigmaTy(x, a, b) => {
                a.collect_free(out, bound, reasons);
                bound.push(x.clone());
                b.collect_free(out, bound, reasons);
                bound.pop();
            }
            Ty::IdTy(a, l, r) => {
                a.collect_free(out, bound, reasons);
                l.collect_free(out, bound, reasons);
                r.collect_free(out, bound, reasons);
            }
        }
    }

    pub fn subst(&self, x: &str, n: &Term) -> Ty {
        match self {
            Ty::Atom(_) => self.clone(),
            Ty::Prod(a, b) => Ty::prod(a.subst(x, n), b.subst(x, n)),
            Ty::Sum(a, b) => Ty::sum(a.subst(x, n), b.subst(x, n)),
            Ty::Pi(y, a, b) | Ty::SigmaTy(y, a, b) => {
                let a = a.subst(x, n);
                let (y, b) = if y == x {
                    (y.clone(), (**b).clone())
                } else if n.free_names().contains(y) {
                    let fresh = fresh_name(y, |c| n.free_names().contains(c) || b.free_vars().contains(c) || c == x);
                    (fresh.clone(), b.subst(y, &Term::var(fresh)).subst(x, n))
                } else {
                    (y.clone(), b.subst(x, n))
                };
                match self {
                    Ty::Pi(..) => Ty::pi(y, a, b),
                    _ => Ty::sigma(y, a, b),
                }
            }
            Ty::IdTy(a, l, r) => Ty::id(a.subst(x, n), l.subst(x, n), r.subst(x, n)),
        }
    }

    pub fn subst_reason(&self, t: &str, s: &Reason) -> Ty {
        match self {
            Ty::Atom(_) => self.clone(),
            Ty::Prod(a, b) => Ty::prod(a.subst_reason(t, s), b.subst_reason(t, s)),
            Ty::Sum(a, b) => Ty::sum(a.subst_reason(t, s), b.subst_reason(t, s)),
            Ty::Pi(y, a, b) => Ty::pi(y.clone(), a.subst_reason(t, s), b.subst_reason(t, s)),
            Ty::SigmaTy(y, a, b) => Ty::sigma(y.clone(), a.subst_reason(t, s), b.subst_reason(t, s)),
            Ty::IdTy(a, l, r) => Ty::id(a.subst_reason(t, s), l.subst_reason(t, s), r.subst_reason(t, s)),
        }
    }

    fn canon(&self, next: &mut usize) -> Ty {
        match self {
            Ty::Atom(_) => self.clone(),
            Ty::Prod(a, b) => Ty::prod(a.canon(next), b.canon(next)),
            Ty::Sum(a, b) => Ty::sum(a.canon(next), b.canon(next)),
            Ty::Pi(x, a, b) | Ty::SigmaTy(x, a, b) => {
                let a = a.canon(next);
                let n = canon_name(next);
                let b = b.subst(x, &Term::var(n.clone())).canon(next);
                match self {
                    Ty::Pi(..) => Ty::pi(n, a, b),
                    _ => Ty::sigma(n, a, b),
                }
            }
            Ty::IdTy(a, l, r) => Ty::id(a.canon(next), l.canon(next), r.canon(next)),
        }
    }

    pub fn canonical(&self) -> Ty {
        self.canon(&mut 0)
    }

    pub fn alpha_eq(&self, other: &Ty) -> bool {
        self == other || self.canonical() == other.canonical()
    }

    /// Equality up to bound names and definitional equality of the terms
    /// inside identity types.
    pub fn def_eq(&self, other: &Ty) -> bool {
        self.alpha_eq(other) || self.normal_form().alpha_eq(&other.normal_form())
    }

    pub fn normal_form(&self) -> Ty {
        match self {
            Ty::Atom(_) => self.clone(),
            Ty::Prod(a, b) => Ty::prod(a.normal_form(), b.normal_form()),
            Ty::Sum(a, b) => Ty::sum(a.normal_form(), b.normal_form()),
            Ty::Pi(x, a, b) => Ty::pi(x.clone(), a.normal_form(), b.normal_form()),
            Ty::SigmaTy(x, a, b) => Ty::sigma(x.clone(), a.normal_form(), b.normal_form()),
            Ty::IdTy(a, l, r) => Ty::id(a.normal_form(), l.normal_form(), r.normal_form()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    #[test]
    fn substitution_avoids_capture() {
        // (λy.x y)[y/x] must not capture
        let t = Term::lam("y", Term::app(v("x"), v("y")));
        let out = t.subst("x", &v("y"));
        match &out {
            Term::Lambda(b, _, body) => {
                assert_ne!(b, "y");
                assert_eq!(**body, Term::app(v("y"), v(b)));
            }
            other => panic!("{other:?}"),
        }
        assert!(out.alpha_eq(&Term::lam("z", Term::app(v("y"), v("z")))));
    }

    #[test]
    fn reason_substitution_under_j() {
        let d = Term::witness(Reason::sigma(Reason::var("t")), v("y"), v("x"));
        let out = d.subst_reason("t", &Reason::var("r"));
        assert_eq!(out, Term::witness(Reason::sigma(Reason::var("r")), v("y"), v("x")));
        // J shadows its own variable
        let j = Term::j(v("p"), "t", d.clone());
        assert_eq!(j.subst_reason("t", &Reason::var("r")), j);
        // and renames instead of capturing
        let j = Term::j(v("p"), "u", Term::witness(Reason::tau(Reason::var("t"), Reason::var("u")), v("x"), v("z")));
        let out = j.subst_reason("t", &Reason::var("u"));
        assert!(out.free_reason_vars().contains("u"));
        assert_eq!(out.free_reason_vars().len(), 1);
    }

    #[test]
    fn lambda_binds_reason_namespace() {
        let body = Term::witness(Reason::var("c"), v("x"), v("y"));
        let t = Term::lam("c", body);
        assert!(t.free_reason_vars().is_empty());
        let applied = Term::app(t, Term::witness(Reason::sigma(Reason::var("r")), v("x"), v("y")));
        let (_, out) = applied.beta_root().unwrap();
        assert_eq!(out, Term::witness(Reason::sigma(Reason::var("r")), v("x"), v("y")));
    }

    #[test]
    fn alpha_equivalence() {
        let a = Term::lam("x", Term::lam("y", Term::app(v("x"), v("y"))));
        let b = Term::lam("u", Term::lam("x", Term::app(v("u"), v("x"))));
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&Term::lam("u", Term::lam("x", Term::app(v("x"), v("u"))))));
        let j1 = Term::j(v("p"), "t", Term::witness(Reason::var("t"), v("a"), v("b")));
        let j2 = Term::j(v("p"), "u", Term::witness(Reason::var("u"), v("a"), v("b")));
        assert!(j1.alpha_eq(&j2));
        let e1 = Term::eps_elim(v("e"), "g", "t", Term::app(v("g"), v("t")));
        let e2 = Term::eps_elim(v("e"), "t", "g", Term::app(v("t"), v("g")));
        assert!(e1.alpha_eq(&e2));
    }

    #[test]
    fn beta_eta_for_each_connective() {
        let cases = [
            (Term::app(Term::lam("x", Term::pair(v("x"), v("x"))), v("a")), Term::pair(v("a"), v("a"))),
            (Term::fst(Term::pair(v("a"), v("b"))), v("a")),
            (Term::snd(Term::pair(v("a"), v("b"))), v("b")),
            (Term::case(Term::inr(v("b")), "x", v("x"), "y", Term::pair(v("y"), v("y"))), Term::pair(v("b"), v("b"))),
            (
                Term::eps_elim(Term::eps("x", Term::pair(v("x"), v("k")), v("a")), "g", "t", Term::app(v("g"), v("t"))),
                Term::app(Term::lam("x", Term::pair(v("x"), v("k"))), v("a")),
            ),
            (
                Term::j(Term::witness(Reason::var("s"), v("a"), v("b")), "t", Term::witness(Reason::sigma(Reason::var("t")), v("b"), v("a"))),
                Term::witness(Reason::sigma(Reason::var("s")), v("b"), v("a")),
            ),
        ];
        for (redex, contractum) in cases {
            let (_, out) = redex.beta_root().unwrap_or_else(|| panic!("{redex:?}"));
            assert!(out.alpha_eq(&contractum), "{out:?}");
        }
        let etas = [
            Term::lam("x", Term::app(v("f"), v("x"))),
            Term::pair(Term::fst(v("f")), Term::snd(v("f"))),
            Term::case(v("f"), "x", Term::inl(v("x")), "y", Term::inr(v("y"))),
            Term::eps_elim(v("f"), "g", "t", Term::eps("y", Term::app(v("g"), v("y")), v("t"))),
            Term::j(v("f"), "t", Term::witness(Reason::var("t"), v("a"), v("b"))),
        ];
        for t in etas {
            assert_eq!(t.eta_root().map(|(_, o)| o), Some(v("f")), "{t:?}");
        }
        assert!(Term::lam("x", Term::app(v("x"), v("x"))).eta_root().is_none());
    }

    #[test]
    fn zeta_pushes_operations_inside() {
        let j = Term::j(v("e"), "t", v("d"));
        assert_eq!(Term::fst(j.clone()).zeta_root(), Some(Term::j(v("e"), "t", Term::fst(v("d")))));
        assert_eq!(
            Term::app(j.clone(), v("a")).zeta_root(),
            Some(Term::j(v("e"), "t", Term::app(v("d"), v("a"))))
        );
        // λe.J(e, t.d) would move `e` out of scope
        assert_eq!(Term::lam("e", j.clone()).zeta_root(), None);
        assert_eq!(Term::pair(j.clone(), v("a")).zeta_root(), None);
    }

    #[test]
    fn positions_and_steps() {
        // (λx.(λy.y x)(λw. z w)) v
        let t = Term::app(
            Term::lam("x", Term::app(Term::lam("y", Term::app(v("y"), v("x"))), Term::lam("w", Term::app(v("z"), v("w"))))),
            v("v"),
        );
        let p = Position::from(vec![0, 0, 1]);
        let out = t.step_at(AxiomKind::Eta, &p).unwrap().unwrap();
        assert_eq!(
            out,
            Term::app(Term::lam("x", Term::app(Term::lam("y", Term::app(v("y"), v("x"))), v("z"))), v("v"))
        );
        assert_eq!(t.step_at(AxiomKind::Eta, &Position::root()).unwrap(), None);
        assert!(t.normal_form().alpha_eq(&Term::app(v("z"), v("v"))));
        assert!(t.def_eq(&Term::app(v("z"), v("v"))));
    }

    #[test]
    fn replace_all_respects_binders() {
        let t = Term::pair(v("a"), Term::lam("a", v("a")));
        assert_eq!(t.replace_all(&v("a"), &v("b")), Term::pair(v("b"), Term::lam("a", v("a"))));
    }
}
