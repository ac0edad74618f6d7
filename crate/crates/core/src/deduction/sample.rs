//! Seeded random well-formed reasons over a fixed typed context, and the
//! check that single rewrite steps keep their endpoints.
//!
//! A sample starts from a random source term (biased towards β- and
//! η-redexes) and grows a reason forwards from it, so every constructor is
//! applied where it makes sense: `ξ`/`μ` at the matching term constructor,
//! `τ` on the target of its first half, axiom atoms at actual redexes.

use rand::seq::SliceRandom;
use rand::Rng;

use super::endpoints::target_from;
use super::env::Env;
use super::syntax::{parse_term, parse_ty};
use super::term::{Term, Ty};
use crate::reason::{AxiomKind, MuKind, Position, Reason, XiKind};
use crate::trs::{one_step_reducts, RuleSet};

/// Term variables `a b c : A`, `f g : A -> A`, `p q : A * A`,
/// `e e2 : A + A`, and reason
/// variables between them.
pub fn sample_env() -> Env {
    let a = parse_ty("A").expect("fixed");
    let f = parse_ty("A -> A").expect("fixed");
    let p = parse_ty("A * A").expect("fixed");
    let sum = parse_ty("A + A").expect("fixed");
    let t = |s: &str| parse_term(s).expect("fixed");
    let mut env = Env::new();
    for (x, ty) in [("a", &a), ("b", &a), ("c", &a), ("f", &f), ("g", &f), ("p", &p), ("q", &p), ("e", &sum), ("e2", &sum)] {
        env = env.with_term(x, ty.clone()).expect("distinct");
    }
    let reasons = [
        ("r", "a", "b", &a),
        ("s", "b", "c", &a),
        ("u", "c", "a", &a),
        ("v", "a", "c", &a),
        ("k", "f", "g", &f),
        ("m", "p", "q", &p),
        ("n", "e", "e2", &sum),
    ];
    for (r, l, rr, ty) in reasons {
        env = env.with_reason(r, t(l), t(rr), ty.clone()).expect("distinct");
    }
    env
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub source: Term,
    pub ty: Ty,
    pub reason: Reason,
    pub target: Term,
}

#[derive(Debug, Clone)]
pub struct TypedReasonGen {
    pub env: Env,
    pub max_depth: usize,
    pub term_depth: usize,
}

impl Default for TypedReasonGen {
    fn default() -> Self {
        TypedReasonGen {
            env: sample_env(),
            max_depth: 5,
            term_depth: 3,
        }
    }
}

#[derive(Clone, Copy)]
enum Shape {
    A,
    Fun,
    Prod,
    Sum,
}

impl Shape {
    fn ty(self) -> Ty {
        let a = || Ty::atom("A");
        match self {
            Shape::A => a(),
            Shape::Fun => Ty::arrow(a(), a()),
            Shape::Prod => Ty::prod(a(), a()),
            Shape::Sum => Ty::sum(a(), a()),
        }
    }
}

impl TypedReasonGen {
    /// A reason that reads from its source to the recorded target.
    pub fn sample(&self, rng: &mut impl Rng) -> Sample {
        loop {
            let shape = [Shape::A, Shape::Fun, Shape::Prod, Shape::Sum][rng.gen_range(0..4)];
            let source = self.term(shape, self.term_depth, rng);
            let (reason, _) = self.from(&source, 1, rng);
            // independent of the generator's own bookkeeping
            if let Ok(Some(target)) = target_from(&reason, &source, &self.env) {
                return Sample { source, ty: shape.ty(), reason, target };
            }
        }
    }

    fn term(&self, shape: Shape, depth: usize, rng: &mut impl Rng) -> Term {
        let t = |s: &str| parse_term(s).expect("fixed");
        let leaf = depth == 0 || rng.gen_bool(0.3);
        match shape {
            Shape::A => {
                if leaf {
                    return t(["a", "b", "c"].choose(rng).copied().unwrap());
                }
                match rng.gen_range(0..6) {
                    0 => Term::app(self.term(Shape::Fun, depth - 1, rng), self.term(Shape::A, depth - 1, rng)),
                    1 => Term::fst(self.term(Shape::Prod, depth - 1, rng)),
                    2 => Term::snd(self.term(Shape::Prod, depth - 1, rng)),
                    // β-redexes
                    3 => Term::app(
                        Term::lam("x", Term::pair(Term::var("x"), self.term(Shape::A, depth - 1, rng))),
                        self.term(Shape::A, depth - 1, rng),
                    )
                    .pipe(Term::fst),
                    4 => Term::case(
                        // an unannotated inl/inr scrutinee has no inferable type
                        Term::var(["e", "e2"].choose(rng).copied().unwrap()),
                        "x",
                        Term::var("x"),
                        "y",
                        self.term(Shape::A, depth - 1, rng),
                    ),
                    _ => Term::app(Term::lam("x", Term::var("x")), self.term(Shape::A, depth - 1, rng)),
                }
            }
            Shape::Fun => {
                if leaf {
                    return t(["f", "g"].choose(rng).copied().unwrap());
                }
                match rng.gen_range(0..3) {
                    // η-redex
                    0 => Term::lam("x", Term::app(self.term(Shape::Fun, depth - 1, rng), Term::var("x"))),
                    1 => Term::lam("x", self.term(Shape::A, depth - 1, rng)),
                    _ => Term::lam("x", Term::app(self.term(Shape::Fun, depth - 1, rng), Term::var("x")).pipe(|b| {
                        Term::fst(Term::pair(b, Term::var("x")))
                    })),
                }
            }
            Shape::Prod => {
                if leaf {
                    return t(["p", "q"].choose(rng).copied().unwrap());
                }
                match rng.gen_range(0..3) {
                    0 => Term::pair(self.term(Shape::A, depth - 1, rng), self.term(Shape::A, depth - 1, rng)),
                    // η-redex
                    1 => {
                        let p = self.term(Shape::Prod, depth - 1, rng);
                        Term::pair(Term::fst(p.clone()), Term::snd(p))
                    }
                    _ => Term::pair(self.term(Shape::A, depth - 1, rng), Term::var("a")),
                }
            }
            Shape::Sum => {
                if rng.gen_bool(0.5) {
                    Term::inl(self.term(Shape::A, depth.saturating_sub(1), rng))
                } else {
                    Term::inr(self.term(Shape::A, depth.saturating_sub(1), rng))
                }
            }
        }
    }

    fn var_from(&self, src: &Term, rng: &mut impl Rng) -> Option<(Reason, Term)> {
        let hits: Vec<_> = self
            .env
            .reason_bindings()
            .iter()
            .filter(|b| b.left.alpha_eq(src))
            .collect();
        hits.choose(rng).map(|b| (Reason::var(b.name.clone()), b.right.clone()))
    }

    fn var_to(&self, dst: &Term, rng: &mut impl Rng) -> Option<(Reason, Term)> {
        let hits: Vec<_> = self
            .env
            .reason_bindings()
            .iter()
            .filter(|b| b.right.alpha_eq(dst))
            .collect();
        hits.choose(rng).map(|b| (Reason::var(b.name.clone()), b.left.clone()))
    }

    /// A reason starting at `src`, with its target.
    fn from(&self, src: &Term, depth: usize, rng: &mut impl Rng) -> (Reason, Term) {
        let leafy = depth >= self.max_depth;
        if leafy {
            return self.var_from(src, rng).unwrap_or((Reason::Rho, src.clone()));
        }
        for _ in 0..8 {
            if let Some(out) = self.try_from(src, depth, rng) {
                return out;
            }
        }
        (Reason::Rho, src.clone())
    }

    fn try_from(&self, src: &Term, depth: usize, rng: &mut impl Rng) -> Option<(Reason, Term)> {
        let sub = |t: &Term, rng: &mut _| self.from(t, depth + 1, rng);
        match rng.gen_range(0..10) {
            0 => self.var_from(src, rng).or(Some((Reason::Rho, src.clone()))),
            1 => {
                let (x, s) = self.to(src, depth + 1, rng);
                Some((Reason::sigma(x), s))
            }
            2 | 3 => {
                let (a, m) = sub(src, rng);
                let (b, t) = sub(&m, rng);
                Some((Reason::tau(a, b), t))
            }
            4 | 5 => self.congruence(src, depth, rng),
            6 => {
                // subL(r, s): s rewrites a subterm of r's target
                let (r, t) = sub(src, rng);
                let ps = t.positions();
                let y = t.subterm_at(ps.choose(rng)?).ok()?.clone();
                let (s, u) = sub(&y, rng);
                Some((Reason::sub_l(r, s), t.replace_all(&y, &u)))
            }
            7 => {
                // subR(r, s): r rewrites a subterm of the source first
                let ps = src.positions();
                let x = src.subterm_at(ps.choose(rng)?).ok()?.clone();
                let (r, w) = sub(&x, rng);
                let (s, u) = sub(&src.replace_all(&x, &w), rng);
                Some((Reason::sub_r(r, s), u))
            }
            8 => {
                // an axiom atom at a redex
                let mut steps = Vec::new();
                for p in src.positions() {
                    for k in [AxiomKind::Beta, AxiomKind::Eta] {
                        if let Ok(Some(out)) = src.step_at(k, &p) {
                            steps.push((k, p.clone(), out));
                        }
                    }
                }
                let (k, p, out) = steps.choose(rng)?.clone();
                Some((Reason::tagged(k, p), out))
            }
            _ => match src {
                Term::App(f, a) => match &**f {
                    Term::Lambda(x, ann, b) => {
                        let (r, g) = sub(b, rng);
                        let (s, a2) = sub(a, rng);
                        Some((Reason::rapp(r, s), Term::app(Term::Lambda(x.clone(), ann.clone(), Box::new(g)), a2)))
                    }
                    _ => None,
                },
                _ => None,
            },
        }
    }

    /// `ξ`/`μ` through the head constructor of `src`.
    fn congruence(&self, src: &Term, depth: usize, rng: &mut impl Rng) -> Option<(Reason, Term)> {
        let mut sub = |t: &Term| self.from(t, depth + 1, rng);
        Some(match src {
            Term::Pair(a, b) => {
                let (r, a2) = sub(a);
                let (s, b2) = sub(b);
                (Reason::xi(XiKind::Pair, vec![r, s]), Term::pair(a2, b2))
            }
            Term::Inl(a) => {
                let (r, a2) = sub(a);
                (Reason::xi(XiKind::Inl, vec![r]), Term::inl(a2))
            }
            Term::Inr(a) => {
                let (r, a2) = sub(a);
                (Reason::xi(XiKind::Inr, vec![r]), Term::inr(a2))
            }
            Term::Lambda(x, ann, b) => {
                let (r, b2) = sub(b);
                (Reason::xi(XiKind::Lambda, vec![r]), Term::Lambda(x.clone(), ann.clone(), Box::new(b2)))
            }
            Term::Fst(p) => {
                let (r, p2) = sub(p);
                (Reason::mu(MuKind::Fst, vec![r]), Term::fst(p2))
            }
            Term::Snd(p) => {
                let (r, p2) = sub(p);
                (Reason::mu(MuKind::Snd, vec![r]), Term::snd(p2))
            }
            Term::App(f, a) => {
                let (s, a2) = sub(a);
                let (r, f2) = sub(f);
                (Reason::mu(MuKind::App, vec![s, r]), Term::app(f2, a2))
            }
            Term::Case(c, x, d, y, e) => {
                let (r, c2) = sub(c);
                let (s, d2) = sub(d);
                let (u, e2) = sub(e);
                (
                    Reason::mu(MuKind::Case, vec![r, s, u]),
                    Term::case(c2, x.clone(), d2, y.clone(), e2),
                )
            }
            _ => return None,
        })
    }

    /// A reason ending at `dst`, with its source.
    fn to(&self, dst: &Term, depth: usize, rng: &mut impl Rng) -> (Reason, Term) {
        if depth < self.max_depth && rng.gen_bool(0.5) {
            let (r, t) = self.from(dst, depth + 1, rng);
            return (Reason::sigma(r), t);
        }
        self.var_to(dst, rng).unwrap_or((Reason::Rho, dst.clone()))
    }
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}

impl Pipe for Term {}

/// A rewrite step whose result reads to a different target, or to none.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub rule: u8,
    pub position: Position,
    pub before: Reason,
    pub after: Reason,
    pub source: Term,
    pub expected: Term,
    pub found: Option<Term>,
}

/// Every single rewrite step of the sample's reason, checked against the
/// sample's endpoints (targets compared up to βη).
pub fn check_preservation(sample: &Sample, env: &Env, rules: &RuleSet) -> Vec<Violation> {
    let mut out = Vec::new();
    for (rule, position, after) in one_step_reducts(&sample.reason, rules) {
        let found = target_from(&after, &sample.source, env).ok().flatten();
        if !found.as_ref().is_some_and(|t| t.def_eq(&sample.target)) {
            out.push(Violation {
                rule,
                position,
                before: sample.reason.clone(),
                after,
                source: sample.source.clone(),
                expected: sample.target.clone(),
                found,
            });
        }
    }
    out
}
