//! Rewrite reasons: the expressions that name a computational path.
//!
//! A reason `s` in `a =_s b : A` records how `a` was identified with `b`:
//! reflexivity, atomic definitional steps, symmetry, transitivity, the
//! congruence steps that lift an equality through an introduction (`xi`) or
//! elimination (`mu`) constructor, and the two subterm-substitution steps.

mod parse;
mod position;

pub use parse::{parse_reason, ParseError};
pub use position::{Position, PositionError};

use std::fmt;

/// Which introduction rule a `xi` congruence step lifts through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XiKind {
    Pair,
    Inl,
    Inr,
    Lambda,
    Eps,
    IdIntro,
}

/// Which elimination rule a `mu` congruence step lifts through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MuKind {
    Fst,
    Snd,
    App,
    Case,
    SigElim,
    IdElim,
}

impl XiKind {
    pub const ALL: [XiKind; 6] = [
        XiKind::Pair,
        XiKind::Inl,
        XiKind::Inr,
        XiKind::Lambda,
        XiKind::Eps,
        XiKind::IdIntro,
    ];

    pub fn arity(self) -> usize {
        match self {
            XiKind::Pair => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            XiKind::Pair => "pair",
            XiKind::Inl => "inl",
            XiKind::Inr => "inr",
            XiKind::Lambda => "lambda",
            XiKind::Eps => "eps",
            XiKind::IdIntro => "idIntro",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        XiKind::ALL.iter().copied().find(|k| k.name() == s)
    }
}

impl MuKind {
    pub const ALL: [MuKind; 6] = [
        MuKind::Fst,
        MuKind::Snd,
        MuKind::App,
        MuKind::Case,
        MuKind::SigElim,
        MuKind::IdElim,
    ];

    pub fn arity(self) -> usize {
        match self {
            MuKind::Fst | MuKind::Snd => 1,
            MuKind::App | MuKind::SigElim | MuKind::IdElim => 2,
            MuKind::Case => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MuKind::Fst => "fst",
            MuKind::Snd => "snd",
            MuKind::App => "app",
            MuKind::Case => "case",
            MuKind::SigElim => "sigElim",
            MuKind::IdElim => "idElim",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        MuKind::ALL.iter().copied().find(|k| k.name() == s)
    }
}

/// The definitional axioms that can occur as atomic steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomKind {
    Beta,
    Eta,
    Zeta,
    Alpha,
}

impl AxiomKind {
    pub const ALL: [AxiomKind; 4] = [
        AxiomKind::Beta,
        AxiomKind::Eta,
        AxiomKind::Zeta,
        AxiomKind::Alpha,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomKind::Beta => "beta",
            AxiomKind::Eta => "eta",
            AxiomKind::Zeta => "zeta",
            AxiomKind::Alpha => "alpha",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        AxiomKind::ALL.iter().copied().find(|k| k.name() == s)
    }
}

/// Identifies one atomic definitional step: which axiom fired and where
/// in the term the redex sat.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StepTag {
    pub rule: AxiomKind,
    pub position: Position,
}

/// A computational path expression.
///
/// Equality is syntactic. Two untagged atoms of the same axiom are equal;
/// tagged atoms are equal only when their tags agree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reason {
    Var(String),
    Rho,
    Axiom(AxiomKind, Option<StepTag>),
    Sigma(Box<Reason>),
    Tau(Box<Reason>, Box<Reason>),
    Xi(XiKind, Vec<Reason>),
    Mu(MuKind, Vec<Reason>),
    SubL(Box<Reason>, Box<Reason>),
    SubR(Box<Reason>, Box<Reason>),
    /// `r(s)`: the reason `r` instantiated at the argument reason `s`.
    RApp(Box<Reason>, Box<Reason>),
}

impl Reason {
    pub fn var(name: impl Into<String>) -> Reason {
        Reason::Var(name.into())
    }

    pub fn sigma(r: Reason) -> Reason {
        Reason::Sigma(Box::new(r))
    }

    pub fn tau(r: Reason, s: Reason) -> Reason {
        Reason::Tau(Box::new(r), Box::new(s))
    }

    pub fn sub_l(r: Reason, s: Reason) -> Reason {
        Reason::SubL(Box::new(r), Box::new(s))
    }

    pub fn sub_r(r: Reason, s: Reason) -> Reason {
        Reason::SubR(Box::new(r), Box::new(s))
    }

    pub fn rapp(r: Reason, s: Reason) -> Reason {
        Reason::RApp(Box::new(r), Box::new(s))
    }

    /// Panics when `args.len()` disagrees with the kind's arity; use
    /// [`Reason::try_xi`] for unchecked input.
    pub fn xi(kind: XiKind, args: Vec<Reason>) -> Reason {
        Reason::try_xi(kind, args).expect("xi arity")
    }

    pub fn mu(kind: MuKind, args: Vec<Reason>) -> Reason {
        Reason::try_mu(kind, args).expect("mu arity")
    }

    pub fn try_xi(kind: XiKind, args: Vec<Reason>) -> Result<Reason, ArityError> {
        if args.len() != kind.arity() {
            return Err(ArityError {
                constructor: format!("xi[{}]", kind.name()),
                expected: kind.arity(),
                found: args.len(),
            });
        }
        Ok(Reason::Xi(kind, args))
    }

    pub fn try_mu(kind: MuKind, args: Vec<Reason>) -> Result<Reason, ArityError> {
        if args.len() != kind.arity() {
            return Err(ArityError {
                constructor: format!("mu[{}]", kind.name()),
                expected: kind.arity(),
                found: args.len(),
            });
        }
        Ok(Reason::Mu(kind, args))
    }

    pub fn axiom(kind: AxiomKind) -> Reason {
        Reason::Axiom(kind, None)
    }

    pub fn tagged(kind: AxiomKind, position: Position) -> Reason {
        Reason::Axiom(
            kind,
            Some(StepTag {
                rule: kind,
                position,
            }),
        )
    }

    /// Atoms are the leaves that carry no structure of their own.
    pub fn is_atom(&self) -> bool {
        matches!(self, Reason::Var(_) | Reason::Axiom(..))
    }

    pub fn children(&self) -> Vec<&Reason> {
        match self {
            Reason::Var(_) | Reason::Rho | Reason::Axiom(..) => vec![],
            Reason::Sigma(r) => vec![r],
            Reason::Tau(a, b)
            | Reason::SubL(a, b)
            | Reason::SubR(a, b)
            | Reason::RApp(a, b) => vec![a, b],
            Reason::Xi(_, args) | Reason::Mu(_, args) => args.iter().collect(),
        }
    }

    pub fn child(&self, i: usize) -> Option<&Reason> {
        match (self, i) {
            (Reason::Sigma(r), 0) => Some(r),
            (
                Reason::Tau(a, b)
                | Reason::SubL(a, b)
                | Reason::SubR(a, b)
                | Reason::RApp(a, b),
                _,
            ) => match i {
                0 => Some(a),
                1 => Some(b),
                _ => None,
            },
            (Reason::Xi(_, args) | Reason::Mu(_, args), _) => args.get(i),
            _ => None,
        }
    }

    pub(crate) fn child_mut(&mut self, i: usize) -> Option<&mut Reason> {
        match self {
            Reason::Sigma(r) if i == 0 => Some(r),
            Reason::Tau(a, b) | Reason::SubL(a, b) | Reason::SubR(a, b) | Reason::RApp(a, b) => {
                match i {
                    0 => Some(a),
                    1 => Some(b),
                    _ => None,
                }
            }
            Reason::Xi(_, args) | Reason::Mu(_, args) => args.get_mut(i),
            _ => None,
        }
    }

    pub fn arity(&self) -> usize {
        self.children().len()
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn subterm_at(&self, p: &Position) -> Result<&Reason, PositionError> {
        let mut cur = self;
        for (depth, &i) in p.indices().iter().enumerate() {
            cur = cur.child(i).ok_or_else(|| PositionError::new(p, depth))?;
        }
        Ok(cur)
    }

    pub fn replace_at(&self, p: &Position, s: Reason) -> Result<Reason, PositionError> {
        let mut out = self.clone();
        {
            let mut cur = &mut out;
            for (depth, &i) in p.indices().iter().enumerate() {
                cur = cur
                    .child_mut(i)
                    .ok_or_else(|| PositionError::new(p, depth))?;
            }
            *cur = s;
        }
        Ok(out)
    }

    /// All positions in pre-order (root first, children left to right).
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_positions(&mut path, &mut out);
        out
    }

    fn collect_positions(&self, path: &mut Vec<usize>, out: &mut Vec<Position>) {
        out.push(Position::from(path.clone()));
        for (i, c) in self.children().into_iter().enumerate() {
            path.push(i);
            c.collect_positions(path, out);
            path.pop();
        }
    }

    /// Free reason variables, in order of first occurrence.
    pub fn vars(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        self.walk(&mut |r| {
            if let Reason::Var(v) = r {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
        });
        out
    }

    pub fn contains_rho(&self) -> bool {
        let mut found = false;
        self.walk(&mut |r| found |= matches!(r, Reason::Rho));
        found
    }

    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Reason)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }

    /// Renames variables through `f`, leaving everything else intact.
    pub fn rename_vars(&self, f: &impl Fn(&str) -> String) -> Reason {
        self.map_leaves(&|r| match r {
            Reason::Var(v) => Some(Reason::Var(f(v))),
            _ => None,
        })
    }

    /// Replaces every free occurrence of variable `name` by `by`.
    pub fn substitute(&self, name: &str, by: &Reason) -> Reason {
        self.map_leaves(&|r| match r {
            Reason::Var(v) if v == name => Some(by.clone()),
            _ => None,
        })
    }

    fn map_leaves(&self, f: &impl Fn(&Reason) -> Option<Reason>) -> Reason {
        if let Some(r) = f(self) {
            return r;
        }
        let go = |r: &Reason| Box::new(r.map_leaves(f));
        match self {
            Reason::Var(_) | Reason::Rho | Reason::Axiom(..) => self.clone(),
            Reason::Sigma(r) => Reason::Sigma(go(r)),
            Reason::Tau(a, b) => Reason::Tau(go(a), go(b)),
            Reason::SubL(a, b) => Reason::SubL(go(a), go(b)),
            Reason::SubR(a, b) => Reason::SubR(go(a), go(b)),
            Reason::RApp(a, b) => Reason::RApp(go(a), go(b)),
            Reason::Xi(k, args) => Reason::Xi(*k, args.iter().map(|a| a.map_leaves(f)).collect()),
            Reason::Mu(k, args) => Reason::Mu(*k, args.iter().map(|a| a.map_leaves(f)).collect()),
        }
    }

    /// Rebuilds this node with new children (same count, same constructor).
    pub(crate) fn with_children(&self, mut kids: Vec<Reason>) -> Reason {
        debug_assert_eq!(kids.len(), self.arity());
        match self {
            Reason::Var(_) | Reason::Rho | Reason::Axiom(..) => self.clone(),
            Reason::Sigma(_) => Reason::sigma(kids.remove(0)),
            Reason::Tau(..) => {
                let b = kids.pop().unwrap();
                Reason::tau(kids.pop().unwrap(), b)
            }
            Reason::SubL(..) => {
                let b = kids.pop().unwrap();
                Reason::sub_l(kids.pop().unwrap(), b)
            }
            Reason::SubR(..) => {
                let b = kids.pop().unwrap();
                Reason::sub_r(kids.pop().unwrap(), b)
            }
            Reason::RApp(..) => {
                let b = kids.pop().unwrap();
                Reason::rapp(kids.pop().unwrap(), b)
            }
            Reason::Xi(k, _) => Reason::Xi(*k, kids),
            Reason::Mu(k, _) => Reason::Mu(*k, kids),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{constructor} takes {expected} argument(s), found {found}")]
pub struct ArityError {
    pub constructor: String,
    pub expected: usize,
    pub found: usize,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, args: &[Reason]) -> fmt::Result {
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            Ok(())
        }
        match self {
            Reason::Var(v) => f.write_str(v),
            Reason::Rho => f.write_str("rho"),
            Reason::Axiom(k, None) => f.write_str(k.name()),
            Reason::Axiom(k, Some(tag)) => write!(f, "{}@{}", k.name(), tag.position),
            Reason::Sigma(r) => write!(f, "sigma({r})"),
            Reason::Tau(a, b) => write!(f, "tau({a},{b})"),
            Reason::SubL(a, b) => write!(f, "subL({a},{b})"),
            Reason::SubR(a, b) => write!(f, "subR({a},{b})"),
            Reason::RApp(a, b) => write!(f, "{a}({b})"),
            Reason::Xi(k, args) => {
                write!(f, "xi[{}](", k.name())?;
                list(f, args)?;
                f.write_str(")")
            }
            Reason::Mu(k, args) => {
                write!(f, "mu[{}](", k.name())?;
                list(f, args)?;
                f.write_str(")")
            }
        }
    }
}

/// Reasons serialize as their concrete syntax.
impl serde::Serialize for Reason {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Reason {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = <std::borrow::Cow<'de, str>>::deserialize(d)?;
        parse_reason(&text).map_err(serde::de::Error::custom)
    }
}
