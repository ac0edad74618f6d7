use super::term::{Term, Ty};
use crate::reason::Reason;

/// Endpoints of a reason variable. A parametric binding `[x:A] l =_r r : B`
/// stands for every instance `l[a/x] =_r r[a/x]`; this is how the reason of
/// a branch or a λ-body is recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct ReasonBinding {
    pub name: String,
    pub params: Vec<(String, Ty)>,
    pub left: Term,
    pub right: Term,
    pub ty: Ty,
}

/// Endpoints of one occurrence of an axiom atom such as `beta@[0]`. The
/// same atom may connect several pairs of terms.
#[derive(Debug, Clone, PartialEq)]
pub struct StepBinding {
    pub atom: Reason,
    pub left: Term,
    pub right: Term,
    pub ty: Ty,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnvError {
    #[error("term variable '{0}' bound twice")]
    DuplicateTerm(String),
    #[error("reason variable '{0}' bound twice")]
    DuplicateReason(String),
    #[error("'{0}' is not an axiom atom")]
    NotAnAtom(String),
    #[error("step '{0}' bound twice with the same endpoints")]
    DuplicateStep(String),
}

/// Typing context plus reason context.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Env {
    terms: Vec<(String, Ty)>,
    reasons: Vec<ReasonBinding>,
    steps: Vec<StepBinding>,
    /// Number of leading entries in `terms`/`reasons` that came from the
    /// builder; later ones are local and may shadow.
    global: (usize, usize),
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn with_term(mut self, x: impl Into<String>, ty: Ty) -> Result<Self, EnvError> {
        let x = x.into();
        if self.terms.iter().any(|(y, _)| *y == x) {
            return Err(EnvError::DuplicateTerm(x));
        }
        self.terms.push((x, ty));
        self.global.0 = self.terms.len();
        Ok(self)
    }

    pub fn with_reason(self, name: impl Into<String>, left: Term, right: Term, ty: Ty) -> Result<Self, EnvError> {
        self.with_parametric_reason(name, Vec::new(), left, right, ty)
    }

    pub fn with_parametric_reason(
        mut self,
        name: impl Into<String>,
        params: Vec<(String, Ty)>,
        left: Term,
        right: Term,
        ty: Ty,
    ) -> Result<Self, EnvError> {
        let name = name.into();
        if self.reasons.iter().any(|b| b.name == name) {
            return Err(EnvError::DuplicateReason(name));
        }
        self.reasons.push(ReasonBinding {
            name,
            params,
            left,
            right,
            ty,
        });
        self.global.1 = self.reasons.len();
        Ok(self)
    }

    pub fn with_step(mut self, atom: Reason, left: Term, right: Term, ty: Ty) -> Result<Self, EnvError> {
        if !matches!(atom, Reason::Axiom(..)) {
            return Err(EnvError::NotAnAtom(atom.to_string()));
        }
        if self
            .steps
            .iter()
            .any(|s| s.atom == atom && s.left.alpha_eq(&left) && s.right.alpha_eq(&right))
        {
            return Err(EnvError::DuplicateStep(atom.to_string()));
        }
        self.steps.push(StepBinding { atom, left, right, ty });
        Ok(self)
    }

    pub fn term_type(&self, x: &str) -> Option<&Ty> {
        self.terms.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    pub fn reason(&self, name: &str) -> Option<&ReasonBinding> {
        self.reasons.iter().rev().find(|b| b.name == name)
    }

    pub fn steps(&self, atom: &Reason) -> impl Iterator<Item = &StepBinding> {
        let atom = atom.clone();
        self.steps.iter().filter(move |s| s.atom == atom)
    }

    pub fn term_bindings(&self) -> &[(String, Ty)] {
        &self.terms[..self.global.0]
    }

    pub fn reason_bindings(&self) -> &[ReasonBinding] {
        &self.reasons[..self.global.1]
    }

    pub fn step_bindings(&self) -> &[StepBinding] {
        &self.steps
    }

    /// A local term hypothesis, shadowing any earlier binding. A variable
    /// of identity type also names its reason: `c : Id_A(a,b)` gives `c`
    /// the endpoints `(a, b)`.
    pub(crate) fn push_term(&mut self, x: &str, ty: &Ty) {
        self.terms.push((x.to_string(), ty.clone()));
        if let Ty::IdTy(a, l, r) = ty {
            self.push_reason(x, l, r, a);
        }
    }

    pub(crate) fn push_reason(&mut self, name: &str, left: &Term, right: &Term, ty: &Ty) {
        self.reasons.push(ReasonBinding {
            name: name.to_string(),
            params: Vec::new(),
            left: left.clone(),
            right: right.clone(),
            ty: ty.clone(),
        });
    }

    pub(crate) fn extended_term(&self, x: &str, ty: &Ty) -> Env {
        let mut e = self.clone();
        e.push_term(x, ty);
        e
    }

    pub(crate) fn extended_reason(&self, name: &str, left: &Term, right: &Term, ty: &Ty) -> Env {
        let mut e = self.clone();
        e.push_reason(name, left, right, ty);
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reason::{AxiomKind, Position};

    #[test]
    fn rejects_duplicates() {
        let a = Ty::atom("A");
        let env = Env::new().with_term("x", a.clone()).unwrap();
        assert_eq!(env.clone().with_term("x", a.clone()), Err(EnvError::DuplicateTerm("x".into())));
        let env = env.with_reason("r", Term::var("x"), Term::var("x"), a.clone()).unwrap();
        assert!(env.clone().with_reason("r", Term::var("x"), Term::var("x"), a.clone()).is_err());
        let beta = Reason::tagged(AxiomKind::Beta, Position::root());
        let env = env.with_step(beta.clone(), Term::var("p"), Term::var("q"), a.clone()).unwrap();
        // the same atom may connect other terms
        let env = env.with_step(beta.clone(), Term::var("q"), Term::var("u"), a.clone()).unwrap();
        assert_eq!(env.steps(&beta).count(), 2);
        assert!(env.clone().with_step(beta, Term::var("p"), Term::var("q"), a.clone()).is_err());
        assert!(env.with_step(Reason::Rho, Term::var("p"), Term::var("q"), a).is_err());
    }

    #[test]
    fn identity_hypotheses_name_their_reason() {
        let a = Ty::atom("A");
        let env = Env::new().extended_term("c", &Ty::id(a.clone(), Term::var("x"), Term::var("y")));
        let b = env.reason("c").unwrap();
        assert_eq!((b.left.clone(), b.right.clone(), b.ty.clone()), (Term::var("x"), Term::var("y"), a));
    }
}
