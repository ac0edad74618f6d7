//! Computational paths read off λ-term reduction sequences: every β/η step
//! becomes an atom tagged with its redex position, and the atoms are
//! chained with τ in firing order.

use super::env::{Env, EnvError};
use super::term::{leftmost_innermost_step, leftmost_outermost_step, Term, Ty};
use crate::reason::{AxiomKind, Position, Reason};

pub const DEFAULT_PATH_FUEL: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathStrategy {
    LeftmostOutermost,
    LeftmostInnermost,
    /// Explicit steps, each applied at its position in turn.
    Scripted(Vec<(AxiomKind, Position)>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("no normal form within {0} steps")]
    FuelExhausted(usize),
    #[error("step {index} ({kind}@{position}) does not apply to '{term}'")]
    InvalidStep {
        index: usize,
        kind: &'static str,
        position: Position,
        term: String,
    },
}

/// One fired step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathStep {
    pub kind: AxiomKind,
    pub position: Position,
    pub before: Term,
    pub after: Term,
}

impl PathStep {
    pub fn atom(&self) -> Reason {
        Reason::tagged(self.kind, self.position.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub term: Term,
    pub reason: Reason,
    pub steps: Vec<PathStep>,
}

impl Reduction {
    /// `env` with the endpoints of every step recorded, so the reason's
    /// endpoints can also be synthesised without an anchor.
    pub fn register(&self, env: &Env, ty: &Ty) -> Result<Env, EnvError> {
        let mut env = env.clone();
        for s in &self.steps {
            if env.steps(&s.atom()).any(|b| b.left.alpha_eq(&s.before) && b.right.alpha_eq(&s.after)) {
                continue;
            }
            env = env.with_step(s.atom(), s.before.clone(), s.after.clone(), ty.clone())?;
        }
        Ok(env)
    }
}

/// Reduces `t` and records the path. β is preferred over η at a position.
pub fn path_of_reduction(t: &Term, strategy: &PathStrategy, fuel: usize) -> Result<(Term, Reason), PathError> {
    reduction(t, strategy, fuel).map(|r| (r.term, r.reason))
}

pub fn reduction(t: &Term, strategy: &PathStrategy, fuel: usize) -> Result<Reduction, PathError> {
    let kinds = [AxiomKind::Beta, AxiomKind::Eta];
    let mut cur = t.clone();
    let mut steps = Vec::new();
    match strategy {
        PathStrategy::Scripted(script) => {
            for (index, (kind, position)) in script.iter().enumerate() {
                let next = match cur.step_at(*kind, position) {
                    Ok(Some(next)) => next,
                    _ => {
                        return Err(PathError::InvalidStep {
                            index,
                            kind: kind.name(),
                            position: position.clone(),
                            term: cur.to_string(),
                        })
                    }
                };
                steps.push(PathStep {
                    kind: *kind,
                    position: position.clone(),
                    before: cur,
                    after: next.clone(),
                });
                cur = next;
            }
        }
        PathStrategy::LeftmostOutermost | PathStrategy::LeftmostInnermost => loop {
            let found = if *strategy == PathStrategy::LeftmostOutermost {
                leftmost_outermost_step(&cur, &kinds)
            } else {
                leftmost_innermost_step(&cur, &kinds)
            };
            let Some((kind, position, next)) = found else {
                break;
            };
            if steps.len() == fuel {
                return Err(PathError::FuelExhausted(fuel));
            }
            steps.push(PathStep {
                kind,
                position,
                before: cur,
                after: next.clone(),
            });
            cur = next;
        },
    }
    let reason = steps
        .iter()
        .map(PathStep::atom)
        .reduce(Reason::tau)
        .unwrap_or(Reason::Rho);
    Ok(Reduction {
        term: cur,
        reason,
        steps,
    })
}

/// `(λx.(λy.y x) (λw.z w)) v` and the three step sequences that reduce it
/// to `z v`.
pub fn three_paths_term() -> Term {
    super::syntax::parse_term("(λx.(λy.y x) (λw.z w)) v").expect("fixed term")
}

pub fn three_paths_scripts() -> [Vec<(AxiomKind, Position)>; 3] {
    use AxiomKind::{Beta, Eta};
    let p = |v: &[usize]| Position::from(v.to_vec());
    [
        vec![(Eta, p(&[0, 0, 1])), (Beta, p(&[])), (Beta, p(&[]))],
        vec![(Beta, p(&[0, 0])), (Eta, p(&[0, 0, 0])), (Beta, p(&[]))],
        vec![(Beta, p(&[0, 0])), (Beta, p(&[])), (Eta, p(&[0]))],
    ]
}

/// Typing context of the three-paths term: `z : A -> B`, `v : A`.
pub fn three_paths_env() -> Env {
    Env::new()
        .with_term("z", Ty::arrow(Ty::atom("A"), Ty::atom("B")))
        .and_then(|e| e.with_term("v", Ty::atom("A")))
        .expect("distinct names")
}
