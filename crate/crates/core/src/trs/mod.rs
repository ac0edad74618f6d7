//! The rewriting system on reasons: rules, single steps, normalization and
//! critical-pair analysis.

mod critical;
mod normalize;
mod rules;
mod ruleset;
mod unify;

pub use critical::{
    check_local_confluence, completion_probe, critical_pairs, orient, ConfluenceReport, CriticalPair, Orientation,
};
pub use normalize::{normalize, NormalizeError, Step, Strategy, Trace, DEFAULT_FUEL};
pub use rules::ContextShape;
pub use ruleset::{rule, rule_by_name, RewriteRule, RuleListError, RuleSet, RULES};

use crate::reason::{Position, PositionError, Reason};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error(transparent)]
    InvalidPosition(#[from] PositionError),
    #[error("no rule with id {0}; ids run from 1 to 37")]
    UnknownRule(u8),
}

/// Contracts `r` at `p` with rule `id`, or `None` when the rule does not
/// match there. Rules outside `rules` never match.
pub fn rewrite_once(r: &Reason, id: u8, p: &Position, rules: &RuleSet) -> Result<Option<Reason>, RewriteError> {
    if !(1..=37).contains(&id) {
        return Err(RewriteError::UnknownRule(id));
    }
    let sub = r.subterm_at(p)?;
    if !rules.contains(id) {
        return Ok(None);
    }
    match rules::apply_root(id, sub, rules) {
        Some(out) => Ok(Some(r.replace_at(p, out)?)),
        None => Ok(None),
    }
}

/// First rule (by ascending id) that fires at the root of `r`.
pub(crate) fn root_step(r: &Reason, rules: &RuleSet) -> Option<(u8, Reason)> {
    rules::candidates(r)
        .iter()
        .filter(|&&id| rules.contains(id))
        .find_map(|&id| rules::apply_root(id, r, rules).map(|out| (id, out)))
}

/// Every rule that fires at the root of `r`.
pub(crate) fn root_steps(r: &Reason, rules: &RuleSet) -> Vec<(u8, Reason)> {
    rules::candidates(r)
        .iter()
        .filter(|&&id| rules.contains(id))
        .filter_map(|&id| rules::apply_root(id, r, rules).map(|out| (id, out)))
        .collect()
}

pub fn is_normal(r: &Reason, rules: &RuleSet) -> bool {
    r.children().into_iter().all(|c| is_normal(c, rules)) && root_step(r, rules).is_none()
}

/// All redexes of `r`, each with the rules that fire there, in preorder.
pub fn redexes(r: &Reason, rules: &RuleSet) -> Vec<(Position, Vec<u8>)> {
    let mut out = Vec::new();
    collect_redexes(r, &mut Vec::new(), rules, &mut out);
    out
}

fn collect_redexes(r: &Reason, path: &mut Vec<usize>, rules: &RuleSet, out: &mut Vec<(Position, Vec<u8>)>) {
    let ids: Vec<u8> = root_steps(r, rules).into_iter().map(|(id, _)| id).collect();
    if !ids.is_empty() {
        out.push((Position::from(path.clone()), ids));
    }
    for (i, c) in r.children().into_iter().enumerate() {
        path.push(i);
        collect_redexes(c, path, rules, out);
        path.pop();
    }
}

/// All one-step reducts of `r` as `(rule, position, result)`.
pub fn one_step_reducts(r: &Reason, rules: &RuleSet) -> Vec<(u8, Position, Reason)> {
    let mut out = Vec::new();
    for (p, ids) in redexes(r, rules) {
        for id in ids {
            if let Ok(Some(t)) = rewrite_once(r, id, &p, rules) {
                out.push((id, p.clone(), t));
            }
        }
    }
    out
}
