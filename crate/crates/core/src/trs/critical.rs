//! Critical pairs between rule left-hand sides.
//!
//! Context rules are expanded into one first-order pattern per context
//! skeleton of depth at most `context_depth`; a skeleton is a spine of
//! congruence nodes with fresh variables off the spine. Overlaps are found
//! by unification, and each candidate peak is then rewritten with the real
//! matchers, which decide where a context's hole actually falls.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::unify::{apply, canonical_names, unify};
use super::{normalize, rewrite_once, ContextShape, RuleSet, Strategy, Trace, DEFAULT_FUEL};
use crate::reason::{MuKind, Position, Reason, XiKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub rule_a: u8,
    pub rule_b: u8,
    /// Where rule B fires inside the peak; rule A fires at the root.
    pub position: Position,
    pub peak: Reason,
    pub left: Reason,
    pub right: Reason,
    pub left_normal: Reason,
    pub right_normal: Reason,
    pub joinable: bool,
}

impl CriticalPair {
    /// The two normalizations meeting in a common term, when there is one.
    /// Recomputed on demand; storing traces for every pair is expensive.
    pub fn join_witness(&self, rules: &RuleSet) -> Option<(Trace, Trace)> {
        if !self.joinable {
            return None;
        }
        Some((run(&self.left, rules), run(&self.right, rules)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub pairs_checked: usize,
    pub all_joinable: bool,
    pub failures: Vec<CriticalPair>,
}

/// A candidate rule `lhs ▷ rhs` read off an unjoinable critical pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Orientation {
    pub lhs: Reason,
    pub rhs: Reason,
    pub rule_a: u8,
    pub rule_b: u8,
    pub peak: Reason,
}

impl Orientation {
    /// Whether `lhs ▷ rhs` is an instance of this orientation, reading its
    /// variables as pattern variables.
    pub fn subsumes(&self, lhs: &Reason, rhs: &Reason) -> bool {
        let mut s = BTreeMap::new();
        matches_into(&self.lhs, lhs, &mut s) && matches_into(&self.rhs, rhs, &mut s)
    }
}

fn matches_into(pat: &Reason, t: &Reason, s: &mut BTreeMap<String, Reason>) -> bool {
    if let Reason::Var(v) = pat {
        return match s.get(v) {
            Some(bound) => bound == t,
            None => {
                s.insert(v.clone(), t.clone());
                true
            }
        };
    }
    let (pk, tk) = (pat.children(), t.children());
    let shallow = |r: &Reason| {
        let mut r = r.clone();
        for i in 0..r.arity() {
            r = r.replace_at(&Position::root().child(i), Reason::Rho).expect("own child");
        }
        r
    };
    pk.len() == tk.len() && shallow(pat) == shallow(t) && pk.iter().zip(&tk).all(|(p, c)| matches_into(p, c, s))
}

const HOLE: &str = "#";

fn v(name: &str) -> Reason {
    Reason::var(name)
}

fn sg(r: Reason) -> Reason {
    Reason::sigma(r)
}

/// Context skeletons up to `depth` nested nodes, each containing `HOLE` once.
fn contexts(depth: usize, d: &ContextShape) -> Vec<Reason> {
    let mut fresh = 0usize;
    let mut level = vec![v(HOLE)];
    let mut all = level.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for inner in &level {
            for shape in one_level_shapes(d) {
                for hole_at in 0..shape.arity() {
                    let kids = (0..shape.arity())
                        .map(|i| {
                            if i == hole_at {
                                inner.clone()
                            } else {
                                fresh += 1;
                                v(&format!("c{fresh}"))
                            }
                        })
                        .collect();
                    next.push(shape.with_children(kids));
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn one_level_shapes(d: &ContextShape) -> Vec<Reason> {
    let blank = |n: usize| vec![Reason::Rho; n];
    let mut out: Vec<Reason> = XiKind::ALL
        .iter()
        .map(|&k| Reason::xi(k, blank(k.arity())))
        .chain(MuKind::ALL.iter().map(|&k| Reason::mu(k, blank(k.arity()))))
        .collect();
    if *d == ContextShape::Any {
        out.extend([
            sg(Reason::Rho),
            Reason::tau(Reason::Rho, Reason::Rho),
            Reason::sub_l(Reason::Rho, Reason::Rho),
            Reason::sub_r(Reason::Rho, Reason::Rho),
            Reason::rapp(Reason::Rho, Reason::Rho),
        ]);
    }
    out
}

/// First-order instances of the left-hand side of rule `id`.
fn lhs_patterns(id: u8, depth: usize, d: &ContextShape) -> Vec<Reason> {
    use Reason as R;
    let (r, s, u) = (v("r"), v("s"), v("u"));
    if super::rule(id).uses_context {
        return contexts(depth, d)
            .into_iter()
            .map(|c| {
                let c = |x: Reason| c.substitute(HOLE, &x);
                match id {
                    3 => R::tau(c(r.clone()), c(sg(r.clone()))),
                    4 => R::tau(c(sg(r.clone())), c(r.clone())),
                    5 => R::tau(c(r.clone()), c(R::Rho)),
                    6 => R::tau(c(R::Rho), c(r.clone())),
                    7 => R::sub_l(c(r.clone()), c(R::Rho)),
                    8 => R::sub_r(c(R::Rho), c(r.clone())),
                    9 => R::sub_l(R::sub_l(s.clone(), c(r.clone())), c(sg(r.clone()))),
                    10 => R::sub_l(R::sub_l(s.clone(), c(sg(r.clone()))), c(r.clone())),
                    11 => R::sub_r(c(s.clone()), R::sub_r(c(sg(s.clone())), r.clone())),
                    12 => R::sub_r(c(sg(s.clone())), R::sub_r(c(s.clone()), r.clone())),
                    36 => R::tau(c(u.clone()), R::tau(c(sg(u.clone())), v("v"))),
                    37 => R::tau(c(sg(u.clone())), R::tau(c(u.clone()), v("v"))),
                    _ => unreachable!("rule {id} has no context"),
                }
            })
            .collect();
    }
    let xi_unary = XiKind::ALL.iter().filter(|k| k.arity() == 1);
    match id {
        26 => xi_unary.map(|&k| sg(R::xi(k, vec![r.clone()]))).collect(),
        28 | 29 => {
            let n = if id == 28 { 1 } else { 2 };
            MuKind::ALL
                .iter()
                .filter(|k| k.arity() == n)
                .map(|&k| sg(R::mu(k, [s.clone(), r.clone()][2 - n..].to_vec())))
                .collect()
        }
        _ => vec![crate::reason::parse_reason(super::rule(id).lhs).expect("rule table parses")],
    }
}

type HeadKey = (u8, u8);

fn head_key(r: &Reason) -> Option<HeadKey> {
    Some(match r {
        Reason::Var(_) => return None,
        Reason::Rho => (0, 0),
        Reason::Axiom(k, _) => (1, *k as u8),
        Reason::Sigma(_) => (2, 0),
        Reason::Tau(..) => (3, 0),
        Reason::SubL(..) => (4, 0),
        Reason::SubR(..) => (5, 0),
        Reason::RApp(..) => (6, 0),
        Reason::Xi(k, _) => (7, *k as u8),
        Reason::Mu(k, _) => (8, *k as u8),
    })
}

fn prime(r: &Reason) -> Reason {
    r.rename_vars(&|x: &str| format!("{x}'"))
}

/// Normalizes as far as the default fuel allows.
fn run(t: &Reason, rules: &RuleSet) -> Trace {
    normalize(t, Strategy::LeftmostInnermost, DEFAULT_FUEL, rules).unwrap_or_else(|e| match e {
        super::NormalizeError::FuelExhausted(tr) => *tr,
        super::NormalizeError::ZeroFuel => unreachable!("default fuel is positive"),
    })
}

/// All critical pairs between the rules of `rules`, sorted by
/// `(rule_a, rule_b, peak, position)`.
pub fn critical_pairs(rules: &RuleSet, context_depth: usize) -> Vec<CriticalPair> {
    analyse(rules, context_depth, |_| true).1
}

/// Enumerates peaks and keeps the pairs selected by `keep`; also returns how
/// many genuine pairs were examined in total.
fn analyse(
    rules: &RuleSet,
    context_depth: usize,
    keep: impl Fn(&CriticalPair) -> bool + Sync,
) -> (usize, Vec<CriticalPair>) {
    let d = rules.contexts;
    let patterns: Vec<(u8, Reason)> = rules
        .ids()
        .flat_map(|id| lhs_patterns(id, context_depth, &d).into_iter().map(move |p| (id, p)))
        .collect();
    let primed: Vec<(u8, Reason, HeadKey)> = patterns
        .iter()
        .map(|(id, p)| (*id, prime(p), head_key(p).expect("patterns are not variables")))
        .collect();

    let peaks: BTreeSet<(u8, u8, Position, Reason)> = patterns
        .par_iter()
        .flat_map_iter(|(ida, pa)| {
            let mut found = Vec::new();
            for q in pa.positions() {
                let sub = pa.subterm_at(&q).expect("own position");
                let Some(key) = head_key(sub) else { continue };
                for (idb, pb, kb) in &primed {
                    if *kb != key || (q.is_root() && idb == ida) {
                        continue;
                    }
                    if let Some(s) = unify(sub, pb) {
                        let peak = canonical_names(&[&apply(pa, &s)]).remove(0);
                        found.push((*ida, *idb, q.clone(), peak));
                    }
                }
            }
            found
        })
        .collect();

    let results: Vec<Option<CriticalPair>> = peaks
        .into_par_iter()
        .filter_map(|(ida, idb, q, peak)| {
            let left = rewrite_once(&peak, ida, &Position::root(), rules).ok()??;
            let right = rewrite_once(&peak, idb, &q, rules).ok()??;
            let left_normal = run(&left, rules).last().clone();
            let right_normal = run(&right, rules).last().clone();
            let cp = CriticalPair {
                rule_a: ida,
                rule_b: idb,
                position: q,
                peak,
                left,
                right,
                joinable: left_normal == right_normal,
                left_normal,
                right_normal,
            };
            Some(keep(&cp).then_some(cp))
        })
        .collect();
    let checked = results.len();
    let mut out: Vec<CriticalPair> = results.into_iter().flatten().collect();
    out.sort_by(|a, b| (a.rule_a, a.rule_b, &a.peak, &a.position).cmp(&(b.rule_a, b.rule_b, &b.peak, &b.position)));
    (checked, out)
}

pub fn check_local_confluence(rules: &RuleSet, context_depth: usize) -> ConfluenceReport {
    let (pairs_checked, failures) = analyse(rules, context_depth, |cp| !cp.joinable);
    ConfluenceReport {
        pairs_checked,
        all_joinable: failures.is_empty(),
        failures,
    }
}

fn larger_first(a: Reason, b: Reason) -> (Reason, Reason) {
    let key = |r: &Reason| (r.size(), r.to_string());
    if key(&a) >= key(&b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Orients every unjoinable critical pair into a candidate rule, larger
/// normal form on the left. Candidates equal up to renaming are merged.
pub fn completion_probe(rules: &RuleSet, context_depth: usize) -> Vec<Orientation> {
    orient(&check_local_confluence(rules, context_depth).failures)
}

/// The orientation step of [`completion_probe`], for callers that already
/// hold the failures.
pub fn orient(failures: &[CriticalPair]) -> Vec<Orientation> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for cp in failures.iter().filter(|cp| !cp.joinable) {
        let (l, r) = larger_first(cp.left_normal.clone(), cp.right_normal.clone());
        let named = canonical_names(&[&l, &r]);
        let (lhs, rhs) = (named[0].clone(), named[1].clone());
        if seen.insert((lhs.clone(), rhs.clone())) {
            out.push(Orientation {
                lhs,
                rhs,
                rule_a: cp.rule_a,
                rule_b: cp.rule_b,
                peak: cp.peak.clone(),
            });
        }
    }
    out
}
