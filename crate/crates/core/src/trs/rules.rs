//! Root matchers for the 37 rules.
//!
//! Xi/Mu kinds make each left-hand side unambiguous: rule 13 needs
//! `mu[fst]` over `xi[pair]`, rule 14 `mu[snd]`, and so on.

use super::RuleSet;
use crate::reason::{MuKind, Position, Reason, XiKind};

/// Which constructors may sit on the path from a context's root to its hole.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum ContextShape {
    /// Only `xi`/`mu` congruence nodes, the way contexts arise in
    /// derivations (`tau(xi(r), xi(sigma(r)))`).
    #[default]
    Congruence,
    /// Any constructor, e.g. `tau(rho,r)` vs `tau(r,r)` diverge under `tau(_, r)`.
    Any,
}

fn s(r: &Reason) -> Reason {
    Reason::sigma(r.clone())
}

fn same_head(a: &Reason, b: &Reason) -> bool {
    match (a, b) {
        (Reason::Xi(k, _), Reason::Xi(l, _)) => k == l,
        (Reason::Mu(k, _), Reason::Mu(l, _)) => k == l,
        _ => std::mem::discriminant(a) == std::mem::discriminant(b) && a.arity() > 0,
    }
}

fn spine_node(r: &Reason, d: &ContextShape) -> bool {
    if *d == ContextShape::Congruence {
        matches!(r, Reason::Xi(..) | Reason::Mu(..))
    } else {
        r.arity() > 0
    }
}

/// Positions `p` such that `a` and `b` agree everywhere outside `p`,
/// deepest first.
fn hole_candidates<'a>(
    a: &'a Reason,
    b: &'a Reason,
    d: &ContextShape,
) -> Vec<(Position, &'a Reason, &'a Reason)> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    let (mut x, mut y) = (a, b);
    loop {
        out.push((Position::from(path.clone()), x, y));
        if !(same_head(x, y) && spine_node(x, d)) {
            break;
        }
        let xs = x.children();
        let ys = y.children();
        let mut differing = xs.iter().zip(&ys).enumerate().filter(|(_, (p, q))| p != q);
        match (differing.next(), differing.next()) {
            (Some((i, (p, q))), None) => {
                path.push(i);
                x = p;
                y = q;
            }
            _ => break,
        }
    }
    out.reverse();
    out
}

/// Finds a context `C` with `a = C[x]`, `b = C[y]` and `pred(x, y)`.
fn context_match<'a>(
    a: &'a Reason,
    b: &'a Reason,
    d: &ContextShape,
    pred: impl Fn(&Reason, &Reason) -> bool,
) -> Option<(Position, &'a Reason)> {
    hole_candidates(a, b, d)
        .into_iter()
        .find(|(_, x, y)| pred(x, y))
        .map(|(p, x, _)| (p, x))
}

fn rho_on_spine(t: &Reason, d: &ContextShape) -> bool {
    matches!(t, Reason::Rho) || (spine_node(t, d) && t.children().iter().any(|c| rho_on_spine(c, d)))
}

/// `a = C[r]`, `b = C[rho]`; gives `C[r]`.
fn rho_hole(a: &Reason, b: &Reason, d: &ContextShape) -> bool {
    if a == b {
        return rho_on_spine(b, d);
    }
    context_match(a, b, d, |_, y| *y == Reason::Rho).is_some()
}

fn is_sigma_of(big: &Reason, small: &Reason) -> bool {
    matches!(big, Reason::Sigma(inner) if **inner == *small)
}

/// `a = C[r]`, `b = C[sigma(r)]`.
fn inverse_hole(a: &Reason, b: &Reason, d: &ContextShape) -> Option<Position> {
    context_match(a, b, d, |x, y| is_sigma_of(y, x)).map(|(p, _)| p)
}

/// Applies rule `id` at the root of `r`.
pub(crate) fn apply_root(id: u8, r: &Reason, rs: &RuleSet) -> Option<Reason> {
    use Reason::*;
    let d = &rs.contexts;
    match id {
        1 => match r {
            Sigma(x) if **x == Rho => Some(Rho),
            _ => None,
        },
        2 => match r {
            Sigma(x) => match &**x {
                Sigma(y) => Some((**y).clone()),
                _ => None,
            },
            _ => None,
        },
        3 | 4 => match r {
            Tau(a, b) => {
                let (c_r, c_sr) = if id == 3 { (a, b) } else { (b, a) };
                let p = inverse_hole(c_r, c_sr, d)?;
                a.replace_at(&p, Rho).ok()
            }
            _ => None,
        },
        5 | 6 | 7 | 8 => {
            let (a, b) = match (id, r) {
                (5 | 6, Tau(a, b)) => (a, b),
                (7, SubL(a, b)) | (8, SubR(a, b)) => (a, b),
                _ => return None,
            };
            // rules 5 and 7 carry the hole on the right, 6 and 8 on the left
            let (keep, other) = if id == 5 || id == 7 { (a, b) } else { (b, a) };
            rho_hole(keep, other, d).then(|| (**keep).clone())
        }
        9 | 10 => match r {
            SubL(inner, y) => match &**inner {
                SubL(keep, x) => {
                    let found = if id == 9 {
                        inverse_hole(x, y, d)
                    } else {
                        inverse_hole(y, x, d)
                    };
                    found.map(|_| (**keep).clone())
                }
                _ => None,
            },
            _ => None,
        },
        11 | 12 => match r {
            SubR(x, inner) => match &**inner {
                SubR(y, keep) => {
                    let found = if id == 11 {
                        inverse_hole(x, y, d)
                    } else {
                        inverse_hole(y, x, d)
                    };
                    found.map(|_| (**keep).clone())
                }
                _ => None,
            },
            _ => None,
        },
        13 | 14 => match r {
            Mu(k @ (MuKind::Fst | MuKind::Snd), args) => match &args[0] {
                Xi(XiKind::Pair, pair) => {
                    let want = if id == 13 { MuKind::Fst } else { MuKind::Snd };
                    (*k == want).then(|| pair[if id == 13 { 0 } else { 1 }].clone())
                }
                _ => None,
            },
            _ => None,
        },
        15 | 16 => match r {
            Mu(MuKind::Case, args) => match (&args[0], id) {
                (Xi(XiKind::Inl, _), 15) => Some(args[1].clone()),
                (Xi(XiKind::Inr, _), 16) => Some(args[2].clone()),
                _ => None,
            },
            _ => None,
        },
        17 => match r {
            Mu(MuKind::App, args) => match &args[1] {
                Xi(XiKind::Lambda, body) => Some(Reason::rapp(body[0].clone(), args[0].clone())),
                _ => None,
            },
            _ => None,
        },
        18 => match r {
            Mu(MuKind::SigElim, args) if matches!(args[0], Xi(XiKind::Eps, _)) => Some(args[1].clone()),
            _ => None,
        },
        19 => match r {
            Xi(XiKind::Pair, args) => match (&args[0], &args[1]) {
                (Mu(MuKind::Fst, a), Mu(MuKind::Snd, b)) if a[0] == b[0] => Some(a[0].clone()),
                _ => None,
            },
            _ => None,
        },
        20 => match r {
            Mu(MuKind::Case, args) => match (&args[1], &args[2]) {
                (Xi(XiKind::Inl, _), Xi(XiKind::Inr, _)) => Some(args[0].clone()),
                _ => None,
            },
            _ => None,
        },
        21 => match r {
            Xi(XiKind::Lambda, body) => match &body[0] {
                Mu(MuKind::App, args) if args[0] == Rho => Some(args[1].clone()),
                _ => None,
            },
            _ => None,
        },
        22 => match r {
            Mu(MuKind::SigElim, args) if matches!(args[1], Xi(XiKind::Eps, _)) => Some(args[0].clone()),
            _ => None,
        },
        23..=30 => {
            let Sigma(x) = r else { return None };
            match (id, &**x) {
                (23, Tau(a, b)) => Some(Reason::tau(s(b), s(a))),
                (24, SubL(a, b)) => Some(Reason::sub_r(s(b), s(a))),
                (25, SubR(a, b)) => Some(Reason::sub_l(s(b), s(a))),
                (26, Xi(k, args)) if args.len() == 1 => Some(Reason::Xi(*k, vec![s(&args[0])])),
                (27, Xi(XiKind::Pair, args)) => Some(Reason::Xi(XiKind::Pair, args.iter().map(s).collect())),
                (28, Mu(k, args)) if args.len() == 1 => Some(Reason::Mu(*k, vec![s(&args[0])])),
                (29, Mu(k, args)) if args.len() == 2 => Some(Reason::Mu(*k, args.iter().map(s).collect())),
                (30, Mu(MuKind::Case, args)) => Some(Reason::Mu(MuKind::Case, args.iter().map(s).collect())),
                _ => None,
            }
        }
        31 => match r {
            Tau(a, b) => match &**b {
                SubL(x, y) if **x == Rho => Some(Reason::sub_l((**a).clone(), (**y).clone())),
                _ => None,
            },
            _ => None,
        },
        32 => match r {
            Tau(a, b) => match &**b {
                SubR(x, y) if **y == Rho => Some(Reason::sub_l((**a).clone(), (**x).clone())),
                _ => None,
            },
            _ => None,
        },
        33 => match r {
            Tau(a, t) => match &**a {
                SubL(x, y) => Some(Reason::tau((**x).clone(), Reason::sub_r((**y).clone(), (**t).clone()))),
                _ => None,
            },
            _ => None,
        },
        34 => match r {
            Tau(a, u) => match &**a {
                SubR(x, y) => Some(Reason::sub_r((**x).clone(), Reason::tau((**y).clone(), (**u).clone()))),
                _ => None,
            },
            _ => None,
        },
        35 => match r {
            Tau(a, c) => match &**a {
                Tau(x, y) => Some(Reason::tau((**x).clone(), Reason::tau((**y).clone(), (**c).clone()))),
                _ => None,
            },
            _ => None,
        },
        36 | 37 => match r {
            Tau(x, rest) => match &**rest {
                Tau(y, v) => {
                    if id == 36 {
                        inverse_hole(x, y, d)?;
                        return Some((**v).clone());
                    }
                    let p = inverse_hole(y, x, d)?;
                    if rs.rule37_literal {
                        // the printed right-hand side: the `u` under the hole
                        return Some(y.subterm_at(&p).ok()?.clone());
                    }
                    Some((**v).clone())
                }
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

/// Rules whose left-hand side can have this head, in ascending id order.
pub(crate) fn candidates(r: &Reason) -> &'static [u8] {
    match r {
        Reason::Sigma(_) => &[1, 2, 23, 24, 25, 26, 27, 28, 29, 30],
        Reason::Tau(..) => &[3, 4, 5, 6, 31, 32, 33, 34, 35, 36, 37],
        Reason::SubL(..) => &[7, 9, 10],
        Reason::SubR(..) => &[8, 11, 12],
        Reason::Mu(..) => &[13, 14, 15, 16, 17, 18, 20, 22],
        Reason::Xi(..) => &[19, 21],
        _ => &[],
    }
}
