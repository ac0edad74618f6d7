//! The derived operations on identity proofs (inverse, composition), the
//! level-2 witnesses of the groupoid laws, and the search for two distinct
//! normal proofs of the same equation.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde_json::{json, Value};

use crate::deduction::{
    check_derivation, parse_term, parse_ty, reduction, target_from, Derivation, Env, Judgment, PathStrategy, Term, Ty,
    DEFAULT_PATH_FUEL,
};
use crate::deduction::paths::{three_paths_env, three_paths_scripts, three_paths_term};
use crate::reason::Reason;
use crate::trs::{is_normal, normalize, RuleSet, Strategy, DEFAULT_FUEL};

fn term(s: &str) -> Term {
    parse_term(s).expect("fixed term")
}

fn ty(s: &str) -> Ty {
    parse_ty(s).expect("fixed type")
}

fn j(a: Term, ty: Ty) -> Judgment {
    Judgment::Member(a, ty)
}

fn eqj(a: &str, s: &str, b: &str, ty: &str) -> Judgment {
    Judgment::Eq(term(a), crate::reason::parse_reason(s).expect("fixed reason"), term(b), self::ty(ty))
}

/// `inv = λx.λy.λc.J(c(x,y), t.(σ(t))(y,x)) : Πx:A.Πy:A.Id_A(x,y) → Id_A(y,x)`
pub fn build_inv() -> (Term, Derivation) {
    let inv = term("λx.λy.λc.J(c(x,y),t.(sigma(t))(y,x))");
    let major = Derivation::new("id-intro", j(term("c(x,y)"), ty("Id_A(x,y)")), vec![Derivation::hyp("c", eqj("x", "c", "y", "A"))]);
    let minor = Derivation::new(
        "id-intro",
        j(term("(sigma(t))(y,x)"), ty("Id_A(y,x)")),
        vec![Derivation::new("symm", eqj("y", "sigma(t)", "x", "A"), vec![Derivation::hyp("t", eqj("x", "t", "y", "A"))])],
    );
    let elim = Derivation::new("id-elim", j(term("J(c(x,y),t.(sigma(t))(y,x))"), ty("Id_A(y,x)")), vec![major, minor])
        .discharging(["t"]);
    let lc = Derivation::new(
        "pi-intro",
        j(term("λc.J(c(x,y),t.(sigma(t))(y,x))"), ty("Id_A(x,y) -> Id_A(y,x)")),
        vec![elim],
    )
    .discharging(["c"]);
    let ly = Derivation::new(
        "pi-intro",
        j(term("λy.λc.J(c(x,y),t.(sigma(t))(y,x))"), ty("Pi y:A. Id_A(x,y) -> Id_A(y,x)")),
        vec![lc],
    );
    let lx = Derivation::new("pi-intro", j(inv.clone(), inv_type()), vec![ly]);
    (inv, lx)
}

pub fn inv_type() -> Ty {
    ty("Pi x:A. Pi y:A. Id_A(x,y) -> Id_A(y,x)")
}

/// `cmp = λx.λy.λz.λw.λs.J(w(x,y), t.J(s(y,z), u.(τ(t,u))(x,z)))`
pub fn build_cmp() -> (Term, Derivation) {
    let inner_j = "J(s(y,z),u.(tau(t,u))(x,z))";
    let outer_j = format!("J(w(x,y),t.{inner_j})");
    let cmp = term(&format!("λx.λy.λz.λw.λs.{outer_j}"));
    let composed = Derivation::new(
        "id-intro",
        j(term("(tau(t,u))(x,z)"), ty("Id_A(x,z)")),
        vec![Derivation::new(
            "trans",
            eqj("x", "tau(t,u)", "z", "A"),
            vec![Derivation::hyp("t", eqj("x", "t", "y", "A")), Derivation::hyp("u", eqj("y", "u", "z", "A"))],
        )],
    );
    let inner = Derivation::new(
        "id-elim",
        j(term(inner_j), ty("Id_A(x,z)")),
        vec![
            Derivation::new("id-intro", j(term("s(y,z)"), ty("Id_A(y,z)")), vec![Derivation::hyp("s", eqj("y", "s", "z", "A"))]),
            composed,
        ],
    )
    .discharging(["u"]);
    let outer = Derivation::new(
        "id-elim",
        j(term(&outer_j), ty("Id_A(x,z)")),
        vec![
            Derivation::new("id-intro", j(term("w(x,y)"), ty("Id_A(x,y)")), vec![Derivation::hyp("w", eqj("x", "w", "y", "A"))]),
            inner,
        ],
    )
    .discharging(["t"]);
    let mut d = outer;
    let mut body = outer_j.clone();
    let binders: [(&str, &str); 5] = [
        ("s", "Id_A(y,z) -> Id_A(x,z)"),
        ("w", "Id_A(x,y) -> Id_A(y,z) -> Id_A(x,z)"),
        ("z", "Pi z:A. Id_A(x,y) -> Id_A(y,z) -> Id_A(x,z)"),
        ("y", "Pi y:A. Pi z:A. Id_A(x,y) -> Id_A(y,z) -> Id_A(x,z)"),
        ("x", "Pi x:A. Pi y:A. Pi z:A. Id_A(x,y) -> Id_A(y,z) -> Id_A(x,z)"),
    ];
    for (x, t) in binders {
        body = format!("λ{x}.{body}");
        d = Derivation::new("pi-intro", j(term(&body), ty(t)), vec![d]);
        if x == "s" || x == "w" {
            d = d.discharging([x]);
        }
    }
    (cmp, d)
}

pub fn cmp_type() -> Ty {
    ty("Pi x:A. Pi y:A. Pi z:A. Id_A(x,y) -> Id_A(y,z) -> Id_A(x,z)")
}

/// Normalizes the reasons inside canonical elements, bottom-up.
pub fn normalize_witnesses(t: &Term) -> Term {
    let mut out = t.clone();
    for p in t.positions().into_iter().rev() {
        if let Ok(Term::PathWitness(s, a, b)) = out.subterm_at(&p) {
            let nf = normalize(s, Strategy::LeftmostInnermost, DEFAULT_FUEL, &RuleSet::all())
                .map(|tr| tr.last().clone())
                .unwrap_or_else(|_| s.clone());
            let w = Term::witness(nf, (**a).clone(), (**b).clone());
            out = out.replace_at(&p, w).expect("own position");
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    Assoc,
    UnitL,
    UnitR,
    InvL,
    InvR,
    SrExample,
    SsExample,
}

impl Law {
    pub const ALL: [Law; 7] = [Law::Assoc, Law::UnitL, Law::UnitR, Law::InvL, Law::InvR, Law::SrExample, Law::SsExample];

    pub fn name(self) -> &'static str {
        match self {
            Law::Assoc => "assoc",
            Law::UnitL => "unitL",
            Law::UnitR => "unitR",
            Law::InvL => "invL",
            Law::InvR => "invR",
            Law::SrExample => "sr-example",
            Law::SsExample => "ss-example",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub law: Law,
    pub inhabited_type: Ty,
    pub witness: Term,
    pub derivation: Derivation,
    pub reason_used: String,
    /// Context the derivation is checked in.
    pub env: Env,
}

impl WitnessReport {
    pub fn check(&self) -> Result<(), Vec<crate::deduction::Diagnostic>> {
        check_derivation(&self.derivation, &self.env)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "law": self.law.name(),
            "inhabitedType": self.inhabited_type.to_string(),
            "witness": self.witness.to_string(),
            "reasonUsed": self.reason_used,
            "checked": self.check().is_ok(),
            "derivation": self.derivation.to_json(),
        })
    }
}

/// Derivation of `src =_s tgt : ty` for reasons built from variables, ρ,
/// σ and τ.
fn derive_eq(s: &Reason, src: &Term, ty: &Ty, env: &Env) -> Option<Derivation> {
    let tgt = target_from(s, src, env).ok()??;
    let concl = Judgment::Eq(src.clone(), s.clone(), tgt.clone(), ty.clone());
    Some(match s {
        Reason::Var(v) => Derivation::hyp(v.clone(), concl),
        Reason::Rho => Derivation::leaf("refl", concl),
        Reason::Sigma(r) => Derivation::new("symm", concl, vec![derive_eq(r, &tgt, ty, env)?]),
        Reason::Tau(a, b) => {
            let mid = target_from(a, src, env).ok()??;
            Derivation::new("trans", concl, vec![derive_eq(a, src, ty, env)?, derive_eq(b, &mid, ty, env)?])
        }
        _ => return None,
    })
}

fn report(law: Law, rule: &str, reasons: &[(&str, &str, &str)], lhs: &str, rhs: &str, ends: (&str, &str)) -> WitnessReport {
    let a = ty("A");
    let mut env = Env::new();
    for x in ["x", "y", "z", "w"] {
        env = env.with_term(x, a.clone()).expect("distinct");
    }
    for (r, l, rr) in reasons {
        env = env.with_reason(*r, term(l), term(rr), a.clone()).expect("distinct");
    }
    let (src, tgt) = (term(ends.0), term(ends.1));
    let base = Ty::id(a.clone(), src.clone(), tgt.clone());
    let (p, q) = (
        crate::reason::parse_reason(lhs).expect("fixed"),
        crate::reason::parse_reason(rhs).expect("fixed"),
    );
    let wp = Term::witness(p.clone(), src.clone(), tgt.clone());
    let wq = Term::witness(q.clone(), src.clone(), tgt.clone());
    let inhabited = Ty::id(base.clone(), wp.clone(), wq.clone());
    let env = env.with_reason(rule, wp.clone(), wq.clone(), base.clone()).expect("rule names are not variables");
    let witness = Term::witness(Reason::var(rule), wp.clone(), wq.clone());
    let lower = derive_eq(&p, &src, &a, &env).expect("well-formed law");
    let typed = Derivation::new("id-intro", Judgment::Member(wp.clone(), base.clone()), vec![lower]);
    let step = Derivation::new("rewrite", Judgment::Eq(wp, Reason::var(rule), wq, base), vec![typed]);
    let derivation = Derivation::new("id-intro", Judgment::Member(witness.clone(), inhabited.clone()), vec![step]);
    WitnessReport {
        law,
        inhabited_type: inhabited,
        witness,
        derivation,
        reason_used: rule.to_string(),
        env,
    }
}

/// One level-2 inhabitant for each law, licensed by one rewrite step.
pub fn groupoid_witnesses() -> Vec<WitnessReport> {
    vec![
        report(
            Law::Assoc,
            "tt",
            &[("t", "x", "y"), ("r", "y", "w"), ("s", "w", "z")],
            "tau(tau(t,r),s)",
            "tau(t,tau(r,s))",
            ("x", "z"),
        ),
        report(Law::UnitL, "tlr", &[("r", "x", "y")], "tau(rho,r)", "r", ("x", "y")),
        report(Law::UnitR, "trr", &[("r", "x", "y")], "tau(r,rho)", "r", ("x", "y")),
        report(Law::InvL, "tsr", &[("r", "x", "y")], "tau(sigma(r),r)", "rho", ("y", "y")),
        report(Law::InvR, "tr", &[("r", "x", "y")], "tau(r,sigma(r))", "rho", ("x", "x")),
        report(Law::SrExample, "sr", &[], "sigma(rho)", "rho", ("x", "x")),
        report(Law::SsExample, "ss", &[("r", "x", "y")], "sigma(sigma(r))", "r", ("x", "y")),
    ]
}

/// An atomic step with its endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphabetEntry {
    pub reason: Reason,
    pub left: Term,
    pub right: Term,
    pub ty: Ty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UipPair {
    pub first: Reason,
    pub second: Reason,
    pub left: Term,
    pub right: Term,
    /// Both normal, distinct, and both read from `left` to `right`.
    pub verified: bool,
}

/// Context in which the alphabet's atoms have their endpoints.
pub fn alphabet_env(alphabet: &[AlphabetEntry]) -> Env {
    let mut env = Env::new();
    for e in alphabet {
        env = match &e.reason {
            Reason::Var(v) if env.reason(v).is_none() => env.with_reason(v.clone(), e.left.clone(), e.right.clone(), e.ty.clone()),
            Reason::Axiom(..) => env.with_step(e.reason.clone(), e.left.clone(), e.right.clone(), e.ty.clone()),
            _ => Ok(env),
        }
        .unwrap_or_else(|_| panic!("alphabet binds '{}' twice", e.reason));
    }
    env
}

/// Every σ/τ expression over the alphabet up to `max_size`, normalized and
/// grouped by endpoints (compared up to bound names).
pub fn normal_classes(alphabet: &[AlphabetEntry], max_size: usize) -> BTreeMap<(Term, Term), BTreeSet<Reason>> {
    // by_size[n]: distinct (reason, left, right) of size n
    let mut by_size: Vec<Vec<(Reason, Term, Term)>> = vec![Vec::new(); max_size + 1];
    let mut seen: HashSet<(Reason, Term, Term)> = HashSet::new();
    let mut push = |n: usize, e: (Reason, Term, Term), by_size: &mut Vec<Vec<(Reason, Term, Term)>>| {
        if seen.insert(e.clone()) {
            by_size[n].push(e);
        }
    };
    if max_size >= 1 {
        for a in alphabet {
            push(1, (a.reason.clone(), a.left.canonical(), a.right.canonical()), &mut by_size);
        }
    }
    for n in 2..=max_size {
        let mut fresh = Vec::new();
        for (r, l, rr) in &by_size[n - 1] {
            fresh.push((Reason::sigma(r.clone()), rr.clone(), l.clone()));
        }
        for k in 1..n - 1 {
            for (r1, l1, m1) in &by_size[k] {
                for (r2, m2, rr2) in &by_size[n - 1 - k] {
                    if m1 == m2 {
                        fresh.push((Reason::tau(r1.clone(), r2.clone()), l1.clone(), rr2.clone()));
                    }
                }
            }
        }
        for e in fresh {
            push(n, e, &mut by_size);
        }
    }
    let all = RuleSet::all();
    let mut classes: BTreeMap<(Term, Term), BTreeSet<Reason>> = BTreeMap::new();
    for (r, l, rr) in by_size.into_iter().flatten() {
        let nf = match normalize(&r, Strategy::LeftmostInnermost, DEFAULT_FUEL, &all) {
            Ok(tr) => tr.last().clone(),
            Err(_) => continue,
        };
        classes.entry((l, rr)).or_default().insert(nf);
    }
    classes
}

fn pick(classes: &BTreeMap<(Term, Term), BTreeSet<Reason>>, filter: impl Fn(&Term, &Term) -> bool) -> Option<(Reason, Reason, Term, Term)> {
    let key = |r: &Reason| (r.size(), r.to_string());
    let mut best: Option<((usize, String, String), (Reason, Reason, Term, Term))> = None;
    for ((l, r), nfs) in classes {
        if !filter(l, r) || nfs.len() < 2 {
            continue;
        }
        let mut sorted: Vec<&Reason> = nfs.iter().collect();
        sorted.sort_by_key(|r| key(r));
        let (a, b) = (sorted[0], sorted[1]);
        let rank = (a.size() + b.size(), a.to_string(), b.to_string());
        if best.as_ref().is_none_or(|(k, _)| rank < *k) {
            best = Some((rank, (a.clone(), b.clone(), l.clone(), r.clone())));
        }
    }
    best.map(|(_, v)| v)
}

/// An alphabet endpoint with the given canonical form, keeping its names.
fn representative(alphabet: &[AlphabetEntry], canon: &Term) -> Term {
    alphabet
        .iter()
        .flat_map(|e| [&e.left, &e.right])
        .find(|t| t.canonical() == *canon)
        .cloned()
        .unwrap_or_else(|| canon.clone())
}

fn verify(alphabet: &[AlphabetEntry], first: &Reason, second: &Reason, left: &Term, right: &Term) -> bool {
    let all = RuleSet::all();
    let env = alphabet_env(alphabet);
    let reads = |s: &Reason| {
        target_from(s, left, &env)
            .ok()
            .flatten()
            .is_some_and(|t| t.alpha_eq(right))
    };
    first != second && is_normal(first, &all) && is_normal(second, &all) && reads(first) && reads(second)
}

/// Two distinct normal reasons with the same endpoints, smallest first
/// (total size, then printed form), or `None` when every class has a single
/// normal form.
pub fn uip_search(alphabet: &[AlphabetEntry], max_size: usize) -> Option<UipPair> {
    let classes = normal_classes(alphabet, max_size);
    let (first, second, left, right) = pick(&classes, |_, _| true)?;
    let (left, right) = (representative(alphabet, &left), representative(alphabet, &right));
    let verified = verify(alphabet, &first, &second, &left, &right);
    Some(UipPair {
        first,
        second,
        left,
        right,
        verified,
    })
}

/// As [`uip_search`], restricted to proofs of `left = right`.
pub fn uip_search_between(alphabet: &[AlphabetEntry], max_size: usize, left: &Term, right: &Term) -> Option<UipPair> {
    let classes = normal_classes(alphabet, max_size);
    let (l, r) = (left.canonical(), right.canonical());
    let (first, second, _, _) = pick(&classes, |a, b| *a == l && *b == r)?;
    let (left, right) = (left.clone(), right.clone());
    let verified = verify(alphabet, &first, &second, &left, &right);
    Some(UipPair {
        first,
        second,
        left,
        right,
        verified,
    })
}

/// One reduction row of the three-paths example.
#[derive(Debug, Clone, PartialEq)]
pub struct PathRow {
    pub reason: Reason,
    pub normal: Reason,
    pub left: Term,
    pub right: Term,
    /// The row's endpoints as read back from its reason.
    pub endpoints_checked: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThreePaths {
    pub rows: Vec<PathRow>,
    pub distinct_normal_forms: usize,
    pub pair: Option<UipPair>,
}

pub fn three_paths_alphabet() -> Vec<AlphabetEntry> {
    let t = three_paths_term();
    let mut out: Vec<AlphabetEntry> = Vec::new();
    for script in three_paths_scripts() {
        let red = reduction(&t, &PathStrategy::Scripted(script), DEFAULT_PATH_FUEL).expect("fixed scripts apply");
        for s in red.steps {
            let e = AlphabetEntry {
                reason: s.atom(),
                left: s.before,
                right: s.after,
                ty: Ty::atom("B"),
            };
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    out
}

/// Reduces the example term along each row, normalizes the reasons, and
/// looks for two distinct normal proofs between the term and its normal
/// form.
pub fn three_paths(max_size: usize) -> ThreePaths {
    let t = three_paths_term();
    let env = three_paths_env();
    let all = RuleSet::all();
    let mut rows = Vec::new();
    for script in three_paths_scripts() {
        let red = reduction(&t, &PathStrategy::Scripted(script), DEFAULT_PATH_FUEL).expect("fixed scripts apply");
        let normal = normalize(&red.reason, Strategy::LeftmostInnermost, DEFAULT_FUEL, &all)
            .map(|tr| tr.last().clone())
            .expect("reasons normalize");
        let checked = target_from(&red.reason, &t, &env).ok().flatten().is_some_and(|x| x.alpha_eq(&red.term))
            && target_from(&normal, &t, &env).ok().flatten().is_some_and(|x| x.alpha_eq(&red.term));
        rows.push(PathRow {
            reason: red.reason,
            normal,
            left: t.clone(),
            right: red.term,
            endpoints_checked: checked,
        });
    }
    let distinct: BTreeSet<&Reason> = rows.iter().map(|r| &r.normal).collect();
    let distinct_normal_forms = distinct.len();
    let alphabet = three_paths_alphabet();
    let pair = uip_search_between(&alphabet, max_size, &t, &rows[0].right);
    ThreePaths {
        rows,
        distinct_normal_forms,
        pair,
    }
}

impl ThreePaths {
    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows.iter().map(|r| json!({
                "reason": r.reason.to_string(),
                "normal": r.normal.to_string(),
                "left": r.left.to_string(),
                "right": r.right.to_string(),
                "endpointsChecked": r.endpoints_checked,
            })).collect::<Vec<_>>(),
            "distinctNormalForms": self.distinct_normal_forms,
            "pair": self.pair.as_ref().map(UipPair::to_json),
        })
    }
}

impl UipPair {
    pub fn to_json(&self) -> Value {
        json!({
            "first": self.first.to_string(),
            "second": self.second.to_string(),
            "left": self.left.to_string(),
            "right": self.right.to_string(),
            "verified": self.verified,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::id_beta;
    use crate::reason::parse_reason;

    fn r(s: &str) -> Reason {
        parse_reason(s).unwrap()
    }

    #[test]
    fn inverse_checks_at_its_type() {
        let (inv, d) = build_inv();
        assert_eq!(check_derivation(&d, &Env::new()), Ok(()));
        assert_eq!(d.conclusion, Judgment::Member(inv.clone(), inv_type()));
        let env = Env::new().with_term("a", ty("A")).unwrap();
        let applied = Term::app(Term::app(Term::app(inv, term("a")), term("a")), term("rho(a,a)"));
        // three β-steps, then the identity β-step
        let body = applied.normal_form();
        assert_eq!(body, term("(sigma(rho))(a,a)"));
        assert_eq!(normalize_witnesses(&body), term("rho(a,a)"));
        let _ = env;
    }

    #[test]
    fn inverse_of_a_symmetric_proof() {
        let (inv, _) = build_inv();
        let applied = Term::app(Term::app(Term::app(inv, term("a")), term("b")), term("(sigma(r))(a,b)"));
        assert_eq!(normalize_witnesses(&applied.normal_form()), term("r(b,a)"));
    }

    #[test]
    fn composition_checks_at_its_type() {
        let (cmp, d) = build_cmp();
        assert_eq!(check_derivation(&d, &Env::new()), Ok(()));
        assert_eq!(d.conclusion, Judgment::Member(cmp.clone(), cmp_type()));
        let applied = ["x", "y", "z", "r(x,y)", "s(y,z)"]
            .iter()
            .fold(cmp.clone(), |f, a| Term::app(f, term(a)));
        let mut t = applied;
        for _ in 0..5 {
            t = crate::deduction::term::leftmost_outermost_step(&t, &[crate::reason::AxiomKind::Beta])
                .expect("β-redex")
                .2;
        }
        let once = id_beta(&t).unwrap();
        let twice = id_beta(&once).unwrap();
        assert_eq!(twice, term("(tau(r,s))(x,z)"));
        let with_rho = ["x", "x", "z", "rho(x,x)", "r(x,z)"]
            .iter()
            .fold(cmp, |f, a| Term::app(f, term(a)));
        assert_eq!(normalize_witnesses(&with_rho.normal_form()), term("r(x,z)"));
    }

    #[test]
    fn seven_checked_witnesses() {
        let reports = groupoid_witnesses();
        assert_eq!(reports.len(), 7);
        for rep in &reports {
            assert_eq!(rep.check(), Ok(()), "{}", rep.law.name());
            assert_eq!(rep.derivation.conclusion, Judgment::Member(rep.witness.clone(), rep.inhabited_type.clone()));
            crate::deduction::check_ty(&rep.inhabited_type, &rep.env).unwrap();
        }
        assert_eq!(reports[0].witness, term("tt((tau(tau(t,r),s))(x,z),(tau(t,tau(r,s)))(x,z))"));
        assert_eq!(reports[5].inhabited_type, ty("Id_{Id_A(x,x)}((sigma(rho))(x,x),rho(x,x))"));
    }

    #[test]
    fn uip_on_small_alphabets() {
        let a = ty("A");
        let rho = vec![AlphabetEntry { reason: Reason::Rho, left: term("x"), right: term("x"), ty: a.clone() }];
        for n in 1..=5 {
            assert_eq!(uip_search(&rho, n), None);
        }
        let two = vec![
            AlphabetEntry { reason: r("beta@[]"), left: term("a"), right: term("b"), ty: a.clone() },
            AlphabetEntry { reason: r("eta@[]"), left: term("a"), right: term("b"), ty: a },
        ];
        let pair = uip_search(&two, 1).unwrap();
        assert_eq!((pair.first, pair.second), (r("beta@[]"), r("eta@[]")));
        assert!(pair.verified);
    }

    #[test]
    fn three_rows_of_the_example() {
        let report = three_paths(7);
        assert_eq!(report.rows.len(), 3);
        for row in &report.rows {
            assert!(row.endpoints_checked);
            assert_eq!(row.right, term("z v"));
        }
        let pair = report.pair.clone().expect("two normal proofs");
        assert!(pair.verified);
        assert_eq!((pair.left, pair.right), (three_paths_term(), term("z v")));
        eprintln!("{}", report.to_json());
    }
}
