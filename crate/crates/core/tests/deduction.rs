use cpath::deduction::*;
use cpath::reason::parse_reason;

fn t(s: &str) -> Term {
    parse_term(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn j(s: &str) -> Judgment {
    parse_judgment(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn env() -> Env {
    let a = parse_ty("A").unwrap();
    Env::new()
        .with_term("a", a.clone())
        .unwrap()
        .with_term("b", a.clone())
        .unwrap()
        .with_term("e", parse_ty("Id_A(a,b)").unwrap())
        .unwrap()
        .with_reason("r", t("a"), t("b"), a)
        .unwrap()
}

#[test]
fn id_beta_between_checked_derivations() {
    let env = env();
    let sym = |hyp: &str| {
        Derivation::new(
            "id-intro",
            j(&format!("(sigma({hyp}))(b,a) : Id_A(b,a)")),
            vec![Derivation::new(
                "symm",
                j(&format!("b =_sigma({hyp}) a : A")),
                vec![Derivation::hyp(hyp, j(&format!("a =_{hyp} b : A")))],
            )],
        )
    };
    let major = Derivation::new("id-intro", j("r(a,b) : Id_A(a,b)"), vec![Derivation::hyp("r", j("a =_r b : A"))]);
    let before = Derivation::new("id-elim", j("J(r(a,b),t.(sigma(t))(b,a)) : Id_A(b,a)"), vec![major, sym("t")])
        .discharging(["t"]);
    assert_eq!(check_derivation(&before, &env), Ok(()));

    let Judgment::Member(term, _) = &before.conclusion else { unreachable!() };
    let out = id_beta(term).expect("a J on a canonical element");
    assert_eq!(out, t("(sigma(r))(b,a)"));
    let after = sym("r");
    assert_eq!(after.conclusion, Judgment::Member(out, parse_ty("Id_A(b,a)").unwrap()));
    assert_eq!(check_derivation(&after, &env), Ok(()));
}

#[test]
fn id_eta_between_checked_derivations() {
    let env = env();
    let minor = Derivation::new("id-intro", j("t(a,b) : Id_A(a,b)"), vec![Derivation::hyp("t", j("a =_t b : A"))]);
    let before = Derivation::new(
        "id-elim",
        j("J(e,t.t(a,b)) : Id_A(a,b)"),
        vec![Derivation::leaf("typing", j("e : Id_A(a,b)")), minor],
    )
    .discharging(["t"]);
    assert_eq!(check_derivation(&before, &env), Ok(()));
    let Judgment::Member(term, _) = &before.conclusion else { unreachable!() };
    assert_eq!(id_eta(term), Some(t("e")));
    assert_eq!(check_derivation(&Derivation::leaf("typing", j("e : Id_A(a,b)")), &env), Ok(()));
}

#[test]
fn diagnostics_name_the_failing_node() {
    let env = env();
    // the middle endpoints of a transitivity step disagree
    let bad = Derivation::new(
        "trans",
        j("a =_tau(r,r) b : A"),
        vec![Derivation::hyp("r", j("a =_r b : A")), Derivation::hyp("r", j("a =_r b : A"))],
    );
    let errs = check_derivation(&bad, &env).unwrap_err();
    assert_eq!(errs[0].kind, DiagnosticKind::EndpointMismatch);

    let open = Derivation::new("id-intro", j("q(a,b) : Id_A(a,b)"), vec![Derivation::hyp("q", j("a =_q b : A"))]);
    let errs = check_derivation(&open, &env).unwrap_err();
    assert!(errs.iter().any(|d| d.kind == DiagnosticKind::UndischargedAssumption), "{errs:?}");
}

#[test]
fn derivations_round_trip_through_json() {
    let (_, d) = cpath::groupoid::build_cmp();
    let text = d.to_json();
    assert_eq!(Derivation::from_json(&text).unwrap(), d);
}

#[test]
fn endpoints_follow_the_reason() {
    let env = env();
    let r = parse_reason("tau(r,sigma(r))").unwrap();
    assert_eq!(target_from(&r, &t("a"), &env).unwrap(), Some(t("a")));
    assert_eq!(endpoints_of(&parse_reason("sigma(r)").unwrap(), &env).unwrap(), Some((t("b"), t("a"), parse_ty("A").unwrap())));
    let inl = parse_reason("xi[inl](r)").unwrap();
    assert_eq!(target_from(&inl, &t("inl(a)"), &env).unwrap(), Some(t("inl(b)")));
    assert!(matches!(
        target_from(&parse_reason("q").unwrap(), &t("a"), &env),
        Err(EndpointError::UnboundReasonVariable(_))
    ));
}

#[test]
fn reduction_paths_read_back_to_their_ends() {
    let term = paths::three_paths_term();
    let env = paths::three_paths_env();
    for s in [PathStrategy::LeftmostOutermost, PathStrategy::LeftmostInnermost] {
        let (nf, r) = path_of_reduction(&term, &s, DEFAULT_PATH_FUEL).unwrap();
        assert_eq!(target_from(&r, &term, &env).unwrap(), Some(nf.clone()));
        // a step read backwards needs its recorded endpoints
        let red = reduction(&term, &s, DEFAULT_PATH_FUEL).unwrap();
        let env = red.register(&env, &parse_ty("B").unwrap()).unwrap();
        assert_eq!(source_to(&r, &nf, &env).unwrap().map(|s| s.def_eq(&term)), Some(true));
    }
}

#[test]
fn sampled_reasons_keep_their_endpoints_under_most_steps() {
    use rand::SeedableRng;
    let gen = TypedReasonGen::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let rules = cpath::trs::RuleSet::all();
    let mut checked = 0;
    for _ in 0..100 {
        let s = gen.sample(&mut rng);
        assert_eq!(check(&s.source, &s.ty, &gen.env), Ok(()));
        checked += cpath::trs::one_step_reducts(&s.reason, &rules).len();
        for v in check_preservation(&s, &gen.env, &rules) {
            // the projection and case rules forget a component, and xmr
            // fires whatever the argument is; nothing else may move the ends
            assert!(matches!(v.rule, 13..=16 | 18 | 21), "{v:?}");
        }
    }
    assert!(checked > 0);
}
