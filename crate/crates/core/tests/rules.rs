//! One test per rewrite rule: a representative left-hand side rewrites at
//! the root, in one step, to the expected right-hand side.

use cpath::reason::{parse_reason, Position, Reason};
use cpath::trs::{rewrite_once, rule, RuleSet};

fn p(s: &str) -> Reason {
    parse_reason(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn fires(id: u8, rules: &RuleSet, lhs: &str, rhs: &str) {
    let got = rewrite_once(&p(lhs), id, &Position::root(), rules).unwrap();
    assert_eq!(got, Some(p(rhs)), "rule {id} ({}) on {lhs}", rule(id).name);
}

fn step(id: u8, lhs: &str, rhs: &str) {
    fires(id, &RuleSet::all(), lhs, rhs);
}

#[test]
fn rule_01_sigma_of_rho() {
    step(1, "sigma(rho)", "rho");
}

#[test]
fn rule_02_double_symmetry() {
    step(2, "sigma(sigma(r))", "r");
}

#[test]
fn rule_03_path_then_its_inverse() {
    step(3, "tau(xi[inl](r),xi[inl](sigma(r)))", "xi[inl](rho)");
    step(3, "tau(r,sigma(r))", "rho");
}

#[test]
fn rule_04_inverse_then_path() {
    step(4, "tau(sigma(r),r)", "rho");
    step(4, "tau(mu[fst](sigma(r)),mu[fst](r))", "mu[fst](rho)");
}

#[test]
fn rule_05_right_unit() {
    step(5, "tau(r,rho)", "r");
    step(5, "tau(xi[pair](r,s),xi[pair](rho,s))", "xi[pair](r,s)");
}

#[test]
fn rule_06_left_unit() {
    step(6, "tau(rho,r)", "r");
}

#[test]
fn rule_07_sub_left_unit() {
    step(7, "subL(r,rho)", "r");
}

#[test]
fn rule_08_sub_right_unit() {
    step(8, "subR(rho,r)", "r");
}

#[test]
fn rule_09_sub_left_cancels() {
    step(9, "subL(subL(s,r),sigma(r))", "s");
}

#[test]
fn rule_10_sub_left_cancels_inverse() {
    step(10, "subL(subL(s,sigma(r)),r)", "s");
}

#[test]
fn rule_11_sub_right_cancels() {
    step(11, "subR(s,subR(sigma(s),r))", "r");
}

#[test]
fn rule_12_sub_right_cancels_inverse() {
    step(12, "subR(sigma(s),subR(s,r))", "r");
}

#[test]
fn rule_13_first_of_pair() {
    step(13, "mu[fst](xi[pair](r,s))", "r");
}

#[test]
fn rule_14_second_of_pair() {
    step(14, "mu[snd](xi[pair](r,s))", "s");
}

#[test]
fn rule_15_case_of_left_injection() {
    step(15, "mu[case](xi[inl](r),s,u)", "s");
}

#[test]
fn rule_16_case_of_right_injection() {
    step(16, "mu[case](xi[inr](r),s,u)", "u");
}

#[test]
fn rule_17_application_of_abstraction() {
    step(17, "mu[app](s,xi[lambda](r))", "r(s)");
}

#[test]
fn rule_18_split_of_witness() {
    step(18, "mu[sigElim](xi[eps](r),s)", "s");
}

#[test]
fn rule_19_pair_of_projections() {
    step(19, "xi[pair](mu[fst](r),mu[snd](r))", "r");
}

#[test]
fn rule_20_case_of_injections() {
    step(20, "mu[case](t,xi[inl](r),xi[inr](s))", "t");
}

#[test]
fn rule_21_abstraction_of_application() {
    step(21, "xi[lambda](mu[app](rho,s))", "s");
}

#[test]
fn rule_22_split_rebuilding_witness() {
    step(22, "mu[sigElim](s,xi[eps](r))", "s");
}

#[test]
fn rule_23_inverse_of_composite() {
    step(23, "sigma(tau(r,s))", "tau(sigma(s),sigma(r))");
}

#[test]
fn rule_24_inverse_of_sub_left() {
    step(24, "sigma(subL(r,s))", "subR(sigma(s),sigma(r))");
}

#[test]
fn rule_25_inverse_of_sub_right() {
    step(25, "sigma(subR(r,s))", "subL(sigma(s),sigma(r))");
}

#[test]
fn rule_26_inverse_through_unary_xi() {
    step(26, "sigma(xi[inl](r))", "xi[inl](sigma(r))");
}

#[test]
fn rule_27_inverse_through_pair() {
    step(27, "sigma(xi[pair](s,r))", "xi[pair](sigma(s),sigma(r))");
}

#[test]
fn rule_28_inverse_through_unary_mu() {
    step(28, "sigma(mu[fst](r))", "mu[fst](sigma(r))");
}

#[test]
fn rule_29_inverse_through_binary_mu() {
    step(29, "sigma(mu[app](s,r))", "mu[app](sigma(s),sigma(r))");
}

#[test]
fn rule_30_inverse_through_case() {
    step(30, "sigma(mu[case](r,u,v))", "mu[case](sigma(r),sigma(u),sigma(v))");
}

#[test]
fn rule_31_composite_with_left_sub() {
    step(31, "tau(r,subL(rho,s))", "subL(r,s)");
}

#[test]
fn rule_32_composite_with_right_sub() {
    step(32, "tau(r,subR(s,rho))", "subL(r,s)");
}

#[test]
fn rule_33_sub_left_then_composite() {
    step(33, "tau(subL(r,s),t)", "tau(r,subR(s,t))");
}

#[test]
fn rule_34_sub_right_then_composite() {
    step(34, "tau(subR(s,t),u)", "subR(s,tau(t,u))");
}

#[test]
fn rule_35_associativity() {
    step(35, "tau(tau(t,r),s)", "tau(t,tau(r,s))");
}

#[test]
fn rule_36_cancel_then_continue() {
    step(36, "tau(u,tau(sigma(u),v))", "v");
    step(36, "tau(xi[inr](u),tau(xi[inr](sigma(u)),v))", "v");
}

#[test]
fn rule_37_inverse_then_cancel() {
    // the right-hand side keeps the path's endpoints
    step(37, "tau(sigma(u),tau(u,v))", "v");
    step(37, "tau(mu[snd](sigma(u)),tau(mu[snd](u),v))", "v");
}

#[test]
fn rule_37_as_printed() {
    let literal = RuleSet::all().with_rule37_literal(true);
    fires(37, &literal, "tau(sigma(u),tau(u,v))", "u");
}

#[test]
fn rules_leave_near_misses_alone() {
    for (id, lhs) in [(1, "sigma(r)"), (2, "sigma(r)"), (3, "tau(r,sigma(s))"), (13, "mu[snd](xi[pair](r,s))"), (35, "tau(t,tau(r,s))")] {
        assert_eq!(rewrite_once(&p(lhs), id, &Position::root(), &RuleSet::all()).unwrap(), None, "rule {id} on {lhs}");
    }
}
