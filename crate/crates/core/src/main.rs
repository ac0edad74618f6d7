use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cpath::deduction::parse_term;
use cpath::groupoid::{groupoid_witnesses, three_paths, uip_search, AlphabetEntry};
use cpath::reason::{parse_reason, AxiomKind, Position, Reason};
use cpath::trs::{check_local_confluence, completion_probe, normalize, rule, RuleSet, Strategy, Trace, DEFAULT_FUEL};

#[derive(Parser)]
#[command(name = "cpath", version, about = "Normalize computational paths and run the groupoid demos")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Use rule 37 exactly as printed (τ(σ(r),τ(r,s)) ▷ u) instead of the endpoint-correct RHS.
    #[arg(long, global = true)]
    rule37_literal: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rewrite a reason to normal form.
    Normalize {
        expr: String,
        #[command(flatten)]
        run: RunOpts,
        /// Print every step.
        #[arg(long)]
        trace: bool,
        /// Write the trace as a Graphviz graph.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Exit 0 if both reasons have the same normal form, 1 otherwise.
    Equal {
        a: String,
        b: String,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Critical pairs of a rule subset and whether they join.
    Confluence {
        #[arg(long, default_value = "1-37")]
        rules: String,
        #[arg(long, default_value_t = 2)]
        context_depth: usize,
        /// Failures to print.
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Orient the unjoinable critical pairs into candidate rules.
    Complete {
        #[arg(long, default_value = "1-35")]
        rules: String,
        #[arg(long, default_value_t = 2)]
        context_depth: usize,
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Built-in examples.
    Demo {
        which: Demo,
        /// Enumeration bound for uip and three-paths.
        #[arg(long, default_value_t = 7)]
        max_size: usize,
    },
    /// Parse and pretty-print a reason.
    Parse { expr: String },
}

#[derive(Args)]
struct RunOpts {
    #[arg(long, value_enum, default_value_t = StrategyArg::Li)]
    strategy: StrategyArg,
    /// Required with --strategy random.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_FUEL)]
    fuel: usize,
    #[arg(long, default_value = "1-37")]
    rules: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Li,
    Lo,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    Groupoid,
    Uip,
    ThreePaths,
}

/// Exit code plus message for stderr.
struct Failure(u8, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn rules_of(spec: &str, cli: &Cli) -> Result<RuleSet, Failure> {
    let set: RuleSet = spec.parse().map_err(|e| usage(format!("bad rule list: {e}")))?;
    Ok(set.with_rule37_literal(cli.rule37_literal))
}

fn reason_of(text: &str) -> Result<Reason, Failure> {
    parse_reason(text).map_err(|e| usage(format!("{text}: {e}")))
}

impl RunOpts {
    fn strategy(&self) -> Result<Strategy, Failure> {
        match (self.strategy, self.seed) {
            (StrategyArg::Li, _) => Ok(Strategy::LeftmostInnermost),
            (StrategyArg::Lo, _) => Ok(Strategy::LeftmostOutermost),
            (StrategyArg::Random, Some(seed)) => Ok(Strategy::Random(seed)),
            (StrategyArg::Random, None) => Err(usage("--strategy random needs --seed")),
        }
    }

    fn normalize(&self, r: &Reason, rules: &RuleSet) -> Result<Trace, Failure> {
        if self.fuel == 0 {
            return Err(usage("--fuel must be positive"));
        }
        normalize(r, self.strategy()?, self.fuel, rules).map_err(|e| Failure(1, e.to_string()))
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.cmd {
        Cmd::Normalize { expr, run, trace, dot } => {
            let rules = rules_of(&run.rules, cli)?;
            let t = run.normalize(&reason_of(expr)?, &rules)?;
            if let Some(path) = dot {
                std::fs::write(path, t.to_dot()).map_err(|e| Failure(1, format!("{}: {e}", path.display())))?;
            }
            if cli.json {
                print_json(&t.to_json());
            } else {
                if *trace {
                    print_trace(&t);
                }
                println!("{}", t.last());
            }
            Ok(0)
        }
        Cmd::Equal { a, b, run } => {
            let rules = rules_of(&run.rules, cli)?;
            let (ta, tb) = (run.normalize(&reason_of(a)?, &rules)?, run.normalize(&reason_of(b)?, &rules)?);
            let same = ta.last() == tb.last();
            if cli.json {
                print_json(&json!({ "equal": same, "normalA": ta.last().to_string(), "normalB": tb.last().to_string() }));
            } else {
                println!("{}\n{}\n{}", ta.last(), tb.last(), if same { "equal" } else { "different" });
            }
            Ok(if same { 0 } else { 1 })
        }
        Cmd::Confluence { rules, context_depth, limit } => {
            let set = rules_of(rules, cli)?;
            let report = check_local_confluence(&set, *context_depth);
            let shown = &report.failures[..report.failures.len().min(*limit)];
            if cli.json {
                print_json(&json!({
                    "pairsChecked": report.pairs_checked,
                    "allJoinable": report.all_joinable,
                    "failureCount": report.failures.len(),
                    "failures": shown.iter().map(|c| json!({
                        "ruleA": c.rule_a,
                        "ruleB": c.rule_b,
                        "position": c.position,
                        "peak": c.peak.to_string(),
                        "left": c.left.to_string(),
                        "right": c.right.to_string(),
                        "leftNormal": c.left_normal.to_string(),
                        "rightNormal": c.right_normal.to_string(),
                    })).collect::<Vec<_>>(),
                }));
            } else {
                println!(
                    "{} critical pairs, {} not joinable; all joinable: {}",
                    report.pairs_checked,
                    report.failures.len(),
                    report.all_joinable
                );
                for c in shown {
                    println!(
                        "  {} / {} at {}: {}\n    ->* {}\n    ->* {}",
                        rule(c.rule_a).name,
                        rule(c.rule_b).name,
                        c.position,
                        c.peak,
                        c.left_normal,
                        c.right_normal
                    );
                }
            }
            Ok(0)
        }
        Cmd::Complete { rules, context_depth, limit } => {
            let set = rules_of(rules, cli)?;
            let found = completion_probe(&set, *context_depth);
            let shown = &found[..found.len().min(*limit)];
            if cli.json {
                print_json(&json!({
                    "count": found.len(),
                    "orientations": shown.iter().map(|o| json!({
                        "lhs": o.lhs.to_string(),
                        "rhs": o.rhs.to_string(),
                        "ruleA": o.rule_a,
                        "ruleB": o.rule_b,
                        "peak": o.peak.to_string(),
                    })).collect::<Vec<_>>(),
                }));
            } else {
                println!("{} candidate rules", found.len());
                for o in shown {
                    println!("  {} ▷ {}    (from {} / {})", o.lhs, o.rhs, rule(o.rule_a).name, rule(o.rule_b).name);
                }
            }
            Ok(0)
        }
        Cmd::Demo { which, max_size } => {
            if *max_size == 0 {
                return Err(usage("--max-size must be at least 1"));
            }
            demo(*which, *max_size, cli.json)
        }
        Cmd::Parse { expr } => {
            let r = reason_of(expr)?;
            if cli.json {
                print_json(&json!({ "reason": r.to_string(), "size": r.size(), "depth": r.depth() }));
            } else {
                println!("{r}");
            }
            Ok(0)
        }
    }
}

fn print_trace(t: &Trace) {
    println!("  {}", t.initial);
    for s in &t.steps {
        println!("  ▷ {:<5} @{:<8} {}", rule(s.rule).name, s.position.to_string(), s.result);
    }
}

fn demo(which: Demo, max_size: usize, as_json: bool) -> Result<u8, Failure> {
    match which {
        Demo::Groupoid => {
            let reports = groupoid_witnesses();
            let mut ok = true;
            for r in &reports {
                let checked = r.check();
                ok &= checked.is_ok();
                if !as_json {
                    println!("{:<11} {}", r.law.name(), if checked.is_ok() { "checked" } else { "REJECTED" });
                    println!("  {} : {}", r.witness, r.inhabited_type);
                    println!("  by rule {}", r.reason_used);
                }
            }
            if as_json {
                print_json(&serde_json::Value::Array(reports.iter().map(|r| r.to_json()).collect()));
            }
            Ok(if ok { 0 } else { 1 })
        }
        Demo::Uip => {
            let a = parse_term("a").expect("fixed");
            let b = parse_term("b").expect("fixed");
            let ty = cpath::deduction::Ty::atom("A");
            let alphabet: Vec<_> = [AxiomKind::Beta, AxiomKind::Eta]
                .into_iter()
                .map(|k| AlphabetEntry {
                    reason: Reason::tagged(k, Position::root()),
                    left: a.clone(),
                    right: b.clone(),
                    ty: ty.clone(),
                })
                .collect();
            let pair = uip_search(&alphabet, max_size);
            if as_json {
                print_json(&json!({ "pair": pair.as_ref().map(|p| p.to_json()) }));
            } else {
                match &pair {
                    Some(p) => println!(
                        "{} and {} are distinct normal paths {} = {} (verified: {})",
                        p.first, p.second, p.left, p.right, p.verified
                    ),
                    None => println!("no pair of distinct normal paths up to size {max_size}"),
                }
            }
            Ok(if pair.is_some_and(|p| p.verified) { 0 } else { 1 })
        }
        Demo::ThreePaths => {
            let report = three_paths(max_size);
            if as_json {
                print_json(&report.to_json());
            } else {
                for (i, row) in report.rows.iter().enumerate() {
                    println!("row {}: {} = {}", i + 1, row.left, row.right);
                    println!("  {}", row.reason);
                    println!("  normal: {} (endpoints checked: {})", row.normal, row.endpoints_checked);
                }
                println!("distinct normal forms: {}", report.distinct_normal_forms);
                match &report.pair {
                    Some(p) => println!(
                        "distinct normal paths {} = {}:\n  {}\n  {}\n  verified: {}",
                        p.left, p.right, p.first, p.second, p.verified
                    ),
                    None => println!("no pair of distinct normal paths up to size {max_size}"),
                }
            }
            let ok = report.rows.iter().all(|r| r.endpoints_checked) && report.pair.as_ref().is_none_or(|p| p.verified);
            Ok(if ok { 0 } else { 1 })
        }
    }
}
