//! Command-line front end.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::alba::soundness::check_result;
use crate::alba::{run_alba_named, AlbaResult, Status, I0};
use crate::fol::{library, parse_fo, Fo, FoStyle, Term};
use crate::gentree::{classify, OrderType};
use crate::heyting::{Algebra, Elem};
use crate::oracle::{correspondence_oracle, fo_agreement, OracleConfig, Verdict};
use crate::report::{self, AlgebraInfo, Envelope, VerdictInfo};
use crate::semantics::{eval_all, Model, DEFAULT_BUDGET};
use crate::svb::{svb_correspondent, svb_display};
use crate::syntax::{parse_formula, parse_input, ModalInput};

/// Environment variable overriding the enumeration budget.
pub const BUDGET_VAR: &str = "MVCORR_BUDGET";

/// Shared-atom assignments checked per reduction step by `--check-steps`.
const SHARED_CAP: u64 = 2_000;

#[derive(Parser, Debug)]
#[command(name = "mvcorr", version, about = "Frame correspondence for many-valued modal logic")]
struct Cli {
    /// Print the structured report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled frames.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect an algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Evaluate a formula on a model file.
    Eval {
        #[arg(long, default_value = "paper-P")]
        algebra: String,
        #[arg(long)]
        model: String,
        #[arg(long)]
        formula: String,
        /// Also report a-truth at each state.
        #[arg(long)]
        value: Option<String>,
    },
    /// Sahlqvist and inductive classification.
    Classify {
        #[arg(long, default_value = "paper-P")]
        algebra: String,
        #[arg(long)]
        formula: String,
    },
    /// Run ALBA.
    Alba(RunArgs),
    /// Run the Sahlqvist-van Benthem algorithm.
    Svb {
        #[command(flatten)]
        run: RunArgs,
        /// Also run ALBA and check that both correspondents agree.
        #[arg(long)]
        compare_alba: bool,
    },
    /// Check a first-order formula against a modal input on finite frames.
    Verify {
        #[arg(long, default_value = "paper-P")]
        algebra: String,
        #[arg(long)]
        value: String,
        #[arg(long)]
        formula: String,
        /// First-order text with free variable `x`, or a library name.
        #[arg(long)]
        fo: String,
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2])]
        sizes: Vec<usize>,
        /// `SIZE:COUNT` sampled frames, repeatable.
        #[arg(long, value_parser = parse_samples)]
        samples: Vec<(usize, usize)>,
        /// Compare at this value instead of `a`.
        #[arg(long)]
        threshold: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum AlgebraAction {
    /// Load, validate and summarize an algebra.
    Check {
        #[arg(long, default_value = "paper-P")]
        algebra: String,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, default_value = "paper-P")]
    algebra: String,
    #[arg(long)]
    value: String,
    #[arg(long)]
    formula: String,
    /// Report the universal closure of the correspondent.
    #[arg(long)]
    global: bool,
    /// Print every rule application.
    #[arg(long)]
    trace: bool,
    /// Oracle verification, e.g. `sizes=1,2`.
    #[arg(long, value_parser = parse_verify)]
    verify: Option<Sizes>,
    /// `SIZE:COUNT` sampled frames for verification, repeatable.
    #[arg(long, value_parser = parse_samples)]
    samples: Vec<(usize, usize)>,
    /// Check every ALBA step on the verification frames.
    #[arg(long)]
    check_steps: bool,
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let sizes: Vec<usize> =
        s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad size `{t}`: {e}"))).collect::<Result<_, _>>()?;
    if sizes.contains(&0) {
        return Err("sizes must be at least 1".into());
    }
    Ok(sizes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Sizes(Vec<usize>);

fn parse_verify(s: &str) -> Result<Sizes, String> {
    parse_sizes(s.strip_prefix("sizes=").unwrap_or(s)).map(Sizes)
}

fn parse_samples(s: &str) -> Result<(usize, usize), String> {
    let (n, k) = s.split_once(':').ok_or_else(|| format!("expected SIZE:COUNT, found `{s}`"))?;
    let n = n.parse::<usize>().map_err(|e| e.to_string())?;
    if n == 0 {
        return Err("sizes must be at least 1".into());
    }
    Ok((n, k.parse::<usize>().map_err(|e| e.to_string())?))
}

/// Usage and input errors, reported with exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn usage(e: impl std::fmt::Display) -> UsageError {
    UsageError(e.to_string())
}

struct Ctx {
    json: bool,
    seed: u64,
    budget: u64,
}

impl Ctx {
    fn oracle(&self, sizes: &[usize], samples: &[(usize, usize)]) -> OracleConfig {
        let mut cfg = OracleConfig::exhaustive(sizes);
        for &(n, k) in samples {
            cfg = cfg.with_samples(n, k, self.seed);
        }
        cfg.seed = self.seed;
        cfg.budget = self.budget;
        cfg
    }
}

struct Outcome<T> {
    ok: bool,
    text: String,
    result: T,
}

/// Runs the command line `argv` (program name first) and returns the exit status.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let budget = match std::env::var(BUDGET_VAR) {
        Ok(v) => match v.parse::<u64>() {
            Ok(b) => b,
            Err(_) => {
                let _ = writeln!(err, "error: {BUDGET_VAR} must be a non-negative integer, found `{v}`");
                return 2;
            }
        },
        Err(_) => DEFAULT_BUDGET,
    };
    let ctx = Ctx { json: cli.json, seed: cli.seed, budget };
    let res = match cli.command {
        Command::Algebra { action: AlgebraAction::Check { algebra } } => algebra_check(&ctx, &algebra, out),
        Command::Eval { algebra, model, formula, value } => eval(&ctx, &algebra, &model, &formula, value.as_deref(), out),
        Command::Classify { algebra, formula } => classify_cmd(&ctx, &algebra, &formula, out),
        Command::Alba(args) => alba(&ctx, &args, out),
        Command::Svb { run, compare_alba } => svb(&ctx, &run, compare_alba, out),
        Command::Verify { algebra, value, formula, fo, sizes, samples, threshold } => {
            let sizes = if sizes.contains(&0) { Err(usage("sizes must be at least 1")) } else { Ok(sizes) };
            sizes.and_then(|s| verify(&ctx, &algebra, &value, &formula, &fo, &s, &samples, threshold.as_deref(), out))
        }
    };
    match res {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn load(source: &str) -> Result<Algebra, UsageError> {
    Algebra::from_source(source).map_err(usage)
}

fn value_of(alg: &Algebra, name: &str) -> Result<Elem, UsageError> {
    alg.elem(name).ok_or_else(|| usage(format!("`{name}` is not an element of {}", alg.name())))
}

fn emit<T: Serialize>(
    ctx: &Ctx,
    command: &'static str,
    alg: Option<&Algebra>,
    input: BTreeMap<&'static str, String>,
    o: Outcome<T>,
    out: &mut dyn Write,
) -> Result<bool, UsageError> {
    let text = if ctx.json {
        let env = Envelope {
            schema: report::SCHEMA,
            command,
            algebra: alg.map(AlgebraInfo::of),
            seed: ctx.seed,
            input,
            result: o.result,
        };
        env.to_json() + "\n"
    } else {
        o.text
    };
    out.write_all(text.as_bytes()).map_err(usage)?;
    Ok(o.ok)
}

fn input_map(pairs: &[(&'static str, String)]) -> BTreeMap<&'static str, String> {
    pairs.iter().cloned().collect()
}

fn sizes_text(sizes: &[usize]) -> String {
    sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

fn samples_text(samples: &[(usize, usize)]) -> String {
    samples.iter().map(|(n, k)| format!("{n}:{k}")).collect::<Vec<_>>().join(" ")
}

fn order_type_text(e: &OrderType) -> String {
    e.iter().map(|(p, m)| format!("{p}={m}")).collect::<Vec<_>>().join(" ")
}

fn verdict_text(v: &VerdictInfo) -> String {
    let mut s = match &v.counterexample {
        None => format!("PASS ({} frames)\n", v.frames),
        Some(c) => {
            let rel: Vec<String> =
                c.frame.relation.iter().map(|[a, b, e]| format!("R({a},{b})={e}")).collect();
            let mut s = format!(
                "FAIL at state {} of the frame {}\n  modal side {}, first-order value {}\n",
                c.state,
                rel.join(" "),
                if c.modal_holds { "holds" } else { "fails" },
                c.fo_value
            );
            if let Some(val) = &c.valuation {
                let parts: Vec<String> = val.iter().map(|(a, vs)| format!("{a}=[{}]", vs.join(","))).collect();
                s += &format!("  refuting valuation {}\n", parts.join(" "));
            }
            s
        }
    };
    s.insert_str(0, "verify: ");
    s
}

fn algebra_check(ctx: &Ctx, source: &str, out: &mut dyn Write) -> Result<bool, UsageError> {
    let alg = load(source)?;
    let c = report::algebra_check(&alg);
    let pairs = |xs: &[[String; 2]], sep: &str| xs.iter().map(|[a, b]| format!("{a}{sep}{b}")).collect::<Vec<_>>().join(" ");
    let text = format!(
        "algebra {} ({} elements): {}\nfingerprint {}\ncovers: {}\njoin-irreducibles: {}\nmeet-irreducibles: {}\nkappa: {}\nlambda: {}\n",
        alg.name(),
        alg.size(),
        alg.names().join(", "),
        alg.fingerprint(),
        pairs(&c.covers, " < "),
        c.join_irreducibles.join(" "),
        c.meet_irreducibles.join(" "),
        pairs(&c.kappa, " -> "),
        pairs(&c.lambda, " -> "),
    );
    emit(ctx, "algebra check", Some(&alg), input_map(&[("algebra", source.into())]), Outcome { ok: true, text, result: c }, out)
}

fn eval(
    ctx: &Ctx,
    source: &str,
    model_path: &str,
    formula: &str,
    value: Option<&str>,
    out: &mut dyn Write,
) -> Result<bool, UsageError> {
    let alg = load(source)?;
    let text = std::fs::read_to_string(model_path).map_err(|e| usage(format!("{model_path}: {e}")))?;
    let model = Model::from_json(&alg, &text).map_err(usage)?;
    let f = parse_formula(formula, &alg).map_err(usage)?;
    let a = value.map(|v| value_of(&alg, v)).transpose()?;
    let vals = eval_all(&alg, &model, &f).map_err(usage)?;
    let states: Vec<report::StateValue> = vals
        .iter()
        .enumerate()
        .map(|(w, &v)| report::StateValue {
            state: model.frame.states()[w].clone(),
            value: alg.name_of(v).to_string(),
            holds: a.map(|a| alg.leq(a, v)),
        })
        .collect();
    let mut text = String::new();
    for s in &states {
        text += &format!("{}: {}", s.state, s.value);
        if let Some(h) = s.holds {
            text += if h { " (holds)" } else { " (fails)" };
        }
        text.push('\n');
    }
    let mut input = vec![("algebra", source.to_string()), ("model", model_path.to_string()), ("formula", formula.to_string())];
    if let Some(v) = value {
        input.push(("value", v.to_string()));
    }
    emit(ctx, "eval", Some(&alg), input_map(&input), Outcome { ok: true, text, result: report::EvalInfo { states } }, out)
}

fn classify_cmd(ctx: &Ctx, source: &str, formula: &str, out: &mut dyn Write) -> Result<bool, UsageError> {
    let alg = load(source)?;
    let ineq = parse_input(formula, &alg).map_err(usage)?.as_inequality();
    let c = classify(&ineq);
    let info = report::classification(&c);
    let mut text = format!("{}\n", info.verdict);
    if let Some(e) = &info.epsilon {
        text += &format!("epsilon: {}\n", order_type_text(e));
    }
    if let Some(o) = &info.omega {
        let o: Vec<String> = o.iter().map(|[p, q]| format!("{p} < {q}")).collect();
        text += &format!("omega: {}\n", if o.is_empty() { "empty".to_string() } else { o.join(", ") });
    }
    text += "branch  side   leaf  quality\n";
    for b in &info.branches {
        text += &format!("{:<7} {:<6} {:<5} {}\n", b.number, b.side, b.leaf, b.quality);
    }
    let input = input_map(&[("algebra", source.into()), ("formula", formula.into())]);
    emit(ctx, "classify", Some(&alg), input, Outcome { ok: true, text, result: info }, out)
}

fn run_input(alg: &Algebra, formula: &str) -> Result<ModalInput, UsageError> {
    parse_input(formula, alg).map_err(usage)
}

fn run_map(args: &RunArgs) -> Vec<(&'static str, String)> {
    let mut v = vec![("algebra", args.algebra.clone()), ("value", args.value.clone()), ("formula", args.formula.clone())];
    if args.global {
        v.push(("global", "true".into()));
    }
    if let Some(s) = &args.verify {
        v.push(("verify", sizes_text(&s.0)));
    }
    if !args.samples.is_empty() {
        v.push(("samples", samples_text(&args.samples)));
    }
    if args.check_steps {
        v.push(("check-steps", "true".into()));
    }
    v
}

/// The universal closure of a correspondent displayed with free `x`.
fn close(shown: &Fo) -> Fo {
    Fo::forall(Term::var("x"), shown.clone())
}

fn alba_fo(r: &AlbaResult, global: bool) -> Option<(Fo, Fo)> {
    let raw = if global { r.fo_global()? } else { r.fo()? };
    let shown = r.display_fo()?;
    Some((raw, if global { close(&shown) } else { shown }))
}

fn alba_text(r: &AlbaResult, info: &report::AlbaInfo, trace: bool) -> String {
    let mut s = format!("status: {}\ninput: {}\nvalue: a = {}\n", info.status, r.input, info.value);
    let step_lines = |s: &mut String, steps: &[report::StepInfo]| {
        for st in steps {
            *s += &format!("    {}: {{{}}} => {{{}}}\n", st.rule, st.before.join(", "), st.after.join(", "));
        }
    };
    if trace && !info.preprocessing.is_empty() {
        s += "preprocessing:\n";
        step_lines(&mut s, &info.preprocessing);
    }
    for (k, b) in info.branches.iter().enumerate() {
        s += &format!("branch {}: {} ({}, order type {}, {} attempts)\n", k + 1, b.pre, b.status, order_type_text(&b.order_type), b.attempts);
        if trace {
            step_lines(&mut s, &b.trace);
        }
        s += &format!("  system: {{{}}}\n", b.system.join(", "));
        if let Some(q) = info.quasi.get(k) {
            s += &format!("  quasi-inequality: {q}\n");
        }
    }
    if let Some(fo) = &info.fo {
        s += &format!("correspondent: {}\n", fo.display);
    }
    s
}

fn alba(ctx: &Ctx, args: &RunArgs, out: &mut dyn Write) -> Result<bool, UsageError> {
    let alg = load(&args.algebra)?;
    let input = run_input(&alg, &args.formula)?;
    let r = run_alba_named(&alg, &input, &args.value).map_err(usage)?;
    let mut info = report::alba(&r, alba_fo(&r, args.global));
    let mut ok = r.status == Status::Success;
    let cfg = ctx.oracle(args.verify.as_ref().map_or(&[1, 2][..], |s| &s.0), &args.samples);
    if let (Some(_), Some(fo)) = (&args.verify, r.fo()) {
        let v = correspondence_oracle(&alg, &input.as_inequality(), r.value, &fo, &Term::Nom(I0.into()), Elem::TOP, &cfg)
            .map_err(usage)?;
        let vi = verdict_info(&alg, &v, &cfg);
        ok &= vi.passed();
        info.verification = Some(vi);
    }
    if args.check_steps {
        let rep = check_result(&alg, &r, &cfg, SHARED_CAP).map_err(usage)?;
        ok &= rep.is_sound();
        info.soundness = Some(report::soundness(&rep));
    }
    let mut text = alba_text(&r, &info, args.trace);
    if let Some(v) = &info.verification {
        text += &verdict_text(v);
    }
    if let Some(s) = &info.soundness {
        text += &match &s.failure {
            None => format!("steps: all {} sound ({} frames)\n", s.steps, s.frames),
            Some(f) => format!("steps: unsound {f}\n"),
        };
    }
    emit(ctx, "alba", Some(&alg), input_map(&run_map(args)), Outcome { ok, text, result: info }, out)
}

fn verdict_info(alg: &Algebra, v: &Verdict, cfg: &OracleConfig) -> VerdictInfo {
    let total: u64 = cfg.sizes.iter().filter_map(|&n| crate::semantics::Frame::count(alg, n)).sum::<u64>()
        + cfg.samples.iter().map(|&(_, k)| k as u64).sum::<u64>();
    report::verdict(alg, v, total)
}

fn svb(ctx: &Ctx, args: &RunArgs, compare: bool, out: &mut dyn Write) -> Result<bool, UsageError> {
    let alg = load(&args.algebra)?;
    let input = run_input(&alg, &args.formula)?;
    let a = value_of(&alg, &args.value)?;
    let f = match &input {
        ModalInput::Formula(f) => f.clone(),
        ModalInput::Inequality(_) => return Err(usage("svb takes a formula, not an inequality")),
    };
    let x = Term::var("x");
    let (raw, shown) = match (svb_correspondent(&f), svb_display(&f)) {
        (Ok(r), Ok(s)) => (r, s),
        (Err(e), _) | (_, Err(e)) => {
            let text = format!("failure: {e}\n");
            let result = BTreeMap::from([("failure", e.to_string())]);
            emit(ctx, "svb", Some(&alg), input_map(&run_map(args)), Outcome { ok: false, text, result }, out)?;
            return Ok(false);
        }
    };
    let (raw, shown) = if args.global { (Fo::forall(x.clone(), raw), close(&shown)) } else { (raw, shown) };
    let mut info = report::SvbInfo { fo: report::fo_text(&raw, &shown), verification: None, comparison: None, alba_status: None };
    let cfg = ctx.oracle(args.verify.as_ref().map_or(&[1, 2][..], |s| &s.0), &args.samples);
    let local = svb_correspondent(&f).expect("checked above");
    let mut ok = true;
    if args.verify.is_some() {
        let v = correspondence_oracle(&alg, &input.as_inequality(), a, &local, &x, a, &cfg).map_err(usage)?;
        let vi = verdict_info(&alg, &v, &cfg);
        ok &= vi.passed();
        info.verification = Some(vi);
    }
    let mut trace = String::new();
    if compare {
        let r = run_alba_named(&alg, &input, &args.value).map_err(usage)?;
        info.alba_status = Some(r.status.to_string());
        if args.trace {
            trace = alba_text(&r, &report::alba(&r, None), true);
        }
        match r.fo() {
            Some(afo) => {
                let i0 = Term::Nom(I0.into());
                let agree = fo_agreement(&alg, (&afo, &i0, Elem::TOP), (&local, &x, a), &cfg).map_err(usage)?;
                let ai = report::agreement(&alg, &agree);
                ok &= ai.verdict == "PASS";
                info.comparison = Some(ai);
            }
            None => ok = false,
        }
    }
    let mut text = format!("correspondent: {}\n", info.fo.display);
    if args.trace {
        text += &format!("raw: {}\n", info.fo.raw);
    }
    text += &trace;
    if let Some(v) = &info.verification {
        text += &verdict_text(v);
    }
    if let Some(s) = &info.alba_status {
        text += &match &info.comparison {
            Some(c) if c.verdict == "PASS" => format!("compare-alba: PASS ({} frames)\n", c.frames),
            Some(c) => {
                let d = c.disagreement.as_ref().expect("failed comparisons carry a witness");
                format!("compare-alba: FAIL at state {} (alba {}, svb {})\n", d.state, d.left, d.right)
            }
            None => format!("compare-alba: ALBA {s}\n"),
        };
    }
    emit(ctx, "svb", Some(&alg), input_map(&run_map(args)), Outcome { ok, text, result: info }, out)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    ctx: &Ctx,
    source: &str,
    value: &str,
    formula: &str,
    fo_text: &str,
    sizes: &[usize],
    samples: &[(usize, usize)],
    threshold: Option<&str>,
    out: &mut dyn Write,
) -> Result<bool, UsageError> {
    let alg = load(source)?;
    let a = value_of(&alg, value)?;
    let t = threshold.map(|t| value_of(&alg, t)).transpose()?.unwrap_or(a);
    let input = parse_input(formula, &alg).map_err(usage)?;
    let fo = match library::by_name(fo_text) {
        Some(f) => f,
        None => parse_fo(fo_text, &alg).map_err(usage)?,
    };
    let cfg = ctx.oracle(sizes, samples);
    let v = correspondence_oracle(&alg, &input.as_inequality(), a, &fo, &Term::var("x"), t, &cfg).map_err(usage)?;
    let vi = verdict_info(&alg, &v, &cfg);
    let text = verdict_text(&vi).replacen("verify: ", "", 1);
    let ok = vi.passed();
    let result = report::VerifyInfo { fo: FoStyle::Ascii.render(&fo), threshold: alg.name_of(t).to_string(), verdict: vi };
    let mut input = vec![
        ("algebra", source.to_string()),
        ("value", value.to_string()),
        ("formula", formula.to_string()),
        ("fo", fo_text.to_string()),
        ("sizes", sizes_text(sizes)),
    ];
    if !samples.is_empty() {
        input.push(("samples", samples_text(samples)));
    }
    if let Some(t) = threshold {
        input.push(("threshold", t.to_string()));
    }
    emit(ctx, "verify", Some(&alg), input_map(&input), Outcome { ok, text, result }, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("mvcorr").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn verify_list_parsing() {
        assert_eq!(parse_verify("sizes=1,2"), Ok(Sizes(vec![1, 2])));
        assert_eq!(parse_verify("3"), Ok(Sizes(vec![3])));
        assert!(parse_verify("sizes=0").is_err());
        assert_eq!(parse_samples("3:200"), Ok((3, 200)));
        assert!(parse_samples("3").is_err());
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(call(&["alba", "--value", "gamma"]).0, 2);
        assert_eq!(call(&["alba", "--value", "delta", "--formula", "p"]).0, 2);
        assert_eq!(call(&["classify", "--formula", "p ->"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn failure_exits_with_one() {
        let (code, out, _) = call(&["alba", "--value", "1", "--formula", "[](p \\/ q) <= <>(p /\\ q)"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("status: failure"));
    }
}
