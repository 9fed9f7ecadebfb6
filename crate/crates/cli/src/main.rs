//! `wgcl`: evaluate weakest pre-weightings of wGCL programs from the shell.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use wgcl::algebra::{Approx, ExtNat};
use wgcl::operational::{
    enumerate_paths, olp_oracle, op_oracle, Config, History, DEFAULT_BUDGET, DEFAULT_FUEL,
};
use wgcl::syntax::{parse_program_with, parse_weighting, WeightingExpr};
use wgcl::transformer::{
    check_fixed_point, check_subinvariant, check_superinvariant, wlp_eval, wp_eval, Options,
    WlpMode, WlpStrategy,
};
use wgcl::{AlgebraError, Error, Instance, ModuleValue, Program, State};

const EXIT_RUNTIME: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INEXACT: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "wgcl", version, about = "Weighted guarded command language toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weakest pre-weighting per state.
    Wp(EvalArgs),
    /// Weakest liberal pre-weighting per state.
    Wlp(WlpArgs),
    /// Enumerate computation paths from each state.
    Paths(Common),
    /// Check an invariant against a loop's characteristic function.
    CheckInvariant(InvArgs),
    /// Compare the transformer against the operational oracle.
    OracleCompare(CompareArgs),
}

#[derive(Args)]
struct Common {
    /// Program file.
    program: PathBuf,
    /// Instance, overriding the file's `@instance` pragma.
    #[arg(long)]
    instance: Option<String>,
    /// A single state, e.g. `x=2,y=3`. Unlisted variables are 0.
    #[arg(long)]
    state: Option<String>,
    /// A state grid, e.g. `n=0..8,y=0..8`; combined with `--state`.
    #[arg(long)]
    grid: Option<String>,
    /// Largest grid accepted.
    #[arg(long, default_value_t = 100_000)]
    grid_cap: usize,
    #[arg(long, env = "WGCL_FUEL", default_value_t = DEFAULT_FUEL)]
    fuel: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    common: Common,
    /// Post-weighting.
    #[arg(long, default_value = "one")]
    post: String,
}

#[derive(Args)]
struct WlpArgs {
    #[command(flatten)]
    eval: EvalArgs,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Greatest fixed point below `one` instead of below `top`.
    #[arg(long)]
    bounded: bool,
}

#[derive(Args)]
struct InvArgs {
    #[command(flatten)]
    eval: EvalArgs,
    /// Candidate invariant.
    #[arg(long)]
    inv: String,
    #[arg(long, value_enum, default_value_t = Mode::Fixed)]
    mode: Mode,
    /// Child indices leading to the loop, dot separated (e.g. `1.1`).
    #[arg(long)]
    loop_path: Option<String>,
    #[arg(long)]
    bounded: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    eval: EvalArgs,
    /// Compare `wlp` against `op ⊕ olp` instead of `wp` against `op`.
    #[arg(long)]
    liberal: bool,
    /// Instead of the oracle, divide this program's `wp` by that of another
    /// program, per state.
    #[arg(long, value_name = "BASELINE")]
    ratio: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Chain,
    Lasso,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Super,
    Sub,
    Fixed,
}

/// An error with the exit code it maps to.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::NotALoop => EXIT_USAGE,
            Error::Algebra(
                AlgebraError::UnknownInstance(_)
                | AlgebraError::BadAlphabet(_)
                | AlgebraError::NoTop(_)
                | AlgebraError::BadLiteral { .. }
                | AlgebraError::ForeignLetter { .. }
                | AlgebraError::NotEmbeddable(_),
            ) => EXIT_USAGE,
            _ => EXIT_RUNTIME,
        };
        Fail(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Wp(a) => cmd_eval(&a, None),
        Cmd::Wlp(a) => {
            let strategy = match a.strategy {
                StrategyArg::Auto => WlpStrategy::Auto,
                StrategyArg::Chain => WlpStrategy::Chain,
                StrategyArg::Lasso => WlpStrategy::Lasso,
            };
            cmd_eval(&a.eval, Some((mode(a.bounded), strategy)))
        }
        Cmd::Paths(c) => cmd_paths(&c),
        Cmd::CheckInvariant(a) => cmd_check_invariant(&a),
        Cmd::OracleCompare(a) => match &a.ratio {
            Some(base) => cmd_ratio(&a.eval, base),
            None => cmd_oracle_compare(&a),
        },
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("wgcl: {msg}");
            ExitCode::from(code)
        }
    }
}

fn mode(bounded: bool) -> WlpMode {
    if bounded {
        WlpMode::GfpLeqOne
    } else {
        WlpMode::Gfp
    }
}

struct Loaded {
    inst: Instance,
    program: Program,
    vars: Vec<String>,
    states: Vec<State>,
}

fn load(c: &Common) -> Result<Loaded, Fail> {
    let (inst, program) = load_program(&c.program, c.instance.as_deref())?;
    let (vars, states) = states(c)?;
    Ok(Loaded {
        inst,
        program,
        vars,
        states,
    })
}

fn load_program(path: &PathBuf, instance: Option<&str>) -> Result<(Instance, Program), Fail> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let inst = instance
        .map(|n| n.parse::<Instance>())
        .transpose()
        .map_err(Error::from)?;
    let parsed = parse_program_with(&text, inst.as_ref())
        .map_err(|e| Fail::from(e).prefixed(&path.display().to_string()))?;
    Ok((parsed.instance, parsed.program))
}

impl Fail {
    fn prefixed(self, p: &str) -> Self {
        Fail(self.0, format!("{p}: {}", self.1))
    }
}

/// The states to evaluate at, in lexicographic order of (variable, value).
fn states(c: &Common) -> Result<(Vec<String>, Vec<State>), Fail> {
    let mut ranges: BTreeMap<String, (i64, i64)> = BTreeMap::new();
    for (spec, allow_range) in [(&c.state, false), (&c.grid, true)] {
        let Some(spec) = spec else { continue };
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (x, v) = part
                .split_once('=')
                .ok_or_else(|| usage(format!("expected `var=value`, got `{part}`")))?;
            let bad = || usage(format!("bad value in `{part}`"));
            let r = match v.split_once("..") {
                Some((lo, hi)) if allow_range => (
                    lo.trim().parse().map_err(|_| bad())?,
                    hi.trim().parse().map_err(|_| bad())?,
                ),
                Some(_) => return Err(usage("ranges belong in --grid")),
                None => {
                    let n: i64 = v.trim().parse().map_err(|_| bad())?;
                    (n, n)
                }
            };
            if r.0 > r.1 {
                return Err(usage(format!("empty range in `{part}`")));
            }
            ranges.insert(x.trim().to_string(), r);
        }
    }
    let mut size: u128 = 1;
    for (lo, hi) in ranges.values() {
        size = size.saturating_mul((hi - lo) as u128 + 1);
    }
    if size > c.grid_cap as u128 {
        return Err(usage(format!(
            "grid has {size} states, more than the cap of {}",
            c.grid_cap
        )));
    }
    let mut out = vec![State::new()];
    for (x, (lo, hi)) in &ranges {
        out = out
            .into_iter()
            .flat_map(|s| (*lo..=*hi).map(move |v| s.update(x, v)))
            .collect();
    }
    Ok((ranges.into_keys().collect(), out))
}

fn post(inst: &Instance, text: &str) -> Result<WeightingExpr, Fail> {
    parse_weighting(inst, text).map_err(|e| Fail::from(e).prefixed("post-weighting"))
}

fn options(c: &Common, wlp_mode: WlpMode, strategy: WlpStrategy) -> Options {
    Options {
        fuel: c.fuel,
        budget: c.budget,
        wlp_mode,
        strategy,
    }
}

/// Prints `σ | col | col | ...` or a TSV row.
struct Table {
    format: Format,
    vars: Vec<String>,
}

impl Table {
    fn header(&self, cols: &[&str]) {
        if self.format == Format::Tsv {
            let row: Vec<&str> = self.vars.iter().map(String::as_str).chain(cols.iter().copied()).collect();
            println!("{}", row.join("\t"));
        }
    }

    fn row(&self, s: &State, cols: &[String]) {
        match self.format {
            Format::Text => {
                let st: Vec<String> = self.vars.iter().map(|x| format!("{x}={}", s.get(x))).collect();
                println!("{{{}}} | {}", st.join(","), cols.join(" | "));
            }
            Format::Tsv => {
                let row: Vec<String> = self
                    .vars
                    .iter()
                    .map(|x| s.get(x).to_string())
                    .chain(cols.iter().cloned())
                    .collect();
                println!("{}", row.join("\t"));
            }
        }
    }
}

fn flag(exact: bool) -> String {
    if exact { "exact" } else { "inexact" }.to_string()
}

fn cmd_eval(a: &EvalArgs, wlp: Option<(WlpMode, WlpStrategy)>) -> Result<u8, Fail> {
    let l = load(&a.common)?;
    let f = post(&l.inst, &a.post)?;
    let (m, st) = wlp.unwrap_or_default();
    let opts = options(&a.common, m, st);
    let table = Table {
        format: a.common.format,
        vars: l.vars,
    };
    table.header(&["value", "exact"]);
    let mut all_exact = true;
    for s in &l.states {
        let r = match wlp {
            None => wp_eval(&l.inst, &l.program, &f, s, &opts)?,
            Some(_) => wlp_eval(&l.inst, &l.program, &f, s, &opts)?,
        };
        all_exact &= r.exact;
        table.row(s, &[r.value.to_string(), flag(r.exact)]);
    }
    Ok(if all_exact { 0 } else { EXIT_INEXACT })
}

fn cmd_paths(c: &Common) -> Result<u8, Fail> {
    let l = load(c)?;
    let table = Table {
        format: c.format,
        vars: l.vars,
    };
    table.header(&["history", "weight", "final", "terminal"]);
    let mut truncated = false;
    for s in &l.states {
        let report = enumerate_paths(&l.inst, &Config::initial(l.program.clone(), s.clone()), c.fuel, c.budget)?;
        truncated |= report.truncated;
        for p in &report.paths {
            let last = p.last();
            table.row(
                s,
                &[
                    History(&last.history).to_string(),
                    p.weight.to_string(),
                    last.node.state.to_string(),
                    if p.terminal { "terminal" } else { "cut" }.to_string(),
                ],
            );
        }
    }
    Ok(if truncated { EXIT_INEXACT } else { 0 })
}

fn loop_at<'p>(program: &'p Program, path: Option<&str>) -> Result<&'p Program, Fail> {
    let idx: Vec<usize> = match path {
        None => Vec::new(),
        Some(p) => p
            .split('.')
            .map(|i| i.trim().parse().map_err(|_| usage(format!("bad loop path `{p}`"))))
            .collect::<Result<_, _>>()?,
    };
    program
        .subprogram(&idx)
        .ok_or_else(|| usage(format!("no statement at loop path {idx:?}")))
}

fn cmd_check_invariant(a: &InvArgs) -> Result<u8, Fail> {
    let c = &a.eval.common;
    let l = load(c)?;
    let f = post(&l.inst, &a.eval.post)?;
    let inv = parse_weighting(&l.inst, &a.inv).map_err(|e| Fail::from(e).prefixed("invariant"))?;
    let lp = loop_at(&l.program, a.loop_path.as_deref())?;
    let opts = options(c, mode(a.bounded), WlpStrategy::Auto);
    let table = Table {
        format: c.format,
        vars: l.vars,
    };
    let total = l.states.len();
    let (passed, summary) = match a.mode {
        Mode::Super | Mode::Sub => {
            let (vs, rel, what) = match a.mode {
                Mode::Super => (
                    check_superinvariant(&l.inst, lp, &f, &inv, &l.states, &opts)?,
                    "Φ(I) ⊑ I",
                    "wp ⊑ I",
                ),
                _ => (
                    check_subinvariant(&l.inst, lp, &f, &inv, &l.states, &opts)?,
                    "I ⊑ Φ(I)",
                    "I ⊑ wlp",
                ),
            };
            table.header(&["phi", "inv", "holds"]);
            for v in &vs {
                table.row(&v.state, &[v.phi.to_string(), v.inv.to_string(), v.holds.to_string()]);
            }
            let passed = vs.iter().filter(|v| v.holds).count();
            let summary = if passed == total {
                format!("{rel} on all {total} states; {what} there")
            } else {
                format!("{rel} fails on {} of {total} states", total - passed)
            };
            (passed, summary)
        }
        Mode::Fixed => {
            let vs = check_fixed_point(&l.inst, lp, &f, &inv, &l.states, &opts)?;
            table.header(&["phi", "inv", "fixed", "certain"]);
            for v in &vs {
                table.row(
                    &v.verdict.state,
                    &[
                        v.verdict.phi.to_string(),
                        v.verdict.inv.to_string(),
                        v.verdict.holds.to_string(),
                        v.certain.to_string(),
                    ],
                );
            }
            let passed = vs.iter().filter(|v| v.verdict.holds).count();
            let conclusive = vs.iter().filter(|v| v.conclusive).count();
            let summary = if passed < total {
                format!("Φ(I) = I fails on {} of {total} states", total - passed)
            } else if conclusive == total {
                format!("Φ(I) = I and certain termination on all {total} states; wp = wlp = I on grid")
            } else {
                format!("Φ(I) = I on all {total} states; wp = wlp = I on the {conclusive} certainly terminating ones")
            };
            (passed, summary)
        }
    };
    if c.format == Format::Text {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(if passed == total { 0 } else { EXIT_MISMATCH })
}

fn cmd_oracle_compare(a: &CompareArgs) -> Result<u8, Fail> {
    let c = &a.eval.common;
    let l = load(c)?;
    let f = post(&l.inst, &a.eval.post)?;
    let opts = options(c, WlpMode::Gfp, WlpStrategy::Auto);
    let table = Table {
        format: c.format,
        vars: l.vars,
    };
    table.header(&["transformer", "oracle", "equal", "transformer_exact", "oracle_exact"]);
    let (mut mismatch, mut inexact) = (false, false);
    for s in &l.states {
        let (t, o) = if a.liberal {
            let t = wlp_eval(&l.inst, &l.program, &f, s, &opts)?;
            let op = op_oracle(&l.inst, &l.program, s, &f, c.fuel, c.budget)?;
            let olp = olp_oracle(&l.inst, &l.program, s, c.fuel, c.budget)?;
            let o = Approx {
                value: l.inst.mod_add(&op.value, &olp.value).map_err(Error::from)?,
                exact: op.exact && olp.exact,
            };
            (Approx { value: t.value, exact: t.exact }, o)
        } else {
            let t = wp_eval(&l.inst, &l.program, &f, s, &opts)?;
            let o = op_oracle(&l.inst, &l.program, s, &f, c.fuel, c.budget)?;
            (Approx { value: t.value, exact: t.exact }, o)
        };
        let equal = t.value == o.value;
        mismatch |= t.exact && o.exact && !equal;
        inexact |= !(t.exact && o.exact);
        table.row(
            s,
            &[
                t.value.to_string(),
                o.value.to_string(),
                equal.to_string(),
                flag(t.exact),
                flag(o.exact),
            ],
        );
    }
    Ok(if mismatch {
        EXIT_MISMATCH
    } else if inexact {
        EXIT_INEXACT
    } else {
        0
    })
}

fn finite(v: &ModuleValue) -> Option<u64> {
    match v.as_nat()? {
        ExtNat::Fin(n) => Some(n),
        ExtNat::Inf => None,
    }
}

/// Per-state `wp(program) / wp(baseline)` and its maximum over the grid. The
/// maximum is a lower bound for the supremum over all states.
fn cmd_ratio(a: &EvalArgs, baseline: &PathBuf) -> Result<u8, Fail> {
    let c = &a.common;
    let l = load(c)?;
    let (binst, bprog) = load_program(baseline, c.instance.as_deref())?;
    if binst != l.inst {
        return Err(usage(format!("baseline instance {binst} differs from {}", l.inst)));
    }
    let f = post(&l.inst, &a.post)?;
    let opts = options(c, WlpMode::Gfp, WlpStrategy::Auto);
    let table = Table {
        format: c.format,
        vars: l.vars,
    };
    table.header(&["value", "baseline", "ratio", "exact"]);
    let mut best: Option<(Rational64, State)> = None;
    let mut all_exact = true;
    for s in &l.states {
        let num = wp_eval(&l.inst, &l.program, &f, s, &opts)?;
        let den = wp_eval(&l.inst, &bprog, &f, s, &opts)?;
        let exact = num.exact && den.exact;
        all_exact &= exact;
        let ratio = match (finite(&num.value), finite(&den.value)) {
            (Some(n), Some(d)) if d > 0 => Some(Rational64::new(n as i64, d as i64)),
            _ => None,
        };
        if let Some(r) = ratio {
            if best.as_ref().is_none_or(|(b, _)| r > *b) {
                best = Some((r, s.clone()));
            }
        }
        table.row(
            s,
            &[
                num.value.to_string(),
                den.value.to_string(),
                ratio.map_or("-".to_string(), |r| r.to_string()),
                flag(exact),
            ],
        );
    }
    let summary = match &best {
        Some((r, s)) => {
            let st: Vec<String> = table.vars.iter().map(|x| format!("{x}={}", s.get(x))).collect();
            format!("max ratio {r} at {{{}}} (a lower bound for the supremum)", st.join(","))
        }
        None => "no state with a finite nonzero baseline".to_string(),
    };
    if c.format == Format::Text {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(if all_exact { 0 } else { EXIT_INEXACT })
}
