//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wgcl::algebra::{Alphabet, ExtNat, Lasso, ModuleValue, OmegaLanguage, Word};
use wgcl::operational::{olp_chain, op_oracle, uct_check, Uct};
use wgcl::syntax::{parse_program, parse_program_with, parse_weighting, Weighting, WeightingExpr};
use wgcl::transformer::{
    check_decomposition, check_fixed_point, wlp_eval, wp_eval, Options, WlpStrategy,
};
use wgcl::{Instance, Program, Result, State};

use common::*;

type Outcome = std::result::Result<String, String>;

fn corpus(name: &str) -> (Instance, Program) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", &format!("{name}.wgcl")]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path).expect("corpus file");
    let p = parse_program(&text).expect("corpus parses");
    (p.instance, p.program)
}

fn nat(v: &ModuleValue) -> Option<u64> {
    match v.as_nat()? {
        ExtNat::Fin(n) => Some(n),
        ExtNat::Inf => None,
    }
}

fn st(pairs: &[(&str, i64)]) -> State {
    State::from_pairs(pairs.iter().copied())
}

fn tropical_conditional() -> Result<Outcome> {
    let (i, p) = corpus("ex49");
    for x in -2..=2 {
        let r = wp_eval(&i, &p, &WeightingExpr::one(), &st(&[("x", x)]), &Options::default())?;
        if r.value != ModuleValue::nat(2) || !r.exact {
            return Ok(Err(format!("x={x}: {} exact={}", r.value, r.exact)));
        }
    }
    Ok(Ok("wp(one) = 2, exact, for x in [-2, 2]".into()))
}

fn divergence_weighting() -> Result<Outcome> {
    let (i, p) = corpus("ex410");
    let f = parse_weighting(&i, "int(0)")?;
    let s = st(&[("x", 2)]);
    let wp = wp_eval(&i, &p, &f, &s, &Options::default())?;
    let mut values = Vec::new();
    for strategy in [WlpStrategy::Auto, WlpStrategy::Chain, WlpStrategy::Lasso] {
        let o = Options {
            strategy,
            ..Options::default()
        };
        values.push(wlp_eval(&i, &p, &f, &s, &o)?);
    }
    let ok = wp.value == ModuleValue::nat(5)
        && wp.exact
        && values.iter().all(|r| r.value == ModuleValue::nat(0) && r.exact);
    let report = format!(
        "wp = {} ({}), wlp auto/chain/lasso = {}/{}/{}",
        wp.value,
        wp.exact,
        values[0].value,
        values[1].value,
        values[2].value
    );
    Ok(if ok { Ok(report) } else { Err(report) })
}

fn language_example() -> Result<Outcome> {
    let (i, p) = corpus("ex411");
    let ab = Alphabet::new("ab")?;
    let s = st(&[("x", 1)]);
    let b_omega = Lasso::new(Word::empty(), Word::from_letters("b"))?;
    let truncated: Vec<Word> = (0..10)
        .map(|k| Word::from_letters(&format!("{}a", "b".repeat(k))))
        .collect();

    let wlp0 = wlp_eval(&i, &p, &WeightingExpr::zero(), &s, &Options::default())?;
    let want0 = ModuleValue::Omega(OmegaLanguage::from_parts([], [b_omega.clone()], [], &ab));
    if wlp0.value != want0 || !wlp0.exact {
        return Ok(Err(format!("wlp(zero) = {} exact={}", wlp0.value, wlp0.exact)));
    }

    let fuel10 = Options::with_fuel(10);
    let wp = wp_eval(&i, &p, &WeightingExpr::one(), &s, &fuel10)?;
    let want_wp = ModuleValue::Omega(OmegaLanguage::from_parts(truncated.clone(), [], [], &ab));
    if wp.value != want_wp || wp.exact {
        return Ok(Err(format!("wp(one) at fuel 10 = {} exact={}", wp.value, wp.exact)));
    }

    let lasso = wlp_eval(&i, &p, &WeightingExpr::one(), &s, &Options { strategy: WlpStrategy::Lasso, ..fuel10 })?;
    let chain = wlp_eval(&i, &p, &WeightingExpr::one(), &s, &Options { strategy: WlpStrategy::Chain, ..fuel10 })?;
    let want = OmegaLanguage::from_parts(truncated, [b_omega.clone()], [], &ab);
    let (ModuleValue::Omega(l), ModuleValue::Omega(c)) = (&lasso.value, &chain.value) else {
        return Ok(Err("not an ω-language value".into()));
    };
    if *l != want {
        return Ok(Err(format!("lasso-mode wlp(one) = {l}")));
    }
    // The descending chain overapproximates by a cylinder of long b-prefixes.
    let extra: Vec<&Word> = c.cylinders().iter().collect();
    let chain_words: BTreeSet<&Word> = c.words().iter().filter(|w| w.len() <= 10).collect();
    let lasso_words: BTreeSet<&Word> = l.words().iter().collect();
    let cyl_has_b_omega = extra.iter().any(|w| b_omega.has_prefix(w));
    let ok = chain_words == lasso_words && l.is_subset(c, &ab) && cyl_has_b_omega;
    let report = format!("wlp(zero) = {}, wp(one)@10 = {}, decomposition = {l}, chain = {c}", wlp0.value, wp.value);
    Ok(if ok { Ok(report) } else { Err(report) })
}

fn divergence_opener() -> Result<Outcome> {
    let lang: Instance = "lang:ab".parse()?;
    let omega: Instance = "omegalang:ab".parse()?;
    let pa = parse_program_with("while (true) { weigh a }", Some(&lang))?.program;
    let wp = wp_eval(&lang, &pa, &WeightingExpr::one(), &State::new(), &Options::default())?;
    if wp.value != lang.mod_zero() || !wp.exact {
        return Ok(Err(format!("wp(one) = {} exact={}", wp.value, wp.exact)));
    }
    let ab = Alphabet::new("ab")?;
    let mut got = Vec::new();
    for letter in ["a", "b"] {
        let p = parse_program_with(&format!("while (true) {{ weigh {letter} }}"), Some(&omega))?.program;
        let r = wlp_eval(&omega, &p, &WeightingExpr::zero(), &State::new(), &Options::default())?;
        let lasso = Lasso::new(Word::empty(), Word::from_letters(letter))?;
        let want = ModuleValue::Omega(OmegaLanguage::from_parts([], [lasso], [], &ab));
        if r.value != want || !r.exact {
            return Ok(Err(format!("wlp(zero) of the {letter}-loop = {} exact={}", r.value, r.exact)));
        }
        got.push(r.value);
    }
    let report = format!("wp = ∅ exact; wlp(zero) = {} vs {}", got[0], got[1]);
    Ok(if got[0] != got[1] { Ok(report) } else { Err(report) })
}

fn arctic_bound() -> Result<Outcome> {
    let (i, p) = corpus("ex55_arctic");
    let f = parse_weighting(&i, "int(0)")?;
    let inv = parse_weighting(&i, "[not (x > 0 and y > 0)] int(0) (+) [x > 0 and y > 0] int(2 * (x - 1) + y)")?;
    let grid: Vec<State> = (0..=6)
        .flat_map(|x| (0..=6).map(move |y| st(&[("x", x), ("y", y)])))
        .collect();
    let verdicts = check_fixed_point(&i, &p, &f, &inv, &grid, &Options::default())?;
    if let Some(v) = verdicts.iter().find(|v| !v.conclusive) {
        return Ok(Err(format!(
            "at {}: Φ(I) = {}, I = {}, certain = {}",
            v.verdict.state, v.verdict.phi, v.verdict.inv, v.certain
        )));
    }
    for x in 1..=6i64 {
        for y in 1..=6i64 {
            let r = wp_eval(&i, &p, &f, &st(&[("x", x), ("y", y)]), &Options::default())?;
            let want = i.embed_int(2 * (x - 1) + y)?;
            if r.value != want || !r.exact {
                return Ok(Err(format!("x={x}, y={y}: wp = {} exact={}", r.value, r.exact)));
            }
        }
    }
    Ok(Ok("I is a fixed point with certain termination on [0,6]², wp(0) = 2(x-1)+y on [1,6]²".into()))
}

/// Cost of the online strategy, by direct simulation.
fn onl_cost(n: i64, y: i64) -> i64 {
    let (mut cost, mut v) = (0, 0);
    for _ in 0..n {
        v += 1;
        if v < y {
            cost += 1;
        } else {
            return cost + y;
        }
    }
    cost
}

/// Cheapest of: rent every day, or rent `k` days and then buy.
fn opt_cost(n: i64, y: i64) -> i64 {
    (0..n).map(|k| k + y).chain([n]).min().expect("nonempty")
}

fn ski_rental() -> Result<Outcome> {
    let (i, nd) = corpus("ski_nd");
    let (_, onl) = corpus("ski_onl");
    let formula = parse_weighting(&i, "[n = 0] int(0) (+) [0 < y] (int(2 * y - 1) (+) [n <= y - 1] int(n))")?;
    let mut problems = Vec::new();
    let mut formula_misses = Vec::new();
    for n in 0..=8i64 {
        for y in 0..=8i64 {
            let s = st(&[("n", n), ("y", y)]);
            let a = wp_eval(&i, &nd, &WeightingExpr::one(), &s, &Options::default())?;
            let b = wp_eval(&i, &onl, &WeightingExpr::one(), &s, &Options::default())?;
            if nat(&a.value) != Some(n.min(y) as u64) || !a.exact || nat(&a.value) != Some(opt_cost(n, y) as u64) {
                problems.push(format!("nd at n={n},y={y}: {}", a.value));
            }
            if nat(&b.value) != Some(onl_cost(n, y) as u64) || !b.exact {
                problems.push(format!("onl at n={n},y={y}: {} vs simulated {}", b.value, onl_cost(n, y)));
            }
            let claimed = formula.eval(&i, &s)?;
            if claimed != b.value {
                formula_misses.push(format!("n={n},y={y}: formula {claimed}, wp {}", b.value));
            }
            if n >= 1 && y >= 1 {
                let (Some(on), Some(op)) = (nat(&b.value), nat(&a.value)) else {
                    problems.push(format!("infinite cost at n={n},y={y}"));
                    continue;
                };
                let ratio = Rational64::new(on as i64, op as i64);
                if ratio > Rational64::from_integer(2) {
                    problems.push(format!("ratio {ratio} > 2 at n={n},y={y}"));
                }
                if n >= y && ratio != Rational64::from_integer(2) - Rational64::new(1, y) {
                    problems.push(format!("ratio {ratio} at n={n},y={y}, expected 2 - 1/{y}"));
                }
            }
        }
    }
    if !problems.is_empty() {
        return Ok(Err(problems.join("; ")));
    }
    if !formula_misses.is_empty() {
        return Ok(Err(format!(
            "wp(C_nd) = min(n,y) and ratios hold, but the closed form for C_onl disagrees at {} states: {}",
            formula_misses.len(),
            formula_misses.join("; ")
        )));
    }
    Ok(Ok("wp(C_nd) = min(n,y), wp(C_onl) = closed form on [0,8]², ratio ≤ 2 and = 2-1/y for n ≥ y".into()))
}

fn fib_iter(k: u64) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

fn path_counting() -> Result<Outcome> {
    let (i, p) = corpus("fib");
    let f = parse_weighting(&i, "[m <= 1] int(1)")?;
    let mut values = Vec::new();
    for n in 0..=10i64 {
        let s = st(&[("n", n)]);
        let r = wp_eval(&i, &p, &f, &s, &Options::default())?;
        let o = op_oracle(&i, &p, &s, &f, 200, 10_000_000)?;
        let want = ModuleValue::nat(fib_iter(n as u64 + 2));
        if r.value != want || !r.exact || o.value != want || !o.exact {
            return Ok(Err(format!(
                "n={n}: wp = {} ({}), op = {} ({}), fib(n+2) = {want}",
                r.value, r.exact, o.value, o.exact
            )));
        }
        values.push(r.value.to_string());
    }
    Ok(Ok(format!("wp = op = fib(n+2) for n in [0,10]: {}", values.join(" "))))
}

fn knapsack() -> Result<Outcome> {
    let (i, p) = corpus("knapsack");
    let f = parse_weighting(&i, "[t <= 6 and r >= 13] int(1)")?;
    let mut got = Vec::new();
    for (x, want) in [(0, 1), (8, 2), (13, 3)] {
        let s = st(&[("x", x)]);
        let r = wp_eval(&i, &p, &f, &s, &Options::default())?;
        let o = op_oracle(&i, &p, &s, &f, 100, 1_000_000)?;
        if r.value != ModuleValue::nat(want) || o.value != r.value || !r.exact || !o.exact {
            return Ok(Err(format!("x={x}: wp = {}, op = {}", r.value, o.value)));
        }
        got.push(format!("x={x}: {}", r.value));
    }
    Ok(Ok(got.join(", ")))
}

const SEED: u64 = 0x5eed;

/// Strictness, additivity, monotonicity and (commutative) homogeneity of wp
/// on random loop-free programs, and a non-homogeneity witness over words.
fn healthiness() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let names = ["counting", "tropical", "arctic", "prob", "lang:ab"];
    let opts = Options::default();
    let mut checks = 0usize;
    for name in names {
        let i = inst(name);
        for _ in 0..200 {
            let text = loop_free_text(&mut rng, &i, 4);
            let p = parse(&i, &text);
            let f = random_weighting(&mut rng, &i);
            let g = random_weighting(&mut rng, &i);
            let a = random_weight(&mut rng, &i);
            let s = random_state(&mut rng);
            let zero = |_: &State| Ok(i.mod_zero());
            let sum = |t: &State| Ok(i.mod_add(&f.eval(&i, t)?, &g.eval(&i, t)?)?);
            let scaled = |t: &State| Ok(i.scalar_mul(&a, &f.eval(&i, t)?)?);
            let wf = wp_eval(&i, &p, &f, &s, &opts)?.value;
            let wg = wp_eval(&i, &p, &g, &s, &opts)?.value;
            let wsum = wp_eval(&i, &p, &sum, &s, &opts)?.value;
            let fail = |law: &str| Ok(Err(format!("{law} fails over {name} at {s} for `{text}`")));
            if wp_eval(&i, &p, &zero, &s, &opts)?.value != i.mod_zero() {
                return fail("strictness");
            }
            if wsum != i.mod_add(&wf, &wg)? {
                return fail("additivity");
            }
            if !i.nat_leq(&wf, &wsum)? {
                return fail("monotonicity");
            }
            if i.is_commutative() && wp_eval(&i, &p, &scaled, &s, &opts)?.value != i.scalar_mul(&a, &wf)? {
                return fail("homogeneity");
            }
            checks += 1;
        }
    }
    let i = inst("lang:ab");
    let p = parse(&i, "weigh a");
    let b = i.parse_weight("b")?;
    let scaled = |_: &State| Ok(i.scalar_mul(&b, &i.mod_one())?);
    let lhs = wp_eval(&i, &p, &scaled, &State::new(), &opts)?.value;
    let rhs = i.scalar_mul(&b, &wp_eval(&i, &p, &WeightingExpr::one(), &State::new(), &opts)?.value)?;
    let report = format!("{checks} program/instance pairs; witness wp(b⊗1) = {lhs}, b⊗wp(1) = {rhs}");
    Ok(if lhs == i.parse_value("{ab}")? && rhs == i.parse_value("{ba}")? {
        Ok(report)
    } else {
        Err(report)
    })
}

const TOP_INSTANCES: [&str; 6] = ["boolean", "counting", "tropical", "arctic", "prob", "omegalang:ab"];

fn uct_soundness() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let opts = Options::default();
    for k in 0..50 {
        let i = inst(TOP_INSTANCES[k % TOP_INSTANCES.len()]);
        let text = uct_text(&mut rng, &i);
        let p = parse(&i, &text);
        let f = random_weighting(&mut rng, &i);
        let s = random_state(&mut rng);
        if !matches!(uct_check(&i, &p, &s, 100_000, 1_000_000)?, Uct::Certain { .. }) {
            return Ok(Err(format!("not certified UCT: `{text}`")));
        }
        let wp = wp_eval(&i, &p, &f, &s, &opts)?;
        let op = op_oracle(&i, &p, &s, &f, 1_000, 10_000_000)?;
        let wlp = wlp_eval(&i, &p, &f, &s, &opts)?;
        if !(wp.exact && op.exact && wlp.exact) || wp.value != op.value || wlp.value != wp.value {
            return Ok(Err(format!(
                "{i} at {s}, `{text}`: wp = {} ({}), op = {} ({}), wlp = {} ({})",
                wp.value, wp.exact, op.value, op.exact, wlp.value, wlp.exact
            )));
        }
    }
    Ok(Ok("50 random UCT programs: wp = op and wlp = wp, all exact".into()))
}

fn liberal_properties() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let opts = Options::with_fuel(32);
    let (mut tested, mut untested) = (0, 0);
    for k in 0..50 {
        let i = inst(TOP_INSTANCES[k % TOP_INSTANCES.len()]);
        let text = if rng.gen_bool(0.8) {
            looping_text(&mut rng, &i)
        } else {
            uct_text(&mut rng, &i)
        };
        let p = parse(&i, &text);
        let f = random_weighting(&mut rng, &i);
        let s = random_state(&mut rng);
        let chain = olp_chain(&i, &p, &s, 40, 1_000_000)?;
        for w in chain.windows(2) {
            if !i.nat_leq(&w[1], &w[0])? {
                return Ok(Err(format!("olp chain ascends at {s} for `{text}`: {} then {}", w[0], w[1])));
            }
        }
        let v = &check_decomposition(&i, &p, &f, std::slice::from_ref(&s), &opts)?[0];
        match v.holds() {
            Some(true) => tested += 1,
            Some(false) => {
                let (l, r) = v.sides.as_ref().expect("tested");
                return Ok(Err(format!("decomposition fails at {s} for `{text}` over {i}: {l} vs {r}")));
            }
            None => untested += 1,
        }
    }
    let report = format!("olp chains descend; decomposition holds on {tested} certified cases ({untested} uncertified)");
    Ok(if tested > 0 { Ok(report) } else { Err(report) })
}

fn algebra_laws() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    for name in INSTANCES {
        let i = inst(name);
        for _ in 0..1000 {
            let (u, v, w) = (random_value(&mut rng, &i), random_value(&mut rng, &i), random_value(&mut rng, &i));
            let (a, b, c) = (random_weight(&mut rng, &i), random_weight(&mut rng, &i), random_weight(&mut rng, &i));
            let add = |x: &ModuleValue, y: &ModuleValue| i.mod_add(x, y);
            let smul = |x: &wgcl::Weight, y: &ModuleValue| i.scalar_mul(x, y);
            let leq = |x: &ModuleValue, y: &ModuleValue| i.nat_leq(x, y);
            let laws: Vec<(&str, bool)> = vec![
                ("⊕ associative", add(&add(&u, &v)?, &w)? == add(&u, &add(&v, &w)?)?),
                ("⊕ commutative", add(&u, &v)? == add(&v, &u)?),
                ("𝟘 neutral", add(&u, &i.mod_zero())? == u),
                ("⊙ associative", i.mon_mul(&i.mon_mul(&a, &b)?, &c)? == i.mon_mul(&a, &i.mon_mul(&b, &c)?)?),
                ("𝟙 neutral", i.mon_mul(&a, &i.mon_one())? == a && i.mon_mul(&i.mon_one(), &a)? == a),
                ("action distributes", smul(&a, &add(&u, &v)?)? == add(&smul(&a, &u)?, &smul(&a, &v)?)?),
                ("action compatible", smul(&i.mon_mul(&a, &b)?, &u)? == smul(&a, &smul(&b, &u)?)?),
                ("unit action", smul(&i.mon_one(), &u)? == u),
                ("action strict", smul(&a, &i.mod_zero())? == i.mod_zero()),
                ("⊑ reflexive", leq(&u, &u)?),
                ("⊑ antisymmetric", !(leq(&u, &v)? && leq(&v, &u)?) || u == v),
                ("⊑ transitive", !(leq(&u, &v)? && leq(&v, &w)?) || leq(&u, &w)?),
                ("𝟘 least", leq(&i.mod_zero(), &u)?),
                ("⊕ inflationary", leq(&u, &add(&u, &v)?)?),
                ("⊕ monotone", !leq(&u, &v)? || leq(&add(&u, &w)?, &add(&v, &w)?)?),
                ("action monotone", !leq(&u, &v)? || leq(&smul(&a, &u)?, &smul(&a, &v)?)?),
                ("⊤ greatest", !i.has_top() || leq(&u, &i.top()?)?),
            ];
            if let Some((law, _)) = laws.iter().find(|(_, ok)| !ok) {
                return Ok(Err(format!("{law} fails over {name}: u={u}, v={v}, w={w}, a={a}, b={b}, c={c}")));
            }
        }
    }
    Ok(Ok(format!("1000 triples for each of {} instances", INSTANCES.len())))
}

/// Mixed languages over `{a}`: finite words `aⁱ` as `Some(i)`, `a^ω` as `None`.
type Mixed = BTreeSet<Option<usize>>;

/// Language-level concatenation, with `aⁱ · a^ω = a^ω`.
fn naive_concat(l: &Mixed, r: &Mixed) -> Mixed {
    let mut out = Mixed::new();
    for u in l {
        for v in r {
            out.insert(match (u, v) {
                (Some(i), Some(j)) => Some(i + j),
                _ => None,
            });
        }
    }
    out
}

fn cocontinuity_counterexample() -> Result<Outcome> {
    const DEPTH: usize = 10;
    // Lₙ = {aⁱ : i ≥ n}, observed on words of length at most DEPTH plus a
    // witness aⁿ, which keeps every Lₙ nonempty.
    let chain: Vec<Mixed> = (0..=DEPTH + 1)
        .map(|n| (n..=DEPTH.max(n)).map(Some).collect())
        .collect();
    let omega: Mixed = [None].into();
    let visible = |l: &Mixed| -> Mixed { l.iter().filter(|w| w.is_none_or(|i| i <= DEPTH)).copied().collect() };
    let meet = |ls: &[Mixed]| -> Mixed {
        ls.iter()
            .skip(1)
            .fold(ls[0].clone(), |acc, l| acc.intersection(l).copied().collect())
    };
    let lhs = naive_concat(&visible(&meet(&chain)), &omega);
    let products: Vec<Mixed> = chain.iter().map(|l| naive_concat(l, &omega)).collect();
    let rhs = meet(&products);
    let descending = chain.windows(2).all(|w| w[1].iter().all(|x| w[0].contains(x) || x.is_some_and(|i| i > DEPTH)));
    let report = format!("(⋂ Lₙ)·a^ω has {} words, ⋂(Lₙ·a^ω) = {{a^ω}}: {}", lhs.len(), rhs == omega);
    Ok(if descending && lhs.is_empty() && rhs == omega {
        Ok(report)
    } else {
        Err(report)
    })
}

fn main() {
    let criteria: Vec<(&str, fn() -> Result<Outcome>)> = vec![
        ("tropical conditional", tropical_conditional),
        ("divergence weighting", divergence_weighting),
        ("language example", language_example),
        ("divergent self-loop", divergence_opener),
        ("arctic bound", arctic_bound),
        ("ski rental", ski_rental),
        ("path counting", path_counting),
        ("knapsack", knapsack),
        ("healthiness", healthiness),
        ("UCT soundness", uct_soundness),
        ("liberal properties", liberal_properties),
        ("algebra laws", algebra_laws),
        ("cocontinuity counterexample", cocontinuity_counterexample),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = run().unwrap_or_else(|e| Err(format!("error: {e}")));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
