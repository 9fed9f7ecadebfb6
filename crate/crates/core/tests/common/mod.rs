//! Random programs, states and weightings shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use wgcl::algebra::{Instance, ModuleValue, Weight};
use wgcl::syntax::{parse_program_with, Program, State, Tabulated};

pub const INSTANCES: &[&str] = &[
    "boolean",
    "counting",
    "tropical",
    "arctic",
    "prob",
    "lang:ab",
    "omegalang:ab",
];

pub fn inst(name: &str) -> Instance {
    name.parse().expect("known instance")
}

fn pick<'a, R: Rng>(rng: &mut R, xs: &[&'a str]) -> &'a str {
    xs.choose(rng).expect("nonempty")
}

fn weight_texts(i: &Instance) -> &'static [&'static str] {
    match i {
        Instance::Boolean => &["true", "false"],
        Instance::Counting => &["0", "1", "2", "3", "inf"],
        Instance::Tropical => &["0", "1", "2", "4", "inf"],
        Instance::Arctic => &["0", "1", "3", "-inf", "inf"],
        Instance::Probability => &["0", "1", "1/2", "1/3", "2/3", "1/4"],
        Instance::Lang(_) | Instance::OmegaLang(_) => &["a", "b", "ab", "ba", "eps", "aab"],
    }
}

fn value_texts(i: &Instance) -> &'static [&'static str] {
    match i {
        Instance::Boolean => &["true", "false"],
        Instance::Counting | Instance::Tropical => &["0", "1", "2", "5", "inf"],
        Instance::Arctic => &["-inf", "0", "1", "4", "inf"],
        Instance::Probability => &["0", "1/2", "1", "3/2", "2", "inf"],
        Instance::Lang(_) => &["{}", "{eps}", "{a}", "{b, ab}", "{ba, aab}", "{eps, a, b}"],
        Instance::OmegaLang(_) => &[
            "{}",
            "{eps}",
            "{a, ba}",
            "{(a)^w}",
            "{b(ab)^w, b}",
            "{aΣ^∞}",
            "{Σ^∞}",
            "{bΣ^∞, (a)^w, ab}",
        ],
    }
}

pub fn random_weight<R: Rng>(rng: &mut R, i: &Instance) -> Weight {
    i.parse_weight(pick(rng, weight_texts(i))).expect("pool literal")
}

/// A random value; for languages, a union of up to three pool literals.
pub fn random_value<R: Rng>(rng: &mut R, i: &Instance) -> ModuleValue {
    let pool = value_texts(i);
    let mut v = i.parse_value(pick(rng, pool)).expect("pool literal");
    if i.alphabet().is_some() {
        for _ in 0..rng.gen_range(0..3) {
            let u = i.parse_value(pick(rng, pool)).expect("pool literal");
            v = i.mod_add(&v, &u).expect("same instance");
        }
    }
    v
}

pub fn random_state<R: Rng>(rng: &mut R) -> State {
    State::from_pairs([("x", rng.gen_range(-1..=3)), ("y", rng.gen_range(-1..=3))])
}

/// Random values on the states with `x, y ∈ [-1, 3]`, a random default elsewhere.
pub fn random_weighting<R: Rng>(rng: &mut R, i: &Instance) -> Tabulated {
    let mut t = Tabulated::new(random_value(rng, i));
    for x in -1..=3 {
        for y in -1..=3 {
            if rng.gen_bool(0.7) {
                t.insert(State::from_pairs([("x", x), ("y", y)]), random_value(rng, i));
            }
        }
    }
    t
}

fn guard<R: Rng>(rng: &mut R) -> &'static str {
    pick(
        rng,
        &[
            "x > 0",
            "y = 1",
            "x < y",
            "not (x = 0)",
            "x > 0 and y > 0",
            "x = 1 or y < 0",
            "true",
        ],
    )
}

fn assignment<R: Rng>(rng: &mut R) -> String {
    let var = pick(rng, &["x", "y"]);
    let e = pick(rng, &["x + 1", "x - 1", "y", "0", "x + y", "2 * y", "-x", "max(x, y)"]);
    format!("{var} := {e}")
}

/// Loop-free program text over `x` and `y`.
pub fn loop_free_text<R: Rng>(rng: &mut R, i: &Instance, depth: usize) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 | 1 => assignment(rng),
            2 => format!("weigh {}", pick(rng, weight_texts(i))),
            _ => "skip".to_string(),
        };
    }
    let a = loop_free_text(rng, i, depth - 1);
    let b = loop_free_text(rng, i, depth - 1);
    match rng.gen_range(0..3) {
        0 => format!("{{ {a} }}; {{ {b} }}"),
        1 => format!("if ({}) {{ {a} }} else {{ {b} }}", guard(rng)),
        _ => format!("{{ {a} }} [] {{ {b} }}"),
    }
}

/// Loops counting `n` down from a constant: universally certainly terminating.
pub fn uct_text<R: Rng>(rng: &mut R, i: &Instance) -> String {
    let pre = loop_free_text(rng, i, 2);
    let body = loop_free_text(rng, i, 3);
    let post = loop_free_text(rng, i, 2);
    let k = rng.gen_range(0..=3);
    let mut text = format!("{pre}; n := {k}; while (n > 0) {{ n := n - 1; {body} }}; {post}");
    if rng.gen_bool(0.3) {
        let inner = loop_free_text(rng, i, 2);
        text = format!("{text}; m := {}; while (m > 0) {{ {inner}; m := m - 1 }}", rng.gen_range(0..=2));
    }
    text
}

/// Loops over a finite state space that may run forever.
pub fn looping_text<R: Rng>(rng: &mut R, i: &Instance) -> String {
    let pre = loop_free_text(rng, i, 2);
    let w = pick(rng, weight_texts(i));
    let other = pick(rng, &["skip", "y := 1 - y", "weigh a"]);
    let other = if other == "weigh a" {
        format!("weigh {}", pick(rng, weight_texts(i)))
    } else {
        other.to_string()
    };
    let lp = match rng.gen_range(0..3) {
        0 => format!("while (x > 0) {{ {{ x := x - 1 }} [] {{ {other} }}; weigh {w} }}"),
        1 => format!("while (y = 1) {{ {{ y := 0 }} [] {{ weigh {w} }} }}"),
        _ => format!("while (x > 0 and y > 0) {{ {{ x := x - 1; weigh {w} }} [] {{ {other} }} }}"),
    };
    format!("x := max(0, min(x, 3)); {pre}; x := min(x, 4); {lp}")
}

pub fn parse(i: &Instance, text: &str) -> Program {
    parse_program_with(text, Some(i))
        .unwrap_or_else(|e| panic!("generated program does not parse: {e}\n{text}"))
        .program
}
