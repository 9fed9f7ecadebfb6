//! Characteristic functions and the loop rules built on them.

use crate::algebra::{Approx, Instance, ModuleValue};
use crate::operational::{uct_check, Uct};
use crate::syntax::{BoolExpr, Program, State, Weighting};
use crate::{Error, Result};

use super::eval::{wlp_eval, wp_eval, Ctx, Direction, Options, WlpStrategy};

/// `Φ(X) = [¬φ] ⊙ f ⊕ [φ] ⊙ T⟦body⟧(X)` for `T` the transformer of `direction`.
pub struct CharacteristicFn<'a> {
    pub guard: &'a BoolExpr,
    pub body: &'a Program,
    pub post: &'a dyn Weighting,
    pub direction: Direction,
}

impl<'a> CharacteristicFn<'a> {
    /// The characteristic function of `lp`, which must be a loop.
    pub fn of_loop(lp: &'a Program, post: &'a dyn Weighting, direction: Direction) -> Result<Self> {
        match lp {
            Program::While(guard, body) => Ok(CharacteristicFn {
                guard,
                body,
                post,
                direction,
            }),
            _ => Err(Error::NotALoop),
        }
    }
}

/// `Φ(I)(s)`. Fails unless every inner loop evaluated exactly.
pub fn apply_char_fn(
    inst: &Instance,
    phi: &CharacteristicFn,
    inv: &dyn Weighting,
    s: &State,
    opts: &Options,
) -> Result<ModuleValue> {
    let ctx = Ctx::new(inst, phi.direction, opts)?;
    let post = |t: &State| -> Result<Approx> {
        Ok(Approx {
            value: phi.post.eval(inst, t)?,
            exact: true,
        })
    };
    let lookup = |t: &State| -> Result<Approx> {
        Ok(Approx {
            value: inv.eval(inst, t)?,
            exact: true,
        })
    };
    let r = ctx.phi(phi.guard, phi.body, &post, &lookup, s)?;
    if !r.exact {
        return Err(Error::Uncertified(format!(
            "an inner loop did not converge at {s}"
        )));
    }
    Ok(r.value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub state: State,
    /// `Φ(I)(s)`
    pub phi: ModuleValue,
    /// `I(s)`
    pub inv: ModuleValue,
    pub holds: bool,
}

fn check_each(
    inst: &Instance,
    lp: &Program,
    f: &dyn Weighting,
    inv: &dyn Weighting,
    states: &[State],
    opts: &Options,
    direction: Direction,
    holds: impl Fn(&ModuleValue, &ModuleValue) -> Result<bool>,
) -> Result<Vec<Verdict>> {
    let phi = CharacteristicFn::of_loop(lp, f, direction)?;
    states
        .iter()
        .map(|s| {
            let lhs = apply_char_fn(inst, &phi, inv, s, opts)?;
            let rhs = inv.eval(inst, s)?;
            Ok(Verdict {
                holds: holds(&lhs, &rhs)?,
                state: s.clone(),
                phi: lhs,
                inv: rhs,
            })
        })
        .collect()
}

/// `Φ_f(I) ⊑ I` per state; if it holds everywhere, `wp ⊑ I` by Park induction.
pub fn check_superinvariant(
    inst: &Instance,
    lp: &Program,
    f: &dyn Weighting,
    inv: &dyn Weighting,
    states: &[State],
    opts: &Options,
) -> Result<Vec<Verdict>> {
    check_each(inst, lp, f, inv, states, opts, Direction::Wp, |phi, i| {
        Ok(inst.nat_leq(phi, i)?)
    })
}

/// `I ⊑ Φ̃_f(I)` per state; if it holds everywhere, `I ⊑ wlp`.
pub fn check_subinvariant(
    inst: &Instance,
    lp: &Program,
    f: &dyn Weighting,
    inv: &dyn Weighting,
    states: &[State],
    opts: &Options,
) -> Result<Vec<Verdict>> {
    check_each(
        inst,
        lp,
        f,
        inv,
        states,
        opts,
        Direction::Wlp(opts.wlp_mode),
        |phi, i| Ok(inst.nat_leq(i, phi)?),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointVerdict {
    pub verdict: Verdict,
    /// The loop terminates certainly from this state.
    pub certain: bool,
    /// `wp = wlp = I` here: a fixed point at a certainly terminating state.
    pub conclusive: bool,
}

/// `Φ_f(I) = I` per state, plus certain termination; where both hold,
/// `I` is the loop's `wp` and `wlp` at that state.
pub fn check_fixed_point(
    inst: &Instance,
    lp: &Program,
    f: &dyn Weighting,
    inv: &dyn Weighting,
    states: &[State],
    opts: &Options,
) -> Result<Vec<FixedPointVerdict>> {
    let verdicts = check_each(inst, lp, f, inv, states, opts, Direction::Wp, |phi, i| {
        Ok(phi == i)
    })?;
    verdicts
        .into_iter()
        .map(|v| {
            let certain = matches!(
                uct_check(inst, lp, &v.state, opts.budget, opts.budget)?,
                Uct::Certain { .. }
            );
            Ok(FixedPointVerdict {
                conclusive: certain && v.holds,
                certain,
                verdict: v,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionVerdict {
    pub state: State,
    /// `wlp(f)(s)` and `wp(f)(s) ⊕ wlp(𝟘)(s)`, when both are exact.
    pub sides: Option<(ModuleValue, ModuleValue)>,
}

impl DecompositionVerdict {
    /// `None` when untested.
    pub fn holds(&self) -> Option<bool> {
        self.sides.as_ref().map(|(l, r)| l == r)
    }
}

/// `wlp(f) = wp(f) ⊕ wlp(𝟘)` per state. Both `wlp` values come from the
/// descending iteration so that the two sides are computed independently.
pub fn check_decomposition(
    inst: &Instance,
    program: &Program,
    f: &dyn Weighting,
    states: &[State],
    opts: &Options,
) -> Result<Vec<DecompositionVerdict>> {
    let chain = Options {
        strategy: WlpStrategy::Chain,
        ..*opts
    };
    let zero = |_: &State| -> Result<ModuleValue> { Ok(inst.mod_zero()) };
    states
        .iter()
        .map(|s| {
            let lhs = wlp_eval(inst, program, f, s, &chain)?;
            let wp = wp_eval(inst, program, f, s, opts)?;
            let wlp0 = wlp_eval(inst, program, &zero, s, &chain)?;
            let sides = (lhs.exact && wp.exact && wlp0.exact)
                .then(|| Ok::<_, Error>((lhs.value, inst.mod_add(&wp.value, &wlp0.value)?)))
                .transpose()?;
            Ok(DecompositionVerdict {
                state: s.clone(),
                sides,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_program, parse_weighting, WeightingExpr};

    fn load(src: &str) -> (Instance, Program) {
        let p = parse_program(src).unwrap();
        (p.instance, p.program)
    }

    fn grid(xs: std::ops::RangeInclusive<i64>, ys: std::ops::RangeInclusive<i64>, x: &str, y: &str) -> Vec<State> {
        xs.flat_map(|a| ys.clone().map(move |b| State::from_pairs([(x, a), (y, b)])))
            .collect()
    }

    const ARCTIC: &str = "@instance arctic\nwhile(x>0 and y>0){ {x := x-1; y := y+1} [] {y := y-1}; weigh 1 }";
    const ARCTIC_INV: &str = "[not (x>0 and y>0)] int(0) (+) [x>0 and y>0] int(2*(x-1)+y)";

    #[test]
    fn arctic_invariant_is_fixed() {
        let (i, p) = load(ARCTIC);
        let f = parse_weighting(&i, "int(0)").unwrap();
        let inv = parse_weighting(&i, ARCTIC_INV).unwrap();
        let phi = CharacteristicFn::of_loop(&p, &f, Direction::Wp).unwrap();
        let s = State::parse("x=2,y=1").unwrap();
        let v = apply_char_fn(&i, &phi, &inv, &s, &Options::default()).unwrap();
        assert_eq!(v, i.embed_int(3).unwrap());
        let verdicts = check_fixed_point(&i, &p, &f, &inv, &grid(0..=3, 0..=3, "x", "y"), &Options::default()).unwrap();
        assert!(verdicts.iter().all(|v| v.conclusive));
    }

    #[test]
    fn guard_false_returns_post() {
        let (i, p) = load(ARCTIC);
        let f = parse_weighting(&i, "7").unwrap();
        let phi = CharacteristicFn::of_loop(&p, &f, Direction::Wp).unwrap();
        let v = apply_char_fn(&i, &phi, &WeightingExpr::zero(), &State::new(), &Options::default()).unwrap();
        assert_eq!(v, i.embed_int(7).unwrap());
    }

    #[test]
    fn zero_and_top_invariants() {
        let (i, p) = load("@instance counting\nm := 0; c := 0; while(n>0){ n := n-1; {c := 0} [] {c := c+1; m := max(m,c)} }");
        let lp = p.subprogram(&[1, 1]).unwrap();
        let f = parse_weighting(&i, "[m<=1] int(1)").unwrap();
        let states = [State::parse("n=1").unwrap(), State::new()];
        let sub = check_subinvariant(&i, lp, &f, &WeightingExpr::zero(), &states, &Options::default()).unwrap();
        assert!(sub.iter().all(|v| v.holds));
        let sup = check_superinvariant(&i, lp, &f, &WeightingExpr::zero(), &states, &Options::default()).unwrap();
        // Φ(𝟘) is 𝟘 inside the loop and `f` at the exit.
        assert!(sup[0].holds);
        assert!(!sup[1].holds);
        let top = check_subinvariant(&i, lp, &f, &WeightingExpr::top(), &states, &Options::default()).unwrap();
        assert!(top.iter().all(|v| v.holds == (v.phi == i.top().unwrap())));
    }

    #[test]
    fn not_a_loop() {
        let (i, p) = load("@instance counting\nx := 1; skip");
        let f = WeightingExpr::one();
        assert_eq!(
            check_fixed_point(&i, &p, &f, &f, &[State::new()], &Options::default()),
            Err(Error::NotALoop)
        );
    }

    #[test]
    fn skip_loop_subinvariant() {
        let (i, p) = load("@instance tropical\nwhile(x=2){ {x := 3; weigh 5} [] {skip} }");
        let f = parse_weighting(&i, "int(0)").unwrap();
        let v = check_subinvariant(&i, &p, &f, &f, &[State::parse("x=2").unwrap()], &Options::default()).unwrap();
        assert!(v[0].holds);
    }

    #[test]
    fn decomposition_on_divergent_loop() {
        let (i, p) = load("@instance tropical\nwhile(x=2){ {x := 3; weigh 5} [] {skip} }");
        let f = parse_weighting(&i, "int(1)").unwrap();
        let v = check_decomposition(&i, &p, &f, &[State::parse("x=2").unwrap()], &Options::default()).unwrap();
        assert_eq!(v[0].holds(), Some(true));
        assert_eq!(v[0].sides.as_ref().unwrap().0, ModuleValue::nat(0));
    }
}
