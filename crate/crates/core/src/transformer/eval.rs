//! `wp` and `wlp` by structural recursion, loops by fixed-point iteration.

use std::cell::{Cell, RefCell};
use std::collections::HashMap;

use crate::algebra::{Approx, Instance, ModuleValue};
use crate::operational::{diverging_weights, uct_check, Uct, DEFAULT_BUDGET, DEFAULT_FUEL};
use crate::syntax::{eval_arith, eval_bool, eval_weight, BoolExpr, Program, State, Weighting};
use crate::{AlgebraError, Error, Result};

/// Which fixed point a loop denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Least fixed point, iterated up from `𝟘`.
    Wp,
    Wlp(WlpMode),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum WlpMode {
    /// Greatest fixed point, iterated down from `⊤`.
    #[default]
    Gfp,
    /// Greatest fixed point below the constant `𝟙`, iterated down from `𝟙`.
    GfpLeqOne,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum WlpStrategy {
    /// Chain first; if that is inexact, try `wp ⊕ wlp(𝟘)` with `wlp(𝟘)` from
    /// the divergence analysis.
    #[default]
    Auto,
    /// Only the descending iteration.
    Chain,
    /// Only `wp ⊕ wlp(𝟘)`.
    Lasso,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Maximal number of body unrollings per loop evaluation.
    pub fuel: usize,
    /// Cap on states per loop table, on total body evaluations, and on nodes
    /// and path length in the termination check.
    pub budget: usize,
    pub wlp_mode: WlpMode,
    pub strategy: WlpStrategy,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            fuel: DEFAULT_FUEL,
            budget: DEFAULT_BUDGET,
            wlp_mode: WlpMode::Gfp,
            strategy: WlpStrategy::Auto,
        }
    }
}

impl Options {
    pub fn with_fuel(fuel: usize) -> Self {
        Options {
            fuel,
            ..Options::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformResult {
    pub value: ModuleValue,
    /// Set only when certified: a fixed point on a closed table, certain
    /// termination, or an exact divergence analysis.
    pub exact: bool,
    pub iterations: usize,
    pub touched_states: usize,
}

pub(crate) type Cont<'c> = &'c dyn Fn(&State) -> Result<Approx>;

pub(crate) struct Ctx<'a> {
    pub inst: &'a Instance,
    pub dir: Direction,
    pub fuel: usize,
    pub budget: usize,
    pub iterations: Cell<usize>,
    pub touched: Cell<usize>,
    work: Cell<usize>,
}

impl<'a> Ctx<'a> {
    pub fn new(inst: &'a Instance, dir: Direction, opts: &Options) -> Result<Self> {
        if dir == Direction::Wlp(WlpMode::Gfp) && !inst.has_top() {
            return Err(AlgebraError::NoTop(inst.to_string()).into());
        }
        Ok(Ctx {
            inst,
            dir,
            fuel: opts.fuel,
            budget: opts.budget,
            iterations: Cell::new(0),
            touched: Cell::new(0),
            work: Cell::new(0),
        })
    }

    fn seed(&self) -> Result<ModuleValue> {
        Ok(match self.dir {
            Direction::Wp => self.inst.mod_zero(),
            Direction::Wlp(WlpMode::Gfp) => self.inst.top()?,
            Direction::Wlp(WlpMode::GfpLeqOne) => self.inst.mod_one(),
        })
    }

    fn tick(&self) -> Result<()> {
        let w = self.work.get() + 1;
        self.work.set(w);
        if w > self.budget {
            return Err(Error::Budget(self.budget));
        }
        Ok(())
    }

    /// `T⟦p⟧(k)(s)` with the post-weighting given as a continuation.
    pub fn eval(&self, p: &Program, k: Cont, s: &State) -> Result<Approx> {
        match p {
            Program::Assign(x, e) => k(&s.update(x, eval_arith(e, s))),
            Program::Weigh(w) => {
                let a = eval_weight(w, self.inst, s)?;
                let r = k(s)?;
                Ok(Approx {
                    value: self.inst.scalar_mul(&a, &r.value)?,
                    exact: r.exact,
                })
            }
            Program::Seq(a, b) => self.eval(a, &|t: &State| self.eval(b, k, t), s),
            Program::Ite(g, t, e) => {
                if eval_bool(g, s) {
                    self.eval(t, k, s)
                } else {
                    self.eval(e, k, s)
                }
            }
            Program::Branch(a, b) => {
                let l = self.eval(a, k, s)?;
                let r = self.eval(b, k, s)?;
                Ok(Approx {
                    value: self.inst.mod_add(&l.value, &r.value)?,
                    exact: l.exact && r.exact,
                })
            }
            Program::While(g, body) => self.eval_loop(g, body, k, s),
        }
    }

    /// One application of the characteristic function at `s`, with `x` read
    /// through `lookup`.
    pub fn phi(
        &self,
        g: &BoolExpr,
        body: &Program,
        k: Cont,
        lookup: Cont,
        s: &State,
    ) -> Result<Approx> {
        if eval_bool(g, s) {
            self.tick()?;
            self.eval(body, lookup, s)
        } else {
            k(s)
        }
    }

    /// Iterates `Φ` from the seed on a table of loop-head states.
    ///
    /// The table is discovered breadth-first (by number of unrollings) up to
    /// depth `fuel`, so after `fuel + 1` rounds the value at `s` is exactly
    /// `Φ^(fuel+1)(seed)(s)`. If discovery closed the table and a round
    /// changes nothing, the table holds the fixed point itself.
    fn eval_loop(&self, g: &BoolExpr, body: &Program, k: Cont, s: &State) -> Result<Approx> {
        if !eval_bool(g, s) {
            return k(s);
        }
        let seed = self.seed()?;
        let index: RefCell<HashMap<State, usize>> = RefCell::new(HashMap::from([(s.clone(), 0)]));
        let states: RefCell<Vec<State>> = RefCell::new(vec![s.clone()]);
        let record = |t: &State| -> Result<Approx> {
            let mut idx = index.borrow_mut();
            if !idx.contains_key(t) {
                let mut st = states.borrow_mut();
                idx.insert(t.clone(), st.len());
                st.push(t.clone());
            }
            Ok(Approx {
                value: seed.clone(),
                exact: true,
            })
        };

        // Round 1 doubles as discovery: Φ(seed) at every state within reach.
        let mut values: Vec<Option<ModuleValue>> = Vec::new();
        let mut exact = true;
        let mut expanded = 0usize;
        let mut closed = false;
        let mut depth_end = 1usize;
        for _ in 0..=self.fuel {
            let layer = expanded..depth_end;
            for i in layer {
                let t = states.borrow()[i].clone();
                let r = self.phi(g, body, k, &record, &t)?;
                exact &= r.exact;
                values.push(Some(r.value));
            }
            expanded = depth_end;
            depth_end = states.borrow().len();
            if depth_end > self.budget {
                return Err(Error::Budget(self.budget));
            }
            if depth_end == expanded {
                closed = true;
                break;
            }
        }
        let states = states.into_inner();
        let index = index.into_inner();
        // States first seen at the last depth keep the seed.
        values.resize(states.len(), None);
        self.touched.set(self.touched.get() + states.len());
        self.iterations.set(self.iterations.get() + 1);

        let read = |vals: &[Option<ModuleValue>], t: &State| -> ModuleValue {
            index
                .get(t)
                .and_then(|&i| vals[i].clone())
                .unwrap_or_else(|| seed.clone())
        };
        let mut changed = values.iter().any(|v| v.as_ref().is_some_and(|v| *v != seed));
        let mut rounds = 1;
        while rounds <= self.fuel && (changed || !closed || !exact) {
            let prev = values.clone();
            let lookup = |t: &State| -> Result<Approx> {
                Ok(Approx {
                    value: read(&prev, t),
                    exact: true,
                })
            };
            let mut round_exact = true;
            changed = false;
            for i in 0..expanded {
                let r = self.phi(g, body, k, &lookup, &states[i])?;
                round_exact &= r.exact;
                if prev[i].as_ref() != Some(&r.value) {
                    changed = true;
                }
                values[i] = Some(r.value);
            }
            exact = round_exact;
            rounds += 1;
            self.iterations.set(self.iterations.get() + 1);
        }
        Ok(Approx {
            value: values[0].clone().expect("start state is expanded"),
            exact: closed && exact && !changed,
        })
    }
}

fn run(
    inst: &Instance,
    program: &Program,
    f: &dyn Weighting,
    s: &State,
    dir: Direction,
    opts: &Options,
) -> Result<TransformResult> {
    let ctx = Ctx::new(inst, dir, opts)?;
    let post = |t: &State| -> Result<Approx> {
        Ok(Approx {
            value: f.eval(inst, t)?,
            exact: true,
        })
    };
    let mut r = ctx.eval(program, &post, s)?;
    if !r.exact {
        if let Uct::Certain { .. } = uct_check(inst, program, s, opts.budget, opts.budget)? {
            r.exact = true;
        }
    }
    Ok(TransformResult {
        value: r.value,
        exact: r.exact,
        iterations: ctx.iterations.get(),
        touched_states: ctx.touched.get(),
    })
}

/// `wp⟦program⟧(f)(s)`.
pub fn wp_eval(
    inst: &Instance,
    program: &Program,
    f: &dyn Weighting,
    s: &State,
    opts: &Options,
) -> Result<TransformResult> {
    run(inst, program, f, s, Direction::Wp, opts)
}

/// `wlp⟦program⟧(f)(s)` per `opts.wlp_mode` and `opts.strategy`.
pub fn wlp_eval(
    inst: &Instance,
    program: &Program,
    f: &dyn Weighting,
    s: &State,
    opts: &Options,
) -> Result<TransformResult> {
    let dir = Direction::Wlp(opts.wlp_mode);
    match opts.strategy {
        WlpStrategy::Chain => run(inst, program, f, s, dir, opts),
        WlpStrategy::Lasso => lasso(inst, program, f, s, opts),
        WlpStrategy::Auto => {
            let chain = run(inst, program, f, s, dir, opts)?;
            if chain.exact || opts.wlp_mode != WlpMode::Gfp {
                return Ok(chain);
            }
            match lasso(inst, program, f, s, opts) {
                Ok(r) if r.exact => Ok(r),
                Ok(_) | Err(Error::Unsupported(_) | Error::Budget(_)) => Ok(chain),
                Err(e) => Err(e),
            }
        }
    }
}

/// `wp(f) ⊕ wlp(𝟘)`, with `wlp(𝟘)` computed from the reachable quotient.
fn lasso(
    inst: &Instance,
    program: &Program,
    f: &dyn Weighting,
    s: &State,
    opts: &Options,
) -> Result<TransformResult> {
    if opts.wlp_mode != WlpMode::Gfp {
        return Err(Error::Unsupported(
            "the divergence decomposition needs the plain greatest fixed point".into(),
        ));
    }
    let wp = wp_eval(inst, program, f, s, opts)?;
    let olp = diverging_weights(inst, program, s, opts.budget)?;
    Ok(TransformResult {
        value: inst.mod_add(&wp.value, &olp)?,
        ..wp
    })
}
