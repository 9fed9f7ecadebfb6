//! Weightings: functions from states to module values.

use std::collections::HashMap;

use super::ast::{Term, WeightingExpr};
use super::eval::eval_weighting;
use super::state::State;
use crate::algebra::{Instance, ModuleValue};
use crate::Result;

pub trait Weighting {
    fn eval(&self, inst: &Instance, s: &State) -> Result<ModuleValue>;

    /// True only if the weighting is `𝟘` everywhere; `false` is always safe.
    fn is_constant_zero(&self) -> bool {
        false
    }
}

impl Weighting for WeightingExpr {
    fn eval(&self, inst: &Instance, s: &State) -> Result<ModuleValue> {
        eval_weighting(self, inst, s)
    }

    fn is_constant_zero(&self) -> bool {
        fn term_zero(t: &Term) -> bool {
            match t {
                Term::Zero => true,
                Term::Scale(_, t) => term_zero(t),
                Term::Group(f) => f.is_constant_zero(),
                _ => false,
            }
        }
        self.summands.iter().all(|s| term_zero(&s.term))
    }
}

/// Finitely many explicit values plus a default elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tabulated {
    pub table: HashMap<State, ModuleValue>,
    pub default: ModuleValue,
}

impl Tabulated {
    pub fn new(default: ModuleValue) -> Self {
        Tabulated {
            table: HashMap::new(),
            default,
        }
    }

    pub fn insert(&mut self, s: State, v: ModuleValue) {
        self.table.insert(s, v);
    }
}

impl Weighting for Tabulated {
    fn eval(&self, _inst: &Instance, s: &State) -> Result<ModuleValue> {
        Ok(self.table.get(s).unwrap_or(&self.default).clone())
    }
}

impl<F> Weighting for F
where
    F: Fn(&State) -> Result<ModuleValue>,
{
    fn eval(&self, _inst: &Instance, s: &State) -> Result<ModuleValue> {
        self(s)
    }
}
