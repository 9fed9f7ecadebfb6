//! Abstract syntax of programs, guards and weighting expressions.

use std::sync::Arc;

use crate::algebra::{ModuleValue, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arith {
    Num(i64),
    Var(String),
    Neg(Box<Arith>),
    Add(Box<Arith>, Box<Arith>),
    Sub(Box<Arith>, Box<Arith>),
    Mul(Box<Arith>, Box<Arith>),
    Min(Box<Arith>, Box<Arith>),
    Max(Box<Arith>, Box<Arith>),
    Fib(Box<Arith>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoolExpr {
    True,
    False,
    Cmp(CmpOp, Arith, Arith),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn not(self) -> BoolExpr {
        BoolExpr::Not(Box::new(self))
    }
}

/// The argument of a `weigh` statement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WeightExpr {
    Lit(Weight),
    /// `int(e)`, only for instances that embed the integers.
    Embed(Arith),
}

/// A wGCL program. Children are shared so that residual programs built by the
/// operational semantics are cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Program {
    Assign(String, Arith),
    Seq(Arc<Program>, Arc<Program>),
    Ite(BoolExpr, Arc<Program>, Arc<Program>),
    While(BoolExpr, Arc<Program>),
    Branch(Arc<Program>, Arc<Program>),
    Weigh(WeightExpr),
}

impl Program {
    pub fn seq(a: Program, b: Program) -> Program {
        Program::Seq(Arc::new(a), Arc::new(b))
    }

    pub fn ite(b: BoolExpr, t: Program, e: Program) -> Program {
        Program::Ite(b, Arc::new(t), Arc::new(e))
    }

    pub fn while_loop(b: BoolExpr, body: Program) -> Program {
        Program::While(b, Arc::new(body))
    }

    pub fn branch(a: Program, b: Program) -> Program {
        Program::Branch(Arc::new(a), Arc::new(b))
    }

    pub fn is_loop_free(&self) -> bool {
        match self {
            Program::Assign(..) | Program::Weigh(_) => true,
            Program::While(..) => false,
            Program::Seq(a, b) | Program::Ite(_, a, b) | Program::Branch(a, b) => {
                a.is_loop_free() && b.is_loop_free()
            }
        }
    }

    /// Follows `path` through the children of each node: `0` is the first
    /// child (left of `;`, then-branch, loop body, left arm), `1` the second.
    pub fn subprogram(&self, path: &[usize]) -> Option<&Program> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(self);
        };
        let child = match (self, i) {
            (Program::Seq(a, _) | Program::Ite(_, a, _) | Program::Branch(a, _), 0) => a,
            (Program::Seq(_, b) | Program::Ite(_, _, b) | Program::Branch(_, b), 1) => b,
            (Program::While(_, body), 0) => body,
            _ => return None,
        };
        child.subprogram(rest)
    }
}

/// A guarded sum `Σᵢ [bᵢ] ⊙ tᵢ`. The empty sum denotes `𝟘`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightingExpr {
    pub summands: Vec<Summand>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    /// Conjoined; empty means unguarded.
    pub guards: Vec<BoolExpr>,
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Top,
    Embed(Arith),
    Lit(ModuleValue),
    Scale(WeightExpr, Box<Term>),
    Group(Box<WeightingExpr>),
}

impl WeightingExpr {
    pub fn term(term: Term) -> Self {
        WeightingExpr {
            summands: vec![Summand {
                guards: Vec::new(),
                term,
            }],
        }
    }

    pub fn zero() -> Self {
        Self::term(Term::Zero)
    }

    pub fn one() -> Self {
        Self::term(Term::One)
    }

    pub fn top() -> Self {
        Self::term(Term::Top)
    }
}
