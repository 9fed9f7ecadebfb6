//! Concrete syntax, abstract syntax, states and weighting expressions.
//!
//! A program file starts with `@instance <name>` and contains one program:
//!
//! ```text
//! C ::= x := E | C; C | if (B) {C} [else {C}] | while (B) {C}
//!     | {C} [] {C} | {C} [w] (+) [w] {C} | weigh w | weigh a^E | skip | {C}
//! ```
//!
//! Weighting expressions are guarded sums `[B] t (+) [B] t ...` whose terms are
//! `zero`, `one`, `top`, `int(E)` (or a bare `E` where integers embed), module
//! literals such as `inf`, `1/2`, `{a, ba, b(ab)^ω}`, `w (*) t` and `(f)`.

mod ast;
mod eval;
mod lexer;
mod parser;
mod printer;
mod state;
mod weighting;

pub use ast::{Arith, BoolExpr, CmpOp, Program, Summand, Term, WeightExpr, WeightingExpr};
pub use eval::{eval_arith, eval_bool, eval_weight, eval_weighting, fib};
pub use parser::{
    parse_arith, parse_bool, parse_program, parse_program_with, parse_weighting, ParsedProgram,
};
pub use printer::{print_file, print_program};
pub use state::State;
pub use weighting::{Tabulated, Weighting};
