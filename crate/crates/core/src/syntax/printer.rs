//! Pretty printer. Output parses back to the same AST.

use std::fmt::{self, Write};

use super::ast::{Arith, BoolExpr, Program, Summand, Term, WeightExpr, WeightingExpr};
use crate::algebra::{Instance, Weight};

fn arith_level(e: &Arith) -> u8 {
    match e {
        Arith::Add(..) | Arith::Sub(..) => 1,
        Arith::Mul(..) => 2,
        _ => 3,
    }
}

fn write_arith(out: &mut String, e: &Arith, min_level: u8) {
    if arith_level(e) < min_level {
        out.push('(');
        write_arith(out, e, 1);
        out.push(')');
        return;
    }
    let bin = |out: &mut String, a: &Arith, op: &str, b: &Arith, l: u8| {
        write_arith(out, a, l);
        let _ = write!(out, " {op} ");
        write_arith(out, b, l + 1);
    };
    match e {
        Arith::Num(n) => {
            let _ = write!(out, "{n}");
        }
        Arith::Var(x) => out.push_str(x),
        Arith::Neg(a) => {
            out.push_str("-(");
            write_arith(out, a, 1);
            out.push(')');
        }
        Arith::Add(a, b) => bin(out, a, "+", b, 1),
        Arith::Sub(a, b) => bin(out, a, "-", b, 1),
        Arith::Mul(a, b) => bin(out, a, "*", b, 2),
        Arith::Min(a, b) | Arith::Max(a, b) => {
            out.push_str(if matches!(e, Arith::Min(..)) { "min(" } else { "max(" });
            write_arith(out, a, 1);
            out.push_str(", ");
            write_arith(out, b, 1);
            out.push(')');
        }
        Arith::Fib(a) => {
            out.push_str("fib(");
            write_arith(out, a, 1);
            out.push(')');
        }
    }
}

fn bool_level(b: &BoolExpr) -> u8 {
    match b {
        BoolExpr::Or(..) => 1,
        BoolExpr::And(..) => 2,
        _ => 3,
    }
}

fn write_bool(out: &mut String, b: &BoolExpr, min_level: u8) {
    if bool_level(b) < min_level {
        out.push('(');
        write_bool(out, b, 1);
        out.push(')');
        return;
    }
    match b {
        BoolExpr::True => out.push_str("true"),
        BoolExpr::False => out.push_str("false"),
        BoolExpr::Cmp(op, l, r) => {
            write_arith(out, l, 1);
            let _ = write!(out, " {} ", op.symbol());
            write_arith(out, r, 1);
        }
        BoolExpr::Not(a) => {
            out.push_str("not ");
            if matches!(**a, BoolExpr::True | BoolExpr::False | BoolExpr::Not(_)) {
                write_bool(out, a, 3);
            } else {
                out.push('(');
                write_bool(out, a, 1);
                out.push(')');
            }
        }
        BoolExpr::And(a, c) => {
            write_bool(out, a, 2);
            out.push_str(" and ");
            write_bool(out, c, 3);
        }
        BoolExpr::Or(a, c) => {
            write_bool(out, a, 1);
            out.push_str(" or ");
            write_bool(out, c, 2);
        }
    }
}

fn write_weight(out: &mut String, w: &WeightExpr) {
    match w {
        WeightExpr::Lit(Weight::Word(word)) if word.is_empty() => out.push_str("eps"),
        WeightExpr::Lit(w) => {
            let _ = write!(out, "{w}");
        }
        WeightExpr::Embed(e) => {
            out.push_str("int(");
            write_arith(out, e, 1);
            out.push(')');
        }
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn write_block(out: &mut String, p: &Program, depth: usize) {
    out.push_str("{\n");
    write_program(out, p, depth + 1);
    out.push('\n');
    indent(out, depth);
    out.push('}');
}

fn write_program(out: &mut String, p: &Program, depth: usize) {
    match p {
        Program::Seq(a, b) => {
            if matches!(**a, Program::Seq(..)) {
                indent(out, depth);
                write_block(out, a, depth);
            } else {
                write_program(out, a, depth);
            }
            out.push_str(";\n");
            write_program(out, b, depth);
        }
        _ => {
            indent(out, depth);
            write_stmt(out, p, depth);
        }
    }
}

fn write_stmt(out: &mut String, p: &Program, depth: usize) {
    match p {
        Program::Assign(x, e) => {
            let _ = write!(out, "{x} := ");
            write_arith(out, e, 1);
        }
        Program::Weigh(w) => {
            out.push_str("weigh ");
            write_weight(out, w);
        }
        Program::Ite(b, t, e) => {
            out.push_str("if (");
            write_bool(out, b, 1);
            out.push_str(") ");
            write_block(out, t, depth);
            out.push_str(" else ");
            write_block(out, e, depth);
        }
        Program::While(b, body) => {
            out.push_str("while (");
            write_bool(out, b, 1);
            out.push_str(") ");
            write_block(out, body, depth);
        }
        Program::Branch(a, b) => {
            write_block(out, a, depth);
            out.push_str(" [] ");
            write_block(out, b, depth);
        }
        Program::Seq(..) => write_block(out, p, depth),
    }
}

pub fn print_program(p: &Program) -> String {
    let mut out = String::new();
    write_program(&mut out, p, 0);
    out
}

/// A complete program file, pragma included.
pub fn print_file(instance: &Instance, p: &Program) -> String {
    format!("@instance {instance}\n{}\n", print_program(p))
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_program(self))
    }
}

impl fmt::Display for Arith {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_arith(&mut s, self, 1);
        f.write_str(&s)
    }
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_bool(&mut s, self, 1);
        f.write_str(&s)
    }
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Zero => out.push_str("zero"),
        Term::One => out.push_str("one"),
        Term::Top => out.push_str("top"),
        Term::Embed(e) => {
            out.push_str("int(");
            write_arith(out, e, 1);
            out.push(')');
        }
        Term::Lit(v) => {
            let _ = write!(out, "{v}");
        }
        Term::Scale(w, t) => {
            write_weight(out, w);
            out.push_str(" (*) ");
            write_term(out, t);
        }
        Term::Group(f) => {
            out.push('(');
            write_weighting(out, f);
            out.push(')');
        }
    }
}

fn write_weighting(out: &mut String, f: &WeightingExpr) {
    if f.summands.is_empty() {
        out.push_str("zero");
    }
    for (i, Summand { guards, term }) in f.summands.iter().enumerate() {
        if i > 0 {
            out.push_str(" (+) ");
        }
        for g in guards {
            out.push('[');
            write_bool(out, g, 1);
            out.push_str("] ");
        }
        write_term(out, term);
    }
}

impl fmt::Display for WeightingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_weighting(&mut s, self);
        f.write_str(&s)
    }
}
