//! Recursive-descent parser for programs, guards and weighting expressions.
//!
//! Precedence: `not` binds tighter than `and`, which binds tighter than `or`.
//! Sequential composition is right-nested.

use super::ast::{Arith, BoolExpr, CmpOp, Program, Summand, Term, WeightExpr, WeightingExpr};
use super::lexer::{error_at, tokenize, Tok, Token};
use crate::algebra::Instance;
use crate::{Error, Result};

const KEYWORDS: &[&str] = &[
    "if", "else", "while", "weigh", "skip", "true", "false", "not", "and", "or", "min", "max",
    "fib", "int", "zero", "one", "top", "inf",
];

/// A program file: instance pragma plus program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedProgram {
    pub instance: Instance,
    pub program: Program,
}

/// Parses a file whose first line is `@instance <name>`.
pub fn parse_program(text: &str) -> Result<ParsedProgram> {
    parse_program_with(text, None)
}

/// Like [`parse_program`], but `instance`, when given, replaces the pragma,
/// which then becomes optional.
pub fn parse_program_with(text: &str, instance: Option<&Instance>) -> Result<ParsedProgram> {
    let (pragma, body) = split_pragma(text)?;
    let instance = match (instance, pragma) {
        (Some(i), _) => i.clone(),
        (None, Some(i)) => i,
        (None, None) => {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                message: "missing `@instance <name>` pragma".into(),
            })
        }
    };
    let mut p = Parser::new(&body, &instance)?;
    let program = p.seq()?;
    p.expect_eof()?;
    Ok(ParsedProgram { instance, program })
}

pub fn parse_weighting(instance: &Instance, text: &str) -> Result<WeightingExpr> {
    let mut p = Parser::new(text, instance)?;
    let f = p.weighting()?;
    p.expect_eof()?;
    Ok(f)
}

pub fn parse_bool(text: &str) -> Result<BoolExpr> {
    let mut p = Parser::new(text, &Instance::Boolean)?;
    let b = p.bool_or()?;
    p.expect_eof()?;
    Ok(b)
}

pub fn parse_arith(text: &str) -> Result<Arith> {
    let mut p = Parser::new(text, &Instance::Boolean)?;
    let e = p.sum()?;
    p.expect_eof()?;
    Ok(e)
}

/// Blanks out the pragma line (keeping byte offsets) and parses its instance.
fn split_pragma(text: &str) -> Result<(Option<Instance>, String)> {
    let mut offset = 0;
    for (lineno, line) in text.split_inclusive('\n').enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with("//") {
            offset += line.len();
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("@instance") {
            let name = rest.split("//").next().unwrap_or("").trim();
            let inst = name.parse::<Instance>().map_err(|e| Error::Parse {
                line: lineno + 1,
                col: 1,
                message: e.to_string(),
            })?;
            let mut body = text.to_string();
            let blank: String = line
                .chars()
                .map(|c| if c == '\n' { "\n".into() } else { " ".repeat(c.len_utf8()) })
                .collect();
            body.replace_range(offset..offset + line.len(), &blank);
            return Ok((Some(inst), body));
        }
        break;
    }
    Ok((None, text.to_string()))
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    inst: &'a Instance,
    fresh: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, inst: &'a Instance) -> Result<Self> {
        Ok(Parser {
            src,
            toks: tokenize(src)?,
            pos: 0,
            inst,
            fresh: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        error_at(self.src, self.toks[self.pos].start, message)
    }

    fn describe(&self) -> String {
        let t = &self.toks[self.pos];
        if t.tok == Tok::Eof {
            "end of input".into()
        } else {
            format!("`{}`", &self.src[t.start..t.end])
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", self.describe())))
        }
    }

    fn expect_eof(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", self.describe())))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// Runs `f`, rewinding on failure.
    fn attempt<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T>) -> Option<T> {
        let save = (self.pos, self.fresh);
        match f(self) {
            Ok(v) => Some(v),
            Err(_) => {
                (self.pos, self.fresh) = save;
                None
            }
        }
    }

    // ---- statements ----

    fn seq(&mut self) -> Result<Program> {
        let first = self.stmt()?;
        if *self.peek() == Tok::Semi {
            self.bump();
            if matches!(self.peek(), Tok::RBrace | Tok::Eof) {
                return Ok(first);
            }
            let rest = self.seq()?;
            return Ok(Program::seq(first, rest));
        }
        Ok(first)
    }

    fn block(&mut self) -> Result<Program> {
        self.expect(Tok::LBrace, "`{`")?;
        let p = self.seq()?;
        self.expect(Tok::RBrace, "`}`")?;
        Ok(p)
    }

    fn stmt(&mut self) -> Result<Program> {
        match self.peek().clone() {
            Tok::LBrace => {
                let left = self.block()?;
                if *self.peek() != Tok::LBrack {
                    return Ok(left);
                }
                self.bump();
                if *self.peek() == Tok::RBrack {
                    self.bump();
                    let right = self.block()?;
                    return Ok(Program::branch(left, right));
                }
                let a = self.weight_expr()?;
                self.expect(Tok::RBrack, "`]`")?;
                self.expect(Tok::Oplus, "`(+)` in weighted choice")?;
                self.expect(Tok::LBrack, "`[`")?;
                let b = self.weight_expr()?;
                self.expect(Tok::RBrack, "`]`")?;
                let right = self.block()?;
                Ok(Program::branch(
                    Program::seq(Program::Weigh(a), left),
                    Program::seq(Program::Weigh(b), right),
                ))
            }
            Tok::Ident(kw) if kw == "if" => {
                self.bump();
                let guard = self.paren_guard()?;
                let then = self.block()?;
                let other = if self.eat_kw("else") {
                    if self.is_kw("if") {
                        self.stmt()?
                    } else {
                        self.block()?
                    }
                } else {
                    self.skip()
                };
                Ok(Program::ite(guard, then, other))
            }
            Tok::Ident(kw) if kw == "while" => {
                self.bump();
                let guard = self.paren_guard()?;
                let body = self.block()?;
                Ok(Program::while_loop(guard, body))
            }
            Tok::Ident(kw) if kw == "skip" => {
                self.bump();
                Ok(self.skip())
            }
            Tok::Ident(kw) if kw == "weigh" => {
                self.bump();
                self.weigh_stmt()
            }
            Tok::Ident(x) if !KEYWORDS.contains(&x.as_str()) => {
                self.bump();
                self.expect(Tok::Assign, "`:=`")?;
                let e = self.sum()?;
                Ok(Program::Assign(x, e))
            }
            _ => Err(self.error(format!("expected a statement, found {}", self.describe()))),
        }
    }

    fn skip(&self) -> Program {
        Program::Weigh(WeightExpr::Lit(self.inst.mon_one()))
    }

    fn paren_guard(&mut self) -> Result<BoolExpr> {
        self.expect(Tok::LParen, "`(`")?;
        let b = self.bool_or()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(b)
    }

    fn weigh_stmt(&mut self) -> Result<Program> {
        let start = self.pos;
        let w = self.weight_expr()?;
        if *self.peek() != Tok::Caret {
            return Ok(Program::Weigh(w));
        }
        if !self.inst.is_word_monoid() {
            self.pos = start;
            return Err(self.error("`weigh a^e` needs a word instance; use `weigh int(..)`"));
        }
        self.bump();
        let exponent = self.arith_atom()?;
        // a^e  ⇒  i := e; while(i > 0){ weigh a; i := i - 1 }
        let i = format!("_i{}", self.fresh);
        self.fresh += 1;
        let var = || Arith::Var(i.clone());
        Ok(Program::seq(
            Program::Assign(i.clone(), exponent),
            Program::while_loop(
                BoolExpr::Cmp(CmpOp::Gt, var(), Arith::Num(0)),
                Program::seq(
                    Program::Weigh(w),
                    Program::Assign(
                        i.clone(),
                        Arith::Sub(Box::new(var()), Box::new(Arith::Num(1))),
                    ),
                ),
            ),
        ))
    }

    // ---- weights ----

    fn weight_expr(&mut self) -> Result<WeightExpr> {
        if self.is_kw("int") && *self.peek_at(1) == Tok::LParen {
            if !self.inst.has_int_embedding() {
                return Err(self.error(format!("instance {} has no integer embedding", self.inst)));
            }
            self.bump();
            self.bump();
            let e = self.sum()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(WeightExpr::Embed(e));
        }
        let start = self.pos;
        let text = self.literal_text()?;
        self.inst.parse_weight(&text).map(WeightExpr::Lit).map_err(|e| {
            error_at(self.src, self.toks[start].start, e.to_string())
        })
    }

    /// Collects a scalar literal: `-inf`, `inf`, `3`, `1/3`, `0.25`, a word.
    fn literal_text(&mut self) -> Result<String> {
        let mut text = String::new();
        if *self.peek() == Tok::Minus {
            self.bump();
            text.push('-');
        }
        match self.bump() {
            Tok::Number(n) => {
                text.push_str(&n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        Tok::Number(d) => {
                            text.push('/');
                            text.push_str(&d);
                        }
                        _ => return Err(self.error("expected a denominator")),
                    }
                }
            }
            Tok::Ident(s) => text.push_str(if s == "∞" { "inf" } else { &s }),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.error(format!("expected a weight, found {}", self.describe())));
            }
        }
        Ok(text)
    }

    // ---- weightings ----

    fn weighting(&mut self) -> Result<WeightingExpr> {
        let mut summands = vec![self.summand()?];
        while *self.peek() == Tok::Oplus {
            self.bump();
            summands.push(self.summand()?);
        }
        Ok(WeightingExpr { summands })
    }

    fn summand(&mut self) -> Result<Summand> {
        let mut guards = Vec::new();
        while *self.peek() == Tok::LBrack {
            self.bump();
            guards.push(self.bool_or()?);
            self.expect(Tok::RBrack, "`]`")?;
        }
        let term = if !guards.is_empty() && matches!(self.peek(), Tok::Oplus | Tok::RParen | Tok::Eof)
        {
            Term::One
        } else {
            self.term()?
        };
        Ok(Summand { guards, term })
    }

    fn term(&mut self) -> Result<Term> {
        if let Some(w) = self.attempt(|p| {
            let w = p.weight_expr()?;
            p.expect(Tok::Otimes, "`(*)`")?;
            Ok(w)
        }) {
            let rest = self.term()?;
            return Ok(Term::Scale(w, Box::new(rest)));
        }
        self.term_atom()
    }

    fn term_atom(&mut self) -> Result<Term> {
        for (kw, t) in [("zero", Term::Zero), ("one", Term::One), ("top", Term::Top)] {
            if self.eat_kw(kw) {
                return Ok(t);
            }
        }
        if self.is_kw("int") && *self.peek_at(1) == Tok::LParen {
            if !self.inst.has_int_embedding() {
                return Err(self.error(format!("instance {} has no integer embedding", self.inst)));
            }
            self.bump();
            self.bump();
            let e = self.sum()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Term::Embed(e));
        }
        if *self.peek() == Tok::LBrace {
            return self.set_literal();
        }
        if self.inst.has_int_embedding() {
            if self.is_kw("inf") || self.is_kw("∞") || (*self.peek() == Tok::Minus && matches!(self.peek_at(1), Tok::Ident(s) if s == "inf" || s == "∞")) {
                let start = self.pos;
                let text = self.literal_text()?;
                return self.module_literal(&text, start);
            }
            if let Some(e) = self.attempt(|p| {
                let e = p.sum()?;
                if matches!(p.peek(), Tok::Oplus | Tok::RParen | Tok::RBrack | Tok::Eof) {
                    Ok(e)
                } else {
                    Err(p.error("not an arithmetic term"))
                }
            }) {
                return Ok(Term::Embed(e));
            }
        }
        if *self.peek() == Tok::LParen {
            self.bump();
            let f = self.weighting()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Term::Group(Box::new(f)));
        }
        let start = self.pos;
        let text = self.literal_text()?;
        self.module_literal(&text, start)
    }

    fn module_literal(&self, text: &str, start: usize) -> Result<Term> {
        self.inst
            .parse_value(text)
            .map(Term::Lit)
            .map_err(|e| error_at(self.src, self.toks[start].start, e.to_string()))
    }

    /// `{ ... }` is taken verbatim up to the matching brace.
    fn set_literal(&mut self) -> Result<Term> {
        let start = self.pos;
        let mut depth = 0usize;
        loop {
            match self.bump() {
                Tok::LBrace => depth += 1,
                Tok::RBrace => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                Tok::Eof => {
                    self.pos = start;
                    return Err(self.error("unterminated `{`"));
                }
                _ => {}
            }
        }
        let text = &self.src[self.toks[start].start..self.toks[self.pos - 1].end];
        self.module_literal(text, start)
    }

    // ---- guards ----

    fn bool_or(&mut self) -> Result<BoolExpr> {
        let mut b = self.bool_and()?;
        while *self.peek() == Tok::OrOr || self.is_kw("or") {
            self.bump();
            b = BoolExpr::Or(Box::new(b), Box::new(self.bool_and()?));
        }
        Ok(b)
    }

    fn bool_and(&mut self) -> Result<BoolExpr> {
        let mut b = self.bool_not()?;
        while *self.peek() == Tok::AndAnd || self.is_kw("and") {
            self.bump();
            b = BoolExpr::And(Box::new(b), Box::new(self.bool_not()?));
        }
        Ok(b)
    }

    fn bool_not(&mut self) -> Result<BoolExpr> {
        if *self.peek() == Tok::Bang || self.is_kw("not") {
            self.bump();
            return Ok(self.bool_not()?.not());
        }
        self.bool_atom()
    }

    fn bool_atom(&mut self) -> Result<BoolExpr> {
        if self.eat_kw("true") {
            return Ok(BoolExpr::True);
        }
        if self.eat_kw("false") {
            return Ok(BoolExpr::False);
        }
        if *self.peek() == Tok::LParen {
            if let Some(b) = self.attempt(|p| {
                p.bump();
                let b = p.bool_or()?;
                p.expect(Tok::RParen, "`)`")?;
                if cmp_op(p.peek()).is_some()
                    || matches!(p.peek(), Tok::Plus | Tok::Minus | Tok::Star)
                {
                    return Err(p.error("parenthesized arithmetic"));
                }
                Ok(b)
            }) {
                return Ok(b);
            }
        }
        let l = self.sum()?;
        let Some(op) = cmp_op(self.peek()) else {
            return Err(self.error(format!("expected a comparison, found {}", self.describe())));
        };
        self.bump();
        let r = self.sum()?;
        Ok(BoolExpr::Cmp(op, l, r))
    }

    // ---- arithmetic ----

    fn sum(&mut self) -> Result<Arith> {
        let mut e = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    e = Arith::Add(Box::new(e), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    e = Arith::Sub(Box::new(e), Box::new(self.product()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn product(&mut self) -> Result<Arith> {
        let mut e = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            e = Arith::Mul(Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Arith> {
        if *self.peek() != Tok::Minus {
            return self.arith_atom();
        }
        self.bump();
        if let Tok::Number(n) = self.peek().clone() {
            self.bump();
            return parse_int(&format!("-{n}")).ok_or_else(|| self.error("bad integer literal"));
        }
        Ok(Arith::Neg(Box::new(self.unary()?)))
    }

    fn arith_atom(&mut self) -> Result<Arith> {
        match self.peek().clone() {
            Tok::Number(n) => {
                let e = parse_int(&n).ok_or_else(|| self.error("expected an integer"))?;
                self.bump();
                Ok(e)
            }
            Tok::LParen => {
                self.bump();
                let e = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(f) if f == "min" || f == "max" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let a = self.sum()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                let (a, b) = (Box::new(a), Box::new(b));
                Ok(if f == "min" {
                    Arith::Min(a, b)
                } else {
                    Arith::Max(a, b)
                })
            }
            Tok::Ident(f) if f == "fib" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let a = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Arith::Fib(Box::new(a)))
            }
            Tok::Ident(x) if !KEYWORDS.contains(&x.as_str()) && x.is_ascii() => {
                self.bump();
                Ok(Arith::Var(x))
            }
            _ => Err(self.error(format!("expected an expression, found {}", self.describe()))),
        }
    }
}

fn parse_int(s: &str) -> Option<Arith> {
    s.parse::<i64>().ok().map(Arith::Num)
}

fn cmp_op(t: &Tok) -> Option<CmpOp> {
    Some(match t {
        Tok::Eq => CmpOp::Eq,
        Tok::Ne => CmpOp::Ne,
        Tok::Lt => CmpOp::Lt,
        Tok::Le => CmpOp::Le,
        Tok::Gt => CmpOp::Gt,
        Tok::Ge => CmpOp::Ge,
        _ => return None,
    })
}
