//! Evaluation of expressions and weightings in a state.

use std::sync::OnceLock;

use super::ast::{Arith, BoolExpr, CmpOp, Summand, Term, WeightExpr, WeightingExpr};
use super::state::State;
use crate::algebra::{Instance, ModuleValue, Weight};
use crate::Result;

/// Total: arithmetic saturates instead of overflowing.
pub fn eval_arith(e: &Arith, s: &State) -> i64 {
    match e {
        Arith::Num(n) => *n,
        Arith::Var(x) => s.get(x),
        Arith::Neg(a) => eval_arith(a, s).saturating_neg(),
        Arith::Add(a, b) => eval_arith(a, s).saturating_add(eval_arith(b, s)),
        Arith::Sub(a, b) => eval_arith(a, s).saturating_sub(eval_arith(b, s)),
        Arith::Mul(a, b) => eval_arith(a, s).saturating_mul(eval_arith(b, s)),
        Arith::Min(a, b) => eval_arith(a, s).min(eval_arith(b, s)),
        Arith::Max(a, b) => eval_arith(a, s).max(eval_arith(b, s)),
        Arith::Fib(a) => fib(eval_arith(a, s)),
    }
}

/// `fib(0) = 0`, `fib(1) = 1`, `fib(n) = 0` for negative `n`; saturates past
/// the largest representable term.
pub fn fib(n: i64) -> i64 {
    static TABLE: OnceLock<Vec<i64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = vec![0i64, 1];
        while let Some(next) = t[t.len() - 1].checked_add(t[t.len() - 2]) {
            t.push(next);
        }
        t
    });
    if n < 0 {
        0
    } else {
        table.get(n as usize).copied().unwrap_or(i64::MAX)
    }
}

pub fn eval_bool(b: &BoolExpr, s: &State) -> bool {
    match b {
        BoolExpr::True => true,
        BoolExpr::False => false,
        BoolExpr::Cmp(op, l, r) => {
            let (l, r) = (eval_arith(l, s), eval_arith(r, s));
            match op {
                CmpOp::Eq => l == r,
                CmpOp::Ne => l != r,
                CmpOp::Lt => l < r,
                CmpOp::Le => l <= r,
                CmpOp::Gt => l > r,
                CmpOp::Ge => l >= r,
            }
        }
        BoolExpr::Not(a) => !eval_bool(a, s),
        BoolExpr::And(a, b) => eval_bool(a, s) && eval_bool(b, s),
        BoolExpr::Or(a, b) => eval_bool(a, s) || eval_bool(b, s),
    }
}

pub fn eval_weight(w: &WeightExpr, inst: &Instance, s: &State) -> Result<Weight> {
    match w {
        WeightExpr::Lit(w) => Ok(w.clone()),
        WeightExpr::Embed(e) => Ok(inst.embed_weight(eval_arith(e, s))?),
    }
}

/// Folds `⊕` over the summands whose guards hold; `𝟘` if none do.
pub fn eval_weighting(f: &WeightingExpr, inst: &Instance, s: &State) -> Result<ModuleValue> {
    let mut acc = inst.mod_zero();
    for Summand { guards, term } in &f.summands {
        if guards.iter().all(|g| eval_bool(g, s)) {
            acc = inst.mod_add(&acc, &eval_term(term, inst, s)?)?;
        }
    }
    Ok(acc)
}

fn eval_term(t: &Term, inst: &Instance, s: &State) -> Result<ModuleValue> {
    Ok(match t {
        Term::Zero => inst.mod_zero(),
        Term::One => inst.mod_one(),
        Term::Top => inst.top()?,
        Term::Embed(e) => inst.embed_int(eval_arith(e, s))?,
        Term::Lit(v) => v.clone(),
        Term::Scale(w, t) => inst.scalar_mul(&eval_weight(w, inst, s)?, &eval_term(t, inst, s)?)?,
        Term::Group(f) => eval_weighting(f, inst, s)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_weighting;
    use crate::AlgebraError;
    use crate::Error;

    #[test]
    fn fib_table() {
        assert_eq!((0..8).map(fib).collect::<Vec<_>>(), [0, 1, 1, 2, 3, 5, 8, 13]);
        assert_eq!(fib(-4), 0);
        assert_eq!(fib(92), 7540113804746346429);
        assert_eq!(fib(500), i64::MAX);
    }

    #[test]
    fn arithmetic_saturates() {
        let e = Arith::Mul(Box::new(Arith::Num(i64::MAX)), Box::new(Arith::Num(2)));
        assert_eq!(eval_arith(&e, &State::new()), i64::MAX);
    }

    #[test]
    fn guarded_sums() {
        let arctic: Instance = "arctic".parse().unwrap();
        let f = parse_weighting(&arctic, "[x>0] 2*(x-1)+y").unwrap();
        let s = State::from_pairs([("x", 2), ("y", 3)]);
        assert_eq!(eval_weighting(&f, &arctic, &s).unwrap(), ModuleValue::Arctic(
            crate::algebra::Arctic::Val(crate::algebra::ExtNat::Fin(5))
        ));
        assert_eq!(
            eval_weighting(&f, &arctic, &State::new()).unwrap(),
            arctic.mod_zero()
        );
        let z = WeightingExpr::zero();
        assert_eq!(eval_weighting(&z, &arctic, &s).unwrap(), arctic.mod_zero());
    }

    #[test]
    fn true_guard_is_transparent() {
        let t: Instance = "tropical".parse().unwrap();
        let s = State::from_pairs([("n", 4)]);
        let guarded = parse_weighting(&t, "[true] n + 1").unwrap();
        let bare = parse_weighting(&t, "n + 1").unwrap();
        assert_eq!(
            eval_weighting(&guarded, &t, &s).unwrap(),
            eval_weighting(&bare, &t, &s).unwrap()
        );
    }

    #[test]
    fn negative_embedding_is_reported() {
        let t: Instance = "tropical".parse().unwrap();
        let f = parse_weighting(&t, "x - 1").unwrap();
        assert!(matches!(
            eval_weighting(&f, &t, &State::new()),
            Err(Error::Algebra(AlgebraError::NegativeEmbedding { value: -1, .. }))
        ));
    }

    #[test]
    fn comparisons() {
        let s = State::from_pairs([("x", 0)]);
        let gt = BoolExpr::Cmp(CmpOp::Gt, Arith::Var("x".into()), Arith::Num(0));
        assert!(!eval_bool(&gt, &s));
        assert!(eval_bool(&gt.not(), &s));
    }
}
