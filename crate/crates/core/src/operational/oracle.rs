//! Brute-force operational functionals `op` and `olp`, used as test oracles
//! for the transformers.

use std::collections::HashSet;
use std::sync::Arc;

use super::analysis::diverging_weights;
use super::config::{step, Node};
use super::graph::Quotient;
use crate::algebra::{Approx, Instance, ModuleValue, Weight};
use crate::syntax::{Program, State, Weighting};
use crate::{Error, Result};

/// `⊕ 𝒲(π) ⊗ f(last π)` over terminating paths of length at most `fuel`.
///
/// Exact when no path outlives `fuel`, or when the reachable quotient is finite
/// with `N ≤ fuel` nodes and no path terminated in the last `N` layers: cutting
/// cycles out of a longer terminating path would otherwise land one there.
pub fn op_oracle(
    inst: &Instance,
    program: &Program,
    s: &State,
    f: &dyn Weighting,
    fuel: usize,
    budget: usize,
) -> Result<Approx> {
    if f.is_constant_zero() {
        return Ok(Approx {
            value: inst.mod_zero(),
            exact: true,
        });
    }
    let root = Node::new(Arc::new(program.clone()), s.clone());
    let mut frontier = vec![(root.clone(), inst.mon_one())];
    let mut acc = inst.mod_zero();
    let mut last_terminal: Option<usize> = None;
    let mut expanded = 0usize;
    for depth in 0..=fuel {
        let mut next = Vec::new();
        for (node, w) in frontier {
            if node.is_terminal() {
                let v = inst.scalar_mul(&w, &f.eval(inst, &node.state)?)?;
                acc = inst.mod_add(&acc, &v)?;
                last_terminal = Some(depth);
            } else if depth < fuel {
                for st in step(inst, &node)? {
                    expanded += 1;
                    if expanded > budget {
                        return Err(Error::Budget(budget));
                    }
                    next.push((st.next, inst.mon_mul(&w, &st.weight)?));
                }
            } else {
                next.push((node, w));
            }
        }
        frontier = next;
        if frontier.is_empty() {
            return Ok(Approx {
                value: acc,
                exact: true,
            });
        }
    }
    let exact = match Quotient::explore(inst, root, budget) {
        Ok(q) => q.len() <= fuel && last_terminal.is_none_or(|d| d + q.len() <= fuel),
        Err(Error::Budget(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(Approx { value: acc, exact })
}

/// The chain `sₙ = ⊕_{|π| = n} 𝒲(π) ⊗ ⊤` for `n = 0, …, fuel`, stopping early
/// once it reaches `𝟘`.
pub fn olp_chain(
    inst: &Instance,
    program: &Program,
    s: &State,
    fuel: usize,
    budget: usize,
) -> Result<Vec<ModuleValue>> {
    let top = inst.top()?;
    let mut chain = Vec::new();
    // ⊕ is idempotent on every `a ⊗ ⊤`, so equal (node, weight) pairs merge.
    let mut frontier: Vec<(Node, Weight)> =
        vec![(Node::new(Arc::new(program.clone()), s.clone()), inst.mon_one())];
    let mut expanded = 0usize;
    for depth in 0..=fuel {
        let mut sn = inst.mod_zero();
        for (_, w) in &frontier {
            sn = inst.mod_add(&sn, &inst.scalar_mul(w, &top)?)?;
        }
        chain.push(sn);
        if frontier.is_empty() || depth == fuel {
            break;
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (node, w) in &frontier {
            for st in step(inst, node)? {
                expanded += 1;
                if expanded > budget {
                    return Err(Error::Budget(budget));
                }
                let item = (st.next, inst.mon_mul(w, &st.weight)?);
                if seen.insert(item.clone()) {
                    next.push(item);
                }
            }
        }
        frontier = next;
    }
    Ok(chain)
}

/// `⋀ₙ sₙ`: exact once the chain hits `𝟘` or the divergence analysis applies;
/// otherwise the last chain element, an upper bound.
pub fn olp_oracle(
    inst: &Instance,
    program: &Program,
    s: &State,
    fuel: usize,
    budget: usize,
) -> Result<Approx> {
    let chain = olp_chain(inst, program, s, fuel, budget)?;
    let last = chain.last().expect("chain starts with s₀").clone();
    if last == inst.mod_zero() {
        return Ok(Approx {
            value: last,
            exact: true,
        });
    }
    match diverging_weights(inst, program, s, budget) {
        Ok(value) => Ok(Approx { value, exact: true }),
        Err(Error::Budget(_) | Error::Unsupported(_)) => Ok(Approx {
            value: last,
            exact: false,
        }),
        Err(e) => Err(e),
    }
}
