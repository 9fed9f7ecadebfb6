//! Certain termination and the weights of diverging runs.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::sync::Arc;

use super::config::{step, Node};
use super::graph::Quotient;
use crate::algebra::{ExtNat, Instance, Lasso, ModuleValue, OmegaLanguage, Weight, Word};
use crate::syntax::{Program, State};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uct {
    /// Every path from the start has length at most `maxlen`.
    Certain { maxlen: usize },
    /// `path[cycle_start..]` repeats forever: an infinite path.
    Refuted { path: Vec<Node>, cycle_start: usize },
    Unknown,
}

/// Depth-first search over the quotient: a reachable cycle refutes certain
/// termination, an acyclic exploration with all paths within `bound` certifies
/// it, and anything else (too deep, too many nodes) is unknown.
pub fn uct_check(inst: &Instance, program: &Program, s: &State, bound: usize, budget: usize) -> Result<Uct> {
    uct_check_node(inst, Node::new(Arc::new(program.clone()), s.clone()), bound, budget)
}

pub fn uct_check_node(inst: &Instance, root: Node, bound: usize, budget: usize) -> Result<Uct> {
    struct Frame {
        id: usize,
        succ: Vec<Node>,
        next: usize,
        longest: usize,
    }
    let mut index: HashMap<Node, usize> = HashMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    // None: on the DFS stack; Some(l): finished, longest path from here is l.
    let mut done: Vec<Option<usize>> = Vec::new();
    let mut intern = |n: Node, nodes: &mut Vec<Node>, done: &mut Vec<Option<usize>>| -> (usize, bool) {
        if let Some(&id) = index.get(&n) {
            return (id, false);
        }
        let id = nodes.len();
        index.insert(n.clone(), id);
        nodes.push(n);
        done.push(None);
        (id, true)
    };
    let successors = |n: &Node| -> Result<Vec<Node>> {
        Ok(step(inst, n)?.into_iter().map(|st| st.next).collect())
    };
    let (root_id, _) = intern(root.clone(), &mut nodes, &mut done);
    let mut stack = vec![Frame {
        id: root_id,
        succ: successors(&root)?,
        next: 0,
        longest: 0,
    }];
    while let Some(top) = stack.last_mut() {
        if top.next == top.succ.len() {
            let f = stack.pop().expect("nonempty");
            done[f.id] = Some(f.longest);
            if let Some(parent) = stack.last_mut() {
                parent.longest = parent.longest.max(f.longest + 1);
            }
            continue;
        }
        let n = top.succ[top.next].clone();
        top.next += 1;
        let (id, fresh) = intern(n.clone(), &mut nodes, &mut done);
        if !fresh {
            match done[id] {
                Some(l) => {
                    let top = stack.last_mut().expect("nonempty");
                    top.longest = top.longest.max(l + 1);
                }
                None => {
                    let path: Vec<Node> = stack.iter().map(|f| nodes[f.id].clone()).collect();
                    let cycle_start = stack.iter().position(|f| f.id == id).expect("on stack");
                    return Ok(Uct::Refuted { path, cycle_start });
                }
            }
            continue;
        }
        if nodes.len() > budget || stack.len() > bound {
            return Ok(Uct::Unknown);
        }
        let succ = successors(&n)?;
        stack.push(Frame {
            id,
            succ,
            next: 0,
            longest: 0,
        });
    }
    let maxlen = done[root_id].expect("root finished");
    Ok(if maxlen <= bound {
        Uct::Certain { maxlen }
    } else {
        Uct::Unknown
    })
}

/// The exact value `⋀ₙ ⊕_{|π| = n} 𝒲(π) ⊗ ⊤` on a finite quotient.
///
/// * tropical: the cheapest way to reach a cycle of weight 0 (`∞` if none);
/// * boolean, counting, arctic, prob: `⊤` iff some infinite path avoids every
///   edge `a` with `a ⊗ ⊤ = 𝟘`, else `𝟘`;
/// * ω-languages: a cylinder `pΣ^∞` for each way `p` into a cycle with empty
///   labels and a lasso `p(q)^ω` for each way into a simple labelled cycle `q`.
///   Other labelled cycles are rejected.
pub fn diverging_weights(inst: &Instance, program: &Program, s: &State, budget: usize) -> Result<ModuleValue> {
    let top = inst.top()?;
    let q = Quotient::explore(inst, Node::new(Arc::new(program.clone()), s.clone()), budget)?;
    match inst {
        Instance::Tropical => Ok(ModuleValue::Nat(tropical_divergence(&q))),
        Instance::OmegaLang(a) => omega_divergence(&q, a, budget),
        Instance::Lang(_) => unreachable!("no top"),
        _ => {
            let zero = inst.mod_zero();
            let keep = |w: &Weight| inst.scalar_mul(w, &top).map(|v| v != zero).unwrap_or(false);
            let reach = q.reachable(keep);
            let (comp, cyclic) = q.components(keep);
            let diverges = (0..q.len()).any(|v| reach[v] && cyclic[comp[v]]);
            Ok(if diverges { top } else { zero })
        }
    }
}

fn tropical_divergence(q: &Quotient) -> ExtNat {
    let zero_edge = |w: &Weight| *w == Weight::Nat(ExtNat::ZERO);
    let (comp, cyclic) = q.components(zero_edge);
    let mut dist: Vec<Option<u64>> = vec![None; q.len()];
    let mut heap = BinaryHeap::from([Reverse((0u64, Quotient::ROOT))]);
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist[v].is_some() {
            continue;
        }
        dist[v] = Some(d);
        if cyclic[comp[v]] {
            return ExtNat::Fin(d);
        }
        for (w, a) in &q.edges[v] {
            if let (Weight::Nat(ExtNat::Fin(c)), None) = (a, dist[*w]) {
                heap.push(Reverse((d.saturating_add(*c), *w)));
            }
        }
    }
    ExtNat::Inf
}

fn omega_divergence(q: &Quotient, alphabet: &crate::algebra::Alphabet, budget: usize) -> Result<ModuleValue> {
    let label = |w: &Weight| match w {
        Weight::Word(w) => w.clone(),
        _ => unreachable!("word instance"),
    };
    let edges: Vec<Vec<(usize, Word)>> = q
        .edges
        .iter()
        .map(|out| {
            let mut seen = HashSet::new();
            out.iter()
                .map(|(w, a)| (*w, label(a)))
                .filter(|e| seen.insert(e.clone()))
                .collect()
        })
        .collect();
    let (comp, cyclic) = q.components(|_| true);
    let ncomp = cyclic.len();
    let mut size = vec![0usize; ncomp];
    let mut internal = vec![0usize; ncomp];
    let mut labelled = vec![false; ncomp];
    for v in 0..q.len() {
        size[comp[v]] += 1;
        for (w, a) in &edges[v] {
            if comp[*w] == comp[v] {
                internal[comp[v]] += 1;
                labelled[comp[v]] |= !a.is_empty();
            }
        }
    }
    // Whether a component can leave itself and reach another cyclic one.
    let mut escapes = vec![false; ncomp];
    for c in 0..ncomp {
        if !cyclic[c] || !labelled[c] {
            continue;
        }
        let mut seen = vec![false; q.len()];
        let mut stack: Vec<usize> = (0..q.len()).filter(|&v| comp[v] == c).collect();
        while let Some(v) = stack.pop() {
            for (w, _) in &edges[v] {
                if comp[*w] != c && !seen[*w] {
                    if cyclic[comp[*w]] {
                        escapes[c] = true;
                    }
                    seen[*w] = true;
                    stack.push(*w);
                }
            }
        }
    }
    let unsupported = || {
        Error::Unsupported(
            "weights of diverging runs are not ultimately periodic or not finitely representable"
                .into(),
        )
    };
    let mut cylinders = Vec::new();
    let mut lassos = Vec::new();
    let mut work = 0usize;
    let mut stack = vec![(Quotient::ROOT, Word::empty())];
    while let Some((v, prefix)) = stack.pop() {
        work += 1;
        if work > budget {
            return Err(Error::Budget(budget));
        }
        let c = comp[v];
        if !cyclic[c] {
            for (w, a) in &edges[v] {
                stack.push((*w, prefix.concat(a)));
            }
            continue;
        }
        if !labelled[c] {
            cylinders.push(prefix);
            continue;
        }
        if internal[c] != size[c] || escapes[c] {
            return Err(unsupported());
        }
        let mut period = Word::empty();
        let mut u = v;
        loop {
            let (w, a) = edges[u]
                .iter()
                .find(|(w, _)| comp[*w] == c)
                .expect("simple cycle");
            period = period.concat(a);
            u = *w;
            if u == v {
                break;
            }
        }
        lassos.push(Lasso::new(prefix, period)?);
    }
    Ok(ModuleValue::Omega(OmegaLanguage::from_parts(
        [],
        lassos,
        cylinders,
        alphabet,
    )))
}
