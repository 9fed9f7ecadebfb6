//! Configurations of the computation forest and the SOS rules.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Instance, Weight};
use crate::syntax::{eval_arith, eval_bool, eval_weight, Program, State};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    L,
    R,
}

/// A `(program, state)` pair; `program = None` is the terminated program `⇓`.
/// This is a configuration with step count and history forgotten.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub program: Option<Arc<Program>>,
    pub state: State,
}

impl Node {
    pub fn new(program: Arc<Program>, state: State) -> Self {
        Node {
            program: Some(program),
            state,
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.program.is_none()
    }
}

/// One SOS step out of a [`Node`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub dir: Option<Dir>,
    pub weight: Weight,
    pub next: Node,
}

/// All steps licensed by the rules (assign), (weight), (seq 1), (seq 2), (if),
/// (else), (l. branch), (r. branch), (while) and (break).
pub fn step(inst: &Instance, node: &Node) -> Result<Vec<Step>> {
    match &node.program {
        None => Ok(Vec::new()),
        Some(p) => step_program(inst, p, &node.state),
    }
}

fn step_program(inst: &Instance, p: &Arc<Program>, s: &State) -> Result<Vec<Step>> {
    let one = || inst.mon_one();
    let to = |program: Option<Arc<Program>>, state: State| Node { program, state };
    Ok(match &**p {
        Program::Assign(x, e) => vec![Step {
            dir: None,
            weight: one(),
            next: to(None, s.update(x, eval_arith(e, s))),
        }],
        Program::Weigh(w) => vec![Step {
            dir: None,
            weight: eval_weight(w, inst, s)?,
            next: to(None, s.clone()),
        }],
        Program::Seq(a, b) => step_program(inst, a, s)?
            .into_iter()
            .map(|st| Step {
                next: Node {
                    program: Some(match st.next.program {
                        None => b.clone(),
                        Some(a2) => Arc::new(Program::Seq(a2, b.clone())),
                    }),
                    state: st.next.state,
                },
                ..st
            })
            .collect(),
        Program::Ite(g, t, e) => vec![Step {
            dir: None,
            weight: one(),
            next: to(Some(if eval_bool(g, s) { t } else { e }.clone()), s.clone()),
        }],
        Program::While(g, body) => vec![Step {
            dir: None,
            weight: one(),
            next: if eval_bool(g, s) {
                to(Some(Arc::new(Program::Seq(body.clone(), p.clone()))), s.clone())
            } else {
                to(None, s.clone())
            },
        }],
        Program::Branch(a, b) => vec![
            Step {
                dir: Some(Dir::L),
                weight: one(),
                next: to(Some(a.clone()), s.clone()),
            },
            Step {
                dir: Some(Dir::R),
                weight: one(),
                next: to(Some(b.clone()), s.clone()),
            },
        ],
    })
}

/// A vertex `⟨C | ⇓, σ, n, β⟩` of the computation forest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub node: Node,
    pub steps: usize,
    pub history: Vec<Dir>,
}

impl Config {
    pub fn initial(program: Program, state: State) -> Self {
        Config {
            node: Node::new(Arc::new(program), state),
            steps: 0,
            history: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub weight: Weight,
    pub target: Config,
}

pub fn successors(inst: &Instance, c: &Config) -> Result<Vec<Transition>> {
    Ok(step(inst, &c.node)?
        .into_iter()
        .map(|st| {
            let mut history = c.history.clone();
            history.extend(st.dir);
            Transition {
                weight: st.weight,
                target: Config {
                    node: st.next,
                    steps: c.steps + 1,
                    history,
                },
            }
        })
        .collect())
}

pub struct History<'a>(pub &'a [Dir]);

impl fmt::Display for History<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for d in self.0 {
            f.write_str(match d {
                Dir::L => "L",
                Dir::R => "R",
            })?;
        }
        Ok(())
    }
}
