//! The `(program, state)` quotient of the computation forest.
//!
//! Step counts and histories only serve to make the transition structure a
//! forest; forgetting them folds the forest back into a graph whose cycles are
//! exactly the shapes of infinite paths.

use std::collections::{HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::config::{step, Node};
use crate::algebra::{Instance, Weight};
use crate::{Error, Result};

pub struct Quotient {
    pub nodes: Vec<Node>,
    /// Out-edges per node, in SOS order.
    pub edges: Vec<Vec<(usize, Weight)>>,
}

impl Quotient {
    pub const ROOT: usize = 0;

    /// Explores everything reachable from `root`; fails once more than
    /// `budget` nodes have been seen.
    pub fn explore(inst: &Instance, root: Node, budget: usize) -> Result<Quotient> {
        let mut index: HashMap<Node, usize> = HashMap::new();
        let mut nodes = vec![root.clone()];
        let mut edges: Vec<Vec<(usize, Weight)>> = vec![Vec::new()];
        index.insert(root, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for st in step(inst, &nodes[v])? {
                let id = match index.get(&st.next) {
                    Some(&id) => id,
                    None => {
                        if nodes.len() >= budget {
                            return Err(Error::Budget(budget));
                        }
                        let id = nodes.len();
                        index.insert(st.next.clone(), id);
                        nodes.push(st.next);
                        edges.push(Vec::new());
                        queue.push_back(id);
                        id
                    }
                };
                edges[v].push((id, st.weight));
            }
        }
        Ok(Quotient { nodes, edges })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Strongly connected components over the edges accepted by `keep`:
    /// the component of every node, and whether each component has a cycle.
    pub fn components(&self, keep: impl Fn(&Weight) -> bool) -> (Vec<usize>, Vec<bool>) {
        let mut g = DiGraph::<(), ()>::with_capacity(self.len(), 0);
        let ix: Vec<_> = (0..self.len()).map(|_| g.add_node(())).collect();
        for (v, out) in self.edges.iter().enumerate() {
            for (w, a) in out {
                if keep(a) {
                    g.add_edge(ix[v], ix[*w], ());
                }
            }
        }
        let sccs = tarjan_scc(&g);
        let mut comp = vec![0; self.len()];
        let mut cyclic = vec![false; sccs.len()];
        for (c, members) in sccs.iter().enumerate() {
            for n in members {
                comp[n.index()] = c;
            }
        }
        for (v, out) in self.edges.iter().enumerate() {
            for (w, a) in out {
                if keep(a) && comp[v] == comp[*w] {
                    cyclic[comp[v]] = true;
                }
            }
        }
        (comp, cyclic)
    }

    /// Nodes reachable from the root along edges accepted by `keep`.
    pub fn reachable(&self, keep: impl Fn(&Weight) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[Self::ROOT] = true;
        let mut stack = vec![Self::ROOT];
        while let Some(v) = stack.pop() {
            for (w, a) in &self.edges[v] {
                if keep(a) && !seen[*w] {
                    seen[*w] = true;
                    stack.push(*w);
                }
            }
        }
        seen
    }
}
