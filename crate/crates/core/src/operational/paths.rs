//! Explicit enumeration of computation paths.

use super::config::{successors, Config};
use crate::algebra::{Instance, Weight};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub configs: Vec<Config>,
    /// Ordered product of the edge weights.
    pub weight: Weight,
    pub terminal: bool,
}

impl Path {
    pub fn last(&self) -> &Config {
        self.configs.last().expect("paths are nonempty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathReport {
    /// Ordered by history, `L` before `R`.
    pub paths: Vec<Path>,
    pub truncated: bool,
}

/// All maximal paths of length at most `depth`, plus the non-terminal ones cut
/// off at exactly `depth`.
pub fn enumerate_paths(
    inst: &Instance,
    c0: &Config,
    depth: usize,
    budget: usize,
) -> Result<PathReport> {
    let mut report = PathReport {
        paths: Vec::new(),
        truncated: false,
    };
    let mut seen = 0usize;
    let mut stack = vec![(vec![c0.clone()], inst.mon_one())];
    while let Some((configs, weight)) = stack.pop() {
        let last = configs.last().expect("nonempty");
        if last.node.is_terminal() || configs.len() > depth {
            let terminal = last.node.is_terminal();
            report.truncated |= !terminal;
            report.paths.push(Path {
                configs,
                weight,
                terminal,
            });
            continue;
        }
        let ts = successors(inst, last)?;
        seen += ts.len();
        if seen > budget {
            return Err(Error::Budget(budget));
        }
        for t in ts.into_iter().rev() {
            let mut next = configs.clone();
            let w = inst.mon_mul(&weight, &t.weight)?;
            next.push(t.target);
            stack.push((next, w));
        }
    }
    Ok(report)
}
