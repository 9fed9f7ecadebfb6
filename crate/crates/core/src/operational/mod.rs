//! Small-step weighted semantics: the computation forest, its paths, the
//! operational functionals `op`/`olp`, and termination analysis.

mod analysis;
mod config;
mod graph;
mod oracle;
mod paths;

pub use analysis::{diverging_weights, uct_check, uct_check_node, Uct};
pub use config::{step, successors, Config, Dir, History, Node, Step, Transition};
pub use graph::Quotient;
pub use oracle::{olp_chain, olp_oracle, op_oracle};
pub use paths::{enumerate_paths, Path, PathReport};

pub const DEFAULT_FUEL: usize = 64;
pub const DEFAULT_BUDGET: usize = 1_000_000;
