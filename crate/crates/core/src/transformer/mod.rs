//! Weakest pre-weighting (`wp`) and weakest liberal pre-weighting (`wlp`)
//! transformers, and invariant checking for loops.

mod checks;
mod eval;

pub use checks::{
    apply_char_fn, check_decomposition, check_fixed_point, check_subinvariant,
    check_superinvariant, CharacteristicFn, DecompositionVerdict, FixedPointVerdict, Verdict,
};
pub use eval::{wlp_eval, wp_eval, Direction, Options, TransformResult, WlpMode, WlpStrategy};
