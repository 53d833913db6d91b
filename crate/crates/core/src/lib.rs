//! Traces, trace-closed languages and their limits.
//!
//! Finite traces over a dependence alphabet, complete DFAs and deterministic
//! ω-automata, trace closure and the I-suffix extension, decision procedures
//! for limit-stability, recognizing semigroups, and asynchronous cellular
//! automata. Brute-force oracles in [`oracle`] cross-check the constructions.

#![allow(
    clippy::needless_range_loop,
    clippy::should_implement_trait,
    clippy::type_complexity
)]

pub mod algebra;
pub mod alphabet;
pub mod automata;
pub mod closure;
pub mod dacma;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod random;
pub mod stability;
pub mod trace;

pub use alphabet::{DependenceAlphabet, Letter, Word};
pub use automata::{
    scc_decomposition, weak_equivalent, Acceptance, BoolCombo, CompileOptions, Dfa, Formula,
    LassoRun, Nfa, OmegaAutomaton, Sccs, State, Transitions,
};
pub use closure::{
    ext_automaton, i_suffix_extension, lim_automaton, saturate, trace_closure, trace_concat,
    ClosureOptions, ClosureResult, LimResult, Polarity,
};
pub use dacma::Dacma;
pub use error::{Error, Result};
pub use stability::{
    closure_violation, dwa_decompose, fi_cycle_closed, is_i_diamond, is_limit_stable,
    is_trace_closed, CycleWitness, Decomposition, StabilityReport,
};
pub use trace::{equivalent, lasso_equivalent, normal_form, LassoWord, Trace};
