//! Deterministic finite and ω-automata over a dependence alphabet.

mod dfa;
mod formula;
mod minimize;
mod nfa;
mod omega;
mod scc;
mod transitions;
mod weak;

pub use dfa::Dfa;
pub use formula::{BoolCombo, CompileOptions, Formula};
pub use nfa::Nfa;
pub use omega::{Acceptance, OmegaAutomaton};
pub use scc::{scc_decomposition, Sccs};
pub use transitions::{LassoRun, State, Transitions};
pub use weak::weak_equivalent;
