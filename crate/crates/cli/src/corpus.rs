//! The shipped fixture corpus, rebuilt from the library's named automata.

use omtrace::{
    ext_automaton, fixtures, i_suffix_extension, ClosureOptions, Dfa, OmegaAutomaton, Polarity,
};

use crate::error::CliError;
use crate::format::{AutomatonFile, DacmaFile};

/// `{ab}` over `a I b`: neither trace-closed nor I-diamond.
fn ab_only() -> Dfa {
    let edges = [[1, 3], [3, 2], [3, 3], [3, 3]];
    let trans = omtrace::Transitions::from_fn(fixtures::ab_independent(), 4, 0, |q, a| edges[q][a])
        .unwrap();
    Dfa::new(trans, &[2]).unwrap()
}

/// File name and contents of every corpus entry.
pub fn corpus() -> Result<Vec<(&'static str, String)>, CliError> {
    let k = fixtures::example1_k();
    let ki = i_suffix_extension(&k, ClosureOptions::default())?;
    let counter = DacmaFile {
        dacma: fixtures::counter_dacma(),
        finals: vec![],
    };
    Ok(vec![
        (
            "fig2.aut",
            AutomatonFile::from_dfa(&fixtures::fig2_dfa()).serialize(),
        ),
        (
            "fig2_buchi.aut",
            AutomatonFile::from_omega(&OmegaAutomaton::buchi(&fixtures::fig2_dfa())).serialize(),
        ),
        (
            "fig2_muller.aut",
            AutomatonFile::from_omega(&fixtures::fig2_muller()).serialize(),
        ),
        ("example1_k.aut", AutomatonFile::from_dfa(&k).serialize()),
        ("example1_ki.aut", AutomatonFile::from_dfa(&ki).serialize()),
        (
            "example1_ext.aut",
            AutomatonFile::from_omega(&ext_automaton(&ki, Polarity::Positive)).serialize(),
        ),
        (
            "contains_a.aut",
            AutomatonFile::from_dfa(&fixtures::contains_a()).serialize(),
        ),
        (
            "ab_only.aut",
            AutomatonFile::from_dfa(&ab_only()).serialize(),
        ),
        ("counter.dacma", counter.serialize()),
    ])
}
