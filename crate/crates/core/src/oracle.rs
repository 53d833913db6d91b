//! Deliberately naive reference implementations, used only to cross-check
//! the constructions at small scale.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::alphabet::{DependenceAlphabet, Letter, Word};
use crate::automata::{Dfa, OmegaAutomaton, State};
use crate::closure::saturation_round;
use crate::error::{Error, Result};
use crate::stability::{cycle_language, CycleWitness};
use crate::trace::{normal_form, LassoWord};

/// Longest word the swap BFS accepts.
pub const DEFAULT_BOUND: usize = 10;

/// An explicit finite language with a length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedLanguage {
    pub bound: usize,
    pub words: BTreeSet<Word>,
}

/// `[w]_~` by BFS over single adjacent swaps of independent letters.
pub fn swap_class(word: &[Letter], alphabet: &DependenceAlphabet) -> Result<BTreeSet<Word>> {
    swap_class_bounded(word, alphabet, DEFAULT_BOUND)
}

pub fn swap_class_bounded(
    word: &[Letter],
    alphabet: &DependenceAlphabet,
    bound: usize,
) -> Result<BTreeSet<Word>> {
    alphabet.check_word(word)?;
    if word.len() > bound {
        return Err(Error::BoundExceeded {
            len: word.len(),
            bound,
        });
    }
    let mut class = BTreeSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 1..w.len() {
            if alphabet.independent(w[i - 1], w[i]) {
                let mut next = w.clone();
                next.swap(i - 1, i);
                if class.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(class)
}

/// `[L(A)]_~ ∩ Σ^{≤n}`; exact because swaps preserve length.
pub fn bounded_closure_oracle(dfa: &Dfa, n: usize) -> Result<BoundedLanguage> {
    if n > DEFAULT_BOUND {
        return Err(Error::BoundExceeded {
            len: n,
            bound: DEFAULT_BOUND,
        });
    }
    let mut words = BTreeSet::new();
    for w in dfa.words_up_to(n) {
        if !words.contains(&w) {
            words.extend(swap_class(&w, dfa.alphabet())?);
        }
    }
    Ok(BoundedLanguage { bound: n, words })
}

/// States after each prefix of `u·v^{|Q|+1}`, starting with the empty prefix.
fn prefix_states(dfa: &Dfa, lasso: &LassoWord) -> Vec<State> {
    let n = lasso.spoke().len() + lasso.cycle().len() * (dfa.state_count() + 1);
    let mut states = vec![dfa.initial()];
    for i in 0..n {
        states.push(dfa.step(*states.last().unwrap(), lasso.at(i)));
    }
    states
}

/// `u·v^ω ∈ lim(L(A))`. The states at the starts of `|Q|+1` copies of `v`
/// contain a repeat `i < j` by pigeonhole; from copy `i` on the run is
/// periodic, so some prefix is in `L(A)` infinitely often iff one ends inside
/// copies `i..j`.
pub fn lim_prefix_oracle(dfa: &Dfa, lasso: &LassoWord) -> bool {
    let states = prefix_states(dfa, lasso);
    let (u, v) = (lasso.spoke().len(), lasso.cycle().len());
    let start = |lap: usize| states[u + lap * v];
    let (i, j) = (0..=dfa.state_count())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .find(|&(i, j)| start(i) == start(j))
        .expect("pigeonhole");
    states[u + i * v..u + j * v]
        .iter()
        .any(|&q| dfa.is_final(q))
}

/// `u·v^ω ∈ ext(L(A))`: some prefix within the same window is accepted; later
/// prefixes only revisit window states.
pub fn ext_prefix_oracle(dfa: &Dfa, lasso: &LassoWord) -> bool {
    prefix_states(dfa, lasso)
        .into_iter()
        .any(|q| dfa.is_final(q))
}

/// F,I-cycle closure by enumeration: for each reachable `q`, all cycle words
/// at `q` up to length `max_len`, grouped by trace, must agree on visiting a
/// final state.
pub fn fi_cycle_closed_bruteforce(
    aut: &OmegaAutomaton,
    max_len: usize,
) -> Result<Option<CycleWitness>> {
    let dfa = aut.as_dfa()?;
    let s = dfa.alphabet().clone();
    let reachable = dfa.transitions().reachable();
    for q in (0..dfa.state_count()).filter(|&q| reachable[q]) {
        let mut classes: BTreeMap<Word, (Option<Word>, Option<Word>)> = BTreeMap::new();
        let mut frontier = vec![(Vec::<Letter>::new(), q, dfa.is_final(q))];
        while let Some((w, p, seen)) = frontier.pop() {
            if p == q {
                let key = normal_form(&w, &s)?.canon().to_vec();
                let slot = classes.entry(key).or_default();
                let side = if seen { &mut slot.0 } else { &mut slot.1 };
                if side.is_none() {
                    *side = Some(w.clone());
                }
            }
            if w.len() < max_len {
                for a in 0..s.len() {
                    let next = dfa.step(p, a);
                    let mut w2 = w.clone();
                    w2.push(a);
                    frontier.push((w2, next, seen || dfa.is_final(next)));
                }
            }
        }
        if let Some((visiting, silent)) = classes.into_values().find_map(|(x, y)| Some((x?, y?))) {
            return Ok(Some(CycleWitness {
                state: q,
                visiting,
                silent,
            }));
        }
    }
    Ok(None)
}

/// F,I-cycle closure checked directly: each `K_q` is compared with one
/// saturation round of itself, which adds nothing iff `K_q` is trace-closed.
pub fn fi_cycle_closed_direct(aut: &OmegaAutomaton, max_states: usize) -> Result<bool> {
    let dfa = aut.as_dfa()?;
    let reachable = dfa.transitions().reachable();
    for q in (0..dfa.state_count()).filter(|&q| reachable[q]) {
        let k_q = cycle_language(&dfa, q).minimize();
        if saturation_round(&k_q, max_states)? != k_q {
            return Ok(false);
        }
    }
    Ok(true)
}
