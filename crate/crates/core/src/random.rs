//! Random instances for property tests, the acceptance suite and benches.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::alphabet::{DependenceAlphabet, Letter, Word};
use crate::automata::{Acceptance, Dfa, OmegaAutomaton, Sccs, Transitions};
use crate::dacma::Dacma;
use crate::trace::LassoWord;

const LETTERS: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];

/// `k` letters, each unordered pair independent with probability `p`. At
/// least one pair is independent when `k ≥ 2`.
pub fn alphabet(rng: &mut impl Rng, k: usize, p: f64) -> DependenceAlphabet {
    let letters = &LETTERS[..k];
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if rng.gen_bool(p) {
                pairs.push((letters[i], letters[j]));
            }
        }
    }
    if pairs.is_empty() && k >= 2 {
        let i = rng.gen_range(0..k - 1);
        pairs.push((letters[i], letters[rng.gen_range(i + 1..k)]));
    }
    DependenceAlphabet::new(letters, &pairs).unwrap()
}

pub fn word(rng: &mut impl Rng, alphabet: &DependenceAlphabet, len: usize) -> Word {
    (0..len).map(|_| rng.gen_range(0..alphabet.len())).collect()
}

pub fn lasso(
    rng: &mut impl Rng,
    alphabet: &DependenceAlphabet,
    max_spoke: usize,
    max_cycle: usize,
) -> LassoWord {
    let (m, n) = (
        rng.gen_range(0..=max_spoke),
        rng.gen_range(1..=max_cycle.max(1)),
    );
    let u = word(rng, alphabet, m);
    let v = word(rng, alphabet, n);
    LassoWord::new(u, v).unwrap()
}

/// Applies `swaps` random adjacent swaps of independent letters.
pub fn shuffle_word(
    rng: &mut impl Rng,
    alphabet: &DependenceAlphabet,
    word: &[Letter],
    swaps: usize,
) -> Word {
    let mut w = word.to_vec();
    let spots: Vec<usize> = (1..w.len()).collect();
    for _ in 0..swaps {
        if let Some(&i) = spots.choose(rng) {
            if alphabet.independent(w[i - 1], w[i]) {
                w.swap(i - 1, i);
            }
        }
    }
    w
}

/// A lasso for an equivalent ω-trace: unrolls and rotates the cycle, then
/// permutes the spoke and the cycle independently.
pub fn equivalent_lasso(
    rng: &mut impl Rng,
    alphabet: &DependenceAlphabet,
    lasso: &LassoWord,
) -> LassoWord {
    let (mut u, mut v) = (lasso.spoke().to_vec(), lasso.cycle().to_vec());
    if rng.gen_bool(0.5) {
        u.extend_from_slice(&v);
    }
    for _ in 0..rng.gen_range(0..3) {
        let copy = v.clone();
        v.extend_from_slice(&copy);
    }
    for _ in 0..rng.gen_range(0..v.len()) {
        u.push(v[0]);
        v.rotate_left(1);
    }
    let swaps = 3 * (u.len() + v.len());
    let u = shuffle_word(rng, alphabet, &u, swaps);
    let v = shuffle_word(rng, alphabet, &v, swaps);
    LassoWord::new(u, v).unwrap()
}

/// A DACMA with the given local sizes and uniformly random local maps,
/// without acceptance.
pub fn dacma(rng: &mut impl Rng, alphabet: &DependenceAlphabet, sizes: &[usize]) -> Dacma {
    let deltas = (0..alphabet.len())
        .map(|a| {
            let domain: usize = alphabet.dependent_on(a).iter().map(|&b| sizes[b]).product();
            (0..domain).map(|_| rng.gen_range(0..sizes[a])).collect()
        })
        .collect();
    Dacma::new(alphabet, sizes, deltas, &vec![0; alphabet.len()], vec![]).unwrap()
}

/// The global structure of a random DACMA with at most `max_states`
/// reachable states, and at least half of what the alphabet allows;
/// I-diamond by construction.
pub fn i_diamond_transitions(
    rng: &mut impl Rng,
    alphabet: &DependenceAlphabet,
    max_states: usize,
) -> Transitions {
    let possible = 3usize.saturating_pow(alphabet.len() as u32);
    let floor = max_states.min(possible) / 2;
    loop {
        let sizes: Vec<usize> = (0..alphabet.len()).map(|_| rng.gen_range(1..=3)).collect();
        if let Ok(g) = dacma(rng, alphabet, &sizes).global_automaton(max_states) {
            if g.trans.state_count() >= floor {
                return g.trans;
            }
        }
    }
}

/// An I-diamond DFA with at most `max_states` states and random finals.
pub fn i_diamond_dfa(rng: &mut impl Rng, alphabet: &DependenceAlphabet, max_states: usize) -> Dfa {
    let trans = i_diamond_transitions(rng, alphabet, max_states);
    let finals = (0..trans.state_count())
        .map(|_| rng.gen_bool(0.4))
        .collect();
    Dfa::from_flags(trans, finals).unwrap()
}

/// An I-diamond DFA with exactly `n` states, all reachable: pairwise
/// independent letters driving local counters whose sizes multiply to `n`.
/// Each counter steps along a chain and jumps back at its end.
pub fn i_diamond_dfa_sized(rng: &mut impl Rng, k: usize, n: usize) -> Dfa {
    let letters = &LETTERS[..k];
    let pairs: Vec<(char, char)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (letters[i], letters[j])))
        .collect();
    let s = DependenceAlphabet::new(letters, &pairs).unwrap();
    let mut sizes = vec![1; k];
    let mut rest = n;
    let mut i = 0;
    while rest > 1 {
        let f = (2..=rest).find(|f| rest.is_multiple_of(*f)).unwrap();
        sizes[i % k] *= f;
        rest /= f;
        i += 1;
    }
    let jumps: Vec<usize> = sizes.iter().map(|&m| rng.gen_range(0..m)).collect();
    let deltas = (0..k)
        .map(|a| {
            (0..sizes[a])
                .map(|q| if q + 1 < sizes[a] { q + 1 } else { jumps[a] })
                .collect()
        })
        .collect();
    let m = Dacma::new(&s, &sizes, deltas, &vec![0; k], vec![]).unwrap();
    let g = m.global_automaton(n).unwrap();
    let finals = (0..n).map(|_| rng.gen_bool(0.3)).collect();
    Dfa::from_flags(g.trans, finals).unwrap()
}

/// A random I-diamond DWA: each SCC of a random I-diamond structure is
/// accepting with probability 1/2.
pub fn i_diamond_dwa(
    rng: &mut impl Rng,
    alphabet: &DependenceAlphabet,
    max_states: usize,
) -> OmegaAutomaton {
    let trans = i_diamond_transitions(rng, alphabet, max_states);
    let sccs = Sccs::new(&trans);
    let accepting: Vec<bool> = (0..sccs.len()).map(|_| rng.gen_bool(0.5)).collect();
    let finals = (0..trans.state_count())
        .map(|q| accepting[sccs.component_of[q]])
        .collect();
    OmegaAutomaton::new(trans, Acceptance::Weak(finals)).unwrap()
}
