//! Named automata used by tests, the acceptance suite and the CLI corpus.

use std::collections::BTreeSet;

use crate::algebra::FiniteSemigroup;
use crate::alphabet::DependenceAlphabet;
use crate::automata::{Acceptance, Dfa, OmegaAutomaton, Transitions};
use crate::dacma::Dacma;

pub fn ab_independent() -> DependenceAlphabet {
    DependenceAlphabet::new(&['a', 'b'], &[('a', 'b')]).unwrap()
}

/// `{a, b, c}` with `b I c`.
pub fn abc_bc() -> DependenceAlphabet {
    DependenceAlphabet::new(&['a', 'b', 'c'], &[('b', 'c')]).unwrap()
}

/// Minimal DFA of `[(aa)⁺(bb)⁺]_~`: both counts even and positive.
pub fn fig2_dfa() -> Dfa {
    let edges = [
        [1, 2],
        [3, 4],
        [4, 5],
        [1, 6],
        [6, 7],
        [7, 2],
        [4, 8],
        [8, 4],
        [7, 6],
    ];
    let trans = Transitions::from_fn(ab_independent(), 9, 0, |q, a| edges[q][a]).unwrap();
    Dfa::new(trans, &[8]).unwrap()
}

/// The `fig2_dfa` transition structure with a Muller table.
pub fn fig2_muller() -> OmegaAutomaton {
    let table = [
        vec![6, 8],
        vec![7, 8],
        vec![4, 6, 7],
        vec![4, 6, 8],
        vec![4, 7, 8],
        vec![6, 7, 8],
        vec![4, 6, 7, 8],
    ];
    let sets = table.into_iter().map(BTreeSet::from_iter).collect();
    OmegaAutomaton::new(fig2_dfa().transitions().clone(), Acceptance::Muller(sets)).unwrap()
}

/// `[(a^m)⁺(b^n)⁺]_~` over `a I b`.
pub fn family(m: usize, n: usize) -> Dfa {
    // per letter: 0 = none yet, 1..=k counts mod k with k meaning "positive multiple"
    let counter = |q: usize, k: usize| if q == k { 1 } else { q + 1 };
    let width = n + 1;
    Dfa::from_fn(
        &ab_independent(),
        (m + 1) * width,
        0,
        |q, a| {
            let (x, y) = (q / width, q % width);
            if a == 0 {
                counter(x, m) * width + y
            } else {
                x * width + counter(y, n)
            }
        },
        &[m * width + n],
    )
    .unwrap()
}

/// `K = [ab]_~ = {ab}` over `{a, b, c}` with `b I c`.
pub fn example1_k() -> Dfa {
    let s = abc_bc();
    Dfa::from_words(&s, &[s.word("ab").unwrap()]).unwrap()
}

/// Words containing an `a`, over `a I b`.
pub fn contains_a() -> Dfa {
    Dfa::from_fn(
        &ab_independent(),
        2,
        0,
        |q, a| if a == 0 { 1 } else { q },
        &[1],
    )
    .unwrap()
}

/// Trace-closed languages with independence, for closure and ext checks.
pub fn curated_trace_closed() -> Vec<(&'static str, Dfa)> {
    let s = abc_bc();
    let ab = ab_independent();
    let words = |alphabet: &DependenceAlphabet, ws: &[&str]| {
        Dfa::from_words(
            alphabet,
            &ws.iter()
                .map(|w| alphabet.word(w).unwrap())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    };
    vec![
        ("example1", example1_k()),
        ("contains_a", contains_a()),
        ("fig2", fig2_dfa()),
        ("abc_acb", words(&s, &["abc", "acb"])),
        ("ab_ba_c", words(&s, &["ab", "bca", "cba"])),
        // even length with at least one b
        (
            "even_length_with_b",
            Dfa::from_fn(&ab, 4, 0, |q, a| ((q % 2) ^ 1) + 2 * ((q / 2) | a), &[2]).unwrap(),
        ),
        ("one_a_one_b", words(&ab, &["ab", "ba"])),
    ]
}

/// Two-letter counter over `a I b`: each component follows `0→1→2→3→2`.
/// Accepts when some letter occurs infinitely often and the other occurs an
/// even, positive number of times or infinitely often.
pub fn counter_dacma() -> Dacma {
    let chain = |q: usize| if q == 3 { 2 } else { q + 1 };
    let set = |xs: &[usize]| xs.iter().copied().collect::<BTreeSet<_>>();
    Dacma::from_fn(
        &ab_independent(),
        &[4, 4],
        &[0, 0],
        |_, view| chain(view[0]),
        vec![
            vec![set(&[2]), set(&[2, 3])],
            vec![set(&[2, 3]), set(&[2])],
            vec![set(&[2, 3]), set(&[2, 3])],
        ],
    )
    .unwrap()
}

/// `{a, b, c}` with `a I c`: `a` and `c` toggle parities, `b` records their
/// sum when it fires.
pub fn parity_dacma() -> Dacma {
    let s = DependenceAlphabet::new(&['a', 'b', 'c'], &[('a', 'c')]).unwrap();
    let set = |xs: &[usize]| xs.iter().copied().collect::<BTreeSet<_>>();
    Dacma::from_fn(
        &s,
        &[2, 2, 2],
        &[0, 0, 0],
        |a, view| match a {
            0 => 1 - view[0],
            1 => view[0] ^ view[2],
            _ => 1 - view[1],
        },
        vec![
            vec![set(&[0, 1]), set(&[1]), set(&[0, 1])],
            vec![set(&[0]), set(&[0]), set(&[0, 1])],
            vec![set(&[0, 1]), set(&[0, 1]), set(&[0])],
            vec![set(&[1]), set(&[0, 1]), set(&[1])],
        ],
    )
    .unwrap()
}

/// `{a, b, c}` with `a I b`: `a` counts mod 3, `b` is a switch, `c` latches
/// whether the count was zero with the switch on.
pub fn latch_dacma() -> Dacma {
    let s = DependenceAlphabet::new(&['a', 'b', 'c'], &[('a', 'b')]).unwrap();
    let set = |xs: &[usize]| xs.iter().copied().collect::<BTreeSet<_>>();
    Dacma::from_fn(
        &s,
        &[3, 2, 2],
        &[0, 0, 0],
        |a, view| match a {
            0 => (view[0] + 1) % 3,
            1 => 1 - view[0],
            _ => (view[0] == 0 && view[1] == 1) as usize,
        },
        vec![
            vec![set(&[0, 1, 2]), set(&[0, 1]), set(&[0, 1])],
            vec![set(&[0]), set(&[1]), set(&[1])],
            vec![set(&[1]), set(&[0, 1]), set(&[0])],
            vec![set(&[0, 1, 2]), set(&[0]), set(&[0, 1])],
        ],
    )
    .unwrap()
}

pub fn curated_dacmas() -> Vec<(&'static str, Dacma)> {
    vec![
        ("counter", counter_dacma()),
        ("parity", parity_dacma()),
        ("latch", latch_dacma()),
    ]
}

/// Addition on `{0, 1, 2, 3}` where 2 and 3 stand for "even ≥ 2" and
/// "odd ≥ 3".
pub fn capped_add(x: usize, y: usize) -> usize {
    let s = x + y;
    if s < 2 || x == 0 || y == 0 {
        s
    } else {
        2 + s % 2
    }
}

/// Recognizer of `[(aa)⁺(bb)⁺]_~` in `C × C` with `a ↦ (1,0)`, `b ↦ (0,1)`
/// and `P = {(2,2)}`. Returns the semigroup, the pair behind each element,
/// and `P` as flags.
pub fn capped_counter_recognizer() -> (FiniteSemigroup, Vec<(usize, usize)>, Vec<bool>) {
    let (sg, values) = FiniteSemigroup::generate(
        &ab_independent(),
        vec![(1, 0), (0, 1)],
        |&(a, b), &(c, d)| (capped_add(a, c), capped_add(b, d)),
        64,
    )
    .unwrap();
    let p = values.iter().map(|&v| v == (2, 2)).collect();
    (sg, values, p)
}
