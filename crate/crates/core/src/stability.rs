//! Decision procedures: I-diamond, trace-closedness, F,I-cycle closure,
//! limit-stability, and the decomposition of I-diamond DWAs into Boolean
//! combinations of ext languages.

use std::collections::{HashMap, VecDeque};
use std::time::{Duration, Instant};

use crate::alphabet::{Letter, Word};
use crate::automata::{BoolCombo, Dfa, Formula, OmegaAutomaton, Sccs, State, Transitions};
use crate::closure::{ext_automaton, Polarity};
use crate::error::{Error, Result};

/// A reachable state and independent letters with `δ(q,ab) ≠ δ(q,ba)`.
/// Reachable states are scanned in BFS order.
pub fn i_diamond_violation(trans: &Transitions) -> Option<(State, Letter, Letter)> {
    let pairs = trans.alphabet().independent_pairs();
    if pairs.is_empty() {
        return None;
    }
    trans.access_words().into_iter().find_map(|(q, _)| {
        pairs
            .iter()
            .find(|&&(a, b)| trans.step(trans.step(q, a), b) != trans.step(trans.step(q, b), a))
            .map(|&(a, b)| (q, a, b))
    })
}

pub fn is_i_diamond(trans: &Transitions) -> bool {
    i_diamond_violation(trans).is_none()
}

fn require_i_diamond(trans: &Transitions) -> Result<()> {
    match i_diamond_violation(trans) {
        None => Ok(()),
        Some((state, a, b)) => Err(Error::NotIDiamond {
            state,
            a: trans.alphabet().symbol(a),
            b: trans.alphabet().symbol(b),
        }),
    }
}

/// `L(A) = [L(A)]_~`, decided on the minimal DFA, which is I-diamond exactly
/// for trace-closed languages.
pub fn is_trace_closed(dfa: &Dfa) -> bool {
    is_i_diamond(dfa.minimize().transitions())
}

/// Equivalent cycle words at `state`; only `visiting` passes a final state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    pub state: State,
    pub visiting: Word,
    pub silent: Word,
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub verdict: bool,
    pub witness: Option<CycleWitness>,
    pub elapsed: Duration,
    pub state_count: usize,
    pub letter_count: usize,
}

/// DFA for `K_q`: nonempty-or-empty words leading from `q` back to `q` whose
/// run (endpoints included) meets a final state. States are `(p, seen)`.
pub fn cycle_language(dfa: &Dfa, q: State) -> Dfa {
    let n = dfa.state_count();
    let trans = Transitions::from_fn(
        dfa.alphabet().clone(),
        2 * n,
        2 * q + dfa.is_final(q) as usize,
        |x, a| {
            let p = dfa.step(x / 2, a);
            2 * p + ((x % 2 == 1) || dfa.is_final(p)) as usize
        },
    )
    .expect("well-formed product");
    Dfa::new(trans, &[2 * q + 1]).expect("final in range")
}

/// Shortest, lexicographically least word separating `p1` from `p2`.
fn distinguishing_suffix(dfa: &Dfa, p1: State, p2: State) -> Option<Word> {
    let mut parent: HashMap<(State, State), Option<((State, State), Letter)>> =
        HashMap::from([((p1, p2), None)]);
    let mut queue = VecDeque::from([(p1, p2)]);
    while let Some((x, y)) = queue.pop_front() {
        if dfa.is_final(x) != dfa.is_final(y) {
            let mut word = Vec::new();
            let mut cur = (x, y);
            while let Some((prev, a)) = parent[&cur] {
                word.push(a);
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for a in 0..dfa.alphabet().len() {
            let next = (dfa.step(x, a), dfa.step(y, a));
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some(((x, y), a)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Equivalent words `(u, v)` with `u ∈ L(A)` and `v ∉ L(A)`, if `L(A)` is not
/// trace-closed. They differ by one swap of adjacent independent letters.
pub fn closure_violation(dfa: &Dfa) -> Option<(Word, Word)> {
    let min = dfa.minimize();
    let (m, a, b) = i_diamond_violation(min.transitions())?;
    let t = min.transitions();
    let access = t
        .access_words()
        .into_iter()
        .find(|(p, _)| *p == m)
        .map(|(_, w)| w)
        .unwrap();
    let z = distinguishing_suffix(&min, t.run_from(m, &[a, b]), t.run_from(m, &[b, a]))
        .expect("non-diamond states of a minimal DFA are distinguishable");
    let build = |x: Letter, y: Letter| [access.as_slice(), &[x, y], &z].concat();
    let (u, v) = (build(a, b), build(b, a));
    Some(if min.accepts(&u) { (u, v) } else { (v, u) })
}

/// Checks whether `K_q` is trace-closed; if not, extracts a witness from a
/// non-I-diamond state of its minimal DFA.
fn check_state(dfa: &Dfa, q: State) -> Option<CycleWitness> {
    let (visiting, silent) = closure_violation(&cycle_language(dfa, q))?;
    Some(CycleWitness {
        state: q,
        visiting,
        silent,
    })
}

/// F,I-cycle closure of an I-diamond Büchi automaton: for each reachable
/// state `q`, `K_q` must be trace-closed. The first failing state in state
/// order yields the witness.
pub fn fi_cycle_closed(aut: &OmegaAutomaton) -> Result<StabilityReport> {
    let start = Instant::now();
    let dfa = aut.as_dfa()?;
    require_i_diamond(dfa.transitions())?;
    let reachable = dfa.transitions().reachable();
    let witness = if dfa.alphabet().has_independence() {
        (0..dfa.state_count())
            .filter(|&q| reachable[q])
            .find_map(|q| check_state(&dfa, q))
    } else {
        None
    };
    Ok(StabilityReport {
        verdict: witness.is_none(),
        witness,
        elapsed: start.elapsed(),
        state_count: dfa.state_count(),
        letter_count: dfa.alphabet().len(),
    })
}

/// Limit-stability of `K = L(A)`: `K` must be trace-closed, and the minimal
/// DFA read as a DBA must be F,I-cycle closed. Witness states refer to the
/// minimal DFA's BFS numbering.
pub fn is_limit_stable(dfa: &Dfa) -> Result<StabilityReport> {
    let start = Instant::now();
    let min = dfa.minimize();
    if !is_i_diamond(min.transitions()) {
        return Err(Error::NotTraceClosed);
    }
    let mut report = fi_cycle_closed(&OmegaAutomaton::buchi(&min))?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// A DWA rewritten as a Boolean combination of ext automata.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub combo: BoolCombo,
    /// `K_S` for each atom: words whose run ends in component `S`.
    pub languages: Vec<Dfa>,
    /// The component (of the reachable, BFS-renumbered input) behind each atom.
    pub components: Vec<Vec<State>>,
}

/// Rewrites an I-diamond DWA as `⋃_S ext(K_S) ∩ ⋂_{S' after S} ¬ext(K_S')`
/// over its accepting cyclic SCCs `S`. Exclusions range over components
/// strictly reachable from `S`, so each disjunct says "the run settles in S".
pub fn dwa_decompose(aut: &OmegaAutomaton) -> Result<Decomposition> {
    let aut = aut.canonical();
    aut.check_weak()?;
    if !matches!(aut.acceptance(), crate::automata::Acceptance::Weak(_)) {
        return Err(Error::NotWeak);
    }
    require_i_diamond(aut.transitions())?;
    let sccs = Sccs::new(aut.transitions());
    let mut atom_of: HashMap<usize, usize> = HashMap::new();
    let mut atoms = Vec::new();
    let mut languages = Vec::new();
    let mut components = Vec::new();
    let mut atom = |c: usize| -> usize {
        *atom_of.entry(c).or_insert_with(|| {
            let mut finals = vec![false; aut.state_count()];
            for &q in &sccs.components[c] {
                finals[q] = true;
            }
            let k_s =
                Dfa::from_flags(aut.transitions().clone(), finals).expect("flags sized to states");
            atoms.push(ext_automaton(&k_s, Polarity::Positive));
            languages.push(k_s.minimize());
            components.push(sccs.components[c].clone());
            atoms.len() - 1
        })
    };
    let mut disjuncts = Vec::new();
    for c in 0..sccs.len() {
        if !sccs.nontrivial[c] || !aut.is_final(sccs.components[c][0]) {
            continue;
        }
        let mut conj = vec![Formula::Atom(atom(c))];
        for d in sccs.strictly_reachable(c) {
            conj.push(Formula::not(Formula::Atom(atom(d))));
        }
        disjuncts.push(Formula::And(conj));
    }
    let combo = BoolCombo::new(aut.alphabet(), atoms, Formula::Or(disjuncts))?;
    Ok(Decomposition {
        combo,
        languages,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::DependenceAlphabet;
    use crate::automata::{weak_equivalent, CompileOptions};
    use crate::fixtures;
    use crate::trace::{equivalent, LassoWord};

    #[test]
    fn i_diamond_examples() {
        assert!(is_i_diamond(fixtures::fig2_dfa().transitions()));
        let s = DependenceAlphabet::new(&['a', 'b'], &[('a', 'b')]).unwrap();
        let ab = Dfa::from_words(&s, &[s.word("ab").unwrap()]).unwrap();
        assert_eq!(i_diamond_violation(ab.transitions()), Some((0, 0, 1)));
        let full = DependenceAlphabet::full_dependence(&['a', 'b']).unwrap();
        let any = Dfa::from_words(&full, &[full.word("ab").unwrap()]).unwrap();
        assert!(is_i_diamond(any.transitions()));
    }

    #[test]
    fn trace_closed_examples() {
        assert!(is_trace_closed(&fixtures::example1_k()));
        let s = DependenceAlphabet::new(&['a', 'b'], &[('a', 'b')]).unwrap();
        assert!(!is_trace_closed(
            &Dfa::from_words(&s, &[s.word("ab").unwrap()]).unwrap()
        ));
        assert!(is_trace_closed(&Dfa::universal(&s)));
    }

    #[test]
    fn even_counts_witness() {
        let fig2 = fixtures::fig2_dfa();
        let s = fig2.alphabet().clone();
        let report = fi_cycle_closed(&OmegaAutomaton::buchi(&fig2)).unwrap();
        assert!(!report.verdict);
        let w = report.witness.unwrap();
        assert_eq!(w.state, 4);
        assert_eq!(s.render(&w.visiting), "abab");
        assert_eq!(s.render(&w.silent), "aabb");
        assert!(equivalent(&w.visiting, &w.silent, &s).unwrap());
        let again = is_limit_stable(&fig2).unwrap();
        assert_eq!(again.witness.unwrap().state, 4);
    }

    #[test]
    fn stable_examples() {
        assert!(
            fi_cycle_closed(&OmegaAutomaton::buchi(&fixtures::contains_a()))
                .unwrap()
                .verdict
        );
        assert!(is_limit_stable(&fixtures::contains_a()).unwrap().verdict);
        let full = DependenceAlphabet::full_dependence(&['a', 'b']).unwrap();
        let d = Dfa::from_fn(&full, 3, 0, |q, a| (q + a + 1) % 3, &[1]).unwrap();
        assert!(fi_cycle_closed(&OmegaAutomaton::buchi(&d)).unwrap().verdict);
        let s = DependenceAlphabet::new(&['a', 'b'], &[('a', 'b')]).unwrap();
        assert!(is_limit_stable(&Dfa::universal(&s)).unwrap().verdict);
        let ab = Dfa::from_words(&s, &[s.word("ab").unwrap()]).unwrap();
        assert_eq!(is_limit_stable(&ab).unwrap_err(), Error::NotTraceClosed);
        assert!(matches!(
            fi_cycle_closed(&OmegaAutomaton::buchi(&ab)),
            Err(Error::NotIDiamond { .. })
        ));
    }

    #[test]
    fn decompose_contains_a() {
        let ext = ext_automaton(&fixtures::contains_a(), Polarity::Positive);
        let d = dwa_decompose(&ext).unwrap();
        assert_eq!(
            d.combo.formula,
            Formula::Or(vec![Formula::And(vec![Formula::Atom(0)])])
        );
        let back = d.combo.compile(CompileOptions::default()).unwrap();
        assert!(weak_equivalent(&back, &ext).unwrap());
    }

    #[test]
    fn decompose_universal() {
        let s = DependenceAlphabet::new(&['a', 'b'], &[('a', 'b')]).unwrap();
        let all = ext_automaton(&Dfa::universal(&s), Polarity::Positive);
        let d = dwa_decompose(&all).unwrap();
        assert_eq!(d.combo.atoms.len(), 1);
        assert!(d.languages[0].equivalent(&Dfa::universal(&s)).unwrap());
    }

    #[test]
    fn decompose_product() {
        let s = DependenceAlphabet::new(&['a', 'b'], &[('a', 'b')]).unwrap();
        let has = |x: Letter| {
            Dfa::from_fn(&s, 2, 0, move |q, a| if a == x { 1 } else { q }, &[1]).unwrap()
        };
        let combo = BoolCombo::new(
            &s,
            vec![
                ext_automaton(&has(0), Polarity::Positive),
                ext_automaton(&has(1), Polarity::Positive),
            ],
            Formula::And(vec![Formula::Atom(0), Formula::Atom(1)]),
        )
        .unwrap();
        let product = combo.compile(CompileOptions::default()).unwrap();
        assert_eq!(Sccs::new(product.transitions()).len(), 4);
        let l = |x: &str| LassoWord::parse(&s, x).unwrap();
        assert!(product.eval_lasso(&l(";ab")).unwrap());
        assert!(!product.eval_lasso(&l(";a")).unwrap());
        let d = dwa_decompose(&product).unwrap();
        let back = d.combo.compile(CompileOptions::default()).unwrap();
        assert!(weak_equivalent(&back, &product).unwrap());
    }
}
