//! Residual equivalence and minimization for deterministic weak automata.

use std::collections::VecDeque;

use super::omega::{Acceptance, OmegaAutomaton};
use super::scc::{tarjan, Sccs};
use super::transitions::{State, Transitions};
use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::trace::LassoWord;

/// For every pair `(p, q)` of states of two weak automata, whether the
/// languages accepted from `p` and from `q` differ.
///
/// A run on an ω-word ends up in one SCC of the pair graph, and that SCC
/// projects into one SCC of each factor, where acceptance is constant. So the
/// languages differ iff the pair can reach a cyclic pair-SCC whose two
/// projections carry different colours.
fn distinguishable(a: &Transitions, fa: &[bool], b: &Transitions, fb: &[bool]) -> Vec<bool> {
    let m = b.state_count();
    let n = a.state_count() * m;
    let k = a.letter_count();
    let succ = |x: usize| (0..k).map(move |c| a.step(x / m, c) * m + b.step(x % m, c));
    let comp = tarjan(n, succ);
    let comps = comp.iter().max().map_or(0, |c| c + 1);
    let mut size = vec![0; comps];
    let mut cyclic = vec![false; comps];
    for x in 0..n {
        size[comp[x]] += 1;
        if succ(x).any(|y| y == x) {
            cyclic[comp[x]] = true;
        }
    }
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        for y in succ(x) {
            pred[y].push(x);
        }
    }
    let mut bad = vec![false; n];
    let mut queue = VecDeque::new();
    for x in 0..n {
        let c = comp[x];
        if (size[c] > 1 || cyclic[c]) && fa[x / m] != fb[x % m] {
            bad[x] = true;
            queue.push_back(x);
        }
    }
    while let Some(y) = queue.pop_front() {
        for &x in &pred[y] {
            if !bad[x] {
                bad[x] = true;
                queue.push_back(x);
            }
        }
    }
    bad
}

fn weak_flags(aut: &OmegaAutomaton) -> Result<&[bool]> {
    match aut.acceptance() {
        Acceptance::Weak(f) => {
            aut.check_weak()?;
            Ok(f)
        }
        _ => Err(Error::NotWeak),
    }
}

/// Exact language equivalence of two deterministic weak automata.
pub fn weak_equivalent(x: &OmegaAutomaton, y: &OmegaAutomaton) -> Result<bool> {
    x.alphabet().ensure_same(y.alphabet())?;
    let (fx, fy) = (weak_flags(x)?, weak_flags(y)?);
    let bad = distinguishable(x.transitions(), fx, y.transitions(), fy);
    Ok(!bad[x.initial() * y.state_count() + y.initial()])
}

/// A word leading from `from` back to itself without leaving `members`.
fn closing_walk(trans: &Transitions, from: State, members: &[bool]) -> Option<Word> {
    let mut parent: Vec<Option<(State, usize)>> = vec![None; trans.state_count()];
    let mut queue = VecDeque::new();
    for a in 0..trans.letter_count() {
        let p = trans.step(from, a);
        if p == from {
            return Some(vec![a]);
        }
        if members[p] && parent[p].is_none() {
            parent[p] = Some((from, a));
            queue.push_back(p);
        }
    }
    while let Some(q) = queue.pop_front() {
        for a in 0..trans.letter_count() {
            let p = trans.step(q, a);
            if p == from {
                let mut word = vec![a];
                let mut cur = q;
                while cur != from {
                    let (prev, c) = parent[cur].unwrap();
                    word.push(c);
                    cur = prev;
                }
                word.reverse();
                return Some(word);
            }
            if members[p] && parent[p].is_none() {
                parent[p] = Some((q, a));
                queue.push_back(p);
            }
        }
    }
    None
}

impl OmegaAutomaton {
    /// The minimal DWA for the same language.
    ///
    /// States are merged when their residual languages coincide; each cyclic
    /// SCC of the quotient is then coloured by evaluating one closing walk
    /// from a representative, and transient states are coloured rejecting.
    /// The result is BFS-numbered, so the operation is idempotent.
    pub fn minimize_weak(&self) -> Result<OmegaAutomaton> {
        let trimmed = self.canonical();
        let flags = weak_flags(&trimmed)?;
        let n = trimmed.state_count();
        let bad = distinguishable(trimmed.transitions(), flags, trimmed.transitions(), flags);
        let mut class = vec![usize::MAX; n];
        let mut rep = Vec::new();
        for q in 0..n {
            if class[q] == usize::MAX {
                for p in q..n {
                    if class[p] == usize::MAX && !bad[q * n + p] {
                        class[p] = rep.len();
                    }
                }
                rep.push(q);
            }
        }
        let t = trimmed.transitions();
        let quotient = Transitions::from_fn(
            self.alphabet().clone(),
            rep.len(),
            class[t.initial()],
            |c, a| class[t.step(rep[c], a)],
        )?;
        let sccs = Sccs::new(&quotient);
        let mut colors = vec![false; rep.len()];
        for (i, comp) in sccs.components.iter().enumerate() {
            if !sccs.nontrivial[i] {
                continue;
            }
            let mut members = vec![false; rep.len()];
            for &c in comp {
                members[c] = true;
            }
            let walk = closing_walk(&quotient, comp[0], &members).expect("cyclic component");
            let lasso = LassoWord::new(Vec::new(), walk)?;
            let color = trimmed.accepts_from(rep[comp[0]], &lasso);
            for &c in comp {
                colors[c] = color;
            }
        }
        Ok(OmegaAutomaton::new(quotient, Acceptance::Weak(colors))?.canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::DependenceAlphabet;
    use crate::automata::Dfa;

    fn ab() -> DependenceAlphabet {
        DependenceAlphabet::new(&['a', 'b'], &[('a', 'b')]).unwrap()
    }

    #[test]
    fn universal_collapses_to_one_state() {
        let d = Dfa::from_fn(&ab(), 3, 0, |q, a| (q + a + 1) % 3, &[0, 1, 2]).unwrap();
        let w = OmegaAutomaton::weak(&d).unwrap().minimize_weak().unwrap();
        assert_eq!(w.state_count(), 1);
        assert!(w.is_final(0));
    }

    #[test]
    fn contains_a_is_already_minimal() {
        let d = Dfa::from_fn(&ab(), 2, 0, |q, a| if a == 0 { 1 } else { q }, &[1]).unwrap();
        let w = OmegaAutomaton::weak(&d).unwrap();
        assert_eq!(w.minimize_weak().unwrap(), w);
    }

    #[test]
    fn duplicate_sinks_merge() {
        // 0 --a--> 1, 0 --b--> 2; 1 and 2 loop on a and fall into the rejecting sink 3 on b
        let d = Dfa::from_fn(
            &ab(),
            4,
            0,
            |q, a| match (q, a) {
                (0, _) => 1 + a,
                (3, _) | (_, 1) => 3,
                _ => q,
            },
            &[1, 2],
        )
        .unwrap();
        let w = OmegaAutomaton::weak(&d).unwrap();
        let m = w.minimize_weak().unwrap();
        assert_eq!(m.state_count(), 3);
        assert!(weak_equivalent(&w, &m).unwrap());
        assert_eq!(m.minimize_weak().unwrap(), m);
    }

    #[test]
    fn transient_colour_is_irrelevant() {
        // the transient initial state is accepting; the language is empty
        let d = Dfa::from_fn(&ab(), 2, 0, |_, _| 1, &[0]).unwrap();
        let w = OmegaAutomaton::weak(&d).unwrap();
        let m = w.minimize_weak().unwrap();
        assert_eq!(m.state_count(), 1);
        assert!(!m.is_final(0));
        assert!(weak_equivalent(&w, &m).unwrap());
    }

    #[test]
    fn rejects_non_weak() {
        let d = Dfa::from_fn(&ab(), 2, 0, |q, _| 1 - q, &[1]).unwrap();
        assert_eq!(
            OmegaAutomaton::buchi(&d).minimize_weak().unwrap_err(),
            Error::NotWeak
        );
    }
}
