use std::collections::HashMap;

use super::dfa::Dfa;
use super::transitions::{State, Transitions};
use crate::alphabet::{DependenceAlphabet, Letter};
use crate::error::{Error, Result};

/// A nondeterministic automaton with ε-moves, used as an intermediate for
/// closure constructions.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: DependenceAlphabet,
    initial: Vec<State>,
    edges: Vec<Vec<State>>,
    eps: Vec<Vec<State>>,
    finals: Vec<bool>,
}

impl Nfa {
    pub fn new(alphabet: &DependenceAlphabet, state_count: usize) -> Self {
        Self {
            alphabet: alphabet.clone(),
            initial: Vec::new(),
            edges: vec![Vec::new(); state_count * alphabet.len()],
            eps: vec![Vec::new(); state_count],
            finals: vec![false; state_count],
        }
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn add_state(&mut self) -> State {
        self.finals.push(false);
        self.eps.push(Vec::new());
        self.edges
            .extend(std::iter::repeat_with(Vec::new).take(self.alphabet.len()));
        self.finals.len() - 1
    }

    pub fn add_initial(&mut self, q: State) {
        self.initial.push(q);
    }

    pub fn set_final(&mut self, q: State) {
        self.finals[q] = true;
    }

    pub fn add_edge(&mut self, p: State, a: Letter, q: State) {
        self.edges[p * self.alphabet.len() + a].push(q);
    }

    pub fn add_eps(&mut self, p: State, q: State) {
        self.eps[p].push(q);
    }

    /// Copies a DFA in at offset `state_count()`, returning the offset.
    pub fn embed(&mut self, dfa: &Dfa) -> State {
        let base = self.state_count();
        for _ in 0..dfa.state_count() {
            self.add_state();
        }
        for q in 0..dfa.state_count() {
            for a in 0..self.alphabet.len() {
                self.add_edge(base + q, a, base + dfa.step(q, a));
            }
            if dfa.is_final(q) {
                self.set_final(base + q);
            }
        }
        base
    }

    fn close(&self, set: &mut Vec<State>, mark: &mut [bool]) {
        let mut i = 0;
        while i < set.len() {
            for &p in &self.eps[set[i]] {
                if !mark[p] {
                    mark[p] = true;
                    set.push(p);
                }
            }
            i += 1;
        }
        for &q in set.iter() {
            mark[q] = false;
        }
        set.sort_unstable();
    }

    /// Subset construction over reachable subsets.
    pub fn determinize(&self, max_states: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let mut mark = vec![false; self.state_count()];
        let mut start = Vec::new();
        for &q in &self.initial {
            if !mark[q] {
                mark[q] = true;
                start.push(q);
            }
        }
        self.close(&mut start, &mut mark);
        let mut index: HashMap<Vec<State>, State> = HashMap::from([(start.clone(), 0)]);
        let mut subsets = vec![start];
        let mut delta = Vec::new();
        let mut head = 0;
        while head < subsets.len() {
            for a in 0..k {
                let mut next = Vec::new();
                for &q in &subsets[head] {
                    for &p in &self.edges[q * k + a] {
                        if !mark[p] {
                            mark[p] = true;
                            next.push(p);
                        }
                    }
                }
                self.close(&mut next, &mut mark);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if subsets.len() >= max_states {
                            return Err(Error::SizeLimit {
                                what: "subset construction",
                                limit: max_states,
                            });
                        }
                        index.insert(next.clone(), subsets.len());
                        subsets.push(next);
                        subsets.len() - 1
                    }
                };
                delta.push(id);
            }
            head += 1;
        }
        let finals: Vec<bool> = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.finals[q]))
            .collect();
        let trans = Transitions::new(self.alphabet.clone(), subsets.len(), 0, delta)?;
        Dfa::from_flags(trans, finals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_via_eps() {
        let s = DependenceAlphabet::full_dependence(&['a', 'b']).unwrap();
        let only_a = Dfa::from_words(&s, &[vec![0]]).unwrap();
        let only_b = Dfa::from_words(&s, &[vec![1]]).unwrap();
        let mut nfa = Nfa::new(&s, 1);
        nfa.add_initial(0);
        let x = nfa.embed(&only_a);
        let y = nfa.embed(&only_b);
        nfa.add_eps(0, x + only_a.initial());
        nfa.add_eps(0, y + only_b.initial());
        let d = nfa.determinize(100).unwrap();
        assert!(d.equivalent(&only_a.union(&only_b).unwrap()).unwrap());
        assert!(matches!(nfa.determinize(1), Err(Error::SizeLimit { .. })));
    }
}
