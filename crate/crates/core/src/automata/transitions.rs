use std::collections::VecDeque;

use crate::alphabet::{DependenceAlphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::trace::LassoWord;

pub type State = usize;

/// A complete deterministic transition structure with an initial state.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Transitions {
    alphabet: DependenceAlphabet,
    initial: State,
    delta: Vec<State>,
}

impl Transitions {
    /// `delta[q * |Σ| + a]` is the `a`-successor of `q`.
    pub fn new(
        alphabet: DependenceAlphabet,
        state_count: usize,
        initial: State,
        delta: Vec<State>,
    ) -> Result<Self> {
        if state_count == 0 {
            return Err(Error::Invalid(
                "an automaton needs at least one state".into(),
            ));
        }
        if delta.len() != state_count * alphabet.len() {
            return Err(Error::Invalid(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                state_count * alphabet.len()
            )));
        }
        if initial >= state_count {
            return Err(Error::Invalid(format!(
                "initial state {initial} out of range"
            )));
        }
        if let Some(q) = delta.iter().find(|&&q| q >= state_count) {
            return Err(Error::Invalid(format!(
                "transition target {q} out of range"
            )));
        }
        Ok(Self {
            alphabet,
            initial,
            delta,
        })
    }

    pub fn from_fn(
        alphabet: DependenceAlphabet,
        state_count: usize,
        initial: State,
        mut f: impl FnMut(State, Letter) -> State,
    ) -> Result<Self> {
        let k = alphabet.len();
        let delta = (0..state_count * k).map(|i| f(i / k, i % k)).collect();
        Self::new(alphabet, state_count, initial, delta)
    }

    pub fn alphabet(&self) -> &DependenceAlphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len() / self.alphabet.len().max(1)
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn step(&self, q: State, a: Letter) -> State {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn run_from(&self, q: State, word: &[Letter]) -> State {
        word.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn run(&self, word: &[Letter]) -> State {
        self.run_from(self.initial, word)
    }

    pub(crate) fn with_initial(&self, initial: State) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            initial,
            delta: self.delta.clone(),
        }
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.letter_count() {
                let p = self.step(q, a);
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Reachable states in BFS order (letters in alphabet order), each with
    /// its shortest, lexicographically least access word.
    pub fn access_words(&self) -> Vec<(State, Word)> {
        let mut word: Vec<Option<Word>> = vec![None; self.state_count()];
        word[self.initial] = Some(Vec::new());
        let mut order = vec![self.initial];
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for a in 0..self.letter_count() {
                let p = self.step(q, a);
                if word[p].is_none() {
                    let mut w = word[q].clone().unwrap();
                    w.push(a);
                    word[p] = Some(w);
                    order.push(p);
                }
            }
        }
        order
            .into_iter()
            .map(|q| (q, word[q].take().unwrap()))
            .collect()
    }

    /// Renumbers reachable states in BFS order. Returns the new structure and
    /// the old-to-new map (`None` for unreachable states).
    pub(crate) fn canonical(&self) -> (Self, Vec<Option<State>>) {
        let k = self.letter_count();
        let mut map = vec![None; self.state_count()];
        let mut order = vec![self.initial];
        map[self.initial] = Some(0);
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for a in 0..k {
                let p = self.step(q, a);
                if map[p].is_none() {
                    map[p] = Some(order.len());
                    order.push(p);
                }
            }
        }
        let delta = order
            .iter()
            .flat_map(|&q| (0..k).map(move |a| (q, a)))
            .map(|(q, a)| map[self.step(q, a)].unwrap())
            .collect();
        (
            Self {
                alphabet: self.alphabet.clone(),
                initial: 0,
                delta,
            },
            map,
        )
    }

    /// Runs `u` from `start`, then `v` until a (position-in-v, state) pair
    /// repeats.
    pub fn lasso_run_from(&self, start: State, lasso: &LassoWord) -> LassoRun {
        let mut prefix = vec![start];
        let mut q = start;
        for &a in lasso.spoke() {
            q = self.step(q, a);
            prefix.push(q);
        }
        prefix.pop();
        let v = lasso.cycle();
        let mut seen = vec![usize::MAX; self.state_count() * v.len()];
        let mut visited = Vec::new();
        let mut pos = 0;
        loop {
            let key = q * v.len() + pos;
            if seen[key] != usize::MAX {
                let cycle = visited.split_off(seen[key]);
                prefix.extend(visited);
                return LassoRun { prefix, cycle };
            }
            seen[key] = visited.len();
            visited.push(q);
            q = self.step(q, v[pos]);
            pos = (pos + 1) % v.len();
        }
    }

    pub fn lasso_run(&self, lasso: &LassoWord) -> LassoRun {
        self.lasso_run_from(self.initial, lasso)
    }

    pub(crate) fn check_lasso(&self, lasso: &LassoWord) -> Result<()> {
        self.alphabet.check_word(lasso.spoke())?;
        self.alphabet.check_word(lasso.cycle())
    }
}

/// The run of a deterministic automaton on a lasso, split into the states
/// visited once and the states of the periodic part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoRun {
    pub prefix: Vec<State>,
    pub cycle: Vec<State>,
}

impl LassoRun {
    pub fn visited(&self) -> impl Iterator<Item = State> + '_ {
        self.prefix.iter().chain(self.cycle.iter()).copied()
    }
}
