use std::collections::VecDeque;

use super::minimize::refine;
use super::transitions::{State, Transitions};
use crate::alphabet::{DependenceAlphabet, Letter, Word};
use crate::error::{Error, Result};

/// A complete DFA.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dfa {
    trans: Transitions,
    finals: Vec<bool>,
}

impl Dfa {
    pub fn new(trans: Transitions, finals: &[State]) -> Result<Self> {
        let mut flags = vec![false; trans.state_count()];
        for &q in finals {
            *flags
                .get_mut(q)
                .ok_or_else(|| Error::Invalid(format!("final state {q} out of range")))? = true;
        }
        Ok(Self {
            trans,
            finals: flags,
        })
    }

    pub fn from_flags(trans: Transitions, finals: Vec<bool>) -> Result<Self> {
        if finals.len() != trans.state_count() {
            return Err(Error::Invalid(
                "final-state flags do not match the state count".into(),
            ));
        }
        Ok(Self { trans, finals })
    }

    pub fn from_fn(
        alphabet: &DependenceAlphabet,
        state_count: usize,
        initial: State,
        f: impl FnMut(State, Letter) -> State,
        finals: &[State],
    ) -> Result<Self> {
        Self::new(
            Transitions::from_fn(alphabet.clone(), state_count, initial, f)?,
            finals,
        )
    }

    /// The DFA accepting exactly `Σ*` (one accepting state).
    pub fn universal(alphabet: &DependenceAlphabet) -> Self {
        Self::from_fn(alphabet, 1, 0, |_, _| 0, &[0]).unwrap()
    }

    pub fn empty(alphabet: &DependenceAlphabet) -> Self {
        Self::from_fn(alphabet, 1, 0, |_, _| 0, &[]).unwrap()
    }

    /// The minimal DFA accepting exactly the given words.
    pub fn from_words(alphabet: &DependenceAlphabet, words: &[Word]) -> Result<Self> {
        // trie plus a rejecting sink at index 0
        let k = alphabet.len();
        let mut delta: Vec<Vec<State>> = vec![vec![0; k], vec![0; k]];
        let mut finals = vec![false, false];
        for w in words {
            alphabet.check_word(w)?;
            let mut q = 1;
            for &a in w {
                if delta[q][a] == 0 {
                    delta.push(vec![0; k]);
                    finals.push(false);
                    delta[q][a] = delta.len() - 1;
                }
                q = delta[q][a];
            }
            finals[q] = true;
        }
        let n = delta.len();
        let trans = Transitions::new(alphabet.clone(), n, 1, delta.concat())?;
        Ok(Self { trans, finals }.minimize())
    }

    pub fn transitions(&self) -> &Transitions {
        &self.trans
    }

    pub fn alphabet(&self) -> &DependenceAlphabet {
        self.trans.alphabet()
    }

    pub fn state_count(&self) -> usize {
        self.trans.state_count()
    }

    pub fn initial(&self) -> State {
        self.trans.initial()
    }

    pub fn step(&self, q: State, a: Letter) -> State {
        self.trans.step(q, a)
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals[q]
    }

    pub fn final_flags(&self) -> &[bool] {
        &self.finals
    }

    pub fn finals(&self) -> Vec<State> {
        (0..self.state_count())
            .filter(|&q| self.finals[q])
            .collect()
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.finals[self.trans.run(word)]
    }

    pub fn with_initial(&self, q: State) -> Self {
        Self {
            trans: self.trans.with_initial(q),
            finals: self.finals.clone(),
        }
    }

    pub fn with_finals(&self, finals: Vec<bool>) -> Result<Self> {
        Self::from_flags(self.trans.clone(), finals)
    }

    /// Reachable part with states renumbered in BFS order.
    pub fn canonical(&self) -> Self {
        let (trans, map) = self.trans.canonical();
        let mut finals = vec![false; trans.state_count()];
        for (q, m) in map.iter().enumerate() {
            if let Some(p) = m {
                finals[*p] = self.finals[q];
            }
        }
        Self { trans, finals }
    }

    /// The minimal DFA, states numbered in BFS order from the initial state.
    pub fn minimize(&self) -> Self {
        let trimmed = self.canonical();
        let colors: Vec<usize> = trimmed.finals.iter().map(|&f| f as usize).collect();
        let block = refine(&trimmed.trans, &colors);
        let blocks = block.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![0; blocks];
        for q in (0..trimmed.state_count()).rev() {
            rep[block[q]] = q;
        }
        let trans = Transitions::from_fn(
            self.alphabet().clone(),
            blocks,
            block[trimmed.initial()],
            |b, a| block[trimmed.step(rep[b], a)],
        )
        .expect("quotient is well formed");
        let finals = (0..blocks).map(|b| trimmed.finals[rep[b]]).collect();
        Self { trans, finals }.canonical()
    }

    pub fn complement(&self) -> Self {
        Self {
            trans: self.trans.clone(),
            finals: self.finals.iter().map(|f| !f).collect(),
        }
    }

    /// Reachable synchronous product; a pair is final iff `op` says so.
    pub fn product(&self, other: &Dfa, op: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.alphabet().ensure_same(other.alphabet())?;
        let k = self.alphabet().len();
        let m = other.state_count();
        let mut index = vec![usize::MAX; self.state_count() * m];
        let mut pairs = vec![(self.initial(), other.initial())];
        index[self.initial() * m + other.initial()] = 0;
        let mut delta = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (p, q) = pairs[head];
            head += 1;
            for a in 0..k {
                let (p2, q2) = (self.step(p, a), other.step(q, a));
                let slot = &mut index[p2 * m + q2];
                if *slot == usize::MAX {
                    *slot = pairs.len();
                    pairs.push((p2, q2));
                }
                delta.push(*slot);
            }
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| op(self.finals[p], other.finals[q]))
            .collect();
        let trans = Transitions::new(self.alphabet().clone(), pairs.len(), 0, delta)?;
        Ok(Dfa { trans, finals })
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |x, y| x && y)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |x, y| x || y)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |x, y| x && !y)
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// Shortest, then lexicographically least, accepted word.
    pub fn shortest_accepted(&self) -> Option<Word> {
        self.trans
            .access_words()
            .into_iter()
            .find(|(q, _)| self.finals[*q])
            .map(|(_, w)| w)
    }

    /// Language equivalence, decided by emptiness of the symmetric difference.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.product(other, |x, y| x != y)?.is_empty())
    }

    /// `L · a⁻¹ = { w | wa ∈ L }`.
    pub fn right_quotient(&self, a: Letter) -> Dfa {
        let finals = (0..self.state_count())
            .map(|q| self.finals[self.step(q, a)])
            .collect();
        Dfa {
            trans: self.trans.clone(),
            finals,
        }
    }

    /// All accepted words of length at most `n`, in length-lexicographic order.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        let k = self.alphabet().len();
        let mut out = Vec::new();
        let mut frontier: VecDeque<(State, Word)> = VecDeque::from([(self.initial(), Vec::new())]);
        while let Some((q, w)) = frontier.pop_front() {
            if self.finals[q] {
                out.push(w.clone());
            }
            if w.len() < n {
                for a in 0..k {
                    let mut w2 = w.clone();
                    w2.push(a);
                    frontier.push_back((self.step(q, a), w2));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> DependenceAlphabet {
        DependenceAlphabet::full_dependence(&['a', 'b']).unwrap()
    }

    #[test]
    fn minimize_universal_pair() {
        let d = Dfa::from_fn(&ab(), 2, 0, |q, _| 1 - q, &[0, 1]).unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 1);
        assert!(m.is_final(0));
        assert!(d.equivalent(&d).unwrap());
        assert!(m.equivalent(&Dfa::universal(&ab())).unwrap());
    }

    #[test]
    fn right_quotient_of_ab() {
        let s = ab();
        let d = Dfa::from_words(&s, &[s.word("ab").unwrap()]).unwrap();
        let q = d.right_quotient(1);
        let expected = Dfa::from_words(&s, &[s.word("a").unwrap()]).unwrap();
        assert!(q.equivalent(&expected).unwrap());
        assert_eq!(q.minimize(), expected);
    }

    #[test]
    fn minimize_is_canonical() {
        let s = ab();
        // "even number of a's", built with redundant states
        let d = Dfa::from_fn(
            &s,
            4,
            0,
            |q, a| if a == 0 { (q + 1) % 4 } else { q },
            &[0, 2],
        )
        .unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 2);
        let again = Dfa::from_fn(&s, 2, 1, |q, a| if a == 0 { 1 - q } else { q }, &[1])
            .unwrap()
            .minimize();
        assert_eq!(m, again);
    }

    #[test]
    fn boolean_operations() {
        let s = ab();
        let has_a = Dfa::from_fn(&s, 2, 0, |q, a| if a == 0 { 1 } else { q }, &[1]).unwrap();
        let has_b = Dfa::from_fn(&s, 2, 0, |q, a| if a == 1 { 1 } else { q }, &[1]).unwrap();
        let both = has_a.intersection(&has_b).unwrap();
        assert!(both.accepts(&s.word("ba").unwrap()));
        assert!(!both.accepts(&s.word("aa").unwrap()));
        assert!(has_a.union(&has_b).unwrap().accepts(&s.word("b").unwrap()));
        assert!(has_a.complement().accepts(&s.word("bbb").unwrap()));
        assert_eq!(
            has_a.difference(&has_b).unwrap().shortest_accepted(),
            Some(vec![0])
        );
        assert!(has_a.intersection(&has_a.complement()).unwrap().is_empty());
        let other = DependenceAlphabet::full_dependence(&['a', 'c']).unwrap();
        assert_eq!(
            has_a.union(&Dfa::universal(&other)).unwrap_err(),
            Error::AlphabetMismatch
        );
    }
}
