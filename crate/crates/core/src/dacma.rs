//! Deterministic asynchronous cellular (Muller) automata, their global view,
//! and the decomposition into component DBAs.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{DependenceAlphabet, Letter};
use crate::automata::{Acceptance, BoolCombo, Dfa, Formula, OmegaAutomaton, State, Transitions};
use crate::error::{Error, Result};
use crate::trace::LassoWord;

/// One local state per letter.
pub type GlobalState = Vec<usize>;

/// `(F_a)_a`, one local set per letter.
pub type MullerEntry = Vec<BTreeSet<usize>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dacma {
    alphabet: DependenceAlphabet,
    sizes: Vec<usize>,
    /// `D_a` in letter order.
    reads: Vec<Vec<Letter>>,
    /// `δ_a`, indexed by the mixed-radix encoding of the `D_a` components.
    deltas: Vec<Vec<usize>>,
    initial: GlobalState,
    table: Vec<MullerEntry>,
}

impl Dacma {
    /// `local(a, view)` gives `δ_a` on the components of `D_a`, listed in
    /// letter order.
    pub fn from_fn(
        alphabet: &DependenceAlphabet,
        sizes: &[usize],
        initial: &[usize],
        local: impl Fn(Letter, &[usize]) -> usize,
        table: Vec<MullerEntry>,
    ) -> Result<Self> {
        let k = alphabet.len();
        if sizes.len() != k || initial.len() != k {
            return Err(Error::Invalid(format!("expected {k} local components")));
        }
        if let Some(a) = (0..k).find(|&a| sizes[a] == 0) {
            return Err(Error::Invalid(format!(
                "empty local state set for {}",
                alphabet.symbol(a)
            )));
        }
        let reads: Vec<Vec<Letter>> = (0..k).map(|a| alphabet.dependent_on(a)).collect();
        let mut deltas = Vec::with_capacity(k);
        for a in 0..k {
            let domain: usize = reads[a].iter().map(|&b| sizes[b]).product();
            let mut row = Vec::with_capacity(domain);
            let mut view = vec![0; reads[a].len()];
            for code in 0..domain {
                let mut rest = code;
                for (i, &b) in reads[a].iter().enumerate().rev() {
                    view[i] = rest % sizes[b];
                    rest /= sizes[b];
                }
                row.push(local(a, &view));
            }
            deltas.push(row);
        }
        Self::new(alphabet, sizes, deltas, initial, table)
    }

    pub fn new(
        alphabet: &DependenceAlphabet,
        sizes: &[usize],
        deltas: Vec<Vec<usize>>,
        initial: &[usize],
        table: Vec<MullerEntry>,
    ) -> Result<Self> {
        let k = alphabet.len();
        let reads: Vec<Vec<Letter>> = (0..k).map(|a| alphabet.dependent_on(a)).collect();
        if sizes.len() != k || initial.len() != k || deltas.len() != k {
            return Err(Error::Invalid(format!("expected {k} local components")));
        }
        for a in 0..k {
            let c = alphabet.symbol(a);
            let domain: usize = reads[a].iter().map(|&b| sizes[b]).product();
            if deltas[a].len() != domain {
                return Err(Error::Invalid(format!(
                    "local map of {c} has {} entries, expected {domain}",
                    deltas[a].len()
                )));
            }
            if let Some(&q) = deltas[a]
                .iter()
                .chain([&initial[a]])
                .find(|&&q| q >= sizes[a])
            {
                return Err(Error::UnknownLocalState {
                    letter: c,
                    state: q,
                });
            }
        }
        for entry in &table {
            if entry.len() != k {
                return Err(Error::Invalid(
                    "Muller entry must list one set per letter".into(),
                ));
            }
            for a in 0..k {
                if let Some(&q) = entry[a].iter().find(|&&q| q >= sizes[a]) {
                    return Err(Error::UnknownLocalState {
                        letter: alphabet.symbol(a),
                        state: q,
                    });
                }
            }
        }
        Ok(Self {
            alphabet: alphabet.clone(),
            sizes: sizes.to_vec(),
            reads,
            deltas,
            initial: initial.to_vec(),
            table,
        })
    }

    pub fn alphabet(&self) -> &DependenceAlphabet {
        &self.alphabet
    }

    pub fn local_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn table(&self) -> &[MullerEntry] {
        &self.table
    }

    /// `δ_a` at the given view of `D_a`.
    pub fn local(&self, a: Letter, view: &[usize]) -> usize {
        let code = self.reads[a]
            .iter()
            .zip(view)
            .fold(0, |acc, (&b, &q)| acc * self.sizes[b] + q);
        self.deltas[a][code]
    }

    /// Global successor: only component `a` changes.
    pub fn step(&self, q: &[usize], a: Letter) -> GlobalState {
        let view: Vec<usize> = self.reads[a].iter().map(|&b| q[b]).collect();
        let mut next = q.to_vec();
        next[a] = self.local(a, &view);
        next
    }

    /// Run on a finite word from `from`, positions `0..=|w|`.
    pub fn run_from(&self, from: &[usize], word: &[Letter]) -> Vec<GlobalState> {
        let mut run = vec![from.to_vec()];
        for &a in word {
            let next = self.step(run.last().unwrap(), a);
            run.push(next);
        }
        run
    }

    /// Reachable global states in BFS order, numbered from 0 (the initial tuple).
    pub fn global_automaton(&self, max_states: usize) -> Result<GlobalAutomaton> {
        let k = self.alphabet.len();
        let mut index: HashMap<GlobalState, State> = HashMap::from([(self.initial.clone(), 0)]);
        let mut states = vec![self.initial.clone()];
        let mut delta = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(p) = queue.pop_front() {
            for a in 0..k {
                let next = self.step(&states[p], a);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= max_states {
                            return Err(Error::SizeLimit {
                                what: "global states",
                                limit: max_states,
                            });
                        }
                        index.insert(next.clone(), states.len());
                        states.push(next);
                        queue.push_back(states.len() - 1);
                        states.len() - 1
                    }
                };
                delta.push(id);
            }
        }
        let trans = Transitions::new(self.alphabet.clone(), states.len(), 0, delta)?;
        Ok(GlobalAutomaton { trans, states })
    }

    /// DBA with finals `{q} × ∏_{b≠a} Q_b` over the global structure.
    pub fn component_dba(&self, a: Letter, q: usize) -> Result<OmegaAutomaton> {
        self.global_automaton(DEFAULT_GLOBAL_CAP)?
            .component_dba(self, a, q)
    }

    /// `⋃_{F ∈ 𝓕} ⋂_a (⋂_{q∈F_a} L(A_q) ∩ ⋂_{q∉F_a} ¬L(A_q))`.
    pub fn decompose(&self) -> Result<BoolCombo> {
        let global = self.global_automaton(DEFAULT_GLOBAL_CAP)?;
        let mut atoms = Vec::new();
        let mut atom_of = HashMap::new();
        let mut disjuncts = Vec::new();
        for entry in &self.table {
            let mut conj = Vec::new();
            for a in 0..self.alphabet.len() {
                for q in 0..self.sizes[a] {
                    let id = match atom_of.get(&(a, q)) {
                        Some(&id) => id,
                        None => {
                            atoms.push(global.component_dba(self, a, q)?);
                            atom_of.insert((a, q), atoms.len() - 1);
                            atoms.len() - 1
                        }
                    };
                    conj.push(if entry[a].contains(&q) {
                        Formula::Atom(id)
                    } else {
                        Formula::not(Formula::Atom(id))
                    });
                }
            }
            disjuncts.push(Formula::And(conj));
        }
        BoolCombo::new(&self.alphabet, atoms, Formula::Or(disjuncts))
    }

    /// Muller acceptance by direct simulation: the cycle repeats once the
    /// global state at the start of `v` recurs.
    pub fn eval(&self, lasso: &LassoWord) -> Result<bool> {
        self.alphabet.check_word(lasso.spoke())?;
        self.alphabet.check_word(lasso.cycle())?;
        let inf = self.inf_sets(lasso);
        Ok(self.table.contains(&inf))
    }

    /// `inf_a` of the run on `u·v^ω`, per letter.
    pub fn inf_sets(&self, lasso: &LassoWord) -> MullerEntry {
        let mut q = self.run_from(&self.initial, lasso.spoke()).pop().unwrap();
        let mut seen: HashMap<GlobalState, usize> = HashMap::new();
        let mut laps: Vec<Vec<GlobalState>> = Vec::new();
        while !seen.contains_key(&q) {
            seen.insert(q.clone(), laps.len());
            let run = self.run_from(&q, lasso.cycle());
            q = run.last().unwrap().clone();
            laps.push(run);
        }
        let mut inf = vec![BTreeSet::new(); self.alphabet.len()];
        for run in &laps[seen[&q]..] {
            for state in run {
                for (a, &local) in state.iter().enumerate() {
                    inf[a].insert(local);
                }
            }
        }
        inf
    }
}

/// Cap on reachable global states for the convenience entry points.
pub const DEFAULT_GLOBAL_CAP: usize = 1 << 16;

/// Reachable part of the global product.
#[derive(Clone, Debug)]
pub struct GlobalAutomaton {
    pub trans: Transitions,
    /// Tuple behind each global state.
    pub states: Vec<GlobalState>,
}

impl GlobalAutomaton {
    /// DACA view: finals chosen by a predicate on tuples.
    pub fn dfa(&self, accept: impl Fn(&[usize]) -> bool) -> Dfa {
        let flags = self.states.iter().map(|t| accept(t)).collect();
        Dfa::from_flags(self.trans.clone(), flags).expect("one flag per state")
    }

    pub fn component_dba(&self, m: &Dacma, a: Letter, q: usize) -> Result<OmegaAutomaton> {
        if a >= m.alphabet.len() || q >= m.sizes[a] {
            let letter = if a < m.alphabet.len() {
                m.alphabet.symbol(a)
            } else {
                '?'
            };
            return Err(Error::UnknownLocalState { letter, state: q });
        }
        let finals = self.states.iter().map(|t| t[a] == q).collect();
        OmegaAutomaton::new(self.trans.clone(), Acceptance::Buchi(finals))
    }
}

/// `occ_a` of the run from `from` on `word`, per letter.
pub fn occ(m: &Dacma, from: &[usize], word: &[Letter]) -> MullerEntry {
    let mut occ = vec![BTreeSet::new(); m.alphabet.len()];
    for state in m.run_from(from, word) {
        for (a, &local) in state.iter().enumerate() {
            occ[a].insert(local);
        }
    }
    occ
}
