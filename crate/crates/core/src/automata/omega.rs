use std::collections::BTreeSet;

use super::dfa::Dfa;
use super::scc::Sccs;
use super::transitions::{State, Transitions};
use crate::alphabet::{DependenceAlphabet, Letter};
use crate::error::{Error, Result};
use crate::trace::LassoWord;

/// Acceptance condition of a deterministic ω-automaton.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Acceptance {
    /// Reachability: some visited state is final.
    Reach(Vec<bool>),
    /// Some final state is visited infinitely often.
    Buchi(Vec<bool>),
    /// Büchi condition on an automaton whose SCCs are homogeneous.
    Weak(Vec<bool>),
    /// The set of states visited infinitely often is one of the listed sets.
    Muller(Vec<BTreeSet<State>>),
}

impl Acceptance {
    pub fn name(&self) -> &'static str {
        match self {
            Acceptance::Reach(_) => "e",
            Acceptance::Buchi(_) => "buchi",
            Acceptance::Weak(_) => "weak",
            Acceptance::Muller(_) => "muller",
        }
    }

    /// The final-state flags of state-based conditions.
    pub fn finals(&self) -> Option<&[bool]> {
        match self {
            Acceptance::Reach(f) | Acceptance::Buchi(f) | Acceptance::Weak(f) => Some(f),
            Acceptance::Muller(_) => None,
        }
    }
}

/// A complete deterministic ω-automaton.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OmegaAutomaton {
    trans: Transitions,
    acceptance: Acceptance,
}

impl OmegaAutomaton {
    pub fn new(trans: Transitions, acceptance: Acceptance) -> Result<Self> {
        let n = trans.state_count();
        match &acceptance {
            Acceptance::Reach(f) | Acceptance::Buchi(f) | Acceptance::Weak(f) if f.len() != n => {
                return Err(Error::Invalid(
                    "final-state flags do not match the state count".into(),
                ));
            }
            Acceptance::Muller(sets) if sets.iter().flatten().any(|&q| q >= n) => {
                return Err(Error::Invalid(
                    "Muller set mentions an unknown state".into(),
                ));
            }
            _ => {}
        }
        let aut = Self { trans, acceptance };
        if let Acceptance::Weak(_) = aut.acceptance {
            aut.check_weak()?;
        }
        Ok(aut)
    }

    pub fn buchi(dfa: &Dfa) -> Self {
        Self {
            trans: dfa.transitions().clone(),
            acceptance: Acceptance::Buchi(dfa.final_flags().to_vec()),
        }
    }

    pub fn reach(dfa: &Dfa) -> Self {
        Self {
            trans: dfa.transitions().clone(),
            acceptance: Acceptance::Reach(dfa.final_flags().to_vec()),
        }
    }

    pub fn weak(dfa: &Dfa) -> Result<Self> {
        Self::new(
            dfa.transitions().clone(),
            Acceptance::Weak(dfa.final_flags().to_vec()),
        )
    }

    pub fn transitions(&self) -> &Transitions {
        &self.trans
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
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

    /// The underlying DFA for state-based conditions.
    pub fn as_dfa(&self) -> Result<Dfa> {
        let finals = self.acceptance.finals().ok_or(Error::WrongAcceptance {
            expected: "a state-based condition",
        })?;
        Dfa::from_flags(self.trans.clone(), finals.to_vec())
    }

    pub fn is_final(&self, q: State) -> bool {
        self.acceptance.finals().is_some_and(|f| f[q])
    }

    /// Every SCC holds only accepting or only rejecting states.
    pub fn check_weak(&self) -> Result<()> {
        let finals = self.acceptance.finals().ok_or(Error::NotWeak)?;
        let sccs = Sccs::new(&self.trans);
        for comp in &sccs.components {
            if comp.iter().any(|&q| finals[q] != finals[comp[0]]) {
                return Err(Error::NotWeak);
            }
        }
        Ok(())
    }

    pub fn eval_lasso(&self, lasso: &LassoWord) -> Result<bool> {
        self.trans.check_lasso(lasso)?;
        Ok(self.accepts_from(self.initial(), lasso))
    }

    pub(crate) fn accepts_from(&self, start: State, lasso: &LassoWord) -> bool {
        let run = self.trans.lasso_run_from(start, lasso);
        match &self.acceptance {
            Acceptance::Reach(f) => run.visited().any(|q| f[q]),
            Acceptance::Buchi(f) | Acceptance::Weak(f) => run.cycle.iter().any(|&q| f[q]),
            Acceptance::Muller(sets) => {
                let inf: BTreeSet<State> = run.cycle.iter().copied().collect();
                sets.contains(&inf)
            }
        }
    }

    /// Reachable part, BFS-renumbered.
    pub fn canonical(&self) -> Self {
        let (trans, map) = self.trans.canonical();
        let remap = |f: &[bool]| {
            let mut out = vec![false; trans.state_count()];
            for (q, m) in map.iter().enumerate() {
                if let Some(p) = m {
                    out[*p] = f[q];
                }
            }
            out
        };
        let acceptance = match &self.acceptance {
            Acceptance::Reach(f) => Acceptance::Reach(remap(f)),
            Acceptance::Buchi(f) => Acceptance::Buchi(remap(f)),
            Acceptance::Weak(f) => Acceptance::Weak(remap(f)),
            Acceptance::Muller(sets) => Acceptance::Muller(
                sets.iter()
                    .filter(|s| s.iter().all(|&q| map[q].is_some()))
                    .map(|s| s.iter().map(|&q| map[q].unwrap()).collect())
                    .collect(),
            ),
        };
        Self { trans, acceptance }
    }
}
