use crate::alphabet::Letter;
use crate::automata::{OmegaAutomaton, State};
use crate::error::Result;

use super::semigroup::{linked_pairs, Element, FiniteSemigroup, LinkedPair};

/// `τ_w`: for each start state, the end state and whether the run (start
/// state included) visits a final state.
pub type Profile = Vec<(State, bool)>;

#[derive(Clone, Debug)]
pub struct ProfileSemigroup {
    pub semigroup: FiniteSemigroup,
    pub profiles: Vec<Profile>,
    /// Independent `(a, b)` with `τ_a τ_b ≠ τ_b τ_a`, with the first state
    /// where they differ.
    pub noncommuting: Vec<(Letter, Letter, State)>,
}

fn compose(f: &Profile, g: &Profile) -> Profile {
    f.iter()
        .map(|&(p, seen)| (g[p].0, seen || g[p].1))
        .collect()
}

/// Extended transition profiles of a state-based automaton (its final flags
/// are used; the acceptance kind is ignored).
pub fn profile_semigroup(aut: &OmegaAutomaton, max_elements: usize) -> Result<ProfileSemigroup> {
    let dfa = aut.as_dfa()?;
    let n = dfa.state_count();
    let letter = |a: Letter| -> Profile {
        (0..n)
            .map(|q| {
                let p = dfa.step(q, a);
                (p, dfa.is_final(q) || dfa.is_final(p))
            })
            .collect()
    };
    let gens: Vec<Profile> = (0..dfa.alphabet().len()).map(letter).collect();
    let noncommuting = dfa
        .alphabet()
        .independent_pairs()
        .into_iter()
        .filter_map(|(a, b)| {
            let (ab, ba) = (compose(&gens[a], &gens[b]), compose(&gens[b], &gens[a]));
            (0..n).find(|&q| ab[q] != ba[q]).map(|q| (a, b, q))
        })
        .collect();
    let (semigroup, profiles) =
        FiniteSemigroup::generate(dfa.alphabet(), gens, compose, max_elements)?;
    Ok(ProfileSemigroup {
        semigroup,
        profiles,
        noncommuting,
    })
}

/// Linked pairs of the profile semigroup split by whether `φ⁻¹(s)(φ⁻¹(e))^ω`
/// lies in the Büchi language.
#[derive(Clone, Debug)]
pub struct LimPairs {
    pub profiles: ProfileSemigroup,
    pub accepted: Vec<LinkedPair>,
    pub rejected: Vec<LinkedPair>,
}

impl LimPairs {
    pub fn accepts(&self, pair: LinkedPair) -> bool {
        self.accepted.binary_search(&pair).is_ok()
    }
}

pub fn lim_linked_pairs(aut: &OmegaAutomaton, max_elements: usize) -> Result<LimPairs> {
    let profiles = profile_semigroup(aut, max_elements)?;
    let q0 = aut.initial();
    let (mut accepted, mut rejected) = (Vec::new(), Vec::new());
    for pair in linked_pairs(&profiles.semigroup) {
        let q = profiles.profiles[pair.s][q0].0;
        // s·e = s makes the e-profile loop at q
        if profiles.profiles[pair.e][q].1 {
            accepted.push(pair);
        } else {
            rejected.push(pair);
        }
    }
    Ok(LimPairs {
        profiles,
        accepted,
        rejected,
    })
}

impl ProfileSemigroup {
    pub fn profile(&self, x: Element) -> &Profile {
        &self.profiles[x]
    }
}
