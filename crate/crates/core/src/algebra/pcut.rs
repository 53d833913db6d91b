use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Letter, Word};
use crate::error::{Error, Result};

use super::semigroup::{Element, FiniteSemigroup, LinkedPair};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcutResult {
    pub holds: bool,
    /// On failure: a factorization of `e` hitting `s⁻¹P` at some prefix, and
    /// one that never does.
    pub witnesses: Option<(Word, Word)>,
}

/// P-cut property of a linked pair. Nodes are `(x, hit)` for nonempty products
/// `x = φ(a₁…a_j)`, with `hit` recording whether some prefix `p` so far has
/// `e·p ∈ s⁻¹P`. The property fails iff both `(e, false)` and `(e, true)` are
/// reachable.
pub fn pcut_check(
    sg: &FiniteSemigroup,
    accepting: &[bool],
    pair: LinkedPair,
) -> Result<PcutResult> {
    if let Some(&(a, b)) = sg.noncommuting_pairs().first() {
        return Err(Error::MorphismNotOnTraces {
            a: sg.alphabet().symbol(a),
            b: sg.alphabet().symbol(b),
        });
    }
    let LinkedPair { s, e } = pair;
    if s >= sg.size() || e >= sg.size() || sg.mul(s, e) != s || !sg.is_idempotent(e) {
        return Err(Error::NotLinked { s, e });
    }
    let hits = |x: Element| accepting[sg.mul(s, sg.mul(e, x))];
    let mut parent: HashMap<(Element, bool), (Option<(Element, bool)>, Letter)> = HashMap::new();
    let mut queue = VecDeque::new();
    for a in 0..sg.alphabet().len() {
        let x = sg.generator(a);
        let node = (x, hits(x));
        if let Entry::Vacant(slot) = parent.entry(node) {
            slot.insert((None, a));
            queue.push_back(node);
        }
    }
    while let Some((x, hit)) = queue.pop_front() {
        for a in 0..sg.alphabet().len() {
            let y = sg.mul(x, sg.generator(a));
            let node = (y, hit || hits(y));
            if let Entry::Vacant(slot) = parent.entry(node) {
                slot.insert((Some((x, hit)), a));
                queue.push_back(node);
            }
        }
    }
    let word = |mut node: (Element, bool)| -> Word {
        let mut w = Vec::new();
        loop {
            let (prev, a) = parent[&node];
            w.push(a);
            match prev {
                Some(p) => node = p,
                None => break,
            }
        }
        w.reverse();
        w
    };
    let (with, without) = ((e, true), (e, false));
    if parent.contains_key(&with) && parent.contains_key(&without) {
        Ok(PcutResult {
            holds: false,
            witnesses: Some((word(with), word(without))),
        })
    } else {
        Ok(PcutResult {
            holds: true,
            witnesses: None,
        })
    }
}
