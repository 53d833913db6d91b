use std::collections::HashMap;
use std::hash::Hash;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::alphabet::{DependenceAlphabet, Letter, Word};
use crate::automata::{Dfa, State};
use crate::error::{Error, Result};

pub type Element = usize;

#[derive(Clone, Copy, Debug)]
pub struct SemigroupOptions {
    pub max_elements: usize,
    /// Check associativity on all triples up to this size, by sampling above.
    pub exhaustive_up_to: usize,
    pub samples: usize,
}

impl Default for SemigroupOptions {
    fn default() -> Self {
        Self {
            max_elements: 4096,
            exhaustive_up_to: 64,
            samples: 20_000,
        }
    }
}

/// A finite semigroup with one generator per letter. Elements are numbered
/// in the BFS order of the right Cayley graph from the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    alphabet: DependenceAlphabet,
    size: usize,
    table: Vec<Element>,
    generators: Vec<Element>,
    /// Shortest, lexicographically least word for each element.
    words: Vec<Word>,
}

impl FiniteSemigroup {
    /// Closure of the generators under `mul`. Returns the semigroup and the
    /// value behind each element.
    pub fn generate<T: Clone + Eq + Hash>(
        alphabet: &DependenceAlphabet,
        generators: Vec<T>,
        mul: impl Fn(&T, &T) -> T,
        max_elements: usize,
    ) -> Result<(Self, Vec<T>)> {
        let k = alphabet.len();
        assert_eq!(generators.len(), k, "one generator per letter");
        let mut index: HashMap<T, Element> = HashMap::new();
        let mut values: Vec<T> = Vec::new();
        let mut words: Vec<Word> = Vec::new();
        let mut intern =
            |value: T, word: Word, values: &mut Vec<T>, words: &mut Vec<Word>| -> Result<Element> {
                if let Some(&x) = index.get(&value) {
                    return Ok(x);
                }
                if values.len() >= max_elements {
                    return Err(Error::SizeLimit {
                        what: "semigroup elements",
                        limit: max_elements,
                    });
                }
                index.insert(value.clone(), values.len());
                values.push(value);
                words.push(word);
                Ok(values.len() - 1)
            };
        let mut gens = Vec::with_capacity(k);
        for (a, g) in generators.iter().enumerate() {
            gens.push(intern(g.clone(), vec![a], &mut values, &mut words)?);
        }
        // elements are appended in BFS order, so a cursor replaces the queue
        let mut right: Vec<Vec<Element>> = Vec::new();
        while right.len() < values.len() {
            let x = right.len();
            let mut row = Vec::with_capacity(k);
            for (a, g) in generators.iter().enumerate() {
                let value = mul(&values[x], g);
                let mut word = words[x].clone();
                word.push(a);
                row.push(intern(value, word, &mut values, &mut words)?);
            }
            right.push(row);
        }
        let size = values.len();
        // x·y follows y's word from x through the right Cayley graph.
        let mut table = vec![0; size * size];
        for y in 0..size {
            for x in 0..size {
                table[x * size + y] = words[y].iter().fold(x, |acc, &a| right[acc][a]);
            }
        }
        Ok((
            Self {
                alphabet: alphabet.clone(),
                size,
                table,
                generators: gens,
                words,
            },
            values,
        ))
    }

    /// Checks totality, associativity and generation.
    pub fn from_table(
        alphabet: &DependenceAlphabet,
        size: usize,
        table: Vec<Element>,
        generators: Vec<Element>,
        options: SemigroupOptions,
    ) -> Result<Self> {
        if table.len() != size * size || table.iter().chain(&generators).any(|&x| x >= size) {
            return Err(Error::Invalid(
                "product table is not total over the elements".into(),
            ));
        }
        if generators.len() != alphabet.len() {
            return Err(Error::Invalid("expected one generator per letter".into()));
        }
        let mul = |x: usize, y: usize| table[x * size + y];
        let assoc = |x: usize, y: usize, z: usize| mul(mul(x, y), z) == mul(x, mul(y, z));
        if size <= options.exhaustive_up_to {
            for x in 0..size {
                for y in 0..size {
                    if let Some(z) = (0..size).find(|&z| !assoc(x, y, z)) {
                        return Err(Error::Invalid(format!("not associative at ({x},{y},{z})")));
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(size as u64);
            for _ in 0..options.samples {
                let (x, y, z) = (
                    rng.gen_range(0..size),
                    rng.gen_range(0..size),
                    rng.gen_range(0..size),
                );
                if !assoc(x, y, z) {
                    return Err(Error::Invalid(format!("not associative at ({x},{y},{z})")));
                }
            }
        }
        let (generated, values) = Self::generate(alphabet, generators, |&x, &y| mul(x, y), size)?;
        if values.len() != size {
            return Err(Error::Invalid(
                "elements not generated by the letters".into(),
            ));
        }
        // renumber into the caller's numbering
        let mut words = vec![Vec::new(); size];
        for (i, &v) in values.iter().enumerate() {
            words[v] = generated.words[i].clone();
        }
        let generators = generated.generators.iter().map(|&g| values[g]).collect();
        Ok(Self {
            alphabet: alphabet.clone(),
            size,
            table,
            generators,
            words,
        })
    }

    pub fn alphabet(&self) -> &DependenceAlphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table[x * self.size + y]
    }

    pub fn generator(&self, a: Letter) -> Element {
        self.generators[a]
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// `φ(w)`; `None` for the empty word.
    pub fn eval(&self, word: &[Letter]) -> Option<Element> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(self.generators[first], |x, &a| {
            self.mul(x, self.generators[a])
        }))
    }

    /// Shortest, lexicographically least word mapping to `x`.
    pub fn word_of(&self, x: Element) -> &[Letter] {
        &self.words[x]
    }

    pub fn is_idempotent(&self, x: Element) -> bool {
        self.mul(x, x) == x
    }

    /// Independent letters whose generators do not commute.
    pub fn noncommuting_pairs(&self) -> Vec<(Letter, Letter)> {
        self.alphabet
            .independent_pairs()
            .into_iter()
            .filter(|&(a, b)| {
                let (x, y) = (self.generators[a], self.generators[b]);
                self.mul(x, y) != self.mul(y, x)
            })
            .collect()
    }
}

/// `(s, e)` with `s·e = s` and `e·e = e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkedPair {
    pub s: Element,
    pub e: Element,
}

pub fn linked_pairs(sg: &FiniteSemigroup) -> Vec<LinkedPair> {
    let mut pairs = Vec::new();
    for s in 0..sg.size() {
        for e in (0..sg.size()).filter(|&e| sg.is_idempotent(e)) {
            if sg.mul(s, e) == s {
                pairs.push(LinkedPair { s, e });
            }
        }
    }
    pairs
}

/// State-map semigroup of the minimal DFA with `P = {τ | τ(q₀) ∈ F}`.
#[derive(Clone, Debug)]
pub struct TransitionSemigroup {
    pub semigroup: FiniteSemigroup,
    pub dfa: Dfa,
    pub maps: Vec<Vec<State>>,
    pub accepting: Vec<bool>,
}

impl TransitionSemigroup {
    /// Membership of a nonempty word through the morphism.
    pub fn accepts(&self, word: &[Letter]) -> Option<bool> {
        self.semigroup.eval(word).map(|x| self.accepting[x])
    }
}

pub fn transition_semigroup(dfa: &Dfa, max_elements: usize) -> Result<TransitionSemigroup> {
    let dfa = dfa.minimize();
    let n = dfa.state_count();
    let gens = (0..dfa.alphabet().len())
        .map(|a| (0..n).map(|q| dfa.step(q, a)).collect::<Vec<_>>())
        .collect();
    let (semigroup, maps) = FiniteSemigroup::generate(
        dfa.alphabet(),
        gens,
        |f: &Vec<State>, g: &Vec<State>| f.iter().map(|&q| g[q]).collect(),
        max_elements,
    )?;
    let accepting = maps
        .iter()
        .map(|f| dfa.is_final(f[dfa.initial()]))
        .collect();
    Ok(TransitionSemigroup {
        semigroup,
        dfa,
        maps,
        accepting,
    })
}

/// Componentwise product restricted to the elements reachable from the paired
/// generators; also returns the pair behind each element.
pub fn product_morphism(
    x: &FiniteSemigroup,
    y: &FiniteSemigroup,
    max_elements: usize,
) -> Result<(FiniteSemigroup, Vec<(Element, Element)>)> {
    x.alphabet().ensure_same(y.alphabet())?;
    let gens = (0..x.alphabet().len())
        .map(|a| (x.generator(a), y.generator(a)))
        .collect();
    FiniteSemigroup::generate(
        x.alphabet(),
        gens,
        |&(p, q), &(r, s)| (x.mul(p, r), y.mul(q, s)),
        max_elements,
    )
}
