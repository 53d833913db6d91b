//! Boolean combinations of ω-automata and their compilation into a single
//! product DWA.

use std::collections::HashMap;
use std::fmt;

use super::omega::{Acceptance, OmegaAutomaton};
use super::transitions::{State, Transitions};
use crate::alphabet::DependenceAlphabet;
use crate::error::{Error, Result};
use crate::trace::LassoWord;

/// A propositional formula over atom indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Formula {
    Atom(usize),
    Not(Box<Formula>),
    /// Conjunction; empty means true.
    And(Vec<Formula>),
    /// Disjunction; empty means false.
    Or(Vec<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn eval(&self, atoms: &[bool]) -> bool {
        match self {
            Formula::Atom(i) => atoms[*i],
            Formula::Not(f) => !f.eval(atoms),
            Formula::And(fs) => fs.iter().all(|f| f.eval(atoms)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(atoms)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(fs) | Formula::Or(fs) => {
                1 + fs.iter().map(Formula::depth).max().unwrap_or(0)
            }
        }
    }

    fn max_atom(&self) -> Option<usize> {
        match self {
            Formula::Atom(i) => Some(*i),
            Formula::Not(f) => f.max_atom(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().filter_map(Formula::max_atom).max(),
        }
    }

    /// Disjunctive normal form: a list of conjunctions of `(atom, polarity)`
    /// literals. Contradictory conjunctions are dropped.
    pub fn dnf(&self, max_conjuncts: usize) -> Result<Vec<Vec<(usize, bool)>>> {
        let mut out = self.dnf_inner(false, max_conjuncts)?;
        out.retain(|c| !c.iter().any(|&(i, p)| c.contains(&(i, !p))));
        Ok(out)
    }

    fn dnf_inner(&self, negated: bool, cap: usize) -> Result<Vec<Vec<(usize, bool)>>> {
        let limit = || Error::SizeLimit {
            what: "DNF conjuncts",
            limit: cap,
        };
        match self {
            Formula::Atom(i) => Ok(vec![vec![(*i, !negated)]]),
            Formula::Not(f) => f.dnf_inner(!negated, cap),
            Formula::And(fs) | Formula::Or(fs) => {
                let conjunctive = matches!(self, Formula::And(_)) != negated;
                if conjunctive {
                    let mut acc: Vec<Vec<(usize, bool)>> = vec![Vec::new()];
                    for f in fs {
                        let part = f.dnf_inner(negated, cap)?;
                        if acc.len() * part.len() > cap {
                            return Err(limit());
                        }
                        acc = acc
                            .iter()
                            .flat_map(|c| {
                                part.iter().map(move |d| {
                                    let mut e = c.clone();
                                    e.extend(d.iter().filter(|l| !c.contains(l)));
                                    e
                                })
                            })
                            .collect();
                    }
                    Ok(acc)
                } else {
                    let mut acc = Vec::new();
                    for f in fs {
                        acc.extend(f.dnf_inner(negated, cap)?);
                        if acc.len() > cap {
                            return Err(limit());
                        }
                    }
                    Ok(acc)
                }
            }
        }
    }

    pub fn render(&self, names: &dyn Fn(usize) -> String) -> String {
        match self {
            Formula::Atom(i) => names(*i),
            Formula::Not(f) => format!("!{}", f.render(names)),
            Formula::And(fs) if fs.is_empty() => "true".into(),
            Formula::Or(fs) if fs.is_empty() => "false".into(),
            Formula::And(fs) => format!(
                "({})",
                fs.iter()
                    .map(|f| f.render(names))
                    .collect::<Vec<_>>()
                    .join(" & ")
            ),
            Formula::Or(fs) => format!(
                "({})",
                fs.iter()
                    .map(|f| f.render(names))
                    .collect::<Vec<_>>()
                    .join(" | ")
            ),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|i| format!("A{i}")))
    }
}

/// Limits for [`BoolCombo::compile`].
#[derive(Clone, Copy, Debug)]
pub struct CompileOptions {
    pub max_depth: usize,
    pub max_conjuncts: usize,
    pub max_states: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        Self {
            max_depth: 64,
            max_conjuncts: 4096,
            max_states: 1 << 20,
        }
    }
}

/// A Boolean combination of ω-automata over one alphabet.
#[derive(Clone, Debug)]
pub struct BoolCombo {
    pub alphabet: DependenceAlphabet,
    pub atoms: Vec<OmegaAutomaton>,
    pub formula: Formula,
}

impl BoolCombo {
    pub fn new(
        alphabet: &DependenceAlphabet,
        atoms: Vec<OmegaAutomaton>,
        formula: Formula,
    ) -> Result<Self> {
        for a in &atoms {
            alphabet.ensure_same(a.alphabet())?;
        }
        if formula.max_atom().is_some_and(|m| m >= atoms.len()) {
            return Err(Error::Invalid("formula refers to a missing atom".into()));
        }
        Ok(Self {
            alphabet: alphabet.clone(),
            atoms,
            formula,
        })
    }

    /// Semantics on a lasso: evaluate every atom, then the formula.
    pub fn eval_lasso(&self, lasso: &LassoWord) -> Result<bool> {
        let values = self
            .atoms
            .iter()
            .map(|a| a.eval_lasso(lasso))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.formula.eval(&values))
    }

    /// Compiles a combination of weak atoms into one DWA over the reachable
    /// part of the product; a tuple is accepting iff it satisfies some DNF
    /// conjunct.
    pub fn compile(&self, options: CompileOptions) -> Result<OmegaAutomaton> {
        let alphabet = self.alphabet.clone();
        let mut colors = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            match a.acceptance() {
                Acceptance::Weak(f) => {
                    a.check_weak()?;
                    colors.push(f.as_slice());
                }
                _ => return Err(Error::NotWeak),
            }
        }
        if self.formula.depth() > options.max_depth {
            return Err(Error::FormulaTooDeep {
                limit: options.max_depth,
            });
        }
        let conjuncts = self.formula.dnf(options.max_conjuncts)?;

        let k = alphabet.len();
        let start: Vec<State> = self.atoms.iter().map(OmegaAutomaton::initial).collect();
        let mut index: HashMap<Vec<State>, State> = HashMap::from([(start.clone(), 0)]);
        let mut tuples = vec![start];
        let mut delta = Vec::new();
        let mut head = 0;
        while head < tuples.len() {
            for a in 0..k {
                let next: Vec<State> = tuples[head]
                    .iter()
                    .zip(&self.atoms)
                    .map(|(&q, m)| m.step(q, a))
                    .collect();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if tuples.len() >= options.max_states {
                            return Err(Error::SizeLimit {
                                what: "product states",
                                limit: options.max_states,
                            });
                        }
                        index.insert(next.clone(), tuples.len());
                        tuples.push(next);
                        tuples.len() - 1
                    }
                };
                delta.push(id);
            }
            head += 1;
        }
        let finals = tuples
            .iter()
            .map(|t| {
                conjuncts
                    .iter()
                    .any(|c| c.iter().all(|&(i, pos)| colors[i][t[i]] == pos))
            })
            .collect();
        let trans = Transitions::new(alphabet, tuples.len(), 0, delta)?;
        OmegaAutomaton::new(trans, Acceptance::Weak(finals))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dnf_of_nested_formula() {
        use Formula::*;
        let f = And(vec![
            Or(vec![Atom(0), Atom(1)]),
            Formula::not(And(vec![Atom(0), Atom(2)])),
        ]);
        let d = f.dnf(100).unwrap();
        for bits in 0..8u32 {
            let v: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
            let via_dnf = d.iter().any(|c| c.iter().all(|&(i, p)| v[i] == p));
            assert_eq!(via_dnf, f.eval(&v));
        }
        assert!(matches!(f.dnf(1), Err(Error::SizeLimit { .. })));
        assert!(Or(vec![]).dnf(10).unwrap().is_empty());
        assert_eq!(And(vec![]).dnf(10).unwrap(), vec![vec![]]);
    }
}
