//! Dependence alphabets `(Σ, I)` and finite words over them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a letter in its alphabet. The index order is the total order used
/// for normal forms.
pub type Letter = usize;

/// A finite word, as letter indices.
pub type Word = Vec<Letter>;

/// A finite alphabet with an irreflexive, symmetric independence relation.
///
/// Cloning is cheap; the letter table is shared.
#[derive(Clone)]
pub struct DependenceAlphabet {
    inner: Arc<Inner>,
}

#[derive(PartialEq, Eq)]
struct Inner {
    letters: Vec<char>,
    independent: Vec<bool>,
}

impl DependenceAlphabet {
    /// Builds an alphabet from its letters (in order) and independent pairs.
    /// Pairs are closed under symmetry.
    pub fn new(letters: &[char], pairs: &[(char, char)]) -> Result<Self> {
        for (i, c) in letters.iter().enumerate() {
            if letters[..i].contains(c) {
                return Err(Error::DuplicateLetter(*c));
            }
        }
        let k = letters.len();
        let mut independent = vec![false; k * k];
        let index = |c: char| {
            letters
                .iter()
                .position(|&x| x == c)
                .ok_or(Error::UnknownLetter(c))
        };
        for &(x, y) in pairs {
            let (i, j) = (index(x)?, index(y)?);
            if i == j {
                return Err(Error::ReflexivePair(x));
            }
            independent[i * k + j] = true;
            independent[j * k + i] = true;
        }
        Ok(Self {
            inner: Arc::new(Inner {
                letters: letters.to_vec(),
                independent,
            }),
        })
    }

    /// Alphabet with empty independence: traces are words.
    pub fn full_dependence(letters: &[char]) -> Result<Self> {
        Self::new(letters, &[])
    }

    pub fn len(&self) -> usize {
        self.inner.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.inner.letters
    }

    pub fn symbol(&self, a: Letter) -> char {
        self.inner.letters[a]
    }

    pub fn index_of(&self, c: char) -> Result<Letter> {
        self.inner
            .letters
            .iter()
            .position(|&x| x == c)
            .ok_or(Error::UnknownLetter(c))
    }

    pub fn independent(&self, a: Letter, b: Letter) -> bool {
        self.inner.independent[a * self.len() + b]
    }

    pub fn dependent(&self, a: Letter, b: Letter) -> bool {
        !self.independent(a, b)
    }

    /// `I_a`: letters independent of `a`.
    pub fn independent_of(&self, a: Letter) -> Vec<Letter> {
        (0..self.len())
            .filter(|&b| self.independent(a, b))
            .collect()
    }

    /// `D_a`: letters dependent on `a`, always including `a`.
    pub fn dependent_on(&self, a: Letter) -> Vec<Letter> {
        (0..self.len()).filter(|&b| self.dependent(a, b)).collect()
    }

    /// Independent pairs `(a, b)` with `a < b`.
    pub fn independent_pairs(&self) -> Vec<(Letter, Letter)> {
        let k = self.len();
        (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .filter(|&(a, b)| self.independent(a, b))
            .collect()
    }

    /// Dependent pairs `(a, b)` with `a <= b`, including the diagonal.
    pub fn dependent_pairs(&self) -> Vec<(Letter, Letter)> {
        let k = self.len();
        (0..k)
            .flat_map(|a| (a..k).map(move |b| (a, b)))
            .filter(|&(a, b)| self.dependent(a, b))
            .collect()
    }

    pub fn has_independence(&self) -> bool {
        self.inner.independent.iter().any(|&x| x)
    }

    /// Parses a word written as concatenated letter symbols.
    pub fn word(&self, text: &str) -> Result<Word> {
        text.chars().map(|c| self.index_of(c)).collect()
    }

    pub fn render(&self, word: &[Letter]) -> String {
        word.iter().map(|&a| self.symbol(a)).collect()
    }

    /// Checks that every letter of `word` belongs to this alphabet.
    pub fn check_word(&self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|&&a| a >= self.len()) {
            Some(_) => Err(Error::Invalid(format!(
                "letter index out of range for alphabet of size {}",
                self.len()
            ))),
            None => Ok(()),
        }
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }
}

impl PartialEq for DependenceAlphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for DependenceAlphabet {}

impl fmt::Debug for DependenceAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .independent_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}{}", self.symbol(a), self.symbol(b)))
            .collect();
        write!(
            f,
            "({}; I={{{}}})",
            self.letters().iter().collect::<String>(),
            pairs.join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abc_with_b_i_c_alphabet() {
        let s = DependenceAlphabet::new(&['a', 'b', 'c'], &[('b', 'c')]).unwrap();
        assert_eq!(s.independent_of(1), vec![2]);
        assert_eq!(s.independent_of(2), vec![1]);
        assert!(s.independent_of(0).is_empty());
        assert_eq!(s.dependent_on(0), vec![0, 1, 2]);
        assert!(s.independent(2, 1));
    }

    #[test]
    fn views_partition_the_alphabet() {
        let s = DependenceAlphabet::new(&['a', 'b', 'c', 'd'], &[('a', 'b'), ('d', 'a')]).unwrap();
        for a in 0..s.len() {
            let mut all = s.independent_of(a);
            all.extend(s.dependent_on(a));
            all.sort();
            assert_eq!(all, vec![0, 1, 2, 3]);
            assert!(s.dependent_on(a).contains(&a));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            DependenceAlphabet::new(&['a', 'b'], &[('a', 'a')]).unwrap_err(),
            Error::ReflexivePair('a')
        );
        assert_eq!(
            DependenceAlphabet::new(&['a', 'b'], &[('a', 'z')]).unwrap_err(),
            Error::UnknownLetter('z')
        );
        assert_eq!(
            DependenceAlphabet::new(&['a', 'a'], &[]).unwrap_err(),
            Error::DuplicateLetter('a')
        );
        let full = DependenceAlphabet::full_dependence(&['a', 'b']).unwrap();
        assert!(full.independent_of(0).is_empty() && full.independent_of(1).is_empty());
    }
}
