//! Finite traces in lexicographic normal form, and lasso ω-words.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{DependenceAlphabet, Letter, Word};
use crate::error::{Error, Result};

/// A finite trace, stored as its lexicographically least linearization.
#[derive(Clone, PartialEq, Eq)]
pub struct Trace {
    alphabet: DependenceAlphabet,
    canon: Word,
}

impl Trace {
    /// Γ(word).
    pub fn of(alphabet: &DependenceAlphabet, word: &[Letter]) -> Result<Self> {
        alphabet.check_word(word)?;
        Ok(Self {
            alphabet: alphabet.clone(),
            canon: normal_form_word(alphabet, word),
        })
    }

    /// Γ of a word written as symbols.
    pub fn parse(alphabet: &DependenceAlphabet, text: &str) -> Result<Self> {
        let w = alphabet.word(text)?;
        Self::of(alphabet, &w)
    }

    pub fn empty(alphabet: &DependenceAlphabet) -> Self {
        Self {
            alphabet: alphabet.clone(),
            canon: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &DependenceAlphabet {
        &self.alphabet
    }

    pub fn canon(&self) -> &[Letter] {
        &self.canon
    }

    pub fn len(&self) -> usize {
        self.canon.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canon.is_empty()
    }

    pub fn letter_counts(&self) -> Vec<usize> {
        counts(self.alphabet.len(), &self.canon)
    }

    /// Γ⁻¹(t): every linearization, by enumerating topological orders of the
    /// dependence graph. Exponential in general.
    pub fn linearizations(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        let mut removed = vec![false; self.canon.len()];
        let mut current = Vec::with_capacity(self.canon.len());
        self.enumerate(&mut removed, &mut current, &mut out);
        out
    }

    fn enumerate(&self, removed: &mut [bool], current: &mut Word, out: &mut BTreeSet<Word>) {
        if current.len() == self.canon.len() {
            out.insert(current.clone());
            return;
        }
        for p in minimal_positions(&self.alphabet, &self.canon, removed) {
            removed[p] = true;
            current.push(self.canon[p]);
            self.enumerate(removed, current, out);
            current.pop();
            removed[p] = false;
        }
    }

    /// `self ⊑ other`.
    pub fn is_prefix_of(&self, other: &Trace) -> Result<bool> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let w = &other.canon;
        let mut removed = vec![false; w.len()];
        for &c in &self.canon {
            // equal letters are dependent, so only the first remaining
            // c-occurrence can be minimal
            let Some(p) = (0..w.len()).find(|&p| !removed[p] && w[p] == c) else {
                return Ok(false);
            };
            if (0..p).any(|q| !removed[q] && self.alphabet.dependent(w[q], c)) {
                return Ok(false);
            }
            removed[p] = true;
        }
        Ok(true)
    }

    /// `self ⊙ other`.
    pub fn concat(&self, other: &Trace) -> Result<Trace> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let mut w = self.canon.clone();
        w.extend_from_slice(&other.canon);
        Trace::of(&self.alphabet, &w)
    }

    /// Least upper bound `self ⊔ other` with respect to the prefix order.
    ///
    /// The i-th `a`-labelled vertex of each trace is identified; the union of
    /// both dependence orders must be acyclic, keep each input downward closed,
    /// and order every pair of vertices with dependent labels.
    pub fn lub(&self, other: &Trace) -> Result<Trace> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let k = self.alphabet.len();
        let (c1, c2) = (self.letter_counts(), other.letter_counts());
        let mut base = vec![0; k + 1];
        for a in 0..k {
            base[a + 1] = base[a] + c1[a].max(c2[a]);
        }
        let n = base[k];
        let vertex = |a: Letter, i: usize| base[a] + i;
        let label: Vec<Letter> = (0..k)
            .flat_map(|a| std::iter::repeat_n(a, base[a + 1] - base[a]))
            .collect();

        let mut edge = vec![false; n * n];
        let mut member = [vec![false; n], vec![false; n]];
        for (side, t) in [&self.canon, &other.canon].into_iter().enumerate() {
            let mut seen = vec![0; k];
            let ids: Vec<usize> = t
                .iter()
                .map(|&a| {
                    seen[a] += 1;
                    vertex(a, seen[a] - 1)
                })
                .collect();
            for &v in &ids {
                member[side][v] = true;
            }
            for i in 0..t.len() {
                for j in i + 1..t.len() {
                    if self.alphabet.dependent(t[i], t[j]) {
                        edge[ids[i] * n + ids[j]] = true;
                    }
                }
            }
        }
        for m in &member {
            for u in 0..n {
                for v in 0..n {
                    if edge[u * n + v] && m[v] && !m[u] {
                        return Err(Error::NoUpperBound);
                    }
                }
            }
        }
        let mut reach = edge.clone();
        for w in 0..n {
            for u in 0..n {
                if reach[u * n + w] {
                    for v in 0..n {
                        if reach[w * n + v] {
                            reach[u * n + v] = true;
                        }
                    }
                }
            }
        }
        for u in 0..n {
            if reach[u * n + u] {
                return Err(Error::NoUpperBound);
            }
            for v in u + 1..n {
                if self.alphabet.dependent(label[u], label[v])
                    && !reach[u * n + v]
                    && !reach[v * n + u]
                {
                    return Err(Error::NoUpperBound);
                }
            }
        }
        // any topological order is a linearization of the bound
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let v = (0..n)
                .find(|&v| !placed[v] && (0..n).all(|u| placed[u] || !edge[u * n + v]))
                .expect("acyclic");
            placed[v] = true;
            order.push(label[v]);
        }
        Trace::of(&self.alphabet, &order)
    }
}

impl fmt::Debug for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.alphabet.render(&self.canon))
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(&self.canon))
    }
}

fn counts(k: usize, w: &[Letter]) -> Vec<usize> {
    let mut c = vec![0; k];
    for &a in w {
        c[a] += 1;
    }
    c
}

/// Positions of `w` that are minimal among the non-removed ones, in
/// increasing letter order (at most one per letter).
fn minimal_positions(alphabet: &DependenceAlphabet, w: &[Letter], removed: &[bool]) -> Vec<usize> {
    let mut out: Vec<usize> = (0..w.len())
        .filter(|&p| !removed[p] && (0..p).all(|q| removed[q] || alphabet.independent(w[q], w[p])))
        .collect();
    out.sort_by_key(|&p| w[p]);
    out
}

/// Lexicographically least linearization: repeatedly emit the least letter
/// labelling a minimal vertex of what remains.
pub(crate) fn normal_form_word(alphabet: &DependenceAlphabet, w: &[Letter]) -> Word {
    let mut removed = vec![false; w.len()];
    let mut out = Vec::with_capacity(w.len());
    for _ in 0..w.len() {
        let p = minimal_positions(alphabet, w, &removed)[0];
        removed[p] = true;
        out.push(w[p]);
    }
    out
}

/// Γ(word) as a [`Trace`].
pub fn normal_form(word: &[Letter], alphabet: &DependenceAlphabet) -> Result<Trace> {
    Trace::of(alphabet, word)
}

/// `u ~_I v`.
pub fn equivalent(u: &[Letter], v: &[Letter], alphabet: &DependenceAlphabet) -> Result<bool> {
    Ok(Trace::of(alphabet, u)? == Trace::of(alphabet, v)?)
}

/// An ultimately periodic ω-word `spoke · cycle^ω`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LassoWord {
    spoke: Word,
    cycle: Word,
}

impl LassoWord {
    pub fn new(spoke: Word, cycle: Word) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Invalid("lasso cycle must be nonempty".into()));
        }
        Ok(Self { spoke, cycle })
    }

    /// Parses `u;v` (u may be empty).
    pub fn parse(alphabet: &DependenceAlphabet, text: &str) -> Result<Self> {
        let (u, v) = text
            .split_once(';')
            .ok_or_else(|| Error::Invalid(format!("lasso '{text}' must have the form u;v")))?;
        Self::new(alphabet.word(u.trim())?, alphabet.word(v.trim())?)
    }

    pub fn spoke(&self) -> &[Letter] {
        &self.spoke
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    /// Letter at position `i` of the infinite word.
    pub fn at(&self, i: usize) -> Letter {
        if i < self.spoke.len() {
            self.spoke[i]
        } else {
            self.cycle[(i - self.spoke.len()) % self.cycle.len()]
        }
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> Word {
        (0..n).map(|i| self.at(i)).collect()
    }

    /// Same ω-word with the first cycle letter moved into the spoke.
    pub fn rotate(&self) -> Self {
        let mut spoke = self.spoke.clone();
        spoke.push(self.cycle[0]);
        let mut cycle = self.cycle[1..].to_vec();
        cycle.push(self.cycle[0]);
        Self { spoke, cycle }
    }

    pub fn render(&self, alphabet: &DependenceAlphabet) -> String {
        format!(
            "{};{}",
            alphabet.render(&self.spoke),
            alphabet.render(&self.cycle)
        )
    }
}

/// Equality of `u1·v1^ω` and `u2·v2^ω` as words: compare a prefix covering
/// both spokes plus one common period.
pub(crate) fn same_periodic_word(
    u1: &[Letter],
    v1: &[Letter],
    u2: &[Letter],
    v2: &[Letter],
) -> bool {
    let n = u1.len().max(u2.len()) + lcm(v1.len(), v2.len());
    let at = |u: &[Letter], v: &[Letter], i: usize| {
        if i < u.len() {
            u[i]
        } else {
            v[(i - u.len()) % v.len()]
        }
    };
    (0..n).all(|i| at(u1, v1, i) == at(u2, v2, i))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// `Γ(l1) = Γ(l2)` as infinite traces: the projections onto every dependent
/// pair `{a, b}` (including `a = b`) must coincide.
pub fn lasso_equivalent(
    l1: &LassoWord,
    l2: &LassoWord,
    alphabet: &DependenceAlphabet,
) -> Result<bool> {
    for l in [l1, l2] {
        alphabet.check_word(&l.spoke)?;
        alphabet.check_word(&l.cycle)?;
    }
    for (a, b) in alphabet.dependent_pairs() {
        let project =
            |w: &[Letter]| -> Word { w.iter().copied().filter(|&c| c == a || c == b).collect() };
        let (u1, v1) = (project(&l1.spoke), project(&l1.cycle));
        let (u2, v2) = (project(&l2.spoke), project(&l2.cycle));
        let same = match (v1.is_empty(), v2.is_empty()) {
            (true, true) => u1 == u2,
            (false, false) => same_periodic_word(&u1, &v1, &u2, &v2),
            _ => false,
        };
        if !same {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> DependenceAlphabet {
        DependenceAlphabet::new(&['a', 'b', 'c'], &[('b', 'c')]).unwrap()
    }

    fn ab_indep() -> DependenceAlphabet {
        DependenceAlphabet::new(&['a', 'b'], &[('a', 'b')]).unwrap()
    }

    fn ab_dep() -> DependenceAlphabet {
        DependenceAlphabet::full_dependence(&['a', 'b']).unwrap()
    }

    fn t(s: &DependenceAlphabet, w: &str) -> Trace {
        Trace::parse(s, w).unwrap()
    }

    fn set(s: &DependenceAlphabet, ws: &[&str]) -> BTreeSet<Word> {
        ws.iter().map(|w| s.word(w).unwrap()).collect()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(t(&abc(), "acb").to_string(), "abc");
        assert_eq!(t(&abc(), "ab").to_string(), "ab");
        assert_eq!(t(&ab_indep(), "ba").to_string(), "ab");
        assert!(t(&abc(), "").is_empty());
        assert_eq!(normal_form(&[2, 1], &abc()).unwrap().to_string(), "bc");
        assert_eq!(
            Trace::parse(&abc(), "ax").unwrap_err(),
            Error::UnknownLetter('x')
        );
    }

    #[test]
    fn equivalence() {
        let s = abc();
        assert!(equivalent(&s.word("acb").unwrap(), &s.word("abc").unwrap(), &s).unwrap());
        assert!(!equivalent(&s.word("ab").unwrap(), &s.word("ba").unwrap(), &s).unwrap());
        let s = ab_indep();
        assert!(equivalent(&s.word("ba").unwrap(), &s.word("ab").unwrap(), &s).unwrap());
    }

    #[test]
    fn linearizations_examples() {
        assert_eq!(
            t(&abc(), "abc").linearizations(),
            set(&abc(), &["abc", "acb"])
        );
        assert_eq!(t(&abc(), "aa").linearizations(), set(&abc(), &["aa"]));
        assert_eq!(
            t(&ab_indep(), "ab").linearizations(),
            set(&ab_indep(), &["ab", "ba"])
        );
        assert_eq!(t(&abc(), "").linearizations(), set(&abc(), &[""]));
    }

    #[test]
    fn prefixes() {
        let s = abc();
        assert!(t(&s, "a").is_prefix_of(&t(&s, "acb")).unwrap());
        assert!(t(&s, "ab").is_prefix_of(&t(&s, "acb")).unwrap());
        assert!(t(&s, "").is_prefix_of(&t(&s, "acb")).unwrap());
        assert!(!t(&s, "c").is_prefix_of(&t(&s, "acb")).unwrap());
        assert!(!t(&ab_dep(), "b").is_prefix_of(&t(&ab_dep(), "ab")).unwrap());
    }

    #[test]
    fn least_upper_bounds() {
        let s = abc();
        assert_eq!(t(&s, "ab").lub(&t(&s, "ac")).unwrap(), t(&s, "abc"));
        assert_eq!(t(&s, "ab").lub(&t(&s, "ab")).unwrap(), t(&s, "ab"));
        let d = ab_dep();
        assert_eq!(
            t(&d, "ab").lub(&t(&d, "ba")).unwrap_err(),
            Error::NoUpperBound
        );
        // `a` is not a prefix of anything above `ba`
        assert_eq!(
            t(&d, "a").lub(&t(&d, "ba")).unwrap_err(),
            Error::NoUpperBound
        );
        assert_eq!(t(&d, "a").lub(&t(&d, "ab")).unwrap(), t(&d, "ab"));
    }

    #[test]
    fn concatenation() {
        let s = abc();
        assert_eq!(t(&s, "a").concat(&t(&s, "b")).unwrap(), t(&s, "ab"));
        let bc = t(&s, "b").concat(&t(&s, "c")).unwrap();
        assert_eq!(bc.linearizations(), set(&s, &["bc", "cb"]));
        assert_eq!(t(&s, "").concat(&t(&s, "cab")).unwrap(), t(&s, "cab"));
        assert_eq!(bc.len(), 2);
    }

    #[test]
    fn lasso_equivalence_examples() {
        let s = abc();
        let l = |x: &str| LassoWord::parse(&s, x).unwrap();
        assert!(lasso_equivalent(&l("ab;c"), &l("acb;c"), &s).unwrap());
        assert!(lasso_equivalent(&l("ab;c"), &l("accb;c"), &s).unwrap());
        assert!(!lasso_equivalent(&l("ab;c"), &l("ba;c"), &s).unwrap());
        let s = ab_indep();
        let l = |x: &str| LassoWord::parse(&s, x).unwrap();
        assert!(lasso_equivalent(&l(";ab"), &l("ab;aabb"), &s).unwrap());
        assert!(!lasso_equivalent(&l(";a"), &l("b;a"), &s).unwrap());
        let d = ab_dep();
        let l = |x: &str| LassoWord::parse(&d, x).unwrap();
        assert!(!lasso_equivalent(&l(";ab"), &l(";ba"), &d).unwrap());
        assert!(lasso_equivalent(&l(";ab"), &l("a;ba"), &d).unwrap());
    }

    #[test]
    fn lasso_parse_rejects_empty_cycle() {
        assert!(LassoWord::parse(&abc(), "ab;").is_err());
        assert!(LassoWord::parse(&abc(), "ab").is_err());
    }
}
