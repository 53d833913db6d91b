//! Trace-closure saturation, the I-suffix extension `K_I`, and the ext / lim
//! automaton constructions.

use crate::automata::{Acceptance, Dfa, Nfa, OmegaAutomaton, Transitions};
use crate::error::{Error, Result};
use crate::stability::{self, StabilityReport};

/// Outcome of a saturation run.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub automaton: Dfa,
    /// Rounds that enlarged the language.
    pub iterations: usize,
    /// One more round would change nothing, so `automaton` accepts `[L]_~`.
    pub stabilized: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct ClosureOptions {
    pub max_rounds: usize,
    /// Cap on subset-construction states per round.
    pub max_states: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        Self {
            max_rounds: 32,
            max_states: 200_000,
        }
    }
}

impl ClosureOptions {
    pub fn with_rounds(max_rounds: usize) -> Self {
        Self {
            max_rounds,
            ..Self::default()
        }
    }
}

/// NFA for `L ∪ move(L)`, where `move` relocates one letter `b` across a
/// block of letters all independent of `b`, in either direction.
///
/// Layout: `q` = not yet moved, `n + q` = already moved, then one carry state
/// per `(q, b)` (original `b` read, still to be written) and one debt state
/// per `(q, b)` (`b` written, original `b` still to be read).
fn one_move(dfa: &Dfa) -> Nfa {
    let s = dfa.alphabet();
    let n = dfa.state_count();
    let k = s.len();
    let after = |q: usize| n + q;
    let carry = |q: usize, b: usize| 2 * n + q * k + b;
    let debt = |q: usize, b: usize| 2 * n + n * k + q * k + b;
    let mut nfa = Nfa::new(s, 2 * n + 2 * n * k);
    nfa.add_initial(dfa.initial());
    for q in 0..n {
        if dfa.is_final(q) {
            nfa.set_final(q);
            nfa.set_final(after(q));
        }
        for a in 0..k {
            nfa.add_edge(q, a, dfa.step(q, a));
            nfa.add_edge(after(q), a, after(dfa.step(q, a)));
        }
        for b in 0..k {
            let movers = s.independent_of(b);
            if movers.is_empty() {
                continue;
            }
            nfa.add_eps(q, carry(dfa.step(q, b), b));
            nfa.add_edge(carry(q, b), b, after(q));
            nfa.add_edge(q, b, debt(q, b));
            nfa.add_eps(debt(q, b), after(dfa.step(q, b)));
            for &c in &movers {
                nfa.add_edge(carry(q, b), c, carry(dfa.step(q, c), b));
                nfa.add_edge(debt(q, b), c, debt(dfa.step(q, c), b));
            }
        }
    }
    nfa
}

/// One saturation round: the minimal DFA of `L ∪ move(L)`.
pub fn saturation_round(dfa: &Dfa, max_states: usize) -> Result<Dfa> {
    Ok(one_move(dfa).determinize(max_states)?.minimize())
}

/// Iterates saturation rounds from `L(A)` until the language stops growing or
/// `max_rounds` rounds have run. Never reports `NotStabilized`; see
/// [`trace_closure`].
pub fn saturate(dfa: &Dfa, options: ClosureOptions) -> Result<ClosureResult> {
    let mut current = dfa.minimize();
    if !current.alphabet().has_independence() {
        return Ok(ClosureResult {
            automaton: current,
            iterations: 0,
            stabilized: true,
        });
    }
    for round in 0..options.max_rounds {
        let next = saturation_round(&current, options.max_states)?;
        if next == current {
            return Ok(ClosureResult {
                automaton: current,
                iterations: round,
                stabilized: true,
            });
        }
        current = next;
    }
    let stabilized = saturation_round(&current, options.max_states)? == current;
    Ok(ClosureResult {
        automaton: current,
        iterations: options.max_rounds,
        stabilized,
    })
}

/// `[L(A)]_~` by saturation. Fails with `NotStabilized` when the bound is hit,
/// which is expected whenever the closure is not regular.
pub fn trace_closure(dfa: &Dfa, options: ClosureOptions) -> Result<ClosureResult> {
    let result = saturate(dfa, options)?;
    if result.stabilized {
        Ok(result)
    } else {
        Err(Error::NotStabilized {
            rounds: options.max_rounds,
        })
    }
}

/// `[L(X) · L(Y)]_~` for trace-closed `L(X)`, `L(Y)`.
///
/// A word `w` is equivalent to some `xy` iff its positions split into a
/// subsequence `x'` and a subsequence `y'` with no letter of `x'` placed after
/// a dependent letter of `y'`; then `x' ~ x` and `y' ~ y`. The NFA guesses the
/// split while remembering which letters went to `y'` so far.
pub fn trace_concat(x: &Dfa, y: &Dfa, max_states: usize) -> Result<Dfa> {
    x.alphabet().ensure_same(y.alphabet())?;
    let s = x.alphabet();
    let k = s.len();
    if k >= usize::BITS as usize / 2 {
        return Err(Error::SizeLimit {
            what: "alphabet letters",
            limit: usize::BITS as usize / 2,
        });
    }
    let (n, m) = (x.state_count(), y.state_count());
    let id = |p: usize, q: usize, used: usize| ((p * m + q) << k) | used;
    let blocked: Vec<usize> = (0..k)
        .map(|c| s.dependent_on(c).iter().fold(0, |acc, &b| acc | 1 << b))
        .collect();
    let mut nfa = Nfa::new(s, (n * m) << k);
    nfa.add_initial(id(x.initial(), y.initial(), 0));
    for p in 0..n {
        for q in 0..m {
            for used in 0..1usize << k {
                let here = id(p, q, used);
                if x.is_final(p) && y.is_final(q) {
                    nfa.set_final(here);
                }
                for c in 0..k {
                    if used & blocked[c] == 0 {
                        nfa.add_edge(here, c, id(x.step(p, c), q, used));
                    }
                    nfa.add_edge(here, c, id(p, y.step(q, c), used | 1 << c));
                }
            }
        }
    }
    Ok(nfa.determinize(max_states)?.minimize())
}

/// `K_I = K ∪ ⋃_a [K a⁻¹ · a · I_a*]_~` for trace-closed `K = L(A)`.
///
/// Each term is the trace concatenation of `K a⁻¹` (trace-closed along with
/// `K`) and `[a · I_a*]_~ = I_a* a I_a*`, so no saturation is involved.
pub fn i_suffix_extension(dfa: &Dfa, options: ClosureOptions) -> Result<Dfa> {
    let k = dfa.minimize();
    if !stability::is_trace_closed(&k) {
        return Err(Error::NotTraceClosed);
    }
    let s = k.alphabet().clone();
    let mut result = k.clone();
    for a in 0..s.len() {
        let quotient = k.right_quotient(a).minimize();
        if quotient.is_empty() {
            continue;
        }
        let free = s.independent_of(a);
        // 0: before a, 1: after a, 2: sink
        let tail = Dfa::from_fn(
            &s,
            3,
            0,
            |q, c| match q {
                _ if q < 2 && free.contains(&c) => q,
                0 if c == a => 1,
                _ => 2,
            },
            &[1],
        )?;
        result = result
            .union(&trace_concat(&quotient, &tail, options.max_states)?)?
            .minimize();
    }
    Ok(result)
}

/// Which language an ext automaton accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    /// `ext(K)`
    Positive,
    /// the complement of `ext(K)`
    Negative,
}

/// DWA for `ext(L(A))` or its complement: the final states of the minimal DFA
/// collapse into one sink `⊥`.
pub fn ext_automaton(dfa: &Dfa, polarity: Polarity) -> OmegaAutomaton {
    let m = dfa.minimize();
    let n = m.state_count();
    let mut index = vec![usize::MAX; n];
    let mut orig = Vec::new();
    for q in 0..n {
        if !m.is_final(q) {
            index[q] = orig.len();
            orig.push(q);
        }
    }
    let count = orig.len();
    let bottom = count;
    let target = |q: usize| if m.is_final(q) { bottom } else { index[q] };
    let trans = Transitions::from_fn(
        m.alphabet().clone(),
        count + 1,
        target(m.initial()),
        |q, a| {
            if q == bottom {
                bottom
            } else {
                target(m.step(orig[q], a))
            }
        },
    )
    .expect("well-formed ext automaton");
    let finals = (0..=count)
        .map(|q| (q == bottom) == (polarity == Polarity::Positive))
        .collect();
    OmegaAutomaton::new(trans, Acceptance::Weak(finals))
        .expect("ext automata are weak")
        .canonical()
}

/// The minimal DFA of `L(A)` read as a DBA for `lim(L(A))`.
#[derive(Clone, Debug)]
pub struct LimResult {
    pub automaton: OmegaAutomaton,
    /// `lim(K)` is trace-closed; false also when `K` itself is not.
    pub limit_stable: bool,
    pub report: Option<StabilityReport>,
}

pub fn lim_automaton(dfa: &Dfa) -> LimResult {
    let m = dfa.minimize();
    let automaton = OmegaAutomaton::buchi(&m);
    match stability::is_limit_stable(&m) {
        Ok(report) => LimResult {
            automaton,
            limit_stable: report.verdict,
            report: Some(report),
        },
        Err(_) => LimResult {
            automaton,
            limit_stable: false,
            report: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::DependenceAlphabet;
    use crate::fixtures;
    use crate::trace::LassoWord;

    fn ab_indep() -> DependenceAlphabet {
        DependenceAlphabet::new(&['a', 'b'], &[('a', 'b')]).unwrap()
    }

    #[test]
    fn closure_of_single_word() {
        let s = ab_indep();
        let d = Dfa::from_words(&s, &[s.word("ab").unwrap()]).unwrap();
        let r = trace_closure(&d, ClosureOptions::default()).unwrap();
        assert_eq!(r.iterations, 1);
        let expected =
            Dfa::from_words(&s, &[s.word("ab").unwrap(), s.word("ba").unwrap()]).unwrap();
        assert_eq!(r.automaton, expected);
    }

    #[test]
    fn closed_language_is_a_fixpoint() {
        let r = trace_closure(&fixtures::fig2_dfa(), ClosureOptions::default()).unwrap();
        assert_eq!(r.iterations, 0);
        assert_eq!(r.automaton, fixtures::fig2_dfa());
    }

    #[test]
    fn equal_counts_never_stabilize() {
        let s = ab_indep();
        // (ab)*
        let d = Dfa::from_fn(
            &s,
            3,
            0,
            |q, a| match (q, a) {
                (0, 0) => 1,
                (1, 1) => 0,
                _ => 2,
            },
            &[0],
        )
        .unwrap();
        let err = trace_closure(&d, ClosureOptions::with_rounds(6)).unwrap_err();
        assert_eq!(err, Error::NotStabilized { rounds: 6 });
        let partial = saturate(&d, ClosureOptions::with_rounds(6)).unwrap();
        assert!(!partial.stabilized);
        assert!(partial.automaton.accepts(&s.word("aabb").unwrap()));
    }

    #[test]
    fn suffix_extension_of_ab_with_b_i_c() {
        let k = fixtures::example1_k();
        let s = k.alphabet().clone();
        let ki = i_suffix_extension(&k, ClosureOptions::default()).unwrap();
        for w in ["ab", "acb", "accb", "acbc", "abcc", "accbcc"] {
            assert!(ki.accepts(&s.word(w).unwrap()), "{w}");
        }
        for w in ["ba", "a", "abb", "cab", "abca"] {
            assert!(!ki.accepts(&s.word(w).unwrap()), "{w}");
        }
        // { a c^i b c^j }
        let expected = Dfa::from_fn(
            &s,
            4,
            0,
            |q, a| match (q, a) {
                (0, 0) => 1,
                (1, 2) => 1,
                (1, 1) => 2,
                (2, 2) => 2,
                _ => 3,
            },
            &[2],
        )
        .unwrap();
        assert!(ki.equivalent(&expected).unwrap());
    }

    #[test]
    fn concatenation_of_closed_languages() {
        let s = ab_indep();
        let star = |x: usize| {
            Dfa::from_fn(&s, 2, 0, move |q, a| if a == x { q } else { 1 }, &[0]).unwrap()
        };
        // [a* · b*]_~ = Σ*
        let both = trace_concat(&star(0), &star(1), 1000).unwrap();
        assert!(both.equivalent(&Dfa::universal(&s)).unwrap());
        let full = DependenceAlphabet::full_dependence(&['a', 'b']).unwrap();
        let star = |x: usize| {
            Dfa::from_fn(&full, 2, 0, move |q, a| if a == x { q } else { 1 }, &[0]).unwrap()
        };
        let ab = trace_concat(&star(0), &star(1), 1000).unwrap();
        assert!(ab.accepts(&[0, 0, 1]) && !ab.accepts(&[1, 0]));
    }

    #[test]
    fn suffix_extension_is_idempotent_on_ab_with_b_i_c() {
        let ki = i_suffix_extension(&fixtures::example1_k(), ClosureOptions::default()).unwrap();
        let kii = i_suffix_extension(&ki, ClosureOptions::default()).unwrap();
        let s = ki.alphabet().clone();
        // (K_I)_I adds the shuffles of extra b's and c's after acⁱb
        assert!(kii.accepts(&s.word("acbcb").unwrap()));
        assert!(!ki.accepts(&s.word("acbcb").unwrap()));
    }

    #[test]
    fn suffix_extension_without_independence_is_identity() {
        let s = DependenceAlphabet::full_dependence(&['a', 'b']).unwrap();
        let k = Dfa::from_words(&s, &[s.word("ab").unwrap(), s.word("bba").unwrap()]).unwrap();
        assert_eq!(
            i_suffix_extension(&k, ClosureOptions::default()).unwrap(),
            k
        );
    }

    #[test]
    fn suffix_extension_of_aa() {
        let s = ab_indep();
        let k = trace_closure(
            &Dfa::from_words(&s, &[s.word("aa").unwrap()]).unwrap(),
            ClosureOptions::default(),
        )
        .unwrap()
        .automaton;
        let ki = i_suffix_extension(&k, ClosureOptions::default()).unwrap();
        let two_as = Dfa::from_fn(
            &s,
            4,
            0,
            |q, a| if a == 0 { (q + 1).min(3) } else { q },
            &[2],
        )
        .unwrap();
        assert!(ki.equivalent(&two_as).unwrap());
        let s2 = ab_indep();
        assert_eq!(
            i_suffix_extension(
                &Dfa::from_words(&s2, &[s2.word("ab").unwrap()]).unwrap(),
                ClosureOptions::default()
            )
            .unwrap_err(),
            Error::NotTraceClosed
        );
    }

    #[test]
    fn ext_constructions() {
        let k = fixtures::example1_k();
        let s = k.alphabet().clone();
        let ki = i_suffix_extension(&k, ClosureOptions::default()).unwrap();
        let ext = ext_automaton(&ki, Polarity::Positive);
        let l = |x: &str| LassoWord::parse(&s, x).unwrap();
        assert!(ext.eval_lasso(&l("acb;c")).unwrap());
        assert!(!ext.eval_lasso(&l("b;c")).unwrap());
        let neg = ext_automaton(&ki, Polarity::Negative);
        assert!(!neg.eval_lasso(&l("acb;c")).unwrap());
        assert!(neg.eval_lasso(&l("b;c")).unwrap());

        let all = ext_automaton(&Dfa::universal(&s), Polarity::Positive);
        assert_eq!(all.state_count(), 1);
        assert!(all.is_final(all.initial()));
        assert!(all.eval_lasso(&l(";b")).unwrap());
    }

    #[test]
    fn lim_constructions() {
        let r = lim_automaton(&fixtures::fig2_dfa());
        assert!(!r.limit_stable);
        assert_eq!(r.automaton.as_dfa().unwrap().finals(), vec![8]);
        assert!(lim_automaton(&fixtures::contains_a()).limit_stable);
        assert!(lim_automaton(&Dfa::universal(&ab_indep())).limit_stable);
    }
}
