//! Finite semigroups recognizing trace languages: transition and profile
//! semigroups, linked pairs, products, and the P-cut property.

mod pcut;
mod profile;
mod semigroup;

pub use pcut::{pcut_check, PcutResult};
pub use profile::{lim_linked_pairs, profile_semigroup, LimPairs, Profile, ProfileSemigroup};
pub use semigroup::{
    linked_pairs, product_morphism, transition_semigroup, Element, FiniteSemigroup, LinkedPair,
    SemigroupOptions, TransitionSemigroup,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::DependenceAlphabet;
    use crate::automata::{Dfa, OmegaAutomaton};
    use crate::fixtures;

    #[test]
    fn contains_a_semigroup() {
        let t = transition_semigroup(&fixtures::contains_a(), 100).unwrap();
        let sg = &t.semigroup;
        assert_eq!(sg.size(), 2);
        let (alpha, beta) = (sg.generator(0), sg.generator(1));
        assert_eq!(t.maps[alpha], vec![1, 1]);
        assert_eq!(t.maps[beta], vec![0, 1]);
        assert_eq!(
            (
                sg.mul(alpha, alpha),
                sg.mul(alpha, beta),
                sg.mul(beta, alpha),
                sg.mul(beta, beta)
            ),
            (alpha, alpha, alpha, beta)
        );
        let pairs = linked_pairs(sg);
        let expected =
            [(alpha, alpha), (alpha, beta), (beta, beta)].map(|(s, e)| LinkedPair { s, e });
        assert_eq!(pairs.len(), 3);
        assert!(expected.iter().all(|p| pairs.contains(p)));
    }

    #[test]
    fn small_semigroups() {
        let one = DependenceAlphabet::new(&['a'], &[]).unwrap();
        let trivial = transition_semigroup(&Dfa::universal(&one), 10).unwrap();
        assert_eq!(trivial.semigroup.size(), 1);
        assert_eq!(
            linked_pairs(&trivial.semigroup),
            vec![LinkedPair { s: 0, e: 0 }]
        );
        let parity = Dfa::from_fn(&one, 2, 0, |q, _| 1 - q, &[0]).unwrap();
        let z2 = transition_semigroup(&parity, 10).unwrap();
        assert_eq!(z2.semigroup.size(), 2);
        let zero = z2.semigroup.eval(&[0, 0]).unwrap();
        let one_el = z2.semigroup.generator(0);
        assert_eq!(linked_pairs(&z2.semigroup), {
            let mut v = vec![
                LinkedPair { s: zero, e: zero },
                LinkedPair { s: one_el, e: zero },
            ];
            v.sort();
            v
        });
    }

    #[test]
    fn product_sizes() {
        let ab = fixtures::ab_independent();
        let z2 = |a: usize| {
            Dfa::from_fn(&ab, 2, 0, move |q, x| if x == a { 1 - q } else { q }, &[0]).unwrap()
        };
        let x = transition_semigroup(&z2(0), 10).unwrap().semigroup;
        let y = transition_semigroup(&z2(1), 10).unwrap().semigroup;
        // each factor contains the identity as the image of the other letter
        let (p, _) = product_morphism(&x, &y, 100).unwrap();
        assert_eq!(p.size(), 4);
        let c = fixtures::contains_a();
        let t = transition_semigroup(&c, 10).unwrap().semigroup;
        let pr = profile_semigroup(&OmegaAutomaton::buchi(&c), 10)
            .unwrap()
            .semigroup;
        assert_eq!(product_morphism(&t, &pr, 100).unwrap().0.size(), 2);
    }

    #[test]
    fn recognition_soundness() {
        let k = fixtures::fig2_dfa();
        let t = transition_semigroup(&k, 4096).unwrap();
        for w in crate::automata::Dfa::universal(k.alphabet())
            .words_up_to(6)
            .into_iter()
            .skip(1)
        {
            assert_eq!(t.accepts(&w), Some(k.accepts(&w)));
        }
    }

    #[test]
    fn profiles() {
        let c = profile_semigroup(&OmegaAutomaton::buchi(&fixtures::contains_a()), 100).unwrap();
        assert!(c.noncommuting.is_empty());
        let f = profile_semigroup(&OmegaAutomaton::buchi(&fixtures::fig2_dfa()), 4096).unwrap();
        assert_eq!(f.noncommuting, vec![(0, 1, 6)]);
        let ab = f.semigroup.eval(&[0, 1]).unwrap();
        let ba = f.semigroup.eval(&[1, 0]).unwrap();
        assert_eq!(f.profile(ab)[6], (7, false));
        assert_eq!(f.profile(ba)[6], (7, true));
    }

    #[test]
    fn pcut_contains_a() {
        let t = transition_semigroup(&fixtures::contains_a(), 10).unwrap();
        for pair in linked_pairs(&t.semigroup) {
            assert!(pcut_check(&t.semigroup, &t.accepting, pair).unwrap().holds);
        }
    }

    #[test]
    fn pcut_capped_counter() {
        let (sg, values, p) = fixtures::capped_counter_recognizer();
        assert_eq!(sg.size(), 15);
        let at = |v: (usize, usize)| values.iter().position(|&x| x == v).unwrap();
        let pair = LinkedPair {
            s: at((3, 3)),
            e: at((2, 2)),
        };
        let r = pcut_check(&sg, &p, pair).unwrap();
        assert!(!r.holds);
        let (hit, miss) = r.witnesses.unwrap();
        let s = sg.alphabet().clone();
        assert_eq!(
            (s.render(&hit), s.render(&miss)),
            ("abab".into(), "aabb".into())
        );
        let bad = LinkedPair {
            s: at((1, 0)),
            e: at((2, 2)),
        };
        assert!(pcut_check(&sg, &p, bad).is_err());
    }

    #[test]
    fn lim_pairs_contains_a() {
        let c = fixtures::contains_a();
        let lp = lim_linked_pairs(&OmegaAutomaton::buchi(&c), 100).unwrap();
        let sg = &lp.profiles.semigroup;
        let (alpha, beta) = (sg.generator(0), sg.generator(1));
        assert!(lp.accepts(LinkedPair { s: alpha, e: alpha }));
        assert!(lp.accepts(LinkedPair { s: alpha, e: beta }));
        assert!(!lp.accepts(LinkedPair { s: beta, e: beta }));
    }
}
