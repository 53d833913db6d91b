use std::collections::BTreeMap;

use omtrace::algebra::{
    lim_linked_pairs, linked_pairs, pcut_check, transition_semigroup, LinkedPair,
};
use omtrace::fixtures;
use omtrace::random;
use omtrace::{is_limit_stable, Dfa, LassoWord, OmegaAutomaton, Word};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn transition_semigroups_recognize() {
    let mut rng = StdRng::seed_from_u64(41);
    let mut samples: Vec<Dfa> = fixtures::curated_trace_closed()
        .into_iter()
        .map(|(_, d)| d)
        .collect();
    for _ in 0..20 {
        let s = random::alphabet(&mut rng, 3, 0.5);
        samples.push(random::i_diamond_dfa(&mut rng, &s, 8));
    }
    for d in samples {
        let t = transition_semigroup(&d, 4096).unwrap();
        if omtrace::is_i_diamond(t.dfa.transitions()) {
            assert!(t.semigroup.noncommuting_pairs().is_empty());
        }
        for w in Dfa::universal(d.alphabet())
            .words_up_to(6)
            .into_iter()
            .skip(1)
        {
            assert_eq!(t.accepts(&w), Some(d.accepts(&w)));
        }
    }
}

#[test]
fn pcut_agrees_with_stability_on_curated_recognizers() {
    let c = fixtures::contains_a();
    let t = transition_semigroup(&c, 100).unwrap();
    let all = linked_pairs(&t.semigroup)
        .into_iter()
        .all(|p| pcut_check(&t.semigroup, &t.accepting, p).unwrap().holds);
    assert_eq!(all, is_limit_stable(&c).unwrap().verdict);

    let (sg, _, p) = fixtures::capped_counter_recognizer();
    let all = linked_pairs(&sg)
        .into_iter()
        .all(|pair| pcut_check(&sg, &p, pair).unwrap().holds);
    assert_eq!(all, is_limit_stable(&fixtures::fig2_dfa()).unwrap().verdict);
}

/// Words of length 1..=6 bucketed by their image.
fn preimages(
    sg: &omtrace::algebra::FiniteSemigroup,
    alphabet: &omtrace::DependenceAlphabet,
) -> BTreeMap<usize, Vec<Word>> {
    let mut buckets: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
    for w in Dfa::universal(alphabet).words_up_to(6).into_iter().skip(1) {
        buckets.entry(sg.eval(&w).unwrap()).or_default().push(w);
    }
    buckets
}

#[test]
fn lim_pairs_match_buchi_evaluation() {
    for (name, k) in fixtures::curated_trace_closed() {
        let dba = OmegaAutomaton::buchi(&k.minimize());
        let lp = lim_linked_pairs(&dba, 4096).unwrap();
        let buckets = preimages(&lp.profiles.semigroup, k.alphabet());
        for pair in linked_pairs(&lp.profiles.semigroup) {
            let LinkedPair { s, e } = pair;
            let sg = &lp.profiles.semigroup;
            // s·eⁱ = s and eⁱ = e supply preimages beyond the enumerated ones
            let pumped = |base: &[usize], i: usize| [base, &sg.word_of(e).repeat(i)].concat();
            let mut us: Vec<Word> = (0..3).map(|i| pumped(sg.word_of(s), i)).collect();
            let mut vs: Vec<Word> = (1..4).map(|i| sg.word_of(e).repeat(i)).collect();
            us.extend(buckets.get(&s).cloned().unwrap_or_default());
            vs.extend(buckets.get(&e).cloned().unwrap_or_default());
            assert!(
                us.iter().all(|u| sg.eval(u) == Some(s))
                    && vs.iter().all(|v| sg.eval(v) == Some(e))
            );
            for i in 0..20 {
                let l = LassoWord::new(us[i * 7 % us.len()].clone(), vs[i * 13 % vs.len()].clone())
                    .unwrap();
                assert_eq!(dba.eval_lasso(&l).unwrap(), lp.accepts(pair), "{name}");
            }
        }
    }
}
