use omtrace::closure::saturation_round;
use omtrace::fixtures;
use omtrace::oracle::bounded_closure_oracle;
use omtrace::random;
use omtrace::{
    ext_automaton, i_suffix_extension, is_i_diamond, lim_automaton, trace_closure, weak_equivalent,
    ClosureOptions, Dfa, Polarity,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn stabilized_closure_matches_bounded_oracle() {
    let mut rng = StdRng::seed_from_u64(21);
    let mut samples: Vec<Dfa> = fixtures::curated_trace_closed()
        .into_iter()
        .map(|(_, d)| d)
        .collect();
    let s = fixtures::abc_bc();
    for w in ["abc", "cab", "bbc", "acbca"] {
        samples.push(Dfa::from_words(&s, &[s.word(w).unwrap()]).unwrap());
    }
    for _ in 0..20 {
        let s = random::alphabet(&mut rng, 3, 0.5);
        samples.push(
            Dfa::from_words(
                &s,
                &[random::word(&mut rng, &s, 5), random::word(&mut rng, &s, 3)],
            )
            .unwrap(),
        );
    }
    for k in samples {
        let closed = trace_closure(&k, ClosureOptions::default())
            .unwrap()
            .automaton;
        for n in 0..=7 {
            let expected = bounded_closure_oracle(&k, n).unwrap().words;
            let got: std::collections::BTreeSet<_> = closed.words_up_to(n).into_iter().collect();
            assert_eq!(got, expected, "n = {n}");
        }
    }
}

#[test]
fn ext_of_suffix_extension_is_trace_invariant() {
    let mut rng = StdRng::seed_from_u64(22);
    for (name, k) in fixtures::curated_trace_closed() {
        let ki = i_suffix_extension(&k, ClosureOptions::default()).unwrap();
        let ext = ext_automaton(&ki, Polarity::Positive)
            .minimize_weak()
            .unwrap();
        assert!(is_i_diamond(ext.transitions()), "{name}");
        for _ in 0..500 {
            let l = random::lasso(&mut rng, k.alphabet(), 5, 4);
            let l2 = random::equivalent_lasso(&mut rng, k.alphabet(), &l);
            assert_eq!(
                ext.eval_lasso(&l).unwrap(),
                ext.eval_lasso(&l2).unwrap(),
                "{name}"
            );
        }
        // ext(K) ⊆ ext(K_I) = ext((K_I)_I)
        let kii = i_suffix_extension(&ki, ClosureOptions::default()).unwrap();
        assert!(
            weak_equivalent(&ext, &ext_automaton(&kii, Polarity::Positive)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn stable_lim_automata_respect_traces() {
    let mut rng = StdRng::seed_from_u64(23);
    for (name, k) in fixtures::curated_trace_closed() {
        let lim = lim_automaton(&k);
        if !lim.limit_stable {
            continue;
        }
        for _ in 0..500 {
            let l = random::lasso(&mut rng, k.alphabet(), 5, 4);
            let l2 = random::equivalent_lasso(&mut rng, k.alphabet(), &l);
            assert_eq!(
                lim.automaton.eval_lasso(&l).unwrap(),
                lim.automaton.eval_lasso(&l2).unwrap(),
                "{name}"
            );
        }
    }
}

#[test]
fn closed_languages_are_saturation_fixpoints() {
    for (name, k) in fixtures::curated_trace_closed() {
        let m = k.minimize();
        assert_eq!(saturation_round(&m, 10_000).unwrap(), m, "{name}");
    }
}
