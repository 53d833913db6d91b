use omtrace::fixtures;
use omtrace::oracle::{ext_prefix_oracle, lim_prefix_oracle, swap_class};
use omtrace::random;
use omtrace::{ext_automaton, i_suffix_extension, ClosureOptions, Dfa, OmegaAutomaton, Polarity};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

proptest! {
    #[test]
    fn swap_classes_preserve_letter_counts(w in prop::collection::vec(0..3usize, 0..=8)) {
        let s = fixtures::abc_bc();
        let counts = |x: &[usize]| (0..3).map(|a| x.iter().filter(|&&b| b == a).count()).collect::<Vec<_>>();
        for v in swap_class(&w, &s).unwrap() {
            prop_assert_eq!(v.len(), w.len());
            prop_assert_eq!(counts(&v), counts(&w));
        }
    }
}

fn check(d: &Dfa, rng: &mut StdRng, lassos: usize) {
    let buchi = OmegaAutomaton::buchi(d);
    let ext = ext_automaton(d, Polarity::Positive);
    for _ in 0..lassos {
        let l = random::lasso(rng, d.alphabet(), 6, 6);
        assert_eq!(buchi.eval_lasso(&l).unwrap(), lim_prefix_oracle(d, &l));
        assert_eq!(ext.eval_lasso(&l).unwrap(), ext_prefix_oracle(d, &l));
    }
}

#[test]
fn prefix_oracles_agree_on_fixtures() {
    let mut rng = StdRng::seed_from_u64(61);
    for (_, k) in fixtures::curated_trace_closed() {
        check(&k, &mut rng, 200);
        check(
            &i_suffix_extension(&k, ClosureOptions::default()).unwrap(),
            &mut rng,
            200,
        );
    }
}

#[test]
fn prefix_oracles_agree_on_random_instances() {
    let mut rng = StdRng::seed_from_u64(62);
    for _ in 0..1000 {
        let k = rng.gen_range(2..=3);
        let s = random::alphabet(&mut rng, k, 0.5);
        let d = random::i_diamond_dfa(&mut rng, &s, 8);
        check(&d, &mut rng, 1);
    }
}
