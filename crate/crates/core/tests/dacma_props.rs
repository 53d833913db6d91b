use std::collections::VecDeque;

use omtrace::dacma::{occ, DEFAULT_GLOBAL_CAP};
use omtrace::fixtures;
use omtrace::random;
use omtrace::{fi_cycle_closed, is_i_diamond, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn decomposition_matches_simulation() {
    let mut rng = StdRng::seed_from_u64(51);
    for (name, m) in fixtures::curated_dacmas() {
        let combo = m.decompose().unwrap();
        for _ in 0..1000 {
            let l = random::lasso(&mut rng, m.alphabet(), 8, 8);
            assert_eq!(
                combo.eval_lasso(&l).unwrap(),
                m.eval(&l).unwrap(),
                "{name} {}",
                l.render(m.alphabet())
            );
        }
    }
}

#[test]
fn component_dbas_are_cycle_closed() {
    for (name, m) in fixtures::curated_dacmas() {
        for a in 0..m.alphabet().len() {
            for q in 0..m.local_sizes()[a] {
                let dba = m.component_dba(a, q).unwrap();
                assert!(is_i_diamond(dba.transitions()), "{name}");
                assert!(fi_cycle_closed(&dba).unwrap().verdict, "{name} {a} {q}");
            }
        }
    }
}

#[test]
fn occurrence_sets_respect_traces() {
    let mut rng = StdRng::seed_from_u64(52);
    for (_, m) in fixtures::curated_dacmas() {
        let g = m.global_automaton(DEFAULT_GLOBAL_CAP).unwrap();
        let k = m.alphabet().len();
        for _ in 0..200 {
            let q = rng.gen_range(0..g.trans.state_count());
            let len = rng.gen_range(1..6);
            let mut u: Word = random::word(&mut rng, m.alphabet(), len);
            // close the cycle with a shortest way back
            let from = g.trans.run_from(q, &u);
            let mut parent = vec![None; g.trans.state_count()];
            let mut queue = VecDeque::from([from]);
            let mut seen = vec![false; g.trans.state_count()];
            seen[from] = true;
            while let Some(p) = queue.pop_front() {
                for a in 0..k {
                    let r = g.trans.step(p, a);
                    if !seen[r] {
                        seen[r] = true;
                        parent[r] = Some((p, a));
                        queue.push_back(r);
                    }
                }
            }
            if !seen[q] {
                continue;
            }
            let mut back = Vec::new();
            let mut cur = q;
            while cur != from {
                let (p, a) = parent[cur].unwrap();
                back.push(a);
                cur = p;
            }
            back.reverse();
            u.extend(back);
            let v = random::shuffle_word(&mut rng, m.alphabet(), &u, 4 * u.len());
            assert_eq!(g.trans.run_from(q, &u), q);
            assert_eq!(g.trans.run_from(q, &v), q);
            let tuple = &g.states[q];
            assert_eq!(occ(&m, tuple, &u), occ(&m, tuple, &v));
        }
    }
}
