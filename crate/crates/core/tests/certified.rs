//! Trace-level checks of the certified two-block search over a seeded corpus.

use std::collections::BTreeSet;

use chromapath::coloring::chi;
use chromapath::paths::{certify_two_block, find_pattern, find_two_block_strong, BlockPattern, Rule};
use chromapath::random::{oriented_sample, strong_sample};

#[test]
fn every_trace_validates_and_circuit_rules_are_reached() {
    let mut rules = BTreeSet::new();
    let mut colorings_after_removal = 0;
    for d in oriented_sample(5, 3000, 4..=12) {
        let c = chi(&d);
        for total in [c.saturating_sub(1), c, c + 1] {
            if total < 3 {
                continue;
            }
            for k in 1..total {
                let l = total - k;
                let cert = certify_two_block(&d, k, l).unwrap();
                assert!(cert.outcome.validate(&d, k, l).is_ok(), "{d:?} k={k} l={l}");
                for circuit in &cert.circuits {
                    assert!(circuit.validate(&d).is_ok());
                    assert!(circuit.len() > k.max(l));
                }
                if cert.rule == Rule::Coloring && !cert.circuits.is_empty() {
                    colorings_after_removal += 1;
                }
                rules.insert(format!("{:?}", cert.rule));
            }
        }
    }
    assert!(colorings_after_removal > 0);
    for rule in ["LevelGapForward", "LevelGapBackward", "HookRaised", "CircuitNearDeepLevel", "CircuitFedByLevelK"] {
        assert!(rules.contains(rule), "{rule} never fired: {rules:?}");
    }
}

#[test]
fn contraction_route_on_strong_samples() {
    for d in strong_sample(9, 300, 4..=10) {
        let c = chi(&d);
        if c < 4 {
            continue;
        }
        for k in 1..c - 1 {
            let l = c - 1 - k;
            let p = find_two_block_strong(&d, k, l).unwrap().expect("threshold case has a path");
            assert_eq!(p.pattern, BlockPattern::two_block(k, l).unwrap());
            assert!(p.validate(&d).is_ok());
            assert!(find_pattern(&d, &p.pattern).is_some());
        }
    }
}
