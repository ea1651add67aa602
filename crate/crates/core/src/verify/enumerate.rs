//! Isomorphism-class enumeration by one-vertex extension plus canonical-form
//! deduplication, with a brute-force labeled enumeration as a cross-check.

use std::collections::BTreeMap;

use crate::{CanonicalForm, Digraph, Error, Result};

pub const MAX_TOURNAMENT_ORDER: usize = 7;
pub const MAX_ORIENTED_ORDER: usize = 6;

fn canonical(d: Digraph) -> (CanonicalForm, Digraph) {
    let relabeled = d.relabel(&d.canonical_labeling()).expect("canonical labeling is a permutation");
    (d.canonical_form(), relabeled)
}

/// Adds vertex `n` to every class of order `n` in every way `relation`
/// allows towards each old vertex; `relation(choice)` maps a choice index to
/// `Some(true)` (new -> old), `Some(false)` (old -> new) or `None`.
fn extend(classes: &[Digraph], choices: usize, relation: impl Fn(usize) -> Option<bool>) -> Vec<Digraph> {
    let mut out: BTreeMap<CanonicalForm, Digraph> = BTreeMap::new();
    for d in classes {
        let n = d.n();
        let total = choices.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut arcs = Vec::new();
            for old in 0..n {
                match relation(c % choices) {
                    Some(true) => arcs.push((n, old)),
                    Some(false) => arcs.push((old, n)),
                    None => {}
                }
                c /= choices;
            }
            let (form, rep) = canonical(d.with_extra(1, &arcs).expect("fresh vertex arcs are valid"));
            out.entry(form).or_insert(rep);
        }
    }
    out.into_values().collect()
}

/// One tournament per isomorphism class, in canonical-form order.
pub fn enumerate_tournaments(n: usize) -> Result<Vec<Digraph>> {
    if n > MAX_TOURNAMENT_ORDER {
        return Err(Error::InvalidArgument(format!("tournament order {n} exceeds {MAX_TOURNAMENT_ORDER}")));
    }
    let mut classes = vec![Digraph::edgeless(n.min(1))];
    for _ in 1..n {
        classes = extend(&classes, 2, |c| Some(c == 0));
    }
    Ok(classes)
}

/// One oriented graph per isomorphism class, in canonical-form order.
pub fn enumerate_oriented(n: usize) -> Result<Vec<Digraph>> {
    if n > MAX_ORIENTED_ORDER {
        return Err(Error::InvalidArgument(format!("oriented graph order {n} exceeds {MAX_ORIENTED_ORDER}")));
    }
    let mut classes = vec![Digraph::edgeless(n.min(1))];
    for _ in 1..n {
        classes = extend(&classes, 3, |c| match c {
            0 => None,
            1 => Some(true),
            _ => Some(false),
        });
    }
    Ok(classes)
}

/// Canonical forms of all labeled oriented graphs (or tournaments) on `n`
/// vertices, pair by pair. Exponential in `n^2`; a cross-check only.
pub fn labeled_class_forms(n: usize, tournaments_only: bool) -> Vec<CanonicalForm> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let choices: u64 = if tournaments_only { 2 } else { 3 };
    let total = choices.pow(pairs.len() as u32);
    let mut forms: Vec<CanonicalForm> = (0..total)
        .map(|code| {
            let mut c = code;
            let mut arcs = Vec::new();
            for &(u, v) in &pairs {
                let pick = c % choices + if tournaments_only { 1 } else { 0 };
                match pick {
                    1 => arcs.push((u, v)),
                    2 => arcs.push((v, u)),
                    _ => {}
                }
                c /= choices;
            }
            Digraph::from_arcs(n, &arcs).expect("one arc per pair").canonical_form()
        })
        .collect();
    forms.sort();
    forms.dedup();
    forms
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tournament_class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_tournaments(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 12, 56]);
        assert!(enumerate_tournaments(8).is_err());
    }

    #[test]
    fn oriented_class_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_oriented(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 42, 582]);
    }

    #[test]
    fn extension_matches_labeled_enumeration() {
        for n in 1..=5 {
            let ext: Vec<CanonicalForm> =
                enumerate_tournaments(n).unwrap().iter().map(|d| d.canonical_form()).collect();
            assert_eq!(ext, labeled_class_forms(n, true), "tournaments n={n}");
        }
        for n in 1..=4 {
            let ext: Vec<CanonicalForm> = enumerate_oriented(n).unwrap().iter().map(|d| d.canonical_form()).collect();
            assert_eq!(ext, labeled_class_forms(n, false), "oriented n={n}");
        }
    }

    #[test]
    fn every_class_is_a_tournament() {
        for d in enumerate_tournaments(5).unwrap() {
            assert!(d.is_tournament());
        }
    }
}
