use proptest::prelude::*;

use chromapath::circuits::{for_each_circuit, shortest_circuit_at_least};
use chromapath::coloring::{chi, chromatic_number, clique_number};
use chromapath::forest::{gallai_roy_path, OutForest};
use chromapath::graph::ContractMode;
use chromapath::paths::{find_pattern, find_two_block_certified, BlockPattern};
use chromapath::Digraph;

/// Oriented graph from one ternary choice per unordered pair.
fn oriented(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(0u8..3, pairs).prop_map(move |choice| {
            let mut arcs = Vec::new();
            let mut it = choice.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    match it.next().unwrap() {
                        1 => arcs.push((u, v)),
                        2 => arcs.push((v, u)),
                        _ => {}
                    }
                }
            }
            Digraph::from_arcs(n, &arcs).unwrap()
        })
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Digraph, Vec<usize>)> {
    oriented(max_n).prop_flat_map(|d| {
        let ids: Vec<usize> = (0..d.n()).collect();
        (Just(d), Just(ids).prop_shuffle())
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Smallest number of colors over all assignments, tried color count by
/// color count.
fn brute_chi(d: &Digraph) -> usize {
    let n = d.n();
    if n == 0 {
        return 0;
    }
    for c in 1..=n {
        let total = c.pow(n as u32);
        for code in 0..total {
            let mut x = code;
            let colors: Vec<usize> = (0..n)
                .map(|_| {
                    let r = x % c;
                    x /= c;
                    r
                })
                .collect();
            if d.arcs().all(|(u, v)| colors[u] != colors[v]) {
                return c;
            }
        }
    }
    unreachable!("n colors always suffice")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_sums_match_arc_count(d in oriented(10)) {
        let out: usize = (0..d.n()).map(|v| d.out_degree(v)).sum();
        let inc: usize = (0..d.n()).map(|v| d.in_degree(v)).sum();
        prop_assert_eq!(out, d.arc_count());
        prop_assert_eq!(inc, d.arc_count());
    }

    #[test]
    fn contraction_vertex_count(d in oriented(9), mask in any::<u16>()) {
        let set: Vec<usize> = (0..d.n()).filter(|&v| mask >> v & 1 == 1).collect();
        prop_assume!(!set.is_empty());
        let con = d.contract(&set, ContractMode::Multigraph).unwrap();
        prop_assert_eq!(con.digraph.n(), d.n() - set.len() + 1);
        for (u, v) in con.digraph.arcs() {
            let witnessed = con.preimage(u).iter().any(|&a| con.preimage(v).iter().any(|&b| d.has_arc(a, b)));
            prop_assert!(witnessed);
        }
    }

    #[test]
    fn induced_arcs_come_from_host(d in oriented(9), mask in any::<u16>()) {
        let set: Vec<usize> = (0..d.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let sub = d.induced(&set).unwrap();
        for (u, v) in sub.digraph.arcs() {
            prop_assert!(d.has_arc(sub.to_original(u), sub.to_original(v)));
        }
        let inside = d.arcs().filter(|&(u, v)| set.contains(&u) && set.contains(&v)).count();
        prop_assert_eq!(sub.digraph.arc_count(), inside);
    }

    #[test]
    fn canonical_form_ignores_labels((d, perm) in with_permutation(10)) {
        prop_assert_eq!(d.canonical_form(), d.relabel(&perm).unwrap().canonical_form());
        prop_assert!(d.is_isomorphic(&d.relabel(&perm).unwrap()));
    }

    #[test]
    fn arclist_round_trip(d in oriented(10)) {
        prop_assert_eq!(Digraph::parse_arclist(&d.to_arclist()).unwrap(), d);
    }

    #[test]
    fn chromatic_number_matches_brute_force(d in oriented(7)) {
        let r = chromatic_number(&d);
        prop_assert_eq!(r.chi, brute_chi(&d));
        prop_assert!(r.witness.is_proper(&d).unwrap());
        prop_assert!(r.witness.distinct_colors() <= r.chi);
    }

    #[test]
    fn levels_are_stable_and_closure_is_maximal(d in oriented(10)) {
        let f = OutForest::maximal_closure(&d, None).unwrap();
        prop_assert!(f.is_maximal(&d));
        for (u, v) in d.arcs() {
            prop_assert_ne!(f.level(u), f.level(v));
            if f.level(u) >= f.level(v) {
                prop_assert!(f.is_ancestor(v, u));
            }
        }
    }

    #[test]
    fn improvements_never_lower_a_level(d in oriented(10)) {
        let mut last = vec![1usize; d.n()];
        let mut ok = true;
        OutForest::maximal_closure_with(&d, None, |f, _| {
            let now = f.levels().to_vec();
            ok &= now.iter().zip(&last).all(|(a, b)| a >= b) && now != last;
            last = now;
        })
        .unwrap();
        prop_assert!(ok);
    }

    #[test]
    fn gallai_roy_bound(d in oriented(12)) {
        let p = gallai_roy_path(&d);
        prop_assert!(p.validate(&d).is_ok());
        prop_assert!(p.order() >= chi(&d));
    }

    #[test]
    fn two_block_symmetry(d in oriented(8), k in 1usize..4, l in 1usize..4) {
        let a = find_pattern(&d, &BlockPattern::two_block(k, l).unwrap()).is_some();
        let b = find_pattern(&d, &BlockPattern::two_block(l, k).unwrap()).is_some();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn two_block_path_with_one_backward_arc(d in oriented(9)) {
        let c = chi(&d);
        prop_assume!(c >= 4);
        prop_assert!(find_pattern(&d, &BlockPattern::two_block(c - 2, 1).unwrap()).is_some());
    }

    #[test]
    fn certified_outcomes_check_out(d in oriented(10), k in 1usize..5, l in 1usize..5) {
        prop_assume!(k + l >= 3);
        let out = find_two_block_certified(&d, k, l).unwrap();
        prop_assert!(out.validate(&d, k, l).is_ok());
        if chi(&d) > k + l {
            prop_assert!(out.embedding().is_some());
        }
        if out.embedding().is_none() {
            prop_assert!(chi(&d) <= k + l);
        }
    }

    #[test]
    fn in_degree_one_has_at_most_one_cycle(parents in prop::collection::vec(prop::option::of(0usize..10), 1..=10)) {
        let n = parents.len();
        let arcs: Vec<(usize, usize)> = parents
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p % n, v)))
            .filter(|(u, v)| u != v)
            .collect();
        let Ok(d) = Digraph::from_arcs(n, &arcs) else { return Ok(()) };
        prop_assume!(d.is_weakly_connected());
        // cycle rank of the underlying graph
        prop_assert!(d.arc_count() <= n);
        if d.arc_count() == n {
            let mut circuits = 0;
            for_each_circuit(&d, |_| { circuits += 1; true });
            prop_assert_eq!(circuits, 1);
        }
    }

    #[test]
    fn bounded_in_degree_without_five_tournament(d in oriented(8)) {
        let mut keep = Vec::new();
        let mut indeg = vec![0; d.n()];
        for (u, v) in d.arcs() {
            if indeg[v] < 2 {
                indeg[v] += 1;
                keep.push((u, v));
            }
        }
        let d = Digraph::from_arcs(d.n(), &keep).unwrap();
        prop_assume!(clique_number(&d) < 5);
        prop_assert!(chi(&d) <= 4);
    }

    #[test]
    fn shortest_long_circuit_is_minimal(d in oriented(8), k in 2usize..7) {
        let mut best: Option<usize> = None;
        for_each_circuit(&d, |c| {
            if c.len() >= k {
                best = Some(best.map_or(c.len(), |b: usize| b.min(c.len())));
            }
            true
        });
        let found = shortest_circuit_at_least(&d, k);
        prop_assert_eq!(found.as_ref().map(|c| c.len()), best);
        if let Some(c) = found {
            prop_assert!(c.validate(&d).is_ok());
        }
    }
}

#[test]
fn canonical_form_exhaustive_relabelings() {
    let samples = chromapath::random::oriented_sample(11, 12, 5..=6);
    for d in samples {
        let form = d.canonical_form();
        for p in permutations(d.n()) {
            assert_eq!(d.relabel(&p).unwrap().canonical_form(), form);
        }
    }
}

#[test]
fn bounded_in_degree_exhaustive_small_orders() {
    for n in 1..=5 {
        for d in chromapath::verify::enumerate_oriented(n).unwrap() {
            if d.max_in_degree() <= 2 && clique_number(&d) < 5 {
                assert!(chi(&d) <= 4);
            }
        }
    }
}
