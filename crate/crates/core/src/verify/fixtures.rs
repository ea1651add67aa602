//! Named example digraphs.

use crate::Digraph;

/// The 5-tournament with arcs `i -> i+1` and `i -> i+2` (mod 5); every
/// vertex has in- and out-degree 2.
pub fn build_t5() -> Digraph {
    let arcs: Vec<(usize, usize)> = (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, (i + 2) % 5)]).collect();
    Digraph::from_arcs(5, &arcs).expect("T5 arcs are valid")
}

/// `T5` plus a vertex `5` whose only arc is `5 -> 0`. Still free of the
/// antidirected path `b1,f1,b1,f1`, while vertex 5 has out-degree 1.
pub fn build_elsahili_example() -> Digraph {
    build_t5().with_extra(1, &[(5, 0)]).expect("extra arc is valid")
}

/// Orientation of `C5 + K2` (every cycle vertex joined to both ends of the
/// edge) with minimum out-degree 2. Chromatic number 5, clique number 4.
pub fn c5_join_k2() -> Digraph {
    let mut arcs: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    for i in 0..5 {
        arcs.push(if i % 2 == 0 { (i, 5) } else { (5, i) });
        arcs.push(if i % 2 == 0 { (6, i) } else { (i, 6) });
    }
    arcs.push((6, 5));
    Digraph::from_arcs(7, &arcs).expect("join arcs are valid")
}

/// Connected 5-chromatic digraphs other than `T5` in which every vertex has
/// out-degree at least 2. Each one must contain `b1,f1,b1,f1`. A hand-built
/// corpus, not a generator for the whole class.
pub fn min_out_two_corpus() -> Vec<(&'static str, Digraph)> {
    let t5 = build_t5();
    vec![
        ("t5-plus-source-pair", t5.with_extra(1, &[(5, 0), (5, 1)]).expect("valid")),
        ("t5-plus-split-source", t5.with_extra(1, &[(5, 0), (5, 2), (3, 5)]).expect("valid")),
        ("t5-plus-four-neighbors", t5.with_extra(1, &[(5, 1), (5, 3), (0, 5), (2, 5)]).expect("valid")),
        (
            "t5-plus-two-chained",
            t5.with_extra(2, &[(5, 0), (5, 6), (6, 1), (6, 2)]).expect("valid"),
        ),
        ("c5-join-k2", c5_join_k2()),
    ]
}
