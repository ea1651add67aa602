//! Strong connectivity, circuit searches, good circuits and handle
//! decompositions.

use serde::Serialize;

use crate::coloring::chi;
use crate::graph::{ContractMode, Contraction};
use crate::{Digraph, Error, Result};

/// A directed circuit `v0 -> v1 -> ... -> v_{len-1} -> v0` of distinct
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Circuit {
    pub vertices: Vec<usize>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn successor(&self, v: usize) -> Option<usize> {
        self.position(v).map(|i| self.vertices[(i + 1) % self.len()])
    }

    /// The directed subpath with `arcs` arcs ending at `v`.
    pub fn path_ending_at(&self, v: usize, arcs: usize) -> Option<Vec<usize>> {
        let p = self.position(v)?;
        if arcs >= self.len() {
            return None;
        }
        let n = self.len();
        Some((0..=arcs).map(|i| self.vertices[(p + n - arcs + i) % n]).collect())
    }

    /// Forward segment from `from` to `to`, both included.
    pub fn segment(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let (a, b) = (self.position(from)?, self.position(to)?);
        let n = self.len();
        let steps = (b + n - a) % n;
        Some((0..=steps).map(|i| self.vertices[(a + i) % n]).collect())
    }

    /// Rotation starting at the smallest vertex, for stable comparisons.
    pub fn normalized(&self) -> Circuit {
        let Some(start) = self.vertices.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i) else {
            return self.clone();
        };
        let mut v = self.vertices.clone();
        v.rotate_left(start);
        Circuit { vertices: v }
    }

    /// Checks distinct vertices and every circuit arc in `host`. Length 2 is
    /// only accepted in non-oriented hosts.
    pub fn validate(&self, host: &Digraph) -> std::result::Result<(), String> {
        let min = if host.is_oriented() { 3 } else { 2 };
        if self.len() < min {
            return Err(format!("circuit of length {} (minimum {min})", self.len()));
        }
        let mut seen = vec![false; host.n()];
        for &v in &self.vertices {
            if v >= host.n() || std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} invalid or repeated"));
            }
        }
        for i in 0..self.len() {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % self.len()]);
            if !host.has_arc(a, b) {
                return Err(format!("missing circuit arc {a} -> {b}"));
            }
        }
        Ok(())
    }
}

/// Strong components, each ascending, ordered by smallest vertex.
pub fn strong_components(d: &Digraph) -> Vec<Vec<usize>> {
    let n = d.n();
    // Kosaraju: finishing order on D, then sweep D reversed.
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if let Some(&w) = d.out_neighbors(u).get(*i) {
                *i += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in d.in_neighbors(u) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

pub fn is_strongly_connected(d: &Digraph) -> bool {
    d.n() > 0 && strong_components(d).len() == 1
}

/// Visits every circuit once, as the sequence starting at its smallest
/// vertex. Start vertices and neighbors are scanned in ascending order.
/// `visit` returns `false` to stop early.
pub fn for_each_circuit(d: &Digraph, mut visit: impl FnMut(&[usize]) -> bool) {
    fn extend(d: &Digraph, start: usize, path: &mut Vec<usize>, on: &mut [bool], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let u = *path.last().expect("path is non-empty");
        for &w in d.out_neighbors(u) {
            if w == start && path.len() >= 2 {
                if !visit(path) {
                    return false;
                }
            } else if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                let go_on = extend(d, start, path, on, visit);
                path.pop();
                on[w] = false;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    let mut on = vec![false; d.n()];
    for s in 0..d.n() {
        let mut path = vec![s];
        on[s] = true;
        let go_on = extend(d, s, &mut path, &mut on, &mut visit);
        on[s] = false;
        if !go_on {
            return;
        }
    }
}

/// Longest circuit by exhaustive search (first found among the longest).
pub fn longest_circuit(d: &Digraph) -> Option<Circuit> {
    let mut best: Option<Vec<usize>> = None;
    for_each_circuit(d, |c| {
        if best.as_ref().is_none_or(|b| c.len() > b.len()) {
            best = Some(c.to_vec());
        }
        best.as_ref().is_none_or(|b| b.len() < d.n())
    });
    best.map(|vertices| Circuit { vertices })
}

/// Shortest circuit among those of length at least `k`, by iterative
/// deepening on the target length. Start vertices ascending, neighbors
/// ascending; each circuit is found from its smallest vertex.
pub fn shortest_circuit_at_least(d: &Digraph, k: usize) -> Option<Circuit> {
    fn search(d: &Digraph, start: usize, target: usize, path: &mut Vec<usize>, on: &mut [bool]) -> bool {
        let u = *path.last().expect("path is non-empty");
        if path.len() == target {
            return d.has_arc(u, start);
        }
        for &w in d.out_neighbors(u) {
            if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                if search(d, start, target, path, on) {
                    return true;
                }
                path.pop();
                on[w] = false;
            }
        }
        false
    }
    let mut on = vec![false; d.n()];
    for target in k.max(2)..=d.n() {
        for s in 0..d.n() {
            let mut path = vec![s];
            on[s] = true;
            let found = search(d, s, target, &mut path, &mut on);
            for &v in &path {
                on[v] = false;
            }
            if found {
                return Some(Circuit { vertices: path });
            }
        }
    }
    None
}

/// A `k`-good circuit: length at least `k` and the subdigraph induced by its
/// vertices is `k`-colorable.
///
/// Takes a shortest circuit of length at least `k`. In a strongly connected
/// digraph with `3 <= k <= chi` such a circuit exists and is `k`-good; both
/// facts are re-checked and a failure is reported as an internal
/// inconsistency.
pub fn k_good_circuit(d: &Digraph, k: usize) -> Result<Circuit> {
    if !is_strongly_connected(d) {
        return Err(Error::NotStronglyConnected);
    }
    let c = chi(d);
    if k < 3 || k > c {
        return Err(Error::InvalidArgument(format!("k = {k} outside 3..={c}")));
    }
    let circuit = shortest_circuit_at_least(d, k).ok_or_else(|| {
        Error::InternalInconsistency(format!("strongly connected {c}-chromatic digraph without a circuit of length >= {k}"))
    })?;
    let induced = d.induced(&circuit.vertices)?;
    let local = chi(&induced.digraph);
    if local > k {
        return Err(Error::InternalInconsistency(format!(
            "shortest circuit of length >= {k} induces chromatic number {local}"
        )));
    }
    Ok(circuit)
}

/// `true` iff `c` is `k`-good in `d`.
pub fn is_k_good(d: &Digraph, c: &Circuit, k: usize) -> bool {
    c.validate(d).is_ok()
        && c.len() >= k
        && d.induced(&c.vertices).map(|s| chi(&s.digraph) <= k).unwrap_or(false)
}

/// A circuit followed by handles: directed paths whose inner vertices are
/// new and whose end vertices are already covered (possibly equal).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HandleDecomposition {
    /// `handles[0]` is the circuit (vertex cycle); later entries are vertex
    /// paths `x, y1, ..., yt, z`.
    pub handles: Vec<Vec<usize>>,
    pub trivial_count: usize,
}

impl HandleDecomposition {
    /// Number of handles, including the initial circuit.
    pub fn r(&self) -> usize {
        self.handles.len()
    }

    /// Checks every structural condition against `host`.
    pub fn validate(&self, host: &Digraph) -> std::result::Result<(), String> {
        let Some(first) = self.handles.first() else {
            return Err("no handles".into());
        };
        Circuit { vertices: first.clone() }.validate(host)?;
        let n = host.n();
        let mut covered = vec![false; n];
        let mut used: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
        for i in 0..first.len() {
            covered[first[i]] = true;
            used.insert((first[i], first[(i + 1) % first.len()]));
        }
        let mut trivial = 0;
        let mut seen_trivial = false;
        for (idx, h) in self.handles.iter().enumerate().skip(1) {
            if h.len() < 2 {
                return Err(format!("handle {idx} has fewer than two vertices"));
            }
            let (x, z) = (h[0], h[h.len() - 1]);
            if x >= n || z >= n || !covered[x] || !covered[z] {
                return Err(format!("handle {idx} end vertices not covered"));
            }
            let inner = &h[1..h.len() - 1];
            if inner.is_empty() {
                trivial += 1;
                seen_trivial = true;
                if x == z {
                    return Err(format!("handle {idx} is a loop"));
                }
            } else if seen_trivial {
                return Err(format!("non-trivial handle {idx} after a trivial one"));
            }
            for &y in inner {
                if y >= n || covered[y] {
                    return Err(format!("handle {idx} inner vertex {y} already covered"));
                }
                covered[y] = true;
            }
            for w in h.windows(2) {
                if !host.has_arc(w[0], w[1]) {
                    return Err(format!("handle {idx}: missing arc {} -> {}", w[0], w[1]));
                }
                if !used.insert((w[0], w[1])) {
                    return Err(format!("handle {idx}: arc {} -> {} used twice", w[0], w[1]));
                }
            }
        }
        if covered.iter().any(|c| !c) {
            return Err("handles do not cover every vertex".into());
        }
        if used.len() != host.arc_count() {
            return Err(format!("handles cover {} of {} arcs", used.len(), host.arc_count()));
        }
        if self.r() + n != host.arc_count() + 1 {
            return Err(format!("r = {} but m - n + 1 = {}", self.r(), host.arc_count() + 1 - n));
        }
        if trivial != self.trivial_count {
            return Err(format!("trivial_count {} but {trivial} trivial handles", self.trivial_count));
        }
        Ok(())
    }
}

const HANDLE_SEARCH_BUDGET: usize = 200_000;

/// Longest handle leaving the covered set, by bounded exhaustive search.
fn longest_handle(d: &Digraph, covered: &[bool]) -> Option<Vec<usize>> {
    struct St<'a> {
        d: &'a Digraph,
        covered: &'a [bool],
        on: Vec<bool>,
        best: Option<Vec<usize>>,
        budget: usize,
    }
    fn dfs(st: &mut St, path: &mut Vec<usize>) {
        if st.budget == 0 {
            return;
        }
        st.budget -= 1;
        let u = *path.last().expect("non-empty");
        for &w in st.d.out_neighbors(u) {
            if st.covered[w] {
                if st.best.as_ref().is_none_or(|b| path.len() + 1 > b.len()) {
                    let mut h = path.clone();
                    h.push(w);
                    st.best = Some(h);
                }
            } else if !st.on[w] {
                st.on[w] = true;
                path.push(w);
                dfs(st, path);
                path.pop();
                st.on[w] = false;
            }
        }
    }
    let mut st = St { d, covered, on: vec![false; d.n()], best: None, budget: HANDLE_SEARCH_BUDGET };
    for x in (0..d.n()).filter(|&x| covered[x]) {
        for &y in d.out_neighbors(x) {
            if !covered[y] {
                st.on[y] = true;
                dfs(&mut st, &mut vec![x, y]);
                st.on[y] = false;
            }
        }
    }
    st.best
}

/// Greedy handle decomposition: a longest circuit first, then repeatedly a
/// longest available non-trivial handle, then the leftover arcs as trivial
/// handles in ascending order.
pub fn handle_decomposition(d: &Digraph) -> Result<HandleDecomposition> {
    if !is_strongly_connected(d) || d.n() < 2 {
        return Err(Error::NotStronglyConnected);
    }
    let first = if d.n() <= 12 {
        longest_circuit(d)
    } else {
        shortest_circuit_at_least(d, 2)
    }
    .expect("a strongly connected digraph on >= 2 vertices has a circuit");
    let mut covered = vec![false; d.n()];
    let mut used = std::collections::HashSet::new();
    for i in 0..first.len() {
        covered[first.vertices[i]] = true;
        used.insert((first.vertices[i], first.vertices[(i + 1) % first.len()]));
    }
    let mut handles = vec![first.vertices];
    while covered.iter().any(|c| !c) {
        let h = longest_handle(d, &covered)
            .ok_or_else(|| Error::InternalInconsistency("no handle leaves the covered set".into()))?;
        for &y in &h[1..h.len() - 1] {
            covered[y] = true;
        }
        for w in h.windows(2) {
            used.insert((w[0], w[1]));
        }
        handles.push(h);
    }
    let mut trivial_count = 0;
    for (u, v) in d.arcs() {
        if !used.contains(&(u, v)) {
            handles.push(vec![u, v]);
            trivial_count += 1;
        }
    }
    Ok(HandleDecomposition { handles, trivial_count })
}

/// Contracts a circuit of `d` into one vertex, multigraph style: digons may
/// appear, loops and parallels are dropped.
pub fn contract_circuit(d: &Digraph, c: &Circuit) -> Result<Contraction> {
    c.validate(d).map_err(|m| Error::InvalidArgument(format!("not a circuit: {m}")))?;
    d.contract(&c.vertices, ContractMode::Multigraph)
}

/// Exhaustive check that a strongly connected digraph has a circuit of
/// length at least its chromatic number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BondyReport {
    pub chi: usize,
    pub longest: usize,
    pub circuit: Option<Circuit>,
    pub pass: bool,
}

pub fn verify_bondy(d: &Digraph) -> Result<BondyReport> {
    if !is_strongly_connected(d) {
        return Err(Error::NotStronglyConnected);
    }
    let c = chi(d);
    let circuit = longest_circuit(d);
    // A single vertex has no circuit; its chromatic number is 1 and the
    // trivial circuit of order 1 is accepted.
    let longest = circuit.as_ref().map_or(d.n().min(1), |c| c.len());
    Ok(BondyReport { chi: c, longest, pass: longest >= c, circuit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures::build_t5;

    #[test]
    fn components_of_small_digraphs() {
        assert_eq!(strong_components(&Digraph::directed_cycle(4)), vec![vec![0, 1, 2, 3]]);
        assert_eq!(strong_components(&Digraph::directed_path(3)), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(strong_components(&Digraph::transitive_tournament(5)).len(), 5);
        assert!(is_strongly_connected(&build_t5()));
    }

    #[test]
    fn shortest_circuit_examples() {
        let c5 = Digraph::directed_cycle(5);
        assert_eq!(shortest_circuit_at_least(&c5, 3).unwrap().len(), 5);
        assert!(shortest_circuit_at_least(&c5, 6).is_none());
        // disjoint circuits of lengths 3 and 7
        let mut arcs: Vec<(usize, usize)> = (0..3).map(|i| (i, (i + 1) % 3)).collect();
        arcs.extend((0..7).map(|i| (3 + i, 3 + (i + 1) % 7)));
        let d = Digraph::from_arcs(10, &arcs).unwrap();
        let c = shortest_circuit_at_least(&d, 4).unwrap();
        assert_eq!(c.len(), 7);
        assert!(c.validate(&d).is_ok());
    }

    #[test]
    fn good_circuits() {
        let c5 = Digraph::directed_cycle(5);
        assert_eq!(k_good_circuit(&c5, 3).unwrap().len(), 5);
        let t5 = build_t5();
        let c = k_good_circuit(&t5, 3).unwrap();
        assert!(is_k_good(&t5, &c, 3));
        assert_eq!(k_good_circuit(&Digraph::directed_path(3), 3), Err(Error::NotStronglyConnected));
        assert!(matches!(k_good_circuit(&c5, 4), Err(Error::InvalidArgument(_))));
        assert!(matches!(k_good_circuit(&c5, 2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn handle_counts() {
        let c3 = Digraph::directed_cycle(3);
        let h = handle_decomposition(&c3).unwrap();
        assert_eq!((h.r(), h.trivial_count), (1, 0));
        assert!(h.validate(&c3).is_ok());

        let chord = Digraph::from_arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let h = handle_decomposition(&chord).unwrap();
        assert_eq!(h.r(), 2);
        assert_eq!(h.handles[0].len(), 4);
        assert_eq!(h.handles[1], vec![0, 2]);
        assert!(h.validate(&chord).is_ok());

        let t5 = build_t5();
        let h = handle_decomposition(&t5).unwrap();
        assert_eq!(h.r(), 6);
        assert!(h.validate(&t5).is_ok());
    }

    #[test]
    fn handle_checker_rejects_tampering() {
        let t5 = build_t5();
        let mut h = handle_decomposition(&t5).unwrap();
        h.handles.pop();
        assert!(h.validate(&t5).is_err());
    }

    #[test]
    fn circuit_contraction() {
        // C5 plus u = 5 with u -> 0 and 2 -> u
        let d = Digraph::directed_cycle(5).with_extra(1, &[(5, 0), (2, 5)]).unwrap();
        let c = Circuit { vertices: vec![0, 1, 2, 3, 4] };
        let con = contract_circuit(&d, &c).unwrap();
        assert_eq!(con.digraph.n(), 2);
        assert_eq!(con.digraph.arc_count(), 2);
        assert!(is_strongly_connected(&con.digraph));

        let alone = contract_circuit(&Digraph::directed_cycle(5), &c).unwrap();
        assert_eq!(alone.digraph.n(), 1);
        assert!(contract_circuit(&d, &Circuit { vertices: vec![0, 2, 1] }).is_err());
    }

    #[test]
    fn bondy_examples() {
        let r = verify_bondy(&Digraph::directed_cycle(3)).unwrap();
        assert_eq!((r.chi, r.longest, r.pass), (3, 3, true));
        let r = verify_bondy(&build_t5()).unwrap();
        assert_eq!((r.chi, r.longest, r.pass), (5, 5, true));
        let r = verify_bondy(&Digraph::directed_cycle(5)).unwrap();
        assert_eq!((r.chi, r.longest, r.pass), (3, 5, true));
    }

    #[test]
    fn circuit_helpers() {
        let c = Circuit { vertices: vec![4, 7, 1, 3] };
        assert_eq!(c.path_ending_at(4, 2).unwrap(), vec![1, 3, 4]);
        assert_eq!(c.segment(1, 7).unwrap(), vec![1, 3, 4, 7]);
        assert_eq!(c.segment(7, 7).unwrap(), vec![7]);
        assert!(c.path_ending_at(4, 4).is_none());
        assert_eq!(c.normalized().vertices, vec![1, 3, 4, 7]);
    }
}
