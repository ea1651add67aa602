//! Digraph container and the structural operations everything else builds on.

mod arclist;
mod canon;
mod dot;

use std::collections::BTreeSet;

pub use arclist::ParseError;
pub use canon::CanonicalForm;
pub use dot::DotStyle;

use crate::{Error, Result};

/// A finite digraph on vertices `0..n`.
///
/// Loops and duplicate arcs are never stored. When `oriented` is set the
/// digraph also has no digons, i.e. `(x, y)` present implies `(y, x)` absent.
/// Contraction produces digraphs with `oriented == false`; parallel arcs and
/// loops created by the contraction are collapsed and dropped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    arc_count: usize,
    oriented: bool,
}

/// Result of [`Digraph::induced`]: the subdigraph and, for each new vertex,
/// the vertex it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub digraph: Digraph,
    pub original: Vec<usize>,
}

impl Induced {
    pub fn to_original(&self, v: usize) -> usize {
        self.original[v]
    }

    /// Inverse map, `None` for vertices outside the induced set.
    pub fn from_original(&self, n_original: usize) -> Vec<Option<usize>> {
        let mut back = vec![None; n_original];
        for (new, &old) in self.original.iter().enumerate() {
            back[old] = Some(new);
        }
        back
    }
}

/// Result of [`Digraph::contract`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub digraph: Digraph,
    /// Image of every original vertex in the contracted digraph.
    pub image: Vec<usize>,
    /// Id of the vertex the contracted set collapsed into.
    pub merged: usize,
}

impl Contraction {
    /// Original vertices mapped to new vertex `v` (one vertex, or the whole
    /// contracted set for `merged`).
    pub fn preimage(&self, v: usize) -> Vec<usize> {
        (0..self.image.len()).filter(|&x| self.image[x] == v).collect()
    }
}

/// How [`Digraph::contract`] treats vertices that see the contracted set in
/// both directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractMode {
    /// Every outside vertex must have all its arcs to the set in one
    /// direction. The output keeps the input's `oriented` flag.
    Digraph,
    /// No precondition; the output may contain digons and is never oriented.
    Multigraph,
}

impl Digraph {
    /// Builds a digraph from an arc list. Fails on loops, duplicate arcs,
    /// out-of-range endpoints, and (when `oriented`) digons.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>, oriented: bool) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut arc_count = 0;
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            out[u].push(v);
            inc[v].push(u);
            arc_count += 1;
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
        }
        for (u, list) in out.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateArc(u, w[0]));
            }
        }
        let d = Digraph { n, out, inc, arc_count, oriented };
        if oriented {
            if let Some((u, v)) = d.arcs().find(|&(u, v)| u < v && d.has_arc(v, u)) {
                return Err(Error::Digon(u, v));
            }
        }
        Ok(d)
    }

    /// Oriented digraph from a slice of arcs.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, arcs.iter().copied(), true)
    }

    /// Builds a non-oriented digraph, silently collapsing duplicate arcs and
    /// dropping loops (multigraph semantics).
    pub fn multigraph(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let set: BTreeSet<(usize, usize)> = arcs.into_iter().filter(|&(u, v)| u != v).collect();
        Self::new(n, set, false)
    }

    pub fn edgeless(n: usize) -> Self {
        Self::new(n, std::iter::empty(), true).expect("edgeless digraph is valid")
    }

    /// Directed circuit `0 -> 1 -> ... -> n-1 -> 0`, `n >= 3`.
    pub fn directed_cycle(n: usize) -> Self {
        assert!(n >= 3, "an oriented circuit needs at least 3 vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)), true).expect("cycle is valid")
    }

    /// Directed path `0 -> 1 -> ... -> n-1`.
    pub fn directed_path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i)), true).expect("path is valid")
    }

    /// Transitive tournament with arcs `i -> j` for all `i < j`.
    pub fn transitive_tournament(n: usize) -> Self {
        let arcs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::new(n, arcs, true).expect("transitive tournament is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    /// All arcs in ascending `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].binary_search(&v).is_ok()
    }

    /// Adjacency in the underlying graph.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Neighborhood in the underlying graph, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut all: Vec<usize> = self.out[v].iter().chain(&self.inc[v]).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Degree in the underlying graph.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.n).map(|v| self.out_degree(v)).max().unwrap_or(0)
    }

    pub fn min_out_degree(&self) -> usize {
        (0..self.n).map(|v| self.out_degree(v)).min().unwrap_or(0)
    }

    pub fn max_in_degree(&self) -> usize {
        (0..self.n).map(|v| self.in_degree(v)).max().unwrap_or(0)
    }

    pub fn min_in_degree(&self) -> usize {
        (0..self.n).map(|v| self.in_degree(v)).min().unwrap_or(0)
    }

    /// Underlying-graph adjacency rows as bitmasks. Only valid for `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs n <= 64");
        let mut rows = vec![0u64; self.n];
        for (u, v) in self.arcs() {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        rows
    }

    /// True iff every unordered pair of distinct vertices carries exactly one
    /// arc.
    pub fn is_tournament(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.has_arc(u, v) != self.has_arc(v, u)))
    }

    fn normalize_set(&self, set: &[usize]) -> Result<Vec<usize>> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        Ok(s)
    }

    /// Induced subdigraph on `set`, relabeled `0..|set|` in ascending order of
    /// original id.
    pub fn induced(&self, set: &[usize]) -> Result<Induced> {
        let original = self.normalize_set(set)?;
        let mut back = vec![usize::MAX; self.n];
        for (i, &v) in original.iter().enumerate() {
            back[v] = i;
        }
        let arcs: Vec<(usize, usize)> = original
            .iter()
            .flat_map(|&u| self.out[u].iter().map(move |&v| (u, v)))
            .filter(|&(_, v)| back[v] != usize::MAX)
            .map(|(u, v)| (back[u], back[v]))
            .collect();
        let digraph = Digraph::new(original.len(), arcs, self.oriented)?;
        Ok(Induced { digraph, original })
    }

    /// `D - set`, i.e. the subdigraph induced by the complement of `set`.
    pub fn remove_vertices(&self, set: &[usize]) -> Result<Induced> {
        let removed = self.normalize_set(set)?;
        let keep: Vec<usize> = (0..self.n).filter(|v| removed.binary_search(v).is_err()).collect();
        self.induced(&keep)
    }

    /// Contracts `set` into a single vertex.
    ///
    /// Vertices outside the set keep their relative order; the merged vertex
    /// takes the slot of the smallest member of the set. Arcs inside the set
    /// disappear, arc directions are preserved, parallel arcs are collapsed.
    pub fn contract(&self, set: &[usize], mode: ContractMode) -> Result<Contraction> {
        let members = self.normalize_set(set)?;
        let Some(&first) = members.first() else {
            return Err(Error::EmptyContraction);
        };
        let mut inside = vec![false; self.n];
        for &v in &members {
            inside[v] = true;
        }
        if mode == ContractMode::Digraph {
            for v in (0..self.n).filter(|&v| !inside[v]) {
                let to = self.out[v].iter().any(|&x| inside[x]);
                let from = self.inc[v].iter().any(|&x| inside[x]);
                if to && from {
                    return Err(Error::NotContractable(v));
                }
            }
        }
        let mut image = vec![0; self.n];
        let mut next = 0;
        let mut merged = 0;
        for v in 0..self.n {
            if !inside[v] {
                image[v] = next;
                next += 1;
            } else if v == first {
                merged = next;
                next += 1;
            }
        }
        for v in 0..self.n {
            if inside[v] {
                image[v] = merged;
            }
        }
        let arcs = self.arcs().map(|(u, v)| (image[u], image[v]));
        let digraph = match mode {
            ContractMode::Digraph => {
                let set: BTreeSet<(usize, usize)> = arcs.filter(|(u, v)| u != v).collect();
                Digraph::new(next, set, self.oriented)?
            }
            ContractMode::Multigraph => Digraph::multigraph(next, arcs)?,
        };
        Ok(Contraction { digraph, image, merged })
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        Digraph::new(self.n, self.arcs().map(|(u, v)| (perm[u], perm[v])), self.oriented)
    }

    /// The digraph with every arc reversed.
    pub fn reverse(&self) -> Self {
        Digraph::new(self.n, self.arcs().map(|(u, v)| (v, u)), self.oriented)
            .expect("reversal preserves validity")
    }

    /// Adds an isolated vertex set and arcs; convenience for fixtures.
    pub fn with_extra(&self, extra_vertices: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        Digraph::new(
            self.n + extra_vertices,
            self.arcs().chain(arcs.iter().copied()),
            self.oriented,
        )
    }

    /// Connected in the underlying graph (the empty digraph counts as
    /// connected).
    pub fn is_weakly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.out[u].iter().chain(&self.inc[u]) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, oriented={}, arcs=[", self.n, self.oriented)?;
        for (i, (u, v)) in self.arcs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_arcs() {
        assert_eq!(Digraph::from_arcs(2, &[(0, 0)]), Err(Error::Loop(0)));
        assert_eq!(Digraph::from_arcs(2, &[(0, 1), (0, 1)]), Err(Error::DuplicateArc(0, 1)));
        assert_eq!(Digraph::from_arcs(2, &[(0, 1), (1, 0)]), Err(Error::Digon(0, 1)));
        assert_eq!(
            Digraph::from_arcs(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert!(Digraph::new(2, [(0, 1), (1, 0)], false).is_ok());
    }

    #[test]
    fn induced_on_cycle_keeps_one_arc() {
        let c3 = Digraph::directed_cycle(3);
        let sub = c3.induced(&[0, 1]).unwrap();
        assert_eq!(sub.digraph.arcs().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(sub.original, vec![0, 1]);
        let whole = c3.induced(&[2, 0, 1]).unwrap();
        assert_eq!(whole.digraph, c3);
        assert!(matches!(c3.induced(&[5]), Err(Error::VertexOutOfRange { vertex: 5, .. })));
    }

    #[test]
    fn contract_path_through_set() {
        let c4 = Digraph::directed_cycle(4);
        let c = c4.contract(&[1, 2], ContractMode::Digraph).unwrap();
        assert_eq!(c.merged, 1);
        assert_eq!(c.image, vec![0, 1, 1, 2]);
        assert_eq!(c.digraph, Digraph::directed_cycle(3));
    }

    #[test]
    fn contract_identity_and_full_collapse() {
        let c5 = Digraph::directed_cycle(5);
        let same = c5.contract(&[3], ContractMode::Digraph).unwrap();
        assert_eq!(same.digraph, c5);
        let all = c5.contract(&[0, 1, 2, 3, 4], ContractMode::Digraph).unwrap();
        assert_eq!(all.digraph.n(), 1);
        assert_eq!(all.digraph.arc_count(), 0);
        assert_eq!(c5.contract(&[], ContractMode::Digraph), Err(Error::EmptyContraction));
    }

    #[test]
    fn contract_rejects_two_way_vertex_in_digraph_mode() {
        // 0 -> 1 -> 2 -> 0 with H = {0, 1}: vertex 2 sees H both ways.
        let c3 = Digraph::directed_cycle(3);
        assert_eq!(c3.contract(&[0, 1], ContractMode::Digraph), Err(Error::NotContractable(2)));
        let multi = c3.contract(&[0, 1], ContractMode::Multigraph).unwrap();
        assert!(!multi.digraph.is_oriented());
        assert!(multi.digraph.has_arc(0, 1) && multi.digraph.has_arc(1, 0));
    }

    #[test]
    fn tournament_predicate() {
        assert!(Digraph::transitive_tournament(4).is_tournament());
        assert!(!Digraph::directed_cycle(4).is_tournament());
        assert!(Digraph::edgeless(1).is_tournament());
        let digon = Digraph::new(2, [(0, 1), (1, 0)], false).unwrap();
        assert!(!digon.is_tournament());
    }

    #[test]
    fn degree_queries() {
        let tt = Digraph::transitive_tournament(4);
        assert_eq!(tt.out_degree(0), 3);
        assert_eq!(tt.in_degree(3), 3);
        assert_eq!(tt.degree(2), 3);
        assert_eq!(tt.max_in_degree(), 3);
        assert_eq!(tt.min_out_degree(), 0);
    }
}
