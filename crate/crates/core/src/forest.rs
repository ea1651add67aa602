//! Maximal spanning out-forests.
//!
//! An out-forest `F` spanning `D` is maximal when every arc `x -> y` of `D`
//! with `level(x) >= level(y)` has `y` on the forest path ending at `x`.
//! Starting from any spanning out-forest, elementary improvements (re-hang
//! `y` under `x` for a violating arc) reach a maximal one, its maximal
//! closure. Every level class of a maximal forest is a stable set, which is
//! what makes the level-based colorings below work.

use serde::Serialize;

use crate::coloring::{chi, VertexColoring};
use crate::paths::{BlockPattern, DirectedPath, PathEmbedding};
use crate::{Digraph, Error, Result};

/// A spanning out-forest of some host digraph. Levels start at 1 for roots.
#[derive(Clone, Debug, Serialize)]
pub struct OutForest {
    parent: Vec<Option<usize>>,
    level: Vec<usize>,
    #[serde(skip)]
    children: Vec<Vec<usize>>,
}

impl PartialEq for OutForest {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent
    }
}

impl Eq for OutForest {}

impl OutForest {
    /// The arcless spanning forest: every vertex is a root of level 1.
    pub fn empty(n: usize) -> Self {
        OutForest { parent: vec![None; n], level: vec![1; n], children: vec![Vec::new(); n] }
    }

    /// Builds a forest from parent links, checking that every link is an arc
    /// of `host` and that the links contain no cycle.
    pub fn from_parents(host: &Digraph, parent: Vec<Option<usize>>) -> Result<Self> {
        let n = host.n();
        if parent.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} parent entries for {} vertices",
                parent.len(),
                n
            )));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(u) = *p {
                if !host.has_arc(u, v) {
                    return Err(Error::InvalidArgument(format!("forest arc {u} -> {v} not in host")));
                }
                children[u].push(v);
            }
        }
        let mut level = vec![0; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        for &r in &stack {
            level[r] = 1;
        }
        let mut reached = stack.len();
        while let Some(u) = stack.pop() {
            for &c in &children[u] {
                level[c] = level[u] + 1;
                reached += 1;
                stack.push(c);
            }
        }
        if reached != n {
            return Err(Error::InvalidArgument("parent links contain a cycle".into()));
        }
        Ok(OutForest { parent, level, children })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn levels(&self) -> &[usize] {
        &self.level
    }

    pub fn max_level(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// `L_i`: vertices of level `i`, ascending.
    pub fn level_set(&self, i: usize) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.level[v] == i).collect()
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn is_forest_arc(&self, u: usize, v: usize) -> bool {
        self.parent[v] == Some(u)
    }

    /// `P_v`: the forest path from the root of `v`'s tree down to `v`.
    pub fn path_to(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// The last `arcs + 1` vertices of `P_v`, i.e. the forest path with
    /// `arcs` arcs ending at `v`. `None` if `v` is too shallow.
    pub fn path_suffix(&self, v: usize, arcs: usize) -> Option<Vec<usize>> {
        if self.level[v] < arcs + 1 {
            return None;
        }
        let path = self.path_to(v);
        Some(path[path.len() - arcs - 1..].to_vec())
    }

    /// True iff `a` lies on `P_v` (every vertex is its own ancestor).
    pub fn is_ancestor(&self, a: usize, v: usize) -> bool {
        let mut cur = Some(v);
        while let Some(x) = cur {
            if x == a {
                return true;
            }
            if self.level[x] <= self.level[a] {
                return false;
            }
            cur = self.parent[x];
        }
        false
    }

    /// `T_v(F)`: `v` and all its descendants, ascending.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.children[out[i]]);
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// First arc `x -> y` (ascending order) with `level(x) >= level(y)` and
    /// `y` not on `P_x`.
    pub fn violating_arc(&self, host: &Digraph) -> Option<(usize, usize)> {
        host.arcs()
            .find(|&(x, y)| self.level[x] >= self.level[y] && !self.is_ancestor(y, x))
    }

    pub fn is_maximal(&self, host: &Digraph) -> bool {
        self.violating_arc(host).is_none()
    }

    /// Re-hangs `y` (with its subtree) under `x`. The caller guarantees `y`
    /// is not an ancestor of `x`.
    fn improve(&mut self, x: usize, y: usize) {
        if let Some(old) = self.parent[y] {
            self.children[old].retain(|&c| c != y);
        }
        self.parent[y] = Some(x);
        self.children[x].push(y);
        let delta = self.level[x] + 1 - self.level[y];
        let mut stack = vec![y];
        while let Some(u) = stack.pop() {
            self.level[u] += delta;
            stack.extend_from_slice(&self.children[u]);
        }
    }

    /// Maximal closure of `start` (the arcless forest when `None`).
    pub fn maximal_closure(host: &Digraph, start: Option<OutForest>) -> Result<OutForest> {
        Self::maximal_closure_with(host, start, |_, _| {})
    }

    /// Like [`OutForest::maximal_closure`], calling `observe(forest, arc)`
    /// after every elementary improvement.
    pub fn maximal_closure_with(
        host: &Digraph,
        start: Option<OutForest>,
        mut observe: impl FnMut(&OutForest, (usize, usize)),
    ) -> Result<OutForest> {
        let mut f = match start {
            None => OutForest::empty(host.n()),
            Some(f) => {
                // Re-validate: the caller's forest must live in this host.
                OutForest::from_parents(host, f.parent)?
            }
        };
        while let Some((x, y)) = f.violating_arc(host) {
            f.improve(x, y);
            observe(&f, (x, y));
        }
        Ok(f)
    }

    /// The forest as a digraph on the same vertex set.
    pub fn as_digraph(&self) -> Digraph {
        let arcs = (0..self.n()).filter_map(|v| self.parent[v].map(|u| (u, v)));
        Digraph::new(self.n(), arcs, true).expect("forest arcs form an oriented digraph")
    }
}

/// A longest forest path of a maximal closure. Its order is at least the
/// chromatic number, since the level classes of a maximal forest are stable
/// sets that cover every vertex.
pub fn gallai_roy_path(d: &Digraph) -> DirectedPath {
    if d.n() == 0 {
        return DirectedPath { vertices: Vec::new() };
    }
    let f = OutForest::maximal_closure(d, None).expect("empty start forest is valid");
    let top = (0..d.n()).max_by_key(|&v| (f.level(v), std::cmp::Reverse(v))).expect("n >= 1");
    DirectedPath { vertices: f.path_to(top) }
}

/// Level-based `(k + l)`-coloring: level `i < k` gets color `i`, level
/// `i >= k` gets the unique `j` in `k..=k+l` with `j = i (mod l + 1)`.
pub fn canonical_coloring(f: &OutForest, k: usize, l: usize) -> Result<VertexColoring> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("k and l must be >= 1".into()));
    }
    let colors = f
        .levels()
        .iter()
        .map(|&i| if i < k { i } else { k + (i - k) % (l + 1) })
        .collect();
    VertexColoring::new(colors, k + l)
}

/// Assembles a `P(k, l)` from an arc `v -> w` of `host` between two levels
/// of the maximal forest `f`, when the levels are far enough apart.
///
/// With `i = level(v)` and `j = level(w)`:
/// * if `k <= i < j - l`: forest path with `k - 1` arcs into `v`, the arc
///   `v -> w`, then back up `l` forest arcs from `w`;
/// * if `k < j <= i - l`: forest path with `k` arcs into `w`, then back
///   along `v -> w` and `l - 1` forest arcs above `v`.
pub fn lemma31_path(host: &Digraph, f: &OutForest, arc: (usize, usize), k: usize, l: usize) -> Result<PathEmbedding> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("k and l must be >= 1".into()));
    }
    let (v, w) = arc;
    if !host.has_arc(v, w) {
        return Err(Error::InvalidArgument(format!("{v} -> {w} is not an arc")));
    }
    let (i, j) = (f.level(v), f.level(w));
    let vertices = if k <= i && i + l < j {
        let mut left = f.path_suffix(v, k - 1).expect("level(v) >= k");
        let mut right = f.path_suffix(w, l).expect("level(w) > l");
        right.pop();
        right.reverse();
        left.push(w);
        left.extend(right);
        left
    } else if k < j && j + l <= i {
        let mut left = f.path_suffix(w, k).expect("level(w) > k");
        let mut right = f.path_suffix(v, l - 1).expect("level(v) >= l");
        right.reverse();
        left.extend(right);
        left
    } else {
        return Err(Error::Precondition(format!(
            "levels {i} -> {j} satisfy neither k <= i < j - l nor k < j <= i - l for k={k}, l={l}"
        )));
    };
    let p = PathEmbedding { vertices, pattern: BlockPattern::two_block(k, l)? };
    p.validate(host).map_err(Error::InternalInconsistency)?;
    Ok(p)
}

/// Finds a `P(k, l)` in a digraph of chromatic number at least `k + l + 2`.
///
/// Colors a maximal closure with levels `1..=k` by index and higher levels
/// modulo `l + 1` (`k + l + 1` colors). That coloring cannot be proper, and
/// its first conflicting arc satisfies one of the level conditions of
/// [`lemma31_path`].
pub fn corollary32_find(d: &Digraph, k: usize, l: usize) -> Result<PathEmbedding> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("k and l must be >= 1".into()));
    }
    let c = chi(d);
    if c < k + l + 2 {
        return Err(Error::Precondition(format!(
            "chromatic number {c} is below k + l + 2 = {}",
            k + l + 2
        )));
    }
    let f = OutForest::maximal_closure(d, None)?;
    let coloring = canonical_coloring(&f, k + 1, l)?;
    let arc = coloring.first_conflict(d).ok_or_else(|| {
        Error::InternalInconsistency(format!("a {}-coloring of a {c}-chromatic digraph is proper", k + l + 1))
    })?;
    lemma31_path(d, &f, arc, k, l).map_err(|e| match e {
        Error::Precondition(m) => Error::InternalInconsistency(m),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::find_pattern;

    #[test]
    fn closure_of_directed_path() {
        let p = Digraph::directed_path(3);
        let f = OutForest::maximal_closure(&p, None).unwrap();
        assert_eq!(f.levels(), &[1, 2, 3]);
        assert_eq!(f.parents(), &[None, Some(0), Some(1)]);
    }

    #[test]
    fn closure_of_edgeless() {
        let f = OutForest::maximal_closure(&Digraph::edgeless(4), None).unwrap();
        assert_eq!(f.levels(), &[1, 1, 1, 1]);
    }

    #[test]
    fn closure_of_triangle_leaves_one_arc_unused() {
        let c3 = Digraph::directed_cycle(3);
        let f = OutForest::maximal_closure(&c3, None).unwrap();
        let mut levels = f.levels().to_vec();
        levels.sort_unstable();
        assert_eq!(levels, vec![1, 2, 3]);
        let unused: Vec<_> = c3.arcs().filter(|&(u, v)| !f.is_forest_arc(u, v)).collect();
        assert_eq!(unused.len(), 1);
        let (x, y) = unused[0];
        assert!(f.is_ancestor(y, x));
        assert!(f.is_maximal(&c3));
    }

    #[test]
    fn from_parents_rejects_bad_links() {
        let c3 = Digraph::directed_cycle(3);
        assert!(OutForest::from_parents(&c3, vec![Some(2), Some(0), Some(1)]).is_err());
        assert!(OutForest::from_parents(&c3, vec![Some(1), None, None]).is_err());
        assert!(OutForest::maximal_closure(&c3, Some(OutForest::empty(2))).is_err());
    }

    #[test]
    fn gallai_roy_examples() {
        assert_eq!(gallai_roy_path(&Digraph::transitive_tournament(4)).vertices, vec![0, 1, 2, 3]);
        assert_eq!(gallai_roy_path(&Digraph::edgeless(3)).order(), 1);
        let c5 = Digraph::directed_cycle(5);
        let p = gallai_roy_path(&c5);
        assert!(p.validate(&c5).is_ok());
        assert!(p.order() >= 3);
    }

    #[test]
    fn canonical_coloring_rule() {
        let p = Digraph::directed_path(5);
        let f = OutForest::maximal_closure(&p, None).unwrap();
        assert_eq!(canonical_coloring(&f, 2, 2).unwrap().colors(), &[1, 2, 3, 4, 2]);
        let flat = OutForest::empty(3);
        assert_eq!(canonical_coloring(&flat, 3, 1).unwrap().colors(), &[1, 1, 1]);
        // k = 1: level i -> j in 1..=1+l with j = i mod (l + 1)
        assert_eq!(canonical_coloring(&f, 1, 2).unwrap().colors(), &[1, 2, 3, 1, 2]);
    }

    #[test]
    fn lemma31_case_one_two_chains() {
        // chain 0->1->2->3 and chain 4->5->6->7, host arc 1 -> 7.
        let d = Digraph::from_arcs(8, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7), (1, 7)]).unwrap();
        let f = OutForest::from_parents(&d, vec![None, Some(0), Some(1), Some(2), None, Some(4), Some(5), Some(6)])
            .unwrap();
        assert!(f.is_maximal(&d));
        let p = lemma31_path(&d, &f, (1, 7), 1, 1).unwrap();
        assert_eq!(p.vertices, vec![1, 7, 6]);
        // the brute-force oracle agrees such a path exists
        assert!(find_pattern(&d, &BlockPattern::two_block(1, 1).unwrap()).is_some());
    }

    #[test]
    fn lemma31_precondition_gate() {
        // chain 0->1->2 plus 2->0; i = 3, j = 1, k = 1: k < j fails.
        let d = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let f = OutForest::from_parents(&d, vec![None, Some(0), Some(1)]).unwrap();
        assert!(matches!(lemma31_path(&d, &f, (2, 0), 1, 1), Err(Error::Precondition(_))));
        assert!(matches!(lemma31_path(&d, &f, (2, 0), 0, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn lemma31_two_two_on_two_chains() {
        // chain a: 0->1, chain b: 2->3->4->5->6; arc 1 (level 2) -> 6 (level 5)
        let d = Digraph::from_arcs(7, &[(0, 1), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)]).unwrap();
        let f = OutForest::maximal_closure(&d, None).unwrap();
        assert_eq!((f.level(1), f.level(6)), (2, 5));
        let p = lemma31_path(&d, &f, (1, 6), 2, 2).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 6, 5, 4]);
    }

    #[test]
    fn corollary32_examples() {
        let tt5 = Digraph::transitive_tournament(5);
        let p = corollary32_find(&tt5, 1, 2).unwrap();
        assert!(p.validate(&tt5).is_ok());
        let tt6 = Digraph::transitive_tournament(6);
        let p = corollary32_find(&tt6, 2, 2).unwrap();
        assert!(p.validate(&tt6).is_ok());
        assert!(matches!(
            corollary32_find(&Digraph::directed_cycle(5), 1, 1),
            Err(Error::Precondition(_))
        ));
    }
}
