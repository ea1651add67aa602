//! Exact chromatic number with coloring certificates.
//!
//! The solver brackets the chromatic number between a maximum-clique lower
//! bound and a greedy DSATUR upper bound, then binary-searches with an exact
//! backtracking k-colorability test (DSATUR branching order, new colors
//! opened one at a time to break color symmetry).

use serde::{Deserialize, Serialize};

use crate::graph::Induced;
use crate::{Digraph, Error, Result};

/// Colors `1..=k`, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexColoring {
    colors: Vec<usize>,
    k: usize,
}

impl VertexColoring {
    pub fn new(colors: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > k) {
            return Err(Error::InvalidArgument(format!("color {c} outside 1..={k}")));
        }
        Ok(VertexColoring { colors, k })
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    /// Size of the palette, an upper bound on the number of colors in use.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn distinct_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Proper iff no arc joins two vertices of the same color. Fails when
    /// the coloring does not cover every vertex of `d`.
    pub fn is_proper(&self, d: &Digraph) -> Result<bool> {
        if self.colors.len() != d.n() {
            return Err(Error::InvalidArgument(format!(
                "coloring covers {} vertices, digraph has {}",
                self.colors.len(),
                d.n()
            )));
        }
        Ok(d.arcs().all(|(u, v)| self.colors[u] != self.colors[v]))
    }

    /// First arc (in ascending order) whose endpoints share a color.
    pub fn first_conflict(&self, d: &Digraph) -> Option<(usize, usize)> {
        d.arcs().find(|&(u, v)| self.colors[u] == self.colors[v])
    }
}

/// Chromatic number with a witness coloring using exactly `chi` colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chromatic {
    pub chi: usize,
    pub witness: VertexColoring,
}

struct Adjacency {
    nbrs: Vec<Vec<usize>>,
}

impl Adjacency {
    fn of(d: &Digraph) -> Self {
        Adjacency { nbrs: (0..d.n()).map(|v| d.neighbors(v)).collect() }
    }

    fn n(&self) -> usize {
        self.nbrs.len()
    }
}

/// Greedy DSATUR; returns 0-based colors.
fn dsatur_greedy(adj: &Adjacency) -> Vec<usize> {
    let n = adj.n();
    let mut color = vec![usize::MAX; n];
    let mut seen: Vec<Vec<bool>> = vec![vec![false; n + 1]; n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (sat[v], adj.nbrs[v].len(), std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        let c = (0..=n).find(|&c| !seen[v][c]).expect("n+1 colors always suffice");
        color[v] = c;
        for &w in &adj.nbrs[v] {
            if !seen[w][c] {
                seen[w][c] = true;
                sat[w] += 1;
            }
        }
    }
    color
}

struct ColorSearch<'a> {
    adj: &'a Adjacency,
    k: usize,
    color: Vec<usize>,
    // count[v][c]: colored neighbors of v having color c
    count: Vec<Vec<u32>>,
    sat: Vec<usize>,
}

impl ColorSearch<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &w in &self.adj.nbrs[v] {
            if self.count[w][c] == 0 {
                self.sat[w] += 1;
            }
            self.count[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = usize::MAX;
        for &w in &self.adj.nbrs[v] {
            self.count[w][c] -= 1;
            if self.count[w][c] == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn solve(&mut self, colored: usize, used: usize) -> bool {
        let n = self.adj.n();
        if colored == n {
            return true;
        }
        let v = (0..n)
            .filter(|&v| self.color[v] == usize::MAX)
            .max_by_key(|&v| (self.sat[v], self.adj.nbrs[v].len(), std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        if self.sat[v] >= self.k {
            return false;
        }
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.count[v][c] == 0 {
                self.assign(v, c);
                if self.solve(colored + 1, used.max(c + 1)) {
                    return true;
                }
                self.unassign(v, c);
            }
        }
        false
    }
}

fn colorable(adj: &Adjacency, k: usize) -> Option<Vec<usize>> {
    let n = adj.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut s = ColorSearch {
        adj,
        k,
        color: vec![usize::MAX; n],
        count: vec![vec![0; k]; n],
        sat: vec![0; n],
    };
    s.solve(0, 0).then_some(s.color)
}

/// Size of a maximum clique of the underlying graph (exact for n <= 64,
/// greedy otherwise).
pub fn clique_number(d: &Digraph) -> usize {
    if d.n() == 0 {
        return 0;
    }
    if d.n() > 64 {
        let adj = Adjacency::of(d);
        let mut order: Vec<usize> = (0..d.n()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(adj.nbrs[v].len()));
        let mut clique: Vec<usize> = Vec::new();
        for v in order {
            if clique.iter().all(|&u| d.adjacent(u, v)) {
                clique.push(v);
            }
        }
        return clique.len();
    }
    let rows = d.adjacency_masks();
    fn expand(rows: &[u64], size: usize, mut cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        while cand != 0 {
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= !(1 << v);
            expand(rows, size + 1, cand & rows[v], best);
        }
    }
    let mut best = 0;
    let all = if d.n() == 64 { u64::MAX } else { (1u64 << d.n()) - 1 };
    expand(&rows, 0, all, &mut best);
    best
}

/// True iff the underlying graph has a proper coloring with `k` colors.
pub fn is_k_colorable(d: &Digraph, k: usize) -> bool {
    colorable(&Adjacency::of(d), k).is_some()
}

/// A proper coloring with at most `k` colors, if one exists.
pub fn find_k_coloring(d: &Digraph, k: usize) -> Option<VertexColoring> {
    colorable(&Adjacency::of(d), k)
        .map(|c| VertexColoring { colors: c.into_iter().map(|x| x + 1).collect(), k })
}

/// Exact chromatic number. The empty digraph has chromatic number 0.
pub fn chromatic_number(d: &Digraph) -> Chromatic {
    let adj = Adjacency::of(d);
    if d.n() == 0 {
        return Chromatic { chi: 0, witness: VertexColoring { colors: Vec::new(), k: 0 } };
    }
    let mut best = dsatur_greedy(&adj);
    let mut hi = best.iter().max().map_or(0, |&c| c + 1);
    let mut lo = clique_number(d).max(1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match colorable(&adj, mid) {
            Some(c) => {
                best = c;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    Chromatic {
        chi: hi,
        witness: VertexColoring { colors: best.into_iter().map(|c| c + 1).collect(), k: hi },
    }
}

pub fn chi(d: &Digraph) -> usize {
    chromatic_number(d).chi
}

/// Shrinks `d` to an induced subdigraph that is `k`-critical.
///
/// Vertices are scanned in ascending id; a vertex is dropped whenever the
/// rest still needs `k` colors. Passes repeat until nothing changes. The
/// result has chromatic number exactly `k` because a single deletion lowers
/// the chromatic number by at most one. Criticality is re-checked before
/// returning.
pub fn k_critical_subdigraph(d: &Digraph, k: usize) -> Result<Induced> {
    if k == 0 || chi(d) < k {
        return Err(Error::Precondition(format!("chromatic number is below {k}")));
    }
    let mut keep: Vec<usize> = (0..d.n()).collect();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < keep.len() {
            let mut trial = keep.clone();
            trial.remove(i);
            if !is_k_colorable(&d.induced(&trial)?.digraph, k - 1) {
                keep = trial;
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }
    let critical = d.induced(&keep)?;
    let h = &critical.digraph;
    let drops = (0..h.n()).all(|v| {
        let rest: Vec<usize> = (0..h.n()).filter(|&x| x != v).collect();
        h.induced(&rest).map(|r| chi(&r.digraph) == k - 1).unwrap_or(false)
    });
    if chi(h) != k || !drops {
        return Err(Error::InternalInconsistency(format!("shrunk subdigraph is not {k}-critical")));
    }
    Ok(critical)
}
