//! Canonical labeling by equitable-partition refinement plus
//! individualization search, pruned with automorphisms found along the way.
//!
//! Exact for every input; fast enough for the n <= 10 digraphs enumerated by
//! the verification campaigns.

use std::fmt;

use super::Digraph;

/// Isomorphism-invariant label: two digraphs have equal forms iff they are
/// isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

type Partition = Vec<Vec<usize>>;

struct Search<'a> {
    d: &'a Digraph,
    first: Option<(Vec<u8>, Vec<usize>)>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

/// Splits cells by the number of out- and in-neighbors in every cell until
/// the partition is equitable. Cell order depends only on invariants, so the
/// refinement commutes with relabeling.
fn refine(d: &Digraph, mut cells: Partition) -> Partition {
    let n = d.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next: Partition = Vec::with_capacity(k);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; 2 * k];
                    for &w in d.out_neighbors(v) {
                        sig[2 * cell_of[w]] += 1;
                    }
                    for &w in d.in_neighbors(v) {
                        sig[2 * cell_of[w] + 1] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == k {
            return next;
        }
        cells = next;
    }
}

fn certificate(d: &Digraph, position: &[usize]) -> Vec<u8> {
    let n = d.n();
    let mut bits = vec![0u8; 4 + (n * n).div_ceil(8)];
    bits[..4].copy_from_slice(&(n as u32).to_be_bytes());
    for (u, v) in d.arcs() {
        let idx = position[u] * n + position[v];
        bits[4 + idx / 8] |= 0x80 >> (idx % 8);
    }
    bits
}

/// Orbit representative of `v` under the automorphisms that fix every vertex
/// of `prefix`.
fn orbit_root(gens: &[Vec<usize>], prefix: &[usize], n: usize, v: usize) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens.iter().filter(|g| prefix.iter().all(|&x| g[x] == x)) {
        for x in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g[x]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    find(&mut parent, v)
}

impl Search<'_> {
    fn leaf(&mut self, cells: &Partition) {
        let n = self.d.n();
        let mut position = vec![0; n];
        for (i, cell) in cells.iter().enumerate() {
            position[cell[0]] = i;
        }
        let cert = certificate(self.d, &position);
        for (c, p) in self.first.iter().chain(self.best.iter()) {
            if *c == cert {
                // position maps v to slot; p^{-1}(position(v)) is an automorphism.
                let mut inv = vec![0; n];
                for (v, &slot) in p.iter().enumerate() {
                    inv[slot] = v;
                }
                let gamma: Vec<usize> = (0..n).map(|v| inv[position[v]]).collect();
                if gamma.iter().enumerate().any(|(i, &g)| i != g) && !self.automorphisms.contains(&gamma) {
                    self.automorphisms.push(gamma);
                }
                break;
            }
        }
        if self.first.is_none() {
            self.first = Some((cert.clone(), position.clone()));
        }
        if self.best.as_ref().is_none_or(|(b, _)| cert < *b) {
            self.best = Some((cert, position));
        }
    }

    fn descend(&mut self, cells: Partition, prefix: &mut Vec<usize>) {
        let cells = refine(self.d, cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut explored_roots: Vec<usize> = Vec::new();
        for v in candidates {
            let root = orbit_root(&self.automorphisms, prefix, self.d.n(), v);
            let explored_same_orbit = explored_roots
                .iter()
                .any(|&r| orbit_root(&self.automorphisms, prefix, self.d.n(), r) == root);
            if explored_same_orbit {
                continue;
            }
            explored_roots.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend(cells[..target].iter().cloned());
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&x| x != v).collect());
            child.extend(cells[target + 1..].iter().cloned());
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }
}

impl Digraph {
    /// Permutation `v -> position` taking this digraph to its canonical
    /// relabeling.
    pub fn canonical_labeling(&self) -> Vec<usize> {
        if self.n() == 0 {
            return Vec::new();
        }
        let mut search = Search { d: self, first: None, best: None, automorphisms: Vec::new() };
        search.descend(vec![(0..self.n()).collect()], &mut Vec::new());
        search.best.expect("search visits at least one leaf").1
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let position = self.canonical_labeling();
        CanonicalForm(certificate(self, &position))
    }

    /// Isomorphism test through canonical forms.
    pub fn is_isomorphic(&self, other: &Digraph) -> bool {
        self.n() == other.n()
            && self.arc_count() == other.arc_count()
            && self.canonical_form() == other.canonical_form()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_triangle_has_same_form() {
        let c3 = Digraph::directed_cycle(3);
        let rotated = c3.relabel(&[1, 2, 0]).unwrap();
        assert_eq!(c3.canonical_form(), rotated.canonical_form());
    }

    #[test]
    fn cyclic_and_transitive_triangles_differ() {
        let c3 = Digraph::directed_cycle(3);
        let tt3 = Digraph::transitive_tournament(3);
        assert_ne!(c3.canonical_form(), tt3.canonical_form());
    }

    #[test]
    fn edgeless_graph_is_fast_and_unique() {
        // 12! leaves without automorphism pruning.
        let e = Digraph::edgeless(12);
        assert_eq!(e.canonical_form(), e.relabel(&[11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0]).unwrap().canonical_form());
    }

    #[test]
    fn path_orientation_matters() {
        let a = Digraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Digraph::from_arcs(3, &[(1, 0), (1, 2)]).unwrap();
        let c = Digraph::from_arcs(3, &[(0, 1), (2, 1)]).unwrap();
        assert_ne!(a.canonical_form(), b.canonical_form());
        assert_ne!(b.canonical_form(), c.canonical_form());
        assert_eq!(b.reverse().canonical_form(), c.canonical_form());
    }
}
