//! Certified search for two-block paths `P(k, l)`.
//!
//! [`find_two_block_certified`] never answers "no" without proof: it returns
//! either an embedding of `P(k, l)` or a proper coloring with `k + l`
//! colors. The search follows a level-coloring argument on maximal
//! out-forests. Whenever the argument needs the path to be absent, the
//! corresponding path is assembled instead, and if the argument runs to the
//! end, its coloring is built and checked.
//!
//! Paths are assembled as forks: two directed paths ending at a shared
//! pivot, disjoint otherwise. The first contributes the `k` forward arcs,
//! the second (read backwards) the `l` backward arcs.

use serde::Serialize;

use super::{BlockPattern, PathEmbedding};
use crate::circuits::{contract_circuit, k_good_circuit, Circuit};
use crate::coloring::{chi, find_k_coloring, VertexColoring};
use crate::forest::{canonical_coloring, lemma31_path, OutForest};
use crate::{Digraph, Error, Result};

/// Either witness of the two-block search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertifiedOutcome {
    Embedding(PathEmbedding),
    Coloring(VertexColoring),
}

impl CertifiedOutcome {
    pub fn embedding(&self) -> Option<&PathEmbedding> {
        match self {
            CertifiedOutcome::Embedding(p) => Some(p),
            CertifiedOutcome::Coloring(_) => None,
        }
    }

    pub fn coloring(&self) -> Option<&VertexColoring> {
        match self {
            CertifiedOutcome::Coloring(c) => Some(c),
            CertifiedOutcome::Embedding(_) => None,
        }
    }

    /// Re-checks the witness: an embedding of exactly `P(k, l)`, or a proper
    /// coloring of `d` within `k + l` colors.
    pub fn validate(&self, d: &Digraph, k: usize, l: usize) -> std::result::Result<(), String> {
        match self {
            CertifiedOutcome::Embedding(p) => {
                let want = BlockPattern::two_block(k, l).map_err(|e| e.to_string())?;
                if p.pattern != want {
                    return Err(format!("embedding of {} where {want} was asked", p.pattern));
                }
                p.validate(d)
            }
            CertifiedOutcome::Coloring(c) => {
                if c.k() > k + l {
                    return Err(format!("palette of {} colors exceeds {}", c.k(), k + l));
                }
                match c.is_proper(d) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err("coloring is not proper".into()),
                    Err(e) => Err(e.to_string()),
                }
            }
        }
    }
}

/// Which step of the search produced the outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Conflict arc going to a deeper level.
    LevelGapForward,
    /// Conflict arc going back to a level above `k`.
    LevelGapBackward,
    /// A removed circuit has no vertex on level `k`.
    CircuitMissesLevel,
    /// The forest parent of a circuit's level-`k` vertex sank below `k - 1`.
    HookRaised,
    ArcBetweenCircuits,
    /// A circuit vertex is adjacent to a forest vertex deeper than `k`.
    CircuitNearDeepLevel,
    /// A level-`k` forest vertex sends an arc into a circuit.
    CircuitFedByLevelK,
    BadVertexTwoCircuits,
    BadVertexManyInNeighbors,
    ArcEntersSubtree,
    ArcLeavesSubtree,
    /// No extraction applied; the outcome is the assembled coloring.
    Coloring,
}

/// Outcome plus a trace of how it was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub outcome: CertifiedOutcome,
    pub rule: Rule,
    /// Circuits removed before the outcome was reached, in removal order.
    pub circuits: Vec<Circuit>,
}

fn internal(e: Error) -> Error {
    match e {
        Error::Precondition(m) | Error::InvalidArgument(m) => Error::InternalInconsistency(m),
        Error::NotStronglyConnected => Error::InternalInconsistency("circuit subdigraph is not strongly connected".into()),
        other => other,
    }
}

fn broken(msg: impl Into<String>) -> Error {
    Error::InternalInconsistency(msg.into())
}

/// Joins two directed paths ending at the same pivot into `P(k, l)`: the
/// last `k` arcs of `left`, then the last `l` arcs of `right` walked
/// backwards. The result is re-checked against `d`.
fn fork(d: &Digraph, left: &[usize], right: &[usize], k: usize, l: usize) -> Result<PathEmbedding> {
    if left.len() < k + 1 || right.len() < l + 1 || left.last() != right.last() {
        return Err(broken(format!("cannot join {left:?} and {right:?} into P({k},{l})")));
    }
    let mut vertices = left[left.len() - k - 1..].to_vec();
    vertices.extend(right[right.len() - l - 1..right.len() - 1].iter().rev());
    let p = PathEmbedding { vertices, pattern: BlockPattern::two_block(k, l)? };
    p.validate(d).map_err(|m| broken(format!("assembled path fails the checker: {m}")))?;
    Ok(p)
}

/// The digraph still in play, with its maximal forest, in local labels.
struct Stage {
    host: Digraph,
    orig: Vec<usize>,
    local: Vec<Option<usize>>,
    forest: OutForest,
}

impl Stage {
    /// Maximal closure on `d[active]`, starting from the parent links given
    /// by `parent` (in original labels) that survive inside `active`.
    fn build(d: &Digraph, active: &[usize], parent: impl Fn(usize) -> Option<usize>) -> Result<Self> {
        let induced = d.induced(active)?;
        let local = induced.from_original(d.n());
        let start: Vec<Option<usize>> =
            induced.original.iter().map(|&v| parent(v).and_then(|p| local[p])).collect();
        let start = OutForest::from_parents(&induced.digraph, start)?;
        let forest = OutForest::maximal_closure(&induced.digraph, Some(start))?;
        Ok(Stage { host: induced.digraph, orig: induced.original, local, forest })
    }

    fn contains(&self, v: usize) -> bool {
        self.local[v].is_some()
    }

    fn loc(&self, v: usize) -> usize {
        self.local[v].expect("vertex is in the current stage")
    }

    fn level(&self, v: usize) -> usize {
        self.forest.level(self.loc(v))
    }

    fn parent(&self, v: usize) -> Option<usize> {
        self.local[v].and_then(|x| self.forest.parent(x)).map(|p| self.orig[p])
    }

    fn path_to(&self, v: usize) -> Vec<usize> {
        self.forest.path_to(self.loc(v)).into_iter().map(|x| self.orig[x]).collect()
    }

    fn path_suffix(&self, v: usize, arcs: usize) -> Result<Vec<usize>> {
        self.forest
            .path_suffix(self.loc(v), arcs)
            .map(|p| p.into_iter().map(|x| self.orig[x]).collect())
            .ok_or_else(|| broken(format!("vertex {v} has no forest path with {arcs} arcs")))
    }

    fn subtree(&self, v: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.forest.subtree(self.loc(v)).into_iter().map(|x| self.orig[x]).collect();
        s.sort_unstable();
        s
    }

    fn canonical_color(&self, v: usize, k: usize, l: usize) -> usize {
        let i = self.level(v);
        if i < k {
            i
        } else {
            k + (i - k) % (l + 1)
        }
    }
}

/// An `(l + 1)`-good circuit inside `closed`: `closed` itself when its
/// vertices induce an `(l + 1)`-colorable subdigraph, a shortest long
/// enough circuit of that subdigraph otherwise.
fn good_subcircuit(d: &Digraph, closed: Circuit, size: usize) -> Result<Circuit> {
    let induced = d.induced(&closed.vertices)?;
    if chi(&induced.digraph) <= size {
        return Ok(closed);
    }
    let c = k_good_circuit(&induced.digraph, size).map_err(internal)?;
    Ok(Circuit { vertices: c.vertices.iter().map(|&x| induced.original[x]).collect() })
}

/// Either an embedding of `P(k, l)` in `d` or a proper coloring of `d` with
/// `k + l` colors. Requires `k, l >= 1` and `k + l >= 3`.
///
/// When `chi(d) >= k + l + 1` the result is always an embedding.
pub fn find_two_block_certified(d: &Digraph, k: usize, l: usize) -> Result<CertifiedOutcome> {
    certify_two_block(d, k, l).map(|c| c.outcome)
}

/// [`find_two_block_certified`] with the trace of the search.
pub fn certify_two_block(d: &Digraph, k: usize, l: usize) -> Result<Certification> {
    if k == 0 || l == 0 || k + l < 3 {
        return Err(Error::InvalidArgument(format!("need k, l >= 1 and k + l >= 3, got k={k}, l={l}")));
    }
    if k > l {
        let mut c = certify_ordered(d, l, k)?;
        if let CertifiedOutcome::Embedding(p) = &c.outcome {
            c.outcome = CertifiedOutcome::Embedding(p.reversed());
        }
        return Ok(c);
    }
    certify_ordered(d, k, l)
}

struct Removed {
    circuit: Circuit,
    /// A vertex of the circuit on level `k` when it was removed.
    anchor: usize,
    /// Forest parent of `anchor` at that time, on level `k - 1` (if `k >= 2`).
    hook: Option<usize>,
}

fn certify_ordered(d: &Digraph, k: usize, l: usize) -> Result<Certification> {
    let n = d.n();
    let mut removed: Vec<Removed> = Vec::new();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let all: Vec<usize> = (0..n).collect();
    let mut stage = Stage::build(d, &all, |_| None)?;

    let found = |rule: Rule, p: PathEmbedding, removed: &[Removed]| -> Result<Certification> {
        Ok(Certification {
            outcome: CertifiedOutcome::Embedding(p),
            rule,
            circuits: removed.iter().map(|r| r.circuit.clone()).collect(),
        })
    };

    loop {
        let coloring = canonical_coloring(&stage.forest, k, l)?;
        let Some((lv, lw)) = coloring.first_conflict(&stage.host) else {
            break;
        };
        let (v, w) = (stage.orig[lv], stage.orig[lw]);
        let (i, j) = (stage.level(v), stage.level(w));
        if i < j || j > k {
            let rule = if i < j { Rule::LevelGapForward } else { Rule::LevelGapBackward };
            let p = lemma31_path(&stage.host, &stage.forest, (lv, lw), k, l).map_err(internal)?;
            let p = p.mapped(|x| stage.orig[x]);
            p.validate(d).map_err(broken)?;
            return found(rule, p, &removed);
        }
        if j != k || !stage.forest.is_ancestor(lw, lv) {
            return Err(broken(format!("conflict arc {v} -> {w} on levels {i} -> {j} fits no case")));
        }

        let closed = Circuit { vertices: stage.path_suffix(v, i - j)? };
        let circuit = good_subcircuit(d, closed, l + 1)?;

        let Some(anchor) = circuit.vertices.iter().copied().filter(|&x| stage.level(x) == k).min() else {
            // Every circuit vertex is deeper than k: a forest path reaching
            // the circuit supplies the k forward arcs.
            let path = stage.path_to(circuit.vertices[0]);
            let entry = path.iter().position(|&x| circuit.contains(x)).expect("path ends on the circuit");
            let right = circuit.path_ending_at(path[entry], l).ok_or_else(|| broken("circuit too short"))?;
            let p = fork(d, &path[..=entry], &right, k, l)?;
            return found(Rule::CircuitMissesLevel, p, &removed);
        };
        let hook = if k >= 2 {
            Some(stage.parent(anchor).ok_or_else(|| broken(format!("level-{k} vertex {anchor} has no parent")))?)
        } else {
            None
        };
        for &x in &circuit.vertices {
            owner[x] = Some(removed.len());
        }
        removed.push(Removed { circuit, anchor, hook });

        let active: Vec<usize> = (0..n).filter(|&x| owner[x].is_none()).collect();
        stage = Stage::build(d, &active, |x| stage.parent(x))?;

        for r in &removed {
            let Some(u) = r.hook else { continue };
            if !stage.contains(u) {
                return Err(broken(format!("hook vertex {u} was removed")));
            }
            let lev = stage.level(u);
            if lev > k - 1 {
                let mut left = stage.path_suffix(u, k - 1)?;
                left.push(r.anchor);
                let right = r.circuit.path_ending_at(r.anchor, l).ok_or_else(|| broken("circuit too short"))?;
                let p = fork(d, &left, &right, k, l)?;
                return found(Rule::HookRaised, p, &removed);
            }
            if lev < k - 1 {
                return Err(broken(format!("hook vertex {u} rose to level {lev}")));
            }
        }
    }

    if let Some((rule, p)) = final_checks(d, &stage, &removed, &owner, k, l)? {
        return found(rule, p, &removed);
    }
    let coloring = assemble_coloring(d, &stage, &removed, &owner, k, l)?;
    Ok(Certification {
        outcome: CertifiedOutcome::Coloring(coloring),
        rule: Rule::Coloring,
        circuits: removed.into_iter().map(|r| r.circuit).collect(),
    })
}

/// In-neighbors of `b` lying on removed circuits, ascending.
fn circuit_feeders(d: &Digraph, owner: &[Option<usize>], b: usize) -> Vec<usize> {
    d.in_neighbors(b).iter().copied().filter(|&x| owner[x].is_some()).collect()
}

/// Level-`k` forest vertices with an in-neighbor on a removed circuit.
fn bad_vertices(d: &Digraph, stage: &Stage, owner: &[Option<usize>], k: usize) -> Vec<usize> {
    stage
        .orig
        .iter()
        .copied()
        .filter(|&b| stage.level(b) == k && !circuit_feeders(d, owner, b).is_empty())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn final_checks(
    d: &Digraph,
    stage: &Stage,
    removed: &[Removed],
    owner: &[Option<usize>],
    k: usize,
    l: usize,
) -> Result<Option<(Rule, PathEmbedding)>> {
    let circ = |i: usize| &removed[i].circuit;
    let ending = |i: usize, v: usize, arcs: usize| {
        circ(i).path_ending_at(v, arcs).ok_or_else(|| broken(format!("circuit {i} too short for {arcs} arcs")))
    };
    let deep = |v: usize| stage.contains(v) && stage.level(v) > k;

    for (x, y) in d.arcs() {
        if let (Some(i), Some(j)) = (owner[x], owner[y]) {
            if i != j {
                let mut left = ending(i, x, k - 1)?;
                left.push(y);
                let p = fork(d, &left, &ending(j, y, l)?, k, l)?;
                return Ok(Some((Rule::ArcBetweenCircuits, p)));
            }
        }
    }

    for (x, y) in d.arcs() {
        if let Some(i) = owner[x].filter(|_| deep(y)) {
            let mut right = ending(i, x, l - 1)?;
            right.push(y);
            let p = fork(d, &stage.path_suffix(y, k)?, &right, k, l)?;
            return Ok(Some((Rule::CircuitNearDeepLevel, p)));
        }
        if let Some(i) = owner[y].filter(|_| deep(x)) {
            let mut left = stage.path_suffix(x, k - 1)?;
            left.push(y);
            let p = fork(d, &left, &ending(i, y, l)?, k, l)?;
            return Ok(Some((Rule::CircuitNearDeepLevel, p)));
        }
    }

    for (x, y) in d.arcs() {
        if let Some(i) = owner[y].filter(|_| stage.contains(x) && stage.level(x) == k) {
            let mut left = stage.path_suffix(x, k - 1)?;
            left.push(y);
            let p = fork(d, &left, &ending(i, y, l)?, k, l)?;
            return Ok(Some((Rule::CircuitFedByLevelK, p)));
        }
    }

    let bad = bad_vertices(d, stage, owner, k);

    for &b in &bad {
        let feeders = circuit_feeders(d, owner, b);
        let x = feeders[0];
        let i = owner[x].expect("feeder is on a circuit");
        if let Some(&x2) = feeders.iter().find(|&&f| owner[f] != Some(i)) {
            let j = owner[x2].expect("feeder is on a circuit");
            let mut left = ending(i, x, k - 1)?;
            left.push(b);
            let mut right = ending(j, x2, l - 1)?;
            right.push(b);
            let p = fork(d, &left, &right, k, l)?;
            return Ok(Some((Rule::BadVertexTwoCircuits, p)));
        }
    }

    for &b in &bad {
        let feeders = circuit_feeders(d, owner, b);
        if feeders.len() <= l {
            continue;
        }
        let r = &removed[owner[feeders[0]].expect("feeder is on a circuit")];
        let c = &r.circuit;
        let len = c.len();
        let start = c.position(r.anchor).expect("anchor lies on its circuit");
        let mut ws = feeders;
        ws.sort_by_key(|&w| (c.position(w).expect("feeder on circuit") + len - start) % len);
        let mut left = match r.hook {
            Some(u) => stage.path_to(u),
            None => Vec::new(),
        };
        left.extend(c.segment(r.anchor, ws[0]).expect("both on circuit"));
        left.push(b);
        let mut right = c.segment(ws[1], ws[l]).expect("both on circuit");
        right.push(b);
        let p = fork(d, &left, &right, k, l)?;
        return Ok(Some((Rule::BadVertexManyInNeighbors, p)));
    }

    let low = |v: usize| stage.contains(v) && stage.level(v) < k;
    for &b in &bad {
        let feed = circuit_feeders(d, owner, b)[0];
        let ci = owner[feed].expect("feeder is on a circuit");
        let c = circ(ci);
        let around = c.path_ending_at(feed, c.len() - 1).expect("whole circuit");
        let mut in_sb = vec![false; d.n()];
        for v in stage.subtree(b) {
            in_sb[v] = true;
        }
        // right-hand side through b: the circuit into `feed`, then b, then
        // the forest path from b down to `to`
        let through_b = |to: usize| -> Result<Vec<usize>> {
            let mut r = around.clone();
            r.extend(stage.path_suffix(to, stage.level(to) - k)?);
            Ok(r)
        };

        for (x, y) in d.arcs() {
            if !in_sb[y] || in_sb[x] || low(x) {
                continue;
            }
            if owner[x].is_some() {
                if y != b || owner[x] != Some(ci) {
                    return Err(broken(format!("arc {x} -> {y} from a circuit into a subtree survived")));
                }
                continue;
            }
            if y == b {
                return Err(broken(format!("arc {x} -> {b} contradicts forest maximality")));
            }
            let mut left = stage.path_suffix(x, k - 1)?;
            left.push(y);
            let right = through_b(y)?;
            let p = fork(d, &left, &right, k, l)?;
            return Ok(Some((Rule::ArcEntersSubtree, p)));
        }

        for (x, y) in d.arcs() {
            if !in_sb[x] || in_sb[y] || low(y) {
                continue;
            }
            if owner[y].is_some() {
                return Err(broken(format!("arc {x} -> {y} from a subtree into a circuit survived")));
            }
            if stage.level(y) <= k {
                return Err(broken(format!("arc {x} -> {y} contradicts forest maximality")));
            }
            let mut right = through_b(x)?;
            right.push(y);
            let p = fork(d, &stage.path_suffix(y, k)?, &right, k, l)?;
            return Ok(Some((Rule::ArcLeavesSubtree, p)));
        }
    }
    Ok(None)
}

fn assemble_coloring(
    d: &Digraph,
    stage: &Stage,
    removed: &[Removed],
    owner: &[Option<usize>],
    k: usize,
    l: usize,
) -> Result<VertexColoring> {
    let n = d.n();
    let mut colors = vec![0usize; n];
    for &v in &stage.orig {
        colors[v] = stage.canonical_color(v, k, l);
    }
    for r in removed {
        let induced = d.induced(&r.circuit.vertices)?;
        let local = find_k_coloring(&induced.digraph, l + 1)
            .ok_or_else(|| broken("removed circuit is not (l+1)-colorable"))?;
        for (x, &v) in induced.original.iter().enumerate() {
            colors[v] = k - 1 + local.color(x);
        }
    }
    for b in bad_vertices(d, stage, owner, k) {
        let taken: Vec<usize> = circuit_feeders(d, owner, b).iter().map(|&x| colors[x]).collect();
        let c = (k..=k + l)
            .find(|c| !taken.contains(c))
            .ok_or_else(|| broken(format!("bad vertex {b} sees every circuit color")))?;
        for v in stage.subtree(b) {
            colors[v] = k + (c - k + stage.level(v) - k) % (l + 1);
        }
    }
    let coloring = VertexColoring::new(colors, k + l)?;
    if let Some((x, y)) = coloring.first_conflict(d) {
        return Err(broken(format!("assembled coloring clashes on {x} -> {y}")));
    }
    Ok(coloring)
}

/// Two-block search for strongly connected digraphs via a good circuit and
/// contraction.
///
/// With `l >= k` (after swapping), takes an `(l + 1)`-good circuit `C`,
/// contracts it and looks for a directed path with `k` arcs ending at the
/// merged vertex; lifted back, that path and `C` form `P(k, l)`. Returns
/// `Ok(None)` when no such path exists, which cannot happen when
/// `chi(d) >= k + l + 1`.
pub fn find_two_block_strong(d: &Digraph, k: usize, l: usize) -> Result<Option<PathEmbedding>> {
    if k == 0 || l == 0 || k + l < 3 {
        return Err(Error::InvalidArgument(format!("need k, l >= 1 and k + l >= 3, got k={k}, l={l}")));
    }
    if k > l {
        return Ok(find_two_block_strong(d, l, k)?.map(|p| p.reversed()));
    }
    let c = k_good_circuit(d, l + 1)?;
    let con = contract_circuit(d, &c)?;
    let hub = con.image[c.vertices[0]];
    if chi(d) > k + l && chi(&con.digraph) <= k {
        return Err(broken(format!("contracting an {}-good circuit left chromatic number <= {k}", l + 1)));
    }

    fn back(q: &Digraph, path: &mut Vec<usize>, used: &mut [bool], k: usize) -> bool {
        if path.len() == k + 1 {
            return true;
        }
        let last = *path.last().expect("non-empty");
        for &u in q.in_neighbors(last) {
            if !used[u] {
                used[u] = true;
                path.push(u);
                if back(q, path, used, k) {
                    return true;
                }
                path.pop();
                used[u] = false;
            }
        }
        false
    }
    let mut used = vec![false; con.digraph.n()];
    used[hub] = true;
    let mut path = vec![hub];
    if !back(&con.digraph, &mut path, &mut used, k) {
        return Ok(None);
    }
    path.reverse();
    let mut left: Vec<usize> = path[..k]
        .iter()
        .map(|&q| {
            let pre = con.preimage(q);
            if pre.len() == 1 {
                Ok(pre[0])
            } else {
                Err(broken("contracted path vertex is not a single vertex"))
            }
        })
        .collect::<Result<_>>()?;
    let last = *left.last().expect("k >= 1");
    let entry = d
        .out_neighbors(last)
        .iter()
        .copied()
        .find(|&x| c.contains(x))
        .ok_or_else(|| broken("contracted arc into the circuit has no preimage"))?;
    left.push(entry);
    let right = c.path_ending_at(entry, l).ok_or_else(|| broken("circuit too short"))?;
    fork(d, &left, &right, k, l).map(Some)
}
