use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Digraph, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    fn letter(self) -> char {
        match self {
            Direction::Forward => 'f',
            Direction::Backward => 'b',
        }
    }
}

/// An oriented path shape: maximal blocks of equally directed arcs, read in
/// traversal order. `f2,b3` is the two-block path with 2 forward arcs then 3
/// backward arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockPattern {
    blocks: Vec<(Direction, usize)>,
}

impl BlockPattern {
    pub fn new(blocks: Vec<(Direction, usize)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidArgument("pattern needs at least one block".into()));
        }
        if blocks.iter().any(|&(_, len)| len == 0) {
            return Err(Error::InvalidArgument("block lengths must be >= 1".into()));
        }
        if blocks.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidArgument("block directions must alternate".into()));
        }
        Ok(BlockPattern { blocks })
    }

    /// Collapses a per-arc direction sequence into blocks.
    pub fn from_steps(steps: &[Direction]) -> Result<Self> {
        let mut blocks: Vec<(Direction, usize)> = Vec::new();
        for &d in steps {
            match blocks.last_mut() {
                Some((last, len)) if *last == d => *len += 1,
                _ => blocks.push((d, 1)),
            }
        }
        Self::new(blocks)
    }

    /// `P(k, l)`: `k` forward arcs followed by `l` backward arcs.
    pub fn two_block(k: usize, l: usize) -> Result<Self> {
        Self::new(vec![(Direction::Forward, k), (Direction::Backward, l)])
    }

    /// A directed path with `len` arcs.
    pub fn directed(len: usize) -> Result<Self> {
        Self::new(vec![(Direction::Forward, len)])
    }

    /// Antidirected path of `len` arcs whose first arc has direction `first`.
    pub fn antidirected(len: usize, first: Direction) -> Result<Self> {
        let steps: Vec<Direction> =
            (0..len).map(|i| if i % 2 == 0 { first } else { first.flip() }).collect();
        Self::from_steps(&steps)
    }

    /// The antidirected path on `x, y, z, v, w` with arcs
    /// `y->x, y->z, v->z, v->w`.
    pub fn p4() -> Self {
        Self::antidirected(4, Direction::Backward).expect("p4 is a valid pattern")
    }

    pub fn blocks(&self) -> &[(Direction, usize)] {
        &self.blocks
    }

    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|&(_, l)| l).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn steps(&self) -> Vec<Direction> {
        self.blocks.iter().flat_map(|&(d, l)| std::iter::repeat_n(d, l)).collect()
    }

    /// The same oriented path read from the other end.
    pub fn reversed(&self) -> Self {
        BlockPattern { blocks: self.blocks.iter().rev().map(|&(d, l)| (d.flip(), l)).collect() }
    }

    /// Every oriented path with `len` arcs, one pattern per isomorphism class
    /// (a pattern and its reversal count once).
    pub fn all_of_length(len: usize) -> Vec<Self> {
        assert!((1..=30).contains(&len), "pattern length out of range");
        let mut out = Vec::new();
        for mask in 0u32..(1 << len) {
            let steps: Vec<Direction> = (0..len)
                .map(|i| if mask >> (len - 1 - i) & 1 == 0 { Direction::Forward } else { Direction::Backward })
                .collect();
            let rev: Vec<Direction> = steps.iter().rev().map(|d| d.flip()).collect();
            if steps <= rev {
                out.push(Self::from_steps(&steps).expect("non-empty step list"));
            }
        }
        out
    }
}

impl fmt::Display for BlockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(d, l)) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}{}", d.letter(), l)?;
        }
        Ok(())
    }
}

impl FromStr for BlockPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let dir = match tok.chars().next() {
                    Some('f') | Some('F') => Direction::Forward,
                    Some('b') | Some('B') => Direction::Backward,
                    _ => return Err(Error::InvalidArgument(format!("bad block token {tok:?}"))),
                };
                let len = tok[1..]
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad block length in {tok:?}")))?;
                Ok((dir, len))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }
}

impl Serialize for BlockPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BlockPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A witnessed occurrence of an oriented path in a host digraph:
/// `vertices[i]` and `vertices[i + 1]` are joined by an arc pointing the way
/// the pattern says.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathEmbedding {
    pub vertices: Vec<usize>,
    pub pattern: BlockPattern,
}

impl PathEmbedding {
    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Independent certificate check against `host`.
    pub fn validate(&self, host: &Digraph) -> std::result::Result<(), String> {
        let steps = self.pattern.steps();
        if self.vertices.len() != steps.len() + 1 {
            return Err(format!(
                "{} vertices for a pattern with {} arcs",
                self.vertices.len(),
                steps.len()
            ));
        }
        let mut seen = vec![false; host.n()];
        for &v in &self.vertices {
            if v >= host.n() {
                return Err(format!("vertex {v} not in host"));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} repeated"));
            }
        }
        for (i, d) in steps.iter().enumerate() {
            let (a, b) = (self.vertices[i], self.vertices[i + 1]);
            let ok = match d {
                Direction::Forward => host.has_arc(a, b),
                Direction::Backward => host.has_arc(b, a),
            };
            if !ok {
                return Err(format!("step {i}: missing arc for {a} {} {b}", if *d == Direction::Forward { "->" } else { "<-" }));
            }
        }
        Ok(())
    }

    /// Same path traversed from the other end.
    pub fn reversed(&self) -> Self {
        PathEmbedding {
            vertices: self.vertices.iter().rev().copied().collect(),
            pattern: self.pattern.reversed(),
        }
    }

    /// Renames vertices through `map` (e.g. back to an original digraph).
    pub fn mapped(&self, map: impl Fn(usize) -> usize) -> Self {
        PathEmbedding { vertices: self.vertices.iter().map(|&v| map(v)).collect(), pattern: self.pattern.clone() }
    }
}

/// A directed path given by its vertex sequence; may be a single vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedPath {
    pub vertices: Vec<usize>,
}

impl DirectedPath {
    /// Order (number of vertices).
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn validate(&self, host: &Digraph) -> std::result::Result<(), String> {
        if self.vertices.is_empty() {
            return Err("empty path".into());
        }
        let mut seen = vec![false; host.n()];
        for &v in &self.vertices {
            if v >= host.n() || std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} invalid or repeated"));
            }
        }
        match self.vertices.windows(2).find(|w| !host.has_arc(w[0], w[1])) {
            Some(w) => Err(format!("missing arc {} -> {}", w[0], w[1])),
            None => Ok(()),
        }
    }

    /// As a single-block embedding; `None` for a lone vertex.
    pub fn as_embedding(&self) -> Option<PathEmbedding> {
        let len = self.vertices.len().checked_sub(1).filter(|&l| l > 0)?;
        Some(PathEmbedding { vertices: self.vertices.clone(), pattern: BlockPattern::directed(len).ok()? })
    }
}
