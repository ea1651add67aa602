//! Oriented path search: the brute-force oracle [`find_pattern`] and the
//! certified two-block finder [`find_two_block_certified`].

mod certified;
mod pattern;

pub use certified::{certify_two_block, find_two_block_certified, find_two_block_strong, Certification, CertifiedOutcome, Rule};
pub use pattern::{BlockPattern, DirectedPath, Direction, PathEmbedding};

use crate::Digraph;

/// Lexicographically first embedding of `pattern` in `d`, by exhaustive
/// backtracking over vertex sequences.
pub fn find_pattern(d: &Digraph, pattern: &BlockPattern) -> Option<PathEmbedding> {
    let steps = pattern.steps();
    let mut used = vec![false; d.n()];
    let mut seq = Vec::with_capacity(steps.len() + 1);

    fn extend(d: &Digraph, steps: &[Direction], used: &mut [bool], seq: &mut Vec<usize>) -> bool {
        let i = seq.len() - 1;
        if i == steps.len() {
            return true;
        }
        let last = seq[i];
        let candidates = match steps[i] {
            Direction::Forward => d.out_neighbors(last),
            Direction::Backward => d.in_neighbors(last),
        };
        for &w in candidates {
            if used[w] {
                continue;
            }
            used[w] = true;
            seq.push(w);
            if extend(d, steps, used, seq) {
                return true;
            }
            seq.pop();
            used[w] = false;
        }
        false
    }

    for s in 0..d.n() {
        used[s] = true;
        seq.push(s);
        if extend(d, &steps, &mut used, &mut seq) {
            return Some(PathEmbedding { vertices: seq, pattern: pattern.clone() });
        }
        seq.pop();
        used[s] = false;
    }
    None
}

/// Searches for the antidirected path `b1,f1,b1,f1`.
pub fn find_p4(d: &Digraph) -> Option<PathEmbedding> {
    find_pattern(d, &BlockPattern::p4())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures::{build_elsahili_example, build_t5};

    #[test]
    fn pattern_in_itself() {
        let p4 = Digraph::from_arcs(5, &[(1, 0), (1, 2), (3, 2), (3, 4)]).unwrap();
        assert_eq!(find_p4(&p4).unwrap().vertices, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn odd_circuit_has_no_two_in_neighbors() {
        let c5 = Digraph::directed_cycle(5);
        assert!(find_pattern(&c5, &BlockPattern::two_block(1, 1).unwrap()).is_none());
        assert!(find_pattern(&c5, &BlockPattern::directed(4).unwrap()).is_some());
    }

    #[test]
    fn p4_in_tournaments() {
        let tt5 = Digraph::transitive_tournament(5);
        let p = find_p4(&tt5).unwrap();
        assert!(p.validate(&tt5).is_ok());
        assert!(find_p4(&build_t5()).is_none());
        assert!(find_p4(&build_elsahili_example()).is_none());
    }

    #[test]
    fn lexicographic_first() {
        // 0 -> 1 <- 2 and 3 -> 1: first P(1,1) is 0,1,2
        let d = Digraph::from_arcs(4, &[(0, 1), (2, 1), (3, 1)]).unwrap();
        assert_eq!(find_pattern(&d, &BlockPattern::two_block(1, 1).unwrap()).unwrap().vertices, vec![0, 1, 2]);
    }
}
