//! Exhaustive search for codes in an enumerated polar space.
//!
//! A d-code is a set of generators with pairwise relation at least d, so
//! finding a large one is a maximum clique problem on the compatibility
//! graph. The search is branch and bound with a greedy coloring bound and
//! bitset candidate sets; a node budget keeps hopeless runs finite and is
//! reported honestly when hit.

use super::{OracleConfig, OracleError, PolarSpaceInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeSearch {
    /// Prove a maximum: explore until exhausted.
    MaxExhaustive,
    /// Stop at the first code of the given size.
    FirstOfSize(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSearchResult {
    /// The search completed; the set is a maximum code.
    Maximum(Vec<usize>),
    /// A code of the requested size.
    Found(Vec<usize>),
    /// The search completed and no code of the requested size exists.
    NotFound { best: Vec<usize> },
    /// The node budget ran out; `best` is the largest code seen.
    BudgetExceeded { best: Vec<usize>, nodes: u64 },
}

type Words = Vec<u64>;

fn set_bit(w: &mut Words, i: usize) {
    w[i / 64] |= 1u64 << (i % 64);
}

fn clear_bit(w: &mut Words, i: usize) {
    w[i / 64] &= !(1u64 << (i % 64));
}

fn intersect(a: &Words, b: &Words) -> Words {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn is_empty(w: &Words) -> bool {
    w.iter().all(|&x| x == 0)
}

fn first_bit(w: &Words) -> Option<usize> {
    w.iter()
        .enumerate()
        .find(|(_, &x)| x != 0)
        .map(|(i, &x)| i * 64 + x.trailing_zeros() as usize)
}

struct Search<'a> {
    adj: &'a [Words],
    target: Option<usize>,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
    exhausted: bool,
}

impl Search<'_> {
    /// Greedy coloring of the candidate set; returns (vertex, color)
    /// with colors nondecreasing. A clique inside the candidates meets
    /// each color class at most once, so the color number bounds the
    /// clique size among the vertex and its predecessors in the list.
    fn color_order(&self, cand: &Words) -> Vec<(usize, usize)> {
        let mut order = Vec::new();
        let mut uncolored = cand.clone();
        let mut color = 0usize;
        while !is_empty(&uncolored) {
            color += 1;
            let mut class = uncolored.clone();
            while let Some(v) = first_bit(&class) {
                order.push((v, color));
                clear_bit(&mut uncolored, v);
                class = intersect(&class, &not_adjacent(self.adj, v, class.len()));
                clear_bit(&mut class, v);
            }
        }
        order
    }

    fn expand(&mut self, current: &mut Vec<usize>, cand: &Words) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = false;
            return;
        }
        let order = self.color_order(cand);
        let mut cand = cand.clone();
        for &(v, color) in order.iter().rev() {
            if self.done() || !self.exhausted && self.nodes > self.budget {
                return;
            }
            let goal = match self.target {
                Some(t) => t,
                None => self.best.len() + 1,
            };
            if current.len() + color < goal {
                return;
            }
            current.push(v);
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            let next = intersect(&cand, &self.adj[v]);
            if !is_empty(&next) && !self.done() {
                self.expand(current, &next);
            }
            current.pop();
            clear_bit(&mut cand, v);
        }
    }

    fn done(&self) -> bool {
        matches!(self.target, Some(t) if self.best.len() >= t)
    }
}

fn not_adjacent(adj: &[Words], v: usize, words: usize) -> Words {
    adj[v].iter().take(words).map(|&w| !w).collect()
}

/// Searches for d-codes among the generators of `inst`.
pub fn find_code(
    inst: &PolarSpaceInstance,
    d: i64,
    search: CodeSearch,
    node_budget: u64,
    config: &OracleConfig,
) -> Result<CodeSearchResult, OracleError> {
    let x = inst.size();
    if x > config.max_clique {
        return Err(OracleError::TooLarge {
            what: "generator set for clique search",
            size: x,
            cap: config.max_clique,
        });
    }
    if d < 1 || d > inst.spec.n {
        return Err(OracleError::BadParameters(format!(
            "d = {d} outside 1..={}",
            inst.spec.n
        )));
    }
    let words = x.div_ceil(64);
    let mut adj: Vec<Words> = vec![vec![0u64; words]; x];
    for a in 0..x {
        for b in 0..x {
            if a != b && inst.relation[a][b] as i64 >= d {
                set_bit(&mut adj[a], b);
            }
        }
    }
    let mut all = vec![0u64; words];
    for v in 0..x {
        set_bit(&mut all, v);
    }
    let target = match search {
        CodeSearch::MaxExhaustive => None,
        CodeSearch::FirstOfSize(t) => Some(t),
    };
    if target == Some(0) {
        return Ok(CodeSearchResult::Found(vec![]));
    }
    let mut s = Search {
        adj: &adj,
        target,
        budget: node_budget,
        nodes: 0,
        best: Vec::new(),
        exhausted: true,
    };
    s.expand(&mut Vec::new(), &all);
    let mut best = s.best.clone();
    best.sort_unstable();
    Ok(match (search, s.exhausted, s.done()) {
        (_, _, true) => {
            let mut found = s.best;
            found.sort_unstable();
            found.truncate(target.unwrap());
            CodeSearchResult::Found(found)
        }
        (_, false, false) => CodeSearchResult::BudgetExceeded {
            best,
            nodes: s.nodes,
        },
        (CodeSearch::MaxExhaustive, true, false) => CodeSearchResult::Maximum(best),
        (CodeSearch::FirstOfSize(_), true, false) => CodeSearchResult::NotFound { best },
    })
}

/// Checks that the listed generators are pairwise in relation >= d.
pub fn is_code(inst: &PolarSpaceInstance, members: &[usize], d: i64) -> bool {
    for (i, &a) in members.iter().enumerate() {
        for &b in members.iter().skip(i + 1) {
            if (inst.relation[a][b] as i64) < d {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate;
    use crate::schemes::{PolarKind, SchemeSpec};

    #[test]
    fn symplectic_rank_two_spread_is_maximum() {
        let spec = SchemeSpec::new(PolarKind::Symplectic, 2, 2).unwrap();
        let inst = enumerate(&spec).unwrap();
        let config = OracleConfig::default();
        let res = find_code(&inst, 2, CodeSearch::MaxExhaustive, 1 << 22, &config).unwrap();
        match res {
            CodeSearchResult::Maximum(best) => {
                assert_eq!(best.len(), 5);
                assert!(is_code(&inst, &best, 2));
            }
            other => panic!("unexpected result {other:?}"),
        }
    }

    #[test]
    fn first_of_size_stops_early() {
        let spec = SchemeSpec::new(PolarKind::Symplectic, 2, 2).unwrap();
        let inst = enumerate(&spec).unwrap();
        let config = OracleConfig::default();
        let res = find_code(&inst, 2, CodeSearch::FirstOfSize(5), 1 << 22, &config).unwrap();
        match res {
            CodeSearchResult::Found(members) => {
                assert_eq!(members.len(), 5);
                assert!(is_code(&inst, &members, 2));
            }
            other => panic!("unexpected result {other:?}"),
        }
        let res = find_code(&inst, 2, CodeSearch::FirstOfSize(6), 1 << 22, &config).unwrap();
        assert!(matches!(res, CodeSearchResult::NotFound { .. }));
    }
}
