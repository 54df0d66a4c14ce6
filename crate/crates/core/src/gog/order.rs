//! The order on directed edges by size of the component they point into.

use serde::{Deserialize, Serialize};

use super::graph::{DirEdge, GraphOfGroups};

/// `m(e)` is the number of geometric edges in the component containing
/// `target(e)` after deleting `e`. Directed edges are ordered by
/// `(m(e), index)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeOrder {
    pub m: Vec<usize>,
    /// Position of each directed edge in the total order.
    pub rank: Vec<usize>,
}

impl EdgeOrder {
    pub fn new(gog: &GraphOfGroups) -> Self {
        let m: Vec<usize> = gog
            .dir_edges()
            .map(|d| {
                let mut count = 0;
                let mut stack = vec![(gog.target(d), d.reverse())];
                while let Some((v, from)) = stack.pop() {
                    for &f in gog.incident(v) {
                        if f != from {
                            count += 1;
                            stack.push((gog.target(f), f.reverse()));
                        }
                    }
                }
                count
            })
            .collect();
        let mut sorted: Vec<DirEdge> = gog.dir_edges().collect();
        sorted.sort_by_key(|d| (m[d.index()], d.index()));
        let mut rank = vec![0; m.len()];
        for (i, d) in sorted.iter().enumerate() {
            rank[d.index()] = i;
        }
        EdgeOrder { m, rank }
    }

    pub fn m(&self, d: DirEdge) -> usize {
        self.m[d.index()]
    }

    pub fn rank(&self, d: DirEdge) -> usize {
        self.rank[d.index()]
    }

    /// `a` strictly precedes `b`.
    pub fn precedes(&self, a: DirEdge, b: DirEdge) -> bool {
        self.rank(a) < self.rank(b)
    }
}
