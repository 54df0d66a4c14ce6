//! Shortest-cycle search on finite multigraphs.
//!
//! A cycle is a closed, nontrivial edge path without immediate backtracking
//! along the same edge. Loops have length 1 and parallel edges give cycles of
//! length 2.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Result of a capped girth computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Girth {
    /// The shortest cycle has exactly this length.
    Exact(usize),
    /// No cycle of length below this value exists.
    AtLeast(usize),
}

impl Girth {
    /// True when every cycle has length at least `bound`.
    pub fn at_least(&self, bound: usize) -> bool {
        match *self {
            Girth::Exact(g) => g >= bound,
            Girth::AtLeast(g) => g >= bound,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Exact(g) => write!(f, "{g}"),
            Girth::AtLeast(g) => write!(f, ">= {g}"),
        }
    }
}

/// Adjacency list with edge ids: `adj[v]` holds `(neighbor, edge_id)`. A loop
/// appears twice in its vertex's list under one id.
pub struct Multigraph {
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { adj: vec![Vec::new(); n] }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, id: usize) {
        self.adj[u].push((v, id));
        self.adj[v].push((u, id));
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.adj.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    /// Exact girth if it is at most `cap`, otherwise `AtLeast(cap + 1)`.
    pub fn girth(&self, cap: usize) -> Girth {
        let n = self.adj.len();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut touched = Vec::new();
        let max_depth = cap.saturating_sub(1) / 2;
        for root in 0..n {
            if best <= 1 {
                break;
            }
            for &t in &touched {
                dist[t] = usize::MAX;
                parent_edge[t] = usize::MAX;
            }
            touched.clear();
            dist[root] = 0;
            touched.push(root);
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let d = dist[x];
                if d > max_depth || 2 * d + 1 >= best {
                    break;
                }
                for &(y, id) in &self.adj[x] {
                    if parent_edge[x] == id && y != x {
                        continue;
                    }
                    if dist[y] != usize::MAX {
                        if parent_edge[y] == id && y != x {
                            continue;
                        }
                        best = best.min(d + dist[y] + 1);
                    } else {
                        dist[y] = d + 1;
                        parent_edge[y] = id;
                        touched.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        if best <= cap {
            Girth::Exact(best)
        } else {
            Girth::AtLeast(cap + 1)
        }
    }
}
