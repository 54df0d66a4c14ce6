//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here calls the library's folding, conjugacy or
//! girth code.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use subconj::gog::{GPath, GraphOfGroups};
use subconj::words::{Alphabet, ReducedWord};

/// Letters as nonzero integers: `1 = a`, `-1 = A`, `2 = b`, `-2 = B`.
pub type Word = Vec<i8>;

pub fn reduce(w: &[i8]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inverse(w: &[i8]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

/// `g^-1 h g`, reduced.
pub fn conjugate(h: &[i8], g: &[i8]) -> Word {
    let mut w = inverse(g);
    w.extend_from_slice(h);
    w.extend_from_slice(g);
    reduce(&w)
}

pub fn to_text(w: &[i8]) -> String {
    w.iter()
        .map(|&x| match x {
            1 => 'a',
            -1 => 'A',
            2 => 'b',
            -2 => 'B',
            _ => unreachable!(),
        })
        .collect()
}

pub fn to_library(w: &[i8]) -> ReducedWord {
    ReducedWord::parse(&to_text(w), Alphabet::new(2).unwrap()).unwrap()
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    let mut w: Word = Vec::new();
    while w.len() < len {
        let x = [1i8, -1, 2, -2][rng.gen_range(0..4)];
        if w.last() != Some(&-x) {
            w.push(x);
        }
    }
    w
}

pub fn random_gens<R: Rng>(rng: &mut R, max_gens: usize, max_len: usize) -> Vec<Word> {
    let n = rng.gen_range(1..=max_gens);
    (0..n).map(|_| random_word(rng, max_len)).collect()
}

/// Every reduced word of length at most `n` in F(a, b).
pub fn all_words(n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::<i8>::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for x in [1i8, -1, 2, -2] {
                if w.last() != Some(&-x) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// A folded automaton for a subgroup of F(a, b), built by naive
/// identification until the graph is deterministic.
pub struct Automaton {
    /// `edges[v][slot]`, slot 0..4 for a, A, b, B.
    edges: Vec<[Option<usize>; 4]>,
}

fn slot(x: i8) -> usize {
    match x {
        1 => 0,
        -1 => 1,
        2 => 2,
        -2 => 3,
        _ => unreachable!(),
    }
}

impl Automaton {
    pub fn new(gens: &[Word]) -> Self {
        // petals, as an edge list, then fold by repeated merging
        let mut n = 1usize;
        let mut arcs: Vec<(usize, i8, usize)> = Vec::new();
        for g in gens {
            let g = reduce(g);
            if g.is_empty() {
                continue;
            }
            let mut cur = 0;
            for (i, &x) in g.iter().enumerate() {
                let next = if i + 1 == g.len() {
                    0
                } else {
                    n += 1;
                    n - 1
                };
                arcs.push((cur, x, next));
                cur = next;
            }
        }
        let mut label: Vec<usize> = (0..n).collect();
        loop {
            let find = |label: &Vec<usize>, mut v: usize| {
                while label[v] != v {
                    v = label[v];
                }
                v
            };
            let mut table: Vec<[Option<usize>; 4]> = vec![[None; 4]; n];
            let mut merged = false;
            for &(u, x, v) in &arcs {
                let (u, v) = (find(&label, u), find(&label, v));
                for (s, t, y) in [(u, v, x), (v, u, -x)] {
                    match table[s][slot(y)] {
                        None => table[s][slot(y)] = Some(t),
                        Some(w) => {
                            let w = find(&label, w);
                            if w != t {
                                let (lo, hi) = (w.min(t), w.max(t));
                                label[hi] = lo;
                                merged = true;
                            }
                        }
                    }
                }
                if merged {
                    break;
                }
            }
            if !merged {
                return Automaton { edges: table };
            }
        }
    }

    pub fn accepts(&self, w: &[i8]) -> bool {
        let mut v = 0;
        for &x in w {
            match self.edges[v][slot(x)] {
                Some(t) => v = t,
                None => return false,
            }
        }
        v == 0
    }
}

/// Shortest `g` with `|g| <= max` and `g^-1 h g` in `H1` for every `h` in
/// `h2`, by brute force.
pub fn brute_conj_into(h1: &[Word], h2: &[Word], max: usize) -> Option<Word> {
    let a = Automaton::new(h1);
    all_words(max).into_iter().find(|g| h2.iter().all(|h| a.accepts(&conjugate(h, g))))
}

/// Whether `<h1>^g = <h2>`.
pub fn conjugate_equal(h1: &[Word], h2: &[Word], g: &[i8]) -> bool {
    let a1 = Automaton::new(h1);
    let a2 = Automaton::new(h2);
    let gi = inverse(g);
    h1.iter().all(|h| a2.accepts(&conjugate(h, g))) && h2.iter().all(|h| a1.accepts(&conjugate(h, &gi)))
}

/// Girth of a multigraph given as an edge list, by breadth-first search
/// from every vertex. `None` for a forest.
pub fn multigraph_girth(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        if u == v {
            return Some(1);
        }
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut via = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &(y, id) in &adj[x] {
                if id == via[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    via[y] = id;
                    q.push_back(y);
                } else {
                    let c = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(c, |b| b.min(c)));
                }
            }
        }
    }
    best
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = HashSet::from([0]);
    let mut q = VecDeque::from([0]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if seen.insert(y) {
                q.push_back(y);
            }
        }
    }
    seen.len() == n
}

/// Every path `g0 e1 g1 ... ek gk` from the base back to the base with at
/// most `max_edges` edges, with no pruning beyond the tree walk itself.
pub fn all_closed_paths(gog: &GraphOfGroups, max_edges: usize) -> Vec<GPath> {
    let base = gog.base();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>, Vec<subconj::gog::DirEdge>)> = vec![(base, Vec::new(), Vec::new())];
    while let Some((v, els, eds)) = stack.pop() {
        for g in 0..gog.vertex_group(v).order() {
            let mut e2 = els.clone();
            e2.push(g);
            if v == base {
                out.push(GPath::new(gog, base, e2.clone(), eds.clone()).unwrap());
            }
            if eds.len() < max_edges {
                for &d in gog.incident(v) {
                    let mut d2 = eds.clone();
                    d2.push(d);
                    stack.push((gog.target(d), e2.clone(), d2));
                }
            }
        }
    }
    out
}

/// Brute-force search for `g` with every `g^-1 h g` in the vertex subgroup
/// `h1` of the base vertex group (an element lies there iff its reduced
/// form has no edges and its element is in `h1`).
pub fn brute_conj_into_vertex_subgroup(gog: &GraphOfGroups, h1: &[usize], h2: &[GPath], max_edges: usize) -> Option<GPath> {
    all_closed_paths(gog, max_edges).into_iter().find(|g| {
        let gi = g.inverse(gog);
        h2.iter().all(|h| {
            let c = gi.concat(gog, h).unwrap().concat(gog, g).unwrap().reduce(gog);
            c.edges().is_empty() && h1.contains(&c.elements()[0])
        })
    })
}
