//! Stallings graphs of finitely generated subgroups of free groups.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, ReducedWord};

/// A labeled graph in which every vertex has at most one edge per direction
/// slot. `adj[v * 2n + slot(l)]` is the end of the `l`-edge leaving `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    adj: Vec<Option<u32>>,
}

impl LabeledGraph {
    pub fn new(alphabet: Alphabet, vertices: usize) -> Self {
        LabeledGraph { alphabet, adj: vec![None; vertices * alphabet.num_slots()] }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len() / self.alphabet.num_slots()
    }

    pub fn add_vertex(&mut self) -> usize {
        let v = self.num_vertices();
        self.adj.extend(std::iter::repeat_n(None, self.alphabet.num_slots()));
        v
    }

    pub fn target(&self, v: usize, letter: Letter) -> Option<usize> {
        self.adj[v * self.alphabet.num_slots() + Alphabet::slot(letter)].map(|t| t as usize)
    }

    /// Adds `u -l-> v` and its inverse. Fails if either slot is occupied.
    pub fn add_edge(&mut self, u: usize, letter: Letter, v: usize) -> Result<()> {
        let k = self.alphabet.num_slots();
        let fwd = u * k + Alphabet::slot(letter);
        let bwd = v * k + Alphabet::slot(-letter);
        if self.adj[fwd].is_some() || self.adj[bwd].is_some() || (fwd == bwd) {
            return Err(Error::InternalInconsistency(format!(
                "edge {u} -{}-> {v} would unfold the graph",
                self.alphabet.format_letter(letter)
            )));
        }
        self.adj[fwd] = Some(v as u32);
        self.adj[bwd] = Some(u as u32);
        Ok(())
    }

    pub fn valency(&self, v: usize) -> usize {
        let k = self.alphabet.num_slots();
        self.adj[v * k..(v + 1) * k].iter().filter(|t| t.is_some()).count()
    }

    /// Number of geometric edges.
    pub fn num_edges(&self) -> usize {
        self.adj.iter().filter(|t| t.is_some()).count() / 2
    }

    /// Geometric edges as `(src, dst, positive letter)`.
    pub fn edges(&self) -> Vec<(usize, usize, Letter)> {
        let mut out = Vec::new();
        for v in 0..self.num_vertices() {
            for i in 1..=self.alphabet.rank() as Letter {
                if let Some(t) = self.target(v, i) {
                    out.push((v, t, i));
                }
            }
        }
        out
    }

    pub fn trace(&self, start: usize, word: &[Letter]) -> Option<usize> {
        word.iter().try_fold(start, |v, &l| self.target(v, l))
    }

    /// Reduced words labeling BFS-tree paths from `root`, in slot order.
    pub fn tree_paths(&self, root: usize) -> Vec<Option<Vec<Letter>>> {
        let mut paths: Vec<Option<Vec<Letter>>> = vec![None; self.num_vertices()];
        paths[root] = Some(Vec::new());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for l in self.alphabet.letters() {
                if let Some(t) = self.target(v, l) {
                    if paths[t].is_none() {
                        let mut p = paths[v].clone().unwrap();
                        p.push(l);
                        paths[t] = Some(p);
                        queue.push_back(t);
                    }
                }
            }
        }
        paths
    }

    /// Keeps `keep` vertices, renumbered in the given order.
    fn induced(&self, order: &[usize]) -> LabeledGraph {
        let mut new_id = vec![u32::MAX; self.num_vertices()];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i as u32;
        }
        let k = self.alphabet.num_slots();
        let mut adj = vec![None; order.len() * k];
        for (i, &v) in order.iter().enumerate() {
            for s in 0..k {
                if let Some(t) = self.adj[v * k + s] {
                    if new_id[t as usize] != u32::MAX {
                        adj[i * k + s] = Some(new_id[t as usize]);
                    }
                }
            }
        }
        LabeledGraph { alphabet: self.alphabet, adj }
    }

    /// BFS order from `root` over the slot order: a canonical labeling of a
    /// connected folded graph relative to its root.
    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.num_vertices()];
        let mut order = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for l in self.alphabet.letters() {
                if let Some(t) = self.target(v, l) {
                    if !seen[t] {
                        seen[t] = true;
                        order.push(t);
                    }
                }
            }
            i += 1;
        }
        order
    }
}

/// Union-find folding of a labeled multigraph.
struct Folder {
    alphabet: Alphabet,
    parent: Vec<usize>,
    size: Vec<usize>,
    out: Vec<HashMap<usize, usize>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new(alphabet: Alphabet) -> Self {
        Folder { alphabet, parent: Vec::new(), size: Vec::new(), out: Vec::new(), pending: Vec::new() }
    }

    fn add_vertex(&mut self) -> usize {
        let v = self.parent.len();
        self.parent.push(v);
        self.size.push(1);
        self.out.push(HashMap::new());
        v
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn set(&mut self, u: usize, slot: usize, v: usize) {
        let r = self.find(u);
        match self.out[r].get(&slot) {
            Some(&t) => self.pending.push((t, v)),
            None => {
                self.out[r].insert(slot, v);
            }
        }
    }

    fn add_edge(&mut self, u: usize, letter: Letter, v: usize) {
        self.set(u, Alphabet::slot(letter), v);
        self.set(v, Alphabet::slot(-letter), u);
        self.settle();
    }

    fn settle(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (mut ra, mut rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            if self.size[ra] < self.size[rb] {
                std::mem::swap(&mut ra, &mut rb);
            }
            self.parent[rb] = ra;
            self.size[ra] += self.size[rb];
            let moved = std::mem::take(&mut self.out[rb]);
            for (slot, t) in moved {
                match self.out[ra].get(&slot) {
                    Some(&t2) => self.pending.push((t, t2)),
                    None => {
                        self.out[ra].insert(slot, t);
                    }
                }
            }
        }
    }

    fn finish(mut self, base: usize) -> (LabeledGraph, usize) {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).filter(|&v| self.find(v) == v).collect();
        let mut id = vec![usize::MAX; n];
        for (i, &r) in roots.iter().enumerate() {
            id[r] = i;
        }
        let mut g = LabeledGraph::new(self.alphabet, roots.len());
        let k = self.alphabet.num_slots();
        for &r in &roots {
            let entries: Vec<(usize, usize)> = self.out[r].iter().map(|(&s, &t)| (s, t)).collect();
            for (slot, t) in entries {
                let t = self.find(t);
                g.adj[id[r] * k + slot] = Some(id[t] as u32);
            }
        }
        let b = self.find(base);
        (g, id[b])
    }
}

/// A folded, connected, based graph whose reduced loops at the basepoint
/// spell the elements of a subgroup. Vertex 0 is the basepoint and vertices
/// are numbered in canonical BFS order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupGraph {
    graph: LabeledGraph,
    generators: Vec<ReducedWord>,
    saturated: bool,
}

impl SubgroupGraph {
    /// Folds the wedge of generator loops and prunes hanging trees away from
    /// the basepoint.
    pub fn fold_generators(alphabet: Alphabet, gens: &[ReducedWord]) -> Result<Self> {
        if let Some(w) = gens.iter().find(|w| w.alphabet() != alphabet) {
            return Err(Error::InvalidInput(format!(
                "generator `{w}` has rank {} but the alphabet has rank {}",
                w.alphabet().rank(),
                alphabet.rank()
            )));
        }
        let mut f = Folder::new(alphabet);
        let base = f.add_vertex();
        for w in gens {
            let letters = w.letters();
            let mut cur = base;
            for (i, &l) in letters.iter().enumerate() {
                let next = if i + 1 == letters.len() { base } else { f.add_vertex() };
                f.add_edge(cur, l, next);
                cur = next;
            }
        }
        let (g, b) = f.finish(base);
        let graph = prune(&g, b);
        Ok(SubgroupGraph { graph, generators: gens.to_vec(), saturated: false })
    }

    /// Wraps a folded connected graph; the generators are read off a
    /// spanning tree.
    pub fn from_graph(graph: LabeledGraph, base: usize) -> Self {
        let order = graph.bfs_order(base);
        let graph = graph.induced(&order);
        let generators = basis(&graph);
        SubgroupGraph { graph, generators, saturated: false }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.graph.alphabet
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[ReducedWord] {
        &self.generators
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Rank of the subgroup.
    pub fn betti_number(&self) -> usize {
        self.graph.num_edges() + 1 - self.num_vertices()
    }

    pub fn is_trivial(&self) -> bool {
        self.graph.num_edges() == 0 || self.betti_number() == 0
    }

    /// A free basis read off a BFS spanning tree.
    pub fn basis(&self) -> Vec<ReducedWord> {
        basis(&self.graph)
    }

    pub fn contains(&self, w: &ReducedWord) -> bool {
        self.graph.trace(0, w.letters()) == Some(0)
    }

    /// Reduced word labeling the BFS-tree path from the basepoint to `v`.
    pub fn path_to(&self, v: usize) -> ReducedWord {
        let p = self.graph.tree_paths(0).swap_remove(v).expect("graph is connected");
        ReducedWord::reduce(&p, self.alphabet()).expect("letters in range")
    }

    /// Vertices of valency one: the outer vertices once saturated.
    pub fn outer_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.graph.valency(v) == 1).collect()
    }

    /// Attaches fresh leaves to every vertex of intermediate valency so that
    /// all valencies become 1 or 2n. A single isolated vertex receives one
    /// `x_1` leaf.
    pub fn saturate(&self) -> SubgroupGraph {
        let mut g = self.graph.clone();
        let k = self.alphabet().num_slots();
        let n = g.num_vertices();
        if n == 1 && g.valency(0) == 0 {
            let leaf = g.add_vertex();
            g.add_edge(0, 1, leaf).expect("fresh slot");
        } else {
            for v in 0..n {
                let val = g.valency(v);
                if val > 1 && val < k {
                    for l in self.alphabet().letters().collect::<Vec<_>>() {
                        if g.target(v, l).is_none() {
                            let leaf = g.add_vertex();
                            g.add_edge(v, l, leaf).expect("fresh slot");
                        }
                    }
                }
            }
        }
        SubgroupGraph { graph: g, generators: self.generators.clone(), saturated: true }
    }

    /// Pairs outer edges along label-constant lines through inner vertices.
    pub fn star_involution(&self) -> Result<StarInvolution> {
        let k = self.alphabet().num_slots();
        for v in 0..self.num_vertices() {
            let val = self.graph.valency(v);
            if val != 1 && val != k {
                return Err(Error::InvalidInput(format!(
                    "graph not saturated: vertex {v} has valency {val}"
                )));
            }
        }
        let outer = self.outer_vertices();
        let mut lines = Vec::with_capacity(outer.len());
        let mut line_of = HashMap::new();
        for &u in &outer {
            let letter = self
                .alphabet()
                .letters()
                .find(|&l| self.graph.target(u, l).is_some())
                .expect("outer vertex has an edge");
            let mut vertices = vec![u];
            let mut cur = self.graph.target(u, letter).unwrap();
            vertices.push(cur);
            while self.graph.valency(cur) != 1 {
                cur = self.graph.target(cur, letter).ok_or_else(|| {
                    Error::InternalInconsistency(format!("line through {u} breaks at {cur}"))
                })?;
                vertices.push(cur);
                if vertices.len() > self.num_vertices() + 1 {
                    return Err(Error::InternalInconsistency(format!("line through {u} does not end")));
                }
            }
            line_of.insert(u, lines.len());
            lines.push(StarLine { start: u, letter, vertices });
        }
        let sigma: Vec<usize> = lines.iter().map(|l| line_of[&l.end()]).collect();
        for (i, &j) in sigma.iter().enumerate() {
            if j == i || sigma[j] != i {
                return Err(Error::InternalInconsistency("star pairing is not a free involution".into()));
            }
        }
        Ok(StarInvolution { lines, sigma })
    }

    /// Core of the graph with the hair to the basepoint removed, the vertex
    /// where the hair meets it, and the hair word. `None` for the trivial
    /// subgroup.
    fn cyclic_core(&self) -> Option<(Vec<bool>, usize, ReducedWord)> {
        let n = self.num_vertices();
        let mut alive = vec![true; n];
        let mut deg: Vec<usize> = (0..n).map(|v| self.graph.valency(v)).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for l in self.alphabet().letters() {
                if let Some(t) = self.graph.target(v, l) {
                    if alive[t] {
                        deg[t] -= 1;
                        if deg[t] <= 1 {
                            stack.push(t);
                        }
                    }
                }
            }
        }
        if !alive.iter().any(|&a| a) {
            return None;
        }
        let mut hair = Vec::new();
        let mut cur = 0;
        let mut prev: Option<usize> = None;
        while !alive[cur] {
            let (l, t) = self
                .alphabet()
                .letters()
                .filter_map(|l| self.graph.target(cur, l).map(|t| (l, t)))
                .find(|&(_, t)| Some(t) != prev)
                .expect("hair leads to the core");
            hair.push(l);
            prev = Some(cur);
            cur = t;
        }
        let hair = ReducedWord::reduce(&hair, self.alphabet()).expect("letters in range");
        Some((alive, cur, hair))
    }

    /// Some `g` with `g^-1 h2 g <= h1`, if one exists.
    ///
    /// The cyclic core of `h2` is immersed into `h1` starting from each vertex
    /// in turn. A reduced loop at a core vertex never enters a hanging tree,
    /// so scanning vertices of `h1` is complete.
    pub fn conj_into(h2: &SubgroupGraph, h1: &SubgroupGraph) -> Option<ReducedWord> {
        let alphabet = h1.alphabet();
        let Some((alive, c, q)) = h2.cyclic_core() else {
            return Some(ReducedWord::identity(alphabet));
        };
        let paths = h1.graph.tree_paths(0);
        for u in 0..h1.num_vertices() {
            if immerses(&h2.graph, &alive, c, &h1.graph, u) {
                let p = ReducedWord::reduce(paths[u].as_ref().unwrap(), alphabet).unwrap();
                let g = q.concat(&p.inverse());
                debug_assert!(h2.generators.iter().all(|h| h1.contains(&h.conjugate_by(&g))));
                return Some(g);
            }
        }
        None
    }

    /// If each subgroup is conjugate into the other, returns `g` with
    /// `g^-1 h1 g = h2`, verified by double containment.
    pub fn conjugate_witness(h1: &SubgroupGraph, h2: &SubgroupGraph) -> Result<Option<ReducedWord>> {
        let Some(g) = Self::conj_into(h1, h2) else { return Ok(None) };
        if Self::conj_into(h2, h1).is_none() {
            return Ok(None);
        }
        let forward = h1.basis().iter().all(|h| h2.contains(&h.conjugate_by(&g)));
        let g_inv = g.inverse();
        let backward = h2.basis().iter().all(|h| h1.contains(&h.conjugate_by(&g_inv)));
        if !(forward && backward) {
            return Err(Error::InternalInconsistency(format!(
                "mutual conjugacy-into holds but conjugator `{g}` does not give equality"
            )));
        }
        Ok(Some(g))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            rank: self.alphabet().rank(),
            vertices: self.num_vertices(),
            edges: self
                .graph
                .edges()
                .into_iter()
                .map(|(src, dst, l)| EdgeJson { src, dst, label: self.alphabet().format_letter(l) })
                .collect(),
            basepoint: 0,
            core: (0..self.num_vertices()).collect(),
            saturated: self.saturated,
        }
    }
}

/// Serialized form of a subgroup graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub rank: usize,
    pub vertices: usize,
    pub edges: Vec<EdgeJson>,
    pub basepoint: usize,
    pub core: Vec<usize>,
    pub saturated: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeJson {
    pub src: usize,
    pub dst: usize,
    pub label: String,
}

fn immerses(src: &LabeledGraph, alive: &[bool], start: usize, dst: &LabeledGraph, image: usize) -> bool {
    let mut map = vec![usize::MAX; src.num_vertices()];
    map[start] = image;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for l in src.alphabet.letters() {
            let Some(y) = src.target(x, l) else { continue };
            if !alive[y] {
                continue;
            }
            let Some(z) = dst.target(map[x], l) else { return false };
            if map[y] == usize::MAX {
                map[y] = z;
                queue.push_back(y);
            } else if map[y] != z {
                return false;
            }
        }
    }
    true
}

/// Removes valency-one vertices other than `base` and renumbers canonically.
fn prune(g: &LabeledGraph, base: usize) -> LabeledGraph {
    let n = g.num_vertices();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.valency(v)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| v != base && deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for l in g.alphabet.letters() {
            if let Some(t) = g.target(v, l) {
                if alive[t] && t != v {
                    deg[t] -= 1;
                    if t != base && deg[t] <= 1 {
                        stack.push(t);
                    }
                }
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let sub = g.induced(&keep);
    let order = sub.bfs_order(pos[&base]);
    sub.induced(&order)
}

fn basis(g: &LabeledGraph) -> Vec<ReducedWord> {
    let paths = g.tree_paths(0);
    let mut out = Vec::new();
    for v in 0..g.num_vertices() {
        let pv = paths[v].as_ref().unwrap();
        for i in 1..=g.alphabet.rank() as Letter {
            let Some(t) = g.target(v, i) else { continue };
            let pt = paths[t].as_ref().unwrap();
            let is_tree = pt.len() == pv.len() + 1 && pt.last() == Some(&i) && pt[..pv.len()] == pv[..]
                || pv.len() == pt.len() + 1 && pv.last() == Some(&-i) && pv[..pt.len()] == pt[..];
            if is_tree {
                continue;
            }
            let mut raw = pv.clone();
            raw.push(i);
            raw.extend(pt.iter().rev().map(|l| -l));
            out.push(ReducedWord::reduce(&raw, g.alphabet).unwrap());
        }
    }
    out
}

/// A label-constant line from one outer vertex to another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarLine {
    /// Outer vertex where the line starts.
    pub start: usize,
    pub letter: Letter,
    /// Vertices visited, from `start` to the terminal outer vertex.
    pub vertices: Vec<usize>,
}

impl StarLine {
    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Number of edges on the line.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The pairing of outer edges. Outer edges leaving outer vertices are indexed
/// by their outer vertex; `sigma` sends the line from `u` to the line
/// starting where it ends.
#[derive(Clone, Debug)]
pub struct StarInvolution {
    pub lines: Vec<StarLine>,
    pub sigma: Vec<usize>,
}

impl StarInvolution {
    /// One representative line per orbit of `sigma`, lowest index first.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        (0..self.lines.len()).filter(|&i| i < self.sigma[i]).collect()
    }
}
