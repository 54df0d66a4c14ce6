//! Paths `g1 e1 g2 ... ek g(k+1)` in a tree of groups and their reductions.

use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};

use super::graph::{DirEdge, GraphOfGroups};
use crate::error::{Error, Result};

/// An alternating sequence of vertex-group elements and directed edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GPath {
    start: usize,
    elements: Vec<usize>,
    edges: Vec<DirEdge>,
}

impl GPath {
    /// Validates edge adjacency and element ranges.
    pub fn new(gog: &GraphOfGroups, start: usize, elements: Vec<usize>, edges: Vec<DirEdge>) -> Result<Self> {
        if start >= gog.num_vertices() {
            return Err(Error::InvalidInput(format!("start vertex {start} out of range")));
        }
        if elements.len() != edges.len() + 1 {
            return Err(Error::InvalidInput("a path needs one more element than edges".into()));
        }
        let mut v = start;
        for (s, &g) in elements.iter().enumerate() {
            if g >= gog.vertex_group(v).order() {
                return Err(Error::InvalidInput(format!("element {g} not in the group of vertex {v}")));
            }
            if let Some(&d) = edges.get(s) {
                if d.edge() >= gog.num_edges() || gog.source(d) != v {
                    return Err(Error::InvalidInput(format!("edge {d} does not leave vertex {v}")));
                }
                v = gog.target(d);
            }
        }
        Ok(GPath { start, elements, edges })
    }

    /// The trivial path at `v`.
    pub fn identity(v: usize) -> Self {
        GPath { start: v, elements: vec![0], edges: Vec::new() }
    }

    /// A single vertex-group element at `v`.
    pub fn vertex_element(gog: &GraphOfGroups, v: usize, g: usize) -> Result<Self> {
        Self::new(gog, v, vec![g], Vec::new())
    }

    /// `p g p^-1` where `p` is the tree path from the base to `v` with
    /// trivial elements.
    pub fn conjugated_vertex_element(gog: &GraphOfGroups, v: usize, g: usize) -> Result<Self> {
        let route = gog.tree_path(gog.base(), v);
        let p = GPath::new(gog, gog.base(), vec![0; route.len() + 1], route)?;
        let x = Self::vertex_element(gog, v, g)?;
        p.concat(gog, &x)?.concat(gog, &p.inverse(gog))
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn edges(&self) -> &[DirEdge] {
        &self.edges
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertex carrying element `s`.
    pub fn vertex_at(&self, gog: &GraphOfGroups, s: usize) -> usize {
        if s == 0 {
            self.start
        } else {
            gog.target(self.edges[s - 1])
        }
    }

    pub fn end(&self, gog: &GraphOfGroups) -> usize {
        self.vertex_at(gog, self.edges.len())
    }

    pub fn is_closed_at(&self, gog: &GraphOfGroups, v: usize) -> bool {
        self.start == v && self.end(gog) == v
    }

    pub fn concat(&self, gog: &GraphOfGroups, other: &GPath) -> Result<GPath> {
        let end = self.end(gog);
        if end != other.start {
            return Err(Error::InvalidInput(format!("path ends at {end} but the next starts at {}", other.start)));
        }
        let group = gog.vertex_group(end);
        let mut elements = self.elements.clone();
        let last = elements.pop().unwrap();
        elements.push(group.mul(last, other.elements[0]));
        elements.extend_from_slice(&other.elements[1..]);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(GPath { start: self.start, elements, edges })
    }

    pub fn inverse(&self, gog: &GraphOfGroups) -> GPath {
        let k = self.edges.len();
        let elements = (0..=k)
            .rev()
            .map(|s| gog.vertex_group(self.vertex_at(gog, s)).inv(self.elements[s]))
            .collect();
        let edges = self.edges.iter().rev().map(|d| d.reverse()).collect();
        GPath { start: self.end(gog), elements, edges }
    }

    /// Positions `s` where `e(s-1) g(s) e(s)` cancels: `e(s) = reverse(e(s-1))`
    /// and `g(s)` lies in the image of the edge group.
    pub fn reducible_positions(&self, gog: &GraphOfGroups) -> Vec<usize> {
        (1..self.edges.len())
            .filter(|&s| {
                let f = self.edges[s - 1];
                self.edges[s] == f.reverse() && gog.image_t(f).contains(self.elements[s])
            })
            .collect()
    }

    /// Applies the cancellation at position `s`.
    fn cancel_at(&mut self, gog: &GraphOfGroups, s: usize) {
        let f = self.edges[s - 1];
        let x = gog.preimage_t(f, self.elements[s]).expect("reducible position");
        let v = gog.source(f);
        let group = gog.vertex_group(v);
        let merged = group.mul(group.mul(self.elements[s - 1], gog.rho_i(f, x)), self.elements[s + 1]);
        self.elements.splice(s - 1..s + 2, [merged]);
        self.edges.drain(s - 1..s + 1);
    }

    /// Removes all cancelling subpaths `a e c e' b` with `c` in the edge-group
    /// image, left to right with a stack.
    pub fn reduce(&self, gog: &GraphOfGroups) -> GPath {
        let mut elements = vec![self.elements[0]];
        let mut edges: Vec<DirEdge> = Vec::new();
        for (s, &d) in self.edges.iter().enumerate() {
            let b = self.elements[s + 1];
            if let Some(&f) = edges.last() {
                let c = *elements.last().unwrap();
                if d == f.reverse() {
                    if let Some(x) = gog.preimage_t(f, c) {
                        elements.pop();
                        edges.pop();
                        let v = gog.source(f);
                        let group = gog.vertex_group(v);
                        let a = elements.pop().unwrap();
                        elements.push(group.mul(group.mul(a, gog.rho_i(f, x)), b));
                        continue;
                    }
                }
            }
            edges.push(d);
            elements.push(b);
        }
        GPath { start: self.start, elements, edges }
    }

    /// Reduces by cancelling at uniformly random positions until none remain.
    pub fn reduce_random_order<R: Rng>(&self, gog: &GraphOfGroups, rng: &mut R) -> GPath {
        let mut p = self.clone();
        loop {
            let spots = p.reducible_positions(gog);
            if spots.is_empty() {
                return p;
            }
            let s = spots[rng.gen_range(0..spots.len())];
            p.cancel_at(gog, s);
        }
    }

    /// Reduced form with each `g(s)` replaced by the smallest element of its
    /// coset `g(s) rho^i(G_e)`, the correction pushed across the edge.
    pub fn normal_form(&self, gog: &GraphOfGroups) -> GPath {
        let mut p = self.reduce(gog);
        for s in 0..p.edges.len() {
            let d = p.edges[s];
            let v = p.vertex_at(gog, s);
            let group = gog.vertex_group(v);
            let a = p.elements[s];
            let img = gog.image_i(d);
            let r = img.elements().iter().map(|&y| group.mul(a, y)).min().unwrap();
            let x0 = gog.preimage_i(d, group.mul(group.inv(r), a)).expect("same coset");
            p.elements[s] = r;
            let w = gog.target(d);
            p.elements[s + 1] = gog.vertex_group(w).mul(gog.rho_t(d, x0), p.elements[s + 1]);
        }
        p
    }

    /// True iff both paths represent the same element.
    pub fn equivalent(&self, gog: &GraphOfGroups, other: &GPath) -> bool {
        self.start == other.start && self.normal_form(gog) == other.normal_form(gog)
    }

    /// `|g|`: the number of edges of the reduced form of a closed path at
    /// the base.
    pub fn length(&self, gog: &GraphOfGroups) -> Result<usize> {
        if !self.is_closed_at(gog, gog.base()) {
            return Err(Error::InvalidInput(format!("path `{self}` is not closed at the base vertex")));
        }
        Ok(self.reduce(gog).len())
    }

    pub fn is_trivial(&self, gog: &GraphOfGroups) -> bool {
        let r = self.reduce(gog);
        r.edges.is_empty() && r.elements[0] == 0
    }

    /// Parses `g@v : e : g@v : ...`. Edge tokens are `3` or `e3`; the
    /// direction is taken from the current vertex.
    pub fn parse(text: &str, gog: &GraphOfGroups) -> Result<Self> {
        let tokens: Vec<&str> = text.split(':').map(str::trim).collect();
        if tokens.len().is_multiple_of(2) {
            return Err(Error::Parse(format!("path `{text}` must alternate elements and edges")));
        }
        let mut elements = Vec::new();
        let mut edges = Vec::new();
        let mut start = None;
        let mut current: Option<usize> = None;
        for (i, tok) in tokens.iter().enumerate() {
            if i % 2 == 0 {
                let (g, v) = tok
                    .split_once('@')
                    .ok_or_else(|| Error::Parse(format!("element token `{tok}` must look like g@v")))?;
                let g: usize = g.trim().parse().map_err(|_| Error::Parse(format!("bad element in `{tok}`")))?;
                let v: usize = v.trim().parse().map_err(|_| Error::Parse(format!("bad vertex in `{tok}`")))?;
                if let Some(c) = current {
                    if c != v {
                        return Err(Error::Parse(format!("element `{tok}` is not at vertex {c}")));
                    }
                }
                start.get_or_insert(v);
                elements.push(g);
                current = Some(v);
            } else {
                let id: usize = tok
                    .strip_prefix('e')
                    .unwrap_or(tok)
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad edge token `{tok}`")))?;
                let v = current.expect("element precedes edge");
                let d = gog
                    .dir_edge_from(v, id)
                    .ok_or_else(|| Error::Parse(format!("edge {id} is not incident to vertex {v}")))?;
                edges.push(d);
                current = Some(gog.target(d));
            }
        }
        GPath::new(gog, start.unwrap(), elements, edges).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses a comma-separated list of paths.
    pub fn parse_list(text: &str, gog: &GraphOfGroups) -> Result<Vec<Self>> {
        text.split(',').filter(|s| !s.trim().is_empty()).map(|s| Self::parse(s, gog)).collect()
    }

    /// Text form; needs the graph to name vertices.
    pub fn display<'a>(&'a self, gog: &'a GraphOfGroups) -> PathDisplay<'a> {
        PathDisplay { path: self, gog }
    }
}

/// Formats a path with vertex names.
pub struct PathDisplay<'a> {
    path: &'a GPath,
    gog: &'a GraphOfGroups,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.path;
        for (s, g) in p.elements.iter().enumerate() {
            if s > 0 {
                write!(f, " : {} : ", p.edges[s - 1].edge())?;
            }
            write!(f, "{g}@{}", p.vertex_at(self.gog, s))?;
        }
        Ok(())
    }
}

impl fmt::Display for GPath {
    /// Context-free form: `g0 e1 g1 ...` with primes on backward edges.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.elements[0], self.start)?;
        for (d, g) in self.edges.iter().zip(&self.elements[1..]) {
            write!(f, " {d} {g}")?;
        }
        Ok(())
    }
}

impl Serialize for GPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A random closed path at the base with `edges` edges; elements are drawn
/// from edge-group images often enough to create cancellations.
pub fn random_closed_path<R: Rng>(gog: &GraphOfGroups, edges: usize, rng: &mut R) -> GPath {
    let base = gog.base();
    let mut v = base;
    let mut elements = Vec::new();
    let mut route = Vec::new();
    let pick = |v: usize, rng: &mut R, prev: Option<DirEdge>| -> usize {
        let group = gog.vertex_group(v);
        match prev {
            Some(f) if rng.gen_bool(0.4) => {
                let img = gog.image_t(f).elements();
                img[rng.gen_range(0..img.len())]
            }
            _ => rng.gen_range(0..group.order()),
        }
    };
    let mut prev = None;
    let mut remaining = edges;
    while remaining > 0 || v != base {
        elements.push(pick(v, rng, prev));
        let dist_home = gog.tree_path(v, base).len();
        let options: Vec<DirEdge> = gog
            .incident(v)
            .iter()
            .copied()
            .filter(|&d| remaining > dist_home || gog.tree_path(gog.target(d), base).len() < dist_home)
            .collect();
        let d = options[rng.gen_range(0..options.len())];
        route.push(d);
        v = gog.target(d);
        prev = Some(d);
        remaining = remaining.saturating_sub(1);
    }
    elements.push(pick(v, rng, prev));
    GPath::new(gog, base, elements, route).expect("random walk is a path")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::standard;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn free_product_cancellation() {
        let g = standard::psl2z();
        let p = GPath::parse("1@0 : 0 : 0@1 : 0 : 1@0", &g).unwrap();
        let r = p.reduce(&g);
        assert_eq!(r.len(), 0);
        assert_eq!(r.elements(), &[0]);
        let q = GPath::parse("1@0 : 0 : 1@1 : 0 : 0@0", &g).unwrap();
        assert_eq!(q.reduce(&g), q);
        assert_eq!(q.length(&g).unwrap(), 2);
    }

    #[test]
    fn amalgam_cancellation_depends_on_image() {
        let g = standard::c4_c2_c6();
        let inside = GPath::parse("1@0 : 0 : 3@1 : 0 : 1@0", &g).unwrap();
        let r = inside.reduce(&g);
        assert_eq!(r.len(), 0);
        // 1 * rho(x) * 1 with rho_src(1) = 2: 1 + 2 + 1 = 0 in C4.
        assert_eq!(r.elements(), &[0]);
        let outside = GPath::parse("1@0 : 0 : 1@1 : 0 : 1@0", &g).unwrap();
        assert_eq!(outside.reduce(&g).len(), 2);
    }

    #[test]
    fn lengths() {
        let g = standard::psl2z();
        assert_eq!(GPath::identity(0).length(&g).unwrap(), 0);
        assert!(GPath::parse("0@0 : 0 : 1@1", &g).unwrap().length(&g).is_err());
    }

    #[test]
    fn normal_form_is_confluent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (_, g) in standard::catalog() {
            for _ in 0..100 {
                let p = random_closed_path(&g, rng.gen_range(0..8), &mut rng);
                let q = p.reduce_random_order(&g, &mut rng);
                assert_eq!(q.normal_form(&g), p.normal_form(&g));
                assert!(p.concat(&g, &p.inverse(&g)).unwrap().is_trivial(&g));
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let g = standard::s3_c2_s3(0);
        let p = GPath::parse("2@0 : e0 : 3@1 : 0 : 1@0", &g).unwrap();
        assert_eq!(p.display(&g).to_string(), "2@0 : 0 : 3@1 : 0 : 1@0");
        assert_eq!(p.to_string(), "2@0 e0 3 e0' 1");
        assert!(GPath::parse("2@0 : 0 : 3@0", &g).is_err());
        assert!(GPath::parse("9@0", &g).is_err());
    }
}
