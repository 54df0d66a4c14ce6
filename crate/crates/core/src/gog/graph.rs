//! Finite trees of finite groups.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::{FiniteGroupTable, Subgroup};
use crate::error::{Error, Result};

/// A directed edge: geometric edge `id` traversed forward (source to
/// destination) or backward. Index `2 id + dir`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DirEdge(usize);

impl DirEdge {
    pub fn new(edge: usize, forward: bool) -> Self {
        DirEdge(2 * edge + usize::from(!forward))
    }

    pub fn from_index(index: usize) -> Self {
        DirEdge(index)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn edge(self) -> usize {
        self.0 / 2
    }

    pub fn is_forward(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn reverse(self) -> Self {
        DirEdge(self.0 ^ 1)
    }
}

impl fmt::Display for DirEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_forward() {
            write!(f, "e{}", self.edge())
        } else {
            write!(f, "e{}'", self.edge())
        }
    }
}

/// A geometric edge with its group and the two boundary monomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub group: FiniteGroupTable,
    pub rho_src: Vec<usize>,
    pub rho_dst: Vec<usize>,
}

/// A finite tree of finite groups with a base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfGroups {
    vertices: Vec<FiniteGroupTable>,
    edges: Vec<Edge>,
    base: usize,
    incident: Vec<Vec<DirEdge>>,
    images: Vec<Subgroup>,
    preimages: Vec<Vec<Option<usize>>>,
}

impl GraphOfGroups {
    /// Validates the tree shape and that each boundary map is an injective
    /// homomorphism.
    pub fn new(vertices: Vec<FiniteGroupTable>, edges: Vec<Edge>, base: usize) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::InvalidInput("graph of groups needs a vertex".into()));
        }
        if base >= n {
            return Err(Error::InvalidInput(format!("base vertex {base} out of range")));
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidInput(format!("{n} vertices and {} edges do not form a tree", edges.len())));
        }
        let mut incident = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            if e.src >= n || e.dst >= n || e.src == e.dst {
                return Err(Error::InvalidInput(format!("edge {id} has bad endpoints")));
            }
            for (map, target, side) in [(&e.rho_src, &vertices[e.src], "rho_src"), (&e.rho_dst, &vertices[e.dst], "rho_dst")] {
                check_mono(&e.group, target, map).map_err(|m| Error::InvalidInput(format!("edge {id} {side}: {m}")))?;
            }
            incident[e.src].push(DirEdge::new(id, true));
            incident[e.dst].push(DirEdge::new(id, false));
        }
        for list in &mut incident {
            list.sort();
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for d in &incident[v] {
                let e = &edges[d.edge()];
                let w = if d.is_forward() { e.dst } else { e.src };
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidInput("underlying graph is not connected".into()));
        }
        let mut images = Vec::with_capacity(2 * edges.len());
        let mut preimages = Vec::with_capacity(2 * edges.len());
        for e in &edges {
            for (map, target) in [(&e.rho_src, &vertices[e.src]), (&e.rho_dst, &vertices[e.dst])] {
                let mut img = map.clone();
                img.sort_unstable();
                images.push(Subgroup::from_sorted(img));
                let mut pre = vec![None; target.order()];
                for (x, &g) in map.iter().enumerate() {
                    pre[g] = Some(x);
                }
                preimages.push(pre);
            }
        }
        Ok(GraphOfGroups { vertices, edges, base, incident, images, preimages })
    }

    /// Same graph with another base vertex.
    pub fn with_base(&self, base: usize) -> Result<Self> {
        Self::new(self.vertices.clone(), self.edges.clone(), base)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_dir_edges(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn dir_edges(&self) -> impl Iterator<Item = DirEdge> {
        (0..self.num_dir_edges()).map(DirEdge)
    }

    pub fn vertex_group(&self, v: usize) -> &FiniteGroupTable {
        &self.vertices[v]
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn edge_group(&self, d: DirEdge) -> &FiniteGroupTable {
        &self.edges[d.edge()].group
    }

    pub fn source(&self, d: DirEdge) -> usize {
        let e = &self.edges[d.edge()];
        if d.is_forward() {
            e.src
        } else {
            e.dst
        }
    }

    pub fn target(&self, d: DirEdge) -> usize {
        self.source(d.reverse())
    }

    /// Directed edges leaving `v`, in index order.
    pub fn incident(&self, v: usize) -> &[DirEdge] {
        &self.incident[v]
    }

    /// Position of `d` in `incident(source(d))`.
    pub fn incident_position(&self, d: DirEdge) -> usize {
        self.incident[self.source(d)].iter().position(|&x| x == d).expect("incident edge")
    }

    /// `rho^i_d(x)` in the group of `source(d)`.
    pub fn rho_i(&self, d: DirEdge, x: usize) -> usize {
        let e = &self.edges[d.edge()];
        if d.is_forward() {
            e.rho_src[x]
        } else {
            e.rho_dst[x]
        }
    }

    /// `rho^t_d(x)` in the group of `target(d)`.
    pub fn rho_t(&self, d: DirEdge, x: usize) -> usize {
        self.rho_i(d.reverse(), x)
    }

    /// Image of the edge group in the source vertex group.
    pub fn image_i(&self, d: DirEdge) -> &Subgroup {
        &self.images[d.index()]
    }

    /// Image of the edge group in the target vertex group.
    pub fn image_t(&self, d: DirEdge) -> &Subgroup {
        &self.images[d.reverse().index()]
    }

    /// The edge-group element mapped to `g` by `rho^i_d`, if any.
    pub fn preimage_i(&self, d: DirEdge, g: usize) -> Option<usize> {
        self.preimages[d.index()][g]
    }

    pub fn preimage_t(&self, d: DirEdge, g: usize) -> Option<usize> {
        self.preimage_i(d.reverse(), g)
    }

    /// The directed edge from `v` along geometric edge `id`.
    pub fn dir_edge_from(&self, v: usize, id: usize) -> Option<DirEdge> {
        let e = self.edges.get(id)?;
        if e.src == v {
            Some(DirEdge::new(id, true))
        } else if e.dst == v {
            Some(DirEdge::new(id, false))
        } else {
            None
        }
    }

    /// Directed edges of the tree path from `u` to `v`.
    pub fn tree_path(&self, u: usize, v: usize) -> Vec<DirEdge> {
        let mut via: Vec<Option<DirEdge>> = vec![None; self.num_vertices()];
        let mut seen = vec![false; self.num_vertices()];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &d in self.incident(x) {
                let y = self.target(d);
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some(d);
                    queue.push_back(y);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = v;
        while let Some(d) = via[cur] {
            path.push(d);
            cur = self.source(d);
        }
        path.reverse();
        path
    }
}

fn check_mono(src: &FiniteGroupTable, dst: &FiniteGroupTable, map: &[usize]) -> std::result::Result<(), String> {
    if map.len() != src.order() {
        return Err(format!("map has {} entries for a group of order {}", map.len(), src.order()));
    }
    if map.iter().any(|&g| g >= dst.order()) {
        return Err("image out of range".into());
    }
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != map.len() {
        return Err("not injective".into());
    }
    for a in 0..src.order() {
        for b in 0..src.order() {
            if map[src.mul(a, b)] != dst.mul(map[a], map[b]) {
                return Err(format!("not a homomorphism at ({a}, {b})"));
            }
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    group: FiniteGroupTable,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    id: usize,
    src: usize,
    dst: usize,
    group: FiniteGroupTable,
    rho_src: Vec<usize>,
    rho_dst: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GogJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    base: usize,
}

impl Serialize for GraphOfGroups {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GogJson {
            vertices: self.vertices.iter().enumerate().map(|(id, g)| VertexJson { id, group: g.clone() }).collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(id, e)| EdgeJson {
                    id,
                    src: e.src,
                    dst: e.dst,
                    group: e.group.clone(),
                    rho_src: e.rho_src.clone(),
                    rho_dst: e.rho_dst.clone(),
                })
                .collect(),
            base: self.base,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphOfGroups {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GogJson::deserialize(d)?;
        if raw.vertices.iter().enumerate().any(|(i, v)| v.id != i) {
            return Err(D::Error::custom("vertex ids must be 0, 1, ... in order"));
        }
        if raw.edges.iter().enumerate().any(|(i, e)| e.id != i) {
            return Err(D::Error::custom("edge ids must be 0, 1, ... in order"));
        }
        let vertices = raw.vertices.into_iter().map(|v| v.group).collect();
        let edges = raw
            .edges
            .into_iter()
            .map(|e| Edge { src: e.src, dst: e.dst, group: e.group, rho_src: e.rho_src, rho_dst: e.rho_dst })
            .collect();
        GraphOfGroups::new(vertices, edges, raw.base).map_err(D::Error::custom)
    }
}
