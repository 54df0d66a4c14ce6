//! Covering pieces: a vertex body `P \ G_v` with its handles.

use std::collections::HashMap;
use std::sync::Arc;

use crate::gog::{DirEdge, GraphOfGroups, Subgroup};

/// A handle: one orbit of the edge group on the body's sheets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Handle {
    /// Smallest sheet of the orbit.
    pub rep: usize,
    pub sheets: Vec<usize>,
    /// Stabilizer of `rep` in the edge group.
    pub face: Subgroup,
}

impl Handle {
    pub fn is_trivial(&self) -> bool {
        self.face.is_trivial()
    }
}

/// The piece over vertex `v` with body subgroup `P`: sheets are the right
/// cosets `P g`, sorted by smallest element, so sheet 0 is `P` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BodyType {
    pub vertex: usize,
    pub subgroup: Subgroup,
    reps: Vec<usize>,
    index_of: Vec<usize>,
    /// Per incident directed edge (in `gog.incident(v)` order).
    handles: Vec<Vec<Handle>>,
    /// Per incident directed edge and sheet: `(handle, x)` with
    /// `sheet = rep . rho^i(x)`, `x` minimal.
    handle_of: Vec<Vec<(usize, usize)>>,
}

impl BodyType {
    pub fn new(gog: &GraphOfGroups, vertex: usize, subgroup: Subgroup) -> Self {
        let group = gog.vertex_group(vertex);
        let cosets = group.right_cosets(&subgroup);
        let (reps, index_of) = (cosets.reps, cosets.index_of);
        let degree = reps.len();
        let act = |i: usize, g: usize| index_of[group.mul(reps[i], g)];
        let mut handles = Vec::new();
        let mut handle_of = Vec::new();
        for &d in gog.incident(vertex) {
            let eg = gog.edge_group(d);
            let mut of = vec![(usize::MAX, 0); degree];
            let mut list = Vec::new();
            for i in 0..degree {
                if of[i].0 != usize::MAX {
                    continue;
                }
                let h = list.len();
                let mut sheets = Vec::new();
                let mut face = Vec::new();
                for x in 0..eg.order() {
                    let j = act(i, gog.rho_i(d, x));
                    if j == i {
                        face.push(x);
                    }
                    if of[j].0 == usize::MAX {
                        of[j] = (h, x);
                        sheets.push(j);
                    }
                }
                sheets.sort_unstable();
                list.push(Handle { rep: i, sheets, face: Subgroup::from_sorted(face) });
            }
            handles.push(list);
            handle_of.push(of);
        }
        BodyType { vertex, subgroup, reps, index_of, handles, handle_of }
    }

    /// Number of sheets `[G_v : P]`.
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    /// Smallest element of the coset of sheet `i`.
    pub fn rep(&self, i: usize) -> usize {
        self.reps[i]
    }

    /// Sheet `i . g`.
    pub fn act(&self, gog: &GraphOfGroups, i: usize, g: usize) -> usize {
        self.index_of[gog.vertex_group(self.vertex).mul(self.reps[i], g)]
    }

    /// Handles over the directed edge at incident position `pos`.
    pub fn handles(&self, pos: usize) -> &[Handle] {
        &self.handles[pos]
    }

    pub fn handles_along(&self, gog: &GraphOfGroups, d: DirEdge) -> &[Handle] {
        &self.handles[gog.incident_position(d)]
    }

    /// `(handle index, x)` with `sheet = rep . rho^i(x)`.
    pub fn handle_of(&self, pos: usize, sheet: usize) -> (usize, usize) {
        self.handle_of[pos][sheet]
    }

    /// Index of the handle whose representative sheet is `rep`.
    pub fn handle_with_rep(&self, pos: usize, rep: usize) -> Option<usize> {
        let (h, _) = *self.handle_of[pos].get(rep)?;
        (self.handles[pos][h].rep == rep).then_some(h)
    }

    pub fn num_handles(&self) -> usize {
        self.handles.iter().map(Vec::len).sum()
    }
}

/// All pieces over `v`, one per subgroup of `G_v`.
pub fn enumerate_pieces(gog: &GraphOfGroups, v: usize) -> Vec<BodyType> {
    gog.vertex_group(v).subgroups().into_iter().map(|p| BodyType::new(gog, v, p)).collect()
}

/// Memoized body types.
#[derive(Default)]
pub struct BodyCatalog {
    map: HashMap<(usize, Subgroup), Arc<BodyType>>,
}

impl BodyCatalog {
    pub fn get(&mut self, gog: &GraphOfGroups, vertex: usize, subgroup: &Subgroup) -> Arc<BodyType> {
        self.map
            .entry((vertex, subgroup.clone()))
            .or_insert_with(|| Arc::new(BodyType::new(gog, vertex, subgroup.clone())))
            .clone()
    }
}
