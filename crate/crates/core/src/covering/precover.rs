//! Pre-coverings: pieces glued along faces, and their realized sheets.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::body::{BodyCatalog, BodyType};
use crate::gog::{DirEdge, GPath, GraphOfGroups, Subgroup};
use crate::verify::{ensure, Rejection};

/// A piece: the body `P \ G_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub vertex: usize,
    pub subgroup: Subgroup,
}

/// Glues handle `a_sheet` of piece `a` to handle `b_sheet` of piece `b`
/// across geometric edge `edge`, directed from `a` to `b`. Both sheets are
/// handle representatives and
/// `tau(a_sheet . rho^i(x)) = b_sheet . rho^t(element . x)` for `x` in the
/// edge group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub a: usize,
    pub a_sheet: usize,
    pub edge: usize,
    pub b: usize,
    pub b_sheet: usize,
    pub element: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basepoint {
    pub piece: usize,
    pub sheet: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreCovering {
    pub pieces: Vec<Piece>,
    pub gluings: Vec<Gluing>,
    pub base: Basepoint,
}

/// A pre-covering together with its graph of groups, as written by
/// `scs gog fold` and read by `scs gog validate`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PreCoveringDoc {
    pub gog: GraphOfGroups,
    pub precovering: PreCovering,
}

/// A handle with no gluing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeHandle {
    pub piece: usize,
    pub dedge: DirEdge,
    pub rep: usize,
    pub face: Subgroup,
}

#[derive(Clone, Copy, Debug)]
struct Link {
    piece: usize,
    rep: usize,
    element: usize,
}

/// The result of lifting a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lift {
    pub end: usize,
    /// Handles crossed; each edge crossing passes two.
    pub handles: usize,
}

impl Lift {
    pub fn e_length(&self) -> usize {
        self.handles / 2
    }
}

/// Sheets of a validated pre-covering, numbered piece by piece.
pub struct Realization<'g> {
    gog: &'g GraphOfGroups,
    types: Vec<Arc<BodyType>>,
    offsets: Vec<usize>,
    owner: Vec<usize>,
    links: Vec<Vec<Vec<Option<Link>>>>,
    base: usize,
}

impl PreCovering {
    /// The single-piece pre-covering `P \ G_v` based at sheet 0.
    pub fn single(vertex: usize, subgroup: Subgroup) -> Self {
        PreCovering { pieces: vec![Piece { vertex, subgroup }], gluings: Vec::new(), base: Basepoint { piece: 0, sheet: 0 } }
    }

    pub fn realize<'g>(&self, gog: &'g GraphOfGroups) -> Result<Realization<'g>, Rejection> {
        self.realize_with(gog, &mut BodyCatalog::default())
    }

    pub fn realize_with<'g>(&self, gog: &'g GraphOfGroups, catalog: &mut BodyCatalog) -> Result<Realization<'g>, Rejection> {
        Realization::new(gog, self, catalog)
    }

    /// Checks pieces, gluings and connectivity.
    pub fn validate(&self, gog: &GraphOfGroups) -> Result<(), Rejection> {
        self.realize(gog).map(|_| ())
    }
}

impl<'g> Realization<'g> {
    fn new(gog: &'g GraphOfGroups, pre: &PreCovering, catalog: &mut BodyCatalog) -> Result<Self, Rejection> {
        ensure(!pre.pieces.is_empty(), "no_pieces", || "a pre-covering needs a piece".into())?;
        let mut types = Vec::with_capacity(pre.pieces.len());
        for (i, p) in pre.pieces.iter().enumerate() {
            ensure(p.vertex < gog.num_vertices(), "bad_piece", || format!("piece {i}: vertex {} out of range", p.vertex))?;
            ensure(gog.vertex_group(p.vertex).is_subgroup(p.subgroup.elements()), "bad_piece", || {
                format!("piece {i}: body is not a subgroup of G_{}", p.vertex)
            })?;
            types.push(catalog.get(gog, p.vertex, &p.subgroup));
        }
        let mut offsets = Vec::with_capacity(types.len() + 1);
        let mut owner = Vec::new();
        let mut total = 0;
        for (i, t) in types.iter().enumerate() {
            offsets.push(total);
            total += t.degree();
            owner.extend(std::iter::repeat_n(i, t.degree()));
        }
        offsets.push(total);
        let mut links: Vec<Vec<Vec<Option<Link>>>> = types
            .iter()
            .map(|t| (0..gog.incident(t.vertex).len()).map(|pos| vec![None; t.handles(pos).len()]).collect())
            .collect();
        let mut adj = vec![Vec::new(); types.len()];
        for (k, g) in pre.gluings.iter().enumerate() {
            let bad = |m: String| Rejection::new("bad_gluing", format!("gluing {k}: {m}"));
            if g.a >= types.len() || g.b >= types.len() {
                return Err(bad("piece out of range".into()));
            }
            let (ta, tb) = (&types[g.a], &types[g.b]);
            let d = gog.dir_edge_from(ta.vertex, g.edge).ok_or_else(|| bad(format!("edge {} does not leave piece {}", g.edge, g.a)))?;
            if gog.target(d) != tb.vertex {
                return Err(bad(format!("edge {} does not reach piece {}", g.edge, g.b)));
            }
            let eg = gog.edge_group(d);
            if g.element >= eg.order() {
                return Err(bad("gluing element out of range".into()));
            }
            let (pa, pb) = (gog.incident_position(d), gog.incident_position(d.reverse()));
            let ha = ta.handle_with_rep(pa, g.a_sheet).ok_or_else(|| bad(format!("sheet {} is not a handle representative", g.a_sheet)))?;
            let hb = tb.handle_with_rep(pb, g.b_sheet).ok_or_else(|| bad(format!("sheet {} is not a handle representative", g.b_sheet)))?;
            let (fa, fb) = (&ta.handles(pa)[ha].face, &tb.handles(pb)[hb].face);
            if eg.conjugate(fb, g.element) != *fa {
                return Err(bad(format!("faces do not match under element {}", g.element)));
            }
            let canonical = fb.elements().iter().map(|&z| eg.mul(z, g.element)).min().unwrap();
            if canonical != g.element {
                return Err(bad(format!("gluing element {} is not minimal (use {canonical})", g.element)));
            }
            if links[g.a][pa][ha].is_some() || links[g.b][pb][hb].is_some() {
                return Err(bad("handle glued twice".into()));
            }
            links[g.a][pa][ha] = Some(Link { piece: g.b, rep: g.b_sheet, element: g.element });
            links[g.b][pb][hb] = Some(Link { piece: g.a, rep: g.a_sheet, element: eg.inv(g.element) });
            adj[g.a].push(g.b);
            adj[g.b].push(g.a);
        }
        let base = pre.base;
        ensure(base.piece < types.len() && base.sheet < types[base.piece].degree(), "bad_base", || {
            format!("basepoint {}:{} out of range", base.piece, base.sheet)
        })?;
        let mut seen = vec![false; types.len()];
        seen[base.piece] = true;
        let mut queue = VecDeque::from([base.piece]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        ensure(seen.iter().all(|&s| s), "disconnected", || "piece graph is not connected".into())?;
        let base = offsets[base.piece] + base.sheet;
        Ok(Realization { gog, types, offsets, owner, links, base })
    }

    pub fn gog(&self) -> &'g GraphOfGroups {
        self.gog
    }

    pub fn num_pieces(&self) -> usize {
        self.types.len()
    }

    pub fn piece_type(&self, piece: usize) -> &BodyType {
        &self.types[piece]
    }

    /// Total number of sheets over all vertices.
    pub fn num_sheets(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn global(&self, piece: usize, sheet: usize) -> usize {
        self.offsets[piece] + sheet
    }

    /// `(piece, local sheet)` of a global sheet.
    pub fn locate(&self, sheet: usize) -> (usize, usize) {
        let p = self.owner[sheet];
        (p, sheet - self.offsets[p])
    }

    pub fn vertex_of(&self, sheet: usize) -> usize {
        self.types[self.owner[sheet]].vertex
    }

    pub fn base_sheet(&self) -> usize {
        self.base
    }

    /// `sheet . g` for `g` in the group of the sheet's vertex.
    pub fn act(&self, sheet: usize, g: usize) -> usize {
        let (p, i) = self.locate(sheet);
        self.offsets[p] + self.types[p].act(self.gog, i, g)
    }

    /// The sheet reached by crossing `d` from `sheet`, if that handle is glued.
    pub fn cross(&self, sheet: usize, d: DirEdge) -> Option<usize> {
        let (p, i) = self.locate(sheet);
        let t = &self.types[p];
        debug_assert_eq!(self.gog.source(d), t.vertex);
        let pos = self.gog.incident_position(d);
        let (h, x) = t.handle_of(pos, i);
        let link = self.links[p][pos][h]?;
        let eg = self.gog.edge_group(d);
        let y = self.gog.rho_t(d, eg.mul(link.element, x));
        Some(self.offsets[link.piece] + self.types[link.piece].act(self.gog, link.rep, y))
    }

    /// Lifts `path` from `sheet`; `None` when it runs into a free handle or
    /// starts at the wrong vertex.
    pub fn lift(&self, sheet: usize, path: &GPath) -> Option<Lift> {
        if self.vertex_of(sheet) != path.start() {
            return None;
        }
        let mut cur = sheet;
        let mut handles = 0;
        for (s, &g) in path.elements().iter().enumerate() {
            cur = self.act(cur, g);
            if let Some(&d) = path.edges().get(s) {
                cur = self.cross(cur, d)?;
                handles += 2;
            }
        }
        Some(Lift { end: cur, handles })
    }

    /// Every unglued handle, piece by piece in incident-edge order.
    pub fn free_handles(&self) -> Vec<FreeHandle> {
        let mut out = Vec::new();
        for (p, t) in self.types.iter().enumerate() {
            for (pos, &d) in self.gog.incident(t.vertex).iter().enumerate() {
                for (h, handle) in t.handles(pos).iter().enumerate() {
                    if self.links[p][pos][h].is_none() {
                        out.push(FreeHandle { piece: p, dedge: d, rep: handle.rep, face: handle.face.clone() });
                    }
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.links.iter().flatten().flatten().all(Option::is_some)
    }

    /// Global sheets over `v`, in increasing order.
    pub fn sheets_over(&self, v: usize) -> Vec<usize> {
        (0..self.num_sheets()).filter(|&s| self.vertex_of(s) == v).collect()
    }

    /// Number of sheets over each vertex.
    pub fn sheet_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.gog.num_vertices()];
        for t in &self.types {
            counts[t.vertex] += t.degree();
        }
        counts
    }

    /// Permutation of the sheets over the base vertex induced by a closed
    /// path at the base: entry `i` is the index reached from the `i`-th sheet.
    pub fn coset_action(&self, path: &GPath) -> Option<Vec<u32>> {
        let over = self.sheets_over(self.gog.base());
        let mut index = vec![u32::MAX; self.num_sheets()];
        for (i, &s) in over.iter().enumerate() {
            index[s] = i as u32;
        }
        over.iter().map(|&s| self.lift(s, path).map(|l| index[l.end])).collect()
    }

    /// Index of the base sheet among `sheets_over(base vertex)`.
    pub fn base_index(&self) -> usize {
        self.sheets_over(self.gog.base()).iter().position(|&s| s == self.base).expect("base sheet lies over the base vertex")
    }
}

/// `e`-length of a closed lift of `path` from the base sheet.
pub fn e_length(real: &Realization<'_>, path: &GPath) -> crate::error::Result<usize> {
    let lift = real
        .lift(real.base_sheet(), path)
        .ok_or_else(|| crate::error::Error::InvalidInput(format!("path `{path}` does not lift from the base sheet")))?;
    if lift.end != real.base_sheet() {
        return Err(crate::error::Error::InvalidInput(format!("path `{path}` does not lift to a loop")));
    }
    Ok(lift.e_length())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::standard;

    #[test]
    fn single_piece() {
        let g = standard::psl2z();
        let pre = PreCovering::single(0, Subgroup::trivial());
        let real = pre.realize(&g).unwrap();
        assert_eq!(real.num_sheets(), 2);
        assert_eq!(real.free_handles().len(), 2);
        assert_eq!(real.act(0, 1), 1);
        let loop_at_base = GPath::parse("1@0", &g).unwrap();
        assert_eq!(real.lift(0, &loop_at_base).unwrap().end, 1);
    }

    #[test]
    fn glued_pair_lifts() {
        let g = standard::psl2z();
        let pre = PreCovering {
            pieces: vec![Piece { vertex: 0, subgroup: Subgroup::trivial() }, Piece { vertex: 1, subgroup: Subgroup::trivial() }],
            gluings: vec![Gluing { a: 0, a_sheet: 0, edge: 0, b: 1, b_sheet: 0, element: 0 }],
            base: Basepoint { piece: 0, sheet: 0 },
        };
        let real = pre.realize(&g).unwrap();
        let p = GPath::parse("0@0 : 0 : 0@1 : 0 : 0@0", &g).unwrap();
        let l = real.lift(0, &p).unwrap();
        assert_eq!(l.end, 0);
        assert_eq!(l.e_length(), 2);
        assert_eq!(e_length(&real, &p).unwrap(), 2);
        let q = GPath::parse("0@0 : 0 : 1@1 : 0 : 0@0", &g).unwrap();
        assert!(real.lift(0, &q).is_none());
    }

    #[test]
    fn rejects_bad_gluings() {
        let g = standard::s3_c2_s3(0);
        let whole = g.vertex_group(0).whole();
        let c2 = Subgroup::from_sorted(vec![0, 1]);
        let mk = |b_sub: Subgroup, b_sheet, element| PreCovering {
            pieces: vec![Piece { vertex: 0, subgroup: whole.clone() }, Piece { vertex: 1, subgroup: b_sub }],
            gluings: vec![Gluing { a: 0, a_sheet: 0, edge: 0, b: 1, b_sheet, element }],
            base: Basepoint { piece: 0, sheet: 0 },
        };
        assert!(mk(c2.clone(), 0, 0).validate(&g).is_ok());
        // The face of the full body is C2; the universal piece has trivial faces.
        assert_eq!(mk(Subgroup::trivial(), 0, 0).validate(&g).unwrap_err().code, "bad_gluing");
        // Non-minimal element.
        assert_eq!(mk(c2.clone(), 0, 1).validate(&g).unwrap_err().code, "bad_gluing");
        let mut two = mk(c2, 0, 0);
        two.gluings.push(two.gluings[0]);
        assert!(two.validate(&g).is_err());
    }

    #[test]
    fn json_round_trip() {
        let pre = PreCovering::single(1, Subgroup::from_sorted(vec![0, 1]));
        let back: PreCovering = serde_json::from_str(&serde_json::to_string(&pre).unwrap()).unwrap();
        assert_eq!(back, pre);
    }
}
